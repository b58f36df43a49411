//! Verification suites. Each suite turns a [`RunConfig`] into a list of
//! named checks; errors become failing checks carrying the error text.

use std::time::Instant;

use serde_json::{json, Value};
use toric_boundary::category::{
    braiding_matrix, bulk_braiding_scalar, certify_boundary_fusion, certify_bulk_fusion, fuse_boundary, fuse_bulk,
    half_braiding_scalar, half_braiding_table, stable, verify_braided_functor, verify_selfdual_zigzag, FunctorTable,
    Geometry,
};
use toric_boundary::duality::{
    build_f0_family, canonical_factorization, index_two_check, locality_check, rvd_density_check, separated,
    small_windows, split_isometry_check, syndrome, SplitPlan, DEFAULT_FAMILY_CAP,
};
use toric_boundary::error::Result;
use toric_boundary::groundstate::{
    eval_ground, eval_ground_dense, eval_ground_gf2, nontraciality_witness, GroundValue, MarginPolicy,
};
use toric_boundary::lattice::distal_pair_check;
use toric_boundary::pauli::{PauliOp, Sign};
use toric_boundary::sampling;
use toric_boundary::sectors::{
    canonical_pair, canonical_window, condensation_suite, intertwiner_approx, intertwiner_certificate,
    verify_intertwiner, SamplingPlan,
};
use toric_boundary::strings::Kind;
use toric_boundary::{BoundaryLabel, BulkLabel, CheckOutcome};

use crate::config::{RunConfig, Suite};
use crate::report::{Check, SuiteReport};

/// Runs the selected suites in parallel; the report keeps the configured order.
pub fn run(cfg: &RunConfig) -> Vec<SuiteReport> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = cfg
            .suites
            .iter()
            .map(|&s| scope.spawn(move || run_one(s, cfg)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    })
}

pub fn run_one(suite: Suite, cfg: &RunConfig) -> SuiteReport {
    let start = Instant::now();
    let checks = match suite {
        Suite::Ground => ground(cfg),
        Suite::Oracles => oracles(cfg),
        Suite::Nontraciality => nontraciality(cfg),
        Suite::Condensation => condensation(cfg),
        Suite::Intertwiners => intertwiners(cfg),
        Suite::Braiding => braiding(cfg),
        Suite::Haag => haag(cfg),
        Suite::Split => split(cfg),
        Suite::Fusion => fusion(cfg),
    };
    let mut report = SuiteReport::new(suite.name(), checks);
    if cfg.timings {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    report
}

fn attempt(name: impl Into<String>, f: impl FnOnce() -> Result<Check>) -> Check {
    let name = name.into();
    f().unwrap_or_else(|e| Check::error(name, e))
}

fn evaluates_to(name: &str, ops: impl IntoIterator<Item = PauliOp>, want: GroundValue) -> Check {
    let out = CheckOutcome::scan(ops, |p| match eval_ground(p) {
        Ok(v) if v == want => None,
        Ok(v) => Some(format!("{p} gives {v}")),
        Err(e) => Some(format!("{p}: {e}")),
    });
    Check::from_outcome(name, out)
}

fn ground(cfg: &RunConfig) -> Vec<Check> {
    let w = cfg.ground_window;
    let mut rng = sampling::rng(cfg.seed);
    let stabs = w.stabilizers_inside().iter().map(PauliOp::stabilizer).collect::<Vec<_>>();
    let products: Vec<PauliOp> = (0..cfg.ground_samples).map(|_| sampling::stabilizer_product(&mut rng, &w)).collect();
    let bonds = w.bonds();
    let singles = bonds.iter().flat_map(|b| [PauliOp::x_on([*b]), PauliOp::z_on([*b])]);
    let sampled: Vec<PauliOp> = (0..1000).map(|_| sampling::sparse_monomial(&mut rng, &bonds, 12)).collect();
    let excited: Vec<PauliOp> = singles.chain(sampled).filter(|p| !syndrome(p).is_empty()).collect();
    vec![
        evaluates_to("stars and plaquettes", stabs, GroundValue::ONE),
        evaluates_to("stabilizer products", products, GroundValue::ONE),
        evaluates_to("excited monomials", excited, GroundValue::Zero),
    ]
}

fn oracles(cfg: &RunConfig) -> Vec<Check> {
    let mut rng = sampling::rng(cfg.seed ^ 1);
    let bonds = cfg.ground_window.bonds();
    let samples: Vec<PauliOp> =
        (0..cfg.oracle_samples).map(|_| sampling::sparse_monomial(&mut rng, &bonds, cfg.oracle_max_support)).collect();
    let policy = MarginPolicy::default();
    let gf2 = CheckOutcome::scan(samples, |p| match eval_ground(p) {
        Ok(v) => {
            let g = eval_ground_gf2(p, &policy);
            (g != v).then(|| format!("{p}: sweep {v}, gf2 {g}"))
        }
        Err(e) => Some(format!("{p}: {e}")),
    });
    let dw = cfg.dense_window;
    let dense = CheckOutcome::scan(sampling::all_monomials(&dw.bonds()), |p| match (eval_ground(p), eval_ground_dense(p, &dw)) {
        (Ok(a), Ok(b)) if a == b => None,
        (Ok(a), Ok(b)) => Some(format!("{p}: sweep {a}, dense {b}")),
        (Err(e), _) | (_, Err(e)) => Some(format!("{p}: {e}")),
    });
    vec![Check::from_outcome("sweep = gf2", gf2), Check::from_outcome(format!("sweep = dense on {dw}"), dense)]
}

fn nontraciality(cfg: &RunConfig) -> Vec<Check> {
    vec![attempt("witness triple", || {
        let wit = nontraciality_witness(&cfg.nontraciality_window)?;
        let pass = wit.forward == GroundValue::ONE && wit.reversed == GroundValue::MINUS_ONE;
        let detail = json!({
            "p1": wit.p1.to_string(),
            "p2": wit.p2.to_string(),
            "p3": wit.p3.to_string(),
            "forward": wit.forward.to_string(),
            "reversed": wit.reversed.to_string(),
        });
        Ok(Check::verdict("witness triple", pass, || format!("forward {}, reversed {}", wit.forward, wit.reversed)).with_detail(detail))
    })]
}

fn condensation(cfg: &RunConfig) -> Vec<Check> {
    let plan = SamplingPlan {
        uniform: cfg.condensation_samples,
        structured: cfg.condensation_samples,
        seed: cfg.seed,
        ..SamplingPlan::default()
    };
    let mut out = Vec::new();
    for w in &cfg.condensation_windows {
        match condensation_suite(w, &plan) {
            Ok(r) => {
                out.push(Check::from_outcome(format!("X condenses on {w}"), r.x_condenses));
                out.push(Check::from_outcome(format!("Y becomes Z on {w}"), r.y_becomes_z));
                out.push(
                    Check::verdict(format!("Z gap on {w}"), r.z_gap == 2, || format!("gap {} on {}", r.z_gap, r.z_witness))
                        .with_detail(json!({"gap": r.z_gap, "loop": r.z_witness})),
                );
            }
            Err(e) => out.push(Check::error(format!("condensation on {w}"), e)),
        }
    }
    out
}

fn intertwiners(cfg: &RunConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for kind in [Kind::Z, Kind::X, Kind::Y] {
        for &n in &cfg.intertwiner_n {
            let name = format!("{kind} n={n}");
            out.push(attempt(name.clone(), || {
                let (s1, s2) = canonical_pair(kind)?;
                let v = intertwiner_approx(&s1, &s2, n)?;
                let check = verify_intertwiner(&v, &s1, &s2, &canonical_window(n));
                let cert = intertwiner_certificate(&s1, &s2, n)?;
                let mut c = Check::from_outcome(name.clone(), check);
                if c.pass && !cert.is_unit() {
                    c.pass = false;
                    c.witness = Some(format!("certificate {cert:?}"));
                }
                Ok(c.with_detail(json!({"weight": v.weight(), "certificate_unit": cert.is_unit()})))
            }));
        }
    }
    out
}

fn geometry(cfg: &RunConfig) -> Geometry {
    Geometry {
        n_values: cfg.braiding_n.clone(),
        ..Geometry::default()
    }
}

fn functor_table(cfg: &RunConfig, geo: &Geometry) -> Result<FunctorTable> {
    let mut table = FunctorTable::compute(geo)?;
    for (label, obj) in &cfg.functor_overrides {
        table.set(*label, *obj);
    }
    Ok(table)
}

fn braiding(cfg: &RunConfig) -> Vec<Check> {
    let geo = geometry(cfg);
    let mut out = vec![attempt("eps around condensed m", || {
        let varpi = geo.varpi()?;
        let mut values = Vec::new();
        for t in 0..geo.transports.len() {
            for &n in &geo.n_values {
                values.push(half_braiding_scalar(&varpi, BulkLabel::M, &geo, t, n)?);
            }
        }
        let pass = values.iter().all(|s| *s == Sign::Minus);
        let shown: Vec<String> = values.iter().map(|s| s.to_string()).collect();
        Ok(Check::verdict("eps around condensed m", pass, || format!("scalars {shown:?}")).with_detail(json!(shown)))
    })];
    out.push(attempt("half-braiding stable across transports", || {
        let rows = half_braiding_table(&geo)?;
        let bad = rows.iter().find(|r| r.scalars.windows(2).any(|p| p[0] != p[1]));
        let detail: Vec<Value> = rows
            .iter()
            .map(|r| json!({"pi": r.pi.to_string(), "scalars": r.scalars.iter().map(|s| s.to_string()).collect::<Vec<_>>()}))
            .collect();
        Ok(Check::verdict("half-braiding stable across transports", bad.is_none(), || format!("{:?}", bad))
            .with_detail(json!(detail)))
    }));
    match functor_table(cfg, &geo).and_then(|t| verify_braided_functor(&t, &geo).map(|r| (t, r))) {
        Ok((table, rep)) => {
            let images: Vec<Value> =
                table.images.iter().map(|(l, o)| json!({"label": l.to_string(), "image": o.to_string()})).collect();
            out.push(Check::from_outcome("functor multiplicative", rep.multiplicative));
            out.push(Check::from_outcome("functor braided", rep.braided).with_detail(json!(images)));
            out.push(Check::verdict("faithful on simples", rep.faithful_on_simples, || "two labels share an image".into()));
            let mismatched: Vec<String> =
                rep.matrix.iter().filter(|e| !e.matches).map(|e| format!("({},{})", e.a, e.b)).collect();
            out.push(Check {
                tested: rep.matrix.len(),
                ..Check::verdict("comparison matrix", rep.matrix.len() == 16 && mismatched.is_empty(), || {
                    mismatched.join(" ")
                })
            });
        }
        Err(e) => out.push(Check::error("functor", e)),
    }
    out
}

fn haag(cfg: &RunConfig) -> Vec<Check> {
    let inner = cfg.haag_window;
    let w = inner.grow(3);
    let mut out = Vec::new();
    for (k, c) in cfg.haag_cones.iter().enumerate() {
        out.push(Check::from_outcome(format!("locality {c}"), locality_check(c, &w)));
        let mut rng = sampling::rng(cfg.seed.wrapping_add(k as u64));
        let samples: Vec<PauliOp> =
            (0..cfg.haag_samples).map(|_| sampling::sparse_monomial(&mut rng, &inner.bonds(), 12)).collect();
        let fact = CheckOutcome::scan(samples, |p| match canonical_factorization(p, c, &w) {
            Ok(f) => {
                let in_ok = f.inside.support().iter().all(|b| c.contains(b));
                let out_ok = f.outside.support().iter().all(|b| !c.contains(b));
                let cert = eval_ground(&p.adjoint().mul(&f.inside).mul(&f.outside)).ok();
                let want = GroundValue::from_phase(f.sign.phase());
                (!(in_ok && out_ok && cert == Some(want))).then(|| format!("{p}: bad factorization"))
            }
            Err(e) => Some(format!("{p}: {e}")),
        });
        out.push(Check::from_outcome(format!("factorization {c}"), fact));
        let windows = small_windows(cfg.rvd_max_bonds, cfg.rvd_rows.iter().min().copied().unwrap_or(0)..=cfg.rvd_rows.iter().max().copied().unwrap_or(0));
        let mut dims = Vec::new();
        let rvd = CheckOutcome::scan(windows, |sw| match rvd_density_check(c, sw, DEFAULT_FAMILY_CAP) {
            Ok(cert) => {
                dims.push(json!([sw.to_string(), cert.complex_dim, cert.real_dim]));
                (!cert.pass).then(|| format!("{sw}: real {} vs 2x{}; {}", cert.real_dim, cert.complex_dim, cert.witness.unwrap_or_default()))
            }
            Err(e) => Some(format!("{sw}: {e}")),
        });
        out.push(Check::from_outcome(format!("density {c}"), rvd).with_detail(json!(dims)));
    }
    out
}

fn split(cfg: &RunConfig) -> Vec<Check> {
    let (c1, c2, w) = (&cfg.split_inner, &cfg.split_outer, &cfg.split_window);
    let mut out = vec![Check::verdict("distal and separated", distal_pair_check(c1, c2, w) && separated(c1, c2, w), || {
        format!("{c1} and {c2} on {w}")
    })];
    out.push(attempt("gap family", || {
        let fam = build_f0_family(c1, c2, w)?;
        Ok(Check::verdict("gap family", !fam.is_empty(), || "empty".into()).with_detail(json!({"members": fam.len()})))
    }));
    out.push(attempt("split isometry", || {
        let plan = SplitPlan {
            pairs: cfg.split_pairs,
            seed: cfg.seed,
        };
        Ok(Check::from_outcome("split isometry", split_isometry_check(c1, c2, w, &plan)?))
    }));
    for (iw, &n) in cfg.index_windows.iter().zip(&cfg.index_n) {
        let name = format!("index two on {iw} n={n}");
        out.push(attempt(name.clone(), || {
            let rep = index_two_check(c1, c2, iw, n)?;
            let detail = json!({
                "index": rep.index,
                "outside_span": rep.outside_span,
                "commutant_tested": rep.commutant.tested,
                "span_coords": rep.span_coords,
                "span_rank": rep.span_rank,
            });
            Ok(Check {
                tested: rep.commutant.tested + rep.normalizes.tested,
                ..Check::verdict(name.clone(), rep.pass(), || {
                    rep.commutant.witness.clone().unwrap_or_else(|| format!("outside span: {}", rep.outside_span))
                })
            }
            .with_detail(detail))
        }));
    }
    out
}

fn fusion(cfg: &RunConfig) -> Vec<Check> {
    let geo = geometry(cfg);
    let w = cfg.fusion_window;
    let mut out = Vec::new();
    const L: [BulkLabel; 4] = BulkLabel::ALL;
    let triples = L.into_iter().flat_map(|a| L.into_iter().flat_map(move |b| L.into_iter().map(move |c| (a, b, c))));
    out.push(Check::from_outcome(
        "bulk fusion group",
        CheckOutcome::scan(triples, |&(a, b, c)| {
            let ok = fuse_bulk(a, BulkLabel::One) == a
                && fuse_bulk(a, a) == BulkLabel::One
                && fuse_bulk(a, b) == fuse_bulk(b, a)
                && fuse_bulk(fuse_bulk(a, b), c) == fuse_bulk(a, fuse_bulk(b, c));
            (!ok).then(|| format!("({a},{b},{c})"))
        }),
    ));
    out.push(Check::verdict(
        "eps x eps = 1",
        fuse_boundary(BoundaryLabel::Eps, BoundaryLabel::Eps) == BoundaryLabel::One,
        || "eps x eps != 1".into(),
    ));
    out.push(attempt("bulk fusion by automorphisms", || Ok(Check::from_outcome("bulk fusion by automorphisms", certify_bulk_fusion(&geo, &w)?))));
    out.push(attempt("boundary fusion by automorphisms", || {
        Ok(Check::from_outcome("boundary fusion by automorphisms", certify_boundary_fusion(&geo, &w)?))
    }));
    out.push(attempt("self-duality zig-zag", || {
        let eps = geo.varpi()?;
        let m = geo.pi(BulkLabel::M)?;
        let mut total = CheckOutcome::passed(0);
        for set in [vec![eps.clone()], vec![m.clone()], vec![eps, m]] {
            let o = verify_selfdual_zigzag(&set, &w);
            total = if o.pass {
                CheckOutcome::passed(total.tested + o.tested)
            } else {
                CheckOutcome::failed(total.tested + o.tested, o.witness.unwrap_or_default())
            };
            if !total.pass {
                break;
            }
        }
        Ok(Check::from_outcome("self-duality zig-zag", total))
    }));
    out
}

fn sign_grid(f: impl Fn(BulkLabel, BulkLabel) -> Result<Sign>) -> Result<Vec<Vec<String>>> {
    BulkLabel::ALL
        .iter()
        .map(|a| BulkLabel::ALL.iter().map(|b| f(*a, *b).map(|s| s.to_string())).collect())
        .collect()
}

/// Fusion, braiding and functor tables plus condensation verdicts.
pub fn tables(cfg: &RunConfig, pairs_only: bool) -> Result<Value> {
    let geo = geometry(cfg);
    let table = functor_table(cfg, &geo)?;
    let labels: Vec<String> = BulkLabel::ALL.iter().map(|l| l.to_string()).collect();
    let matrix = braiding_matrix(&table, &geo)?;
    let pairs: Vec<Vec<&str>> = BulkLabel::ALL
        .iter()
        .map(|a| {
            BulkLabel::ALL
                .iter()
                .map(|b| {
                    let e = matrix.iter().find(|e| e.a == *a && e.b == *b);
                    if e.is_some_and(|e| e.matches) {
                        "match"
                    } else {
                        "mismatch"
                    }
                })
                .collect()
        })
        .collect();
    if pairs_only {
        return Ok(json!({"labels": labels, "pairs": pairs}));
    }
    let bulk_fusion: Vec<Vec<String>> =
        BulkLabel::ALL.iter().map(|a| BulkLabel::ALL.iter().map(|b| fuse_bulk(*a, *b).to_string()).collect()).collect();
    let boundary_fusion: Vec<Vec<String>> = BoundaryLabel::ALL
        .iter()
        .map(|a| BoundaryLabel::ALL.iter().map(|b| fuse_boundary(*a, *b).to_string()).collect())
        .collect();
    let bulk_braiding = sign_grid(|a, b| stable(&geo, |n| bulk_braiding_scalar(a, b, &geo, n)))?;
    let half: Vec<Value> = half_braiding_table(&geo)?
        .iter()
        .map(|r| json!({"pi": r.pi.to_string(), "scalars": r.scalars.iter().map(|s| s.to_string()).collect::<Vec<_>>()}))
        .collect();
    let functor: Vec<Value> =
        table.images.iter().map(|(l, o)| json!({"label": l.to_string(), "image": o.to_string()})).collect();
    let mut condensation = Vec::new();
    if let Some(w) = cfg.condensation_windows.first() {
        let plan = SamplingPlan {
            uniform: cfg.condensation_samples,
            structured: cfg.condensation_samples,
            seed: cfg.seed,
            ..SamplingPlan::default()
        };
        let r = condensation_suite(w, &plan)?;
        condensation.push(json!({
            "window": w.to_string(),
            "x_condenses": r.x_condenses.pass,
            "y_becomes_z": r.y_becomes_z.pass,
            "z_gap": r.z_gap,
        }));
    }
    Ok(json!({
        "labels": labels,
        "boundary_labels": BoundaryLabel::ALL.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
        "bulk_fusion": bulk_fusion,
        "boundary_fusion": boundary_fusion,
        "bulk_braiding": bulk_braiding,
        "half_braiding": half,
        "functor": functor,
        "pairs": pairs,
        "condensation": condensation,
    }))
}
