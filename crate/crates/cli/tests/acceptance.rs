//! Acceptance criteria, run one after another so the timings are honest.
//! Prints one PASS/FAIL line per criterion and exits nonzero on any failure.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use toric_boundary::category::{half_braiding_scalar, verify_braided_functor, FunctorTable, Geometry};
use toric_boundary::groundstate::{nontraciality_witness, GroundValue};
use toric_boundary::lattice::Window;
use toric_boundary::pauli::Sign;
use toric_boundary::BulkLabel;
use toric_boundary_cli::config::{RunConfig, Suite};
use toric_boundary_cli::report::SuiteReport;
use toric_boundary_cli::suites::run_one;

struct Outcome {
    pass: bool,
    note: String,
}

fn suite(s: Suite, cfg: &RunConfig) -> Outcome {
    summarize(&run_one(s, cfg))
}

fn summarize(r: &SuiteReport) -> Outcome {
    let failed: Vec<String> = r
        .checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{}: {}", c.name, c.witness.as_deref().unwrap_or("")))
        .collect();
    let tested: usize = r.checks.iter().map(|c| c.tested).sum();
    Outcome {
        pass: r.pass(),
        note: if failed.is_empty() { format!("{} checks, {tested} cases", r.checks.len()) } else { failed.join("; ") },
    }
}

fn both(a: Outcome, b: Outcome) -> Outcome {
    Outcome {
        pass: a.pass && b.pass,
        note: format!("{}; {}", a.note, b.note),
    }
}

fn ground(cfg: &RunConfig) -> Outcome {
    let out = suite(Suite::Ground, cfg);
    let w = cfg.ground_window;
    let square = w.max_col + 1 == 12 && w.row_max - w.row_min + 1 == 12;
    Outcome {
        pass: out.pass && square && cfg.ground_samples >= 100,
        ..out
    }
}

fn oracles(cfg: &RunConfig) -> Outcome {
    let out = suite(Suite::Oracles, cfg);
    Outcome {
        pass: out.pass && cfg.oracle_samples >= 10_000 && cfg.dense_window.len() == 6,
        ..out
    }
}

fn nontraciality(cfg: &RunConfig) -> Outcome {
    let direct = match nontraciality_witness(&cfg.nontraciality_window) {
        Ok(w) => Outcome {
            pass: w.forward == GroundValue::ONE && w.reversed == GroundValue::MINUS_ONE,
            note: format!("forward {}, reversed {}", w.forward, w.reversed),
        },
        Err(e) => Outcome {
            pass: false,
            note: e.to_string(),
        },
    };
    both(direct, suite(Suite::Nontraciality, cfg))
}

fn condensation(cfg: &RunConfig) -> Outcome {
    let sizes: Vec<usize> = cfg.condensation_windows.iter().map(Window::len).collect();
    let out = suite(Suite::Condensation, cfg);
    Outcome {
        pass: out.pass && sizes.contains(&8) && sizes.contains(&512) && cfg.condensation_samples >= 10_000,
        ..out
    }
}

fn intertwiners(cfg: &RunConfig) -> Outcome {
    let out = suite(Suite::Intertwiners, cfg);
    Outcome {
        pass: out.pass && cfg.intertwiner_n == [10, 20, 30],
        ..out
    }
}

fn braiding(cfg: &RunConfig) -> Outcome {
    let geo = Geometry::default();
    let direct = (|| -> toric_boundary::error::Result<Outcome> {
        let varpi = geo.varpi()?;
        let s = half_braiding_scalar(&varpi, BulkLabel::M, &geo, 0, 8)?;
        let rep = verify_braided_functor(&FunctorTable::compute(&geo)?, &geo)?;
        let matches = rep.matrix.iter().filter(|e| e.matches).count();
        Ok(Outcome {
            pass: s == Sign::Minus && rep.pass() && matches == 16,
            note: format!("sigma(eps, m) = {s}, {matches}/16 pairs match"),
        })
    })()
    .unwrap_or_else(|e| Outcome {
        pass: false,
        note: e.to_string(),
    });
    both(direct, suite(Suite::Braiding, cfg))
}

fn haag(cfg: &RunConfig) -> Outcome {
    let out = suite(Suite::Haag, cfg);
    Outcome {
        pass: out.pass && cfg.haag_cones.len() >= 2 && cfg.haag_samples >= 1000 && cfg.rvd_max_bonds >= 8,
        ..out
    }
}

fn split(cfg: &RunConfig) -> Outcome {
    let out = suite(Suite::Split, cfg);
    Outcome {
        pass: out.pass && cfg.split_pairs >= 1000 && cfg.index_windows.len() >= 2,
        ..out
    }
}

fn fusion(cfg: &RunConfig) -> Outcome {
    suite(Suite::Fusion, cfg)
}

fn determinism(_: &RunConfig) -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_toric-boundary"))
            .arg("verify")
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    let same = a.stdout == b.stdout && !a.stdout.is_empty();
    Outcome {
        pass: same && a.status.code() == Some(0) && b.status.code() == Some(0),
        note: format!("{} report bytes, identical: {same}, exit {:?}", a.stdout.len(), a.status.code()),
    }
}

type Criterion = (&'static str, Option<u64>, fn(&RunConfig) -> Outcome);

fn main() -> ExitCode {
    let cfg = RunConfig::default();
    let criteria: [Criterion; 10] = [
        ("ground-state values", Some(5), ground),
        ("oracle agreement", Some(60), oracles),
        ("non-traciality", Some(1), nontraciality),
        ("condensation", Some(120), condensation),
        ("intertwiners", Some(30), intertwiners),
        ("braiding and functor", Some(30), braiding),
        ("Haag-duality evidence", Some(120), haag),
        ("split and index evidence", Some(120), split),
        ("fusion and zig-zag", Some(10), fusion),
        ("determinism", None, determinism),
    ];
    let mut all = true;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run(&cfg);
        let took = start.elapsed();
        let in_time = limit.map_or(true, |s| took <= Duration::from_secs(s));
        let pass = out.pass && in_time;
        all &= pass;
        let limit = limit.map_or(String::new(), |s| format!(" / {s}s"));
        println!(
            "criterion {:>2} {} {name} ({:.2}s{limit}): {}",
            k + 1,
            if pass { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            out.note
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
