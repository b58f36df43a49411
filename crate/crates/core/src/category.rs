//! Fusion rules, half-braiding and bulk braiding scalars, and the
//! bulk-to-boundary functor, all as exact signs from string crossings.

use serde::{Deserialize, Serialize};

use crate::check::CheckOutcome;
use crate::error::{Error, Result};
use crate::lattice::{Complement, ConeRegion, Intersection, Region, Vertex, Window};
use crate::pauli::{PauliOp, Sign};
use crate::sectors::{apply_auto, intertwiner_approx, tensor_compose, BoundaryLabel, BulkLabel, Sector};
use crate::strings::{Anchor, Kind, RayPath, Step};

pub fn fuse_bulk(a: BulkLabel, b: BulkLabel) -> BulkLabel {
    let (ae, am) = a.bits();
    let (be, bm) = b.bits();
    BulkLabel::from_bits(ae != be, am != bm)
}

pub fn fuse_boundary(a: BoundaryLabel, b: BoundaryLabel) -> BoundaryLabel {
    if a == b {
        BoundaryLabel::One
    } else {
        BoundaryLabel::Eps
    }
}

/// Formal direct sum of boundary simples, as multiplicities of `1` and `ε`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BoundaryObject {
    pub one: u32,
    pub eps: u32,
}

impl BoundaryObject {
    pub fn simple(l: BoundaryLabel) -> BoundaryObject {
        match l {
            BoundaryLabel::One => BoundaryObject { one: 1, eps: 0 },
            BoundaryLabel::Eps => BoundaryObject { one: 0, eps: 1 },
        }
    }

    pub fn sum(self, other: BoundaryObject) -> BoundaryObject {
        BoundaryObject {
            one: self.one + other.one,
            eps: self.eps + other.eps,
        }
    }

    /// Tensor product, distributing over the sums.
    pub fn fuse(self, other: BoundaryObject) -> BoundaryObject {
        BoundaryObject {
            one: self.one * other.one + self.eps * other.eps,
            eps: self.one * other.eps + self.eps * other.one,
        }
    }
}

/// Simple object of the center: a boundary label with the scalar `σ_{ε,·}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HalfBraidingObject {
    pub base: BoundaryLabel,
    pub scalar: Sign,
}

impl HalfBraidingObject {
    pub fn fuse(self, other: HalfBraidingObject) -> HalfBraidingObject {
        HalfBraidingObject {
            base: fuse_boundary(self.base, other.base),
            scalar: self.scalar * other.scalar,
        }
    }

    /// `σ_{ϖ,self}` for a simple boundary object `ϖ`.
    pub fn braid_with(self, varpi: BoundaryLabel) -> Sign {
        match varpi {
            BoundaryLabel::One => Sign::Plus,
            BoundaryLabel::Eps => self.scalar,
        }
    }
}

impl std::fmt::Display for HalfBraidingObject {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.base, self.scalar)
    }
}

/// Ray of the given label starting at a vertex: Z along the spine, X along
/// the faces on its west side, Y both. `None` for the vacuum.
pub fn labelled_ray(label: BulkLabel, at: Vertex, prefix: &[Step], tail: &[Step]) -> Result<Option<RayPath>> {
    let Some(kind) = label.kind() else { return Ok(None) };
    let y = RayPath::new(Kind::Y, Anchor::Vertex(at), prefix.to_vec(), tail.to_vec())?;
    Ok(Some(y.with_kind(kind)?))
}

fn labelled_sector(label: BulkLabel, at: Vertex, tail: &[Step]) -> Result<Sector> {
    Ok(labelled_ray(label, at, &[], tail)?.map_or_else(Sector::vacuum, Sector::new))
}

/// Auxiliary cone and the boundary ray inside it used to move a sector out of `Λ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transport {
    pub cone: ConeRegion,
    pub row: i32,
    pub tail: Vec<Step>,
}

/// Fixture for all categorical scalars.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Geometry {
    /// `Λ`.
    pub lambda: ConeRegion,
    /// Sub-cone holding the sectors being braided with.
    pub lambda0: ConeRegion,
    /// Boundary row and tail of the `ε` ray `ϖ`.
    pub varpi_row: i32,
    pub varpi_tail: Vec<Step>,
    /// Boundary row and tail of the rays `π`.
    pub pi_row: i32,
    pub pi_tail: Vec<Step>,
    pub transports: Vec<Transport>,
    /// Bulk rays are co-anchored here.
    pub bulk_anchor: Vertex,
    pub bulk_tail: Vec<Step>,
    /// Target of the bulk transporter, south-east of `bulk_anchor`.
    pub bulk_target: Vertex,
    pub bulk_target_tail: Vec<Step>,
    /// Truncation indices at which every scalar must agree.
    pub n_values: Vec<usize>,
}

impl Default for Geometry {
    fn default() -> Self {
        use Step::{E, N};
        Geometry {
            lambda: ConeRegion::up(0, 1, 1),
            lambda0: ConeRegion::up(2, 1, 1),
            varpi_row: 0,
            varpi_tail: vec![E, N],
            pi_row: 2,
            pi_tail: vec![E, N],
            transports: vec![
                Transport {
                    cone: ConeRegion::up(-4, 1, 2),
                    row: -3,
                    tail: vec![E, E, N],
                },
                Transport {
                    cone: ConeRegion::up(-8, 1, 3),
                    row: -6,
                    tail: vec![E, E, E, N],
                },
            ],
            bulk_anchor: Vertex::new(3, 6),
            bulk_tail: vec![E, N],
            bulk_target: Vertex::new(8, 2),
            bulk_target_tail: vec![E, E, N],
            n_values: vec![8, 16, 24],
        }
    }
}

fn ray_within(ray: &RayPath, region: &dyn Region, steps: usize) -> bool {
    ray.truncate(steps).bonds().iter().all(|b| region.contains(b))
}

impl Geometry {
    pub fn varpi(&self) -> Result<Sector> {
        labelled_sector(BulkLabel::E, Vertex::new(0, self.varpi_row), &self.varpi_tail)
    }

    /// Boundary sector `π` of the given kind.
    pub fn pi(&self, label: BulkLabel) -> Result<Sector> {
        labelled_sector(label, Vertex::new(0, self.pi_row), &self.pi_tail)
    }

    fn checked_transport(&self, t: &Transport, label: BulkLabel, n: usize) -> Result<Sector> {
        let s = labelled_sector(label, Vertex::new(0, t.row), &t.tail)?;
        if let Some(r) = s.ray() {
            let outside = Intersection(&t.cone, Complement(&self.lambda));
            if !ray_within(r, &outside, n) {
                return Err(Error::Geometry(format!("{r} leaves {} minus {}", t.cone, self.lambda)));
            }
        }
        Ok(s)
    }
}

/// `σ_{ϖ,π}`: the sign of `ϖ(V_n)` against `V_n`, with `V_n` moving `π`
/// onto the transport ray of the same kind.
pub fn half_braiding_scalar(varpi: &Sector, pi_label: BulkLabel, geo: &Geometry, transport: usize, n: usize) -> Result<Sign> {
    let t = geo
        .transports
        .get(transport)
        .ok_or_else(|| Error::Geometry(format!("no transport geometry {transport}")))?;
    let pi = geo.pi(pi_label)?;
    if let Some(r) = pi.ray() {
        if !ray_within(r, &geo.lambda0, n) {
            return Err(Error::Geometry(format!("{r} leaves {}", geo.lambda0)));
        }
    }
    let moved = geo.checked_transport(t, pi_label, n)?;
    let v = intertwiner_approx(&pi, &moved, n)?;
    Ok(varpi.sign(&v))
}

/// Same scalar for `π` given directly by a boundary-anchored ray in `Λ`.
pub fn half_braiding_scalar_for(varpi: &Sector, pi: &Sector, geo: &Geometry, transport: usize, n: usize) -> Result<Sign> {
    let Some(r) = pi.ray() else { return Ok(Sign::Plus) };
    if !r.is_boundary_anchored() || !ray_within(r, &geo.lambda, n) {
        return Err(Error::Geometry(format!("{r} is not a boundary ray in {}", geo.lambda)));
    }
    let t = &geo.transports[transport];
    let label = pi.bulk_label();
    let moved = geo.checked_transport(t, label, n)?;
    let v = intertwiner_approx(pi, &moved, n)?;
    Ok(varpi.sign(&v))
}

/// `β_{a,b}`: sign of `ρ_a(V_n)` against `V_n`, with `V_n` moving `b` from the
/// shared anchor to the target ray south-east of it.
pub fn bulk_braiding_scalar(a: BulkLabel, b: BulkLabel, geo: &Geometry, n: usize) -> Result<Sign> {
    let sa = labelled_sector(a, geo.bulk_anchor, &geo.bulk_tail)?;
    let sb = labelled_sector(b, geo.bulk_anchor, &geo.bulk_tail)?;
    let target = labelled_sector(b, geo.bulk_target, &geo.bulk_target_tail)?;
    for s in [&sa, &sb] {
        if let Some(r) = s.ray() {
            if !ray_within(r, &geo.lambda, n) {
                return Err(Error::Geometry(format!("{r} leaves {}", geo.lambda)));
            }
        }
    }
    let v = intertwiner_approx(&sb, &target, n)?;
    Ok(sa.sign(&v))
}

/// One value, required to agree across every `n` in the geometry.
pub fn stable(geo: &Geometry, mut f: impl FnMut(usize) -> Result<Sign>) -> Result<Sign> {
    let mut out = None;
    for &n in &geo.n_values {
        let s = f(n)?;
        match out {
            None => out = Some(s),
            Some(prev) if prev != s => {
                return Err(Error::Geometry(format!("scalar changes with truncation at n = {n}")));
            }
            _ => {}
        }
    }
    out.ok_or_else(|| Error::Geometry("no truncation indices".into()))
}

/// `F(a)`: the boundary label reached by `a`'s ray, with `σ_{ε,·}` of the
/// ray extended to the boundary, checked stable in `n` and across transports.
pub fn bulk_to_boundary(a: BulkLabel, geo: &Geometry) -> Result<HalfBraidingObject> {
    let varpi = geo.varpi()?;
    let Some(ray) = labelled_ray(a, geo.bulk_anchor, &[], &geo.bulk_tail)? else {
        return Ok(HalfBraidingObject {
            base: BoundaryLabel::One,
            scalar: Sign::Plus,
        });
    };
    let pi = Sector::new(ray.extend_to_boundary());
    let mut scalar = None;
    for t in 0..geo.transports.len() {
        let s = stable(geo, |n| half_braiding_scalar_for(&varpi, &pi, geo, t, n))?;
        if scalar.is_some_and(|prev| prev != s) {
            return Err(Error::Geometry(format!("scalar of {a} depends on the transport geometry")));
        }
        scalar = Some(s);
    }
    Ok(HalfBraidingObject {
        base: pi.boundary_label(),
        scalar: scalar.ok_or_else(|| Error::Geometry("no transport geometry".into()))?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorTable {
    pub images: Vec<(BulkLabel, HalfBraidingObject)>,
}

impl FunctorTable {
    pub fn compute(geo: &Geometry) -> Result<FunctorTable> {
        let images = BulkLabel::ALL
            .iter()
            .map(|a| Ok((*a, bulk_to_boundary(*a, geo)?)))
            .collect::<Result<_>>()?;
        Ok(FunctorTable { images })
    }

    pub fn image(&self, a: BulkLabel) -> HalfBraidingObject {
        self.images.iter().find(|(l, _)| *l == a).map(|(_, o)| *o).expect("all labels present")
    }

    pub fn set(&mut self, a: BulkLabel, obj: HalfBraidingObject) {
        for entry in &mut self.images {
            if entry.0 == a {
                entry.1 = obj;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidingEntry {
    pub a: BulkLabel,
    pub b: BulkLabel,
    pub bulk: Sign,
    pub boundary: Sign,
    pub matches: bool,
}

/// `β_{a,b}` against `σ_{F(a),F(b)}` for all 16 pairs.
pub fn braiding_matrix(table: &FunctorTable, geo: &Geometry) -> Result<Vec<BraidingEntry>> {
    let mut out = Vec::with_capacity(16);
    for a in BulkLabel::ALL {
        for b in BulkLabel::ALL {
            let bulk = stable(geo, |n| bulk_braiding_scalar(a, b, geo, n))?;
            let boundary = table.image(b).braid_with(table.image(a).base);
            out.push(BraidingEntry {
                a,
                b,
                bulk,
                boundary,
                matches: bulk == boundary,
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorReport {
    pub multiplicative: CheckOutcome,
    pub braided: CheckOutcome,
    /// Images of simples are pairwise distinct.
    pub faithful_on_simples: bool,
    pub matrix: Vec<BraidingEntry>,
}

impl FunctorReport {
    pub fn pass(&self) -> bool {
        self.multiplicative.pass && self.braided.pass && self.faithful_on_simples
    }
}

pub fn verify_braided_functor(table: &FunctorTable, geo: &Geometry) -> Result<FunctorReport> {
    let pairs: Vec<(BulkLabel, BulkLabel)> = BulkLabel::ALL
        .iter()
        .flat_map(|a| BulkLabel::ALL.iter().map(move |b| (*a, *b)))
        .collect();
    let multiplicative = CheckOutcome::scan(pairs.iter(), |(a, b)| {
        let lhs = table.image(fuse_bulk(*a, *b));
        let rhs = table.image(*a).fuse(table.image(*b));
        (lhs != rhs).then(|| format!("({a},{b})"))
    });
    let matrix = braiding_matrix(table, geo)?;
    let braided = CheckOutcome::scan(matrix.iter(), |e| (!e.matches).then(|| format!("({},{})", e.a, e.b)));
    let mut seen: Vec<HalfBraidingObject> = table.images.iter().map(|(_, o)| *o).collect();
    seen.sort_by_key(|o| (o.base, o.scalar.to_i8()));
    seen.dedup();
    Ok(FunctorReport {
        multiplicative,
        braided,
        faithful_on_simples: seen.len() == 4,
        matrix,
    })
}

/// Checks the composite of `sectors` squares to the identity on the
/// single-bond generators of `w`.
pub fn verify_selfdual_zigzag(sectors: &[Sector], w: &Window) -> CheckOutcome {
    let apply = |p: &PauliOp| sectors.iter().fold(p.clone(), |acc, s| apply_auto(s, &acc));
    let gens = w
        .bonds()
        .into_iter()
        .flat_map(|b| [PauliOp::x_on([b]), PauliOp::z_on([b]), PauliOp::y_at(b)]);
    CheckOutcome::scan(gens, |a| (apply(&apply(a)) != *a).then(|| a.to_string()))
}

/// Bulk fusion certified by automorphisms: composing the co-anchored
/// representatives of `a` and `b` equals the representative of `a·b` on
/// every generator of `w`.
pub fn certify_bulk_fusion(geo: &Geometry, w: &Window) -> Result<CheckOutcome> {
    let gens: Vec<PauliOp> = w
        .bonds()
        .into_iter()
        .flat_map(|b| [PauliOp::x_on([b]), PauliOp::z_on([b])])
        .collect();
    let mut tested = 0;
    for a in BulkLabel::ALL {
        for b in BulkLabel::ALL {
            let sa = labelled_sector(a, geo.bulk_anchor, &geo.bulk_tail)?;
            let sb = labelled_sector(b, geo.bulk_anchor, &geo.bulk_tail)?;
            let sab = labelled_sector(fuse_bulk(a, b), geo.bulk_anchor, &geo.bulk_tail)?;
            for g in &gens {
                tested += 1;
                if tensor_compose(&sa, &sb, g) != apply_auto(&sab, g) {
                    return Ok(CheckOutcome::failed(tested, format!("({a},{b}) on {g}")));
                }
            }
        }
    }
    Ok(CheckOutcome::passed(tested))
}

/// Boundary fusion `ε ⊗ ε = 1` and unit laws, certified the same way with
/// the `ε` ray `ϖ`.
pub fn certify_boundary_fusion(geo: &Geometry, w: &Window) -> Result<CheckOutcome> {
    let rep = |l: BoundaryLabel| -> Result<Sector> {
        match l {
            BoundaryLabel::One => Ok(Sector::vacuum()),
            BoundaryLabel::Eps => geo.varpi(),
        }
    };
    let gens: Vec<PauliOp> = w
        .bonds()
        .into_iter()
        .flat_map(|b| [PauliOp::x_on([b]), PauliOp::z_on([b])])
        .collect();
    let mut tested = 0;
    for a in BoundaryLabel::ALL {
        for b in BoundaryLabel::ALL {
            let (sa, sb, sab) = (rep(a)?, rep(b)?, rep(fuse_boundary(a, b))?);
            for g in &gens {
                tested += 1;
                if tensor_compose(&sa, &sb, g) != apply_auto(&sab, g) {
                    return Ok(CheckOutcome::failed(tested, format!("({a},{b}) on {g}")));
                }
            }
        }
    }
    Ok(CheckOutcome::passed(tested))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfBraidingRow {
    pub pi: BulkLabel,
    pub scalars: Vec<Sign>,
}

/// `σ_{ε,π}` for boundary rays `π` of each kind, one column per transport geometry.
pub fn half_braiding_table(geo: &Geometry) -> Result<Vec<HalfBraidingRow>> {
    let varpi = geo.varpi()?;
    BulkLabel::ALL
        .iter()
        .map(|&pi| {
            let scalars = (0..geo.transports.len())
                .map(|t| stable(geo, |n| half_braiding_scalar(&varpi, pi, geo, t, n)))
                .collect::<Result<_>>()?;
            Ok(HalfBraidingRow { pi, scalars })
        })
        .collect()
}
