//! Path sectors as sign automorphisms of Pauli monomials, their states,
//! intertwiner approximants, and the condensation and localization checks.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::check::CheckOutcome;
use crate::error::{Error, Result};
use crate::groundstate::{eval_ground, GroundValue};
use crate::lattice::{star_bonds, Bond, EastOf, Face, Region, Vertex, Window};
use crate::pauli::{PauliOp, Sign};
use crate::sampling;
use crate::strings::{connect_x, connect_z, enclosing_loop, Anchor, Kind, RayPath, Step, XEnd, XPath};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BulkLabel {
    One,
    E,
    M,
    F,
}

impl BulkLabel {
    pub const ALL: [BulkLabel; 4] = [BulkLabel::One, BulkLabel::E, BulkLabel::M, BulkLabel::F];

    /// `(has e, has m)` components.
    pub fn bits(self) -> (bool, bool) {
        match self {
            BulkLabel::One => (false, false),
            BulkLabel::E => (true, false),
            BulkLabel::M => (false, true),
            BulkLabel::F => (true, true),
        }
    }

    pub fn from_bits(e: bool, m: bool) -> BulkLabel {
        match (e, m) {
            (false, false) => BulkLabel::One,
            (true, false) => BulkLabel::E,
            (false, true) => BulkLabel::M,
            (true, true) => BulkLabel::F,
        }
    }

    /// String kind realizing the label; `None` for the vacuum.
    pub fn kind(self) -> Option<Kind> {
        match self {
            BulkLabel::One => None,
            BulkLabel::E => Some(Kind::Z),
            BulkLabel::M => Some(Kind::X),
            BulkLabel::F => Some(Kind::Y),
        }
    }
}

impl fmt::Display for BulkLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BulkLabel::One => "1",
            BulkLabel::E => "e",
            BulkLabel::M => "m",
            BulkLabel::F => "f",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BoundaryLabel {
    One,
    Eps,
}

impl BoundaryLabel {
    pub const ALL: [BoundaryLabel; 2] = [BoundaryLabel::One, BoundaryLabel::Eps];
}

impl fmt::Display for BoundaryLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundaryLabel::One => "1",
            BoundaryLabel::Eps => "eps",
        })
    }
}

/// Sector given by a ray, or the vacuum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sector {
    ray: Option<RayPath>,
}

impl Sector {
    pub fn vacuum() -> Sector {
        Sector { ray: None }
    }

    pub fn new(ray: RayPath) -> Sector {
        Sector { ray: Some(ray) }
    }

    pub fn ray(&self) -> Option<&RayPath> {
        self.ray.as_ref()
    }

    pub fn kind(&self) -> Option<Kind> {
        self.ray.as_ref().map(RayPath::kind)
    }

    pub fn bulk_label(&self) -> BulkLabel {
        match self.kind() {
            None => BulkLabel::One,
            Some(Kind::Z) => BulkLabel::E,
            Some(Kind::X) => BulkLabel::M,
            Some(Kind::Y) => BulkLabel::F,
        }
    }

    /// Label once the excitation sits on the boundary: X condenses, Y turns into Z.
    pub fn boundary_label(&self) -> BoundaryLabel {
        match self.kind() {
            None | Some(Kind::X) => BoundaryLabel::One,
            Some(Kind::Z | Kind::Y) => BoundaryLabel::Eps,
        }
    }

    /// `ε` with `ρ(P) = ε·P`: the commutation sign of `P` with the ray's
    /// string operator truncated past `P`'s support.
    pub fn sign(&self, p: &PauliOp) -> Sign {
        let Some(ray) = &self.ray else { return Sign::Plus };
        let support = p.support();
        let n = ray.covering_len(&support);
        ray.truncate(n).op().commutation_sign(p)
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.ray {
            None => f.write_str("vacuum"),
            Some(r) => r.fmt(f),
        }
    }
}

fn signed(p: &PauliOp, s: Sign) -> PauliOp {
    p.clone().with_phase(s.phase())
}

/// `ρ(P)`.
pub fn apply_auto(s: &Sector, p: &PauliOp) -> PauliOp {
    signed(p, s.sign(p))
}

/// `ρ1 ⊗ ρ2` on a monomial: `ρ1(ρ2(P))`.
pub fn tensor_compose(s1: &Sector, s2: &Sector, p: &PauliOp) -> PauliOp {
    apply_auto(s1, &apply_auto(s2, p))
}

/// `ω0 ∘ Ad Γ ∘ ρ`, with `Γ` optional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorState {
    pub sector: Sector,
    pub conjugator: Option<PauliOp>,
}

impl SectorState {
    pub fn plain(sector: Sector) -> SectorState {
        SectorState {
            sector,
            conjugator: None,
        }
    }

    pub fn conjugated(sector: Sector, by: PauliOp) -> SectorState {
        SectorState {
            sector,
            conjugator: Some(by),
        }
    }
}

pub fn sector_state(s: &SectorState, p: &PauliOp) -> Result<GroundValue> {
    let mut image = apply_auto(&s.sector, p);
    if let Some(g) = &s.conjugator {
        image = g.mul(&image).mul(&g.adjoint());
    }
    eval_ground(&image)
}

/// Cut-off for the connector: columns at or east of `min(n/2, endpoint columns)`.
fn connector_floor(n: usize, cols: [i32; 2]) -> i32 {
    (n as i32 / 2).min(cols[0]).min(cols[1]).max(0)
}

fn bounds_for(points: [(i32, i32); 2]) -> Window {
    let max_col = points[0].0.max(points[1].0).max(0) + 1;
    let lo = points[0].1.min(points[1].1) - 1;
    let hi = points[0].1.max(points[1].1) + 1;
    Window::new(max_col, lo, hi).expect("non-negative column")
}

fn z_approx(r1: &RayPath, r2: &RayPath, n: usize) -> Result<PauliOp> {
    let (a, b) = (r1.vertex_after(n).expect("Z ray"), r2.vertex_after(n).expect("Z ray"));
    let floor = connector_floor(n, [a.i, b.i]);
    let bounds = bounds_for([(a.i, a.j), (b.i, b.j)]);
    let connector = connect_z(a, b, &EastOf(floor), &bounds)?;
    Ok(r1.truncate(n).op().mul(&connector.op()).mul(&r2.truncate(n).op()))
}

fn x_approx(r1: &RayPath, r2: &RayPath, n: usize) -> Result<PauliOp> {
    let (a, b) = (r1.dual_after(n).expect("X ray"), r2.dual_after(n).expect("X ray"));
    let pt = |e: XEnd| match e {
        XEnd::Face(f) => (f.i, f.j),
        XEnd::Boundary => (0, 0),
    };
    let floor = connector_floor(n, [pt(a).0, pt(b).0]);
    let bounds = bounds_for([pt(a), pt(b)]);
    let connector = connect_x(a, b, &EastOf(floor), &bounds)?;
    Ok(r1.truncate(n).op().mul(&connector.op()).mul(&r2.truncate(n).op()))
}

/// Boundary-anchored pair of the given kind at rows 2 and 6, both turning
/// north-east.
pub fn canonical_pair(kind: Kind) -> Result<(Sector, Sector)> {
    let at = |row: i32| match kind {
        Kind::X => Anchor::Boundary(row),
        _ => Anchor::Vertex(Vertex::new(0, row)),
    };
    let ray = |row| RayPath::new(kind, at(row), vec![], vec![Step::E, Step::N]).map(Sector::new);
    Ok((ray(2)?, ray(6)?))
}

/// Window for checking a canonical intertwiner at truncation `n`.
pub fn canonical_window(n: usize) -> Window {
    Window::new(n as i32 / 4, -1, 9).expect("non-negative column")
}

/// Component approximants of an intertwiner: `(X part, Z part)`.
pub fn intertwiner_parts(s1: &Sector, s2: &Sector, n: usize) -> Result<(Option<PauliOp>, Option<PauliOp>)> {
    let (r1, r2) = match (s1.ray(), s2.ray()) {
        (None, None) => return Ok((None, None)),
        (Some(a), Some(b)) if a.kind() == b.kind() => (a, b),
        _ => return Err(Error::Geometry(format!("{s1} and {s2} are of different kinds"))),
    };
    Ok(match r1.kind() {
        Kind::Z => (None, Some(z_approx(r1, r2, n)?)),
        Kind::X => (Some(x_approx(r1, r2, n)?), None),
        Kind::Y => {
            let xs = (r1.x_part().expect("Y ray"), r2.x_part().expect("Y ray"));
            let zs = (r1.z_part().expect("Y ray"), r2.z_part().expect("Y ray"));
            (Some(x_approx(&xs.0, &xs.1, n)?), Some(z_approx(&zs.0, &zs.1, n)?))
        }
    })
}

/// `V_n = Γ(γ1_n) Γ(connector) Γ(γ2_n)`. For Y-rays `V_n = S · ρ1(T)` with
/// `S`, `T` the X- and Z-part approximants; it is unitary, and an involution
/// only when `S` and `T` commute.
pub fn intertwiner_approx(s1: &Sector, s2: &Sector, n: usize) -> Result<PauliOp> {
    Ok(match intertwiner_parts(s1, s2, n)? {
        (None, None) => PauliOp::identity(),
        (Some(v), None) | (None, Some(v)) => v,
        (Some(s), Some(t)) => s.mul(&apply_auto(s1, &t)),
    })
}

/// Checks `V ρ1(A) V† = ρ2(A)` for `A` each of `X@b`, `Z@b`, `b ∈ w`.
pub fn verify_intertwiner(v: &PauliOp, s1: &Sector, s2: &Sector, w: &Window) -> CheckOutcome {
    let v_dag = v.adjoint();
    let gens = w
        .bonds()
        .into_iter()
        .flat_map(|b| [PauliOp::x_on([b]), PauliOp::z_on([b])]);
    CheckOutcome::scan(gens, |a| {
        let lhs = v.mul(&apply_auto(s1, a)).mul(&v_dag);
        (lhs != apply_auto(s2, a)).then(|| a.to_string())
    })
}

/// Ground-state certificates of `V_n`: for X parts `ω0(S)`, for Z parts
/// `ω0(Γ^Z_{γ′} T)` with `γ′` the boundary column path between the anchors.
/// Both rays must be boundary-anchored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntertwinerCertificate {
    pub x: Option<GroundValue>,
    pub z: Option<GroundValue>,
}

impl IntertwinerCertificate {
    pub fn is_unit(&self) -> bool {
        [self.x, self.z].iter().flatten().all(|v| *v == GroundValue::ONE)
    }
}

fn boundary_row(r: &RayPath, kind: Kind) -> Result<i32> {
    let r = r.extend_to_boundary();
    match (kind, r.anchor()) {
        (Kind::Z, Anchor::Vertex(v)) if v.i == 0 => Ok(v.j),
        (Kind::X, Anchor::Boundary(j)) => Ok(j),
        _ => Err(Error::Geometry(format!("{r} is not boundary-anchored"))),
    }
}

pub fn intertwiner_certificate(s1: &Sector, s2: &Sector, n: usize) -> Result<IntertwinerCertificate> {
    let (xp, zp) = intertwiner_parts(s1, s2, n)?;
    let (Some(r1), Some(r2)) = (s1.ray(), s2.ray()) else {
        return Ok(IntertwinerCertificate { x: None, z: None });
    };
    if !r1.is_boundary_anchored() || !r2.is_boundary_anchored() {
        return Err(Error::Geometry("certificates need boundary-anchored rays".into()));
    }
    let x = xp.map(|s| eval_ground(&s)).transpose()?;
    let z = match zp {
        None => None,
        Some(t) => {
            let (z1, z2) = match r1.kind() {
                Kind::Y => (r1.z_part().expect("Y ray"), r2.z_part().expect("Y ray")),
                _ => (r1.clone(), r2.clone()),
            };
            let (a, b) = (boundary_row(&z1, Kind::Z)?, boundary_row(&z2, Kind::Z)?);
            let column = PauliOp::z_on((a.min(b)..a.max(b)).map(|j| Bond::v(0, j)));
            Some(eval_ground(&column.mul(&t))?)
        }
    };
    Ok(IntertwinerCertificate { x, z })
}

/// `ρ(A) = A` for every single-bond generator on `w` outside `region`.
pub fn localization_check(s: &Sector, region: &dyn Region, w: &Window) -> CheckOutcome {
    let gens = w
        .bonds()
        .into_iter()
        .filter(|b| !region.contains(b))
        .flat_map(|b| [PauliOp::x_on([b]), PauliOp::z_on([b])]);
    CheckOutcome::scan(gens, |a| (s.sign(a) != Sign::Plus).then(|| a.to_string()))
}

/// Fixture for the condensation checks on a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CondensationGeometry {
    /// X-ray from face `(ca, ra)` going east.
    pub x_ray: RayPath,
    /// Boundary-to-face dual path ending where `x_ray` starts.
    pub x_conjugator: XPath,
    /// Y-ray from vertex `(ca, ra)` going east.
    pub y_ray: RayPath,
    /// Boundary-to-face dual path ending at the Y-ray's dual anchor.
    pub y_conjugator: XPath,
    /// Z-ray from the same vertex.
    pub z_ray: RayPath,
}

impl CondensationGeometry {
    pub fn standard(w: &Window) -> Result<CondensationGeometry> {
        let ca = (w.max_col / 2).max(1);
        let ra = (w.row_min + w.row_max).div_euclid(2);
        let east = vec![Step::E];
        let x_ray = RayPath::new(Kind::X, Anchor::Face(Face::new(ca, ra)), vec![], east.clone())?;
        let x_conjugator = XPath::new(XEnd::Boundary, (0..=ca).map(|i| Bond::v(i, ra)).collect())?;
        let y_ray = RayPath::new(Kind::Y, Anchor::Vertex(Vertex::new(ca, ra)), vec![], east.clone())?;
        let y_conjugator = XPath::new(XEnd::Boundary, (0..ca).map(|i| Bond::v(i, ra)).collect())?;
        let z_ray = RayPath::new(Kind::Z, Anchor::Vertex(Vertex::new(ca, ra)), vec![], east)?;
        let geo = CondensationGeometry {
            x_ray,
            x_conjugator,
            y_ray,
            y_conjugator,
            z_ray,
        };
        let outside = geo
            .x_conjugator
            .crossings()
            .iter()
            .chain(geo.y_conjugator.crossings())
            .find(|b| !w.contains(b));
        if let Some(b) = outside {
            return Err(Error::Config(format!("conjugator bond {b} lies outside {w}")));
        }
        Ok(geo)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CondensationReport {
    /// `ω0 ∘ Ad Γ^X_{γ′} ∘ ρ^X = ω0` on the test set.
    pub x_condenses: CheckOutcome,
    /// `ω0 ∘ Ad Γ^X_{γ′} ∘ ρ^Y = ω0 ∘ ρ^Z` on the test set.
    pub y_becomes_z: CheckOutcome,
    /// `|ω0(B) − ω^Z(B)|` for the loop `B` around the Z-anchor.
    pub z_gap: i32,
    /// The loop `B`.
    pub z_witness: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplingPlan {
    pub exhaustive_cap: usize,
    pub uniform: usize,
    pub structured: usize,
    pub seed: u64,
}

impl Default for SamplingPlan {
    fn default() -> Self {
        SamplingPlan {
            exhaustive_cap: 8,
            uniform: 10_000,
            structured: 10_000,
            seed: sampling::DEFAULT_SEED,
        }
    }
}

fn states_agree(a: &SectorState, b: &SectorState, tests: &[PauliOp]) -> CheckOutcome {
    CheckOutcome::scan(tests.iter(), |p| match (sector_state(a, p), sector_state(b, p)) {
        (Ok(x), Ok(y)) if x == y => None,
        (Ok(x), Ok(y)) => Some(format!("{p}: {x} vs {y}")),
        (Err(e), _) | (_, Err(e)) => Some(format!("{p}: {e}")),
    })
}

/// `|ω0(B) − ω(B)|` as an integer; values are in `{0, ±1, ±i}`.
pub fn state_gap(a: GroundValue, b: GroundValue) -> i32 {
    match (a.as_real(), b.as_real()) {
        (Some(x), Some(y)) => (x as i32 - y as i32).abs(),
        _ => i32::from(a != b) * 2,
    }
}

pub fn condensation_check(geo: &CondensationGeometry, w: &Window, plan: &SamplingPlan) -> Result<CondensationReport> {
    let tests = sampling::test_set(w, plan.exhaustive_cap, plan.uniform, plan.structured, plan.seed);
    let vacuum = SectorState::plain(Sector::vacuum());
    let x_state = SectorState::conjugated(Sector::new(geo.x_ray.clone()), geo.x_conjugator.op());
    let y_state = SectorState::conjugated(Sector::new(geo.y_ray.clone()), geo.y_conjugator.op());
    let z_state = SectorState::plain(Sector::new(geo.z_ray.clone()));
    let Anchor::Vertex(r) = geo.z_ray.anchor() else {
        return Err(Error::Geometry("Z-ray must start at a vertex".into()));
    };
    let star = star_bonds(r).into_iter().collect();
    // The loop may need a row or column beyond a very small test window.
    let b = enclosing_loop(&star, &w.grow(2))?.op();
    let z_gap = state_gap(sector_state(&vacuum, &b)?, sector_state(&z_state, &b)?);
    Ok(CondensationReport {
        x_condenses: states_agree(&x_state, &vacuum, &tests),
        y_becomes_z: states_agree(&y_state, &z_state, &tests),
        z_gap,
        z_witness: b.to_string(),
    })
}

pub fn condensation_suite(w: &Window, plan: &SamplingPlan) -> Result<CondensationReport> {
    condensation_check(&CondensationGeometry::standard(w)?, w, plan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{ConeRegion, Stabilizer};
    use proptest::prelude::*;

    fn ray(s: &str) -> RayPath {
        RayPath::parse(s).unwrap()
    }

    fn sec(s: &str) -> Sector {
        Sector::new(ray(s))
    }

    #[test]
    fn signs_from_overlap() {
        let z = sec("ray: Z anchor=(0,2) prefix=[] tail=[E,N]");
        let on_ray = PauliOp::x_on([Bond::h(0, 2)]);
        assert_eq!(apply_auto(&z, &on_ray), on_ray.clone().with_phase(2));
        let off = PauliOp::x_on([Bond::h(0, 5)]);
        assert_eq!(apply_auto(&z, &off), off);
        let two = PauliOp::x_on([Bond::h(0, 2), Bond::v(1, 2)]);
        assert_eq!(apply_auto(&z, &two), two);
        assert_eq!(apply_auto(&Sector::vacuum(), &on_ray), on_ray);
    }

    #[test]
    fn boundary_z_state_flips_only_its_star() {
        let r = Vertex::new(0, 3);
        let s = SectorState::plain(sec("ray: Z anchor=(0,3) prefix=[] tail=[E,N]"));
        let w = Window::new(5, 0, 7).unwrap();
        for st in w.stabilizers_inside() {
            let expected = if st == Stabilizer::Star(r) { GroundValue::MINUS_ONE } else { GroundValue::ONE };
            assert_eq!(sector_state(&s, &PauliOp::stabilizer(&st)).unwrap(), expected, "{st:?}");
        }
    }

    #[test]
    fn vacuum_state_is_ground_state() {
        let s = SectorState::plain(Sector::vacuum());
        let w = Window::new(1, 0, 1).unwrap();
        for p in sampling::all_monomials(&w.bonds()) {
            assert_eq!(sector_state(&s, &p).unwrap(), eval_ground(&p).unwrap());
        }
    }

    #[test]
    fn composing_a_ray_with_itself_is_trivial() {
        let z = sec("ray: Z anchor=(0,1) prefix=[] tail=[E,N]");
        let x = sec("ray: X anchor=boundary(5) prefix=[] tail=[E]");
        let w = Window::new(4, -1, 8).unwrap();
        for b in w.bonds() {
            for a in [PauliOp::x_on([b]), PauliOp::z_on([b]), PauliOp::y_at(b)] {
                assert_eq!(tensor_compose(&z, &z, &a), a);
                assert_eq!(tensor_compose(&x, &z, &a), tensor_compose(&z, &x, &a));
            }
        }
    }


    #[test]
    fn canonical_intertwiners_pass() {
        for kind in [Kind::Z, Kind::X, Kind::Y] {
            let (s1, s2) = canonical_pair(kind).unwrap();
            for n in [10, 20, 30] {
                let v = intertwiner_approx(&s1, &s2, n).unwrap();
                let w = canonical_window(n);
                let out = verify_intertwiner(&v, &s1, &s2, &w);
                assert!(out.pass, "{kind} n={n}: {:?}", out.witness);
                let cert = intertwiner_certificate(&s1, &s2, n).unwrap();
                assert!(cert.is_unit(), "{kind} n={n}: {cert:?}");
                if kind != Kind::Y {
                    assert!(v.is_involution());
                }
            }
        }
    }

    #[test]
    fn y_intertwiner_squares_to_minus_one() {
        let (s1, s2) = canonical_pair(Kind::Y).unwrap();
        let v = intertwiner_approx(&s1, &s2, 12).unwrap();
        assert_eq!(v.mul(&v), PauliOp::identity().with_phase(2));
    }

    #[test]
    fn short_intertwiner_fails_with_witness() {
        let (s1, s2) = canonical_pair(Kind::Z).unwrap();
        let v = intertwiner_approx(&s1, &s2, 4).unwrap();
        let w = Window::new(6, -1, 9).unwrap();
        let out = verify_intertwiner(&v, &s1, &s2, &w);
        assert!(!out.pass && out.witness.is_some());
        let id = verify_intertwiner(&PauliOp::identity(), &s1, &s2, &w);
        assert!(!id.pass);
    }

    #[test]
    fn identical_sectors_need_no_connector() {
        let (s1, _) = canonical_pair(Kind::X).unwrap();
        assert!(intertwiner_approx(&s1, &s1, 9).unwrap().is_identity());
    }

    #[test]
    fn localization_in_cones() {
        let cone = ConeRegion::up(0, 1, 1);
        let w = Window::new(8, -3, 12).unwrap();
        let inside = sec("ray: Z anchor=(0,1) prefix=[] tail=[E,N]");
        assert!(localization_check(&inside, &cone, &w).pass);
        let leaves = sec("ray: Z anchor=(0,1) prefix=[] tail=[E]");
        let out = localization_check(&leaves, &cone, &w);
        assert!(!out.pass);
        assert!(out.witness.unwrap().contains("H("));
        assert!(localization_check(&Sector::vacuum(), &ConeRegion::up(50, 1, 1), &w).pass);
    }

    #[test]
    fn condensation_on_eight_bonds() {
        let w = Window::new(1, 0, 1).unwrap();
        assert_eq!(w.len(), 8);
        let rep = condensation_suite(&w, &SamplingPlan::default()).unwrap();
        assert!(rep.x_condenses.pass, "{:?}", rep.x_condenses.witness);
        assert!(rep.y_becomes_z.pass, "{:?}", rep.y_becomes_z.witness);
        assert_eq!(rep.x_condenses.tested, 1 << 16);
        assert_eq!(rep.z_gap, 2);
    }

    #[test]
    fn condensation_needs_the_conjugator() {
        let w = Window::new(3, 0, 3).unwrap();
        let mut geo = CondensationGeometry::standard(&w).unwrap();
        geo.x_conjugator = XPath::empty(XEnd::Boundary);
        let plan = SamplingPlan {
            uniform: 200,
            structured: 200,
            ..SamplingPlan::default()
        };
        let rep = condensation_check(&geo, &w, &plan).unwrap();
        assert!(!rep.x_condenses.pass);
        let far = star_bonds(Vertex::new(0, 0)).into_iter().collect();
        let b = enclosing_loop(&far, &Window::new(5, -2, 6).unwrap()).unwrap().op();
        let z = SectorState::plain(Sector::new(geo.z_ray.clone()));
        let vac = SectorState::plain(Sector::vacuum());
        assert_eq!(state_gap(sector_state(&vac, &b).unwrap(), sector_state(&z, &b).unwrap()), 0);
    }

    #[test]
    fn condensation_geometry_sits_mid_window() {
        let geo = CondensationGeometry::standard(&Window::new(4, 0, 4).unwrap()).unwrap();
        assert_eq!(geo.x_ray.anchor(), Anchor::Face(Face::new(2, 2)));
        assert_eq!(geo.x_conjugator.end(), XEnd::Face(Face::new(2, 2)));
        assert_eq!(geo.y_conjugator.end(), XEnd::Face(Face::new(1, 2)));
    }

    proptest! {
        #[test]
        fn sign_is_a_homomorphism(a in 0..4096u32, b in 0..4096u32, kind in 0..3usize) {
            let s = [
                sec("ray: Z anchor=(0,0) prefix=[] tail=[E,N]"),
                sec("ray: X anchor=boundary(0) prefix=[] tail=[E,N]"),
                sec("ray: Y anchor=(1,0) prefix=[N] tail=[E,N]"),
            ][kind].clone();
            let w = Window::new(1, 0, 1).unwrap();
            let bonds = w.bonds();
            let mono = |code: u32| {
                let mut p = PauliOp::identity();
                for (k, bd) in bonds.iter().enumerate().take(6) {
                    if code >> (2 * k) & 1 == 1 { p.x.insert(*bd); }
                    if code >> (2 * k + 1) & 1 == 1 { p.z.insert(*bd); }
                }
                p
            };
            let (p, q) = (mono(a), mono(b));
            prop_assert_eq!(s.sign(&p.mul(&q)), s.sign(&p) * s.sign(&q));
            prop_assert_eq!(apply_auto(&s, &apply_auto(&s, &p)), p);
        }

        #[test]
        fn sign_does_not_depend_on_truncation(extra in 0usize..20, i in 0..4i32, j in -3..3i32) {
            let s = ray("ray: Y anchor=(0,0) prefix=[E] tail=[E,S,E]");
            let p = PauliOp::x_on([Bond::v(i, j)]).mul(&PauliOp::z_on([Bond::h(i, j)]));
            let n = s.covering_len(&p.support());
            prop_assert_eq!(s.truncate(n + extra).op().commutation_sign(&p), Sector::new(s).sign(&p));
        }
    }
}
