//! Finite-window evidence for duality, split and index statements: path
//! rerouting between a cone and its complement, exact real ranks of
//! ground-state vectors, and GF(2) span arithmetic.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::check::CheckOutcome;
use crate::error::{Error, Result};
use crate::gf2::{BitVec, XorBasis};
use crate::groundstate::{eval_ground, GroundValue};
use crate::lattice::{
    distal_pair_check, stabilizers_meeting, Bond, Complement, ConeRegion, Direction, Face, Intersection,
    Region, Stabilizer, Vertex, Window,
};
use crate::pauli::{PauliOp, Sign};
use crate::sampling;
use crate::sectors::{intertwiner_approx, Sector};
use crate::strings::{connect_x, connect_z, Anchor, Kind, RayPath, Step, XEnd};

/// Stars and plaquettes anticommuting with `p`.
pub fn syndrome(p: &PauliOp) -> BTreeSet<Stabilizer> {
    stabilizers_meeting(&p.support())
        .into_iter()
        .filter(|s| !PauliOp::stabilizer(s).commutes_with(p))
        .collect()
}

/// Same monomial with the phase that makes it Hermitian.
pub fn hermitian(p: &PauliOp) -> PauliOp {
    let overlap = p.x.intersection(&p.z).count() as u8;
    PauliOp {
        phase: overlap % 4,
        ..p.clone()
    }
}

fn restrict(p: &PauliOp, keep: impl Fn(&Bond) -> bool) -> PauliOp {
    PauliOp {
        x: p.x.iter().copied().filter(|b| keep(b)).collect(),
        z: p.z.iter().copied().filter(|b| keep(b)).collect(),
        phase: 0,
    }
}

fn certificate_sign(v: GroundValue) -> Result<Sign> {
    match v.as_real() {
        Some(1) => Ok(Sign::Plus),
        Some(-1) => Ok(Sign::Minus),
        _ => Err(Error::FactorizationFailed(format!("certificate {v} is not a sign"))),
    }
}

/// Side of a cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Inside,
    Outside,
}

fn on_side(c: &ConeRegion, side: Side, b: &Bond) -> bool {
    c.contains(b) == (side == Side::Inside)
}

fn straddles(c: &ConeRegion, s: &Stabilizer) -> bool {
    let bonds = s.bonds();
    let inside = bonds.iter().filter(|b| c.contains(b)).count();
    inside > 0 && inside < bonds.len()
}

/// Operator supported on `side ∩ w` creating the same excitations as `g`,
/// with `g′Ω = sign · gΩ`. Star excitations are joined in sorted pairs by
/// lattice paths, plaquette excitations by dual paths, an odd one out to the
/// physical boundary.
pub fn reroute_to_region(g: &PauliOp, c: &ConeRegion, side: Side, w: &Window) -> Result<(PauliOp, Sign)> {
    let syn = syndrome(g);
    if let Some(s) = syn.iter().find(|s| !straddles(c, s)) {
        return Err(Error::PreconditionViolated(format!("{s} anticommutes with the operator and is not on the cone edge")));
    }
    let region = Intersection(Predicate2(c, side), *w);
    let stars: Vec<Vertex> = syn
        .iter()
        .filter_map(|s| match s {
            Stabilizer::Star(v) => Some(*v),
            _ => None,
        })
        .collect();
    let plaqs: Vec<Face> = syn
        .iter()
        .filter_map(|s| match s {
            Stabilizer::Plaquette(f) => Some(*f),
            _ => None,
        })
        .collect();
    let mut out = PauliOp::identity();
    for pair in stars.chunks(2) {
        let [a, b] = pair else {
            return Err(Error::FactorizationFailed("odd number of star excitations".into()));
        };
        let path = connect_z(*a, *b, &region, w).map_err(|e| Error::FactorizationFailed(e.to_string()))?;
        out = out.mul(&path.op());
    }
    for pair in plaqs.chunks(2) {
        let (a, b) = match pair {
            [a, b] => (XEnd::Face(*a), XEnd::Face(*b)),
            [a] => (XEnd::Face(*a), XEnd::Boundary),
            _ => unreachable!(),
        };
        let path = connect_x(a, b, &region, w).map_err(|e| Error::FactorizationFailed(e.to_string()))?;
        out = out.mul(&path.op());
    }
    let out = PauliOp {
        phase: g.phase,
        ..out
    };
    let sign = certificate_sign(eval_ground(&g.adjoint().mul(&out))?)?;
    Ok((out, sign))
}

/// `c` restricted to one side, as a region.
struct Predicate2<'a>(&'a ConeRegion, Side);

impl Region for Predicate2<'_> {
    fn contains(&self, b: &Bond) -> bool {
        on_side(self.0, self.1, b)
    }
}

/// Groups bonds into components; `touch` says whether two bonds are adjacent.
fn components(bonds: &BTreeSet<Bond>, touch: impl Fn(&Bond, &Bond) -> bool) -> Vec<BTreeSet<Bond>> {
    let list: Vec<Bond> = bonds.iter().copied().collect();
    let mut parent: Vec<usize> = (0..list.len()).collect();
    fn find(p: &mut [usize], k: usize) -> usize {
        let mut r = k;
        while p[r] != r {
            r = p[r];
        }
        let mut k = k;
        while p[k] != r {
            let next = p[k];
            p[k] = r;
            k = next;
        }
        r
    }
    for a in 0..list.len() {
        for b in a + 1..list.len() {
            if touch(&list[a], &list[b]) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
    }
    let mut groups: BTreeMap<usize, BTreeSet<Bond>> = BTreeMap::new();
    for (k, b) in list.iter().enumerate() {
        groups.entry(find(&mut parent, k)).or_default().insert(*b);
    }
    groups.into_values().collect()
}

fn share_vertex(a: &Bond, b: &Bond) -> bool {
    let ea = a.endpoints();
    b.endpoints().iter().any(|v| ea.contains(v))
}

fn share_face(a: &Bond, b: &Bond) -> bool {
    let fa = a.faces();
    b.faces().iter().any(|f| fa.contains(f))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    /// Supported in `c ∩ w`.
    pub inside: PauliOp,
    /// Supported in `cᶜ ∩ w`; each component has an excitation off the cone edge.
    pub outside: PauliOp,
    /// `PΩ = sign · inside · outside · Ω`.
    pub sign: Sign,
    /// Outside components moved into the cone.
    pub rerouted: usize,
}

/// Splits `P` along the cone and moves outside path components whose
/// excitations all sit on the cone edge into the cone.
pub fn canonical_factorization(p: &PauliOp, c: &ConeRegion, w: &Window) -> Result<Factorization> {
    if let Some(b) = p.support().iter().find(|b| !w.contains(b)) {
        return Err(Error::SupportOutsideWindow(format!("{b} is outside {w}")));
    }
    let inside_part = PauliOp {
        phase: p.phase,
        ..restrict(p, |b| c.contains(b))
    };
    let outside_part = restrict(p, |b| !c.contains(b));
    let mut inside = inside_part;
    let mut outside = PauliOp::identity();
    let mut rerouted = 0;
    let pieces = components(&outside_part.z, share_vertex)
        .into_iter()
        .map(PauliOp::z_on)
        .chain(components(&outside_part.x, share_face).into_iter().map(PauliOp::x_on));
    for piece in pieces {
        let syn = syndrome(&piece);
        if syn.iter().all(|s| straddles(c, s)) {
            let (moved, _) = reroute_to_region(&piece, c, Side::Inside, w)?;
            inside = inside.mul(&moved);
            rerouted += 1;
        } else {
            outside = outside.mul(&piece);
        }
    }
    let sign = certificate_sign(eval_ground(&p.adjoint().mul(&inside).mul(&outside))?)?;
    Ok(Factorization {
        inside,
        outside,
        sign,
        rerouted,
    })
}

/// Every single-bond generator on `c ∩ w` commutes with every one on `cᶜ ∩ w`.
pub fn locality_check(c: &ConeRegion, w: &Window) -> CheckOutcome {
    let gens = |inside: bool| -> Vec<PauliOp> {
        w.bonds()
            .into_iter()
            .filter(|b| c.contains(b) == inside)
            .flat_map(|b| [PauliOp::x_on([b]), PauliOp::z_on([b])])
            .collect()
    };
    let (a, b) = (gens(true), gens(false));
    let pairs = a.iter().flat_map(|x| b.iter().map(move |y| (x, y)));
    CheckOutcome::scan(pairs, |(x, y)| (!x.commutes_with(y)).then(|| format!("{x} vs {y}")))
}

/// Rank over the rationals of sparse rows.
pub fn rational_rank(rows: &[BTreeMap<usize, BigRational>]) -> usize {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, BigRational>> = BTreeMap::new();
    for row in rows {
        let mut r: BTreeMap<usize, BigRational> = row.iter().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (*k, v.clone())).collect();
        while let Some((&lead, lead_val)) = r.iter().next() {
            let Some(p) = pivots.get(&lead) else {
                let inv = BigRational::one() / lead_val.clone();
                let normalized = r.into_iter().map(|(k, v)| (k, v * inv.clone())).collect();
                pivots.insert(lead, normalized);
                break;
            };
            let factor = lead_val.clone();
            for (k, v) in p {
                let e = r.entry(*k).or_insert_with(BigRational::zero);
                *e -= v * factor.clone();
                if e.is_zero() {
                    r.remove(k);
                }
            }
        }
    }
    pivots.len()
}

fn unit_coords(k: usize, v: GroundValue) -> BTreeMap<usize, BigRational> {
    let int = |n: i64| BigRational::from_integer(BigInt::from(n));
    let mut m = BTreeMap::new();
    match v {
        GroundValue::Zero => {}
        GroundValue::Unit(0) => {
            m.insert(2 * k, int(1));
        }
        GroundValue::Unit(1) => {
            m.insert(2 * k + 1, int(1));
        }
        GroundValue::Unit(2) => {
            m.insert(2 * k, int(-1));
        }
        GroundValue::Unit(_) => {
            m.insert(2 * k + 1, int(-1));
        }
    }
    m
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramCertificate {
    /// Monomials enumerated on `c ∩ w`.
    pub generators: usize,
    /// Complex dimension of their span on the ground state (syndrome classes).
    pub complex_dim: usize,
    /// Real dimension reached by self-adjoint inside vectors plus `i` times outside ones.
    pub real_dim: usize,
    /// Real dimension from the inside vectors alone.
    pub real_dim_inside_only: usize,
    /// `ω0(Γ_k† Γ_l)` among class representatives, when there are at most 64.
    pub gram: Option<Vec<Vec<GroundValue>>>,
    pub pass: bool,
    pub witness: Option<String>,
}

pub const DEFAULT_FAMILY_CAP: usize = 1 << 16;

/// Real density check on `c ∩ w`. Monomials on `c ∩ w` are bucketed by
/// syndrome; each class spans one complex line. The inside vectors are the
/// self-adjoint monomials `A` and, when a stabilizer `S` inside `c`
/// anticommutes with `A`, the self-adjoint form of `S·A`. The outside
/// vectors are `i` times self-adjoint monomials outside `c` with the same
/// excitations, found by rerouting. Passes iff the real span has twice the
/// complex dimension.
pub fn rvd_density_check(c: &ConeRegion, w: &Window, family_cap: usize) -> Result<GramCertificate> {
    let inner: Vec<Bond> = w.bonds().into_iter().filter(|b| c.contains(b)).collect();
    let size = 4usize.checked_pow(inner.len() as u32).unwrap_or(usize::MAX);
    if size > family_cap {
        return Err(Error::FamilyTooLarge { size, cap: family_cap });
    }
    let mut reps: BTreeMap<Vec<Stabilizer>, (usize, PauliOp)> = BTreeMap::new();
    let mut a_rows = Vec::new();
    for p in sampling::all_monomials(&inner) {
        let syn = syndrome(&p);
        let a = hermitian(&p);
        let next = reps.len();
        let key: Vec<Stabilizer> = syn.iter().copied().collect();
        let (k, rep) = reps.entry(key).or_insert_with(|| (next, a.clone())).clone();
        a_rows.push(unit_coords(k, eval_ground(&rep.adjoint().mul(&a))?));
        if let Some(s) = syn.iter().find(|s| s.bonds().iter().all(|b| c.contains(b))) {
            let sa = hermitian(&PauliOp::stabilizer(s).mul(&a));
            a_rows.push(unit_coords(k, eval_ground(&rep.adjoint().mul(&sa))?));
        }
    }
    let mut b_rows = Vec::new();
    let mut witness = None;
    for (syn, (k, rep)) in &reps {
        if syn.iter().any(|s| s.bonds().iter().all(|b| c.contains(b))) {
            continue;
        }
        match reroute_widening(rep, c, Side::Outside, w) {
            Ok((b, _)) => {
                let b = hermitian(&b);
                let v = eval_ground(&rep.adjoint().mul(&b))?;
                b_rows.push(unit_coords(*k, v.mul(GroundValue::Unit(1))));
            }
            Err(e) => {
                witness.get_or_insert_with(|| format!("{rep}: {e}"));
            }
        }
    }
    let complex_dim = reps.len();
    let dedup = |rows: Vec<BTreeMap<usize, BigRational>>| -> Vec<BTreeMap<usize, BigRational>> {
        let set: BTreeSet<Vec<(usize, BigRational)>> = rows.into_iter().map(|r| r.into_iter().collect()).collect();
        set.into_iter().map(|r| r.into_iter().collect()).collect()
    };
    let a_rows = dedup(a_rows);
    let real_dim_inside_only = rational_rank(&a_rows);
    let mut all = a_rows;
    all.extend(dedup(b_rows));
    let real_dim = rational_rank(&all);
    let gram = (complex_dim <= 64).then(|| {
        let mut ordered: Vec<&(usize, PauliOp)> = reps.values().collect();
        ordered.sort_by_key(|(k, _)| *k);
        ordered
            .iter()
            .map(|(_, a)| {
                ordered
                    .iter()
                    .map(|(_, b)| eval_ground(&a.adjoint().mul(b)).unwrap_or(GroundValue::Zero))
                    .collect()
            })
            .collect()
    });
    let pass = real_dim == 2 * complex_dim;
    Ok(GramCertificate {
        generators: size,
        complex_dim,
        real_dim,
        real_dim_inside_only,
        gram,
        pass,
        witness: if pass { None } else { witness.or(Some("dimension deficit".into())) },
    })
}

/// Reroutes inside `w.grow(m)` for the first margin `m` in 2, 4, 8, 16 that works.
fn reroute_widening(g: &PauliOp, c: &ConeRegion, side: Side, w: &Window) -> Result<(PauliOp, Sign)> {
    let mut last = None;
    for m in [2, 4, 8, 16] {
        match reroute_to_region(g, c, side, &w.grow(m)) {
            Ok(r) => return Ok(r),
            Err(e @ Error::PreconditionViolated(_)) => return Err(e),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("tried at least once"))
}

/// Every window with at most `max_bonds` bonds whose rows start in `rows`.
pub fn small_windows(max_bonds: usize, rows: std::ops::RangeInclusive<i32>) -> Vec<Window> {
    let mut out = Vec::new();
    for cols in 1..=max_bonds / 2 {
        for height in 1..=max_bonds / (2 * cols) {
            for a in rows.clone() {
                out.push(Window::new(cols as i32 - 1, a, a + height as i32 - 1).expect("valid"));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyTag {
    Inside,
    Outside,
    Gap,
    Bridge,
    Stabilizer,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorFamily {
    pub members: Vec<(FamilyTag, PauliOp)>,
}

impl GramCertificate {
    /// Missing real dimensions when the outside vectors are dropped.
    pub fn inside_only_deficit(&self) -> usize {
        2 * self.complex_dim - self.real_dim_inside_only
    }
}

impl OperatorFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Gap between `c1 ⊆ c2`: bonds in `c2` but not in `c1`.
fn gap_region<'a>(c1: &'a ConeRegion, c2: &'a ConeRegion) -> impl Region + 'a {
    Intersection(c2, Complement(c1))
}

fn meets(s: &Stabilizer, r: &dyn Region) -> bool {
    s.bonds().iter().any(|b| r.contains(b))
}

/// Gap family for `c1 ⊆ c2`: a bridge `Z` path from a star on the edge of
/// `c1` (the gathering site) to the nearest star on the edge of `c2`, one
/// `Z` path from each star inside the gap to the gathering site, and one
/// dual path from each plaquette inside the gap to the physical boundary.
/// All members live in the gap.
pub fn build_f0_family(c1: &ConeRegion, c2: &ConeRegion, w: &Window) -> Result<OperatorFamily> {
    if !distal_pair_check(c1, c2, w) {
        return Err(Error::Geometry(format!("{c1} and {c2} are not distal on {w}")));
    }
    let gap = gap_region(c1, c2);
    let outer = Complement(c2);
    let vertices: Vec<Vertex> = w
        .stabilizers_meeting()
        .into_iter()
        .filter_map(|s| match s {
            Stabilizer::Star(v) => Some(v),
            _ => None,
        })
        .collect();
    let star = Stabilizer::Star;
    let v1 = vertices
        .iter()
        .copied()
        .filter(|v| meets(&star(*v), c1) && meets(&star(*v), &gap))
        .min_by_key(|v| (v.j, v.i))
        .ok_or_else(|| Error::Geometry("no star on the inner cone edge".into()))?;
    let v2 = vertices
        .iter()
        .copied()
        .filter(|v| meets(&star(*v), &outer) && meets(&star(*v), &gap))
        .min_by_key(|v| ((v.i - v1.i).abs() + (v.j - v1.j).abs(), v.j, v.i))
        .ok_or_else(|| Error::Geometry("no star on the outer cone edge".into()))?;
    let bridge = connect_z(v1, v2, &gap, w).map_err(|e| Error::Geometry(e.to_string()))?;
    let mut members = vec![(FamilyTag::Bridge, bridge.op())];
    for s in w.stabilizers_inside() {
        if !s.bonds().iter().all(|b| gap.contains(b)) {
            continue;
        }
        let op = match s {
            Stabilizer::Star(v) => connect_z(v, v1, &gap, w).map(|p| p.op()),
            Stabilizer::Plaquette(f) => connect_x(XEnd::Face(f), XEnd::Boundary, &gap, w).map(|p| p.op()),
        }
        .map_err(|e| Error::Geometry(format!("gap site {s}: {e}")))?;
        members.push((FamilyTag::Gap, op));
    }
    Ok(OperatorFamily { members })
}

/// No star or plaquette meeting `w` touches both `c1` and `c2ᶜ`.
pub fn separated(c1: &ConeRegion, c2: &ConeRegion, w: &Window) -> bool {
    let outer = Complement(c2);
    w.stabilizers_meeting().iter().all(|s| !(meets(s, c1) && meets(s, &outer)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPlan {
    pub pairs: usize,
    pub seed: u64,
}

impl Default for SplitPlan {
    fn default() -> Self {
        SplitPlan {
            pairs: 1000,
            seed: sampling::DEFAULT_SEED,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Canonical {
    inner: PauliOp,
    gap: PauliOp,
    outer: PauliOp,
}

impl Canonical {
    fn op(&self) -> PauliOp {
        self.inner.mul(&self.gap).mul(&self.outer)
    }
}

fn random_product<R: Rng>(rng: &mut R, ops: &[PauliOp]) -> PauliOp {
    ops.iter().fold(PauliOp::identity(), |acc, o| if rng.gen() { acc.mul(o) } else { acc })
}

/// `⟨η1|η2⟩ = ω0(Γ1†Γ1′) ω0(Γ2†Γ2′) ω0(Γ̂†Γ̂′)` on sampled canonical-form
/// pairs `η = Γ1 Γ̂ Γ2 Ω`. Half of the second vectors differ from the first
/// by stabilizers and a phase, so that many inner products are nonzero.
pub fn split_isometry_check(c1: &ConeRegion, c2: &ConeRegion, w: &Window, plan: &SplitPlan) -> Result<CheckOutcome> {
    if !separated(c1, c2, w) {
        return Err(Error::PreconditionViolated(format!("a stabilizer touches both {c1} and the outside of {c2}")));
    }
    let family = build_f0_family(c1, c2, w)?;
    let f0: Vec<PauliOp> = family.members.iter().map(|(_, p)| p.clone()).collect();
    let gap = gap_region(c1, c2);
    let inner_bonds: Vec<Bond> = w.bonds().into_iter().filter(|b| c1.contains(b)).collect();
    let outer_bonds: Vec<Bond> = w.bonds().into_iter().filter(|b| !c2.contains(b)).collect();
    let stab_ops = |keep: &dyn Fn(&Bond) -> bool| -> Vec<PauliOp> {
        w.stabilizers_inside()
            .iter()
            .filter(|s| s.bonds().iter().all(|b| keep(b)))
            .map(PauliOp::stabilizer)
            .collect()
    };
    let inner_stabs = stab_ops(&|b| c1.contains(b));
    let outer_stabs = stab_ops(&|b| !c2.contains(b));
    let gap_stabs = stab_ops(&|b| gap.contains(b));
    let mut rng = sampling::rng(plan.seed);
    let sample = |rng: &mut rand_chacha::ChaCha8Rng| Canonical {
        inner: sampling::sparse_monomial(rng, &inner_bonds, 6),
        gap: random_product(rng, &f0),
        outer: sampling::sparse_monomial(rng, &outer_bonds, 6),
    };
    let mut tested = 0;
    for _ in 0..plan.pairs {
        let e1 = sample(&mut rng);
        let e2 = match rng.gen_range(0..4) {
            0 => sample(&mut rng),
            1 => Canonical {
                gap: random_product(&mut rng, &f0),
                ..e1.clone()
            },
            _ => Canonical {
                inner: e1.inner.mul(&random_product(&mut rng, &inner_stabs)).with_phase(rng.gen_range(0..4)),
                gap: e1.gap.mul(&random_product(&mut rng, &gap_stabs)),
                outer: e1.outer.mul(&random_product(&mut rng, &outer_stabs)),
            },
        };
        tested += 1;
        let lhs = eval_ground(&e1.op().adjoint().mul(&e2.op()))?;
        let part = |a: &PauliOp, b: &PauliOp| eval_ground(&a.adjoint().mul(b));
        let rhs = part(&e1.inner, &e2.inner)?
            .mul(part(&e1.outer, &e2.outer)?)
            .mul(part(&e1.gap, &e2.gap)?);
        if lhs != rhs {
            return Ok(CheckOutcome::failed(
                tested,
                format!("{} vs {}: {lhs} != {rhs}", e1.op(), e2.op()),
            ));
        }
    }
    Ok(CheckOutcome::passed(tested))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexReport {
    /// `V_n` commutes with every single-bond generator on `w` off `Ξ`.
    pub commutant: CheckOutcome,
    /// `V_n` is not a product of `Ξ`-supported monomials and stabilizers.
    pub outside_span: bool,
    /// `V_n` commutes or anticommutes with every generator on `Ξ ∩ w`.
    pub normalizes: CheckOutcome,
    /// `2` when all three hold, else `1`.
    pub index: u32,
    /// Coordinates of the span computation (bonds off `Ξ` in the hull window).
    pub span_coords: usize,
    pub span_rank: usize,
}

impl IndexReport {
    pub fn pass(&self) -> bool {
        self.index == 2
    }
}

/// Rays for `Ξ = c1 ∪ c2ᶜ` with up cones `c1 ⊆ c2`: a Z-ray up the middle of
/// `c1` and a Z-ray along row `apex(c2) − 3`, going east below `c2`.
pub fn index_rays(c1: &ConeRegion, c2: &ConeRegion) -> Result<(RayPath, RayPath)> {
    if c1.direction != Direction::Up || c2.direction != Direction::Up {
        return Err(Error::Geometry("index fixture expects two upward cones".into()));
    }
    let upper = RayPath::new(
        Kind::Z,
        Anchor::Vertex(Vertex::new(0, c1.apex_row + 1)),
        vec![],
        vec![Step::E, Step::N, Step::N],
    )?;
    let lower = RayPath::new(Kind::Z, Anchor::Vertex(Vertex::new(0, c2.apex_row - 3)), vec![], vec![Step::E])?;
    Ok((upper, lower))
}

/// Intertwiner approximant between the two index rays.
pub fn index_intertwiner(c1: &ConeRegion, c2: &ConeRegion, n: usize) -> Result<PauliOp> {
    let (upper, lower) = index_rays(c1, c2)?;
    let xi = Xi { c1, c2 };
    for r in [&upper, &lower] {
        if let Some(b) = r.truncate(n).bonds().iter().find(|b| !xi.contains(b)) {
            return Err(Error::Geometry(format!("{r} leaves the union at {b}")));
        }
    }
    intertwiner_approx(&Sector::new(upper), &Sector::new(lower), n)
}

/// `Ξ = c1 ∪ c2ᶜ`.
#[derive(Clone, Copy)]
struct Xi<'a> {
    c1: &'a ConeRegion,
    c2: &'a ConeRegion,
}

impl Region for Xi<'_> {
    fn contains(&self, b: &Bond) -> bool {
        self.c1.contains(b) || !self.c2.contains(b)
    }
}

pub fn index_two_check(c1: &ConeRegion, c2: &ConeRegion, w: &Window, n: usize) -> Result<IndexReport> {
    let v = index_intertwiner(c1, c2, n)?;
    Ok(index_two_check_for(&v, c1, c2, w))
}

/// The three index conditions for a given candidate `V`.
pub fn index_two_check_for(v: &PauliOp, c1: &ConeRegion, c2: &ConeRegion, w: &Window) -> IndexReport {
    let xi = Xi { c1, c2 };
    let gens = move |on_xi: bool| {
        w.bonds()
            .into_iter()
            .filter(move |b| xi.contains(b) == on_xi)
            .flat_map(|b| [PauliOp::x_on([b]), PauliOp::z_on([b])])
    };
    let commutant = CheckOutcome::scan(gens(false), |g| (!g.commutes_with(v)).then(|| g.to_string()));
    // Every Pauli monomial commutes or anticommutes; this records the count.
    let normalizes = CheckOutcome::scan(gens(true), |g| {
        let s = g.commutation_sign(v);
        (s != Sign::Plus && s != Sign::Minus).then(|| g.to_string())
    });
    let hull = match Window::around(&v.support(), 1) {
        Some(vw) => w.hull(&vw),
        None => *w,
    };
    let coords: Vec<Bond> = hull.bonds().into_iter().filter(|b| !xi.contains(b)).collect();
    let index: BTreeMap<Bond, usize> = coords.iter().enumerate().map(|(k, b)| (*b, k)).collect();
    let mask = |p: &PauliOp| {
        let mut m = BitVec::zeros(2 * coords.len());
        for b in &p.x {
            if let Some(k) = index.get(b) {
                m.flip(2 * k);
            }
        }
        for b in &p.z {
            if let Some(k) = index.get(b) {
                m.flip(2 * k + 1);
            }
        }
        m
    };
    let stabs = hull.stabilizers_inside();
    let mut basis = XorBasis::new(2 * coords.len(), stabs.len().max(1));
    for (k, s) in stabs.iter().enumerate() {
        basis.insert(mask(&PauliOp::stabilizer(s)), k);
    }
    let outside_span = !basis.contains(&mask(v));
    let pass = commutant.pass && normalizes.pass && outside_span;
    IndexReport {
        commutant,
        outside_span,
        normalizes,
        index: if pass { 2 } else { 1 },
        span_coords: 2 * coords.len(),
        span_rank: basis.rank(),
    }
}

/// Standard distal pair: `c1 = cone(up, 4, 1)` inside `c2 = cone(up, 0, 1/2)`.
pub fn standard_distal_pair() -> (ConeRegion, ConeRegion) {
    (ConeRegion::up(4, 1, 1), ConeRegion::up(0, 1, 2))
}

/// Cones used for the factorization and density checks.
pub fn haag_cones() -> [ConeRegion; 2] {
    [ConeRegion::up(0, 1, 1), ConeRegion::down(1, 1, 2)]
}
