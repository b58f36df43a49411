//! The canonical ground state on Pauli monomials.
//!
//! `eval_ground` is the row sweep; `eval_ground_gf2` and `eval_ground_dense`
//! are independent oracles kept for cross-checking.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitVec, XorBasis};
use crate::lattice::{stabilizers_meeting, Bond, Face, Orientation, Stabilizer, Vertex, Window};
use crate::pauli::PauliOp;

/// Exact value of the state: zero or a power of `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroundValue {
    Zero,
    /// `i^k`, `k` mod 4.
    Unit(u8),
}

impl GroundValue {
    pub const ONE: GroundValue = GroundValue::Unit(0);
    pub const MINUS_ONE: GroundValue = GroundValue::Unit(2);

    pub fn from_phase(k: u8) -> GroundValue {
        GroundValue::Unit(k % 4)
    }

    pub fn is_zero(&self) -> bool {
        *self == GroundValue::Zero
    }

    pub fn mul(self, other: GroundValue) -> GroundValue {
        match (self, other) {
            (GroundValue::Unit(a), GroundValue::Unit(b)) => GroundValue::Unit((a + b) % 4),
            _ => GroundValue::Zero,
        }
    }

    pub fn conj(self) -> GroundValue {
        match self {
            GroundValue::Unit(k) => GroundValue::Unit((4 - k) % 4),
            z => z,
        }
    }

    /// `Some(0 | 1 | -1)` for real values, `None` for `±i`.
    pub fn as_real(&self) -> Option<i8> {
        match self {
            GroundValue::Zero => Some(0),
            GroundValue::Unit(0) => Some(1),
            GroundValue::Unit(2) => Some(-1),
            _ => None,
        }
    }
}

impl fmt::Display for GroundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroundValue::Zero => "0",
            GroundValue::Unit(0) => "+1",
            GroundValue::Unit(1) => "+i",
            GroundValue::Unit(2) => "-1",
            _ => "-i",
        })
    }
}

impl FromStr for GroundValue {
    type Err = Error;
    fn from_str(s: &str) -> Result<GroundValue> {
        Ok(match s.trim() {
            "0" => GroundValue::Zero,
            "+1" | "1" => GroundValue::Unit(0),
            "+i" | "i" => GroundValue::Unit(1),
            "-1" => GroundValue::Unit(2),
            "-i" => GroundValue::Unit(3),
            other => {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("not a ground value: `{other}`"),
                })
            }
        })
    }
}

/// Evaluates the ground state by the north-to-south sweep.
pub fn eval_ground(p: &PauliOp) -> Result<GroundValue> {
    let support = p.support();
    if support.is_empty() {
        return Ok(GroundValue::from_phase(p.phase));
    }
    for s in stabilizers_meeting(&support) {
        if !PauliOp::stabilizer(&s).commutes_with(p) {
            return Ok(GroundValue::Zero);
        }
    }

    let lo = support.first().map(Bond::row_rank).unwrap_or(0);
    let hi = support.last().map(Bond::row_rank).unwrap_or(0);
    let bound = 4 * support.len() * (hi - lo + 1) as usize;
    let mut steps = 0usize;
    let mut acc = p.clone();
    loop {
        let top = match (acc.x.last(), acc.z.last()) {
            (None, None) => break,
            (a, b) => *a.max(b).expect("nonempty"),
        };
        let row: BTreeSet<Bond> = {
            let lo_b = Bond { i: i32::MIN, ..top };
            let hi_b = Bond { i: i32::MAX, ..top };
            acc.x.range(lo_b..=hi_b).chain(acc.z.range(lo_b..=hi_b)).copied().collect()
        };
        for b in row {
            let (in_x, in_z) = (acc.x.contains(&b), acc.z.contains(&b));
            let s = match (b.orient, in_x, in_z) {
                (Orientation::V, true, false) => Stabilizer::Star(Vertex::new(b.i, b.j)),
                (Orientation::H, false, true) => Stabilizer::Plaquette(Face::new(b.i, b.j - 1)),
                _ => {
                    return Err(Error::SweepContradiction(format!(
                        "unexpected Pauli at {b} while reducing {p}"
                    )))
                }
            };
            acc.mul_assign_right(&PauliOp::stabilizer(&s));
            steps += 1;
            if steps > bound {
                return Err(Error::SweepContradiction(format!(
                    "no termination after {bound} steps on {p}"
                )));
            }
        }
    }
    Ok(GroundValue::from_phase(acc.phase))
}

/// How far the GF(2) oracle searches beyond the support's bounding box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarginPolicy {
    /// `None` starts at the bounding-box perimeter.
    pub initial: Option<u32>,
    /// The margin doubles until it exceeds `cap_factor` times the initial one.
    pub cap_factor: u32,
}

impl Default for MarginPolicy {
    fn default() -> Self {
        MarginPolicy {
            initial: Some(2),
            cap_factor: 2,
        }
    }
}

impl MarginPolicy {
    pub fn perimeter() -> MarginPolicy {
        MarginPolicy {
            initial: None,
            cap_factor: 4,
        }
    }

    fn margins(&self, support: &BTreeSet<Bond>) -> Vec<i32> {
        let start = match self.initial {
            Some(m) => m.max(1) as i32,
            None => {
                let w = support.iter().map(|b| b.i).max().unwrap_or(0)
                    - support.iter().map(|b| b.i).min().unwrap_or(0)
                    + 1;
                let h = support.iter().map(|b| b.j).max().unwrap_or(0)
                    - support.iter().map(|b| b.j).min().unwrap_or(0)
                    + 1;
                2 * (w + h)
            }
        };
        let cap = start * self.cap_factor.max(1) as i32;
        let mut out = vec![start];
        while out.last().copied().unwrap_or(cap) * 2 <= cap {
            out.push(out.last().copied().unwrap_or(cap) * 2);
        }
        out
    }
}

/// Solves for `mask` as a sum of generator masks over `bonds`.
fn solve_mask(gens: &[Stabilizer], bonds: &[Bond], mask: &BTreeSet<Bond>) -> Option<Vec<Stabilizer>> {
    // Column-major coordinates, unrelated to the sweep's row order.
    let mut order = bonds.to_vec();
    order.sort_by_key(|b| (b.i, b.j, b.orient));
    let index = |b: &Bond| order.binary_search_by_key(&(b.i, b.j, b.orient), |c| (c.i, c.j, c.orient));
    let mut basis = XorBasis::new(order.len(), gens.len());
    for (k, g) in gens.iter().enumerate() {
        let mut v = BitVec::zeros(order.len());
        for b in g.bonds() {
            v.set(index(&b).ok()?);
        }
        basis.insert(v, k);
    }
    let mut target = BitVec::zeros(order.len());
    for b in mask {
        target.set(index(b).ok()?);
    }
    basis
        .solve(&target)
        .map(|combo| combo.ones().map(|k| gens[k]).collect())
}

/// Evaluates the ground state by deciding membership in the stabilizer group
/// over GF(2), separately for the X and Z masks.
pub fn eval_ground_gf2(p: &PauliOp, policy: &MarginPolicy) -> GroundValue {
    let support = p.support();
    if support.is_empty() {
        return GroundValue::from_phase(p.phase);
    }
    for margin in policy.margins(&support) {
        let bx = Window::around(&support, margin).expect("nonempty support");
        let bonds = bx.bonds();
        let inside = bx.stabilizers_inside();
        let (stars, plaqs): (Vec<Stabilizer>, Vec<Stabilizer>) = inside.into_iter().partition(|s| s.is_star());
        let (Some(sx), Some(sz)) = (solve_mask(&stars, &bonds, &p.x), solve_mask(&plaqs, &bonds, &p.z)) else {
            continue;
        };
        let mut s = PauliOp::identity();
        for g in sx.iter().chain(&sz) {
            s.mul_assign_right(&PauliOp::stabilizer(g));
        }
        debug_assert!(s.x == p.x && s.z == p.z);
        return GroundValue::from_phase((p.phase + 4 - s.phase) % 4);
    }
    GroundValue::Zero
}

/// Largest window the dense oracle accepts.
pub const DENSE_MAX_BONDS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct Gi(i64, i64);

impl std::ops::Add for Gi {
    type Output = Gi;
    fn add(self, o: Gi) -> Gi {
        Gi(self.0 + o.0, self.1 + o.1)
    }
}

impl std::ops::Mul for Gi {
    type Output = Gi;
    fn mul(self, o: Gi) -> Gi {
        Gi(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }
}

type M2 = [[Gi; 2]; 2];

const I2: M2 = [[Gi(1, 0), Gi(0, 0)], [Gi(0, 0), Gi(1, 0)]];
const X2: M2 = [[Gi(0, 0), Gi(1, 0)], [Gi(1, 0), Gi(0, 0)]];
const Z2: M2 = [[Gi(1, 0), Gi(0, 0)], [Gi(0, 0), Gi(-1, 0)]];

fn m2mul(a: &M2, b: &M2) -> M2 {
    let mut out = [[Gi::default(); 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
        }
    }
    out
}

fn m2trace(a: &M2) -> Gi {
    a[0][0] + a[1][1]
}

/// `tr(ρ_w P)` with `ρ_w = 2^{-|w|} Σ S` over all products `S` of the stars
/// and plaquettes lying inside `w`, computed site by site with explicit
/// 2×2 matrices.
pub fn eval_ground_dense(p: &PauliOp, w: &Window) -> Result<GroundValue> {
    let n = w.len();
    if n > DENSE_MAX_BONDS {
        return Err(Error::WindowTooLarge {
            bonds: n,
            limit: DENSE_MAX_BONDS,
        });
    }
    if let Some(b) = p.support().iter().find(|b| !w.contains(b)) {
        return Err(Error::SupportOutsideWindow(format!("{b} is outside {w}")));
    }
    let sites = w.bonds();
    let gens = w.stabilizers_inside();
    let p_site: Vec<M2> = sites
        .iter()
        .map(|b| {
            let mut m = I2;
            if p.x.contains(b) {
                m = m2mul(&m, &X2);
            }
            if p.z.contains(b) {
                m = m2mul(&m, &Z2);
            }
            m
        })
        .collect();
    let gen_sites: Vec<Vec<usize>> = gens
        .iter()
        .map(|g| {
            let bonds = g.bonds();
            (0..sites.len()).filter(|k| bonds.contains(&sites[*k])).collect()
        })
        .collect();

    let mut total = Gi::default();
    for subset in 0u32..1 << gens.len() {
        let mut s_site = vec![I2; sites.len()];
        for (g, on) in gen_sites.iter().enumerate() {
            if subset >> g & 1 == 0 {
                continue;
            }
            let factor = if gens[g].is_star() { &X2 } else { &Z2 };
            for &k in on {
                s_site[k] = m2mul(&s_site[k], factor);
            }
        }
        let mut term = Gi(1, 0);
        for k in 0..sites.len() {
            term = term * m2trace(&m2mul(&s_site[k], &p_site[k]));
            if term == Gi(0, 0) {
                break;
            }
        }
        total = total + term;
    }
    let phase = [Gi(1, 0), Gi(0, 1), Gi(-1, 0), Gi(0, -1)][p.phase as usize % 4];
    let total = total * phase;
    let scale = 1i64 << n;
    match (total.0, total.1) {
        (0, 0) => Ok(GroundValue::Zero),
        (r, 0) if r == scale => Ok(GroundValue::Unit(0)),
        (0, r) if r == scale => Ok(GroundValue::Unit(1)),
        (r, 0) if r == -scale => Ok(GroundValue::Unit(2)),
        (0, r) if r == -scale => Ok(GroundValue::Unit(3)),
        (re, im) => Err(Error::SweepContradiction(format!(
            "dense trace {re}+{im}i is not a unit multiple of 2^{n}"
        ))),
    }
}

/// `Σ_S (1 - ω(P† S P))` over stars and plaquettes meeting `supp(P)`; equals
/// twice the number of anticommuting stabilizers.
pub fn ground_energy_defect(p: &PauliOp) -> Result<u32> {
    let adj = p.adjoint();
    let mut total = 0u32;
    for s in stabilizers_meeting(&p.support()) {
        let conj = adj.mul(&PauliOp::stabilizer(&s)).mul(p);
        let v = eval_ground(&conj)?
            .as_real()
            .ok_or_else(|| Error::SweepContradiction(format!("imaginary value on {s}")))?;
        total += (1 - v as i32) as u32;
    }
    Ok(total)
}

/// Two boundary-anchored X-paths sharing their bulk end face, and a Z-loop
/// that each of them crosses once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NontracialityWitness {
    pub p1: PauliOp,
    pub p2: PauliOp,
    pub p3: PauliOp,
    /// `ω(P1 P2 P3)`.
    pub forward: GroundValue,
    /// `ω(P2 P3 P1)`.
    pub reversed: GroundValue,
}

impl NontracialityWitness {
    /// Re-evaluates both orderings for a given triple.
    pub fn evaluate(p1: PauliOp, p2: PauliOp, p3: PauliOp) -> Result<NontracialityWitness> {
        let forward = eval_ground(&p1.mul(&p2).mul(&p3))?;
        let reversed = eval_ground(&p2.mul(&p3).mul(&p1))?;
        Ok(NontracialityWitness {
            p1,
            p2,
            p3,
            forward,
            reversed,
        })
    }
}

/// Builds the largest witness configuration fitting in `w`: a `k×k` block
/// of faces with south-west corner `(k, row_min + k)` bounded by the Z-loop,
/// one X-path entering from the west and one from the south.
pub fn nontraciality_witness(w: &Window) -> Result<NontracialityWitness> {
    let k = (w.max_col / 2).min((w.row_max - w.row_min) / 2);
    if k < 1 {
        return Err(Error::WindowTooSmall(format!(
            "{w} cannot hold a loop with two boundary paths"
        )));
    }
    let (c0, d0) = (k, w.row_min + k);
    let m = d0 + (k - 1) / 2;

    let mut lp = Vec::new();
    for i in c0..c0 + k {
        lp.push(Bond::h(i, d0));
        lp.push(Bond::h(i, d0 + k));
    }
    for j in d0..d0 + k {
        lp.push(Bond::v(c0, j));
        lp.push(Bond::v(c0 + k, j));
    }
    let p3 = PauliOp::z_on(lp);
    let p1 = PauliOp::x_on((0..=c0).map(|i| Bond::v(i, m)));
    let p2 = PauliOp::x_on(
        (0..=c0)
            .map(|i| Bond::v(i, d0 - 1))
            .chain((d0..=m).map(|j| Bond::h(c0, j))),
    );
    debug_assert!(p1.support().iter().chain(&p2.support()).chain(&p3.support()).all(|b| w.contains(b)));
    NontracialityWitness::evaluate(p1, p2, p3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn star(i: i32, j: i32) -> PauliOp {
        PauliOp::stabilizer(&Stabilizer::Star(Vertex::new(i, j)))
    }

    fn plaq(i: i32, j: i32) -> PauliOp {
        PauliOp::stabilizer(&Stabilizer::Plaquette(Face::new(i, j)))
    }

    #[test]
    fn stabilizers_evaluate_to_one() {
        for i in 0..4 {
            for j in -2..3 {
                assert_eq!(eval_ground(&star(i, j)).unwrap(), GroundValue::ONE);
                assert_eq!(eval_ground(&plaq(i, j)).unwrap(), GroundValue::ONE);
            }
        }
        assert_eq!(eval_ground(&PauliOp::identity()).unwrap(), GroundValue::ONE);
    }

    #[test]
    fn lone_x_vanishes() {
        let p = PauliOp::parse("X@H(2,3)").unwrap();
        assert_eq!(eval_ground(&p).unwrap(), GroundValue::Zero);
        assert_eq!(eval_ground_gf2(&p, &MarginPolicy::default()), GroundValue::Zero);
    }

    #[test]
    fn enclosed_star_product() {
        // All stars with 0 <= i <= 2, 1 <= j <= 3: an X loop from boundary to boundary.
        let mut p = PauliOp::identity();
        for i in 0..=2 {
            for j in 1..=3 {
                p = p.mul(&star(i, j));
            }
        }
        assert!(p.z.is_empty());
        assert_eq!(p.x.len(), 3 + 3 + 3);
        assert_eq!(eval_ground(&p).unwrap(), GroundValue::ONE);
        assert_eq!(eval_ground_gf2(&p, &MarginPolicy::default()), GroundValue::ONE);
        assert_eq!(eval_ground_gf2(&p, &MarginPolicy::perimeter()), GroundValue::ONE);
    }

    #[test]
    fn phases_are_linear() {
        let s = star(1, 1).mul(&plaq(1, 1));
        for k in 0..4 {
            assert_eq!(eval_ground(&s.clone().with_phase(k)).unwrap(), GroundValue::Unit(k));
        }
        // Y-type product: A·B with overlap; ω(B·A) = ω(A·B) up to the commutation sign (+1).
        assert_eq!(eval_ground(&plaq(1, 1).mul(&star(1, 1))).unwrap(), GroundValue::ONE);
    }

    #[test]
    fn open_boundary_string_vanishes() {
        let p = PauliOp::parse("Z@V(0,0) Z@V(0,1)").unwrap();
        assert_eq!(eval_ground(&p).unwrap(), GroundValue::Zero);
        assert_eq!(eval_ground_gf2(&p, &MarginPolicy::default()), GroundValue::Zero);
        assert_eq!(eval_ground_gf2(&plaq(3, 3), &MarginPolicy::default()), GroundValue::ONE);
    }

    #[test]
    fn dense_examples() {
        let w = Window::new(1, 0, 1).unwrap();
        assert_eq!(w.len(), 8);
        assert_eq!(eval_ground_dense(&star(0, 1), &w).unwrap(), GroundValue::ONE);
        assert_eq!(eval_ground_dense(&plaq(0, 0), &w).unwrap(), GroundValue::ONE);
        let x = PauliOp::parse("X@H(0,1)").unwrap();
        assert_eq!(eval_ground_dense(&x, &w).unwrap(), GroundValue::Zero);
        let big = Window::new(2, 0, 1).unwrap();
        assert!(eval_ground_dense(&x, &big).is_ok());
        let huge = Window::new(3, 0, 1).unwrap();
        assert!(matches!(eval_ground_dense(&x, &huge), Err(Error::WindowTooLarge { bonds: 16, .. })));
        assert!(matches!(
            eval_ground_dense(&PauliOp::parse("X@H(4,0)").unwrap(), &w),
            Err(Error::SupportOutsideWindow(_))
        ));
    }

    #[test]
    fn dense_agrees_exhaustively_on_six_bonds() {
        let w = Window::new(0, 0, 2).unwrap();
        let sites = w.bonds();
        assert_eq!(sites.len(), 6);
        let mut nonzero = 0;
        for code in 0u32..4u32.pow(6) {
            let mut p = PauliOp::identity();
            for (k, b) in sites.iter().enumerate() {
                let t = code >> (2 * k) & 3;
                if t & 1 == 1 {
                    p.x.insert(*b);
                }
                if t & 2 == 2 {
                    p.z.insert(*b);
                }
            }
            let sweep = eval_ground(&p).unwrap();
            assert_eq!(eval_ground_dense(&p, &w).unwrap(), sweep, "{p}");
            assert_eq!(eval_ground_gf2(&p, &MarginPolicy::default()), sweep, "{p}");
            nonzero += usize::from(!sweep.is_zero());
        }
        // Identity, two stars and their product.
        assert_eq!(nonzero, 4);
    }

    #[test]
    fn energy_defect_examples() {
        assert_eq!(ground_energy_defect(&star(2, 2)).unwrap(), 0);
        assert_eq!(ground_energy_defect(&PauliOp::parse("Z@H(3,3)").unwrap()).unwrap(), 4);
        assert_eq!(ground_energy_defect(&PauliOp::parse("Z@V(0,4)").unwrap()).unwrap(), 4);
        // X on a bulk bond flips its two plaquettes.
        assert_eq!(ground_energy_defect(&PauliOp::parse("X@V(2,1)").unwrap()).unwrap(), 4);
        // Boundary X touches a single plaquette.
        assert_eq!(ground_energy_defect(&PauliOp::parse("X@V(0,1)").unwrap()).unwrap(), 2);
    }

    #[test]
    fn nontraciality_minimal_window() {
        let w = Window::new(2, 0, 2).unwrap();
        let wit = nontraciality_witness(&w).unwrap();
        assert_eq!((wit.forward, wit.reversed), (GroundValue::ONE, GroundValue::MINUS_ONE));
        assert!(matches!(nontraciality_witness(&Window::new(1, 0, 5).unwrap()), Err(Error::WindowTooSmall(_))));
        assert!(matches!(nontraciality_witness(&Window::new(5, 0, 1).unwrap()), Err(Error::WindowTooSmall(_))));
    }

    #[test]
    fn doubled_loop_is_tracial() {
        let wit = nontraciality_witness(&Window::new(6, -3, 5).unwrap()).unwrap();
        let doubled = wit.p3.mul(&wit.p3);
        let again = NontracialityWitness::evaluate(wit.p1, wit.p2, doubled).unwrap();
        assert_eq!((again.forward, again.reversed), (GroundValue::ONE, GroundValue::ONE));
    }

    #[test]
    fn margin_schedule() {
        let support: BTreeSet<Bond> = [Bond::h(0, 0), Bond::v(2, 3)].into();
        assert_eq!(MarginPolicy::default().margins(&support), vec![2, 4]);
        // Bounding box 3 columns by 4 rows.
        assert_eq!(MarginPolicy::perimeter().margins(&support), vec![14, 28, 56]);
    }

    fn local_op() -> impl Strategy<Value = PauliOp> {
        // Random products of a few stabilizers times a sparse perturbation.
        (
            proptest::collection::vec((any::<bool>(), 0..4i32, -3..4i32), 0..5),
            proptest::collection::vec((0..3u8, any::<bool>(), 0..4i32, -3..4i32), 0..3),
            0..4u8,
        )
            .prop_map(|(stabs, noise, ph)| {
                let mut p = PauliOp::identity().with_phase(ph);
                for (is_star, i, j) in stabs {
                    p = p.mul(&if is_star { star(i, j) } else { plaq(i, j) });
                }
                for (kind, h, i, j) in noise {
                    let b = if h { Bond::h(i, j) } else { Bond::v(i, j) };
                    let q = match kind {
                        0 => PauliOp::x_on([b]),
                        1 => PauliOp::z_on([b]),
                        _ => PauliOp::y_at(b),
                    };
                    p = p.mul(&q);
                }
                p
            })
    }

    proptest! {
        #[test]
        fn sweep_matches_gf2(p in local_op()) {
            prop_assert_eq!(eval_ground(&p).unwrap(), eval_ground_gf2(&p, &MarginPolicy::default()));
        }

        #[test]
        fn perimeter_policy_agrees(p in local_op()) {
            prop_assert_eq!(
                eval_ground_gf2(&p, &MarginPolicy::perimeter()),
                eval_ground_gf2(&p, &MarginPolicy::default())
            );
        }

        #[test]
        fn stabilizer_absorption(p in local_op(), is_star in any::<bool>(), i in 0..5i32, j in -4..5i32) {
            let s = if is_star { star(i, j) } else { plaq(i, j) };
            let v = eval_ground(&p).unwrap();
            prop_assert_eq!(eval_ground(&s.mul(&p)).unwrap(), v);
            prop_assert_eq!(eval_ground(&p.mul(&s)).unwrap(), v);
        }

        #[test]
        fn adjoint_conjugates(p in local_op()) {
            prop_assert_eq!(eval_ground(&p.adjoint()).unwrap(), eval_ground(&p).unwrap().conj());
        }

        #[test]
        fn hermitian_values_are_real(p in local_op()) {
            if p.is_hermitian() {
                prop_assert!(eval_ground(&p).unwrap().as_real().is_some());
            }
        }

        #[test]
        fn translation_invariant(p in local_op(), n in -20..20i32) {
            prop_assert_eq!(eval_ground(&p.translate_j(n)).unwrap(), eval_ground(&p).unwrap());
        }

        #[test]
        fn defect_counts_anticommuting(p in local_op()) {
            let count = stabilizers_meeting(&p.support())
                .iter()
                .filter(|s| !PauliOp::stabilizer(s).commutes_with(&p))
                .count() as u32;
            prop_assert_eq!(ground_energy_defect(&p).unwrap(), 2 * count);
        }

        #[test]
        fn nontraciality_any_scale(cols in 2..14i32, lo in -6..6i32, h in 2..14i32) {
            let wit = nontraciality_witness(&Window::new(cols, lo, lo + h).unwrap()).unwrap();
            prop_assert_eq!((wit.forward, wit.reversed), (GroundValue::ONE, GroundValue::MINUS_ONE));
        }
    }
}
