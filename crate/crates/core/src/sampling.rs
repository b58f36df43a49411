//! Seeded generators of test operators.

use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::lattice::{Bond, Window};
use crate::pauli::PauliOp;

pub const DEFAULT_SEED: u64 = 0x7031_c0de;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Each bond independently `I`, `X`, `Z` or `XZ`, phase `+1`.
pub fn uniform_monomial(rng: &mut impl Rng, bonds: &[Bond]) -> PauliOp {
    let mut p = PauliOp::identity();
    for b in bonds {
        let k: u8 = rng.gen_range(0..4);
        if k & 1 == 1 {
            p.x.insert(*b);
        }
        if k & 2 == 2 {
            p.z.insert(*b);
        }
    }
    p
}

/// Up to `max_support` bonds, each carrying a nontrivial Pauli, random phase.
pub fn sparse_monomial(rng: &mut impl Rng, bonds: &[Bond], max_support: usize) -> PauliOp {
    let k = rng.gen_range(0..=max_support.min(bonds.len()));
    let mut p = PauliOp::identity();
    for idx in sample(rng, bonds.len(), k).iter() {
        let b = bonds[idx];
        match rng.gen_range(0..3) {
            0 => {
                p.x.insert(b);
            }
            1 => {
                p.z.insert(b);
            }
            _ => {
                p.x.insert(b);
                p.z.insert(b);
            }
        }
    }
    p.with_phase(rng.gen_range(0..4))
}

/// Product of a uniformly random subset of the stabilizers inside `w`.
pub fn stabilizer_product(rng: &mut impl Rng, w: &Window) -> PauliOp {
    let mut p = PauliOp::identity();
    for s in w.stabilizers_inside() {
        if rng.gen::<bool>() {
            p = p.mul(&PauliOp::stabilizer(&s));
        }
    }
    p
}

/// Every monomial on `bonds` with phase `+1`, in a fixed order.
pub fn all_monomials(bonds: &[Bond]) -> impl Iterator<Item = PauliOp> + '_ {
    assert!(bonds.len() <= 12, "exhaustive enumeration is capped at 12 bonds");
    (0..1u32 << (2 * bonds.len())).map(move |code| {
        let mut p = PauliOp::identity();
        for (k, b) in bonds.iter().enumerate() {
            if code >> (2 * k) & 1 == 1 {
                p.x.insert(*b);
            }
            if code >> (2 * k + 1) & 1 == 1 {
                p.z.insert(*b);
            }
        }
        p
    })
}

/// Exhaustive below `exhaustive_cap` bonds, else `uniform` random monomials
/// followed by `structured` random stabilizer products.
pub fn test_set(w: &Window, exhaustive_cap: usize, uniform: usize, structured: usize, seed: u64) -> Vec<PauliOp> {
    let bonds = w.bonds();
    if bonds.len() <= exhaustive_cap {
        return all_monomials(&bonds).collect();
    }
    let mut r = rng(seed);
    let mut out: Vec<PauliOp> = (0..uniform).map(|_| uniform_monomial(&mut r, &bonds)).collect();
    out.extend((0..structured).map(|_| stabilizer_product(&mut r, w)));
    out
}
