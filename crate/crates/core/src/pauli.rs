//! Finite-support Pauli monomials with exact phase tracking.
//!
//! A `PauliOp` is `i^phase` times, on each bond, `X^x Z^z` (X applied
//! first in the written product, i.e. the site factor is `X·Z`).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{parse_bond, Bond, Stabilizer};
use crate::text::Cursor;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct PauliOp {
    pub x: BTreeSet<Bond>,
    pub z: BTreeSet<Bond>,
    /// Exponent of `i`, reduced mod 4.
    pub phase: u8,
}

/// Sign of a commutation relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// Phase exponent of this sign as a power of `i`.
    pub fn phase(self) -> u8 {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 2,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self != rhs)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

fn overlap(a: &BTreeSet<Bond>, b: &BTreeSet<Bond>) -> usize {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    small.iter().filter(|x| large.contains(x)).count()
}

fn sym_diff_into(acc: &mut BTreeSet<Bond>, other: &BTreeSet<Bond>) {
    for b in other {
        if !acc.remove(b) {
            acc.insert(*b);
        }
    }
}

impl PauliOp {
    pub fn identity() -> PauliOp {
        PauliOp::default()
    }

    pub fn x_on(bonds: impl IntoIterator<Item = Bond>) -> PauliOp {
        let mut p = PauliOp::identity();
        for b in bonds {
            if !p.x.remove(&b) {
                p.x.insert(b);
            }
        }
        p
    }

    pub fn z_on(bonds: impl IntoIterator<Item = Bond>) -> PauliOp {
        let mut p = PauliOp::identity();
        for b in bonds {
            if !p.z.remove(&b) {
                p.z.insert(b);
            }
        }
        p
    }

    /// `Y = i·X·Z` on a single bond.
    pub fn y_at(b: Bond) -> PauliOp {
        PauliOp {
            x: [b].into(),
            z: [b].into(),
            phase: 1,
        }
    }

    pub fn stabilizer(s: &Stabilizer) -> PauliOp {
        match s {
            Stabilizer::Star(_) => PauliOp::x_on(s.bonds()),
            Stabilizer::Plaquette(_) => PauliOp::z_on(s.bonds()),
        }
    }

    pub fn with_phase(mut self, phase: u8) -> PauliOp {
        self.phase = (self.phase + phase) % 4;
        self
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_empty() && self.z.is_empty() && self.phase == 0
    }

    /// True when the masks are empty, whatever the phase.
    pub fn is_scalar(&self) -> bool {
        self.x.is_empty() && self.z.is_empty()
    }

    pub fn support(&self) -> BTreeSet<Bond> {
        self.x.union(&self.z).copied().collect()
    }

    pub fn weight(&self) -> usize {
        self.x.len() + self.z.len() - overlap(&self.x, &self.z)
    }

    /// Product `self · rhs`.
    pub fn mul(&self, rhs: &PauliOp) -> PauliOp {
        let mut out = self.clone();
        out.mul_assign_right(rhs);
        out
    }

    /// `self ← self · rhs`.
    pub fn mul_assign_right(&mut self, rhs: &PauliOp) {
        // Moving Z-parts of self past X-parts of rhs costs a sign each.
        let swaps = overlap(&self.z, &rhs.x) as u8;
        self.phase = (self.phase + rhs.phase + 2 * (swaps % 2)) % 4;
        sym_diff_into(&mut self.x, &rhs.x);
        sym_diff_into(&mut self.z, &rhs.z);
    }

    pub fn commutation_sign(&self, other: &PauliOp) -> Sign {
        let n = overlap(&self.x, &other.z) + overlap(&self.z, &other.x);
        Sign::from_parity(n % 2 == 1)
    }

    pub fn commutes_with(&self, other: &PauliOp) -> bool {
        self.commutation_sign(other) == Sign::Plus
    }

    pub fn adjoint(&self) -> PauliOp {
        let y = (overlap(&self.x, &self.z) % 2) as u8;
        PauliOp {
            x: self.x.clone(),
            z: self.z.clone(),
            phase: (8 - self.phase - 2 * y) % 4,
        }
    }

    pub fn is_hermitian(&self) -> bool {
        (self.phase as usize) % 2 == overlap(&self.x, &self.z) % 2
    }

    /// `P·P = I`.
    pub fn is_involution(&self) -> bool {
        (2 * self.phase as usize + 2 * overlap(&self.x, &self.z)) % 4 == 0
    }

    pub fn translate_j(&self, n: i32) -> PauliOp {
        PauliOp {
            x: self.x.iter().map(|b| b.translate_j(n)).collect(),
            z: self.z.iter().map(|b| b.translate_j(n)).collect(),
            phase: self.phase,
        }
    }

    pub fn parse(text: &str) -> Result<PauliOp> {
        let mut cur = Cursor::new(text);
        let mut phase = 0u8;
        for (tok, k) in [("+1", 0u8), ("-1", 2), ("+i", 1), ("-i", 3)] {
            if cur.eat(tok) {
                phase = k;
                break;
            }
        }
        let mut out = PauliOp::identity().with_phase(phase);
        while !cur.at_end() {
            let term = match cur.peek() {
                Some(c @ ('X' | 'Y' | 'Z')) => c,
                _ => return cur.err("expected a term `X@bond`, `Y@bond` or `Z@bond`"),
            };
            cur.eat(&term.to_string());
            cur.expect("@")?;
            let b = parse_bond(&mut cur)?;
            let op = match term {
                'X' => PauliOp::x_on([b]),
                'Y' => PauliOp::y_at(b),
                _ => PauliOp::z_on([b]),
            };
            out.mul_assign_right(&op);
        }
        Ok(out)
    }
}

impl fmt::Display for PauliOp {
    /// Canonical text: phase token (omitted when `+1` unless the operator is
    /// the identity), then terms in bond order, `Y` for bonds in both masks.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let support = self.support();
        let ys = overlap(&self.x, &self.z) as u8;
        let k = (self.phase + 4 - ys % 4) % 4;
        let mut parts: Vec<String> = Vec::new();
        if k != 0 || support.is_empty() {
            parts.push(["+1", "+i", "-1", "-i"][k as usize].to_string());
        }
        for b in &support {
            let c = match (self.x.contains(b), self.z.contains(b)) {
                (true, true) => 'Y',
                (true, false) => 'X',
                _ => 'Z',
            };
            parts.push(format!("{c}@{b}"));
        }
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for PauliOp {
    type Err = Error;
    fn from_str(s: &str) -> Result<PauliOp> {
        PauliOp::parse(s)
    }
}

/// Product of a sequence, left to right.
pub fn product<'a>(ops: impl IntoIterator<Item = &'a PauliOp>) -> PauliOp {
    let mut acc = PauliOp::identity();
    for p in ops {
        acc.mul_assign_right(p);
    }
    acc
}
