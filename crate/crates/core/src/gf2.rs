//! Dense GF(2) vectors and an incremental elimination basis that remembers
//! which inserted generators make up each basis row.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitVec {
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> BitVec {
        BitVec {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn set(&mut self, k: usize) {
        self.words[k / 64] |= 1 << (k % 64);
    }

    pub fn flip(&mut self, k: usize) {
        self.words[k / 64] ^= 1 << (k % 64);
    }

    pub fn get(&self, k: usize) -> bool {
        self.words[k / 64] >> (k % 64) & 1 == 1
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(k, w)| 64 * k + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| 64 * k + b)
        })
    }
}

/// Row-echelon basis over GF(2). Each row carries the set of inserted
/// generators whose sum it is, so membership queries return a certificate.
#[derive(Debug, Clone)]
pub struct XorBasis {
    len: usize,
    generators: usize,
    rows: Vec<(usize, BitVec, BitVec)>,
}

impl XorBasis {
    pub fn new(len: usize, generators: usize) -> XorBasis {
        XorBasis {
            len,
            generators,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut BitVec, combo: &mut BitVec) {
        for (pivot, row, c) in &self.rows {
            if v.get(*pivot) {
                v.xor_assign(row);
                combo.xor_assign(c);
            }
        }
    }

    /// Adds generator number `index`; returns false if it was dependent.
    pub fn insert(&mut self, mut v: BitVec, index: usize) -> bool {
        debug_assert!(index < self.generators);
        let mut combo = BitVec::zeros(self.generators);
        combo.set(index);
        self.reduce(&mut v, &mut combo);
        match v.first_one() {
            Some(p) => {
                self.rows.push((p, v, combo));
                true
            }
            None => false,
        }
    }

    /// Generator subset summing to `v`, if `v` is in the span.
    pub fn solve(&self, v: &BitVec) -> Option<BitVec> {
        let mut v = v.clone();
        let mut combo = BitVec::zeros(self.generators);
        self.reduce(&mut v, &mut combo);
        v.is_zero().then_some(combo)
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.solve(v).is_some()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn from_bits(bits: &[u8]) -> BitVec {
        let mut v = BitVec::zeros(bits.len());
        for (k, b) in bits.iter().enumerate() {
            if *b == 1 {
                v.set(k);
            }
        }
        v
    }

    #[test]
    fn dependent_rows_are_rejected() {
        let mut basis = XorBasis::new(3, 3);
        assert!(basis.insert(from_bits(&[1, 1, 0]), 0));
        assert!(basis.insert(from_bits(&[0, 1, 1]), 1));
        assert!(!basis.insert(from_bits(&[1, 0, 1]), 2));
        assert_eq!(basis.rank(), 2);
        let combo = basis.solve(&from_bits(&[1, 0, 1])).unwrap();
        assert_eq!(combo.ones().collect::<Vec<_>>(), vec![0, 1]);
        assert!(!basis.contains(&from_bits(&[1, 0, 0])));
    }

    proptest! {
        /// Solutions reproduce the target, checked by brute force over subsets.
        #[test]
        fn solve_matches_brute_force(rows in proptest::collection::vec(proptest::collection::vec(0..2u8, 7), 1..6),
                                     target in proptest::collection::vec(0..2u8, 7)) {
            let mut basis = XorBasis::new(7, rows.len());
            for (k, r) in rows.iter().enumerate() {
                basis.insert(from_bits(r), k);
            }
            let t = from_bits(&target);
            let brute = (0..1u32 << rows.len()).any(|mask| {
                let mut acc = BitVec::zeros(7);
                for (k, r) in rows.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        acc.xor_assign(&from_bits(r));
                    }
                }
                acc == t
            });
            match basis.solve(&t) {
                Some(combo) => {
                    prop_assert!(brute);
                    let mut acc = BitVec::zeros(7);
                    for k in combo.ones() {
                        acc.xor_assign(&from_bits(&rows[k]));
                    }
                    prop_assert_eq!(acc, t);
                }
                None => prop_assert!(!brute),
            }
        }
    }
}
