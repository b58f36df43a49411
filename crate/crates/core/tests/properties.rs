use proptest::prelude::*;
use toric_boundary::duality::{canonical_factorization, haag_cones};
use toric_boundary::groundstate::{eval_ground, eval_ground_gf2, MarginPolicy};
use toric_boundary::lattice::Window;
use toric_boundary::pauli::PauliOp;
use toric_boundary::sampling;
use toric_boundary::sectors::{apply_auto, canonical_pair};
use toric_boundary::strings::Kind;

fn monomial(seed: u64, w: &Window, max: usize) -> PauliOp {
    sampling::sparse_monomial(&mut sampling::rng(seed), &w.bonds(), max)
}

fn local() -> Window {
    Window::new(5, -2, 5).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn stabilizers_do_not_change_values(seed in any::<u64>(), k in 0usize..64) {
        let w = local();
        let p = monomial(seed, &w, 8);
        let stabs = w.stabilizers_inside();
        let s = PauliOp::stabilizer(&stabs[k % stabs.len()]);
        prop_assert_eq!(eval_ground(&s.mul(&p)).unwrap(), eval_ground(&p).unwrap());
    }

    #[test]
    fn adjoint_conjugates(seed in any::<u64>()) {
        let p = monomial(seed, &local(), 10).mul(&sampling::stabilizer_product(&mut sampling::rng(seed ^ 7), &local()));
        prop_assert_eq!(eval_ground(&p.adjoint()).unwrap(), eval_ground(&p).unwrap().conj());
    }

    #[test]
    fn sweep_matches_gf2(seed in any::<u64>()) {
        let p = monomial(seed, &local(), 12).mul(&sampling::stabilizer_product(&mut sampling::rng(seed), &local()));
        prop_assert_eq!(eval_ground(&p).unwrap(), eval_ground_gf2(&p, &MarginPolicy::default()));
    }

    #[test]
    fn commutation_is_symmetric(a in any::<u64>(), b in any::<u64>()) {
        let (p, q) = (monomial(a, &local(), 10), monomial(b, &local(), 10));
        prop_assert_eq!(p.commutation_sign(&q), q.commutation_sign(&p));
        prop_assert_eq!(p.mul(&q), q.mul(&p).with_phase(p.commutation_sign(&q).phase()));
    }

    #[test]
    fn sectors_are_homomorphisms(a in any::<u64>(), b in any::<u64>(), k in 0usize..3) {
        let kind = [Kind::X, Kind::Y, Kind::Z][k];
        let (s, _) = canonical_pair(kind).unwrap();
        let (p, q) = (monomial(a, &local(), 10), monomial(b, &local(), 10));
        prop_assert_eq!(apply_auto(&s, &p.mul(&q)), apply_auto(&s, &p).mul(&apply_auto(&s, &q)));
    }

    #[test]
    fn factorization_certificates(seed in any::<u64>(), k in 0usize..2) {
        let c = haag_cones()[k];
        let inner = Window::new(3, -1, 4).unwrap();
        let p = monomial(seed, &inner, 12);
        let f = canonical_factorization(&p, &c, &inner.grow(3)).unwrap();
        let v = eval_ground(&p.adjoint().mul(&f.inside).mul(&f.outside)).unwrap();
        prop_assert!(matches!(v.as_real(), Some(1 | -1)));
    }
}
