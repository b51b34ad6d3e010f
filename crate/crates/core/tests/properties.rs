mod common;

use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sublattice_core::normal_forms::{det, hnf_reduce, invariant_chain, is_unimodular, snf_reduce};
use sublattice_core::oracle::{oracle_equal, oracle_snf, sufficient_radius, PointBox};
use sublattice_core::{IntMatrix, Sublattice};

use common::random_unimodular;

fn nonsingular(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim)
        .prop_flat_map(move |n| proptest::collection::vec(-bound..=bound, n * n))
        .prop_filter_map("singular", |flat| {
            let n = (flat.len() as f64).sqrt() as usize;
            let rows: Vec<Vec<i64>> = flat.chunks(n).map(|r| r.to_vec()).collect();
            let m = IntMatrix::from_i64_rows(&rows).ok()?;
            (det(&m) != BigInt::from(0)).then_some(m)
        })
}

fn unimodular_for(a: &IntMatrix, seed: u64) -> IntMatrix {
    random_unimodular(&mut ChaCha8Rng::seed_from_u64(seed), a.dim(), 10)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hnf_is_idempotent(a in nonsingular(4, 10)) {
        let h = hnf_reduce(&a).unwrap();
        prop_assert_eq!(hnf_reduce(h.matrix()).unwrap(), h);
    }

    #[test]
    fn hnf_ignores_change_of_basis(a in nonsingular(4, 10), seed in any::<u64>()) {
        let w = unimodular_for(&a, seed);
        prop_assert!(is_unimodular(&w));
        prop_assert_eq!(hnf_reduce(&w.mul(&a).unwrap()).unwrap(), hnf_reduce(&a).unwrap());
    }

    #[test]
    fn reductions_preserve_abs_det(a in nonsingular(4, 10)) {
        let d = det(&a).abs();
        let h = hnf_reduce(&a).unwrap();
        prop_assert_eq!(BigInt::from(h.index()), d.clone());
        let s = snf_reduce(&a).unwrap();
        prop_assert_eq!(BigInt::from(s.chain.product()), d);
    }

    #[test]
    fn snf_witnesses_multiply_back(a in nonsingular(4, 10)) {
        let s = snf_reduce(&a).unwrap();
        prop_assert!(is_unimodular(&s.left));
        prop_assert!(is_unimodular(&s.right));
        prop_assert_eq!(s.left.mul(&a).unwrap().mul(&s.right).unwrap(), s.diagonal_matrix());
        prop_assert_eq!(invariant_chain(&a).unwrap(), s.chain);
    }

    #[test]
    fn snf_chain_is_two_sided_invariant(
        a in nonsingular(4, 10),
        s1 in any::<u64>(),
        s2 in any::<u64>(),
    ) {
        let twisted = unimodular_for(&a, s1)
            .mul(&a).unwrap()
            .mul(&unimodular_for(&a, s2)).unwrap();
        prop_assert_eq!(invariant_chain(&twisted).unwrap(), invariant_chain(&a).unwrap());
    }

    #[test]
    fn snf_matches_determinantal_divisors(a in nonsingular(3, 5)) {
        prop_assert_eq!(snf_reduce(&a).unwrap().chain, oracle_snf(&a).unwrap());
    }

    #[test]
    fn equality_matches_point_sets(a in nonsingular(2, 4), seed in any::<u64>(), perturb in any::<bool>()) {
        let mut b = unimodular_for(&a, seed).mul(&a).unwrap();
        if perturb {
            let v = b.get(0, 0) + 1;
            b.set(0, 0, v);
        }
        prop_assume!(det(&b) != BigInt::from(0));
        let la = Sublattice::from_rows(&a).unwrap();
        let lb = Sublattice::from_rows(&b).unwrap();
        let bx = PointBox::new(a.dim(), sufficient_radius(&a, &b)).unwrap();
        prop_assert_eq!(la.equals(&lb).unwrap(), oracle_equal(&a, &b, bx).unwrap());
    }

    #[test]
    fn change_of_basis_gives_same_sublattice(a in nonsingular(4, 10), seed in any::<u64>()) {
        let la = Sublattice::from_rows(&a).unwrap();
        let lb = Sublattice::from_rows(&unimodular_for(&a, seed).mul(&a).unwrap()).unwrap();
        prop_assert!(la.equals(&lb).unwrap());
        prop_assert!(la.equivalent(&lb).unwrap());
    }

    #[test]
    fn equivalence_has_verified_witness(a in nonsingular(3, 6), seed in any::<u64>()) {
        // right-multiplying by a unimodular map gives an equivalent sublattice
        let image = a.mul(&unimodular_for(&a, seed)).unwrap();
        let la = Sublattice::from_rows(&a).unwrap();
        let lb = Sublattice::from_rows(&image).unwrap();
        prop_assert!(la.equivalent(&lb).unwrap());
        prop_assert_eq!(la.index(), lb.index());
        let w = la.equivalence_witness(&lb).unwrap().unwrap();
        prop_assert!(is_unimodular(&w));
        prop_assert_eq!(
            hnf_reduce(&la.canonical().matrix().mul(&w).unwrap()).unwrap(),
            lb.canonical().clone()
        );
    }

    #[test]
    fn relations_are_consistent(
        a in nonsingular(2, 3),
        b in nonsingular(2, 3),
        c in nonsingular(2, 3),
    ) {
        prop_assume!(a.dim() == b.dim() && b.dim() == c.dim());
        let (la, lb, lc) = (
            Sublattice::from_rows(&a).unwrap(),
            Sublattice::from_rows(&b).unwrap(),
            Sublattice::from_rows(&c).unwrap(),
        );
        prop_assert!(la.equals(&la).unwrap());
        prop_assert_eq!(la.equals(&lb).unwrap(), lb.equals(&la).unwrap());
        prop_assert_eq!(la.equivalent(&lb).unwrap(), lb.equivalent(&la).unwrap());
        if la.equals(&lb).unwrap() {
            prop_assert!(la.equivalent(&lb).unwrap());
        }
        if la.equivalent(&lb).unwrap() && lb.equivalent(&lc).unwrap() {
            prop_assert!(la.equivalent(&lc).unwrap());
        }
        if la.equivalent(&lb).unwrap() {
            prop_assert_eq!(la.index(), lb.index());
            prop_assert!(la.equivalence_witness(&lb).unwrap().is_some());
        } else {
            prop_assert!(la.equivalence_witness(&lb).unwrap().is_none());
        }
    }

    #[test]
    fn text_format_round_trips(a in nonsingular(4, 1000)) {
        prop_assert_eq!(a.to_string().parse::<IntMatrix>().unwrap(), a);
    }
}

#[test]
fn snf_oracle_exhaustive_small_entries() {
    // every 2x2 matrix with entries in [-5, 5]
    let range = -5i64..=5;
    let mut checked = 0;
    for a in range.clone() {
        for b in range.clone() {
            for c in range.clone() {
                for d in range.clone() {
                    if a * d - b * c == 0 {
                        continue;
                    }
                    let m = IntMatrix::from_i64_rows(&[[a, b], [c, d]]).unwrap();
                    assert_eq!(snf_reduce(&m).unwrap().chain, oracle_snf(&m).unwrap(), "{m}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 10_000);
}
