//! Properties that must survive an arbitrary change of basis.

use std::sync::Arc;

use fdalg::algebra::{Algebra, SplitPolicy, WedderburnOutcome};
use fdalg::bimodule::{Bimodule, Factorization, Indecomposability};
use fdalg::complex::{
    bar_complex, factorization_resolution, periodic_dual_resolution, presentation_cokernel, Realization,
    DEFAULT_SIZE_CAP,
};
use fdalg::format::{parse_algebra, write_algebra};
use fdalg::zoo;
use proptest::prelude::*;

fn fixtures() -> Vec<(&'static str, Algebra)> {
    vec![
        ("rationals", zoo::rationals()),
        ("dual", zoo::dual_numbers()),
        ("ut2", zoo::upper_triangular(2)),
        ("m2", zoo::matrix_algebra(2)),
        (
            "q x dual x m2",
            zoo::direct_product(&[zoo::rationals(), zoo::dual_numbers(), zoo::matrix_algebra(2)]),
        ),
        ("triplet2", zoo::triplet_zhu(2)),
        ("sf1", zoo::sf_zhu(1)),
        ("exterior4", zoo::even_exterior(4)),
    ]
}

fn fixture() -> impl Strategy<Value = (&'static str, Algebra)> {
    (0..fixtures().len()).prop_map(|i| fixtures().swap_remove(i))
}

fn blocks(a: &Algebra) -> Vec<usize> {
    let dec = a.central_idempotents(&SplitPolicy::default());
    dec.verify(a).unwrap();
    dec.dimension_multiset()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn block_multiset_is_basis_independent(seed in any::<u64>()) {
        let a = zoo::direct_product(&[zoo::rationals(), zoo::dual_numbers(), zoo::matrix_algebra(2)]);
        prop_assert_eq!(blocks(&zoo::scramble(&a, seed)), vec![1, 2, 4]);
    }

    #[test]
    fn triplet_blocks_are_basis_independent(seed in any::<u64>()) {
        prop_assert_eq!(blocks(&zoo::scramble(&zoo::triplet_zhu(2), seed)), vec![1, 2, 4, 4]);
    }

    #[test]
    fn sf_blocks_are_basis_independent(seed in any::<u64>()) {
        prop_assert_eq!(blocks(&zoo::scramble(&zoo::sf_zhu(1), seed)), vec![1, 2, 4, 4]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn structure_invariants((name, a) in fixture(), seed in any::<u64>()) {
        let s = zoo::scramble(&a, seed);
        prop_assert_eq!(s.dim(), a.dim(), "{}", name);
        prop_assert_eq!(s.radical().dim(), a.radical().dim(), "{}", name);
        prop_assert_eq!(s.center().dim(), a.center().dim(), "{}", name);
        prop_assert_eq!(s.center_mod_radical_dim(), a.center_mod_radical_dim(), "{}", name);
        prop_assert_eq!(s.is_commutative(), a.is_commutative(), "{}", name);
        prop_assert_eq!(blocks(&s), blocks(&a), "{}", name);
    }

    #[test]
    fn algebra_files_round_trip_bit_exactly((_name, a) in fixture(), seed in any::<u64>()) {
        let s = zoo::scramble(&a, seed);
        let text = write_algebra(&s);
        let back = parse_algebra(&text).unwrap();
        prop_assert_eq!(write_algebra(&back), text);
        prop_assert_eq!(back, s);
    }

    #[test]
    fn blockwise_cokernels_sum_to_the_dimension((name, a) in fixture(), seed in any::<u64>()) {
        let s = zoo::scramble(&a, seed);
        let p = SplitPolicy::default();
        let dec = s.central_idempotents(&p);
        let r = factorization_resolution(&s, &dec, 2, &p, DEFAULT_SIZE_CAP).unwrap();
        let mut total = 0;
        for b in &r.blocks {
            prop_assert!(b.complex.verify_exactness().all_exact(), "{}", name);
            total += presentation_cokernel(&b.complex, &Realization::identity(&b.complex)).unwrap().quotient_dim;
        }
        prop_assert_eq!(total, s.dim(), "{}", name);
    }

    #[test]
    fn block_regular_bimodules_are_indecomposable((name, a) in fixture(), seed in any::<u64>()) {
        let s = zoo::scramble(&a, seed);
        let p = SplitPolicy::default();
        for b in s.central_idempotents(&p).blocks {
            let v = Bimodule::regular(Arc::new(b.algebra)).is_indecomposable(&p);
            prop_assert_eq!(v, Indecomposability::ProvenYes, "{}", name);
        }
        if s.central_idempotents(&p).len() > 1 {
            let whole = Bimodule::regular(Arc::new(s.clone())).is_indecomposable(&p);
            prop_assert!(matches!(whole, Indecomposability::ProvenNo { .. }), "{}", name);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn scrambled_matrix_algebras_split(n in 1usize..4, seed in any::<u64>()) {
        let a = Arc::new(zoo::scramble(&zoo::matrix_algebra(n), seed));
        let p = SplitPolicy::default();
        match a.wedderburn_split(&p).unwrap() {
            WedderburnOutcome::Split(iso) => {
                prop_assert_eq!(iso.n, n);
                prop_assert!(iso.verify(&a));
            }
            WedderburnOutcome::NotSplit(r) => prop_assert!(false, "not split: {}", r),
        }
        let dec = a.central_idempotents(&p);
        match a.factorize_semisimple(&dec, &p).unwrap() {
            Factorization::Certificate(c) => {
                c.verify().unwrap();
                prop_assert_eq!(c.summand_dims(), vec![(n, n)]);
            }
            Factorization::Refused(r) => prop_assert!(false, "refused: {}", r),
        }
    }

    #[test]
    fn bar_complexes_of_small_algebras_are_exact(i in 0usize..4, seed in any::<u64>()) {
        let base = [
            zoo::rationals(),
            zoo::dual_numbers(),
            zoo::upper_triangular(2),
            zoo::direct_product(&[zoo::rationals(), zoo::rationals()]),
        ];
        let a = Arc::new(zoo::scramble(&base[i], seed));
        let (c, certs) = bar_complex(a, 3, DEFAULT_SIZE_CAP).unwrap();
        let ds = c.differentials();
        prop_assert!(c.augmentation().matrix().mul(ds[0].matrix()).is_zero());
        prop_assert!(ds[0].matrix().mul(ds[1].matrix()).is_zero());
        prop_assert!(c.verify_exactness().all_exact());
        for cert in &certs {
            prop_assert!(cert.verify().is_ok());
        }
    }

    #[test]
    fn periodic_resolution_in_any_basis(seed in any::<u64>(), length in 1usize..7) {
        let a = Arc::new(zoo::scramble(&zoo::dual_numbers(), seed));
        let eps = a.radical().basis_vectors().remove(0);
        let c = periodic_dual_resolution(a, &eps, length).unwrap();
        let cert = c.verify_exactness();
        prop_assert!(cert.all_exact());
        prop_assert_eq!(cert.records.len(), length);
        prop_assert!(c.is_two_periodic());
        prop_assert!(c.differentials().iter().all(|d| d.matrix().rank() == 2));
    }
}
