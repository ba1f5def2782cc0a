mod common;

use liess_core::cochain::{betti_numbers, CochainComplex};
use liess_core::specseq::{build_double_complex, total_cohomology, verify_theorems};
use liess_core::{Field, LieModule};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rational),
        Just(Field::prime(2).unwrap()),
        Just(Field::prime(3).unwrap()),
        Just(Field::prime(5).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn nilpotent_betti_numbers_are_palindromic(seed in any::<u64>(), f in field(), dim in 1usize..=5) {
        let g = common::random_nilpotent(f, dim, &mut ChaCha8Rng::seed_from_u64(seed));
        let b = betti_numbers(&LieModule::trivial(&g, 1));
        let rev: Vec<usize> = b.iter().rev().copied().collect();
        prop_assert_eq!(&b, &rev);
        prop_assert!(b[1] >= 1);
    }

    #[test]
    fn random_extensions_verify(seed in any::<u64>(), f in field()) {
        let r = common::random_extension(f, &mut ChaCha8Rng::seed_from_u64(seed));
        let report = verify_theorems(&r.extension).unwrap();
        prop_assert!(!report.any_failure(), "{}: {:?}", r.description, report.checks);
        prop_assert_eq!(report.length.length, report.length.length.max(2));
    }

    #[test]
    fn total_complex_matches_oracle(seed in any::<u64>(), f in field()) {
        let r = common::random_extension(f, &mut ChaCha8Rng::seed_from_u64(seed));
        let dc = build_double_complex(&r.extension).unwrap();
        let module = r.extension.g_module().unwrap();
        let oracle = betti_numbers(&module);
        let total = total_cohomology(&dc);
        prop_assert_eq!(&total[..oracle.len()], &oracle[..]);
        prop_assert!(total[oracle.len()..].iter().all(|&b| b == 0));
    }

    #[test]
    fn euler_characteristic_vanishes(seed in any::<u64>(), f in field()) {
        let r = common::random_extension(f, &mut ChaCha8Rng::seed_from_u64(seed));
        let module = r.extension.g_module().unwrap();
        let chi: i64 = betti_numbers(&module)
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        prop_assert_eq!(chi, 0);
        let ce = CochainComplex::new(&module).differentials;
        prop_assert!(ce.windows(2).all(|w| (&w[1] * &w[0]).is_zero()));
    }
}
