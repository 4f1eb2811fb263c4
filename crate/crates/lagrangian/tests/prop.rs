//! Property tests for the polynomial evaluation.

use proptest::prelude::*;
use shatter_core::Budget;
use shatter_lagrangian::{is_edge, lagrangian_value, WeightVector};

fn random_support(k: u32) -> impl Strategy<Value = Vec<(u64, f64)>> {
    proptest::collection::btree_map(0u64..(1 << k), 0.05f64..1.0, 2..=6).prop_map(|m| {
        let total: f64 = m.values().sum();
        m.into_iter().map(|(p, w)| (p, w / total)).collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// Summing over ordered tuples of i.i.d. draws gives d! times the
    /// subset value, because repeated columns never form an edge.
    #[test]
    fn ordered_tuple_identity(support in random_support(4)) {
        let k = 4u32;
        let d = 2usize;
        let w = WeightVector::new(support.clone()).unwrap();
        let subset = lagrangian_value(&w, k, d, &Budget::default()).unwrap();
        let mut ordered = 0.0f64;
        for a in &support {
            for b in &support {
                if is_edge(&[a.0, b.0], k) {
                    ordered += a.1 * b.1;
                }
            }
        }
        prop_assert!((ordered - 2.0 * subset).abs() < 1e-12);
    }

    /// Simultaneous row-bit permutation of the support leaves the value
    /// unchanged.
    #[test]
    fn value_respects_row_permutations(support in random_support(4), seed in 0u64..500) {
        let k = 4u32;
        let d = 2usize;
        let mut perm: Vec<u32> = (0..k).collect();
        for i in (1..perm.len()).rev() {
            perm.swap(i, (seed as usize + 3 * i) % (i + 1));
        }
        let mapped: Vec<(u64, f64)> = support
            .iter()
            .map(|&(p, w)| {
                let mut q = 0u64;
                for (from, &to) in perm.iter().enumerate() {
                    if (p >> from) & 1 == 1 {
                        q |= 1 << to;
                    }
                }
                (q, w)
            })
            .collect();
        let a = lagrangian_value(&WeightVector::new(support).unwrap(), k, d, &Budget::default()).unwrap();
        let b = lagrangian_value(&WeightVector::new(mapped).unwrap(), k, d, &Budget::default()).unwrap();
        prop_assert!((a - b).abs() < 1e-12);
    }
}
