//! Symmetry invariants of the polynomial value and full optimizer runs at
//! the known extremal points.

use num_bigint::BigInt;
use num_rational::BigRational;
use shatter_bounds::Kind;
use shatter_core::Budget;
use shatter_lagrangian::{
    c_estimate, lagrangian_value, maximize_lagrangian, OptimizerConfig, VertexRestriction,
    WeightVector,
};

fn value(entries: Vec<(u64, f64)>, k: u32, d: usize) -> f64 {
    let w = WeightVector::new(entries).unwrap();
    lagrangian_value(&w, k, d, &Budget::default()).unwrap()
}

/// Apply a permutation of row indices to every pattern.
fn permute_rows(p: u64, k: u32, perm: &[u32]) -> u64 {
    let mut out = 0u64;
    for i in 0..k {
        if (p >> i) & 1 == 1 {
            out |= 1 << perm[i as usize];
        }
    }
    out
}

#[test]
fn value_invariant_under_row_permutation() {
    let entries = vec![(0b0011u64, 0.5), (0b0101, 0.3), (0b0110, 0.2)];
    let base = value(entries.clone(), 4, 2);
    for perm in [[1u32, 0, 2, 3], [3, 2, 1, 0], [2, 0, 3, 1]] {
        let mapped: Vec<(u64, f64)> = entries
            .iter()
            .map(|&(p, w)| (permute_rows(p, 4, &perm), w))
            .collect();
        let got = value(mapped, 4, 2);
        assert!((got - base).abs() < 1e-15, "perm {perm:?}");
    }
}

#[test]
fn value_invariant_under_global_complement() {
    let entries = vec![(0b0011u64, 0.5), (0b0101, 0.3), (0b0110, 0.2)];
    let base = value(entries.clone(), 4, 2);
    let full = 0b1111u64;
    let mapped: Vec<(u64, f64)> = entries.iter().map(|&(p, w)| (p ^ full, w)).collect();
    assert!((value(mapped, 4, 2) - base).abs() < 1e-15);
}

/// Complementing a single support pattern is the per-column symbol relabel;
/// it preserves the value after merging a collision.
#[test]
fn value_invariant_under_single_pattern_complement() {
    let entries = vec![(0b0011u64, 0.4), (0b0101, 0.35), (0b0110, 0.25)];
    let base = value(entries.clone(), 4, 2);
    // complement the first pattern: 0011 -> 1100, no collision
    let mut mapped = entries.clone();
    mapped[0].0 = !mapped[0].0 & 0b1111;
    assert!((value(mapped, 4, 2) - base).abs() < 1e-15);

    // now a colliding case: support contains both p and its complement
    let entries = vec![(0b0011u64, 0.3), (0b1100, 0.3), (0b0101, 0.4)];
    let base = value(entries.clone(), 4, 2);
    // complement 0011 into 1100 and merge the weights
    let merged = vec![(0b1100u64, 0.6), (0b0101, 0.4)];
    assert!((value(merged, 4, 2) - base).abs() < 1e-15);
}

#[test]
fn k8_d3_reaches_the_extremal_value_with_certificate() {
    let mut config = OptimizerConfig::new(23);
    config.restriction = VertexRestriction::BalancedOnly;
    config.round_denominator = Some(7);
    let res = maximize_lagrangian(8, 3, &config).unwrap();
    let four_over_49 = BigRational::new(BigInt::from(4), BigInt::from(49));
    assert!((res.value - 4.0 / 49.0).abs() < 1e-9, "value {}", res.value);
    let cert = res.rounded.as_ref().unwrap();
    assert_eq!(cert.value, four_over_49);
    assert_eq!(cert.denominator, 7);
    // regression guard: never exceed the proven optimum
    assert!(res.value <= 4.0 / 49.0 + 1e-6);
    // converged support: at most 2^d - 1 patterns, all balanced
    assert!(res.weights.entries().len() <= 7);
    for &(p, _) in res.weights.entries() {
        assert_eq!(p.count_ones(), 4, "pattern {p:#010b}");
    }
}

#[test]
fn c_estimate_k8_d3_is_exactly_24_over_49() {
    let mut config = OptimizerConfig::new(29);
    config.restriction = VertexRestriction::BalancedOnly;
    config.round_denominator = Some(7);
    let (bound, _) = c_estimate(8, 3, &config).unwrap();
    assert_eq!(bound.kind, Kind::Exact);
    assert_eq!(
        bound.value.rational().unwrap(),
        &BigRational::new(BigInt::from(24), BigInt::from(49))
    );
}

#[test]
fn k9_d3_search_reaches_the_embedded_bound() {
    let mut config = OptimizerConfig::new(31);
    config.restriction = VertexRestriction::BalancedOnly;
    config.restarts = 2;
    config.iterations = 200;
    let res = maximize_lagrangian(9, 3, &config).unwrap();
    assert!(
        res.value >= 4.0 / 49.0 - 1e-4,
        "best found {} below the embedded bound",
        res.value
    );
}
