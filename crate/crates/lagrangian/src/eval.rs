use num_rational::BigRational;
use num_traits::Zero;
use shatter_core::{binomial_u128, Budget, Error, Result};

use crate::optimize::WeightVector;

/// Do the given k-bit patterns, read as the columns of a `k x d` matrix,
/// contain every one of the `2^d` possible rows? Duplicated patterns can
/// never form an edge. Supports `d <= 6`.
pub fn is_edge(patterns: &[u64], k: u32) -> bool {
    let d = patterns.len();
    debug_assert!((1..=6).contains(&d), "edge tests support 1 <= d <= 6");
    let want = 1u64 << d;
    if (k as u64) < want {
        return false;
    }
    let full: u64 = if want == 64 { u64::MAX } else { (1u64 << want) - 1 };
    let mut seen = 0u64;
    for i in 0..k {
        let mut pat = 0usize;
        for (j, p) in patterns.iter().enumerate() {
            pat |= (((p >> i) & 1) as usize) << j;
        }
        seen |= 1u64 << pat;
        if seen == full {
            return true;
        }
    }
    false
}

/// The Lagrangian polynomial at a weight vector: the sum over shattered
/// `d`-subsets of the support of the product of their weights.
pub fn lagrangian_value(w: &WeightVector, k: u32, d: usize, budget: &Budget) -> Result<f64> {
    if d == 0 || d > 6 {
        return Err(Error::invalid("supported subset sizes are 1..=6"));
    }
    let s = w.entries().len();
    let subsets = binomial_u128(s as u64, d as u64);
    if subsets > budget.max_enumeration as u128 {
        return Err(Error::BudgetExceeded {
            what: format!("support-subset enumeration C({s},{d})"),
            required: subsets,
            limit: budget.max_enumeration,
        });
    }
    let entries = w.entries();
    let mut total = 0.0f64;
    let mut idx: Vec<usize> = (0..d).collect();
    let mut pats: Vec<u64> = vec![0; d];
    if d > s {
        return Ok(0.0);
    }
    loop {
        let mut prod = 1.0;
        for (slot, &i) in idx.iter().enumerate() {
            pats[slot] = entries[i].0;
            prod *= entries[i].1;
        }
        if is_edge(&pats, k) {
            total += prod;
        }
        // advance combination
        let mut pos = d;
        let mut advanced = false;
        while pos > 0 {
            pos -= 1;
            if idx[pos] < s - (d - pos) {
                idx[pos] += 1;
                for q in pos + 1..d {
                    idx[q] = idx[q - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            break;
        }
    }
    Ok(total)
}

/// Exact rational Lagrangian value over a rational-weighted support.
pub fn lagrangian_value_exact(entries: &[(u64, BigRational)], k: u32, d: usize) -> BigRational {
    let s = entries.len();
    let mut total = BigRational::zero();
    if d == 0 || d > s {
        return total;
    }
    let mut idx: Vec<usize> = (0..d).collect();
    let mut pats: Vec<u64> = vec![0; d];
    loop {
        for (slot, &i) in idx.iter().enumerate() {
            pats[slot] = entries[i].0;
        }
        if is_edge(&pats, k) {
            let mut prod = entries[idx[0]].1.clone();
            for &i in &idx[1..] {
                prod *= &entries[i].1;
            }
            total += prod;
        }
        let mut pos = d;
        let mut advanced = false;
        while pos > 0 {
            pos -= 1;
            if idx[pos] < s - (d - pos) {
                idx[pos] += 1;
                for q in pos + 1..d {
                    idx[q] = idx[q - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            break;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn edges_of_h21() {
        // vertices 01 and 10 are edges of H(2,1); 00 and 11 are not
        assert!(is_edge(&[0b01], 2));
        assert!(is_edge(&[0b10], 2));
        assert!(!is_edge(&[0b00], 2));
        assert!(!is_edge(&[0b11], 2));
    }

    #[test]
    fn duplicate_patterns_never_edges() {
        assert!(!is_edge(&[0b0101, 0b0101], 4));
    }

    #[test]
    fn three_dual_columns_value() {
        let w = WeightVector::new(vec![
            (0b0011, 1.0 / 3.0),
            (0b0101, 1.0 / 3.0),
            (0b0110, 1.0 / 3.0),
        ])
        .unwrap();
        let v = lagrangian_value(&w, 4, 2, &Budget::default()).unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn h21_uniform_mixed_patterns_score_one() {
        let w = WeightVector::new(vec![(0b01, 0.5), (0b10, 0.5)]).unwrap();
        let v = lagrangian_value(&w, 2, 1, &Budget::default()).unwrap();
        assert_eq!(v, 1.0);
    }

    #[test]
    fn single_pattern_scores_zero_for_pairs() {
        let w = WeightVector::new(vec![(0b0110, 1.0)]).unwrap();
        let v = lagrangian_value(&w, 4, 2, &Budget::default()).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn exact_value_of_the_dual_support() {
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        let entries = vec![
            (0b0011u64, third.clone()),
            (0b0101, third.clone()),
            (0b0110, third.clone()),
        ];
        let v = lagrangian_value_exact(&entries, 4, 2);
        assert_eq!(v, BigRational::new(BigInt::from(1), BigInt::from(3)));
    }

    /// The ordered-tuple reading must agree: summing over ordered d-tuples
    /// of i.i.d. draws gives d! times the subset sum because repeats are
    /// never edges.
    #[test]
    fn ordered_tuple_identity() {
        let w = WeightVector::new(vec![
            (0b0011, 0.5),
            (0b0101, 0.25),
            (0b0110, 0.25),
        ])
        .unwrap();
        let k = 4u32;
        let d = 2usize;
        let subset_sum = lagrangian_value(&w, k, d, &Budget::default()).unwrap();
        let entries = w.entries();
        let mut ordered = 0.0;
        for a in entries {
            for b in entries {
                if is_edge(&[a.0, b.0], k) {
                    ordered += a.1 * b.1;
                }
            }
        }
        assert!((ordered - 2.0 * subset_sum).abs() < 1e-15);
    }
}
