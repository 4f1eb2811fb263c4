use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::combin::{binomial, Combinations};
use crate::{AlphabetMatrix, BitColumns, Error, Result};

/// Upper limit on the pattern-table size `v^d` used by a single test.
const MAX_PATTERNS: u128 = 1 << 24;

/// Exact census of shattered column `d`-subsets of a matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShatterReport {
    pub d: usize,
    /// C(n, d), the number of column subsets inspected.
    pub total: BigUint,
    pub shattered: BigUint,
    /// shattered * d! / n^d, the density compared against Lagrangian values.
    pub density: BigRational,
}

/// True iff the `k x d` submatrix on the given distinct columns contains all
/// `v^d` possible rows.
pub fn is_shattered(m: &AlphabetMatrix, cols: &[usize]) -> Result<bool> {
    let d = cols.len();
    if d == 0 || d > m.cols() {
        return Err(Error::invalid(format!(
            "need between 1 and {} column indices, got {d}",
            m.cols()
        )));
    }
    let mut seen = cols.to_vec();
    seen.sort_unstable();
    if seen.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::invalid("column indices must be distinct"));
    }
    if let Some(&bad) = seen.iter().find(|&&j| j >= m.cols()) {
        return Err(Error::invalid(format!("column index {bad} out of range")));
    }
    patterns_guard(m.v(), d)?;
    if m.v() == 2 && d <= 16 {
        let bits = BitColumns::from_matrix(m)?;
        let col_words: Vec<&[u64]> = cols.iter().map(|&j| bits.column_words(j)).collect();
        Ok(subset_shattered_bits(&col_words, m.rows(), d))
    } else {
        Ok(subset_shattered_generic(m, cols))
    }
}

/// Count shattered `d`-subsets over all C(n, d) column subsets.
///
/// Deterministic for any rayon worker count: the per-prefix partial counts
/// are exact integers summed associatively.
pub fn count_shattered(m: &AlphabetMatrix, d: usize) -> Result<ShatterReport> {
    if d == 0 || d > m.cols() {
        return Err(Error::invalid(format!(
            "subset size d={d} must be in [1, {}]",
            m.cols()
        )));
    }
    patterns_guard(m.v(), d)?;
    let n = m.cols();
    let k = m.rows();

    let shattered: u64 = if m.v() == 2 && d <= 16 {
        let bits = BitColumns::from_matrix(m)?;
        (0..=n - d)
            .into_par_iter()
            .map(|first| {
                let mut cnt = 0u64;
                let mut combos = Combinations::new(n - first - 1, d - 1);
                let mut col_words: Vec<&[u64]> = Vec::with_capacity(d);
                while let Some(rest) = combos.next_slice() {
                    col_words.clear();
                    col_words.push(bits.column_words(first));
                    for &r in rest {
                        col_words.push(bits.column_words(first + 1 + r));
                    }
                    if subset_shattered_bits(&col_words, k, d) {
                        cnt += 1;
                    }
                }
                cnt
            })
            .sum()
    } else {
        (0..=n - d)
            .into_par_iter()
            .map(|first| {
                let mut cnt = 0u64;
                let mut combos = Combinations::new(n - first - 1, d - 1);
                let mut cols: Vec<usize> = Vec::with_capacity(d);
                while let Some(rest) = combos.next_slice() {
                    cols.clear();
                    cols.push(first);
                    cols.extend(rest.iter().map(|&r| first + 1 + r));
                    if subset_shattered_generic(m, &cols) {
                        cnt += 1;
                    }
                }
                cnt
            })
            .sum()
    };

    Ok(report(d, n, shattered))
}

/// Reference counter that always walks the generic v-ary pattern table,
/// never the packed binary fast path. Kept public so the two routes can be
/// cross-checked against each other.
pub fn count_shattered_generic(m: &AlphabetMatrix, d: usize) -> Result<ShatterReport> {
    if d == 0 || d > m.cols() {
        return Err(Error::invalid(format!(
            "subset size d={d} must be in [1, {}]",
            m.cols()
        )));
    }
    patterns_guard(m.v(), d)?;
    let n = m.cols();
    let mut shattered = 0u64;
    let mut combos = Combinations::new(n, d);
    while let Some(cols) = combos.next_slice() {
        if subset_shattered_generic(m, cols) {
            shattered += 1;
        }
    }
    Ok(report(d, n, shattered))
}

pub(crate) fn report(d: usize, n: usize, shattered: u64) -> ShatterReport {
    let total = binomial(n as u64, d as u64);
    let mut dfact = BigUint::one();
    for i in 2..=d {
        dfact *= BigUint::from(i);
    }
    let density = BigRational::new(
        (BigUint::from(shattered) * dfact).into(),
        BigUint::from(n as u64).pow(d as u32).into(),
    );
    ShatterReport {
        d,
        total,
        shattered: BigUint::from(shattered),
        density,
    }
}

fn patterns_guard(v: u32, d: usize) -> Result<()> {
    let patterns = (v as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if patterns > MAX_PATTERNS {
        return Err(Error::BudgetExceeded {
            what: format!("pattern table for v={v}, d={d}"),
            required: patterns,
            limit: MAX_PATTERNS as u64,
        });
    }
    Ok(())
}

/// Binary fast path: mark row patterns in a 2^d bit table, early exit once
/// every pattern has been seen.
#[inline]
pub(crate) fn subset_shattered_bits(cols: &[&[u64]], k: usize, d: usize) -> bool {
    debug_assert!(d <= 16);
    if k < (1usize << d) {
        return false;
    }
    let table_bits = 1usize << d;
    if table_bits <= 64 {
        let full: u64 = if table_bits == 64 {
            u64::MAX
        } else {
            (1u64 << table_bits) - 1
        };
        let mut seen = 0u64;
        for i in 0..k {
            let (w, b) = (i / 64, i % 64);
            let mut pat = 0usize;
            for (jj, col) in cols.iter().enumerate() {
                pat |= (((col[w] >> b) & 1) as usize) << jj;
            }
            seen |= 1u64 << pat;
            if seen == full {
                return true;
            }
        }
        false
    } else {
        let mut seen = vec![0u64; table_bits / 64];
        let mut remaining = table_bits;
        for i in 0..k {
            let (w, b) = (i / 64, i % 64);
            let mut pat = 0usize;
            for (jj, col) in cols.iter().enumerate() {
                pat |= (((col[w] >> b) & 1) as usize) << jj;
            }
            let slot = &mut seen[pat / 64];
            let mask = 1u64 << (pat % 64);
            if *slot & mask == 0 {
                *slot |= mask;
                remaining -= 1;
                if remaining == 0 {
                    return true;
                }
            }
        }
        false
    }
}

/// Generic v-ary path over a boolean pattern table.
pub(crate) fn subset_shattered_generic(m: &AlphabetMatrix, cols: &[usize]) -> bool {
    let v = m.v() as usize;
    let d = cols.len();
    let patterns = v.pow(d as u32);
    if m.rows() < patterns {
        return false;
    }
    let mut seen = vec![false; patterns];
    let mut remaining = patterns;
    let selected: Vec<&[u8]> = cols.iter().map(|&j| m.column(j)).collect();
    for i in 0..m.rows() {
        let mut pat = 0usize;
        for col in &selected {
            pat = pat * v + col[i] as usize;
        }
        if !seen[pat] {
            seen[pat] = true;
            remaining -= 1;
            if remaining == 0 {
                return true;
            }
        }
    }
    false
}
