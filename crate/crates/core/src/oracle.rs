use rayon::prelude::*;

use crate::combin::{binomial_u128, multiset_count_u128, Combinations};
use crate::shatter::{subset_shattered_bits, subset_shattered_generic};
use crate::{AlphabetMatrix, Error, Result};

/// Explicit enumeration budget for the exact oracles; exceeding it is a
/// deterministic resource error rather than a silent truncation.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub max_enumeration: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_enumeration: 20_000_000,
        }
    }
}

impl Budget {
    pub fn new(max_enumeration: u64) -> Self {
        Budget { max_enumeration }
    }

    fn check(&self, what: &str, required: u128) -> Result<()> {
        if required > self.max_enumeration as u128 {
            return Err(Error::BudgetExceeded {
                what: what.to_string(),
                required,
                limit: self.max_enumeration,
            });
        }
        Ok(())
    }
}

/// Exact value of `f(n, k, d)` over alphabet `v`: the maximum number of
/// shattered `k x d` submatrices of any `k x n` matrix over `{0..v-1}`.
///
/// Two enumeration strategies are available and the cheaper one is chosen:
/// column multisets (the count only depends on the multiset of columns) or
/// distinct-row subsets of size `min(k, v^n)` (duplicate rows never change a
/// shattered count, and appending a row never decreases it).
pub fn brute_force_f(n: usize, k: usize, d: usize, v: u32, budget: &Budget) -> Result<u64> {
    if n == 0 || k == 0 || d == 0 {
        return Err(Error::invalid("n, k, d must all be positive"));
    }
    if v < 2 {
        return Err(Error::invalid("alphabet size must be at least 2"));
    }
    if d > n {
        return Ok(0);
    }
    let patterns_needed = (v as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if (k as u128) < patterns_needed {
        return Ok(0);
    }

    let row_kinds = (v as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    let cost_rows = if row_kinds <= u64::MAX as u128 {
        let size = (k as u128).min(row_kinds) as u64;
        binomial_u128(row_kinds as u64, size).max(row_kinds)
    } else {
        u128::MAX
    };
    let col_kinds = (v as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    let cost_cols = if col_kinds <= u64::MAX as u128 {
        multiset_count_u128(col_kinds as u64, n as u64).max(col_kinds)
    } else {
        u128::MAX
    };

    if cost_rows <= cost_cols {
        budget.check(
            &format!("row-subset enumeration for f({n},{k},{d}) over v={v}"),
            cost_rows,
        )?;
        brute_force_f_rows(n, k, d, v)
    } else {
        budget.check(
            &format!(
                "column-multiset enumeration for f({n},{k},{d}) over v={v} ({cost_cols} multisets)"
            ),
            cost_cols,
        )?;
        brute_force_f_cols(n, k, d, v)
    }
}

/// Enumerate families of `min(k, v^n)` distinct rows.
fn brute_force_f_rows(n: usize, k: usize, d: usize, v: u32) -> Result<u64> {
    let row_kinds = (v as u64).pow(n as u32);
    let size = (k as u64).min(row_kinds) as usize;
    let kinds = row_kinds as usize;

    let best = (0..=kinds - size)
        .into_par_iter()
        .map(|first| {
            let mut best = 0u64;
            let mut combos = Combinations::new(kinds - first - 1, size - 1);
            let mut rows: Vec<u64> = Vec::with_capacity(size);
            while let Some(rest) = combos.next_slice() {
                rows.clear();
                rows.push(first as u64);
                rows.extend(rest.iter().map(|&r| (first + 1 + r) as u64));
                let c = count_for_rows(&rows, n, d, v);
                best = best.max(c);
            }
            best
        })
        .max()
        .unwrap_or(0);
    Ok(best)
}

/// Count shattered column d-subsets for a matrix given as base-`v` row codes.
fn count_for_rows(rows: &[u64], n: usize, d: usize, v: u32) -> u64 {
    // materialize columns once, then scan subsets
    let k = rows.len();
    let vu = v as u64;
    let mut cols: Vec<Vec<u8>> = vec![vec![0u8; k]; n];
    for (i, &r) in rows.iter().enumerate() {
        let mut x = r;
        for col in cols.iter_mut() {
            col[i] = (x % vu) as u8;
            x /= vu;
        }
    }
    count_columns_seq(&cols, d, v)
}

/// Enumerate column multisets (non-decreasing pattern tuples).
fn brute_force_f_cols(n: usize, k: usize, d: usize, v: u32) -> Result<u64> {
    let col_kinds = (v as u64).pow(k as u32);
    let best = (0..col_kinds)
        .into_par_iter()
        .map(|first| {
            let mut best = 0u64;
            let mut tuple = vec![first; n];
            // enumerate non-decreasing tuples with fixed first element
            loop {
                let cols = materialize_columns(&tuple, k, v);
                best = best.max(count_columns_seq(&cols, d, v));
                if !next_nondecreasing(&mut tuple, col_kinds) {
                    break;
                }
            }
            best
        })
        .max()
        .unwrap_or(0);
    Ok(best)
}

/// Advance a non-decreasing tuple with fixed first element; false when done.
fn next_nondecreasing(tuple: &mut [u64], kinds: u64) -> bool {
    let n = tuple.len();
    let mut i = n;
    while i > 1 {
        i -= 1;
        if tuple[i] + 1 < kinds {
            tuple[i] += 1;
            for j in i + 1..n {
                tuple[j] = tuple[i];
            }
            return true;
        }
    }
    false
}

fn materialize_columns(patterns: &[u64], k: usize, v: u32) -> Vec<Vec<u8>> {
    let vu = v as u64;
    patterns
        .iter()
        .map(|&p| {
            let mut x = p;
            (0..k)
                .map(|_| {
                    let digit = (x % vu) as u8;
                    x /= vu;
                    digit
                })
                .collect()
        })
        .collect()
}

/// Sequential shattered-subset count over explicit columns.
fn count_columns_seq(cols: &[Vec<u8>], d: usize, v: u32) -> u64 {
    let n = cols.len();
    let k = cols[0].len();
    if d > n {
        return 0;
    }
    let mut cnt = 0u64;
    let mut combos = Combinations::new(n, d);
    if v == 2 && k <= 64 && d <= 16 {
        let words: Vec<[u64; 1]> = cols
            .iter()
            .map(|c| {
                let mut w = 0u64;
                for (i, &e) in c.iter().enumerate() {
                    w |= (e as u64) << i;
                }
                [w]
            })
            .collect();
        let mut sel: Vec<&[u64]> = Vec::with_capacity(d);
        while let Some(s) = combos.next_slice() {
            sel.clear();
            sel.extend(s.iter().map(|&j| &words[j][..]));
            if subset_shattered_bits(&sel, k, d) {
                cnt += 1;
            }
        }
        return cnt;
    }
    // generic path through a scratch matrix
    let mut entries = Vec::with_capacity(k * n);
    for c in cols {
        entries.extend_from_slice(c);
    }
    let m = AlphabetMatrix::new(v, k, n, entries).expect("columns were validated upstream");
    while let Some(s) = combos.next_slice() {
        if subset_shattered_generic(&m, s) {
            cnt += 1;
        }
    }
    cnt
}

/// Exact value of `g(n, k, d)`: the minimum number of shattered `d`-subsets
/// of `[n]` over families of exactly `k` distinct subsets.
pub fn brute_force_g(n: usize, k: usize, d: usize, budget: &Budget) -> Result<u64> {
    if n == 0 || k == 0 || d == 0 {
        return Err(Error::invalid("n, k, d must all be positive"));
    }
    if n > 20 {
        return Err(Error::invalid("ground sets beyond 20 elements unsupported"));
    }
    let subsets = 1u64 << n;
    if k as u64 > subsets {
        return Err(Error::invalid(format!(
            "a family of {k} distinct subsets of [{n}] does not exist"
        )));
    }
    if d > n {
        return Ok(0);
    }
    let cost = binomial_u128(subsets, k as u64);
    budget.check(&format!("family enumeration for g({n},{k},{d})"), cost)?;

    let d_masks: Vec<u64> = {
        let mut v = Vec::new();
        let mut combos = Combinations::new(n, d);
        while let Some(s) = combos.next_slice() {
            v.push(s.iter().fold(0u64, |acc, &b| acc | (1 << b)));
        }
        v
    };

    let mut best = u64::MAX;
    let mut combos = Combinations::new(subsets as usize, k);
    let mut fam: Vec<u64> = Vec::with_capacity(k);
    while let Some(s) = combos.next_slice() {
        fam.clear();
        fam.extend(s.iter().map(|&x| x as u64));
        let mut c = 0u64;
        for &a in &d_masks {
            if family_shatters(&fam, a) {
                c += 1;
            }
            if c >= best {
                break;
            }
        }
        if c < best {
            best = c;
            if best == 0 {
                break;
            }
        }
    }
    Ok(best)
}

/// Shattering check for mask `a` over raw family members.
fn family_shatters(members: &[u64], a: u64) -> bool {
    let bits = a.count_ones();
    let want = 1usize << bits;
    if members.len() < want {
        return false;
    }
    if want <= 64 {
        let full = if want == 64 { u64::MAX } else { (1u64 << want) - 1 };
        let mut seen = 0u64;
        for &f in members {
            seen |= 1 << pext(f & a, a);
            if seen == full {
                return true;
            }
        }
        false
    } else {
        let mut seen = vec![false; want];
        let mut remaining = want;
        for &f in members {
            let idx = pext(f & a, a) as usize;
            if !seen[idx] {
                seen[idx] = true;
                remaining -= 1;
                if remaining == 0 {
                    return true;
                }
            }
        }
        false
    }
}

#[inline]
fn pext(x: u64, mut mask: u64) -> u64 {
    let mut out = 0u64;
    let mut bit = 0u32;
    while mask != 0 {
        let low = mask & mask.wrapping_neg();
        if x & low != 0 {
            out |= 1 << bit;
        }
        bit += 1;
        mask ^= low;
    }
    out
}
