use num_bigint::BigUint;
use num_traits::{One, Zero};
use shatter_core::{binomial, Error, Result, SetFamily};

/// Outcome of the bracket formula for `g(n, k, d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GFormula {
    /// `k` lies in the bracket for some `r`: `g = C(r, d)`.
    Exact(BigUint),
    /// `k` falls between brackets; `g_construction` still produces the
    /// optimal family.
    Miss,
}

/// Bracket formula: for `r` in `[d, n]`, when
/// `C(n,<d) + C(r,d) + sum_{i=d+1}^{r-1} (C(r,i) - 1) <= k <=
///  C(n,<d) + sum_{i=d}^{r} C(r,i)`
/// the minimum shattered `d`-count of a `k`-member family is `C(r, d)`.
pub fn g_formula(n: u32, k: u64, d: u32) -> Result<GFormula> {
    if n == 0 || d == 0 || k == 0 {
        return Err(Error::invalid("n, k, d must all be positive"));
    }
    if d > n {
        return Ok(GFormula::Miss);
    }
    let below = below_d(n, d);
    let k = BigUint::from(k);
    for r in d..=n {
        let mut lo = &below + binomial(r as u64, d as u64);
        for i in d + 1..r {
            lo += binomial(r as u64, i as u64) - BigUint::one();
        }
        let mut hi = below.clone();
        for i in d..=r {
            hi += binomial(r as u64, i as u64);
        }
        if lo <= k && k <= hi {
            return Ok(GFormula::Exact(binomial(r as u64, d as u64)));
        }
    }
    Ok(GFormula::Miss)
}

fn below_d(n: u32, d: u32) -> BigUint {
    (0..d).fold(BigUint::zero(), |acc, i| acc + binomial(n as u64, i as u64))
}

/// Linear order used when filling the family beyond the small sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsetOrder {
    /// Ascending characteristic mask with element `i` at bit `i - 1`; the
    /// subsets of `[r]` form initial segments, which is what makes the
    /// construction optimal.
    Lex,
    /// Ascending mask of the bit-reversed layout (element `i` at bit
    /// `n - i`); equivalent to `Lex` up to relabeling the ground set.
    Colex,
}

fn order_key(mask: u64, n: u32, order: SubsetOrder) -> u64 {
    match order {
        SubsetOrder::Lex => mask,
        SubsetOrder::Colex => {
            let mut key = 0u64;
            for b in 0..n {
                if (mask >> b) & 1 == 1 {
                    key |= 1 << (n - 1 - b);
                }
            }
            key
        }
    }
}

/// The minimum-shattering construction: all subsets of size below `d`, then
/// the remaining subsets in the configured order until the family has `k`
/// members. Returns the family and its exact shattered `d`-count.
pub fn g_construction(n: u32, k: u64, d: u32, order: SubsetOrder) -> Result<(SetFamily, u64)> {
    if n == 0 || d == 0 || k == 0 {
        return Err(Error::invalid("n, k, d must all be positive"));
    }
    if n > 20 {
        return Err(Error::invalid("ground sets beyond 20 elements unsupported"));
    }
    let total = 1u64 << n;
    if k > total {
        return Err(Error::invalid(format!(
            "a family of {k} distinct subsets of [{n}] does not exist"
        )));
    }
    let mut small: Vec<u64> = (0..total).filter(|m| m.count_ones() < d).collect();
    small.sort_by_key(|&m| order_key(m, n, order));
    let mut rest: Vec<u64> = (0..total).filter(|m| m.count_ones() >= d).collect();
    rest.sort_by_key(|&m| order_key(m, n, order));

    let members: Vec<u64> = small
        .into_iter()
        .chain(rest)
        .take(k as usize)
        .collect();
    let fam = SetFamily::new(n as usize, members)?;
    let count = fam
        .shattered_complex(20)?
        .iter()
        .filter(|a| a.count_ones() == d)
        .count() as u64;
    Ok((fam, count))
}
