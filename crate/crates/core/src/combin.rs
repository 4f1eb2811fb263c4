use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= BigUint::from(n - i);
        den *= BigUint::from(i + 1);
    }
    num / den
}

/// Binomial coefficient saturating at `u128::MAX`, for budget estimates.
pub fn binomial_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(x) => x / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// n (n-1) ... (n-k+1) as an exact integer.
pub fn falling_factorial(n: u64, k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        if i >= n {
            return BigUint::zero();
        }
        acc *= BigUint::from(n - i);
    }
    acc
}

/// Number of multisets of size `k` drawn from `n` kinds, saturating.
pub fn multiset_count_u128(n: u64, k: u64) -> u128 {
    if n == 0 {
        return if k == 0 { 1 } else { 0 };
    }
    binomial_u128(n + k - 1, k)
}

/// Iterator over all `k`-subsets of `0..n` in lexicographic order.
///
/// `next_slice` yields a borrowed view to keep hot loops allocation-free.
pub struct Combinations {
    n: usize,
    k: usize,
    idx: Vec<usize>,
    started: bool,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            k,
            idx: (0..k).collect(),
            started: false,
            done: k > n,
        }
    }

    pub fn next_slice(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.idx);
        }
        if self.k == 0 {
            self.done = true;
            return None;
        }
        let mut i = self.k;
        while i > 0 {
            i -= 1;
            if self.idx[i] < self.n - (self.k - i) {
                self.idx[i] += 1;
                for j in i + 1..self.k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                return Some(&self.idx);
            }
        }
        self.done = true;
        None
    }
}
