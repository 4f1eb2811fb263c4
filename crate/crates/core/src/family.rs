use crate::{AlphabetMatrix, Error, Result};

/// A family of distinct subsets of `[n]`, each stored as a bit mask with
/// element `i` at bit `i - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    n: usize,
    members: Vec<u64>,
}

impl SetFamily {
    pub fn new(n: usize, members: Vec<u64>) -> Result<Self> {
        if n > 63 {
            return Err(Error::invalid("ground sets beyond 63 elements unsupported"));
        }
        let full = if n == 0 { 0 } else { (1u64 << n) - 1 };
        if let Some(&bad) = members.iter().find(|&&m| m & !full != 0) {
            return Err(Error::invalid(format!(
                "member {bad:#b} uses elements outside [{n}]"
            )));
        }
        let mut sorted = members.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("family members must be pairwise distinct"));
        }
        Ok(SetFamily { n, members })
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Indicator-vector matrix: one binary row per member, one column per
    /// ground element.
    pub fn to_matrix(&self) -> Result<AlphabetMatrix> {
        if self.members.is_empty() || self.n == 0 {
            return Err(Error::invalid("cannot render an empty family as a matrix"));
        }
        AlphabetMatrix::from_fn(2, self.members.len(), self.n, |i, j| {
            ((self.members[i] >> j) & 1) as u8
        })
    }

    /// Inverse of `to_matrix`; fails if the matrix is not binary or its rows
    /// are not pairwise distinct.
    pub fn from_matrix(m: &AlphabetMatrix) -> Result<Self> {
        if m.v() != 2 {
            return Err(Error::invalid("set families come from binary matrices"));
        }
        if m.cols() > 63 {
            return Err(Error::invalid("ground sets beyond 63 elements unsupported"));
        }
        let members: Vec<u64> = (0..m.rows())
            .map(|i| {
                (0..m.cols())
                    .map(|j| (m.get(i, j) as u64) << j)
                    .fold(0, |a, b| a | b)
            })
            .collect();
        SetFamily::new(m.cols(), members)
    }

    /// Is `a` (a subset mask of `[n]`) shattered: does every subset of `a`
    /// arise as `a & member`?
    pub fn shatters(&self, a: u64) -> bool {
        let want = 1usize << a.count_ones();
        if self.members.len() < want {
            return false;
        }
        if want <= 64 {
            let mut seen = 0u64;
            let full = if want == 64 { u64::MAX } else { (1u64 << want) - 1 };
            for &f in &self.members {
                seen |= 1u64 << compress(f & a, a);
                if seen == full {
                    return true;
                }
            }
            false
        } else {
            let mut seen = vec![false; want];
            let mut remaining = want;
            for &f in &self.members {
                let idx = compress(f & a, a) as usize;
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

    /// All shattered subsets of `[n]`, ascending by mask. This is a
    /// simplicial complex and, by the Pajor inequality, has at least
    /// `self.len()` elements.
    pub fn shattered_complex(&self, max_ground: usize) -> Result<Vec<u64>> {
        if self.n > max_ground {
            return Err(Error::BudgetExceeded {
                what: format!("shattered complex over 2^{} candidate subsets", self.n),
                required: 1u128 << self.n,
                limit: 1u64 << max_ground,
            });
        }
        let full = if self.n == 0 { 0 } else { (1u64 << self.n) - 1 };
        Ok((0..=full).filter(|&a| self.shatters(a)).collect())
    }
}

/// Pack the bits of `x` that lie under `mask` into the low bits, preserving
/// order (software PEXT).
#[inline]
fn compress(x: u64, mut mask: u64) -> u64 {
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_set_family_shatters_only_empty() {
        let f = SetFamily::new(3, vec![0]).unwrap();
        assert_eq!(f.shattered_complex(10).unwrap(), vec![0]);
    }

    #[test]
    fn power_set_of_two_shatters_everything() {
        let f = SetFamily::new(2, vec![0b00, 0b01, 0b10, 0b11]).unwrap();
        assert_eq!(f.shattered_complex(10).unwrap(), vec![0b00, 0b01, 0b10, 0b11]);
    }

    #[test]
    fn even_sized_subsets_shatter_all_triples() {
        // all even-sized subsets of [4]; every 3-subset of [4] is shattered
        let members: Vec<u64> = (0..16u64).filter(|m| m.count_ones() % 2 == 0).collect();
        let f = SetFamily::new(4, members).unwrap();
        let complex = f.shattered_complex(10).unwrap();
        let triples: Vec<u64> = complex.iter().copied().filter(|a| a.count_ones() == 3).collect();
        assert_eq!(triples.len(), 4);
        // but not the full set
        assert!(!complex.contains(&0b1111));
    }

    #[test]
    fn matrix_roundtrip_is_identity() {
        let f = SetFamily::new(3, vec![0b000, 0b011, 0b101]).unwrap();
        let m = f.to_matrix().unwrap();
        assert_eq!(SetFamily::from_matrix(&m).unwrap(), f);
    }

    #[test]
    fn duplicate_members_rejected() {
        assert!(SetFamily::new(3, vec![1, 1]).is_err());
        assert!(SetFamily::new(2, vec![0b100]).is_err());
    }
}
