use crate::{AlphabetMatrix, Error, Result};

/// Bit-packed column fingerprints for binary matrices.
///
/// Column `j` is stored as `words_per_col` little-endian `u64` words; bit `i`
/// of the fingerprint is the entry at row `i`. Bits at positions `>= k` are
/// always zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitColumns {
    k: usize,
    words_per_col: usize,
    words: Vec<u64>,
}

impl BitColumns {
    pub fn from_matrix(m: &AlphabetMatrix) -> Result<Self> {
        if m.v() != 2 {
            return Err(Error::invalid(format!(
                "bit columns require a binary matrix, alphabet is {}",
                m.v()
            )));
        }
        let k = m.rows();
        let wpc = k.div_ceil(64);
        let mut words = vec![0u64; wpc * m.cols()];
        for j in 0..m.cols() {
            for (i, &e) in m.column(j).iter().enumerate() {
                if e == 1 {
                    words[j * wpc + i / 64] |= 1u64 << (i % 64);
                }
            }
        }
        Ok(BitColumns {
            k,
            words_per_col: wpc,
            words,
        })
    }

    pub fn rows(&self) -> usize {
        self.k
    }

    pub fn cols(&self) -> usize {
        self.words
            .len()
            .checked_div(self.words_per_col)
            .unwrap_or(0)
    }

    pub fn words_per_col(&self) -> usize {
        self.words_per_col
    }

    #[inline]
    pub fn column_words(&self, j: usize) -> &[u64] {
        &self.words[j * self.words_per_col..(j + 1) * self.words_per_col]
    }

    #[inline]
    pub fn bit(&self, i: usize, j: usize) -> bool {
        (self.words[j * self.words_per_col + i / 64] >> (i % 64)) & 1 == 1
    }

    /// Column fingerprint as a single word; only valid for `k <= 64`.
    #[inline]
    pub fn column_u64(&self, j: usize) -> u64 {
        debug_assert!(self.words_per_col == 1);
        self.words[j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_matrix() {
        let m = AlphabetMatrix::new(2, 3, 2, vec![1, 0, 1, 0, 1, 1]).unwrap();
        let b = BitColumns::from_matrix(&m).unwrap();
        for j in 0..2 {
            for i in 0..3 {
                assert_eq!(b.bit(i, j), m.get(i, j) == 1);
            }
        }
        assert_eq!(b.column_u64(0), 0b101);
        assert_eq!(b.column_u64(1), 0b110);
    }

    #[test]
    fn high_bits_zero_across_word_boundary() {
        let k = 70;
        let m = AlphabetMatrix::from_fn(2, k, 1, |i, _| (i % 2) as u8).unwrap();
        let b = BitColumns::from_matrix(&m).unwrap();
        assert_eq!(b.words_per_col(), 2);
        let w = b.column_words(0);
        assert_eq!(w[1] >> (k - 64), 0, "bits above k-1 must be zero");
    }

    #[test]
    fn rejects_nonbinary() {
        let m = AlphabetMatrix::new(3, 2, 1, vec![0, 2]).unwrap();
        assert!(BitColumns::from_matrix(&m).is_err());
    }
}
