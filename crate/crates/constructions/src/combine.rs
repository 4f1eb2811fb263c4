use shatter_core::{AlphabetMatrix, Error, Result, MAX_ALPHABET};

/// Symbol-pair product of two matrices: the `(k1 k2) x (n1 n2)` matrix over
/// `v1 * v2` whose entry at row `(i1, i2)`, column `(j1, j2)` encodes the
/// pair of factor symbols as `a * v2 + b`. Its shattered `d`-count is at
/// least `d!` times the product of the factor counts.
pub fn product_construction(m1: &AlphabetMatrix, m2: &AlphabetMatrix) -> Result<AlphabetMatrix> {
    let v = m1.v() as u64 * m2.v() as u64;
    if v > MAX_ALPHABET as u64 {
        return Err(Error::invalid(format!(
            "product alphabet {v} exceeds the symbol budget {MAX_ALPHABET}"
        )));
    }
    let (k1, n1) = (m1.rows(), m1.cols());
    let (k2, n2) = (m2.rows(), m2.cols());
    let v2 = m2.v() as u8;
    AlphabetMatrix::from_fn(v as u32, k1 * k2, n1 * n2, |i, j| {
        let (i1, i2) = (i / k2, i % k2);
        let (j1, j2) = (j / n2, j % n2);
        m1.get(i1, j1) * v2 + m2.get(i2, j2)
    })
}

/// Row-stacking product over a common alphabet: the `(k1 + k2) x (n1 n2)`
/// matrix whose column `(j1, j2)` is column `j1` of the first factor
/// concatenated with column `j2` of the second. Non-shattered densities
/// multiply: `1 - d! count / (n1 n2)^d <= (1 - d! count1 / n1^d)(1 - d!
/// count2 / n2^d)`.
pub fn stack_construction(m1: &AlphabetMatrix, m2: &AlphabetMatrix) -> Result<AlphabetMatrix> {
    if m1.v() != m2.v() {
        return Err(Error::invalid(format!(
            "stacking needs matching alphabets, got {} and {}",
            m1.v(),
            m2.v()
        )));
    }
    let (k1, n1) = (m1.rows(), m1.cols());
    let (k2, n2) = (m2.rows(), m2.cols());
    AlphabetMatrix::from_fn(m1.v(), k1 + k2, n1 * n2, |i, j| {
        let (j1, j2) = (j / n2, j % n2);
        if i < k1 {
            m1.get(i, j1)
        } else {
            m2.get(i - k1, j2)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::full_space;
    use num_bigint::BigUint;
    use num_rational::BigRational;
    use num_traits::One;
    use shatter_core::count_shattered;

    #[test]
    fn product_of_full_spaces() {
        let f = full_space(2).unwrap();
        let p = product_construction(&f, &f).unwrap();
        assert_eq!((p.v(), p.rows(), p.cols()), (4, 16, 9));
        let count = count_shattered(&p, 2).unwrap().shattered;
        // bound is 2! * 3 * 3 = 18; this instance attains it exactly
        assert_eq!(count, BigUint::from(18u32));
    }

    #[test]
    fn product_with_degenerate_factor() {
        let m1 = AlphabetMatrix::new(2, 2, 1, vec![0, 1]).unwrap();
        let p = product_construction(&m1, &m1).unwrap();
        assert_eq!((p.v(), p.rows(), p.cols()), (4, 4, 1));
        assert_eq!(count_shattered(&p, 1).unwrap().shattered, BigUint::one());
    }

    #[test]
    fn stack_density_factorization() {
        let f = full_space(2).unwrap();
        let s = stack_construction(&f, &f).unwrap();
        assert_eq!((s.rows(), s.cols()), (8, 9));
        let d2 = count_shattered(&s, 2).unwrap().density;
        let d1 = count_shattered(&f, 2).unwrap().density;
        let one = BigRational::one();
        assert!(&one - &d2 <= (&one - &d1) * (&one - &d1));
    }

    #[test]
    fn stack_rejects_mismatched_alphabets() {
        let a = AlphabetMatrix::new(2, 1, 1, vec![0]).unwrap();
        let b = AlphabetMatrix::new(3, 1, 1, vec![2]).unwrap();
        assert!(stack_construction(&a, &b).is_err());
    }
}
