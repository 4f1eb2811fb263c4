use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{CheckedSub, One, Signed, Zero};
use shatter_core::{Error, Result};

use crate::{big_ratio_to_f64, BoundValue, Kind};

/// Existence report for `(k; d, n, v)`-covering arrays.
#[derive(Debug, Clone)]
pub struct CoverReport {
    pub requested_n: u64,
    /// Asymptotic guide `(d-1) v^d log2(n) / log2(beta)`; a rough size
    /// target, not a certificate.
    pub guide_k: BoundValue,
    /// Finite certificate, present when a shattering-density lower bound
    /// `c` was supplied: `n' = floor((1-c)^(-1/(d-1)))` and the largest `n`
    /// with `n <= n' - (1-c) C(n', d)`.
    pub n_prime: Option<BigUint>,
    pub guaranteed_n: Option<BigUint>,
    /// Whether the certificate reaches the requested `n`.
    pub certified: Option<bool>,
}

/// Evaluate the covering-array existence bounds for a target column count.
///
/// `beta` is the exponential rate used by the asymptotic guide; `c_lower`,
/// when given, is an exact lower bound on the shattering density for the
/// intended `(k, d, v)` and drives the finite column-deletion certificate.
pub fn covering_existence(
    n: u64,
    d: u32,
    v: u32,
    beta: f64,
    c_lower: Option<&BigRational>,
) -> Result<CoverReport> {
    if d < 2 {
        return Err(Error::invalid("covering strength d must be at least 2"));
    }
    if v < 2 {
        return Err(Error::invalid("alphabet size must be at least 2"));
    }
    if !beta.is_finite() || beta <= 1.0 {
        return Err(Error::invalid(format!(
            "the rate base must exceed 1, got {beta}"
        )));
    }
    if n < 1 {
        return Err(Error::invalid("target n must be positive"));
    }

    let guide = (d as f64 - 1.0) * (v as f64).powi(d as i32) * (n as f64).log2() / beta.log2();
    let guide_k = BoundValue::float(guide, Kind::Lower, "asymptotic-guide");

    let (n_prime, guaranteed, certified) = match c_lower {
        None => (None, None, None),
        Some(c) => {
            if c >= &BigRational::one() || c.is_negative() {
                return Err(Error::invalid("the density bound must lie in [0, 1)"));
            }
            if c.is_zero() {
                (None, None, Some(false))
            } else {
                let inv = (BigRational::one() - c).recip();
                let np = rational_root_floor(&inv, d - 1)?;
                // guaranteed n = floor(n' - (1 - c) C(n', d))
                let one_minus_c = BigRational::one() - c;
                let cnp = BigRational::from_integer(BigInt::from(binomial_big(&np, d)));
                let val = BigRational::from_integer(BigInt::from(np.clone())) - one_minus_c * cnp;
                let guaranteed = if val.is_negative() {
                    BigUint::zero()
                } else {
                    val.floor().to_integer().to_biguint().unwrap_or_default()
                };
                let certified = BigUint::from(n) <= guaranteed;
                (Some(np), Some(guaranteed), Some(certified))
            }
        }
    };

    Ok(CoverReport {
        requested_n: n,
        guide_k,
        n_prime,
        guaranteed_n: guaranteed,
        certified,
    })
}

fn binomial_big(n: &BigUint, d: u32) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..d as u64 {
        let term = n.checked_sub(&BigUint::from(i));
        match term {
            Some(t) => num *= t,
            None => return BigUint::zero(),
        }
        den *= BigUint::from(i + 1);
    }
    num / den
}

/// Exact floor of `x^(1/e)` for a positive rational `x`: float estimate,
/// then integer adjustment.
fn rational_root_floor(x: &BigRational, e: u32) -> Result<BigUint> {
    if e == 0 {
        return Err(Error::invalid("zeroth root undefined"));
    }
    if x.is_negative() {
        return Err(Error::invalid("root of a negative value"));
    }
    if e == 1 {
        return Ok(x.floor().to_integer().to_biguint().unwrap_or_default());
    }
    let approx = big_ratio_to_f64(x).powf(1.0 / e as f64);
    let mut guess = BigUint::from(approx.max(0.0).floor() as u64);
    let as_rational = |g: &BigUint| BigRational::from_integer(BigInt::from(g.clone()));
    // fix up float error in either direction
    loop {
        let next = &guess + BigUint::one();
        if pow_rat(&as_rational(&next), e) <= *x {
            guess = next;
        } else {
            break;
        }
    }
    while !guess.is_zero() && pow_rat(&as_rational(&guess), e) > *x {
        guess -= BigUint::one();
    }
    Ok(guess)
}

fn pow_rat(r: &BigRational, mut e: u32) -> BigRational {
    let mut base = r.clone();
    let mut acc = BigRational::one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn strength2_trace_with_two_thirds() {
        // c = 2/3, d = 2: n' = 3, guaranteed = 3 - (1/3) C(3,2) = 2
        let r = covering_existence(2, 2, 2, 16.0, Some(&ratio(2, 3))).unwrap();
        assert_eq!(r.n_prime.unwrap(), BigUint::from(3u32));
        assert_eq!(r.guaranteed_n.unwrap(), BigUint::from(2u32));
        assert_eq!(r.certified, Some(true));
    }

    #[test]
    fn strength2_trace_with_kleitman_spencer_density() {
        // c = 1 - 1/6435: n' = 6435, guaranteed = 6435 - 3217 = 3218
        let c = BigRational::one() - ratio(1, 6435);
        let r = covering_existence(3000, 2, 2, 16.0, Some(&c)).unwrap();
        assert_eq!(r.n_prime.unwrap(), BigUint::from(6435u32));
        assert_eq!(r.guaranteed_n.unwrap(), BigUint::from(3218u32));
        assert_eq!(r.certified, Some(true));
        let r = covering_existence(4000, 2, 2, 16.0, Some(&c)).unwrap();
        assert_eq!(r.certified, Some(false));
    }

    #[test]
    fn beta_at_most_one_is_rejected() {
        assert!(covering_existence(4, 2, 2, 1.0, None).is_err());
        assert!(covering_existence(4, 2, 2, 0.5, None).is_err());
        assert!(covering_existence(4, 1, 2, 2.0, None).is_err());
    }

    #[test]
    fn guide_value_formula() {
        let r = covering_existence(1024, 2, 2, 16.0, None).unwrap();
        // (2-1) * 4 * 10 / 4 = 10
        assert!((r.guide_k.value.as_f64() - 10.0).abs() < 1e-12);
    }

    #[test]
    fn root_floor_is_exact() {
        assert_eq!(rational_root_floor(&ratio(27, 1), 3).unwrap(), BigUint::from(3u32));
        assert_eq!(rational_root_floor(&ratio(26, 1), 3).unwrap(), BigUint::from(2u32));
        assert_eq!(rational_root_floor(&ratio(9, 5), 1).unwrap(), BigUint::from(1u32));
    }
}
