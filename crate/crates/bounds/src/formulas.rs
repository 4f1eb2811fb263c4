use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use shatter_core::{binomial, Error, Result};

use crate::{BoundValue, Kind};

/// The extremal density at `k = 2^d`: the probability that `d` independent
/// uniform nonzero vectors of the binary `d`-space are linearly independent,
/// `prod_{i=1}^{d-1} (2^d - 2^i) / (2^d - 1)^(d-1)`.
pub fn c_d_formula(d: u32) -> Result<BigRational> {
    if d == 0 {
        return Err(Error::invalid("d must be positive"));
    }
    let pow = BigInt::one() << d;
    let mut numer = BigInt::one();
    for i in 1..d {
        numer *= &pow - (BigInt::one() << i);
    }
    let denom = (&pow - BigInt::one()).pow(d - 1);
    Ok(BigRational::new(numer, denom))
}

/// The limit of `c_d`: the infinite product of `1 - 2^-i`, evaluated until
/// the multiplicative tail is below `precision`.
pub fn c_infinity(precision: f64) -> Result<f64> {
    if !precision.is_finite() || precision <= 0.0 {
        return Err(Error::invalid("precision must be positive"));
    }
    let mut value = 1.0f64;
    let mut i = 1u32;
    loop {
        value *= 1.0 - 0.5f64.powi(i as i32);
        // remaining factors multiply in at least exp(-2^(1-i)) >= 1 - 2^(1-i)
        let tail = value * 2.0 * 0.5f64.powi(i as i32);
        if tail < precision || i >= 1070 {
            return Ok(value);
        }
        i += 1;
    }
}

/// Truncation of the infinite product after `terms` factors; exposed so the
/// monotone-decrease property can be checked directly.
pub fn c_infinity_partial(terms: u32) -> f64 {
    (1..=terms).map(|i| 1.0 - 0.5f64.powi(i as i32)).product()
}

/// Edge count of the complete r-partite graph with near-equal classes:
/// `t(n, r) = sum_{0 <= i < j <= r-1} floor((n+i)/r) floor((n+j)/r)`.
pub fn turan_edges(n: u64, r: u64) -> Result<BigUint> {
    if r == 0 {
        return Err(Error::invalid("r must be positive"));
    }
    let mut total = BigUint::zero();
    let sizes: Vec<u128> = (0..r).map(|i| ((n as u128) + i as u128) / r as u128).collect();
    for i in 0..sizes.len() {
        for j in i + 1..sizes.len() {
            total += BigUint::from(sizes[i] * sizes[j]);
        }
    }
    Ok(total)
}

/// The pairwise independent extremal size `w = C(k-1, floor(k/2) - 1)`.
pub fn kleitman_spencer_w(k: u64) -> Result<BigUint> {
    if k < 4 {
        return Err(Error::invalid("pairwise independence needs k >= 4"));
    }
    Ok(binomial(k - 1, k / 2 - 1))
}

/// Exact maximum shattered-pair count: `f(n, k, 2) = t(n, w)`.
pub fn f_exact_d2(n: u64, k: u64) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::invalid("need n >= 2 columns for pairs"));
    }
    let w = kleitman_spencer_w(k)?;
    // class sizes are all 0 or 1 once w >= n, where t(n, w) = C(n, 2)
    let w_u64 = match u64::try_from(&w) {
        Ok(x) => x,
        Err(_) => return Ok(binomial(n, 2)),
    };
    if w_u64 >= n {
        return Ok(binomial(n, 2));
    }
    turan_edges(n, w_u64)
}

/// Exact pair density constant `c(k, 2) = 1 - 1/w`.
pub fn c_exact_d2(k: u64) -> Result<BigRational> {
    let w = BigInt::from(kleitman_spencer_w(k)?);
    Ok(BigRational::one() - BigRational::new(BigInt::one(), w))
}

/// Random-matrix lower bound `max(0, 1 - v^d (1 - v^-d)^k)` as an exact
/// rational.
pub fn random_bound(k: u64, d: u32, v: u32) -> Result<BoundValue> {
    if k == 0 || d == 0 || v < 2 {
        return Err(Error::invalid("need k >= 1, d >= 1, v >= 2"));
    }
    let vd = BigInt::from(v).pow(d);
    let miss = BigRational::new(&vd - BigInt::one(), vd.clone());
    let value = BigRational::one() - BigRational::from_integer(vd) * pow_rational(&miss, k);
    let clamped = if value < BigRational::zero() {
        BigRational::zero()
    } else {
        value
    };
    Ok(BoundValue::rational(
        clamped,
        Kind::Lower,
        format!("random({k},{d},{v})"),
    ))
}

fn pow_rational(r: &BigRational, mut e: u64) -> BigRational {
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

/// Codimension-complement lower bound `c((2 - 2^-r) 2^d, d) >= (2 - 2^-r)
/// c_{d+1}` as an exact rational.
pub fn codim_bound(d: u32, r: u32) -> Result<BoundValue> {
    if r > d {
        return Err(Error::invalid(format!("need r <= d, got r={r}, d={d}")));
    }
    let factor = BigRational::new(
        BigInt::from((1u64 << (r + 1)) - 1),
        BigInt::one() << r,
    );
    let value = factor * c_d_formula(d + 1)?;
    Ok(BoundValue::rational(
        value,
        Kind::Lower,
        format!("codim({d},{r})"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::big_ratio_to_f64;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn c_d_first_values() {
        assert_eq!(c_d_formula(1).unwrap(), ratio(1, 1));
        assert_eq!(c_d_formula(2).unwrap(), ratio(2, 3));
        assert_eq!(c_d_formula(3).unwrap(), ratio(24, 49));
        assert_eq!(c_d_formula(4).unwrap(), ratio(1344, 3375));
    }

    #[test]
    fn c_d_strictly_decreasing_to_the_limit() {
        let mut prev = c_d_formula(1).unwrap();
        for d in 2..=30 {
            let cur = c_d_formula(d).unwrap();
            assert!(cur < prev, "c_d not decreasing at d={d}");
            prev = cur;
        }
        let c30 = big_ratio_to_f64(&c_d_formula(30).unwrap());
        let c = c_infinity(1e-12).unwrap();
        assert!(c30 > c && c30 - c < 1e-7);
    }

    #[test]
    fn c_infinity_values() {
        let rough = c_infinity(1e-2).unwrap();
        assert!((rough - 0.289).abs() < 0.01);
        let fine = c_infinity(1e-9).unwrap();
        assert!((fine - 0.288788095).abs() < 1e-8);
        // partial products decrease as more factors are included
        let mut prev = c_infinity_partial(1);
        for terms in 2..20 {
            let cur = c_infinity_partial(terms);
            assert!(cur < prev);
            prev = cur;
        }
    }

    #[test]
    fn turan_values() {
        assert_eq!(turan_edges(6, 3).unwrap(), BigUint::from(12u32));
        assert_eq!(turan_edges(4, 3).unwrap(), BigUint::from(5u32));
        assert_eq!(turan_edges(3, 3).unwrap(), BigUint::from(3u32));
        // r >= n degenerates to the complete graph
        assert_eq!(turan_edges(5, 9).unwrap(), binomial(5, 2));
    }

    #[test]
    fn d2_exact_values() {
        assert_eq!(f_exact_d2(3, 4).unwrap(), BigUint::from(3u32));
        assert_eq!(f_exact_d2(4, 4).unwrap(), BigUint::from(5u32));
        assert_eq!(f_exact_d2(9, 8).unwrap(), BigUint::from(36u32));
        assert_eq!(c_exact_d2(4).unwrap(), ratio(2, 3));
        assert_eq!(c_exact_d2(6).unwrap(), ratio(9, 10));
        assert_eq!(
            c_exact_d2(16).unwrap(),
            BigRational::one() - ratio(1, 6435)
        );
        assert!(c_exact_d2(3).is_err());
    }

    #[test]
    fn random_bound_values() {
        let b = random_bound(16, 2, 2).unwrap();
        let f = b.value.as_f64();
        assert!((f - (1.0 - 4.0 * 0.75f64.powi(16))).abs() < 1e-12);
        // clamp case
        let b = random_bound(4, 2, 2).unwrap();
        assert!(b.value.rational().unwrap().is_zero());
        // enormous k drives the bound to 1
        let b = random_bound(10_000, 2, 2).unwrap();
        assert!((b.value.as_f64() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn codim_values() {
        let b = codim_bound(2, 1).unwrap();
        assert_eq!(b.value.rational().unwrap(), &ratio(36, 49));
        let b = codim_bound(3, 3).unwrap();
        assert_eq!(
            b.value.rational().unwrap(),
            &(ratio(15, 8) * c_d_formula(4).unwrap())
        );
        assert!(codim_bound(2, 3).is_err());
        // r = 0 reduces to c_{d+1}, which sits below c_d
        for d in 1..=6 {
            let b = codim_bound(d, 0).unwrap();
            assert!(b.value.rational().unwrap() <= &c_d_formula(d).unwrap());
            assert_eq!(b.value.rational().unwrap(), &c_d_formula(d + 1).unwrap());
        }
    }
}
