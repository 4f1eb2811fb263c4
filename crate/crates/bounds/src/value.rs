use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use shatter_core::{Error, Result};

/// What a bound claims about the true quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Lower,
    Upper,
    Exact,
    Conjectured,
}

impl Kind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Kind::Lower => "lower",
            Kind::Upper => "upper",
            Kind::Exact => "exact",
            Kind::Conjectured => "conjectured",
        }
    }
}

/// Exact rational where available, float otherwise.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Rational(BigRational),
    Float(f64),
}

impl Value {
    pub fn as_f64(&self) -> f64 {
        match self {
            Value::Rational(r) => big_ratio_to_f64(r),
            Value::Float(f) => *f,
        }
    }

    pub fn rational(&self) -> Option<&BigRational> {
        match self {
            Value::Rational(r) => Some(r),
            Value::Float(_) => None,
        }
    }

    pub fn decimal_string(&self) -> String {
        format!("{:.12}", self.as_f64())
    }

    pub fn rational_string(&self) -> Option<String> {
        self.rational().map(|r| format!("{}/{}", r.numer(), r.denom()))
    }
}

/// Conversion robust to numerators and denominators far beyond the float
/// range: both sides are shifted down together before dividing.
pub fn big_ratio_to_f64(r: &BigRational) -> f64 {
    let numer = r.numer();
    let denom = r.denom();
    if numer.is_zero() {
        return 0.0;
    }
    let nb = numer.bits();
    let db = denom.bits();
    let shift = nb.max(db).saturating_sub(512);
    let n = (numer.abs() >> shift).to_f64().unwrap_or(f64::MAX);
    let d = (denom.abs() >> shift).to_f64().unwrap_or(f64::MAX);
    let sign = if numer.is_negative() { -1.0 } else { 1.0 };
    sign * n / d
}

/// A numeric bound tagged with its claim strength and the formula or
/// construction that produced it.
#[derive(Debug, Clone)]
pub struct BoundValue {
    pub value: Value,
    pub kind: Kind,
    pub provenance: String,
}

impl BoundValue {
    pub fn rational(value: BigRational, kind: Kind, provenance: impl Into<String>) -> Self {
        BoundValue {
            value: Value::Rational(value),
            kind,
            provenance: provenance.into(),
        }
    }

    pub fn float(value: f64, kind: Kind, provenance: impl Into<String>) -> Self {
        BoundValue {
            value: Value::Float(value),
            kind,
            provenance: provenance.into(),
        }
    }

    /// Conjectured values refuse to be used as test oracles.
    pub fn assertable(&self) -> Result<&Value> {
        if self.kind == Kind::Conjectured {
            return Err(Error::invalid(format!(
                "bound from {} is conjectured and cannot back an assertion",
                self.provenance
            )));
        }
        Ok(&self.value)
    }

    /// Combine split bounds: `1 - (1 - a)(1 - b)`. Rationality is preserved
    /// when both inputs are rational; the conjectured taint propagates.
    pub fn combine_split(a: &BoundValue, b: &BoundValue, provenance: impl Into<String>) -> Self {
        let kind = if a.kind == Kind::Conjectured || b.kind == Kind::Conjectured {
            Kind::Conjectured
        } else {
            Kind::Lower
        };
        let value = match (&a.value, &b.value) {
            (Value::Rational(x), Value::Rational(y)) => {
                let one = BigRational::one();
                Value::Rational(&one - (&one - x) * (&one - y))
            }
            _ => Value::Float(1.0 - (1.0 - a.value.as_f64()) * (1.0 - b.value.as_f64())),
        };
        BoundValue {
            value,
            kind,
            provenance: provenance.into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn huge_ratio_conversion() {
        // (2^2000 - 1) / 2^2000 should convert to something very near 1
        let denom = BigInt::one() << 2000;
        let numer = &denom - BigInt::one();
        let r = BigRational::new(numer, denom);
        let f = big_ratio_to_f64(&r);
        assert!((f - 1.0).abs() < 1e-12, "got {f}");
    }

    #[test]
    fn conjectured_blocks_assertions() {
        let b = BoundValue::float(0.5, Kind::Conjectured, "staircase");
        assert!(b.assertable().is_err());
        let b = BoundValue::rational(ratio(1, 2), Kind::Lower, "x");
        assert!(b.assertable().is_ok());
    }

    #[test]
    fn combine_preserves_rationality_and_taint() {
        let a = BoundValue::rational(ratio(2, 3), Kind::Exact, "a");
        let b = BoundValue::rational(ratio(1, 2), Kind::Lower, "b");
        let c = BoundValue::combine_split(&a, &b, "ab");
        assert_eq!(c.kind, Kind::Lower);
        assert_eq!(c.value.rational().unwrap(), &ratio(5, 6));

        let t = BoundValue::float(0.1, Kind::Conjectured, "t");
        let c = BoundValue::combine_split(&a, &t, "at");
        assert_eq!(c.kind, Kind::Conjectured);
    }
}
