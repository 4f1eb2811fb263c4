use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use shatter_core::{binomial, Error, Result};

use crate::{
    balanced_rate_beta, c_d_formula, c_exact_d2, c_infinity, codim_bound, random_bound,
    BoundValue, Kind, RateFunctionSpec, Value,
};

/// One row of the lower-bound table for the step function
/// `gamma_d(b) = c(floor(2^d b), d)`.
#[derive(Debug, Clone)]
pub struct GammaEntry {
    pub k: u64,
    pub source: String,
    pub kind: Kind,
    pub value: Value,
}

/// Best-known lower bounds per `k` and source, for `2^d <= k <= k_max`.
///
/// Sources: the extremal value at `k = 2^d` carried by monotonicity, the
/// codimension construction at its thresholds, the random matrix bound, the
/// balanced-column bound in its slack-free finite form (even `k`), for
/// `d <= 2` the exact theory, and a `combined` row closing the per-k best
/// under the split inequality `1 - c(k1 + k2) <= (1 - c(k1))(1 - c(k2))`.
pub fn gamma_lower_table(d: u32, k_max: u64) -> Result<Vec<GammaEntry>> {
    if d == 0 {
        return Err(Error::invalid("d must be positive"));
    }
    if d > 20 {
        return Err(Error::invalid("step-function tables beyond d = 20 unsupported"));
    }
    let k_lo = 1u64 << d;
    if k_max < k_lo {
        return Ok(Vec::new());
    }
    let mut entries: Vec<GammaEntry> = Vec::new();

    // the balanced rate minimum is shared across all k
    let rate = balanced_rate_beta(&RateFunctionSpec::new(d, 2, 20.0)?)?;

    // per-k best value used by the combination pass
    let mut best: Vec<Option<Value>> = vec![None; (k_max + 1) as usize];
    let consider = |entries: &mut Vec<GammaEntry>,
                        best: &mut Vec<Option<Value>>,
                        k: u64,
                        source: &str,
                        kind: Kind,
                        value: Value| {
        let better = match &best[k as usize] {
            None => true,
            Some(old) => value.as_f64() > old.as_f64(),
        };
        if better {
            best[k as usize] = Some(value.clone());
        }
        entries.push(GammaEntry {
            k,
            source: source.to_string(),
            kind,
            value,
        });
    };

    for k in k_lo..=k_max {
        if d == 1 {
            // c(k, 1) = 1 exactly for every k >= 2
            consider(
                &mut entries,
                &mut best,
                k,
                "exact-d1",
                Kind::Exact,
                Value::Rational(BigRational::one()),
            );
            continue;
        }
        if d == 2 && k >= 4 {
            consider(
                &mut entries,
                &mut best,
                k,
                "exact-d2",
                Kind::Exact,
                Value::Rational(c_exact_d2(k)?),
            );
        }

        let cd_kind = if k == k_lo { Kind::Exact } else { Kind::Lower };
        consider(
            &mut entries,
            &mut best,
            k,
            "cd",
            cd_kind,
            Value::Rational(c_d_formula(d)?),
        );

        // best applicable codimension threshold:
        // k >= (2 - 2^-r) 2^d  <=>  k 2^r >= (2^(r+1) - 1) 2^d
        let mut best_r: Option<u32> = None;
        for r in 0..=d {
            let lhs = (k as u128) << r;
            let rhs = ((1u128 << (r + 1)) - 1) << d;
            if lhs >= rhs {
                best_r = Some(r);
            }
        }
        if let Some(r) = best_r {
            let b = codim_bound(d, r)?;
            consider(
                &mut entries,
                &mut best,
                k,
                "codim",
                Kind::Lower,
                b.value,
            );
        }

        let rb = random_bound(k, d, 2)?;
        consider(&mut entries, &mut best, k, "random", Kind::Lower, rb.value);

        if k % 2 == 0 {
            // slack-free finite balanced bound:
            // c(k, d) >= 1 - 2^d 2^(dk) f_min^k / C(k, k/2)^d
            let choose = crate::big_ratio_to_f64(&BigRational::from_integer(BigInt::from(
                binomial(k, k / 2),
            )));
            let log_bad = (d as f64) * std::f64::consts::LN_2
                + (k as f64) * ((d as f64) * std::f64::consts::LN_2 + rate.f_min.ln())
                - (d as f64) * choose.ln();
            let bound = 1.0 - log_bad.exp();
            if bound > 0.0 {
                consider(
                    &mut entries,
                    &mut best,
                    k,
                    "balanced",
                    Kind::Lower,
                    Value::Float(bound),
                );
            }
        }
    }

    if d == 1 {
        return Ok(entries);
    }

    // split combination pass, bound-improving direction only
    let mut combined: Vec<Option<Value>> = best.clone();
    for k in (2 * k_lo)..=k_max {
        for k1 in k_lo..=(k / 2) {
            let k2 = k - k1;
            if k2 < k_lo {
                continue;
            }
            let (a, b) = match (&combined[k1 as usize], &combined[k2 as usize]) {
                (Some(a), Some(b)) => (a.clone(), b.clone()),
                _ => continue,
            };
            let merged = BoundValue::combine_split(
                &BoundValue {
                    value: a,
                    kind: Kind::Lower,
                    provenance: String::new(),
                },
                &BoundValue {
                    value: b,
                    kind: Kind::Lower,
                    provenance: String::new(),
                },
                format!("split({k1}+{k2})"),
            );
            let better = match &combined[k as usize] {
                None => true,
                Some(old) => merged.value.as_f64() > old.as_f64(),
            };
            if better {
                combined[k as usize] = Some(merged.value);
            }
        }
    }
    for k in k_lo..=k_max {
        if let Some(v) = &combined[k as usize] {
            let kind = if d == 2 { Kind::Exact } else { Kind::Lower };
            entries.push(GammaEntry {
                k,
                source: "combined".to_string(),
                kind,
                value: v.clone(),
            });
        }
    }
    Ok(entries)
}

/// A point on a plotted curve.
#[derive(Debug, Clone)]
pub struct CurvePoint {
    pub b: f64,
    pub value: f64,
    pub kind: String,
}

/// The conjectured limiting staircase `(2 - 2^ceil(log2(2 - b))) c` on
/// `1 <= b < 2`; also a valid lower bound, but tagged conjectured so it can
/// never back an assertion.
pub fn conjectured_gamma_infinity(b: f64) -> Result<BoundValue> {
    if !(1.0..2.0).contains(&b) {
        return Err(Error::invalid(format!("b = {b} outside [1, 2)")));
    }
    let x = 2.0 - b; // in (0, 1]
    // e = ceil(log2(x)): the smallest integer with 2^e >= x
    let mut e: i32 = 0;
    while 2.0f64.powi(e - 1) >= x && e > -60 {
        e -= 1;
    }
    let factor = 2.0 - 2.0f64.powi(e);
    let c = c_infinity(1e-12)?;
    Ok(BoundValue::float(
        factor * c,
        Kind::Conjectured,
        format!("staircase(b={b})"),
    ))
}

/// Plot-ready samples of the conjectured staircase.
pub fn conjecture_curve(from: f64, to: f64, resolution: f64) -> Result<Vec<CurvePoint>> {
    if !(1.0..2.0).contains(&from) || !(from..2.0).contains(&to) {
        return Err(Error::invalid("range must satisfy 1 <= from <= to < 2"));
    }
    if !resolution.is_finite() || resolution <= 0.0 {
        return Err(Error::invalid("resolution must be positive"));
    }
    let mut points = Vec::new();
    let mut b = from;
    while b <= to + 1e-12 {
        let bound = conjectured_gamma_infinity(b.min(to))?;
        points.push(CurvePoint {
            b: b.min(to),
            value: bound.value.as_f64(),
            kind: "conjectured+lower".to_string(),
        });
        b += resolution;
    }
    Ok(points)
}

/// The best-known lower bound on `gamma_d` as a step function of
/// `b = k / 2^d`, one point per integer `k`.
pub fn gamma_staircase(d: u32, b_max: f64) -> Result<Vec<CurvePoint>> {
    if !b_max.is_finite() || b_max < 1.0 {
        return Err(Error::invalid("b_max must be at least 1"));
    }
    let k_lo = 1u64 << d;
    let k_max = ((b_max * k_lo as f64).floor() as u64).max(k_lo);
    let table = gamma_lower_table(d, k_max)?;
    let mut per_k: Vec<Option<(Kind, f64)>> = vec![None; (k_max + 1) as usize];
    for e in &table {
        let slot = &mut per_k[e.k as usize];
        let v = e.value.as_f64();
        let replace = match slot {
            None => true,
            Some((_, old)) => v > *old,
        };
        if replace {
            *slot = Some((e.kind, v));
        }
    }
    let mut out = Vec::new();
    for k in k_lo..=k_max {
        if let Some((kind, v)) = per_k[k as usize] {
            out.push(CurvePoint {
                b: k as f64 / k_lo as f64,
                value: v,
                kind: kind.as_str().to_string(),
            });
        }
    }
    Ok(out)
}
