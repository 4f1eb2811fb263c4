use num_bigint::BigInt;
use num_rational::BigRational;
use shatter_core::{Error, Result};


/// Closed form for the simplex maximum of `sum_i p_i (1 - p_i)^(d-1)` over
/// distributions on `2^d - 1` outcomes: `((2^d - 2)/(2^d - 1))^(d-1)`.
pub fn lemma25_closed_form(d: u32) -> Result<BigRational> {
    if d < 2 {
        return Err(Error::invalid("the simplex bound needs d >= 2"));
    }
    let pow = BigInt::one() << d;
    let r = BigRational::new(&pow - BigInt::from(2), &pow - BigInt::one());
    Ok(pow_rational(&r, (d - 1) as u64))
}

use num_traits::One;

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

#[derive(Debug, Clone)]
pub struct Lemma25Report {
    pub d: u32,
    pub closed_form: BigRational,
    pub numeric_max: f64,
    /// Largest deviation of the numeric argmax from the uniform point.
    pub argmax_uniform_deviation: f64,
}

/// Numerically maximize the objective over the simplex by exponentiated
/// gradient ascent from the uniform point and a handful of deterministic
/// perturbed starts, then compare with the closed form.
pub fn lemma25_max(d: u32) -> Result<Lemma25Report> {
    let closed = lemma25_closed_form(d)?;
    let m = (1usize << d) - 1;

    let mut best = f64::NEG_INFINITY;
    let mut best_p: Vec<f64> = Vec::new();
    let starts = 6u64;
    for s in 0..starts {
        let mut p: Vec<f64> = if s == 0 {
            vec![1.0 / m as f64; m]
        } else {
            let mut state = 0x9e3779b97f4a7c15u64.wrapping_mul(s);
            let mut p: Vec<f64> = (0..m)
                .map(|_| {
                    state = splitmix64(state);
                    // strictly positive weights
                    (state >> 11) as f64 / (1u64 << 53) as f64 + 1e-3
                })
                .collect();
            let total: f64 = p.iter().sum();
            for x in &mut p {
                *x /= total;
            }
            p
        };
        let value = ascend(&mut p, d);
        if value > best {
            best = value;
            best_p = p;
        }
    }

    let uniform = 1.0 / m as f64;
    let dev = best_p
        .iter()
        .map(|&x| (x - uniform).abs())
        .fold(0.0, f64::max);

    Ok(Lemma25Report {
        d,
        closed_form: closed,
        numeric_max: best,
        argmax_uniform_deviation: dev,
    })
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

fn objective(p: &[f64], d: u32) -> f64 {
    p.iter().map(|&x| x * (1.0 - x).powi(d as i32 - 1)).sum()
}

fn ascend(p: &mut [f64], d: u32) -> f64 {
    let e = d as i32 - 1;
    let eta = 0.5;
    let mut value = objective(p, d);
    for _ in 0..60_000 {
        let grad: Vec<f64> = p
            .iter()
            .map(|&x| (1.0 - x).powi(e) - e as f64 * x * (1.0 - x).powi(e - 1))
            .collect();
        let mut total = 0.0;
        for (x, g) in p.iter_mut().zip(&grad) {
            *x *= (eta * g).exp();
            total += *x;
        }
        for x in p.iter_mut() {
            *x /= total;
        }
        let next = objective(p, d);
        if (next - value).abs() < 1e-16 {
            value = next;
            break;
        }
        value = next;
    }
    value
}
