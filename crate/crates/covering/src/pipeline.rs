use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;
use shatter_bounds::{c_d_formula, covering_existence, random_bound};
use shatter_core::{binomial, AlphabetMatrix, Error, Result};
use shatter_constructions::{
    balanced_random, codim_complement, dual_matrix, full_space, iid_random, product_construction,
};

use crate::{build_by_deletion, CoveringArray};

/// Base-matrix strategy for the covering-array pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Strategy {
    FullSpace,
    Codim { r: u32 },
    Product,
    Iid,
    Balanced,
}

impl Strategy {
    pub fn parse(name: &str, r: Option<u32>) -> Result<Self> {
        match name {
            "full-space" => Ok(Strategy::FullSpace),
            "codim" => Ok(Strategy::Codim { r: r.unwrap_or(1) }),
            "product" => Ok(Strategy::Product),
            "iid" => Ok(Strategy::Iid),
            "balanced" => Ok(Strategy::Balanced),
            other => Err(Error::invalid(format!("unknown strategy {other}"))),
        }
    }

    fn name(&self) -> String {
        match self {
            Strategy::FullSpace => "full-space".into(),
            Strategy::Codim { r } => format!("codim(r={r})"),
            Strategy::Product => "product".into(),
            Strategy::Iid => "iid".into(),
            Strategy::Balanced => "balanced".into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PipelineReport {
    pub strategy: String,
    pub d: usize,
    pub v: u32,
    pub target_n: usize,
    pub k: usize,
    pub n_initial: usize,
    pub n_final: usize,
    pub deletions: usize,
    pub initial_bad: u64,
    /// Column count promised by the existence certificate, when one exists.
    pub predicted_n: Option<u64>,
    /// Whether the verified array reaches the requested width.
    pub achieved: bool,
}

/// Construct a base matrix per strategy, run greedy deletion, and report
/// the outcome against the existence bound. A missed target is a reported
/// shortfall (`achieved = false`), not an error.
pub fn ca_pipeline(
    d: usize,
    v: u32,
    target_n: usize,
    strategy: &Strategy,
    seed: Option<u64>,
) -> Result<(CoveringArray, PipelineReport)> {
    if d == 0 {
        return Err(Error::invalid("strength must be positive"));
    }
    if target_n < d {
        return Err(Error::invalid("target width below the strength"));
    }
    let (base, c_lower): (AlphabetMatrix, Option<BigRational>) = match strategy {
        Strategy::FullSpace => {
            require_binary(v, "full-space")?;
            let c = c_d_formula(d as u32)?;
            (full_space(d as u32)?, Some(c))
        }
        Strategy::Codim { r } => {
            require_binary(v, "codim")?;
            let s = codim_complement(d as u32, *r)?;
            let c = shatter_bounds::codim_bound(d as u32, *r)?
                .value
                .rational()
                .cloned();
            (dual_matrix(&s, d as u32)?, c)
        }
        Strategy::Product => {
            // v must be a power of two: fold products of binary solutions
            let m = v.trailing_zeros();
            if v < 4 || v != 1 << m {
                return Err(Error::invalid(
                    "the product strategy builds alphabets that are powers of two, v >= 4",
                ));
            }
            let factor = full_space(d as u32)?;
            let mut acc = factor.clone();
            let mut c = c_d_formula(d as u32)?;
            for _ in 1..m {
                acc = product_construction(&acc, &factor)?;
                c *= c_d_formula(d as u32)?;
            }
            (acc, Some(c))
        }
        Strategy::Iid => {
            let seed = seed.ok_or_else(|| Error::invalid("the iid strategy requires --seed"))?;
            let (k, n_init, c) = size_for_target(d, v, target_n, 1)?;
            (iid_random(k, n_init, v, seed)?, c)
        }
        Strategy::Balanced => {
            let seed =
                seed.ok_or_else(|| Error::invalid("the balanced strategy requires --seed"))?;
            let (k, n_init, c) = size_for_target(d, v, target_n, v as usize)?;
            (balanced_random(k, n_init, v, seed)?, c)
        }
    };

    let outcome = build_by_deletion(&base, d)?;
    let predicted = match (&c_lower, d >= 2) {
        (Some(c), true) => covering_existence(target_n as u64, d as u32, v, 2.0, Some(c))?
            .guaranteed_n
            .as_ref()
            .and_then(BigUint::to_u64),
        _ => None,
    };
    let n_final = if outcome.degenerate {
        0
    } else {
        outcome.ca.matrix.cols()
    };
    let report = PipelineReport {
        strategy: strategy.name(),
        d,
        v,
        target_n,
        k: base.rows(),
        n_initial: outcome.n_initial,
        n_final,
        deletions: outcome.ca.deletion_log.len(),
        initial_bad: outcome.initial_bad,
        predicted_n: predicted,
        achieved: outcome.ca.verified && n_final >= target_n,
    };
    Ok((outcome.ca, report))
}

fn require_binary(v: u32, name: &str) -> Result<()> {
    if v != 2 {
        return Err(Error::invalid(format!(
            "the {name} strategy produces binary arrays; got v={v}"
        )));
    }
    Ok(())
}

/// Choose the row count whose density bound certifies the target width,
/// and a starting width with enough slack for the expected deletions.
fn size_for_target(
    d: usize,
    v: u32,
    target_n: usize,
    k_step: usize,
) -> Result<(usize, usize, Option<BigRational>)> {
    let k_cap = 4096usize;
    let mut k = (v as usize).pow(d as u32).max(k_step);
    k = k.div_ceil(k_step) * k_step;
    let mut fallback = None;
    while k <= k_cap {
        let c = random_bound(k as u64, d as u32, v)?;
        let c_rat = c.value.rational().cloned().expect("random bound is rational");
        if c_rat > BigRational::from_integer(0.into()) {
            // smallest m >= target with m - (1 - c) C(m, d) >= target
            let one_minus = BigRational::one() - &c_rat;
            for m in target_n..=(4 * target_n + 64) {
                let expected_bad = &one_minus
                    * BigRational::from_integer(
                        binomial(m as u64, d as u64).into(),
                    );
                let slack = BigRational::from_integer((m as u64).into()) - expected_bad;
                if slack >= BigRational::from_integer((target_n as u64).into()) {
                    return Ok((k, m, Some(c_rat)));
                }
            }
            fallback = Some((k, c_rat));
        }
        k += k_step.max(1);
    }
    // shortfall path: best effort at the cap
    let (k, c) = match fallback {
        Some((k, c)) => (k, Some(c)),
        None => (k_cap, None),
    };
    Ok((k, target_n.max(d), c))
}
