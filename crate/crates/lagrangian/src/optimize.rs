use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use shatter_core::{Combinations, Error, Result};

use crate::eval::{is_edge, lagrangian_value_exact};

/// Which patterns are admitted as hypergraph vertices.
///
/// For `k = 2^d` the optimum is supported on balanced patterns, so
/// `BalancedOnly` is lossless there; for other `k` it is a clearly labeled
/// heuristic speedup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexRestriction {
    All,
    BalancedOnly,
    Custom(Vec<u64>),
}

#[derive(Debug, Clone)]
pub struct OptimizerConfig {
    pub restarts: u32,
    pub iterations: u32,
    pub seed: u64,
    pub restriction: VertexRestriction,
    pub round_denominator: Option<u64>,
}

impl OptimizerConfig {
    pub fn new(seed: u64) -> Self {
        OptimizerConfig {
            restarts: 6,
            iterations: 600,
            seed,
            restriction: VertexRestriction::All,
            round_denominator: None,
        }
    }
}

/// Strictly positive weights on distinct patterns, summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    entries: Vec<(u64, f64)>,
}

impl WeightVector {
    pub fn new(entries: Vec<(u64, f64)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::invalid("weight vector needs at least one entry"));
        }
        let mut pats: Vec<u64> = entries.iter().map(|e| e.0).collect();
        pats.sort_unstable();
        if pats.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("support patterns must be distinct"));
        }
        if entries.iter().any(|e| !e.1.is_finite() || e.1 <= 0.0) {
            return Err(Error::invalid("weights must be positive and finite"));
        }
        let sum = kahan_sum(entries.iter().map(|e| e.1));
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::invalid(format!("weights sum to {sum}, not 1")));
        }
        Ok(WeightVector { entries })
    }

    pub fn entries(&self) -> &[(u64, f64)] {
        &self.entries
    }
}

/// Weights snapped to the grid `Z / denominator`, with the polynomial value
/// recomputed in exact rational arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalCertificate {
    pub denominator: u64,
    /// (pattern, numerator) pairs; the weight of a pattern is
    /// `numerator / denominator`.
    pub weights: Vec<(u64, u64)>,
    pub value: BigRational,
}

#[derive(Debug, Clone)]
pub struct LagrangianResult {
    pub value: f64,
    pub weights: WeightVector,
    pub rounded: Option<RationalCertificate>,
    pub iterations: u32,
    pub restarts: u32,
    pub seed: u64,
}

pub(crate) struct Evaluation {
    pub p: f64,
    pub grads: Vec<f64>,
    /// bit (i * s + j) set when support patterns i < j share an edge
    pub covered: Option<Vec<u64>>,
}

/// One pass over the `d`-subsets of the support: the polynomial value, all
/// partial derivatives, and optionally which support pairs co-occur in an
/// edge.
pub(crate) fn evaluate(
    support: &[(u64, f64)],
    k: u32,
    d: usize,
    want_coverage: bool,
) -> Evaluation {
    let s = support.len();
    let mut grads = vec![0.0f64; s];
    let mut covered = if want_coverage {
        Some(vec![0u64; (s * s).div_ceil(64)])
    } else {
        None
    };
    let mut p = 0.0f64;
    if d <= s {
        let mut combos = Combinations::new(s, d);
        let mut pats: Vec<u64> = vec![0; d];
        let mut ws: Vec<f64> = vec![0.0; d];
        while let Some(idx) = combos.next_slice() {
            for (slot, &i) in idx.iter().enumerate() {
                pats[slot] = support[i].0;
                ws[slot] = support[i].1;
            }
            if !is_edge(&pats, k) {
                continue;
            }
            let mut prod = 1.0;
            for &w in &ws {
                prod *= w;
            }
            p += prod;
            for (slot, &i) in idx.iter().enumerate() {
                let mut others = 1.0;
                for (q, &w) in ws.iter().enumerate() {
                    if q != slot {
                        others *= w;
                    }
                }
                grads[i] += others;
            }
            if let Some(bits) = covered.as_mut() {
                for a in 0..d {
                    for b in a + 1..d {
                        let (i, j) = (idx[a], idx[b]);
                        let pos = i * s + j;
                        bits[pos / 64] |= 1 << (pos % 64);
                    }
                }
            }
        }
    }
    Evaluation { p, grads, covered }
}

const WEIGHT_FLOOR: f64 = 1e-12;

/// Compensated summation; the simplex invariant is checked at 1e-12, which
/// naive accumulation cannot guarantee on large supports.
fn kahan_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut carry = 0.0f64;
    for v in values {
        let y = v - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Multiplicative ascent step `w <- w * grad / sum(w * grad)`; floors tiny
/// weights away. Returns false when the gradient field vanishes.
pub(crate) fn replicator_step(support: &mut Vec<(u64, f64)>, grads: &[f64]) -> bool {
    let tot: f64 = support
        .iter()
        .zip(grads)
        .map(|((_, w), g)| w * g)
        .sum();
    if !tot.is_finite() || tot <= 0.0 {
        return false;
    }
    for ((_, w), g) in support.iter_mut().zip(grads) {
        *w = *w * g / tot;
    }
    support.retain(|&(_, w)| w > WEIGHT_FLOOR);
    let sum = kahan_sum(support.iter().map(|e| e.1));
    if !sum.is_finite() || sum <= 0.0 {
        return false;
    }
    for e in support.iter_mut() {
        e.1 /= sum;
    }
    true
}

/// Find one support pair contained in no common edge and shift all weight
/// to the endpoint with the larger partial derivative (ties zero the
/// lexicographically larger pattern). The objective is linear along the
/// shift, so it never decreases and is preserved exactly on ties.
pub(crate) fn reduce_support_once(
    support: &mut Vec<(u64, f64)>,
    ev: &Evaluation,
) -> bool {
    let s = support.len();
    let bits = match &ev.covered {
        Some(b) => b,
        None => return false,
    };
    for i in 0..s {
        for j in i + 1..s {
            let pos = i * s + j;
            if bits[pos / 64] >> (pos % 64) & 1 == 1 {
                continue;
            }
            // uncovered pair: keep the larger-gradient endpoint
            let (keep, drop_) = if ev.grads[i] > ev.grads[j] {
                (i, j)
            } else if ev.grads[j] > ev.grads[i] {
                (j, i)
            } else if support[i].0 < support[j].0 {
                (i, j)
            } else {
                (j, i)
            };
            let moved = support[drop_].1;
            support[keep].1 += moved;
            support.remove(drop_);
            return true;
        }
    }
    false
}

struct RestartOutcome {
    index: u32,
    value: f64,
    support: Vec<(u64, f64)>,
    iterations: u32,
}

fn run_restart(
    index: u32,
    mut support: Vec<(u64, f64)>,
    k: u32,
    d: usize,
    max_iterations: u32,
) -> RestartOutcome {
    let mut used = 0u32;
    'outer: loop {
        // replicator phase
        let mut stall = 0u32;
        let mut prev = -1.0f64;
        while used < max_iterations {
            let ev = evaluate(&support, k, d, false);
            used += 1;
            if ev.p <= prev + 1e-14 * prev.abs().max(1e-30) {
                stall += 1;
                if stall >= 3 {
                    break;
                }
            } else {
                stall = 0;
            }
            prev = ev.p;
            if !replicator_step(&mut support, &ev.grads) {
                break;
            }
        }
        // support-reduction phase
        let mut reduced_any = false;
        loop {
            let ev = evaluate(&support, k, d, true);
            used += 1;
            if ev.p == 0.0 {
                // weights are strictly positive, so a zero value means the
                // support spans no edge at all; nothing to shift
                break;
            }
            if !reduce_support_once(&mut support, &ev) {
                break;
            }
            reduced_any = true;
            if used >= max_iterations {
                break 'outer;
            }
        }
        if !reduced_any || used >= max_iterations {
            break;
        }
    }
    let value = evaluate(&support, k, d, false).p;
    RestartOutcome {
        index,
        value,
        support,
        iterations: used,
    }
}

fn vertex_list(k: u32, restriction: &VertexRestriction) -> Result<Vec<u64>> {
    if k == 0 || k > 63 {
        return Err(Error::invalid("k must be in [1, 63]"));
    }
    match restriction {
        VertexRestriction::All => {
            if k > 20 {
                return Err(Error::BudgetExceeded {
                    what: format!("full vertex set of 2^{k} patterns"),
                    required: 1u128 << k,
                    limit: 1 << 20,
                });
            }
            Ok((0..1u64 << k).collect())
        }
        VertexRestriction::BalancedOnly => {
            if k > 30 {
                return Err(Error::BudgetExceeded {
                    what: "balanced vertex set".into(),
                    required: 1u128 << k,
                    limit: 1 << 30,
                });
            }
            let lo = k / 2;
            let hi = k.div_ceil(2);
            Ok((0..1u64 << k)
                .filter(|p| {
                    let ones = p.count_ones();
                    ones == lo || ones == hi
                })
                .collect())
        }
        VertexRestriction::Custom(pats) => {
            let mut v: Vec<u64> = pats.clone();
            v.sort_unstable();
            v.dedup();
            if v.is_empty() {
                return Err(Error::invalid("custom vertex set is empty"));
            }
            if let Some(&bad) = v.iter().find(|&&p| p >= 1u64 << k) {
                return Err(Error::invalid(format!("pattern {bad:#b} exceeds {k} bits")));
            }
            Ok(v)
        }
    }
}

/// The dual columns of the full `d`-space, embedded into `k` bits by
/// appending constant rows chosen to keep each pattern balanced. A
/// warm-start restart from this support begins at the extremal value
/// `c_d / d!` whenever `k >= 2^d`.
fn embedded_full_space(k: u32, d: usize) -> Option<Vec<u64>> {
    let dd = 1u32 << d;
    if k < dd || d < 1 {
        return None;
    }
    let extra = k - dd;
    let extra_ones = extra / 2;
    let mut pats = Vec::with_capacity((dd - 1) as usize);
    for u in 1..dd as u64 {
        let mut p = 0u64;
        for v in 0..dd as u64 {
            if ((u & v).count_ones() & 1) == 1 {
                p |= 1 << v;
            }
        }
        for e in 0..extra_ones {
            p |= 1 << (dd + e);
        }
        pats.push(p);
    }
    Some(pats)
}

/// Best local maximum of the Lagrangian polynomial of `H(k, d)` over the
/// admitted vertex set, across seeded restarts run in parallel. Restart 0
/// warm-starts from the embedded extremal support when available; even
/// restarts start from dense random weights, odd restarts from a sparse
/// random support. Deterministic for a fixed `(seed, restarts)` at any
/// worker count.
pub fn maximize_lagrangian(k: u32, d: usize, config: &OptimizerConfig) -> Result<LagrangianResult> {
    if d == 0 || d > 6 {
        return Err(Error::invalid("supported subset sizes are 1..=6"));
    }
    if config.restarts == 0 || config.iterations == 0 {
        return Err(Error::invalid("restarts and iterations must be positive"));
    }
    let vertices = vertex_list(k, &config.restriction)?;
    let per_iteration = shatter_core::binomial_u128(vertices.len() as u64, d as u64);
    const EVALUATION_BUDGET: u128 = 200_000_000;
    if per_iteration > EVALUATION_BUDGET {
        return Err(Error::BudgetExceeded {
            what: format!(
                "subset enumeration C({}, {d}) per ascent iteration",
                vertices.len()
            ),
            required: per_iteration,
            limit: EVALUATION_BUDGET as u64,
        });
    }
    let vertex_set: std::collections::HashSet<u64> = vertices.iter().copied().collect();
    let warm = embedded_full_space(k, d)
        .filter(|pats| pats.iter().all(|p| vertex_set.contains(p)));

    let outcomes: Vec<RestartOutcome> = (0..config.restarts)
        .into_par_iter()
        .map(|r| {
            let init: Vec<(u64, f64)> = if let (0, Some(pats)) = (r, warm.as_ref()) {
                let w = 1.0 / pats.len() as f64;
                pats.iter().map(|&p| (p, w)).collect()
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
                rng.set_stream(r as u64);
                let chosen: Vec<u64> = if r % 2 == 1 {
                    // sparse restart: a random subset of the vertices
                    let want = ((3usize << d).max(d + 1)).min(vertices.len());
                    let mut picks = vertices.clone();
                    for i in 0..want {
                        let j = rng.gen_range(i..picks.len());
                        picks.swap(i, j);
                    }
                    let mut sel = picks[..want].to_vec();
                    sel.sort_unstable();
                    sel
                } else {
                    vertices.clone()
                };
                let mut init: Vec<(u64, f64)> = chosen
                    .into_iter()
                    .map(|p| {
                        let u: f64 = rng.gen_range(1e-12..1.0);
                        (p, -u.ln())
                    })
                    .collect();
                let sum: f64 = init.iter().map(|e| e.1).sum();
                for e in init.iter_mut() {
                    e.1 /= sum;
                }
                init
            };
            run_restart(r, init, k, d, config.iterations)
        })
        .collect();

    let best = outcomes
        .into_iter()
        .max_by(|a, b| {
            a.value
                .total_cmp(&b.value)
                .then_with(|| b.index.cmp(&a.index))
        })
        .expect("at least one restart");

    let mut support = best.support;
    support.sort_by_key(|e| e.0);
    let sum = kahan_sum(support.iter().map(|e| e.1));
    if sum > 0.0 {
        for e in support.iter_mut() {
            e.1 /= sum;
        }
    }
    let rounded = match config.round_denominator {
        Some(denom) if denom > 0 && !support.is_empty() => {
            Some(round_to_grid(&support, denom, k, d))
        }
        _ => None,
    };

    Ok(LagrangianResult {
        value: best.value,
        weights: WeightVector::new(support)?,
        rounded,
        iterations: best.iterations,
        restarts: config.restarts,
        seed: config.seed,
    })
}

/// Largest-remainder apportionment onto the grid `Z / denom`, then an
/// exact rational re-evaluation of the polynomial at the snapped point.
fn round_to_grid(support: &[(u64, f64)], denom: u64, k: u32, d: usize) -> RationalCertificate {
    let mut base: Vec<u64> = Vec::with_capacity(support.len());
    let mut fracs: Vec<(usize, f64)> = Vec::with_capacity(support.len());
    let mut assigned = 0u64;
    for (i, &(_, w)) in support.iter().enumerate() {
        let target = w * denom as f64;
        let fl = target.floor().max(0.0) as u64;
        base.push(fl);
        assigned += fl;
        fracs.push((i, target - fl as f64));
    }
    let mut remaining = denom.saturating_sub(assigned);
    fracs.sort_by(|a, b| {
        b.1.total_cmp(&a.1)
            .then_with(|| support[a.0].0.cmp(&support[b.0].0))
    });
    let mut cursor = 0usize;
    while remaining > 0 && !fracs.is_empty() {
        let (i, _) = fracs[cursor % fracs.len()];
        base[i] += 1;
        remaining -= 1;
        cursor += 1;
    }
    let mut weights: Vec<(u64, u64)> = support
        .iter()
        .zip(&base)
        .filter(|(_, &b)| b > 0)
        .map(|(&(p, _), &b)| (p, b))
        .collect();
    weights.sort_by_key(|e| e.0);
    let entries: Vec<(u64, BigRational)> = weights
        .iter()
        .map(|&(p, num)| {
            (
                p,
                BigRational::new(BigInt::from(num), BigInt::from(denom)),
            )
        })
        .collect();
    let value = lagrangian_value_exact(&entries, k, d);
    RationalCertificate {
        denominator: denom,
        weights,
        value,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn ratio_f64(r: &BigRational) -> f64 {
        r.numer().to_f64().unwrap() / r.denom().to_f64().unwrap()
    }

    #[test]
    fn k4_d2_reaches_one_third_with_exact_certificate() {
        let mut config = OptimizerConfig::new(7);
        config.restriction = VertexRestriction::BalancedOnly;
        config.round_denominator = Some(3);
        let res = maximize_lagrangian(4, 2, &config).unwrap();
        assert!((res.value - 1.0 / 3.0).abs() < 1e-9, "value {}", res.value);
        let cert = res.rounded.unwrap();
        assert_eq!(
            cert.value,
            BigRational::new(BigInt::from(1), BigInt::from(3))
        );
        // certificate weights live on the grid and sum to denom
        let total: u64 = cert.weights.iter().map(|e| e.1).sum();
        assert_eq!(total, 3);
    }

    #[test]
    fn k4_d2_all_patterns_converges_balanced() {
        let mut config = OptimizerConfig::new(11);
        config.restriction = VertexRestriction::All;
        let res = maximize_lagrangian(4, 2, &config).unwrap();
        assert!((res.value - 1.0 / 3.0).abs() < 1e-9);
        // converged support: at most 2^d - 1 patterns, all balanced
        assert!(res.weights.entries().len() <= 3);
        for &(p, _) in res.weights.entries() {
            assert_eq!(p.count_ones(), 2, "pattern {p:#06b} not balanced");
        }
    }

    #[test]
    fn k2_d1_is_one() {
        let config = OptimizerConfig::new(3);
        let res = maximize_lagrangian(2, 1, &config).unwrap();
        assert!((res.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rounded_value_never_exceeds_reported() {
        let mut config = OptimizerConfig::new(5);
        config.restriction = VertexRestriction::BalancedOnly;
        config.round_denominator = Some(7);
        let res = maximize_lagrangian(8, 3, &config).unwrap();
        let cert = res.rounded.as_ref().unwrap();
        assert!(ratio_f64(&cert.value) <= res.value + 1e-9);
    }

    #[test]
    fn replicator_never_decreases_objective() {
        // seeded random supports over H(4,2)
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..30 {
            let mut support: Vec<(u64, f64)> = (0..16u64)
                .map(|p| (p, rng.gen_range(0.01..1.0)))
                .collect();
            let sum: f64 = support.iter().map(|e| e.1).sum();
            for e in support.iter_mut() {
                e.1 /= sum;
            }
            for _ in 0..20 {
                let ev = evaluate(&support, 4, 2, false);
                let before = ev.p;
                if !replicator_step(&mut support, &ev.grads) {
                    break;
                }
                let after = evaluate(&support, 4, 2, false).p;
                assert!(after >= before - 1e-12, "{after} < {before}");
            }
        }
    }

    #[test]
    fn support_reduction_preserves_objective_on_ties() {
        // uniform weights on all 6 balanced patterns of H(4,2): the three
        // antipodal pairs are uncovered and all partials are equal
        let pats = [0b0011u64, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100];
        let mut support: Vec<(u64, f64)> = pats.iter().map(|&p| (p, 1.0 / 6.0)).collect();
        let before = evaluate(&support, 4, 2, false).p;
        loop {
            let ev = evaluate(&support, 4, 2, true);
            if !reduce_support_once(&mut support, &ev) {
                break;
            }
            let after = evaluate(&support, 4, 2, false).p;
            assert!((after - before).abs() < 1e-12);
        }
        assert_eq!(support.len(), 3);
        let after = evaluate(&support, 4, 2, false).p;
        assert!((after - 1.0 / 3.0).abs() < 1e-12);
        assert!((before - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn same_seed_same_result() {
        let mut config = OptimizerConfig::new(13);
        config.restriction = VertexRestriction::All;
        config.restarts = 4;
        let a = maximize_lagrangian(4, 2, &config).unwrap();
        let b = maximize_lagrangian(4, 2, &config).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.weights, b.weights);
    }

    #[test]
    fn oversized_vertex_sets_are_resource_errors() {
        let config = OptimizerConfig::new(1);
        let err = maximize_lagrangian(20, 3, &config).unwrap_err();
        assert!(err.is_resource(), "{err}");
    }

    #[test]
    fn custom_restriction_validated() {
        let mut config = OptimizerConfig::new(1);
        config.restriction = VertexRestriction::Custom(vec![1u64 << 40]);
        assert!(maximize_lagrangian(4, 2, &config).is_err());
        config.restriction = VertexRestriction::Custom(vec![]);
        assert!(maximize_lagrangian(4, 2, &config).is_err());
    }
}
