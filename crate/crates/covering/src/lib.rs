//! Covering arrays: strength verification and greedy column deletion.
//!
//! A `(k; d, n, v)`-covering array is a `k x n` matrix over `v` symbols in
//! which every `k x d` submatrix is shattered. Any matrix becomes one after
//! deleting a column from every non-shattered `d`-subset, so the deletion
//! count is bounded by the initial non-shattered count; the greedy
//! max-coverage order used here deletes the column in the most bad subsets
//! and is never worse than that guarantee.

mod pipeline;

pub use pipeline::{ca_pipeline, PipelineReport, Strategy};

use rayon::prelude::*;
use shatter_core::{is_shattered, AlphabetMatrix, Combinations, Error, Result};

/// Witness of a verification failure: a non-shattered column set and the
/// first missing row pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaWitness {
    pub columns: Vec<usize>,
    pub missing_pattern: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaCheck {
    pub ok: bool,
    pub witness: Option<CaWitness>,
}

/// A matrix together with its verified covering strength and the columns
/// deleted to reach it.
#[derive(Debug, Clone)]
pub struct CoveringArray {
    pub matrix: AlphabetMatrix,
    pub strength: usize,
    pub verified: bool,
    pub deletion_log: Vec<usize>,
}

/// Check whether every `k x d` submatrix is shattered. On failure, the
/// witness is the lexicographically first bad column set and its smallest
/// absent pattern.
pub fn verify_ca(m: &AlphabetMatrix, d: usize) -> Result<CaCheck> {
    if d == 0 || d > m.cols() {
        return Err(Error::invalid(format!(
            "strength d={d} must be in [1, {}]",
            m.cols()
        )));
    }
    let n = m.cols();
    let first_bad_prefix = (0..=n - d)
        .into_par_iter()
        .find_first(|&first| prefix_has_bad(m, d, first));
    let first = match first_bad_prefix {
        None => return Ok(CaCheck { ok: true, witness: None }),
        Some(f) => f,
    };
    let mut combos = Combinations::new(n - first - 1, d - 1);
    let mut cols: Vec<usize> = Vec::with_capacity(d);
    while let Some(rest) = combos.next_slice() {
        cols.clear();
        cols.push(first);
        cols.extend(rest.iter().map(|&r| first + 1 + r));
        if !is_shattered(m, &cols)? {
            let missing = first_missing_pattern(m, &cols);
            return Ok(CaCheck {
                ok: false,
                witness: Some(CaWitness {
                    columns: cols,
                    missing_pattern: missing,
                }),
            });
        }
    }
    unreachable!("parallel scan reported a bad prefix");
}

fn prefix_has_bad(m: &AlphabetMatrix, d: usize, first: usize) -> bool {
    let n = m.cols();
    let mut combos = Combinations::new(n - first - 1, d - 1);
    let mut cols: Vec<usize> = Vec::with_capacity(d);
    while let Some(rest) = combos.next_slice() {
        cols.clear();
        cols.push(first);
        cols.extend(rest.iter().map(|&r| first + 1 + r));
        if !is_shattered(m, &cols).unwrap_or(false) {
            return true;
        }
    }
    false
}

/// Smallest pattern (most significant digit = first selected column) that
/// does not occur among the rows restricted to `cols`.
fn first_missing_pattern(m: &AlphabetMatrix, cols: &[usize]) -> Vec<u8> {
    let v = m.v() as usize;
    let d = cols.len();
    let total = v.pow(d as u32);
    let mut seen = vec![false; total];
    for i in 0..m.rows() {
        let mut idx = 0usize;
        for &j in cols {
            idx = idx * v + m.get(i, j) as usize;
        }
        seen[idx] = true;
    }
    let missing = seen.iter().position(|&s| !s).unwrap_or(0);
    let mut digits = vec![0u8; d];
    let mut x = missing;
    for slot in (0..d).rev() {
        digits[slot] = (x % v) as u8;
        x /= v;
    }
    digits
}

/// Outcome of the greedy deletion loop.
#[derive(Debug, Clone)]
pub struct DeletionOutcome {
    pub ca: CoveringArray,
    pub n_initial: usize,
    pub initial_bad: u64,
    /// Set when fewer than `d` columns survive.
    pub degenerate: bool,
}

/// Delete the column participating in the most non-shattered `d`-subsets
/// (ties to the lowest index) until verification passes. Incidence is
/// recomputed incrementally: deleting a column only removes bad subsets,
/// never creates them.
pub fn build_by_deletion(m: &AlphabetMatrix, d: usize) -> Result<DeletionOutcome> {
    if d == 0 || d > m.cols() {
        return Err(Error::invalid(format!(
            "strength d={d} must be in [1, {}]",
            m.cols()
        )));
    }
    let n = m.cols();
    let mut bad: Vec<Vec<usize>> = Vec::new();
    {
        let mut combos = Combinations::new(n, d);
        while let Some(cols) = combos.next_slice() {
            if !is_shattered(m, cols)? {
                bad.push(cols.to_vec());
            }
        }
    }
    let initial_bad = bad.len() as u64;
    let mut alive = vec![true; n];
    let mut deletions: Vec<usize> = Vec::new();

    while !bad.is_empty() {
        let mut degree = vec![0u64; n];
        for subset in &bad {
            for &c in subset {
                degree[c] += 1;
            }
        }
        let victim = degree
            .iter()
            .enumerate()
            .filter(|&(c, _)| alive[c])
            .max_by(|a, b| a.1.cmp(b.1).then_with(|| b.0.cmp(&a.0)))
            .map(|(c, _)| c)
            .expect("bad subsets only reference live columns");
        alive[victim] = false;
        deletions.push(victim);
        bad.retain(|subset| !subset.contains(&victim));
    }
    debug_assert!(deletions.len() as u64 <= initial_bad);

    let survivors: Vec<usize> = (0..n).filter(|&c| alive[c]).collect();
    let degenerate = survivors.len() < d;
    let (matrix, verified) = if degenerate {
        (m.clone(), false)
    } else {
        let sub = m.select_columns(&survivors)?;
        let check = verify_ca(&sub, d)?;
        (sub, check.ok)
    };
    Ok(DeletionOutcome {
        ca: CoveringArray {
            matrix,
            strength: d,
            verified,
            deletion_log: deletions,
        },
        n_initial: n,
        initial_bad,
        degenerate,
    })
}

/// Serialize in the matrix text format plus a trailing strength comment.
pub fn write_ca(ca: &CoveringArray) -> String {
    let mut out = ca.matrix.to_text();
    out.push_str(&format!(
        "# strength {} {}\n",
        ca.strength,
        if ca.verified { "verified" } else { "unverified" }
    ));
    out
}

/// Parse either a plain matrix file or a covering-array file with the
/// trailing comment; returns the matrix and, when present, the declared
/// (strength, verified) pair.
pub fn read_ca(text: &str) -> Result<(AlphabetMatrix, Option<(usize, bool)>)> {
    if let Some(pos) = text.rfind("# strength ") {
        let (matrix_part, comment) = text.split_at(pos);
        let comment = comment.trim_end_matches('\n');
        let fields: Vec<&str> = comment.split(' ').collect();
        if fields.len() != 4 || fields[0] != "#" || fields[1] != "strength" {
            return Err(Error::Parse {
                line: 0,
                msg: "malformed strength comment".into(),
            });
        }
        let d: usize = fields[2].parse().map_err(|_| Error::Parse {
            line: 0,
            msg: "malformed strength value".into(),
        })?;
        let verified = match fields[3] {
            "verified" => true,
            "unverified" => false,
            _ => {
                return Err(Error::Parse {
                    line: 0,
                    msg: "strength comment must end in verified|unverified".into(),
                })
            }
        };
        Ok((AlphabetMatrix::from_text(matrix_part)?, Some((d, verified))))
    } else {
        Ok((AlphabetMatrix::from_text(text)?, None))
    }
}
