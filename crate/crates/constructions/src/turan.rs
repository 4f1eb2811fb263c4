use shatter_core::{AlphabetMatrix, Error, Result, SetFamily};

/// Extremal pairwise independent family: all subsets of `[k]` of size
/// `floor(k/2)` containing element 1. Its size is `C(k-1, floor(k/2) - 1)`,
/// matching the Kleitman-Spencer maximum.
pub fn ks_family(k: usize) -> Result<SetFamily> {
    if k < 4 {
        return Err(Error::invalid("pairwise independence needs k >= 4"));
    }
    if k > 63 {
        return Err(Error::invalid("ground sets beyond 63 elements unsupported"));
    }
    let half = k / 2;
    let mut members = Vec::new();
    // choose half-1 further elements among {2..k} (bits 1..k-1)
    let mut idx: Vec<usize> = (1..half).collect();
    loop {
        let mut mask = 1u64; // element 1
        for &b in &idx {
            mask |= 1u64 << b;
        }
        members.push(mask);
        // advance combination over 1..k-1
        let m = idx.len();
        if m == 0 {
            break;
        }
        let mut i = m;
        let mut advanced = false;
        while i > 0 {
            i -= 1;
            if idx[i] < k - (m - i) {
                idx[i] += 1;
                for j in i + 1..m {
                    idx[j] = idx[j - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            break;
        }
    }
    members.sort_unstable();
    SetFamily::new(k, members)
}

/// Every pair of distinct members splits the ground set into four nonempty
/// cells.
pub fn pairwise_independent(fam: &SetFamily) -> bool {
    let k = fam.ground_size();
    let full = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let ms = fam.members();
    for i in 0..ms.len() {
        for j in i + 1..ms.len() {
            let (a, b) = (ms[i], ms[j]);
            if a & b == 0 || a & !b & full == 0 || !a & b & full == 0 || !a & !b & full == 0 {
                return false;
            }
        }
    }
    true
}

/// Largest pairwise independent family on `[k]`, found by backtracking,
/// stopping early once `stop_at` is reached. Used to confirm the
/// Kleitman-Spencer extremal size at desk scale.
pub fn max_pairwise_independent(k: usize, stop_at: usize) -> usize {
    assert!((4..=16).contains(&k));
    let full = (1u64 << k) - 1;
    // candidate sets must be compatible with themselves in any pair, which
    // already rules out the empty set and the full set
    let candidates: Vec<u64> = (1..full).collect();
    let compatible = |a: u64, b: u64| {
        a & b != 0 && a & !b & full != 0 && !a & b & full != 0 && !a & !b & full != 0
    };
    fn extend(
        chosen: &mut Vec<u64>,
        start: usize,
        candidates: &[u64],
        compatible: &dyn Fn(u64, u64) -> bool,
        best: &mut usize,
        stop_at: usize,
    ) {
        *best = (*best).max(chosen.len());
        if *best >= stop_at {
            return;
        }
        for i in start..candidates.len() {
            // prune: even taking all remaining candidates cannot beat best
            if chosen.len() + (candidates.len() - i) <= *best {
                return;
            }
            let c = candidates[i];
            if chosen.iter().all(|&x| compatible(x, c)) {
                chosen.push(c);
                extend(chosen, i + 1, candidates, compatible, best, stop_at);
                chosen.pop();
                if *best >= stop_at {
                    return;
                }
            }
        }
    }
    let mut best = 0;
    let mut chosen = Vec::new();
    extend(&mut chosen, 0, &candidates, &compatible, &mut best, stop_at);
    best
}

/// The Turan-extremal binary matrix: the `w = C(k-1, floor(k/2)-1)` column
/// patterns of the Kleitman-Spencer family, repeated with class sizes
/// `floor((n+i)/w)` so the shattered-pair count is exactly `t(n, w)`.
pub fn turan_construction(n: usize, k: usize) -> Result<AlphabetMatrix> {
    if k < 4 {
        return Err(Error::invalid("the pair-extremal construction needs k >= 4"));
    }
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    let fam = ks_family(k)?;
    let w = fam.len();
    let mut columns: Vec<u64> = Vec::with_capacity(n);
    for (i, &mask) in fam.members().iter().enumerate() {
        let class_size = (n + i) / w;
        for _ in 0..class_size {
            columns.push(mask);
        }
    }
    debug_assert_eq!(columns.len(), n);
    AlphabetMatrix::from_fn(2, k, n, |i, j| ((columns[j] >> i) & 1) as u8)
}
