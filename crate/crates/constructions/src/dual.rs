use shatter_core::{AlphabetMatrix, Budget, Error, Result};

use crate::F2PointSet;

/// The dual matrix of a point set: rows indexed by the points of `S` in
/// ascending mask order, columns by the nonzero dual vectors `u` in
/// ascending mask order, entry `<u, v>` over the binary field.
///
/// A column `d`-subset `{u_1..u_d}` is shattered exactly when the linear
/// map `(u_1..u_d)` is surjective on `S`, so the shattered count equals the
/// number of surjective-on-`S` linear maps divided by `d!`.
pub fn dual_matrix(s: &F2PointSet, d: u32) -> Result<AlphabetMatrix> {
    if d == 0 {
        return Err(Error::invalid("d must be positive"));
    }
    let n = (1u64 << s.dim()) - 1;
    let points = s.points();
    AlphabetMatrix::from_fn(2, points.len(), n as usize, |i, j| {
        let u = (j as u64) + 1;
        ((u & points[i]).count_ones() & 1) as u8
    })
}

/// Dual matrix of the full `d`-dimensional space: the `2^d x (2^d - 1)`
/// matrix attaining the extremal shattered count for `k = 2^d`.
pub fn full_space(d: u32) -> Result<AlphabetMatrix> {
    dual_matrix(&F2PointSet::full(d)?, d)
}

/// Number of linear maps from the ambient space of `s` to the binary
/// `d`-space whose image of `s` covers the whole codomain. Enumerates all
/// `2^(d * dim)` maps.
pub fn surjective_map_count(s: &F2PointSet, d: u32, budget: &Budget) -> Result<u64> {
    if d == 0 {
        return Err(Error::invalid("d must be positive"));
    }
    let dim = s.dim();
    if d > dim {
        // the image of any linear map has dimension at most dim < d
        return Ok(0);
    }
    let exponent = (d as u64) * (dim as u64);
    if exponent > 62 {
        return Err(Error::BudgetExceeded {
            what: format!("map enumeration 2^({d}*{dim})"),
            required: u128::MAX,
            limit: budget.max_enumeration,
        });
    }
    let total = 1u64 << exponent;
    if total as u128 > budget.max_enumeration as u128 {
        return Err(Error::BudgetExceeded {
            what: format!("map enumeration 2^({d}*{dim})"),
            required: total as u128,
            limit: budget.max_enumeration,
        });
    }
    let want_bits = 1u64 << d; // d <= sqrt(62) range here, table fits a word
    if want_bits > 64 {
        return Err(Error::invalid("d too large for the image table"));
    }
    let full: u64 = if want_bits == 64 {
        u64::MAX
    } else {
        (1u64 << want_bits) - 1
    };

    let mut count = 0u64;
    // a map is a tuple of images of the dim basis vectors, packed base 2^d
    let mask = (1u64 << d) - 1;
    for code in 0..total {
        let mut images = [0u64; 24];
        for (b, img) in images.iter_mut().enumerate().take(dim as usize) {
            *img = (code >> (b as u64 * d as u64)) & mask;
        }
        let mut seen = 0u64;
        for &p in s.points() {
            let mut y = 0u64;
            let mut bits = p;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                y ^= images[b];
                bits &= bits - 1;
            }
            seen |= 1 << y;
            if seen == full {
                break;
            }
        }
        if seen == full {
            count += 1;
        }
    }
    Ok(count)
}
