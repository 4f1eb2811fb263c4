use shatter_core::{Error, Result};

/// A set of distinct vectors in the binary vector space of dimension `dim`,
/// each stored as a bit mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F2PointSet {
    dim: u32,
    points: Vec<u64>,
}

impl F2PointSet {
    pub fn new(dim: u32, mut points: Vec<u64>) -> Result<Self> {
        if dim == 0 || dim > 24 {
            return Err(Error::invalid("dimension must be in [1, 24]"));
        }
        if points.is_empty() {
            return Err(Error::invalid("point set must be nonempty"));
        }
        points.sort_unstable();
        points.dedup();
        if let Some(&bad) = points.iter().find(|&&p| p >= 1u64 << dim) {
            return Err(Error::invalid(format!(
                "point {bad:#b} outside the {dim}-dimensional space"
            )));
        }
        Ok(F2PointSet { dim, points })
    }

    /// The whole space of dimension `dim`.
    pub fn full(dim: u32) -> Result<Self> {
        if dim == 0 || dim > 24 {
            return Err(Error::invalid("dimension must be in [1, 24]"));
        }
        Ok(F2PointSet {
            dim,
            points: (0..1u64 << dim).collect(),
        })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// Points in ascending mask order.
    pub fn points(&self) -> &[u64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// The complement of a fixed coordinate subspace: `S = V \ W` where `V` has
/// dimension `d + 1` and `W` is spanned by the first `d - r` standard basis
/// vectors. `|S| = 2^(d+1) - 2^(d-r) = (2 - 2^-r) 2^d`.
///
/// Any `(d - r)`-dimensional subspace works; fixing a coordinate one makes
/// the output deterministic.
pub fn codim_complement(d: u32, r: u32) -> Result<F2PointSet> {
    if r > d {
        return Err(Error::invalid(format!("need r <= d, got r={r}, d={d}")));
    }
    if d + 1 > 24 {
        return Err(Error::invalid("dimension d + 1 must stay within 24"));
    }
    let dim = d + 1;
    let w_size = 1u64 << (d - r);
    let points: Vec<u64> = (w_size..1u64 << dim).collect();
    F2PointSet::new(dim, points)
}
