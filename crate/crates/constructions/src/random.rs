use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shatter_core::{AlphabetMatrix, Error, Result, MAX_ALPHABET};

/// Per-column generator: stream `j` of a ChaCha cipher seeded with `seed`,
/// so column `j` does not depend on `n` and columns can be generated in
/// parallel or extended without perturbing earlier ones.
fn column_rng(seed: u64, column: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(column);
    rng
}

/// Matrix with i.i.d. uniform entries, deterministic per seed.
pub fn iid_random(k: usize, n: usize, v: u32, seed: u64) -> Result<AlphabetMatrix> {
    if !(2..=MAX_ALPHABET).contains(&v) {
        return Err(Error::invalid("alphabet size out of range"));
    }
    if k == 0 || n == 0 {
        return Err(Error::invalid("matrix dimensions must be positive"));
    }
    let mut entries = vec![0u8; k * n];
    for j in 0..n {
        let mut rng = column_rng(seed, j as u64);
        for i in 0..k {
            entries[j * k + i] = rng.gen_range(0..v) as u8;
        }
    }
    AlphabetMatrix::new(v, k, n, entries)
}

/// Matrix whose columns are independent uniformly random arrangements of
/// the balanced multiset (each symbol exactly `k / v` times per column).
pub fn balanced_random(k: usize, n: usize, v: u32, seed: u64) -> Result<AlphabetMatrix> {
    if !(2..=MAX_ALPHABET).contains(&v) {
        return Err(Error::invalid("alphabet size out of range"));
    }
    if k == 0 || n == 0 {
        return Err(Error::invalid("matrix dimensions must be positive"));
    }
    if !k.is_multiple_of(v as usize) {
        return Err(Error::invalid(format!(
            "balanced columns need v | k, got k={k}, v={v}"
        )));
    }
    let per = k / v as usize;
    let mut entries = vec![0u8; k * n];
    for j in 0..n {
        let mut rng = column_rng(seed, j as u64);
        let col = &mut entries[j * k..(j + 1) * k];
        for (i, e) in col.iter_mut().enumerate() {
            *e = (i / per) as u8;
        }
        // Fisher-Yates
        for i in (1..k).rev() {
            let t = rng.gen_range(0..=i);
            col.swap(i, t);
        }
    }
    AlphabetMatrix::new(v, k, n, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_matrix() {
        let a = iid_random(8, 20, 2, 42).unwrap();
        let b = iid_random(8, 20, 2, 42).unwrap();
        assert_eq!(a, b);
        let c = iid_random(8, 20, 2, 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn extending_n_preserves_prefix_columns() {
        let a = iid_random(6, 5, 3, 7).unwrap();
        let b = iid_random(6, 9, 3, 7).unwrap();
        for j in 0..5 {
            assert_eq!(a.column(j), b.column(j));
        }
    }

    #[test]
    fn balanced_columns_are_balanced() {
        let m = balanced_random(8, 50, 2, 3).unwrap();
        for j in 0..50 {
            let ones: usize = m.column(j).iter().filter(|&&e| e == 1).count();
            assert_eq!(ones, 4);
        }
        let m = balanced_random(6, 30, 3, 3).unwrap();
        for j in 0..30 {
            for sym in 0..3u8 {
                assert_eq!(m.column(j).iter().filter(|&&e| e == sym).count(), 2);
            }
        }
    }

    #[test]
    fn balanced_requires_divisibility() {
        assert!(balanced_random(7, 5, 2, 0).is_err());
    }

    #[test]
    fn tiny_k_has_no_shattered_pairs() {
        let m = iid_random(2, 5, 2, 11).unwrap();
        let r = shatter_core::count_shattered(&m, 2).unwrap();
        assert_eq!(r.shattered, num_bigint::BigUint::from(0u32));
    }
}
