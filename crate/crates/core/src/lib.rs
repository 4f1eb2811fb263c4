//! Core machinery for counting shattered submatrices.
//!
//! A `k x d` matrix over symbols `{0..v-1}` is *shattered* when every one of
//! the `v^d` possible rows appears among its `k` rows. This crate provides
//! the matrix types, the shattering tests, exact counting over all column
//! `d`-subsets, and small-instance brute-force oracles for the extremal
//! quantities `f(n,k,d)` (maximum shattered count over matrices) and
//! `g(n,k,d)` (minimum over set families of exactly `k` distinct members).
//!
//! All counts are exact integers; densities are exact rationals. Operations
//! are pure and deterministic for any worker count.

mod bitcols;
mod combin;
mod error;
mod family;
mod matrix;
mod oracle;
mod shatter;

pub use bitcols::BitColumns;
pub use combin::{binomial, binomial_u128, falling_factorial, Combinations};
pub use error::{Error, Result};
pub use family::SetFamily;
pub use matrix::AlphabetMatrix;
pub use oracle::{brute_force_f, brute_force_g, Budget};
pub use shatter::{count_shattered, count_shattered_generic, is_shattered, ShatterReport};

/// Largest alphabet accepted anywhere in the workspace.
pub const MAX_ALPHABET: u32 = 256;
