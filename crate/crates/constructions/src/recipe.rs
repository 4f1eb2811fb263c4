use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use shatter_core::{AlphabetMatrix, Error, Result};

use crate::{
    balanced_random, codim_complement, dual_matrix, full_space, iid_random, ks_family,
    product_construction, stack_construction, turan_construction,
};

/// Parameter bag shared by every registered construction. Each strategy
/// reads the fields it needs and rejects the call when one is missing.
#[derive(Debug, Clone, Default)]
pub struct RecipeParams {
    pub d: Option<u32>,
    pub r: Option<u32>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub v: Option<u32>,
    pub seed: Option<u64>,
    pub m1: Option<AlphabetMatrix>,
    pub m2: Option<AlphabetMatrix>,
}

impl RecipeParams {
    fn need<T: Copy>(field: Option<T>, name: &str, recipe: &str) -> Result<T> {
        field.ok_or_else(|| Error::invalid(format!("recipe {recipe} requires --{name}")))
    }

    fn need_matrix<'a>(
        field: &'a Option<AlphabetMatrix>,
        name: &str,
        recipe: &str,
    ) -> Result<&'a AlphabetMatrix> {
        field
            .as_ref()
            .ok_or_else(|| Error::invalid(format!("recipe {recipe} requires --{name}")))
    }
}

/// A claimed lower bound on the shattered `d`-subset count of the emitted
/// matrix, stored as an exact rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimedCount {
    pub d: u32,
    pub count: BigRational,
}

/// Record of which construction produced a matrix and with which
/// parameters.
#[derive(Debug, Clone)]
pub struct ConstructionRecipe {
    pub name: String,
    pub parameters: Vec<(String, String)>,
    pub claimed_count: Option<ClaimedCount>,
}

impl ConstructionRecipe {
    /// Key-value text report; claimed counts render as exact `p/q`.
    pub fn to_report(&self) -> String {
        let mut out = format!("name {}\n", self.name);
        for (key, value) in &self.parameters {
            out.push_str(&format!("{key} {value}\n"));
        }
        if let Some(claim) = &self.claimed_count {
            out.push_str(&format!("claimed-d {}\n", claim.d));
            out.push_str(&format!(
                "claimed-count {}/{}\n",
                claim.count.numer(),
                claim.count.denom()
            ));
        }
        out
    }
}

/// A built matrix together with its recipe.
#[derive(Debug, Clone)]
pub struct Built {
    pub matrix: AlphabetMatrix,
    pub recipe: ConstructionRecipe,
}

/// One interchangeable construction strategy, registered by name.
pub trait Construction: Sync {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    fn build(&self, params: &RecipeParams) -> Result<Built>;
}

/// Product over i of (2^d - 2^i) for i in 0..d, as an exact integer.
fn surjective_full_count(d: u32) -> BigInt {
    let mut acc = BigInt::one();
    let pow = BigInt::from(1u64) << d;
    for i in 0..d {
        acc *= &pow - (BigInt::one() << i);
    }
    acc
}

fn factorial(d: u32) -> BigInt {
    (1..=d as u64).map(BigInt::from).fold(BigInt::one(), |a, b| a * b)
}

struct FullSpace;

impl Construction for FullSpace {
    fn name(&self) -> &'static str {
        "full-space"
    }

    fn describe(&self) -> &'static str {
        "dual matrix of the full d-dimensional binary space (needs --d)"
    }

    fn build(&self, p: &RecipeParams) -> Result<Built> {
        let d = RecipeParams::need(p.d, "d", self.name())?;
        let matrix = full_space(d)?;
        let claim = BigRational::new(surjective_full_count(d), factorial(d));
        Ok(Built {
            matrix,
            recipe: ConstructionRecipe {
                name: self.name().into(),
                parameters: vec![("d".into(), d.to_string())],
                claimed_count: Some(ClaimedCount { d, count: claim }),
            },
        })
    }
}

struct Codim;

impl Construction for Codim {
    fn name(&self) -> &'static str {
        "codim"
    }

    fn describe(&self) -> &'static str {
        "dual matrix of the complement of a codimension subspace (needs --d, --r)"
    }

    fn build(&self, p: &RecipeParams) -> Result<Built> {
        let d = RecipeParams::need(p.d, "d", self.name())?;
        let r = RecipeParams::need(p.r, "r", self.name())?;
        let s = codim_complement(d, r)?;
        let matrix = dual_matrix(&s, d)?;
        // surjective maps: 2^d (2 - 2^-r) prod_i (2^d - 2^i); shattered
        // count is that over d!
        let two_minus = BigRational::new(BigInt::from((1u64 << (r + 1)) - 1), BigInt::one() << r);
        let claim = two_minus * BigRational::new(
            surjective_full_count(d) * (BigInt::one() << d),
            factorial(d),
        );
        Ok(Built {
            matrix,
            recipe: ConstructionRecipe {
                name: self.name().into(),
                parameters: vec![("d".into(), d.to_string()), ("r".into(), r.to_string())],
                claimed_count: Some(ClaimedCount { d, count: claim }),
            },
        })
    }
}

struct Turan;

impl Construction for Turan {
    fn name(&self) -> &'static str {
        "turan"
    }

    fn describe(&self) -> &'static str {
        "pair-extremal construction from the pairwise independent family (needs --n, --k)"
    }

    fn build(&self, p: &RecipeParams) -> Result<Built> {
        let n = RecipeParams::need(p.n, "n", self.name())?;
        let k = RecipeParams::need(p.k, "k", self.name())?;
        let matrix = turan_construction(n, k)?;
        let w = ks_family(k)?.len();
        // t(n, w) = (n^2 - sum class_i^2) / 2 over the materialized classes
        let mut sq = 0u128;
        for i in 0..w {
            let s = ((n + i) / w) as u128;
            sq += s * s;
        }
        let t = ((n as u128 * n as u128 - sq) / 2) as u64;
        Ok(Built {
            matrix,
            recipe: ConstructionRecipe {
                name: self.name().into(),
                parameters: vec![("n".into(), n.to_string()), ("k".into(), k.to_string())],
                claimed_count: Some(ClaimedCount {
                    d: 2,
                    count: BigRational::from_integer(BigInt::from(t)),
                }),
            },
        })
    }
}

struct Ks;

impl Construction for Ks {
    fn name(&self) -> &'static str {
        "ks"
    }

    fn describe(&self) -> &'static str {
        "pairwise independent family as an indicator matrix (needs --k)"
    }

    fn build(&self, p: &RecipeParams) -> Result<Built> {
        let k = RecipeParams::need(p.k, "k", self.name())?;
        let fam = ks_family(k)?;
        let matrix = fam.to_matrix()?;
        Ok(Built {
            matrix,
            recipe: ConstructionRecipe {
                name: self.name().into(),
                parameters: vec![
                    ("k".into(), k.to_string()),
                    ("family-size".into(), fam.len().to_string()),
                ],
                claimed_count: None,
            },
        })
    }
}

struct Product;

impl Construction for Product {
    fn name(&self) -> &'static str {
        "product"
    }

    fn describe(&self) -> &'static str {
        "symbol-pair product of two matrices (needs --m1, --m2)"
    }

    fn build(&self, p: &RecipeParams) -> Result<Built> {
        let m1 = RecipeParams::need_matrix(&p.m1, "m1", self.name())?;
        let m2 = RecipeParams::need_matrix(&p.m2, "m2", self.name())?;
        let matrix = product_construction(m1, m2)?;
        Ok(Built {
            matrix,
            recipe: ConstructionRecipe {
                name: self.name().into(),
                parameters: vec![
                    ("v1".into(), m1.v().to_string()),
                    ("v2".into(), m2.v().to_string()),
                ],
                claimed_count: None,
            },
        })
    }
}

struct Stack;

impl Construction for Stack {
    fn name(&self) -> &'static str {
        "stack"
    }

    fn describe(&self) -> &'static str {
        "row stacking over the column product (needs --m1, --m2)"
    }

    fn build(&self, p: &RecipeParams) -> Result<Built> {
        let m1 = RecipeParams::need_matrix(&p.m1, "m1", self.name())?;
        let m2 = RecipeParams::need_matrix(&p.m2, "m2", self.name())?;
        let matrix = stack_construction(m1, m2)?;
        Ok(Built {
            matrix,
            recipe: ConstructionRecipe {
                name: self.name().into(),
                parameters: vec![("v".into(), m1.v().to_string())],
                claimed_count: None,
            },
        })
    }
}

struct Iid;

impl Construction for Iid {
    fn name(&self) -> &'static str {
        "iid"
    }

    fn describe(&self) -> &'static str {
        "i.i.d. uniform entries (needs --k, --n, --v, --seed)"
    }

    fn build(&self, p: &RecipeParams) -> Result<Built> {
        let k = RecipeParams::need(p.k, "k", self.name())?;
        let n = RecipeParams::need(p.n, "n", self.name())?;
        let v = RecipeParams::need(p.v, "v", self.name())?;
        let seed = RecipeParams::need(p.seed, "seed", self.name())?;
        let matrix = iid_random(k, n, v, seed)?;
        Ok(Built {
            matrix,
            recipe: ConstructionRecipe {
                name: self.name().into(),
                parameters: vec![
                    ("k".into(), k.to_string()),
                    ("n".into(), n.to_string()),
                    ("v".into(), v.to_string()),
                    ("seed".into(), seed.to_string()),
                ],
                claimed_count: None,
            },
        })
    }
}

struct Balanced;

impl Construction for Balanced {
    fn name(&self) -> &'static str {
        "balanced"
    }

    fn describe(&self) -> &'static str {
        "uniformly random balanced columns (needs --k, --n, --v, --seed; v | k)"
    }

    fn build(&self, p: &RecipeParams) -> Result<Built> {
        let k = RecipeParams::need(p.k, "k", self.name())?;
        let n = RecipeParams::need(p.n, "n", self.name())?;
        let v = RecipeParams::need(p.v, "v", self.name())?;
        let seed = RecipeParams::need(p.seed, "seed", self.name())?;
        let matrix = balanced_random(k, n, v, seed)?;
        Ok(Built {
            matrix,
            recipe: ConstructionRecipe {
                name: self.name().into(),
                parameters: vec![
                    ("k".into(), k.to_string()),
                    ("n".into(), n.to_string()),
                    ("v".into(), v.to_string()),
                    ("seed".into(), seed.to_string()),
                ],
                claimed_count: None,
            },
        })
    }
}

static REGISTRY: &[&dyn Construction] = &[
    &FullSpace,
    &Codim,
    &Turan,
    &Ks,
    &Product,
    &Stack,
    &Iid,
    &Balanced,
];

/// All registered constructions in catalogue order.
pub fn registry() -> &'static [&'static dyn Construction] {
    REGISTRY
}

/// Find a construction by its registered name.
pub fn lookup(name: &str) -> Option<&'static dyn Construction> {
    REGISTRY.iter().copied().find(|c| c.name() == name)
}
