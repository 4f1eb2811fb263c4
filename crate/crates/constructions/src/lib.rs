//! Matrix constructions realizing shattering lower bounds.
//!
//! Every construction is registered behind the [`Construction`] trait and
//! selected by name at runtime, so the CLI and the covering-array pipeline
//! share one catalogue. Deterministic constructions are pure functions of
//! their parameters; randomized ones are pure functions of `(parameters,
//! seed)` with independent per-column streams.

mod combine;
mod dual;
mod points;
mod random;
mod recipe;
mod turan;

pub use combine::{product_construction, stack_construction};
pub use dual::{dual_matrix, full_space, surjective_map_count};
pub use points::{codim_complement, F2PointSet};
pub use random::{balanced_random, iid_random};
pub use recipe::{
    lookup, registry, Built, Construction, ConstructionRecipe, RecipeParams,
};
pub use turan::{
    ks_family, max_pairwise_independent, pairwise_independent, turan_construction,
};
