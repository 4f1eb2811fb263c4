//! Closed-form and numeric bounds on shattering densities.
//!
//! Everything closed-form is computed in exact rational arithmetic; floats
//! appear only in the 1-D rate-function minimizer, the simplex ascent, and
//! user-facing formatting. Conjectured values are tagged and refuse to
//! participate in assertions.

mod cover;
mod formulas;
mod gamma;
mod lemma25;
mod minshatter;
mod rate;
mod value;

pub use cover::{covering_existence, CoverReport};
pub use formulas::{
    c_d_formula, c_exact_d2, c_infinity, c_infinity_partial, codim_bound, f_exact_d2,
    kleitman_spencer_w, random_bound, turan_edges,
};
pub use gamma::{
    conjecture_curve, conjectured_gamma_infinity, gamma_lower_table, gamma_staircase, CurvePoint,
    GammaEntry,
};
pub use lemma25::{lemma25_closed_form, lemma25_max, Lemma25Report};
pub use minshatter::{g_construction, g_formula, GFormula, SubsetOrder};
pub use rate::{balanced_rate_beta, BalancedRate, RateFunctionSpec};
pub use value::{big_ratio_to_f64, BoundValue, Kind, Value};
