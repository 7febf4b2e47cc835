//! The rational limit of the sigma function: the Schur-Weierstrass polynomial
//! sigma(w1, w3, w5), the functions F2, F4, F5, F7 on its zero set, and series
//! solutions of the two systems with zero parameters.

pub mod ffun;
pub mod gseries;
pub mod lkl;
pub mod ratfun;
pub mod seeds;
pub mod sigma;

pub use ffun::{
    f_closed, f_closed_with, f_defs, f_defs_series, f_ratios, ClosedForm, CLOSED_FORMS, F_RATIO_NAMES,
    PRINTED_CLOSED_FORMS,
};
pub use gseries::{
    example1_coefficients, example2_closed_forms, example2_expected, example2_state, example3_closed_forms,
    example3_curve, example3_expected, example3_state, g_series, series_residuals, verify_series_solution,
    Example3Forms, GSeries, SeriesResidual,
};
pub use lkl::{check_lkl_commutators, lkl_bracket, BracketResidual, LOperator, COMMUTING_PAIRS};
pub use ratfun::RatFun3;
pub use seeds::{denominators_are_3_5_smooth, p_field, q_field, solve_phi, SeedKind, SeedSpec};
pub use sigma::{w_universe, SigmaSW, PARTIAL_TEXTS, SIGMA_TEXT};
