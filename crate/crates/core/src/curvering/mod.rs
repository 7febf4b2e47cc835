//! The coordinate ring of the symmetric square of the curve
//! Y^2 = X^7 + y4 X^5 - y6 X^4 + y8 X^3 - y10 X^2 + y12 X - y14,
//! localized at X1 - X2, and its u-coordinates.
//!
//! L3* here is (D2 - D1)/(X1 - X2). Some older treatments use the opposite sign.

pub mod params;
pub mod relations;
pub mod ring;
pub mod sampling;
pub mod symmetrize;
pub mod uflow;

pub use params::{CurveParams, Param, Y_NAMES, Y_WEIGHTS};
pub use relations::{build_h, defining_forms, standard_u_universe, H12_TEXT, H14_TEXT};
pub use ring::{CurveRing, QuotElem, UQuad};
pub use sampling::{
    bind_point, ideal_t_member, relative_residual, sample_sym_square, trial_rng, u_from_points, CurvePoint,
    MembershipReport, SymSquarePoint, DEFAULT_TRIALS, MEMBERSHIP_TOL,
};
pub use symmetrize::{symmetrize, symmetrize_reduced, u_universe, U_VARS};
pub use uflow::{
    check_equations, u_derivative_equations, verify_u_derivatives, DerivationEquation, EquationResidual,
    U_DERIVATIVES,
};
