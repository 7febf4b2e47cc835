//! Action of L3* and L5* on the u-coordinates.

use crate::error::Result;
use crate::exactalg::{parse_poly, Poly};

use super::relations::standard_u_universe;
use super::ring::{CurveRing, QuotElem};

/// `(operator, coordinate, right-hand side)` for each of the eight equations.
pub const U_DERIVATIVES: [(u32, &str, &str); 8] = [
    (3, "u2", "-u5"),
    (3, "u4", "-2*u7"),
    (3, "u5", "-35*u2^4 - 42*u2^2*u4 - 3*u4^2 - 2*y4*(5*u2^2 + u4) + 4*y6*u2 - y8"),
    (
        3,
        "u7",
        "-7*(3*u2^5 + 10*u2^3*u4 + 3*u2*u4^2) - 10*y4*(u2^3 + u2*u4) + 2*y6*(3*u2^2 + u4) - 3*y8*u2 + y10",
    ),
    (5, "u2", "u2*u5 - u7"),
    (5, "u4", "2*(u2*u7 - u4*u5)"),
    (
        5,
        "u5",
        "u5^2 + 14*u2^5 - 28*u2^3*u4 - 18*u2*u4^2 - 8*y4*u2*u4 + 2*y6*(u2^2 + u4) - 2*y8*u2 + y10",
    ),
    (
        5,
        "u7",
        "-u5*u7 + 21*u2^6 + 35*u2^4*u4 - 21*u2^2*u4^2 - 3*u4^3 + 2*y4*(5*u2^4 - u4^2) \
         - 2*y6*(3*u2^3 - u2*u4) + y8*(3*u2^2 - u4) - y10*u2",
    ),
];

#[derive(Debug, Clone)]
pub struct DerivationEquation {
    pub operator: u32,
    pub coordinate: &'static str,
    pub rhs: Poly,
}

impl DerivationEquation {
    pub fn label(&self) -> String {
        format!("L{}* {} = {}", self.operator, self.coordinate, self.rhs)
    }
}

/// The eight equations over [`standard_u_universe`].
pub fn u_derivative_equations() -> Result<Vec<DerivationEquation>> {
    let u = standard_u_universe();
    U_DERIVATIVES
        .iter()
        .map(|(op, coord, rhs)| Ok(DerivationEquation { operator: *op, coordinate: coord, rhs: parse_poly(rhs, &u)? }))
        .collect()
}

#[derive(Debug, Clone)]
pub struct EquationResidual {
    pub label: String,
    pub residual: QuotElem,
}

impl EquationResidual {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Computes L*(u) - rhs in the localized ring for each equation.
pub fn check_equations(ring: &CurveRing, equations: &[DerivationEquation]) -> Result<Vec<EquationResidual>> {
    let uq = ring.uquad();
    equations
        .iter()
        .map(|eq| {
            let coord = uq.get(eq.coordinate).expect("u-coordinate name");
            let lhs = ring.apply_l(eq.operator, coord)?;
            let rhs = ring.eval_u_poly(&eq.rhs)?;
            Ok(EquationResidual { label: eq.label(), residual: ring.sub(&lhs, &rhs) })
        })
        .collect()
}

/// The eight equations with symbolic parameters; every residual should be zero.
pub fn verify_u_derivatives() -> Result<Vec<EquationResidual>> {
    check_equations(&CurveRing::symbolic(), &u_derivative_equations()?)
}
