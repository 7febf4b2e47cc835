//! Series solutions of the two systems with zero parameters, and the three
//! worked examples.

use num_complex::Complex64;
use num_rational::BigRational;

use crate::dynsys::{make_system, State4, System, FIELD_PARAMS, G_NAMES};
use crate::error::{Error, Result};
use crate::exactalg::{Scalar, Series2};

use super::ffun::{f_closed, f_defs_series};
use super::seeds::{p_field, q_field, solve_phi, SeedKind, SeedSpec};
use super::sigma::SigmaSW;

/// G2, G4, G5, G7 as series in (t, tau), computed through the closed forms
/// and through the definitions of the F functions.
#[derive(Debug, Clone)]
pub struct GSeries {
    pub seed: SeedKind,
    pub order: usize,
    pub phi: Series2,
    pub closed: [Series2; 4],
    pub defs: [Series2; 4],
}

impl GSeries {
    pub fn g(&self) -> &[Series2; 4] {
        &self.defs
    }

    pub fn routes_agree(&self) -> bool {
        self.closed == self.defs
    }
}

fn chart(order: usize) -> (Series2, Series2) {
    (Series2::t(order), &Series2::constant(order, Scalar::one()) + &Series2::tau(order))
}

pub fn g_series(s: &SigmaSW, seed: &SeedSpec, order: usize) -> Result<GSeries> {
    let phi = solve_phi(s, seed, order)?;
    let (w3, w5) = chart(order);
    let closed = f_closed(s, &phi, &w3, &w5)?;
    let defs = f_defs_series(s, &phi, &w3, &w5)?;
    Ok(GSeries { seed: seed.kind, order, phi, closed, defs })
}

#[derive(Debug, Clone)]
pub struct SeriesResidual {
    pub label: String,
    pub residual: Series2,
    /// Total order through which the residual is meaningful.
    pub valid_through: usize,
}

impl SeriesResidual {
    pub fn holds(&self) -> bool {
        self.residual.is_zero_through(self.valid_through)
    }
}

/// dG/dt minus system I and dG/dtau minus system II, both with y4..y10 = 0.
pub fn series_residuals(g: &[Series2; 4], systems: &[System]) -> Result<Vec<SeriesResidual>> {
    let order = g[0].order();
    let zero = Series2::zero(order);
    let mut bind: Vec<(&str, &Series2)> = G_NAMES.iter().copied().zip(g.iter()).collect();
    bind.extend(FIELD_PARAMS.iter().map(|n| (*n, &zero)));
    let mut out = Vec::new();
    for &sys in systems {
        let vf = make_system(sys);
        for (k, comp) in vf.components.iter().enumerate() {
            let (deriv, var) = match sys {
                System::I => (g[k].deriv_t(), "t"),
                System::II => (g[k].deriv_tau(), "tau"),
            };
            let rhs = comp.substitute_series(order, &bind)?;
            out.push(SeriesResidual {
                label: format!("d{}/d{var} = system {:?}", G_NAMES[k], sys),
                residual: &deriv - &rhs,
                valid_through: order.saturating_sub(1),
            });
        }
    }
    Ok(out)
}

/// All eight residuals for the series solution from `seed`.
pub fn verify_series_solution(s: &SigmaSW, seed: &SeedSpec, order: usize) -> Result<Vec<SeriesResidual>> {
    let g = g_series(s, seed, order)?;
    series_residuals(g.g(), &[System::I, System::II])
}

/// phi(t, 1) through t^order for the seed p = 0.
pub fn example1_coefficients(s: &SigmaSW, order: usize) -> Result<Vec<Scalar>> {
    Ok(solve_phi(s, &SeedSpec::new(SeedKind::PZero), order)?.slice_tau0())
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Constants and exponents of `c (1 + tau)^e` for the p^5 = -45 seed at t = 0.
pub fn example2_closed_forms() -> [(Scalar, BigRational); 4] {
    let p = p_field().generator();
    let p3 = p.pow(3);
    [
        (&p3 * &Scalar::from_ratio(-1, 30), ratio(-2, 5)),
        (&p * &Scalar::from_ratio(3, 20), ratio(-4, 5)),
        (Scalar::from_ratio(1, 5), ratio(-1, 1)),
        (&p3 * &Scalar::from_ratio(-1, 50), ratio(-7, 5)),
    ]
}

/// The closed forms of the p^5 = -45 example as series in tau.
pub fn example2_expected(order: usize) -> [Series2; 4] {
    example2_closed_forms().map(|(c, e)| Series2::binomial(order, &e, true).scale(&c))
}

/// Which constants to use for the (q (1 + t)^(1/3), 1 + t, 0) example.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Example3Forms {
    /// As commonly printed; the G5 and G7 constants are inconsistent with system I.
    Printed,
    /// Recomputed from the definitions.
    Corrected,
}

/// Constants and exponents of `c (1 + t)^e` for the q example.
pub fn example3_closed_forms(which: Example3Forms) -> Result<[(Scalar, BigRational); 4]> {
    let q = q_field().generator();
    let q2 = q.pow(2);
    let q3 = q.pow(3);
    let lin = |a: i64, b: i64| &(&q3 * &Scalar::from_i64(a)) + &Scalar::from_i64(b);
    let c2 = &q * &Scalar::from_ratio(1, 6);
    let c4 = (&(&q2 * &lin(1, 15)) * &Scalar::from_i64(-1)).div(&(&lin(1, 3) * &Scalar::from_i64(108)))?;
    let (c5, c7) = match which {
        Example3Forms::Printed => (
            q.div(&(&lin(8, 21) * &Scalar::from_i64(9)))?,
            (&(&q2 * &lin(287, 750)) * &Scalar::from_i64(-1)).div(&(&lin(7, 18) * &Scalar::from_i64(1458)))?,
        ),
        Example3Forms::Corrected => (
            &q * &Scalar::from_ratio(1, 9),
            (&(&q2 * &lin(1, 15)) * &Scalar::from_i64(-1)).div(&(&lin(1, 3) * &Scalar::from_i64(162)))?,
        ),
    };
    Ok([(c2, ratio(-2, 3)), (c4, ratio(-4, 3)), (c5, ratio(-5, 3)), (c7, ratio(-7, 3))])
}

pub fn example3_expected(which: Example3Forms, order: usize) -> Result<[Series2; 4]> {
    Ok(example3_closed_forms(which)?.map(|(c, e)| Series2::binomial(order, &e, false).scale(&c)))
}

/// F2, F4, F5, F7 along w(t) = (q (1 + t)^(1/3), 1 + t, 0), through the definitions.
pub fn example3_curve(s: &SigmaSW, order: usize) -> Result<[Series2; 4]> {
    let q = q_field().generator();
    let w1 = Series2::binomial(order, &ratio(1, 3), false).scale(&q);
    let w3 = &Series2::constant(order, Scalar::one()) + &Series2::t(order);
    let w5 = Series2::zero(order);
    let sigma1 = s.partial("1").substitute_series(order, &[("w1", &w1), ("w3", &w3), ("w5", &w5)])?;
    if sigma1.constant_term().is_zero() {
        return Err(Error::NotInvertible("sigma_1 vanishes at the start of the path".into()));
    }
    f_defs_series(s, &w1, &w3, &w5)
}

fn eval_forms(forms: &[(Scalar, BigRational); 4], x: Complex64) -> State4 {
    std::array::from_fn(|i| {
        let (c, e) = &forms[i];
        let e = num_traits::ToPrimitive::to_f64(e).expect("finite exponent");
        c.to_complex() * (Complex64::new(1.0, 0.0) + x).powf(e)
    })
}

/// The p^5 = -45 closed forms at time tau, with p the real root.
pub fn example2_state(tau: Complex64) -> State4 {
    eval_forms(&example2_closed_forms(), tau)
}

/// The q closed forms at time t, with q the positive real root.
pub fn example3_state(which: Example3Forms, t: Complex64) -> Result<State4> {
    Ok(eval_forms(&example3_closed_forms(which)?, t))
}
