use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactalg::{series_newton_root, ExtField, Scalar, Series2};

use super::sigma::SigmaSW;

/// Q[p]/(p^5 + 45), embedded at the real root -45^(1/5).
pub fn p_field() -> Arc<ExtField> {
    static F: OnceLock<Arc<ExtField>> = OnceLock::new();
    F.get_or_init(|| ExtField::from_ints("p", &[45, 0, 0, 0, 0, 1], 0).expect("p^5 + 45 is irreducible"))
        .clone()
}

/// Q[q]/(q^6 - 15 q^3 - 45), embedded at the positive real root.
pub fn q_field() -> Arc<ExtField> {
    static F: OnceLock<Arc<ExtField>> = OnceLock::new();
    F.get_or_init(|| ExtField::from_ints("q", &[-45, 0, 0, -15, 0, 0, 1], 5).expect("q-polynomial is irreducible"))
        .clone()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedKind {
    /// phi(0, 1) = 0
    PZero,
    /// phi(0, 1) = p with p^5 = -45
    PRoot5,
    /// the point (q, 1, 0) with q^6 = 15 q^3 + 45
    QRoot,
}

impl SeedKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "p0" | "p_zero" => Ok(SeedKind::PZero),
            "p5" | "p_root5" => Ok(SeedKind::PRoot5),
            "q" | "q_root" => Ok(SeedKind::QRoot),
            other => Err(Error::InvalidArgument(format!("unknown seed `{other}`; expected p0, p5 or q"))),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SeedKind::PZero => "p0",
            SeedKind::PRoot5 => "p5",
            SeedKind::QRoot => "q",
        }
    }
}

/// A point on sigma = 0 used as the constant term of a series solution.
#[derive(Debug, Clone)]
pub struct SeedSpec {
    pub kind: SeedKind,
    pub field: Option<Arc<ExtField>>,
    /// (w1, w3, w5)
    pub point: [Scalar; 3],
}

impl SeedSpec {
    pub fn new(kind: SeedKind) -> Self {
        let (zero, one) = (Scalar::zero(), Scalar::one());
        match kind {
            SeedKind::PZero => SeedSpec { kind, field: None, point: [zero.clone(), zero, one] },
            SeedKind::PRoot5 => {
                let f = p_field();
                SeedSpec { kind, point: [f.generator(), zero.clone(), one], field: Some(f) }
            }
            SeedKind::QRoot => {
                let f = q_field();
                SeedSpec { kind, point: [f.generator(), one, zero], field: Some(f) }
            }
        }
    }

    /// The generator of the extension (p or q); zero for [`SeedKind::PZero`].
    pub fn generator(&self) -> Scalar {
        match &self.field {
            Some(f) => f.generator(),
            None => Scalar::zero(),
        }
    }

    /// sigma and sigma_1 at the seed point.
    pub fn check(&self, s: &SigmaSW) -> Result<(Scalar, Scalar)> {
        let vals: Vec<Option<Scalar>> = self.point.iter().cloned().map(Some).collect();
        let ev = |p: &crate::exactalg::Poly| {
            p.evaluate_with(&vals, &Scalar::one(), |a, b| a + b, |a, b| a * b, |c, x| c * x)
        };
        Ok((ev(&s.sigma)?, ev(&s.partial("1"))?))
    }
}

/// phi(t, 1 + tau) with sigma(phi, t, 1 + tau) = 0 and phi(0, 0) = p.
pub fn solve_phi(s: &SigmaSW, seed: &SeedSpec, order: usize) -> Result<Series2> {
    if seed.kind == SeedKind::QRoot {
        return Err(Error::InvalidArgument("the q seed lies on a path, not a (t, tau) chart; use example3_curve".into()));
    }
    let t = Series2::t(order);
    let w5 = &Series2::constant(order, Scalar::one()) + &Series2::tau(order);
    series_newton_root(&s.sigma, "w1", &[("w3", &t), ("w5", &w5)], &seed.point[0], order)
}

/// Whether every denominator in the coefficients is a product of 3s and 5s.
pub fn denominators_are_3_5_smooth(series: &Series2) -> bool {
    let smooth = |mut d: BigInt| {
        for p in [3, 5] {
            let p = BigInt::from(p);
            while d.is_multiple_of(&p) {
                d /= &p;
            }
        }
        d.is_one()
    };
    series.nonzero_terms().iter().all(|(_, _, c)| c.coords().iter().all(|r| smooth(r.denom().clone())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_lie_on_sigma_zero() {
        let s = SigmaSW::new().unwrap();
        let (v, d) = SeedSpec::new(SeedKind::PZero).check(&s).unwrap();
        assert!(v.is_zero());
        assert_eq!(d, Scalar::one());
        let (v, d) = SeedSpec::new(SeedKind::PRoot5).check(&s).unwrap();
        assert!(v.is_zero());
        assert_eq!(d, Scalar::from_i64(-5));
        let (v, d) = SeedSpec::new(SeedKind::QRoot).check(&s).unwrap();
        assert!(v.is_zero());
        let q = q_field().generator();
        let expect = &q.pow(2) * &(&(&q.pow(3) * &Scalar::from_ratio(2, 15)) - &Scalar::one());
        assert_eq!(d, expect);
    }

    #[test]
    fn p_zero_tau_slice() {
        let s = SigmaSW::new().unwrap();
        let phi = solve_phi(&s, &SeedSpec::new(SeedKind::PZero), 12).unwrap();
        assert!(phi.slice_t0().iter().all(Scalar::is_zero));
        assert!(denominators_are_3_5_smooth(&phi));
        assert_eq!(phi.get(2, 0), Scalar::one());
        assert_eq!(phi.get(7, 0), Scalar::from_ratio(1, 3));
    }

    #[test]
    fn p_root5_t_slice_is_binomial() {
        let s = SigmaSW::new().unwrap();
        let seed = SeedSpec::new(SeedKind::PRoot5);
        let phi = solve_phi(&s, &seed, 6).unwrap();
        let fifth = num_rational::BigRational::new(1.into(), 5.into());
        let b = Series2::binomial(6, &fifth, true).scale(&seed.generator());
        assert_eq!(phi.slice_t0(), b.slice_t0());
        assert!(denominators_are_3_5_smooth(&phi));
    }
}
