use std::sync::Arc;

use num_complex::Complex64;
use num_rational::BigRational;

use crate::exactalg::{upoly, Poly, Scalar, Universe};

/// Parameter names in curve order.
pub const Y_NAMES: [&str; 6] = ["y4", "y6", "y8", "y10", "y12", "y14"];
pub const Y_WEIGHTS: [i32; 6] = [4, 6, 8, 10, 12, 14];

/// Sign of `y_{2i}` in Q(X) = X^7 + y4 X^5 - y6 X^4 + y8 X^3 - y10 X^2 + y12 X - y14,
/// paired with the power of X it multiplies.
const Q_SHAPE: [(i64, u32); 6] = [(1, 5), (-1, 4), (1, 3), (-1, 2), (1, 1), (-1, 0)];

#[derive(Debug, Clone, PartialEq)]
pub enum Param {
    Symbolic,
    Value(Scalar),
}

/// The six curve parameters, each exact or left symbolic.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveParams {
    pub y: [Param; 6],
}

impl CurveParams {
    pub fn symbolic() -> Self {
        CurveParams { y: std::array::from_fn(|_| Param::Symbolic) }
    }

    pub fn numeric(values: [Scalar; 6]) -> Self {
        CurveParams { y: values.map(Param::Value) }
    }

    pub fn from_rationals(values: [BigRational; 6]) -> Self {
        Self::numeric(values.map(Scalar::Rat))
    }

    pub fn zero() -> Self {
        Self::numeric(std::array::from_fn(|_| Scalar::zero()))
    }

    pub fn is_numeric(&self) -> bool {
        self.y.iter().all(|p| matches!(p, Param::Value(_)))
    }

    /// Names of the parameters left symbolic.
    pub fn symbolic_names(&self) -> Vec<&'static str> {
        Y_NAMES
            .iter()
            .zip(&self.y)
            .filter(|(_, p)| matches!(p, Param::Symbolic))
            .map(|(n, _)| *n)
            .collect()
    }

    pub fn value(&self, name: &str) -> Option<&Scalar> {
        let i = Y_NAMES.iter().position(|n| *n == name)?;
        match &self.y[i] {
            Param::Value(v) => Some(v),
            Param::Symbolic => None,
        }
    }

    pub fn complex_values(&self) -> Option<[Complex64; 6]> {
        if !self.is_numeric() {
            return None;
        }
        Some(std::array::from_fn(|i| match &self.y[i] {
            Param::Value(v) => v.to_complex(),
            Param::Symbolic => unreachable!(),
        }))
    }

    /// Q(x) over `universe`, where `x` names a variable of it; symbolic
    /// parameters must also be variables of `universe`.
    pub fn q_poly(&self, universe: &Arc<Universe>, x: &str) -> Poly {
        let xv = Poly::var(universe, x).expect("X variable in universe");
        let mut q = xv.pow(7);
        for ((name, p), (sign, e)) in Y_NAMES.iter().zip(&self.y).zip(Q_SHAPE) {
            let coeff = match p {
                Param::Value(v) => Poly::constant(universe, v * &Scalar::from_i64(sign)),
                Param::Symbolic => Poly::var(universe, name)
                    .expect("symbolic parameter in universe")
                    .scale(&Scalar::from_i64(sign)),
            };
            q = &q + &(&coeff * &xv.pow(e));
        }
        q
    }

    /// Q evaluated at a complex point; `None` if any parameter is symbolic.
    pub fn q_complex(&self, x: Complex64) -> Option<Complex64> {
        let y = self.complex_values()?;
        let mut q = x.powu(7);
        for (yi, (sign, e)) in y.iter().zip(Q_SHAPE) {
            q += yi * sign as f64 * x.powu(e);
        }
        Some(q)
    }

    pub fn dq_complex(&self, x: Complex64) -> Option<Complex64> {
        let y = self.complex_values()?;
        let mut q = 7.0 * x.powu(6);
        for (yi, (sign, e)) in y.iter().zip(Q_SHAPE) {
            if e > 0 {
                q += yi * (sign * e as i64) as f64 * x.powu(e - 1);
            }
        }
        Some(q)
    }

    /// For rational parameters, whether Q has no repeated root (gcd(Q, Q') = 1).
    /// `None` when some parameter is symbolic or irrational.
    pub fn is_nonsingular(&self) -> Option<bool> {
        let mut coeffs = vec![BigRational::from_integer(0.into()); 8];
        coeffs[7] = BigRational::from_integer(1.into());
        for (p, (sign, e)) in self.y.iter().zip(Q_SHAPE) {
            let v = match p {
                Param::Value(v) => v.as_rational()?,
                Param::Symbolic => return None,
            };
            coeffs[e as usize] = v * BigRational::from_integer(sign.into());
        }
        let g = upoly::gcd(&coeffs, &upoly::derivative(&coeffs));
        Some(upoly::degree(&g) == Some(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminant_check() {
        // Q = X^7 has a repeated root at 0
        assert_eq!(CurveParams::zero().is_nonsingular(), Some(false));
        let mut y: [Scalar; 6] = std::array::from_fn(|_| Scalar::zero());
        y[5] = Scalar::from_i64(1); // Q = X^7 - 1
        assert_eq!(CurveParams::numeric(y).is_nonsingular(), Some(true));
        assert_eq!(CurveParams::symbolic().is_nonsingular(), None);
    }

    #[test]
    fn q_signs() {
        let y: [Scalar; 6] = std::array::from_fn(|i| Scalar::from_i64(i as i64 + 1));
        let params = CurveParams::numeric(y);
        let x = Complex64::new(2.0, 0.0);
        // 128 + 1*32 - 2*16 + 3*8 - 4*4 + 5*2 - 6
        assert_eq!(params.q_complex(x).unwrap().re, 140.0);
        let u = Universe::new(&[("X", 2)]);
        let q = params.q_poly(&u, "X");
        assert_eq!(q.eval_complex(&[("X", x)]).unwrap().re, 140.0);
    }
}
