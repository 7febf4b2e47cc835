use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::{Poly, Scalar, Series2};

/// A quotient of two polynomials over the same universe. Equality is by
/// cross-multiplication; no gcd is taken.
#[derive(Debug, Clone)]
pub struct RatFun3 {
    pub num: Poly,
    pub den: Poly,
}

impl RatFun3 {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        num.try_add(&den)?;
        Ok(RatFun3 { num, den })
    }

    pub fn from_poly(p: Poly) -> Self {
        let den = Poly::one(p.universe());
        RatFun3 { num: p, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn equals(&self, other: &RatFun3) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// Numerators over a common denominator, reusing a denominator that the
    /// other divides.
    fn common(&self, other: &RatFun3) -> (Poly, Poly, Poly) {
        if self.den == other.den {
            return (self.num.clone(), other.num.clone(), self.den.clone());
        }
        if let Some(k) = self.den.div_exact(&other.den) {
            return (self.num.clone(), &other.num * &k, self.den.clone());
        }
        if let Some(k) = other.den.div_exact(&self.den) {
            return (&self.num * &k, other.num.clone(), other.den.clone());
        }
        (&self.num * &other.den, &other.num * &self.den, &self.den * &other.den)
    }

    pub fn add(&self, other: &RatFun3) -> RatFun3 {
        let (a, b, d) = self.common(other);
        RatFun3 { num: &a + &b, den: d }
    }

    pub fn sub(&self, other: &RatFun3) -> RatFun3 {
        let (a, b, d) = self.common(other);
        RatFun3 { num: &a - &b, den: d }
    }

    pub fn mul(&self, other: &RatFun3) -> RatFun3 {
        RatFun3 { num: &self.num * &other.num, den: &self.den * &other.den }
    }

    pub fn div(&self, other: &RatFun3) -> Result<RatFun3> {
        RatFun3::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn neg(&self) -> RatFun3 {
        RatFun3 { num: -&self.num, den: self.den.clone() }
    }

    pub fn scale(&self, c: &Scalar) -> RatFun3 {
        RatFun3 { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, e: u32) -> RatFun3 {
        RatFun3 { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> RatFun3 {
        let dn = self.num.derivative(i);
        let dd = self.den.derivative(i);
        RatFun3 { num: &(&dn * &self.den) - &(&self.num * &dd), den: self.den.pow(2) }
    }

    /// Exact value at a point, with values in universe order.
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        let vals: Vec<Option<Scalar>> = point.iter().cloned().map(Some).collect();
        let ev = |p: &Poly| p.evaluate_with(&vals, &Scalar::one(), |a, b| a + b, |a, b| a * b, |c, x| c * x);
        ev(&self.num)?.div(&ev(&self.den)?)
    }

    /// Composition with series, variables bound by name.
    pub fn substitute_series(&self, order: usize, bindings: &[(&str, &Series2)]) -> Result<Series2> {
        let n = self.num.substitute_series(order, bindings)?;
        let d = self.den.substitute_series(order, bindings)?;
        n.div(&d)
    }
}

impl fmt::Display for RatFun3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}
