//! Truncated bivariate power series in (t, tau), truncated by total order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use super::poly::Poly;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Sum of `c[i,j] t^i tau^j` over `i + j <= order`.
#[derive(Debug, Clone, PartialEq)]
pub struct Series2 {
    order: usize,
    coeffs: Vec<Scalar>,
}

fn index(i: usize, j: usize) -> usize {
    let d = i + j;
    d * (d + 1) / 2 + j
}

fn len_for(order: usize) -> usize {
    (order + 1) * (order + 2) / 2
}

impl Series2 {
    pub fn zero(order: usize) -> Self {
        Series2 { order, coeffs: vec![Scalar::zero(); len_for(order)] }
    }

    pub fn constant(order: usize, c: Scalar) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn t(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.set(1, 0, Scalar::one());
        }
        s
    }

    pub fn tau(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.set(0, 1, Scalar::one());
        }
        s
    }

    /// Series of `(1 + t)^alpha` (or in tau when `in_tau`), from the relation
    /// `(1 + x) b' = alpha b`, `b(0) = 1`.
    pub fn binomial(order: usize, alpha: &BigRational, in_tau: bool) -> Self {
        let mut s = Self::zero(order);
        let mut c = BigRational::from_integer(1.into());
        for n in 0..=order {
            if in_tau {
                s.set(0, n, Scalar::Rat(c.clone()));
            } else {
                s.set(n, 0, Scalar::Rat(c.clone()));
            }
            let nn = BigRational::from_integer((n as i64).into());
            c = c * (alpha - &nn) / (nn + BigRational::from_integer(1.into()));
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        if i + j > self.order {
            return Scalar::zero();
        }
        self.coeffs[index(i, j)].clone()
    }

    pub fn coeff(&self, i: usize, j: usize) -> &Scalar {
        &self.coeffs[index(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, c: Scalar) {
        assert!(i + j <= self.order, "coefficient ({i},{j}) beyond order {}", self.order);
        self.coeffs[index(i, j)] = c;
    }

    pub fn constant_term(&self) -> &Scalar {
        &self.coeffs[0]
    }

    /// Nonzero coefficients as `(i, j, c)` in (total degree, j) order.
    pub fn nonzero_terms(&self) -> Vec<(usize, usize, &Scalar)> {
        let mut out = Vec::new();
        for d in 0..=self.order {
            for j in 0..=d {
                let c = &self.coeffs[index(d - j, j)];
                if !c.is_zero() {
                    out.push((d - j, j, c));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Whether all coefficients of total degree `<= n` vanish.
    pub fn is_zero_through(&self, n: usize) -> bool {
        (0..=n.min(self.order)).all(|d| (0..=d).all(|j| self.coeffs[index(d - j, j)].is_zero()))
    }

    /// Re-truncates to a lower order.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Series2 { order, coeffs: self.coeffs[..len_for(order)].to_vec() }
    }

    fn check(&self, other: &Series2) {
        assert_eq!(self.order, other.order, "series order mismatch");
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Series2 { order: self.order, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Reciprocal; requires an invertible constant term.
    pub fn recip(&self) -> Result<Self> {
        let c0 = self.coeffs[0].inv().map_err(|_| {
            Error::NotInvertible(format!("series constant term {}", self.coeffs[0]))
        })?;
        let mut out = Self::zero(self.order);
        out.coeffs[0] = c0.clone();
        for d in 1..=self.order {
            for j in 0..=d {
                let i = d - j;
                let mut acc = Scalar::zero();
                for k in 0..=i {
                    for l in 0..=j {
                        if k == 0 && l == 0 {
                            continue;
                        }
                        let a = &self.coeffs[index(k, l)];
                        if a.is_zero() {
                            continue;
                        }
                        acc = &acc + &(a * &out.coeffs[index(i - k, j - l)]);
                    }
                }
                out.coeffs[index(i, j)] = -(&acc * &c0);
            }
        }
        Ok(out)
    }

    pub fn div(&self, other: &Series2) -> Result<Self> {
        Ok(self * &other.recip()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.order, Scalar::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// d/dt. The result is exact through total order `order - 1`; the top
    /// degree is zero-filled to keep the order.
    pub fn deriv_t(&self) -> Self {
        let mut out = Self::zero(self.order);
        for d in 0..self.order {
            for j in 0..=d {
                let i = d - j;
                let c = self.coeff(i + 1, j) * &Scalar::from_i64(i as i64 + 1);
                out.set(i, j, c);
            }
        }
        out
    }

    /// d/dtau, exact through `order - 1`.
    pub fn deriv_tau(&self) -> Self {
        let mut out = Self::zero(self.order);
        for d in 0..self.order {
            for j in 0..=d {
                let i = d - j;
                let c = self.coeff(i, j + 1) * &Scalar::from_i64(j as i64 + 1);
                out.set(i, j, c);
            }
        }
        out
    }

    /// Coefficients of `t^i` at tau = 0.
    pub fn slice_tau0(&self) -> Vec<Scalar> {
        (0..=self.order).map(|i| self.get(i, 0)).collect()
    }

    /// Coefficients of `tau^j` at t = 0.
    pub fn slice_t0(&self) -> Vec<Scalar> {
        (0..=self.order).map(|j| self.get(0, j)).collect()
    }

    /// First nonzero coefficient (total-degree order), as a failure witness.
    pub fn first_nonzero(&self) -> Option<(usize, usize, Scalar)> {
        self.nonzero_terms().into_iter().next().map(|(i, j, c)| (i, j, c.clone()))
    }
}

impl<'a> Add<&'a Series2> for &'a Series2 {
    type Output = Series2;
    fn add(self, o: &Series2) -> Series2 {
        self.check(o);
        Series2 { order: self.order, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a Series2> for &'a Series2 {
    type Output = Series2;
    fn sub(self, o: &Series2) -> Series2 {
        self.check(o);
        Series2 { order: self.order, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl<'a> Mul<&'a Series2> for &'a Series2 {
    type Output = Series2;
    fn mul(self, o: &Series2) -> Series2 {
        self.check(o);
        let n = self.order;
        let mut out = Series2::zero(n);
        for da in 0..=n {
            for ja in 0..=da {
                let a = &self.coeffs[index(da - ja, ja)];
                if a.is_zero() {
                    continue;
                }
                for db in 0..=(n - da) {
                    for jb in 0..=db {
                        let b = &o.coeffs[index(db - jb, jb)];
                        if b.is_zero() {
                            continue;
                        }
                        let k = index(da - ja + db - jb, ja + jb);
                        out.coeffs[k] = &out.coeffs[k] + &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl Neg for &Series2 {
    type Output = Series2;
    fn neg(self) -> Series2 {
        Series2 { order: self.order, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl fmt::Display for Series2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.nonzero_terms();
        if terms.is_empty() {
            return write!(f, "O({})", self.order + 1);
        }
        for (k, (i, j, c)) in terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            match i {
                0 => {}
                1 => write!(f, "*t")?,
                _ => write!(f, "*t^{i}")?,
            }
            match j {
                0 => {}
                1 => write!(f, "*tau")?,
                _ => write!(f, "*tau^{j}")?,
            }
        }
        write!(f, " + O({})", self.order + 1)
    }
}

impl Poly {
    /// Composition with series: variable named in `bindings` is replaced by its
    /// series. Every variable occurring in the polynomial must be bound.
    pub fn substitute_series(&self, order: usize, bindings: &[(&str, &Series2)]) -> Result<Series2> {
        let u = self.universe().clone();
        let vals: Vec<Option<Series2>> = (0..u.len())
            .map(|i| {
                bindings
                    .iter()
                    .find(|(n, _)| *n == u.name(i))
                    .map(|(_, s)| s.truncate(order))
            })
            .collect();
        self.evaluate_with(
            &vals,
            &Series2::constant(order, Scalar::one()),
            |a, b| a + b,
            |a, b| a * b,
            |c, x| x.scale(c),
        )
    }
}

/// Solves `F(phi, others) = 0` for the series `phi` by Newton iteration.
///
/// `var` names the unknown in `f`; every other variable of `f` must be bound in
/// `bindings`. `seed` is the constant term of the root. Each step doubles the
/// number of correct total-degree layers; the result is verified exactly.
pub fn series_newton_root(
    f: &Poly,
    var: &str,
    bindings: &[(&str, &Series2)],
    seed: &Scalar,
    order: usize,
) -> Result<Series2> {
    let df = f.derivative_by(var)?;
    let eval = |poly: &Poly, phi: &Series2| -> Result<Series2> {
        let mut all: Vec<(&str, &Series2)> = bindings.to_vec();
        all.push((var, phi));
        poly.substitute_series(order, &all)
    };
    let mut phi = Series2::constant(order, seed.clone());
    let r0 = eval(f, &phi)?;
    if !r0.constant_term().is_zero() {
        return Err(Error::SeedNotRoot(r0.constant_term().to_string()));
    }
    let d0 = eval(&df, &phi)?;
    if d0.constant_term().inv().is_err() {
        return Err(Error::NotInvertible(format!(
            "dF/d{var} at seed has constant term {}",
            d0.constant_term()
        )));
    }
    let mut correct = 1usize;
    let mut steps = 0;
    loop {
        let r = eval(f, &phi)?;
        if r.is_zero() {
            return Ok(phi);
        }
        if steps > 2 * (usize::BITS as usize) || correct > 2 * (order + 1) {
            return Err(Error::NoConvergence(order));
        }
        let d = eval(&df, &phi)?;
        phi = &phi - &r.div(&d)?;
        correct *= 2;
        steps += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::poly::Universe;

    #[test]
    fn reciprocal_of_one_plus_tau() {
        let n = 6;
        let s = &Series2::constant(n, Scalar::one()) + &Series2::tau(n);
        let r = s.recip().unwrap();
        for j in 0..=n {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            assert_eq!(r.get(0, j), Scalar::from_i64(sign));
        }
        assert!((&(&r * &s) - &Series2::constant(n, Scalar::one())).is_zero());
    }

    #[test]
    fn binomial_square_root() {
        let half = BigRational::new(1.into(), 2.into());
        let b = Series2::binomial(5, &half, false);
        let sq = &b * &b;
        let expect = &Series2::constant(5, Scalar::one()) + &Series2::t(5);
        assert_eq!(sq, expect);
        assert_eq!(b.get(2, 0), Scalar::from_ratio(-1, 8));
    }

    #[test]
    fn newton_solves_quadratic() {
        // phi^2 - (1 + t) = 0 with phi(0) = 1
        let u = Universe::new(&[("phi", 1), ("t", 1)]);
        let phi = Poly::var(&u, "phi").unwrap();
        let t = Poly::var(&u, "t").unwrap();
        let f = &(&phi * &phi) - &(&Poly::one(&u) + &t);
        let ts = Series2::t(8);
        let root = series_newton_root(&f, "phi", &[("t", &ts)], &Scalar::one(), 8).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(root, Series2::binomial(8, &half, false));
    }

    #[test]
    fn newton_rejects_non_root_and_singular_seed() {
        let u = Universe::new(&[("phi", 1), ("t", 1)]);
        let phi = Poly::var(&u, "phi").unwrap();
        let t = Poly::var(&u, "t").unwrap();
        let f = &(&phi * &phi) - &t;
        let ts = Series2::t(4);
        assert!(matches!(
            series_newton_root(&f, "phi", &[("t", &ts)], &Scalar::one(), 4),
            Err(Error::SeedNotRoot(_))
        ));
        assert!(matches!(
            series_newton_root(&f, "phi", &[("t", &ts)], &Scalar::zero(), 4),
            Err(Error::NotInvertible(_))
        ));
    }

    #[test]
    fn zeroth_order_is_the_seed() {
        let u = Universe::new(&[("phi", 1), ("t", 1)]);
        let phi = Poly::var(&u, "phi").unwrap();
        let t = Poly::var(&u, "t").unwrap();
        let f = &phi - &t;
        let ts = Series2::t(0);
        let r = series_newton_root(&f, "phi", &[("t", &ts)], &Scalar::zero(), 0).unwrap();
        assert_eq!(r, Series2::zero(0));
    }
}
