//! The exact coefficient domain: rationals, or elements of a simple
//! algebraic extension Q[a]/(m(a)).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::upoly::{self, UPoly};
use crate::error::{Error, Result};

/// A simple algebraic extension Q[a]/(m(a)) with m monic and irreducible.
///
/// The numeric embedding picks a root of m: roots are computed in double
/// precision, sorted by (real, imaginary) and selected by index.
#[derive(Debug)]
pub struct ExtField {
    name: String,
    modulus: UPoly,
    embedding_index: usize,
    roots: OnceLock<Vec<Complex64>>,
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.modulus == other.modulus
    }
}

impl ExtField {
    /// `modulus` lists coefficients low degree first and must be monic of degree >= 1.
    pub fn new(name: &str, modulus: Vec<BigRational>, embedding_index: usize) -> Result<Arc<Self>> {
        let mut modulus = modulus;
        upoly::trim(&mut modulus);
        match upoly::degree(&modulus) {
            Some(d) if d >= 1 && modulus[d].is_one() => {}
            _ => {
                return Err(Error::InvalidArgument(
                    "minimal polynomial must be monic of degree >= 1".into(),
                ))
            }
        }
        let deg = modulus.len() - 1;
        if embedding_index >= deg {
            return Err(Error::InvalidArgument(format!(
                "embedding index {embedding_index} out of range for degree {deg}"
            )));
        }
        Ok(Arc::new(ExtField {
            name: name.to_string(),
            modulus,
            embedding_index,
            roots: OnceLock::new(),
        }))
    }

    /// Convenience constructor from integer coefficients, low degree first.
    pub fn from_ints(name: &str, coeffs: &[i64], embedding_index: usize) -> Result<Arc<Self>> {
        Self::new(
            name,
            coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect(),
            embedding_index,
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigRational] {
        &self.modulus
    }

    pub fn embedding_index(&self) -> usize {
        self.embedding_index
    }

    /// Generator `a` as a scalar.
    pub fn generator(self: &Arc<Self>) -> Scalar {
        let mut coords = vec![BigRational::zero(); self.degree()];
        if self.degree() == 1 {
            // a = -m0
            coords[0] = -self.modulus[0].clone();
        } else {
            coords[1] = BigRational::one();
        }
        Scalar::Ext(self.clone(), coords)
    }

    /// All complex roots of the modulus in the deterministic embedding order.
    pub fn roots(&self) -> &[Complex64] {
        self.roots.get_or_init(|| {
            let coeffs: Vec<f64> = self
                .modulus
                .iter()
                .map(|c| c.to_f64().unwrap_or(f64::NAN))
                .collect();
            let mut roots = polynomial_roots(&coeffs);
            roots.sort_by(|a, b| {
                let scale = 1e-9 * (1.0 + a.norm().max(b.norm()));
                if (a.re - b.re).abs() > scale {
                    a.re.partial_cmp(&b.re).unwrap()
                } else {
                    a.im.partial_cmp(&b.im).unwrap()
                }
            });
            roots
        })
    }

    pub fn embedded_root(&self) -> Complex64 {
        self.roots()[self.embedding_index]
    }

    /// Canonical text of the minimal polynomial, e.g. `p^5 + 45`.
    pub fn modulus_text(&self) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.modulus.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => self.name.clone(),
                _ => format!("{}^{}", self.name, i),
            };
            parts.push((c.clone(), mono));
        }
        join_signed(&parts)
    }

    fn reduce(&self, mut p: UPoly) -> Vec<BigRational> {
        let deg = self.degree();
        if p.len() > deg {
            p = upoly::div_rem(&p, &self.modulus).1;
        }
        p.resize(deg, BigRational::zero());
        p
    }
}

/// Durand–Kerner iteration followed by Newton polishing.
fn polynomial_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| Complex64::new(c / lead, 0.0)).collect();
    let eval = |z: Complex64| monic.iter().rev().fold(Complex64::zero(), |acc, c| acc * z + c);
    let deriv = |z: Complex64| {
        monic
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(Complex64::zero(), |acc, (i, c)| acc * z + c * i as f64)
    };
    let radius = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * radius * 0.5).collect();
    for _ in 0..500 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::one();
            for j in 0..n {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 * radius {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let d = deriv(*zi);
            if d.norm() > 0.0 {
                *zi -= eval(*zi) / d;
            }
        }
        if zi.im.abs() < 1e-12 * (1.0 + zi.re.abs()) {
            zi.im = 0.0;
        }
    }
    z
}

/// An exact scalar.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rat(BigRational),
    /// Coordinates on the power basis {1, a, ..., a^(d-1)}.
    Ext(Arc<ExtField>, Vec<BigRational>),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(BigRational::one())
    }

    pub fn from_i64(n: i64) -> Self {
        Scalar::Rat(BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::Rat(BigRational::new(n.into(), d.into()))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Ext(_, c) => c.iter().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// The rational value, if the scalar lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rat(r) => Some(r.clone()),
            Scalar::Ext(_, c) => {
                if c[1..].iter().all(Zero::is_zero) {
                    Some(c[0].clone())
                } else {
                    None
                }
            }
        }
    }

    pub fn field(&self) -> Option<&Arc<ExtField>> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Ext(f, _) => Some(f),
        }
    }

    /// Coordinates in `field`, promoting rationals.
    pub fn coords_in(&self, field: &ExtField) -> Vec<BigRational> {
        match self {
            Scalar::Rat(r) => {
                let mut v = vec![BigRational::zero(); field.degree()];
                v[0] = r.clone();
                v
            }
            Scalar::Ext(_, c) => c.clone(),
        }
    }

    /// Rational coordinate vector: `[r]` for rationals, extension coordinates otherwise.
    pub fn coords(&self) -> Vec<BigRational> {
        match self {
            Scalar::Rat(r) => vec![r.clone()],
            Scalar::Ext(_, c) => c.clone(),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::NotInvertible("0".into()));
        }
        match self {
            Scalar::Rat(r) => Ok(Scalar::Rat(r.recip())),
            Scalar::Ext(f, c) => {
                let inv = upoly::inverse_mod(c, &f.modulus)
                    .ok_or_else(|| Error::NotInvertible(self.to_string()))?;
                Ok(Scalar::Ext(f.clone(), f.reduce(inv)))
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Double-precision value under the field's numeric embedding.
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Rat(r) => Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0),
            Scalar::Ext(f, c) => {
                let root = f.embedded_root();
                c.iter().rev().fold(Complex64::zero(), |acc, x| {
                    acc * root + x.to_f64().unwrap_or(f64::NAN)
                })
            }
        }
    }

    /// Whether every coordinate is an integer.
    pub fn is_integral(&self) -> bool {
        self.coords().iter().all(|c| c.is_integer())
    }

    /// Least common multiple of coordinate denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.coords()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    fn binary(
        &self,
        other: &Scalar,
        rat: impl Fn(&BigRational, &BigRational) -> BigRational,
        ext: impl Fn(&Arc<ExtField>, Vec<BigRational>, Vec<BigRational>) -> Vec<BigRational>,
    ) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(rat(a, b)),
            _ => {
                let field = match (self.field(), other.field()) {
                    (Some(f), Some(g)) => {
                        assert!(
                            Arc::ptr_eq(f, g) || **f == **g,
                            "mixed extension fields {} and {}",
                            f.name,
                            g.name
                        );
                        f
                    }
                    (Some(f), None) | (None, Some(f)) => f,
                    (None, None) => unreachable!(),
                };
                let a = self.coords_in(field);
                let b = other.coords_in(field);
                Scalar::Ext(field.clone(), ext(field, a, b))
            }
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a == b,
            _ => (self - other).is_zero(),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, other: &Scalar) -> Scalar {
        self.binary(other, |a, b| a + b, |_, a, b| {
            a.into_iter().zip(b).map(|(x, y)| x + y).collect()
        })
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, other: &Scalar) -> Scalar {
        self.binary(other, |a, b| a - b, |_, a, b| {
            a.into_iter().zip(b).map(|(x, y)| x - y).collect()
        })
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, other: &Scalar) -> Scalar {
        self.binary(other, |a, b| a * b, |f, a, b| f.reduce(upoly::mul(&a, &b)))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Ext(f, c) => Scalar::Ext(f.clone(), c.iter().map(|x| -x).collect()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, other: Scalar) -> Scalar {
                (&self).$m(&other)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, other: &Scalar) -> Scalar {
                (&self).$m(other)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rat(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_i64(n)
    }
}

/// Joins (coefficient, monomial) pairs as `c1*m1 + c2*m2 - ...`.
pub(crate) fn join_signed(parts: &[(BigRational, String)]) -> String {
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (c, mono)) in parts.iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(mono);
        } else {
            out.push_str(&format!("{abs}*{mono}"));
        }
    }
    out
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Ext(field, c) => {
                let parts: Vec<(BigRational, String)> = c
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, x)| {
                        let mono = match i {
                            0 => String::new(),
                            1 => field.name.clone(),
                            _ => format!("{}^{}", field.name, i),
                        };
                        (x.clone(), mono)
                    })
                    .collect();
                if parts.len() <= 1 {
                    write!(f, "{}", join_signed(&parts))
                } else {
                    write!(f, "({})", join_signed(&parts))
                }
            }
        }
    }
}

/// Parses `num/den` or an integer into a rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidArgument(format!("not a rational: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Serializes a rational as `num/den` (denominator always present).
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p_field() -> Arc<ExtField> {
        ExtField::from_ints("p", &[45, 0, 0, 0, 0, 1], 0).unwrap()
    }

    #[test]
    fn generator_satisfies_minimal_polynomial() {
        let f = p_field();
        let p = f.generator();
        assert!((p.pow(5) + Scalar::from_i64(45)).is_zero());
        let q = ExtField::from_ints("q", &[-45, 0, 0, -15, 0, 0, 1], 5).unwrap();
        let g = q.generator();
        let m = g.pow(6) - Scalar::from_i64(15) * g.pow(3) - Scalar::from_i64(45);
        assert!(m.is_zero());
    }

    #[test]
    fn embedding_selects_real_roots() {
        let f = p_field();
        let r = f.embedded_root();
        assert!((r.re + 45f64.powf(0.2)).abs() < 1e-12 && r.im == 0.0);
        let q = ExtField::from_ints("q", &[-45, 0, 0, -15, 0, 0, 1], 5).unwrap();
        let r = q.embedded_root();
        let cube = (15.0 + 405f64.sqrt()) / 2.0;
        assert!((r.re - cube.cbrt()).abs() < 1e-12 && r.im == 0.0);
    }

    #[test]
    fn inverse_and_mixed_promotion() {
        let f = p_field();
        let p = f.generator();
        let x = &p + &Scalar::from_ratio(1, 3);
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        assert_eq!((&p - &p), Scalar::zero());
        assert_eq!(Scalar::from_i64(2).to_string(), "2");
        assert_eq!((&p * &Scalar::from_i64(3)).to_string(), "3*p");
        assert!((p.pow(5).to_complex() - Complex64::new(-45.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn rational_text() {
        let r = parse_rational("-6/4").unwrap();
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(format_rational(&parse_rational("7").unwrap()), "7/1");
        assert!(parse_rational("1/0").is_err());
    }
}
