//! Sparse multivariate polynomials over [`Scalar`] with signed per-variable
//! grading weights.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::Signed;

use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Var {
    pub name: String,
    pub weight: i32,
}

/// An ordered list of named, weighted variables shared by a family of polynomials.
#[derive(Debug, PartialEq, Eq)]
pub struct Universe {
    vars: Vec<Var>,
}

impl Universe {
    pub fn new(vars: &[(&str, i32)]) -> Arc<Self> {
        Arc::new(Universe {
            vars: vars
                .iter()
                .map(|(n, w)| Var { name: n.to_string(), weight: *w })
                .collect(),
        })
    }

    pub fn from_vars(vars: Vec<Var>) -> Arc<Self> {
        Arc::new(Universe { vars })
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.vars[i].name
    }

    pub fn weight(&self, i: usize) -> i32 {
        self.vars[i].weight
    }
}

fn same_universe(a: &Arc<Universe>, b: &Arc<Universe>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Exponent vector, one entry per universe variable.
pub type Monomial = Vec<u32>;

#[derive(Debug, Clone)]
pub struct Poly {
    universe: Arc<Universe>,
    terms: BTreeMap<Monomial, Scalar>,
}

/// Result of a weighted-degree audit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightedDegree {
    pub homogeneous: bool,
    /// The common degree when homogeneous.
    pub degree: Option<i64>,
    pub min: i64,
    pub max: i64,
}

impl Poly {
    pub fn zero(universe: &Arc<Universe>) -> Self {
        Poly { universe: universe.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(universe: &Arc<Universe>, c: Scalar) -> Self {
        let mut p = Self::zero(universe);
        p.add_term(vec![0; universe.len()], c);
        p
    }

    pub fn one(universe: &Arc<Universe>) -> Self {
        Self::constant(universe, Scalar::one())
    }

    pub fn var(universe: &Arc<Universe>, name: &str) -> Result<Self> {
        let i = universe
            .index(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var_at(universe, i))
    }

    pub fn var_at(universe: &Arc<Universe>, i: usize) -> Self {
        let mut m = vec![0; universe.len()];
        m[i] = 1;
        Self::monomial(universe, m, Scalar::one())
    }

    pub fn monomial(universe: &Arc<Universe>, m: Monomial, c: Scalar) -> Self {
        assert_eq!(m.len(), universe.len(), "exponent vector length");
        let mut p = Self::zero(universe);
        p.add_term(m, c);
        p
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &[u32]) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&vec![0; self.universe.len()])
    }

    /// Adds `c * x^m` in place, dropping cancelled terms.
    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = &*e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if same_universe(&self.universe, &other.universe) {
            Ok(())
        } else {
            Err(Error::UniverseMismatch(format!(
                "{:?} vs {:?}",
                names(&self.universe),
                names(&other.universe)
            )))
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut out = Poly::zero(&self.universe);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let mut out = Poly::zero(&self.universe);
        if c.is_zero() {
            return out;
        }
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.universe);
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

    /// Partial derivative with respect to variable index `i`.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(&self.universe);
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2[i] -= 1;
            out.add_term(m2, c * &Scalar::from_i64(m[i] as i64));
        }
        out
    }

    pub fn derivative_by(&self, name: &str) -> Result<Poly> {
        let i = self
            .universe
            .index(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(self.derivative(i))
    }

    /// Largest exponent of each variable.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut out = vec![0; self.universe.len()];
        for m in self.terms.keys() {
            for (o, e) in out.iter_mut().zip(m) {
                *o = (*o).max(*e);
            }
        }
        out
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    pub fn monomial_weight(&self, m: &[u32]) -> i64 {
        m.iter()
            .enumerate()
            .map(|(i, e)| self.universe.weight(i) as i64 * *e as i64)
            .sum()
    }

    /// Homogeneity audit under the universe weights.
    pub fn weighted_degree(&self) -> Result<WeightedDegree> {
        let mut degs = self.terms.keys().map(|m| self.monomial_weight(m));
        let first = degs.next().ok_or(Error::ZeroPolynomial)?;
        let (min, max) = degs.fold((first, first), |(lo, hi), d| (lo.min(d), hi.max(d)));
        let homogeneous = min == max;
        Ok(WeightedDegree { homogeneous, degree: homogeneous.then_some(min), min, max })
    }

    /// Re-expresses the polynomial over `target`, matching variables by name.
    /// Variables that occur with nonzero exponent must exist in `target`.
    pub fn embed(&self, target: &Arc<Universe>) -> Result<Poly> {
        self.embed_renamed(target, |n| n.to_string())
    }

    /// Like [`Poly::embed`], mapping each source name through `rename` first.
    pub fn embed_renamed(&self, target: &Arc<Universe>, rename: impl Fn(&str) -> String) -> Result<Poly> {
        let map: Vec<Option<usize>> = (0..self.universe.len())
            .map(|i| target.index(&rename(self.universe.name(i))))
            .collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut m2 = vec![0; target.len()];
            for (i, e) in m.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                let j = map[i].ok_or_else(|| Error::UnknownVariable(self.universe.name(i).to_string()))?;
                m2[j] += e;
            }
            out.add_term(m2, c.clone());
        }
        Ok(out)
    }

    /// Applies a permutation of variable indices: variable `i` becomes `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Poly {
        let mut out = Poly::zero(&self.universe);
        for (m, c) in &self.terms {
            let mut m2 = vec![0; m.len()];
            for (i, e) in m.iter().enumerate() {
                m2[perm[i]] += e;
            }
            out.add_term(m2, c.clone());
        }
        out
    }

    /// Generic evaluation: variable `i` is replaced by `vals[i]`.
    pub fn evaluate_with<T: Clone>(
        &self,
        vals: &[Option<T>],
        one: &T,
        add: impl Fn(&T, &T) -> T,
        mul: impl Fn(&T, &T) -> T,
        scale: impl Fn(&Scalar, &T) -> T,
    ) -> Result<T> {
        let maxe = self.max_exponents();
        let mut powers: Vec<Vec<T>> = Vec::with_capacity(maxe.len());
        for (i, &e) in maxe.iter().enumerate() {
            let mut row = vec![one.clone()];
            if e > 0 {
                let v = vals[i]
                    .as_ref()
                    .ok_or_else(|| Error::UnboundVariable(self.universe.name(i).to_string()))?;
                for k in 1..=e as usize {
                    let next = mul(&row[k - 1], v);
                    row.push(next);
                }
            }
            powers.push(row);
        }
        let mut acc: Option<T> = None;
        for (m, c) in &self.terms {
            let mut t: Option<T> = None;
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = &powers[i][e as usize];
                t = Some(match t {
                    None => pw.clone(),
                    Some(x) => mul(&x, pw),
                });
            }
            let term = scale(c, t.as_ref().unwrap_or(one));
            acc = Some(match acc {
                None => term,
                Some(a) => add(&a, &term),
            });
        }
        Ok(acc.unwrap_or_else(|| scale(&Scalar::zero(), one)))
    }

    /// Double-complex evaluation with bindings by variable name.
    pub fn eval_complex(&self, bindings: &[(&str, Complex64)]) -> Result<Complex64> {
        let vals: Vec<Option<Complex64>> = (0..self.universe.len())
            .map(|i| {
                bindings
                    .iter()
                    .find(|(n, _)| *n == self.universe.name(i))
                    .map(|(_, v)| *v)
            })
            .collect();
        self.eval_complex_at(&vals)
    }

    pub fn eval_complex_at(&self, vals: &[Option<Complex64>]) -> Result<Complex64> {
        self.evaluate_with(
            vals,
            &Complex64::new(1.0, 0.0),
            |a, b| a + b,
            |a, b| a * b,
            |c, x| c.to_complex() * x,
        )
    }

    /// Composition: each variable named in `bindings` is replaced by a polynomial over
    /// `target`; other variables are carried through by name.
    pub fn compose(&self, target: &Arc<Universe>, bindings: &[(&str, Poly)]) -> Result<Poly> {
        let vals: Vec<Option<Poly>> = (0..self.universe.len())
            .map(|i| {
                let name = self.universe.name(i);
                if let Some((_, p)) = bindings.iter().find(|(n, _)| *n == name) {
                    p.check(&Poly::zero(target)).map(|_| Some(p.clone()))
                } else {
                    Ok(Poly::var(target, name).ok())
                }
            })
            .collect::<Result<_>>()?;
        self.evaluate_with(&vals, &Poly::one(target), |a, b| a + b, |a, b| a * b, |c, x| x.scale(c))
    }

    /// Sum of absolute term magnitudes at a numeric point; the scale used for
    /// relative residuals.
    pub fn abs_term_sum(&self, vals: &[Option<Complex64>]) -> Result<f64> {
        self.evaluate_with(
            &vals.iter().map(|v| v.map(|z| z.norm())).collect::<Vec<_>>(),
            &1.0f64,
            |a, b| a + b,
            |a, b| a * b,
            |c, x| c.to_complex().norm() * x,
        )
    }

    /// Exact division by `d`, if `d` divides `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        self.check(d).ok()?;
        if d.is_zero() {
            return None;
        }
        let (lm, lc) = d.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone()))?;
        let lc_inv = lc.inv().ok()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero(&self.universe);
        while let Some((m, c)) = rem.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if !m.iter().zip(&lm).all(|(a, b)| a >= b) {
                return None;
            }
            let qm: Monomial = m.iter().zip(&lm).map(|(a, b)| a - b).collect();
            let qc = &c * &lc_inv;
            let t = Poly::monomial(&self.universe, qm.clone(), qc.clone());
            rem = &rem - &(&t * d);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Terms in canonical print order: weighted degree descending, ties by
    /// exponent vector ascending.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            self.monomial_weight(b)
                .cmp(&self.monomial_weight(a))
                .then_with(|| a.cmp(b))
        });
        v
    }

    pub fn monomial_text(&self, m: &[u32]) -> String {
        m.iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, e)| {
                if *e == 1 {
                    self.universe.name(i).to_string()
                } else {
                    format!("{}^{}", self.universe.name(i), e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Whether every coefficient is rational.
    pub fn is_rational(&self) -> bool {
        self.terms.values().all(|c| c.as_rational().is_some())
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(Scalar::is_integral)
    }
}

fn names(u: &Universe) -> Vec<&str> {
    u.vars.iter().map(|v| v.name.as_str()).collect()
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_universe(&self.universe, &other.universe)
            && self.terms.len() == other.terms.len()
            && self.terms.iter().zip(&other.terms).all(|(a, b)| a.0 == b.0 && a.1 == b.1)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let mono = self.monomial_text(m);
            let (neg, abs): (bool, Scalar) = match c.as_rational() {
                Some(r) if r.is_negative() => (true, Scalar::Rat(-r)),
                _ => (false, c.clone()),
            };
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
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        write!(f, "{out}")
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        self.try_add(o).expect("poly add")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self.try_sub(o).expect("poly sub")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        self.try_mul(o).expect("poly mul")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&Scalar::from_i64(-1))
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        &self + &o
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        &self - &o
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        &self * &o
    }
}

/// Arithmetic operation selector for [`poly_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(a: &Poly, b: &Poly, op: ArithOp) -> Result<Poly> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
    }
}
