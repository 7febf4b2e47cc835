use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::{Poly, Scalar, Universe};

use super::params::{CurveParams, Y_NAMES, Y_WEIGHTS};

/// `(c[0] + c[1] Y1 + c[2] Y2 + c[3] Y1 Y2) / (X1 - X2)^d` with every `c[i]`
/// a polynomial in X1, X2 and the symbolic curve parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotElem {
    pub c: [Poly; 4],
    pub d: u32,
}

const BASIS: [&str; 4] = ["1", "Y1", "Y2", "Y1*Y2"];

impl QuotElem {
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Poly::is_zero)
    }

    pub fn denom_exp(&self) -> u32 {
        self.d
    }
}

impl fmt::Display for QuotElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (c, b)) in self.c.iter().zip(BASIS).enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{b}: {c}")?;
        }
        write!(f, "] / (X1 - X2)^{}", self.d)
    }
}

/// The ring C[X1,Y1,X2,Y2]/(Y1^2 - Q(X1), Y2^2 - Q(X2)) localized at X1 - X2.
#[derive(Debug, Clone)]
pub struct CurveRing {
    params: CurveParams,
    universe: Arc<Universe>,
    xy_universe: Arc<Universe>,
    q: [Poly; 2],
    dq: [Poly; 2],
    diff: Poly,
}

impl CurveRing {
    pub fn new(params: CurveParams) -> Self {
        let mut vars = vec![("X1", 2), ("X2", 2)];
        let mut xy = vec![("X1", 2), ("Y1", 7), ("X2", 2), ("Y2", 7)];
        for (name, w) in Y_NAMES.iter().zip(Y_WEIGHTS) {
            if params.value(name).is_none() {
                vars.push((name, w));
                xy.push((name, w));
            }
        }
        let universe = Universe::new(&vars);
        let xy_universe = Universe::new(&xy);
        let q1 = params.q_poly(&universe, "X1");
        let q2 = params.q_poly(&universe, "X2");
        let dq = [q1.derivative(0), q2.derivative(1)];
        let diff = Poly::var_at(&universe, 0) - Poly::var_at(&universe, 1);
        CurveRing { params, universe, xy_universe, q: [q1, q2], dq, diff }
    }

    pub fn symbolic() -> Self {
        Self::new(CurveParams::symbolic())
    }

    pub fn params(&self) -> &CurveParams {
        &self.params
    }

    /// Universe of the coefficient polynomials: X1, X2 and symbolic parameters.
    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    /// Universe X1, Y1, X2, Y2 plus symbolic parameters.
    pub fn xy_universe(&self) -> &Arc<Universe> {
        &self.xy_universe
    }

    /// Q(X_k) for k = 1, 2.
    pub fn q(&self, k: usize) -> &Poly {
        &self.q[k - 1]
    }

    pub fn dq(&self, k: usize) -> &Poly {
        &self.dq[k - 1]
    }

    fn zero_poly(&self) -> Poly {
        Poly::zero(&self.universe)
    }

    pub fn zero(&self) -> QuotElem {
        QuotElem { c: std::array::from_fn(|_| self.zero_poly()), d: 0 }
    }

    pub fn one(&self) -> QuotElem {
        self.from_poly(Poly::one(&self.universe))
    }

    pub fn constant(&self, c: Scalar) -> QuotElem {
        self.from_poly(Poly::constant(&self.universe, c))
    }

    pub fn from_poly(&self, p: Poly) -> QuotElem {
        self.from_components([p, self.zero_poly(), self.zero_poly(), self.zero_poly()], 0)
    }

    pub fn from_components(&self, c: [Poly; 4], d: u32) -> QuotElem {
        self.normalize(QuotElem { c, d })
    }

    pub fn x(&self, k: usize) -> QuotElem {
        self.from_poly(Poly::var_at(&self.universe, k - 1))
    }

    pub fn y(&self, k: usize) -> QuotElem {
        let mut e = self.zero();
        e.c[k] = Poly::one(&self.universe);
        e
    }

    /// Symbolic parameter as a ring element.
    pub fn param(&self, name: &str) -> Result<QuotElem> {
        if let Some(v) = self.params.value(name) {
            return Ok(self.constant(v.clone()));
        }
        Ok(self.from_poly(Poly::var(&self.universe, name)?))
    }

    /// Image of a polynomial in X1, Y1, X2, Y2 (plus parameters) in the ring.
    /// Parameters with numeric values are substituted.
    pub fn from_xy_poly(&self, f: &Poly) -> Result<QuotElem> {
        let u = f.universe();
        let mut vals: Vec<Option<QuotElem>> = Vec::with_capacity(u.len());
        for i in 0..u.len() {
            let name = u.name(i);
            let v = match name {
                "X1" => self.x(1),
                "X2" => self.x(2),
                "Y1" => self.y(1),
                "Y2" => self.y(2),
                other => self.param(other)?,
            };
            vals.push(Some(v));
        }
        f.evaluate_with(
            &vals,
            &self.one(),
            |a, b| self.add(a, b),
            |a, b| self.mul(a, b),
            |c, a| self.scale(a, c),
        )
    }

    /// Inverse of [`from_xy_poly`] for elements with no denominator.
    pub fn to_xy_poly(&self, a: &QuotElem) -> Result<Poly> {
        if a.d != 0 {
            return Err(Error::InvalidArgument(format!("element has denominator (X1 - X2)^{}", a.d)));
        }
        let u = &self.xy_universe;
        let lift = |p: &Poly| p.embed(u);
        let y1 = Poly::var(u, "Y1")?;
        let y2 = Poly::var(u, "Y2")?;
        Ok(&(&lift(&a.c[0])? + &(&lift(&a.c[1])? * &y1)) + &(&(&lift(&a.c[2])? * &y2) + &(&lift(&a.c[3])? * &(&y1 * &y2))))
    }

    /// Exact quotient by (X1 - X2), or `None` if it does not divide.
    pub fn div_by_diff(&self, p: &Poly) -> Option<Poly> {
        if p.is_zero() {
            return Some(p.clone());
        }
        // synthetic division in X1 over the remaining variables
        let max = p.max_exponents()[0] as usize;
        let mut rows: Vec<Poly> = vec![self.zero_poly(); max + 1];
        for (m, c) in p.terms() {
            let mut rest = m.clone();
            let k = rest[0] as usize;
            rest[0] = 0;
            rows[k].add_term(rest, c.clone());
        }
        let x1 = Poly::var_at(&self.universe, 0);
        let x2 = Poly::var_at(&self.universe, 1);
        let mut quotient = self.zero_poly();
        let mut carry = self.zero_poly();
        for k in (1..=max).rev() {
            carry = &rows[k] + &(&x2 * &carry);
            quotient = &quotient + &(&carry * &x1.pow(k as u32 - 1));
        }
        let remainder = &rows[0] + &(&x2 * &carry);
        remainder.is_zero().then_some(quotient)
    }

    /// Cancels common factors of (X1 - X2) between numerator and denominator.
    pub fn normalize(&self, mut a: QuotElem) -> QuotElem {
        if a.is_zero() {
            a.d = 0;
            return a;
        }
        while a.d > 0 {
            let divided: Option<Vec<Poly>> = a.c.iter().map(|p| self.div_by_diff(p)).collect();
            match divided {
                Some(v) => {
                    a.c = v.try_into().expect("four components");
                    a.d -= 1;
                }
                None => break,
            }
        }
        a
    }

    fn lift(&self, a: &QuotElem, d: u32) -> [Poly; 4] {
        if a.d == d {
            return a.c.clone();
        }
        let f = self.diff.pow(d - a.d);
        std::array::from_fn(|i| &a.c[i] * &f)
    }

    pub fn add(&self, a: &QuotElem, b: &QuotElem) -> QuotElem {
        let d = a.d.max(b.d);
        let (x, y) = (self.lift(a, d), self.lift(b, d));
        self.normalize(QuotElem { c: std::array::from_fn(|i| &x[i] + &y[i]), d })
    }

    pub fn neg(&self, a: &QuotElem) -> QuotElem {
        QuotElem { c: std::array::from_fn(|i| -&a.c[i]), d: a.d }
    }

    pub fn sub(&self, a: &QuotElem, b: &QuotElem) -> QuotElem {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &QuotElem, s: &Scalar) -> QuotElem {
        self.normalize(QuotElem { c: std::array::from_fn(|i| a.c[i].scale(s)), d: a.d })
    }

    pub fn mul_poly(&self, a: &QuotElem, p: &Poly) -> QuotElem {
        self.normalize(QuotElem { c: std::array::from_fn(|i| &a.c[i] * p), d: a.d })
    }

    pub fn mul(&self, a: &QuotElem, b: &QuotElem) -> QuotElem {
        let [a0, a1, a2, a3] = &a.c;
        let [b0, b1, b2, b3] = &b.c;
        let (q1, q2) = (&self.q[0], &self.q[1]);
        let c0 = &(&(a0 * b0) + &(&(a1 * b1) * q1)) + &(&(&(a2 * b2) * q2) + &(&(&(a3 * b3) * q1) * q2));
        let c1 = &(&(a0 * b1) + &(a1 * b0)) + &(&(&(a2 * b3) + &(a3 * b2)) * q2);
        let c2 = &(&(a0 * b2) + &(a2 * b0)) + &(&(&(a1 * b3) + &(a3 * b1)) * q1);
        let c3 = &(&(a0 * b3) + &(a3 * b0)) + &(&(a1 * b2) + &(a2 * b1));
        self.normalize(QuotElem { c: [c0, c1, c2, c3], d: a.d + b.d })
    }

    pub fn pow(&self, a: &QuotElem, e: u32) -> QuotElem {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Applies D_k = 2 Y_k d/dX_k + Q'(X_k) d/dY_k.
    pub fn apply_d(&self, k: usize, a: &QuotElem) -> QuotElem {
        assert!(k == 1 || k == 2, "D_k needs k in {{1, 2}}");
        let [c0, c1, c2, c3] = &a.c;
        let idx = k - 1;
        let dx = |p: &Poly| p.derivative(idx);
        let two = Scalar::from_i64(2);
        let (q, dq) = (&self.q[idx], &self.dq[idx]);
        // derivative of the numerator, basis order 1, Y1, Y2, Y1Y2
        let num = if k == 1 {
            [
                &(&dx(c1).scale(&two) * q) + &(dq * c1),
                dx(c0).scale(&two),
                &(&dx(c3).scale(&two) * q) + &(dq * c3),
                dx(c2).scale(&two),
            ]
        } else {
            [
                &(&dx(c2).scale(&two) * q) + &(dq * c2),
                &(&dx(c3).scale(&two) * q) + &(dq * c3),
                dx(c0).scale(&two),
                dx(c1).scale(&two),
            ]
        };
        let first = QuotElem { c: num, d: a.d };
        if a.d == 0 {
            return self.normalize(first);
        }
        // quotient rule: D(X1 - X2) is 2Y1 for k = 1 and -2Y2 for k = 2
        let d_diff = if k == 1 { self.scale(&self.y(1), &two) } else { self.scale(&self.y(2), &Scalar::from_i64(-2)) };
        let shifted = QuotElem { c: a.c.clone(), d: a.d + 1 };
        let second = self.mul(&self.scale(&shifted, &Scalar::from_i64(a.d as i64)), &d_diff);
        self.sub(&first, &second)
    }

    /// Applies L3* (`which = 3`) or L5* (`which = 5`).
    pub fn apply_l(&self, which: u32, a: &QuotElem) -> Result<QuotElem> {
        let d1 = self.apply_d(1, a);
        let d2 = self.apply_d(2, a);
        let num = match which {
            3 => self.sub(&d2, &d1),
            5 => {
                let x1 = Poly::var_at(&self.universe, 0);
                let x2 = Poly::var_at(&self.universe, 1);
                self.sub(&self.mul_poly(&d1, &x2), &self.mul_poly(&d2, &x1))
            }
            other => return Err(Error::InvalidArgument(format!("no operator L{other}*; expected 3 or 5"))),
        };
        Ok(self.normalize(QuotElem { c: num.c, d: num.d + 1 }))
    }

    /// The images of u2, u4, u5, u7.
    pub fn uquad(&self) -> UQuad {
        let half = Scalar::from_ratio(1, 2);
        let x_sum = self.add(&self.x(1), &self.x(2));
        let dx = self.from_poly(self.diff.clone());
        let y_diff = self.sub(&self.y(1), &self.y(2));
        let y_sum = self.add(&self.y(1), &self.y(2));
        UQuad {
            u2: self.scale(&x_sum, &half),
            u4: self.scale(&self.mul(&dx, &dx), &Scalar::from_ratio(1, 4)),
            u5: self.normalize(QuotElem { c: y_diff.c, d: 1 }),
            u7: self.scale(&y_sum, &half),
        }
    }

    /// Substitutes the images of u2, u4, u5, u7 into a polynomial whose other
    /// variables are curve parameters.
    pub fn eval_u_poly(&self, p: &Poly) -> Result<QuotElem> {
        let uq = self.uquad();
        let u = p.universe();
        let mut vals = Vec::with_capacity(u.len());
        for i in 0..u.len() {
            let v = match u.name(i) {
                "u2" => uq.u2.clone(),
                "u4" => uq.u4.clone(),
                "u5" => uq.u5.clone(),
                "u7" => uq.u7.clone(),
                other => self.param(other)?,
            };
            vals.push(Some(v));
        }
        p.evaluate_with(
            &vals,
            &self.one(),
            |a, b| self.add(a, b),
            |a, b| self.mul(a, b),
            |c, a| self.scale(a, c),
        )
    }
}

/// Images of the u-coordinates in the localized ring.
#[derive(Debug, Clone, PartialEq)]
pub struct UQuad {
    pub u2: QuotElem,
    pub u4: QuotElem,
    pub u5: QuotElem,
    pub u7: QuotElem,
}

impl UQuad {
    pub fn get(&self, name: &str) -> Option<&QuotElem> {
        match name {
            "u2" => Some(&self.u2),
            "u4" => Some(&self.u4),
            "u5" => Some(&self.u5),
            "u7" => Some(&self.u7),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_poly;

    fn zero_ring() -> CurveRing {
        CurveRing::new(CurveParams::zero())
    }

    #[test]
    fn y_squared_reduces() {
        let r = CurveRing::symbolic();
        let y1y1 = r.mul(&r.y(1), &r.y(1));
        assert_eq!(y1y1, r.from_poly(r.q(1).clone()));
    }

    #[test]
    fn u_relations() {
        let r = CurveRing::symbolic();
        let uq = r.uquad();
        assert_eq!((uq.u2.d, uq.u4.d, uq.u5.d, uq.u7.d), (0, 0, 1, 0));
        let x1x2 = r.mul(&r.x(1), &r.x(2));
        assert_eq!(r.sub(&r.mul(&uq.u2, &uq.u2), &uq.u4), x1x2);
        let y1y2 = r.mul(&r.y(1), &r.y(2));
        let rhs = r.sub(&r.mul(&uq.u7, &uq.u7), &r.mul(&uq.u4, &r.mul(&uq.u5, &uq.u5)));
        assert_eq!(rhs, y1y2);
    }

    #[test]
    fn u5_squared_keeps_denominator() {
        let r = zero_ring();
        let uq = r.uquad();
        let sq = r.mul(&uq.u5, &uq.u5);
        let dy = r.sub(&r.y(1), &r.y(2));
        let expected = r.normalize(QuotElem { c: r.mul(&dy, &dy).c, d: 2 });
        assert_eq!(sq, expected);
        assert_eq!(sq.d, 2);
    }

    #[test]
    fn derivations_on_generators() {
        let r = CurveRing::symbolic();
        assert_eq!(r.apply_d(1, &r.x(1)), r.scale(&r.y(1), &Scalar::from_i64(2)));
        assert_eq!(r.apply_d(1, &r.y(1)), r.from_poly(r.dq(1).clone()));
        assert!(r.apply_d(1, &r.x(2)).is_zero());
        let l3x1 = r.apply_l(3, &r.x(1)).unwrap();
        assert_eq!(l3x1, QuotElem { c: r.scale(&r.y(1), &Scalar::from_i64(-2)).c, d: 1 });
        let l5y2 = r.apply_l(5, &r.y(2)).unwrap();
        let num = -&(&Poly::var_at(r.universe(), 0) * r.dq(2));
        assert_eq!(l5y2, r.normalize(QuotElem { c: r.from_poly(num).c, d: 1 }));
        let uq = r.uquad();
        assert_eq!(r.apply_l(3, &uq.u2).unwrap(), r.neg(&uq.u5));
        assert!(r.apply_l(4, &uq.u2).is_err());
    }

    #[test]
    fn relations_are_killed() {
        let r = CurveRing::symbolic();
        let f = parse_poly("Y1^2 - X1^7 - y4*X1^5 + y6*X1^4 - y8*X1^3 + y10*X1^2 - y12*X1 + y14", r.xy_universe())
            .unwrap();
        assert!(r.from_xy_poly(&f).unwrap().is_zero());
        // the same relation, written without reduction, is killed by L3* and L5*
        let raw = QuotElem {
            c: [
                -r.q(1),
                Poly::zero(r.universe()),
                Poly::zero(r.universe()),
                Poly::zero(r.universe()),
            ],
            d: 0,
        };
        let y1sq = r.mul(&r.y(1), &r.y(1));
        let rel = r.add(&y1sq, &raw);
        assert!(rel.is_zero());
        assert!(r.apply_l(3, &rel).unwrap().is_zero());
    }

    #[test]
    fn diff_division() {
        let r = zero_ring();
        let p = parse_poly("X1^3 - X2^3", r.universe()).unwrap();
        let q = r.div_by_diff(&p).unwrap();
        assert_eq!(q, parse_poly("X1^2 + X1*X2 + X2^2", r.universe()).unwrap());
        assert!(r.div_by_diff(&parse_poly("X1^3 + X2", r.universe()).unwrap()).is_none());
    }

    #[test]
    fn canonical_dump() {
        let r = zero_ring();
        let uq = r.uquad();
        assert_eq!(uq.u5.to_string(), "[1: 0; Y1: 1; Y2: -1; Y1*Y2: 0] / (X1 - X2)^1");
    }
}
