//! Dense univariate polynomials over Q, stored low degree first.
//!
//! Only what the extension fields and the discriminant check need.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type UPoly = Vec<BigRational>;

pub fn trim(p: &mut UPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn sub(a: &[BigRational], b: &[BigRational]) -> UPoly {
    let n = a.len().max(b.len());
    let mut out: UPoly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

pub fn mul(a: &[BigRational], b: &[BigRational]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; panics on a zero divisor.
pub fn div_rem(a: &[BigRational], b: &[BigRational]) -> (UPoly, UPoly) {
    let db = degree(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    let mut rem: UPoly = a.to_vec();
    trim(&mut rem);
    let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = &rem[dr] / &lead;
        let shift = dr - db;
        for (k, bk) in b.iter().enumerate().take(db + 1) {
            rem[shift + k] -= &c * bk;
        }
        quot[shift] = c;
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

pub fn derivative(p: &[BigRational]) -> UPoly {
    let mut out: UPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(i.into()))
        .collect();
    trim(&mut out);
    out
}

/// Monic gcd.
pub fn gcd(a: &[BigRational], b: &[BigRational]) -> UPoly {
    let mut x: UPoly = a.to_vec();
    let mut y: UPoly = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while degree(&y).is_some() {
        let (_, r) = div_rem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(d) = degree(&x) {
        let lead = x[d].clone();
        for c in x.iter_mut() {
            *c = &*c / &lead;
        }
    }
    x
}

/// Inverse of `a` modulo `m`, if gcd(a, m) = 1.
pub fn inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<UPoly> {
    // extended Euclid keeping only the coefficient of `a`
    let mut r0: UPoly = m.to_vec();
    let mut r1: UPoly = div_rem(a, m).1;
    let mut s0: UPoly = Vec::new();
    let mut s1: UPoly = vec![BigRational::one()];
    while degree(&r1).is_some() {
        let (q, r) = div_rem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if degree(&r0) != Some(0) {
        return None;
    }
    let c = r0[0].clone();
    let mut inv = div_rem(&s0, m).1;
    for x in inv.iter_mut() {
        *x = &*x / &c;
    }
    Some(inv)
}
