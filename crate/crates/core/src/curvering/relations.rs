//! The generators H12, H14 of the ideal of the symmetric square in u-coordinates.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::{parse_poly, Poly, Scalar, Universe, Var};

use super::params::{CurveParams, Y_NAMES, Y_WEIGHTS};
use super::symmetrize::{symmetrize, u_universe};

/// u2, u4, u5, u7, y4, ..., y14.
pub fn standard_u_universe() -> Arc<Universe> {
    let extra: Vec<Var> =
        Y_NAMES.iter().zip(Y_WEIGHTS).map(|(n, w)| Var { name: n.to_string(), weight: w }).collect();
    u_universe(&extra)
}

pub const H12_TEXT: &str = "2*u5*u7 - 7*u2^6 - 35*u2^4*u4 - 21*u2^2*u4^2 - u4^3 \
    - y4*(5*u2^4 + 10*u2^2*u4 + u4^2) + 4*y6*(u2^3 + u2*u4) - y8*(3*u2^2 + u4) + 2*y10*u2 - y12";

pub const H14_TEXT: &str = "-u7^2 - u4*u5^2 + 2*u2*u5*u7 - 6*u2^7 - 14*u2^5*u4 + 14*u2^3*u4^2 + 6*u2*u4^3 \
    - 4*y4*(u2^5 - u2*u4^2) + y6*(3*u2^4 - 2*u2^2*u4 - u4^2) - 2*y8*(u2^3 - u2*u4) + y10*(u2^2 - u4) - y14";

/// H12 and H14 over [`standard_u_universe`], with all parameters symbolic.
///
/// Both are cross-checked against their definitions through `symmetrize`:
/// H12 is ((Y1^2 - Q(X1)) - (Y2^2 - Q(X2)))/(X1 - X2), and H14 equals
/// -1/2 (Y1^2 - Q(X1) + Y2^2 - Q(X2)) + u2 H12.
pub fn build_h() -> Result<(Poly, Poly)> {
    let u = standard_u_universe();
    let h12 = parse_poly(H12_TEXT, &u)?;
    let h14 = parse_poly(H14_TEXT, &u)?;

    let (d12, d14) = defining_forms()?;
    let from_def12 = d12.embed(&u)?;
    if from_def12 != h12 {
        return Err(Error::InvalidArgument(format!("H12 disagrees with its definition: {}", &from_def12 - &h12)));
    }
    let u2 = Poly::var(&u, "u2")?;
    let from_def14 = &d14.embed(&u)?.scale(&Scalar::from_ratio(-1, 2)) + &(&u2 * &h12);
    if from_def14 != h14 {
        return Err(Error::InvalidArgument(format!("H14 disagrees with its definition: {}", &from_def14 - &h14)));
    }
    Ok((h12, h14))
}

/// u-coordinate forms of the two defining expressions
/// ((Y1^2 - Q(X1)) - (Y2^2 - Q(X2)))/(X1 - X2) and Y1^2 - Q(X1) + Y2^2 - Q(X2).
pub fn defining_forms() -> Result<(Poly, Poly)> {
    let mut vars = vec![("X1", 2), ("Y1", 7), ("X2", 2), ("Y2", 7)];
    vars.extend(Y_NAMES.iter().copied().zip(Y_WEIGHTS));
    let xy = Universe::new(&vars);
    let params = CurveParams::symbolic();
    let rel = |x: &str, y: &str| -> Result<Poly> {
        let yv = Poly::var(&xy, y)?;
        Ok(&(&yv * &yv) - &params.q_poly(&xy, x))
    };
    let (r1, r2) = (rel("X1", "Y1")?, rel("X2", "Y2")?);
    let diff = &Poly::var(&xy, "X1")? - &Poly::var(&xy, "X2")?;
    // (Y1^2 - Y2^2)/(X1 - X2) is 2 u5 u7; the Q part divides as a polynomial
    let q_part = (&params.q_poly(&xy, "X2") - &params.q_poly(&xy, "X1"))
        .div_exact(&diff)
        .expect("X1 - X2 divides Q(X2) - Q(X1)");
    let h12 = symmetrize(&q_part)?;
    let u = h12.universe().clone();
    let y_part = (&Poly::var(&u, "u5")? * &Poly::var(&u, "u7")?).scale(&Scalar::from_i64(2));
    Ok((&h12 + &y_part, symmetrize(&(&r1 + &r2))?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn printed_forms_match_definitions() {
        let (h12, h14) = build_h().unwrap();
        let wd12 = h12.weighted_degree().unwrap();
        let wd14 = h14.weighted_degree().unwrap();
        assert_eq!((wd12.homogeneous, wd12.degree), (true, Some(12)));
        assert_eq!((wd14.homogeneous, wd14.degree), (true, Some(14)));
    }

    #[test]
    fn constant_terms() {
        let (h12, h14) = build_h().unwrap();
        let at = [("y12", Complex64::new(3.0, 0.0)), ("y14", Complex64::new(5.0, 0.0))];
        let mut all: Vec<(&str, Complex64)> =
            ["u2", "u4", "u5", "u7", "y4", "y6", "y8", "y10"].iter().map(|n| (*n, Complex64::new(0.0, 0.0))).collect();
        all.extend(at);
        assert_eq!(h12.eval_complex(&all).unwrap().re, -3.0);
        assert_eq!(h14.eval_complex(&all).unwrap().re, -5.0);
    }
}
