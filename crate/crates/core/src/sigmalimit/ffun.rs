//! The ratios f_i of sigma partials and the functions F2, F4, F5, F7.

use crate::error::Result;
use crate::exactalg::{parse_poly, Poly, Scalar, Series2};

use super::ratfun::RatFun3;
use super::sigma::SigmaSW;

/// Names of the seven ratios, in the order returned by [`f_ratios`].
pub const F_RATIO_NAMES: [&str; 7] = ["f1", "f2", "f3", "f4", "f5", "g5", "f7"];
const F_RATIO_PARTIALS: [&str; 7] = ["11", "3", "13", "5", "33", "15", "35"];

/// f1, f2, f3, f4, f5, g5, f7: second or first partials of sigma over sigma_1.
pub fn f_ratios(s: &SigmaSW) -> [RatFun3; 7] {
    let den = s.partial("1");
    F_RATIO_PARTIALS.map(|k| RatFun3 { num: s.partial(k), den: den.clone() })
}

/// F2, F4, F5, F7 as rational functions of (w1, w3, w5).
pub fn f_defs(s: &SigmaSW) -> [RatFun3; 4] {
    let [f1, f2, f3, f4, f5, g5, f7] = f_ratios(s);
    let q = |n: i64, d: i64| Scalar::from_ratio(n, d);
    let f2sq = f2.mul(&f2);
    let big_f2 = f2.scale(&q(-1, 2));
    let big_f4 = f2sq.scale(&q(1, 4)).sub(&f4);
    let big_f5 = f1.mul(&f2sq).add(&f5).sub(&f2.mul(&f3).scale(&q(2, 1))).scale(&q(1, 2));
    let terms = [
        (2, f2sq.mul(&f3)),
        (-2, f3.mul(&f4)),
        (-1, f1.mul(&f2sq).mul(&f2)),
        (2, f1.mul(&f2).mul(&f4)),
        (-1, f2.mul(&f5)),
        (2, f7.clone()),
        (-2, f2.mul(&g5)),
    ];
    let mut acc = RatFun3::from_poly(Poly::zero(s.universe()));
    for (c, t) in terms {
        acc = acc.add(&t.scale(&q(c, 1)));
    }
    let big_f7 = acc.scale(&q(1, 4));
    [big_f2, big_f4, big_f5, big_f7]
}

/// `scale * numerator / K`, with w1 standing for phi. Valid on sigma = 0 only.
#[derive(Debug, Clone, Copy)]
pub struct ClosedForm {
    pub scale: (i64, i64),
    pub numerator: &'static str,
    pub k: &'static str,
}

const K2: &str = "2*(2*w1^5 - 15*w1^2*w3 + 15*w5)";
const K4: &str = "4*(-8*w1^5*w5 + 27*w1^4*w3^2 - 30*w1^2*w3*w5 + 15*w5^2)";
const K5: &str = "3*(14*w1^5*w5^2 - 111*w1^4*w3^2*w5 + 189*w1^3*w3^4 + 165*w1^2*w3*w5^2 \
    - 585*w1*w3^3*w5 + 405*w3^5 + 5*w5^3)";
const K7: &str = "729*w1^5*w3^5 - 208*w1^5*w5^3 + 3042*w1^4*w3^2*w5^2 - 11583*w1^3*w3^4*w5 + 2187*w1^2*w3^6 \
    - 4380*w1^2*w3*w5^3 + 28620*w1*w3^3*w5^2 - 24300*w3^5*w5 + 15*w5^4";

/// Closed forms consistent with [`f_defs`] on sigma = 0.
pub const CLOSED_FORMS: [ClosedForm; 4] = [
    ClosedForm { scale: (5, 1), numerator: "w1^3 + 6*w3", k: K2 },
    ClosedForm { scale: (15, 1), numerator: "-w1^3*w3 + 15*w1*w5 - 15*w3^2", k: K4 },
    ClosedForm {
        scale: (1, 1),
        numerator: "8*w1^5*w5 + 63*w1^4*w3^2 - 195*w1^2*w3*w5 + 135*w1*w3^3 - 15*w5^2",
        k: K5,
    },
    ClosedForm {
        scale: (15, 2),
        numerator: "15*w1^5*w3*w5 - 18*w1^4*w3^3 - 25*w1^3*w5^2 + 45*w1^2*w3^2*w5 - 27*w1*w3^4",
        k: K7,
    },
];

/// The closed forms as commonly printed. The F5 and F7 entries do not agree
/// with [`f_defs`] on sigma = 0; they are kept to document the discrepancy.
pub const PRINTED_CLOSED_FORMS: [ClosedForm; 4] = [
    CLOSED_FORMS[0],
    CLOSED_FORMS[1],
    ClosedForm {
        scale: (1, 1),
        numerator: "8*w1^5*w5 + 3*w1^4*w3^2 - 15*w1^2*w3*w5 - 45*w1*w3^3 - 15*w5^2",
        k: K5,
    },
    ClosedForm {
        scale: (10125, 2),
        numerator: "15*w1^5*w3*w5 - 50*w1^4*w3^3 - 25*w1^3*w5^2 + 129*w1^2*w3^2*w5 - 111*w1*w3^4",
        k: K7,
    },
];

impl ClosedForm {
    pub fn ratfun(&self, s: &SigmaSW) -> Result<RatFun3> {
        let u = s.universe();
        let num = parse_poly(self.numerator, u)?.scale(&Scalar::from_ratio(self.scale.0, self.scale.1));
        RatFun3::new(num, parse_poly(self.k, u)?)
    }
}

/// Evaluates closed forms at series arguments (phi, w3, w5).
pub fn f_closed_with(
    forms: &[ClosedForm; 4],
    s: &SigmaSW,
    phi: &Series2,
    w3: &Series2,
    w5: &Series2,
) -> Result<[Series2; 4]> {
    let order = phi.order();
    let bind = [("w1", phi), ("w3", w3), ("w5", w5)];
    let out: Vec<Series2> =
        forms.iter().map(|f| f.ratfun(s)?.substitute_series(order, &bind)).collect::<Result<_>>()?;
    Ok(out.try_into().expect("four forms"))
}

pub fn f_closed(s: &SigmaSW, phi: &Series2, w3: &Series2, w5: &Series2) -> Result<[Series2; 4]> {
    f_closed_with(&CLOSED_FORMS, s, phi, w3, w5)
}

/// F2, F4, F5, F7 through their definitions, at series arguments.
pub fn f_defs_series(s: &SigmaSW, w1: &Series2, w3: &Series2, w5: &Series2) -> Result<[Series2; 4]> {
    let order = w1.order();
    let bind = [("w1", w1), ("w3", w3), ("w5", w5)];
    let out: Vec<Series2> =
        f_defs(s).iter().map(|f| f.substitute_series(order, &bind)).collect::<Result<_>>()?;
    Ok(out.try_into().expect("four functions"))
}
