//! The operators L_{k,l} = d_k - (R_k / R_l) d_l on C^3 for R = sigma.

use crate::error::{Error, Result};
use crate::exactalg::{Poly, Scalar};

use super::ratfun::RatFun3;
use super::sigma::SigmaSW;

fn slot(k: u8) -> Result<usize> {
    match k {
        1 => Ok(0),
        3 => Ok(1),
        5 => Ok(2),
        other => Err(Error::InvalidArgument(format!("index {other} is not one of 1, 3, 5"))),
    }
}

#[derive(Debug, Clone)]
pub struct LOperator {
    pub k: u8,
    pub l: u8,
    coeff: RatFun3,
}

impl LOperator {
    pub fn new(s: &SigmaSW, k: u8, l: u8) -> Result<Self> {
        if k == l {
            return Err(Error::InvalidArgument("L_{k,l} needs k != l".into()));
        }
        slot(k)?;
        slot(l)?;
        let coeff = RatFun3::new(s.partial(&k.to_string()), s.partial(&l.to_string()))?;
        Ok(LOperator { k, l, coeff })
    }

    pub fn apply(&self, f: &RatFun3) -> RatFun3 {
        let dk = f.derivative(slot(self.k).expect("checked"));
        let dl = f.derivative(slot(self.l).expect("checked"));
        dk.sub(&self.coeff.mul(&dl))
    }

    /// The operator applied to coordinate w_i (i in 1, 3, 5).
    fn on_coordinate(&self, s: &SigmaSW, i: u8) -> RatFun3 {
        let u = s.universe();
        let mut r = RatFun3::from_poly(Poly::zero(u));
        if i == self.k {
            r = r.add(&RatFun3::from_poly(Poly::one(u)));
        }
        if i == self.l {
            r = r.sub(&self.coeff);
        }
        r
    }
}

#[derive(Debug, Clone)]
pub struct BracketResidual {
    pub label: String,
    /// Components on w1, w3, w5.
    pub components: [RatFun3; 3],
}

impl BracketResidual {
    pub fn holds(&self) -> bool {
        self.components.iter().all(RatFun3::is_zero)
    }
}

/// [L_{a}, L_{b}] evaluated on the three coordinates.
pub fn lkl_bracket(s: &SigmaSW, a: (u8, u8), b: (u8, u8)) -> Result<BracketResidual> {
    let la = LOperator::new(s, a.0, a.1)?;
    let lb = LOperator::new(s, b.0, b.1)?;
    let comps: [RatFun3; 3] = [1u8, 3, 5].map(|i| {
        let ab = la.apply(&lb.on_coordinate(s, i));
        let ba = lb.apply(&la.on_coordinate(s, i));
        ab.sub(&ba)
    });
    Ok(BracketResidual { label: format!("[L{}{}, L{}{}]", a.0, a.1, b.0, b.1), components: comps })
}

/// The three pairs that commute.
pub const COMMUTING_PAIRS: [((u8, u8), (u8, u8)); 3] = [((1, 3), (5, 3)), ((1, 5), (3, 5)), ((3, 1), (5, 1))];

pub fn check_lkl_commutators(s: &SigmaSW) -> Result<Vec<BracketResidual>> {
    COMMUTING_PAIRS.iter().map(|(a, b)| lkl_bracket(s, *a, *b)).collect()
}

/// Numeric magnitude of a bracket component at a rational point, for reporting.
pub fn component_at(r: &RatFun3, point: &[Scalar; 3]) -> Result<Scalar> {
    r.eval(point)
}
