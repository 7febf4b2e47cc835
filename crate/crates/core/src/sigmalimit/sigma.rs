use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::{parse_poly, Poly, Universe};

/// w1, w3, w5 with weights -1, -3, -5.
pub fn w_universe() -> Arc<Universe> {
    Universe::new(&[("w1", -1), ("w3", -3), ("w5", -5)])
}

pub const SIGMA_TEXT: &str = "w1*w5 - w3^2 - 1/3*w1^3*w3 + 1/45*w1^6";

/// Partial derivatives as printed, keyed by the differentiation indices.
pub const PARTIAL_TEXTS: [(&str, &str); 8] = [
    ("1", "w5 - w1^2*w3 + 2/15*w1^5"),
    ("3", "-2*w3 - 1/3*w1^3"),
    ("5", "w1"),
    ("11", "-2*w1*w3 + 2/3*w1^4"),
    ("13", "-w1^2"),
    ("15", "1"),
    ("33", "-2"),
    ("35", "0"),
];

/// The Schur-Weierstrass polynomial and its first and second partials.
#[derive(Debug, Clone)]
pub struct SigmaSW {
    pub sigma: Poly,
    partials: Vec<(String, Poly)>,
}

fn var_index(c: char) -> usize {
    match c {
        '1' => 0,
        '3' => 1,
        '5' => 2,
        _ => unreachable!("partial index {c}"),
    }
}

impl SigmaSW {
    /// Builds sigma and its partials, checking every stored partial against
    /// the derivative of sigma.
    pub fn new() -> Result<Self> {
        let u = w_universe();
        let sigma = parse_poly(SIGMA_TEXT, &u)?;
        let mut partials = Vec::new();
        for (key, text) in PARTIAL_TEXTS {
            let stored = parse_poly(text, &u)?;
            let derived = key.chars().fold(sigma.clone(), |p, c| p.derivative(var_index(c)));
            if derived != stored {
                return Err(Error::InvalidArgument(format!(
                    "partial sigma_{key} is {derived}, table has {stored}"
                )));
            }
            partials.push((key.to_string(), stored));
        }
        Ok(SigmaSW { sigma, partials })
    }

    pub fn universe(&self) -> &Arc<Universe> {
        self.sigma.universe()
    }

    /// Partial by index string such as "1", "13", "35" (order insensitive).
    pub fn partial(&self, key: &str) -> Poly {
        let mut k: Vec<char> = key.chars().collect();
        k.sort_unstable();
        let key: String = k.into_iter().collect();
        if let Some((_, p)) = self.partials.iter().find(|(n, _)| *n == key) {
            return p.clone();
        }
        key.chars().fold(self.sigma.clone(), |p, c| p.derivative(var_index(c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Scalar;

    #[test]
    fn partials_and_grading() {
        let s = SigmaSW::new().unwrap();
        let wd = s.sigma.weighted_degree().unwrap();
        assert!(wd.homogeneous);
        assert_eq!(wd.degree, Some(-6));
        assert_eq!(s.partial("51"), s.partial("15"));
        assert_eq!(s.partial("55"), Poly::zero(s.universe()));
        assert_eq!(s.partial("15").constant_term(), Scalar::one());
    }
}
