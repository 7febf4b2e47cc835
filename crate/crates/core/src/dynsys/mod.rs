//! Two commuting polynomial vector fields on C^4 with coordinates
//! (G2, G4, G5, G7) and their two polynomial integrals.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::curvering::{standard_u_universe, u_derivative_equations};
use crate::error::{Error, Result};
use crate::exactalg::{parse_poly, Poly, Universe};

pub type State4 = [Complex64; 4];

pub const G_NAMES: [&str; 4] = ["G2", "G4", "G5", "G7"];
/// The parameters the vector fields depend on.
pub const FIELD_PARAMS: [&str; 4] = ["y4", "y6", "y8", "y10"];

/// G2, G4, G5, G7, y4, y6, y8, y10 with their weights.
pub fn g_universe() -> Arc<Universe> {
    Universe::new(&[("G2", 2), ("G4", 4), ("G5", 5), ("G7", 7), ("y4", 4), ("y6", 6), ("y8", 8), ("y10", 10)])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum System {
    /// Flow in t, the G-image of L3*.
    I,
    /// Flow in tau, the G-image of L5*.
    II,
}

impl System {
    fn operator(self) -> u32 {
        match self {
            System::I => 3,
            System::II => 5,
        }
    }
}

const SYSTEM_I: [&str; 4] = [
    "-G5",
    "-2*G7",
    "-35*G2^4 - 42*G2^2*G4 - 3*G4^2 - 2*y4*(5*G2^2 + G4) + 4*y6*G2 - y8",
    "-7*(3*G2^5 + 10*G2^3*G4 + 3*G2*G4^2) - 10*y4*(G2^3 + G2*G4) + 2*y6*(3*G2^2 + G4) - 3*y8*G2 + y10",
];

const SYSTEM_II: [&str; 4] = [
    "G2*G5 - G7",
    "2*(G2*G7 - G4*G5)",
    "G5^2 + 14*G2^5 - 28*G2^3*G4 - 18*G2*G4^2 - 8*y4*G2*G4 + 2*y6*(G2^2 + G4) - 2*y8*G2 + y10",
    "-G5*G7 + 21*G2^6 + 35*G2^4*G4 - 21*G2^2*G4^2 - 3*G4^3 + 2*y4*(5*G2^4 - G4^2) \
     - 2*y6*(3*G2^3 - G2*G4) + y8*(3*G2^2 - G4) - y10*G2",
];

pub const I12_TEXT: &str = "2*G5*G7 - 7*G2^6 - 35*G2^4*G4 - 21*G2^2*G4^2 - G4^3 \
    - y4*(5*G2^4 + 10*G2^2*G4 + G4^2) + 4*y6*(G2^3 + G2*G4) - y8*(3*G2^2 + G4) + 2*y10*G2";

pub const I14_TEXT: &str = "-G7^2 - G4*G5^2 + 2*G2*G5*G7 - 6*G2^7 - 14*G2^5*G4 + 14*G2^3*G4^2 + 6*G2*G4^3 \
    - 4*y4*(G2^5 - G2*G4^2) + y6*(3*G2^4 - 2*G2^2*G4 - G4^2) - 2*y8*(G2^3 - G2*G4) + y10*(G2^2 - G4)";

/// Components (dG2, dG4, dG5, dG7).
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    pub components: [Poly; 4],
}

impl VectorField {
    pub fn universe(&self) -> &Arc<Universe> {
        self.components[0].universe()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    /// Constant field with the given rational components.
    pub fn constant(universe: &Arc<Universe>, values: [i64; 4]) -> Self {
        VectorField {
            components: values.map(|v| Poly::constant(universe, crate::exactalg::Scalar::from_i64(v))),
        }
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, c) in G_NAMES.iter().zip(&self.components) {
            writeln!(f, "d{name} = {c}")?;
        }
        Ok(())
    }
}

pub fn make_system(which: System) -> VectorField {
    let u = g_universe();
    let src = match which {
        System::I => SYSTEM_I,
        System::II => SYSTEM_II,
    };
    VectorField { components: src.map(|s| parse_poly(s, &u).expect("system transcription parses")) }
}

fn g_to_u(name: &str) -> String {
    match name.strip_prefix('G') {
        Some(rest) => format!("u{rest}"),
        None => name.to_string(),
    }
}

/// I12 and I14, checked against H12 + y12 and H14 + y14 under G -> u.
pub fn make_integrals() -> Result<(Poly, Poly)> {
    let u = g_universe();
    let i12 = parse_poly(I12_TEXT, &u)?;
    let i14 = parse_poly(I14_TEXT, &u)?;
    let (h12, h14) = crate::curvering::build_h()?;
    let su = standard_u_universe();
    for (name, i, h, y) in [("I12", &i12, &h12, "y12"), ("I14", &i14, &h14, "y14")] {
        let lifted = i.embed_renamed(&su, g_to_u)?;
        if lifted != h + &Poly::var(&su, y)? {
            return Err(Error::InvalidArgument(format!("{name} differs from the curve relation")));
        }
    }
    Ok((i12, i14))
}

/// Whether the system equals the u-coordinate action of L3* / L5* under G -> u.
pub fn matches_u_derivatives(which: System) -> Result<bool> {
    let vf = make_system(which);
    let su = standard_u_universe();
    let eqs = u_derivative_equations()?;
    for (k, comp) in vf.components.iter().enumerate() {
        let coord = format!("u{}", &G_NAMES[k][1..]);
        let eq = eqs
            .iter()
            .find(|e| e.operator == which.operator() && e.coordinate == coord)
            .expect("equation for every coordinate");
        if comp.embed_renamed(&su, g_to_u)? != eq.rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sum over i of component_i * df/dG_i.
pub fn lie_derivative(vf: &VectorField, f: &Poly) -> Result<Poly> {
    let mut out = Poly::zero(f.universe());
    for (name, c) in G_NAMES.iter().zip(&vf.components) {
        out = out.try_add(&c.try_mul(&f.derivative_by(name)?)?)?;
    }
    Ok(out)
}

/// The commutator [a, b] acting on coordinates: a(b_i) - b(a_i).
pub fn lie_bracket(a: &VectorField, b: &VectorField) -> Result<VectorField> {
    let mut comps = Vec::with_capacity(4);
    for i in 0..4 {
        comps.push(lie_derivative(a, &b.components[i])?.try_sub(&lie_derivative(b, &a.components[i])?)?);
    }
    Ok(VectorField { components: comps.try_into().expect("four components") })
}

/// A polynomial flattened for repeated double-complex evaluation.
#[derive(Debug, Clone)]
pub struct CompiledPoly {
    terms: Vec<(Complex64, Vec<(usize, u32)>)>,
}

impl CompiledPoly {
    /// `slots` names the variable bound to each position of the evaluation input;
    /// other variables are fixed by `fixed`.
    pub fn new(p: &Poly, slots: &[&str], fixed: &[(&str, Complex64)]) -> Result<Self> {
        let u = p.universe();
        let mut terms = Vec::with_capacity(p.num_terms());
        for (m, c) in p.terms() {
            let mut coeff = c.to_complex();
            let mut factors = Vec::new();
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = u.name(i);
                if let Some(s) = slots.iter().position(|n| *n == name) {
                    factors.push((s, e));
                } else if let Some((_, v)) = fixed.iter().find(|(n, _)| *n == name) {
                    coeff *= v.powu(e);
                } else {
                    return Err(Error::UnboundVariable(name.to_string()));
                }
            }
            terms.push((coeff, factors));
        }
        Ok(CompiledPoly { terms })
    }

    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(c, fs)| fs.iter().fold(*c, |acc, (i, e)| acc * x[*i].powu(*e)))
            .sum()
    }

    /// Sum of absolute term values, the scale for relative residuals.
    pub fn abs_sum(&self, x: &[Complex64]) -> f64 {
        self.terms
            .iter()
            .map(|(c, fs)| fs.iter().fold(c.norm(), |acc, (i, e)| acc * x[*i].norm().powi(*e as i32)))
            .sum()
    }
}

fn param_bindings(y: &[Complex64; 4]) -> Vec<(&'static str, Complex64)> {
    FIELD_PARAMS.iter().copied().zip(y.iter().copied()).collect()
}

/// A vector field with numeric parameters, ready for integration.
#[derive(Debug, Clone)]
pub struct CompiledField {
    components: [CompiledPoly; 4],
}

impl CompiledField {
    pub fn new(vf: &VectorField, y: &[Complex64; 4]) -> Result<Self> {
        let fixed = param_bindings(y);
        let comps: Vec<CompiledPoly> =
            vf.components.iter().map(|c| CompiledPoly::new(c, &G_NAMES, &fixed)).collect::<Result<_>>()?;
        Ok(CompiledField { components: comps.try_into().expect("four components") })
    }

    pub fn eval(&self, state: &State4) -> State4 {
        std::array::from_fn(|i| self.components[i].eval(state))
    }
}

/// Compiles an integral with numeric y4..y10.
pub fn compile_integral(f: &Poly, y: &[Complex64; 4]) -> Result<CompiledPoly> {
    CompiledPoly::new(f, &G_NAMES, &param_bindings(y))
}

/// Evaluates the field at `state` with parameters (y4, y6, y8, y10).
pub fn eval_field(vf: &VectorField, state: &State4, y: &[Complex64; 4]) -> Result<State4> {
    Ok(CompiledField::new(vf, y)?.eval(state))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    const ZERO: State4 = [Complex64::new(0.0, 0.0); 4];

    #[test]
    fn constant_terms() {
        let one = make_system(System::I);
        let two = make_system(System::II);
        let y = [c(0.0), c(0.0), c(1.0), c(0.0)];
        assert_eq!(eval_field(&one, &ZERO, &y).unwrap(), [c(0.0), c(0.0), c(-1.0), c(0.0)]);
        let y = [c(0.0), c(0.0), c(0.0), c(1.0)];
        assert_eq!(eval_field(&two, &ZERO, &y).unwrap(), [c(0.0), c(0.0), c(1.0), c(0.0)]);
        assert_eq!(eval_field(&one, &ZERO, &y).unwrap(), [c(0.0), c(0.0), c(0.0), c(1.0)]);
        let s = [c(1.0), c(0.0), c(0.0), c(0.0)];
        assert_eq!(eval_field(&one, &s, &[c(0.0); 4]).unwrap(), [c(0.0), c(0.0), c(-35.0), c(-21.0)]);
    }

    #[test]
    fn grading() {
        for (which, shift) in [(System::I, 3), (System::II, 5)] {
            for (k, comp) in make_system(which).components.iter().enumerate() {
                let w = comp.weighted_degree().unwrap();
                let want = [2, 4, 5, 7][k] + shift;
                assert!(w.homogeneous, "{which:?} component {k}");
                assert_eq!(w.degree, Some(want));
            }
        }
        let (i12, i14) = make_integrals().unwrap();
        assert_eq!(i12.weighted_degree().unwrap().degree, Some(12));
        assert_eq!(i14.weighted_degree().unwrap().degree, Some(14));
    }

    #[test]
    fn conservation_and_first_equation() {
        let (i12, i14) = make_integrals().unwrap();
        for which in [System::I, System::II] {
            let vf = make_system(which);
            assert!(lie_derivative(&vf, &i12).unwrap().is_zero());
            assert!(lie_derivative(&vf, &i14).unwrap().is_zero());
        }
        let g2 = Poly::var(&g_universe(), "G2").unwrap();
        let d = lie_derivative(&make_system(System::I), &g2).unwrap();
        assert_eq!(d, -&Poly::var(&g_universe(), "G5").unwrap());
    }

    #[test]
    fn brackets() {
        let one = make_system(System::I);
        let two = make_system(System::II);
        assert!(lie_bracket(&one, &one).unwrap().is_zero());
        assert!(lie_bracket(&one, &two).unwrap().is_zero());
        let e1 = VectorField::constant(&g_universe(), [1, 0, 0, 0]);
        let br = lie_bracket(&one, &e1).unwrap();
        for (b, c) in br.components.iter().zip(&one.components) {
            assert_eq!(*b, -&c.derivative(0));
        }
    }

    #[test]
    fn systems_are_u_derivatives() {
        assert!(matches_u_derivatives(System::I).unwrap());
        assert!(matches_u_derivatives(System::II).unwrap());
    }

    #[test]
    fn no_y12_or_y14() {
        let u = g_universe();
        assert!(u.index("y12").is_none() && u.index("y14").is_none());
    }
}
