//! Named initial states with known closed-form solutions, stored as data files.

use std::sync::Arc;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::dynsys::{State4, System, G_NAMES};
use crate::error::{Error, Result};
use crate::exactalg::{parse_poly, parse_rational, ExtField, Poly, Scalar, Universe};
use crate::sigmalimit::{p_field, q_field};

use super::text::{ComplexArg, ComplexList};

const SOURCES: [(&str, &str); 3] = [
    ("example2", include_str!("../../presets/example2.json")),
    ("example3", include_str!("../../presets/example3.json")),
    ("example3-corrected", include_str!("../../presets/example3-corrected.json")),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize, Deserialize)]
pub enum PresetName {
    #[value(name = "example2")]
    #[serde(rename = "example2")]
    Example2,
    #[value(name = "example3")]
    #[serde(rename = "example3")]
    Example3,
    #[value(name = "example3-corrected")]
    #[serde(rename = "example3-corrected")]
    Example3Corrected,
}

impl PresetName {
    pub fn key(self) -> &'static str {
        match self {
            PresetName::Example2 => "example2",
            PresetName::Example3 => "example3",
            PresetName::Example3Corrected => "example3-corrected",
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct FieldSpec {
    pub generator: String,
    pub modulus: String,
    pub root: String,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ClosedTerm {
    pub coordinate: String,
    pub numerator: String,
    pub denominator: String,
    pub exponent: String,
}

/// `G_k(time) = c_k (1 + time)^e_k`, with `c_k` in a number field.
#[derive(Debug, Clone, Deserialize)]
pub struct Preset {
    pub name: String,
    pub note: String,
    pub system: String,
    pub y: ComplexList,
    pub t_end: ComplexArg,
    pub field: FieldSpec,
    pub closed_form: Vec<ClosedTerm>,
}

impl Preset {
    pub fn load(name: PresetName) -> Result<Preset> {
        let src = SOURCES.iter().find(|(k, _)| *k == name.key()).expect("every preset has a file").1;
        let p: Preset = serde_json::from_str(src)
            .map_err(|e| Error::InvalidArgument(format!("preset {}: {e}", name.key())))?;
        let names: Vec<&str> = p.closed_form.iter().map(|c| c.coordinate.as_str()).collect();
        if names != G_NAMES {
            return Err(Error::InvalidArgument(format!("preset {}: coordinates must be {:?}", p.name, G_NAMES)));
        }
        Ok(p)
    }

    pub fn system(&self) -> Result<System> {
        match self.system.as_str() {
            "I" => Ok(System::I),
            "II" => Ok(System::II),
            other => Err(Error::InvalidArgument(format!("preset {}: unknown system `{other}`", self.name))),
        }
    }

    /// The known field matching the generator, after checking its modulus.
    pub fn field(&self) -> Result<Arc<ExtField>> {
        let f = match self.field.generator.as_str() {
            "p" => p_field(),
            "q" => q_field(),
            other => return Err(Error::InvalidArgument(format!("preset {}: unknown generator `{other}`", self.name))),
        };
        let u = Universe::new(&[(f.name(), 1)]);
        let stated = parse_poly(&self.field.modulus, &u)?;
        let coeffs: Vec<Scalar> = (0..=f.degree()).map(|i| stated.coefficient(&[i as u32])).collect();
        let expect: Vec<Scalar> = f.modulus().iter().map(|c| Scalar::Rat(c.clone())).collect();
        if coeffs != expect || stated.total_degree() as usize != f.degree() {
            return Err(Error::InvalidArgument(format!(
                "preset {}: modulus `{}` differs from {}",
                self.name,
                self.field.modulus,
                f.modulus_text()
            )));
        }
        Ok(f)
    }

    fn eval_in(f: &Arc<ExtField>, src: &str) -> Result<Scalar> {
        let u = Universe::new(&[(f.name(), 1)]);
        let p: Poly = parse_poly(src, &u)?;
        p.evaluate_with(&[Some(f.generator())], &Scalar::one(), |a, b| a + b, |a, b| a * b, |c, x| c * x)
    }

    /// Exact constants and exponents of the closed form.
    pub fn closed_forms(&self) -> Result<[(Scalar, BigRational); 4]> {
        let f = self.field()?;
        let out: Vec<(Scalar, BigRational)> = self
            .closed_form
            .iter()
            .map(|c| {
                let num = Self::eval_in(&f, &c.numerator)?;
                let den = Self::eval_in(&f, &c.denominator)?;
                Ok((num.div(&den)?, parse_rational(&c.exponent)?))
            })
            .collect::<Result<_>>()?;
        Ok(out.try_into().expect("four coordinates checked on load"))
    }

    /// The closed form at complex time, with the generator at its embedded root.
    pub fn state_at(&self, time: Complex64) -> Result<State4> {
        let forms = self.closed_forms()?;
        Ok(std::array::from_fn(|i| {
            let (c, e) = &forms[i];
            c.to_complex() * (Complex64::new(1.0, 0.0) + time).powf(e.to_f64().expect("finite exponent"))
        }))
    }

    pub fn initial(&self) -> Result<State4> {
        self.state_at(Complex64::new(0.0, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sigmalimit::{example2_closed_forms, example3_closed_forms, Example3Forms};

    #[test]
    fn presets_match_library_constants() {
        let p2 = Preset::load(PresetName::Example2).unwrap();
        assert_eq!(p2.closed_forms().unwrap(), example2_closed_forms());
        assert_eq!(p2.system().unwrap(), System::II);
        let p3 = Preset::load(PresetName::Example3).unwrap();
        assert_eq!(p3.closed_forms().unwrap(), example3_closed_forms(Example3Forms::Printed).unwrap());
        let c3 = Preset::load(PresetName::Example3Corrected).unwrap();
        assert_eq!(c3.closed_forms().unwrap(), example3_closed_forms(Example3Forms::Corrected).unwrap());
    }

    #[test]
    fn initial_state_is_the_constant_vector() {
        let p2 = Preset::load(PresetName::Example2).unwrap();
        let x = p2.initial().unwrap();
        assert!((x[2] - Complex64::new(0.2, 0.0)).norm() < 1e-15);
        // G2 = -p^3/30 with p = -45^(1/5)
        let p = -(45f64.powf(0.2));
        assert!((x[0].re + p.powi(3) / 30.0).abs() < 1e-14);
    }
}
