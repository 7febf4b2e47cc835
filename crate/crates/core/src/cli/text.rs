//! Text forms shared by every subcommand: complex numbers as `re,im`, lists of
//! them separated by `;`, rationals as `num/den`, and series coefficient tables.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactalg::{format_rational, Scalar, Series2};

pub const SCHEMA: &str = "sigma3/v1";

pub fn format_complex(z: Complex64) -> String {
    format!("{},{}", z.re, z.im)
}

fn parse_real(s: &str) -> Result<f64> {
    let v: f64 = s.trim().parse().map_err(|_| Error::InvalidArgument(format!("not a number: `{}`", s.trim())))?;
    if !v.is_finite() {
        return Err(Error::InvalidArgument(format!("not finite: `{}`", s.trim())));
    }
    Ok(v)
}

/// `re,im` or a bare real.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(parse_real(re)?, parse_real(im)?)),
        None => Ok(Complex64::new(parse_real(s)?, 0.0)),
    }
}

/// A complex value given on the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexArg(pub Complex64);

impl FromStr for ComplexArg {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_complex(s).map(ComplexArg)
    }
}

impl fmt::Display for ComplexArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_complex(self.0))
    }
}

/// A list of complex values: `re,im;re,im;...`, or comma-separated reals when
/// no `;` is present.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexList(pub Vec<Complex64>);

impl ComplexList {
    pub fn exactly<const N: usize>(&self, what: &str) -> Result<[Complex64; N]> {
        self.0.as_slice().try_into().map_err(|_| {
            Error::InvalidArgument(format!("{what} needs {N} values, got {}", self.0.len()))
        })
    }
}

impl FromStr for ComplexList {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let items: Result<Vec<Complex64>> = if s.contains(';') {
            s.split(';').map(parse_complex).collect()
        } else {
            s.split(',').map(|r| parse_real(r).map(|v| Complex64::new(v, 0.0))).collect()
        };
        Ok(ComplexList(items?))
    }
}

impl fmt::Display for ComplexList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|z| format_complex(*z)).collect();
        f.write_str(&parts.join(";"))
    }
}

macro_rules! string_serde {
    ($t:ty) => {
        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }
        impl<'de> Deserialize<'de> for $t {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let s = String::deserialize(d)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

string_serde!(ComplexArg);
string_serde!(ComplexList);

/// A coefficient: `num/den`, or its coordinates over the powers of the generator.
pub fn scalar_json(c: &Scalar) -> Value {
    match c.as_rational() {
        Some(r) => Value::String(format_rational(&r)),
        None => Value::Array(c.coords().iter().map(|r| Value::String(format_rational(r))).collect()),
    }
}

pub fn complex_json(z: Complex64) -> Value {
    Value::String(format_complex(z))
}

pub fn state_json(x: &[Complex64]) -> Value {
    Value::Array(x.iter().map(|z| complex_json(*z)).collect())
}

/// Nonzero coefficients of a series as `{i, j, value}` records.
pub fn series_json(s: &Series2) -> Value {
    let coeffs: Vec<Value> =
        s.nonzero_terms().iter().map(|(i, j, c)| json!({ "i": i, "j": j, "value": scalar_json(c) })).collect();
    json!({ "order": s.order(), "variables": ["t", "tau"], "coefficients": coeffs })
}

/// A series in t alone (tau-degree zero), as `{i, value}` records.
pub fn path_series_json(s: &Series2) -> Value {
    let coeffs: Vec<Value> = s
        .slice_tau0()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| json!({ "i": i, "value": scalar_json(c) }))
        .collect();
    json!({ "order": s.order(), "variables": ["t"], "coefficients": coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("0.5,-1").unwrap(), Complex64::new(0.5, -1.0));
        assert_eq!(parse_complex(" 2 ").unwrap(), Complex64::new(2.0, 0.0));
        assert!(parse_complex("1,x").is_err());
        assert!(parse_complex("inf").is_err());
        assert_eq!(format_complex(Complex64::new(0.1, 0.0)), "0.1,0");
    }

    #[test]
    fn lists() {
        let a: ComplexList = "0,0,1,0".parse().unwrap();
        assert_eq!(a.0.len(), 4);
        let b: ComplexList = "1,0;1,0;4,0;128,0".parse().unwrap();
        assert_eq!(b.0[3], Complex64::new(128.0, 0.0));
        let back: ComplexList = b.to_string().parse().unwrap();
        assert_eq!(back, b);
        assert!(b.exactly::<6>("y").is_err());
    }
}
