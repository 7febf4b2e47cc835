//! Parameters of every subcommand. A run's configuration serializes to JSON
//! and is embedded in its output, so the run can be repeated with `replay`.

use std::path::PathBuf;

use clap::{Args, Command, FromArgMatches, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::dynsys::System;
use crate::sigmalimit::SeedKind;

use super::presets::PresetName;
use super::text::{ComplexArg, ComplexList};

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum RunConfig {
    /// Check the algebraic, numeric and series identities.
    Verify(VerifyConfig),
    /// Integrate system I or II in complex time.
    Flow(FlowConfig),
    /// Exact series solutions through a seed on the sigma divisor.
    Series(SeriesConfig),
    /// Rewrite a swap-symmetric polynomial in X1, Y1, X2, Y2 in u-coordinates.
    Symmetrize(SymmetrizeConfig),
    /// Random points of the symmetric square with their integral values.
    Sample(SampleConfig),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Symbolic,
    Numeric,
    Series,
    All,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct VerifyConfig {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    /// Random points per membership test.
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Total order of the series checks.
    #[arg(long, default_value_t = 12)]
    pub order: usize,
    /// Relative residual below which a sampled value counts as zero.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum SystemArg {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
}

impl From<SystemArg> for System {
    fn from(s: SystemArg) -> System {
        match s {
            SystemArg::I => System::I,
            SystemArg::II => System::II,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct FlowConfig {
    /// Defaults to I, or to the preset's system.
    #[arg(long, value_enum)]
    pub system: Option<SystemArg>,
    /// y4,y6,y8,y10 (optionally y12,y14); complex values as `re,im;re,im;...`.
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<ComplexList>,
    /// G2;G4;G5;G7 as complex values.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["from_curve_points", "preset"])]
    pub init: Option<ComplexList>,
    /// X1;Y1;X2;Y2 of two curve points.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "preset")]
    pub from_curve_points: Option<ComplexList>,
    #[arg(long, value_enum)]
    pub preset: Option<PresetName>,
    /// Complex end time `re,im`; defaults to the preset's, else 1,0.
    #[arg(long, allow_hyphen_values = true)]
    pub t_end: Option<ComplexArg>,
    #[arg(long, default_value_t = 1e-10)]
    pub rel_tol: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub abs_tol: f64,
    /// Largest step as a fraction of the path to t_end.
    #[arg(long, default_value_t = 0.05)]
    pub max_step: f64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum SeedArg {
    #[value(name = "p0")]
    #[serde(rename = "p0")]
    P0,
    #[value(name = "p5")]
    #[serde(rename = "p5")]
    P5,
    #[value(name = "q")]
    #[serde(rename = "q")]
    Q,
}

impl From<SeedArg> for SeedKind {
    fn from(s: SeedArg) -> SeedKind {
        match s {
            SeedArg::P0 => SeedKind::PZero,
            SeedArg::P5 => SeedKind::PRoot5,
            SeedArg::Q => SeedKind::QRoot,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SeriesConfig {
    #[arg(long, value_enum)]
    pub seed: SeedArg,
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    #[serde(default = "default_order")]
    pub order: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

const DEFAULT_ORDER: usize = 12;

fn default_order() -> usize {
    DEFAULT_ORDER
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SymmetrizeConfig {
    /// Polynomial in X1, Y1, X2, Y2 and optionally y4..y14.
    #[arg(allow_hyphen_values = true)]
    pub expr: String,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct SampleConfig {
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// y4,...,y14 (six values).
    #[arg(long, allow_hyphen_values = true, default_value = "0,0,0,0,0,0")]
    pub y: ComplexList,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// The values clap fills in when no flags are given, so hand-written JSON
/// configs may leave fields out.
fn clap_defaults<T: Args + FromArgMatches>() -> T {
    let cmd = T::augment_args(Command::new("defaults"));
    T::from_arg_matches(&cmd.get_matches_from(["defaults"])).expect("every field has a default")
}

impl Default for VerifyConfig {
    fn default() -> Self {
        clap_defaults()
    }
}

impl Default for FlowConfig {
    fn default() -> Self {
        clap_defaults()
    }
}

impl Default for SampleConfig {
    fn default() -> Self {
        clap_defaults()
    }
}

impl RunConfig {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("configs always serialize")
    }

    pub fn from_json(src: &str) -> serde_json::Result<RunConfig> {
        serde_json::from_str(src)
    }

    pub fn output(&self) -> Option<&PathBuf> {
        match self {
            RunConfig::Verify(c) => c.output.as_ref(),
            RunConfig::Flow(c) => c.output.as_ref(),
            RunConfig::Series(c) => c.output.as_ref(),
            RunConfig::Symmetrize(_) => None,
            RunConfig::Sample(c) => c.output.as_ref(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omitted_fields_take_cli_defaults() {
        let RunConfig::Verify(v) = RunConfig::from_json(r#"{"command":"verify","suite":"numeric"}"#).unwrap() else {
            panic!("not verify")
        };
        assert_eq!((v.suite, v.trials, v.seed, v.order, v.tol), (Suite::Numeric, 100, 7, 12, 1e-9));
        let RunConfig::Flow(f) = RunConfig::from_json(r#"{"command":"flow","preset":"example2"}"#).unwrap() else {
            panic!("not flow")
        };
        assert_eq!((f.rel_tol, f.max_step, f.format), (1e-10, 0.05, Format::Json));
        let RunConfig::Series(s) = RunConfig::from_json(r#"{"command":"series","seed":"q"}"#).unwrap() else {
            panic!("not series")
        };
        assert_eq!(s.order, 12);
        assert_eq!(SampleConfig::default().y.0.len(), 6);
        assert!(RunConfig::from_json(r#"{"command":"symmetrize"}"#).is_err());
    }
}
