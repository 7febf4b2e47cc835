//! Genus-3 symmetric-square machinery: exact polynomial and series algebra,
//! the localized coordinate ring of the curve square with its commuting
//! derivations, the polynomial dynamical systems on C^4 with their two
//! integrals, complex-time flows, and exact series solutions in the
//! rational limit of the sigma function.

pub mod cli;
pub mod error;
pub mod curvering;
pub mod dynsys;
pub mod exactalg;
pub mod flows;
pub mod sigmalimit;

pub use error::{Error, Result};
