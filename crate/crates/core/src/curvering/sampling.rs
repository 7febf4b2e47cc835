//! Numeric points of the symmetric square and randomized membership in the
//! ideal generated by H12, H14.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactalg::Poly;

use super::params::{CurveParams, Y_NAMES};

/// Relative residual below which a sample counts as a zero.
pub const MEMBERSHIP_TOL: f64 = 1e-9;
pub const DEFAULT_TRIALS: usize = 100;
/// Samples with |X1 - X2| below this are re-drawn.
pub const MIN_SEPARATION: f64 = 1e-3;
const MAX_DRAWS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub x: Complex64,
    pub y: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymSquarePoint {
    pub p1: CurvePoint,
    pub p2: CurvePoint,
    /// (u2, u4, u5, u7)
    pub u: [Complex64; 4],
}

/// The four u-coordinates of an unordered pair of points.
pub fn u_from_points(p1: CurvePoint, p2: CurvePoint) -> Result<[Complex64; 4]> {
    let dx = p1.x - p2.x;
    if dx.norm() < MIN_SEPARATION {
        return Err(Error::CoincidentX);
    }
    Ok([(p1.x + p2.x) / 2.0, dx * dx / 4.0, (p1.y - p2.y) / dx, (p1.y + p2.y) / 2.0])
}

fn draw_x(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-2.0..=2.0), rng.gen_range(-2.0..=2.0))
}

fn lift(params: &CurveParams, x: Complex64, rng: &mut impl Rng) -> Result<CurvePoint> {
    let q = params
        .q_complex(x)
        .ok_or_else(|| Error::InvalidArgument("sampling needs numeric curve parameters".into()))?;
    let y = if rng.gen::<bool>() { q.sqrt() } else { -q.sqrt() };
    Ok(CurvePoint { x, y })
}

/// Draws a random point of the symmetric square with X uniform in [-2, 2]^2.
pub fn sample_sym_square(params: &CurveParams, rng: &mut impl Rng) -> Result<SymSquarePoint> {
    for _ in 0..MAX_DRAWS {
        let (x1, x2) = (draw_x(rng), draw_x(rng));
        if (x1 - x2).norm() < MIN_SEPARATION {
            continue;
        }
        let p1 = lift(params, x1, rng)?;
        let p2 = lift(params, x2, rng)?;
        let u = u_from_points(p1, p2)?;
        return Ok(SymSquarePoint { p1, p2, u });
    }
    Err(Error::SamplingFailed(MAX_DRAWS))
}

/// Generator for trial `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Values for the variables of `f`'s universe: u-coordinates from the point,
/// curve parameters from `params`.
pub fn bind_point(f: &Poly, params: &CurveParams, u: &[Complex64; 4]) -> Result<Vec<Option<Complex64>>> {
    let y = params
        .complex_values()
        .ok_or_else(|| Error::InvalidArgument("evaluation needs numeric curve parameters".into()))?;
    let uni = f.universe();
    (0..uni.len())
        .map(|i| {
            let name = uni.name(i);
            let v = match name {
                "u2" => u[0],
                "u4" => u[1],
                "u5" => u[2],
                "u7" => u[3],
                _ => match Y_NAMES.iter().position(|n| *n == name) {
                    Some(j) => y[j],
                    None => return Err(Error::UnboundVariable(name.to_string())),
                },
            };
            Ok(Some(v))
        })
        .collect()
}

/// |f| relative to the sum of absolute term values at the point.
pub fn relative_residual(f: &Poly, vals: &[Option<Complex64>]) -> Result<f64> {
    let v = f.eval_complex_at(vals)?.norm();
    let scale = f.abs_term_sum(vals)?;
    Ok(if scale > 0.0 { v / scale } else { v })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MembershipReport {
    pub member: bool,
    pub max_residual: f64,
    pub trials: usize,
}

/// Randomized test of whether `f` vanishes on the symmetric square of the curve.
pub fn ideal_t_member(f: &Poly, params: &CurveParams, trials: usize, seed: u64) -> Result<MembershipReport> {
    let mut max_residual: f64 = 0.0;
    for t in 0..trials {
        let mut rng = trial_rng(seed, t as u64);
        let pt = sample_sym_square(params, &mut rng)?;
        let r = relative_residual(f, &bind_point(f, params, &pt.u)?)?;
        max_residual = max_residual.max(r);
    }
    Ok(MembershipReport { member: max_residual < MEMBERSHIP_TOL, max_residual, trials })
}
