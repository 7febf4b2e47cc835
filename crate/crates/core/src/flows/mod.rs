//! Complex-time integration of the two vector fields with drift monitoring of
//! the integrals I12, I14.

pub mod dopri;

use num_complex::Complex64;

use crate::curvering::{u_from_points, CurvePoint, CurveParams};
use crate::dynsys::{compile_integral, make_integrals, make_system, CompiledField, State4, System};
use crate::error::{Error, Result};

pub use dopri::{integrate_unit, StepStats, Tolerances};

/// Relative tolerance for a point to count as lying on the curve.
pub const ON_CURVE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub s: f64,
    pub time: Complex64,
    pub state: State4,
    pub i12: Complex64,
    pub i14: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub system: System,
    /// y4, y6, y8, y10
    pub params: [Complex64; 4],
    pub t_end: Complex64,
    pub tolerances: Tolerances,
    pub stats: StepStats,
    pub samples: Vec<Sample>,
}

impl Trajectory {
    pub fn initial(&self) -> &Sample {
        &self.samples[0]
    }

    pub fn last(&self) -> &Sample {
        self.samples.last().expect("trajectory has at least one sample")
    }

    /// One header line, then one row per sample.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "s,time_re,time_im,G2_re,G2_im,G4_re,G4_im,G5_re,G5_im,G7_re,G7_im,I12_re,I12_im,I14_re,I14_im\n",
        );
        for smp in &self.samples {
            let mut cols = vec![smp.s.to_string()];
            for z in std::iter::once(&smp.time).chain(&smp.state).chain([&smp.i12, &smp.i14]) {
                cols.push(z.re.to_string());
                cols.push(z.im.to_string());
            }
            out.push_str(&cols.join(","));
            out.push('\n');
        }
        out
    }
}

/// Integrates `system` along time(s) = s * t_end for s in [0, 1].
pub fn integrate(
    system: System,
    init: State4,
    params: [Complex64; 4],
    t_end: Complex64,
    tolerances: Tolerances,
) -> Result<Trajectory> {
    if !(t_end.re.is_finite() && t_end.im.is_finite()) {
        return Err(Error::InvalidArgument("t_end must be finite".into()));
    }
    let field = CompiledField::new(&make_system(system), &params)?;
    let (i12, i14) = make_integrals()?;
    let (c12, c14) = (compile_integral(&i12, &params)?, compile_integral(&i14, &params)?);
    let mut samples = Vec::new();
    let mut record = |s: f64, x: &State4| {
        samples.push(Sample { s, time: t_end * s, state: *x, i12: c12.eval(x), i14: c14.eval(x) })
    };
    let stats = if t_end == Complex64::new(0.0, 0.0) {
        if !(tolerances.rel > 0.0 && tolerances.abs > 0.0) {
            return Err(Error::InvalidArgument("tolerances must be positive".into()));
        }
        record(0.0, &init);
        StepStats::default()
    } else {
        integrate_unit(|x| field.eval(x).map(|v| v * t_end), init, tolerances, &mut record)?
    };
    Ok(Trajectory { system, params, t_end, tolerances, stats, samples })
}

/// Largest |I(s) - I(0)| / max(1, |I(0)|) over the samples, for I12 and I14.
pub fn drift_report(traj: &Trajectory) -> (f64, f64) {
    let first = traj.initial();
    let rel = |a: Complex64, a0: Complex64| (a - a0).norm() / a0.norm().max(1.0);
    traj.samples.iter().fold((0.0, 0.0), |(d12, d14), smp| {
        (f64::max(d12, rel(smp.i12, first.i12)), f64::max(d14, rel(smp.i14, first.i14)))
    })
}

fn on_curve_residual(params: &CurveParams, p: CurvePoint) -> Result<f64> {
    let q = params
        .q_complex(p.x)
        .ok_or_else(|| Error::InvalidArgument("curve parameters must be numeric".into()))?;
    let y2 = p.y * p.y;
    Ok((y2 - q).norm() / q.norm().max(y2.norm()).max(1.0))
}

/// The u-coordinates of two curve points, as an initial state.
pub fn initial_from_curve_points(params: &CurveParams, p1: CurvePoint, p2: CurvePoint) -> Result<State4> {
    for p in [p1, p2] {
        let r = on_curve_residual(params, p)?;
        if r > ON_CURVE_TOL {
            return Err(Error::OffCurve(r));
        }
    }
    u_from_points(p1, p2)
}

/// The (y12, y14) for which both points lie on the curve with the given y4..y10.
pub fn level_from_curve_points(y: [Complex64; 4], p1: CurvePoint, p2: CurvePoint) -> Result<(Complex64, Complex64)> {
    let dx = p1.x - p2.x;
    if dx.norm() < crate::curvering::sampling::MIN_SEPARATION {
        return Err(Error::CoincidentX);
    }
    // Y^2 - (Q with y12 = y14 = 0) = y12 X - y14 at both points
    let partial = |x: Complex64, yy: Complex64| {
        yy * yy - (x.powu(7) + y[0] * x.powu(5) - y[1] * x.powu(4) + y[2] * x.powu(3) - y[3] * x * x)
    };
    let (r1, r2) = (partial(p1.x, p1.y), partial(p2.x, p2.y));
    let y12 = (r1 - r2) / dx;
    let y14 = y12 * p1.x - r1;
    Ok((y12, y14))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Scalar;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn zero_duration() {
        let init = [c(1.0), c(2.0), c(3.0), c(4.0)];
        let tr = integrate(System::I, init, [c(0.0); 4], c(0.0), Tolerances::default()).unwrap();
        assert_eq!(tr.samples.len(), 1);
        assert_eq!(tr.last().state, init);
        assert_eq!(drift_report(&tr), (0.0, 0.0));
        assert_eq!(tr.to_csv().lines().count(), 2);
    }

    #[test]
    fn curve_point_initialization() {
        let params = CurveParams::zero();
        let p1 = CurvePoint { x: c(1.0), y: c(1.0) };
        let p2 = CurvePoint { x: c(4.0), y: c(128.0) };
        let s = initial_from_curve_points(&params, p1, p2).unwrap();
        assert!((s[2] - c(127.0 / 3.0)).norm() < 1e-12);
        let (i12, i14) = make_integrals().unwrap();
        let y = [c(0.0); 4];
        assert!(compile_integral(&i12, &y).unwrap().eval(&s).norm() < 1e-9);
        assert!(compile_integral(&i14, &y).unwrap().eval(&s).norm() < 1e-9);
        let q = CurvePoint { x: c(1.0), y: c(-1.0) };
        assert!(matches!(initial_from_curve_points(&params, p1, q), Err(Error::CoincidentX)));
        let off = CurvePoint { x: c(2.0), y: c(1.0) };
        assert!(matches!(initial_from_curve_points(&params, p1, off), Err(Error::OffCurve(_))));
    }

    #[test]
    fn level_recovery() {
        let y: [Scalar; 6] = [1, 2, -1, 3, 5, -2].map(Scalar::from_i64);
        let params = CurveParams::numeric(y);
        let mk = |x: f64| {
            let x = c(x);
            CurvePoint { x, y: params.q_complex(x).unwrap().sqrt() }
        };
        let (y12, y14) = level_from_curve_points([c(1.0), c(2.0), c(-1.0), c(3.0)], mk(0.5), mk(-1.5)).unwrap();
        assert!((y12 - c(5.0)).norm() < 1e-9 && (y14 - c(-2.0)).norm() < 1e-9);
    }

    #[test]
    fn conserved_along_flow() {
        let params = CurveParams::zero();
        let p1 = CurvePoint { x: c(0.5), y: c(0.5f64.powf(3.5)) };
        let p2 = CurvePoint { x: c(-0.3), y: Complex64::new(-0.3, 0.0).powf(3.5) };
        let init = initial_from_curve_points(&params, p1, p2).unwrap();
        for sys in [System::I, System::II] {
            let tr = integrate(sys, init, [c(0.0); 4], Complex64::new(0.3, 0.2), Tolerances::default()).unwrap();
            let (d12, d14) = drift_report(&tr);
            assert!(d12 < 1e-8 && d14 < 1e-8, "{d12} {d14}");
        }
    }
}
