//! Dormand-Prince 5(4) on a complex state, parametrized by a real s in [0, 1].

use num_complex::Complex64;

use crate::error::{Error, Result};

const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
/// Fifth-order weights (first-same-as-last: the last stage is evaluated at the new point).
const B: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
/// B minus the fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub rel: f64,
    pub abs: f64,
    /// Largest step in s.
    pub max_step: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { rel: 1e-10, abs: 1e-12, max_step: 0.05 }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct StepStats {
    pub accepted: usize,
    pub rejected: usize,
    pub evaluations: usize,
}

const MIN_STEP: f64 = 1e-14;
const MAX_STEPS: usize = 2_000_000;

fn finite(x: &[Complex64]) -> bool {
    x.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Integrates dx/ds = f(x) from s = 0 to s = 1, calling `on_step(s, x)` at
/// s = 0 and after every accepted step.
pub fn integrate_unit<const N: usize>(
    f: impl Fn(&[Complex64; N]) -> [Complex64; N],
    x0: [Complex64; N],
    tol: Tolerances,
    mut on_step: impl FnMut(f64, &[Complex64; N]),
) -> Result<StepStats> {
    if !(tol.rel > 0.0 && tol.abs > 0.0 && tol.max_step > 0.0) {
        return Err(Error::InvalidArgument("tolerances must be positive".into()));
    }
    if !finite(&x0) {
        return Err(Error::InvalidArgument("initial state is not finite".into()));
    }
    let mut stats = StepStats::default();
    let mut s = 0.0f64;
    let mut x = x0;
    on_step(s, &x);
    let mut k0 = f(&x);
    stats.evaluations += 1;

    let scale = |a: &[Complex64; N], b: &[Complex64; N], i: usize| tol.abs + tol.rel * a[i].norm().max(b[i].norm());
    // starting step from the size of the derivative
    let d0 = (0..N).map(|i| x[i].norm() / scale(&x, &x, i)).fold(0.0, f64::max);
    let d1 = (0..N).map(|i| k0[i].norm() / scale(&x, &x, i)).fold(0.0, f64::max);
    let mut h = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    h = h.min(tol.max_step).max(MIN_STEP);

    while s < 1.0 {
        if stats.accepted + stats.rejected >= MAX_STEPS {
            return Err(Error::BlowUp { s, reason: "step budget exhausted".into() });
        }
        let last = s + h >= 1.0;
        if last {
            h = 1.0 - s;
        }
        let mut k = [[Complex64::new(0.0, 0.0); N]; 7];
        k[0] = k0;
        for stage in 1..7 {
            let mut xs = x;
            for (j, kj) in k.iter().enumerate().take(stage) {
                let a = A[stage][j];
                if a != 0.0 {
                    for i in 0..N {
                        xs[i] += kj[i] * (h * a);
                    }
                }
            }
            k[stage] = f(&xs);
        }
        stats.evaluations += 6;
        let mut x_new = x;
        for i in 0..N {
            for st in 0..6 {
                x_new[i] += k[st][i] * (h * B[st]);
            }
        }
        // k[6] was evaluated at x_new (the stage-7 row of A equals B)
        let mut err: f64 = 0.0;
        for i in 0..N {
            let mut e = Complex64::new(0.0, 0.0);
            for st in 0..7 {
                e += k[st][i] * (h * E[st]);
            }
            err = err.max(e.norm() / scale(&x, &x_new, i));
        }
        if !err.is_finite() || !finite(&x_new) {
            h *= 0.2;
            stats.rejected += 1;
            if h < MIN_STEP {
                return Err(Error::BlowUp { s, reason: "state overflow".into() });
            }
            continue;
        }
        if err <= 1.0 {
            s = if last { 1.0 } else { s + h };
            x = x_new;
            k0 = k[6];
            stats.accepted += 1;
            on_step(s, &x);
        } else {
            stats.rejected += 1;
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        h = (h * factor).min(tol.max_step);
        if h < MIN_STEP && s < 1.0 {
            return Err(Error::BlowUp { s, reason: "step size underflow".into() });
        }
    }
    Ok(stats)
}
