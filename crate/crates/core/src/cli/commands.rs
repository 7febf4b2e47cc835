//! The flow, series, symmetrize and sample subcommands.

use num_complex::Complex64;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::curvering::{sample_sym_square, symmetrize, trial_rng, u_from_points, CurveParams, CurvePoint, Y_NAMES, Y_WEIGHTS};
use crate::dynsys::{compile_integral, make_integrals, State4, System, G_NAMES};
use crate::error::{Error, Result};
use crate::exactalg::{parse_poly, Universe};
use crate::flows::{drift_report, integrate, level_from_curve_points, Tolerances, Trajectory};
use crate::sigmalimit::{
    denominators_are_3_5_smooth, example3_curve, example3_expected, g_series, series_residuals, Example3Forms,
    SeedKind, SeedSpec, SigmaSW,
};

use super::config::{FlowConfig, Format, SampleConfig, SeriesConfig, SymmetrizeConfig};
use super::presets::Preset;
use super::text::{complex_json, format_complex, path_series_json, scalar_json, series_json, state_json, SCHEMA};
use super::verify::DRIFT_TOL;
use super::{Outcome, EXIT_FAIL, EXIT_OK};

/// Level offset above which points given with y12, y14 are rejected as off the curve.
const LEVEL_TOL: f64 = 1e-9;

fn header(config: &super::RunConfig) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("config".into(), serde_json::to_value(config).expect("configs serialize"));
    m
}

fn pretty(v: &Map<String, Value>) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

struct FlowSetup {
    system: System,
    y: [Complex64; 4],
    level: Option<(Complex64, Complex64)>,
    init: State4,
    t_end: Complex64,
    preset: Option<Preset>,
}

fn resolve_flow(c: &FlowConfig) -> Result<FlowSetup> {
    if let Some(name) = c.preset {
        let p = Preset::load(name)?;
        let system = p.system()?;
        if c.system.is_some_and(|s| System::from(s) != system) {
            return Err(Error::InvalidArgument(format!("preset {} runs system {}", p.name, p.system)));
        }
        if c.y.is_some() {
            return Err(Error::InvalidArgument("--y cannot be combined with --preset".into()));
        }
        let y = p.y.exactly::<4>("preset y")?;
        let init = p.initial()?;
        let t_end = c.t_end.unwrap_or(p.t_end).0;
        return Ok(FlowSetup { system, y, level: None, init, t_end, preset: Some(p) });
    }
    let system = c.system.map(System::from).unwrap_or(System::I);
    let yv = c.y.as_ref().map(|l| l.0.clone()).unwrap_or_else(|| vec![Complex64::new(0.0, 0.0); 4]);
    if yv.len() != 4 && yv.len() != 6 {
        return Err(Error::InvalidArgument(format!("--y needs 4 or 6 values, got {}", yv.len())));
    }
    let y = [yv[0], yv[1], yv[2], yv[3]];
    let mut level = (yv.len() == 6).then(|| (yv[4], yv[5]));
    let init = if let Some(init) = &c.init {
        init.exactly::<4>("--init")?
    } else if let Some(pts) = &c.from_curve_points {
        let [x1, y1, x2, y2] = pts.exactly::<4>("--from-curve-points")?;
        let (p1, p2) = (CurvePoint { x: x1, y: y1 }, CurvePoint { x: x2, y: y2 });
        let derived = level_from_curve_points(y, p1, p2)?;
        if let Some(given) = level {
            let off = (derived.0 - given.0).norm().max((derived.1 - given.1).norm());
            let scale = 1.0 + given.0.norm().max(given.1.norm());
            if off > LEVEL_TOL * scale {
                return Err(Error::OffCurve(off));
            }
        }
        level = Some(derived);
        u_from_points(p1, p2)?
    } else {
        [Complex64::new(0.0, 0.0); 4]
    };
    let t_end = c.t_end.map(|t| t.0).unwrap_or(Complex64::new(1.0, 0.0));
    Ok(FlowSetup { system, y, level, init, t_end, preset: None })
}

fn sample_json(traj: &Trajectory) -> Value {
    Value::Array(
        traj.samples
            .iter()
            .map(|s| {
                json!({
                    "s": s.s,
                    "time": complex_json(s.time),
                    "state": state_json(&s.state),
                    "I12": complex_json(s.i12),
                    "I14": complex_json(s.i14),
                })
            })
            .collect(),
    )
}

pub fn flow(config: &super::RunConfig, c: &FlowConfig) -> Result<Outcome> {
    let setup = resolve_flow(c)?;
    let tol = Tolerances { rel: c.rel_tol, abs: c.abs_tol, max_step: c.max_step };
    let traj = integrate(setup.system, setup.init, setup.y, setup.t_end, tol)?;
    let (d12, d14) = drift_report(&traj);

    let mut meta = header(config);
    meta.insert("system".into(), json!(if setup.system == System::I { "I" } else { "II" }));
    meta.insert("y".into(), state_json(&setup.y));
    if let Some((y12, y14)) = setup.level {
        meta.insert(
            "level".into(),
            json!({
                "y12": complex_json(y12),
                "y14": complex_json(y14),
                "initial_offset_i12": (traj.initial().i12 - y12).norm(),
                "initial_offset_i14": (traj.initial().i14 - y14).norm(),
            }),
        );
    }
    meta.insert("t_end".into(), complex_json(setup.t_end));
    meta.insert("tolerances".into(), json!({ "rel": tol.rel, "abs": tol.abs, "max_step": tol.max_step }));
    meta.insert("stats".into(), serde_json::to_value(traj.stats).expect("stats serialize"));
    meta.insert("final_state".into(), state_json(&traj.last().state));
    meta.insert("drift".into(), json!({ "i12": d12, "i14": d14, "within_tolerance": d12 < DRIFT_TOL && d14 < DRIFT_TOL }));
    if let Some(p) = &setup.preset {
        let expect = p.state_at(setup.t_end)?;
        let got = traj.last().state;
        let err = (0..4).map(|k| (got[k] - expect[k]).norm() / expect[k].norm()).fold(0.0, f64::max);
        meta.insert(
            "closed_form".into(),
            json!({
                "preset": p.name,
                "note": p.note,
                "expected_final_state": state_json(&expect),
                "final_error_rel": err,
            }),
        );
    }

    let outcome = match c.format {
        Format::Json => {
            meta.insert("samples".into(), sample_json(&traj));
            Outcome { body: pretty(&meta), meta: None, code: EXIT_OK }
        }
        Format::Csv => Outcome { body: traj.to_csv(), meta: Some(pretty(&meta)), code: EXIT_OK },
    };
    Ok(outcome)
}

fn residual_json(label: &str, holds: bool, first: Option<(usize, usize, crate::exactalg::Scalar)>) -> Value {
    let mut v = json!({ "label": label, "status": if holds { "pass" } else { "fail" } });
    if let Some((i, j, c)) = first.filter(|_| !holds) {
        v["first_nonzero"] = json!({ "i": i, "j": j, "value": scalar_json(&c) });
    }
    v
}

fn named_series(g: &[crate::exactalg::Series2; 4], render: impl Fn(&crate::exactalg::Series2) -> Value) -> Value {
    let mut m = Map::new();
    for (name, s) in G_NAMES.iter().zip(g) {
        m.insert(name.to_string(), render(s));
    }
    Value::Object(m)
}

pub fn series(config: &super::RunConfig, c: &SeriesConfig) -> Result<Outcome> {
    if c.order < 1 {
        return Err(Error::InvalidArgument("--order must be at least 1".into()));
    }
    let sigma = SigmaSW::new()?;
    let kind = SeedKind::from(c.seed);
    let seed = SeedSpec::new(kind);
    let mut out = header(config);
    let mut seed_json = json!({
        "label": kind.label(),
        "point": seed.point.iter().map(scalar_json).collect::<Vec<_>>(),
    });
    if let Some(f) = &seed.field {
        seed_json["field"] = json!({
            "generator": f.name(),
            "modulus": f.modulus_text(),
            "root": complex_json(f.embedded_root()),
        });
    }
    out.insert("seed".into(), seed_json);
    out.insert("order".into(), json!(c.order));

    let passed;
    if kind == SeedKind::QRoot {
        let f = example3_curve(&sigma, c.order)?;
        let res = series_residuals(&f, &[System::I])?;
        let corrected = example3_expected(Example3Forms::Corrected, c.order)?;
        let printed = example3_expected(Example3Forms::Printed, c.order)?;
        let differs: Vec<&str> = (0..4).filter(|&k| f[k] != printed[k]).map(|k| G_NAMES[k]).collect();
        passed = res.iter().all(|r| r.holds()) && f == corrected;
        out.insert("path".into(), json!("(q (1 + t)^(1/3), 1 + t, 0)"));
        out.insert("G".into(), named_series(&f, path_series_json));
        out.insert(
            "verification".into(),
            json!({
                "residuals": res.iter().map(|r| residual_json(&r.label, r.holds(), r.residual.first_nonzero())).collect::<Vec<_>>(),
                "matches_recomputed_closed_forms": f == corrected,
                "differs_from_printed_closed_forms": differs,
                "passed": passed,
            }),
        );
    } else {
        let g = g_series(&sigma, &seed, c.order)?;
        let res = series_residuals(g.g(), &[System::I, System::II])?;
        let smooth = denominators_are_3_5_smooth(&g.phi);
        passed = res.iter().all(|r| r.holds()) && g.routes_agree();
        out.insert("phi".into(), series_json(&g.phi));
        out.insert("G".into(), named_series(g.g(), series_json));
        out.insert(
            "verification".into(),
            json!({
                "residuals": res.iter().map(|r| residual_json(&r.label, r.holds(), r.residual.first_nonzero())).collect::<Vec<_>>(),
                "closed_forms_agree": g.routes_agree(),
                "phi_denominators_3_5_smooth": smooth,
                "passed": passed,
            }),
        );
    }
    Ok(Outcome { body: pretty(&out), meta: None, code: if passed { EXIT_OK } else { EXIT_FAIL } })
}

/// Universe accepted by `symmetrize`: the two points and the curve parameters.
pub fn symmetrize_universe() -> std::sync::Arc<Universe> {
    let mut vars = vec![("X1", 2), ("Y1", 7), ("X2", 2), ("Y2", 7)];
    vars.extend(Y_NAMES.iter().copied().zip(Y_WEIGHTS));
    Universe::new(&vars)
}

pub fn symmetrize_cmd(c: &SymmetrizeConfig) -> Result<Outcome> {
    let f = parse_poly(&c.expr, &symmetrize_universe())?;
    let u = symmetrize(&f)?;
    Ok(Outcome { body: format!("{u}\n"), meta: None, code: EXIT_OK })
}

fn real_params(y: &[Complex64; 6]) -> Result<CurveParams> {
    let vals: Vec<BigRational> = y
        .iter()
        .map(|z| {
            if z.im != 0.0 {
                return Err(Error::InvalidArgument("sample takes real y values".into()));
            }
            BigRational::from_float(z.re).ok_or_else(|| Error::InvalidArgument(format!("not finite: {}", z.re)))
        })
        .collect::<Result<_>>()?;
    Ok(CurveParams::from_rationals(vals.try_into().expect("six values")))
}

pub fn sample(config: &super::RunConfig, c: &SampleConfig) -> Result<Outcome> {
    let y = c.y.exactly::<6>("--y")?;
    let params = real_params(&y)?;
    let (i12, i14) = make_integrals()?;
    let yf = [y[0], y[1], y[2], y[3]];
    let (c12, c14) = (compile_integral(&i12, &yf)?, compile_integral(&i14, &yf)?);
    let mut records = Vec::with_capacity(c.count);
    for k in 0..c.count {
        let mut rng = trial_rng(c.seed, k as u64);
        let pt = sample_sym_square(&params, &mut rng)?;
        let (v12, v14) = (c12.eval(&pt.u), c14.eval(&pt.u));
        records.push(json!({
            "points": [
                { "x": complex_json(pt.p1.x), "y": complex_json(pt.p1.y) },
                { "x": complex_json(pt.p2.x), "y": complex_json(pt.p2.y) },
            ],
            "state": state_json(&pt.u),
            "I12": complex_json(v12),
            "I14": complex_json(v14),
            "residual_i12": (v12 - y[4]).norm(),
            "residual_i14": (v14 - y[5]).norm(),
            "relative_residual_i12": (v12 - y[4]).norm() / c12.abs_sum(&pt.u).max(y[4].norm()).max(1.0),
            "relative_residual_i14": (v14 - y[5]).norm() / c14.abs_sum(&pt.u).max(y[5].norm()).max(1.0),
        }));
    }
    let mut out = header(config);
    out.insert("y".into(), json!(y.iter().map(|z| format_complex(*z)).collect::<Vec<_>>()));
    out.insert("records".into(), Value::Array(records));
    Ok(Outcome { body: pretty(&out), meta: None, code: EXIT_OK })
}
