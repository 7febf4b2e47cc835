//! End-to-end runs of the binary: output formats, exit codes, determinism.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sigma3")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stderr)))
}

fn re_im(v: &Value) -> (f64, f64) {
    let s = v.as_str().unwrap();
    let (a, b) = s.split_once(',').unwrap();
    (a.parse().unwrap(), b.parse().unwrap())
}

#[test]
fn symmetrize_examples() {
    let o = run(&["symmetrize", "X1+X2"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "2*u2\n"));
    let o = run(&["symmetrize", "Y1*Y2"]);
    assert_eq!(stdout(&o), "u7^2 - u4*u5^2\n");
    let o = run(&["symmetrize", "X1*Y1 - X2*Y2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("asymmetric"));
}

#[test]
fn parse_errors_carry_a_position() {
    let o = run(&["symmetrize", "X1 + (X2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 8"), "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&["symmetrize", "X1 + W"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["flow", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["flow", "--preset", "example2", "--init", "0;0;0;0"]).status.code(), Some(2));
    assert_eq!(run(&["series", "--seed", "p7"]).status.code(), Some(2));
    assert_eq!(run(&["series", "--seed", "p0", "--order", "0"]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_symbolic_suite() {
    let o = run(&["verify", "--suite", "symbolic"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["schema"], "sigma3/v1");
    let checks = r["checks"].as_array().unwrap();
    let count = |pred: &dyn Fn(&str) -> bool| checks.iter().filter(|c| pred(c["name"].as_str().unwrap())).count();
    assert_eq!(count(&|n| n.starts_with("L3*") || n.starts_with("L5*")), 8);
    assert_eq!(count(&|n| n.contains("preserves")), 4);
    assert_eq!(count(&|n| n == "[system I, system II] = 0"), 1);
    assert_eq!(count(&|n| n.starts_with("[L")), 3);
    assert!(checks.iter().all(|c| c["pass"] == true));
}

#[test]
fn verify_numeric_suite() {
    let o = run(&["verify", "--suite", "numeric", "--trials", "100", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    for c in r["checks"].as_array().unwrap() {
        let name = c["name"].as_str().unwrap();
        if name.starts_with("H1") {
            assert!(c["data"]["max_residual"].as_f64().unwrap() < 1e-9, "{name}");
            assert_eq!(c["data"]["trials"], 100);
        }
    }
}

#[test]
fn verify_series_suite() {
    let o = run(&["verify", "--suite", "series", "--order", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    let checks = r["checks"].as_array().unwrap();
    for seed in ["seed p0", "seed p5"] {
        let n = checks.iter().filter(|c| {
            let name = c["name"].as_str().unwrap();
            name.starts_with(seed) && name.contains("= system") && c["pass"] == true
        });
        assert_eq!(n.count(), 8, "{seed}");
    }
}

fn phi_t_coefficients(r: &Value) -> Vec<(u64, String)> {
    r["phi"]["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["j"] == 0)
        .map(|c| (c["i"].as_u64().unwrap(), c["value"].as_str().unwrap().to_string()))
        .collect()
}

#[test]
fn series_p0_printed_coefficients() {
    let o = run(&["series", "--seed", "p0", "--order", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let c = phi_t_coefficients(&json(&o));
    assert!(c.contains(&(2, "1/1".into())));
    assert!(c.contains(&(7, "1/3".into())));
    assert!(c.contains(&(12, "44/45".into())), "t^12 coefficient: {:?}", c.iter().find(|x| x.0 == 12));
}

#[test]
fn series_p5_g5_slice() {
    let o = run(&["series", "--seed", "p5", "--order", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["seed"]["field"]["modulus"], "p^5 + 45");
    let slice: Vec<(u64, Value)> = r["G"]["G5"]["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["i"] == 0)
        .map(|c| (c["j"].as_u64().unwrap(), c["value"].clone()))
        .collect();
    assert_eq!(slice.len(), 9);
    for (j, v) in slice {
        assert_eq!(v, if j % 2 == 0 { "1/5" } else { "-1/5" });
    }
}

#[test]
fn series_q_constant() {
    let o = run(&["series", "--seed", "q", "--order", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    let first = &r["G"]["G2"]["coefficients"][0];
    assert_eq!(first["i"], 0);
    assert_eq!(first["value"], serde_json::json!(["0/1", "1/6", "0/1", "0/1", "0/1", "0/1"]));
    assert_eq!(r["verification"]["passed"], true);
}

#[test]
fn flow_preset_example2() {
    let o = run(&["flow", "--preset", "example2", "--t-end", "0.5,0"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert!(r["closed_form"]["final_error_rel"].as_f64().unwrap() < 1e-8);
    assert_eq!(r["config"]["preset"], "example2");
}

#[test]
fn flow_from_curve_points_drift() {
    let o = run(&["flow", "--system", "I", "--y", "0,0,0,0", "--from-curve-points", "1,0;1,0;4,0;128,0", "--t-end", "0.1,0"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    let (d12, d14) = (r["drift"]["i12"].as_f64().unwrap(), r["drift"]["i14"].as_f64().unwrap());
    assert!(d12 < 1e-8 && d14 < 1e-8, "drift {d12:e}, {d14:e}");
}

#[test]
fn flow_zero_duration_csv() {
    let o = run(&["flow", "--t-end", "0,0", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("s,time_re,time_im,G2_re"));
    let o = run(&["flow", "--init", "1,0;0.5,0;0,1;2,0", "--t-end", "0,0", "--format", "csv"]);
    let row: Vec<f64> = stdout(&o).lines().nth(1).unwrap().split(',').map(|x| x.parse().unwrap()).collect();
    assert_eq!(&row[3..11], &[1.0, 0.0, 0.5, 0.0, 0.0, 1.0, 2.0, 0.0]);
}

#[test]
fn flow_csv_file_gets_metadata_sidecar() {
    let dir = std::env::temp_dir().join(format!("sigma3-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("traj.csv");
    let o = run(&["flow", "--preset", "example2", "--format", "csv", "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().next().unwrap().split(',').count(), 15);
    let meta: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("traj.csv.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["schema"], "sigma3/v1");
    assert!(meta["drift"]["i12"].as_f64().unwrap() < 1e-8);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn flow_blow_up_exits_3() {
    // the p^5 = -45 solution has its singularity at tau = -1
    let o = run(&["flow", "--preset", "example2", "--t-end", "-1.5,0"]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stderr).contains("blow-up at s = 0.66"));
}

#[test]
fn flow_rejects_points_off_the_given_level() {
    let o = run(&["flow", "--y", "0,0,0,0,1,0", "--from-curve-points", "1,0;1,0;4,0;128,0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["flow", "--from-curve-points", "1,0;1,0;1,0;-1,0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sample_on_the_zero_level() {
    let args = ["sample", "--count", "10", "--seed", "1", "--y", "0,0,0,0,0,0"];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0));
    let r = json(&a);
    let recs = r["records"].as_array().unwrap();
    assert_eq!(recs.len(), 10);
    for rec in recs {
        for k in ["I12", "I14"] {
            let (re, im) = re_im(&rec[k]);
            assert!(re.hypot(im) < 1e-9, "{k} = {re},{im}");
        }
    }
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn sample_level_y12() {
    let o = run(&["sample", "--count", "20", "--seed", "4", "--y", "0.5,0,-0.25,0,3,0"]);
    for rec in json(&o)["records"].as_array().unwrap() {
        let (re, im) = re_im(&rec["I12"]);
        assert!((re - 3.0).hypot(im) < 1e-9);
        assert!(rec["residual_i12"].as_f64().unwrap() < 1e-9);
    }
}

#[test]
fn replay_reproduces_a_run() {
    let dir = std::env::temp_dir().join(format!("sigma3-replay-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let first = dir.join("a.json");
    let o = run(&["sample", "--count", "3", "--seed", "9", "--output", first.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let before = std::fs::read(&first).unwrap();
    std::fs::remove_file(&first).unwrap();
    let cfg = dir.join("cfg.json");
    let v: Value = serde_json::from_slice(&before).unwrap();
    std::fs::write(&cfg, v["config"].to_string()).unwrap();
    // the config names its output file, so the replay rewrites it
    let again = run(&["replay", cfg.to_str().unwrap()]);
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(std::fs::read(&first).unwrap(), before);
    std::fs::remove_dir_all(&dir).unwrap();
}
