use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_levyasym"))
}

fn spec(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs");
    root.join(name).to_string_lossy().into_owned()
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Data rows, skipping comments and the column line.
fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn f(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn dickman_cumulants_at_zero() {
    let out = stdout(&run(bin().args([
        "cumulants",
        "--spec",
        &spec("dickman.json"),
        "--beta",
        "0",
    ])));
    assert!(out.starts_with("# levyasym "));
    assert!(out.contains("# spec_sha256="));
    let r = &rows(&out)[0];
    assert_eq!(
        r.iter().map(|s| f(s)).collect::<Vec<_>>(),
        [0.0, 0.0, 1.0, 0.5, 0.0]
    );
}

#[test]
fn uniform_cumulant_at_one() {
    let out = stdout(&run(bin().args([
        "cumulants",
        "--spec",
        &spec("uniform0.json"),
        "--beta",
        "1",
    ])));
    let r = &rows(&out)[0];
    let e = std::f64::consts::E;
    assert!((f(&r[1]) - (e - 2.0)).abs() < 1e-14);
    assert!((f(&r[2]) - 1.0).abs() < 1e-14);
    assert!((f(&r[4]) - (1.0 - e).exp()).abs() < 1e-14);
}

#[test]
fn invalid_spec_exits_with_input_code() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gap.json");
    std::fs::write(
        &path,
        r#"{"pieces":[{"lo":0,"hi":0.5,"inv_coeff":0,"poly":[1]},
                      {"lo":0.6,"hi":1,"inv_coeff":0,"poly":[1]}]}"#,
    )
    .unwrap();
    let out = run(bin()
        .args(["cumulants", "--spec"])
        .arg(&path)
        .args(["--beta", "1"]));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("contiguous"));

    std::fs::write(&path, r#"{"pieces":[],"extra":1}"#).unwrap();
    let out = run(bin()
        .args(["cumulants", "--spec"])
        .arg(&path)
        .args(["--beta", "1"]));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rho_grid_at_two() {
    let out = stdout(&run(bin().args([
        "rho",
        "--tmax",
        "3",
        "--h",
        "0.0009765625",
    ])));
    assert!(out.contains("# method="));
    let at2 = rows(&out)
        .into_iter()
        .find(|r| f(&r[0]) == 2.0)
        .expect("grid contains 2");
    assert!((f(&at2[1]) - (1.0 - 2f64.ln())).abs() < 1e-8);
}

#[test]
fn simulate_is_deterministic_across_threads() {
    let mut outputs = Vec::new();
    for threads in ["1", "1", "8"] {
        let out = run(bin()
            .env("LEVYASYM_THREADS", threads)
            .args(["simulate", "--spec", &spec("dickman.json")])
            .args(["--beta", "0", "--n", "20000", "--seed", "7"]));
        outputs.push(stdout(&out).into_bytes());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
    let text = String::from_utf8(outputs.remove(0)).unwrap();
    let values: Vec<f64> = rows(&text).iter().map(|r| f(&r[0])).collect();
    assert_eq!(values.len(), 20000);
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    // E T = 1 and Var T = 1/2 for the Dickman law
    assert!((mean - 1.0).abs() < 5.0 * (0.5f64 / 20000.0).sqrt());
}

#[test]
fn compare_marks_rows_below_the_mean() {
    let out = stdout(&run(bin().args([
        "compare",
        "--spec",
        &spec("truncated03.json"),
        "--u",
        "0.5,5",
        "--h",
        "0.0009765625",
    ])));
    let r = rows(&out);
    assert!(f(&r[0][2]).is_nan());
    assert!(r[0][9].contains("mean"));
    assert!(f(&r[1][4]) < 0.05);
    assert!(out.contains("# max_scaled_err="));
}

#[test]
fn compare_rejects_unsorted_u() {
    let out = run(bin().args(["compare", "--spec", &spec("dickman.json"), "--u", "5,4"]));
    assert_eq!(out.status.code(), Some(2));
}
