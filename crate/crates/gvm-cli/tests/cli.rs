//! End-to-end CLI behavior through the compiled binary.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

use gvm::{sample_gvm, seeded_rng, GvMParams};

fn gvm_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gvm"))
}

fn run(args: &[&str]) -> Output {
    gvm_bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_csv(dir: &Path, name: &str, header: bool, values: &[f64]) -> std::path::PathBuf {
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    if header {
        writeln!(f, "theta").unwrap();
    }
    for v in values {
        writeln!(f, "{v}").unwrap();
    }
    path
}

fn synthetic(n: usize, seed: u64) -> Vec<f64> {
    let p = GvMParams::new(4.095, 0.869, 0.304, 1.910).unwrap();
    let mut rng = seeded_rng(seed);
    (0..n).map(|_| sample_gvm(&p, &mut rng).unwrap()).collect()
}

#[test]
fn fit_empty_file_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_csv(dir.path(), "empty.csv", false, &[]);
    let out = run(&["fit", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn fit_degrees_equals_radians() {
    let dir = tempfile::tempdir().unwrap();
    let angles = synthetic(800, 1);
    let rad = write_csv(dir.path(), "rad.csv", false, &angles);
    let deg_values: Vec<f64> = angles.iter().map(|a| a.to_degrees()).collect();
    let deg = write_csv(dir.path(), "deg.csv", false, &deg_values);
    let a = run(&["fit", rad.to_str().unwrap(), "--format", "records"]);
    let b = run(&["fit", deg.to_str().unwrap(), "--unit", "degrees", "--format", "records"]);
    assert_eq!(a.status.code(), Some(0));
    // to_degrees/to_radians round-trips bit-exactly only sometimes; the
    // fits must agree to optimizer precision
    let pa = parse_kv(&stdout(&a));
    let pb = parse_kv(&stdout(&b));
    for key in ["mu1", "mu2", "kappa1", "kappa2"] {
        let va: f64 = pa[key].parse().unwrap();
        let vb: f64 = pb[key].parse().unwrap();
        assert!((va - vb).abs() < 1e-4, "{key}: {va} vs {vb}");
    }
}

fn parse_kv(line: &str) -> std::collections::HashMap<String, String> {
    line.split_whitespace()
        .filter_map(|t| t.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

#[test]
fn fit_column_selection_by_name() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("two_cols.csv");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "id,theta").unwrap();
    for (i, v) in synthetic(200, 2).iter().enumerate() {
        writeln!(f, "{i},{v}").unwrap();
    }
    let by_name =
        run(&["fit", path.to_str().unwrap(), "--header", "--column", "theta", "--format", "records"]);
    let by_index =
        run(&["fit", path.to_str().unwrap(), "--header", "--column", "1", "--format", "records"]);
    assert_eq!(by_name.status.code(), Some(0));
    assert_eq!(stdout(&by_name), stdout(&by_index));
    let missing = run(&["fit", path.to_str().unwrap(), "--header", "--column", "nope"]);
    assert_eq!(missing.status.code(), Some(3));
}

#[test]
fn density_rows_symmetry_and_bit_exactness() {
    let grid = 64;
    let out = run(&[
        "density", "--mu1", "1.5707963267948966", "--mu2", "0", "--kappa1", "5.5", "--kappa2",
        "0.1", "--grid", "64", "--from", "0", "--to", "6.283185307179586",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<(f64, f64)> = text
        .lines()
        .map(|l| {
            let mut it = l.split('\t');
            (it.next().unwrap().parse().unwrap(), it.next().unwrap().parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), grid);

    // symmetric about pi/2: f(theta_i) = f(theta_{(32 - i) mod 64})
    for i in 0..grid {
        let j = (32 + grid - i) % grid;
        assert!(
            (rows[i].1 - rows[j].1).abs() < 1e-12 * rows[i].1.max(1e-300),
            "i={i} j={j}"
        );
    }

    // values are exactly the library density
    let p = GvMParams::new(std::f64::consts::FRAC_PI_2, 0.0, 5.5, 0.1).unwrap();
    for (theta, d) in rows {
        assert_eq!(d, gvm::models::gvm_log_density(theta, &p).exp());
    }
}

#[test]
fn sample_then_fit_recovers_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("draws.csv");
    let out = run(&[
        "sample", "--model", "gvm", "--mu1", "4.095", "--mu2", "0.869", "--kappa1", "0.304",
        "--kappa2", "1.910", "--n", "8000", "--seed", "99", "--out", csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let lines = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(lines.lines().count(), 8001); // header + draws
    assert_eq!(lines.lines().next(), Some("theta"));

    let fit = run(&["fit", csv.to_str().unwrap(), "--header", "--column", "theta", "--format", "records"]);
    assert_eq!(fit.status.code(), Some(0));
    let kv = parse_kv(&stdout(&fit));
    for (key, truth) in [("mu1", 4.095), ("mu2", 0.869), ("kappa1", 0.304), ("kappa2", 1.910)] {
        let v: f64 = kv[key].parse().unwrap();
        assert!((v - truth).abs() < 0.15, "{key}: {v} vs {truth}");
    }
}

#[test]
fn test_command_is_seed_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let csv = write_csv(dir.path(), "h0.csv", false, &synthetic(400, 5));
    let args = |seed: &str| -> Vec<String> {
        [
            "test",
            csv.to_str().unwrap(),
            "--test",
            "no-shift",
            "--mu1",
            "4.095",
            "--kappa1",
            "0.304",
            "--kappa2",
            "1.910",
            "--s",
            "20000",
            "--seed",
            seed,
            "--format",
            "records",
        ]
        .map(String::from)
        .to_vec()
    };
    let run_owned = |args: Vec<String>| gvm_bin().args(args).output().expect("binary runs");
    let a = run_owned(args("12"));
    let b = run_owned(args("12"));
    let c = run_owned(args("13"));
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(stdout(&a), stdout(&b));
    assert_ne!(stdout(&a), stdout(&c));
    assert!(stdout(&a).starts_with("record=bayes_factor test=no-shift "));
}

#[test]
fn test_command_missing_nuisance_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let csv = write_csv(dir.path(), "h0.csv", false, &synthetic(50, 5));
    let out = run(&["test", csv.to_str().unwrap(), "--test", "no-shift"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn test_command_reads_nuisance_from_fit_file() {
    let dir = tempfile::tempdir().unwrap();
    let csv = write_csv(dir.path(), "data.csv", false, &synthetic(1000, 6));
    let rec = dir.path().join("fit.rec");
    let fit = run(&["fit", csv.to_str().unwrap(), "--format", "records", "--out", rec.to_str().unwrap()]);
    assert_eq!(fit.status.code(), Some(0));
    let out = run(&[
        "test",
        csv.to_str().unwrap(),
        "--test",
        "vm-symmetry",
        "--fit-file",
        rec.to_str().unwrap(),
        "--epsilon",
        "0.05",
        "--s",
        "5000",
        "--seed",
        "3",
        "--format",
        "records",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let kv = parse_kv(&stdout(&out));
    let b01: f64 = kv["b01"].parse().unwrap();
    assert!(b01.is_finite());
}

#[test]
fn config_file_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let csv = write_csv(dir.path(), "data.csv", false, &synthetic(100, 9));
    let cfg = dir.path().join("run.cfg");
    // a diffuse prior (tau = 20) keeps enough prior mass outside the
    // epsilon-neighbourhood for the Monte Carlo integral to be estimable
    std::fs::write(&cfg, "s = 1234\nepsilon = 0.2\ntau = 20\n").unwrap();
    let base = [
        "test",
        csv.to_str().unwrap(),
        "--test",
        "no-shift",
        "--mu1",
        "4.095",
        "--kappa1",
        "0.304",
        "--kappa2",
        "1.910",
        "--seed",
        "4",
    ];
    let mut with_cfg = base.to_vec();
    with_cfg.extend(["--config", cfg.to_str().unwrap()]);
    let out = run(&with_cfg);
    let text = stdout(&out);
    assert!(text.contains("s:            1234"), "{text}");
    assert!(text.contains("epsilon:      0.2"), "{text}");

    let mut with_flag = with_cfg.clone();
    with_flag.extend(["--s", "777"]);
    let text = stdout(&run(&with_flag));
    assert!(text.contains("s:            777"), "{text}"); // flag beats config
    assert!(text.contains("epsilon:      0.2"), "{text}"); // config beats default
}

#[test]
fn simulate_records_shape_and_determinism() {
    let args = [
        "simulate", "--case", "K2", "--r", "100", "--s", "100", "--n", "10", "--sequences", "2",
        "--format", "records",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let line_a = stdout(&a);
    // wall_time legitimately differs between runs; everything else must not
    let strip = |s: &str| {
        s.split_whitespace().filter(|t| !t.starts_with("wall_time=")).collect::<Vec<_>>().join(" ")
    };
    assert_eq!(strip(&line_a), strip(&stdout(&b)));
    assert!(line_a.starts_with("record=study case=K2 "));

    let unknown = run(&["simulate", "--case", "D9"]);
    assert_eq!(unknown.status.code(), Some(2));
}
