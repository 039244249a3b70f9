use std::process::Command;

use pfq_integrals::cli::{run, CliOutput, EXIT_NOT_CONVERGED, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn call(args: &[&str]) -> CliOutput {
    run(std::iter::once("pfq").chain(args.iter().copied()))
}

fn json(out: &CliOutput) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

#[test]
fn fourier_example() {
    let out = call(&["fourier", "--theta", "1", "--k", "2", "--alpha", "0"]);
    assert_eq!(out.code, EXIT_OK);
    let v = json(&out);
    assert!((v["value_re"].as_f64().unwrap() - 0.652_049_332_173_292_2).abs() < 1e-15);
    assert_eq!(v["converged"], true);
}

#[test]
fn definite_example() {
    let out = call(&["definite", "--kernel", "cos", "--alpha", "0", "--eta", "1", "--lambda", "0", "--a", "0", "--b", "1"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!((json(&out)["value_re"].as_f64().unwrap() - 1f64.sin()).abs() < 1e-15);
}

#[test]
fn identity_example() {
    let out = call(&["identity-check", "--id", "lemma1", "--alpha", "0.5", "--beta", "1", "--gamma", "2", "--n", "3", "--j", "2"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(json(&out)["value_re"].as_f64().unwrap() <= 1e-14);
}

#[test]
fn printed_value_round_trips() {
    let out = call(&["pfq", "--q-params", "0.5", "--z", "-2.4674011002723395"]);
    let v = json(&out);
    let text = out.stdout.split("\"value_re\":").nth(1).unwrap().split(',').next().unwrap();
    let parsed: f64 = text.parse().unwrap();
    assert_eq!(parsed, v["value_re"].as_f64().unwrap());
    assert_eq!(call(&["pfq", "--q-params", "0.5", "--z", "-2.4674011002723395"]).stdout, out.stdout);
}

#[test]
fn sweep_rows_and_grid() {
    let out = call(&["sweep", "--param", "z", "--start", "-1", "--stop", "1", "--steps", "8", "--", "pfq", "--q-params", "1.5"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let v = json(&out);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    let grid: Vec<f64> = rows.iter().map(|r| r["grid"].as_f64().unwrap()).collect();
    assert_eq!(grid[0], -1.0);
    assert_eq!(grid[8], 1.0);
    assert!(grid.windows(2).all(|w| w[0] < w[1]));
    for (i, r) in rows.iter().enumerate() {
        assert_eq!(r["index"].as_u64().unwrap() as usize, i);
    }
}

#[test]
fn csv_output() {
    let out = call(&["--format", "csv", "sweep", "--param", "z", "--start", "0", "--stop", "1", "--steps", "2", "--", "pfq"]);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("index,grid,command,value_re"));
    let last: Vec<&str> = lines[3].split(',').collect();
    assert_eq!(last[3].parse::<f64>().unwrap(), std::f64::consts::E);
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["pfq", "--z", "1"]).code, EXIT_OK);
    assert_eq!(call(&["fourier", "--theta", "0", "--k", "1"]).code, EXIT_USAGE);
    assert_eq!(call(&["pfq", "--q-params", "-2", "--z", "1"]).code, EXIT_USAGE);
    assert_eq!(call(&["pfq", "--bogus"]).code, EXIT_USAGE);
    let out = call(&["--max-terms", "4", "pfq", "--z", "5"]);
    assert_eq!(out.code, EXIT_NOT_CONVERGED);
    assert_eq!(json(&out)["converged"], false);
}

#[test]
fn seeded_grid_is_reproducible() {
    let a = call(&["--seed", "11", "identity-check", "--id", "lemma1", "--grid", "20"]);
    let b = call(&["--seed", "11", "identity-check", "--id", "lemma1", "--grid", "20"]);
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.stdout, b.stdout);
    assert!(json(&a)["value_re"].as_f64().unwrap() <= 1e-13);
}

#[test]
fn binary_matches_library() {
    let args = ["laplace", "--alpha", "1", "--theta", "1", "--u", "12"];
    let out = Command::new(env!("CARGO_BIN_EXE_pfq")).args(args).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim_end(), call(&args).stdout.trim_end());
}
