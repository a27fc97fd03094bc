use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn newstein(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_newstein")).args(args).env_remove("NEWSTEIN_THREADS").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

#[test]
fn jacobi_newstein() {
    let o = newstein(&["jacobi", "--algebra", "newstein"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["violations"], 0);
    assert_eq!(json(&o)["dim"], 51);
    assert!(String::from_utf8_lossy(&o.stderr).contains("51-dim, 0 violations"));
}

#[test]
fn jacobi_flags_broken_case8() {
    let o = newstein(&["jacobi", "--algebra", "newstein-ext:8"]);
    assert_eq!(code(&o), 1);
    assert!(json(&o)["violations"].as_u64().unwrap() > 0);
}

#[test]
fn cohomology_small_algebras() {
    let o = newstein(&["cohomology", "--algebra", "h3", "--coeffs", "trivial", "--degree", "2", "--method", "modular"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["betti"], 2);
    assert_eq!(r["method"]["kind"], "modular");
    let o = newstein(&["cohomology", "--algebra", "sl2", "--coeffs", "adjoint", "--degree", "1"]);
    assert_eq!(json(&o)["betti"], 0);
    let o = newstein(&["cohomology", "--algebra", "h3", "--coeffs", "trivial", "--degree", "1", "--method", "reduction"]);
    assert_eq!(code(&o), 4);
}

#[test]
fn cohomology_from_definition_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h3.json");
    std::fs::write(&path, newstein_core::algebras::heisenberg3().to_json()).unwrap();
    let sel = format!("file:{}", path.display());
    let o = newstein(&["cohomology", "--algebra", &sel, "--degree", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["betti"], 2);
}

#[test]
fn spectrum_vacuum() {
    let o = newstein(&["spectrum", "--ell", "-3", "--cutoff", "8"]);
    assert_eq!(code(&o), 0);
    let rows = json(&o);
    assert_eq!(rows.as_array().unwrap().len(), 7);
    assert!(rows[0]["eigenvalue"].as_f64().unwrap().abs() < 1e-12);
    assert_eq!(rows[0]["multiplicity"], 1);
    assert_eq!(rows[2]["multiplicity"], 6);
}

#[test]
fn classify_exact_and_float() {
    let o = newstein(&["extensions", "classify", "--matrix", "0", "1", "-1", "0"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["case"], 7);
    let o = newstein(&["extensions", "classify", "--matrix", "2.0", "0", "0", "2.0"]);
    assert_eq!(json(&o)["jordan"]["type"], "scalar");
    let o = newstein(&["extensions", "classify", "--matrix", "x", "0", "0", "1"]);
    assert_eq!(code(&o), 4);
}

#[test]
fn grouplaw_is_deterministic() {
    let a = newstein(&["grouplaw", "check", "--seed", "5", "--samples", "50", "--extended"]);
    let b = newstein(&["grouplaw", "check", "--seed", "5", "--samples", "50", "--extended"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(json(&a)["extended"]["associativity"].as_f64().unwrap() < 1e-9);
}

#[test]
fn evolve_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let state = dir.path().join("psi.txt");
    let out = dir.path().join("out.txt");
    std::fs::write(&state, "# two levels\n0 0.6 0\n1 0 0.8\n").unwrap();
    let s = state.to_str().unwrap();
    let o = newstein(&["evolve", "--tau", "1.5", "--state", s, "--cutoff", "4", "--ell", "-3", "-o", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let mut norm = 0.0;
    for line in text.lines() {
        let f: Vec<f64> = line.split_whitespace().map(|x| x.parse().unwrap()).collect();
        norm += f[1] * f[1] + f[2] * f[2];
    }
    assert!((norm - 1.0).abs() < 1e-12);
    // the vacuum at ell = -3 does not move
    let first: Vec<f64> = text.lines().next().unwrap().split_whitespace().map(|x| x.parse().unwrap()).collect();
    assert!((first[1] - 0.6).abs() < 1e-12 && first[2].abs() < 1e-12);
    // back-evolution restores the input
    let back = dir.path().join("back.txt");
    newstein(&["evolve", "--tau", "-1.5", "--state", out.to_str().unwrap(), "--cutoff", "4", "--ell", "-3", "-o", back.to_str().unwrap()]);
    let line1: Vec<f64> = std::fs::read_to_string(&back).unwrap().lines().nth(1).unwrap().split_whitespace().map(|x| x.parse().unwrap()).collect();
    assert!(line1[1].abs() < 1e-12 && (line1[2] - 0.8).abs() < 1e-12);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&newstein(&["jacobi", "--algebra", "e8"])), 3);
    assert_eq!(code(&newstein(&["spectrum", "--m0", "-1"])), 4);
    assert_eq!(code(&newstein(&["evolve", "--tau", "1", "--state", "/nonexistent/psi.txt"])), 5);
    assert_eq!(code(&newstein(&["cohomology", "--algebra", "file:/nonexistent.json", "--degree", "1"])), 5);
    assert_eq!(code(&newstein(&["frobnicate"])), 2);
    assert_eq!(code(&newstein(&["verify-all", "--only", "17"])), 4);
}

#[test]
fn threads_env_is_validated() {
    let o = Command::new(env!("CARGO_BIN_EXE_newstein")).args(["jacobi", "--algebra", "h3"]).env("NEWSTEIN_THREADS", "many").output().unwrap();
    assert_eq!(code(&o), 4);
    let o = Command::new(env!("CARGO_BIN_EXE_newstein")).args(["jacobi", "--algebra", "h3"]).env("NEWSTEIN_THREADS", "2").output().unwrap();
    assert_eq!(code(&o), 0);
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "run.toml", "seed = 5\nell = -3.0\ncutoff = 6\nmethod = \"modular\"\n");
    let from_file = newstein(&["--config", &cfg, "spectrum"]);
    assert_eq!(json(&from_file).as_array().unwrap().len(), 5);
    assert!(json(&from_file)[0]["eigenvalue"].as_f64().unwrap().abs() < 1e-12);
    let flags_win = newstein(&["--config", &cfg, "spectrum", "--cutoff", "4", "--ell", "1"]);
    let rows = json(&flags_win);
    assert_eq!(rows.as_array().unwrap().len(), 3);
    assert!((rows[0]["eigenvalue"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    let seeded = newstein(&["--config", &cfg, "grouplaw", "check", "--samples", "20"]);
    let explicit = newstein(&["grouplaw", "check", "--samples", "20", "--seed", "5"]);
    assert_eq!(seeded.stdout, explicit.stdout);
    let m = newstein(&["--config", &cfg, "cohomology", "--algebra", "h3", "--degree", "1"]);
    assert_eq!(json(&m)["method"]["kind"], "modular");
    let bad = write(dir.path(), "bad.toml", "sed = 1\n");
    assert_eq!(code(&newstein(&["--config", &bad, "jacobi"])), 4);
}

#[test]
fn verify_all_exit_status() {
    let o = newstein(&["verify-all", "--only", "2,15"]);
    assert_eq!(code(&o), 0);
    let reports = json(&o);
    assert_eq!(reports.as_array().unwrap().len(), 2);
    assert!(reports.as_array().unwrap().iter().all(|r| r["status"] == "match" && r.get("reproduce").is_none()));
    let text = String::from_utf8(o.stdout.clone()).unwrap();
    let pos: Vec<usize> = ["\"claim\"", "\"target_value\"", "\"computed_value\"", "\"method\"", "\"status\""].iter().map(|k| text.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]));

    let o = newstein(&["verify-all", "--only", "5"]);
    assert_eq!(code(&o), 1);
    let r = &json(&o)[0];
    assert_eq!(r["status"], "mismatch");
    assert!(r["reproduce"].as_str().unwrap().starts_with("newstein cohomology"));

    let o = newstein(&["verify-all", "--only", "6"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)[0]["status"], "conditional");
}

#[test]
fn verify_all_is_byte_identical() {
    let a = newstein(&["verify-all", "--only", "9,13", "--seed", "3"]);
    let b = newstein(&["verify-all", "--only", "9,13", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
}
