use std::process::Command;
use tncluster::cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["tncluster"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn word_check() {
    let (c, out, _) = call(&["word", "check", "--pmax", "210"]);
    assert_eq!(c, 0);
    assert_eq!(out.trim(), "OK 210/210");
}

#[test]
fn coord_both_directions() {
    let (c, out, _) = call(&["--json", "coord", "--p", "7"]);
    assert_eq!(c, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let (ell, m) = (v["ell"].as_i64().unwrap(), v["m"].as_i64().unwrap());
    let (_, out, _) = call(&["--json", "coord", "--ell", &ell.to_string(), "--m", &m.to_string()]);
    let w: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(w["p"], 7);
    assert_eq!(call(&["coord", "--p", "3", "--ell", "1"]).0, 2);
    assert_eq!(call(&["coord", "--ell", "1", "--m", "0"]).0, 2);
}

#[test]
fn omega_and_bform() {
    let (c, out, _) = call(&["tn", "omega", "--N", "5", "--ms", "[[0,4]]"]);
    assert_eq!((c, out.trim()), (0, "UNIT"));
    let (c, out, _) =
        call(&["tn", "bform", "--N", "3", "--x", r#"{"eps":{"0":1,"1":-1}}"#, "--y", r#"{"eps":{"40":1,"41":-1}}"#]);
    assert_eq!((c, out.trim()), (0, "1"));
    assert_eq!(call(&["tn", "omega", "--N", "5", "--ms", "[[4,0]]"]).0, 2);
    assert_eq!(call(&["tn", "omega", "--N", "5", "--ms", "nope"]).0, 2);
}

#[test]
fn affine_gamma_and_segments() {
    let (c, out, _) = call(&["affine", "gamma", "--type", "C1", "--rank", "4", "--window", "8"]);
    assert_eq!(c, 0);
    assert!(out.contains("A-infinity: PASS"));
    assert!(out.contains("dual period: PASS"));
    let (c, out, _) = call(&["affine", "seg", "--type", "A1", "--rank", "4", "--a", "0", "--b", "3"]);
    assert_eq!((c, out.trim()), (0, "1"));
    assert_eq!(call(&["affine", "gamma", "--type", "D3", "--rank", "5"]).0, 2);
    assert_eq!(call(&["affine", "gamma", "--type", "Q", "--rank", "5"]).0, 2);
}

#[test]
fn tsys_json() {
    let (c, out, _) = call(&["--json", "affine", "tsys", "--t", "1", "--ell", "2", "--m", "1", "--k", "1"]);
    assert_eq!(c, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for key in ["sub", "mid", "quot"] {
        assert_eq!(v[key].as_array().unwrap().len(), 2);
    }
}

#[test]
fn mutate_verdicts() {
    let (c, out, _) = call(&["mutate", "--schedule", "even", "--cap", "10"]);
    assert_eq!(c, 0, "{}", out);
    let (c, out, _) = call(&["--json", "mutate", "--schedule", "minus", "--cap", "10", "--quantum"]);
    assert_eq!(c, 0, "{}", out);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["labels"]["defects"].as_array().unwrap().len(), 0);
    assert_eq!(v["quantum"]["positive"], true);
    let (c, _, _) = call(&["mutate", "--schedule", "odd", "--cap", "10", "--N", "3"]);
    assert_eq!(c, 0);
    assert_eq!(call(&["mutate", "--schedule", "even", "--cap", "3"]).0, 2);
}

#[test]
fn seed_and_export() {
    assert_eq!(call(&["seed", "verify", "--cap", "8"]).0, 0);
    assert_eq!(call(&["seed", "verify", "--cap", "8", "--N", "4"]).0, 0);
    let (c, out, _) = call(&["quiver", "export", "--cap", "5", "--format", "json"]);
    assert_eq!(c, 0);
    assert!(tncluster::format::quiver_from_json(out.trim()).is_ok());
    let (_, out, _) = call(&["quiver", "export", "--cap", "5", "--format", "dot"]);
    assert!(out.starts_with("digraph"));
}

#[test]
fn usage_errors() {
    assert_eq!(call(&[]).0, 2);
    assert_eq!(call(&["frobnicate"]).0, 2);
    assert_eq!(call(&["--help"]).0, 0);
    assert_eq!(call(&["--version"]).0, 0);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_tncluster");
    let o = Command::new(bin).args(["tn", "omega", "--N", "5", "--ms", "[[0,4]]"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "UNIT");
    let o = Command::new(bin).args(["word", "check"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}
