use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

use galois_fiber::exact::{parse_poly, parse_rf};

const SEPTIC: &str = "(x^3-4*x^2+3*x+1)*(x^4-10*x^3+27*x^2-10*x-27)";

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_galois-fiber"));
    c.env_remove("GALOIS_FIBER_DATA");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn ok(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    json(&out)
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("galois-fiber-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn envelope() {
    let v = ok(&["catalog", "--level", "2"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "catalog");
    assert!(v["tag"].is_string());
    assert!(v.get("elapsed_ms").is_none());
    let t = ok(&["--timing", "catalog", "--level", "2"]);
    assert!(t["elapsed_ms"].is_string());
}

#[test]
fn catalog_level_two_has_three_entries() {
    let v = ok(&["catalog", "--level", "2"]);
    let names: Vec<&str> = v["result"]["entries"].as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["G_1", "G_2", "G_3"]);
}

#[test]
fn sieve_example_is_unique_point() {
    let v = ok(&["sieve", "--curve", SEPTIC, "--primes", "5,11", "--bound", "6"]);
    assert_eq!(v["result"]["status"], "UNIQUE_POINT");
    assert_eq!(v["result"]["bound"], "6");
    assert_eq!(parse_poly(v["inputs"]["curve"].as_str().unwrap()).unwrap(), parse_poly(SEPTIC).unwrap());
}

#[test]
fn inconclusive_sieve_exits_two() {
    let out = run(&["sieve", "--curve", "x^3+x", "--primes", "5", "--bound", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["result"]["status"], "INCONCLUSIVE");
}

#[test]
fn census_genera() {
    let v = ok(&["census", "--pair-left", "2:G_3", "--level", "7"]);
    let g: Vec<i64> = v["result"]["genera"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
    assert_eq!(g, [0, 2, 2, 2, 3, 3]);
}

#[test]
fn usage_and_input_errors_exit_one() {
    for args in [
        &["zeta", "--curve", "x^^2", "--prime", "5"][..],
        &["catalog", "--level", "7", "--name", "G_9"],
        &["entangle", "--pair", "2:G_3"],
        &["frobnicate"],
        &["zeta", "--prime", "5"],
        &["gauss", "--prime", "5"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
    let out = run(&["zeta", "--curve", "x^^2", "--prime", "5"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 2"));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn leading_minus_curves() {
    let v = ok(&["search", "--curve", "-x^13+64*x", "--height", "100"]);
    assert_eq!(v["result"]["points"], serde_json::json!(["inf", "(0, 0)"]));
    ok(&["zeta", "--curve", "-x^7-8*x", "--prime", "11"]);
    ok(&["braujones", "--t", "-4", "--level6"]);
}

#[test]
fn deterministic_output() {
    let args = ["entangle", "--pair", "2:G_3,7:G_7"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let a = run(&["--threads", "1", "zeta", "--curve", SEPTIC, "--prime", "13"]);
    let b = run(&["--threads", "4", "zeta", "--curve", SEPTIC, "--prime", "13"]);
    assert_eq!(a.stdout, b.stdout);
}

/// Printed polynomial fields, as JSON pointers.
fn reparse_all(v: &Value, pointers: &[&str], rational: bool) {
    for ptr in pointers {
        let s = v.pointer(ptr).and_then(Value::as_str).unwrap_or_else(|| panic!("{ptr} missing"));
        if rational {
            // j-maps are shipped factored; compare values
            let r = parse_rf(s).unwrap();
            assert_eq!(parse_rf(&r.to_string()).unwrap(), r, "{ptr}");
        } else {
            let f = parse_poly(s).unwrap();
            assert!(f.to_string() == s || f.to_string_var("X") == s, "{ptr}: {s} reprints as {f}");
        }
    }
}

#[test]
fn printed_polynomials_round_trip() {
    let m = ok(&["model", "--left", "2:G_3", "--right", "7:G_2"]);
    reparse_all(&m, &["/result/reduced/w", "/result/reduced/w0", "/result/reduced/h"], false);
    assert_eq!(parse_poly(m["result"]["reduced"]["w"].as_str().unwrap()).unwrap(), parse_poly(SEPTIC).unwrap());
    let g = ok(&["gauss", "--prime", "13"]);
    reparse_all(&g, &["/result/cubic/printed", "/result/cubic/corrected", "/result/cubic/periods"], false);
    let d = ok(&["descent", "--factors", "x^2+1;2*(x^4-x^2+1)", "--bad-primes", "2,3"]);
    reparse_all(&d, &["/result/curve", "/inputs/factors/0", "/inputs/factors/1"], false);
    assert_eq!(d["result"]["passing"], serde_json::json!(["2"]));
    let c = ok(&["catalog", "--level", "7", "--name", "G_2"]);
    reparse_all(&c, &["/result/entries/0/jmap/corrected", "/result/entries/0/jmap/printed"], true);
    let s = ok(&["sieve", "--curve", SEPTIC, "--primes", "5,11", "--bound", "6"]);
    reparse_all(&s, &["/inputs/curve"], false);
}

#[test]
fn jmap_file_overrides_references() {
    let c = ok(&["catalog", "--level", "7", "--name", "G_2"]);
    let j = c["result"]["entries"][0]["jmap"]["corrected"].as_str().unwrap().to_string();
    let dir = scratch("jmaps");
    let good = dir.join("maps.txt");
    std::fs::write(&good, format!("# level 7\nMINE = {j}\n")).unwrap();
    let path = good.to_str().unwrap();
    let mine = ok(&["--jmap-file", path, "model", "--left", "2:G_3", "--right", "MINE"]);
    let cat = ok(&["model", "--left", "2:G_3", "--right", "7:G_2"]);
    assert_eq!(mine["result"]["reduced"]["w"], cat["result"]["reduced"]["w"]);
    assert_eq!(mine["result"]["genus"], 3);

    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "A = t^2\nB t^3\n").unwrap();
    let out = run(&["--jmap-file", bad.to_str().unwrap(), "catalog", "--level", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn data_directory_override() {
    let shipped: Value = serde_json::from_str(include_str!("../../core/data/models.json")).unwrap();
    let mut edited = shipped.clone();
    let models = edited["models"].as_array_mut().unwrap();
    let mut extra = models[0].clone();
    extra["name"] = "X_override".into();
    models.push(extra);
    let dir = scratch("data");
    std::fs::write(dir.join("models.json"), serde_json::to_string(&edited).unwrap()).unwrap();

    let out = bin().env("GALOIS_FIBER_DATA", &dir).args(["model", "--registry", "X_override"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(run(&["model", "--registry", "X_override"]).status.code(), Some(1));

    // an unreadable override falls back to the shipped copy
    std::fs::write(dir.join("catalog.json"), "{ not json").unwrap();
    let out = bin().env("GALOIS_FIBER_DATA", &dir).args(["catalog", "--level", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["entries"].as_array().unwrap().len(), 3);
    std::fs::remove_dir_all(&dir).ok();
}
