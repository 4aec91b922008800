use std::process::{Command, Output};

use serde_json::Value;

fn cactus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cactus")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

fn csv_values(o: &Output) -> Vec<String> {
    let text = stdout(o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,value"));
    lines.map(|l| l.split_once(',').unwrap().1.to_string()).collect()
}

#[test]
fn bound_genus_two_json() {
    let o = cactus(&["bound", "--genus", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    for key in
        ["spec", "options", "kesten", "paschke", "cactus", "simple_surface", "isoperimetric", "reference_upper", "best_lower", "provenance"]
    {
        assert!(!v[key].is_null(), "missing {key}");
    }
    for key in ["zeta", "alpha", "rho", "lower_bound", "equation"] {
        assert!(v["cactus"][key].is_string(), "cactus.{key}");
    }
    assert!(v["best_lower"]["value"].as_str().unwrap().starts_with("0.662418"));
    assert_eq!(v["reference_upper"]["value"], "0.662816");
    assert_eq!(v["reference_upper"]["computed"], false);
    assert_eq!(v["options"]["N"], 64);
    assert_eq!(v["options"]["precision"], 30);
    assert_eq!(v["options"]["n_max"], 12);
}

#[test]
fn degree_and_face_alias_genus() {
    let a = json(&cactus(&["bound", "--genus", "2", "--format", "json"]));
    let b = json(&cactus(&["bound", "-d", "8", "-m", "8", "--format", "json"]));
    assert_eq!(a, b);
}

#[test]
fn bound_text_and_csv() {
    let o = cactus(&["bound", "-d", "5", "-m", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("iota") && text.contains("√3"));
    let o = cactus(&["bound", "-d", "5", "-m", "4", "--format", "csv"]);
    let text = stdout(&o);
    assert!(text.starts_with("field,value\n"));
    assert!(text.lines().any(|l| l == "isoperimetric.iota.exact,√3"));
}

#[test]
fn bound_free_group_is_kesten() {
    let v = json(&cactus(&["bound", "-d", "8", "--format", "json"]));
    assert_eq!(v["best_lower"]["source"], "kesten");
    assert_eq!(v["kesten"]["exact"], "(1/4)√7");
}

#[test]
fn bad_arguments_exit_two() {
    assert_eq!(cactus(&["bound", "--genus", "2", "-d", "8"]).status.code(), Some(2));
    assert_eq!(cactus(&["bound", "-d", "3", "-m", "5"]).status.code(), Some(2));
    assert_eq!(cactus(&["bound"]).status.code(), Some(2));
    assert_eq!(cactus(&["series", "nonsense", "-d", "8"]).status.code(), Some(2));
    assert_eq!(cactus(&["series", "cycle"]).status.code(), Some(2));
    assert_eq!(cactus(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let o = cactus(&["verify", "-d", "8", "-m", "8", "--n-max", "12"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dominance holds"));
    assert_eq!(cactus(&["verify", "-d", "8", "-m", "8", "--n-max", "1000"]).status.code(), Some(2));
    let o = cactus(&["verify", "--genus", "2", "--n-max", "0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["dominance_holds"], true);
    assert!(v["first_violation"].is_null());
    assert_eq!(v["walk_counts"], serde_json::json!([1]));
}

#[test]
fn verify_csv() {
    let o = cactus(&["verify", "-d", "4", "-m", "5", "--n-max", "6", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("n,count,g3\n0,1,1"));
    assert_eq!(text.lines().count(), 8);
}

#[test]
fn series_tree_green() {
    let o = cactus(&["series", "h", "-d", "8", "-N", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(csv_values(&o), ["1", "0", "8", "0", "120", "0", "2192", "0", "44248", "0", "949488"]);
}

#[test]
fn series_cycle_matches_eigenvalue_trace() {
    // closed walks on the k-cycle: (1/k) Σ_j (2 cos(2πj/k))ⁿ
    let k = 4u32;
    let o = cactus(&["series", "cycle", "-k", "4", "-N", "6"]);
    let got = csv_values(&o);
    for (n, v) in got.iter().enumerate() {
        let trace: f64 =
            (0..k).map(|j| (2.0 * (2.0 * std::f64::consts::PI * j as f64 / k as f64).cos()).powi(n as i32)).sum::<f64>()
                / k as f64;
        assert_eq!(v.parse::<i64>().unwrap(), trace.round() as i64, "n={n}");
    }
}

#[test]
fn series_g3_and_json() {
    let o = cactus(&["series", "g3", "--genus", "2", "-N", "16"]);
    assert_eq!(o.status.code(), Some(0));
    let vals = csv_values(&o);
    assert_eq!(vals.len(), 17);
    assert!(vals[0].starts_with("1.000"));
    let o = cactus(&["series", "g3", "--genus", "2", "-N", "8", "--exact", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["series"], "g3");
    assert_eq!(v["coefficients"][0], "1");
    assert_eq!(v["zeta_equation"], "localsg");
    let o = cactus(&["series", "theta", "-d", "4", "-N", "3"]);
    assert!(stdout(&o).starts_with("n,k,value\n0,0,1\n"));
    let o = cactus(&["series", "free-product", "-k", "3", "-d", "4", "-N", "5"]);
    assert_eq!(csv_values(&o), ["1", "0", "4", "2", "28", "30"]);
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("cactus-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let o = cactus(&["bound", "--genus", "3", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v["cactus"]["lower_bound"].as_str().unwrap().starts_with("0.552773"));
    std::fs::remove_dir_all(dir).unwrap();
}
