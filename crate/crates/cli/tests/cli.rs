use std::process::Command;

use poolfaces_cli::{run, Outcome, EXIT_BUDGET, EXIT_INVALID, EXIT_OK};
use serde_json::Value;

fn call(args: &str) -> Outcome {
    run(std::iter::once("poolfaces").chain(args.split_whitespace()))
}

fn json(args: &str) -> Value {
    let out = call(args);
    assert_eq!(out.code, EXIT_OK, "{args}: {}", out.stderr);
    serde_json::from_str(&out.stdout).expect("valid JSON")
}

#[test]
fn vertices_gf_example() {
    let v = json("vertices --k 3 --s 1 --n 5 --method gf");
    assert_eq!(v["result"], "81");
    assert_eq!(v["command"], "vertices");
    assert_eq!(v["provenance"], serde_json::json!(["gf"]));
    assert!(v["version"].is_string());
}

#[test]
fn envelope_key_order() {
    let out = call("vertices --k 3 --s 1 --n 2 --method matrix");
    let keys: Vec<usize> = [
        "\"command\"",
        "\"params\"",
        "\"result\"",
        "\"provenance\"",
        "\"version\"",
    ]
    .iter()
    .map(|k| out.stdout.find(k).unwrap())
    .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn vertices_all_methods_agree() {
    let v = json("vertices --k 4 --s 2 --n 1..5");
    let rows = v["result"].as_array().unwrap();
    let counts: Vec<&str> = rows.iter().map(|r| r["count"].as_str().unwrap()).collect();
    assert_eq!(counts, ["4", "14", "48", "164", "560"]);
    assert_eq!(
        v["provenance"],
        serde_json::json!(["oracle", "matrix", "gf", "closed"])
    );
}

#[test]
fn grid3xn_b6_example() {
    assert_eq!(json("grid3xn --n 4 --method b6")["result"], "1536");
    let v = json("grid3xn --n 2..5");
    let counts: Vec<&str> = v["result"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["count"].as_str().unwrap())
        .collect();
    assert_eq!(counts, ["14", "150", "1536", "15594"]);
}

#[test]
fn a14_out_of_range_is_invalid() {
    let out = call("grid3xn --n 4 --method a14");
    assert_eq!(out.code, EXIT_INVALID);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "method-range");
}

#[test]
fn facets_hrep_example() {
    let v = json("facets --k 3 --s 1 --n 2 --hrep");
    let r = &v["result"];
    assert_eq!(r["inequalities"].as_array().unwrap().len(), 6);
    assert_eq!(r["equalities"].as_array().unwrap().len(), 1);
    assert_eq!(r["equalities"][0]["sense"], "=");
    assert_eq!(r["equalities"][0]["rhs"], 2);
    assert_eq!(r["check"]["sound"], true);
    assert!(r["inequalities"]
        .as_array()
        .unwrap()
        .iter()
        .all(|row| row["sense"] == "<=" || row["sense"] == ">="));
}

#[test]
fn facets_count_matches_oracle() {
    let v = json("facets --k 4 --s 1 --n 3");
    assert_eq!(v["result"], "10");
    assert_eq!(v["provenance"], serde_json::json!(["formula", "oracle"]));
}

#[test]
fn paper_literal_report_lists_violations() {
    let v = json("facets --k 3 --s 1 --n 2 --paper-literal");
    let rows = v["result"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    let violated = rows.iter().filter(|r| !r["violated_by"].is_null()).count();
    assert_eq!(violated, 5);
    assert_eq!(rows[0]["printed"]["sense"], ">=");
    assert_eq!(rows[0]["derived"]["sense"], "<=");
}

#[test]
fn gf_json_and_closed_check() {
    let v = json("gf --k 3 --s 1 --terms 5");
    assert_eq!(v["result"]["num"], serde_json::json!(["3", "1", "-1"]));
    assert_eq!(
        v["result"]["den"],
        serde_json::json!(["1", "-2", "-1", "1"])
    );
    assert_eq!(
        v["result"]["series"],
        serde_json::json!(["3", "7", "16", "36", "81"])
    );
    let c = json("gf --k 5 --s 3 --closed");
    let prov = c["provenance"].as_array().unwrap();
    assert!(prov.contains(&Value::from("large-strides")));
    assert!(prov.contains(&Value::from("matrix")));
}

#[test]
fn closed_outside_regimes_is_invalid() {
    assert_eq!(call("gf --k 5 --s 2 --closed").code, EXIT_INVALID);
    assert_eq!(
        call("vertices --k 5 --s 2 --n 3 --method closed").code,
        EXIT_INVALID
    );
}

#[test]
fn table_csv_layout() {
    let out = call("total-faces --k 3..4 --s 1 --n 1..3 --format csv");
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "k,n=1,n=2,n=3\n3,8,26,88\n4,16,58,208\n");
    let edges = call("fvector --k 3 --s 1 --n 1..2 --dim 1 --format csv");
    assert_eq!(edges.stdout, "k,n=1,n=2\n3,3,11\n");
}

#[test]
fn fvector_single() {
    let v = json("fvector --k 3 --s 1 --n 2");
    assert_eq!(v["result"], serde_json::json!(["7", "11", "6", "1"]));
}

#[test]
fn budget_exit_code() {
    let out = call("total-faces --k 3 --s 1 --n 4 --budget 10");
    assert_eq!(out.code, EXIT_BUDGET);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "budget-exceeded");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(call("vertices --k 3 --s 1").code, EXIT_INVALID);
    assert_eq!(call("nonsense").code, EXIT_INVALID);
    assert_eq!(call("vertices --k 3 --s 1 --n 0").code, EXIT_INVALID);
}

#[test]
fn growth_values() {
    let v = json("growth --grid3xn");
    let g = v["result"]["growth"].as_f64().unwrap();
    assert!((g - 2.3156).abs() < 1e-3);
    assert_eq!(v["result"]["certified"], true);
    let one = json("growth --k 3 --s 1");
    assert!((one["result"]["growth"].as_f64().unwrap() - 0.8096).abs() < 5e-4);
    let large = json("growth --k 6 --s 4");
    assert!(large["provenance"]
        .as_array()
        .unwrap()
        .contains(&Value::from("large-strides")));
}

#[test]
fn grid2xn_values() {
    let v = json("grid2xn --n 2..5");
    let counts: Vec<&str> = v["result"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["count"].as_str().unwrap())
        .collect();
    assert_eq!(counts, ["4", "14", "48", "164"]);
}

#[test]
fn class_counts_total() {
    let v = json("grid3xn --n 3 --class-counts");
    assert_eq!(v["result"]["total"], "150");
    let classes = v["result"]["classes"].as_array().unwrap();
    for pos in [6, 8, 12, 14] {
        assert_eq!(classes[pos - 1]["count"], "14");
    }
}

#[test]
fn regions_deterministic() {
    let a = call("regions --k 3 --s 1 --n 2 --sample 20000 --seed 3");
    let b = call("regions --k 3 --s 1 --n 2 --sample 20000 --seed 3");
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["result"]["distinct_count"], 7);
    assert_eq!(v["result"]["all_faces"], true);
}

#[test]
fn verify_quick_passes() {
    let v = json("verify --level quick");
    assert_eq!(v["result"]["passed"], true);
    assert_eq!(v["result"]["checks"].as_array().unwrap().len(), 12);
}

#[test]
fn output_is_byte_stable() {
    for args in [
        "gf --k 6 --s 2",
        "facets --k 4 --s 2 --n 3 --hrep",
        "verify",
    ] {
        assert_eq!(call(args), call(args), "{args}");
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_poolfaces");
    let ok = Command::new(bin)
        .args([
            "vertices", "--k", "3", "--s", "1", "--n", "5", "--method", "gf",
        ])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("\"result\":\"81\""));
    let budget = Command::new(bin)
        .args([
            "fvector", "--k", "4", "--s", "1", "--n", "4", "--budget", "1",
        ])
        .output()
        .unwrap();
    assert_eq!(budget.status.code(), Some(3));
    let bad = Command::new(bin)
        .args(["grid2xn", "--n", "1"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
