use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn divforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_divforge")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn criteria_on_bundled_curve() {
    let v = json_of(&divforge(&["criteria", "--curve", "hermitian_q3.json"]));
    assert_eq!(v["command"], "criteria");
    let r = &v["result"];
    assert_eq!(r["genus"], 3);
    assert_eq!(r["degree_g"]["value"], "True");
    assert_eq!(r["degree_g"]["certificate"]["name"], "q>=3");
    assert_eq!(r["degree_g_minus_1"]["value"], "True");
}

#[test]
fn report_is_deterministic() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("wall_time_ms");
        v
    };
    let a = strip(json_of(&divforge(&["zeta", "--curve", "genus2_x5"])));
    let b = strip(json_of(&divforge(&["zeta", "--curve", "genus2_x5"])));
    assert_eq!(a, b);
}

#[test]
fn zeta_output_feeds_criteria() {
    let dir = tempfile::tempdir().unwrap();
    let z = dir.path().join("z.json");
    let out = divforge(&["zeta", "--curve", "genus2_exception_x4_x_1_over_x", "--out", path_str(&z)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let zv: Value = serde_json::from_str(&std::fs::read_to_string(&z).unwrap()).unwrap();
    assert_eq!(zv["result"]["class_number"], 2);
    assert_eq!(zv["result"]["counts"][0], 2);
    let from_zeta = json_of(&divforge(&["criteria", "--zeta", path_str(&z)]));
    let from_curve = json_of(&divforge(&["criteria", "--curve", "genus2_exception_x4_x_1_over_x"]));
    assert_eq!(from_zeta["result"]["degree_g_minus_1"], from_curve["result"]["degree_g_minus_1"]);
    assert_eq!(from_zeta["result"]["degree_g_minus_1"]["value"], "False");
    let names: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(names.len(), 1, "stray temporary files: {names:?}");
}

#[test]
fn construction_round_trips_through_rrdim() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c.json");
    let out = divforge(&["construct", "--curve", "hermitian_q3", "--reduce", "--out", path_str(&c)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let cv: Value = serde_json::from_str(&std::fs::read_to_string(&c).unwrap()).unwrap();
    assert_eq!(cv["result"]["degree"], 3);
    assert_eq!(cv["result"]["certificate"]["OracleCertified"]["dim"], 1);
    assert_eq!(cv["result"]["reduced"]["degree"], 2);
    let rr = json_of(&divforge(&["rrdim", "--curve", path_str(&c), "--divisor", path_str(&c)]));
    assert_eq!(rr["result"]["dim"], 1);
    assert_eq!(rr["result"]["nonspecial"], true);
}

#[test]
fn norm_trace_descriptor_is_reloadable() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("nt.json");
    let out = divforge(&["construct", "--method", "norm-trace", "--q", "2", "--r", "2", "--out", path_str(&c)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let z = json_of(&divforge(&["zeta", "--curve", path_str(&c)]));
    assert_eq!(z["result"]["genus"], 1);
    assert_eq!(z["result"]["counts"][0], 9);
}

#[test]
fn semigroup_and_tower() {
    let v = json_of(&divforge(&["semigroup", "--m", "4", "--r", "3", "--alpha", "2,2", "--q", "9"]));
    assert_eq!(v["result"]["gaps"], serde_json::json!([1, 2, 5]));
    assert_eq!(v["result"]["member"], true);
    let t = json_of(&divforge(&["tower", "--q", "2", "--m", "3", "--enumerate"]));
    assert_eq!(t["result"]["divisor"]["deg_a"], 1);
    assert_eq!(t["result"]["finite_level"]["roundtrip_ok"], true);
}

#[test]
fn tables_csv_and_json() {
    let out = divforge(&["tables", "--convention", "branch=minus"]);
    assert_eq!(code(&out), 0);
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.starts_with("q,g,k,case,n,branch,cns_sum,computed_verdict,reference_verdict,match\n"));
    assert!(csv.contains("2,3,3,A,,minus,28,True,True,true"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("mismatch"));
    let v = json_of(&divforge(&["tables", "--format", "json"]));
    assert_eq!(v["result"]["rejected"], 0);
}

#[test]
fn places_listing() {
    let v = json_of(&divforge(&["places", "--curve", "hermitian_q2", "--degree", "1"]));
    assert_eq!(v["result"]["count"], 9);
    assert_eq!(v["result"]["places"].as_array().unwrap().len(), 9);
}

#[test]
fn error_exit_codes() {
    assert_eq!(code(&divforge(&["frobnicate"])), 1);
    assert_eq!(code(&divforge(&["zeta"])), 1);
    assert_eq!(code(&divforge(&["criteria", "--curve", "hermitian_q3", "--format", "csv"])), 1);
    assert_eq!(code(&divforge(&["tables", "--convention", "branch=sideways"])), 1);
    assert_eq!(code(&divforge(&["semigroup", "--m", "4", "--r", "2"])), 1);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = divforge(&["zeta", "--curve", path_str(&bad)]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn verify_single_suite() {
    let out = divforge(&["verify", "--suite", "semigroups", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.starts_with("suite,name,pass,detail\n"));
    assert!(!csv.contains(",false,"));
    assert_eq!(code(&divforge(&["verify", "--suite", "nope"])), 1);
}
