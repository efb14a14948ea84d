use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn job(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../jobs")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn extalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extalg")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(extalg(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(extalg(&["verify"]).status.code(), Some(1));
    assert_eq!(extalg(&["verify", "--vars", "x", "--gen", "x^"]).status.code(), Some(1));
    assert_eq!(extalg(&["verify", "--vars", "x", "--gen", "y^2"]).status.code(), Some(1));
    assert_eq!(extalg(&["verify", "/nonexistent.job"]).status.code(), Some(1));
    assert_eq!(extalg(&["verify", &job("flagship.job"), "--char", "12"]).status.code(), Some(1));
}

#[test]
fn parse_error_names_position() {
    let out = extalg(&["predict", "--vars", "x,y", "--gen", "x^2 + z"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains('z'), "{err}");
}

#[test]
fn help_exits_zero() {
    let out = extalg(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verify"));
}

#[test]
fn inline_job_matches_job_file() {
    let a = extalg(&["verify", "--vars", "x,y", "--gen", "x*y", "--max-p", "6", "--max-deg", "8", "--format", "json"]);
    let b = extalg(&["verify", &job("monomial_xy.job"), "--format", "json"]);
    let (a, b): (Value, Value) = (
        serde_json::from_str(&stdout(&a)).unwrap(),
        serde_json::from_str(&stdout(&b)).unwrap(),
    );
    assert_eq!(a["ext_oracle"], b["ext_oracle"]);
    assert_eq!(a["diff"], b["diff"]);
}

#[test]
fn csv_has_header() {
    let out = extalg(&["verify", &job("flagship.job"), "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("p,s,predicted,oracle,state"));
    assert!(text.lines().skip(1).all(|l| l.split(',').count() == 5));
}

#[test]
fn json_is_deterministic() {
    for name in ["flagship.job", "cubic_power.job", "mixed_degrees.job"] {
        let a = extalg(&["verify", &job(name), "--format", "json"]);
        let b = extalg(&["verify", &job(name), "--format", "json", "--seedless"]);
        assert_eq!(a.stdout, b.stdout, "{name}");
    }
}

fn cells(v: &Value) -> BTreeSet<(u64, u64)> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|c| (c["p"].as_u64().unwrap(), c["s"].as_u64().unwrap()))
        .collect()
}

#[test]
fn every_entry_is_classified_once() {
    for name in ["flagship.job", "monomial_xy.job", "hypersurface_x4.job", "cubic_power.job"] {
        let out = extalg(&["verify", &job(name), "--format", "json"]);
        let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
        let agreed = cells(&v["diff"]["agreed"]);
        let mismatched = cells(&v["diff"]["mismatched"]);
        let frontier = cells(&v["diff"]["frontier_excluded"]);
        assert!(agreed.is_disjoint(&mismatched) && agreed.is_disjoint(&frontier) && mismatched.is_disjoint(&frontier));
        let all: BTreeSet<_> = cells(&v["ext_predicted"]).union(&cells(&v["ext_oracle"])).copied().collect();
        let classified: BTreeSet<_> = agreed.union(&mismatched).chain(&frontier).copied().collect();
        assert!(all.is_subset(&classified), "{name}: {:?}", all.difference(&classified).collect::<Vec<_>>());
    }
}

#[test]
fn schema_is_json_and_lists_required_keys() {
    let out = extalg(&["schema"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let required: Vec<&str> = v["required"].as_array().unwrap().iter().map(|k| k.as_str().unwrap()).collect();
    let report: Value =
        serde_json::from_str(&stdout(&extalg(&["verify", &job("flagship.job"), "--format", "json"]))).unwrap();
    for key in required {
        assert!(report.get(key).is_some(), "report lacks {key}");
    }
    for key in report.as_object().unwrap().keys() {
        assert!(v["properties"].get(key).is_some(), "schema lacks {key}");
    }
}

#[test]
fn guard_exits_four() {
    let out = extalg(&["verify", &job("flagship.job"), "--cost-cap", "10"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn dual_reports_exterior_dims() {
    let out = extalg(&["dual", "--vars", "a,b,c", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let dims: Vec<u64> = v["dual_dims"].as_array().unwrap().iter().map(|d| d.as_u64().unwrap()).collect();
    assert_eq!(&dims[..4], &[1, 3, 3, 1]);
    assert!(dims[4..].iter().all(|&d| d == 0));
}
