use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sasaki-cone"))
}

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(format!("{name}.json"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_scenario(name: &str, out: &Path) -> Value {
    let o = run(&["run", "--scenario", scenario(name).to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap()
}

fn approx(v: &Value) -> f64 {
    v["approx"].as_f64().unwrap()
}

#[test]
fn worked_example_report() {
    let dir = tempfile::tempdir().unwrap();
    let r = run_scenario("prob612", dir.path());
    let set = r["tasks"]["cone"]["extremal_set"].as_array().unwrap();
    assert_eq!(set.len(), 2);
    let hat = approx(&set[1]["lower"]);
    assert!((hat - 0.410752).abs() < 5e-6, "{hat}");
    assert_eq!(r["tasks"]["affine"][0]["A2"]["exact"], "-426/59");
    let csv = std::fs::read_to_string(dir.path().join("cone.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("c,extremal,obstruction_value,HS"));
    assert_eq!(csv.lines().count(), 200);
    let svg = std::fs::read_to_string(dir.path().join("cone.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
}

#[test]
fn nonexistence_has_empty_extremal_set() {
    let dir = tempfile::tempdir().unwrap();
    let r = run_scenario("nonexistence", dir.path());
    assert_eq!(r["tasks"]["cone"]["extremal_set"], Value::Array(vec![]));
}

#[test]
fn reports_are_byte_identical() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    run_scenario("appendix_p8_x1_7", a.path());
    let o = bin()
        .env("SASAKI_CONE_THREADS", "1")
        .args(["run", "--scenario", scenario("appendix_p8_x1_7").to_str().unwrap(), "--out", b.path().to_str().unwrap()])
        .output()
        .unwrap();
    assert!(o.status.success());
    let read = |d: &Path| std::fs::read(d.join("report.json")).unwrap();
    assert_eq!(read(a.path()), read(b.path()));
}

#[test]
fn bundled_scenarios_validate() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios");
    let mut n = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let o = run(&["validate", "--scenario", path.to_str().unwrap()]);
        assert!(o.status.success(), "{}: {}", path.display(), String::from_utf8_lossy(&o.stderr));
        n += 1;
    }
    assert!(n >= 13);
}

#[test]
fn malformed_rational_exits_2_with_field_path() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(scenario("prob612")).unwrap().replacen("\"4/5\"", "\"4/0\"", 1);
    let path = dir.path().join("bad.json");
    std::fs::write(&path, text).unwrap();
    let o = run(&["run", "--scenario", path.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("setup.factors[0].x"));
}

#[test]
fn degree_ceiling_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "run",
        "--scenario",
        scenario("yamazaki_prob612").to_str().unwrap(),
        "--degree-ceiling",
        "4",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn unwritable_output_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "x").unwrap();
    let out = blocker.join("sub");
    let o = run(&["run", "--scenario", scenario("v1_blowdown_0").to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    let missing = dir.path().join("missing.json");
    let o = run(&["run", "--scenario", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn compare_against_reference() {
    let dir = tempfile::tempdir().unwrap();
    run_scenario("v1_blowdown_0", dir.path());
    let report = dir.path().join("report.json");
    let o = run(&["compare", report.to_str().unwrap(), report.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());

    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    v["tasks"]["futaki"][0]["value"]["rational"] = Value::String("-22/8".into());
    let perturbed = dir.path().join("perturbed.json");
    std::fs::write(&perturbed, serde_json::to_string(&v).unwrap()).unwrap();
    let o = run(&["compare", perturbed.to_str().unwrap(), report.to_str().unwrap()]);
    assert!(!o.status.success());
    let diff = String::from_utf8_lossy(&o.stdout);
    assert_eq!(diff.lines().count(), 1);
    assert!(diff.contains("tasks.futaki[0].value.rational"), "{diff}");
}

#[test]
fn blowdown_obstruction_value() {
    let dir = tempfile::tempdir().unwrap();
    let r = run_scenario("v1_blowdown_0", dir.path());
    assert_eq!(r["tasks"]["futaki"][0]["value"]["rational"], "-21/8");
}

#[test]
fn weighted_family_scan_locates_the_discriminant_root() {
    let dir = tempfile::tempdir().unwrap();
    let r = run_scenario("appendix_p8_x1_2", dir.path());
    let roots = r["tasks"]["discriminant-scan"]["discriminant_roots"].as_array().unwrap();
    assert_eq!(roots.len(), 1);
    assert!((approx(&roots[0]) - 0.429).abs() < 5e-4);
}

#[test]
fn brieskorn_lists() {
    let o = run(&["brieskorn"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let list = v.as_array().unwrap();
    assert_eq!(list.len(), 10);
    assert!(list.iter().any(|e| e["exponents"] == serde_json::json!([6, 6, 6, 3, 2])));
}
