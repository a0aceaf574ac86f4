use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::OnceLock;

use serde_json::Value;

fn swlab(args: &[&str]) -> Output {
    swlab_env(args, &[])
}

fn swlab_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_swlab"));
    cmd.args(args);
    for key in ["SWLAB_EXACT_M", "SWLAB_FLOAT_M", "SWLAB_TOL"] {
        cmd.env_remove(key);
    }
    cmd.envs(env.iter().copied());
    cmd.output().expect("swlab runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("UTF-8 output")
}

fn scratch() -> &'static Path {
    static DIR: OnceLock<PathBuf> = OnceLock::new();
    DIR.get_or_init(|| {
        let dir = std::env::temp_dir().join(format!("swlab-cli-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        dir
    })
}

/// Writes a named fixture once and returns its path.
fn fixture(name: &str) -> String {
    let path = scratch().join(format!("{name}.json"));
    if !path.exists() {
        let out = swlab(&["make-fixture", name]);
        assert_eq!(out.status.code(), Some(0));
        let tmp = scratch().join(format!("{name}.{:?}.tmp", std::thread::current().id()));
        fs::write(&tmp, &out.stdout).unwrap();
        fs::rename(&tmp, &path).unwrap();
    }
    path.to_str().unwrap().to_string()
}

fn write_scratch(name: &str, text: &str) -> String {
    let path = scratch().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn schema_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(format!("{name}.schema.json"))
}

fn assert_valid(schema: &str, text: &str) {
    let schema_json: Value = serde_json::from_str(&fs::read_to_string(schema_path(schema)).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema_json).expect("schema compiles");
    let instance: Value = serde_json::from_str(text).unwrap_or_else(|e| panic!("{schema}: not JSON: {e}\n{text}"));
    let errors: Vec<String> = validator.iter_errors(&instance).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "{schema}: {errors:#?}");
}

fn run_ok(args: &[&str]) -> String {
    let out = swlab(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    stdout(&out)
}

fn json_cases() -> Vec<(&'static str, Vec<String>)> {
    let n3 = fixture("n3-plus");
    let glued = fixture("glued-2-3");
    let classical = fixture("classical-3");
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    vec![
        ("fixture-list", s(&["make-fixture", "--list"])),
        ("verify", s(&["verify", "-i", &n3])),
        ("verify", s(&["--float", "verify", "-i", &glued])),
        ("poincare", s(&["poincare", "-i", &n3])),
        ("poincare", s(&["poincare", "-i", &glued])),
        ("poincare", s(&["--float", "poincare", "-i", &classical])),
        ("poincare", s(&["poincare", "-i", &fixture("super-1")])),
        ("det", s(&["det", "-i", &n3])),
        ("dual", s(&["dual", "-i", &n3])),
        ("dual", s(&["dual", "-i", &fixture("classical-2")])),
        ("schur-dim", s(&["schur-dim", "-i", &n3, "--lambda", "2,1"])),
        ("schur-dim", s(&["--float", "schur-dim", "-i", &n3, "--lambda", "3"])),
        ("fusion", s(&["fusion", "-i", &n3, "--lhs", "2", "--rhs", "2"])),
        ("fusion", s(&["fusion", "-i", &glued, "--lhs", "1", "--rhs", "1"])),
        ("casimir", s(&["casimir", "-i", &n3, "--lambda", "3,1"])),
        ("casimir", s(&["--float", "casimir", "-i", &n3, "--lambda", "2"])),
        ("count", s(&["spectrum", "--n", "3", "-L", "5", "--count", "30"])),
        ("weyl", s(&["weyl", "--n", "4", "-L", "15"])),
    ]
}

#[test]
fn every_json_output_matches_its_schema() {
    for name in ["n3-plus", "n3-minus", "glued-2-3", "super-0", "super-1", "classical-2", "classical-3"] {
        assert_valid("fixture", &fs::read_to_string(fixture(name)).unwrap());
    }
    for (schema, args) in json_cases() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_valid(schema, &run_ok(&args));
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let mut cases = json_cases();
    cases.push(("csv", ["spectrum", "--n", "3", "-L", "12"].iter().map(|x| x.to_string()).collect()));
    let n3 = fixture("n3-plus");
    cases.push(("csv", ["spectrum", "-i", n3.as_str(), "-L", "4"].iter().map(|x| x.to_string()).collect()));
    for (_, args) in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(swlab(&args).stdout, swlab(&args).stdout, "{args:?}");
    }
    assert_eq!(swlab(&["make-fixture", "glued-2-3"]).stdout, swlab(&["make-fixture", "glued-2-3"]).stdout);
}

#[test]
fn verify_fixture_reports_all_true() {
    for name in ["n3-plus", "n3-minus", "glued-2-3", "super-0", "super-1", "classical-3"] {
        let v: Value = serde_json::from_str(&run_ok(&["verify", "-i", &fixture(name)])).unwrap();
        assert_eq!(v["all_hold"], true, "{name}");
    }
}

#[test]
fn schur_dim_example() {
    let v: Value = serde_json::from_str(&run_ok(&["schur-dim", "-i", &fixture("n3-plus"), "--lambda", "2"])).unwrap();
    assert_eq!(v["dim_numeric"], 8);
    assert_eq!(v["dim_schur"], 8);
    assert_eq!(v["agree"], true);
}

#[test]
fn weyl_csv_example() {
    let csv = scratch().join("weyl-n3.csv");
    let report = run_ok(&["weyl", "--n", "3", "-L", "40", "--csv", csv.to_str().unwrap()]);
    let v: Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v["r_at_stable"], true);
    assert_eq!(v["r_below_stable"], true);
    let text = fs::read_to_string(&csv).unwrap();
    assert!(!text.contains('\r'));
    assert!(text.ends_with('\n'));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "l,eigenvalue,multiplicity,N,r_at,r_below");
    assert_eq!(lines.len(), 42);
    let last: Vec<&str> = lines[41].split(',').collect();
    assert_eq!(last[0], "40");
    let ratio = last[4].parse::<f64>().unwrap() / last[5].parse::<f64>().unwrap();
    let alpha2_squared = (7.0 + 3.0 * 5f64.sqrt()) / 2.0;
    assert!((ratio / alpha2_squared - 1.0).abs() < 0.01, "{ratio}");
    assert!((ratio - 6.854).abs() < 0.01, "{ratio}");
}

#[test]
fn spectrum_csv_rows() {
    let text = run_ok(&["spectrum", "--n", "3", "-L", "3"]);
    assert!(!text.contains('\r'));
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').take(4).collect()).collect();
    assert_eq!(rows, vec![vec!["0", "0", "1", "1"], vec!["1", "4", "8", "9"], vec!["2", "12", "55", "64"], vec!["3", "24", "377", "441"]]);
    let out = run_ok(&["spectrum", "--n", "3", "-L", "3", "--count", "12"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["N"], "64");
}

#[test]
fn output_flag_writes_the_same_bytes() {
    let n3 = fixture("n3-plus");
    let path = scratch().join("det-out.json");
    run_ok(&["det", "-i", &n3, "-o", path.to_str().unwrap()]);
    assert_eq!(fs::read(&path).unwrap(), swlab(&["det", "-i", &n3]).stdout);
}

#[test]
fn broken_symmetry_exits_one() {
    let text = fs::read_to_string(fixture("n3-plus")).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["matrix"][0][0] = serde_json::json!([2, 0, 1]);
    let broken = write_scratch("broken.json", &v.to_string());
    let out = swlab(&["verify", "-i", &broken]);
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["all_hold"], false);
    assert_eq!(report["report"]["involutive"], false);
    assert_valid("verify", &stdout(&out));
}

#[test]
fn usage_errors_exit_two() {
    let n3 = fixture("n3-plus");
    let malformed = write_scratch("malformed.json", "{\"n\": 3, \"matrix\": [[1, 2]");
    let bad_shape = write_scratch("shape.json", "{\"n\": 2, \"matrix\": [[[1,0,1]]]}");
    let mismatch = write_scratch("mismatch.json", "{\"n\": 1, \"field\": 5, \"matrix\": [[[0,1,1,2]]]}");
    let cases: Vec<Vec<&str>> = vec![
        vec![],
        vec!["frobnicate"],
        vec!["make-fixture", "no-such-fixture"],
        vec!["verify", "-i", "/nonexistent/n3.json"],
        vec!["verify", "-i", &malformed],
        vec!["verify", "-i", &bad_shape],
        vec!["verify", "-i", &mismatch],
        vec!["schur-dim", "-i", &n3, "--lambda", "2,3"],
        vec!["schur-dim", "-i", &n3, "--lambda", "x"],
        vec!["--tol", "1", "verify", "-i", &n3],
        vec!["--tol", "0", "verify", "-i", &n3],
        vec!["--exact-m", "0", "verify", "-i", &n3],
        vec!["--exact-m", "3", "casimir", "-i", &n3, "--lambda", "3,1"],
        vec!["spectrum", "-L", "3"],
        vec!["spectrum", "--n", "2", "-L", "3"],
    ];
    for args in cases {
        let out = swlab(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn environment_overrides() {
    let n3 = fixture("n3-plus");
    let args = ["casimir", "-i", n3.as_str(), "--lambda", "3,1"];
    assert_eq!(swlab_env(&args, &[("SWLAB_EXACT_M", "3")]).status.code(), Some(2));
    assert_eq!(swlab_env(&args, &[("SWLAB_EXACT_M", "4")]).status.code(), Some(0));
    assert_eq!(swlab_env(&["verify", "-i", &n3], &[("SWLAB_TOL", "0.5")]).status.code(), Some(2));
    assert_eq!(swlab_env(&["verify", "-i", &n3], &[("SWLAB_TOL", "1e-9")]).status.code(), Some(0));
    let float = ["--float", "casimir", "-i", n3.as_str(), "--lambda", "3,1"];
    assert_eq!(swlab_env(&float, &[("SWLAB_FLOAT_M", "3")]).status.code(), Some(2));
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(swlab(&["--help"]).status.code(), Some(0));
    assert_eq!(swlab(&["--version"]).status.code(), Some(0));
}
