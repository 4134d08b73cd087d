use std::path::PathBuf;
use std::process::{Command, Output};

fn ellgen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ellgen"))
        .args(args)
        .env("ELLGEN_THREADS", "2")
        .output()
        .expect("run ellgen")
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn c2_table_has_unit_y_term() {
    let o = ellgen(&["ell", "c2", "--qmax", "2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "p\tq\tt1\tt2\ty\tcoefficient");
    assert!(out.lines().any(|l| l == "0\t0\t0\t0\t1\t1"), "{out}");
}

#[test]
fn fixed_point_counts() {
    for (n, count) in [(2, "2"), (3, "3"), (4, "5")] {
        let o = ellgen(&["ell", "hilb", &n.to_string(), "--y", "1"]);
        assert!(o.status.success());
        assert_eq!(stdout(&o).trim(), count);
    }
    let o = ellgen(&["ell", "hilb", "2", "--y", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn series_json_is_written_and_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = ellgen(&["ell", "hilb", "2", "--tspan", "2", "--out", p.to_str().unwrap()]);
        assert!(o.status.success());
    }
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert!(!v["records"].as_array().unwrap().is_empty());
}

#[test]
fn large_hilbert_scheme_but_capped_orbifold() {
    let o = ellgen(&["ell", "hilb", "7", "--qmax", "0", "--tspan", "1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = ellgen(&["ell", "orb-sym", "7"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn dmvv_passes_and_detects_faults() {
    let o = ellgen(&["verify", "dmvv", "--pmax", "2", "--qmax", "2"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["mismatch_count"], 0);
    assert!(v["compared"].as_u64().unwrap() > 0);
    assert!(v.get("runtime_seconds").is_none());

    let o = ellgen(&["verify", "dmvv", "--pmax", "1", "--qmax", "1", "--fault"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(json(&o)["mismatch_count"].as_u64().unwrap() > 0);
}

#[test]
fn equal_direction_entries_rejected() {
    let o = ellgen(&["verify", "dmvv", "--direction", "2", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("d1 != d2"));
}

#[test]
fn reports_are_byte_identical() {
    let args = ["verify", "orb-hilb", "2", "--seed", "7"];
    let (a, b) = (ellgen(&args), ellgen(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 7);
}

#[test]
fn mckay_and_normalization() {
    let o = ellgen(&["verify", "mckay-ak", "3"]);
    assert!(o.status.success());
    let o = ellgen(&["verify", "mckay-ak", "2", "--normalization", "bare"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn theta_identity_and_timing() {
    let o = ellgen(&["verify", "theta-id", "--dim", "2", "--samples", "20", "--timing"]);
    assert!(o.status.success());
    let v = json(&o);
    assert!(v["details"]["max_residual"].as_f64().unwrap() <= 1e-9);
    assert!(v["runtime_seconds"].as_f64().is_some());
}

#[test]
fn toric_suite_runs() {
    let o = ellgen(&["verify", "toric", "--functions", "6", "--pairs", "6"]);
    assert!(o.status.success());
}

#[test]
fn fan_actions() {
    let o = ellgen(&["fan", "push", &data("blowup2.json")]);
    assert!(o.status.success());
    assert_eq!(json(&o)["pushforward"], "1");

    let o = ellgen(&["fan", "subdivide", "orthant3", "--ray", "1,1,1"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["cones"].as_array().unwrap().len(), 3);

    let o = ellgen(&["fan", "check", &data("blowup2.json")]);
    assert!(o.status.success());
    for bad in ["overlap2.json", "mismatch2.json"] {
        let o = ellgen(&["fan", "check", &data(bad)]);
        assert_eq!(o.status.code(), Some(2));
        assert!(String::from_utf8_lossy(&o.stderr).contains("invariant violated"));
    }
    let o = ellgen(&["fan", "check", &data("broken.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 6 column 5"));
}

#[test]
fn bad_thread_count_is_a_config_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_ellgen"))
        .args(["ell", "c2"])
        .env("ELLGEN_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
