use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qeuclid")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

#[test]
fn normal_forms() {
    let o = run(&["nf", "x0 * L"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "q L x0");
    let o = run(&["nf", "x+ * x-"]);
    assert_eq!(stdout(&o), "(-1/(q s + s)) x0^2 + (s/(q + 1)) r^2");
    let o = run(&["nf", "s*x+*x- + x0^2 + s^-1*x-*x+ - r^2"]);
    assert_eq!(stdout(&o), "0");
}

#[test]
fn non_invertible_power_is_a_usage_error() {
    let o = run(&["nf", "(x+)^-1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn verify_json_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let report = |name: &str| {
        let path = dir.path().join(name);
        let o = run(&["verify", "all", "--seed", "7", "--json", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        for c in v["checks"].as_array_mut().unwrap() {
            c.as_object_mut().unwrap().remove("elapsed_ms");
        }
        v
    };
    let (a, b) = (report("a.json"), report("b.json"));
    assert_eq!(a, b);
    assert_eq!(a["schema"], 1);
    assert_eq!(a["seed"], 7);
    assert!(a["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn verify_list_names_every_check() {
    let o = run(&["verify", "--list"]);
    let text = stdout(&o);
    for id in ["rhat", "confluence", "curvature-qR", "star-omega", "volume"] {
        assert!(text.contains(id), "{id} missing from {text}");
    }
}

#[test]
fn rep_check_writes_residuals() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = run(&["rep", "check", "--q", "1.5", "--c", "1.2", "--out", out]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(dir.path().join("residuals.json").exists());
}

#[test]
fn limit_map_csv_header_and_spacing_failure() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = run(&["rep", "limit-map", "--q", "1.5", "--eta", "-", "--out", out]);
    assert_eq!(o.status.code(), Some(1));
    let csv = std::fs::read_to_string(dir.path().join("limit_map.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "n0,n,m,r,x0,y0,y_perp");
}

#[test]
fn c_out_of_range_is_rejected() {
    let o = run(&["rep", "check", "--q", "2", "--c", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("c∈[1,q)"));
}
