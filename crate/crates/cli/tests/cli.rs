use std::process::{Command, Output};

use serde_json::Value;

fn tl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = tl(&all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn det_matches_closed_form() {
    let o = tl(&["det", "--n", "3", "--method", "exact", "--convention", "loops"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("matches closed form: true"));
    let v = json(&["det", "--n", "3", "--method", "closed"]);
    assert_eq!(v["match"], true);
    assert_eq!(v["det"]["var"], "A");
    for method in ["exact", "orthogonal", "closed"] {
        let v = json(&["det", "--n", "2", "--method", method, "--convention", "paper"]);
        assert_eq!(v["match"], true, "{method}");
        assert_eq!(v["convention"], "loops_plus_one");
    }
    let d = json(&["det", "--n", "3", "--basis", "d"]);
    assert_eq!(d["match"], true);
}

#[test]
fn dyck_reports() {
    let o = tl(&["dyck", "--n", "4", "--k", "2", "--bijection-check"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("phi/psi round-trip: 1-1 over 20 pairs"));
    let v = json(&["dyck", "--n", "4", "--k", "2", "--count"]);
    assert_eq!(v["count"], "20");
    let v = json(&["dyck", "--n", "2", "--k", "1"]);
    assert_eq!(v, serde_json::json!(["UDUU", "UUDU", "UUUD"]));
    assert_eq!(tl(&["dyck", "--n", "2", "--k", "3"]).status.code(), Some(2));
}

#[test]
fn resource_guard() {
    let o = tl(&["jw", "--n", "9999"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--force"));
    assert_eq!(tl(&["gram", "--n", "6"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(tl(&["det", "--n", "x"]).status.code(), Some(2));
    assert_eq!(tl(&["nosuch"]).status.code(), Some(2));
    assert_eq!(tl(&["theta", "--a", "1", "--b", "2", "--c", "2"]).status.code(), Some(2));
    assert_eq!(tl(&["pair", "--n", "2", "--left", "1,2", "--right", "1,0,1"]).status.code(), Some(2));
    assert_eq!(tl(&["ortho", "--n", "2", "--a", "1,0"]).status.code(), Some(2));
}

#[test]
fn jw_output() {
    let o = tl(&["jw", "--n", "4", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("PASS").count(), 4);
    let v = json(&["jw", "--n", "2"]);
    assert_eq!(v["m"], 2);
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn theta_and_pairs() {
    let v = json(&["theta", "--a", "1", "--b", "2", "--c", "1"]);
    assert_eq!(v["theta"]["den"]["terms"], serde_json::json!([[0, "1"]]));
    let v = json(&["pair", "--n", "2", "--left", "1,2,1", "--right", "1,0,1"]);
    assert_eq!(v["match"], true);
    assert_eq!(v["value"]["num"]["terms"], serde_json::json!([]));
    let v = json(&["pair", "--n", "2", "--left", "1,0,1", "--right", "1,0,1", "--left-kind", "b"]);
    assert_eq!(v["left_kind"], "b");
    assert!(v["match"].is_null());
}

#[test]
fn gram_output_and_file() {
    let dir = std::env::temp_dir().join(format!("tl-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g.json");
    let o = tl(&["gram", "--n", "3", "--basis", "d", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["order"].as_array().unwrap().len(), 5);
    assert_eq!(v["matrix"].as_array().unwrap().len(), 5);
    std::fs::remove_dir_all(&dir).unwrap();

    let o = tl(&["gram", "--n", "2", "--format", "csv"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "row,col,entry");
    assert_eq!(lines.len(), 5);
}

#[test]
fn roots_report() {
    let v = json(&["roots", "--n", "2", "--rmax", "4"]);
    assert_eq!(v["n"], 2);
    let e = v["entries"].as_array().unwrap();
    assert_eq!(e[0]["status"], "zero");
    assert_eq!(e[1]["witness"], 2);
    assert_eq!(e[2]["status"], "nonzero");
    assert!(e[2]["witness"].is_null());
}

#[test]
fn ortho_check() {
    let v = json(&["ortho", "--n", "3", "--a", "0.8,0.3"]);
    assert_eq!(v["passed"], true);
    assert!(v["gram_deviation"].as_f64().unwrap() < 1e-9);
    let o = tl(&["ortho", "--n", "2", "--a", "1.2,0", "--tol", "0"]);
    assert!(matches!(o.status.code(), Some(0) | Some(1)));
}

#[test]
fn verify_small() {
    let o = tl(&["verify", "--all", "--nmax", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 11);
    let v = json(&["verify", "--criterion", "7", "--criterion", "1", "--nmax", "5"]);
    assert_eq!(v["results"].as_array().unwrap().len(), 2);
    assert_eq!(v["passed"], true);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["diagrams", "--n", "3", "--format", "json"],
        vec!["verify", "--all", "--nmax", "2", "--format", "json"],
        vec!["dbasis", "--n", "3", "--list"],
    ] {
        assert_eq!(tl(&args).stdout, tl(&args).stdout);
    }
}

#[test]
fn ascii_diagrams() {
    let o = tl(&["diagrams", "--n", "2"]);
    let s = stdout(&o);
    assert!(s.starts_with("2 diagrams in TL_2"));
    assert!(s.contains("()\n()"));
    assert!(s.contains("||\n||"));
}
