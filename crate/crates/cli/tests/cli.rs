use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_occupancy"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<serde_json::Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn indpoly_petersen() {
    let o = run(&["indpoly", "--graph", "gp:5,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), r#"{"coeffs":["1","10","30","30","5"]}"#);
}

#[test]
fn inline_graph6() {
    let o = run(&["indpoly", "--graph", "g6:A_"]);
    assert_eq!(stdout(&o).trim(), r#"{"coeffs":["1","2"]}"#);
    assert_eq!(run(&["indpoly", "--graph", "g6:A"]).status.code(), Some(2));
}

#[test]
fn cubic_bound_json() {
    let o = run(&["bound", "--model", "cubic", "--lambda", "1/1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(r#""alpha_bound":"571/2457""#));
    assert!(stdout(&o).contains(r#""Lambda":"8/189""#));
}

#[test]
fn float_lambda_rejected() {
    for args in [
        &["occupancy", "--graph", "k:4", "--lambda", "0.5"][..],
        &["bound", "--model", "tfree", "--lambda", "1e3"],
        &["lp", "--model", "tfree", "--lambda", "x"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["indpoly", "--graph", "no-such-thing"]).status.code(), Some(2));
    assert_eq!(
        run(&["gen", "--family", "gp", "--params", "4,2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["lp", "--model", "cubic", "--d", "4", "--lambda", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn lp_certify() {
    let o = run(&["lp", "--model", "cubic", "--lambda", "1", "--certify", "--dual"]);
    assert_eq!(o.status.code(), Some(0));
    let v = &json_lines(&o)[0];
    assert_eq!(v["solution"]["objective"], "1142/819");
    assert_eq!(v["closed_form_objective"], "1142/819");
    assert_eq!(v["certificate"]["certified"], true);
    assert_eq!(v["dual_problem"]["sense"], "max");
    let o = run(&["lp", "--model", "general", "--d", "3", "--lambda", "2", "--certify"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_lines(&o)[0]["solution"]["objective"], "2/9");
}

#[test]
fn integrate_cubic() {
    let o = run(&["integrate", "--model", "cubic", "--lambda-max", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let bound = json_lines(&o)[0]["bound"].as_f64().unwrap();
    assert!((bound - 1.538339).abs() < 1e-5);
    assert_eq!(
        run(&["integrate", "--model", "cubic", "--lambda-max", "1", "--tol", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn gen_and_scan_file() {
    // labeled output, not reduced up to isomorphism
    let corpus = run(&["gen", "--family", "cubic-tf", "--params", "8"]);
    assert_eq!(stdout(&corpus).lines().count(), 10);
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(&corpus.stdout).unwrap();
    let path = file.path().to_str().unwrap();

    let o = run(&["scan", "--input", path, "--lambdas", "1/4,1,4", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let records = json_lines(&o);
    assert_eq!(records.len(), 10 * 3 * 7);
    assert!(records.iter().all(|r| r["pass"] == true));

    let csv = run(&[
        "scan",
        "--input",
        path,
        "--lambdas",
        "1",
        "--checks",
        "main",
        "--format",
        "csv",
    ]);
    let text = stdout(&csv);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("graph_index,graph6,n,d,lambda,check,pass,lhs,rhs"));
    assert_eq!(lines.count(), 10);
}

#[test]
fn scan_output_independent_of_jobs() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(&run(&["gen", "--family", "cubic-tf", "--params", "10"]).stdout)
        .unwrap();
    let path = file.path().to_str().unwrap();
    let one = run(&["scan", "--input", path, "--lambdas", "1,4", "--jobs", "1"]);
    let four = run(&["scan", "--input", path, "--lambdas", "1,4", "--jobs", "4"]);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn scan_triangle_reports_graph() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    for spec in ["kdd:3", "k:4"] {
        let g = run(&["gen", "--family", spec]);
        file.write_all(&g.stdout).unwrap();
    }
    let path = file.path().to_str().unwrap();
    let o = run(&[
        "scan",
        "--input",
        path,
        "--lambdas",
        "1/4,1,4",
        "--checks",
        "cubic-bound,y3-bound",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("graph 1") && err.contains("triangle"), "{err}");
    assert_eq!(json_lines(&o).len(), 6);
}

#[test]
fn scan_clique_equality() {
    let o = run(&[
        "scan",
        "--input",
        "k:4",
        "--lambdas",
        "1",
        "--checks",
        "main,equality-structure",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let recs = json_lines(&o);
    assert_eq!(recs[0]["equality"], true);
}

#[test]
fn distributions() {
    let o = run(&["hdist", "--graph", "k:4", "--lambda", "1"]);
    let v = &json_lines(&o)[0];
    assert_eq!(v["neighborly_residual"], "0/1");
    assert_eq!(v["entries"].as_array().unwrap().len(), 2);
    let o = run(&["ydist", "--graph", "kdd:3", "--lambda", "1,2"]);
    let lines = json_lines(&o);
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["identity_residual"], "0/1");
    let o = run(&["occupancy", "--graph", "kdd:3", "--lambda", "1", "--vertices"]);
    let v = &json_lines(&o)[0];
    assert_eq!(v["alpha"], "4/15");
    assert_eq!(v["p"].as_array().unwrap().len(), 6);
}

#[test]
fn bound_sweep_csv() {
    let o = run(&[
        "bound",
        "--model",
        "tfree",
        "--d",
        "4",
        "--lambdas",
        "1/2,1,2",
        "--format",
        "csv",
    ]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().nth(2).unwrap().starts_with("tfree,4,1/1,1/5,"));
}
