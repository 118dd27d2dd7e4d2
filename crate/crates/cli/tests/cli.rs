use std::process::{Command, Output};

fn gfrag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gfrag")).args(args).env_remove("GFRAG_THREADS").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn classify_reports_the_regime() {
    let o = gfrag(&["classify", "--gamma", "1", "--theta", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("regime BlowupNoExtension"), "{s}");
    let inf: f64 = s.lines().find_map(|l| l.strip_prefix("inf_phi ")).unwrap().parse().unwrap();
    assert!((inf - 2.0 * (2f64.sqrt() - 1.0)).abs() < 1e-12);
}

#[test]
fn density_table_has_fixed_header_and_atom_columns() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("u.csv");
    let o = gfrag(&[
        "eval-density",
        "--gamma",
        "1",
        "--theta",
        "0.75",
        "--t",
        "0.5",
        "--x-grid",
        "log:0.01:10:200",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let mut rd = csv::Reader::from_path(&path).unwrap();
    assert_eq!(rd.headers().unwrap(), vec!["t", "x", "density", "atom_location", "atom_weight"]);
    let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 200);
    for r in &rows {
        let x: f64 = r[1].parse().unwrap();
        let d: f64 = r[2].parse().unwrap();
        assert_eq!(&r[3], "2.0000000000000000e0");
        assert_eq!(&r[4], "5.0000000000000000e-1");
        // no density above the atom
        assert!(d >= 0.0 && (x <= 2.0 || d == 0.0));
    }
}

#[test]
fn suite_reports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let p = dir.path().join(name);
        let o = gfrag(&[
            "suite",
            "--name",
            "mellin-core",
            "--gamma",
            "1",
            "--theta",
            "2",
            "--seed",
            "7",
            "-o",
            p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read(p).unwrap()
    };
    let a = run("a.json");
    assert_eq!(a, run("b.json"));
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["suite"], "mellin-core");
    assert_eq!(v["environment"]["seed"], 7);
    assert!(v["cases"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn failed_cases_exit_with_two() {
    // the ε = 1e-3 window is too wide for the 1e-4 continuity tolerance
    let o = gfrag(&["suite", "--name", "stitching", "--gamma", "1", "--theta", "0.75", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("suite,id,gamma,theta,inputs,measured,target,tol,check,pass,anchor,error\n"));
}

#[test]
fn validation_errors_name_the_field() {
    let cases: [(&[&str], &str); 5] = [
        (&["eval-density", "--gamma", "1", "--theta", "0.75", "--t", "0.5", "--x-grid", "log:0:10:5"], "x-grid"),
        (&["eval-density", "--gamma", "0", "--theta", "0.75", "--t", "0.5", "--x-grid", "1"], "gamma"),
        (&["eval-mellin", "--gamma", "1", "--theta", "2", "--kind", "omega", "--t", "1.5", "--s-grid", "1"], "t"),
        (&["suite", "--name", "bogus", "--gamma", "1", "--theta", "2"], "name"),
        (&["moments", "--gamma", "-1", "--theta", "2"], "gamma"),
    ];
    for (args, field) in cases {
        let o = gfrag(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert!(err.contains(&format!("error: {field}")), "{args:?}: {err}");
    }
    let o = gfrag(&["classify", "--gamma", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn thread_count_comes_from_the_environment() {
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_gfrag"))
            .args(["classify", "--gamma", "1", "--theta", "2"])
            .env("GFRAG_THREADS", v)
            .output()
            .unwrap()
    };
    assert_eq!(run("2").status.code(), Some(0));
    let bad = run("zero");
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8(bad.stderr).unwrap().contains("GFRAG_THREADS"));
}

#[test]
fn scan_sign_finds_small_x_oscillation() {
    let o = gfrag(&["scan-sign", "--gamma", "-1", "--theta", "2", "--t", "0.3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "Oscillates");
    assert!(!v["brackets"].as_array().unwrap().is_empty());
}
