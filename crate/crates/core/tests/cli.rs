use std::process::{Command, Output};

use almost_hilbert::suites::{check_names, registry, run_suite, SuiteParams};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_almost-hilbert"));
    c.env_remove("ALMOST_HILBERT_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn passing_suite_exits_zero() {
    let out = run(&["--suite", "embedding"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["suite"], "embedding");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] != "fail"));
}

#[test]
fn failing_report_is_still_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = run(&["--suite", "ks2", "--tol", "0", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let failing: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(failing.contains(&"weak_strong"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL weak_strong"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["--suite", "embedding", "--p", "1"]).status.code(), Some(2));
    assert_eq!(run(&["--suite", "integral", "--grid", "100"]).status.code(), Some(2));
    assert_eq!(run(&["--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["ks2", "dump-cubes", "--n", "5"]).status.code(), Some(2));
}

#[test]
fn unwritable_output_exits_three() {
    let out = run(&["--suite", "embedding", "--out", "/nonexistent/dir/r.json"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn same_seed_same_bytes() {
    let a = run(&["--suite", "schatten", "--seed", "42"]);
    let b = run(&["--suite", "schatten", "--seed", "42"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["--suite", "schatten", "--seed", "43"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn seed_falls_back_to_environment() {
    let from_env = bin().args(["--suite", "adjoint"]).env("ALMOST_HILBERT_SEED", "9").output().unwrap();
    let from_flag = run(&["--suite", "adjoint", "--seed", "9"]);
    assert_eq!(json(&from_env)["seed"], 9);
    assert_eq!(from_env.stdout, from_flag.stdout);
}

#[test]
fn binary_matches_library() {
    let out = run(&["--suite", "embedding", "--seed", "5"]);
    let lib = run_suite("embedding", &SuiteParams::with_seed(5)).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), lib.to_json());
}

#[test]
fn list_matches_registry() {
    let out = run(&["--list"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let listed: Vec<(String, String)> = text
        .lines()
        .map(|l| {
            let (n, s) = l.split_once('\t').unwrap();
            (n.to_owned(), s.to_owned())
        })
        .collect();
    let reg = registry();
    assert_eq!(listed.len(), reg.len());
    for (n, s) in &listed {
        assert_eq!(reg[n.as_str()], s.as_str());
    }
    let names: Vec<&str> = listed.iter().map(|(n, _)| n.as_str()).collect();
    assert_eq!(names, check_names("all").unwrap());

    let ks2 = String::from_utf8(run(&["--list", "--suite", "ks2"]).stdout).unwrap();
    assert!(ks2.lines().all(|l| l.ends_with("\tks2")));
}

#[test]
fn text_and_csv_formats() {
    let text = String::from_utf8(run(&["--suite", "schatten", "--format", "text"]).stdout).unwrap();
    assert!(text.starts_with("suite schatten (seed 0)"));
    assert!(text.contains("worst in schatten:"));
    let csv = String::from_utf8(run(&["--suite", "schatten", "--format", "csv"]).stdout).unwrap();
    let n = check_names("schatten").unwrap().len();
    assert_eq!(csv.lines().count(), n + 1);
}

#[test]
fn dump_cubes_csv() {
    let out = run(&["ks2", "dump-cubes", "--n", "2", "--count", "12"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "k,l,i,center0,center1,side");
    assert_eq!(rows.len(), 13);
    assert!(rows[1].starts_with("1,1,1,"));
}

#[test]
fn integral_demo_csv() {
    for op in ["hilbert", "hilbert-pv"] {
        let out = run(&["integral", "demo", "--op", op, "--m", "64"]);
        assert_eq!(out.status.code(), Some(0));
        let text = String::from_utf8(out.stdout).unwrap();
        let rows: Vec<&str> = text.lines().collect();
        assert_eq!(rows[0], "t,f_re,f_im,hf_re,hf_im");
        assert_eq!(rows.len(), 65);
        let cols: Vec<f64> = rows[16].split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(cols.len(), 5);
        assert_eq!(cols[1], 1.0);
    }
    assert_eq!(run(&["integral", "demo", "--m", "63"]).status.code(), Some(2));
}
