use std::process::{Command, Output};

fn skolab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skolab")).args(args).output().expect("spawn skolab")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn dim_prints_formula_value() {
    let o = skolab(&["dim"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "999\n");
}

#[test]
fn dim_brute_force_agrees() {
    let o = skolab(&["dim", "--lambda", "3", "--brute"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "996\nbrute force: 996\n");
}

#[test]
fn bad_modulus_is_a_usage_error() {
    let o = skolab(&["verify", "--p", "4"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("p must be an odd prime > 3"), "{err}");
}

#[test]
fn unknown_suite_and_lambda_rejected() {
    assert_eq!(skolab(&["verify", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(skolab(&["verify", "--lambda", "5"]).status.code(), Some(2));
    assert_eq!(skolab(&["verify", "--n", "2", "--t", "1,1"]).status.code(), Some(2));
}

#[test]
fn passing_suites_exit_zero_and_failing_exit_one() {
    assert_eq!(skolab(&["verify", "--suite", "spanning,formulas"]).status.code(), Some(0));
    // The literal identity statements do not all hold at n = 3.
    assert_eq!(skolab(&["verify", "--suite", "bracket-identities"]).status.code(), Some(1));
}

#[test]
fn json_report_is_deterministic() {
    let args = ["verify", "--suite", "algebra-axioms,spanning,derived-series", "--seed", "11"];
    let a = skolab(&args);
    let b = skolab(&args);
    assert_eq!(a.status.code(), Some(0));
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["params"]["p"], 5);
    assert_eq!(v["suites"].as_array().unwrap().len(), 3);
}

#[test]
fn csv_report_has_header() {
    let o = skolab(&["verify", "--suite", "spanning", "--format", "csv"]);
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("suite,lambda,claim,anchor,expected,computed,pass"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn spanning_rank_matches_nullity_for_all_lambda() {
    let o = skolab(&["spanning", "--format", "csv", "--lambda", "all"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 5);
    for r in rows {
        assert_eq!(r[6], r[7]);
    }
}

#[test]
fn compare_writes_csv_file() {
    let path = std::env::temp_dir().join(format!("skolab-compare-{}.csv", std::process::id()));
    let o = skolab(&["compare", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(text.lines().next(), Some("family,p,m,n,t,lambda,dim"));
    assert!(text.contains("W,5,3,3,\"1,1,1\",,6000"));
    assert!(text.lines().any(|l| l.starts_with("SKO,") && l.ends_with(",999")));
}
