use std::process::{Command, Output};

fn minvar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minvar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn bounds_row_for_s2_t5() {
    let o = minvar(&["bounds", "--s", "2", "--t", "5", "--char", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let row = stdout(&o)
        .lines()
        .nth(1)
        .unwrap()
        .split_whitespace()
        .map(String::from)
        .collect::<Vec<_>>();
    // s t char height lower upper exact cd
    assert_eq!(row, ["2", "5", "0", "6", "6", "7", "6", "6"]);
}

#[test]
fn bounds_table_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.json");
    let o = minvar(&["bounds", "--char", "32003", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 30);
    assert_eq!(v[0]["cd"], 2);
}

#[test]
fn verify_writes_a_valid_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let o = minvar(&[
        "verify",
        "--s",
        "2",
        "--t",
        "2",
        "--method",
        "s2",
        "--field",
        "fp:32003",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("verdict: proved"));
    let text = std::fs::read_to_string(path).unwrap();
    let cert = minvar::verify::VerificationCertificate::from_json(&text).unwrap();
    assert_eq!(cert.verdict, minvar::verify::Verdict::Proved);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    for key in ["spec", "set", "containment", "radical", "verdict", "ms"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["spec"]["field"], "fp:32003");
    assert_eq!(v["spec"]["order"], "degrevlex");
}

#[test]
fn certificates_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, jobs: &str| {
        let path = dir.path().join(name);
        minvar(&[
            "verify",
            "--s",
            "3",
            "--t",
            "1",
            "--method",
            "explicit",
            "--jobs",
            jobs,
            "--json",
            path.to_str().unwrap(),
        ]);
        let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        v["ms"] = 0.into();
        v
    };
    assert_eq!(run("a.json", "1"), run("b.json", "3"));
}

#[test]
fn refuted_set_exits_1_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eqs.txt");
    std::fs::write(&path, "# only one product\nx1*z1\n").unwrap();
    let o = minvar(&["verify", "--s", "2", "--t", "1", "--eqs", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness: -x2*x3 + x1*x4"));
}

#[test]
fn exhausted_budget_exits_3() {
    let o = minvar(&["verify", "--s", "2", "--t", "3", "--method", "s2", "--budget", "5"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("resources_exceeded"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "--s", "2", "--t", "1"][..],
        &["verify", "--s", "1", "--t", "1", "--method", "s2"],
        &["verify", "--s", "2", "--t", "1", "--method", "s9"],
        &["genideal", "--s", "2", "--t", "1", "--field", "fp:10"],
        &["construct", "--s", "3", "--t", "1", "--method", "s2"],
        &["bounds", "--s", "2"],
        &["nonsense"],
    ] {
        assert_eq!(minvar(args).status.code(), Some(2), "{args:?}");
    }
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "x1*z1\nx9 + \n").unwrap();
    let o = minvar(&["verify", "--s", "2", "--t", "1", "--eqs", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn decompose_s2_t2() {
    let o = minvar(&["decompose", "--s", "2", "--t", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("J_2 = (x1, x2, y0)"));
    assert!(out.contains("intersection equals J: true"));
}

#[test]
fn construct_output_feeds_verify() {
    let o = minvar(&["construct", "--s", "2", "--t", "3", "--method", "s2-homog"]);
    assert_eq!(o.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eqs.txt");
    std::fs::write(&path, stdout(&o)).unwrap();
    let o = minvar(&["verify", "--s", "2", "--t", "3", "--eqs", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn genideal_kinds() {
    let o = minvar(&["genideal", "--s", "2", "--t", "3", "--field", "q"]);
    assert_eq!(stdout(&o).lines().filter(|l| !l.starts_with('#')).count(), 10);
    let o = minvar(&["genideal", "--s", "3", "--t", "2", "--ident", "bar", "--kind", "lst"]);
    assert_eq!(o.status.code(), Some(0));
    let o = minvar(&["genideal", "--s", "3", "--t", "0", "--kind", "lst"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let o = minvar(&["selftest"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
