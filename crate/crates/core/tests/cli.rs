use std::process::{Command, Output};

fn atomlog(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_atomlog"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn table_matches_golden() {
    let o = atomlog(&["table", "md"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), include_str!("../golden/table_md.txt"));
}

#[test]
fn valid_reports_counterexample() {
    let o = atomlog(&["valid", "--matrix", "md", "(p & q) -> p"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("p=2, q=1"));
    let o = atomlog(&["valid", "--matrix", "m2", "(p & q) -> p"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn json_output() {
    let o = atomlog(&["--json", "entail", "--atomic", "p", "p | q"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.is_object(), "{v}");
    let o = atomlog(&["--json", "valid", "--matrix", "md", "p -> ("]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["error"], "parse");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(atomlog(&["valid"]).status.code(), Some(2));
    assert_eq!(atomlog(&["entail", "p", "q"]).status.code(), Some(2));
    assert_eq!(
        atomlog(&["bridge", "x1 = x1", "--via", "psi13"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(atomlog(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn bridge_file_checks() {
    let dir = std::env::temp_dir().join(format!("atomlog-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let alpha = "(all x1 (all x2 (x1 < x2 -> (x1 = x1 -> x1 < x2))))";
    for via in ["psi12", "psi14"] {
        let path = dir.join(format!("{via}.jsonl"));
        let path = path.to_str().unwrap();
        let o = atomlog(&["bridge", alpha, "--via", via, "-o", path]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        let o = atomlog(&[
            "checkproof",
            path,
            "--oracles",
            "xp,ldr",
            "--rules",
            "r0p-plus",
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    }
    // an axiom already in L_D^r needs no bridge
    let path = dir.join("none.jsonl");
    let o = atomlog(&[
        "bridge",
        "(all x1 x1 = x1 -> x1 = x1)",
        "--via",
        "psi12",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn report_is_deterministic() {
    let a = atomlog(&["--json", "report", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    let b = atomlog(&["--json", "report", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v["claims"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["status"] == "pass"));
}
