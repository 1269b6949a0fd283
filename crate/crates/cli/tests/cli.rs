use std::fs;
use std::process::{Command, Output};

fn limitideal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_limitideal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn every_fixture_runs_clean() {
    for name in [
        "trivial",
        "full",
        "maximal-gap",
        "maximal-nogap",
        "strip-pair",
        "prime-variant",
    ] {
        let out = limitideal(&["fixture", name, "--run"]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", stdout(&out));
    }
    let text = stdout(&limitideal(&["fixture", "maximal-gap"]));
    assert!(text.starts_with("# P without (a, a)"));
    assert_eq!(limitideal(&["fixture", "nope"]).status.code(), Some(2));
}

#[test]
fn paper_examples_by_section() {
    let out = limitideal(&["paper-examples", "section3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert_eq!(stdout(&out).matches("== ").count(), 5);
    assert_eq!(
        limitideal(&["paper-examples", "section9"]).status.code(),
        Some(2)
    );
}

#[test]
fn scenario_files_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.scn");
    fs::write(
        &good,
        "system ;2\npoint a = 1|12\npoint b = 2|12\n\
         let f = boundary strip(a=a, b=b)\nboundary strip_plus(a=a, b=b) => f\n",
    )
    .unwrap();
    let json = dir.path().join("out.json");
    let out = limitideal(&[
        "run",
        good.to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report["exit_code"], 0);
    assert_eq!(report["results"][0]["ok"], true);

    let bad = dir.path().join("bad.scn");
    fs::write(&bad, "system ;2\nmember empty |1 |2 => yes\n").unwrap();
    assert_eq!(
        limitideal(&["run", bad.to_str().unwrap()]).status.code(),
        Some(1)
    );

    fs::write(&bad, "system ;2\npoint a = 3|1\n").unwrap();
    let out = limitideal(&["run", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("error: 2:"), "{}", stdout(&out));

    let missing = dir.path().join("missing.scn");
    assert_eq!(
        limitideal(&["run", missing.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn system_flag_supplies_the_system() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("s.scn");
    fs::write(&file, "let f = boundary full\neval f 12|13 => 12|13\n").unwrap();
    let out = limitideal(&["run", file.to_str().unwrap(), "--system", ";2.3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert_eq!(
        limitideal(&["suite", "prop7", "--system", "x"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn suite_json_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for path in [&a, &b] {
        let out = limitideal(&[
            "suite",
            "lemma10",
            "--seed",
            "7",
            "--budget",
            "5",
            "--json",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(limitideal(&["suite", "nope"]).status.code(), Some(2));
}

#[test]
fn all_suites_pass_with_seed_seven() {
    let out = limitideal(&["suite", "all", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert_eq!(
        stdout(&out)
            .lines()
            .filter(|l| l.contains(": pass on"))
            .count(),
        16
    );
}

#[test]
fn classify_reports_the_corner_split() {
    let out = limitideal(&["classify", "join", "--ideal", "corner(a=2|1, t=21|2)"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("not-irreducible = corner(a=2|1, t=22|1)"));
    let out = limitideal(&["classify", "meet", "{[|1, |2] -> id}"]);
    assert!(stdout(&out).contains("-> irreducible"));
}
