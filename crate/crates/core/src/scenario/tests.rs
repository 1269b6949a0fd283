use super::*;

fn run(text: &str) -> ScenarioReport {
    run_scenario(text, RunOptions::default())
}

#[test]
fn fixtures_pass() {
    for name in FIXTURE_NAMES {
        let report = run(&emit_fixture(name).unwrap());
        assert_eq!(report.exit_code, 0, "{name}:\n{report}");
    }
    assert!(emit_fixture("nope").is_err());
}

#[test]
fn failed_assertion_exits_one() {
    let report = run("system ;2\nideal s = empty\nmember s |1 |2 => yes\n");
    assert_eq!(report.exit_code, 1);
    assert!(!report.results[0].ok);
}

#[test]
fn input_errors_exit_two_with_position() {
    let report = run("system ;2\npoint a = 2|1\neval f a\n");
    assert_eq!(report.exit_code, 2);
    assert!(report.error.unwrap().starts_with("3:"), "unresolved name");
    let report = run("system ;2\npoint a = 2|1\npoint a = 1|2\n");
    assert_eq!(report.exit_code, 2);
    let report = run("system ;2\nfrobnicate\n");
    assert_eq!(
        report.error.as_deref(),
        Some("2:1: unknown command `frobnicate`")
    );
    let report = run("point a = 2|1\n");
    assert_eq!(report.exit_code, 2);
}

#[test]
fn system_option_is_the_default() {
    let opts = RunOptions {
        system: Some(crate::literal::parse_system(";2").unwrap()),
        ..RunOptions::default()
    };
    let report = run_scenario(
        "point a = 2|1\nlet f = boundary full\neval f a => a\n",
        opts,
    );
    assert_eq!(report.exit_code, 0, "{report}");
}

#[test]
fn commands_cover_lattice_and_classification() {
    let text = "\
system ;2
point a = 2|1
point t = 21|2
bf f = {[|1, |2] -> id}
bf g = {[|1, |2] -> const(|1)}
lattice meet f g => g
lattice join f g => f
plus g => g
classify join g => irreducible
classify meet f => irreducible
classify join ideal corner(a=a, t=t) => not-irreducible
suite lemma10
paper-examples section2
";
    let report = run_scenario(
        text,
        RunOptions {
            budget: Some(3),
            ..RunOptions::default()
        },
    );
    assert_eq!(report.exit_code, 0, "{report}");
}

#[test]
fn json_is_stable() {
    let text = emit_fixture("maximal-gap").unwrap();
    assert_eq!(run(&text).to_json(), run(&text).to_json());
}
