use clause_cycles::cli::{
    demo_suite, parse_element, run, run_demo, DemoOptions, EXIT_ERROR, EXIT_HOLDS, EXIT_UNKNOWN, EXIT_VIOLATED,
    MANIFEST, SCHEMA,
};
use clause_cycles::cycles::Status;
use clause_cycles::entailment::Budget;
use clause_cycles::models::ModelElement;
use serde_json::Value;

fn csc(args: &[&str]) -> (i32, String) {
    run(std::iter::once("csc").chain(args.iter().copied()))
}

#[test]
fn exit_codes_follow_the_status() {
    assert_eq!(csc(&["is-cycle", "--with", "B", "[eta = s(eta)]"]).0, EXIT_HOLDS);
    let (code, out) = csc(&["model-check", "forall x. forall y. x + y = y + x", "--structure", "M:2", "--bound", "5"]);
    assert_eq!(code, EXIT_VIOLATED, "{out}");
    assert!(out.contains("x = 0^[1], y = 0^[2]"), "{out}");
    assert_eq!(csc(&["--budget", "tiny", "is-cycle", "--with", "B", "[eta = s(eta)]"]).0, EXIT_UNKNOWN);
    assert_eq!(csc(&["is-cycle", "[eta = "]).0, EXIT_ERROR);
    assert_eq!(csc(&["no-such-command"]).0, EXIT_ERROR);
    assert_eq!(csc(&["--budget", "huge", "is-cycle", "[eta = 0]"]).0, EXIT_ERROR);
    assert_eq!(csc(&["--help"]).0, EXIT_HOLDS);
}

#[test]
fn json_reports_carry_the_schema() {
    let (code, out) = csc(&["--json", "components", "(exists y. x = y + y) | x = #3"]);
    assert_eq!(code, EXIT_HOLDS);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], SCHEMA);
    assert_eq!(v["command"], "components");
    assert_eq!(v["result"].as_array().unwrap().len(), 2);

    let (code, out) = csc(&["--json", "parse", "[eta = "]);
    assert_eq!(code, EXIT_ERROR);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], SCHEMA);
    assert!(v["error"].as_str().unwrap().contains("syntax error"));
}

#[test]
fn inputs_from_files() {
    let dir = std::env::temp_dir().join(format!("csc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("d.clauses");
    std::fs::write(&path, "% offset two\n[eta != 0]\n[eta != s(0)]\n[eta = s(eta)]\n").unwrap();
    let d = path.to_str().unwrap();
    let (code, out) = csc(&["refutes", "--with", "B", d, "[eta = s(eta)]", "--offset", "2"]);
    assert_eq!(code, EXIT_HOLDS, "{out}");
    let (code, out) = csc(&["reduce-offset", "--with", "B", d, "[eta = s(eta)]", "--offset", "2"]);
    assert_eq!(code, EXIT_HOLDS);
    assert!(out.contains("[eta = s(eta), s(eta) != #1]"), "{out}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn normalize_reports_measures() {
    let (code, out) = csc(&["--json", "normalize", "exists y. x = y + y & y != #1", "--trace"]);
    assert_eq!(code, EXIT_HOLDS);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["shift"], 1);
    assert_eq!(v["result"]["measures_decrease"], true);
    assert!(!v["result"]["log"].as_array().unwrap().is_empty());
}

#[test]
fn descent_and_inductivity_commands() {
    let (code, out) = csc(&["descent", "(exists y. x = y + y) | exists y. x = s(y + y)"]);
    assert_eq!(code, EXIT_HOLDS);
    assert!(out.contains("sequence: [0, -2, -4"), "{out}");
    assert_eq!(csc(&["descent", "x = #3"]).0, EXIT_UNKNOWN);
    assert_eq!(csc(&["inductive", "x + 0 = y + x -> y = 0"]).0, EXIT_HOLDS);
    assert_eq!(csc(&["from-inductive", "x = 0"]).0, EXIT_VIOLATED);
    let (code, out) = csc(&["to-inductive", "[eta = s(eta)]"]);
    assert_eq!(code, EXIT_HOLDS);
    assert!(out.starts_with("x != s(x)"), "{out}");
}

#[test]
fn model_evaluation() {
    let (code, out) = csc(&["model-eval", "p(eta) + s(0)", "--structure", "M:1", "--assign", "eta=(-3)^[1]"]);
    assert_eq!(code, EXIT_HOLDS);
    assert!(out.contains("= (-3)^[1] in M:1"), "{out}");
    assert_eq!(parse_element("-3^[1]").unwrap(), ModelElement::new(1, -3));
    assert_eq!(parse_element("7").unwrap(), ModelElement::new(0, 7));
    assert!(parse_element("7^[x]").is_err());
    assert_eq!(csc(&["model-eval", "x", "--structure", "Q"]).0, EXIT_ERROR);
}

#[test]
fn every_demo_matches_its_expected_status() {
    let suite = demo_suite(&DemoOptions { budget: Budget::default(), ..DemoOptions::default() }).unwrap();
    assert_eq!(suite.demos.len(), MANIFEST.len());
    for d in &suite.demos {
        assert!(d.matches, "{}: expected {}, got {}", d.name, d.expected, d.status);
    }
    assert_eq!(suite.exit_code(), EXIT_HOLDS);
}

#[test]
fn demos_report_their_status_as_exit_code() {
    let (code, out) = csc(&["demo", "commutativity-failure"]);
    assert_eq!(code, EXIT_VIOLATED);
    assert!(out.contains("B2: M:2: violated at x = 0^[1], y = 0^[2]"), "{out}");
    let (code, out) = csc(&["demo", "cancellation-unrefuted", "--k", "2", "--n", "2", "--m", "5"]);
    assert_eq!(code, EXIT_VIOLATED, "{out}");
    assert_eq!(csc(&["demo", "cancellation-unrefuted", "--k", "2"]).0, EXIT_ERROR);
    assert_eq!(csc(&["demo", "no-such-demo"]).0, EXIT_ERROR);
    let (code, out) = csc(&["demo", "--list"]);
    assert_eq!(code, EXIT_HOLDS);
    assert_eq!(out.lines().count(), MANIFEST.len());
}

#[test]
fn tiny_budgets_flag_unknown_statuses() {
    let o = DemoOptions { budget: Budget::tiny(), ..DemoOptions::default() };
    let r = run_demo("cycle-refutation", &o).unwrap();
    assert_eq!(r.status, Status::Undetermined);
    assert!(!r.matches);
    let (code, out) = csc(&["--budget", "tiny", "suite"]);
    assert_eq!(code, EXIT_UNKNOWN, "{out}");
    assert!(out.contains("FAIL cycle-refutation"), "{out}");
}
