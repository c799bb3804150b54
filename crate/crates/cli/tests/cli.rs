//! Exit-code discipline, report shape and determinism of the `wdvv` binary.

mod common;

use common::*;
use serde_json::{json, Value};

fn without_timing(mut report: Value) -> Value {
    report.as_object_mut().expect("report object").remove("timing_ms");
    report
}

#[test]
fn check_wdvv_exit_codes() {
    let fx = Fixtures::new();
    let quad = fx.write("quad.json", &quad_doc());
    let bad = fx.write("bad.json", &quad_perturbed_doc());
    let malformed = fx.write_text("malformed.json", "{\"vars\": [\"x1\"], \"F\": ");
    let unparsable = fx.write("unparsable.json", &prepotential_doc("x1 +* x2"));

    let pass = wdvv(&["check-wdvv", "--input", path_str(&quad), "--mode", "ordinary"]);
    assert_eq!(pass.code, 0, "{}", pass.stderr);
    assert_eq!(pass.status(), "pass");
    assert_eq!(pass.clause("residuals_zero").unwrap()["ok"], true);
    assert_eq!(pass.clause("ordinary").unwrap()["ok"], true);

    let fail = wdvv(&["check-wdvv", "--input", path_str(&bad)]);
    assert_eq!(fail.code, 1);
    assert_eq!(fail.status(), "fail");
    assert!(fail.has_witness());

    for path in [&malformed, &unparsable] {
        let err = wdvv(&["check-wdvv", "--input", path_str(path)]);
        assert_eq!(err.code, 2);
        assert_eq!(err.status(), "error");
    }
    let missing = wdvv(&["check-wdvv", "--input", "/nonexistent/quad.json"]);
    assert_eq!(missing.code, 2);
    let bad_pivot = wdvv(&["check-wdvv", "--input", path_str(&quad), "--pivot", "4"]);
    assert_eq!(bad_pivot.code, 2);
}

#[test]
fn generalized_and_ordinary_modes_differ_on_generalized_solutions() {
    // A cubic in x1 makes the pivot slice non-constant; n = 2 always satisfies.
    let fx = Fixtures::new();
    let doc = json!({ "vars": ["x1", "x2"], "F": "x1^3*x2 + x1*x2^2", "pivot": 1 });
    let path = fx.write("gen.json", &doc);
    assert_eq!(wdvv(&["check-wdvv", "--input", path_str(&path)]).code, 0);
    let ordinary = wdvv(&["check-wdvv", "--input", path_str(&path), "--mode", "ordinary"]);
    assert_eq!(ordinary.code, 1);
    assert!(ordinary.has_witness());
}

#[test]
fn kontsevich_exit_codes() {
    let run = wdvv(&["kontsevich", "-k", "4"]);
    assert_eq!(run.code, 0);
    assert_eq!(
        run.report.as_ref().unwrap()["N"],
        json!([[1, 1], [2, 1], [3, 12], [4, 620]])
    );

    let pde = wdvv(&["kontsevich", "-k", "6", "--check-pde"]);
    assert_eq!(pde.code, 0);
    assert_eq!(pde.clause("matches_pde_solution").unwrap()["ok"], true);

    let fx = Fixtures::new();
    let perturbed = fx.write("n3.json", &nk_doc(&[1, 1, 13, 620]));
    let fail = wdvv(&["kontsevich", "--input", path_str(&perturbed)]);
    assert_eq!(fail.code, 1);
    assert!(fail.has_witness());

    let gap = fx.write("gap.json", &json!({ "N": [[1, 1], [3, 12]] }));
    assert_eq!(wdvv(&["kontsevich", "--input", path_str(&gap)]).code, 2);
    assert_eq!(wdvv(&["kontsevich", "-k", "0"]).code, 2);
}

#[test]
fn check_lenard_exit_codes() {
    let fx = Fixtures::new();
    let quad = fx.write("quad.json", &quad_doc());
    let pass = wdvv(&["check-lenard", "--input", path_str(&quad)]);
    assert_eq!(pass.code, 0, "{}", pass.stdout);
    assert_eq!(pass.report.as_ref().unwrap()["unity"], true);

    let bad = fx.write("bad.json", &quad_perturbed_doc());
    let fail = wdvv(&["check-lenard", "--input", path_str(&bad)]);
    assert_eq!(fail.code, 1);
    assert!(fail.has_witness());

    // A square whose pivot row is not invertible.
    let degenerate = json!({ "vars": ["x1", "x2"], "A": [["0", "0"], ["0", "1"]], "pivot": 1 });
    let path = fx.write("degenerate.json", &degenerate);
    assert_eq!(wdvv(&["check-lenard", "--input", path_str(&path)]).code, 2);
}

#[test]
fn check_frobenius_exit_codes() {
    let fx = Fixtures::new();
    let from_f = fx.write("from_f.json", &json!({ "from_F": quad_doc() }));
    let raw = fx.write("raw.json", &quad_frobenius_raw());
    for path in [&from_f, &raw] {
        let run = wdvv(&["check-frobenius", "--input", path_str(path)]);
        assert_eq!(run.code, 0, "{}", run.stdout);
        assert_eq!(run.report.as_ref().unwrap()["reconstructed_wdvv"]["satisfied"], true);
    }

    let broken = fx.write("broken.json", &broken_symmetry_frobenius());
    let fail = wdvv(&["check-frobenius", "--input", path_str(&broken)]);
    assert_eq!(fail.code, 1);
    assert_eq!(fail.clause("axiom2_compatible").unwrap()["ok"], false);
    assert!(fail.has_witness());

    let generalized = json!({ "from_F": { "vars": ["x1", "x2"], "F": "x1^3*x2 + x1*x2^2" } });
    let refused = fx.write("refused.json", &generalized);
    assert_eq!(wdvv(&["check-frobenius", "--input", path_str(&refused)]).code, 2);
}

#[test]
fn haantjes_exit_codes() {
    let fx = Fixtures::new();
    let quad = fx.write("quad.json", &quad_doc());
    assert_eq!(wdvv(&["haantjes", "--input", path_str(&quad)]).code, 0);

    let op = json!({ "vars": VARS, "K": [["x2", "x3", "0"], ["0", "x1", "0"], ["0", "0", "0"]] });
    let path = fx.write("op.json", &op);
    let fail = wdvv(&["haantjes", "--input", path_str(&path)]);
    assert_eq!(fail.code, 1);
    assert!(fail.has_witness());

    let zero_den = json!({ "vars": VARS, "K": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]], "den": "0" });
    let path = fx.write("zero_den.json", &zero_den);
    assert_eq!(wdvv(&["haantjes", "--input", path_str(&path)]).code, 2);
}

#[test]
fn usage_errors_exit_two_with_text_on_stderr() {
    for args in [
        vec!["check-wdvv", "--input", "x.json", "--bogus"],
        vec!["frobnicate"],
        vec![],
        vec!["check-wdvv"],
        vec!["check-wdvv", "--input", "x.json", "--mode", "sideways"],
    ] {
        let run = wdvv(&args);
        assert_eq!(run.code, 2, "{args:?}");
        assert!(run.stdout.is_empty(), "{args:?}");
        assert!(!run.stderr.is_empty(), "{args:?}");
    }
    let unknown = wdvv(&["check-wdvv", "--input", "x.json", "--bogus"]);
    assert!(unknown.stderr.contains("Usage: wdvv check-wdvv"), "{}", unknown.stderr);
    let help = wdvv(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("check-wdvv"));
}

#[test]
fn reports_are_deterministic_modulo_timing() {
    let fx = Fixtures::new();
    let docs = [
        ("quad.json", quad_doc()),
        ("bad.json", quad_perturbed_doc()),
        ("raw.json", broken_symmetry_frobenius()),
    ];
    let paths: Vec<_> = docs.iter().map(|(n, d)| fx.write(n, d)).collect();
    let invocations: Vec<Vec<&str>> = vec![
        vec!["check-wdvv", "--input", path_str(&paths[0]), "--mode", "ordinary"],
        vec!["check-wdvv", "--input", path_str(&paths[1])],
        vec!["check-lenard", "--input", path_str(&paths[1])],
        vec!["check-frobenius", "--input", path_str(&paths[2])],
        vec!["haantjes", "--input", path_str(&paths[0])],
        vec!["kontsevich", "-k", "7", "--check-pde"],
    ];
    for args in invocations {
        let a = wdvv(&args).report.expect("json report");
        let b = wdvv(&args).report.expect("json report");
        assert_eq!(without_timing(a), without_timing(b), "{args:?}");
    }
}

#[test]
fn report_shape() {
    let fx = Fixtures::new();
    let path = fx.write("bad.json", &quad_perturbed_doc());
    let report = wdvv(&["check-lenard", "--input", path_str(&path)]).report.unwrap();
    for key in ["command", "status", "clauses", "timing_ms", "inputs_echo"] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
    assert_eq!(report["command"], "check-lenard");
    let names: Vec<&str> = report["clauses"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    let mut sorted = names.clone();
    sorted.sort_unstable();
    assert_eq!(names, sorted);
    assert_eq!(report["inputs_echo"]["vars"], json!(VARS));
}
