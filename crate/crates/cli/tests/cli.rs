use std::path::Path;
use std::process::{Command, Output};

use kzero::io::VerificationReport;

fn kzero(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kzero"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (VerificationReport, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = kzero(&all);
    let r = VerificationReport::from_json(&stdout(&o)).expect("valid report");
    (r, o.status.code().unwrap())
}

#[test]
fn verify_theta_two_passes() {
    let (r, code) = json(&["verify", "--builder", "theta", "--g", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r.schema, "kzero-report/1");
    assert!(r.all_pass());
    for id in ["prop-F_qmF_pn", "thm-fm-iso/square", "eq-gamma/addition"] {
        assert!(r.entry(id).unwrap().outcome.is_pass(), "{id}");
    }
}

#[test]
fn conjecture_pathological_fails_at_two() {
    let (r, code) = json(&["conjecture", "--builder", "pathological", "--g", "2"]);
    assert_eq!(code, 1);
    let e = r.entry("conj-pi-subset-gamma").unwrap();
    match &e.outcome {
        kzero::Outcome::Fail { witness } => {
            assert!(witness.contains("q = [2]"), "{witness}");
            assert!(witness.contains('v'), "{witness}");
        }
        other => panic!("{other:?}"),
    }
    let text = stdout(&kzero(&[
        "conjecture",
        "--builder",
        "pathological",
        "--g",
        "2",
    ]));
    assert!(text.contains("witness: fails at q = [2]"));
}

#[test]
fn violator_trips_product_vanishing() {
    let (r, code) = json(&["conjecture", "--builder", "violator", "--g", "2"]);
    assert_eq!(code, 1);
    match &r.entry("conjecture-2").unwrap().outcome {
        kzero::Outcome::Fail { witness } => assert_eq!(witness, "a·v != 0"),
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        r.entry("prop-kernel-c/augmentation").unwrap().outcome,
        kzero::Outcome::Skipped { .. }
    ));
}

#[test]
fn gamma_coeffs_table_has_stirling_entry() {
    let o = kzero(&["gamma-coeffs", "--d", "3", "--i", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let row = text.lines().find(|l| l.starts_with("d=3")).unwrap();
    assert_eq!(
        row.split_whitespace().collect::<Vec<_>>(),
        ["d=3", "1", "-3"]
    );
}

#[test]
fn series_reports_the_normalization_finding() {
    let (r, code) = json(&["series", "--order", "5"]);
    assert_eq!(code, 1);
    assert!(r.entry("series-numerators").unwrap().outcome.is_fail());
    let nr = &r.details["normalization"];
    assert_eq!(
        nr["target"],
        serde_json::json!(["1", "3", "11", "50", "274"])
    );
    assert_eq!(nr["matching"], serde_json::json!([]));
    let (r, code) = json(&["series", "--j", "2"]);
    assert_eq!(code, 0);
    assert!(matches!(
        r.entry("series-numerators").unwrap().outcome,
        kzero::Outcome::Skipped { .. }
    ));
}

#[test]
fn structured_output_is_deterministic() {
    let args = [
        "conjecture",
        "--builder",
        "antisym",
        "--g",
        "2",
        "--format",
        "json",
    ];
    let a = stdout(&kzero(&args));
    let b = stdout(&kzero(&args));
    assert_eq!(a, b);
    let r = VerificationReport::from_json(&a).unwrap();
    assert_eq!(r.to_json(), a);
    assert!(!a.contains("timings_ms"));
    let timed = stdout(&kzero(&["verify", "--format", "json", "--timings"]));
    assert!(VerificationReport::from_json(&timed)
        .unwrap()
        .timings_ms
        .is_some());
}

#[test]
fn model_file_round_trip_through_the_binary() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("antisym3.model");
    let p = path.to_str().unwrap();
    let o = kzero(&[
        "model",
        "build",
        "--builder",
        "antisym",
        "--g",
        "3",
        "--out",
        p,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let first = std::fs::read_to_string(&path).unwrap();
    let exported = stdout(&kzero(&["model", "export", "--model-file", p]));
    assert_eq!(exported, first);
    let (r, code) = json(&["verify", "--model-file", p]);
    assert_eq!(code, 0);
    let (b, _) = json(&["verify", "--builder", "antisym", "--g", "3"]);
    assert_eq!(r.model.fingerprint, b.model.fingerprint);
    assert_eq!(r.results, b.results);
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn malformed_model_file_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let good = stdout(&kzero(&[
        "model",
        "build",
        "--builder",
        "theta",
        "--g",
        "1",
    ]));
    let bad = write(
        dir.path(),
        "bad.model",
        &good.replace("mul 0 1 1 1/1", "mul 0 1 1 one"),
    );
    let o = kzero(&["verify", "--model-file", &bad]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 8") && err.contains("`mul.c`"), "{err}");
}

#[test]
fn validate_names_seeded_defects() {
    let dir = tempfile::tempdir().unwrap();
    let good = stdout(&kzero(&[
        "model",
        "build",
        "--builder",
        "theta",
        "--g",
        "3",
    ]));
    // breaks commutativity: e1*e2 = 5 e3 but e2*e1 = 3 e3
    let seeded = write(
        dir.path(),
        "defect.model",
        &good.replace("mul 1 2 3 3/1", "mul 1 2 3 5/1"),
    );
    let (r, code) = json(&["model", "validate", "--model-file", &seeded]);
    assert_eq!(code, 1);
    let v = r.details["violations"].as_array().unwrap();
    assert!(v
        .iter()
        .any(|x| x["kind"] == "non_commutative" && x["left"] == "e1" && x["right"] == "e2"));
    let (_, code) = json(&["model", "validate", "--builder", "violator", "--g", "3"]);
    assert_eq!(code, 1);
}

#[test]
fn exit_codes_for_usage_and_nonconvergence() {
    assert_eq!(
        kzero(&["verify", "--builder", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(
        kzero(&["verify", "--g", "3", "--order", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(kzero(&["frobnicate"]).status.code(), Some(2));
    let o = kzero(&["filtration", "--g", "2", "--max-rounds", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "run.toml",
        "builder = \"antisym\"\ng = 3\nformat = \"json\"\nseed = 4\n",
    );
    let o = kzero(&["verify", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(0));
    let r = VerificationReport::from_json(&stdout(&o)).unwrap();
    assert_eq!((r.model.g, r.config.seed), (3, 4));
    assert!(r.model.source.starts_with("antisym"));
    let o = kzero(&["verify", "--config", &cfg, "--g", "2", "--format", "text"]);
    assert!(stdout(&o).starts_with("verify on antisym(g=2)"));
    let bad = write(dir.path(), "bad.toml", "colour = 3\n");
    assert_eq!(kzero(&["verify", "--config", &bad]).status.code(), Some(2));
}

#[test]
fn filtration_methods_skip_on_negative_index_models() {
    let (r, code) = json(&[
        "filtration",
        "--builder",
        "pathological",
        "--g",
        "2",
        "--kind",
        "Gamma",
    ]);
    assert_eq!(code, 0);
    assert!(matches!(
        r.entry("filtration/Gamma/methods-agree").unwrap().outcome,
        kzero::Outcome::Skipped { .. }
    ));
    assert_eq!(
        r.details["dims"]["Gamma/saturation"],
        serde_json::json!([5, 2, 2, 2, 2])
    );
}
