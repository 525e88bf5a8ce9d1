//! End-to-end tests for the `fixcat` binary against the shipped fixtures.

use assert_cmd::Command;
use predicates::prelude::*;

fn fixcat() -> Command {
    Command::cargo_bin("fixcat").expect("binary builds")
}

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn validate_reports_counts_and_round_trip() {
    fixcat()
        .args(["validate", "--doc", &fixture("walking_arrow.fixcat.json")])
        .assert()
        .success()
        .stdout(
            predicate::str::contains("document valid")
                .and(predicate::str::contains("categories: 1"))
                .and(predicate::str::contains("functors: 2"))
                .and(predicate::str::contains("round trip: true")),
        );
}

#[test]
fn fixpoints_of_codiscrete_swap() {
    fixcat()
        .args([
            "fixpoints",
            "--doc",
            &fixture("codiscrete.fixcat.json"),
            "--functor",
            "swap",
        ])
        .assert()
        .success()
        .stdout(
            predicate::str::contains("2 fixed points")
                .and(predicate::str::contains("(c0, m:c0->c1)"))
                .and(predicate::str::contains("(c1, m:c1->c0)")),
        );
}

#[test]
fn lefschetz_of_hexagon_rotation_is_zero() {
    fixcat()
        .args([
            "lefschetz",
            "--doc",
            &fixture("hexagon.fixcat.json"),
            "--functor",
            "rot",
        ])
        .assert()
        .success()
        .stdout(
            predicate::str::contains("L(rot) = 0")
                .and(predicate::str::contains("Hopf trace identity: true")),
        );
}

#[test]
fn homology_of_hexagon_is_a_circle() {
    fixcat()
        .args([
            "homology",
            "--doc",
            &fixture("hexagon.fixcat.json"),
            "--category",
            "H",
        ])
        .assert()
        .success()
        .stdout(
            predicate::str::contains("H_0 = Z\n")
                .and(predicate::str::contains("H_1 = Z\n"))
                .and(predicate::str::contains("H_2 = 0")),
        );
}

#[test]
fn cech_cohomology_of_two_chart_cover() {
    fixcat()
        .args([
            "cech",
            "--doc",
            &fixture("pseudocircle.fixcat.json"),
            "--presheaf",
            "comp",
            "--object",
            "X",
            "--cover",
            "u,v",
            "--max-degree",
            "2",
        ])
        .assert()
        .success()
        .stdout(
            predicate::str::contains("H^0 = Z/2")
                .and(predicate::str::contains("H^1 = Z/2"))
                .and(predicate::str::contains("H^2 = 0")),
        );
}

#[test]
fn failed_sheaf_check_exits_one_with_witness() {
    fixcat()
        .args([
            "sheaf-check",
            "--doc",
            &fixture("pseudocircle.fixcat.json"),
            "--presheaf",
            "punctured",
        ])
        .assert()
        .code(1)
        .stdout(
            predicate::str::contains("sheaf: false")
                .and(predicate::str::contains("fails at object X, family 1")),
        );
}

#[test]
fn malformed_document_exits_two() {
    fixcat()
        .args([
            "validate",
            "--doc",
            &fixture("broken_composition.fixcat.json"),
        ])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("wrong endpoints"));
}

#[test]
fn dangling_reference_exits_two() {
    fixcat()
        .args(["validate", "--doc", &fixture("missing_ref.fixcat.json")])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("unresolved reference to nope"));
}

#[test]
fn missing_doc_flag_exits_two() {
    fixcat()
        .args(["fixpoints", "--functor", "swap"])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("--doc"));
}

/// `--json` output must be byte-identical across runs and thread counts.
#[test]
fn json_output_is_deterministic() {
    let runs: Vec<Vec<u8>> = ["1", "2", "4"]
        .iter()
        .map(|threads| {
            fixcat()
                .env("RAYON_NUM_THREADS", threads)
                .args([
                    "cech",
                    "--doc",
                    &fixture("pseudocircle.fixcat.json"),
                    "--presheaf",
                    "comp",
                    "--object",
                    "X",
                    "--cover",
                    "u,v",
                    "--max-degree",
                    "2",
                    "--json",
                ])
                .assert()
                .success()
                .get_output()
                .stdout
                .clone()
        })
        .collect();
    assert!(!runs[0].is_empty());
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[1], runs[2]);
}

#[test]
fn proptest_suites_pass() {
    fixcat()
        .args(["proptest", "--seed", "7", "--cases", "25"])
        .assert()
        .success()
        .stdout(predicate::str::contains("all passed"));
}
