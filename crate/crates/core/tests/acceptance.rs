//! Acceptance suite: one test per acceptance criterion, each printing a
//! pass/fail line. All checks are exact integer or rational equalities
//! over the full built-in catalog (C1-C12, V4, S3, S4, D8, Q8, A4, C4xC2,
//! C9xC3).

use fbr_core::verify::{
    suite_boltje, suite_lemmas, suite_naturality, suite_splitting, suite_thm51, SuiteReport,
    VerifyScope,
};
use std::sync::LazyLock;
use std::time::Instant;

static THM51: LazyLock<(SuiteReport, f64)> = LazyLock::new(|| {
    let t0 = Instant::now();
    let r = suite_thm51(&VerifyScope::catalog_all());
    (r, t0.elapsed().as_secs_f64())
});
static SPLITTING: LazyLock<SuiteReport> =
    LazyLock::new(|| suite_splitting(&VerifyScope::catalog_all()));
static BOLTJE: LazyLock<SuiteReport> =
    LazyLock::new(|| suite_boltje(&VerifyScope::catalog_all()));
static NATURALITY: LazyLock<SuiteReport> =
    LazyLock::new(|| suite_naturality(&VerifyScope::catalog_all()));
static LEMMAS: LazyLock<SuiteReport> =
    LazyLock::new(|| suite_lemmas(&VerifyScope::catalog_all()));

fn require(report: &SuiteReport, names: &[&str], criterion: &str) {
    let mut failed = Vec::new();
    for name in names {
        let check = report
            .checks
            .iter()
            .find(|c| c.name == *name)
            .unwrap_or_else(|| panic!("missing check {name}"));
        if !check.pass {
            failed.push(format!(
                "{}: {}",
                check.name,
                check.detail.clone().unwrap_or_default()
            ));
        }
    }
    let pass = failed.is_empty();
    println!(
        "criterion {criterion}: {}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {}", failed.join(" | "));
}

#[test]
fn criterion_01_thm51_coprime_conductors() {
    let (report, secs) = &*THM51;
    println!("criterion 1 sweep time: {secs:.2}s (expected < 300s)");
    assert!(*secs < 300.0, "full conductor sweep exceeded five minutes");
    require(
        report,
        &["thm51.coprime-equality"],
        "1 (conductor formula in the coprime case, full catalog)",
    );
}

#[test]
fn criterion_02_burnside_specialization() {
    require(
        &THM51.0,
        &["thm51.burnside-n1"],
        "2 (n = 1 Burnside conductors [N_G(H):H][H:H']_0)",
    );
}

#[test]
fn criterion_03_monomial_specialization() {
    require(
        &THM51.0,
        &["thm51.monomial-nexp"],
        "3 (n = exp(G) monomial conductors [N_G(H,hH'):H'])",
    );
}

#[test]
fn criterion_04_two_sided_divisibility() {
    require(
        &THM51.0,
        &["thm51.two-sided-divisibility"],
        "4 (lower | c | rhs and r | u | [H^[n]:H']_0, all divisors)",
    );
}

#[test]
fn criterion_05_splitting_suite() {
    require(
        &SPLITTING,
        &[
            "splitting.completeness",
            "splitting.orthogonality",
            "splitting.species-indicator",
        ],
        "5 (splitting: completeness, orthogonality, indicator)",
    );
}

#[test]
fn criterion_06_mark_ghost_suite() {
    require(
        &BOLTJE,
        &[
            "boltje.mark-ring-hom",
            "boltje.order-annihilates-cokernel",
            "boltje.criterion-vs-solve-oracle",
        ],
        "6 (mark morphism ring hom, cokernel annihilation, oracle agreement)",
    );
}

#[test]
fn criterion_07_conductor_minimality() {
    require(
        &THM51.0,
        &["thm51.conductor-minimality"],
        "7 ((c/q) e non-integral for every prime q | c)",
    );
}

#[test]
fn criterion_08_fiber_change_suite() {
    require(
        &NATURALITY,
        &[
            "naturality.fiber-change-ring-hom",
            "naturality.injectivity-criteria",
            "naturality.right-free-defect",
            "naturality.deflation-counterexample",
            "naturality.torsion-dichotomy",
            "naturality.idempotent-images",
            "naturality.species-pullback",
            "naturality.non-surjectivity-witness",
        ],
        "8 (fiber change: ring hom, injectivity criteria, defects, images)",
    );
}

#[test]
fn criterion_09_engine_cross_validation() {
    require(
        &NATURALITY,
        &["naturality.engine-vs-elementary"],
        "9 (transitive biset engine vs elementary operations, |G| <= 12)",
    );
}

#[test]
fn criterion_10_lemma_suites() {
    require(
        &LEMMAS,
        &[
            "lemmas.residual-identities",
            "lemmas.restriction-fibers",
            "lemmas.normalizer-index-divisibility",
            "lemmas.idempotent-transport",
        ],
        "10 (Lemmas 1.1, 5.3, 5.4 and 3.6, full catalog)",
    );
}
