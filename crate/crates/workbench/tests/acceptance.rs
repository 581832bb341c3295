//! Acceptance suite: every criterion of the verification contract, one
//! pass/fail line per criterion, all comparisons exact (tolerance zero).
//!
//! Two numeric literals from the source are unattainable as stated and are
//! reported as such with the analysis that refutes them (the corrected
//! values are asserted through two independent routes); everything else is
//! asserted green. See the repository notes for the full derivations.

use conewb::report::Report;
use conewb::suite::run_paper_suite;
use conewb_core::parallel::ExecMode;
use std::sync::OnceLock;

fn suite() -> &'static Report {
    static REPORT: OnceLock<Report> = OnceLock::new();
    REPORT.get_or_init(|| run_paper_suite(ExecMode::Auto))
}

/// Asserts that every check with one of the prefixes exists and passes,
/// and prints the per-criterion line.
fn criterion(number: u32, description: &str, prefixes: &[&str], as_stated_note: Option<&str>) {
    let report = suite();
    let mut matched = 0usize;
    let mut failures = Vec::new();
    for e in &report.entries {
        if prefixes.iter().any(|p| e.id.starts_with(p)) {
            matched += 1;
            if !e.pass {
                failures.push(format!("{} ({})", e.id, e.detail));
            }
        }
    }
    let pass = failures.is_empty() && matched > 0;
    println!(
        "criterion {number}: {} — {description} [{matched} checks]",
        if pass { "pass" } else { "FAIL" }
    );
    if let Some(note) = as_stated_note {
        println!("criterion {number}:   as-stated literal: FAIL — {note}");
    }
    assert!(matched > 0, "criterion {number} matched no checks");
    assert!(
        failures.is_empty(),
        "criterion {number} failed: {failures:?}"
    );
}

#[test]
fn criterion_01_sasaki3_g2_fixture() {
    criterion(
        1,
        "3-Sasakian canonical G₂ fixture: displayed *φ and the seven ∇^g_{e_j}φ reproduced exactly; g(*φ,*φ) = 168; g(∇^gφ,*φ) verified",
        &["sasaki3."],
        Some(
            "the source prints g(∇^gφ,*φ) = 180, but pairing its own displayed tensors gives 216 (= 3!·36, hand-checkable); \
             the independent cone-side Fernández-criterion oracle concurs (suite check sasaki3.pair-180-source-defect asserts both routes)",
        ),
    );
}

#[test]
fn criterion_02_spin7_cone_class() {
    criterion(
        2,
        "induced Spin(7) cone structure is U₁ iff the first condition 216 − 168a = 0 holds (a = 9/7); U₁-condition-2 holds for symbolic a along both evaluation routes, which agree identically",
        &["spin7."],
        Some(
            "the source states U₁ iff a = 15/14 (from its 180); at a = 15/14 its own first condition reads 216 = 180 and fails \
             (suite check spin7.not-u1-at-15-14); the corrected constant 9/7 is asserted via the symbolic residual and the classifier",
        ),
    );
}

#[test]
fn criterion_03_heisenberg_classes() {
    criterion(
        3,
        "Heisenberg: dη = −ρ(e12+e34); T^c = −ρ(e12+e34)∧e5 from the closed formula AND the solver; F1 pure C7, F2 pure C6, Sasaki exactly at ρ = 2; cone classes Ω1 ↦ χ3⊕χ4 (not χ4), Ω2 ↦ χ4",
        &["heis.deta", "heis.tc-", "heis.f1-", "heis.f2-", "heis.cone-"],
        None,
    );
}

#[test]
fn criterion_04_heisenberg_spinors() {
    criterion(
        4,
        "Heisenberg spinors: L1, L2 one-dimensional; ∇^{−3/4}ψ = ±ρXψ with zero residual on the two lines; the corrected s = 1/4 equation holds with a = 2ρ; the lifts are ∇̄-parallel on the Ω2 cone (residual zero as a rational function of r)",
        &["heis.spinor-", "heis.killing-", "heis.ksacs-", "heis.lift-", "heis.corrksps", "heis.eta-wedge", "heis.epsilon"],
        Some(
            "the source's prose pairs L1 with +ρ; the conventions it pins (vol = +i, F(v,w) = g(v,φw), ε = −1, its own \
             β₁ = (ε/2)(1−4s) formula) force L1 ↦ −ρ and L2 ↦ +ρ, which is what the suite asserts (see notes)",
        ),
    );
}

#[test]
fn criterion_05_so3sl2() {
    criterion(
        5,
        "so3sl2 at (c1,c2,D1,D2) = (−25,16,15,12): N = 0 and δF = (−c1−c2)η symbolically; the a = 9/4 cone is χ3 and not Kähler; Killing spinors have α = 0 and the cone lift is refused",
        &["so3sl2.", "flat5."],
        None,
    );
}

#[test]
fn criterion_06_g2_spinor_corollary() {
    criterion(
        6,
        "the solved G₂ spinor satisfies (X⌟φ)ψ = 3Xψ on all 7 frame directions and ∇^c_Xψ = −(a/2)Xψ + (a/6)(X⌟φ)ψ for symbolic a; its cone lift is ∇̄-parallel at three sampled rational a",
        &["g2spinor."],
        None,
    );
}

#[test]
fn criterion_07_cone_theorems() {
    criterion(
        7,
        "cone theorems as residual-zero suites on every fixture with characteristic connection: ∇̄J ≡ 0, ∇̄Φ ≡ 0, lem:normal (a)–(c), lem:nijen, lem:deltaO, the η∧F lift, chartorausschr, lem:starphi (unit-tested), lem:nablastarphi, barP (1)–(5), the conformal Hodge relation — identically in r and the symbolic parameters",
        &["cone."],
        None,
    );
}

#[test]
fn criterion_08_tanno_arithmetic() {
    criterion(
        8,
        "Tanno arithmetic: β₁ = (ε/2)(1−4s_t) with s_t = (k+1)/(4(k−1))(1/t−1) as an exact identity in t, k; s_t = 0 at t = 1 recovers β = ε/2; the Heisenberg deformation stays in the family with ρ' = ρ",
        &["tanno."],
        None,
    );
}

#[test]
fn criterion_09_negative_results() {
    criterion(
        9,
        "negative results as predicates: no fixture cone is nearly Kähler and the χ1-component never occurs; the solver returns none on synthetic pure-C2/C5 (and C12) fixtures with α ≠ 0; the C4 typo's alternate reading is flagged",
        &["negative."],
        None,
    );
}

#[test]
fn criterion_10_property_suites() {
    criterion(
        10,
        "property suites over all fixtures plus ≥100 randomized instances: field axioms and Leibniz, print/parse round trip, d² = 0, Hodge involution and isometry, Clifford relations for n ≤ 8, Koszul-vs-O'Neill on every cone, solver-vs-closed-form agreement (incl. the dim-8 Spin(7) solve)",
        &["prop."],
        None,
    );
}

#[test]
fn suite_is_exhaustive_and_deterministic() {
    let report = suite();
    // Every suite entry belongs to some criterion prefix.
    let prefixes = [
        "sasaki3.", "spin7.", "heis.", "so3sl2.", "flat5.", "g2spinor.", "cone.", "tanno.",
        "negative.", "prop.",
    ];
    for e in &report.entries {
        assert!(
            prefixes.iter().any(|p| e.id.starts_with(p)),
            "check {} not mapped to a criterion",
            e.id
        );
    }
    // Byte-identical structured output across runs (sequential vs parallel).
    let again = run_paper_suite(ExecMode::Sequential);
    assert_eq!(report.structured(), again.structured());
}
