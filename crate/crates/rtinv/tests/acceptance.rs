//! End-to-end acceptance checks: every release-gating identity, one printed
//! pass/fail line per criterion (run with `--nocapture` to see them).
//!
//! The criteria reuse the named checks of the verification suites; each
//! criterion selects its checks by name prefix, requires at least one match
//! and passes only if every matching check is within tolerance.

use rtinv::modular::Check;
use rtinv::verify::{coset_suite, crossfamily_suite, modular_suite, skein_suite};

/// Check names belonging to criteria 2 and 3, carved out of the modular
/// suite; everything else in that suite is a modular-relation check.
const INTEGRALITY: &[&str] = &["verlinde_integrality", "vector_fusion_rule"];
const GENUS: &[&str] = &["genus0_matches_genus1"];

fn tail(name: &str) -> &str {
    name.rsplit('/').next().unwrap()
}

struct Criterion {
    number: usize,
    title: &'static str,
    select: Box<dyn Fn(&str, &str) -> bool>,
}

fn criteria() -> Vec<Criterion> {
    let starts = |prefixes: &'static [&'static str]| {
        move |_suite: &str, name: &str| prefixes.iter().any(|p| name.starts_with(p))
    };
    vec![
        Criterion {
            number: 1,
            title: "modular S/T relations for affine and lattice families",
            select: Box::new(|suite, name| {
                suite == "modular"
                    && !INTEGRALITY.contains(&tail(name))
                    && !GENUS.contains(&tail(name))
            }),
        },
        Criterion {
            number: 2,
            title: "Verlinde integrality and vector-fusion agreement",
            select: Box::new(|suite, name| suite == "modular" && INTEGRALITY.contains(&tail(name))),
        },
        Criterion {
            number: 3,
            title: "genus-0 data reproduces the genus-1 S matrix",
            select: Box::new(|suite, name| suite == "modular" && GENUS.contains(&tail(name))),
        },
        Criterion {
            number: 4,
            title: "sphere normalization and stabilization invariance",
            select: Box::new(starts(&["sphere_normalization/", "stabilization_invariance/"])),
        },
        Criterion {
            number: 5,
            title: "level-1 invariant vanishes on L(2,1) while the Ising coset does not",
            select: Box::new(starts(&[
                "su2_level1_vanishes_on_lens_2_1",
                "ising_nonzero_on_lens_2_1",
            ])),
        },
        Criterion {
            number: 6,
            title: "Ising coset equals the level-2 parafermion invariant",
            select: Box::new(starts(&["ising_equals_parafermion_level_2"])),
        },
        Criterion {
            number: 7,
            title: "odd-level parafermion invariant factorizes",
            select: Box::new(starts(&["parafermion_factorization/"])),
        },
        Criterion {
            number: 8,
            title: "level-rank S-matrix identity and conjugate restricted invariants",
            select: Box::new(starts(&[
                "level_rank_s_column/",
                "restricted_level_rank_conjugation",
            ])),
        },
        Criterion {
            number: 9,
            title: "skein oracles: Hopf values, Hecke vs TL, Hecke relations",
            select: Box::new(starts(&[
                "hopf_values_match_fusion_oracle/",
                "hecke_matches_skein/",
                "hecke_quadratic_relation/",
                "hecke_markov_property/",
                "move_invariance_random_braids/",
            ])),
        },
        Criterion {
            number: 10,
            title: "simple-current symmetry phases of colored link invariants",
            select: Box::new(starts(&["symmetry_phase_"])),
        },
        Criterion {
            number: 11,
            title: "sector counts, global dimensions and the maverick data check",
            select: Box::new(|suite, _| suite == "coset"),
        },
        Criterion {
            number: 12,
            title: "sector-table and restricted-sum paths agree",
            select: Box::new(starts(&["two_path_agreement/"])),
        },
    ]
}

#[test]
fn acceptance_criteria() {
    let mut checks: Vec<(String, Check)> = Vec::new();
    for report in [
        modular_suite().unwrap(),
        skein_suite().unwrap(),
        coset_suite().unwrap(),
        crossfamily_suite().unwrap(),
    ] {
        for c in report.checks {
            checks.push((report.suite.clone(), c));
        }
    }
    let mut all_pass = true;
    for criterion in criteria() {
        let selected: Vec<&Check> = checks
            .iter()
            .filter(|(suite, c)| (criterion.select)(suite, &c.name))
            .map(|(_, c)| c)
            .collect();
        assert!(
            !selected.is_empty(),
            "criterion {:02} selected no checks",
            criterion.number
        );
        let failed: Vec<&&Check> = selected.iter().filter(|c| !c.pass()).collect();
        let status = if failed.is_empty() { "pass" } else { "FAIL" };
        println!(
            "criterion {:02} ({} checks) {} ... {status}",
            criterion.number,
            selected.len(),
            criterion.title
        );
        for c in &failed {
            println!("    failing: {} deviation {:.3e} tol {:.3e}", c.name, c.deviation, c.tol);
            all_pass = false;
        }
    }
    assert!(all_pass, "at least one acceptance criterion failed");
}
