//! One test per acceptance criterion, plus one test per theorem clause.
//!
//! Each criterion test writes a single `criterion N ... PASS|FAIL` line to
//! stderr (bypassing the test harness capture) and lists its failing checks.
//! The extended tier runs only with `CONELAB_EXTENDED=1`.

use std::collections::BTreeSet;
use std::io::Write;

use conelab::catalog::build_id;
use conelab::harness::{self, parameter_rows, theorem_clauses, verify_clause, Check, Lab, Report, Status, Tier};
use conelab::matrix::write_matrix;
use conelab::polyhedra::{is_extreme_ray, is_facet, DdOptions, Description};
use conelab::with_threads;

fn lab() -> &'static Lab {
    Lab::global()
}

fn announce(k: u32, what: &str, report: &Report) -> bool {
    let s = report.summary();
    let ok = s.fail == 0 && s.skipped == 0 && !report.checks.is_empty();
    let mut err = std::io::stderr().lock();
    let _ = writeln!(
        err,
        "criterion {k} {what}: {} ({} pass, {} fail, {} deferred, {} consistent, {} refuted)",
        if ok { "PASS" } else { "FAIL" },
        s.pass,
        s.fail,
        s.deferred,
        s.consistent,
        s.refuted
    );
    for c in report.failures() {
        let _ = writeln!(
            err,
            "    {} {} / {}: expected {:?}, got {:?} {:?}",
            c.status.tag(),
            c.group,
            c.name,
            c.expected,
            c.got,
            c.note
        );
    }
    ok
}

fn assert_criterion(k: u32, what: &str, report: &Report) {
    let ok = announce(k, what, report);
    assert!(ok, "criterion {k} ({what}) has failing checks:\n{}", report.render_text());
}

fn standard_rows() -> Vec<harness::ParameterRow> {
    parameter_rows().into_iter().filter(|r| r.tier == Tier::Standard).collect()
}

#[test]
fn criterion_1_table2_standard_tier() {
    let report = harness::verify_table2(lab(), None, false);
    assert_criterion(1, "table 2, standard tier", &report);
}

#[test]
fn criterion_2_met_and_cut_counts() {
    let report = harness::verify_counts(lab(), false);
    assert_criterion(2, "MET and CUT counts", &report);
}

#[test]
fn criterion_3_orbit_tables() {
    let report = harness::verify_orbit_tables(lab());
    assert_criterion(3, "orbit tables", &report);
}

#[test]
fn criterion_4_theorem_suite() {
    let report = harness::verify_theorems(lab());
    assert_criterion(4, "theorem suite", &report);
}

#[test]
fn criterion_5_zero_one_enumeration() {
    let mut report = Report::default();
    for name in [
        "zero-one-enumerators",
        "weak-partial-zero-one",
        "partial-zero-one",
        "strong-partial-zero-one",
        "down-weighted-zero-one",
        "weightable-quasi-zero-one",
    ] {
        report.extend(verify_clause(lab(), name));
    }
    assert_criterion(5, "0,1 enumeration", &report);
}

#[test]
fn criterion_6_conjecture_probes() {
    let mut report = harness::verify_conjectures(lab());
    // a refutation is a finding, not a failure, as long as it names a witness
    let bare: Vec<Check> = report
        .checks
        .iter()
        .filter(|c| {
            c.status == Status::Refuted
                && c.note.as_deref().and_then(|n| n.strip_prefix("witness:")).is_none_or(|w| w.trim().is_empty())
        })
        .map(|c| Check::holds("conjectures", format!("{} prints a witness", c.name), false, ""))
        .collect();
    for c in bare {
        report.push(c);
    }
    let probed: BTreeSet<&str> = report.checks.iter().filter_map(|c| c.group.strip_prefix("conjectures/")).collect();
    report.push(Check::holds("conjectures", "both conjectures probed", probed.len() >= 2, format!("{probed:?}")));
    assert_criterion(6, "conjecture probes", &report);
}

#[test]
fn criterion_7_extended_tier() {
    if std::env::var("CONELAB_EXTENDED").as_deref() != Ok("1") {
        let _ = writeln!(std::io::stderr(), "criterion 7 extended tier: DEFERRED (set CONELAB_EXTENDED=1)");
        return;
    }
    let mut report = harness::verify_table2(lab(), None, true);
    report.extend(harness::verify_counts(lab(), true));
    assert_criterion(7, "extended tier", &report);
}

/// Round trip, independent extremality and facethood, thread independence.
fn engine_properties() -> Report {
    let opts = DdOptions::default();
    let mut report = Report::default();
    for row in standard_rows() {
        let name = row.name();
        let c = match lab().get(row.cone, row.n) {
            Ok(c) => c,
            Err(e) => {
                report.push(Check::failed("engine", name, &e));
                continue;
            }
        };
        let rays: BTreeSet<_> = c.rays().iter().cloned().collect();
        let facets: BTreeSet<_> = c.facets().iter().cloned().collect();
        let back = Description::from_inequalities(c.facets(), &c.desc.equalities, &opts)
            .and_then(|d| Description::from_generators(&d.rays, &opts).map(|e| (d, e)));
        match back {
            Ok((d, e)) => {
                let same = d.rays.iter().cloned().collect::<BTreeSet<_>>() == rays
                    && e.facets.iter().cloned().collect::<BTreeSet<_>>() == facets;
                report.push(Check::holds("engine", format!("{name} facets -> rays -> facets"), same, ""));
            }
            Err(e) => report.push(Check::failed("engine", format!("{name} round trip"), &e)),
        }
        let extreme = c.rays().iter().all(|r| is_extreme_ray(r, c.facets(), &c.desc.equalities).unwrap_or(false));
        let facet = c.facets().iter().all(|f| is_facet(f, c.rays()).unwrap_or(false));
        report.push(Check::holds("engine", format!("{name} rays pass the rank test"), extreme, ""));
        report.push(Check::holds("engine", format!("{name} facets pass the rank test"), facet, ""));

        let dump = |threads: usize| {
            with_threads(threads, || {
                let m = build_id(row.cone, row.n)?;
                let d = m.description(&opts)?;
                Ok::<_, conelab::Error>(format!("{}{}", write_matrix(&d.rays, m.space)?, write_matrix(&d.facets, m.space)?))
            })
        };
        match (dump(1), dump(2), dump(8)) {
            (Ok(a), Ok(b), Ok(h)) => {
                report.push(Check::holds("engine", format!("{name} identical bytes on 1, 2, 8 threads"), a == b && b == h, ""))
            }
            (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => {
                report.push(Check::failed("engine", format!("{name} threads"), &e))
            }
        }
    }
    report
}

#[test]
fn criterion_8_engine_properties() {
    let report = engine_properties();
    assert_criterion(8, "engine properties", &report);
}

// ------------------------------------------------------- theorem clauses

fn clause(name: &str) {
    assert!(theorem_clauses().iter().any(|c| c.name == name), "no clause named {name}");
    let report = verify_clause(lab(), name);
    assert!(!report.checks.is_empty());
    let bad: Vec<String> = report
        .failures()
        .iter()
        .map(|c| format!("{} {}: {:?} / {:?} {:?}", c.status.tag(), c.name, c.expected, c.got, c.note))
        .collect();
    assert!(bad.is_empty(), "{name}:\n{}", bad.join("\n"));
}

#[test]
fn every_clause_has_a_named_test() {
    let src = include_str!("acceptance.rs");
    for c in theorem_clauses() {
        assert!(src.contains(&format!("clause(\"{}\")", c.name)), "clause {} has no test", c.name);
    }
}

#[test]
fn clause_weighted_rays() {
    clause("weighted-rays");
}

#[test]
fn clause_weighted_facets() {
    clause("weighted-facets");
}

#[test]
fn clause_weighted_incidence() {
    clause("weighted-incidence");
}

#[test]
fn clause_weighted_graphs_join() {
    clause("weighted-graphs-join");
}

#[test]
fn clause_weighted_graph_invariants() {
    clause("weighted-graph-invariants");
}

#[test]
fn clause_weak_partial_zero_one() {
    clause("weak-partial-zero-one");
}

#[test]
fn clause_weighted_zero_one_and_wcut() {
    clause("weighted-zero-one-and-wcut");
}

#[test]
fn clause_strong_partial_lifting() {
    clause("strong-partial-lifting");
}

#[test]
fn clause_strong_partial_met() {
    clause("strong-partial-met");
}

#[test]
fn clause_strong_partial_zero_one() {
    clause("strong-partial-zero-one");
}

#[test]
fn clause_down_weighted_zero_one() {
    clause("down-weighted-zero-one");
}

#[test]
fn clause_weightable_quasi_zero_one() {
    clause("weightable-quasi-zero-one");
}

#[test]
fn clause_partial_zero_one() {
    clause("partial-zero-one");
}

#[test]
fn clause_zero_one_enumerators() {
    clause("zero-one-enumerators");
}

#[test]
fn clause_ocut_images() {
    clause("ocut-images");
}

#[test]
fn clause_owhyp_chain() {
    clause("owhyp-chain");
}

#[test]
fn clause_wqmet_zero_one_chain() {
    clause("wqmet-zero-one-chain");
}

#[test]
fn clause_symmetrized_zero_one_quasi() {
    clause("symmetrized-zero-one-quasi");
}

#[test]
fn clause_quasi_hypermetric() {
    clause("quasi-hypermetric");
}

#[test]
fn clause_pq_images() {
    clause("pq-images");
}

#[test]
fn clause_hypermetric_chain() {
    clause("hypermetric-chain");
}

#[test]
fn clause_whyp_facets() {
    clause("whyp-facets");
}

#[test]
fn clause_phyp_facets() {
    clause("phyp-facets");
}

#[test]
fn clause_quasi_equalities() {
    clause("quasi-equalities");
}

#[test]
fn clause_quasi_facet_types() {
    clause("quasi-facet-types");
}
