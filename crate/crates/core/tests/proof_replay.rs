use dbe_core::bisplit::{refine, BisplitPartition};
use dbe_core::enumerate::gen_bisplit_graphs;
use dbe_core::families::{verify_case_table, Principal, ProofContext, Status};
use dbe_core::graph::named;
use dbe_core::lines::{all_lines, DbeVerdict};
use dbe_core::proof::{verify_proof_on_graph, Route};
use dbe_core::sweep::{verify_theorem, SweepConfig, SweepMode};
use dbe_core::Graph;

#[test]
fn exceptional_graphs_have_more_than_seven_lines() {
    for g in [named::suspect_left(), named::suspect_right()] {
        let lines = all_lines(&g).unwrap();
        assert_eq!(g.n(), 7);
        assert!(lines.universal_pair().is_none());
        assert!(lines.distinct_count() >= 8);
        let report = verify_proof_on_graph(&g).unwrap();
        assert_eq!(report.route, Route::AntipodalPair);
        assert!(report.mismatches.is_empty(), "{:?}", report.mismatches);
    }
}

#[test]
fn replay_agrees_with_oracle_up_to_seven() {
    for n in 2..=7 {
        for g in gen_bisplit_graphs(n).unwrap() {
            let report = verify_proof_on_graph(&g).unwrap();
            assert_eq!(report.verdict.holds(), report.oracle_verdict.holds());
            assert!(report.mismatches.is_empty(), "{}: {:?}", report.graph, report.mismatches);
        }
    }
}

#[test]
fn six_cycle_between_x_y_and_y() {
    // X_Y = {0,1,2} and Y = {3,4,5} induce a 6-cycle; Z = {6,7} sees all of Y;
    // 8 is in X' (neighbours 3 and 6).
    let edges = [
        (0, 3), (3, 1), (1, 4), (4, 2), (2, 5), (5, 0),
        (3, 6), (4, 6), (5, 6), (3, 7), (4, 7), (5, 7),
        (8, 3), (8, 6),
    ];
    let g = Graph::from_edges(9, &edges).unwrap();
    let p = BisplitPartition::from_lists(&[0, 1, 2, 8], &[3, 4, 5], &[6, 7]);
    let ctx = ProofContext::new(&g, refine(&g, &p).unwrap()).unwrap();
    assert_eq!(ctx.x0.len(), 3);
    let t = verify_case_table(&ctx, 3).unwrap();
    assert_eq!(t.case.principal, Principal::XzEmptyY2Empty);
    if ctx.universal.is_none() {
        assert_eq!(t.status, Status::Pass);
    }
    assert!(t.rows.iter().all(|r| r.signature_ok));
}

#[test]
fn full_sweep_to_seven_is_clean() {
    let cfg = SweepConfig {
        max_n: 7,
        mode: SweepMode::FullProof,
        workers: 2,
        output: None,
    };
    let report = verify_theorem(&cfg).unwrap();
    assert!(report.counterexamples.is_empty());
    assert!(report.mismatches.is_empty());
    let verdicts: usize = report
        .sizes
        .iter()
        .map(|s| s.universal + s.enough_lines)
        .sum();
    assert_eq!(verdicts, report.total_graphs());
}

#[test]
fn verdict_kinds() {
    let report = verify_proof_on_graph(&named::path(4)).unwrap();
    assert_eq!(report.route, Route::Bipartite);
    assert!(matches!(report.oracle_verdict, DbeVerdict::Universal { .. }));
}

#[test]
fn table_one_at_nine_vertices() {
    // Table 1 needs |Y|, |Z| >= 3 and X', X_Y, X_Z nonempty, so n >= 9.
    let mut seen = 0;
    for g in gen_bisplit_graphs(9).unwrap() {
        let report = verify_proof_on_graph(&g).unwrap();
        if report.route != Route::Table1 {
            continue;
        }
        seen += 1;
        assert!(report.mismatches.is_empty(), "{}: {:?}", report.graph, report.mismatches);
        assert_eq!(report.table_reports[0].rows.len(), 6);
    }
    assert!(seen > 0);
}
