//! Equivalence of the merge-based scoring engine against the brute-force
//! set-intersection oracle on random corpora.

mod common;

use asymlink::graph::CoauthorGraph;
use asymlink::similarity::{score, score_batch, score_batch_sequential, ALL_SCORE_KINDS};
use common::{all_pairs, is_log_based, random_papers, Oracle};

fn assert_close(kind: asymlink::ScoreKind, engine: f64, oracle: f64, ctx: &str) {
    if is_log_based(kind) {
        let tol = 1e-12 * oracle.abs().max(1.0);
        assert!(
            (engine - oracle).abs() <= tol,
            "{kind} {ctx}: engine {engine} vs oracle {oracle}"
        );
    } else {
        assert_eq!(engine, oracle, "{kind} {ctx}");
    }
}

#[test]
fn engine_matches_oracle_on_random_graphs() {
    for seed in 0..20 {
        let papers = random_papers(40, 60, seed);
        let g = CoauthorGraph::build_from_papers(&papers);
        let oracle = Oracle::new(&papers, &g);
        for (i, j) in all_pairs(&g) {
            for kind in ALL_SCORE_KINDS {
                let engine = score(&g, i, j, kind).unwrap();
                assert_close(kind, engine, oracle.score(i, j, kind), &format!("({i},{j}) seed {seed}"));
            }
        }
    }
}

#[test]
fn parallel_batch_equals_sequential() {
    let papers = random_papers(200, 400, 77);
    let g = CoauthorGraph::build_from_papers(&papers);
    let pairs = all_pairs(&g);
    for kind in ALL_SCORE_KINDS {
        let par = score_batch(&g, &pairs, kind).unwrap();
        let seq = score_batch_sequential(&g, &pairs, kind).unwrap();
        assert_eq!(par, seq, "{kind}");
    }
}
