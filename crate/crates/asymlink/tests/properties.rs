//! Property tests for the graph core, the score catalogue and the
//! evaluation statistics.

mod common;

use proptest::prelude::*;

use asymlink::evaluation::{pr_auc, roc_auc, LabeledScore};
use asymlink::graph::{CoauthorGraph, NodeId, PaperRecord};
use asymlink::ingest::{
    coauthor_size_distribution, parse_papers, write_papers, InputFormat,
};
use asymlink::similarity::{score, ALL_SCORE_KINDS};
use common::random_papers;

fn paper_strategy() -> impl Strategy<Value = Vec<PaperRecord>> {
    // Up to 25 papers over a pool of 12 author names, sizes 1-5.
    prop::collection::vec(
        prop::collection::btree_set(0u8..12, 1..=5),
        1..25,
    )
    .prop_map(|papers| {
        papers
            .into_iter()
            .enumerate()
            .map(|(idx, authors)| PaperRecord {
                paper_id: format!("P{idx}"),
                authors: authors.into_iter().map(|a| format!("a{a}")).collect(),
            })
            .collect()
    })
}

fn labeled_strategy() -> impl Strategy<Value = Vec<LabeledScore>> {
    // Coarse score grid so ties actually happen.
    let entry = (0u8..=10, any::<bool>()).prop_map(|(v, positive)| LabeledScore {
        pair: (0, 1),
        positive,
        value: v as f64 / 10.0,
    });
    prop::collection::vec(entry, 2..60).prop_filter("needs both classes", |s| {
        s.iter().any(|x| x.positive) && s.iter().any(|x| !x.positive)
    })
}

fn trapezoid(points: &[(f64, f64)]) -> f64 {
    points
        .windows(2)
        .map(|w| (w[1].0 - w[0].0) * (w[1].1 + w[0].1) / 2.0)
        .sum()
}

proptest! {
    #[test]
    fn graph_invariants(papers in paper_strategy()) {
        let g = CoauthorGraph::build_from_papers(&papers);
        let degree_sum: usize = (0..g.node_count() as NodeId).map(|i| g.degree(i)).sum();
        prop_assert_eq!(degree_sum, 2 * g.edge_count());
        for i in 0..g.node_count() as NodeId {
            prop_assert!(g.strength(i) as usize >= g.degree(i));
            if g.degree(i) >= 1 {
                prop_assert!(g.publications(i) >= 1);
            }
            for j in (i + 1)..g.node_count() as NodeId {
                let n = g.common_neighbor_count(i, j).unwrap();
                let cap = g.degree(i).min(g.degree(j));
                if g.has_edge(i, j) {
                    prop_assert!(n <= cap - 1);
                } else {
                    prop_assert!(n <= cap);
                }
            }
        }
        for (_, _, data) in g.edges() {
            prop_assert!(data.weight >= 1);
            prop_assert_eq!(data.paper_sizes.len(), data.weight as usize);
            prop_assert!(data.paper_sizes.iter().all(|&l| l >= 2));
        }
    }

    #[test]
    fn build_order_invariance(papers in paper_strategy(), flip in any::<bool>()) {
        let g1 = CoauthorGraph::build_from_papers(&papers);
        let mut reordered = papers.clone();
        if flip {
            reordered.reverse();
        } else {
            reordered.rotate_left(papers.len() / 2);
        }
        let g2 = CoauthorGraph::build_from_papers(&reordered);
        prop_assert_eq!(g1.node_count(), g2.node_count());
        prop_assert_eq!(g1.edge_count(), g2.edge_count());
        let lookup = |g: &CoauthorGraph, name: &str| -> Option<(u32, usize, u32)> {
            let id = g.names().unwrap().iter().position(|n| n == name)? as NodeId;
            Some((g.publications(id), g.degree(id), g.strength(id)))
        };
        for name in g1.names().unwrap() {
            prop_assert_eq!(lookup(&g1, name), lookup(&g2, name));
        }
    }

    #[test]
    fn scores_symmetric_and_zero_law(papers in paper_strategy(), i in 0u32..12, j in 0u32..12) {
        let g = CoauthorGraph::build_from_papers(&papers);
        let n = g.node_count() as u32;
        prop_assume!(i < n && j < n && i != j);
        for kind in ALL_SCORE_KINDS {
            let ij = score(&g, i, j, kind).unwrap();
            prop_assert_eq!(ij, score(&g, j, i, kind).unwrap());
            prop_assert!(ij >= 0.0);
            if g.common_neighbor_count(i, j).unwrap() == 0 {
                prop_assert_eq!(ij, 0.0);
            }
        }
        let aa = score(&g, i, j, asymlink::ScoreKind::Aa).unwrap();
        let ra = score(&g, i, j, asymlink::ScoreKind::Ra).unwrap();
        prop_assert!(aa >= ra);
    }

    #[test]
    fn parse_round_trip(papers in paper_strategy()) {
        let mut buf = Vec::new();
        write_papers(&papers, &mut buf).unwrap();
        let back = parse_papers(std::io::Cursor::new(buf), InputFormat::Tsv).unwrap();
        prop_assert_eq!(papers, back);
    }

    #[test]
    fn pmf_sums_to_one(papers in paper_strategy()) {
        let pmf = coauthor_size_distribution(&papers).unwrap();
        let total: f64 = pmf.entries().iter().map(|&(_, p)| p).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn auc_rank_equals_trapezoid(scores in labeled_strategy()) {
        let curve = roc_auc(&scores).unwrap();
        prop_assert!((curve.area - trapezoid(&curve.points)).abs() <= 1e-9);
    }

    #[test]
    fn auc_invariant_under_monotone_transform(scores in labeled_strategy()) {
        let transformed: Vec<LabeledScore> = scores
            .iter()
            .map(|s| LabeledScore { value: (3.0 * s.value + 1.0).exp(), ..s.clone() })
            .collect();
        prop_assert_eq!(roc_auc(&scores).unwrap().area, roc_auc(&transformed).unwrap().area);
        prop_assert_eq!(pr_auc(&scores).unwrap().area, pr_auc(&transformed).unwrap().area);
    }

    #[test]
    fn auc_flips_under_relabeling(scores in labeled_strategy()) {
        let flipped: Vec<LabeledScore> = scores
            .iter()
            .map(|s| LabeledScore { positive: !s.positive, ..s.clone() })
            .collect();
        let a = roc_auc(&scores).unwrap().area;
        let b = roc_auc(&flipped).unwrap().area;
        prop_assert!((a + b - 1.0).abs() < 1e-12);
    }
}

#[test]
fn cn_grows_by_one_with_new_common_neighbor() {
    let mut papers = random_papers(20, 25, 5);
    let g = CoauthorGraph::build_from_papers(&papers);
    let before = score(&g, 0, 1, asymlink::ScoreKind::Cn).unwrap();
    // A fresh author collaborating with both endpoints (and nobody else)
    // adds exactly one common neighbour.
    let a = g.names().unwrap()[0].clone();
    let b = g.names().unwrap()[1].clone();
    papers.push(PaperRecord {
        paper_id: "extra1".into(),
        authors: vec!["brand-new".into(), a],
    });
    papers.push(PaperRecord {
        paper_id: "extra2".into(),
        authors: vec!["brand-new".into(), b],
    });
    let g2 = CoauthorGraph::build_from_papers(&papers);
    let after = score(&g2, 0, 1, asymlink::ScoreKind::Cn).unwrap();
    assert_eq!(after, before + 1.0);
}
