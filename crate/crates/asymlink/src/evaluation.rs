//! Balanced link-prediction evaluation: test-set sampling, holdout scoring,
//! confusion matrices, ROC/PR curves, AUC and average precision.
//!
//! Both the positive (existing) and negative (absent) test pairs are drawn
//! from pairs sharing at least one common neighbour in the original graph,
//! in equal numbers. By default the positive edges are deleted before
//! scoring, so the hidden edge cannot leak through degrees or strengths;
//! publication counts stay untouched (the papers still exist, only the
//! pairing is hidden).

use std::collections::HashSet;

use rand::seq::index::sample as index_sample;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::graph::{CoauthorGraph, NodeId};
use crate::similarity::{score_batch, ScoreKind};
use crate::Result;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationSet {
    pub positives: Vec<(NodeId, NodeId)>,
    pub negatives: Vec<(NodeId, NodeId)>,
    pub seed: u64,
}

impl EvaluationSet {
    pub fn d(&self) -> usize {
        self.positives.len()
    }
}

/// One scored test pair with its ground-truth label.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledScore {
    pub pair: (NodeId, NodeId),
    pub positive: bool,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConfusionMatrix {
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    pub fn_: usize,
}

/// Threshold-free curve with its area.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveResult {
    /// ROC: (FPR, TPR); PR: (recall, precision).
    pub points: Vec<(f64, f64)>,
    pub area: f64,
}

/// Edges whose endpoints share at least one common neighbour.
pub fn qualifying_edges(g: &CoauthorGraph) -> Vec<(NodeId, NodeId)> {
    g.edges()
        .filter(|&(i, j, _)| g.common_neighbors(i, j).next().is_some())
        .map(|(i, j, _)| (i, j))
        .collect()
}

/// Default evaluation-set size: 10^4 capped at half the qualifying edges.
pub fn default_d(g: &CoauthorGraph) -> usize {
    (qualifying_edges(g).len() / 2).min(10_000)
}

/// Streams deduplicated non-adjacent 2-hop pairs (the qualifying negatives)
/// into a uniform reservoir of size `d`, and counts how many there are.
fn sample_negative_pairs(
    g: &CoauthorGraph,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> (Vec<(NodeId, NodeId)>, usize) {
    let mut seen: HashSet<(NodeId, NodeId)> = HashSet::new();
    let mut reservoir: Vec<(NodeId, NodeId)> = Vec::with_capacity(d);
    let mut total = 0usize;
    for u in 0..g.node_count() as NodeId {
        let neigh: Vec<NodeId> = g.neighbors(u).collect();
        for a in 0..neigh.len() {
            for b in a + 1..neigh.len() {
                let pair = (neigh[a], neigh[b]); // sorted, adjacency is sorted
                if g.has_edge(pair.0, pair.1) || !seen.insert(pair) {
                    continue;
                }
                total += 1;
                if reservoir.len() < d {
                    reservoir.push(pair);
                } else if d > 0 {
                    let slot = rng.gen_range(0..total);
                    if slot < d {
                        reservoir[slot] = pair;
                    }
                }
            }
        }
    }
    (reservoir, total)
}

/// Samples `d` positive and `d` negative pairs, all sharing at least one
/// common neighbour in `g`. Deterministic for a given (graph, d, seed).
pub fn build_balanced_set(g: &CoauthorGraph, d: usize, seed: u64) -> Result<EvaluationSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let candidates = qualifying_edges(g);
    let (negatives, negative_total) = sample_negative_pairs(g, d, &mut rng);
    if candidates.len() < d || negative_total < d {
        return Err(Error::InsufficientPairs {
            needed: d,
            positives: candidates.len(),
            negatives: negative_total,
        });
    }
    let positives: Vec<(NodeId, NodeId)> = index_sample(&mut rng, candidates.len(), d)
        .into_iter()
        .map(|idx| candidates[idx])
        .collect();
    Ok(EvaluationSet {
        positives,
        negatives,
        seed,
    })
}

/// The graph the scores are computed on: `g` with all positive test edges
/// deleted. Publication counts are not decremented.
pub fn training_graph(g: &CoauthorGraph, set: &EvaluationSet) -> CoauthorGraph {
    g.without_edges(&set.positives)
}

/// Scores every pair of the set on the supplied (training) graph.
pub fn score_labeled(
    train: &CoauthorGraph,
    set: &EvaluationSet,
    kind: ScoreKind,
) -> Result<Vec<LabeledScore>> {
    let mut out = Vec::with_capacity(2 * set.d());
    for (pairs, positive) in [(&set.positives, true), (&set.negatives, false)] {
        for scored in score_batch(train, pairs, kind)? {
            out.push(LabeledScore {
                pair: (scored.i, scored.j),
                positive,
                value: scored.value,
            });
        }
    }
    Ok(out)
}

/// Holdout protocol in one call: delete positives, then score the set.
pub fn holdout_scores(
    g: &CoauthorGraph,
    set: &EvaluationSet,
    kind: ScoreKind,
) -> Result<Vec<LabeledScore>> {
    score_labeled(&training_graph(g, set), set, kind)
}

/// Thresholded confusion matrix with (TPR, TNR, PR). A pair is predicted
/// as a link iff its score exceeds `t`. Precision of an empty prediction
/// set is 1.
pub fn confusion_at_threshold(
    scores: &[LabeledScore],
    t: f64,
) -> (ConfusionMatrix, f64, f64, f64) {
    let mut m = ConfusionMatrix {
        tp: 0,
        fp: 0,
        tn: 0,
        fn_: 0,
    };
    for s in scores {
        match (s.positive, s.value > t) {
            (true, true) => m.tp += 1,
            (true, false) => m.fn_ += 1,
            (false, true) => m.fp += 1,
            (false, false) => m.tn += 1,
        }
    }
    let tpr = if m.tp + m.fn_ == 0 {
        0.0
    } else {
        m.tp as f64 / (m.tp + m.fn_) as f64
    };
    let tnr = if m.tn + m.fp == 0 {
        0.0
    } else {
        m.tn as f64 / (m.tn + m.fp) as f64
    };
    let pr = if m.tp + m.fp == 0 {
        1.0
    } else {
        m.tp as f64 / (m.tp + m.fp) as f64
    };
    (m, tpr, tnr, pr)
}

/// Splits into descending-score tie groups of (positives, negatives) counts.
fn tie_groups(scores: &[LabeledScore]) -> Vec<(usize, usize)> {
    let mut sorted: Vec<(f64, bool)> = scores.iter().map(|s| (s.value, s.positive)).collect();
    sorted.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("scores must not be NaN"));
    let mut groups: Vec<(usize, usize)> = Vec::new();
    let mut idx = 0;
    while idx < sorted.len() {
        let value = sorted[idx].0;
        let (mut pos, mut neg) = (0usize, 0usize);
        while idx < sorted.len() && sorted[idx].0 == value {
            if sorted[idx].1 {
                pos += 1;
            } else {
                neg += 1;
            }
            idx += 1;
        }
        groups.push((pos, neg));
    }
    groups
}

/// ROC curve and its area. The area comes from the rank statistic
/// (ties credited 0.5), which equals the trapezoidal area of the swept
/// curve; the curve points are emitted for export.
pub fn roc_auc(scores: &[LabeledScore]) -> Result<CurveResult> {
    let total_pos = scores.iter().filter(|s| s.positive).count();
    let total_neg = scores.len() - total_pos;
    if total_pos == 0 || total_neg == 0 {
        return Err(Error::SingleClass);
    }
    let groups = tie_groups(scores);

    let mut points = vec![(0.0, 0.0)];
    let (mut seen_pos, mut seen_neg) = (0usize, 0usize);
    let mut correct = 0.0f64;
    for &(pos, neg) in &groups {
        // Every positive in the group outranks all lower negatives and ties
        // with the group's own negatives.
        correct += pos as f64 * (total_neg - seen_neg - neg) as f64;
        correct += 0.5 * pos as f64 * neg as f64;
        seen_pos += pos;
        seen_neg += neg;
        points.push((
            seen_neg as f64 / total_neg as f64,
            seen_pos as f64 / total_pos as f64,
        ));
    }
    Ok(CurveResult {
        points,
        area: correct / (total_pos as f64 * total_neg as f64),
    })
}

/// Precision-recall curve and average precision. Within a tie group the
/// group's precision is applied to all of its positives.
pub fn pr_auc(scores: &[LabeledScore]) -> Result<CurveResult> {
    let total_pos = scores.iter().filter(|s| s.positive).count();
    if total_pos == 0 {
        return Err(Error::SingleClass);
    }
    let groups = tie_groups(scores);

    let mut points = Vec::new();
    let (mut seen_pos, mut seen) = (0usize, 0usize);
    let mut ap = 0.0f64;
    for &(pos, neg) in &groups {
        seen_pos += pos;
        seen += pos + neg;
        let precision = seen_pos as f64 / seen as f64;
        let recall = seen_pos as f64 / total_pos as f64;
        ap += precision * pos as f64;
        points.push((recall, precision));
    }
    Ok(CurveResult {
        points,
        area: ap / total_pos as f64,
    })
}

/// Per-score summary over several evaluation seeds.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreSummary {
    pub kind: ScoreKind,
    pub auc_mean: f64,
    pub prauc_mean: f64,
    pub auc_stderr: f64,
    pub prauc_stderr: f64,
}

fn mean_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Runs build -> holdout -> AUC/PRAUC for every seed and reports per-kind
/// means with standard errors. Seeds run in parallel under the `parallel`
/// feature. `holdout: false` scores the original graph in place.
pub fn evaluate_all(
    g: &CoauthorGraph,
    d: usize,
    kinds: &[ScoreKind],
    seeds: &[u64],
    holdout: bool,
) -> Result<Vec<ScoreSummary>> {
    let per_seed = |&seed: &u64| -> Result<Vec<(f64, f64)>> {
        let set = build_balanced_set(g, d, seed)?;
        let train = if holdout {
            training_graph(g, &set)
        } else {
            g.clone()
        };
        kinds
            .iter()
            .map(|&kind| {
                let labeled = score_labeled(&train, &set, kind)?;
                Ok((roc_auc(&labeled)?.area, pr_auc(&labeled)?.area))
            })
            .collect()
    };

    #[cfg(feature = "parallel")]
    let per_seed_results: Vec<Vec<(f64, f64)>> =
        seeds.par_iter().map(per_seed).collect::<Result<_>>()?;
    #[cfg(not(feature = "parallel"))]
    let per_seed_results: Vec<Vec<(f64, f64)>> =
        seeds.iter().map(per_seed).collect::<Result<_>>()?;

    Ok(kinds
        .iter()
        .enumerate()
        .map(|(k, &kind)| {
            let aucs: Vec<f64> = per_seed_results.iter().map(|r| r[k].0).collect();
            let praucs: Vec<f64> = per_seed_results.iter().map(|r| r[k].1).collect();
            let (auc_mean, auc_stderr) = mean_stderr(&aucs);
            let (prauc_mean, prauc_stderr) = mean_stderr(&praucs);
            ScoreSummary {
                kind,
                auc_mean,
                prauc_mean,
                auc_stderr,
                prauc_stderr,
            }
        })
        .collect())
}

/// Writes summaries in the `summary.csv` layout:
/// `kind,auc,prauc,stderr_auc,stderr_prauc,d,seed_count`.
pub fn write_summary_csv<W: std::io::Write>(
    rows: &[ScoreSummary],
    d: usize,
    seed_count: usize,
    mut w: W,
) -> Result<()> {
    writeln!(w, "kind,auc,prauc,stderr_auc,stderr_prauc,d,seed_count")?;
    for r in rows {
        writeln!(
            w,
            "{},{:.6},{:.6},{:.6},{:.6},{},{}",
            r.kind, r.auc_mean, r.prauc_mean, r.auc_stderr, r.prauc_stderr, d, seed_count
        )?;
    }
    Ok(())
}
