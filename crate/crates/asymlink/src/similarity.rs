//! Pairwise similarity scores for link prediction.
//!
//! All sixteen scores are sums over the common neighbourhood of the pair,
//! so every score is symmetric and vanishes when the pair shares no
//! neighbour. Degrees, weights, strengths and publication counts are read
//! from the graph handed in; the evaluation layer decides whether that
//! graph has held-out edges removed.
//!
//! Unlike the edge metrics, the pair-level formulas use plain k in
//! denominators (not k - 1), except for the triad family where the
//! asymmetric overlap of an existing edge appears verbatim.

use crate::error::Error;
use crate::graph::{CoauthorGraph, NodeId};
use crate::Result;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScoreKind {
    /// Common neighbour count.
    Cn,
    /// Weighted common neighbours: sum of w_zi + w_zj.
    Wcn,
    /// Jaccard: n / (k_i + k_j - n).
    Jc,
    /// Sum of asymmetric overlaps: n/k_i + n/k_j.
    Qq,
    /// Log-degree variant: n/log k_i + n/log k_j.
    Qa,
    /// Resource allocation: sum of 1/k_z.
    Ra,
    /// Adamic-Adar: sum of 1/log k_z.
    Aa,
    /// Weighted resource allocation: sum of (w_zi + w_zj)/s_z.
    Wra,
    /// Asymmetric triad, middle perspective: sum of Q_zi + Q_zj.
    At1,
    /// Asymmetric triad, endpoint perspective: sum of Q_iz + Q_jz.
    At2,
    /// Asymmetric triad, mixed perspective: sum of Q_iz + Q_zj.
    At3,
    /// Weighted triads: v in place of Q.
    Wat1,
    Wat2,
    Wat3,
    /// wAT1 + QQ.
    Mix1,
    /// wAT1 + QA.
    Mix2,
}

pub const ALL_SCORE_KINDS: [ScoreKind; 16] = [
    ScoreKind::Cn,
    ScoreKind::Wcn,
    ScoreKind::Jc,
    ScoreKind::Qq,
    ScoreKind::Qa,
    ScoreKind::Ra,
    ScoreKind::Aa,
    ScoreKind::Wra,
    ScoreKind::At1,
    ScoreKind::At2,
    ScoreKind::At3,
    ScoreKind::Wat1,
    ScoreKind::Wat2,
    ScoreKind::Wat3,
    ScoreKind::Mix1,
    ScoreKind::Mix2,
];

impl ScoreKind {
    pub fn token(self) -> &'static str {
        match self {
            ScoreKind::Cn => "cn",
            ScoreKind::Wcn => "wcn",
            ScoreKind::Jc => "jc",
            ScoreKind::Qq => "qq",
            ScoreKind::Qa => "qa",
            ScoreKind::Ra => "ra",
            ScoreKind::Aa => "aa",
            ScoreKind::Wra => "wra",
            ScoreKind::At1 => "at1",
            ScoreKind::At2 => "at2",
            ScoreKind::At3 => "at3",
            ScoreKind::Wat1 => "wat1",
            ScoreKind::Wat2 => "wat2",
            ScoreKind::Wat3 => "wat3",
            ScoreKind::Mix1 => "mix1",
            ScoreKind::Mix2 => "mix2",
        }
    }
}

impl std::fmt::Display for ScoreKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.token())
    }
}

impl std::str::FromStr for ScoreKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ALL_SCORE_KINDS
            .iter()
            .copied()
            .find(|k| k.token() == s.to_ascii_lowercase())
            .ok_or_else(|| {
                let valid: Vec<&str> = ALL_SCORE_KINDS.iter().map(|k| k.token()).collect();
                Error::Config(format!(
                    "unknown score '{s}' (valid: {})",
                    valid.join(", ")
                ))
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoredPair {
    pub i: NodeId,
    pub j: NodeId,
    pub kind: ScoreKind,
    pub value: f64,
}

/// log k with the pendant-node clamp: k <= 1 falls back to log 2 so the
/// Adamic-Adar-style terms stay finite on training graphs with pendant
/// nodes.
fn safe_log_degree(k: usize) -> f64 {
    (k.max(2) as f64).ln()
}

/// Asymmetric overlap of the existing edge (x, y): n_xy / (k_x - 1).
fn edge_asym_overlap(g: &CoauthorGraph, x: NodeId, y: NodeId) -> f64 {
    let k = g.degree(x);
    if k <= 1 {
        return 0.0;
    }
    g.common_neighbors(x, y).count() as f64 / (k - 1) as f64
}

/// Evaluates one similarity score for a (typically non-adjacent) pair.
pub fn score(g: &CoauthorGraph, i: NodeId, j: NodeId, kind: ScoreKind) -> Result<f64> {
    g.check_node(i)?;
    g.check_node(j)?;
    if i == j {
        return Err(Error::Config("self-pair in similarity scoring".into()));
    }
    // The mixed triad scores (at3/wat3) read the pair orientation; fixing a
    // canonical orientation makes every score a function of the unordered
    // pair.
    let (i, j) = (i.min(j), i.max(j));

    let common: Vec<(NodeId, u32, u32)> = g.common_neighbors(i, j).collect();
    let n = common.len() as f64;
    if common.is_empty() {
        return Ok(0.0);
    }
    let (ki, kj) = (g.degree(i), g.degree(j));

    let value = match kind {
        ScoreKind::Cn => n,
        ScoreKind::Wcn => common
            .iter()
            .map(|&(_, ei, ej)| {
                (g.edge_by_index(ei).weight + g.edge_by_index(ej).weight) as f64
            })
            .sum(),
        ScoreKind::Jc => n / (ki as f64 + kj as f64 - n),
        ScoreKind::Qq => n / ki as f64 + n / kj as f64,
        ScoreKind::Qa => n / safe_log_degree(ki) + n / safe_log_degree(kj),
        ScoreKind::Ra => common
            .iter()
            .map(|&(z, _, _)| 1.0 / g.degree(z) as f64)
            .sum(),
        ScoreKind::Aa => common
            .iter()
            .map(|&(z, _, _)| 1.0 / safe_log_degree(g.degree(z)))
            .sum(),
        ScoreKind::Wra => common
            .iter()
            .map(|&(z, ei, ej)| {
                let num = (g.edge_by_index(ei).weight + g.edge_by_index(ej).weight) as f64;
                num / g.strength(z) as f64
            })
            .sum(),
        ScoreKind::At1 => common
            .iter()
            .map(|&(z, _, _)| {
                // A common neighbour always has k_z >= 2.
                let nzi = g.common_neighbors(z, i).count() as f64;
                let nzj = g.common_neighbors(z, j).count() as f64;
                (nzi + nzj) / (g.degree(z) - 1) as f64
            })
            .sum(),
        ScoreKind::At2 => common
            .iter()
            .map(|&(z, _, _)| edge_asym_overlap(g, i, z) + edge_asym_overlap(g, j, z))
            .sum(),
        ScoreKind::At3 => common
            .iter()
            .map(|&(z, _, _)| edge_asym_overlap(g, i, z) + edge_asym_overlap(g, z, j))
            .sum(),
        ScoreKind::Wat1 => common
            .iter()
            .map(|&(z, ei, ej)| {
                let p = g.publications(z) as f64;
                (g.edge_by_index(ei).weight + g.edge_by_index(ej).weight) as f64 / p
            })
            .sum(),
        ScoreKind::Wat2 => common
            .iter()
            .map(|&(_, ei, ej)| {
                g.edge_by_index(ei).weight as f64 / g.publications(i) as f64
                    + g.edge_by_index(ej).weight as f64 / g.publications(j) as f64
            })
            .sum(),
        ScoreKind::Wat3 => common
            .iter()
            .map(|&(z, ei, ej)| {
                g.edge_by_index(ei).weight as f64 / g.publications(i) as f64
                    + g.edge_by_index(ej).weight as f64 / g.publications(z) as f64
            })
            .sum(),
        ScoreKind::Mix1 => {
            score(g, i, j, ScoreKind::Wat1)? + score(g, i, j, ScoreKind::Qq)?
        }
        ScoreKind::Mix2 => {
            score(g, i, j, ScoreKind::Wat1)? + score(g, i, j, ScoreKind::Qa)?
        }
    };
    Ok(value)
}

/// Scores a batch of pairs, preserving input order. With the `parallel`
/// feature the pairs are scored on the rayon pool; output is identical
/// either way.
pub fn score_batch(
    g: &CoauthorGraph,
    pairs: &[(NodeId, NodeId)],
    kind: ScoreKind,
) -> Result<Vec<ScoredPair>> {
    #[cfg(feature = "parallel")]
    {
        pairs
            .par_iter()
            .map(|&(i, j)| {
                score(g, i, j, kind).map(|value| ScoredPair { i, j, kind, value })
            })
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        score_batch_sequential(g, pairs, kind)
    }
}

/// Single-threaded batch scoring, always available (benchmark baseline).
pub fn score_batch_sequential(
    g: &CoauthorGraph,
    pairs: &[(NodeId, NodeId)],
    kind: ScoreKind,
) -> Result<Vec<ScoredPair>> {
    pairs
        .iter()
        .map(|&(i, j)| score(g, i, j, kind).map(|value| ScoredPair { i, j, kind, value }))
        .collect()
}
