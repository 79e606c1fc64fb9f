//! Local edge metrics: symmetric and asymmetric neighbourhood overlap,
//! plain/discounted/asymmetric tie strengths, edge clustering.
//!
//! All of these are defined on existing edges. Degenerate denominators
//! (pendant endpoints, isolated dyads) only occur together with a zero
//! numerator and yield 0.

use crate::error::Error;
use crate::graph::{CoauthorGraph, NodeId};
use crate::Result;

/// One directed observation of an edge: everything Figs.-style analyses need.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeObservation {
    pub i: NodeId,
    pub j: NodeId,
    pub degree_i: usize,
    pub degree_j: usize,
    pub common: usize,
    /// Symmetric overlap O, identical in both directions.
    pub overlap: f64,
    /// Asymmetric overlap Q_ij as seen from i.
    pub asym_overlap: f64,
    /// Joint paper count w.
    pub weight: u32,
    /// Collaboration-discounted strength w*.
    pub discounted_weight: f64,
    /// Asymmetric tie strength v_ij = w / p_i.
    pub asym_weight: f64,
}

fn require_edge(g: &CoauthorGraph, i: NodeId, j: NodeId) -> Result<()> {
    g.check_node(i)?;
    g.check_node(j)?;
    if !g.has_edge(i, j) {
        return Err(Error::NotAnEdge(i, j));
    }
    Ok(())
}

/// O_ij = n / ((k_i - 1) + (k_j - 1) - n); 0 for an isolated dyad.
pub fn symmetric_overlap(g: &CoauthorGraph, i: NodeId, j: NodeId) -> Result<f64> {
    require_edge(g, i, j)?;
    let n = g.common_neighbors(i, j).count() as f64;
    let denom = (g.degree(i) - 1) as f64 + (g.degree(j) - 1) as f64 - n;
    Ok(if denom == 0.0 { 0.0 } else { n / denom })
}

/// Q_ij = n / (k_i - 1); 0 for a pendant i.
pub fn asymmetric_overlap(g: &CoauthorGraph, i: NodeId, j: NodeId) -> Result<f64> {
    require_edge(g, i, j)?;
    let k = g.degree(i);
    if k <= 1 {
        return Ok(0.0);
    }
    let n = g.common_neighbors(i, j).count() as f64;
    Ok(n / (k - 1) as f64)
}

/// w*_ij = sum over joint papers of 1/(l - 1).
pub fn newman_tie_strength(g: &CoauthorGraph, i: NodeId, j: NodeId) -> Result<f64> {
    require_edge(g, i, j)?;
    Ok(g.edge_data(i, j).expect("edge checked").discounted_weight())
}

/// v_ij = w_ij / p_i.
pub fn asymmetric_tie_strength(g: &CoauthorGraph, i: NodeId, j: NodeId) -> Result<f64> {
    require_edge(g, i, j)?;
    let p = g.publications(i);
    if p == 0 {
        return Err(Error::Config(format!(
            "node {i} has an edge but zero publications"
        )));
    }
    Ok(g.weight(i, j) as f64 / p as f64)
}

/// Edge clustering C_ij = n / min(k_i - 1, k_j - 1); symmetric.
pub fn edge_clustering(g: &CoauthorGraph, i: NodeId, j: NodeId) -> Result<f64> {
    require_edge(g, i, j)?;
    let m = g.degree(i).min(g.degree(j));
    if m <= 1 {
        return Ok(0.0);
    }
    let n = g.common_neighbors(i, j).count() as f64;
    Ok(n / (m - 1) as f64)
}

/// All metrics for the directed edge (i, j) in one pass.
pub fn observe_edge(g: &CoauthorGraph, i: NodeId, j: NodeId) -> Result<EdgeObservation> {
    require_edge(g, i, j)?;
    let data = g.edge_data(i, j).expect("edge checked");
    let (ki, kj) = (g.degree(i), g.degree(j));
    let n = g.common_neighbors(i, j).count();
    let o_denom = (ki - 1) as f64 + (kj - 1) as f64 - n as f64;
    Ok(EdgeObservation {
        i,
        j,
        degree_i: ki,
        degree_j: kj,
        common: n,
        overlap: if o_denom == 0.0 { 0.0 } else { n as f64 / o_denom },
        asym_overlap: if ki <= 1 { 0.0 } else { n as f64 / (ki - 1) as f64 },
        weight: data.weight,
        discounted_weight: data.discounted_weight(),
        asym_weight: data.weight as f64 / g.publications(i) as f64,
    })
}

/// Both directed observations of every edge, (i,j) and (j,i).
pub fn observe_all_edges(g: &CoauthorGraph) -> Vec<EdgeObservation> {
    let mut out = Vec::with_capacity(2 * g.edge_count());
    for (i, j, _) in g.edges() {
        out.push(observe_edge(g, i, j).expect("edge exists"));
        out.push(observe_edge(g, j, i).expect("edge exists"));
    }
    out
}
