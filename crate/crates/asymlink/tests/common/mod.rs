//! Shared test helpers: a random paper-corpus generator and an independent
//! brute-force similarity oracle built on hash-set intersections.
//!
//! Each consumer uses a subset of these helpers.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use asymlink::graph::{CoauthorGraph, NodeId, PaperRecord};
use asymlink::similarity::ScoreKind;

/// Random corpus: `papers` papers over `authors` author names, 2-5 authors
/// each (plus occasional singletons).
pub fn random_papers(authors: usize, papers: usize, seed: u64) -> Vec<PaperRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..papers)
        .map(|p| {
            let size = if rng.gen_bool(0.05) {
                1
            } else {
                rng.gen_range(2..=5usize)
            };
            let mut names: Vec<String> = Vec::new();
            while names.len() < size {
                let a = format!("n{}", rng.gen_range(0..authors));
                if !names.contains(&a) {
                    names.push(a);
                }
            }
            PaperRecord {
                paper_id: format!("P{p}"),
                authors: names,
            }
        })
        .collect()
}

/// Brute-force reference built straight from the paper list. Neighbour sets
/// are unsorted hash sets, intersections are set intersections, and every
/// score is written out from its formula, independent of the library's
/// merge-based engine.
pub struct Oracle {
    adj: Vec<HashMap<u32, u32>>, // neighbour -> joint paper count
    pubs: Vec<u32>,
}

impl Oracle {
    /// Builds from the graph's own name table so node ids line up, but from
    /// the raw papers for all quantities.
    pub fn new(papers: &[PaperRecord], g: &CoauthorGraph) -> Self {
        let names = g.names().expect("graphs built from papers carry names");
        let index: HashMap<&str, u32> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i as u32))
            .collect();
        let mut adj: Vec<HashMap<u32, u32>> = vec![HashMap::new(); names.len()];
        let mut pubs = vec![0u32; names.len()];
        for paper in papers {
            let mut ids: Vec<u32> = Vec::new();
            for name in &paper.authors {
                let id = index[name.as_str()];
                if !ids.contains(&id) {
                    ids.push(id);
                }
            }
            for &a in &ids {
                pubs[a as usize] += 1;
            }
            for x in 0..ids.len() {
                for y in x + 1..ids.len() {
                    *adj[ids[x] as usize].entry(ids[y]).or_insert(0) += 1;
                    *adj[ids[y] as usize].entry(ids[x]).or_insert(0) += 1;
                }
            }
        }
        Oracle { adj, pubs }
    }

    fn neighbors(&self, i: u32) -> HashSet<u32> {
        self.adj[i as usize].keys().copied().collect()
    }

    fn k(&self, i: u32) -> f64 {
        self.adj[i as usize].len() as f64
    }

    fn w(&self, i: u32, j: u32) -> u32 {
        self.adj[i as usize].get(&j).copied().unwrap_or(0)
    }

    fn strength(&self, i: u32) -> f64 {
        self.adj[i as usize].values().map(|&w| w as f64).sum()
    }

    fn n(&self, i: u32, j: u32) -> f64 {
        self.common(i, j).len() as f64
    }

    /// Common neighbourhood, sorted so summation order matches the engine's
    /// ascending merge (float sums then agree bit for bit).
    fn common(&self, i: u32, j: u32) -> Vec<u32> {
        let mut zs: Vec<u32> = self
            .neighbors(i)
            .intersection(&self.neighbors(j))
            .copied()
            .collect();
        zs.sort_unstable();
        zs
    }

    fn ln_k(&self, i: u32) -> f64 {
        (self.k(i).max(2.0)).ln()
    }

    /// Q of an existing edge; a pendant focal node has n = 0, so the 0/0
    /// term is 0.
    fn q(&self, x: u32, y: u32) -> f64 {
        if self.k(x) <= 1.0 {
            0.0
        } else {
            self.n(x, y) / (self.k(x) - 1.0)
        }
    }

    pub fn score(&self, i: u32, j: u32, kind: ScoreKind) -> f64 {
        let (i, j) = (i.min(j), i.max(j));
        let zs = self.common(i, j);
        if zs.is_empty() {
            return 0.0;
        }
        let n = zs.len() as f64;
        match kind {
            ScoreKind::Cn => n,
            ScoreKind::Wcn => zs
                .iter()
                .map(|&z| (self.w(z, i) + self.w(z, j)) as f64)
                .sum(),
            ScoreKind::Jc => n / (self.k(i) + self.k(j) - n),
            ScoreKind::Qq => n / self.k(i) + n / self.k(j),
            ScoreKind::Qa => n / self.ln_k(i) + n / self.ln_k(j),
            ScoreKind::Ra => zs.iter().map(|&z| 1.0 / self.k(z)).sum(),
            ScoreKind::Aa => zs.iter().map(|&z| 1.0 / self.ln_k(z)).sum(),
            ScoreKind::Wra => zs
                .iter()
                .map(|&z| (self.w(z, i) + self.w(z, j)) as f64 / self.strength(z))
                .sum(),
            ScoreKind::At1 => zs
                .iter()
                .map(|&z| (self.n(z, i) + self.n(z, j)) / (self.k(z) - 1.0))
                .sum(),
            ScoreKind::At2 => zs.iter().map(|&z| self.q(i, z) + self.q(j, z)).sum(),
            ScoreKind::At3 => zs.iter().map(|&z| self.q(i, z) + self.q(z, j)).sum(),
            ScoreKind::Wat1 => zs
                .iter()
                .map(|&z| {
                    (self.w(z, i) + self.w(z, j)) as f64 / self.pubs[z as usize] as f64
                })
                .sum(),
            ScoreKind::Wat2 => zs
                .iter()
                .map(|&z| {
                    self.w(i, z) as f64 / self.pubs[i as usize] as f64
                        + self.w(j, z) as f64 / self.pubs[j as usize] as f64
                })
                .sum(),
            ScoreKind::Wat3 => zs
                .iter()
                .map(|&z| {
                    self.w(i, z) as f64 / self.pubs[i as usize] as f64
                        + self.w(z, j) as f64 / self.pubs[z as usize] as f64
                })
                .sum(),
            ScoreKind::Mix1 => self.score(i, j, ScoreKind::Wat1) + self.score(i, j, ScoreKind::Qq),
            ScoreKind::Mix2 => self.score(i, j, ScoreKind::Wat1) + self.score(i, j, ScoreKind::Qa),
        }
    }
}

/// All unordered node pairs of a small graph.
pub fn all_pairs(g: &CoauthorGraph) -> Vec<(NodeId, NodeId)> {
    let n = g.node_count() as NodeId;
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
        }
    }
    pairs
}

pub fn is_log_based(kind: ScoreKind) -> bool {
    matches!(kind, ScoreKind::Qa | ScoreKind::Aa | ScoreKind::Mix2)
}
