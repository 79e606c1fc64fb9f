//! Synthetic collaboration network generator.
//!
//! The network grows through research groups, each a single permanent
//! leader plus a rolling pool of active students. Per step every group may
//! publish one internal paper (probability `publish_prob`), up to
//! `inter_max` papers with its fixed partner group, and then updates its
//! pool: students at the activity threshold either found a new group
//! (probability `promotion_prob`) or go inactive, and one fresh student
//! joins every group. Coauthor counts are drawn from an empirical paper
//! size distribution, capped at the group size (or the combined size for
//! inter-group papers).

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::graph::{CoauthorGraph, EdgeData, NodeId};
use crate::ingest::SizePmf;
use crate::Result;

use std::collections::{HashMap, HashSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopRule {
    /// Stop once the node count reaches this value (checked at step end).
    Nodes(usize),
    /// Stop after this many steps.
    Steps(usize),
}

#[derive(Debug, Clone)]
pub struct ModelConfig {
    /// Probability a group publishes at each opportunity.
    pub publish_prob: f64,
    /// Maximum inter-group papers per partner pair per step.
    pub inter_max: u32,
    /// Probability a student at the threshold becomes a leader.
    pub promotion_prob: f64,
    /// Activity-period threshold; also the maximum active students per group.
    pub activity_threshold: u32,
    pub size_pmf: SizePmf,
    pub stop: StopRule,
    pub seed: u64,
    /// Attribute up to `inter_max` attempts to each group instead of each
    /// partner pair.
    pub intergroup_per_group: bool,
}

impl ModelConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.publish_prob) {
            return Err(Error::Config("publish probability must be in [0, 1]".into()));
        }
        if !(0.0..=1.0).contains(&self.promotion_prob) {
            return Err(Error::Config("promotion probability must be in [0, 1]".into()));
        }
        if self.activity_threshold < 1 {
            return Err(Error::Config("activity threshold must be >= 1".into()));
        }
        Ok(())
    }

    /// Reference parameters: c = 0.4, alpha = 3, f = 0.2, G = 7.
    pub fn reference(size_pmf: SizePmf, stop: StopRule, seed: u64) -> Self {
        ModelConfig {
            publish_prob: 0.4,
            inter_max: 3,
            promotion_prob: 0.2,
            activity_threshold: 7,
            size_pmf,
            stop,
            seed,
            intergroup_per_group: false,
        }
    }
}

/// Heavy-tailed authors-per-paper distribution shaped like the DBLP
/// computer-science corpus: mode at 2-3 authors, power-law-ish tail.
pub fn dblp_like_size_pmf() -> SizePmf {
    let mut weights: Vec<(u32, f64)> = vec![
        (1, 0.09),
        (2, 0.22),
        (3, 0.26),
        (4, 0.20),
        (5, 0.11),
        (6, 0.055),
        (7, 0.028),
        (8, 0.014),
    ];
    for l in 9..=16u32 {
        weights.push((l, 0.014 * (8f64 / l as f64).powf(3.0)));
    }
    SizePmf::from_weights(&weights).expect("static weights are valid")
}

#[derive(Debug, Clone, Copy)]
struct Student {
    node: NodeId,
    age: u32,
}

#[derive(Debug, Clone)]
struct Group {
    leader: NodeId,
    students: Vec<Student>,
    partner: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PaperMode {
    Intra,
    Inter,
}

/// Draws a paper size from the PMF restricted to the admissible range:
/// [1, G+1] for intra-group papers, [2, 2(G+1)] for inter-group papers
/// (the two leaders always author).
pub fn draw_coauthor_count<R: Rng>(
    size_pmf: &SizePmf,
    mode: PaperMode,
    activity_threshold: u32,
    rng: &mut R,
) -> Result<u32> {
    let g = activity_threshold;
    let (lo, hi) = match mode {
        PaperMode::Intra => (1, g + 1),
        PaperMode::Inter => (2, 2 * (g + 1)),
    };
    Ok(size_pmf.restricted(lo, hi)?.sample(rng))
}

/// Samples `count` distinct students without replacement, each draw
/// proportional to age + 1. Returns all of them when the pool is smaller.
pub fn select_students<R: Rng>(
    pool: &[(NodeId, u32)],
    count: usize,
    rng: &mut R,
) -> Vec<NodeId> {
    let mut pool: Vec<(NodeId, u32)> = pool.to_vec();
    let take = count.min(pool.len());
    let mut chosen = Vec::with_capacity(take);
    for _ in 0..take {
        let total: u64 = pool.iter().map(|&(_, age)| age as u64 + 1).sum();
        let mut target = rng.gen_range(0..total);
        let mut idx = 0;
        for (k, &(_, age)) in pool.iter().enumerate() {
            let w = age as u64 + 1;
            if target < w {
                idx = k;
                break;
            }
            target -= w;
        }
        chosen.push(pool.swap_remove(idx).0);
    }
    chosen
}

#[derive(Debug)]
pub struct ModelOutput {
    pub graph: CoauthorGraph,
    pub steps: usize,
    pub paper_count: usize,
}

struct SimState {
    groups: Vec<Group>,
    node_count: usize,
    publications: Vec<u32>,
    edges: HashMap<(NodeId, NodeId), EdgeData>,
    paper_count: usize,
}

impl SimState {
    fn new_node(&mut self) -> NodeId {
        let id = self.node_count as NodeId;
        self.node_count += 1;
        self.publications.push(0);
        id
    }

    fn record_paper(&mut self, authors: &[NodeId]) {
        let size = authors.len() as u32;
        for &a in authors {
            self.publications[a as usize] += 1;
        }
        for a in 0..authors.len() {
            for b in a + 1..authors.len() {
                let key = if authors[a] < authors[b] {
                    (authors[a], authors[b])
                } else {
                    (authors[b], authors[a])
                };
                let e = self.edges.entry(key).or_insert(EdgeData {
                    weight: 0,
                    paper_sizes: Vec::new(),
                });
                e.weight += 1;
                e.paper_sizes.push(size);
            }
        }
        self.paper_count += 1;
    }
}

/// Runs one realization of the growth model. Same config and seed give a
/// bit-identical output.
pub fn simulate(config: &ModelConfig) -> Result<ModelOutput> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let g = config.activity_threshold;

    let mut state = SimState {
        groups: Vec::new(),
        node_count: 0,
        publications: Vec::new(),
        edges: HashMap::new(),
        paper_count: 0,
    };
    // A leader and one student form the seed group.
    let leader = state.new_node();
    let student = state.new_node();
    state.groups.push(Group {
        leader,
        students: vec![Student {
            node: student,
            age: 0,
        }],
        partner: None,
    });

    let mut steps = 0usize;
    loop {
        steps += 1;

        // Intra-group papers.
        for gi in 0..state.groups.len() {
            if !rng.gen_bool(config.publish_prob) {
                continue;
            }
            let l = draw_coauthor_count(&config.size_pmf, PaperMode::Intra, g, &mut rng)?;
            let pool: Vec<(NodeId, u32)> = state.groups[gi]
                .students
                .iter()
                .map(|s| (s.node, s.age))
                .collect();
            let mut authors = vec![state.groups[gi].leader];
            authors.extend(select_students(&pool, l as usize - 1, &mut rng));
            state.record_paper(&authors);
        }

        // Inter-group papers: each partner pair gets up to `inter_max`
        // attempts, run by the earlier group in creation order (or by every
        // group under the per-group variant).
        let mut done_pairs: HashSet<(usize, usize)> = HashSet::new();
        for gi in 0..state.groups.len() {
            let Some(pj) = state.groups[gi].partner else {
                continue;
            };
            let key = (gi.min(pj), gi.max(pj));
            if !config.intergroup_per_group && !done_pairs.insert(key) {
                continue;
            }
            for _ in 0..config.inter_max {
                if !rng.gen_bool(config.publish_prob) {
                    continue;
                }
                let l = draw_coauthor_count(&config.size_pmf, PaperMode::Inter, g, &mut rng)?;
                let pool: Vec<(NodeId, u32)> = state.groups[gi]
                    .students
                    .iter()
                    .chain(state.groups[pj].students.iter())
                    .map(|s| (s.node, s.age))
                    .collect();
                let mut authors = vec![state.groups[gi].leader, state.groups[pj].leader];
                authors.extend(select_students(&pool, l as usize - 2, &mut rng));
                state.record_paper(&authors);
            }
        }

        // Resource update: age the pools, promote or retire students at the
        // threshold, then add a fresh student to every group (including ones
        // founded this step).
        let existing = state.groups.len();
        for gi in 0..existing {
            let mut keep = Vec::with_capacity(state.groups[gi].students.len());
            for mut s in std::mem::take(&mut state.groups[gi].students) {
                s.age += 1;
                if s.age < g {
                    keep.push(s);
                    continue;
                }
                if rng.gen_bool(config.promotion_prob) {
                    // The student's node becomes the leader of a new group,
                    // partnered with a uniformly random existing group.
                    let new_idx = state.groups.len();
                    let partner = rng.gen_range(0..new_idx);
                    state.groups.push(Group {
                        leader: s.node,
                        students: Vec::new(),
                        partner: Some(partner),
                    });
                }
                // Otherwise the node goes inactive and is never touched again.
            }
            state.groups[gi].students = keep;
        }
        for gi in 0..state.groups.len() {
            let node = state.new_node();
            state.groups[gi].students.push(Student { node, age: 0 });
        }

        let stop = match config.stop {
            StopRule::Nodes(n) => state.node_count >= n,
            StopRule::Steps(t) => steps >= t,
        };
        if stop {
            break;
        }
    }

    let mut edges: Vec<(NodeId, NodeId, EdgeData)> = state
        .edges
        .into_iter()
        .map(|((i, j), mut data)| {
            data.paper_sizes.sort_unstable();
            (i, j, data)
        })
        .collect();
    edges.sort_unstable_by_key(|&(i, j, _)| (i, j));
    let graph = CoauthorGraph::from_parts(state.node_count, edges, state.publications, None)?;
    Ok(ModelOutput {
        graph,
        steps,
        paper_count: state.paper_count,
    })
}
