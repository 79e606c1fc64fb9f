//! In-memory weighted coauthorship graph.
//!
//! The graph is immutable after construction and cheap to query: adjacency
//! lists are sorted, so common-neighbour counts are linear merges and edge
//! lookups are binary searches. All ids are dense `0..node_count`.

use std::collections::HashMap;

use crate::error::Error;
use crate::Result;

/// Dense node index, contiguous within one graph.
pub type NodeId = u32;

/// One publication with a deduplicated author list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaperRecord {
    pub paper_id: String,
    pub authors: Vec<String>,
}

impl PaperRecord {
    pub fn new(paper_id: impl Into<String>, authors: &[&str]) -> Self {
        PaperRecord {
            paper_id: paper_id.into(),
            authors: authors.iter().map(|s| s.to_string()).collect(),
        }
    }
}

/// Per-edge payload: joint paper count and the author counts of those papers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeData {
    /// Number of joint papers (symmetric tie strength).
    pub weight: u32,
    /// Author count of each joint paper, sorted ascending. `len() == weight`.
    pub paper_sizes: Vec<u32>,
}

impl EdgeData {
    /// Collaboration-discounted tie strength: sum of 1/(l-1) over joint papers.
    pub fn discounted_weight(&self) -> f64 {
        self.paper_sizes.iter().map(|&l| 1.0 / (l as f64 - 1.0)).sum()
    }
}

#[derive(Debug, Clone, Copy)]
struct Neighbor {
    node: NodeId,
    edge: u32,
}

/// Immutable weighted undirected coauthorship network.
#[derive(Debug, Clone)]
pub struct CoauthorGraph {
    adjacency: Vec<Vec<Neighbor>>,
    edges: Vec<(NodeId, NodeId, EdgeData)>,
    publications: Vec<u32>,
    names: Option<Vec<String>>,
}

impl CoauthorGraph {
    /// Builds the graph from publication records: every unordered author pair
    /// of a paper gains one unit of weight and records the paper's size, and
    /// every author (including sole authors) gains one publication.
    pub fn build_from_papers(papers: &[PaperRecord]) -> Self {
        let mut index: HashMap<&str, NodeId> = HashMap::new();
        let mut names: Vec<String> = Vec::new();
        let mut publications: Vec<u32> = Vec::new();
        let mut edge_map: HashMap<(NodeId, NodeId), EdgeData> = HashMap::new();

        for paper in papers {
            // Duplicate names inside one author list would create self-loops
            // and double counting, so they are collapsed first.
            let mut ids: Vec<NodeId> = Vec::with_capacity(paper.authors.len());
            for name in &paper.authors {
                let id = *index.entry(name.as_str()).or_insert_with(|| {
                    names.push(name.clone());
                    publications.push(0);
                    (names.len() - 1) as NodeId
                });
                if !ids.contains(&id) {
                    ids.push(id);
                }
            }
            let size = ids.len() as u32;
            for &id in &ids {
                publications[id as usize] += 1;
            }
            for a in 0..ids.len() {
                for b in a + 1..ids.len() {
                    let key = if ids[a] < ids[b] {
                        (ids[a], ids[b])
                    } else {
                        (ids[b], ids[a])
                    };
                    let entry = edge_map.entry(key).or_insert(EdgeData {
                        weight: 0,
                        paper_sizes: Vec::new(),
                    });
                    entry.weight += 1;
                    entry.paper_sizes.push(size);
                }
            }
        }

        let mut edges: Vec<(NodeId, NodeId, EdgeData)> = edge_map
            .into_iter()
            .map(|((i, j), mut data)| {
                data.paper_sizes.sort_unstable();
                (i, j, data)
            })
            .collect();
        edges.sort_unstable_by_key(|&(i, j, _)| (i, j));

        Self::assemble(names.len(), edges, publications, Some(names))
    }

    /// Builds a graph from explicit parts. Edge endpoints must be valid ids;
    /// duplicate or self-loop edges are a caller bug.
    pub fn from_parts(
        node_count: usize,
        mut edges: Vec<(NodeId, NodeId, EdgeData)>,
        publications: Vec<u32>,
        names: Option<Vec<String>>,
    ) -> Result<Self> {
        assert_eq!(publications.len(), node_count);
        for edge in edges.iter_mut() {
            if edge.0 == edge.1 {
                return Err(Error::Config(format!("self-loop at node {}", edge.0)));
            }
            if edge.0 as usize >= node_count || edge.1 as usize >= node_count {
                return Err(Error::InvalidNode(edge.0.max(edge.1), node_count));
            }
            if edge.0 > edge.1 {
                std::mem::swap(&mut edge.0, &mut edge.1);
            }
            edge.2.paper_sizes.sort_unstable();
        }
        edges.sort_unstable_by_key(|&(i, j, _)| (i, j));
        edges.dedup_by(|a, b| (a.0, a.1) == (b.0, b.1));
        Ok(Self::assemble(node_count, edges, publications, names))
    }

    fn assemble(
        node_count: usize,
        edges: Vec<(NodeId, NodeId, EdgeData)>,
        publications: Vec<u32>,
        names: Option<Vec<String>>,
    ) -> Self {
        let mut adjacency: Vec<Vec<Neighbor>> = vec![Vec::new(); node_count];
        for (idx, &(i, j, _)) in edges.iter().enumerate() {
            adjacency[i as usize].push(Neighbor {
                node: j,
                edge: idx as u32,
            });
            adjacency[j as usize].push(Neighbor {
                node: i,
                edge: idx as u32,
            });
        }
        for list in adjacency.iter_mut() {
            list.sort_unstable_by_key(|n| n.node);
        }
        CoauthorGraph {
            adjacency,
            edges,
            publications,
            names,
        }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, i: NodeId) -> usize {
        self.adjacency[i as usize].len()
    }

    pub fn publications(&self, i: NodeId) -> u32 {
        self.publications[i as usize]
    }

    pub fn publication_counts(&self) -> &[u32] {
        &self.publications
    }

    pub fn name(&self, i: NodeId) -> Option<&str> {
        self.names.as_ref().map(|n| n[i as usize].as_str())
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn check_node(&self, i: NodeId) -> Result<()> {
        if (i as usize) < self.node_count() {
            Ok(())
        } else {
            Err(Error::InvalidNode(i, self.node_count()))
        }
    }

    pub fn neighbors(&self, i: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.adjacency[i as usize].iter().map(|n| n.node)
    }

    /// Neighbours of `i` together with the edge data of each incident edge.
    pub fn neighbor_edges(&self, i: NodeId) -> impl Iterator<Item = (NodeId, &EdgeData)> + '_ {
        self.adjacency[i as usize]
            .iter()
            .map(move |n| (n.node, &self.edges[n.edge as usize].2))
    }

    /// All undirected edges as (i, j, data) with i < j.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, &EdgeData)> + '_ {
        self.edges.iter().map(|(i, j, d)| (*i, *j, d))
    }

    pub fn has_edge(&self, i: NodeId, j: NodeId) -> bool {
        self.adjacency[i as usize]
            .binary_search_by_key(&j, |n| n.node)
            .is_ok()
    }

    pub fn edge_data(&self, i: NodeId, j: NodeId) -> Option<&EdgeData> {
        self.adjacency[i as usize]
            .binary_search_by_key(&j, |n| n.node)
            .ok()
            .map(|pos| &self.edges[self.adjacency[i as usize][pos].edge as usize].2)
    }

    /// Symmetric tie strength w_ij, 0 for non-edges.
    pub fn weight(&self, i: NodeId, j: NodeId) -> u32 {
        self.edge_data(i, j).map_or(0, |d| d.weight)
    }

    /// Node strength: sum of incident edge weights.
    pub fn strength(&self, i: NodeId) -> u32 {
        self.neighbor_edges(i).map(|(_, d)| d.weight).sum()
    }

    /// Number of common neighbours of a (not necessarily adjacent) pair.
    /// Neither endpoint counts as its own neighbour.
    pub fn common_neighbor_count(&self, i: NodeId, j: NodeId) -> Result<usize> {
        self.check_node(i)?;
        self.check_node(j)?;
        Ok(self.common_neighbors(i, j).count())
    }

    /// Sorted-merge iterator over common neighbours of `i` and `j`.
    pub fn common_neighbors(&self, i: NodeId, j: NodeId) -> CommonNeighbors<'_> {
        CommonNeighbors {
            left: &self.adjacency[i as usize],
            right: &self.adjacency[j as usize],
        }
    }

    /// Induced subgraph on the largest connected component, densely
    /// re-indexed. Ties are broken towards the component containing the
    /// smallest original id. Publication counts carry over unchanged.
    pub fn largest_component(&self) -> CoauthorGraph {
        let n = self.node_count();
        if n == 0 {
            return self.clone();
        }
        let mut component = vec![u32::MAX; n];
        let mut best: Option<(usize, u32)> = None; // (size, root)
        let mut queue = Vec::new();
        let mut comp_id = 0u32;
        for start in 0..n as NodeId {
            if component[start as usize] != u32::MAX {
                continue;
            }
            component[start as usize] = comp_id;
            queue.push(start);
            let mut size = 0usize;
            while let Some(u) = queue.pop() {
                size += 1;
                for v in self.neighbors(u) {
                    if component[v as usize] == u32::MAX {
                        component[v as usize] = comp_id;
                        queue.push(v);
                    }
                }
            }
            // Strict > keeps the earliest (smallest root id) component on ties.
            if best.map_or(true, |(s, _)| size > s) {
                best = Some((size, comp_id));
            }
            comp_id += 1;
        }
        let keep = best.expect("n > 0").1;

        let mut remap = vec![u32::MAX; n];
        let mut publications = Vec::new();
        let mut names = self.names.as_ref().map(|_| Vec::new());
        for u in 0..n {
            if component[u] == keep {
                remap[u] = publications.len() as u32;
                publications.push(self.publications[u]);
                if let (Some(out), Some(src)) = (names.as_mut(), self.names.as_ref()) {
                    out.push(src[u].clone());
                }
            }
        }
        let edges: Vec<(NodeId, NodeId, EdgeData)> = self
            .edges
            .iter()
            .filter(|(i, _, _)| component[*i as usize] == keep)
            .map(|(i, j, d)| (remap[*i as usize], remap[*j as usize], d.clone()))
            .collect();
        Self::assemble(publications.len(), edges, publications, names)
    }

    /// Copy of the graph with the given undirected edges deleted.
    /// Publication counts are left untouched.
    pub fn without_edges(&self, remove: &[(NodeId, NodeId)]) -> CoauthorGraph {
        let removed: std::collections::HashSet<(NodeId, NodeId)> = remove
            .iter()
            .map(|&(i, j)| if i < j { (i, j) } else { (j, i) })
            .collect();
        let edges: Vec<(NodeId, NodeId, EdgeData)> = self
            .edges
            .iter()
            .filter(|(i, j, _)| !removed.contains(&(*i, *j)))
            .cloned()
            .collect();
        Self::assemble(
            self.node_count(),
            edges,
            self.publications.clone(),
            self.names.clone(),
        )
    }
}

/// Iterator over common neighbours, with the edge indices on both sides.
pub struct CommonNeighbors<'a> {
    left: &'a [Neighbor],
    right: &'a [Neighbor],
}

impl Iterator for CommonNeighbors<'_> {
    /// (z, edge index of (i,z), edge index of (j,z))
    type Item = (NodeId, u32, u32);

    fn next(&mut self) -> Option<Self::Item> {
        while let (Some(l), Some(r)) = (self.left.first(), self.right.first()) {
            match l.node.cmp(&r.node) {
                std::cmp::Ordering::Less => self.left = &self.left[1..],
                std::cmp::Ordering::Greater => self.right = &self.right[1..],
                std::cmp::Ordering::Equal => {
                    let item = (l.node, l.edge, r.edge);
                    self.left = &self.left[1..];
                    self.right = &self.right[1..];
                    return Some(item);
                }
            }
        }
        None
    }
}

impl CoauthorGraph {
    /// Edge data by internal edge index, as yielded by [`common_neighbors`].
    pub(crate) fn edge_by_index(&self, idx: u32) -> &EdgeData {
        &self.edges[idx as usize].2
    }
}


#[cfg(test)]
pub(crate) use tests::toy as toy_graph;
