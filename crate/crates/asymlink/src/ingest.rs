//! Bibliographic parsing and on-disk graph formats.
//!
//! Two line-oriented input formats are supported:
//! - `Tsv`: one paper per line, `paper_id<TAB>name1;name2;...`
//! - `Bipartite`: one author per line, `paper_id<TAB>name`, grouped by id
//!
//! Graphs persist as a node table `i<TAB>name<TAB>p_i` and an edge list
//! `i<TAB>j<TAB>w<TAB>l1,l2,...`, which reconstructs edge data exactly.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use crate::error::Error;
use crate::graph::{CoauthorGraph, EdgeData, NodeId, PaperRecord};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Tsv,
    Bipartite,
}

impl std::str::FromStr for InputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tsv" => Ok(InputFormat::Tsv),
            "bipartite" => Ok(InputFormat::Bipartite),
            other => Err(Error::Config(format!(
                "unknown input format '{other}' (expected tsv or bipartite)"
            ))),
        }
    }
}

/// Parses publication records from a line-oriented stream.
/// Author lists are deduplicated; blank lines are skipped.
pub fn parse_papers<R: BufRead>(reader: R, format: InputFormat) -> Result<Vec<PaperRecord>> {
    let mut records: Vec<PaperRecord> = Vec::new();
    let mut by_id: HashMap<String, usize> = HashMap::new();

    for (lineno, line) in reader.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let (paper_id, rest) = line
            .split_once('\t')
            .ok_or_else(|| Error::parse(lineno, "missing tab separator"))?;
        if paper_id.is_empty() {
            return Err(Error::parse(lineno, "empty paper id"));
        }
        match format {
            InputFormat::Tsv => {
                if by_id.contains_key(paper_id) {
                    return Err(Error::parse(lineno, format!("duplicate paper id '{paper_id}'")));
                }
                let mut authors = Vec::new();
                for name in rest.split(';') {
                    if name.is_empty() {
                        return Err(Error::parse(lineno, "empty author name"));
                    }
                    if !authors.iter().any(|a| a == name) {
                        authors.push(name.to_string());
                    }
                }
                by_id.insert(paper_id.to_string(), records.len());
                records.push(PaperRecord {
                    paper_id: paper_id.to_string(),
                    authors,
                });
            }
            InputFormat::Bipartite => {
                if rest.is_empty() || rest.contains('\t') {
                    return Err(Error::parse(lineno, "expected exactly one author name"));
                }
                let idx = *by_id.entry(paper_id.to_string()).or_insert_with(|| {
                    records.push(PaperRecord {
                        paper_id: paper_id.to_string(),
                        authors: Vec::new(),
                    });
                    records.len() - 1
                });
                if !records[idx].authors.iter().any(|a| a == rest) {
                    records[idx].authors.push(rest.to_string());
                }
            }
        }
    }
    Ok(records)
}

/// Drops papers with more authors than `max_authors` (dataset-specific
/// truncation such as the 11-coauthor cut used in some archives).
pub fn filter_max_authors(papers: Vec<PaperRecord>, max_authors: usize) -> Vec<PaperRecord> {
    papers
        .into_iter()
        .filter(|p| p.authors.len() <= max_authors)
        .collect()
}

/// Exact probability mass function over paper sizes l >= 1.
#[derive(Debug, Clone, PartialEq)]
pub struct SizePmf {
    /// (l, probability), sorted by l, probabilities summing to 1.
    entries: Vec<(u32, f64)>,
}

impl SizePmf {
    /// Builds a normalized PMF from (l, mass) pairs. Non-positive masses and
    /// l = 0 are rejected.
    pub fn from_weights(weights: &[(u32, f64)]) -> Result<Self> {
        let mut map: HashMap<u32, f64> = HashMap::new();
        for &(l, m) in weights {
            if l == 0 {
                return Err(Error::Config("paper size l = 0 in PMF".into()));
            }
            if !(m > 0.0) {
                return Err(Error::Config(format!("non-positive mass for l = {l}")));
            }
            *map.entry(l).or_insert(0.0) += m;
        }
        if map.is_empty() {
            return Err(Error::EmptyInput("empty PMF"));
        }
        let total: f64 = map.values().sum();
        let mut entries: Vec<(u32, f64)> =
            map.into_iter().map(|(l, m)| (l, m / total)).collect();
        entries.sort_unstable_by_key(|&(l, _)| l);
        Ok(SizePmf { entries })
    }

    pub fn entries(&self) -> &[(u32, f64)] {
        &self.entries
    }

    pub fn probability(&self, l: u32) -> f64 {
        self.entries
            .binary_search_by_key(&l, |&(x, _)| x)
            .map_or(0.0, |idx| self.entries[idx].1)
    }

    /// PMF restricted to `lo..=hi` and renormalized. Errors if no mass falls
    /// in the range.
    pub fn restricted(&self, lo: u32, hi: u32) -> Result<SizePmf> {
        let entries: Vec<(u32, f64)> = self
            .entries
            .iter()
            .filter(|&&(l, _)| l >= lo && l <= hi)
            .copied()
            .collect();
        if entries.is_empty() {
            return Err(Error::Config(format!(
                "PMF has no mass in admissible range [{lo}, {hi}]"
            )));
        }
        SizePmf::from_weights(&entries)
    }

    pub fn sample<R: rand::Rng>(&self, rng: &mut R) -> u32 {
        let mut u: f64 = rng.gen();
        for &(l, p) in &self.entries {
            if u < p {
                return l;
            }
            u -= p;
        }
        self.entries.last().expect("non-empty").0
    }
}

/// Empirical distribution of authors per paper, P(l).
pub fn coauthor_size_distribution(papers: &[PaperRecord]) -> Result<SizePmf> {
    if papers.is_empty() {
        return Err(Error::EmptyInput("no papers"));
    }
    let mut counts: HashMap<u32, f64> = HashMap::new();
    for p in papers {
        *counts.entry(p.authors.len() as u32).or_insert(0.0) += 1.0;
    }
    let weights: Vec<(u32, f64)> = counts.into_iter().collect();
    SizePmf::from_weights(&weights)
}

pub fn write_pmf<W: Write>(pmf: &SizePmf, mut out: W) -> Result<()> {
    for &(l, p) in pmf.entries() {
        writeln!(out, "{l}\t{p}")?;
    }
    Ok(())
}

pub fn read_pmf<R: BufRead>(reader: R) -> Result<SizePmf> {
    let mut weights = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let (l, p) = line
            .split_once('\t')
            .ok_or_else(|| Error::parse(lineno, "missing tab separator"))?;
        let l: u32 = l
            .parse()
            .map_err(|_| Error::parse(lineno, format!("bad paper size '{l}'")))?;
        let p: f64 = p
            .parse()
            .map_err(|_| Error::parse(lineno, format!("bad probability '{p}'")))?;
        weights.push((l, p));
    }
    SizePmf::from_weights(&weights)
}

/// Serializes the paper sequence back into TSV lines.
pub fn write_papers<W: Write>(papers: &[PaperRecord], mut out: W) -> Result<()> {
    for p in papers {
        writeln!(out, "{}\t{}", p.paper_id, p.authors.join(";"))?;
    }
    Ok(())
}

/// Node table: `i<TAB>name<TAB>p_i`. Unnamed graphs emit an empty name field.
pub fn write_nodes<W: Write>(g: &CoauthorGraph, mut out: W) -> Result<()> {
    for i in 0..g.node_count() as NodeId {
        let name = g.name(i).unwrap_or("");
        writeln!(out, "{i}\t{name}\t{}", g.publications(i))?;
    }
    Ok(())
}

/// Edge list: `i<TAB>j<TAB>w<TAB>l1,l2,...` with i < j.
pub fn write_edges<W: Write>(g: &CoauthorGraph, mut out: W) -> Result<()> {
    for (i, j, data) in g.edges() {
        let sizes: Vec<String> = data.paper_sizes.iter().map(|l| l.to_string()).collect();
        writeln!(out, "{i}\t{j}\t{}\t{}", data.weight, sizes.join(","))?;
    }
    Ok(())
}

/// Rebuilds a graph from the node table and edge list written above.
pub fn read_graph<R1: BufRead, R2: BufRead>(nodes: R1, edges: R2) -> Result<CoauthorGraph> {
    let mut publications: Vec<u32> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    for (lineno, line) in nodes.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split('\t');
        let (id, name, p) = match (fields.next(), fields.next(), fields.next()) {
            (Some(i), Some(n), Some(p)) => (i, n, p),
            _ => return Err(Error::parse(lineno, "expected i<TAB>name<TAB>p_i")),
        };
        let id: usize = id
            .parse()
            .map_err(|_| Error::parse(lineno, format!("bad node id '{id}'")))?;
        if id != publications.len() {
            return Err(Error::parse(lineno, "node ids must be dense and in order"));
        }
        let p: u32 = p
            .parse()
            .map_err(|_| Error::parse(lineno, format!("bad publication count '{p}'")))?;
        publications.push(p);
        names.push(name.to_string());
    }
    let names = if names.iter().all(|n| n.is_empty()) {
        None
    } else {
        Some(names)
    };

    let mut edge_list: Vec<(NodeId, NodeId, EdgeData)> = Vec::new();
    for (lineno, line) in edges.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split('\t');
        let (i, j, w, sizes) = match (fields.next(), fields.next(), fields.next(), fields.next()) {
            (Some(i), Some(j), Some(w), Some(s)) => (i, j, w, s),
            _ => return Err(Error::parse(lineno, "expected i<TAB>j<TAB>w<TAB>l1,l2,...")),
        };
        let i: NodeId = i
            .parse()
            .map_err(|_| Error::parse(lineno, format!("bad node id '{i}'")))?;
        let j: NodeId = j
            .parse()
            .map_err(|_| Error::parse(lineno, format!("bad node id '{j}'")))?;
        let w: u32 = w
            .parse()
            .map_err(|_| Error::parse(lineno, format!("bad weight '{w}'")))?;
        let mut paper_sizes = Vec::with_capacity(w as usize);
        for s in sizes.split(',') {
            let l: u32 = s
                .parse()
                .map_err(|_| Error::parse(lineno, format!("bad paper size '{s}'")))?;
            paper_sizes.push(l);
        }
        if paper_sizes.len() != w as usize {
            return Err(Error::parse(lineno, "paper size list length must equal weight"));
        }
        edge_list.push((i, j, EdgeData { weight: w, paper_sizes }));
    }
    CoauthorGraph::from_parts(publications.len(), edge_list, publications, names)
}
