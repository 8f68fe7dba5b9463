use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{io_at, Error, Result};

/// Line format of a plain-text edge list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeListFormat {
    /// Lines whose first non-blank character is one of these are skipped.
    pub comment_prefixes: Vec<char>,
    /// Field separator; `None` splits on any run of whitespace.
    pub separator: Option<char>,
}

impl Default for EdgeListFormat {
    /// SNAP (`#`) and KONECT (`%`) conventions, whitespace separated.
    fn default() -> Self {
        Self { comment_prefixes: vec!['#', '%'], separator: None }
    }
}

#[derive(Debug, Clone)]
pub enum EdgeListInput {
    Path(PathBuf),
    Text(String),
}

#[derive(Debug, Clone)]
pub struct EdgeListSource {
    pub input: EdgeListInput,
    pub format: EdgeListFormat,
}

impl EdgeListSource {
    pub fn path(path: impl Into<PathBuf>) -> Self {
        Self { input: EdgeListInput::Path(path.into()), format: EdgeListFormat::default() }
    }

    pub fn text(text: impl Into<String>) -> Self {
        Self { input: EdgeListInput::Text(text.into()), format: EdgeListFormat::default() }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoadStats {
    pub raw_lines: usize,
    pub skipped_lines: usize,
    pub edge_lines: usize,
    pub self_loops: usize,
    /// Edge lines naming an unordered pair already seen (either direction).
    pub duplicates: usize,
}

/// A normalized graph plus the table mapping dense ids back to the ids used
/// in the source file.
#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: Graph,
    /// `original_ids[v]` is the external id of dense node `v`; ascending.
    pub original_ids: Vec<u64>,
    pub stats: LoadStats,
}

pub fn load_edge_list(source: &EdgeListSource) -> Result<LoadedGraph> {
    match &source.input {
        EdgeListInput::Path(path) => {
            let file = File::open(path).map_err(io_at(path))?;
            read_edge_list(BufReader::with_capacity(1 << 20, file), &source.format)
        }
        EdgeListInput::Text(text) => read_edge_list(text.as_bytes(), &source.format),
    }
}

/// Parses an edge list into an undirected simple graph.
///
/// Only the first two fields of each line are read (KONECT files carry
/// weights and timestamps after them). Nodes that only appear in self-loops
/// are dropped along with the loops. External ids are remapped densely in
/// ascending order, so a normalized dump reloads under the identity map.
pub fn read_edge_list<R: BufRead>(reader: R, format: &EdgeListFormat) -> Result<LoadedGraph> {
    let mut stats = LoadStats::default();
    let mut raw_edges: Vec<(u64, u64)> = Vec::new();

    for (index, line) in reader.lines().enumerate() {
        let line_no = index + 1;
        let line = line?;
        stats.raw_lines += 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with(&format.comment_prefixes[..]) {
            stats.skipped_lines += 1;
            continue;
        }
        let mut fields: Box<dyn Iterator<Item = &str>> = match format.separator {
            Some(sep) => Box::new(trimmed.split(sep).map(str::trim).filter(|f| !f.is_empty())),
            None => Box::new(trimmed.split_whitespace()),
        };
        let mut next_id = |what: &str| -> Result<u64> {
            let token = fields
                .next()
                .ok_or_else(|| Error::Parse { line: line_no, message: format!("missing {what} node id") })?;
            token
                .parse::<u64>()
                .map_err(|_| Error::Parse { line: line_no, message: format!("invalid node id {token:?}") })
        };
        let u = next_id("source")?;
        let v = next_id("target")?;
        stats.edge_lines += 1;
        if u == v {
            stats.self_loops += 1;
        } else {
            raw_edges.push((u.min(v), u.max(v)));
        }
    }

    if raw_edges.is_empty() {
        return Err(Error::EmptyInput);
    }

    let mut original_ids: Vec<u64> = raw_edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    original_ids.sort_unstable();
    original_ids.dedup();

    let dense = |raw: u64| original_ids.binary_search(&raw).expect("id collected above");
    let mut pairs: Vec<(usize, usize)> = raw_edges.iter().map(|&(u, v)| (dense(u), dense(v))).collect();
    drop(raw_edges);
    pairs.sort_unstable();
    let before = pairs.len();
    pairs.dedup();
    stats.duplicates = before - pairs.len();

    let graph = Graph::from_sorted_pairs(original_ids.len(), &pairs);
    Ok(LoadedGraph { graph, original_ids, stats })
}

/// Writes the normalized dump: a header comment with `n` and `m`, then one
/// `u v` line per edge with `u < v`, sorted.
pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "# nodes {} edges {}", g.node_count(), g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()
}
