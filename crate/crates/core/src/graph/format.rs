//! Graph file formats.
//!
//! JSON: `{"vertices": ["a", ...], "edges": [[i, j], ...]}` with 0-based
//! indices. Written files always have `i < j` and lexicographically sorted
//! edges. Text: a header line `n m` followed by `m` lines `i j`; vertices get
//! the labels `v0..v{n-1}`.

use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Json,
    Text,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    vertices: Vec<String>,
    edges: Vec<[usize; 2]>,
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph, GraphError> {
    match format {
        GraphFormat::Json => {
            let file: GraphFile = serde_json::from_str(text).map_err(|e| GraphError::Parse(e.to_string()))?;
            Graph::new(file.vertices, file.edges.into_iter().map(|[a, b]| (a, b)))
        }
        GraphFormat::Text => {
            let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
            let header = lines.next().ok_or_else(|| GraphError::Parse("empty graph file".into()))?;
            let nums = parse_pair(header)?;
            let (n, m) = (nums.0, nums.1);
            let mut edges = Vec::with_capacity(m);
            for _ in 0..m {
                let line = lines
                    .next()
                    .ok_or_else(|| GraphError::Parse(format!("expected {m} edge lines")))?;
                edges.push(parse_pair(line)?);
            }
            if lines.next().is_some() {
                return Err(GraphError::Parse("trailing data after edge list".into()));
            }
            Graph::with_default_labels(n, edges)
        }
    }
}

fn parse_pair(line: &str) -> Result<(usize, usize), GraphError> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    let bad = || GraphError::Parse(format!("expected two non-negative integers, got {line:?}"));
    match toks.as_slice() {
        [a, b] => Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?)),
        _ => Err(bad()),
    }
}

/// Single-line JSON with a trailing newline.
pub fn graph_to_json(g: &Graph) -> String {
    let file = GraphFile {
        vertices: g.labels().to_vec(),
        edges: g.edges().map(|(a, b)| [a, b]).collect(),
    };
    let mut s = serde_json::to_string(&file).expect("graph serializes");
    s.push('\n');
    s
}

pub fn graph_to_text(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.len(), g.edge_count());
    for (a, b) in g.edges() {
        s.push_str(&format!("{a} {b}\n"));
    }
    s
}
