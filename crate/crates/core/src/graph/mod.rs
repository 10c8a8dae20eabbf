//! Finite simple undirected graphs and their geodesic distances.

mod canon;
mod enumerate;
mod format;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::metric::MetricSpace;
use crate::rational::Rational;

pub use canon::{canonical_form, CanonicalForm, CANON_HARD_LIMIT, DEFAULT_CAP};
pub use enumerate::{
    connected_graph_count, enumerate_connected_graphs, EnumerationConfig, Enumerator, ENUMERATION_HARD_CAP,
};
pub use format::{graph_to_json, graph_to_text, parse_graph, GraphFormat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid graph: {0}")]
    Invalid(String),
    #[error("unknown vertex {0:?}")]
    UnknownLabel(String),
    #[error("vertex subset is empty")]
    EmptySubset,
    #[error("{n} vertices exceeds the cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("graph is disconnected")]
    Disconnected,
}

/// Marker for unreachable pairs in a [`DistanceMatrix`].
pub const INF: u32 = u32::MAX;

/// All-pairs geodesic distances; `INF` between components.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Raw entry, `INF` when unreachable.
    #[inline]
    pub fn raw(&self, i: usize, j: usize) -> u32 {
        self.d[i * self.n + j]
    }

    pub fn get(&self, i: usize, j: usize) -> Option<u32> {
        let v = self.raw(i, j);
        (v != INF).then_some(v)
    }

    pub fn is_finite(&self) -> bool {
        self.d.iter().all(|&v| v != INF)
    }

    pub fn max_entry(&self) -> Option<u32> {
        self.d.iter().copied().filter(|&v| v != INF).max()
    }
}

/// Degree/connectivity classification used by the path and 4-cycle checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeClass {
    SingleVertex,
    /// A path with the given number of edges.
    Path(usize),
    /// A cycle on the given number of vertices.
    Cycle(usize),
    Other,
}

impl fmt::Display for ShapeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeClass::SingleVertex => write!(f, "single_vertex"),
            ShapeClass::Path(k) => write!(f, "path({k})"),
            ShapeClass::Cycle(n) => write!(f, "cycle({n})"),
            ShapeClass::Other => write!(f, "other"),
        }
    }
}

/// A simple undirected graph with labeled vertices and sorted adjacency lists.
#[derive(Clone)]
pub struct Graph {
    labels: Vec<String>,
    adj: Vec<Vec<usize>>,
    index: HashMap<String, usize>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.labels)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Edges are index pairs in either orientation. Self-loops, duplicate
    /// edges and duplicate labels are rejected.
    pub fn new(
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let n = labels.len();
        if n == 0 {
            return Err(GraphError::Invalid("a graph needs at least one vertex".into()));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() {
                return Err(GraphError::Invalid("empty vertex label".into()));
            }
            if index.insert(l.clone(), i).is_some() {
                return Err(GraphError::Invalid(format!("duplicate vertex label {l:?}")));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(GraphError::Invalid(format!("edge ({a}, {b}) out of range for {n} vertices")));
            }
            if a == b {
                return Err(GraphError::Invalid(format!("self-loop at {a}")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(GraphError::Invalid(format!("duplicate edge at vertex {v}")));
            }
        }
        Ok(Graph { labels, adj, index })
    }

    /// Vertices labeled `v0..v{n-1}`.
    pub fn with_default_labels(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        Self::new((0..n).map(|i| format!("v{i}")).collect(), edges)
    }

    /// The path `v0 - v1 - ... - v{n-1}`.
    pub fn path(n: usize) -> Graph {
        Self::with_default_labels(n, (1..n).map(|i| (i - 1, i))).expect("path is a valid graph")
    }

    /// The cycle `v0 - ... - v{n-1} - v0`, `n >= 3`.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Self::with_default_labels(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is a valid graph")
    }

    pub fn complete(n: usize) -> Graph {
        Self::with_default_labels(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
            .expect("complete graph is valid")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, GraphError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| GraphError::UnknownLabel(label.to_string()))
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges as `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(i, list)| list.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// BFS distances from `src`; `INF` for unreachable vertices.
    pub fn bfs_from(&self, src: usize) -> Vec<u32> {
        let mut dist = vec![INF; self.len()];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == INF {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn geodesic_distances(&self) -> DistanceMatrix {
        let n = self.len();
        let mut d = Vec::with_capacity(n * n);
        for s in 0..n {
            d.extend(self.bfs_from(s));
        }
        DistanceMatrix { n, d }
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_from(0).iter().all(|&d| d != INF)
    }

    /// The geodesic metric on the vertex set, labels carried over.
    pub fn geodesic_metric(&self) -> Result<MetricSpace, GraphError> {
        let dm = self.geodesic_distances();
        if !dm.is_finite() {
            return Err(GraphError::Disconnected);
        }
        let dist = dm.d.iter().map(|&v| Rational::from(v)).collect();
        Ok(MetricSpace::new(self.labels.clone(), dist).expect("geodesic distance of a connected graph is a metric"))
    }

    /// A shortest path from `from` to `to` as a vertex sequence, or `None`
    /// when unreachable. Each step moves to the lowest-index neighbor that
    /// is one step closer to the target, so the result is deterministic.
    pub fn shortest_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let to_target = self.bfs_from(to);
        if to_target[from] == INF {
            return None;
        }
        let mut path = vec![from];
        let mut cur = from;
        while cur != to {
            cur = *self.adj[cur]
                .iter()
                .find(|&&v| to_target[v] + 1 == to_target[cur])
                .expect("a BFS layer always has a predecessor");
            path.push(cur);
        }
        Some(path)
    }

    pub fn induced_subgraph<S: AsRef<str>>(&self, subset: &[S]) -> Result<Graph, GraphError> {
        if subset.is_empty() {
            return Err(GraphError::EmptySubset);
        }
        let idx = subset
            .iter()
            .map(|l| self.index_of(l.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        self.induced_by_index(&idx)
    }

    /// Induced subgraph on vertex indices, in the given order.
    pub fn induced_by_index(&self, idx: &[usize]) -> Result<Graph, GraphError> {
        if idx.is_empty() {
            return Err(GraphError::EmptySubset);
        }
        let labels = idx.iter().map(|&v| self.labels[v].clone()).collect();
        let mut edges = Vec::new();
        for (a, &u) in idx.iter().enumerate() {
            for (b, &v) in idx.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    edges.push((a, b));
                }
            }
        }
        Graph::new(labels, edges)
    }

    pub fn classify_shape(&self) -> ShapeClass {
        let n = self.len();
        if n == 1 {
            return ShapeClass::SingleVertex;
        }
        if !self.is_connected() {
            return ShapeClass::Other;
        }
        let leaves = (0..n).filter(|&v| self.degree(v) == 1).count();
        let twos = (0..n).filter(|&v| self.degree(v) == 2).count();
        if leaves == 2 && leaves + twos == n {
            ShapeClass::Path(n - 1)
        } else if twos == n && n >= 3 {
            ShapeClass::Cycle(n)
        } else {
            ShapeClass::Other
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_distances() {
        let c12 = Graph::cycle(12);
        let d = c12.geodesic_distances();
        assert_eq!(d.get(0, 5), Some(5));
        assert_eq!(d.get(0, 7), Some(5));
        assert_eq!(d.max_entry(), Some(6));
        for k in 0..12 {
            assert_eq!(d.get(0, k), Some(k.min(12 - k) as u32));
        }
    }

    #[test]
    fn small_cases() {
        let edge = Graph::with_default_labels(2, [(0, 1)]).unwrap();
        assert_eq!(edge.geodesic_distances().get(0, 1), Some(1));
        let isolated = Graph::with_default_labels(2, []).unwrap();
        assert_eq!(isolated.geodesic_distances().get(0, 1), None);
        assert_eq!(isolated.geodesic_distances().get(1, 1), Some(0));
        assert!(!isolated.is_connected());
        assert_eq!(isolated.geodesic_metric().unwrap_err(), GraphError::Disconnected);
        assert!(Graph::with_default_labels(1, []).unwrap().is_connected());
        assert!(Graph::cycle(12).is_connected());
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(Graph::with_default_labels(0, []).is_err());
        assert!(Graph::with_default_labels(2, [(0, 0)]).is_err());
        assert!(Graph::with_default_labels(2, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::with_default_labels(2, [(0, 2)]).is_err());
        assert!(Graph::new(vec!["a".into(), "a".into()], []).is_err());
    }

    #[test]
    fn induced_subgraphs() {
        let c8 = Graph::cycle(8);
        let h = c8.induced_subgraph(&["v0", "v2", "v4", "v6"]).unwrap();
        assert_eq!(h.len(), 4);
        assert_eq!(h.edge_count(), 0);

        let c4 = Graph::cycle(4);
        assert_eq!(c4.induced_subgraph(&["v0", "v1", "v2", "v3"]).unwrap(), c4);

        let p4 = Graph::new(
            ["a", "b", "c", "d"].map(String::from).to_vec(),
            [(0, 1), (1, 2), (2, 3)],
        )
        .unwrap();
        let ab = p4.induced_subgraph(&["a", "b"]).unwrap();
        assert_eq!(ab.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(p4.induced_subgraph::<&str>(&[]).unwrap_err(), GraphError::EmptySubset);
        assert_eq!(
            p4.induced_subgraph(&["a", "z"]).unwrap_err(),
            GraphError::UnknownLabel("z".into())
        );
    }

    #[test]
    fn shapes() {
        assert_eq!(Graph::path(5).classify_shape(), ShapeClass::Path(4));
        assert_eq!(Graph::path(2).classify_shape(), ShapeClass::Path(1));
        assert_eq!(Graph::cycle(4).classify_shape(), ShapeClass::Cycle(4));
        assert_eq!(Graph::path(1).classify_shape(), ShapeClass::SingleVertex);
        let star = Graph::with_default_labels(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.classify_shape(), ShapeClass::Other);
        // Two disjoint edges: degree pattern of nothing we accept.
        let two_edges = Graph::with_default_labels(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(two_edges.classify_shape(), ShapeClass::Other);
        // Path plus a disjoint triangle has exactly two leaves but is not a path.
        let split = Graph::with_default_labels(5, [(0, 1), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert_eq!(split.classify_shape(), ShapeClass::Other);
    }

    #[test]
    fn shortest_path_prefers_low_indices() {
        let c4 = Graph::cycle(4);
        assert_eq!(c4.shortest_path(0, 2), Some(vec![0, 1, 2]));
        assert_eq!(c4.shortest_path(2, 0), Some(vec![2, 1, 0]));
        assert_eq!(c4.shortest_path(3, 3), Some(vec![3]));
        let isolated = Graph::with_default_labels(2, []).unwrap();
        assert_eq!(isolated.shortest_path(0, 1), None);
    }
}
