//! Graph realizations and isometric embeddings of finite metric spaces.
//!
//! * [`realize`] builds the graph whose geodesic metric *is* the input, which
//!   works exactly when the space has integer distances and every pair at
//!   distance 2 or more has a point between its ends.
//! * [`embed`] handles any integer metric by adding a fresh subdivision path
//!   for each metrically irreducible pair.
//! * [`ceil_embed`] rounds distances up first, giving additive distortion
//!   below 1 for arbitrary rational metrics.
//!
//! Each construction checks its own output with BFS before returning; a
//! mismatch is reported as [`RealizationError::InternalVerificationFailure`].

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::{Graph, GraphError, INF};
use crate::metric::{Check, MetricError, MetricSpace};
use crate::rational::Rational;

/// Prefix of subdivision vertex labels: `__aux::{a}::{b}::{k}`.
pub const AUX_PREFIX: &str = "__aux::";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealizationError {
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("no point lies between {0} and {1}")]
    ConditionFailed(String, String),
    #[error("map is not injective: {0:?} has more than one preimage")]
    NotInjective(String),
    #[error("point {0:?} is listed twice in the map")]
    DuplicateSource(String),
    #[error("point {0:?} clashes with a generated vertex label")]
    LabelCollision(String),
    #[error("internal verification failure: {0}")]
    InternalVerificationFailure(Mismatch),
}

/// Why a map is not an isometric embedding (or isometry).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mismatch {
    Distance {
        x: String,
        y: String,
        expected: Rational,
        actual: u32,
    },
    /// Outside the `d <= d_G < d + 1` window.
    Distortion {
        x: String,
        y: String,
        metric: Rational,
        graph: u32,
    },
    /// Vertex not hit by the map, when an isometry was requested.
    NotOnto { vertex: String },
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mismatch::Distance { x, y, expected, actual } => {
                write!(f, "d({x}, {y}) = {expected} but the graph distance is {actual}")
            }
            Mismatch::Distortion { x, y, metric, graph } => {
                write!(f, "d({x}, {y}) = {metric} but the graph distance {graph} is outside [d, d + 1)")
            }
            Mismatch::NotOnto { vertex } => write!(f, "vertex {vertex:?} is not in the image"),
        }
    }
}

/// Injective assignment of metric points to graph vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingMap {
    assignment: BTreeMap<String, String>,
    verified: bool,
}

impl EmbeddingMap {
    pub fn new(pairs: impl IntoIterator<Item = (String, String)>) -> Result<Self, RealizationError> {
        let mut assignment = BTreeMap::new();
        let mut targets = BTreeSet::new();
        for (src, dst) in pairs {
            if !targets.insert(dst.clone()) {
                return Err(RealizationError::NotInjective(dst));
            }
            if assignment.insert(src.clone(), dst).is_some() {
                return Err(RealizationError::DuplicateSource(src));
            }
        }
        Ok(EmbeddingMap {
            assignment,
            verified: false,
        })
    }

    pub fn identity(labels: &[String]) -> Self {
        Self::new(labels.iter().map(|l| (l.clone(), l.clone()))).expect("labels are distinct")
    }

    pub fn get(&self, point: &str) -> Option<&str> {
        self.assignment.get(point).map(String::as_str)
    }

    pub fn assignment(&self) -> &BTreeMap<String, String> {
        &self.assignment
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// Runs [`verify_map`] and records success.
    pub fn verify(
        &mut self,
        m: &MetricSpace,
        g: &Graph,
        require_onto: bool,
    ) -> Result<Check<Mismatch>, RealizationError> {
        let outcome = verify_map(m, g, self, require_onto)?;
        self.verified = outcome.is_pass();
        Ok(outcome)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationResult {
    pub graph: Graph,
    pub map: EmbeddingMap,
    /// Vertices added beyond the metric's points.
    pub aux_count: usize,
}

/// Metric distance next to the graph distance of the mapped vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairDistance {
    pub x: String,
    pub y: String,
    pub metric: Rational,
    pub graph: u32,
}

/// Graph vertex index of every metric point, in metric order.
fn mapped_indices(m: &MetricSpace, g: &Graph, map: &EmbeddingMap) -> Result<Vec<usize>, RealizationError> {
    m.labels()
        .iter()
        .map(|x| {
            let target = map
                .get(x)
                .ok_or_else(|| MetricError::UnknownLabel(x.clone()))?;
            Ok(g.index_of(target)?)
        })
        .collect()
}

/// Graph distances between the images of all pairs `i < j` of points.
pub fn pair_distances(
    m: &MetricSpace,
    g: &Graph,
    map: &EmbeddingMap,
) -> Result<Vec<PairDistance>, RealizationError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    let idx = mapped_indices(m, g, map)?;
    let n = m.len();
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        let dist = g.bfs_from(idx[i]);
        for j in i + 1..n {
            out.push(PairDistance {
                x: m.label(i).to_string(),
                y: m.label(j).to_string(),
                metric: m.d(i, j),
                graph: dist[idx[j]],
            });
        }
    }
    Ok(out)
}

/// Checks `d(x, y) = d_G(map(x), map(y))` for every pair of points, and with
/// `require_onto` also that every vertex of `g` is an image.
pub fn verify_map(
    m: &MetricSpace,
    g: &Graph,
    map: &EmbeddingMap,
    require_onto: bool,
) -> Result<Check<Mismatch>, RealizationError> {
    for p in pair_distances(m, g, map)? {
        debug_assert_ne!(p.graph, INF);
        if p.metric != Rational::from(p.graph) {
            return Ok(Check::Fail(Mismatch::Distance {
                x: p.x,
                y: p.y,
                expected: p.metric,
                actual: p.graph,
            }));
        }
    }
    if require_onto {
        let image: BTreeSet<&str> = map.assignment.values().map(String::as_str).collect();
        if let Some(v) = g.labels().iter().find(|v| !image.contains(v.as_str())) {
            return Ok(Check::Fail(Mismatch::NotOnto { vertex: v.clone() }));
        }
    }
    Ok(Check::Pass)
}

fn unit_edges(m: &MetricSpace) -> Vec<(usize, usize)> {
    let n = m.len();
    let one = Rational::ONE;
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| m.d(i, j) == one)
        .collect()
}

fn self_verify(m: &MetricSpace, graph: Graph, aux_count: usize) -> Result<RealizationResult, RealizationError> {
    let mut map = EmbeddingMap::identity(m.labels());
    match map.verify(m, &graph, false)? {
        Check::Pass => Ok(RealizationResult { graph, map, aux_count }),
        Check::Fail(mismatch) => Err(RealizationError::InternalVerificationFailure(mismatch)),
    }
}

/// The graph on the points of `m` with an edge at every distance-1 pair.
pub fn realize(m: &MetricSpace) -> Result<RealizationResult, RealizationError> {
    if let Check::Fail((x, z)) = m.kay_chartrand_check()? {
        return Err(RealizationError::ConditionFailed(x, z));
    }
    let graph = Graph::new(m.labels().to_vec(), unit_edges(m))?;
    self_verify(m, graph, 0)
}

/// Label of the `k`-th interior vertex of the subdivision path for `{a, b}`.
pub fn aux_label(a: &str, b: &str, k: u32) -> String {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    format!("{AUX_PREFIX}{lo}::{hi}::{k}")
}

/// Isometric embedding of an integer metric into a connected graph.
pub fn embed(m: &MetricSpace) -> Result<RealizationResult, RealizationError> {
    let x2 = m.compute_x2_set()?;
    let mut labels = m.labels().to_vec();
    let mut edges = unit_edges(m);
    for (a, b) in x2.pairs() {
        let k = m
            .distance(a, b)?
            .to_u32()
            .expect("irreducible pairs have integer distance >= 2");
        let mut prev = m.index_of(a)?;
        for step in 1..k {
            labels.push(aux_label(a, b, step));
            let cur = labels.len() - 1;
            edges.push((prev, cur));
            prev = cur;
        }
        edges.push((prev, m.index_of(b)?));
    }
    let aux_count = labels.len() - m.len();
    let graph = Graph::new(labels, edges).map_err(|e| match e {
        GraphError::Invalid(_) => {
            let clash = m
                .labels()
                .iter()
                .find(|l| l.starts_with(AUX_PREFIX))
                .cloned()
                .unwrap_or_default();
            RealizationError::LabelCollision(clash)
        }
        other => other.into(),
    })?;
    self_verify(m, graph, aux_count)
}

/// Embeds the ceiling metric and confirms `d <= d_G < d + 1` against the
/// original distances.
pub fn ceil_embed(m: &MetricSpace) -> Result<RealizationResult, RealizationError> {
    let result = embed(&m.ceiling_metric())?;
    for p in pair_distances(m, &result.graph, &result.map)? {
        let graph = Rational::from(p.graph);
        if !(p.metric <= graph && graph < p.metric + Rational::ONE) {
            return Err(RealizationError::InternalVerificationFailure(Mismatch::Distortion {
                x: p.x,
                y: p.y,
                metric: p.metric,
                graph: p.graph,
            }));
        }
    }
    Ok(result)
}
