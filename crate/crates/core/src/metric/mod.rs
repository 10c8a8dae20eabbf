//! Finite metric spaces with exact distances.
//!
//! A [`MetricSpace`] can only be obtained through validation, so every value
//! of the type satisfies symmetry, identity of indiscernibles and the
//! triangle inequality.

mod format;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::rational::Rational;

pub use format::{metric_to_json, metric_to_matrix_text, parse_metric, rational_to_json, MetricFormat};

/// Label prefix reserved for vertices the crate invents (subdivision paths).
pub const RESERVED_PREFIX: &str = "__";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not a metric: {0}")]
    Violation(MetricViolation),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("distance d({x}, {y}) = {value} is not an integer")]
    NotIntegerMetric { x: String, y: String, value: Rational },
}

/// A concrete reason why a distance table is not a metric. Indices refer to
/// rows of the rejected table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MetricViolation {
    NonzeroDiagonal { i: usize },
    Asymmetry { i: usize, j: usize },
    /// Off-diagonal entry that is zero or negative.
    NonPositive { i: usize, j: usize },
    /// `d(i, j) > d(i, k) + d(k, j)`.
    Triangle { i: usize, j: usize, k: usize },
}

impl MetricViolation {
    /// Re-evaluates the violated axiom on a row-major `n x n` table.
    pub fn reproduces(&self, n: usize, dist: &[Rational]) -> bool {
        let d = |a: usize, b: usize| dist[a * n + b];
        match *self {
            MetricViolation::NonzeroDiagonal { i } => !d(i, i).is_zero(),
            MetricViolation::Asymmetry { i, j } => d(i, j) != d(j, i),
            MetricViolation::NonPositive { i, j } => {
                i != j && (d(i, j).is_zero() || d(i, j).is_negative())
            }
            MetricViolation::Triangle { i, j, k } => d(i, j) > d(i, k) + d(k, j),
        }
    }
}

impl fmt::Display for MetricViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricViolation::NonzeroDiagonal { i } => write!(f, "nonzero diagonal at ({i}, {i})"),
            MetricViolation::Asymmetry { i, j } => write!(f, "asymmetry at ({i}, {j})"),
            MetricViolation::NonPositive { i, j } => {
                write!(f, "non-positive distance between distinct points at ({i}, {j})")
            }
            MetricViolation::Triangle { i, j, k } => {
                write!(f, "triangle inequality fails: d({i},{j}) > d({i},{k}) + d({k},{j})")
            }
        }
    }
}

/// Checks the three metric axioms on a row-major `n x n` table, scanning in
/// lexicographic index order and returning the first witness.
pub fn validate_table(n: usize, dist: &[Rational]) -> Result<(), MetricViolation> {
    assert_eq!(dist.len(), n * n, "table must be n x n");
    let d = |a: usize, b: usize| dist[a * n + b];
    if let Some(i) = (0..n).find(|&i| !d(i, i).is_zero()) {
        return Err(MetricViolation::NonzeroDiagonal { i });
    }
    for i in 0..n {
        for j in i + 1..n {
            if d(i, j) != d(j, i) {
                return Err(MetricViolation::Asymmetry { i, j });
            }
            if d(i, j).is_zero() || d(i, j).is_negative() {
                return Err(MetricViolation::NonPositive { i, j });
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                if k != i && k != j && d(i, j) > d(i, k) + d(k, j) {
                    return Err(MetricViolation::Triangle { i, j, k });
                }
            }
        }
    }
    Ok(())
}

/// Outcome of a yes/no check that carries a witness on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check<W> {
    Pass,
    Fail(W),
}

impl<W> Check<W> {
    pub fn is_pass(&self) -> bool {
        matches!(self, Check::Pass)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Check::Pass => None,
            Check::Fail(w) => Some(w),
        }
    }
}

/// A finite set of labeled points with an exact distance table.
#[derive(Clone, PartialEq, Eq)]
pub struct MetricSpace {
    labels: Vec<String>,
    dist: Vec<Rational>,
    index: HashMap<String, usize>,
}

impl MetricSpace {
    /// Validates `dist` (row-major, `labels.len()` squared entries).
    pub fn new(labels: Vec<String>, dist: Vec<Rational>) -> Result<Self, MetricError> {
        let n = labels.len();
        if n == 0 {
            return Err(MetricError::Parse("a metric space needs at least one point".into()));
        }
        if dist.len() != n * n {
            return Err(MetricError::Parse(format!(
                "expected {} distances for {n} points, got {}",
                n * n,
                dist.len()
            )));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() {
                return Err(MetricError::Parse("empty point label".into()));
            }
            if index.insert(label.clone(), i).is_some() {
                return Err(MetricError::Parse(format!("duplicate label {label:?}")));
            }
        }
        validate_table(n, &dist).map_err(MetricError::Violation)?;
        Ok(MetricSpace { labels, dist, index })
    }

    /// Convenience constructor from nested integer rows.
    pub fn from_rows<L: Into<String>>(
        labels: impl IntoIterator<Item = L>,
        rows: &[Vec<Rational>],
    ) -> Result<Self, MetricError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if rows.iter().any(|r| r.len() != rows.len()) {
            return Err(MetricError::Parse("distance table is not square".into()));
        }
        Self::new(labels, rows.iter().flatten().copied().collect())
    }

    /// Integer table with default labels `p0..p{n-1}`.
    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Result<Self, MetricError> {
        let labels = (0..rows.len()).map(|i| format!("p{i}"));
        let rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| Rational::from(v)).collect())
            .collect();
        Self::from_rows(labels, &rows)
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

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, MetricError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| MetricError::UnknownLabel(label.to_string()))
    }

    /// Distance by point index.
    #[inline]
    pub fn d(&self, i: usize, j: usize) -> Rational {
        self.dist[i * self.len() + j]
    }

    pub fn distance(&self, x: &str, y: &str) -> Result<Rational, MetricError> {
        Ok(self.d(self.index_of(x)?, self.index_of(y)?))
    }

    pub fn table(&self) -> &[Rational] {
        &self.dist
    }

    /// The subspace on the given labels, in the given order.
    pub fn subspace<S: AsRef<str>>(&self, labels: &[S]) -> Result<MetricSpace, MetricError> {
        let idx = labels
            .iter()
            .map(|l| self.index_of(l.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.subspace_by_index(&idx))
    }

    /// Subspace by point indices. Panics on out-of-range or repeated indices.
    pub fn subspace_by_index(&self, idx: &[usize]) -> MetricSpace {
        let labels: Vec<String> = idx.iter().map(|&i| self.labels[i].clone()).collect();
        let dist = idx
            .iter()
            .flat_map(|&i| idx.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.d(i, j))
            .collect();
        MetricSpace::new(labels, dist).expect("a subspace of a metric space is a metric space")
    }

    pub fn is_integer_metric(&self) -> bool {
        self.dist.iter().all(Rational::is_integer)
    }

    fn require_integer(&self) -> Result<(), MetricError> {
        let n = self.len();
        for i in 0..n {
            for j in i + 1..n {
                if !self.d(i, j).is_integer() {
                    return Err(MetricError::NotIntegerMetric {
                        x: self.labels[i].clone(),
                        y: self.labels[j].clone(),
                        value: self.d(i, j),
                    });
                }
            }
        }
        Ok(())
    }

    /// Whether `y` lies between `x` and `z`.
    pub fn between(&self, x: &str, y: &str, z: &str) -> Result<bool, MetricError> {
        Ok(self.between_idx(self.index_of(x)?, self.index_of(y)?, self.index_of(z)?))
    }

    #[inline]
    pub fn between_idx(&self, x: usize, y: usize, z: usize) -> bool {
        x != y && y != z && self.d(x, z) == self.d(x, y) + self.d(y, z)
    }

    /// Every pair at distance at least 2 must have a point strictly between
    /// its ends. The first failing pair (lexicographic by index) is returned.
    pub fn kay_chartrand_check(&self) -> Result<Check<(String, String)>, MetricError> {
        self.require_integer()?;
        let n = self.len();
        let two = Rational::from_integer(2);
        for x in 0..n {
            for z in x + 1..n {
                if self.d(x, z) >= two && !(0..n).any(|y| self.between_idx(x, y, z)) {
                    return Ok(Check::Fail((self.labels[x].clone(), self.labels[z].clone())));
                }
            }
        }
        Ok(Check::Pass)
    }

    /// Pairs at distance at least 2 for which every third point gives a
    /// strict triangle inequality.
    pub fn compute_x2_set(&self) -> Result<X2Set, MetricError> {
        self.require_integer()?;
        let n = self.len();
        let two = Rational::from_integer(2);
        let mut pairs = Vec::new();
        for x in 0..n {
            for y in x + 1..n {
                let dxy = self.d(x, y);
                if dxy >= two
                    && (0..n)
                        .filter(|&z| z != x && z != y)
                        .all(|z| dxy < self.d(x, z) + self.d(z, y))
                {
                    let (a, b) = (&self.labels[x], &self.labels[y]);
                    let pair = if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
                    pairs.push(pair);
                }
            }
        }
        pairs.sort();
        Ok(X2Set { pairs })
    }

    /// Entrywise ceiling of the distances. The result is re-validated.
    pub fn ceiling_metric(&self) -> MetricSpace {
        let dist = self.dist.iter().map(Rational::ceil).collect();
        MetricSpace::new(self.labels.clone(), dist)
            .expect("the ceiling of a metric must itself be a metric")
    }
}

impl fmt::Debug for MetricSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.len();
        let rows: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| self.d(i, j)).collect()).collect();
        f.debug_struct("MetricSpace")
            .field("labels", &self.labels)
            .field("dist", &rows)
            .finish()
    }
}

/// Metrically irreducible pairs: label pairs `(a, b)` with `a < b`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct X2Set {
    pairs: Vec<(String, String)>,
}

impl X2Set {
    pub fn pairs(&self) -> &[(String, String)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, x: &str, y: &str) -> bool {
        let key = if x <= y { (x, y) } else { (y, x) };
        self.pairs
            .binary_search_by(|(a, b)| (a.as_str(), b.as_str()).cmp(&key))
            .is_ok()
    }
}
