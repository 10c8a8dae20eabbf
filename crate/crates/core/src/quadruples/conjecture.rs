//! Finite-graph checkers for the path/4-cycle characterization of the
//! betweenness class and for the induced 4-cycle / equilateral quadruple
//! correspondence, plus an exhaustive search over small connected graphs.
//!
//! The checkers report evidence on the searched range. Only finite graphs
//! are examined, so the ray and double-ray cases never arise.

use serde_json::{json, Value};

use super::{mb_witness, plq_pattern, QuadError};
use crate::graph::{EnumerationConfig, Enumerator, Graph, ShapeClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConjectureId {
    /// Betweenness class membership iff path or 4-cycle.
    C42,
    /// Induced 4-cycle iff equilateral pseudo-linear quadruple.
    C44,
}

impl ConjectureId {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConjectureId::C42 => "C42",
            ConjectureId::C44 => "C44",
        }
    }

    /// Smallest vertex count the checker accepts during a search.
    fn first_n(&self) -> usize {
        match self {
            ConjectureId::C42 => 3,
            ConjectureId::C44 => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum C42Direction {
    /// In the class but neither a path nor the 4-cycle.
    MbImpliesShape,
    /// A path or the 4-cycle but not in the class.
    ShapeImpliesMb,
}

impl C42Direction {
    pub fn as_str(&self) -> &'static str {
        match self {
            C42Direction::MbImpliesShape => "mb_implies_shape",
            C42Direction::ShapeImpliesMb => "shape_implies_mb",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum C42Outcome {
    Consistent { mb: bool, shape: ShapeClass },
    Violation { direction: C42Direction, witness: Vec<String> },
}

/// Compares class membership of the geodesic metric with the shape of `g`.
/// A [`C42Direction::ShapeImpliesMb`] witness is the failing triple; a
/// [`C42Direction::MbImpliesShape`] witness is the whole vertex set.
pub fn check_conjecture_42(g: &Graph) -> Result<C42Outcome, QuadError> {
    if g.edge_count() == 0 {
        return Err(QuadError::EmptyGraph);
    }
    let m = g.geodesic_metric()?;
    let shape = g.classify_shape();
    let expected = matches!(shape, ShapeClass::Path(_) | ShapeClass::Cycle(4));
    let failing = mb_witness(&m);
    Ok(match (failing, expected) {
        (None, true) => C42Outcome::Consistent { mb: true, shape },
        (Some(_), false) => C42Outcome::Consistent { mb: false, shape },
        (None, false) => C42Outcome::Violation {
            direction: C42Direction::MbImpliesShape,
            witness: g.labels().to_vec(),
        },
        (Some((x, y, z)), true) => C42Outcome::Violation {
            direction: C42Direction::ShapeImpliesMb,
            witness: vec![g.label(x).into(), g.label(y).into(), g.label(z).into()],
        },
    })
}

/// A 4-vertex subset where the induced-cycle test and the equilateral
/// quadruple test disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct C44Disagreement {
    pub subset: [String; 4],
    /// The induced subgraph is a 4-cycle.
    pub holds_i: bool,
    /// Some ordering is an equilateral pseudo-linear quadruple.
    pub holds_ii: bool,
}

impl C44Disagreement {
    pub fn direction(&self) -> &'static str {
        if self.holds_i {
            "i_implies_ii"
        } else {
            "ii_implies_i"
        }
    }
}

/// Evaluates both statements on every 4-subset (lexicographic by index) and
/// returns the subsets where they differ.
pub fn check_conjecture_44(g: &Graph) -> Result<Vec<C44Disagreement>, QuadError> {
    let n = g.len();
    if n < 4 {
        return Err(QuadError::TooSmall(n));
    }
    let m = g.geodesic_metric()?;
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let subset = [a, b, c, d];
                    let holds_i = g.induced_by_index(&subset)?.classify_shape() == ShapeClass::Cycle(4);
                    let holds_ii = matches!(plq_pattern(&m, subset), Some((s, t, _)) if s == t);
                    if holds_i != holds_ii {
                        out.push(C44Disagreement {
                            subset: subset.map(|v| g.label(v).to_string()),
                            holds_i,
                            holds_ii,
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// One counterexample candidate found during a search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViolationRecord {
    pub graph: Graph,
    pub witness: Vec<String>,
    pub direction: String,
}

impl ViolationRecord {
    /// Re-runs the checker on the stored graph and confirms it reports the
    /// same witness in the same direction.
    pub fn replay(&self, conjecture: ConjectureId) -> bool {
        per_graph(conjecture, &self.graph)
            .map(|found| found.contains(self))
            .unwrap_or(false)
    }

    fn to_json(&self) -> Value {
        json!({
            "graph": {
                "vertices": self.graph.labels(),
                "edges": self.graph.edges().map(|(a, b)| [a, b]).collect::<Vec<_>>(),
            },
            "witness": self.witness,
            "direction": self.direction,
        })
    }
}

fn per_graph(conjecture: ConjectureId, g: &Graph) -> Result<Vec<ViolationRecord>, QuadError> {
    Ok(match conjecture {
        ConjectureId::C42 => match check_conjecture_42(g)? {
            C42Outcome::Consistent { .. } => Vec::new(),
            C42Outcome::Violation { direction, witness } => vec![ViolationRecord {
                graph: g.clone(),
                witness,
                direction: direction.as_str().to_string(),
            }],
        },
        ConjectureId::C44 => check_conjecture_44(g)?
            .into_iter()
            .map(|d| ViolationRecord {
                graph: g.clone(),
                direction: d.direction().to_string(),
                witness: d.subset.to_vec(),
            })
            .collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureReport {
    pub conjecture: ConjectureId,
    pub max_n: usize,
    pub graphs_checked: usize,
    /// Graphs checked per vertex count, ascending.
    pub per_n: Vec<(usize, usize)>,
    /// All violations found, including those beyond `violations.len()`.
    pub violation_count: usize,
    /// The first `max_violations` violations in (n, canonical form) order.
    pub violations: Vec<ViolationRecord>,
}

impl ConjectureReport {
    pub fn is_consistent(&self) -> bool {
        self.violation_count == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "conjecture": self.conjecture.as_str(),
            "max_n": self.max_n,
            "graphs_checked": self.graphs_checked,
            "per_n": self.per_n.iter().map(|&(n, k)| json!({"n": n, "graphs": k})).collect::<Vec<_>>(),
            "violation_count": self.violation_count,
            "violations": self.violations.iter().map(ViolationRecord::to_json).collect::<Vec<_>>(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub conjecture: ConjectureId,
    pub max_n: usize,
    pub max_violations: usize,
    pub jobs: usize,
    pub enumeration: EnumerationConfig,
}

impl SearchOptions {
    pub fn new(conjecture: ConjectureId, max_n: usize, max_violations: usize) -> Self {
        SearchOptions {
            conjecture,
            max_n,
            max_violations,
            jobs: 1,
            enumeration: EnumerationConfig::default(),
        }
    }
}

/// Runs the checker over every connected graph with `first_n..=max_n`
/// vertices (3 for C42, 4 for C44). Output does not depend on `jobs`.
pub fn search(opts: &SearchOptions) -> Result<ConjectureReport, QuadError> {
    if opts.max_n < 3 {
        return Err(QuadError::RangeTooSmall(opts.max_n));
    }
    // Validate the cap before doing any work.
    Enumerator::new(opts.max_n, &opts.enumeration)?;

    let pool = (opts.jobs > 1).then(|| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .expect("thread pool")
    });

    let mut per_n = Vec::new();
    let mut graphs_checked = 0;
    let mut all = Vec::new();
    for n in opts.conjecture.first_n()..=opts.max_n {
        let graphs = Enumerator::new(n, &opts.enumeration)?.graphs(opts.jobs);
        let check = |g: &Graph| per_graph(opts.conjecture, g);
        let results: Result<Vec<Vec<ViolationRecord>>, QuadError> = match &pool {
            Some(pool) => {
                use rayon::prelude::*;
                pool.install(|| graphs.par_iter().map(check).collect())
            }
            None => graphs.iter().map(check).collect(),
        };
        per_n.push((n, graphs.len()));
        graphs_checked += graphs.len();
        all.extend(results?.into_iter().flatten());
    }
    let violation_count = all.len();
    all.truncate(opts.max_violations);
    Ok(ConjectureReport {
        conjecture: opts.conjecture,
        max_n: opts.max_n,
        graphs_checked,
        per_n,
        violation_count,
        violations: all,
    })
}
