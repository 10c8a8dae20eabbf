//! Finite metric spaces as geodesic metrics of graphs.
//!
//! The crate covers four layers:
//!
//! * [`metric`]: exact finite metric spaces, betweenness, the midpoint
//!   condition that characterizes graph metrics, irreducible pairs and the
//!   ceiling transform.
//! * [`graph`]: simple graphs, BFS distances, shapes, canonical forms and
//!   exhaustive enumeration of small connected graphs.
//! * [`realization`]: graphs realizing or isometrically embedding a metric,
//!   each verified by BFS before it is returned.
//! * [`quadruples`]: the betweenness class, line embeddings, pseudo-linear
//!   quadruples, the four-point inequality and small-graph searches.

#![allow(clippy::needless_range_loop)]

pub mod graph;
pub mod metric;
pub mod quadruples;
pub mod rational;
pub mod realization;

pub use graph::{Graph, GraphError, ShapeClass};
pub use metric::{Check, MetricError, MetricSpace, X2Set};
pub use rational::Rational;
pub use realization::{ceil_embed, embed, realize, verify_map, EmbeddingMap, RealizationError, RealizationResult};
