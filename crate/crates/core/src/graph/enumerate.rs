//! Exhaustive enumeration of connected graphs up to isomorphism.
//!
//! Every labeled graph on `n` vertices is a bitmask over the vertex pairs in
//! the canonical code order. A mask is kept when it is connected and equal to
//! its own canonical code, so exactly one mask survives per isomorphism class
//! and no shared dedup set is needed between workers.

use std::ops::Range;

use rayon::prelude::*;

use super::canon::{adjacency_from_code, graph_from_adjacency, is_canonical_code, pair_count, CanonicalForm};
use super::{Graph, GraphError, DEFAULT_CAP};

/// Enumeration above this many vertices is refused outright.
pub const ENUMERATION_HARD_CAP: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationConfig {
    pub max_n: usize,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig { max_n: DEFAULT_CAP }
    }
}

/// Connected graph enumeration for one vertex count.
#[derive(Debug, Clone)]
pub struct Enumerator {
    n: usize,
}

fn connected(n: usize, adj: &[u16]) -> bool {
    let all: u16 = if n == 16 { u16::MAX } else { (1 << n) - 1 };
    let mut seen: u16 = 1;
    let mut frontier: u16 = 1;
    while frontier != 0 {
        let mut next = 0u16;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[v];
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen & all == all
}

impl Enumerator {
    pub fn new(n: usize, config: &EnumerationConfig) -> Result<Self, GraphError> {
        let cap = config.max_n.min(ENUMERATION_HARD_CAP);
        if n > cap {
            return Err(GraphError::TooLarge { n, cap });
        }
        if n == 0 {
            return Err(GraphError::Invalid("enumeration needs n >= 1".into()));
        }
        Ok(Enumerator { n })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    fn mask_count(&self) -> u64 {
        1u64 << pair_count(self.n)
    }

    /// Splits the mask space into contiguous ranges of leading-bit prefixes.
    pub fn work_items(&self, parts: usize) -> Vec<Range<u64>> {
        let total = self.mask_count();
        let parts = (parts.max(1) as u64).min(total);
        let step = total.div_ceil(parts);
        (0..parts)
            .map(|k| k * step..((k + 1) * step).min(total))
            .filter(|r| !r.is_empty())
            .collect()
    }

    /// Canonical codes of the connected classes whose representative mask
    /// falls in `range`, ascending.
    pub fn run(&self, range: Range<u64>) -> Vec<CanonicalForm> {
        let n = self.n;
        let mut out = Vec::new();
        for mask in range {
            let code = mask as u128;
            let adj = adjacency_from_code(n, code);
            if connected(n, &adj) && is_canonical_code(n, code, &adj) {
                out.push(CanonicalForm::from_code(n, code));
            }
        }
        out
    }

    /// All classes, sorted by canonical form. `jobs > 1` spreads the work
    /// over a thread pool; the result does not depend on `jobs`.
    pub fn canonical_forms(&self, jobs: usize) -> Vec<CanonicalForm> {
        if jobs <= 1 {
            return self.run(0..self.mask_count());
        }
        let items = self.work_items(jobs * 16);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        let chunks: Vec<Vec<CanonicalForm>> =
            pool.install(|| items.into_par_iter().map(|r| self.run(r)).collect());
        // Ranges are ascending and disjoint, so concatenation stays sorted.
        chunks.into_iter().flatten().collect()
    }

    pub fn graphs(&self, jobs: usize) -> Vec<Graph> {
        self.canonical_forms(jobs)
            .iter()
            .map(|f| {
                let adj = adjacency_from_code(self.n, f.code());
                graph_from_adjacency(self.n, &adj)
            })
            .collect()
    }
}

/// One representative per isomorphism class of connected graphs on `n`
/// vertices, in canonical-form order, using the default cap.
pub fn enumerate_connected_graphs(n: usize) -> Result<Vec<Graph>, GraphError> {
    Ok(Enumerator::new(n, &EnumerationConfig::default())?.graphs(1))
}

/// Number of connected classes on `n` vertices.
pub fn connected_graph_count(n: usize) -> Result<usize, GraphError> {
    Ok(Enumerator::new(n, &EnumerationConfig::default())?.canonical_forms(1).len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::canonical_form;

    #[test]
    fn known_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| connected_graph_count(n).unwrap()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn representatives_are_connected_and_canonical() {
        for n in 1..=5 {
            for g in enumerate_connected_graphs(n).unwrap() {
                assert!(g.is_connected());
                let form = canonical_form(&g, DEFAULT_CAP).unwrap();
                assert_eq!(form.to_graph(), g);
            }
        }
    }

    #[test]
    fn caps() {
        assert_eq!(
            Enumerator::new(9, &EnumerationConfig { max_n: 20 }).unwrap_err(),
            GraphError::TooLarge { n: 9, cap: 8 }
        );
        assert_eq!(
            Enumerator::new(6, &EnumerationConfig { max_n: 5 }).unwrap_err(),
            GraphError::TooLarge { n: 6, cap: 5 }
        );
    }

    #[test]
    fn jobs_do_not_change_output() {
        let e = Enumerator::new(5, &EnumerationConfig::default()).unwrap();
        assert_eq!(e.canonical_forms(1), e.canonical_forms(3));
        let items = e.work_items(7);
        assert_eq!(items.first().unwrap().start, 0);
        assert_eq!(items.last().unwrap().end, 1 << 10);
        assert!(items.windows(2).all(|w| w[0].end == w[1].start));
    }
}
