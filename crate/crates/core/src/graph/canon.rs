//! Canonical forms by exhaustive permutation search.
//!
//! A labeling of an `n`-vertex graph is written as the upper triangle of its
//! adjacency matrix in column-major order: `(0,1), (0,2), (1,2), (0,3), ...`.
//! The canonical code is the lexicographically greatest such string over all
//! `n!` labelings. Because each column only involves already-placed vertices,
//! the search fixes positions left to right and only branches on the vertices
//! that tie for the best column, which keeps sparse graphs cheap.

use std::fmt;

use super::{Graph, GraphError};

/// Default vertex cap for canonical forms and enumeration.
pub const DEFAULT_CAP: usize = 8;

/// Codes are held in a `u128`, which fits `16 * 15 / 2 = 120` bits.
pub const CANON_HARD_LIMIT: usize = 16;

/// Byte encoding `[n, code bits packed MSB first]`. Equal forms mean
/// isomorphic graphs.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub(crate) fn from_code(n: usize, code: u128) -> Self {
        let bits = pair_count(n);
        let nbytes = bits.div_ceil(8);
        let mut out = Vec::with_capacity(1 + nbytes);
        out.push(n as u8);
        // Left-align the code so byte order matches code order.
        let aligned = if bits == 0 { 0 } else { code << (nbytes * 8 - bits) };
        for b in (0..nbytes).rev() {
            out.push((aligned >> (b * 8)) as u8);
        }
        CanonicalForm(out)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn vertex_count(&self) -> usize {
        self.0[0] as usize
    }

    pub(crate) fn code(&self) -> u128 {
        let n = self.vertex_count();
        let bits = pair_count(n);
        let nbytes = bits.div_ceil(8);
        let aligned = self.0[1..].iter().fold(0u128, |acc, &b| (acc << 8) | b as u128);
        if bits == 0 {
            0
        } else {
            aligned >> (nbytes * 8 - bits)
        }
    }

    /// The graph on `v0..v{n-1}` whose identity labeling is canonical.
    pub fn to_graph(&self) -> Graph {
        let n = self.vertex_count();
        let adj = adjacency_from_code(n, self.code());
        graph_from_adjacency(n, &adj)
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm(")?;
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Bit position (from the least significant end) of pair `(q, p)`, `q < p`.
#[inline]
pub(crate) fn pair_bit(n: usize, q: usize, p: usize) -> usize {
    pair_count(n) - 1 - (p * (p - 1) / 2 + q)
}

pub(crate) fn adjacency_from_code(n: usize, code: u128) -> Vec<u16> {
    let mut adj = vec![0u16; n];
    for p in 1..n {
        for q in 0..p {
            if (code >> pair_bit(n, q, p)) & 1 == 1 {
                adj[p] |= 1 << q;
                adj[q] |= 1 << p;
            }
        }
    }
    adj
}

pub(crate) fn graph_from_adjacency(n: usize, adj: &[u16]) -> Graph {
    let edges = (0..n).flat_map(|i| (i + 1..n).filter(move |&j| adj[i] >> j & 1 == 1).map(move |j| (i, j)));
    Graph::with_default_labels(n, edges).expect("adjacency bitsets describe a simple graph")
}

struct Search<'a> {
    n: usize,
    total_bits: usize,
    adj: &'a [u16],
    best: Option<u128>,
    /// Stop as soon as any labeling beats `best`.
    abort_on_improvement: bool,
    aborted: bool,
}

impl Search<'_> {
    fn dfs(&mut self, p: usize, used: u16, col: &[u16; CANON_HARD_LIMIT], prefix: u128, bits: usize) {
        if self.aborted {
            return;
        }
        if p == self.n {
            match self.best {
                Some(b) if prefix <= b => {}
                Some(_) if self.abort_on_improvement => self.aborted = true,
                _ => self.best = Some(prefix),
            }
            return;
        }
        let mut top = 0u16;
        for v in 0..self.n {
            if used >> v & 1 == 0 {
                top = top.max(col[v]);
            }
        }
        let next = (prefix << p) | top as u128;
        let next_bits = bits + p;
        if let Some(b) = self.best {
            let best_prefix = b >> (self.total_bits - next_bits);
            if next < best_prefix {
                return;
            }
            if next > best_prefix && self.abort_on_improvement {
                self.aborted = true;
                return;
            }
        }
        for v in 0..self.n {
            if used >> v & 1 == 1 || col[v] != top {
                continue;
            }
            let mut child = [0u16; CANON_HARD_LIMIT];
            for w in 0..self.n {
                child[w] = (col[w] << 1) | (self.adj[w] >> v & 1);
            }
            self.dfs(p + 1, used | 1 << v, &child, next, next_bits);
            if self.aborted {
                return;
            }
        }
    }
}

/// Greatest column-major code over all labelings.
pub(crate) fn canonical_code(n: usize, adj: &[u16]) -> u128 {
    let mut search = Search {
        n,
        total_bits: pair_count(n),
        adj,
        best: None,
        abort_on_improvement: false,
        aborted: false,
    };
    search.dfs(0, 0, &[0; CANON_HARD_LIMIT], 0, 0);
    search.best.expect("at least one labeling exists")
}

/// True when no relabeling of `code` produces a greater code, i.e. the
/// identity labeling is already canonical.
pub(crate) fn is_canonical_code(n: usize, code: u128, adj: &[u16]) -> bool {
    let mut search = Search {
        n,
        total_bits: pair_count(n),
        adj,
        best: Some(code),
        abort_on_improvement: true,
        aborted: false,
    };
    search.dfs(0, 0, &[0; CANON_HARD_LIMIT], 0, 0);
    !search.aborted
}

/// Canonical form of `g`; graphs with more than `cap` vertices are refused.
pub fn canonical_form(g: &Graph, cap: usize) -> Result<CanonicalForm, GraphError> {
    let n = g.len();
    let cap = cap.min(CANON_HARD_LIMIT);
    if n > cap {
        return Err(GraphError::TooLarge { n, cap });
    }
    let adj: Vec<u16> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u16, |acc, &w| acc | 1 << w))
        .collect();
    Ok(CanonicalForm::from_code(n, canonical_code(n, &adj)))
}
