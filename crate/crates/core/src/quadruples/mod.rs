//! Betweenness class checks, line embeddings and four-point structure.

mod conjecture;

use thiserror::Error;

use crate::graph::GraphError;
use crate::metric::{Check, MetricError, MetricSpace};
use crate::rational::Rational;

pub use conjecture::{
    check_conjecture_42, check_conjecture_44, search, C42Direction, C42Outcome, C44Disagreement, ConjectureId,
    ConjectureReport, SearchOptions, ViolationRecord,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadError {
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("expected 4 distinct points, got {0:?}")]
    WrongArity(Vec<String>),
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("graph has {0} vertices; at least 4 are needed")]
    TooSmall(usize),
    #[error("max_n must be at least 3, got {0}")]
    RangeTooSmall(usize),
}

/// Ordered triple `(x, y, z)` with `d(x,z) >= max(d(x,y), d(y,z))` but
/// `d(x,z) != d(x,y) + d(y,z)`.
pub type TripleWitness = (String, String, String);

/// Index form of [`mb_check`]: the first failing ordered triple of distinct
/// indices in lexicographic order.
pub fn mb_witness(m: &MetricSpace) -> Option<(usize, usize, usize)> {
    let n = m.len();
    for x in 0..n {
        for y in 0..n {
            if y == x {
                continue;
            }
            for z in 0..n {
                if z == x || z == y {
                    continue;
                }
                let (dxz, dxy, dyz) = (m.d(x, z), m.d(x, y), m.d(y, z));
                if dxz >= dxy.max(dyz) && dxz != dxy + dyz {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// Membership in the class where the longest side of every triangle is the
/// sum of the other two.
pub fn mb_check(m: &MetricSpace) -> Check<TripleWitness> {
    match mb_witness(m) {
        None => Check::Pass,
        Some((x, y, z)) => Check::Fail((m.label(x).into(), m.label(y).into(), m.label(z).into())),
    }
}

/// Coordinates on the real line reproducing every distance, with the first
/// point at 0 and the second on the positive side, or `None` if no such
/// embedding exists.
pub fn line_embed(m: &MetricSpace) -> Option<Vec<Rational>> {
    let n = m.len();
    let mut coords = vec![Rational::ZERO; n];
    if n >= 2 {
        coords[1] = m.d(0, 1);
        let anchor = coords[1];
        for z in 2..n {
            let r = m.d(0, z);
            // At most one of +r, -r can sit at distance d(p1, z) from anchor > 0.
            let fits = |c: Rational| abs(c - anchor) == m.d(1, z);
            coords[z] = if fits(r) {
                r
            } else if fits(-r) {
                -r
            } else {
                return None;
            };
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if abs(coords[i] - coords[j]) != m.d(i, j) {
                return None;
            }
        }
    }
    Some(coords)
}

fn abs(r: Rational) -> Rational {
    if r.is_negative() {
        -r
    } else {
        r
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlqKind {
    NotPlq,
    /// `d(x1,x2) = d(x3,x4) = s`, `d(x2,x3) = d(x1,x4) = t`,
    /// `d(x1,x3) = d(x2,x4) = s + t`, normalized so `s <= t`.
    Plq {
        s: Rational,
        t: Rational,
        ordering: [String; 4],
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlqClassification {
    pub kind: PlqKind,
    pub equilateral: bool,
}

impl PlqClassification {
    pub fn is_plq(&self) -> bool {
        matches!(self.kind, PlqKind::Plq { .. })
    }
}

fn four_indices<S: AsRef<str>>(m: &MetricSpace, labels: &[S]) -> Result<[usize; 4], QuadError> {
    let names = || labels.iter().map(|l| l.as_ref().to_string()).collect();
    if labels.len() != 4 {
        return Err(QuadError::WrongArity(names()));
    }
    let mut idx = [0usize; 4];
    for (slot, l) in idx.iter_mut().zip(labels) {
        *slot = m.index_of(l.as_ref())?;
    }
    if (0..4).any(|i| (i + 1..4).any(|j| idx[i] == idx[j])) {
        return Err(QuadError::WrongArity(names()));
    }
    Ok(idx)
}

/// Index form of [`plq_classify`]. Returns `(s, t, ordering)` on success.
pub fn plq_pattern(m: &MetricSpace, p: [usize; 4]) -> Option<(Rational, Rational, [usize; 4])> {
    let [a, b, c, d] = p;
    // The three ways to split four points into two opposite pairs.
    let matchings = [[(a, b), (c, d)], [(a, c), (b, d)], [(a, d), (b, c)]];
    let value = |mt: &[(usize, usize); 2]| {
        let (u, v) = (m.d(mt[0].0, mt[0].1), m.d(mt[1].0, mt[1].1));
        (u == v).then_some(u)
    };
    let partner = |mt: &[(usize, usize); 2]| if mt[0].0 == a { mt[0].1 } else { mt[0].0 };
    for diag in 0..3 {
        let others: Vec<usize> = (0..3).filter(|&k| k != diag).collect();
        let (m1, m2) = (&matchings[others[0]], &matchings[others[1]]);
        let (Some(diag_len), Some(u), Some(v)) = (value(&matchings[diag]), value(m1), value(m2)) else {
            continue;
        };
        if u.is_zero() || v.is_zero() || diag_len != u + v {
            continue;
        }
        let (s, t, s_match, t_match) = if u <= v { (u, v, m1, m2) } else { (v, u, m2, m1) };
        let ordering = [a, partner(s_match), partner(&matchings[diag]), partner(t_match)];
        return Some((s, t, ordering));
    }
    None
}

/// Looks for an ordering of the four points matching the pseudo-linear
/// pattern. The first point of the ordering is always `labels[0]`.
pub fn plq_classify<S: AsRef<str>>(m: &MetricSpace, labels: &[S]) -> Result<PlqClassification, QuadError> {
    let idx = four_indices(m, labels)?;
    Ok(match plq_pattern(m, idx) {
        None => PlqClassification {
            kind: PlqKind::NotPlq,
            equilateral: false,
        },
        Some((s, t, ord)) => PlqClassification {
            kind: PlqKind::Plq {
                s,
                t,
                ordering: ord.map(|i| m.label(i).to_string()),
            },
            equilateral: s == t,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadInequality {
    /// `d13 d24 - d12 d34 - d41 d23`
    pub lhs: Rational,
    /// `p^2 / 8` with `p = d12 + d23 + d34 + d41`
    pub bound: Rational,
    pub slack: Rational,
}

/// Index form of [`quad_inequality`].
pub fn quad_inequality_idx(m: &MetricSpace, [x1, x2, x3, x4]: [usize; 4]) -> QuadInequality {
    let lhs = m.d(x1, x3) * m.d(x2, x4) - m.d(x1, x2) * m.d(x3, x4) - m.d(x4, x1) * m.d(x2, x3);
    let p = m.d(x1, x2) + m.d(x2, x3) + m.d(x3, x4) + m.d(x4, x1);
    let bound = p * p * Rational::new(1, 8);
    let slack = bound - lhs;
    assert!(
        !slack.is_negative(),
        "four-point inequality violated (lhs {lhs}, bound {bound}); the input cannot be a metric"
    );
    QuadInequality { lhs, bound, slack }
}

/// Both sides of the four-point inequality for the given ordering.
pub fn quad_inequality<S: AsRef<str>>(m: &MetricSpace, ordering: &[S]) -> Result<QuadInequality, QuadError> {
    Ok(quad_inequality_idx(m, four_indices(m, ordering)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn line(points: &[i64]) -> MetricSpace {
        let rows: Vec<Vec<i64>> = points
            .iter()
            .map(|a| points.iter().map(|b| (a - b).abs()).collect())
            .collect();
        MetricSpace::from_integer_rows(&rows).unwrap()
    }

    fn r(n: i128) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn mb_examples() {
        assert!(mb_check(&Graph::path(6).geodesic_metric().unwrap()).is_pass());
        assert!(mb_check(&Graph::cycle(4).geodesic_metric().unwrap()).is_pass());
        let c5 = Graph::cycle(5).geodesic_metric().unwrap();
        let w = mb_check(&c5).witness().cloned().unwrap();
        assert_eq!(w, ("v0".into(), "v1".into(), "v3".into()));
        let (x, y, z) = (c5.index_of(&w.0).unwrap(), c5.index_of(&w.1).unwrap(), c5.index_of(&w.2).unwrap());
        assert!(c5.d(x, z) >= c5.d(x, y).max(c5.d(y, z)));
        assert_ne!(c5.d(x, z), c5.d(x, y) + c5.d(y, z));
        // The witness given in the docs for C5 also fails.
        let (x, y, z) = (0, 4, 2);
        assert!(c5.d(x, z) >= c5.d(x, y).max(c5.d(y, z)) && c5.d(x, z) != c5.d(x, y) + c5.d(y, z));
        assert!(!mb_check(&Graph::complete(3).geodesic_metric().unwrap()).is_pass());
    }

    #[test]
    fn line_embedding() {
        assert_eq!(line_embed(&line(&[0, 1, 3])), Some(vec![r(0), r(1), r(3)]));
        assert_eq!(line_embed(&line(&[5, 2, 9, 0])), Some(vec![r(0), r(3), r(-4), r(5)]));
        assert_eq!(line_embed(&Graph::cycle(4).geodesic_metric().unwrap()), None);
        assert_eq!(line_embed(&line(&[7])), Some(vec![r(0)]));
        assert_eq!(line_embed(&MetricSpace::from_integer_rows(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]).unwrap()), None);
    }

    #[test]
    fn plq_examples() {
        let c4 = Graph::cycle(4).geodesic_metric().unwrap();
        let cls = plq_classify(&c4, &["v0", "v1", "v2", "v3"]).unwrap();
        assert!(cls.equilateral);
        assert_eq!(
            cls.kind,
            PlqKind::Plq { s: r(1), t: r(1), ordering: ["v0", "v1", "v2", "v3"].map(String::from) }
        );

        let c8 = Graph::cycle(8).geodesic_metric().unwrap();
        let cls = plq_classify(&c8, &["v0", "v2", "v4", "v6"]).unwrap();
        assert!(cls.equilateral);
        assert!(matches!(cls.kind, PlqKind::Plq { s, t, .. } if s == r(2) && t == r(2)));

        let l = line(&[0, 1, 2, 3]);
        let cls = plq_classify(&l, &["p0", "p1", "p2", "p3"]).unwrap();
        assert_eq!(cls.kind, PlqKind::NotPlq);
        assert!(!cls.equilateral);
    }

    #[test]
    fn plq_non_equilateral_normalizes() {
        // Rectangle-like: s = 1, t = 2, diagonals 3, listed with t first.
        let m = MetricSpace::from_integer_rows(&[
            vec![0, 2, 3, 1],
            vec![2, 0, 1, 3],
            vec![3, 1, 0, 2],
            vec![1, 3, 2, 0],
        ])
        .unwrap();
        let cls = plq_classify(&m, &["p0", "p1", "p2", "p3"]).unwrap();
        let PlqKind::Plq { s, t, ordering } = cls.kind else { panic!("expected a PLQ") };
        assert_eq!((s, t), (r(1), r(2)));
        assert!(!cls.equilateral);
        let idx: Vec<usize> = ordering.iter().map(|l| m.index_of(l).unwrap()).collect();
        assert_eq!(idx, vec![0, 3, 2, 1]);
        assert_eq!(m.d(idx[0], idx[1]), s);
        assert_eq!(m.d(idx[2], idx[3]), s);
        assert_eq!(m.d(idx[1], idx[2]), t);
        assert_eq!(m.d(idx[0], idx[3]), t);
        assert_eq!(m.d(idx[0], idx[2]), s + t);
        assert_eq!(m.d(idx[1], idx[3]), s + t);
    }

    #[test]
    fn arity_errors() {
        let c4 = Graph::cycle(4).geodesic_metric().unwrap();
        assert!(matches!(plq_classify(&c4, &["v0", "v1", "v2"]), Err(QuadError::WrongArity(_))));
        assert!(matches!(plq_classify(&c4, &["v0", "v1", "v2", "v2"]), Err(QuadError::WrongArity(_))));
        assert!(matches!(quad_inequality(&c4, &["v0", "v1", "v2", "zz"]), Err(QuadError::Metric(_))));
    }

    #[test]
    fn quad_inequality_examples() {
        let c4 = Graph::cycle(4).geodesic_metric().unwrap();
        let q = quad_inequality(&c4, &["v0", "v1", "v2", "v3"]).unwrap();
        assert_eq!((q.lhs, q.bound, q.slack), (r(2), r(2), r(0)));

        let l = line(&[0, 1, 2, 3]);
        let q = quad_inequality(&l, &["p0", "p1", "p2", "p3"]).unwrap();
        assert_eq!((q.lhs, q.bound, q.slack), (r(0), Rational::new(9, 2), Rational::new(9, 2)));

        let c8 = Graph::cycle(8).geodesic_metric().unwrap();
        let q = quad_inequality(&c8, &["v0", "v2", "v4", "v6"]).unwrap();
        assert_eq!(q.slack, r(0));
        assert_eq!(q.bound, r(8));
    }
}
