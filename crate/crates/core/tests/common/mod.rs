//! Generators and brute-force oracles shared by the integration tests. None of
//! the oracles call into the code paths they are used to check.

#![allow(dead_code, clippy::needless_range_loop)]

use graphmetric::{Graph, MetricSpace, Rational};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random connected graph: a random spanning tree plus each remaining pair
/// with probability `extra`.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize, extra: f64) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = std::collections::BTreeSet::new();
    for k in 1..n {
        let parent = order[rng.gen_range(0..k)];
        let (a, b) = (order[k], parent);
        edges.insert((a.min(b), a.max(b)));
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(extra) {
                edges.insert((i, j));
            }
        }
    }
    Graph::with_default_labels(n, edges).unwrap()
}

/// Floyd-Warshall over the adjacency relation; `None` for unreachable.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<Option<u32>>> {
    let n = g.len();
    let mut d = vec![vec![None; n]; n];
    for i in 0..n {
        d[i][i] = Some(0);
        for j in 0..n {
            if i != j && g.has_edge(i, j) {
                d[i][j] = Some(1);
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

/// Every shortest path between `x` and `z`, by depth-bounded DFS over simple
/// paths.
pub fn all_shortest_paths(g: &Graph, x: usize, z: usize) -> Vec<Vec<usize>> {
    let fw = floyd_warshall(g);
    let Some(target) = fw[x][z] else { return Vec::new() };
    let mut out = Vec::new();
    let mut path = vec![x];
    fn go(g: &Graph, z: usize, left: u32, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let cur = *path.last().unwrap();
        if left == 0 {
            if cur == z {
                out.push(path.clone());
            }
            return;
        }
        for &v in g.neighbors(cur) {
            if !path.contains(&v) {
                path.push(v);
                go(g, z, left - 1, path, out);
                path.pop();
            }
        }
    }
    go(g, z, target, &mut path, &mut out);
    out
}

/// Line embedding oracle: fix the first point at 0 and try every sign for
/// the others (`2^(n-1)` assignments).
pub fn line_embeddable_by_signs(m: &MetricSpace) -> bool {
    let n = m.len();
    if n <= 2 {
        return true;
    }
    for signs in 0u32..1 << (n - 1) {
        let coords: Vec<Rational> = (0..n)
            .map(|i| {
                if i == 0 {
                    Rational::ZERO
                } else if signs >> (i - 1) & 1 == 1 {
                    -m.d(0, i)
                } else {
                    m.d(0, i)
                }
            })
            .collect();
        let ok = (0..n).all(|i| {
            (0..n).all(|j| {
                let diff = coords[i] - coords[j];
                let abs = if diff.is_negative() { -diff } else { diff };
                abs == m.d(i, j)
            })
        });
        if ok {
            return true;
        }
    }
    false
}

/// Pseudo-linear pattern test for an explicit ordering.
pub fn is_plq_ordering(m: &MetricSpace, o: [usize; 4]) -> Option<(Rational, Rational)> {
    let [x1, x2, x3, x4] = o;
    let s = m.d(x1, x2);
    let t = m.d(x2, x3);
    let ok = m.d(x3, x4) == s
        && m.d(x1, x4) == t
        && m.d(x1, x3) == s + t
        && m.d(x2, x4) == s + t
        && !s.is_zero()
        && !t.is_zero();
    ok.then_some((s, t))
}

pub fn permutations4(p: [usize; 4]) -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    if a != b && a != c && a != d && b != c && b != d && c != d {
                        out.push([p[a], p[b], p[c], p[d]]);
                    }
                }
            }
        }
    }
    out
}

/// Equilateral test over all 24 orderings.
pub fn equilateral_by_orderings(m: &MetricSpace, p: [usize; 4]) -> bool {
    permutations4(p)
        .into_iter()
        .any(|o| matches!(is_plq_ordering(m, o), Some((s, t)) if s == t))
}

/// Random valid integer metric: random symmetric table in `1..=max_d`,
/// kept only if it satisfies the triangle inequality.
pub fn random_integer_metric<R: Rng>(rng: &mut R, n: usize, max_d: i64) -> Option<MetricSpace> {
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.gen_range(1..=max_d);
            rows[i][j] = v;
            rows[j][i] = v;
        }
    }
    MetricSpace::from_integer_rows(&rows).ok()
}

/// Random rational metric with finite-decimal entries. Distances are drawn
/// from `[lo, lo + 1)` with one or two decimal places, which always satisfies
/// the triangle inequality when `lo >= 1`.
pub fn random_decimal_metric<R: Rng>(rng: &mut R, n: usize) -> MetricSpace {
    let lo: i64 = rng.gen_range(1..4);
    let mut rows = vec![vec![Rational::ZERO; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let text = if rng.gen_bool(0.5) {
                format!("{}.{}", lo, rng.gen_range(0..10))
            } else {
                format!("{}.{:02}", lo, rng.gen_range(0..100))
            };
            let v: Rational = text.parse().unwrap();
            rows[i][j] = v;
            rows[j][i] = v;
        }
    }
    MetricSpace::from_rows((0..n).map(|i| format!("q{i}")), &rows).unwrap()
}

/// Random subset (size `k`) of the geodesic metric of `g`, in random order.
pub fn random_subspace<R: Rng>(rng: &mut R, g: &Graph, k: usize) -> MetricSpace {
    let m = g.geodesic_metric().unwrap();
    let mut idx: Vec<usize> = (0..g.len()).collect();
    idx.shuffle(rng);
    idx.truncate(k);
    m.subspace_by_index(&idx)
}

pub fn next_permutation(a: &mut [usize]) -> bool {
    let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else {
        return false;
    };
    let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).unwrap();
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Relabels `g` by `perm` (new index of old vertex `v` is `perm[v]`),
/// keeping default labels.
pub fn permuted(g: &Graph, perm: &[usize]) -> Graph {
    Graph::with_default_labels(g.len(), g.edges().map(|(a, b)| (perm[a], perm[b]))).unwrap()
}

/// Geodesic metric of a random connected graph scaled by `k/10`.
pub fn random_scaled_graph_metric<R: Rng>(rng: &mut R, n: usize) -> MetricSpace {
    let g = random_connected_graph(rng, n, 0.3);
    let m = g.geodesic_metric().unwrap();
    let scale = Rational::new(rng.gen_range(1..=25), 10);
    let rows: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| m.d(i, j) * scale).collect()).collect();
    MetricSpace::from_rows(m.labels().to_vec(), &rows).unwrap()
}
