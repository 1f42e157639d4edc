//! Brute-force canonical labeling for very small graphs.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::{Serialize, Serializer};

use super::{write_graph6, Graph, GraphError};

/// Largest order accepted by [`canonical_label`]; 8! relabelings per call.
pub const MAX_CANONICAL_VERTICES: usize = 8;

/// Largest order accepted by [`enumerate_nonisomorphic`].
pub const MAX_ENUMERATED_VERTICES: usize = 5;

/// Isomorphism-class key: the vertex count and the minimum, over all vertex
/// orders, of the upper-triangle adjacency bits read in graph6 order
/// (`x_{0,1}` most significant).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    n: u8,
    bits: u32,
}

impl CanonicalKey {
    pub fn order(&self) -> usize {
        self.n as usize
    }

    /// The canonical representative: the labeling that attains the key.
    pub fn to_graph(&self) -> Graph {
        let n = self.order();
        let pairs = n * n.saturating_sub(1) / 2;
        let mut g = Graph::empty(n).expect("n <= 8");
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if self.bits >> (pairs - 1 - k) & 1 == 1 {
                    g.add_edge(i, j).expect("in range");
                }
                k += 1;
            }
        }
        g
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_graph6(&self.to_graph()))
    }
}

impl Serialize for CanonicalKey {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn bits_under(g: &Graph, order: &[usize]) -> u32 {
    let mut bits = 0u32;
    for j in 1..order.len() {
        let nj = g.neighbors(order[j]);
        for &vi in &order[..j] {
            bits = bits << 1 | (nj >> vi & 1) as u32;
        }
    }
    bits
}

pub fn canonical_label(g: &Graph) -> Result<CanonicalKey, GraphError> {
    let n = g.n();
    if n > MAX_CANONICAL_VERTICES {
        return Err(GraphError::UnsupportedSize(format!(
            "canonical labeling supports at most {MAX_CANONICAL_VERTICES} vertices, got {n}"
        )));
    }
    let bits = (0..n)
        .permutations(n)
        .map(|order| bits_under(g, &order))
        .min()
        .unwrap_or(0);
    Ok(CanonicalKey { n: n as u8, bits })
}

/// Backtracking isomorphism test for graphs of any supported order.
///
/// Vertices of `g` are matched in breadth-first order against degree-equal
/// vertices of `h`, checking adjacency to every vertex already placed.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    let n = g.n();
    if n != h.n() || g.edge_count() != h.edge_count() {
        return false;
    }
    let mut dg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut dh: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return false;
    }
    let mut order = Vec::with_capacity(n);
    let mut seen = 0u64;
    for root in 0..n {
        if seen >> root & 1 == 1 {
            continue;
        }
        seen |= 1 << root;
        let start = order.len();
        order.push(root);
        let mut i = start;
        while i < order.len() {
            for u in super::members(g.neighbors(order[i]) & !seen) {
                seen |= 1 << u;
                order.push(u);
            }
            i += 1;
        }
    }
    let mut image = vec![usize::MAX; n];
    extend_match(g, h, &order, 0, &mut image, 0)
}

fn extend_match(g: &Graph, h: &Graph, order: &[usize], depth: usize, image: &mut [usize], used: u64) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in super::members(h.vertex_set() & !used) {
        if h.degree(w) != g.degree(v) {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| g.has_edge(u, v) == h.has_edge(image[u], w));
        if consistent {
            image[v] = w;
            if extend_match(g, h, order, depth + 1, image, used | 1 << w) {
                return true;
            }
        }
    }
    image[v] = usize::MAX;
    false
}

/// One representative per isomorphism class of graphs on `0..=max_vertices`
/// vertices, sorted by (order, key); the null graph comes first.
pub fn enumerate_nonisomorphic(max_vertices: usize) -> Result<Vec<Graph>, GraphError> {
    if max_vertices > MAX_ENUMERATED_VERTICES {
        return Err(GraphError::UnsupportedSize(format!(
            "enumeration supports at most {MAX_ENUMERATED_VERTICES} vertices, got {max_vertices}"
        )));
    }
    let mut keys = BTreeSet::new();
    for n in 0..=max_vertices {
        let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        for mask in 0u32..1 << pairs.len() {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edges(n, &edges)?;
            keys.insert(canonical_label(&g)?);
        }
    }
    Ok(keys.into_iter().map(|k| k.to_graph()).collect())
}
