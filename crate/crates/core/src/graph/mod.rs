//! Simple undirected graphs on at most 64 vertices.
//!
//! Every vertex set is a `u64` bitmask, so subgraph bookkeeping (memo keys,
//! induced subgraphs, neighborhoods) is a handful of word operations.

mod canon;
mod corpus;
mod families;
mod graph6;

use std::fmt;

use thiserror::Error;

pub use canon::{
    canonical_label, enumerate_nonisomorphic, is_isomorphic, CanonicalKey, MAX_CANONICAL_VERTICES,
    MAX_ENUMERATED_VERTICES,
};
pub use corpus::{naive_cubic_tf_corpus, MAX_CORPUS_ORDER};
pub use families::{generate, FamilySpec};
pub use graph6::{parse_graph6, parse_graph6_list, write_graph6};

/// Hard vertex limit: vertex sets must fit in one machine word.
pub const MAX_VERTICES: usize = 64;

/// A set of vertices, bit `v` set iff vertex `v` is a member.
pub type VertexSet = u64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has {0} vertices; at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("graph6 parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("unsupported size: {0}")]
    UnsupportedSize(String),
}

/// Mask with the lowest `n` bits set.
#[inline]
pub fn full_set(n: usize) -> VertexSet {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterator over the members of a vertex set in ascending order.
#[derive(Clone, Copy, Debug)]
pub struct Members(VertexSet);

impl Iterator for Members {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Members {}

#[inline]
pub fn members(set: VertexSet) -> Members {
    Members(set)
}

/// Undirected simple graph with neighbor-set adjacency.
///
/// Adjacency is symmetric and irreflexive; every constructor enforces this.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Build from per-vertex neighbor masks, validating the invariants.
    pub fn from_adjacency(adj: Vec<VertexSet>) -> Result<Self, GraphError> {
        let n = adj.len();
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let all = full_set(n);
        for (v, &nb) in adj.iter().enumerate() {
            if nb & !all != 0 {
                let vertex = (nb & !all).trailing_zeros() as usize;
                return Err(GraphError::VertexOutOfRange { vertex, n });
            }
            if nb >> v & 1 == 1 {
                return Err(GraphError::SelfLoop(v));
            }
            for u in members(nb) {
                if adj[u] >> v & 1 == 0 {
                    return Err(GraphError::InvalidParameters(format!(
                        "adjacency not symmetric between {v} and {u}"
                    )));
                }
            }
        }
        Ok(Graph { n, adj })
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertex_set(&self) -> VertexSet {
        full_set(self.n)
    }

    /// Open neighborhood N(v).
    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    /// Closed neighborhood N[v].
    #[inline]
    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        self.adj[v] | 1 << v
    }

    pub fn adjacency(&self) -> &[VertexSet] {
        &self.adj
    }

    /// Union of the open neighborhoods of every vertex in `set`.
    pub fn neighborhood_of(&self, set: VertexSet) -> VertexSet {
        members(set).fold(0, |acc, v| acc | self.adj[v])
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `v` then `u`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for v in 0..self.n {
            for u in members(self.adj[v] & full_set(v)) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn is_independent(&self, set: VertexSet) -> bool {
        members(set).all(|v| self.adj[v] & set == 0)
    }

    /// `Some(d)` when every vertex has degree `d`; the null graph reports 0.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = if self.n == 0 { 0 } else { self.degree(0) };
        (0..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    pub fn is_triangle_free(&self) -> bool {
        (0..self.n).all(|v| members(self.adj[v] & !full_set(v + 1)).all(|u| self.adj[u] & self.adj[v] == 0))
    }

    /// Whether `set` induces a complete graph (the empty set counts).
    pub fn is_clique(&self, set: VertexSet) -> bool {
        members(set).all(|v| set & !(1 << v) & !self.adj[v] == 0)
    }

    pub fn is_complete(&self) -> bool {
        self.is_clique(self.vertex_set())
    }

    pub fn is_edgeless(&self) -> bool {
        self.adj.iter().all(|&a| a == 0)
    }

    /// Whether the graph is a disjoint union of copies of `K_{d+1}`, with `d`
    /// the common degree. Equivalent to every closed neighborhood being a clique.
    pub fn is_disjoint_union_of_cliques(&self) -> bool {
        self.regular_degree().is_some() && (0..self.n).all(|v| self.is_clique(self.adj[v]))
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen: VertexSet = 1;
        let mut frontier: VertexSet = 1;
        while frontier != 0 {
            frontier = self.neighborhood_of(frontier) & !seen;
            seen |= frontier;
        }
        seen == self.vertex_set()
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for root in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[root] = 0;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for u in members(self.adj[v]) {
                    if dist[u] == usize::MAX {
                        dist[u] = dist[v] + 1;
                        parent[u] = v;
                        queue.push_back(u);
                    } else if parent[v] != u {
                        let len = dist[u] + dist[v] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Subgraph induced on `set`, vertices relabeled in ascending order.
    pub fn induced_subgraph(&self, set: VertexSet) -> Graph {
        let set = set & self.vertex_set();
        let verts: Vec<usize> = members(set).collect();
        let mut adj = vec![0; verts.len()];
        for (i, &v) in verts.iter().enumerate() {
            for (j, &u) in verts.iter().enumerate() {
                if self.has_edge(v, u) {
                    adj[i] |= 1 << j;
                }
            }
        }
        Graph { n: verts.len(), adj }
    }

    /// Apply a relabeling: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut adj = vec![0; self.n];
        for v in 0..self.n {
            for u in members(self.adj[v]) {
                adj[perm[v]] |= 1 << perm[u];
            }
        }
        Graph { n: self.n, adj }
    }

    /// Disjoint union, `other`'s vertices shifted past ours.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|a| a << self.n));
        Ok(Graph { n, adj })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_graph6(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(3, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(Graph::empty(65), Err(GraphError::TooManyVertices(65)));
        assert!(Graph::from_adjacency(vec![0b10, 0]).is_err());
    }

    #[test]
    fn regular_degree_cases() {
        let k4 = generate(&FamilySpec::Complete(4)).unwrap();
        assert_eq!(k4.regular_degree(), Some(3));
        assert_eq!(path(3).regular_degree(), None);
        assert_eq!(Graph::empty(0).unwrap().regular_degree(), Some(0));
        let gp72 = generate(&FamilySpec::GeneralizedPetersen { n: 7, k: 2 }).unwrap();
        assert_eq!(gp72.regular_degree(), Some(3));
    }

    #[test]
    fn triangle_free_cases() {
        assert!(!generate(&FamilySpec::Complete(3)).unwrap().is_triangle_free());
        assert!(generate(&FamilySpec::Biclique(3)).unwrap().is_triangle_free());
        let petersen = generate(&FamilySpec::GeneralizedPetersen { n: 5, k: 2 }).unwrap();
        // exhaustive triple check
        let n = petersen.n();
        let mut triangles = 0;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if petersen.has_edge(a, b) && petersen.has_edge(b, c) && petersen.has_edge(a, c) {
                        triangles += 1;
                    }
                }
            }
        }
        assert_eq!(triangles, 0);
        assert!(petersen.is_triangle_free());
    }

    #[test]
    fn induced_subgraphs() {
        let k4 = generate(&FamilySpec::Complete(4)).unwrap();
        assert_eq!(k4.induced_subgraph(0).n(), 0);
        assert_eq!(k4.induced_subgraph(0b0111), generate(&FamilySpec::Complete(3)).unwrap());
        let c5 = generate(&FamilySpec::Cycle(5)).unwrap();
        // {0,2,3}: only edge 2-3, relabeled to 1-2
        let h = c5.induced_subgraph(0b01101);
        assert_eq!(h, Graph::from_edges(3, &[(1, 2)]).unwrap());
    }

    #[test]
    fn disjoint_clique_union() {
        let k4 = generate(&FamilySpec::Complete(4)).unwrap();
        assert!(k4.is_disjoint_union_of_cliques());
        assert!(k4.disjoint_union(&k4).unwrap().is_disjoint_union_of_cliques());
        assert!(!generate(&FamilySpec::Biclique(3))
            .unwrap()
            .is_disjoint_union_of_cliques());
        assert!(!k4
            .disjoint_union(&generate(&FamilySpec::Complete(3)).unwrap())
            .unwrap()
            .is_disjoint_union_of_cliques());
    }

    #[test]
    fn connectivity_and_girth() {
        let c5 = generate(&FamilySpec::Cycle(5)).unwrap();
        assert!(c5.is_connected());
        assert_eq!(c5.girth(), Some(5));
        assert_eq!(path(4).girth(), None);
        let two = c5.disjoint_union(&c5).unwrap();
        assert!(!two.is_connected());
    }
}
