//! Desk-scale generator for connected cubic triangle-free graphs.
//!
//! Backtracks over edge sets in breadth-first labeling: vertex 0 is the root,
//! and a vertex's not-yet-seen neighbors always take the next free labels.
//! Every output is connected by construction. No isomorph rejection is done,
//! so a graph may appear under several labelings.

use super::{Graph, GraphError};

pub const MAX_CORPUS_ORDER: usize = 12;

struct Search {
    n: usize,
    adj: Vec<u64>,
    next: usize,
    out: Vec<Graph>,
}

impl Search {
    fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    fn link(&mut self, u: usize, v: usize) {
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    fn unlink(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    fn run(&mut self, v: usize) {
        if v == self.n {
            if self.next == self.n {
                self.out
                    .push(Graph::from_adjacency(self.adj.clone()).expect("valid by construction"));
            }
            return;
        }
        if v >= self.next {
            // v was never reached from the root
            return;
        }
        let need = 3 - self.degree(v);
        let candidates: Vec<usize> = (v + 1..self.next)
            .filter(|&u| self.degree(u) < 3 && self.adj[u] >> v & 1 == 0 && self.adj[u] & self.adj[v] == 0)
            .collect();
        for fresh in 0..=need {
            if self.next + fresh > self.n {
                break;
            }
            self.choose_old(v, &candidates, 0, need - fresh, fresh);
        }
    }

    /// Pick `remaining` old neighbors for `v` from `candidates[start..]`, then
    /// attach `fresh` new vertices and move on.
    fn choose_old(&mut self, v: usize, candidates: &[usize], start: usize, remaining: usize, fresh: usize) {
        if remaining == 0 {
            let first = self.next;
            for w in first..first + fresh {
                self.link(v, w);
            }
            self.next += fresh;
            self.run(v + 1);
            self.next -= fresh;
            for w in first..first + fresh {
                self.unlink(v, w);
            }
            return;
        }
        for idx in start..candidates.len() {
            if candidates.len() - idx < remaining {
                break;
            }
            let u = candidates[idx];
            // u must not close a triangle with old neighbors chosen in this step
            if self.adj[u] & self.adj[v] != 0 {
                continue;
            }
            self.link(u, v);
            self.choose_old(v, candidates, idx + 1, remaining - 1, fresh);
            self.unlink(u, v);
        }
    }
}

/// All connected 3-regular triangle-free graphs on `n` vertices, possibly
/// with isomorphic duplicates. `n` must be even with `4 <= n <= 12`.
pub fn naive_cubic_tf_corpus(n: usize) -> Result<Vec<Graph>, GraphError> {
    if n % 2 == 1 || !(4..=MAX_CORPUS_ORDER).contains(&n) {
        return Err(GraphError::InvalidParameters(format!(
            "cubic corpus needs an even order in 4..={MAX_CORPUS_ORDER}, got {n}"
        )));
    }
    let mut search = Search {
        n,
        adj: vec![0; n],
        next: 1,
        out: Vec::new(),
    };
    search.run(0);
    debug_assert!(search
        .out
        .iter()
        .all(|g| g.regular_degree() == Some(3) && g.is_triangle_free() && g.is_connected()));
    Ok(search.out)
}
