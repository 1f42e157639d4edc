//! Hard-core model statistics on small graphs, in exact arithmetic.
//!
//! Everything probabilistic here is a ratio of independence polynomials
//! evaluated at a rational fugacity, so every returned value is exact.

mod local;
mod polynomial;
pub mod rational;

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::graph::{members, Graph, GraphError, VertexSet};

pub use local::{
    for_each_independent_set, local_graph_distribution, local_graph_polynomials, neighborly_residual, y_distribution,
    y_polynomials, LocalGraphDistribution, LocalGraphPolynomials, YDistribution, YPolynomials, MAX_LOCAL_VERTICES,
    MAX_Y_VERTICES,
};
pub use polynomial::Polynomial;
pub use rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HardcoreError {
    #[error("quantity undefined: {0}")]
    Undefined(String),
    #[error("fugacity must be positive, got {0}")]
    NonPositiveFugacity(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub(crate) fn check_fugacity(lambda: &Rational) -> Result<(), HardcoreError> {
    if lambda.is_positive() {
        Ok(())
    } else {
        Err(HardcoreError::NonPositiveFugacity(rational::format_pq(lambda)))
    }
}

/// Cap on memoized subsets; past it the recursion continues uncached.
const MEMO_CAP: usize = 1 << 22;

/// Independence polynomials of induced subgraphs of one graph, memoized on
/// the surviving-vertex mask.
///
/// Uses `P_S = P_{S - v} + λ·P_{S - N[v]}` with `v` of maximum degree inside
/// `S`; edgeless remainders short-circuit to `(1 + λ)^|S|`.
pub struct IndependencePolynomials<'g> {
    graph: &'g Graph,
    memo: HashMap<VertexSet, Polynomial>,
}

impl<'g> IndependencePolynomials<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        IndependencePolynomials {
            graph,
            memo: HashMap::new(),
        }
    }

    /// `P_{G[set]}`.
    pub fn of(&mut self, set: VertexSet) -> Polynomial {
        let set = set & self.graph.vertex_set();
        if set == 0 {
            return Polynomial::one();
        }
        let (pivot, degree) = members(set)
            .map(|v| (v, (self.graph.neighbors(v) & set).count_ones()))
            .max_by_key(|&(v, d)| (d, std::cmp::Reverse(v)))
            .expect("nonempty set");
        if degree == 0 {
            return Polynomial::one_plus_x_pow(set.count_ones() as usize);
        }
        if let Some(p) = self.memo.get(&set) {
            return p.clone();
        }
        let without = self.of(set & !(1 << pivot));
        let with = self.of(set & !self.graph.closed_neighbors(pivot));
        let p = &without + &with.shift(1);
        if self.memo.len() < MEMO_CAP {
            self.memo.insert(set, p.clone());
        }
        p
    }

    pub fn whole(&mut self) -> Polynomial {
        self.of(self.graph.vertex_set())
    }
}

/// `P_G(λ)`: coefficient `k` counts independent sets of size `k`.
pub fn independence_polynomial(g: &Graph) -> Polynomial {
    IndependencePolynomials::new(g).whole()
}

/// `α(G)`, the degree of the independence polynomial.
pub fn independence_number(g: &Graph) -> usize {
    independence_polynomial(g).degree().expect("P_G has constant term 1")
}

/// `λ P'(λ) / P(λ)`: expected size of a hard-core random independent set.
pub fn expected_size(p: &Polynomial, lambda: &Rational) -> Rational {
    lambda * p.derivative().eval(lambda) / p.eval(lambda)
}

/// Occupancy fraction `α_G(λ) = λ P'_G(λ) / (n P_G(λ))`.
pub fn occupancy_fraction(g: &Graph, lambda: &Rational) -> Result<Rational, HardcoreError> {
    check_fugacity(lambda)?;
    if g.n() == 0 {
        return Err(HardcoreError::Undefined("occupancy fraction of the null graph".into()));
    }
    let p = independence_polynomial(g);
    Ok(expected_size(&p, lambda) / Rational::from_integer(g.n().into()))
}

/// Per-vertex occupation (`p`) and uncovered (`q`) probabilities.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OccupancyReport {
    #[serde(with = "rational::serde_pq")]
    pub lambda: Rational,
    #[serde(with = "rational::serde_pq")]
    pub alpha: Rational,
    #[serde(with = "rational::serde_pq::vec")]
    pub p: Vec<Rational>,
    #[serde(with = "rational::serde_pq::vec")]
    pub q: Vec<Rational>,
}

impl OccupancyReport {
    /// Checks `0 <= p_v <= q_v <= 1`, `p_v = λ/(1+λ)·q_v` and `α = mean(p)`.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let ratio = &self.lambda / (Rational::one() + &self.lambda);
        for (v, (p, q)) in self.p.iter().zip(&self.q).enumerate() {
            if p.is_negative() || p > q || q > &Rational::one() {
                out.push(format!("vertex {v}: 0 <= p <= q <= 1 fails"));
            }
            if *p != &ratio * q {
                out.push(format!("vertex {v}: p != λ/(1+λ)·q"));
            }
        }
        let n = Rational::from_integer(self.p.len().into());
        if self.p.iter().fold(Rational::zero(), |a, p| a + p) != &self.alpha * n {
            out.push("alpha != mean of p".into());
        }
        out
    }
}

/// `q_v = P_{G-N(v)}(λ)/P_G(λ)` and `p_v = λ·P_{G-N[v]}(λ)/P_G(λ)`.
pub fn vertex_probabilities(g: &Graph, lambda: &Rational) -> Result<OccupancyReport, HardcoreError> {
    check_fugacity(lambda)?;
    let n = g.n();
    if n == 0 {
        return Err(HardcoreError::Undefined("occupancy fraction of the null graph".into()));
    }
    let mut polys = IndependencePolynomials::new(g);
    let whole = polys.whole();
    let total = whole.eval(lambda);
    let mut p = Vec::with_capacity(n);
    let mut q = Vec::with_capacity(n);
    for v in 0..n {
        let all = g.vertex_set();
        q.push(polys.of(all & !g.neighbors(v)).eval(lambda) / &total);
        p.push(lambda * polys.of(all & !g.closed_neighbors(v)).eval(lambda) / &total);
    }
    let alpha = expected_size(&whole, lambda) / Rational::from_integer(n.into());
    Ok(OccupancyReport {
        lambda: lambda.clone(),
        alpha,
        p,
        q,
    })
}
