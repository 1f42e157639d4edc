//! Neighborhood statistics of the hard-core model: the number `Y` of
//! uncovered neighbors of a uniform vertex, and the graph `H` induced on the
//! neighbors left uncovered by occupied vertices outside the neighborhood.
//!
//! Both laws come from one weighted enumeration over pairs `(v, I)`; the
//! weights are kept as integer polynomials in `λ` so one enumeration serves
//! every fugacity.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::rational::{self, Rational};
use super::{check_fugacity, independence_polynomial, HardcoreError, Polynomial};
use crate::graph::{canonical_label, write_graph6, CanonicalKey, Graph, VertexSet, MAX_CANONICAL_VERTICES};

/// Order limit for the `Y` enumeration.
pub const MAX_Y_VERTICES: usize = 30;
/// Order limit for the `H` enumeration.
pub const MAX_LOCAL_VERTICES: usize = 20;

/// Calls `visit` once for every independent set of `g`, the empty set included.
pub fn for_each_independent_set(g: &Graph, mut visit: impl FnMut(VertexSet)) {
    fn go(g: &Graph, candidates: VertexSet, current: VertexSet, visit: &mut impl FnMut(VertexSet)) {
        if candidates == 0 {
            visit(current);
            return;
        }
        let v = candidates.trailing_zeros() as usize;
        go(g, candidates & !(1 << v), current, visit);
        go(g, candidates & !g.closed_neighbors(v), current | 1 << v, visit);
    }
    go(g, g.vertex_set(), 0, &mut visit);
}

fn polynomial_from_counts(counts: &[u64]) -> Polynomial {
    Polynomial::new(counts.iter().map(|&c| BigInt::from(c)).collect())
}

fn regular_order(g: &Graph, max_n: usize, max_d: Option<usize>) -> Result<usize, HardcoreError> {
    let d = g
        .regular_degree()
        .ok_or_else(|| HardcoreError::Precondition("graph is not regular".into()))?;
    if g.n() == 0 {
        return Err(HardcoreError::Precondition("graph has no vertices".into()));
    }
    if g.n() > max_n {
        return Err(HardcoreError::Precondition(format!(
            "graph has {} vertices; enumeration is limited to {max_n}",
            g.n()
        )));
    }
    if let Some(max_d) = max_d.filter(|&m| d > m) {
        return Err(HardcoreError::Precondition(format!("degree {d} exceeds {max_d}")));
    }
    Ok(d)
}

/// Generating polynomials of `Y`: `numerators[i]` sums `λ^|I|` over pairs
/// `(v, I)` in which `v` has exactly `i` uncovered neighbors.
#[derive(Clone, Debug)]
pub struct YPolynomials {
    pub d: usize,
    pub n: usize,
    pub numerators: Vec<Polynomial>,
    pub partition: Polynomial,
}

pub fn y_polynomials(g: &Graph) -> Result<YPolynomials, HardcoreError> {
    let d = regular_order(g, MAX_Y_VERTICES, None)?;
    let n = g.n();
    let mut counts = vec![vec![0u64; n + 1]; d + 1];
    let mut sizes = vec![0u64; n + 1];
    for_each_independent_set(g, |set| {
        let k = set.count_ones() as usize;
        sizes[k] += 1;
        let covered = g.neighborhood_of(set);
        for v in 0..n {
            let y = (g.neighbors(v) & !covered).count_ones() as usize;
            counts[y][k] += 1;
        }
    });
    Ok(YPolynomials {
        d,
        n,
        numerators: counts.iter().map(|c| polynomial_from_counts(c)).collect(),
        partition: polynomial_from_counts(&sizes),
    })
}

impl YPolynomials {
    pub fn at(&self, lambda: &Rational) -> Result<YDistribution, HardcoreError> {
        check_fugacity(lambda)?;
        let total = self.partition.eval(lambda) * Rational::from_integer(self.n.into());
        Ok(YDistribution {
            d: self.d,
            lambda: lambda.clone(),
            y: self.numerators.iter().map(|p| p.eval(lambda) / &total).collect(),
        })
    }
}

/// Law of the uncovered-neighbor count `Y`: `y[i] = P(Y = i)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct YDistribution {
    pub d: usize,
    #[serde(with = "rational::serde_pq")]
    pub lambda: Rational,
    #[serde(with = "rational::serde_pq::vec")]
    pub y: Vec<Rational>,
}

impl YDistribution {
    pub fn total(&self) -> Rational {
        self.y.iter().sum()
    }

    pub fn mean(&self) -> Rational {
        self.y
            .iter()
            .enumerate()
            .map(|(i, y)| Rational::from_integer(i.into()) * y)
            .sum()
    }

    /// `Σ_i (i - d(1+λ)^{-i}) y_i`; zero for triangle-free regular graphs.
    pub fn identity_residual(&self) -> Rational {
        let d = Rational::from_integer(self.d.into());
        let base = Rational::one() + &self.lambda;
        self.y
            .iter()
            .enumerate()
            .map(|(i, y)| (Rational::from_integer(i.into()) - &d * rational::powi(&base, -(i as i32))) * y)
            .sum()
    }
}

/// Law of `y_distribution` at one fugacity. Requires a regular graph on at
/// most [`MAX_Y_VERTICES`] vertices.
pub fn y_distribution(g: &Graph, lambda: &Rational) -> Result<YDistribution, HardcoreError> {
    check_fugacity(lambda)?;
    y_polynomials(g)?.at(lambda)
}

/// Generating polynomials of the isomorphism class of `H`.
#[derive(Clone, Debug)]
pub struct LocalGraphPolynomials {
    pub d: usize,
    pub n: usize,
    pub entries: BTreeMap<CanonicalKey, Polynomial>,
    pub partition: Polynomial,
}

pub fn local_graph_polynomials(g: &Graph) -> Result<LocalGraphPolynomials, HardcoreError> {
    let d = regular_order(g, MAX_LOCAL_VERTICES, Some(MAX_CANONICAL_VERTICES))?;
    let n = g.n();
    let mut keys: HashMap<(usize, VertexSet), CanonicalKey> = HashMap::new();
    let mut counts: BTreeMap<CanonicalKey, Vec<u64>> = BTreeMap::new();
    let mut sizes = vec![0u64; n + 1];
    for_each_independent_set(g, |set| {
        let k = set.count_ones() as usize;
        sizes[k] += 1;
        for v in 0..n {
            let nbhd = g.neighbors(v);
            let outside = set & !nbhd;
            let uncovered = nbhd & !g.neighborhood_of(outside);
            let key = *keys
                .entry((v, uncovered))
                .or_insert_with(|| canonical_label(&g.induced_subgraph(uncovered)).expect("at most d <= 8 vertices"));
            counts.entry(key).or_insert_with(|| vec![0; n + 1])[k] += 1;
        }
    });
    Ok(LocalGraphPolynomials {
        d,
        n,
        entries: counts
            .into_iter()
            .map(|(k, c)| (k, polynomial_from_counts(&c)))
            .collect(),
        partition: polynomial_from_counts(&sizes),
    })
}

impl LocalGraphPolynomials {
    pub fn at(&self, lambda: &Rational) -> Result<LocalGraphDistribution, HardcoreError> {
        check_fugacity(lambda)?;
        let total = self.partition.eval(lambda) * Rational::from_integer(self.n.into());
        let entries = self
            .entries
            .iter()
            .map(|(k, p)| (*k, p.eval(lambda) / &total))
            .filter(|(_, p)| !p.is_zero())
            .collect();
        Ok(LocalGraphDistribution {
            d: self.d,
            lambda: lambda.clone(),
            entries,
        })
    }
}

/// Law of the isomorphism class of `H`, keyed by canonical label.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalGraphDistribution {
    pub d: usize,
    pub lambda: Rational,
    pub entries: BTreeMap<CanonicalKey, Rational>,
}

impl LocalGraphDistribution {
    /// Build a law from explicit (graph, probability) pairs; isomorphic graphs
    /// are merged. Probabilities must be nonnegative and sum to one.
    pub fn from_entries(d: usize, lambda: Rational, pairs: Vec<(Graph, Rational)>) -> Result<Self, HardcoreError> {
        let mut entries: BTreeMap<CanonicalKey, Rational> = BTreeMap::new();
        for (g, p) in pairs {
            if g.n() > d {
                return Err(HardcoreError::Precondition(format!(
                    "graph on {} vertices exceeds d = {d}",
                    g.n()
                )));
            }
            if p.is_negative() {
                return Err(HardcoreError::Precondition("negative probability".into()));
            }
            *entries.entry(canonical_label(&g)?).or_insert_with(Rational::zero) += p;
        }
        if entries.values().sum::<Rational>() != Rational::one() {
            return Err(HardcoreError::Precondition("probabilities do not sum to 1".into()));
        }
        Ok(LocalGraphDistribution { d, lambda, entries })
    }

    pub fn probability(&self, g: &Graph) -> Rational {
        canonical_label(g)
            .ok()
            .and_then(|k| self.entries.get(&k).cloned())
            .unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = Graph> + '_ {
        self.entries.keys().map(|k| k.to_graph())
    }

    /// Whether every graph in the support is complete (the null graph counts).
    pub fn supported_on_complete_graphs(&self) -> bool {
        self.support().all(|h| h.is_complete())
    }

    pub fn supported_on_edgeless_graphs(&self) -> bool {
        self.support().all(|h| h.is_edgeless())
    }

    /// When every `H` is edgeless, `H = E_i` exactly when `Y = i`; returns
    /// that induced law of `Y`.
    pub fn as_y_distribution(&self) -> Option<YDistribution> {
        if !self.supported_on_edgeless_graphs() {
            return None;
        }
        let mut y = vec![Rational::zero(); self.d + 1];
        for (k, p) in &self.entries {
            y[k.order()] += p;
        }
        Some(YDistribution {
            d: self.d,
            lambda: self.lambda.clone(),
            y,
        })
    }
}

impl Serialize for LocalGraphDistribution {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            graph: String,
            order: usize,
            edges: usize,
            probability: String,
        }
        let entries: Vec<Entry> = self
            .entries
            .iter()
            .map(|(k, p)| {
                let g = k.to_graph();
                Entry {
                    graph: write_graph6(&g),
                    order: g.n(),
                    edges: g.edge_count(),
                    probability: rational::format_pq(p),
                }
            })
            .collect();
        let mut st = s.serialize_struct("LocalGraphDistribution", 3)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("lambda", &rational::format_pq(&self.lambda))?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

/// Law of `H` at one fugacity. Requires a regular graph of degree at most 8
/// on at most [`MAX_LOCAL_VERTICES`] vertices.
pub fn local_graph_distribution(g: &Graph, lambda: &Rational) -> Result<LocalGraphDistribution, HardcoreError> {
    check_fugacity(lambda)?;
    local_graph_polynomials(g)?.at(lambda)
}

/// `(λ/(1+λ))·E[1/P_H(λ)] - (λ/d)·E[P'_H(λ)/P_H(λ)]`, exactly. Zero iff the
/// law is neighborly.
pub fn neighborly_residual(
    dist: &LocalGraphDistribution,
    d: usize,
    lambda: &Rational,
) -> Result<Rational, HardcoreError> {
    check_fugacity(lambda)?;
    if d == 0 {
        return Err(HardcoreError::Precondition("degree must be positive".into()));
    }
    if dist.entries.is_empty() {
        return Err(HardcoreError::Precondition("empty distribution".into()));
    }
    let occupied = lambda / (Rational::one() + lambda);
    let per_neighbor = lambda / Rational::from_integer(d.into());
    let mut total = Rational::zero();
    for (key, prob) in &dist.entries {
        let p = independence_polynomial(&key.to_graph());
        let value = p.eval(lambda);
        let first = &occupied / &value;
        let second = &per_neighbor * p.derivative().eval(lambda) / &value;
        total += prob * (first - second);
    }
    Ok(total)
}
