use std::fmt;
use std::str::FromStr;

use super::{Graph, GraphError, MAX_VERTICES};

/// A named graph family with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    /// `K_n`.
    Complete(usize),
    /// `E_n`, no edges.
    Empty(usize),
    /// `C_n`, `n >= 3`.
    Cycle(usize),
    /// `P_n`, a path on `n` vertices.
    Path(usize),
    /// `K_{d,d}`.
    Biclique(usize),
    /// `GP(n, k)`: outer cycle `u_i = i`, spokes `u_i v_i`, inner edges
    /// `v_i v_{i+k}` with `v_i = n + i`.
    GeneralizedPetersen { n: usize, k: usize },
    /// First three levels of the infinite 3-regular tree: a root, its three
    /// children, and two leaves under each child.
    T3,
}

impl FamilySpec {
    pub fn validate(&self) -> Result<(), GraphError> {
        let bad = |msg: String| Err(GraphError::InvalidParameters(msg));
        let order = match *self {
            FamilySpec::Complete(n) | FamilySpec::Empty(n) | FamilySpec::Path(n) => n,
            FamilySpec::Cycle(n) => {
                if n < 3 {
                    return bad(format!("cycle needs n >= 3, got {n}"));
                }
                n
            }
            FamilySpec::Biclique(d) => 2 * d,
            FamilySpec::GeneralizedPetersen { n, k } => {
                if n < 3 || k == 0 || 2 * k >= n {
                    return bad(format!("GP(n,k) needs n >= 3 and 1 <= k < n/2, got ({n},{k})"));
                }
                2 * n
            }
            FamilySpec::T3 => 10,
        };
        if order > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(order));
        }
        Ok(())
    }
}

/// Build the named graph.
pub fn generate(spec: &FamilySpec) -> Result<Graph, GraphError> {
    spec.validate()?;
    let mut edges = Vec::new();
    let n = match *spec {
        FamilySpec::Complete(n) => {
            for v in 0..n {
                edges.extend((0..v).map(|u| (u, v)));
            }
            n
        }
        FamilySpec::Empty(n) => n,
        FamilySpec::Cycle(n) => {
            edges.extend((0..n).map(|v| (v, (v + 1) % n)));
            n
        }
        FamilySpec::Path(n) => {
            edges.extend((1..n).map(|v| (v - 1, v)));
            n
        }
        FamilySpec::Biclique(d) => {
            for u in 0..d {
                edges.extend((d..2 * d).map(|v| (u, v)));
            }
            2 * d
        }
        FamilySpec::GeneralizedPetersen { n, k } => {
            for i in 0..n {
                edges.push((i, (i + 1) % n));
                edges.push((i, n + i));
                edges.push((n + i, n + (i + k) % n));
            }
            2 * n
        }
        FamilySpec::T3 => {
            edges.extend([(0, 1), (0, 2), (0, 3)]);
            for c in 1..=3 {
                edges.push((c, 2 * c + 2));
                edges.push((c, 2 * c + 3));
            }
            10
        }
    };
    Graph::from_edges(n, &edges)
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Complete(n) => write!(f, "k:{n}"),
            FamilySpec::Empty(n) => write!(f, "e:{n}"),
            FamilySpec::Cycle(n) => write!(f, "c:{n}"),
            FamilySpec::Path(n) => write!(f, "p:{n}"),
            FamilySpec::Biclique(d) => write!(f, "kdd:{d}"),
            FamilySpec::GeneralizedPetersen { n, k } => write!(f, "gp:{n},{k}"),
            FamilySpec::T3 => f.write_str("t3"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = GraphError;

    /// Parses `k:4`, `e:3`, `c:5`, `p:3`, `kdd:3`, `gp:7,2` or `t3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GraphError::InvalidParameters(format!("unrecognized family spec {s:?}"));
        let s = s.trim();
        if s == "t3" {
            return Ok(FamilySpec::T3);
        }
        let (tag, params) = s.split_once(':').ok_or_else(bad)?;
        let nums = params
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| bad())?;
        let spec = match (tag, nums.as_slice()) {
            ("k", &[n]) => FamilySpec::Complete(n),
            ("e", &[n]) => FamilySpec::Empty(n),
            ("c", &[n]) => FamilySpec::Cycle(n),
            ("p", &[n]) => FamilySpec::Path(n),
            ("kdd", &[d]) => FamilySpec::Biclique(d),
            ("gp", &[n, k]) => FamilySpec::GeneralizedPetersen { n, k },
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}
