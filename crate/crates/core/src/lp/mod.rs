//! Small dense linear programs over exact rationals.

mod builders;
mod duality;
mod simplex;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::GraphError;
use crate::hardcore::rational::{format_pq, Rational};
use crate::hardcore::HardcoreError;

pub use builders::{
    build_lp_cubic, build_lp_general, build_lp_trianglefree, general_lp_graphs, local_coefficients, MAX_GENERAL_DEGREE,
};
pub use duality::{
    check_complementary_slackness, dual_candidate, dual_candidate_via_ratio, dual_of, occupancy_ratio, PairKind,
    SlacknessEntry, SlacknessReport,
};
pub use simplex::simplex_solve;

/// Size limit for both variables and rows.
pub const MAX_LP_DIM: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("problem too large: {0}")]
    TooLarge(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("unsupported problem shape: {0}")]
    UnsupportedShape(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Hardcore(#[from] HardcoreError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Min,
    Max,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub label: String,
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Row {
    pub fn activity(&self, x: &[Rational]) -> Rational {
        self.coeffs.iter().zip(x).map(|(a, v)| a * v).sum()
    }
}

/// `sense c·x` subject to labeled rows; each variable is either
/// nonnegative or free.
#[derive(Clone, Debug, PartialEq)]
pub struct LpProblem {
    pub sense: Sense,
    pub variables: Vec<String>,
    pub objective: Vec<Rational>,
    pub nonnegative: Vec<bool>,
    pub rows: Vec<Row>,
}

impl LpProblem {
    /// A problem with nonnegative variables and no rows yet.
    pub fn new(sense: Sense, variables: Vec<String>, objective: Vec<Rational>) -> Self {
        let nonnegative = vec![true; variables.len()];
        LpProblem {
            sense,
            variables,
            objective,
            nonnegative,
            rows: Vec::new(),
        }
    }

    pub fn add_row(&mut self, label: impl Into<String>, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        self.rows.push(Row {
            label: label.into(),
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn validate(&self) -> Result<(), LpError> {
        let n = self.objective.len();
        if self.variables.len() != n || self.nonnegative.len() != n {
            return Err(LpError::Dimension(format!(
                "{n} objective coefficients, {} labels, {} sign flags",
                self.variables.len(),
                self.nonnegative.len()
            )));
        }
        if let Some(row) = self.rows.iter().find(|r| r.coeffs.len() != n) {
            return Err(LpError::Dimension(format!(
                "row {} has width {}, expected {n}",
                row.label,
                row.coeffs.len()
            )));
        }
        if n > MAX_LP_DIM || self.rows.len() > MAX_LP_DIM {
            return Err(LpError::TooLarge(format!(
                "{n} variables and {} rows; limit is {MAX_LP_DIM} each",
                self.rows.len()
            )));
        }
        Ok(())
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    pub fn row_index(&self, label: &str) -> Option<usize> {
        self.rows.iter().position(|r| r.label == label)
    }

    pub fn variable_index(&self, label: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == label)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Result of [`simplex_solve`]. When optimal, `primal` and `dual` form an
/// exactly optimal pair: `dual[i]` is the multiplier of row `i` in the
/// standard dual ([`dual_of`]), and `objective` equals both objectives.
#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub status: Status,
    pub variables: Vec<String>,
    pub row_labels: Vec<String>,
    pub primal: Vec<Rational>,
    pub dual: Vec<Rational>,
    pub objective: Option<Rational>,
    /// Basic columns of the standard form: structural columns first (the
    /// positive part of a free variable sits at its own index), then negative
    /// parts of free variables, then one slack per inequality row, then one
    /// artificial per row.
    pub basis: Vec<usize>,
    pub basis_labels: Vec<String>,
}

impl LpSolution {
    pub fn value(&self, label: &str) -> Option<&Rational> {
        self.variables.iter().position(|v| v == label).map(|i| &self.primal[i])
    }

    pub fn dual_value(&self, label: &str) -> Option<&Rational> {
        self.row_labels.iter().position(|v| v == label).map(|i| &self.dual[i])
    }

    pub fn is_optimal(&self) -> bool {
        self.status == Status::Optimal
    }
}

#[derive(Serialize)]
struct Labeled<'a> {
    label: &'a str,
    value: String,
}

fn labeled<'a>(labels: &'a [String], values: &[Rational]) -> Vec<Labeled<'a>> {
    labels
        .iter()
        .zip(values)
        .map(|(l, v)| Labeled {
            label: l,
            value: format_pq(v),
        })
        .collect()
}

impl Serialize for LpProblem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Var<'a> {
            label: &'a str,
            objective: String,
            nonnegative: bool,
        }
        #[derive(Serialize)]
        struct RowJson<'a> {
            label: &'a str,
            coeffs: Vec<String>,
            relation: Relation,
            rhs: String,
        }
        let vars: Vec<Var> = (0..self.num_vars())
            .map(|j| Var {
                label: &self.variables[j],
                objective: format_pq(&self.objective[j]),
                nonnegative: self.nonnegative[j],
            })
            .collect();
        let rows: Vec<RowJson> = self
            .rows
            .iter()
            .map(|r| RowJson {
                label: &r.label,
                coeffs: r.coeffs.iter().map(format_pq).collect(),
                relation: r.relation,
                rhs: format_pq(&r.rhs),
            })
            .collect();
        let mut st = s.serialize_struct("LpProblem", 3)?;
        st.serialize_field("sense", &self.sense)?;
        st.serialize_field("variables", &vars)?;
        st.serialize_field("rows", &rows)?;
        st.end()
    }
}

impl Serialize for LpSolution {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LpSolution", 5)?;
        st.serialize_field("status", &self.status)?;
        st.serialize_field("objective", &self.objective.as_ref().map(format_pq))?;
        st.serialize_field("primal", &labeled(&self.variables, &self.primal))?;
        st.serialize_field("dual", &labeled(&self.row_labels, &self.dual))?;
        st.serialize_field("basis", &self.basis_labels)?;
        st.end()
    }
}
