//! Standard duals, complementary-slackness certificates, and the two-point
//! dual candidates `(A_K, B_K)` of the general program.

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::builders::local_coefficients;
use super::{LpError, LpProblem, Relation, Sense};
use crate::graph::Graph;
use crate::hardcore::rational::{format_pq, Rational};
use crate::hardcore::{check_fugacity, expected_size, independence_polynomial, HardcoreError};

/// Dual of a minimization with nonnegative variables, equality rows and
/// `>=` rows: one dual variable per row (free for equalities, nonnegative for
/// `>=`), labeled like the row; one `<=` constraint per primal variable,
/// `Σ_rows coeff(row, j)·y_row <= c_j`; objective `Σ rhs·y`.
pub fn dual_of(p: &LpProblem) -> Result<LpProblem, LpError> {
    p.validate()?;
    if p.sense != Sense::Min {
        return Err(LpError::UnsupportedShape("dual_of expects a minimization".into()));
    }
    if p.nonnegative.iter().any(|&nn| !nn) {
        return Err(LpError::UnsupportedShape(
            "dual_of expects nonnegative variables".into(),
        ));
    }
    if p.rows.iter().any(|r| r.relation == Relation::Le) {
        return Err(LpError::UnsupportedShape("dual_of expects only = and >= rows".into()));
    }
    let mut dual = LpProblem::new(
        Sense::Max,
        p.rows.iter().map(|r| r.label.clone()).collect(),
        p.rows.iter().map(|r| r.rhs.clone()).collect(),
    );
    dual.nonnegative = p.rows.iter().map(|r| r.relation == Relation::Ge).collect();
    for (j, label) in p.variables.iter().enumerate() {
        dual.add_row(
            label.clone(),
            p.rows.iter().map(|r| r.coeffs[j].clone()).collect(),
            Relation::Le,
            p.objective[j].clone(),
        );
    }
    Ok(dual)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairKind {
    /// A primal variable against its dual constraint.
    Variable,
    /// A primal row against its dual variable.
    Row,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SlacknessEntry {
    pub kind: PairKind,
    pub label: String,
    /// The primal variable value or the dual variable value.
    pub value: Rational,
    /// Dual-constraint slack `c_j - A_j·y` or row slack `a_i·x - b_i`, both
    /// oriented as for a minimization.
    pub slack: Rational,
    pub tight: bool,
    /// Sign of `value` or `slack` is infeasible.
    pub infeasible: bool,
    /// Both `value` and `slack` are nonzero.
    pub complementary_violation: bool,
}

impl SlacknessEntry {
    pub fn violated(&self) -> bool {
        self.infeasible || self.complementary_violation
    }

    pub fn pair(&self) -> String {
        match self.kind {
            PairKind::Variable => format!("{} / dual row {}", self.label, self.label),
            PairKind::Row => format!("row {} / {}", self.label, self.label),
        }
    }
}

/// Exact feasibility and complementary-slackness audit of a primal/dual pair.
#[derive(Clone, Debug, PartialEq)]
pub struct SlacknessReport {
    pub entries: Vec<SlacknessEntry>,
    pub primal_objective: Rational,
    pub dual_objective: Rational,
}

impl SlacknessReport {
    pub fn violations(&self) -> impl Iterator<Item = &SlacknessEntry> {
        self.entries.iter().filter(|e| e.violated())
    }

    pub fn primal_feasible(&self) -> bool {
        self.entries
            .iter()
            .all(|e| !(e.kind == PairKind::Row && e.infeasible_primal()))
    }

    pub fn dual_feasible(&self) -> bool {
        self.entries
            .iter()
            .all(|e| !(e.kind == PairKind::Variable && e.infeasible_dual()))
    }

    /// No violation of any kind: both solutions are optimal.
    pub fn is_certified(&self) -> bool {
        self.violations().next().is_none()
    }
}

impl SlacknessEntry {
    fn infeasible_primal(&self) -> bool {
        self.infeasible && self.kind == PairKind::Row
    }

    fn infeasible_dual(&self) -> bool {
        self.infeasible && self.kind == PairKind::Variable
    }
}

impl Serialize for SlacknessReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct EntryJson {
            pair: String,
            slack: String,
            tight: bool,
            violated: bool,
        }
        let list: Vec<EntryJson> = self
            .entries
            .iter()
            .map(|e| EntryJson {
                pair: e.pair(),
                slack: format_pq(&e.slack),
                tight: e.tight,
                violated: e.violated(),
            })
            .collect();
        list.serialize(s)
    }
}

/// Audit `(primal, dual)` for `p`. Dual values follow [`dual_of`]'s
/// convention for minimizations; for maximizations the mirrored convention
/// (`A^T y >= c`, `y >= 0` on `<=` rows) is used.
///
/// Each variable entry is infeasible when a nonnegative variable is
/// negative or its dual constraint is violated; each row entry is infeasible
/// when the row fails or the dual variable has the wrong sign. Violations are
/// reported, never raised.
pub fn check_complementary_slackness(
    p: &LpProblem,
    primal: &[Rational],
    dual: &[Rational],
) -> Result<SlacknessReport, LpError> {
    p.validate()?;
    if primal.len() != p.num_vars() || dual.len() != p.rows.len() {
        return Err(LpError::Dimension(format!(
            "expected {} primal and {} dual values, got {} and {}",
            p.num_vars(),
            p.rows.len(),
            primal.len(),
            dual.len()
        )));
    }
    // normalize to a minimization: c -> -c, y -> -y for maximizations
    let flip = p.sense == Sense::Max;
    let y: Vec<Rational> = dual.iter().map(|v| if flip { -v } else { v.clone() }).collect();
    let mut entries = Vec::with_capacity(p.num_vars() + p.rows.len());
    for (j, label) in p.variables.iter().enumerate() {
        let c = if flip {
            -p.objective[j].clone()
        } else {
            p.objective[j].clone()
        };
        let used: Rational = p.rows.iter().zip(&y).map(|(r, yi)| &r.coeffs[j] * yi).sum();
        let slack = c - used;
        let x = &primal[j];
        let infeasible = if p.nonnegative[j] {
            x.is_negative() || slack.is_negative()
        } else {
            !slack.is_zero()
        };
        entries.push(SlacknessEntry {
            kind: PairKind::Variable,
            label: label.clone(),
            value: x.clone(),
            tight: slack.is_zero(),
            complementary_violation: !x.is_zero() && !slack.is_zero(),
            infeasible,
            slack,
        });
    }
    for (i, row) in p.rows.iter().enumerate() {
        let slack = row.activity(primal) - &row.rhs;
        let yi = &y[i];
        let infeasible = match row.relation {
            Relation::Eq => !slack.is_zero(),
            Relation::Ge => slack.is_negative() || yi.is_negative(),
            Relation::Le => slack.is_positive() || yi.is_positive(),
        };
        entries.push(SlacknessEntry {
            kind: PairKind::Row,
            label: row.label.clone(),
            value: dual[i].clone(),
            tight: slack.is_zero(),
            complementary_violation: !yi.is_zero() && !slack.is_zero(),
            infeasible,
            slack,
        });
    }
    let dual_objective = p.rows.iter().zip(dual).map(|(r, v)| &r.rhs * v).sum();
    Ok(SlacknessReport {
        entries,
        primal_objective: p.objective_value(primal),
        dual_objective,
    })
}

/// `p'(K)/μ(K)`: probability of a nonempty hard-core set over its expected
/// size.
pub fn occupancy_ratio(k: &Graph, lambda: &Rational) -> Result<Rational, HardcoreError> {
    check_fugacity(lambda)?;
    if k.n() == 0 {
        return Err(HardcoreError::Precondition("ratio undefined for the null graph".into()));
    }
    let p = independence_polynomial(k);
    let nonempty = Rational::one() - p.eval(lambda).recip();
    Ok(nonempty / expected_size(&p, lambda))
}

fn candidate_precondition(k: &Graph, d: usize) -> Result<(), LpError> {
    if k.n() == 0 {
        return Err(LpError::Precondition("dual candidate needs a nonempty graph".into()));
    }
    if k.n() > d {
        return Err(LpError::Precondition(format!(
            "graph on {} vertices exceeds d = {d}",
            k.n()
        )));
    }
    Ok(())
}

/// `(A_K, B_K)` making the dual rows of `∅` and `K` tight:
/// `A_K = 2b_K/(1 - a_K + b_K)`, `B_K = 1 - A_K`.
///
/// These multipliers belong to the unscaled objective `Σ p_H(a_H + b_H)`;
/// [`build_lp_general`](super::build_lp_general) carries an extra factor
/// `λ/(2(1+λ))`.
pub fn dual_candidate(k: &Graph, d: usize, lambda: &Rational) -> Result<(Rational, Rational), LpError> {
    check_fugacity(lambda)?;
    candidate_precondition(k, d)?;
    let (a, b) = local_coefficients(k, d, lambda);
    let big_a = Rational::from_integer(2.into()) * &b / (Rational::one() - a + b);
    let big_b = Rational::one() - &big_a;
    Ok((big_a, big_b))
}

/// Same multipliers through `A_K = 2/(1 + (dλ/(1+λ))·p'(K)/μ(K))`.
pub fn dual_candidate_via_ratio(k: &Graph, d: usize, lambda: &Rational) -> Result<(Rational, Rational), LpError> {
    check_fugacity(lambda)?;
    candidate_precondition(k, d)?;
    let ratio = occupancy_ratio(k, lambda)?;
    let coeff = Rational::from_integer(d.into()) * lambda / (Rational::one() + lambda);
    let big_a = Rational::from_integer(2.into()) / (Rational::one() + coeff * ratio);
    let big_b = Rational::one() - &big_a;
    Ok((big_a, big_b))
}
