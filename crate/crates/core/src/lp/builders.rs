//! Builders for the three occupancy-fraction programs.
//!
//! Dual multipliers are named after the rows: the general program has rows
//! `A` (normalization) and `B` (neighborly condition); the triangle-free
//! programs have `S` (normalization), `M` (the `E Y` identity), `A`
//! (`y_0 >= α`) and, for cubic graphs, `B` (`y_3 >= Λ`).

use num_traits::One;

use super::{LpError, LpProblem, Relation, Sense};
use crate::graph::{enumerate_nonisomorphic, write_graph6, Graph};
use crate::hardcore::rational::{self, Rational};
use crate::hardcore::{check_fugacity, independence_polynomial, Polynomial};

/// Largest degree for the general program (its variables are all graphs on
/// at most `d` vertices).
pub const MAX_GENERAL_DEGREE: usize = 5;

fn from_usize(k: usize) -> Rational {
    Rational::from_integer(k.into())
}

/// `(a_H, b_H) = (1/P_H(λ), (1+λ)P'_H(λ)/(d P_H(λ)))`.
pub fn local_coefficients(h: &Graph, d: usize, lambda: &Rational) -> (Rational, Rational) {
    let p = independence_polynomial(h);
    let value = p.eval(lambda);
    let a = value.recip();
    let b = (Rational::one() + lambda) * p.derivative().eval(lambda) / (from_usize(d) * &value);
    (a, b)
}

/// Variables of the general program, in column order: one representative
/// per isomorphism class on at most `d` vertices, null graph first.
pub fn general_lp_graphs(d: usize) -> Result<Vec<Graph>, LpError> {
    if d == 0 || d > MAX_GENERAL_DEGREE {
        return Err(LpError::Precondition(format!(
            "general program needs 1 <= d <= {MAX_GENERAL_DEGREE}, got {d}"
        )));
    }
    Ok(enumerate_nonisomorphic(d)?)
}

/// Minimize `λ/(2(1+λ))·Σ p_H(a_H + b_H)` over laws `p` on graphs with at most
/// `d` vertices, subject to `Σ p_H = 1` and `Σ p_H(a_H - b_H) = 0`.
pub fn build_lp_general(d: usize, lambda: &Rational) -> Result<LpProblem, LpError> {
    check_fugacity(lambda)?;
    let graphs = general_lp_graphs(d)?;
    let scale = lambda / (from_usize(2) * (Rational::one() + lambda));
    let mut objective = Vec::with_capacity(graphs.len());
    let mut difference = Vec::with_capacity(graphs.len());
    for h in &graphs {
        let (a, b) = local_coefficients(h, d, lambda);
        objective.push(&scale * (&a + &b));
        difference.push(a - b);
    }
    let labels = graphs.iter().map(|h| format!("H{}", write_graph6(h))).collect();
    let width = graphs.len();
    let mut p = LpProblem::new(Sense::Min, labels, objective);
    p.add_row("A", vec![Rational::one(); width], Relation::Eq, Rational::one());
    p.add_row("B", difference, Relation::Eq, Rational::from_integer(0.into()));
    Ok(p)
}

/// Minimize `Σ i·y_i` over laws of `Y` on `{0..d}` subject to normalization,
/// `Σ (i - d(1+λ)^{-i}) y_i = 0`, and `y_0 - Σ iλ/(d(1+λ)) y_i >= 0`.
pub fn build_lp_trianglefree(d: usize, lambda: &Rational) -> Result<LpProblem, LpError> {
    check_fugacity(lambda)?;
    if d < 2 {
        return Err(LpError::Precondition(format!(
            "triangle-free program needs d >= 2, got {d}"
        )));
    }
    let dd = from_usize(d);
    let base = Rational::one() + lambda;
    let labels = (0..=d).map(|i| format!("y{i}")).collect();
    let objective = (0..=d).map(from_usize).collect();
    let mut p = LpProblem::new(Sense::Min, labels, objective);
    p.add_row("S", vec![Rational::one(); d + 1], Relation::Eq, Rational::one());
    p.add_row(
        "M",
        (0..=d)
            .map(|i| from_usize(i) - &dd * rational::powi(&base, -(i as i32)))
            .collect(),
        Relation::Eq,
        Rational::from_integer(0.into()),
    );
    let per = lambda / (&dd * &base);
    p.add_row(
        "A",
        (0..=d)
            .map(|i| {
                if i == 0 {
                    Rational::one()
                } else {
                    -(from_usize(i) * &per)
                }
            })
            .collect(),
        Relation::Ge,
        Rational::from_integer(0.into()),
    );
    Ok(p)
}

/// The cubic triangle-free program plus `y_3 >= Λ = (1+λ)^3 / P_{T_3}(λ)`.
pub fn build_lp_cubic(lambda: &Rational, t3poly: &Polynomial) -> Result<LpProblem, LpError> {
    let mut p = build_lp_trianglefree(3, lambda)?;
    let big_lambda = rational::powi(&(Rational::one() + lambda), 3) / t3poly.eval(lambda);
    let mut row = vec![Rational::from_integer(0.into()); 4];
    row[3] = Rational::one();
    p.add_row("B", row, Relation::Ge, big_lambda);
    Ok(p)
}
