//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use occupancy_core::graph::Graph;
use occupancy_core::lp::{LpProblem, Relation, Sense};

pub type Q = BigRational;

pub fn q(p: i64, d: i64) -> Q {
    Q::new(BigInt::from(p), BigInt::from(d))
}

pub fn qi(p: i64) -> Q {
    Q::from_integer(BigInt::from(p))
}

/// Row-reduce `[A | b]` in place; returns `None` if inconsistent, else the
/// nonzero rows.
fn reduce(mut rows: Vec<Vec<Q>>) -> Option<Vec<Vec<Q>>> {
    let width = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..width.saturating_sub(1) {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = rows[rank][col].recip();
        for x in rows[rank].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                let pivot = rows[rank].clone();
                for (x, p) in rows[r].iter_mut().zip(&pivot) {
                    *x -= p * &f;
                }
            }
        }
        rank += 1;
    }
    if rows[rank..].iter().any(|r| !r[width - 1].is_zero()) {
        return None;
    }
    rows.truncate(rank);
    Some(rows)
}

/// Solve a square system exactly, `None` if singular.
fn solve_square(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let m = b.len();
    let mut rows: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| r.iter().cloned().chain([bi.clone()]).collect())
        .collect();
    for col in 0..m {
        let piv = (col..m).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(col, piv);
        let inv = rows[col][col].recip();
        for x in rows[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..m {
            if r != col && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                let pivot = rows[col].clone();
                for (x, p) in rows[r].iter_mut().zip(&pivot) {
                    *x -= p * &f;
                }
            }
        }
    }
    Some(rows.into_iter().map(|r| r[m].clone()).collect())
}

/// Optimum over all basic feasible solutions of a bounded problem with
/// nonnegative variables, by enumerating every basis of the standard form.
/// `None` means infeasible. Returns the optimal value and one optimal point.
pub fn vertex_enumeration(p: &LpProblem) -> Option<(Q, Vec<Q>)> {
    assert!(p.nonnegative.iter().all(|&b| b));
    let n = p.num_vars();
    let slacks: Vec<usize> = (0..p.rows.len())
        .filter(|&i| p.rows[i].relation != Relation::Eq)
        .collect();
    let width = n + slacks.len();
    let rows: Vec<Vec<Q>> = p
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.coeffs.clone();
            for &s in &slacks {
                row.push(match (s == i, r.relation) {
                    (true, Relation::Ge) => -Q::one(),
                    (true, Relation::Le) => Q::one(),
                    _ => Q::zero(),
                });
            }
            row.push(r.rhs.clone());
            row
        })
        .collect();
    let reduced = reduce(rows)?;
    let m = reduced.len();
    let sign = if p.sense == Sense::Max { -Q::one() } else { Q::one() };
    let mut best: Option<(Q, Vec<Q>)> = None;
    for basis in (0..width).combinations(m) {
        let a: Vec<Vec<Q>> = reduced
            .iter()
            .map(|r| basis.iter().map(|&c| r[c].clone()).collect())
            .collect();
        let b: Vec<Q> = reduced.iter().map(|r| r[width].clone()).collect();
        let Some(xb) = solve_square(&a, &b) else { continue };
        if xb.iter().any(Signed::is_negative) {
            continue;
        }
        let mut x = vec![Q::zero(); width];
        for (&c, v) in basis.iter().zip(xb) {
            x[c] = v;
        }
        x.truncate(n);
        let value = p.objective_value(&x);
        if best.as_ref().is_none_or(|(bv, _)| &sign * &value < &sign * bv) {
            best = Some((value, x));
        }
    }
    if m == 0 {
        let x = vec![Q::zero(); n];
        return Some((p.objective_value(&x), x));
    }
    best
}

/// `α_G(λ)` by summing over all vertex subsets.
pub fn brute_occupancy(g: &Graph, lambda: &Q) -> Q {
    let n = g.n();
    let mut z = Q::zero();
    let mut weighted = Q::zero();
    for set in 0u64..(1 << n) {
        if !g.is_independent(set) {
            continue;
        }
        let k = set.count_ones() as usize;
        let w = num_traits::pow(lambda.clone(), k);
        weighted += &w * qi(k as i64);
        z += w;
    }
    weighted / (z * qi(n as i64))
}

/// Ten fugacities from `1/100` to `100`.
pub fn lambda_grid() -> Vec<Q> {
    [
        (1, 100),
        (1, 10),
        (1, 4),
        (1, 2),
        (1, 1),
        (3, 2),
        (2, 1),
        (4, 1),
        (10, 1),
        (100, 1),
    ]
    .into_iter()
    .map(|(p, d)| q(p, d))
    .collect()
}
