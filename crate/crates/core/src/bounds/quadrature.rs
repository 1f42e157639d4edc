//! Per-vertex lower bound on `log P_G(λ)` by integrating the occupancy bound:
//! `log P_G(λ) / n = ∫_0^λ α_G(t)/t dt`.

use num_traits::{One, Zero};

use super::{branch_index, breakpoint, check_degree, cubic_q, from_usize, t3_polynomial, BoundModel, BoundsError};
use crate::hardcore::rational::{self, Rational};
use crate::hardcore::Polynomial;

pub const DEFAULT_TOL: f64 = 1e-10;

const MAX_DEPTH: u32 = 48;

/// `y_0(t)/t` on a branch, with the factor `t` cancelled so `t = 0` is fine.
fn tfree_ratio(d: usize, i: usize, t: &Rational) -> Rational {
    let base = Rational::one() + t;
    let lin = Rational::one() + from_usize(i + 1) * t;
    let den = rational::powi(&base, i as i32 + 1) + t * (from_usize(d + 1) + from_usize(d + i + 1) * t);
    lin / den
}

fn cubic_ratio(t: &Rational) -> Rational {
    let q = cubic_q().eval(t);
    let sq = Polynomial::one_plus_x_pow(2).eval(t);
    (Rational::one() + Rational::from_integer(2.into()) * t) / &q + t * t * sq / (q * t3_polynomial().eval(t))
}

/// The integrand `y_0(t)/t`, evaluated exactly at the rational value of `t`
/// and rounded once.
pub fn integrand(model: BoundModel, d: usize, t: f64) -> Result<f64, BoundsError> {
    if t.is_nan() || t < 0.0 || t.is_infinite() {
        return Err(BoundsError::Parameter(format!(
            "integrand needs finite t >= 0, got {t}"
        )));
    }
    let exact = rational::from_f64(t);
    let value = match model {
        BoundModel::Cubic => cubic_ratio(&exact),
        BoundModel::Tfree => {
            check_degree(d, 2)?;
            let i = if exact.is_zero() {
                d - 1
            } else {
                branch_index(d, &exact)?
            };
            tfree_ratio(d, i, &exact)
        }
    };
    Ok(rational::to_f64(&value))
}

/// Adaptive Simpson quadrature with the interval-halving error estimate
/// `|S_left + S_right - S| <= 15·tol` and Richardson correction.
pub fn adaptive_simpson(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &mut impl FnMut(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// `∫_0^{λ_max} y_0(t)/t dt`, a lower bound on `log P_G(λ_max)/n` for every
/// graph the model covers. The triangle-free integrand is split at the
/// breakpoints, where it is only piecewise smooth.
pub fn log_partition_bound(model: BoundModel, d: usize, lambda_max: f64, tol: f64) -> Result<f64, BoundsError> {
    if tol.is_nan() || tol <= 0.0 || tol.is_infinite() {
        return Err(BoundsError::Parameter(format!("tolerance must be positive, got {tol}")));
    }
    if lambda_max.is_nan() || lambda_max <= 0.0 || lambda_max.is_infinite() {
        return Err(BoundsError::Parameter(format!(
            "lambda_max must be positive, got {lambda_max}"
        )));
    }
    match model {
        BoundModel::Cubic if d != 3 => {
            return Err(BoundsError::Parameter(format!("cubic model needs d = 3, got {d}")));
        }
        BoundModel::Tfree => check_degree(d, 2)?,
        _ => {}
    }
    let mut cuts = vec![0.0];
    if model == BoundModel::Tfree {
        let mut inner: Vec<f64> = (1..d - 1)
            .map(|i| breakpoint(d, i))
            .filter(|&m| m > 0.0 && m < lambda_max)
            .collect();
        inner.reverse();
        cuts.extend(inner);
    }
    cuts.push(lambda_max);
    let pieces = (cuts.len() - 1) as f64;
    let mut failure = None;
    let mut f = |t: f64| match integrand(model, d, t) {
        Ok(v) => v,
        Err(e) => {
            failure.get_or_insert(e);
            f64::NAN
        }
    };
    let total = cuts
        .windows(2)
        .map(|w| adaptive_simpson(&mut f, w[0], w[1], tol / pieces))
        .sum();
    match failure {
        Some(e) => Err(e),
        None => Ok(total),
    }
}
