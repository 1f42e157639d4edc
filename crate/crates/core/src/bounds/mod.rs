//! Closed-form optima of the triangle-free programs, derived bounds on the
//! occupancy fraction and partition function, and comparison constants.

mod quadrature;
mod scan;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::graph::{generate, FamilySpec, GraphError};
use crate::hardcore::rational::{self, Rational};
use crate::hardcore::{check_fugacity, independence_polynomial, HardcoreError, Polynomial};

pub use quadrature::{adaptive_simpson, integrand, log_partition_bound, DEFAULT_TOL};
pub use scan::{format_float, scan_check, CheckRecord, CheckTag, GraphFailure, ScanReport, CONJECTURE_SLACK};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Hardcore(#[from] HardcoreError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Which program a bound comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundModel {
    /// Triangle-free `d`-regular graphs.
    Tfree,
    /// Cubic triangle-free graphs, with the extra `y_3` constraint.
    Cubic,
}

impl FromStr for BoundModel {
    type Err = BoundsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tfree" => Ok(BoundModel::Tfree),
            "cubic" => Ok(BoundModel::Cubic),
            _ => Err(BoundsError::Parameter(format!(
                "unknown model {s:?}, expected tfree or cubic"
            ))),
        }
    }
}

impl fmt::Display for BoundModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundModel::Tfree => "tfree",
            BoundModel::Cubic => "cubic",
        })
    }
}

fn from_usize(k: usize) -> Rational {
    Rational::from_integer(k.into())
}

fn check_degree(d: usize, min: usize) -> Result<(), BoundsError> {
    if d < min {
        return Err(BoundsError::Precondition(format!("need d >= {min}, got {d}")));
    }
    Ok(())
}

/// The branch `i` of the triangle-free optimum at `λ`: the smallest
/// `i ∈ {1, …, d-1}` with `(i+1)(1+λ)^i >= d`. Boundaries go to the lower
/// branch, so `λ = m_i` lands on branch `i`.
pub fn branch_index(d: usize, lambda: &Rational) -> Result<usize, BoundsError> {
    check_degree(d, 2)?;
    check_fugacity(lambda)?;
    let base = Rational::one() + lambda;
    let dd = from_usize(d);
    let mut power = Rational::one(); // (1+λ)^{i-1}
    for i in 1..d {
        let next = &power * &base;
        if from_usize(i + 1) * &next >= dd {
            debug_assert!(from_usize(i) * &power < dd);
            return Ok(i);
        }
        power = next;
    }
    unreachable!("d·(1+λ)^(d-1) >= d always holds")
}

/// Breakpoint `m_i = (d/(i+1))^{1/i} - 1` as a float, for display only.
pub fn breakpoint(d: usize, i: usize) -> f64 {
    if i == 0 {
        return f64::INFINITY;
    }
    (d as f64 / (i + 1) as f64).powf(1.0 / i as f64) - 1.0
}

/// `[m_1, …, m_{d-1}]`, decreasing, ending at `m_{d-1} = 0`.
pub fn breakpoints(d: usize) -> Vec<f64> {
    (1..d).map(|i| breakpoint(d, i)).collect()
}

/// Optimal primal and dual solutions of the triangle-free program: the
/// primal is supported on `{0, i, i+1}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TfBound {
    pub d: usize,
    #[serde(with = "rational::serde_pq")]
    pub lambda: Rational,
    pub branch: usize,
    #[serde(with = "rational::serde_pq")]
    pub y0: Rational,
    #[serde(with = "rational::serde_pq")]
    pub yi: Rational,
    #[serde(with = "rational::serde_pq")]
    pub yi1: Rational,
    #[serde(with = "rational::serde_pq")]
    pub s: Rational,
    #[serde(with = "rational::serde_pq")]
    pub m: Rational,
    #[serde(with = "rational::serde_pq")]
    pub a: Rational,
}

impl TfBound {
    /// `(y_0, …, y_d)`.
    pub fn primal(&self) -> Vec<Rational> {
        let mut y = vec![Rational::zero(); self.d + 1];
        y[0] = self.y0.clone();
        y[self.branch] = self.yi.clone();
        y[self.branch + 1] = self.yi1.clone();
        y
    }

    /// `(S, M, A)`.
    pub fn dual(&self) -> Vec<Rational> {
        vec![self.s.clone(), self.m.clone(), self.a.clone()]
    }

    pub fn primal_objective(&self) -> Rational {
        from_usize(self.branch) * &self.yi + from_usize(self.branch + 1) * &self.yi1
    }

    /// The lower bound on `α_G(λ)`.
    pub fn alpha_bound(&self) -> &Rational {
        &self.y0
    }

    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if &self.y0 + &self.yi + &self.yi1 != Rational::one() {
            out.push("y0 + yi + yi1 != 1".into());
        }
        if self.y0.is_negative() || self.yi.is_negative() || self.yi1.is_negative() {
            out.push("negative probability".into());
        }
        if self.primal_objective() != self.s {
            out.push("primal objective != S".into());
        }
        let per = &self.lambda / (from_usize(self.d) * (Rational::one() + &self.lambda));
        if self.y0 != per * self.primal_objective() {
            out.push("y0 >= α row not tight".into());
        }
        out
    }
}

/// Closed-form solution on a given branch, valid whether or not `λ` lies in
/// the branch's interval.
pub fn tf_bound_on_branch(d: usize, lambda: &Rational, i: usize) -> Result<TfBound, BoundsError> {
    check_degree(d, 2)?;
    check_fugacity(lambda)?;
    if i == 0 || i >= d {
        return Err(BoundsError::Parameter(format!("branch {i} outside 1..={}", d - 1)));
    }
    let l = lambda;
    let base = Rational::one() + l;
    let dd = from_usize(d);
    let ii = from_usize(i);
    let i1 = from_usize(i + 1);
    let pow = |k: usize| rational::powi(&base, k as i32);
    let lin = Rational::one() + &i1 * l; // 1 + (i+1)λ
    let den = pow(i + 1) + l * (&dd + Rational::one() + (&dd + &i1) * l);
    Ok(TfBound {
        d,
        lambda: l.clone(),
        branch: i,
        y0: l * &lin / &den,
        yi: &base * (&i1 * pow(i) - &dd) / &den,
        yi1: pow(2) * (&dd - ii * pow(i - 1)) / &den,
        s: &dd * &base * &lin / &den,
        m: pow(i + 2) / &den,
        a: &dd * &base * (pow(i + 1) - &lin) / &den,
    })
}

/// Closed-form optimum of the triangle-free program at `λ`.
pub fn tf_bound(d: usize, lambda: &Rational) -> Result<TfBound, BoundsError> {
    let i = branch_index(d, lambda)?;
    tf_bound_on_branch(d, lambda, i)
}

/// Lower bound on the occupancy fraction of triangle-free `d`-regular graphs.
pub fn tf_alpha_bound(d: usize, lambda: &Rational) -> Result<Rational, BoundsError> {
    Ok(tf_bound(d, lambda)?.y0)
}

/// `P_{T_3}(λ) = (1+3λ+λ²)³ + λ(1+λ)⁶`, computed from the generated tree.
pub fn t3_polynomial() -> Polynomial {
    static T3: OnceLock<Polynomial> = OnceLock::new();
    T3.get_or_init(|| independence_polynomial(&generate(&FamilySpec::T3).expect("T3 is valid")))
        .clone()
}

/// `1 + 6λ + 6λ²`.
pub fn cubic_q() -> Polynomial {
    Polynomial::from_i64s(&[1, 6, 6])
}

/// Numerators of `y_1` and `y_2` over the common denominator
/// `(1+6λ+6λ²)·P_{T_3}(λ)`.
pub fn cubic_numerators() -> (Polynomial, Polynomial) {
    let t3 = t3_polynomial();
    let sq = Polynomial::one_plus_x_pow(2);
    let y1 = &Polynomial::from_i64s(&[-1, 1, 2]) * &t3 + &Polynomial::from_i64s(&[1, 7, 9, 1]) * &sq;
    let y2 = &(&Polynomial::from_i64s(&[2]) * &sq) * &t3 - &Polynomial::from_i64s(&[2, 14, 21, 8]) * &sq;
    (y1, y2)
}

/// Optimal primal and dual solutions of the cubic program; every constraint
/// of both programs is tight.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CubicBound {
    #[serde(with = "rational::serde_pq")]
    pub lambda: Rational,
    /// `Λ = (1+λ)³ / P_{T_3}(λ)`, the lower bound on `y_3`.
    #[serde(rename = "Lambda", with = "rational::serde_pq")]
    pub big_lambda: Rational,
    #[serde(with = "rational::serde_pq::vec")]
    pub y: Vec<Rational>,
    #[serde(with = "rational::serde_pq")]
    pub s: Rational,
    #[serde(with = "rational::serde_pq")]
    pub m: Rational,
    #[serde(with = "rational::serde_pq")]
    pub a: Rational,
    #[serde(with = "rational::serde_pq")]
    pub b: Rational,
}

impl CubicBound {
    pub fn alpha_bound(&self) -> &Rational {
        &self.y[0]
    }

    /// `(S, M, A, B)`.
    pub fn dual(&self) -> Vec<Rational> {
        vec![self.s.clone(), self.m.clone(), self.a.clone(), self.b.clone()]
    }

    pub fn primal_objective(&self) -> Rational {
        self.y.iter().enumerate().map(|(i, y)| from_usize(i) * y).sum()
    }

    pub fn dual_objective(&self) -> Rational {
        &self.s + &self.big_lambda * &self.b
    }

    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.y.iter().sum::<Rational>() != Rational::one() {
            out.push("Σ y != 1".into());
        }
        if self.y.iter().any(Signed::is_negative) {
            out.push("negative probability".into());
        }
        if self.y[3] != self.big_lambda {
            out.push("y3 != Λ".into());
        }
        if self.primal_objective() != self.dual_objective() {
            out.push("primal objective != S + ΛB".into());
        }
        out
    }
}

/// Closed-form optimum of the cubic program at `λ`.
pub fn cubic_bound(lambda: &Rational) -> Result<CubicBound, BoundsError> {
    check_fugacity(lambda)?;
    let l = lambda;
    let base = Rational::one() + l;
    let sq = &base * &base;
    let t3 = t3_polynomial().eval(l);
    let q = cubic_q().eval(l);
    let qp = &q * &t3;
    let ev = |c: &[i64]| Polynomial::from_i64s(c).eval(l);
    let y = vec![
        ev(&[0, 1, 2]) / &q + ev(&[0, 0, 0, 1]) * &sq / &qp,
        ev(&[-1, 1, 2]) / &q + ev(&[1, 7, 9, 1]) * &sq / &qp,
        from_usize(2) * &sq / &q - ev(&[2, 14, 21, 8]) * &sq / &qp,
        &sq * &base / &t3,
    ];
    let l2 = l * l;
    Ok(CubicBound {
        lambda: l.clone(),
        big_lambda: y[3].clone(),
        s: from_usize(3) * &base * ev(&[1, 2]) / &q,
        m: &sq * &base / &q,
        a: from_usize(3) * &l2 * &base / &q,
        b: from_usize(3) * &l2 / &q,
        y,
    })
}

/// Extremal graphs for the occupancy-fraction comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReferenceKind {
    /// `K_{d+1}`, the minimizer over all `d`-regular graphs.
    Clique,
    /// `K_{d,d}`, the maximizer over all `d`-regular graphs.
    Biclique,
}

/// Occupancy fraction of `K_{d+1}` or `K_{d,d}` in closed form.
pub fn reference_occupancy(kind: ReferenceKind, d: usize, lambda: &Rational) -> Result<Rational, BoundsError> {
    check_degree(d, 1)?;
    check_fugacity(lambda)?;
    let one = Rational::one();
    Ok(match kind {
        ReferenceKind::Clique => lambda / (&one + from_usize(d + 1) * lambda),
        ReferenceKind::Biclique => {
            let base = &one + lambda;
            lambda * rational::powi(&base, d as i32 - 1) / (from_usize(2) * rational::powi(&base, d as i32) - one)
        }
    })
}

/// Shearer's recurrence `f(0) = 1`, `f(d) = (1 + (d²-d) f(d-1)) / (d²+1)`.
pub fn shearer(d: usize) -> Rational {
    (1..=d).fold(Rational::one(), |f, k| {
        let kk = from_usize(k);
        (Rational::one() + (&kk * &kk - &kk) * f) / (&kk * &kk + Rational::one())
    })
}

/// Principal branch of the Lambert W function on `x >= 0`, by Newton's
/// method from `ln(1 + x)`.
pub fn lambert_w(x: f64) -> Result<f64, BoundsError> {
    if x.is_nan() || x < 0.0 || x.is_infinite() {
        return Err(BoundsError::Domain(format!("lambert_w needs a finite x >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let mut w = x.ln_1p();
    for _ in 0..100 {
        let ew = w.exp();
        let step = (w * ew - x) / (ew * (w + 1.0));
        w -= step;
        if step.abs() <= 1e-15 * w.abs().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    Ok(w)
}

/// `exp((W(3 ln 2)² + 2 W(3 ln 2)) / 6)`.
pub fn djpr_constant() -> f64 {
    let w = lambert_w(3.0 * std::f64::consts::LN_2).expect("positive argument");
    ((w * w + 2.0 * w) / 6.0).exp()
}

fn petersen_polynomials() -> &'static [(Polynomial, usize); 2] {
    static POLYS: OnceLock<[(Polynomial, usize); 2]> = OnceLock::new();
    POLYS.get_or_init(|| {
        [(5, 2), (7, 2)].map(|(n, k)| {
            let g = generate(&FamilySpec::GeneralizedPetersen { n, k }).expect("valid parameters");
            (independence_polynomial(&g), g.n())
        })
    })
}

/// `min(P_{GP(5,2)}(λ)^{1/10}, P_{GP(7,2)}(λ)^{1/14})`.
pub fn conjecture_reference(lambda: &Rational) -> Result<f64, BoundsError> {
    check_fugacity(lambda)?;
    let per_vertex = petersen_polynomials()
        .iter()
        .map(|(p, n)| rational::ln_rational(&p.eval(lambda)) / *n as f64)
        .fold(f64::INFINITY, f64::min);
    Ok(per_vertex.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hardcore::occupancy_fraction;
    use crate::hardcore::rational::{int, rat};

    #[test]
    fn branches() {
        assert_eq!(branch_index(3, &int(1)).unwrap(), 1);
        assert_eq!(branch_index(3, &rat(1, 4)).unwrap(), 2);
        assert_eq!(branch_index(4, &int(1)).unwrap(), 1);
        assert_eq!(branch_index(2, &rat(1, 1000)).unwrap(), 1);
        assert!(branch_index(1, &int(1)).is_err());
        assert!(branch_index(3, &int(0)).is_err());
    }

    #[test]
    fn breakpoints_decrease_to_zero() {
        for d in 2..=10 {
            let m = breakpoints(d);
            assert!(m.windows(2).all(|w| w[0] > w[1]));
            assert!(m.last().unwrap().abs() < 1e-15);
        }
        assert!((breakpoint(3, 1) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn tf_examples() {
        let b = tf_bound(3, &int(1)).unwrap();
        assert_eq!(
            (b.y0.clone(), b.yi.clone(), b.yi1.clone()),
            (rat(3, 13), rat(2, 13), rat(8, 13))
        );
        assert_eq!(b.dual(), vec![rat(18, 13), rat(8, 13), rat(6, 13)]);
        assert!(b.invariant_violations().is_empty());
        let b = tf_bound(3, &rat(1, 4)).unwrap();
        assert_eq!(b.branch, 2);
        assert_eq!(b.primal(), vec![rat(28, 213), int(0), rat(135, 213), rat(50, 213)]);
        assert_eq!(tf_alpha_bound(3, &int(1)).unwrap(), rat(3, 13));
    }

    #[test]
    fn boundary_branches_agree() {
        // λ = m_1 for d = 4
        let lo = tf_bound_on_branch(4, &int(1), 1).unwrap();
        let hi = tf_bound_on_branch(4, &int(1), 2).unwrap();
        assert_eq!(lo.yi, int(0));
        assert_eq!(lo.primal(), hi.primal());
        // the dual is degenerate here: both branches give optimal duals
        let p = crate::lp::build_lp_trianglefree(4, &int(1)).unwrap();
        for b in [&lo, &hi] {
            let r = crate::lp::check_complementary_slackness(&p, &b.primal(), &b.dual()).unwrap();
            assert!(r.is_certified());
        }
        assert_eq!(lo.s, hi.s);
        assert_ne!(lo.m, hi.m);
        assert!(tf_bound_on_branch(4, &int(1), 4).is_err());
    }

    #[test]
    fn cubic_example() {
        let c = cubic_bound(&int(1)).unwrap();
        assert_eq!(
            c.y,
            vec![rat(571, 2457), rat(450, 2457), rat(1332, 2457), rat(104, 2457)]
        );
        assert_eq!(c.big_lambda, rat(8, 189));
        assert_eq!(c.dual(), vec![rat(18, 13), rat(8, 13), rat(6, 13), rat(3, 13)]);
        assert_eq!(c.dual_objective(), rat(3426, 2457));
        assert!(c.invariant_violations().is_empty());
        let petersen = generate(&FamilySpec::GeneralizedPetersen { n: 5, k: 2 }).unwrap();
        let alpha = occupancy_fraction(&petersen, &int(1)).unwrap();
        assert_eq!(alpha, rat(9, 38));
        assert!(c.alpha_bound() <= &alpha);
    }

    #[test]
    fn t3_expansion() {
        let t3 = t3_polynomial();
        let base = Polynomial::from_i64s(&[1, 3, 1]);
        let expected = &base.pow(3) + &(&Polynomial::x() * &Polynomial::one_plus_x_pow(6));
        assert_eq!(t3, expected);
        assert_eq!(t3, Polynomial::from_i64s(&[1, 10, 36, 60, 50, 24, 7, 1]));
        assert_eq!(t3.eval(&int(1)), int(189));
    }

    #[test]
    fn cubic_numerators_match() {
        let (n1, n2) = cubic_numerators();
        let den = &cubic_q() * &t3_polynomial();
        for l in [rat(1, 3), int(1), int(5)] {
            let c = cubic_bound(&l).unwrap();
            assert_eq!(n1.eval(&l) / den.eval(&l), c.y[1]);
            assert_eq!(n2.eval(&l) / den.eval(&l), c.y[2]);
        }
    }

    #[test]
    fn reference_values() {
        assert_eq!(
            reference_occupancy(ReferenceKind::Clique, 3, &int(1)).unwrap(),
            rat(1, 5)
        );
        assert_eq!(
            reference_occupancy(ReferenceKind::Biclique, 3, &int(1)).unwrap(),
            rat(4, 15)
        );
        assert!(reference_occupancy(ReferenceKind::Clique, 0, &int(1)).is_err());
    }

    #[test]
    fn shearer_values() {
        assert_eq!(shearer(0), int(1));
        assert_eq!(shearer(1), rat(1, 2));
        assert_eq!(shearer(2), rat(2, 5));
        assert_eq!(shearer(3), rat(17, 50));
    }

    #[test]
    fn lambert() {
        assert_eq!(lambert_w(0.0).unwrap(), 0.0);
        assert!((lambert_w(std::f64::consts::E).unwrap() - 1.0).abs() < 1e-12);
        for x in [1e-8, 0.3, 2.0, 100.0, 1e6] {
            let w = lambert_w(x).unwrap();
            assert!((w * w.exp() - x).abs() <= 1e-12 * x);
        }
        assert!(lambert_w(-0.1).is_err());
        assert!(lambert_w(f64::NAN).is_err());
    }

    #[test]
    fn conjecture_at_one() {
        let c = conjecture_reference(&int(1)).unwrap();
        assert!((c - 76f64.powf(0.1)).abs() < 1e-12);
        let big = conjecture_reference(&int(1_000_000)).unwrap();
        let (p7, n7) = &petersen_polynomials()[1];
        let gp72 = (rational::ln_rational(&p7.eval(&int(1_000_000))) / *n7 as f64).exp();
        assert!((big - gp72).abs() < 1e-9 * big);
        let tiny = conjecture_reference(&rat(1, 1_000_000_000)).unwrap();
        assert!((tiny - 1.0).abs() < 1e-8);
    }
}
