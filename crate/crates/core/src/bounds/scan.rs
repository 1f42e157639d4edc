//! Checking the occupancy and partition-function bounds across a list of
//! graphs and fugacities.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::{conjecture_reference, cubic_bound, reference_occupancy, t3_polynomial, tf_alpha_bound};
use super::{BoundsError, ReferenceKind};
use crate::graph::{write_graph6, Graph};
use crate::hardcore::rational::{self, format_pq, Rational};
use crate::hardcore::{check_fugacity, expected_size, independence_polynomial, y_polynomials, MAX_Y_VERTICES};

/// Slack allowed in the floating-point conjecture comparison.
pub const CONJECTURE_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckTag {
    /// `α_G(λ) >= α_{K_{d+1}}(λ)`.
    Main,
    /// `α_G(λ) <= α_{K_{d,d}}(λ)`.
    Djpr,
    /// `α_G(λ) >=` the triangle-free bound.
    TfBound,
    /// `α_G(λ) >=` the cubic bound.
    CubicBound,
    /// `P(Y = 3) >= (1+λ)³ / P_{T_3}(λ)`.
    Y3Bound,
    /// `P_G(λ)^{1/n} >= min(P_{GP(5,2)}^{1/10}, P_{GP(7,2)}^{1/14})`.
    Conjecture,
    /// Equality in `Main` exactly for disjoint unions of `K_{d+1}`.
    EqualityStructure,
}

impl CheckTag {
    pub const ALL: [CheckTag; 7] = [
        CheckTag::Main,
        CheckTag::Djpr,
        CheckTag::TfBound,
        CheckTag::CubicBound,
        CheckTag::Y3Bound,
        CheckTag::Conjecture,
        CheckTag::EqualityStructure,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckTag::Main => "main",
            CheckTag::Djpr => "djpr",
            CheckTag::TfBound => "tf-bound",
            CheckTag::CubicBound => "cubic-bound",
            CheckTag::Y3Bound => "y3-bound",
            CheckTag::Conjecture => "conjecture",
            CheckTag::EqualityStructure => "equality-structure",
        }
    }

    fn needs_triangle_free(self) -> bool {
        matches!(
            self,
            CheckTag::TfBound | CheckTag::CubicBound | CheckTag::Y3Bound | CheckTag::Conjecture
        )
    }

    fn needs_cubic(self) -> bool {
        matches!(self, CheckTag::CubicBound | CheckTag::Y3Bound | CheckTag::Conjecture)
    }
}

impl fmt::Display for CheckTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckTag {
    type Err = BoundsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckTag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| BoundsError::Parameter(format!("unknown check {s:?}")))
    }
}

impl Serialize for CheckTag {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// One graph × fugacity × check cell. `lhs` and `rhs` are the compared
/// values: exact `p/q` strings, floats for the conjecture, and booleans
/// (equality seen, extremal structure present) for the equality check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub graph_index: usize,
    pub graph6: String,
    pub n: usize,
    pub d: usize,
    #[serde(with = "rational::serde_pq")]
    pub lambda: Rational,
    pub check: CheckTag,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
    /// `lhs == rhs` exactly (always false for the float comparison).
    pub equality: bool,
}

/// A graph skipped because it fails a check's precondition.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphFailure {
    pub graph_index: usize,
    pub graph6: String,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ScanReport {
    pub records: Vec<CheckRecord>,
    pub failures: Vec<GraphFailure>,
}

impl ScanReport {
    pub fn all_passed(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failed_records(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }
}

/// Float with 12 significant digits.
pub fn format_float(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let s = format!("{:.11e}", x);
    let v: f64 = s.parse().expect("formatted float");
    format!("{v}")
}

fn precondition(g: &Graph, checks: &BTreeSet<CheckTag>) -> Result<usize, String> {
    let d = g.regular_degree().ok_or("graph is not regular")?;
    if d == 0 {
        return Err("graph has no edges".into());
    }
    let tf_needed = checks.iter().any(|c| c.needs_triangle_free());
    if tf_needed && !g.is_triangle_free() {
        let names: Vec<_> = checks
            .iter()
            .filter(|c| c.needs_triangle_free())
            .map(|c| c.as_str())
            .collect();
        return Err(format!(
            "graph has a triangle; checks {} need triangle-free graphs",
            names.join(",")
        ));
    }
    if checks.contains(&CheckTag::TfBound) && d < 2 {
        return Err("tf-bound needs d >= 2".into());
    }
    if checks.iter().any(|c| c.needs_cubic()) && d != 3 {
        let names: Vec<_> = checks.iter().filter(|c| c.needs_cubic()).map(|c| c.as_str()).collect();
        return Err(format!("checks {} need a cubic graph, degree is {d}", names.join(",")));
    }
    if checks.contains(&CheckTag::Y3Bound) && g.n() > MAX_Y_VERTICES {
        return Err(format!("y3-bound supports at most {MAX_Y_VERTICES} vertices"));
    }
    Ok(d)
}

fn scan_graph(
    index: usize,
    g: &Graph,
    lambdas: &[Rational],
    checks: &BTreeSet<CheckTag>,
) -> Result<Vec<CheckRecord>, GraphFailure> {
    let graph6 = write_graph6(g);
    let fail = |message: String| GraphFailure {
        graph_index: index,
        graph6: graph6.clone(),
        message,
    };
    let d = precondition(g, checks).map_err(fail)?;
    let n = g.n();
    let nn = Rational::from_integer(n.into());
    let poly = independence_polynomial(g);
    let ypolys = if checks.contains(&CheckTag::Y3Bound) {
        Some(y_polynomials(g).map_err(|e| fail(e.to_string()))?)
    } else {
        None
    };
    let extremal = g.is_disjoint_union_of_cliques();
    let mut out = Vec::new();
    for lambda in lambdas {
        let alpha = expected_size(&poly, lambda) / &nn;
        let clique = reference_occupancy(ReferenceKind::Clique, d, lambda).map_err(|e| fail(e.to_string()))?;
        for &check in checks {
            let (pass, lhs, rhs, equality) = match check {
                CheckTag::Main => (alpha >= clique, format_pq(&alpha), format_pq(&clique), alpha == clique),
                CheckTag::Djpr => {
                    let bi =
                        reference_occupancy(ReferenceKind::Biclique, d, lambda).map_err(|e| fail(e.to_string()))?;
                    (alpha <= bi, format_pq(&alpha), format_pq(&bi), alpha == bi)
                }
                CheckTag::TfBound => {
                    let b = tf_alpha_bound(d, lambda).map_err(|e| fail(e.to_string()))?;
                    (alpha >= b, format_pq(&alpha), format_pq(&b), alpha == b)
                }
                CheckTag::CubicBound => {
                    let b = cubic_bound(lambda).map_err(|e| fail(e.to_string()))?;
                    let y0 = b.alpha_bound();
                    (&alpha >= y0, format_pq(&alpha), format_pq(y0), &alpha == y0)
                }
                CheckTag::Y3Bound => {
                    let y = ypolys
                        .as_ref()
                        .expect("computed above")
                        .at(lambda)
                        .map_err(|e| fail(e.to_string()))?;
                    let base = Rational::from_integer(1.into()) + lambda;
                    let bound = rational::powi(&base, 3) / t3_polynomial().eval(lambda);
                    (y.y[3] >= bound, format_pq(&y.y[3]), format_pq(&bound), y.y[3] == bound)
                }
                CheckTag::Conjecture => {
                    let lhs = (rational::ln_rational(&poly.eval(lambda)) / n as f64).exp();
                    let rhs = conjecture_reference(lambda).map_err(|e| fail(e.to_string()))?;
                    (
                        lhs >= rhs - CONJECTURE_SLACK,
                        format_float(lhs),
                        format_float(rhs),
                        false,
                    )
                }
                CheckTag::EqualityStructure => {
                    let eq = alpha == clique;
                    (eq == extremal, eq.to_string(), extremal.to_string(), eq == extremal)
                }
            };
            out.push(CheckRecord {
                graph_index: index,
                graph6: graph6.clone(),
                n,
                d,
                lambda: lambda.clone(),
                check,
                pass,
                lhs,
                rhs,
                equality,
            });
        }
    }
    Ok(out)
}

/// Run `checks` on every graph at every fugacity, using up to `jobs` worker
/// threads. Records come back ordered by graph, then fugacity, then check,
/// regardless of `jobs`. A graph failing a precondition is reported in
/// `failures` and the scan moves on.
pub fn scan_check(
    graphs: &[Graph],
    lambdas: &[Rational],
    checks: &[CheckTag],
    jobs: usize,
) -> Result<ScanReport, BoundsError> {
    if lambdas.is_empty() {
        return Err(BoundsError::Parameter("no fugacities given".into()));
    }
    for l in lambdas {
        check_fugacity(l)?;
    }
    if checks.is_empty() {
        return Err(BoundsError::Parameter("no checks given".into()));
    }
    let checks: BTreeSet<CheckTag> = checks.iter().copied().collect();
    let run = || -> Vec<Result<Vec<CheckRecord>, GraphFailure>> {
        graphs
            .par_iter()
            .enumerate()
            .map(|(i, g)| scan_graph(i, g, lambdas, &checks))
            .collect()
    };
    let results = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| BoundsError::Parameter(format!("thread pool: {e}")))?
        .install(run);
    let mut report = ScanReport::default();
    for r in results {
        match r {
            Ok(records) => report.records.extend(records),
            Err(f) => report.failures.push(f),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};
    use crate::hardcore::rational::{int, rat};

    fn lambdas() -> Vec<Rational> {
        vec![rat(1, 4), int(1), int(4)]
    }

    #[test]
    fn tags_round_trip() {
        for t in CheckTag::ALL {
            assert_eq!(t.as_str().parse::<CheckTag>().unwrap(), t);
        }
        assert!("nope".parse::<CheckTag>().is_err());
    }

    #[test]
    fn gp72_all_pass() {
        let g = generate(&FamilySpec::GeneralizedPetersen { n: 7, k: 2 }).unwrap();
        let r = scan_check(&[g], &lambdas(), &CheckTag::ALL, 1).unwrap();
        assert!(r.failures.is_empty());
        assert_eq!(r.records.len(), 21);
        assert!(r.all_passed(), "{:?}", r.failed_records().collect::<Vec<_>>());
    }

    #[test]
    fn extremal_graphs() {
        let k33 = generate(&FamilySpec::Biclique(3)).unwrap();
        let r = scan_check(&[k33], &lambdas(), &[CheckTag::Djpr], 1).unwrap();
        assert!(r.records.iter().all(|c| c.pass && c.equality));
        let k4 = generate(&FamilySpec::Complete(4)).unwrap();
        let r = scan_check(&[k4], &lambdas(), &[CheckTag::Main, CheckTag::EqualityStructure], 1).unwrap();
        assert!(r.all_passed());
        assert!(r
            .records
            .iter()
            .filter(|c| c.check == CheckTag::Main)
            .all(|c| c.equality));
    }

    #[test]
    fn precondition_failures_continue() {
        let k4 = generate(&FamilySpec::Complete(4)).unwrap();
        let path = generate(&FamilySpec::Path(3)).unwrap();
        let k33 = generate(&FamilySpec::Biclique(3)).unwrap();
        let r = scan_check(
            &[k4, path, k33],
            &[int(1)],
            &[CheckTag::CubicBound, CheckTag::Y3Bound],
            2,
        )
        .unwrap();
        assert_eq!(r.failures.len(), 2);
        assert_eq!(r.failures[0].graph_index, 0);
        assert!(r.failures[0].message.contains("triangle"));
        assert_eq!(r.failures[1].graph_index, 1);
        assert_eq!(r.records.len(), 2);
        assert!(r.records.iter().all(|c| c.graph_index == 2 && c.pass));
    }

    #[test]
    fn order_independent_of_jobs() {
        let graphs: Vec<Graph> = crate::graph::naive_cubic_tf_corpus(10).unwrap();
        let a = scan_check(&graphs, &lambdas(), &[CheckTag::Main, CheckTag::Conjecture], 1).unwrap();
        let b = scan_check(&graphs, &lambdas(), &[CheckTag::Main, CheckTag::Conjecture], 4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_input() {
        let g = generate(&FamilySpec::Biclique(3)).unwrap();
        assert!(scan_check(std::slice::from_ref(&g), &[], &[CheckTag::Main], 1).is_err());
        assert!(scan_check(std::slice::from_ref(&g), &[int(0)], &[CheckTag::Main], 1).is_err());
        assert!(scan_check(&[g], &[int(1)], &[], 1).is_err());
    }

    #[test]
    fn float_format() {
        assert_eq!(format_float(76f64.powf(0.1)), "1.54198929684");
        assert_eq!(format_float(0.5), "0.5");
    }
}
