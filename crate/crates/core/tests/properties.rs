mod common;

use common::{brute_occupancy, lambda_grid, q, qi, vertex_enumeration, Q};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use occupancy_core::bounds::{
    branch_index, cubic_bound, cubic_numerators, shearer, t3_polynomial, tf_alpha_bound, tf_bound,
};
use occupancy_core::graph::{
    canonical_label, enumerate_nonisomorphic, generate, naive_cubic_tf_corpus, parse_graph6, write_graph6, FamilySpec,
    Graph,
};
use occupancy_core::hardcore::{
    independence_polynomial, local_graph_distribution, neighborly_residual, occupancy_fraction, vertex_probabilities,
    y_distribution,
};
use occupancy_core::lp::{
    build_lp_cubic, build_lp_general, build_lp_trianglefree, check_complementary_slackness, dual_candidate,
    dual_candidate_via_ratio, dual_of, local_coefficients, occupancy_ratio, simplex_solve, LpProblem, Relation, Sense,
    Status,
};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn graph6_round_trip(g in graph_strategy(64)) {
        let text = write_graph6(&g);
        prop_assert_eq!(parse_graph6(&text).unwrap(), g);
    }

    #[test]
    fn canonical_label_is_invariant(g in graph_strategy(7), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
        let h = g.relabel(&perm);
        prop_assert_eq!(canonical_label(&g).unwrap(), canonical_label(&h).unwrap());
        prop_assert_eq!(canonical_label(&g).unwrap().to_graph().edge_count(), g.edge_count());
    }

    #[test]
    fn occupancy_matches_subset_sum(g in graph_strategy(9), p in 1i64..20, d in 1i64..8) {
        prop_assume!(g.n() > 0);
        let lambda = q(p, d);
        prop_assert_eq!(occupancy_fraction(&g, &lambda).unwrap(), brute_occupancy(&g, &lambda));
        prop_assert!(vertex_probabilities(&g, &lambda).unwrap().invariant_violations().is_empty());
    }

    #[test]
    fn simplex_matches_vertex_enumeration(
        n in 2usize..=4,
        extra in proptest::collection::vec((proptest::collection::vec(-3i64..=3, 4), 0u8..3, -2i64..=2), 0..=2),
        cost in proptest::collection::vec(-5i64..=5, 4),
        maximize in any::<bool>(),
    ) {
        let sense = if maximize { Sense::Max } else { Sense::Min };
        let mut p = LpProblem::new(sense, (0..n).map(|j| format!("x{j}")).collect(), cost[..n].iter().map(|&c| qi(c)).collect());
        p.add_row("sum", vec![qi(1); n], Relation::Eq, qi(1));
        for (i, (coeffs, rel, rhs)) in extra.iter().enumerate() {
            let relation = [Relation::Eq, Relation::Ge, Relation::Le][*rel as usize];
            p.add_row(format!("r{i}"), coeffs[..n].iter().map(|&c| qi(c)).collect(), relation, qi(*rhs));
        }
        let s = simplex_solve(&p).unwrap();
        match vertex_enumeration(&p) {
            None => prop_assert_eq!(s.status, Status::Infeasible),
            Some((value, _)) => {
                prop_assert_eq!(s.status, Status::Optimal);
                prop_assert_eq!(s.objective.clone(), Some(value));
                let report = check_complementary_slackness(&p, &s.primal, &s.dual).unwrap();
                prop_assert!(report.is_certified());
            }
        }
    }
}

fn builder_lps() -> Vec<(String, LpProblem)> {
    let t3 = t3_polynomial();
    let mut out = Vec::new();
    for l in lambda_grid() {
        for d in 2..=5 {
            out.push((format!("general d={d} λ={l}"), build_lp_general(d, &l).unwrap()));
        }
        for d in 2..=8 {
            out.push((format!("tfree d={d} λ={l}"), build_lp_trianglefree(d, &l).unwrap()));
        }
        out.push((format!("cubic λ={l}"), build_lp_cubic(&l, &t3).unwrap()));
    }
    out
}

#[test]
fn builders_strong_duality() {
    for (name, p) in builder_lps() {
        let s = simplex_solve(&p).unwrap();
        assert!(s.is_optimal(), "{name}");
        let dual = dual_of(&p).unwrap();
        let ds = simplex_solve(&dual).unwrap();
        assert_eq!(ds.objective, s.objective, "{name}");
        assert_eq!(dual.objective_value(&s.dual), s.objective.clone().unwrap(), "{name}");
        assert!(
            check_complementary_slackness(&p, &s.primal, &s.dual)
                .unwrap()
                .is_certified(),
            "{name}"
        );
    }
}

#[test]
fn small_builders_match_vertex_enumeration() {
    let mut checked = 0;
    for (name, p) in builder_lps() {
        if p.num_vars() > 6 {
            continue;
        }
        let (value, _) = vertex_enumeration(&p).expect("feasible");
        assert_eq!(simplex_solve(&p).unwrap().objective, Some(value), "{name}");
        checked += 1;
    }
    assert_eq!(checked, 10 * 6);
}

fn nonempty_graphs(d: usize) -> Vec<Graph> {
    enumerate_nonisomorphic(d)
        .unwrap()
        .into_iter()
        .filter(|g| g.n() > 0)
        .collect()
}

#[test]
fn dual_candidate_equivalence() {
    for d in 1..=4 {
        let graphs = nonempty_graphs(d);
        for l in [q(1, 4), qi(1), qi(4)] {
            for k in &graphs {
                let (ak, bk) = dual_candidate(k, d, &l).unwrap();
                assert_eq!(dual_candidate_via_ratio(k, d, &l).unwrap(), (ak.clone(), bk.clone()));
                let rk = occupancy_ratio(k, &l).unwrap();
                for h in &graphs {
                    let (a, b) = local_coefficients(h, d, &l);
                    let (ah, _) = dual_candidate(h, d, &l).unwrap();
                    let c1 = &ak + &bk * (&a - &b) <= &a + &b;
                    let c2 = ak <= ah;
                    let c3 = rk >= occupancy_ratio(h, &l).unwrap();
                    assert!(c1 == c2 && c2 == c3, "d={d} λ={l} K={k:?} H={h:?}: {c1} {c2} {c3}");
                }
            }
        }
    }
}

#[test]
fn dual_candidate_strictly_decreasing_in_ratio() {
    for d in 1..=5 {
        let graphs = nonempty_graphs(d);
        for l in [q(1, 3), qi(1), qi(5)] {
            let pts: Vec<(Q, Q)> = graphs
                .iter()
                .map(|h| (occupancy_ratio(h, &l).unwrap(), dual_candidate(h, d, &l).unwrap().0))
                .collect();
            for (r1, a1) in &pts {
                for (r2, a2) in &pts {
                    if r1 < r2 {
                        assert!(a1 > a2, "d={d} λ={l}");
                    } else if r1 == r2 {
                        assert_eq!(a1, a2);
                    }
                }
            }
        }
    }
}

#[test]
fn closed_forms_agree_with_simplex() {
    for d in 2..=8 {
        for l in lambda_grid() {
            let b = tf_bound(d, &l).unwrap();
            assert!(b.invariant_violations().is_empty(), "d={d} λ={l}");
            let p = build_lp_trianglefree(d, &l).unwrap();
            let s = simplex_solve(&p).unwrap();
            assert_eq!(s.objective, Some(b.s.clone()), "d={d} λ={l}");
            let r = check_complementary_slackness(&p, &b.primal(), &b.dual()).unwrap();
            assert!(r.is_certified(), "d={d} λ={l}");
        }
    }
}

#[test]
fn cubic_closed_form_all_tight() {
    let t3 = t3_polynomial();
    for l in lambda_grid()
        .into_iter()
        .chain([q(1, 7), q(5, 3), qi(3), qi(7), q(1, 1000), qi(1000)])
    {
        let c = cubic_bound(&l).unwrap();
        assert!(c.invariant_violations().is_empty(), "λ={l}");
        let p = build_lp_cubic(&l, &t3).unwrap();
        assert_eq!(simplex_solve(&p).unwrap().objective, Some(c.dual_objective()));
        let r = check_complementary_slackness(&p, &c.y, &c.dual()).unwrap();
        assert!(r.is_certified() && r.entries.iter().all(|e| e.tight), "λ={l}");
        assert!(tf_alpha_bound(3, &l).unwrap() <= c.y[0]);
    }
}

#[test]
fn breakpoints_strictly_decrease() {
    // m_{i+1} < m_i  ⇔  (i+1)^{i+1} < d·(i+2)^i
    for d in 2..=10u32 {
        for i in 1..d - 1 {
            let lhs = BigInt::from(i + 1).pow(i + 1);
            let rhs = BigInt::from(d) * BigInt::from(i + 2).pow(i);
            assert!(lhs < rhs, "d={d} i={i}");
        }
        // the branch index never increases with λ
        let mut last = d as usize;
        for k in 1..=200 {
            let i = branch_index(d as usize, &q(k, 20)).unwrap();
            assert!(i <= last);
            last = i;
        }
    }
}

#[test]
fn cubic_numerators_nonnegative() {
    let (n1, n2) = cubic_numerators();
    assert!(n1.has_nonnegative_coefficients() && n2.has_nonnegative_coefficients());
    let desc = |p: &occupancy_core::hardcore::Polynomial| -> Vec<i64> {
        p.coeffs().iter().rev().map(|c| c.try_into().unwrap()).collect()
    };
    assert_eq!(desc(&n1), vec![2, 15, 54, 117, 147, 93, 22, 0, 0, 0]);
    assert_eq!(desc(&n2), vec![2, 18, 78, 210, 360, 375, 220, 63, 6, 0]);
    assert!(n1.coeff(2).is_zero() && n2.coeff(0).is_zero());
}

#[test]
fn shearer_dominates_weak_bound() {
    for d in 3..=20i64 {
        assert!(shearer(d as usize) >= q(2, d + 3), "d={d}");
    }
}

#[test]
fn corpus_invariants() {
    let lambdas = [q(1, 4), qi(1), qi(4)];
    for n in [4, 6, 8, 10] {
        for g in naive_cubic_tf_corpus(n).unwrap() {
            assert!(g.is_triangle_free() && g.regular_degree() == Some(3) && g.is_connected());
            for l in &lambdas {
                let y = y_distribution(&g, l).unwrap();
                assert_eq!(y.total(), Q::one());
                assert!(y.identity_residual().is_zero());
                assert!(y.y.iter().all(|p| !p.is_negative()));
                let h = local_graph_distribution(&g, l).unwrap();
                assert!(neighborly_residual(&h, 3, l).unwrap().is_zero());
                assert_eq!(h.as_y_distribution().unwrap(), y);
            }
        }
    }
    let k4 = generate(&FamilySpec::Complete(4)).unwrap();
    assert_eq!(independence_polynomial(&k4).coeffs().len(), 2);
}
