mod common;

use std::collections::HashMap;

use mlc_core::analysis::{brute_force_optimum, held_karp};
use mlc_core::candidates::{build_candidate_lists, build_promising_list, CandidateLists};
use mlc_core::construct::{
    ml_constructive, Always, ConstructOptions, DecisionTaker, Empirical, First, Oracle, Prepared, Query, RejectAll,
    Second,
};
use mlc_core::constructors::{clarke_wright, multi_fragment, nearest_neighbor, SavingsTable};
use mlc_core::fragments::Verdict;
use mlc_core::instance::{edge_key, EdgeSet, EdgeWeightType, Instance};
use mlc_core::solve::{Policy, PolicyInputs, SolveOptions, Solver};
use mlc_core::{DistanceMatrix, Metric};
use petgraph::unionfind::UnionFind;
use proptest::prelude::*;

fn triangle() -> Instance {
    Instance::new("tri", EdgeWeightType::Euc2d, vec![[0.0, 0.0], [0.0, 3.0], [4.0, 0.0]]).unwrap()
}

/// Full row sort by (cost, index), truncated to k.
fn brute_force_lists<M: Metric<Cost = f64>>(m: &M, k: usize) -> Vec<Vec<(usize, f64)>> {
    (0..m.len())
        .map(|i| {
            let mut row: Vec<(usize, f64)> = (0..m.len()).filter(|&j| j != i).map(|j| (j, m.cost(i, j))).collect();
            row.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
            row.truncate(k);
            row
        })
        .collect()
}

#[test]
fn candidate_lists_match_a_full_sort() {
    for seed in 0..4 {
        let inst = common::random_instance(50, seed);
        let cls = build_candidate_lists(&inst, 30).unwrap();
        let oracle = brute_force_lists(&inst, 30);
        for (i, want) in oracle.iter().enumerate() {
            assert_eq!(cls[i].neighbors(), &want[..]);
        }
        let grid = common::grid_instance(40, seed);
        let cls = build_candidate_lists(&grid, 10).unwrap();
        for (i, want) in brute_force_lists(&grid, 10).iter().enumerate() {
            assert_eq!(cls[i].neighbors(), &want[..], "tied costs break by index");
        }
    }
}

#[test]
fn first_candidate_is_the_nearest_vertex() {
    let inst = common::random_instance(80, 3);
    let cls = build_candidate_lists(&inst, 5).unwrap();
    for i in 0..inst.n() {
        let nearest = (0..inst.n()).filter(|&j| j != i).map(|j| inst.cost(i, j)).fold(f64::INFINITY, f64::min);
        assert_eq!(cls[i].neighbors()[0].1, nearest);
    }
}

#[test]
fn triangle_candidate_list() {
    let cls = build_candidate_lists(&triangle(), 2).unwrap();
    assert_eq!(cls[0].neighbors(), &[(1, 3.0), (2, 4.0)]);
    let lp = build_promising_list(&cls, 2).unwrap();
    let keys: Vec<_> = lp.entries().iter().map(|e| e.key()).collect();
    assert_eq!(keys.len(), 3);
    assert_eq!(lp.entries().iter().map(|e| e.key()).collect::<EdgeSet>().len(), 3);
}

/// Independent L_P: keep each undirected edge at its smallest (position, owner).
fn brute_force_promising(cls: &CandidateLists<f64>, m: usize) -> Vec<(usize, usize, usize)> {
    let mut best: HashMap<(usize, usize), (usize, usize, usize, f64)> = HashMap::new();
    for i in 0..cls.n() {
        for (p, &(j, c)) in cls[i].neighbors().iter().take(m).enumerate() {
            let cand = (p + 1, i, j, c);
            let slot = best.entry(edge_key(i, j)).or_insert(cand);
            if (cand.0, cand.1) < (slot.0, slot.1) {
                *slot = cand;
            }
        }
    }
    let mut v: Vec<_> = best.into_values().collect();
    v.sort_by(|a, b| a.0.cmp(&b.0).then(a.3.total_cmp(&b.3)).then(edge_key(a.1, a.2).cmp(&edge_key(b.1, b.2))));
    v.into_iter().map(|(p, i, j, _)| (i, j, p)).collect()
}

#[test]
fn promising_list_matches_oracle_and_ordering_predicate() {
    for seed in 0..3 {
        let inst = common::random_instance(200, seed);
        let cls = build_candidate_lists(&inst, 30).unwrap();
        let lp = build_promising_list(&cls, 2).unwrap();
        let got: Vec<_> = lp.entries().iter().map(|e| (e.i, e.j, e.position)).collect();
        assert_eq!(got, brute_force_promising(&cls, 2));
        let first_two = lp.entries().iter().position(|e| e.position == 2).unwrap();
        assert!(lp.entries()[..first_two].iter().all(|e| e.position == 1));
        assert!(lp.entries()[first_two..].iter().all(|e| e.position == 2));
        for w in lp.entries().windows(2) {
            if w[0].position == w[1].position {
                assert!(w[0].cost <= w[1].cost);
            }
        }
        assert!(lp.len() <= 2 * inst.n());
    }
}

#[test]
fn mutual_nearest_edge_appears_once_at_position_one() {
    // 0 and 1 are each other's nearest; 1 is second nearest of 2.
    let inst = Instance::new(
        "m",
        EdgeWeightType::Euc2dReal,
        vec![[0.0, 0.0], [1.0, 0.0], [2.5, 0.0], [9.0, 0.0]],
    )
    .unwrap();
    let cls = build_candidate_lists(&inst, 3).unwrap();
    let lp = build_promising_list(&cls, 2).unwrap();
    let hits: Vec<_> = lp.entries().iter().filter(|e| e.key() == (0, 1)).collect();
    assert_eq!(hits.len(), 1);
    assert_eq!((hits[0].i, hits[0].position), (0, 1));
}

#[test]
fn hub_is_the_total_distance_argmin() {
    for seed in 0..5 {
        let inst = common::grid_instance(30, seed);
        let s = SavingsTable::new(&inst);
        let td: Vec<f64> = (0..inst.n()).map(|i| (0..inst.n()).map(|j| inst.cost(i, j)).sum()).collect();
        let min = td.iter().copied().fold(f64::INFINITY, f64::min);
        assert_eq!(s.hub(), td.iter().position(|&t| t == min).unwrap());
        for i in 0..inst.n() {
            for j in 0..inst.n() {
                if i != j && i != s.hub() && j != s.hub() {
                    assert!(s.saving(&inst, i, j) >= -1.0, "rounded triangle slack");
                }
            }
        }
    }
}

#[test]
fn constructors_never_beat_the_exact_optimum() {
    for seed in 0..30 {
        let inst = common::random_instance(10, seed);
        let opt = held_karp(&inst).unwrap().length();
        assert!((opt - brute_force_optimum(&inst)).abs() < 1e-9);
        let tol = 1e-9 * opt;
        for start in 0..inst.n() {
            assert!(nearest_neighbor(&inst, start).unwrap().length() >= opt - tol);
        }
        assert!(multi_fragment(&inst).unwrap().length() >= opt - tol);
        assert!(clarke_wright(&inst).unwrap().length() >= opt - tol);
    }
}

/// Greedy matching with a union-find cycle test, written against petgraph.
fn greedy_edge_oracle<M: Metric<Cost = f64>>(m: &M) -> EdgeSet {
    let n = m.len();
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((i, j, m.cost(i, j)));
        }
    }
    edges.sort_by(|a, b| a.2.total_cmp(&b.2).then((a.0, a.1).cmp(&(b.0, b.1))));
    let mut uf = UnionFind::<usize>::new(n);
    let mut degree = vec![0; n];
    let mut out = EdgeSet::new();
    for (i, j, _) in edges {
        if out.len() == n {
            break;
        }
        if degree[i] == 2 || degree[j] == 2 {
            continue;
        }
        let closes = uf.find(i) == uf.find(j);
        if closes && out.len() + 1 < n {
            continue;
        }
        uf.union(i, j);
        degree[i] += 1;
        degree[j] += 1;
        out.insert(i, j);
    }
    out
}

#[test]
fn multi_fragment_matches_a_union_find_greedy() {
    for seed in 0..20 {
        let inst = common::grid_instance(25, seed);
        assert_eq!(multi_fragment(&inst).unwrap().edge_set(), greedy_edge_oracle(&inst));
        let inst = common::random_instance(60, seed);
        assert_eq!(multi_fragment(&inst).unwrap().edge_set(), greedy_edge_oracle(&inst));
    }
}

#[test]
fn multi_fragment_is_optimal_when_the_cheapest_edges_form_the_optimum() {
    // Points on a circle: the n shortest edges are the hull, which is optimal.
    let n = 9;
    let coords = (0..n)
        .map(|t| {
            let a = t as f64 * std::f64::consts::TAU / n as f64;
            [a.cos(), a.sin()]
        })
        .collect();
    let inst = Instance::new("circle", EdgeWeightType::Euc2dReal, coords).unwrap();
    let opt = held_karp(&inst).unwrap().length();
    assert!((multi_fragment(&inst).unwrap().length() - opt).abs() < 1e-9);
}

#[test]
fn nearest_neighbor_matches_a_direct_simulation() {
    let inst = common::grid_instance(30, 9);
    let mut seen = vec![false; inst.n()];
    let mut cur = 4;
    let mut order = vec![cur];
    seen[cur] = true;
    while order.len() < inst.n() {
        let next = (0..inst.n())
            .filter(|&v| !seen[v])
            .min_by(|&a, &b| inst.cost(cur, a).total_cmp(&inst.cost(cur, b)).then(a.cmp(&b)))
            .unwrap();
        seen[next] = true;
        order.push(next);
        cur = next;
    }
    assert_eq!(nearest_neighbor(&inst, 4).unwrap().order(), &order[..]);
}

#[test]
fn reject_all_reproduces_clarke_wright() {
    for seed in 0..10 {
        let inst = common::grid_instance(40, seed);
        let c = ml_constructive(&inst, RejectAll, &ConstructOptions::default()).unwrap();
        assert_eq!(c.tour.order(), clarke_wright(&inst).unwrap().order());
        assert_eq!(c.trace.phase_one_accepted, 0);
    }
}

/// Phase one replayed with a union-find, accepting every feasible entry.
#[test]
fn always_phase_one_matches_an_independent_replay() {
    for seed in 0..10 {
        let inst = common::random_instance(70, seed);
        let opts = ConstructOptions::default();
        let prep = Prepared::new(&inst, &opts).unwrap();
        let c = prep.run(&inst, Always).unwrap();
        let n = inst.n();
        let mut uf = UnionFind::<usize>::new(n);
        let mut degree = vec![0; n];
        let mut want = Vec::new();
        for e in prep.promising.entries() {
            if degree[e.i] == 2 || degree[e.j] == 2 {
                continue;
            }
            if uf.find(e.i) == uf.find(e.j) && want.len() + 1 < n {
                continue;
            }
            uf.union(e.i, e.j);
            degree[e.i] += 1;
            degree[e.j] += 1;
            want.push((e.i, e.j));
        }
        let got: Vec<_> = c.trace.records.iter().filter(|r| r.accepted()).map(|r| (r.i, r.j)).collect();
        assert_eq!(got, want);
        let tour_edges = c.tour.edge_set();
        assert!(got.iter().all(|&(i, j)| tour_edges.contains(i, j)));
    }
}

#[test]
fn trace_asks_the_policy_only_about_feasible_edges() {
    struct Count(usize);
    impl DecisionTaker<f64> for Count {
        fn decide(&mut self, q: &Query<'_, f64>) -> mlc_core::Result<bool> {
            assert_eq!(q.partial.check(q.entry.i, q.entry.j).unwrap(), Verdict::Ok);
            self.0 += 1;
            Ok(q.index % 3 == 0)
        }
    }
    let inst = common::random_instance(90, 5);
    let mut dt = Count(0);
    let c = ml_constructive(&inst, &mut dt, &ConstructOptions::default()).unwrap();
    let asked = c.trace.records.iter().filter(|r| r.decision.is_some()).count();
    assert_eq!(asked, dt.0);
    for r in &c.trace.records {
        assert_eq!(r.decision.is_some(), r.verdict == Verdict::Ok);
    }
    assert_eq!(c.trace.phase_one_accepted + c.trace.phase_two.len(), inst.n());
}

#[test]
fn rule_policies_accept_only_their_position() {
    let inst = common::random_instance(120, 2);
    let opts = ConstructOptions::default();
    let f = ml_constructive(&inst, First, &opts).unwrap();
    let s = ml_constructive(&inst, Second, &opts).unwrap();
    assert!(f.trace.records.iter().filter(|r| r.accepted()).all(|r| r.position == 1));
    assert!(s.trace.records.iter().filter(|r| r.accepted()).all(|r| r.position == 2));
    assert!(f.trace.records.iter().filter(|r| r.decision == Some(false)).all(|r| r.position == 2));
}

#[test]
fn empirical_is_seeded_and_degenerates_to_always() {
    let inst = common::random_instance(100, 8);
    let prep = Prepared::new(&inst, &ConstructOptions::default()).unwrap();
    let a = prep.run(&inst, Empirical::new(11)).unwrap();
    let b = prep.run(&inst, Empirical::new(11)).unwrap();
    assert_eq!(a.tour.order(), b.tour.order());
    let distinct = (0..10)
        .map(|s| prep.run(&inst, Empirical::new(s)).unwrap().tour.order().to_vec())
        .collect::<std::collections::HashSet<_>>();
    assert!(distinct.len() > 1);
    let ones = prep.run(&inst, Empirical::with_probabilities(1.0, 1.0, 3)).unwrap();
    let always = prep.run(&inst, Always).unwrap();
    assert_eq!(ones.tour.order(), always.tour.order());
    let zeros = prep.run(&inst, Empirical::with_probabilities(0.0, 0.0, 3)).unwrap();
    assert_eq!(zeros.tour.order(), clarke_wright(&inst).unwrap().order());
}

#[test]
fn oracle_accepts_only_optimal_edges() {
    for seed in 0..20 {
        let inst = common::random_instance(12, seed);
        let opt = held_karp(&inst).unwrap();
        let edges = opt.edge_set();
        let c = ml_constructive(&inst, Oracle::new(edges.clone()), &ConstructOptions::default()).unwrap();
        for r in c.trace.records.iter().filter(|r| r.accepted()) {
            assert!(edges.contains(r.i, r.j));
        }
        assert!(c.tour.length() >= opt.length() - 1e-9);
    }
}

#[test]
fn phase_one_can_close_the_tour() {
    let c = ml_constructive(&triangle(), Always, &ConstructOptions::default()).unwrap();
    assert_eq!(c.trace.phase_one_accepted, 3);
    assert!(c.trace.phase_two.is_empty());
    assert_eq!(c.tour.length(), 12.0);
}

#[test]
fn options_are_validated() {
    let inst = common::random_instance(10, 1);
    let bad = ConstructOptions {
        k: 3,
        m: 4,
        ..ConstructOptions::default()
    };
    assert!(ml_constructive(&inst, Always, &bad).is_err());
    let clamped = ConstructOptions {
        k: 100,
        m: 2,
        ..ConstructOptions::default()
    };
    let c = ml_constructive(&inst, Always, &clamped).unwrap();
    assert_eq!(c.tour.len(), 10);
}

#[test]
fn solver_runs_every_policy_and_reports_missing_inputs() {
    let inst = common::random_instance(30, 4);
    let solver = Solver::new(&inst, SolveOptions::default()).unwrap();
    for p in Policy::ALL {
        let out = solver.solve(p, PolicyInputs::default());
        match p {
            Policy::SuperConfident => assert!(matches!(out, Err(mlc_core::Error::MissingOptimalTour))),
            Policy::ModelConfident => assert!(matches!(out, Err(mlc_core::Error::MissingWeights))),
            _ => assert_eq!(out.unwrap().tour.len(), 30),
        }
    }
    let ae = solver.solve(Policy::AverageEmpirical, PolicyInputs::default()).unwrap();
    let be = solver.solve(Policy::BestEmpirical, PolicyInputs::default()).unwrap();
    assert_eq!(ae.run_lengths, be.run_lengths);
    assert_eq!(ae.run_lengths.len(), 20);
    let min = be.run_lengths.iter().copied().fold(f64::INFINITY, f64::min);
    assert_eq!(be.tour.length(), min);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_policy_yields_a_hamiltonian_cycle(n in 3usize..60, seed in 0u64..10_000, grid in any::<bool>()) {
        let inst = if grid { common::grid_instance(n, seed) } else { common::random_instance(n, seed) };
        let solver = Solver::new(&inst, SolveOptions::default()).unwrap();
        for p in [Policy::Mf, Policy::Cw, Policy::Nn, Policy::First, Policy::Second, Policy::Always, Policy::BestEmpirical] {
            let t = solver.solve(p, PolicyInputs::default()).unwrap().tour;
            let mut seen = t.order().to_vec();
            seen.sort_unstable();
            prop_assert_eq!(seen, (0..n).collect::<Vec<_>>());
            prop_assert_eq!(t.edge_set().len(), if n == 3 { 3 } else { n });
        }
    }

    #[test]
    fn integer_matrices_run_generically(n in 4usize..25, seed in 0u64..1000) {
        let m = DistanceMatrix::from_fn(n, |i, j| ((i * 7919 + j * 104_729 + seed as usize * 31) % 97 + 1) as i64);
        let m = DistanceMatrix::from_fn(n, |i, j| m.cost(i.min(j), i.max(j)));
        let c = ml_constructive(&m, Always, &ConstructOptions::default()).unwrap();
        prop_assert_eq!(c.tour.len(), n);
        if n <= 10 {
            prop_assert!(c.tour.length() >= held_karp(&m).unwrap().length());
        }
    }
}
