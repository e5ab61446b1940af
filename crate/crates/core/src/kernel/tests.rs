use super::*;
use crate::graph::{is_admissible_spanning_tree, EdgeSet};
use crate::oracle::{brute_force_solve, random_instance, star_graph, WeightMode};

fn answer(inst: &Instance) -> bool {
    brute_force_solve(inst).unwrap().feasible
}

fn kernel_answer(res: &KernelResult) -> bool {
    res.verdict != Verdict::Infeasible && answer(&res.kernel)
}

fn check_lift(original: &Instance, res: &KernelResult) {
    if let Some(tree) = brute_force_solve(&res.kernel).unwrap().witness.filter(|_| res.verdict != Verdict::Infeasible) {
        let lifted = lift_solution(original, &res.trace, &tree).unwrap();
        assert!(is_admissible_spanning_tree(original, &lifted).unwrap());
    }
}

#[test]
fn closed_neighborhood_on_p5() {
    let inst = Instance::unweighted(MultiGraph::path(5), [2]).unwrap();
    let (kernel, trace) = closed_neighborhood_reduce(&inst).unwrap();
    assert_eq!(kernel.n(), 4);
    assert_eq!(kernel.nt_vertices(), vec![1]);
    // kept 1,2,3 renumbered to 0,1,2; root 3 joined to 0 and 2
    let root_edges: Vec<_> = kernel.graph().neighbors(3).iter().map(|&(u, _)| u).collect();
    assert_eq!(root_edges, vec![0, 2]);
    assert_eq!(replay(&inst, &trace).unwrap().last().unwrap().instance, kernel);
}

#[test]
fn closed_neighborhood_of_a_star_keeps_everything() {
    let inst = Instance::unweighted(star_graph(4), [0]).unwrap();
    let (kernel, _) = closed_neighborhood_reduce(&inst).unwrap();
    assert_eq!(kernel.n(), 6);
    assert_eq!(kernel.graph().degree(5), 4);
}

#[test]
fn closed_neighborhood_without_nt_is_a_single_vertex() {
    let inst = Instance::unweighted(MultiGraph::cycle(5), []).unwrap();
    let (kernel, trace) = closed_neighborhood_reduce(&inst).unwrap();
    assert_eq!(kernel.n(), 1);
    let lifted = lift_solution(&inst, &trace, &EdgeSet::new()).unwrap();
    assert!(is_admissible_spanning_tree(&inst, &lifted).unwrap());
}

#[test]
fn closed_neighborhood_rejects_disconnected_input() {
    let inst = Instance::unweighted(MultiGraph::empty(2), []).unwrap();
    assert_eq!(closed_neighborhood_reduce(&inst).unwrap_err(), Error::Disconnected);
}

#[test]
fn k_kernel_on_a_big_star() {
    let inst = Instance::unweighted(star_graph(10), [0]).unwrap();
    let res = kernelize_k(&inst).unwrap();
    assert_eq!(res.verdict, Verdict::Reduced);
    assert_eq!(res.kernel.nt_count(), 0);
    assert!(res.kernel.n() <= 3);
    let lifted = lift_solution(&inst, &res.trace, &EdgeSet::new()).unwrap();
    assert_eq!(lifted, (0..10).collect());
}

#[test]
fn k_kernel_small_instance_is_unchanged() {
    let inst = Instance::unweighted(MultiGraph::cycle(5), [0, 1]).unwrap();
    let res = kernelize_k(&inst).unwrap();
    assert_eq!(res.verdict, Verdict::Unchanged);
    assert!(res.kernel.n() <= 6);
    assert_eq!(kernel_answer(&res), answer(&inst));
}

#[test]
fn k_kernel_all_nt_cycle() {
    let inst = Instance::unweighted(MultiGraph::cycle(4), 0..4).unwrap();
    assert_eq!(kernelize_k(&inst).unwrap().verdict, Verdict::Infeasible);
}

#[test]
fn vc_kernel_examples() {
    let star = Instance::unweighted(star_graph(4), [0]).unwrap();
    let res = kernelize_vc(&star).unwrap();
    assert!(kernel_answer(&res));
    check_lift(&star, &res);

    // K_{2,5} with all five degree-2 vertices non-terminal
    let edges: Vec<_> = (0..2).flat_map(|a| (2..7).map(move |b| (a, b))).collect();
    let k25 = Instance::unweighted(MultiGraph::new(7, edges).unwrap(), 2..7).unwrap();
    let res = kernelize_vc(&k25).unwrap();
    assert_eq!(res.verdict, Verdict::Infeasible);
    assert!(!answer(&k25));

    let plain = Instance::unweighted(MultiGraph::cycle(6), []).unwrap();
    let res = kernelize_vc(&plain).unwrap();
    let (s, _) = res.cover_size.unwrap();
    assert!(res.kernel.n() <= 4 * s + 2);
    assert!(kernel_answer(&res));
}

#[test]
fn ml_kernel_p3() {
    let inst = Instance::unweighted(MultiGraph::path(3), [1]).unwrap();
    let res = kernelize_ml(&inst).unwrap();
    assert_eq!(res.kernel.n(), 1);
    assert_eq!(res.kernel.nt_count(), 0);
    let lifted = lift_solution(&inst, &res.trace, &EdgeSet::new()).unwrap();
    assert_eq!(lifted, EdgeSet::from([0, 1]));
}

#[test]
fn ml_kernel_alternating_c6() {
    let inst = Instance::unweighted(MultiGraph::cycle(6), [0, 2, 4]).unwrap();
    let res = kernelize_ml(&inst).unwrap();
    assert!(!answer(&inst));
    assert_eq!(kernel_answer(&res), false);
}

#[test]
fn ml_kernel_subdivided_k4() {
    // every edge of K4 subdivided three times
    let mut edges = Vec::new();
    let mut next = 4;
    for (u, v) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
        let chain = [u, next, next + 1, next + 2, v];
        next += 3;
        edges.extend(chain.windows(2).map(|w| (w[0], w[1])));
    }
    let inst = Instance::unweighted(MultiGraph::new(next, edges).unwrap(), [4, 6, 7, 9]).unwrap();
    let res = kernelize_ml(&inst).unwrap();
    if res.verdict != Verdict::Infeasible {
        assert!(!has_reducible_degree_pattern(&res.kernel));
        assert!(res.kernel.n() <= 4 + 6 * 3);
    }
}

#[test]
fn random_instances_preserve_answers() {
    for seed in 0..150u64 {
        let n = 3 + (seed % 8) as usize;
        let k = (seed as usize / 8) % (n - 1);
        let inst = random_instance(seed, n, 0.35, k, WeightMode::Unit).unwrap();
        let expected = answer(&inst);
        for rule in [KernelRule::K, KernelRule::Vc, KernelRule::Ml] {
            let res = kernelize(&inst, rule).unwrap();
            assert_eq!(kernel_answer(&res), expected, "seed {seed} rule {rule:?}");
            let replayed = replay(&inst, &res.trace).unwrap();
            assert_eq!(replayed.last().unwrap().instance, res.kernel);
            check_lift(&inst, &res);
            if res.verdict == Verdict::Infeasible {
                continue;
            }
            match rule {
                KernelRule::K => assert!(res.kernel.n() <= (3 * inst.nt_count()).max(3)),
                KernelRule::Vc => assert!(res.kernel.n() <= 4 * res.cover_size.unwrap().0 + 2),
                KernelRule::Ml => assert!(!has_reducible_degree_pattern(&res.kernel)),
            }
        }
    }
}

#[test]
fn trace_serializes() {
    let inst = Instance::unweighted(star_graph(10), [0]).unwrap();
    let res = kernelize_k(&inst).unwrap();
    let json = serde_json::to_string(&res.trace).unwrap();
    assert!(json.contains("\"kind\":\"expansion\""));
    let back: ReductionTrace = serde_json::from_str(&json).unwrap();
    assert_eq!(back, res.trace);
}
