use proptest::prelude::*;

use ntst::counting::{count_admissible_trees_by_weight, kirchhoff_count, solve_by_inclusion_exclusion};
use ntst::format::{parse_instance, render_instance};
use ntst::graph::is_admissible_spanning_tree;
use ntst::kernel::{kernelize, lift_solution, replay, KernelRule, Verdict};
use ntst::matroid::solve_by_matroid_intersection;
use ntst::oracle::{brute_force_solve, count_spanning_trees_by_enumeration, random_instance, WeightMode};
use ntst::{solve, Algorithm, Instance, SolveOptions};

fn mode() -> impl Strategy<Value = WeightMode> {
    prop_oneof![
        Just(WeightMode::Unit),
        (1u64..6).prop_map(|max| WeightMode::Integer { max }),
        (1u64..8, 1u64..5).prop_map(|(max_num, max_den)| WeightMode::Rational { max_num, max_den }),
    ]
}

fn instance(max_n: usize, mode: impl Strategy<Value = WeightMode>) -> impl Strategy<Value = Instance> {
    (any::<u64>(), 2..=max_n, 0.2f64..0.8, 0usize..8, mode)
        .prop_map(|(seed, n, p, k, mode)| random_instance(seed, n, p, k % (n - 1), mode).expect("generator"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn matroid_matches_oracle(inst in instance(8, mode())) {
        let fast = solve_by_matroid_intersection(&inst, &SolveOptions::default()).unwrap();
        let oracle = brute_force_solve(&inst).unwrap();
        prop_assert_eq!(fast.feasible, oracle.feasible);
        prop_assert_eq!(&fast.weight, &oracle.opt_weight);
        if let Some(tree) = &fast.tree {
            prop_assert!(is_admissible_spanning_tree(&inst, tree).unwrap());
            prop_assert_eq!(Some(inst.total_weight(tree)), fast.weight);
        }
    }

    #[test]
    fn ie_matches_oracle(inst in instance(7, (1u64..5).prop_map(|max| WeightMode::Integer { max }))) {
        let ie = solve_by_inclusion_exclusion(&inst, &SolveOptions::default()).unwrap();
        let oracle = brute_force_solve(&inst).unwrap();
        prop_assert_eq!(ie.counts.as_ref().map(|c| c.sparse()), oracle.histogram.as_ref().map(|h| h.sparse()));
        prop_assert_eq!(&ie.weight, &oracle.opt_weight);
        if let Some(tree) = &ie.tree {
            prop_assert!(is_admissible_spanning_tree(&inst, tree).unwrap());
        }
    }

    #[test]
    fn counts_sum_to_admissible_total(inst in instance(7, Just(WeightMode::Unit))) {
        let total = count_admissible_trees_by_weight(&inst, None).unwrap().total();
        let all = kirchhoff_count(inst.graph());
        prop_assert!(total <= all);
        if inst.nt_count() == 0 {
            prop_assert_eq!(all, count_spanning_trees_by_enumeration(inst.graph()).into());
        }
    }

    #[test]
    fn kernels_preserve_answers(inst in instance(9, Just(WeightMode::Unit)), rule in prop_oneof![Just(KernelRule::K), Just(KernelRule::Vc), Just(KernelRule::Ml)]) {
        let expected = brute_force_solve(&inst).unwrap().feasible;
        let res = kernelize(&inst, rule).unwrap();
        let replayed = replay(&inst, &res.trace).unwrap();
        prop_assert_eq!(&replayed.last().unwrap().instance, &res.kernel);
        let kernel = (res.verdict != Verdict::Infeasible).then(|| brute_force_solve(&res.kernel).unwrap());
        prop_assert_eq!(kernel.as_ref().is_some_and(|o| o.feasible), expected);
        if let Some(tree) = kernel.and_then(|o| o.witness) {
            let lifted = lift_solution(&inst, &res.trace, &tree).unwrap();
            prop_assert!(is_admissible_spanning_tree(&inst, &lifted).unwrap());
        }
    }

    #[test]
    fn format_round_trips(inst in instance(12, mode())) {
        prop_assert_eq!(parse_instance(&render_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn threads_do_not_change_answers(inst in instance(8, (1u64..4).prop_map(|max| WeightMode::Integer { max }))) {
        for algorithm in [Algorithm::Matroid, Algorithm::InclusionExclusion] {
            let one = solve(&inst, algorithm, &SolveOptions { threads: 1, witness: false, max_weight: None }).unwrap().0;
            let four = solve(&inst, algorithm, &SolveOptions { threads: 4, witness: false, max_weight: None }).unwrap().0;
            prop_assert_eq!(one, four);
        }
    }
}
