//! Random instances solved by every applicable method; any disagreement is
//! shrunk to a small reproducer.

use ntst::cli::minimize_reproducer;
use ntst::format::render_instance;
use ntst::oracle::{random_instance, WeightMode};
use ntst::{solve, Algorithm, Instance, SolveOptions};

fn answers(inst: &Instance) -> Vec<(bool, Option<ntst::Weight>)> {
    let mut algorithms = vec![Algorithm::Matroid, Algorithm::Brute];
    if inst.integer_weights().is_some_and(|w| w.iter().all(|&x| x > 0)) {
        algorithms.push(Algorithm::InclusionExclusion);
    }
    algorithms
        .into_iter()
        .map(|a| solve(inst, a, &SolveOptions::default()).map(|(r, _)| (r.feasible, r.weight)).expect("solver"))
        .collect()
}

fn disagree(inst: &Instance) -> bool {
    let all = answers(inst);
    all.iter().any(|a| *a != all[0])
}

fn main() -> ntst::Result<()> {
    let seeds = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200u64);
    let mut feasible = 0;
    for seed in 0..seeds {
        let mode = match seed % 3 {
            0 => WeightMode::Unit,
            1 => WeightMode::Integer { max: 5 },
            _ => WeightMode::Rational { max_num: 9, max_den: 4 },
        };
        let n = 4 + (seed % 6) as usize;
        let inst = random_instance(seed, n, 0.45, (seed as usize) % (n - 1), mode)?;
        if disagree(&inst) {
            let small = minimize_reproducer(&inst, disagree);
            println!("seed {seed} disagrees; reproducer:\n{}", render_instance(&small));
            std::process::exit(3);
        }
        feasible += answers(&inst)[0].0 as usize;
    }
    println!("{seeds} instances, {feasible} feasible, all methods agree");
    Ok(())
}
