//! Shrinks an instance with each kernel, solves the kernel and lifts the
//! tree back to the original graph.

use ntst::graph::is_admissible_spanning_tree;
use ntst::kernel::{kernelize, lift_solution, KernelRule, Verdict};
use ntst::oracle::star_graph;
use ntst::{solve, Algorithm, Instance, SolveOptions};

fn main() -> ntst::Result<()> {
    // hub 0 with 12 leaves, plus a short path hanging off leaf 1
    let mut edges: Vec<_> = star_graph(12).edges().to_vec();
    edges.extend([(1, 13), (13, 14)]);
    let inst = Instance::unweighted(ntst::MultiGraph::new(15, edges)?, [0, 1])?;

    for rule in [KernelRule::K, KernelRule::Vc, KernelRule::Ml] {
        let res = kernelize(&inst, rule)?;
        print!("{rule:?}: {:?}, {} -> {} vertices, {} steps", res.verdict, inst.n(), res.kernel.n(), res.trace.steps.len());
        if res.verdict == Verdict::Infeasible {
            println!();
            continue;
        }
        let (solved, _) = solve(&res.kernel, Algorithm::Matroid, &SolveOptions::default())?;
        match solved.tree {
            Some(tree) => {
                let lifted = lift_solution(&inst, &res.trace, &tree)?;
                println!(", lifted tree admissible: {}", is_admissible_spanning_tree(&inst, &lifted)?);
            }
            None => println!(", kernel infeasible"),
        }
    }
    Ok(())
}
