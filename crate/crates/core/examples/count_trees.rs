//! Histogram of admissible spanning trees by total weight.

use ntst::counting::{count_admissible_trees_by_weight, kirchhoff_count};
use ntst::{Instance, MultiGraph};

fn main() -> ntst::Result<()> {
    let k4 = MultiGraph::complete(4);
    println!("spanning trees of K4: {}", kirchhoff_count(&k4));

    let one_nt = Instance::unweighted(k4.clone(), [0])?;
    for (q, c) in count_admissible_trees_by_weight(&one_nt, None)?.sparse() {
        println!("K4, vertex 1 internal: {c} trees of weight {q}");
    }

    let edges: Vec<_> = k4.edges().iter().enumerate().map(|(e, &(u, v))| (u, v, ntst::Weight::from_integer(1 + e as u64 % 3))).collect();
    let weighted = Instance::from_weighted_edges(4, &edges, [0, 1])?;
    println!("weighted K4, vertices 1 and 2 internal:");
    for (q, c) in count_admissible_trees_by_weight(&weighted, None)?.sparse() {
        println!("  weight {q}: {c}");
    }
    Ok(())
}
