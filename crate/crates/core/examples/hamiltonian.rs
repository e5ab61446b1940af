//! Hamiltonian cycles as admissible spanning trees: give one vertex a false
//! twin, mark everything else internal, and a tree exists iff the graph has a
//! Hamiltonian cycle.

use ntst::oracle::{false_twin_ham_instance, has_hamiltonian_cycle, petersen_graph, star_graph};
use ntst::{solve, Algorithm, MultiGraph, SolveOptions};

fn main() -> ntst::Result<()> {
    let graphs = [
        ("C7", MultiGraph::cycle(7)),
        ("K5", MultiGraph::complete(5)),
        ("Petersen", petersen_graph()),
        ("K1,3", star_graph(3)),
    ];
    for (name, g) in graphs {
        let inst = false_twin_ham_instance(&g, 0)?;
        let (matroid, _) = solve(&inst, Algorithm::Matroid, &SolveOptions::default())?;
        let (ie, _) = solve(&inst, Algorithm::InclusionExclusion, &SolveOptions::default())?;
        println!("{name:<9} hamiltonian {:<5} matroid {:<5} ie {}", has_hamiltonian_cycle(&g), matroid.feasible, ie.feasible);
    }
    Ok(())
}
