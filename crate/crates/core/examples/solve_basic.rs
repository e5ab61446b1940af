//! Minimum-weight admissible spanning tree of a small weighted graph, solved
//! by every exact method.

use ntst::format::{parse_instance, render_tree};
use ntst::{solve, Algorithm, SolveOptions};

const HOUSE: &str = "\
c a square with a roof; the apex and one corner must be internal
p ntst 5 6
e 1 2 1
e 2 3 2
e 3 4 1
e 4 1 3
e 1 5 1/2
e 2 5 5/2
nt 5
nt 3
";

fn main() -> ntst::Result<()> {
    let inst = parse_instance(HOUSE)?;
    for algorithm in [Algorithm::Matroid, Algorithm::Brute, Algorithm::Auto] {
        let (result, used) = solve(&inst, algorithm, &SolveOptions::default())?;
        println!("{:<8} weight {}", used.name(), result.weight.as_ref().map_or("none".into(), |w| w.to_string()));
        if let Some(tree) = &result.tree {
            print!("{}", render_tree(&inst, tree));
        }
    }
    Ok(())
}
