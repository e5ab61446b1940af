//! Minimum-weight common base of a graphic matroid and a partition matroid
//! with lower and upper bounds per block.

use ntst::matroid::{min_weight_common_base, GraphicMatroid, PartitionMatroid};
use ntst::{MultiGraph, Weight};

fn main() -> ntst::Result<()> {
    // C4 with a chord; edges 0..4 around the cycle, 4 is the chord 0-2
    let g = MultiGraph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])?;
    let weights: Vec<Weight> = [1, 1, 1, 1, 0].map(Weight::from_integer).to_vec();

    // at least one chord, at most one cycle edge on each side of it
    let blocks = vec![vec![0, 1], vec![2, 3], vec![4]];
    let pm = PartitionMatroid::new(5, blocks, vec![0, 0, 1], vec![1, 1, 1], 3)?;
    let res = min_weight_common_base(&GraphicMatroid::new(g.clone()), &pm, &weights)?;
    println!("feasible {} weight {} base {:?}", res.feasible, res.weight, res.base);

    let pm = PartitionMatroid::new(5, vec![vec![0, 1, 2, 3], vec![4]], vec![3, 0], vec![3, 0], 3)?;
    let res = min_weight_common_base(&GraphicMatroid::new(g), &pm, &weights)?;
    println!("no chord: feasible {} weight {} base {:?}", res.feasible, res.weight, res.base);
    Ok(())
}
