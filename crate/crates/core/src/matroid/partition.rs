use crate::error::{Error, Result};
use crate::flow::BoundedNetwork;

/// Matroid whose bases are the size-`rank` subsets `B` of a partitioned ground
/// set with `lower[i] <= |B ∩ U_i| <= upper[i]` for every block `U_i`.
/// Independent sets are the subsets of bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionMatroid {
    block_of: Vec<usize>,
    blocks: Vec<Vec<usize>>,
    lower: Vec<usize>,
    upper: Vec<usize>,
    rank: usize,
}

impl PartitionMatroid {
    /// Fails with [`Error::EmptyBaseFamily`] when no set satisfies the bounds.
    pub fn new(ground_size: usize, blocks: Vec<Vec<usize>>, lower: Vec<usize>, upper: Vec<usize>, rank: usize) -> Result<Self> {
        if lower.len() != blocks.len() || upper.len() != blocks.len() {
            return Err(Error::Precondition("one lower and upper bound per block".into()));
        }
        let mut block_of = vec![usize::MAX; ground_size];
        for (i, block) in blocks.iter().enumerate() {
            for &e in block {
                if e >= ground_size {
                    return Err(Error::Precondition(format!("element {e} outside ground set of size {ground_size}")));
                }
                if block_of[e] != usize::MAX {
                    return Err(Error::Precondition(format!("element {e} appears in two blocks")));
                }
                block_of[e] = i;
            }
        }
        if let Some(e) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::Precondition(format!("element {e} is in no block")));
        }
        if let Some(i) = (0..blocks.len()).find(|&i| lower[i] > upper[i]) {
            return Err(Error::Precondition(format!("block {i} has lower bound above upper bound")));
        }
        let pm = PartitionMatroid { block_of, blocks, lower, upper, rank };
        if !pm.extension_feasible(&[])? {
            let need: usize = pm.lower.iter().sum();
            return Err(Error::EmptyBaseFamily(format!(
                "rank {} with lower bounds summing to {need} and capacity {}",
                pm.rank,
                pm.capacity()
            )));
        }
        Ok(pm)
    }

    pub fn ground_size(&self) -> usize {
        self.block_of.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, e: usize) -> usize {
        self.block_of[e]
    }

    pub fn lower(&self, block: usize) -> usize {
        self.lower[block]
    }

    /// Effective upper bound: the stated bound capped by the block size.
    pub fn cap(&self, block: usize) -> usize {
        self.upper[block].min(self.blocks[block].len())
    }

    fn capacity(&self) -> usize {
        (0..self.blocks.len()).map(|i| self.cap(i)).sum()
    }

    fn block_counts(&self, subset: &[usize]) -> Result<Vec<usize>> {
        let mut seen = vec![false; self.ground_size()];
        let mut counts = vec![0; self.blocks.len()];
        for &e in subset {
            if e >= self.ground_size() {
                return Err(Error::Precondition(format!("element {e} outside ground set")));
            }
            if std::mem::replace(&mut seen[e], true) {
                continue;
            }
            counts[self.block_of[e]] += 1;
        }
        Ok(counts)
    }

    /// Whether `subset` extends to a base. Each block must absorb between
    /// `max(lower - c, 0)` and `cap - c` further elements, and the total must
    /// reach exactly `rank - |subset|`.
    pub fn extension_feasible(&self, subset: &[usize]) -> Result<bool> {
        let counts = self.block_counts(subset)?;
        let size: usize = counts.iter().sum();
        if size > self.rank {
            return Ok(false);
        }
        let remaining = self.rank - size;
        let (mut need, mut room) = (0, 0);
        for (i, &c) in counts.iter().enumerate() {
            let cap = self.cap(i);
            if c > cap || self.lower[i] > cap {
                return Ok(false);
            }
            need += self.lower[i].saturating_sub(c);
            room += cap - c;
        }
        Ok(need <= remaining && remaining <= room)
    }

    /// The same question answered as a degree-constrained subgraph problem:
    /// blocks on one side, unused elements on the other, each block taking
    /// between `lower - c` and `upper - c` new elements, `rank - |subset|` in total.
    pub fn extension_feasible_by_flow(&self, subset: &[usize]) -> Result<bool> {
        let counts = self.block_counts(subset)?;
        let size: usize = counts.iter().sum();
        if size > self.rank {
            return Ok(false);
        }
        let mut chosen = vec![false; self.ground_size()];
        for &e in subset {
            chosen[e] = true;
        }
        let t = self.blocks.len();
        let free: Vec<usize> = (0..self.ground_size()).filter(|&e| !chosen[e]).collect();
        let (source, sink) = (t + free.len(), t + free.len() + 1);
        let mut net = BoundedNetwork::new(t + free.len() + 2);
        for i in 0..t {
            let lo = self.lower[i] as i64 - counts[i] as i64;
            let hi = self.upper[i] as i64 - counts[i] as i64;
            if hi < 0 {
                return Ok(false);
            }
            net.add_arc(source, i, lo.max(0), hi);
        }
        for (j, &e) in free.iter().enumerate() {
            net.add_arc(self.block_of[e], t + j, 0, 1);
            net.add_arc(t + j, sink, 0, 1);
        }
        let target = (self.rank - size) as i64;
        net.add_arc(sink, source, target, target);
        Ok(net.has_feasible_circulation())
    }

    pub fn is_base(&self, set: &[usize]) -> Result<bool> {
        let counts = self.block_counts(set)?;
        Ok(counts.iter().sum::<usize>() == self.rank && self.extension_feasible(set)?)
    }
}
