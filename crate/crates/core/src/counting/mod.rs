//! Exact spanning-tree counting by total weight and the inclusion-exclusion
//! solver built on it.

mod inclusion_exclusion;
mod matchings;
mod matrix_tree;
pub mod modular;

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;

pub use inclusion_exclusion::{count_admissible_trees_by_weight, solve_by_inclusion_exclusion, MAX_IE_NON_TERMINALS};
pub use matchings::{count_constrained_matchings, MatchingCountTable};
pub use matrix_tree::{count_spanning_trees_by_weight, kirchhoff_count};

/// `counts[q]` = number of (admissible) spanning trees of total weight `q`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WeightCountVector {
    counts: Vec<BigUint>,
}

impl WeightCountVector {
    pub fn new(counts: Vec<BigUint>) -> Self {
        WeightCountVector { counts }
    }

    pub fn zeros(len: usize) -> Self {
        WeightCountVector { counts: vec![BigUint::zero(); len] }
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn get(&self, q: usize) -> Option<&BigUint> {
        self.counts.get(q)
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Smallest weight with a non-zero count.
    pub fn min_support(&self) -> Option<usize> {
        self.counts.iter().position(|c| !c.is_zero())
    }

    /// Non-zero entries only.
    pub fn sparse(&self) -> BTreeMap<usize, BigUint> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(q, c)| (q, c.clone()))
            .collect()
    }
}
