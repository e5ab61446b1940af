use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::graph::{MultiGraph, Vertex};

/// `table[i][j]`: ways to pick, for each of the first `i` vertices of X, one
/// edge into `V \ X` so that the picked weights sum to `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingCountTable {
    table: Vec<Vec<BigUint>>,
}

impl MatchingCountTable {
    pub fn get(&self, i: usize, j: usize) -> &BigUint {
        &self.table[i][j]
    }

    pub fn rows(&self) -> usize {
        self.table.len()
    }

    /// The row for all of X.
    pub fn last_row(&self) -> &[BigUint] {
        self.table.last().expect("table has the base row")
    }
}

pub fn count_constrained_matchings(g: &MultiGraph, x: &[Vertex], weights: &[u64], max_total: usize) -> MatchingCountTable {
    let mut in_x = vec![false; g.n()];
    for &v in x {
        in_x[v] = true;
    }
    let mut base = vec![BigUint::zero(); max_total + 1];
    base[0] = BigUint::one();
    let mut table = vec![base];
    for &xi in x {
        let prev = table.last().expect("non-empty");
        let mut row = vec![BigUint::zero(); max_total + 1];
        for &(w, e) in g.neighbors(xi) {
            if in_x[w] {
                continue;
            }
            let shift = weights[e] as usize;
            for j in shift..=max_total {
                if !prev[j - shift].is_zero() {
                    row[j] += &prev[j - shift];
                }
            }
        }
        table.push(row);
    }
    MatchingCountTable { table }
}
