//! Spanning-tree counting: the plain matrix-tree theorem over the integers
//! and its weight-graded version.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::counting::modular::{crt_symmetric, primes_for_bound, Field};
use crate::counting::WeightCountVector;
use crate::error::{Error, Result};
use crate::graph::MultiGraph;

/// Number of spanning trees via a fraction-free (Bareiss) determinant of a
/// Laplacian minor.
pub fn kirchhoff_count(g: &MultiGraph) -> BigUint {
    let n = g.n();
    if n <= 1 {
        return BigUint::one();
    }
    let size = n - 1;
    let mut a = vec![vec![BigInt::zero(); size]; size];
    for &(u, v) in g.edges() {
        for (x, y) in [(u, v), (v, u)] {
            if x < size {
                a[x][x] += 1;
                if y < size {
                    a[x][y] -= 1;
                }
            }
        }
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..size {
        if a[k][k].is_zero() {
            match (k + 1..size).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigUint::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = sign * &a[size - 1][size - 1];
    debug_assert!(!det.is_negative());
    det.to_biguint().unwrap_or_default()
}

/// Upper bound on the number of spanning trees of the subgraph induced by `keep`:
/// rooting every tree at a fixed vertex, each other vertex picks its parent edge.
pub(crate) fn tree_count_bound(g: &MultiGraph, keep: &[bool]) -> BigUint {
    let degrees: Vec<usize> = (0..g.n())
        .filter(|&v| keep[v])
        .map(|v| g.neighbors(v).iter().filter(|&&(w, _)| keep[w]).count())
        .collect();
    let root = degrees.iter().enumerate().max_by_key(|&(_, d)| *d).map(|(i, _)| i);
    degrees
        .iter()
        .enumerate()
        .filter(|&(i, _)| Some(i) != root)
        .fold(BigUint::one(), |acc, (_, &d)| acc * d.max(1))
}

/// Weight-graded tree counts of `G[keep]` modulo the field prime, in Montgomery
/// form: entry `q` counts spanning trees of total weight `q`. Returns `None`
/// when `G[keep]` has no spanning tree.
pub(crate) fn tree_polynomial_mod(g: &MultiGraph, weights: &[u64], keep: &[bool], field: &Field) -> Option<Vec<u64>> {
    let mut local = vec![usize::MAX; g.n()];
    let mut count = 0;
    for v in 0..g.n() {
        if keep[v] {
            local[v] = count;
            count += 1;
        }
    }
    if count <= 1 {
        return Some(vec![field.one()]);
    }
    if !g.is_connected_within(keep) {
        return None;
    }
    let edges: Vec<(usize, usize, u64)> = g
        .edges()
        .iter()
        .zip(weights)
        .filter(|((u, v), _)| keep[*u] && keep[*v])
        .map(|(&(u, v), &w)| (local[u], local[v], w))
        .collect();
    let w_min = edges.iter().map(|e| e.2).min().expect("connected graph has edges");
    let w_max = edges.iter().map(|e| e.2).max().expect("connected graph has edges");
    let size = count - 1;
    let offset = size as u64 * w_min;
    let degree = size * (w_max - w_min) as usize;

    // det L(t) = t^offset * det L'(t), where L' uses t^(w - w_min).
    let mut values = Vec::with_capacity(degree + 1);
    let mut matrix = vec![0u64; size * size];
    let mut powers = vec![0u64; (w_max - w_min) as usize + 1];
    for point in 1..=degree as u64 + 1 {
        let t = field.to_mont(point);
        powers[0] = field.one();
        for i in 1..powers.len() {
            powers[i] = field.mul(powers[i - 1], t);
        }
        matrix.iter_mut().for_each(|x| *x = 0);
        for &(a, b, w) in &edges {
            let x = powers[(w - w_min) as usize];
            if a < size {
                matrix[a * size + a] = field.add(matrix[a * size + a], x);
            }
            if b < size {
                matrix[b * size + b] = field.add(matrix[b * size + b], x);
            }
            if a < size && b < size {
                matrix[a * size + b] = field.sub(matrix[a * size + b], x);
                matrix[b * size + a] = field.sub(matrix[b * size + a], x);
            }
        }
        values.push(field.determinant(&mut matrix, size));
    }
    let coeffs = field.interpolate_at_consecutive(&values);
    let mut out = vec![0u64; offset as usize + coeffs.len()];
    out[offset as usize..].copy_from_slice(&coeffs);
    Some(out)
}

pub(crate) fn validate_weights(weights: &[u64], max_weight: u64) -> Result<()> {
    if let Some(&w) = weights.iter().find(|&&w| w == 0 || w > max_weight) {
        return Err(Error::InvalidWeight(format!("weight {w} outside 1..={max_weight}")));
    }
    Ok(())
}

/// Number of spanning trees of each total weight `q` in `0..=(n-1)W`.
/// A disconnected graph yields the all-zero vector.
pub fn count_spanning_trees_by_weight(g: &MultiGraph, weights: &[u64], max_weight: u64) -> Result<WeightCountVector> {
    if weights.len() != g.m() {
        return Err(Error::Precondition(format!("{} weights for {} edges", weights.len(), g.m())));
    }
    validate_weights(weights, max_weight)?;
    let len = g.n().saturating_sub(1) * max_weight as usize + 1;
    let keep = vec![true; g.n()];
    let primes = primes_for_bound(&tree_count_bound(g, &keep));
    let mut residues = vec![vec![0u64; primes.len()]; len];
    for (i, &p) in primes.iter().enumerate() {
        let field = Field::new(p);
        let Some(poly) = tree_polynomial_mod(g, weights, &keep, &field) else {
            return Ok(WeightCountVector::zeros(len));
        };
        for (q, &c) in poly.iter().enumerate() {
            residues[q][i] = field.from_mont(c);
        }
    }
    let counts = residues
        .iter()
        .map(|r| {
            let v = crt_symmetric(r, &primes);
            assert!(!v.is_negative(), "negative tree count");
            v.to_biguint().expect("non-negative")
        })
        .collect();
    Ok(WeightCountVector::new(counts))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(g: &MultiGraph, w: &[u64], max: u64) -> Vec<u64> {
        count_spanning_trees_by_weight(g, w, max)
            .unwrap()
            .counts()
            .iter()
            .map(|c| u64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn kirchhoff_classics() {
        assert_eq!(kirchhoff_count(&MultiGraph::complete(3)), BigUint::from(3u32));
        assert_eq!(kirchhoff_count(&MultiGraph::complete(4)), BigUint::from(16u32));
        assert_eq!(kirchhoff_count(&MultiGraph::complete(8)), BigUint::from(262_144u32));
        assert_eq!(kirchhoff_count(&MultiGraph::cycle(7)), BigUint::from(7u32));
        assert_eq!(kirchhoff_count(&MultiGraph::empty(3)), BigUint::zero());
    }

    #[test]
    fn triangle_unit_weights() {
        assert_eq!(counts(&MultiGraph::complete(3), &[1, 1, 1], 1), vec![0, 0, 3]);
    }

    #[test]
    fn k4_unit_weights() {
        let c = counts(&MultiGraph::complete(4), &[1; 6], 1);
        assert_eq!(c[3], 16);
        assert_eq!(c.iter().sum::<u64>(), 16);
    }

    #[test]
    fn single_edge_weight_five() {
        let c = counts(&MultiGraph::path(2), &[5], 5);
        assert_eq!(c, vec![0, 0, 0, 0, 0, 1]);
    }

    #[test]
    fn mixed_weights_on_triangle() {
        // weights 1, 2, 3 on the three edges: trees {1,2}, {1,3}, {2,3}
        let c = counts(&MultiGraph::complete(3), &[1, 2, 3], 3);
        assert_eq!(&c[3..6], &[1, 1, 1]);
    }

    #[test]
    fn out_of_range_weight_is_rejected() {
        assert!(count_spanning_trees_by_weight(&MultiGraph::path(3), &[1, 4], 3).is_err());
        assert!(count_spanning_trees_by_weight(&MultiGraph::path(3), &[0, 1], 3).is_err());
    }

    #[test]
    fn disconnected_is_all_zero() {
        let g = MultiGraph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(counts(&g, &[1, 1], 1).iter().all(|&c| c == 0));
    }
}
