//! Labeled-tree route to the same expansion, independent of the isomorphism
//! class enumeration and of the automorphism counts.
//!
//! Labeled trees on `m` leaf labels and `j` internal labels are decoded from
//! Prüfer sequences that only use internal labels, each appearing
//! `degree − 1 ≥ 2` times. A class `Γ` is hit `m!·j!/|Aut Γ|` times, so the
//! plain sum of raw contractions divided by `m!·j!` equals the class sum.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::{DecoratedTree, TensorBundle};
use crate::algebra::{factorial, Polynomial, Rational, TruncatedSeries};
use crate::combinatorics::{permutations, sequences};
use crate::error::{Error, Result};
use crate::legendre::Potential;

pub const DEFAULT_ORACLE_BOUND: usize = 6;

/// Decodes a Prüfer sequence into the edge list of a labeled tree on
/// `vertex_count = sequence.len() + 2` vertices.
pub fn prufer_decode(sequence: &[usize], vertex_count: usize) -> Vec<(usize, usize)> {
    assert_eq!(sequence.len() + 2, vertex_count);
    let mut degree = vec![1usize; vertex_count];
    for &s in sequence {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(vertex_count - 1);
    for &s in sequence {
        let leaf = (0..vertex_count).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf.min(s), leaf.max(s)));
        degree[leaf] = 0;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..vertex_count).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Labeled trees with leaves `0..m` and internal vertices `m..m+j`, every
/// internal degree in `[3, max_degree]`. Each tree is a sorted edge list.
pub fn labeled_trees(m: usize, j: usize, max_degree: usize) -> Vec<Vec<(usize, usize)>> {
    let k = m + j;
    if k < 2 {
        return Vec::new();
    }
    let len = k - 2;
    let mut out = Vec::new();
    for seq in sequences(j, len) {
        let mut counts = vec![0usize; j];
        for &s in &seq {
            counts[s] += 1;
        }
        if counts.iter().any(|&c| c < 2 || c + 1 > max_degree) {
            continue;
        }
        let relabelled: Vec<usize> = seq.iter().map(|&s| s + m).collect();
        let mut edges = prufer_decode(&relabelled, k);
        edges.sort_unstable();
        out.push(edges);
    }
    out
}

/// Number of distinct labeled trees on `k` vertices, by exhaustive decoding
/// of all `k^(k−2)` Prüfer sequences.
pub fn count_all_labeled_trees(k: usize) -> usize {
    let distinct: BTreeSet<Vec<(usize, usize)>> = sequences(k, k.saturating_sub(2))
        .map(|s| {
            let mut e = prufer_decode(&s, k);
            e.sort_unstable();
            e
        })
        .collect();
    distinct.len()
}

/// Raw contraction of a labeled tree, evaluated bottom-up towards leaf 0.
fn labeled_contraction(k: usize, edges: &[(usize, usize)], bundle: &TensorBundle) -> Result<Polynomial> {
    let n = bundle.dim();
    let mut adj = vec![Vec::new(); k];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    // BFS order from leaf 0, then fold children into parents in reverse.
    let mut parent = vec![usize::MAX; k];
    let mut order = vec![0usize];
    parent[0] = 0;
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &u in &adj[v] {
            if parent[u] == usize::MAX {
                parent[u] = v;
                order.push(u);
            }
        }
    }
    let prop = bundle.propagator();
    let y: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(n, i)).collect();
    let mut inbox: Vec<Vec<Vec<Polynomial>>> = vec![Vec::new(); k];
    for &v in order.iter().skip(1).rev() {
        let before_edge = if adj[v].len() == 1 {
            y.clone()
        } else {
            let t = bundle.vertex_tensor(adj[v].len())?;
            t.neg().contract_vector(&inbox[v])?
        };
        // one propagator on the edge to the parent
        let sent = prop.contract_vector(&[before_edge])?;
        inbox[parent[v]].push(sent);
    }
    let last = inbox[0].pop().expect("leaf 0 has one neighbour");
    Ok(y.iter().zip(&last).fold(Polynomial::zero(n), |acc, (a, b)| &acc + &(a * b)))
}

/// `φ̄` through `degree`, summed over labeled trees and divided by `m!·j!`.
pub fn labeled_tree_oracle(pot: &Potential, degree: usize, bound: usize) -> Result<TruncatedSeries> {
    if degree > bound {
        return Err(Error::BoundExceeded {
            what: "labeled-tree oracle degree",
            requested: degree,
            bound,
        });
    }
    if degree < 2 {
        return Err(Error::InvalidDegree {
            degree,
            reason: "tree expansion starts at degree 2",
        });
    }
    let bundle = TensorBundle::from_potential(pot)?;
    let n = pot.dim();
    let mut total = Polynomial::zero(n);
    for m in 2..=degree {
        for j in 0..=m - 2 {
            let mut sum = Polynomial::zero(n);
            for edges in labeled_trees(m, j, bundle.max_degree()) {
                sum = &sum + &labeled_contraction(m + j, &edges, &bundle)?;
            }
            let labelings = factorial(m as u64) * factorial(j as u64);
            total = &total + &sum.scale(&Rational::from_integer(labelings).recip());
        }
    }
    Ok(TruncatedSeries::new(total, degree))
}

/// Distinct labeled trees obtained by assigning leaf labels to the leaves and
/// internal labels to the internal vertices of `tree` in every possible way.
pub fn labeling_orbit_size(tree: &DecoratedTree) -> usize {
    let (leaves, internals): (Vec<usize>, Vec<usize>) =
        (0..tree.vertex_count()).partition(|&v| tree.is_leaf(v));
    let m = leaves.len();
    let edges = tree.edges();
    let mut seen = BTreeSet::new();
    let inner_perms = permutations(internals.len());
    for lp in permutations(m) {
        for ip in &inner_perms {
            let mut label = vec![0usize; tree.vertex_count()];
            for (k, &v) in leaves.iter().enumerate() {
                label[v] = lp[k];
            }
            for (k, &v) in internals.iter().enumerate() {
                label[v] = m + ip[k];
            }
            let mut e: Vec<(usize, usize)> = edges
                .iter()
                .map(|&(a, b)| (label[a].min(label[b]), label[a].max(label[b])))
                .collect();
            e.sort_unstable();
            seen.insert(e);
        }
    }
    seen.len()
}

/// `|Aut Γ|` by brute force: permutations of leaves among leaves and internal
/// vertices among internal vertices that preserve the edge set.
pub fn aut_order_brute_force(tree: &DecoratedTree) -> u64 {
    let (leaves, internals): (Vec<usize>, Vec<usize>) =
        (0..tree.vertex_count()).partition(|&v| tree.is_leaf(v));
    let edges: BTreeSet<(usize, usize)> = tree.edges().into_iter().collect();
    let inner_perms = permutations(internals.len());
    let mut count = 0;
    for lp in permutations(leaves.len()) {
        for ip in &inner_perms {
            let mut map = vec![0usize; tree.vertex_count()];
            for (k, &v) in leaves.iter().enumerate() {
                map[v] = leaves[lp[k]];
            }
            for (k, &v) in internals.iter().enumerate() {
                map[v] = internals[ip[k]];
            }
            if edges
                .iter()
                .all(|&(a, b)| edges.contains(&(map[a].min(map[b]), map[a].max(map[b]))))
            {
                count += 1;
            }
        }
    }
    count
}

/// `m!·j!` as an integer.
pub fn labeling_count(m: usize, j: usize) -> BigInt {
    factorial(m as u64) * factorial(j as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Monomial};
    use crate::trees::{enumerate_trees, tree_expand};

    #[test]
    fn cayley_formula_for_four_vertices() {
        assert_eq!(count_all_labeled_trees(4), 16);
        assert_eq!(count_all_labeled_trees(5), 125);
    }

    #[test]
    fn double_three_vertex_labelings() {
        // 4!·2!/8 = 6
        assert_eq!(labeled_trees(4, 2, 3).len(), 6);
        assert_eq!(labeled_trees(2, 0, 3).len(), 1);
        assert!(labeled_trees(3, 0, 3).is_empty());
    }

    #[test]
    fn oracle_matches_class_sum_for_cubic() {
        let phi = Polynomial::from_terms(
            1,
            [(Monomial::new(vec![2]), rat(1, 2)), (Monomial::new(vec![3]), rat(1, 6))],
        );
        let pot = Potential::new(phi).unwrap();
        let o = labeled_tree_oracle(&pot, 5, DEFAULT_ORACLE_BOUND).unwrap();
        assert_eq!(o, tree_expand(&pot, 5).unwrap());
        assert_eq!(o.body().coeff(&Monomial::new(vec![4])), rat(1, 8));
    }

    #[test]
    fn oracle_bound() {
        let pot = Potential::new(Polynomial::monomial(1, vec![2], rat(1, 2))).unwrap();
        assert!(matches!(
            labeled_tree_oracle(&pot, 7, DEFAULT_ORACLE_BOUND),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn brute_force_aut_matches_canonical_form() {
        for m in 2..=5 {
            for t in enumerate_trees(m, m).unwrap() {
                assert_eq!(aut_order_brute_force(&t), t.aut_order(), "{}", t.canonical_encoding());
            }
        }
    }
}
