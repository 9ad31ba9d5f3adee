//! Tree-diagram expansion of the formal Legendre transform.
//!
//! Each isomorphism class of trees with `m` leaves (external vertices,
//! carrying `y`) and internal vertices of degree `d ≥ 3` (carrying `−T_d`)
//! contributes its full contraction, with `T₂⁻¹` on every edge, divided by
//! the order of its automorphism group. Summing over all classes with
//! `2 ≤ m ≤ D` reproduces `φ̄` through degree `D`.

mod canon;
mod enumerate;
pub mod oracle;
mod weight;

use std::collections::BTreeMap;

use crate::algebra::{Matrix, Polynomial, SymmetricTensor, TruncatedSeries};
use crate::error::{Error, Result};
use crate::legendre::Potential;

pub use enumerate::enumerate_trees;
pub use oracle::{labeled_tree_oracle, DEFAULT_ORACLE_BOUND};
pub use weight::{tree_weight, tree_weight_rooted};

/// Isomorphism class of a decorated tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoratedTree {
    leaf_count: usize,
    internal_degrees: Vec<usize>,
    adjacency: Vec<Vec<usize>>,
    encoding: String,
    aut_order: u64,
}

impl DecoratedTree {
    /// Canonicalizes a tree given by an edge list on vertices `0..vertex_count`.
    /// Panics if the edges do not form a tree.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Self {
        assert_eq!(edges.len() + 1, vertex_count, "not a tree");
        let mut adj = vec![Vec::new(); vertex_count];
        for &(a, b) in edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        Self::from_adjacency(&adj)
    }

    pub(crate) fn from_adjacency(adj: &[Vec<usize>]) -> Self {
        let c = canon::canonicalize(adj);
        let adjacency = c.adjacency();
        let leaf_count = adjacency.iter().filter(|a| a.len() == 1).count();
        let mut internal_degrees: Vec<usize> = adjacency
            .iter()
            .map(Vec::len)
            .filter(|&d| d > 1)
            .collect();
        internal_degrees.sort_unstable();
        DecoratedTree {
            leaf_count,
            internal_degrees,
            adjacency,
            encoding: c.code(),
            aut_order: c.aut(),
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_count
    }

    pub fn internal_count(&self) -> usize {
        self.internal_degrees.len()
    }

    /// Sorted ascending.
    pub fn internal_degrees(&self) -> &[usize] {
        &self.internal_degrees
    }

    /// Adjacency lists in canonical numbering; vertex 0 is a center.
    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (v, nbrs) in self.adjacency.iter().enumerate() {
            for &u in nbrs {
                if v < u {
                    out.push((v, u));
                }
            }
        }
        out
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.adjacency[v].len() == 1
    }

    pub fn canonical_encoding(&self) -> &str {
        &self.encoding
    }

    pub fn aut_order(&self) -> u64 {
        self.aut_order
    }

    /// Indented outline of the canonical rooted form; leaves print as `y`,
    /// internal vertices as `-T<d>`.
    pub fn sketch(&self) -> String {
        let mut out = String::new();
        let label = |v: usize| {
            if self.is_leaf(v) {
                "y".to_string()
            } else {
                format!("-T{}", self.adjacency[v].len())
            }
        };
        fn walk(
            t: &DecoratedTree,
            v: usize,
            parent: Option<usize>,
            prefix: &str,
            last: bool,
            out: &mut String,
            label: &dyn Fn(usize) -> String,
        ) {
            let branch = match parent {
                None => "",
                Some(_) if last => "`-- ",
                Some(_) => "|-- ",
            };
            out.push_str(&format!("{prefix}{branch}{}\n", label(v)));
            let children: Vec<usize> = t.adjacency[v].iter().copied().filter(|&u| Some(u) != parent).collect();
            let child_prefix = match parent {
                None => prefix.to_string(),
                Some(_) if last => format!("{prefix}    "),
                Some(_) => format!("{prefix}|   "),
            };
            for (k, &c) in children.iter().enumerate() {
                walk(t, c, Some(v), &child_prefix, k + 1 == children.len(), out, label);
            }
        }
        walk(self, 0, None, "", true, &mut out, &label);
        out
    }
}

/// Propagator `T₂⁻¹` and vertex tensors `T_d`, `3 ≤ d ≤ max_degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorBundle {
    dim: usize,
    propagator: SymmetricTensor,
    propagator_matrix: Matrix,
    vertex_tensors: BTreeMap<usize, SymmetricTensor>,
}

impl TensorBundle {
    pub fn new(propagator: &Matrix, vertex_tensors: BTreeMap<usize, SymmetricTensor>) -> Result<Self> {
        let dim = propagator.dim();
        for (&d, t) in &vertex_tensors {
            if t.order() != d || t.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: t.order(),
                });
            }
        }
        Ok(TensorBundle {
            dim,
            propagator: SymmetricTensor::from_matrix(propagator),
            propagator_matrix: propagator.clone(),
            vertex_tensors,
        })
    }

    /// `T₂⁻¹` and `T_d` for every degree `3 ≤ d ≤ deg φ`.
    pub fn from_potential(pot: &Potential) -> Result<Self> {
        let mut tensors = BTreeMap::new();
        for d in 3..=pot.degree() {
            let comp = pot.polynomial().homogeneous_component(d);
            tensors.insert(d, SymmetricTensor::from_homogeneous(&comp, d)?);
        }
        TensorBundle::new(pot.propagator(), tensors)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn propagator(&self) -> &SymmetricTensor {
        &self.propagator
    }

    pub(crate) fn propagator_matrix(&self) -> &Matrix {
        &self.propagator_matrix
    }

    pub fn vertex_tensor(&self, degree: usize) -> Result<&SymmetricTensor> {
        self.vertex_tensors
            .get(&degree)
            .ok_or(Error::MissingVertexTensor { order: degree })
    }

    /// Largest vertex degree available, at least 2.
    pub fn max_degree(&self) -> usize {
        self.vertex_tensors.keys().next_back().copied().unwrap_or(2)
    }
}

/// Homogeneous parts of the tree sum: entry `m` is the sum of weights over
/// trees with `m` leaves, for `m = 0..=degree` (entries 0 and 1 are zero).
pub fn tree_expand_graded(pot: &Potential, degree: usize) -> Result<Vec<Polynomial>> {
    if degree < 2 {
        return Err(Error::InvalidDegree {
            degree,
            reason: "tree expansion starts at degree 2",
        });
    }
    let bundle = TensorBundle::from_potential(pot)?;
    let n = pot.dim();
    let mut parts = vec![Polynomial::zero(n); degree + 1];
    for (m, part) in parts.iter_mut().enumerate().skip(2) {
        for tree in enumerate_trees(m, bundle.max_degree())? {
            *part = &*part + &tree_weight(&tree, &bundle)?;
        }
    }
    Ok(parts)
}

/// `Σ_{m=2}^{D} Σ_{trees with m leaves} w(Γ)` as a series truncated at `D`.
pub fn tree_expand(pot: &Potential, degree: usize) -> Result<TruncatedSeries> {
    let parts = tree_expand_graded(pot, degree)?;
    let n = pot.dim();
    let sum = parts.iter().fold(Polynomial::zero(n), |acc, p| &acc + p);
    Ok(TruncatedSeries::new(sum, degree))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat, Monomial};
    use crate::legendre::legendre_transform;

    fn cubic() -> Polynomial {
        Polynomial::from_terms(1, [(Monomial::new(vec![2]), rat(1, 2)), (Monomial::new(vec![3]), rat(1, 6))])
    }

    #[test]
    fn cubic_series_matches_legendre() {
        let pot = Potential::new(cubic()).unwrap();
        let t = tree_expand(&pot, 5).unwrap();
        let want = Polynomial::from_terms(
            1,
            [
                (Monomial::new(vec![2]), rat(1, 2)),
                (Monomial::new(vec![3]), rat(-1, 6)),
                (Monomial::new(vec![4]), rat(1, 8)),
                (Monomial::new(vec![5]), rat(-1, 8)),
            ],
        );
        assert_eq!(t.body(), &want);
        assert_eq!(t, legendre_transform(&pot, 5).unwrap());
    }

    #[test]
    fn quadratic_only_edge_tree_survives() {
        let phi = Polynomial::from_terms(
            2,
            [(Monomial::new(vec![2, 0]), int(2)), (Monomial::new(vec![0, 2]), rat(1, 2))],
        );
        let pot = Potential::new(phi).unwrap();
        let t = tree_expand(&pot, 6).unwrap();
        // T₂ = diag(4, 1), so (1/2) yᵀ T₂⁻¹ y = y1²/8 + y2²/2
        let want = Polynomial::from_terms(
            2,
            [(Monomial::new(vec![2, 0]), rat(1, 8)), (Monomial::new(vec![0, 2]), rat(1, 2))],
        );
        assert_eq!(t.body(), &want);
    }

    #[test]
    fn graded_parts_are_homogeneous() {
        let pot = Potential::new(&cubic() + &Polynomial::monomial(1, vec![4], rat(-1, 3))).unwrap();
        for (m, part) in tree_expand_graded(&pot, 6).unwrap().iter().enumerate() {
            assert!(part.is_homogeneous(m), "part {m} not homogeneous");
        }
    }

    #[test]
    fn sketch_of_double_vertex_tree() {
        let t = DecoratedTree::from_edges(6, &[(0, 4), (1, 4), (4, 5), (2, 5), (3, 5)]);
        assert_eq!(t.sketch(), "-T3\n|-- y\n|-- y\n`-- -T3\n    |-- y\n    `-- y\n");
    }
}
