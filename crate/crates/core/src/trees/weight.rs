use num_bigint::BigInt;

use super::{DecoratedTree, TensorBundle};
use crate::algebra::{Polynomial, Rational};
use crate::error::Result;

/// `w(Γ)`: the full contraction divided by `|Aut Γ|`, as a homogeneous
/// polynomial of degree `m` in `y`.
pub fn tree_weight(tree: &DecoratedTree, bundle: &TensorBundle) -> Result<Polynomial> {
    tree_weight_rooted(tree, bundle, 0)
}

/// [`tree_weight`] evaluated by message passing towards `root`, which may be
/// any vertex. The result does not depend on the choice.
pub fn tree_weight_rooted(tree: &DecoratedTree, bundle: &TensorBundle, root: usize) -> Result<Polynomial> {
    let raw = raw_contraction(tree.adjacency(), bundle, root)?;
    Ok(raw.scale(&Rational::from_integer(BigInt::from(tree.aut_order())).recip()))
}

fn y_vector(n: usize) -> Vec<Polynomial> {
    (0..n).map(|i| Polynomial::var(n, i)).collect()
}

pub(crate) fn raw_contraction(adj: &[Vec<usize>], bundle: &TensorBundle, root: usize) -> Result<Polynomial> {
    let n = bundle.dim();
    let y = y_vector(n);
    if adj[root].len() == 1 {
        let incoming = message(adj, bundle, adj[root][0], root)?;
        return Ok(y
            .iter()
            .zip(&incoming)
            .fold(Polynomial::zero(n), |acc, (a, b)| &acc + &(a * b)));
    }
    let slots = adj[root]
        .iter()
        .map(|&u| message(adj, bundle, u, root))
        .collect::<Result<Vec<_>>>()?;
    let t = bundle.vertex_tensor(adj[root].len())?;
    Ok(-&t.contract_full(&slots)?)
}

/// Vector sent from `v` to `parent`, including the propagator on that edge.
fn message(adj: &[Vec<usize>], bundle: &TensorBundle, v: usize, parent: usize) -> Result<Vec<Polynomial>> {
    let p = bundle.propagator_matrix();
    if adj[v].len() == 1 {
        return Ok(p.apply(&y_vector(bundle.dim())));
    }
    let slots = adj[v]
        .iter()
        .filter(|&&u| u != parent)
        .map(|&u| message(adj, bundle, u, v))
        .collect::<Result<Vec<_>>>()?;
    let t = bundle.vertex_tensor(adj[v].len())?;
    let out: Vec<Polynomial> = t.contract_vector(&slots)?.iter().map(|q| -q).collect();
    Ok(p.apply(&out))
}
