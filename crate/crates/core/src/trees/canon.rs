//! Center-rooted AHU canonical form for trees whose leaves are
//! interchangeable and whose internal vertices are labelled by degree.

use std::collections::VecDeque;

/// Canonically ordered rooted subtree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Node {
    pub degree: usize,
    pub children: Vec<Node>,
    pub code: String,
    pub aut: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Canon {
    Vertex(Node),
    /// Bicentral tree; halves ordered by code.
    Edge(Node, Node),
}

impl Canon {
    pub fn code(&self) -> String {
        match self {
            Canon::Vertex(n) => n.code.clone(),
            Canon::Edge(a, b) => format!("E({}|{})", a.code, b.code),
        }
    }

    pub fn aut(&self) -> u64 {
        match self {
            Canon::Vertex(n) => n.aut,
            Canon::Edge(a, b) => a.aut * b.aut * if a.code == b.code { 2 } else { 1 },
        }
    }

    /// Adjacency lists in canonical DFS numbering.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = Vec::new();
        match self {
            Canon::Vertex(n) => {
                number(n, None, &mut adj);
            }
            Canon::Edge(a, b) => {
                let ra = number(a, None, &mut adj);
                number(b, Some(ra), &mut adj);
            }
        }
        adj
    }
}

fn number(node: &Node, parent: Option<usize>, adj: &mut Vec<Vec<usize>>) -> usize {
    let id = adj.len();
    adj.push(Vec::new());
    if let Some(p) = parent {
        adj[id].push(p);
        adj[p].push(id);
    }
    for c in &node.children {
        number(c, Some(id), adj);
    }
    id
}

fn factorial_u64(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn rooted(adj: &[Vec<usize>], v: usize, parent: Option<usize>) -> Node {
    let mut children: Vec<Node> = adj[v]
        .iter()
        .filter(|&&u| Some(u) != parent)
        .map(|&u| rooted(adj, u, Some(v)))
        .collect();
    children.sort_by(|a, b| a.code.cmp(&b.code));
    let degree = adj[v].len();
    let code = if degree == 1 && children.len() <= 1 && parent.is_some() {
        "L".to_string()
    } else {
        let inner: String = children.iter().map(|c| c.code.as_str()).collect();
        if degree == 1 {
            // a leaf used as a root (only in the two-vertex tree's halves)
            format!("L[{inner}]")
        } else {
            format!("D{degree}[{inner}]")
        }
    };
    let mut aut: u64 = children.iter().map(|c| c.aut).product();
    let mut run = 1;
    for w in children.windows(2) {
        if w[0].code == w[1].code {
            run += 1;
        } else {
            aut *= factorial_u64(run);
            run = 1;
        }
    }
    if !children.is_empty() {
        aut *= factorial_u64(run);
    }
    Node {
        degree,
        children,
        code,
        aut,
    }
}

/// Vertices left after repeatedly stripping all leaves: one or two.
pub(crate) fn centers(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: VecDeque<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        let mut next = VecDeque::new();
        remaining -= layer.len();
        for v in layer.drain(..) {
            deg[v] = 0;
            for &u in &adj[v] {
                if deg[u] > 0 {
                    deg[u] -= 1;
                    if deg[u] == 1 {
                        next.push_back(u);
                    }
                }
            }
        }
        layer = next;
    }
    let mut c: Vec<usize> = layer.into_iter().collect();
    c.sort_unstable();
    c
}

pub(crate) fn canonicalize(adj: &[Vec<usize>]) -> Canon {
    let c = centers(adj);
    match c.as_slice() {
        [v] => Canon::Vertex(rooted(adj, *v, None)),
        [a, b] => {
            let na = rooted(adj, *a, Some(*b));
            let nb = rooted(adj, *b, Some(*a));
            if na.code <= nb.code {
                Canon::Edge(na, nb)
            } else {
                Canon::Edge(nb, na)
            }
        }
        _ => panic!("a tree has one or two centers"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_edges(k: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); k];
        for &(a, b) in edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    #[test]
    fn edge_tree() {
        let c = canonicalize(&from_edges(2, &[(0, 1)]));
        assert_eq!(c.code(), "E(L|L)");
        assert_eq!(c.aut(), 2);
    }

    #[test]
    fn three_star() {
        let c = canonicalize(&from_edges(4, &[(0, 3), (1, 3), (2, 3)]));
        assert_eq!(c.code(), "D3[LLL]");
        assert_eq!(c.aut(), 6);
    }

    #[test]
    fn double_three_vertex_tree() {
        let c = canonicalize(&from_edges(6, &[(0, 4), (1, 4), (4, 5), (2, 5), (3, 5)]));
        assert_eq!(c.code(), "E(D3[LL]|D3[LL])");
        assert_eq!(c.aut(), 8);
    }

    #[test]
    fn relabelling_does_not_change_code() {
        let a = canonicalize(&from_edges(7, &[(0, 5), (1, 5), (5, 6), (6, 2), (6, 3), (6, 4)]));
        let b = canonicalize(&from_edges(7, &[(6, 0), (1, 0), (2, 0), (0, 3), (3, 4), (3, 5)]));
        assert_eq!(a.code(), b.code());
        assert_eq!(a.aut(), 2 * 6);
    }

    #[test]
    fn canonical_adjacency_round_trips() {
        let c = canonicalize(&from_edges(6, &[(5, 4), (1, 4), (4, 0), (2, 0), (3, 0)]));
        let again = canonicalize(&c.adjacency());
        assert_eq!(again, c);
    }
}
