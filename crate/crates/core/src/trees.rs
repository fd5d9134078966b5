//! Unlabelled trees up to isomorphism, canonically labelled.

use std::collections::BTreeSet;

/// A tree on vertices `0..n`, labelled canonically outward from its centre;
/// `edges[i] = (parent, child)` with `child = i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tree {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Tree {
    pub fn single() -> Self {
        Tree { n: 1, edges: Vec::new() }
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        adjacency(self.n, &self.edges)
    }

    pub fn degree(&self, x: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == x || b == x).count()
    }

    /// Index of the edge joining `a` and `b`, if any.
    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.edges.iter().position(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
    }
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj
}

fn centres(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &w in &adj[leaf] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

fn rooted_code(adj: &[Vec<usize>], v: usize, parent: Option<usize>) -> String {
    let mut children: Vec<String> =
        adj[v].iter().filter(|&&w| Some(w) != parent).map(|&w| rooted_code(adj, w, Some(v))).collect();
    children.sort();
    format!("({})", children.concat())
}

/// Canonical code of a tree and the root realising it.
fn canonical_code(adj: &[Vec<usize>]) -> (String, usize) {
    centres(adj)
        .into_iter()
        .map(|c| (rooted_code(adj, c, None), c))
        .min()
        .expect("a tree has a centre")
}

/// Relabels a tree outward from its canonical root, children sorted by code,
/// so isomorphic trees come out identical.
fn canonical_form(n: usize, edges: &[(usize, usize)]) -> (String, Tree) {
    let adj = adjacency(n, edges);
    let (code, root) = canonical_code(&adj);
    let mut label = vec![usize::MAX; n];
    let mut out = Vec::with_capacity(n.saturating_sub(1));
    label[root] = 0;
    let mut next = 1;
    let mut stack = vec![(root, None::<usize>)];
    while let Some((v, parent)) = stack.pop() {
        let mut children: Vec<(String, usize)> = adj[v]
            .iter()
            .filter(|&&w| Some(w) != parent)
            .map(|&w| (rooted_code(&adj, w, Some(v)), w))
            .collect();
        children.sort();
        for (_, w) in &children {
            label[*w] = next;
            out.push((label[v], next));
            next += 1;
        }
        for (_, w) in children.into_iter().rev() {
            stack.push((w, Some(v)));
        }
    }
    out.sort_by_key(|&(_, c)| c);
    (code, Tree { n, edges: out })
}

/// All trees with `1..=n` vertices up to isomorphism, ordered by size and
/// then by canonical code.
pub fn enumerate_trees(n: usize) -> Vec<Tree> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut layer: Vec<Tree> = vec![Tree::single()];
    out.extend(layer.iter().cloned());
    for size in 2..=n {
        let mut seen = BTreeSet::new();
        for t in &layer {
            for v in 0..t.n {
                let mut edges = t.edges.clone();
                edges.push((v, t.n));
                seen.insert(canonical_form(size, &edges));
            }
        }
        layer = seen.into_iter().map(|(_, t)| t).collect();
        out.extend(layer.iter().cloned());
    }
    out
}
