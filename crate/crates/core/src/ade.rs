//! Recognition of Dynkin diagrams among connected simply-laced graphs.

use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AdeLabel {
    A(usize),
    D(usize),
    E(usize),
    AffineA(usize),
    AffineD(usize),
    AffineE(usize),
    Unclassified,
}

impl AdeLabel {
    /// Rank of the finite root lattice, or the number of nodes minus one for
    /// affine diagrams.
    pub fn rank(self) -> Option<usize> {
        match self {
            AdeLabel::A(n)
            | AdeLabel::D(n)
            | AdeLabel::E(n)
            | AdeLabel::AffineA(n)
            | AdeLabel::AffineD(n)
            | AdeLabel::AffineE(n) => Some(n),
            AdeLabel::Unclassified => None,
        }
    }

    pub fn is_affine(self) -> bool {
        matches!(
            self,
            AdeLabel::AffineA(_) | AdeLabel::AffineD(_) | AdeLabel::AffineE(_)
        )
    }
}

impl fmt::Display for AdeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdeLabel::A(n) => write!(f, "A_{n}"),
            AdeLabel::D(n) => write!(f, "D_{n}"),
            AdeLabel::E(n) => write!(f, "E_{n}"),
            AdeLabel::AffineA(n) => write!(f, "affine A_{n}"),
            AdeLabel::AffineD(n) => write!(f, "affine D_{n}"),
            AdeLabel::AffineE(n) => write!(f, "affine E_{n}"),
            AdeLabel::Unclassified => write!(f, "unclassified"),
        }
    }
}

/// A connected piece of a graph (node ids of the parent graph) and its label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdeComponent {
    pub nodes: Vec<usize>,
    pub label: AdeLabel,
}

/// Connected components of the subgraph induced on `nodes`, each sorted,
/// ordered by smallest member.
pub fn components_of(nodes: &[usize], edges: &[(usize, usize, i64)]) -> Vec<Vec<usize>> {
    let keep: BTreeSet<usize> = nodes.iter().copied().collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &start in &keep {
        if !seen.insert(start) {
            continue;
        }
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &(a, b, w) in edges {
                if w == 0 {
                    continue;
                }
                let other = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if keep.contains(&other) && seen.insert(other) {
                    comp.push(other);
                    stack.push(other);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Split the subgraph on `nodes` into connected pieces and label each.
pub fn classify_subgraph(nodes: &[usize], edges: &[(usize, usize, i64)]) -> Vec<AdeComponent> {
    components_of(nodes, edges)
        .into_iter()
        .map(|comp| {
            let local: Vec<(usize, usize, i64)> = edges
                .iter()
                .filter_map(|&(a, b, w)| {
                    let i = comp.iter().position(|&x| x == a)?;
                    let j = comp.iter().position(|&x| x == b)?;
                    Some((i, j, w))
                })
                .collect();
            let label = classify_connected(comp.len(), &local);
            AdeComponent { nodes: comp, label }
        })
        .collect()
}

/// Label a connected graph on nodes `0..k`. Edges with weight other than 1,
/// repeated edges and loops give [`AdeLabel::Unclassified`].
pub fn classify_connected(k: usize, edges: &[(usize, usize, i64)]) -> AdeLabel {
    if k == 0 {
        return AdeLabel::Unclassified;
    }
    let mut adj = vec![Vec::new(); k];
    let mut pairs = BTreeSet::new();
    for &(a, b, w) in edges {
        if w == 0 {
            continue;
        }
        if w != 1 || a == b || a >= k || b >= k || !pairs.insert((a.min(b), a.max(b))) {
            return AdeLabel::Unclassified;
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    let m = pairs.len();
    let deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    if m == k {
        // connected with one cycle: affine A only if the whole graph is the cycle
        return if k >= 3 && deg.iter().all(|&d| d == 2) {
            AdeLabel::AffineA(k - 1)
        } else {
            AdeLabel::Unclassified
        };
    }
    if m + 1 != k {
        return AdeLabel::Unclassified;
    }
    let branch: Vec<usize> = (0..k).filter(|&v| deg[v] >= 3).collect();
    match branch.as_slice() {
        [] => AdeLabel::A(k),
        [c] if deg[*c] == 3 => {
            let mut arms: Vec<usize> = adj[*c].iter().map(|&s| arm_length(&adj, *c, s)).collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, r] => AdeLabel::D(r + 3),
                [1, 2, 2] => AdeLabel::E(6),
                [1, 2, 3] => AdeLabel::E(7),
                [1, 2, 4] => AdeLabel::E(8),
                [2, 2, 2] => AdeLabel::AffineE(6),
                [1, 3, 3] => AdeLabel::AffineE(7),
                [1, 2, 5] => AdeLabel::AffineE(8),
                _ => AdeLabel::Unclassified,
            }
        }
        [c] if deg[*c] == 4 && k == 5 => AdeLabel::AffineD(4),
        [x, y] if deg[*x] == 3 && deg[*y] == 3 => {
            // both branch nodes must carry two leaves
            let leaves = |v: usize| adj[v].iter().filter(|&&w| deg[w] == 1).count();
            if leaves(*x) == 2 && leaves(*y) == 2 {
                AdeLabel::AffineD(k - 1)
            } else {
                AdeLabel::Unclassified
            }
        }
        _ => AdeLabel::Unclassified,
    }
}

// Length of the path hanging off `centre` through `start`; the path must be a
// simple chain ending in a leaf.
fn arm_length(adj: &[Vec<usize>], centre: usize, start: usize) -> usize {
    let (mut prev, mut cur, mut len) = (centre, start, 1);
    loop {
        let next: Vec<usize> = adj[cur].iter().copied().filter(|&w| w != prev).collect();
        match next.as_slice() {
            [] => return len,
            [n] => {
                prev = cur;
                cur = *n;
                len += 1;
            }
            _ => return usize::MAX,
        }
    }
}
