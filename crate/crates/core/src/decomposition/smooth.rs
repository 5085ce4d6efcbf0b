//! Smooth binary decompositions: equal-size bags, binary internal nodes whose
//! left child repeats the parent bag, and every graph edge represented at
//! exactly one leaf.

use std::collections::VecDeque;
use std::fmt;

use super::td::{validate_decomposition, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Vertex};

/// The single-vertex exchange between an internal node and its right child.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Swap {
    /// In the parent bag but not in the right child's bag.
    pub dropped: Vertex,
    /// In the right child's bag but not in the parent bag.
    pub added: Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeKind {
    Leaf {
        /// Edges represented at this leaf, ascending.
        edges: Vec<EdgeId>,
    },
    Internal {
        left: usize,
        right: usize,
        /// Absent when the right child's bag equals this bag.
        swap: Option<Swap>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothNode {
    /// Sorted, exactly `width + 1` vertices.
    pub bag: Vec<Vertex>,
    pub kind: NodeKind,
}

impl SmoothNode {
    pub fn is_leaf(&self) -> bool {
        matches!(self.kind, NodeKind::Leaf { .. })
    }

    pub fn children(&self) -> Option<(usize, usize)> {
        match self.kind {
            NodeKind::Internal { left, right, .. } => Some((left, right)),
            NodeKind::Leaf { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothDecomposition {
    pub width: usize,
    pub root: usize,
    pub nodes: Vec<SmoothNode>,
}

impl SmoothDecomposition {
    pub fn node(&self, i: usize) -> &SmoothNode {
        &self.nodes[i]
    }

    /// Node indices in depth-first preorder, left child before right.
    pub fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![self.root];
        while let Some(i) = stack.pop() {
            out.push(i);
            if let Some((l, r)) = self.nodes[i].children() {
                stack.push(r);
                stack.push(l);
            }
        }
        out
    }

    /// Node indices with every child before its parent.
    pub fn postorder(&self) -> Vec<usize> {
        let mut order = self.preorder();
        order.reverse();
        order
    }

    /// Edges represented in the subtree of every node (the sets `E_i'`), ascending.
    pub fn represented_edges(&self) -> Vec<Vec<EdgeId>> {
        let mut sets: Vec<Vec<EdgeId>> = vec![Vec::new(); self.nodes.len()];
        for i in self.postorder() {
            sets[i] = match &self.nodes[i].kind {
                NodeKind::Leaf { edges } => edges.clone(),
                NodeKind::Internal { left, right, .. } => {
                    let mut s = sets[*left].clone();
                    s.extend_from_slice(&sets[*right]);
                    s.sort_unstable();
                    s
                }
            };
        }
        sets
    }

    /// Forgets the binary structure, keeping bags and tree edges.
    pub fn to_tree_decomposition(&self, vertex_count: usize) -> TreeDecomposition {
        let bags = self.nodes.iter().map(|n| n.bag.clone()).collect();
        let edges = self
            .nodes
            .iter()
            .enumerate()
            .filter_map(|(i, n)| n.children().map(|(l, r)| [(i, l), (i, r)]))
            .flatten()
            .collect();
        TreeDecomposition::new(vertex_count, bags, edges)
    }
}

/// Rooted working tree used during construction.
struct RootedTree {
    bags: Vec<Vec<Vertex>>,
    children: Vec<Vec<usize>>,
    alive: Vec<bool>,
    root: usize,
}

impl RootedTree {
    fn from_td(td: &TreeDecomposition, root: usize) -> Self {
        let adj = td.tree_adjacency();
        let mut children = vec![Vec::new(); td.bags.len()];
        let mut seen = vec![false; td.bags.len()];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(i) = queue.pop_front() {
            for &j in &adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    children[i].push(j);
                    queue.push_back(j);
                }
            }
        }
        RootedTree {
            bags: td.bags.clone(),
            children,
            alive: vec![true; td.bags.len()],
            root,
        }
    }

    fn push(&mut self, bag: Vec<Vertex>, children: Vec<usize>) -> usize {
        self.bags.push(bag);
        self.children.push(children);
        self.alive.push(true);
        self.bags.len() - 1
    }

    fn top_down(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut queue = VecDeque::from([self.root]);
        while let Some(i) = queue.pop_front() {
            out.push(i);
            queue.extend(self.children[i].iter().copied());
        }
        out
    }
}

fn sorted_difference(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    a.iter()
        .filter(|v| b.binary_search(v).is_err())
        .copied()
        .collect()
}

fn insert_sorted(bag: &mut Vec<Vertex>, v: Vertex) {
    if let Err(pos) = bag.binary_search(&v) {
        bag.insert(pos, v);
    }
}

/// Transforms a tree decomposition into a smooth decomposition of width `target_width`.
///
/// Steps: pad bags to `target_width + 1` vertices, refine tree edges so adjacent bags
/// differ by one exchanged vertex, turn every node into a left comb of binary nodes
/// ending in a leaf copy of its bag, represent each edge at the first preorder leaf
/// containing it, and record each internal node's exchange with its right child.
pub fn smooth(
    g: &Graph,
    td: &TreeDecomposition,
    target_width: usize,
) -> Result<SmoothDecomposition> {
    if let Err(violations) = validate_decomposition(g, td) {
        let text: Vec<String> = violations.iter().map(ToString::to_string).collect();
        return Err(Error::Construction(format!(
            "invalid decomposition: {}",
            text.join("; ")
        )));
    }
    if td.width() > target_width {
        return Err(Error::Construction(format!(
            "decomposition width {} exceeds target width {target_width}",
            td.width()
        )));
    }
    if !g.is_connected() {
        return Err(Error::Construction("graph is not connected".into()));
    }
    let size = target_width + 1;
    if g.vertex_count() < size {
        return Err(Error::Construction(format!(
            "{} vertices cannot fill bags of size {size}",
            g.vertex_count()
        )));
    }

    let root = (0..td.bags.len())
        .max_by_key(|&i| (td.bags[i].len(), std::cmp::Reverse(i)))
        .expect("a valid decomposition of a nonempty graph has a bag");
    let mut tree = RootedTree::from_td(td, root);

    // (a) Padding. The root borrows from its children, absorbing children that
    // become subsets of it; every other bag borrows from its parent.
    while tree.bags[root].len() < size {
        let candidate = tree.children[root]
            .iter()
            .flat_map(|&c| sorted_difference(&tree.bags[c], &tree.bags[root]))
            .min();
        match candidate {
            Some(v) => insert_sorted(&mut tree.bags[root], v),
            None => {
                let child = tree.children[root][0];
                let grandchildren = std::mem::take(&mut tree.children[child]);
                tree.alive[child] = false;
                tree.children[root].splice(0..1, grandchildren);
            }
        }
    }
    for i in tree.top_down() {
        let kids = tree.children[i].clone();
        for c in kids {
            let mut extra = sorted_difference(&tree.bags[i], &tree.bags[c]).into_iter();
            while tree.bags[c].len() < size {
                let v = extra.next().expect("parent bag is full");
                insert_sorted(&mut tree.bags[c], v);
            }
        }
    }

    // (b) Refinement: chains of single-vertex exchanges along every tree edge.
    for parent in tree.top_down() {
        let kids = tree.children[parent].clone();
        let mut new_kids = Vec::with_capacity(kids.len());
        for child in kids {
            let out = sorted_difference(&tree.bags[parent], &tree.bags[child]);
            let inn = sorted_difference(&tree.bags[child], &tree.bags[parent]);
            if out.len() <= 1 {
                new_kids.push(child);
                continue;
            }
            let mut bag = tree.bags[parent].clone();
            let mut chain = Vec::new();
            for t in 0..out.len() - 1 {
                bag.retain(|&v| v != out[t]);
                insert_sorted(&mut bag, inn[t]);
                chain.push(bag.clone());
            }
            let mut below = child;
            for bag in chain.into_iter().rev() {
                below = tree.push(bag, vec![below]);
            }
            new_kids.push(below);
        }
        tree.children[parent] = new_kids;
    }

    // (c) Left combs.
    let mut nodes: Vec<SmoothNode> = Vec::new();
    let mut entry = vec![usize::MAX; tree.bags.len()];
    let mut links: Vec<(usize, usize)> = Vec::new();
    let order = tree.top_down();
    for &u in &order {
        let bag = tree.bags[u].clone();
        let kids = &tree.children[u];
        if kids.is_empty() {
            entry[u] = nodes.len();
            nodes.push(SmoothNode {
                bag,
                kind: NodeKind::Leaf { edges: Vec::new() },
            });
            continue;
        }
        let first = nodes.len();
        entry[u] = first;
        for (t, &c) in kids.iter().enumerate() {
            nodes.push(SmoothNode {
                bag: bag.clone(),
                kind: NodeKind::Internal {
                    left: first + t + 1,
                    right: usize::MAX,
                    swap: None,
                },
            });
            links.push((first + t, c));
        }
        nodes.push(SmoothNode {
            bag,
            kind: NodeKind::Leaf { edges: Vec::new() },
        });
    }
    for (node, child) in links {
        if let NodeKind::Internal { right, .. } = &mut nodes[node].kind {
            *right = entry[child];
        }
    }
    let mut root_index = entry[root];
    if nodes[root_index].is_leaf() {
        // A lone bag still needs an internal root: two leaf copies under it.
        let bag = nodes[root_index].bag.clone();
        root_index = nodes.len();
        nodes.push(SmoothNode {
            bag: bag.clone(),
            kind: NodeKind::Internal {
                left: entry[root],
                right: root_index + 1,
                swap: None,
            },
        });
        nodes.push(SmoothNode {
            bag,
            kind: NodeKind::Leaf { edges: Vec::new() },
        });
    }
    let mut sd = SmoothDecomposition {
        width: target_width,
        root: root_index,
        nodes,
    };

    // (d) Representatives: the first preorder leaf holding both endpoints.
    let mut assigned = vec![false; g.edge_count()];
    for i in sd.preorder() {
        let node = &mut sd.nodes[i];
        if let NodeKind::Leaf { edges } = &mut node.kind {
            for (a, &u) in node.bag.iter().enumerate() {
                for &v in &node.bag[a + 1..] {
                    if let Some(e) = g.edge_id(u, v) {
                        if !assigned[e.0] {
                            assigned[e.0] = true;
                            edges.push(e);
                        }
                    }
                }
            }
            edges.sort_unstable();
        }
    }
    debug_assert!(assigned.iter().all(|&a| a));

    // (e) Exchanges with right children.
    for i in 0..sd.nodes.len() {
        if let Some((_, r)) = sd.nodes[i].children() {
            let dropped = sorted_difference(&sd.nodes[i].bag, &sd.nodes[r].bag);
            let added = sorted_difference(&sd.nodes[r].bag, &sd.nodes[i].bag);
            let swap = match (dropped.as_slice(), added.as_slice()) {
                ([], []) => None,
                ([d], [a]) => Some(Swap {
                    dropped: *d,
                    added: *a,
                }),
                _ => unreachable!("refinement leaves single exchanges"),
            };
            if let NodeKind::Internal { swap: s, .. } = &mut sd.nodes[i].kind {
                *s = swap;
            }
        }
    }
    Ok(sd)
}

/// A broken smooth-decomposition invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SmoothViolation {
    BagSize {
        node: usize,
        size: usize,
    },
    Structure(String),
    LeftBagDiffers {
        node: usize,
    },
    Intersection {
        node: usize,
        child: usize,
        shared: usize,
    },
    Representation(String),
    SwapMismatch {
        node: usize,
    },
    /// An edge below the right child touches the dropped vertex, or one below the
    /// left child touches the added vertex.
    ExchangeTouched {
        node: usize,
        edge: EdgeId,
    },
    /// A vertex shared by left- and right-represented edges lies outside the bag
    /// minus the dropped vertex.
    SharedEndpoint {
        node: usize,
        vertex: Vertex,
    },
    Overlap {
        node: usize,
        edge: EdgeId,
    },
    Decomposition(String),
    TooManyNodes {
        nodes: usize,
        bound: usize,
    },
}

impl fmt::Display for SmoothViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Checks every smooth-decomposition invariant against `g`.
///
/// `original_bags`, when given, enables the node-count bound
/// `nodes <= 4 * (original_bags + vertices)`.
pub fn validate_smooth(
    g: &Graph,
    sd: &SmoothDecomposition,
    original_bags: Option<usize>,
) -> Result<(), Vec<SmoothViolation>> {
    let mut out = Vec::new();
    let size = sd.width + 1;
    let n = sd.nodes.len();
    if sd.root >= n {
        return Err(vec![SmoothViolation::Structure("root out of range".into())]);
    }
    for (i, node) in sd.nodes.iter().enumerate() {
        if node.bag.len() != size
            || node.bag.windows(2).any(|w| w[0] >= w[1])
            || node.bag.iter().any(|&v| v >= g.vertex_count())
        {
            out.push(SmoothViolation::BagSize {
                node: i,
                size: node.bag.len(),
            });
        }
    }
    // Tree shape: every node reached exactly once from the root.
    let mut reached = vec![0usize; n];
    let mut stack = vec![sd.root];
    while let Some(i) = stack.pop() {
        reached[i] += 1;
        if reached[i] > 1 {
            out.push(SmoothViolation::Structure(format!(
                "node {i} has several parents"
            )));
            return Err(out);
        }
        if let Some((l, r)) = sd.nodes[i].children() {
            if l >= n || r >= n {
                out.push(SmoothViolation::Structure(format!(
                    "node {i} has a missing child"
                )));
                return Err(out);
            }
            stack.push(l);
            stack.push(r);
        }
    }
    if let Some(i) = reached.iter().position(|&c| c == 0) {
        out.push(SmoothViolation::Structure(format!(
            "node {i} is unreachable"
        )));
    }
    if sd.nodes[sd.root].is_leaf() {
        out.push(SmoothViolation::Structure("root is a leaf".into()));
    }
    if !out.is_empty() {
        return Err(out);
    }

    let mut count = vec![0usize; g.edge_count()];
    for (i, node) in sd.nodes.iter().enumerate() {
        match &node.kind {
            NodeKind::Leaf { edges } => {
                for &e in edges {
                    if e.0 >= g.edge_count() {
                        out.push(SmoothViolation::Representation(format!(
                            "leaf {i} names unknown {e}"
                        )));
                        continue;
                    }
                    count[e.0] += 1;
                    let (u, v) = g.endpoints(e);
                    if node.bag.binary_search(&u).is_err() || node.bag.binary_search(&v).is_err() {
                        out.push(SmoothViolation::Representation(format!(
                            "leaf {i} represents {e} without holding both endpoints"
                        )));
                    }
                }
            }
            NodeKind::Internal { left, right, swap } => {
                if sd.nodes[*left].bag != node.bag {
                    out.push(SmoothViolation::LeftBagDiffers { node: i });
                }
                for &c in [left, right] {
                    let shared = node
                        .bag
                        .iter()
                        .filter(|v| sd.nodes[c].bag.binary_search(v).is_ok())
                        .count();
                    if shared + 1 < size {
                        out.push(SmoothViolation::Intersection {
                            node: i,
                            child: c,
                            shared,
                        });
                    }
                }
                let dropped = sorted_difference(&node.bag, &sd.nodes[*right].bag);
                let added = sorted_difference(&sd.nodes[*right].bag, &node.bag);
                let expected = match (dropped.as_slice(), added.as_slice()) {
                    ([], []) => Some(None),
                    ([d], [a]) => Some(Some(Swap {
                        dropped: *d,
                        added: *a,
                    })),
                    _ => None,
                };
                if expected != Some(*swap) {
                    out.push(SmoothViolation::SwapMismatch { node: i });
                }
            }
        }
    }
    for (e, &c) in count.iter().enumerate() {
        if c != 1 {
            out.push(SmoothViolation::Representation(format!(
                "edge e{e} is represented {c} times"
            )));
        }
    }

    let represented = sd.represented_edges();
    for (i, node) in sd.nodes.iter().enumerate() {
        let NodeKind::Internal { left, right, swap } = &node.kind else {
            continue;
        };
        let (el, er) = (&represented[*left], &represented[*right]);
        for e in el {
            if er.binary_search(e).is_ok() {
                out.push(SmoothViolation::Overlap { node: i, edge: *e });
            }
        }
        if let Some(s) = swap {
            for &e in er {
                let (u, v) = g.endpoints(e);
                if u == s.dropped || v == s.dropped {
                    out.push(SmoothViolation::ExchangeTouched { node: i, edge: e });
                }
            }
            for &e in el {
                let (u, v) = g.endpoints(e);
                if u == s.added || v == s.added {
                    out.push(SmoothViolation::ExchangeTouched { node: i, edge: e });
                }
            }
        }
        let mut left_touch = vec![false; g.vertex_count()];
        for &e in el {
            let (u, v) = g.endpoints(e);
            left_touch[u] = true;
            left_touch[v] = true;
        }
        let mut flagged = vec![false; g.vertex_count()];
        for &e in er {
            let (u, v) = g.endpoints(e);
            for x in [u, v] {
                if left_touch[x] && !flagged[x] {
                    flagged[x] = true;
                    let in_bag = node.bag.binary_search(&x).is_ok();
                    let is_dropped = swap.is_some_and(|s| s.dropped == x);
                    if !in_bag || is_dropped {
                        out.push(SmoothViolation::SharedEndpoint { node: i, vertex: x });
                    }
                }
            }
        }
    }

    if let Err(v) = validate_decomposition(g, &sd.to_tree_decomposition(g.vertex_count())) {
        let text: Vec<String> = v.iter().map(ToString::to_string).collect();
        out.push(SmoothViolation::Decomposition(text.join("; ")));
    }
    if let Some(bags) = original_bags {
        let bound = 4 * (bags + g.vertex_count());
        if n > bound {
            out.push(SmoothViolation::TooManyNodes { nodes: n, bound });
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}
