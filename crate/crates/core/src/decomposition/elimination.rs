//! Tree decompositions from vertex elimination orderings.

use std::collections::{BTreeSet, HashMap};
use std::str::FromStr;

use super::td::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Greedy rule for choosing the next vertex to eliminate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Heuristic {
    MinDegree,
    MinFill,
}

impl FromStr for Heuristic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "min-degree" | "mindegree" => Ok(Heuristic::MinDegree),
            "min-fill" | "minfill" => Ok(Heuristic::MinFill),
            other => Err(format!("unknown elimination heuristic `{other}`")),
        }
    }
}

/// Default vertex limit for [`exact_small_decomposition`].
pub const DEFAULT_EXACT_LIMIT: usize = 12;

/// Builds the decomposition induced by eliminating vertices in `order`.
///
/// Each vertex gets the bag `{v} ∪ N+(v)` where `N+(v)` is its neighborhood in the
/// fill graph at elimination time; the bag hangs below the bag of the first
/// eliminated vertex of `N+(v)`.
pub fn decomposition_from_ordering(g: &Graph, order: &[Vertex]) -> TreeDecomposition {
    let n = g.vertex_count();
    assert_eq!(order.len(), n, "ordering must list every vertex once");
    let mut position = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut adj: Vec<BTreeSet<Vertex>> = (0..n)
        .map(|v| g.neighbors(v).iter().map(|&(w, _)| w).collect())
        .collect();
    let mut bags = Vec::with_capacity(n);
    let mut higher: Vec<Vec<Vertex>> = Vec::with_capacity(n);
    for &v in order {
        let nbrs: Vec<Vertex> = adj[v].iter().copied().collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        for &a in &nbrs {
            adj[a].remove(&v);
        }
        let mut bag = nbrs.clone();
        bag.push(v);
        bags.push(bag);
        higher.push(nbrs);
    }
    let mut edges = Vec::new();
    for i in 0..n {
        match higher[i].iter().map(|&w| position[w]).min() {
            Some(p) => edges.push((i, p)),
            // A component root: attach to the final bag so the forest becomes one tree.
            None if i + 1 < n => edges.push((i, n - 1)),
            None => {}
        }
    }
    TreeDecomposition::new(n, bags, edges)
}

/// Greedy elimination-ordering decomposition. The width is an upper bound on treewidth.
pub fn heuristic_decomposition(g: &Graph, method: Heuristic) -> TreeDecomposition {
    decomposition_from_ordering(g, &heuristic_ordering(g, method))
}

pub fn heuristic_ordering(g: &Graph, method: Heuristic) -> Vec<Vertex> {
    let n = g.vertex_count();
    let mut adj: Vec<BTreeSet<Vertex>> = (0..n)
        .map(|v| g.neighbors(v).iter().map(|&(w, _)| w).collect())
        .collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    let fill = |adj: &[BTreeSet<Vertex>], v: Vertex| -> usize {
        let nbrs: Vec<_> = adj[v].iter().copied().collect();
        let mut missing = 0;
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if !adj[a].contains(&b) {
                    missing += 1;
                }
            }
        }
        missing
    };
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| match method {
                Heuristic::MinDegree => (adj[v].len(), 0, v),
                Heuristic::MinFill => (fill(&adj, v), adj[v].len(), v),
            })
            .unwrap();
        let nbrs: Vec<_> = adj[v].iter().copied().collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        for &a in &nbrs {
            adj[a].remove(&v);
        }
        adj[v].clear();
        alive[v] = false;
        order.push(v);
    }
    order
}

/// Width of the decomposition induced by `order`.
pub fn ordering_width(g: &Graph, order: &[Vertex]) -> usize {
    decomposition_from_ordering(g, order).width()
}

/// Minimum-width decomposition by branch and bound over elimination orderings.
pub fn exact_small_decomposition(g: &Graph, max_n: usize) -> Result<TreeDecomposition> {
    let n = g.vertex_count();
    if n > max_n || n > 30 {
        return Err(Error::TooLarge {
            vertices: n,
            limit: max_n.min(30),
        });
    }
    if n == 0 {
        return Ok(TreeDecomposition::new(0, vec![], vec![]));
    }
    let nbr_mask: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &(w, _)| m | 1 << w))
        .collect();
    let seed = heuristic_ordering(g, Heuristic::MinFill);
    let mut search = ExactSearch {
        n,
        nbr_mask,
        best_width: ordering_width(g, &seed),
        best_order: seed,
        seen: HashMap::new(),
        prefix: Vec::with_capacity(n),
    };
    search.run(0, 0);
    Ok(decomposition_from_ordering(g, &search.best_order))
}

struct ExactSearch {
    n: usize,
    nbr_mask: Vec<u32>,
    best_width: usize,
    best_order: Vec<Vertex>,
    /// Eliminated set -> smallest width with which it has been reached.
    seen: HashMap<u32, usize>,
    prefix: Vec<Vertex>,
}

impl ExactSearch {
    /// Vertices outside `eliminated ∪ {v}` reachable from `v` through eliminated vertices,
    /// i.e. the neighborhood of `v` in the fill graph.
    fn fill_neighbors(&self, eliminated: u32, v: Vertex) -> u32 {
        let mut visited = 1u32 << v;
        let mut stack = vec![v];
        let mut out = 0u32;
        while let Some(x) = stack.pop() {
            let mut m = self.nbr_mask[x] & !visited;
            while m != 0 {
                let w = m.trailing_zeros() as usize;
                m &= m - 1;
                visited |= 1 << w;
                if eliminated >> w & 1 == 1 {
                    stack.push(w);
                } else {
                    out |= 1 << w;
                }
            }
        }
        out
    }

    fn run(&mut self, eliminated: u32, width: usize) {
        if width >= self.best_width {
            return;
        }
        let remaining = self.n - self.prefix.len();
        // Any completion keeps every fill degree below `remaining`.
        if remaining == 0 || remaining - 1 <= width {
            let mut order = self.prefix.clone();
            order.extend((0..self.n).filter(|&v| eliminated >> v & 1 == 0));
            self.best_width = width;
            self.best_order = order;
            return;
        }
        match self.seen.get(&eliminated) {
            Some(&w) if w <= width => return,
            _ => {
                self.seen.insert(eliminated, width);
            }
        }
        let mut candidates: Vec<(usize, Vertex)> = (0..self.n)
            .filter(|&v| eliminated >> v & 1 == 0)
            .map(|v| (self.fill_neighbors(eliminated, v).count_ones() as usize, v))
            .collect();
        candidates.sort_unstable();
        for (degree, v) in candidates {
            let w = width.max(degree);
            if w >= self.best_width {
                break;
            }
            self.prefix.push(v);
            self.run(eliminated | 1 << v, w);
            self.prefix.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::td::validate_decomposition;
    use super::*;

    fn check(g: &Graph, td: &TreeDecomposition, width: usize) {
        assert_eq!(validate_decomposition(g, td), Ok(()));
        assert_eq!(td.width(), width);
    }

    #[test]
    fn heuristics_on_trees_have_width_one() {
        let tree = Graph::from_edges(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (5, 6)]);
        for h in [Heuristic::MinDegree, Heuristic::MinFill] {
            check(&tree, &heuristic_decomposition(&tree, h), 1);
        }
    }

    #[test]
    fn heuristics_on_c5_and_k4() {
        for h in [Heuristic::MinDegree, Heuristic::MinFill] {
            check(
                &Graph::cycle(5),
                &heuristic_decomposition(&Graph::cycle(5), h),
                2,
            );
            check(
                &Graph::complete(4),
                &heuristic_decomposition(&Graph::complete(4), h),
                3,
            );
        }
    }

    #[test]
    fn disconnected_input_still_yields_tree() {
        let g = Graph::from_edges(5, [(0, 1), (3, 4)]);
        check(&g, &heuristic_decomposition(&g, Heuristic::MinFill), 1);
    }

    #[test]
    fn exact_known_widths() {
        check(
            &Graph::cycle(5),
            &exact_small_decomposition(&Graph::cycle(5), 12).unwrap(),
            2,
        );
        check(
            &Graph::complete(4),
            &exact_small_decomposition(&Graph::complete(4), 12).unwrap(),
            3,
        );
        check(
            &Graph::path(2),
            &exact_small_decomposition(&Graph::path(2), 12).unwrap(),
            1,
        );
    }

    #[test]
    fn exact_matches_enumeration_of_orderings() {
        // Oracle: every permutation of a 6-vertex graph.
        let g = Graph::from_edges(
            6,
            [
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (0, 4),
                (4, 5),
                (5, 2),
                (1, 4),
            ],
        );
        let mut perm: Vec<usize> = (0..6).collect();
        let mut best = usize::MAX;
        permutations(&mut perm, 0, &mut |p| {
            best = best.min(ordering_width(&g, p))
        });
        let td = exact_small_decomposition(&g, 12).unwrap();
        check(&g, &td, best);
    }

    fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permutations(p, k + 1, f);
            p.swap(k, i);
        }
    }

    #[test]
    fn exact_rejects_large() {
        let err = exact_small_decomposition(&Graph::path(13), 12).unwrap_err();
        assert!(matches!(
            err,
            Error::TooLarge {
                vertices: 13,
                limit: 12
            }
        ));
    }
}
