//! Seeded random partial k-trees with their natural decompositions.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomposition::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Builds a random k-tree on `n` vertices, then keeps each edge independently
/// with probability `keep_prob`.
///
/// The k-tree grows from a `(k+1)`-clique by attaching each new vertex to a
/// uniformly chosen existing k-clique. The returned decomposition has one bag per
/// clique extension and width exactly `k`. Structure and edge deletion draw from
/// separate streams of the same seeded generator, so changing `keep_prob` never
/// changes the underlying k-tree.
pub fn gen_partial_ktree(
    n: usize,
    k: usize,
    keep_prob: f64,
    seed: u64,
) -> Result<(Graph, TreeDecomposition)> {
    if k < 1 {
        return Err(Error::InvalidParameters(format!(
            "k must be at least 1, got {k}"
        )));
    }
    if n < k + 1 {
        return Err(Error::InvalidParameters(format!(
            "need n >= k + 1, got n = {n}, k = {k}"
        )));
    }
    if !(0.0..=1.0).contains(&keep_prob) {
        return Err(Error::InvalidParameters(format!(
            "keep probability {keep_prob} outside [0, 1]"
        )));
    }
    let mut shape = ChaCha8Rng::seed_from_u64(seed);
    shape.set_stream(0);
    let mut thinning = ChaCha8Rng::seed_from_u64(seed);
    thinning.set_stream(1);

    let base: Vec<Vertex> = (0..=k).collect();
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    for u in 0..=k {
        for v in u + 1..=k {
            edges.push((u, v));
        }
    }
    let mut bags = vec![base.clone()];
    let mut tree_edges = Vec::new();
    // Every k-clique with a bag that contains it.
    let mut cliques: Vec<(Vec<Vertex>, usize)> = (0..=k)
        .map(|skip| (base.iter().copied().filter(|&v| v != skip).collect(), 0))
        .collect();
    for v in k + 1..n {
        let (clique, host) = cliques[shape.gen_range(0..cliques.len())].clone();
        for &u in &clique {
            edges.push((u, v));
        }
        let mut bag = clique.clone();
        bag.push(v);
        let id = bags.len();
        bags.push(bag);
        tree_edges.push((host, id));
        for &x in &clique {
            let mut next: Vec<Vertex> = clique.iter().copied().filter(|&u| u != x).collect();
            next.push(v);
            cliques.push((next, id));
        }
    }
    let kept: Vec<_> = edges
        .into_iter()
        .filter(|_| thinning.gen_bool(keep_prob))
        .collect();
    Ok((
        Graph::from_edges(n, kept),
        TreeDecomposition::new(n, bags, tree_edges),
    ))
}

/// Named graph families used for timing runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Path on `n` vertices.
    Path,
    /// Cycle on `n` vertices.
    Cycle,
    /// Star with `n` leaves.
    Star,
    /// Partial 2-tree on `n` vertices keeping each edge with probability 0.8.
    Ktree,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Path, Family::Cycle, Family::Star, Family::Ktree];

    /// The family member of size `n` with a decomposition of its natural width.
    /// Only the k-tree family uses `seed`.
    pub fn instance(self, n: usize, seed: u64) -> Result<(Graph, TreeDecomposition)> {
        let min = match self {
            Family::Path => 2,
            Family::Cycle | Family::Ktree => 3,
            Family::Star => 1,
        };
        if n < min {
            return Err(Error::InvalidParameters(format!(
                "{self} needs n >= {min}, got {n}"
            )));
        }
        let chain = |bags: Vec<Vec<Vertex>>| {
            let edges = (1..bags.len()).map(|i| (i - 1, i)).collect();
            (bags, edges)
        };
        let (g, (bags, tree_edges), vertices) = match self {
            Family::Path => (
                Graph::path(n),
                chain((0..n - 1).map(|i| vec![i, i + 1]).collect()),
                n,
            ),
            Family::Cycle => (
                Graph::cycle(n),
                chain((1..n - 1).map(|i| vec![0, i, i + 1]).collect()),
                n,
            ),
            Family::Star => (
                Graph::star(n),
                (
                    (1..=n).map(|i| vec![0, i]).collect(),
                    (1..n).map(|i| (0, i)).collect(),
                ),
                n + 1,
            ),
            Family::Ktree => return gen_partial_ktree(n, 2, 0.8, seed),
        };
        Ok((g, TreeDecomposition::new(vertices, bags, tree_edges)))
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.to_string() == s)
            .ok_or_else(|| format!("unknown family `{s}`, expected path, cycle, star or ktree"))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Star => "star",
            Family::Ktree => "ktree",
        })
    }
}

/// Largest vertex count accepted by [`connected_graphs`].
pub const MAX_EXHAUSTIVE_VERTICES: usize = 7;

/// One graph per isomorphism class of connected graphs with `2..=max_vertices`
/// vertices, each the labeling whose edge bitmask is smallest. Ordered by vertex
/// count, then by bitmask.
pub fn connected_graphs(max_vertices: usize) -> Result<Vec<Graph>> {
    if max_vertices > MAX_EXHAUSTIVE_VERTICES {
        return Err(Error::TooLarge {
            vertices: max_vertices,
            limit: MAX_EXHAUSTIVE_VERTICES,
        });
    }
    let mut out = Vec::new();
    for n in 2..=max_vertices {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let mut bit = vec![vec![0usize; n]; n];
        for (i, &(u, v)) in pairs.iter().enumerate() {
            bit[u][v] = i;
            bit[v][u] = i;
        }
        let perms = permutations(n);
        for mask in 0u64..1 << pairs.len() {
            if !connected(n, &pairs, mask) {
                continue;
            }
            let smallest = perms.iter().all(|p| {
                let mut moved = 0u64;
                for (i, &(u, v)) in pairs.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        moved |= 1 << bit[p[u]][p[v]];
                    }
                }
                moved >= mask
            });
            if smallest {
                let edges = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &e)| e);
                out.push(Graph::from_edges(n, edges));
            }
        }
    }
    Ok(out)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &out {
            for x in (0..n).filter(|x| !p.contains(x)) {
                let mut q = p.clone();
                q.push(x);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

fn connected(n: usize, pairs: &[(usize, usize)], mask: u64) -> bool {
    let mut reached = 1u32;
    loop {
        let mut next = reached;
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask & (1 << i) != 0 && (reached >> u & 1 == 1 || reached >> v & 1 == 1) {
                next |= (1 << u) | (1 << v);
            }
        }
        if next == reached {
            return reached == (1 << n) - 1;
        }
        reached = next;
    }
}
