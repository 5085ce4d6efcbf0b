//! Instance corpus and helpers shared by the integration tests.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use starchrom::decomposition::{exact_small_decomposition, smooth, NodeKind};
use starchrom::generate::{connected_graphs, gen_partial_ktree};
use starchrom::{
    is_star_valid, Color, EdgeColoring, EdgeId, Graph, SmoothDecomposition, TreeDecomposition,
};

/// Connected graphs in the exhaustive part of the corpus.
pub const EXHAUSTIVE_MAX_VERTICES: usize = 6;
pub const EXHAUSTIVE_MAX_DEGREE: usize = 4;
pub const KTREE_SEEDS: u64 = 50;
pub const KTREE_WIDTHS: [usize; 2] = [1, 2];
pub const KTREE_KEEP: [f64; 2] = [0.6, 1.0];
/// Extra colors tried above the maximum degree.
pub const COLOR_SLACK: usize = 3;

/// A connected component with edges, ready for the dynamic program.
pub struct Part {
    pub graph: Graph,
    pub td: TreeDecomposition,
    pub sd: SmoothDecomposition,
    /// Edge of the whole instance for each component edge.
    pub edge_map: Vec<EdgeId>,
}

pub struct Instance {
    pub name: String,
    pub graph: Graph,
    pub parts: Vec<Part>,
}

impl Instance {
    pub fn new(name: String, graph: Graph, td: &TreeDecomposition) -> Instance {
        let parts = graph
            .connected_components()
            .into_iter()
            .filter(|c| c.graph.edge_count() > 0)
            .map(|c| {
                let td = td.restrict(&c.vertex_map);
                let sd =
                    smooth(&c.graph, &td, td.width().max(1)).expect("corpus decompositions smooth");
                let edge_map = c
                    .graph
                    .edges()
                    .iter()
                    .map(|&(u, v)| graph.edge_id(c.vertex_map[u], c.vertex_map[v]).unwrap())
                    .collect();
                Part {
                    graph: c.graph,
                    td,
                    sd,
                    edge_map,
                }
            })
            .collect();
        Instance { name, graph, parts }
    }

    /// Color counts checked for this instance.
    pub fn colors(&self) -> std::ops::RangeInclusive<usize> {
        let d = self.graph.max_degree();
        d..=d + COLOR_SLACK
    }
}

/// Every connected graph with at most six vertices and maximum degree at most
/// four, one per isomorphism class, each with an optimal decomposition.
pub fn exhaustive_corpus() -> Vec<Instance> {
    connected_graphs(EXHAUSTIVE_MAX_VERTICES)
        .unwrap()
        .into_iter()
        .filter(|g| g.max_degree() <= EXHAUSTIVE_MAX_DEGREE)
        .enumerate()
        .map(|(i, g)| {
            let td = exact_small_decomposition(&g, EXHAUSTIVE_MAX_VERTICES).unwrap();
            Instance::new(format!("small-{i}"), g, &td)
        })
        .collect()
}

/// 200 seeded partial k-trees with 5 to 10 vertices and their natural
/// decompositions.
pub fn ktree_corpus() -> Vec<Instance> {
    let mut out = Vec::new();
    for k in KTREE_WIDTHS {
        for keep in KTREE_KEEP {
            for seed in 0..KTREE_SEEDS {
                let n = 5 + (seed as usize % 6);
                let (g, td) = gen_partial_ktree(n, k, keep, seed).unwrap();
                out.push(Instance::new(
                    format!("ktree-k{k}-p{keep}-s{seed}-n{n}"),
                    g,
                    &td,
                ));
            }
        }
    }
    out
}

pub fn corpus() -> Vec<Instance> {
    let mut all = exhaustive_corpus();
    all.extend(ktree_corpus());
    all
}

/// A copy of `sd` whose edges sit at a uniformly random leaf among those
/// holding both endpoints, instead of the first one in preorder.
pub fn rerepresent(g: &Graph, sd: &SmoothDecomposition, rng: &mut impl Rng) -> SmoothDecomposition {
    let mut out = sd.clone();
    for node in &mut out.nodes {
        if let NodeKind::Leaf { edges } = &mut node.kind {
            edges.clear();
        }
    }
    for e in g.edge_ids() {
        let (u, v) = g.endpoints(e);
        let hosts: Vec<usize> = (0..sd.nodes.len())
            .filter(|&i| {
                sd.nodes[i].is_leaf()
                    && sd.nodes[i].bag.contains(&u)
                    && sd.nodes[i].bag.contains(&v)
            })
            .collect();
        let leaf = *hosts.choose(rng).expect("every edge has a hosting leaf");
        if let NodeKind::Leaf { edges } = &mut out.nodes[leaf].kind {
            edges.push(e);
        }
    }
    out
}

/// A random star-valid coloring of `edges` with colors `1..=c`, or `None` if
/// greedy attempts keep failing.
pub fn random_partial_coloring(
    g: &Graph,
    edges: &[EdgeId],
    c: usize,
    rng: &mut impl Rng,
) -> Option<EdgeColoring> {
    'attempt: for _ in 0..50 {
        let mut order = edges.to_vec();
        order.shuffle(rng);
        let mut f = EdgeColoring::new(g.edge_count());
        for e in order {
            let mut palette: Vec<u32> = (1..=c as u32).collect();
            palette.shuffle(rng);
            let placed = palette.into_iter().any(|col| {
                f.set(e, Color(col));
                is_star_valid(g, &f)
            });
            if !placed {
                continue 'attempt;
            }
        }
        return Some(f);
    }
    None
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Coloring valid and within `c` colors on every edge of `g`.
pub fn witness_ok(g: &Graph, f: &EdgeColoring, c: usize) -> bool {
    f.len() == g.edge_count() && f.is_total() && f.max_color() as usize <= c && is_star_valid(g, f)
}
