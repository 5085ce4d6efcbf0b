//! Dynamic programming over smooth decompositions for star edge coloring.
//!
//! Every node keeps the set of color class functions realized by star-valid
//! colorings of the edges represented in its subtree. Leaves enumerate them
//! directly, internal nodes combine compatible child pairs, and the graph is
//! colorable exactly when the root keeps at least one.

mod class_fn;
mod engine;
pub mod packed;
mod profile;
mod reference;
mod symmetry;

pub use class_fn::{color_class_function, ColorClassFunction};
pub use engine::{
    check_instance, decide_dp, reconstruct, run_dp, star_chromatic_index_dp, DpConfig, DpRun,
    DpStats, PartitionCheck, DEFAULT_STATE_CAP, MAX_WIDTH,
};
pub use profile::{
    bar_profile, compatible, merge_profiles, neighbor_profile, violated_conditions, ColorPair,
    Condition, NeighborProfile, PairSet, VertexSet,
};
pub use reference::{
    combine_states, combine_states_except, enumerate_leaf_states, process_internal,
    reference_tables, DpNodeTable,
};

use crate::graph::{Color, EdgeId, Graph, Vertex};
use crate::star_check::conflicts_at;

/// How a stored state was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Colors of the leaf's represented edges, in the leaf's edge order.
    Leaf(Vec<Color>),
    /// Indices of the combined left and right child states.
    Join(usize, usize),
    /// A combination up to color relabeling: the state is `outer` applied to
    /// the merge of left state `left` with right state `right` relabeled by
    /// `inner`. Permutations map 0-based colors to their images.
    RelabeledJoin {
        left: usize,
        right: usize,
        inner: Vec<u8>,
        outer: Vec<u8>,
    },
}

/// All star-valid colorings with colors `1..=c` of `edges` (all inside `bag`),
/// in lexicographic order of color sequences. With `first_use`, only colorings
/// introducing colors in increasing order, one representative per relabeling.
pub(crate) fn leaf_colorings(
    g: &Graph,
    bag: &[Vertex],
    edges: &[EdgeId],
    c: usize,
    first_use: bool,
) -> Vec<Vec<u32>> {
    let local_of = |v: Vertex| bag.binary_search(&v).expect("leaf edge outside its bag");
    let local_pairs: Vec<(usize, usize)> = edges
        .iter()
        .map(|&e| {
            let (u, v) = g.endpoints(e);
            (local_of(u), local_of(v))
        })
        .collect();
    let local = Graph::from_edges(bag.len(), local_pairs.iter().copied());
    let ids: Vec<EdgeId> = local_pairs
        .iter()
        .map(|&(a, b)| local.edge_id(a, b).expect("edge just inserted"))
        .collect();
    let k = edges.len();
    let c = c as u32;
    let mut out = Vec::new();
    let mut colors = vec![0u32; k];
    // raw colors indexed by local edge id
    let mut raw = vec![0u32; k];
    let mut i = 0usize;
    loop {
        if i == k {
            out.push(colors.clone());
            if k == 0 {
                break;
            }
            i -= 1;
        }
        // advance position i to its next valid color
        let limit = if first_use {
            c.min(colors[..i].iter().copied().max().unwrap_or(0) + 1)
        } else {
            c
        };
        let mut next = colors[i] + 1;
        let mut placed = false;
        while next <= limit {
            raw[ids[i].0] = next;
            if !conflicts_at(&local, &raw, ids[i]) {
                placed = true;
                break;
            }
            next += 1;
        }
        if placed {
            colors[i] = next;
            i += 1;
        } else {
            colors[i] = 0;
            raw[ids[i].0] = 0;
            if i == 0 {
                break;
            }
            i -= 1;
        }
    }
    out
}
