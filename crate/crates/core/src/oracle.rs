//! Exhaustive backtracking for star edge colorings. Slow, simple, and the
//! reference the dynamic program is checked against.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Color, EdgeId, Graph};
use crate::outcome::{Decision, Exhausted, IndexOutcome};
use crate::star_check::{conflicts_at, EdgeColoring};

/// Default limit on color assignments tried per decision.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteResult {
    pub decision: Decision,
    pub nodes_expanded: u64,
}

/// Edges in BFS order from the highest-degree vertex (smallest index on ties);
/// further components restart from their own highest-degree vertex.
pub fn search_order(g: &Graph) -> Vec<EdgeId> {
    let n = g.vertex_count();
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut seen_vertex = vec![false; n];
    let mut seen_edge = vec![false; g.edge_count()];
    let mut order = Vec::with_capacity(g.edge_count());
    for s in starts {
        if seen_vertex[s] {
            continue;
        }
        seen_vertex[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &(w, e) in g.neighbors(v) {
                if !seen_edge[e.0] {
                    seen_edge[e.0] = true;
                    order.push(e);
                }
                if !seen_vertex[w] {
                    seen_vertex[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

/// Decides whether `g` has a star edge coloring with colors `1..=c`.
///
/// Edge `j` of the search order may only use colors up to one more than the
/// largest color among earlier edges, which removes color-permutation symmetry.
/// `budget` caps the number of color assignments tried.
pub fn decide_bruteforce(g: &Graph, c: usize, budget: u64) -> BruteResult {
    let order = search_order(g);
    let m = order.len();
    let c = c as u32;
    let mut colors = vec![0u32; g.edge_count()];
    let mut prefix_max = vec![0u32; m + 1];
    let mut tried = vec![0u32; m];
    let mut nodes = 0u64;
    let mut i = 0usize;
    let decision = loop {
        if i == m {
            let f = EdgeColoring::from_colors(colors.iter().map(|&x| Some(Color(x))).collect());
            break Decision::Colorable(f);
        }
        let e = order[i];
        let limit = c.min(prefix_max[i] + 1);
        let mut placed = false;
        let mut col = tried[i] + 1;
        while col <= limit {
            nodes += 1;
            if nodes > budget {
                return BruteResult {
                    decision: Decision::Indeterminate(Exhausted::NodeBudget { limit: budget }),
                    nodes_expanded: nodes - 1,
                };
            }
            colors[e.0] = col;
            if !conflicts_at(g, &colors, e) {
                placed = true;
                break;
            }
            col += 1;
        }
        if placed {
            tried[i] = col;
            prefix_max[i + 1] = prefix_max[i].max(col);
            i += 1;
            if i < m {
                tried[i] = 0;
            }
        } else {
            colors[e.0] = 0;
            tried[i] = 0;
            if i == 0 {
                break Decision::NotColorable;
            }
            i -= 1;
        }
    };
    BruteResult {
        decision,
        nodes_expanded: nodes,
    }
}

/// Smallest `c` in `[max_degree, c_max]` admitting a star edge coloring.
pub fn star_chromatic_index_bruteforce(
    g: &Graph,
    c_max: usize,
    budget: u64,
) -> Result<IndexOutcome> {
    let delta = g.max_degree();
    if c_max < delta {
        return Err(Error::InvalidParameters(format!(
            "c_max = {c_max} is below the maximum degree {delta}"
        )));
    }
    for c in delta..=c_max {
        match decide_bruteforce(g, c, budget).decision {
            Decision::Colorable(coloring) => return Ok(IndexOutcome::Found { index: c, coloring }),
            Decision::NotColorable => {}
            Decision::Indeterminate(reason) => {
                return Ok(IndexOutcome::Indeterminate { c, reason })
            }
        }
    }
    Ok(IndexOutcome::AboveMax { c_max })
}
