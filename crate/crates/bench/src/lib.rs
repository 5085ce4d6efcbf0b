//! Prepared instances for the solver benchmarks.

use starchrom::generate::Family;
use starchrom::pipeline::smooth_decomposition;
use starchrom::pipeline::Method;
use starchrom::{Graph, SmoothDecomposition};

/// Seed for the k-tree family, fixed so runs are comparable.
pub const SEED: u64 = 7;

/// A graph with its smooth decomposition and the color count to decide.
pub struct Case {
    pub family: Family,
    pub n: usize,
    pub c: usize,
    pub graph: Graph,
    pub sd: SmoothDecomposition,
}

impl Case {
    /// Builds the family member of size `n`, deciding `max degree + extra`
    /// colors. Decomposition work happens here, outside the timed region.
    pub fn new(family: Family, n: usize, extra: usize) -> Case {
        let (graph, td) = family.instance(n, SEED).expect("family sizes are valid");
        let sd = smooth_decomposition(&graph, Some(&td), Method::Auto)
            .expect("family decompositions smooth");
        let c = graph.max_degree() + extra;
        Case {
            family,
            n,
            c,
            graph,
            sd,
        }
    }

    pub fn label(&self) -> String {
        format!("{}-{}-c{}", self.family, self.n, self.c)
    }
}
