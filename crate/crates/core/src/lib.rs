//! Exact star edge coloring for graphs of bounded treewidth.
//!
//! A star edge coloring is a proper edge coloring in which no path or cycle of
//! four edges uses only two colors. This crate decides whether a graph admits
//! one with `c` colors by dynamic programming over a smooth tree decomposition,
//! and ships an exhaustive backtracking solver to check it against.
//!
//! ```
//! use starchrom::pipeline::{solve_index, Engine, SolveConfig};
//! use starchrom::Graph;
//!
//! let outcome = solve_index(&Graph::cycle(5), None, None, &SolveConfig::new(Engine::Dp)).unwrap();
//! assert_eq!(outcome.index(), Some(4));
//! ```

pub mod decomposition;
pub mod dp;
mod error;
pub mod generate;
mod graph;
pub mod oracle;
mod outcome;
pub mod pipeline;
pub mod star_check;

pub use decomposition::{SmoothDecomposition, TreeDecomposition};
pub use error::{Error, ParseError, Result};
pub use graph::{parse_graph, Color, Component, EdgeId, Graph, GraphFormat, Vertex};
pub use outcome::{Decision, Exhausted, IndexOutcome};
pub use star_check::{is_star_valid, EdgeColoring};
