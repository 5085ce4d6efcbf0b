//! Tree decompositions: representation and validation, construction from
//! elimination orderings, and conversion to the smooth binary form the solver
//! runs on.

mod elimination;
mod smooth;
mod td;

pub use elimination::{
    decomposition_from_ordering, exact_small_decomposition, heuristic_decomposition,
    heuristic_ordering, ordering_width, Heuristic, DEFAULT_EXACT_LIMIT,
};
pub use smooth::{
    smooth, validate_smooth, NodeKind, SmoothDecomposition, SmoothNode, SmoothViolation, Swap,
};
pub use td::{emit_td, parse_td, validate_decomposition, TreeDecomposition, Violation};
