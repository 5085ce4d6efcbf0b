use std::fmt;

use crate::star_check::EdgeColoring;

/// Why an exact search stopped without a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exhausted {
    /// The backtracking search expanded more nodes than allowed.
    NodeBudget { limit: u64 },
    /// A decomposition node accumulated more active states than allowed.
    StateCap { node: usize, limit: usize },
}

impl fmt::Display for Exhausted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exhausted::NodeBudget { limit } => write!(f, "node budget of {limit} exceeded"),
            Exhausted::StateCap { node, limit } => {
                write!(
                    f,
                    "state cap of {limit} exceeded at decomposition node {node}"
                )
            }
        }
    }
}

/// Answer to "is there a star edge coloring with at most `c` colors?".
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Colorable(EdgeColoring),
    NotColorable,
    Indeterminate(Exhausted),
}

impl Decision {
    pub fn is_colorable(&self) -> bool {
        matches!(self, Decision::Colorable(_))
    }

    /// `Some(true/false)` for definite answers.
    pub fn verdict(&self) -> Option<bool> {
        match self {
            Decision::Colorable(_) => Some(true),
            Decision::NotColorable => Some(false),
            Decision::Indeterminate(_) => None,
        }
    }

    pub fn coloring(&self) -> Option<&EdgeColoring> {
        match self {
            Decision::Colorable(f) => Some(f),
            _ => None,
        }
    }
}

/// Result of a search for the star chromatic index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexOutcome {
    Found {
        index: usize,
        coloring: EdgeColoring,
    },
    /// No star coloring with at most `c_max` colors.
    AboveMax { c_max: usize },
    /// The search for `c` colors was cut short.
    Indeterminate { c: usize, reason: Exhausted },
}

impl IndexOutcome {
    pub fn index(&self) -> Option<usize> {
        match self {
            IndexOutcome::Found { index, .. } => Some(*index),
            _ => None,
        }
    }
}
