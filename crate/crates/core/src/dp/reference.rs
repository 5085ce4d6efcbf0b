//! Table computation on explicit sets, one node at a time. Slow; used to check
//! the packed engine and to expose intermediate tables.

use std::collections::HashMap;

use super::class_fn::{color_class_function, ColorClassFunction};
use super::profile::{merge_profiles, violated_conditions, Condition};
use super::{leaf_colorings, Witness};
use crate::decomposition::{NodeKind, SmoothDecomposition, SmoothNode, Swap};
use crate::graph::{Color, Graph};
use crate::star_check::EdgeColoring;

/// Distinct states known active at one node, each with how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DpNodeTable {
    pub states: Vec<ColorClassFunction>,
    pub witnesses: Vec<Witness>,
}

impl DpNodeTable {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    fn insert(
        &mut self,
        index: &mut HashMap<ColorClassFunction, usize>,
        state: ColorClassFunction,
        w: Witness,
    ) {
        if !index.contains_key(&state) {
            index.insert(state.clone(), self.states.len());
            self.states.push(state);
            self.witnesses.push(w);
        }
    }
}

/// States of a leaf: one per distinct class function over its valid colorings,
/// witnessed by the first coloring producing it.
pub fn enumerate_leaf_states(g: &Graph, leaf: &SmoothNode, c: usize) -> DpNodeTable {
    let NodeKind::Leaf { edges } = &leaf.kind else {
        panic!("enumerate_leaf_states called on an internal node");
    };
    let mut table = DpNodeTable::default();
    let mut index = HashMap::new();
    for colors in leaf_colorings(g, &leaf.bag, edges, c, false) {
        let mut f = EdgeColoring::new(g.edge_count());
        for (&e, &col) in edges.iter().zip(&colors) {
            f.set(e, Color(col));
        }
        let state = color_class_function(g, &f, &leaf.bag, c);
        table.insert(
            &mut index,
            state,
            Witness::Leaf(colors.into_iter().map(Color).collect()),
        );
    }
    table
}

/// Pairwise merge of two child states, or `None` if some color pair violates a
/// combination condition.
pub fn combine_states(
    left: &ColorClassFunction,
    right: &ColorClassFunction,
    swap: Option<Swap>,
) -> Option<ColorClassFunction> {
    combine_states_except(left, right, swap, None)
}

/// [`combine_states`] ignoring one condition.
pub fn combine_states_except(
    left: &ColorClassFunction,
    right: &ColorClassFunction,
    swap: Option<Swap>,
    skip: Option<Condition>,
) -> Option<ColorClassFunction> {
    assert_eq!(left.colors(), right.colors());
    let mut merged = Vec::with_capacity(left.profiles().len());
    for (l, r) in left.profiles().iter().zip(right.profiles()) {
        if violated_conditions(l, r)
            .into_iter()
            .any(|v| Some(v) != skip)
        {
            return None;
        }
        merged.push(merge_profiles(l, r, swap));
    }
    Some(ColorClassFunction::new(left.colors(), merged))
}

/// All compatible combinations of the child tables, left states outermost.
pub fn process_internal(node: &SmoothNode, left: &DpNodeTable, right: &DpNodeTable) -> DpNodeTable {
    let NodeKind::Internal { swap, .. } = node.kind else {
        panic!("process_internal called on a leaf");
    };
    let mut table = DpNodeTable::default();
    let mut index = HashMap::new();
    for (i, l) in left.states.iter().enumerate() {
        for (j, r) in right.states.iter().enumerate() {
            if let Some(state) = combine_states(l, r, swap) {
                table.insert(&mut index, state, Witness::Join(i, j));
            }
        }
    }
    table
}

/// Tables of every node, indexed by node id.
pub fn reference_tables(g: &Graph, sd: &SmoothDecomposition, c: usize) -> Vec<DpNodeTable> {
    let mut tables = vec![DpNodeTable::default(); sd.nodes.len()];
    for i in sd.postorder() {
        let node = sd.node(i);
        tables[i] = match node.kind {
            NodeKind::Leaf { .. } => enumerate_leaf_states(g, node, c),
            NodeKind::Internal { left, right, .. } => {
                process_internal(node, &tables[left], &tables[right])
            }
        };
    }
    tables
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{smooth, TreeDecomposition};
    use crate::dp::profile::{ColorPair, NeighborProfile};
    use crate::graph::EdgeId;

    fn leaf(bag: Vec<usize>, edges: Vec<usize>) -> SmoothNode {
        SmoothNode {
            bag,
            kind: NodeKind::Leaf {
                edges: edges.into_iter().map(EdgeId).collect(),
            },
        }
    }

    #[test]
    fn leaf_tables() {
        let g = Graph::path(3);
        let t = enumerate_leaf_states(&g, &leaf(vec![0, 1], vec![]), 2);
        assert_eq!(t.states, vec![ColorClassFunction::empty(2)]);
        assert_eq!(t.witnesses, vec![Witness::Leaf(vec![])]);
        assert_eq!(
            enumerate_leaf_states(&g, &leaf(vec![0, 1], vec![0]), 2).len(),
            2
        );
        assert_eq!(
            enumerate_leaf_states(&g, &leaf(vec![0, 1, 2], vec![0, 1]), 2).len(),
            2
        );
    }

    fn path3() -> (Graph, SmoothDecomposition) {
        let g = Graph::path(3);
        let td = TreeDecomposition::new(3, vec![vec![0, 1], vec![1, 2]], vec![(0, 1)]);
        let sd = smooth(&g, &td, 1).unwrap();
        (g, sd)
    }

    #[test]
    fn empty_states_combine_to_empty() {
        let e = ColorClassFunction::empty(3);
        assert_eq!(combine_states(&e, &e, None), Some(e.clone()));
        let swap = Swap {
            dropped: 0,
            added: 2,
        };
        assert_eq!(combine_states(&e, &e, Some(swap)), Some(e));
    }

    #[test]
    fn shared_vertex_same_color_is_incompatible() {
        let g = Graph::path(3);
        let mut left = EdgeColoring::new(2);
        left.set(EdgeId(0), Color(1));
        let mut right = EdgeColoring::new(2);
        right.set(EdgeId(1), Color(1));
        let l = color_class_function(&g, &left, &[0, 1], 2);
        let r = color_class_function(&g, &right, &[1, 2], 2);
        let swap = Some(Swap {
            dropped: 0,
            added: 2,
        });
        assert_eq!(combine_states(&l, &r, swap), None);
        assert_eq!(
            violated_conditions(l.profile_of(ColorPair(1, 1)), r.profile_of(ColorPair(1, 1))),
            vec![Condition::Properness]
        );
    }

    #[test]
    fn two_edge_path_root() {
        let (g, sd) = path3();
        let tables = reference_tables(&g, &sd, 2);
        let root = &tables[sd.root];
        assert_eq!(root.len(), 2);
        let Witness::Join(i, j) = root.witnesses[0] else {
            panic!("root must be a join")
        };
        let (l, r) = sd.node(sd.root).children().unwrap();
        let (Witness::Leaf(a), Witness::Leaf(b)) =
            (&tables[l].witnesses[i], &tables[r].witnesses[j])
        else {
            panic!("children are leaves")
        };
        let f = EdgeColoring::from_colors(vec![Some(a[0]), Some(b[0])]);
        assert_eq!(f, EdgeColoring::total(&[1, 2]));
        // The added vertex 2 leaves the bag; 0 still starts a two-colored path.
        let expected = NeighborProfile {
            starts_c1_c2: [0].into(),
            touches_c1: [0, 1].into(),
            touches_c2: [1].into(),
            edges_c1: [(0, 1), (1, 0)].into(),
            ..Default::default()
        };
        assert_eq!(*root.states[0].profile_of(ColorPair(1, 2)), expected);
        assert_eq!(root.states[0], color_class_function(&g, &f, &[0, 1], 2));
    }

    #[test]
    fn four_edge_path_needs_three_colors() {
        let g = Graph::path(5);
        let td = TreeDecomposition::new(
            5,
            (0..4).map(|i| vec![i, i + 1]).collect(),
            (0..3).map(|i| (i, i + 1)).collect(),
        );
        let sd = smooth(&g, &td, 1).unwrap();
        assert!(reference_tables(&g, &sd, 2)[sd.root].is_empty());
        assert!(!reference_tables(&g, &sd, 3)[sd.root].is_empty());
    }
}
