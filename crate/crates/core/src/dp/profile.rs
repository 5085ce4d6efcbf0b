//! Neighbor profiles over explicit vertex sets.
//!
//! For a fixed ordered color pair `(c1, c2)` a profile records, for the vertices
//! of one bag, which short alternating colored paths start there. These are the
//! readable reference definitions; the engine works on [`super::packed`] bit masks
//! and is tested against this module.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::decomposition::Swap;
use crate::graph::{Graph, Vertex};
use crate::star_check::EdgeColoring;

/// An ordered color pair `(c1, c2)`, both in `1..=c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorPair(pub u32, pub u32);

impl ColorPair {
    /// All `c²` ordered pairs in lexicographic order.
    pub fn all(c: usize) -> impl Iterator<Item = ColorPair> {
        let c = c as u32;
        (1..=c).flat_map(move |a| (1..=c).map(move |b| ColorPair(a, b)))
    }

    /// Position of the pair in [`ColorPair::all`].
    pub fn index(self, c: usize) -> usize {
        (self.0 as usize - 1) * c + (self.1 as usize - 1)
    }

    pub fn from_index(index: usize, c: usize) -> ColorPair {
        ColorPair((index / c + 1) as u32, (index % c + 1) as u32)
    }
}

pub type VertexSet = BTreeSet<Vertex>;
pub type PairSet = BTreeSet<(Vertex, Vertex)>;

/// The nine neighbor sets of one bag for one color pair `(c1, c2)`.
///
/// Paths use distinct consecutive edges; intermediate vertices may lie anywhere.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NeighborProfile {
    /// `v0` with a path `v0 v1 v2` colored `c1, c2`.
    pub starts_c1_c2: VertexSet,
    /// `v0` with a path `v0 v1 v2` colored `c2, c1`.
    pub starts_c2_c1: VertexSet,
    /// `(v0, v2)`, both in the bag, joined by a path colored `c1, c2`.
    pub ends_c1_c2: PairSet,
    /// `v0` with a path `v0 v1 v2 v3` colored `c1, c2, c1`.
    pub starts_c1_c2_c1: VertexSet,
    /// `v0` with a path `v0 v1 v2 v3` colored `c2, c1, c2`.
    pub starts_c2_c1_c2: VertexSet,
    /// `v0` incident to an edge colored `c1`.
    pub touches_c1: VertexSet,
    /// `v0` incident to an edge colored `c2`.
    pub touches_c2: VertexSet,
    /// Both orientations of every bag edge colored `c1`.
    pub edges_c1: PairSet,
    /// Both orientations of every bag edge colored `c2`.
    pub edges_c2: PairSet,
}

impl NeighborProfile {
    pub fn is_empty(&self) -> bool {
        *self == NeighborProfile::default()
    }

    /// Every vertex named by any of the nine sets.
    pub fn vertices(&self) -> VertexSet {
        let mut out = VertexSet::new();
        for s in [
            &self.starts_c1_c2,
            &self.starts_c2_c1,
            &self.starts_c1_c2_c1,
            &self.starts_c2_c1_c2,
            &self.touches_c1,
            &self.touches_c2,
        ] {
            out.extend(s.iter().copied());
        }
        for s in [&self.ends_c1_c2, &self.edges_c1, &self.edges_c2] {
            for &(a, b) in s {
                out.insert(a);
                out.insert(b);
            }
        }
        out
    }

    /// Structural invariants: members lie in `bag`, and every bag edge's first
    /// coordinate is recorded as touching that color.
    pub fn is_well_formed(&self, bag: &[Vertex]) -> bool {
        let in_bag = self.vertices().iter().all(|v| bag.binary_search(v).is_ok());
        let c1 = self
            .edges_c1
            .iter()
            .all(|(a, _)| self.touches_c1.contains(a));
        let c2 = self
            .edges_c2
            .iter()
            .all(|(a, _)| self.touches_c2.contains(a));
        in_bag && c1 && c2
    }
}

/// Colored adjacency: `color -> vertex -> neighbors`.
struct ColoredAdjacency(BTreeMap<u32, BTreeMap<Vertex, Vec<Vertex>>>);

impl ColoredAdjacency {
    fn new(g: &Graph, f: &EdgeColoring) -> Self {
        let mut map: BTreeMap<u32, BTreeMap<Vertex, Vec<Vertex>>> = BTreeMap::new();
        for (e, c) in f.colored() {
            let (u, v) = g.endpoints(e);
            let by_vertex = map.entry(c.0).or_default();
            by_vertex.entry(u).or_default().push(v);
            by_vertex.entry(v).or_default().push(u);
        }
        ColoredAdjacency(map)
    }

    fn neighbors(&self, v: Vertex, c: u32) -> &[Vertex] {
        self.0
            .get(&c)
            .and_then(|m| m.get(&v))
            .map_or(&[], Vec::as_slice)
    }

    /// Endpoints `last` of paths `v0 .. last` following `colors`, with distinct
    /// consecutive edges.
    fn path_ends(&self, v0: Vertex, colors: &[u32]) -> Vec<Vertex> {
        // (previous, current)
        let mut frontier = vec![(usize::MAX, v0)];
        for &c in colors {
            let mut next = Vec::new();
            for &(prev, cur) in &frontier {
                for &w in self.neighbors(cur, c) {
                    if w != prev {
                        next.push((cur, w));
                    }
                }
            }
            frontier = next;
        }
        frontier.into_iter().map(|(_, v)| v).collect()
    }
}

/// Evaluates the nine neighbor sets of `bag` under the partial coloring `f`.
pub fn neighbor_profile(
    g: &Graph,
    f: &EdgeColoring,
    bag: &[Vertex],
    pair: ColorPair,
) -> NeighborProfile {
    let adj = ColoredAdjacency::new(g, f);
    let ColorPair(c1, c2) = pair;
    let in_bag = |v: &Vertex| bag.contains(v);
    let mut p = NeighborProfile::default();
    for &v0 in bag {
        if !adj.path_ends(v0, &[c1, c2]).is_empty() {
            p.starts_c1_c2.insert(v0);
        }
        if !adj.path_ends(v0, &[c2, c1]).is_empty() {
            p.starts_c2_c1.insert(v0);
        }
        for v2 in adj.path_ends(v0, &[c1, c2]).into_iter().filter(in_bag) {
            p.ends_c1_c2.insert((v0, v2));
        }
        if !adj.path_ends(v0, &[c1, c2, c1]).is_empty() {
            p.starts_c1_c2_c1.insert(v0);
        }
        if !adj.path_ends(v0, &[c2, c1, c2]).is_empty() {
            p.starts_c2_c1_c2.insert(v0);
        }
        if !adj.neighbors(v0, c1).is_empty() {
            p.touches_c1.insert(v0);
        }
        if !adj.neighbors(v0, c2).is_empty() {
            p.touches_c2.insert(v0);
        }
        for &v1 in adj.neighbors(v0, c1).iter().filter(|v| in_bag(v)) {
            p.edges_c1.insert((v0, v1));
        }
        for &v1 in adj.neighbors(v0, c2).iter().filter(|v| in_bag(v)) {
            p.edges_c2.insert((v0, v1));
        }
    }
    p
}

/// `{ v0 | (v0, v1) ∈ pairs, v1 ∈ targets }`
fn sources_into(pairs: &PairSet, targets: &VertexSet) -> VertexSet {
    pairs
        .iter()
        .filter(|(_, v1)| targets.contains(v1))
        .map(|&(v0, _)| v0)
        .collect()
}

/// `{ v0 | (v1, v0) ∈ pairs, v1 ∈ sources }`
fn targets_from(pairs: &PairSet, sources: &VertexSet) -> VertexSet {
    pairs
        .iter()
        .filter(|(v1, _)| sources.contains(v1))
        .map(|&(_, v0)| v0)
        .collect()
}

/// `{ (a, b) | (a, m) ∈ first, (m, b) ∈ second }`
fn compose(first: &PairSet, second: &PairSet) -> PairSet {
    let mut out = PairSet::new();
    for &(a, m) in first {
        for &(m2, b) in second.range((m, 0)..=(m, Vertex::MAX)) {
            debug_assert_eq!(m, m2);
            out.insert((a, b));
        }
    }
    out
}

fn union_all<T: Ord + Clone>(sets: &[&BTreeSet<T>]) -> BTreeSet<T> {
    sets.iter().flat_map(|s| s.iter().cloned()).collect()
}

/// Cross-subtree contributions for the first five sets; the remaining four are
/// always empty.
pub fn bar_profile(left: &NeighborProfile, right: &NeighborProfile) -> NeighborProfile {
    let (l, r) = (left, right);
    let l8r9 = compose(&l.edges_c1, &r.edges_c2);
    let r8l9 = compose(&r.edges_c1, &l.edges_c2);
    let l9r8 = compose(&l.edges_c2, &r.edges_c1);
    let r9l8 = compose(&r.edges_c2, &l.edges_c1);
    NeighborProfile {
        starts_c1_c2: union_all(&[
            &sources_into(&l.edges_c1, &r.touches_c2),
            &sources_into(&r.edges_c1, &l.touches_c2),
        ]),
        starts_c2_c1: union_all(&[
            &sources_into(&l.edges_c2, &r.touches_c1),
            &sources_into(&r.edges_c2, &l.touches_c1),
        ]),
        ends_c1_c2: union_all(&[&l8r9, &r8l9]),
        starts_c1_c2_c1: union_all(&[
            &sources_into(&l.ends_c1_c2, &r.touches_c1),
            &sources_into(&l8r9, &l.touches_c1),
            &sources_into(&l.edges_c1, &r.starts_c2_c1),
            &sources_into(&r.ends_c1_c2, &l.touches_c1),
            &sources_into(&r8l9, &r.touches_c1),
            &sources_into(&r.edges_c1, &l.starts_c2_c1),
        ]),
        starts_c2_c1_c2: union_all(&[
            &targets_from(&l.ends_c1_c2, &r.touches_c2),
            &sources_into(&l9r8, &l.touches_c2),
            &sources_into(&l.edges_c2, &r.starts_c1_c2),
            &targets_from(&r.ends_c1_c2, &l.touches_c2),
            &sources_into(&r9l8, &r.touches_c2),
            &sources_into(&r.edges_c2, &l.starts_c1_c2),
        ]),
        ..NeighborProfile::default()
    }
}

/// Profile of the parent bag from the profiles of its two children: side sets
/// and cross contributions united, then the vertex added by the right child's
/// exchange removed (pairs containing it in either coordinate are dropped).
pub fn merge_profiles(
    left: &NeighborProfile,
    right: &NeighborProfile,
    swap: Option<Swap>,
) -> NeighborProfile {
    let bar = bar_profile(left, right);
    let mut out = NeighborProfile {
        starts_c1_c2: union_all(&[&left.starts_c1_c2, &right.starts_c1_c2, &bar.starts_c1_c2]),
        starts_c2_c1: union_all(&[&left.starts_c2_c1, &right.starts_c2_c1, &bar.starts_c2_c1]),
        ends_c1_c2: union_all(&[&left.ends_c1_c2, &right.ends_c1_c2, &bar.ends_c1_c2]),
        starts_c1_c2_c1: union_all(&[
            &left.starts_c1_c2_c1,
            &right.starts_c1_c2_c1,
            &bar.starts_c1_c2_c1,
        ]),
        starts_c2_c1_c2: union_all(&[
            &left.starts_c2_c1_c2,
            &right.starts_c2_c1_c2,
            &bar.starts_c2_c1_c2,
        ]),
        touches_c1: union_all(&[&left.touches_c1, &right.touches_c1]),
        touches_c2: union_all(&[&left.touches_c2, &right.touches_c2]),
        edges_c1: union_all(&[&left.edges_c1, &right.edges_c1]),
        edges_c2: union_all(&[&left.edges_c2, &right.edges_c2]),
    };
    if let Some(Swap { added, .. }) = swap {
        for s in [
            &mut out.starts_c1_c2,
            &mut out.starts_c2_c1,
            &mut out.starts_c1_c2_c1,
            &mut out.starts_c2_c1_c2,
            &mut out.touches_c1,
            &mut out.touches_c2,
        ] {
            s.remove(&added);
        }
        for s in [&mut out.ends_c1_c2, &mut out.edges_c1, &mut out.edges_c2] {
            s.retain(|&(a, b)| a != added && b != added);
        }
    }
    out
}

/// The six conditions two same-pair child profiles must meet to combine into a
/// valid coloring. Each of the first five rules out one way a two-colored
/// four-edge walk can straddle the two subtrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    /// Two-edge paths from both sides meeting at a bag vertex (L L R R).
    MeetingTwoPaths,
    /// Alternating bag edges from the two sides (L R L R).
    AlternatingBagEdges,
    /// A two-edge path on one side capped by edges of the other at both ends (R L L R).
    CappedTwoPath,
    /// A three-edge path on one side extended by one edge of the other (L L L R).
    ExtendedThreePath,
    /// A bag edge between a two-edge path and an edge of the other side (R R L R).
    BridgingBagEdge,
    /// No vertex carries the same color from both sides.
    Properness,
}

impl Condition {
    pub const ALL: [Condition; 6] = [
        Condition::MeetingTwoPaths,
        Condition::AlternatingBagEdges,
        Condition::CappedTwoPath,
        Condition::ExtendedThreePath,
        Condition::BridgingBagEdge,
        Condition::Properness,
    ];

    /// Roman numeral label, `i` through `vi`.
    pub fn label(self) -> &'static str {
        match self {
            Condition::MeetingTwoPaths => "i",
            Condition::AlternatingBagEdges => "ii",
            Condition::CappedTwoPath => "iii",
            Condition::ExtendedThreePath => "iv",
            Condition::BridgingBagEdge => "v",
            Condition::Properness => "vi",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Condition {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Condition::ALL
            .into_iter()
            .find(|c| c.label() == s.to_ascii_lowercase())
            .ok_or_else(|| format!("unknown condition `{s}`, expected one of i..vi"))
    }
}

fn disjoint(a: &VertexSet, b: &VertexSet) -> bool {
    a.intersection(b).next().is_none()
}

/// Conditions violated by a pair of same-pair child profiles, in label order.
pub fn violated_conditions(left: &NeighborProfile, right: &NeighborProfile) -> Vec<Condition> {
    let (l, r) = (left, right);
    let mut out = Vec::new();
    if !disjoint(&l.starts_c1_c2, &r.starts_c2_c1) || !disjoint(&l.starts_c2_c1, &r.starts_c1_c2) {
        out.push(Condition::MeetingTwoPaths);
    }
    // If (v0,v1) ∈ A8, (v1,v2) ∈ B9 then v0 ∉ B7 or v2 ∉ A6, for (A,B) = (L,R), (R,L).
    let alternating = |a: &NeighborProfile, b: &NeighborProfile| {
        compose(&a.edges_c1, &b.edges_c2)
            .iter()
            .any(|(v0, v2)| b.touches_c2.contains(v0) && a.touches_c1.contains(v2))
    };
    if alternating(l, r) || alternating(r, l) {
        out.push(Condition::AlternatingBagEdges);
    }
    // If (v1,v2) ∈ A3 then v1 ∉ B7 or v2 ∉ B6.
    let capped = |a: &NeighborProfile, b: &NeighborProfile| {
        a.ends_c1_c2
            .iter()
            .any(|(v1, v2)| b.touches_c2.contains(v1) && b.touches_c1.contains(v2))
    };
    if capped(l, r) || capped(r, l) {
        out.push(Condition::CappedTwoPath);
    }
    if !disjoint(&l.starts_c1_c2_c1, &r.touches_c2) || !disjoint(&r.starts_c1_c2_c1, &l.touches_c2)
    {
        out.push(Condition::ExtendedThreePath);
    }
    // If (v1,v2) ∈ A8 then v1 ∉ B2 or v2 ∉ B7.
    let bridging = |a: &NeighborProfile, b: &NeighborProfile| {
        a.edges_c1
            .iter()
            .any(|(v1, v2)| b.starts_c2_c1.contains(v1) && b.touches_c2.contains(v2))
    };
    if bridging(l, r) || bridging(r, l) {
        out.push(Condition::BridgingBagEdge);
    }
    if !disjoint(&l.touches_c1, &r.touches_c1) || !disjoint(&l.touches_c2, &r.touches_c2) {
        out.push(Condition::Properness);
    }
    out
}

/// True iff all six combination conditions hold.
pub fn compatible(left: &NeighborProfile, right: &NeighborProfile) -> bool {
    violated_conditions(left, right).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Color;

    fn set(vs: &[Vertex]) -> VertexSet {
        vs.iter().copied().collect()
    }

    fn pairs(ps: &[(Vertex, Vertex)]) -> PairSet {
        ps.iter().copied().collect()
    }

    #[test]
    fn two_edge_path_profile() {
        let g = Graph::path(3);
        let f = EdgeColoring::total(&[1, 2]);
        let p = neighbor_profile(&g, &f, &[0, 1, 2], ColorPair(1, 2));
        assert_eq!(p.starts_c1_c2, set(&[0]));
        assert_eq!(p.starts_c2_c1, set(&[2]));
        assert_eq!(p.ends_c1_c2, pairs(&[(0, 2)]));
        assert_eq!(p.touches_c1, set(&[0, 1]));
        assert_eq!(p.touches_c2, set(&[1, 2]));
        assert_eq!(p.edges_c1, pairs(&[(0, 1), (1, 0)]));
        assert_eq!(p.edges_c2, pairs(&[(1, 2), (2, 1)]));
        assert!(p.starts_c1_c2_c1.is_empty() && p.starts_c2_c1_c2.is_empty());
        assert!(p.is_well_formed(&[0, 1, 2]));
    }

    #[test]
    fn empty_coloring_profile() {
        let g = Graph::path(3);
        let p = neighbor_profile(&g, &EdgeColoring::new(2), &[0, 1, 2], ColorPair(1, 2));
        assert!(p.is_empty());
    }

    #[test]
    fn diagonal_pairs_have_no_paths() {
        let g = Graph::path(5);
        let f = EdgeColoring::total(&[1, 2, 3, 1]);
        for c in 1..=3 {
            let p = neighbor_profile(&g, &f, &[0, 1, 2, 3, 4], ColorPair(c, c));
            assert!(p.starts_c1_c2.is_empty() && p.starts_c2_c1.is_empty());
            assert!(p.ends_c1_c2.is_empty());
            assert!(p.starts_c1_c2_c1.is_empty() && p.starts_c2_c1_c2.is_empty());
            assert_eq!(p.touches_c1, p.touches_c2);
        }
    }

    #[test]
    fn three_paths_reach_outside_the_bag() {
        let g = Graph::path(4);
        let mut f = EdgeColoring::new(3);
        for (i, c) in [1, 2, 1].into_iter().enumerate() {
            f.set(crate::graph::EdgeId(i), Color(c));
        }
        let p = neighbor_profile(&g, &f, &[0], ColorPair(1, 2));
        assert_eq!(p.starts_c1_c2_c1, set(&[0]));
        assert_eq!(p.starts_c1_c2, set(&[0]));
        assert!(p.ends_c1_c2.is_empty());
    }

    #[test]
    fn merge_single_clause() {
        let left = NeighborProfile {
            edges_c1: pairs(&[(0, 1)]),
            ..Default::default()
        };
        let right = NeighborProfile {
            touches_c2: set(&[1]),
            ..Default::default()
        };
        let m = merge_profiles(&left, &right, None);
        assert_eq!(
            m,
            NeighborProfile {
                starts_c1_c2: set(&[0]),
                edges_c1: pairs(&[(0, 1)]),
                touches_c2: set(&[1]),
                ..Default::default()
            }
        );
        assert!(merge_profiles(&Default::default(), &Default::default(), None).is_empty());
    }

    #[test]
    fn merge_three_path_clause() {
        let left = NeighborProfile {
            ends_c1_c2: pairs(&[(0, 1)]),
            ..Default::default()
        };
        let right = NeighborProfile {
            touches_c1: set(&[1]),
            ..Default::default()
        };
        assert!(merge_profiles(&left, &right, None)
            .starts_c1_c2_c1
            .contains(&0));
    }

    #[test]
    fn merge_removes_added_vertex() {
        let left = NeighborProfile {
            edges_c1: pairs(&[(0, 1), (1, 0)]),
            touches_c1: set(&[0, 1]),
            ..Default::default()
        };
        let right = NeighborProfile {
            edges_c2: pairs(&[(1, 2), (2, 1)]),
            touches_c2: set(&[1, 2]),
            ..Default::default()
        };
        let m = merge_profiles(
            &left,
            &right,
            Some(Swap {
                dropped: 0,
                added: 2,
            }),
        );
        assert!(m.vertices().iter().all(|&v| v != 2));
        assert_eq!(m.starts_c1_c2, set(&[0]));
        assert_eq!(m.ends_c1_c2, PairSet::new());
    }

    #[test]
    fn conditions() {
        let a = NeighborProfile {
            starts_c1_c2: set(&[3]),
            ..Default::default()
        };
        let b = NeighborProfile {
            starts_c2_c1: set(&[3]),
            ..Default::default()
        };
        assert_eq!(
            violated_conditions(&a, &b),
            vec![Condition::MeetingTwoPaths]
        );
        assert!(compatible(&Default::default(), &Default::default()));
        let c = NeighborProfile {
            touches_c1: set(&[3]),
            ..Default::default()
        };
        assert_eq!(violated_conditions(&c, &c), vec![Condition::Properness]);
    }

    #[test]
    fn condition_labels_roundtrip() {
        for c in Condition::ALL {
            assert_eq!(c.label().parse::<Condition>().unwrap(), c);
        }
        assert!("vii".parse::<Condition>().is_err());
    }

    #[test]
    fn pair_indexing() {
        let all: Vec<_> = ColorPair::all(3).collect();
        assert_eq!(all.len(), 9);
        for (i, p) in all.iter().enumerate() {
            assert_eq!(p.index(3), i);
            assert_eq!(ColorPair::from_index(i, 3), *p);
        }
    }
}
