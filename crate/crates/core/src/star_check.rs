//! Validity of (partial) star edge colorings.
//!
//! A bicolored walk here is a sequence of four distinct edges forming either a
//! path on five distinct vertices or a 4-cycle, every edge colored, using exactly
//! two colors. Uncolored edges never take part in a violation, so an invalid
//! partial coloring stays invalid under every extension.

use std::fmt;

use crate::graph::{Color, EdgeId, Graph, Vertex};

/// A partial map from edges to colors, indexed by [`EdgeId`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    colors: Vec<Option<Color>>,
}

impl EdgeColoring {
    /// All edges uncolored.
    pub fn new(edge_count: usize) -> Self {
        EdgeColoring {
            colors: vec![None; edge_count],
        }
    }

    pub fn from_colors(colors: Vec<Option<Color>>) -> Self {
        EdgeColoring { colors }
    }

    /// Total coloring from raw color values in edge-id order.
    pub fn total(values: &[u32]) -> Self {
        EdgeColoring {
            colors: values.iter().map(|&c| Some(Color(c))).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    #[inline]
    pub fn get(&self, e: EdgeId) -> Option<Color> {
        self.colors[e.0]
    }

    #[inline]
    pub fn set(&mut self, e: EdgeId, c: Color) {
        self.colors[e.0] = Some(c);
    }

    pub fn clear(&mut self, e: EdgeId) {
        self.colors[e.0] = None;
    }

    pub fn as_slice(&self) -> &[Option<Color>] {
        &self.colors
    }

    /// Colored edges in id order.
    pub fn colored(&self) -> impl Iterator<Item = (EdgeId, Color)> + '_ {
        self.colors
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.map(|c| (EdgeId(i), c)))
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    /// Largest color value in use, 0 if nothing is colored.
    pub fn max_color(&self) -> u32 {
        self.colored().map(|(_, c)| c.0).max().unwrap_or(0)
    }

    /// Keeps only the given edges colored.
    pub fn restricted_to(&self, edges: &[EdgeId]) -> EdgeColoring {
        let mut out = EdgeColoring::new(self.colors.len());
        for &e in edges {
            out.colors[e.0] = self.colors[e.0];
        }
        out
    }
}

/// Four edges forming a path `v0..v4` or, when `v0 == v4`, a 4-cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FourWalk {
    pub vertices: [Vertex; 5],
    pub edges: [EdgeId; 4],
}

impl FourWalk {
    pub fn is_cycle(&self) -> bool {
        self.vertices[0] == self.vertices[4]
    }
}

impl fmt::Display for FourWalk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.is_cycle() { "cycle" } else { "path" };
        let vs: Vec<String> = self.vertices.iter().map(ToString::to_string).collect();
        write!(f, "bicolored {kind} {}", vs.join("-"))
    }
}

/// Why a coloring is not a star edge coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarViolation {
    /// Two adjacent edges share a color.
    Improper(EdgeId, EdgeId),
    Bicolored(FourWalk),
}

/// Ok when no two colored edges sharing a vertex have equal colors; otherwise
/// the lexicographically first offending pair.
pub fn is_proper(g: &Graph, f: &EdgeColoring) -> Result<(), (EdgeId, EdgeId)> {
    for (e, c) in f.colored() {
        let (u, v) = g.endpoints(e);
        let mut clash: Option<EdgeId> = None;
        for x in [u, v] {
            for &(_, other) in g.neighbors(x) {
                if other > e && f.get(other) == Some(c) {
                    clash = Some(clash.map_or(other, |o: EdgeId| o.min(other)));
                }
            }
        }
        if let Some(other) = clash {
            return Err((e, other));
        }
    }
    Ok(())
}

/// Returns the bicolored four-edge path or cycle whose edge-id sequence is
/// lexicographically smallest, or `None`.
pub fn find_bicolored_four_walk(g: &Graph, f: &EdgeColoring) -> Option<FourWalk> {
    let color = |e: EdgeId| f.get(e).map(|c| c.0);
    for (e1, _) in f.colored() {
        let (a, b) = g.endpoints(e1);
        let mut best: Option<FourWalk> = None;
        for (v0, v1) in [(a, b), (b, a)] {
            for &(v2, e2) in g.neighbors(v1) {
                if v2 == v0 || color(e2).is_none() {
                    continue;
                }
                for &(v3, e3) in g.neighbors(v2) {
                    if v3 == v0 || v3 == v1 || color(e3).is_none() {
                        continue;
                    }
                    for &(v4, e4) in g.neighbors(v3) {
                        if v4 == v1 || v4 == v2 || color(e4).is_none() {
                            continue;
                        }
                        let cs = [e1, e2, e3, e4].map(|e| color(e).unwrap());
                        let mut distinct = cs.to_vec();
                        distinct.sort_unstable();
                        distinct.dedup();
                        if distinct.len() != 2 {
                            continue;
                        }
                        let walk = FourWalk {
                            vertices: [v0, v1, v2, v3, v4],
                            edges: [e1, e2, e3, e4],
                        };
                        if best.is_none_or(|b| walk.edges < b.edges) {
                            best = Some(walk);
                        }
                    }
                }
            }
        }
        if best.is_some() {
            return best;
        }
    }
    None
}

/// First violation in deterministic order, or `None` for a valid star coloring.
pub fn star_violation(g: &Graph, f: &EdgeColoring) -> Option<StarViolation> {
    if let Err((a, b)) = is_proper(g, f) {
        return Some(StarViolation::Improper(a, b));
    }
    find_bicolored_four_walk(g, f).map(StarViolation::Bicolored)
}

/// True iff the coloring is proper and has no bicolored four-edge path or cycle.
pub fn is_star_valid(g: &Graph, f: &EdgeColoring) -> bool {
    star_violation(g, f).is_none()
}

/// Incremental check for a freshly colored edge `e`, given that every other
/// colored edge already forms a valid star coloring. `colors` holds raw values
/// with 0 for uncolored. Only edges adjacent to `e` and four-edge walks through
/// `e` are inspected.
pub(crate) fn conflicts_at(g: &Graph, colors: &[u32], e: EdgeId) -> bool {
    let x = colors[e.0];
    debug_assert!(x != 0);
    let (a, b) = g.endpoints(e);
    for v in [a, b] {
        for &(_, other) in g.neighbors(v) {
            if other != e && colors[other.0] == x {
                return true;
            }
        }
    }
    // Under properness a two-colored four-walk alternates x, y, x, y. Each such
    // walk through e puts e first or second in one of its two directions.
    for (s, t) in [(a, b), (b, a)] {
        // e first: s t v2 v3 v4.
        for &(v2, e2) in g.neighbors(t) {
            let y = colors[e2.0];
            if y == 0 || v2 == s {
                continue;
            }
            for &(v3, e3) in g.neighbors(v2) {
                if colors[e3.0] != x || v3 == s || v3 == t {
                    continue;
                }
                for &(v4, e4) in g.neighbors(v3) {
                    if colors[e4.0] == y && v4 != t && v4 != v2 {
                        return true;
                    }
                }
            }
        }
        // e second: v0 s t v3 v4.
        for &(v0, e0) in g.neighbors(s) {
            let y = colors[e0.0];
            if y == 0 || v0 == t {
                continue;
            }
            for &(v3, e3) in g.neighbors(t) {
                if colors[e3.0] != y || v3 == s || v3 == v0 {
                    continue;
                }
                for &(v4, e4) in g.neighbors(v3) {
                    if colors[e4.0] == x && v4 != s && v4 != t {
                        return true;
                    }
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn colored(g: &Graph, values: &[u32]) -> EdgeColoring {
        assert_eq!(values.len(), g.edge_count());
        EdgeColoring::total(values)
    }

    #[test]
    fn properness() {
        let g = Graph::path(3);
        assert_eq!(is_proper(&g, &colored(&g, &[1, 2])), Ok(()));
        assert_eq!(
            is_proper(&g, &colored(&g, &[1, 1])),
            Err((EdgeId(0), EdgeId(1)))
        );
        let mut partial = EdgeColoring::new(2);
        partial.set(EdgeId(0), Color(1));
        assert_eq!(is_proper(&g, &partial), Ok(()));
    }

    #[test]
    fn four_edge_paths() {
        let g = Graph::path(5);
        let w = find_bicolored_four_walk(&g, &colored(&g, &[1, 2, 1, 2])).unwrap();
        assert_eq!(w.edges, [EdgeId(0), EdgeId(1), EdgeId(2), EdgeId(3)]);
        assert_eq!(w.vertices, [0, 1, 2, 3, 4]);
        assert!(!w.is_cycle());
        assert_eq!(
            find_bicolored_four_walk(&g, &colored(&g, &[1, 2, 3, 1])),
            None
        );
    }

    #[test]
    fn four_cycle() {
        let g = Graph::cycle(4);
        // Edges: (0,1) (0,3) (1,2) (2,3); alternate around the cycle.
        let f = colored(&g, &[1, 2, 2, 1]);
        let w = find_bicolored_four_walk(&g, &f).unwrap();
        assert!(w.is_cycle());
        assert!(!is_star_valid(&g, &f));
    }

    #[test]
    fn validity() {
        let g = Graph::path(5);
        assert!(is_star_valid(&g, &EdgeColoring::new(4)));
        assert!(is_star_valid(
            &Graph::star(3),
            &colored(&Graph::star(3), &[1, 2, 3])
        ));
        assert!(!is_star_valid(&g, &colored(&g, &[1, 2, 1, 2])));
    }

    #[test]
    fn uncolored_edges_break_walks() {
        let g = Graph::path(5);
        let mut f = colored(&g, &[1, 2, 1, 2]);
        f.clear(EdgeId(3));
        assert!(is_star_valid(&g, &f));
    }

    #[test]
    fn incremental_agrees_on_path() {
        let g = Graph::path(5);
        let mut raw = vec![1, 2, 1, 0];
        raw[3] = 2;
        assert!(conflicts_at(&g, &raw, EdgeId(3)));
        raw[3] = 3;
        assert!(!conflicts_at(&g, &raw, EdgeId(3)));
        raw[3] = 1;
        assert!(conflicts_at(&g, &raw, EdgeId(3)));
    }
}
