use std::collections::BTreeMap;

use super::profile::{neighbor_profile, ColorPair, NeighborProfile};
use crate::graph::{Graph, Vertex};
use crate::star_check::EdgeColoring;

/// Total map from the `c²` ordered color pairs to neighbor profiles, stored in
/// [`ColorPair::all`] order so equal functions compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColorClassFunction {
    colors: usize,
    profiles: Vec<NeighborProfile>,
}

impl ColorClassFunction {
    /// Panics unless `profiles` has exactly `c²` entries.
    pub fn new(c: usize, profiles: Vec<NeighborProfile>) -> Self {
        assert_eq!(
            profiles.len(),
            c * c,
            "need one profile per ordered color pair"
        );
        ColorClassFunction {
            colors: c,
            profiles,
        }
    }

    /// Every pair mapped to the empty profile.
    pub fn empty(c: usize) -> Self {
        Self::new(c, vec![NeighborProfile::default(); c * c])
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    pub fn profile_of(&self, pair: ColorPair) -> &NeighborProfile {
        &self.profiles[pair.index(self.colors)]
    }

    pub fn profiles(&self) -> &[NeighborProfile] {
        &self.profiles
    }

    /// Pairs grouped by equal profile, each group in pair order, groups ordered
    /// by profile.
    pub fn classes(&self) -> BTreeMap<&NeighborProfile, Vec<ColorPair>> {
        let mut out: BTreeMap<&NeighborProfile, Vec<ColorPair>> = BTreeMap::new();
        for (pair, p) in ColorPair::all(self.colors).zip(&self.profiles) {
            out.entry(p).or_default().push(pair);
        }
        out
    }

    /// Rebuilds the function from a grouping of pairs. `None` unless the groups
    /// cover every pair exactly once.
    pub fn from_classes<'a, I>(c: usize, classes: I) -> Option<Self>
    where
        I: IntoIterator<Item = (&'a NeighborProfile, &'a [ColorPair])>,
    {
        let mut slots: Vec<Option<NeighborProfile>> = vec![None; c * c];
        for (profile, pairs) in classes {
            for &pair in pairs {
                if pair.0 == 0 || pair.1 == 0 || pair.0 as usize > c || pair.1 as usize > c {
                    return None;
                }
                let slot = &mut slots[pair.index(c)];
                if slot.is_some() {
                    return None;
                }
                *slot = Some(profile.clone());
            }
        }
        let profiles = slots.into_iter().collect::<Option<Vec<_>>>()?;
        Some(Self::new(c, profiles))
    }

    /// True when the induced grouping is a partition of all pairs into
    /// nonempty, disjoint classes and maps back to this function.
    pub fn is_partition(&self) -> bool {
        let classes = self.classes();
        let covered: usize = classes.values().map(Vec::len).sum();
        let nonempty = classes.values().all(|v| !v.is_empty());
        let rebuilt =
            Self::from_classes(self.colors, classes.iter().map(|(p, v)| (*p, v.as_slice())));
        covered == self.colors * self.colors && nonempty && rebuilt.as_ref() == Some(self)
    }
}

/// Neighbor profiles of `bag` under `f` for every ordered pair over `1..=c`.
pub fn color_class_function(
    g: &Graph,
    f: &EdgeColoring,
    bag: &[Vertex],
    c: usize,
) -> ColorClassFunction {
    let profiles = ColorPair::all(c)
        .map(|pair| neighbor_profile(g, f, bag, pair))
        .collect();
    ColorClassFunction::new(c, profiles)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let g = Graph::path(2);
        let f = EdgeColoring::total(&[1]);
        let cl = color_class_function(&g, &f, &[0, 1], 2);
        for pair in ColorPair::all(2) {
            let p = cl.profile_of(pair);
            assert_eq!(!p.touches_c1.is_empty(), pair.0 == 1);
            assert_eq!(!p.touches_c2.is_empty(), pair.1 == 1);
            assert_eq!(p.edges_c1.len(), if pair.0 == 1 { 2 } else { 0 });
            assert_eq!(p.edges_c2.len(), if pair.1 == 1 { 2 } else { 0 });
            assert!(p.starts_c1_c2.is_empty() && p.ends_c1_c2.is_empty());
        }
        assert!(cl.is_partition());
        assert_eq!(cl.classes().len(), 4);
    }

    #[test]
    fn empty_coloring_is_constant() {
        let g = Graph::path(4);
        let cl = color_class_function(&g, &EdgeColoring::new(3), &[0, 1], 3);
        assert_eq!(cl, ColorClassFunction::empty(3));
        assert_eq!(cl.classes().len(), 1);
    }

    #[test]
    fn consistent_with_single_pair() {
        let g = Graph::path(3);
        let f = EdgeColoring::total(&[1, 2]);
        let cl = color_class_function(&g, &f, &[0, 1, 2], 2);
        assert_eq!(
            *cl.profile_of(ColorPair(1, 2)),
            neighbor_profile(&g, &f, &[0, 1, 2], ColorPair(1, 2))
        );
    }

    #[test]
    fn rejects_overlapping_classes() {
        let empty = NeighborProfile::default();
        let pairs = [ColorPair(1, 1), ColorPair(1, 1)];
        assert!(ColorClassFunction::from_classes(1, [(&empty, &pairs[..])]).is_none());
        assert!(ColorClassFunction::from_classes(2, [(&empty, &pairs[..1])]).is_none());
    }
}
