//! Neighbor profiles as bit masks over a bag's local vertex indices.
//!
//! A bag has at most [`MAX_BAG`] vertices. Vertex sets are `u8` masks; pair sets
//! are `u64` masks with bit `8 * a + b` standing for the local pair `(a, b)`, so
//! byte `a` is the row of successors of `a`.

use super::profile::{Condition, NeighborProfile};
use crate::graph::Vertex;

pub const MAX_BAG: usize = 8;

const LOW_BITS: u64 = 0x0101_0101_0101_0101;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PackedProfile {
    pub starts_c1_c2: u8,
    pub starts_c2_c1: u8,
    pub starts_c1_c2_c1: u8,
    pub starts_c2_c1_c2: u8,
    pub touches_c1: u8,
    pub touches_c2: u8,
    pub ends_c1_c2: u64,
    pub edges_c1: u64,
    pub edges_c2: u64,
}

/// Byte `a` is `0xff` for every `a` in the set.
const ROW_MASK: [u64; 256] = {
    let mut table = [0u64; 256];
    let mut s = 0;
    while s < 256 {
        let mut a = 0;
        while a < 8 {
            if s & (1 << a) != 0 {
                table[s] |= 0xff << (8 * a);
            }
            a += 1;
        }
        s += 1;
    }
    table
};

#[inline]
fn rows(s: u8) -> u64 {
    ROW_MASK[s as usize]
}

#[inline]
fn cols(s: u8) -> u64 {
    (s as u64).wrapping_mul(LOW_BITS)
}

#[inline]
fn row(p: u64, a: usize) -> u8 {
    (p >> (8 * a)) as u8
}

/// Set of rows with any bit set.
#[inline]
fn nonzero_rows(x: u64) -> u8 {
    let mut y = x | (x >> 4);
    y |= y >> 2;
    y |= y >> 1;
    y &= LOW_BITS;
    (y.wrapping_mul(0x0102_0408_1020_4080) >> 56) as u8
}

/// `{ a | (a, b) ∈ p, b ∈ s }`
#[inline]
pub fn sources_into(p: u64, s: u8) -> u8 {
    nonzero_rows(p & cols(s))
}

/// `{ b | (a, b) ∈ p, a ∈ s }`
#[inline]
pub fn targets_from(p: u64, s: u8) -> u8 {
    let mut x = p & rows(s);
    x |= x >> 32;
    x |= x >> 16;
    x |= x >> 8;
    x as u8
}

/// `{ (a, b) | (a, m) ∈ p, (m, b) ∈ q }`
#[inline]
pub fn compose(p: u64, q: u64) -> u64 {
    let mut out = 0u64;
    let mut left = nonzero_rows(p);
    while left != 0 {
        let a = left.trailing_zeros() as usize;
        left &= left - 1;
        let mut mid = row(p, a);
        let mut acc = 0u8;
        while mid != 0 {
            let m = mid.trailing_zeros() as usize;
            mid &= mid - 1;
            acc |= row(q, m);
        }
        out |= (acc as u64) << (8 * a);
    }
    out
}

#[inline]
pub fn pair_bit(a: usize, b: usize) -> u64 {
    1u64 << (8 * a + b)
}

impl PackedProfile {
    /// Profile of a bag whose colored edges all lie inside it, given as local
    /// endpoint pairs with colors. The coloring must be proper.
    pub fn from_local_edges(edges: &[(usize, usize, u32)], c1: u32, c2: u32) -> Self {
        let mut p = PackedProfile::default();
        for &(a, b, col) in edges {
            let both = pair_bit(a, b) | pair_bit(b, a);
            let ends = (1u8 << a) | (1u8 << b);
            if col == c1 {
                p.edges_c1 |= both;
                p.touches_c1 |= ends;
            }
            if col == c2 {
                p.edges_c2 |= both;
                p.touches_c2 |= ends;
            }
        }
        if c1 != c2 {
            p.starts_c1_c2 = sources_into(p.edges_c1, p.touches_c2);
            p.starts_c2_c1 = sources_into(p.edges_c2, p.touches_c1);
            p.ends_c1_c2 = compose(p.edges_c1, p.edges_c2);
            p.starts_c1_c2_c1 = sources_into(p.ends_c1_c2, p.touches_c1);
            p.starts_c2_c1_c2 = sources_into(compose(p.edges_c2, p.edges_c1), p.touches_c2);
        }
        p
    }

    /// Drops local vertex `drop` (if any) and renames the rest through `map`.
    pub fn translate(&self, map: &[usize; MAX_BAG], drop: Option<usize>) -> Self {
        let keep: u8 = match drop {
            Some(d) => !(1u8 << d),
            None => 0xff,
        };
        let set = |s: u8| {
            let mut s = s & keep;
            let mut out = 0u8;
            while s != 0 {
                let a = s.trailing_zeros() as usize;
                s &= s - 1;
                out |= 1 << map[a];
            }
            out
        };
        let pairs = |p: u64| {
            let mut p = p & rows(keep) & cols(keep);
            let mut out = 0u64;
            while p != 0 {
                let bit = p.trailing_zeros() as usize;
                p &= p - 1;
                out |= pair_bit(map[bit / 8], map[bit % 8]);
            }
            out
        };
        PackedProfile {
            starts_c1_c2: set(self.starts_c1_c2),
            starts_c2_c1: set(self.starts_c2_c1),
            starts_c1_c2_c1: set(self.starts_c1_c2_c1),
            starts_c2_c1_c2: set(self.starts_c2_c1_c2),
            touches_c1: set(self.touches_c1),
            touches_c2: set(self.touches_c2),
            ends_c1_c2: pairs(self.ends_c1_c2),
            edges_c1: pairs(self.edges_c1),
            edges_c2: pairs(self.edges_c2),
        }
    }

    /// Packs a profile over `bag` (sorted). Panics on vertices outside the bag.
    pub fn pack(p: &NeighborProfile, bag: &[Vertex]) -> Self {
        let local = |v: &Vertex| bag.binary_search(v).expect("vertex outside bag");
        let set = |s: &std::collections::BTreeSet<Vertex>| {
            s.iter().fold(0u8, |acc, v| acc | 1 << local(v))
        };
        let pairs = |s: &std::collections::BTreeSet<(Vertex, Vertex)>| {
            s.iter()
                .fold(0u64, |acc, (a, b)| acc | pair_bit(local(a), local(b)))
        };
        PackedProfile {
            starts_c1_c2: set(&p.starts_c1_c2),
            starts_c2_c1: set(&p.starts_c2_c1),
            starts_c1_c2_c1: set(&p.starts_c1_c2_c1),
            starts_c2_c1_c2: set(&p.starts_c2_c1_c2),
            touches_c1: set(&p.touches_c1),
            touches_c2: set(&p.touches_c2),
            ends_c1_c2: pairs(&p.ends_c1_c2),
            edges_c1: pairs(&p.edges_c1),
            edges_c2: pairs(&p.edges_c2),
        }
    }

    /// Inverse of [`PackedProfile::pack`].
    /// Every vertex lies among the first `bag_len` positions and every colored
    /// edge starts at a vertex touching its color.
    pub fn is_well_formed(&self, bag_len: usize) -> bool {
        let vertices = if bag_len >= 8 {
            u8::MAX
        } else {
            (1u8 << bag_len) - 1
        };
        let pairs = (0..bag_len).fold(0u64, |acc, a| acc | (vertices as u64) << (8 * a));
        let sets = [
            self.starts_c1_c2,
            self.starts_c2_c1,
            self.starts_c1_c2_c1,
            self.starts_c2_c1_c2,
            self.touches_c1,
            self.touches_c2,
        ];
        sets.iter().all(|&s| s & !vertices == 0)
            && [self.ends_c1_c2, self.edges_c1, self.edges_c2]
                .iter()
                .all(|&p| p & !pairs == 0)
            && nonzero_rows(self.edges_c1) & !self.touches_c1 == 0
            && nonzero_rows(self.edges_c2) & !self.touches_c2 == 0
    }

    pub fn unpack(&self, bag: &[Vertex]) -> NeighborProfile {
        let set = |s: u8| {
            (0..bag.len())
                .filter(|a| s & (1 << a) != 0)
                .map(|a| bag[a])
                .collect()
        };
        let pairs = |p: u64| {
            (0..64)
                .filter(|bit| p & (1u64 << bit) != 0)
                .map(|bit| (bag[bit / 8], bag[bit % 8]))
                .collect()
        };
        NeighborProfile {
            starts_c1_c2: set(self.starts_c1_c2),
            starts_c2_c1: set(self.starts_c2_c1),
            ends_c1_c2: pairs(self.ends_c1_c2),
            starts_c1_c2_c1: set(self.starts_c1_c2_c1),
            starts_c2_c1_c2: set(self.starts_c2_c1_c2),
            touches_c1: set(self.touches_c1),
            touches_c2: set(self.touches_c2),
            edges_c1: pairs(self.edges_c1),
            edges_c2: pairs(self.edges_c2),
        }
    }
}

/// Merge of two child profiles already expressed over the parent bag, with the
/// right child's added vertex removed beforehand.
pub fn merge(l: &PackedProfile, r: &PackedProfile) -> PackedProfile {
    let l8r9 = compose(l.edges_c1, r.edges_c2);
    let r8l9 = compose(r.edges_c1, l.edges_c2);
    let bar1 = sources_into(l.edges_c1, r.touches_c2) | sources_into(r.edges_c1, l.touches_c2);
    let bar2 = sources_into(l.edges_c2, r.touches_c1) | sources_into(r.edges_c2, l.touches_c1);
    let bar4 = sources_into(l.ends_c1_c2, r.touches_c1)
        | sources_into(l8r9, l.touches_c1)
        | sources_into(l.edges_c1, r.starts_c2_c1)
        | sources_into(r.ends_c1_c2, l.touches_c1)
        | sources_into(r8l9, r.touches_c1)
        | sources_into(r.edges_c1, l.starts_c2_c1);
    let bar5 = targets_from(l.ends_c1_c2, r.touches_c2)
        | sources_into(compose(l.edges_c2, r.edges_c1), l.touches_c2)
        | sources_into(l.edges_c2, r.starts_c1_c2)
        | targets_from(r.ends_c1_c2, l.touches_c2)
        | sources_into(compose(r.edges_c2, l.edges_c1), r.touches_c2)
        | sources_into(r.edges_c2, l.starts_c1_c2);
    PackedProfile {
        starts_c1_c2: l.starts_c1_c2 | r.starts_c1_c2 | bar1,
        starts_c2_c1: l.starts_c2_c1 | r.starts_c2_c1 | bar2,
        ends_c1_c2: l.ends_c1_c2 | r.ends_c1_c2 | l8r9 | r8l9,
        starts_c1_c2_c1: l.starts_c1_c2_c1 | r.starts_c1_c2_c1 | bar4,
        starts_c2_c1_c2: l.starts_c2_c1_c2 | r.starts_c2_c1_c2 | bar5,
        touches_c1: l.touches_c1 | r.touches_c1,
        touches_c2: l.touches_c2 | r.touches_c2,
        edges_c1: l.edges_c1 | r.edges_c1,
        edges_c2: l.edges_c2 | r.edges_c2,
    }
}

fn violates(cond: Condition, l: &PackedProfile, r: &PackedProfile) -> bool {
    match cond {
        Condition::MeetingTwoPaths => {
            (l.starts_c1_c2 & r.starts_c2_c1) | (l.starts_c2_c1 & r.starts_c1_c2) != 0
        }
        Condition::AlternatingBagEdges => {
            let one = |a: &PackedProfile, b: &PackedProfile| {
                compose(a.edges_c1, b.edges_c2) & rows(b.touches_c2) & cols(a.touches_c1) != 0
            };
            one(l, r) || one(r, l)
        }
        Condition::CappedTwoPath => {
            let one = |a: &PackedProfile, b: &PackedProfile| {
                a.ends_c1_c2 & rows(b.touches_c2) & cols(b.touches_c1) != 0
            };
            one(l, r) || one(r, l)
        }
        Condition::ExtendedThreePath => {
            (l.starts_c1_c2_c1 & r.touches_c2) | (r.starts_c1_c2_c1 & l.touches_c2) != 0
        }
        Condition::BridgingBagEdge => {
            let one = |a: &PackedProfile, b: &PackedProfile| {
                a.edges_c1 & rows(b.starts_c2_c1) & cols(b.touches_c2) != 0
            };
            one(l, r) || one(r, l)
        }
        Condition::Properness => (l.touches_c1 & r.touches_c1) | (l.touches_c2 & r.touches_c2) != 0,
    }
}

/// All six conditions except `skip`, cheapest first.
pub fn compatible(l: &PackedProfile, r: &PackedProfile, skip: Option<Condition>) -> bool {
    const ORDER: [Condition; 6] = [
        Condition::Properness,
        Condition::MeetingTwoPaths,
        Condition::ExtendedThreePath,
        Condition::CappedTwoPath,
        Condition::BridgingBagEdge,
        Condition::AlternatingBagEdges,
    ];
    ORDER
        .into_iter()
        .filter(|&c| Some(c) != skip)
        .all(|c| !violates(c, l, r))
}

/// Conditions violated, in label order.
pub fn violated_conditions(l: &PackedProfile, r: &PackedProfile) -> Vec<Condition> {
    Condition::ALL
        .into_iter()
        .filter(|&c| violates(c, l, r))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_helpers() {
        let p = pair_bit(0, 3) | pair_bit(2, 1) | pair_bit(7, 7);
        assert_eq!(nonzero_rows(p), 0b1000_0101);
        assert_eq!(sources_into(p, 0b10), 0b100);
        assert_eq!(targets_from(p, 0b101), 0b1010);
        assert_eq!(nonzero_rows(u64::MAX), 0xff);
        assert_eq!(nonzero_rows(0), 0);
    }

    #[test]
    fn compose_chains_rows() {
        let p = pair_bit(0, 1) | pair_bit(4, 1);
        let q = pair_bit(1, 2) | pair_bit(1, 6);
        let out = compose(p, q);
        assert_eq!(
            out,
            pair_bit(0, 2) | pair_bit(0, 6) | pair_bit(4, 2) | pair_bit(4, 6)
        );
    }

    #[test]
    fn pack_roundtrip() {
        let bag = [3, 5, 9];
        let p = PackedProfile::from_local_edges(&[(0, 1, 1), (1, 2, 2)], 1, 2);
        assert_eq!(PackedProfile::pack(&p.unpack(&bag), &bag), p);
        assert_eq!(p.starts_c1_c2, 0b001);
        assert_eq!(p.ends_c1_c2, pair_bit(0, 2));
    }

    #[test]
    fn translate_moves_and_drops() {
        let p = PackedProfile::from_local_edges(&[(0, 1, 1), (1, 2, 2)], 1, 2);
        let mut map = [0usize; MAX_BAG];
        map[0] = 2;
        map[1] = 0;
        map[2] = 1;
        let t = p.translate(&map, Some(2));
        assert_eq!(t.edges_c1, pair_bit(2, 0) | pair_bit(0, 2));
        assert_eq!(t.edges_c2, 0);
        assert_eq!(t.ends_c1_c2, 0);
        assert_eq!(t.touches_c2, 0b001);
    }

    #[test]
    fn skip_disables_a_condition() {
        let p = PackedProfile {
            touches_c1: 1,
            ..Default::default()
        };
        assert!(!compatible(&p, &p, None));
        assert!(compatible(&p, &p, Some(Condition::Properness)));
        assert_eq!(violated_conditions(&p, &p), vec![Condition::Properness]);
    }
}
