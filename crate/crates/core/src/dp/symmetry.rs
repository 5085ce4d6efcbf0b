//! Color relabelings acting on states.
//!
//! A state is a row of `c²` profile ids indexed by `x * c + y` for the 0-based
//! color pair `(x, y)`. A permutation `p` (with `p[x]` the image of `x`) moves
//! entry `(x, y)` to `(p[x], p[y])`. Canonical forms pick one row per orbit by
//! partition refinement with individualization.

pub type Perm = Vec<u8>;

/// `(outer ∘ inner)[x] = outer[inner[x]]`
pub fn compose(outer: &[u8], inner: &[u8]) -> Perm {
    inner.iter().map(|&x| outer[x as usize]).collect()
}

pub fn apply(row: &[u32], c: usize, p: &[u8], out: &mut [u32]) {
    for x in 0..c {
        let px = p[x] as usize;
        for y in 0..c {
            out[px * c + p[y] as usize] = row[x * c + y];
        }
    }
}

/// True if exchanging colors `x` and `y` leaves `row` unchanged.
pub fn swap_fixes(row: &[u32], c: usize, x: usize, y: usize) -> bool {
    if x == y {
        return true;
    }
    let t = |z: usize| {
        if z == x {
            y
        } else if z == y {
            x
        } else {
            z
        }
    };
    (0..c).all(|u| (0..c).all(|v| row[u * c + v] == row[t(u) * c + t(v)]))
}

/// Classes of mutually interchangeable colors, each ascending, ordered by
/// smallest member.
pub fn interchangeable_classes(row: &[u32], c: usize) -> Vec<Vec<u8>> {
    let mut class_of = vec![usize::MAX; c];
    let mut classes: Vec<Vec<u8>> = Vec::new();
    for x in 0..c {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = classes.len();
        class_of[x] = id;
        let mut members = vec![x as u8];
        for y in x + 1..c {
            if class_of[y] == usize::MAX && swap_fixes(row, c, x, y) {
                class_of[y] = id;
                members.push(y as u8);
            }
        }
        classes.push(members);
    }
    classes
}

/// Replaces `rank` by dense ranks of `keys` (equal keys share a rank, order by key).
fn densify<K: Ord + Clone>(keys: &[K], rank: &mut [u32]) -> usize {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    for (r, k) in rank.iter_mut().zip(keys) {
        *r = sorted.binary_search(k).unwrap() as u32;
    }
    sorted.len()
}

fn refine(row: &[u32], c: usize, rank: &mut [u32]) {
    let mut cells = {
        let mut r = rank.to_vec();
        r.sort_unstable();
        r.dedup();
        r.len()
    };
    loop {
        let keys: Vec<Vec<u64>> = (0..c)
            .map(|x| {
                let mut key = vec![rank[x] as u64, row[x * c + x] as u64];
                let mut around: Vec<u64> = (0..c)
                    .filter(|&y| y != x)
                    .map(|y| {
                        ((rank[y] as u64) << 56)
                            | ((row[x * c + y] as u64) << 28)
                            | row[y * c + x] as u64
                    })
                    .collect();
                around.sort_unstable();
                key.extend(around);
                key
            })
            .collect();
        let next = densify(&keys, rank);
        if next == cells {
            return;
        }
        cells = next;
    }
}

fn search(
    row: &[u32],
    c: usize,
    mut rank: Vec<u32>,
    best: &mut Option<(Vec<u32>, Perm)>,
    scratch: &mut Vec<u32>,
) {
    refine(row, c, &mut rank);
    let mut counts = vec![0usize; c];
    for &r in &rank {
        counts[r as usize] += 1;
    }
    let Some(cell) = counts.iter().position(|&n| n > 1) else {
        let perm: Perm = rank.iter().map(|&r| r as u8).collect();
        apply(row, c, &perm, scratch);
        if best
            .as_ref()
            .is_none_or(|(b, _)| scratch.as_slice() < b.as_slice())
        {
            *best = Some((scratch.clone(), perm));
        }
        return;
    };
    let members: Vec<usize> = (0..c).filter(|&x| rank[x] as usize == cell).collect();
    let symmetric = members[1..]
        .iter()
        .all(|&y| swap_fixes(row, c, members[0], y));
    let branches = if symmetric {
        &members[..1]
    } else {
        &members[..]
    };
    for &x in branches {
        let keys: Vec<(u32, bool)> = (0..c).map(|y| (rank[y], y != x)).collect();
        let mut next = vec![0; c];
        densify(&keys, &mut next);
        search(row, c, next, best, scratch);
    }
}

/// The canonical row of `row`'s orbit, written to `out`, and a permutation
/// mapping `row` onto it.
pub fn canonical_form(row: &[u32], c: usize, out: &mut [u32]) -> Perm {
    assert!(
        row.iter().all(|&id| id < 1 << 28),
        "profile id too large for canonical keys"
    );
    let mut best = None;
    let mut scratch = vec![0; c * c];
    search(row, c, vec![0; c], &mut best, &mut scratch);
    let (canon, perm) = best.expect("search always reaches a discrete partition");
    out.copy_from_slice(&canon);
    perm
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_perms(c: usize) -> Vec<Perm> {
        fn rec(prefix: &mut Perm, c: usize, out: &mut Vec<Perm>) {
            if prefix.len() == c {
                out.push(prefix.clone());
                return;
            }
            for x in 0..c as u8 {
                if !prefix.contains(&x) {
                    prefix.push(x);
                    rec(prefix, c, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), c, &mut out);
        out
    }

    fn permuted(row: &[u32], c: usize, p: &[u8]) -> Vec<u32> {
        let mut out = vec![0; c * c];
        apply(row, c, p, &mut out);
        out
    }

    #[test]
    fn canonical_form_is_orbit_invariant() {
        let c = 4;
        let rows: Vec<Vec<u32>> = vec![
            (0..16).map(|i| (i * 7 % 5) as u32).collect(),
            vec![0; 16],
            (0..16).map(|i| (i / 4 == i % 4) as u32).collect(),
            // two 2-cycles of "colored" relations; heavily symmetric but not fully
            vec![1, 2, 0, 0, 2, 1, 0, 0, 0, 0, 1, 2, 0, 0, 2, 1],
        ];
        for row in rows {
            let mut canon = vec![0; 16];
            let p = canonical_form(&row, c, &mut canon);
            assert_eq!(permuted(&row, c, &p), canon);
            for q in all_perms(c) {
                let moved = permuted(&row, c, &q);
                let mut other = vec![0; 16];
                canonical_form(&moved, c, &mut other);
                assert_eq!(other, canon);
            }
        }
    }

    #[test]
    fn classes_and_composition() {
        let row = vec![1, 0, 0, 0, 0, 0, 0, 0, 0];
        assert_eq!(interchangeable_classes(&row, 3), vec![vec![0], vec![1, 2]]);
        let p = vec![1, 2, 0];
        let q = vec![2, 0, 1];
        assert_eq!(compose(&p, &q), vec![0, 1, 2]);
        assert_eq!(permuted(&permuted(&row, 3, &q), 3, &p), row);
    }
}
