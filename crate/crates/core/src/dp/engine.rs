use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use hashbrown::HashTable;
use rustc_hash::{FxBuildHasher, FxHasher};

use super::class_fn::ColorClassFunction;
use super::packed::{self, PackedProfile, MAX_BAG};
use super::profile::{ColorPair, Condition};
use super::reference::DpNodeTable;
use super::{leaf_colorings, symmetry, Witness};
use crate::decomposition::{NodeKind, SmoothDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Color, Graph};
use crate::outcome::{Decision, Exhausted, IndexOutcome};
use crate::star_check::EdgeColoring;

pub const DEFAULT_STATE_CAP: usize = 1_000_000;

/// Largest decomposition width the engine accepts.
pub const MAX_WIDTH: usize = MAX_BAG - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DpConfig {
    /// Most states any single node may hold before the run gives up.
    pub state_cap: usize,
    /// Treat one combination condition as always satisfied. For fault injection
    /// only; verdicts are unsound when set.
    pub skip_condition: Option<Condition>,
    /// Keep every node's states after the run so they can be inspected.
    pub keep_tables: bool,
    /// Keep one state per orbit under color relabeling instead of every state.
    /// Verdicts and witnesses are unaffected; tables hold orbit representatives.
    pub symmetry: bool,
}

impl Default for DpConfig {
    fn default() -> Self {
        DpConfig {
            state_cap: DEFAULT_STATE_CAP,
            skip_condition: None,
            keep_tables: false,
            symmetry: false,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DpStats {
    /// States per node, by node id; 0 for nodes never reached.
    pub table_sizes: Vec<usize>,
    pub peak_states: usize,
    /// Child state pairs examined over all internal nodes.
    pub combinations: u64,
}

#[derive(Default)]
struct Interner {
    list: Vec<PackedProfile>,
    index: HashMap<PackedProfile, u32, FxBuildHasher>,
}

impl Interner {
    fn intern(&mut self, p: PackedProfile) -> u32 {
        if let Some(&id) = self.index.get(&p) {
            return id;
        }
        let id = self.list.len() as u32;
        self.list.push(p);
        self.index.insert(p, id);
        id
    }
}

/// One node's states: `len` rows of `c²` profile ids into `profiles`.
#[derive(Default)]
struct PackedTable {
    profiles: Vec<PackedProfile>,
    states: Vec<u32>,
    len: usize,
}

struct TableBuilder {
    width: usize,
    interner: Interner,
    states: Vec<u32>,
    dedupe: HashTable<u32>,
    witnesses: Vec<Witness>,
}

fn hash_row(row: &[u32]) -> u64 {
    let mut h = FxHasher::default();
    row.hash(&mut h);
    h.finish()
}

impl TableBuilder {
    fn new(width: usize) -> Self {
        TableBuilder {
            width,
            interner: Interner::default(),
            states: Vec::new(),
            dedupe: HashTable::new(),
            witnesses: Vec::new(),
        }
    }

    fn len(&self) -> usize {
        self.witnesses.len()
    }

    /// Adds `row` unless an equal state is present; returns whether it was new.
    fn insert(&mut self, row: &[u32], w: impl FnOnce() -> Witness) -> bool {
        let hash = hash_row(row);
        let width = self.width;
        let states = &self.states;
        let found = self
            .dedupe
            .find(hash, |&s| {
                &states[s as usize * width..(s as usize + 1) * width] == row
            })
            .is_some();
        if found {
            return false;
        }
        let id = self.len() as u32;
        self.states.extend_from_slice(row);
        let states = &self.states;
        self.dedupe.insert_unique(hash, id, |&s| {
            hash_row(&states[s as usize * width..(s as usize + 1) * width])
        });
        self.witnesses.push(w());
        true
    }

    fn finish(self) -> (PackedTable, Vec<Witness>) {
        let len = self.witnesses.len();
        (
            PackedTable {
                profiles: self.interner.list,
                states: self.states,
                len,
            },
            self.witnesses,
        )
    }
}

/// Merge results keyed by (left profile id, translated right profile id).
enum MergeCache {
    Dense { cols: usize, slots: Vec<u32> },
    Sparse(HashMap<(u32, u32), u32, FxBuildHasher>),
}

const UNKNOWN: u32 = u32::MAX;
const INCOMPATIBLE: u32 = u32::MAX - 1;
const DENSE_LIMIT: usize = 1 << 22;

impl MergeCache {
    fn new(rows: usize, cols: usize) -> Self {
        match rows.checked_mul(cols) {
            Some(size) if size <= DENSE_LIMIT => MergeCache::Dense {
                cols,
                slots: vec![UNKNOWN; size],
            },
            _ => MergeCache::Sparse(HashMap::default()),
        }
    }

    #[inline]
    fn get_or_insert(&mut self, l: u32, r: u32, compute: impl FnOnce() -> u32) -> u32 {
        match self {
            MergeCache::Dense { cols, slots } => {
                let slot = &mut slots[l as usize * *cols + r as usize];
                if *slot == UNKNOWN {
                    *slot = compute();
                }
                *slot
            }
            MergeCache::Sparse(map) => *map.entry((l, r)).or_insert_with(compute),
        }
    }
}

/// Result of one run of the engine.
#[derive(Debug, Clone)]
pub struct DpRun {
    pub decision: Decision,
    pub stats: DpStats,
    colors: usize,
    kept: Option<Vec<Option<KeptTable>>>,
}

#[derive(Debug, Clone)]
struct KeptTable {
    profiles: Vec<PackedProfile>,
    states: Vec<u32>,
    witnesses: Vec<Witness>,
}

impl DpRun {
    /// Every node's table as explicit class functions. `None` unless the run
    /// was configured to keep tables; nodes never reached are empty.
    pub fn tables(&self, sd: &SmoothDecomposition) -> Option<Vec<DpNodeTable>> {
        let kept = self.kept.as_ref()?;
        let width = self.colors * self.colors;
        let tables = kept
            .iter()
            .zip(&sd.nodes)
            .map(|(t, node)| match t {
                None => DpNodeTable::default(),
                Some(t) => {
                    let unpacked: Vec<_> = t.profiles.iter().map(|p| p.unpack(&node.bag)).collect();
                    let states = t
                        .states
                        .chunks(width.max(1))
                        .take(t.witnesses.len())
                        .map(|row| {
                            ColorClassFunction::new(
                                self.colors,
                                row.iter()
                                    .map(|&id| unpacked[id as usize].clone())
                                    .collect(),
                            )
                        })
                        .collect();
                    DpNodeTable {
                        states,
                        witnesses: t.witnesses.clone(),
                    }
                }
            })
            .collect();
        Some(tables)
    }

    /// Checks every kept state for the partition property without unpacking:
    /// each row holds one valid profile id per color pair, distinct ids denote
    /// distinct profiles, and every profile mentions only bag positions.
    /// `None` unless tables were kept.
    pub fn check_partition(&self, sd: &SmoothDecomposition) -> Option<PartitionCheck> {
        let kept = self.kept.as_ref()?;
        let width = self.colors * self.colors;
        let mut report = PartitionCheck::default();
        for (node, t) in kept.iter().enumerate() {
            let Some(t) = t else { continue };
            let distinct: std::collections::HashSet<_> = t.profiles.iter().collect();
            if distinct.len() != t.profiles.len() {
                report
                    .failures
                    .push(format!("node {node}: one profile stored under two ids"));
            }
            if let Some(p) = t
                .profiles
                .iter()
                .find(|p| !p.is_well_formed(sd.nodes[node].bag.len()))
            {
                report
                    .failures
                    .push(format!("node {node}: malformed profile {p:?}"));
            }
            if t.states.len() != t.witnesses.len() * width {
                report
                    .failures
                    .push(format!("node {node}: rows do not cover every color pair"));
                continue;
            }
            for (s, row) in t
                .states
                .chunks(width.max(1))
                .take(t.witnesses.len())
                .enumerate()
            {
                report.states += 1;
                let mut members = vec![0usize; t.profiles.len()];
                for &id in row {
                    match members.get_mut(id as usize) {
                        Some(m) => *m += 1,
                        None => {
                            report
                                .failures
                                .push(format!("node {node} state {s}: unknown profile id {id}"));
                            break;
                        }
                    }
                }
                if members.iter().sum::<usize>() != width {
                    report.failures.push(format!(
                        "node {node} state {s}: classes do not cover every pair"
                    ));
                }
            }
        }
        Some(report)
    }
}

/// Result of [`DpRun::check_partition`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PartitionCheck {
    pub states: usize,
    pub failures: Vec<String>,
}

/// Checks that `sd` is shaped for `g` and within the engine's limits, and
/// returns its nodes children-first. Runs in time linear in the decomposition.
pub fn check_instance(g: &Graph, sd: &SmoothDecomposition) -> Result<Vec<usize>> {
    let mismatch = |msg: String| Err(Error::Mismatch(msg));
    if sd.width > MAX_WIDTH {
        return Err(Error::InvalidParameters(format!(
            "decomposition width {} exceeds the supported maximum {MAX_WIDTH}",
            sd.width
        )));
    }
    let n = sd.nodes.len();
    if sd.root >= n {
        return mismatch(format!("root {} out of range", sd.root));
    }
    let mut seen = vec![false; n];
    let mut covered = vec![false; g.edge_count()];
    let mut pre = Vec::with_capacity(n);
    let mut stack = vec![sd.root];
    while let Some(i) = stack.pop() {
        if std::mem::replace(&mut seen[i], true) {
            return mismatch(format!("node {i} reached twice"));
        }
        pre.push(i);
        let node = &sd.nodes[i];
        if node.bag.len() != sd.width + 1 || node.bag.windows(2).any(|w| w[0] >= w[1]) {
            return mismatch(format!(
                "node {i} bag is not a sorted set of {} vertices",
                sd.width + 1
            ));
        }
        if node.bag.iter().any(|&v| v >= g.vertex_count()) {
            return mismatch(format!("node {i} bag names a vertex outside the graph"));
        }
        match &node.kind {
            NodeKind::Leaf { edges } => {
                for &e in edges {
                    if e.0 >= g.edge_count() {
                        return mismatch(format!("leaf {i} names unknown edge {}", e.0));
                    }
                    let (u, v) = g.endpoints(e);
                    if node.bag.binary_search(&u).is_err() || node.bag.binary_search(&v).is_err() {
                        return mismatch(format!("leaf {i} edge {{{u},{v}}} leaves its bag"));
                    }
                    if std::mem::replace(&mut covered[e.0], true) {
                        return mismatch(format!("edge {{{u},{v}}} represented twice"));
                    }
                }
            }
            NodeKind::Internal { left, right, swap } => {
                if *left >= n || *right >= n {
                    return mismatch(format!("node {i} has a child out of range"));
                }
                if sd.nodes[*left].bag != node.bag {
                    return mismatch(format!("node {i} left child bag differs"));
                }
                let rbag = &sd.nodes[*right].bag;
                let ok = match swap {
                    None => rbag == &node.bag,
                    Some(s) => {
                        node.bag.binary_search(&s.dropped).is_ok()
                            && node.bag.binary_search(&s.added).is_err()
                            && rbag.binary_search(&s.added).is_ok()
                            && rbag.binary_search(&s.dropped).is_err()
                            && node
                                .bag
                                .iter()
                                .filter(|v| rbag.binary_search(v).is_ok())
                                .count()
                                == sd.width
                    }
                };
                if !ok {
                    return mismatch(format!("node {i} exchange does not match its right child"));
                }
                stack.push(*right);
                stack.push(*left);
            }
        }
    }
    if let Some(e) = covered.iter().position(|&c| !c) {
        let (u, v) = g.edges()[e];
        return mismatch(format!("edge {{{u},{v}}} is not represented"));
    }
    pre.reverse();
    Ok(pre)
}

/// Runs the dynamic program for `c` colors.
pub fn run_dp(g: &Graph, sd: &SmoothDecomposition, c: usize, config: &DpConfig) -> Result<DpRun> {
    if c == 0 {
        return Err(Error::InvalidParameters(
            "the number of colors must be at least 1".into(),
        ));
    }
    if config.symmetry && c > u8::MAX as usize {
        return Err(Error::InvalidParameters(format!(
            "symmetry reduction supports at most {} colors",
            u8::MAX
        )));
    }
    let order = check_instance(g, sd)?;
    let width = c * c;
    let n = sd.nodes.len();
    let mut tables: Vec<Option<PackedTable>> = (0..n).map(|_| None).collect();
    let mut witnesses: Vec<Vec<Witness>> = vec![Vec::new(); n];
    let mut kept: Option<Vec<Option<KeptTable>>> = config.keep_tables.then(|| vec![None; n]);
    let mut stats = DpStats {
        table_sizes: vec![0; n],
        ..DpStats::default()
    };

    for &i in &order {
        let node = &sd.nodes[i];
        let mut builder = TableBuilder::new(width);
        match &node.kind {
            NodeKind::Leaf { edges } => {
                fill_leaf(g, &node.bag, edges, c, config.symmetry, &mut builder)
            }
            NodeKind::Internal { left, right, .. } => {
                let lt = tables[*left].take().expect("left child computed");
                let rt = tables[*right].take().expect("right child computed");
                // Right-bag local index -> parent local index; the added vertex is dropped.
                let mut map = [0usize; MAX_BAG];
                let mut drop = None;
                for (a, v) in sd.nodes[*right].bag.iter().enumerate() {
                    match node.bag.binary_search(v) {
                        Ok(p) => map[a] = p,
                        Err(_) => drop = Some(a),
                    }
                }
                let mut translated = Interner::default();
                let tid: Vec<u32> = rt
                    .profiles
                    .iter()
                    .map(|p| translated.intern(p.translate(&map, drop)))
                    .collect();
                let mut join = Joiner {
                    c,
                    left: &lt,
                    right_profiles: &translated.list,
                    cache: MergeCache::new(lt.profiles.len(), translated.list.len()),
                    skip: config.skip_condition,
                    cap: config.state_cap,
                    builder: &mut builder,
                    combinations: 0,
                };
                let right_rows: Vec<u32> = rt.states.iter().map(|&id| tid[id as usize]).collect();
                if config.symmetry {
                    join.symmetric(&right_rows, rt.len);
                } else {
                    join.structural(&right_rows, rt.len);
                }
                stats.combinations += join.combinations;
                if let Some(kept) = kept.as_mut() {
                    for (child, t) in [(*left, lt), (*right, rt)] {
                        kept[child] = Some(KeptTable {
                            profiles: t.profiles,
                            states: t.states,
                            witnesses: witnesses[child].clone(),
                        });
                    }
                }
            }
        }
        stats.table_sizes[i] = builder.len();
        stats.peak_states = stats.peak_states.max(builder.len());
        if builder.len() > config.state_cap {
            return Ok(DpRun {
                decision: Decision::Indeterminate(Exhausted::StateCap {
                    node: i,
                    limit: config.state_cap,
                }),
                stats,
                colors: c,
                kept: None,
            });
        }
        let (table, w) = builder.finish();
        witnesses[i] = w;
        tables[i] = Some(table);
    }

    let root = tables[sd.root].take().expect("root computed");
    let decision = if root.len == 0 {
        Decision::NotColorable
    } else {
        Decision::Colorable(reconstruct(sd, &witnesses, g.edge_count(), 0))
    };
    if let Some(kept) = kept.as_mut() {
        kept[sd.root] = Some(KeptTable {
            profiles: root.profiles,
            states: root.states,
            witnesses: witnesses[sd.root].clone(),
        });
    }
    Ok(DpRun {
        decision,
        stats,
        colors: c,
        kept,
    })
}

fn fill_leaf(
    g: &Graph,
    bag: &[crate::graph::Vertex],
    edges: &[crate::graph::EdgeId],
    c: usize,
    symmetry: bool,
    builder: &mut TableBuilder,
) {
    let pairs: Vec<ColorPair> = ColorPair::all(c).collect();
    let local_of = |v| bag.binary_search(&v).unwrap();
    let mut row = vec![0u32; c * c];
    let mut canon = vec![0u32; c * c];
    for colors in leaf_colorings(g, bag, edges, c, symmetry) {
        let local: Vec<(usize, usize, u32)> = edges
            .iter()
            .zip(&colors)
            .map(|(&e, &col)| {
                let (u, v) = g.endpoints(e);
                (local_of(u), local_of(v), col)
            })
            .collect();
        for (slot, pair) in row.iter_mut().zip(&pairs) {
            *slot = builder
                .interner
                .intern(PackedProfile::from_local_edges(&local, pair.0, pair.1));
        }
        if symmetry {
            let perm = symmetry::canonical_form(&row, c, &mut canon);
            builder.insert(&canon, || {
                Witness::Leaf(
                    colors
                        .iter()
                        .map(|&x| Color(perm[x as usize - 1] as u32 + 1))
                        .collect(),
                )
            });
        } else {
            builder.insert(&row, || {
                Witness::Leaf(colors.iter().map(|&x| Color(x)).collect())
            });
        }
    }
}

/// Combination of two child tables into a parent table.
struct Joiner<'a> {
    c: usize,
    left: &'a PackedTable,
    /// Right child profiles expressed over the parent bag.
    right_profiles: &'a [PackedProfile],
    cache: MergeCache,
    skip: Option<Condition>,
    cap: usize,
    builder: &'a mut TableBuilder,
    combinations: u64,
}

impl Joiner<'_> {
    /// Merged profile id for a left and a translated right profile id, or
    /// `INCOMPATIBLE`.
    #[inline]
    fn merged(&mut self, l: u32, r: u32) -> u32 {
        let (left, right, skip) = (&self.left.profiles, self.right_profiles, self.skip);
        let interner = &mut self.builder.interner;
        self.cache.get_or_insert(l, r, || {
            let (lp, rp) = (&left[l as usize], &right[r as usize]);
            if packed::compatible(lp, rp, skip) {
                interner.intern(packed::merge(lp, rp))
            } else {
                INCOMPATIBLE
            }
        })
    }

    fn capped(&self) -> bool {
        self.builder.len() > self.cap
    }

    /// Every left state against every right state.
    fn structural(&mut self, right_rows: &[u32], right_len: usize) {
        let width = self.c * self.c;
        let mut row = vec![0u32; width];
        for li in 0..self.left.len {
            for ri in 0..right_len {
                self.combinations += 1;
                let rrow = &right_rows[ri * width..(ri + 1) * width];
                let mut ok = true;
                for p in 0..width {
                    let merged = self.merged(self.left.states[li * width + p], rrow[p]);
                    if merged == INCOMPATIBLE {
                        ok = false;
                        break;
                    }
                    row[p] = merged;
                }
                if ok {
                    self.builder.insert(&row, || Witness::Join(li, ri));
                    if self.capped() {
                        return;
                    }
                }
            }
        }
    }

    /// Orbit representatives only. For every left representative `a` and right
    /// representative `b`, tries relabelings of `b` up to the symmetries of both:
    /// colors of `b` outside its largest interchangeable class are placed one at
    /// a time on the smallest unused color of some interchangeable class of `a`,
    /// and the largest class takes the remaining colors in order.
    fn symmetric(&mut self, right_rows: &[u32], right_len: usize) {
        let (c, width) = (self.c, self.c * self.c);
        let right_plans: Vec<(Vec<u8>, Vec<u8>)> = (0..right_len)
            .map(|ri| {
                let classes =
                    symmetry::interchangeable_classes(&right_rows[ri * width..(ri + 1) * width], c);
                let largest = (0..classes.len())
                    .max_by_key(|&k| (classes[k].len(), usize::MAX - k))
                    .unwrap();
                let mut steps: Vec<u8> = classes
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != largest)
                    .flat_map(|(_, m)| m.iter().copied())
                    .collect();
                steps.sort_unstable();
                (steps, classes[largest].clone())
            })
            .collect();
        let mut search = RelabelSearch {
            c,
            tau: vec![0; c],
            row: vec![0; width],
            canon: vec![0; width],
        };
        for li in 0..self.left.len {
            let lrow: Vec<u32> = self.left.states[li * width..(li + 1) * width].to_vec();
            let left_classes = symmetry::interchangeable_classes(&lrow, c);
            for (ri, (steps, rest)) in right_plans.iter().enumerate() {
                let rrow = &right_rows[ri * width..(ri + 1) * width];
                let job = RelabelJob {
                    li,
                    ri,
                    a: &lrow,
                    b: rrow,
                    left_classes: &left_classes,
                    steps,
                    rest,
                };
                search.place(self, &job, 0, 0);
                if self.capped() {
                    return;
                }
            }
        }
    }
}

struct RelabelJob<'a> {
    li: usize,
    ri: usize,
    a: &'a [u32],
    b: &'a [u32],
    left_classes: &'a [Vec<u8>],
    steps: &'a [u8],
    rest: &'a [u8],
}

struct RelabelSearch {
    c: usize,
    /// Image of each right color.
    tau: Vec<u8>,
    row: Vec<u32>,
    canon: Vec<u32>,
}

impl RelabelSearch {
    /// Fills the merged entries between right colors `x` and `y` (already
    /// placed); false on an incompatible pair.
    fn link(&mut self, join: &mut Joiner, job: &RelabelJob, x: usize, y: usize) -> bool {
        let c = self.c;
        let (tx, ty) = (self.tau[x] as usize, self.tau[y] as usize);
        let m = join.merged(job.a[tx * c + ty], job.b[x * c + y]);
        if m == INCOMPATIBLE {
            return false;
        }
        self.row[tx * c + ty] = m;
        if x != y {
            let m = join.merged(job.a[ty * c + tx], job.b[y * c + x]);
            if m == INCOMPATIBLE {
                return false;
            }
            self.row[ty * c + tx] = m;
        }
        true
    }

    fn place(&mut self, join: &mut Joiner, job: &RelabelJob, k: usize, used: u64) {
        if join.capped() {
            return;
        }
        let c = self.c;
        if k == job.steps.len() {
            join.combinations += 1;
            let mut free = (0..c as u8).filter(|&t| used & (1 << t) == 0);
            for &x in job.rest {
                self.tau[x as usize] = free
                    .next()
                    .expect("one free color per remaining right color");
            }
            for (idx, &x) in job.rest.iter().enumerate() {
                let x = x as usize;
                let earlier = job.steps.iter().chain(&job.rest[..=idx]);
                for &y in earlier {
                    if !self.link(join, job, x, y as usize) {
                        return;
                    }
                }
            }
            let outer = symmetry::canonical_form(&self.row, c, &mut self.canon);
            let (li, ri, tau) = (job.li, job.ri, &self.tau);
            join.builder.insert(&self.canon, || Witness::RelabeledJoin {
                left: li,
                right: ri,
                inner: tau.clone(),
                outer,
            });
            return;
        }
        let x = job.steps[k] as usize;
        for class in job.left_classes {
            let Some(&t) = class.iter().find(|&&t| used & (1 << t) == 0) else {
                continue;
            };
            self.tau[x] = t;
            let ok = job.steps[..=k]
                .iter()
                .all(|&y| self.link(join, job, x, y as usize));
            if ok {
                self.place(join, job, k + 1, used | (1 << t));
            }
        }
    }
}

/// Follows witnesses down from state `root_state` of the root and collects the
/// leaf colorings into one coloring of all `edge_count` edges.
pub fn reconstruct(
    sd: &SmoothDecomposition,
    witnesses: &[Vec<Witness>],
    edge_count: usize,
    root_state: usize,
) -> EdgeColoring {
    let mut f = EdgeColoring::new(edge_count);
    // (node, state, relabeling to apply to the state's realization)
    let mut stack: Vec<(usize, usize, Option<Vec<u8>>)> = vec![(sd.root, root_state, None)];
    while let Some((i, s, perm)) = stack.pop() {
        match (&sd.nodes[i].kind, &witnesses[i][s]) {
            (NodeKind::Leaf { edges }, Witness::Leaf(colors)) => {
                for (&e, &col) in edges.iter().zip(colors) {
                    let col = match &perm {
                        Some(p) => Color(p[col.0 as usize - 1] as u32 + 1),
                        None => col,
                    };
                    f.set(e, col);
                }
            }
            (NodeKind::Internal { left, right, .. }, &Witness::Join(l, r)) => {
                stack.push((*right, r, perm.clone()));
                stack.push((*left, l, perm));
            }
            (
                NodeKind::Internal { left, right, .. },
                Witness::RelabeledJoin {
                    left: l,
                    right: r,
                    inner,
                    outer,
                },
            ) => {
                let to_left = match &perm {
                    Some(p) => symmetry::compose(p, outer),
                    None => outer.clone(),
                };
                let to_right = symmetry::compose(&to_left, inner);
                stack.push((*right, *r, Some(to_right)));
                stack.push((*left, *l, Some(to_left)));
            }
            _ => panic!("witness kind does not match node {i}"),
        }
    }
    f
}

/// Decides `c`-colorability with the default configuration.
pub fn decide_dp(g: &Graph, sd: &SmoothDecomposition, c: usize) -> Result<Decision> {
    run_dp(g, sd, c, &DpConfig::default()).map(|run| run.decision)
}

/// Smallest `c` in `[max_degree, c_max]` for which the engine finds a coloring.
pub fn star_chromatic_index_dp(
    g: &Graph,
    sd: &SmoothDecomposition,
    c_max: usize,
    config: &DpConfig,
) -> Result<IndexOutcome> {
    let delta = g.max_degree();
    if c_max < delta {
        return Err(Error::InvalidParameters(format!(
            "c_max = {c_max} is below the maximum degree {delta}"
        )));
    }
    for c in delta.max(1)..=c_max {
        match run_dp(g, sd, c, config)?.decision {
            Decision::Colorable(coloring) => return Ok(IndexOutcome::Found { index: c, coloring }),
            Decision::NotColorable => {}
            Decision::Indeterminate(reason) => {
                return Ok(IndexOutcome::Indeterminate { c, reason })
            }
        }
    }
    Ok(IndexOutcome::AboveMax { c_max })
}
