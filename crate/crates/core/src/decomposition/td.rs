use std::collections::VecDeque;
use std::fmt::{self, Write as _};

use crate::error::ParseError;
use crate::graph::{Graph, Vertex};

/// A tree decomposition: bags of vertices joined by tree edges over bag indices.
///
/// Bags are kept sorted and tree edges are stored as `(i, j)` with `i < j`, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub vertex_count: usize,
    pub bags: Vec<Vec<Vertex>>,
    pub tree_edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn new(
        vertex_count: usize,
        bags: Vec<Vec<Vertex>>,
        tree_edges: Vec<(usize, usize)>,
    ) -> Self {
        let mut td = TreeDecomposition {
            vertex_count,
            bags,
            tree_edges,
        };
        td.normalize();
        td
    }

    /// Sorts and dedups bag contents and tree edges.
    pub fn normalize(&mut self) {
        for bag in &mut self.bags {
            bag.sort_unstable();
            bag.dedup();
        }
        for e in &mut self.tree_edges {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        self.tree_edges.sort_unstable();
        self.tree_edges.dedup();
    }

    /// Largest bag size minus one; 0 when there are no bags.
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(1)
            .saturating_sub(1)
    }

    pub fn tree_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(i, j) in &self.tree_edges {
            if i < self.bags.len() && j < self.bags.len() {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Restricts every bag to `vertices` (ascending original indices), relabeling
    /// to local positions. The result is a valid decomposition of the induced subgraph.
    pub fn restrict(&self, vertices: &[Vertex]) -> TreeDecomposition {
        let bags = self
            .bags
            .iter()
            .map(|bag| {
                bag.iter()
                    .filter_map(|v| vertices.binary_search(v).ok())
                    .collect()
            })
            .collect();
        TreeDecomposition::new(vertices.len(), bags, self.tree_edges.clone())
    }
}

/// A broken tree-decomposition condition, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A bag names a vertex outside the graph.
    UnknownVertex { bag: usize, vertex: Vertex },
    /// The vertex appears in no bag.
    VertexNotCovered(Vertex),
    /// No bag holds both endpoints.
    EdgeNotCovered(Vertex, Vertex),
    /// Bag `middle` lies on the tree path between `from` and `to`, both of which
    /// contain `vertex`, but `middle` does not.
    RunningIntersection {
        vertex: Vertex,
        from: usize,
        middle: usize,
        to: usize,
    },
    /// The tree edges do not form a tree on the bag indices.
    NotATree(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownVertex { bag, vertex } => {
                write!(f, "bag {bag} contains unknown vertex {vertex}")
            }
            Violation::VertexNotCovered(v) => write!(f, "vertex cover: vertex {v} is in no bag"),
            Violation::EdgeNotCovered(u, v) => {
                write!(f, "edge cover: edge {{{u},{v}}} is in no bag")
            }
            Violation::RunningIntersection {
                vertex,
                from,
                middle,
                to,
            } => write!(
                f,
                "running intersection: vertex {vertex} is in bags {from} and {to} but not in bag {middle} between them"
            ),
            Violation::NotATree(why) => write!(f, "tree: {why}"),
        }
    }
}

fn tree_problem(td: &TreeDecomposition) -> Option<String> {
    let b = td.bags.len();
    if let Some(&(i, j)) = td.tree_edges.iter().find(|&&(i, j)| i >= b || j >= b) {
        return Some(format!("tree edge ({i},{j}) references a missing bag"));
    }
    if let Some(&(i, _)) = td.tree_edges.iter().find(|&&(i, j)| i == j) {
        return Some(format!("tree edge loops on bag {i}"));
    }
    if b == 0 {
        return None;
    }
    if td.tree_edges.len() != b - 1 {
        return Some(format!(
            "{} bags need {} tree edges, found {}",
            b,
            b - 1,
            td.tree_edges.len()
        ));
    }
    let adj = td.tree_adjacency();
    let mut seen = vec![false; b];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(i) = queue.pop_front() {
        for &j in &adj[i] {
            if !seen[j] {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    seen.iter()
        .position(|s| !s)
        .map(|i| format!("bag {i} is not connected to bag 0"))
}

/// Path of bag indices from `from` to `to` in the tree (inclusive).
fn tree_path(adj: &[Vec<usize>], from: usize, to: usize) -> Vec<usize> {
    let mut parent = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::from([from]);
    parent[from] = from;
    while let Some(i) = queue.pop_front() {
        if i == to {
            break;
        }
        for &j in &adj[i] {
            if parent[j] == usize::MAX {
                parent[j] = i;
                queue.push_back(j);
            }
        }
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = parent[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

/// Checks the three tree-decomposition conditions plus tree-ness.
pub fn validate_decomposition(g: &Graph, td: &TreeDecomposition) -> Result<(), Vec<Violation>> {
    let mut violations = Vec::new();
    let n = g.vertex_count();
    let mut covered = vec![false; n];
    let mut vertex_bags: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v >= n {
                violations.push(Violation::UnknownVertex { bag: i, vertex: v });
            } else {
                covered[v] = true;
                vertex_bags[v].push(i);
            }
        }
    }
    for (v, c) in covered.iter().enumerate() {
        if !c {
            violations.push(Violation::VertexNotCovered(v));
        }
    }
    for &(u, v) in g.edges() {
        let hit = vertex_bags[u]
            .iter()
            .any(|&i| td.bags[i].binary_search(&v).is_ok());
        if !hit {
            violations.push(Violation::EdgeNotCovered(u, v));
        }
    }
    if let Some(why) = tree_problem(td) {
        violations.push(Violation::NotATree(why));
        return Err(violations);
    }
    let adj = td.tree_adjacency();
    for (v, bags) in vertex_bags.iter().enumerate() {
        if bags.len() < 2 {
            continue;
        }
        let mut reached = vec![false; td.bags.len()];
        let mut queue = VecDeque::from([bags[0]]);
        reached[bags[0]] = true;
        while let Some(i) = queue.pop_front() {
            for &j in &adj[i] {
                if !reached[j] && td.bags[j].binary_search(&v).is_ok() {
                    reached[j] = true;
                    queue.push_back(j);
                }
            }
        }
        if let Some(&to) = bags.iter().find(|&&i| !reached[i]) {
            let from = bags[0];
            let path = tree_path(&adj, from, to);
            let middle = *path
                .iter()
                .find(|&&j| td.bags[j].binary_search(&v).is_err())
                .expect("disconnected occurrence implies a gap on the path");
            violations.push(Violation::RunningIntersection {
                vertex: v,
                from,
                middle,
                to,
            });
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// Parses the PACE `.td` format (1-based bags and vertices).
pub fn parse_td(text: &str) -> Result<TreeDecomposition, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<Vec<Vertex>>> = Vec::new();
    let mut edges = Vec::new();
    let num = |tok: &str, line: usize| -> Result<usize, ParseError> {
        tok.parse()
            .map_err(|_| ParseError::new(line, format!("expected a number, found `{tok}`")))
    };
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('c') {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens[0] {
            "s" => {
                if header.is_some() {
                    return Err(ParseError::new(line, "duplicate header"));
                }
                if tokens.len() != 5 || tokens[1] != "td" {
                    return Err(ParseError::new(
                        line,
                        "malformed header, expected `s td <bags> <max bag size> <n>`",
                    ));
                }
                let h = (
                    num(tokens[2], line)?,
                    num(tokens[3], line)?,
                    num(tokens[4], line)?,
                );
                bags = vec![None; h.0];
                header = Some(h);
            }
            "b" => {
                let (count, max_size, n) =
                    header.ok_or_else(|| ParseError::new(line, "bag line before header"))?;
                if tokens.len() < 2 {
                    return Err(ParseError::new(line, "bag line without index"));
                }
                let i = num(tokens[1], line)?;
                if i == 0 || i > count {
                    return Err(ParseError::new(
                        line,
                        format!("bag index {i} out of range 1..={count}"),
                    ));
                }
                if bags[i - 1].is_some() {
                    return Err(ParseError::new(line, format!("bag {i} declared twice")));
                }
                let mut bag = Vec::with_capacity(tokens.len() - 2);
                for tok in &tokens[2..] {
                    let v = num(tok, line)?;
                    if v == 0 || v > n {
                        return Err(ParseError::new(
                            line,
                            format!("vertex {v} out of range 1..={n}"),
                        ));
                    }
                    bag.push(v - 1);
                }
                bag.sort_unstable();
                bag.dedup();
                if bag.len() > max_size {
                    return Err(ParseError::new(
                        line,
                        format!(
                            "bag {i} has {} vertices, header allows {max_size}",
                            bag.len()
                        ),
                    ));
                }
                bags[i - 1] = Some(bag);
            }
            _ => {
                let (count, _, _) =
                    header.ok_or_else(|| ParseError::new(line, "tree edge before header"))?;
                if tokens.len() != 2 {
                    return Err(ParseError::new(
                        line,
                        "tree edge line needs exactly two bag indices",
                    ));
                }
                let i = num(tokens[0], line)?;
                let j = num(tokens[1], line)?;
                for b in [i, j] {
                    if b == 0 || b > count {
                        return Err(ParseError::new(
                            line,
                            format!("bag index {b} out of range 1..={count}"),
                        ));
                    }
                }
                edges.push((i - 1, j - 1));
            }
        }
    }
    let (_, _, n) = header.ok_or_else(|| ParseError::new(1, "missing `s td` header"))?;
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| ParseError::new(0, format!("bag {} never declared", i + 1))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TreeDecomposition::new(n, bags, edges))
}

/// Emits PACE `.td` text: sorted bag contents and sorted tree edges.
pub fn emit_td(td: &TreeDecomposition) -> String {
    let mut td = td.clone();
    td.normalize();
    let max_size = td.bags.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = String::new();
    writeln!(
        out,
        "s td {} {} {}",
        td.bags.len(),
        max_size,
        td.vertex_count
    )
    .unwrap();
    for (i, bag) in td.bags.iter().enumerate() {
        write!(out, "b {}", i + 1).unwrap();
        for v in bag {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    for &(i, j) in &td.tree_edges {
        writeln!(out, "{} {}", i + 1, j + 1).unwrap();
    }
    out
}
