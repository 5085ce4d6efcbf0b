//! Simple undirected graphs with dense 0-based vertices and canonical edge ids.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::error::ParseError;

/// Vertex index in `0..vertex_count`.
pub type Vertex = usize;

/// Index of an edge in the lexicographic order of its sorted endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// An edge color. Colors run from 1 to the color budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Color(pub u32);

impl Color {
    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Input text formats understood by [`parse_graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    /// `u v` lines with 0-based vertices, `#` comments, optional `p edge <n> <m>` header.
    EdgeList,
    /// PACE `.gr`: `p tw <n> <m>` header, `c` comments, 1-based `u v` lines.
    PaceGr,
}

impl FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "edge-list" | "edgelist" | "el" => Ok(GraphFormat::EdgeList),
            "pace-gr" | "gr" | "pace" => Ok(GraphFormat::PaceGr),
            other => Err(format!("unknown graph format `{other}`")),
        }
    }
}

/// A simple undirected graph.
///
/// Edges are stored sorted lexicographically by `(min, max)` endpoint, so the
/// position of an edge in [`Graph::edges`] is its [`EdgeId`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(Vertex, Vertex)>,
    adjacency: Vec<Vec<(Vertex, EdgeId)>>,
}

impl Graph {
    /// Builds a graph, collapsing duplicate edges. Panics on self-loops or
    /// out-of-range endpoints; use [`Graph::try_from_edges`] for fallible input.
    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        Self::try_from_edges(vertex_count, edges).expect("invalid edge list")
    }

    pub fn try_from_edges<I>(vertex_count: usize, edges: I) -> Result<Self, String>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(format!(
                    "edge {{{u},{v}}} has an endpoint outside 0..{vertex_count}"
                ));
            }
            if u == v {
                return Err(format!("self-loop at vertex {u}"));
            }
            set.insert((u.min(v), u.max(v)));
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adjacency = vec![Vec::new(); vertex_count];
        for (i, &(u, v)) in edges.iter().enumerate() {
            adjacency[u].push((v, EdgeId(i)));
            adjacency[v].push((u, EdgeId(i)));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            vertex_count,
            edges,
            adjacency,
        })
    }

    pub fn empty(vertex_count: usize) -> Self {
        Self::from_edges(vertex_count, std::iter::empty())
    }

    pub fn path(vertices: usize) -> Self {
        Self::from_edges(vertices, (1..vertices).map(|v| (v - 1, v)))
    }

    pub fn cycle(vertices: usize) -> Self {
        assert!(vertices >= 3, "a cycle needs at least three vertices");
        Self::from_edges(vertices, (0..vertices).map(|v| (v, (v + 1) % vertices)))
    }

    /// `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Self {
        Self::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v)))
    }

    pub fn complete(vertices: usize) -> Self {
        Self::from_edges(
            vertices,
            (0..vertices).flat_map(|u| (u + 1..vertices).map(move |v| (u, v))),
        )
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges sorted by id; each pair has `u < v`.
    #[inline]
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    #[inline]
    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e.0]
    }

    /// Neighbors of `v` with the connecting edge, sorted by neighbor.
    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[(Vertex, EdgeId)] {
        &self.adjacency[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        if u >= self.vertex_count || v >= self.vertex_count {
            return None;
        }
        let list = &self.adjacency[u];
        list.binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| list[i].1)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_id(u, v).is_some()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    /// Largest vertex degree, 0 for edgeless graphs.
    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count <= 1 || self.connected_components().len() == 1
    }

    /// Splits the graph into connected induced subgraphs, ordered by their
    /// smallest original vertex. Each component carries the map from its local
    /// vertex indices back to the original ones (ascending).
    pub fn connected_components(&self) -> Vec<Component> {
        let mut label = vec![usize::MAX; self.vertex_count];
        let mut members: Vec<Vec<Vertex>> = Vec::new();
        for start in 0..self.vertex_count {
            if label[start] != usize::MAX {
                continue;
            }
            let id = members.len();
            let mut queue = VecDeque::from([start]);
            label[start] = id;
            let mut list = vec![start];
            while let Some(v) = queue.pop_front() {
                for &(w, _) in &self.adjacency[v] {
                    if label[w] == usize::MAX {
                        label[w] = id;
                        list.push(w);
                        queue.push_back(w);
                    }
                }
            }
            list.sort_unstable();
            members.push(list);
        }
        members
            .into_iter()
            .map(|vertices| {
                let local = |v: Vertex| vertices.binary_search(&v).unwrap();
                let edges = self
                    .edges
                    .iter()
                    .filter(|&&(u, _)| vertices.binary_search(&u).is_ok())
                    .map(|&(u, v)| (local(u), local(v)))
                    .collect::<Vec<_>>();
                Component {
                    graph: Graph::from_edges(vertices.len(), edges),
                    vertex_map: vertices,
                }
            })
            .collect()
    }

    /// Serializes into the given format; `parse_graph` reads it back unchanged.
    pub fn to_text(&self, format: GraphFormat) -> String {
        let mut out = String::new();
        match format {
            GraphFormat::EdgeList => {
                writeln!(out, "p edge {} {}", self.vertex_count, self.edges.len()).unwrap();
                for &(u, v) in &self.edges {
                    writeln!(out, "{u} {v}").unwrap();
                }
            }
            GraphFormat::PaceGr => {
                writeln!(out, "p tw {} {}", self.vertex_count, self.edges.len()).unwrap();
                for &(u, v) in &self.edges {
                    writeln!(out, "{} {}", u + 1, v + 1).unwrap();
                }
            }
        }
        out
    }
}

/// A connected piece of a larger graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub graph: Graph,
    /// `vertex_map[local] = original`.
    pub vertex_map: Vec<Vertex>,
}

/// Parses a graph from text. Duplicate edge lines collapse into one edge.
pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph, ParseError> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::PaceGr => parse_pace_gr(text),
    }
}

fn parse_usize(token: &str, line: usize, what: &str) -> Result<usize, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError::new(line, format!("expected {what}, found `{token}`")))
}

fn edge_tokens<'a>(
    mut tokens: impl Iterator<Item = &'a str>,
    line: usize,
) -> Result<(usize, usize), ParseError> {
    let u = tokens
        .next()
        .ok_or_else(|| ParseError::new(line, "missing first endpoint"))?;
    let v = tokens
        .next()
        .ok_or_else(|| ParseError::new(line, "missing second endpoint"))?;
    if let Some(extra) = tokens.next() {
        return Err(ParseError::new(line, format!("unexpected token `{extra}`")));
    }
    Ok((
        parse_usize(u, line, "a vertex index")?,
        parse_usize(v, line, "a vertex index")?,
    ))
}

fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut max_vertex: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        if content.starts_with('p') {
            if declared.is_some() || !edges.is_empty() {
                return Err(ParseError::new(line, "header must precede all edges"));
            }
            let mut tokens = content.split_whitespace();
            tokens.next();
            if tokens.next() != Some("edge") {
                return Err(ParseError::new(
                    line,
                    "malformed header, expected `p edge <n> <m>`",
                ));
            }
            let n = tokens
                .next()
                .ok_or_else(|| ParseError::new(line, "header is missing the vertex count"))?;
            declared = Some(parse_usize(n, line, "a vertex count")?);
            continue;
        }
        let (u, v) = edge_tokens(content.split_whitespace(), line)?;
        if let Some(n) = declared {
            if u >= n || v >= n {
                return Err(ParseError::new(
                    line,
                    format!("vertex index out of range 0..{n}"),
                ));
            }
        }
        if u == v {
            return Err(ParseError::new(line, format!("self-loop at vertex {u}")));
        }
        max_vertex = Some(max_vertex.map_or(u.max(v), |m: usize| m.max(u).max(v)));
        edges.push((u, v));
    }
    let n = declared.unwrap_or_else(|| max_vertex.map_or(0, |m| m + 1));
    Ok(Graph::from_edges(n, edges))
}

fn parse_pace_gr(text: &str) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('c') {
            continue;
        }
        if content.starts_with('p') {
            if header.is_some() {
                return Err(ParseError::new(line, "duplicate header"));
            }
            let tokens: Vec<_> = content.split_whitespace().collect();
            if tokens.len() != 4 || tokens[0] != "p" || tokens[1] != "tw" {
                return Err(ParseError::new(
                    line,
                    "malformed header, expected `p tw <n> <m>`",
                ));
            }
            header = Some((
                parse_usize(tokens[2], line, "a vertex count")?,
                parse_usize(tokens[3], line, "an edge count")?,
            ));
            continue;
        }
        let (n, _) =
            header.ok_or_else(|| ParseError::new(line, "edge line before `p tw` header"))?;
        let (u, v) = edge_tokens(content.split_whitespace(), line)?;
        if u == 0 || v == 0 || u > n || v > n {
            return Err(ParseError::new(
                line,
                format!("vertex index out of range 1..={n}"),
            ));
        }
        if u == v {
            return Err(ParseError::new(line, format!("self-loop at vertex {u}")));
        }
        edges.push((u - 1, v - 1));
    }
    let (n, _) = header.ok_or_else(|| ParseError::new(1, "missing `p tw` header"))?;
    Ok(Graph::from_edges(n, edges))
}
