//! End-to-end solving: split into connected components, decompose each one,
//! run the chosen engine and stitch the answers back together.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::decomposition::{
    exact_small_decomposition, heuristic_decomposition, smooth, Heuristic, SmoothDecomposition,
    TreeDecomposition, DEFAULT_EXACT_LIMIT,
};
use crate::dp::{run_dp, star_chromatic_index_dp, DpConfig};
use crate::error::{Error, ParseError, Result};
use crate::graph::{Color, Component, EdgeId, Graph, GraphFormat};
use crate::oracle::{decide_bruteforce, star_chromatic_index_bruteforce, DEFAULT_NODE_BUDGET};
use crate::outcome::{Decision, IndexOutcome};
use crate::star_check::EdgeColoring;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    /// Dynamic programming over a smooth decomposition.
    Dp,
    /// Exhaustive backtracking.
    Brute,
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dp" => Ok(Engine::Dp),
            "brute" => Ok(Engine::Brute),
            other => Err(format!(
                "unknown engine `{other}`, expected `dp` or `brute`"
            )),
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Dp => "dp",
            Engine::Brute => "brute",
        })
    }
}

/// How to obtain a tree decomposition when none is supplied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Exact for components of at most [`DEFAULT_EXACT_LIMIT`] vertices, min-fill above.
    Auto,
    Exact,
    Heuristic(Heuristic),
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Method::Auto),
            "exact" => Ok(Method::Exact),
            other => other
                .parse::<Heuristic>()
                .map(Method::Heuristic)
                .map_err(|_| {
                    format!(
                        "unknown method `{other}`, expected auto, exact, min-fill or min-degree"
                    )
                }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveConfig {
    pub engine: Engine,
    pub method: Method,
    /// Node budget for the backtracking engine.
    pub budget: u64,
    pub dp: DpConfig,
}

impl SolveConfig {
    pub fn new(engine: Engine) -> Self {
        SolveConfig {
            engine,
            method: Method::Auto,
            budget: DEFAULT_NODE_BUDGET,
            dp: DpConfig::default(),
        }
    }
}

/// Per-component diagnostics.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ComponentStats {
    pub vertices: usize,
    pub edges: usize,
    /// Width of the smooth decomposition used, dp engine only.
    pub width: Option<usize>,
    /// States per decomposition node, dp engine only.
    pub table_sizes: Vec<usize>,
    pub peak_states: usize,
    /// Color assignments tried, backtracking engine only.
    pub nodes_expanded: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solved {
    pub decision: Decision,
    /// One entry per component with at least one edge, in component order,
    /// up to the first component that settled the answer.
    pub components: Vec<ComponentStats>,
}

impl Solved {
    pub fn peak_states(&self) -> usize {
        self.components
            .iter()
            .map(|c| c.peak_states)
            .max()
            .unwrap_or(0)
    }
}

/// Tree decomposition of a connected graph using `method`.
pub fn tree_decomposition(g: &Graph, method: Method) -> Result<TreeDecomposition> {
    match method {
        Method::Auto if g.vertex_count() <= DEFAULT_EXACT_LIMIT => {
            exact_small_decomposition(g, DEFAULT_EXACT_LIMIT)
        }
        Method::Auto => Ok(heuristic_decomposition(g, Heuristic::MinFill)),
        Method::Exact => exact_small_decomposition(g, DEFAULT_EXACT_LIMIT),
        Method::Heuristic(h) => Ok(heuristic_decomposition(g, h)),
    }
}

/// Smooth decomposition of a connected graph with at least one edge, from `td`
/// if given, else from `method`.
pub fn smooth_decomposition(
    g: &Graph,
    td: Option<&TreeDecomposition>,
    method: Method,
) -> Result<SmoothDecomposition> {
    let owned;
    let td = match td {
        Some(td) => td,
        None => {
            owned = tree_decomposition(g, method)?;
            &owned
        }
    };
    smooth(g, td, td.width().max(1))
}

struct Part {
    component: Component,
    td: Option<TreeDecomposition>,
    /// Original edge id of every component edge.
    edge_map: Vec<EdgeId>,
}

fn parts(g: &Graph, td: Option<&TreeDecomposition>) -> Result<Vec<Part>> {
    if let Some(td) = td {
        if td.vertex_count != g.vertex_count() {
            return Err(Error::Mismatch(format!(
                "decomposition covers {} vertices, graph has {}",
                td.vertex_count,
                g.vertex_count()
            )));
        }
    }
    Ok(g.connected_components()
        .into_iter()
        .filter(|c| c.graph.edge_count() > 0)
        .map(|component| {
            let edge_map = component
                .graph
                .edges()
                .iter()
                .map(|&(u, v)| {
                    g.edge_id(component.vertex_map[u], component.vertex_map[v])
                        .expect("component edge exists in the graph")
                })
                .collect();
            let td = td.map(|td| td.restrict(&component.vertex_map));
            Part {
                component,
                td,
                edge_map,
            }
        })
        .collect())
}

fn lift(into: &mut EdgeColoring, part: &Part, f: &EdgeColoring) {
    for (e, c) in f.colored() {
        into.set(part.edge_map[e.0], c);
    }
}

/// Decides whether `g` has a star edge coloring with at most `c` colors. The
/// answer is the conjunction over connected components.
pub fn solve_decide(
    g: &Graph,
    c: usize,
    td: Option<&TreeDecomposition>,
    config: &SolveConfig,
) -> Result<Solved> {
    let parts = parts(g, td)?;
    let mut coloring = EdgeColoring::new(g.edge_count());
    let mut components = Vec::new();
    let mut pending = None;
    for part in &parts {
        let h = &part.component.graph;
        let mut stats = ComponentStats {
            vertices: h.vertex_count(),
            edges: h.edge_count(),
            ..ComponentStats::default()
        };
        let decision = if c == 0 {
            Decision::NotColorable
        } else {
            match config.engine {
                Engine::Dp => {
                    let sd = smooth_decomposition(h, part.td.as_ref(), config.method)?;
                    let run = run_dp(h, &sd, c, &config.dp)?;
                    stats.width = Some(sd.width);
                    stats.peak_states = run.stats.peak_states;
                    stats.table_sizes = run.stats.table_sizes;
                    run.decision
                }
                Engine::Brute => {
                    let run = decide_bruteforce(h, c, config.budget);
                    stats.nodes_expanded = run.nodes_expanded;
                    run.decision
                }
            }
        };
        components.push(stats);
        match decision {
            Decision::Colorable(f) => lift(&mut coloring, part, &f),
            Decision::NotColorable => {
                return Ok(Solved {
                    decision: Decision::NotColorable,
                    components,
                })
            }
            Decision::Indeterminate(reason) => pending = pending.or(Some(reason)),
        }
    }
    let decision = match pending {
        Some(reason) => Decision::Indeterminate(reason),
        None => Decision::Colorable(coloring),
    };
    Ok(Solved {
        decision,
        components,
    })
}

/// Star chromatic index of `g`, searching up to `c_max` colors (default: the
/// number of edges). For disconnected graphs this is the largest component
/// index.
pub fn solve_index(
    g: &Graph,
    td: Option<&TreeDecomposition>,
    c_max: Option<usize>,
    config: &SolveConfig,
) -> Result<IndexOutcome> {
    let c_max = c_max.unwrap_or(g.edge_count());
    let delta = g.max_degree();
    if c_max < delta {
        return Err(Error::InvalidParameters(format!(
            "c_max = {c_max} is below the maximum degree {delta}"
        )));
    }
    let mut coloring = EdgeColoring::new(g.edge_count());
    let mut index = 0;
    for part in parts(g, td)? {
        let h = &part.component.graph;
        let outcome = match config.engine {
            Engine::Dp => {
                let sd = smooth_decomposition(h, part.td.as_ref(), config.method)?;
                star_chromatic_index_dp(h, &sd, c_max, &config.dp)?
            }
            Engine::Brute => star_chromatic_index_bruteforce(h, c_max, config.budget)?,
        };
        match outcome {
            IndexOutcome::Found {
                index: i,
                coloring: f,
            } => {
                index = index.max(i);
                lift(&mut coloring, &part, &f);
            }
            other => return Ok(other),
        }
    }
    Ok(IndexOutcome::Found { index, coloring })
}

fn vertex_base(format: GraphFormat) -> usize {
    match format {
        GraphFormat::EdgeList => 0,
        GraphFormat::PaceGr => 1,
    }
}

/// Reads `u v color` lines, numbering vertices as the graph format does
/// (1-based for PACE, 0-based for edge lists). Lines starting with `#` or `c`
/// are comments. Edges not listed stay uncolored.
pub fn parse_coloring(
    g: &Graph,
    text: &str,
    format: GraphFormat,
) -> Result<EdgeColoring, ParseError> {
    let base = vertex_base(format);
    let mut f = EdgeColoring::new(g.edge_count());
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') || content.starts_with('c') {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let [u, v, col] = tokens[..] else {
            return Err(ParseError::new(line, "expected `u v color`"));
        };
        let num = |t: &str, what: &str| {
            t.parse::<usize>()
                .map_err(|_| ParseError::new(line, format!("expected {what}, found `{t}`")))
        };
        let (u, v, col) = (
            num(u, "a vertex")?,
            num(v, "a vertex")?,
            num(col, "a color")?,
        );
        if u < base || v < base {
            return Err(ParseError::new(
                line,
                format!("vertices are numbered from {base}"),
            ));
        }
        if col == 0 || col > u32::MAX as usize {
            return Err(ParseError::new(line, "colors must be positive"));
        }
        let e = g
            .edge_id(u - base, v - base)
            .ok_or_else(|| ParseError::new(line, format!("{{{u},{v}}} is not an edge")))?;
        if f.get(e).is_some() {
            return Err(ParseError::new(
                line,
                format!("edge {{{u},{v}}} colored twice"),
            ));
        }
        f.set(e, Color(col as u32));
    }
    Ok(f)
}

/// Writes the colored edges in edge order as `u v color` lines.
pub fn emit_coloring(g: &Graph, f: &EdgeColoring, format: GraphFormat) -> String {
    let base = vertex_base(format);
    let mut out = String::new();
    for (e, c) in f.colored() {
        let (u, v) = g.endpoints(e);
        writeln!(out, "{} {} {}", u + base, v + base, c).unwrap();
    }
    out
}
