//! `starchrom`: star edge coloring from the command line.
//!
//! Results go to stdout as JSON (or CSV for `bench`), diagnostics to stderr.
//! Exit codes: 0 yes/valid, 1 no/invalid/disagreement, 2 indeterminate,
//! 3 bad input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use starchrom::decomposition::{emit_td, parse_td};
use starchrom::dp::{Condition, DEFAULT_STATE_CAP};
use starchrom::generate::{gen_partial_ktree, Family};
use starchrom::oracle::DEFAULT_NODE_BUDGET;
use starchrom::pipeline::{
    emit_coloring, parse_coloring, smooth_decomposition, solve_decide, solve_index,
    tree_decomposition, ComponentStats, Engine, Method, SolveConfig,
};
use starchrom::star_check::{star_violation, StarViolation};
use starchrom::{
    parse_graph, Decision, EdgeColoring, Graph, GraphFormat, IndexOutcome, TreeDecomposition,
};

const SCHEMA_VERSION: u32 = 1;

const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_INDETERMINATE: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "starchrom",
    version,
    about = "Exact star edge coloring on graphs of bounded treewidth"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a star edge coloring with at most c colors exists.
    Decide {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        c: usize,
        /// Also write the coloring as `u v color` lines.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        solve: SolveArgs,
    },
    /// Compute the star chromatic index.
    #[command(alias = "solve")]
    Index {
        #[command(flatten)]
        input: GraphInput,
        /// Largest color count tried; defaults to the number of edges.
        #[arg(long)]
        c_max: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        solve: SolveArgs,
    },
    /// Run both engines on every graph of a directory and report disagreements.
    Compare {
        corpus: PathBuf,
        /// Color counts `LO..HI` (inclusive); defaults to max degree through
        /// max degree plus `--slack`.
        #[arg(long)]
        c_range: Option<String>,
        #[arg(long, default_value_t = 3)]
        slack: usize,
        /// Where disagreeing instances are copied; defaults to
        /// `<corpus>/disagreements`.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        solve: SolveArgs,
    },
    /// Build a tree decomposition in PACE `.td` format.
    Decompose {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value = "auto")]
        method: Method,
        /// Write the decomposition here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print a JSON summary even when the decomposition goes to stdout.
        #[arg(long)]
        json: bool,
    },
    /// Check a coloring file against a graph.
    Check {
        #[command(flatten)]
        input: GraphInput,
        coloring: PathBuf,
    },
    /// Generate a seeded partial k-tree as a `.gr` and `.td` pair.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Probability of keeping each k-tree edge.
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path prefix; writes `<out>.gr` and `<out>.td`.
        #[arg(long)]
        out: PathBuf,
    },
    /// Time both engines on a graph family and print CSV.
    Bench {
        #[arg(long)]
        family: Family,
        /// Comma-separated instance sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// Colors per run; defaults to one more than the maximum degree.
        #[arg(long)]
        c: Option<usize>,
        #[arg(long, value_delimiter = ',', default_value = "dp,brute")]
        engines: Vec<Engine>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print rows as JSON instead of CSV.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        solve: SolveArgs,
    },
}

#[derive(Args)]
struct GraphInput {
    graph: PathBuf,
    /// `gr` or `edge-list`; guessed from the file extension when absent.
    #[arg(long)]
    format: Option<GraphFormat>,
}

#[derive(Args, Clone)]
struct SolveArgs {
    #[arg(long, default_value = "dp")]
    engine: Engine,
    /// Tree decomposition of the whole graph in PACE `.td` format.
    #[arg(long)]
    td: Option<PathBuf>,
    /// Decomposition method when `--td` is absent.
    #[arg(long, default_value = "auto")]
    method: Method,
    /// Color assignments the backtracking engine may try per decision.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// States any one decomposition node may hold.
    #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
    state_cap: usize,
    /// Keep one dynamic-programming state per color relabeling orbit.
    #[arg(long)]
    symmetry: bool,
    /// Fault injection: ignore one combination condition (i..vi).
    #[arg(long, hide = true)]
    disable_condition: Option<Condition>,
}

impl SolveArgs {
    fn config(&self) -> SolveConfig {
        let mut config = SolveConfig::new(self.engine);
        config.method = self.method;
        config.budget = self.budget;
        config.dp.state_cap = self.state_cap;
        config.dp.symmetry = self.symmetry;
        config.dp.skip_condition = self.disable_condition;
        config
    }

    fn decomposition(&self) -> Result<Option<TreeDecomposition>> {
        self.td.as_deref().map(read_td).transpose()
    }
}

fn guess_format(path: &Path) -> GraphFormat {
    match path.extension().and_then(|e| e.to_str()) {
        Some("gr") => GraphFormat::PaceGr,
        _ => GraphFormat::EdgeList,
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

impl GraphInput {
    fn format(&self) -> GraphFormat {
        self.format.unwrap_or_else(|| guess_format(&self.graph))
    }

    fn load(&self) -> Result<Graph> {
        parse_graph(&read(&self.graph)?, self.format())
            .with_context(|| format!("{}", self.graph.display()))
    }
}

fn read_td(path: &Path) -> Result<TreeDecomposition> {
    parse_td(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

#[derive(Serialize)]
struct ColoredEdge {
    u: usize,
    v: usize,
    color: u32,
}

fn coloring_json(g: &Graph, f: &EdgeColoring, format: GraphFormat) -> Vec<ColoredEdge> {
    let base = usize::from(format == GraphFormat::PaceGr);
    f.colored()
        .map(|(e, c)| {
            let (u, v) = g.endpoints(e);
            ColoredEdge {
                u: u + base,
                v: v + base,
                color: c.0,
            }
        })
        .collect()
}

#[derive(Serialize)]
struct ComponentJson {
    vertices: usize,
    edges: usize,
    width: Option<usize>,
    peak_states: usize,
    /// States kept at each decomposition node, in node order.
    table_sizes: Vec<usize>,
    nodes_expanded: u64,
}

impl From<&ComponentStats> for ComponentJson {
    fn from(s: &ComponentStats) -> Self {
        ComponentJson {
            vertices: s.vertices,
            edges: s.edges,
            width: s.width,
            peak_states: s.peak_states,
            table_sizes: s.table_sizes.clone(),
            nodes_expanded: s.nodes_expanded,
        }
    }
}

#[derive(Serialize)]
struct DecideReport {
    schema: u32,
    command: &'static str,
    status: &'static str,
    engine: String,
    c: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    coloring: Option<Vec<ColoredEdge>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
    stats: DecideStats,
}

#[derive(Serialize)]
struct DecideStats {
    elapsed_ms: f64,
    components: Vec<ComponentJson>,
}

#[derive(Serialize)]
struct IndexReport {
    schema: u32,
    command: &'static str,
    status: &'static str,
    engine: String,
    c_max: usize,
    index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coloring: Option<Vec<ColoredEdge>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
    elapsed_ms: f64,
}

#[derive(Serialize)]
struct Disagreement {
    instance: String,
    c: usize,
    dp: Option<bool>,
    brute: Option<bool>,
    dp_witness_valid: Option<bool>,
    fixture: String,
}

#[derive(Serialize)]
struct CompareReport {
    schema: u32,
    command: &'static str,
    instances: usize,
    checks: usize,
    indeterminate: usize,
    disagreements: Vec<Disagreement>,
}

#[derive(Serialize)]
struct DecomposeReport {
    schema: u32,
    command: &'static str,
    method: String,
    vertices: usize,
    bags: usize,
    width: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    out: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    td: Option<String>,
}

#[derive(Serialize)]
struct CheckReport {
    schema: u32,
    command: &'static str,
    valid: bool,
    colors_used: u32,
    uncolored_edges: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    violation: Option<String>,
}

#[derive(Serialize)]
struct GenReport {
    schema: u32,
    command: &'static str,
    graph: String,
    td: String,
    vertices: usize,
    edges: usize,
    width: usize,
}

#[derive(Serialize)]
struct BenchRow {
    family: String,
    n: usize,
    c: usize,
    engine: String,
    millis: f64,
    peak_states: Option<usize>,
}

fn print_json(value: &impl Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn describe(g: &Graph, v: &StarViolation, format: GraphFormat) -> String {
    let base = usize::from(format == GraphFormat::PaceGr);
    let edge = |e| {
        let (a, b) = g.endpoints(e);
        format!("{}-{}", a + base, b + base)
    };
    match v {
        StarViolation::Improper(a, b) => {
            format!("edges {} and {} share a color", edge(*a), edge(*b))
        }
        StarViolation::Bicolored(walk) => {
            let kind = if walk.is_cycle() { "cycle" } else { "path" };
            let vs: Vec<String> = walk
                .vertices
                .iter()
                .map(|v| (v + base).to_string())
                .collect();
            format!("bicolored {kind} {}", vs.join("-"))
        }
    }
}

fn decide(input: &GraphInput, c: usize, out: Option<&Path>, solve: &SolveArgs) -> Result<u8> {
    let g = input.load()?;
    let td = solve.decomposition()?;
    let start = Instant::now();
    let solved = solve_decide(&g, c, td.as_ref(), &solve.config())?;
    let elapsed_ms = millis(start);
    let format = input.format();
    let (status, code, reason) = match &solved.decision {
        Decision::Colorable(_) => ("colorable", EXIT_YES, None),
        Decision::NotColorable => ("not_colorable", EXIT_NO, None),
        Decision::Indeterminate(r) => ("indeterminate", EXIT_INDETERMINATE, Some(r.to_string())),
    };
    if let (Some(path), Some(f)) = (out, solved.decision.coloring()) {
        write(path, &emit_coloring(&g, f, format))?;
    }
    print_json(&DecideReport {
        schema: SCHEMA_VERSION,
        command: "decide",
        status,
        engine: solve.engine.to_string(),
        c,
        coloring: solved
            .decision
            .coloring()
            .map(|f| coloring_json(&g, f, format)),
        reason,
        stats: DecideStats {
            elapsed_ms,
            components: solved.components.iter().map(ComponentJson::from).collect(),
        },
    })?;
    Ok(code)
}

fn index(
    input: &GraphInput,
    c_max: Option<usize>,
    out: Option<&Path>,
    solve: &SolveArgs,
) -> Result<u8> {
    let g = input.load()?;
    let td = solve.decomposition()?;
    let start = Instant::now();
    let outcome = solve_index(&g, td.as_ref(), c_max, &solve.config())?;
    let elapsed_ms = millis(start);
    let format = input.format();
    let mut report = IndexReport {
        schema: SCHEMA_VERSION,
        command: "index",
        status: "found",
        engine: solve.engine.to_string(),
        c_max: c_max.unwrap_or(g.edge_count()),
        index: outcome.index(),
        coloring: None,
        reason: None,
        elapsed_ms,
    };
    let code = match &outcome {
        IndexOutcome::Found { coloring, .. } => {
            if let Some(path) = out {
                write(path, &emit_coloring(&g, coloring, format))?;
            }
            report.coloring = Some(coloring_json(&g, coloring, format));
            EXIT_YES
        }
        IndexOutcome::AboveMax { .. } => {
            report.status = "above_max";
            EXIT_NO
        }
        IndexOutcome::Indeterminate { c, reason } => {
            report.status = "indeterminate";
            report.reason = Some(format!("c = {c}: {reason}"));
            EXIT_INDETERMINATE
        }
    };
    print_json(&report)?;
    Ok(code)
}

fn parse_range(text: &str) -> Result<(usize, usize)> {
    let Some((lo, hi)) = text.split_once("..") else {
        bail!("expected `LO..HI`, found `{text}`");
    };
    let (lo, hi): (usize, usize) = (lo.trim().parse()?, hi.trim().parse()?);
    if lo > hi {
        bail!("empty color range {lo}..{hi}");
    }
    Ok((lo, hi))
}

fn compare(
    corpus: &Path,
    c_range: Option<&str>,
    slack: usize,
    out: Option<&Path>,
    solve: &SolveArgs,
) -> Result<u8> {
    let range = c_range.map(parse_range).transpose()?;
    let mut files: Vec<PathBuf> = fs::read_dir(corpus)
        .with_context(|| format!("cannot list {}", corpus.display()))?
        .map(|entry| entry.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    files.retain(|p| p.extension().is_some_and(|e| e == "gr"));
    files.sort();
    let fixtures = out
        .map(Path::to_path_buf)
        .unwrap_or_else(|| corpus.join("disagreements"));
    let mut dp_config = solve.config();
    dp_config.engine = Engine::Dp;
    let mut brute_config = solve.config();
    brute_config.engine = Engine::Brute;
    let mut report = CompareReport {
        schema: SCHEMA_VERSION,
        command: "compare",
        instances: files.len(),
        checks: 0,
        indeterminate: 0,
        disagreements: Vec::new(),
    };
    for path in &files {
        let g = parse_graph(&read(path)?, GraphFormat::PaceGr)
            .with_context(|| format!("{}", path.display()))?;
        let td_path = path.with_extension("td");
        let td = if td_path.exists() {
            Some(read_td(&td_path)?)
        } else {
            None
        };
        let (lo, hi) = range.unwrap_or((g.max_degree(), g.max_degree() + slack));
        let name = path
            .file_stem()
            .unwrap_or_default()
            .to_string_lossy()
            .into_owned();
        for c in lo..=hi {
            report.checks += 1;
            let dp = solve_decide(&g, c, td.as_ref(), &dp_config)?.decision;
            let brute = solve_decide(&g, c, None, &brute_config)?.decision;
            let (dv, bv) = (dp.verdict(), brute.verdict());
            if dv.is_none() || bv.is_none() {
                report.indeterminate += 1;
            }
            let witness_valid = dp.coloring().map(|f| {
                f.is_total() && f.max_color() as usize <= c && star_violation(&g, f).is_none()
            });
            let disagree =
                (dv.is_some() && bv.is_some() && dv != bv) || witness_valid == Some(false);
            if disagree {
                fs::create_dir_all(&fixtures)
                    .with_context(|| format!("cannot create {}", fixtures.display()))?;
                let fixture = fixtures.join(format!("{name}-c{c}.gr"));
                let header = format!("c disagreement at c = {c}: dp {dv:?}, brute {bv:?}\n");
                write(&fixture, &(header + &g.to_text(GraphFormat::PaceGr)))?;
                if let Some(td) = &td {
                    write(&fixture.with_extension("td"), &emit_td(td))?;
                }
                eprintln!("disagreement: {name} with c = {c}");
                report.disagreements.push(Disagreement {
                    instance: name.clone(),
                    c,
                    dp: dv,
                    brute: bv,
                    dp_witness_valid: witness_valid,
                    fixture: fixture.display().to_string(),
                });
            }
        }
    }
    let code = if !report.disagreements.is_empty() {
        EXIT_NO
    } else if report.indeterminate > 0 {
        EXIT_INDETERMINATE
    } else {
        EXIT_YES
    };
    print_json(&report)?;
    Ok(code)
}

fn decompose(input: &GraphInput, method: Method, out: Option<&Path>, json: bool) -> Result<u8> {
    let g = input.load()?;
    let td = if g.is_connected() || g.vertex_count() == 0 {
        tree_decomposition(&g, method)?
    } else {
        // One decomposition per component, joined into a path of subtrees.
        let mut bags = Vec::new();
        let mut tree_edges = Vec::new();
        for comp in g.connected_components() {
            let sub = tree_decomposition(&comp.graph, method)?;
            let offset = bags.len();
            if offset > 0 {
                tree_edges.push((offset - 1, offset));
            }
            tree_edges.extend(
                sub.tree_edges
                    .iter()
                    .map(|&(a, b)| (a + offset, b + offset)),
            );
            bags.extend(
                sub.bags
                    .into_iter()
                    .map(|bag| bag.into_iter().map(|v| comp.vertex_map[v]).collect()),
            );
        }
        TreeDecomposition::new(g.vertex_count(), bags, tree_edges)
    };
    let text = emit_td(&td);
    let mut report = DecomposeReport {
        schema: SCHEMA_VERSION,
        command: "decompose",
        method: format!("{method:?}"),
        vertices: td.vertex_count,
        bags: td.bags.len(),
        width: td.width(),
        out: None,
        td: None,
    };
    match out {
        Some(path) => {
            write(path, &text)?;
            report.out = Some(path.display().to_string());
            print_json(&report)?;
        }
        None if json => {
            report.td = Some(text);
            print_json(&report)?;
        }
        None => {
            print!("{text}");
            eprintln!("width {} with {} bags", report.width, report.bags);
        }
    }
    Ok(EXIT_YES)
}

fn check(input: &GraphInput, coloring: &Path) -> Result<u8> {
    let g = input.load()?;
    let format = input.format();
    let f = parse_coloring(&g, &read(coloring)?, format)
        .with_context(|| format!("{}", coloring.display()))?;
    let uncolored = f.as_slice().iter().filter(|c| c.is_none()).count();
    let violation = star_violation(&g, &f).map(|v| describe(&g, &v, format));
    let valid = uncolored == 0 && violation.is_none();
    if !valid {
        eprintln!(
            "invalid coloring: {}",
            violation.as_deref().unwrap_or("not every edge is colored")
        );
    }
    print_json(&CheckReport {
        schema: SCHEMA_VERSION,
        command: "check",
        valid,
        colors_used: f.max_color(),
        uncolored_edges: uncolored,
        violation,
    })?;
    Ok(if valid { EXIT_YES } else { EXIT_NO })
}

fn gen(n: usize, k: usize, p: f64, seed: u64, out: &Path) -> Result<u8> {
    let (g, td) = gen_partial_ktree(n, k, p, seed)?;
    let with_ext = |ext: &str| {
        let mut s = out.as_os_str().to_owned();
        s.push(ext);
        PathBuf::from(s)
    };
    let (gr, tdp) = (with_ext(".gr"), with_ext(".td"));
    write(&gr, &g.to_text(GraphFormat::PaceGr))?;
    write(&tdp, &emit_td(&td))?;
    print_json(&GenReport {
        schema: SCHEMA_VERSION,
        command: "gen",
        graph: gr.display().to_string(),
        td: tdp.display().to_string(),
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        width: td.width(),
    })?;
    Ok(EXIT_YES)
}

#[allow(clippy::too_many_arguments)]
fn bench(
    family: Family,
    sizes: &[usize],
    c: Option<usize>,
    engines: &[Engine],
    seed: u64,
    json: bool,
    solve: &SolveArgs,
) -> Result<u8> {
    let mut rows = Vec::new();
    let mut code = EXIT_YES;
    for &n in sizes {
        let (g, td) = family.instance(n, seed)?;
        let c = c.unwrap_or(g.max_degree() + 1);
        for &engine in engines {
            let mut config = solve.config();
            config.engine = engine;
            let start = Instant::now();
            let solved = match engine {
                Engine::Dp => {
                    // Decomposition time is not part of the measurement.
                    let sd = smooth_decomposition(&g, Some(&td), config.method)?;
                    let start = Instant::now();
                    let run = starchrom::dp::run_dp(&g, &sd, c, &config.dp)?;
                    (run.decision, Some(run.stats.peak_states), millis(start))
                }
                Engine::Brute => {
                    let run = starchrom::oracle::decide_bruteforce(&g, c, config.budget);
                    (run.decision, None, millis(start))
                }
            };
            if matches!(solved.0, Decision::Indeterminate(_)) {
                eprintln!("{family} n = {n} {engine}: indeterminate");
                code = EXIT_INDETERMINATE;
            }
            rows.push(BenchRow {
                family: family.to_string(),
                n,
                c,
                engine: engine.to_string(),
                millis: solved.2,
                peak_states: solved.1,
            });
        }
    }
    if json {
        print_json(&rows)?;
    } else {
        println!("family,n,c,engine,millis,peak_states");
        for r in &rows {
            let peak = r.peak_states.map(|p| p.to_string()).unwrap_or_default();
            println!(
                "{},{},{},{},{:.3},{}",
                r.family, r.n, r.c, r.engine, r.millis, peak
            );
        }
    }
    Ok(code)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Decide {
            input,
            c,
            out,
            solve,
        } => decide(&input, c, out.as_deref(), &solve),
        Command::Index {
            input,
            c_max,
            out,
            solve,
        } => index(&input, c_max, out.as_deref(), &solve),
        Command::Compare {
            corpus,
            c_range,
            slack,
            out,
            solve,
        } => compare(&corpus, c_range.as_deref(), slack, out.as_deref(), &solve),
        Command::Decompose {
            input,
            method,
            out,
            json,
        } => decompose(&input, method, out.as_deref(), json),
        Command::Check { input, coloring } => check(&input, &coloring),
        Command::Gen { n, k, p, seed, out } => gen(n, k, p, seed, &out),
        Command::Bench {
            family,
            sizes,
            c,
            engines,
            seed,
            json,
            solve,
        } => bench(family, &sizes, c, &engines, seed, json, &solve),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { EXIT_YES });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
