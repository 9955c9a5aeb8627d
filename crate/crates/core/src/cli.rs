//! Command-line front end.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::extnum::{ExtValue, Rational};
use crate::fnspec::{self, DefaultGraph, FnSpec};
use crate::graph::{builtin_graph, BuiltinKind, GradedGraph, VertexId};
use crate::harmonic::{harmonicity_residuals, HarmonicFn, ResidualStatus};
use crate::products::{direct_product, recover_factor, recover_weights, Side};
use crate::slow::{classify_slow_spec, slow_graph, Classified};
use crate::suite::{run_suite, SuiteName};

#[derive(Parser, Debug)]
#[command(name = "bratteli", version, about = "Exact harmonic functions on graded graphs")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Highest level included in sums and checks.
    #[arg(long, global = true, default_value_t = 6)]
    horizon: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GenKind {
    Young,
    Pascal,
    Nat,
    Product,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a built-in or product graph as JSON.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(long)]
        level: usize,
        /// Left factor for `product`.
        #[arg(long)]
        g1: Option<String>,
        /// Right factor for `product`.
        #[arg(long)]
        g2: Option<String>,
    },
    /// Tabulate a function at chosen vertices or on whole levels.
    Eval {
        #[arg(long)]
        graph: Option<String>,
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        vertex: Vec<String>,
        /// Tabulate every vertex on levels 0..=N.
        #[arg(long)]
        all_levels: Option<usize>,
    },
    /// Harmonicity residuals up to the horizon; exits 1 on a violation.
    Check {
        #[arg(long)]
        graph: Option<String>,
        #[arg(long = "fn")]
        function: String,
    },
    /// Shifted dimensions from one vertex.
    Dim {
        #[arg(long)]
        graph: String,
        /// Source vertex; the root when omitted.
        #[arg(long)]
        from: Option<String>,
        /// Target vertices; every vertex up to the horizon when omitted.
        #[arg(long)]
        to: Vec<String>,
    },
    /// Write the direct product of two graphs as JSON.
    Product {
        #[arg(long)]
        g1: String,
        #[arg(long)]
        g2: String,
        #[arg(long)]
        level: usize,
    },
    /// Weights on the Pascal lattice and recovered factor values.
    Recover {
        #[arg(long)]
        graph: Option<String>,
        #[arg(long = "fn")]
        function: String,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
        /// Factor vertices to recover.
        #[arg(long)]
        vertex: Vec<String>,
        /// Last term of the recovery series.
        #[arg(long, default_value_t = 40)]
        terms: usize,
    },
    /// Tabulate or classify a function on the slow graph over `--gamma`.
    Slow {
        #[arg(long, default_value = "young")]
        gamma: String,
        #[arg(long)]
        family: String,
        /// Truncation of the slow graph; one past the horizon by default.
        #[arg(long)]
        level: Option<usize>,
        #[arg(long)]
        classify: bool,
    },
    /// Run a verification battery.
    Suite {
        #[arg(value_parser = parse_suite)]
        name: SuiteName,
    },
}

fn parse_suite(s: &str) -> std::result::Result<SuiteName, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Rows with named columns, rendered as TSV or a JSON array of objects.
struct Table {
    headers: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(headers: &[&'static str]) -> Self {
        Table { headers: headers.to_vec(), rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Tsv => {
                let mut out = self.headers.join("\t") + "\n";
                for r in &self.rows {
                    out.push_str(&r.join("\t"));
                    out.push('\n');
                }
                out
            }
            Format::Json => serde_json::to_string_pretty(&self.json()).expect("table serializes") + "\n",
        }
    }

    fn json(&self) -> serde_json::Value {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let obj = self.headers.iter().zip(r).map(|(h, v)| (h.to_string(), serde_json::Value::String(v.clone())));
                serde_json::Value::Object(obj.collect())
            })
            .collect();
        serde_json::Value::Array(rows)
    }
}

/// Outcome of a subcommand: the report and whether a property failed.
struct Outcome {
    text: String,
    violated: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, violated: false }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            if let Err(e) = emit(cli.out.as_deref(), &outcome.text) {
                eprintln!("error: {e}");
                return 2;
            }
            i32::from(outcome.violated)
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => Ok(std::fs::write(path, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let default_level = cli.horizon + 1;
    match &cli.command {
        Command::Gen { kind, level, g1, g2 } => {
            let graph = match kind {
                GenKind::Young => builtin_graph(BuiltinKind::Young, *level),
                GenKind::Pascal => builtin_graph(BuiltinKind::Pascal, *level),
                GenKind::Nat => builtin_graph(BuiltinKind::Nat, *level),
                GenKind::Product => {
                    let (Some(g1), Some(g2)) = (g1, g2) else {
                        return Err(Error::InvalidParams("gen product needs --g1 and --g2".into()));
                    };
                    product_of(g1, g2, *level)?
                }
            };
            Ok(Outcome::ok(graph.to_json()))
        }
        Command::Product { g1, g2, level } => Ok(Outcome::ok(product_of(g1, g2, *level)?.to_json())),
        Command::Eval { graph, function, vertex, all_levels } => {
            let f = load_fn(graph.as_deref(), function, default_level.max(all_levels.map_or(0, |n| n + 1)))?;
            let g = f.graph();
            let mut table = Table::new(&["vertex", "value"]);
            let targets: Vec<VertexId> = match all_levels {
                Some(n) => {
                    if *n > g.max_level() {
                        return Err(Error::BeyondTruncation { requested: *n, max: g.max_level() });
                    }
                    g.vertices().take_while(|v| v.level <= *n).collect()
                }
                None if vertex.is_empty() => return Err(Error::InvalidParams("give --vertex or --all-levels".into())),
                None => vertex.iter().map(|l| g.resolve(l)).collect::<Result<_>>()?,
            };
            for v in targets {
                table.push(vec![g.label(v).to_string(), f.value(v).to_string()]);
            }
            Ok(Outcome::ok(table.render(cli.format)))
        }
        Command::Check { graph, function } => {
            let f = load_fn(graph.as_deref(), function, default_level)?;
            check(&f, cli.horizon, cli.format)
        }
        Command::Dim { graph, from, to } => {
            let g = graph_expr(graph, default_level)?;
            let source = match from {
                Some(l) => g.resolve(l)?,
                None => g.root().ok_or_else(|| Error::InvalidGraph("graph has no single root; give --from".into()))?,
            };
            let targets: Vec<VertexId> = if to.is_empty() {
                g.vertices().take_while(|v| v.level <= cli.horizon.min(g.max_level())).collect()
            } else {
                to.iter().map(|l| g.resolve(l)).collect::<Result<_>>()?
            };
            let dims = cached_dims(&g, source)?;
            let mut table = Table::new(&["vertex", "dim"]);
            for v in targets {
                table.push(vec![g.label(v).to_string(), dims[g.flat(v)].to_string()]);
            }
            Ok(Outcome::ok(table.render(cli.format)))
        }
        Command::Recover { graph, function, side, vertex, terms } => {
            let f = load_fn(graph.as_deref(), function, default_level)?;
            recover(&f, *side, vertex, *terms, cli.horizon, cli.format)
        }
        Command::Slow { gamma, family, level, classify } => {
            let level = level.unwrap_or(default_level);
            let gamma = graph_expr(gamma, level)?;
            let graph = Arc::new(slow_graph(gamma, level)?);
            let f = fnspec::build(&fnspec::parse(family)?, graph.clone())?;
            if *classify {
                let class = classify_slow_spec(&f, cli.horizon)?;
                let mut table = Table::new(&["family", "parameters"]);
                table.push(vec![class.name().to_string(), describe_class(&graph, &class)]);
                return Ok(Outcome { violated: class == Classified::Unclassified, text: table.render(cli.format) });
            }
            let mut table = Table::new(&["vertex", "value"]);
            for v in graph.vertices().take_while(|v| v.level <= cli.horizon.min(level)) {
                table.push(vec![graph.label(v).to_string(), f.value(v).to_string()]);
            }
            Ok(Outcome::ok(table.render(cli.format)))
        }
        Command::Suite { name } => {
            let report = run_suite(*name, cli.seed, cli.horizon)?;
            let text = match cli.format {
                Format::Tsv => report.to_tsv(),
                Format::Json => report.to_json(),
            };
            Ok(Outcome { violated: !report.passed(), text })
        }
    }
}

fn describe_class(graph: &GradedGraph, class: &Classified) -> String {
    let gamma = &graph.product().expect("slow graphs are products").right;
    let values = |factor: &[(VertexId, ExtValue)]| {
        let name = |v: VertexId| if v.level == 0 { "∅" } else { gamma.label(v) };
        factor.iter().map(|(v, x)| format!("{}={x}", name(*v))).collect::<Vec<_>>().join(" ")
    };
    match class {
        Classified::Weighted { w, factor } => format!("w={w} {}", values(factor)),
        Classified::RootOnly | Classified::Unclassified => String::new(),
        Classified::PinnedVertex { nu, c } => format!("nu={} c={c}", gamma.label(*nu)),
        Classified::PinnedLevel { m, factor } => format!("m={m} {}", values(factor)),
    }
}

fn check(f: &HarmonicFn, horizon: usize, format: Format) -> Result<Outcome> {
    let g = f.graph();
    let residuals = harmonicity_residuals(f, horizon)?;
    let count = |s| residuals.iter().filter(|r| r.status == s).count();
    let (exact, inf, violated) =
        (count(ResidualStatus::Exact), count(ResidualStatus::InfiniteConsistent), count(ResidualStatus::Violated));
    let text = match format {
        Format::Tsv => {
            let mut table = Table::new(&["vertex", "lhs", "rhs", "status"]);
            for r in &residuals {
                table.push(vec![g.label(r.vertex).to_string(), r.lhs.to_string(), r.rhs.to_string(), r.status.to_string()]);
            }
            eprintln!("horizon {horizon}: {exact} exact, {inf} infinite-consistent, {violated} violated");
            table.render(format)
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = residuals
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "vertex": g.label(r.vertex),
                        "lhs": r.lhs,
                        "rhs": r.rhs,
                        "status": r.status,
                    })
                })
                .collect();
            let report = serde_json::json!({
                "horizon": horizon,
                "exact": exact,
                "infinite_consistent": inf,
                "violated": violated,
                "rows": rows,
            });
            serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
        }
    };
    Ok(Outcome { text, violated: violated > 0 })
}

fn recover(f: &HarmonicFn, side: SideArg, vertices: &[String], terms: usize, horizon: usize, format: Format) -> Result<Outcome> {
    let info = f
        .graph()
        .product()
        .ok_or_else(|| Error::InvalidParams(format!("{} is not a product graph", f.graph().name())))?;
    let horizon = horizon.min(f.graph().max_level());
    let mut weights = Table::new(&["k1", "k2", "value"]);
    for k1 in 0..=horizon {
        for k2 in 0..=horizon - k1 {
            weights.push(vec![k1.to_string(), k2.to_string(), recover_weights(f, k1, k2)?.to_string()]);
        }
    }
    let (side, own) = match side {
        SideArg::Left => (Side::Left, &info.left),
        SideArg::Right => (Side::Right, &info.right),
    };
    let mut factors = Table::new(&["vertex", "partial_sum", "tail_bound"]);
    for label in vertices {
        let v = own.resolve(label)?;
        let rec = recover_factor(f, side, v, terms)?;
        factors.push(vec![own.label(v).to_string(), rec.partial_sum.to_string(), rec.tail_bound.to_string()]);
    }
    let text = match format {
        Format::Tsv => {
            let mut text = weights.render(format);
            if !factors.rows.is_empty() {
                text.push('\n');
                text.push_str(&factors.render(format));
            }
            text
        }
        Format::Json => {
            let report = serde_json::json!({ "weights": weights.json(), "factors": factors.json() });
            serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
        }
    };
    Ok(Outcome::ok(text))
}

/// Splits a product expression at its top-level `*`.
fn split_product(expr: &str) -> Option<(&str, &str)> {
    if Path::new(expr).exists() {
        return None;
    }
    expr.split_once('*')
}

/// Resolves `young`, `pascal`, `nat`, `kind:level`, `A*B` or a JSON file path.
pub fn graph_expr(expr: &str, default_level: usize) -> Result<Arc<GradedGraph>> {
    if let Some((a, b)) = split_product(expr) {
        let g1 = graph_expr(a, default_level)?;
        let g2 = graph_expr(b, default_level)?;
        let level = g1.max_level().min(g2.max_level());
        return Ok(Arc::new(direct_product(g1, g2, level)?));
    }
    let (name, level) = match expr.split_once(':') {
        Some((name, level)) if name.parse::<BuiltinKind>().is_ok() => {
            let level = level.parse().map_err(|_| Error::Parse { pos: name.len() + 1, msg: format!("bad level {level:?}") })?;
            (name, level)
        }
        _ => (expr, default_level),
    };
    if let Ok(kind) = name.parse::<BuiltinKind>() {
        return Ok(Arc::new(builtin_graph(kind, level)));
    }
    let text = std::fs::read_to_string(expr)
        .map_err(|e| Error::InvalidParams(format!("{expr:?} is neither a built-in graph nor a readable file: {e}")))?;
    Ok(Arc::new(GradedGraph::from_json(&text)?))
}

fn product_of(g1: &str, g2: &str, level: usize) -> Result<GradedGraph> {
    direct_product(graph_expr(g1, level)?, graph_expr(g2, level)?, level)
}

fn load_fn(graph: Option<&str>, spec: &str, default_level: usize) -> Result<HarmonicFn> {
    let parsed: FnSpec = fnspec::parse(spec)?;
    let expr = match graph {
        Some(g) => g,
        None => match parsed.default_graph() {
            DefaultGraph::Young => "young",
            DefaultGraph::YoungSquared => "young*young",
            DefaultGraph::Slow => "nat*young",
            DefaultGraph::None => return Err(Error::InvalidParams("table functions need --graph".into())),
        },
    };
    fnspec::build(&parsed, graph_expr(expr, default_level)?)
}

/// Dimension row from `source`, spilled to `BH_CACHE_DIR` when that is set.
fn cached_dims(graph: &GradedGraph, source: VertexId) -> Result<Vec<Rational>> {
    let compute = || -> Result<Vec<Rational>> {
        let table = graph.dim_table(source)?;
        Ok(graph.vertices().map(|v| table.get(v).clone()).collect())
    };
    let Some(dir) = std::env::var_os("BH_CACHE_DIR") else {
        return compute();
    };
    let mut hasher = Sha256::new();
    hasher.update(graph.to_json().as_bytes());
    hasher.update(b"\0");
    hasher.update(graph.label(source).as_bytes());
    let path = Path::new(&dir).join(format!("{}.dims", hex::encode(hasher.finalize())));
    if let Ok(text) = std::fs::read_to_string(&path) {
        let cached: std::result::Result<Vec<Rational>, _> = text.lines().map(str::parse).collect();
        if let Ok(values) = cached {
            if values.len() == graph.vertex_count() {
                return Ok(values);
            }
        }
    }
    let values = compute()?;
    std::fs::create_dir_all(&dir)?;
    let body: String = values.iter().map(|x| format!("{x}\n")).collect();
    std::fs::write(&path, body)?;
    Ok(values)
}
