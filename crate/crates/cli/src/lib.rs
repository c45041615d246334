//! Command-line front end for `gkset`.
//!
//! [`dispatch`] parses an argument vector, runs one subcommand and returns
//! the text to print together with the exit code, so the same code path is
//! used by the binary and by tests.
//!
//! Exit codes: 0 success, 1 invalid input or usage, 2 exact search budget
//! exhausted, 3 internal guarantee violation.

mod render;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use gkset::exact::DEFAULT_BUDGET;
use gkset::{CycleAnalysis, Error, Graph};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    /// Standard output.
    pub report: String,
    /// Standard error.
    pub diagnostics: String,
}

#[derive(Parser, Debug)]
#[command(name = "gkset", version, about = "Generalized k-independent sets of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Inputs {
    /// Edge-list files ("-" reads standard input).
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Vertex ids in the files start at 1.
    #[arg(long)]
    one_indexed: bool,
    /// Number of files processed concurrently.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct KArg {
    /// Components of the induced subgraph must have at most k - 1 vertices.
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    k: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cycle-space dimension and cycle inventory.
    Analyze {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Lower bounds on alpha_k with every refinement itemized.
    Bound {
        #[command(flatten)]
        k: KArg,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Linear-time construction meeting the cycle-space bound.
    Construct {
        #[command(flatten)]
        k: KArg,
        /// Build an optimal set on extremal graphs instead.
        #[arg(long)]
        refine: bool,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Exact alpha_k by branch and bound.
    Exact {
        #[command(flatten)]
        k: KArg,
        /// Search node limit.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Checks a vertex set; exits 1 when some component has k or more vertices.
    Verify {
        #[command(flatten)]
        k: KArg,
        /// Comma-separated vertex ids.
        #[arg(long, value_parser = id_list, default_value = "")]
        set: IdList,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Tests whether the graph attains equality in the cycle-space bound.
    CheckExtremal {
        #[command(flatten)]
        k: KArg,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Decides whether a tree splits into connected k-vertex blocks.
    RtreeMember {
        #[command(flatten)]
        k: KArg,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Random tree built from k-vertex blocks.
    GenRtree {
        #[command(flatten)]
        k: KArg,
        /// Number of blocks.
        #[arg(long)]
        blocks: usize,
        #[command(flatten)]
        gen: GenArgs,
    },
    /// Random graph attaining equality in the cycle-space bound.
    GenExtremal {
        #[command(flatten)]
        k: KArg,
        /// Comma-separated cycle multipliers a_i, one per cycle of length
        /// a_i * k + 1.
        #[arg(long, value_parser = id_list, default_value = "")]
        cycles: IdList,
        /// Number of k-vertex tree blocks.
        #[arg(long, default_value_t = 0)]
        blocks: usize,
        #[command(flatten)]
        gen: GenArgs,
    },
    /// The two-cycle example graph on 5k + 2 vertices, run through every stage.
    Figure1 {
        #[command(flatten)]
        k: KArg,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Also write the graph as an edge list.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Debug)]
struct IdList(Vec<usize>);

fn id_list(s: &str) -> Result<IdList, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| format!("'{t}' is not a non-negative integer")))
        .collect::<Result<_, _>>()
        .map(IdList)
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the edge list here and the planted structure to `<out>.json`.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

/// Result of one unit of work.
struct Piece {
    code: i32,
    json: Value,
    text: String,
    diagnostics: String,
}

impl Piece {
    fn ok<T: Serialize>(value: &T, text: String) -> Piece {
        Piece::with_code(EXIT_OK, value, text)
    }

    fn with_code<T: Serialize>(code: i32, value: &T, text: String) -> Piece {
        let json = serde_json::to_value(value).expect("reports serialize");
        Piece { code, json, text, diagnostics: String::new() }
    }

    fn failed(err: &Error) -> Piece {
        Piece { code: exit_code(err), json: Value::Null, text: String::new(), diagnostics: format!("error: {err}\n") }
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::BudgetExhausted { .. } => EXIT_BUDGET,
        Error::InternalGuaranteeViolation(_) | Error::RefinementFailure { .. } => EXIT_INTERNAL,
        _ => EXIT_INVALID,
    }
}

/// Runs one command line. `argv[0]` is the program name.
pub fn dispatch<I, T>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                CommandOutcome { exit_code: EXIT_INVALID, report: String::new(), diagnostics: rendered }
            } else {
                CommandOutcome { exit_code: EXIT_OK, report: rendered, diagnostics: String::new() }
            };
        }
    };
    match cli.command {
        Command::Analyze { inputs } => over_files(&inputs, analyze),
        Command::Bound { k, inputs } => over_files(&inputs, |g| bound(g, k.get())),
        Command::Construct { k, refine, inputs } => over_files(&inputs, |g| construct(g, k.get(), refine)),
        Command::Exact { k, budget, inputs } => over_files(&inputs, |g| exact(g, k.get(), budget)),
        Command::Verify { k, set, inputs } => over_files(&inputs, |g| verify(g, k.get(), &set.0)),
        Command::CheckExtremal { k, inputs } => over_files(&inputs, |g| check_extremal(g, k.get())),
        Command::RtreeMember { k, inputs } => over_files(&inputs, |g| rtree_member(g, k.get())),
        Command::GenRtree { k, blocks, gen } => {
            let made = gkset::generate_r_tree(blocks, k.get(), gen.seed);
            generated(&gen, made.map(|t| (t.graph.clone(), t)))
        }
        Command::GenExtremal { k, cycles, blocks, gen } => {
            let made = gkset::generate_extremal(cycles.0.len(), &cycles.0, blocks, k.get(), gen.seed);
            generated(&gen, made.map(|x| (x.graph.clone(), x)))
        }
        Command::Figure1 { k, budget, out, json } => figure1(k.get(), budget, out.as_deref(), json),
    }
}

impl KArg {
    fn get(&self) -> usize {
        self.k as usize
    }
}

fn read_graph(path: &Path, one_indexed: bool) -> Result<Graph, String> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| format!("stdin: {e}"))?
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?
    };
    gkset::parse_graph_with(&text, one_indexed).map_err(|e| format!("{}: {e}", path.display()))
}

/// Applies `run` to every input file, `--jobs` at a time, and assembles the
/// outputs in input order. The exit code is the most severe one.
fn over_files<F>(inputs: &Inputs, run: F) -> CommandOutcome
where
    F: Fn(&Graph) -> Piece + Sync,
{
    let work = |path: &PathBuf| match read_graph(path, inputs.one_indexed) {
        Ok(g) => run(&g),
        Err(msg) => {
            Piece { code: EXIT_INVALID, json: Value::Null, text: String::new(), diagnostics: format!("error: {msg}\n") }
        }
    };
    let pieces: Vec<Piece> = if inputs.jobs > 1 && inputs.files.len() > 1 {
        match rayon::ThreadPoolBuilder::new().num_threads(inputs.jobs as usize).build() {
            Ok(pool) => pool.install(|| inputs.files.par_iter().map(work).collect()),
            Err(e) => {
                return CommandOutcome {
                    exit_code: EXIT_INVALID,
                    report: String::new(),
                    diagnostics: format!("error: cannot start worker threads: {e}\n"),
                }
            }
        }
    } else {
        inputs.files.iter().map(work).collect()
    };

    let many = inputs.files.len() > 1;
    let mut report = String::new();
    let mut diagnostics = String::new();
    let mut docs = Vec::new();
    for (path, piece) in inputs.files.iter().zip(&pieces) {
        let name = path.display().to_string();
        if !piece.diagnostics.is_empty() {
            for line in piece.diagnostics.lines() {
                diagnostics.push_str(&if many { format!("{name}: {line}\n") } else { format!("{line}\n") });
            }
        }
        if inputs.json {
            docs.push(json!({ "file": name, "exit_code": piece.code, "result": piece.json }));
        } else if !piece.text.is_empty() {
            if many {
                report.push_str(&format!("== {name} ==\n"));
            }
            report.push_str(&piece.text);
        }
    }
    if inputs.json {
        let doc =
            if many { Value::Array(docs) } else { docs.pop().map(|d| d["result"].clone()).unwrap_or(Value::Null) };
        if !(doc.is_null() && !many) {
            report = format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"));
        }
    }
    let exit_code = pieces.iter().map(|p| p.code).max().unwrap_or(EXIT_OK);
    CommandOutcome { exit_code, report, diagnostics }
}

#[derive(Serialize)]
pub(crate) struct AnalyzeDoc {
    pub n: usize,
    pub m: usize,
    pub components: usize,
    pub omega: usize,
    pub back_edges: Vec<(usize, usize)>,
    pub disjoint_cycles: bool,
    pub overlap_witness: Option<usize>,
    pub structure: Option<gkset::cycles::CycleSummary>,
}

fn analyze(g: &Graph) -> Piece {
    let forest = gkset::dfs_forest(g);
    let (structure, witness) = match gkset::cycle_structure(g) {
        CycleAnalysis::Disjoint(cs) => (Some(cs.summary()), None),
        CycleAnalysis::NotVertexDisjoint { witness } => (None, Some(witness)),
    };
    let doc = AnalyzeDoc {
        n: g.n(),
        m: g.m(),
        components: g.components().count,
        omega: gkset::cycle_space_dimension(g),
        back_edges: forest.back_edges,
        disjoint_cycles: structure.is_some(),
        overlap_witness: witness,
        structure,
    };
    let text = render::analyze(&doc);
    Piece::ok(&doc, text)
}

fn bound(g: &Graph, k: usize) -> Piece {
    match gkset::refined_bound(g, k) {
        Ok(r) => {
            let text = render::bound(&r);
            Piece::ok(&r, text)
        }
        Err(e) => Piece::failed(&e),
    }
}

fn construct(g: &Graph, k: usize, refine: bool) -> Piece {
    let made = if refine { gkset::equality_refinement(g, k) } else { gkset::construct_set(g, k) };
    match made {
        Ok(s) => {
            let code = if s.meets_guarantee() { EXIT_OK } else { EXIT_INTERNAL };
            let text = render::gkset(&s);
            Piece::with_code(code, &s, text)
        }
        Err(e) => Piece::failed(&e),
    }
}

fn exact(g: &Graph, k: usize, budget: u64) -> Piece {
    match gkset::exact_alpha(g, k, budget) {
        Ok(r) => {
            let text = render::exact(&r);
            Piece::ok(&r, text)
        }
        Err(Error::BudgetExhausted { best }) => {
            let text = render::exact(&best);
            let mut p = Piece::with_code(EXIT_BUDGET, &*best, text);
            p.diagnostics = format!(
                "error: search budget exhausted after {} nodes; alpha shown is a lower bound\n",
                best.nodes_explored
            );
            p
        }
        Err(e) => Piece::failed(&e),
    }
}

#[derive(Serialize)]
struct VerifyDoc {
    k: usize,
    size: usize,
    max_component: usize,
    valid: bool,
}

fn verify(g: &Graph, k: usize, set: &[usize]) -> Piece {
    let mut set = set.to_vec();
    set.sort_unstable();
    set.dedup();
    match gkset::verify_set(g, k, &set) {
        Ok(max_component) => {
            let doc = VerifyDoc { k, size: set.len(), max_component, valid: max_component < k };
            let verdict = if doc.valid { "valid" } else { "invalid" };
            let text = format!("{verdict}: {} vertices, max component {max_component} (k = {k})\n", doc.size);
            Piece::with_code(if doc.valid { EXIT_OK } else { EXIT_INVALID }, &doc, text)
        }
        Err(e) => Piece::failed(&e),
    }
}

fn check_extremal(g: &Graph, k: usize) -> Piece {
    match gkset::check_extremal(g, k) {
        Ok(r) => {
            let text = render::extremal(&r);
            Piece::ok(&r, text)
        }
        Err(e) => Piece::failed(&e),
    }
}

fn rtree_member(g: &Graph, k: usize) -> Piece {
    match gkset::r_membership(g, k) {
        Ok(m) => {
            let text = render::membership(&m, k);
            Piece::ok(&m, text)
        }
        Err(e) => Piece::failed(&e),
    }
}

fn generated<T: Serialize>(gen: &GenArgs, made: gkset::Result<(Graph, T)>) -> CommandOutcome {
    let (graph, planted) = match made {
        Ok(x) => x,
        Err(e) => return failure(&e),
    };
    let edges = gkset::write_graph(&graph);
    let sidecar = serde_json::to_string_pretty(&planted).expect("json");
    match &gen.out {
        Some(path) => {
            let side = sidecar_path(path);
            if let Err(e) = std::fs::write(path, &edges).and_then(|_| std::fs::write(&side, format!("{sidecar}\n"))) {
                return CommandOutcome {
                    exit_code: EXIT_INVALID,
                    report: String::new(),
                    diagnostics: format!("error: {}: {e}\n", path.display()),
                };
            }
            let report = if gen.json {
                format!("{sidecar}\n")
            } else {
                format!("wrote {} (n = {}, m = {}) and {}\n", path.display(), graph.n(), graph.m(), side.display())
            };
            CommandOutcome { exit_code: EXIT_OK, report, diagnostics: String::new() }
        }
        None => {
            let report = if gen.json { format!("{sidecar}\n") } else { edges };
            CommandOutcome { exit_code: EXIT_OK, report, diagnostics: String::new() }
        }
    }
}

fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

fn failure(e: &Error) -> CommandOutcome {
    CommandOutcome { exit_code: exit_code(e), report: String::new(), diagnostics: format!("error: {e}\n") }
}

fn figure1(k: usize, budget: u64, out: Option<&Path>, json: bool) -> CommandOutcome {
    let g = gkset::figure1_graph(k);
    if let Some(path) = out {
        if let Err(e) = std::fs::write(path, gkset::write_graph(&g)) {
            return CommandOutcome {
                exit_code: EXIT_INVALID,
                report: String::new(),
                diagnostics: format!("error: {}: {e}\n", path.display()),
            };
        }
    }
    match gkset::pipeline::run_pipeline(&g, k, budget) {
        Ok(r) => {
            let exit_code = if r.exact.is_some() && !r.exact_proven { EXIT_BUDGET } else { EXIT_OK };
            let report = if json {
                format!("{}\n", serde_json::to_string_pretty(&r).expect("json"))
            } else {
                render::pipeline(&r)
            };
            CommandOutcome { exit_code, report, diagnostics: String::new() }
        }
        Err(e) => failure(&e),
    }
}
