//! Command-line front end: winnability, q-reduction, burning reports,
//! linear equivalence, Jacobians, weighted quotients, and the word census,
//! over the JSON file formats of the library.
//!
//! Exit codes: 0 success, 2 input validation, 3 computation limits,
//! 4 precondition violations (e.g. a non-q-effective divisor for `burn`).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use chipfire::quotient::{self, GroupAction, HalfEdgeGraph};
use chipfire::solvers::{self, Winnability};
use chipfire::words::{self, CensusEntry, PairingReport};
use chipfire::{io as cfio, Divisor, FiringScript, GraphSpec, WeightedGraph};

#[derive(Parser)]
#[command(name = "chipfire", version, about = "Chip-firing (the Dollar Game) on weighted graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format; `dot` renders a graph annotated with the result.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the Dollar Game for a divisor.
    Winnable {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        divisor: PathBuf,
    },
    /// q-reduce a divisor and report the cumulative script.
    Reduce {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        divisor: PathBuf,
        /// Vertex id to reduce toward.
        #[arg(long)]
        q: String,
    },
    /// Run the burning algorithm once and report script, candidates, and trace.
    Burn {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        divisor: PathBuf,
        #[arg(long)]
        q: String,
    },
    /// Find a firing script between two divisors, if one exists.
    Equiv {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        d1: PathBuf,
        #[arg(long)]
        d2: PathBuf,
    },
    /// Invariant factors and order of the Jacobian group.
    Jacobian {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Build the weighted quotient under a group action.
    Quotient {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        action: PathBuf,
        /// Optional divisor to push forward to the quotient.
        #[arg(long)]
        divisor: Option<PathBuf>,
    },
    /// List all words starting at q with the divisor of each word.
    Words {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        q: String,
    },
    /// Census of maximally unwinnable divisors plus the pairing report.
    Maxunwin {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        q: String,
    },
    /// Print the weighted Laplacian.
    Laplacian {
        #[arg(long)]
        graph: PathBuf,
    },
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn validation(message: impl Into<String>) -> CliError {
        CliError { code: 2, message: message.into() }
    }
}

impl From<cfio::IoError> for CliError {
    fn from(e: cfio::IoError) -> CliError {
        CliError::validation(e.to_string())
    }
}

impl From<solvers::SolverError> for CliError {
    fn from(e: solvers::SolverError) -> CliError {
        let code = match e {
            solvers::SolverError::NotQEffective { .. } => 4,
            solvers::SolverError::IterationCapExceeded { .. } => 3,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<words::WordError> for CliError {
    fn from(e: words::WordError) -> CliError {
        match e {
            words::WordError::Solver(inner) => inner.into(),
            words::WordError::ChargeAtQNotOne { .. } | words::WordError::NotQReduced { .. } => {
                CliError { code: 4, message: e.to_string() }
            }
            words::WordError::InvalidWord { .. } => CliError::validation(e.to_string()),
        }
    }
}

impl From<quotient::ActionError> for CliError {
    fn from(e: quotient::ActionError) -> CliError {
        CliError::validation(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            println!("{output}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn read_to_string(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::validation(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<WeightedGraph, CliError> {
    Ok(cfio::graph_from_json(&read_to_string(path)?)?)
}

fn load_divisor(g: &WeightedGraph, path: &Path) -> Result<Divisor, CliError> {
    Ok(cfio::divisor_from_json(g, &read_to_string(path)?)?)
}

fn resolve_q(g: &WeightedGraph, q: &str) -> Result<usize, CliError> {
    g.vertex_index(q)
        .ok_or_else(|| CliError::validation(format!("vertex {q:?} is not in the graph")))
}

fn divisor_map(g: &WeightedGraph, d: &Divisor) -> BTreeMap<String, i64> {
    (0..g.vertex_count()).map(|v| (g.vertex_id(v).to_owned(), d[v])).collect()
}

fn script_map(g: &WeightedGraph, s: &FiringScript) -> BTreeMap<String, i64> {
    (0..g.vertex_count()).map(|v| (g.vertex_id(v).to_owned(), s[v])).collect()
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("reports serialize")
}

fn dot_unsupported() -> CliError {
    CliError::validation("dot output is not available for this command")
}

/// DOT rendering: node size scales with vertex weight, edge width with
/// edge weight, chip counts as labels.
fn render_dot(g: &WeightedGraph, divisor: Option<&Divisor>) -> String {
    let mut out = String::from("graph {\n  node [shape=circle, fixedsize=true];\n");
    for v in 0..g.vertex_count() {
        let size = 0.3 + 0.2 * (g.vertex_weight(v) as f64);
        let label = match divisor {
            Some(d) => format!("{} ({})", g.vertex_id(v), d[v]),
            None => g.vertex_id(v).to_owned(),
        };
        let _ = writeln!(
            out,
            "  \"{}\" [width={:.1}, xlabel=\"w={}\", label=\"{}\"];",
            g.vertex_id(v),
            size,
            g.vertex_weight(v),
            label
        );
    }
    for e in g.edges() {
        for _ in 0..e.mult {
            let _ = writeln!(
                out,
                "  \"{}\" -- \"{}\" [penwidth={}, label=\"{}\"];",
                g.vertex_id(e.u),
                g.vertex_id(e.v),
                e.weight,
                e.weight
            );
        }
    }
    out.push('}');
    out
}

#[derive(Serialize)]
struct WinnableReport {
    winnable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<BTreeMap<String, i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    script: Option<BTreeMap<String, i64>>,
}

#[derive(Serialize)]
struct ReduceReport {
    divisor: BTreeMap<String, i64>,
    script: BTreeMap<String, i64>,
}

#[derive(Serialize)]
struct BurnTraceEntry {
    vertex: String,
    pass: u32,
}

#[derive(Serialize)]
struct BurnJsonReport {
    script: BTreeMap<String, i64>,
    candidates: Vec<BTreeMap<String, i64>>,
    trace: Vec<BurnTraceEntry>,
    iterations: u64,
}

#[derive(Serialize)]
struct EquivReport {
    equivalent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    script: Option<BTreeMap<String, i64>>,
}

#[derive(Serialize)]
struct QuotientReport {
    #[serde(flatten)]
    graph: GraphSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pushforward: Option<BTreeMap<String, i64>>,
}

#[derive(Serialize)]
struct WordReport {
    word: Vec<String>,
    divisor: BTreeMap<String, i64>,
}

#[derive(Serialize)]
struct WordsReport {
    q: String,
    count: usize,
    words: Vec<WordReport>,
}

#[derive(Serialize)]
struct CensusJsonEntry {
    word: Vec<String>,
    divisor: BTreeMap<String, i64>,
    class_representative: BTreeMap<String, i64>,
}

#[derive(Serialize)]
struct PairJson {
    left: usize,
    right: usize,
    sum: BTreeMap<String, i64>,
    class_representative: BTreeMap<String, i64>,
}

#[derive(Serialize)]
struct SumClassJson {
    class_representative: BTreeMap<String, i64>,
    pairs: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct PairingJson {
    sums: Vec<PairJson>,
    classes: Vec<SumClassJson>,
    val_minus_two: BTreeMap<String, i64>,
    val_minus_two_matches: Option<usize>,
}

#[derive(Serialize)]
struct MaxunwinReport {
    census: Vec<CensusJsonEntry>,
    pairing: PairingJson,
}

#[derive(Serialize)]
struct LaplacianReport {
    order: Vec<String>,
    matrix: Vec<Vec<i64>>,
}

fn pairing_json(g: &WeightedGraph, report: &PairingReport) -> PairingJson {
    PairingJson {
        sums: report
            .sums
            .iter()
            .map(|p| PairJson {
                left: p.left,
                right: p.right,
                sum: divisor_map(g, &p.sum),
                class_representative: divisor_map(g, &p.class_rep),
            })
            .collect(),
        classes: report
            .groups
            .iter()
            .map(|grp| SumClassJson {
                class_representative: divisor_map(g, &grp.class_rep),
                pairs: grp.pairs.clone(),
            })
            .collect(),
        val_minus_two: divisor_map(g, &report.val_minus_two),
        val_minus_two_matches: report.val_minus_two_group,
    }
}

fn census_json(
    g: &WeightedGraph,
    census: &[CensusEntry],
    q: usize,
) -> Result<Vec<CensusJsonEntry>, CliError> {
    census
        .iter()
        .map(|entry| {
            let (rep, _) = solvers::q_reduce(g, &entry.divisor, q)?;
            Ok(CensusJsonEntry {
                word: entry.word.to_ids(g),
                divisor: divisor_map(g, &entry.divisor),
                class_representative: divisor_map(g, &rep),
            })
        })
        .collect()
}

fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Winnable { graph, divisor } => {
            let g = load_graph(graph)?;
            let d = load_divisor(&g, divisor)?;
            let outcome = solvers::is_winnable(&g, &d)?;
            match cli.format {
                Format::Json => {
                    let report = match outcome {
                        Winnability::Winnable { script, witness } => WinnableReport {
                            winnable: true,
                            witness: Some(divisor_map(&g, &witness)),
                            script: Some(script_map(&g, &script)),
                        },
                        Winnability::Unwinnable => {
                            WinnableReport { winnable: false, witness: None, script: None }
                        }
                    };
                    Ok(json(&report))
                }
                Format::Dot => match outcome {
                    Winnability::Winnable { witness, .. } => Ok(render_dot(&g, Some(&witness))),
                    Winnability::Unwinnable => Ok(render_dot(&g, Some(&d))),
                },
            }
        }
        Command::Reduce { graph, divisor, q } => {
            let g = load_graph(graph)?;
            let d = load_divisor(&g, divisor)?;
            let q = resolve_q(&g, q)?;
            let (reduced, script) = solvers::q_reduce(&g, &d, q)?;
            match cli.format {
                Format::Json => Ok(json(&ReduceReport {
                    divisor: divisor_map(&g, &reduced),
                    script: script_map(&g, &script),
                })),
                Format::Dot => Ok(render_dot(&g, Some(&reduced))),
            }
        }
        Command::Burn { graph, divisor, q } => {
            if cli.format == Format::Dot {
                return Err(dot_unsupported());
            }
            let g = load_graph(graph)?;
            let d = load_divisor(&g, divisor)?;
            let q = resolve_q(&g, q)?;
            let report = solvers::modified_burning(&g, &d, q)?;
            Ok(json(&BurnJsonReport {
                script: script_map(&g, &report.script),
                candidates: report.candidates.iter().map(|c| script_map(&g, c)).collect(),
                trace: report
                    .trace
                    .iter()
                    .map(|e| BurnTraceEntry {
                        vertex: g.vertex_id(e.vertex).to_owned(),
                        pass: e.pass,
                    })
                    .collect(),
                iterations: report.iterations,
            }))
        }
        Command::Equiv { graph, d1, d2 } => {
            if cli.format == Format::Dot {
                return Err(dot_unsupported());
            }
            let g = load_graph(graph)?;
            let a = load_divisor(&g, d1)?;
            let b = load_divisor(&g, d2)?;
            let report = match solvers::linear_equiv(&g, &a, &b) {
                Some(script) => {
                    EquivReport { equivalent: true, script: Some(script_map(&g, &script)) }
                }
                None => EquivReport { equivalent: false, script: None },
            };
            Ok(json(&report))
        }
        Command::Jacobian { graph } => {
            if cli.format == Format::Dot {
                return Err(dot_unsupported());
            }
            let g = load_graph(graph)?;
            Ok(json(&solvers::jacobian(&g)))
        }
        Command::Quotient { graph, action, divisor } => {
            let text = read_to_string(graph)?;
            let spec: GraphSpec =
                serde_json::from_str(&text).map_err(|e| CliError::validation(e.to_string()))?;
            let g = HalfEdgeGraph::from_spec(&spec)
                .map_err(|e| CliError::validation(e.to_string()))?;
            let action_spec = cfio::action_from_json(&read_to_string(action)?)?;
            let action = GroupAction::from_spec(&g, &action_spec)?;
            let group = quotient::validate_action(&g, &action)?;
            let q = quotient::build_quotient(&g, &group);
            let pushforward = divisor
                .as_ref()
                .map(|path| -> Result<BTreeMap<String, i64>, CliError> {
                    let d = load_divisor(g.graph(), path)?;
                    Ok(divisor_map(&q.graph, &q.pushforward(&d)))
                })
                .transpose()?;
            match cli.format {
                Format::Json => Ok(json(&QuotientReport { graph: q.graph.to_spec(), pushforward })),
                Format::Dot => Ok(render_dot(&q.graph, None)),
            }
        }
        Command::Words { graph, q } => {
            if cli.format == Format::Dot {
                return Err(dot_unsupported());
            }
            let g = load_graph(graph)?;
            let q = resolve_q(&g, q)?;
            let list = words::enumerate_words(&g, q)?;
            let reports: Vec<WordReport> = list
                .iter()
                .map(|w| WordReport {
                    word: w.to_ids(&g),
                    divisor: divisor_map(&g, &words::divisor_of_word(&g, w)),
                })
                .collect();
            Ok(json(&WordsReport {
                q: g.vertex_id(q).to_owned(),
                count: reports.len(),
                words: reports,
            }))
        }
        Command::Maxunwin { graph, q } => {
            if cli.format == Format::Dot {
                return Err(dot_unsupported());
            }
            let g = load_graph(graph)?;
            let q = resolve_q(&g, q)?;
            let census = words::max_unwinnable_census(&g, q)?;
            let pairing = words::pairing_exploration(&g, &census, q)?;
            Ok(json(&MaxunwinReport {
                census: census_json(&g, &census, q)?,
                pairing: pairing_json(&g, &pairing),
            }))
        }
        Command::Laplacian { graph } => {
            let g = load_graph(graph)?;
            match cli.format {
                Format::Json => Ok(json(&LaplacianReport {
                    order: (0..g.vertex_count()).map(|v| g.vertex_id(v).to_owned()).collect(),
                    matrix: g.laplacian().rows(),
                })),
                Format::Dot => Ok(render_dot(&g, None)),
            }
        }
    }
}
