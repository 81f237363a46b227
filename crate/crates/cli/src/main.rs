use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gpot_core::graph::{coloring_boundary_move, normalize_coloring, ColoredGraph};
use gpot_core::mutation::{check_certificate, mu_nu_factors, mutate};
use gpot_core::period::{laplace_to_periods, periods_of_graph_with, BruteOptions, Method, PeriodSequence};
use gpot_core::potential::{graph_potential, grassmannian_limit};
use gpot_core::tqft::{glue, k_state_with, trace_table, wdvv_check, KernelMatrix};
use gpot_core::Error;
use serde_json::{json, Value};

mod render;

use render::{period_csv, period_json, period_text, poly_text, series_json, table_csv, table_json, table_text};

#[derive(Parser)]
#[command(name = "gpot", version, about = "Graph potentials, mutations and period sequences")]
struct Cli {
    /// worker threads for period and table computations
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the graph potential
    Potential {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Period sequence of a graph, or of a (genus, parity) class
    Period(PeriodArgs),
    /// Apply the elementary transformation at an edge and print the new graph
    Mutate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        edge: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Symbolic checks
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Period table from the trace formula, rows k, columns (genus, parity)
    #[command(alias = "tqft-table")]
    Table {
        #[arg(long, default_value_t = 6)]
        genus_max: usize,
        #[arg(long, default_value = "both")]
        parity: ParityChoice,
        #[arg(long, default_value_t = 12)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Dump the entries of the one-bead kernel
    Kernel {
        #[arg(long, default_value_t = 6)]
        order: usize,
    },
    /// Degenerate the potential of an uncolored tree
    Grassmann {
        #[arg(long)]
        graph: PathBuf,
        /// distinguished slot per vertex, as `vertex=slot`, repeated or comma separated
        #[arg(long = "slot", value_delimiter = ',', required = true)]
        slots: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check invariance of the four-point function under permutations
    Wdvv {
        #[arg(long, default_value_t = 6)]
        order: usize,
        #[arg(long, default_value = "both")]
        parity: ParityChoice,
    },
    /// Integrate out the internal edges, then join two leaves
    Glue {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        leaf_a: String,
        #[arg(long)]
        leaf_b: String,
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args)]
struct PeriodArgs {
    #[arg(long, conflicts_with_all = ["genus", "parity"])]
    graph: Option<PathBuf>,
    #[arg(long, requires = "parity")]
    genus: Option<usize>,
    #[arg(long, requires = "genus", value_parser = clap::value_parser!(u8).range(0..=1))]
    parity: Option<u8>,
    #[arg(long, default_value_t = 12)]
    order: usize,
    /// default: `both` for a graph file, `tqft` for a (genus, parity) class
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// cap on the brute-force running product, 0 for no cap
    #[arg(long, default_value_t = 4_000_000)]
    max_terms: usize,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Certificate for the mutation at one edge, or at every non-loop edge
    Mutation {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        edge: Option<String>,
    },
    /// Moving a color across an edge inverts that edge variable
    Coloring {
        #[arg(long)]
        graph: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Brute,
    Tqft,
    Both,
}

#[derive(Clone, Copy)]
enum ParityChoice {
    One(u8),
    Both,
}

impl std::str::FromStr for ParityChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "0" => Ok(ParityChoice::One(0)),
            "1" => Ok(ParityChoice::One(1)),
            "both" => Ok(ParityChoice::Both),
            _ => Err(format!("expected 0, 1 or both, got `{s}`")),
        }
    }
}

impl ParityChoice {
    fn parities(self) -> Vec<u8> {
        match self {
            ParityChoice::One(p) => vec![p],
            ParityChoice::Both => vec![0, 1],
        }
    }
}

/// Failure with the exit code it maps to.
#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidGraph(diags) => CliError::Input(format!("invalid graph:\n  {}", diags.join("\n  "))),
            Error::Verification(_) | Error::Mismatch { .. } | Error::NonIntegral { .. } => {
                CliError::Verification(e.to_string())
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

type Out = Result<String, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(s) => {
            emit(&s);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

/// Writes to stdout with a trailing newline. A closed pipe is not an error.
fn emit(s: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let nl = if s.ends_with('\n') { "" } else { "\n" };
    let _ = out.write_all(s.as_bytes()).and_then(|_| out.write_all(nl.as_bytes()));
}

fn load_graph(path: &Path) -> Result<ColoredGraph, CliError> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let g = ColoredGraph::from_json(&raw)?;
    g.check()?;
    Ok(g)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn graph_value(g: &ColoredGraph) -> Value {
    serde_json::from_str(&g.to_json()).expect("graph JSON parses")
}

fn run(cmd: Command) -> Out {
    match cmd {
        Command::Potential { graph, format } => {
            let b = graph_potential(&load_graph(&graph)?)?;
            Ok(match format {
                Format::Json => pretty(&b.potential.to_json_value()),
                _ => poly_text(&b.potential),
            })
        }
        Command::Period(args) => cmd_period(args),
        Command::Mutate { graph, edge, format } => {
            let b = graph_potential(&load_graph(&graph)?)?;
            let (b2, cert) = mutate(&b, &edge)?;
            Ok(match format {
                Format::Json => pretty(&json!({
                    "graph": graph_value(&b2.graph),
                    "certificate": cert.to_json_value(),
                })),
                _ => format!("{}\n{}", b2.graph.to_json(), poly_text(&b2.potential)),
            })
        }
        Command::Verify(VerifyCommand::Mutation { graph, edge }) => cmd_verify_mutation(&graph, edge),
        Command::Verify(VerifyCommand::Coloring { graph }) => cmd_verify_coloring(&graph),
        Command::Table {
            genus_max,
            parity,
            order,
            format,
        } => {
            if genus_max < 2 {
                return Err(CliError::Input("--genus-max must be at least 2".into()));
            }
            let keep = parity.parities();
            let mut columns = Vec::new();
            for (g, e, series) in trace_table(genus_max, order) {
                if keep.contains(&e) {
                    columns.push((g, e, laplace_to_periods(&series)?));
                }
            }
            Ok(match format {
                Format::Csv => table_csv(&columns, order),
                Format::Json => pretty(&table_json(&columns)),
                Format::Text => table_text(&columns, order),
            })
        }
        Command::Kernel { order } => {
            let a = KernelMatrix::t1_kernel(order);
            let n = order as i64;
            let mut entries = Vec::new();
            for i in -n..=n {
                for j in -n..=n {
                    let s = a.entry(i, j);
                    if !s.is_zero() {
                        let coeffs: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
                        entries.push(json!({ "i": i, "j": j, "coeffs": coeffs }));
                    }
                }
            }
            Ok(pretty(&json!({ "order": order, "entries": entries })))
        }
        Command::Grassmann { graph, slots, format } => {
            let g = load_graph(&graph)?;
            let mut map = BTreeMap::new();
            for s in slots {
                let (v, slot) = s
                    .split_once('=')
                    .ok_or_else(|| CliError::Input(format!("expected vertex=slot, got `{s}`")))?;
                map.insert(v.trim().to_string(), slot.trim().to_string());
            }
            let w = grassmannian_limit(&g, &map)?;
            Ok(match format {
                Format::Json => pretty(&w.to_json_value()),
                _ => poly_text(&w),
            })
        }
        Command::Wdvv { order, parity } => {
            let parities = parity.parities();
            for &p in &parities {
                if !wdvv_check(p, order)? {
                    return Err(CliError::Verification(format!("FAIL parity {p}")));
                }
            }
            Ok(if parities.len() == 2 {
                "OK both parities".to_string()
            } else {
                format!("OK parity {}", parities[0])
            })
        }
        Command::Glue {
            graph,
            leaf_a,
            leaf_b,
            order,
            format,
        } => {
            let g = load_graph(&graph)?;
            let s = glue(&k_state_with(&g, order, BruteOptions::default())?, &leaf_a, &leaf_b)?;
            Ok(match format {
                Format::Json => pretty(&series_json(&s.value)),
                _ => s
                    .value
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(k, c)| format!("t^{k}: {c}\n"))
                    .collect(),
            })
        }
    }
}

fn cmd_period(args: PeriodArgs) -> Out {
    let (g, default_method) = match (&args.graph, args.genus, args.parity) {
        (Some(path), _, _) => (load_graph(path)?, MethodArg::Both),
        (None, Some(genus), Some(parity)) => (ColoredGraph::closed_necklace(genus, parity)?, MethodArg::Tqft),
        _ => return Err(CliError::Input("give --graph, or --genus with --parity".into())),
    };
    let opts = BruteOptions {
        max_terms: (args.max_terms > 0).then_some(args.max_terms),
    };
    let run = |m| periods_of_graph_with(&g, args.order, m, opts);
    let seq = match args.method.unwrap_or(default_method) {
        MethodArg::Brute => run(Method::Brute)?,
        MethodArg::Tqft => run(Method::Tqft)?,
        MethodArg::Both => {
            let (b, t) = (run(Method::Brute)?, run(Method::Tqft)?);
            if b.pi != t.pi {
                let k = (0..=args.order).find(|&k| b.pi[k] != t.pi[k]).unwrap_or(0);
                return Err(CliError::Verification(format!(
                    "methods disagree first at k = {k}\nbrute: {}\ntqft:  {}",
                    join(&b),
                    join(&t)
                )));
            }
            b
        }
    };
    Ok(match args.format {
        Format::Json => pretty(&period_json(&seq)),
        Format::Csv => period_csv(&seq),
        Format::Text => period_text(&seq),
    })
}

fn join(s: &PeriodSequence) -> String {
    s.pi.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}

fn cmd_verify_mutation(path: &Path, edge: Option<String>) -> Out {
    let g = load_graph(path)?;
    let b = graph_potential(&g)?;
    let edges: Vec<String> = match edge {
        Some(e) => vec![e],
        None => g.edges.iter().filter(|e| !e.is_loop()).map(|e| e.id.clone()).collect(),
    };
    let mut certs = Vec::new();
    let mut failed = Vec::new();
    for e in &edges {
        let cert = mu_nu_factors(&b, e)?;
        if !check_certificate(&b, &cert)? {
            failed.push(e.clone());
        }
        certs.push(cert.to_json_value());
    }
    let out = if certs.len() == 1 {
        pretty(&certs[0])
    } else {
        pretty(&Value::Array(certs))
    };
    if failed.is_empty() {
        Ok(out)
    } else {
        emit(&out);
        Err(CliError::Verification(format!("certificate fails at {}", failed.join(", "))))
    }
}

fn cmd_verify_coloring(path: &Path) -> Out {
    let g = load_graph(path)?;
    let w = graph_potential(&g)?.potential;
    let mut failed = Vec::new();
    for e in &g.edges {
        let moved = graph_potential(&coloring_boundary_move(&g, &e.id)?)?.potential;
        if w.invert_vars(&[&e.id])? != moved {
            failed.push(e.id.clone());
        }
    }
    if !failed.is_empty() {
        return Err(CliError::Verification(format!(
            "moving the color across {} does not invert the edge variable",
            failed.join(", ")
        )));
    }
    let (normal, moves) = normalize_coloring(&g)?;
    let mut chained = w;
    for m in &moves {
        chained = chained.invert_vars(&[m])?;
    }
    if chained != graph_potential(&normal)?.potential {
        return Err(CliError::Verification("normalized coloring does not match the move chain".into()));
    }
    Ok(pretty(&json!({
        "edges_checked": g.edges.len(),
        "moves": moves,
        "normalized": graph_value(&normal),
    })))
}
