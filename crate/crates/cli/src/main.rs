//! `cliquesparse`: parameter reports, generators, width solvers and
//! verification suites over graphs read from edge-list or graph6 files.

mod verify;

use std::collections::HashMap;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cliquesparse::cliques::{clique_linegraph, maximal_cliques, twin_partition};
use cliquesparse::decomposition::exact_mu_treewidth;
use cliquesparse::generators::{generate, Family, FamilySpec, QInner};
use cliquesparse::graph::{parse_graph, serialize_graph, Format};
use cliquesparse::measure::Measure;
use cliquesparse::menger::{induced_menger, MengerOutcome};
use cliquesparse::params::{parameter_profile, verify_inequalities};
use cliquesparse::patterns::pattern_certificate;
use cliquesparse::rank::{exact_rankwidth, qk_reduction_check};
use cliquesparse::{Error, Graph, VertexSet};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

const SCHEMA: &str = "cliquesparse-report/1";

const EXIT_FAILED_CHECKS: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_CAPACITY: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "cliquesparse", version, about = "Clique-sparsity toolkit for small graphs")]
struct Cli {
    /// Compact JSON (the default for reports).
    #[arg(long, global = true)]
    json: bool,
    /// Indented JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Graph file; standard input when omitted or `-`.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Input format; guessed from the extension (`.g6` is graph6) otherwise edge list.
    #[arg(long, value_parser = parse_format)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Clique-sparsity parameters and the inequality clauses between them.
    Params(Input),
    /// Twin classes and the clique-quotient graph.
    Quotient(Input),
    /// Maximal cliques.
    Cliques(Input),
    /// Prints a member of a generator family.
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        /// Chain length for `Q-<inner>` families.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_parser = parse_format, default_value = "edgelist")]
        format: Format,
    },
    /// Exact mu-treewidth with a witness decomposition.
    Tw {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = parse_measure, default_value = "alpha")]
        measure: Measure,
        /// Report cardinality treewidth as max bag size minus one.
        #[arg(long)]
        standard: bool,
    },
    /// Exact rankwidth with a witness decomposition.
    Rankwidth(Input),
    /// Induced linkage of order k between A and B, or a small separator.
    Menger {
        #[command(flatten)]
        input: Input,
        /// Comma-separated vertex labels.
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Searches for an order-k split or clique matching, anti-matching or half-graph.
    Certify {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Runs the vertex-minor reduction of a chained construction.
    VmCheck {
        /// One of MKK, HKK, MKI, AKK.
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
    },
    /// Seeded property suites over random graphs.
    Verify {
        /// inequalities, quotient, widths, menger, rank, patterns or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_measure(s: &str) -> Result<Measure, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A failure with its exit code.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Capacity { .. } => EXIT_CAPACITY,
            Error::Parse { .. } | Error::Domain(_) => EXIT_DOMAIN,
        };
        Failure(code, e.to_string())
    }
}

struct Loaded {
    graph: Graph,
    digest: String,
}

impl Input {
    fn load(&self) -> Result<Loaded, Failure> {
        let mut bytes = Vec::new();
        let read = match &self.input {
            Some(p) if p.as_os_str() != "-" => std::fs::read(p).map(|b| bytes = b),
            _ => std::io::stdin().read_to_end(&mut bytes).map(|_| ()),
        };
        read.map_err(|e| Failure(EXIT_DOMAIN, format!("cannot read input: {e}")))?;
        let text = String::from_utf8(bytes).map_err(|_| Failure(EXIT_DOMAIN, "input is not UTF-8".into()))?;
        let format = self.format.unwrap_or_else(|| match &self.input {
            Some(p) if p.extension().is_some_and(|e| e == "g6") => Format::Graph6,
            _ => Format::EdgeList,
        });
        let graph = parse_graph(&text, format)?;
        let digest = Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect();
        Ok(Loaded { graph, digest })
    }
}

fn labels(g: &Graph, s: &VertexSet) -> Vec<String> {
    s.iter().map(|v| g.label(v)).collect()
}

fn label_list(g: &Graph, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| g.label(v)).collect()
}

/// Translates comma-separated input labels back to vertex ids.
fn vertex_list(g: &Graph, text: &str) -> Result<VertexSet, Failure> {
    let index: HashMap<String, usize> = (0..g.n()).map(|v| (g.label(v), v)).collect();
    let mut s = VertexSet::new(g.n());
    for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v = index
            .get(tok)
            .ok_or_else(|| Failure(EXIT_DOMAIN, format!("unknown vertex '{tok}'")))?;
        s.insert(*v);
    }
    Ok(s)
}

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

struct Report {
    command: &'static str,
    digest: Option<String>,
    seed: Option<u64>,
    results: Value,
    failed_checks: bool,
}

impl Report {
    fn new(command: &'static str, digest: Option<String>, results: Value) -> Self {
        Report { command, digest, seed: None, results, failed_checks: false }
    }
}

enum Output {
    Report(Report),
    Text(String),
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let report = match &cli.command {
        Command::Params(input) => {
            let Loaded { graph: g, digest } = input.load()?;
            let mut results = to_value(parameter_profile(&g)?);
            results["n"] = json!(g.n());
            results["edges"] = json!(g.edge_count());
            results["inequalities"] = to_value(verify_inequalities(&g)?);
            Report::new("params", Some(digest), results)
        }
        Command::Quotient(input) => {
            let Loaded { graph: g, digest } = input.load()?;
            let q = twin_partition(&g);
            let classes: Vec<Vec<String>> = q.classes.iter().map(|c| labels(&g, c)).collect();
            let edges: Vec<(usize, usize)> = q.quotient.edges().collect();
            let results = json!({
                "classes": classes,
                "representatives": labels(&g, &q.representatives()),
                "quotient": { "n": q.quotient.n(), "edges": edges },
            });
            Report::new("quotient", Some(digest), results)
        }
        Command::Cliques(input) => {
            let Loaded { graph: g, digest } = input.load()?;
            let k = maximal_cliques(&g)?;
            let cliques: Vec<Vec<String>> = k.cliques.iter().map(|c| labels(&g, c)).collect();
            let results = json!({
                "count": k.len(),
                "cliques": cliques,
                "cideg": k.max_degree(),
                "cdeg": clique_linegraph(&k).max_degree(),
            });
            Report::new("cliques", Some(digest), results)
        }
        Command::Gen { family, n, k, format } => {
            let g = generate(FamilySpec::new(Family::parse(family, *k)?, *n))?;
            let text = serialize_graph(&g, *format);
            if !(cli.json || cli.pretty) {
                return Ok(Output::Text(text));
            }
            let edges: Vec<(usize, usize)> = g.edges().collect();
            Report::new("gen", None, json!({ "family": family, "n": g.n(), "edges": edges, "text": text }))
        }
        Command::Tw { input, measure, standard } => {
            let Loaded { graph: g, digest } = input.load()?;
            let (w, td) = exact_mu_treewidth(&g, *measure)?;
            let shift = *standard && *measure == Measure::Cardinality && w > 0;
            let bags: Vec<Vec<String>> = td.bags.iter().map(|b| labels(&g, b)).collect();
            let results = json!({
                "measure": measure,
                "width": if shift { w - 1 } else { w },
                "convention": if shift { "max bag size minus one" } else { "max bag measure" },
                "decomposition": { "nodes": td.nodes(), "edges": td.tree_edges, "bags": bags },
            });
            Report::new("tw", Some(digest), results)
        }
        Command::Rankwidth(input) => {
            let Loaded { graph: g, digest } = input.load()?;
            let (w, rd) = exact_rankwidth(&g)?;
            let leaves: serde_json::Map<String, Value> =
                rd.leaf_map.iter().enumerate().map(|(v, &node)| (g.label(v), json!(node))).collect();
            let results = json!({
                "width": w,
                "decomposition": { "nodes": rd.node_count(), "edges": rd.tree_edges, "leaves": leaves },
            });
            Report::new("rankwidth", Some(digest), results)
        }
        Command::Menger { input, a, b, k } => {
            let Loaded { graph: g, digest } = input.load()?;
            let (a, b) = (vertex_list(&g, a)?, vertex_list(&g, b)?);
            let results = match induced_menger(&g, &a, &b, *k)? {
                MengerOutcome::Linkage { paths, bound } => {
                    let paths: Vec<Vec<String>> = paths.iter().map(|p| label_list(&g, p)).collect();
                    json!({ "kind": "linkage", "k": k, "paths": paths, "bound": bound })
                }
                MengerOutcome::Separator { vertices, theta, quotient_size, bound } => json!({
                    "kind": "separator",
                    "k": k,
                    "vertices": labels(&g, &vertices),
                    "theta": theta,
                    "quotient_size": quotient_size,
                    "bound": bound,
                }),
            };
            Report::new("menger", Some(digest), results)
        }
        Command::Certify { input, k } => {
            let Loaded { graph: g, digest } = input.load()?;
            let results = match pattern_certificate(&g, *k)? {
                Some(c) => json!({
                    "found": true,
                    "family": c.family,
                    "order": c.order,
                    "embedding": label_list(&g, &c.embedding),
                    "route": c.route,
                }),
                None => json!({ "found": false, "order": k }),
            };
            Report::new("certify", Some(digest), results)
        }
        Command::VmCheck { family, n } => {
            let inner: QInner = family.parse()?;
            let report = qk_reduction_check(inner, *n)?;
            let mut r = Report::new("vm-check", None, to_value(&report));
            r.failed_checks = !report.passed;
            r
        }
        Command::Verify { suite, seed, trials } => {
            let names: Vec<&'static str> = if suite == "all" {
                verify::SUITES.to_vec()
            } else {
                let name = verify::SUITES.iter().find(|s| **s == suite).ok_or_else(|| {
                    Failure(EXIT_USAGE, format!("unknown suite '{suite}'; expected one of {:?} or all", verify::SUITES))
                })?;
                vec![*name]
            };
            let mut reports = serde_json::Map::new();
            let mut passed = true;
            for name in names {
                let r = verify::run(name, *seed, *trials)?;
                passed &= r.passed();
                reports.insert(name.to_string(), to_value(r));
            }
            let mut r = Report::new("verify", None, json!({ "passed": passed, "trials": trials, "suites": reports }));
            r.seed = Some(*seed);
            r.failed_checks = !passed;
            r
        }
    };
    Ok(Output::Report(report))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(Output::Text(text)) => {
            let _ = write!(std::io::stdout(), "{text}");
            ExitCode::SUCCESS
        }
        Ok(Output::Report(r)) => {
            let envelope = json!({
                "schema": SCHEMA,
                "version": env!("CARGO_PKG_VERSION"),
                "command": r.command,
                "input_digest": r.digest,
                "seed": r.seed,
                "results": r.results,
            });
            let text = if cli.pretty {
                serde_json::to_string_pretty(&envelope)
            } else {
                serde_json::to_string(&envelope)
            };
            let _ = writeln!(std::io::stdout(), "{}", text.expect("reports serialize"));
            if r.failed_checks {
                ExitCode::from(EXIT_FAILED_CHECKS)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
