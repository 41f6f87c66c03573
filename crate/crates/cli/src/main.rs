use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use selfsim_core::catalog;
use selfsim_core::classify::{classify, ClassifyOptions};
use selfsim_core::document::{quotient_document, GraphDocument};
use selfsim_core::monoid::{is_group_nonzero, monoid_of, GroupTestVerdict, MonoidBounds};
use selfsim_core::render::{monoid_json, report_json, report_text, trace_json};
use selfsim_core::trace::{graph_g_trace_exists, graph_trace_exists, TraceResult};
use selfsim_core::{build_quotient, LoadError, SelfSimilarGraph};

const EXIT_IO: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_PARSE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "selfsim",
    version,
    about = "Analyze finite self-similar graph actions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    /// The input graph
    #[value(name = "E")]
    Input,
    /// The orbit quotient graph
    Quotient,
}

#[derive(clap::Args)]
struct Bounds {
    /// Largest total degree visited by monoid searches
    #[arg(long = "monoid-bound", default_value_t = MonoidBounds::default().degree)]
    degree: usize,
    /// Largest degree tried for an identity candidate
    #[arg(long = "identity-bound", default_value_t = MonoidBounds::default().identity_degree)]
    identity: usize,
    /// Cap on elements visited per equivalence class
    #[arg(long = "max-states", default_value_t = MonoidBounds::default().max_states)]
    max_states: usize,
}

impl Bounds {
    fn get(&self) -> MonoidBounds {
        MonoidBounds {
            identity_degree: self.identity,
            degree: self.degree,
            max_states: self.max_states,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check every axiom; exit 0 if valid, 2 with one line per violation otherwise
    Validate { path: PathBuf },
    /// Emit the orbit quotient graph as a graph document
    Quotient {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full classification report
    Classify {
        path: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
        /// Skip the monoid group test
        #[arg(long)]
        no_monoid: bool,
        #[arg(long, conflicts_with = "text")]
        json: bool,
        #[arg(long)]
        text: bool,
    },
    /// Graph G-trace on E, or graph trace on the quotient
    Trace {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "E")]
        graph: Side,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether the nonzero part of the graph monoid is a group
    Monoid {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "E")]
        graph: Side,
        #[command(flatten)]
        bounds: Bounds,
        #[arg(long)]
        json: bool,
    },
    /// List the bundled examples, or print one as a document
    Catalog { name: Option<String> },
}

enum Failure {
    Io(String),
    Parse(String),
    Invalid(Vec<String>),
    Usage(String),
}

impl Failure {
    fn report(self) -> ExitCode {
        match self {
            Failure::Io(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(EXIT_IO)
            }
            Failure::Parse(msg) => {
                eprintln!("parse error: {msg}");
                ExitCode::from(EXIT_PARSE)
            }
            Failure::Invalid(lines) => {
                for line in lines {
                    println!("{line}");
                }
                ExitCode::from(EXIT_INVALID)
            }
            Failure::Usage(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(EXIT_IO)
            }
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<SelfSimilarGraph, Failure> {
    let text = read(path)?;
    selfsim_core::document::load(&text).map_err(|e| match e {
        LoadError::Parse(p) => Failure::Parse(p.to_string()),
        LoadError::Invalid(v) => {
            Failure::Invalid(v.violations.iter().map(|x| x.to_string()).collect())
        }
    })
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { path } => {
            let ssg = load(&path)?;
            let g = ssg.graph();
            println!(
                "valid: {} vertices, {} edges, group of order {}",
                g.vertex_count(),
                g.edge_count(),
                ssg.group().order()
            );
        }
        Command::Quotient { path, out } => {
            let ssg = load(&path)?;
            let q = build_quotient(&ssg);
            emit(
                &(quotient_document(&ssg, &q).to_json() + "\n"),
                out.as_deref(),
            )?;
        }
        Command::Classify {
            path,
            bounds,
            no_monoid,
            json,
            text: _,
        } => {
            let ssg = load(&path)?;
            let options = ClassifyOptions {
                monoid: bounds.get(),
                run_monoid: !no_monoid,
            };
            let report = classify(&ssg, &options).map_err(|e| Failure::Usage(e.to_string()))?;
            if json {
                print!("{}", pretty(&report_json(&ssg, &report)));
            } else {
                print!("{}", report_text(&ssg, &report));
            }
        }
        Command::Trace { path, graph, json } => {
            let ssg = load(&path)?;
            let q = build_quotient(&ssg);
            let (g, result) = match graph {
                Side::Input => (ssg.graph(), graph_g_trace_exists(&ssg)),
                Side::Quotient => (q.graph(), graph_trace_exists(q.graph())),
            };
            if json {
                print!("{}", pretty(&trace_json(g, &result)));
            } else {
                match &result {
                    TraceResult::Found(s) => {
                        println!("trace: exists");
                        for v in g.vertices() {
                            println!("  {} = {}", g.vertex_name(v), s.weight(v));
                        }
                    }
                    TraceResult::Infeasible(c) => {
                        println!("trace: none");
                        println!("certificate:");
                        for (constraint, y) in &c.multipliers {
                            println!(
                                "  {} * {}",
                                y,
                                selfsim_core::render::constraint_name(g, constraint)
                            );
                        }
                    }
                }
            }
        }
        Command::Monoid {
            path,
            graph,
            bounds,
            json,
        } => {
            let ssg = load(&path)?;
            let q = build_quotient(&ssg);
            let g = match graph {
                Side::Input => ssg.graph(),
                Side::Quotient => q.graph(),
            };
            let p = monoid_of(g);
            let verdict = is_group_nonzero(&p, bounds.get());
            if json {
                let mut v = monoid_json(&p, &verdict);
                if matches!(graph, Side::Quotient) {
                    v["heuristic"] = json!(true);
                }
                print!("{}", pretty(&v));
            } else {
                println!("relations:");
                for r in p.relation_strings() {
                    println!("  {r}");
                }
                match &verdict {
                    GroupTestVerdict::Group(w) => {
                        println!("monoid: Group");
                        println!("identity: {}", p.display(&w.identity));
                        for inv in &w.inverses {
                            println!(
                                "  -{} = {}",
                                p.generators()[inv.generator.0],
                                p.display(&inv.element)
                            );
                        }
                    }
                    GroupTestVerdict::NotGroup(t) => {
                        println!("monoid: NotGroup");
                        println!("functional:");
                        for (name, w) in p.generators().iter().zip(&t.weights) {
                            println!("  {name} = {w}");
                        }
                    }
                    GroupTestVerdict::Unknown { reason, .. } => {
                        println!("monoid: Unknown ({reason})");
                    }
                }
                if matches!(graph, Side::Quotient) {
                    println!("note: the quotient monoid is a heuristic model");
                }
            }
        }
        Command::Catalog { name } => match name {
            None => {
                for (name, _) in catalog::entries() {
                    println!("{name}");
                }
            }
            Some(name) => {
                let (_, ssg) = catalog::entries()
                    .into_iter()
                    .find(|(n, _)| *n == name)
                    .ok_or_else(|| Failure::Usage(format!("no catalog entry named {name}")))?;
                println!("{}", GraphDocument::from_model(&ssg).to_json());
            }
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => f.report(),
    }
}
