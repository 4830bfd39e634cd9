//! `kgraph` — exact finiteness certificates for finite higher-rank graphs.
//!
//! Subcommands wrap the core library one to one: `validate`, `classify`,
//! `certificate`, `k0`, `skew`, `oracle`, `generate`. JSON reports go to
//! stdout with `--json`, diagnostics to stderr. Exit codes: `0` success,
//! `1` invalid input, `2` an internal bound was exceeded.

mod report;
mod schema;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use kgraph_core::classify::classify;
use kgraph_core::decide::decide_condition;
use kgraph_core::graph::CofinalityError;
use kgraph_core::ktheory::{coker_presentation, induced_coker_endo};
use kgraph_core::oracle::{
    box_witness_search, random_digraph, random_kgraph, GeneratorConfig, Strategy,
};
use kgraph_core::skew::skew_product_window;
use kgraph_core::KGraph;

#[derive(Parser)]
#[command(
    name = "kgraph",
    version,
    about = "Finiteness certificates for higher-rank graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a graph file against the presentation invariants.
    Validate {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Full verdict: certificate, finiteness properties, structure.
    Classify {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Just the certificate (faithful trace or positivity witness).
    Certificate {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Cokernel presentation of 1 - A_i^t, plus the induced action for
    /// rank-2 graphs.
    K0 {
        path: PathBuf,
        /// Colour index, 1-based.
        #[arg(long)]
        color: usize,
        #[arg(long)]
        json: bool,
    },
    /// Materialise a window of the degree skew product and check acyclicity.
    Skew {
        path: PathBuf,
        /// Box specification, one `lo..hi` range per colour: `0..3,0..3`.
        #[arg(long = "box")]
        box_spec: String,
        #[arg(long)]
        json: bool,
    },
    /// Brute-force witness search over [-B, B]^(kN).
    Oracle {
        path: PathBuf,
        /// Search radius B.
        #[arg(long = "box")]
        radius: u32,
        #[arg(long)]
        json: bool,
    },
    /// Emit deterministic random graphs as JSON (JSONL when count > 1).
    Generate {
        #[arg(long)]
        seed: u64,
        /// Vertex count.
        #[arg(long)]
        n: usize,
        /// Rank (number of colours); 1 generates a free digraph.
        #[arg(long)]
        k: usize,
        #[arg(long = "max-entry", default_value_t = 2)]
        max_entry: u32,
        #[arg(long, value_enum, default_value_t = StrategyArg::Polynomial)]
        strategy: StrategyArg,
        /// How many graphs to emit; seeds advance until enough draws
        /// succeed.
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Polynomial,
    Permutation,
    Rejection,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Polynomial => Strategy::Polynomial,
            StrategyArg::Permutation => Strategy::Permutation,
            StrategyArg::Rejection => Strategy::Rejection,
        }
    }
}

/// Failures sorted by exit code: input problems exit 1, exceeded internal
/// bounds exit 2.
enum Failure {
    Input(String),
    Bound(String),
}

impl Failure {
    fn code(&self) -> ExitCode {
        match self {
            Failure::Input(_) => ExitCode::from(1),
            Failure::Bound(_) => ExitCode::from(2),
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Bound(m) => m,
        }
    }
}

fn input_failure(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("kgraph: {}", f.message());
            f.code()
        }
    }
}

fn load_graph(path: &PathBuf) -> Result<(KGraph, Vec<u8>), Failure> {
    let bytes = std::fs::read(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| Failure::Input("input is not UTF-8".into()))?;
    let raw = schema::parse_graph(&text).map_err(input_failure)?;
    let graph = KGraph::validate(raw.k, raw.vertices, raw.matrices).map_err(input_failure)?;
    Ok((graph, bytes))
}

fn emit(value: &Value) {
    println!("{}", serde_json::to_string(value).expect("serializable"));
}

fn run(command: Command) -> Result<ExitCode, Failure> {
    match command {
        Command::Validate { path, json } => {
            let started = Instant::now();
            let bytes = std::fs::read(&path)
                .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
            let text = String::from_utf8(bytes.clone())
                .map_err(|_| Failure::Input("input is not UTF-8".into()))?;
            let raw = schema::parse_graph(&text).map_err(input_failure)?;
            let outcome = KGraph::validate(raw.k, raw.vertices, raw.matrices);
            let defects = outcome.as_ref().err();
            let timing = started.elapsed().as_millis() as u64;
            if json {
                emit(&report::validation_report(
                    defects,
                    report::input_value(&bytes),
                    timing,
                ));
            } else {
                print!("{}", report::human_validation(defects));
            }
            Ok(if defects.is_none() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }

        Command::Classify { path, json } => {
            let started = Instant::now();
            let (graph, bytes) = load_graph(&path)?;
            let classification = classify(&graph).map_err(|e| match e {
                kgraph_core::classify::ClassifyError::Cofinality(
                    CofinalityError::IterationBoundExceeded { .. },
                ) => Failure::Bound(e.to_string()),
                other => Failure::Input(other.to_string()),
            })?;
            let timing = started.elapsed().as_millis() as u64;
            if json {
                emit(&report::classification_report(
                    &graph,
                    &classification,
                    report::input_value(&bytes),
                    timing,
                ));
            } else {
                print!("{}", report::human_classification(&graph, &classification));
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Certificate { path, json } => {
            let started = Instant::now();
            let (graph, bytes) = load_graph(&path)?;
            let certificate = decide_condition(&graph);
            let timing = started.elapsed().as_millis() as u64;
            let value = serde_json::json!({
                "tool": report::tool_value(),
                "input": report::input_value(&bytes),
                "certificate": report::certificate_value(&certificate),
                "timing_ms": timing,
            });
            if json {
                emit(&value);
            } else {
                match &certificate {
                    kgraph_core::decide::Certificate::FaithfulTrace { values } => {
                        let vals: Vec<String> = values.iter().map(report::rational_str).collect();
                        println!("faithful graph trace: ({})", vals.join(", "));
                    }
                    kgraph_core::decide::Certificate::PositiveWitness { xs, c } => {
                        let blocks: Vec<String> = xs
                            .iter()
                            .map(|x| {
                                let e: Vec<String> = x.iter().map(|v| v.to_string()).collect();
                                format!("({})", e.join(", "))
                            })
                            .collect();
                        let cs: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                        println!(
                            "positivity witness: x = [{}], c = ({})",
                            blocks.join(", "),
                            cs.join(", ")
                        );
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::K0 { path, color, json } => {
            let started = Instant::now();
            let (graph, bytes) = load_graph(&path)?;
            if color == 0 || color > graph.rank() {
                return Err(Failure::Input(format!(
                    "colour {color} out of range 1..={}",
                    graph.rank()
                )));
            }
            let presentation =
                coker_presentation(graph.matrix(color - 1)).map_err(input_failure)?;
            // The other colour acts on this cokernel whenever the graph has
            // rank 2; for colour 1 swap the colours first.
            let endo = if graph.rank() == 2 {
                let oriented = if color == 2 {
                    graph.clone()
                } else {
                    KGraph::validate(
                        2,
                        graph.vertices().to_vec(),
                        vec![graph.matrix(1).clone(), graph.matrix(0).clone()],
                    )
                    .expect("colour swap preserves validity")
                };
                Some(induced_coker_endo(&oriented).map_err(input_failure)?)
            } else {
                None
            };
            let timing = started.elapsed().as_millis() as u64;
            let value = report::k0_report(
                &graph,
                color - 1,
                &presentation,
                endo.as_ref(),
                report::input_value(&bytes),
                timing,
            );
            if json {
                emit(&value);
            } else {
                let factors: Vec<String> = presentation
                    .invariant_factors()
                    .iter()
                    .map(|f| f.to_string())
                    .collect();
                println!(
                    "coker(1 - A_{color}^t): invariant factors ({}), free rank {}",
                    factors.join(", "),
                    presentation.free_rank()
                );
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Skew {
            path,
            box_spec,
            json,
        } => {
            let started = Instant::now();
            let (graph, bytes) = load_graph(&path)?;
            let ranges = parse_box_spec(&box_spec)?;
            let window = skew_product_window(&graph, &ranges).map_err(|e| match e {
                kgraph_core::skew::SkewError::BoxTooLarge { .. } => Failure::Bound(e.to_string()),
                other => Failure::Input(other.to_string()),
            })?;
            let timing = started.elapsed().as_millis() as u64;
            if json {
                emit(&report::skew_report(
                    &graph,
                    &window,
                    report::input_value(&bytes),
                    timing,
                ));
            } else {
                println!(
                    "skew window: {} nodes, {} edges in window, {} omitted, acyclic: {}",
                    window.node_count(),
                    window.edges.len(),
                    window.omitted_edges,
                    window.is_acyclic()
                );
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Oracle { path, radius, json } => {
            let started = Instant::now();
            let (graph, bytes) = load_graph(&path)?;
            let witness =
                box_witness_search(&graph, radius).map_err(|e| Failure::Bound(e.to_string()))?;
            let timing = started.elapsed().as_millis() as u64;
            if json {
                emit(&report::oracle_report(
                    witness.as_ref(),
                    radius,
                    report::input_value(&bytes),
                    timing,
                ));
            } else {
                match &witness {
                    Some(w) => {
                        let blocks: Vec<String> =
                            w.xs.iter()
                                .map(|x| {
                                    let e: Vec<String> = x.iter().map(|v| v.to_string()).collect();
                                    format!("({})", e.join(", "))
                                })
                                .collect();
                        let cs: Vec<String> = w.c.iter().map(|v| v.to_string()).collect();
                        println!(
                            "witness found: x = [{}], c = ({})",
                            blocks.join(", "),
                            cs.join(", ")
                        );
                    }
                    None => println!("no witness in the box of radius {radius}"),
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Generate {
            seed,
            n,
            k,
            max_entry,
            strategy,
            count,
        } => {
            let mut emitted = 0usize;
            let mut current = seed;
            let mut failures = 0usize;
            while emitted < count {
                let cfg = GeneratorConfig {
                    seed: current,
                    vertex_count: n,
                    rank: k,
                    max_entry,
                    strategy: strategy.into(),
                };
                let drawn = if k == 1 {
                    random_digraph(&cfg)
                } else {
                    random_kgraph(&cfg)
                };
                match drawn {
                    Ok(g) => {
                        emit(&schema::graph_to_value(&g));
                        emitted += 1;
                    }
                    Err(e) => {
                        failures += 1;
                        if count == 1 || failures > 64 * count {
                            return Err(Failure::Input(format!(
                                "generation failed at seed {current}: {e}"
                            )));
                        }
                        eprintln!("kgraph: skipping seed {current}: {e}");
                    }
                }
                current = current.wrapping_add(1);
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_box_spec(spec: &str) -> Result<Vec<(i64, i64)>, Failure> {
    spec.split(',')
        .map(|part| {
            let (lo, hi) = part
                .split_once("..")
                .ok_or_else(|| Failure::Input(format!("bad box range {part:?}, want lo..hi")))?;
            let lo: i64 = lo
                .trim()
                .parse()
                .map_err(|_| Failure::Input(format!("bad lower bound in {part:?}")))?;
            let hi: i64 = hi
                .trim()
                .parse()
                .map_err(|_| Failure::Input(format!("bad upper bound in {part:?}")))?;
            Ok((lo, hi))
        })
        .collect()
}
