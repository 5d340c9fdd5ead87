//! Command-line front end. Every verb prints one JSON document (DOT for
//! `export`) and returns the process exit code.

use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::analysis;
use crate::certificates::{self, Realization};
use crate::construct::{self, ConstructionSequence, Mode};
use crate::error::{Error, Result};
use crate::graph::LoopedSimpleGraph;
use crate::io::{self, format_rational, GraphDoc, RealizationDoc};
use crate::matroid;

const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser, Debug)]
#[command(name = "lcrigid", about = "Rigidity of linearly constrained frameworks in the plane")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Field {
    Rational,
    Prime,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Balanced,
    General,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Global rigidity verdict with matroid flags.
    Check {
        input: String,
        /// Exit with status 1 when the graph is not globally rigid.
        #[arg(long)]
        strict: bool,
    },
    /// Matroid rank and rigidity-matrix rank.
    Rank {
        input: String,
        #[arg(long, value_enum, default_value = "rational")]
        field: Field,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Fundamental circuits of a greedy base and circuit classification.
    Circuits { input: String },
    /// Connected components of the matroid.
    Components { input: String },
    /// Construction sequence from K_1^[3], or a random one with --random.
    Construct {
        input: Option<String>,
        #[arg(long, value_enum, default_value = "balanced")]
        mode: ModeArg,
        /// Emit a random sequence with this many moves instead.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Replays a construction sequence and prints the graph.
    Replay { input: String },
    /// b(G) and the number of equivalent generic realizations.
    Count { input: String },
    /// Attaches a random integer realization.
    Realize {
        input: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 32)]
        bits: u32,
    },
    /// Maximum-rank equilibrium stress.
    Stress {
        input: String,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// All equivalent realizations obtained by reflections.
    Enumerate {
        input: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Bar-joint gadget: two loops at each end of an edge.
    Gadget {
        input: String,
        /// Edge as `u,v`.
        #[arg(long)]
        edge: String,
    },
    /// Graphviz DOT text.
    Export { input: String },
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<String> {
    let mut text = String::new();
    if path == "-" {
        stdin
            .read_to_string(&mut text)
            .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    }
    Ok(text)
}

fn realization_or_sample(g: &LoopedSimpleGraph, r: Option<Realization>, seed: u64) -> Result<Realization> {
    match r {
        Some(r) => {
            r.check(g)?;
            Ok(r)
        }
        None => certificates::sample_realization(g, 2, seed, 32),
    }
}

fn strings(v: &[num_rational::BigRational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn edge_pairs(g: &LoopedSimpleGraph) -> Vec<[String; 2]> {
    g.edges()
        .iter()
        .map(|&(a, b)| [g.vertex_id(a).to_string(), g.vertex_id(b).to_string()])
        .collect()
}

fn ids(g: &LoopedSimpleGraph, f: &[usize]) -> Value {
    json!(f.iter().map(|&e| g.element_id(e)).collect::<Vec<_>>())
}

enum Output {
    Json(Value, i32),
    Text(String),
}

fn execute(verb: Verb, stdin: &mut dyn Read) -> Result<Output> {
    let load = |path: &str, stdin: &mut dyn Read| -> Result<(LoopedSimpleGraph, Option<Realization>)> {
        io::read_graph(&read_input(path, stdin)?)
    };
    Ok(match verb {
        Verb::Check { input, strict } => {
            let (g, _) = load(&input, stdin)?;
            let verdict = analysis::decide_global_rigidity(&g);
            let mut v = serde_json::to_value(&verdict).expect("serializable");
            v["rigid"] = json!(matroid::is_rigid(&g));
            v["redundantlyRigid"] = json!(analysis::is_redundantly_rigid(&g));
            v["mlcConnected"] = json!(matroid::connected_nonempty(&g));
            let code = if strict && !verdict.globally_rigid { 1 } else { 0 };
            Output::Json(v, code)
        }
        Verb::Rank { input, field, seed } => {
            let (g, r) = load(&input, stdin)?;
            let rank = match field {
                Field::Rational => {
                    let r = realization_or_sample(&g, r, seed)?;
                    certificates::matrix_rank(&certificates::rigidity_matrix(&g, &r)?)
                }
                Field::Prime => certificates::generic_rank_prime(&g, 2, seed, 3),
            };
            let full = 2 * g.vertex_count();
            Output::Json(
                json!({
                    "matroidRank": matroid::full_rank(&g),
                    "rigidityMatrixRank": rank,
                    "field": match field { Field::Rational => "rational", Field::Prime => "prime" },
                    "rigid": matroid::is_rigid(&g),
                    "infinitesimallyRigid": rank == full,
                }),
                0,
            )
        }
        Verb::Circuits { input } => {
            let (g, _) = load(&input, stdin)?;
            let all = matroid::all_elements(&g);
            let base = matroid::greedy_base(&g, &all);
            let mut circuits = Vec::new();
            for e in all.iter().filter(|e| !base.contains(e)) {
                let c = matroid::fundamental_circuit(&g, &base, *e)?;
                circuits.push(json!({ "element": g.element_id(*e), "circuit": ids(&g, &c) }));
            }
            Output::Json(
                json!({
                    "base": ids(&g, &base),
                    "fundamentalCircuits": circuits,
                    "classification": matroid::classify_circuit(&g),
                }),
                0,
            )
        }
        Verb::Components { input } => {
            let (g, _) = load(&input, stdin)?;
            let comps: Vec<Value> = matroid::mlc_components(&g).iter().map(|c| ids(&g, c)).collect();
            Output::Json(
                json!({ "components": comps, "mlcConnected": matroid::connected_nonempty(&g) }),
                0,
            )
        }
        Verb::Construct {
            input,
            mode,
            random,
            seed,
        } => {
            let mode = match mode {
                ModeArg::Balanced => Mode::Balanced,
                ModeArg::General => Mode::General,
            };
            let seq = match (random, input) {
                (Some(n), _) => construct::random_construct(n, mode, seed),
                (None, Some(path)) => construct::deconstruct(&load(&path, stdin)?.0, mode)?,
                (None, None) => {
                    return Err(Error::Parse("construct needs an input graph or --random".into()))
                }
            };
            Output::Json(serde_json::to_value(&seq).expect("serializable"), 0)
        }
        Verb::Replay { input } => {
            let text = read_input(&input, stdin)?;
            let seq: ConstructionSequence =
                serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            let g = construct::replay(&seq)?;
            Output::Json(serde_json::to_value(GraphDoc::from_graph(&g, None)).expect("serializable"), 0)
        }
        Verb::Count { input } => {
            let (g, _) = load(&input, stdin)?;
            let n = analysis::count_equivalent_realizations(&g)?;
            Output::Json(
                json!({ "b": analysis::b_count(&g), "realizations": n.to_string() }),
                0,
            )
        }
        Verb::Realize { input, seed, bits } => {
            let (g, _) = load(&input, stdin)?;
            let r = certificates::sample_realization(&g, 2, seed, bits)?;
            Output::Json(serde_json::to_value(GraphDoc::from_graph(&g, Some(&r))).expect("serializable"), 0)
        }
        Verb::Stress { input, trials, seed } => {
            let (g, r) = load(&input, stdin)?;
            let r = realization_or_sample(&g, r, seed)?;
            let dim = certificates::stress_basis(&g, &r)?.len();
            let (s, rank) = certificates::max_rank_stress(&g, &r, trials, seed)?;
            let target = g.vertex_count().saturating_sub(1);
            Output::Json(
                json!({
                    "basisDimension": dim,
                    "edges": edge_pairs(&g),
                    "omega": strings(&s.omega),
                    "loops": g.loops().iter().map(|(l, _)| l.clone()).collect::<Vec<_>>(),
                    "lambda": strings(&s.lambda),
                    "rank": rank,
                    "target": target,
                    "fullRank": rank == target,
                }),
                0,
            )
        }
        Verb::Enumerate { input, seed } => {
            let (g, r) = load(&input, stdin)?;
            let r = realization_or_sample(&g, r, seed)?;
            let all = certificates::enumerate_equivalent(&g, &r)?;
            let docs: Vec<RealizationDoc> = all.iter().map(RealizationDoc::from_realization).collect();
            Output::Json(json!({ "count": docs.len(), "realizations": docs }), 0)
        }
        Verb::Gadget { input, edge } => {
            let (g, _) = load(&input, stdin)?;
            let (u, v) = edge
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("--edge expects `u,v`, got {edge:?}")))?;
            let h = analysis::bar_joint_gadget(&g, u.trim(), v.trim())?;
            Output::Json(serde_json::to_value(GraphDoc::from_graph(&h, None)).expect("serializable"), 0)
        }
        Verb::Export { input } => Output::Text(io::export_dot(&load(&input, stdin)?.0)),
    })
}

/// Runs one command. Exit codes: 0 success, 1 negative `check --strict`,
/// 2 for usage, input and precondition errors.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let err = json!({ "error": "UsageError", "message": e.render().to_string().trim() });
            let _ = writeln!(stdout, "{err}");
            return 2;
        }
    };
    match execute(cli.verb, stdin) {
        Ok(Output::Json(v, code)) => {
            let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&v).expect("serializable"));
            code
        }
        Ok(Output::Text(t)) => {
            let _ = write!(stdout, "{t}");
            0
        }
        Err(e) => {
            let err = json!({ "error": e.kind(), "message": e.to_string() });
            let _ = writeln!(stdout, "{err}");
            2
        }
    }
}
