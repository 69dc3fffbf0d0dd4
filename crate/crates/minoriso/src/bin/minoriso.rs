//! Command-line front end. Reads graph6 or edge-list files (`-` for stdin)
//! and prints JSON.
//!
//! Exit codes: 0 success (for `iso`: isomorphic), 1 non-isomorphic,
//! 2 minor found, 64 usage, 65 bad input data, 70 internal error.

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use minoriso::closure::closure_t;
use minoriso::corpus::{generate, Family};
use minoriso::initial_color::find_initial_class;
use minoriso::io::{parse_any, to_graph6};
use minoriso::iso_engine::{aut, is_isomorphic, tree_decomposition, Decision, DecisionReport};
use minoriso::output;
use minoriso::refinement::{color_refine, color_refine_trace, wl2_rounds, Wl2Init};
use minoriso::witness::{extract_topological_clique, validate_witness, WitnessOutcome};
use minoriso::{Config, Error, Graph, VertexColoring};

const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_INTERNAL: u8 = 70;

#[derive(Parser)]
#[command(name = "minoriso", version, about = "Isomorphism testing for graphs excluding a K_h minor")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Size of the excluded clique minor.
    #[arg(long, global = true, default_value_t = 5)]
    h: usize,
    /// Average-degree constant of the minor bound.
    #[arg(long, global = true, default_value_t = 4.0)]
    a: f64,
    /// Base of the logarithm in the bounds.
    #[arg(long, global = true, default_value_t = 2.0)]
    log_base: f64,
    /// Closure threshold; defaults to (a h log h)^3.
    #[arg(long, global = true)]
    t: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Stable 1-WL coloring.
    Refine { file: String },
    /// Stable 2-WL coloring summary.
    Wl2 { file: String },
    /// t-CR closure of a seed set.
    Closure {
        file: String,
        /// Comma-separated seed vertices.
        #[arg(long, default_value = "")]
        seeds: String,
    },
    /// Invariant initial color class.
    InitialColor { file: String },
    /// Isomorphism decision; exit 0, 1 or 2.
    Iso {
        file1: String,
        file2: String,
        /// Include automorphism generators of the first graph.
        #[arg(long)]
        emit_aut: bool,
    },
    /// Automorphism group order and generators.
    Aut { file: String },
    /// Tree decomposition from the recursion.
    Decompose {
        file: String,
        #[arg(long)]
        dot: bool,
    },
    /// Topological clique on the given branch vertices.
    Witness {
        file: String,
        /// Comma-separated branch vertices.
        #[arg(long)]
        branch: String,
        #[arg(long)]
        dot: bool,
    },
    /// Seeded random graphs as graph6 lines.
    GenCorpus {
        #[arg(long, value_enum, default_value_t = FamilyArg::Planar)]
        family: FamilyArg,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Planar,
    KTree,
    Gnp,
    Tree,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Graph and raw color values (all 0 when the file has none).
fn read_raw(path: &str) -> Result<(Graph, Vec<usize>), Failure> {
    let mut text = String::new();
    let io = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|s| text = s)
    };
    io.map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
    let (g, c) = parse_any(&text)?;
    let c = c.unwrap_or_else(|| vec![0; g.n()]);
    Ok((g, c))
}

fn read(path: &str) -> Result<(Graph, VertexColoring), Failure> {
    let (g, c) = read_raw(path)?;
    Ok((g, VertexColoring::from_raw(&c)))
}

/// Two graphs with their colors ranked jointly, so equal values in the
/// files stay equal.
fn read_pair(a: &str, b: &str) -> Result<(Graph, VertexColoring, Graph, VertexColoring), Failure> {
    let (g1, r1) = read_raw(a)?;
    let (g2, r2) = read_raw(b)?;
    let joint = VertexColoring::from_raw(&[r1.as_slice(), r2.as_slice()].concat());
    let (x, y) = joint.colors.split_at(r1.len());
    let wrap = |colors: &[usize]| VertexColoring { colors: colors.to_vec(), num_colors: joint.num_colors };
    Ok((g1, wrap(x), g2, wrap(y)))
}

fn vertex_list(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| Failure::Usage(format!("bad vertex '{x}'"))))
        .collect()
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    let _ = std::io::stdout().write_all(s.as_bytes());
}

fn print(v: &Value) {
    emit(&serde_json::to_string_pretty(v).expect("values serialize"));
    emit("\n");
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let cfg = Config { h: cli.h, a: cli.a, log_base: cli.log_base, t: cli.t, ..Config::default() };
    // Bad parameters are usage errors, not bad data.
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    match cli.command {
        Command::Refine { file } => {
            let (g, c) = read(&file)?;
            print(&output::refine_json(&color_refine_trace(&g, &c, None)?));
        }
        Command::Wl2 { file } => {
            let (g, c) = read(&file)?;
            let (pc, rounds) = wl2_rounds(&g, Wl2Init::Vertex(&c))?;
            print(&output::wl2_json(&pc, rounds));
        }
        Command::Closure { file, seeds } => {
            let (g, c) = read(&file)?;
            let r = closure_t(&g, &c, None, &vertex_list(&seeds)?, cfg.t())?;
            print(&output::closure_json(&g, &r)?);
        }
        Command::InitialColor { file } => {
            let (g, c) = read(&file)?;
            print(&output::initial_color_json(&find_initial_class(&g, &c, &cfg)?));
        }
        Command::Iso { file1, file2, emit_aut } => {
            let (g1, c1, g2, c2) = read_pair(&file1, &file2)?;
            let d = is_isomorphic(&g1, &c1, &g2, &c2, &cfg)?;
            print(&serde_json::to_value(DecisionReport::new(&d, emit_aut)).expect("report serializes"));
            return Ok(match d {
                Decision::Iso { .. } => 0,
                Decision::NonIso => 1,
                Decision::MinorFound => 2,
            });
        }
        Command::Aut { file } => {
            let (g, c) = read(&file)?;
            let group = aut(&g, &c)?;
            print(&json!({"order": group.order().to_string(), "generators": group.generators()}));
        }
        Command::Decompose { file, dot } => {
            let (g, c) = read(&file)?;
            match tree_decomposition(&g, &c, &cfg)? {
                None => print(&json!({"minor": true})),
                Some(td) if dot => emit(&output::decomposition_dot(&td)),
                Some(td) => print(&output::decomposition_json(&td)),
            }
        }
        Command::Witness { file, branch, dot } => {
            let (g, c) = read(&file)?;
            let v1 = vertex_list(&branch)?;
            let mut raw: Vec<(usize, usize)> = c.colors.iter().map(|&x| (0, x)).collect();
            for (i, &v) in v1.iter().enumerate() {
                if v >= g.n() {
                    return Err(Failure::Usage(format!("branch vertex {v} out of range")));
                }
                raw[v] = (1, i);
            }
            let chi = color_refine(&g, &VertexColoring::from_raw(&raw), None)?;
            let v2: Vec<usize> = (0..g.n()).filter(|v| !v1.contains(v)).collect();
            let out = extract_topological_clique(&g, &chi, &v1, &v2)?;
            match &out {
                WitnessOutcome::Witness(w) if dot => emit(&output::witness_dot(&g, w)),
                WitnessOutcome::Witness(w) => print(&output::witness_json(&out, validate_witness(&g, w))),
                WitnessOutcome::SmallClass(_) => print(&output::witness_json(&out, false)),
            }
        }
        Command::GenCorpus { family, count, n, seed } => {
            let family = match family {
                FamilyArg::Planar => Family::Planar,
                FamilyArg::KTree => Family::KTree,
                FamilyArg::Gnp => Family::Gnp,
                FamilyArg::Tree => Family::Tree,
            };
            for g in generate(family, count, n, seed) {
                emit(&format!("{}\n", to_graph6(&g)));
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Input(_) | Error::Format(_) => EXIT_DATA,
                Error::Capacity(_) | Error::Invariant(_) => EXIT_INTERNAL,
            })
        }
    }
}
