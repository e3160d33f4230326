//! Command line front end.
//!
//! Exit codes are the machine contract: 0 for yes/valid, 1 for no/invalid,
//! 2 for usage, parse or I/O errors, 3 when an exact search exhausted its
//! budget. Textual output is advisory; witnesses are written only when
//! `--out` is given so stdout stays stable for exit-code-driven scripts.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use semicover::cover::{fold_number, is_degree_obedient, verify_cover, CoverMap};
use semicover::decide::{
    check_bc_coloring, decide_bc_coloring, decide_f_budgeted, decide_w_budgeted, extend_obedient,
    Method, TargetParams, TwoColoring, Verdict, Witness,
};
use semicover::gadgets::{self, ReductionArtifact, SatFormula};
use semicover::graph::Graph;
use semicover::oracle::{solve_cover, CoverOutcome, SearchBudget};

#[derive(Parser)]
#[command(
    name = "semicover",
    about = "Covering projections for multigraphs with semi-edges",
    version,
    disable_help_subcommand = true
)]
struct Cli {
    /// Reserved. Generators are deterministic; the value is accepted and
    /// ignored.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct BudgetArgs {
    /// Node limit for exact searches.
    #[arg(long)]
    max_nodes: Option<u64>,
    /// Wall-clock limit for exact searches, in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        let mut budget = match self.max_nodes {
            Some(n) => SearchBudget::nodes(n),
            None => SearchBudget::unlimited(),
        };
        if let Some(seconds) = self.time_limit {
            budget = budget.with_time_limit(Duration::from_secs_f64(seconds));
        }
        budget
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check that a vertex/edge map is a covering projection.
    Verify { source: PathBuf, target: PathBuf, map: PathBuf },
    /// Check that a vertex map is degree-obedient.
    Obedient { source: PathBuf, target: PathBuf, map: PathBuf },
    /// Decide whether the graph covers a parameterized target.
    Decide {
        source: PathBuf,
        /// `F:b,c`, `W:k,m,l,p,q`, or `@file` for an arbitrary target graph.
        #[arg(long)]
        target: String,
        /// Write the witness cover here on a yes answer.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Run the exact cover search against an arbitrary target graph.
    Solve {
        source: PathBuf,
        target: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Decide or check constrained two-colorings.
    Color {
        source: PathBuf,
        #[arg(short = 'b', long)]
        own: usize,
        #[arg(short = 'c', long)]
        other: usize,
        /// Check this coloring file instead of searching for one.
        #[arg(long)]
        check: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extend a degree-obedient vertex map on a bipartite source to a cover.
    Extend {
        source: PathBuf,
        target: PathBuf,
        map: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a named gadget.
    Gadget {
        #[command(subcommand)]
        which: GadgetCommand,
    },
    /// Generate a full reduction instance from a source file.
    Reduce {
        #[command(subcommand)]
        which: ReduceCommand,
    },
    /// Lift a graph through the tensor product with a single edge.
    ProductK2 {
        source: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GadgetCommand {
    /// Degree-padding gadget with d-2 disjoint perfect matchings.
    Matchings {
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Single two-clique connector gadget.
    Gab {
        a: usize,
        b: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Layered connector gadget.
    Galb {
        a: usize,
        l: usize,
        b: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// General coloring bridge.
    BridgeGeneral {
        b: usize,
        c: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Explicit bridge for own-degree one above other-degree.
    BridgeCplus1 {
        c: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Color-replication gadget for (b,1)-colorings.
    FGadget {
        b: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Standalone variable gadget of the balanced-coloring reduction.
    Variable {
        b: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monochromaticity block of the variable gadget.
    UnitBlock {
        b: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Materialize a parameterized target graph.
    Target {
        /// `F:b,c` or `W:k,m,l,p,q`.
        spec: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ReduceCommand {
    /// Edge-coloring to disjoint-matchings instance.
    Onevertex {
        source: PathBuf,
        #[arg(short, long)]
        k: usize,
        #[arg(short, long)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Two-vertex instance for targets with distinct vertex degrees.
    Nonregular {
        source: PathBuf,
        /// Target parameters `k,m,l,p,q`.
        #[arg(long)]
        params: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bridge-glued coloring instance.
    Bb1 {
        source: PathBuf,
        #[arg(short, long)]
        b: usize,
        #[arg(short, long)]
        c: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Balanced-coloring instance from an exact-half formula.
    Bb {
        formula: PathBuf,
        #[arg(short, long)]
        b: usize,
        /// Optional satisfying assignment, lines `<variable> <true|false>`.
        #[arg(long)]
        assign: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Anything that should surface as exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

enum Outcome {
    Yes,
    No,
    Unknown,
}

impl Outcome {
    fn code(self) -> ExitCode {
        match self {
            Outcome::Yes => ExitCode::from(0),
            Outcome::No => ExitCode::from(1),
            Outcome::Unknown => ExitCode::from(3),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(outcome) => outcome.code(),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph, UsageError> {
    let text = fs::read_to_string(path)
        .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
    Graph::parse(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn read_map(path: &Path) -> Result<CoverMap, UsageError> {
    let text = fs::read_to_string(path)
        .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
    CoverMap::parse(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn write_out(path: &Path, content: &str) -> Result<(), UsageError> {
    fs::write(path, content)
        .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))
}

fn write_witness(out: Option<&Path>, witness: &Witness) -> Result<(), UsageError> {
    let Some(path) = out else {
        return Ok(());
    };
    let text = match witness {
        Witness::Cover(map) => map.to_text(),
        Witness::Coloring(col) => col.to_text(),
        Witness::EdgeSets(sets) => {
            let mut s = String::new();
            for set in sets {
                s.push_str(&set.to_line());
                s.push('\n');
            }
            s
        }
    };
    write_out(path, &text)
}

fn emit_graph(g: &Graph, out: Option<&Path>) -> Result<Outcome, UsageError> {
    match out {
        Some(path) => write_out(path, &g.to_text())?,
        None => print!("{}", g.to_text()),
    }
    Ok(Outcome::Yes)
}

/// Writes `<base>.graph`, `<base>.ann`, `<base>.claim` and, when a witness
/// exists, `<base>.witness`; without `--out` the graph goes to stdout.
fn emit_artifact(art: &ReductionArtifact, out: Option<&Path>) -> Result<Outcome, UsageError> {
    let Some(base) = out else {
        print!("{}", art.instance.to_text());
        return Ok(Outcome::Yes);
    };
    let with_ext = |ext: &str| {
        let mut name = base.as_os_str().to_owned();
        name.push(".");
        name.push(ext);
        PathBuf::from(name)
    };
    write_out(&with_ext("graph"), &art.instance.to_text())?;
    write_out(&with_ext("ann"), &art.annotations_text())?;
    write_out(&with_ext("claim"), &format!("{}\n", art.claim))?;
    if let Some(witness) = &art.witness {
        write_witness(Some(&with_ext("witness")), witness)?;
    }
    println!("wrote {}.{{graph,ann,claim}}", base.display());
    Ok(Outcome::Yes)
}

fn verdict_outcome(
    verdict: Option<Verdict>,
    out: Option<&Path>,
) -> Result<Outcome, UsageError> {
    match verdict {
        None => {
            println!("unknown");
            Ok(Outcome::Unknown)
        }
        Some(v) => {
            println!("{v}");
            if v.is_yes() {
                if let Some(w) = &v.witness {
                    write_witness(out, w)?;
                }
                Ok(Outcome::Yes)
            } else {
                Ok(Outcome::No)
            }
        }
    }
}

fn run(command: Command) -> Result<Outcome, UsageError> {
    match command {
        Command::Verify { source, target, map } => {
            let g = read_graph(&source)?;
            let h = read_graph(&target)?;
            let f = read_map(&map)?;
            let report = verify_cover(&g, &h, &f)?;
            if report.ok() {
                match fold_number(&g, &h, &f)? {
                    Some(k) => println!("valid {k}-fold cover"),
                    None => println!("valid cover"),
                }
                Ok(Outcome::Yes)
            } else {
                for violation in &report.violations {
                    println!("{violation}");
                }
                Ok(Outcome::No)
            }
        }
        Command::Obedient { source, target, map } => {
            let g = read_graph(&source)?;
            let h = read_graph(&target)?;
            let f = read_map(&map)?;
            if is_degree_obedient(&g, &h, &f.vertex_map)? {
                println!("degree-obedient");
                Ok(Outcome::Yes)
            } else {
                println!("not degree-obedient");
                Ok(Outcome::No)
            }
        }
        Command::Decide { source, target, out, budget } => {
            let g = read_graph(&source)?;
            let budget = budget.budget();
            let params = if let Some(path) = target.strip_prefix('@') {
                TargetParams::Arbitrary(read_graph(Path::new(path))?)
            } else {
                TargetParams::parse(&target)?
            };
            let verdict = match &params {
                TargetParams::OneVertex { semi, loops } => {
                    decide_f_budgeted(&g, *semi, *loops, &budget)
                }
                TargetParams::TwoVertex { k, m, l, p, q } => {
                    decide_w_budgeted(&g, (*k, *m, *l, *p, *q), &budget)?
                }
                TargetParams::Arbitrary(h) => match solve_cover(&g, h, &budget) {
                    CoverOutcome::Yes(map) => {
                        Some(Verdict::yes(Witness::Cover(map), Method::ExactFallback))
                    }
                    CoverOutcome::No => Some(Verdict::no(Method::ExactFallback)),
                    CoverOutcome::Unknown => None,
                },
            };
            verdict_outcome(verdict, out.as_deref())
        }
        Command::Solve { source, target, out, budget } => {
            let g = read_graph(&source)?;
            let h = read_graph(&target)?;
            match solve_cover(&g, &h, &budget.budget()) {
                CoverOutcome::Yes(map) => {
                    println!("yes");
                    if let Some(path) = out {
                        write_out(&path, &map.to_text())?;
                    }
                    Ok(Outcome::Yes)
                }
                CoverOutcome::No => {
                    println!("no");
                    Ok(Outcome::No)
                }
                CoverOutcome::Unknown => {
                    println!("unknown");
                    Ok(Outcome::Unknown)
                }
            }
        }
        Command::Color { source, own, other, check, out } => {
            let g = read_graph(&source)?;
            if let Some(path) = check {
                let text = fs::read_to_string(&path)
                    .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
                let col = TwoColoring::parse(&text, own, other)?;
                return if check_bc_coloring(&g, &col)? {
                    println!("valid ({own},{other})-coloring");
                    Ok(Outcome::Yes)
                } else {
                    println!("invalid ({own},{other})-coloring");
                    Ok(Outcome::No)
                };
            }
            verdict_outcome(Some(decide_bc_coloring(&g, own, other)), out.as_deref())
        }
        Command::Extend { source, target, map, out } => {
            let g = read_graph(&source)?;
            let h = read_graph(&target)?;
            let f = read_map(&map)?;
            match extend_obedient(&g, &h, &f.vertex_map)? {
                Some(cover) => {
                    println!("extended");
                    if let Some(path) = out {
                        write_out(&path, &cover.to_text())?;
                    }
                    Ok(Outcome::Yes)
                }
                None => {
                    println!("no extension exists");
                    Ok(Outcome::No)
                }
            }
        }
        Command::Gadget { which } => match which {
            GadgetCommand::Matchings { d, out } => {
                emit_artifact(&gadgets::build_matchings_gadget(d)?, out.as_deref())
            }
            GadgetCommand::Gab { a, b, out } => {
                emit_graph(&gadgets::build_gab(a, b)?, out.as_deref())
            }
            GadgetCommand::Galb { a, l, b, out } => {
                emit_graph(&gadgets::build_galb(a, l, b)?, out.as_deref())
            }
            GadgetCommand::BridgeGeneral { b, c, out } => {
                emit_artifact(&gadgets::build_bridge_general(b, c)?, out.as_deref())
            }
            GadgetCommand::BridgeCplus1 { c, out } => {
                emit_artifact(&gadgets::build_bridge_cplus1(c)?, out.as_deref())
            }
            GadgetCommand::FGadget { b, out } => {
                emit_artifact(&gadgets::build_f_gadget(b)?, out.as_deref())
            }
            GadgetCommand::Variable { b, out } => {
                emit_artifact(&gadgets::build_variable_gadget(b)?, out.as_deref())
            }
            GadgetCommand::UnitBlock { b, out } => {
                emit_artifact(&gadgets::build_unit_block(b)?, out.as_deref())
            }
            GadgetCommand::Target { spec, out } => {
                emit_graph(&TargetParams::parse(&spec)?.graph(), out.as_deref())
            }
        },
        Command::Reduce { which } => match which {
            ReduceCommand::Onevertex { source, k, d, out } => {
                let g = read_graph(&source)?;
                emit_artifact(&gadgets::build_onevertex_instance(&g, k, d)?, out.as_deref())
            }
            ReduceCommand::Nonregular { source, params, out } => {
                let g = read_graph(&source)?;
                let spec = TargetParams::parse(&format!("W:{params}"))?;
                let TargetParams::TwoVertex { k, m, l, p, q } = spec else {
                    return Err(UsageError("expected five parameters".into()));
                };
                emit_artifact(
                    &gadgets::build_nonregular_instance(&g, (k, m, l, p, q))?,
                    out.as_deref(),
                )
            }
            ReduceCommand::Bb1 { source, b, c, out } => {
                let g = read_graph(&source)?;
                emit_artifact(&gadgets::build_bb1_instance(&g, b, c)?, out.as_deref())
            }
            ReduceCommand::Bb { formula, b, assign, out } => {
                let text = fs::read_to_string(&formula)
                    .map_err(|e| UsageError(format!("cannot read {}: {e}", formula.display())))?;
                let phi = SatFormula::parse(&text)?;
                let assignment = match assign {
                    None => None,
                    Some(path) => Some(read_assignment(&path)?),
                };
                emit_artifact(
                    &gadgets::build_bb_instance(&phi, b, assignment.as_ref())?,
                    out.as_deref(),
                )
            }
        },
        Command::ProductK2 { source, out } => {
            let g = read_graph(&source)?;
            emit_graph(&g.tensor_k2(), out.as_deref())
        }
    }
}

fn read_assignment(path: &Path) -> Result<BTreeMap<String, bool>, UsageError> {
    let text = fs::read_to_string(path)
        .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
    let mut out = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        match content.split_whitespace().collect::<Vec<_>>().as_slice() {
            [name, "true"] => out.insert(name.to_string(), true),
            [name, "false"] => out.insert(name.to_string(), false),
            _ => {
                return Err(UsageError(format!(
                    "{}:{}: expected `<variable> <true|false>`",
                    path.display(),
                    idx + 1
                )))
            }
        };
    }
    Ok(out)
}
