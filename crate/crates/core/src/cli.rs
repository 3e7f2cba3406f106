//! Command-line front end. Exit codes: 0 success, 2 invalid input,
//! 3 budget exceeded, 4 internal invariant violation.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::autsolver::{automorphism_group, solver_report};
use crate::bounds::{
    aut_union_bound, census, census_to_csv, chernoff_report, monte_carlo_pipeline, order_bound_check,
    order_bound_params, records_to_csv, Budgets,
};
use crate::cayley::{trial_rng, CayleyGraph, ConnectionSet};
use crate::colorings::{coset_coloring, exact_chromatic_number, is_proper, plus_zero_recolor, Coloring};
use crate::distinguishing::distinguishing_report;
use crate::error::{Error, Result};
use crate::field::Space;
use crate::geometry::LineUniverse;
use crate::io::{dimacs_string, read_text, write_text};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "cayley-lines", version, about = "Random Cayley graphs on F_q^n generated by lines avoiding a hyperplane")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output file (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Omit timestamps and runtimes so repeated runs are byte-identical.
    #[arg(long, global = true)]
    no_meta: bool,
    /// Search-tree node budget for coloring and automorphism searches.
    #[arg(long, global = true, default_value_t = 2_000_000)]
    budget_nodes: u64,
    /// Budget for exhaustive enumerations (matrices of GL(n, q), proper colorings).
    #[arg(long, global = true, default_value_t = 5_000_000)]
    budget_enum: u64,
    /// Worker threads for experiments.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dimacs,
}

#[derive(Args, Debug, Clone)]
struct GraphArgs {
    /// Connection set JSON produced by `sample`.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the lines through 0 that meet the last coordinate hyperplane only at 0.
    Lines {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
    },
    /// Sample a connection set.
    Sample {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
    },
    /// Export the Cayley graph (DIMACS by default).
    Build(GraphArgs),
    /// Chromatic number with clique and coloring witnesses.
    Chi(GraphArgs),
    /// Automorphism group, comparison with the affine group K, and the dichotomy check.
    Aut(GraphArgs),
    /// Distinguishing report for a coloring (default: the q+1 certificate coloring).
    Distinguish {
        #[command(flatten)]
        graph: GraphArgs,
        /// Coloring JSON; defaults to the coset coloring with vertex 0 recolored.
        #[arg(long)]
        coloring: Option<PathBuf>,
    },
    /// Seeded Monte-Carlo trials, or the exhaustive census of all line subsets.
    Experiment {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        trials: u64,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long)]
        sweep_all_subsets: bool,
    },
    /// Probability bounds for (q, n), or prime selection for a given k.
    Bounds {
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<u64>,
        /// Monte-Carlo trials for the empirical Chernoff frequency.
        #[arg(long, default_value_t = 0)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded(_) => EXIT_BUDGET,
        Error::Invariant(_) => EXIT_INTERNAL,
        _ => EXIT_INVALID,
    }
}

struct Output {
    text: String,
    code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, code: EXIT_OK }
    }
}

struct Ctx {
    no_meta: bool,
    started: Instant,
}

impl Ctx {
    /// Pretty JSON with a `meta` object unless suppressed.
    fn json(&self, mut v: Value) -> String {
        if !self.no_meta {
            if let Value::Object(map) = &mut v {
                let now = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
                map.insert(
                    "meta".into(),
                    json!({
                        "version": env!("CARGO_PKG_VERSION"),
                        "unix_time": now,
                        "elapsed_ms": self.started.elapsed().as_millis() as u64,
                    }),
                );
            }
        }
        let mut s = serde_json::to_string_pretty(&v).expect("serializable");
        s.push('\n');
        s
    }
}

fn load_graph(a: &GraphArgs) -> Result<CayleyGraph> {
    let conn = match (&a.input, a.q, a.n, a.seed) {
        (Some(path), None, None, None) => ConnectionSet::from_json(&read_text(path)?)?,
        (None, Some(q), Some(n), Some(seed)) => {
            check_odd_prime(q, n)?;
            ConnectionSet::sample(&Space::new(q, n)?, a.p, &mut trial_rng(seed, 0))?
        }
        _ => {
            return Err(Error::InvalidParameter(
                "give either --in FILE or all of --q, --n and --seed".into(),
            ))
        }
    };
    Ok(CayleyGraph::new(conn))
}

fn check_odd_prime(q: u32, n: usize) -> Result<()> {
    Space::new(q, n)?;
    if q == 2 {
        return Err(Error::InvalidParameter("q must be an odd prime".into()));
    }
    if n < 2 {
        return Err(Error::InvalidParameter("n must be at least 2".into()));
    }
    Ok(())
}

fn execute(cli: &Cli, ctx: &Ctx) -> Result<Output> {
    let budgets = Budgets { nodes: cli.budget_nodes, enumeration: cli.budget_enum };
    match &cli.command {
        Command::Lines { q, n } => {
            check_odd_prime(*q, *n)?;
            let u = LineUniverse::new(&Space::new(*q, *n)?)?;
            let mut s = serde_json::to_string(&u.lines)?;
            s.push('\n');
            Ok(Output::ok(s))
        }
        Command::Sample { q, n, seed, p } => {
            check_odd_prime(*q, *n)?;
            let c = ConnectionSet::sample(&Space::new(*q, *n)?, *p, &mut trial_rng(*seed, 0))?;
            let mut s = c.to_json()?;
            s.push('\n');
            Ok(Output::ok(s))
        }
        Command::Build(a) => {
            let g = load_graph(a)?;
            match cli.format.unwrap_or(Format::Dimacs) {
                Format::Dimacs => Ok(Output::ok(dimacs_string(&g)?)),
                Format::Json => {
                    let edges: Vec<[usize; 2]> = g.edges().map(|(u, v)| [u, v]).collect();
                    Ok(Output::ok(ctx.json(json!({
                        "vertices": g.vertex_count(),
                        "degree": g.degree(),
                        "edges": edges,
                    }))))
                }
                Format::Csv => Err(Error::InvalidParameter("build supports dimacs or json".into())),
            }
        }
        Command::Chi(a) => {
            let g = load_graph(a)?;
            let c = exact_chromatic_number(&g, cli.budget_nodes)?;
            let coloring: Value = serde_json::from_str(&c.witness.to_json()?)?;
            let v = json!({
                "lower": c.lower,
                "upper": c.upper,
                "exact": c.exact(),
                "clique": c.clique.as_ref().map(|k| k.members().to_vec()),
                "coloring": coloring,
                "proper": is_proper(&g, &c.witness)?,
                "nodes": c.nodes,
            });
            Ok(Output { text: ctx.json(v), code: if c.proved { EXIT_OK } else { EXIT_BUDGET } })
        }
        Command::Aut(a) => {
            let g = load_graph(a)?;
            let (aut, report) = solver_report(&g, cli.budget_nodes, cli.budget_enum)?;
            let code = if aut.complete && report.dichotomy.is_some() { EXIT_OK } else { EXIT_BUDGET };
            if report.dichotomy == Some(crate::autsolver::Dichotomy::Violated) {
                return Ok(Output { text: ctx.json(serde_json::to_value(&report)?), code: EXIT_INTERNAL });
            }
            Ok(Output { text: ctx.json(serde_json::to_value(&report)?), code })
        }
        Command::Distinguish { graph, coloring } => {
            let g = load_graph(graph)?;
            let c = match coloring {
                Some(path) => Coloring::from_json(&read_text(path)?, g.vertex_count())?,
                None => {
                    let line = g
                        .connection()
                        .chosen_lines()
                        .first()
                        .ok_or_else(|| Error::InvalidParameter("S is empty; no certificate coloring".into()))?;
                    plus_zero_recolor(&coset_coloring(&g, line.rep())?)
                }
            };
            let aut = automorphism_group(&g, cli.budget_nodes)?;
            if !aut.complete {
                let v = json!({ "complete": false, "nodes": aut.nodes });
                return Ok(Output { text: ctx.json(v), code: EXIT_BUDGET });
            }
            let report = distinguishing_report(&g, &c, &aut)?;
            let mut v = serde_json::to_value(&report)?;
            v["proper"] = json!(is_proper(&g, &c)?);
            v["num_colors"] = json!(c.num_colors());
            Ok(Output::ok(ctx.json(v)))
        }
        Command::Experiment { q, n, seed, trials, p, sweep_all_subsets } => {
            check_odd_prime(*q, *n)?;
            let format = cli.format.unwrap_or(Format::Json);
            if *sweep_all_subsets {
                let rows = census(*q, *n, budgets)?;
                return match format {
                    Format::Csv => Ok(Output::ok(census_to_csv(&rows))),
                    Format::Json => Ok(Output::ok(ctx.json(json!({ "q": q, "n": n, "census": rows })))),
                    Format::Dimacs => Err(Error::InvalidParameter("experiment supports json or csv".into())),
                };
            }
            let seed = seed.ok_or_else(|| Error::InvalidParameter("--seed is required".into()))?;
            if *trials == 0 {
                return Err(Error::InvalidParameter("--trials must be at least 1".into()));
            }
            let r = monte_carlo_pipeline(*q, *n, *p, *trials, seed, budgets, cli.jobs, !cli.no_meta)?;
            let code = if r.summary.budget_exceeded > 0 { EXIT_BUDGET } else { EXIT_OK };
            let text = match format {
                Format::Csv => records_to_csv(&r.records),
                Format::Json => ctx.json(serde_json::to_value(&r)?),
                Format::Dimacs => return Err(Error::InvalidParameter("experiment supports json or csv".into())),
            };
            Ok(Output { text, code })
        }
        Command::Bounds { q, n, k, trials, seed } => {
            let mut v = json!({});
            if let Some(k) = k {
                let params = order_bound_params(*k)?;
                v["order_bound"] = serde_json::to_value(&params)?;
                if let Some(n) = n {
                    let (k_order, bound) = order_bound_check(&params, *n as u32);
                    v["order_bound"]["n"] = json!(n);
                    v["order_bound"]["k_order"] = json!(k_order.to_string());
                    v["order_bound"]["bound"] = json!(bound.to_string());
                    v["order_bound"]["k_order_below_bound"] = json!(k_order < bound);
                }
            }
            match (q, n) {
                (Some(q), Some(n)) => {
                    v["union_bound"] = serde_json::to_value(aut_union_bound(*q, *n)?)?;
                    if *n >= 3 && *q != 2 {
                        v["chernoff"] = serde_json::to_value(chernoff_report(*q, *n, *trials, *seed)?)?;
                    }
                }
                (None, _) if k.is_some() => {}
                _ => return Err(Error::InvalidParameter("give --q and --n, or --k".into())),
            }
            Ok(Output::ok(ctx.json(v)))
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    write_text(out, text)
}

/// Parses arguments, runs the command, writes output and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let ctx = Ctx { no_meta: cli.no_meta, started: Instant::now() };
    match execute(&cli, &ctx) {
        Ok(out) => {
            if let Err(e) = emit(cli.out.as_deref(), &out.text) {
                eprintln!("error: {e}");
                return exit_code(&e);
            }
            if out.code == EXIT_BUDGET {
                eprintln!("warning: budget exhausted; output is partial");
            }
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
