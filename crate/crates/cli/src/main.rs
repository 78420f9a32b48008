//! `tsskit`: command-line front end. Exit status 0 on success, 1 when the
//! input is invalid or the answer is negative or out of reach, 2 on usage
//! errors.

mod report;

use std::fs;
use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use tsskit::approx::{approx_dyn_td, baker_ptas_degenerate, BakerOptions};
use tsskit::decomposition::{heuristic_td, make_nice, TreeDecomposition};
use tsskit::format::{
    emit_graph, emit_intervals, emit_td, parse_graph, parse_intervals, parse_td, parse_vertex_list, GraphInstance,
};
use tsskit::gen;
use tsskit::graph::{hull, is_degenerate, is_dynamic_monopoly, is_partial_incentive};
use tsskit::oracle::{brute_alpha, brute_dyn, brute_pi, brute_vertex_cover, OracleConfig};
use tsskit::pi_interval::solve_pi_interval;
use tsskit::pi_tw::{estimate_states, solve_dyn_treewidth_with, solve_pi_treewidth_with, TwOptions};
use tsskit::reductions::{dyn_to_pi, vc_to_dyn};
use tsskit::{Incentive, Thresholds, Vertex};

use report::Report;

#[derive(Parser)]
#[command(name = "tsskit", version, about = "Dynamic monopolies, partial incentives and degenerate sets")]
struct Cli {
    /// Print one JSON object instead of text lines.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the solvers' internal parallelism. Results do not
    /// depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hull of a seed set, with the activation trace.
    Hull {
        #[arg(long)]
        graph: PathBuf,
        /// Comma-separated 1-based vertices.
        #[arg(long, default_value = "")]
        seed: String,
    },
    /// Check a candidate solution.
    #[command(subcommand)]
    Verify(Verify),
    /// Exact solvers.
    #[command(subcommand)]
    Solve(Solve),
    /// Exhaustive reference solvers for small graphs (`TSSKIT_ORACLE_LIMIT`
    /// raises the vertex limit).
    Oracle {
        #[arg(value_enum)]
        problem: OracleProblem,
        #[arg(long)]
        graph: PathBuf,
        /// Budget for vertices without a `k` line (alpha only).
        #[arg(long, default_value_t = 0)]
        kappa_default: i64,
    },
    /// Approximation algorithms.
    #[command(subcommand)]
    Approx(Approx),
    /// Instance transformations.
    #[command(subcommand)]
    Reduce(Reduce),
    /// Seeded instance generators.
    Gen(GenArgs),
}

#[derive(Subcommand)]
enum Verify {
    /// Is the set a dynamic monopoly?
    Dyn {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        set: String,
    },
    /// Is the incentive (`s <v> <value>` lines, other lines ignored) a
    /// partial incentive?
    Pi {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        sigma: PathBuf,
    },
    /// Is the set degenerate under the `k` budgets?
    Degenerate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = 0)]
        kappa_default: i64,
    },
}

#[derive(Args)]
struct Cap {
    /// Refuse when the estimated number of DP states exceeds this.
    #[arg(long, default_value_t = 1e10)]
    max_states: f64,
}

#[derive(Subcommand)]
enum Solve {
    /// Minimum partial incentive over a tree decomposition (min-fill
    /// heuristic when `--td` is omitted).
    PiTw {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        td: Option<PathBuf>,
        #[command(flatten)]
        cap: Cap,
    },
    /// Minimum partial incentive on an interval graph with thresholds at most `t`.
    PiInterval {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        intervals: PathBuf,
        #[arg(long)]
        t: usize,
    },
    /// Minimum dynamic monopoly through path attachment.
    DynExact {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        td: Option<PathBuf>,
        #[command(flatten)]
        cap: Cap,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum OracleProblem {
    Dyn,
    Pi,
    Alpha,
    Vc,
}

#[derive(Subcommand)]
enum Approx {
    /// (w+1)-approximate dynamic monopoly from a tree decomposition. On
    /// planar graphs, a decomposition of width O(sqrt n) gives an
    /// O(sqrt n)-approximation.
    DynTd {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        td: PathBuf,
    },
    /// (1-ε)-approximate maximum degenerate set on a planar graph, by layer
    /// shifting from the outer face.
    Degenerate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        kappa_default: i64,
        #[arg(long)]
        epsilon: f64,
        /// Comma-separated outer-face vertices.
        #[arg(long)]
        outer: String,
        #[arg(long, default_value_t = 2e6)]
        max_states: f64,
    },
}

#[derive(Subcommand)]
enum Reduce {
    /// Vertex cover instance to dynamic monopoly instance.
    VcDyn {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Dynamic monopoly instance to partial incentive instance.
    DynPi {
        #[arg(long)]
        graph: PathBuf,
        /// Decomposition to extend along the attached paths.
        #[arg(long)]
        td: Option<PathBuf>,
        /// Where to write the extended decomposition.
        #[arg(long, requires = "td")]
        td_out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    family: Family,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 8)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    rows: usize,
    #[arg(long, default_value_t = 2)]
    cols: usize,
    /// Edge probability (random).
    #[arg(long, default_value_t = 0.3)]
    p: f64,
    /// Longest interval (interval).
    #[arg(long, default_value_t = 3)]
    max_len: i64,
    /// Thresholds drawn uniformly from `tau_lo..=tau_hi`; all 1 when omitted.
    #[arg(long, requires = "tau_hi")]
    tau_lo: Option<i64>,
    #[arg(long, requires = "tau_lo")]
    tau_hi: Option<i64>,
    /// Where to write the representation (interval).
    #[arg(long)]
    intervals_out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, clap::ValueEnum)]
enum Family {
    Tree,
    Grid,
    Interval,
    Random,
    Planar,
}

fn read(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_graph(path: &Path) -> Result<GraphInstance> {
    parse_graph(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_td(path: &Path, n: usize) -> Result<TreeDecomposition> {
    parse_td(&read(path)?, n).with_context(|| format!("parsing {}", path.display()))
}

fn vertex_list(s: &str, n: usize) -> Result<Vec<Vertex>> {
    parse_vertex_list(s, n).map_err(|e| anyhow::anyhow!("vertex list: {}", e.message))
}

fn load_sigma(path: &Path, n: usize) -> Result<Incentive> {
    let mut values = vec![0u64; n];
    for (i, line) in read(path)?.lines().enumerate() {
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.first() != Some(&"s") {
            continue;
        }
        let parsed = match f[1..] {
            [v, x] => v.parse::<usize>().ok().zip(x.parse::<u64>().ok()),
            _ => None,
        };
        match parsed {
            Some((v, x)) if (1..=n).contains(&v) => values[v - 1] = x,
            _ => bail!("{}: line {}: expected `s <vertex> <value>`", path.display(), i + 1),
        }
    }
    Ok(Incentive::new(values))
}

/// Text or JSON report, and whether the command succeeded.
type Outcome = (Report, bool);

fn run(cli: &Cli) -> Result<Outcome> {
    let mut r = Report::new();
    let ok = match &cli.command {
        Command::Hull { graph, seed } => {
            let inst = load_graph(graph)?;
            let seed = vertex_list(seed, inst.graph.n())?;
            let h = hull(&inst.graph, &inst.tau, &seed);
            r.field("size", h.members.len());
            r.vertices("members", "h", &h.members);
            let steps = h.trace.order.iter().map(|a| format!("a {} {} {}", a.vertex + 1, a.round, a.active_neighbors));
            let trace = h.trace.order.iter().map(|a| json!([a.vertex + 1, a.round, a.active_neighbors])).collect();
            r.raw("trace", steps.collect(), serde_json::Value::Array(trace));
            r.verdict("monopoly", h.members.len() == inst.graph.n());
            true
        }
        Command::Verify(v) => verify(v, &mut r)?,
        Command::Solve(s) => solve(s, &mut r)?,
        Command::Oracle { problem, graph, kappa_default } => {
            let inst = load_graph(graph)?;
            let (g, config) = (&inst.graph, OracleConfig::from_env());
            match problem {
                OracleProblem::Dyn => {
                    let res = brute_dyn(g, &inst.tau, &config)?;
                    r.field("optimum", res.optimum).vertices("witness", "d", &res.witness);
                }
                OracleProblem::Pi => {
                    let res = brute_pi(g, &inst.tau, &config)?;
                    r.field("optimum", res.optimum).incentive(&res.witness);
                }
                OracleProblem::Alpha => {
                    let res = brute_alpha(g, &inst.kappa(*kappa_default), &config)?;
                    r.field("optimum", res.optimum).vertices("witness", "i", &res.witness);
                }
                OracleProblem::Vc => {
                    let res = brute_vertex_cover(g, &config)?;
                    r.field("optimum", res.optimum).vertices("witness", "v", &res.witness);
                }
            }
            true
        }
        Command::Approx(a) => approx(a, &mut r)?,
        Command::Reduce(red) => {
            reduce(red, cli.json)?;
            return Ok((r, true));
        }
        Command::Gen(args) => {
            generate(args, cli.json)?;
            return Ok((r, true));
        }
    };
    Ok((r, ok))
}

fn verify(v: &Verify, r: &mut Report) -> Result<bool> {
    let valid = match v {
        Verify::Dyn { graph, set } => {
            let inst = load_graph(graph)?;
            let set = vertex_list(set, inst.graph.n())?;
            r.field("size", set.len());
            is_dynamic_monopoly(&inst.graph, &inst.tau, &set)
        }
        Verify::Pi { graph, sigma } => {
            let inst = load_graph(graph)?;
            let sigma = load_sigma(sigma, inst.graph.n())?;
            r.field("weight", sigma.weight()?);
            is_partial_incentive(&inst.graph, &inst.tau, &sigma)
        }
        Verify::Degenerate { graph, set, kappa_default } => {
            let inst = load_graph(graph)?;
            let set = vertex_list(set, inst.graph.n())?;
            r.field("size", set.len());
            match is_degenerate(&inst.graph, &inst.kappa(*kappa_default), &set) {
                Some(order) => {
                    r.vertices("order", "o", &order);
                    true
                }
                None => false,
            }
        }
    };
    r.verdict("valid", valid);
    Ok(valid)
}

fn decomposition(inst: &GraphInstance, td: Option<&PathBuf>) -> Result<TreeDecomposition> {
    match td {
        Some(path) => load_td(path, inst.graph.n()),
        None => Ok(heuristic_td(&inst.graph)),
    }
}

fn solve(s: &Solve, r: &mut Report) -> Result<bool> {
    match s {
        Solve::PiTw { graph, td, cap } => {
            let inst = load_graph(graph)?;
            let td = decomposition(&inst, td.as_ref())?;
            let nice = make_nice(&inst.graph, &td, None)?;
            r.field("width", td.width()).field("estimate", estimate_states(&inst.graph, &inst.tau, &nice));
            let options = TwOptions { max_states: Some(cap.max_states) };
            let sol = solve_pi_treewidth_with(&inst.graph, &inst.tau, &nice, &options)?;
            let ok = is_partial_incentive(&inst.graph, &inst.tau, &sol.sigma);
            r.field("weight", sol.weight).incentive(&sol.sigma).field("states", sol.states).verdict("verified", ok);
            Ok(ok)
        }
        Solve::PiInterval { graph, intervals, t } => {
            let inst = load_graph(graph)?;
            let iv = parse_intervals(&read(intervals)?, inst.graph.n())
                .with_context(|| format!("parsing {}", intervals.display()))?;
            let sol = solve_pi_interval(&inst.graph, &iv, &inst.tau, *t)?;
            let ok = is_partial_incentive(&inst.graph, &inst.tau, &sol.sigma);
            r.field("weight", sol.weight).incentive(&sol.sigma);
            r.field("states", sol.states).field("blocks", sol.blocks).verdict("verified", ok);
            Ok(ok)
        }
        Solve::DynExact { graph, td, cap } => {
            let inst = load_graph(graph)?;
            let td = decomposition(&inst, td.as_ref())?;
            r.field("width", td.width());
            let options = TwOptions { max_states: Some(cap.max_states) };
            let sol = solve_dyn_treewidth_with(&inst.graph, &inst.tau, &td, &options)?;
            let ok = is_dynamic_monopoly(&inst.graph, &inst.tau, &sol.set);
            r.field("size", sol.size).vertices("set", "d", &sol.set).field("states", sol.states);
            r.verdict("verified", ok);
            Ok(ok)
        }
    }
}

fn approx(a: &Approx, r: &mut Report) -> Result<bool> {
    match a {
        Approx::DynTd { graph, td } => {
            let inst = load_graph(graph)?;
            let td = load_td(td, inst.graph.n())?;
            let rep = approx_dyn_td(&inst.graph, &inst.tau, &td)?;
            let ok = is_dynamic_monopoly(&inst.graph, &inst.tau, &rep.set);
            r.field("size", rep.set.len()).field("width", rep.width).vertices("set", "d", &rep.set);
            r.field("strong", rep.strong_nodes.len()).verdict("verified", ok);
            Ok(ok)
        }
        Approx::Degenerate { graph, kappa_default, epsilon, outer, max_states } => {
            let inst = load_graph(graph)?;
            let outer = vertex_list(outer, inst.graph.n())?;
            let kappa = inst.kappa(*kappa_default);
            let options = BakerOptions { max_states: *max_states, oracle: OracleConfig::from_env() };
            let rep = baker_ptas_degenerate(&inst.graph, &kappa, *epsilon, &outer, &options)?;
            let ok = is_degenerate(&inst.graph, &kappa, &rep.set).is_some();
            r.field("size", rep.set.len()).vertices("set", "i", &rep.set);
            r.field("k", rep.k).field("layers", rep.layers).field("shift", rep.best_shift).verdict("verified", ok);
            Ok(ok)
        }
    }
}

fn print_files(graph: String, extra: Option<(&str, String)>, as_json: bool) {
    if as_json {
        let mut object = json!({ "graph": graph });
        if let Some((key, text)) = extra {
            object[key] = json!(text);
        }
        println!("{object}");
    } else {
        print!("{graph}");
    }
}

fn reduce(red: &Reduce, as_json: bool) -> Result<()> {
    match red {
        Reduce::VcDyn { graph } => {
            let inst = load_graph(graph)?;
            let out = vc_to_dyn(&inst.graph);
            print_files(emit_graph(&out.graph, &out.tau, &[]), None, as_json);
        }
        Reduce::DynPi { graph, td, td_out } => {
            let inst = load_graph(graph)?;
            let td = td.as_ref().map(|p| load_td(p, inst.graph.n())).transpose()?;
            let out = dyn_to_pi(&inst.graph, &inst.tau, td.as_ref());
            let extended = out.td.as_ref().map(|t| emit_td(t, out.graph.n()));
            if let (Some(path), Some(text)) = (td_out, &extended) {
                fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            }
            print_files(emit_graph(&out.graph, &out.tau, &[]), extended.map(|t| ("td", t)), as_json);
        }
    }
    Ok(())
}

fn generate(args: &GenArgs, as_json: bool) -> Result<()> {
    let (graph, outer, intervals) = match args.family {
        Family::Tree => (gen::tree(args.n, args.seed)?, None, None),
        Family::Random => (gen::random(args.n, args.p, args.seed)?, None, None),
        Family::Grid => {
            let inst = gen::grid(args.rows, args.cols)?;
            (inst.graph, Some(inst.outer), None)
        }
        Family::Planar => {
            let inst = gen::planar(args.n, args.seed)?;
            (inst.graph, Some(inst.outer), None)
        }
        Family::Interval => {
            let inst = gen::interval(args.n, args.max_len, args.seed)?;
            (inst.graph, None, Some(inst.intervals))
        }
    };
    let tau = match (args.tau_lo, args.tau_hi) {
        (Some(lo), Some(hi)) => gen::thresholds(&graph, lo, hi, args.seed)?,
        _ => Thresholds::uniform(graph.n(), 1),
    };
    let mut text = String::new();
    if let Some(outer) = &outer {
        let list: Vec<String> = outer.iter().map(|v| (v + 1).to_string()).collect();
        text.push_str(&format!("c outer {}\n", list.join(",")));
    }
    text.push_str(&emit_graph(&graph, &tau, &[]));
    let rep = intervals.map(|iv| emit_intervals(&iv));
    if let (Some(path), Some(rep)) = (&args.intervals_out, &rep) {
        fs::write(path, rep).with_context(|| format!("writing {}", path.display()))?;
    }
    print_files(text, rep.map(|t| ("intervals", t)), as_json);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads == 0 {
        eprintln!("error: --threads must be at least 1");
        return ExitCode::from(2);
    }
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
        eprintln!("warning: could not size the thread pool: {e}");
    }
    match run(&cli) {
        Ok((report, ok)) => {
            if !matches!(cli.command, Command::Reduce(_) | Command::Gen(_)) {
                print!("{}", report.render(cli.json));
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
