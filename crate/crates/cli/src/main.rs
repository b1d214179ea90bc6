use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use symgame::acceptance::{run_criterion, CRITERIA};
use symgame::exec::Exec;
use symgame::experiments::{parse_range, run_experiment, write_csv, ExperimentConfig};
use symgame::fo::{build_phi_k, evaluate, Formula};
use symgame::game::{interactive_play, play_sym, Player, Variant};
use symgame::graph::{Family, Graph, GraphLiteral};
use symgame::solver::{solve_ef, Order, Reduction, SolverConfig, SymSolver};
use symgame::strategies::build_strategy;
use symgame::{Error, Result};

#[derive(Parser)]
#[command(name = "symgame", version, about = "Solve, play and test the symmetry game Sym(G) and its relatives")]
struct Cli {
    /// Run everything on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact value of Sym(G) or Sym+(G).
    Solve(SolveArgs),
    /// Play one game between two strategies, or against a human.
    Play(PlayArgs),
    /// Exact length of the EF game on two graphs.
    Ef(EfArgs),
    /// CSV of measured rounds against the bound expressions.
    Bounds(BoundsArgs),
    /// Run the acceptance suite.
    Verify(VerifyArgs),
    /// Evaluate a first-order sentence on a graph.
    Eval(EvalArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Short name (P5, C7, K4, K3,3) or a JSON graph file.
    #[arg(long)]
    graph: String,
    #[arg(long, default_value = "sym")]
    variant: String,
    /// maxmin, minmax, or both when omitted.
    #[arg(long)]
    order: Option<String>,
    #[arg(long, default_value = "automorphism")]
    reduction: String,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    A,
    B,
}

#[derive(Args)]
struct PlayArgs {
    #[arg(long)]
    graph: String,
    #[arg(long, default_value = "sym")]
    variant: String,
    /// Strategy for A.
    #[arg(long, default_value = "optimal")]
    a: String,
    /// Strategy for B.
    #[arg(long, default_value = "optimal")]
    b: String,
    /// Take this side yourself; edges are entered by number or as `u-v`.
    #[arg(long, value_enum)]
    human: Option<Side>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    round_limit: Option<usize>,
    /// Write the transcript JSON here.
    #[arg(long)]
    transcript: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EfArgs {
    #[arg(long)]
    g0: String,
    #[arg(long)]
    g1: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BoundsArgs {
    /// Flat JSON config; flags below override its fields.
    #[arg(long)]
    config: Option<String>,
    #[arg(long)]
    family: Option<String>,
    /// Odd n only.
    #[arg(long)]
    odd: bool,
    /// Inclusive range `A..B` or a single n.
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    step: Option<usize>,
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
    #[arg(long)]
    variant: Option<String>,
    /// Comma-separated seeds.
    #[arg(long)]
    seeds: Option<String>,
    #[arg(long)]
    output: Option<String>,
    /// Print 0 in the elapsed column.
    #[arg(long)]
    zero_elapsed: bool,
    /// Any config field as key=value; the value is read as JSON, else as a string.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run only these criteria.
    #[arg(long = "criterion")]
    criteria: Vec<usize>,
    /// One JSON report per line instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    graph: String,
    /// Sentence in prefix form, e.g. "(exists x (exists y (E x y)))".
    #[arg(long, conflicts_with = "phi")]
    formula: Option<String>,
    /// Evaluate the built-in sentence Phi_k instead.
    #[arg(long)]
    phi: Option<usize>,
}

fn load_graph(spec: &str) -> Result<Graph> {
    if spec.ends_with(".json") {
        let lit: GraphLiteral = serde_json::from_reader(File::open(spec)?)?;
        Graph::from_literal(&lit)
    } else {
        Graph::from_short_name(spec)
    }
}

fn player(side: Side) -> Player {
    match side {
        Side::A => Player::A,
        Side::B => Player::B,
    }
}

fn print_json(value: serde_json::Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(&value)?);
    Ok(())
}

fn cmd_solve(args: SolveArgs, exec: Exec) -> Result<()> {
    let g = load_graph(&args.graph)?;
    let variant = Variant::parse(&args.variant)?;
    let reduction = Reduction::parse(&args.reduction)?;
    let config = SolverConfig { exec, ..SolverConfig::default() };
    let solver = SymSolver::new(&g, variant, reduction, &config)?;
    match args.order.as_deref().map(Order::parse).transpose()? {
        Some(order) => {
            let report = solver.report(order);
            if args.json {
                print_json(serde_json::to_value(&report)?)?;
            } else {
                println!("{} {}: {:?} value {}", report.graph, report.game, order, report.value.rounds);
            }
        }
        None => {
            let (maxmin, minmax) = (solver.maxmin(), solver.minmax());
            if args.json {
                print_json(json!({
                    "graph": g.name(),
                    "game": variant.as_str(),
                    "maxmin": maxmin,
                    "minmax": minmax,
                    "value": solver.value(),
                    "reduction": solver.report(Order::Maxmin).reduction,
                }))?;
            } else {
                println!("{} {}: maxmin {maxmin}, minmax {minmax}", g.name(), variant.as_str());
            }
        }
    }
    Ok(())
}

fn cmd_play(args: PlayArgs) -> Result<()> {
    let g = load_graph(&args.graph)?;
    let variant = Variant::parse(&args.variant)?;
    let (outcome, transcript) = match args.human {
        Some(side) => {
            let human = player(side);
            let (name, other) = match human {
                Player::A => (&args.b, Player::B),
                Player::B => (&args.a, Player::A),
            };
            let mut machine = build_strategy(name, &g, other, variant, args.seed)?;
            let stdin = io::stdin();
            let mut input = stdin.lock();
            let mut out = io::stdout();
            interactive_play(&g, variant, human, machine.as_mut(), &mut input, &mut out, args.seed)?
        }
        None => {
            let mut a = build_strategy(&args.a, &g, Player::A, variant, args.seed)?;
            let mut b = build_strategy(&args.b, &g, Player::B, variant, args.seed)?;
            play_sym(&g, a.as_mut(), b.as_mut(), variant, args.round_limit, args.seed)?
        }
    };
    if let Some(path) = &args.transcript {
        let mut file = BufWriter::new(File::create(path)?);
        serde_json::to_writer_pretty(&mut file, &transcript)?;
        writeln!(file)?;
    }
    if args.json {
        print_json(serde_json::to_value(outcome)?)?;
    } else {
        let winner = outcome.winner.map_or("none".to_string(), |p| format!("{p:?}"));
        println!("{}: winner {winner}, B survived {} rounds ({:?})", g.name(), outcome.survived_rounds, outcome.reason);
    }
    Ok(())
}

fn cmd_ef(args: EfArgs) -> Result<()> {
    let (g0, g1) = (load_graph(&args.g0)?, load_graph(&args.g1)?);
    let report = solve_ef(&g0, &g1)?;
    if args.json {
        print_json(serde_json::to_value(&report)?)?;
    } else {
        println!("EF({}, {}) = {}", g0.name(), g1.name(), report.value.rounds);
    }
    Ok(())
}

fn cmd_bounds(args: BoundsArgs, exec: Exec) -> Result<()> {
    let base = match &args.config {
        Some(path) => ExperimentConfig::from_file(path)?,
        None => ExperimentConfig::default(),
    };
    let mut overrides: Vec<(String, String)> = Vec::new();
    let mut put = |k: &str, v: String| overrides.push((k.to_string(), v));
    if let Some(f) = &args.family {
        put("family", format!("{:?}", Family::parse(f)?.as_str()));
    }
    if args.odd {
        put("odd_only", "true".into());
    }
    if let Some(range) = &args.n {
        let (lo, hi) = parse_range(range)?;
        put("n_min", lo.to_string());
        put("n_max", hi.to_string());
    }
    if let Some(step) = args.step {
        put("n_step", step.to_string());
    }
    if let Some(a) = &args.a {
        put("a_strategy", a.clone());
    }
    if let Some(b) = &args.b {
        put("b_strategy", b.clone());
    }
    if let Some(v) = &args.variant {
        put("variant", format!("{:?}", if Variant::parse(v)? == Variant::Sym { "sym" } else { "sym_plus" }));
    }
    if let Some(seeds) = &args.seeds {
        put("seeds", format!("[{seeds}]"));
    }
    if let Some(out) = &args.output {
        put("output", out.clone());
    }
    if args.zero_elapsed {
        put("zero_elapsed", "true".into());
    }
    if args.config.is_none() {
        put("exec", format!("{:?}", if exec == Exec::Sequential { "sequential" } else { "parallel" }));
    }
    for kv in &args.set {
        let (k, v) = kv.split_once('=').ok_or_else(|| Error::Usage(format!("--set expects KEY=VALUE, got {kv:?}")))?;
        put(k, v.to_string());
    }
    let config = base.with_overrides(&overrides)?;
    let rows = run_experiment(&config)?;
    match &config.output {
        Some(path) => write_csv(&rows, &mut BufWriter::new(File::create(path)?))?,
        None => write_csv(&rows, &mut io::stdout().lock())?,
    }
    Ok(())
}

/// Runs the requested criteria; the error names the first failing one.
fn cmd_verify(args: VerifyArgs, exec: Exec) -> Result<()> {
    let ids: Vec<usize> = if args.criteria.is_empty() { CRITERIA.iter().map(|c| c.0).collect() } else { args.criteria };
    let mut first_failure = None;
    for id in ids {
        let report = run_criterion(id, exec)?;
        if args.json {
            println!("{}", serde_json::to_string(&report)?);
        } else {
            println!("{}", report.line());
        }
        if !report.pass && first_failure.is_none() {
            first_failure = Some(format!("criterion {} ({})", report.id, report.name));
        }
    }
    match first_failure {
        Some(name) => Err(Error::Invariant { message: format!("acceptance failed at {name}"), dump: String::new() }),
        None => Ok(()),
    }
}

fn cmd_eval(args: EvalArgs) -> Result<()> {
    let g = load_graph(&args.graph)?;
    let formula = match (&args.formula, args.phi) {
        (Some(text), _) => Formula::parse(text)?,
        (None, Some(k)) => build_phi_k(k)?,
        (None, None) => return Err(Error::Usage("eval needs --formula or --phi".into())),
    };
    println!("{}", evaluate(&formula, &g)?);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(a, exec),
        Command::Play(a) => cmd_play(a),
        Command::Ef(a) => cmd_ef(a),
        Command::Bounds(a) => cmd_bounds(a, exec),
        Command::Verify(a) => cmd_verify(a, exec),
        Command::Eval(a) => cmd_eval(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Usage(_) | Error::Parameter(_) => ExitCode::from(2),
                _ => ExitCode::FAILURE,
            }
        }
    }
}
