//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on verification/audit failure (or an
//! operational error), 2 on usage errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use matuso::dig::is_realizable_dig;
use matuso::instance::InstanceFile;
use matuso::uso::{UsoOracle, VertexEvalOracle};
use matuso::MatousekUso;
use serde::Serialize;

use matuso_cli::bench::{csv_string, run_duel_bench, run_instance_bench, BenchRow};
use matuso_cli::count::count;
use matuso_cli::duel::run_duel;
use matuso_cli::registry::{AdversaryId, InstanceClass, SolverId};
use matuso_cli::verify::{verify_exhaustive, verify_instance};
use matuso_cli::parse_n_range;

#[derive(Parser)]
#[command(
    name = "matuso",
    version,
    about = "Sink-finding in Matousek-type unique sink orientations: generation, solving, duels, verification, counting, benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance file.
    Gen(GenArgs),
    /// Run a solver against an instance file and verify the answer.
    Solve(SolveArgs),
    /// Run a solver against an adaptive adversary and audit every step.
    Duel(DuelArgs),
    /// Check structural laws of an instance, or of all instances at some n.
    Verify(VerifyArgs),
    /// Count branchings, legal graphs, and orientations at small n.
    Count(CountArgs),
    /// Benchmark query counts over a dimension range; CSV output.
    Bench(BenchArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "general")]
    class: InstanceClass,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file produced by `gen`.
    instance: PathBuf,
    #[arg(long, default_value = "jump-antipodal")]
    solver: SolverId,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DuelArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "naive-recover")]
    solver: SolverId,
    #[arg(long, default_value = "general")]
    adversary: AdversaryId,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Instance file to check.
    instance: Option<PathBuf>,
    /// Sweep all legal graphs and sinks of this dimension instead.
    #[arg(long, conflicts_with = "instance")]
    exhaustive: Option<usize>,
    #[arg(long, default_value = "text")]
    format: OutputFormat,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "text")]
    format: OutputFormat,
}

#[derive(Args)]
struct BenchArgs {
    /// Dimensions: an inclusive range `A..B` or a comma list `16,64,256`.
    #[arg(long = "n-range")]
    n_range: String,
    #[arg(long, default_value = "jump-antipodal")]
    solver: SolverId,
    #[arg(long, default_value = "general")]
    class: InstanceClass,
    /// Duel against this adversary instead of solving fixed instances.
    #[arg(long)]
    adversary: Option<AdversaryId>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: OutputFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Serialize)]
struct SolveOutput {
    solver: String,
    n: usize,
    answer: String,
    queries_used: usize,
    bound: usize,
    verified: bool,
}

fn emit(out: &Option<PathBuf>, content: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
        }
    }
    Ok(())
}

fn cmd_gen(args: &GenArgs) -> anyhow::Result<bool> {
    anyhow::ensure!(args.n >= 1, "--n must be at least 1");
    let file = match args.class {
        InstanceClass::General => {
            InstanceFile::from_uso(&MatousekUso::random_general(args.n, args.seed), None)
        }
        InstanceClass::Realizable => {
            let (uso, branching) = MatousekUso::random_realizable(args.n, args.seed);
            InstanceFile::from_uso(&uso, Some(&branching))
        }
    };
    emit(&args.out, &file.to_json())?;
    Ok(true)
}

fn cmd_solve(args: &SolveArgs) -> anyhow::Result<bool> {
    let file = InstanceFile::load(&args.instance)?;
    let uso = file.to_uso()?;
    if args.solver.needs_realizable() && !is_realizable_dig(uso.matrix())? {
        anyhow::bail!(
            "solver {} requires a realizable instance, but the graph is not the closure of a branching",
            args.solver
        );
    }
    let sink = uso.sink().clone();
    let mut oracle = UsoOracle::new(uso.clone());
    let finder = args.solver.sink_finder(args.seed);
    let report = finder
        .find_sink(&mut oracle)
        .map_err(|e| anyhow::anyhow!("solver failed: {e}"))?;
    // Verification never trusts the solver: evaluate the claimed sink
    // directly on the instance.
    let verified = uso.outmap(&report.answer).is_zero();
    let output = SolveOutput {
        solver: args.solver.name().into(),
        n: uso.n(),
        answer: report.answer.to_string(),
        queries_used: oracle.query_count(),
        bound: args.solver.vertex_eval_bound(uso.n()),
        verified,
    };
    emit(&args.out, &format!("{}\n", serde_json::to_string_pretty(&output)?))?;
    if !verified {
        eprintln!("verification failed: claimed sink {} has outgoing edges", report.answer);
    }
    Ok(verified && report.answer == sink)
}

fn cmd_duel(args: &DuelArgs) -> anyhow::Result<bool> {
    anyhow::ensure!(args.n >= 2, "duels need --n of at least 2");
    anyhow::ensure!(args.trials >= 1, "--trials must be at least 1");
    let mut verdicts = Vec::with_capacity(args.trials);
    let mut all_passed = true;
    for trial in 0..args.trials {
        let verdict = run_duel(
            args.solver,
            args.adversary,
            args.n,
            args.seed.wrapping_add(trial as u64),
        );
        all_passed &= verdict.passed();
        verdicts.push(verdict);
    }
    emit(&args.out, &format!("{}\n", serde_json::to_string_pretty(&verdicts)?))?;
    if !all_passed {
        eprintln!("duel failed: an audit or the query bound did not hold");
    }
    Ok(all_passed)
}

fn cmd_verify(args: &VerifyArgs) -> anyhow::Result<bool> {
    let report = match (&args.instance, args.exhaustive) {
        (Some(path), None) => {
            let file = InstanceFile::load(path)?;
            verify_instance(&file.to_uso()?)
        }
        (None, Some(n)) => verify_exhaustive(n)?,
        _ => anyhow::bail!("pass an instance file or --exhaustive <n>"),
    };
    match args.format {
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        _ => {
            println!("n = {}, instances checked = {}", report.n, report.instances);
            for c in &report.checks {
                let status = if c.passed { "ok" } else { "FAIL" };
                match &c.detail {
                    Some(d) => println!("{:<24} {} ({d})", c.check, status),
                    None => println!("{:<24} {}", c.check, status),
                }
            }
        }
    }
    Ok(report.all_passed())
}

fn cmd_count(args: &CountArgs) -> anyhow::Result<bool> {
    let report = count(args.n)?;
    match args.format {
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        _ => {
            println!("n = {}", report.n);
            println!("branchings            {}", report.branchings);
            println!("legal influence graphs {}", report.legal_digs);
            println!("realizable orientations {}", report.realizable_usos);
            println!("all orientations      {}", report.total_usos);
            println!(
                "closed formula        {} ({})",
                report.formula_realizable,
                if report.formula_matches { "matches" } else { "MISMATCH" }
            );
        }
    }
    Ok(report.formula_matches)
}

fn cmd_bench(args: &BenchArgs) -> anyhow::Result<bool> {
    let ns = parse_n_range(&args.n_range).map_err(anyhow::Error::msg)?;
    let rows: Vec<BenchRow> = match args.adversary {
        Some(adversary) => run_duel_bench(args.solver, adversary, &ns, args.trials, args.seed)?,
        None => run_instance_bench(args.solver, args.class, &ns, args.trials, args.seed)?,
    };
    let rendered = match args.format {
        OutputFormat::Json => format!("{}\n", serde_json::to_string_pretty(&rows)?),
        _ => csv_string(&rows)?,
    };
    emit(&args.out, &rendered)?;
    Ok(rows.iter().all(|r| r.bound_respected))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Solve(args) => cmd_solve(args),
        Command::Duel(args) => cmd_duel(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Count(args) => cmd_count(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
