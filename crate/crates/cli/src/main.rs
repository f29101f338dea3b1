use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use log::info;

use mdsearch::bench::{
    dump_routes, emit_csv, load_instance, run_suite, solve, BenchOptions, Method, SuiteManifest,
    DEFAULT_PROB_SEED,
};
use mdsearch::{Error, Mode, SolverConfig};

const EXIT_USAGE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INVARIANT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "mdsearch",
    version,
    about = "Multi-vehicle deliveryman and graph search solver"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance and print its cost.
    Solve(SolveArgs),
    /// Run a benchmark suite and write the statistics table as CSV.
    Bench(BenchArgs),
}

#[derive(clap::Args)]
struct SolveArgs {
    /// TSPLIB file (EUC_2D).
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    mode: Mode,
    #[arg(long)]
    method: Method,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    vehicles: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// One probability per line (mGSP); generated when absent.
    #[arg(long)]
    prob_file: Option<PathBuf>,
    #[arg(long, default_value = DEFAULT_PROB_SEED)]
    prob_seed: String,
    #[arg(long, default_value_t = 20)]
    alpha: usize,
    #[arg(long, value_delimiter = ',', default_value = "5,5,5,5,1")]
    beta: Vec<usize>,
    #[arg(long, default_value_t = 50)]
    nit: usize,
    #[arg(long, default_value_t = 10)]
    rcl: usize,
    #[arg(long, default_value_t = 1.1)]
    lk_trigger: f64,
    /// Write the routes in plotting format to this file.
    #[arg(long)]
    routes_out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct BenchArgs {
    /// TOML or JSON suite manifest.
    #[arg(long)]
    suite: PathBuf,
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
    runs: u64,
    #[arg(long)]
    out: PathBuf,
    /// Report mean_ms as 0 so the table depends on the seeds only.
    #[arg(long)]
    no_timing: bool,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Validation(_) | Error::NonPositiveBks(_) | Error::NoRecords => EXIT_INVARIANT,
        Error::Config(_) => EXIT_USAGE,
        _ => EXIT_INPUT,
    }
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn threads() -> Result<Option<usize>, String> {
    match std::env::var("MDSEARCH_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(format!(
                "MDSEARCH_THREADS must be a positive integer, got {v:?}"
            )),
        },
        Err(_) => Ok(None),
    }
}

fn run_solve(args: SolveArgs, threads: Option<usize>) -> Result<(), Error> {
    let config = SolverConfig {
        alpha: args.alpha,
        beta: args.beta,
        n_it: args.nit,
        lk_trigger: args.lk_trigger,
        rcl_size: args.rcl,
        seed: args.seed,
    };
    config.validate()?;
    let inst = load_instance(
        &args.instance,
        args.mode,
        args.vehicles as usize,
        args.prob_file.as_deref(),
        &args.prob_seed,
    )?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    let started = std::time::Instant::now();
    let sol = match builder.build() {
        Ok(pool) => pool.install(|| solve(&inst, args.method, &config))?,
        Err(_) => solve(&inst, args.method, &config)?,
    };
    let ms = started.elapsed().as_secs_f64() * 1e3;
    sol.validate(&inst)?;
    info!("{} solved in {ms:.1} ms", inst.name());
    println!("{}", sol.cost());
    if let Some(path) = args.routes_out {
        write(&path, &dump_routes(&sol, &inst))?;
    }
    Ok(())
}

fn run_bench(args: BenchArgs, threads: Option<usize>) -> Result<(), Error> {
    let manifest = SuiteManifest::load(&args.suite)?;
    let options = BenchOptions {
        runs: args.runs as usize,
        threads,
        timing: !args.no_timing,
    };
    let rows = run_suite(&manifest, &options)?;
    write(&args.out, &emit_csv(&rows))?;
    info!("wrote {} rows to {}", rows.len(), args.out.display());
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let threads = match threads() {
        Ok(t) => t,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let result = match cli.command {
        Command::Solve(args) => run_solve(args, threads),
        Command::Bench(args) => run_bench(args, threads),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
