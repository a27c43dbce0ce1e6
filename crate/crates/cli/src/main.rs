use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kummer_torsion::torsion::TorsionConfig;
use serde::Serialize;

use ktors::batch::{read_all, run_batch, BatchOptions};
use ktors::commands;
use ktors::engine::{Engine, PackOptions};
use ktors::error::{CliError, CliResult};
use ktors::input::{parse_coeffs, parse_curves, parse_rat, CurveRecord};
use ktors::stats::{compute, render};

#[derive(Parser)]
#[command(name = "ktors", version, about = "Rational torsion of hyperelliptic Jacobians")]
struct Cli {
    /// Also print a short human-readable summary to stderr.
    #[arg(long, global = true)]
    human: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CurveArgs {
    /// Coefficients f0,f1,… of y² = f(x), lowest degree first.
    #[arg(long, allow_hyphen_values = true)]
    curve: String,
    /// Genus; inferred from the degree when omitted.
    #[arg(long)]
    genus: Option<usize>,
}

impl CurveArgs {
    fn record(&self) -> CliResult<CurveRecord> {
        CurveRecord::new("cli", self.genus, &parse_coeffs(&self.curve)?)
    }
}

#[derive(Args, Clone)]
struct EngineArgs {
    #[arg(long, default_value_t = 100)]
    primes_bound: u64,
    /// Use this β instead of the computed height bound.
    #[arg(long)]
    beta_override: Option<String>,
    /// Largest Hensel precision exponent N.
    #[arg(long)]
    max_precision: Option<u32>,
    /// Only use doubling, never the pseudo-addition map.
    #[arg(long)]
    no_bqf: bool,
    /// Formula pack file; otherwise $KTORS_PACK_DIR is searched for genus ≥ 2.
    #[arg(long)]
    formula_pack: Option<PathBuf>,
    /// File of trusted pack checksums.
    #[arg(long)]
    trusted_cache: Option<PathBuf>,
    /// Random curves per pack validation.
    #[arg(long, default_value_t = 20)]
    pack_trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Always confirm at full precision.
    #[arg(long)]
    audit: bool,
}

impl EngineArgs {
    fn engine(&self, genera: &[usize]) -> CliResult<Engine> {
        let cfg = TorsionConfig {
            prime_bound: self.primes_bound,
            beta_override: self.beta_override.as_deref().map(parse_rat).transpose()?,
            max_precision: self.max_precision,
            no_bqf: self.no_bqf,
            audit: self.audit,
            seed: self.seed,
        };
        let opts = PackOptions::from_env(self.formula_pack.clone(), self.trusted_cache.clone(), self.pack_trials, self.seed);
        Engine::new(cfg).load_packs(&opts, genera)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Upper bound for J(ℚ)_tors from reductions modulo good primes.
    Bound {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value_t = 100)]
        primes_bound: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The rational torsion subgroup.
    Torsion {
        #[command(flatten)]
        curve: CurveArgs,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// J(ℚ)[2] from the factorisation of f.
    TwoTorsion {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// #J(F_p), the L-polynomial and the group structure.
    Count {
        #[command(flatten)]
        curve: CurveArgs,
        /// An odd prime of good reduction
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check a formula pack against random curves over small fields.
    ValidatePack {
        /// The pack file
        path: PathBuf,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Record the checksum here when the pack passes.
        #[arg(long)]
        trusted_cache: Option<PathBuf>,
    },
    /// Run every curve of a file, appending one JSON line per curve.
    Batch {
        /// One curve per line
        input: PathBuf,
        /// JSON-lines result file, appended to
        #[arg(long, short)]
        output: PathBuf,
        /// Skip ids already present in the output.
        #[arg(long)]
        resume: bool,
        /// Worker threads; all cores by default
        #[arg(long)]
        jobs: Option<usize>,
        /// Only run these ids.
        #[arg(long)]
        id: Vec<String>,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Statistics over one or more result files.
    Stats {
        /// Result files written by `batch`
        files: Vec<PathBuf>,
    },
}

fn emit<T: Serialize>(value: &T) {
    let text = serde_json::to_string_pretty(value).expect("serialisable output");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Bound { curve, primes_bound, seed } => {
            let c = curve.record()?.curve()?;
            let b = commands::bound(&c, primes_bound, seed)?;
            if cli.human {
                eprintln!("order {} structure {:?}", b.order, b.structure);
            }
            emit(&b);
        }
        Command::Torsion { curve, engine } => {
            let rec = curve.record()?;
            let r = engine.engine(&[rec.genus])?.torsion(&rec.curve()?)?;
            if cli.human {
                eprint!("{}", commands::torsion_summary(&r));
            }
            emit(&r);
        }
        Command::TwoTorsion { curve } => {
            let r = commands::two_torsion_report(&curve.record()?.curve()?);
            if cli.human {
                eprintln!("#J(Q)[2] = {} (rank {})", r.order, r.rank);
            }
            emit(&r);
        }
        Command::Count { curve, p, seed } => {
            let r = commands::count(&curve.record()?.curve()?, p, seed)?;
            if cli.human {
                eprintln!("#J(F_{}) = {} structure [{}]", r.p, r.order, r.structure.join(","));
            }
            emit(&r);
        }
        Command::ValidatePack { path, trials, seed, trusted_cache } => {
            let r = commands::validate(&path, trials, seed, trusted_cache.as_deref())?;
            if cli.human {
                for c in &r.report.checks {
                    eprintln!("({}) {}: {}", c.id, c.name, if !c.applicable { "n/a" } else if c.passed { "ok" } else { "FAILED" });
                }
            }
            emit(&r);
            if !r.report.passed() {
                return Err(CliError::Pack(format!("{} failed validation", r.path)));
            }
        }
        Command::Batch { input, output, resume, jobs, id, engine } => {
            let text = std::fs::read_to_string(&input).map_err(|e| CliError::Input(format!("{}: {e}", input.display())))?;
            let mut curves = parse_curves(&text)?;
            if !id.is_empty() {
                curves.retain(|c| id.contains(&c.id));
            }
            let mut genera: Vec<usize> = curves.iter().map(|c| c.genus).collect();
            genera.sort();
            genera.dedup();
            let eng = engine.engine(&genera)?;
            let jobs = jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let summary = run_batch(&eng, &curves, &output, &BatchOptions { jobs, resume })?;
            if cli.human {
                eprintln!("computed {}, skipped {}", summary.computed, summary.skipped);
                eprint!("{}", render(&summary.stats));
            }
            emit(&summary.stats);
        }
        Command::Stats { files } => {
            let records = read_all(&files)?;
            let s = compute(&records);
            if cli.human {
                eprint!("{}", render(&s));
            }
            emit(&s);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
