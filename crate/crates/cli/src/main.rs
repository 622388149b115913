use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use sigmapi_core::bench::{
    self, check_mt, check_table1, fit_laws, load_records, save_fits, save_records, summarize,
    table1_reference, Check, Family, MtGrid, OutputFormat, TrialRecord,
};
use sigmapi_core::linalg::{load_matrix, save_matrix, write_matrix};
use sigmapi_core::lsq::{solve_transform, PipelineConfig};
use sigmapi_core::testgen::{more_toraldo, uniform_pattern, MoreToraldoSpec};
use sigmapi_core::{InversionConfig, ScaleFactorKind, Seed};

/// Least-squares pattern matching with a recurrent matrix inverter.
#[derive(Parser)]
#[command(name = "sigmapi", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a test matrix.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Solve min ||XT - M|| and print T.
    Solve(SolveArgs),
    /// Run an experiment suite.
    #[command(subcommand)]
    Bench(BenchCommand),
}

#[derive(Subcommand)]
enum GenCommand {
    /// Conditioned SPD matrix Z = X'X with spectrum kappa^((i-1)/(n-1)).
    Mt {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        kappa: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Destination for Z (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the factor X.
        #[arg(long)]
        x_out: Option<PathBuf>,
    },
    /// Uniform (-1, 1) pattern of size m x n.
    Uniform {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InversionArgs {
    /// Entrywise stopping threshold on I - V A.
    #[arg(long, default_value_t = 1e-6)]
    eps: f64,
    #[arg(long = "max-iter", default_value_t = 200)]
    max_iter: usize,
}

impl InversionArgs {
    fn config(&self) -> Result<InversionConfig> {
        Ok(InversionConfig::new(self.eps, self.max_iter)?)
    }
}

#[derive(Args)]
struct SolveArgs {
    /// Input pattern X (m x n).
    #[arg(long)]
    x: PathBuf,
    /// Model pattern M (m x k).
    #[arg(long)]
    m: PathBuf,
    /// Scale factor: alpha0, alpha1 or alpha2.
    #[arg(long, default_value = "alpha2")]
    alpha: ScaleFactorKind,
    #[command(flatten)]
    inversion: InversionArgs,
    #[arg(long = "ms-per-op", default_value_t = 5.0)]
    ms_per_op: f64,
}

#[derive(Args)]
struct OutputArgs {
    /// Destination file (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: OutputFormat,
    /// Evaluate acceptance checks; exit with status 2 if any fails.
    #[arg(long)]
    check: bool,
}

#[derive(Subcommand)]
enum BenchCommand {
    /// Iteration counts on conditioned matrices for all three scale factors.
    Mt {
        /// `default`, `quick`, or `n:kappa[,n:kappa...]`.
        #[arg(long, default_value = "default")]
        grid: MtGrid,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[command(flatten)]
        inversion: InversionArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Iteration counts on uniform patterns over the (m/n, n) grid.
    Table1 {
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_values_t = bench::TABLE1_N)]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = bench::TABLE1_RATIOS)]
        ratios: Vec<usize>,
        #[command(flatten)]
        inversion: InversionArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Fit the iteration-count laws to a conditioned-matrix CSV.
    Fit {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
}

enum Outcome {
    Ok,
    ChecksFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::ChecksFailed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Gen(cmd) => gen(cmd).map(|_| Outcome::Ok),
        Command::Solve(args) => solve(args).map(|_| Outcome::Ok),
        Command::Bench(cmd) => bench_cmd(cmd),
    }
}

fn emit_matrix(m: &sigmapi_core::Matrix, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => save_matrix(m, path)?,
        None => write_matrix(m, io::stdout().lock())?,
    }
    Ok(())
}

fn gen(cmd: GenCommand) -> Result<()> {
    match cmd {
        GenCommand::Mt {
            n,
            kappa,
            seed,
            out,
            x_out,
        } => {
            let spec = MoreToraldoSpec::new(n, kappa)?;
            let (x, z) = more_toraldo(&spec, Seed(seed))?;
            if let Some(path) = &x_out {
                save_matrix(&x, path)?;
            }
            emit_matrix(z.as_matrix(), out.as_ref())
        }
        GenCommand::Uniform { m, n, seed, out } => {
            let x = uniform_pattern(m, n, Seed(seed))?;
            emit_matrix(&x, out.as_ref())
        }
    }
}

fn solve(args: SolveArgs) -> Result<()> {
    let x = load_matrix(&args.x)?;
    let m = load_matrix(&args.m)?;
    let cfg = PipelineConfig::new(args.alpha, args.inversion.config()?, args.ms_per_op)?;
    let r = solve_transform(&x, &m, &cfg)?;
    write_matrix(&r.transform, io::stdout().lock())?;
    eprintln!(
        "iterations={} ops={} est_ms={} distance={}",
        r.inversion.iterations, r.op_count, r.est_time_ms, r.distance
    );
    Ok(())
}

fn write_records(records: &[TrialRecord], output: &OutputArgs) -> Result<()> {
    match &output.out {
        Some(path) => save_records(path, records, output.format)?,
        None => {
            let stdout = io::stdout().lock();
            match output.format {
                OutputFormat::Csv => bench::write_records_csv(records, stdout)?,
                OutputFormat::Json => bench::write_records_json(records, stdout)?,
            }
        }
    }
    Ok(())
}

fn report_checks(checks: &[Check]) -> Outcome {
    let mut err = io::stderr().lock();
    for c in checks {
        let _ = writeln!(err, "{c}");
    }
    if checks.iter().all(|c| c.passed) {
        Outcome::Ok
    } else {
        Outcome::ChecksFailed
    }
}

fn print_summary(records: &[TrialRecord]) {
    let mut err = io::stderr().lock();
    for c in summarize(records) {
        let reference = match c.family {
            Family::Mt => format!(
                "law {:.2}",
                bench::Law::for_kind(c.scale_kind).predict(c.kappa, c.n)
            ),
            Family::Uniform => table1_reference(c.m / c.n, c.n, c.scale_kind)
                .map(|(mean, sd)| format!("reference {mean:.1} (+- {sd:.1})"))
                .unwrap_or_default(),
        };
        let _ = writeln!(
            err,
            "{} n={:<4} m={:<5} kappa={:<12.4e} {} mean={:.2} sd={:.2} nonconverged={}  {}",
            c.family, c.n, c.m, c.kappa, c.scale_kind, c.mean, c.sd, c.nonconverged, reference
        );
    }
}

fn bench_cmd(cmd: BenchCommand) -> Result<Outcome> {
    match cmd {
        BenchCommand::Mt {
            grid,
            trials,
            seed,
            inversion,
            output,
        } => {
            if trials == 0 {
                bail!("--trials must be at least 1");
            }
            let records = bench::run_mt_suite(
                &grid,
                trials,
                &ScaleFactorKind::ALL,
                &inversion.config()?,
                Seed(seed),
            )?;
            write_records(&records, &output)?;
            print_summary(&records);
            Ok(if output.check {
                report_checks(&check_mt(&records))
            } else {
                Outcome::Ok
            })
        }
        BenchCommand::Table1 {
            trials,
            seed,
            n,
            ratios,
            inversion,
            output,
        } => {
            if trials == 0 {
                bail!("--trials must be at least 1");
            }
            let records =
                bench::run_table1_suite(&n, &ratios, trials, &inversion.config()?, Seed(seed))?;
            write_records(&records, &output)?;
            print_summary(&records);
            Ok(if output.check {
                report_checks(&check_table1(&records))
            } else {
                Outcome::Ok
            })
        }
        BenchCommand::Fit { input, output } => {
            let records = load_records(&input)
                .with_context(|| format!("reading records from {}", input.display()))?;
            let fits = fit_laws(&records)?;
            match &output.out {
                Some(path) => save_fits(path, &fits, output.format)?,
                None => {
                    let stdout = io::stdout().lock();
                    match output.format {
                        OutputFormat::Csv => bench::write_fits_csv(&fits, stdout)?,
                        OutputFormat::Json => bench::write_fits_json(&fits, stdout)?,
                    }
                }
            }
            Ok(if output.check {
                report_checks(&check_mt(&records))
            } else {
                Outcome::Ok
            })
        }
    }
}
