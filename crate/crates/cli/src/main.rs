use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use zetascope::convergence::verify_claims;
use zetascope::zeros::find_zeros;

mod config;
mod eval;
mod io;

use config::{Format, RunConfig};
use eval::What;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Module(#[from] zetascope::Error),
    #[error("{} claim(s) failed", .0.len())]
    Claims(Vec<String>),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Input(_) => 1,
            CliError::Module(_) => 2,
            CliError::Claims(_) => 3,
        }
    }
}

/// Partial zeta sums, functional-equation ratios and their limits at zeta zeros.
#[derive(Parser)]
#[command(name = "zetascope", version)]
struct Cli {
    /// TOML run configuration; command-line flags override its values
    #[arg(long, env = "ZETASCOPE_CONFIG", global = true)]
    config: Option<PathBuf>,
    /// Worker threads [default: available cores]
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(flatten)]
    em: EmFlags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct EmFlags {
    /// Bernoulli terms in the Euler–Maclaurin remainder
    #[arg(long = "em-depth", global = true)]
    depth: Option<usize>,
    /// Smallest cut-off n of the reference evaluator
    #[arg(long = "em-n-base", global = true)]
    n_base: Option<u64>,
    #[arg(long = "em-target-rel-error", global = true)]
    target_rel_error: Option<f64>,
    /// Validity window constant C in |Im z| <= 2πn/C
    #[arg(long = "em-window-c", global = true)]
    window_c: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one quantity at one point
    Eval(EvalArgs),
    /// Locate zeros on the critical line and write them as CSV
    Zeros(ZerosArgs),
    /// Check the asymptotic claims at each zero of a zeros CSV
    Verify(VerifyArgs),
    /// Print a JSON report as a table
    Report(ReportArgs),
}

#[derive(Args)]
struct EvalArgs {
    /// Point as RE+IMi
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["re", "im"])]
    z: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    re: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    im: Option<f64>,
    #[arg(long, value_enum)]
    what: What,
    /// Cut-off for n-dependent quantities [default: reference cut-off for z]
    #[arg(long)]
    n: Option<u64>,
}

#[derive(Args)]
struct ZerosArgs {
    #[arg(long, allow_negative_numbers = true)]
    t_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    t_max: Option<f64>,
    #[arg(long)]
    step: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    zeros: Option<PathBuf>,
    #[arg(long)]
    n0: Option<u64>,
    #[arg(long)]
    doublings: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct ReportArgs {
    /// Report written by `verify` [default: output.report]
    path: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::Claims(lines) = &e {
                for l in lines {
                    eprintln!("  {l}");
                }
            }
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let mut cfg = RunConfig::load(cli.config.as_deref())?;
    let em = &mut cfg.em;
    em.depth = cli.em.depth.unwrap_or(em.depth);
    em.n_base = cli.em.n_base.unwrap_or(em.n_base);
    em.target_rel_error = cli.em.target_rel_error.unwrap_or(em.target_rel_error);
    em.window_c = cli.em.window_c.unwrap_or(em.window_c);
    match cli.command {
        Command::Eval(args) => cmd_eval(&cfg, args),
        Command::Zeros(args) => cmd_zeros(cfg, args),
        Command::Verify(args) => cmd_verify(cfg, args),
        Command::Report(args) => cmd_report(&cfg, args),
    }
}

fn cmd_eval(cfg: &RunConfig, args: EvalArgs) -> Result<(), CliError> {
    let z = match (args.z, args.re, args.im) {
        (Some(s), _, _) => eval::parse_complex(&s)?,
        (None, None, None) => return Err(CliError::Usage("eval needs --z or --re/--im".into())),
        (None, re, im) => zetascope::ComplexValue::new(re.unwrap_or(0.0), im.unwrap_or(0.0)),
    };
    let em = cfg.em_config()?;
    let out = eval::evaluate(args.what, z, args.n, &em)?;
    println!("{}", eval::format_complex(out.value));
    if let Some(n) = out.n {
        println!("n = {n}");
    }
    if let Some(b) = out.bound {
        println!("truncation bound = {}", eval::format_real(b));
    }
    Ok(())
}

fn cmd_zeros(mut cfg: RunConfig, args: ZerosArgs) -> Result<(), CliError> {
    let z = &mut cfg.zeros;
    z.t_min = args.t_min.unwrap_or(z.t_min);
    z.t_max = args.t_max.unwrap_or(z.t_max);
    z.step = args.step.unwrap_or(z.step);
    if z.t_min.partial_cmp(&z.t_max) != Some(std::cmp::Ordering::Less) {
        return Err(CliError::Usage(format!(
            "--t-min must be below --t-max, got t_min = {} and t_max = {}",
            z.t_min, z.t_max
        )));
    }
    let out = args.out.unwrap_or(cfg.output.zeros.clone());
    let (t_min, t_max, step) = (z.t_min, z.t_max, z.step);
    let em = cfg.em_config()?;
    let scan = find_zeros(t_min, t_max, step, &em)?;
    for w in &scan.warnings {
        eprintln!(
            "warning: |Z| dips without a sign change on [{:.4}, {:.4}]; a close pair may be missed",
            w.t_lo, w.t_hi
        );
    }
    io::write_zeros(&out, &scan.zeros)?;
    println!("{}", scan.zeros.len());
    Ok(())
}

fn cmd_verify(mut cfg: RunConfig, args: VerifyArgs) -> Result<(), CliError> {
    cfg.sweep.n0 = args.n0.unwrap_or(cfg.sweep.n0);
    cfg.sweep.doublings = args.doublings.unwrap_or(cfg.sweep.doublings);
    let zeros_path = args.zeros.unwrap_or(cfg.output.zeros.clone());
    let out = args.out.unwrap_or(cfg.output.report.clone());
    let format = args.format.unwrap_or(cfg.output.format);
    let em = cfg.em_config()?;
    let plan = cfg.sweep_plan()?;
    let zeros = io::read_zeros(&zeros_path)?;
    let report = verify_claims(&zeros, &plan, &em)?;
    io::write_report(&out, &report, format)?;
    let passed = report.claims.iter().filter(|c| c.pass).count();
    println!("{passed}/{} claims pass", report.claims.len());
    if report.all_pass() {
        Ok(())
    } else {
        Err(CliError::Claims(
            report.failures().map(io::failure_line).collect(),
        ))
    }
}

fn cmd_report(cfg: &RunConfig, args: ReportArgs) -> Result<(), CliError> {
    let path = args.path.unwrap_or(cfg.output.report.clone());
    let report = io::read_report(&path)?;
    print!("{}", io::render_table(&report));
    Ok(())
}
