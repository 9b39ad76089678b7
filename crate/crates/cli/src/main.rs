//! `clique-ext`: count, enumerate, verify and report on the single-element
//! extensions of `M(K_{n+1})`.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage or input error,
//! 3 a feasibility cap or the time budget was exceeded.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use clique_ext::antichain::{
    brute_force_antichains, count_antichains, count_intersecting_antichains,
    is_intersecting_antichain, scarce_equivalence_check,
};
use clique_ext::bounds::{emit_report, trend_table, Counts, ReportFormat};
use clique_ext::clique::{verify_triple_claim, TRIPLE_CLAIM_CAP};
use clique_ext::extension::{enumerate_extensions, verify_subclass_bijection};
use clique_ext::family::{
    brute_force_families, count_families, enumerate_families, format_family_file, is_linear,
    is_scarce, verify_compression, FamilyKind, ENGINE_LIMIT, ENUMERATE_CAP,
};
use clique_ext::{Error, GroundScale, RunOptions, VerificationReport};

const TIME_BUDGET_VAR: &str = "CLIQUE_EXT_TIME_BUDGET_SECS";

#[derive(Parser, Debug)]
#[command(name = "clique-ext", version)]
/// Exact counting and verification for single-element extensions of M(K_{n+1}).
///
/// Every verb takes the subset scale n; the clique has n+1 vertices, so
/// `extend -n 3` builds the extensions of M(K_4).
struct Cli {
    /// Worker threads for counting and enumeration (results never depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Run past the feasibility caps.
    #[arg(long, global = true)]
    force: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print an exact count.
    Count(CountArgs),
    /// Write every linear or scarce family to a family file.
    Enumerate(EnumerateArgs),
    /// Run exhaustive verification suites.
    Verify(VerifyArgs),
    /// Build every extension of M(K_{n+1}) and export them as JSON.
    Extend(ExtendArgs),
    /// Emit the bounds and trend table.
    Report(ReportArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CountWhat {
    Linear,
    Scarce,
    Antichains,
    Intersecting,
}

#[derive(Args, Debug)]
struct CountArgs {
    #[arg(long, value_enum)]
    what: CountWhat,
    /// Subset scale n (the clique has n+1 vertices).
    #[arg(short)]
    n: u32,
    /// Also sweep the whole power set and require agreement.
    #[arg(long)]
    oracle: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum EnumerateWhat {
    Linear,
    Scarce,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long, value_enum)]
    what: EnumerateWhat,
    #[arg(short)]
    n: u32,
    /// Output path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Suite {
    Triples,
    Bijection,
    Phi,
    Axioms,
    All,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    #[arg(short)]
    n: u32,
}

#[derive(Args, Debug)]
struct ExtendArgs {
    /// Subset scale n; extensions of M(K_{n+1}) are built.
    #[arg(short)]
    n: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct ReportArgs {
    #[arg(long)]
    n_min: u32,
    #[arg(long)]
    n_max: u32,
    #[arg(long, value_enum)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Why a run stopped short of success.
enum Failure {
    Verification,
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Lib(e.into())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = match options(&cli) {
        Ok(o) => o,
        Err(e) => return report_error(&e),
    };
    let outcome = match &cli.command {
        Command::Count(args) => count(args, &opts),
        Command::Enumerate(args) => enumerate(args, &opts),
        Command::Verify(args) => verify(args, &opts),
        Command::Extend(args) => extend(args, &opts),
        Command::Report(args) => report(args, &opts),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Lib(e)) => report_error(&e),
    }
}

fn options(cli: &Cli) -> Result<RunOptions, Error> {
    let threads = cli
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if threads == 0 {
        return Err(Error::Input("--threads must be at least 1".into()));
    }
    let time_budget = match std::env::var(TIME_BUDGET_VAR) {
        Ok(v) => {
            let secs: f64 = v
                .trim()
                .parse()
                .map_err(|_| Error::Input(format!("{TIME_BUDGET_VAR}={v:?} is not a number")))?;
            if !(secs.is_finite() && secs >= 0.0) {
                return Err(Error::Input(format!(
                    "{TIME_BUDGET_VAR} must be non-negative"
                )));
            }
            Some(Duration::from_secs_f64(secs))
        }
        Err(_) => None,
    };
    Ok(RunOptions {
        threads,
        force: cli.force,
        time_budget,
        ..Default::default()
    })
}

fn report_error(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    let code = match e {
        Error::Input(_) | Error::Io(_) => 2,
        Error::Contract(_) => 1,
        Error::ResourceCap { .. } | Error::Unsupported { .. } => 3,
        Error::TimeBudget { completed, total } => {
            eprintln!("partial progress: {completed} of {total} subtasks finished before the budget ran out");
            3
        }
    };
    ExitCode::from(code)
}

fn scale(n: u32) -> Result<GroundScale, Failure> {
    Ok(GroundScale::new(n)?)
}

fn write_output(path: Option<&PathBuf>, text: &str) -> Outcome {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn count(args: &CountArgs, opts: &RunOptions) -> Outcome {
    let n = scale(args.n)?;
    let value = match args.what {
        CountWhat::Linear => count_families(n, FamilyKind::Linear, opts)?,
        CountWhat::Scarce => count_families(n, FamilyKind::Scarce, opts)?,
        CountWhat::Antichains => count_antichains(n, opts)?,
        CountWhat::Intersecting => count_intersecting_antichains(n, opts)?,
    };
    println!("{value}");
    if args.oracle {
        let oracle = match args.what {
            CountWhat::Linear => brute_force_families(n, is_linear, opts)?,
            CountWhat::Scarce => brute_force_families(n, is_scarce, opts)?,
            CountWhat::Antichains => brute_force_antichains(n, opts)?,
            CountWhat::Intersecting => brute_force_families(n, is_intersecting_antichain, opts)?,
        };
        if oracle != value {
            eprintln!("oracle disagrees: engine {value}, power-set sweep {oracle}");
            return Err(Failure::Verification);
        }
        eprintln!("oracle agrees: {oracle}");
    }
    Ok(())
}

fn enumerate(args: &EnumerateArgs, opts: &RunOptions) -> Outcome {
    let n = scale(args.n)?;
    let kind = match args.what {
        EnumerateWhat::Linear => FamilyKind::Linear,
        EnumerateWhat::Scarce => FamilyKind::Scarce,
    };
    let families = enumerate_families(n, kind, opts)?;
    write_output(args.out.as_ref(), &format_family_file(n, kind, &families))?;
    if args.out.is_some() {
        eprintln!("{} {} families written", families.len(), kind.name());
    }
    Ok(())
}

fn print_reports(reports: &[VerificationReport]) -> Outcome {
    for r in reports {
        println!("{r}");
    }
    if reports.iter().all(|r| r.passed()) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn verify(args: &VerifyArgs, opts: &RunOptions) -> Outcome {
    let n = scale(args.n)?;
    let wants = |s: Suite| args.suite == s || args.suite == Suite::All;
    let mut reports = Vec::new();
    if wants(Suite::Triples) {
        let cap = TRIPLE_CLAIM_CAP;
        if n.n() > cap && !opts.force {
            return Err(Error::ResourceCap {
                what: "triple claim sweep",
                n: n.n(),
                cap,
            }
            .into());
        }
        reports.push(verify_triple_claim(n)?);
    }
    if wants(Suite::Bijection) {
        reports.push(verify_subclass_bijection(n, opts)?);
        reports.push(scarce_equivalence_check(n, opts)?);
    }
    if wants(Suite::Phi) {
        reports.push(verify_compression(n, opts)?);
    }
    if wants(Suite::Axioms) {
        let catalog = enumerate_extensions(n, opts)?;
        reports.push(catalog.report);
    }
    print_reports(&reports)
}

fn extend(args: &ExtendArgs, opts: &RunOptions) -> Outcome {
    let n = scale(args.n)?;
    let catalog = enumerate_extensions(n, opts)?;
    let records: Vec<_> = catalog.entries.iter().map(|e| &e.record).collect();
    let mut text = serde_json::to_string_pretty(&records).expect("records serialize");
    text.push('\n');
    write_output(args.out.as_ref(), &text)?;
    eprintln!(
        "{} extensions of M(K_{}), {} linear families",
        catalog.entries.len(),
        n.n() + 1,
        catalog.expected
    );
    eprintln!("{}", catalog.report);
    if catalog.report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn report(args: &ReportArgs, opts: &RunOptions) -> Outcome {
    let format = match args.format {
        Format::Json => ReportFormat::Json,
        Format::Csv => ReportFormat::Csv,
    };
    let cap = if opts.force {
        ENGINE_LIMIT
    } else {
        ENUMERATE_CAP
    };
    let rows = trend_table(args.n_min, args.n_max, |n| {
        if n.n() > cap {
            return Ok(Counts::default());
        }
        Ok(Counts {
            scarce: Some(count_families(n, FamilyKind::Scarce, opts)?),
            linear: Some(count_families(n, FamilyKind::Linear, opts)?),
        })
    })?;
    write_output(args.out.as_ref(), &emit_report(&rows, format))?;
    let failed: Vec<_> = rows
        .iter()
        .map(|r| r.validate())
        .filter(|r| !r.passed())
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        for r in &failed {
            eprintln!("{r}");
        }
        Err(Failure::Verification)
    }
}
