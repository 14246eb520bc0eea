//! `partineq`: exact counts, Δ sweeps, named checks, map traces and
//! asymptotic constants from the command line.
//!
//! Exit codes: 0 success or pass, 1 a check failed, 2 invalid flags or a
//! violated hypothesis, 3 engine disagreement or an internal invariant,
//! 4 I/O failure.

mod cache;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use partineq_core::asymptotics::{asymptotic_record, Ctx, DEFAULT_DIGITS};
use partineq_core::delta::{
    sweep, verify_named, CheckParams, CheckReport, ColumnSource, DeltaKind, DeltaReport, Engine,
    SeriesEngine, SweepOptions, CHECK_IDS,
};
use partineq_core::maps::{
    parity_inject, parity_sets, qstar_domain, qstar_inject, write_jsonl, MapTrace, PhiReading,
    PsiSetup,
};
use partineq_core::qseries::gf_q;
use partineq_core::{
    count_gap, count_partset, enumerate_partset, Error, GapSpec, QVariant, ResiduePartSpec,
};
use serde::Serialize;

use cache::CachedSource;

const ENUM_CAP: usize = 20_000_000;

#[derive(Parser)]
#[command(
    name = "partineq",
    version,
    about = "Gap- and residue-restricted partition toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one exact count.
    Count(CountArgs),
    /// Evaluate q - Q on a (d, n) grid.
    Sweep(SweepArgs),
    /// Run a named check; exit 1 on failure.
    Verify(VerifyArgs),
    /// Print the main-term constants as JSON.
    Asymptotic(AsymptoticArgs),
    /// Apply an injection to its whole domain at one weight and log JSON lines.
    Trace(TraceArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Gap,
    Residue,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Plain,
    Dash,
    Dashdash,
}

impl From<VariantArg> for QVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Plain => QVariant::Plain,
            VariantArg::Dash => QVariant::Dash,
            VariantArg::Dashdash => QVariant::DashDash,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Dp,
    Series,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReadingArg {
    Literal,
    Consistent,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapArg {
    Qstar,
    Parity,
    Psi,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    d: u64,
    /// Least part on the gap side.
    #[arg(long)]
    a: Option<u64>,
    /// Residue on the residue side.
    #[arg(long)]
    b: Option<u64>,
    #[arg(long, value_enum, default_value = "plain")]
    variant: VariantArg,
    #[arg(long)]
    n: u64,
    #[arg(long, value_enum, default_value = "dp")]
    engine: EngineArg,
}

#[derive(Args)]
struct CacheArgs {
    /// Directory for cached columns; caching is off when neither this nor
    /// the environment variable is set.
    #[arg(long, env = "PARTINEQ_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Ignore the cache entirely.
    #[arg(long)]
    no_cache: bool,
    /// Recompute every cache hit and fail (exit 3) on a difference.
    #[arg(long)]
    verify_cache: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum, default_value = "plain")]
    variant: VariantArg,
    #[arg(long)]
    a: u64,
    /// Defaults to `a`.
    #[arg(long)]
    b: Option<u64>,
    #[arg(long)]
    d_from: u64,
    #[arg(long)]
    d_to: u64,
    #[arg(long, default_value_t = 1)]
    n_from: u64,
    #[arg(long)]
    n_max: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value = "series")]
    engine: EngineArg,
    /// Fraction of series cells recomputed by dynamic programming.
    #[arg(long, default_value_t = 0.01)]
    cross_check_rate: f64,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    #[command(flatten)]
    cache: CacheArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Check id; `--list` prints them all.
    #[arg(long, required_unless_present = "list")]
    check: Option<String>,
    #[arg(long)]
    list: bool,
    #[arg(long)]
    d: Option<u64>,
    #[arg(long)]
    a: Option<u64>,
    #[arg(long)]
    b: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    l: Option<u64>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    s: Option<u64>,
    #[arg(long)]
    t: Option<u64>,
    #[arg(long)]
    n_min: Option<u64>,
    #[arg(long)]
    n_max: Option<u64>,
    #[arg(long)]
    d_from: Option<u64>,
    #[arg(long)]
    d_to: Option<u64>,
    #[arg(long)]
    count: Option<usize>,
    #[arg(long, value_enum)]
    reading: Option<ReadingArg>,
    /// Write the full JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the JSON report instead of the text summary.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct AsymptoticArgs {
    #[arg(long)]
    d: u64,
    #[arg(long)]
    a: u64,
    /// Significant decimal digits.
    #[arg(long, default_value_t = DEFAULT_DIGITS)]
    precision: usize,
    #[arg(long)]
    find_crossover: bool,
}

#[derive(Args)]
struct TraceArgs {
    #[arg(long, value_enum)]
    map: MapArg,
    #[arg(long)]
    d: u64,
    #[arg(long)]
    a: Option<u64>,
    /// Weight of the output partitions for qstar and psi, of the inputs
    /// for parity.
    #[arg(long)]
    n: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// What went wrong, already mapped to an exit code.
enum Failure {
    Core(Error),
    Io(String),
    /// A check ran and failed; output was already printed.
    CheckFailed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidParameter(_)
        | Error::Hypothesis(_)
        | Error::BudgetExceeded { .. }
        | Error::Domain(_) => 2,
        Error::EngineDisagreement { .. } | Error::Invariant(_) | Error::MismatchedBounds { .. } => {
            3
        }
        Error::NoCrossover(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Count(a) => cmd_count(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Asymptotic(a) => cmd_asymptotic(a),
        Command::Trace(a) => cmd_trace(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::CheckFailed) => ExitCode::from(1),
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: I/O: {msg}");
            ExitCode::from(4)
        }
    }
}

fn need(v: Option<u64>, flag: &str) -> Result<u64, Failure> {
    v.ok_or_else(|| Failure::Core(Error::InvalidParameter(format!("--{flag} is required"))))
}

fn cmd_count(args: CountArgs) -> Result<(), Failure> {
    let value = match args.kind {
        Kind::Gap => {
            let a = need(args.a, "a")?;
            let spec = GapSpec::new(args.d, a)?;
            match args.engine {
                EngineArg::Dp => count_gap(&spec, args.n).to_string(),
                EngineArg::Series => SeriesEngine
                    .gap_column(args.d, a, args.n as usize)?
                    .coeff(args.n as usize)
                    .to_string(),
            }
        }
        Kind::Residue => {
            let b = need(args.b, "b")?;
            let variant = args.variant.into();
            match args.engine {
                EngineArg::Dp => {
                    count_partset(&ResiduePartSpec::q(variant, args.d, b)?, args.n).to_string()
                }
                EngineArg::Series => gf_q(variant, args.d, b, args.n as usize)?
                    .coeff(args.n as usize)
                    .to_string(),
            }
        }
    };
    println!("{value}");
    Ok(())
}

#[derive(Serialize)]
struct JsonCell<'a> {
    d: u64,
    n: u64,
    q_count: String,
    #[serde(rename = "Q_count")]
    big_q_count: String,
    delta: String,
    engine: &'a str,
    dp_checked: bool,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    summary: partineq_core::delta::DeltaSummary,
    cells: Vec<JsonCell<'a>>,
}

fn write_report(report: &DeltaReport, format: Format, path: &Path) -> io::Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    match format {
        Format::Csv => report.write_csv(&mut out)?,
        Format::Json => {
            let cells = report
                .cells
                .iter()
                .map(|c| JsonCell {
                    d: c.d,
                    n: c.n,
                    q_count: c.q_count.to_string(),
                    big_q_count: c.big_q_count.to_string(),
                    delta: c.delta.to_string(),
                    engine: c.engine.as_str(),
                    dp_checked: c.dp_checked,
                })
                .collect();
            let doc = JsonReport {
                summary: report.summary(),
                cells,
            };
            serde_json::to_writer_pretty(&mut out, &doc)?;
            out.write_all(b"\n")?;
        }
    }
    out.flush()
}

fn cmd_sweep(args: SweepArgs) -> Result<(), Failure> {
    let kind = DeltaKind::new(args.variant.into(), args.a, args.b.unwrap_or(args.a))?;
    let mut opts = SweepOptions::new(args.d_from, args.d_to, args.n_max);
    opts.n_from = args.n_from;
    opts.engine = match args.engine {
        EngineArg::Dp => Engine::Dp,
        EngineArg::Series => Engine::Series,
    };
    opts.cross_check_rate = args.cross_check_rate;
    opts.seed = args.seed;
    opts.jobs = args.jobs;
    let cached = match (&args.cache.cache_dir, args.cache.no_cache) {
        (Some(dir), false) => Some(CachedSource::open(dir, args.cache.verify_cache)?),
        _ => None,
    };
    let source: &dyn ColumnSource = match &cached {
        Some(c) => c,
        None => &SeriesEngine,
    };
    let report = sweep(&kind, &opts, source)?;
    if let Some(c) = &cached {
        if let Some(msg) = c.io_error() {
            return Err(Failure::Io(msg));
        }
        let s = c.stats();
        eprintln!(
            "cache: {} hits, {} misses, {} evicted",
            s.hits, s.misses, s.evictions
        );
    }
    if let Some(path) = &args.out {
        write_report(&report, args.format, path)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    }
    println!("{}", report.summary_line());
    if let Some(w) = &report.witness {
        println!(
            "first negative: d={} n={} q={} Q={} delta={}",
            w.d, w.n, w.q_count, w.big_q_count, w.delta
        );
    }
    Ok(())
}

fn print_check(report: &CheckReport) {
    let verdict = if report.passed { "PASS" } else { "FAIL" };
    println!(
        "{verdict} {}: {} ({} checked, {} failed)",
        report.id, report.summary, report.checked, report.failures
    );
    for w in &report.witnesses {
        let at = match (w.d, w.n) {
            (Some(d), Some(n)) => format!("d={d} n={n} "),
            (Some(d), None) => format!("d={d} "),
            (None, Some(n)) => format!("n={n} "),
            (None, None) => String::new(),
        };
        if w.lhs.is_empty() {
            println!("  {at}{}", w.note);
        } else {
            println!("  {at}lhs={} rhs={} {}", w.lhs, w.rhs, w.note);
        }
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    if args.list {
        for id in CHECK_IDS {
            println!("{id}");
        }
        return Ok(());
    }
    let id = args.check.expect("clap enforces --check");
    let params = CheckParams {
        d: args.d,
        a: args.a,
        b: args.b,
        k: args.k,
        l: args.l,
        m: args.m,
        s: args.s,
        t: args.t,
        n_min: args.n_min,
        n_max: args.n_max,
        d_from: args.d_from,
        d_to: args.d_to,
        count: args.count,
        reading: args.reading.map(|r| match r {
            ReadingArg::Literal => PhiReading::Literal,
            ReadingArg::Consistent => PhiReading::Consistent,
        }),
    };
    let report = verify_named(&id, &params)?;
    if let Some(path) = &args.out {
        let mut f = BufWriter::new(File::create(path)?);
        serde_json::to_writer_pretty(&mut f, &report).map_err(io::Error::from)?;
        f.write_all(b"\n")?;
        f.flush()?;
    }
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).map_err(io::Error::from)?
        );
    } else {
        print_check(&report);
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::CheckFailed)
    }
}

fn cmd_asymptotic(args: AsymptoticArgs) -> Result<(), Failure> {
    let mut ctx = Ctx::new(args.precision)?;
    let record = asymptotic_record(&mut ctx, args.d, args.a, args.find_crossover)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&record).map_err(io::Error::from)?
    );
    Ok(())
}

fn cmd_trace(args: TraceArgs) -> Result<(), Failure> {
    let mut traces: Vec<MapTrace> = Vec::new();
    match args.map {
        MapArg::Qstar => {
            let a = need(args.a, "a")?;
            for lambda in qstar_domain(args.d, a, args.n, ENUM_CAP)? {
                traces.push(qstar_inject(args.d, a, args.n, &lambda)?);
            }
        }
        MapArg::Parity => {
            let (source, _) = parity_sets(args.d)?;
            for lambda in enumerate_partset(&source, args.n, ENUM_CAP)? {
                traces.push(parity_inject(args.d, &lambda)?);
            }
        }
        MapArg::Psi => {
            let setup = PsiSetup::new(need(args.a, "a")?, args.d)?;
            for lambda in setup.domain(args.n, ENUM_CAP)? {
                traces.push(setup.map(args.n, &lambda)?);
            }
        }
    }
    match &args.out {
        Some(path) => write_jsonl(&traces, BufWriter::new(File::create(path)?))?,
        None => write_jsonl(&traces, io::stdout().lock())?,
    }
    eprintln!("{} traces", traces.len());
    Ok(())
}
