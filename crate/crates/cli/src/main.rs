//! `trigops`: run transforms on data files, print flop-count tables and
//! verify the fast transforms against the direct definitions.
//!
//! Exit status: 0 on success, 1 when a check or verification fails (or on an
//! internal error), 2 on a usage or input error.

mod count_table;
mod transforms;
mod vector_file;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use trigops::{AuditKind, ExecutionContext, SampleSource, DEFAULT_SEED};

use count_table::CountTable;
use transforms::{check_size, reference_fft, run_fft, Kind, RealRunner, Spec};

/// Relative `--output` paths are resolved against this directory when set.
const OUTPUT_DIR_ENV: &str = "TRIGOPS_OUTPUT_DIR";

/// Bad arguments or unreadable input; maps to exit status 2.
#[derive(Debug)]
pub struct UsageError(String);

impl UsageError {
    pub fn new(msg: String) -> Self {
        UsageError(msg)
    }
}

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Parser)]
#[command(
    name = "trigops",
    version,
    about = "Reduced-operation trigonometric transforms with exact flop audits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a transform to a vector read from a file or generated from a seed.
    Transform(TransformArgs),
    /// Measure flop counts and compare them with the closed forms.
    Count(CountArgs),
    /// Compare a fast transform with its direct definition on random inputs.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct TransformArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Transform size N (the MDCT reads 2N samples).
    #[arg(long)]
    n: usize,
    /// Input vector: one value per line (`re im` for the FFT), or a JSON array for `.json`.
    #[arg(long, conflicts_with = "random", required_unless_present = "random")]
    input: Option<PathBuf>,
    /// Use a pseudo-random input instead of a file.
    #[arg(long)]
    random: bool,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Output scaling: unscaled|rescaled|l1|l2|l4 (dct3, dst3), unscaled|scaled (dct4), l0|l1|l2|l4 (fft).
    #[arg(long)]
    variant: Option<String>,
    /// Output path, `-` for stdout; a `.json` path gets a JSON array.
    #[arg(long, default_value = "-")]
    output: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct CountArgs {
    /// Audit kind, repeatable: dct3[-rescaled|-l1|-l2|-l4], dst3[...], dct4, dct4-scaled, dst4, mdct, imdct, fft.
    #[arg(long = "kind", required = true)]
    kinds: Vec<String>,
    #[arg(long, default_value_t = 1)]
    min: usize,
    #[arg(long, default_value_t = 4096)]
    max: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Exit with status 1 unless every row matches its prediction.
    #[arg(long)]
    check: bool,
    #[arg(long, default_value = "-")]
    output: String,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    variant: Option<String>,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    /// Largest accepted relative L2 error per trial.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

fn write_output(target: &str, contents: &str) -> Result<()> {
    if target == "-" {
        print!("{contents}");
        return Ok(());
    }
    let mut path = PathBuf::from(target);
    if path.is_relative() {
        if let Some(dir) = std::env::var_os(OUTPUT_DIR_ENV) {
            path = Path::new(&dir).join(path);
        }
    }
    std::fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))
}

fn is_json_target(target: &str) -> bool {
    Path::new(target)
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

fn cmd_transform(args: TransformArgs) -> Result<bool> {
    let spec = Spec::resolve(args.kind, args.variant.as_deref())?;
    check_size(args.n)?;
    let len = spec.input_len(args.n);
    let json = is_json_target(&args.output);
    let mut ctx = ExecutionContext::numeric();
    let text = if let Spec::Fft(variant) = spec {
        let x = match &args.input {
            Some(path) => vector_file::read_complex(path, len)?,
            None => SampleSource::new(args.seed).complex_vec(len),
        };
        vector_file::format_complex(&run_fft(variant, &x, &mut ctx)?, json)
    } else {
        let x = match &args.input {
            Some(path) => vector_file::read_real(path, len)?,
            None => SampleSource::new(args.seed).real_vec(len),
        };
        vector_file::format_real(&RealRunner::new(spec, args.n)?.run(&x, &mut ctx)?, json)
    };
    write_output(&args.output, &text)?;
    Ok(true)
}

fn cmd_count(args: CountArgs) -> Result<bool> {
    let kinds = args
        .kinds
        .iter()
        .map(|k| {
            k.parse::<AuditKind>()
                .map_err(|e| UsageError::new(e.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    for (flag, v) in [("--min", args.min), ("--max", args.max)] {
        if !v.is_power_of_two() {
            bail!(UsageError::new(format!("{flag} {v} is not a power of two")));
        }
    }
    if args.min > args.max {
        bail!(UsageError::new(format!(
            "--min {} exceeds --max {}",
            args.min, args.max
        )));
    }
    let table = CountTable::build(&kinds, args.min, args.max)?;
    let text = match args.format {
        Format::Csv => table.to_csv()?,
        Format::Json => table.to_json()?,
    };
    write_output(&args.output, &text)?;
    if args.check && !table.all_match() {
        for row in table.rows().iter().filter(|r| !r.matches) {
            eprintln!(
                "mismatch: {} N={} measured {} predicted {}",
                row.kind, row.n, row.flops, row.predicted
            );
        }
        return Ok(false);
    }
    Ok(true)
}

fn rel_l2<T, F: Fn(&T) -> f64, G: Fn(&T, &T) -> f64>(
    got: &[T],
    want: &[T],
    norm: F,
    dist: G,
) -> (f64, f64) {
    let diff: f64 = got.iter().zip(want).map(|(a, b)| dist(a, b).powi(2)).sum();
    let max_abs = got
        .iter()
        .zip(want)
        .map(|(a, b)| dist(a, b))
        .fold(0.0, f64::max);
    let size: f64 = want.iter().map(|b| norm(b).powi(2)).sum();
    (max_abs, (diff / size.max(f64::MIN_POSITIVE)).sqrt())
}

fn cmd_verify(args: VerifyArgs) -> Result<bool> {
    let spec = Spec::resolve(args.kind, args.variant.as_deref())?;
    check_size(args.n)?;
    if args.tol.is_nan() || args.tol <= 0.0 {
        bail!(UsageError::new(format!(
            "--tol must be positive, got {}",
            args.tol
        )));
    }
    if args.trials == 0 {
        bail!(UsageError::new("--trials must be at least 1".into()));
    }
    let mut src = SampleSource::new(args.seed);
    let len = spec.input_len(args.n);
    let mut ctx = ExecutionContext::numeric();
    let (mut max_abs, mut max_rel) = (0.0f64, 0.0f64);
    if let Spec::Fft(variant) = spec {
        for _ in 0..args.trials {
            let x = src.complex_vec(len);
            let got = run_fft(variant, &x, &mut ctx)?;
            let want = reference_fft(variant, &x)?;
            let (a, r) = rel_l2(&got, &want, |z| z.norm(), |p, q| (p - q).norm());
            max_abs = max_abs.max(a);
            max_rel = max_rel.max(r);
        }
    } else {
        let mut runner = RealRunner::new(spec, args.n)?;
        let inputs: Vec<Vec<f64>> = (0..args.trials).map(|_| src.real_vec(len)).collect();
        let want = runner.reference(&inputs)?;
        for (x, w) in inputs.iter().zip(&want) {
            let got = runner.run(x, &mut ctx)?;
            let (a, r) = rel_l2(&got, w, |v| v.abs(), |p, q| (p - q).abs());
            max_abs = max_abs.max(a);
            max_rel = max_rel.max(r);
        }
    }
    let pass = max_rel <= args.tol;
    println!(
        "{:?} n={} trials={} max_abs_err={max_abs:.3e} max_rel_err={max_rel:.3e} tol={:.1e} {}",
        spec,
        args.n,
        args.trials,
        args.tol,
        if pass { "PASS" } else { "FAIL" }
    );
    Ok(pass)
}

fn is_usage(err: &anyhow::Error) -> bool {
    err.chain().any(|cause| {
        cause.downcast_ref::<UsageError>().is_some()
            || matches!(
                cause.downcast_ref::<trigops::Error>(),
                Some(
                    trigops::Error::NotPowerOfTwo(_)
                        | trigops::Error::LengthMismatch { .. }
                        | trigops::Error::OddLength(_)
                        | trigops::Error::SizeTooSmall { .. }
                        | trigops::Error::Unsupported(_)
                )
            )
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Transform(args) => cmd_transform(args),
        Command::Count(args) => cmd_count(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(if is_usage(&err) { 2 } else { 1 })
        }
    }
}
