//! Command-line front end: `encode`, `decode`, `verify`, `probe`, `conjugacy`.
//!
//! Exit codes: 0 success, 1 bound violation, 2 parse/domain error,
//! 3 precision exhausted. Output is deterministic — identical inputs and
//! flags produce byte-identical files — and every command finishes its
//! computation before touching the filesystem, so failed runs leave no
//! partial outputs behind.

use crate::codec::{encode_dataset, Alpha, Scheme};
use crate::ingest::{
    denormalize_with, fold_image, load_audio_pcm, load_image, load_series_csv, save_audio_pcm,
    save_image, save_series_csv, Dataset, Modality, DEFAULT_SAMPLE_RATE,
};
use crate::verify::{conjugacy_report, error_report, generalization_probe};
use crate::{Error, Result};
use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};

/// Encode datasets into a single real α and decode them back.
#[derive(Parser, Debug)]
#[command(name = "alphacodec", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Encode a dataset (CSV, PGM/PPM, WAV/PCM) into an alpha file.
    Encode(EncodeArgs),
    /// Decode an alpha file back into a data file.
    Decode(DecodeArgs),
    /// Round-trip a dataset and check every sample against the error bound.
    Verify(VerifyArgs),
    /// Decode past the payload and report what the extrapolations look like.
    Probe(ProbeArgs),
    /// Check the dyadic/logistic conjugacy over random seeds.
    Conjugacy(ConjugacyArgs),
}

#[derive(Args, Debug)]
struct EncodeArgs {
    /// Input data file; modality from extension (.csv, .pgm, .ppm, .wav, .pcm).
    input: PathBuf,
    /// Output alpha file (default: input with extension `.alpha`).
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Encoding scheme.
    #[arg(long, default_value = "dyadic")]
    scheme: Scheme,
    /// Bits of precision per sample.
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..=64))]
    tau: u32,
    /// Guard bits appended to the payload.
    #[arg(long, default_value_t = 32)]
    guard: u32,
    /// Sample rate for raw .pcm input (.wav carries its own).
    #[arg(long)]
    rate: Option<u32>,
}

#[derive(Args, Debug)]
struct DecodeArgs {
    /// Alpha file to decode.
    alpha: PathBuf,
    /// Output data file (default: alpha path with a modality-appropriate extension).
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Samples to decode (default: the encoded count n).
    #[arg(long)]
    count: Option<usize>,
    /// Fold output into an image of these dimensions, e.g. 64x64x1.
    #[arg(long, value_name = "WxHxC")]
    image: Option<String>,
    /// Write output as audio at this sample rate.
    #[arg(long)]
    rate: Option<u32>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Input data file to round-trip.
    input: PathBuf,
    #[arg(long, default_value = "dyadic")]
    scheme: Scheme,
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..=64))]
    tau: u32,
    #[arg(long, default_value_t = 32)]
    guard: u32,
    /// Sample rate for raw .pcm input.
    #[arg(long)]
    rate: Option<u32>,
    /// Write the per-sample error report CSV here.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ProbeArgs {
    /// Input data file to encode and probe.
    input: PathBuf,
    /// The probe targets the differentiable scheme by default.
    #[arg(long, default_value = "logistic")]
    scheme: Scheme,
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..=64))]
    tau: u32,
    /// Extrapolation steps past the payload.
    #[arg(long, default_value_t = 8)]
    n_extra: usize,
    /// Guard bits (default: enough for n_extra extrapolation steps).
    #[arg(long)]
    guard: Option<u32>,
    /// Sample rate for raw .pcm input.
    #[arg(long)]
    rate: Option<u32>,
    /// Write the probe report CSV here.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ConjugacyArgs {
    #[arg(long, default_value_t = 10)]
    seeds: usize,
    #[arg(long, default_value_t = 10)]
    steps: usize,
    /// Working precision in bits.
    #[arg(long, default_value_t = 512)]
    precision: usize,
}

/// Parse `std::env::args`, run the command, and return the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Encode(args) => cmd_encode(&args),
        Command::Decode(args) => cmd_decode(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Probe(args) => cmd_probe(&args),
        Command::Conjugacy(args) => cmd_conjugacy(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    }
}

/// 2 for parse/domain failures, 3 when precision ran out.
fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::PrecisionExhausted(_) => 3,
        _ => 2,
    }
}

// ---------------------------------------------------------------------------
// Input/output plumbing
// ---------------------------------------------------------------------------

/// Load a dataset, dispatching on the input extension.
fn load_input(path: &Path, rate: Option<u32>) -> Result<Dataset> {
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(|e| e.to_ascii_lowercase())
        .unwrap_or_default();
    match ext.as_str() {
        "pgm" | "ppm" => load_image(path),
        "wav" | "pcm" => load_audio_pcm(path, rate.unwrap_or(DEFAULT_SAMPLE_RATE)),
        _ => load_series_csv(path),
    }
}

fn default_output(input: &Path, extension: &str) -> PathBuf {
    input.with_extension(extension)
}

// ---------------------------------------------------------------------------
// encode
// ---------------------------------------------------------------------------

fn cmd_encode(args: &EncodeArgs) -> Result<i32> {
    let dataset = load_input(&args.input, args.rate)?;
    let alpha = encode_dataset(&dataset, args.scheme, args.tau, args.guard)?;
    let output = args
        .output
        .clone()
        .unwrap_or_else(|| default_output(&args.input, "alpha"));
    print_encode_summary(&alpha);
    std::fs::write(&output, alpha.to_file_string())?;
    println!("alpha_file={}", output.display());
    Ok(0)
}

/// The encode summary: n, τ, the precision budget, and the leading 32 binary
/// and 17 decimal digits of α (plus the z₀ prefix for the logistic scheme).
fn print_encode_summary(alpha: &Alpha) {
    let budget = alpha.budget();
    println!("scheme={}", alpha.scheme());
    println!("n={}", alpha.n());
    println!("tau={}", alpha.tau());
    println!("p_bin={}", budget.p_bin);
    println!("p_dec={}", budget.p_dec);
    let payload = alpha.payload();
    let bits = payload.to_binary_string();
    let prefix_len = bits.len().min(32);
    println!("alpha_bits_prefix={}", &bits[..prefix_len]);
    println!("alpha_decimal_prefix={}", payload.to_decimal_string(17));
    if let Some(z0) = alpha.z0() {
        println!("z0_decimal_prefix={}", z0.to_decimal_string(17));
    }
}

// ---------------------------------------------------------------------------
// decode
// ---------------------------------------------------------------------------

fn cmd_decode(args: &DecodeArgs) -> Result<i32> {
    let text = std::fs::read_to_string(&args.alpha)?;
    let alpha = Alpha::from_file_string(&text)?;
    let count = args.count.unwrap_or_else(|| alpha.n());
    if count == 0 {
        return Err(Error::Domain("count must be at least 1".into()));
    }

    // Decode fully before any output decision; errors leave no file behind.
    let samples = alpha.decode_all(count)?;
    let unit_values: Vec<f64> = samples.iter().map(|s| s.value).collect();
    let values = denormalize_with(alpha.norm, &unit_values);

    // Output shape: explicit flags win, then the alpha's own modality.
    let image_shape = match &args.image {
        Some(spec) => Some(parse_image_spec(spec)?),
        None => match alpha.modality {
            Some(Modality::Image { width, height, channels }) => Some((width, height, channels)),
            _ => None,
        },
    };
    let audio_rate = args.rate.or(match alpha.modality {
        Some(Modality::Audio { sample_rate }) => Some(sample_rate),
        _ => None,
    });

    if let Some((width, height, channels)) = image_shape {
        let expected = width * height * channels;
        if values.len() != expected {
            return Err(Error::Shape(format!(
                "decoded {} values but {}x{}x{} needs {expected}",
                values.len(),
                width,
                height,
                channels
            )));
        }
        let dataset = Dataset {
            samples: unit_values,
            norm: alpha.norm,
            modality: Modality::Image { width, height, channels },
        };
        let pixels = fold_image(&dataset, width, height, channels)?;
        let output = args
            .output
            .clone()
            .unwrap_or_else(|| default_output(&args.alpha, if channels == 1 { "pgm" } else { "ppm" }));
        save_image(&output, &pixels, width, height, channels)?;
        println!("decoded {} samples to {}", values.len(), output.display());
    } else if let Some(rate) = audio_rate {
        let output = args
            .output
            .clone()
            .unwrap_or_else(|| default_output(&args.alpha, "wav"));
        save_audio_pcm(&output, &values, rate)?;
        println!("decoded {} samples to {}", values.len(), output.display());
    } else {
        let output = args
            .output
            .clone()
            .unwrap_or_else(|| default_output(&args.alpha, "csv"));
        save_series_csv(&output, &values)?;
        println!("decoded {} samples to {}", values.len(), output.display());
    }
    Ok(0)
}

fn parse_image_spec(spec: &str) -> Result<(usize, usize, usize)> {
    let parts: Vec<&str> = spec.split(['x', 'X']).collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!("image spec must be WxHxC, got {spec:?}")));
    }
    let dims: Vec<usize> = parts
        .iter()
        .map(|p| {
            p.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad image dimension {p:?} in {spec:?}")))
        })
        .collect::<Result<_>>()?;
    if dims[0] == 0 || dims[1] == 0 || !(dims[2] == 1 || dims[2] == 3) {
        return Err(Error::Domain(format!(
            "image dimensions must be positive with 1 or 3 channels, got {spec:?}"
        )));
    }
    Ok((dims[0], dims[1], dims[2]))
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn cmd_verify(args: &VerifyArgs) -> Result<i32> {
    let dataset = load_input(&args.input, args.rate)?;
    let alpha = encode_dataset(&dataset, args.scheme, args.tau, args.guard)?;
    // Errors are measured in normalized space: against what was encoded.
    let report = error_report(&dataset, &alpha)?;
    println!("scheme={} tau={} n={}", report.scheme, report.tau, report.n);
    println!("bound={:.12e}", report.bound);
    println!("max_normalized_error={:.6}", report.max_normalized);
    if let Some(path) = &args.report {
        std::fs::write(path, report.to_csv())?;
        println!("report={}", path.display());
    }
    if report.is_valid() {
        println!("verify: PASS (all {} samples within bound)", report.n);
        Ok(0)
    } else {
        let worst = report
            .normalized
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(k, _)| k)
            .unwrap_or(0);
        println!("verify: FAIL (sample k={worst} exceeds the bound)");
        Ok(1)
    }
}

// ---------------------------------------------------------------------------
// probe
// ---------------------------------------------------------------------------

fn cmd_probe(args: &ProbeArgs) -> Result<i32> {
    let dataset = load_input(&args.input, args.rate)?;
    // Reserve enough guard bits for the requested extrapolation depth unless
    // the caller pinned the guard explicitly.
    let guard = args
        .guard
        .unwrap_or_else(|| 32 + (args.n_extra as u32).saturating_mul(args.tau));
    let alpha = encode_dataset(&dataset, args.scheme, args.tau, guard)?;
    let report = generalization_probe(&alpha, args.n_extra, Some(&dataset.samples))?;
    println!(
        "scheme={} tau={} n_train={} n_extra={}",
        alpha.scheme(),
        alpha.tau(),
        report.n_train,
        report.n_extra
    );
    if report.downgraded {
        println!(
            "note: n_extra downgraded from {} (guard allows {} steps)",
            report.n_extra_requested, report.n_extra
        );
    }
    println!("in_train_max_normalized={:.6}", report.in_train_max_normalized);
    if let Some(stats) = report.stats {
        println!(
            "extrapolated: min={:.6} max={:.6} mean={:.6}",
            stats.min, stats.max, stats.mean
        );
    }
    if let Some(path) = &args.report {
        std::fs::write(path, report.to_csv())?;
        println!("report={}", path.display());
    }
    if report.all_in_range() {
        println!("probe: PASS (all extrapolations in [0,1], informationless by construction)");
        Ok(0)
    } else {
        println!("probe: FAIL (extrapolation out of range)");
        Ok(1)
    }
}

// ---------------------------------------------------------------------------
// conjugacy
// ---------------------------------------------------------------------------

fn cmd_conjugacy(args: &ConjugacyArgs) -> Result<i32> {
    if args.precision < 64 || args.steps == 0 || args.seeds == 0 {
        return Err(Error::Domain(
            "conjugacy needs precision ≥ 64, steps ≥ 1, seeds ≥ 1".into(),
        ));
    }
    if args.steps + 16 >= args.precision {
        return Err(Error::PrecisionExhausted(format!(
            "{} steps leave no contract margin at {} bits",
            args.steps, args.precision
        )));
    }
    let report = conjugacy_report(args.seeds, args.steps, args.precision)?;
    print!("{}", report.to_table_string());
    if report.all_within_contract() {
        println!("conjugacy: PASS");
        Ok(0)
    } else {
        println!("conjugacy: FAIL");
        Ok(1)
    }
}
