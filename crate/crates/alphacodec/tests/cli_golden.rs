//! End-to-end CLI tests: golden stdout, byte-stable files, exit codes.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use tempfile::tempdir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_alphacodec"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn fixture_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn line_value<'a>(stdout: &'a str, key: &str) -> &'a str {
    stdout
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|rest| rest.strip_prefix('=')))
        .unwrap_or_else(|| panic!("stdout has no {key}= line:\n{stdout}"))
}

// ---------------------------------------------------------------------------
// encode
// ---------------------------------------------------------------------------

#[test]
fn encode_dyadic_matches_the_golden_alpha_file() {
    let dir = tempdir().unwrap();
    let out_path = dir.path().join("out.alpha");
    let output = run(&[
        "encode",
        fixture_path("reference_samples.csv").to_str().unwrap(),
        "-o",
        out_path.to_str().unwrap(),
        "--scheme",
        "dyadic",
        "--tau",
        "8",
    ]);
    assert!(output.status.success(), "{}", stderr_of(&output));
    let stdout = stdout_of(&output);
    assert_eq!(line_value(&stdout, "scheme"), "dyadic");
    assert_eq!(line_value(&stdout, "n"), "50");
    assert_eq!(line_value(&stdout, "tau"), "8");
    assert_eq!(line_value(&stdout, "p_bin"), "440");
    assert_eq!(line_value(&stdout, "p_dec"), "133");
    assert_eq!(line_value(&stdout, "alpha_decimal_prefix"), "0.54967656997600557");
    let golden = fs::read_to_string(fixture_path("reference_dyadic.alpha")).unwrap();
    let golden_bits = golden
        .lines()
        .find_map(|l| l.strip_prefix("alpha_bits="))
        .unwrap();
    assert_eq!(line_value(&stdout, "alpha_bits_prefix"), &golden_bits[..32]);
    assert_eq!(fs::read_to_string(&out_path).unwrap(), golden);
}

#[test]
fn encode_logistic_matches_the_golden_alpha_file() {
    let dir = tempdir().unwrap();
    let out_path = dir.path().join("out.alpha");
    let output = run(&[
        "encode",
        fixture_path("reference_samples.csv").to_str().unwrap(),
        "-o",
        out_path.to_str().unwrap(),
        "--scheme",
        "logistic",
    ]);
    assert!(output.status.success(), "{}", stderr_of(&output));
    let stdout = stdout_of(&output);
    assert_eq!(line_value(&stdout, "alpha_decimal_prefix"), "0.12953401382778691");
    assert_eq!(line_value(&stdout, "z0_decimal_prefix"), "0.52847263822305822");
    let golden = fs::read_to_string(fixture_path("reference_logistic.alpha")).unwrap();
    assert_eq!(fs::read_to_string(&out_path).unwrap(), golden);
}

#[test]
fn encode_is_deterministic_and_defaults_the_output_path() {
    let dir = tempdir().unwrap();
    let input = dir.path().join("data.csv");
    fs::copy(fixture_path("reference_samples.csv"), &input).unwrap();
    let expected_out = dir.path().join("data.alpha");

    let first = run(&["encode", input.to_str().unwrap()]);
    assert!(first.status.success());
    assert!(stdout_of(&first).contains(&format!("alpha_file={}", expected_out.display())));
    let bytes_a = fs::read(&expected_out).unwrap();

    let second = run(&["encode", input.to_str().unwrap()]);
    assert!(second.status.success());
    assert_eq!(fs::read(&expected_out).unwrap(), bytes_a);
    assert_eq!(stdout_of(&first), stdout_of(&second));
}

// ---------------------------------------------------------------------------
// decode
// ---------------------------------------------------------------------------

#[test]
fn decode_the_stored_alpha_reproduces_the_frozen_series() {
    let dir = tempdir().unwrap();
    let alpha = dir.path().join("printed_series.alpha");
    fs::copy(fixture_path("printed_series.alpha"), &alpha).unwrap();
    let output = run(&["decode", alpha.to_str().unwrap()]);
    assert!(output.status.success(), "{}", stderr_of(&output));
    let csv_path = dir.path().join("printed_series.csv");
    assert!(stdout_of(&output).contains("decoded 95 samples"));
    let csv = fs::read_to_string(&csv_path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 95);
    assert_eq!(lines[0], "0.918652500867");
    assert_eq!(lines[94], "0.048005353438");

    // Running the decode again is byte-stable.
    let bytes = fs::read(&csv_path).unwrap();
    let rerun = run(&["decode", alpha.to_str().unwrap()]);
    assert!(rerun.status.success());
    assert_eq!(fs::read(&csv_path).unwrap(), bytes);
}

#[test]
fn decode_count_within_the_allowance_extends_past_the_payload() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("ext.csv");
    let output = run(&[
        "decode",
        fixture_path("printed_series.alpha").to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
        "--count",
        "99",
    ]);
    assert!(output.status.success(), "{}", stderr_of(&output));
    let csv = fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 99);
    for line in csv.lines().skip(95) {
        let v: f64 = line.parse().unwrap();
        assert!((0.0..=1.0).contains(&v), "extrapolated {v} out of range");
    }
}

#[test]
fn decode_count_past_the_allowance_exits_3_and_writes_nothing() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("none.csv");
    let output = run(&[
        "decode",
        fixture_path("printed_series.alpha").to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
        "--count",
        "100",
    ]);
    assert_eq!(output.status.code(), Some(3), "{}", stderr_of(&output));
    assert!(stderr_of(&output).contains("error:"));
    assert!(!out.exists(), "failed decode must leave no partial output");
}

#[test]
fn decode_count_zero_exits_2() {
    let output = run(&[
        "decode",
        fixture_path("printed_series.alpha").to_str().unwrap(),
        "--count",
        "0",
    ]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn decode_with_image_flag_folds_to_pgm() {
    let dir = tempdir().unwrap();
    let input = dir.path().join("vals.csv");
    let mut csv = String::new();
    for i in 0..10 {
        csv.push_str(&format!("0.{i}5\n"));
    }
    fs::write(&input, csv).unwrap();
    let alpha = dir.path().join("vals.alpha");
    assert!(run(&["encode", input.to_str().unwrap(), "--tau", "16"]).status.success());

    let out = dir.path().join("img.pgm");
    let output = run(&[
        "decode",
        alpha.to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
        "--image",
        "5x2x1",
    ]);
    assert!(output.status.success(), "{}", stderr_of(&output));
    let bytes = fs::read(&out).unwrap();
    assert_eq!(&bytes[..11], b"P5\n5 2\n255\n");
    assert_eq!(bytes.len(), 11 + 10);

    // Bad specs and shape mismatches are rejected up front.
    for spec in ["5x2", "0x2x1", "5x2x2", "axbxc"] {
        let output = run(&["decode", alpha.to_str().unwrap(), "--image", spec]);
        assert_eq!(output.status.code(), Some(2), "spec {spec}");
    }
    let output = run(&["decode", alpha.to_str().unwrap(), "--image", "3x3x1"]);
    assert_eq!(output.status.code(), Some(2), "9 pixels but 10 samples");
}

// ---------------------------------------------------------------------------
// full file round trips through the CLI
// ---------------------------------------------------------------------------

#[test]
fn image_round_trip_through_the_cli_is_byte_exact() {
    let dir = tempdir().unwrap();
    let img = dir.path().join("grad.pgm");
    let pixels: Vec<u8> = (0..192u32).map(|i| (i * 5 % 256) as u8).collect();
    alphacodec::ingest::save_image(&img, &pixels, 16, 12, 1).unwrap();
    let original = fs::read(&img).unwrap();

    let alpha = dir.path().join("grad.alpha");
    let enc = run(&["encode", img.to_str().unwrap(), "--tau", "16"]);
    assert!(enc.status.success(), "{}", stderr_of(&enc));

    let restored = dir.path().join("restored.pgm");
    let dec = run(&["decode", alpha.to_str().unwrap(), "-o", restored.to_str().unwrap()]);
    assert!(dec.status.success(), "{}", stderr_of(&dec));
    assert_eq!(fs::read(&restored).unwrap(), original, "tau=16 reproduces every byte");
}

#[test]
fn audio_round_trip_through_the_cli_is_byte_exact() {
    let dir = tempdir().unwrap();
    let wav = dir.path().join("tone.wav");
    let values: Vec<f64> =
        (0..40).map(|i| 0.5 + 0.4 * (i as f64 * 0.7).sin()).collect();
    alphacodec::ingest::save_audio_pcm(&wav, &values, 8000).unwrap();
    let original = fs::read(&wav).unwrap();

    // 16-bit PCM has 65535 steps, so tau must be at least 17 for exactness.
    let alpha = dir.path().join("tone.alpha");
    let enc = run(&["encode", wav.to_str().unwrap(), "--tau", "17"]);
    assert!(enc.status.success(), "{}", stderr_of(&enc));

    let restored = dir.path().join("restored.wav");
    let dec = run(&["decode", alpha.to_str().unwrap(), "-o", restored.to_str().unwrap()]);
    assert!(dec.status.success(), "{}", stderr_of(&dec));
    assert_eq!(fs::read(&restored).unwrap(), original);
}

// ---------------------------------------------------------------------------
// verify / probe / conjugacy
// ---------------------------------------------------------------------------

#[test]
fn verify_passes_on_the_fixture_and_writes_a_report() {
    let dir = tempdir().unwrap();
    let report = dir.path().join("report.csv");
    let output = run(&[
        "verify",
        fixture_path("reference_samples.csv").to_str().unwrap(),
        "--scheme",
        "logistic",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0), "{}", stderr_of(&output));
    let stdout = stdout_of(&output);
    assert!(stdout.contains("verify: PASS"), "{stdout}");
    assert!(stdout.contains("max_normalized_error="));
    let csv = fs::read_to_string(&report).unwrap();
    assert!(csv.starts_with("k,original,decoded,abs_error,normalized_error,extrapolated\n"));
    assert_eq!(csv.lines().count(), 51);
}

#[test]
fn probe_passes_on_the_fixture() {
    let output = run(&[
        "probe",
        fixture_path("reference_samples.csv").to_str().unwrap(),
        "--n-extra",
        "8",
    ]);
    assert_eq!(output.status.code(), Some(0), "{}", stderr_of(&output));
    let stdout = stdout_of(&output);
    assert!(stdout.contains("probe: PASS"), "{stdout}");
    assert!(stdout.contains("n_extra=8"), "auto-guard covers the request: {stdout}");
    assert!(stdout.contains("extrapolated: min="));
    assert!(!stdout.contains("downgraded"), "{stdout}");
}

#[test]
fn probe_with_pinned_guard_reports_the_downgrade() {
    let output = run(&[
        "probe",
        fixture_path("reference_samples.csv").to_str().unwrap(),
        "--n-extra",
        "10",
        "--guard",
        "32",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let stdout = stdout_of(&output);
    assert!(stdout.contains("downgraded from 10 (guard allows 4 steps)"), "{stdout}");
}

#[test]
fn conjugacy_passes_and_prints_the_table() {
    let output = run(&["conjugacy", "--seeds", "3", "--steps", "10", "--precision", "256"]);
    assert_eq!(output.status.code(), Some(0), "{}", stderr_of(&output));
    let stdout = stdout_of(&output);
    assert!(stdout.starts_with("conjugacy: 3 seeds, 10 steps, 256 bits"), "{stdout}");
    assert!(stdout.contains("seed   0: discrepancy"));
    assert!(stdout.trim_end().ends_with("conjugacy: PASS"), "{stdout}");
}

#[test]
fn conjugacy_rejects_unworkable_parameters() {
    // Too little precision for any contract: domain error.
    let output = run(&["conjugacy", "--precision", "32"]);
    assert_eq!(output.status.code(), Some(2));
    // Steps that consume the whole contract margin: precision exhausted.
    let output = run(&["conjugacy", "--steps", "300", "--precision", "256"]);
    assert_eq!(output.status.code(), Some(3));
}

// ---------------------------------------------------------------------------
// error handling
// ---------------------------------------------------------------------------

#[test]
fn missing_and_malformed_inputs_exit_2() {
    let dir = tempdir().unwrap();

    let output = run(&["encode", dir.path().join("absent.csv").to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_of(&output).contains("error:"));

    let bad_csv = dir.path().join("bad.csv");
    fs::write(&bad_csv, "0.5\nnot-a-number\n").unwrap();
    let output = run(&["encode", bad_csv.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_of(&output).contains("line 2"));

    let bad_alpha = dir.path().join("bad.alpha");
    fs::write(&bad_alpha, "this is not an alpha file\n").unwrap();
    let output = run(&["decode", bad_alpha.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn clap_rejects_out_of_range_tau() {
    let output = run(&[
        "encode",
        fixture_path("reference_samples.csv").to_str().unwrap(),
        "--tau",
        "0",
    ]);
    assert_eq!(output.status.code(), Some(2));
    let output = run(&[
        "encode",
        fixture_path("reference_samples.csv").to_str().unwrap(),
        "--tau",
        "65",
    ]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn oversized_requests_exit_3() {
    let dir = tempdir().unwrap();
    let big = dir.path().join("big.csv");
    let mut csv = String::new();
    for _ in 0..66_000 {
        csv.push_str("0.5\n");
    }
    fs::write(&big, csv).unwrap();
    let output = run(&["encode", big.to_str().unwrap(), "--tau", "64"]);
    assert_eq!(output.status.code(), Some(3), "{}", stderr_of(&output));
}
