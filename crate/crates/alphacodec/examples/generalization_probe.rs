//! Decode past the end of the payload and watch the "model" fail to
//! generalize.
//!
//! An alpha stores exactly `n` samples. Nothing stops the decoder from
//! evaluating index `n`, `n+1`, ... — the shift just reads digits that were
//! never reserved for data. The probe manufactures those digits the way a
//! published alpha acquires them in practice (print the payload to its
//! justified decimal length, re-expand to binary, keep going), decodes them,
//! and reports what comes out: values bounded in [0,1] whose sequence carries
//! no information about the series being continued.
//!
//! Run with: `cargo run --example generalization_probe`

use alphacodec::codec::{encode_dataset, Scheme};
use alphacodec::ingest::Dataset;
use alphacodec::verify::generalization_probe;

fn main() -> alphacodec::Result<()> {
    // A smooth, very predictable series: the probe shows the decoder still
    // cannot continue it.
    let n = 100usize;
    let n_extra = 16usize;
    let series: Vec<f64> = (0..n + n_extra)
        .map(|i| 0.5 + 0.45 * (i as f64 / 9.0).sin())
        .collect();
    let (train, future) = series.split_at(n);

    let dataset = Dataset::normalize(train)?;
    let tau = 8;
    // Guard bits are the extrapolation budget: n_extra steps need n_extra*tau.
    let alpha = encode_dataset(&dataset, Scheme::Logistic, tau, 32 + (n_extra as u32) * tau)?;
    let report = generalization_probe(&alpha, n_extra, Some(&dataset.samples))?;

    println!(
        "trained on {} samples (tau = {}), probing {} steps past the payload",
        report.n_train, tau, report.n_extra
    );
    println!(
        "in-payload max normalized error: {:.3} (< 1, the encoding itself is fine)",
        report.in_train_max_normalized
    );
    println!();
    println!("  k   true continuation   decoded extrapolation   |diff|");
    let bound = Scheme::Logistic.bound(tau);
    let mut uniform_baseline = 0.0f64;
    let mut probe_error = 0.0f64;
    for (i, &value) in report.extrapolated.iter().enumerate() {
        let truth = future[i];
        println!(
            "{:>3}   {:.6}            {:.6}                {:.3}",
            n + i,
            truth,
            value,
            (value - truth).abs()
        );
        probe_error += (value - truth).abs();
        // What blind uniform guessing would score on the same target.
        uniform_baseline += expected_uniform_abs_error(truth);
    }
    probe_error /= report.extrapolated.len() as f64;
    uniform_baseline /= report.extrapolated.len() as f64;

    println!();
    println!("mean |error| of the extrapolations: {probe_error:.4}");
    println!("mean |error| of uniform guessing:   {uniform_baseline:.4}");
    println!("in-payload bound, for scale:        {bound:.4}");
    println!();
    println!(
        "the extrapolations stay in [0,1] ({}) but score like noise — the",
        report.all_in_range()
    );
    println!("payload ends where the data ends, and past it there is only junk.");
    Ok(())
}

/// E|U - t| for U uniform on [0,1]: the error a guess-blindly baseline makes.
fn expected_uniform_abs_error(t: f64) -> f64 {
    t * t - t + 0.5
}
