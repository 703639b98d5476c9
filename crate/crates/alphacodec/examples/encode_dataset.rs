//! Encode a 50-sample dataset into one real number and decode it back.
//!
//! The dyadic codec truncates each sample to `tau` bits and concatenates the
//! truncations into the binary expansion of a single `alpha` in [0,1). Sample
//! `k` comes back as `2^(k*tau) * alpha mod 1` — a bit shift, nothing else —
//! so every reconstruction is off by strictly less than `2^-tau`.
//!
//! Run with: `cargo run --example encode_dataset`

use alphacodec::codec::{encode_dataset, Scheme};
use alphacodec::ingest::Dataset;

fn main() -> alphacodec::Result<()> {
    // A fixed pseudo-random dataset in [0,1); any f64 slice works the same.
    let raw = sample_values(50);
    let dataset = Dataset::normalize(&raw)?;

    let tau = 8;
    let alpha = encode_dataset(&dataset, Scheme::Dyadic, tau, 32)?;
    let budget = alpha.budget();

    println!("dataset:      n = {} samples, tau = {} bits each", alpha.n(), tau);
    println!("payload:      {} bits + {} guard = {} binary digits", budget.payload_bits(), budget.guard, budget.p_bin);
    println!("decimal form: {} significant digits needed", budget.p_dec);
    println!();

    let bits = alpha.payload().to_binary_string();
    println!("alpha (binary, first 48 of {} bits):", bits.len());
    println!("  {}...", &bits[..48]);
    println!("alpha (decimal, first 40 digits):");
    println!("  {}...", alpha.payload().to_decimal_string(40));
    println!();

    // Decode every sample and find the worst reconstruction.
    let bound = Scheme::Dyadic.bound(tau);
    let mut worst = (0usize, 0.0f64);
    for sample in alpha.decode_all(alpha.n())? {
        let err = (sample.value - raw[sample.k]).abs();
        if err > worst.1 {
            worst = (sample.k, err);
        }
    }
    println!("worst sample: k = {}, |decoded - original| = {:.3e}", worst.0, worst.1);
    println!("bound:        2^-{tau} = {bound:.3e}");
    println!("within bound: {}", worst.1 < bound);
    Ok(())
}

/// Deterministic values in [0,1) — a linear congruential stream, good enough
/// for a demonstration and reproducible across runs.
fn sample_values(n: usize) -> Vec<f64> {
    let mut state: u64 = 0x5eed_cafe;
    (0..n)
        .map(|_| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        })
        .collect()
}
