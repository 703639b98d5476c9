//! The differentiable codec: encode through the logistic map's conjugate
//! coordinates and decode with `z_k = sin^2(2^(k*tau) * arcsin(sqrt(z0)))`.
//!
//! Each sample is pulled back through `phi_inv(z) = arcsin(sqrt(z))/2pi`,
//! truncated to `tau` bits, and concatenated exactly like the dyadic codec;
//! the initial condition handed out is `z0 = phi(alpha)`. Because `phi` is
//! 2pi-Lipschitz on the relevant range, the per-sample error bound is
//! `pi * 2^(1-tau)` — the dyadic bound times 2pi.
//!
//! Run with: `cargo run --example logistic_roundtrip`

use alphacodec::codec::{encode_dataset, Scheme};
use alphacodec::ingest::Dataset;

fn main() -> alphacodec::Result<()> {
    let raw: Vec<f64> = (0..40).map(|i| 0.5 + 0.49 * ((i as f64) * 0.37).sin()).collect();
    let dataset = Dataset::normalize(&raw)?;

    let tau = 8;
    let alpha = encode_dataset(&dataset, Scheme::Logistic, tau, 32)?;

    println!("scheme:   {}", alpha.scheme());
    println!("n = {}, tau = {}, p_bin = {}", alpha.n(), alpha.tau(), alpha.budget().p_bin);
    println!();
    println!("conjugate word (first 32 bits): {}",
        &alpha.payload().to_binary_string()[..32]);
    let z0 = alpha.z0().expect("logistic alphas carry z0");
    println!("z0 = phi(word) (first 40 digits): {}", z0.to_decimal_string(40));
    println!();

    // Both decode routes: through the conjugate word (a shift, then phi), and
    // directly from z0 (arcsin once, then shifts inside the sine). They are
    // the same map written in two coordinate systems.
    let bound = Scheme::Logistic.bound(tau);
    let mut max_err = 0.0f64;
    let mut max_route_gap = 0.0f64;
    println!(" k  original  conjugate-route  direct-route");
    for k in 0..alpha.n() {
        let via_word = alpha.decode(k)?;
        let via_z0 = alpha.decode_logistic_direct(k)?;
        max_err = max_err.max((via_word.value - raw[k]).abs());
        max_route_gap = max_route_gap.max((via_word.value - via_z0.value).abs());
        if k < 5 {
            println!("{k:>2}  {:.6}  {:.6}         {:.6}", raw[k], via_word.value, via_z0.value);
        }
    }
    println!("...");
    println!();
    println!("max |decoded - original| = {max_err:.3e}  (bound pi*2^(1-tau) = {bound:.3e})");
    println!("max gap between routes   = {max_route_gap:.3e}");
    println!("within bound: {}", max_err < bound);
    Ok(())
}
