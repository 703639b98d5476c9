//! How many digits does one real number need to hold a whole dataset?
//!
//! The budget is linear: `n` samples at `tau` bits each need
//! `p_bin = (n+1)*tau + guard` binary digits — one extra sample's width keeps
//! the final shift meaningful, and the guard absorbs transcendental
//! truncation in the logistic scheme. Printed decimally that becomes
//! `p_dec = ceil(p_bin * log10(2))`, about 0.3 decimal digits per bit.
//!
//! Run with: `cargo run --example precision_budget`

use alphacodec::apfp::{decimal_digits_for, PrecisionBudget};

fn main() {
    println!("{:>6} {:>5} {:>6} {:>8} {:>8}", "n", "tau", "guard", "p_bin", "p_dec");
    for &(n, tau, guard) in &[
        (50usize, 8u32, 32u32),
        (50, 8, 0),
        (95, 8, 32),
        (100, 16, 32),
        (200, 16, 32),
        (1000, 8, 0),
        (1000, 8, 32),
    ] {
        let b = PrecisionBudget::required_precision_with_guard(n, tau, guard);
        println!("{n:>6} {tau:>5} {guard:>6} {:>8} {:>8}", b.p_bin, b.p_dec);
    }
    println!();

    let b = PrecisionBudget::required_precision_with_guard(1000, 8, 0);
    println!(
        "storing 1000 samples at 8 bits each takes {} bits = {} decimal digits,",
        b.p_bin, b.p_dec
    );
    println!(
        "i.e. {:.4} decimal digits per bit (log10(2) = {:.4}).",
        b.p_dec as f64 / b.p_bin as f64,
        std::f64::consts::LOG10_2
    );
    println!();

    // The same rule, exposed directly: how many decimal digits justify a
    // given number of binary digits.
    for bits in [8usize, 64, 400, 760, 8008] {
        println!("{bits:>5} bits -> {:>5} decimal digits", decimal_digits_for(bits));
    }
    println!();

    // Guard bits double as extrapolation room: each decode past the payload
    // consumes tau of them.
    let b = PrecisionBudget::required_precision_with_guard(100, 8, 32);
    println!(
        "with guard = {}, a tau = {} alpha tolerates {} extrapolation steps",
        b.guard,
        b.tau,
        b.guard / b.tau
    );
}
