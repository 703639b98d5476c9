//! The portal between the two codecs: `phi(a) = sin^2(2 pi a)` turns doubling
//! into the logistic map, exactly.
//!
//! The identity is `L(phi(a)) = phi(D(a))` with `D(a) = 2a mod 1` and
//! `L(z) = 4z(1-z)`. Iterating it, a logistic orbit started at `phi(a)` and a
//! dyadic orbit pushed through `phi` step by step must agree forever. This
//! example walks both orbits in arbitrary-precision arithmetic and prints the
//! discrepancy at every step — which stays pinned at (or within a few ulps of)
//! zero far below the output precision.
//!
//! Two seeds get special attention:
//! * `a = 1/3` doubles to `2/3` and back — a period-2 orbit whose image
//!   `phi(1/3) = 3/4` is a fixed point of the logistic map, and every value
//!   involved is exactly representable, so the discrepancy is exactly zero.
//! * a random 512-bit seed, where nothing is special and the agreement is
//!   entirely the conjugacy's doing.
//!
//! Run with: `cargo run --example conjugacy_portal`

use alphacodec::apfp::UnitReal;
use alphacodec::conjugacy::{conjugacy_check, logistic_step, phi, pi_to_precision};

fn main() -> alphacodec::Result<()> {
    let precision = 512;
    let steps = 12;

    // pi itself comes from the same arithmetic core (Machin's formula).
    let pi = pi_to_precision(precision);
    println!("pi = {}... (computed to {} bits)", &pi.to_decimal_string(40), precision);
    println!();

    // Seed 1: the exactly-representable period-2 orbit.
    let third = UnitReal::from_ratio(1, 3, precision)?;
    println!("seed 1/3: phi(1/3) = {}", phi(&third).to_decimal_string(8));
    let disc = conjugacy_check(&third, steps)?;
    println!("max discrepancy over {steps} steps: {}", describe(&disc));
    println!();

    // Seed 2: an arbitrary irrational-looking word.
    let seed = UnitReal::from_decimal_fraction("0.73105857863000487925115924182183", precision)?;
    println!("seed 0.731058...:");

    // Walk the diagram by hand so each rung is visible.
    let mut z = phi(&seed);
    println!("  k   logistic orbit        dyadic orbit through phi");
    for k in 0..6 {
        let through_phi = phi(&seed.shift_mod1(k)?);
        println!(
            "  {k}   {}    {}",
            z.to_decimal_string(18),
            through_phi.to_decimal_string(18)
        );
        z = logistic_step(&z);
    }
    let disc = conjugacy_check(&seed, steps)?;
    println!("max discrepancy over {steps} steps: {}", describe(&disc));
    Ok(())
}

fn describe(disc: &UnitReal) -> String {
    if disc.is_zero() {
        format!("exactly 0 at {} bits", disc.precision())
    } else {
        format!("below 2^-{}", disc.leading_zeros())
    }
}
