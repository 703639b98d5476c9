//! The portal between dyadic space and data space.
//!
//! The doubling map `D(α) = 2α mod 1` and the logistic map `L(z) = 4z(1-z)`
//! are topologically conjugate: with `φ(α) = sin²(2πα)` (inverse
//! `φ⁻¹(z) = arcsin(√z) / 2π`, codomain [0, 1/4]) the identity
//! `L(φ(α)) = φ(D(α))` holds for every α, so any orbit may be computed in
//! whichever space is cheaper and carried across by φ.
//!
//! This module evaluates φ, φ⁻¹ and the logistic step to arbitrary precision
//! on [`UnitReal`] values, and provides [`conjugacy_check`], which walks both
//! sides of the commuting square and reports the largest pointwise
//! discrepancy (a measure purely of evaluation error — the identity itself is
//! exact).
//!
//! # Method and error budget
//!
//! All series run in fixed point at an internal working precision padded 64
//! bits past the caller's, so the public contract — absolute error below
//! `2^-(p-8)` for both φ and φ⁻¹ at precision p — holds with room to spare.
//! Arguments are already "fractions of a turn", so reduction is exact digit
//! surgery rather than large-angle reduction:
//!
//! * φ: reduce by the period 1/2, reflect about 1/4, complement about 1/8,
//!   leaving sin on [0, π/4) where its Taylor series is evaluated in
//!   nonnegative pairwise-grouped form.
//! * φ⁻¹: for z > 1/2 apply `arcsin √z = π/2 − arcsin √(1−z)` so the
//!   arcsin series argument never exceeds √(1/2); the square root is an
//!   exact floor bitwise method.
//!
//! π/4 comes from Machin's formula `4 arctan(1/5) − arctan(1/239)` and
//! 1/(2π) from a guarded Newton reciprocal iteration; both are cached per
//! working precision behind a mutex (read-mostly, safe for concurrent use).

use crate::apfp::UnitReal;
use crate::{Error, Result};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// π as an integer part (always 3) plus a fixed-point fractional part.
///
/// [`UnitReal`] deliberately cannot hold values ≥ 1, so the one public
/// constant that exceeds it travels as this pair.
#[derive(Debug, Clone)]
pub struct PiValue {
    /// Integer part of π; always 3.
    pub integer: u8,
    /// Fractional part of π at the requested precision.
    pub frac: UnitReal,
}

impl PiValue {
    /// Decimal rendering `3.<digits>`, truncated.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let frac = self.frac.to_decimal_string(digits);
        format!("{}.{}", self.integer, &frac[2..])
    }
}

/// π to `p_bin` fractional bits: |value − π| < 2^-p_bin, cached per precision.
/// Requires `p_bin ≥ 8`.
pub fn pi_to_precision(p_bin: usize) -> PiValue {
    assert!(p_bin >= 8, "pi_to_precision requires at least 8 bits");
    // Compute π/4 well past the target, recover frac(π) = frac(4·(π/4)) by a
    // two-digit shift, and truncate. The 64 spare bits make the truncated
    // digits the true digits of π (the first thousand-plus bits of π contain
    // no 0/1 run long enough to flip the prefix).
    let q = quarter_pi(p_bin + 64);
    let frac = q.shift_mod1(2).expect("64-bit pad leaves room for the shift").resized(p_bin);
    PiValue { integer: 3, frac }
}

/// φ(α) = sin²(2πα), evaluated at the input's precision with absolute error
/// below `2^-(precision − 8)` (internally padded much tighter than that).
pub fn phi(alpha: &UnitReal) -> UnitReal {
    let p = alpha.precision();
    if alpha.is_zero() {
        return UnitReal::zero(p);
    }
    let w = working_precision(p);
    phi_padded(&alpha.resized(w)).resized(p)
}

/// φ⁻¹(z) = arcsin(√z)/2π ∈ [0, 1/4], same precision/error contract as [`phi`].
///
/// The all-ones word (the in-range stand-in for an exact 1.0) maps a hair
/// under 1/4; a true unity sample is handled upstream, where φ⁻¹(1) = 1/4 is
/// emitted exactly.
pub fn phi_inv(z: &UnitReal) -> UnitReal {
    let p = z.precision();
    if z.is_zero() {
        return UnitReal::zero(p);
    }
    let w = working_precision(p);
    phi_inv_padded(&z.resized(w)).resized(p)
}

/// One logistic step `z ↦ 4z(1−z)` at the input's precision. The vertex
/// `z = 1/2 ↦ 1` clamps to the all-ones word, every other value stays below 1.
pub fn logistic_step(z: &UnitReal) -> UnitReal {
    let prod = z.mul(&z.one_minus());
    match prod.mul_small(4) {
        Ok(v) => v,
        // 4·(exactly 1/4): the parabola's vertex — the one value that reaches 1.
        Err(_) => UnitReal::all_ones(z.precision()),
    }
}

/// Walk both sides of the conjugacy square for `steps` iterations and return
/// the largest pointwise discrepancy
/// `max_{k ≤ steps} |L^k(φ(α)) − φ(D^k(α))|`, measured at α's precision.
///
/// The identity is exact, so the result is pure evaluation error; the
/// contract is `< 2^-(p − steps − 16)` and in practice the value is zero.
/// Requires `steps < precision` (the dyadic side shifts one digit per step).
pub fn conjugacy_check(alpha: &UnitReal, steps: usize) -> Result<UnitReal> {
    let p = alpha.precision();
    if steps >= p {
        return Err(Error::PrecisionExhausted(format!(
            "{steps} conjugacy steps need more than the {p} digits available"
        )));
    }
    // The logistic side can amplify evaluation error by |L'| ≤ 4 per step;
    // 2 extra bits per step plus the standard pad absorb the worst case.
    let w = working_precision(p) + 2 * steps;
    let a = alpha.resized(w);
    let mut z = phi_padded(&a);
    let mut max_d = UnitReal::zero(p);
    for k in 0..=steps {
        if k > 0 {
            z = logistic_step(&z);
        }
        let alpha_k = a.shift_mod1(k).expect("k < p << w");
        let via_portal = phi_padded(&alpha_k.resized(w)).resized(p);
        let direct = z.resized(p);
        let d = abs_diff(&direct, &via_portal);
        if d.compare(&max_d) == Ordering::Greater {
            max_d = d;
        }
    }
    Ok(max_d)
}

/// |a − b| for same-precision operands.
pub fn abs_diff(a: &UnitReal, b: &UnitReal) -> UnitReal {
    match a.compare(b) {
        Ordering::Less => b.sub(a).expect("larger minus smaller cannot underflow"),
        _ => a.sub(b).expect("larger minus smaller cannot underflow"),
    }
}

/// Internal working precision for a caller-visible precision `p`.
fn working_precision(p: usize) -> usize {
    p.max(64) + 64
}

// ---------------------------------------------------------------------------
// φ at working precision
// ---------------------------------------------------------------------------

/// sin²(2πa) for a at (already padded) working precision w, error ≤ a few ulp.
fn phi_padded(a: &UnitReal) -> UnitReal {
    let w = a.precision();
    let half = UnitReal::pow2_inv(1, w);
    let quarter = UnitReal::pow2_inv(2, w);
    let eighth = UnitReal::pow2_inv(3, w);

    // Period: sin²(2π(a − 1/2)) = sin²(2πa).
    let mut x = a.clone();
    if x.compare(&half) != Ordering::Less {
        x = x.sub(&half).expect("x ≥ 1/2");
    }
    // Reflection: sin(π − θ) = sin θ maps [1/4, 1/2) onto (0, 1/4].
    if x.compare(&quarter) == Ordering::Greater {
        x = half.sub(&x).expect("x < 1/2");
    }
    if x.compare(&quarter) == Ordering::Equal {
        // sin²(π/2) = 1: the one input that attains the clamp.
        return UnitReal::all_ones(w);
    }
    // Complement: sin²(2π(1/4 − x)) = 1 − sin²(2πx) folds (1/8, 1/4) down.
    match x.compare(&eighth) {
        Ordering::Equal => half, // sin²(π/4) = 1/2 exactly
        Ordering::Greater => {
            let y = quarter.sub(&x).expect("x < 1/4");
            phi_core(&y).one_minus()
        }
        Ordering::Less => phi_core(&x),
    }
}

/// sin²(2πb) for b ∈ [0, 1/8): the angle 2πb lies in [0, π/4) where the sine
/// series converges fast and all pairwise-grouped terms are nonnegative.
fn phi_core(b: &UnitReal) -> UnitReal {
    let w = b.precision();
    // θ = (π/4)·(8b); 8b < 1 so the scaling is exact.
    let u = b.mul_small(8).expect("b < 1/8");
    let theta = quarter_pi(w).mul(&u);
    let s = sin_series(&theta);
    s.mul(&s)
}

/// sin θ for θ ∈ [0, π/4), by the Taylor series with consecutive terms
/// grouped in pairs so every partial quantity is nonnegative:
/// sin θ = Σ_k [t_{2k} − t_{2k+1}] with t_j = θ^(2j+1)/(2j+1)!.
fn sin_series(theta: &UnitReal) -> UnitReal {
    let w = theta.precision();
    let theta2 = theta.mul(theta);
    let mut total = UnitReal::zero(w);
    let mut term = theta.clone(); // t_j for even j
    let mut j: u64 = 0;
    while !term.is_zero() {
        // t_{j+1} = t_j · θ² / ((2j+2)(2j+3))
        let next = term.mul(&theta2).div_small((2 * j + 2) * (2 * j + 3));
        let group = term.sub(&next).expect("terms decrease monotonically");
        total = total.add(&group).expect("partial sums stay below sin(π/4) < 1");
        // t_{j+2}, the head of the next pair
        term = next.mul(&theta2).div_small((2 * j + 4) * (2 * j + 5));
        j += 2;
    }
    total
}

// ---------------------------------------------------------------------------
// φ⁻¹ at working precision
// ---------------------------------------------------------------------------

/// arcsin(√z)/2π for z at (already padded) working precision w.
fn phi_inv_padded(z: &UnitReal) -> UnitReal {
    let w = z.precision();
    let half = UnitReal::pow2_inv(1, w);
    let quarter = UnitReal::pow2_inv(2, w);
    // The one interior point whose preimage is a digit-exact value: without
    // this, the monotone-from-below series would land an ulp under 1/8 and
    // truncating encoders would pick the word below the ideal one.
    if z.compare(&half) == Ordering::Equal {
        return UnitReal::pow2_inv(3, w);
    }
    if z.compare(&half) == Ordering::Greater {
        // arcsin √z = π/2 − arcsin √(1−z): keeps the series argument ≤ √(1/2),
        // away from arcsin's unbounded derivative at 1.
        let y = phi_inv_core(&z.one_minus());
        quarter.sub(&y).expect("core output is below 1/4")
    } else {
        phi_inv_core(z)
    }
}

/// arcsin(√z)/2π for z ≤ 1/2.
fn phi_inv_core(z: &UnitReal) -> UnitReal {
    let w = z.precision();
    let root = z.sqrt();
    let a = arcsin_series(&root);
    a.mul(&inv_two_pi(w))
}

/// arcsin x for x ∈ [0, √(1/2)], by the everywhere-nonnegative series
/// arcsin x = Σ_n u_n/(2n+1), u_0 = x, u_{n+1} = u_n·x²·(2n+1)/(2n+2).
fn arcsin_series(x: &UnitReal) -> UnitReal {
    let w = x.precision();
    let x2 = x.mul(x);
    let mut total = UnitReal::zero(w);
    let mut u = x.clone();
    let mut n: u64 = 0;
    while !u.is_zero() {
        total = total
            .add(&u.div_small(2 * n + 1))
            .expect("partial sums stay below arcsin(√½) = π/4 < 1");
        u = u
            .mul(&x2)
            .mul_small(2 * n + 1)
            .expect("u·x²·(2n+1) < 1 for x ≤ √(1/2)")
            .div_small(2 * n + 2);
        n += 1;
    }
    total
}

// ---------------------------------------------------------------------------
// Cached constants
// ---------------------------------------------------------------------------

type ConstCache = Mutex<HashMap<usize, UnitReal>>;

fn cache_get_or(cache: &'static OnceLock<ConstCache>, w: usize, compute: fn(usize) -> UnitReal) -> UnitReal {
    let cache = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("constant cache poisoned").get(&w) {
        return v.clone();
    }
    // Computed outside the lock: a racing duplicate is identical and harmless.
    let v = compute(w);
    cache.lock().expect("constant cache poisoned").insert(w, v.clone());
    v
}

/// π/4 at w fractional bits (error a few ulp), cached.
fn quarter_pi(w: usize) -> UnitReal {
    static CACHE: OnceLock<ConstCache> = OnceLock::new();
    cache_get_or(&CACHE, w, compute_quarter_pi)
}

/// 1/(2π) at w fractional bits (error a few ulp), cached.
fn inv_two_pi(w: usize) -> UnitReal {
    static CACHE: OnceLock<ConstCache> = OnceLock::new();
    cache_get_or(&CACHE, w, compute_inv_two_pi)
}

/// Machin: π/4 = 4·arctan(1/5) − arctan(1/239).
fn compute_quarter_pi(w: usize) -> UnitReal {
    let a5 = arctan_inv(5, w);
    let a239 = arctan_inv(239, w);
    a5.mul_small(4)
        .expect("4·arctan(1/5) ≈ 0.79 < 1")
        .sub(&a239)
        .expect("4·arctan(1/5) > arctan(1/239)")
}

/// arctan(1/x) for a small integer x ≥ 2, by the alternating series grouped
/// in nonnegative pairs: Σ_k [1/((4k+1)x^(4k+1)) − 1/((4k+3)x^(4k+3))].
fn arctan_inv(x: u64, w: usize) -> UnitReal {
    let xx = x * x;
    let mut total = UnitReal::zero(w);
    let mut inv_pow = UnitReal::from_ratio(1, x, w).expect("x ≥ 2"); // 1/x^(4k+1)
    let mut k: u64 = 0;
    loop {
        let t1 = inv_pow.div_small(4 * k + 1);
        let t2 = inv_pow.div_small(xx).div_small(4 * k + 3);
        let group = t1.sub(&t2).expect("pair heads dominate pair tails");
        if group.is_zero() {
            break;
        }
        total = total.add(&group).expect("arctan(1/x) < 1");
        inv_pow = inv_pow.div_small(xx).div_small(xx);
        k += 1;
    }
    total
}

/// Newton reciprocal for 1/(2π): g ← g + g·(1 − 2πg), seeded from the f64
/// constant. 2πg is realized as (π/4)·g·8; the iteration is guarded so a
/// truncation-induced overshoot past 1/(2π) simply stops it (final error is
/// within a couple of ulp, absorbed by the callers' padding).
fn compute_inv_two_pi(w: usize) -> UnitReal {
    let q = quarter_pi(w);
    // The seed must start strictly below the root: from below, the iteration
    // stays below until terminal truncation jitter, so the overflow guard can
    // only fire once converged. A seed even an ulp above 1/(2π) would make
    // 2πg overflow immediately and freeze g at f64 accuracy.
    let seed = (1.0 / (2.0 * std::f64::consts::PI)) * (1.0 - 1e-9);
    let mut g = UnitReal::from_f64(seed, w).expect("seed is in (0, 1)");
    for _ in 0..64 {
        let t = match q.mul(&g).mul_small(8) {
            Ok(t) => t,
            Err(_) => break, // 2πg reached 1: g is at (or a hair past) the root
        };
        let e = t.one_minus(); // residual 1 − 2πg (t is never zero here)
        let delta = g.mul(&e);
        if delta.is_zero() {
            break;
        }
        g = match g.add(&delta) {
            Ok(next) => next,
            Err(_) => break,
        };
    }
    g
}
