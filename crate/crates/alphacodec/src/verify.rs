//! Error-bound verification and the generalization probe.
//!
//! [`error_report`] measures a round-trip against the scheme's theoretical
//! bound (`2^-τ` dyadic, `π·2^(1-τ)` logistic) and normalizes every per-sample
//! error by it: the central quantitative claim is that the maximum normalized
//! error is below 1 on any correctly encoded dataset.
//!
//! [`generalization_probe`] decodes past the payload. Extrapolated indices
//! read digits that were never reserved for data, so the values are bounded in
//! [0, 1] but carry no information — the probe reports their spread and makes
//! no accuracy claim. The junk digits are manufactured the same way a printed
//! α acquires them in the wild: the payload is rendered to exactly the decimal
//! digits its width justifies and re-expanded to more binary digits than the
//! decimal resolves, so the surplus digits are the pseudorandom tail of the
//! 5^k denominator, not zeros.
//!
//! [`conjugacy_report`] sweeps random seeds through
//! [`conjugacy_check`](crate::conjugacy::conjugacy_check) and tabulates the
//! discrepancies against the contract.

use crate::apfp::{decimal_digits_for, UnitReal};
use crate::codec::{Alpha, Scheme};
use crate::conjugacy::{conjugacy_check, phi};
use crate::ingest::Dataset;
use crate::{Error, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Per-sample round-trip errors against the scheme's theoretical bound.
#[derive(Debug, Clone)]
pub struct ErrorReport {
    pub scheme: Scheme,
    pub tau: u32,
    pub n: usize,
    /// The bound every error is normalized by.
    pub bound: f64,
    pub original: Vec<f64>,
    pub decoded: Vec<f64>,
    pub abs_errors: Vec<f64>,
    /// `abs_errors[k] / bound`; the report is valid iff every entry < 1.
    pub normalized: Vec<f64>,
    pub max_normalized: f64,
}

impl ErrorReport {
    /// The headline claim for this report: no sample strayed past the bound.
    pub fn is_valid(&self) -> bool {
        self.max_normalized < 1.0
    }

    /// CSV with the stable column order
    /// `k,original,decoded,abs_error,normalized_error,extrapolated`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,original,decoded,abs_error,normalized_error,extrapolated\n");
        for k in 0..self.n {
            out.push_str(&format!(
                "{k},{:.12},{:.12},{:.12e},{:.6},0\n",
                self.original[k], self.decoded[k], self.abs_errors[k], self.normalized[k]
            ));
        }
        out
    }
}

/// Decode `alpha` and measure it against the dataset it was encoded from.
pub fn error_report(original: &Dataset, alpha: &Alpha) -> Result<ErrorReport> {
    if original.samples.len() != alpha.n() {
        return Err(Error::Shape(format!(
            "dataset has {} samples but alpha encodes {}",
            original.samples.len(),
            alpha.n()
        )));
    }
    let bound = alpha.scheme().bound(alpha.tau());
    let decoded: Vec<f64> =
        alpha.decode_all(alpha.n())?.into_iter().map(|s| s.value).collect();
    let abs_errors: Vec<f64> = decoded
        .iter()
        .zip(&original.samples)
        .map(|(d, o)| (d - o).abs())
        .collect();
    let normalized: Vec<f64> = abs_errors.iter().map(|e| e / bound).collect();
    let max_normalized = normalized.iter().cloned().fold(0.0, f64::max);
    Ok(ErrorReport {
        scheme: alpha.scheme(),
        tau: alpha.tau(),
        n: alpha.n(),
        bound,
        original: original.samples.clone(),
        decoded,
        abs_errors,
        normalized,
        max_normalized,
    })
}

/// One row of a [`GeneralizationReport`].
#[derive(Debug, Clone)]
pub struct ProbeRow {
    pub k: usize,
    /// Ground truth, when the caller supplied it (never for extrapolations).
    pub original: Option<f64>,
    pub decoded: f64,
    pub abs_error: Option<f64>,
    pub normalized: Option<f64>,
    pub extrapolated: bool,
}

/// Spread statistics over the extrapolated values.
#[derive(Debug, Clone, Copy)]
pub struct ExtrapolationStats {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
}

/// What decoding past the payload produced. Extrapolated values are bounded
/// in [0, 1]; the report deliberately claims nothing about their accuracy.
#[derive(Debug, Clone)]
pub struct GeneralizationReport {
    pub n_train: usize,
    /// Extrapolation steps actually taken.
    pub n_extra: usize,
    /// What the caller asked for; larger than `n_extra` when the guard-bit
    /// allowance forced a downgrade.
    pub n_extra_requested: usize,
    pub downgraded: bool,
    /// Max normalized in-payload error: against the supplied originals when
    /// available, otherwise against the payload's own τ-bit words.
    pub in_train_max_normalized: f64,
    pub extrapolated: Vec<f64>,
    pub stats: Option<ExtrapolationStats>,
    pub rows: Vec<ProbeRow>,
}

impl GeneralizationReport {
    /// CSV with the same column order as [`ErrorReport::to_csv`]; fields with
    /// no ground truth are left empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,original,decoded,abs_error,normalized_error,extrapolated\n");
        for row in &self.rows {
            let original = row.original.map(|v| format!("{v:.12}")).unwrap_or_default();
            let abs = row.abs_error.map(|v| format!("{v:.12e}")).unwrap_or_default();
            let norm = row.normalized.map(|v| format!("{v:.6}")).unwrap_or_default();
            out.push_str(&format!(
                "{},{original},{:.12},{abs},{norm},{}\n",
                row.k,
                row.decoded,
                row.extrapolated as u8
            ));
        }
        out
    }

    pub fn all_in_range(&self) -> bool {
        self.extrapolated.iter().all(|&v| (0.0..=1.0).contains(&v))
    }
}

/// Decode the payload and `n_extra` indices past it.
///
/// `originals` (when given) provides ground truth for the in-payload rows;
/// without it, in-payload errors are measured against the payload's own
/// words. Extrapolations come from the decimal-roundtrip extension described
/// in the module docs and are capped at the guard-bit allowance
/// (`guard/τ` steps), downgrading with a flag rather than failing.
pub fn generalization_probe(
    alpha: &Alpha,
    n_extra: usize,
    originals: Option<&[f64]>,
) -> Result<GeneralizationReport> {
    if let Some(orig) = originals {
        if orig.len() != alpha.n() {
            return Err(Error::Shape(format!(
                "originals has {} values but alpha encodes {}",
                orig.len(),
                alpha.n()
            )));
        }
    }
    let tau = alpha.tau() as usize;
    let n = alpha.n();
    let bound = alpha.scheme().bound(alpha.tau());
    let allowance = alpha.budget().guard as usize / tau;
    let eff_extra = n_extra.min(allowance);

    // In-payload rows, from the alpha itself.
    let mut rows = Vec::with_capacity(n + eff_extra);
    let mut in_train_max: f64 = 0.0;
    for sample in alpha.decode_all(n)? {
        let truth = match originals {
            Some(orig) => Some(orig[sample.k]),
            None => None,
        };
        let reference = match truth {
            Some(t) => t,
            // The payload's own word, reconstructed the way the scheme reads it.
            None => word_value(alpha, sample.k),
        };
        let abs = (sample.value - reference).abs();
        in_train_max = in_train_max.max(abs / bound);
        rows.push(ProbeRow {
            k: sample.k,
            original: truth,
            decoded: sample.value,
            abs_error: truth.map(|t| (sample.value - t).abs()),
            normalized: truth.map(|t| (sample.value - t).abs() / bound),
            extrapolated: false,
        });
    }

    // Extrapolated rows, from the decimal-roundtrip extension.
    let mut extrapolated = Vec::with_capacity(eff_extra);
    if eff_extra > 0 {
        let extended = extended_word(alpha, eff_extra);
        for k in n..n + eff_extra {
            let alpha_k = extended.shift_mod1(k * tau).expect("extension covers all k");
            let value = match alpha.scheme() {
                Scheme::Dyadic => alpha_k.to_f64(),
                Scheme::Logistic => phi(&alpha_k).to_f64(),
            };
            extrapolated.push(value);
            rows.push(ProbeRow {
                k,
                original: None,
                decoded: value,
                abs_error: None,
                normalized: None,
                extrapolated: true,
            });
        }
    }

    let stats = if extrapolated.is_empty() {
        None
    } else {
        Some(ExtrapolationStats {
            min: extrapolated.iter().cloned().fold(f64::INFINITY, f64::min),
            max: extrapolated.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
            mean: extrapolated.iter().sum::<f64>() / extrapolated.len() as f64,
        })
    };
    Ok(GeneralizationReport {
        n_train: n,
        n_extra: eff_extra,
        n_extra_requested: n_extra,
        downgraded: eff_extra < n_extra,
        in_train_max_normalized: in_train_max,
        extrapolated,
        stats,
        rows,
    })
}

/// The value the payload's k-th word decodes to on its own (tail digits
/// zeroed): the in-payload reference when no ground truth is supplied.
fn word_value(alpha: &Alpha, k: usize) -> f64 {
    let tau = alpha.tau() as usize;
    let word = alpha
        .alpha0()
        .shift_mod1(k * tau)
        .expect("payload indices always fit")
        .resized(tau);
    match alpha.scheme() {
        Scheme::Dyadic => word.to_f64(),
        Scheme::Logistic => phi(&word.resized(tau.max(64))).to_f64(),
    }
}

/// Extend the payload with junk digits by the decimal round trip: print the
/// payload to the digit count its width justifies, then re-expand to a wider
/// binary word. Digits past the payload are the 5^k tail of the truncated
/// decimal — deterministic, in-range, informationless.
fn extended_word(alpha: &Alpha, n_extra: usize) -> UnitReal {
    let tau = alpha.tau() as usize;
    let payload = alpha.payload();
    let digits = decimal_digits_for(payload.precision());
    let decimal = payload.to_decimal_string(digits);
    let target = (alpha.n() + n_extra + 1) * tau + 64;
    UnitReal::from_decimal_fraction(&decimal, target)
        .expect("re-parsing our own decimal rendering cannot fail")
}

// ---------------------------------------------------------------------------
// Conjugacy sweep
// ---------------------------------------------------------------------------

/// One seed's worth of [`conjugacy_check`] results.
#[derive(Debug, Clone)]
pub struct ConjugacyRow {
    pub seed_index: usize,
    pub discrepancy: UnitReal,
    /// Leading zero digits of the discrepancy: certifies it is below
    /// 2^-(this many) (equals the working precision when exactly zero).
    pub below_pow2: usize,
}

/// A table of conjugacy discrepancies over random seeds.
#[derive(Debug, Clone)]
pub struct ConjugacyReport {
    pub steps: usize,
    pub precision: usize,
    /// The module contract: discrepancies must sit below 2^-(p − steps − 16).
    pub contract_zeros: usize,
    pub rows: Vec<ConjugacyRow>,
}

impl ConjugacyReport {
    pub fn all_within_contract(&self) -> bool {
        self.rows.iter().all(|r| r.below_pow2 >= self.contract_zeros)
    }

    /// Line-oriented table for terminal output.
    pub fn to_table_string(&self) -> String {
        let mut out = format!(
            "conjugacy: {} seeds, {} steps, {} bits (contract: < 2^-{})\n",
            self.rows.len(),
            self.steps,
            self.precision,
            self.contract_zeros
        );
        for row in &self.rows {
            let value = if row.discrepancy.is_zero() {
                "0 (exact at working precision)".to_string()
            } else {
                format!("< 2^-{}", row.below_pow2)
            };
            out.push_str(&format!("seed {:>3}: discrepancy {}\n", row.seed_index, value));
        }
        out
    }
}

/// A uniformly random digit word at the given precision.
pub fn random_unit_real<R: Rng>(rng: &mut R, bits: usize) -> UnitReal {
    let s: String = (0..bits).map(|_| if rng.gen::<bool>() { '1' } else { '0' }).collect();
    UnitReal::from_binary_string(&s).expect("generated digit string")
}

/// Run [`conjugacy_check`] over `seeds` random words at the given precision.
/// Deterministic: the seed stream is fixed.
pub fn conjugacy_report(seeds: usize, steps: usize, precision: usize) -> Result<ConjugacyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x616c_7068);
    let contract_zeros = precision.saturating_sub(steps + 16);
    let mut rows = Vec::with_capacity(seeds);
    for seed_index in 0..seeds {
        let alpha = random_unit_real(&mut rng, precision);
        let discrepancy = conjugacy_check(&alpha, steps)?;
        let below_pow2 = discrepancy.leading_zeros();
        rows.push(ConjugacyRow { seed_index, discrepancy, below_pow2 });
    }
    Ok(ConjugacyReport { steps, precision, contract_zeros, rows })
}
