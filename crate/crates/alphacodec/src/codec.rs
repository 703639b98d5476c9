//! The two encode/decode schemes over normalized sample lists.
//!
//! Both schemes pack a dataset into a single real parameter whose binary
//! expansion is the concatenation of per-sample τ-bit words:
//!
//! * **Dyadic**: the word for sample `x_j` is its τ-bit truncation, and
//!   decoding sample k is one bit shift, `α_k = 2^(kτ) α₀ mod 1` — the k·τ-fold
//!   dyadic map. Per-sample error is below `2^-τ`.
//! * **Logistic**: each sample is first pulled through `φ⁻¹(x) = arcsin(√x)/2π`
//!   into [0, 1/4]; the concatenated word α₀ lives in dyadic space, and the
//!   *stored* parameter is `z₀ = φ(α₀)`. Decoding is the exact logistic-orbit
//!   formula `z_k = sin²(2^(kτ) arcsin √z₀)`, realized either through the
//!   conjugacy portal (`φ(shift(α₀, kτ))`, the default) or directly from z₀;
//!   the 2π Lipschitz constant of φ makes the per-sample bound `π·2^(1-τ)`.
//!
//! An [`Alpha`] for the logistic scheme retains **both** z₀ and the conjugate
//! word α₀: reconstructing α₀ from z₀ by re-inversion would spend guard bits
//! for nothing when the exact word is known at encode time.

use crate::apfp::{decimal_digits_for, PrecisionBudget, UnitReal, DEFAULT_GUARD};
use crate::conjugacy::{phi, phi_inv};
use crate::ingest::Modality;
use crate::{Error, Result};
use std::sync::OnceLock;

/// Hard ceiling on a single α's precision (2²² bits ≈ 4 Mbit ≈ 520 KiB of
/// payload): beyond this the quadratic bignum kernels stop being interactive.
pub const MAX_P_BIN: usize = 1 << 22;

/// Which codec an [`Alpha`] belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Dyadic,
    Logistic,
}

impl Scheme {
    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Dyadic => "dyadic",
            Scheme::Logistic => "logistic",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "dyadic" => Ok(Scheme::Dyadic),
            "logistic" => Ok(Scheme::Logistic),
            other => Err(Error::Parse(format!("unknown scheme {other:?}"))),
        }
    }

    /// The per-sample reconstruction bound: `2^-τ` (dyadic) or `π·2^(1-τ)`
    /// (logistic; the dyadic bound times the 2π Lipschitz constant of φ).
    pub fn bound(self, tau: u32) -> f64 {
        match self {
            Scheme::Dyadic => 2.0_f64.powi(-(tau as i32)),
            Scheme::Logistic => std::f64::consts::PI * 2.0_f64.powi(1 - tau as i32),
        }
    }
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::parse(s)
    }
}

/// A decoded sample: the reconstruction of `x_k` together with the bound that
/// the scheme guarantees for it (when `k < n`).
#[derive(Debug, Clone)]
pub struct DecodedSample {
    /// Sample index.
    pub k: usize,
    /// Reconstructed value in [0, 1] (f64 view of `real`).
    pub value: f64,
    /// Full-precision reconstruction.
    pub real: UnitReal,
    /// Guaranteed accuracy for in-payload indices: `2^-τ` or `π·2^(1-τ)`.
    pub bound: f64,
    /// True when `k ≥ n`: the index lies past the payload, so the value is
    /// bounded in [0, 1] but carries no information.
    pub extrapolated: bool,
}

/// A single real parameter encoding a whole dataset, with the metadata needed
/// to decode it: scheme, τ, sample count, precision budget, and optional
/// normalization/shape information for reconstructing raw data.
#[derive(Debug, Clone)]
pub struct Alpha {
    scheme: Scheme,
    tau: u32,
    n: usize,
    budget: PrecisionBudget,
    /// Dyadic-space word at `p_bin` bits: the n·τ payload digits followed by
    /// zeroed guard digits. For the logistic scheme this is the concatenation
    /// of the φ⁻¹-space words (the conjugate word).
    alpha0: UnitReal,
    /// Logistic only: z₀ = φ(α₀) at `p_bin + 64` bits.
    z0: Option<UnitReal>,
    /// The exact decimal rendering of z₀ carried in the alpha file; kept
    /// verbatim so read → write round-trips byte-identically.
    z0_decimal: Option<String>,
    /// Lazily computed θ = φ⁻¹(z₀) for the direct decode path.
    theta: OnceLock<UnitReal>,
    /// (min, max) of the raw data when the dataset was rescaled into [0,1].
    pub norm: Option<(f64, f64)>,
    /// Shape information when the dataset had one (images, audio).
    pub modality: Option<Modality>,
}

impl Alpha {
    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn tau(&self) -> u32 {
        self.tau
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn budget(&self) -> PrecisionBudget {
        self.budget
    }

    /// The dyadic-space word (for the logistic scheme: the conjugate word).
    pub fn alpha0(&self) -> &UnitReal {
        &self.alpha0
    }

    /// z₀ for the logistic scheme.
    pub fn z0(&self) -> Option<&UnitReal> {
        self.z0.as_ref()
    }

    /// The scheme's single real parameter: α₀ for dyadic, z₀ for logistic.
    pub fn value(&self) -> &UnitReal {
        match self.scheme {
            Scheme::Dyadic => &self.alpha0,
            Scheme::Logistic => self.z0.as_ref().expect("logistic alpha always carries z0"),
        }
    }

    /// The n·τ payload digits (guard digits excluded).
    pub fn payload(&self) -> UnitReal {
        self.alpha0.resized(self.n * self.tau as usize)
    }
}

// ---------------------------------------------------------------------------
// Encoding
// ---------------------------------------------------------------------------

fn budget_for(n: usize, tau: u32, guard: u32) -> Result<PrecisionBudget> {
    if n == 0 {
        return Err(Error::Domain("cannot encode an empty sample list".into()));
    }
    if tau == 0 {
        return Err(Error::Domain("tau must be at least 1".into()));
    }
    let budget = PrecisionBudget::required_precision_with_guard(n, tau, guard);
    if budget.p_bin > MAX_P_BIN {
        return Err(Error::PrecisionExhausted(format!(
            "dataset needs {} bits of precision, above the {} bit capacity",
            budget.p_bin, MAX_P_BIN
        )));
    }
    Ok(budget)
}

fn check_sample(x: f64) -> Result<f64> {
    if !x.is_finite() || !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("sample {x} is outside [0, 1]")));
    }
    Ok(x)
}

/// The τ-bit dyadic word for one sample: its truncated binary expansion
/// (an exact 1.0 clamps to the all-ones word).
fn dyadic_word(x: f64, tau: u32) -> Result<UnitReal> {
    UnitReal::from_f64(check_sample(x)?, tau as usize)
}

/// The τ-bit logistic word for one sample: the truncation of φ⁻¹(x) ∈ [0, 1/4].
/// φ⁻¹(1) = 1/4 exactly, so unity needs no clamp in this scheme.
fn logistic_word(x: f64, tau: u32) -> Result<UnitReal> {
    check_sample(x)?;
    if x == 1.0 {
        return UnitReal::from_f64(0.25, tau as usize);
    }
    // 64 evaluation bits dwarf τ ≤ 64 payload bits; the nearest τ-bit
    // boundary is never closer than f64 resolution allows.
    let z = UnitReal::from_f64(x, 64)?;
    Ok(phi_inv(&z).resized(tau as usize))
}

fn concat_words(words: &[UnitReal], budget: &PrecisionBudget) -> UnitReal {
    let mut bits = String::with_capacity(budget.payload_bits());
    for w in words {
        bits.push_str(&w.to_binary_string());
    }
    UnitReal::from_binary_string(&bits)
        .expect("concatenation of digit words is a digit string")
        .resized(budget.p_bin)
}

/// Encode with the dyadic scheme: α₀'s digit string is the concatenation, in
/// sample order, of each sample's τ-bit truncation, so every sample sits
/// within `2^-τ` of its slot.
pub fn encode_dyadic(samples: &[f64], tau: u32) -> Result<Alpha> {
    encode_dyadic_with_guard(samples, tau, DEFAULT_GUARD)
}

/// [`encode_dyadic`] with an explicit guard-bit count.
pub fn encode_dyadic_with_guard(samples: &[f64], tau: u32, guard: u32) -> Result<Alpha> {
    let budget = budget_for(samples.len(), tau, guard)?;
    let words =
        samples.iter().map(|&x| dyadic_word(x, tau)).collect::<Result<Vec<_>>>()?;
    let alpha0 = concat_words(&words, &budget);
    Ok(Alpha {
        scheme: Scheme::Dyadic,
        tau,
        n: samples.len(),
        budget,
        alpha0,
        z0: None,
        z0_decimal: None,
        theta: OnceLock::new(),
        norm: None,
        modality: None,
    })
}

/// Encode with the logistic scheme: samples are pulled through φ⁻¹ before
/// packing, and the stored parameter is z₀ = φ(α₀), evaluated with 64 bits of
/// headroom past the budget so the printed decimal carries the whole payload.
pub fn encode_logistic(samples: &[f64], tau: u32) -> Result<Alpha> {
    encode_logistic_with_guard(samples, tau, DEFAULT_GUARD)
}

/// [`encode_logistic`] with an explicit guard-bit count.
pub fn encode_logistic_with_guard(samples: &[f64], tau: u32, guard: u32) -> Result<Alpha> {
    let budget = budget_for(samples.len(), tau, guard)?;
    let words =
        samples.iter().map(|&x| logistic_word(x, tau)).collect::<Result<Vec<_>>>()?;
    let alpha0 = concat_words(&words, &budget);
    let z0 = phi(&alpha0.resized(budget.p_bin + 64));
    let z0_decimal = z0.to_decimal_string(decimal_digits_for(budget.p_bin + 64));
    Ok(Alpha {
        scheme: Scheme::Logistic,
        tau,
        n: samples.len(),
        budget,
        alpha0,
        z0: Some(z0),
        z0_decimal: Some(z0_decimal),
        theta: OnceLock::new(),
        norm: None,
        modality: None,
    })
}

/// Encode a [`Dataset`](crate::ingest::Dataset), carrying its normalization
/// and shape metadata into the [`Alpha`].
pub fn encode_dataset(
    ds: &crate::ingest::Dataset,
    scheme: Scheme,
    tau: u32,
    guard: u32,
) -> Result<Alpha> {
    let mut alpha = match scheme {
        Scheme::Dyadic => encode_dyadic_with_guard(&ds.samples, tau, guard)?,
        Scheme::Logistic => encode_logistic_with_guard(&ds.samples, tau, guard)?,
    };
    alpha.norm = ds.norm;
    alpha.modality = Some(ds.modality);
    Ok(alpha)
}

/// Build a logistic [`Alpha`] from a bare, externally supplied z₀ by
/// re-inverting it back to the conjugate word. Every stage of the pipeline
/// truncates, so the recovered word sits a hair *below* the one z₀ came
/// from; a correction of 2^-(p+16) — far above the re-inversion error at
/// p+64 evaluation bits, far below the last stored digit — lands the
/// truncation on the original word whenever z₀ carries the encoder's
/// standard headroom. For an arbitrary z₀ the correction is harmless: it
/// moves the word at most one ulp, and only toward the true preimage.
pub fn from_z0(z0: &UnitReal, tau: u32, n: usize) -> Result<Alpha> {
    let budget = budget_for(n, tau, DEFAULT_GUARD)?;
    let z_padded = z0.resized(z0.precision().max(budget.p_bin + 64));
    let recovered = phi_inv(&z_padded);
    let nudge = UnitReal::pow2_inv(budget.p_bin + 16, recovered.precision());
    // φ⁻¹ never exceeds 1/4, so the nudged sum cannot overflow.
    let alpha0 = recovered.add(&nudge)?.resized(budget.p_bin);
    Ok(Alpha {
        scheme: Scheme::Logistic,
        tau,
        n,
        budget,
        alpha0,
        z0: Some(z0.clone()),
        z0_decimal: None,
        theta: OnceLock::new(),
        norm: None,
        modality: None,
    })
}

// ---------------------------------------------------------------------------
// Decoding
// ---------------------------------------------------------------------------

impl Alpha {
    /// Check an index against the payload and the extrapolation allowance
    /// (at most `guard/τ` steps past the payload — beyond that the digits
    /// being decoded were never reserved) and return the shift distance.
    fn shift_for(&self, k: usize) -> Result<usize> {
        let tau = self.tau as usize;
        if k >= self.n {
            let allowed = self.budget.guard as usize / tau;
            if k - self.n >= allowed {
                return Err(Error::PrecisionExhausted(format!(
                    "index {k} is {} steps past the payload; the {} guard bits \
                     allow only {} extrapolation steps (max valid index {})",
                    k - self.n + 1,
                    self.budget.guard,
                    allowed,
                    self.n + allowed.saturating_sub(1),
                )));
            }
        }
        let shift = k * tau;
        debug_assert!(shift + tau <= self.alpha0.precision());
        Ok(shift)
    }

    /// Decode sample k with the dyadic scheme: one shift, `2^(kτ) α₀ mod 1`.
    /// The result's leading τ digits are the sample's word; the digits behind
    /// them contribute less than one word-ulp, so `|value − x_k| < 2^-τ`.
    pub fn decode_dyadic(&self, k: usize) -> Result<DecodedSample> {
        debug_assert_eq!(self.scheme, Scheme::Dyadic);
        let shift = self.shift_for(k)?;
        let real = self.alpha0.shift_mod1(shift)?;
        Ok(DecodedSample {
            k,
            value: real.to_f64(),
            real,
            bound: Scheme::Dyadic.bound(self.tau),
            extrapolated: k >= self.n,
        })
    }

    /// Decode sample k with the logistic scheme through the conjugacy portal:
    /// `z_k = φ(2^(kτ) α₀ mod 1)`, bound `π·2^(1-τ)`. This is the default
    /// strategy; it and [`Self::decode_logistic_direct`] agree within
    /// `2^-(τ+4)` whenever z₀ was stored with the encoder's headroom.
    pub fn decode_logistic(&self, k: usize) -> Result<DecodedSample> {
        debug_assert_eq!(self.scheme, Scheme::Logistic);
        let shift = self.shift_for(k)?;
        let alpha_k = self.alpha0.shift_mod1(shift)?;
        let real = phi(&alpha_k);
        Ok(DecodedSample {
            k,
            value: real.to_f64(),
            real,
            bound: Scheme::Logistic.bound(self.tau),
            extrapolated: k >= self.n,
        })
    }

    /// Decode sample k directly from z₀: θ = φ⁻¹(z₀) carried as a fraction of
    /// a turn, then `z_k = sin²(2πθ·2^(kτ))` where the 2^(kτ) multiplication
    /// is a mod-1 digit shift of θ. Fidelity at large k is limited by the
    /// precision z₀ was stored with.
    pub fn decode_logistic_direct(&self, k: usize) -> Result<DecodedSample> {
        debug_assert_eq!(self.scheme, Scheme::Logistic);
        let shift = self.shift_for(k)?;
        let theta = self.theta.get_or_init(|| {
            let z0 = self.z0.as_ref().expect("logistic alpha always carries z0");
            phi_inv(z0)
        });
        let real = phi(&theta.shift_mod1(shift)?);
        Ok(DecodedSample {
            k,
            value: real.to_f64(),
            real,
            bound: Scheme::Logistic.bound(self.tau),
            extrapolated: k >= self.n,
        })
    }

    /// Decode sample k with this alpha's own scheme.
    pub fn decode(&self, k: usize) -> Result<DecodedSample> {
        match self.scheme {
            Scheme::Dyadic => self.decode_dyadic(k),
            Scheme::Logistic => self.decode_logistic(k),
        }
    }

    /// Decode samples 0..count; indices past the payload are permitted up to
    /// the extrapolation allowance and come back marked.
    pub fn decode_all(&self, count: usize) -> Result<Vec<DecodedSample>> {
        if count == 0 {
            return Err(Error::Domain("decode count must be at least 1".into()));
        }
        (0..count).map(|k| self.decode(k)).collect()
    }
}

// ---------------------------------------------------------------------------
// Alpha file format
// ---------------------------------------------------------------------------

/// Text format, bit-exact and newline-terminated:
///
/// ```text
/// scheme=<dyadic|logistic>
/// tau=<int>
/// n=<int>
/// alpha_bits=<n·τ binary digits>
/// z0_decimal=0.<digits>        (logistic only)
/// norm_min=<float>             (only when normalization metadata exists)
/// norm_max=<float>
/// modality=<image:WxHxC|audio:RATE|scatter>  (only when not a plain series)
/// ```
impl Alpha {
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("scheme={}\n", self.scheme.as_str()));
        out.push_str(&format!("tau={}\n", self.tau));
        out.push_str(&format!("n={}\n", self.n));
        out.push_str(&format!("alpha_bits={}\n", self.payload().to_binary_string()));
        if self.scheme == Scheme::Logistic {
            let z0_decimal = match &self.z0_decimal {
                Some(s) => s.clone(),
                None => {
                    let z0 = self.z0.as_ref().expect("logistic alpha always carries z0");
                    z0.to_decimal_string(decimal_digits_for(z0.precision()))
                }
            };
            out.push_str(&format!("z0_decimal={z0_decimal}\n"));
        }
        if let Some((lo, hi)) = self.norm {
            out.push_str(&format!("norm_min={lo}\n"));
            out.push_str(&format!("norm_max={hi}\n"));
        }
        match self.modality {
            None | Some(Modality::Series) => {}
            Some(m) => out.push_str(&format!("modality={m}\n")),
        }
        out
    }

    pub fn from_file_string(text: &str) -> Result<Alpha> {
        let mut scheme = None;
        let mut tau = None;
        let mut n = None;
        let mut alpha_bits = None;
        let mut z0_decimal: Option<String> = None;
        let mut norm_min = None;
        let mut norm_max = None;
        let mut modality = None;
        for (lineno, line) in text.lines().enumerate() {
            if line.is_empty() {
                continue;
            }
            let at = lineno + 1;
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Parse(format!("alpha file line {at}: expected key=value, got {line:?}"))
            })?;
            let dup = |k: &str| Error::Parse(format!("alpha file line {at}: duplicate {k}"));
            match key {
                "scheme" => {
                    if scheme.replace(Scheme::parse(value)?).is_some() {
                        return Err(dup(key));
                    }
                }
                "tau" => {
                    let v: u32 = value.parse().map_err(|_| {
                        Error::Parse(format!("alpha file line {at}: bad tau {value:?}"))
                    })?;
                    if tau.replace(v).is_some() {
                        return Err(dup(key));
                    }
                }
                "n" => {
                    let v: usize = value.parse().map_err(|_| {
                        Error::Parse(format!("alpha file line {at}: bad n {value:?}"))
                    })?;
                    if n.replace(v).is_some() {
                        return Err(dup(key));
                    }
                }
                "alpha_bits" => {
                    if alpha_bits.replace(value.to_string()).is_some() {
                        return Err(dup(key));
                    }
                }
                "z0_decimal" => {
                    if z0_decimal.replace(value.to_string()).is_some() {
                        return Err(dup(key));
                    }
                }
                "norm_min" => {
                    let v: f64 = value.parse().map_err(|_| {
                        Error::Parse(format!("alpha file line {at}: bad norm_min {value:?}"))
                    })?;
                    if norm_min.replace(v).is_some() {
                        return Err(dup(key));
                    }
                }
                "norm_max" => {
                    let v: f64 = value.parse().map_err(|_| {
                        Error::Parse(format!("alpha file line {at}: bad norm_max {value:?}"))
                    })?;
                    if norm_max.replace(v).is_some() {
                        return Err(dup(key));
                    }
                }
                "modality" => {
                    if modality.replace(Modality::parse(value)?).is_some() {
                        return Err(dup(key));
                    }
                }
                other => {
                    return Err(Error::Parse(format!(
                        "alpha file line {at}: unknown key {other:?}"
                    )))
                }
            }
        }
        let scheme = scheme.ok_or_else(|| Error::Parse("alpha file: missing scheme".into()))?;
        let tau = tau.ok_or_else(|| Error::Parse("alpha file: missing tau".into()))?;
        let n = n.ok_or_else(|| Error::Parse("alpha file: missing n".into()))?;
        let bits = alpha_bits.ok_or_else(|| Error::Parse("alpha file: missing alpha_bits".into()))?;
        if tau == 0 || n == 0 {
            return Err(Error::Parse("alpha file: tau and n must be at least 1".into()));
        }
        if bits.len() != n * tau as usize {
            return Err(Error::Parse(format!(
                "alpha file: alpha_bits has {} digits but n·tau = {}",
                bits.len(),
                n * tau as usize
            )));
        }
        let budget = budget_for(n, tau, DEFAULT_GUARD)?;
        let alpha0 = UnitReal::from_binary_string(&bits)?.resized(budget.p_bin);
        let norm = match (norm_min, norm_max) {
            (Some(lo), Some(hi)) => Some((lo, hi)),
            (None, None) => None,
            _ => {
                return Err(Error::Parse(
                    "alpha file: norm_min and norm_max must appear together".into(),
                ))
            }
        };
        let z0 = match (scheme, &z0_decimal) {
            (Scheme::Logistic, Some(s)) => {
                // Parse at the full precision the digit count can carry.
                let bits = (s.trim_start_matches("0.").len() as f64 * 10f64.log2()).floor() as usize;
                Some(UnitReal::from_decimal_fraction(s, bits.max(budget.p_bin))?)
            }
            (Scheme::Logistic, None) => {
                return Err(Error::Parse("alpha file: logistic scheme requires z0_decimal".into()))
            }
            (Scheme::Dyadic, Some(_)) => {
                return Err(Error::Parse("alpha file: z0_decimal is only valid for logistic".into()))
            }
            (Scheme::Dyadic, None) => None,
        };
        Ok(Alpha { scheme, tau, n, budget, alpha0, z0, z0_decimal, theta: OnceLock::new(), norm, modality })
    }
}
