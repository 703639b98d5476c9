//! Encode an entire dataset into a single real number in [0,1) and decode it
//! back, sample by sample, with a provable per-sample error bound.
//!
//! Two interchangeable codecs are provided:
//!
//! * **dyadic** — each sample is truncated to `tau` bits and the truncations are
//!   concatenated into the binary expansion of one number `alpha`. Sample `k` is
//!   recovered as `2^(k*tau) * alpha mod 1` (a pure bit shift), with error
//!   below `2^-tau`.
//! * **logistic** — the same construction applied in the conjugate space of the
//!   logistic map `z -> 4z(1-z)`. Samples are pulled back through
//!   `phi_inv(z) = arcsin(sqrt(z)) / 2pi`, concatenated, and pushed forward
//!   through `phi(a) = sin^2(2 pi a)`; sample `k` is
//!   `sin^2(2^(k*tau) * arcsin(sqrt(z0)))`, with error below `pi * 2^(1-tau)`.
//!
//! Both run on [`apfp::UnitReal`], a self-contained arbitrary-precision
//! fixed-point representation of the unit interval: no floating point is
//! involved anywhere a payload bit could be at stake.
//!
//! The crate is organized bottom-up:
//!
//! * [`apfp`] — fixed-point arithmetic on [0,1): conversions, shifts, ring ops.
//! * [`conjugacy`] — arbitrary-precision `phi`, `phi_inv`, the logistic step,
//!   and a checker for the conjugacy identity `L(phi(a)) = phi(2a mod 1)`.
//! * [`codec`] — the two encode/decode schemes over normalized sample lists.
//! * [`ingest`] — min-max normalization plus CSV / PGM / PPM / WAV / raw-PCM I/O.
//! * [`verify`] — error-bound reports, the generalization probe, and a
//!   conjugacy report table.
//! * [`cli`] — the `alphacodec` command-line front end.
//!
//! The `examples/` directory contains one runnable walkthrough per capability;
//! `cargo run --example encode_dataset` is a good starting point.

pub mod apfp;
pub mod cli;
pub mod codec;
pub mod conjugacy;
pub mod ingest;
pub mod verify;

pub use apfp::{PrecisionBudget, UnitReal};
pub use codec::{Alpha, DecodedSample, Scheme};
pub use ingest::{Dataset, Modality};
pub use verify::{ErrorReport, GeneralizationReport};

/// Crate-wide error type.
///
/// The CLI maps these onto process exit codes: parse/domain/shape errors exit
/// with 2, precision exhaustion with 3, and a verified bound violation with 1.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Input value outside the documented domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Malformed text input (binary/decimal strings, file formats).
    #[error("parse error: {0}")]
    Parse(String),
    /// A non-wrapping add/sub/mul_small left [0,1).
    #[error("overflow: result left [0,1)")]
    Overflow,
    /// An operation asked for more bits than the value carries.
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    /// Inconsistent dimensions (image folding, report lengths).
    #[error("shape mismatch: {0}")]
    Shape(String),
    /// Filesystem or stream failure.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
