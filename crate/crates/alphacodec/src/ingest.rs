//! Turning real data into normalized sample lists and back.
//!
//! Every modality funnels into the same [`Dataset`] shape: samples in [0, 1],
//! the (min, max) needed to undo the rescaling, and enough shape metadata to
//! fold a decoded flat list back into an image, an audio clip, or a series.
//!
//! Normalization policy: data already inside [0, 1] passes through untouched
//! (no metadata to carry, and golden vectors stay bit-exact); anything else is
//! min-max rescaled. A constant dataset — where min-max is undefined — maps to
//! all-0.5 with its constant recorded, and denormalization returns the
//! constant. NaN and ±∞ are rejected outright rather than clamped.
//!
//! File formats are deliberately minimal and canonical so that golden tests
//! can compare bytes: CSV (one value per line, optional header), binary PGM
//! (P5) / PPM (P6) with maxval 255, and 16-bit mono PCM — raw little-endian
//! or wrapped in the canonical 44-byte WAV header.

use crate::{Error, Result};
use std::fmt;
use std::fs;
use std::path::Path;

/// Default audio sample rate (Hz) when none is declared.
pub const DEFAULT_SAMPLE_RATE: u32 = 11025;

/// Shape information required to reconstruct a decoded sample list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Modality {
    /// An ordered series (the default; also used for generic sample lists).
    Series,
    /// Unordered points; treated like a series for I/O purposes.
    Scatter,
    /// Row-major, channel-last pixels, 8 bits per channel.
    Image { width: usize, height: usize, channels: usize },
    /// 16-bit mono PCM at the given sample rate.
    Audio { sample_rate: u32 },
}

impl fmt::Display for Modality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modality::Series => write!(f, "series"),
            Modality::Scatter => write!(f, "scatter"),
            Modality::Image { width, height, channels } => {
                write!(f, "image:{width}x{height}x{channels}")
            }
            Modality::Audio { sample_rate } => write!(f, "audio:{sample_rate}"),
        }
    }
}

impl Modality {
    pub fn parse(s: &str) -> Result<Self> {
        if s == "series" {
            return Ok(Modality::Series);
        }
        if s == "scatter" {
            return Ok(Modality::Scatter);
        }
        if let Some(dims) = s.strip_prefix("image:") {
            let parts: Vec<&str> = dims.split('x').collect();
            if parts.len() == 3 {
                let w = parts[0].parse().ok();
                let h = parts[1].parse().ok();
                let c = parts[2].parse().ok();
                if let (Some(w), Some(h), Some(c)) = (w, h, c) {
                    return Ok(Modality::Image { width: w, height: h, channels: c });
                }
            }
            return Err(Error::Parse(format!("bad image modality {s:?}, want image:WxHxC")));
        }
        if let Some(rate) = s.strip_prefix("audio:") {
            return rate
                .parse()
                .map(|sample_rate| Modality::Audio { sample_rate })
                .map_err(|_| Error::Parse(format!("bad audio modality {s:?}, want audio:RATE")));
        }
        Err(Error::Parse(format!("unknown modality {s:?}")))
    }
}

/// A normalized dataset: samples in [0, 1] plus everything needed to undo the
/// normalization and restore the original shape.
#[derive(Debug, Clone)]
pub struct Dataset {
    /// Samples, all in [0, 1].
    pub samples: Vec<f64>,
    /// (min, max) of the raw data when rescaling happened; `None` when the
    /// raw data was already in [0, 1] and passed through unchanged.
    pub norm: Option<(f64, f64)>,
    /// Shape metadata.
    pub modality: Modality,
}

impl Dataset {
    /// Min-max normalize a raw value list. Data already in [0, 1] passes
    /// through; a constant list maps to all-0.5 (see module docs).
    pub fn normalize(raw: &[f64]) -> Result<Dataset> {
        if raw.is_empty() {
            return Err(Error::Domain("cannot normalize an empty value list".into()));
        }
        for (i, &x) in raw.iter().enumerate() {
            if !x.is_finite() {
                return Err(Error::Domain(format!("value {x} at index {i} is not finite")));
            }
        }
        let min = raw.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = raw.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if min == max {
            // Degenerate: min-max is undefined, so park everything mid-range
            // and let denormalization restore the recorded constant.
            return Ok(Dataset {
                samples: vec![0.5; raw.len()],
                norm: Some((min, max)),
                modality: Modality::Series,
            });
        }
        if (0.0..=1.0).contains(&min) && (0.0..=1.0).contains(&max) {
            return Ok(Dataset { samples: raw.to_vec(), norm: None, modality: Modality::Series });
        }
        let span = max - min;
        let samples = raw.iter().map(|&x| (x - min) / span).collect();
        Ok(Dataset { samples, norm: Some((min, max)), modality: Modality::Series })
    }

    pub fn with_modality(mut self, modality: Modality) -> Dataset {
        self.modality = modality;
        self
    }

    /// Whether this dataset was constant (and therefore parked at 0.5).
    pub fn is_constant(&self) -> bool {
        matches!(self.norm, Some((lo, hi)) if lo == hi)
    }

    /// Map values in [0, 1] back to the raw scale.
    pub fn denormalize(&self, values: &[f64]) -> Vec<f64> {
        denormalize_with(self.norm, values)
    }
}

/// [`Dataset::denormalize`] for callers that carry only the (min, max) pair —
/// `min + v·(max − min)`; the identity when no rescaling happened.
pub fn denormalize_with(norm: Option<(f64, f64)>, values: &[f64]) -> Vec<f64> {
    match norm {
        None => values.to_vec(),
        Some((min, max)) => values.iter().map(|&v| min + v * (max - min)).collect(),
    }
}

// ---------------------------------------------------------------------------
// Images: row-major, channel-last, 8-bit
// ---------------------------------------------------------------------------

/// Flatten an 8-bit image (row-major, channel-last byte order) into a
/// normalized dataset: each pixel value is scaled by 1/255 and the list then
/// passes through the standard normalization (a no-op for non-constant
/// images, the 0.5 rule for constant ones).
pub fn flatten_image(pixels: &[u8], width: usize, height: usize, channels: usize) -> Result<Dataset> {
    if width * height * channels != pixels.len() {
        return Err(Error::Shape(format!(
            "image is {width}x{height}x{channels} = {} values, but {} bytes were given",
            width * height * channels,
            pixels.len()
        )));
    }
    let raw: Vec<f64> = pixels.iter().map(|&p| p as f64 / 255.0).collect();
    Ok(Dataset::normalize(&raw)?.with_modality(Modality::Image { width, height, channels }))
}

/// Exact inverse of [`flatten_image`]: denormalize, scale by 255, and round
/// back to bytes in the same row-major channel-last order.
pub fn fold_image(ds: &Dataset, width: usize, height: usize, channels: usize) -> Result<Vec<u8>> {
    let raw = ds.denormalize(&ds.samples);
    pixels_from_raw(&raw, width, height, channels)
}

/// Rescale raw-scale values (pixel/255 units) to bytes; used both by
/// [`fold_image`] and by decode paths that carry plain value lists.
pub fn pixels_from_raw(raw: &[f64], width: usize, height: usize, channels: usize) -> Result<Vec<u8>> {
    if width * height * channels != raw.len() {
        return Err(Error::Shape(format!(
            "image is {width}x{height}x{channels} = {} values, but {} were given",
            width * height * channels,
            raw.len()
        )));
    }
    Ok(raw.iter().map(|&v| (v * 255.0).round().clamp(0.0, 255.0) as u8).collect())
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

/// Load a one-value-per-line CSV (an optional single header line is skipped)
/// and normalize it.
pub fn load_series_csv(path: &Path) -> Result<Dataset> {
    let text = fs::read_to_string(path)?;
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let cell = line.trim_end_matches('\r').trim();
        if cell.is_empty() {
            continue;
        }
        match cell.parse::<f64>() {
            Ok(v) => values.push(v),
            Err(_) if lineno == 0 => continue, // header line
            Err(_) => {
                return Err(Error::Parse(format!(
                    "{}: line {}: expected a number, got {cell:?}",
                    path.display(),
                    lineno + 1
                )))
            }
        }
    }
    if values.is_empty() {
        return Err(Error::Parse(format!("{}: no numeric rows", path.display())));
    }
    Dataset::normalize(&values)
}

/// Write one value per line with a fixed 12-decimal format (deterministic,
/// diffable output).
pub fn save_series_csv(path: &Path, values: &[f64]) -> Result<()> {
    let mut out = String::with_capacity(values.len() * 16);
    for v in values {
        out.push_str(&format!("{v:.12}\n"));
    }
    fs::write(path, out)?;
    Ok(())
}

// ---------------------------------------------------------------------------
// PGM (P5) / PPM (P6)
// ---------------------------------------------------------------------------

/// Load a binary PGM (1 channel) or PPM (3 channels) image with maxval 255.
pub fn load_image(path: &Path) -> Result<Dataset> {
    let bytes = fs::read(path)?;
    let diag = |msg: &str| Error::Parse(format!("{}: {msg}", path.display()));
    let channels = match bytes.get(..2) {
        Some(b"P5") => 1,
        Some(b"P6") => 3,
        _ => return Err(diag("not a binary PGM (P5) or PPM (P6) file")),
    };
    let mut pos = 2;
    let mut fields = [0usize; 3]; // width, height, maxval
    for field in fields.iter_mut() {
        // skip whitespace and '#' comment lines between header fields
        loop {
            match bytes.get(pos) {
                Some(b) if b.is_ascii_whitespace() => pos += 1,
                Some(b'#') => {
                    while pos < bytes.len() && bytes[pos] != b'\n' {
                        pos += 1;
                    }
                }
                Some(b) if b.is_ascii_digit() => break,
                _ => return Err(diag("truncated header")),
            }
        }
        let mut v: usize = 0;
        while let Some(b) = bytes.get(pos) {
            if !b.is_ascii_digit() {
                break;
            }
            v = v * 10 + (b - b'0') as usize;
            pos += 1;
        }
        *field = v;
    }
    let [width, height, maxval] = fields;
    if maxval != 255 {
        return Err(diag("only maxval 255 (8-bit) images are supported"));
    }
    match bytes.get(pos) {
        Some(b) if b.is_ascii_whitespace() => pos += 1,
        _ => return Err(diag("missing whitespace after maxval")),
    }
    let expected = width * height * channels;
    let data = bytes
        .get(pos..pos + expected)
        .ok_or_else(|| diag(&format!("expected {expected} pixel bytes at offset {pos}")))?;
    flatten_image(data, width, height, channels)
}

/// Write a canonical binary PGM/PPM: `P5\n{w} {h}\n255\n` + bytes (P6 for 3
/// channels). Canonical output means save ∘ load is byte-identical.
pub fn save_image(path: &Path, pixels: &[u8], width: usize, height: usize, channels: usize) -> Result<()> {
    let magic = match channels {
        1 => "P5",
        3 => "P6",
        other => {
            return Err(Error::Shape(format!(
                "images must have 1 (PGM) or 3 (PPM) channels, got {other}"
            )))
        }
    };
    if width * height * channels != pixels.len() {
        return Err(Error::Shape(format!(
            "image is {width}x{height}x{channels} = {} values, but {} bytes were given",
            width * height * channels,
            pixels.len()
        )));
    }
    let mut out = format!("{magic}\n{width} {height}\n255\n").into_bytes();
    out.extend_from_slice(pixels);
    fs::write(path, out)?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Audio: 16-bit mono PCM, raw or minimal WAV
// ---------------------------------------------------------------------------

/// Map one PCM sample to [0, 1]: −32768 ↦ 0, +32767 ↦ 1.
fn pcm_to_unit(s: i16) -> f64 {
    (s as i32 + 32768) as f64 / 65535.0
}

/// Exact inverse of [`pcm_to_unit`] on representable values.
fn unit_to_pcm(v: f64) -> i16 {
    ((v * 65535.0).round().clamp(0.0, 65535.0) as i32 - 32768) as i16
}

/// Load 16-bit mono PCM audio. A `.wav` extension selects the WAV container
/// (rate read from the header); anything else is raw little-endian PCM at
/// `rate` Hz.
pub fn load_audio_pcm(path: &Path, rate: u32) -> Result<Dataset> {
    let bytes = fs::read(path)?;
    let is_wav = path.extension().map(|e| e.eq_ignore_ascii_case("wav")).unwrap_or(false);
    let (data, sample_rate) = if is_wav {
        parse_wav(&bytes).map_err(|msg| Error::Parse(format!("{}: {msg}", path.display())))?
    } else {
        if bytes.len() % 2 != 0 {
            return Err(Error::Parse(format!(
                "{}: raw PCM16 length {} is not a multiple of 2",
                path.display(),
                bytes.len()
            )));
        }
        (bytes.as_slice(), rate)
    };
    let raw: Vec<f64> = data
        .chunks_exact(2)
        .map(|c| pcm_to_unit(i16::from_le_bytes([c[0], c[1]])))
        .collect();
    if raw.is_empty() {
        return Err(Error::Parse(format!("{}: no audio samples", path.display())));
    }
    Ok(Dataset::normalize(&raw)?.with_modality(Modality::Audio { sample_rate }))
}

/// Write 16-bit mono PCM audio from raw-scale values in [0, 1]; `.wav` gets
/// the canonical 44-byte header, other extensions are raw little-endian.
pub fn save_audio_pcm(path: &Path, values: &[f64], rate: u32) -> Result<()> {
    let mut data = Vec::with_capacity(values.len() * 2);
    for &v in values {
        data.extend_from_slice(&unit_to_pcm(v).to_le_bytes());
    }
    let is_wav = path.extension().map(|e| e.eq_ignore_ascii_case("wav")).unwrap_or(false);
    if is_wav {
        let mut out = Vec::with_capacity(44 + data.len());
        let data_len = data.len() as u32;
        out.extend_from_slice(b"RIFF");
        out.extend_from_slice(&(36 + data_len).to_le_bytes());
        out.extend_from_slice(b"WAVE");
        out.extend_from_slice(b"fmt ");
        out.extend_from_slice(&16u32.to_le_bytes()); // PCM fmt chunk size
        out.extend_from_slice(&1u16.to_le_bytes()); // PCM
        out.extend_from_slice(&1u16.to_le_bytes()); // mono
        out.extend_from_slice(&rate.to_le_bytes());
        out.extend_from_slice(&(rate * 2).to_le_bytes()); // byte rate
        out.extend_from_slice(&2u16.to_le_bytes()); // block align
        out.extend_from_slice(&16u16.to_le_bytes()); // bits per sample
        out.extend_from_slice(b"data");
        out.extend_from_slice(&data_len.to_le_bytes());
        out.extend_from_slice(&data);
        fs::write(path, out)?;
    } else {
        fs::write(path, data)?;
    }
    Ok(())
}

/// Walk a RIFF/WAVE container and return the PCM data slice and sample rate.
/// Requires 16-bit mono PCM; tolerates extra chunks before/after `data`.
fn parse_wav(bytes: &[u8]) -> std::result::Result<(&[u8], u32), String> {
    let u16_at = |pos: usize| -> std::result::Result<u16, String> {
        bytes
            .get(pos..pos + 2)
            .map(|b| u16::from_le_bytes([b[0], b[1]]))
            .ok_or_else(|| format!("truncated WAV at offset {pos}"))
    };
    let u32_at = |pos: usize| -> std::result::Result<u32, String> {
        bytes
            .get(pos..pos + 4)
            .map(|b| u32::from_le_bytes([b[0], b[1], b[2], b[3]]))
            .ok_or_else(|| format!("truncated WAV at offset {pos}"))
    };
    if bytes.get(..4) != Some(b"RIFF") || bytes.get(8..12) != Some(b"WAVE") {
        return Err("not a RIFF/WAVE file".into());
    }
    let mut pos = 12;
    let mut rate = None;
    let mut data = None;
    while pos + 8 <= bytes.len() {
        let id = &bytes[pos..pos + 4];
        let size = u32_at(pos + 4)? as usize;
        let body = pos + 8;
        match id {
            b"fmt " => {
                if u16_at(body)? != 1 {
                    return Err("only uncompressed PCM WAV is supported".into());
                }
                if u16_at(body + 2)? != 1 {
                    return Err("only mono WAV is supported".into());
                }
                if u16_at(body + 14)? != 16 {
                    return Err("only 16-bit WAV is supported".into());
                }
                rate = Some(u32_at(body + 4)?);
            }
            b"data" => {
                data = Some(
                    bytes
                        .get(body..body + size)
                        .ok_or_else(|| "data chunk overruns file".to_string())?,
                );
            }
            _ => {}
        }
        pos = body + size + (size & 1); // chunks are word-aligned
    }
    match (data, rate) {
        (Some(d), Some(r)) => {
            if d.len() % 2 != 0 {
                return Err("data chunk length is not a multiple of 2".into());
            }
            Ok((d, r))
        }
        (None, _) => Err("missing data chunk".into()),
        (_, None) => Err("missing fmt chunk".into()),
    }
}
