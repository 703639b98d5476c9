//! Squeeze an entire image into one real number and get every byte back.
//!
//! Pixels become samples (value/255, row-major, channel-last), the flat list
//! is encoded dyadically, and decoding plus re-rounding restores the exact
//! bytes — provided `tau` gives finer resolution than half a pixel step,
//! i.e. `2^-tau < 1/510`, so `tau >= 9`. We use 16 for comfortable margin.
//!
//! Run with: `cargo run --example image_roundtrip`

use alphacodec::codec::{encode_dataset, Scheme};
use alphacodec::ingest::{flatten_image, fold_image, Dataset, Modality};

fn main() -> alphacodec::Result<()> {
    // A deterministic 16x12 gradient-with-texture grayscale image.
    let (width, height, channels) = (16usize, 12usize, 1usize);
    let pixels: Vec<u8> = (0..height)
        .flat_map(|y| (0..width).map(move |x| ((x * 37 + y * 53) % 256) as u8))
        .collect();

    let dataset = flatten_image(&pixels, width, height, channels)?;
    println!(
        "image: {width}x{height}x{channels} = {} samples, modality {}",
        dataset.samples.len(),
        dataset.modality
    );

    let tau = 16;
    let alpha = encode_dataset(&dataset, Scheme::Dyadic, tau, 32)?;
    let budget = alpha.budget();
    println!(
        "alpha: {} binary digits ({} decimal) hold the whole image",
        budget.p_bin, budget.p_dec
    );

    // Decode all samples, then fold the flat list back into bytes.
    let decoded: Vec<f64> = alpha
        .decode_all(alpha.n())?
        .into_iter()
        .map(|s| s.value)
        .collect();
    let restored = fold_image(
        &Dataset {
            samples: decoded,
            norm: alpha.norm,
            modality: Modality::Image { width, height, channels },
        },
        width,
        height,
        channels,
    )?;

    let identical = restored == pixels;
    println!("restored == original: {identical}");
    assert!(identical, "a tau=16 dyadic round trip must restore 8-bit pixels exactly");

    // Show a corner of both to make "identical" concrete.
    println!("first row, original: {:?}", &pixels[..8]);
    println!("first row, restored: {:?}", &restored[..8]);
    Ok(())
}
