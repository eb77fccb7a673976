//! Binary PGM (P5) rendering of channel-energy matrices.

use ndarray::Array2;

/// Maps a `T x F` matrix to an 8-bit image `T` pixels wide and `F` tall,
/// lowest channel on the bottom row. Values are min-max scaled to 0..=255;
/// a constant matrix renders as all zeros.
pub fn spectrogram_pixels(values: &Array2<f64>) -> (usize, usize, Vec<u8>) {
    let (frames, channels) = values.dim();
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let range = hi - lo;
    let mut pixels = Vec::with_capacity(frames * channels);
    for y in 0..channels {
        let f = channels - 1 - y;
        for t in 0..frames {
            let v = values[[t, f]];
            let p = if range > 0.0 {
                (255.0 * (v - lo) / range).round().clamp(0.0, 255.0) as u8
            } else {
                0
            };
            pixels.push(p);
        }
    }
    (frames, channels, pixels)
}

pub fn encode_p5(width: usize, height: usize, pixels: &[u8]) -> Vec<u8> {
    let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
    out.extend_from_slice(pixels);
    out
}

pub fn render(values: &Array2<f64>) -> Vec<u8> {
    let (w, h, px) = spectrogram_pixels(values);
    encode_p5(w, h, &px)
}
