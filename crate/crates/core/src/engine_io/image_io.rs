//! Binary PPM (`P6`) and PNG output for rendered images.

use std::path::Path;

use crate::color::Rgb;
use crate::honeycomb3d::ImageBuf;

use super::EngineError;

pub fn encode_ppm(img: &ImageBuf) -> Vec<u8> {
    let mut out = format!("P6\n{} {}\n255\n", img.width, img.height).into_bytes();
    out.extend(img.to_bytes());
    out
}

/// Reads a `P6` image with maximum value 255. Header comments are allowed.
pub fn decode_ppm(bytes: &[u8]) -> Result<ImageBuf, EngineError> {
    let bad = |msg: &str| EngineError::BadImage(msg.to_string());
    let mut pos = 0;
    let mut fields = Vec::with_capacity(4);
    while fields.len() < 4 {
        while pos < bytes.len() && (bytes[pos].is_ascii_whitespace() || bytes[pos] == b'#') {
            if bytes[pos] == b'#' {
                while pos < bytes.len() && bytes[pos] != b'\n' {
                    pos += 1;
                }
            } else {
                pos += 1;
            }
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return Err(bad("truncated header"));
        }
        fields.push(std::str::from_utf8(&bytes[start..pos]).map_err(|_| bad("header is not text"))?);
    }
    if fields[0] != "P6" {
        return Err(bad("not a binary PPM"));
    }
    let num = |s: &str| s.parse::<u32>().map_err(|_| bad("bad header number"));
    let (width, height, maxval) = (num(fields[1])?, num(fields[2])?, num(fields[3])?);
    if maxval != 255 {
        return Err(bad("only 8-bit PPM is supported"));
    }
    // exactly one whitespace byte separates the header from the pixels
    let data = bytes.get(pos + 1..).ok_or_else(|| bad("missing pixel data"))?;
    let len = (width as usize).checked_mul(height as usize).and_then(|n| n.checked_mul(3)).ok_or_else(|| bad("image too large"))?;
    if data.len() != len {
        return Err(bad("pixel data has the wrong length"));
    }
    let mut img = ImageBuf::new(width, height);
    for (i, px) in data.chunks_exact(3).enumerate() {
        img.pixels[i] = Rgb::new(px[0], px[1], px[2]);
    }
    Ok(img)
}

pub fn write_ppm(img: &ImageBuf, path: &Path) -> Result<(), EngineError> {
    std::fs::write(path, encode_ppm(img))?;
    Ok(())
}

pub fn read_ppm(path: &Path) -> Result<ImageBuf, EngineError> {
    decode_ppm(&std::fs::read(path)?)
}

pub fn write_png(img: &ImageBuf, path: &Path) -> Result<(), EngineError> {
    let buf = image::RgbImage::from_raw(img.width, img.height, img.to_bytes())
        .ok_or_else(|| EngineError::BadImage("buffer size mismatch".into()))?;
    buf.save_with_format(path, image::ImageFormat::Png)
        .map_err(|e| EngineError::BadImage(e.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ImageFormat {
    Ppm,
    Png,
}

impl ImageFormat {
    /// Guesses from the file extension; PPM unless it ends in `.png`.
    pub fn from_path(path: &Path) -> ImageFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("png") => ImageFormat::Png,
            _ => ImageFormat::Ppm,
        }
    }
}

pub fn write_image(img: &ImageBuf, path: &Path, format: ImageFormat) -> Result<(), EngineError> {
    match format {
        ImageFormat::Ppm => write_ppm(img, path),
        ImageFormat::Png => write_png(img, path),
    }
}
