//! Software rasterizer for 2D frames, used by `render-2d`.
//!
//! Polygons are filled with an even-odd scanline rule at pixel centers in
//! frame order. Labels are drawn as small dots in their color; there is no
//! font rendering.

use crate::color::Rgb;
use crate::honeycomb3d::ImageBuf;
use crate::hypmath::DiskPoint;
use crate::scene2d::SceneFrame;

pub const BACKGROUND: Rgb = Rgb::new(12, 12, 18);
pub const DISK: Rgb = Rgb::new(32, 32, 44);
pub const RIM: Rgb = Rgb::WHITE;

/// Pixel position of a disk point in a `size × size` image, y up.
fn to_pixel(p: DiskPoint, size: f64) -> (f64, f64) {
    ((p.x + 1.0) * 0.5 * size, (1.0 - p.y) * 0.5 * size)
}

fn fill_polygon(img: &mut ImageBuf, pts: &[(f64, f64)], color: Rgb) {
    if pts.len() < 3 {
        return;
    }
    let ymin = pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min).max(0.0);
    let ymax = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max).min(img.height as f64);
    let mut xs = Vec::new();
    let mut row = (ymin - 0.5).ceil().max(0.0) as u32;
    while (row as f64 + 0.5) <= ymax && row < img.height {
        let y = row as f64 + 0.5;
        xs.clear();
        for i in 0..pts.len() {
            let a = pts[i];
            let b = pts[(i + 1) % pts.len()];
            if (a.1 > y) != (b.1 > y) {
                xs.push(a.0 + (y - a.1) / (b.1 - a.1) * (b.0 - a.0));
            }
        }
        xs.sort_by(f64::total_cmp);
        for pair in xs.chunks_exact(2) {
            let x0 = (pair[0] - 0.5).ceil().max(0.0) as u32;
            let x1 = (pair[1] - 0.5).floor().min(img.width as f64 - 1.0);
            if x1 < 0.0 {
                continue;
            }
            for x in x0..=(x1 as u32) {
                img.set(x, row, color);
            }
        }
        row += 1;
    }
}

/// Draws `frame` into a square image of side `size`.
pub fn rasterize(frame: &SceneFrame, size: u32) -> ImageBuf {
    let mut img = ImageBuf::new(size, size);
    let s = size as f64;
    let r = s * 0.5;
    for y in 0..size {
        for x in 0..size {
            let dx = x as f64 + 0.5 - r;
            let dy = y as f64 + 0.5 - r;
            let rho = (dx * dx + dy * dy).sqrt();
            let c = if (rho - r).abs() < 1.0 {
                RIM
            } else if rho < r {
                DISK
            } else {
                BACKGROUND
            };
            img.set(x, y, c);
        }
    }
    for poly in &frame.polys {
        let pts: Vec<(f64, f64)> = poly.boundary.iter().map(|&p| to_pixel(p, s)).collect();
        fill_polygon(&mut img, &pts, poly.fill);
    }
    let dot = (s / 200.0).max(1.0);
    for label in frame.polys.iter().flat_map(|p| &p.labels) {
        let (cx, cy) = to_pixel(label.pos, s);
        // shrink with the tile near the rim
        let rad = dot * (1.0 - label.pos.norm() * label.pos.norm()).max(0.2);
        let n = (cx - rad).floor().max(0.0) as u32;
        for y in ((cy - rad).floor().max(0.0) as u32)..(((cy + rad).ceil() as u32).min(size)) {
            for x in n..(((cx + rad).ceil() as u32).min(size)) {
                let (dx, dy) = (x as f64 + 0.5 - cx, y as f64 + 0.5 - cy);
                if dx * dx + dy * dy <= rad * rad {
                    img.set(x, y, label.color);
                }
            }
        }
    }
    img
}
