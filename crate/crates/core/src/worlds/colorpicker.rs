//! Picking a color by walking through the RGB cube.
//!
//! The cube is `{0..255}³` and every move changes one channel by the
//! current step. Tiles around the current color show the colors reachable
//! from it, so nearby choices are visible at once.

use serde::Serialize;

use crate::color::Rgb;
use crate::scene2d::{LabelAnchor, TileStyle};
use crate::tiling2d::SignedAxis;

/// Values the step slider can take.
pub const STEPS: [u32; 6] = [1, 2, 4, 8, 16, 32];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColorPickerState {
    pub current: [i64; 3],
    pub step: u32,
    pub turn: u64,
}

impl Default for ColorPickerState {
    fn default() -> Self {
        ColorPickerState {
            current: [128, 128, 128],
            step: 1,
            turn: 0,
        }
    }
}

fn clamp(x: i64) -> i64 {
    x.clamp(0, 255)
}

impl ColorPickerState {
    pub fn color(&self) -> Rgb {
        Rgb::new(self.current[0] as u8, self.current[1] as u8, self.current[2] as u8)
    }

    /// Moves one step along `dir`, clamping to the cube.
    pub fn step(&self, dir: SignedAxis) -> ColorPickerState {
        let mut next = self.clone();
        let a = dir.axis();
        next.current[a] = clamp(self.current[a] + dir.sign() * self.step as i64);
        next.turn += 1;
        next
    }

    /// Same color with a new step, if `value` is one of [`STEPS`].
    pub fn with_step(&self, value: f64) -> Option<ColorPickerState> {
        let step = STEPS.into_iter().find(|&s| s as f64 == value)?;
        Some(ColorPickerState {
            step,
            ..self.clone()
        })
    }

    /// Color shown on the tile at offset `coord` from the current color.
    pub fn color_at(&self, coord: &[i64]) -> Rgb {
        let c = |i: usize| clamp(self.current[i] + coord[i] * self.step as i64) as u8;
        Rgb::new(c(0), c(1), c(2))
    }

    pub fn style(&self, coord: &[i64]) -> TileStyle {
        let fill = self.color_at(coord);
        if coord.iter().all(|&x| x == 0) {
            let ink = if fill.r as u32 + fill.g as u32 + fill.b as u32 > 382 { Rgb::BLACK } else { Rgb::WHITE };
            TileStyle::plain(fill).label(fill.hex(), LabelAnchor::Center, ink)
        } else {
            TileStyle::plain(fill)
        }
    }
}
