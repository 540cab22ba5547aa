//! 8-bit RGB colors shared by the 2D frames and the 3D renderer.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Serializes as `[r, g, b]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[u8; 3]", into = "[u8; 3]")]
pub struct Rgb {
    pub r: u8,
    pub g: u8,
    pub b: u8,
}

impl Rgb {
    pub const BLACK: Rgb = Rgb::new(0, 0, 0);
    pub const WHITE: Rgb = Rgb::new(255, 255, 255);
    pub const RED: Rgb = Rgb::new(220, 30, 30);
    pub const BRIGHT_RED: Rgb = Rgb::new(255, 40, 40);
    pub const YELLOW: Rgb = Rgb::new(240, 220, 40);
    pub const GOLD: Rgb = Rgb::new(255, 200, 40);
    pub const SILVER: Rgb = Rgb::new(190, 190, 200);
    pub const ORANGE: Rgb = Rgb::new(255, 140, 20);
    pub const BLUE: Rgb = Rgb::new(40, 80, 230);
    pub const GREEN: Rgb = Rgb::new(40, 190, 60);
    pub const CYAN: Rgb = Rgb::new(40, 210, 220);
    pub const PURPLE: Rgb = Rgb::new(150, 60, 200);
    pub const GRAY: Rgb = Rgb::new(120, 120, 120);

    pub const fn new(r: u8, g: u8, b: u8) -> Self {
        Rgb { r, g, b }
    }

    /// `#rrggbb`.
    pub fn hex(self) -> String {
        format!("#{:02x}{:02x}{:02x}", self.r, self.g, self.b)
    }

    /// Multiplies every channel by `f ∈ [0, 1]`, rounding to nearest.
    pub fn scale(self, f: f64) -> Rgb {
        let c = |x: u8| (x as f64 * f).round().clamp(0.0, 255.0) as u8;
        Rgb::new(c(self.r), c(self.g), c(self.b))
    }

    pub fn to_array(self) -> [u8; 3] {
        [self.r, self.g, self.b]
    }
}

impl From<[u8; 3]> for Rgb {
    fn from([r, g, b]: [u8; 3]) -> Self {
        Rgb { r, g, b }
    }
}

impl From<Rgb> for [u8; 3] {
    fn from(c: Rgb) -> Self {
        c.to_array()
    }
}

impl fmt::Display for Rgb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.hex())
    }
}
