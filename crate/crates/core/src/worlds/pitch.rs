//! A four-dimensional pitch space in 7-limit just intonation.
//!
//! Cell `(x, y, z, t)` sounds at `(3/2)^x (4/3)^y (5/4)^z (7/5)^t` times the
//! base frequency. Ratios are kept as exact fractions.

use num::{BigInt, BigRational, One, ToPrimitive};
use serde::Serialize;

use crate::scene2d::{Event, EventKind, LabelAnchor, TileStyle};
use crate::tiling2d::{Coord, SignedAxis};

use super::hue;

/// Middle C.
pub const DEFAULT_BASE: f64 = 261.63;
/// Length of the tone clients should play on a move.
pub const TONE_MS: u32 = 400;

const GENERATORS: [(i64, i64); 4] = [(3, 2), (4, 3), (5, 4), (7, 5)];

/// Exact pitch ratio of `cell`.
pub fn pitch_ratio(cell: &[i64]) -> BigRational {
    assert_eq!(cell.len(), 4, "pitch cells have four coordinates");
    let mut r = BigRational::one();
    for (&e, &(p, q)) in cell.iter().zip(&GENERATORS) {
        let g = BigRational::new(BigInt::from(p), BigInt::from(q));
        r *= g.pow(i32::try_from(e).expect("exponent fits in i32"));
    }
    r
}

/// Natural logarithm of a positive ratio of any size.
fn ratio_ln(r: &BigRational) -> f64 {
    let ln = |x: &BigInt| {
        let bits = x.bits().saturating_sub(60);
        let top = (x >> bits).to_f64().expect("fits after the shift");
        top.ln() + bits as f64 * std::f64::consts::LN_2
    };
    ln(r.numer()) - ln(r.denom())
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => ratio_ln(r).exp(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PitchState {
    pub base_freq: f64,
    pub cell: Coord,
    pub turn: u64,
}

impl Default for PitchState {
    fn default() -> Self {
        PitchState {
            base_freq: DEFAULT_BASE,
            cell: vec![0; 4],
            turn: 0,
        }
    }
}

impl PitchState {
    pub fn ratio(&self) -> BigRational {
        pitch_ratio(&self.cell)
    }

    pub fn frequency(&self) -> f64 {
        self.base_freq * ratio_to_f64(&self.ratio())
    }

    pub fn step(&self, dir: SignedAxis) -> PitchState {
        PitchState {
            cell: crate::tiling2d::step(&self.cell, dir),
            turn: self.turn + 1,
            ..self.clone()
        }
    }

    pub fn with_base(&self, freq: f64) -> Option<PitchState> {
        (freq.is_finite() && (1.0..=20_000.0).contains(&freq)).then(|| PitchState {
            base_freq: freq,
            ..self.clone()
        })
    }

    /// The tone to play for the current cell.
    pub fn sound_event(&self) -> Event {
        let ratio = self.ratio();
        Event {
            kind: EventKind::Sound,
            payload: serde_json::json!({
                "cell": self.cell,
                "freq": self.frequency(),
                "ms": TONE_MS,
                "ratio": ratio.to_string(),
            }),
        }
    }

    /// Tiles are colored by pitch class: the hue is the position of the
    /// ratio within its octave.
    pub fn style(&self, coord: &[i64]) -> TileStyle {
        let r = pitch_ratio(coord);
        let octave = ratio_to_f64(&r).log2();
        let fill = hue(octave.rem_euclid(1.0), 0.85);
        let mut style = TileStyle::plain(fill).label(r.to_string(), LabelAnchor::Center, crate::color::Rgb::BLACK);
        if coord == self.cell.as_slice() {
            style = style.label(super::PLAYER_GLYPH, LabelAnchor::Edge(0), crate::color::Rgb::WHITE);
        }
        style
    }
}
