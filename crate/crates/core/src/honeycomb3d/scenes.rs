//! The built-in scenes: which cells of `Z^d` are filled, and with what.
//!
//! Every predicate is written for general `d`; the `{3,4,4}` honeycomb uses
//! `d = 4` and `{5,3,4}` uses `d = 6`. Extents the scene names leave open
//! (cage size, wall thickness) are fixed here:
//!
//! - `A` cage: cells of `[−2, 2]^d` with at least `d − 1` coordinates equal
//!   to `±2` (the edges of the box), silver; the origin is golden.
//! - `B` tunnel along axis 1: empty iff `z_2 = … = z_d = 0`, else bright red.
//! - `C` skeleton of the period-2 cube complex: filled iff at least `d − 1`
//!   coordinates are even, silver and white by parity of the odd coordinate.
//! - `D` tunnel along axes 1 and 2: empty iff `z_3 = … = z_d = 0`, orange.
//! - `E` blue `z_1 = −1`, green `z_1 = 1`. For `d = 6` the tunnel is
//!   four-dimensional: walls where `max(|z_1|, |z_2|) = 1`.
//! - `F` cyan `z_1 = −1`, green `z_1 = 2`.
//! - `G` red `z_1 = 1`, yellow `z_2 = 1` (red wins where they meet).
//! - `H` four quarterspaces by the signs of `z_1, z_2`; rows with a zero
//!   coordinate stay empty.
//! - `I` empty within sup-distance 1 of the line `t(1, …, 1, 0)`, else golden
//!   or silver by parity of the coordinate sum.
//! - `J` empty within sup-distance 1 of the line `t(1, …, 1)`, else purple
//!   or gray by parity.

use std::fmt;
use std::str::FromStr;

use crate::color::Rgb;

use super::HoneycombError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SceneId {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
    J,
}

impl SceneId {
    pub const ALL: [SceneId; 10] = [
        SceneId::A,
        SceneId::B,
        SceneId::C,
        SceneId::D,
        SceneId::E,
        SceneId::F,
        SceneId::G,
        SceneId::H,
        SceneId::I,
        SceneId::J,
    ];

    pub fn letter(self) -> char {
        (b'A' + self as u8) as char
    }

    pub fn description(self) -> &'static str {
        match self {
            SceneId::A => "cage with a golden point in the center",
            SceneId::B => "one-dimensional tunnel",
            SceneId::C => "1-skeleton of the grid of edge-2 cubes",
            SceneId::D => "two-dimensional tunnel",
            SceneId::E => "two hyperplanes at distance 2",
            SceneId::F => "two hyperplanes at distance 3",
            SceneId::G => "two orthogonal hyperplanes",
            SceneId::H => "four quarterspaces",
            SceneId::I => "diagonal tunnel in all coordinates but one",
            SceneId::J => "diagonal tunnel",
        }
    }
}

impl fmt::Display for SceneId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for SceneId {
    type Err = HoneycombError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.trim().chars();
        match (chars.next().map(|c| c.to_ascii_uppercase()), chars.next()) {
            (Some(c @ 'A'..='J'), None) => Ok(SceneId::ALL[(c as u8 - b'A') as usize]),
            _ => Err(HoneycombError::UnknownScene(s.to_string())),
        }
    }
}

/// A scene over `Z^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Scene {
    pub id: SceneId,
    pub d: usize,
}

impl Scene {
    pub fn new(id: SceneId, d: usize) -> Self {
        Scene { id, d }
    }

    pub fn name(&self) -> String {
        format!("{} ({})", self.id, self.id.description())
    }

    /// Color of cell `z`, or `None` if it is empty.
    pub fn fill(&self, z: &[i64]) -> Option<Rgb> {
        let d = self.d;
        let parity = |x: i64| x.rem_euclid(2) == 0;
        let sum: i64 = z.iter().sum();
        match self.id {
            SceneId::A => {
                if z.iter().all(|&x| x == 0) {
                    return Some(Rgb::GOLD);
                }
                let inside = z.iter().all(|x| x.abs() <= 2);
                let on_edge = z.iter().filter(|x| x.abs() == 2).count() + 1 >= d;
                (inside && on_edge).then_some(Rgb::SILVER)
            }
            SceneId::B => (!z[1..].iter().all(|&x| x == 0)).then_some(Rgb::BRIGHT_RED),
            SceneId::C => {
                let odd: Vec<i64> = z.iter().copied().filter(|&x| !parity(x)).collect();
                match odd.as_slice() {
                    [] => Some(Rgb::WHITE),
                    [x] if x.rem_euclid(4) == 1 => Some(Rgb::SILVER),
                    [_] => Some(Rgb::GRAY),
                    _ => None,
                }
            }
            SceneId::D => (!z[2..].iter().all(|&x| x == 0)).then_some(Rgb::ORANGE),
            SceneId::E if d >= 6 => {
                let m = z[0].abs().max(z[1].abs());
                (m == 1).then(|| if z[0] + z[1] < 0 { Rgb::BLUE } else { Rgb::GREEN })
            }
            SceneId::E => match z[0] {
                -1 => Some(Rgb::BLUE),
                1 => Some(Rgb::GREEN),
                _ => None,
            },
            SceneId::F => match z[0] {
                -1 => Some(Rgb::CYAN),
                2 => Some(Rgb::GREEN),
                _ => None,
            },
            SceneId::G => {
                if z[0] == 1 {
                    Some(Rgb::RED)
                } else if z[1] == 1 {
                    Some(Rgb::YELLOW)
                } else {
                    None
                }
            }
            SceneId::H => match (z[0].signum(), z[1].signum()) {
                (1, 1) => Some(Rgb::RED),
                (-1, 1) => Some(Rgb::YELLOW),
                (-1, -1) => Some(Rgb::CYAN),
                (1, -1) => Some(Rgb::BLUE),
                _ => None,
            },
            SceneId::I => {
                let head = &z[..d - 1];
                let range = head.iter().max().unwrap() - head.iter().min().unwrap();
                let empty = range <= 2 && z[d - 1].abs() <= 1;
                (!empty).then(|| if parity(sum) { Rgb::GOLD } else { Rgb::SILVER })
            }
            SceneId::J => {
                let range = z.iter().max().unwrap() - z.iter().min().unwrap();
                (range > 2).then(|| if parity(sum) { Rgb::PURPLE } else { Rgb::GRAY })
            }
        }
    }

    /// An empty cell from which the scene is worth looking at.
    pub fn start_cell(&self) -> Vec<i64> {
        let mut z = vec![0; self.d];
        match self.id {
            SceneId::A => z[0] = -1,
            SceneId::C => {
                z[0] = 1;
                z[1] = 1;
            }
            _ => {}
        }
        z
    }
}

/// The ten scenes for dimension `d`.
pub fn scene_catalog(d: usize) -> Vec<Scene> {
    SceneId::ALL.iter().map(|&id| Scene::new(id, d)).collect()
}
