//! Two orientation puzzles: the house locked in three dimensions, and
//! finding the center of a hypercube or an orthoplex.

use serde::Serialize;

use crate::color::Rgb;
use crate::scene2d::{LabelAnchor, TileStyle};
use crate::tiling2d::{step, Coord, SignedAxis};

use super::{Status, WorldError, PLAYER_GLYPH};

/// Half-width of the house: it spans `−2..=2` on the first three axes.
pub const HOUSE_HALF: i64 = 2;

const OUTSIDE: Rgb = Rgb::new(60, 60, 80);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PuzzleKind {
    /// A `5×5×5` cube with solid walls in the slice `z₄ = 0`.
    House,
    /// Cells with every `|zᵢ| < r`.
    Hypercube,
    /// Cells with `Σ|zᵢ| < r`.
    Orthoplex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellKind {
    Wall,
    Inside,
    Center,
    Outside,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PuzzleState {
    pub kind: PuzzleKind,
    pub d: usize,
    pub r: i64,
    pub player: Coord,
    pub status: Status,
    pub moves: u64,
}

impl PuzzleState {
    /// The house puzzle; the player starts two cells above the center
    /// along the fourth axis.
    pub fn house() -> Self {
        PuzzleState {
            kind: PuzzleKind::House,
            d: 4,
            r: HOUSE_HALF,
            player: vec![0, 0, 0, 2],
            status: Status::Playing,
            moves: 0,
        }
    }

    /// Find-the-center on a shape of size `r`, starting in a corner.
    pub fn center(kind: PuzzleKind, d: usize, r: i64) -> Self {
        let mut player = vec![0; d];
        match kind {
            PuzzleKind::Orthoplex => player[0] = r - 1,
            _ => player.iter_mut().for_each(|x| *x = r - 1),
        }
        PuzzleState {
            kind,
            d,
            r,
            player,
            status: Status::Playing,
            moves: 0,
        }
    }

    pub fn classify(&self, z: &[i64]) -> CellKind {
        if z.iter().all(|&x| x == 0) {
            return CellKind::Center;
        }
        match self.kind {
            PuzzleKind::House => {
                let in_slice = z[3..].iter().all(|&x| x == 0);
                let m = z[..3].iter().map(|x| x.abs()).max().unwrap_or(0);
                match (in_slice, m) {
                    (true, m) if m == self.r => CellKind::Wall,
                    (true, m) if m < self.r => CellKind::Inside,
                    _ => CellKind::Outside,
                }
            }
            PuzzleKind::Hypercube if z.iter().all(|x| x.abs() < self.r) => CellKind::Inside,
            PuzzleKind::Orthoplex if z.iter().map(|x| x.abs()).sum::<i64>() < self.r => CellKind::Inside,
            _ => CellKind::Outside,
        }
    }

    pub fn step(&self, dir: SignedAxis) -> Result<PuzzleState, WorldError> {
        if self.status != Status::Playing {
            return Err(WorldError::Finished);
        }
        let to = step(&self.player, dir);
        let kind = self.classify(&to);
        if kind == CellKind::Wall {
            return Err(WorldError::Blocked(dir));
        }
        Ok(PuzzleState {
            player: to,
            moves: self.moves + 1,
            status: if kind == CellKind::Center { Status::Won } else { Status::Playing },
            ..self.clone()
        })
    }

    pub fn style(&self, coord: &[i64]) -> TileStyle {
        let fill = match self.classify(coord) {
            CellKind::Wall => Rgb::RED,
            CellKind::Inside => Rgb::YELLOW,
            CellKind::Center => Rgb::WHITE,
            CellKind::Outside => OUTSIDE,
        };
        let style = TileStyle::plain(fill);
        if coord == self.player.as_slice() {
            style.label(PLAYER_GLYPH, LabelAnchor::Center, Rgb::BLUE)
        } else {
            style
        }
    }
}
