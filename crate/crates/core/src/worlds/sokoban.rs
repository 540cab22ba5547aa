//! Four-dimensional Sokoban with gravity along the fourth axis.
//!
//! The first three axes are shown on the tiling; the fourth is altitude,
//! shown through the projection. Everything below `floor` is solid ground.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::color::Rgb;
use crate::scene2d::{LabelAnchor, TileStyle};
use crate::tiling2d::{step, Coord, SignedAxis};

use super::{Status, WorldError, PLAYER_GLYPH};

pub const GRAVITY_AXIS: usize = 3;
/// Safety cap on gravity iterations.
pub const MAX_FALL_ITERATIONS: usize = 1_000_000;

const GROUND: Rgb = Rgb::new(60, 50, 40);
const WALL: Rgb = Rgb::GRAY;
const BOX: Rgb = Rgb::ORANGE;
const BOX_ON_TARGET: Rgb = Rgb::GREEN;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SokobanState {
    pub walls: BTreeSet<Coord>,
    pub boxes: BTreeSet<Coord>,
    pub targets: BTreeSet<Coord>,
    pub player: Coord,
    /// Lowest open altitude.
    pub floor: i64,
    pub status: Status,
    pub moves: u64,
}

fn below(z: &[i64]) -> Coord {
    step(z, SignedAxis::neg(GRAVITY_AXIS))
}

impl SokobanState {
    /// A raised platform with two boxes that have to be pushed off its
    /// edges onto targets on the ground.
    pub fn demo() -> Self {
        let mut walls = BTreeSet::new();
        for x in -1..=1 {
            for y in -1..=1 {
                for z in -1..=1 {
                    walls.insert(vec![x, y, z, 0]);
                }
            }
        }
        let mut s = SokobanState {
            walls,
            boxes: [vec![1, 0, 0, 1], vec![0, 1, 0, 1]].into_iter().collect(),
            targets: [vec![2, 0, 0, 0], vec![0, 2, 0, 0]].into_iter().collect(),
            player: vec![0, 0, 0, 1],
            floor: 0,
            status: Status::Playing,
            moves: 0,
        };
        s.settle();
        s
    }

    pub fn is_solid(&self, z: &[i64]) -> bool {
        z[GRAVITY_AXIS] < self.floor || self.walls.contains(z)
    }

    fn is_free(&self, z: &[i64]) -> bool {
        !self.is_solid(z) && !self.boxes.contains(z) && self.player != z
    }

    pub fn boxes_on_targets(&self) -> usize {
        self.boxes.intersection(&self.targets).count()
    }

    /// Drops boxes and the player until everything rests on something.
    /// Returns the number of rounds taken.
    pub fn settle(&mut self) -> usize {
        for round in 0..MAX_FALL_ITERATIONS {
            let mut changed = false;
            let boxes: Vec<Coord> = self.boxes.iter().cloned().collect();
            for b in boxes {
                let down = below(&b);
                if self.is_free(&down) {
                    self.boxes.remove(&b);
                    self.boxes.insert(down);
                    changed = true;
                }
            }
            let down = below(&self.player);
            if self.is_free(&down) {
                self.player = down;
                changed = true;
            }
            if !changed {
                return round;
            }
        }
        MAX_FALL_ITERATIONS
    }

    /// Whether every box and the player rest on ground, a wall or a box.
    pub fn is_settled(&self) -> bool {
        let supported = |z: &Coord| {
            let down = below(z);
            self.is_solid(&down) || self.boxes.contains(&down) || self.player == down
        };
        self.boxes.iter().all(supported) && supported(&self.player)
    }

    pub fn step(&self, dir: SignedAxis) -> Result<SokobanState, WorldError> {
        if self.status != Status::Playing {
            return Err(WorldError::Finished);
        }
        let to = step(&self.player, dir);
        if self.is_solid(&to) {
            return Err(WorldError::Blocked(dir));
        }
        let mut s = self.clone();
        if s.boxes.contains(&to) {
            let beyond = step(&to, dir);
            if !s.is_free(&beyond) {
                return Err(WorldError::Blocked(dir));
            }
            s.boxes.remove(&to);
            s.boxes.insert(beyond);
        }
        s.player = to;
        s.moves += 1;
        s.settle();
        if s.boxes_on_targets() == s.targets.len() {
            s.status = Status::Won;
        }
        Ok(s)
    }

    /// The column at `coord` (first three axes), seen from the player's
    /// altitude: the topmost thing at or below it, and its height.
    pub fn style(&self, coord: &[i64]) -> TileStyle {
        let h = self.player[GRAVITY_AXIS];
        let at = |alt: i64| {
            let mut z = coord.to_vec();
            z.push(alt);
            z
        };
        let mut alt = h;
        while alt >= self.floor {
            let z = at(alt);
            if self.player == z || self.boxes.contains(&z) || self.walls.contains(&z) {
                break;
            }
            alt -= 1;
        }
        let z = at(alt);
        let fill = if self.boxes.contains(&z) {
            if self.targets.contains(&z) { BOX_ON_TARGET } else { BOX }
        } else if self.walls.contains(&z) {
            WALL
        } else {
            GROUND
        };
        let mut style = TileStyle {
            altitude: Some(alt - self.floor + 1),
            ..TileStyle::plain(fill)
        };
        if self.player == z {
            // stands on whatever is below
            let under = below(&z);
            style.fill = if self.boxes.contains(&under) { BOX } else if self.walls.contains(&under) { WALL } else { GROUND };
            style = style.label(PLAYER_GLYPH, LabelAnchor::Center, Rgb::GOLD);
        }
        let target = (self.floor..=h).any(|a| self.targets.contains(&at(a)) && !self.boxes.contains(&at(a)));
        if target {
            style = style.label("×", LabelAnchor::Edge(0), Rgb::WHITE);
        }
        style
    }
}
