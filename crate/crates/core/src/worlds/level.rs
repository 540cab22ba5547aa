//! Level files for the roguelike and Sokoban.
//!
//! ```json
//! {"format": 1, "world": "sokoban", "d": 4, "player": [0, 0, 0, 0],
//!  "walls": [], "boxes": [[1, 0, 0, 0]], "targets": [[2, 0, 0, 0]]}
//! ```

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::tiling2d::{Coord, MAX_DIM, MIN_DIM};

use super::rogue::ARENA_RADIUS;
use super::{RogueState, SokobanState, Status, World, WorldError, WorldId};

pub const LEVEL_FORMAT: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Level {
    pub format: u32,
    pub world: WorldId,
    pub d: usize,
    pub player: Coord,
    #[serde(default)]
    pub walls: Vec<Coord>,
    #[serde(default)]
    pub boxes: Vec<Coord>,
    #[serde(default)]
    pub targets: Vec<Coord>,
    #[serde(default)]
    pub enemies: Vec<Coord>,
    /// Sokoban: lowest open altitude.
    #[serde(default)]
    pub floor: i64,
    /// Roguelike: arena half-width.
    #[serde(default = "default_radius")]
    pub radius: i64,
}

fn default_radius() -> i64 {
    ARENA_RADIUS
}

impl Level {
    pub fn parse(text: &str) -> Result<Level, WorldError> {
        let level: Level = serde_json::from_str(text).map_err(|e| WorldError::BadLevel(e.to_string()))?;
        if level.format != LEVEL_FORMAT {
            return Err(WorldError::BadLevel(format!("unsupported format {}", level.format)));
        }
        Ok(level)
    }

    fn check_coords<'a>(&self, coords: impl IntoIterator<Item = &'a Coord>) -> Result<(), WorldError> {
        for c in coords {
            if c.len() != self.d {
                return Err(WorldError::BadLevel(format!("coordinate {c:?} does not have {} entries", self.d)));
            }
        }
        Ok(())
    }

    pub fn build(&self) -> Result<World, WorldError> {
        let bad = |msg: &str| Err(WorldError::BadLevel(msg.to_string()));
        self.check_coords(
            std::iter::once(&self.player)
                .chain(&self.walls)
                .chain(&self.boxes)
                .chain(&self.targets)
                .chain(&self.enemies),
        )?;
        let walls: BTreeSet<Coord> = self.walls.iter().cloned().collect();
        match self.world {
            WorldId::Sokoban => {
                if self.d != 4 {
                    return bad("sokoban levels are four-dimensional");
                }
                let boxes: BTreeSet<Coord> = self.boxes.iter().cloned().collect();
                if boxes.len() != self.boxes.len() {
                    return bad("two boxes share a cell");
                }
                if boxes.iter().any(|b| walls.contains(b)) || walls.contains(&self.player) {
                    return bad("a box or the player is inside a wall");
                }
                let mut s = SokobanState {
                    walls,
                    boxes,
                    targets: self.targets.iter().cloned().collect(),
                    player: self.player.clone(),
                    floor: self.floor,
                    status: Status::Playing,
                    moves: 0,
                };
                if s.boxes.contains(&s.player) || s.is_solid(&s.player) {
                    return bad("the player is not on an open cell");
                }
                s.settle();
                Ok(World::Sokoban(s))
            }
            WorldId::Rogue => {
                if !(MIN_DIM..=MAX_DIM).contains(&self.d) {
                    return bad("roguelike levels need d in 3..=6");
                }
                let s = RogueState {
                    walls,
                    radius: self.radius,
                    ..RogueState::open(self.d, self.player.clone(), self.enemies.clone())
                };
                let mut seen = BTreeSet::new();
                for c in std::iter::once(&s.player).chain(&s.enemies) {
                    if s.is_wall(c) || !seen.insert(c.clone()) {
                        return bad("creatures must stand on distinct open cells");
                    }
                }
                Ok(World::Rogue(s))
            }
            other => Err(WorldError::BadLevel(format!("no level files for {other}"))),
        }
    }
}
