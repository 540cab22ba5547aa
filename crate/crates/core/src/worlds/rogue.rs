//! A minimal roguelike on `Z^d`.
//!
//! The player and the enemies alternate turns. On its turn a creature moves
//! to a free adjacent cell or attacks an adjacent creature, destroying it.
//! The player loses when they end their turn next to an enemy and wins
//! once every enemy is destroyed. Enemies just walk toward the player.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::color::Rgb;
use crate::scene2d::{LabelAnchor, TileStyle};
use crate::tiling2d::{step, Coord, SignedAxis};

use super::{l1, Action, Status, WorldError, ENEMY_GLYPH, PLAYER_GLYPH};

/// Half-width of the default arena.
pub const ARENA_RADIUS: i64 = 6;
/// Fraction of arena cells that are walls.
pub const WALL_DENSITY: f64 = 0.1;

const FLOOR: Rgb = Rgb::new(70, 70, 85);
const WALL: Rgb = Rgb::new(110, 80, 60);

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RogueState {
    pub d: usize,
    pub player: Coord,
    pub enemies: Vec<Coord>,
    /// Walls listed explicitly, on top of the arena boundary and the
    /// seeded random walls.
    pub walls: BTreeSet<Coord>,
    /// Cells with a coordinate beyond this are walls.
    pub radius: i64,
    pub wall_density: f64,
    pub rng_seed: u64,
    pub status: Status,
    pub turn: u64,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Deterministic value in `[0, 1)` for a cell.
fn cell_noise(seed: u64, z: &[i64]) -> f64 {
    let mut h = splitmix64(seed);
    for &x in z {
        h = splitmix64(h ^ x as u64);
    }
    (h >> 11) as f64 / (1u64 << 53) as f64
}

impl RogueState {
    /// Open arena without random walls.
    pub fn open(d: usize, player: Coord, enemies: Vec<Coord>) -> Self {
        RogueState {
            d,
            player,
            enemies,
            walls: BTreeSet::new(),
            radius: ARENA_RADIUS,
            wall_density: 0.0,
            rng_seed: 0,
            status: Status::Playing,
            turn: 0,
        }
    }

    /// The default arena: a box of radius [`ARENA_RADIUS`] with seeded
    /// random walls and `d` enemies at least four steps from the player.
    pub fn arena(d: usize, seed: u64) -> Self {
        let mut s = RogueState {
            wall_density: WALL_DENSITY,
            rng_seed: seed,
            ..RogueState::open(d, vec![0; d], Vec::new())
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        while s.enemies.len() < d {
            let z: Coord = (0..d).map(|_| rng.gen_range(-s.radius..=s.radius)).collect();
            if l1(&z, &s.player) >= 4 && !s.is_wall(&z) && !s.enemies.contains(&z) {
                s.enemies.push(z);
            }
        }
        s
    }

    /// The two-attackers position: enemies on two different axes next to
    /// the player, in an open three-dimensional arena.
    pub fn two_attackers() -> Self {
        RogueState::open(3, vec![0, 0, 0], vec![vec![1, 0, 0], vec![0, 1, 0]])
    }

    pub fn is_wall(&self, z: &[i64]) -> bool {
        if z.iter().any(|x| x.abs() > self.radius) || self.walls.contains(z) {
            return true;
        }
        // the start cell and its neighbors are always open
        self.wall_density > 0.0
            && l1(z, &vec![0; self.d]) > 1
            && cell_noise(self.rng_seed, z) < self.wall_density
    }

    fn enemy_at(&self, z: &[i64]) -> Option<usize> {
        self.enemies.iter().position(|e| e == z)
    }

    fn occupied(&self, z: &[i64]) -> bool {
        self.is_wall(z) || self.player == z || self.enemy_at(z).is_some()
    }

    /// Player action followed by the enemies' turn.
    pub fn step(&self, action: &Action) -> Result<RogueState, WorldError> {
        if self.status != Status::Playing {
            return Err(WorldError::Finished);
        }
        let mut s = self.clone();
        match *action {
            Action::Move(dir) => {
                let to = step(&s.player, dir);
                if s.is_wall(&to) {
                    return Err(WorldError::Blocked(dir));
                }
                if s.enemy_at(&to).is_some() {
                    return Err(WorldError::Occupied(dir));
                }
                s.player = to;
            }
            Action::Attack(dir) => {
                let at = step(&s.player, dir);
                let i = s.enemy_at(&at).ok_or(WorldError::NoTarget(dir))?;
                s.enemies.remove(i);
            }
            Action::Wait => {}
            Action::Slider { .. } => {
                return Err(WorldError::Unsupported {
                    action: "slider",
                    world: super::WorldId::Rogue,
                })
            }
        }
        s.turn += 1;
        if s.enemies.is_empty() {
            s.status = Status::Won;
            return Ok(s);
        }
        if s.enemies.iter().any(|e| l1(e, &s.player) == 1) {
            s.status = Status::Lost;
            return Ok(s);
        }
        s.move_enemies();
        Ok(s)
    }

    /// Each enemy, in list order, takes the first free step that brings it
    /// closer to the player, trying larger gaps first and then lower axes.
    fn move_enemies(&mut self) {
        for i in 0..self.enemies.len() {
            let e = self.enemies[i].clone();
            let mut axes: Vec<usize> = (0..self.d).filter(|&a| e[a] != self.player[a]).collect();
            axes.sort_by_key(|&a| (std::cmp::Reverse((e[a] - self.player[a]).abs()), a));
            for a in axes {
                let dir = SignedAxis::new(a, (self.player[a] - e[a]).signum() as i32);
                let to = step(&e, dir);
                if !self.occupied(&to) {
                    self.enemies[i] = to;
                    break;
                }
            }
        }
    }

    pub fn style(&self, coord: &[i64]) -> TileStyle {
        if self.is_wall(coord) {
            return TileStyle::plain(WALL);
        }
        let style = TileStyle::plain(FLOOR);
        if coord == self.player.as_slice() {
            style.label(PLAYER_GLYPH, LabelAnchor::Center, Rgb::GOLD)
        } else if self.enemy_at(coord).is_some() {
            style.label(ENEMY_GLYPH, LabelAnchor::Center, Rgb::GREEN)
        } else {
            style
        }
    }
}
