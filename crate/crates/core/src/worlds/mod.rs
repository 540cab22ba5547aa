//! Small games and tools played on `Z^d`, as pure state machines.
//!
//! Every world maps `(state, action)` to a new state or a rejection and
//! exposes a style function that tells [`crate::scene2d`] how to paint each
//! coordinate. Nothing here knows about tiles or geometry; the session in
//! [`crate::engine_io`] does the navigation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::color::Rgb;
use crate::scene2d::{Event, EventKind, TileStyle, DEFAULT_ALTITUDE_SCALE};
use crate::tiling2d::{Coord, SignedAxis, MAX_DIM, MIN_DIM};

pub mod colorpicker;
pub mod level;
pub mod pitch;
pub mod puzzle;
pub mod rogue;
pub mod sokoban;

pub use colorpicker::ColorPickerState;
pub use level::Level;
pub use pitch::{pitch_ratio, PitchState};
pub use puzzle::{CellKind, PuzzleKind, PuzzleState};
pub use rogue::RogueState;
pub use sokoban::SokobanState;

/// Label drawn on the player's tile.
pub const PLAYER_GLYPH: &str = "★";
/// Label drawn on enemy tiles.
pub const ENEMY_GLYPH: &str = "★";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WorldError {
    #[error("{world} needs d in {allowed}, got {got}")]
    BadDimension {
        world: WorldId,
        allowed: &'static str,
        got: usize,
    },
    #[error("axis {axis} out of range for d = {d}")]
    BadAxis { axis: usize, d: usize },
    #[error("unknown world {0:?}")]
    UnknownWorld(String),
    #[error("blocked: cannot move {0}")]
    Blocked(SignedAxis),
    #[error("cell in direction {0} is occupied")]
    Occupied(SignedAxis),
    #[error("nothing to attack in direction {0}")]
    NoTarget(SignedAxis),
    #[error("the game is over")]
    Finished,
    #[error("{action} is not available in {world}")]
    Unsupported { action: &'static str, world: WorldId },
    #[error("slider {name:?} cannot take value {value}")]
    BadSlider { name: String, value: f64 },
    #[error("bad level: {0}")]
    BadLevel(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WorldId {
    /// Plain coordinate display, any `d`.
    Grid,
    Colorpicker,
    Pitch,
    Rogue,
    House,
    Hypercube,
    Orthoplex,
    Sokoban,
}

impl WorldId {
    pub const ALL: [WorldId; 8] = [
        WorldId::Grid,
        WorldId::Colorpicker,
        WorldId::Pitch,
        WorldId::Rogue,
        WorldId::House,
        WorldId::Hypercube,
        WorldId::Orthoplex,
        WorldId::Sokoban,
    ];

    pub fn name(self) -> &'static str {
        match self {
            WorldId::Grid => "grid",
            WorldId::Colorpicker => "colorpicker",
            WorldId::Pitch => "pitch",
            WorldId::Rogue => "rogue",
            WorldId::House => "house",
            WorldId::Hypercube => "hypercube",
            WorldId::Orthoplex => "orthoplex",
            WorldId::Sokoban => "sokoban",
        }
    }

    /// Dimension used when none is given.
    pub fn default_d(self) -> usize {
        match self {
            WorldId::Colorpicker => 3,
            WorldId::Grid | WorldId::Rogue => 3,
            _ => 4,
        }
    }

    fn check_d(self, d: usize) -> Result<(), WorldError> {
        let (ok, allowed) = match self {
            WorldId::Colorpicker => (d == 3, "{3}"),
            WorldId::Pitch | WorldId::House | WorldId::Sokoban => (d == 4, "{4}"),
            _ => ((MIN_DIM..=MAX_DIM).contains(&d), "3..=6"),
        };
        if ok {
            Ok(())
        } else {
            Err(WorldError::BadDimension {
                world: self,
                allowed,
                got: d,
            })
        }
    }
}

impl fmt::Display for WorldId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WorldId {
    type Err = WorldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        WorldId::ALL
            .into_iter()
            .find(|w| w.name() == s)
            .ok_or_else(|| WorldError::UnknownWorld(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Playing,
    Won,
    Lost,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Action {
    Move(SignedAxis),
    Attack(SignedAxis),
    Wait,
    Slider { name: String, value: f64 },
}

impl Action {
    fn name(&self) -> &'static str {
        match self {
            Action::Move(_) => "move",
            Action::Attack(_) => "attack",
            Action::Wait => "wait",
            Action::Slider { .. } => "slider",
        }
    }
}

/// Result of a successful action.
#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    pub world: World,
    /// Direction the view focus moved in, if it moved.
    pub moved: Option<SignedAxis>,
    pub events: Vec<Event>,
}

impl Step {
    fn stay(world: World) -> Self {
        Step {
            world,
            moved: None,
            events: Vec::new(),
        }
    }
}

/// Values shown next to the view.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Hud {
    pub turn: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub color: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub step: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ratio: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub freq: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub enemies: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub boxes_on_targets: Option<[usize; 2]>,
}

/// Coordinate display for the grid world.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridState {
    pub d: usize,
    pub focus: Coord,
    pub turn: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum World {
    Grid(GridState),
    Colorpicker(ColorPickerState),
    Pitch(PitchState),
    Rogue(RogueState),
    Puzzle(PuzzleState),
    Sokoban(SokobanState),
}

impl World {
    /// Fresh world; `seed` only matters for the roguelike.
    pub fn new(id: WorldId, d: usize, seed: u64) -> Result<World, WorldError> {
        id.check_d(d)?;
        Ok(match id {
            WorldId::Grid => World::Grid(GridState {
                d,
                focus: vec![0; d],
                turn: 0,
            }),
            WorldId::Colorpicker => World::Colorpicker(ColorPickerState::default()),
            WorldId::Pitch => World::Pitch(PitchState::default()),
            WorldId::Rogue => World::Rogue(RogueState::arena(d, seed)),
            WorldId::House => World::Puzzle(PuzzleState::house()),
            WorldId::Hypercube => World::Puzzle(PuzzleState::center(PuzzleKind::Hypercube, d, 4)),
            WorldId::Orthoplex => World::Puzzle(PuzzleState::center(PuzzleKind::Orthoplex, d, 6)),
            WorldId::Sokoban => World::Sokoban(SokobanState::demo()),
        })
    }

    pub fn from_level(level: &Level) -> Result<World, WorldError> {
        level.build()
    }

    pub fn id(&self) -> WorldId {
        match self {
            World::Grid(_) => WorldId::Grid,
            World::Colorpicker(_) => WorldId::Colorpicker,
            World::Pitch(_) => WorldId::Pitch,
            World::Rogue(_) => WorldId::Rogue,
            World::Puzzle(p) => match p.kind {
                PuzzleKind::House => WorldId::House,
                PuzzleKind::Hypercube => WorldId::Hypercube,
                PuzzleKind::Orthoplex => WorldId::Orthoplex,
            },
            World::Sokoban(_) => WorldId::Sokoban,
        }
    }

    /// Dimension of the world's own grid.
    pub fn d(&self) -> usize {
        match self {
            World::Grid(g) => g.d,
            World::Colorpicker(_) => 3,
            World::Pitch(_) => 4,
            World::Rogue(r) => r.d,
            World::Puzzle(p) => p.d,
            World::Sokoban(_) => 4,
        }
    }

    /// Dimension of the tiling the world is shown on. Sokoban shows its
    /// altitude axis through the projection instead of the tiling.
    pub fn view_d(&self) -> usize {
        match self {
            World::Sokoban(_) => 3,
            w => w.d(),
        }
    }

    /// Coordinate of the tile the view is centered on.
    pub fn focus(&self) -> Coord {
        match self {
            World::Grid(g) => g.focus.clone(),
            World::Colorpicker(_) => vec![0; 3],
            World::Pitch(p) => p.cell.clone(),
            World::Rogue(r) => r.player.clone(),
            World::Puzzle(p) => p.player.clone(),
            World::Sokoban(s) => s.player[..3].to_vec(),
        }
    }

    pub fn status(&self) -> Status {
        match self {
            World::Rogue(r) => r.status,
            World::Puzzle(p) => p.status,
            World::Sokoban(s) => s.status,
            _ => Status::Playing,
        }
    }

    /// Slope of the altitude-dependent projection for this world.
    pub fn altitude_scale(&self) -> f64 {
        match self {
            World::Sokoban(_) => DEFAULT_ALTITUDE_SCALE,
            _ => 0.0,
        }
    }

    /// Applies `action`. Rejections leave `self` untouched.
    pub fn act(&self, action: &Action) -> Result<Step, WorldError> {
        if let Action::Move(dir) | Action::Attack(dir) = action {
            if dir.axis() >= self.d() {
                return Err(WorldError::BadAxis {
                    axis: dir.axis(),
                    d: self.d(),
                });
            }
        }
        let unsupported = || WorldError::Unsupported {
            action: action.name(),
            world: self.id(),
        };
        match (self, action) {
            (World::Grid(g), Action::Move(dir)) => {
                let mut g = g.clone();
                g.focus = crate::tiling2d::step(&g.focus, *dir);
                g.turn += 1;
                Ok(Step {
                    world: World::Grid(g),
                    moved: Some(*dir),
                    events: Vec::new(),
                })
            }
            (World::Colorpicker(c), Action::Move(dir)) => {
                let next = c.step(*dir);
                let moved = (next.current != c.current).then_some(*dir);
                let mut events = Vec::new();
                if moved.is_none() {
                    events.push(Event::info("clamped at the edge of the color cube"));
                }
                Ok(Step {
                    world: World::Colorpicker(next),
                    moved,
                    events,
                })
            }
            (World::Colorpicker(c), Action::Slider { name, value }) if name == "step" => {
                let next = c.with_step(*value).ok_or_else(|| WorldError::BadSlider {
                    name: name.clone(),
                    value: *value,
                })?;
                Ok(Step::stay(World::Colorpicker(next)))
            }
            (World::Pitch(p), Action::Move(dir)) => {
                let next = p.step(*dir);
                let events = vec![next.sound_event()];
                Ok(Step {
                    world: World::Pitch(next),
                    moved: Some(*dir),
                    events,
                })
            }
            (World::Pitch(p), Action::Slider { name, value }) if name == "base_freq" => {
                let next = p.with_base(*value).ok_or_else(|| WorldError::BadSlider {
                    name: name.clone(),
                    value: *value,
                })?;
                Ok(Step::stay(World::Pitch(next)))
            }
            (World::Rogue(r), Action::Move(_) | Action::Attack(_) | Action::Wait) => {
                let next = r.step(action)?;
                let moved = match action {
                    Action::Move(dir) => Some(*dir),
                    _ => None,
                };
                let events = status_events(r.status, next.status);
                Ok(Step {
                    world: World::Rogue(next),
                    moved,
                    events,
                })
            }
            (World::Puzzle(p), Action::Move(dir)) => {
                let next = p.step(*dir)?;
                let events = status_events(p.status, next.status);
                Ok(Step {
                    world: World::Puzzle(next),
                    moved: Some(*dir),
                    events,
                })
            }
            (World::Sokoban(s), Action::Move(dir)) => {
                let next = s.step(*dir)?;
                let moved = (next.player[..3] != s.player[..3]).then_some(*dir);
                let events = status_events(s.status, next.status);
                Ok(Step {
                    world: World::Sokoban(next),
                    moved,
                    events,
                })
            }
            _ => Err(unsupported()),
        }
    }

    /// How to paint the tile at `coord` (a coordinate of the view tiling).
    pub fn style(&self, coord: &[i64]) -> TileStyle {
        match self {
            World::Grid(g) => grid_style(g, coord),
            World::Colorpicker(c) => c.style(coord),
            World::Pitch(p) => p.style(coord),
            World::Rogue(r) => r.style(coord),
            World::Puzzle(p) => p.style(coord),
            World::Sokoban(s) => s.style(coord),
        }
    }

    pub fn hud(&self) -> Hud {
        match self {
            World::Grid(g) => Hud {
                turn: g.turn,
                ..Hud::default()
            },
            World::Colorpicker(c) => Hud {
                turn: c.turn,
                color: Some(c.color().hex()),
                step: Some(c.step),
                ..Hud::default()
            },
            World::Pitch(p) => Hud {
                turn: p.turn,
                ratio: Some(p.ratio().to_string()),
                freq: Some(p.frequency()),
                ..Hud::default()
            },
            World::Rogue(r) => Hud {
                turn: r.turn,
                enemies: Some(r.enemies.len()),
                ..Hud::default()
            },
            World::Puzzle(p) => Hud {
                turn: p.moves,
                ..Hud::default()
            },
            World::Sokoban(s) => Hud {
                turn: s.moves,
                boxes_on_targets: Some([s.boxes_on_targets(), s.targets.len()]),
                ..Hud::default()
            },
        }
    }
}

fn status_events(before: Status, after: Status) -> Vec<Event> {
    match (before, after) {
        (Status::Playing, Status::Won) => vec![Event {
            kind: EventKind::Win,
            payload: serde_json::json!({}),
        }],
        (Status::Playing, Status::Lost) => vec![Event {
            kind: EventKind::Lose,
            payload: serde_json::json!({}),
        }],
        _ => Vec::new(),
    }
}

fn grid_style(g: &GridState, coord: &[i64]) -> TileStyle {
    let parity = coord.iter().sum::<i64>().rem_euclid(2) == 0;
    let fill = if parity { Rgb::new(200, 200, 210) } else { Rgb::new(150, 150, 170) };
    let text = coord.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    let style = TileStyle::plain(fill).label(text, crate::scene2d::LabelAnchor::Center, Rgb::BLACK);
    if coord == g.focus.as_slice() {
        TileStyle { fill: Rgb::GOLD, ..style }
    } else {
        style
    }
}

/// `|a − b|₁`.
pub fn l1(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

/// Hue in `[0, 1)` at full saturation and the given value.
pub(crate) fn hue(h: f64, value: f64) -> Rgb {
    let h6 = h.rem_euclid(1.0) * 6.0;
    let x = 1.0 - (h6 % 2.0 - 1.0).abs();
    let (r, g, b) = match h6 as u32 {
        0 => (1.0, x, 0.0),
        1 => (x, 1.0, 0.0),
        2 => (0.0, 1.0, x),
        3 => (0.0, x, 1.0),
        4 => (x, 0.0, 1.0),
        _ => (1.0, 0.0, x),
    };
    let c = |v: f64| (v * value * 255.0).round() as u8;
    Rgb::new(c(r), c(g), c(b))
}
