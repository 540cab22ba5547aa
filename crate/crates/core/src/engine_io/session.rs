//! One player's game: a world, the patch it is shown on and the camera.
//!
//! After each move the view slides to the new tile in `anim_steps`
//! frames, then the patch is rebuilt around the new focus tile with the
//! camera rotation carried over. Rebuilding keeps every placement close to
//! the identity, so precision does not degrade over long games.

use serde_json::{json, Value};

use crate::hypmath::{reorthonormalize, translation_to, HIsometry, HPoint};
use crate::scene2d::{build_frame, pick, recenter_steps, Camera2D, Event, SceneFrame, DEFAULT_CUTOFF};
use crate::tiling2d::{canonical_dirs, SignedAxis, TileId, TilePatch};
use crate::worlds::{Action, Level, World, WorldError, WorldId};

use super::protocol::{parse_command, Command, FrameMessage, Message, ProtocolError};
use super::EngineError;

/// Upper bound for the `cutoff` slider; patches grow exponentially with it.
pub const MAX_CUTOFF: f64 = 8.0;

#[derive(Debug, Clone, PartialEq)]
pub struct SessionConfig {
    pub world: WorldId,
    pub d: usize,
    pub seed: u64,
    /// Tiles farther than this from the view center are not drawn.
    pub cutoff: f64,
    /// Frames per recentering animation, the final frame included.
    pub anim_steps: usize,
    /// Replaces the built-in layout of `world` when set.
    pub level: Option<Level>,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            world: WorldId::Grid,
            d: 3,
            seed: 0,
            cutoff: DEFAULT_CUTOFF,
            anim_steps: 8,
            level: None,
        }
    }
}

impl SessionConfig {
    pub fn new(world: WorldId, d: usize, seed: u64) -> Self {
        SessionConfig {
            world,
            d,
            seed,
            ..SessionConfig::default()
        }
    }
}

#[derive(Debug, Clone)]
pub struct Session {
    config: SessionConfig,
    world: World,
    patch: TilePatch,
    camera: Camera2D,
    frame_seq: u64,
    /// Last frame sent; clicks are resolved against it.
    last: SceneFrame,
    closed: bool,
}

fn rejected(message: impl std::fmt::Display) -> Event {
    let mut e = Event::info(message.to_string());
    e.payload["rejected"] = Value::Bool(true);
    e
}

impl Session {
    pub fn new(config: SessionConfig) -> Result<Self, EngineError> {
        if config.anim_steps == 0 {
            return Err(EngineError::Config("anim_steps must be positive".into()));
        }
        if !(config.cutoff > 0.0 && config.cutoff <= MAX_CUTOFF) {
            return Err(EngineError::Config(format!("cutoff must be in (0, {MAX_CUTOFF}]")));
        }
        let world = match &config.level {
            Some(level) => World::from_level(level)?,
            None => World::new(config.world, config.d, config.seed)?,
        };
        let mut s = Session {
            patch: TilePatch::rooted(world.view_d(), world.focus(), canonical_dirs(world.view_d()))?,
            camera: Camera2D {
                altitude_scale: world.altitude_scale(),
                ..Camera2D::default()
            },
            world,
            config,
            frame_seq: 0,
            last: SceneFrame::default(),
            closed: false,
        };
        s.patch.expand_within(&HPoint::origin(), s.config.cutoff)?;
        Ok(s)
    }

    pub fn config(&self) -> &SessionConfig {
        &self.config
    }

    pub fn world(&self) -> &World {
        &self.world
    }

    pub fn patch(&self) -> &TilePatch {
        &self.patch
    }

    pub fn camera(&self) -> &Camera2D {
        &self.camera
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// The current view as a fresh frame.
    pub fn current_frame(&mut self) -> Result<Message, EngineError> {
        self.emit(&self.camera.clone(), Vec::new(), false)
    }

    fn emit(&mut self, camera: &Camera2D, events: Vec<Event>, animating: bool) -> Result<Message, EngineError> {
        let world = &self.world;
        let mut frame = build_frame(&self.patch, camera, &|c| world.style(c), self.config.cutoff)?;
        self.frame_seq += 1;
        frame.frame_seq = self.frame_seq;
        frame.events = events;
        if !animating {
            self.last = frame.clone();
        }
        Ok(Message::Frame(FrameMessage {
            frame,
            world: self.world.id(),
            d: self.world.d(),
            status: self.world.status(),
            hud: self.world.hud(),
            focus: self.world.focus(),
            animating,
        }))
    }

    /// Replaces the patch with one rooted at the world's focus.
    fn reroot(&mut self, edge_dirs: Vec<SignedAxis>) -> Result<(), EngineError> {
        let d = self.world.view_d();
        self.patch = TilePatch::rooted(d, self.world.focus(), edge_dirs)?;
        self.patch.expand_within(&HPoint::origin(), self.config.cutoff)?;
        Ok(())
    }

    /// Slides the view to the neighbor across `dir`, then re-roots there.
    fn recenter(&mut self, dir: SignedAxis, out: &mut Vec<Message>, events: Vec<Event>) -> Result<(), EngineError> {
        let root = self.patch.central();
        let k = self.patch.tile(root)?.edge_of(dir).ok_or(crate::tiling2d::TilingError::BadLabeling)?;
        let target = self.patch.neighbor(root, k)?;
        let cams = recenter_steps(&self.camera, &self.patch, target, self.config.anim_steps)?;
        for cam in &cams[..cams.len() - 1] {
            out.push(self.emit(cam, Vec::new(), true)?);
        }
        let tile = self.patch.tile(target)?;
        let edge_dirs = tile.edge_dirs.clone();
        let view = cams[cams.len() - 1].view.compose(&tile.placement);
        self.camera.view = pure_rotation(&view)?;
        self.reroot(edge_dirs)?;
        out.push(self.emit(&self.camera.clone(), events, false)?);
        Ok(())
    }

    fn apply(&mut self, action: Action, out: &mut Vec<Message>) -> Result<(), EngineError> {
        let step = match self.world.act(&action) {
            Ok(step) => step,
            Err(e) => {
                out.push(self.emit(&self.camera.clone(), vec![rejected(&e)], false)?);
                return Ok(());
            }
        };
        let before = self.world.focus();
        self.world = step.world;
        match step.moved {
            Some(dir) if dir.axis() < self.world.view_d() => self.recenter(dir, out, step.events)?,
            _ => {
                if self.world.focus() != before {
                    let dirs = self.patch.tile(self.patch.central())?.edge_dirs.clone();
                    self.reroot(dirs)?;
                }
                out.push(self.emit(&self.camera.clone(), step.events, false)?);
            }
        }
        Ok(())
    }

    /// Maps a clicked tile to a move or an attack on the matching neighbor.
    fn click(&mut self, id: TileId, out: &mut Vec<Message>) -> Result<(), EngineError> {
        let root = self.patch.central();
        let central = self.patch.tile(root)?;
        if id == root {
            return self.reject("already here", out);
        }
        let Some(k) = central.links.iter().position(|l| l.is_some_and(|l| l.tile == id)) else {
            return self.reject("only neighboring tiles can be clicked", out);
        };
        let dir = central.edge_dirs[k];
        if dir.axis() >= self.world.d() {
            return self.reject("no move along that tile", out);
        }
        let coord = &self.patch.tile(id)?.coord;
        let action = match &self.world {
            World::Rogue(r) if r.enemies.contains(coord) => Action::Attack(dir),
            _ => Action::Move(dir),
        };
        self.apply(action, out)
    }

    fn reject(&mut self, why: &str, out: &mut Vec<Message>) -> Result<(), EngineError> {
        out.push(self.emit(&self.camera.clone(), vec![rejected(why)], false)?);
        Ok(())
    }

    fn restart(&mut self, config: SessionConfig) -> Result<(), EngineError> {
        *self = Session::new(config)?;
        Ok(())
    }

    fn try_handle(&mut self, cmd: &Command, out: &mut Vec<Message>) -> Result<(), EngineError> {
        match cmd {
            Command::Move { dir, sign } | Command::Attack { dir, sign } => {
                if *dir >= self.world.d() {
                    out.push(Message::Error(ProtocolError::new(
                        "/dir",
                        WorldError::BadAxis {
                            axis: *dir,
                            d: self.world.d(),
                        }
                        .to_string(),
                    )));
                    return Ok(());
                }
                let sa = SignedAxis::new(*dir, i32::from(*sign));
                let action = match cmd {
                    Command::Move { .. } => Action::Move(sa),
                    _ => Action::Attack(sa),
                };
                self.apply(action, out)
            }
            Command::Wait => self.apply(Action::Wait, out),
            Command::Click { tile_id, at } => {
                let id = match (tile_id, at) {
                    (Some(id), _) => Some(*id).filter(|&id| id < self.patch.len()),
                    (None, Some(at)) => pick(&self.last, *at),
                    (None, None) => None,
                };
                match id {
                    Some(id) => self.click(id, out),
                    None => self.reject("no tile there", out),
                }
            }
            Command::Slider { name, value } => match name.as_str() {
                "altitude_scale" if (0.0..=4.0).contains(value) => {
                    self.camera.altitude_scale = *value;
                    out.push(self.emit(&self.camera.clone(), Vec::new(), false)?);
                    Ok(())
                }
                "cutoff" if *value > 0.0 && *value <= MAX_CUTOFF => {
                    self.config.cutoff = *value;
                    self.patch.expand_within(&HPoint::origin(), *value)?;
                    out.push(self.emit(&self.camera.clone(), Vec::new(), false)?);
                    Ok(())
                }
                "altitude_scale" | "cutoff" => self.reject(
                    &WorldError::BadSlider {
                        name: name.clone(),
                        value: *value,
                    }
                    .to_string(),
                    out,
                ),
                _ => self.apply(
                    Action::Slider {
                        name: name.clone(),
                        value: *value,
                    },
                    out,
                ),
            },
            Command::Mode { world, d } => {
                let config = SessionConfig {
                    world: *world,
                    d: d.unwrap_or(world.default_d()),
                    level: None,
                    ..self.config.clone()
                };
                match Session::new(config) {
                    Ok(s) => {
                        *self = Session { frame_seq: self.frame_seq, ..s };
                        out.push(self.current_frame()?);
                        Ok(())
                    }
                    Err(EngineError::World(e)) => self.reject(&e.to_string(), out),
                    Err(e) => Err(e),
                }
            }
            Command::Reset { seed } => {
                let seq = self.frame_seq;
                self.restart(SessionConfig {
                    seed: *seed,
                    ..self.config.clone()
                })?;
                self.frame_seq = seq;
                out.push(self.current_frame()?);
                Ok(())
            }
            Command::Quit => {
                self.closed = true;
                out.push(Message::Bye);
                Ok(())
            }
        }
    }

    /// Runs one command and returns the messages to send, in order.
    pub fn handle(&mut self, cmd: &Command) -> Vec<Message> {
        let mut out = Vec::new();
        if self.closed {
            return vec![Message::Error(ProtocolError::new("", "session is closed"))];
        }
        if let Err(e) = self.try_handle(cmd, &mut out) {
            out.push(Message::Error(ProtocolError::new("", e.to_string())));
        }
        out
    }

    /// Parses and runs one protocol line.
    pub fn handle_line(&mut self, line: &str) -> Vec<Message> {
        match parse_command(line) {
            Ok(cmd) => self.handle(&cmd),
            Err(e) => vec![Message::Error(e)],
        }
    }

    /// World state plus status and HUD, for headless runs.
    pub fn state_json(&self) -> Value {
        json!({
            "world": self.world.id(),
            "d": self.world.d(),
            "status": self.world.status(),
            "hud": self.world.hud(),
            "focus": self.world.focus(),
            "state": self.world,
        })
    }
}

/// Drops whatever translation rounding left in `m`, keeping its rotation
/// about the origin.
fn pure_rotation(m: &HIsometry<3>) -> Result<HIsometry<3>, EngineError> {
    let m = reorthonormalize(m)?;
    let drift = m.apply(&HPoint::origin());
    Ok(reorthonormalize(&translation_to(&drift).inverse().compose(&m))?)
}
