//! Commands in, frames out: the newline-delimited JSON protocol.
//!
//! Every command is one JSON object with a `"type"` field:
//!
//! ```json
//! {"type":"move","dir":0,"sign":1}
//! {"type":"attack","dir":2,"sign":-1}
//! {"type":"wait"}
//! {"type":"click","at":[0.12,-0.3]}
//! {"type":"click","tile_id":4}
//! {"type":"slider","name":"step","value":8}
//! {"type":"mode","world":"rogue","d":4}
//! {"type":"reset","seed":42}
//! {"type":"quit"}
//! ```
//!
//! `dir` is a 0-based axis index. The engine answers with `frame` messages
//! (several per command while the view animates), `error` messages for
//! commands it could not parse, and a final `bye`.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::hypmath::DiskPoint;
use crate::scene2d::SceneFrame;
use crate::tiling2d::{Coord, TileId};
use crate::worlds::{Hud, Status, WorldId};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Command {
    Move {
        dir: usize,
        sign: i8,
    },
    Attack {
        dir: usize,
        sign: i8,
    },
    Wait,
    /// Either a tile id or a point of the unit disk.
    Click {
        #[serde(skip_serializing_if = "Option::is_none")]
        tile_id: Option<TileId>,
        #[serde(skip_serializing_if = "Option::is_none")]
        at: Option<DiskPoint>,
    },
    Slider {
        name: String,
        value: f64,
    },
    Mode {
        world: WorldId,
        #[serde(skip_serializing_if = "Option::is_none")]
        d: Option<usize>,
    },
    Reset {
        seed: u64,
    },
    Quit,
}

/// A rejected command, with a JSON pointer to the offending field.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[error("{message} (at {pointer:?})")]
pub struct ProtocolError {
    pub pointer: String,
    pub message: String,
}

impl ProtocolError {
    pub fn new(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        ProtocolError {
            pointer: pointer.into(),
            message: message.into(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DirArgs {
    dir: usize,
    sign: i8,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NoArgs {}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ClickArgs {
    #[serde(default)]
    tile_id: Option<TileId>,
    #[serde(default)]
    at: Option<DiskPoint>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SliderArgs {
    name: String,
    value: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModeArgs {
    world: WorldId,
    #[serde(default)]
    d: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ResetArgs {
    seed: u64,
}

const VARIANTS: [&str; 8] = ["move", "attack", "wait", "click", "slider", "mode", "reset", "quit"];

fn pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    out
}

fn args<T: DeserializeOwned>(fields: Map<String, Value>) -> Result<T, ProtocolError> {
    serde_path_to_error::deserialize(Value::Object(fields)).map_err(|e| {
        let p = pointer(e.path());
        let msg = e.into_inner().to_string();
        // unknown fields are reported by name, not by path
        match msg.strip_prefix("unknown field `") {
            Some(rest) => {
                let name = rest.split('`').next().unwrap_or_default();
                ProtocolError::new(format!("/{name}"), msg.clone())
            }
            None => ProtocolError::new(p, msg),
        }
    })
}

fn check_sign(sign: i8) -> Result<(), ProtocolError> {
    if sign == 1 || sign == -1 {
        Ok(())
    } else {
        Err(ProtocolError::new("/sign", format!("sign must be 1 or -1, got {sign}")))
    }
}

/// Parses one command. Errors carry a JSON pointer into the input.
pub fn parse_command(text: &str) -> Result<Command, ProtocolError> {
    let v: Value = serde_json::from_str(text).map_err(|e| ProtocolError::new("", e.to_string()))?;
    let Value::Object(mut fields) = v else {
        return Err(ProtocolError::new("", "command must be a JSON object"));
    };
    let kind = match fields.remove("type") {
        Some(Value::String(s)) => s,
        Some(_) => return Err(ProtocolError::new("/type", "type must be a string")),
        None => return Err(ProtocolError::new("/type", "missing command type")),
    };
    let cmd = match kind.as_str() {
        "move" | "attack" => {
            let a: DirArgs = args(fields)?;
            check_sign(a.sign)?;
            if kind == "move" {
                Command::Move { dir: a.dir, sign: a.sign }
            } else {
                Command::Attack { dir: a.dir, sign: a.sign }
            }
        }
        "wait" => {
            args::<NoArgs>(fields)?;
            Command::Wait
        }
        "quit" => {
            args::<NoArgs>(fields)?;
            Command::Quit
        }
        "click" => {
            let a: ClickArgs = args(fields)?;
            if a.tile_id.is_some() == a.at.is_some() {
                return Err(ProtocolError::new("", "click needs exactly one of tile_id and at"));
            }
            Command::Click {
                tile_id: a.tile_id,
                at: a.at,
            }
        }
        "slider" => {
            let a: SliderArgs = args(fields)?;
            if !a.value.is_finite() {
                return Err(ProtocolError::new("/value", "slider value must be finite"));
            }
            Command::Slider {
                name: a.name,
                value: a.value,
            }
        }
        "mode" => {
            let a: ModeArgs = args(fields)?;
            Command::Mode { world: a.world, d: a.d }
        }
        "reset" => {
            let a: ResetArgs = args(fields)?;
            Command::Reset { seed: a.seed }
        }
        other => {
            return Err(ProtocolError::new(
                "/type",
                format!("unknown command {other:?}, expected one of {}", VARIANTS.join(", ")),
            ))
        }
    };
    Ok(cmd)
}

/// Parses a line of a play script. Besides JSON commands, scripts accept
/// a shorthand with 1-based axes: `+2`, `-1`, `wait`, `attack +3`,
/// `click 7`, `slider step 8`, `mode rogue 4`, `reset 5`, `quit`. Blank
/// lines and lines starting with `#` are skipped.
pub fn parse_script_line(line: &str) -> Result<Option<Command>, ProtocolError> {
    let line = line.trim();
    if line.is_empty() || line.starts_with('#') {
        return Ok(None);
    }
    if line.starts_with('{') {
        return parse_command(line).map(Some);
    }
    let bad = || ProtocolError::new("", format!("cannot read script line {line:?}"));
    let axis = |tok: &str| -> Result<(usize, i8), ProtocolError> {
        let (sign, rest) = match tok.as_bytes().first() {
            Some(b'+') => (1, &tok[1..]),
            Some(b'-') => (-1, &tok[1..]),
            _ => return Err(bad()),
        };
        let a: usize = rest.parse().map_err(|_| bad())?;
        if a == 0 {
            return Err(bad());
        }
        Ok((a - 1, sign))
    };
    let toks: Vec<&str> = line.split_whitespace().collect();
    let cmd = match toks.as_slice() {
        [t] if t.starts_with(['+', '-']) => {
            let (dir, sign) = axis(t)?;
            Command::Move { dir, sign }
        }
        ["wait"] => Command::Wait,
        ["quit"] => Command::Quit,
        ["attack", t] => {
            let (dir, sign) = axis(t)?;
            Command::Attack { dir, sign }
        }
        ["click", id] => Command::Click {
            tile_id: Some(id.parse().map_err(|_| bad())?),
            at: None,
        },
        ["slider", name, value] => Command::Slider {
            name: name.to_string(),
            value: value.parse().map_err(|_| bad())?,
        },
        ["mode", world] | ["mode", world, _] => Command::Mode {
            world: world.parse().map_err(|_| bad())?,
            d: match toks.get(2) {
                Some(d) => Some(d.parse().map_err(|_| bad())?),
                None => None,
            },
        },
        ["reset", seed] => Command::Reset {
            seed: seed.parse().map_err(|_| bad())?,
        },
        _ => return Err(bad()),
    };
    Ok(Some(cmd))
}

/// One rendered view of a session.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameMessage {
    #[serde(flatten)]
    pub frame: SceneFrame,
    pub world: WorldId,
    pub d: usize,
    pub status: Status,
    pub hud: Hud,
    /// Coordinate of the tile at the view center.
    pub focus: Coord,
    /// True for the in-between frames of a recentering animation.
    pub animating: bool,
}

/// Everything the engine sends.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Message {
    Frame(FrameMessage),
    Error(ProtocolError),
    Bye,
}

impl Message {
    /// The message as one canonical JSON line, without the newline.
    pub fn to_line(&self) -> String {
        super::canonical::to_canonical(self).expect("messages serialize")
    }

    pub fn frame(&self) -> Option<&FrameMessage> {
        match self {
            Message::Frame(f) => Some(f),
            _ => None,
        }
    }
}
