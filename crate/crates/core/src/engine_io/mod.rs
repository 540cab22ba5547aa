//! Everything that crosses the process boundary: the JSON line protocol,
//! game sessions, image files, the 2D rasterizer, the TCP server and the
//! command line.

pub mod canonical;
pub mod cli;
pub mod image_io;
pub mod protocol;
pub mod raster;
pub mod server;
pub mod session;

use thiserror::Error;

pub use canonical::{to_canonical, value_to_canonical};
pub use image_io::{decode_ppm, encode_ppm, read_ppm, write_png, write_ppm, ImageFormat};
pub use protocol::{parse_command, parse_script_line, Command, FrameMessage, Message, ProtocolError};
pub use raster::rasterize;
pub use session::{Session, SessionConfig};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    World(#[from] crate::worlds::WorldError),
    #[error(transparent)]
    Tiling(#[from] crate::tiling2d::TilingError),
    #[error(transparent)]
    Scene(#[from] crate::scene2d::SceneError),
    #[error(transparent)]
    Honeycomb(#[from] crate::honeycomb3d::HoneycombError),
    #[error(transparent)]
    Geometry(#[from] crate::hypmath::GeomError),
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
    #[error("bad session settings: {0}")]
    Config(String),
    #[error("bad image: {0}")]
    BadImage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl EngineError {
    /// Process exit code: 2 for bad input, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            EngineError::World(_) | EngineError::Config(_) | EngineError::Protocol(_) => 2,
            _ => 1,
        }
    }
}
