//! Right-angled honeycombs of H³ carrying a `Z^d` labeling, and a
//! cell-to-cell raycaster for looking at subsets of `Z^d` from inside.
//!
//! `{3,4,4}` (octahedra, `d = 4`) and `{5,3,4}` (dodecahedra, `d = 6`) are
//! supported. Opposite faces of every cell change the same coordinate in
//! opposite directions, exactly like the edges of the `{2d,4}` tiles.

use thiserror::Error;

use crate::hypmath::GeomError;

pub mod cell;
pub mod ray;
pub mod render;
pub mod scenes;

pub use cell::{spec_344, spec_534, FaceFrame, HoneycombKind, HoneycombSpec};
pub use ray::{advance, advance_in_place, next_exit, trace, Crossing, Hit, RayState, Trace, NUDGE};
pub use render::{place_camera, render, shade, trace_pixels, CameraPose, CameraSpec, ImageBuf, RenderOptions};
pub use scenes::{scene_catalog, Scene, SceneId};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HoneycombError {
    #[error("unknown honeycomb {0:?} (expected 344 or 534)")]
    UnknownHoneycomb(String),
    #[error("unknown scene {0:?} (expected a letter A..J)")]
    UnknownScene(String),
    #[error("coordinate has {got} entries, honeycomb needs {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("face labels are not a valid signed-axis assignment")]
    BadFaceLabels,
    #[error("point is outside the canonical cell (margin {margin:e})")]
    OutsideCell { margin: f64 },
    #[error("ray never leaves its cell (after {steps} steps)")]
    NoExit { steps: u32 },
    #[error("image must have positive size, got {width}x{height}")]
    ZeroSize { width: u32, height: u32 },
    #[error("field of view must be in (0, 180) degrees, got {0}")]
    BadFov(f64),
    #[error(transparent)]
    Geometry(#[from] GeomError),
}
