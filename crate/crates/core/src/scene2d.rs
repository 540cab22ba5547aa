//! Drawing lists for the Poincaré disk view of a tile patch.
//!
//! A [`SceneFrame`] is a flat list of filled polygons with labels, already
//! projected into unit-disk coordinates. Edges are sampled along geodesics,
//! so clients only ever draw straight segments.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::color::Rgb;
use crate::hypmath::{
    self, distance, geodesic_at, to_disk, translation_to, DiskPoint, HDirection, HIsometry, HPoint,
};
use crate::tiling2d::{SignedAxis, Tile, TileId, TilePatch, TilingParams, TilingError};

/// Boundary samples per tile edge.
pub const SAMPLES_PER_EDGE: usize = 8;
/// Tiles whose centers are farther than this from the view center are culled.
pub const DEFAULT_CUTOFF: f64 = 5.0;
/// Altitude-to-projection slope used by the gravity worlds.
pub const DEFAULT_ALTITUDE_SCALE: f64 = 0.5;
/// Fraction of the inradius at which edge-anchored labels sit.
const LABEL_INSET: f64 = 0.6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SceneError {
    #[error("cutoff must be positive, got {0}")]
    BadCutoff(f64),
    #[error("animation needs at least one step")]
    NoSteps,
    #[error(transparent)]
    Tiling(#[from] TilingError),
    #[error(transparent)]
    Geometry(#[from] hypmath::GeomError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Camera2D {
    /// World-to-view isometry; the view center is the disk origin.
    pub view: HIsometry<3>,
    pub w_base: f64,
    /// Zero disables altitude-dependent projection.
    pub altitude_scale: f64,
}

impl Default for Camera2D {
    fn default() -> Self {
        Camera2D {
            view: HIsometry::identity(),
            w_base: 1.0,
            altitude_scale: 0.0,
        }
    }
}

impl Camera2D {
    pub fn with_view(&self, view: HIsometry<3>) -> Camera2D {
        Camera2D { view, ..*self }
    }

    /// Projection parameter for a tile at `altitude` (negative altitudes
    /// are treated as ground level).
    pub fn w_for(&self, altitude: Option<i64>) -> f64 {
        let a = altitude.unwrap_or(0).max(0) as f64;
        self.w_base + self.altitude_scale * a
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelAnchor {
    Center,
    /// Inside the tile, toward the midpoint of this edge.
    Edge(usize),
    /// Toward the edge carrying this direction.
    Axis(SignedAxis),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TileLabel {
    pub text: String,
    pub anchor: LabelAnchor,
    pub color: Rgb,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TileStyle {
    pub fill: Rgb,
    pub labels: Vec<TileLabel>,
    pub altitude: Option<i64>,
}

impl TileStyle {
    pub fn plain(fill: Rgb) -> Self {
        TileStyle {
            fill,
            labels: Vec::new(),
            altitude: None,
        }
    }

    pub fn label(mut self, text: impl Into<String>, anchor: LabelAnchor, color: Rgb) -> Self {
        self.labels.push(TileLabel {
            text: text.into(),
            anchor,
            color,
        });
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameLabel {
    pub text: String,
    pub pos: DiskPoint,
    pub color: Rgb,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polygon {
    pub tile_id: TileId,
    pub coord: Vec<i64>,
    pub boundary: Vec<DiskPoint>,
    pub fill: Rgb,
    pub labels: Vec<FrameLabel>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    Sound,
    Win,
    Lose,
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub kind: EventKind,
    pub payload: serde_json::Value,
}

impl Event {
    pub fn info(message: impl Into<String>) -> Self {
        Event {
            kind: EventKind::Info,
            payload: serde_json::json!({ "message": message.into() }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SceneFrame {
    pub frame_seq: u64,
    pub polys: Vec<Polygon>,
    pub events: Vec<Event>,
}

/// Boundary of the canonical polygon sampled along its geodesic edges,
/// starting at the vertex before edge 0.
pub fn canonical_boundary(params: &TilingParams) -> Vec<HPoint<3>> {
    let p = params.p;
    let mut out = Vec::with_capacity(p * SAMPLES_PER_EDGE);
    for k in 0..p {
        let a = params.vertex((k + p - 1) % p);
        let b = params.vertex(k);
        let len = distance(&a, &b);
        let dir = HDirection::tangent(a, *b.coords()).expect("distinct vertices");
        for s in 0..SAMPLES_PER_EDGE {
            let t = len * s as f64 / SAMPLES_PER_EDGE as f64;
            out.push(geodesic_at(&a, &dir, t).expect("tangent by construction"));
        }
    }
    out
}

fn label_point(params: &TilingParams, tile: &Tile, anchor: LabelAnchor) -> HPoint<3> {
    let edge = match anchor {
        LabelAnchor::Center => return HPoint::origin(),
        LabelAnchor::Edge(k) => k % params.p,
        LabelAnchor::Axis(dir) => match tile.edge_of(dir) {
            Some(k) => k,
            None => return HPoint::origin(),
        },
    };
    let a = params.edge_angle(edge);
    let r = LABEL_INSET * params.inradius;
    hypmath::exp_origin::<3>(&[r * a.cos(), r * a.sin()])
}

/// Distance from the view center to the tile's center.
fn view_distance(camera: &Camera2D, tile: &Tile) -> f64 {
    let c = camera.view.compose(&tile.placement).apply(&HPoint::origin());
    distance(&HPoint::origin(), &c)
}

/// Projects every tile within `cutoff` of the view center.
pub fn build_frame(
    patch: &TilePatch,
    camera: &Camera2D,
    style_fn: &dyn Fn(&[i64]) -> TileStyle,
    cutoff: f64,
) -> Result<SceneFrame, SceneError> {
    if !(cutoff > 0.0) {
        return Err(SceneError::BadCutoff(cutoff));
    }
    let params = patch.params();
    let boundary = canonical_boundary(params);
    let mut polys = Vec::new();
    let mut heights = Vec::new();
    for tile in patch.tiles() {
        if view_distance(camera, tile) > cutoff {
            continue;
        }
        let style = style_fn(&tile.coord);
        let m = camera.view.compose(&tile.placement);
        let w = camera.w_for(style.altitude);
        let project = |p: &HPoint<3>| to_disk(&m.apply(p), w);
        let labels = style
            .labels
            .iter()
            .map(|l| FrameLabel {
                text: l.text.clone(),
                pos: project(&label_point(params, tile, l.anchor)),
                color: l.color,
            })
            .collect();
        heights.push(style.altitude.unwrap_or(0));
        polys.push(Polygon {
            tile_id: tile.id,
            coord: tile.coord.clone(),
            boundary: boundary.iter().map(project).collect(),
            fill: style.fill,
            labels,
        });
    }
    // painter's order: raised tiles are drawn last
    let mut order: Vec<usize> = (0..polys.len()).collect();
    order.sort_by_key(|&i| heights[i]);
    let mut slots: Vec<Option<Polygon>> = polys.into_iter().map(Some).collect();
    let polys = order.into_iter().filter_map(|i| slots[i].take()).collect();
    Ok(SceneFrame {
        frame_seq: 0,
        polys,
        events: Vec::new(),
    })
}

/// Cameras sliding the view center along the geodesic to the center of
/// `target`. The last camera centers the target exactly.
pub fn recenter_steps(
    camera: &Camera2D,
    patch: &TilePatch,
    target: TileId,
    n_steps: usize,
) -> Result<Vec<Camera2D>, SceneError> {
    if n_steps == 0 {
        return Err(SceneError::NoSteps);
    }
    let tile = patch.tile(target)?;
    let q = camera.view.apply(&tile.center());
    let o = HPoint::origin();
    let len = distance(&o, &q);
    if len == 0.0 {
        return Ok(vec![*camera; n_steps]);
    }
    let mut spatial = *q.coords();
    spatial[2] = 0.0;
    let dir = HDirection::tangent(o, spatial)?;
    let mut out = Vec::with_capacity(n_steps);
    for i in 1..=n_steps {
        let point = if i == n_steps {
            q
        } else {
            geodesic_at(&o, &dir, len * i as f64 / n_steps as f64)?
        };
        out.push(camera.with_view(translation_to(&point).inverse().compose(&camera.view)));
    }
    Ok(out)
}

/// Even-odd containment of `at` in a sampled polygon.
pub fn contains(boundary: &[DiskPoint], at: DiskPoint) -> bool {
    let mut inside = false;
    let n = boundary.len();
    for i in 0..n {
        let a = boundary[i];
        let b = boundary[(i + 1) % n];
        if (a.y > at.y) != (b.y > at.y) {
            let x = a.x + (at.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if at.x < x {
                inside = !inside;
            }
        }
    }
    inside
}

/// The topmost tile whose polygon contains `at`.
pub fn pick(frame: &SceneFrame, at: DiskPoint) -> Option<TileId> {
    if at.norm() >= 1.0 {
        return None;
    }
    frame
        .polys
        .iter()
        .rev()
        .find(|p| contains(&p.boundary, at))
        .map(|p| p.tile_id)
}

/// Disk position of a tile's center as seen by `camera`.
pub fn project_center(camera: &Camera2D, tile: &Tile, altitude: Option<i64>) -> DiskPoint {
    let c = camera.view.compose(&tile.placement).apply(&HPoint::origin());
    to_disk(&c, camera.w_for(altitude))
}
