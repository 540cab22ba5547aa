//! Software raycasting of a scene into an RGB image.

use rayon::prelude::*;

use crate::color::Rgb;
use crate::hypmath::{exp_origin, mdot, translation_to, HDirection, HIsometry, HPoint, Vector};
use crate::tiling2d::SignedAxis;

use super::cell::HoneycombSpec;
use super::ray::{advance_in_place, next_exit, trace, RayState, Trace};
use super::HoneycombError;

/// Fog length: brightness falls by `e` every this many units traveled.
const FOG_LENGTH: f64 = 4.0;
const DARK_SQUARE: f64 = 0.8;

/// Row-major RGB image, top-left origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageBuf {
    pub width: u32,
    pub height: u32,
    pub pixels: Vec<Rgb>,
}

impl ImageBuf {
    pub fn new(width: u32, height: u32) -> Self {
        ImageBuf {
            width,
            height,
            pixels: vec![Rgb::BLACK; width as usize * height as usize],
        }
    }

    pub fn get(&self, x: u32, y: u32) -> Rgb {
        self.pixels[y as usize * self.width as usize + x as usize]
    }

    pub fn set(&mut self, x: u32, y: u32, c: Rgb) {
        self.pixels[y as usize * self.width as usize + x as usize] = c;
    }

    /// Pixels as packed `r g b` bytes.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.pixels.iter().flat_map(|c| c.to_array()).collect()
    }
}

/// Where the camera sits relative to the center of a start cell, and where
/// it looks. Angles are in radians; yaw turns from `+z` toward `+x`, pitch
/// raises toward `+y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CameraSpec {
    pub offset: [f64; 3],
    pub yaw: f64,
    pub pitch: f64,
}

impl CameraSpec {
    /// Slightly off-center, looking at the center of face 0. The offset
    /// keeps pixel rays away from the cell's symmetry planes.
    pub fn looking_at_face(spec: &HoneycombSpec, face: usize) -> Self {
        let u = spec.face_direction(face);
        CameraSpec {
            offset: [0.02, -0.03, 0.01],
            yaw: u[0].atan2(u[2]),
            pitch: u[1].clamp(-1.0, 1.0).asin(),
        }
    }

    fn local_pose(&self) -> HIsometry<4> {
        translation_to(&exp_origin::<4>(&self.offset))
            .compose(&HIsometry::rotation(2, 0, self.yaw))
            .compose(&HIsometry::rotation(2, 1, self.pitch))
    }
}

/// A camera resolved into the cell that contains it.
#[derive(Debug, Clone, PartialEq)]
pub struct CameraPose {
    pub coord: Vec<i64>,
    pub face_dirs: Vec<SignedAxis>,
    /// Maps camera space (looking along `+z`) into the canonical cell frame.
    pub pose: HIsometry<4>,
}

/// Resolves `camera` relative to the center of cell `start`. Offsets that
/// leave the start cell are followed through the faces they cross.
pub fn place_camera(
    spec: &HoneycombSpec,
    start: &[i64],
    camera: &CameraSpec,
) -> Result<CameraPose, HoneycombError> {
    let mut pose = camera.local_pose();
    let len = camera.offset.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut state = RayState::new(spec, start, HPoint::origin(), {
        let mut v = Vector::<4>::zeros();
        if len > 0.0 {
            v.fixed_rows_mut::<3>(0).copy_from_slice(&camera.offset);
        } else {
            v[2] = 1.0;
        }
        HDirection::tangent(HPoint::origin(), v)?
    })?;
    let mut remaining = len;
    while let Some((t, f)) = next_exit(spec, state.pos_vec(), state.dir_vec()) {
        if t >= remaining {
            break;
        }
        advance_in_place(spec, &mut state)?;
        pose = spec.cross[f].compose(&pose);
        remaining -= t + super::ray::NUDGE;
    }
    Ok(CameraPose {
        coord: state.coord().to_vec(),
        face_dirs: state.face_dirs().to_vec(),
        pose,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderOptions {
    pub width: u32,
    pub height: u32,
    pub fov_deg: f64,
    pub max_steps: u32,
    /// `None` or `Some(1)` renders on the calling thread.
    pub threads: Option<usize>,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            width: 320,
            height: 240,
            fov_deg: 90.0,
            max_steps: 600,
            threads: None,
        }
    }
}

impl RenderOptions {
    fn validate(&self) -> Result<(), HoneycombError> {
        if self.width == 0 || self.height == 0 {
            return Err(HoneycombError::ZeroSize {
                width: self.width,
                height: self.height,
            });
        }
        if !(self.fov_deg > 0.0 && self.fov_deg < 180.0) {
            return Err(HoneycombError::BadFov(self.fov_deg));
        }
        Ok(())
    }
}

/// The ray through the center of pixel `(i, j)`.
fn pixel_ray(
    spec: &HoneycombSpec,
    camera: &CameraPose,
    opts: &RenderOptions,
    i: u32,
    j: u32,
) -> Result<RayState, HoneycombError> {
    let (w, h) = (opts.width as f64, opts.height as f64);
    let half = (opts.fov_deg.to_radians() / 2.0).tan();
    let sx = (2.0 * (i as f64 + 0.5) / w - 1.0) * half;
    let sy = (1.0 - 2.0 * (j as f64 + 0.5) / h) * half * h / w;
    let local = Vector::<4>::new(sx, sy, 1.0, 0.0);
    let local = local / mdot(&local, &local).sqrt();
    let pos = camera.pose.apply(&HPoint::origin());
    let dir = HDirection::new(pos, camera.pose.apply_vec(&local))?;
    RayState::with_face_dirs(spec, &camera.coord, &camera.face_dirs, pos, dir)
}

/// Traces every pixel, row-major.
pub fn trace_pixels(
    spec: &HoneycombSpec,
    fill: &(dyn Fn(&[i64]) -> Option<Rgb> + Sync),
    camera: &CameraPose,
    opts: &RenderOptions,
) -> Result<Vec<Trace>, HoneycombError> {
    opts.validate()?;
    let rays: Vec<RayState> = (0..opts.height)
        .flat_map(|j| (0..opts.width).map(move |i| (i, j)))
        .map(|(i, j)| pixel_ray(spec, camera, opts, i, j))
        .collect::<Result<_, _>>()?;
    let one = |r: &RayState| trace(spec, fill, r, opts.max_steps);
    match opts.threads {
        Some(n) if n > 1 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .expect("thread pool");
            Ok(pool.install(|| rays.par_iter().map(one).collect()))
        }
        _ => Ok(rays.iter().map(one).collect()),
    }
}

/// Pixel color for one traced ray: the cell color, darkened by distance and
/// by a 2×2 checker on the entry face. Misses are black.
pub fn shade(t: &Trace) -> Rgb {
    match t {
        Trace::Miss { .. } => Rgb::BLACK,
        Trace::Hit(h) => {
            let fog = (-h.traveled / FOG_LENGTH).exp();
            let cu = (2.0 * h.uv[0] + 0.5).floor() as i64;
            let cv = (2.0 * h.uv[1] + 0.5).floor() as i64;
            let check = if (cu + cv).rem_euclid(2) == 0 { 1.0 } else { DARK_SQUARE };
            h.color.scale(fog * check)
        }
    }
}

pub fn render(
    spec: &HoneycombSpec,
    fill: &(dyn Fn(&[i64]) -> Option<Rgb> + Sync),
    camera: &CameraPose,
    opts: &RenderOptions,
) -> Result<ImageBuf, HoneycombError> {
    let traces = trace_pixels(spec, fill, camera, opts)?;
    Ok(ImageBuf {
        width: opts.width,
        height: opts.height,
        pixels: traces.iter().map(shade).collect(),
    })
}
