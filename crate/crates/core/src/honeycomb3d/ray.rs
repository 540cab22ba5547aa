//! Cell-to-cell geodesic ray marching.
//!
//! A ray is always expressed in the frame of the canonical cell. Leaving
//! through face `F` reflects the ray in `F`, which re-expresses it in the
//! frame of the neighboring cell, and updates the grid coordinate and the
//! face labels the same way the 2D tiling does.

use crate::color::Rgb;
use crate::hypmath::{mdot, HDirection, HPoint, Vector};
use crate::tiling2d::{validate_dirs, SignedAxis, MAX_DIM};

use super::cell::HoneycombSpec;
use super::HoneycombError;

/// Distance the ray is pushed past a face after crossing it.
pub const NUDGE: f64 = 1e-9;

/// A ray inside the canonical cell, tagged with the grid cell it is in.
#[derive(Debug, Clone, PartialEq)]
pub struct RayState {
    d: usize,
    coord: [i64; MAX_DIM],
    face_dirs: [SignedAxis; 2 * MAX_DIM],
    pos: Vector<4>,
    dir: Vector<4>,
    pub traveled: f64,
    pub steps: u32,
}

/// One face crossing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    pub face: usize,
    /// Distance along the ray to the face.
    pub t: f64,
    /// Where the face was hit, in the frame of the cell just entered.
    pub point: Vector<4>,
}

impl RayState {
    /// Ray in cell `coord` with canonical face labels.
    pub fn new(
        spec: &HoneycombSpec,
        coord: &[i64],
        pos: HPoint<4>,
        dir: HDirection<4>,
    ) -> Result<Self, HoneycombError> {
        Self::with_face_dirs(spec, coord, &spec.canonical_face_dirs(), pos, dir)
    }

    pub fn with_face_dirs(
        spec: &HoneycombSpec,
        coord: &[i64],
        face_dirs: &[SignedAxis],
        pos: HPoint<4>,
        dir: HDirection<4>,
    ) -> Result<Self, HoneycombError> {
        let d = spec.d;
        if coord.len() != d {
            return Err(HoneycombError::DimensionMismatch {
                expected: d,
                got: coord.len(),
            });
        }
        if !validate_dirs(face_dirs, d) {
            return Err(HoneycombError::BadFaceLabels);
        }
        if dir.base() != pos {
            return Err(HoneycombError::Geometry(crate::hypmath::GeomError::NotTangent {
                inner: mdot(dir.coords(), pos.coords()),
            }));
        }
        let margin = spec.outside_margin(pos.coords());
        if margin >= 0.0 {
            return Err(HoneycombError::OutsideCell { margin });
        }
        let mut c = [0; MAX_DIM];
        c[..d].copy_from_slice(coord);
        let mut f = [SignedAxis::pos(0); 2 * MAX_DIM];
        f[..2 * d].copy_from_slice(face_dirs);
        Ok(RayState {
            d,
            coord: c,
            face_dirs: f,
            pos: *pos.coords(),
            dir: *dir.coords(),
            traveled: 0.0,
            steps: 0,
        })
    }

    pub fn coord(&self) -> &[i64] {
        &self.coord[..self.d]
    }

    pub fn face_dirs(&self) -> &[SignedAxis] {
        &self.face_dirs[..2 * self.d]
    }

    pub fn pos(&self) -> HPoint<4> {
        HPoint::from_raw(self.pos)
    }

    pub fn dir(&self) -> HDirection<4> {
        HDirection::from_raw(HPoint::from_raw(self.pos), self.dir)
    }

    pub fn pos_vec(&self) -> &Vector<4> {
        &self.pos
    }

    pub fn dir_vec(&self) -> &Vector<4> {
        &self.dir
    }

    /// Same position, opposite direction; distance and step counters reset.
    pub fn reversed(&self) -> RayState {
        RayState {
            dir: -self.dir,
            traveled: 0.0,
            steps: 0,
            ..self.clone()
        }
    }
}

/// First face the ray leaves through: `(t, face)`, lowest index on ties.
pub fn next_exit(spec: &HoneycombSpec, pos: &Vector<4>, dir: &Vector<4>) -> Option<(f64, usize)> {
    let mut best: Option<(f64, usize)> = None;
    for (f, n) in spec.normals.iter().enumerate() {
        let b = mdot(dir, n.coords());
        if b <= 0.0 {
            continue;
        }
        let a = mdot(pos, n.coords());
        let r = -a / b;
        if r >= 1.0 {
            continue;
        }
        let t = if r <= 0.0 { 0.0 } else { r.atanh() };
        if best.is_none_or(|(bt, _)| t < bt) {
            best = Some((t, f));
        }
    }
    best
}

/// Moves the ray into the next cell, in place.
pub fn advance_in_place(spec: &HoneycombSpec, s: &mut RayState) -> Result<Crossing, HoneycombError> {
    let (t, f) = next_exit(spec, &s.pos, &s.dir).ok_or(HoneycombError::NoExit { steps: s.steps })?;
    let (sh, ch) = (t.sinh(), t.cosh());
    let p_hit = s.pos * ch + s.dir * sh;
    let v_hit = s.pos * sh + s.dir * ch;
    // reflect in face f: x − 2⟨x,n⟩n
    let n = spec.normals[f].coords();
    let p = p_hit - n * (2.0 * mdot(&p_hit, n));
    let v = v_hit - n * (2.0 * mdot(&v_hit, n));
    let (se, ce) = (NUDGE.sinh(), NUDGE.cosh());
    let mut pos = p * ce + v * se;
    let mut dir = p * se + v * ce;
    pos /= (-mdot(&pos, &pos)).sqrt();
    dir += pos * mdot(&dir, &pos);
    dir /= mdot(&dir, &dir).sqrt();

    let delta = s.face_dirs[f];
    s.coord[delta.axis()] += delta.sign();
    s.face_dirs.swap(f, spec.opposite[f]);
    debug_assert!(validate_dirs(s.face_dirs(), s.d));
    s.pos = pos;
    s.dir = dir;
    s.traveled += t + NUDGE;
    s.steps += 1;
    Ok(Crossing { face: f, t, point: p })
}

/// Pure form of [`advance_in_place`].
pub fn advance(spec: &HoneycombSpec, state: &RayState) -> Result<(RayState, usize), HoneycombError> {
    let mut s = state.clone();
    let c = advance_in_place(spec, &mut s)?;
    Ok((s, c.face))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hit {
    pub color: Rgb,
    pub traveled: f64,
    pub uv: [f64; 2],
    pub coord: Vec<i64>,
    pub steps: u32,
    pub face: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Trace {
    Hit(Hit),
    /// No filled cell within the step budget, or the ray ran into an ideal
    /// vertex and never leaves its cell.
    Miss { steps: u32 },
}

impl Trace {
    pub fn hit(&self) -> Option<&Hit> {
        match self {
            Trace::Hit(h) => Some(h),
            Trace::Miss { .. } => None,
        }
    }
}

/// Marches until the ray enters a filled cell or `max_steps` crossings
/// have been made. The starting cell's own fill is ignored.
pub fn trace(
    spec: &HoneycombSpec,
    fill: &dyn Fn(&[i64]) -> Option<Rgb>,
    state: &RayState,
    max_steps: u32,
) -> Trace {
    let mut s = state.clone();
    while s.steps < max_steps {
        let crossing = match advance_in_place(spec, &mut s) {
            Ok(c) => c,
            Err(_) => break,
        };
        if let Some(color) = fill(s.coord()) {
            return Trace::Hit(Hit {
                color,
                traveled: s.traveled,
                uv: spec.face_uv(crossing.face, &crossing.point),
                coord: s.coord().to_vec(),
                steps: s.steps,
                face: crossing.face,
            });
        }
    }
    Trace::Miss { steps: s.steps }
}
