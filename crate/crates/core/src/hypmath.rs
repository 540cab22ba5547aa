//! Hyperbolic geometry in the Minkowski hyperboloid model.
//!
//! Points of `H^n` live on the upper sheet of `⟨p,p⟩ = -1` in `R^{n+1}` with the
//! bilinear form `⟨a,b⟩ = a_0 b_0 + … + a_{n-1} b_{n-1} - a_n b_n`. The last
//! coordinate is timelike. Every type here is generic over the ambient size
//! `N = n + 1`; the crate uses `N = 3` for the plane and `N = 4` for space.
//!
//! Isometries are `N × N` matrices preserving the form. Projections to the
//! Poincaré disk (and ball) are the only conversions out of the model.

use nalgebra::{SMatrix, SVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance for the norm invariants of freshly constructed values.
pub const CONSTRUCTION_TOL: f64 = 1e-9;
/// Tolerance for `MᵀJM = J` after compositions.
pub const COMPOSITION_TOL: f64 = 1e-8;
/// Number of compositions after which callers should call [`reorthonormalize`].
pub const RENORMALIZE_EVERY: u32 = 64;

pub type Vector<const N: usize> = SVector<f64, N>;
pub type Matrix<const N: usize> = SMatrix<f64, N, N>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("vector lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("point is off the hyperboloid: <p,p> = {norm}")]
    OffHyperboloid { norm: f64 },
    #[error("direction is not tangent to its base point: <v,p> = {inner}")]
    NotTangent { inner: f64 },
    #[error("expected a unit spacelike vector, got <v,v> = {norm}")]
    NotUnitSpacelike { norm: f64 },
    #[error("matrix does not preserve the Minkowski form (error {error:e})")]
    NotIsometry { error: f64 },
    #[error("degenerate matrix: Gram-Schmidt lost rank at row {row}")]
    Degenerate { row: usize },
    #[error("projection parameter w must be >= 1, got {w}")]
    BadProjection { w: f64 },
}

/// `⟨a,b⟩` on raw slices; the last entry is the timelike one.
pub fn minkowski_inner(a: &[f64], b: &[f64]) -> Result<f64, GeomError> {
    if a.len() != b.len() {
        return Err(GeomError::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let Some(last) = a.len().checked_sub(1) else {
        return Ok(0.0);
    };
    let space: f64 = a[..last].iter().zip(&b[..last]).map(|(x, y)| x * y).sum();
    Ok(space - a[last] * b[last])
}

/// `⟨a,b⟩` on fixed-size vectors.
#[inline]
pub fn mdot<const N: usize>(a: &Vector<N>, b: &Vector<N>) -> f64 {
    let mut s = 0.0;
    for i in 0..N - 1 {
        s += a[i] * b[i];
    }
    s - a[N - 1] * b[N - 1]
}

/// The Gram matrix `J = diag(1, …, 1, -1)`.
pub fn gram<const N: usize>() -> Matrix<N> {
    let mut j = Matrix::<N>::identity();
    j[(N - 1, N - 1)] = -1.0;
    j
}

/// A point of `H^{N-1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HPoint<const N: usize>(Vector<N>);

impl<const N: usize> HPoint<N> {
    pub fn origin() -> Self {
        let mut v = Vector::<N>::zeros();
        v[N - 1] = 1.0;
        HPoint(v)
    }

    /// Validating constructor.
    pub fn new(coords: Vector<N>) -> Result<Self, GeomError> {
        let norm = mdot(&coords, &coords);
        if (norm + 1.0).abs() > CONSTRUCTION_TOL * coords[N - 1].abs().max(1.0).powi(2)
            || coords[N - 1] < 1.0 - CONSTRUCTION_TOL
        {
            return Err(GeomError::OffHyperboloid { norm });
        }
        Ok(HPoint(coords))
    }

    /// Rescales a timelike, future-pointing vector onto the hyperboloid.
    pub fn normalize(coords: Vector<N>) -> Result<Self, GeomError> {
        let norm = mdot(&coords, &coords);
        if norm >= 0.0 || coords[N - 1] <= 0.0 {
            return Err(GeomError::OffHyperboloid { norm });
        }
        Ok(HPoint(coords / (-norm).sqrt()))
    }

    pub(crate) fn from_raw(coords: Vector<N>) -> Self {
        HPoint(coords)
    }

    pub fn coords(&self) -> &Vector<N> {
        &self.0
    }

    /// The timelike coordinate, `cosh` of the distance to the origin.
    pub fn time(&self) -> f64 {
        self.0[N - 1]
    }
}

/// A unit tangent vector at `base`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HDirection<const N: usize> {
    coords: Vector<N>,
    base: HPoint<N>,
}

impl<const N: usize> HDirection<N> {
    pub fn new(base: HPoint<N>, coords: Vector<N>) -> Result<Self, GeomError> {
        let scale = coords.abs().max().max(1.0) * base.0.abs().max().max(1.0);
        let inner = mdot(&coords, &base.0);
        if inner.abs() > CONSTRUCTION_TOL * scale {
            return Err(GeomError::NotTangent { inner });
        }
        let norm = mdot(&coords, &coords);
        if (norm - 1.0).abs() > CONSTRUCTION_TOL * scale * scale {
            return Err(GeomError::NotUnitSpacelike { norm });
        }
        Ok(HDirection { coords, base })
    }

    /// Projects `v` onto the tangent space at `base` and normalizes it.
    pub fn tangent(base: HPoint<N>, v: Vector<N>) -> Result<Self, GeomError> {
        let t = v + base.0 * mdot(&v, &base.0);
        let norm = mdot(&t, &t);
        if norm <= 1e-300 {
            return Err(GeomError::NotUnitSpacelike { norm });
        }
        Ok(HDirection {
            coords: t / norm.sqrt(),
            base,
        })
    }

    pub(crate) fn from_raw(base: HPoint<N>, coords: Vector<N>) -> Self {
        HDirection { coords, base }
    }

    pub fn coords(&self) -> &Vector<N> {
        &self.coords
    }

    pub fn base(&self) -> HPoint<N> {
        self.base
    }
}

/// Unit spacelike normal of the plane `{p : ⟨p,n⟩ = 0}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneNormal<const N: usize>(Vector<N>);

impl<const N: usize> PlaneNormal<N> {
    pub fn new(coords: Vector<N>) -> Result<Self, GeomError> {
        let norm = mdot(&coords, &coords);
        if (norm - 1.0).abs() > CONSTRUCTION_TOL * coords.abs().max().max(1.0).powi(2) {
            return Err(GeomError::NotUnitSpacelike { norm });
        }
        Ok(PlaneNormal(coords))
    }

    /// The plane at distance `dist` from the origin, perpendicular to the
    /// spatial unit vector `dir`. The origin is on the negative side.
    pub fn at_distance(dir: &[f64], dist: f64) -> Self {
        assert_eq!(dir.len(), N - 1, "spatial direction has wrong length");
        let len = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
        let mut v = Vector::<N>::zeros();
        for i in 0..N - 1 {
            v[i] = dir[i] / len * dist.cosh();
        }
        v[N - 1] = dist.sinh();
        PlaneNormal(v)
    }

    pub fn coords(&self) -> &Vector<N> {
        &self.0
    }

    /// Signed side of `p`: negative inside, positive outside.
    pub fn side(&self, p: &HPoint<N>) -> f64 {
        mdot(&p.0, &self.0)
    }
}

/// Isometry of `H^{N-1}` as a form-preserving matrix acting on column vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HIsometry<const N: usize>(Matrix<N>);

impl<const N: usize> HIsometry<N> {
    pub fn identity() -> Self {
        HIsometry(Matrix::<N>::identity())
    }

    /// Validating constructor.
    pub fn new(m: Matrix<N>) -> Result<Self, GeomError> {
        let error = form_error(&m);
        if error > COMPOSITION_TOL * m.abs().max().max(1.0).powi(2) || m[(N - 1, N - 1)] <= 0.0 {
            return Err(GeomError::NotIsometry { error });
        }
        Ok(HIsometry(m))
    }

    pub fn matrix(&self) -> &Matrix<N> {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &HIsometry<N>) -> HIsometry<N> {
        HIsometry(self.0 * other.0)
    }

    /// `J Mᵀ J`, exact for form-preserving matrices.
    pub fn inverse(&self) -> HIsometry<N> {
        let j = gram::<N>();
        HIsometry(j * self.0.transpose() * j)
    }

    pub fn apply(&self, p: &HPoint<N>) -> HPoint<N> {
        HPoint(self.0 * p.0)
    }

    pub fn apply_dir(&self, v: &HDirection<N>) -> HDirection<N> {
        HDirection {
            coords: self.0 * v.coords,
            base: self.apply(&v.base),
        }
    }

    pub fn apply_normal(&self, n: &PlaneNormal<N>) -> PlaneNormal<N> {
        PlaneNormal(self.0 * n.0)
    }

    pub fn apply_vec(&self, v: &Vector<N>) -> Vector<N> {
        self.0 * v
    }

    /// Max-abs entry of `MᵀJM − J`.
    pub fn form_error(&self) -> f64 {
        form_error(&self.0)
    }

    /// Rotation by `angle` in the spatial plane of axes `i` and `j`.
    pub fn rotation(i: usize, j: usize, angle: f64) -> Self {
        assert!(i < N - 1 && j < N - 1 && i != j);
        let mut m = Matrix::<N>::identity();
        let (s, c) = angle.sin_cos();
        m[(i, i)] = c;
        m[(i, j)] = -s;
        m[(j, i)] = s;
        m[(j, j)] = c;
        HIsometry(m)
    }

    /// Translation by `dist` along spatial axis `axis`.
    pub fn translation_along(axis: usize, dist: f64) -> Self {
        assert!(axis < N - 1);
        let mut m = Matrix::<N>::identity();
        let (s, c) = (dist.sinh(), dist.cosh());
        m[(axis, axis)] = c;
        m[(axis, N - 1)] = s;
        m[(N - 1, axis)] = s;
        m[(N - 1, N - 1)] = c;
        HIsometry(m)
    }
}

fn form_error<const N: usize>(m: &Matrix<N>) -> f64 {
    let j = gram::<N>();
    (m.transpose() * j * m - j).abs().max()
}

/// Point in the Poincaré disk. Serializes as `[x, y]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct DiskPoint {
    pub x: f64,
    pub y: f64,
}

impl DiskPoint {
    pub fn new(x: f64, y: f64) -> Self {
        DiskPoint { x, y }
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }
}

impl From<[f64; 2]> for DiskPoint {
    fn from([x, y]: [f64; 2]) -> Self {
        DiskPoint { x, y }
    }
}

impl From<DiskPoint> for [f64; 2] {
    fn from(p: DiskPoint) -> Self {
        [p.x, p.y]
    }
}

/// `acosh(max(1, −⟨a,b⟩))`. Nearby points use the equivalent
/// `2 asinh(|a − b| / 2)`, which does not lose digits to cancellation.
pub fn distance<const N: usize>(a: &HPoint<N>, b: &HPoint<N>) -> f64 {
    let c = (-mdot(&a.0, &b.0)).max(1.0);
    if c > 2.0 {
        return c.acosh();
    }
    let diff = a.0 - b.0;
    2.0 * (mdot(&diff, &diff).max(0.0).sqrt() / 2.0).asinh()
}

/// Point at arclength `t` along the geodesic through `p` with direction `v`.
pub fn geodesic_at<const N: usize>(
    p: &HPoint<N>,
    v: &HDirection<N>,
    t: f64,
) -> Result<HPoint<N>, GeomError> {
    check_tangent(p, v)?;
    Ok(HPoint(p.0 * t.cosh() + v.coords * t.sinh()))
}

/// Velocity of the same geodesic at arclength `t`.
pub fn geodesic_velocity<const N: usize>(
    p: &HPoint<N>,
    v: &HDirection<N>,
    t: f64,
) -> Result<HDirection<N>, GeomError> {
    check_tangent(p, v)?;
    Ok(HDirection {
        coords: p.0 * t.sinh() + v.coords * t.cosh(),
        base: HPoint(p.0 * t.cosh() + v.coords * t.sinh()),
    })
}

fn check_tangent<const N: usize>(p: &HPoint<N>, v: &HDirection<N>) -> Result<(), GeomError> {
    let inner = mdot(&p.0, &v.coords);
    let scale = p.0.abs().max().max(1.0) * v.coords.abs().max().max(1.0);
    if inner.abs() > CONSTRUCTION_TOL * scale {
        return Err(GeomError::NotTangent { inner });
    }
    Ok(())
}

/// Pure translation (a boost) mapping the origin to `p`.
pub fn translation_to<const N: usize>(p: &HPoint<N>) -> HIsometry<N> {
    let x = &p.0;
    let z = x[N - 1];
    let f = 1.0 / (1.0 + z);
    let mut m = Matrix::<N>::identity();
    for i in 0..N - 1 {
        for j in 0..N - 1 {
            m[(i, j)] += x[i] * x[j] * f;
        }
        m[(i, N - 1)] = x[i];
        m[(N - 1, i)] = x[i];
    }
    m[(N - 1, N - 1)] = z;
    HIsometry(m)
}

/// Reflection `x ↦ x − 2⟨x,n⟩n` in the plane with normal `n`.
pub fn reflect_in_plane<const N: usize>(n: &PlaneNormal<N>) -> Result<HIsometry<N>, GeomError> {
    let norm = mdot(&n.0, &n.0);
    if (norm - 1.0).abs() > CONSTRUCTION_TOL * n.0.abs().max().max(1.0).powi(2) {
        return Err(GeomError::NotUnitSpacelike { norm });
    }
    Ok(HIsometry(reflection_matrix(&n.0)))
}

pub(crate) fn reflection_matrix<const N: usize>(n: &Vector<N>) -> Matrix<N> {
    // x - 2 n (J n)ᵀ x
    let mut jn = *n;
    jn[N - 1] = -jn[N - 1];
    Matrix::<N>::identity() - n * jn.transpose() * 2.0
}

/// Smallest `t ≥ 0` where the geodesic `(p, v)` meets the plane `n`.
///
/// A ray lying in the plane (both inner products zero) reports `t = 0`, as
/// does a ray starting on the plane and leaving it.
pub fn ray_plane_hit<const N: usize>(
    p: &HPoint<N>,
    v: &HDirection<N>,
    n: &PlaneNormal<N>,
) -> Option<f64> {
    ray_plane_hit_raw(&p.0, &v.coords, &n.0)
}

/// Solves `a cosh t + b sinh t = 0` with `a = ⟨p,n⟩`, `b = ⟨v,n⟩`.
#[inline]
pub(crate) fn ray_plane_hit_raw<const N: usize>(
    p: &Vector<N>,
    v: &Vector<N>,
    n: &Vector<N>,
) -> Option<f64> {
    let a = mdot(p, n);
    let b = mdot(v, n);
    if a == 0.0 {
        return Some(0.0);
    }
    // tanh t = -a / b must lie in [0, 1)
    let r = -a / b;
    if !(0.0..1.0).contains(&r) || b == 0.0 {
        return None;
    }
    Some(r.atanh())
}

/// Generalized stereographic projection `(x, y, z) ↦ (x/(w+z), y/(w+z))`.
/// `w = 1` is the Poincaré disk.
pub fn to_disk(p: &HPoint<3>, w: f64) -> DiskPoint {
    let c = &p.0;
    let den = w + c[2];
    DiskPoint::new(c[0] / den, c[1] / den)
}

/// Checked variant of [`to_disk`] rejecting `w < 1`.
pub fn try_to_disk(p: &HPoint<3>, w: f64) -> Result<DiskPoint, GeomError> {
    if !(w >= 1.0) {
        return Err(GeomError::BadProjection { w });
    }
    Ok(to_disk(p, w))
}

/// Inverse of the `w = 1` projection.
pub fn from_disk(q: DiskPoint) -> Result<HPoint<3>, GeomError> {
    let r2 = q.x * q.x + q.y * q.y;
    if r2 >= 1.0 {
        return Err(GeomError::OffHyperboloid { norm: r2 });
    }
    let s = 1.0 / (1.0 - r2);
    Ok(HPoint(Vector::<3>::new(
        2.0 * q.x * s,
        2.0 * q.y * s,
        (1.0 + r2) * s,
    )))
}

/// Poincaré ball projection of a point of `H³`.
pub fn to_ball(p: &HPoint<4>) -> [f64; 3] {
    let c = &p.0;
    let den = 1.0 + c[3];
    [c[0] / den, c[1] / den, c[2] / den]
}

/// Minkowski Gram–Schmidt on the rows, timelike row first.
pub fn reorthonormalize<const N: usize>(m: &HIsometry<N>) -> Result<HIsometry<N>, GeomError> {
    let mut rows: Vec<Vector<N>> = (0..N).map(|i| m.0.row(i).transpose()).collect();
    let order: Vec<usize> = std::iter::once(N - 1).chain(0..N - 1).collect();
    for (step, &i) in order.iter().enumerate() {
        let mut r = rows[i];
        for &j in &order[..step] {
            let sign = if j == N - 1 { -1.0 } else { 1.0 };
            r -= rows[j] * (mdot(&r, &rows[j]) * sign);
        }
        let norm = mdot(&r, &r);
        let want_timelike = i == N - 1;
        if (want_timelike && norm >= 0.0) || (!want_timelike && norm <= 0.0) {
            return Err(GeomError::Degenerate { row: i });
        }
        rows[i] = r / norm.abs().sqrt();
    }
    let mut out = Matrix::<N>::zeros();
    for (i, r) in rows.iter().enumerate() {
        out.set_row(i, &r.transpose());
    }
    if out[(N - 1, N - 1)] <= 0.0 {
        return Err(GeomError::Degenerate { row: N - 1 });
    }
    Ok(HIsometry(out))
}

/// Exponential map at the origin for a spatial tangent vector.
pub fn exp_origin<const N: usize>(spatial: &[f64]) -> HPoint<N> {
    assert_eq!(spatial.len(), N - 1);
    let len = spatial.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut v = Vector::<N>::zeros();
    if len > 0.0 {
        let s = len.sinh() / len;
        for i in 0..N - 1 {
            v[i] = spatial[i] * s;
        }
    }
    v[N - 1] = len.cosh();
    HPoint(v)
}

/// Keeps an isometry product in range by renormalizing every
/// [`RENORMALIZE_EVERY`] compositions.
#[derive(Debug, Clone, Copy)]
pub struct IsometryAccumulator<const N: usize> {
    current: HIsometry<N>,
    since_renorm: u32,
}

impl<const N: usize> Default for IsometryAccumulator<N> {
    fn default() -> Self {
        IsometryAccumulator {
            current: HIsometry::identity(),
            since_renorm: 0,
        }
    }
}

impl<const N: usize> IsometryAccumulator<N> {
    pub fn new(start: HIsometry<N>) -> Self {
        IsometryAccumulator {
            current: start,
            since_renorm: 0,
        }
    }

    /// Replaces the product with `self ∘ step`.
    pub fn push(&mut self, step: &HIsometry<N>) -> Result<(), GeomError> {
        self.current = self.current.compose(step);
        self.since_renorm += 1;
        if self.since_renorm >= RENORMALIZE_EVERY {
            self.current = reorthonormalize(&self.current)?;
            self.since_renorm = 0;
        }
        Ok(())
    }

    pub fn get(&self) -> &HIsometry<N> {
        &self.current
    }
}
