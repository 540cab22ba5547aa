//! Canonical cells of the right-angled honeycombs `{3,4,4}` and `{5,3,4}`.

use std::fmt;
use std::str::FromStr;

use crate::hypmath::{mdot, reflect_in_plane, HIsometry, PlaneNormal, Vector};
use crate::tiling2d::{canonical_dirs, SignedAxis};

use super::HoneycombError;

/// Tolerance for classifying spatial face directions as edge-adjacent.
const ADJACENCY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HoneycombKind {
    /// `{3,4,4}`: octahedral cells, ideal vertices, `Z^4`.
    Octahedral,
    /// `{5,3,4}`: dodecahedral cells, material vertices, `Z^6`.
    Dodecahedral,
}

impl HoneycombKind {
    pub fn d(self) -> usize {
        match self {
            HoneycombKind::Octahedral => 4,
            HoneycombKind::Dodecahedral => 6,
        }
    }

    pub fn spec(self) -> HoneycombSpec {
        match self {
            HoneycombKind::Octahedral => spec_344(),
            HoneycombKind::Dodecahedral => spec_534(),
        }
    }
}

impl fmt::Display for HoneycombKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HoneycombKind::Octahedral => "344",
            HoneycombKind::Dodecahedral => "534",
        })
    }
}

impl FromStr for HoneycombKind {
    type Err = HoneycombError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "344" | "{3,4,4}" => Ok(HoneycombKind::Octahedral),
            "534" | "{5,3,4}" => Ok(HoneycombKind::Dodecahedral),
            _ => Err(HoneycombError::UnknownHoneycomb(s.to_string())),
        }
    }
}

/// Orthonormal frame of a face in Klein-model coordinates, used for
/// texture coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceFrame {
    pub center: [f64; 3],
    pub a: [f64; 3],
    pub b: [f64; 3],
    /// Klein distance from the face center to its vertices.
    pub radius: f64,
}

/// Geometry and labeling data of one honeycomb's canonical cell, centered
/// at the origin.
#[derive(Debug, Clone)]
pub struct HoneycombSpec {
    pub kind: HoneycombKind,
    pub d: usize,
    /// Outward normals; the cell is where every `⟨p, n⟩ < 0`.
    pub normals: Vec<PlaneNormal<4>>,
    pub opposite: Vec<usize>,
    /// Reflection in each face, mapping the neighbor across it onto the
    /// canonical cell.
    pub cross: Vec<HIsometry<4>>,
    /// Face-label permutation applied on crossing: `dirs′[j] = dirs[relabel[F][j]]`.
    pub relabel: Vec<Vec<usize>>,
    /// `adjacent[i][j]`: faces `i` and `j` share an edge.
    pub adjacent: Vec<Vec<bool>>,
    /// Cell vertices as `(x, y, z, 1)`; lightlike when ideal.
    pub vertices: Vec<Vector<4>>,
    pub frames: Vec<FaceFrame>,
    /// Distance from the cell center to each face.
    pub inradius: f64,
}

impl HoneycombSpec {
    pub fn face_count(&self) -> usize {
        2 * self.d
    }

    /// Face labels of the cell at the origin: face `f ↦ +e_f`, `−e_{f−d}`.
    pub fn canonical_face_dirs(&self) -> Vec<SignedAxis> {
        canonical_dirs(self.d)
    }

    /// Spatial unit direction of face `f`'s center.
    pub fn face_direction(&self, f: usize) -> [f64; 3] {
        let n = self.normals[f].coords();
        let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        [n[0] / len, n[1] / len, n[2] / len]
    }

    /// Texture coordinates of a point on face `f`, scaled so the face's
    /// vertices lie on the unit circle.
    pub fn face_uv(&self, f: usize, p: &Vector<4>) -> [f64; 2] {
        let fr = &self.frames[f];
        let y = [p[0] / p[3] - fr.center[0], p[1] / p[3] - fr.center[1], p[2] / p[3] - fr.center[2]];
        [dot3(&y, &fr.a) / fr.radius, dot3(&y, &fr.b) / fr.radius]
    }

    /// Largest `⟨p, n_f⟩` over all faces; negative inside the cell.
    pub fn outside_margin(&self, p: &Vector<4>) -> f64 {
        self.normals
            .iter()
            .map(|n| mdot(p, n.coords()))
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross3(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn normalize3(v: [f64; 3]) -> [f64; 3] {
    let len = dot3(&v, &v).sqrt();
    [v[0] / len, v[1] / len, v[2] / len]
}

/// Builds a right-angled cell from the spatial directions of its first `d`
/// faces (the remaining faces are their negatives), the cosine between
/// edge-adjacent face directions, and the spatial vertex directions.
fn build(
    kind: HoneycombKind,
    half: &[[f64; 3]],
    adjacent_cos: f64,
    vertex_dirs: &[[f64; 3]],
) -> HoneycombSpec {
    let d = half.len();
    let p = 2 * d;
    let dirs: Vec<[f64; 3]> = half
        .iter()
        .map(|&u| normalize3(u))
        .chain(half.iter().map(|&u| normalize3([-u[0], -u[1], -u[2]])))
        .collect();
    // ⟨n_i, n_j⟩ = c cosh²r − sinh²r vanishes for cosh²r = 1 / (1 − c).
    let inradius = (1.0 / (1.0 - adjacent_cos)).sqrt().acosh();
    let normals: Vec<PlaneNormal<4>> = dirs
        .iter()
        .map(|u| PlaneNormal::at_distance(u, inradius))
        .collect();
    let opposite: Vec<usize> = (0..p).map(|f| (f + d) % p).collect();
    let cross = normals
        .iter()
        .map(|n| reflect_in_plane(n).expect("unit normals"))
        .collect();
    let relabel = (0..p)
        .map(|f| {
            let mut perm: Vec<usize> = (0..p).collect();
            perm.swap(f, opposite[f]);
            perm
        })
        .collect();
    let adjacent = (0..p)
        .map(|i| {
            (0..p)
                .map(|j| (dot3(&dirs[i], &dirs[j]) - adjacent_cos).abs() < ADJACENCY_TOL)
                .collect()
        })
        .collect();

    let tanh_r = inradius.tanh();
    let klein_vertices: Vec<[f64; 3]> = vertex_dirs
        .iter()
        .map(|&v| {
            let e = normalize3(v);
            // the vertex lies on every face whose direction is closest to it
            let best = dirs.iter().map(|u| dot3(u, &e)).fold(f64::NEG_INFINITY, f64::max);
            let s = tanh_r / best;
            [e[0] * s, e[1] * s, e[2] * s]
        })
        .collect();
    let vertices = klein_vertices
        .iter()
        .map(|k| Vector::<4>::new(k[0], k[1], k[2], 1.0))
        .collect();
    let frames = dirs
        .iter()
        .map(|u| {
            let center = [u[0] * tanh_r, u[1] * tanh_r, u[2] * tanh_r];
            let first = klein_vertices
                .iter()
                .find(|k| (dot3(k, u) - tanh_r).abs() < 1e-9)
                .expect("every face has vertices");
            let off = [first[0] - center[0], first[1] - center[1], first[2] - center[2]];
            let radius = dot3(&off, &off).sqrt();
            let a = normalize3(off);
            let b = cross3(u, &a);
            FaceFrame {
                center,
                a,
                b,
                radius,
            }
        })
        .collect();

    HoneycombSpec {
        kind,
        d,
        normals,
        opposite,
        cross,
        relabel,
        adjacent,
        vertices,
        frames,
        inradius,
    }
}

/// Octahedral cell of `{3,4,4}`.
pub fn spec_344() -> HoneycombSpec {
    let half = [[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]];
    let vertex_dirs = [
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ];
    build(HoneycombKind::Octahedral, &half, 1.0 / 3.0, &vertex_dirs)
}

/// Right-angled dodecahedral cell of `{5,3,4}`.
pub fn spec_534() -> HoneycombSpec {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let half = [
        [0.0, 1.0, phi],
        [0.0, -1.0, phi],
        [1.0, phi, 0.0],
        [-1.0, phi, 0.0],
        [phi, 0.0, 1.0],
        [phi, 0.0, -1.0],
    ];
    let ip = 1.0 / phi;
    let mut vertex_dirs = Vec::new();
    for sx in [1.0, -1.0] {
        for sy in [1.0, -1.0] {
            for sz in [1.0, -1.0] {
                vertex_dirs.push([sx, sy, sz]);
            }
        }
    }
    for s1 in [1.0, -1.0] {
        for s2 in [1.0, -1.0] {
            vertex_dirs.push([0.0, s1 * phi, s2 * ip]);
            vertex_dirs.push([s2 * ip, 0.0, s1 * phi]);
            vertex_dirs.push([s1 * phi, s2 * ip, 0.0]);
        }
    }
    build(HoneycombKind::Dodecahedral, &half, 1.0 / 5f64.sqrt(), &vertex_dirs)
}
