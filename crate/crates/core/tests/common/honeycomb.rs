//! Checks on the honeycomb cells and the raycaster.
//!
//! Face adjacency, the inradius and the vertices are recomputed here from
//! the face directions alone: adjacency from the dot products, the inradius
//! by bisection, and the vertices by intersecting triples of face planes.

use hypergrid::honeycomb3d::*;
use hypergrid::hypmath::{mdot, HDirection, HPoint, Vector};
use nalgebra::{Matrix3, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn spatial(v: &Vector<4>) -> Vector3<f64> {
    Vector3::new(v[0], v[1], v[2])
}

/// Face pairs sharing an edge: the pairs of faces with the largest dot
/// product between their (distinct, non-opposite) spatial directions.
pub fn edge_pairs(spec: &HoneycombSpec) -> Vec<(usize, usize)> {
    let p = spec.face_count();
    let dirs: Vec<Vector3<f64>> = (0..p).map(|f| spatial(spec.normals[f].coords()).normalize()).collect();
    let mut best = f64::NEG_INFINITY;
    for i in 0..p {
        for j in 0..p {
            if i != j {
                best = best.max(dirs[i].dot(&dirs[j]));
            }
        }
    }
    let mut out = Vec::new();
    for i in 0..p {
        for j in i + 1..p {
            if (dirs[i].dot(&dirs[j]) - best).abs() < 1e-9 {
                out.push((i, j));
            }
        }
    }
    out
}

/// Distance `r` at which two face planes whose directions meet at cosine
/// `c` become orthogonal, found by bisection on `c cosh²r − sinh²r`.
pub fn bisect_inradius(c: f64) -> f64 {
    let f = |r: f64| c * r.cosh().powi(2) - r.sinh().powi(2);
    let (mut lo, mut hi) = (0.0, 10.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Largest `|⟨nᵢ,nⱼ⟩|` over edge-sharing faces, after checking the expected
/// edge count and that each normal matches the bisected inradius.
pub fn orthogonality(spec: &HoneycombSpec, expected_edges: usize) -> Result<f64, String> {
    let pairs = edge_pairs(spec);
    if pairs.len() != expected_edges {
        return Err(format!("{} edges, expected {expected_edges}", pairs.len()));
    }
    let (i, j) = pairs[0];
    let c = spatial(spec.normals[i].coords())
        .normalize()
        .dot(&spatial(spec.normals[j].coords()).normalize());
    let r = bisect_inradius(c);
    for (f, n) in spec.normals.iter().enumerate() {
        let n = n.coords();
        if (mdot(n, n) - 1.0).abs() > 1e-12 {
            return Err(format!("normal {f} is not unit"));
        }
        if (n[3] - r.sinh()).abs() > 1e-9 {
            return Err(format!("normal {f} at the wrong distance: {} vs {}", n[3], r.sinh()));
        }
    }
    Ok(pairs
        .iter()
        .map(|&(i, j)| mdot(spec.normals[i].coords(), spec.normals[j].coords()).abs())
        .fold(0.0, f64::max))
}

/// Cell vertices as `(x, y, z, 1)`, from every triple of face planes whose
/// intersection lies on the closed cell.
pub fn plane_vertices(spec: &HoneycombSpec) -> Vec<Vector<4>> {
    let p = spec.face_count();
    let mut out: Vec<Vector<4>> = Vec::new();
    for i in 0..p {
        for j in i + 1..p {
            for k in j + 1..p {
                let rows: Vec<&Vector<4>> = [i, j, k].iter().map(|&f| spec.normals[f].coords()).collect();
                // ⟨(x,1), n⟩ = n_s·x − n_t = 0
                let m = Matrix3::from_rows(&[
                    spatial(rows[0]).transpose(),
                    spatial(rows[1]).transpose(),
                    spatial(rows[2]).transpose(),
                ]);
                let rhs = Vector3::new(rows[0][3], rows[1][3], rows[2][3]);
                let Some(x) = m.lu().solve(&rhs) else { continue };
                let v = Vector::<4>::new(x[0], x[1], x[2], 1.0);
                if m.determinant().abs() < 1e-9 || spec.outside_margin(&v) > 1e-9 {
                    continue;
                }
                if !out.iter().any(|w| (w - v).abs().max() < 1e-9) {
                    out.push(v);
                }
            }
        }
    }
    out
}

/// Checks the plane-intersection vertices against the cell's own vertex
/// list and returns them with their Minkowski norms.
pub fn vertices(spec: &HoneycombSpec, expected: usize) -> Result<Vec<f64>, String> {
    let vs = plane_vertices(spec);
    if vs.len() != expected {
        return Err(format!("{} vertices, expected {expected}", vs.len()));
    }
    for v in &vs {
        if !spec.vertices.iter().any(|w| (w - v).abs().max() < 1e-9) {
            return Err(format!("vertex {v:?} missing from the cell"));
        }
    }
    Ok(vs.iter().map(|v| mdot(v, v)).collect())
}

/// A random ray strictly inside the canonical cell.
pub fn random_ray(spec: &HoneycombSpec, rng: &mut impl Rng) -> (HPoint<4>, HDirection<4>) {
    loop {
        let x: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let x = [x[0] * spec.inradius, x[1] * spec.inradius, x[2] * spec.inradius];
        let p = hypergrid::hypmath::exp_origin::<4>(&x);
        if spec.outside_margin(p.coords()) > -1e-3 {
            continue;
        }
        let mut u = [0.0; 3];
        for c in &mut u {
            *c = rng.gen_range(-1.0..1.0);
        }
        let v = Vector::<4>::new(u[0], u[1], u[2], 0.0);
        if v.norm() < 0.1 {
            continue;
        }
        let dir = HDirection::tangent(p, v).unwrap();
        return (p, dir);
    }
}

/// Runs `k` steps forward and `k` back for `rays` random rays; returns the
/// largest position error at the starting point.
pub fn reversibility(spec: &HoneycombSpec, rays: usize, seed: u64) -> Result<f64, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = vec![0i64; spec.d];
    let mut worst: f64 = 0.0;
    for n in 0..rays {
        let (p, v) = random_ray(spec, &mut rng);
        let k = rng.gen_range(1..=12);
        let s0 = RayState::new(spec, &start, p, v).map_err(|e| e.to_string())?;
        let mut s = s0.clone();
        let mut path = vec![s.coord().to_vec()];
        for _ in 0..k {
            advance_in_place(spec, &mut s).map_err(|e| format!("ray {n}: {e}"))?;
            path.push(s.coord().to_vec());
        }
        let mut r = s.reversed();
        for i in (0..k).rev() {
            advance_in_place(spec, &mut r).map_err(|e| format!("ray {n} back: {e}"))?;
            if r.coord() != path[i].as_slice() {
                return Err(format!("ray {n}: step back {i} at {:?}, expected {:?}", r.coord(), path[i]));
            }
        }
        if r.face_dirs() != s0.face_dirs() {
            return Err(format!("ray {n}: face labels differ after returning"));
        }
        let rest = s.traveled - r.traveled;
        let back = r.pos_vec() * rest.cosh() + r.dir_vec() * rest.sinh();
        worst = worst.max((back - s0.pos_vec()).abs().max());
    }
    Ok(worst)
}

/// Walks `k` cells along each face direction from the cell center.
pub fn axis_walks(spec: &HoneycombSpec, k: usize) -> Result<(), String> {
    let origin = HPoint::origin();
    for f in 0..spec.face_count() {
        let u = spec.face_direction(f);
        let dir = HDirection::tangent(origin, Vector::<4>::new(u[0], u[1], u[2], 0.0)).unwrap();
        let mut s = RayState::new(spec, &vec![0; spec.d], origin, dir).map_err(|e| e.to_string())?;
        let delta = spec.canonical_face_dirs()[f];
        for _ in 0..k {
            advance_in_place(spec, &mut s).map_err(|e| e.to_string())?;
        }
        let mut want = vec![0i64; spec.d];
        want[delta.axis()] = delta.sign() * k as i64;
        if s.coord() != want.as_slice() {
            return Err(format!("face {f}: reached {:?}, expected {want:?}", s.coord()));
        }
    }
    Ok(())
}

/// Renders scene `E` of the octahedral honeycomb and returns
/// `(hits, misses)`, failing on any hit with first coordinate other than ±1.
pub fn scene_e_hits(opts: &RenderOptions) -> Result<(usize, usize), String> {
    let spec = spec_344();
    let scene = Scene::new(SceneId::E, 4);
    let mut hits = 0;
    let mut misses = 0;
    for face in [0, 2, 4, 5] {
        let cam = place_camera(&spec, &scene.start_cell(), &CameraSpec::looking_at_face(&spec, face))
            .map_err(|e| e.to_string())?;
        let fill = |z: &[i64]| scene.fill(z);
        for t in trace_pixels(&spec, &fill, &cam, opts).map_err(|e| e.to_string())? {
            match t.hit() {
                Some(h) if h.coord[0].abs() == 1 => hits += 1,
                Some(h) => return Err(format!("hit at {:?}", h.coord)),
                None => misses += 1,
            }
        }
    }
    Ok((hits, misses))
}
