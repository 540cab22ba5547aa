//! Numerical checks on the hyperboloid primitives.

use hypergrid::hypmath::{
    exp_origin, geodesic_at, ray_plane_hit, HPoint, translation_to, HDirection, HIsometry, IsometryAccumulator, PlaneNormal, Vector,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::march_plane_hit;

/// Composes `n` random rotations and translations of H³ and returns the
/// largest `|MᵀJM − J|` seen along the way. Translations head back toward
/// the origin once the product has wandered three units away, so the walk
/// stays in a range where double precision is meaningful.
pub fn accumulated_drift(n: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = IsometryAccumulator::<4>::default();
    let origin = HPoint::<4>::origin();
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        let (i, j) = [(0, 1), (1, 2), (0, 2)][rng.gen_range(0..3)];
        let rot = HIsometry::rotation(i, j, rng.gen_range(-3.2..3.2));
        let here = acc.get().inverse().apply(&origin);
        let step = if here.time() > 3f64.cosh() {
            let c = here.coords();
            let len = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
            translation_to(&exp_origin::<4>(&[c[0] / len * 0.7, c[1] / len * 0.7, c[2] / len * 0.7]))
        } else {
            HIsometry::translation_along(rng.gen_range(0..3), rng.gen_range(-0.7..0.7))
        };
        acc.push(&step.compose(&rot)).expect("renormalization succeeds");
        worst = worst.max(acc.get().form_error());
    }
    worst
}

/// Compares `ray_plane_hit` with dense marching on `n` random rays and
/// planes. Returns `(max |Δt| over rays that hit, number of hits)`.
pub fn ray_plane_vs_march(n: usize, seed: u64) -> Result<(f64, usize), String> {
    const T_MAX: f64 = 6.0;
    const DT: f64 = 2e-4;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    let mut hits = 0;
    for case in 0..n {
        let spatial = |rng: &mut ChaCha8Rng, r: f64| -> [f64; 3] {
            let v: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
            let len = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt().max(1e-6);
            [v[0] / len * r, v[1] / len * r, v[2] / len * r]
        };
        let r = rng.gen_range(0.0..1.5);
        let p = exp_origin::<4>(&spatial(&mut rng, r));
        let u = spatial(&mut rng, 1.0);
        let v = HDirection::tangent(p, Vector::<4>::new(u[0], u[1], u[2], 0.0)).unwrap();
        // even cases: a plane through a point of the ray; odd: anywhere
        let plane = if case % 2 == 0 {
            let q = geodesic_at(&p, &v, rng.gen_range(0.0..T_MAX - 0.5)).unwrap();
            translation_to(&q).apply_normal(&PlaneNormal::<4>::at_distance(&spatial(&mut rng, 1.0), 0.0))
        } else {
            let dist = rng.gen_range(0.0..2.0);
            let base = PlaneNormal::<4>::at_distance(&spatial(&mut rng, 1.0), dist);
            let r = rng.gen_range(0.0..0.5);
            translation_to(&exp_origin::<4>(&spatial(&mut rng, r))).apply_normal(&base)
        };

        let got = ray_plane_hit(&p, &v, &plane);
        let want = march_plane_hit(p.coords().as_slice(), v.coords().as_slice(), plane.coords().as_slice(), DT, T_MAX);
        match (got, want) {
            (Some(a), Some(b)) => {
                worst = worst.max((a - b).abs());
                hits += 1;
            }
            (None, None) => {}
            // hits beyond the marching window are fine
            (Some(a), None) if a > T_MAX - 2.0 * DT => {}
            (g, w) => return Err(format!("case {case}: closed form {g:?}, marching {w:?}")),
        }
    }
    Ok((worst, hits))
}

/// Interior angles of the constructed `2d`-gon, measured from its vertices
/// alone: the angle at `v` between the geodesics to its two neighbors.
pub fn polygon_angles(d: usize) -> Vec<f64> {
    let params = hypergrid::tiling2d::polygon_metrics(d).expect("supported dimension");
    let p = params.p;
    let vs: Vec<Vector<3>> = (0..p).map(|k| *params.vertex(k).coords()).collect();
    let dot = |a: &Vector<3>, b: &Vector<3>| a[0] * b[0] + a[1] * b[1] - a[2] * b[2];
    // tangent at v pointing toward w: w + ⟨w,v⟩v
    let toward = |v: &Vector<3>, w: &Vector<3>| w + v * dot(w, v);
    (0..p)
        .map(|k| {
            let v = &vs[k];
            let a = toward(v, &vs[(k + p - 1) % p]);
            let b = toward(v, &vs[(k + 1) % p]);
            (dot(&a, &b) / (dot(&a, &a) * dot(&b, &b)).sqrt()).clamp(-1.0, 1.0).acos()
        })
        .collect()
}
