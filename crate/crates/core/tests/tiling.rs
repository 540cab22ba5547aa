mod common;

use std::collections::HashMap;

use common::tiling::*;
use common::{growth_layers, WordOracle};
use hypergrid::hypmath::{distance, to_disk};
use hypergrid::tiling2d::{new_patch, SignedAxis, TilePatch};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn growth_series_first_terms() {
    assert_eq!(growth_layers(6, 5), vec![1, 6, 24, 90, 336, 1254]);
}

#[test]
fn word_oracle_agrees_with_growth_series() {
    for d in 3..=5 {
        let oracle = WordOracle::new(d);
        let mut layers = vec![0u64; 5];
        for (len, _) in oracle.ball(4) {
            layers[len] += 1;
        }
        assert_eq!(layers, growth_layers(2 * d, 4), "d={d}");
    }
}

#[test]
fn patches_match_the_word_oracle() {
    for (d, r) in [(3, 6), (4, 5), (5, 4), (6, 4)] {
        let mut patch = new_patch(d).unwrap();
        patch.expand(r).unwrap();
        matches_word_oracle(&patch, r).unwrap_or_else(|e| panic!("d={d}: {e}"));
    }
}

#[test]
fn patches_satisfy_all_invariants() {
    for (d, r) in [(3, 5), (4, 4), (5, 3), (6, 3)] {
        let mut patch = new_patch(d).unwrap();
        patch.expand(r).unwrap();
        full_check(&patch).unwrap_or_else(|e| panic!("d={d}: {e}"));
    }
}

#[test]
fn small_balls_cover_small_grid_balls() {
    for d in 3..=4 {
        let k = 3;
        let mut patch = new_patch(d).unwrap();
        patch.expand(k).unwrap();
        let coords: std::collections::HashSet<_> = patch.tiles().iter().map(|t| t.coord.clone()).collect();
        let mut count = 0;
        let mut z = vec![-(k as i64); d];
        loop {
            if z.iter().map(|x| x.abs()).sum::<i64>() <= k as i64 {
                assert!(coords.contains(&z), "missing {z:?}");
                count += 1;
            }
            let mut i = 0;
            while i < d {
                z[i] += 1;
                if z[i] <= k as i64 {
                    break;
                }
                z[i] = -(k as i64);
                i += 1;
            }
            if i == d {
                break;
            }
        }
        assert!(count > 0);
    }
}

#[test]
fn vertex_loops_return_with_zero_net_change() {
    let mut patch = new_patch(3).unwrap();
    patch.expand(5).unwrap();
    let n = vertex_squares(&patch).unwrap();
    // at least every vertex of the 121 tiles within 3 steps
    assert!(n >= 121 * 6, "{n}");
}

#[test]
fn corner_adjacency_has_twelve_tiles() {
    let mut patch = new_patch(3).unwrap();
    patch.expand(5).unwrap();
    assert!(corner_counts(&patch, 5).unwrap() > 100);
}

#[test]
fn same_coordinate_tiles_are_far_apart() {
    let mut patch = new_patch(3).unwrap();
    patch.expand(6).unwrap();
    let mut by_coord: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    for t in patch.tiles() {
        by_coord.entry(t.coord.clone()).or_default().push(t.id);
    }
    let two_r = 2.0 * patch.params().inradius;
    let mut repeated = 0;
    for ids in by_coord.values().filter(|v| v.len() > 1) {
        repeated += 1;
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                let dd = distance(&patch.tile(a).unwrap().center(), &patch.tile(b).unwrap().center());
                assert!(dd > 2.0 * two_r, "copies of a coordinate at distance {dd}");
            }
        }
    }
    assert!(repeated > 0, "radius 6 already repeats coordinates");
}

fn physical_key(x: f64, y: f64) -> (i64, i64) {
    ((x * 1e6).round() as i64, (y * 1e6).round() as i64)
}

/// Coordinate and per-edge-midpoint labels keyed by the tile's location.
fn physical_labels(patch: &TilePatch, max_depth: u32) -> HashMap<(i64, i64), (Vec<i64>, Vec<((i64, i64), SignedAxis)>)> {
    let mut out = HashMap::new();
    for t in patch.tiles().iter().filter(|t| t.depth <= max_depth) {
        let c = to_disk(&t.center(), 1.0);
        let mut edges: Vec<_> = (0..patch.params().p)
            .map(|k| {
                let m = to_disk(&patch.edge_midpoint(t.id, k).unwrap(), 1.0);
                (physical_key(m.x, m.y), t.edge_dirs[k])
            })
            .collect();
        edges.sort();
        out.insert(physical_key(c.x, c.y), (t.coord.clone(), edges));
    }
    out
}

#[test]
fn discovery_order_does_not_matter() {
    let radius = 4;
    let mut reference = new_patch(3).unwrap();
    reference.expand(radius).unwrap();
    let want = physical_labels(&reference, radius);
    for seed in 0..5 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut patch = new_patch(3).unwrap();
        // random depth-first forays, then fill in
        for _ in 0..300 {
            let id = rng.gen_range(0..patch.len());
            if patch.tile(id).unwrap().depth < radius {
                let k = rng.gen_range(0..6);
                patch.neighbor(id, k).unwrap();
            }
        }
        let mut order: Vec<(usize, usize)> = (0..patch.len()).flat_map(|i| (0..6).map(move |k| (i, k))).collect();
        order.shuffle(&mut rng);
        order.retain(|&(i, _)| patch.tile(i).unwrap().depth < radius);
        patch.expand_in_order(&order).unwrap();
        patch.expand(radius).unwrap();
        assert!(patch.conflicts().is_empty());
        let got = physical_labels(&patch, radius);
        assert_eq!(got.len(), want.len(), "seed {seed}");
        for (k, v) in &want {
            assert_eq!(got.get(k), Some(v), "seed {seed}");
        }
    }
}

#[test]
fn expand_within_reaches_all_close_tiles() {
    let mut by_radius = new_patch(4).unwrap();
    by_radius.expand(5).unwrap();
    let mut by_distance = new_patch(4).unwrap();
    by_distance.expand_within(&origin(), 4.0).unwrap();
    let near = |p: &TilePatch| {
        let mut v: Vec<_> = p
            .tiles()
            .iter()
            .filter(|t| distance(&origin(), &t.center()) <= 4.0)
            .map(|t| {
                let q = to_disk(&t.center(), 1.0);
                physical_key(q.x, q.y)
            })
            .collect();
        v.sort();
        v
    };
    assert_eq!(near(&by_radius), near(&by_distance));
}

#[test]
fn rooted_patch_keeps_its_labels() {
    let mut base = new_patch(3).unwrap();
    base.expand(2).unwrap();
    let t = base.tile(7).unwrap().clone();
    let mut rooted = TilePatch::rooted(3, t.coord.clone(), t.edge_dirs.clone()).unwrap();
    rooted.expand(3).unwrap();
    full_check(&rooted).unwrap();
    assert_eq!(rooted.tile(0).unwrap().coord, t.coord);
}

proptest! {
    #[test]
    fn random_walks_track_coordinates(d in 3usize..=6, steps in proptest::collection::vec(0usize..12, 1..30)) {
        let mut patch = new_patch(d).unwrap();
        let mut id = 0;
        let mut z = vec![0i64; d];
        for s in steps {
            let k = s % (2 * d);
            let dir = patch.tile(id).unwrap().edge_dirs[k];
            id = patch.neighbor(id, k).unwrap();
            z[dir.axis()] += dir.sign();
            prop_assert_eq!(&patch.tile(id).unwrap().coord, &z);
        }
        prop_assert!(patch.conflicts().is_empty());
        labels_valid(&patch).unwrap();
        links_consistent(&patch).unwrap();
    }
}
