//! Structural checks over a materialized tile patch.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use hypergrid::hypmath::{distance, mdot, to_disk, HPoint, Vector};
use hypergrid::tiling2d::{validate_dirs, SignedAxis, TilePatch};

use super::{dihedral_canonical, growth_layers, WordOracle};

fn l1(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

fn encode(dir: SignedAxis) -> i8 {
    (dir.axis as i8 + 1) * dir.sign() as i8
}

/// Tiles whose every edge is linked.
fn complete(patch: &TilePatch) -> impl Iterator<Item = &hypergrid::tiling2d::Tile> {
    patch.tiles().iter().filter(|t| t.links.iter().all(Option::is_some))
}

/// Edge-label bijection and opposite rule on every tile.
pub fn labels_valid(patch: &TilePatch) -> Result<(), String> {
    for t in patch.tiles() {
        if !validate_dirs(&t.edge_dirs, patch.d()) {
            return Err(format!("tile {} has invalid labels {:?}", t.id, t.edge_dirs));
        }
    }
    Ok(())
}

/// Beyond this timelike coordinate double precision no longer resolves
/// tile geometry, so geometric checks skip such tiles.
pub const RESOLVABLE_TIME: f64 = 1e4;

/// Links are symmetric, carry opposite labels, step the coordinate by the
/// label, and put both tiles on the same physical edge.
pub fn links_consistent(patch: &TilePatch) -> Result<(), String> {
    let two_r = 2.0 * patch.params().inradius;
    for t in patch.tiles() {
        for (k, link) in t.links.iter().enumerate() {
            let Some(link) = link else { continue };
            let other = patch.tile(link.tile).unwrap();
            let back = other.links[link.edge].ok_or("one-sided link")?;
            if back.tile != t.id || back.edge != k {
                return Err(format!("asymmetric link {} -> {}", t.id, other.id));
            }
            if other.edge_dirs[link.edge] != t.edge_dirs[k].flip() {
                return Err(format!("labels disagree across {} / {}", t.id, other.id));
            }
            let mut z = t.coord.clone();
            z[t.edge_dirs[k].axis()] += t.edge_dirs[k].sign();
            if z != other.coord {
                return Err(format!("coord step wrong across {} / {}", t.id, other.id));
            }
            if t.center().time().max(other.center().time()) > RESOLVABLE_TIME {
                continue;
            }
            let m1 = patch.edge_midpoint(t.id, k).unwrap();
            let m2 = patch.edge_midpoint(other.id, link.edge).unwrap();
            if distance(&m1, &m2) > 1e-6 {
                return Err(format!("edge midpoints differ across {} / {}", t.id, other.id));
            }
            let dc = distance(&t.center(), &other.center());
            if (dc - two_r).abs() > 1e-6 {
                return Err(format!("centers {} / {} at distance {dc}", t.id, other.id));
            }
        }
    }
    Ok(())
}

/// No two tiles occupy the same place.
pub fn centers_distinct(patch: &TilePatch) -> Result<(), String> {
    let mut seen: HashMap<(i64, i64), usize> = HashMap::new();
    for t in patch.tiles() {
        let q = to_disk(&t.center(), 1.0);
        // Tile centers are far apart in the hyperbolic metric; compare the
        // neighbours of the bucket with the exact distance.
        let key = ((q.x * 1e5).round() as i64, (q.y * 1e5).round() as i64);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(&o) = seen.get(&(key.0 + dx, key.1 + dy)) {
                    let other = patch.tile(o).unwrap();
                    if distance(&t.center(), &other.center()) < 1e-3 {
                        return Err(format!("tiles {} and {} coincide", t.id, o));
                    }
                }
            }
        }
        seen.insert(key, t.id);
    }
    Ok(())
}

/// Every complete tile's neighbors are exactly the `2d` grid neighbors.
pub fn adjacency_iff(patch: &TilePatch) -> Result<(), String> {
    let d = patch.d();
    for t in complete(patch) {
        let mut dirs = BTreeSet::new();
        for (k, link) in t.links.iter().enumerate() {
            let other = patch.tile(link.unwrap().tile).unwrap();
            if l1(&t.coord, &other.coord) != 1 {
                return Err(format!("edge neighbors {} / {} not at L1 distance 1", t.id, other.id));
            }
            dirs.insert(t.edge_dirs[k]);
        }
        if dirs.len() != 2 * d {
            return Err(format!("tile {} misses a direction", t.id));
        }
    }
    Ok(())
}

/// The four tiles around each vertex form a unit square in `Z^d`.
pub fn vertex_squares(patch: &TilePatch) -> Result<usize, String> {
    let p = patch.params().p;
    let mut checked = 0;
    for t in complete(patch) {
        for v in 0..p {
            let Some(ring) = patch.vertex_ring_known(t.id, v) else {
                continue;
            };
            // one more step must close the loop
            let last = patch.tile(ring[3]).unwrap();
            let closes = last.links.iter().flatten().any(|l| l.tile == t.id);
            if !closes {
                return Err(format!("vertex {v} of {} does not close", t.id));
            }
            let c: Vec<_> = ring.iter().map(|&i| patch.tile(i).unwrap().coord.clone()).collect();
            let d1: Vec<i64> = c[1].iter().zip(&c[0]).map(|(a, b)| a - b).collect();
            let d2: Vec<i64> = c[3].iter().zip(&c[0]).map(|(a, b)| a - b).collect();
            let opp: Vec<i64> = c[0].iter().zip(&d1).zip(&d2).map(|((z, a), b)| z + a + b).collect();
            let axis = |v: &[i64]| v.iter().position(|&x| x != 0);
            if l1(&d1, &vec![0; d1.len()]) != 1
                || l1(&d2, &vec![0; d2.len()]) != 1
                || axis(&d1) == axis(&d2)
                || opp != c[2]
            {
                return Err(format!("vertex {v} of tile {} is not a square: {c:?}", t.id));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// Minkowski normal of the geodesic through two points.
fn line_normal(a: &Vector<3>, b: &Vector<3>) -> Vector<3> {
    // J (a × b), so that ⟨x, n⟩ = det(x, a, b)
    let c = a.cross(b);
    let n = Vector::<3>::new(c[0], c[1], -c[2]);
    n / mdot(&n, &n).sqrt()
}

/// Walking through opposite edges moves along one grid line and along one
/// hyperbolic geodesic.
pub fn straight_lines(patch: &TilePatch, len: usize) -> Result<usize, String> {
    let mut patch = patch.clone();
    let p = patch.params().p;
    let n = patch.len();
    let mut checked = 0;
    for id in 0..n {
        for k in 0..p {
            let walk = patch.straight_walk(id, k, len).map_err(|e| e.to_string())?;
            let t = patch.tile(id).unwrap();
            let dir = t.edge_dirs[k];
            let c0 = t.center();
            let c1 = patch.tile(walk[0]).unwrap().center();
            let normal = line_normal(c0.coords(), c1.coords());
            for (m, &w) in walk.iter().enumerate() {
                let wt = patch.tile(w).unwrap();
                let mut z = t.coord.clone();
                z[dir.axis()] += dir.sign() * (m as i64 + 1);
                if wt.coord != z {
                    return Err(format!("walk from {id} along {k} leaves the grid line"));
                }
                let c = wt.center();
                if c.time() > RESOLVABLE_TIME {
                    break;
                }
                let off = mdot(c.coords(), &normal) / c.time();
                if off.abs() > 1e-6 {
                    return Err(format!("walk from {id} along {k} leaves the geodesic ({off})"));
                }
            }
            checked += 1;
        }
        if checked > 400 {
            break;
        }
    }
    Ok(checked)
}

/// Layer counts and the labeled tile multiset agree with the word oracle.
pub fn matches_word_oracle(patch: &TilePatch, radius: u32) -> Result<(), String> {
    let d = patch.d();
    let p = 2 * d;
    let expected = growth_layers(p, radius as usize);
    let mut layers = vec![0u64; radius as usize + 1];
    for t in patch.tiles() {
        layers[t.depth as usize] += 1;
    }
    if layers != expected {
        return Err(format!("layer counts {layers:?}, growth series {expected:?}"));
    }
    let oracle = WordOracle::new(d);
    let mut want: BTreeMap<(usize, Vec<i64>, Vec<i8>), usize> = BTreeMap::new();
    for (len, word) in oracle.ball(radius as usize) {
        let (coord, labels) = oracle.labels(&word);
        *want.entry((len, coord, dihedral_canonical(&labels))).or_default() += 1;
    }
    let mut got: BTreeMap<(usize, Vec<i64>, Vec<i8>), usize> = BTreeMap::new();
    for t in patch.tiles() {
        let labels: Vec<i8> = t.edge_dirs.iter().map(|&e| encode(e)).collect();
        *got.entry((t.depth as usize, t.coord.clone(), dihedral_canonical(&labels))).or_default() += 1;
    }
    if got != want {
        return Err("labeled tile multiset differs from the word oracle".into());
    }
    Ok(())
}

/// Tiles sharing at least a vertex with `id`.
pub fn corner_neighbors(patch: &TilePatch, id: usize) -> Option<BTreeSet<usize>> {
    let p = patch.params().p;
    let mut out = BTreeSet::new();
    for v in 0..p {
        let ring = patch.vertex_ring_known(id, v)?;
        out.extend(ring[1..].iter().copied());
    }
    Some(out)
}

/// Every tile at least two layers inside the patch has 12 corner neighbors:
/// 6 one-coordinate and 6 two-coordinate deltas.
pub fn corner_counts(patch: &TilePatch, radius: u32) -> Result<usize, String> {
    let mut checked = 0;
    for t in patch.tiles().iter().filter(|t| t.depth + 2 <= radius) {
        let set = corner_neighbors(patch, t.id).ok_or("ring missing")?;
        let mut one = 0;
        let mut two = 0;
        for &o in &set {
            let oc = &patch.tile(o).unwrap().coord;
            let nz = t.coord.iter().zip(oc).filter(|(a, b)| a != b).count();
            match (nz, l1(&t.coord, oc)) {
                (1, 1) => one += 1,
                (2, 2) => two += 1,
                _ => return Err(format!("tile {} has corner neighbor with coord {oc:?}", t.id)),
            }
        }
        if set.len() != 12 || one != 6 || two != 6 {
            return Err(format!("tile {}: {} corner neighbors ({one}+{two})", t.id, set.len()));
        }
        checked += 1;
    }
    Ok(checked)
}

/// All checks for a patch expanded to `radius`.
pub fn full_check(patch: &TilePatch) -> Result<(), String> {
    if !patch.conflicts().is_empty() {
        return Err(format!("{} closure conflicts", patch.conflicts().len()));
    }
    labels_valid(patch)?;
    links_consistent(patch)?;
    adjacency_iff(patch)?;
    vertex_squares(patch)?;
    straight_lines(patch, 3)?;
    centers_distinct(patch)?;
    Ok(())
}

pub fn origin() -> HPoint<3> {
    HPoint::origin()
}
