//! The `{2d,4}` tessellation of the hyperbolic plane labeled by `Z^d`.
//!
//! Every tile is a regular right-angled `2d`-gon. Each edge carries a signed
//! axis label; crossing edge `k` adds `edge_dirs[k]` to the tile coordinate.
//! Opposite edges carry opposite labels, and a neighbor's labels are the
//! mirror image of its parent's labels in the shared edge. The result is a
//! map from tiles to `Z^d` under which edge adjacency corresponds exactly to
//! unit steps in the grid.
//!
//! Tiles are discovered lazily. Identity is purely combinatorial: every tile
//! remembers its breadth-first depth, all of its parents (neighbors one layer
//! closer to the root) are always linked, and creating a tile links it to its
//! second parent through the square around the shared vertex. No floating
//! point comparison is ever used to decide whether two tiles coincide.

use std::f64::consts::PI;
use std::fmt;

use thiserror::Error;

use crate::hypmath::{
    self, distance, reorthonormalize, HIsometry, HPoint, PlaneNormal, Vector, RENORMALIZE_EVERY,
};

pub const MIN_DIM: usize = 3;
pub const MAX_DIM: usize = 6;

pub type TileId = usize;
pub type Coord = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TilingError {
    #[error("dimension {0} is outside the supported range 3..=6")]
    BadDimension(usize),
    #[error("no tile with id {0}")]
    UnknownTile(TileId),
    #[error("edge index {edge} out of range for a {p}-gon")]
    BadEdge { edge: usize, p: usize },
    #[error("edge labeling is not a valid signed-axis bijection")]
    BadLabeling,
    #[error("labeling conflict between tiles {a} and {b}")]
    Conflict { a: TileId, b: TileId },
}

/// A signed unit vector `±e_axis` of `Z^d` (axes are zero-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedAxis {
    pub axis: u8,
    pub negative: bool,
}

impl SignedAxis {
    pub fn pos(axis: usize) -> Self {
        SignedAxis {
            axis: axis as u8,
            negative: false,
        }
    }

    pub fn neg(axis: usize) -> Self {
        SignedAxis {
            axis: axis as u8,
            negative: true,
        }
    }

    pub fn new(axis: usize, sign: i32) -> Self {
        if sign < 0 {
            Self::neg(axis)
        } else {
            Self::pos(axis)
        }
    }

    pub fn axis(self) -> usize {
        self.axis as usize
    }

    pub fn sign(self) -> i64 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn flip(self) -> Self {
        SignedAxis {
            axis: self.axis,
            negative: !self.negative,
        }
    }

    /// Dense index in `0..2d`: `+e_a ↦ a`, `−e_a ↦ a + d`.
    pub fn index(self, d: usize) -> usize {
        self.axis() + if self.negative { d } else { 0 }
    }
}

impl fmt::Display for SignedAxis {
    /// One-based, as shown to players: `+1`, `-3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.negative { '-' } else { '+' };
        write!(f, "{s}{}", self.axis + 1)
    }
}

/// `coord + dir`.
pub fn step(coord: &[i64], dir: SignedAxis) -> Coord {
    let mut c = coord.to_vec();
    c[dir.axis()] += dir.sign();
    c
}

/// Canonical labeling: edge `k ↦ +e_k` for `k < d`, `−e_{k−d}` otherwise.
pub fn canonical_dirs(d: usize) -> Vec<SignedAxis> {
    (0..2 * d)
        .map(|k| {
            if k < d {
                SignedAxis::pos(k)
            } else {
                SignedAxis::neg(k - d)
            }
        })
        .collect()
}

/// Checks bijectivity and the opposite-edge rule.
pub fn validate_dirs(dirs: &[SignedAxis], d: usize) -> bool {
    if dirs.len() != 2 * d {
        return false;
    }
    let mut seen = vec![false; 2 * d];
    for (k, dir) in dirs.iter().enumerate() {
        if dir.axis() >= d || seen[dir.index(d)] || dirs[(k + d) % (2 * d)] != dir.flip() {
            return false;
        }
        seen[dir.index(d)] = true;
    }
    true
}

/// Metrics of the regular right-angled `2d`-gon.
#[derive(Debug, Clone, PartialEq)]
pub struct TilingParams {
    pub d: usize,
    pub p: usize,
    pub q: usize,
    /// Center to vertex.
    pub circumradius: f64,
    /// Center to edge midpoint.
    pub inradius: f64,
    pub edge_length: f64,
}

pub fn polygon_metrics(d: usize) -> Result<TilingParams, TilingError> {
    if !(MIN_DIM..=MAX_DIM).contains(&d) {
        return Err(TilingError::BadDimension(d));
    }
    let p = 2 * d;
    let q = 4;
    let (ap, aq) = (PI / p as f64, PI / q as f64);
    let circumradius = (1.0 / (ap.tan() * aq.tan())).acosh();
    let inradius = (aq.cos() / ap.sin()).acosh();
    let edge_length = 2.0 * (ap.cos() / aq.sin()).acosh();
    Ok(TilingParams {
        d,
        p,
        q,
        circumradius,
        inradius,
        edge_length,
    })
}

impl TilingParams {
    /// Angle of the midpoint of edge `k` in the canonical polygon.
    pub fn edge_angle(&self, k: usize) -> f64 {
        2.0 * PI * k as f64 / self.p as f64
    }

    /// Vertex `k` sits between edges `k` and `k + 1`.
    pub fn vertex(&self, k: usize) -> HPoint<3> {
        let a = self.edge_angle(k) + PI / self.p as f64;
        let r = self.circumradius;
        hypmath::exp_origin::<3>(&[r * a.cos(), r * a.sin()])
    }

    pub fn edge_midpoint(&self, k: usize) -> HPoint<3> {
        let a = self.edge_angle(k);
        let r = self.inradius;
        hypmath::exp_origin::<3>(&[r * a.cos(), r * a.sin()])
    }

    /// Outward normal of edge `k`; the polygon is where every side is negative.
    pub fn edge_normal(&self, k: usize) -> PlaneNormal<3> {
        let a = self.edge_angle(k);
        PlaneNormal::at_distance(&[a.cos(), a.sin()], self.inradius)
    }

    /// Half-turn about the midpoint of edge `k`: maps the canonical polygon
    /// onto its neighbor across that edge, fixing the edge itself.
    pub fn edge_step(&self, k: usize) -> HIsometry<3> {
        let a = self.edge_angle(k);
        HIsometry::rotation(0, 1, a)
            .compose(&HIsometry::translation_along(0, 2.0 * self.inradius))
            .compose(&HIsometry::rotation(0, 1, PI - a))
    }
}

/// A link from one tile edge to the tile across it, with the edge index on
/// the far side that points back.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Link {
    pub tile: TileId,
    pub edge: usize,
}

#[derive(Debug, Clone)]
pub struct Tile {
    pub id: TileId,
    pub placement: HIsometry<3>,
    pub coord: Coord,
    pub edge_dirs: Vec<SignedAxis>,
    pub links: Vec<Option<Link>>,
    /// Edge steps from the patch root.
    pub depth: u32,
    expanded: bool,
}

impl Tile {
    pub fn neighbors(&self) -> Vec<Option<TileId>> {
        self.links.iter().map(|l| l.map(|l| l.tile)).collect()
    }

    pub fn center(&self) -> HPoint<3> {
        self.placement.apply(&HPoint::origin())
    }

    /// Edge index carrying `dir`.
    pub fn edge_of(&self, dir: SignedAxis) -> Option<usize> {
        self.edge_dirs.iter().position(|&e| e == dir)
    }
}

/// A lazily grown region of the tessellation around a root tile.
#[derive(Debug, Clone)]
pub struct TilePatch {
    params: TilingParams,
    steps: Vec<HIsometry<3>>,
    tiles: Vec<Tile>,
    conflicts: Vec<(TileId, TileId)>,
}

/// Patch with the canonical root: coordinate 0, canonical labels.
pub fn new_patch(d: usize) -> Result<TilePatch, TilingError> {
    TilePatch::rooted(d, vec![0; d], canonical_dirs(d))
}

impl TilePatch {
    /// Patch whose root tile sits at the origin with the given coordinate
    /// and edge labels. Sessions use this to keep the player's tile at the
    /// center of a fresh patch, which keeps placements well conditioned.
    pub fn rooted(d: usize, coord: Coord, edge_dirs: Vec<SignedAxis>) -> Result<Self, TilingError> {
        let params = polygon_metrics(d)?;
        if coord.len() != d || !validate_dirs(&edge_dirs, d) {
            return Err(TilingError::BadLabeling);
        }
        let steps = (0..params.p).map(|k| params.edge_step(k)).collect();
        let root = Tile {
            id: 0,
            placement: HIsometry::identity(),
            coord,
            edge_dirs,
            links: vec![None; params.p],
            depth: 0,
            expanded: false,
        };
        Ok(TilePatch {
            params,
            steps,
            tiles: vec![root],
            conflicts: Vec::new(),
        })
    }

    pub fn params(&self) -> &TilingParams {
        &self.params
    }

    pub fn d(&self) -> usize {
        self.params.d
    }

    pub fn central(&self) -> TileId {
        0
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn tile(&self, id: TileId) -> Result<&Tile, TilingError> {
        self.tiles.get(id).ok_or(TilingError::UnknownTile(id))
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    /// Pairs of tiles whose labels disagreed while linking. Always empty for
    /// a correct construction; kept so tests can assert it.
    pub fn conflicts(&self) -> &[(TileId, TileId)] {
        &self.conflicts
    }

    /// The tile across edge `k` of `id`, created if necessary.
    pub fn neighbor(&mut self, id: TileId, k: usize) -> Result<TileId, TilingError> {
        if id >= self.tiles.len() {
            return Err(TilingError::UnknownTile(id));
        }
        if k >= self.params.p {
            return Err(TilingError::BadEdge {
                edge: k,
                p: self.params.p,
            });
        }
        Ok(self.neighbor_link(id, k).tile)
    }

    fn neighbor_link(&mut self, t: TileId, k: usize) -> Link {
        if let Some(link) = self.tiles[t].links[k] {
            return link;
        }
        let p = self.params.p;
        let plus = (k + 1) % p;
        let minus = (k + p - 1) % p;
        let depth = self.tiles[t].depth;

        // Parents are always linked, so an unlinked edge leads to a new child.
        // Its possible second parent shares the vertex at one end of edge k
        // with a parent of `t`.
        let mut closures = Vec::new();
        if let Some(a) = self.tiles[t].links[plus] {
            if self.tiles[a.tile].depth + 1 == depth {
                let b = self.neighbor_link(a.tile, (a.edge + 1) % p);
                closures.push((b.tile, (b.edge + 1) % p, minus));
            }
        }
        if let Some(a) = self.tiles[t].links[minus] {
            if self.tiles[a.tile].depth + 1 == depth {
                let b = self.neighbor_link(a.tile, (a.edge + p - 1) % p);
                closures.push((b.tile, (b.edge + p - 1) % p, plus));
            }
        }
        // The recursion above only touches shallower tiles, but it may have
        // linked this edge through a closure of its own.
        if let Some(link) = self.tiles[t].links[k] {
            return link;
        }

        let n = self.create_child(t, k);
        for (b, b_edge, n_edge) in closures {
            self.link(b, b_edge, n, n_edge);
        }
        self.tiles[t].links[k].expect("just linked")
    }

    fn create_child(&mut self, t: TileId, k: usize) -> TileId {
        let p = self.params.p;
        let d = self.params.d;
        let parent = &self.tiles[t];
        let dir = parent.edge_dirs[k];
        let mut dirs = vec![dir; p];
        for m in 0..p {
            let j = (k + m) % p;
            dirs[j] = if m == 0 {
                dir.flip()
            } else if m == d {
                dir
            } else {
                parent.edge_dirs[(k + p - m) % p]
            };
        }
        let depth = parent.depth + 1;
        let mut placement = parent.placement.compose(&self.steps[k]);
        if depth % RENORMALIZE_EVERY == 0 {
            placement = reorthonormalize(&placement).unwrap_or(placement);
        }
        let id = self.tiles.len();
        let coord = step(&parent.coord, dir);
        let mut links = vec![None; p];
        links[k] = Some(Link { tile: t, edge: k });
        self.tiles.push(Tile {
            id,
            placement,
            coord,
            edge_dirs: dirs,
            links,
            depth,
            expanded: false,
        });
        self.tiles[t].links[k] = Some(Link { tile: id, edge: k });
        id
    }

    fn link(&mut self, a: TileId, ka: usize, b: TileId, kb: usize) {
        let consistent = self.tiles[a].links[ka].is_none()
            && self.tiles[b].links[kb].is_none()
            && self.tiles[a].edge_dirs[ka] == self.tiles[b].edge_dirs[kb].flip()
            && step(&self.tiles[a].coord, self.tiles[a].edge_dirs[ka]) == self.tiles[b].coord;
        if !consistent {
            self.conflicts.push((a, b));
            return;
        }
        self.tiles[a].links[ka] = Some(Link { tile: b, edge: kb });
        self.tiles[b].links[kb] = Some(Link { tile: a, edge: ka });
    }

    fn expand_tile(&mut self, id: TileId) {
        if self.tiles[id].expanded {
            return;
        }
        for k in 0..self.params.p {
            self.neighbor_link(id, k);
        }
        self.tiles[id].expanded = true;
    }

    fn check_conflicts(&self) -> Result<(), TilingError> {
        match self.conflicts.first() {
            Some(&(a, b)) => Err(TilingError::Conflict { a, b }),
            None => Ok(()),
        }
    }

    /// Materializes every tile within `radius` edge steps of the root.
    pub fn expand(&mut self, radius: u32) -> Result<(), TilingError> {
        let mut i = 0;
        while i < self.tiles.len() {
            if self.tiles[i].depth < radius {
                self.expand_tile(i);
            }
            i += 1;
        }
        self.check_conflicts()
    }

    /// Materializes every tile whose center lies within `limit` of `from`.
    pub fn expand_within(&mut self, from: &HPoint<3>, limit: f64) -> Result<(), TilingError> {
        // A geodesic from `from` to any tile center within `limit` only passes
        // through tiles whose centers are within `limit + R`.
        let reach = limit + self.params.circumradius;
        let mut i = 0;
        while i < self.tiles.len() {
            if distance(from, &self.tiles[i].center()) <= reach {
                self.expand_tile(i);
            }
            i += 1;
        }
        self.check_conflicts()
    }

    /// Expands the given tiles in the given order. Used to check that the
    /// labeling does not depend on discovery order.
    pub fn expand_in_order(&mut self, order: &[(TileId, usize)]) -> Result<(), TilingError> {
        for &(id, k) in order {
            self.neighbor(id, k)?;
        }
        self.check_conflicts()
    }

    /// The four tiles around vertex `v` (between edges `v` and `v + 1`) of
    /// `id`, counterclockwise starting from `id`. Creates tiles as needed.
    pub fn vertex_ring(&mut self, id: TileId, v: usize) -> Result<[TileId; 4], TilingError> {
        let p = self.params.p;
        self.tile(id)?;
        let mut ring = [id; 4];
        let (mut cur, mut e) = (id, v % p);
        for slot in ring.iter_mut().skip(1) {
            let link = self.neighbor_link(cur, (e + 1) % p);
            cur = link.tile;
            e = link.edge;
            *slot = cur;
        }
        self.check_conflicts()?;
        Ok(ring)
    }

    /// Like [`TilePatch::vertex_ring`] but without creating tiles.
    pub fn vertex_ring_known(&self, id: TileId, v: usize) -> Option<[TileId; 4]> {
        let p = self.params.p;
        let mut ring = [id; 4];
        let (mut cur, mut e) = (id, v % p);
        for slot in ring.iter_mut().skip(1) {
            let link = self.tiles.get(cur)?.links[(e + 1) % p]?;
            cur = link.tile;
            e = link.edge;
            *slot = cur;
        }
        Some(ring)
    }

    /// Walks from `id` across edge `k`, then repeatedly across the edge
    /// opposite the one just entered. Returns the tiles visited.
    pub fn straight_walk(&mut self, id: TileId, k: usize, len: usize) -> Result<Vec<TileId>, TilingError> {
        let p = self.params.p;
        let d = self.params.d;
        let mut out = Vec::with_capacity(len);
        self.tile(id)?;
        let (mut cur, mut e) = (id, k % p);
        for _ in 0..len {
            let link = self.neighbor_link(cur, e);
            cur = link.tile;
            e = (link.edge + d) % p;
            out.push(cur);
        }
        Ok(out)
    }

    /// All materialized tiles carrying `coord`.
    pub fn tiles_at(&self, coord: &[i64]) -> Vec<TileId> {
        self.tiles
            .iter()
            .filter(|t| t.coord == coord)
            .map(|t| t.id)
            .collect()
    }

    /// Sequence of tiles from the root to `id` following parent links.
    pub fn path_from_root(&self, id: TileId) -> Result<Vec<TileId>, TilingError> {
        let mut path = vec![id];
        let mut cur = self.tile(id)?;
        while cur.depth > 0 {
            let parent = cur
                .links
                .iter()
                .flatten()
                .map(|l| &self.tiles[l.tile])
                .find(|t| t.depth + 1 == cur.depth)
                .expect("every tile has a parent");
            path.push(parent.id);
            cur = parent;
        }
        path.reverse();
        Ok(path)
    }

    /// World position of edge `k`'s midpoint of tile `id`.
    pub fn edge_midpoint(&self, id: TileId, k: usize) -> Result<HPoint<3>, TilingError> {
        let t = self.tile(id)?;
        Ok(t.placement.apply(&self.params.edge_midpoint(k)))
    }

    /// World position of vertex `v` of tile `id`.
    pub fn vertex(&self, id: TileId, v: usize) -> Result<HPoint<3>, TilingError> {
        let t = self.tile(id)?;
        Ok(t.placement.apply(&self.params.vertex(v)))
    }
}

/// Interior angle at each vertex of the canonical polygon, in radians.
pub fn vertex_angles(params: &TilingParams) -> Vec<f64> {
    let p = params.p;
    (0..p)
        .map(|k| {
            let v = params.vertex(k);
            let prev = params.vertex((k + p - 1) % p);
            let next = params.vertex((k + 1) % p);
            let u1 = tangent_toward(&v, &prev);
            let u2 = tangent_toward(&v, &next);
            hypmath::mdot(&u1, &u2).clamp(-1.0, 1.0).acos()
        })
        .collect()
}

/// Unit tangent at `from` pointing along the geodesic toward `to`.
fn tangent_toward(from: &HPoint<3>, to: &HPoint<3>) -> Vector<3> {
    let (v, w) = (from.coords(), to.coords());
    let t = w + v * hypmath::mdot(w, v);
    t / hypmath::mdot(&t, &t).sqrt()
}
