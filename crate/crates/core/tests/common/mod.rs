//! Independent reference implementations used by the integration tests.
//!
//! None of these reuse the library's construction code: the tiling oracle
//! works with reduced words of the right-angled reflection group, the ray
//! oracle marches along the geodesic, and the grid oracles are plain BFS.

#![allow(dead_code)]

pub mod geometry;
pub mod honeycomb;
pub mod tiling;
pub mod worlds;

use std::collections::{BTreeMap, HashSet, VecDeque};

/// Tile counts per BFS layer of `{p,4}`: the growth series of the
/// right-angled Coxeter group on a `p`-cycle, `(1+t)² / (1 + (2−p)t + t²)`.
pub fn growth_layers(p: usize, layers: usize) -> Vec<u64> {
    let c = [1i64, 2, 1];
    let mut a: Vec<i64> = Vec::with_capacity(layers + 1);
    for n in 0..=layers {
        let prev1 = if n >= 1 { a[n - 1] } else { 0 };
        let prev2 = if n >= 2 { a[n - 2] } else { 0 };
        let cn = c.get(n).copied().unwrap_or(0);
        a.push((p as i64 - 2) * prev1 - prev2 + cn);
    }
    a.into_iter().map(|x| x as u64).collect()
}

/// Elements of the right-angled reflection group of the `2d`-gon as reduced
/// words in shortlex normal form. Letter `i` is the reflection in edge `i`;
/// letters `i` and `i ± 1 (mod 2d)` commute.
pub struct WordOracle {
    pub d: usize,
    pub p: usize,
}

impl WordOracle {
    pub fn new(d: usize) -> Self {
        WordOracle { d, p: 2 * d }
    }

    fn commute(&self, a: u8, b: u8) -> bool {
        let diff = (a as usize + self.p - b as usize) % self.p;
        diff == 1 || diff == self.p - 1
    }

    /// Right multiplication by a letter on a reduced word.
    pub fn append(&self, word: &[u8], s: u8) -> Vec<u8> {
        let mut w = word.to_vec();
        for i in (0..w.len()).rev() {
            if w[i] == s {
                w.remove(i);
                return self.normal_form(&w);
            }
            if !self.commute(w[i], s) {
                break;
            }
        }
        w.push(s);
        self.normal_form(&w)
    }

    /// Shortlex normal form: repeatedly pull the smallest letter that
    /// commutes with everything before it to the front.
    pub fn normal_form(&self, word: &[u8]) -> Vec<u8> {
        let mut rest = word.to_vec();
        let mut out = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            let mut best: Option<usize> = None;
            for i in 0..rest.len() {
                if rest[..i].iter().all(|&x| self.commute(x, rest[i])) {
                    if best.is_none_or(|b| rest[i] < rest[b]) {
                        best = Some(i);
                    }
                }
            }
            out.push(rest.remove(best.unwrap()));
        }
        out
    }

    /// Coordinate and edge labels of the tile named by `word`, labels in the
    /// reflection frame (edge `i` of the word's frame). Axis labels are
    /// encoded as `+(a+1)` / `−(a+1)`.
    pub fn labels(&self, word: &[u8]) -> (Vec<i64>, Vec<i8>) {
        let d = self.d;
        let mut sigma = vec![1i64; d];
        let mut coord = vec![0i64; d];
        for &s in word {
            let i = s as usize;
            let a = i % d;
            let base = if i < d { 1 } else { -1 };
            coord[a] += sigma[a] * base;
            sigma[a] = -sigma[a];
        }
        let labels = (0..self.p)
            .map(|i| {
                let a = i % d;
                let base = if i < d { 1 } else { -1 };
                (sigma[a] * base * (a as i64 + 1)) as i8
            })
            .collect();
        (coord, labels)
    }

    /// All group elements up to word length `radius`, with their lengths.
    pub fn ball(&self, radius: usize) -> Vec<(usize, Vec<u8>)> {
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let mut out = vec![(0, Vec::new())];
        seen.insert(Vec::new());
        let mut frontier = vec![Vec::new()];
        for len in 1..=radius {
            let mut next = Vec::new();
            for w in &frontier {
                for s in 0..self.p as u8 {
                    let nw = self.append(w, s);
                    if nw.len() == len && seen.insert(nw.clone()) {
                        out.push((len, nw.clone()));
                        next.push(nw);
                    }
                }
            }
            frontier = next;
        }
        out
    }
}

/// Smallest rotation or reflection of a cyclic label sequence.
pub fn dihedral_canonical(labels: &[i8]) -> Vec<i8> {
    let n = labels.len();
    let mut best: Option<Vec<i8>> = None;
    for rev in [false, true] {
        for start in 0..n {
            let v: Vec<i8> = (0..n)
                .map(|i| {
                    let j = if rev { (start + n - i) % n } else { (start + i) % n };
                    labels[j]
                })
                .collect();
            if best.as_ref().is_none_or(|b| v < *b) {
                best = Some(v);
            }
        }
    }
    best.unwrap()
}

/// Smallest `t ≥ 0` where `⟨p cosh t + v sinh t, n⟩` changes sign, found by
/// marching in steps of `dt` up to `t_max`.
pub fn march_plane_hit(p: &[f64], v: &[f64], n: &[f64], dt: f64, t_max: f64) -> Option<f64> {
    let inner = |t: f64| {
        let (c, s) = (t.cosh(), t.sinh());
        let k = p.len() - 1;
        let mut acc = 0.0;
        for i in 0..=k {
            let x = p[i] * c + v[i] * s;
            acc += if i == k { -x * n[i] } else { x * n[i] };
        }
        acc
    };
    let f0 = inner(0.0);
    if f0 == 0.0 {
        return Some(0.0);
    }
    let mut t = 0.0;
    while t < t_max {
        let t1 = t + dt;
        if inner(t1).signum() != f0.signum() {
            return Some(t1 - dt / 2.0);
        }
        t = t1;
    }
    None
}

/// Shortest path length in `Z^d` avoiding `blocked`, restricted to cells
/// satisfying `allowed`, or `None`.
pub fn grid_bfs(
    d: usize,
    start: &[i64],
    goal: &[i64],
    blocked: &dyn Fn(&[i64]) -> bool,
    allowed: &dyn Fn(&[i64]) -> bool,
    max_nodes: usize,
) -> Option<usize> {
    let mut dist: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    let mut queue = VecDeque::new();
    dist.insert(start.to_vec(), 0);
    queue.push_back(start.to_vec());
    while let Some(cur) = queue.pop_front() {
        let dc = dist[&cur];
        if cur == goal {
            return Some(dc);
        }
        if dist.len() > max_nodes {
            return None;
        }
        for a in 0..d {
            for s in [-1, 1] {
                let mut n = cur.clone();
                n[a] += s;
                if blocked(&n) || !allowed(&n) || dist.contains_key(&n) {
                    continue;
                }
                dist.insert(n.clone(), dc + 1);
                queue.push_back(n);
            }
        }
    }
    None
}
