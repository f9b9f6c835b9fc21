//! Parametric graph families: grids, cylindrical grids with chords, walls.
//!
//! Coordinates are 1-based. In a cylindrical grid, key `(c, p)` is cycle `c`
//! (1 = outermost, `t2` = innermost) at position `p` in `1..=t1`; positions
//! agree across cycles along the radial paths.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::{edge, Edge, Graph, Vertex, VertexSet};

/// A generated graph with its coordinate map and added structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGrid {
    pub graph: Graph,
    pub coords: BTreeMap<(usize, usize), Vertex>,
    pub chords: Vec<Edge>,
    pub satellites: Vec<Vertex>,
}

impl LabeledGrid {
    pub fn at(&self, row: usize, col: usize) -> Vertex {
        self.coords[&(row, col)]
    }

    fn add_chord(&mut self, u: Vertex, v: Vertex) {
        assert!(!self.graph.has_edge(u, v), "chord duplicates an edge");
        self.graph.add_edge(u, v);
        self.chords.push(edge(u, v));
    }
}

/// Erdős–Rényi graph `G(n, p)` on `0..n`, deterministic in `seed`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return invalid(format!("edge probability {p} outside [0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for u in 0..n as Vertex {
        for v in u + 1..n as Vertex {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

pub fn grid(n: usize, m: usize) -> Result<LabeledGrid> {
    if n == 0 || m == 0 {
        return invalid("grid dimensions must be positive");
    }
    let mut g = Graph::empty(n * m);
    let mut coords = BTreeMap::new();
    let id = |i: usize, j: usize| ((i - 1) * m + (j - 1)) as Vertex;
    for i in 1..=n {
        for j in 1..=m {
            coords.insert((i, j), id(i, j));
            if j < m {
                g.add_edge(id(i, j), id(i, j + 1));
            }
            if i < n {
                g.add_edge(id(i, j), id(i + 1, j));
            }
        }
    }
    Ok(LabeledGrid {
        graph: g,
        coords,
        chords: Vec::new(),
        satellites: Vec::new(),
    })
}

/// `t2` concentric cycles of length `t1` joined by `t1` radial paths.
pub fn cylindrical_grid(t1: usize, t2: usize) -> Result<LabeledGrid> {
    if t1 < 3 || t2 == 0 {
        return invalid("cylindrical grid needs t1 >= 3 and t2 >= 1");
    }
    let mut g = Graph::empty(t1 * t2);
    let mut coords = BTreeMap::new();
    let id = |c: usize, p: usize| ((c - 1) * t1 + (p - 1)) as Vertex;
    for c in 1..=t2 {
        for p in 1..=t1 {
            coords.insert((c, p), id(c, p));
            g.add_edge(id(c, p), id(c, p % t1 + 1));
            if c < t2 {
                g.add_edge(id(c, p), id(c + 1, p));
            }
        }
    }
    Ok(LabeledGrid {
        graph: g,
        coords,
        chords: Vec::new(),
        satellites: Vec::new(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnnulusFamily {
    Annulus,
    SingleCross,
    LongJump,
    Crosscap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    Fig2,
    #[default]
    Fig3,
}

/// Vertex `u_i` (0-based, cyclic) of cycle `c` in a cylinder of length `len`.
fn on_cycle(g: &LabeledGrid, c: usize, len: usize, i: usize) -> Vertex {
    g.at(c, i % len + 1)
}

/// The long-jump grid `J^r_k`: a `(2k+2) x r` cylinder whose innermost cycle
/// `u_0..u_{2k+1}` carries nested chords `u_i u_{2k+2-i}` (`i = 1..k`) and
/// the jump `u_0 u_{k+1}`.
pub fn long_jump_grid(k: usize, r: usize) -> Result<LabeledGrid> {
    if k == 0 || r == 0 {
        return invalid("long-jump grid needs k, r >= 1");
    }
    let len = 2 * k + 2;
    let mut g = cylindrical_grid(len, r)?;
    for i in 1..=k {
        let (a, b) = (on_cycle(&g, r, len, i), on_cycle(&g, r, len, len - i));
        g.add_chord(a, b);
    }
    let (a, b) = (on_cycle(&g, r, len, 0), on_cycle(&g, r, len, k + 1));
    g.add_chord(a, b);
    Ok(g)
}

pub fn enhanced_annulus(family: AnnulusFamily, t: usize, convention: Convention) -> Result<LabeledGrid> {
    if t == 0 {
        return invalid("order must be at least 1");
    }
    match (convention, family) {
        (_, AnnulusFamily::Annulus) => cylindrical_grid(4 * t, t),
        (Convention::Fig3, AnnulusFamily::LongJump) => long_jump_grid(t, t),
        (Convention::Fig3, AnnulusFamily::Crosscap) => {
            let len = 2 * t + 2;
            let mut g = cylindrical_grid(len, t)?;
            for i in 0..=t {
                let (a, b) = (on_cycle(&g, t, len, i), on_cycle(&g, t, len, i + t + 1));
                g.add_chord(a, b);
            }
            Ok(g)
        }
        (Convention::Fig3, AnnulusFamily::SingleCross) => {
            invalid("single-cross grids exist only in the fig2 convention")
        }
        (Convention::Fig2, fam) => {
            let len = 4 * t;
            let mut g = cylindrical_grid(len, t)?;
            let v = |g: &LabeledGrid, i: usize| on_cycle(g, 1, len, i);
            match fam {
                AnnulusFamily::SingleCross => {
                    let (a, b, c, d) = (v(&g, 0), v(&g, 2 * t), v(&g, 1), v(&g, 2 * t + 1));
                    g.add_chord(a, b);
                    g.add_chord(c, d);
                }
                AnnulusFamily::LongJump => {
                    for i in 1..=t {
                        let (a, b) = (v(&g, i), v(&g, 3 * t + 1 - i));
                        g.add_chord(a, b);
                    }
                    let (a, b) = (v(&g, 0), v(&g, 2 * t));
                    g.add_chord(a, b);
                }
                AnnulusFamily::Crosscap => {
                    for i in 0..2 * t {
                        let (a, b) = (v(&g, i), v(&g, 2 * t + i));
                        g.add_chord(a, b);
                    }
                }
                AnnulusFamily::Annulus => unreachable!(),
            }
            Ok(g)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZooFamily {
    AltJump,
    NestedCrosses,
    TwistedCrosses,
    DoubleJump,
    AltDoubleJump,
    Klein,
}

impl ZooFamily {
    pub const ALL: [ZooFamily; 6] = [
        ZooFamily::AltJump,
        ZooFamily::NestedCrosses,
        ZooFamily::TwistedCrosses,
        ZooFamily::DoubleJump,
        ZooFamily::AltDoubleJump,
        ZooFamily::Klein,
    ];

    pub fn needs_k2(self) -> bool {
        matches!(
            self,
            ZooFamily::DoubleJump | ZooFamily::AltDoubleJump | ZooFamily::Klein
        )
    }
}

/// The b-permutation realizing each transaction pattern: entry `j` is the
/// path whose second endpoint is the `j`-th vertex of the B-side.
pub fn zoo_permutation(family: ZooFamily, k1: usize, k2: Option<usize>) -> Result<Vec<usize>> {
    let k2v = || k2.ok_or_else(|| Error::InvalidArgument(format!("{family} needs k2")));
    if k1 == 0 {
        return invalid("k1 must be positive");
    }
    if !family.needs_k2() && k2.is_some() {
        return invalid(format!("{family} takes no k2"));
    }
    Ok(match family {
        ZooFamily::AltJump => return invalid("the alternative jump is not a transaction pattern"),
        ZooFamily::NestedCrosses => (0..k1).rev().flat_map(|i| [2 * i + 1, 2 * i + 2]).collect(),
        ZooFamily::TwistedCrosses => (0..k1).flat_map(|i| [2 * i + 2, 2 * i + 1]).collect(),
        ZooFamily::Klein => {
            let k2 = k2v()?;
            (k1 + 1..=k1 + k2).chain(1..=k1).collect()
        }
        ZooFamily::DoubleJump => {
            let k2 = k2v()?;
            let t = k1 + k2 + 2;
            let mut p = vec![k1 + 2];
            p.extend((k1 + 3..=t).rev());
            p.extend((1..=k1).rev());
            p.push(k1 + 1);
            p
        }
        ZooFamily::AltDoubleJump => {
            let k2 = k2v()?;
            let t = k1 + k2 + 3;
            let mut p = vec![k1 + 3];
            p.extend((k1 + 4..=t).rev());
            p.push(k1 + 2);
            p.extend((1..=k1).rev());
            p.push(k1 + 1);
            p
        }
    })
}

/// Transaction-pattern grids. Chords lie on the innermost cycle of a `((2t+2) x r)`
/// cylinder, `t` the number of chords: path `i` runs from position `i - 1`
/// to position `t + 1 + j` where `perm[j] = i`. Positions `t` and `2t + 1`
/// separate the two sides, so no chord duplicates a cycle edge.
///
/// The alternative jump `Ĵ^r_k` is the `(2k+2) x r` cylinder with the `k`
/// nested inner chords of `J^r_k`, and its jump edge leaves `u_0` for the
/// outermost cycle at position `k + 2` (the radial of `u_{k+1}`).
pub fn grid_zoo(family: ZooFamily, k1: usize, k2: Option<usize>, r: usize) -> Result<LabeledGrid> {
    if r == 0 {
        return invalid("r must be positive");
    }
    if family == ZooFamily::AltJump {
        if k2.is_some() {
            return invalid("alt-jump takes no k2");
        }
        if k1 == 0 {
            return invalid("k must be positive");
        }
        let len = 2 * k1 + 2;
        let mut g = cylindrical_grid(len, r)?;
        for i in 1..=k1 {
            let (a, b) = (on_cycle(&g, r, len, i), on_cycle(&g, r, len, len - i));
            g.add_chord(a, b);
        }
        let (a, b) = (on_cycle(&g, r, len, 0), on_cycle(&g, 1, len, k1 + 1));
        if a == b || g.graph.has_edge(a, b) {
            return invalid("alt-jump with r = 1 degenerates; use r >= 2");
        }
        g.add_chord(a, b);
        return Ok(g);
    }
    let perm = zoo_permutation(family, k1, k2)?;
    let t = perm.len();
    let len = 2 * t + 2;
    let mut g = cylindrical_grid(len, r)?;
    for (j, &i) in perm.iter().enumerate() {
        let (a, b) = (on_cycle(&g, r, len, i - 1), on_cycle(&g, r, len, t + 1 + j));
        g.add_chord(a, b);
    }
    Ok(g)
}

/// `(4k+1) x (4k+1)` grid plus the edge `(k+1, 2k+1)(3k+1, 2k+1)`.
pub fn jprime(k: usize) -> Result<LabeledGrid> {
    if k == 0 {
        return invalid("k must be positive");
    }
    let n = 4 * k + 1;
    let mut g = grid(n, n)?;
    let (x, y) = (g.at(k + 1, 2 * k + 1), g.at(3 * k + 1, 2 * k + 1));
    g.add_chord(x, y);
    Ok(g)
}

/// `fig3` long-jump grid of order `2k+1` with one satellite per block of four
/// consecutive outer-cycle vertices.
pub fn satellite_long_jump(k: usize) -> Result<LabeledGrid> {
    if k == 0 {
        return invalid("k must be positive");
    }
    let mut g = long_jump_grid(2 * k + 1, 2 * k + 1)?;
    let len = 4 * k + 4;
    for block in 0..=k {
        let z = g.graph.fresh_vertex();
        g.graph.add_vertex(z);
        for i in 0..4 {
            let v = g.at(1, 4 * block + i + 1);
            g.graph.add_edge(z, v);
        }
        g.satellites.push(z);
    }
    debug_assert_eq!(len * (2 * k + 1) + k + 1, g.graph.n());
    Ok(g)
}

/// Elementary wall with its row/column structure. Grid coordinates
/// `(i, j)` have `i` in `1..=k` and `j` in `1..=2l`.
#[derive(Debug, Clone)]
pub struct WallCoordinates {
    pub graph: Graph,
    pub coords: BTreeMap<(usize, usize), Vertex>,
    pub rows: Vec<VertexSet>,
    pub columns: Vec<VertexSet>,
    pub height: usize,
    pub width: usize,
}

/// `W_{k,l}`. Vertical edges `(i,j)(i+1,j)` are kept when `i` and `j` have
/// the same parity; this parity choice makes `(1,1)`, `(k,2)`, `(1,2l-1)`,
/// `(k,2l)` the corners whenever `k` is odd.
pub fn elementary_wall(k: usize, l: usize) -> Result<WallCoordinates> {
    if k < 3 || l < 3 {
        return invalid("walls need k, l >= 3");
    }
    let w = 2 * l;
    let mut g = Graph::new();
    let id = |i: usize, j: usize| ((i - 1) * w + (j - 1)) as Vertex;
    for i in 1..=k {
        for j in 1..=w {
            g.add_vertex(id(i, j));
            if j < w {
                g.add_edge(id(i, j), id(i, j + 1));
            }
            if i < k && i % 2 == j % 2 {
                g.add_edge(id(i, j), id(i + 1, j));
            }
        }
    }
    loop {
        let leaves: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) <= 1).collect();
        if leaves.is_empty() {
            break;
        }
        for v in leaves {
            g.remove_vertex(v);
        }
    }
    let mut coords = BTreeMap::new();
    let mut rows = vec![VertexSet::new(); k];
    let mut columns = vec![VertexSet::new(); l];
    for i in 1..=k {
        for j in 1..=w {
            if g.contains(id(i, j)) {
                coords.insert((i, j), id(i, j));
                rows[i - 1].insert(id(i, j));
                columns[(j - 1) / 2].insert(id(i, j));
            }
        }
    }
    Ok(WallCoordinates {
        graph: g,
        coords,
        rows,
        columns,
        height: k,
        width: l,
    })
}

impl WallCoordinates {
    fn position(&self) -> BTreeMap<Vertex, (i64, i64)> {
        self.coords
            .iter()
            .map(|(&(i, j), &v)| (v, (j as i64, -(i as i64))))
            .collect()
    }

    pub fn branch_vertices(&self) -> VertexSet {
        self.graph.vertices().filter(|&v| self.graph.degree(v) == 3).collect()
    }

    /// The cycle bounding the infinite face, in walk order.
    pub fn perimeter(&self) -> Vec<Vertex> {
        outer_face(&self.graph, &self.position())
    }

    pub fn pegs(&self) -> VertexSet {
        self.perimeter()
            .into_iter()
            .filter(|&v| self.graph.degree(v) == 2)
            .collect()
    }

    /// Leftmost and rightmost vertices of the first and last rows.
    pub fn corners(&self) -> Vec<Vertex> {
        let first = &self.rows[0];
        let last = &self.rows[self.height - 1];
        let mut c = vec![
            *first.iter().next().expect("row"),
            *last.iter().next().expect("row"),
            *first.iter().next_back().expect("row"),
            *last.iter().next_back().expect("row"),
        ];
        c.sort_unstable();
        c
    }

    /// Layer 1 is the perimeter; layer `i` is layer `i - 1` of what remains
    /// after deleting the perimeter and pruning vertices of degree <= 1.
    pub fn layers(&self) -> Vec<Vec<Vertex>> {
        let pos = self.position();
        let mut g = self.graph.clone();
        let mut out = Vec::new();
        while g.n() > 0 {
            let layer = outer_face(&g, &pos);
            for &v in &layer {
                g.remove_vertex(v);
            }
            prune_leaves(&mut g);
            out.push(layer);
        }
        out
    }

    /// Subgraph left after removing the outer `(height - q) / 2` layers.
    pub fn central_subwall(&self, q: usize) -> Result<Graph> {
        if q > self.height || !(self.height - q).is_multiple_of(2) || q < 3 {
            return invalid("central subwall needs 3 <= q <= height with matching parity");
        }
        let pos = self.position();
        let mut g = self.graph.clone();
        for _ in 0..(self.height - q) / 2 {
            for v in outer_face(&g, &pos) {
                g.remove_vertex(v);
            }
            prune_leaves(&mut g);
        }
        Ok(g)
    }

    /// Subwall spanned by rows `r0..=r1` and wall columns `c0..=c1` (1-based).
    pub fn subwall(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Result<Graph> {
        if r0 == 0 || c0 == 0 || r1 > self.height || c1 > self.width || r1 < r0 + 2 || c1 < c0 + 2 {
            return invalid("subwall range must span at least three rows and columns");
        }
        let keep: VertexSet = self
            .coords
            .iter()
            .filter(|(&(i, j), _)| (r0..=r1).contains(&i) && (2 * c0 - 1..=2 * c1).contains(&j))
            .map(|(_, &v)| v)
            .collect();
        let mut g = self.graph.induced(&keep);
        prune_leaves(&mut g);
        Ok(g)
    }
}

fn prune_leaves(g: &mut Graph) {
    loop {
        let leaves: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) <= 1).collect();
        if leaves.is_empty() {
            return;
        }
        for v in leaves {
            g.remove_vertex(v);
        }
    }
}

/// Boundary walk of the infinite face of a connected straight-line drawing.
fn outer_face(g: &Graph, pos: &BTreeMap<Vertex, (i64, i64)>) -> Vec<Vertex> {
    let angle = |u: Vertex, v: Vertex| {
        let (a, b) = (pos[&u], pos[&v]);
        ((b.1 - a.1) as f64).atan2((b.0 - a.0) as f64)
    };
    let rot: BTreeMap<Vertex, Vec<Vertex>> = g
        .vertices()
        .map(|v| {
            let mut ns: Vec<Vertex> = g.neighbors(v).iter().copied().collect();
            ns.sort_by(|&a, &b| angle(v, a).total_cmp(&angle(v, b)));
            (v, ns)
        })
        .collect();
    let mut used = std::collections::BTreeSet::new();
    let mut best: (f64, Vec<Vertex>) = (-1.0, Vec::new());
    for (u, v) in g.edges().flat_map(|(u, v)| [(u, v), (v, u)]) {
        if used.contains(&(u, v)) {
            continue;
        }
        let mut walk = Vec::new();
        let (mut a, mut b) = (u, v);
        while used.insert((a, b)) {
            walk.push(a);
            let r = &rot[&b];
            let idx = r.iter().position(|&x| x == a).expect("symmetric");
            let c = r[(idx + 1) % r.len()];
            (a, b) = (b, c);
        }
        let area: f64 = (0..walk.len())
            .map(|i| {
                let (p, q) = (pos[&walk[i]], pos[&walk[(i + 1) % walk.len()]]);
                (p.0 * q.1 - q.0 * p.1) as f64
            })
            .sum::<f64>()
            .abs();
        if area > best.0 {
            best = (area, walk);
        }
    }
    if best.1.is_empty() {
        return g.vertices().collect();
    }
    best.1
}

macro_rules! kebab_enum {
    ($ty:ty { $($name:literal => $var:expr),* $(,)? }) => {
        impl FromStr for $ty {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok($var),)*
                    _ => invalid(format!("unknown value {s:?}")),
                }
            }
        }
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                $(if *self == $var { return f.write_str($name); })*
                unreachable!()
            }
        }
    };
}

kebab_enum!(AnnulusFamily {
    "annulus" => AnnulusFamily::Annulus,
    "single-cross" => AnnulusFamily::SingleCross,
    "long-jump" => AnnulusFamily::LongJump,
    "crosscap" => AnnulusFamily::Crosscap,
});

kebab_enum!(Convention {
    "fig2" => Convention::Fig2,
    "fig3" => Convention::Fig3,
});

kebab_enum!(ZooFamily {
    "alt-jump" => ZooFamily::AltJump,
    "nested-crosses" => ZooFamily::NestedCrosses,
    "twisted-crosses" => ZooFamily::TwistedCrosses,
    "double-jump" => ZooFamily::DoubleJump,
    "alt-double-jump" => ZooFamily::AltDoubleJump,
    "klein" => ZooFamily::Klein,
});

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(g: &LabeledGrid) -> (usize, usize) {
        (g.graph.n(), g.graph.m())
    }

    #[test]
    fn grid_counts() {
        assert_eq!(counts(&grid(1, 1).unwrap()), (1, 0));
        assert_eq!(counts(&grid(2, 2).unwrap()), (4, 4));
        assert_eq!(counts(&grid(3, 3).unwrap()), (9, 12));
        assert!(grid(0, 3).is_err());
        for n in 1..=6 {
            for m in 1..=6 {
                assert_eq!(counts(&grid(n, m).unwrap()), (n * m, n * (m - 1) + m * (n - 1)));
            }
        }
    }

    #[test]
    fn cylinder_counts() {
        assert_eq!(counts(&cylindrical_grid(4, 1).unwrap()), (4, 4));
        assert_eq!(counts(&cylindrical_grid(4, 3).unwrap()), (12, 20));
        assert_eq!(counts(&cylindrical_grid(8, 2).unwrap()), (16, 24));
        assert!(cylindrical_grid(2, 3).is_err());
    }

    #[test]
    fn enhanced_counts() {
        let j1 = enhanced_annulus(AnnulusFamily::LongJump, 1, Convention::Fig3).unwrap();
        assert_eq!(j1.graph, Graph::complete(4));
        let j3 = enhanced_annulus(AnnulusFamily::LongJump, 3, Convention::Fig3).unwrap();
        assert_eq!(counts(&j3), (24, 44));
        let c2 = enhanced_annulus(AnnulusFamily::Crosscap, 2, Convention::Fig2).unwrap();
        assert_eq!(counts(&c2), (16, 28));
        for t in 1..=6 {
            let base = cylindrical_grid(4 * t, t).unwrap().graph.m();
            for (fam, extra) in [
                (AnnulusFamily::SingleCross, 2),
                (AnnulusFamily::LongJump, t + 1),
                (AnnulusFamily::Crosscap, 2 * t),
            ] {
                let g = enhanced_annulus(fam, t, Convention::Fig2).unwrap();
                assert_eq!(g.graph.m(), base + extra, "{fam} t = {t}");
            }
        }
        assert!(enhanced_annulus(AnnulusFamily::SingleCross, 2, Convention::Fig3).is_err());
    }

    #[test]
    fn jprime_counts() {
        let g = jprime(1).unwrap();
        assert_eq!(counts(&g), (25, 41));
        assert_eq!(g.chords, vec![edge(g.at(2, 3), g.at(4, 3))]);
        let g = jprime(2).unwrap();
        assert_eq!(g.graph.n(), 81);
        assert_eq!(g.chords, vec![edge(g.at(3, 5), g.at(7, 5))]);
    }

    #[test]
    fn satellite_counts() {
        for k in 1..=4 {
            let g = satellite_long_jump(k).unwrap();
            assert_eq!(g.graph.n(), 8 * k * k + 13 * k + 5);
            assert!(g.graph.vertices().all(|v| g.graph.degree(v) == 4));
            assert_eq!(g.graph.m(), 2 * g.graph.n());
            let base = cylindrical_grid(4 * k + 4, 2 * k + 1).unwrap().graph;
            assert!(base.is_subgraph_of(&g.graph));
        }
    }

    #[test]
    fn zoo_permutations() {
        assert_eq!(
            zoo_permutation(ZooFamily::NestedCrosses, 2, None).unwrap(),
            vec![3, 4, 1, 2]
        );
        assert_eq!(
            zoo_permutation(ZooFamily::TwistedCrosses, 2, None).unwrap(),
            vec![2, 1, 4, 3]
        );
        assert_eq!(zoo_permutation(ZooFamily::Klein, 1, Some(1)).unwrap(), vec![2, 1]);
        assert_eq!(
            zoo_permutation(ZooFamily::DoubleJump, 1, Some(1)).unwrap(),
            vec![3, 4, 1, 2]
        );
        assert_eq!(
            zoo_permutation(ZooFamily::AltDoubleJump, 1, Some(1)).unwrap(),
            vec![4, 5, 3, 1, 2]
        );
        assert!(grid_zoo(ZooFamily::Klein, 1, None, 2).is_err());
        let nc = grid_zoo(ZooFamily::NestedCrosses, 1, None, 2).unwrap();
        assert_eq!(nc.chords.len(), 2);
        assert_eq!(nc.graph.n(), 12);
    }

    #[test]
    fn wall_structure() {
        let w = elementary_wall(3, 3).unwrap();
        assert!(w.graph.max_degree() <= 3);
        assert_eq!(w.graph.n(), 16);
        let per = w.perimeter();
        let set: VertexSet = per.iter().copied().collect();
        assert_eq!(set.len(), per.len());
        for i in 0..per.len() {
            assert!(w.graph.has_edge(per[i], per[(i + 1) % per.len()]));
        }
        let pegs = w.pegs();
        assert!(w.corners().iter().all(|c| pegs.contains(c)));
        let expected: Vec<Vertex> = {
            let mut c = vec![
                w.coords[&(1, 1)],
                w.coords[&(3, 2)],
                w.coords[&(1, 5)],
                w.coords[&(3, 6)],
            ];
            c.sort_unstable();
            c
        };
        assert_eq!(w.corners(), expected);
        assert_eq!(elementary_wall(4, 4).unwrap().layers().len(), 2);
        assert_eq!(elementary_wall(5, 5).unwrap().layers().len(), 2);
        assert_eq!(elementary_wall(6, 6).unwrap().layers().len(), 3);
        assert!(elementary_wall(2, 3).is_err());
    }

    #[test]
    fn central_subwall_of_five_wall_is_three_wall() {
        let w5 = elementary_wall(5, 5).unwrap();
        let c = w5.central_subwall(3).unwrap();
        let w3 = elementary_wall(3, 3).unwrap().graph;
        assert!(
            crate::canon::are_isomorphic(&c, &w3),
            "{} {} vs {} {}",
            c.n(),
            c.m(),
            w3.n(),
            w3.m()
        );
    }
}
