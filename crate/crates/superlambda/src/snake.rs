//! Labeled snake graphs built from an arc in a triangulated polygon.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polygon::{self, ccw_between, right_of, Arc, PolygonError, Triangulation};
use crate::superalg::EvenMonomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SnakeError {
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error("arc crosses no diagonal")]
    NoCrossing,
    #[error("tiles {0} and {1} disagree on their shared edge")]
    BadGluing(usize, usize),
    #[error("word length {word} does not match {tiles} tiles")]
    WordLength { word: usize, tiles: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    R,
    U,
}

impl Letter {
    pub fn toggled(self) -> Self {
        match self {
            Letter::R => Letter::U,
            Letter::U => Letter::R,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    N,
    S,
    E,
    W,
}

pub const SIDES: [Side; 4] = [Side::S, Side::E, Side::N, Side::W];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tile {
    /// 1-based position in the snake graph.
    pub index: usize,
    pub n: u32,
    pub s: u32,
    pub e: u32,
    pub w: u32,
    pub diagonal: u32,
    pub corner_bl: u32,
    pub corner_tr: u32,
    /// True for even `index`: the tile is drawn with reversed orientation.
    pub orientation_flipped: bool,
    /// Polygon vertices at the bottom-left, bottom-right, top-right and
    /// top-left corners, when the graph came from a triangulation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<[usize; 4]>,
}

impl Tile {
    pub fn label(&self, s: Side) -> u32 {
        match s {
            Side::N => self.n,
            Side::S => self.s,
            Side::E => self.e,
            Side::W => self.w,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnakeGraph {
    pub tiles: Vec<Tile>,
    pub word: Vec<Letter>,
}

pub type Point = (i32, i32);

/// A unit segment starting at `start`, going right (`horizontal`) or up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub start: Point,
    pub horizontal: bool,
}

impl Segment {
    pub fn end(&self) -> Point {
        if self.horizontal {
            (self.start.0 + 1, self.start.1)
        } else {
            (self.start.0, self.start.1 + 1)
        }
    }
}

/// Planar embedding of a snake graph: tile `i` occupies the unit square at
/// `origins[i]`, and glued sides are the same segment.
#[derive(Clone, Debug)]
pub struct Layout {
    pub origins: Vec<Point>,
    pub segments: Vec<Segment>,
    pub labels: Vec<u32>,
    pub points: Vec<Point>,
    seg_index: BTreeMap<Segment, usize>,
    point_index: BTreeMap<Point, usize>,
}

impl Layout {
    pub fn side_segment(origin: Point, s: Side) -> Segment {
        let (x, y) = origin;
        match s {
            Side::S => Segment { start: (x, y), horizontal: true },
            Side::N => Segment { start: (x, y + 1), horizontal: true },
            Side::W => Segment { start: (x, y), horizontal: false },
            Side::E => Segment { start: (x + 1, y), horizontal: false },
        }
    }

    /// Canonical edge id of a tile side (tile is 0-based).
    pub fn edge(&self, tile: usize, s: Side) -> usize {
        self.seg_index[&Self::side_segment(self.origins[tile], s)]
    }

    pub fn point(&self, p: Point) -> usize {
        self.point_index[&p]
    }

    pub fn segment_id(&self, s: Segment) -> Option<usize> {
        self.seg_index.get(&s).copied()
    }

    pub fn endpoints(&self, edge: usize) -> (usize, usize) {
        let s = self.segments[edge];
        (self.point_index[&s.start], self.point_index[&s.end()])
    }

    pub fn num_edges(&self) -> usize {
        self.segments.len()
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    /// Edges incident to each point.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.points.len()];
        for e in 0..self.segments.len() {
            let (a, b) = self.endpoints(e);
            inc[a].push(e);
            inc[b].push(e);
        }
        inc
    }

    /// Tiles (0-based) whose four corners all lie in `pts`.
    pub fn tiles_within(&self, pts: &BTreeSet<usize>) -> Vec<usize> {
        (0..self.origins.len())
            .filter(|&i| {
                let (x, y) = self.origins[i];
                [(x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)].iter().all(|p| pts.contains(&self.point_index[p]))
            })
            .collect()
    }
}

impl SnakeGraph {
    pub fn new(tiles: Vec<Tile>, word: Vec<Letter>) -> Result<Self, SnakeError> {
        let g = SnakeGraph { tiles, word };
        g.validate()?;
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn last(&self) -> &Tile {
        self.tiles.last().expect("non-empty snake graph")
    }

    pub fn validate(&self) -> Result<(), SnakeError> {
        if self.word.len() + 1 != self.tiles.len() && !(self.tiles.is_empty() && self.word.is_empty()) {
            return Err(SnakeError::WordLength { word: self.word.len(), tiles: self.tiles.len() });
        }
        for (i, l) in self.word.iter().enumerate() {
            let (a, b) = (&self.tiles[i], &self.tiles[i + 1]);
            let ok = match l {
                Letter::R => a.e == b.w,
                Letter::U => a.n == b.s,
            };
            if !ok {
                return Err(SnakeError::BadGluing(i + 1, i + 2));
            }
        }
        Ok(())
    }

    pub fn origins(&self) -> Vec<Point> {
        let mut o = vec![(0, 0)];
        for l in &self.word {
            let (x, y) = *o.last().unwrap();
            o.push(match l {
                Letter::R => (x + 1, y),
                Letter::U => (x, y + 1),
            });
        }
        o.truncate(self.tiles.len());
        o
    }

    pub fn layout(&self) -> Layout {
        let origins = self.origins();
        let mut seg_label: BTreeMap<Segment, u32> = BTreeMap::new();
        let mut pts: BTreeSet<Point> = BTreeSet::new();
        for (t, o) in self.tiles.iter().zip(&origins) {
            for s in SIDES {
                let seg = Layout::side_segment(*o, s);
                seg_label.entry(seg).or_insert(t.label(s));
                pts.insert(seg.start);
                pts.insert(seg.end());
            }
        }
        let segments: Vec<Segment> = seg_label.keys().copied().collect();
        let labels = seg_label.values().copied().collect();
        let points: Vec<Point> = pts.into_iter().collect();
        Layout {
            seg_index: segments.iter().enumerate().map(|(i, s)| (*s, i)).collect(),
            point_index: points.iter().enumerate().map(|(i, p)| (*p, i)).collect(),
            origins,
            segments,
            labels,
            points,
        }
    }

    /// The first `k` tiles.
    pub fn prefix(&self, k: usize) -> SnakeGraph {
        SnakeGraph { tiles: self.tiles[..k].to_vec(), word: self.word[..k.saturating_sub(1)].to_vec() }
    }

    /// The graph with its last `k` tiles removed.
    pub fn truncate(&self, k: usize) -> SnakeGraph {
        self.prefix(self.tiles.len() - k)
    }

    /// Tiles `first..=last` (1-based), reindexed from 1.
    pub fn sub_graph(&self, first: usize, last: usize) -> SnakeGraph {
        let mut tiles: Vec<Tile> = self.tiles[first - 1..last].to_vec();
        for (i, t) in tiles.iter_mut().enumerate() {
            t.index = i + 1;
        }
        SnakeGraph { tiles, word: self.word[first - 1..last - 1].to_vec() }
    }

    pub fn word_string(&self) -> String {
        self.word.iter().map(|l| if *l == Letter::R { 'R' } else { 'U' }).collect()
    }

    /// Product of tile diagonals.
    pub fn cross_monomial(&self) -> EvenMonomial {
        EvenMonomial::from_twice(self.tiles.iter().map(|t| (t.diagonal, 2)))
    }

    /// For every tile, the label triples of the faces at its bottom-left and
    /// top-right corners.
    pub fn corner_faces(&self) -> Vec<([u32; 3], u32)> {
        let mut out = Vec::new();
        for t in &self.tiles {
            let mut bl = [t.s, t.w, t.diagonal];
            bl.sort();
            out.push((bl, t.corner_bl));
            let mut tr = [t.n, t.e, t.diagonal];
            tr.sort();
            out.push((tr, t.corner_tr));
        }
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for SnakeGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} tiles, word {}", self.tiles.len(), self.word_string())
    }
}

/// Tile `i` is the quadrilateral around the `i`-th crossed diagonal, with the
/// apex of the face before it at the bottom-left and the apex of the face
/// after it at the top-right. Odd tiles keep the polygon's counterclockwise
/// orientation, even tiles reverse it.
pub fn build(t: &Triangulation, g: Arc) -> Result<SnakeGraph, SnakeError> {
    let (r, rg) = polygon::restrict(t, g)?;
    let c = polygon::crossing(&r, rg)?;
    if c.diagonals.is_empty() {
        return Err(SnakeError::NoCrossing);
    }
    let n = r.n();
    let mut tiles = Vec::new();
    for (k, &(p, q)) in c.diagonals.iter().enumerate() {
        let bl = c.apex(k, k);
        let tr = c.apex(k + 1, k);
        let flipped = k % 2 == 1;
        let p_first = ccw_between(n, bl, p, tr);
        let br = if p_first != flipped { p } else { q };
        let tl = if br == p { q } else { p };
        let lab = |a: usize, b: usize| r.edge_label((a, b));
        tiles.push(Tile {
            index: k + 1,
            s: lab(bl, br),
            e: lab(br, tr),
            n: lab(tr, tl),
            w: lab(tl, bl),
            diagonal: r.edge_label((p, q)),
            corner_bl: r.face_label(c.faces[k]),
            corner_tr: r.face_label(c.faces[k + 1]),
            orientation_flipped: flipped,
            vertices: Some(map_back(t, &r, g, [bl, br, tr, tl])),
        });
    }
    let mut word = Vec::new();
    for k in 0..c.diagonals.len() - 1 {
        let v = tiles[k].vertices.unwrap();
        let local = local_vertices(t, &r, g, v);
        let face = c.faces[k + 1];
        let (x0, x1) = (c.diagonals[k], c.diagonals[k + 1]);
        let third = [(face[0], face[1]), (face[0], face[2]), (face[1], face[2])]
            .into_iter()
            .map(polygon::norm)
            .find(|s| *s != x0 && *s != x1)
            .unwrap();
        let east = polygon::norm((local[1], local[2]));
        let north = polygon::norm((local[2], local[3]));
        if third == east {
            word.push(Letter::R);
        } else if third == north {
            word.push(Letter::U);
        } else {
            return Err(SnakeError::BadGluing(k + 1, k + 2));
        }
    }
    SnakeGraph::new(tiles, word)
}

fn restricted_vertex_map(t: &Triangulation, g: Arc) -> Vec<usize> {
    let c = polygon::crossing(t, g).expect("arc already validated");
    let verts: BTreeSet<usize> = c.faces.iter().flat_map(|f| f.iter().copied()).collect();
    verts.into_iter().collect()
}

fn map_back(t: &Triangulation, _r: &Triangulation, g: Arc, v: [usize; 4]) -> [usize; 4] {
    let m = restricted_vertex_map(t, g);
    [m[v[0]], m[v[1]], m[v[2]], m[v[3]]]
}

fn local_vertices(t: &Triangulation, _r: &Triangulation, g: Arc, v: [usize; 4]) -> [usize; 4] {
    let m = restricted_vertex_map(t, g);
    let inv = |x: usize| m.iter().position(|y| *y == x).unwrap();
    [inv(v[0]), inv(v[1]), inv(v[2]), inv(v[3])]
}

/// Product of the diagonals crossed by `g`; `1` when `g` is an edge.
pub fn cross(t: &Triangulation, g: Arc) -> Result<EvenMonomial, PolygonError> {
    Ok(EvenMonomial::from_twice(polygon::crossing_sequence(t, g)?.into_iter().map(|l| (l, 2))))
}

/// Toggle the word at odd positions; odd tiles swap N and E labels, even
/// tiles swap S and W. Corner labels stay with their tile.
pub fn dual(g: &SnakeGraph) -> SnakeGraph {
    let word = g.word.iter().enumerate().map(|(i, l)| if i % 2 == 0 { l.toggled() } else { *l }).collect();
    let tiles = g
        .tiles
        .iter()
        .map(|t| {
            let mut d = t.clone();
            if t.index % 2 == 1 {
                std::mem::swap(&mut d.n, &mut d.e);
            } else {
                std::mem::swap(&mut d.s, &mut d.w);
            }
            d
        })
        .collect();
    SnakeGraph { tiles, word }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityReport {
    pub last_letter: Option<Letter>,
    pub odd_triangles: bool,
    pub top_fan_left: bool,
    /// Whether the word ending agrees with the parity rule for this handedness.
    pub rule_holds: bool,
}

/// The last letter of the word is `R` exactly when the triangle count is odd
/// (top fan center on the left of the arc) or even (on the right).
pub fn parity_word_check(t: &Triangulation, g: Arc) -> Result<ParityReport, SnakeError> {
    let sg = build(t, g)?;
    let (r, rg) = polygon::restrict(t, g)?;
    let fd = polygon::fan_decomposition(&r, rg)?;
    let top = fd.centers[fd.centers.len() - 2];
    let top_fan_left = right_of(r.n(), rg.to, rg.from, top);
    let odd_triangles = (sg.len() + 1) % 2 == 1;
    let last_letter = sg.word.last().copied();
    let rule_holds = match last_letter {
        None => true,
        Some(l) => (l == Letter::R) == (odd_triangles == top_fan_left),
    };
    Ok(ParityReport { last_letter, odd_triangles, top_fan_left, rule_holds })
}
