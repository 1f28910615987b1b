//! Triangulated polygons, arcs, fan decompositions, default orientation and
//! positive order.
//!
//! Vertices are `0..n` counterclockwise on a circle. All crossing and side
//! tests are cyclic-order comparisons, never floating point.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::superalg::{NameTable, PositiveOrder};

pub type Edge = (usize, usize);
pub type Face = [usize; 3];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolygonError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooSmall(usize),
    #[error("invalid diagonal ({0},{1})")]
    BadDiagonal(usize, usize),
    #[error("diagonals ({0},{1}) and ({2},{3}) cross")]
    Crossing(usize, usize, usize, usize),
    #[error("expected {expected} diagonals, got {got}")]
    NotMaximal { expected: usize, got: usize },
    #[error("arc endpoints coincide")]
    SameVertex,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("unknown label key {0}")]
    BadLabelKey(String),
    #[error("duplicate label {0}")]
    DuplicateLabel(String),
}

pub fn norm(e: Edge) -> Edge {
    if e.0 < e.1 {
        e
    } else {
        (e.1, e.0)
    }
}

/// Going counterclockwise from `u`, is `w` met strictly before `v`?
pub fn ccw_between(n: usize, u: usize, w: usize, v: usize) -> bool {
    let dw = (w + n - u) % n;
    let dv = (v + n - u) % n;
    dw > 0 && dw < dv
}

/// Is `w` strictly to the right of the directed chord `u -> v`?
pub fn right_of(n: usize, u: usize, v: usize, w: usize) -> bool {
    ccw_between(n, u, w, v)
}

/// Do chords `{p,q}` and `{r,s}` cross in their interiors?
pub fn chords_cross(n: usize, (p, q): Edge, (r, s): Edge) -> bool {
    if p == r || p == s || q == r || q == s {
        return false;
    }
    ccw_between(n, p, r, q) != ccw_between(n, p, s, q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
}

impl Arc {
    pub fn new(from: usize, to: usize) -> Self {
        Arc { from, to }
    }
    pub fn reversed(&self) -> Self {
        Arc { from: self.to, to: self.from }
    }
    pub fn edge(&self) -> Edge {
        norm((self.from, self.to))
    }
}

/// A triangulated polygon with even labels on every edge and odd labels on
/// every face. Labels are generator ids; `names` gives their display names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    n: usize,
    diagonals: BTreeSet<Edge>,
    edge_labels: BTreeMap<Edge, u32>,
    face_labels: BTreeMap<Face, u32>,
    pub names: NameTable,
}

impl Triangulation {
    /// Default labels: edges sorted lexicographically get `x1, x2, ...`,
    /// faces sorted lexicographically get `th1, th2, ...`.
    pub fn new(n: usize, diagonals: &[Edge]) -> Result<Self, PolygonError> {
        if n < 3 {
            return Err(PolygonError::TooSmall(n));
        }
        let mut set = BTreeSet::new();
        for &(p, q) in diagonals {
            if p >= n || q >= n || p == q || is_side(n, p, q) {
                return Err(PolygonError::BadDiagonal(p, q));
            }
            if !set.insert(norm((p, q))) {
                return Err(PolygonError::BadDiagonal(p, q));
            }
        }
        let v: Vec<Edge> = set.iter().copied().collect();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if chords_cross(n, v[i], v[j]) {
                    return Err(PolygonError::Crossing(v[i].0, v[i].1, v[j].0, v[j].1));
                }
            }
        }
        if v.len() != n - 3 {
            return Err(PolygonError::NotMaximal { expected: n - 3, got: v.len() });
        }
        let mut t = Triangulation {
            n,
            diagonals: set,
            edge_labels: BTreeMap::new(),
            face_labels: BTreeMap::new(),
            names: NameTable::default(),
        };
        for (i, e) in t.all_edges().into_iter().enumerate() {
            let id = i as u32 + 1;
            t.edge_labels.insert(e, id);
            t.names.even.insert(id, format!("x{id}"));
        }
        for (i, f) in t.compute_faces().into_iter().enumerate() {
            let id = i as u32 + 1;
            t.face_labels.insert(f, id);
            t.names.odd.insert(id, format!("th{id}"));
        }
        Ok(t)
    }

    /// Rename the generator on edge `e`.
    pub fn set_edge_name(&mut self, e: Edge, name: &str) -> Result<(), PolygonError> {
        let id = *self.edge_labels.get(&norm(e)).ok_or_else(|| PolygonError::BadLabelKey(format!("{e:?}")))?;
        if self.names.even.iter().any(|(i, n)| *i != id && n == name) {
            return Err(PolygonError::DuplicateLabel(name.into()));
        }
        self.names.even.insert(id, name.into());
        Ok(())
    }

    /// Rename the generator on face `f`.
    pub fn set_face_name(&mut self, f: Face, name: &str) -> Result<(), PolygonError> {
        let mut k = f;
        k.sort();
        let id = *self.face_labels.get(&k).ok_or_else(|| PolygonError::BadLabelKey(format!("{f:?}")))?;
        if self.names.odd.iter().any(|(i, n)| *i != id && n == name) {
            return Err(PolygonError::DuplicateLabel(name.into()));
        }
        self.names.odd.insert(id, name.into());
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diagonals(&self) -> impl Iterator<Item = Edge> + '_ {
        self.diagonals.iter().copied()
    }

    pub fn is_diagonal(&self, e: Edge) -> bool {
        self.diagonals.contains(&norm(e))
    }

    pub fn is_edge(&self, e: Edge) -> bool {
        let (p, q) = e;
        p != q && (is_side(self.n, p, q) || self.is_diagonal(e))
    }

    /// Boundary sides then diagonals, all normalized and sorted.
    pub fn all_edges(&self) -> Vec<Edge> {
        let mut v: Vec<Edge> = (0..self.n).map(|i| norm((i, (i + 1) % self.n))).collect();
        v.extend(self.diagonals.iter().copied());
        v.sort();
        v.dedup();
        v
    }

    pub fn edge_label(&self, e: Edge) -> u32 {
        self.edge_labels[&norm(e)]
    }

    pub fn edge_labels(&self) -> &BTreeMap<Edge, u32> {
        &self.edge_labels
    }

    pub fn face_label(&self, f: Face) -> u32 {
        let mut k = f;
        k.sort();
        self.face_labels[&k]
    }

    pub fn faces(&self) -> Vec<Face> {
        self.face_labels.keys().copied().collect()
    }

    fn compute_faces(&self) -> Vec<Face> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if !self.is_edge((i, j)) {
                    continue;
                }
                for k in j + 1..self.n {
                    if self.is_edge((i, k)) && self.is_edge((j, k)) {
                        out.push([i, j, k]);
                    }
                }
            }
        }
        out
    }

    /// The two faces on either side of a diagonal, or the single face of a side.
    pub fn faces_on(&self, e: Edge) -> Vec<Face> {
        let (p, q) = norm(e);
        self.face_labels.keys().filter(|f| f.contains(&p) && f.contains(&q)).copied().collect()
    }

    /// Replace the labels of this triangulation with those of `other` where
    /// edges and faces coincide (used to carry labels across relabelings).
    fn with_tables(
        n: usize,
        diagonals: BTreeSet<Edge>,
        edge_labels: BTreeMap<Edge, u32>,
        face_labels: BTreeMap<Face, u32>,
        names: NameTable,
    ) -> Self {
        Triangulation { n, diagonals, edge_labels, face_labels, names }
    }

    /// Rotate vertex numbering by `k` (labels travel with their edges).
    pub fn rotated(&self, k: usize) -> Self {
        let m = |v: usize| (v + k) % self.n;
        let diagonals = self.diagonals.iter().map(|&(p, q)| norm((m(p), m(q)))).collect();
        let edge_labels = self.edge_labels.iter().map(|(&(p, q), l)| (norm((m(p), m(q))), *l)).collect();
        let face_labels = self
            .face_labels
            .iter()
            .map(|(f, l)| {
                let mut g = [m(f[0]), m(f[1]), m(f[2])];
                g.sort();
                (g, *l)
            })
            .collect();
        Self::with_tables(self.n, diagonals, edge_labels, face_labels, self.names.clone())
    }

    /// Mirror image `v -> n-1-v` (labels travel with their edges).
    pub fn reflected(&self) -> Self {
        let m = |v: usize| self.n - 1 - v;
        let diagonals = self.diagonals.iter().map(|&(p, q)| norm((m(p), m(q)))).collect();
        let edge_labels = self.edge_labels.iter().map(|(&(p, q), l)| (norm((m(p), m(q))), *l)).collect();
        let face_labels = self
            .face_labels
            .iter()
            .map(|(f, l)| {
                let mut g = [m(f[0]), m(f[1]), m(f[2])];
                g.sort();
                (g, *l)
            })
            .collect();
        Self::with_tables(self.n, diagonals, edge_labels, face_labels, self.names.clone())
    }

    pub fn check_arc(&self, g: Arc) -> Result<(), PolygonError> {
        if g.from >= self.n {
            return Err(PolygonError::VertexOutOfRange(g.from));
        }
        if g.to >= self.n {
            return Err(PolygonError::VertexOutOfRange(g.to));
        }
        if g.from == g.to {
            return Err(PolygonError::SameVertex);
        }
        Ok(())
    }
}

pub fn is_side(n: usize, p: usize, q: usize) -> bool {
    (p + 1) % n == q || (q + 1) % n == p
}

/// Diagonals crossed by an arc and the faces it passes through, both in
/// order from `arc.from`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub diagonals: Vec<Edge>,
    pub faces: Vec<Face>,
}

impl Crossing {
    /// Vertex of `faces[i]` not on `diagonals[j]`.
    pub fn apex(&self, i: usize, j: usize) -> usize {
        let (p, q) = self.diagonals[j];
        *self.faces[i].iter().find(|v| **v != p && **v != q).unwrap()
    }
}

pub fn crossing(t: &Triangulation, g: Arc) -> Result<Crossing, PolygonError> {
    t.check_arc(g)?;
    let n = t.n;
    let (a, b) = (g.from, g.to);
    if t.is_edge((a, b)) {
        return Ok(Crossing { diagonals: vec![], faces: vec![] });
    }
    let start = t
        .faces()
        .into_iter()
        .find(|f| {
            f.contains(&a) && {
                let o: Vec<usize> = f.iter().copied().filter(|v| *v != a).collect();
                chords_cross(n, (o[0], o[1]), (a, b))
            }
        })
        .expect("some face at the start vertex is entered by the arc");
    let mut faces = vec![start];
    let mut diagonals = Vec::new();
    let mut cur = start;
    let mut prev: Option<Edge> = None;
    loop {
        if cur.contains(&b) {
            break;
        }
        let sides = [(cur[0], cur[1]), (cur[0], cur[2]), (cur[1], cur[2])];
        let exit = sides
            .iter()
            .copied()
            .map(norm)
            .find(|s| Some(*s) != prev && chords_cross(n, *s, (a, b)))
            .expect("arc leaves every face it enters");
        diagonals.push(exit);
        let next = t.faces_on(exit).into_iter().find(|f| *f != cur).expect("crossed side is a diagonal");
        faces.push(next);
        prev = Some(exit);
        cur = next;
    }
    Ok(Crossing { diagonals, faces })
}

/// Labels of the diagonals crossed by `g`, in order from `g.from`.
pub fn crossing_sequence(t: &Triangulation, g: Arc) -> Result<Vec<u32>, PolygonError> {
    Ok(crossing(t, g)?.diagonals.into_iter().map(|e| t.edge_label(e)).collect())
}

/// The sub-triangulation made of the faces crossed by `g`, with vertices
/// renumbered in counterclockwise order and labels kept. Returns the input
/// unchanged when `g` crosses nothing.
pub fn restrict(t: &Triangulation, g: Arc) -> Result<(Triangulation, Arc), PolygonError> {
    let c = crossing(t, g)?;
    if c.diagonals.is_empty() {
        return Ok((t.clone(), g));
    }
    let verts: BTreeSet<usize> = c.faces.iter().flat_map(|f| f.iter().copied()).collect();
    let map: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let m = verts.len();
    let mp = |e: Edge| norm((map[&e.0], map[&e.1]));
    let diagonals: BTreeSet<Edge> = c.diagonals.iter().map(|e| mp(*e)).collect();
    let mut edge_labels = BTreeMap::new();
    for f in &c.faces {
        for e in [(f[0], f[1]), (f[0], f[2]), (f[1], f[2])] {
            edge_labels.insert(mp(e), t.edge_label(e));
        }
    }
    let mut face_labels = BTreeMap::new();
    for f in &c.faces {
        let mut g2 = [map[&f[0]], map[&f[1]], map[&f[2]]];
        g2.sort();
        face_labels.insert(g2, t.face_label(*f));
    }
    let out = Triangulation::with_tables(m, diagonals, edge_labels, face_labels, t.names.clone());
    Ok((out, Arc::new(map[&g.from], map[&g.to])))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanSegment {
    pub center: usize,
    /// Indices into the crossed-face list, increasing.
    pub faces: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanDecomposition {
    /// `c_0 = a, c_1, ..., c_N, c_{N+1} = b`.
    pub centers: Vec<usize>,
    pub segments: Vec<FanSegment>,
    /// Center of the segment holding each crossed face.
    pub face_center: Vec<usize>,
}

impl FanDecomposition {
    pub fn inner_centers(&self) -> &[usize] {
        &self.centers[1..self.centers.len() - 1]
    }
}

/// Fan centers are the vertices shared by consecutive crossed diagonals.
/// With a single crossed diagonal the center is taken to be its endpoint
/// on the left of the arc.
pub fn fan_decomposition(t: &Triangulation, g: Arc) -> Result<FanDecomposition, PolygonError> {
    let c = crossing(t, g)?;
    let k = c.diagonals.len();
    let n = t.n;
    let mut face_center = Vec::with_capacity(k + 1);
    if k == 0 {
        return Ok(FanDecomposition { centers: vec![g.from, g.to], segments: vec![], face_center });
    }
    let shared: Vec<usize> = (0..k.saturating_sub(1))
        .map(|i| {
            let (p, q) = c.diagonals[i];
            let (r, s) = c.diagonals[i + 1];
            if p == r || p == s {
                p
            } else {
                debug_assert!(q == r || q == s);
                q
            }
        })
        .collect();
    if k == 1 {
        let (p, q) = c.diagonals[0];
        let left = if right_of(n, g.from, g.to, p) { q } else { p };
        face_center = vec![left, left];
    } else {
        face_center.push(shared[0]);
        face_center.extend(shared.iter().copied());
        face_center.push(shared[k - 2]);
    }
    let mut centers = vec![g.from];
    let mut segments: Vec<FanSegment> = Vec::new();
    for (i, c0) in face_center.iter().enumerate() {
        match segments.last_mut() {
            Some(s) if s.center == *c0 => s.faces.push(i),
            _ => {
                centers.push(*c0);
                segments.push(FanSegment { center: *c0, faces: vec![i] });
            }
        }
    }
    centers.push(g.to);
    Ok(FanDecomposition { centers, segments, face_center })
}

/// Orientation of edges: each edge maps to its head vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiagOrientation {
    pub head: BTreeMap<Edge, usize>,
}

impl DiagOrientation {
    pub fn head_of(&self, e: Edge) -> Option<usize> {
        self.head.get(&norm(e)).copied()
    }
    pub fn tail_of(&self, e: Edge) -> Option<usize> {
        let (p, q) = norm(e);
        self.head_of(e).map(|h| if h == p { q } else { p })
    }
    /// `(tail, head)`.
    pub fn directed(&self, e: Edge) -> Option<(usize, usize)> {
        Some((self.tail_of(e)?, self.head_of(e)?))
    }
    pub fn set(&mut self, tail: usize, head: usize) {
        self.head.insert(norm((tail, head)), head);
    }
    pub fn reverse(&mut self, e: Edge) {
        if let Some((t, _)) = self.directed(e) {
            self.head.insert(norm(e), t);
        }
    }
}

/// Intra-fan diagonals point away from their center; diagonals joining two
/// centers point `c_i -> c_{i+1}`. Only diagonals crossed by `g` are set.
pub fn default_orientation(t: &Triangulation, g: Arc) -> Result<DiagOrientation, PolygonError> {
    let c = crossing(t, g)?;
    let fd = fan_decomposition(t, g)?;
    let mut o = DiagOrientation::default();
    for (i, &(p, q)) in c.diagonals.iter().enumerate() {
        let (c1, c2) = (fd.face_center[i], fd.face_center[i + 1]);
        if c1 == c2 {
            let head = if c1 == p { q } else { p };
            o.set(c1, head);
        } else {
            o.set(c1, c2);
        }
    }
    Ok(o)
}

/// Walk the crossed faces from `g.from`; a face to the right of the diagonal
/// it shares with its successor is greater than every later face.
pub fn positive_order(t: &Triangulation, g: Arc, o: &DiagOrientation) -> Result<PositiveOrder, PolygonError> {
    let c = crossing(t, g)?;
    let labels: Vec<u32> = c.faces.iter().map(|f| t.face_label(*f)).collect();
    if labels.is_empty() {
        return Ok(PositiveOrder::default());
    }
    let mut seq = std::collections::VecDeque::new();
    seq.push_back(labels[labels.len() - 1]);
    for k in (0..c.diagonals.len()).rev() {
        let (tail, head) = o.directed(c.diagonals[k]).expect("crossed diagonal is oriented");
        if right_of(t.n, tail, head, c.apex(k, k)) {
            seq.push_front(labels[k]);
        } else {
            seq.push_back(labels[k]);
        }
    }
    Ok(PositiveOrder::from_sequence(seq))
}

/// Default orientation and positive order together.
pub fn default_order(t: &Triangulation, g: Arc) -> Result<PositiveOrder, PolygonError> {
    let o = default_orientation(t, g)?;
    positive_order(t, g, &o)
}

/// All triangulations of an `n`-gon as diagonal lists.
pub fn all_triangulations(n: usize) -> Vec<Vec<Edge>> {
    fn rec(vs: &[usize]) -> Vec<Vec<Edge>> {
        if vs.len() < 3 {
            return vec![vec![]];
        }
        let (first, last) = (vs[0], vs[vs.len() - 1]);
        let mut out = Vec::new();
        for k in 1..vs.len() - 1 {
            let left = rec(&vs[..=k]);
            let right = rec(&vs[k..]);
            for l in &left {
                for r in &right {
                    let mut d = l.clone();
                    d.extend(r.iter().copied());
                    if k > 1 {
                        d.push(norm((first, vs[k])));
                    }
                    if k < vs.len() - 2 {
                        d.push(norm((vs[k], last)));
                    }
                    d.sort();
                    out.push(d);
                }
            }
        }
        out
    }
    let vs: Vec<usize> = (0..n).collect();
    rec(&vs)
}

/// One representative per dihedral class.
pub fn triangulations_up_to_symmetry(n: usize) -> Vec<Vec<Edge>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for d in all_triangulations(n) {
        let mut best: Option<Vec<Edge>> = None;
        for k in 0..n {
            for refl in [false, true] {
                let mut e: Vec<Edge> = d
                    .iter()
                    .map(|&(p, q)| {
                        let f = |v: usize| {
                            let v = (v + k) % n;
                            if refl {
                                n - 1 - v
                            } else {
                                v
                            }
                        };
                        norm((f(p), f(q)))
                    })
                    .collect();
                e.sort();
                if best.as_ref().map_or(true, |b| e < *b) {
                    best = Some(e);
                }
            }
        }
        if seen.insert(best.clone().unwrap()) {
            out.push(d);
        }
    }
    out
}

/// Non-edge arcs with `from < to`.
pub fn internal_arcs(t: &Triangulation) -> Vec<Arc> {
    let mut out = Vec::new();
    for i in 0..t.n {
        for j in i + 1..t.n {
            if !t.is_edge((i, j)) {
                out.push(Arc::new(i, j));
            }
        }
    }
    out
}

/// Vertices and labels around the face created last when an arc `i -> k`
/// is flipped in.
///
/// `j` is the top fan center, `l` the other end of the last crossed
/// diagonal, `a = jk`, `b = kl`, `d = ij` and `e = jl`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuShape {
    /// `[i, j, k, l]` in the original numbering.
    pub vertices: [usize; 4],
    pub a: u32,
    pub b: u32,
    /// `None` when `ij` is not an edge of the triangulation.
    pub d: Option<u32>,
    pub e: u32,
    /// Whether `j` lies left of the arc.
    pub left: bool,
    /// The face `(i, j, k)`, sorted.
    pub face: Face,
}

/// `None` when the arc crosses nothing.
pub fn mu_shape(t: &Triangulation, g: Arc) -> Result<Option<MuShape>, PolygonError> {
    let c = crossing(t, g)?;
    if c.diagonals.is_empty() {
        return Ok(None);
    }
    let fd = fan_decomposition(t, g)?;
    let j = fd.centers[fd.centers.len() - 2];
    let (p, q) = *c.diagonals.last().unwrap();
    let l = if p == j { q } else { p };
    let (i, k) = (g.from, g.to);
    let mut face = [i, j, k];
    face.sort();
    Ok(Some(MuShape {
        vertices: [i, j, k, l],
        a: t.edge_label((j, k)),
        b: t.edge_label((k, l)),
        d: t.is_edge((i, j)).then(|| t.edge_label((i, j))),
        e: t.edge_label((j, l)),
        left: !right_of(t.n, i, k, j),
        face,
    }))
}

/// Faces whose μ-invariants change sign between the flip computation and
/// the cleared dimer formula for `√(df)·φ`.
///
/// Counting fan segments back from the last one, the faces of every odd
/// step are negated. When `j` is on the right and there are at least two
/// segments, the whole value changes sign too.
pub fn mu_gauge(t: &Triangulation, g: Arc) -> Result<(BTreeSet<u32>, bool), PolygonError> {
    let c = crossing(t, g)?;
    let fd = fan_decomposition(t, g)?;
    let k = fd.segments.len();
    let mut faces = BTreeSet::new();
    for (si, seg) in fd.segments.iter().enumerate() {
        if (k - 1 - si) % 2 == 1 {
            faces.extend(seg.faces.iter().map(|f| t.face_label(c.faces[*f])));
        }
    }
    let left = mu_shape(t, g)?.map(|s| s.left).unwrap_or(true);
    Ok((faces, !left && k >= 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zigzag6() -> Triangulation {
        Triangulation::new(6, &[(0, 2), (2, 5), (5, 3)]).unwrap()
    }

    #[test]
    fn catalan_counts() {
        let cat = [1usize, 1, 2, 5, 14, 42, 132, 429];
        for n in 3..=9 {
            assert_eq!(all_triangulations(n).len(), cat[n - 2]);
        }
        for d in all_triangulations(7) {
            Triangulation::new(7, &d).unwrap();
        }
    }

    #[test]
    fn rejects_crossing_diagonals() {
        assert!(matches!(Triangulation::new(4, &[(0, 2), (1, 3)]), Err(PolygonError::Crossing(..))));
        assert!(matches!(Triangulation::new(5, &[(0, 2)]), Err(PolygonError::NotMaximal { .. })));
    }

    #[test]
    fn quadrilateral_crosses_its_diagonal() {
        let t = Triangulation::new(4, &[(0, 2)]).unwrap();
        let c = crossing(&t, Arc::new(1, 3)).unwrap();
        assert_eq!(c.diagonals, vec![(0, 2)]);
        assert_eq!(crossing_sequence(&t, Arc::new(0, 1)).unwrap(), Vec::<u32>::new());
        assert_eq!(crossing(&t, Arc::new(2, 2)), Err(PolygonError::SameVertex));
    }

    #[test]
    fn zigzag_crosses_all_in_order() {
        let t = zigzag6();
        let c = crossing(&t, Arc::new(1, 4)).unwrap();
        assert_eq!(c.diagonals, vec![(0, 2), (2, 5), (3, 5)]);
        let fd = fan_decomposition(&t, Arc::new(1, 4)).unwrap();
        assert!(fd.segments.iter().all(|s| s.faces.len() <= 2));
    }

    #[test]
    fn restriction_of_short_arc_is_quadrilateral() {
        let t = zigzag6();
        let (r, g) = restrict(&t, Arc::new(0, 3)).unwrap();
        assert_eq!(r.n(), 4);
        assert_eq!(crossing(&r, g).unwrap().diagonals.len(), 1);
    }

    #[test]
    fn fan_orientation_points_away() {
        let t = Triangulation::new(6, &[(0, 2), (0, 3), (0, 4)]).unwrap();
        let o = default_orientation(&t, Arc::new(1, 5)).unwrap();
        for d in t.diagonals() {
            assert_eq!(o.tail_of(d), Some(0));
        }
    }

    #[test]
    fn reversal_flips_only_center_links() {
        let t = zigzag6();
        let g = Arc::new(1, 4);
        let o1 = default_orientation(&t, g).unwrap();
        let o2 = default_orientation(&t, g.reversed()).unwrap();
        let fd = fan_decomposition(&t, g).unwrap();
        let inner = fd.inner_centers();
        for d in t.diagonals() {
            let link = inner.contains(&d.0) && inner.contains(&d.1);
            assert_eq!(o1.head_of(d) != o2.head_of(d), link, "{d:?}");
        }
    }
}
