//! Twisted super T-paths on the twisted auxiliary graph, their weights, the
//! bijection to double dimer covers, and conversion to untwisted paths.
//!
//! All positions refer to the triangulation restricted to the arc, but
//! polygon vertices in returned paths use the caller's numbering.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dimers::{self, DoubleDimerCover};
use crate::polygon::{self, norm, Arc, Edge, PolygonError, Triangulation};
use crate::snake;
use crate::superalg::{ordered_word, EvenMonomial, OddWord, PositiveOrder, Scalar, SuperPoly, SuperTerm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TPathError {
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error("arc crosses no diagonal")]
    NoCrossing,
    #[error("path is not a valid twisted super T-path: {0}")]
    Invalid(String),
    #[error("no matching double dimer cover")]
    NoImage,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Vertex {
    /// Polygon vertex.
    P(usize),
    /// Interior vertex of the `s`-th crossed face (1-based).
    Theta(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StepKind {
    /// Edge of the triangulation, given by its endpoints.
    Edge(usize, usize),
    SigmaA(usize),
    SigmaB(usize),
    Tau(usize, usize),
    /// Untwisted σ-edge joining `θ_s` to its fan center.
    Sigma(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TPath {
    pub vertices: Vec<Vertex>,
    pub steps: Vec<StepKind>,
}

impl TPath {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `(i, j)` for each τ step.
    pub fn super_steps(&self) -> Vec<(usize, usize)> {
        self.steps
            .iter()
            .filter_map(|s| match s {
                StepKind::Tau(i, j) => Some((*i, *j)),
                _ => None,
            })
            .collect()
    }

    pub fn is_ordinary(&self) -> bool {
        self.super_steps().is_empty()
    }

    pub fn describe(&self) -> String {
        let v = |x: &Vertex| match x {
            Vertex::P(p) => p.to_string(),
            Vertex::Theta(s) => format!("θ{s}"),
        };
        self.vertices.iter().map(v).collect::<Vec<_>>().join("→")
    }
}

/// The twisted auxiliary graph of an arc, in restricted coordinates.
#[derive(Clone, Debug)]
pub struct TwistedAuxGraph {
    pub restricted: Triangulation,
    pub arc: Arc,
    /// Restricted vertex → caller's vertex.
    pub back: Vec<usize>,
    /// Crossed diagonals `x_1..x_{n-1}`.
    pub diagonals: Vec<Edge>,
    /// Face label of `θ_1..θ_n`.
    pub theta: Vec<u32>,
    /// Polygon vertex joined to `θ_s` by `σ^A_s`.
    pub sigma_a: Vec<usize>,
    /// Polygon vertex joined to `θ_s` by `σ^B_s`.
    pub sigma_b: Vec<usize>,
    /// Fan center of each face.
    pub center: Vec<usize>,
    pub order: PositiveOrder,
    faces: Vec<[usize; 3]>,
}

impl TwistedAuxGraph {
    pub fn num_faces(&self) -> usize {
        self.theta.len()
    }

    pub fn tau_count(&self) -> usize {
        let n = self.num_faces();
        n * (n - 1) / 2
    }

    pub fn label(&self, p: usize, q: usize) -> u32 {
        self.restricted.edge_label((p, q))
    }

    /// `x_k` sits at position `2k`.
    fn crossing_position(&self, e: Edge) -> Option<usize> {
        self.diagonals.iter().position(|d| *d == norm(e)).map(|k| 2 * (k + 1))
    }

    /// `√(x_k x_l / x_j)` for the corner `v` of face `s`.
    fn corner_monomial(&self, s: usize, v: usize) -> EvenMonomial {
        let f = self.faces[s - 1];
        let o: Vec<usize> = f.iter().copied().filter(|u| *u != v).collect();
        EvenMonomial::from_twice([(self.label(v, o[0]), 1), (self.label(v, o[1]), 1), (self.label(o[0], o[1]), -1)])
    }

    fn to_caller(&self, v: Vertex) -> Vertex {
        match v {
            Vertex::P(p) => Vertex::P(self.back[p]),
            t => t,
        }
    }

    fn from_caller(&self, v: Vertex) -> Vertex {
        match v {
            Vertex::P(p) => Vertex::P(self.back.iter().position(|q| *q == p).expect("vertex of the restricted polygon")),
            t => t,
        }
    }

    fn local_path(&self, p: &TPath) -> TPath {
        let steps = p
            .steps
            .iter()
            .map(|s| match s {
                StepKind::Edge(a, b) => match (self.from_caller(Vertex::P(*a)), self.from_caller(Vertex::P(*b))) {
                    (Vertex::P(x), Vertex::P(y)) => StepKind::Edge(x, y),
                    _ => unreachable!(),
                },
                k => *k,
            })
            .collect();
        TPath { vertices: p.vertices.iter().map(|v| self.from_caller(*v)).collect(), steps }
    }

    fn caller_path(&self, p: &TPath) -> TPath {
        let steps = p
            .steps
            .iter()
            .map(|s| match s {
                StepKind::Edge(a, b) => StepKind::Edge(self.back[*a], self.back[*b]),
                k => *k,
            })
            .collect();
        TPath { vertices: p.vertices.iter().map(|v| self.to_caller(*v)).collect(), steps }
    }
}

pub fn build_aux(t: &Triangulation, g: Arc) -> Result<TwistedAuxGraph, TPathError> {
    let (r, rg) = polygon::restrict(t, g)?;
    let c = polygon::crossing(&r, rg)?;
    if c.diagonals.is_empty() {
        return Err(TPathError::NoCrossing);
    }
    let fd = polygon::fan_decomposition(&r, rg)?;
    let n = c.faces.len();
    // σ^A_s ends at the corner off the exit diagonal, σ^B_s at the corner
    // off the entry diagonal. The two end faces use the non-center end of
    // their only diagonal for the unused one.
    let off_center = |s: usize, k: usize| {
        let (p, q) = c.diagonals[k];
        if p == fd.face_center[s] {
            q
        } else {
            p
        }
    };
    let sigma_a = (0..n).map(|s| if s + 1 < n { c.apex(s, s) } else { off_center(s, s - 1) }).collect();
    let sigma_b = (0..n).map(|s| if s > 0 { c.apex(s, s - 1) } else { off_center(0, 0) }).collect();
    let back: Vec<usize> = {
        let cc = polygon::crossing(t, g)?;
        let verts: BTreeSet<usize> = cc.faces.iter().flat_map(|f| f.iter().copied()).collect();
        verts.into_iter().collect()
    };
    Ok(TwistedAuxGraph {
        theta: c.faces.iter().map(|f| r.face_label(*f)).collect(),
        order: polygon::default_order(&r, rg)?,
        center: fd.face_center.clone(),
        faces: c.faces.clone(),
        diagonals: c.diagonals.clone(),
        restricted: r,
        arc: rg,
        back,
        sigma_a,
        sigma_b,
    })
}

/// Twisted super T-paths from `a` to `b`, in the caller's vertex numbering.
pub fn enumerate_tpaths(t: &Triangulation, g: Arc) -> Result<Vec<TPath>, TPathError> {
    let aux = build_aux(t, g)?;
    let mut out: Vec<TPath> = local_tpaths(&aux).iter().map(|p| aux.caller_path(p)).collect();
    out.sort();
    Ok(out)
}

fn local_tpaths(aux: &TwistedAuxGraph) -> Vec<TPath> {
    let r = &aux.restricted;
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (p, q) in r.all_edges() {
        adj.entry(p).or_default().push(q);
        adj.entry(q).or_default().push(p);
    }
    let mut out = Vec::new();
    let mut st = Search {
        aux,
        adj,
        used: BTreeSet::new(),
        path: TPath { vertices: vec![Vertex::P(aux.arc.from)], steps: vec![] },
        out: &mut out,
    };
    st.dfs(0);
    out
}

struct Search<'a> {
    aux: &'a TwistedAuxGraph,
    adj: BTreeMap<usize, Vec<usize>>,
    used: BTreeSet<StepKind>,
    path: TPath,
    out: &'a mut Vec<TPath>,
}

impl Search<'_> {
    fn push(&mut self, k: StepKind, v: Vertex, last: usize) {
        let key = match k {
            StepKind::Edge(a, b) => {
                let (x, y) = norm((a, b));
                StepKind::Edge(x, y)
            }
            k => k,
        };
        if self.used.contains(&key) {
            return;
        }
        self.used.insert(key);
        self.path.steps.push(k);
        self.path.vertices.push(v);
        self.dfs(last);
        self.path.vertices.pop();
        self.path.steps.pop();
        self.used.remove(&key);
    }

    /// `last` is the end of the latest crossing interval.
    fn dfs(&mut self, last: usize) {
        let aux = self.aux;
        let i = self.path.steps.len() + 1;
        let odd = i % 2 == 1;
        let cur = *self.path.vertices.last().unwrap();
        if !odd && cur == Vertex::P(aux.arc.to) {
            self.out.push(self.path.clone());
        }
        match cur {
            Vertex::P(p) => {
                for q in self.adj[&p].clone() {
                    match aux.crossing_position((p, q)) {
                        Some(pos) if pos > last => self.push(StepKind::Edge(p, q), Vertex::P(q), pos),
                        Some(_) => {}
                        None if odd => self.push(StepKind::Edge(p, q), Vertex::P(q), last),
                        None => {}
                    }
                }
                if odd {
                    for s in 1..=aux.num_faces() {
                        if aux.sigma_a[s - 1] == p && 2 * s - 1 > last && s < aux.num_faces() {
                            self.push(StepKind::SigmaA(s), Vertex::Theta(s), last);
                        }
                    }
                }
            }
            Vertex::Theta(s) => {
                let prev = *self.path.steps.last().unwrap();
                if !odd && prev == StepKind::SigmaA(s) {
                    for j in s + 1..=aux.num_faces() {
                        self.push(StepKind::Tau(s, j), Vertex::Theta(j), 2 * j - 1);
                    }
                } else if odd && matches!(prev, StepKind::Tau(_, j) if j == s) {
                    self.push(StepKind::SigmaB(s), Vertex::P(aux.sigma_b[s - 1]), last);
                }
            }
        }
    }
}

/// Twisted weight of a path (given in the caller's numbering).
pub fn twt<C: Scalar>(p: &TPath, aux: &TwistedAuxGraph) -> SuperTerm<C> {
    let lp = aux.local_path(p);
    let mut even = EvenMonomial::one();
    let mut odd = Vec::new();
    for (idx, s) in lp.steps.iter().enumerate() {
        let i = idx + 1;
        match s {
            StepKind::Edge(a, b) => {
                let x = aux.label(*a, *b);
                even = even.mul(&EvenMonomial::power(x, if i % 2 == 1 { 2 } else { -2 }));
            }
            StepKind::SigmaA(t) => {
                even = even.mul(&aux.corner_monomial(*t, aux.sigma_a[t - 1]));
                odd.push(aux.theta[t - 1]);
            }
            StepKind::SigmaB(t) => {
                even = even.mul(&aux.corner_monomial(*t, aux.sigma_b[t - 1]));
                odd.push(aux.theta[t - 1]);
            }
            StepKind::Sigma(t) => {
                let f = aux.center[t - 1];
                even = even.mul(&aux.corner_monomial(*t, f).inv());
                odd.push(aux.theta[t - 1]);
            }
            StepKind::Tau(..) => {}
        }
    }
    match ordered_word(&odd, &aux.order) {
        Some(w) => SuperTerm::new(C::one(), even, w),
        None => SuperTerm::new(C::zero(), even, OddWord::empty()),
    }
}

pub fn tpath_expansion<C: Scalar>(t: &Triangulation, g: Arc) -> Result<SuperPoly<C>, TPathError> {
    t.check_arc(g)?;
    if t.is_edge(g.edge()) {
        return Ok(SuperPoly::even_gen(t.edge_label(g.edge())));
    }
    let aux = build_aux(t, g)?;
    Ok(SuperPoly::from_terms(local_tpaths(&aux).iter().map(|p| twt::<C>(&aux.caller_path(p), &aux))))
}

/// Check the axioms, including the shape of super steps, for a path in
/// the caller's numbering.
pub fn validate(p: &TPath, aux: &TwistedAuxGraph) -> Result<(), TPathError> {
    let lp = aux.local_path(p);
    let bad = |m: &str| Err(TPathError::Invalid(m.into()));
    if lp.vertices.first() != Some(&Vertex::P(aux.arc.from)) || lp.vertices.last() != Some(&Vertex::P(aux.arc.to)) {
        return bad("endpoints");
    }
    if lp.steps.len() % 2 == 0 {
        return bad("even length");
    }
    let mut seen = BTreeSet::new();
    let mut last = 0;
    for (idx, s) in lp.steps.iter().enumerate() {
        let i = idx + 1;
        let (u, v) = (lp.vertices[idx], lp.vertices[idx + 1]);
        let key = match s {
            StepKind::Edge(a, b) => StepKind::Edge(norm((*a, *b)).0, norm((*a, *b)).1),
            k => *k,
        };
        if !seen.insert(key) {
            return bad("repeated edge");
        }
        match *s {
            StepKind::Edge(a, b) => {
                if (u, v) != (Vertex::P(a), Vertex::P(b)) || !aux.restricted.is_edge((a, b)) {
                    return bad("edge step");
                }
                match aux.crossing_position((a, b)) {
                    Some(pos) => {
                        if pos <= last {
                            return bad("crossings out of order");
                        }
                        last = pos;
                    }
                    None if i % 2 == 0 => return bad("even step does not cross"),
                    None => {}
                }
            }
            StepKind::SigmaA(t) => {
                if i % 2 == 0 || (u, v) != (Vertex::P(aux.sigma_a[t - 1]), Vertex::Theta(t)) {
                    return bad("σA step");
                }
                if lp.steps.get(idx + 1).map_or(true, |n| !matches!(n, StepKind::Tau(x, _) if *x == t)) {
                    return bad("σA not followed by τ");
                }
            }
            StepKind::SigmaB(t) => {
                if i % 2 == 0 || (u, v) != (Vertex::Theta(t), Vertex::P(aux.sigma_b[t - 1])) {
                    return bad("σB step");
                }
            }
            StepKind::Tau(a, b) => {
                if i % 2 == 1 || a >= b || (u, v) != (Vertex::Theta(a), Vertex::Theta(b)) {
                    return bad("τ step");
                }
                if 2 * a - 1 <= last {
                    return bad("crossings out of order");
                }
                if lp.steps.get(idx + 1) != Some(&StepKind::SigmaB(b)) || lp.steps[idx - 1] != StepKind::SigmaA(a) {
                    return bad("τ not between σA and σB");
                }
                last = 2 * b - 1;
            }
            StepKind::Sigma(_) => return bad("untwisted σ step"),
        }
    }
    Ok(())
}

/// The double dimer cover of the snake graph matching a path: one cycle
/// around tiles `i..j-1` per super step `σ^A_i τ_ij σ^B_j`, and the
/// remaining edges fixed by the weight.
pub fn tpath_to_dimer(p: &TPath, t: &Triangulation, g: Arc) -> Result<DoubleDimerCover, TPathError> {
    let index = CoverIndex::new(t, g)?;
    index.image(p)
}

/// Every path paired with its cover, in path order.
pub fn tpath_dimer_pairs(t: &Triangulation, g: Arc) -> Result<Vec<(TPath, DoubleDimerCover)>, TPathError> {
    let index = CoverIndex::new(t, g)?;
    enumerate_tpaths(t, g)?.into_iter().map(|p| index.image(&p).map(|m| (p, m))).collect()
}

type CoverKey = (Vec<(usize, usize)>, EvenMonomial, OddWord);

struct CoverIndex {
    aux: TwistedAuxGraph,
    cross: EvenMonomial,
    covers: BTreeMap<CoverKey, Vec<DoubleDimerCover>>,
}

impl CoverIndex {
    fn new(t: &Triangulation, g: Arc) -> Result<Self, TPathError> {
        let aux = build_aux(t, g)?;
        let sg = snake::build(t, g).map_err(|_| TPathError::NoCrossing)?;
        let l = sg.layout();
        let mut covers: BTreeMap<CoverKey, Vec<DoubleDimerCover>> = BTreeMap::new();
        for m in dimers::enumerate_double_dimers(&sg) {
            let cyc = m.cycles(&l).iter().map(|c| (c.first_tile, c.last_tile)).collect();
            let w: SuperTerm<i64> = dimers::weight(&m, &sg, &aux.order);
            covers.entry((cyc, w.even, w.odd)).or_default().push(m);
        }
        Ok(Self { aux, cross: sg.cross_monomial(), covers })
    }

    fn image(&self, p: &TPath) -> Result<DoubleDimerCover, TPathError> {
        let cyc = p.super_steps().iter().map(|(i, j)| (*i, j - 1)).collect();
        let w: SuperTerm<i64> = twt(p, &self.aux);
        match self.covers.get(&(cyc, w.even.mul(&self.cross), w.odd)).map(Vec::as_slice) {
            Some([m]) => Ok(m.clone()),
            Some(_) => Err(TPathError::Invalid("ambiguous image".into())),
            None => Err(TPathError::NoImage),
        }
    }
}

/// Rewrite each twisted super step as an untwisted one.
pub fn to_untwisted(p: &TPath, aux: &TwistedAuxGraph) -> TPath {
    let lp = aux.local_path(p);
    let mut steps: Vec<StepKind> = Vec::new();
    let mut verts: Vec<Vertex> = vec![lp.vertices[0]];
    let mut k = 0;
    while k < lp.steps.len() {
        match lp.steps[k] {
            StepKind::SigmaA(i) => {
                let f = aux.center[i - 1];
                let v = aux.sigma_a[i - 1];
                let red = k > 0 && is_edge_step(steps.last(), f, v) && verts.len() >= 2 && verts[verts.len() - 2] == Vertex::P(f);
                if red {
                    steps.pop();
                    verts.pop();
                } else {
                    steps.push(StepKind::Edge(v, f));
                    verts.push(Vertex::P(f));
                }
                steps.push(StepKind::Sigma(i));
                verts.push(Vertex::Theta(i));
            }
            StepKind::SigmaB(j) => {
                let f = aux.center[j - 1];
                let w = aux.sigma_b[j - 1];
                steps.push(StepKind::Sigma(j));
                verts.push(Vertex::P(f));
                let red = lp.steps.get(k + 1).is_some_and(|s| is_edge_step(Some(s), w, f)) && lp.vertices[k + 2] == Vertex::P(f);
                if red {
                    k += 1;
                } else {
                    steps.push(StepKind::Edge(f, w));
                    verts.push(Vertex::P(w));
                }
            }
            s => {
                steps.push(s);
                verts.push(lp.vertices[k + 1]);
            }
        }
        k += 1;
    }
    aux.caller_path(&TPath { vertices: verts, steps })
}

/// Inverse of [`to_untwisted`].
pub fn to_twisted(p: &TPath, aux: &TwistedAuxGraph) -> TPath {
    let lp = aux.local_path(p);
    let mut steps: Vec<StepKind> = Vec::new();
    let mut verts: Vec<Vertex> = vec![lp.vertices[0]];
    let mut k = 0;
    while k < lp.steps.len() {
        match lp.steps[k] {
            StepKind::Sigma(i) if lp.vertices[k + 1] == Vertex::Theta(i) => {
                let f = aux.center[i - 1];
                let v = aux.sigma_a[i - 1];
                let merged = is_edge_step(steps.last(), v, f) && verts.len() >= 2 && verts[verts.len() - 2] == Vertex::P(v);
                if merged {
                    steps.pop();
                    verts.pop();
                } else {
                    steps.push(StepKind::Edge(f, v));
                    verts.push(Vertex::P(v));
                }
                steps.push(StepKind::SigmaA(i));
                verts.push(Vertex::Theta(i));
            }
            StepKind::Sigma(j) => {
                let f = aux.center[j - 1];
                let w = aux.sigma_b[j - 1];
                steps.push(StepKind::SigmaB(j));
                verts.push(Vertex::P(w));
                let merged = lp.steps.get(k + 1).is_some_and(|s| is_edge_step(Some(s), f, w)) && lp.vertices[k + 2] == Vertex::P(w);
                if merged {
                    k += 1;
                } else {
                    steps.push(StepKind::Edge(w, f));
                    verts.push(Vertex::P(f));
                }
            }
            s => {
                steps.push(s);
                verts.push(lp.vertices[k + 1]);
            }
        }
        k += 1;
    }
    aux.caller_path(&TPath { vertices: verts, steps })
}

fn is_edge_step(s: Option<&StepKind>, from: usize, to: usize) -> bool {
    matches!(s, Some(StepKind::Edge(a, b)) if (*a, *b) == (from, to))
}
