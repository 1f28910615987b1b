//! Lattice paths on dual snake graphs, tile labelings and order ideals.
//!
//! A monotone path from the bottom-left to the top-right corner meets each
//! tile's anti-diagonal once, either at its top-left corner (the path runs
//! above the tile) or at its bottom-right corner. A pair of paths is
//! therefore a labeling by how many paths run above each tile.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dimers::{setup, DimerCover, DimerError, DoubleDimerCover};
use crate::polygon::{Arc, Triangulation};
use crate::snake::{dual, Layout, Letter, Point, Segment, Side, SnakeGraph, SIDES};
use crate::superalg::{ordered_word, EvenMonomial, OddWord, PositiveOrder, Scalar, SuperPoly, SuperTerm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("edge sides disagree across a glued edge")]
    InconsistentEdgeMap,
    #[error("not a lattice path")]
    NotAPath,
    #[error("labeling violates the word constraints")]
    BadLabeling,
    #[error("isomorphism check failed: {0}")]
    IsoFailure(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Step {
    Right,
    Up,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePath {
    pub steps: Vec<Step>,
}

impl LatticePath {
    pub fn points(&self) -> Vec<Point> {
        let mut p = vec![(0, 0)];
        for s in &self.steps {
            let (x, y) = *p.last().unwrap();
            p.push(match s {
                Step::Right => (x + 1, y),
                Step::Up => (x, y + 1),
            });
        }
        p
    }

    /// Canonical edge ids in `l`, or `None` if a step leaves the graph.
    pub fn edges(&self, l: &Layout) -> Option<Vec<usize>> {
        let pts = self.points();
        pts.windows(2).map(|w| l.segment_id(Segment { start: w[0], horizontal: w[1].0 > w[0].0 })).collect()
    }
}

pub type TileLabeling = Vec<u8>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DoubleLatticePath {
    pub multiplicity: BTreeMap<usize, u8>,
}

/// Side of the dual graph's tile holding the image of `(tile, side)`.
pub fn dual_side(tile: usize, s: Side) -> Side {
    if tile % 2 == 1 {
        match s {
            Side::N => Side::E,
            Side::E => Side::N,
            o => o,
        }
    } else {
        match s {
            Side::S => Side::W,
            Side::W => Side::S,
            o => o,
        }
    }
}

/// Edge id map from `G` to `dual(G)`: `(tile, side) ↦ (tile, dual_side)`.
pub fn edge_map(g: &SnakeGraph) -> Result<BTreeMap<usize, usize>, LatticeError> {
    let d = dual(g);
    let (lg, ld) = (g.layout(), d.layout());
    let mut m = BTreeMap::new();
    for t in 0..g.len() {
        for s in SIDES {
            let a = lg.edge(t, s);
            let b = ld.edge(t, dual_side(t + 1, s));
            if *m.entry(a).or_insert(b) != b {
                return Err(LatticeError::InconsistentEdgeMap);
            }
        }
    }
    Ok(m)
}

/// All monotone paths through the graph from the bottom-left corner of
/// the first tile to the top-right corner of the last.
pub fn lattice_paths(g: &SnakeGraph) -> Vec<LatticePath> {
    labelings_with(g, 1).into_iter().map(|b| path_from_bits(g, &b)).collect()
}

fn path_from_bits(g: &SnakeGraph, b: &[u8]) -> LatticePath {
    let o = g.origins();
    let mut pts = vec![(0, 0)];
    for (i, bit) in b.iter().enumerate() {
        let (x, y) = o[i];
        pts.push(if *bit == 1 { (x, y + 1) } else { (x + 1, y) });
    }
    let (x, y) = *o.last().unwrap();
    pts.push((x + 1, y + 1));
    let steps = pts.windows(2).map(|w| if w[1].0 > w[0].0 { Step::Right } else { Step::Up }).collect();
    LatticePath { steps }
}

/// Labels `0/1` of a path: `1` where it passes above the tile.
pub fn path_bits(g: &SnakeGraph, p: &LatticePath) -> Vec<u8> {
    let o = g.origins();
    let pts = p.points();
    o.iter().zip(&pts[1..]).map(|(&(x, y), q)| u8::from(*q == (x, y + 1))).collect()
}

/// The perfect matching of `G` sent edge by edge to a lattice path of
/// `dual(G)`.
pub fn dimer_to_path(m: &DimerCover, g: &SnakeGraph) -> Result<LatticePath, LatticeError> {
    let map = edge_map(g)?;
    let d = dual(g);
    let ld = d.layout();
    let img: BTreeSet<usize> = m.edges.iter().map(|e| map[e]).collect();
    lattice_paths(&d)
        .into_iter()
        .find(|p| p.edges(&ld).is_some_and(|es| es.iter().copied().collect::<BTreeSet<_>>() == img))
        .ok_or(LatticeError::NotAPath)
}

/// Product of edge labels along the path.
pub fn path_weight(p: &LatticePath, g: &SnakeGraph) -> Option<EvenMonomial> {
    let l = g.layout();
    let es = p.edges(&l)?;
    Some(EvenMonomial::from_twice(es.iter().map(|e| (l.labels[*e], 2))))
}

fn labelings_with(g: &SnakeGraph, max: u8) -> Vec<TileLabeling> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(g: &SnakeGraph, max: u8, cur: &mut Vec<u8>, out: &mut Vec<TileLabeling>) {
        if cur.len() == g.len() {
            out.push(cur.clone());
            return;
        }
        for a in 0..=max {
            if let Some(&prev) = cur.last() {
                let ok = match g.word[cur.len() - 1] {
                    Letter::R => prev <= a,
                    Letter::U => prev >= a,
                };
                if !ok {
                    continue;
                }
            }
            cur.push(a);
            rec(g, max, cur, out);
            cur.pop();
        }
    }
    rec(g, max, &mut cur, &mut out);
    out
}

/// All labelings by `0, 1, 2` satisfying the word constraints.
pub fn labelings(g: &SnakeGraph) -> Vec<TileLabeling> {
    labelings_with(g, 2)
}

pub fn is_labeling(g: &SnakeGraph, a: &[u8]) -> bool {
    a.len() == g.len()
        && a.iter().all(|x| *x <= 2)
        && g.word.iter().enumerate().all(|(i, l)| match l {
            Letter::R => a[i] <= a[i + 1],
            Letter::U => a[i] >= a[i + 1],
        })
}

/// The non-crossing pair: upper path above tiles labeled `≥ 1`, lower path
/// above tiles labeled `2`.
pub fn labeling_pair(g: &SnakeGraph, a: &[u8]) -> Result<(LatticePath, LatticePath), LatticeError> {
    if !is_labeling(g, a) {
        return Err(LatticeError::BadLabeling);
    }
    let upper: Vec<u8> = a.iter().map(|x| u8::from(*x >= 1)).collect();
    let lower: Vec<u8> = a.iter().map(|x| u8::from(*x == 2)).collect();
    Ok((path_from_bits(g, &upper), path_from_bits(g, &lower)))
}

pub fn labeling_to_doublepath(g: &SnakeGraph, a: &[u8]) -> Result<DoubleLatticePath, LatticeError> {
    let (u, d) = labeling_pair(g, a)?;
    let l = g.layout();
    let mut multiplicity = BTreeMap::new();
    for e in u.edges(&l).into_iter().flatten().chain(d.edges(&l).into_iter().flatten()) {
        *multiplicity.entry(e).or_insert(0) += 1;
    }
    Ok(DoubleLatticePath { multiplicity })
}

/// Labels recovered from a double path: tiles above which it passes
/// through the top-left corner, counted with multiplicity.
pub fn doublepath_to_labeling(g: &SnakeGraph, p: &DoubleLatticePath) -> TileLabeling {
    let l = g.layout();
    let o = g.origins();
    let mut through = BTreeMap::new();
    for (e, m) in &p.multiplicity {
        let (a, b) = l.endpoints(*e);
        *through.entry(a).or_insert(0u8) += m;
        *through.entry(b).or_insert(0u8) += m;
    }
    o.iter().map(|&(x, y)| through.get(&l.point((x, y + 1))).copied().unwrap_or(0) / 2).collect()
}

/// Maximal runs of tiles labeled `1` as `(first, last)`, 1-based.
pub fn labeling_cycles(a: &[u8]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, x) in a.iter().enumerate() {
        match (*x == 1, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                out.push((s + 1, i));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, a.len()));
    }
    out
}

/// `√label` per edge with multiplicity, times the corner labels of each
/// cycle, in positive order.
pub fn doublepath_weight<C: Scalar>(p: &DoubleLatticePath, g: &SnakeGraph, order: &PositiveOrder) -> SuperTerm<C> {
    let l = g.layout();
    let even = EvenMonomial::from_twice(p.multiplicity.iter().map(|(e, m)| (l.labels[*e], *m as i32)));
    let a = doublepath_to_labeling(g, p);
    let mut odd = Vec::new();
    for (i, j) in labeling_cycles(&a) {
        odd.push(g.tiles[i - 1].corner_bl);
        odd.push(g.tiles[j - 1].corner_tr);
    }
    match ordered_word(&odd, order) {
        Some(w) => SuperTerm::new(C::one(), even, w),
        None => SuperTerm::new(C::zero(), even, OddWord::empty()),
    }
}

/// Double dimer covers of `G` obtained from the labelings of `dual(G)`.
pub fn double_dimers_via_labelings(g: &SnakeGraph) -> Result<Vec<DoubleDimerCover>, LatticeError> {
    let map = edge_map(g)?;
    let inv: BTreeMap<usize, usize> = map.iter().map(|(a, b)| (*b, *a)).collect();
    let d = dual(g);
    let mut out: Vec<DoubleDimerCover> = labelings(&d)
        .iter()
        .map(|a| {
            let p = labeling_to_doublepath(&d, a)?;
            Ok(DoubleDimerCover { multiplicity: p.multiplicity.iter().map(|(e, m)| (inv[e], *m)).collect() })
        })
        .collect::<Result<_, LatticeError>>()?;
    out.sort();
    Ok(out)
}

/// `(1/cross)·Σ` of double lattice path weights on the dual graph.
pub fn lattice_expansion<C: Scalar>(t: &Triangulation, g: Arc) -> Result<SuperPoly<C>, DimerError> {
    t.check_arc(g)?;
    if t.is_edge(g.edge()) {
        return Ok(SuperPoly::even_gen(t.edge_label(g.edge())));
    }
    let (_, _, sg, order) = setup(t, g)?;
    let d = dual(&sg);
    let mut sum = SuperPoly::zero();
    for a in labelings(&d) {
        let p = labeling_to_doublepath(&d, &a).expect("labelings are valid");
        sum.add_term(doublepath_weight::<C>(&p, &d, &order));
    }
    Ok(sum.divide_by_monomial(&sg.cross_monomial()))
}

/// Tile poset: `R` makes tile `i+1` smaller than tile `i`, `U` larger.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Poset {
    pub size: usize,
    /// `(lower, upper)` cover pairs.
    pub covers: Vec<(usize, usize)>,
}

pub fn poset(g: &SnakeGraph) -> Poset {
    let covers = g
        .word
        .iter()
        .enumerate()
        .map(|(i, l)| match l {
            Letter::R => (i + 1, i),
            Letter::U => (i, i + 1),
        })
        .collect();
    Poset { size: g.len(), covers }
}

/// The product with a two-element chain; node `(i, level)` has index
/// `2i + level`.
pub fn product_poset(p: &Poset) -> Poset {
    let mut covers = Vec::new();
    for &(a, b) in &p.covers {
        covers.push((2 * a, 2 * b));
        covers.push((2 * a + 1, 2 * b + 1));
    }
    for i in 0..p.size {
        covers.push((2 * i, 2 * i + 1));
    }
    Poset { size: 2 * p.size, covers }
}

pub type OrderIdeal = BTreeSet<usize>;

/// Down-sets, each built once by deciding nodes in a linear extension.
pub fn order_ideals(p: &Poset) -> Vec<OrderIdeal> {
    let mut lower: Vec<Vec<usize>> = vec![Vec::new(); p.size];
    for &(a, b) in &p.covers {
        lower[b].push(a);
    }
    let mut ext = Vec::new();
    let mut placed = vec![false; p.size];
    while ext.len() < p.size {
        for v in 0..p.size {
            if !placed[v] && lower[v].iter().all(|u| placed[*u]) {
                placed[v] = true;
                ext.push(v);
            }
        }
    }
    let mut out = Vec::new();
    fn rec(k: usize, ext: &[usize], lower: &[Vec<usize>], cur: &mut OrderIdeal, out: &mut Vec<OrderIdeal>) {
        if k == ext.len() {
            out.push(cur.clone());
            return;
        }
        let v = ext[k];
        rec(k + 1, ext, lower, cur, out);
        if lower[v].iter().all(|u| cur.contains(u)) {
            cur.insert(v);
            rec(k + 1, ext, lower, cur, out);
            cur.remove(&v);
        }
    }
    rec(0, &ext, &lower, &mut BTreeSet::new(), &mut out);
    out.sort();
    out
}

pub fn labeling_to_ideal(a: &[u8]) -> OrderIdeal {
    let mut s = BTreeSet::new();
    for (i, x) in a.iter().enumerate() {
        if *x >= 1 {
            s.insert(2 * i);
        }
        if *x == 2 {
            s.insert(2 * i + 1);
        }
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoWitness {
    pub elements: usize,
    pub cover_relations: usize,
    pub map: Vec<(TileLabeling, Vec<usize>)>,
}

/// Check that labelings ordered by single increments match order ideals
/// ordered by single insertions.
pub fn iso_check(g: &SnakeGraph) -> Result<IsoWitness, LatticeError> {
    let labs = labelings(g);
    let ideals: BTreeSet<OrderIdeal> = order_ideals(&product_poset(&poset(g))).into_iter().collect();
    let fail = |m: String| Err(LatticeError::IsoFailure(m));
    let image: BTreeSet<OrderIdeal> = labs.iter().map(|a| labeling_to_ideal(a)).collect();
    if image.len() != labs.len() {
        return fail("map is not injective".into());
    }
    if image != ideals {
        return fail("image differs from the order ideals".into());
    }
    let mut covers = 0;
    for a in &labs {
        let ia = labeling_to_ideal(a);
        for i in 0..a.len() {
            let mut b = a.clone();
            b[i] += 1;
            let lab_cover = is_labeling(g, &b);
            let ib = labeling_to_ideal(&b);
            let ideal_cover = ideals.contains(&ib) && ib.len() == ia.len() + 1 && ia.is_subset(&ib);
            if lab_cover != ideal_cover {
                return fail(format!("cover mismatch at {a:?}, tile {}", i + 1));
            }
            covers += usize::from(lab_cover);
        }
        for v in 0..2 * a.len() {
            if ia.contains(&v) {
                continue;
            }
            let mut j = ia.clone();
            j.insert(v);
            if ideals.contains(&j) && !image.contains(&j) {
                return fail("ideal cover outside the image".into());
            }
        }
    }
    Ok(IsoWitness {
        elements: labs.len(),
        cover_relations: covers,
        map: labs.iter().map(|a| (a.clone(), labeling_to_ideal(a).into_iter().collect())).collect(),
    })
}

/// Hasse diagram of the labeling lattice in DOT syntax.
pub fn hasse_dot(g: &SnakeGraph) -> String {
    let labs = labelings(g);
    let name = |a: &[u8]| a.iter().map(|x| x.to_string()).collect::<String>();
    let mut s = String::from("digraph L {\n  rankdir=BT;\n");
    for a in &labs {
        s.push_str(&format!("  \"{}\";\n", name(a)));
    }
    for a in &labs {
        for i in 0..a.len() {
            let mut b = a.clone();
            b[i] += 1;
            if is_labeling(g, &b) {
                s.push_str(&format!("  \"{}\" -> \"{}\";\n", name(a), name(&b)));
            }
        }
    }
    s.push_str("}\n");
    s
}
