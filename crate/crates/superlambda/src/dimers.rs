//! Dimer and double dimer covers of snake graphs and the expansions built
//! from them.
//!
//! Edges are addressed by the canonical ids of [`Layout`], so a side glued
//! between two tiles has a single id. A double dimer cover stores the
//! multiplicity (1 or 2) of every used edge. Its multiplicity-1 edges form
//! disjoint cycles, each surrounding a contiguous run of tiles.
//!
//! The weight of a cover multiplies `label^{m/2}` over its edges and, for
//! each cycle in left-to-right order, the corner labels at the bottom-left
//! of its first tile and the top-right of its last tile. The odd part is
//! then written in positive order without a sign.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polygon::{self, Arc, PolygonError, Triangulation};
use crate::snake::{self, Layout, Side, SnakeError, SnakeGraph};
use crate::superalg::{ordered_word, EvenMonomial, OddWord, PositiveOrder, Scalar, SuperPoly, SuperTerm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DimerError {
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error(transparent)]
    Snake(#[from] SnakeError),
    #[error("unsupported shape: {0}")]
    ShapeUnsupported(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeRef {
    /// 1-based tile index.
    pub tile: usize,
    pub side: Side,
}

impl EdgeRef {
    pub fn resolve(&self, l: &Layout) -> usize {
        l.edge(self.tile - 1, self.side)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DimerCover {
    pub edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DoubleDimerCover {
    pub multiplicity: BTreeMap<usize, u8>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cycle {
    /// 1-based, inclusive.
    pub first_tile: usize,
    pub last_tile: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classes {
    pub in_d_r_double: bool,
    pub in_d_t_double: bool,
    pub in_d_tr: bool,
    pub in_d_r: bool,
    pub in_d_t: bool,
}

/// All perfect matchings of the snake graph, sorted.
pub fn enumerate_dimers(g: &SnakeGraph) -> Vec<DimerCover> {
    if g.is_empty() {
        return vec![DimerCover { edges: vec![] }];
    }
    let l = g.layout();
    let inc = l.incidence();
    let mut out = Vec::new();
    let mut used = vec![false; l.num_points()];
    let mut cur = Vec::new();
    match_rec(&l, &inc, &mut used, &mut cur, &mut out);
    for c in &mut out {
        c.edges.sort();
    }
    out.sort();
    out
}

fn match_rec(l: &Layout, inc: &[Vec<usize>], used: &mut [bool], cur: &mut Vec<usize>, out: &mut Vec<DimerCover>) {
    let Some(v) = used.iter().position(|u| !u) else {
        out.push(DimerCover { edges: cur.clone() });
        return;
    };
    for &e in &inc[v] {
        let (a, b) = l.endpoints(e);
        let w = if a == v { b } else { a };
        if used[w] {
            continue;
        }
        used[v] = true;
        used[w] = true;
        cur.push(e);
        match_rec(l, inc, used, cur, out);
        cur.pop();
        used[v] = false;
        used[w] = false;
    }
}

/// Unions of two perfect matchings, deduplicated and sorted.
pub fn enumerate_double_dimers(g: &SnakeGraph) -> Vec<DoubleDimerCover> {
    let singles = enumerate_dimers(g);
    let words = g.layout().num_edges().div_ceil(64).max(1);
    let bits: Vec<Vec<u64>> = singles
        .iter()
        .map(|m| {
            let mut b = vec![0u64; words];
            for e in &m.edges {
                b[e / 64] |= 1 << (e % 64);
            }
            b
        })
        .collect();
    let mut seen = HashSet::new();
    for (i, b1) in bits.iter().enumerate() {
        for b2 in &bits[i..] {
            let key: Vec<u64> = b1.iter().zip(b2).flat_map(|(x, y)| [x | y, x & y]).collect();
            seen.insert(key);
        }
    }
    let mut out: Vec<DoubleDimerCover> = seen
        .into_iter()
        .map(|key| {
            let mut multiplicity = BTreeMap::new();
            for (w, pair) in key.chunks(2).enumerate() {
                for k in 0..64 {
                    if pair[0] >> k & 1 == 1 {
                        multiplicity.insert(64 * w + k, 1 + (pair[1] >> k & 1) as u8);
                    }
                }
            }
            DoubleDimerCover { multiplicity }
        })
        .collect();
    out.sort();
    out
}

pub fn union(m1: &DimerCover, m2: &DimerCover) -> DoubleDimerCover {
    let mut multiplicity = BTreeMap::new();
    for e in m1.edges.iter().chain(&m2.edges) {
        *multiplicity.entry(*e).or_insert(0) += 1;
    }
    DoubleDimerCover { multiplicity }
}

impl DoubleDimerCover {
    pub fn get(&self, e: usize) -> u8 {
        self.multiplicity.get(&e).copied().unwrap_or(0)
    }

    /// Every vertex has total multiplicity two.
    pub fn is_valid(&self, l: &Layout) -> bool {
        let mut deg = vec![0u32; l.num_points()];
        for (e, m) in &self.multiplicity {
            let (a, b) = l.endpoints(*e);
            deg[a] += *m as u32;
            deg[b] += *m as u32;
        }
        deg.iter().all(|d| *d == 2)
    }

    /// Cycles of single edges, sorted by first tile.
    pub fn cycles(&self, l: &Layout) -> Vec<Cycle> {
        let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (e, m) in &self.multiplicity {
            if *m == 1 {
                let (a, b) = l.endpoints(*e);
                adj.entry(a).or_default().push(b);
                adj.entry(b).or_default().push(a);
            }
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in adj.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                if comp.insert(v) {
                    stack.extend(adj[&v].iter().copied());
                }
            }
            seen.extend(comp.iter().copied());
            let tiles = l.tiles_within(&comp);
            out.push(Cycle { first_tile: tiles[0] + 1, last_tile: tiles[tiles.len() - 1] + 1 });
        }
        out.sort();
        out
    }
}

pub fn classify(m: &DoubleDimerCover, g: &SnakeGraph) -> Classes {
    let l = g.layout();
    let last = g.len() - 1;
    let e = m.get(l.edge(last, Side::E));
    let n = m.get(l.edge(last, Side::N));
    let in_d_r_double = e == 2;
    let in_d_t_double = n == 2;
    let in_d_tr = e == 1 && n == 1;
    Classes {
        in_d_r_double,
        in_d_t_double,
        in_d_tr,
        in_d_r: in_d_r_double || in_d_tr,
        in_d_t: in_d_t_double || in_d_tr,
    }
}

/// Weight of a cover. The coefficient is zero when a corner label repeats.
pub fn weight<C: Scalar>(m: &DoubleDimerCover, g: &SnakeGraph, order: &PositiveOrder) -> SuperTerm<C> {
    let l = g.layout();
    weight_in(m, g, &l, order)
}

fn weight_in<C: Scalar>(m: &DoubleDimerCover, g: &SnakeGraph, l: &Layout, order: &PositiveOrder) -> SuperTerm<C> {
    let even = EvenMonomial::from_twice(m.multiplicity.iter().map(|(e, k)| (l.labels[*e], *k as i32)));
    let mut odd = Vec::new();
    for c in m.cycles(l) {
        odd.push(g.tiles[c.first_tile - 1].corner_bl);
        odd.push(g.tiles[c.last_tile - 1].corner_tr);
    }
    match ordered_word(&odd, order) {
        Some(w) => SuperTerm::new(C::one(), even, w),
        None => SuperTerm::new(C::zero(), even, OddWord::empty()),
    }
}

/// Sum of weights over covers accepted by `keep`.
pub fn weight_sum<C: Scalar>(
    g: &SnakeGraph,
    order: &PositiveOrder,
    keep: impl Fn(&DoubleDimerCover) -> bool,
) -> SuperPoly<C> {
    let l = g.layout();
    SuperPoly::from_terms(
        enumerate_double_dimers(g).iter().filter(|m| keep(m)).map(|m| weight_in::<C>(m, g, &l, order)),
    )
}

/// Restrict to the arc and build its snake graph together with the default
/// positive order.
pub fn setup(t: &Triangulation, g: Arc) -> Result<(Triangulation, Arc, SnakeGraph, PositiveOrder), DimerError> {
    let (r, rg) = polygon::restrict(t, g)?;
    let sg = snake::build(t, g)?;
    let order = polygon::default_order(&r, rg)?;
    Ok((r, rg, sg, order))
}

pub fn lambda_expansion<C: Scalar>(t: &Triangulation, g: Arc) -> Result<SuperPoly<C>, DimerError> {
    t.check_arc(g)?;
    if t.is_edge(g.edge()) {
        return Ok(SuperPoly::even_gen(t.edge_label(g.edge())));
    }
    let (_, _, sg, order) = setup(t, g)?;
    let sum: SuperPoly<C> = weight_sum(&sg, &order, |_| true);
    Ok(sum.divide_by_monomial(&sg.cross_monomial()))
}

pub use crate::polygon::MuShape;

pub fn mu_shape(t: &Triangulation, g: Arc) -> Result<MuShape, DimerError> {
    polygon::mu_shape(t, g)?.ok_or_else(|| DimerError::ShapeUnsupported("arc crosses no diagonal".into()))
}

/// `√(df)·φ`, where `φ` is the μ-invariant of the face `(i, j, k)` created
/// when the arc is flipped in, `d = ij` and `f` the arc itself.
///
/// With the top fan center on the left the sum runs over `D_t` for an odd
/// number of triangles and over `D_r` for an even number. The mirror
/// configuration swaps the two.
pub fn mu_expansion<C: Scalar>(t: &Triangulation, g: Arc) -> Result<SuperPoly<C>, DimerError> {
    let shape = mu_shape(t, g)?;
    let tiles = polygon::crossing_sequence(t, g)?.len();
    let odd_triangles = tiles % 2 == 0;
    starred_sum(t, g, odd_triangles == shape.left)
}

/// `(1/cross)·√(e/b)·Σ wt(M)*` over `D_t` (`over_t`) or `D_r`, where `*`
/// toggles the top-right corner label of the last tile.
pub fn starred_sum<C: Scalar>(t: &Triangulation, g: Arc, over_t: bool) -> Result<SuperPoly<C>, DimerError> {
    let shape = mu_shape(t, g)?;
    let (_, _, sg, order) = setup(t, g)?;
    let top = sg.last().corner_tr;
    let l = sg.layout();
    let mut sum = SuperPoly::<C>::zero();
    for m in enumerate_double_dimers(&sg) {
        let cl = classify(&m, &sg);
        if (over_t && cl.in_d_t) || (!over_t && cl.in_d_r) {
            let w: SuperTerm<C> = weight_in(&m, &sg, &l, &order);
            sum.add_term(crate::superalg::toggle(&w, top, &order));
        }
    }
    let scale = EvenMonomial::from_twice([(shape.e, 1), (shape.b, -1)]).div(&sg.cross_monomial());
    Ok(sum.mul_monomial(&scale))
}

/// Edge id helper used by tests and the CLI.
pub fn edge_of(g: &SnakeGraph, tile: usize, side: Side) -> usize {
    EdgeRef { tile, side }.resolve(&g.layout())
}

/// Outcome of one weight-sum identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    /// Tiles removed from the end, where relevant.
    pub k: usize,
    pub holds: bool,
}

fn class_sum<C: Scalar>(g: &SnakeGraph, order: &PositiveOrder, pick: impl Fn(&Classes) -> bool) -> SuperPoly<C> {
    weight_sum(g, order, |m| pick(&classify(m, g)))
}

fn last_letter_is_r(g: &SnakeGraph) -> Option<bool> {
    g.word.last().map(|l| *l == snake::Letter::R)
}

/// Removing the last tile: `Σ_{D(G⁻¹)} wt = (1/a)·Σ_{D_R(G)} wt` when the
/// word ends in `R` (`a` the right side), `D_T` and the top side for `U`.
pub fn identity_remove_last<C: Scalar>(g: &SnakeGraph, order: &PositiveOrder) -> Option<IdentityCheck> {
    let r = last_letter_is_r(g)?;
    let last = g.last();
    let (a, pick): (u32, fn(&Classes) -> bool) = if r { (last.e, |c| c.in_d_r_double) } else { (last.n, |c| c.in_d_t_double) };
    let lhs: SuperPoly<C> = weight_sum(&g.truncate(1), order, |_| true);
    let rhs = class_sum::<C>(g, order, pick).divide_by_monomial(&EvenMonomial::generator(a));
    Some(IdentityCheck { name: "remove last tile".into(), k: 1, holds: lhs == rhs })
}

/// Lengths `k ≥ 2` of terminal word segments of the form `RRURUR⋯` or
/// `UURURU⋯`: two equal letters followed by alternation.
pub fn terminal_staircases(g: &SnakeGraph) -> Vec<usize> {
    let w = &g.word;
    (2..=w.len())
        .filter(|&k| {
            let s = &w[w.len() - k..];
            s[0] == s[1] && s[1..].windows(2).all(|p| p[0] != p[1])
        })
        .collect()
}

/// Removing a terminal staircase of `k` tiles:
/// `Σ_{D(G⁻ᵏ)} wt = (1/(b·e₂⋯e_k))·Σ wt` over `D_T(G)` (word ends in `R`,
/// `b` the top side) or `D_R(G)` (ends in `U`, `b` the right side), with
/// `e_i` the diagonal of the `i`-th tile from the end.
pub fn identity_staircase<C: Scalar>(g: &SnakeGraph, order: &PositiveOrder) -> Vec<IdentityCheck> {
    let Some(r) = last_letter_is_r(g) else { return vec![] };
    let last = g.last();
    let (b, pick): (u32, fn(&Classes) -> bool) = if r { (last.n, |c| c.in_d_t_double) } else { (last.e, |c| c.in_d_r_double) };
    let sum_g = class_sum::<C>(g, order, pick);
    terminal_staircases(g)
        .into_iter()
        .map(|k| {
            let n = g.len();
            let factor = EvenMonomial::from_twice(
                std::iter::once((b, 2)).chain((n - k..n - 1).map(|i| (g.tiles[i].diagonal, 2))),
            );
            let lhs: SuperPoly<C> = weight_sum(&g.truncate(k), order, |_| true);
            IdentityCheck { name: "remove terminal staircase".into(), k, holds: lhs == sum_g.divide_by_monomial(&factor) }
        })
        .collect()
}

/// Whether the whole word alternates.
pub fn is_staircase(g: &SnakeGraph) -> bool {
    g.word.windows(2).all(|p| p[0] != p[1])
}

/// On a full staircase the class `D_T` (word `(RU)ⁿR` or `(UR)ⁿ`) or `D_R`
/// (word `(UR)ⁿU` or `(RU)ⁿ`) has exactly one cover, of weight
/// `b·c·e₂⋯e_k` with `c` the left or bottom side of the first tile.
pub fn identity_full_staircase<C: Scalar>(g: &SnakeGraph, order: &PositiveOrder) -> Vec<IdentityCheck> {
    if !is_staircase(g) {
        return vec![];
    }
    let n = g.len();
    let first = &g.tiles[0];
    let last = g.last();
    let word = g.word_string();
    let starts_r = word.starts_with('R');
    let len = word.len();
    let in_t = len == 0 || (starts_r == (len % 2 == 1));
    let in_r = len == 0 || (starts_r == (len % 2 == 0));
    let mut out = Vec::new();
    let covers = enumerate_double_dimers(g);
    let l = g.layout();
    for (name, applies, b, pick) in [
        ("full staircase D_T", in_t, last.n, (|c: &Classes| c.in_d_t_double) as fn(&Classes) -> bool),
        ("full staircase D_R", in_r, last.e, |c: &Classes| c.in_d_r_double),
    ] {
        if !applies {
            continue;
        }
        let hits: Vec<&DoubleDimerCover> = covers.iter().filter(|m| pick(&classify(m, g))).collect();
        let holds = hits.len() == 1 && {
            let w: SuperTerm<C> = weight_in(hits[0], g, &l, order);
            let tail = (0..n - 1).map(|i| (g.tiles[i].diagonal, 2));
            [first.w, first.s].iter().any(|c| {
                w.odd.is_empty()
                    && w.even == EvenMonomial::from_twice([(b, 2), (*c, 2)].into_iter().chain(tail.clone()))
            })
        };
        out.push(IdentityCheck { name: name.into(), k: n, holds });
    }
    out
}

/// Adding a cycle around the last tile:
/// `Σ_{D_r(G⁻¹)} wt = √(d/(abc))·Σ_{D_tr(G)} (wt*)†` for a word ending in
/// `R` (`d` the left side), `D_t(G⁻¹)` and the bottom side for `U`. Here `*`
/// toggles the top-right and `†` the bottom-left corner of the last tile.
pub fn identity_cycle_extension<C: Scalar>(g: &SnakeGraph, order: &PositiveOrder) -> Option<IdentityCheck> {
    let r = last_letter_is_r(g)?;
    let last = g.last();
    let (d, others, pick): (u32, [u32; 3], fn(&Classes) -> bool) = if r {
        (last.w, [last.n, last.e, last.s], |c| c.in_d_r)
    } else {
        (last.s, [last.n, last.e, last.w], |c| c.in_d_t)
    };
    let lhs = class_sum::<C>(&g.truncate(1), order, pick);
    let star = last.corner_tr;
    let dagger = last.corner_bl;
    let tr = class_sum::<C>(g, order, |c| c.in_d_tr).toggle_all(star, order).toggle_all(dagger, order);
    let scale = EvenMonomial::from_twice(std::iter::once((d, 1)).chain(others.iter().map(|x| (*x, -1))));
    Some(IdentityCheck { name: "cycle around last tile".into(), k: 1, holds: lhs == tr.mul_monomial(&scale) })
}

/// All four families of identities that apply to `g`.
pub fn recurrence_identities<C: Scalar>(g: &SnakeGraph, order: &PositiveOrder) -> Vec<IdentityCheck> {
    let mut out = Vec::new();
    out.extend(identity_remove_last::<C>(g, order));
    out.extend(identity_staircase::<C>(g, order));
    out.extend(identity_full_staircase::<C>(g, order));
    out.extend(identity_cycle_extension::<C>(g, order));
    out
}
