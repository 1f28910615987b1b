//! Super λ-lengths by iterated super Ptolemy flips.
//!
//! Each face `t` with sides `p, q, r` stores `ν_t = √(pqr)·μ_t` instead of
//! its μ-invariant. In these variables the flip rules are Laurent:
//!
//! ```text
//! f   = (ac + bd)/e + ν_σ ν_θ / e²
//! ν_θ' = (d ν_θ + a ν_σ)/e
//! ν_σ' = (b ν_σ − c ν_θ)/e
//! ```
//!
//! for the diagonal `e` oriented `u -> v`, with `σ` the face to the right of
//! the arrow (apex `w_R`), `θ` the face to its left (apex `w_L`),
//! `a = u w_L`, `b = w_L v`, `c = v w_R`, `d = w_R u`, `θ'` the new face
//! `u w_L w_R` and `σ'` the new face `v w_L w_R`. The new diagonal points
//! `w_R -> w_L` and `b` reverses. Orientations are tracked on every edge.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::polygon::{self, norm, right_of, Arc, DiagOrientation, Edge, Face, PolygonError, Triangulation};
use crate::superalg::{AlgError, EvenMonomial, PositiveOrder, Scalar, SuperPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error("edge {0:?} is not an internal diagonal")]
    NotInternal(Edge),
    #[error("face {0:?} is not in the triangulation")]
    NotAFace(Face),
    #[error("flip sequence does not produce the arc")]
    ArcNotReached,
}

fn face_of(a: usize, b: usize, c: usize) -> Face {
    let mut f = [a, b, c];
    f.sort();
    f
}

fn apex(f: &Face, (p, q): Edge) -> usize {
    *f.iter().find(|v| **v != p && **v != q).unwrap()
}

#[derive(Clone, Debug)]
pub struct FlipState<C> {
    pub n: usize,
    pub diagonals: BTreeSet<Edge>,
    pub lambda: BTreeMap<Edge, SuperPoly<C>>,
    pub nu: BTreeMap<Face, SuperPoly<C>>,
    pub orientation: DiagOrientation,
    pub order: PositiveOrder,
}

impl<C: Scalar> FlipState<C> {
    /// Initial state: every edge is its own generator and every face `t`
    /// has `ν_t = √(pqr)·θ_t`. Edges not set in `o` point from the smaller
    /// to the larger vertex.
    pub fn new(t: &Triangulation, o: &DiagOrientation, order: PositiveOrder) -> Self {
        let mut orientation = DiagOrientation::default();
        let mut lambda = BTreeMap::new();
        for e in t.all_edges() {
            lambda.insert(e, SuperPoly::even_gen(t.edge_label(e)));
            match o.directed(e) {
                Some((tl, hd)) => orientation.set(tl, hd),
                None => orientation.set(e.0, e.1),
            }
        }
        let mut nu = BTreeMap::new();
        for f in t.faces() {
            let sides = [(f[0], f[1]), (f[0], f[2]), (f[1], f[2])];
            let m = EvenMonomial::from_twice(sides.iter().map(|s| (t.edge_label(*s), 1)));
            nu.insert(f, SuperPoly::odd_gen(t.face_label(f)).mul_monomial(&m));
        }
        FlipState { n: t.n(), diagonals: t.diagonals().collect(), lambda, nu, orientation, order }
    }

    pub fn lambda_of(&self, e: Edge) -> Option<&SuperPoly<C>> {
        self.lambda.get(&norm(e))
    }

    pub fn faces(&self) -> Vec<Face> {
        self.nu.keys().copied().collect()
    }

    fn faces_on(&self, e: Edge) -> Vec<Face> {
        let (p, q) = norm(e);
        self.nu.keys().copied().filter(|f| f.contains(&p) && f.contains(&q)).collect()
    }

    fn lam(&self, x: usize, y: usize) -> &SuperPoly<C> {
        &self.lambda[&norm((x, y))]
    }

    /// Flip the internal diagonal `e`.
    pub fn flip(&self, e: Edge) -> Result<Self, OracleError> {
        let e = norm(e);
        if !self.diagonals.contains(&e) {
            return Err(OracleError::NotInternal(e));
        }
        let (u, v) = self.orientation.directed(e).expect("all edges oriented");
        let fs = self.faces_on(e);
        let (mut wl, mut wr) = (apex(&fs[0], e), apex(&fs[1], e));
        if right_of(self.n, u, v, wl) {
            std::mem::swap(&mut wl, &mut wr);
        }
        let ord = &self.order;
        let a = self.lam(u, wl);
        let b = self.lam(wl, v);
        let c = self.lam(v, wr);
        let d = self.lam(wr, u);
        let ev = self.lam(u, v);
        let ns = &self.nu[&face_of(u, v, wr)];
        let nt = &self.nu[&face_of(u, v, wl)];
        let e2 = ev.mul(ev, ord);
        let top = a.mul(c, ord).add(&b.mul(d, ord)).mul(ev, ord).add(&ns.mul(nt, ord));
        let f = top.div_exact(&e2, ord)?;
        let nt2 = d.mul(nt, ord).add(&a.mul(ns, ord)).div_exact(ev, ord)?;
        let ns2 = b.mul(ns, ord).sub(&c.mul(nt, ord)).div_exact(ev, ord)?;

        let mut out = self.clone();
        out.diagonals.remove(&e);
        out.diagonals.insert(norm((wl, wr)));
        out.lambda.remove(&e);
        out.lambda.insert(norm((wl, wr)), f);
        out.nu.remove(&face_of(u, v, wr));
        out.nu.remove(&face_of(u, v, wl));
        out.nu.insert(face_of(u, wl, wr), nt2);
        out.nu.insert(face_of(v, wl, wr), ns2);
        out.orientation.head.remove(&e);
        out.orientation.set(wr, wl);
        out.orientation.reverse((wl, v));
        Ok(out)
    }

    /// Reverse the three sides of `t` and negate its ν.
    pub fn equivalence_move(&self, t: Face) -> Result<Self, OracleError> {
        let t = face_of(t[0], t[1], t[2]);
        let Some(v) = self.nu.get(&t) else {
            return Err(OracleError::NotAFace(t));
        };
        let mut out = self.clone();
        out.nu.insert(t, v.neg());
        for s in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            out.orientation.reverse(s);
        }
        Ok(out)
    }

    /// `√(pqr)·μ_t` for the face `t`.
    pub fn nu_of(&self, t: Face) -> Option<&SuperPoly<C>> {
        self.nu.get(&face_of(t[0], t[1], t[2]))
    }
}

/// Faces whose equivalence moves carry the internal-diagonal orientation of
/// `from` to `to`, found by searching subsets in order of size.
pub fn moves_to_orientation(t: &Triangulation, from: &DiagOrientation, to: &DiagOrientation) -> Option<Vec<Face>> {
    let faces = t.faces();
    let diags: Vec<Edge> = t.diagonals().filter(|d| to.head_of(*d).is_some()).collect();
    let wrong: Vec<bool> = diags.iter().map(|d| from.head_of(*d) != to.head_of(*d)).collect();
    let k = faces.len();
    let mut masks: Vec<u64> = (0..1u64 << k).collect();
    masks.sort_by_key(|m| m.count_ones());
    for mask in masks {
        let ok = diags.iter().zip(&wrong).all(|(d, w)| {
            let toggles = faces
                .iter()
                .enumerate()
                .filter(|(i, f)| mask >> i & 1 == 1 && f.contains(&d.0) && f.contains(&d.1))
                .count();
            (toggles % 2 == 1) == *w
        });
        if ok {
            return Some(faces.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, f)| *f).collect());
        }
    }
    None
}

/// Initial state for `(T, γ)`: default orientation on the crossed
/// diagonals, default positive order.
pub fn initial_state<C: Scalar>(t: &Triangulation, g: Arc) -> Result<FlipState<C>, OracleError> {
    let o = polygon::default_orientation(t, g)?;
    let order = polygon::default_order(t, g)?;
    Ok(FlipState::new(t, &o, order))
}

/// Flip the crossed diagonals in crossing order; return `λ(γ)` in positive
/// order.
pub fn lambda_via_flips<C: Scalar>(t: &Triangulation, g: Arc) -> Result<SuperPoly<C>, OracleError> {
    let seq = polygon::crossing(t, g)?.diagonals;
    let (s, _) = run_sequence::<C>(t, g, &seq)?;
    Ok(s.lambda_of(g.edge()).ok_or(OracleError::ArcNotReached)?.reorder(&s.order))
}

/// Apply flips in the given order from the initial state.
pub fn run_sequence<C: Scalar>(t: &Triangulation, g: Arc, seq: &[Edge]) -> Result<(FlipState<C>, Vec<FlipState<C>>), OracleError> {
    t.check_arc(g)?;
    let mut s = initial_state::<C>(t, g)?;
    let mut trace = vec![s.clone()];
    for e in seq {
        s = s.flip(*e)?;
        trace.push(s.clone());
    }
    Ok((s, trace))
}

/// Every flip order that only flips diagonals crossing `γ` and ends with
/// `γ` in the triangulation; at most `limit` orders.
pub fn valid_flip_orders(t: &Triangulation, g: Arc, limit: usize) -> Result<Vec<Vec<Edge>>, OracleError> {
    t.check_arc(g)?;
    let n = t.n();
    let mut out = Vec::new();
    let diags: BTreeSet<Edge> = t.diagonals().collect();
    fn rec(
        n: usize,
        g: Arc,
        diags: &BTreeSet<Edge>,
        faces: Vec<Face>,
        cur: &mut Vec<Edge>,
        out: &mut Vec<Vec<Edge>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        let crossing: Vec<Edge> = diags.iter().copied().filter(|d| polygon::chords_cross(n, *d, g.edge())).collect();
        if crossing.is_empty() {
            out.push(cur.clone());
            return;
        }
        for d in crossing {
            let fs: Vec<Face> = faces.iter().copied().filter(|f| f.contains(&d.0) && f.contains(&d.1)).collect();
            let w1 = apex(&fs[0], d);
            let w2 = apex(&fs[1], d);
            let nd = norm((w1, w2));
            if nd != norm(g.edge()) && polygon::chords_cross(n, nd, g.edge()) {
                continue;
            }
            let mut d2 = diags.clone();
            d2.remove(&d);
            d2.insert(nd);
            let mut f2: Vec<Face> = faces.iter().copied().filter(|f| !fs.contains(f)).collect();
            f2.push(face_of(d.0, w1, w2));
            f2.push(face_of(d.1, w1, w2));
            cur.push(d);
            rec(n, g, &d2, f2, cur, out, limit);
            cur.pop();
        }
    }
    rec(n, g, &diags, t.faces(), &mut Vec::new(), &mut out, limit);
    Ok(out)
}

/// `√(df)·φ` from the flips, where `φ` is the face `(i, j, k)` of
/// [`polygon::mu_shape`], rewritten in the sign gauge of the cleared dimer
/// formula (see [`polygon::mu_gauge`]).
pub fn cleared_mu_via_flips<C: Scalar>(t: &Triangulation, g: Arc) -> Result<SuperPoly<C>, OracleError> {
    let shape = polygon::mu_shape(t, g)?.ok_or(OracleError::ArcNotReached)?;
    let seq = polygon::crossing(t, g)?.diagonals;
    let (s, _) = run_sequence::<C>(t, g, &seq)?;
    let nu = s.nu_of(shape.face).ok_or(OracleError::NotAFace(shape.face))?;
    let raw = nu.mul_monomial(&EvenMonomial::power(shape.a, -1));
    let (negated, global) = polygon::mu_gauge(t, g)?;
    let mut out = SuperPoly::zero();
    for mut term in raw.terms() {
        let flips = term.odd.factors().iter().filter(|k| negated.contains(k)).count() + global as usize;
        if flips % 2 == 1 {
            term.coeff = -term.coeff;
        }
        out.add_term(term);
    }
    Ok(out.reorder(&s.order))
}

/// `Z_m` for `m = 1..=steps` from alternating flips in the specialization
/// `a = c`, `b = d`, `e = 1`: `Z_m = (Z_{m-1}² + Z_{m-1}·ε + 1)/Z_{m-2}` with
/// `ε = σθ` (odd generators 1 and 2, `σ > θ`).
pub fn fibonacci_flip_sequence<C: Scalar>(steps: usize, z1: SuperPoly<C>, z2: SuperPoly<C>) -> Result<Vec<SuperPoly<C>>, OracleError> {
    let order = PositiveOrder::from_sequence([1, 2]);
    let eps = SuperPoly::odd_gen(1).mul(&SuperPoly::odd_gen(2), &order);
    let mut z = vec![z1, z2];
    while z.len() < steps {
        let (p, q) = (&z[z.len() - 2], &z[z.len() - 1]);
        let num = q.mul(q, &order).add(&q.mul(&eps, &order)).add(&SuperPoly::one());
        z.push(num.div_exact(p, &order)?);
    }
    z.truncate(steps);
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    type P = SuperPoly<BigRational>;

    #[test]
    fn fibonacci_values() {
        let z = fibonacci_flip_sequence::<BigRational>(4, P::one(), P::one()).unwrap();
        let order = PositiveOrder::from_sequence([1, 2]);
        let eps = P::odd_gen(1).mul(&P::odd_gen(2), &order);
        let c = |k: i64| P::constant(BigRational::from_integer(k.into()));
        assert_eq!(z[2], c(2).add(&eps));
        assert_eq!(z[3], c(5).add(&eps.scale(&BigRational::from_integer(6.into()))));
    }

    #[test]
    fn flip_twice_restores_lambda_and_negates_a_face() {
        let t = Triangulation::new(4, &[(0, 2)]).unwrap();
        let s = initial_state::<BigRational>(&t, Arc::new(1, 3)).unwrap();
        let s1 = s.flip((0, 2)).unwrap();
        let s2 = s1.flip((1, 3)).unwrap();
        assert_eq!(s2.lambda_of((0, 2)), s.lambda_of((0, 2)));
        let negated = s.faces().into_iter().filter(|f| s2.nu[f] == s.nu[f].neg()).count();
        let same = s.faces().into_iter().filter(|f| s2.nu[f] == s.nu[f]).count();
        assert_eq!((negated, same), (1, 1));
    }
}
