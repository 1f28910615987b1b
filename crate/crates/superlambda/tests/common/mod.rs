#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use superlambda::polygon::{all_triangulations, internal_arcs, Arc, Edge, Triangulation};
use superlambda::snake::Layout;
use superlambda::superalg::{normalize_odd, EvenMonomial, PositiveOrder, SuperTerm};
use superlambda::{Poly, Rational};

pub fn q(n: i64) -> Rational {
    BigRational::from_integer(n.into())
}

/// `coeff · Π x^{twice/2} · θ_{odd[0]} θ_{odd[1]} ...`, sign-normalized to
/// positive order.
pub fn term(coeff: i64, twice: &[(u32, i32)], odd: &[u32], order: &PositiveOrder) -> Poly {
    let even = EvenMonomial::from_twice(twice.iter().copied());
    let (sign, word) = normalize_odd(odd, order).expect("distinct odd factors");
    SuperTerm::new(q(coeff * sign as i64), even, word).to_poly()
}

pub fn sum(ps: &[Poly]) -> Poly {
    ps.iter().fold(Poly::zero(), |a, p| a.add(p))
}

/// Every perfect matching of the layout graph by choosing a partner for the
/// smallest unmatched vertex.
pub fn brute_matchings(l: &Layout) -> BTreeSet<BTreeSet<usize>> {
    let inc = incidence(l);
    let mut out = BTreeSet::new();
    fn rec(l: &Layout, inc: &[Vec<usize>], used: &mut Vec<bool>, cur: &mut BTreeSet<usize>, out: &mut BTreeSet<BTreeSet<usize>>) {
        let Some(v) = used.iter().position(|u| !u) else {
            out.insert(cur.clone());
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
            cur.insert(e);
            rec(l, inc, used, cur, out);
            cur.remove(&e);
            used[v] = false;
            used[w] = false;
        }
    }
    rec(l, &inc, &mut vec![false; l.num_points()], &mut BTreeSet::new(), &mut out);
    out
}

fn incidence(l: &Layout) -> Vec<Vec<usize>> {
    let mut inc = vec![Vec::new(); l.num_points()];
    for e in 0..l.num_edges() {
        let (a, b) = l.endpoints(e);
        inc[a].push(e);
        inc[b].push(e);
    }
    inc
}

/// Every assignment of multiplicities in {0,1,2} to edges with degree two
/// at each vertex.
pub fn brute_double_dimers(l: &Layout) -> BTreeSet<BTreeMap<usize, u8>> {
    let inc = incidence(l);
    let m = l.num_edges();
    let mut out = BTreeSet::new();
    let mut deg = vec![0u8; l.num_points()];
    let mut remaining: Vec<usize> = inc.iter().map(|v| v.len()).collect();
    fn rec(
        e: usize,
        m: usize,
        l: &Layout,
        deg: &mut Vec<u8>,
        remaining: &mut Vec<usize>,
        cur: &mut BTreeMap<usize, u8>,
        out: &mut BTreeSet<BTreeMap<usize, u8>>,
    ) {
        if e == m {
            if deg.iter().all(|d| *d == 2) {
                out.insert(cur.clone());
            }
            return;
        }
        let (a, b) = l.endpoints(e);
        remaining[a] -= 1;
        remaining[b] -= 1;
        for k in 0..=2u8 {
            if deg[a] + k > 2 || deg[b] + k > 2 {
                break;
            }
            deg[a] += k;
            deg[b] += k;
            let fine = (remaining[a] > 0 || deg[a] == 2) && (remaining[b] > 0 || deg[b] == 2);
            if fine {
                if k > 0 {
                    cur.insert(e, k);
                }
                rec(e + 1, m, l, deg, remaining, cur, out);
                cur.remove(&e);
            }
            deg[a] -= k;
            deg[b] -= k;
        }
        remaining[a] += 1;
        remaining[b] += 1;
    }
    rec(0, m, l, &mut deg, &mut remaining, &mut BTreeMap::new(), &mut out);
    out
}

/// All (triangulation, arc) pairs with `lo..=hi` vertices, every
/// triangulation, every arc that is not a side.
pub fn universe(lo: usize, hi: usize) -> Vec<(Triangulation, Arc)> {
    let mut v = Vec::new();
    for n in lo..=hi {
        for d in all_triangulations(n) {
            let t = Triangulation::new(n, &d).unwrap();
            for g in internal_arcs(&t) {
                v.push((t.clone(), g));
            }
        }
    }
    v
}

/// The arcs of `universe` that cross at least one diagonal.
pub fn crossing_universe(lo: usize, hi: usize) -> Vec<(Triangulation, Arc)> {
    universe(lo, hi).into_iter().filter(|(t, g)| !t.is_edge(g.edge())).collect()
}

pub fn catalan(k: usize) -> usize {
    let mut c = vec![1usize; k + 1];
    for i in 1..=k {
        c[i] = (0..i).map(|j| c[j] * c[i - 1 - j]).sum();
    }
    c[k]
}

/// Chords crossing in the plane with vertices on the unit circle.
pub fn geometric_cross(n: usize, (p, q): Edge, (r, s): Edge) -> bool {
    let pt = |i: usize| {
        let a = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
        (a.cos(), a.sin())
    };
    let orient = |a: (f64, f64), b: (f64, f64), c: (f64, f64)| (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0);
    if [p, q].iter().any(|x| *x == r || *x == s) {
        return false;
    }
    let (a, b, c, d) = (pt(p), pt(q), pt(r), pt(s));
    (orient(a, b, c) > 0.0) != (orient(a, b, d) > 0.0) && (orient(c, d, a) > 0.0) != (orient(c, d, b) > 0.0)
}

/// Six-term expansion of the arc 1 -> 4 in the fan at 0 of the pentagon.
pub fn pentagon_expected(t: &Triangulation, order: &superlambda::superalg::PositiveOrder) -> Poly {
    let l = |e| t.edge_label(e);
    let (a, b, c, d, e, x1, x2) = (l((0, 1)), l((0, 4)), l((3, 4)), l((2, 3)), l((1, 2)), l((0, 2)), l((0, 3)));
    let (t1, t2, t3) = (t.face_label([0, 1, 2]), t.face_label([0, 2, 3]), t.face_label([0, 3, 4]));
    sum(&[
        term(1, &[(a, 2), (c, 2), (x2, -2)], &[], order),
        term(1, &[(a, 2), (b, 2), (d, 2), (x1, -2), (x2, -2)], &[], order),
        term(1, &[(b, 2), (e, 2), (x1, -2)], &[], order),
        term(1, &[(b, 2), (a, 1), (d, 1), (e, 1), (x1, -2), (x2, -1)], &[t1, t2], order),
        term(1, &[(a, 2), (b, 1), (c, 1), (d, 1), (x1, -1), (x2, -2)], &[t2, t3], order),
        term(1, &[(a, 1), (b, 1), (c, 1), (e, 1), (x1, -1), (x2, -1)], &[t1, t3], order),
    ])
}

/// A strip triangulation whose diagonals start at `(0, 2)` and then move
/// one endpoint at a time; `bits[i]` moves the lower end instead of the
/// upper one. The arc runs from 1 to the last free vertex.
pub fn strip(bits: &[bool]) -> (Triangulation, Arc) {
    let n = bits.len() + 4;
    let (mut lo, mut hi) = (n, 2usize);
    let mut d = vec![(0, 2)];
    for b in bits {
        if *b {
            lo -= 1;
        } else {
            hi += 1;
        }
        d.push(((lo % n).min(hi), (lo % n).max(hi)));
    }
    (Triangulation::new(n, &d).unwrap(), Arc::new(1, hi + 1))
}
