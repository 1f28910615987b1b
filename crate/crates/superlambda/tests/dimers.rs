mod common;

use std::collections::BTreeSet;

use common::{q, sum, term};
use proptest::prelude::*;
use superlambda::dimers::{self, DoubleDimerCover};
use superlambda::polygon::{self, Arc, Triangulation};
use superlambda::snake::{self, Side};
use superlambda::{Poly, Term};

/// Quadrilateral 0123 with diagonal e = 02 oriented 0 -> 2; a = 03, b = 23,
/// c = 12, d = 01; θ the face 023 above e and σ the face 012 below it.
struct Quad {
    t: Triangulation,
    a: u32,
    b: u32,
    c: u32,
    d: u32,
    e: u32,
    sigma: u32,
    theta: u32,
}

fn quad() -> Quad {
    let t = Triangulation::new(4, &[(0, 2)]).unwrap();
    Quad {
        a: t.edge_label((0, 3)),
        b: t.edge_label((2, 3)),
        c: t.edge_label((1, 2)),
        d: t.edge_label((0, 1)),
        e: t.edge_label((0, 2)),
        sigma: t.face_label([0, 1, 2]),
        theta: t.face_label([0, 2, 3]),
        t,
    }
}

#[test]
fn base_case_expansion() {
    let Quad { t, a, b, c, d, e, sigma, theta } = quad();
    let g = Arc::new(1, 3);
    let order = polygon::default_order(&t, g).unwrap();
    let expected = sum(&[
        term(1, &[(a, 2), (c, 2), (e, -2)], &[], &order),
        term(1, &[(b, 2), (d, 2), (e, -2)], &[], &order),
        term(1, &[(a, 1), (b, 1), (c, 1), (d, 1), (e, -2)], &[sigma, theta], &order),
    ]);
    assert_eq!(dimers::lambda_expansion::<superlambda::Rational>(&t, g).unwrap(), expected);
    let sg = snake::build(&t, g).unwrap();
    assert_eq!(dimers::enumerate_double_dimers(&sg).len(), 3);
}

#[test]
fn single_tile_cover_weights() {
    let Quad { t, a, b, c, d, sigma, theta, .. } = quad();
    let g = Arc::new(1, 3);
    let (_, _, sg, order) = dimers::setup(&t, g).unwrap();
    let l = sg.layout();
    let edge = |s: Side| l.edge(0, s);
    let tile = &sg.tiles[0];
    let covers = dimers::enumerate_double_dimers(&sg);
    let mut weights: Vec<Poly> = covers.iter().map(|m| dimers::weight::<superlambda::Rational>(m, &sg, &order).to_poly()).collect();
    weights.sort_by_key(|p| p.to_string());
    let horiz = DoubleDimerCover { multiplicity: [(edge(Side::N), 2), (edge(Side::S), 2)].into() };
    let vert = DoubleDimerCover { multiplicity: [(edge(Side::E), 2), (edge(Side::W), 2)].into() };
    let cycle = DoubleDimerCover { multiplicity: [Side::N, Side::S, Side::E, Side::W].iter().map(|s| (edge(*s), 1)).collect() };
    assert_eq!(BTreeSet::from_iter(covers.iter().cloned()), BTreeSet::from([horiz.clone(), vert.clone(), cycle.clone()]));
    let cls = |m: &DoubleDimerCover| dimers::classify(m, &sg);
    assert!(cls(&vert).in_d_r && !cls(&vert).in_d_t);
    assert!(cls(&cycle).in_d_tr && cls(&cycle).in_d_r && cls(&cycle).in_d_t);
    assert!(cls(&horiz).in_d_t && !cls(&horiz).in_d_r);
    let w: Term = dimers::weight(&cycle, &sg, &order);
    assert_eq!(w.to_poly(), term(1, &[(a, 1), (b, 1), (c, 1), (d, 1)], &[sigma, theta], &order));
    assert_eq!([tile.corner_bl, tile.corner_tr], [sigma, theta]);
    let pairs = [(tile.n, tile.s), (tile.e, tile.w)];
    let h: Term = dimers::weight(&horiz, &sg, &order);
    assert!(pairs.iter().any(|(x, y)| h.to_poly() == term(1, &[(*x, 2), (*y, 2)], &[], &order)));
    assert!([(a, c), (b, d)].iter().any(|(x, y)| h.to_poly() == term(1, &[(*x, 2), (*y, 2)], &[], &order)));
}

/// The pentagon with diagonals 02 and 03 and the arc 1 -> 4. Boundary
/// names follow the drawing: a = 01, b = 04, c = 34, d = 23, e = 12,
/// x1 = 02, x2 = 03, θ1 = 012, θ2 = 023, θ3 = 034.
#[test]
fn pentagon_six_terms() {
    let t = Triangulation::new(5, &[(0, 2), (0, 3)]).unwrap();
    let g = Arc::new(1, 4);
    let order = polygon::default_order(&t, g).unwrap();
    let got: Poly = dimers::lambda_expansion(&t, g).unwrap();
    assert_eq!(got.len(), 6);
    assert_eq!(got, common::pentagon_expected(&t, &order));
    assert!(got.terms().all(|x| x.coeff == q(1)));
}

#[test]
fn arc_in_triangulation_is_its_generator() {
    let t = Triangulation::new(6, &[(0, 2), (0, 3), (3, 5)]).unwrap();
    for e in [(0, 2), (0, 3), (3, 5)] {
        let p: Poly = dimers::lambda_expansion(&t, Arc::new(e.0, e.1)).unwrap();
        assert_eq!(p, Poly::even_gen(t.edge_label(e)));
    }
}

#[test]
fn matchings_agree_with_brute_force() {
    for (t, g) in common::crossing_universe(4, 8) {
        let sg = snake::build(&t, g).unwrap();
        let l = sg.layout();
        let lib: BTreeSet<BTreeSet<usize>> =
            dimers::enumerate_dimers(&sg).into_iter().map(|m| m.edges.into_iter().collect()).collect();
        assert_eq!(lib, common::brute_matchings(&l), "{}", sg.word_string());
    }
}

#[test]
fn double_dimers_agree_with_brute_force() {
    for (t, g) in common::crossing_universe(4, 7) {
        let sg = snake::build(&t, g).unwrap();
        let l = sg.layout();
        let lib: BTreeSet<_> = dimers::enumerate_double_dimers(&sg).into_iter().map(|m| m.multiplicity).collect();
        assert_eq!(lib, common::brute_double_dimers(&l), "{}", sg.word_string());
    }
}

#[test]
fn classes_partition_the_covers() {
    for (t, g) in common::crossing_universe(4, 9) {
        let sg = snake::build(&t, g).unwrap();
        for m in dimers::enumerate_double_dimers(&sg) {
            let c = dimers::classify(&m, &sg);
            let n = [c.in_d_r_double, c.in_d_t_double, c.in_d_tr].iter().filter(|x| **x).count();
            assert_eq!(n, 1);
        }
    }
}

#[test]
fn zigzag_of_three_tiles_has_four_matchings() {
    let found = common::crossing_universe(4, 7)
        .into_iter()
        .map(|(t, g)| snake::build(&t, g).unwrap())
        .find(|sg| sg.word_string() == "UR")
        .unwrap();
    assert_eq!(dimers::enumerate_dimers(&found).len(), common::brute_matchings(&found.layout()).len());
    assert_eq!(dimers::enumerate_dimers(&found).len(), 4);
}

#[test]
fn weight_identities_on_small_graphs() {
    let mut names = BTreeSet::new();
    for n in 4..=8 {
        for d in polygon::triangulations_up_to_symmetry(n) {
            let t = Triangulation::new(n, &d).unwrap();
            for g in polygon::internal_arcs(&t) {
                if t.is_edge(g.edge()) {
                    continue;
                }
                let (_, _, sg, order) = dimers::setup(&t, g).unwrap();
                for c in dimers::recurrence_identities::<superlambda::Rational>(&sg, &order) {
                    assert!(c.holds, "{} k={} on {}", c.name, c.k, sg.word_string());
                    names.insert(c.name);
                }
            }
        }
    }
    assert_eq!(names.len(), 5);
}

#[test]
fn full_staircase_class_is_a_singleton() {
    for (t, g) in common::crossing_universe(4, 8) {
        let sg = snake::build(&t, g).unwrap();
        if !dimers::is_staircase(&sg) {
            continue;
        }
        let covers = dimers::enumerate_double_dimers(&sg);
        let word = sg.word_string();
        let last_t = word.is_empty() || (word.starts_with('R') == (word.len() % 2 == 1));
        let count = covers
            .iter()
            .filter(|m| {
                let c = dimers::classify(m, &sg);
                if last_t {
                    c.in_d_t_double
                } else {
                    c.in_d_r_double
                }
            })
            .count();
        assert_eq!(count, 1, "{word}");
    }
}

#[test]
fn mu_formula_matches_flips_on_small_polygons() {
    for (t, g) in common::crossing_universe(4, 7) {
        for arc in [g, g.reversed()] {
            let f: Poly = dimers::mu_expansion(&t, arc).unwrap();
            let o: Poly = superlambda::oracle::cleared_mu_via_flips(&t, arc).unwrap();
            assert_eq!(f, o, "{:?} {arc:?}", t.diagonals().collect::<Vec<_>>());
        }
    }
}

#[test]
fn mu_base_case() {
    let Quad { t, a, b, c, d, e, sigma, theta } = quad();
    let g = Arc::new(1, 3);
    let order = polygon::default_order(&t, g).unwrap();
    let shape = dimers::mu_shape(&t, g).unwrap();
    assert_eq!(shape.vertices[..3], [1, 0, 3]);
    assert!(shape.left);
    let expected = sum(&[
        term(1, &[(b, 1), (d, 2), (e, -1)], &[theta], &order),
        term(1, &[(a, 1), (c, 1), (d, 1), (e, -1)], &[sigma], &order),
    ]);
    let got: Poly = dimers::mu_expansion(&t, g).unwrap();
    assert_eq!(got, expected);
}

#[test]
fn arcs_without_crossings_have_no_mu_shape() {
    let t = Triangulation::new(5, &[(0, 2), (0, 3)]).unwrap();
    assert!(matches!(dimers::mu_shape(&t, Arc::new(0, 2)), Err(dimers::DimerError::ShapeUnsupported(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reversing_the_arc_keeps_lambda(n in 4usize..9, pick in any::<prop::sample::Index>(), arc in any::<prop::sample::Index>()) {
        let all = polygon::all_triangulations(n);
        let t = Triangulation::new(n, &all[pick.index(all.len())]).unwrap();
        let arcs = polygon::internal_arcs(&t);
        let g = arcs[arc.index(arcs.len())];
        let p: Poly = dimers::lambda_expansion(&t, g).unwrap();
        let r: Poly = dimers::lambda_expansion(&t, g.reversed()).unwrap();
        prop_assert_eq!(p.body(), r.body());
        prop_assert_eq!(p.len(), r.len());
    }

    #[test]
    fn cover_weights_have_cross_denominator_and_unit_coefficients(n in 4usize..9, pick in any::<prop::sample::Index>(), arc in any::<prop::sample::Index>()) {
        let all = polygon::all_triangulations(n);
        let t = Triangulation::new(n, &all[pick.index(all.len())]).unwrap();
        let arcs: Vec<_> = polygon::internal_arcs(&t).into_iter().filter(|g| !t.is_edge(g.edge())).collect();
        prop_assume!(!arcs.is_empty());
        let g = arcs[arc.index(arcs.len())];
        let (_, _, sg, order) = dimers::setup(&t, g).unwrap();
        let covers = dimers::enumerate_double_dimers(&sg);
        prop_assert_eq!(covers.len(), common::brute_double_dimers(&sg.layout()).len());
        let l = sg.layout();
        for m in &covers {
            prop_assert!(m.is_valid(&l));
            let w: Term = dimers::weight(m, &sg, &order);
            prop_assert_eq!(w.coeff, q(1));
            prop_assert_eq!(w.odd.len(), 2 * m.cycles(&l).len());
        }
    }
}
