mod common;

use std::collections::BTreeMap;

use common::q;
use proptest::prelude::*;
use superlambda::superalg::{
    normalize_odd, toggle, EvenMonomial, GeneratorId, PositiveOrder, SuperPoly, SuperTerm,
};
use superlambda::{Poly, Rational};

fn ord(seq: &[u32]) -> PositiveOrder {
    PositiveOrder::from_sequence(seq.iter().copied())
}

fn odd(ids: &[u32], order: &PositiveOrder) -> Poly {
    ids.iter().fold(Poly::one(), |acc, g| acc.mul(&Poly::odd_gen(*g), order))
}

fn inversions(v: &[u32], order: &PositiveOrder) -> usize {
    let mut n = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if order.rank(v[i]) > order.rank(v[j]) {
                n += 1;
            }
        }
    }
    n
}

#[test]
fn normalization_examples() {
    let o = ord(&[1, 3, 4, 2]);
    assert!(normalize_odd(&[1, 1], &o).is_none());
    let (s, w) = normalize_odd(&[2, 1], &o).unwrap();
    assert_eq!((s, w.factors()), (-1, &[1, 2][..]));
    let (s, w) = normalize_odd(&[4, 3, 1], &o).unwrap();
    assert_eq!((s, w.factors()), (-1, &[1, 3, 4][..]));
}

#[test]
fn toggle_examples() {
    let o = ord(&[1, 3, 4, 2]);
    let t = |w: &[u32]| SuperTerm::<Rational>::ordered(EvenMonomial::one(), w, &o).unwrap();
    assert_eq!(toggle(&t(&[1, 3, 2]), 4, &o), t(&[1, 3, 4, 2]));
    assert_eq!(toggle(&t(&[1, 4]), 4, &o), t(&[1]));
    assert_eq!(toggle(&t(&[]), 4, &o), t(&[4]));
}

#[test]
fn product_with_vanishing_square() {
    let o = ord(&[1, 2]);
    let (sigma, theta) = (1, 2);
    let (a, b, c, d) = (1, 2, 3, 4);
    let bd_theta = Poly::monomial(EvenMonomial::from_twice([(b, 2), (d, 2)])).mul(&Poly::odd_gen(theta), &o);
    let ac_sigma = Poly::monomial(EvenMonomial::from_twice([(a, 1), (c, 1)])).mul(&Poly::odd_gen(sigma), &o);
    let lhs = bd_theta.add(&ac_sigma).mul(&ac_sigma, &o);
    let expected = Poly::monomial(EvenMonomial::from_twice([(a, 1), (b, 2), (c, 1), (d, 2)]))
        .mul(&odd(&[sigma, theta], &o), &o)
        .neg();
    assert_eq!(lhs, expected);
}

#[test]
fn half_powers_multiply_to_whole() {
    let o = ord(&[]);
    let h = Poly::monomial(EvenMonomial::power(1, 1));
    assert_eq!(h.mul(&h, &o), Poly::even_gen(1));
}

#[test]
fn torus_specialization_of_the_exchange_relation() {
    let o = ord(&[1, 2]);
    let (a, b, c, d, e) = (1u32, 2, 3, 4, 5);
    let f = Poly::monomial(EvenMonomial::from_twice([(a, 2), (c, 2)]))
        .add(&Poly::monomial(EvenMonomial::from_twice([(b, 2), (d, 2)])))
        .add(&Poly::monomial(EvenMonomial::from_twice([(a, 1), (b, 1), (c, 1), (d, 1)])).mul(&odd(&[1, 2], &o), &o))
        .divide_by_monomial(&EvenMonomial::generator(e));
    let bind: BTreeMap<_, _> = [
        (GeneratorId::even(c), Poly::even_gen(a)),
        (GeneratorId::even(d), Poly::even_gen(b)),
        (GeneratorId::even(e), Poly::one()),
    ]
    .into();
    let got = f.substitute(&bind, &o).unwrap();
    let expected = Poly::monomial(EvenMonomial::from_twice([(a, 4)]))
        .add(&Poly::monomial(EvenMonomial::from_twice([(b, 4)])))
        .add(&Poly::monomial(EvenMonomial::from_twice([(a, 2), (b, 2)])).mul(&odd(&[1, 2], &o), &o));
    assert_eq!(got, expected);
}

#[test]
fn text_form_is_canonical() {
    let o = ord(&[1, 2]);
    let p = Poly::even_gen(7)
        .mul(&odd(&[1, 2], &o), &o)
        .add(&Poly::monomial(EvenMonomial::from_twice([(3, 1), (7, -2)])));
    assert_eq!(p.to_string(), "1 * x3^{1/2} * x7^{-1} + 1 * x7 * th1*th2");
    assert_eq!(Poly::zero().to_string(), "0");
}

#[test]
fn generic_over_integer_coefficients() {
    let o = ord(&[1, 2]);
    let p = SuperPoly::<i64>::even_gen(1).add(&SuperPoly::odd_gen(1));
    let sq = p.mul(&p, &o);
    let expected = SuperPoly::<i64>::monomial(EvenMonomial::from_twice([(1, 4)]))
        .add(&SuperPoly::even_gen(1).mul(&SuperPoly::odd_gen(1), &o).scale(&2));
    assert_eq!(sq, expected);
}

fn arb_term() -> impl Strategy<Value = Poly> {
    (
        -3i64..=3,
        prop::collection::vec((1u32..=3, -3i32..=3), 0..3),
        prop::collection::btree_set(1u32..=4, 0..3),
    )
        .prop_map(|(c, ev, od)| {
            let o = ord(&[1, 2, 3, 4]);
            let w: Vec<u32> = od.into_iter().collect();
            SuperTerm::new(q(c), EvenMonomial::from_twice(ev), normalize_odd(&w, &o).unwrap().1).to_poly()
        })
}

fn arb_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(arb_term(), 0..4).prop_map(|ts| ts.iter().fold(Poly::zero(), |a, t| a.add(t)))
}

fn arb_order() -> impl Strategy<Value = PositiveOrder> {
    Just(vec![1u32, 2, 3, 4]).prop_shuffle().prop_map(PositiveOrder::from_sequence)
}

proptest! {
    #[test]
    fn sign_is_inversion_parity(v in prop::collection::btree_set(1u32..=6, 0..6).prop_map(|s| s.into_iter().collect::<Vec<_>>()).prop_shuffle(),
                                order in Just(vec![1u32, 2, 3, 4, 5, 6]).prop_shuffle()) {
        let o = PositiveOrder::from_sequence(order);
        let (s, w) = normalize_odd(&v, &o).unwrap();
        prop_assert_eq!(s == -1, inversions(&v, &o) % 2 == 1);
        prop_assert_eq!(inversions(w.factors(), &o), 0);
    }

    #[test]
    fn multiplication_is_associative(a in arb_poly(), b in arb_poly(), c in arb_poly(), o in arb_order()) {
        let (a, b, c) = (a.reorder(&o), b.reorder(&o), c.reorder(&o));
        prop_assert_eq!(a.mul(&b, &o).mul(&c, &o), a.mul(&b.mul(&c, &o), &o));
    }

    #[test]
    fn multiplication_distributes(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        let o = ord(&[1, 2, 3, 4]);
        prop_assert_eq!(a.mul(&b.add(&c), &o), a.mul(&b, &o).add(&a.mul(&c, &o)));
    }

    #[test]
    fn odd_generators_anticommute_and_square_to_zero(i in 1u32..=4, j in 1u32..=4, o in arb_order()) {
        let (x, y) = (Poly::odd_gen(i), Poly::odd_gen(j));
        prop_assert!(x.mul(&x, &o).is_zero());
        prop_assert_eq!(x.mul(&y, &o), y.mul(&x, &o).neg());
    }

    #[test]
    fn reorder_changes_representation_not_value(a in arb_poly(), b in arb_poly(), o1 in arb_order(), o2 in arb_order()) {
        let p1 = a.reorder(&o1).mul(&b.reorder(&o1), &o1);
        let p2 = a.reorder(&o2).mul(&b.reorder(&o2), &o2);
        prop_assert_eq!(p1.reorder(&o2), p2.clone());
        prop_assert_eq!(p2.reorder(&o1), p1);
    }

    #[test]
    fn toggle_is_an_involution(a in arb_poly(), k in 1u32..=4, o in arb_order()) {
        let a = a.reorder(&o);
        prop_assert_eq!(a.toggle_all(k, &o).toggle_all(k, &o), a);
    }

    #[test]
    fn exact_division_inverts_multiplication(a in arb_poly(), body in 1i64..=3, nil in arb_term(), o in arb_order()) {
        let a = a.reorder(&o);
        let d = Poly::even_gen(1).add(&Poly::constant(q(body))).add(&nil.odd_degree_part(2).reorder(&o));
        let prod = a.mul(&d, &o);
        prop_assert_eq!(prod.div_exact(&d, &o).unwrap(), a);
    }

    #[test]
    fn monomial_division_is_multiplication_by_inverse(a in arb_poly(), m in prop::collection::vec((1u32..=3, -3i32..=3), 0..3)) {
        let m = EvenMonomial::from_twice(m);
        prop_assert_eq!(a.divide_by_monomial(&m), a.mul_monomial(&m.inv()));
        prop_assert_eq!(a.divide_by_monomial(&m).mul_monomial(&m), a);
    }

    #[test]
    fn text_is_deterministic(a in arb_poly()) {
        let b = a.terms().collect::<Vec<_>>().into_iter().rev().fold(Poly::zero(), |acc, t| acc.add(&t.to_poly()));
        prop_assert_eq!(a.to_string(), b.to_string());
    }
}

