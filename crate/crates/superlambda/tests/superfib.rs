mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use superlambda::superfib::{self, FibTables, SuperNumber, A, B};
use superlambda::{oracle, Poly, Rational};

fn sn(a: i64, b: i64) -> SuperNumber<BigInt> {
    SuperNumber::new(a.into(), b.into())
}

fn find(p: &mut [usize], x: usize) -> usize {
    if p[x] != x {
        let r = find(p, p[x]);
        p[x] = r;
    }
    p[x]
}

/// `(covers without cycles, covers with exactly one cycle around an odd
/// number of tiles)` of `G_m`.
fn brute_counts(m: usize) -> (usize, usize) {
    let l = superfib::gm(m).layout();
    let (mut x, mut y) = (0, 0);
    for cover in common::brute_double_dimers(&l) {
        let mut parent: Vec<usize> = (0..l.num_points()).collect();
        let mut touched = std::collections::BTreeSet::new();
        let singles = cover.values().filter(|k| **k == 1).count();
        for (e, k) in &cover {
            if *k == 1 {
                let (a, b) = l.endpoints(*e);
                touched.insert(a);
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
        let roots: std::collections::BTreeSet<_> = touched.iter().map(|v| find(&mut parent, *v)).collect();
        match roots.len() {
            0 => x += 1,
            1 if (singles - 2) / 2 % 2 == 1 => y += 1,
            _ => {}
        }
    }
    (x, y)
}

fn fib(k: usize) -> BigInt {
    superfib::fibonacci(k)[k].clone()
}

#[test]
fn first_partition_functions() {
    assert_eq!(superfib::partition_function(1), sn(2, 1));
    assert_eq!(superfib::partition_function(3), sn(5, 6));
    let t = FibTables::new(3);
    assert_eq!((t.g[2].clone(), t.g[3].clone(), t.y[3].clone()), (2.into(), 5.into(), 6.into()));
}

#[test]
fn enumeration_matches_independent_cycle_counts() {
    for m in 1..=7 {
        let (x, y) = brute_counts(m);
        assert_eq!(superfib::partition_function(m), sn(x as i64, y as i64), "m = {m}");
    }
}

#[test]
fn partition_functions_match_closed_forms() {
    let t = FibTables::new(14);
    for m in 1..=14 {
        let p = superfib::partition_function(m);
        assert_eq!(p.even_part, fib(m + 2));
        assert_eq!(p, t.p[m]);
        let c = superfib::closed_forms(m);
        assert!(c.consistent);
        let g: BigInt = (1..=m).map(|k| fib(k) * fib(m - k + 1)).sum();
        assert_eq!(c.g, g);
    }
}

#[test]
fn recurrences_hold() {
    let r = superfib::recurrence_checks(25);
    assert!(r.all_hold(), "{:?}", r.failures());
    let names: std::collections::BTreeSet<_> = r.checks.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(names.len(), 6);
}

#[test]
fn tables_index_z_and_w() {
    let t = FibTables::new(9);
    assert_eq!(t.z(3), Some(&sn(2, 1)));
    assert_eq!(t.z(4), Some(&sn(5, 6)));
    assert_eq!(t.w(3), Some(&t.p[2]));
    assert_eq!(t.z(2), None);
    assert_eq!(t.z(8), None);
    let csv = t.csv();
    assert_eq!(csv.lines().next(), Some("m,x_m,y_m,g_m,p_even,p_eps"));
    assert_eq!(csv.lines().count(), 10);
}

#[test]
fn symbolic_partition_functions() {
    let o = superfib::order();
    let t = |c: i64, ea: i32, eb: i32, odd: bool| common::term(c, &[(A, 2 * ea), (B, 2 * eb)], if odd { &[1, 2] } else { &[] }, &o);
    let p1 = common::sum(&[t(1, -1, 2, false), t(1, -1, 0, false), t(1, -1, 1, true)]);
    let p2 = common::sum(&[t(1, -1, 1, false), t(1, 1, -1, false), t(1, -1, -1, false), t(1, -1, 0, true), t(1, 0, -1, true)]);
    let p3 = common::sum(&[
        t(1, -2, 3, false),
        t(2, -2, 1, false),
        t(1, 0, -1, false),
        t(1, -2, -1, false),
        t(2, -2, 2, true),
        t(2, -2, 0, true),
        t(1, -1, 1, true),
        t(1, -1, -1, true),
    ]);
    assert_eq!(superfib::partition_function_symbolic::<Rational>(1), p1);
    assert_eq!(superfib::partition_function_symbolic::<Rational>(2), p2);
    assert_eq!(superfib::partition_function_symbolic::<Rational>(3), p3);
    assert!(superfib::symbolic_z_agreement::<Rational>(9).iter().all(|(_, ok)| *ok));
}

#[test]
fn numeric_flips_reproduce_z() {
    let t = FibTables::new(25);
    let z = oracle::fibonacci_flip_sequence::<Rational>(15, Poly::one(), Poly::one()).unwrap();
    for n in 3..=15 {
        let got = SuperNumber::<Rational>::from_poly(&z[n - 1]).unwrap();
        let want = t.z(n).unwrap();
        assert_eq!(got, SuperNumber::new(want.even_part.clone().into(), want.eps_part.clone().into()));
    }
}

proptest! {
    #[test]
    fn super_numbers_form_a_ring(a in -50i64..50, b in -50i64..50, c in -50i64..50, d in -50i64..50, e in -50i64..50, f in -50i64..50) {
        let (x, y, z) = (sn(a, b), sn(c, d), sn(e, f));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        let eps = SuperNumber::<BigInt>::eps();
        prop_assert_eq!(eps.mul(&eps), sn(0, 0));
        prop_assert_eq!(SuperNumber::from_poly(&x.to_poly()), Some(x.clone()));
    }
}
