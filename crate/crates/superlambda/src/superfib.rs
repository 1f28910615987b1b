//! Super Fibonacci numbers: double dimer partition functions of a row of
//! tiles whose corners alternate between two odd generators.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::dimers::weight_sum;
use crate::oracle::fibonacci_flip_sequence;
use crate::snake::{Letter, SnakeGraph, Tile};
use crate::superalg::{ordered_word, GeneratorId, PositiveOrder, Scalar, SuperPoly};

/// Odd generator in the bottom-left corner of odd tiles.
pub const SIGMA: u32 = 1;
/// Odd generator in the top-right corner of odd tiles.
pub const THETA: u32 = 2;
/// Unit edge label, evaluated to `1`.
pub const UNIT: u32 = 0;
/// Weight of the first initial arc.
pub const A: u32 = 1;
/// Weight of the second initial arc.
pub const B: u32 = 2;

pub fn order() -> PositiveOrder {
    PositiveOrder::from_sequence([SIGMA, THETA])
}

/// `ε = σθ`.
pub fn epsilon<C: Scalar>() -> SuperPoly<C> {
    SuperPoly::odd_gen(SIGMA).mul(&SuperPoly::odd_gen(THETA), &order())
}

/// `u + v·ε` with `ε² = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperNumber<C> {
    pub even_part: C,
    pub eps_part: C,
}

impl<C: Scalar> SuperNumber<C> {
    pub fn new(even_part: C, eps_part: C) -> Self {
        Self { even_part, eps_part }
    }
    pub fn real(c: C) -> Self {
        Self::new(c, C::zero())
    }
    pub fn eps() -> Self {
        Self::new(C::zero(), C::one())
    }
    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.even_part.clone() + o.even_part.clone(), self.eps_part.clone() + o.eps_part.clone())
    }
    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.even_part.clone() - o.even_part.clone(), self.eps_part.clone() - o.eps_part.clone())
    }
    pub fn mul(&self, o: &Self) -> Self {
        Self::new(
            self.even_part.clone() * o.even_part.clone(),
            self.even_part.clone() * o.eps_part.clone() + self.eps_part.clone() * o.even_part.clone(),
        )
    }
    pub fn to_poly(&self) -> SuperPoly<C> {
        SuperPoly::constant(self.even_part.clone()).add(&epsilon().scale(&self.eps_part))
    }
    /// Reads `u + v·ε` off a polynomial in `σ, θ` only.
    pub fn from_poly(p: &SuperPoly<C>) -> Option<Self> {
        let eps = ordered_word(&[SIGMA, THETA], &order())?;
        let mut out = Self::real(C::zero());
        for t in p.terms() {
            if !t.even.is_one() {
                return None;
            }
            if t.odd.is_empty() {
                out.even_part = t.coeff;
            } else if t.odd == eps {
                out.eps_part = t.coeff;
            } else {
                return None;
            }
        }
        Some(out)
    }
}

impl<C: Scalar> fmt::Display for SuperNumber<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}ε", self.even_part, self.eps_part)
    }
}

fn tile(i: usize, diagonal: u32, horizontal: u32, left: u32, right: u32) -> Tile {
    let odd = i % 2 == 1;
    Tile {
        index: i,
        n: horizontal,
        s: horizontal,
        e: right,
        w: left,
        diagonal,
        corner_bl: if odd { SIGMA } else { THETA },
        corner_tr: if odd { THETA } else { SIGMA },
        orientation_flipped: !odd,
        vertices: None,
    }
}

fn row(m: usize, diagonal: impl Fn(usize) -> u32, horizontal: impl Fn(usize) -> u32) -> SnakeGraph {
    assert!(m >= 1, "G_m needs at least one tile");
    let tiles = (1..=m).map(|i| tile(i, diagonal(i), horizontal(i), UNIT, UNIT)).collect();
    SnakeGraph { tiles, word: vec![Letter::R; m - 1] }
}

/// `m` tiles in a row, every edge the unit, corners `σ,θ` then `θ,σ`
/// alternately.
pub fn gm(m: usize) -> SnakeGraph {
    row(m, |_| UNIT, |_| UNIT)
}

/// `G_m` with the annulus cover weights: tile `i` has diagonal `a` and
/// horizontal sides `b` for odd `i`, swapped for even `i`; vertical sides
/// are the unit.
pub fn gm_weighted(m: usize) -> SnakeGraph {
    let ab = |i: usize| if i % 2 == 1 { A } else { B };
    let ba = |i: usize| if i % 2 == 1 { B } else { A };
    row(m, ab, ba)
}

fn unit_binding<C: Scalar>() -> BTreeMap<GeneratorId, SuperPoly<C>> {
    BTreeMap::from([(GeneratorId::even(UNIT), SuperPoly::one())])
}

fn weighted_sum<C: Scalar>(g: &SnakeGraph) -> SuperPoly<C> {
    let o = order();
    let s = weight_sum::<C>(g, &o, |_| true).divide_by_monomial(&g.cross_monomial());
    s.substitute(&unit_binding(), &o).expect("unit binding is a constant")
}

/// Double dimer partition function of `G_m`, by enumeration.
pub fn partition_function(m: usize) -> SuperNumber<BigInt> {
    let p = weighted_sum::<BigInt>(&gm(m));
    SuperNumber::from_poly(&p).expect("G_m weights only involve σθ")
}

/// Partition function of the weighted `G_m` in `a = x1`, `b = x2`.
pub fn partition_function_symbolic<C: Scalar>(m: usize) -> SuperPoly<C> {
    weighted_sum(&gm_weighted(m))
}

fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Fibonacci numbers with `F₁ = F₂ = 1`, indexed from `F₀ = 0`.
pub fn fibonacci(upto: usize) -> Vec<BigInt> {
    let mut f = vec![BigInt::zero(), BigInt::one()];
    while f.len() <= upto {
        let k = f.len();
        f.push(&f[k - 1] + &f[k - 2]);
    }
    f.truncate(upto + 1);
    f
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedForms {
    pub m: usize,
    /// `Σ_j C(m+1-j, j)`.
    pub x: BigInt,
    /// Self-convolution of the Fibonacci numbers.
    pub g: BigInt,
    /// `Σ_j j·C(m+1-j, j)`.
    pub g_binomial: BigInt,
    /// `Σ_j g_{m-2j}`.
    pub y: BigInt,
    /// `Σ_k (m-2k)·C(m-k+1, m-2k+1)`.
    pub y_binomial: BigInt,
    pub consistent: bool,
}

fn g_conv(m: usize, f: &[BigInt]) -> BigInt {
    (1..=m).map(|k| &f[k] * &f[m - k + 1]).sum()
}

pub fn closed_forms(m: usize) -> ClosedForms {
    let f = fibonacci(m + 3);
    let mi = m as i64;
    let x: BigInt = (0..=(mi + 1) / 2).map(|j| binom(mi + 1 - j, j)).sum();
    let g = g_conv(m, &f);
    let g_binomial: BigInt = (1..=(mi + 1) / 2).map(|j| BigInt::from(j) * binom(mi + 1 - j, j)).sum();
    let y: BigInt = (0..=m / 2).map(|j| g_conv(m - 2 * j, &f)).sum();
    let y_binomial: BigInt = (0..=mi / 2).map(|k| BigInt::from(mi - 2 * k) * binom(mi - k + 1, mi - 2 * k + 1)).sum();
    let consistent = x == f[m + 2] && g == g_binomial && y == y_binomial;
    ClosedForms { m, x, g, g_binomial, y, y_binomial, consistent }
}

/// Sequences indexed from `0`; unused low indices hold zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibTables {
    pub upto: usize,
    pub f: Vec<BigInt>,
    pub x: Vec<BigInt>,
    pub y: Vec<BigInt>,
    pub g: Vec<BigInt>,
    pub p: Vec<SuperNumber<BigInt>>,
}

impl FibTables {
    pub fn new(upto: usize) -> Self {
        let f = fibonacci(upto + 3);
        let mut x = vec![BigInt::zero()];
        let mut y = vec![BigInt::zero()];
        let mut g = vec![BigInt::zero()];
        let mut p = vec![SuperNumber::real(BigInt::zero())];
        for m in 1..=upto {
            let c = closed_forms(m);
            p.push(SuperNumber::new(c.x.clone(), c.y.clone()));
            x.push(c.x);
            y.push(c.y);
            g.push(c.g);
        }
        Self { upto, f, x, y, g, p }
    }

    /// `z_n = p_{2n-5}` for `n ≥ 3`.
    pub fn z(&self, n: usize) -> Option<&SuperNumber<BigInt>> {
        (n >= 3).then(|| self.p.get(2 * n - 5)).flatten()
    }

    /// `w_n = p_{2n-4}` for `n ≥ 3`.
    pub fn w(&self, n: usize) -> Option<&SuperNumber<BigInt>> {
        (n >= 3).then(|| self.p.get(2 * n - 4)).flatten()
    }

    pub fn csv(&self) -> String {
        let mut s = String::from("m,x_m,y_m,g_m,p_even,p_eps\n");
        for m in 1..=self.upto {
            s.push_str(&format!(
                "{m},{},{},{},{},{}\n",
                self.x[m], self.y[m], self.g[m], self.p[m].even_part, self.p[m].eps_part
            ));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub index: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceReport {
    pub upto: usize,
    pub checks: Vec<Check>,
}

impl RecurrenceReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.holds).collect()
    }
}

/// Checks the linear, affine and quadratic recurrences, the `g`
/// recurrence and parity identity, and `z_n` against the flip sequence.
pub fn recurrence_checks(upto: usize) -> RecurrenceReport {
    let t = FibTables::new(upto);
    let mut checks = Vec::new();
    let mut push = |name: &str, index: usize, holds: bool| checks.push(Check { name: name.into(), index, holds });
    let eps = SuperNumber::<BigInt>::eps();
    let one_eps = SuperNumber::real(BigInt::one()).add(&eps);
    for m in 3..=upto {
        let mut rhs = one_eps.mul(&t.p[m - 1]).add(&t.p[m - 2]);
        if m % 2 == 0 {
            rhs = rhs.sub(&eps);
        }
        push("p_m = (1+ε)p_{m-1} + p_{m-2} (- ε if m even)", m, t.p[m] == rhs);
        let g_rhs = &t.g[m - 2] + &t.g[m - 1] + &t.x[m - 2];
        push("g_m = g_{m-2} + g_{m-1} + x_{m-2}", m, t.g[m] == g_rhs);
    }
    for n in 1..upto {
        let lhs = &t.x[n] + &t.y[n];
        let rhs = &t.g[n + 1] + BigInt::from(n % 2);
        push("x_n + y_n = g_{n+1} (+1 if n odd)", n, lhs == rhs);
    }
    let zmax = (upto + 5) / 2;
    let three_two = SuperNumber::new(BigInt::from(3), BigInt::from(2));
    for n in 5..=zmax {
        let (z, z1, z2) = (t.z(n).unwrap(), t.z(n - 1).unwrap(), t.z(n - 2).unwrap());
        push("z_n = (3+2ε)z_{n-1} - z_{n-2} - ε", n, *z == three_two.mul(z1).sub(z2).sub(&eps));
        let q = z1.mul(z1).add(&z1.mul(&eps)).add(&SuperNumber::real(BigInt::one()));
        push("z_n z_{n-2} = z_{n-1}² + z_{n-1}ε + 1", n, z.mul(z2) == q);
    }
    if zmax >= 3 {
        let one = SuperPoly::<BigInt>::one();
        let flips = fibonacci_flip_sequence(zmax, one.clone(), one);
        for n in 3..=zmax {
            let holds = flips.as_ref().is_ok_and(|s| s[n - 1] == t.z(n).unwrap().to_poly());
            push("z_n equals the flip sequence", n, holds);
        }
    }
    RecurrenceReport { upto, checks }
}

/// `a` and `b` as polynomials.
pub fn symbolic_seeds<C: Scalar>() -> (SuperPoly<C>, SuperPoly<C>) {
    (SuperPoly::even_gen(A), SuperPoly::even_gen(B))
}

/// Compares `z_n = p_{2n-5}` of the weighted row with the flip sequence
/// seeded by `a, b`, for `3 ≤ n ≤ nmax`.
pub fn symbolic_z_agreement<C: Scalar>(nmax: usize) -> Vec<(usize, bool)> {
    let (a, b) = symbolic_seeds::<C>();
    let Ok(z) = fibonacci_flip_sequence(nmax, a, b) else {
        return (3..=nmax).map(|n| (n, false)).collect();
    };
    (3..=nmax).map(|n| (n, partition_function_symbolic::<C>(2 * n - 5) == z[n - 1])).collect()
}

pub const CONJECTURE_BANNER: &str =
    "CONJECTURE: w_n = p_{2n-4} as super λ-lengths of peripheral arcs is unproven; values are exploratory.";
