//! Exact arithmetic in the super algebra of Laurent polynomials in
//! half-integer powers of even generators with anticommuting odd generators.
//!
//! Even exponents are stored doubled so that `x^{1/2}` is the integer `1`.
//! Odd words are kept sorted by an explicit [`PositiveOrder`]; the sign of the
//! sorting permutation is absorbed into the coefficient.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Neg;

use num_traits::Num;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

/// Coefficient ring for [`SuperPoly`]. Division is only used by exact
/// quotient routines, so any field with exact arithmetic works.
pub trait Scalar:
    Num + Clone + PartialEq + fmt::Debug + fmt::Display + Neg<Output = Self> + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Num + Clone + PartialEq + fmt::Debug + fmt::Display + Neg<Output = T> + Send + Sync + 'static
{
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgError {
    #[error("negative or fractional power of a non-monomial binding for {0}")]
    NonMonomialInverse(String),
    #[error("division is not exact in the Laurent ring")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenKind {
    Even,
    Odd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeneratorId {
    pub kind: GenKind,
    pub index: u32,
}

impl GeneratorId {
    pub fn even(index: u32) -> Self {
        GeneratorId { kind: GenKind::Even, index }
    }
    pub fn odd(index: u32) -> Self {
        GeneratorId { kind: GenKind::Odd, index }
    }
}

/// Product of even generators; exponents stored as twice their value.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EvenMonomial {
    twice: BTreeMap<u32, i32>,
}

impl EvenMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn generator(id: u32) -> Self {
        Self::power(id, 2)
    }

    /// `x_id^{twice/2}`.
    pub fn power(id: u32, twice: i32) -> Self {
        let mut m = Self::default();
        if twice != 0 {
            m.twice.insert(id, twice);
        }
        m
    }

    pub fn from_twice<I: IntoIterator<Item = (u32, i32)>>(it: I) -> Self {
        let mut m = Self::default();
        for (g, t) in it {
            m.add_twice(g, t);
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.twice.is_empty()
    }

    pub fn twice_exponent(&self, id: u32) -> i32 {
        self.twice.get(&id).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, i32)> + '_ {
        self.twice.iter().map(|(g, t)| (*g, *t))
    }

    fn add_twice(&mut self, id: u32, t: i32) {
        let e = self.twice.entry(id).or_insert(0);
        *e += t;
        if *e == 0 {
            self.twice.remove(&id);
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = self.clone();
        for (g, t) in other.iter() {
            m.add_twice(g, t);
        }
        m
    }

    pub fn inv(&self) -> Self {
        Self { twice: self.twice.iter().map(|(g, t)| (*g, -t)).collect() }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    /// Raise to `num/2`: every exponent is multiplied by `num` and halved.
    /// Returns `None` when some resulting exponent would not be a half-integer.
    pub fn pow_half(&self, num: i32) -> Option<Self> {
        let mut out = Self::default();
        for (g, t) in self.iter() {
            let p = t * num;
            if p % 2 != 0 {
                return None;
            }
            out.add_twice(g, p / 2);
        }
        Some(out)
    }

    /// Lexicographic monomial order (generator ids ascending, larger exponent
    /// wins). Compatible with multiplication, unlike the derived `Ord`.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        let mut a = self.twice.iter().peekable();
        let mut b = other.twice.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some((_, ta)), None) => return ta.cmp(&&0),
                (None, Some((_, tb))) => return 0.cmp(*tb),
                (Some((ga, ta)), Some((gb, tb))) => match ga.cmp(gb) {
                    Ordering::Less => return ta.cmp(&&0),
                    Ordering::Greater => return 0.cmp(*tb),
                    Ordering::Equal => {
                        if ta != tb {
                            return ta.cmp(tb);
                        }
                        a.next();
                        b.next();
                    }
                },
            }
        }
    }

    fn divides(&self, other: &Self) -> bool {
        self.iter().all(|(g, t)| other.twice_exponent(g) >= t)
    }

    fn min_with(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for g in self.twice.keys().chain(other.twice.keys()) {
            let t = self.twice_exponent(*g).min(other.twice_exponent(*g));
            if t != 0 {
                out.twice.insert(*g, t);
            }
        }
        out
    }
}

/// Product of distinct odd generators, stored in positive order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OddWord(Vec<u32>);

impl OddWord {
    pub fn empty() -> Self {
        OddWord(Vec::new())
    }
    pub fn factors(&self) -> &[u32] {
        &self.0
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    pub fn contains(&self, g: u32) -> bool {
        self.0.contains(&g)
    }
}

/// Total order on odd generators. Lower rank means greater in the order, so
/// words are written greatest first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositiveOrder {
    rank: BTreeMap<u32, usize>,
}

impl PositiveOrder {
    /// `seq` lists generators from greatest to least.
    pub fn from_sequence<I: IntoIterator<Item = u32>>(seq: I) -> Self {
        PositiveOrder { rank: seq.into_iter().enumerate().map(|(r, g)| (g, r)).collect() }
    }

    /// Generators absent from the order sort after all ranked ones, by id.
    pub fn key(&self, g: u32) -> (usize, u32) {
        match self.rank.get(&g) {
            Some(r) => (*r, 0),
            None => (usize::MAX, g),
        }
    }

    pub fn rank(&self, g: u32) -> Option<usize> {
        self.rank.get(&g).copied()
    }

    /// Generators from greatest to least.
    pub fn sequence(&self) -> Vec<u32> {
        let mut v: Vec<(usize, u32)> = self.rank.iter().map(|(g, r)| (*r, *g)).collect();
        v.sort();
        v.into_iter().map(|(_, g)| g).collect()
    }

    pub fn greater(&self, a: u32, b: u32) -> bool {
        self.key(a) < self.key(b)
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }
}

/// Sort `factors` into positive order. `None` when a generator repeats;
/// otherwise the permutation sign and the sorted word.
pub fn normalize_odd(factors: &[u32], order: &PositiveOrder) -> Option<(i8, OddWord)> {
    let mut v = factors.to_vec();
    let mut sign = 1i8;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 {
            match order.key(v[j - 1]).cmp(&order.key(v[j])) {
                Ordering::Greater => {
                    v.swap(j - 1, j);
                    sign = -sign;
                    j -= 1;
                }
                Ordering::Equal => return None,
                Ordering::Less => break,
            }
        }
    }
    Some((sign, OddWord(v)))
}

/// The monomial `<x>`: same factors written in positive order, no sign.
pub fn ordered_word(factors: &[u32], order: &PositiveOrder) -> Option<OddWord> {
    normalize_odd(factors, order).map(|(_, w)| w)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperTerm<C> {
    pub coeff: C,
    pub even: EvenMonomial,
    pub odd: OddWord,
}

impl<C: Scalar> SuperTerm<C> {
    pub fn new(coeff: C, even: EvenMonomial, odd: OddWord) -> Self {
        SuperTerm { coeff, even, odd }
    }

    /// Unit-coefficient term whose odd factors are written in positive
    /// order; `None` if an odd generator repeats.
    pub fn ordered(even: EvenMonomial, odd: &[u32], order: &PositiveOrder) -> Option<Self> {
        ordered_word(odd, order).map(|w| SuperTerm { coeff: C::one(), even, odd: w })
    }

    pub fn to_poly(&self) -> SuperPoly<C> {
        SuperPoly::from_term(self.clone())
    }
}

/// Insert `k` at its ordered position, or remove it if present. No sign.
pub fn toggle<C: Scalar>(t: &SuperTerm<C>, k: u32, order: &PositiveOrder) -> SuperTerm<C> {
    let mut w = t.odd.0.clone();
    if let Some(p) = w.iter().position(|g| *g == k) {
        w.remove(p);
    } else {
        let key = order.key(k);
        let p = w.iter().position(|g| order.key(*g) > key).unwrap_or(w.len());
        w.insert(p, k);
    }
    SuperTerm { coeff: t.coeff.clone(), even: t.even.clone(), odd: OddWord(w) }
}

type Key = (EvenMonomial, OddWord);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperPoly<C> {
    terms: BTreeMap<Key, C>,
}

impl<C: Scalar> Default for SuperPoly<C> {
    fn default() -> Self {
        SuperPoly { terms: BTreeMap::new() }
    }
}

impl<C: Scalar> SuperPoly<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::from_term(SuperTerm::new(c, EvenMonomial::one(), OddWord::empty()))
    }

    pub fn even_gen(id: u32) -> Self {
        Self::monomial(EvenMonomial::generator(id))
    }

    pub fn monomial(m: EvenMonomial) -> Self {
        Self::from_term(SuperTerm::new(C::one(), m, OddWord::empty()))
    }

    pub fn odd_gen(id: u32) -> Self {
        Self::from_term(SuperTerm::new(C::one(), EvenMonomial::one(), OddWord(vec![id])))
    }

    pub fn from_term(t: SuperTerm<C>) -> Self {
        let mut p = Self::zero();
        p.add_term(t);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = SuperTerm<C>>>(it: I) -> Self {
        let mut p = Self::zero();
        for t in it {
            p.add_term(t);
        }
        p
    }

    pub fn add_term(&mut self, t: SuperTerm<C>) {
        if t.coeff.is_zero() {
            return;
        }
        let key = (t.even, t.odd);
        match self.terms.get_mut(&key) {
            Some(c) => {
                *c = c.clone() + t.coeff;
                if c.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, t.coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical `(even, odd)` key order.
    pub fn terms(&self) -> impl Iterator<Item = SuperTerm<C>> + '_ {
        self.terms.iter().map(|((e, o), c)| SuperTerm::new(c.clone(), e.clone(), o.clone()))
    }

    pub fn coefficient(&self, even: &EvenMonomial, odd: &OddWord) -> C {
        self.terms.get(&(even.clone(), odd.clone())).cloned().unwrap_or_else(C::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for t in other.terms() {
            p.add_term(t);
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-C::one())
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.terms().map(|t| SuperTerm::new(t.coeff * c.clone(), t.even, t.odd)))
    }

    pub fn mul_monomial(&self, m: &EvenMonomial) -> Self {
        Self::from_terms(self.terms().map(|t| SuperTerm::new(t.coeff, t.even.mul(m), t.odd)))
    }

    pub fn divide_by_monomial(&self, m: &EvenMonomial) -> Self {
        self.mul_monomial(&m.inv())
    }

    pub fn mul(&self, other: &Self, order: &PositiveOrder) -> Self {
        let mut out = Self::zero();
        for ((ea, oa), ca) in &self.terms {
            for ((eb, ob), cb) in &other.terms {
                let mut f = oa.0.clone();
                f.extend_from_slice(&ob.0);
                if let Some((s, w)) = normalize_odd(&f, order) {
                    let mut c = ca.clone() * cb.clone();
                    if s < 0 {
                        c = -c;
                    }
                    out.add_term(SuperTerm::new(c, ea.mul(eb), w));
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32, order: &PositiveOrder) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = out.mul(self, order);
        }
        out
    }

    /// Part with empty odd word.
    pub fn body(&self) -> Self {
        Self::from_terms(self.terms().filter(|t| t.odd.is_empty()))
    }

    /// Part whose odd words have length `k`.
    pub fn odd_degree_part(&self, k: usize) -> Self {
        Self::from_terms(self.terms().filter(|t| t.odd.len() == k))
    }

    pub fn odd_degrees(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.terms.keys().map(|(_, o)| o.len()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// `Some(m)` when the polynomial is exactly one unit-coefficient even monomial.
    pub fn as_monomial(&self) -> Option<EvenMonomial> {
        if self.terms.len() != 1 {
            return None;
        }
        let ((e, o), c) = self.terms.iter().next().unwrap();
        if o.is_empty() && c.is_one() {
            Some(e.clone())
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<C> {
        if self.is_zero() {
            return Some(C::zero());
        }
        if self.terms.len() == 1 {
            let ((e, o), c) = self.terms.iter().next().unwrap();
            if e.is_one() && o.is_empty() {
                return Some(c.clone());
            }
        }
        None
    }

    /// Apply `toggle` to every term.
    pub fn toggle_all(&self, k: u32, order: &PositiveOrder) -> Self {
        Self::from_terms(self.terms().map(|t| toggle(&t, k, order)))
    }

    /// Re-express every odd word in a different positive order.
    pub fn reorder(&self, order: &PositiveOrder) -> Self {
        let mut out = Self::zero();
        for t in self.terms() {
            if let Some((s, w)) = normalize_odd(t.odd.factors(), order) {
                let c = if s < 0 { -t.coeff } else { t.coeff };
                out.add_term(SuperTerm::new(c, t.even, w));
            }
        }
        out
    }

    /// `self^{twice/2}` for a binding value: integer powers of anything,
    /// fractional or negative powers only of a monomial.
    fn binding_power(&self, twice: i32, order: &PositiveOrder, name: &str) -> Result<Self, AlgError> {
        if twice >= 0 && twice % 2 == 0 {
            return Ok(self.pow((twice / 2) as u32, order));
        }
        if self.terms.len() == 1 {
            let ((e, o), c) = self.terms.iter().next().unwrap();
            if o.is_empty() {
                let m = e.pow_half(twice).ok_or_else(|| AlgError::NonMonomialInverse(name.into()))?;
                let coeff = if twice % 2 == 0 {
                    let mut k = C::one();
                    let base = if twice < 0 { C::one() / c.clone() } else { c.clone() };
                    for _ in 0..(twice.abs() / 2) {
                        k = k * base.clone();
                    }
                    k
                } else if c.is_one() {
                    C::one()
                } else {
                    return Err(AlgError::NonMonomialInverse(name.into()));
                };
                return Ok(Self::from_term(SuperTerm::new(coeff, m, OddWord::empty())));
            }
        }
        Err(AlgError::NonMonomialInverse(name.into()))
    }

    /// Simultaneous substitution of generators by polynomials.
    pub fn substitute(
        &self,
        bindings: &BTreeMap<GeneratorId, SuperPoly<C>>,
        order: &PositiveOrder,
    ) -> Result<Self, AlgError> {
        let mut out = Self::zero();
        for t in self.terms() {
            let mut acc = Self::constant(t.coeff.clone());
            let mut rest = EvenMonomial::one();
            for (g, tw) in t.even.iter() {
                match bindings.get(&GeneratorId::even(g)) {
                    Some(b) => {
                        let p = b.binding_power(tw, order, &format!("x{g}"))?;
                        acc = acc.mul(&p, order);
                    }
                    None => rest = rest.mul(&EvenMonomial::power(g, tw)),
                }
            }
            acc = acc.mul_monomial(&rest);
            for g in t.odd.factors() {
                let b = bindings.get(&GeneratorId::odd(*g)).cloned().unwrap_or_else(|| Self::odd_gen(*g));
                acc = acc.mul(&b, order);
            }
            out = out.add(&acc);
        }
        Ok(out)
    }

    /// Exact quotient `self / d` in the Laurent ring. `d` may carry
    /// nilpotent odd terms as long as its body is nonzero.
    pub fn div_exact(&self, d: &Self, order: &PositiveOrder) -> Result<Self, AlgError> {
        if let Some(m) = d.as_monomial() {
            return Ok(self.divide_by_monomial(&m));
        }
        let d0 = d.body();
        if d0.is_zero() {
            return Err(AlgError::DivisionByZero);
        }
        let n = d.sub(&d0);
        // 1/d = sum_k (-n)^k / d0^{k+1}, truncated where n^k vanishes.
        let mut powers = vec![Self::one()];
        loop {
            let next = powers.last().unwrap().mul(&n, order);
            if next.is_zero() {
                break;
            }
            powers.push(next);
        }
        let kmax = powers.len() - 1;
        let mut numer = Self::zero();
        for (k, nk) in powers.iter().enumerate() {
            let mut term = self.mul(nk, order).mul(&d0.pow((kmax - k) as u32, order), order);
            if k % 2 == 1 {
                term = term.neg();
            }
            numer = numer.add(&term);
        }
        let denom = d0.pow((kmax + 1) as u32, order);
        let mut out = Self::zero();
        let mut by_word: BTreeMap<OddWord, BTreeMap<EvenMonomial, C>> = BTreeMap::new();
        for ((e, o), c) in numer.terms {
            by_word.entry(o).or_default().insert(e, c);
        }
        let dpoly: BTreeMap<EvenMonomial, C> = denom.terms.into_iter().map(|((e, _), c)| (e, c)).collect();
        for (w, num) in by_word {
            for (e, c) in laurent_div(&num, &dpoly)? {
                out.add_term(SuperTerm::new(c, e, w.clone()));
            }
        }
        Ok(out)
    }

    pub fn to_text(&self, names: &dyn GenNames) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self.terms().map(|t| term_text(&t, names)).collect();
        parts.join(" + ")
    }

    pub fn to_json(&self, names: &dyn GenNames) -> Value {
        Value::Array(
            self.terms()
                .map(|t| {
                    let even: serde_json::Map<String, Value> = t
                        .even
                        .iter()
                        .map(|(g, tw)| (names.even_name(g), Value::String(half_text(tw))))
                        .collect();
                    let odd: Vec<Value> =
                        t.odd.factors().iter().map(|g| Value::String(names.odd_name(*g))).collect();
                    json!({"coeff": t.coeff.to_string(), "even": even, "odd": odd})
                })
                .collect(),
        )
    }
}

impl<C: Scalar> fmt::Display for SuperPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text(&DefaultNames))
    }
}

/// Exact division of Laurent polynomials in even generators.
fn laurent_div<C: Scalar>(
    num: &BTreeMap<EvenMonomial, C>,
    den: &BTreeMap<EvenMonomial, C>,
) -> Result<Vec<(EvenMonomial, C)>, AlgError> {
    if num.is_empty() {
        return Ok(Vec::new());
    }
    let shift = |p: &BTreeMap<EvenMonomial, C>| {
        let mut m = p.keys().next().unwrap().clone();
        for k in p.keys() {
            m = m.min_with(k);
        }
        m
    };
    let mn = shift(num);
    let md = shift(den);
    let mut n: Vec<(EvenMonomial, C)> = num.iter().map(|(e, c)| (e.div(&mn), c.clone())).collect();
    let d: Vec<(EvenMonomial, C)> = den.iter().map(|(e, c)| (e.div(&md), c.clone())).collect();
    let lead = |p: &[(EvenMonomial, C)]| {
        p.iter().enumerate().max_by(|a, b| a.1 .0.lex_cmp(&b.1 .0)).map(|(i, _)| i).unwrap()
    };
    let (ld_m, ld_c) = d[lead(&d)].clone();
    let mut q: Vec<(EvenMonomial, C)> = Vec::new();
    let mut acc: BTreeMap<EvenMonomial, C> = n.drain(..).collect();
    while !acc.is_empty() {
        let v: Vec<(EvenMonomial, C)> = acc.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        let (lm, lc) = v[lead(&v)].clone();
        if !ld_m.divides(&lm) {
            return Err(AlgError::NotDivisible);
        }
        let qm = lm.div(&ld_m);
        let qc = lc / ld_c.clone();
        for (e, c) in &d {
            let key = e.mul(&qm);
            let val = acc.get(&key).cloned().unwrap_or_else(C::zero) - c.clone() * qc.clone();
            if val.is_zero() {
                acc.remove(&key);
            } else {
                acc.insert(key, val);
            }
        }
        q.push((qm, qc));
    }
    let factor = mn.div(&md);
    Ok(q.into_iter().map(|(e, c)| (e.mul(&factor), c)).collect())
}

/// Display names for generators.
pub trait GenNames {
    fn even_name(&self, index: u32) -> String;
    fn odd_name(&self, index: u32) -> String;
}

/// `x{i}` and `th{i}`.
pub struct DefaultNames;

impl GenNames for DefaultNames {
    fn even_name(&self, index: u32) -> String {
        format!("x{index}")
    }
    fn odd_name(&self, index: u32) -> String {
        format!("th{index}")
    }
}

/// Explicit name tables, falling back to [`DefaultNames`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NameTable {
    pub even: BTreeMap<u32, String>,
    pub odd: BTreeMap<u32, String>,
}

impl NameTable {
    pub fn even_id(&self, name: &str) -> Option<u32> {
        self.even.iter().find(|(_, n)| n.as_str() == name).map(|(i, _)| *i)
    }
    pub fn odd_id(&self, name: &str) -> Option<u32> {
        self.odd.iter().find(|(_, n)| n.as_str() == name).map(|(i, _)| *i)
    }
}

impl GenNames for NameTable {
    fn even_name(&self, index: u32) -> String {
        self.even.get(&index).cloned().unwrap_or_else(|| DefaultNames.even_name(index))
    }
    fn odd_name(&self, index: u32) -> String {
        self.odd.get(&index).cloned().unwrap_or_else(|| DefaultNames.odd_name(index))
    }
}

fn half_text(twice: i32) -> String {
    if twice % 2 == 0 {
        format!("{}", twice / 2)
    } else {
        format!("{twice}/2")
    }
}

pub fn term_text<C: Scalar>(t: &SuperTerm<C>, names: &dyn GenNames) -> String {
    let mut s = t.coeff.to_string();
    for (g, tw) in t.even.iter() {
        s.push_str(" * ");
        s.push_str(&names.even_name(g));
        if tw != 2 {
            s.push_str(&format!("^{{{}}}", half_text(tw)));
        }
    }
    if !t.odd.is_empty() {
        let w: Vec<String> = t.odd.factors().iter().map(|g| names.odd_name(*g)).collect();
        s.push_str(" * ");
        s.push_str(&w.join("*"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    type P = SuperPoly<BigRational>;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn ord(seq: &[u32]) -> PositiveOrder {
        PositiveOrder::from_sequence(seq.iter().copied())
    }

    #[test]
    fn repeated_odd_factor_vanishes() {
        assert_eq!(normalize_odd(&[1, 1], &ord(&[1, 2])), None);
    }

    #[test]
    fn one_transposition() {
        let o = ord(&[1, 3, 4, 2]);
        assert_eq!(normalize_odd(&[2, 1], &o), Some((-1, OddWord(vec![1, 2]))));
    }

    #[test]
    fn three_factor_sign_matches_inversion_count() {
        let o = ord(&[1, 3, 4, 2]);
        let f = [4u32, 3, 1];
        let mut inv = 0;
        for i in 0..3 {
            for j in i + 1..3 {
                if o.key(f[i]) > o.key(f[j]) {
                    inv += 1;
                }
            }
        }
        let expected = if inv % 2 == 0 { 1 } else { -1 };
        assert_eq!(normalize_odd(&f, &o), Some((expected, OddWord(vec![1, 3, 4]))));
        assert_eq!(expected, -1);
    }

    #[test]
    fn anticommutation() {
        let o = ord(&[0, 1]);
        let s = P::odd_gen(0);
        let t = P::odd_gen(1);
        assert_eq!(t.mul(&s, &o), s.mul(&t, &o).neg());
    }

    #[test]
    fn half_exponents_add() {
        let h = P::monomial(EvenMonomial::power(0, 1));
        assert_eq!(h.mul(&h, &PositiveOrder::default()), P::even_gen(0));
    }

    #[test]
    fn expanded_product_drops_square() {
        // a=0,b=1,c=2,d=3; sigma=10, theta=11 with sigma > theta
        let o = ord(&[10, 11]);
        let bd = P::monomial(EvenMonomial::from_twice([(1, 2), (3, 2)]));
        let rac = P::monomial(EvenMonomial::from_twice([(0, 1), (2, 1)]));
        let lhs = bd.mul(&P::odd_gen(11), &o).add(&rac.mul(&P::odd_gen(10), &o));
        let got = lhs.mul(&rac.mul(&P::odd_gen(10), &o), &o);
        let expect = P::from_term(SuperTerm::new(
            q(-1),
            EvenMonomial::from_twice([(0, 1), (1, 2), (2, 1), (3, 2)]),
            OddWord(vec![10, 11]),
        ));
        assert_eq!(got, expect);
    }

    #[test]
    fn toggle_examples() {
        let o = ord(&[1, 3, 4, 2]);
        let t = SuperTerm::new(q(1), EvenMonomial::one(), OddWord(vec![1, 3, 2]));
        assert_eq!(toggle(&t, 4, &o).odd, OddWord(vec![1, 3, 4, 2]));
        let t = SuperTerm::new(q(1), EvenMonomial::one(), OddWord(vec![1, 4]));
        assert_eq!(toggle(&t, 4, &o).odd, OddWord(vec![1]));
        let t = SuperTerm::new(q(1), EvenMonomial::one(), OddWord::empty());
        assert_eq!(toggle(&t, 4, &o).odd, OddWord(vec![4]));
    }

    #[test]
    fn division_by_monomial() {
        let o = PositiveOrder::default();
        let ac = P::monomial(EvenMonomial::from_twice([(0, 2), (2, 2)]));
        let bd = P::monomial(EvenMonomial::from_twice([(1, 2), (3, 2)]));
        let e = EvenMonomial::generator(4);
        let got = ac.add(&bd).divide_by_monomial(&e);
        let expect = ac.mul(&P::monomial(e.inv()), &o).add(&bd.mul(&P::monomial(e.inv()), &o));
        assert_eq!(got, expect);
        assert_eq!(ac.divide_by_monomial(&EvenMonomial::one()), ac);
    }

    #[test]
    fn substitution_collapses_to_constant() {
        let x = P::even_gen(0);
        let p = x.add(&P::monomial(EvenMonomial::power(0, -2)));
        let mut b = BTreeMap::new();
        b.insert(GeneratorId::even(0), P::one());
        assert_eq!(p.substitute(&b, &PositiveOrder::default()).unwrap(), P::constant(q(2)));
    }

    #[test]
    fn substitution_rejects_inverse_of_sum() {
        let p = P::monomial(EvenMonomial::power(0, -2));
        let mut b = BTreeMap::new();
        b.insert(GeneratorId::even(0), P::even_gen(1).add(&P::one()));
        assert!(matches!(
            p.substitute(&b, &PositiveOrder::default()),
            Err(AlgError::NonMonomialInverse(_))
        ));
    }

    #[test]
    fn torus_specialization_of_ptolemy() {
        // (ac + bd + sqrt(abcd) s t)/e with c -> a, d -> b, e -> 1
        let o = ord(&[10, 11]);
        let m = |v: &[(u32, i32)]| P::monomial(EvenMonomial::from_twice(v.iter().copied()));
        let st = P::odd_gen(10).mul(&P::odd_gen(11), &o);
        let f = m(&[(0, 2), (2, 2)])
            .add(&m(&[(1, 2), (3, 2)]))
            .add(&m(&[(0, 1), (1, 1), (2, 1), (3, 1)]).mul(&st, &o))
            .divide_by_monomial(&EvenMonomial::generator(4));
        let mut b = BTreeMap::new();
        b.insert(GeneratorId::even(2), P::even_gen(0));
        b.insert(GeneratorId::even(3), P::even_gen(1));
        b.insert(GeneratorId::even(4), P::one());
        let got = f.substitute(&b, &o).unwrap();
        let expect = m(&[(0, 4)]).add(&m(&[(1, 4)])).add(&m(&[(0, 2), (1, 2)]).mul(&st, &o));
        assert_eq!(got, expect);
    }

    #[test]
    fn exact_division_by_sum_with_nilpotent() {
        let o = ord(&[10, 11]);
        let a = P::even_gen(0);
        let b = P::even_gen(1);
        let eps = P::odd_gen(10).mul(&P::odd_gen(11), &o);
        let d = a.add(&b).add(&eps.mul(&a, &o));
        let qt = a.mul(&a, &o).sub(&b).add(&eps);
        let n = qt.mul(&d, &o);
        assert_eq!(n.div_exact(&d, &o).unwrap(), qt);
        assert_eq!(a.div_exact(&a.add(&b), &o), Err(AlgError::NotDivisible));
    }

    #[test]
    fn text_form() {
        let t = SuperTerm::new(
            q(3),
            EvenMonomial::from_twice([(3, 1), (7, -2)]),
            OddWord(vec![1, 4]),
        );
        assert_eq!(P::from_term(t).to_string(), "3 * x3^{1/2} * x7^{-1} * th1*th4");
        assert_eq!(P::zero().to_string(), "0");
    }
}
