//! Exact coefficient rings and the Frobenius algebra that drives merges and splits.
//!
//! Four coefficient kinds are supported: the integers (`i64`), the field with two
//! elements ([`F2`]), and bivariate polynomials in `a0`, `a1` over either of them
//! ([`Poly`]). The Frobenius structure on the circle value `A` is either Khovanov's
//! `R[x]/(x^2)` or the two-parameter deformation `R[x]/((x - a0)(x - a1))`.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A label on a circle component: the unit `1` or the generator `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    One,
    X,
}

impl Label {
    /// Quantum degree: `+1` for `1`, `-1` for `x`.
    pub fn q_degree(self) -> i64 {
        match self {
            Label::One => 1,
            Label::X => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Label::One => '1',
            Label::X => 'x',
        }
    }

    pub fn both() -> [Label; 2] {
        [Label::One, Label::X]
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "1" => Ok(Label::One),
            "x" | "X" => Ok(Label::X),
            _ => Err(Error::Json(format!("unknown label {s:?}"))),
        }
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            Label::One => "1",
            Label::X => "x",
        })
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Runtime tag for the coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    Integers,
    GF2,
    PolyGF2,
    PolyZ,
}

impl RingKind {
    pub fn characteristic(self) -> u32 {
        match self {
            RingKind::GF2 | RingKind::PolyGF2 => 2,
            RingKind::Integers | RingKind::PolyZ => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RingKind::Integers => "Z",
            RingKind::GF2 => "GF2",
            RingKind::PolyGF2 => "PolyGF2",
            RingKind::PolyZ => "PolyZ",
        }
    }

    pub fn is_polynomial(self) -> bool {
        matches!(self, RingKind::PolyGF2 | RingKind::PolyZ)
    }
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Z" | "Integers" => Ok(RingKind::Integers),
            "GF2" | "F2" => Ok(RingKind::GF2),
            "PolyGF2" => Ok(RingKind::PolyGF2),
            "PolyZ" => Ok(RingKind::PolyZ),
            _ => Err(Error::UnsupportedRing(s.to_string())),
        }
    }
}

impl Serialize for RingKind {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for RingKind {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An exact commutative coefficient ring.
pub trait Coefficient:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Eq
    + Hash
    + Ord
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Serialize
    + DeserializeOwned
{
    const KIND: RingKind;

    /// Image of an integer under the unique ring map from `Z`.
    fn from_int(k: i64) -> Self;

    fn characteristic() -> u32 {
        Self::KIND.characteristic()
    }
}

/// Reduction modulo 2 into the matching characteristic-2 ring.
pub trait ModTwo: Coefficient {
    type Reduced: Coefficient;

    fn mod_two(&self) -> Self::Reduced;

    /// True when every integer coefficient is even.
    fn is_even(&self) -> bool {
        self.mod_two().is_zero()
    }
}

impl Coefficient for i64 {
    const KIND: RingKind = RingKind::Integers;

    fn from_int(k: i64) -> Self {
        k
    }
}

impl ModTwo for i64 {
    type Reduced = F2;

    fn mod_two(&self) -> F2 {
        F2(self.rem_euclid(2) == 1)
    }
}

/// The field with two elements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2(pub bool);

impl F2 {
    pub const ZERO: F2 = F2(false);
    pub const ONE: F2 = F2(true);
}

impl fmt::Display for F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.0))
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for F2 {
    type Output = F2;
    fn add(self, rhs: F2) -> F2 {
        F2(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Sub for F2 {
    type Output = F2;
    fn sub(self, rhs: F2) -> F2 {
        F2(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for F2 {
    type Output = F2;
    fn mul(self, rhs: F2) -> F2 {
        F2(self.0 & rhs.0)
    }
}

impl Neg for F2 {
    type Output = F2;
    fn neg(self) -> F2 {
        self
    }
}

impl Zero for F2 {
    fn zero() -> Self {
        F2::ZERO
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
}

impl One for F2 {
    fn one() -> Self {
        F2::ONE
    }
}

impl Serialize for F2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(u8::from(self.0))
    }
}

impl<'de> Deserialize<'de> for F2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        Ok(F2(v.rem_euclid(2) == 1))
    }
}

impl Coefficient for F2 {
    const KIND: RingKind = RingKind::GF2;

    fn from_int(k: i64) -> Self {
        F2(k.rem_euclid(2) == 1)
    }
}

/// Exponents of `a0` and `a1` in a monomial.
pub type Exponents = (u32, u32);

/// A polynomial in the deformation parameters `a0`, `a1` with coefficients in `C`.
///
/// Monomials are kept sorted and zero coefficients are never stored, so
/// structural equality is ring equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<C> {
    terms: BTreeMap<Exponents, C>,
}

pub type PolyZ = Poly<i64>;
pub type PolyGF2 = Poly<F2>;

impl<C: Coefficient> Poly<C> {
    pub fn constant(c: C) -> Self {
        Self::monomial((0, 0), c)
    }

    pub fn monomial(exp: Exponents, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Poly { terms }
    }

    pub fn a0() -> Self {
        Self::monomial((1, 0), C::one())
    }

    pub fn a1() -> Self {
        Self::monomial((0, 1), C::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: Exponents) -> C {
        self.terms.get(&exp).cloned().unwrap_or_else(C::zero)
    }

    /// Specialization `a0 = a1 = 0`.
    pub fn at_origin(&self) -> C {
        self.coefficient((0, 0))
    }

    /// Quantum degree of each monomial when `a0`, `a1` carry degree -2.
    /// Returns `None` for the zero polynomial or a non-homogeneous one.
    pub fn q_degree(&self) -> Option<i64> {
        let mut degrees = self.terms.keys().map(|&(e0, e1)| -2 * i64::from(e0 + e1));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    fn add_term(&mut self, exp: Exponents, c: C) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(C::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }
}

impl<C: Coefficient> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&(e0, e1), c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mut vars = Vec::new();
            for (name, e) in [("a0", e0), ("a1", e1)] {
                match e {
                    0 => {}
                    1 => vars.push(name.to_string()),
                    _ => vars.push(format!("{name}^{e}")),
                }
            }
            if vars.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{c}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> Add for Poly<C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (exp, c) in rhs.terms {
            self.add_term(exp, c);
        }
        self
    }
}

impl<C: Coefficient> Neg for Poly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Poly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<C: Coefficient> Sub for Poly<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Coefficient> Mul for Poly<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Poly::zero();
        for (&(a, b), c) in &self.terms {
            for (&(d, e), k) in &rhs.terms {
                out.add_term((a + d, b + e), c.clone() * k.clone());
            }
        }
        out
    }
}

impl<C: Coefficient> Zero for Poly<C> {
    fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Coefficient> One for Poly<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

#[derive(Serialize, Deserialize)]
struct MonomialRepr<C> {
    a0: u32,
    a1: u32,
    c: C,
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "C: Serialize + DeserializeOwned")]
struct PolyRepr<C> {
    monomials: Vec<MonomialRepr<C>>,
}

impl<C: Coefficient> Serialize for Poly<C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyRepr {
            monomials: self
                .terms
                .iter()
                .map(|(&(a0, a1), c)| MonomialRepr { a0, a1, c: c.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, C: Coefficient> Deserialize<'de> for Poly<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = PolyRepr::<C>::deserialize(d)?;
        let mut p = Poly::zero();
        for m in repr.monomials {
            p.add_term((m.a0, m.a1), m.c);
        }
        Ok(p)
    }
}

impl Coefficient for PolyZ {
    const KIND: RingKind = RingKind::PolyZ;

    fn from_int(k: i64) -> Self {
        Poly::constant(k)
    }
}

impl Coefficient for PolyGF2 {
    const KIND: RingKind = RingKind::PolyGF2;

    fn from_int(k: i64) -> Self {
        Poly::constant(F2::from_int(k))
    }
}

impl ModTwo for PolyZ {
    type Reduced = PolyGF2;

    fn mod_two(&self) -> PolyGF2 {
        let mut out = Poly::zero();
        for (&exp, c) in &self.terms {
            out.add_term(exp, c.mod_two());
        }
        out
    }
}

/// A finite linear combination of label tuples, the carrier for values of `m` and `Δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelCombination<R> {
    terms: BTreeMap<Vec<Label>, R>,
}

impl<R: Coefficient> Default for LabelCombination<R> {
    fn default() -> Self {
        Self::new()
    }
}

impl<R: Coefficient> LabelCombination<R> {
    pub fn new() -> Self {
        LabelCombination {
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(labels: Vec<Label>) -> Self {
        let mut c = Self::new();
        c.add_term(labels, R::one());
        c
    }

    pub fn add_term(&mut self, labels: Vec<Label>, coeff: R) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(labels.clone()).or_insert_with(R::zero);
        *entry = entry.clone() + coeff;
        if entry.is_zero() {
            self.terms.remove(&labels);
        }
    }

    pub fn coefficient(&self, labels: &[Label]) -> R {
        self.terms.get(labels).cloned().unwrap_or_else(R::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<Label>, &R)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Applies `m` to the adjacent tensor factors at `pos` and `pos + 1`.
    pub fn multiply_at(&self, frob: &Frobenius<R>, pos: usize) -> Self {
        let mut out = Self::new();
        for (key, c) in &self.terms {
            for (label, k) in frob.product_terms(key[pos], key[pos + 1]) {
                let mut next = key[..pos].to_vec();
                next.push(label);
                next.extend_from_slice(&key[pos + 2..]);
                out.add_term(next, c.clone() * k);
            }
        }
        out
    }

    /// Applies `Δ` to the tensor factor at `pos`.
    pub fn comultiply_at(&self, frob: &Frobenius<R>, pos: usize) -> Self {
        let mut out = Self::new();
        for (key, c) in &self.terms {
            for (u, v, k) in frob.coproduct_terms(key[pos]) {
                let mut next = key[..pos].to_vec();
                next.push(u);
                next.push(v);
                next.extend_from_slice(&key[pos + 1..]);
                out.add_term(next, c.clone() * k);
            }
        }
        out
    }

    /// Exchanges the tensor factors at `pos` and `pos + 1`.
    pub fn swap_at(&self, pos: usize) -> Self {
        let mut out = Self::new();
        for (key, c) in &self.terms {
            let mut next = key.clone();
            next.swap(pos, pos + 1);
            out.add_term(next, c.clone());
        }
        out
    }
}

/// The Frobenius algebra assigned to a circle.
///
/// Undeformed: `x^2 = 0`, `Δ(1) = 1⊗x + x⊗1`, `Δ(x) = x⊗x`.
/// Deformed by `(a0, a1)` with `h = a0 + a1`, `t = a0·a1`:
/// `x^2 = h·x - t`, `Δ(1) = 1⊗x + x⊗1 - h·1⊗1`, `Δ(x) = x⊗x - t·1⊗1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frobenius<R> {
    alphas: Option<(R, R)>,
    h: R,
    t: R,
}

impl<R: Coefficient> Frobenius<R> {
    pub fn khovanov() -> Self {
        Frobenius {
            alphas: None,
            h: R::zero(),
            t: R::zero(),
        }
    }

    pub fn deformed(alpha0: R, alpha1: R) -> Self {
        let h = alpha0.clone() + alpha1.clone();
        let t = alpha0.clone() * alpha1.clone();
        Frobenius {
            alphas: Some((alpha0, alpha1)),
            h,
            t,
        }
    }

    pub fn is_deformed(&self) -> bool {
        self.alphas.is_some()
    }

    pub fn alphas(&self) -> Option<&(R, R)> {
        self.alphas.as_ref()
    }

    pub fn h(&self) -> &R {
        &self.h
    }

    pub fn t(&self) -> &R {
        &self.t
    }

    /// `m(u ⊗ v)` as a list of `(label, coefficient)` with zero terms omitted.
    pub fn product_terms(&self, u: Label, v: Label) -> Vec<(Label, R)> {
        let terms = match (u, v) {
            (Label::One, w) | (w, Label::One) => vec![(w, R::one())],
            (Label::X, Label::X) => vec![(Label::X, self.h.clone()), (Label::One, -self.t.clone())],
        };
        terms.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// `Δ(u)` as a list of `(left, right, coefficient)` with zero terms omitted.
    pub fn coproduct_terms(&self, u: Label) -> Vec<(Label, Label, R)> {
        let terms = match u {
            Label::One => vec![
                (Label::One, Label::X, R::one()),
                (Label::X, Label::One, R::one()),
                (Label::One, Label::One, -self.h.clone()),
            ],
            Label::X => vec![
                (Label::X, Label::X, R::one()),
                (Label::One, Label::One, -self.t.clone()),
            ],
        };
        terms.into_iter().filter(|(_, _, c)| !c.is_zero()).collect()
    }

    pub fn multiply(&self, u: Label, v: Label) -> LabelCombination<R> {
        let mut out = LabelCombination::new();
        for (w, c) in self.product_terms(u, v) {
            out.add_term(vec![w], c);
        }
        out
    }

    pub fn comultiply(&self, u: Label) -> LabelCombination<R> {
        let mut out = LabelCombination::new();
        for (a, b, c) in self.coproduct_terms(u) {
            out.add_term(vec![a, b], c);
        }
        out
    }

    /// Evaluates the Frobenius algebra axioms on every tuple of basis labels and
    /// returns a description of each failure.
    pub fn axiom_failures(&self) -> Vec<String> {
        let mut failures = Vec::new();
        let mut check = |name: &str, input: &[Label], lhs: LabelCombination<R>, rhs: LabelCombination<R>| {
            if lhs != rhs {
                failures.push(format!("{name} fails on {input:?}: {lhs:?} != {rhs:?}"));
            }
        };

        for u in Label::both() {
            let single = LabelCombination::basis(vec![u]);
            let cop = single.comultiply_at(self, 0);
            check(
                "coassociativity",
                &[u],
                cop.comultiply_at(self, 0),
                cop.comultiply_at(self, 1),
            );
            check("cocommutativity", &[u], cop.swap_at(0), cop.clone());
            check(
                "unit",
                &[u],
                LabelCombination::basis(vec![Label::One, u]).multiply_at(self, 0),
                single.clone(),
            );
            for v in Label::both() {
                let pair = LabelCombination::basis(vec![u, v]);
                check(
                    "commutativity",
                    &[u, v],
                    pair.multiply_at(self, 0),
                    pair.swap_at(0).multiply_at(self, 0),
                );
                let delta_m = pair.multiply_at(self, 0).comultiply_at(self, 0);
                check(
                    "frobenius (m⊗id)(id⊗Δ)",
                    &[u, v],
                    delta_m.clone(),
                    pair.comultiply_at(self, 1).multiply_at(self, 0),
                );
                check(
                    "frobenius (id⊗m)(Δ⊗id)",
                    &[u, v],
                    delta_m,
                    pair.comultiply_at(self, 0).multiply_at(self, 1),
                );
                for w in Label::both() {
                    let triple = LabelCombination::basis(vec![u, v, w]);
                    check(
                        "associativity",
                        &[u, v, w],
                        triple.multiply_at(self, 0).multiply_at(self, 0),
                        triple.multiply_at(self, 1).multiply_at(self, 0),
                    );
                }
            }
        }
        failures
    }
}

impl Frobenius<PolyZ> {
    /// The universal deformation over `Z[a0, a1]`.
    pub fn generic() -> Self {
        Frobenius::deformed(Poly::a0(), Poly::a1())
    }
}

impl Frobenius<PolyGF2> {
    /// The universal deformation over `F2[a0, a1]`.
    pub fn generic() -> Self {
        Frobenius::deformed(Poly::a0(), Poly::a1())
    }
}
