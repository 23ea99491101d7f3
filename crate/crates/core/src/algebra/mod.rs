//! Khovanov's arc algebra `H_n` and its reduced quotient.
//!
//! Generators are pairs of crossingless matchings together with a `{1, x}`
//! labeling of the circles of the glued diagram. The reduced algebra keeps only
//! generators whose marked circle (through point 1) is labeled `1`, and carries an
//! extra quantum grading shift of `-1`.

mod axioms;
mod center;
mod embed;
mod oracle;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::diagrams::{glue, surgery_sequence, CircleDiagram, Matching, ProductStrands};
use crate::error::{Error, Result};
use crate::rings::{Coefficient, Frobenius, Label, ModTwo, RingKind};
use crate::surgery::{mask_label, replay, with_label, LabelState, Mask};

pub use axioms::{AxiomReport, Sampling};
pub use embed::stack_embed;

/// Labels of the circles of a diagram in canonical circle order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labeling {
    bits: Mask,
    len: u8,
}

impl Labeling {
    pub fn new(labels: &[Label]) -> Self {
        assert!(labels.len() <= 32, "too many circles");
        let bits = labels
            .iter()
            .enumerate()
            .fold(0, |m, (k, &l)| with_label(m, k, l));
        Labeling {
            bits,
            len: labels.len() as u8,
        }
    }

    pub fn all_one(len: usize) -> Self {
        Labeling {
            bits: 0,
            len: len as u8,
        }
    }

    pub(crate) fn from_mask(bits: Mask, len: usize) -> Self {
        Labeling {
            bits,
            len: len as u8,
        }
    }

    pub(crate) fn mask(self) -> Mask {
        self.bits
    }

    pub fn len(self) -> usize {
        self.len as usize
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn get(self, k: usize) -> Label {
        assert!(k < self.len(), "circle index out of range");
        mask_label(self.bits, k)
    }

    pub fn with(self, k: usize, label: Label) -> Self {
        assert!(k < self.len(), "circle index out of range");
        Labeling {
            bits: with_label(self.bits, k, label),
            len: self.len,
        }
    }

    /// Appends `extra` circles labeled `1`.
    pub fn extended(self, extra: usize) -> Self {
        Labeling {
            bits: self.bits,
            len: self.len + extra as u8,
        }
    }

    pub fn labels(self) -> Vec<Label> {
        (0..self.len()).map(|k| self.get(k)).collect()
    }

    pub fn count(self, label: Label) -> usize {
        let xs = self.bits.count_ones() as usize;
        match label {
            Label::X => xs,
            Label::One => self.len() - xs,
        }
    }

    /// Every labeling of `len` circles, in increasing bitmask order.
    pub fn all(len: usize) -> impl Iterator<Item = Labeling> {
        (0..(1 as Mask) << len).map(move |bits| Labeling::from_mask(bits, len))
    }
}

impl fmt::Debug for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.len() {
            write!(f, "{}", self.get(k))?;
        }
        Ok(())
    }
}

/// A basis element `(a!b, v)` of `H_n` or of the reduced algebra.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    left: Matching,
    right: Matching,
    labeling: Labeling,
    reduced: bool,
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}!{}, {})", self.left, self.right, self.labeling)?;
        if self.reduced {
            f.write_str("~")?;
        }
        Ok(())
    }
}

impl Generator {
    pub fn new(left: Matching, right: Matching, labels: &[Label], reduced: bool) -> Result<Self> {
        let d = glue(&left, &right)?;
        if labels.len() != d.num_circles() {
            return Err(Error::InvalidGenerator(format!(
                "{} labels for {} circles",
                labels.len(),
                d.num_circles()
            )));
        }
        Self::from_labeling(left, right, Labeling::new(labels), reduced)
    }

    pub fn from_labeling(left: Matching, right: Matching, labeling: Labeling, reduced: bool) -> Result<Self> {
        if reduced && !labeling.is_empty() && labeling.get(0) == Label::X {
            return Err(Error::InvalidGenerator(
                "reduced generator with marked circle labeled x".into(),
            ));
        }
        Ok(Generator {
            left,
            right,
            labeling,
            reduced,
        })
    }

    /// Parses the compact form `"1-2,3-4 | 1-4,2-3 | 1x"`.
    pub fn parse(s: &str, reduced: bool) -> Result<Self> {
        let parts: Vec<&str> = s.split('|').collect();
        let [left, right, labels] = parts.as_slice() else {
            return Err(Error::InvalidGenerator(format!("expected 'left | right | labels', got {s:?}")));
        };
        let labels = labels
            .trim()
            .chars()
            .map(|c| c.to_string().parse())
            .collect::<Result<Vec<Label>>>()?;
        Generator::new(Matching::parse(left)?, Matching::parse(right)?, &labels, reduced)
    }

    pub fn left(&self) -> &Matching {
        &self.left
    }

    pub fn right(&self) -> &Matching {
        &self.right
    }

    pub fn labeling(&self) -> Labeling {
        self.labeling
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn n(&self) -> usize {
        self.left.n()
    }

    pub fn diagram(&self) -> CircleDiagram {
        glue(&self.left, &self.right).expect("generator matchings have equal size")
    }

    pub fn marked_label(&self) -> Label {
        self.labeling.get(0)
    }

    /// `(#1 - #x) - n`, and one less again for reduced generators.
    pub fn q_degree(&self) -> i64 {
        let ones = self.labeling.count(Label::One) as i64;
        let xs = self.labeling.count(Label::X) as i64;
        ones - xs - self.n() as i64 - i64::from(self.reduced)
    }

    pub fn with_labeling(&self, labeling: Labeling) -> Self {
        Generator {
            labeling,
            ..self.clone()
        }
    }

    /// The same diagram and labels regarded in the unreduced (`false`) or reduced algebra.
    pub fn with_reduced(&self, reduced: bool) -> Result<Self> {
        Self::from_labeling(self.left.clone(), self.right.clone(), self.labeling, reduced)
    }

    /// The anti-automorphism `(a!b, v) ↦ (b!a, v)`. Both diagrams share their point
    /// partition, so the canonical circle order and labels carry over unchanged.
    pub fn reversed(&self) -> Self {
        Generator {
            left: self.right.clone(),
            right: self.left.clone(),
            labeling: self.labeling,
            reduced: self.reduced,
        }
    }
}

/// A finite linear combination of generators.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement<R> {
    n: usize,
    reduced: bool,
    terms: BTreeMap<Generator, R>,
}

impl<R: Coefficient> fmt::Debug for AlgebraElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<R: Coefficient> fmt::Display for AlgebraElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(g, c)| {
                if c.is_one() {
                    g.to_string()
                } else {
                    format!("({c})·{g}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<R: Coefficient> AlgebraElement<R> {
    pub fn zero(n: usize, reduced: bool) -> Self {
        AlgebraElement {
            n,
            reduced,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_generator(g: Generator) -> Self {
        Self::from_term(g, R::one())
    }

    pub fn from_term(g: Generator, c: R) -> Self {
        let mut e = Self::zero(g.n(), g.reduced);
        e.add_term(g, c);
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn ring(&self) -> RingKind {
        R::KIND
    }

    pub fn add_term(&mut self, g: Generator, c: R) {
        assert_eq!(g.n(), self.n, "generator size differs from element size");
        assert_eq!(g.reduced, self.reduced, "generator reduced flag differs from element");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&g) {
            Some(existing) => {
                *existing = existing.clone() + c;
                if existing.is_zero() {
                    self.terms.remove(&g);
                }
            }
            None => {
                self.terms.insert(g, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Generator, &R)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, g: &Generator) -> R {
        self.terms.get(g).cloned().unwrap_or_else(R::zero)
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, c: &R) -> Self {
        let mut out = Self::zero(self.n, self.reduced);
        for (g, k) in &self.terms {
            out.add_term(g.clone(), c.clone() * k.clone());
        }
        out
    }

    pub fn map_coefficients<S: Coefficient>(&self, f: impl Fn(&R) -> S) -> AlgebraElement<S> {
        let mut out = AlgebraElement::zero(self.n, self.reduced);
        for (g, k) in &self.terms {
            out.add_term(g.clone(), f(k));
        }
        out
    }

    /// Drops every term whose marked circle is labeled `x` and regards the rest as
    /// elements of the reduced algebra.
    pub fn reduce(&self) -> Result<Self> {
        if self.reduced {
            return Err(Error::IncompatibleOperands("element is already reduced".into()));
        }
        let mut out = Self::zero(self.n, true);
        for (g, k) in &self.terms {
            if g.marked_label() == Label::One {
                out.add_term(g.with_reduced(true)?, k.clone());
            }
        }
        Ok(out)
    }

    /// The section of the quotient map: reduced generators regarded as unreduced
    /// generators with marked circle labeled `1`.
    pub fn lift(&self) -> Self {
        let mut out = Self::zero(self.n, false);
        for (g, k) in &self.terms {
            out.add_term(g.with_reduced(false).expect("unreduced is always valid"), k.clone());
        }
        out
    }

    pub fn reversed(&self) -> Self {
        let mut out = Self::zero(self.n, self.reduced);
        for (g, k) in &self.terms {
            out.add_term(g.reversed(), k.clone());
        }
        out
    }

    /// The common quantum degree of all terms, or `None` when the element is zero or
    /// not homogeneous.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut degrees = self.terms.keys().map(Generator::q_degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    fn assert_compatible(&self, other: &Self) {
        assert_eq!(self.n, other.n, "elements of different arc algebras");
        assert_eq!(self.reduced, other.reduced, "reduced and unreduced elements mixed");
    }
}

impl<R: ModTwo> AlgebraElement<R> {
    pub fn mod_two(&self) -> AlgebraElement<R::Reduced> {
        self.map_coefficients(|c| c.mod_two())
    }
}

impl<R: Coefficient> Add for AlgebraElement<R> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.assert_compatible(&rhs);
        for (g, k) in rhs.terms {
            self.add_term(g, k);
        }
        self
    }
}

impl<R: Coefficient> Neg for AlgebraElement<R> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scaled(&-R::one())
    }
}

impl<R: Coefficient> Sub for AlgebraElement<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "R: Coefficient")]
struct TermRepr<R> {
    left: Matching,
    right: Matching,
    labels: Vec<Label>,
    coeff: R,
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "R: Coefficient")]
struct ElementRepr<R> {
    n: usize,
    ring: RingKind,
    reduced: bool,
    terms: Vec<TermRepr<R>>,
}

impl<R: Coefficient> Serialize for AlgebraElement<R> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementRepr {
            n: self.n,
            ring: R::KIND,
            reduced: self.reduced,
            terms: self
                .terms
                .iter()
                .map(|(g, c)| TermRepr {
                    left: g.left.clone(),
                    right: g.right.clone(),
                    labels: g.labeling.labels(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, R: Coefficient> Deserialize<'de> for AlgebraElement<R> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = ElementRepr::<R>::deserialize(d)?;
        if r.ring != R::KIND {
            return Err(D::Error::custom(format!("expected ring {}, found {}", R::KIND, r.ring)));
        }
        let mut e = AlgebraElement::zero(r.n, r.reduced);
        for t in r.terms {
            if t.left.n() != r.n {
                return Err(D::Error::custom("term size differs from element size"));
            }
            let g = Generator::new(t.left, t.right, &t.labels, r.reduced).map_err(D::Error::custom)?;
            e.add_term(g, t.coeff);
        }
        Ok(e)
    }
}

/// The arc algebra on `2n` points over `R` with a chosen Frobenius structure.
///
/// Holds the matchings and glued diagrams so that repeated products do not
/// recompute them.
#[derive(Clone, Debug)]
pub struct ArcAlgebra<R> {
    n: usize,
    reduced: bool,
    frob: Frobenius<R>,
    matchings: Vec<Matching>,
    diagrams: HashMap<(Matching, Matching), CircleDiagram>,
}

impl<R: Coefficient> ArcAlgebra<R> {
    pub fn new(n: usize, reduced: bool, frob: Frobenius<R>) -> Self {
        let matchings = Matching::enumerate(n);
        let mut diagrams = HashMap::new();
        for a in &matchings {
            for b in &matchings {
                diagrams.insert((a.clone(), b.clone()), glue(a, b).expect("equal sizes"));
            }
        }
        ArcAlgebra {
            n,
            reduced,
            frob,
            matchings,
            diagrams,
        }
    }

    pub fn khovanov(n: usize, reduced: bool) -> Self {
        Self::new(n, reduced, Frobenius::khovanov())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn frobenius(&self) -> &Frobenius<R> {
        &self.frob
    }

    pub fn matchings(&self) -> &[Matching] {
        &self.matchings
    }

    pub fn diagram(&self, a: &Matching, b: &Matching) -> &CircleDiagram {
        self.diagrams
            .get(&(a.clone(), b.clone()))
            .expect("matchings belong to this algebra")
    }

    /// The same algebra with the other reduced flag.
    pub fn with_reduced(&self, reduced: bool) -> Self {
        ArcAlgebra {
            reduced,
            ..self.clone()
        }
    }

    /// Standard basis. For the unreduced algebra, all generators labeling the marked
    /// circle `1` come before those labeling it `x`; within each block generators are
    /// ordered by `(left, right, labels)`.
    pub fn basis(&self) -> Vec<Generator> {
        let marked_values: &[Label] = if self.reduced {
            &[Label::One]
        } else {
            &[Label::One, Label::X]
        };
        let mut out = Vec::new();
        for &marked in marked_values {
            for a in &self.matchings {
                for b in &self.matchings {
                    let circles = self.diagram(a, b).num_circles();
                    if circles == 0 {
                        // H_0 is the ground ring; there is no marked circle.
                        if marked == Label::One {
                            out.push(Generator {
                                left: a.clone(),
                                right: b.clone(),
                                labeling: Labeling::from_mask(0, 0),
                                reduced: self.reduced,
                            });
                        }
                        continue;
                    }
                    for rest in Labeling::all(circles - 1) {
                        let bits = (rest.mask() << 1) | Mask::from(marked == Label::X);
                        out.push(Generator {
                            left: a.clone(),
                            right: b.clone(),
                            labeling: Labeling::from_mask(bits, circles),
                            reduced: self.reduced,
                        });
                    }
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.matchings
            .iter()
            .flat_map(|a| self.matchings.iter().map(move |b| (a, b)))
            .map(|(a, b)| {
                let c = self.diagram(a, b).num_circles();
                1usize << c.saturating_sub(usize::from(self.reduced))
            })
            .sum()
    }

    pub fn zero(&self) -> AlgebraElement<R> {
        AlgebraElement::zero(self.n, self.reduced)
    }

    /// `Σ_a (a!a, all circles 1)`.
    pub fn unit(&self) -> AlgebraElement<R> {
        let mut e = self.zero();
        for a in &self.matchings {
            let g = Generator {
                left: a.clone(),
                right: a.clone(),
                labeling: Labeling::all_one(self.n),
                reduced: self.reduced,
            };
            e.add_term(g, R::one());
        }
        e
    }

    fn check_generator(&self, g: &Generator) -> Result<()> {
        if g.n() != self.n || g.reduced != self.reduced {
            return Err(Error::IncompatibleOperands(format!(
                "generator {g} does not belong to the algebra on {} points (reduced = {})",
                2 * self.n,
                self.reduced
            )));
        }
        Ok(())
    }

    fn check_element(&self, e: &AlgebraElement<R>) -> Result<()> {
        if e.n != self.n || e.reduced != self.reduced {
            return Err(Error::IncompatibleOperands(format!(
                "element of size {} (reduced = {}) used in algebra of size {} (reduced = {})",
                e.n, e.reduced, self.n, self.reduced
            )));
        }
        Ok(())
    }

    pub fn multiply(&self, x: &AlgebraElement<R>, y: &AlgebraElement<R>) -> Result<AlgebraElement<R>> {
        self.check_element(x)?;
        self.check_element(y)?;
        let mut out = self.zero();
        for (g, c) in &x.terms {
            for (h, k) in &y.terms {
                if g.right != h.left {
                    continue;
                }
                let coeff = c.clone() * k.clone();
                for (term, m) in self.product_terms(g, h, None) {
                    out.add_term(term, coeff.clone() * m);
                }
            }
        }
        Ok(out)
    }

    pub fn multiply_generators(&self, g: &Generator, h: &Generator) -> Result<AlgebraElement<R>> {
        self.multiply_generators_in_order(g, h, None)
    }

    /// Product with the saddles attached in the given order, a permutation of
    /// `0..n` indexing the canonical surgery sequence.
    pub fn multiply_generators_in_order(
        &self,
        g: &Generator,
        h: &Generator,
        order: Option<&[usize]>,
    ) -> Result<AlgebraElement<R>> {
        self.check_generator(g)?;
        self.check_generator(h)?;
        if let Some(order) = order {
            let mut sorted = order.to_vec();
            sorted.sort_unstable();
            if sorted != (0..self.n).collect::<Vec<_>>() {
                return Err(Error::IncompatibleOperands(format!(
                    "{order:?} is not a permutation of the {} saddles",
                    self.n
                )));
            }
        }
        let mut out = self.zero();
        for (term, c) in self.product_terms(g, h, order) {
            out.add_term(term, c);
        }
        Ok(out)
    }

    /// Replays `Σ_{a,b,c}` on the labeled circles of `g ⊔ h`.
    fn product_terms(&self, g: &Generator, h: &Generator, order: Option<&[usize]>) -> Vec<(Generator, R)> {
        if g.right != h.left {
            return Vec::new();
        }
        let (a, b, c) = (&g.left, &g.right, &h.right);
        let mut sites = surgery_sequence(a, b, c).expect("sizes checked");
        match order {
            Some(order) => sites = order.iter().map(|&k| sites[k]).collect(),
            // Surgery at the arc through the marked point goes last; this only
            // matters for deformed reduced products, which depend on the order.
            None if self.reduced && !sites.is_empty() => sites.rotate_left(1),
            None => {}
        }
        let mut ps = ProductStrands::new(a, b, c, &sites);
        let ab = self.diagram(a, b);
        let bc = self.diagram(b, c);
        let initial = ps.strands.components();
        let mask = initial
            .members
            .iter()
            .enumerate()
            .fold(0, |m, (k, nodes)| {
                let node = nodes[0];
                let label = if node < 2 * self.n {
                    g.labeling.get(ab.circle_of(node + 1))
                } else {
                    h.labeling.get(bc.circle_of(node - 2 * self.n + 1))
                };
                with_label(m, k, label)
            });
        let pinned = if self.reduced {
            vec![ps.left_node(1), ps.right_node(1)]
        } else {
            Vec::new()
        };
        let saddles = ps.saddles.clone();
        let state = replay(&self.frob, &mut ps.strands, LabelState::from([(mask, R::one())]), &saddles, &pinned);
        if state.is_empty() {
            return Vec::new();
        }
        let target = self.diagram(a, c);
        let fin = ps.strands.components();
        let to_target: Vec<usize> = fin
            .members
            .iter()
            .map(|nodes| {
                let p = nodes
                    .iter()
                    .find(|&&x| x < 2 * self.n)
                    .expect("every circle of a!c meets the left points");
                target.circle_of(p + 1)
            })
            .collect();
        state
            .into_iter()
            .map(|(m, coeff)| {
                let bits = (0..fin.count()).fold(0, |acc, k| with_label(acc, to_target[k], mask_label(m, k)));
                let gen = Generator {
                    left: a.clone(),
                    right: c.clone(),
                    labeling: Labeling::from_mask(bits, target.num_circles()),
                    reduced: self.reduced,
                };
                (gen, coeff)
            })
            .collect()
    }

    pub fn commutator(&self, x: &AlgebraElement<R>, y: &AlgebraElement<R>) -> Result<AlgebraElement<R>> {
        Ok(self.multiply(x, y)? - self.multiply(y, x)?)
    }
}

#[cfg(test)]
mod tests;
