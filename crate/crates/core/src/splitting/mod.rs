//! The map `λ: H̃_n ⊗ A → H_n`, its inverse, and the checks built on it.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::time::{Duration, Instant};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::algebra::{AlgebraElement, ArcAlgebra, Generator};
use crate::diagrams::Matching;
use crate::error::{Error, Result};
use crate::par::Execution;
use crate::rings::{Coefficient, Frobenius, Label, RingKind};

mod obstruction;

pub use obstruction::{deformed_check, gamma, gamma_square, z_obstruction, DeformedReport, ZObstructionReport};

/// `(a!b, v) ⊗ s` with `(a!b, v)` a reduced generator and `s ∈ {1, x}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorGenerator {
    base: Generator,
    factor: Label,
}

impl TensorGenerator {
    pub fn new(base: Generator, factor: Label) -> Result<Self> {
        if !base.is_reduced() {
            return Err(Error::InvalidGenerator(format!("{base} is not a reduced generator")));
        }
        Ok(TensorGenerator { base, factor })
    }

    pub fn base(&self) -> &Generator {
        &self.base
    }

    pub fn factor(&self) -> Label {
        self.factor
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    /// Degree of the base plus `+1` for `1` and `-1` for `x`.
    pub fn q_degree(&self) -> i64 {
        self.base.q_degree() + self.factor.q_degree()
    }

    pub fn reversed(&self) -> Self {
        TensorGenerator {
            base: self.base.reversed(),
            factor: self.factor,
        }
    }
}

impl fmt::Debug for TensorGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TensorGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ⊗ {}", self.base, self.factor)
    }
}

impl Serialize for TensorGenerator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TensorGenerator", 4)?;
        st.serialize_field("left", self.base.left())?;
        st.serialize_field("right", self.base.right())?;
        st.serialize_field("labels", &self.base.labeling().labels())?;
        st.serialize_field("factor", &self.factor)?;
        st.end()
    }
}

/// A linear combination of tensor generators.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElement<R> {
    n: usize,
    terms: BTreeMap<TensorGenerator, R>,
}

impl<R: Coefficient> TensorElement<R> {
    pub fn zero(n: usize) -> Self {
        TensorElement { n, terms: BTreeMap::new() }
    }

    pub fn from_generator(t: TensorGenerator) -> Self {
        let mut e = Self::zero(t.n());
        e.add_term(t, R::one());
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, t: TensorGenerator, c: R) {
        assert_eq!(t.n(), self.n, "tensor generator of the wrong size");
        if c.is_zero() {
            return;
        }
        let sum = self.coefficient(&t) + c;
        if sum.is_zero() {
            self.terms.remove(&t);
        } else {
            self.terms.insert(t, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorGenerator, &R)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, t: &TensorGenerator) -> R {
        self.terms.get(t).cloned().unwrap_or_else(R::zero)
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<R: Coefficient> fmt::Debug for TensorElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<R: Coefficient> fmt::Display for TensorElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (t, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·({t})")?;
        }
        Ok(())
    }
}

/// `H̃_n ⊗ A` with componentwise multiplication; `A` uses the same Frobenius
/// structure as the reduced factor.
#[derive(Clone, Debug)]
pub struct TensorAlgebra<R> {
    reduced: ArcAlgebra<R>,
}

impl<R: Coefficient> TensorAlgebra<R> {
    pub fn new(n: usize, frob: Frobenius<R>) -> Self {
        TensorAlgebra {
            reduced: ArcAlgebra::new(n, true, frob),
        }
    }

    pub fn khovanov(n: usize) -> Self {
        Self::new(n, Frobenius::khovanov())
    }

    pub fn n(&self) -> usize {
        self.reduced.n()
    }

    pub fn reduced_algebra(&self) -> &ArcAlgebra<R> {
        &self.reduced
    }

    /// The unreduced algebra with the same Frobenius structure.
    pub fn target_algebra(&self) -> ArcAlgebra<R> {
        self.reduced.with_reduced(false)
    }

    /// `B̃_n ⊗ 1` followed by `B̃_n ⊗ x`.
    pub fn basis(&self) -> Vec<TensorGenerator> {
        let base = self.reduced.basis();
        Label::both()
            .into_iter()
            .flat_map(|s| base.iter().map(move |g| TensorGenerator { base: g.clone(), factor: s }))
            .collect()
    }

    pub fn multiply_generators(&self, t: &TensorGenerator, u: &TensorGenerator) -> Result<TensorElement<R>> {
        let base = self.reduced.multiply_generators(&t.base, &u.base)?;
        let mut out = TensorElement::zero(self.n());
        for (s, c) in self.reduced.frobenius().product_terms(t.factor, u.factor) {
            for (g, d) in base.terms() {
                out.add_term(TensorGenerator { base: g.clone(), factor: s }, d.clone() * c.clone());
            }
        }
        Ok(out)
    }

    pub fn multiply(&self, x: &TensorElement<R>, y: &TensorElement<R>) -> Result<TensorElement<R>> {
        let mut out = TensorElement::zero(self.n());
        for (t, c) in x.terms() {
            for (u, d) in y.terms() {
                for (v, e) in self.multiply_generators(t, u)?.terms() {
                    out.add_term(v.clone(), c.clone() * d.clone() * e.clone());
                }
            }
        }
        Ok(out)
    }
}

/// `λ(g ⊗ x) = g_x`; `λ(g ⊗ 1) = g_1 + Σ_κ g'`, the sum over unmarked circles `κ`
/// labeled `x`, where `g'` labels the marked circle `x` and `κ` by `1`.
pub fn lambda<R: Coefficient>(t: &TensorGenerator) -> AlgebraElement<R> {
    let lifted = t.base.with_reduced(false).expect("reduced generators lift");
    let v = lifted.labeling();
    let mut out = AlgebraElement::zero(t.n(), false);
    match t.factor {
        Label::X => out.add_term(lifted.with_labeling(v.with(0, Label::X)), R::one()),
        Label::One => {
            out.add_term(lifted.clone(), R::one());
            for k in 1..v.len() {
                if v.get(k) == Label::X {
                    let swapped = v.with(0, Label::X).with(k, Label::One);
                    out.add_term(lifted.with_labeling(swapped), R::one());
                }
            }
        }
    }
    out
}

pub fn lambda_element<R: Coefficient>(e: &TensorElement<R>) -> AlgebraElement<R> {
    let mut out = AlgebraElement::zero(e.n(), false);
    for (t, c) in e.terms() {
        for (g, d) in lambda::<R>(t).terms() {
            out.add_term(g.clone(), c.clone() * d.clone());
        }
    }
    out
}

/// Inverse of [`lambda`] on an unreduced element, by back-substitution through the
/// unitriangular change of basis.
pub fn lambda_inverse<R: Coefficient>(e: &AlgebraElement<R>) -> Result<TensorElement<R>> {
    if e.is_reduced() {
        return Err(Error::IncompatibleOperands(
            "lambda_inverse expects an unreduced element".into(),
        ));
    }
    let mut out = TensorElement::zero(e.n());
    for (g, c) in e.terms() {
        let v = g.labeling();
        let tensor = |labeling, factor| TensorGenerator {
            base: g.with_labeling(labeling).with_reduced(true).expect("marked circle labeled 1"),
            factor,
        };
        match g.marked_label() {
            Label::X => out.add_term(tensor(v.with(0, Label::One), Label::X), c.clone()),
            Label::One => {
                out.add_term(tensor(v, Label::One), c.clone());
                for k in 1..v.len() {
                    if v.get(k) == Label::X {
                        out.add_term(tensor(v.with(k, Label::One), Label::X), -c.clone());
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Matrix of `λ` from `B̃_n ⊗ {1, x}` to the standard basis of `H_n`.
#[derive(Clone, Debug)]
pub struct ChangeOfBasis {
    pub domain: Vec<TensorGenerator>,
    pub codomain: Vec<Generator>,
    /// `matrix[i][j]` is the coefficient of `codomain[i]` in `λ(domain[j])`.
    pub matrix: Vec<Vec<i64>>,
}

impl ChangeOfBasis {
    pub fn new(n: usize) -> Self {
        let domain = TensorAlgebra::<i64>::khovanov(n).basis();
        let codomain = ArcAlgebra::<i64>::khovanov(n, false).basis();
        let index: HashMap<&Generator, usize> = codomain.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let mut matrix = vec![vec![0; domain.len()]; codomain.len()];
        for (j, t) in domain.iter().enumerate() {
            for (g, c) in lambda::<i64>(t).terms() {
                matrix[index[g]][j] = *c;
            }
        }
        ChangeOfBasis { domain, codomain, matrix }
    }

    /// The lower-left block `B`.
    pub fn block_b(&self) -> Vec<Vec<i64>> {
        let half = self.domain.len() / 2;
        self.matrix[half..].iter().map(|row| row[..half].to_vec()).collect()
    }

    /// Whether the matrix is `[[I, 0], [B, I]]` with `B` a 0/1 matrix.
    pub fn is_block_unitriangular(&self) -> bool {
        let size = self.domain.len();
        let half = size / 2;
        if self.codomain.len() != size || !size.is_multiple_of(2) {
            return false;
        }
        (0..size).all(|i| {
            (0..size).all(|j| {
                let v = self.matrix[i][j];
                if i == j {
                    v == 1
                } else if i >= half && j < half {
                    v == 0 || v == 1
                } else {
                    v == 0
                }
            })
        })
    }
}

/// A pair where `λ(t)λ(u) ≠ λ(tu)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation<R: Coefficient> {
    pub left: TensorGenerator,
    pub right: TensorGenerator,
    /// `λ(t)·λ(u)`.
    pub lhs: AlgebraElement<R>,
    /// `λ(t·u)`.
    pub rhs: AlgebraElement<R>,
}

impl<R: Coefficient> Violation<R> {
    pub fn difference(&self) -> AlgebraElement<R> {
        self.lhs.clone() - self.rhs.clone()
    }
}

impl<R: Coefficient> Serialize for Violation<R> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Violation", 4)?;
        st.serialize_field("left", &self.left)?;
        st.serialize_field("right", &self.right)?;
        st.serialize_field("lhs", &self.lhs)?;
        st.serialize_field("rhs", &self.rhs)?;
        st.end()
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport<R: Coefficient> {
    pub n: usize,
    pub ring: RingKind,
    /// Number of composable pairs compared.
    pub total: usize,
    /// In basis order of the left, then the right factor.
    pub violations: Vec<Violation<R>>,
    pub elapsed: Duration,
}

impl<R: Coefficient> VerificationReport<R> {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Wall-clock time is left out so that reports are reproducible byte for byte.
impl<R: Coefficient> Serialize for VerificationReport<R> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("VerificationReport", 5)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("ring", &self.ring)?;
        st.serialize_field("total", &self.total)?;
        st.serialize_field("violations", &self.violations)?;
        st.serialize_field("pass", &self.pass())?;
        st.end()
    }
}

/// Compares `λ(t)λ(u)` with `λ(tu)` for every composable pair of tensor generators.
pub fn verify_multiplicative<R: Coefficient>(n: usize, exec: Execution) -> VerificationReport<R> {
    verify_multiplicative_in(&TensorAlgebra::<R>::khovanov(n), exec)
}

pub fn verify_multiplicative_in<R: Coefficient>(tensor: &TensorAlgebra<R>, exec: Execution) -> VerificationReport<R> {
    let start = Instant::now();
    let full = tensor.target_algebra();
    let basis = tensor.basis();
    let images: HashMap<&TensorGenerator, AlgebraElement<R>> = basis.iter().map(|t| (t, lambda(t))).collect();
    let pairs: Vec<(&TensorGenerator, &TensorGenerator)> = basis
        .iter()
        .flat_map(|t| basis.iter().map(move |u| (t, u)))
        .filter(|(t, u)| t.base.right() == u.base.left())
        .collect();
    let results = exec.map(&pairs, |&(t, u)| {
        let lhs = full.multiply(&images[t], &images[u]).expect("same algebra");
        let rhs = lambda_element(&tensor.multiply_generators(t, u).expect("same algebra"));
        (lhs != rhs).then(|| Violation {
            left: t.clone(),
            right: u.clone(),
            lhs,
            rhs,
        })
    });
    VerificationReport {
        n: tensor.n(),
        ring: R::KIND,
        total: pairs.len(),
        violations: results.into_iter().flatten().collect(),
        elapsed: start.elapsed(),
    }
}

pub(crate) fn tensor_generator(left: &Matching, right: &Matching, labels: &[Label], factor: Label) -> TensorGenerator {
    TensorGenerator {
        base: Generator::new(left.clone(), right.clone(), labels, true).expect("valid reduced generator"),
        factor,
    }
}
