use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::module::{Bimodule, BimoduleElement, BimoduleGenerator, Side};
use super::tangle::FlatTangle;
use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::par::Execution;
use crate::rings::{Coefficient, Frobenius, Label, RingKind};
use crate::splitting::{lambda, TensorAlgebra, TensorGenerator};

/// `(a!Tb, v) ⊗ s` with `(a!Tb, v)` a generator of the bimodule reduced at one side.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BimoduleTensor {
    base: BimoduleGenerator,
    factor: Label,
}

impl BimoduleTensor {
    pub fn base(&self) -> &BimoduleGenerator {
        &self.base
    }

    pub fn factor(&self) -> Label {
        self.factor
    }
}

impl fmt::Debug for BimoduleTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ⊗ {}", self.base, self.factor)
    }
}

impl Serialize for BimoduleTensor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BimoduleTensor", 4)?;
        st.serialize_field("left", self.base.left())?;
        st.serialize_field("right", self.base.right())?;
        st.serialize_field("labels", &self.base.labeling().labels())?;
        st.serialize_field("factor", &self.factor)?;
        st.end()
    }
}

pub type TensorCombination<R> = BTreeMap<BimoduleTensor, R>;

fn add_to<R: Coefficient>(acc: &mut TensorCombination<R>, t: BimoduleTensor, c: R) {
    if c.is_zero() {
        return;
    }
    let sum = acc.get(&t).cloned().unwrap_or_else(R::zero) + c;
    if sum.is_zero() {
        acc.remove(&t);
    } else {
        acc.insert(t, sum);
    }
}

/// `λ^L` or `λ^R`: the tensor product of the one-sided reduced bimodule with `A`,
/// identified with the full bimodule by swapping labels onto the marked circle.
#[derive(Clone, Debug)]
pub struct SideSplitting<R> {
    side: Side,
    reduced: Bimodule<R>,
    full: Bimodule<R>,
}

impl<R: Coefficient> SideSplitting<R> {
    pub fn new(tangle: FlatTangle, side: Side, frob: Frobenius<R>) -> Result<Self> {
        let full = Bimodule::new(tangle, None, frob)?;
        let reduced = full.with_reduced(Some(side))?;
        Ok(SideSplitting { side, reduced, full })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn reduced_bimodule(&self) -> &Bimodule<R> {
        &self.reduced
    }

    pub fn full_bimodule(&self) -> &Bimodule<R> {
        &self.full
    }

    /// The `⊗1` block, then the `⊗x` block.
    pub fn basis(&self) -> Vec<BimoduleTensor> {
        let reduced = self.reduced.basis();
        [Label::One, Label::X]
            .into_iter()
            .flat_map(|factor| {
                reduced.iter().map(move |base| BimoduleTensor {
                    base: base.clone(),
                    factor,
                })
            })
            .collect()
    }

    pub fn tensor(&self, base: BimoduleGenerator, factor: Label) -> Result<BimoduleTensor> {
        if base.labeling().get(self.marked(&base)) == Label::X {
            return Err(Error::InvalidGenerator(format!("{base} labels the marked circle x")));
        }
        Ok(BimoduleTensor { base, factor })
    }

    pub fn q_degree(&self, t: &BimoduleTensor) -> i64 {
        self.reduced.q_degree(&t.base) + t.factor.q_degree()
    }

    fn marked(&self, g: &BimoduleGenerator) -> usize {
        self.full.marked_circle(g.left(), g.right(), self.side)
    }

    pub fn lambda(&self, t: &BimoduleTensor) -> BimoduleElement<R> {
        let marked = self.marked(&t.base);
        let v = t.base.labeling();
        let mut out = self.full.zero();
        match t.factor {
            Label::X => out.add_term(t.base.with_labeling(v.with(marked, Label::X)), R::one()),
            Label::One => {
                out.add_term(t.base.clone(), R::one());
                for k in (0..v.len()).filter(|&k| k != marked && v.get(k) == Label::X) {
                    let swapped = v.with(marked, Label::X).with(k, Label::One);
                    out.add_term(t.base.with_labeling(swapped), R::one());
                }
            }
        }
        out
    }

    pub fn lambda_combination(&self, x: &TensorCombination<R>) -> BimoduleElement<R> {
        let mut out = self.full.zero();
        for (t, c) in x {
            out = out + self.lambda(t).scaled(c);
        }
        out
    }

    pub fn lambda_inverse(&self, e: &BimoduleElement<R>) -> Result<TensorCombination<R>> {
        if e.reduced_side().is_some() || e.tangle() != self.full.tangle() {
            return Err(Error::IncompatibleOperands("λ⁻¹ takes elements of the full bimodule".into()));
        }
        let mut out = TensorCombination::new();
        for (g, c) in e.terms() {
            let marked = self.marked(g);
            let v = g.labeling();
            if v.get(marked) == Label::X {
                let base = g.with_labeling(v.with(marked, Label::One));
                add_to(&mut out, BimoduleTensor { base, factor: Label::X }, c.clone());
            } else {
                add_to(&mut out, BimoduleTensor { base: g.clone(), factor: Label::One }, c.clone());
                for k in (0..v.len()).filter(|&k| k != marked && v.get(k) == Label::X) {
                    let base = g.with_labeling(v.with(k, Label::One));
                    add_to(&mut out, BimoduleTensor { base, factor: Label::X }, -c.clone());
                }
            }
        }
        Ok(out)
    }

    /// `(h ⊗ s)·(e ⊗ s')` in the reduced bimodule tensored with `A`.
    pub fn act_left(&self, h: &TensorGenerator, t: &BimoduleTensor) -> TensorCombination<R> {
        self.act(self.reduced.act_left_generator(h.base(), &t.base), h.factor(), t.factor)
    }

    /// `(e ⊗ s')·(h ⊗ s)` in the reduced bimodule tensored with `A`.
    pub fn act_right(&self, t: &BimoduleTensor, h: &TensorGenerator) -> TensorCombination<R> {
        self.act(self.reduced.act_right_generator(&t.base, h.base()), t.factor, h.factor())
    }

    fn act(&self, base: Vec<(BimoduleGenerator, R)>, s: Label, u: Label) -> TensorCombination<R> {
        let mut out = TensorCombination::new();
        if base.is_empty() {
            return out;
        }
        let factors = self.full.frobenius().product_terms(s, u);
        for (g, c) in base {
            for (w, k) in &factors {
                add_to(
                    &mut out,
                    BimoduleTensor {
                        base: g.clone(),
                        factor: *w,
                    },
                    c.clone() * k.clone(),
                );
            }
        }
        out
    }

    /// Compares `λ^S(h·t)` with `λ(h)·λ^S(t)`, or the right-handed version.
    pub fn compare(&self, h: &TensorGenerator, t: &BimoduleTensor, acting: Side) -> Option<Witness<R>> {
        let lh: AlgebraElement<R> = lambda(h);
        let lt = self.lambda(t);
        let (lhs, rhs) = match acting {
            Side::Left => (
                self.lambda_combination(&self.act_left(h, t)),
                self.full.act_left(&lh, &lt).expect("sizes agree"),
            ),
            Side::Right => (
                self.lambda_combination(&self.act_right(t, h)),
                self.full.act_right(&lt, &lh).expect("sizes agree"),
            ),
        };
        (lhs != rhs).then(|| Witness {
            map: self.side,
            acting,
            algebra: h.clone(),
            element: t.clone(),
            lhs,
            rhs,
        })
    }

    /// Every failure of `λ^S` to intertwine the action on `acting`, in basis order.
    pub fn violations(&self, acting: Side, exec: Execution) -> (usize, Vec<Witness<R>>) {
        let size = match acting {
            Side::Left => self.full.tangle().m(),
            Side::Right => self.full.tangle().n(),
        };
        if size == 0 {
            return (0, Vec::new());
        }
        let algebra = TensorAlgebra::new(size, self.full.frobenius().clone());
        let pairs: Vec<(TensorGenerator, BimoduleTensor)> = algebra
            .basis()
            .into_iter()
            .flat_map(|h| self.basis().into_iter().map(move |t| (h.clone(), t)))
            .filter(|(h, t)| match acting {
                Side::Left => h.base().right() == t.base.left(),
                Side::Right => h.base().left() == t.base.right(),
            })
            .collect();
        let found = exec.map(&pairs, |(h, t)| self.compare(h, t, acting));
        (pairs.len(), found.into_iter().flatten().collect())
    }

    pub fn is_graded_bijection(&self) -> bool {
        let basis = self.basis();
        if basis.len() != self.full.rank() {
            return false;
        }
        basis.iter().all(|t| {
            let image = self.lambda(t);
            let graded = image.terms().all(|(g, _)| self.full.q_degree(g) == self.q_degree(t));
            let mut unit = TensorCombination::new();
            unit.insert(t.clone(), R::one());
            graded && self.lambda_inverse(&image).ok() == Some(unit)
        }) && self.full.basis().into_iter().all(|g| {
            let e = self.full.element(g);
            self.lambda_inverse(&e).map(|x| self.lambda_combination(&x)).ok() == Some(e)
        })
    }
}

/// A pair on which a splitting map fails to intertwine an action.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "R: Coefficient")]
pub struct Witness<R: Coefficient> {
    pub map: Side,
    pub acting: Side,
    pub algebra: TensorGenerator,
    pub element: BimoduleTensor,
    pub lhs: BimoduleElement<R>,
    pub rhs: BimoduleElement<R>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(bound = "R: Coefficient")]
pub struct MapChecks<R: Coefficient> {
    pub side: Side,
    pub graded_bijection: bool,
    /// Pairs checked and failures for the action on the map's own side.
    pub own_checked: usize,
    pub own_violations: usize,
    pub own_intertwines: bool,
    /// First failure for the action on the other side.
    pub cross_witness: Option<Witness<R>>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(bound = "R: Coefficient")]
pub struct BimoduleReport<R: Coefficient> {
    pub tangle: FlatTangle,
    pub ring: RingKind,
    /// `None` when that side has no endpoints.
    pub left: Option<MapChecks<R>>,
    pub right: Option<MapChecks<R>>,
    pub maps_coincide: bool,
    pub pass: bool,
}

fn side_checks<R: Coefficient>(split: &SideSplitting<R>, exec: Execution) -> MapChecks<R> {
    let other = match split.side {
        Side::Left => Side::Right,
        Side::Right => Side::Left,
    };
    let (own_checked, own) = split.violations(split.side, exec);
    let (_, cross) = split.violations(other, exec);
    MapChecks {
        side: split.side,
        graded_bijection: split.is_graded_bijection(),
        own_checked,
        own_violations: own.len(),
        own_intertwines: own.is_empty(),
        cross_witness: cross.into_iter().next(),
    }
}

pub fn verify_bimodule<R: Coefficient>(tangle: &FlatTangle, frob: Frobenius<R>, exec: Execution) -> Result<BimoduleReport<R>> {
    let left = (tangle.m() > 0)
        .then(|| SideSplitting::new(tangle.clone(), Side::Left, frob.clone()))
        .transpose()?;
    let right = (tangle.n() > 0)
        .then(|| SideSplitting::new(tangle.clone(), Side::Right, frob.clone()))
        .transpose()?;
    let maps_coincide = match (&left, &right) {
        (Some(l), Some(r)) => {
            let lb = l.basis();
            lb == r.basis() && lb.iter().all(|t| l.lambda(t) == r.lambda(t))
        }
        _ => false,
    };
    let left = left.map(|s| side_checks(&s, exec));
    let right = right.map(|s| side_checks(&s, exec));
    let ok = |c: &Option<MapChecks<R>>| c.as_ref().is_none_or(|c| c.graded_bijection && c.own_intertwines);
    let pass = ok(&left) && ok(&right);
    Ok(BimoduleReport {
        tangle: tangle.clone(),
        ring: R::KIND,
        left,
        right,
        maps_coincide,
        pass,
    })
}

/// First tangle in canonical order on which `λ^L` fails to intertwine the right action.
pub fn find_witness<R: Coefficient>(
    m: usize,
    n: usize,
    frob: Frobenius<R>,
    exec: Execution,
) -> Result<Option<(FlatTangle, Witness<R>)>> {
    if m == 0 || n == 0 {
        return Ok(None);
    }
    let tangles = FlatTangle::enumerate(m, n);
    let found = exec.map(&tangles, |t| -> Result<Option<Witness<R>>> {
        let split = SideSplitting::new(t.clone(), Side::Left, frob.clone())?;
        Ok(split.violations(Side::Right, Execution::Sequential).1.into_iter().next())
    });
    for (t, w) in tangles.into_iter().zip(found) {
        if let Some(w) = w? {
            return Ok(Some((t, w)));
        }
    }
    Ok(None)
}
