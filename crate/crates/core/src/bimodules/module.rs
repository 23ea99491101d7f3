use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::tangle::{glue_tangle, FlatTangle, TangleDiagram};
use crate::algebra::{AlgebraElement, Generator, Labeling};
use crate::diagrams::{glue, Matching};
use crate::error::{Error, Result};
use crate::rings::{Coefficient, Frobenius, Label, RingKind};
use crate::surgery::{mask_label, replay, with_label, LabelState, Saddle, Strands};

/// Which bottom-most endpoint carries the marked circle of a reduced bimodule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A basis element `(a!Tb, v)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BimoduleGenerator {
    left: Matching,
    right: Matching,
    labeling: Labeling,
}

impl BimoduleGenerator {
    pub fn left(&self) -> &Matching {
        &self.left
    }

    pub fn right(&self) -> &Matching {
        &self.right
    }

    pub fn labeling(&self) -> Labeling {
        self.labeling
    }

    pub fn with_labeling(&self, labeling: Labeling) -> Self {
        BimoduleGenerator {
            labeling,
            ..self.clone()
        }
    }
}

impl fmt::Debug for BimoduleGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BimoduleGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}!T{}, {})", self.left, self.right, self.labeling)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct BimoduleElement<R> {
    tangle: FlatTangle,
    reduced: Option<Side>,
    terms: BTreeMap<BimoduleGenerator, R>,
}

impl<R: Coefficient> BimoduleElement<R> {
    pub fn zero(tangle: FlatTangle, reduced: Option<Side>) -> Self {
        BimoduleElement {
            tangle,
            reduced,
            terms: BTreeMap::new(),
        }
    }

    pub fn tangle(&self) -> &FlatTangle {
        &self.tangle
    }

    pub fn reduced_side(&self) -> Option<Side> {
        self.reduced
    }

    pub fn add_term(&mut self, g: BimoduleGenerator, c: R) {
        if c.is_zero() {
            return;
        }
        let sum = self.coefficient(&g) + c;
        if sum.is_zero() {
            self.terms.remove(&g);
        } else {
            self.terms.insert(g, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BimoduleGenerator, &R)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, g: &BimoduleGenerator) -> R {
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
        let mut out = Self::zero(self.tangle.clone(), self.reduced);
        for (g, d) in self.terms() {
            out.add_term(g.clone(), d.clone() * c.clone());
        }
        out
    }

    fn plus(mut self, other: &Self) -> Self {
        for (g, c) in other.terms() {
            self.add_term(g.clone(), c.clone());
        }
        self
    }
}

impl<R: Coefficient> std::ops::Add for BimoduleElement<R> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        self.plus(&rhs)
    }
}

impl<R: Coefficient> std::ops::Sub for BimoduleElement<R> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        let neg = rhs.scaled(&-R::one());
        self.plus(&neg)
    }
}

impl<R: Coefficient> fmt::Debug for BimoduleElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<R: Coefficient> fmt::Display for BimoduleElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (g, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·{g}")?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
#[serde(bound = "R: Coefficient")]
struct BimoduleTermRepr<'a, R> {
    left: &'a Matching,
    right: &'a Matching,
    labels: Vec<Label>,
    coeff: &'a R,
}

impl<R: Coefficient> Serialize for BimoduleElement<R> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<BimoduleTermRepr<R>> = self
            .terms
            .iter()
            .map(|(g, c)| BimoduleTermRepr {
                left: &g.left,
                right: &g.right,
                labels: g.labeling.labels(),
                coeff: c,
            })
            .collect();
        let mut st = s.serialize_struct("BimoduleElement", 4)?;
        st.serialize_field("tangle", &self.tangle)?;
        st.serialize_field("ring", &R::KIND)?;
        st.serialize_field("reduced", &self.reduced)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

/// The `(H_m, H_n)`-bimodule of a flat tangle, possibly reduced at one side.
#[derive(Clone, Debug)]
pub struct Bimodule<R> {
    tangle: FlatTangle,
    reduced: Option<Side>,
    frob: Frobenius<R>,
    left_matchings: Vec<Matching>,
    right_matchings: Vec<Matching>,
    diagrams: HashMap<(Matching, Matching), TangleDiagram>,
}

impl<R: Coefficient> Bimodule<R> {
    pub fn new(tangle: FlatTangle, reduced: Option<Side>, frob: Frobenius<R>) -> Result<Self> {
        match reduced {
            Some(Side::Left) if tangle.m() == 0 => {
                return Err(Error::InvalidTangle("no left endpoint to mark".into()))
            }
            Some(Side::Right) if tangle.n() == 0 => {
                return Err(Error::InvalidTangle("no right endpoint to mark".into()))
            }
            _ => {}
        }
        let left_matchings = Matching::enumerate(tangle.m());
        let right_matchings = Matching::enumerate(tangle.n());
        let mut diagrams = HashMap::new();
        for a in &left_matchings {
            for b in &right_matchings {
                diagrams.insert((a.clone(), b.clone()), glue_tangle(a, &tangle, b)?);
            }
        }
        Ok(Bimodule {
            tangle,
            reduced,
            frob,
            left_matchings,
            right_matchings,
            diagrams,
        })
    }

    pub fn khovanov(tangle: FlatTangle, reduced: Option<Side>) -> Result<Self> {
        Self::new(tangle, reduced, Frobenius::khovanov())
    }

    pub fn tangle(&self) -> &FlatTangle {
        &self.tangle
    }

    pub fn reduced_side(&self) -> Option<Side> {
        self.reduced
    }

    pub fn frobenius(&self) -> &Frobenius<R> {
        &self.frob
    }

    pub fn ring(&self) -> RingKind {
        R::KIND
    }

    pub fn with_reduced(&self, reduced: Option<Side>) -> Result<Self> {
        Self::new(self.tangle.clone(), reduced, self.frob.clone())
    }

    pub fn diagram(&self, a: &Matching, b: &Matching) -> &TangleDiagram {
        &self.diagrams[&(a.clone(), b.clone())]
    }

    pub fn marked_circle(&self, a: &Matching, b: &Matching, side: Side) -> usize {
        let d = self.diagram(a, b);
        match side {
            Side::Left => d.left_marked(),
            Side::Right => d.right_marked(),
        }
        .expect("side has endpoints")
    }

    /// Marked-1 generators first, then marked-`x` ones for unreduced bimodules;
    /// within a block ordered by `(a, b, labeling)`.
    pub fn basis(&self) -> Vec<BimoduleGenerator> {
        let mut all = Vec::new();
        for a in &self.left_matchings {
            for b in &self.right_matchings {
                let d = self.diagram(a, b);
                for labeling in Labeling::all(d.num_circles()) {
                    all.push(BimoduleGenerator {
                        left: a.clone(),
                        right: b.clone(),
                        labeling,
                    });
                }
            }
        }
        let marked_label = |g: &BimoduleGenerator, side: Side| g.labeling.get(self.marked_circle(&g.left, &g.right, side));
        match self.reduced {
            Some(side) => all.into_iter().filter(|g| marked_label(g, side) == Label::One).collect(),
            None => all,
        }
    }

    pub fn rank(&self) -> usize {
        self.basis().len()
    }

    pub fn zero(&self) -> BimoduleElement<R> {
        BimoduleElement::zero(self.tangle.clone(), self.reduced)
    }

    pub fn generator(&self, a: &Matching, b: &Matching, labels: &[Label]) -> Result<BimoduleGenerator> {
        let d = self
            .diagrams
            .get(&(a.clone(), b.clone()))
            .ok_or_else(|| Error::InvalidGenerator(format!("{a}, {b} do not cap {}", self.tangle)))?;
        if labels.len() != d.num_circles() {
            return Err(Error::InvalidGenerator(format!(
                "{} labels for {} circles",
                labels.len(),
                d.num_circles()
            )));
        }
        let g = BimoduleGenerator {
            left: a.clone(),
            right: b.clone(),
            labeling: Labeling::new(labels),
        };
        if let Some(side) = self.reduced {
            if g.labeling.get(self.marked_circle(a, b, side)) == Label::X {
                return Err(Error::InvalidGenerator(format!("{g} labels the marked circle x")));
            }
        }
        Ok(g)
    }

    pub fn element(&self, g: BimoduleGenerator) -> BimoduleElement<R> {
        let mut e = self.zero();
        e.add_term(g, R::one());
        e
    }

    /// `#1 - #x`, one less for reduced bimodules.
    pub fn q_degree(&self, g: &BimoduleGenerator) -> i64 {
        g.labeling.count(Label::One) as i64 - g.labeling.count(Label::X) as i64 - i64::from(self.reduced.is_some())
    }

    fn check_element(&self, e: &BimoduleElement<R>) -> Result<()> {
        if e.tangle != self.tangle || e.reduced != self.reduced {
            return Err(Error::IncompatibleOperands(format!(
                "element of {} ({:?}) in the bimodule of {} ({:?})",
                e.tangle, e.reduced, self.tangle, self.reduced
            )));
        }
        Ok(())
    }

    /// `h·e` for `h` in `H_m` or its reduced quotient.
    pub fn act_left(&self, h: &AlgebraElement<R>, e: &BimoduleElement<R>) -> Result<BimoduleElement<R>> {
        self.check_element(e)?;
        if h.n() != self.tangle.m() {
            return Err(Error::IncompatibleOperands(format!(
                "H_{} acting on the left of a ({},{}) tangle",
                h.n(),
                2 * self.tangle.m(),
                2 * self.tangle.n()
            )));
        }
        let mut out = self.zero();
        for (g, c) in h.terms() {
            for (b, d) in e.terms() {
                for (t, k) in self.act_left_generator(g, b) {
                    out.add_term(t, c.clone() * d.clone() * k);
                }
            }
        }
        Ok(out)
    }

    /// `e·h` for `h` in `H_n` or its reduced quotient.
    pub fn act_right(&self, e: &BimoduleElement<R>, h: &AlgebraElement<R>) -> Result<BimoduleElement<R>> {
        self.check_element(e)?;
        if h.n() != self.tangle.n() {
            return Err(Error::IncompatibleOperands(format!(
                "H_{} acting on the right of a ({},{}) tangle",
                h.n(),
                2 * self.tangle.m(),
                2 * self.tangle.n()
            )));
        }
        let mut out = self.zero();
        for (b, d) in e.terms() {
            for (g, c) in h.terms() {
                for (t, k) in self.act_right_generator(b, g) {
                    out.add_term(t, d.clone() * c.clone() * k);
                }
            }
        }
        Ok(out)
    }

    /// Nodes `0..2m` are the points of `c!d`, followed by the points of `a!Tb`.
    pub(crate) fn act_left_generator(&self, g: &Generator, e: &BimoduleGenerator) -> Vec<(BimoduleGenerator, R)> {
        if g.right() != &e.left {
            return Vec::new();
        }
        let m = self.tangle.m();
        let off = 2 * m;
        let (c, d) = (g.left(), g.right());
        let cd = glue(c, d).expect("same size");
        let source = self.diagram(&e.left, &e.right);
        let mut arcs = Vec::new();
        for &(i, j) in c.arcs().iter().chain(d.arcs()) {
            arcs.push((i - 1, j - 1));
        }
        arcs.extend(self.diagram_arcs(&e.left, &e.right, off));
        let mut saddles: Vec<Saddle> = d
            .arcs()
            .iter()
            .map(|&(i, j)| Saddle {
                first: (i - 1, j - 1),
                second: (off + i - 1, off + j - 1),
            })
            .collect();
        let mut pinned = Vec::new();
        if g.is_reduced() {
            pinned.push(0);
        }
        if let Some(side) = self.reduced {
            pinned.push(off + self.side_node(side));
        }
        if !pinned.is_empty() && !saddles.is_empty() {
            saddles.rotate_left(1);
        }
        let initial = |node: usize| {
            if node < off {
                g.labeling().get(cd.circle_of(node + 1))
            } else {
                e.labeling.get(source.circle_of_node(node - off))
            }
        };
        let target = self.diagram(c, &e.right);
        let target_node = |node: usize| {
            if node < off {
                Some(node)
            } else if node - off >= off {
                Some(node - off)
            } else {
                None
            }
        };
        self.replay_action(off + source_nodes(&self.tangle), arcs, &saddles, initial, &pinned, target, target_node)
            .into_iter()
            .map(|(labeling, k)| {
                (
                    BimoduleGenerator {
                        left: c.clone(),
                        right: e.right.clone(),
                        labeling,
                    },
                    k,
                )
            })
            .collect()
    }

    /// Nodes `0..2m+2n` are the points of `a!Tb`, followed by the points of `d!c`.
    pub(crate) fn act_right_generator(&self, e: &BimoduleGenerator, g: &Generator) -> Vec<(BimoduleGenerator, R)> {
        if &e.right != g.left() {
            return Vec::new();
        }
        let m = self.tangle.m();
        let off = source_nodes(&self.tangle);
        let (d, c) = (g.left(), g.right());
        let dc = glue(d, c).expect("same size");
        let source = self.diagram(&e.left, &e.right);
        let mut arcs = self.diagram_arcs(&e.left, &e.right, 0);
        for &(i, j) in d.arcs().iter().chain(c.arcs()) {
            arcs.push((off + i - 1, off + j - 1));
        }
        let mut saddles: Vec<Saddle> = d
            .arcs()
            .iter()
            .map(|&(i, j)| Saddle {
                first: (2 * m + i - 1, 2 * m + j - 1),
                second: (off + i - 1, off + j - 1),
            })
            .collect();
        let mut pinned = Vec::new();
        if let Some(side) = self.reduced {
            pinned.push(self.side_node(side));
        }
        if g.is_reduced() {
            pinned.push(off);
        }
        if !pinned.is_empty() && !saddles.is_empty() {
            saddles.rotate_left(1);
        }
        let initial = |node: usize| {
            if node < off {
                e.labeling.get(source.circle_of_node(node))
            } else {
                g.labeling().get(dc.circle_of(node - off + 1))
            }
        };
        let target = self.diagram(&e.left, c);
        let target_node = |node: usize| {
            if node < 2 * m {
                Some(node)
            } else if node >= off {
                Some(node - off + 2 * m)
            } else {
                None
            }
        };
        self.replay_action(off + 2 * self.tangle.n(), arcs, &saddles, initial, &pinned, target, target_node)
            .into_iter()
            .map(|(labeling, k)| {
                (
                    BimoduleGenerator {
                        left: e.left.clone(),
                        right: c.clone(),
                        labeling,
                    },
                    k,
                )
            })
            .collect()
    }

    fn side_node(&self, side: Side) -> usize {
        match side {
            Side::Left => 0,
            Side::Right => 2 * self.tangle.m(),
        }
    }

    /// Arcs of `a!Tb` with node indices shifted by `off`.
    fn diagram_arcs(&self, a: &Matching, b: &Matching, off: usize) -> Vec<(usize, usize)> {
        let m = self.tangle.m();
        let mut arcs: Vec<(usize, usize)> = a.arcs().iter().map(|&(i, j)| (off + i - 1, off + j - 1)).collect();
        arcs.extend(b.arcs().iter().map(|&(i, j)| (off + 2 * m + i - 1, off + 2 * m + j - 1)));
        arcs.extend(
            self.tangle
                .arcs()
                .iter()
                .map(|&(p, q)| (off + self.tangle.node(p), off + self.tangle.node(q))),
        );
        arcs
    }

    #[allow(clippy::too_many_arguments)]
    fn replay_action(
        &self,
        nodes: usize,
        arcs: Vec<(usize, usize)>,
        saddles: &[Saddle],
        initial: impl Fn(usize) -> Label,
        pinned: &[usize],
        target: &TangleDiagram,
        target_node: impl Fn(usize) -> Option<usize>,
    ) -> Vec<(Labeling, R)> {
        let mut strands = Strands::new(nodes);
        for (u, v) in arcs {
            strands.add_arc(u, v);
        }
        let start = strands.components();
        let mask = start
            .members
            .iter()
            .enumerate()
            .fold(0, |acc, (k, members)| with_label(acc, k, initial(members[0])));
        let state = replay(&self.frob, &mut strands, LabelState::from([(mask, R::one())]), saddles, pinned);
        if state.is_empty() {
            return Vec::new();
        }
        let fin = strands.components();
        let to_target: Vec<usize> = fin
            .members
            .iter()
            .map(|members| {
                let node = members
                    .iter()
                    .find_map(|&x| target_node(x))
                    .expect("every circle of the result meets the boundary");
                target.circle_of_node(node)
            })
            .collect();
        state
            .into_iter()
            .map(|(m, k)| {
                let bits = (0..fin.count()).fold(0, |acc, c| with_label(acc, to_target[c], mask_label(m, c)));
                (Labeling::from_mask(bits, target.num_circles()), k)
            })
            .collect()
    }
}

fn source_nodes(t: &FlatTangle) -> usize {
    2 * (t.m() + t.n())
}
