use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{AlgebraElement, ArcAlgebra, Generator};
use crate::diagrams::Matching;
use crate::par::Execution;
use crate::rings::{Coefficient, Label, RingKind};

/// How the triples for the associativity check are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Sampling {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub n: usize,
    pub ring: RingKind,
    pub reduced: bool,
    pub sampling: Sampling,
    pub triples: usize,
    pub associativity_failures: usize,
    pub unit_failures: usize,
    /// Deformed products are not homogeneous and are not checked.
    pub grading_failures: Option<usize>,
    /// Only meaningful for the unreduced algebra.
    pub ideal_failures: Option<usize>,
    pub pass: bool,
}

impl<R: Coefficient> ArcAlgebra<R> {
    /// Composable generator triples `(g, h, k)`, in basis order.
    fn triples(&self, basis: &[Generator]) -> Vec<(Generator, Generator, Generator)> {
        let by_left = by_left(basis);
        let mut out = Vec::new();
        for g in basis {
            for h in by_left.get(g.right()).into_iter().flatten() {
                for k in by_left.get(h.right()).into_iter().flatten() {
                    out.push((g.clone(), (*h).clone(), (*k).clone()));
                }
            }
        }
        out
    }

    fn sampled_triples(&self, basis: &[Generator], samples: usize, seed: u64) -> Vec<(Generator, Generator, Generator)> {
        let by_left = by_left(basis);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pick = |from: &[&Generator]| from[rng.gen_range(0..from.len())].clone();
        (0..samples)
            .map(|_| {
                let all: Vec<&Generator> = basis.iter().collect();
                let g = pick(&all);
                let h = pick(&by_left[g.right()]);
                let k = pick(&by_left[h.right()]);
                (g, h, k)
            })
            .collect()
    }

    pub fn check_axioms(&self, sampling: Sampling, exec: Execution) -> AxiomReport {
        let basis = self.basis();
        let triples = match sampling {
            Sampling::Exhaustive => self.triples(&basis),
            Sampling::Sampled { samples, seed } => self.sampled_triples(&basis, samples, seed),
        };
        let product = |x: &AlgebraElement<R>, y: &AlgebraElement<R>| self.multiply(x, y).expect("same algebra");
        let associativity_failures = exec
            .map(&triples, |(g, h, k)| {
                let (g, h, k) = (
                    AlgebraElement::from_generator(g.clone()),
                    AlgebraElement::from_generator(h.clone()),
                    AlgebraElement::from_generator(k.clone()),
                );
                product(&product(&g, &h), &k) != product(&g, &product(&h, &k))
            })
            .into_iter()
            .filter(|&bad| bad)
            .count();

        let unit = self.unit();
        let unit_failures = exec
            .map(&basis, |g| {
                let e = AlgebraElement::from_generator(g.clone());
                product(&unit, &e) != e || product(&e, &unit) != e
            })
            .into_iter()
            .filter(|&bad| bad)
            .count();

        let pairs: Vec<(Generator, Generator)> = {
            let by_left = by_left(&basis);
            basis
                .iter()
                .flat_map(|g| {
                    by_left
                        .get(g.right())
                        .into_iter()
                        .flatten()
                        .map(move |h| (g.clone(), (*h).clone()))
                })
                .collect()
        };
        let shift = i64::from(self.is_reduced());
        let grading_failures = (!self.frobenius().is_deformed()).then(|| {
            exec.map(&pairs, |(g, h)| {
                let p = self.multiply_generators(g, h).expect("same algebra");
                let bad = p.terms().any(|(t, _)| t.q_degree() != g.q_degree() + h.q_degree() + shift);
                bad
            })
            .into_iter()
            .filter(|&bad| bad)
            .count()
        });
        let ideal_failures = (!self.is_reduced()).then(|| {
            exec.map(&pairs, |(g, h)| {
                let in_ideal = g.marked_label() == Label::X || h.marked_label() == Label::X;
                in_ideal && {
                    let p = self.multiply_generators(g, h).expect("same algebra");
                    let bad = p.terms().any(|(t, _)| t.marked_label() != Label::X);
                    bad
                }
            })
            .into_iter()
            .filter(|&bad| bad)
            .count()
        });

        let pass = associativity_failures == 0
            && unit_failures == 0
            && grading_failures.unwrap_or(0) == 0
            && ideal_failures.unwrap_or(0) == 0;
        AxiomReport {
            n: self.n(),
            ring: R::KIND,
            reduced: self.is_reduced(),
            sampling,
            triples: triples.len(),
            associativity_failures,
            unit_failures,
            grading_failures,
            ideal_failures,
            pass,
        }
    }
}

fn by_left(basis: &[Generator]) -> HashMap<&Matching, Vec<&Generator>> {
    let mut map: HashMap<&Matching, Vec<&Generator>> = HashMap::new();
    for g in basis {
        map.entry(g.left()).or_default().push(g);
    }
    map
}
