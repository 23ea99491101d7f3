use std::collections::{BTreeSet, HashMap};

use super::{AlgebraElement, ArcAlgebra, Generator};
use crate::error::Result;
use crate::linalg::KernelRing;

impl<R: KernelRing> ArcAlgebra<R> {
    /// Quantum degrees occurring in the standard basis.
    pub fn degrees(&self) -> BTreeSet<i64> {
        self.basis().iter().map(Generator::q_degree).collect()
    }

    /// A basis of the degree-`d` part of the center: the kernel of
    /// `z ↦ ([z, g])_g` over every basis generator `g`, restricted to degree `d`.
    pub fn center_in_degree(&self, d: i64) -> Result<Vec<AlgebraElement<R>>> {
        let basis = self.basis();
        let vars: Vec<&Generator> = basis.iter().filter(|g| g.q_degree() == d).collect();
        if vars.is_empty() {
            return Ok(Vec::new());
        }
        let mut row_index: HashMap<(usize, Generator), usize> = HashMap::new();
        let mut columns: Vec<Vec<(usize, R)>> = Vec::with_capacity(vars.len());
        for v in &vars {
            let z = AlgebraElement::from_generator((*v).clone());
            let mut col = Vec::new();
            for (gi, g) in basis.iter().enumerate() {
                let comm = self.commutator(&z, &AlgebraElement::from_generator(g.clone()))?;
                for (out, c) in comm.terms() {
                    let next = row_index.len();
                    let r = *row_index.entry((gi, out.clone())).or_insert(next);
                    col.push((r, c.clone()));
                }
            }
            columns.push(col);
        }
        let mut matrix = vec![vec![R::zero(); vars.len()]; row_index.len()];
        for (j, col) in columns.into_iter().enumerate() {
            for (r, c) in col {
                matrix[r][j] = c;
            }
        }
        let kernel = R::kernel(&matrix, vars.len());
        Ok(kernel
            .into_iter()
            .map(|v| {
                let mut e = self.zero();
                for (g, c) in vars.iter().zip(v) {
                    e.add_term((*g).clone(), c);
                }
                e
            })
            .collect())
    }

    /// A basis of the whole center, assembled degree by degree.
    pub fn center(&self) -> Result<Vec<AlgebraElement<R>>> {
        let mut out = Vec::new();
        for d in self.degrees().into_iter().rev() {
            out.extend(self.center_in_degree(d)?);
        }
        Ok(out)
    }

    /// Canonical basis of the span of `elements` with respect to the standard basis,
    /// for comparing sublattices exactly.
    pub fn canonical_span(&self, elements: &[AlgebraElement<R>]) -> Vec<Vec<R>> {
        let basis = self.basis();
        let vectors: Vec<Vec<R>> = elements
            .iter()
            .map(|e| basis.iter().map(|g| e.coefficient(g)).collect())
            .collect();
        R::canonical_basis(&vectors, basis.len())
    }
}
