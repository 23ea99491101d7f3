use super::{AlgebraElement, ArcAlgebra, Generator, Labeling};
use crate::diagrams::cobordism_components;
use crate::error::{Error, Result};
use crate::rings::{Coefficient, Label};

impl<R: Coefficient> ArcAlgebra<R> {
    /// Product computed from the topology of `Σ_{a,b,c}` instead of saddle replay.
    ///
    /// A labeling `w` of `a!c` appears exactly when every connected component of
    /// genus `g` satisfies `#x(incoming) + #1(outgoing) + g = 1`; the coefficient
    /// is `2^G` for `G` the total genus. Each handle acts as multiplication by `2x`,
    /// so in characteristic 2 only genus-0 surfaces contribute.
    pub fn multiply_oracle(&self, g: &Generator, h: &Generator) -> Result<AlgebraElement<R>> {
        if self.frobenius().is_deformed() {
            return Err(Error::OracleUndefined);
        }
        self.check_generator(g)?;
        self.check_generator(h)?;
        let mut out = self.zero();
        if g.right() != h.left() {
            return Ok(out);
        }
        let cob = cobordism_components(g.left(), g.right(), h.right())?;
        if cob.components.iter().any(|c| c.genus > 1) {
            return Ok(out);
        }
        let total_genus: usize = cob.components.iter().map(|c| c.genus).sum();
        let coeff = R::from_int(1 << total_genus);
        if coeff.is_zero() {
            return Ok(out);
        }
        let mut incoming_x = vec![0usize; cob.components.len()];
        for (k, &comp) in cob.incoming_left.iter().enumerate() {
            if g.labeling().get(k) == Label::X {
                incoming_x[comp] += 1;
            }
        }
        for (k, &comp) in cob.incoming_right.iter().enumerate() {
            if h.labeling().get(k) == Label::X {
                incoming_x[comp] += 1;
            }
        }
        for w in Labeling::all(cob.target.num_circles()) {
            if self.is_reduced() && w.get(0) == Label::X {
                continue;
            }
            let mut score: Vec<usize> = incoming_x.iter().zip(&cob.components).map(|(x, c)| x + c.genus).collect();
            for (k, &comp) in cob.outgoing.iter().enumerate() {
                if w.get(k) == Label::One {
                    score[comp] += 1;
                }
            }
            if score.iter().all(|&s| s == 1) {
                let gen = Generator::from_labeling(g.left().clone(), h.right().clone(), w, self.is_reduced())?;
                out.add_term(gen, coeff.clone());
            }
        }
        Ok(out)
    }
}
