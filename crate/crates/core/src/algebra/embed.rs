use super::{AlgebraElement, Generator};
use crate::error::{Error, Result};
use crate::rings::Coefficient;

/// Includes an element of a smaller arc algebra into the algebra on `2n` points by
/// stacking caps `(2i-1, 2i)` above every diagram and labeling the new circles `1`.
pub fn stack_embed<R: Coefficient>(e: &AlgebraElement<R>, n: usize) -> Result<AlgebraElement<R>> {
    if n <= e.n() {
        return Err(Error::SizeMismatch(format!(
            "cannot embed the algebra on {} points into the one on {} points",
            2 * e.n(),
            2 * n
        )));
    }
    let extra = n - e.n();
    let mut out = AlgebraElement::zero(n, e.is_reduced());
    for (g, c) in e.terms() {
        // New caps sit above every existing point, so their circles sort last.
        let stacked = Generator::from_labeling(
            g.left().stacked(n)?,
            g.right().stacked(n)?,
            g.labeling().extended(extra),
            g.is_reduced(),
        )?;
        out.add_term(stacked, c.clone());
    }
    Ok(out)
}
