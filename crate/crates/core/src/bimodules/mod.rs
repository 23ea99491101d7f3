//! Flat tangles, their bimodules over the arc algebras, and the one-sided
//! splitting maps `λ^L`, `λ^R`.

mod lambda;
mod module;
mod tangle;

pub use lambda::{
    find_witness, verify_bimodule, BimoduleReport, BimoduleTensor, MapChecks, SideSplitting, TensorCombination,
    Witness,
};
pub use module::{Bimodule, BimoduleElement, BimoduleGenerator, Side};
pub use tangle::{glue_tangle, Endpoint, FlatTangle, TangleDiagram};
