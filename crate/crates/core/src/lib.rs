//! Exact arc algebras `H_n`, their reduced quotients, and the splitting map
//! `H̃_n ⊗ A → H_n` together with the bimodules of flat tangles.
//!
//! The crate is organized bottom-up:
//!
//! * [`rings`]: coefficient rings and the Frobenius algebra of a circle,
//! * [`diagrams`]: crossingless matchings, circle diagrams and saddle cobordisms,
//! * [`algebra`]: the arc algebras, their multiplication, center and embeddings,
//! * [`splitting`]: the map `λ`, its inverse and the multiplicativity checks,
//! * [`bimodules`]: flat tangles, their bimodules and the maps `λ^L`, `λ^R`,
//! * [`render`]: ASCII and SVG pictures of diagrams,
//! * [`cli`]: the `arcalg` command line.

pub mod algebra;
pub mod bimodules;
pub mod cli;
pub mod diagrams;
pub mod error;
pub mod linalg;
pub mod par;
pub mod render;
pub mod rings;
pub mod splitting;
mod surgery;

pub use algebra::{stack_embed, AlgebraElement, ArcAlgebra, Generator, Labeling};
pub use diagrams::{
    cobordism_components, enumerate_matchings, glue, surgery_sequence, CircleDiagram,
    CobordismComponentStats, Matching, SaddleCobordism, SurgerySite,
};
pub use error::{Error, Result};
pub use par::Execution;
pub use rings::{Coefficient, Frobenius, Label, LabelCombination, ModTwo, Poly, PolyGF2, PolyZ, RingKind, F2};
