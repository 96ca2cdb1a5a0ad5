//! Exact-arithmetic toolkit for nilpotent Jordan algebras of small dimension:
//! structure tensors over ℚ(i), isomorphism invariants, classification in
//! dimension ≤ 4, contraction limits along Puiseux families, polynomial
//! deformations and the resulting degeneration graphs.

pub mod atlas;
pub mod catalog;
pub mod classify;
pub mod degeneration;
pub mod error;
pub mod format;
pub mod graph;
pub mod invariants;
pub mod matrix;
pub mod mpoly;
pub mod puiseux;
pub mod report;
pub mod ring;
pub mod scalar;
pub mod tensor;
mod rational;
mod text;

pub use atlas::{squaring_map, AtlasEntry};
pub use classify::{classify, classify_real, ClassId};
pub use error::{Error, ParseError, Result};
pub use graph::{build_graph, rigidity_screen, DegenerationGraph};
pub use invariants::{profile, InvariantProfile};
pub use matrix::Matrix;
pub use puiseux::{PuiseuxFrac, PuiseuxPoly};
pub use ring::Ring;
pub use scalar::Scalar;
pub use tensor::{Field, StructureTensor, Vector};
