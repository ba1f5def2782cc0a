//! Exact cohomology of split extensions `g = n ⋊ h` of Lie algebras.
//!
//! The pipeline: build coefficient rows `Hom_n(F_q, M)` from a resolution of the kernel that
//! carries a compatible `h`-action ([`resolution`]), assemble the double complex
//! `Hom_k(Λ^p h, R^q)` and run the column-filtration spectral sequence page by page
//! ([`specseq`]). The Chevalley–Eilenberg complex ([`cochain`]) is both the default resolution
//! for finite-dimensional kernels and the independent oracle for `H^*(g, M)`.

#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod cochain;
pub mod extension;
pub mod lie;
pub mod linalg;
pub mod resolution;
pub mod specseq;

pub use extension::{CoefficientModule, ExtensionError, KernelAction, SplitExtension};
pub use lie::{DerivationAction, LieAlgebra, LieError, LieModule};
pub use linalg::{Field, FieldElem, LinalgError, Matrix, Subspace};
pub use resolution::{CoefficientRows, KernelSpec};
pub use specseq::{DoubleComplex, SpectralPage, SpectralSequence};
