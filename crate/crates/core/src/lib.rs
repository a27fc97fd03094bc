//! Computational toolkit for the New-Stein Lie algebra and group.
//!
//! * [`lie`]: exact structure-constant engine (brackets, Jacobi, adjoint,
//!   centralizers, definition files).
//! * [`algebras`]: the 51-dimensional algebra, its two-dimensional-internal
//!   variant, the `K` extensions and small reference algebras.
//! * [`cohomology`]: Chevalley-Eilenberg cohomology by exact and modular rank.
//! * [`extensions`]: classification of the invariant extensions.
//! * [`group`]: group law, covering-group representations and sections.
//! * [`oscillator`] and [`induced`]: the induced unitary representation on a
//!   truncated oscillator basis.

pub mod algebras;
pub mod cohomology;
pub mod error;
pub mod extensions;
pub mod group;
pub mod induced;
pub mod lie;
pub mod linalg;
pub mod oscillator;
pub mod sparse;
pub mod verify;

pub use error::{Error, Result};
pub use lie::{AlgebraElement, BasisLabel, LieAlgebra, Scalar};
