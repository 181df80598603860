//! Exact computations with graded quiver algebras: presentations and
//! truncated Gröbner bases, trivial extensions and superpotential algebras,
//! minimal graded resolutions, Serre-twist orbits, bigraded Ext tables with
//! Koszul-type duals, and center finiteness analysis.
//!
//! All arithmetic is exact: rationals of arbitrary size or prime fields.

pub mod error;
pub mod scalar;
pub mod quiver;
pub mod elem;
pub mod matrix;
pub mod order;
pub mod gb;
pub mod algebra;
pub mod present;
pub mod potential;
pub mod dimer;
pub mod rep;
pub mod complex;
pub mod resolve;
pub mod nakayama;
pub mod gdata;
pub mod preproj;
pub mod koszul;
pub mod center;

pub use error::{Inconclusive, KernelError, ParameterError, StageExt, StructuralError};
pub use scalar::{Characteristic, Scalar};
pub use quiver::{Arrow, ArrowGrading, ArrowId, Path, Quiver, VertexId};
pub use elem::PathElement;
pub use matrix::{Matrix, RowSpace};
