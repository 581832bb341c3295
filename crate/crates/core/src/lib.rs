//! Exact calculus for frame-presented Riemannian manifolds: rational-function
//! scalars, exterior and tensor algebra in an orthonormal moving frame,
//! metric connections with skew torsion, G-structure classification, the
//! metric cone construction and Clifford/spinor computations.
//!
//! All arithmetic is exact over ℚ(i) extended by declared parameter symbols
//! and the radial symbol `r`; every identity the crate verifies is checked
//! to literal zero.

pub mod connection;
pub mod cone;
pub mod frame;
pub mod linalg;
pub mod parallel;
pub mod scalar;
pub mod spin;
pub mod structures;
pub mod tensor;

pub use scalar::{parse_scalar, Context, GaussRat, Param, ParamKind, Scalar, ScalarError};
