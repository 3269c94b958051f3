//! Exact verification toolkit for the totally nonnegative Peterson variety.
//!
//! The crate builds, in exact rational arithmetic wherever the underlying
//! identities are polynomial, every object on the path
//!
//! ```text
//! Y_{>=0}  --psi-->  X(Sigma)_{>=0}  --moment map-->  P_{n-1}  --f-->  [0,1]^{n-1}
//! ```
//!
//! and checks the combinatorial and topological claims about them on
//! desk-scale instances (`n <= 6`).
//!
//! Module map:
//!
//! * [`linalg`] dense matrices over [`Rational`] or `f64`, minors, `Δ_i`, `q_i`
//!   and the Whitney total-nonnegativity test.
//! * [`weyl`] subsets `J ⊆ [n-1]`, block partitions, permutations, reduced
//!   words and the pinned representatives `ẇ`.
//! * [`fan`] the simplicial fan Σ and cone membership.
//! * [`polytope`] the polytope `P_{n-1}`, its faces, and the face-preserving
//!   homeomorphism onto the cube.
//! * [`toric`] points of the toric quotient, canonical nonnegative forms and
//!   the moment map.
//! * [`peterson`] J-Toeplitz points of the Peterson variety, the map Ψ and the
//!   numeric inverse of the Toeplitz minor map.
//! * [`verify`] batch verification suites and reports.

pub mod error;
pub mod fan;
pub mod json;
pub mod linalg;
pub mod par;
pub mod peterson;
pub mod polytope;
pub mod scalar;
pub mod toric;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use linalg::{ExactMatrix, Matrix, MinorIndex};
pub use scalar::{Rational, Scalar};
pub use weyl::SubsetJ;
