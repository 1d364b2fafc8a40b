//! Gate-level synthesis of log-depth GF(2^n) arithmetic, complete binary
//! Edwards curve adders, and the parallelized double-and-add pipeline for
//! the discrete-log instance of Shor's algorithm, with bit-exact
//! verification against classical oracles.

// Explicit index loops mirror the row/column math in the matrix and
// convolution code; iterator rewrites obscure the indexing.
#![allow(clippy::needless_range_loop)]

mod bits;

pub mod bitmat;
pub mod circuit;
pub mod curve;
pub mod estimate;
pub mod field;
pub mod sim;
pub mod synth;
pub mod verify;

pub use bitmat::BitMatrix;
pub use circuit::{Circuit, CircuitBuilder, Gate, ResourceReport};
pub use curve::{AffinePoint, CurveSpec, ProjectivePoint, ToyCurve};
pub use field::{FieldElement, FieldSpec};
