//! Gate-level synthesizers: CNOT tree gadgets, the log-depth
//! Toeplitz-decomposition multiplier, the addition-chain inverter,
//! complete Edwards point adders, the three double-and-add
//! organizations, projective-to-affine conversion, the banded
//! approximate QFT, and the assembled discrete-log pipeline.

pub mod dsa;
pub mod gadgets;
pub mod inv;
pub mod linear;
pub mod mul;
pub mod point;
pub mod qft;
pub mod shor;

/// Ancilla policy for synthesized subcircuits.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum UncomputeMode {
    /// Compute forward, copy the result out, then run the inverse of
    /// the forward pass so every ancilla returns to |0>.
    #[default]
    BennettClean,
    /// Leave ancillae dirty; minimal depth and gate count, used for
    /// structural resource measurements.
    Garbage,
}

impl UncomputeMode {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "clean" => Some(UncomputeMode::BennettClean),
            "garbage" => Some(UncomputeMode::Garbage),
            _ => None,
        }
    }
}
