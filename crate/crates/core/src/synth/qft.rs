//! Banded approximate quantum Fourier transform: the textbook H plus
//! controlled-phase ladder with rotations beyond a cutoff band dropped,
//! and the final bit-reversal done with CNOT-triple swaps. Depth is the
//! measured depth of this standard construction, not a rewritten
//! log-depth variant.

use crate::circuit::{Circuit, CircuitBuilder, Reg};

/// Default phase cutoff for target error epsilon on m qubits.
pub fn default_band(m: usize, epsilon: f64) -> u32 {
    let logm = (m as f64).log2().ceil().max(0.0) as u32;
    let logeps = (1.0 / epsilon).log2().ceil().max(0.0) as u32;
    logm + logeps
}

/// Emits the Fourier transform of the register (bit i weighted 2^i)
/// onto itself, keeping only controlled phases with k <= band.
pub fn emit_aqft(b: &mut CircuitBuilder, reg: Reg, band: u32) {
    let m = reg.len as usize;
    for i in (0..m).rev() {
        b.h(reg.idx(i));
        for j in (0..i).rev() {
            let k = (i - j + 1) as u32;
            if k <= band {
                b.cphase(reg.idx(j), reg.idx(i), k);
            }
        }
    }
    // bit reversal, each swap as three CNOTs
    for i in 0..m / 2 {
        let (a, c) = (reg.idx(i), reg.idx(m - 1 - i));
        b.cx(a, c);
        b.cx(c, a);
        b.cx(a, c);
    }
}

/// Standalone AQFT circuit on register q.
pub fn aqft_circuit(m: usize, band: u32) -> Circuit {
    assert!(m >= 1);
    let mut b = CircuitBuilder::new();
    b.annotate(format!("aqft m={m} band={band}"));
    let reg = b.named("q", m);
    emit_aqft(&mut b, reg, band);
    b.finish()
}
