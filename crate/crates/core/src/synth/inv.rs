//! Field inversion by the addition-chain exponentiation a -> a^(2^n-2):
//! a short chain of general multiplications interleaved with fixed
//! iterated-squaring maps, giving polylogarithmic depth. Totalized so
//! the zero input maps to zero.

use crate::circuit::{Circuit, CircuitBuilder, Reg};
use crate::field::FieldSpec;
use crate::synth::linear;
use crate::synth::mul;
use crate::synth::UncomputeMode;

#[derive(Clone, Copy, Debug, Default)]
pub struct InvInfo {
    /// General multiplier instances in the forward pass.
    pub mul_count: usize,
}

/// Emits out ^= a^(2^n - 2) into the builder. Under BennettClean the
/// chain intermediates are replayed in reverse after the result copy,
/// returning every ancilla to |0>.
pub fn emit_inverse(
    b: &mut CircuitBuilder,
    field: &FieldSpec,
    a_reg: Reg,
    out: Reg,
    mode: UncomputeMode,
) -> InvInfo {
    let n = field.n();
    assert_eq!(a_reg.len as usize, n);
    assert_eq!(out.len as usize, n);
    if n == 1 {
        // GF(2): the inverse of 1 is 1 and inversion is totalized at 0
        b.cx(a_reg.idx(0), out.idx(0));
        return InvInfo { mul_count: 0 };
    }
    let start = b.mark();
    let (t_final, info) = emit_chain(b, field, a_reg);
    let end = b.mark();
    // result = t^2 where t = a^(2^(n-1) - 1)
    linear::emit_frobenius(b, field, 1, t_final, out);
    if mode == UncomputeMode::BennettClean {
        b.uncompute(start, end);
    }
    info
}

/// Builds a^(2^(n-1) - 1) by the binary addition chain on e = n-1:
/// from t_k = a^(2^k - 1), t_2k = t_k^(2^k) * t_k and t_{k+1} = t_k^2 * a.
/// Inner multiplications run in garbage mode; the caller's Bennett
/// replay cleans the whole chain at once.
fn emit_chain(b: &mut CircuitBuilder, field: &FieldSpec, a_reg: Reg) -> (Reg, InvInfo) {
    let n = field.n();
    let e = n - 1;
    let nbits = usize::BITS - e.leading_zeros();
    let mut t = a_reg; // holds a^(2^len - 1)
    let mut len = 1usize;
    let mut count = 0usize;
    for i in (0..nbits - 1).rev() {
        let f = b.fresh(n);
        linear::emit_frobenius(b, field, len, t, f); // f = t^(2^len)
        let doubled = b.fresh(n);
        mul::emit_mul(b, field, f, t, doubled, UncomputeMode::Garbage);
        count += 1;
        t = doubled;
        len *= 2;
        if (e >> i) & 1 == 1 {
            let sq = b.fresh(n);
            linear::emit_frobenius(b, field, 1, t, sq);
            let stepped = b.fresh(n);
            mul::emit_mul(b, field, sq, a_reg, stepped, UncomputeMode::Garbage);
            count += 1;
            t = stepped;
            len += 1;
        }
    }
    debug_assert_eq!(len, e);
    (t, InvInfo { mul_count: count })
}

/// Standalone inverter circuit with named registers a, out.
pub fn itoh_tsuji_circuit(field: &FieldSpec, mode: UncomputeMode) -> (Circuit, InvInfo) {
    let n = field.n();
    let mut b = CircuitBuilder::new();
    b.annotate(format!("field {}", field.describe()));
    let a_reg = b.named("a", n);
    let out = b.named("out", n);
    let info = emit_inverse(&mut b, field, a_reg, out, mode);
    (b.finish(), info)
}
