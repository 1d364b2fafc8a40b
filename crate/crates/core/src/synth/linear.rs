//! Fixed F2-linear field maps as circuits: multiplication by a
//! constant, squaring, and iterated squaring (a -> a^(2^e)), all
//! realized through the constant-matrix machinery.

use crate::circuit::{Circuit, CircuitBuilder, Reg};
use crate::field::{FieldElement, FieldSpec};
use crate::synth::gadgets;

pub(crate) fn emit_const_mul(
    b: &mut CircuitBuilder,
    field: &FieldSpec,
    c: &FieldElement,
    input: Reg,
    out: Reg,
) {
    let m = field.const_mul_matrix(c);
    let iw: Vec<u32> = input.wires().collect();
    let ow: Vec<u32> = out.wires().collect();
    gadgets::emit_matrix_apply(b, &m, &iw, &ow);
}

pub(crate) fn emit_frobenius(
    b: &mut CircuitBuilder,
    field: &FieldSpec,
    e: usize,
    input: Reg,
    out: Reg,
) {
    let m = field.frobenius_matrix(e);
    let iw: Vec<u32> = input.wires().collect();
    let ow: Vec<u32> = out.wires().collect();
    gadgets::emit_matrix_apply(b, &m, &iw, &ow);
}

fn standalone(field: &FieldSpec, emit: impl FnOnce(&mut CircuitBuilder, Reg, Reg)) -> Circuit {
    let n = field.n();
    let mut b = CircuitBuilder::new();
    b.annotate(format!("field {}", field.describe()));
    let input = b.named("in", n);
    let out = b.named("out", n);
    emit(&mut b, input, out);
    b.finish()
}

/// out ^= c * in for the fixed constant c.
pub fn const_mul_circuit(field: &FieldSpec, c: &FieldElement) -> Circuit {
    standalone(field, |b, input, out| emit_const_mul(b, field, c, input, out))
}

/// out ^= in^2.
pub fn square_circuit(field: &FieldSpec) -> Circuit {
    standalone(field, |b, input, out| emit_frobenius(b, field, 1, input, out))
}

/// out ^= in^(2^e).
pub fn frobenius_circuit(field: &FieldSpec, e: usize) -> Circuit {
    standalone(field, |b, input, out| emit_frobenius(b, field, e, input, out))
}
