//! Log-depth GF(2^n) multiplier built from the Toeplitz decomposition
//! of the product: one parallel layer of n^2 Toffolis produces every
//! partial product alpha_i * beta_j, balanced CNOT trees fold the
//! convolution diagonals, and the fixed reduction matrix folds the high
//! coefficients back into the result.

use crate::circuit::{Circuit, CircuitBuilder, Reg};
use crate::field::FieldSpec;
use crate::synth::gadgets;
use crate::synth::UncomputeMode;

/// Emits out ^= a * b (field product) into the builder. The forward
/// pass uses exactly n^2 Toffolis; in garbage mode the internal copies
/// and partial products stay dirty, in Bennett mode the whole pass is
/// replayed in reverse around a CNOT copy so every ancilla ends |0>.
///
/// `a` and `b` may alias (squaring via the general multiplier); `out`
/// must be disjoint from both.
pub fn emit_mul(
    b: &mut CircuitBuilder,
    field: &FieldSpec,
    a_reg: Reg,
    b_reg: Reg,
    out: Reg,
    mode: UncomputeMode,
) {
    let n = field.n();
    assert_eq!(a_reg.len as usize, n);
    assert_eq!(b_reg.len as usize, n);
    assert_eq!(out.len as usize, n);
    match mode {
        UncomputeMode::Garbage => emit_mul_forward(b, field, a_reg, b_reg, out),
        UncomputeMode::BennettClean => {
            let scratch = b.fresh(n);
            let start = b.mark();
            emit_mul_forward(b, field, a_reg, b_reg, scratch);
            let end = b.mark();
            gadgets::emit_xor_reg(b, scratch, out);
            b.uncompute(start, end);
        }
    }
}

fn emit_mul_forward(b: &mut CircuitBuilder, field: &FieldSpec, a_reg: Reg, b_reg: Reg, out: Reg) {
    let n = field.n();
    // Wire plan for the single Toffoli layer: the partial product
    // p[i][j] = a_i * b_j needs its own copy of each operand bit. The
    // a side uses the original wire plus n-1 copies; the b side uses n
    // fresh copies and leaves the original untouched, which keeps all
    // control wires distinct even when a_reg and b_reg are the same
    // register.
    let a_copies = b.fresh(n * (n - 1));
    let b_copies = b.fresh(n * n);
    for i in 0..n {
        let copies: Vec<u32> = (0..n - 1).map(|c| a_copies.idx(i * (n - 1) + c)).collect();
        if !copies.is_empty() {
            gadgets::emit_fanout(b, a_reg.idx(i), &copies);
        }
    }
    for j in 0..n {
        let copies: Vec<u32> = (0..n).map(|c| b_copies.idx(j * n + c)).collect();
        gadgets::emit_fanout(b, b_reg.idx(j), &copies);
    }
    let a_wire = |i: usize, j: usize| {
        if j == 0 {
            a_reg.idx(i)
        } else {
            a_copies.idx(i * (n - 1) + (j - 1))
        }
    };
    let b_wire = |j: usize, i: usize| b_copies.idx(j * n + i);

    // all n^2 partial products in one Toffoli layer
    let prods = b.fresh(n * n);
    let p_wire = |i: usize, j: usize| prods.idx(i * n + j);
    for i in 0..n {
        for j in 0..n {
            b.ccx(a_wire(i, j), b_wire(j, i), p_wire(i, j));
        }
    }

    // fold each convolution diagonal c_k = sum_{i+j=k} p[i][j]
    let mut high_roots = Vec::new();
    for k in 0..2 * n - 1 {
        let group: Vec<u32> = (0..n)
            .filter(|&i| i <= k && k - i < n)
            .map(|i| p_wire(i, k - i))
            .collect();
        let sched = gadgets::fold_schedule(&group);
        gadgets::emit_cnots(b, &sched);
        if k < n {
            b.cx(group[0], out.idx(k));
        } else {
            high_roots.push(group[0]);
        }
    }

    // reduce the high coefficients: out ^= M * (c_n .. c_{2n-2})
    if n >= 2 {
        let m = field.reduction_matrix();
        let out_wires: Vec<u32> = out.wires().collect();
        gadgets::emit_matrix_apply(b, &m, &high_roots, &out_wires);
    }
}

/// Standalone multiplier circuit with named registers a, b, out.
pub fn mastrovito_mul(field: &FieldSpec, mode: UncomputeMode) -> Circuit {
    let n = field.n();
    let mut b = CircuitBuilder::new();
    b.annotate(format!("field {}", field.describe()));
    let a_reg = b.named("a", n);
    let b_reg = b.named("b", n);
    let out = b.named("out", n);
    emit_mul(&mut b, field, a_reg, b_reg, out, mode);
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldElement, FieldSpec};
    use crate::sim::{basis_sim, load_element, read_element};

    fn run_mul(
        c: &Circuit,
        n: usize,
        a: &FieldElement,
        bb: &FieldElement,
        init_out: &FieldElement,
    ) -> (FieldElement, Vec<bool>) {
        let a_reg = c.register("a").unwrap();
        let b_reg = c.register("b").unwrap();
        let out_reg = c.register("out").unwrap();
        let to_reg = |r: &crate::circuit::Register| Reg { start: r.start, len: r.len };
        let mut state = vec![false; c.width as usize];
        load_element(&mut state, to_reg(a_reg), a);
        load_element(&mut state, to_reg(b_reg), bb);
        load_element(&mut state, to_reg(out_reg), init_out);
        let final_state = basis_sim(c, &state).unwrap();
        let got = read_element(&final_state, to_reg(out_reg));
        let _ = n;
        (got, final_state)
    }

    #[test]
    fn toffoli_count_is_n_squared() {
        for n in [1usize, 2, 3, 5, 8] {
            let field = FieldSpec::with_default_modulus(n).unwrap();
            let garbage = mastrovito_mul(&field, UncomputeMode::Garbage);
            assert_eq!(garbage.report().counts.toffoli, (n * n) as u64, "n={n}");
            let clean = mastrovito_mul(&field, UncomputeMode::BennettClean);
            assert_eq!(clean.report().counts.toffoli, 2 * (n * n) as u64, "n={n}");
        }
    }

    #[test]
    fn single_toffoli_layer() {
        for n in [2usize, 3, 4, 8] {
            let field = FieldSpec::with_default_modulus(n).unwrap();
            let c = mastrovito_mul(&field, UncomputeMode::Garbage);
            assert_eq!(c.report().toffoli_depth, 1, "n={n}");
        }
    }

    #[test]
    fn exhaustive_small_fields_both_modes() {
        for n in [1usize, 2, 3, 4] {
            let field = FieldSpec::with_default_modulus(n).unwrap();
            for mode in [UncomputeMode::Garbage, UncomputeMode::BennettClean] {
                let c = mastrovito_mul(&field, mode);
                for ai in 0..1u64 << n {
                    for bi in 0..1u64 << n {
                        let a = FieldElement::from_index(n, ai);
                        let bb = FieldElement::from_index(n, bi);
                        let want = field.mul_schoolbook(&a, &bb).unwrap();
                        let (got, state) =
                            run_mul(&c, n, &a, &bb, &FieldElement::zero(n));
                        assert_eq!(got, want, "n={n} a={a} b={bb} mode={mode:?}");
                        if mode == UncomputeMode::BennettClean {
                            assert!(
                                state[3 * n..].iter().all(|&x| !x),
                                "dirty ancilla n={n} a={a} b={bb}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn xor_accumulates_into_out() {
        let n = 3;
        let field = FieldSpec::with_default_modulus(n).unwrap();
        let c = mastrovito_mul(&field, UncomputeMode::BennettClean);
        for ai in 0..8 {
            for bi in 0..8 {
                for ci in 0..8 {
                    let a = FieldElement::from_index(n, ai);
                    let bb = FieldElement::from_index(n, bi);
                    let init = FieldElement::from_index(n, ci);
                    let want = field
                        .add(&init, &field.mul_schoolbook(&a, &bb).unwrap())
                        .unwrap();
                    let (got, _) = run_mul(&c, n, &a, &bb, &init);
                    assert_eq!(got, want, "a={a} b={bb} c={init}");
                }
            }
        }
    }

    #[test]
    fn aliased_operands_square() {
        let n = 4;
        let field = FieldSpec::with_default_modulus(n).unwrap();
        let mut b = CircuitBuilder::new();
        let a_reg = b.named("a", n);
        let out = b.named("out", n);
        emit_mul(&mut b, &field, a_reg, a_reg, out, UncomputeMode::BennettClean);
        let c = b.finish();
        for ai in 0..16 {
            let a = FieldElement::from_index(n, ai);
            let mut state = vec![false; c.width as usize];
            load_element(&mut state, a_reg, &a);
            let final_state = basis_sim(&c, &state).unwrap();
            let got = read_element(&final_state, out);
            assert_eq!(got, field.square(&a), "a={a}");
            assert_eq!(read_element(&final_state, a_reg), a, "input clobbered");
        }
    }

    #[test]
    fn multiply_by_one_copies() {
        let n = 8;
        let field = FieldSpec::with_default_modulus(n).unwrap();
        let c = mastrovito_mul(&field, UncomputeMode::BennettClean);
        let one = FieldElement::one(n);
        for ai in [0u64, 1, 77, 200, 255] {
            let a = FieldElement::from_index(n, ai);
            let (got, _) = run_mul(&c, n, &a, &one, &FieldElement::zero(n));
            assert_eq!(got, a);
        }
    }

    #[test]
    fn random_larger_fields() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in [8usize, 16] {
            let field = FieldSpec::with_default_modulus(n).unwrap();
            let c = mastrovito_mul(&field, UncomputeMode::BennettClean);
            for _ in 0..50 {
                let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
                let a = FieldElement::from_index(n, rng.gen::<u64>() & mask);
                let bb = FieldElement::from_index(n, rng.gen::<u64>() & mask);
                let want = field.mul_schoolbook(&a, &bb).unwrap();
                let (got, _) = run_mul(&c, n, &a, &bb, &FieldElement::zero(n));
                assert_eq!(got, want, "n={n} a={a} b={bb}");
            }
        }
    }

    #[test]
    fn depth_grows_additively_per_doubling() {
        let mut prev = None;
        for n in [4usize, 8, 16, 32, 64, 128, 256] {
            let field = FieldSpec::with_default_modulus(n).unwrap();
            let depth = mastrovito_mul(&field, UncomputeMode::Garbage).report().depth;
            if let Some(p) = prev {
                assert!(depth >= p, "depth not monotone at n={n}");
                assert!(depth - p <= 8, "n={n}: jump {} > 8", depth - p);
            }
            prev = Some(depth);
        }
    }
}
