//! CNOT tree gadgets: logarithmic-depth fan-out, XOR folds, parity
//! trees, and constant F2 matrix application. All trees are
//! left-balanced with ties broken toward lower indices, so synthesis is
//! deterministic.

use crate::bitmat::BitMatrix;
use crate::circuit::{Circuit, CircuitBuilder, Reg};

/// CNOT schedule copying `src` onto the zeroed wires in `copies` by
/// repeated doubling: every wire already holding the bit seeds another
/// copy per round, so the depth is ceil(log2(m+1)) for m copies.
pub(crate) fn fanout_schedule(src: u32, copies: &[u32]) -> Vec<(u32, u32)> {
    let mut holders = vec![src];
    let mut sched = Vec::with_capacity(copies.len());
    let mut next = 0;
    while next < copies.len() {
        let round = holders.len().min(copies.len() - next);
        for i in 0..round {
            sched.push((holders[i], copies[next + i]));
        }
        holders.extend_from_slice(&copies[next..next + round]);
        next += round;
    }
    sched
}

/// CNOT schedule folding the XOR of all wires into wires[0] by pairwise
/// halving; depth ceil(log2 m).
pub(crate) fn fold_schedule(wires: &[u32]) -> Vec<(u32, u32)> {
    let mut sched = Vec::new();
    let mut stride = 1;
    while stride < wires.len() {
        let mut i = 0;
        while i + stride < wires.len() {
            sched.push((wires[i + stride], wires[i]));
            i += 2 * stride;
        }
        stride *= 2;
    }
    sched
}

pub(crate) fn emit_cnots(b: &mut CircuitBuilder, sched: &[(u32, u32)]) {
    for &(c, t) in sched {
        b.cx(c, t);
    }
}

pub(crate) fn emit_cnots_rev(b: &mut CircuitBuilder, sched: &[(u32, u32)]) {
    for &(c, t) in sched.iter().rev() {
        b.cx(c, t);
    }
}

/// Copies `src` onto `copies` (all |0>) in a fan-out tree.
pub(crate) fn emit_fanout(b: &mut CircuitBuilder, src: u32, copies: &[u32]) {
    emit_cnots(b, &fanout_schedule(src, copies));
}

/// Inverse of [`emit_fanout`]: returns `copies` to |0>.
pub(crate) fn emit_unfanout(b: &mut CircuitBuilder, src: u32, copies: &[u32]) {
    emit_cnots_rev(b, &fanout_schedule(src, copies));
}

/// XORs the parity of `sources` into `target`, restoring the sources:
/// fold, one CNOT into the target, unfold.
pub(crate) fn emit_parity_into(b: &mut CircuitBuilder, sources: &[u32], target: u32) {
    if sources.is_empty() {
        return;
    }
    let sched = fold_schedule(sources);
    emit_cnots(b, &sched);
    b.cx(sources[0], target);
    emit_cnots_rev(b, &sched);
}

/// out ^= A * input over F2, input restored, internal fan-out copies
/// returned to |0>. Identity matrices elide to a single CNOT layer.
/// `input` and `out` must be disjoint wire sets.
pub(crate) fn emit_matrix_apply(
    b: &mut CircuitBuilder,
    a: &BitMatrix,
    input: &[u32],
    out: &[u32],
) {
    assert_eq!(a.cols(), input.len());
    assert_eq!(a.rows(), out.len());
    if a.rows() == a.cols() && a.is_identity() {
        for (i, &src) in input.iter().enumerate() {
            b.cx(src, out[i]);
        }
        return;
    }
    // One wire per set matrix entry: column j supplies its original
    // wire for the first set row and fresh copies for the rest, so the
    // per-row folds act on disjoint wires and can all run in parallel.
    let mut col_copies: Vec<Reg> = Vec::with_capacity(a.cols());
    for j in 0..a.cols() {
        let w = a.col_weight(j);
        col_copies.push(b.fresh(w.saturating_sub(1)));
    }
    let mut fan_scheds = Vec::new();
    for j in 0..a.cols() {
        if col_copies[j].len > 0 {
            let copies: Vec<u32> = col_copies[j].wires().collect();
            let sched = fanout_schedule(input[j], &copies);
            emit_cnots(b, &sched);
            fan_scheds.push(sched);
        }
    }
    let mut row_scheds = Vec::new();
    let mut used = vec![0usize; a.cols()];
    let mut row_heads = Vec::new();
    for i in 0..a.rows() {
        let mut wires = Vec::new();
        for j in 0..a.cols() {
            if a.get(i, j) {
                let w = if used[j] == 0 {
                    input[j]
                } else {
                    col_copies[j].idx(used[j] - 1)
                };
                used[j] += 1;
                wires.push(w);
            }
        }
        if wires.is_empty() {
            continue;
        }
        let sched = fold_schedule(&wires);
        emit_cnots(b, &sched);
        row_heads.push((wires[0], out[i]));
        row_scheds.push(sched);
    }
    for &(head, target) in &row_heads {
        b.cx(head, target);
    }
    for sched in row_scheds.iter().rev() {
        emit_cnots_rev(b, sched);
    }
    for sched in fan_scheds.iter().rev() {
        emit_cnots_rev(b, sched);
    }
}

/// XORs register `src` into register `dst` wire by wire (field
/// addition); registers must have equal length and be disjoint.
pub(crate) fn emit_xor_reg(b: &mut CircuitBuilder, src: Reg, dst: Reg) {
    assert_eq!(src.len, dst.len);
    for i in 0..src.len as usize {
        b.cx(src.idx(i), dst.idx(i));
    }
}

/// Standalone fan-out tree circuit on m+1 wires: |x>|0..0> -> |x>|x..x>.
pub fn fanout_tree(m: usize) -> Circuit {
    assert!(m >= 1);
    let mut b = CircuitBuilder::new();
    let src = b.named("src", 1);
    let copies = b.named("copies", m);
    let targets: Vec<u32> = copies.wires().collect();
    emit_fanout(&mut b, src.idx(0), &targets);
    b.finish()
}

/// Standalone parity tree circuit on m+1 wires: target ^= XOR of the m
/// sources, sources restored.
pub fn parity_tree(m: usize) -> Circuit {
    assert!(m >= 1);
    let mut b = CircuitBuilder::new();
    let src = b.named("src", m);
    let target = b.named("target", 1);
    let sources: Vec<u32> = src.wires().collect();
    emit_parity_into(&mut b, &sources, target.idx(0));
    b.finish()
}

/// Standalone constant-matrix circuit: out ^= A * in.
pub fn const_matrix_mul(a: &BitMatrix) -> Circuit {
    let mut b = CircuitBuilder::new();
    let input = b.named("in", a.cols());
    let out = b.named("out", a.rows());
    let iw: Vec<u32> = input.wires().collect();
    let ow: Vec<u32> = out.wires().collect();
    emit_matrix_apply(&mut b, a, &iw, &ow);
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::layered_depth;
    use crate::sim::basis_sim;

    #[test]
    fn fanout_depth_and_count() {
        for m in [1usize, 2, 3, 7, 8, 20] {
            let c = fanout_tree(m);
            let rep = c.report();
            assert_eq!(rep.counts.cnot as usize, m, "m={m}");
            assert_eq!(rep.depth, ((m + 1) as f64).log2().ceil() as u32, "m={m}");
            for x in [false, true] {
                let mut init = vec![false; c.width as usize];
                init[0] = x;
                let out = basis_sim(&c, &init).unwrap();
                assert!(out.iter().all(|&b| b == x));
            }
        }
    }

    #[test]
    fn parity_tree_depth_and_semantics() {
        for m in [1usize, 2, 5, 8] {
            let c = parity_tree(m);
            let logm = (m as f64).log2().ceil() as u32;
            assert!(c.report().depth <= 2 * logm + 1, "m={m}");
            for pattern in 0..1u32 << m {
                let mut init = vec![false; m + 1];
                for i in 0..m {
                    init[i] = pattern >> i & 1 == 1;
                }
                let out = basis_sim(&c, &init).unwrap();
                assert_eq!(out[m], pattern.count_ones() % 2 == 1);
                assert_eq!(&out[..m], &init[..m], "sources must be restored");
            }
        }
    }

    #[test]
    fn parity_tree_m8_compute_phase_depth_3() {
        let sched = fold_schedule(&[0, 1, 2, 3, 4, 5, 6, 7]);
        let gates: Vec<_> = sched
            .iter()
            .map(|&(c, t)| crate::circuit::Gate::Cnot { c, t })
            .collect();
        assert_eq!(layered_depth(8, &gates).0, 3);
    }

    #[test]
    fn matrix_apply_identity_elides() {
        let c = const_matrix_mul(&BitMatrix::identity(6));
        assert_eq!(c.report().depth, 1);
        assert_eq!(c.width, 12);
    }

    #[test]
    fn matrix_apply_matches_classical_product() {
        // deterministic pseudo-random matrices over a few shapes
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for (rows, cols) in [(3usize, 3usize), (4, 6), (6, 4), (8, 8), (1, 8)] {
            let mut a = BitMatrix::zero(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    a.set(i, j, next() & 1 == 1);
                }
            }
            let c = const_matrix_mul(&a);
            for trial in 0..32u64 {
                let x = next() >> 8;
                let _ = trial;
                let mut init = vec![false; c.width as usize];
                for j in 0..cols {
                    init[j] = x >> j & 1 == 1;
                }
                let out = basis_sim(&c, &init).unwrap();
                let mut xv = vec![0u64; 1];
                xv[0] = x & ((1 << cols) - 1);
                let want = a.mul_vec(&xv);
                for i in 0..rows {
                    assert_eq!(out[cols + i], want[0] >> i & 1 == 1, "row {i}");
                }
                // input restored, ancillae clean
                assert_eq!(&out[..cols], &init[..cols]);
                assert!(out[cols + rows..].iter().all(|&b| !b));
            }
        }
    }

    #[test]
    fn all_ones_row_has_log_depth_core() {
        let mut a = BitMatrix::zero(1, 8);
        for j in 0..8 {
            a.set(0, j, true);
        }
        let c = const_matrix_mul(&a);
        // fold depth 3 + final CNOT + unfold 3
        assert!(c.report().depth <= 7);
    }
}
