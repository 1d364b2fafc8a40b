//! Double scalar multiplication |k>|l>|0> -> |k>|l>|kP + lQ> in three
//! organizations: sequential right-to-left, sequential left-to-right
//! (Shamir's trick, processing both scalars per doubling), and the
//! parallelized binary tree of point adders. The constant points 2^i P
//! and 2^i Q are computed classically and baked into conditional-copy
//! CNOT patterns.

use crate::circuit::{Circuit, CircuitBuilder, Reg};
use crate::curve::{AffinePoint, CurveSpec};
use crate::synth::gadgets;
use crate::synth::point::{emit_point_add, PointRegs};
use crate::synth::UncomputeMode;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DsaVariant {
    RightToLeft,
    LeftToRight,
    Tree,
}

impl DsaVariant {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "dsa-r2l" => Some(DsaVariant::RightToLeft),
            "dsa-l2r" => Some(DsaVariant::LeftToRight),
            "dsa-tree" => Some(DsaVariant::Tree),
            _ => None,
        }
    }
}

/// Structural data about an emitted double-and-add circuit.
#[derive(Clone, Copy, Debug, Default)]
pub struct DsaInfo {
    /// Generic point-adder instances.
    pub adder_count: usize,
    /// Depth of the adder dependency structure in adder layers
    /// (tree variant only; sequential variants chain linearly).
    pub adder_layers: usize,
    /// ASAP depth of the leaf/accumulator initialization prefix.
    pub init_depth: u32,
}

/// Sets a scratch point register to `value` when the control wire is 1
/// and to the identity (0,0,1) when it is 0. The Z wire is set
/// unconditionally since both cases have Z = 1. Control fan-out copies
/// are allocated fresh and cleaned immediately after use.
fn emit_conditional_point(
    b: &mut CircuitBuilder,
    ctrl: u32,
    value: &AffinePoint,
    target: PointRegs,
) {
    let n = value.x.n();
    let set_bits: Vec<u32> = (0..n)
        .filter(|&i| value.x.bit(i))
        .map(|i| target.x.idx(i))
        .chain((0..n).filter(|&i| value.y.bit(i)).map(|i| target.y.idx(i)))
        .collect();
    if !set_bits.is_empty() {
        let copies = b.fresh(set_bits.len() - 1);
        let copy_wires: Vec<u32> = copies.wires().collect();
        gadgets::emit_fanout(b, ctrl, &copy_wires);
        b.cx(ctrl, set_bits[0]);
        for (i, &w) in set_bits[1..].iter().enumerate() {
            b.cx(copy_wires[i], w);
        }
        gadgets::emit_unfanout(b, ctrl, &copy_wires);
    }
    b.x(target.z.idx(0));
}

/// Precomputed doublings value, 2*value, 4*value, ... (count entries).
fn doublings(curve: &CurveSpec, value: &AffinePoint, count: usize) -> Vec<AffinePoint> {
    let mut out = Vec::with_capacity(count);
    let mut acc = value.clone();
    for _ in 0..count {
        out.push(acc.clone());
        acc = curve.affine_add(&acc, &acc).expect("complete curve");
    }
    out
}

/// Right-to-left organization: one accumulator, a conditional constant
/// addition per scalar bit, all k bits then all l bits. Emits
/// 2*(n+1) adder instances chained sequentially.
pub fn emit_dsa_r2l(
    b: &mut CircuitBuilder,
    curve: &CurveSpec,
    p: &AffinePoint,
    q: &AffinePoint,
    k_reg: Reg,
    l_reg: Reg,
    mode: UncomputeMode,
) -> (PointRegs, DsaInfo) {
    let n = curve.n();
    let m = n + 1;
    assert_eq!(k_reg.len as usize, m);
    assert_eq!(l_reg.len as usize, m);
    let p_pows = doublings(curve, p, m);
    let q_pows = doublings(curve, q, m);

    let init_start = b.mark();
    let mut acc = PointRegs::alloc(b, n);
    b.x(acc.z.idx(0)); // accumulator starts at the identity
    let init_end = b.mark();
    let mut count = 0;
    for (reg, pows) in [(k_reg, &p_pows), (l_reg, &q_pows)] {
        for i in 0..m {
            let scratch = PointRegs::alloc(b, n);
            emit_conditional_point(b, reg.idx(i), &pows[i], scratch);
            let next = PointRegs::alloc(b, n);
            emit_point_add(b, curve, acc, scratch, next, mode);
            acc = next;
            count += 1;
        }
    }
    let info = DsaInfo {
        adder_count: count,
        adder_layers: count,
        init_depth: b.depth_of_range(init_start, init_end),
    };
    (acc, info)
}

/// Left-to-right organization (Shamir's trick): process both scalars
/// top bit first; one doubling per remaining bit position plus up to
/// two conditional additions of the fixed points P and Q per position.
pub fn emit_dsa_l2r(
    b: &mut CircuitBuilder,
    curve: &CurveSpec,
    p: &AffinePoint,
    q: &AffinePoint,
    k_reg: Reg,
    l_reg: Reg,
    mode: UncomputeMode,
) -> (PointRegs, DsaInfo) {
    let n = curve.n();
    let m = n + 1;
    assert_eq!(k_reg.len as usize, m);
    assert_eq!(l_reg.len as usize, m);

    let init_start = b.mark();
    let mut acc = PointRegs::alloc(b, n);
    b.x(acc.z.idx(0));
    let init_end = b.mark();
    let mut count = 0;
    for i in (0..m).rev() {
        if i < m - 1 {
            // doubling via the generic adder on aliased inputs
            let next = PointRegs::alloc(b, n);
            emit_point_add(b, curve, acc, acc, next, mode);
            acc = next;
            count += 1;
        }
        for (reg, pt) in [(k_reg, p), (l_reg, q)] {
            let scratch = PointRegs::alloc(b, n);
            emit_conditional_point(b, reg.idx(i), pt, scratch);
            let next = PointRegs::alloc(b, n);
            emit_point_add(b, curve, acc, scratch, next, mode);
            acc = next;
            count += 1;
        }
    }
    let info = DsaInfo {
        adder_count: count,
        adder_layers: count,
        init_depth: b.depth_of_range(init_start, init_end),
    };
    (acc, info)
}

/// Parallelized organization: initialize 2N leaves (N = n+1 padded to a
/// power of two) to k_i * 2^i P and l_j * 2^j Q in one shallow layer,
/// then reduce pairwise through a balanced binary tree of adders. The
/// adder structure has ceil(log2(n+1)) + 1 levels when no padding is
/// needed, and 2N - 1 adder instances.
pub fn emit_dsa_tree(
    b: &mut CircuitBuilder,
    curve: &CurveSpec,
    p: &AffinePoint,
    q: &AffinePoint,
    k_reg: Reg,
    l_reg: Reg,
    mode: UncomputeMode,
) -> (PointRegs, DsaInfo) {
    let n = curve.n();
    let m = n + 1;
    assert_eq!(k_reg.len as usize, m);
    assert_eq!(l_reg.len as usize, m);
    let leaves_per_side = m.next_power_of_two();
    let p_pows = doublings(curve, p, m);
    let q_pows = doublings(curve, q, m);

    let init_start = b.mark();
    let mut level: Vec<PointRegs> = Vec::with_capacity(2 * leaves_per_side);
    for (reg, pows) in [(k_reg, &p_pows), (l_reg, &q_pows)] {
        for i in 0..leaves_per_side {
            let leaf = PointRegs::alloc(b, n);
            if i < m {
                emit_conditional_point(b, reg.idx(i), &pows[i], leaf);
            } else {
                b.x(leaf.z.idx(0)); // padding leaf holds the identity
            }
            level.push(leaf);
        }
    }
    let init_end = b.mark();

    let mut count = 0;
    let mut layers = 0;
    while level.len() > 1 {
        let mut next_level = Vec::with_capacity(level.len() / 2);
        for pair in level.chunks(2) {
            let out = PointRegs::alloc(b, n);
            emit_point_add(b, curve, pair[0], pair[1], out, mode);
            next_level.push(out);
            count += 1;
        }
        level = next_level;
        layers += 1;
    }
    let info = DsaInfo {
        adder_count: count,
        adder_layers: layers,
        init_depth: b.depth_of_range(init_start, init_end),
    };
    (level[0], info)
}

#[allow(clippy::too_many_arguments)]
pub fn emit_dsa(
    b: &mut CircuitBuilder,
    variant: DsaVariant,
    curve: &CurveSpec,
    p: &AffinePoint,
    q: &AffinePoint,
    k_reg: Reg,
    l_reg: Reg,
    mode: UncomputeMode,
) -> (PointRegs, DsaInfo) {
    match variant {
        DsaVariant::RightToLeft => emit_dsa_r2l(b, curve, p, q, k_reg, l_reg, mode),
        DsaVariant::LeftToRight => emit_dsa_l2r(b, curve, p, q, k_reg, l_reg, mode),
        DsaVariant::Tree => emit_dsa_tree(b, curve, p, q, k_reg, l_reg, mode),
    }
}

/// Standalone circuit with named registers k, l, accx/accy/accz.
pub fn dsa_circuit(
    variant: DsaVariant,
    curve: &CurveSpec,
    p: &AffinePoint,
    q: &AffinePoint,
    mode: UncomputeMode,
) -> (Circuit, DsaInfo) {
    let m = curve.n() + 1;
    let mut b = CircuitBuilder::new();
    b.annotate(format!("curve {}", curve.describe()));
    b.annotate(format!("base-point x=0x{} y=0x{}", p.x.to_hex(), p.y.to_hex()));
    b.annotate(format!("second-point x=0x{} y=0x{}", q.x.to_hex(), q.y.to_hex()));
    let k_reg = b.named("k", m);
    let l_reg = b.named("l", m);
    let (acc, info) = emit_dsa(&mut b, variant, curve, p, q, k_reg, l_reg, mode);
    b.alias_register("accx", acc.x);
    b.alias_register("accy", acc.y);
    b.alias_register("accz", acc.z);
    (b.finish(), info)
}
