//! Complete binary Edwards point adder: the 21-multiplication
//! projective schedule, plus the projective-to-affine conversion built
//! from one inverter and two multipliers.

use crate::circuit::{Circuit, CircuitBuilder, Reg};
use crate::curve::{CurveSpec, FieldOpCounts};
use crate::field::FieldElement;
use crate::synth::gadgets;
use crate::synth::inv;
use crate::synth::linear;
use crate::synth::mul;
use crate::synth::UncomputeMode;

/// The three coordinate registers of a projective point.
#[derive(Clone, Copy, Debug)]
pub struct PointRegs {
    pub x: Reg,
    pub y: Reg,
    pub z: Reg,
}

impl PointRegs {
    pub fn alloc(b: &mut CircuitBuilder, n: usize) -> Self {
        PointRegs { x: b.fresh(n), y: b.fresh(n), z: b.fresh(n) }
    }

    pub fn named(b: &mut CircuitBuilder, prefix: &str, n: usize) -> Self {
        PointRegs {
            x: b.named(format!("{prefix}x"), n),
            y: b.named(format!("{prefix}y"), n),
            z: b.named(format!("{prefix}z"), n),
        }
    }
}

/// Emits out ^= P1 + P2 (a projective representative; out expected
/// |0>). Inputs are preserved; under BennettClean all scratch
/// registers return to |0>. Returns the field-operation census of the
/// instantiated subcircuits, counting each instantiation once.
pub fn emit_point_add(
    b: &mut CircuitBuilder,
    curve: &CurveSpec,
    p1: PointRegs,
    p2: PointRegs,
    out: PointRegs,
    mode: UncomputeMode,
) -> FieldOpCounts {
    let field = curve.field();
    let n = curve.n();
    let mut census = FieldOpCounts::default();
    let inner = UncomputeMode::Garbage; // one Bennett replay cleans all

    let fresh_add =
        |b: &mut CircuitBuilder, census: &mut FieldOpCounts, u: Reg, v: Reg| -> Reg {
            census.add += 1;
            let t = b.fresh(n);
            gadgets::emit_xor_reg(b, u, t);
            gadgets::emit_xor_reg(b, v, t);
            t
        };
    let fresh_mul =
        |b: &mut CircuitBuilder, census: &mut FieldOpCounts, u: Reg, v: Reg| -> Reg {
            census.mul += 1;
            let t = b.fresh(n);
            mul::emit_mul(b, field, u, v, t, inner);
            t
        };
    let fresh_cmul =
        |b: &mut CircuitBuilder, census: &mut FieldOpCounts, k: &FieldElement, u: Reg| -> Reg {
            census.const_mul += 1;
            let t = b.fresh(n);
            linear::emit_const_mul(b, field, k, u, t);
            t
        };

    let start = b.mark();
    let (x1, y1, z1) = (p1.x, p1.y, p1.z);
    let (x2, y2, z2) = (p2.x, p2.y, p2.z);
    let d1 = curve.d1().clone();
    let d2 = curve.d2().clone();

    let w1 = fresh_add(b, &mut census, x1, y1);
    let w2 = fresh_add(b, &mut census, x2, y2);
    let t1 = fresh_add(b, &mut census, x1, z1);
    let t2 = fresh_add(b, &mut census, y1, z1);
    let a = fresh_mul(b, &mut census, x1, t1);
    let bb = fresh_mul(b, &mut census, y1, t2);
    let c = fresh_mul(b, &mut census, z1, z2);
    let d = fresh_mul(b, &mut census, w2, z2);
    census.square += 1;
    let csq = b.fresh(n);
    linear::emit_frobenius(b, field, 1, c, csq);
    let e = fresh_cmul(b, &mut census, &d1, csq);
    let ga = fresh_cmul(b, &mut census, &d1, z2);
    let gb = fresh_cmul(b, &mut census, &d2, w2);
    let g = fresh_add(b, &mut census, ga, gb);
    let hh = fresh_mul(b, &mut census, g, w1);
    let h = fresh_mul(b, &mut census, hh, c);
    let ia = fresh_cmul(b, &mut census, &d1, z1);
    let i = fresh_mul(b, &mut census, ia, c);
    let ad = fresh_mul(b, &mut census, a, d);
    let u = fresh_add(b, &mut census, e, ad);
    let bd = fresh_mul(b, &mut census, bb, d);
    let v = fresh_add(b, &mut census, e, bd);
    let s = fresh_mul(b, &mut census, u, v);

    let sy = fresh_mul(b, &mut census, s, y1);
    let yz2 = fresh_add(b, &mut census, y2, z2);
    let ayz = fresh_mul(b, &mut census, a, yz2);
    let iayz = fresh_add(b, &mut census, i, ayz);
    let x2t = fresh_mul(b, &mut census, x2, iayz);
    let hx = fresh_add(b, &mut census, h, x2t);
    let tv = fresh_mul(b, &mut census, hx, v);
    let tvz = fresh_mul(b, &mut census, tv, z1);

    let sx = fresh_mul(b, &mut census, s, x1);
    let xz2 = fresh_add(b, &mut census, x2, z2);
    let bxz = fresh_mul(b, &mut census, bb, xz2);
    let ibxz = fresh_add(b, &mut census, i, bxz);
    let y2t = fresh_mul(b, &mut census, y2, ibxz);
    let hy = fresh_add(b, &mut census, h, y2t);
    let uu = fresh_mul(b, &mut census, hy, u);
    let uuz = fresh_mul(b, &mut census, uu, z1);
    let end = b.mark();

    // output phase: the three writes into out survive the replay
    census.add += 1;
    gadgets::emit_xor_reg(b, sy, out.x);
    gadgets::emit_xor_reg(b, tvz, out.x);
    census.add += 1;
    gadgets::emit_xor_reg(b, sx, out.y);
    gadgets::emit_xor_reg(b, uuz, out.y);
    census.mul += 1;
    mul::emit_mul(b, field, s, z1, out.z, mode);

    if mode == UncomputeMode::BennettClean {
        b.uncompute(start, end);
    }
    debug_assert_eq!(
        census,
        FieldOpCounts { mul: 21, const_mul: 4, square: 1, add: 15 }
    );
    census
}

/// Standalone point adder with named registers p1*/p2*/p3*.
pub fn point_add_circuit(curve: &CurveSpec, mode: UncomputeMode) -> (Circuit, FieldOpCounts) {
    let n = curve.n();
    let mut b = CircuitBuilder::new();
    b.annotate(format!("curve {}", curve.describe()));
    let p1 = PointRegs::named(&mut b, "p1", n);
    let p2 = PointRegs::named(&mut b, "p2", n);
    let p3 = PointRegs::named(&mut b, "p3", n);
    let census = emit_point_add(&mut b, curve, p1, p2, p3, mode);
    (b.finish(), census)
}

/// Emits (ax, ay) ^= (X/Z, Y/Z): one inversion and two multiplications.
pub fn emit_to_affine(
    b: &mut CircuitBuilder,
    curve: &CurveSpec,
    p: PointRegs,
    ax: Reg,
    ay: Reg,
    mode: UncomputeMode,
) {
    let field = curve.field();
    let n = curve.n();
    let start = b.mark();
    let zi = b.fresh(n);
    inv::emit_inverse(b, field, p.z, zi, UncomputeMode::Garbage);
    let end = b.mark();
    mul::emit_mul(b, field, p.x, zi, ax, mode);
    mul::emit_mul(b, field, p.y, zi, ay, mode);
    if mode == UncomputeMode::BennettClean {
        b.uncompute(start, end);
    }
}

/// Standalone conversion circuit with named registers px/py/pz, ax, ay.
pub fn proj_to_affine_circuit(curve: &CurveSpec, mode: UncomputeMode) -> Circuit {
    let n = curve.n();
    let mut b = CircuitBuilder::new();
    b.annotate(format!("curve {}", curve.describe()));
    let p = PointRegs::named(&mut b, "p", n);
    let ax = b.named("ax", n);
    let ay = b.named("ay", n);
    emit_to_affine(&mut b, curve, p, ax, ay, mode);
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{find_toy_curve, ProjectivePoint, ToyCurve};
    use crate::field::FieldSpec;
    use crate::sim::{basis_sim, load_element, read_element};

    fn toy(n: usize) -> ToyCurve {
        find_toy_curve(&FieldSpec::with_default_modulus(n).unwrap()).unwrap()
    }

    fn to_reg(r: &crate::circuit::Register) -> Reg {
        Reg { start: r.start, len: r.len }
    }

    fn point_regs(c: &Circuit, prefix: &str) -> PointRegs {
        PointRegs {
            x: to_reg(c.register(&format!("{prefix}x")).unwrap()),
            y: to_reg(c.register(&format!("{prefix}y")).unwrap()),
            z: to_reg(c.register(&format!("{prefix}z")).unwrap()),
        }
    }

    fn load_point(state: &mut [bool], regs: PointRegs, p: &ProjectivePoint) {
        load_element(state, regs.x, &p.x);
        load_element(state, regs.y, &p.y);
        load_element(state, regs.z, &p.z);
    }

    fn read_point(state: &[bool], regs: PointRegs) -> ProjectivePoint {
        ProjectivePoint {
            x: read_element(state, regs.x),
            y: read_element(state, regs.y),
            z: read_element(state, regs.z),
        }
    }

    #[test]
    fn census_is_exact() {
        let t = toy(3);
        for mode in [UncomputeMode::Garbage, UncomputeMode::BennettClean] {
            let (_, census) = point_add_circuit(&t.curve, mode);
            assert_eq!(
                census,
                FieldOpCounts { mul: 21, const_mul: 4, square: 1, add: 15 }
            );
        }
    }

    #[test]
    fn identity_plus_identity() {
        let t = toy(3);
        let (c, _) = point_add_circuit(&t.curve, UncomputeMode::BennettClean);
        let id = ProjectivePoint::identity(3);
        let mut state = vec![false; c.width as usize];
        load_point(&mut state, point_regs(&c, "p1"), &id);
        load_point(&mut state, point_regs(&c, "p2"), &id);
        let fin = basis_sim(&c, &state).unwrap();
        let got = read_point(&fin, point_regs(&c, "p3"));
        assert!(t.curve.projectively_equal(&got, &id));
    }

    #[test]
    fn exhaustive_pairs_match_oracle_n3() {
        let t = toy(3);
        let c3 = &t.curve;
        let (c, _) = point_add_circuit(c3, UncomputeMode::BennettClean);
        let p1r = point_regs(&c, "p1");
        let p2r = point_regs(&c, "p2");
        let p3r = point_regs(&c, "p3");
        let ancilla_from = p3r.z.start as usize + 3;
        let points = c3.enumerate_points().unwrap();
        for p in &points {
            for q in &points {
                let pp = p.to_projective(3);
                let qp = q.to_projective(3);
                let mut state = vec![false; c.width as usize];
                load_point(&mut state, p1r, &pp);
                load_point(&mut state, p2r, &qp);
                let fin = basis_sim(&c, &state).unwrap();
                let got = read_point(&fin, p3r);
                let want = c3.projective_add(&pp, &qp);
                assert!(
                    c3.projectively_equal(&got, &want),
                    "p={p:?} q={q:?} got {got:?} want {want:?}"
                );
                assert_eq!(read_point(&fin, p1r), pp, "input 1 clobbered");
                assert_eq!(read_point(&fin, p2r), qp, "input 2 clobbered");
                assert!(
                    fin[ancilla_from..].iter().all(|&x| !x),
                    "dirty ancilla at p={p:?} q={q:?}"
                );
            }
        }
    }

    #[test]
    fn doubling_with_aliased_inputs() {
        let t = toy(3);
        let c3 = &t.curve;
        let n = 3;
        let mut b = CircuitBuilder::new();
        let p = PointRegs::named(&mut b, "p", n);
        let out = PointRegs::named(&mut b, "q", n);
        emit_point_add(&mut b, c3, p, p, out, UncomputeMode::BennettClean);
        let c = b.finish();
        for pt in c3.enumerate_points().unwrap() {
            let pp = pt.to_projective(n);
            let mut state = vec![false; c.width as usize];
            load_point(&mut state, p, &pp);
            let fin = basis_sim(&c, &state).unwrap();
            let got = read_point(&fin, out);
            let want = c3.projective_add(&pp, &pp);
            assert!(c3.projectively_equal(&got, &want), "pt={pt:?}");
        }
    }

    #[test]
    fn to_affine_matches_oracle() {
        use rand::{Rng, SeedableRng};
        let t = toy(4);
        let c4 = &t.curve;
        let circ = proj_to_affine_circuit(c4, UncomputeMode::BennettClean);
        let pr = point_regs(&circ, "p");
        let axr = to_reg(circ.register("ax").unwrap());
        let ayr = to_reg(circ.register("ay").unwrap());
        let points = c4.enumerate_points().unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let p = &points[rng.gen_range(0..points.len())];
            // random non-zero projective scaling
            let lambda = FieldElement::from_index(4, rng.gen_range(1..16));
            let scale = |e: &FieldElement| c4.field().mul_schoolbook(e, &lambda).unwrap();
            let pp = p.to_projective(4);
            let scaled = ProjectivePoint { x: scale(&pp.x), y: scale(&pp.y), z: scale(&pp.z) };
            let mut state = vec![false; circ.width as usize];
            load_point(&mut state, pr, &scaled);
            let fin = basis_sim(&circ, &state).unwrap();
            assert_eq!(read_element(&fin, axr), p.x, "p={p:?} lambda={lambda}");
            assert_eq!(read_element(&fin, ayr), p.y, "p={p:?} lambda={lambda}");
            let ancilla_from = ayr.start as usize + 4;
            assert!(fin[ancilla_from..].iter().all(|&x| !x), "dirty ancilla");
        }
    }
}
