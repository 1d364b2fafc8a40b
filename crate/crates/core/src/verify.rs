//! Oracle-equivalence sweeps: each check either passes or returns a
//! witness describing the first mismatch (inputs, expected, actual).
//! The CLI `verify` subcommand and the acceptance suite are both built
//! on these.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bits;
use crate::circuit::{Circuit, Reg};
use crate::curve::{find_toy_curve, CurveSpec, ProjectivePoint, ToyCurve};
use crate::field::{FieldElement, FieldSpec};
use crate::sim::{basis_sim, load_element, load_uint, read_element};
use crate::synth::dsa::{dsa_circuit, DsaVariant};
use crate::synth::inv::itoh_tsuji_circuit;
use crate::synth::mul::mastrovito_mul;
use crate::synth::point::{point_add_circuit, proj_to_affine_circuit};
use crate::synth::UncomputeMode;

#[derive(Debug, Error, PartialEq)]
pub enum VerifyError {
    #[error("{check}: mismatch at {input}: expected {expected}, got {actual}")]
    Mismatch { check: String, input: String, expected: String, actual: String },
    #[error("{check}: {detail}")]
    Structural { check: String, detail: String },
}

fn mismatch(check: &str, input: String, expected: String, actual: String) -> VerifyError {
    VerifyError::Mismatch { check: check.to_string(), input, expected, actual }
}

fn random_element(rng: &mut ChaCha8Rng, n: usize) -> FieldElement {
    let mut e = FieldElement::zero(n);
    for i in 0..n {
        e.set_bit(i, rng.gen());
    }
    e
}

fn reg_of(c: &Circuit, name: &str) -> Reg {
    let r = c.register(name).unwrap_or_else(|| panic!("circuit lacks register '{name}'"));
    Reg { start: r.start, len: r.len }
}

/// Toeplitz-decomposition identity against the schoolbook product:
/// exhaustive for small n, seeded random pairs for large n.
pub fn check_mastrovito_identity(
    field: &FieldSpec,
    samples: Option<usize>,
    seed: u64,
) -> Result<(), VerifyError> {
    let n = field.n();
    let m = field.reduction_matrix();
    let try_pair = |a: &FieldElement, bb: &FieldElement| -> Result<(), VerifyError> {
        let mut low = field.build_toeplitz_l(a).mul_vec(bb.words());
        let high = field.build_toeplitz_u(a).mul_vec(bb.words());
        bits::xor_in(&mut low, &m.mul_vec(&high));
        let got = FieldElement::from_words(n, low);
        let want = field.mul_schoolbook(a, bb).unwrap();
        if got != want {
            return Err(mismatch(
                "mastrovito-identity",
                format!("n={n} a={a} b={bb}"),
                want.to_string(),
                got.to_string(),
            ));
        }
        Ok(())
    };
    match samples {
        None => {
            for a in field.elements() {
                for bb in field.elements() {
                    try_pair(&a, &bb)?;
                }
            }
        }
        Some(count) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let a = random_element(&mut rng, n);
                let bb = random_element(&mut rng, n);
                try_pair(&a, &bb)?;
            }
        }
    }
    Ok(())
}

/// Simulates a multiplier circuit on chosen inputs against the oracle;
/// `initial_out` exercises the XOR-accumulate contract.
pub fn check_mul_circuit_on(
    field: &FieldSpec,
    c: &Circuit,
    a: &FieldElement,
    bb: &FieldElement,
    initial_out: &FieldElement,
) -> Result<(), VerifyError> {
    let n = field.n();
    let mut state = vec![false; c.width as usize];
    load_element(&mut state, reg_of(c, "a"), a);
    load_element(&mut state, reg_of(c, "b"), bb);
    load_element(&mut state, reg_of(c, "out"), initial_out);
    let fin = basis_sim(c, &state).map_err(|e| VerifyError::Structural {
        check: "mul-circuit".into(),
        detail: e.to_string(),
    })?;
    let got = read_element(&fin, reg_of(c, "out"));
    let want = field
        .add(initial_out, &field.mul_schoolbook(a, bb).unwrap())
        .unwrap();
    if got != want {
        return Err(mismatch(
            "mul-circuit",
            format!("n={n} a={a} b={bb} c={initial_out}"),
            want.to_string(),
            got.to_string(),
        ));
    }
    Ok(())
}

/// Multiplier circuit equivalence sweep; exhaustive (with or without
/// the accumulator swept too) or seeded random triples.
pub fn check_mul_circuit(
    field: &FieldSpec,
    mode: UncomputeMode,
    sweep_out: bool,
    samples: Option<usize>,
    seed: u64,
) -> Result<(), VerifyError> {
    let n = field.n();
    let c = mastrovito_mul(field, mode);
    if c.counts().toffoli
        != match mode {
            UncomputeMode::Garbage => (n * n) as u64,
            UncomputeMode::BennettClean => 2 * (n * n) as u64,
        }
    {
        return Err(VerifyError::Structural {
            check: "mul-circuit".into(),
            detail: format!("n={n}: Toffoli count {} off contract", c.counts().toffoli),
        });
    }
    match samples {
        None => {
            for a in field.elements() {
                for bb in field.elements() {
                    if sweep_out {
                        for init in field.elements() {
                            check_mul_circuit_on(field, &c, &a, &bb, &init)?;
                        }
                    } else {
                        check_mul_circuit_on(field, &c, &a, &bb, &FieldElement::zero(n))?;
                    }
                }
            }
        }
        Some(count) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let a = random_element(&mut rng, n);
                let bb = random_element(&mut rng, n);
                let init = random_element(&mut rng, n);
                check_mul_circuit_on(field, &c, &a, &bb, &init)?;
            }
        }
    }
    Ok(())
}

/// Inverter circuit against the Fermat-exponent oracle.
pub fn check_inverter(
    field: &FieldSpec,
    mode: UncomputeMode,
    samples: Option<usize>,
    seed: u64,
) -> Result<(), VerifyError> {
    let n = field.n();
    let (c, _) = itoh_tsuji_circuit(field, mode);
    let try_one = |a: &FieldElement| -> Result<(), VerifyError> {
        let mut state = vec![false; c.width as usize];
        load_element(&mut state, reg_of(&c, "a"), a);
        let fin = basis_sim(&c, &state).unwrap();
        let got = read_element(&fin, reg_of(&c, "out"));
        let want = field.inv_fermat(a);
        if got != want {
            return Err(mismatch(
                "inverter",
                format!("n={n} a={a}"),
                want.to_string(),
                got.to_string(),
            ));
        }
        Ok(())
    };
    match samples {
        None => {
            for a in field.elements() {
                try_one(&a)?;
            }
        }
        Some(count) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                try_one(&random_element(&mut rng, n))?;
            }
        }
    }
    Ok(())
}

fn load_point(state: &mut [bool], c: &Circuit, prefix: &str, p: &ProjectivePoint) {
    load_element(state, reg_of(c, &format!("{prefix}x")), &p.x);
    load_element(state, reg_of(c, &format!("{prefix}y")), &p.y);
    load_element(state, reg_of(c, &format!("{prefix}z")), &p.z);
}

fn read_point(state: &[bool], c: &Circuit, prefix: &str) -> ProjectivePoint {
    ProjectivePoint {
        x: read_element(state, reg_of(c, &format!("{prefix}x"))),
        y: read_element(state, reg_of(c, &format!("{prefix}y"))),
        z: read_element(state, reg_of(c, &format!("{prefix}z"))),
    }
}

/// Point adder over every affine pair of the given toy curve, plus the
/// subcircuit census contract.
pub fn check_point_adder(curve: &CurveSpec, mode: UncomputeMode) -> Result<(), VerifyError> {
    let n = curve.n();
    let (c, census) = point_add_circuit(curve, mode);
    let expect = crate::curve::FieldOpCounts { mul: 21, const_mul: 4, square: 1, add: 15 };
    if census != expect {
        return Err(VerifyError::Structural {
            check: "point-adder".into(),
            detail: format!("census {census:?} differs from {expect:?}"),
        });
    }
    let points = curve.enumerate_points().map_err(|e| VerifyError::Structural {
        check: "point-adder".into(),
        detail: e.to_string(),
    })?;
    for p in &points {
        for q in &points {
            let pp = p.to_projective(n);
            let qp = q.to_projective(n);
            let mut state = vec![false; c.width as usize];
            load_point(&mut state, &c, "p1", &pp);
            load_point(&mut state, &c, "p2", &qp);
            let fin = basis_sim(&c, &state).unwrap();
            let got = read_point(&fin, &c, "p3");
            let want = curve.projective_add(&pp, &qp);
            if !curve.projectively_equal(&got, &want) {
                return Err(mismatch(
                    "point-adder",
                    format!("p=({},{}) q=({},{})", p.x, p.y, q.x, q.y),
                    format!("{want:?}"),
                    format!("{got:?}"),
                ));
            }
            let affine_want = curve.affine_add(p, q).unwrap();
            if curve.to_affine(&want) != affine_want {
                return Err(VerifyError::Structural {
                    check: "point-adder".into(),
                    detail: "projective oracle disagrees with affine oracle".into(),
                });
            }
        }
    }
    Ok(())
}

/// A double-and-add variant over every (k, l) pair of the toy curve.
pub fn check_dsa(
    toy: &ToyCurve,
    q_scalar: u64,
    variant: DsaVariant,
    mode: UncomputeMode,
) -> Result<(), VerifyError> {
    let curve = &toy.curve;
    let n = curve.n();
    let m = n + 1;
    let p = &toy.generator;
    let q = curve.scalar_mul(q_scalar, p);
    let (c, _) = dsa_circuit(variant, curve, p, &q, mode);
    let k_reg = reg_of(&c, "k");
    let l_reg = reg_of(&c, "l");
    for k in 0..1u64 << m {
        for l in 0..1u64 << m {
            let mut state = vec![false; c.width as usize];
            load_uint(&mut state, k_reg, k);
            load_uint(&mut state, l_reg, l);
            let fin = basis_sim(&c, &state).unwrap();
            let got = ProjectivePoint {
                x: read_element(&fin, reg_of(&c, "accx")),
                y: read_element(&fin, reg_of(&c, "accy")),
                z: read_element(&fin, reg_of(&c, "accz")),
            };
            let want = curve.double_scalar(k, l, p, &q).to_projective(n);
            if !curve.projectively_equal(&got, &want) {
                return Err(mismatch(
                    &format!("{variant:?}"),
                    format!("k={k} l={l}"),
                    format!("{want:?}"),
                    format!("{got:?}"),
                ));
            }
        }
    }
    Ok(())
}

/// Projective-to-affine conversion on random scalings of curve points.
pub fn check_proj_to_affine(
    toy: &ToyCurve,
    mode: UncomputeMode,
    samples: usize,
    seed: u64,
) -> Result<(), VerifyError> {
    let curve = &toy.curve;
    let n = curve.n();
    let c = proj_to_affine_circuit(curve, mode);
    let points = curve.enumerate_points().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let p = &points[rng.gen_range(0..points.len())];
        let mut lambda = FieldElement::zero(n);
        while lambda.is_zero() {
            lambda = random_element(&mut rng, n);
        }
        let scale = |e: &FieldElement| curve.field().mul_schoolbook(e, &lambda).unwrap();
        let pp = p.to_projective(n);
        let scaled = ProjectivePoint { x: scale(&pp.x), y: scale(&pp.y), z: scale(&pp.z) };
        let mut state = vec![false; c.width as usize];
        load_point(&mut state, &c, "p", &scaled);
        let fin = basis_sim(&c, &state).unwrap();
        let gx = read_element(&fin, reg_of(&c, "ax"));
        let gy = read_element(&fin, reg_of(&c, "ay"));
        if gx != p.x || gy != p.y {
            return Err(mismatch(
                "proj-to-affine",
                format!("point=({},{}) lambda={lambda}", p.x, p.y),
                format!("({},{})", p.x, p.y),
                format!("({gx},{gy})"),
            ));
        }
    }
    Ok(())
}

/// compose(C, inverse(C)) must act as the identity on random basis
/// inputs, for any circuit in the classical gate set.
pub fn check_reversibility(
    c: &Circuit,
    label: &str,
    trials: usize,
    seed: u64,
) -> Result<(), VerifyError> {
    let round = c.compose(&c.inverse()).map_err(|e| VerifyError::Structural {
        check: "reversibility".into(),
        detail: e.to_string(),
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let input: Vec<bool> = (0..c.width).map(|_| rng.gen()).collect();
        let out = basis_sim(&round, &input).unwrap();
        if out != input {
            let first = out
                .iter()
                .zip(&input)
                .position(|(a, b)| a != b)
                .unwrap();
            return Err(mismatch(
                "reversibility",
                format!("{label} trial={t}"),
                "input state".into(),
                format!("flip at wire {first}"),
            ));
        }
    }
    Ok(())
}

/// Deterministic toy curve plus the scalar used for the second point in
/// the double-and-add sweeps.
pub fn standard_toy(n: usize) -> ToyCurve {
    find_toy_curve(&FieldSpec::with_default_modulus(n).unwrap()).unwrap()
}
