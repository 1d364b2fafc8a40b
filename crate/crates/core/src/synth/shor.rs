//! Full discrete-log circuit assembly: a depth-1 Hadamard layer over
//! both scalar registers, a double scalar multiplication, conversion of
//! the accumulator to the unique affine representation, and the
//! approximate Fourier transform on the 2(n+1) control qubits.

use crate::circuit::{Circuit, CircuitBuilder, ResourceReport};
use crate::curve::{AffinePoint, CurveSpec};
use crate::synth::dsa::{emit_dsa, DsaInfo, DsaVariant};
use crate::synth::point::emit_to_affine;
use crate::synth::qft::{default_band, emit_aqft};
use crate::synth::UncomputeMode;

/// Per-stage breakdown of the assembled circuit. Each report measures
/// the stage's own gate range laid out ASAP from an empty schedule.
#[derive(Clone, Debug)]
pub struct ShorReport {
    pub stages: Vec<(String, ResourceReport)>,
    pub total: ResourceReport,
    pub dsa: DsaInfo,
    pub band: u32,
}

pub struct ShorOptions {
    pub variant: DsaVariant,
    pub mode: UncomputeMode,
    pub epsilon: f64,
    /// Overrides the epsilon-derived phase cutoff when set.
    pub band: Option<u32>,
}

impl Default for ShorOptions {
    fn default() -> Self {
        ShorOptions {
            variant: DsaVariant::Tree,
            mode: UncomputeMode::BennettClean,
            epsilon: 0.0,
            band: None,
        }
    }
}

/// Builds the assembled circuit for the instance (curve, P, Q). When
/// epsilon is 0 it defaults to 2^{-2m} for m = n+1.
pub fn shor_dlog_circuit(
    curve: &CurveSpec,
    p: &AffinePoint,
    q: &AffinePoint,
    opts: &ShorOptions,
) -> (Circuit, ShorReport) {
    let n = curve.n();
    let m = n + 1;
    let epsilon = if opts.epsilon > 0.0 {
        opts.epsilon
    } else {
        0.25f64.powi(m as i32)
    };
    let band = opts.band.unwrap_or_else(|| default_band(2 * m, epsilon));

    let mut b = CircuitBuilder::new();
    b.annotate(format!("curve {}", curve.describe()));
    b.annotate(format!("base-point x=0x{} y=0x{}", p.x.to_hex(), p.y.to_hex()));
    b.annotate(format!("target-point x=0x{} y=0x{}", q.x.to_hex(), q.y.to_hex()));
    let k_reg = b.named("k", m);
    let l_reg = b.named("l", m);

    let mut stage_marks = Vec::new();
    let s0 = b.mark();
    for w in k_reg.wires().chain(l_reg.wires()) {
        b.h(w);
    }
    stage_marks.push(("hadamard".to_string(), s0, b.mark()));

    let s1 = b.mark();
    let (acc, dsa_info) =
        emit_dsa(&mut b, opts.variant, curve, p, q, k_reg, l_reg, opts.mode);
    stage_marks.push(("double-scalar".to_string(), s1, b.mark()));

    let s2 = b.mark();
    let ax = b.named("ax", n);
    let ay = b.named("ay", n);
    emit_to_affine(&mut b, curve, acc, ax, ay, opts.mode);
    stage_marks.push(("to-affine".to_string(), s2, b.mark()));

    let s3 = b.mark();
    emit_aqft(&mut b, k_reg, band);
    emit_aqft(&mut b, l_reg, band);
    stage_marks.push(("aqft".to_string(), s3, b.mark()));

    let width = b.width();
    let circuit = b.finish();
    let stages = stage_marks
        .into_iter()
        .map(|(name, from, to)| {
            let sub = Circuit {
                width,
                registers: Vec::new(),
                annotations: Vec::new(),
                gates: circuit.gates[from..to].to_vec(),
            };
            (name, sub.report())
        })
        .collect();
    let report = ShorReport { stages, total: circuit.report(), dsa: dsa_info, band };
    (circuit, report)
}
