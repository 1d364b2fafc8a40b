//! Verification engines: a bit-exact basis-state simulator for
//! reversible circuits, a dense statevector simulator for small
//! circuits, and the exact Shor measurement distribution with classical
//! post-processing.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::circuit::{Circuit, Gate, Reg};
use crate::curve::{AffinePoint, CurveSpec};
use crate::field::FieldElement;

#[derive(Debug, Error, PartialEq)]
pub enum SimError {
    #[error("basis simulation hit a non-classical gate: {0}")]
    UnsupportedGate(String),
    #[error("input length {0} does not match circuit width {1}")]
    WidthMismatch(usize, u32),
    #[error("statevector simulation needs 2^{0} amplitudes; cap is width {1}")]
    TooWide(u32, u32),
    #[error("distribution enumeration capped at m <= {0}, got m = {1}")]
    DistributionTooLarge(usize, usize),
}

/// Runs X / CNOT / Toffoli gates on a classical bit assignment.
pub fn basis_sim(c: &Circuit, input: &[bool]) -> Result<Vec<bool>, SimError> {
    if input.len() != c.width as usize {
        return Err(SimError::WidthMismatch(input.len(), c.width));
    }
    let mut s = input.to_vec();
    for g in &c.gates {
        match *g {
            Gate::X { q } => s[q as usize] = !s[q as usize],
            Gate::Cnot { c, t } => {
                if s[c as usize] {
                    s[t as usize] = !s[t as usize];
                }
            }
            Gate::Toffoli { c1, c2, t } => {
                if s[c1 as usize] && s[c2 as usize] {
                    s[t as usize] = !s[t as usize];
                }
            }
            Gate::H { q } => return Err(SimError::UnsupportedGate(format!("h {q}"))),
            Gate::CPhase { c, t, k, .. } => {
                return Err(SimError::UnsupportedGate(format!("cp {c} {t} {k}")))
            }
        }
    }
    Ok(s)
}

/// Writes a field element's coefficient bits into a register slot of a
/// basis state.
pub fn load_element(state: &mut [bool], reg: Reg, e: &FieldElement) {
    assert_eq!(reg.len as usize, e.n());
    for i in 0..e.n() {
        state[reg.idx(i) as usize] = e.bit(i);
    }
}

/// Reads a register slot of a basis state back as a field element.
pub fn read_element(state: &[bool], reg: Reg) -> FieldElement {
    let n = reg.len as usize;
    let mut e = FieldElement::zero(n);
    for i in 0..n {
        e.set_bit(i, state[reg.idx(i) as usize]);
    }
    e
}

/// Writes an integer little-endian into a register slot.
pub fn load_uint(state: &mut [bool], reg: Reg, v: u64) {
    assert!(reg.len == 64 || v < 1u64 << reg.len);
    for i in 0..reg.len as usize {
        state[reg.idx(i) as usize] = v >> i & 1 == 1;
    }
}

pub fn read_uint(state: &[bool], reg: Reg) -> u64 {
    let mut v = 0u64;
    for i in 0..reg.len as usize {
        if state[reg.idx(i) as usize] {
            v |= 1 << i;
        }
    }
    v
}

pub const STATEVECTOR_WIDTH_CAP: u32 = 20;

/// Dense statevector evolution; exact up to double precision.
pub fn statevector_sim(
    c: &Circuit,
    input: &[Complex64],
) -> Result<Vec<Complex64>, SimError> {
    if c.width > STATEVECTOR_WIDTH_CAP {
        return Err(SimError::TooWide(c.width, STATEVECTOR_WIDTH_CAP));
    }
    let dim = 1usize << c.width;
    if input.len() != dim {
        return Err(SimError::WidthMismatch(input.len(), c.width));
    }
    let mut s = input.to_vec();
    let sqrt_half = Complex64::new(0.5f64.sqrt(), 0.0);
    for g in &c.gates {
        match *g {
            Gate::X { q } => {
                let bit = 1usize << q;
                for i in 0..dim {
                    if i & bit == 0 {
                        s.swap(i, i | bit);
                    }
                }
            }
            Gate::Cnot { c, t } => {
                let (cb, tb) = (1usize << c, 1usize << t);
                for i in 0..dim {
                    if i & cb != 0 && i & tb == 0 {
                        s.swap(i, i | tb);
                    }
                }
            }
            Gate::Toffoli { c1, c2, t } => {
                let (c1b, c2b, tb) = (1usize << c1, 1usize << c2, 1usize << t);
                for i in 0..dim {
                    if i & c1b != 0 && i & c2b != 0 && i & tb == 0 {
                        s.swap(i, i | tb);
                    }
                }
            }
            Gate::H { q } => {
                let bit = 1usize << q;
                for i in 0..dim {
                    if i & bit == 0 {
                        let (a, b) = (s[i], s[i | bit]);
                        s[i] = sqrt_half * (a + b);
                        s[i | bit] = sqrt_half * (a - b);
                    }
                }
            }
            Gate::CPhase { c, t, k, inv } => {
                let angle = 2.0 * PI / (1u64 << k) as f64;
                let angle = if inv { -angle } else { angle };
                let phase = Complex64::from_polar(1.0, angle);
                let (cb, tb) = (1usize << c, 1usize << t);
                for (i, amp) in s.iter_mut().enumerate() {
                    if i & cb != 0 && i & tb != 0 {
                        *amp *= phase;
                    }
                }
            }
        }
    }
    Ok(s)
}

pub fn basis_statevector(width: u32, basis: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); 1 << width];
    v[basis] = Complex64::new(1.0, 0.0);
    v
}

/// Exact measurement distribution of the two control registers after
/// the Shor discrete-log circuit, computed from the classical group
/// oracle rather than the synthesized circuit.
#[derive(Clone, Debug)]
pub struct ShorDistribution {
    pub m: usize,
    /// probs[u][v], each register ranging over [0, 2^m).
    pub probs: Vec<Vec<f64>>,
}

pub const DISTRIBUTION_M_CAP: usize = 8;

/// prob(u,v) = (1/2^{2m})^2 * sum_R |sum_{(k,l): kP+lQ=R} w^{uk+vl}|^2
/// with w = exp(2*pi*i/2^m). Direct enumeration of all 2^{2m} scalar
/// pairs per outcome; quartic in 2^m, so it is quick through m = 6 and
/// slow (minutes) at the m = 8 cap.
pub fn shor_distribution(
    curve: &CurveSpec,
    p: &AffinePoint,
    q: &AffinePoint,
    m: usize,
) -> Result<ShorDistribution, SimError> {
    if m > DISTRIBUTION_M_CAP {
        return Err(SimError::DistributionTooLarge(DISTRIBUTION_M_CAP, m));
    }
    let size = 1usize << m;
    // precompute kP and lQ, then bucket (k,l) by the sum point
    let mut kp = Vec::with_capacity(size);
    let mut lq = Vec::with_capacity(size);
    let mut acc = AffinePoint::identity(curve.n());
    for k in 0..size {
        kp.push(acc.clone());
        let _ = k;
        acc = curve.affine_add(&acc, p).expect("complete curve");
    }
    acc = AffinePoint::identity(curve.n());
    for l in 0..size {
        lq.push(acc.clone());
        let _ = l;
        acc = curve.affine_add(&acc, q).expect("complete curve");
    }
    let mut buckets: HashMap<AffinePoint, Vec<(usize, usize)>> = HashMap::new();
    for k in 0..size {
        for l in 0..size {
            let r = curve.affine_add(&kp[k], &lq[l]).expect("complete curve");
            buckets.entry(r).or_default().push((k, l));
        }
    }
    let norm = 1.0 / (size as f64 * size as f64);
    // w^j for j mod 2^m
    let table: Vec<Complex64> = (0..size)
        .map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / size as f64))
        .collect();
    let mask = size - 1;
    let mut probs = vec![vec![0.0f64; size]; size];
    for u in 0..size {
        for v in 0..size {
            let mut total = 0.0;
            for pairs in buckets.values() {
                let mut amp = Complex64::new(0.0, 0.0);
                for &(k, l) in pairs {
                    amp += table[(u * k + v * l) & mask];
                }
                total += amp.norm_sqr();
            }
            probs[u][v] = total * norm * norm;
        }
    }
    Ok(ShorDistribution { m, probs })
}

impl ShorDistribution {
    pub fn total_probability(&self) -> f64 {
        self.probs.iter().flatten().sum()
    }

    /// Outcomes sorted by descending probability, ties broken by (u,v).
    pub fn top(&self, count: usize) -> Vec<(usize, usize, f64)> {
        let mut all: Vec<(usize, usize, f64)> = Vec::new();
        for (u, row) in self.probs.iter().enumerate() {
            for (v, &p) in row.iter().enumerate() {
                all.push((u, v, p));
            }
        }
        all.sort_by(|a, b| b.2.partial_cmp(&a.2).unwrap().then((a.0, a.1).cmp(&(b.0, b.1))));
        all.truncate(count);
        all
    }
}

/// Extended-gcd modular inverse; None when gcd(a, q) > 1.
pub fn mod_inverse(a: u64, q: u64) -> Option<u64> {
    let (mut r0, mut r1) = (q as i128, (a % q) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        (s0, s1) = (s1, s0 - quot * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(q as i128) as u64)
}

/// Candidate discrete log from one measurement outcome (u, v): round
/// both registers to multiples of q/2^m, giving s and t with t = r*s
/// (mod q) at the distribution's peaks, then r = t * s^{-1} mod q.
/// The candidate is accepted only if it verifies on the curve.
pub fn postprocess(
    u: usize,
    v: usize,
    q: u64,
    m: usize,
    curve: &CurveSpec,
    p: &AffinePoint,
    target: &AffinePoint,
) -> Option<u64> {
    let size = (1u64 << m) as f64;
    let s = (u as f64 * q as f64 / size).round() as u64 % q;
    let t = (v as f64 * q as f64 / size).round() as u64 % q;
    let sinv = mod_inverse(s, q)?;
    let r = t * sinv % q;
    if curve.scalar_mul(r, p) == *target {
        Some(r)
    } else {
        None
    }
}

/// Success probability of the full algorithm: total distribution mass
/// on outcomes whose post-processing recovers a verified discrete log,
/// together with the most likely recovered value.
pub fn shor_success(
    dist: &ShorDistribution,
    q: u64,
    curve: &CurveSpec,
    p: &AffinePoint,
    target: &AffinePoint,
) -> (Option<u64>, f64) {
    let size = 1usize << dist.m;
    let mut mass = 0.0;
    let mut best: Option<(f64, u64)> = None;
    for u in 0..size {
        for v in 0..size {
            let prob = dist.probs[u][v];
            if let Some(r) = postprocess(u, v, q, dist.m, curve, p, target) {
                mass += prob;
                if best.as_ref().is_none_or(|(bp, _)| prob > *bp) {
                    best = Some((prob, r));
                }
            }
        }
    }
    (best.map(|(_, r)| r), mass)
}
