//! Circuit intermediate representation: an ordered gate list over named
//! qubit registers, the ASAP layered-depth metric, composition and
//! inversion, and a line-oriented text serialization.
//!
//! Depth uses uniform gate cost 1 for every kind; a Toffoli is a
//! primitive and is never decomposed. The layering is the greedy ASAP
//! rule: each gate lands in the earliest layer after the last layer
//! touching any of its qubits, which equals the longest chain in the
//! qubit-conflict DAG.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CircuitError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("gate operand {qubit} out of range for width {width}")]
    QubitOutOfRange { qubit: u32, width: u32 },
    #[error("gate operands must be distinct")]
    DuplicateOperand,
    #[error("width mismatch in compose ({0} vs {1})")]
    WidthMismatch(u32, u32),
    #[error("register {0} incompatible between composed circuits")]
    RegisterMismatch(String),
}

/// Primitive gate kinds. CPHASE(k) applies phase exp(2*pi*i/2^k) on the
/// |11> subspace; the `inv` flag negates the phase so inversion stays
/// within the gate set.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Gate {
    X { q: u32 },
    Cnot { c: u32, t: u32 },
    Toffoli { c1: u32, c2: u32, t: u32 },
    H { q: u32 },
    CPhase { c: u32, t: u32, k: u32, inv: bool },
}

impl Gate {
    pub fn qubits(&self) -> [Option<u32>; 3] {
        match *self {
            Gate::X { q } | Gate::H { q } => [Some(q), None, None],
            Gate::Cnot { c, t } => [Some(c), Some(t), None],
            Gate::CPhase { c, t, .. } => [Some(c), Some(t), None],
            Gate::Toffoli { c1, c2, t } => [Some(c1), Some(c2), Some(t)],
        }
    }

    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::CPhase { c, t, k, inv } => Gate::CPhase { c, t, k, inv: !inv },
            g => g, // X, CNOT, Toffoli, H are self-inverse
        }
    }

    fn validate(&self, width: u32) -> Result<(), CircuitError> {
        let qs = self.qubits();
        let mut seen = [u32::MAX; 3];
        for (count, q) in qs.into_iter().flatten().enumerate() {
            if q >= width {
                return Err(CircuitError::QubitOutOfRange { qubit: q, width });
            }
            if seen[..count].contains(&q) {
                return Err(CircuitError::DuplicateOperand);
            }
            seen[count] = q;
        }
        Ok(())
    }
}

/// A named contiguous range of qubit indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Register {
    pub name: String,
    pub start: u32,
    pub len: u32,
}

impl Register {
    pub fn idx(&self, i: usize) -> u32 {
        assert!((i as u32) < self.len);
        self.start + i as u32
    }

    pub fn wires(&self) -> impl Iterator<Item = u32> + '_ {
        self.start..self.start + self.len
    }
}

#[derive(Clone, PartialEq, Debug, Default)]
pub struct Circuit {
    pub width: u32,
    pub registers: Vec<Register>,
    pub annotations: Vec<String>,
    pub gates: Vec<Gate>,
}

/// Per-kind gate counts.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct GateCounts {
    pub x: u64,
    pub cnot: u64,
    pub toffoli: u64,
    pub h: u64,
    pub cphase: u64,
}

impl GateCounts {
    pub fn total(&self) -> u64 {
        self.x + self.cnot + self.toffoli + self.h + self.cphase
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct ResourceReport {
    pub depth: u32,
    pub width: u32,
    pub toffoli_depth: u32,
    pub counts: GateCounts,
}

impl ResourceReport {
    /// CSV row `name,n,depth,width,x,cnot,ccx,h,cp,toffoli_depth`.
    pub fn csv_row(&self, name: &str, n: usize) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            name,
            n,
            self.depth,
            self.width,
            self.counts.x,
            self.counts.cnot,
            self.counts.toffoli,
            self.counts.h,
            self.counts.cphase,
            self.toffoli_depth
        )
    }

    pub const CSV_HEADER: &'static str = "name,n,depth,width,x,cnot,ccx,h,cp,toffoli_depth";
}

/// ASAP layering over a gate slice; standalone so phase-by-phase depth
/// of a larger circuit can be measured on sub-ranges.
pub fn layered_depth(width: u32, gates: &[Gate]) -> (u32, u32) {
    let mut layer = vec![0u32; width as usize];
    let mut tlayer = vec![0u32; width as usize];
    let mut depth = 0;
    let mut tdepth = 0;
    for g in gates {
        let qs = g.qubits();
        let mut m = 0;
        let mut tm = 0;
        for q in qs.into_iter().flatten() {
            m = m.max(layer[q as usize]);
            tm = tm.max(tlayer[q as usize]);
        }
        m += 1;
        if matches!(g, Gate::Toffoli { .. }) {
            tm += 1;
        }
        for q in qs.into_iter().flatten() {
            layer[q as usize] = m;
            tlayer[q as usize] = tm;
        }
        depth = depth.max(m);
        tdepth = tdepth.max(tm);
    }
    (depth, tdepth)
}

impl Circuit {
    pub fn new(width: u32) -> Self {
        Circuit { width, ..Default::default() }
    }

    pub fn validate(&self) -> Result<(), CircuitError> {
        for g in &self.gates {
            g.validate(self.width)?;
        }
        Ok(())
    }

    pub fn counts(&self) -> GateCounts {
        let mut c = GateCounts::default();
        for g in &self.gates {
            match g {
                Gate::X { .. } => c.x += 1,
                Gate::Cnot { .. } => c.cnot += 1,
                Gate::Toffoli { .. } => c.toffoli += 1,
                Gate::H { .. } => c.h += 1,
                Gate::CPhase { .. } => c.cphase += 1,
            }
        }
        c
    }

    /// Deterministic resource report via ASAP layering.
    pub fn report(&self) -> ResourceReport {
        let (depth, toffoli_depth) = layered_depth(self.width, &self.gates);
        ResourceReport { depth, width: self.width, toffoli_depth, counts: self.counts() }
    }

    pub fn register(&self, name: &str) -> Option<&Register> {
        self.registers.iter().find(|r| r.name == name)
    }

    /// Concatenation; widths must agree and registers sharing a name
    /// must describe the same range.
    pub fn compose(&self, other: &Circuit) -> Result<Circuit, CircuitError> {
        if self.width != other.width {
            return Err(CircuitError::WidthMismatch(self.width, other.width));
        }
        let mut registers = self.registers.clone();
        for r in &other.registers {
            match registers.iter().find(|m| m.name == r.name) {
                Some(mine) if mine != r => {
                    return Err(CircuitError::RegisterMismatch(r.name.clone()))
                }
                Some(_) => {}
                None => registers.push(r.clone()),
            }
        }
        let mut gates = self.gates.clone();
        gates.extend_from_slice(&other.gates);
        let mut annotations = self.annotations.clone();
        for a in &other.annotations {
            if !annotations.contains(a) {
                annotations.push(a.clone());
            }
        }
        Ok(Circuit { width: self.width, registers, annotations, gates })
    }

    /// Reverses the gate order and inverts each gate.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            width: self.width,
            registers: self.registers.clone(),
            annotations: self.annotations.clone(),
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        writeln!(out, "qubits {}", self.width).unwrap();
        for a in &self.annotations {
            writeln!(out, "# {a}").unwrap();
        }
        for r in &self.registers {
            writeln!(out, "register {} {} {}", r.name, r.start, r.len).unwrap();
        }
        for g in &self.gates {
            match *g {
                Gate::X { q } => writeln!(out, "x {q}"),
                Gate::Cnot { c, t } => writeln!(out, "cx {c} {t}"),
                Gate::Toffoli { c1, c2, t } => writeln!(out, "ccx {c1} {c2} {t}"),
                Gate::H { q } => writeln!(out, "h {q}"),
                Gate::CPhase { c, t, k, inv: false } => writeln!(out, "cp {c} {t} {k}"),
                Gate::CPhase { c, t, k, inv: true } => writeln!(out, "cpinv {c} {t} {k}"),
            }
            .unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<Circuit, CircuitError> {
        let err = |line: usize, reason: &str| CircuitError::Parse {
            line,
            reason: reason.to_string(),
        };
        let mut circuit: Option<Circuit> = None;
        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(c) = circuit.as_mut() {
                    c.annotations.push(comment.trim().to_string());
                }
                continue;
            }
            let mut tok = line.split_whitespace();
            let mnemonic = tok.next().unwrap();
            let rest: Vec<&str> = tok.collect();
            if mnemonic == "qubits" {
                if circuit.is_some() {
                    return Err(err(lineno, "duplicate qubits header"));
                }
                let w: u32 = rest
                    .first()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err(lineno, "qubits needs a count"))?;
                circuit = Some(Circuit::new(w));
                continue;
            }
            let c = circuit
                .as_mut()
                .ok_or_else(|| err(lineno, "missing qubits header"))?;
            if mnemonic == "register" {
                if rest.len() != 3 {
                    return Err(err(lineno, "register needs name, start, len"));
                }
                let start: u32 = rest[1]
                    .parse()
                    .map_err(|_| err(lineno, "bad register start"))?;
                let len: u32 = rest[2]
                    .parse()
                    .map_err(|_| err(lineno, "bad register length"))?;
                if start + len > c.width {
                    return Err(err(lineno, "register exceeds circuit width"));
                }
                c.registers.push(Register { name: rest[0].to_string(), start, len });
                continue;
            }
            let args: Result<Vec<u32>, _> = rest.iter().map(|s| s.parse::<u32>()).collect();
            let args = args.map_err(|_| err(lineno, "bad qubit index"))?;
            let need = |n: usize| -> Result<(), CircuitError> {
                if args.len() == n {
                    Ok(())
                } else {
                    Err(err(lineno, &format!("expected {n} operand(s)")))
                }
            };
            let gate = match mnemonic {
                "x" => {
                    need(1)?;
                    Gate::X { q: args[0] }
                }
                "cx" => {
                    need(2)?;
                    Gate::Cnot { c: args[0], t: args[1] }
                }
                "ccx" => {
                    need(3)?;
                    Gate::Toffoli { c1: args[0], c2: args[1], t: args[2] }
                }
                "h" => {
                    need(1)?;
                    Gate::H { q: args[0] }
                }
                "cp" => {
                    need(3)?;
                    Gate::CPhase { c: args[0], t: args[1], k: args[2], inv: false }
                }
                "cpinv" => {
                    need(3)?;
                    Gate::CPhase { c: args[0], t: args[1], k: args[2], inv: true }
                }
                other => return Err(err(lineno, &format!("unknown mnemonic '{other}'"))),
            };
            gate.validate(c.width).map_err(|e| err(lineno, &e.to_string()))?;
            c.gates.push(gate);
        }
        circuit.ok_or_else(|| err(0, "empty circuit file"))
    }
}

/// Incremental circuit construction: allocates named registers and
/// anonymous ancilla blocks, emits gates, and supports Bennett-style
/// uncomputation by replaying a gate range in inverted order.
pub struct CircuitBuilder {
    width: u32,
    registers: Vec<Register>,
    annotations: Vec<String>,
    gates: Vec<Gate>,
}

/// A contiguous block of wires handed out by the builder.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Reg {
    pub start: u32,
    pub len: u32,
}

impl Reg {
    pub fn idx(&self, i: usize) -> u32 {
        debug_assert!((i as u32) < self.len);
        self.start + i as u32
    }

    pub fn wires(&self) -> impl Iterator<Item = u32> {
        self.start..self.start + self.len
    }
}

impl Default for CircuitBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl CircuitBuilder {
    pub fn new() -> Self {
        CircuitBuilder { width: 0, registers: Vec::new(), annotations: Vec::new(), gates: Vec::new() }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn annotate(&mut self, text: impl Into<String>) {
        self.annotations.push(text.into());
    }

    /// Fresh zero-initialized block, recorded as a named register.
    pub fn named(&mut self, name: impl Into<String>, len: usize) -> Reg {
        let r = self.fresh(len);
        self.registers.push(Register { name: name.into(), start: r.start, len: r.len });
        r
    }

    /// Records a name for an already-allocated block, so circuits can
    /// expose wires chosen late (an accumulator at the end of a chain).
    pub fn alias_register(&mut self, name: impl Into<String>, reg: Reg) {
        self.registers.push(Register { name: name.into(), start: reg.start, len: reg.len });
    }

    /// Fresh zero-initialized anonymous block.
    pub fn fresh(&mut self, len: usize) -> Reg {
        let start = self.width;
        self.width += len as u32;
        Reg { start, len: len as u32 }
    }

    pub fn x(&mut self, q: u32) {
        self.gates.push(Gate::X { q });
    }

    pub fn cx(&mut self, c: u32, t: u32) {
        debug_assert_ne!(c, t);
        self.gates.push(Gate::Cnot { c, t });
    }

    pub fn ccx(&mut self, c1: u32, c2: u32, t: u32) {
        debug_assert!(c1 != c2 && c1 != t && c2 != t);
        self.gates.push(Gate::Toffoli { c1, c2, t });
    }

    pub fn h(&mut self, q: u32) {
        self.gates.push(Gate::H { q });
    }

    pub fn cphase(&mut self, c: u32, t: u32, k: u32) {
        debug_assert_ne!(c, t);
        self.gates.push(Gate::CPhase { c, t, k, inv: false });
    }

    /// Gate index marking the start of a phase, for later uncomputation
    /// or per-phase depth measurement.
    pub fn mark(&self) -> usize {
        self.gates.len()
    }

    /// Appends the inverse of gates[from..to] in reverse order.
    pub fn uncompute(&mut self, from: usize, to: usize) {
        debug_assert!(from <= to && to <= self.gates.len());
        for i in (from..to).rev() {
            let inv = self.gates[i].inverse();
            self.gates.push(inv);
        }
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// ASAP depth of a gate range at the current width.
    pub fn depth_of_range(&self, from: usize, to: usize) -> u32 {
        layered_depth(self.width, &self.gates[from..to]).0
    }

    pub fn finish(self) -> Circuit {
        Circuit {
            width: self.width,
            registers: self.registers,
            annotations: self.annotations,
            gates: self.gates,
        }
    }
}

/// Named role -> wire block mapping for a synthesized circuit.
#[derive(Clone, Debug, Default)]
pub struct RegisterLayout {
    map: BTreeMap<String, Reg>,
}

impl RegisterLayout {
    pub fn insert(&mut self, role: impl Into<String>, reg: Reg) {
        self.map.insert(role.into(), reg);
    }

    pub fn get(&self, role: &str) -> Reg {
        *self
            .map
            .get(role)
            .unwrap_or_else(|| panic!("layout has no register for role '{role}'"))
    }

    pub fn roles(&self) -> impl Iterator<Item = (&str, Reg)> {
        self.map.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_circuit_depth_zero() {
        let c = Circuit::new(4);
        assert_eq!(c.report().depth, 0);
    }

    #[test]
    fn disjoint_cnots_share_a_layer() {
        let mut b = CircuitBuilder::new();
        let r = b.fresh(4);
        b.cx(r.idx(0), r.idx(1));
        b.cx(r.idx(2), r.idx(3));
        let rep = b.finish().report();
        assert_eq!(rep.depth, 1);
        assert_eq!(rep.counts.cnot, 2);
    }

    #[test]
    fn chained_gates_stack_layers() {
        let mut b = CircuitBuilder::new();
        let r = b.fresh(3);
        b.cx(r.idx(0), r.idx(1));
        b.cx(r.idx(1), r.idx(2));
        b.ccx(r.idx(0), r.idx(1), r.idx(2));
        let rep = b.finish().report();
        assert_eq!(rep.depth, 3);
        assert_eq!(rep.toffoli_depth, 1);
    }

    #[test]
    fn inverse_reverses_and_preserves_depth() {
        let mut b = CircuitBuilder::new();
        let r = b.fresh(3);
        b.cx(r.idx(0), r.idx(1));
        b.x(r.idx(2));
        b.ccx(r.idx(0), r.idx(1), r.idx(2));
        let c = b.finish();
        let inv = c.inverse();
        assert_eq!(inv.gates[0], Gate::Toffoli { c1: 0, c2: 1, t: 2 });
        assert_eq!(inv.gates[2], Gate::Cnot { c: 0, t: 1 });
        assert_eq!(inv.report().depth, c.report().depth);
    }

    #[test]
    fn cphase_inverse_flips_sign() {
        let g = Gate::CPhase { c: 0, t: 1, k: 3, inv: false };
        assert_eq!(g.inverse().inverse(), g);
        assert_ne!(g.inverse(), g);
    }

    #[test]
    fn serialize_parse_roundtrip() {
        let mut b = CircuitBuilder::new();
        let r = b.fresh(4);
        b.annotate("field gf2n n=2 poly=0x7");
        b.registers.push(Register { name: "a".into(), start: 0, len: 2 });
        b.x(r.idx(0));
        b.cx(r.idx(0), r.idx(1));
        b.ccx(r.idx(0), r.idx(1), r.idx(2));
        b.h(r.idx(3));
        b.cphase(r.idx(0), r.idx(3), 2);
        b.gates.push(Gate::CPhase { c: 1, t: 3, k: 5, inv: true });
        let c = b.finish();
        let text = c.serialize();
        assert_eq!(Circuit::parse(&text).unwrap(), c);
    }

    #[test]
    fn parse_cx_line() {
        let c = Circuit::parse("qubits 2\ncx 0 1\n").unwrap();
        assert_eq!(c.gates, vec![Gate::Cnot { c: 0, t: 1 }]);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = Circuit::parse("qubits 2\nfoo 0 1\n").unwrap_err();
        assert_eq!(
            e,
            CircuitError::Parse { line: 2, reason: "unknown mnemonic 'foo'".into() }
        );
        let e = Circuit::parse("qubits 2\ncx 0 5\n").unwrap_err();
        assert!(matches!(e, CircuitError::Parse { line: 2, .. }));
        let e = Circuit::parse("cx 0 1\n").unwrap_err();
        assert!(matches!(e, CircuitError::Parse { line: 1, .. }));
    }

    #[test]
    fn compose_checks_width_and_registers() {
        let a = Circuit::new(3);
        let b = Circuit::new(4);
        assert_eq!(a.compose(&b).unwrap_err(), CircuitError::WidthMismatch(3, 4));
        let mut c = Circuit::new(3);
        c.registers.push(Register { name: "k".into(), start: 0, len: 2 });
        let mut d = Circuit::new(3);
        d.registers.push(Register { name: "k".into(), start: 1, len: 2 });
        assert!(matches!(c.compose(&d), Err(CircuitError::RegisterMismatch(_))));
        d.registers[0].start = 0;
        assert_eq!(c.compose(&d).unwrap().registers.len(), 1);
    }

    #[test]
    fn uncompute_range_inverts() {
        let mut b = CircuitBuilder::new();
        let r = b.fresh(3);
        let start = b.mark();
        b.cx(r.idx(0), r.idx(1));
        b.ccx(r.idx(0), r.idx(1), r.idx(2));
        let end = b.mark();
        b.uncompute(start, end);
        let gates = b.finish().gates;
        assert_eq!(gates[2], Gate::Toffoli { c1: 0, c2: 1, t: 2 });
        assert_eq!(gates[3], Gate::Cnot { c: 0, t: 1 });
    }
}
