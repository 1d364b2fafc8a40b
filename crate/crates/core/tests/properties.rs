//! Randomized properties of the circuit representation: text roundtrip,
//! depth under composition, and reversibility of the classical gate set.

use proptest::prelude::*;
use proptest::sample::subsequence;

use edshor::circuit::{Gate, Register};
use edshor::sim::basis_sim;
use edshor::Circuit;

const WIDTH: u32 = 8;

fn arb_gate(classical_only: bool) -> impl Strategy<Value = Gate> {
    let wires: Vec<u32> = (0..WIDTH).collect();
    let picks = subsequence(wires, 3).prop_shuffle();
    (picks, 0..5u8, 1..6u32, any::<bool>()).prop_map(move |(q, kind, k, inv)| {
        let kind = if classical_only { kind % 3 } else { kind };
        match kind {
            0 => Gate::X { q: q[0] },
            1 => Gate::Cnot { c: q[0], t: q[1] },
            2 => Gate::Toffoli { c1: q[0], c2: q[1], t: q[2] },
            3 => Gate::H { q: q[0] },
            _ => Gate::CPhase { c: q[0], t: q[1], k, inv },
        }
    })
}

fn arb_circuit(classical_only: bool) -> impl Strategy<Value = Circuit> {
    prop::collection::vec(arb_gate(classical_only), 0..64).prop_map(|gates| Circuit {
        width: WIDTH,
        registers: vec![
            Register { name: "lo".into(), start: 0, len: WIDTH / 2 },
            Register { name: "hi".into(), start: WIDTH / 2, len: WIDTH / 2 },
        ],
        annotations: vec!["randomly generated".into()],
        gates,
    })
}

/// The same circuit relocated to wires [WIDTH, 2*WIDTH) of a doubled width.
fn shifted(c: &Circuit) -> Circuit {
    let move_q = |q: u32| q + WIDTH;
    Circuit {
        width: 2 * WIDTH,
        registers: Vec::new(),
        annotations: Vec::new(),
        gates: c
            .gates
            .iter()
            .map(|g| match *g {
                Gate::X { q } => Gate::X { q: move_q(q) },
                Gate::H { q } => Gate::H { q: move_q(q) },
                Gate::Cnot { c, t } => Gate::Cnot { c: move_q(c), t: move_q(t) },
                Gate::CPhase { c, t, k, inv } => {
                    Gate::CPhase { c: move_q(c), t: move_q(t), k, inv }
                }
                Gate::Toffoli { c1, c2, t } => {
                    Gate::Toffoli { c1: move_q(c1), c2: move_q(c2), t: move_q(t) }
                }
            })
            .collect(),
    }
}

proptest! {
    #[test]
    fn serialize_parse_roundtrip(c in arb_circuit(false)) {
        let text = c.serialize();
        let back = Circuit::parse(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(back.serialize(), text);
    }

    #[test]
    fn compose_depth_is_subadditive(a in arb_circuit(false), b in arb_circuit(false)) {
        let ab = a.compose(&b).unwrap();
        prop_assert_eq!(ab.gates.len(), a.gates.len() + b.gates.len());
        let (da, db, dab) = (a.report().depth, b.report().depth, ab.report().depth);
        prop_assert!(dab <= da + db, "depth {} > {} + {}", dab, da, db);
        prop_assert!(dab >= da.max(db));
    }

    #[test]
    fn disjoint_compose_depth_is_max(a in arb_circuit(false), b in arb_circuit(false)) {
        let mut wide_a = a.clone();
        wide_a.width = 2 * WIDTH;
        wide_a.registers.clear();
        wide_a.annotations.clear();
        let joined = wide_a.compose(&shifted(&b)).unwrap();
        let want = a.report().depth.max(b.report().depth);
        prop_assert_eq!(joined.report().depth, want);
    }

    #[test]
    fn classical_circuit_composed_with_inverse_is_identity(
        c in arb_circuit(true),
        input in prop::collection::vec(any::<bool>(), WIDTH as usize),
    ) {
        let round = c.compose(&c.inverse()).unwrap();
        let out = basis_sim(&round, &input).unwrap();
        prop_assert_eq!(out, input);
    }

    #[test]
    fn classical_simulation_is_a_bijection(
        c in arb_circuit(true),
        x in prop::collection::vec(any::<bool>(), WIDTH as usize),
        y in prop::collection::vec(any::<bool>(), WIDTH as usize),
    ) {
        prop_assume!(x != y);
        let out_x = basis_sim(&c, &x).unwrap();
        let out_y = basis_sim(&c, &y).unwrap();
        prop_assert_ne!(out_x, out_y);
    }
}
