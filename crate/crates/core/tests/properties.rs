//! Property tests against the brute-force oracles in `common`.

mod common;

use common::*;
use proptest::prelude::*;
use qgadget::canon::certificate;
use qgadget::graph::{circuit_to_graph, is_closed, prune_open_parts};
use qgadget::miner::{mine_circuit, MineLimits};
use qgadget::tableau::Encoder;
use qgadget::{cnots_commute, Circuit, CnotGate};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn arb_circuit(max_q: usize, max_gates: usize) -> impl Strategy<Value = Circuit> {
    (2..=max_q)
        .prop_flat_map(move |n| {
            let gate = (0..n, 1..n).prop_map(move |(c, d)| (c, (c + d) % n));
            (Just(n), prop::collection::vec(gate, 0..=max_gates))
        })
        .prop_map(|(n, gates)| Circuit::new("p", n, &gates).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn text_and_json_round_trip(c in arb_circuit(6, 12)) {
        let t = Circuit::parse_text(&c.to_text()).unwrap();
        prop_assert_eq!(t.pairs(), c.pairs());
        prop_assert_eq!(t.n_qubits(), c.n_qubits());
        let j = Circuit::parse_json(&c.to_json()).unwrap();
        prop_assert_eq!(j, c);
    }

    #[test]
    fn prune_is_idempotent_and_permutation_invariant(seed in any::<u64>(), n in 1usize..9) {
        let mut rng = StdRng::seed_from_u64(seed);
        let d = random_digraph(&mut rng, n);
        let g = d.to_graph();
        let pruned = prune_open_parts(&g);
        prop_assert_eq!(prune_open_parts(&pruned).node_count(), pruned.node_count());
        prop_assert!(pruned.is_empty() || is_closed(&pruned));
        if oracle_closed(&d) {
            prop_assert_eq!(pruned.node_count(), n);
        }

        let perm = random_permutation(&mut rng, n);
        let p = prune_open_parts(&d.permuted(&perm).to_graph());
        prop_assert!(isomorphic(&Digraph::from_graph(&pruned), &Digraph::from_graph(&p)));
    }

    #[test]
    fn certificate_is_a_complete_invariant(seed in any::<u64>(), n in 1usize..8) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = random_digraph(&mut rng, n);
        let perm = random_permutation(&mut rng, n);
        let ca = certificate(&a.to_graph()).unwrap();
        prop_assert_eq!(&ca, &certificate(&a.permuted(&perm).to_graph()).unwrap());

        let b = random_digraph(&mut rng, n);
        let cb = certificate(&b.to_graph()).unwrap();
        prop_assert_eq!(ca == cb, isomorphic(&a, &b));
    }

    #[test]
    fn early_reject_does_not_change_output(c in arb_circuit(4, 9), c_g in 1usize..5) {
        let g = circuit_to_graph(&c);
        let plain = mine_circuit(&g, c_g, &MineLimits::default()).unwrap();
        let fast = mine_circuit(&g, c_g, &MineLimits { early_reject: true, ..Default::default() }).unwrap();
        prop_assert_eq!(plain.candidates, fast.candidates);
        prop_assert_eq!(plain.subsets_examined, fast.subsets_examined);
    }

    #[test]
    fn miner_matches_oracle(c in arb_circuit(4, 8), c_g in 1usize..4) {
        let g = circuit_to_graph(&c);
        let got: Vec<Vec<usize>> = mine_circuit(&g, c_g, &MineLimits::default())
            .unwrap()
            .candidates
            .iter()
            .map(|x| x.provenance().layers)
            .collect();
        let want: Vec<Vec<usize>> = if c_g > c.cnot_count() {
            Vec::new()
        } else {
            combinations(c.cnot_count(), c_g)
                .into_iter()
                .filter(|s| oracle_admissible(&c, s).is_some())
                .collect()
        };
        prop_assert_eq!(got, want);
    }

    #[test]
    fn commuting_swap_preserves_canonical_form(c in arb_circuit(5, 10), k in 0usize..3, at in any::<prop::sample::Index>()) {
        prop_assume!(c.cnot_count() >= 2 && k < c.n_qubits());
        let mut pairs = c.pairs();
        let i = at.index(pairs.len() - 1);
        let (a, b) = (CnotGate::new(pairs[i].0, pairs[i].1, 0), CnotGate::new(pairs[i + 1].0, pairs[i + 1].1, 1));
        prop_assume!(cnots_commute(&a, &b));
        pairs.swap(i, i + 1);
        let swapped = Circuit::new("q", c.n_qubits(), &pairs).unwrap();
        let x = Encoder::zero_prep(c, k).unwrap().canonical();
        let y = Encoder::zero_prep(swapped, k).unwrap().canonical();
        prop_assert_eq!(x, y);
    }
}

#[test]
fn commute_rule_matches_tableau_exhaustively() {
    for n in 2..=4 {
        let gates: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|(a, b)| a != b)
            .collect();
        for &p in &gates {
            for &q in &gates {
                let rule = cnots_commute(&CnotGate::new(p.0, p.1, 0), &CnotGate::new(q.0, q.1, 1));
                assert_eq!(rule, tableau_commute(n, p, q), "n={n} {p:?} {q:?}");
            }
        }
    }
}
