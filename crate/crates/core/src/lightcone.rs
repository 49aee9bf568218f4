//! Backward light cone of a bipartition cut and the entanglement bounds it
//! implies.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::dmsim::{Circuit, Topology};
use crate::error::{Error, Result};
use crate::infotheory::Bipartition;

/// Result of [`boundary_cone`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeReport {
    pub depth: usize,
    /// Final support `S`, ascending.
    pub support: Vec<usize>,
    /// Support after processing layers `t, t−1, …, 1`.
    pub per_layer: Vec<Vec<usize>>,
    /// `min(|S∩A|, |S∩Ā|)`, capped at `t` for chain cuts on a chain.
    pub bound_a: usize,
    /// `min(|S∩A|, |S∩Ā|)`.
    pub bound_generic: usize,
}

fn end_anchored(circuit: &Circuit, part: &Bipartition) -> bool {
    matches!(circuit.topology, Topology::Chain(_)) && part.is_chain_cut()
}

/// Sweeps the layers backwards. A gate joins the cone when it straddles the
/// cut or touches qubits already in the cone; every other gate is a local
/// unitary that commutes past the cone and cannot change the entanglement.
pub fn boundary_cone(circuit: &Circuit, part: &Bipartition) -> Result<ConeReport> {
    circuit.check()?;
    if part.n() != circuit.n() {
        return Err(Error::InvalidBipartition(format!(
            "bipartition is over {} qubits but the circuit has {}",
            part.n(),
            circuit.n()
        )));
    }
    let mut support = BTreeSet::new();
    let mut per_layer = Vec::with_capacity(circuit.depth());
    for layer in circuit.layers.iter().rev() {
        for gate in &layer.gates {
            let (i, j) = gate.qubits;
            if part.separates(i, j) || support.contains(&i) || support.contains(&j) {
                support.insert(i);
                support.insert(j);
            }
        }
        per_layer.push(support.iter().copied().collect());
    }
    let in_a = support.iter().filter(|&&q| part.in_a(q)).count();
    let bound_generic = in_a.min(support.len() - in_a);
    let bound_a = if end_anchored(circuit, part) { bound_generic.min(circuit.depth()) } else { bound_generic };
    Ok(ConeReport {
        depth: circuit.depth(),
        support: support.into_iter().collect(),
        per_layer,
        bound_a,
        bound_generic,
    })
}

/// Entanglement upper bound in ebits from the cone alone.
pub fn depth_entanglement_bound(circuit: &Circuit, part: &Bipartition) -> Result<f64> {
    Ok(boundary_cone(circuit, part)?.bound_a as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dmsim::{evolve, gates, EvolveOptions, Gate, GateLayer, NoiseStrength};
    use crate::entanglement::entanglement_entropy_pure;
    use crate::infotheory::{distance_to_max_mixed, mutual_information};
    use crate::random;
    use proptest::prelude::*;

    fn chain(n: usize, layers: Vec<Vec<Gate>>) -> Circuit {
        Circuit::new(Topology::Chain(n), layers.into_iter().map(GateLayer::new).collect())
    }

    #[test]
    fn no_crossing_gate_means_empty_cone() {
        let c = chain(4, vec![vec![Gate::cnot(0, 1), Gate::cnot(2, 3)], vec![Gate::cz(0, 1)]]);
        let r = boundary_cone(&c, &Bipartition::chain(4, 2).unwrap()).unwrap();
        assert!(r.support.is_empty());
        assert_eq!((r.bound_a, r.bound_generic), (0, 0));
    }

    #[test]
    fn single_crossing_gate() {
        let c = chain(6, vec![vec![Gate::cnot(2, 3)]]);
        let part = Bipartition::chain(6, 3).unwrap();
        let r = boundary_cone(&c, &part).unwrap();
        assert_eq!(r.support, vec![2, 3]);
        assert_eq!(r.bound_a, 1);
        assert_eq!(depth_entanglement_bound(&c, &part).unwrap(), 1.0);
    }

    #[test]
    fn bell_pair_saturates_depth_one() {
        let h = gates::lift_first(&gates::hadamard());
        let cnot = gates::cnot_matrix();
        let c = chain(2, vec![vec![Gate::new(0, 1, cnot * h)]]);
        let part = Bipartition::chain(2, 1).unwrap();
        let out = evolve(&c, NoiseStrength::NOISELESS, EvolveOptions::default()).unwrap();
        assert_eq!(depth_entanglement_bound(&c, &part).unwrap(), 1.0);
        assert!((mutual_information(&out.state, &part).unwrap() / 2.0 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn empty_circuit_bound_is_zero() {
        let c = chain(4, vec![]);
        assert_eq!(depth_entanglement_bound(&c, &Bipartition::chain(4, 2).unwrap()).unwrap(), 0.0);
    }

    #[test]
    fn brickwork_two_layers() {
        let c = random::brickwork_chain(8, 2, &mut random::rng(1));
        let r = boundary_cone(&c, &Bipartition::chain(8, 4).unwrap()).unwrap();
        assert!(r.support.len() <= 8);
        assert!(r.bound_a <= 2);
    }

    #[test]
    fn dense_brickwork_cone_within_four_t() {
        // every pair filled: the cone widens by one qubit per side per layer
        for t in 1..=4 {
            let c = random::brickwork_chain(16, t, &mut random::rng(t as u64));
            let r = boundary_cone(&c, &Bipartition::chain(16, 8).unwrap()).unwrap();
            assert!(r.support.len() <= 4 * t);
            assert_eq!(r.bound_a, r.bound_generic);
            assert!(r.bound_a <= t);
        }
    }

    #[test]
    fn grid_block_cone_uses_generic_bound() {
        let topo = Topology::Grid { rows: 2, cols: 2 };
        let c = Circuit::new(topo, vec![GateLayer::new(vec![Gate::cnot(0, 1), Gate::cnot(2, 3)])]);
        let r = boundary_cone(&c, &Bipartition::grid_block(2, 2, 1, 1).unwrap()).unwrap();
        assert_eq!(r.support, vec![0, 1]);
        assert_eq!(r.bound_a, r.bound_generic);
        assert_eq!(r.bound_generic, 1);
    }

    #[test]
    fn rejects_mismatched_inputs() {
        let c = chain(4, vec![vec![Gate::cnot(0, 1)]]);
        assert!(boundary_cone(&c, &Bipartition::chain(5, 2).unwrap()).is_err());
        let bad = chain(4, vec![vec![Gate::cnot(0, 2)]]);
        assert!(boundary_cone(&bad, &Bipartition::chain(4, 2).unwrap()).is_err());
    }

    #[test]
    fn random_noiseless_depth_three_on_eight() {
        let c = random::random_chain_circuit(8, 3, 0.8, &mut random::rng(17));
        let out = evolve(&c, NoiseStrength::NOISELESS, EvolveOptions::default()).unwrap();
        for cut in 1..8 {
            let part = Bipartition::chain(8, cut).unwrap();
            let e = entanglement_entropy_pure(&out.state, &part).unwrap();
            assert!(e <= depth_entanglement_bound(&c, &part).unwrap() + 1e-7);
        }
    }

    #[test]
    fn report_serializes() {
        let c = chain(4, vec![vec![Gate::cnot(1, 2)]]);
        let r = boundary_cone(&c, &Bipartition::chain(4, 2).unwrap()).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, r#"{"depth":1,"support":[1,2],"per_layer":[[1,2]],"bound_a":1,"bound_generic":1}"#);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn noiseless_entropy_below_cone_bound(seed in any::<u64>(), n in 2usize..=8, depth in 0usize..=6) {
            let c = random::random_chain_circuit(n, depth, 0.7, &mut random::rng(seed));
            let out = evolve(&c, NoiseStrength::NOISELESS, EvolveOptions::default()).unwrap();
            for cut in 1..n {
                let part = Bipartition::chain(n, cut).unwrap();
                let bound = depth_entanglement_bound(&c, &part).unwrap();
                prop_assert!(bound <= depth as f64);
                prop_assert!(entanglement_entropy_pure(&out.state, &part).unwrap() <= bound + 1e-7);
            }
        }

        #[test]
        fn noisy_mutual_information_below_both_bounds(seed in any::<u64>(), n in 2usize..=6, pi in 0usize..3) {
            let p = [0.1, 0.2, 0.5][pi];
            let c = random::random_chain_circuit(n, 8, 0.8, &mut random::rng(seed));
            let out = evolve(&c, NoiseStrength::new(p).unwrap(), EvolveOptions::recording()).unwrap();
            let part = Bipartition::halves(n).unwrap();
            for (t, rho) in out.trajectory.iter().enumerate() {
                let prefix = c.prefix(t + 1);
                let i = mutual_information(rho, &part).unwrap();
                prop_assert!(i <= 2.0 * depth_entanglement_bound(&prefix, &part).unwrap() + 1e-7);
                prop_assert!(i <= n as f64 * (1.0 - p).powi(t as i32 + 1) + 1e-7);
                prop_assert!(i <= distance_to_max_mixed(rho) + 1e-7);
            }
        }

        #[test]
        fn cone_growth_on_chain(seed in any::<u64>(), n in 2usize..=12, depth in 1usize..=8) {
            let c = random::random_chain_circuit(n, depth, 0.9, &mut random::rng(seed));
            for cut in 1..n {
                let r = boundary_cone(&c, &Bipartition::chain(n, cut).unwrap()).unwrap();
                let mut prev: Vec<usize> = Vec::new();
                for snap in &r.per_layer {
                    prop_assert!(prev.iter().all(|q| snap.contains(q)));
                    prop_assert!(snap.len() <= prev.len() + 2);
                    prop_assert!(snap.iter().all(|&q| q < n));
                    prev = snap.clone();
                }
            }
        }
    }
}
