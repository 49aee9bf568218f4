//! Exact density-matrix evolution of layered circuits with per-qubit
//! depolarizing noise after every layer and a terminal computational-basis
//! measurement.

mod circuit;
mod evolve;
pub mod file;
pub mod gates;
mod state;

pub use circuit::{
    validate_circuit, Circuit, Gate, GateLayer, Topology, ValidationReport, Violation, ViolationKind, UNITARY_TOL,
};
pub use evolve::{
    apply_depolarizing_all, apply_depolarizing_qubit, apply_unitary_layer, evolve, EvolveOptions, Evolution,
    NoiseStrength, DEFAULT_QUBIT_CAP, QUBIT_CAP_ENV,
};
pub use file::{circuit_to_json, parse_circuit, CircuitFileError};
pub use state::{
    output_distribution, partial_trace, sample_output, Bits, DensityMatrix, OutcomeDistribution, DIST_TOL, STATE_TOL,
};
