//! JSON circuit files.
//!
//! ```json
//! {
//!   "topology": { "kind": "chain", "n": 2 },
//!   "layers": [
//!     [ { "gate": "H", "qubits": [0, 1] } ],
//!     [ { "gate": "CNOT", "qubits": [0, 1] } ]
//!   ]
//! }
//! ```
//!
//! `gate` is a name from {H, X, Y, Z, S, T, CNOT, CZ, SWAP} or a 4×4 matrix
//! of `[re, im]` pairs. A single-qubit name acts on the first listed qubit;
//! the second is its idle partner.

use nalgebra::Matrix4;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::circuit::{Circuit, Gate, GateLayer, Topology};
use super::gates;
use crate::linalg::C64;

#[derive(Debug, Error, PartialEq)]
pub enum CircuitFileError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("layer {layer}, gate {gate}: {message}")]
    Gate { layer: usize, gate: usize, message: String },

    #[error("topology: {0}")]
    Topology(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum TopologySpec {
    Chain { n: usize },
    Grid { rows: usize, cols: usize },
    Full { n: usize },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GateSpecKind {
    Named(String),
    Matrix(Vec<Vec<[f64; 2]>>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateSpec {
    pub gate: GateSpecKind,
    pub qubits: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitFile {
    pub topology: TopologySpec,
    pub layers: Vec<Vec<GateSpec>>,
}

impl From<Topology> for TopologySpec {
    fn from(t: Topology) -> Self {
        match t {
            Topology::Chain(n) => TopologySpec::Chain { n },
            Topology::Grid { rows, cols } => TopologySpec::Grid { rows, cols },
            Topology::Full(n) => TopologySpec::Full { n },
        }
    }
}

impl From<&TopologySpec> for Topology {
    fn from(t: &TopologySpec) -> Self {
        match *t {
            TopologySpec::Chain { n } => Topology::Chain(n),
            TopologySpec::Grid { rows, cols } => Topology::Grid { rows, cols },
            TopologySpec::Full { n } => Topology::Full(n),
        }
    }
}

fn gate_from_spec(spec: &GateSpec, layer: usize, gate: usize) -> Result<Gate, CircuitFileError> {
    let fail = |message: String| CircuitFileError::Gate { layer, gate, message };
    let &[i, j] = spec.qubits.as_slice() else {
        return Err(fail(format!("expected two qubit indices, got {}", spec.qubits.len())));
    };
    let unitary = match &spec.gate {
        GateSpecKind::Named(name) => gates::named(name).ok_or_else(|| fail(format!("unknown gate '{name}'")))?,
        GateSpecKind::Matrix(rows) => {
            if rows.len() != 4 || rows.iter().any(|r| r.len() != 4) {
                return Err(fail("matrix must be 4×4".into()));
            }
            Matrix4::from_fn(|r, c| C64::new(rows[r][c][0], rows[r][c][1]))
        }
    };
    Ok(Gate::new(i, j, unitary))
}

/// Parses a circuit file. Structural checks (adjacency, unitarity, one gate
/// per qubit per layer) are left to [`super::validate_circuit`].
pub fn parse_circuit(text: &str) -> Result<Circuit, CircuitFileError> {
    let file: CircuitFile = serde_json::from_str(text).map_err(|e| CircuitFileError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let topology = Topology::from(&file.topology);
    if let Topology::Grid { rows, cols } = topology {
        if rows == 0 || cols == 0 {
            return Err(CircuitFileError::Topology("grid needs positive rows and cols".into()));
        }
    }
    if topology.n() == 0 {
        return Err(CircuitFileError::Topology("no qubits".into()));
    }
    let layers = file
        .layers
        .iter()
        .enumerate()
        .map(|(l, layer)| {
            layer
                .iter()
                .enumerate()
                .map(|(g, spec)| gate_from_spec(spec, l, g))
                .collect::<Result<Vec<_>, _>>()
                .map(GateLayer::new)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Circuit::new(topology, layers))
}

/// Serializes with raw matrices; names are not recovered.
pub fn circuit_to_json(circuit: &Circuit) -> String {
    let file = CircuitFile {
        topology: circuit.topology.into(),
        layers: circuit
            .layers
            .iter()
            .map(|layer| {
                layer
                    .gates
                    .iter()
                    .map(|g| GateSpec {
                        gate: GateSpecKind::Matrix(
                            (0..4)
                                .map(|r| (0..4).map(|c| [g.unitary[(r, c)].re, g.unitary[(r, c)].im]).collect())
                                .collect(),
                        ),
                        qubits: vec![g.qubits.0, g.qubits.1],
                    })
                    .collect()
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("circuit file serializes")
}
