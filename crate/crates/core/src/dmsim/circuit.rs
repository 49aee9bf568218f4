use std::collections::HashSet;
use std::fmt;

use nalgebra::Matrix4;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::C64;

/// Tolerance on `‖U†U − I‖_max` for a gate to count as unitary.
pub const UNITARY_TOL: f64 = 1e-10;

/// Qubit connectivity of a device.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Topology {
    /// Nearest neighbours `|i − j| = 1`.
    Chain(usize),
    /// Row-major lattice; qubit `r * cols + c`. Neighbours at Manhattan distance 1.
    Grid { rows: usize, cols: usize },
    /// All-to-all.
    Full(usize),
}

impl Topology {
    pub fn n(&self) -> usize {
        match *self {
            Topology::Chain(n) | Topology::Full(n) => n,
            Topology::Grid { rows, cols } => rows * cols,
        }
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        if i == j || i >= self.n() || j >= self.n() {
            return false;
        }
        match *self {
            Topology::Chain(_) => i.abs_diff(j) == 1,
            Topology::Grid { cols, .. } => {
                let (ri, ci) = (i / cols, i % cols);
                let (rj, cj) = (j / cols, j % cols);
                ri.abs_diff(rj) + ci.abs_diff(cj) == 1
            }
            Topology::Full(_) => true,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Topology::Chain(_) => "chain",
            Topology::Grid { .. } => "grid",
            Topology::Full(_) => "full",
        }
    }
}

/// A two-qubit unitary on the ordered pair `(i, j)`. The 4×4 matrix is in
/// the basis `|a_i b_j⟩`, index `2a + b`.
#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    pub qubits: (usize, usize),
    pub unitary: Matrix4<C64>,
}

impl Gate {
    pub fn new(i: usize, j: usize, unitary: Matrix4<C64>) -> Self {
        Gate { qubits: (i, j), unitary }
    }

    /// `‖U†U − I‖_max`.
    pub fn unitarity_defect(&self) -> f64 {
        let prod = self.unitary.adjoint() * self.unitary;
        let mut worst = 0.0f64;
        for r in 0..4 {
            for c in 0..4 {
                let target = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((prod[(r, c)] - C64::new(target, 0.0)).norm());
            }
        }
        worst
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct GateLayer {
    pub gates: Vec<Gate>,
}

impl GateLayer {
    pub fn new(gates: Vec<Gate>) -> Self {
        GateLayer { gates }
    }

    pub fn empty() -> Self {
        GateLayer::default()
    }
}

/// A layered schedule over a topology. Depth is the number of layers; noise
/// follows every layer.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    pub topology: Topology,
    pub layers: Vec<GateLayer>,
}

impl Circuit {
    pub fn new(topology: Topology, layers: Vec<GateLayer>) -> Self {
        Circuit { topology, layers }
    }

    pub fn n(&self) -> usize {
        self.topology.n()
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    /// The first `t` layers.
    pub fn prefix(&self, t: usize) -> Circuit {
        Circuit::new(self.topology, self.layers[..t.min(self.layers.len())].to_vec())
    }

    /// Fails with the first violation found, if any.
    pub fn check(&self) -> Result<()> {
        let report = validate_circuit(self);
        match report.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidCircuit(v.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ViolationKind {
    NonUnitary { defect: f64 },
    DuplicateQubit(usize),
    NotAdjacent(usize, usize),
    OutOfRange(usize),
    SameQubit(usize),
    EmptyTopology,
    BadGridShape,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub layer: Option<usize>,
    pub gate: Option<usize>,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = self.layer {
            write!(f, "layer {l}")?;
            if let Some(g) = self.gate {
                write!(f, ", gate {g}")?;
            }
            write!(f, ": ")?;
        }
        match &self.kind {
            ViolationKind::NonUnitary { defect } => write!(f, "gate is not unitary (‖U†U − I‖ = {defect:.3e})"),
            ViolationKind::DuplicateQubit(q) => write!(f, "qubit {q} is acted on twice in one layer"),
            ViolationKind::NotAdjacent(i, j) => write!(f, "qubits ({i}, {j}) are not adjacent"),
            ViolationKind::OutOfRange(q) => write!(f, "qubit {q} out of range"),
            ViolationKind::SameQubit(q) => write!(f, "gate acts twice on qubit {q}"),
            ViolationKind::EmptyTopology => write!(f, "topology has no qubits"),
            ViolationKind::BadGridShape => write!(f, "grid must have positive rows and cols"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every structural invariant of a circuit and reports all
/// violations with their layer and gate indices.
pub fn validate_circuit(circuit: &Circuit) -> ValidationReport {
    let mut violations = Vec::new();
    let n = circuit.n();
    if let Topology::Grid { rows, cols } = circuit.topology {
        if rows == 0 || cols == 0 {
            violations.push(Violation { layer: None, gate: None, kind: ViolationKind::BadGridShape });
        }
    }
    if n == 0 {
        violations.push(Violation { layer: None, gate: None, kind: ViolationKind::EmptyTopology });
    }
    for (l, layer) in circuit.layers.iter().enumerate() {
        let mut seen = HashSet::new();
        for (g, gate) in layer.gates.iter().enumerate() {
            let at = |kind| Violation { layer: Some(l), gate: Some(g), kind };
            let (i, j) = gate.qubits;
            let mut in_range = true;
            for q in [i, j] {
                if q >= n {
                    violations.push(at(ViolationKind::OutOfRange(q)));
                    in_range = false;
                }
            }
            if i == j {
                violations.push(at(ViolationKind::SameQubit(i)));
            } else if in_range && !circuit.topology.adjacent(i, j) {
                violations.push(at(ViolationKind::NotAdjacent(i, j)));
            }
            for q in [i, j] {
                if !seen.insert(q) && !(q == j && i == j) {
                    violations.push(at(ViolationKind::DuplicateQubit(q)));
                }
            }
            let defect = gate.unitarity_defect();
            if !(defect <= UNITARY_TOL) {
                violations.push(at(ViolationKind::NonUnitary { defect }));
            }
        }
    }
    ValidationReport { violations }
}
