use serde::{Deserialize, Serialize};

use super::circuit::{Circuit, Gate, GateLayer};
use super::state::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::C64;

/// Default dense-simulation cap; `4^12` complex entries is about 270 MB.
pub const DEFAULT_QUBIT_CAP: usize = 12;

/// Environment variable overriding [`DEFAULT_QUBIT_CAP`].
pub const QUBIT_CAP_ENV: &str = "NISQ_QUBIT_CAP";

/// Per-qubit depolarizing strength `p ∈ [0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct NoiseStrength(f64);

impl NoiseStrength {
    pub const NOISELESS: NoiseStrength = NoiseStrength(0.0);
    pub const FULL: NoiseStrength = NoiseStrength(1.0);

    pub fn new(p: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&p) {
            Ok(NoiseStrength(p))
        } else {
            Err(Error::InvalidNoise(p))
        }
    }

    pub fn p(self) -> f64 {
        self.0
    }

    /// Per-layer survival factor `1 − p`.
    pub fn survival(self) -> f64 {
        1.0 - self.0
    }
}

impl TryFrom<f64> for NoiseStrength {
    type Error = Error;
    fn try_from(p: f64) -> Result<Self> {
        NoiseStrength::new(p)
    }
}

impl From<NoiseStrength> for f64 {
    fn from(p: NoiseStrength) -> f64 {
        p.0
    }
}

fn apply_gate_in_place(state: &mut DensityMatrix, gate: &Gate) {
    let n = state.n();
    let dim = state.dim();
    let (qi, qj) = gate.qubits;
    let bi = 1usize << (n - 1 - qi);
    let bj = 1usize << (n - 1 - qj);
    let u = &gate.unitary;
    let ud = u.adjoint();
    let data = state.matrix_mut().as_mut_slice();
    // column-major: entry (r, c) lives at c * dim + r
    for base in (0..dim).filter(|b| b & (bi | bj) == 0) {
        let idx = [base, base | bj, base | bi, base | bi | bj];
        // ρ ← U ρ
        for c in 0..dim {
            let col = c * dim;
            let v = [data[col + idx[0]], data[col + idx[1]], data[col + idx[2]], data[col + idx[3]]];
            for k in 0..4 {
                data[col + idx[k]] = u[(k, 0)] * v[0] + u[(k, 1)] * v[1] + u[(k, 2)] * v[2] + u[(k, 3)] * v[3];
            }
        }
        // ρ ← ρ U†
        for r in 0..dim {
            let v = [data[idx[0] * dim + r], data[idx[1] * dim + r], data[idx[2] * dim + r], data[idx[3] * dim + r]];
            for k in 0..4 {
                data[idx[k] * dim + r] =
                    v[0] * ud[(0, k)] + v[1] * ud[(1, k)] + v[2] * ud[(2, k)] + v[3] * ud[(3, k)];
            }
        }
    }
}

/// `ρ ↦ U ρ U†` for the tensor product of the layer's gates.
pub fn apply_unitary_layer(state: &DensityMatrix, layer: &GateLayer) -> Result<DensityMatrix> {
    let n = state.n();
    for gate in &layer.gates {
        let (i, j) = gate.qubits;
        if i >= n || j >= n || i == j {
            return Err(Error::DimensionMismatch { expected: n, got: i.max(j) + 1 });
        }
    }
    let mut out = state.clone();
    for gate in &layer.gates {
        apply_gate_in_place(&mut out, gate);
    }
    Ok(out)
}

/// `Λ₁` on a single qubit: `(1 − p) ρ + p (I/2 ⊗ Tr_q ρ)`.
pub fn apply_depolarizing_qubit(state: &DensityMatrix, qubit: usize, p: NoiseStrength) -> Result<DensityMatrix> {
    if qubit >= state.n() {
        return Err(Error::DimensionMismatch { expected: state.n(), got: qubit + 1 });
    }
    let mut out = state.clone();
    depolarize_in_place(&mut out, qubit, p.p());
    Ok(out)
}

fn depolarize_in_place(state: &mut DensityMatrix, qubit: usize, p: f64) {
    let n = state.n();
    let dim = state.dim();
    let mask = 1usize << (n - 1 - qubit);
    let keep = C64::new(1.0 - p, 0.0);
    let stay = 1.0 - 0.5 * p;
    let swap = 0.5 * p;
    let data = state.matrix_mut().as_mut_slice();
    for c in (0..dim).filter(|c| c & mask == 0) {
        let c1 = c | mask;
        for r in (0..dim).filter(|r| r & mask == 0) {
            let r1 = r | mask;
            let a = data[c * dim + r];
            let d = data[c1 * dim + r1];
            data[c * dim + r] = a * stay + d * swap;
            data[c1 * dim + r1] = d * stay + a * swap;
            data[c1 * dim + r] *= keep;
            data[c * dim + r1] *= keep;
        }
    }
}

/// `Λ = Λ₁^{⊗n}`.
pub fn apply_depolarizing_all(state: &DensityMatrix, p: NoiseStrength) -> DensityMatrix {
    let mut out = state.clone();
    if p.p() > 0.0 {
        for q in 0..out.n() {
            depolarize_in_place(&mut out, q, p.p());
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvolveOptions {
    /// Keep `ρ(1) … ρ(t)`.
    pub record: bool,
    pub qubit_cap: usize,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        EvolveOptions { record: false, qubit_cap: DEFAULT_QUBIT_CAP }
    }
}

impl EvolveOptions {
    pub fn recording() -> Self {
        EvolveOptions { record: true, ..Self::default() }
    }

    /// Default options with the cap read from `NISQ_QUBIT_CAP` when set.
    pub fn from_env() -> Self {
        let qubit_cap = std::env::var(QUBIT_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_QUBIT_CAP);
        EvolveOptions { record: false, qubit_cap }
    }
}

#[derive(Clone, Debug)]
pub struct Evolution {
    pub state: DensityMatrix,
    /// State after each noise layer, `ρ(1) … ρ(t)`; empty unless recorded.
    pub trajectory: Vec<DensityMatrix>,
}

/// Runs `Λ ∘ U_t ∘ … ∘ Λ ∘ U_1` on `|0⟩⟨0|^{⊗n}`.
pub fn evolve(circuit: &Circuit, p: NoiseStrength, opts: EvolveOptions) -> Result<Evolution> {
    let n = circuit.n();
    if n > opts.qubit_cap {
        return Err(Error::QubitCapExceeded { n, cap: opts.qubit_cap });
    }
    circuit.check()?;
    let mut state = DensityMatrix::zero_state(n);
    let mut trajectory = Vec::new();
    for layer in &circuit.layers {
        for gate in &layer.gates {
            apply_gate_in_place(&mut state, gate);
        }
        if p.p() > 0.0 {
            for q in 0..n {
                depolarize_in_place(&mut state, q, p.p());
            }
        }
        if opts.record {
            trajectory.push(state.clone());
        }
    }
    Ok(Evolution { state, trajectory })
}
