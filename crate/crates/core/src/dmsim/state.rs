use std::fmt;

use nalgebra::DMatrix;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, C64, ONE, ZERO};

/// Entrywise tolerance for Hermiticity, trace and positivity checks.
pub const STATE_TOL: f64 = 1e-9;

/// An `n`-qubit density matrix. Qubit 0 is the most significant bit of
/// the computational-basis index.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    n: usize,
    m: CMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity within [`STATE_TOL`].
    pub fn from_matrix(n: usize, m: CMatrix) -> Result<Self> {
        let dim = 1usize << n;
        if m.nrows() != dim || m.ncols() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: m.nrows() });
        }
        let herm = linalg::hermiticity_defect(&m);
        if !(herm <= STATE_TOL) {
            return Err(Error::InvalidState(format!("not Hermitian (defect {herm:.3e})")));
        }
        let tr = linalg::trace(&m);
        if !((tr.re - 1.0).abs() <= STATE_TOL && tr.im.abs() <= STATE_TOL) {
            return Err(Error::InvalidState(format!("trace is {tr}")));
        }
        let min_ev = linalg::hermitian_eigenvalues(&m)[0];
        if min_ev < -STATE_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min_ev:.3e}")));
        }
        Ok(DensityMatrix { n, m })
    }

    pub(crate) fn from_matrix_unchecked(n: usize, m: CMatrix) -> Self {
        debug_assert_eq!(m.nrows(), 1 << n);
        DensityMatrix { n, m }
    }

    /// `|0⟩⟨0|^{⊗n}`.
    pub fn zero_state(n: usize) -> Self {
        let dim = 1usize << n;
        let mut m = DMatrix::from_element(dim, dim, ZERO);
        m[(0, 0)] = ONE;
        DensityMatrix { n, m }
    }

    /// `I / 2^n`.
    pub fn maximally_mixed(n: usize) -> Self {
        let dim = 1usize << n;
        let m = CMatrix::identity(dim, dim) * C64::new(1.0 / dim as f64, 0.0);
        DensityMatrix { n, m }
    }

    /// `|ψ⟩⟨ψ|` for the normalized amplitude vector; length must be `2^n`.
    pub fn from_pure(amplitudes: &[C64]) -> Result<Self> {
        let dim = amplitudes.len();
        if dim == 0 || !dim.is_power_of_two() {
            return Err(Error::InvalidState(format!("amplitude vector length {dim} is not a power of two")));
        }
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidState("zero vector".into()));
        }
        let v: Vec<C64> = amplitudes.iter().map(|a| a / norm).collect();
        let m = DMatrix::from_fn(dim, dim, |r, c| v[r] * v[c].conj());
        Ok(DensityMatrix { n: dim.trailing_zeros() as usize, m })
    }

    /// Computational basis state `|x⟩⟨x|`.
    pub fn basis(n: usize, x: usize) -> Self {
        let dim = 1usize << n;
        let mut m = DMatrix::from_element(dim, dim, ZERO);
        m[(x, x)] = ONE;
        DensityMatrix { n, m }
    }

    /// Diagonal state with the given probabilities.
    pub fn diagonal(probs: &[f64]) -> Result<Self> {
        let dim = probs.len();
        let m = DMatrix::from_fn(dim, dim, |r, c| if r == c { C64::new(probs[r], 0.0) } else { ZERO });
        if !dim.is_power_of_two() {
            return Err(Error::InvalidState(format!("length {dim} is not a power of two")));
        }
        DensityMatrix::from_matrix(dim.trailing_zeros() as usize, m)
    }

    /// `(|00⟩ + |11⟩)/√2`.
    pub fn bell() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        DensityMatrix::from_pure(&[C64::new(h, 0.0), ZERO, ZERO, C64::new(h, 0.0)]).unwrap()
    }

    /// `(|0…0⟩ + |1…1⟩)/√2` on `n` qubits.
    pub fn ghz(n: usize) -> Self {
        let dim = 1usize << n;
        let mut v = vec![ZERO; dim];
        v[0] = ONE;
        v[dim - 1] = ONE;
        DensityMatrix::from_pure(&v).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub(crate) fn matrix_mut(&mut self) -> &mut CMatrix {
        &mut self.m
    }

    pub fn into_matrix(self) -> CMatrix {
        self.m
    }

    pub fn trace(&self) -> C64 {
        linalg::trace(&self.m)
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.m.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `self ⊗ other`; `self` occupies the low qubit indices.
    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix { n: self.n + other.n, m: linalg::kron(&self.m, &other.m) }
    }

    /// Raw eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.m)
    }

    /// Eigenvalues with drift clamped to zero and renormalized to sum one.
    pub fn spectrum(&self) -> Vec<f64> {
        linalg::clamp_spectrum(&self.eigenvalues())
    }

    /// Largest entrywise distance to another state of the same size.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        self.m.iter().zip(other.m.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Re-checks the state invariants.
    pub fn check(&self) -> Result<()> {
        DensityMatrix::from_matrix(self.n, self.m.clone()).map(|_| ())
    }
}

/// A computational-basis bit string; qubit 0 is printed first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits {
    pub value: usize,
    pub len: usize,
}

impl Bits {
    pub fn new(value: usize, len: usize) -> Self {
        Bits { value, len }
    }

    pub fn bit(&self, q: usize) -> bool {
        (self.value >> (self.len - 1 - q)) & 1 == 1
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.len {
            f.write_str(if self.bit(q) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Probability vector over `n`-bit strings.
#[derive(Clone, Debug, PartialEq)]
pub struct OutcomeDistribution {
    n: usize,
    probs: Vec<f64>,
}

/// Allowed deviation of a distribution's total from one.
pub const DIST_TOL: f64 = 1e-9;

impl OutcomeDistribution {
    pub fn new(n: usize, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != 1usize << n {
            return Err(Error::DimensionMismatch { expected: 1 << n, got: probs.len() });
        }
        if let Some(bad) = probs.iter().find(|p| !(**p >= 0.0)) {
            return Err(Error::InvalidState(format!("negative or NaN probability {bad}")));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > DIST_TOL {
            return Err(Error::InvalidState(format!("probabilities sum to {total}")));
        }
        Ok(OutcomeDistribution { n, probs })
    }

    pub(crate) fn from_vec_unchecked(n: usize, probs: Vec<f64>) -> Self {
        OutcomeDistribution { n, probs }
    }

    pub fn uniform(n: usize) -> Self {
        let dim = 1usize << n;
        OutcomeDistribution { n, probs: vec![1.0 / dim as f64; dim] }
    }

    pub fn point(n: usize, x: usize) -> Self {
        let mut probs = vec![0.0; 1 << n];
        probs[x] = 1.0;
        OutcomeDistribution { n, probs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, x: usize) -> f64 {
        self.probs[x]
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

/// `Pr[X] = ⟨X|ρ|X⟩`. Tiny negative drift is clamped and the result
/// renormalized; a diagonal whose total is off by `1e-6` or more is rejected.
pub fn output_distribution(state: &DensityMatrix) -> Result<OutcomeDistribution> {
    let diag: Vec<f64> = state.m.diagonal().iter().map(|z| z.re).collect();
    let total: f64 = diag.iter().sum();
    if !((total - 1.0).abs() < 1e-6) {
        return Err(Error::CorruptedState(total));
    }
    let clamped: Vec<f64> = diag.iter().map(|&x| x.max(0.0)).collect();
    let s: f64 = clamped.iter().sum();
    Ok(OutcomeDistribution { n: state.n, probs: clamped.into_iter().map(|x| x / s).collect() })
}

/// `shots` i.i.d. measurement outcomes, reproducible for a given seed.
pub fn sample_output(state: &DensityMatrix, seed: u64, shots: usize) -> Result<Vec<Bits>> {
    if shots == 0 {
        return Err(Error::Precondition("shots must be at least 1".into()));
    }
    let dist = output_distribution(state)?;
    let sampler = WeightedIndex::new(dist.probs()).map_err(|e| Error::InvalidState(e.to_string()))?;
    let mut rng = crate::random::rng(seed);
    Ok((0..shots).map(|_| Bits::new(sampler.sample(&mut rng), state.n)).collect())
}

/// Reduced state on `keep` (any order; output follows ascending qubit index).
pub fn partial_trace(state: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let n = state.n;
    if keep.is_empty() {
        return Err(Error::InvalidSubset("empty subset".into()));
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    if kept.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidSubset(format!("duplicate index in {keep:?}")));
    }
    if let Some(&q) = kept.iter().find(|&&q| q >= n) {
        return Err(Error::InvalidSubset(format!("qubit {q} out of range for {n} qubits")));
    }
    if kept.len() == n {
        return Ok(state.clone());
    }
    let traced: Vec<usize> = (0..n).filter(|q| !kept.contains(q)).collect();
    let k = kept.len();
    let spread = |sub: usize, qubits: &[usize]| -> usize {
        let len = qubits.len();
        qubits
            .iter()
            .enumerate()
            .filter(|(pos, _)| (sub >> (len - 1 - pos)) & 1 == 1)
            .fold(0usize, |acc, (_, &q)| acc | (1 << (n - 1 - q)))
    };
    let kdim = 1usize << k;
    let kept_idx: Vec<usize> = (0..kdim).map(|s| spread(s, &kept)).collect();
    let traced_idx: Vec<usize> = (0..1usize << traced.len()).map(|s| spread(s, &traced)).collect();
    let full = &state.m;
    let out = DMatrix::from_fn(kdim, kdim, |r, c| {
        traced_idx.iter().map(|&e| full[(kept_idx[r] | e, kept_idx[c] | e)]).sum::<C64>()
    });
    Ok(DensityMatrix { n: k, m: out })
}
