//! Entropies, divergences and distances. Everything is in bits unless a
//! [`LogBase`] says otherwise.

use std::fmt;

use nalgebra::DMatrix;

use crate::dmsim::{partial_trace, DensityMatrix, OutcomeDistribution};
use crate::error::{Error, Result};
use crate::linalg::{self, C64};

/// σ-eigenvalues below this are treated as outside σ's support.
pub const SUPPORT_EIG_TOL: f64 = 1e-10;
/// ρ-weight outside σ's support above this makes `D(ρ‖σ)` infinite.
pub const SUPPORT_WEIGHT_TOL: f64 = 1e-8;

/// A divergence value, possibly `+∞` when supports are incompatible.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Divergence {
    Finite(f64),
    Infinite,
}

impl Divergence {
    pub fn is_infinite(self) -> bool {
        matches!(self, Divergence::Infinite)
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Divergence::Finite(x) => Some(x),
            Divergence::Infinite => None,
        }
    }

    /// Orders `Infinite` above every finite value.
    pub fn le(self, bound: f64) -> bool {
        matches!(self, Divergence::Finite(x) if x <= bound)
    }
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Divergence::Finite(x) => write!(f, "{x}"),
            Divergence::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogBase {
    Bits,
    Nats,
}

/// `S(ρ) = −Σ λ log₂ λ` over the clamped spectrum.
pub fn von_neumann_entropy(state: &DensityMatrix) -> f64 {
    let s = linalg::entropy_bits(&state.spectrum());
    s.clamp(0.0, state.n() as f64)
}

/// Entropy of the reduced state on `qubits`.
pub fn subsystem_entropy(state: &DensityMatrix, qubits: &[usize]) -> Result<f64> {
    Ok(von_neumann_entropy(&partial_trace(state, qubits)?))
}

/// `D(ρ‖σ) = Tr ρ (log₂ ρ − log₂ σ)`.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<Divergence> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch { expected: rho.dim(), got: sigma.dim() });
    }
    let (mu, vecs) = linalg::hermitian_eigen(sigma.matrix());
    let r = rho.matrix();
    let mut outside = 0.0;
    let mut cross = 0.0;
    for (j, &m) in mu.iter().enumerate() {
        let v = vecs.column(j);
        // ⟨v|ρ|v⟩
        let w = (v.adjoint() * r * v)[(0, 0)].re;
        if m < SUPPORT_EIG_TOL {
            outside += w;
        } else {
            cross += w * m.log2();
        }
    }
    if outside > SUPPORT_WEIGHT_TOL {
        return Ok(Divergence::Infinite);
    }
    let d = -von_neumann_entropy(rho) - cross;
    Ok(Divergence::Finite(d.max(0.0)))
}

/// `D(ρ‖I/2^n) = n − S(ρ)`.
pub fn distance_to_max_mixed(state: &DensityMatrix) -> f64 {
    (state.n() as f64 - von_neumann_entropy(state)).max(0.0)
}

pub fn shannon_entropy(dist: &OutcomeDistribution) -> f64 {
    linalg::entropy_bits(dist.probs())
}

/// Zeroes every off-diagonal entry in the computational basis.
pub fn dephase(state: &DensityMatrix) -> DensityMatrix {
    let m = state.matrix();
    let d = state.dim();
    let out = DMatrix::from_fn(d, d, |r, c| if r == c { C64::new(m[(r, r)].re, 0.0) } else { C64::new(0.0, 0.0) });
    DensityMatrix::from_matrix_unchecked(state.n(), out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum CutShape {
    /// `A = {0..cut−1}`.
    Chain { cut: usize },
    /// `A` is the `block_rows × block_cols` block at the lattice corner.
    GridBlock { rows: usize, cols: usize, block_rows: usize, block_cols: usize },
}

/// A contiguous split `(A, Ā)` of the register.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    n: usize,
    shape: CutShape,
    side_a: Vec<usize>,
}

impl Bipartition {
    /// `A = {0..cut−1}`, `Ā = {cut..n−1}`.
    pub fn chain(n: usize, cut: usize) -> Result<Self> {
        if cut == 0 || cut >= n {
            return Err(Error::InvalidBipartition(format!("cut {cut} must satisfy 1 ≤ cut ≤ {}", n.saturating_sub(1))));
        }
        Ok(Bipartition { n, shape: CutShape::Chain { cut }, side_a: (0..cut).collect() })
    }

    /// Even split, `A` taking the smaller half when `n` is odd.
    pub fn halves(n: usize) -> Result<Self> {
        Bipartition::chain(n, n / 2)
    }

    /// Corner block of a row-major `rows × cols` lattice.
    pub fn grid_block(rows: usize, cols: usize, block_rows: usize, block_cols: usize) -> Result<Self> {
        let n = rows * cols;
        let size = block_rows * block_cols;
        if block_rows == 0 || block_cols == 0 || block_rows > rows || block_cols > cols || size >= n {
            return Err(Error::InvalidBipartition(format!(
                "block {block_rows}×{block_cols} must be a proper nonempty sub-block of {rows}×{cols}"
            )));
        }
        let side_a = (0..block_rows).flat_map(|r| (0..block_cols).map(move |c| r * cols + c)).collect();
        Ok(Bipartition { n, shape: CutShape::GridBlock { rows, cols, block_rows, block_cols }, side_a })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn side_a(&self) -> &[usize] {
        &self.side_a
    }

    pub fn side_b(&self) -> Vec<usize> {
        (0..self.n).filter(|q| !self.in_a(*q)).collect()
    }

    pub fn in_a(&self, q: usize) -> bool {
        match self.shape {
            CutShape::Chain { cut } => q < cut,
            CutShape::GridBlock { cols, block_rows, block_cols, .. } => q / cols < block_rows && q % cols < block_cols,
        }
    }

    /// Whether the pair lies on different sides.
    pub fn separates(&self, i: usize, j: usize) -> bool {
        self.in_a(i) != self.in_a(j)
    }

    /// True for chain cuts: `A` then holds qubit 0, an end of the chain.
    pub fn is_chain_cut(&self) -> bool {
        matches!(self.shape, CutShape::Chain { .. })
    }

    pub fn smaller_side(&self) -> usize {
        self.side_a.len().min(self.n - self.side_a.len())
    }

    pub(crate) fn check_for(&self, state: &DensityMatrix) -> Result<()> {
        if self.n != state.n() {
            return Err(Error::InvalidBipartition(format!(
                "bipartition is over {} qubits but the state has {}",
                self.n,
                state.n()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shape {
            CutShape::Chain { cut } => write!(f, "{}|{}", cut, self.n - cut),
            CutShape::GridBlock { block_rows, block_cols, rows, cols } => {
                write!(f, "{block_rows}x{block_cols} block of {rows}x{cols}")
            }
        }
    }
}

/// `I(A:Ā) = S(A) + S(Ā) − S(ρ)`, clamped at zero.
pub fn mutual_information(state: &DensityMatrix, part: &Bipartition) -> Result<f64> {
    part.check_for(state)?;
    let sa = subsystem_entropy(state, part.side_a())?;
    let sb = subsystem_entropy(state, &part.side_b())?;
    Ok((sa + sb - von_neumann_entropy(state)).max(0.0))
}

fn check_lengths(d1: &OutcomeDistribution, d2: &OutcomeDistribution) -> Result<()> {
    if d1.len() != d2.len() {
        return Err(Error::DimensionMismatch { expected: d1.len(), got: d2.len() });
    }
    Ok(())
}

/// `Σ |p − q|`, in `[0, 2]`.
pub fn one_norm_distance(d1: &OutcomeDistribution, d2: &OutcomeDistribution) -> Result<f64> {
    check_lengths(d1, d2)?;
    Ok(d1.probs().iter().zip(d2.probs()).map(|(p, q)| (p - q).abs()).sum())
}

/// `Σ p log(p/q)`; infinite when some `p > 0` meets `q = 0`.
pub fn kl_divergence(d1: &OutcomeDistribution, d2: &OutcomeDistribution, base: LogBase) -> Result<Divergence> {
    check_lengths(d1, d2)?;
    let mut total = 0.0;
    for (&p, &q) in d1.probs().iter().zip(d2.probs()) {
        if p == 0.0 {
            continue;
        }
        if q == 0.0 {
            return Ok(Divergence::Infinite);
        }
        total += p * (p / q).ln();
    }
    let total = total.max(0.0);
    Ok(Divergence::Finite(match base {
        LogBase::Nats => total,
        LogBase::Bits => total / std::f64::consts::LN_2,
    }))
}

/// `sqrt(2 D)` for `D` in nats: the Pinsker ceiling on the one-norm distance.
pub fn pinsker_ceiling(kl_nats: Divergence) -> f64 {
    match kl_nats {
        Divergence::Finite(d) => (2.0 * d).sqrt(),
        Divergence::Infinite => f64::INFINITY,
    }
}
