//! Small dense linear-algebra helpers over `Complex64`.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;

/// Eigenvalues below this magnitude of negativity are floating-point drift.
pub const EIG_CLAMP: f64 = 1e-10;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// Real eigenvalues of a Hermitian matrix, ascending. Only the lower
/// triangle is read.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

/// Eigenvalues and eigenvectors (as columns) of a Hermitian matrix.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = m.clone().symmetric_eigen();
    (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
}

/// Clamps drifted negative eigenvalues to zero and rescales so the spectrum
/// sums to one.
pub fn clamp_spectrum(ev: &[f64]) -> Vec<f64> {
    let clamped: Vec<f64> = ev.iter().map(|&x| x.max(0.0)).collect();
    let total: f64 = clamped.iter().sum();
    if total > 0.0 {
        clamped.into_iter().map(|x| x / total).collect()
    } else {
        clamped
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn dagger(m: &CMatrix) -> CMatrix {
    m.adjoint()
}

/// Largest entrywise deviation of `m` from Hermiticity.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    let d = m.nrows();
    let mut worst = 0.0f64;
    for c in 0..d {
        for r in c..d {
            worst = worst.max((m[(r, c)] - m[(c, r)].conj()).norm());
        }
    }
    worst
}

pub fn trace(m: &CMatrix) -> C64 {
    m.diagonal().iter().sum()
}

/// `-Σ x log₂ x` with `0 log 0 = 0`.
pub fn entropy_bits(probs: &[f64]) -> f64 {
    -probs
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| x * x.log2())
        .sum::<f64>()
}
