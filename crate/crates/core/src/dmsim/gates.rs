//! Named gates. Single-qubit gates are lifted to the ordered pair as
//! `U ⊗ I`, acting on the first qubit of the pair.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{Matrix2, Matrix4};

use super::circuit::Gate;
use crate::linalg::C64;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn hadamard() -> Matrix2<C64> {
    let h = c(FRAC_1_SQRT_2, 0.0);
    Matrix2::new(h, h, h, -h)
}

pub fn pauli_x() -> Matrix2<C64> {
    Matrix2::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0))
}

pub fn pauli_y() -> Matrix2<C64> {
    Matrix2::new(c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0))
}

pub fn pauli_z() -> Matrix2<C64> {
    Matrix2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0))
}

pub fn phase_s() -> Matrix2<C64> {
    Matrix2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0))
}

pub fn phase_t() -> Matrix2<C64> {
    let w = C64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
    Matrix2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), w)
}

/// `u ⊗ I` in the `|a b⟩` pair basis.
pub fn lift_first(u: &Matrix2<C64>) -> Matrix4<C64> {
    u.kronecker(&Matrix2::identity())
}

pub fn cnot_matrix() -> Matrix4<C64> {
    let mut m = Matrix4::zeros();
    m[(0, 0)] = c(1.0, 0.0);
    m[(1, 1)] = c(1.0, 0.0);
    m[(2, 3)] = c(1.0, 0.0);
    m[(3, 2)] = c(1.0, 0.0);
    m
}

pub fn cz_matrix() -> Matrix4<C64> {
    let mut m = Matrix4::identity();
    m[(3, 3)] = c(-1.0, 0.0);
    m
}

pub fn swap_matrix() -> Matrix4<C64> {
    let mut m = Matrix4::zeros();
    m[(0, 0)] = c(1.0, 0.0);
    m[(1, 2)] = c(1.0, 0.0);
    m[(2, 1)] = c(1.0, 0.0);
    m[(3, 3)] = c(1.0, 0.0);
    m
}

/// Looks up a named gate; single-qubit names are lifted onto the pair.
pub fn named(name: &str) -> Option<Matrix4<C64>> {
    let single = match name.to_ascii_uppercase().as_str() {
        "H" => Some(hadamard()),
        "X" => Some(pauli_x()),
        "Y" => Some(pauli_y()),
        "Z" => Some(pauli_z()),
        "S" => Some(phase_s()),
        "T" => Some(phase_t()),
        "I" | "ID" => Some(Matrix2::identity()),
        _ => None,
    };
    if let Some(u) = single {
        return Some(lift_first(&u));
    }
    match name.to_ascii_uppercase().as_str() {
        "CNOT" | "CX" => Some(cnot_matrix()),
        "CZ" => Some(cz_matrix()),
        "SWAP" => Some(swap_matrix()),
        _ => None,
    }
}

impl Gate {
    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::new(control, target, cnot_matrix())
    }

    pub fn cz(i: usize, j: usize) -> Self {
        Gate::new(i, j, cz_matrix())
    }

    pub fn swap(i: usize, j: usize) -> Self {
        Gate::new(i, j, swap_matrix())
    }

    /// Single-qubit `u` on `target`, with `partner` occupied as identity.
    pub fn single(target: usize, partner: usize, u: &Matrix2<C64>) -> Self {
        Gate::new(target, partner, lift_first(u))
    }

    pub fn identity(i: usize, j: usize) -> Self {
        Gate::new(i, j, Matrix4::identity())
    }
}
