//! Seeded generators for random states, unitaries and circuits used by the
//! property audits.

use nalgebra::{DMatrix, Matrix4};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use rand_distr::StandardNormal;

use crate::dmsim::{Circuit, DensityMatrix, Gate, GateLayer, Topology};
use crate::linalg::{CMatrix, C64};

/// Deterministic generator from a 64-bit seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed for the `index`-th independent stream derived from `master`.
pub fn split_seed(master: u64, index: u64) -> u64 {
    // splitmix64 finalizer over (master, index)
    let mut z = master ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn ginibre<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    DMatrix::from_fn(dim, dim, |_, _| complex_gaussian(rng))
}

/// Haar-random unitary via QR of a Ginibre matrix with phase correction.
pub fn haar_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    let qr = ginibre(dim, rng).qr();
    let mut q = qr.q();
    let r = qr.r();
    for k in 0..dim {
        let d = r[(k, k)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..dim {
            q[(i, k)] *= phase;
        }
    }
    q
}

pub fn haar_two_qubit<R: Rng + ?Sized>(rng: &mut R) -> Matrix4<C64> {
    let u = haar_unitary(4, rng);
    Matrix4::from_fn(|r, c| u[(r, c)])
}

/// Normalized Wishart state `G G† / Tr(G G†)`; full rank almost surely.
pub fn wishart_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DensityMatrix {
    let g = ginibre(1 << n, rng);
    let w = &g * g.adjoint();
    let tr = crate::linalg::trace(&w).re;
    DensityMatrix::from_matrix_unchecked(n, w / C64::new(tr, 0.0))
}

/// Wishart state of rank at most `rank`.
pub fn low_rank_state<R: Rng + ?Sized>(n: usize, rank: usize, rng: &mut R) -> DensityMatrix {
    let g = DMatrix::from_fn(1 << n, rank.max(1), |_, _| complex_gaussian(rng));
    let w = &g * g.adjoint();
    let tr = crate::linalg::trace(&w).re;
    DensityMatrix::from_matrix_unchecked(n, w / C64::new(tr, 0.0))
}

pub fn random_pure<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DensityMatrix {
    let v: Vec<C64> = (0..1usize << n).map(|_| complex_gaussian(rng)).collect();
    DensityMatrix::from_pure(&v).expect("gaussian vector is nonzero")
}

/// Random chain circuit: each layer picks a random matching of neighbouring
/// pairs (brick offset chosen at random) and fills each slot with a Haar
/// two-qubit unitary with probability `fill`.
pub fn random_chain_circuit<R: Rng + ?Sized>(n: usize, depth: usize, fill: f64, rng: &mut R) -> Circuit {
    let layers = (0..depth)
        .map(|_| {
            let offset = rng.random_range(0..2usize);
            let mut gates = Vec::new();
            let mut i = offset;
            while i + 1 < n {
                if rng.random::<f64>() < fill {
                    let (a, b) = if rng.random::<bool>() { (i, i + 1) } else { (i + 1, i) };
                    gates.push(Gate::new(a, b, haar_two_qubit(rng)));
                }
                i += 2;
            }
            GateLayer::new(gates)
        })
        .collect();
    Circuit::new(Topology::Chain(n), layers)
}

/// Brickwork chain circuit of Haar gates: layer `l` couples `(i, i+1)` for
/// every `i ≡ l (mod 2)`.
pub fn brickwork_chain<R: Rng + ?Sized>(n: usize, depth: usize, rng: &mut R) -> Circuit {
    let layers = (0..depth)
        .map(|l| {
            let gates = (l % 2..n.saturating_sub(1))
                .step_by(2)
                .map(|i| Gate::new(i, i + 1, haar_two_qubit(rng)))
                .collect();
            GateLayer::new(gates)
        })
        .collect();
    Circuit::new(Topology::Chain(n), layers)
}
