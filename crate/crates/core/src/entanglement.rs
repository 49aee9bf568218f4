//! Entanglement across a bipartition: exact entropy for pure states and
//! certified upper bounds on the relative entropy of entanglement `E_R`.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rayon::prelude::*;

use crate::dmsim::{partial_trace, DensityMatrix};
use crate::error::{Error, Result};
use crate::infotheory::{distance_to_max_mixed, relative_entropy, subsystem_entropy, von_neumann_entropy, Bipartition};
use crate::linalg::{self, CMatrix, C64, EIG_CLAMP};
use crate::random;

/// Largest eigenvalue a pure input must reach.
pub const PURITY_TOL: f64 = 1e-8;
/// Largest register the separable search accepts.
pub const SEARCH_MAX_QUBITS: usize = 6;
/// Tolerance on witness weights and assembly.
pub const WITNESS_TOL: f64 = 1e-10;

/// `S(ρ_A)` for a pure `ρ`, which equals `E_R` exactly.
pub fn entanglement_entropy_pure(state: &DensityMatrix, part: &Bipartition) -> Result<f64> {
    part.check_for(state)?;
    // Tr ρ² ≤ λ_max, so a high purity settles it without diagonalizing
    if state.purity() < 1.0 - PURITY_TOL {
        let top = state.eigenvalues().last().copied().unwrap_or(0.0);
        if top < 1.0 - PURITY_TOL {
            return Err(Error::NotPure(top));
        }
    }
    subsystem_entropy(state, part.side_a())
}

/// `D(ρ‖I/2^n)`, an `E_R` upper bound since `I/2^n` is separable.
pub fn er_upper_via_max_mixed(state: &DensityMatrix) -> f64 {
    distance_to_max_mixed(state)
}

/// Maps each full basis index to its `(A, Ā)` sub-indices.
fn index_split(part: &Bipartition) -> Vec<(usize, usize)> {
    let n = part.n();
    let a = part.side_a();
    let b = part.side_b();
    let gather = |x: usize, qubits: &[usize]| {
        qubits.iter().fold(0usize, |acc, &q| (acc << 1) | ((x >> (n - 1 - q)) & 1))
    };
    (0..1usize << n).map(|x| (gather(x, a), gather(x, &b))).collect()
}

fn embed_product(split: &[(usize, usize)], a: &CMatrix, b: &CMatrix) -> CMatrix {
    let d = split.len();
    DMatrix::from_fn(d, d, |r, c| {
        let (ra, rb) = split[r];
        let (ca, cb) = split[c];
        a[(ra, ca)] * b[(rb, cb)]
    })
}

/// One term `w · ρ_A ⊗ ρ_Ā` of a separable decomposition.
#[derive(Clone, Debug)]
pub struct ProductComponent {
    pub weight: f64,
    pub a: DensityMatrix,
    pub b: DensityMatrix,
}

/// A separable state given by its product decomposition.
#[derive(Clone, Debug)]
pub struct SeparableWitness {
    part: Bipartition,
    components: Vec<ProductComponent>,
    assembled: DensityMatrix,
}

impl SeparableWitness {
    pub fn new(part: Bipartition, components: Vec<ProductComponent>) -> Result<Self> {
        let na = part.side_a().len();
        let nb = part.n() - na;
        if components.is_empty() {
            return Err(Error::InvalidState("witness has no components".into()));
        }
        let mut total = 0.0;
        for c in &components {
            if c.weight < 0.0 || !c.weight.is_finite() {
                return Err(Error::InvalidState(format!("negative weight {}", c.weight)));
            }
            if c.a.n() != na || c.b.n() != nb {
                return Err(Error::DimensionMismatch { expected: na, got: c.a.n() });
            }
            total += c.weight;
        }
        if (total - 1.0).abs() > WITNESS_TOL {
            return Err(Error::InvalidState(format!("weights sum to {total}")));
        }
        let split = index_split(&part);
        let d = split.len();
        let mut m = CMatrix::zeros(d, d);
        for c in &components {
            m += embed_product(&split, c.a.matrix(), c.b.matrix()) * C64::new(c.weight, 0.0);
        }
        let assembled = DensityMatrix::from_matrix(part.n(), m)?;
        Ok(SeparableWitness { part, components, assembled })
    }

    pub fn part(&self) -> &Bipartition {
        &self.part
    }

    pub fn components(&self) -> &[ProductComponent] {
        &self.components
    }

    pub fn assembled(&self) -> &DensityMatrix {
        &self.assembled
    }

    /// Largest entry deviation between the stored state and a fresh reassembly.
    pub fn assembly_defect(&self) -> f64 {
        let split = index_split(&self.part);
        let d = split.len();
        let mut m = CMatrix::zeros(d, d);
        for c in &self.components {
            m += embed_product(&split, c.a.matrix(), c.b.matrix()) * C64::new(c.weight, 0.0);
        }
        (m - self.assembled.matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Settings for [`er_upper_via_search`].
#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    /// Pure product components per mixture; `None` picks `2^(2·min(|A|,|Ā|))`.
    pub components: Option<usize>,
    pub restarts: usize,
    pub seed: u64,
    pub iters: usize,
}

impl SearchConfig {
    pub fn new(seed: u64) -> Self {
        SearchConfig { components: None, restarts: 8, seed, iters: 200 }
    }
}

/// Where the winning witness came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessSource {
    MaxMixed,
    MarginalProduct,
    Search { restart: usize },
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub bound: f64,
    pub witness: SeparableWitness,
    pub source: WitnessSource,
}

/// Product-state mixture parametrized by free reals.
struct Mixture<'a> {
    split: &'a [(usize, usize)],
    da: usize,
    db: usize,
    k: usize,
}

impl Mixture<'_> {
    /// Per component: `2·da + 2·db` amplitudes and one logit; a final logit
    /// weights the maximally mixed component.
    fn len(&self) -> usize {
        self.k * self.stride() + 1
    }

    fn stride(&self) -> usize {
        2 * self.da + 2 * self.db + 1
    }

    fn unit(raw: &[f64]) -> Option<Vec<C64>> {
        let v: Vec<C64> = raw.chunks(2).map(|c| C64::new(c[0], c[1])).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        (norm > 1e-12).then(|| v.into_iter().map(|z| z / norm).collect())
    }

    fn weights(&self, theta: &[f64]) -> Vec<f64> {
        let mut logits: Vec<f64> = (0..self.k).map(|i| theta[i * self.stride() + self.stride() - 1]).collect();
        logits.push(theta[self.len() - 1]);
        let top = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let exp: Vec<f64> = logits.iter().map(|l| (l - top).exp()).collect();
        let s: f64 = exp.iter().sum();
        exp.into_iter().map(|e| e / s).collect()
    }

    fn vectors(&self, theta: &[f64], i: usize) -> Option<(Vec<C64>, Vec<C64>)> {
        let base = i * self.stride();
        let a = Self::unit(&theta[base..base + 2 * self.da])?;
        let b = Self::unit(&theta[base + 2 * self.da..base + 2 * self.da + 2 * self.db])?;
        Some((a, b))
    }

    fn sigma(&self, theta: &[f64]) -> Option<CMatrix> {
        let d = self.split.len();
        let w = self.weights(theta);
        let mut m = CMatrix::identity(d, d) * C64::new(w[self.k] / d as f64, 0.0);
        for i in 0..self.k {
            let (a, b) = self.vectors(theta, i)?;
            let psi = DVector::from_iterator(d, self.split.iter().map(|&(xa, xb)| a[xa] * b[xb]));
            m += (&psi * psi.adjoint()) * C64::new(w[i], 0.0);
        }
        Some(m)
    }

    fn witness(&self, theta: &[f64], part: &Bipartition) -> Option<SeparableWitness> {
        let w = self.weights(theta);
        let na = part.side_a().len();
        let nb = part.n() - na;
        let mut comps = Vec::with_capacity(self.k + 1);
        for i in 0..self.k {
            let (a, b) = self.vectors(theta, i)?;
            comps.push(ProductComponent {
                weight: w[i],
                a: DensityMatrix::from_pure(&a).ok()?,
                b: DensityMatrix::from_pure(&b).ok()?,
            });
        }
        comps.push(ProductComponent {
            weight: w[self.k],
            a: DensityMatrix::maximally_mixed(na),
            b: DensityMatrix::maximally_mixed(nb),
        });
        // absorb softmax rounding so weights sum to one
        let total: f64 = comps.iter().map(|c| c.weight).sum();
        comps.iter_mut().for_each(|c| c.weight /= total);
        SeparableWitness::new(part.clone(), comps).ok()
    }
}

/// `−Tr ρ log₂ σ − S(ρ)`; `+∞` on support failure.
fn objective(rho: &CMatrix, entropy: f64, sigma: &CMatrix) -> f64 {
    let (mu, vecs) = linalg::hermitian_eigen(sigma);
    let mut cross = 0.0;
    for (j, &m) in mu.iter().enumerate() {
        let v = vecs.column(j);
        let w = (v.adjoint() * rho * v)[(0, 0)].re;
        if m < EIG_CLAMP {
            if w > 1e-8 {
                return f64::INFINITY;
            }
        } else {
            cross += w * m.log2();
        }
    }
    -entropy - cross
}

/// Initial parameters from the marginal eigenbases, weighted by `ρ`'s
/// population of each product basis vector.
fn warm_start(mix: &Mixture, state: &DensityMatrix, part: &Bipartition) -> Result<Vec<f64>> {
    let (_, ua) = linalg::hermitian_eigen(partial_trace(state, part.side_a())?.matrix());
    let (_, ub) = linalg::hermitian_eigen(partial_trace(state, &part.side_b())?.matrix());
    let d = mix.split.len();
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(mix.da * mix.db);
    for i in 0..mix.da {
        for j in 0..mix.db {
            let psi = DVector::from_iterator(d, mix.split.iter().map(|&(xa, xb)| ua[(xa, i)] * ub[(xb, j)]));
            let w = (psi.adjoint() * state.matrix() * &psi)[(0, 0)].re;
            pairs.push((w.max(0.0), i, j));
        }
    }
    pairs.sort_by(|x, y| y.0.total_cmp(&x.0));
    let mut theta = vec![0.0; mix.len()];
    for (c, &(w, i, j)) in pairs.iter().cycle().take(mix.k).enumerate() {
        let base = c * mix.stride();
        for x in 0..mix.da {
            theta[base + 2 * x] = ua[(x, i)].re;
            theta[base + 2 * x + 1] = ua[(x, i)].im;
        }
        for y in 0..mix.db {
            theta[base + 2 * mix.da + 2 * y] = ub[(y, j)].re;
            theta[base + 2 * mix.da + 2 * y + 1] = ub[(y, j)].im;
        }
        // repeats past the first da·db entries get no weight
        let w = if c < pairs.len() { w } else { 0.0 };
        theta[base + mix.stride() - 1] = w.max(1e-12).ln();
    }
    theta[mix.len() - 1] = 1e-9f64.ln();
    Ok(theta)
}

fn random_start<R: Rng>(mix: &Mixture, rng: &mut R) -> Vec<f64> {
    let mut theta: Vec<f64> = (0..mix.len()).map(|_| random::complex_gaussian(rng).re).collect();
    for c in 0..mix.k {
        theta[c * mix.stride() + mix.stride() - 1] = 0.0;
    }
    theta[mix.len() - 1] = 0.0;
    theta
}

/// Gradient-free coordinate refinement: try `±step` on each coordinate,
/// keep any improvement, halve the step after a sweep with none.
fn refine(mix: &Mixture, rho: &CMatrix, entropy: f64, mut theta: Vec<f64>, iters: usize) -> (Vec<f64>, f64) {
    let eval = |th: &[f64]| mix.sigma(th).map_or(f64::INFINITY, |s| objective(rho, entropy, &s));
    let mut best = eval(&theta);
    let mut step = 0.2;
    for _ in 0..iters {
        let mut improved = false;
        for j in 0..theta.len() {
            for sign in [1.0, -1.0] {
                let old = theta[j];
                theta[j] = old + sign * step;
                let f = eval(&theta);
                if f < best {
                    best = f;
                    improved = true;
                    break;
                }
                theta[j] = old;
            }
        }
        if !improved {
            step *= 0.5;
            if step < 1e-9 {
                break;
            }
        }
    }
    (theta, best)
}

fn max_mixed_witness(part: &Bipartition) -> Result<SeparableWitness> {
    let na = part.side_a().len();
    SeparableWitness::new(
        part.clone(),
        vec![ProductComponent {
            weight: 1.0,
            a: DensityMatrix::maximally_mixed(na),
            b: DensityMatrix::maximally_mixed(part.n() - na),
        }],
    )
}

/// Certified `E_R` upper bound: the best of `σ₀`, `ρ_A ⊗ ρ_Ā`, and a
/// multi-restart search over mixtures of pure product states. The bound is
/// recomputed from the returned witness, so it is always `D(ρ‖witness)`.
pub fn er_upper_via_search(state: &DensityMatrix, part: &Bipartition, config: &SearchConfig) -> Result<SearchOutcome> {
    part.check_for(state)?;
    if state.n() > SEARCH_MAX_QUBITS {
        return Err(Error::Precondition(format!(
            "separable search supports at most {SEARCH_MAX_QUBITS} qubits, got {}",
            state.n()
        )));
    }
    let mut best = SearchOutcome {
        bound: er_upper_via_max_mixed(state),
        witness: max_mixed_witness(part)?,
        source: WitnessSource::MaxMixed,
    };

    let na = part.side_a().len();
    let rho_a = partial_trace(state, part.side_a())?;
    let rho_b = partial_trace(state, &part.side_b())?;
    let marginal = SeparableWitness::new(part.clone(), vec![ProductComponent { weight: 1.0, a: rho_a, b: rho_b }])?;
    if let Some(d) = relative_entropy(state, marginal.assembled())?.finite() {
        if d < best.bound {
            best = SearchOutcome { bound: d, witness: marginal, source: WitnessSource::MarginalProduct };
        }
    }

    let split = index_split(part);
    let mix = Mixture {
        split: &split,
        da: 1 << na,
        db: 1 << (part.n() - na),
        k: config.components.unwrap_or(1 << (2 * part.smaller_side())).max(1),
    };
    let entropy = von_neumann_entropy(state);
    let warm = warm_start(&mix, state, part)?;
    let runs: Vec<Option<(usize, f64, SeparableWitness)>> = (0..config.restarts)
        .into_par_iter()
        .map(|r| {
            let start = if r == 0 {
                warm.clone()
            } else {
                random_start(&mix, &mut random::rng(random::split_seed(config.seed, r as u64)))
            };
            let (theta, _) = refine(&mix, state.matrix(), entropy, start, config.iters);
            let witness = mix.witness(&theta, part)?;
            let d = relative_entropy(state, witness.assembled()).ok()?.finite()?;
            Some((r, d, witness))
        })
        .collect();
    for (r, d, witness) in runs.into_iter().flatten() {
        if d < best.bound {
            best = SearchOutcome { bound: d, witness, source: WitnessSource::Search { restart: r } };
        }
    }
    Ok(best)
}
