//! Subset families and the quantum Shearer inequality
//! `Σ_F S(ρ_F) ≥ t·S(ρ)` for families covering every qubit at least `t` times.

use rand::seq::IndexedRandom;
use rand::Rng;
use rayon::prelude::*;

use crate::dmsim::DensityMatrix;
use crate::error::{Error, Result};
use crate::infotheory::{subsystem_entropy, von_neumann_entropy};
use crate::random;

/// Largest register the randomized audit accepts.
pub const AUDIT_MAX_QUBITS: usize = 4;

/// A validated family of qubit subsets with per-qubit coverage counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetFamily {
    n: usize,
    subsets: Vec<Vec<usize>>,
    coverage: Vec<usize>,
}

impl SubsetFamily {
    pub fn new(n: usize, subsets: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSubset("ground set must be nonempty".into()));
        }
        let mut coverage = vec![0; n];
        let mut normalized = Vec::with_capacity(subsets.len());
        for s in subsets {
            let mut s = s;
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidSubset(format!("duplicate index in {s:?}")));
            }
            if let Some(&q) = s.iter().find(|&&q| q >= n) {
                return Err(Error::InvalidSubset(format!("index {q} out of range for n = {n}")));
            }
            for &q in &s {
                coverage[q] += 1;
            }
            normalized.push(s);
        }
        Ok(SubsetFamily { n, subsets: normalized, coverage })
    }

    /// Every `k`-subset of `{0..n−1}` in lexicographic order.
    pub fn all_k_subsets(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidSubset(format!("k = {k} must lie in 1..={n}")));
        }
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut out);
        SubsetFamily::new(n, out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    pub fn coverage(&self) -> &[usize] {
        &self.coverage
    }
}

/// The largest `t` the family supports: the least-covered qubit's count.
pub fn min_coverage(family: &SubsetFamily) -> usize {
    family.coverage.iter().copied().min().unwrap_or(0)
}

/// `Σ_F S(ρ_F) − t·S(ρ)` in bits. Refuses `t` above the family's coverage.
pub fn shearer_slack(state: &DensityMatrix, family: &SubsetFamily, t: usize) -> Result<f64> {
    if state.n() != family.n {
        return Err(Error::DimensionMismatch { expected: family.n, got: state.n() });
    }
    let coverage = min_coverage(family);
    if t > coverage {
        return Err(Error::CoverageTooLow { t, coverage });
    }
    let mut sum = 0.0;
    for s in &family.subsets {
        if !s.is_empty() {
            sum += subsystem_entropy(state, s)?;
        }
    }
    Ok(sum - t as f64 * von_neumann_entropy(state))
}

/// Outcome of [`randomized_shearer_audit`].
#[derive(Clone, Debug, PartialEq)]
pub struct AuditReport {
    pub trials: usize,
    /// Trials whose family was all `k`-subsets at `t = C(n−1, k−1)`.
    pub all_k_trials: usize,
    pub min_slack: f64,
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn random_state<R: Rng>(n: usize, rng: &mut R) -> DensityMatrix {
    match rng.random_range(0..3) {
        0 => random::random_pure(n, rng),
        1 => random::low_rank_state(n, rng.random_range(1..=(1 << n)), rng),
        _ => random::wishart_state(n, rng),
    }
}

/// A random family together with a qualifying `t`, and whether it is an
/// all-`k`-subsets family at its tight coverage.
fn random_family<R: Rng>(n: usize, rng: &mut R) -> (SubsetFamily, usize, bool) {
    if rng.random_bool(0.5) {
        let k = rng.random_range(1..=n);
        let fam = SubsetFamily::all_k_subsets(n, k).expect("k in range");
        return (fam, binomial(n - 1, k - 1), true);
    }
    let size = rng.random_range(1..=2 * n + 2);
    let qubits: Vec<usize> = (0..n).collect();
    let mut subsets: Vec<Vec<usize>> = (0..size)
        .map(|_| {
            let k = rng.random_range(1..=n);
            qubits.choose_multiple(rng, k).copied().collect()
        })
        .collect();
    // guarantee every qubit is covered at least once
    for q in 0..n {
        if !subsets.iter().any(|s| s.contains(&q)) {
            let i = rng.random_range(0..subsets.len());
            subsets[i].push(q);
        }
    }
    let fam = SubsetFamily::new(n, subsets).expect("indices in range");
    let t = rng.random_range(0..=min_coverage(&fam));
    (fam, t, false)
}

/// Minimum slack over `trials` random states and qualifying families.
/// Trial `i` uses the seed `split_seed(seed, i)`, so the report does not
/// depend on thread scheduling.
pub fn randomized_shearer_audit(n: usize, trials: usize, seed: u64) -> Result<AuditReport> {
    if n == 0 || n > AUDIT_MAX_QUBITS {
        return Err(Error::Precondition(format!("audit needs 1 ≤ n ≤ {AUDIT_MAX_QUBITS}, got {n}")));
    }
    if trials == 0 {
        return Err(Error::Precondition("trials must be at least 1".into()));
    }
    let results: Vec<(f64, bool)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = random::rng(random::split_seed(seed, i as u64));
            let state = random_state(n, &mut rng);
            let (fam, t, all_k) = random_family(n, &mut rng);
            let slack = shearer_slack(&state, &fam, t).expect("family qualifies by construction");
            (slack, all_k)
        })
        .collect();
    Ok(AuditReport {
        trials,
        all_k_trials: results.iter().filter(|r| r.1).count(),
        min_slack: results.iter().map(|r| r.0).fold(f64::INFINITY, f64::min),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn coverage_examples() {
        assert_eq!(min_coverage(&SubsetFamily::new(2, vec![vec![0], vec![1]]).unwrap()), 1);
        assert_eq!(min_coverage(&SubsetFamily::new(3, vec![vec![0, 1]]).unwrap()), 0);
        for n in 1..=6 {
            for k in 1..=n {
                let fam = SubsetFamily::all_k_subsets(n, k).unwrap();
                // direct count of subsets containing qubit 0
                let direct = fam.subsets().iter().filter(|s| s.contains(&0)).count();
                assert_eq!(min_coverage(&fam), direct);
                assert_eq!(direct, binomial(n - 1, k - 1));
            }
        }
        assert!(SubsetFamily::new(2, vec![vec![0, 2]]).is_err());
        assert!(SubsetFamily::new(2, vec![vec![1, 1]]).is_err());
    }

    #[test]
    fn slack_examples() {
        let fam = SubsetFamily::new(2, vec![vec![0], vec![1]]).unwrap();
        assert!((shearer_slack(&DensityMatrix::bell(), &fam, 1).unwrap() - 2.0).abs() < 1e-9);
        let zero = DensityMatrix::zero_state(3);
        let fam3 = SubsetFamily::all_k_subsets(3, 2).unwrap();
        assert!(shearer_slack(&zero, &fam3, 2).unwrap().abs() < 1e-9);
        for n in 1..=4 {
            for k in 1..=n {
                let fam = SubsetFamily::all_k_subsets(n, k).unwrap();
                let t = binomial(n - 1, k - 1);
                // C(n,k)·k − C(n−1,k−1)·n vanishes identically
                assert_eq!(binomial(n, k) * k, t * n);
                let slack = shearer_slack(&DensityMatrix::maximally_mixed(n), &fam, t).unwrap();
                assert!(slack.abs() < 1e-8, "n={n} k={k} slack={slack}");
            }
        }
    }

    #[test]
    fn refuses_unqualified_t() {
        let fam = SubsetFamily::new(3, vec![vec![0, 1]]).unwrap();
        let err = shearer_slack(&DensityMatrix::zero_state(3), &fam, 1).unwrap_err();
        assert_eq!(err, Error::CoverageTooLow { t: 1, coverage: 0 });
        assert!(shearer_slack(&DensityMatrix::zero_state(2), &fam, 0).is_err());
    }

    #[test]
    fn single_set_family_is_tight() {
        let fam = SubsetFamily::new(1, vec![vec![0]]).unwrap();
        let rho = random::wishart_state(1, &mut random::rng(3));
        assert!(shearer_slack(&rho, &fam, 1).unwrap().abs() < 1e-12);
    }

    #[test]
    fn audits() {
        let r = randomized_shearer_audit(2, 500, 7).unwrap();
        assert!(r.min_slack >= -1e-7);
        assert!(r.all_k_trials > 0);
        let r3 = randomized_shearer_audit(3, 200, 42).unwrap();
        assert!(r3.min_slack >= -1e-7);
        assert_eq!(randomized_shearer_audit(3, 50, 9).unwrap(), randomized_shearer_audit(3, 50, 9).unwrap());
        assert!(randomized_shearer_audit(5, 1, 0).is_err());
        assert!(randomized_shearer_audit(2, 0, 0).is_err());
    }

    #[test]
    fn all_two_subsets_on_three() {
        let fam = SubsetFamily::all_k_subsets(3, 2).unwrap();
        for seed in 0..20 {
            let rho = random::wishart_state(3, &mut random::rng(seed));
            assert!(shearer_slack(&rho, &fam, 2).unwrap() >= -1e-7);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn strong_subadditivity(seed in any::<u64>()) {
            let rho = random::low_rank_state(3, 2, &mut random::rng(seed));
            let s01 = subsystem_entropy(&rho, &[0, 1]).unwrap();
            let s12 = subsystem_entropy(&rho, &[1, 2]).unwrap();
            let s1 = subsystem_entropy(&rho, &[1]).unwrap();
            prop_assert!(s01 + s12 >= von_neumann_entropy(&rho) + s1 - 1e-7);
        }

        #[test]
        fn slack_monotone_in_t(seed in any::<u64>(), n in 1usize..=4) {
            let mut rng = random::rng(seed);
            let rho = random::wishart_state(n, &mut rng);
            let (fam, _, _) = random_family(n, &mut rng);
            let s = von_neumann_entropy(&rho);
            for t in 1..=min_coverage(&fam) {
                let hi = shearer_slack(&rho, &fam, t).unwrap();
                let lo = shearer_slack(&rho, &fam, t - 1).unwrap();
                prop_assert!((lo - (hi + s)).abs() < 1e-9);
                prop_assert!(lo >= hi - 1e-12);
            }
        }

        #[test]
        fn random_instances_nonnegative(seed in any::<u64>(), n in 1usize..=4) {
            let mut rng = random::rng(seed);
            let rho = random_state(n, &mut rng);
            let (fam, t, _) = random_family(n, &mut rng);
            prop_assert!(shearer_slack(&rho, &fam, t).unwrap() >= -1e-7);
        }
    }
}
