//! Exact transcript laws of adaptive hybrid algorithms: a classical
//! controller queries noisy devices round by round, each request depending on
//! the outcomes so far. Everything is enumerated exactly.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bounds::{fmt_sig12, ThresholdVariant};
use crate::dmsim::{
    evolve, gates, output_distribution, Bits, Circuit, EvolveOptions, Gate, GateLayer, NoiseStrength, OutcomeDistribution,
    Topology,
};
use crate::error::{Error, Result};
use crate::infotheory::{kl_divergence, one_norm_distance, pinsker_ceiling, shannon_entropy, Divergence, LogBase};
use crate::random;

/// Largest total transcript length enumerated exactly.
pub const ENUMERATION_CAP: usize = 20;
/// Tolerance for the chain rule and the KL identity.
pub const EXACT_TOL: f64 = 1e-9;
/// Slack allowed on inequality checks.
pub const CHECK_TOL: f64 = 1e-7;

/// What a controller asks the device to run in one round.
#[derive(Clone, Debug, PartialEq)]
pub struct CircuitRequest {
    pub circuit: Circuit,
    /// Replaces the run's noise strength for this round; coin rounds use `p = 1`.
    pub noise: Option<NoiseStrength>,
}

/// A deterministic adaptive controller. Round `i` always measures
/// [`qubits`](HybridScenario::qubits)`(i)` qubits; only the circuit content
/// depends on the transcript.
pub trait HybridScenario: Sync {
    fn name(&self) -> String;
    fn rounds(&self) -> usize;
    fn qubits(&self, round: usize) -> usize;
    /// Circuit for `round` given the outcomes of rounds `0..round`.
    fn request(&self, round: usize, transcript: &[Bits]) -> CircuitRequest;
    /// Final output bit from the full transcript.
    fn decide(&self, transcript: &[Bits]) -> bool;

    fn total_bits(&self) -> usize {
        (0..self.rounds()).map(|i| self.qubits(i)).sum()
    }
}

/// Joint law of all measured bits and the induced law of the output bit.
#[derive(Clone, Debug, PartialEq)]
pub struct TranscriptLaw {
    /// Over the concatenation `X₁ … X_q`, round 1 in the high bits.
    pub joint: OutcomeDistribution,
    pub output: OutcomeDistribution,
    /// Bits per round.
    pub widths: Vec<usize>,
    /// `S(Xᵢ | X₁ … X_{i−1})` for each round.
    pub conditional_entropies: Vec<f64>,
    /// Smallest circuit depth requested anywhere in the enumeration.
    pub min_depth: usize,
}

/// Splits a joint index into per-round bit strings.
pub fn split_transcript(index: usize, widths: &[usize]) -> Vec<Bits> {
    let total: usize = widths.iter().sum();
    let mut shift = total;
    widths
        .iter()
        .map(|&w| {
            shift -= w;
            Bits::new((index >> shift) & ((1 << w) - 1), w)
        })
        .collect()
}

fn join_transcript(parts: &[Bits]) -> usize {
    parts.iter().fold(0, |acc, b| (acc << b.len) | b.value)
}

/// Law of the output bit when the transcript follows `joint`.
pub fn pushforward(joint: &OutcomeDistribution, widths: &[usize], scenario: &dyn HybridScenario) -> OutcomeDistribution {
    let mut out = vec![0.0; 2];
    for (x, &px) in joint.probs().iter().enumerate() {
        if px > 0.0 {
            out[scenario.decide(&split_transcript(x, widths)) as usize] += px;
        }
    }
    OutcomeDistribution::from_vec_unchecked(1, out)
}

fn check_shape(scenario: &dyn HybridScenario) -> Result<Vec<usize>> {
    let q = scenario.rounds();
    if q == 0 {
        return Err(Error::Precondition("scenario needs at least one round".into()));
    }
    let widths: Vec<usize> = (0..q).map(|i| scenario.qubits(i)).collect();
    if widths.contains(&0) {
        return Err(Error::Precondition("every round must measure at least one qubit".into()));
    }
    let bits: usize = widths.iter().sum();
    if bits > ENUMERATION_CAP {
        return Err(Error::EnumerationCap { bits, cap: ENUMERATION_CAP });
    }
    Ok(widths)
}

struct Enumerator<'a> {
    scenario: &'a dyn HybridScenario,
    p: NoiseStrength,
    opts: EvolveOptions,
    widths: Vec<usize>,
    joint: Vec<f64>,
    conditional: Vec<f64>,
    min_depth: usize,
    cache: Vec<(CircuitRequest, OutcomeDistribution)>,
}

impl Enumerator<'_> {
    fn law_of(&mut self, round: usize, req: CircuitRequest) -> Result<OutcomeDistribution> {
        if let Some((_, d)) = self.cache.iter().find(|(r, _)| *r == req) {
            return Ok(d.clone());
        }
        let want = self.widths[round];
        if req.circuit.n() != want {
            return Err(Error::InvalidCircuit(format!(
                "round {round} must act on {want} qubits, request has {}",
                req.circuit.n()
            )));
        }
        let p = req.noise.unwrap_or(self.p);
        let dist = output_distribution(&evolve(&req.circuit, p, self.opts)?.state)?;
        self.cache.push((req, dist.clone()));
        Ok(dist)
    }

    fn walk(&mut self, round: usize, prefix: &mut Vec<Bits>, weight: f64) -> Result<()> {
        if round == self.widths.len() {
            self.joint[join_transcript(prefix)] += weight;
            return Ok(());
        }
        let req = self.scenario.request(round, prefix);
        self.min_depth = self.min_depth.min(req.circuit.depth());
        let dist = self.law_of(round, req)?;
        self.conditional[round] += weight * shannon_entropy(&dist);
        for (x, &px) in dist.probs().iter().enumerate() {
            if px == 0.0 {
                continue;
            }
            prefix.push(Bits::new(x, self.widths[round]));
            self.walk(round + 1, prefix, weight * px)?;
            prefix.pop();
        }
        Ok(())
    }
}

/// Enumerates every transcript with its exact probability.
pub fn run_exact(scenario: &dyn HybridScenario, p: NoiseStrength) -> Result<TranscriptLaw> {
    run_exact_with(scenario, p, EvolveOptions::default())
}

pub fn run_exact_with(scenario: &dyn HybridScenario, p: NoiseStrength, opts: EvolveOptions) -> Result<TranscriptLaw> {
    let widths = check_shape(scenario)?;
    let total: usize = widths.iter().sum();
    let mut e = Enumerator {
        scenario,
        p,
        opts: EvolveOptions { record: false, ..opts },
        widths: widths.clone(),
        joint: vec![0.0; 1 << total],
        conditional: vec![0.0; widths.len()],
        min_depth: usize::MAX,
        cache: Vec::new(),
    };
    e.walk(0, &mut Vec::with_capacity(widths.len()), 1.0)?;
    let joint = OutcomeDistribution::new(total, e.joint)?;
    let output = pushforward(&joint, &widths, scenario);
    Ok(TranscriptLaw { joint, output, widths, conditional_entropies: e.conditional, min_depth: e.min_depth })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropyCheck {
    pub s_joint: f64,
    /// `(1 − (1−p)^t)·Σnᵢ`.
    pub lower_bound: f64,
    pub slack: f64,
    /// `|S_joint − Σᵢ S(Xᵢ | X_{<i})|`.
    pub chain_rule_defect: f64,
    pub pass: bool,
}

/// Checks `S(X₁ … X_q) ≥ (1 − (1−p)^t)·Σnᵢ` when every round has depth `≥ t`.
pub fn joint_entropy_check(scenario: &dyn HybridScenario, p: NoiseStrength, t: usize) -> Result<EntropyCheck> {
    let law = run_exact(scenario, p)?;
    if law.min_depth < t {
        return Err(Error::Precondition(format!("a round has depth {} < t = {t}", law.min_depth)));
    }
    let total = law.joint.n() as f64;
    let eps = p.survival().powi(t as i32);
    let s_joint = shannon_entropy(&law.joint);
    let lower_bound = (1.0 - eps) * total;
    let chain: f64 = law.conditional_entropies.iter().sum();
    let chain_rule_defect = (s_joint - chain).abs();
    Ok(EntropyCheck {
        s_joint,
        lower_bound,
        slack: s_joint - lower_bound,
        chain_rule_defect,
        pass: s_joint >= lower_bound - CHECK_TOL && chain_rule_defect <= EXACT_TOL,
    })
}

/// The same controller fed uniformly random bits in place of device outcomes.
pub fn coin_replace(law: &TranscriptLaw, scenario: &dyn HybridScenario) -> TranscriptLaw {
    let joint = OutcomeDistribution::uniform(law.joint.n());
    let output = pushforward(&joint, &law.widths, scenario);
    TranscriptLaw {
        joint,
        output,
        widths: law.widths.clone(),
        conditional_entropies: law.widths.iter().map(|&w| w as f64).collect(),
        min_depth: law.min_depth,
    }
}

/// How far coin replacement moves the transcript and the output.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReplacementGap {
    pub total_bits: usize,
    pub s_joint: f64,
    /// `D(joint ‖ uniform)`.
    pub kl_bits: f64,
    pub kl_nats: f64,
    /// `‖output − replaced output‖₁`.
    pub one_norm: f64,
    /// `sqrt(2 · kl_nats)`.
    pub pinsker_rhs: f64,
    /// `D(output ‖ replaced output)` in bits; `None` if infinite.
    pub output_kl_bits: Option<f64>,
    /// `|kl_bits − (T − S_joint)|`.
    pub identity_defect: f64,
    pub pass: bool,
}

pub fn replacement_gap(scenario: &dyn HybridScenario, p: NoiseStrength) -> Result<ReplacementGap> {
    let law = run_exact(scenario, p)?;
    let coin = coin_replace(&law, scenario);
    let total = law.joint.n();
    let s_joint = shannon_entropy(&law.joint);
    let kl_bits = finite(kl_divergence(&law.joint, &coin.joint, LogBase::Bits)?);
    let kl_nats = finite(kl_divergence(&law.joint, &coin.joint, LogBase::Nats)?);
    let one_norm = one_norm_distance(&law.output, &coin.output)?;
    let pinsker_rhs = pinsker_ceiling(Divergence::Finite(kl_nats));
    let output_kl_bits = kl_divergence(&law.output, &coin.output, LogBase::Bits)?.finite();
    let identity_defect = (kl_bits - (total as f64 - s_joint)).abs();
    let data_processing = output_kl_bits.is_some_and(|d| d <= kl_bits + EXACT_TOL);
    Ok(ReplacementGap {
        total_bits: total,
        s_joint,
        kl_bits,
        kl_nats,
        one_norm,
        pinsker_rhs,
        output_kl_bits,
        identity_defect,
        pass: identity_defect <= EXACT_TOL && one_norm <= pinsker_rhs + EXACT_TOL && data_processing,
    })
}

fn finite(d: Divergence) -> f64 {
    // the uniform law has full support, so this never fires
    d.finite().expect("divergence to the uniform law is finite")
}

impl fmt::Display for ReplacementGap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "total_bits: {}", self.total_bits)?;
        writeln!(f, "s_joint: {}", fmt_sig12(self.s_joint))?;
        writeln!(f, "kl_bits: {}", fmt_sig12(self.kl_bits))?;
        writeln!(f, "kl_nats: {}", fmt_sig12(self.kl_nats))?;
        writeln!(f, "one_norm: {}", fmt_sig12(self.one_norm))?;
        writeln!(f, "pinsker_rhs: {}", fmt_sig12(self.pinsker_rhs))?;
        match self.output_kl_bits {
            Some(d) => writeln!(f, "output_kl_bits: {}", fmt_sig12(d))?,
            None => writeln!(f, "output_kl_bits: inf")?,
        }
        write!(f, "identity_defect: {}", fmt_sig12(self.identity_defect))
    }
}

/// Probability that a majority of `reps` independent runs is correct when
/// each is correct with probability `base`.
pub fn majority_amplify(base: f64, reps: usize) -> Result<f64> {
    if !(base > 0.5 && base <= 1.0) {
        return Err(Error::Precondition(format!("base probability must lie in (0.5, 1], got {base}")));
    }
    if reps % 2 == 0 {
        return Err(Error::Precondition(format!("reps must be odd, got {reps}")));
    }
    if base == 1.0 {
        return Ok(1.0);
    }
    // Σ_{k > reps/2} C(reps, k) base^k (1−base)^(reps−k), in log space
    let (lp, lq) = (base.ln(), (1.0 - base).ln());
    let mut log_c = 0.0; // ln C(reps, reps)
    let mut total = 0.0;
    for k in (reps / 2 + 1..=reps).rev() {
        total += (log_c + k as f64 * lp + (reps - k) as f64 * lq).exp();
        // C(reps, k−1) = C(reps, k) · k / (reps − k + 1)
        log_c += (k as f64).ln() - ((reps - k + 1) as f64).ln();
    }
    Ok(total.min(1.0))
}

/// Smallest odd `reps` whose majority is correct with probability `≥ target`.
pub fn reps_for_target(base: f64, target: f64, max_reps: usize) -> Result<usize> {
    let mut reps = 1;
    while reps <= max_reps {
        if majority_amplify(base, reps)? >= target {
            return Ok(reps);
        }
        reps += 2;
    }
    Err(Error::Precondition(format!("no odd reps ≤ {max_reps} reaches {target}")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Factor {
    Smallest(u64),
    Prime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FactorSearch {
    pub result: Factor,
    pub oracle_calls: usize,
}

/// Ground-truth oracle: does `n` have a factor `d` with `2 ≤ d < k`, `d < n`?
pub fn trial_division_oracle(n: u64, k: u64) -> bool {
    (2..k.min(n)).any(|d| n % d == 0)
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Finds the smallest nontrivial factor by binary search over the decision
/// oracle "is there a factor below `k`". The smallest factor of a composite
/// is at most `⌊√N⌋`, so the search runs over `k ∈ [3, ⌊√N⌋ + 1]`.
pub fn smallest_factor_via_decision(n: u64, mut oracle: impl FnMut(u64, u64) -> bool) -> Result<FactorSearch> {
    if n < 2 {
        return Err(Error::Precondition(format!("N must be at least 2, got {n}")));
    }
    let mut calls = 0;
    let mut ask = |k: u64| {
        calls += 1;
        oracle(n, k)
    };
    let top = isqrt(n) + 1;
    if !ask(top) {
        return Ok(FactorSearch { result: Factor::Prime, oracle_calls: calls });
    }
    if top <= 2 {
        return Err(Error::InconsistentOracle(format!("claims a factor of {n} below 2")));
    }
    // invariant: answer(lo) = false, answer(hi) = true
    let (mut lo, mut hi) = (2, top);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ask(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let factor = hi - 1;
    if n % factor != 0 {
        return Err(Error::InconsistentOracle(format!(
            "answers are not monotone: search settled on {factor}, which does not divide {n}"
        )));
    }
    Ok(FactorSearch { result: Factor::Smallest(factor), oracle_calls: calls })
}

/// Built-in demonstration controllers on chains of `n` qubits, each round of
/// depth `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    /// Round 1 prepares `|10…0⟩`; each later round flips qubit 0 iff the
    /// previous round had odd parity. Output: parity of round 1.
    Parity { q: usize, n: usize, t: usize },
    /// Round 1 measures `|+⟩^{⊗n}`; each later round re-prepares the previous
    /// outcome. Output: whether the last round equals the first.
    AdaptiveCopy { q: usize, n: usize, t: usize },
    /// `q` parity rounds followed by an `n`-bit coin round (`p = 1`). Output:
    /// parity of round 1, flipped when every coin is 0.
    CoinPad { q: usize, n: usize, t: usize },
}

fn pauli_x_pair(a: bool, b: bool) -> nalgebra::Matrix4<crate::linalg::C64> {
    let pick = |on: bool| if on { gates::pauli_x() } else { nalgebra::Matrix2::identity() };
    pick(a).kronecker(&pick(b))
}

/// Applies `u_q` (`X` or identity) to each flagged qubit, pairing neighbours
/// so every gate is two-qubit. Returns the layers used (one or two).
fn flag_layers(n: usize, flags: &[bool], mk: impl Fn(bool, bool) -> nalgebra::Matrix4<crate::linalg::C64>) -> Vec<GateLayer> {
    if n < 2 || !flags.iter().any(|&f| f) {
        return Vec::new();
    }
    let mut first = Vec::new();
    let mut i = 0;
    while i + 1 < n {
        if flags[i] || flags[i + 1] {
            first.push(Gate::new(i, i + 1, mk(flags[i], flags[i + 1])));
        }
        i += 2;
    }
    let mut layers = vec![GateLayer::new(first)];
    if n % 2 == 1 && flags[n - 1] {
        layers.push(GateLayer::new(vec![Gate::new(n - 1, n - 2, mk(flags[n - 1], false))]));
    }
    layers
}

fn padded(n: usize, mut layers: Vec<GateLayer>, t: usize) -> Circuit {
    while layers.len() < t {
        layers.push(GateLayer::empty());
    }
    Circuit::new(Topology::Chain(n), layers)
}

fn parity(b: &Bits) -> bool {
    b.value.count_ones() % 2 == 1
}

impl Builtin {
    fn shape(&self) -> (usize, usize, usize) {
        match *self {
            Builtin::Parity { q, n, t } | Builtin::AdaptiveCopy { q, n, t } | Builtin::CoinPad { q, n, t } => (q, n, t),
        }
    }

    /// Declared minimum depth of every round.
    pub fn depth(&self) -> usize {
        self.shape().2
    }

    pub fn validate(&self) -> Result<()> {
        let (q, n, t) = self.shape();
        if q == 0 || n == 0 || t == 0 {
            return Err(Error::Precondition("q, n and t must all be at least 1".into()));
        }
        let bits = self.total_bits();
        if bits > ENUMERATION_CAP {
            return Err(Error::EnumerationCap { bits, cap: ENUMERATION_CAP });
        }
        Ok(())
    }

    fn parity_round(n: usize, t: usize, round: usize, transcript: &[Bits]) -> Circuit {
        let flip = round == 0 || parity(&transcript[round - 1]);
        let mut flags = vec![false; n];
        flags[0] = flip;
        padded(n, flag_layers(n, &flags, pauli_x_pair), t)
    }
}

impl HybridScenario for Builtin {
    fn name(&self) -> String {
        let (q, n, t) = self.shape();
        let kind = match self {
            Builtin::Parity { .. } => "parity",
            Builtin::AdaptiveCopy { .. } => "adaptive-copy",
            Builtin::CoinPad { .. } => "coin-pad",
        };
        format!("{kind}(q={q}, n={n}, t={t})")
    }

    fn rounds(&self) -> usize {
        match *self {
            Builtin::CoinPad { q, .. } => q + 1,
            _ => self.shape().0,
        }
    }

    fn qubits(&self, _round: usize) -> usize {
        self.shape().1
    }

    fn request(&self, round: usize, transcript: &[Bits]) -> CircuitRequest {
        let (q, n, t) = self.shape();
        match self {
            Builtin::Parity { .. } => CircuitRequest { circuit: Self::parity_round(n, t, round, transcript), noise: None },
            Builtin::CoinPad { .. } if round == q => {
                CircuitRequest { circuit: padded(n, Vec::new(), t), noise: Some(NoiseStrength::FULL) }
            }
            Builtin::CoinPad { .. } => CircuitRequest { circuit: Self::parity_round(n, t, round, transcript), noise: None },
            Builtin::AdaptiveCopy { .. } => {
                let layers = if round == 0 {
                    let h = gates::hadamard();
                    flag_layers(n, &vec![true; n], |a, b| {
                        let pick = |on: bool| if on { h } else { nalgebra::Matrix2::identity() };
                        pick(a).kronecker(&pick(b))
                    })
                } else {
                    let prev = &transcript[round - 1];
                    let flags: Vec<bool> = (0..n).map(|j| prev.bit(j)).collect();
                    flag_layers(n, &flags, pauli_x_pair)
                };
                CircuitRequest { circuit: padded(n, layers, t), noise: None }
            }
        }
    }

    fn decide(&self, transcript: &[Bits]) -> bool {
        match self {
            Builtin::Parity { .. } => parity(&transcript[0]),
            Builtin::AdaptiveCopy { .. } => transcript[0] == transcript[transcript.len() - 1],
            Builtin::CoinPad { .. } => parity(&transcript[0]) ^ (transcript[transcript.len() - 1].value == 0),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum BuiltinKind {
    Parity,
    AdaptiveCopy,
    CoinPad,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    scenario: BuiltinKind,
    q: usize,
    n: usize,
    t: usize,
    #[serde(default)]
    p: Option<NoiseStrength>,
}

/// Parsed scenario file: a built-in controller plus an optional noise strength.
#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioFile {
    pub scenario: Builtin,
    pub p: Option<NoiseStrength>,
}

/// Reads `{"scenario": "parity" | "adaptive-copy" | "coin-pad", "q", "n", "t", "p"?}`.
pub fn parse_scenario(text: &str) -> Result<ScenarioFile> {
    let raw: RawScenario =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    let (q, n, t) = (raw.q, raw.n, raw.t);
    let scenario = match raw.scenario {
        BuiltinKind::Parity => Builtin::Parity { q, n, t },
        BuiltinKind::AdaptiveCopy => Builtin::AdaptiveCopy { q, n, t },
        BuiltinKind::CoinPad => Builtin::CoinPad { q, n, t },
    };
    scenario.validate()?;
    Ok(ScenarioFile { scenario, p: raw.p })
}

/// Controller whose every circuit and decision is a pseudorandom function of
/// the transcript prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomScenario {
    pub seed: u64,
    pub widths: Vec<usize>,
    pub depth: usize,
}

fn prefix_seed(seed: u64, round: usize, transcript: &[Bits]) -> u64 {
    transcript
        .iter()
        .fold(random::split_seed(seed, round as u64), |acc, b| random::split_seed(acc, ((b.len as u64) << 32) | b.value as u64))
}

impl HybridScenario for RandomScenario {
    fn name(&self) -> String {
        format!("random(seed={}, widths={:?}, t={})", self.seed, self.widths, self.depth)
    }

    fn rounds(&self) -> usize {
        self.widths.len()
    }

    fn qubits(&self, round: usize) -> usize {
        self.widths[round]
    }

    fn request(&self, round: usize, transcript: &[Bits]) -> CircuitRequest {
        let mut rng = random::rng(prefix_seed(self.seed, round, transcript));
        CircuitRequest { circuit: random::random_chain_circuit(self.widths[round], self.depth, 1.0, &mut rng), noise: None }
    }

    fn decide(&self, transcript: &[Bits]) -> bool {
        prefix_seed(self.seed ^ 0xD1CE, transcript.len(), transcript) & 1 == 1
    }
}

/// `count` random adaptive controllers with `q ≤ 3`, `nᵢ ≤ 3`, each paired
/// with `p ∈ {0.2, 0.5, 1}` and depth `t ∈ {1, 2, 4}`.
pub fn adaptive_battery(count: usize, seed: u64) -> Vec<(RandomScenario, NoiseStrength)> {
    use rand::Rng;
    (0..count)
        .map(|i| {
            let s = random::split_seed(seed, i as u64);
            let mut rng = random::rng(s);
            let q = rng.random_range(1..=3);
            let widths = (0..q).map(|_| rng.random_range(1..=3)).collect();
            let depth = [1, 2, 4][rng.random_range(0..3)];
            let p = [0.2, 0.5, 1.0][rng.random_range(0..3)];
            (RandomScenario { seed: s, widths, depth }, NoiseStrength::new(p).expect("p in range"))
        })
        .collect()
}

/// Depth at which a parity demo's rounds should run for coin replacement to
/// be justified under `variant`.
pub fn replacement_depth(total_bits: usize, p: NoiseStrength, variant: ThresholdVariant) -> Result<usize> {
    Ok(crate::bounds::advantage_depth_threshold(total_bits, p, variant)?.ceil() as usize)
}
