use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use nisqlim::bounds::{
    self, advantage_depth_threshold, curve_csv, decay_bound, ent_bound_1d, ent_bound_2d, estimate_p as estimate,
    plateau_curve, fmt_sig12, lattice_threshold, t_star_1d, CurveTopology, DeviceSpec, ThresholdVariant,
};
use nisqlim::dmsim::{evolve, parse_circuit, Circuit, CircuitFileError, EvolveOptions, NoiseStrength, Topology};
use nisqlim::entanglement::{
    entanglement_entropy_pure, er_upper_via_max_mixed, er_upper_via_search, SearchConfig, SEARCH_MAX_QUBITS,
};
use nisqlim::hybrid::{joint_entropy_check, parse_scenario, replacement_depth, replacement_gap, HybridScenario};
use nisqlim::infotheory::{distance_to_max_mixed, mutual_information, von_neumann_entropy, Bipartition};
use nisqlim::lightcone::{boundary_cone, depth_entanglement_bound};
use nisqlim::shearer::randomized_shearer_audit;
use nisqlim::Error;

use crate::{CurveKind, CutArgs, Variant};

/// Slack on bound checks.
const TOL: f64 = 1e-7;

pub struct Output {
    pub text: String,
    pub warnings: Vec<String>,
    pub all_passed: bool,
}

impl Output {
    fn new() -> Self {
        Output { text: String::new(), warnings: Vec::new(), all_passed: true }
    }

    fn line(&mut self, key: &str, value: impl std::fmt::Display) {
        let _ = writeln!(self.text, "{key}: {value}");
    }

    fn check(&mut self, name: &str, ok: bool) {
        self.all_passed &= ok;
        self.line(&format!("check {name}"), if ok { "pass" } else { "FAIL" });
    }
}

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => 2,
            Error::QubitCapExceeded { .. } | Error::EnumerationCap { .. } => 4,
            _ => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<CircuitFileError> for Failure {
    fn from(e: CircuitFileError) -> Self {
        let code = match e {
            CircuitFileError::Syntax { .. } => 2,
            CircuitFileError::Gate { .. } | CircuitFileError::Topology(_) => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

type CmdResult = Result<Output, Failure>;

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: 5, message: format!("{}: {e}", path.display()) }
}

fn noise(p: f64) -> Result<NoiseStrength, Failure> {
    Ok(NoiseStrength::new(p)?)
}

fn load_circuit(path: &Path) -> Result<Circuit, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    let circuit = parse_circuit(&text)?;
    let opts = EvolveOptions::from_env();
    if circuit.n() > opts.qubit_cap {
        return Err(Error::QubitCapExceeded { n: circuit.n(), cap: opts.qubit_cap }.into());
    }
    circuit.check()?;
    Ok(circuit)
}

fn parse_block(text: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure { code: 2, message: format!("block must look like ROWSxCOLS, got '{text}'") };
    let (r, c) = text.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((r.trim().parse().map_err(|_| bad())?, c.trim().parse().map_err(|_| bad())?))
}

/// The requested cut, or `None` for a one-qubit register.
fn bipartition(circuit: &Circuit, args: &CutArgs) -> Result<Option<Bipartition>, Failure> {
    let n = circuit.n();
    match (circuit.topology, &args.block) {
        (Topology::Grid { rows, cols }, block) => {
            let (br, bc) = match block {
                Some(b) => parse_block(b)?,
                None if rows >= 2 => (rows / 2, cols),
                None if cols >= 2 => (rows, cols / 2),
                None => return Ok(None),
            };
            if args.cut.is_some() {
                return Err(Error::InvalidBipartition("grid devices take --block, not --cut".into()).into());
            }
            Ok(Some(Bipartition::grid_block(rows, cols, br, bc)?))
        }
        (_, Some(_)) => Err(Error::InvalidBipartition("--block needs a grid device".into()).into()),
        (_, None) => match args.cut {
            Some(k) => Ok(Some(Bipartition::chain(n, k)?)),
            None if n >= 2 => Ok(Some(Bipartition::halves(n)?)),
            None => Ok(None),
        },
    }
}

pub fn simulate(path: &Path, p: f64, cut: &CutArgs) -> CmdResult {
    let p = noise(p)?;
    let circuit = load_circuit(path)?;
    let part = bipartition(&circuit, cut)?;
    let n = circuit.n();
    let opts = EvolveOptions { record: true, ..EvolveOptions::from_env() };
    let run = evolve(&circuit, p, opts)?;

    let mut out = Output::new();
    out.line("n", n);
    out.line("p", fmt_sig12(p.p()));
    out.line("topology", circuit.topology.name());
    out.line("cut", part.as_ref().map_or("none".to_string(), |b| b.to_string()));
    let _ = writeln!(out.text, "t,entropy,distance,decay_bound,mutual_information,cone_bound");
    let zero = nisqlim::dmsim::DensityMatrix::zero_state(n);
    let states = std::iter::once(&zero).chain(run.trajectory.iter());
    let mut ok = true;
    for (t, rho) in states.enumerate() {
        let s = von_neumann_entropy(rho);
        let d = distance_to_max_mixed(rho);
        let decay = decay_bound(n, p, t);
        ok &= d <= decay + TOL;
        let (info, cone) = match &part {
            Some(b) => {
                let i = mutual_information(rho, b)?;
                let cone = depth_entanglement_bound(&circuit.prefix(t), b)?;
                ok &= i <= d + TOL && i <= 2.0 * cone + TOL;
                (fmt_sig12(i), fmt_sig12(cone))
            }
            None => (String::new(), String::new()),
        };
        let _ = writeln!(out.text, "{t},{},{},{},{info},{cone}", fmt_sig12(s), fmt_sig12(d), fmt_sig12(decay));
    }
    out.check("rows_within_bounds", ok);
    Ok(out)
}

pub fn curve(n_min: usize, n_max: usize, ps: &[f64], kind: CurveKind, dest: Option<&Path>) -> CmdResult {
    if n_min < 2 || n_max < n_min {
        return Err(Error::Precondition(format!("need 2 ≤ n-min ≤ n-max, got {n_min}..{n_max}")).into());
    }
    let ns: Vec<usize> = (n_min..=n_max).collect();
    let mut rows = Vec::new();
    for &p in ps {
        let p = noise(p)?;
        rows.extend(plateau_curve(&ns, p, CurveTopology::Chain)?);
        if kind == CurveKind::Grid {
            rows.extend(plateau_curve(&ns, p, CurveTopology::Grid)?);
        }
    }
    let csv = curve_csv(&rows);
    let mut out = Output::new();
    match dest {
        Some(path) => fs::write(path, csv).map_err(|e| io_failure(path, e))?,
        None => out.text = csv,
    }
    Ok(out)
}

pub fn bounds(n: usize, p: f64, t: Option<usize>, total_bits: Option<usize>) -> CmdResult {
    let p = noise(p)?;
    let t_star = t_star_1d(n, p)?;
    let t = t.unwrap_or(t_star);
    let total = total_bits.unwrap_or(n);
    let mut out = Output::new();
    out.line("n", n);
    out.line("p", fmt_sig12(p.p()));
    out.line("t", t);
    out.line("decay_bound", fmt_sig12(decay_bound(n, p, t)));
    out.line("t_star", t_star);
    let e1 = ent_bound_1d(n, p)?;
    out.line("ent_bound_1d", fmt_sig12(e1));
    match ent_bound_2d(n, p) {
        Ok(v) => out.line("ent_bound_2d", fmt_sig12(v)),
        Err(_) => out.line(
            "ent_bound_2d",
            format!("uncertified (needs a perfect square n > {})", fmt_sig12(lattice_threshold(p))),
        ),
    }
    out.line("total_bits", total);
    for variant in [ThresholdVariant::Full, ThresholdVariant::Half] {
        let th = advantage_depth_threshold(total, p, variant)?;
        let residual = total as f64 * decay_bound(1, p, th.ceil() as usize);
        out.line(&format!("threshold_{variant}"), fmt_sig12(th));
        out.line(&format!("residual_{variant}"), fmt_sig12(residual));
        out.line(&format!("residual_{variant}_below_1_32"), residual <= 1.0 / 32.0 + 1e-12);
    }
    if n as f64 > 1.0 / p.survival() {
        out.check("ent_bound_1d_at_least_t_star", e1 >= t_star as f64);
    }
    Ok(out)
}

pub fn shearer(n: usize, trials: usize, seed: u64) -> CmdResult {
    let report = randomized_shearer_audit(n, trials, seed)?;
    let mut out = Output::new();
    out.line("n", n);
    out.line("trials", report.trials);
    out.line("seed", seed);
    out.line("all_k_subset_trials", report.all_k_trials);
    out.line("min_slack", fmt_sig12(report.min_slack));
    let ok = report.min_slack >= -TOL;
    out.line("verdict", if ok { "min slack ≥ 0 (within 1e-7)" } else { "negative slack found" });
    out.check("min_slack_nonnegative", ok);
    Ok(out)
}

fn variant(v: Variant) -> ThresholdVariant {
    match v {
        Variant::Full => ThresholdVariant::Full,
        Variant::Half => ThresholdVariant::Half,
    }
}

pub fn hybrid(path: &Path, p: Option<f64>, v: Variant) -> CmdResult {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    let file = parse_scenario(&text)?;
    let p = match (p, file.p) {
        (Some(p), _) => noise(p)?,
        (None, Some(p)) => p,
        (None, None) => return Err(Error::Precondition("no p given in the file or on the command line".into()).into()),
    };
    let s = file.scenario;
    let t = s.depth();
    let check = joint_entropy_check(&s, p, t)?;
    let gap = replacement_gap(&s, p)?;

    let mut out = Output::new();
    out.line("scenario", s.name());
    out.line("p", fmt_sig12(p.p()));
    out.line("entropy_lower_bound", fmt_sig12(check.lower_bound));
    out.line("entropy_slack", fmt_sig12(check.slack));
    out.line("chain_rule_defect", fmt_sig12(check.chain_rule_defect));
    let _ = writeln!(out.text, "{gap}");
    if p.p() > 0.0 && p.p() < 1.0 {
        let v = variant(v);
        let needed = replacement_depth(s.total_bits(), p, v)?;
        out.line(&format!("replacement_depth_{v}"), needed);
        out.line("depth_meets_threshold", t >= needed);
    }
    out.check("joint_entropy_bound", check.pass);
    out.check("kl_identity_and_pinsker", gap.pass);
    Ok(out)
}

pub fn lightcone(path: &Path, cut: &CutArgs, json: bool) -> CmdResult {
    let circuit = load_circuit(path)?;
    let part = bipartition(&circuit, cut)?
        .ok_or_else(|| Failure::from(Error::InvalidBipartition("a one-qubit register has no cut".into())))?;
    let report = boundary_cone(&circuit, &part)?;
    let mut out = Output::new();
    if json {
        out.text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
        return Ok(out);
    }
    out.line("cut", &part);
    out.line("depth", report.depth);
    out.line("support", format!("{:?}", report.support));
    for (i, snap) in report.per_layer.iter().enumerate() {
        out.line(&format!("layer {}", report.depth - i), format!("{snap:?}"));
    }
    out.line("bound_generic", report.bound_generic);
    out.line("bound", report.bound_a);
    Ok(out)
}

pub fn entangle(
    path: &Path,
    p: f64,
    cut: &CutArgs,
    seed: u64,
    restarts: usize,
    components: Option<usize>,
    iters: usize,
) -> CmdResult {
    let p = noise(p)?;
    let circuit = load_circuit(path)?;
    let part = bipartition(&circuit, cut)?
        .ok_or_else(|| Failure::from(Error::InvalidBipartition("a one-qubit register has no cut".into())))?;
    let rho = evolve(&circuit, p, EvolveOptions::from_env())?.state;
    let n = circuit.n();
    let t = circuit.depth();

    let mut out = Output::new();
    out.line("n", n);
    out.line("p", fmt_sig12(p.p()));
    out.line("depth", t);
    out.line("cut", &part);
    let info = mutual_information(&rho, &part)?;
    let max_mixed = er_upper_via_max_mixed(&rho);
    let cone = depth_entanglement_bound(&circuit, &part)?;
    out.line("mutual_information", fmt_sig12(info));
    out.line("er_upper_max_mixed", fmt_sig12(max_mixed));
    out.line("cone_bound", fmt_sig12(cone));
    out.line("decay_bound", fmt_sig12(decay_bound(n, p, t)));
    if matches!(circuit.topology, Topology::Chain(_)) && p.p() > 0.0 && p.p() < 1.0 && n >= 2 {
        out.line("ent_bound_1d", fmt_sig12(ent_bound_1d(n, p)?));
    }
    out.check("mutual_information_below_distance", info <= max_mixed + TOL);
    out.check("mutual_information_below_twice_cone", info <= 2.0 * cone + TOL);
    out.check("max_mixed_below_decay", max_mixed <= decay_bound(n, p, t) + TOL);

    if n <= SEARCH_MAX_QUBITS {
        let config = SearchConfig { components, restarts, seed, iters };
        let found = er_upper_via_search(&rho, &part, &config)?;
        out.line("er_upper_search", fmt_sig12(found.bound));
        out.line("witness_source", format!("{:?}", found.source));
        out.line("witness_components", found.witness.components().len());
        out.check("search_below_max_mixed", found.bound <= max_mixed + 1e-9);
        if let Ok(e) = entanglement_entropy_pure(&rho, &part) {
            out.line("entanglement_entropy", fmt_sig12(e));
            out.check("search_not_below_pure_entropy", found.bound >= e - 1e-3);
        }
    } else {
        out.line("er_upper_search", format!("skipped (search supports at most {SEARCH_MAX_QUBITS} qubits)"));
    }
    Ok(out)
}

fn describe(out: &mut Output, spec: &DeviceSpec) {
    let est = estimate(spec);
    out.line("device", &spec.label);
    out.line("t1_s", fmt_sig12(spec.t1));
    out.line("tg_s", fmt_sig12(spec.tg));
    out.line("p", format!("{:.3e}", est.p));
    out.line("p_rounded", format!("{:.0e}", est.rounded));
    out.line("note", format!("1 s.f.: {:.0e}", est.rounded));
    out.warnings.extend(est.warnings.iter().map(|w| format!("{}: {w}", spec.label)));
}

pub fn estimate_p(t1: Option<f64>, tg: Option<f64>, label: &str, reference: bool) -> CmdResult {
    let mut out = Output::new();
    if reference {
        for spec in bounds::reference_devices() {
            describe(&mut out, &spec);
        }
        return Ok(out);
    }
    let (Some(t1), Some(tg)) = (t1, tg) else {
        return Err(Failure { code: 2, message: "both --t1 and --tg are required".into() });
    };
    describe(&mut out, &DeviceSpec::new(label, t1, tg)?);
    Ok(out)
}
