//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
//!
//! Run with `cargo test -p nisqlim-cli --test acceptance`.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::Rng;

use nisqlim::bounds::{
    advantage_depth_threshold, decay_bound, ent_bound_1d, ent_bound_2d, fmt_sig12, round_1sf, ThresholdVariant,
};
use nisqlim::dmsim::{apply_depolarizing_all, evolve, DensityMatrix, EvolveOptions, NoiseStrength};
use nisqlim::entanglement::{entanglement_entropy_pure, er_upper_via_max_mixed, er_upper_via_search, SearchConfig};
use nisqlim::hybrid::{adaptive_battery, joint_entropy_check, replacement_depth, replacement_gap, Builtin};
use nisqlim::infotheory::{distance_to_max_mixed, mutual_information, von_neumann_entropy, Bipartition};
use nisqlim::lightcone::depth_entanglement_bound;
use nisqlim::random::{low_rank_state, random_chain_circuit, random_pure, rng, split_seed, wishart_state};
use nisqlim::shearer::randomized_shearer_audit;

const SEED: u64 = 0x5EED_2024;

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict { ok, detail: detail.into() }
}

fn noise(p: f64) -> NoiseStrength {
    NoiseStrength::new(p).expect("p in range")
}

fn criterion_1() -> Verdict {
    let ps = [0.05, 0.1, 0.2, 0.5];
    let mut worst = f64::NEG_INFINITY;
    let mut layers = 0;
    for i in 0..200u64 {
        let mut r = rng(split_seed(SEED ^ 1, i));
        let n = r.random_range(2..=8);
        let depth = r.random_range(1..=20);
        let p = noise(ps[r.random_range(0..ps.len())]);
        let circuit = random_chain_circuit(n, depth, 0.8, &mut r);
        let run = evolve(&circuit, p, EvolveOptions::recording()).expect("valid circuit");
        for (t, rho) in run.trajectory.iter().enumerate() {
            worst = worst.max(distance_to_max_mixed(rho) - decay_bound(n, p, t + 1));
            layers += 1;
        }
    }
    verdict(worst <= 1e-7, format!("200 circuits, {layers} layers, max D − n(1−p)^t = {worst:.3e}"))
}

fn criterion_2() -> Verdict {
    let mut worst = f64::INFINITY;
    for i in 0..1000u64 {
        let mut r = rng(split_seed(SEED ^ 2, i));
        let n = r.random_range(1..=4);
        let rho = match i % 3 {
            0 => wishart_state(n, &mut r),
            1 => random_pure(n, &mut r),
            _ => low_rank_state(n, r.random_range(1..=2), &mut r),
        };
        let p = noise(r.random::<f64>());
        let lhs = von_neumann_entropy(&apply_depolarizing_all(&rho, p));
        let rhs = p.survival() * von_neumann_entropy(&rho) + p.p() * n as f64;
        worst = worst.min(lhs - rhs);
    }
    verdict(worst >= -1e-7, format!("1000 states, min S(Λρ) − ((1−p)S(ρ) + pn) = {worst:.3e}"))
}

fn criterion_3() -> Verdict {
    let mut worst = f64::INFINITY;
    let mut all_k = 0;
    for (n, trials) in [(2, 100), (3, 200), (4, 200)] {
        let report = randomized_shearer_audit(n, trials, split_seed(SEED ^ 3, n as u64)).expect("n ≤ 4");
        worst = worst.min(report.min_slack);
        all_k += report.all_k_trials;
    }
    verdict(worst >= -1e-7, format!("500 instances ({all_k} all-k families), min slack = {worst:.3e}"))
}

fn criterion_4() -> Verdict {
    let battery = adaptive_battery(50, SEED ^ 4);
    let mut failures = 0;
    let mut min_slack = f64::INFINITY;
    for (scenario, p) in &battery {
        let check = joint_entropy_check(scenario, *p, scenario.depth).expect("battery fits the enumeration cap");
        min_slack = min_slack.min(check.slack);
        failures += usize::from(!check.pass);
    }
    verdict(failures == 0, format!("50 scenarios, {failures} failed, min slack = {min_slack:.3e}"))
}

fn criterion_5() -> Verdict {
    let shapes = [(1, 2), (2, 2), (3, 2), (2, 3), (3, 3), (4, 3), (3, 4), (2, 6), (6, 2)];
    let ps = [0.1, 0.25, 0.5];
    let mut kl_ok = true;
    let mut pinsker_ok = true;
    let mut norm_ok = true;
    let mut worst_residual = 0.0f64;
    let mut worst_norm = 0.0f64;
    let mut worst_kl_excess = f64::NEG_INFINITY;
    for &(q, n) in &shapes {
        for &p in &ps {
            let p = noise(p);
            let total = q * n;
            let t = replacement_depth(total, p, ThresholdVariant::Half).expect("0 < p < 1");
            let gap = replacement_gap(&Builtin::Parity { q, n, t }, p).expect("parity fits the caps");
            let residual = total as f64 * p.survival().powi(t as i32);
            worst_residual = worst_residual.max(residual);
            worst_norm = worst_norm.max(gap.one_norm);
            worst_kl_excess = worst_kl_excess.max(gap.kl_bits - residual);
            kl_ok &= gap.kl_bits <= residual + 1e-9;
            norm_ok &= gap.one_norm <= 0.25;
            pinsker_ok &= gap.one_norm <= gap.pinsker_rhs + 1e-9;
        }
    }
    let residual_ok = worst_residual <= 1.0 / 32.0 + 1e-12;
    verdict(
        kl_ok && residual_ok && norm_ok && pinsker_ok,
        format!(
            "{} runs: kl ≤ T(1−p)^t {} (max excess {worst_kl_excess:.3e}); T(1−p)^t ≤ 1/32 {} (max {worst_residual:.4}); \
             one-norm ≤ 1/4 {} (max {worst_norm:.3e}); Pinsker {}",
            shapes.len() * ps.len(),
            word(kl_ok),
            word(residual_ok),
            word(norm_ok),
            word(pinsker_ok),
        ),
    )
}

/// The same residual under the larger threshold constant, for comparison.
fn full_threshold_note() -> String {
    let mut worst = 0.0f64;
    for total in 1..=12 {
        for p in [0.1, 0.25, 0.5] {
            let p = noise(p);
            let t = advantage_depth_threshold(total, p, ThresholdVariant::Full).expect("0 < p < 1").ceil();
            worst = worst.max(total as f64 * p.survival().powf(t));
        }
    }
    format!("full-constant threshold: max T(1−p)^t = {worst:.4} (1/32 = 0.03125)")
}

fn word(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "violated"
    }
}

fn criterion_6() -> Verdict {
    let mut worst = f64::NEG_INFINITY;
    let mut cap_ok = true;
    let mut cuts = 0;
    for i in 0..100u64 {
        let mut r = rng(split_seed(SEED ^ 6, i));
        let n = r.random_range(2..=10);
        let depth = r.random_range(1..=8);
        let circuit = random_chain_circuit(n, depth, 0.9, &mut r);
        let rho = evolve(&circuit, NoiseStrength::NOISELESS, EvolveOptions::default()).expect("valid").state;
        for k in 1..n {
            let part = Bipartition::chain(n, k).expect("valid cut");
            let bound = depth_entanglement_bound(&circuit, &part).expect("matching sizes");
            let e = entanglement_entropy_pure(&rho, &part).expect("noiseless output is pure");
            worst = worst.max(e - bound);
            cap_ok &= bound <= depth as f64;
            cuts += 1;
        }
    }
    verdict(worst <= 1e-7 && cap_ok, format!("{cuts} cuts, max S_A − bound = {worst:.3e}, bound ≤ t {}", word(cap_ok)))
}

fn criterion_7() -> Verdict {
    let mut worst = f64::NEG_INFINITY;
    let mut checked = 0;
    for (j, &n) in [4usize, 6, 8].iter().enumerate() {
        for &p in &[0.2, 0.5] {
            let p = noise(p);
            let cap = if n as f64 > 1.0 / p.survival() { ent_bound_1d(n, p).expect("n ≥ 2") } else { 1.0 };
            for i in 0..4u64 {
                let mut r = rng(split_seed(SEED ^ 7, (j as u64) << 16 | (p.p() * 10.0) as u64 * 16 + i));
                let circuit = random_chain_circuit(n, 20, 1.0, &mut r);
                let run = evolve(&circuit, p, EvolveOptions::recording()).expect("valid");
                for rho in &run.trajectory {
                    for k in 1..n {
                        let part = Bipartition::chain(n, k).expect("valid cut");
                        worst = worst.max(mutual_information(rho, &part).expect("sizes match") - cap);
                        checked += 1;
                    }
                }
            }
        }
    }
    verdict(worst <= 1e-6, format!("{checked} (state, cut) pairs, max I − bound = {worst:.3e}"))
}

fn run_cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_nisqlim")).args(args).output().expect("binary runs")
}

fn criterion_8() -> Verdict {
    let out = run_cli(&["estimate-p", "--reference"]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    let stderr = String::from_utf8_lossy(&out.stderr);
    let rounded: Vec<&str> = stdout.lines().filter_map(|l| l.strip_prefix("p_rounded: ")).collect();
    let warnings = stderr.lines().filter(|l| l.starts_with("warning:") && l.contains("μs")).count();
    let lib_ok = (round_1sf(25e-9 / 15e-6) - 2e-3).abs() < 1e-15 && (round_1sf(32e-9 / 30.5e-6) - 1e-3).abs() < 1e-15;
    let ok = out.status.success() && rounded == ["2e-3", "1e-3"] && warnings == 2 && lib_ok;
    verdict(ok, format!("rounded {rounded:?}, {warnings} unit warnings"))
}

fn criterion_9() -> Verdict {
    let args = ["curve", "--n-min", "2", "--n-max", "100", "--p", "0.5", "--topology", "grid"];
    let a = run_cli(&args);
    let b = run_cli(&args);
    let stable = a.status.success() && a.stdout == b.stdout;
    let text = String::from_utf8_lossy(&a.stdout);
    let p = noise(0.5);
    let mut chain_ok = true;
    let mut grid_ok = true;
    let mut certified = 0;
    for line in text.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        let n: usize = cols[0].parse().expect("n column");
        let half = n as f64 / 2.0;
        match cols[2] {
            "chain" => chain_ok &= cols[4] == fmt_sig12(half.min((n as f64).log2())),
            "grid" if !cols[3].is_empty() => {
                let bound = ent_bound_2d(n, p).expect("certified row");
                grid_ok &= cols[3] == fmt_sig12(bound) && cols[4] == fmt_sig12(half.min(bound));
                certified += 1;
            }
            _ => {}
        }
    }
    verdict(
        stable && chain_ok && grid_ok && certified > 0,
        format!("byte-stable {}, 1D {}, 2D {} ({certified} certified rows)", word(stable), word(chain_ok), word(grid_ok)),
    )
}

fn criterion_10() -> Verdict {
    let config = SearchConfig::new(SEED);
    let halves = Bipartition::halves(2).expect("two qubits");
    let bell = er_upper_via_search(&DensityMatrix::bell(), &halves, &config).expect("search runs").bound;
    let bell_ok = (0.999..=1.05).contains(&bell);

    let mut r = rng(SEED ^ 10);
    let separable = [
        DensityMatrix::zero_state(2),
        DensityMatrix::maximally_mixed(2),
        wishart_state(1, &mut r).tensor(&wishart_state(1, &mut r)),
        DensityMatrix::diagonal(&[0.5, 0.0, 0.0, 0.5]).expect("valid"),
    ];
    let sep_worst = separable
        .iter()
        .map(|rho| er_upper_via_search(rho, &halves, &config).expect("search runs").bound)
        .fold(0.0f64, f64::max);

    let mut excess = f64::NEG_INFINITY;
    for i in 0..6u64 {
        let mut r = rng(split_seed(SEED ^ 10, i));
        let n = 2 + (i as usize % 2);
        let rho = if i % 2 == 0 { wishart_state(n, &mut r) } else { random_pure(n, &mut r) };
        let part = Bipartition::chain(n, 1).expect("valid cut");
        let found = er_upper_via_search(&rho, &part, &config).expect("search runs").bound;
        excess = excess.max(found - er_upper_via_max_mixed(&rho));
    }
    verdict(
        bell_ok && sep_worst <= 1e-4 && excess <= 1e-9,
        format!("Bell {bell:.6}, separable max {sep_worst:.3e}, max excess over D(ρ‖σ₀) {excess:.3e}"),
    )
}

fn main() -> ExitCode {
    let criteria: [(u8, &str, fn() -> Verdict, Option<u64>); 10] = [
        (1, "decay bound on random chain circuits", criterion_1, Some(120)),
        (2, "entropy gain under depolarizing noise", criterion_2, Some(60)),
        (3, "subset-entropy inequality audit", criterion_3, Some(120)),
        (4, "joint entropy on the adaptive battery", criterion_4, Some(180)),
        (5, "coin replacement for parity at threshold depth", criterion_5, None),
        (6, "light-cone entanglement cap", criterion_6, None),
        (7, "end-to-end 1D entanglement bound", criterion_7, None),
        (8, "reference device noise estimates", criterion_8, None),
        (9, "entanglement curve output", criterion_9, None),
        (10, "relative-entropy-of-entanglement search", criterion_10, Some(120)),
    ];
    let mut failed = 0;
    for (id, name, run, limit) in criteria {
        let start = Instant::now();
        let v = run();
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|s| elapsed <= Duration::from_secs(s));
        let ok = v.ok && in_time;
        failed += usize::from(!ok);
        let budget = limit.map_or(String::new(), |s| format!(" / {s}s"));
        println!(
            "{} criterion {id:>2}: {name} [{:.1}s{budget}] {}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            v.detail
        );
        if id == 5 {
            println!("     note: {}", full_threshold_note());
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
