//! Closed-form bounds: information decay, entanglement plateaus on chains
//! and lattices, advantage depth thresholds, and noise estimates from device
//! timings.

use std::fmt;
use std::fmt::Write as _;

use serde::Serialize;

use crate::dmsim::NoiseStrength;
use crate::error::{Error, Result};

/// `n(1−p)^t`: information left after `t` noisy layers, in bits.
pub fn decay_bound(n: usize, p: NoiseStrength, t: usize) -> f64 {
    n as f64 * pow_survival(p, t)
}

fn pow_survival(p: NoiseStrength, t: usize) -> f64 {
    let s = p.survival();
    // powi takes i32; depths beyond that underflow to zero anyway
    if t > i32::MAX as usize {
        0.0
    } else {
        s.powi(t as i32)
    }
}

fn open_unit(p: NoiseStrength) -> Result<f64> {
    let p = p.p();
    if p <= 0.0 || p >= 1.0 {
        return Err(Error::Precondition(format!("noise strength must lie in (0, 1), got {p}")));
    }
    Ok(p)
}

/// `−log₂(1−p)`.
fn decay_rate(p: f64) -> f64 {
    -(1.0 - p).log2()
}

/// Greatest `t ≥ 0` with `n(1−p)^t ≥ t`.
pub fn t_star_1d(n: usize, p: NoiseStrength) -> Result<usize> {
    open_unit(p)?;
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let mut t = 0;
    while decay_bound(n, p, t + 1) >= (t + 1) as f64 {
        t += 1;
    }
    Ok(t)
}

/// Entanglement plateau across a contiguous chain cut, in ebits:
/// `log₂ n / (−log₂(1−p))` when `n > 1/(1−p)`, else `1`.
pub fn ent_bound_1d(n: usize, p: NoiseStrength) -> Result<f64> {
    let p = open_unit(p)?;
    if n < 2 {
        return Err(Error::Precondition(format!("n must be at least 2, got {n}")));
    }
    if n as f64 > 1.0 / (1.0 - p) {
        Ok((n as f64).log2() / decay_rate(p))
    } else {
        Ok(1.0)
    }
}

fn perfect_square_root(n: usize) -> Option<usize> {
    let r = (n as f64).sqrt().round() as usize;
    (r * r == n).then_some(r)
}

/// `n` above which the lattice bound is certified: `(3/(1−p))²`.
pub fn lattice_threshold(p: NoiseStrength) -> f64 {
    (3.0 / p.survival()).powi(2)
}

/// `2a√n + a²` with `a = (½ log₂ n − 1)/(−log₂(1−p))`, evaluated for any
/// perfect square `n` whether or not it is certified there.
pub fn lattice_formula(n: usize, p: NoiseStrength) -> Result<f64> {
    let pv = open_unit(p)?;
    let side = perfect_square_root(n).ok_or_else(|| Error::Precondition(format!("n = {n} is not a perfect square")))?;
    let a = (0.5 * (n as f64).log2() - 1.0) / decay_rate(pv);
    Ok(2.0 * a * side as f64 + a * a)
}

/// Entanglement plateau for a corner block of a `√n × √n` lattice. Refuses
/// `n ≤ (3/(1−p))²`, where [`lattice_formula`] is not a proven bound.
pub fn ent_bound_2d(n: usize, p: NoiseStrength) -> Result<f64> {
    let value = lattice_formula(n, p)?;
    let threshold = lattice_threshold(p);
    if n as f64 <= threshold {
        return Err(Error::Precondition(format!("n = {n} must exceed (3/(1−p))² = {threshold}")));
    }
    Ok(value)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveTopology {
    Chain,
    Grid,
}

impl fmt::Display for CurveTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CurveTopology::Chain => "chain",
            CurveTopology::Grid => "grid",
        })
    }
}

/// One point of the entanglement-versus-size curve.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurveRow {
    pub n: usize,
    pub p: f64,
    pub topology: CurveTopology,
    /// The closed-form plateau; `None` where the lattice bound is not certified.
    pub bound: Option<f64>,
    /// `min(n/2, bound)`, or `n/2` alone when there is no bound.
    pub curve_value: f64,
}

/// Curve rows for every `n` in `ns`. Grid rows exist only for perfect squares.
pub fn plateau_curve(ns: &[usize], p: NoiseStrength, topology: CurveTopology) -> Result<Vec<CurveRow>> {
    open_unit(p)?;
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let half = n as f64 / 2.0;
        let bound = match topology {
            CurveTopology::Chain => Some(ent_bound_1d(n, p)?),
            CurveTopology::Grid => {
                if perfect_square_root(n).is_none() {
                    continue;
                }
                ent_bound_2d(n, p).ok()
            }
        };
        let curve_value = bound.map_or(half, |b| half.min(b));
        rows.push(CurveRow { n, p: p.p(), topology, bound, curve_value });
    }
    Ok(rows)
}

pub const CSV_HEADER: &str = "n,p,topology,bound,curve_value";

/// Decimal rendering with 12 significant digits and no trailing zeros.
pub fn fmt_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = mantissa.strip_prefix('-').map_or(("", mantissa), |m| ("-", m));
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let point = exp + 1;
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits)
    } else if point as usize >= digits.len() {
        format!("{}{}", digits, "0".repeat(point as usize - digits.len()))
    } else {
        format!("{}.{}", &digits[..point as usize], &digits[point as usize..])
    };
    let body = if body.contains('.') { body.trim_end_matches('0').trim_end_matches('.').to_string() } else { body };
    format!("{sign}{body}")
}

/// CSV with [`CSV_HEADER`], one line per row, `\n` line endings.
pub fn curve_csv(rows: &[CurveRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let bound = r.bound.map(fmt_sig12).unwrap_or_default();
        let _ = writeln!(out, "{},{},{},{},{}", r.n, fmt_sig12(r.p), r.topology, bound, fmt_sig12(r.curve_value));
    }
    out
}

/// Two concrete constants for the depth beyond which coin replacement
/// succeeds: `(log₂ T + 5)/|log₂(1−p)|` and half of it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ThresholdVariant {
    Full,
    #[default]
    Half,
}

impl fmt::Display for ThresholdVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThresholdVariant::Full => "full",
            ThresholdVariant::Half => "half",
        })
    }
}

/// Depth threshold for `T` total measured qubits.
pub fn advantage_depth_threshold(total_bits: usize, p: NoiseStrength, variant: ThresholdVariant) -> Result<f64> {
    let p = open_unit(p)?;
    if total_bits == 0 {
        return Err(Error::Precondition("T must be at least 1".into()));
    }
    let full = ((total_bits as f64).log2() + 5.0) / decay_rate(p);
    Ok(match variant {
        ThresholdVariant::Full => full,
        ThresholdVariant::Half => full / 2.0,
    })
}

/// Coherence and gate timings of a device, in seconds.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeviceSpec {
    pub label: String,
    pub t1: f64,
    pub tg: f64,
}

impl DeviceSpec {
    pub fn new(label: impl Into<String>, t1: f64, tg: f64) -> Result<Self> {
        if !(t1 > 0.0 && t1.is_finite()) || !(tg > 0.0 && tg.is_finite()) {
            return Err(Error::Precondition(format!("timings must be positive and finite, got t1 = {t1}, tg = {tg}")));
        }
        Ok(DeviceSpec { label: label.into(), t1, tg })
    }
}

/// Published timings of two superconducting processors (`t1` in μs, `tg`
/// in ns).
pub fn reference_devices() -> Vec<DeviceSpec> {
    vec![
        DeviceSpec { label: "Sycamore".into(), t1: 15e-6, tg: 25e-9 },
        DeviceSpec { label: "Zuchongzhi".into(), t1: 30.5e-6, tg: 32e-9 },
    ]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NoiseEstimate {
    /// `tg/t1` clamped to `[0, 1]`.
    pub p: f64,
    /// `p` rounded to one significant figure.
    pub rounded: f64,
    pub warnings: Vec<String>,
}

/// Rounds to one significant figure.
pub fn round_1sf(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let scale = 10f64.powf(x.abs().log10().floor());
    let r = (x / scale).round() * scale;
    // reparse to drop float noise such as 0.0020000000000000005
    format!("{r:.1e}").parse().unwrap_or(r)
}

/// `p ≈ tg/t1`.
pub fn estimate_p(spec: &DeviceSpec) -> NoiseEstimate {
    let raw = spec.tg / spec.t1;
    let mut warnings = Vec::new();
    if raw > 1.0 {
        warnings.push(format!("tg/t1 = {raw:.4} exceeds 1; check that both timings use the same unit"));
    }
    let milli = spec.tg * 1e3 / spec.t1;
    if milli > 1.0 {
        warnings.push(format!(
            "reading the gate time in μs instead of ns would give p = {milli:.4} > 1; gate times are taken as ns"
        ));
    }
    let p = raw.clamp(0.0, 1.0);
    NoiseEstimate { p, rounded: round_1sf(p), warnings }
}
