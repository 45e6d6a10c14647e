//! Schedules β(T), 𝓛(T), W(x), the dyadic aggregate M(x), the shifted-F
//! statistic max_v |F(xv, T) − F(x, T)|, and empirical reports for the
//! conditional error-term bounds. Nothing here asserts a conjecture; the
//! reports record observed normalized values.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::NeumaierSum;
use crate::pair_correlation::{f_direct, f_direct_batch};
use crate::primes::{psi, LambdaTable};
use crate::report::{Cell, ScanReport};
use crate::zeros::ZeroSet;

/// Largest log x used in scans; beyond it the pair phases (γ−γ')·log x lose
/// too many digits in f64.
pub const PHASE_SAFE_LOG_X: f64 = 25.0;

/// First dyadic index in M(x): 2^k ≥ 3 is where the schedules are defined.
pub const M_FIRST_K: u32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BetaKind {
    Constant,
    Cor1Power,
    Cor3Gm,
}

/// β(T): a constant, (log T)^{3−2a}, or log³T / (A⁴ (log log 2T)²).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaSchedule {
    pub kind: BetaKind,
    pub a: f64,
    #[serde(rename = "A")]
    pub big_a: f64,
    pub c: f64,
}

impl BetaSchedule {
    pub fn constant(c: f64) -> Result<Self> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::domain(format!("constant beta must be positive, got {c}")));
        }
        Ok(Self {
            kind: BetaKind::Constant,
            a: f64::NAN,
            big_a: f64::NAN,
            c,
        })
    }

    pub fn cor1_power(a: f64) -> Result<Self> {
        if !(a > 0.0 && a <= 1.5) {
            return Err(Error::domain(format!("cor1 exponent a must lie in (0, 3/2], got {a}")));
        }
        Ok(Self {
            kind: BetaKind::Cor1Power,
            a,
            big_a: f64::NAN,
            c: f64::NAN,
        })
    }

    pub fn cor3_gm(big_a: f64) -> Result<Self> {
        if !(big_a > 1.0) || !big_a.is_finite() {
            return Err(Error::domain(format!("cor3 constant A must exceed 1, got {big_a}")));
        }
        Ok(Self {
            kind: BetaKind::Cor3Gm,
            a: f64::NAN,
            big_a,
            c: f64::NAN,
        })
    }

    /// log³T / (A⁴ (log log 2T)²) without the floor at 1.
    pub fn cor3_raw(big_a: f64, t: f64) -> f64 {
        let l = t.ln();
        let ll = (2.0 * t).ln().ln();
        l * l * l / (big_a.powi(4) * ll * ll)
    }

    /// β(T) for T ≥ 3. The cor3 curve is floored at 1, since the raw formula
    /// dips below 1 at small T while the conjectures need β ≥ 1.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(t >= 3.0) {
            return Err(Error::ScheduleDomain(format!("beta(T) needs T >= 3, got {t}")));
        }
        Ok(match self.kind {
            BetaKind::Constant => self.c,
            BetaKind::Cor1Power => t.ln().powf(3.0 - 2.0 * self.a),
            BetaKind::Cor3Gm => Self::cor3_raw(self.big_a, t).max(1.0),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EllKind {
    LogT,
    /// 2 log T, standing in for log x on the diagonal T ≍ x^{1/2}.
    LogxProxy,
    CustomPower,
}

/// 𝓛(T).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllSchedule {
    pub kind: EllKind,
    pub exponent: f64,
}

impl EllSchedule {
    pub fn log_t() -> Self {
        Self {
            kind: EllKind::LogT,
            exponent: 1.0,
        }
    }

    pub fn logx_proxy() -> Self {
        Self {
            kind: EllKind::LogxProxy,
            exponent: 1.0,
        }
    }

    pub fn custom_power(exponent: f64) -> Result<Self> {
        if !exponent.is_finite() {
            return Err(Error::domain("ell exponent must be finite"));
        }
        Ok(Self {
            kind: EllKind::CustomPower,
            exponent,
        })
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(t >= 3.0) {
            return Err(Error::ScheduleDomain(format!("L(T) needs T >= 3, got {t}")));
        }
        Ok(match self.kind {
            EllKind::LogT => t.ln(),
            EllKind::LogxProxy => 2.0 * t.ln(),
            EllKind::CustomPower => t.ln().powf(self.exponent),
        })
    }
}

/// W(x): (log x)^A, or exp((log x)^e) as in the corollary proofs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WSchedule {
    PowerLog { a: f64 },
    ExpPowerLog { exponent: f64 },
}

impl Default for WSchedule {
    fn default() -> Self {
        WSchedule::PowerLog { a: 4.0 }
    }
}

impl WSchedule {
    pub fn eval(&self, x: f64) -> f64 {
        let l = x.ln();
        match *self {
            WSchedule::PowerLog { a } => l.powf(a),
            WSchedule::ExpPowerLog { exponent } => l.powf(exponent).exp(),
        }
    }
}

/// Ratios describing how 𝓛 sits between log T and β(T)·log²T.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SandwichCheck {
    pub min_beta: f64,
    pub beta_monotone: bool,
    /// min and max of 𝓛(T)/log T
    pub lower: (f64, f64),
    /// min and max of 𝓛(T)/(β(T) log²T)
    pub upper: (f64, f64),
    /// max of β(T)/log³T
    pub beta_over_log_cubed: f64,
}

pub fn sandwich_check(ell: &EllSchedule, beta: &BetaSchedule, ts: &[f64]) -> Result<SandwichCheck> {
    if ts.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let mut out = SandwichCheck {
        min_beta: f64::INFINITY,
        beta_monotone: true,
        lower: (f64::INFINITY, 0.0),
        upper: (f64::INFINITY, 0.0),
        beta_over_log_cubed: 0.0,
    };
    let mut prev: Option<(f64, f64)> = None;
    for &t in ts {
        let b = beta.eval(t)?;
        let l = ell.eval(t)?;
        let lt = t.ln();
        out.min_beta = out.min_beta.min(b);
        if let Some((pt, pb)) = prev {
            if t > pt && b < pb * (1.0 - 1e-12) {
                out.beta_monotone = false;
            }
        }
        prev = Some((t, b));
        let lo = l / lt;
        let hi = l / (b * lt * lt);
        out.lower = (out.lower.0.min(lo), out.lower.1.max(lo));
        out.upper = (out.upper.0.min(hi), out.upper.1.max(hi));
        out.beta_over_log_cubed = out.beta_over_log_cubed.max(b / (lt * lt * lt));
    }
    Ok(out)
}

/// Y(x) = 3 x^{1/2} log²(2x).
pub fn y_of_x(x: f64) -> f64 {
    let l = (2.0 * x).ln();
    3.0 * x.sqrt() * l * l
}

/// k₂ with 2^{k₂−1} < Y(x) ≤ 2^{k₂}.
pub fn m_last_k(x: f64) -> u32 {
    let y = y_of_x(x);
    let mut k = 0u32;
    while 2f64.powi(k as i32) < y {
        k += 1;
    }
    k
}

/// M(x) = Σ_k √(𝓛(2^k)/β(2^k)) over 2 ≤ k ≤ k₂.
pub fn m_of_x(x: f64, ell: &EllSchedule, beta: &BetaSchedule) -> Result<f64> {
    if !(x >= 16.0) || !x.is_finite() {
        return Err(Error::domain(format!("M(x) needs x >= 16, got {x}")));
    }
    let mut acc = NeumaierSum::new();
    for k in M_FIRST_K..=m_last_k(x) {
        let t = 2f64.powi(k as i32);
        let b = beta.eval(t)?;
        if b < 1.0 {
            return Err(Error::ScheduleDomain(format!("beta(2^{k}) = {b} < 1")));
        }
        acc.add((ell.eval(t)? / b).sqrt());
    }
    Ok(acc.value())
}

fn check_scan_point(zs: &ZeroSet, x: f64, t: f64) -> Result<()> {
    if !(t >= 3.0) {
        return Err(Error::range(format!("T must be at least 3, got {t}")));
    }
    zs.check_height(t)?;
    if !(x >= 1.0) || x.ln() > PHASE_SAFE_LOG_X {
        return Err(Error::range(format!("x = {x} outside [1, e^{PHASE_SAFE_LOG_X}]")));
    }
    Ok(())
}

/// Outcome of [`conjecture2_stat`].
#[derive(Debug, Clone, PartialEq)]
pub struct Conj2Stat {
    pub value: f64,
    pub argmax_v: f64,
    pub grid: Vec<f64>,
}

/// Geometric grid on [1/(2 log T), 2 log T] with `samples` points, the
/// endpoints, and v = 1.
pub fn conjecture2_grid(t: f64, samples: usize) -> Vec<f64> {
    let lt = t.ln();
    let lo = 1.0 / (2.0 * lt);
    let hi = 2.0 * lt;
    let ratio = (hi / lo).ln();
    let mut grid: Vec<f64> = (0..samples)
        .map(|i| {
            if i == 0 {
                lo
            } else if i == samples - 1 {
                hi
            } else {
                lo * (ratio * i as f64 / (samples - 1) as f64).exp()
            }
        })
        .collect();
    grid.push(1.0);
    grid.sort_by(|a, b| a.partial_cmp(b).expect("finite grid"));
    grid.dedup();
    grid
}

/// max over the v grid of |F(xv, T) − F(x, T)|.
pub fn conjecture2_stat(zs: &ZeroSet, x: f64, t: f64, v_samples: usize) -> Result<Conj2Stat> {
    if v_samples < 16 {
        return Err(Error::domain(format!("v_samples must be at least 16, got {v_samples}")));
    }
    check_scan_point(zs, x, t)?;
    let grid = conjecture2_grid(t, v_samples);
    if (x * grid[grid.len() - 1]).ln() > PHASE_SAFE_LOG_X {
        return Err(Error::range(format!("x·2log T exceeds e^{PHASE_SAFE_LOG_X}")));
    }
    conjecture2_stat_on_grid(zs, x, t, &grid)
}

/// Same statistic on a caller-supplied grid; `1.0` is added if missing.
pub fn conjecture2_stat_on_grid(zs: &ZeroSet, x: f64, t: f64, grid: &[f64]) -> Result<Conj2Stat> {
    check_scan_point(zs, x, t)?;
    if grid.is_empty() || grid.iter().any(|&v| !(v > 0.0)) {
        return Err(Error::domain("v grid must be nonempty and positive"));
    }
    let mut grid = grid.to_vec();
    if !grid.contains(&1.0) {
        grid.push(1.0);
    }
    let lx = x.ln();
    let logs: Vec<f64> = grid.iter().map(|v| lx + v.ln()).collect();
    let values = f_direct_batch(zs, &logs, t, 1.0)?;
    let base = values[grid.iter().position(|&v| v == 1.0).expect("1 is in the grid")];
    let mut best = (0.0, 1.0);
    for (&v, &f) in grid.iter().zip(&values) {
        let d = (f - base).abs();
        if d > best.0 || (d == best.0 && v < best.1 && d > 0.0) {
            best = (d, v);
        }
    }
    Ok(Conj2Stat {
        value: best.0,
        argmax_v: best.1,
        grid,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Corollary {
    Cor1,
    Cor2,
    Cor3,
    Cor4,
}

impl Corollary {
    pub fn as_str(&self) -> &'static str {
        match self {
            Corollary::Cor1 => "cor1",
            Corollary::Cor2 => "cor2",
            Corollary::Cor3 => "cor3",
            Corollary::Cor4 => "cor4",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorollaryParams {
    pub xs: Vec<f64>,
    pub ts: Vec<f64>,
    /// Exponent a of the cor1 schedule.
    pub a: f64,
    /// Constant A of the cor3 schedule and the (log log x)² target.
    #[serde(rename = "A")]
    pub big_a: f64,
}

impl Default for CorollaryParams {
    fn default() -> Self {
        Self {
            xs: Vec::new(),
            ts: Vec::new(),
            a: 1.5,
            big_a: 2.0,
        }
    }
}

/// Per grid point: the ratio of F (or F_β) to the bound each corollary
/// assumes, and R(x)/(x^{1/2}·target(x)) from the sieve where available.
pub fn corollary_schedule_report(
    zs: &ZeroSet,
    corollary: Corollary,
    params: &CorollaryParams,
    table: Option<&LambdaTable>,
) -> Result<ScanReport> {
    if params.xs.is_empty() || params.ts.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let beta = match corollary {
        Corollary::Cor1 => BetaSchedule::cor1_power(params.a)?,
        Corollary::Cor3 => BetaSchedule::cor3_gm(params.big_a)?,
        Corollary::Cor2 | Corollary::Cor4 => BetaSchedule::constant(1.0)?,
    };
    let mut report = ScanReport::new([
        "corollary",
        "x",
        "T",
        "beta",
        "F",
        "bound_ratio",
        "target",
        "r_normalized",
        "status",
        "t_max",
    ]);
    let mut max_ratio = f64::NEG_INFINITY;
    for &x in &params.xs {
        for &t in &params.ts {
            let in_range = t >= 3.0 && t <= zs.t_max() && x >= 1.0 && x.ln() <= PHASE_SAFE_LOG_X;
            let lx = x.ln();
            let target = match corollary {
                Corollary::Cor1 => lx.powf(params.a),
                Corollary::Cor2 => lx.powf(1.5),
                Corollary::Cor3 | Corollary::Cor4 => {
                    let ll = lx.ln();
                    params.big_a * params.big_a * ll * ll
                }
            };
            let r_norm = match table {
                Some(tab) if x >= 2.0 && x <= tab.n_max() as f64 && target > 0.0 => {
                    Cell::Float((psi(x, tab)? - x) / (x.sqrt() * target))
                }
                _ => Cell::Text(String::new()),
            };
            if !in_range {
                report.push(vec![
                    corollary.as_str().into(),
                    x.into(),
                    t.into(),
                    Cell::Text(String::new()),
                    Cell::Text(String::new()),
                    Cell::Text(String::new()),
                    target.into(),
                    r_norm,
                    "out_of_range".into(),
                    zs.t_max().into(),
                ]);
                continue;
            }
            let b = beta.eval(t)?;
            let f = f_direct(zs, x, t, b)?.value;
            let ratio = match corollary {
                Corollary::Cor1 | Corollary::Cor3 => f / (t * t.ln()),
                Corollary::Cor2 => {
                    if lx <= 0.0 {
                        return Err(Error::domain("cor2 normalizes by log x; x must exceed 1"));
                    }
                    f / (t * lx)
                }
                Corollary::Cor4 => f / zs.count_le(t) as f64 - 1.0,
            };
            max_ratio = max_ratio.max(ratio);
            report.push(vec![
                corollary.as_str().into(),
                x.into(),
                t.into(),
                b.into(),
                f.into(),
                ratio.into(),
                target.into(),
                r_norm,
                "ok".into(),
                zs.t_max().into(),
            ]);
        }
    }
    report.set_meta("corollary", corollary.as_str());
    report.set_meta(
        "beta_schedule",
        serde_json::to_value(beta).expect("schedule serializes"),
    );
    report.set_meta("params", serde_json::to_value(params).expect("params serialize"));
    report.set_meta("exploratory", corollary == Corollary::Cor3);
    if max_ratio.is_finite() {
        report.set_meta("max_bound_ratio", max_ratio);
    }
    report.set_meta("zeros", zs.provenance());
    Ok(report)
}

/// Rows (x, T, beta, F_beta, T·L(T), ratio) for the F_β ≪ T·𝓛(T) bound.
pub fn conjecture1_scan(
    zs: &ZeroSet,
    xs: &[f64],
    ts: &[f64],
    ell: &EllSchedule,
    beta: &BetaSchedule,
) -> Result<ScanReport> {
    if xs.is_empty() || ts.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let mut report = ScanReport::new(["x", "T", "beta", "F_beta", "T_L", "ratio", "t_max"]);
    let mut max_ratio = 0.0f64;
    for &x in xs {
        for &t in ts {
            check_scan_point(zs, x, t)?;
            let b = beta.eval(t)?;
            let f = f_direct(zs, x, t, b)?.value;
            let tl = t * ell.eval(t)?;
            max_ratio = max_ratio.max(f / tl);
            report.push(vec![
                x.into(),
                t.into(),
                b.into(),
                f.into(),
                tl.into(),
                (f / tl).into(),
                zs.t_max().into(),
            ]);
        }
    }
    report.set_meta("max_ratio", max_ratio);
    report.set_meta("ell_schedule", serde_json::to_value(ell).expect("schedule serializes"));
    report.set_meta(
        "beta_schedule",
        serde_json::to_value(beta).expect("schedule serializes"),
    );
    report.set_meta("zeros", zs.provenance());
    Ok(report)
}

/// Rows (x, T, v_samples, stat, normalized, argmax_v) with the statistic
/// normalized by T·𝓛(T)/β(T)².
pub fn conjecture2_scan(
    zs: &ZeroSet,
    xs: &[f64],
    ts: &[f64],
    v_samples: usize,
    ell: &EllSchedule,
    beta: &BetaSchedule,
) -> Result<ScanReport> {
    if xs.is_empty() || ts.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let mut report = ScanReport::new(["x", "T", "v_samples", "stat", "normalized", "argmax_v", "t_max"]);
    for &x in xs {
        for &t in ts {
            let s = conjecture2_stat(zs, x, t, v_samples)?;
            let b = beta.eval(t)?;
            let norm = t * ell.eval(t)? / (b * b);
            report.push(vec![
                x.into(),
                t.into(),
                v_samples.into(),
                s.value.into(),
                (s.value / norm).into(),
                s.argmax_v.into(),
                zs.t_max().into(),
            ]);
        }
    }
    report.set_meta("ell_schedule", serde_json::to_value(ell).expect("schedule serializes"));
    report.set_meta(
        "beta_schedule",
        serde_json::to_value(beta).expect("schedule serializes"),
    );
    report.set_meta("zeros", zs.provenance());
    Ok(report)
}

/// Rows (x, R(x), R(x)/(x^{1/2}(log log log x)²)).
pub fn guess_normalization(xs: &[f64], table: &LambdaTable) -> Result<ScanReport> {
    if xs.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let mut report = ScanReport::new(["x", "r", "normalized"]);
    let mut max_norm = f64::NEG_INFINITY;
    let mut sign_changes = 0u64;
    let mut prev_sign = 0.0;
    for &x in xs {
        if !(x >= 100.0) {
            return Err(Error::range(format!("normalization scan needs x >= 100, got {x}")));
        }
        let r = psi(x, table)? - x;
        let lll = x.ln().ln().ln();
        let norm = r / (x.sqrt() * lll * lll);
        max_norm = max_norm.max(norm);
        let sign = r.signum();
        if r != 0.0 {
            if prev_sign != 0.0 && sign != prev_sign {
                sign_changes += 1;
            }
            prev_sign = sign;
        }
        report.push(vec![x.into(), r.into(), norm.into()]);
    }
    report.set_meta("max_normalized", max_norm);
    report.set_meta("sign_changes", sign_changes);
    report.set_meta("reference_limsup", 1.0 / (2.0 * std::f64::consts::PI));
    Ok(report)
}
