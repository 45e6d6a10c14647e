//! Sieved von Mangoldt values, the Chebyshev function ψ, π(x), li(x), the
//! prime number theorem error terms R(x) = ψ(x) − x and P(x) = π(x) − li(x),
//! and the second moment J(x, h) of primes in short intervals.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::{adaptive_gk15, NeumaierSum};
use crate::report::{Cell, ScanReport};

/// Largest sieve limit accepted by [`sieve_lambda`].
pub const SIEVE_CAPACITY: u64 = 100_000_000;

const SEGMENT_LEN: u64 = 1 << 20;

/// Λ(n) and ψ(n) for 1 ≤ n ≤ n_max.
///
/// Only the prime powers are stored: Λ vanishes elsewhere and ψ is constant
/// between consecutive prime powers, so `lambda(n)` and `psi_prefix(n)` are
/// answered by binary search.
#[derive(Debug, Clone)]
pub struct LambdaTable {
    n_max: u64,
    powers: Vec<u32>,
    bases: Vec<u32>,
    psi_at: Vec<f64>,
    primes: Vec<u32>,
}

impl LambdaTable {
    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    /// Λ(n); zero unless n is a prime power.
    pub fn lambda(&self, n: u64) -> f64 {
        match self.powers.binary_search(&(n.min(u32::MAX as u64) as u32)) {
            Ok(i) if n <= u32::MAX as u64 => (self.bases[i] as f64).ln(),
            _ => 0.0,
        }
    }

    /// ψ(n) = Σ_{m ≤ n} Λ(m), for n ≤ n_max.
    pub fn psi_prefix(&self, n: u64) -> f64 {
        let idx = self.powers.partition_point(|&p| (p as u64) <= n);
        if idx == 0 {
            0.0
        } else {
            self.psi_at[idx - 1]
        }
    }

    /// Prime powers p^k ≤ n_max in increasing order, paired with p.
    pub fn prime_powers(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.powers.iter().zip(&self.bases).map(|(&n, &p)| (n as u64, p as u64))
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    fn check_x(&self, x: f64) -> Result<()> {
        if !(x >= 2.0) || x > self.n_max as f64 {
            return Err(Error::range(format!("x = {x} outside [2, {}]", self.n_max)));
        }
        Ok(())
    }
}

/// Segmented sieve of Eratosthenes producing Λ and ψ up to `n_max`.
pub fn sieve_lambda(n_max: u64) -> Result<LambdaTable> {
    if n_max > SIEVE_CAPACITY {
        return Err(Error::Capacity {
            requested: n_max,
            capacity: SIEVE_CAPACITY,
        });
    }
    if n_max < 2 {
        return Err(Error::domain(format!("sieve limit must be at least 2, got {n_max}")));
    }

    let root = isqrt(n_max);
    let base = simple_primes(root);
    let segments = (n_max - 1).div_ceil(SEGMENT_LEN);
    let per_segment: Vec<Vec<u32>> = (0..segments)
        .into_par_iter()
        .map(|s| {
            let lo = 2 + s * SEGMENT_LEN;
            let hi = (lo + SEGMENT_LEN).min(n_max + 1);
            sieve_segment(lo, hi, &base)
        })
        .collect();
    let primes: Vec<u32> = per_segment.into_iter().flatten().collect();

    // Higher powers p^k, k ≥ 2, only exist for p ≤ √n_max.
    let mut higher: Vec<(u32, u32)> = Vec::new();
    for &p in &base {
        let p64 = p as u64;
        let mut q = p64 * p64;
        while q <= n_max {
            higher.push((q as u32, p));
            q *= p64;
        }
    }
    higher.sort_unstable();

    let mut powers = Vec::with_capacity(primes.len() + higher.len());
    let mut bases = Vec::with_capacity(primes.len() + higher.len());
    let (mut i, mut j) = (0, 0);
    while i < primes.len() || j < higher.len() {
        let take_prime = j >= higher.len() || (i < primes.len() && primes[i] < higher[j].0);
        if take_prime {
            powers.push(primes[i]);
            bases.push(primes[i]);
            i += 1;
        } else {
            powers.push(higher[j].0);
            bases.push(higher[j].1);
            j += 1;
        }
    }

    let mut acc = NeumaierSum::new();
    let psi_at = bases
        .iter()
        .map(|&p| {
            acc.add((p as f64).ln());
            acc.value()
        })
        .collect();

    Ok(LambdaTable {
        n_max,
        powers,
        bases,
        psi_at,
        primes,
    })
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

fn simple_primes(limit: u64) -> Vec<u32> {
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            out.push(i as u32);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Primes in `[lo, hi)`, using base primes up to √hi.
fn sieve_segment(lo: u64, hi: u64, base: &[u32]) -> Vec<u32> {
    let len = (hi - lo) as usize;
    let mut composite = vec![false; len];
    for &p in base {
        let p = p as u64;
        if p * p >= hi {
            break;
        }
        let start = (p * p).max(lo.div_ceil(p) * p);
        let mut m = start;
        while m < hi {
            composite[(m - lo) as usize] = true;
            m += p;
        }
    }
    composite
        .iter()
        .enumerate()
        .filter(|(_, &c)| !c)
        .map(|(i, _)| (lo + i as u64) as u32)
        .collect()
}

/// ψ(x) = ψ(⌊x⌋).
pub fn psi(x: f64, table: &LambdaTable) -> Result<f64> {
    table.check_x(x)?;
    Ok(table.psi_prefix(x.floor() as u64))
}

/// π(x): number of primes ≤ x.
pub fn pi_count(x: f64, table: &LambdaTable) -> Result<u64> {
    table.check_x(x)?;
    let n = x.floor() as u64;
    Ok(table.primes.partition_point(|&p| (p as u64) <= n) as u64)
}

/// li(x) = ∫₂ˣ dt / log t (lower limit 2, so li(2) = 0).
pub fn li(x: f64) -> Result<f64> {
    if !(x >= 2.0) || !x.is_finite() {
        return Err(Error::domain(format!("li needs x >= 2, got {x}")));
    }
    if x == 2.0 {
        return Ok(0.0);
    }
    let (v, _) = adaptive_gk15(|t: f64| 1.0 / t.ln(), 2.0, x, 1e-10)?;
    Ok(v)
}

/// ψ, π, li and the two error terms at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PntErrors {
    pub x: f64,
    pub psi: f64,
    /// R(x) = ψ(x) − x
    pub r: f64,
    pub pi: u64,
    pub li: f64,
    /// P(x) = π(x) − li(x)
    pub p: f64,
}

pub fn pnt_errors(x: f64, table: &LambdaTable) -> Result<PntErrors> {
    let psi_x = psi(x, table)?;
    let pi_x = pi_count(x, table)?;
    let li_x = li(x)?;
    Ok(PntErrors {
        x,
        psi: psi_x,
        r: psi_x - x,
        pi: pi_x,
        li: li_x,
        p: pi_x as f64 - li_x,
    })
}

/// (P(x) − R(x)/log x + √x/log x) · log²x / √x, the normalized remainder of
/// the transfer from R to P under RH.
pub fn rtop_residual(x: f64, table: &LambdaTable) -> Result<f64> {
    if !(x >= 100.0) {
        return Err(Error::range(format!("rtop_residual needs x >= 100, got {x}")));
    }
    let e = pnt_errors(x, table)?;
    let l = x.ln();
    let s = x.sqrt();
    Ok((e.p - e.r / l + s / l) * l * l / s)
}

/// J(x, h) = ∫₀ˣ (ψ(t+h) − ψ(t) − h)² dt, evaluated exactly: the integrand
/// is constant between consecutive points of {q, q − h : q a prime power}.
pub fn j_second_moment(x: f64, h: f64, table: &LambdaTable) -> Result<f64> {
    if !(h >= 1.0) || !(x >= h) || x + h > table.n_max as f64 {
        return Err(Error::range(format!(
            "J(x, h) needs 1 <= h <= x <= n_max - h; got x = {x}, h = {h}, n_max = {}",
            table.n_max
        )));
    }
    let jumps: Vec<f64> = table
        .powers
        .iter()
        .map(|&q| q as f64)
        .take_while(|&q| q <= x + h)
        .collect();
    let mut breaks: Vec<f64> = Vec::with_capacity(2 * jumps.len() + 2);
    breaks.push(0.0);
    breaks.push(x);
    breaks.extend(jumps.iter().copied().filter(|&q| q < x));
    breaks.extend(jumps.iter().map(|&q| q - h).filter(|&b| b > 0.0 && b < x));
    breaks.sort_by(|a, b| a.partial_cmp(b).expect("finite breakpoints"));
    breaks.dedup();

    let psi_at = |t: f64| {
        if t < 2.0 {
            0.0
        } else {
            table.psi_prefix(t.floor() as u64)
        }
    };
    let mut acc = NeumaierSum::new();
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        let mid = 0.5 * (a + b);
        let g = psi_at(mid + h) - psi_at(mid) - h;
        acc.add((b - a) * g * g);
    }
    Ok(acc.value())
}

/// Summary of the empirical von Koch check |R(x)| ≤ c·√x·log²x over the
/// integers 2 ≤ x ≤ x_max.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VonKochScan {
    pub x_max: u64,
    pub max_ratio: f64,
    pub argmax: u64,
    /// Integers where the ratio exceeded the constant passed to the scan.
    pub violations: u64,
}

pub fn von_koch_scan(table: &LambdaTable, x_max: u64, constant: f64) -> Result<VonKochScan> {
    if x_max < 2 || x_max > table.n_max {
        return Err(Error::range(format!("x_max = {x_max} outside [2, {}]", table.n_max)));
    }
    let mut idx = 0;
    let mut psi_n = 0.0;
    let mut max_ratio = 0.0f64;
    let mut argmax = 2;
    let mut violations = 0;
    for n in 2..=x_max {
        while idx < table.powers.len() && table.powers[idx] as u64 <= n {
            psi_n = table.psi_at[idx];
            idx += 1;
        }
        let xf = n as f64;
        let l = xf.ln();
        let ratio = (psi_n - xf).abs() / (xf.sqrt() * l * l);
        if ratio > max_ratio {
            max_ratio = ratio;
            argmax = n;
        }
        if ratio > constant {
            violations += 1;
        }
    }
    Ok(VonKochScan {
        x_max,
        max_ratio,
        argmax,
        violations,
    })
}

/// CSV rows (x, psi, r, pi, li, p, residual); `residual` is the normalized
/// R→P transfer remainder, empty below x = 100.
pub fn pnt_report(xs: &[f64], table: &LambdaTable) -> Result<ScanReport> {
    if xs.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let mut report = ScanReport::new(["x", "psi", "r", "pi", "li", "p", "residual"]);
    let mut max_residual = 0.0f64;
    for &x in xs {
        let e = pnt_errors(x, table)?;
        let residual = if x >= 100.0 {
            let v = rtop_residual(x, table)?;
            max_residual = max_residual.max(v.abs());
            Cell::Float(v)
        } else {
            Cell::Text(String::new())
        };
        report.push(vec![
            Cell::Float(e.x),
            Cell::Float(e.psi),
            Cell::Float(e.r),
            Cell::Int(e.pi as i64),
            Cell::Float(e.li),
            Cell::Float(e.p),
            residual,
        ]);
    }
    report.set_meta("n_max", table.n_max);
    report.set_meta("max_abs_residual", max_residual);
    Ok(report)
}
