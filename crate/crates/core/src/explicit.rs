//! ψ(x) and R(x) rebuilt from zeros, dyadic block sums over (W, Y], and the
//! ratio |Σ_{s<γ≤t} x^{iγ}| / √((t/β(t))·𝓕̂) with 𝓕̂ sampled on a grid.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::conjecture::BetaSchedule;
use crate::error::{Error, Result};
use crate::numerics::{cis_product, ComplexSum, NeumaierSum};
use crate::pair_correlation::f_prefix_profile;
use crate::primes::{psi, LambdaTable};
use crate::report::ScanReport;
use crate::zeros::ZeroSet;

/// Blocks with fewer zeros than this also sample F just before and at each
/// ordinate inside (s, t].
pub const ORDINATE_SAMPLING_LIMIT: usize = 512;

/// Upper bound for the explicit-formula terms left out of [`truncated_psi`]:
/// log 2π + ½|log(1 − x⁻²)| < 2 for x ≥ 10.
pub const OMITTED_TERMS_BOUND: f64 = 2.0;

/// Zeros in (s, t] summed against x^{iγ}.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSum {
    pub k: i32,
    pub x: f64,
    pub s: f64,
    pub t: f64,
    /// Σ x^{iγ}
    pub value: Complex64,
    /// Σ x^{iγ}/γ
    pub weighted: Complex64,
    /// max over prefixes of |Σ x^{iγ}|
    pub prefix_max: f64,
    pub count: usize,
}

fn check_x(x: f64) -> Result<()> {
    if !(x >= 2.0) || !x.is_finite() {
        return Err(Error::domain(format!("x must be at least 2, got {x}")));
    }
    if x.fract() == 0.0 {
        return Err(Error::IntegerArgument(x));
    }
    Ok(())
}

/// x − 2 Re Σ_{0<γ≤Y} x^{1/2+iγ}/(1/2+iγ).
pub fn truncated_psi(x: f64, y: f64, zs: &ZeroSet) -> Result<f64> {
    check_x(x)?;
    if !(y > 14.0) {
        return Err(Error::range(format!("Y must exceed 14, got {y}")));
    }
    let gammas = zs.up_to(y)?;
    let lx = x.ln();
    let mut acc = NeumaierSum::new();
    for &g in gammas {
        let z = cis_product(g, lx);
        acc.add((0.5 * z.re + g * z.im) / (0.25 + g * g));
    }
    Ok(x - 2.0 * x.sqrt() * acc.value())
}

/// The terms −log 2π − ½ log(1 − x⁻²) of the exact explicit formula that
/// [`truncated_psi`] leaves out. Adding this to `truncated_psi` isolates the
/// error from cutting the zero sum at Y.
pub fn lower_order_terms(x: f64) -> f64 {
    -(2.0 * std::f64::consts::PI).ln() - 0.5 * (1.0 - x.powi(-2)).ln()
}

fn check_window(x: f64, w: f64, y: f64, zs: &ZeroSet) -> Result<()> {
    if !(x > 1.0) || !x.is_finite() {
        return Err(Error::domain(format!("x must exceed 1, got {x}")));
    }
    if !(w >= 14.0) || !(y >= w) {
        return Err(Error::range(format!("need 14 <= W <= Y, got W = {w}, Y = {y}")));
    }
    zs.check_height(y)
}

/// Σ_{W<γ≤Y} x^{iγ}/γ, summed in ordinate order.
pub fn weighted_zero_sum(x: f64, w: f64, y: f64, zs: &ZeroSet) -> Result<Complex64> {
    check_window(x, w, y, zs)?;
    let lx = x.ln();
    let mut acc = ComplexSum::new();
    for &g in zs.between(w, y)? {
        acc.add(cis_product(g, lx) / g);
    }
    Ok(acc.value())
}

/// −2 Im Σ_{W<γ≤Y} x^{iγ}/γ, the zero-side approximation of R(x)/√x.
pub fn zero_sum_r(x: f64, w: f64, y: f64, zs: &ZeroSet) -> Result<f64> {
    Ok(-2.0 * weighted_zero_sum(x, w, y, zs)?.im)
}

/// Smallest k with y ≤ 2^k.
fn ceil_log2(y: f64) -> i32 {
    let mut k = y.log2().floor() as i32 - 1;
    while 2f64.powi(k) < y {
        k += 1;
    }
    k
}

fn block_sum(k: i32, x: f64, s: f64, t: f64, gammas: &[f64]) -> BlockSum {
    let lx = x.ln();
    let mut value = ComplexSum::new();
    let mut weighted = ComplexSum::new();
    let mut prefix_max = 0.0f64;
    for &g in gammas {
        let z = cis_product(g, lx);
        value.add(z);
        weighted.add(z / g);
        prefix_max = prefix_max.max(value.value().norm());
    }
    BlockSum {
        k,
        x,
        s,
        t,
        value: value.value(),
        weighted: weighted.value(),
        prefix_max,
        count: gammas.len(),
    }
}

/// Blocks (2^{k−1}, 2^k] ∩ (W, Y] for k₁ ≤ k ≤ k₂, where
/// 2^{k₁−1} < W ≤ 2^{k₁} and 2^{k₂−1} < Y ≤ 2^{k₂}.
pub fn dyadic_blocks(x: f64, w: f64, y: f64, zs: &ZeroSet) -> Result<Vec<BlockSum>> {
    check_window(x, w, y, zs)?;
    let k1 = ceil_log2(w);
    let k2 = ceil_log2(y);
    let mut bounds = Vec::new();
    for k in k1..=k2 {
        let s = 2f64.powi(k - 1).max(w);
        let t = 2f64.powi(k).min(y);
        bounds.push((k, s, t.max(s)));
    }
    bounds
        .into_par_iter()
        .map(|(k, s, t)| Ok(block_sum(k, x, s, t, zs.between(s, t)?)))
        .collect()
}

/// Recombines block weighted sums in block order.
pub fn combine_blocks(blocks: &[BlockSum]) -> Complex64 {
    let mut acc = ComplexSum::new();
    for b in blocks {
        acc.add(b.weighted);
    }
    acc.value()
}

/// Result of [`lemma1_ratio`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma1Ratio {
    pub lhs: f64,
    pub f_hat: f64,
    pub ratio: f64,
}

/// `n + 1` geometric points from s to t with both endpoints exact.
fn geometric_grid(s: f64, t: f64, n: usize) -> Vec<f64> {
    let r = (t / s).ln();
    (0..=n)
        .map(|i| match i {
            0 => s,
            i if i == n => t,
            i => s * (r * i as f64 / n as f64).exp(),
        })
        .collect()
}

/// |Σ_{s<γ≤t} x^{iγ}| / √((t/β(t))·𝓕̂), where 𝓕̂ is the largest F_{β(v′)}(x, v)
/// over s ≤ v, v′ ≤ t sampled at `v_grid` geometric steps (endpoints included).
/// Doubling `v_grid` refines the grid, so 𝓕̂ never decreases under it.
pub fn lemma1_ratio(
    x: f64,
    s: f64,
    t: f64,
    beta_sched: &BetaSchedule,
    zs: &ZeroSet,
    v_grid: usize,
) -> Result<Lemma1Ratio> {
    if !(x >= 1.0) || !x.is_finite() {
        return Err(Error::domain(format!("x must be at least 1, got {x}")));
    }
    if !(s >= 3.0 && s < t) {
        return Err(Error::range(format!("need 3 <= s < t, got s = {s}, t = {t}")));
    }
    if v_grid < 8 {
        return Err(Error::domain(format!("v_grid must be at least 8, got {v_grid}")));
    }
    let block = zs.between(s, t)?;
    let beta_t = beta_sched.eval(t)?;
    if !(beta_t > 0.0 && beta_t <= t) {
        return Err(Error::ScheduleDomain(format!("beta(t) = {beta_t} outside (0, t]")));
    }
    let lx = x.ln();
    let mut sum = ComplexSum::new();
    for &g in block {
        sum.add(cis_product(g, lx));
    }
    let lhs = sum.value().norm();

    let grid = geometric_grid(s, t, v_grid);
    // F(x, v) only changes when v crosses an ordinate, so it is enough to
    // know how many ordinates each sample point covers.
    let mut counts: Vec<usize> = grid.iter().map(|&v| zs.count_le(v)).collect();
    if block.len() < ORDINATE_SAMPLING_LIMIT {
        let first = zs.count_le(s);
        for i in 0..block.len() {
            counts.push(first + i);
            counts.push(first + i + 1);
        }
    }
    counts.sort_unstable();
    counts.dedup();
    counts.retain(|&c| c > 0);

    let mut betas = grid.iter().map(|&v| beta_sched.eval(v)).collect::<Result<Vec<f64>>>()?;
    betas.sort_by(|a, b| a.partial_cmp(b).expect("finite beta"));
    betas.dedup();

    let prefix = &zs.gammas()[..zs.count_le(t)];
    let f_hat = betas
        .par_iter()
        .map(|&b| {
            let profile = f_prefix_profile(prefix, lx, b)?;
            Ok(counts.iter().map(|&c| profile[c - 1]).fold(0.0, f64::max))
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);

    let ratio = if lhs == 0.0 || f_hat == 0.0 {
        0.0
    } else {
        lhs / ((t / beta_t) * f_hat).sqrt()
    };
    Ok(Lemma1Ratio { lhs, f_hat, ratio })
}

/// Rows (x, W, Y, zero_sum_r, sieve_r_normalized, residual).
pub fn zero_sum_report(points: &[(f64, f64, f64)], zs: &ZeroSet, table: &LambdaTable) -> Result<ScanReport> {
    if points.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let mut report = ScanReport::new(["x", "W", "Y", "zero_sum_r", "sieve_r_normalized", "residual"]);
    let mut max_c = 0.0f64;
    for &(x, w, y) in points {
        check_x(x)?;
        let z = zero_sum_r(x, w, y, zs)?;
        let r = (psi(x, table)? - x) / x.sqrt();
        let res = z - r;
        max_c = max_c.max(res.abs() / (w.ln() * w.ln()));
        report.push(vec![x.into(), w.into(), y.into(), z.into(), r.into(), res.into()]);
    }
    report.set_meta("max_residual_over_log2_w", max_c);
    report.set_meta("zeros", zs.provenance());
    Ok(report)
}

/// Rows (x, Y, truncated_psi, psi, error, envelope_constant) where the
/// constant is |error| / ((x/Y) log²(xY)).
pub fn truncated_psi_report(points: &[(f64, f64)], zs: &ZeroSet, table: &LambdaTable) -> Result<ScanReport> {
    if points.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let mut report = ScanReport::new(["x", "Y", "truncated_psi", "psi", "error", "envelope_constant"]);
    let mut max_c = 0.0f64;
    for &(x, y) in points {
        let tp = truncated_psi(x, y, zs)?;
        let p = psi(x, table)?;
        let c = (tp - p).abs() / envelope(x, y);
        max_c = max_c.max(c);
        report.push(vec![x.into(), y.into(), tp.into(), p.into(), (tp - p).into(), c.into()]);
    }
    report.set_meta("max_envelope_constant", max_c);
    report.set_meta("omitted_terms_bound", OMITTED_TERMS_BOUND);
    report.set_meta("zeros", zs.provenance());
    Ok(report)
}

/// (x/Y)·log²(xY).
pub fn envelope(x: f64, y: f64) -> f64 {
    let l = (x * y).ln();
    x / y * l * l
}

/// Rows (x, s, t, lhs, F_hat, ratio).
pub fn lemma1_report(
    triples: &[(f64, f64, f64)],
    beta_sched: &BetaSchedule,
    zs: &ZeroSet,
    v_grid: usize,
) -> Result<ScanReport> {
    if triples.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let mut report = ScanReport::new(["x", "s", "t", "lhs", "F_hat", "ratio"]);
    let mut max_ratio = 0.0f64;
    for &(x, s, t) in triples {
        let r = lemma1_ratio(x, s, t, beta_sched, zs, v_grid)?;
        max_ratio = max_ratio.max(r.ratio);
        report.push(vec![
            x.into(),
            s.into(),
            t.into(),
            r.lhs.into(),
            r.f_hat.into(),
            r.ratio.into(),
        ]);
    }
    report.set_meta("max_ratio", max_ratio);
    report.set_meta("v_grid", v_grid);
    report.set_meta(
        "beta_schedule",
        serde_json::to_value(beta_sched).expect("schedule serializes"),
    );
    report.set_meta("zeros", zs.provenance());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pair_correlation::f_direct;
    use crate::primes::sieve_lambda;
    use crate::zeros::{find_zeros, ZeroSource};
    use std::sync::OnceLock;

    fn zeros() -> &'static ZeroSet {
        static Z: OnceLock<ZeroSet> = OnceLock::new();
        Z.get_or_init(|| find_zeros(1000.0, 1e-10).unwrap())
    }

    fn table() -> &'static LambdaTable {
        static T: OnceLock<LambdaTable> = OnceLock::new();
        T.get_or_init(|| sieve_lambda(20_000).unwrap())
    }

    #[test]
    fn truncated_psi_near_sieve() {
        let x = 100.5;
        let tp = truncated_psi(x, 1000.0, zeros()).unwrap();
        let p = psi(x, table()).unwrap();
        assert!((tp - p).abs() <= 5.0 * envelope(x, 1000.0), "{tp} vs {p}");
    }

    #[test]
    fn truncated_psi_sees_the_jump_at_127() {
        let below = truncated_psi(126.5, 1000.0, zeros()).unwrap();
        let above = truncated_psi(127.5, 1000.0, zeros()).unwrap();
        let jump = above - below;
        // both points carry the truncation error; allow the sum of the envelopes
        let tol = 2.0 * envelope(127.5, 1000.0);
        assert!((jump - 1.0 - 127f64.ln()).abs() < tol, "jump {jump}");
    }

    #[test]
    fn truncation_error_shrinks_on_average() {
        let zs = find_zeros(2000.0, 1e-10).unwrap();
        let (mut e500, mut e2000) = (0.0, 0.0);
        for i in 0..20 {
            let x = 100.5 + i as f64;
            let p = psi(x, table()).unwrap() - lower_order_terms(x);
            e500 += (truncated_psi(x, 500.0, &zs).unwrap() - p).abs();
            e2000 += (truncated_psi(x, 2000.0, &zs).unwrap() - p).abs();
        }
        assert!(e2000 < e500, "{e2000} vs {e500}");
        assert!(lower_order_terms(10.0).abs() < OMITTED_TERMS_BOUND);
    }

    #[test]
    fn integer_and_small_arguments_rejected() {
        assert!(matches!(
            truncated_psi(100.0, 500.0, zeros()),
            Err(Error::IntegerArgument(_))
        ));
        assert!(truncated_psi(1.5, 500.0, zeros()).is_err());
        assert!(truncated_psi(10.5, 14.0, zeros()).is_err());
        assert!(matches!(
            truncated_psi(10.5, 2000.0, zeros()),
            Err(Error::HeightExceeded { .. })
        ));
    }

    #[test]
    fn zero_sum_empty_window() {
        assert_eq!(zero_sum_r(1e4, 100.0, 100.0, zeros()).unwrap(), 0.0);
    }

    #[test]
    fn blocks_for_14_to_64() {
        let blocks = dyadic_blocks(50.0, 14.0, 64.0, zeros()).unwrap();
        let ks: Vec<i32> = blocks.iter().map(|b| b.k).collect();
        assert_eq!(ks, vec![4, 5, 6]);
        assert_eq!((blocks[0].s, blocks[0].t), (14.0, 16.0));
        assert_eq!((blocks[2].s, blocks[2].t), (32.0, 64.0));
        let total: usize = blocks.iter().map(|b| b.count).sum();
        assert_eq!(total, zeros().count_le(64.0) - zeros().count_le(14.0));
    }

    #[test]
    fn blocks_recombine_and_obey_bounds() {
        let zs = zeros();
        for &(x, w, y) in &[(1e4, 30.0, 900.0), (77.7, 14.0, 1000.0), (3.5e6, 128.0, 999.0)] {
            let blocks = dyadic_blocks(x, w, y, zs).unwrap();
            let full = weighted_zero_sum(x, w, y, zs).unwrap();
            assert!((combine_blocks(&blocks) - full).norm() <= 1e-12 * full.norm().max(1.0));
            for b in &blocks {
                assert!(b.value.norm() <= b.count as f64 + 1e-9);
                assert!(b.weighted.norm() <= b.count as f64 / b.s + 1e-12);
                assert!(b.weighted.norm() <= b.prefix_max / b.s + 1e-12);
            }
        }
    }

    #[test]
    fn lemma1_trivial_cases() {
        let zs = zeros();
        let one = BetaSchedule::constant(1.0).unwrap();
        // no ordinates in (3, 14]
        let r = lemma1_ratio(10.0, 3.0, 14.0, &one, zs, 8).unwrap();
        assert_eq!((r.lhs, r.ratio), (0.0, 0.0));
        let huge = BetaSchedule::constant(200.0).unwrap();
        let r = lemma1_ratio(10.0, 100.0, 200.0, &huge, zs, 8).unwrap();
        assert!(r.ratio.is_finite() && r.ratio > 0.0);
        assert!(lemma1_ratio(10.0, 100.0, 150.0, &huge, zs, 8).is_err());
        assert!(lemma1_ratio(10.0, 100.0, 200.0, &one, zs, 4).is_err());
    }

    #[test]
    fn lemma1_f_hat_covers_direct_values_and_refines() {
        let zs = zeros();
        let one = BetaSchedule::constant(1.0).unwrap();
        let r8 = lemma1_ratio(1e3, 200.0, 400.0, &one, zs, 8).unwrap();
        let r16 = lemma1_ratio(1e3, 200.0, 400.0, &one, zs, 16).unwrap();
        assert!(r16.f_hat >= r8.f_hat * (1.0 - 1e-12));
        for v in [200.0, 300.0, 400.0] {
            let f = f_direct(zs, 1e3, v, 1.0).unwrap().value;
            assert!(r8.f_hat >= f * (1.0 - 1e-12));
        }
    }

    #[test]
    fn synthetic_single_zero() {
        let zs = ZeroSet::new(vec![20.0], 30.0, ZeroSource::Computed, 1e-12).unwrap();
        let r = lemma1_ratio(5.0, 10.0, 30.0, &BetaSchedule::constant(1.0).unwrap(), &zs, 8).unwrap();
        // lhs = 1, F = 1 ⇒ ratio = 1/√30
        assert!((r.lhs - 1.0).abs() < 1e-15);
        assert_eq!(r.f_hat, 1.0);
        assert!((r.ratio - 1.0 / 30f64.sqrt()).abs() < 1e-15);
    }
}
