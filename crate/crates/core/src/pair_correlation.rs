//! Montgomery's pair correlation sum F(x, T) and its weighted variant
//!
//! ```text
//! F_β(x, T) = Σ_{0<γ,γ'≤T} x^{i(γ−γ')} w_β(γ − γ'),   w_β(u) = 4β² / (4β² + u²)
//! ```
//!
//! evaluated two independent ways: the O(N²) pair sum and the integral
//! representation β∫ e^{−2β|u|} |Σ x^{iγ} e^{iγu}|² du. The exact identity
//! relating F_β to shifted values of F = F₁ is evaluated by quadrature as a
//! third check.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{cis_product, integrate_doubling, reduce_phase, ComplexSum, GaussLegendre, NeumaierSum};
use crate::zeros::ZeroSet;

/// Ordinates per tile in the blocked pair loop.
const TILE: usize = 4096;
/// Gauss–Legendre points per quadrature panel.
const GL_POINTS: usize = 20;
/// Largest phase advance (radians) across one panel of the first level.
const RADIANS_PER_PANEL: f64 = 16.0;
const MAX_DOUBLINGS: usize = 8;

/// w_β(u) = 4β² / (4β² + u²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightKernel {
    beta: f64,
    four_beta_sq: f64,
}

impl WeightKernel {
    pub fn new(beta: f64) -> Result<Self> {
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(Error::domain(format!("beta must be positive, got {beta}")));
        }
        Ok(Self {
            beta,
            four_beta_sq: 4.0 * beta * beta,
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    #[inline]
    pub fn eval(&self, u: f64) -> f64 {
        self.four_beta_sq / (self.four_beta_sq + u * u)
    }
}

pub fn weight(beta: f64, u: f64) -> Result<f64> {
    Ok(WeightKernel::new(beta)?.eval(u))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FMethod {
    Direct,
    Integral,
}

impl FMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            FMethod::Direct => "direct",
            FMethod::Integral => "integral",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FEvaluation {
    pub x: f64,
    pub t: f64,
    pub beta: f64,
    pub value: f64,
    pub method: FMethod,
    pub err_estimate: f64,
}

fn check_common(zs: &ZeroSet, t: f64, beta: f64) -> Result<WeightKernel> {
    if !(t >= 3.0) {
        return Err(Error::domain(format!("T must be at least 3, got {t}")));
    }
    zs.check_height(t)?;
    WeightKernel::new(beta)
}

fn check_x(x: f64) -> Result<f64> {
    if !(x >= 1.0) || !x.is_finite() {
        return Err(Error::domain(format!("x must be at least 1, got {x}")));
    }
    Ok(x.ln())
}

/// Per-log-x accumulation of Σ_{i<j} w(γ_j − γ_i) cos((γ_j − γ_i) log x).
struct PairSums {
    sums: Vec<NeumaierSum>,
    weight_total: f64,
}

/// Blocked O(N²) pair loop for several values of log x at once. Tiles are
/// processed in parallel and merged in a fixed order.
fn pair_sums(gammas: &[f64], log_xs: &[f64], kernel: WeightKernel) -> PairSums {
    let n = gammas.len();
    let tiles = n.div_ceil(TILE);
    let partial: Vec<(Vec<NeumaierSum>, f64)> = (0..tiles)
        .into_par_iter()
        .map(|ti| {
            let mut sums = vec![NeumaierSum::new(); log_xs.len()];
            let mut wsum = 0.0;
            let i_lo = ti * TILE;
            let i_hi = (i_lo + TILE).min(n);
            for tj in ti..tiles {
                let j_lo = tj * TILE;
                let j_hi = (j_lo + TILE).min(n);
                for i in i_lo..i_hi {
                    let gi = gammas[i];
                    let start = if ti == tj { i + 1 } else { j_lo };
                    for &gj in &gammas[start..j_hi] {
                        let a = gj - gi;
                        let w = kernel.eval(a);
                        wsum += w;
                        for (acc, &l) in sums.iter_mut().zip(log_xs) {
                            acc.add(w * reduce_phase(a, l).cos());
                        }
                    }
                }
            }
            (sums, wsum)
        })
        .collect();
    let mut sums = vec![NeumaierSum::new(); log_xs.len()];
    let mut weight_total = 0.0;
    for (part, w) in &partial {
        for (acc, p) in sums.iter_mut().zip(part) {
            acc.merge(p);
        }
        weight_total += w;
    }
    PairSums { sums, weight_total }
}

/// Rounding model for the pair sum: each term carries a few ulps from the
/// reduced phase, the cosine and the weight.
fn direct_error(n: usize, weight_total: f64) -> f64 {
    let eps = f64::EPSILON;
    2.0 * weight_total * 8.0 * eps + n as f64 * eps
}

/// F_β(x, T) for arbitrary real log x. F is even in log x, so this also
/// covers 0 < x < 1.
pub fn f_direct_log(zs: &ZeroSet, log_x: f64, t: f64, beta: f64) -> Result<FEvaluation> {
    let kernel = check_common(zs, t, beta)?;
    let gammas = zs.up_to(t)?;
    let sums = pair_sums(gammas, &[log_x], kernel);
    let n = gammas.len();
    Ok(FEvaluation {
        x: log_x.exp(),
        t,
        beta,
        value: n as f64 + 2.0 * sums.sums[0].value(),
        method: FMethod::Direct,
        err_estimate: direct_error(n, sums.weight_total),
    })
}

/// F_β(x, T) by the direct pair sum: N(T) from the diagonal plus twice the
/// sum over pairs γ < γ'.
pub fn f_direct(zs: &ZeroSet, x: f64, t: f64, beta: f64) -> Result<FEvaluation> {
    let log_x = check_x(x)?;
    let mut e = f_direct_log(zs, log_x, t, beta)?;
    e.x = x;
    Ok(e)
}

/// F_β at many values of log x, sharing the pair loop.
pub fn f_direct_batch(zs: &ZeroSet, log_xs: &[f64], t: f64, beta: f64) -> Result<Vec<f64>> {
    let kernel = check_common(zs, t, beta)?;
    let gammas = zs.up_to(t)?;
    let n = gammas.len() as f64;
    let sums = pair_sums(gammas, log_xs, kernel);
    Ok(sums.sums.iter().map(|s| n + 2.0 * s.value()).collect())
}

/// F_β(x e^u, T) + F_β(x e^{−u}, T) for each u.
///
/// For a pair with gap a, cos(a(L+u)) + cos(a(L−u)) = 2 cos(aL) cos(au), so
/// both shifts cost one cosine per pair and node.
pub fn f_direct_symmetric(zs: &ZeroSet, log_x: f64, us: &[f64], t: f64, beta: f64) -> Result<Vec<f64>> {
    let kernel = check_common(zs, t, beta)?;
    let gammas = zs.up_to(t)?;
    let n = gammas.len();
    let tiles = n.div_ceil(TILE);
    let partial: Vec<Vec<NeumaierSum>> = (0..tiles)
        .into_par_iter()
        .map(|ti| {
            let mut sums = vec![NeumaierSum::new(); us.len()];
            let i_lo = ti * TILE;
            let i_hi = (i_lo + TILE).min(n);
            for i in i_lo..i_hi {
                let gi = gammas[i];
                for &gj in &gammas[i + 1..] {
                    let a = gj - gi;
                    let c0 = kernel.eval(a) * reduce_phase(a, log_x).cos();
                    for (acc, &u) in sums.iter_mut().zip(us) {
                        acc.add(c0 * reduce_phase(a, u).cos());
                    }
                }
            }
            sums
        })
        .collect();
    let mut sums = vec![NeumaierSum::new(); us.len()];
    for part in &partial {
        for (acc, p) in sums.iter_mut().zip(part) {
            acc.merge(p);
        }
    }
    Ok(sums.iter().map(|s| 2.0 * n as f64 + 4.0 * s.value()).collect())
}

/// F_β(x, γ_k) for every prefix γ_1..γ_k of `gammas`, in O(N²) total.
pub fn f_prefix_profile(gammas: &[f64], log_x: f64, beta: f64) -> Result<Vec<f64>> {
    let kernel = WeightKernel::new(beta)?;
    let mut total = NeumaierSum::new();
    let mut out = Vec::with_capacity(gammas.len());
    for (k, &gk) in gammas.iter().enumerate() {
        let mut row = NeumaierSum::new();
        for &gi in &gammas[..k] {
            let a = gk - gi;
            row.add(kernel.eval(a) * reduce_phase(a, log_x).cos());
        }
        total.add(1.0);
        total.add(2.0 * row.value());
        out.push(total.value());
    }
    Ok(out)
}

/// Upper end U of the truncated u-range such that `bound · e^{−2βU} ≤ target`.
fn truncation_point(bound: f64, target: f64, beta: f64) -> f64 {
    let ratio = bound / target;
    let u = if ratio > 1.0 { ratio.ln() / (2.0 * beta) } else { 0.0 };
    u.max(1.0 / beta)
}

fn initial_panels(u_max: f64, omega: f64) -> usize {
    ((u_max * omega.max(1.0) / RADIANS_PER_PANEL).ceil() as usize).max(4)
}

/// F_β(x, T) from the integral representation
/// β∫ e^{−2β|u|} |Σ_{γ≤T} x^{iγ} e^{iγu}|² du.
///
/// The u-range is cut at ±U where N²·e^{−2βU} ≤ tail_tol·N (|S(u)| ≤ N), and
/// each half-line is integrated by composite Gauss–Legendre with panel
/// doubling until successive levels agree to tail_tol·N.
pub fn f_integral(zs: &ZeroSet, x: f64, t: f64, beta: f64, tail_tol: f64) -> Result<FEvaluation> {
    let log_x = check_x(x)?;
    check_common(zs, t, beta)?;
    if !(1e-12..=1e-4).contains(&tail_tol) {
        return Err(Error::domain(format!("tail_tol = {tail_tol:e} outside [1e-12, 1e-4]")));
    }
    let gammas = zs.up_to(t)?;
    let n = gammas.len();
    if n == 0 {
        return Ok(FEvaluation {
            x,
            t,
            beta,
            value: 0.0,
            method: FMethod::Integral,
            err_estimate: 0.0,
        });
    }
    let nf = n as f64;
    let scale = nf;
    let u_max = truncation_point(nf * nf, tail_tol * scale, beta);
    let tail = nf * nf * (-2.0 * beta * u_max).exp();
    let omega = gammas[n - 1] - gammas[0];
    let phases: Vec<Complex64> = gammas.iter().map(|&g| cis_product(g, log_x)).collect();

    let rule = GaussLegendre::new(GL_POINTS);
    let abs_tol = 0.5 * tail_tol * scale;
    let mut halves = Vec::with_capacity(2);
    for sign in [1.0, -1.0] {
        let est = integrate_doubling(
            &rule,
            0.0,
            u_max,
            initial_panels(u_max, omega),
            abs_tol / beta,
            MAX_DOUBLINGS,
            |us| {
                us.par_iter()
                    .map(|&u| {
                        let mut s = ComplexSum::new();
                        for (c, &g) in phases.iter().zip(gammas) {
                            s.add(c * cis_product(g, sign * u));
                        }
                        (-2.0 * beta * u).exp() * s.value().norm_sqr()
                    })
                    .collect()
            },
        )?;
        halves.push(est);
    }
    let value = beta * (halves[0].value + halves[1].value);
    let quad_diff = beta * (halves[0].difference + halves[1].difference);
    let eps = f64::EPSILON;
    // |S|² from N unit terms: absolute error ≲ 4ε·N·|S|; Cauchy–Schwarz turns
    // the weighted integral of |S| into sqrt(value).
    let rounding = 4.0 * eps * nf * value.max(0.0).sqrt() + 8.0 * eps * beta * (halves[0].abs_sum + halves[1].abs_sum);
    Ok(FEvaluation {
        x,
        t,
        beta,
        value,
        method: FMethod::Integral,
        err_estimate: quad_diff + tail + rounding,
    })
}

/// |β∫ e^{−2β|u|} e^{ivu} du − w_β(v)|, the left side computed by quadrature.
pub fn weight_fourier_check(beta: f64, v: f64, tol: f64) -> Result<f64> {
    let kernel = WeightKernel::new(beta)?;
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tol must be positive, got {tol}")));
    }
    // The imaginary part integrates to zero by symmetry; the real part is
    // 2β∫_0^∞ e^{−2βu} cos(vu) du.
    let target = 0.01 * tol;
    let u_max = truncation_point(1.0, target, beta);
    let rule = GaussLegendre::new(GL_POINTS);
    let est = integrate_doubling(
        &rule,
        0.0,
        u_max,
        initial_panels(u_max, v.abs()),
        target / (2.0 * beta),
        MAX_DOUBLINGS,
        |us| {
            us.iter()
                .map(|&u| (-2.0 * beta * u).exp() * reduce_phase(v, u).cos())
                .collect()
        },
    )?;
    let lhs = 2.0 * beta * est.value;
    Ok((lhs - kernel.eval(v)).abs())
}

/// Right side of F_β = F + β(1 − β²)∫(F(xe^u, T) − F(x, T)) e^{−2β|u|} du,
/// with F(xe^{±u}, T) from the direct pair sum at every quadrature node.
///
/// The range is cut at U where the tail, bounded with |F(y, T)| ≤ F(1, T),
/// drops below quad_tol·N(T); panels are doubled until two levels agree to
/// the same tolerance.
pub fn lemma2_rhs(zs: &ZeroSet, x: f64, t: f64, beta: f64, quad_tol: f64) -> Result<f64> {
    let log_x = check_x(x)?;
    check_common(zs, t, beta)?;
    if !(quad_tol > 0.0) {
        return Err(Error::domain(format!("quad_tol must be positive, got {quad_tol}")));
    }
    let f_x = f_direct_log(zs, log_x, t, 1.0)?.value;
    let factor = beta * (1.0 - beta * beta);
    if factor == 0.0 {
        return Ok(f_x);
    }
    let gammas = zs.up_to(t)?;
    let n = gammas.len();
    if n < 2 {
        // F(y, T) = N for every y, so the integral vanishes.
        return Ok(f_x);
    }
    let f_one = f_direct_log(zs, 0.0, t, 1.0)?.value;
    let scale = n as f64;
    // ∫_U^∞ |F(xe^u)+F(xe^{-u})−2F(x)| e^{−2βu} du ≤ 4F(1,T)·e^{−2βU}/(2β).
    let tail_bound = factor.abs() * 2.0 * f_one / beta;
    let u_max = truncation_point(tail_bound, quad_tol * scale, beta);
    let omega = gammas[n - 1] - gammas[0];
    let rule = GaussLegendre::new(GL_POINTS);
    let abs_tol = quad_tol * scale / factor.abs();
    let est = integrate_doubling(
        &rule,
        0.0,
        u_max,
        initial_panels(u_max, omega),
        abs_tol,
        MAX_DOUBLINGS,
        |us| {
            let sym = f_direct_symmetric(zs, log_x, us, t, 1.0).expect("arguments validated above");
            sym.iter()
                .zip(us)
                .map(|(s, &u)| (s - 2.0 * f_x) * (-2.0 * beta * u).exp())
                .collect()
        },
    )?;
    Ok(f_x + factor * est.value)
}

/// F(x, T) / N(T).
pub fn normalized_f(zs: &ZeroSet, x: f64, t: f64) -> Result<f64> {
    let e = f_direct(zs, x, t, 1.0)?;
    let n = zs.up_to(t)?.len();
    if n == 0 {
        return Err(Error::domain(format!("no zeros up to T = {t}")));
    }
    Ok(e.value / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeros::{find_zeros, ZeroSource};
    use proptest::prelude::*;
    use std::sync::OnceLock;

    fn zeros_to_200() -> &'static ZeroSet {
        static Z: OnceLock<ZeroSet> = OnceLock::new();
        Z.get_or_init(|| find_zeros(200.0, 1e-10).unwrap())
    }

    fn synthetic() -> ZeroSet {
        ZeroSet::new(vec![1.0, 2.0], 3.0, ZeroSource::Computed, 1e-12).unwrap()
    }

    /// Σ over all ordered pairs with complex exponentials, no symmetry used.
    fn naive_f(gammas: &[f64], log_x: f64, beta: f64) -> f64 {
        let mut acc = ComplexSum::new();
        for &g in gammas {
            for &h in gammas {
                let a = g - h;
                let w = 4.0 * beta * beta / (4.0 * beta * beta + a * a);
                acc.add(Complex64::from_polar(w, a * log_x));
            }
        }
        acc.value().re
    }

    #[test]
    fn weight_values() {
        assert_eq!(weight(1.0, 0.0).unwrap(), 1.0);
        assert_eq!(weight(3.7, 0.0).unwrap(), 1.0);
        assert_eq!(weight(1.0, 2.0).unwrap(), 0.5);
        assert_eq!(weight(2.0, 4.0).unwrap(), 0.5);
        assert!(weight(0.0, 1.0).is_err());
        assert!(weight(-1.0, 1.0).is_err());
    }

    #[test]
    fn two_point_hand_value() {
        let e = f_direct(&synthetic(), 1.0, 3.0, 1.0).unwrap();
        assert!((e.value - 3.6).abs() < 1e-15);
    }

    #[test]
    fn direct_matches_naive_double_sum() {
        let zs = zeros_to_200();
        let g = zs.up_to(100.0).unwrap();
        for (x, beta) in [(5.0, 1.0), (37.0, 0.5), (1000.0, 3.0)] {
            let e = f_direct(zs, x, 100.0, beta).unwrap();
            let naive = naive_f(g, f64::ln(x), beta);
            assert!((e.value - naive).abs() < 1e-11, "{} vs {naive}", e.value);
        }
    }

    #[test]
    fn positivity_at_x_one_and_diagonal_decomposition() {
        let zs = zeros_to_200();
        let g = zs.up_to(150.0).unwrap();
        let e = f_direct(zs, 1.0, 150.0, 2.0).unwrap();
        assert!(e.value >= g.len() as f64);
        let mut pairs = NeumaierSum::new();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                pairs.add(weight(2.0, g[j] - g[i]).unwrap());
            }
        }
        assert!((e.value - g.len() as f64 - 2.0 * pairs.value()).abs() < 1e-11);
    }

    #[test]
    fn evenness_in_log_x() {
        let zs = zeros_to_200();
        for l in [0.3, 2.0, 7.5, 20.0] {
            let a = f_direct_log(zs, l, 200.0, 1.0).unwrap().value;
            let b = f_direct_log(zs, -l, 200.0, 1.0).unwrap().value;
            assert_eq!(a, b);
        }
    }

    #[test]
    fn argument_errors() {
        let zs = zeros_to_200();
        assert!(f_direct(zs, 0.5, 100.0, 1.0).is_err());
        assert!(f_direct(zs, 2.0, 2.0, 1.0).is_err());
        assert!(matches!(
            f_direct(zs, 2.0, 300.0, 1.0),
            Err(Error::HeightExceeded { .. })
        ));
        assert!(f_direct(zs, 2.0, 100.0, 0.0).is_err());
        assert!(f_integral(zs, 2.0, 100.0, 1.0, 1e-2).is_err());
    }

    #[test]
    fn integral_agrees_with_direct() {
        let zs = zeros_to_200();
        let d = f_direct(zs, 5.0, 100.0, 1.0).unwrap();
        let i = f_integral(zs, 5.0, 100.0, 1.0, 1e-10).unwrap();
        assert!(i.value >= -i.err_estimate);
        assert!(
            (d.value - i.value).abs() <= d.err_estimate + i.err_estimate,
            "{d:?} {i:?}"
        );
    }

    #[test]
    fn fourier_pair_residuals() {
        assert!(weight_fourier_check(1.0, 0.0, 1e-10).unwrap() < 1e-10);
        assert!(weight_fourier_check(1.0, 2.0, 1e-8).unwrap() <= 1e-8);
        assert!(weight_fourier_check(3.0, 10.0, 1e-8).unwrap() <= 1e-8);
    }

    #[test]
    fn lemma2_is_exact_at_beta_one() {
        let zs = zeros_to_200();
        let rhs = lemma2_rhs(zs, 5.0, 100.0, 1.0, 1e-10).unwrap();
        assert_eq!(rhs, f_direct(zs, 5.0, 100.0, 1.0).unwrap().value);
    }

    #[test]
    fn lemma2_identity_small_case() {
        let zs = zeros_to_200();
        let rhs = lemma2_rhs(zs, 5.0, 100.0, 2.0, 1e-10).unwrap();
        let lhs = f_direct(zs, 5.0, 100.0, 2.0).unwrap().value;
        assert!(((rhs - lhs) / lhs).abs() <= 1e-6, "{rhs} vs {lhs}");
    }

    #[test]
    fn symmetric_batch_matches_two_direct_calls() {
        let zs = zeros_to_200();
        let l = 3f64.ln();
        let us = [0.0, 0.25, 1.7];
        let sym = f_direct_symmetric(zs, l, &us, 120.0, 1.0).unwrap();
        for (s, &u) in sym.iter().zip(&us) {
            let a = f_direct_log(zs, l + u, 120.0, 1.0).unwrap().value;
            let b = f_direct_log(zs, l - u, 120.0, 1.0).unwrap().value;
            assert!((s - a - b).abs() < 1e-10, "{s} vs {}", a + b);
        }
    }

    #[test]
    fn prefix_profile_matches_direct() {
        let zs = zeros_to_200();
        let g = zs.up_to(200.0).unwrap();
        let prof = f_prefix_profile(g, 2f64.ln(), 1.5).unwrap();
        for k in [0usize, 5, 40, g.len() - 1] {
            let t = g[k];
            let d = f_direct(zs, 2.0, t, 1.5).unwrap().value;
            assert!((prof[k] - d).abs() < 1e-10);
        }
    }

    #[test]
    fn normalized_f_at_one_is_at_least_one() {
        let zs = zeros_to_200();
        assert!(normalized_f(zs, 1.0, 150.0).unwrap() >= 1.0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn nonnegative_and_trivially_bounded(l in 0.0f64..12.0, beta in 0.25f64..6.0, t in 20.0f64..200.0) {
            let zs = zeros_to_200();
            let e = f_direct_log(zs, l, t, beta).unwrap();
            let n = zs.count_le(t) as f64;
            prop_assert!(e.value >= -1e-9 * n);
            // Σ_{γ,γ'} w_β ≤ N·(1 + 2·Σ_k w_β(k·min gap)), loosely ≤ N + N²
            prop_assert!(e.value <= n + n * n);
        }
    }
}
