//! Floating-point building blocks shared by the zero finder, the pair sums
//! and the quadrature routines: error-free transformations, compensated
//! accumulators, phase reduction modulo 2π and Gauss rules.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// 2π split into three parts; `TWO_PI_HI + TWO_PI_MID` carries about 106 bits.
const TWO_PI_HI: f64 = std::f64::consts::TAU;
const TWO_PI_MID: f64 = 2.4492935982947064e-16;
const TWO_PI_LO: f64 = -5.989539619436679e-33;

/// Error-free sum: `a + b == s + e` exactly.
#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Error-free product via fused multiply-add: `a * b == p + e` exactly.
#[inline]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

/// Reduces the product `a * b` modulo 2π into `[-π, π]`.
///
/// The product is formed exactly as a double-double and the multiple of 2π is
/// removed with a three-part constant, so the result stays accurate to a few
/// ulps of π even when `a * b` is in the millions.
#[inline]
pub fn reduce_phase(a: f64, b: f64) -> f64 {
    let (hi, lo) = two_prod(a, b);
    reduce_double(hi, lo)
}

/// Reduces `hi + lo` modulo 2π into `[-π, π]`.
#[inline]
pub fn reduce_double(hi: f64, lo: f64) -> f64 {
    if hi.abs() <= PI {
        return hi + lo;
    }
    let k = (hi / TWO_PI_HI).round();
    let r = (-k).mul_add(TWO_PI_HI, hi);
    let r = (-k).mul_add(TWO_PI_MID, r);
    r + lo - k * TWO_PI_LO
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let (s, e) = two_sum(self.sum, x);
        self.sum = s;
        self.comp += e;
    }

    /// Merges another accumulator, keeping both compensation terms.
    pub fn merge(&mut self, other: &NeumaierSum) {
        self.add(other.sum);
        self.comp += other.comp;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = NeumaierSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Compensated sum of complex terms.
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexSum {
    re: NeumaierSum,
    im: NeumaierSum,
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn merge(&mut self, other: &ComplexSum) {
        self.re.merge(&other.re);
        self.im.merge(&other.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// `e^{i * a * b}` with the phase reduced before the trigonometric calls.
#[inline]
pub fn cis_product(a: f64, b: f64) -> Complex64 {
    let (s, c) = reduce_phase(a, b).sin_cos();
    Complex64::new(c, s)
}

/// An n-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes and weights by Newton iteration on the Legendre recurrence.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Integrates `f` over `[a, b]` with this rule.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = NeumaierSum::new();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc.add(w * f(mid + half * x));
        }
        half * acc.value()
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Nodes and weights of a composite Gauss–Legendre rule on `[a, b]`.
pub fn composite_nodes(rule: &GaussLegendre, a: f64, b: f64, panels: usize) -> (Vec<f64>, Vec<f64>) {
    let h = (b - a) / panels as f64;
    let mut xs = Vec::with_capacity(panels * rule.len());
    let mut ws = Vec::with_capacity(panels * rule.len());
    for p in 0..panels {
        let lo = a + h * p as f64;
        let mid = lo + 0.5 * h;
        for (x, w) in rule.nodes().iter().zip(rule.weights()) {
            xs.push(mid + 0.5 * h * x);
            ws.push(0.5 * h * w);
        }
    }
    (xs, ws)
}

/// Result of a panel-doubling quadrature.
#[derive(Debug, Clone, Copy)]
pub struct DoublingEstimate {
    pub value: f64,
    /// |I(2P) - I(P)| for the last doubling.
    pub difference: f64,
    /// Σ |w_i f(x_i)| of the final rule, for rounding error bounds.
    pub abs_sum: f64,
    pub panels: usize,
}

/// Composite Gauss–Legendre quadrature on `[a, b]` with panel doubling.
///
/// `eval` receives every node of one refinement level at once and must return
/// the integrand values in the same order. Doubling stops once two successive
/// levels agree to `abs_tol`.
pub fn integrate_doubling<F>(
    rule: &GaussLegendre,
    a: f64,
    b: f64,
    initial_panels: usize,
    abs_tol: f64,
    max_doublings: usize,
    mut eval: F,
) -> Result<DoublingEstimate>
where
    F: FnMut(&[f64]) -> Vec<f64>,
{
    let mut panels = initial_panels.max(1);
    let mut level = |panels: usize| {
        let (xs, ws) = composite_nodes(rule, a, b, panels);
        let fs = eval(&xs);
        let mut acc = NeumaierSum::new();
        let mut abs = 0.0;
        for (w, f) in ws.iter().zip(&fs) {
            acc.add(w * f);
            abs += (w * f).abs();
        }
        (acc.value(), abs)
    };
    let (mut prev, _) = level(panels);
    for _ in 0..max_doublings {
        panels *= 2;
        let (cur, abs_sum) = level(panels);
        let difference = (cur - prev).abs();
        if difference <= abs_tol {
            return Ok(DoublingEstimate {
                value: cur,
                difference,
                abs_sum,
                panels,
            });
        }
        prev = cur;
    }
    Err(Error::Convergence(format!(
        "no agreement to {abs_tol:e} on [{a}, {b}] after {max_doublings} doublings ({panels} panels)"
    )))
}

// Gauss–Kronrod 7/15 abscissae and weights (QUADPACK qk15), kept as published.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resk = fc * WGK[7];
    let mut resg = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        resk += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    (resk * half, ((resk - resg) * half).abs())
}

/// Adaptive Gauss–Kronrod (7/15) quadrature by recursive bisection.
///
/// Returns `(value, error_estimate)`; the estimate is the sum of the
/// Kronrod-minus-Gauss differences over the accepted panels.
pub fn adaptive_gk15<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> Result<(f64, f64)> {
    const MAX_PANELS: usize = 200_000;
    let mut stack = vec![(a, b, abs_tol)];
    let mut value = NeumaierSum::new();
    let mut err = 0.0;
    let mut accepted = 0usize;
    while let Some((lo, hi, tol)) = stack.pop() {
        let (v, e) = gk15(&f, lo, hi);
        if e <= tol || (hi - lo) <= 1e-12 * (1.0 + lo.abs()) {
            value.add(v);
            err += e;
            accepted += 1;
            if accepted > MAX_PANELS {
                return Err(Error::Convergence(format!(
                    "adaptive quadrature on [{a}, {b}] exceeded {MAX_PANELS} panels"
                )));
            }
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((mid, hi, 0.5 * tol));
            stack.push((lo, mid, 0.5 * tol));
        }
    }
    Ok((value.value(), err))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_prod_is_exact() {
        let a = 1.0 + f64::EPSILON;
        let b = 1.0 - f64::EPSILON;
        let (p, e) = two_prod(a, b);
        assert_eq!(p, 1.0);
        assert_eq!(e, -f64::EPSILON * f64::EPSILON);
    }

    #[test]
    fn neumaier_recovers_cancelled_terms() {
        let acc: NeumaierSum = [1.0, 1e100, 1.0, -1e100].into_iter().collect();
        assert_eq!(acc.value(), 2.0);
    }

    #[test]
    fn phase_reduction_matches_exact_multiple() {
        // 1e6 * 2π + 0.25, built from the split constant
        let k = 1.0e6;
        let (hi, lo) = two_prod(k, TWO_PI_HI);
        let r = reduce_double(hi + 0.25, lo + k * TWO_PI_MID);
        assert!((r - 0.25).abs() < 1e-9, "{r}");
    }

    #[test]
    fn phase_reduction_of_large_products() {
        // γ·log x with γ near 1e5 and log x near 25; compare against the naive
        // value, which agrees to about 1e-9 relative to 2.5e6.
        let a = 99_999.123_456_789;
        let b = 24.987_654_321;
        let r = reduce_phase(a, b);
        assert!(r.abs() <= PI + 1e-15);
        let naive = (a * b).sin();
        assert!((r.sin() - naive).abs() < 1e-8);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let rule = GaussLegendre::new(10);
        let sum_w: f64 = rule.weights().iter().sum();
        assert!((sum_w - 2.0).abs() < 1e-14);
        // x^18 on [-1, 1] = 2/19
        let v = rule.integrate(-1.0, 1.0, |x| x.powi(18));
        assert!((v - 2.0 / 19.0).abs() < 1e-14);
    }

    #[test]
    fn doubling_quadrature_of_damped_cosine() {
        // ∫_0^20 e^{-u} cos(5u) du = (1 - e^{-20}(cos 100 - 5 sin 100)) / 26
        let rule = GaussLegendre::new(20);
        let est = integrate_doubling(&rule, 0.0, 20.0, 4, 1e-13, 10, |xs| {
            xs.iter().map(|u| (-u).exp() * (5.0 * u).cos()).collect()
        })
        .unwrap();
        let e20 = (-20.0f64).exp();
        let exact = (1.0 - e20 * (100.0f64.cos() - 5.0 * 100.0f64.sin())) / 26.0;
        assert!((est.value - exact).abs() < 1e-13);
    }

    #[test]
    fn gk15_adaptive_log_integral() {
        let (v, e) = adaptive_gk15(|t: f64| 1.0 / t.ln(), 2.0, 10.0, 1e-12).unwrap();
        assert!((v - 5.120435724669805).abs() < 1e-11, "{v}");
        assert!(e < 1e-10);
    }
}
