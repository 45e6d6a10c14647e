//! Riemann–Siegel theta and Hardy's Z function.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::tables::{BERNOULLI_OVER_FACTORIAL, C0, C1, C2, C3, C4};
use crate::error::{Error, Result};
use crate::numerics::{reduce_double, reduce_phase, two_prod, NeumaierSum};

/// Smallest height accepted by [`riemann_siegel_theta`] and [`hardy_z`].
pub const MIN_HEIGHT: f64 = 10.0;

/// Below this height Z is evaluated from Euler–Maclaurin summation of ζ;
/// above it the Riemann–Siegel series with corrections C0..C4 is accurate to
/// better than 1e-10.
pub const RS_SWITCH_HEIGHT: f64 = 1000.0;

fn check_height(t: f64) -> Result<()> {
    if !(t >= MIN_HEIGHT) || !t.is_finite() {
        return Err(Error::domain(format!(
            "height {t} is below {MIN_HEIGHT} (asymptotic regime)"
        )));
    }
    Ok(())
}

/// θ(t) from its asymptotic expansion, returned as an unreduced real.
pub fn riemann_siegel_theta(t: f64) -> Result<f64> {
    check_height(t)?;
    let (hi, lo) = theta_parts(t);
    Ok(hi + lo)
}

/// θ(t) as a double-double `(hi, lo)`, needed once t·log t is large enough
/// that a single f64 loses the phase to rounding.
fn theta_parts(t: f64) -> (f64, f64) {
    let l = (t / (2.0 * PI)).ln();
    // (t/2)(l - 1)
    let (p, pe) = two_prod(0.5 * t, l - 1.0);
    let r = 1.0 / t;
    let r2 = r * r;
    let tail = -PI / 8.0
        + r * (1.0 / 48.0
            + r2 * (7.0 / 5760.0 + r2 * (31.0 / 80640.0 + r2 * (127.0 / 430080.0 + r2 * (511.0 / 1216512.0)))));
    (p, pe + tail)
}

/// Hardy's Z function, real on the real line with |Z(t)| = |ζ(1/2 + it)|.
pub fn hardy_z(t: f64) -> Result<f64> {
    check_height(t)?;
    if t < RS_SWITCH_HEIGHT {
        Ok(euler_maclaurin_z(t).re)
    } else {
        Ok(riemann_siegel_z(t))
    }
}

/// Riemann–Siegel main sum plus the correction terms C0..C4.
pub fn riemann_siegel_z_checked(t: f64) -> Result<f64> {
    check_height(t)?;
    Ok(riemann_siegel_z(t))
}

fn riemann_siegel_z(t: f64) -> f64 {
    let a = (t / (2.0 * PI)).sqrt();
    let n = a.floor();
    let p = a - n;
    let (th_hi, th_lo) = theta_parts(t);
    let mut sum = NeumaierSum::new();
    for k in 1..=(n as u64) {
        let kf = k as f64;
        let (tl_hi, tl_lo) = two_prod(t, kf.ln());
        let phase = reduce_double(th_hi - tl_hi, th_lo - tl_lo);
        sum.add(phase.cos() / kf.sqrt());
    }
    let z = 2.0 * p - 1.0;
    let inv_a = 1.0 / a;
    let corr = horner(&C0, z)
        + inv_a * (horner(&C1, z) + inv_a * (horner(&C2, z) + inv_a * (horner(&C3, z) + inv_a * horner(&C4, z))));
    let sign = if (n as u64) % 2 == 1 { 1.0 } else { -1.0 };
    2.0 * sum.value() + sign * corr / a.sqrt()
}

fn horner(coef: &[f64], z: f64) -> f64 {
    coef.iter().rev().fold(0.0, |acc, &c| acc * z + c)
}

/// e^{iθ(t)} ζ(1/2 + it) via Euler–Maclaurin summation. The real part is
/// Z(t); the imaginary part is a residual that vanishes up to rounding.
pub(crate) fn euler_maclaurin_z(t: f64) -> Complex64 {
    let s = Complex64::new(0.5, t);
    let n_terms = (t / PI).ceil().max(12.0) as u64;
    let nf = n_terms as f64;
    let mut re = NeumaierSum::new();
    let mut im = NeumaierSum::new();
    for k in 1..n_terms {
        let kf = k as f64;
        let (sn, cs) = reduce_phase(t, kf.ln()).sin_cos();
        let mag = 1.0 / kf.sqrt();
        re.add(mag * cs);
        im.add(-mag * sn);
    }
    // N^{-s}
    let (sn, cs) = reduce_phase(t, nf.ln()).sin_cos();
    let n_pow = Complex64::new(cs, -sn) / nf.sqrt();
    let mut tail = n_pow * 0.5 + n_pow * nf / (s - 1.0);
    // Σ B_{2k}/(2k)! · s(s+1)…(s+2k-2) · N^{-s-2k+1}
    let mut rising = s;
    let mut power = n_pow / nf;
    for (k, b) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        let term = rising * power * *b;
        tail += term;
        if term.norm() < 1e-17 {
            break;
        }
        let j = 2.0 * k as f64 + 1.0;
        rising *= (s + j) * (s + j + 1.0);
        power /= nf * nf;
    }
    re.add(tail.re);
    im.add(tail.im);
    let zeta = Complex64::new(re.value(), im.value());
    let (th_hi, th_lo) = theta_parts(t);
    let th = reduce_double(th_hi, th_lo);
    let rot = Complex64::new(th.cos(), th.sin());
    rot * zeta
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values from an independent 50-digit evaluation.
    const Z_REFERENCE: [(f64, f64); 9] = [
        (10.0, -1.5491945461810224),
        (17.5, 2.301845755335057),
        (50.0, -0.340735005955025),
        (100.3, 2.56377982554558),
        (250.25, -1.210118497192138),
        (999.0, -0.7118471381128988),
        (1000.7, 2.441974632628988),
        (5000.3, 0.20818293702972784),
        (99999.1, -1.4578978709649553),
    ];

    #[test]
    fn theta_reference_values() {
        let cases = [
            (10.0, -3.0670743962898954),
            (50.0, 26.46136607016141),
            (100.0, 87.97216523178722),
            (1000.7, 2036.3210078692857),
            (99999.1, 433747.6734594165),
        ];
        for (t, want) in cases {
            let got = riemann_siegel_theta(t).unwrap();
            assert!(
                (got - want).abs() < 1e-10 * want.abs().max(1.0),
                "θ({t}) = {got}, want {want}"
            );
        }
    }

    #[test]
    fn theta_leading_terms_cancel_at_two_pi_e() {
        let t = 2.0 * PI * std::f64::consts::E;
        let got = riemann_siegel_theta(t).unwrap();
        let leading = -PI / 8.0 + 1.0 / (48.0 * t);
        assert!((got - leading).abs() < 1e-6);
        assert!((got - -0.3914790493538979).abs() < 1e-10);
    }

    #[test]
    fn theta_is_increasing() {
        assert!(riemann_siegel_theta(200.0).unwrap() > riemann_siegel_theta(100.0).unwrap());
    }

    #[test]
    fn z_reference_values() {
        for (t, want) in Z_REFERENCE {
            let got = hardy_z(t).unwrap();
            assert!((got - want).abs() < 1e-9, "Z({t}) = {got}, want {want}");
        }
    }

    #[test]
    fn euler_maclaurin_residual_is_real() {
        for t in [10.0, 14.0, 37.3, 123.4, 999.9] {
            let z = euler_maclaurin_z(t);
            assert!(z.im.abs() < 1e-11, "Im at {t}: {}", z.im);
        }
    }

    #[test]
    fn riemann_siegel_agrees_with_euler_maclaurin_near_switch() {
        for t in [600.5, 800.25, 999.75] {
            let rs = riemann_siegel_z(t);
            let em = euler_maclaurin_z(t).re;
            assert!((rs - em).abs() < 1e-9, "{t}: {rs} vs {em}");
        }
    }

    #[test]
    fn z_brackets_first_zero() {
        let a = hardy_z(14.0).unwrap();
        let b = hardy_z(14.2).unwrap();
        assert!(a.signum() != b.signum());
        assert!(hardy_z(14.134725141734693).unwrap().abs() < 1e-10);
    }

    #[test]
    fn rejects_low_heights() {
        assert!(hardy_z(9.99).is_err());
        assert!(riemann_siegel_theta(5.0).is_err());
        assert!(hardy_z(f64::NAN).is_err());
    }
}
