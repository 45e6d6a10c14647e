use std::sync::OnceLock;

use zetacorr::conjecture::y_of_x;
use zetacorr::explicit::{
    envelope, truncated_psi, truncated_psi_report, zero_sum_r, zero_sum_report, OMITTED_TERMS_BOUND,
};
use zetacorr::primes::{psi, sieve_lambda, LambdaTable};
use zetacorr::zeros::{find_zeros, ZeroSet};

fn zeros() -> &'static ZeroSet {
    static Z: OnceLock<ZeroSet> = OnceLock::new();
    Z.get_or_init(|| find_zeros(y_of_x(1e4).ceil(), 1e-10).unwrap())
}

fn table() -> &'static LambdaTable {
    static T: OnceLock<LambdaTable> = OnceLock::new();
    T.get_or_init(|| sieve_lambda(1_000_000).unwrap())
}

#[test]
fn zero_sum_tracks_sieve_at_ten_thousand() {
    let x = 1e4 + 0.5;
    let (w, y) = (30.0, y_of_x(1e4));
    let z = zero_sum_r(x, w, y.min(zeros().t_max()), zeros()).unwrap();
    let r = (psi(x, table()).unwrap() - x) / x.sqrt();
    let c = (z - r).abs() / w.ln().powi(2);
    eprintln!("x = {x}: zero sum {z:.6}, sieve {r:.6}, C = {c:.4}");
    assert!(c < 0.1);
}

#[test]
fn zero_sum_residual_scan() {
    let points: Vec<(f64, f64, f64)> = (0..20)
        .map(|i| {
            let x = 10f64.powf(2.0 + 0.2 * i as f64).floor() + 0.5;
            (x, 30.0, y_of_x(x).min(zeros().t_max()))
        })
        .collect();
    let rep = zero_sum_report(&points, zeros(), table()).unwrap();
    let c = rep.meta("max_residual_over_log2_w").unwrap().as_f64().unwrap();
    eprintln!("max |residual| / log²W = {c:.4}");
    assert_eq!(rep.rows().len(), 20);
    assert!(c < 0.1);
}

#[test]
fn truncated_psi_envelope_scan() {
    // 50 (x, Y) points; the omitted lower-order terms add at most 2 on top of
    // the truncation envelope.
    let mut points = Vec::new();
    for i in 0..10 {
        let x = 10f64.powf(1.2 + 0.35 * i as f64).floor() + 0.5;
        for y in [100.0, 300.0, 1000.0, 3000.0, 10000.0] {
            points.push((x, y));
        }
    }
    let rep = truncated_psi_report(&points, zeros(), table()).unwrap();
    let mut worst: f64 = 0.0;
    for &(x, y) in &points {
        let err = (truncated_psi(x, y, zeros()).unwrap() - psi(x, table()).unwrap()).abs();
        worst = worst.max((err - OMITTED_TERMS_BOUND).max(0.0) / envelope(x, y));
    }
    eprintln!(
        "raw constant {:.3}, constant beyond the omitted terms {worst:.3}",
        rep.meta("max_envelope_constant").unwrap()
    );
    assert!(worst <= 5.0);
}
