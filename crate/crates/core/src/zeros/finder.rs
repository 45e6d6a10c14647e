use std::f64::consts::PI;

use rayon::prelude::*;

use super::hardy::{hardy_z, MIN_HEIGHT, RS_SWITCH_HEIGHT};
use super::{n_formula, ZeroSet, ZeroSource, COMPLETENESS_CONSTANT};
use crate::error::{Error, Result};

pub const MIN_COMPUTED_HEIGHT: f64 = 20.0;
pub const MAX_COMPUTED_HEIGHT: f64 = 1.0e5;

/// Subdivisions used to look inside a same-sign local minimum of |Z|.
const NEAR_MISS_SUBDIVISIONS: usize = 64;
/// Density multiplier for the recovery rescan.
const RESCAN_DENSITY: f64 = 4.0;

/// Scan step at height t: a quarter of the Gram spacing, capped at 0.1.
pub fn scan_step(t: f64) -> f64 {
    let gram = 2.0 * PI / (t / (2.0 * PI)).ln();
    if gram.is_finite() && gram > 0.0 {
        (gram / 4.0).min(0.1)
    } else {
        0.1
    }
}

/// Locates every zero ordinate up to `t_max` by sign changes of Z on a grid
/// finer than the Gram spacing, refining each bracket by bisection.
pub fn find_zeros(t_max: f64, refine_tol: f64) -> Result<ZeroSet> {
    if !(MIN_COMPUTED_HEIGHT..=MAX_COMPUTED_HEIGHT).contains(&t_max) {
        return Err(Error::domain(format!(
            "t_max = {t_max} outside [{MIN_COMPUTED_HEIGHT}, {MAX_COMPUTED_HEIGHT}]; larger heights must be ingested"
        )));
    }
    if !(1e-12..=1e-6).contains(&refine_tol) {
        return Err(Error::domain(format!(
            "refine_tol = {refine_tol:e} outside [1e-12, 1e-6]"
        )));
    }

    let mut gammas = locate(MIN_HEIGHT, t_max, 1.0, refine_tol)?;
    reconcile(&mut gammas, t_max, refine_tol)?;

    let precision = if t_max > RS_SWITCH_HEIGHT {
        refine_tol.max(1e-10)
    } else {
        refine_tol
    };
    ZeroSet::new(gammas, t_max, ZeroSource::Computed, precision)
}

/// Deviation check at every integer height and at t_max; on failure the
/// offending unit interval is rescanned at 4× density, then the whole range
/// below it, before giving up.
fn reconcile(gammas: &mut Vec<f64>, t_max: f64, tol: f64) -> Result<()> {
    let mut heights: Vec<f64> = (14..=(t_max.floor() as u64)).map(|t| t as f64).collect();
    heights.push(t_max);
    let mut attempt = 0;
    let mut i = 0;
    while i < heights.len() {
        let t = heights[i];
        let found = gammas.partition_point(|&g| g <= t);
        let expected = n_formula(t)? + 0.875;
        if (found as f64 - expected).abs() <= COMPLETENESS_CONSTANT * t.ln() {
            i += 1;
            attempt = 0;
            continue;
        }
        let lo = match attempt {
            0 => (t - 1.0).max(MIN_HEIGHT),
            1 => MIN_HEIGHT,
            _ => {
                return Err(Error::Completeness {
                    height: t,
                    found,
                    expected,
                })
            }
        };
        attempt += 1;
        let fresh = locate(lo, t, RESCAN_DENSITY, tol)?;
        splice(gammas, lo, t, fresh);
    }
    Ok(())
}

/// Replaces the ordinates in `(lo, hi]` with `fresh`.
fn splice(gammas: &mut Vec<f64>, lo: f64, hi: f64, fresh: Vec<f64>) {
    let a = gammas.partition_point(|&g| g <= lo);
    let b = gammas.partition_point(|&g| g <= hi);
    let fresh: Vec<f64> = fresh.into_iter().filter(|&g| g > lo && g <= hi).collect();
    gammas.splice(a..b, fresh);
}

fn z(t: f64) -> f64 {
    // The grid never leaves [MIN_HEIGHT, MAX_COMPUTED_HEIGHT].
    hardy_z(t).expect("scan grid stays above the minimum height")
}

fn grid(lo: f64, hi: f64, density: f64) -> Vec<f64> {
    let mut pts = Vec::with_capacity(((hi - lo) * 10.0 * density) as usize + 2);
    let mut t = lo;
    while t < hi {
        pts.push(t);
        t += scan_step(t) / density;
    }
    pts.push(hi);
    pts
}

/// All zeros in `[lo, hi]`, sorted.
fn locate(lo: f64, hi: f64, density: f64, tol: f64) -> Result<Vec<f64>> {
    let pts = grid(lo, hi, density);
    let vals: Vec<f64> = pts.par_iter().map(|&t| z(t)).collect();

    let mut brackets = Vec::new();
    let mut exact = Vec::new();
    for i in 0..pts.len() - 1 {
        if vals[i] == 0.0 {
            exact.push(pts[i]);
        } else if vals[i] * vals[i + 1] < 0.0 {
            brackets.push((pts[i], pts[i + 1]));
        }
    }
    if vals[pts.len() - 1] == 0.0 {
        exact.push(pts[pts.len() - 1]);
    }

    // A same-sign dip of |Z| can hide two close zeros inside one cell.
    let dips: Vec<usize> = (1..pts.len().saturating_sub(1))
        .filter(|&i| {
            vals[i - 1] * vals[i] > 0.0
                && vals[i] * vals[i + 1] > 0.0
                && vals[i].abs() < vals[i - 1].abs()
                && vals[i].abs() < vals[i + 1].abs()
        })
        .collect();
    let hidden: Vec<Vec<(f64, f64)>> = dips
        .par_iter()
        .map(|&i| subdivide(pts[i - 1], pts[i + 1], NEAR_MISS_SUBDIVISIONS))
        .collect();
    for h in hidden {
        brackets.extend(h);
    }

    let mut roots: Vec<f64> = brackets.par_iter().map(|&(a, b)| bisect(a, b, tol)).collect();
    roots.extend(exact);
    roots.sort_by(|a, b| a.partial_cmp(b).expect("roots are finite"));
    roots.dedup_by(|a, b| (*a - *b).abs() <= tol);
    Ok(roots)
}

fn subdivide(a: f64, b: f64, pieces: usize) -> Vec<(f64, f64)> {
    let h = (b - a) / pieces as f64;
    let mut out = Vec::new();
    let mut prev_t = a;
    let mut prev_z = z(a);
    for k in 1..=pieces {
        let t = if k == pieces { b } else { a + h * k as f64 };
        let zt = z(t);
        if prev_z * zt < 0.0 {
            out.push((prev_t, t));
        }
        prev_t = t;
        prev_z = zt;
    }
    out
}

fn bisect(mut a: f64, mut b: f64, tol: f64) -> f64 {
    let mut za = z(a);
    while b - a > tol {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let zm = z(m);
        if zm == 0.0 {
            return m;
        }
        if za * zm < 0.0 {
            b = m;
        } else {
            a = m;
            za = zm;
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_never_exceeds_quarter_gram() {
        for t in [20.0, 100.0, 1e3, 1e4, 1e5] {
            let gram = 2.0 * PI / (t / (2.0 * PI)).ln();
            assert!(scan_step(t) <= gram / 4.0 + 1e-15);
            assert!(scan_step(t) <= 0.1);
        }
    }

    #[test]
    fn single_zero_below_twenty() {
        let zs = find_zeros(20.0, 1e-10).unwrap();
        assert_eq!(zs.len(), 1);
        assert!((zs.gammas()[0] - 14.134725141734693).abs() < 1e-9);
    }

    #[test]
    fn first_three_ordinates() {
        let zs = find_zeros(50.0, 1e-10).unwrap();
        let want = [14.134725141734693, 21.022039638771555, 25.01085758014569];
        for (g, w) in zs.gammas().iter().zip(want) {
            assert!((g - w).abs() < 1e-9, "{g} vs {w}");
        }
        assert_eq!(zs.len(), 10);
    }

    #[test]
    fn domain_errors() {
        assert!(find_zeros(5.0, 1e-10).is_err());
        assert!(find_zeros(2e5, 1e-10).is_err());
        assert!(find_zeros(100.0, 1e-3).is_err());
    }

    #[test]
    fn splice_replaces_interval() {
        let mut g = vec![1.0, 2.0, 3.0, 4.0];
        splice(&mut g, 1.5, 3.5, vec![2.5, 9.0]);
        assert_eq!(g, vec![1.0, 2.5, 4.0]);
    }

    #[test]
    fn near_miss_pair_is_resolved() {
        // Lehmer's close pair near t = 7005.06 / 7005.10.
        let pts = locate(7004.5, 7005.6, 1.0, 1e-10).unwrap();
        let close: Vec<f64> = pts.iter().copied().filter(|g| (7005.0..7005.2).contains(g)).collect();
        assert_eq!(close.len(), 2, "{pts:?}");
    }
}
