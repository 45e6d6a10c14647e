//! Ordinates of the nontrivial zeros of ζ on the critical line: location,
//! ingestion from published tables, a binary cache, and counting checks
//! against the Riemann–von Mangoldt formula.

mod finder;
mod hardy;
mod io;
mod tables;

use std::f64::consts::PI;

pub use finder::{find_zeros, scan_step, MAX_COMPUTED_HEIGHT, MIN_COMPUTED_HEIGHT};
pub use hardy::{hardy_z, riemann_siegel_theta, riemann_siegel_z_checked, MIN_HEIGHT, RS_SWITCH_HEIGHT};
pub use io::{ingest_zeros, read_cache, write_cache, write_text, CACHE_MAGIC, DEFAULT_INGEST_PRECISION};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{Cell, ScanReport};

/// Where a zero set came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroSource {
    Computed,
    Ingested,
}

/// Constant in the completeness check |N(T) - (n_formula(T) + 7/8)| ≤ C·log T.
pub const COMPLETENESS_CONSTANT: f64 = 2.0;

/// An ordered list of zero ordinates γ, complete up to `t_max`.
///
/// Immutable once built; share it across threads freely.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSet {
    gammas: Vec<f64>,
    t_max: f64,
    source: ZeroSource,
    precision: f64,
}

impl ZeroSet {
    /// Builds a zero set after checking that the ordinates are finite,
    /// positive, strictly increasing and not above `t_max`.
    pub fn new(gammas: Vec<f64>, t_max: f64, source: ZeroSource, precision: f64) -> Result<Self> {
        if !(precision > 0.0) || !precision.is_finite() {
            return Err(Error::domain(format!("precision must be positive, got {precision}")));
        }
        if !(t_max >= 0.0) || !t_max.is_finite() {
            return Err(Error::domain(format!(
                "t_max must be finite and nonnegative, got {t_max}"
            )));
        }
        let mut previous = 0.0;
        for (i, &g) in gammas.iter().enumerate() {
            if !g.is_finite() || g <= 0.0 {
                return Err(Error::domain(format!("ordinate #{i} = {g} is not a positive real")));
            }
            if i > 0 && g <= previous {
                return Err(Error::Ordering {
                    line: i + 1,
                    value: g,
                    previous,
                });
            }
            previous = g;
        }
        if let Some(&last) = gammas.last() {
            if last > t_max {
                return Err(Error::domain(format!("last ordinate {last} exceeds t_max {t_max}")));
            }
        }
        Ok(Self {
            gammas,
            t_max,
            source,
            precision,
        })
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn source(&self) -> ZeroSource {
        self.source
    }

    pub fn precision(&self) -> f64 {
        self.precision
    }

    /// Number of ordinates γ ≤ `height`, without the completeness check.
    pub fn count_le(&self, height: f64) -> usize {
        self.gammas.partition_point(|&g| g <= height)
    }

    /// Ordinates γ ≤ `height`, failing if the set is not complete that far.
    pub fn up_to(&self, height: f64) -> Result<&[f64]> {
        self.check_height(height)?;
        Ok(&self.gammas[..self.count_le(height)])
    }

    /// Ordinates with `lo < γ ≤ hi`.
    pub fn between(&self, lo: f64, hi: f64) -> Result<&[f64]> {
        self.check_height(hi)?;
        let a = self.count_le(lo);
        let b = self.count_le(hi);
        Ok(&self.gammas[a..b.max(a)])
    }

    pub(crate) fn check_height(&self, height: f64) -> Result<()> {
        if height > self.t_max {
            return Err(Error::HeightExceeded {
                requested: height,
                t_max: self.t_max,
            });
        }
        Ok(())
    }

    /// Short provenance string for report metadata.
    pub fn provenance(&self) -> serde_json::Value {
        serde_json::json!({
            "source": self.source,
            "count": self.len(),
            "t_max": self.t_max,
            "precision": self.precision,
        })
    }
}

/// N(T): the number of ordinates 0 < γ ≤ T.
pub fn n_of_t(zs: &ZeroSet, height: f64) -> Result<usize> {
    if !(height > 0.0) {
        return Err(Error::domain(format!("height must be positive, got {height}")));
    }
    zs.check_height(height)?;
    Ok(zs.count_le(height))
}

/// Smooth main term (T/2π)·log(T/2π) − T/2π of the Riemann–von Mangoldt formula.
pub fn n_formula(height: f64) -> Result<f64> {
    if !(height >= 3.0) {
        return Err(Error::domain(format!("n_formula needs T >= 3, got {height}")));
    }
    let u = height / (2.0 * PI);
    Ok(u * u.ln() - u)
}

/// Largest |N(T) − (n_formula(T) + 7/8)| / log T over T = t_max and the
/// integers 14 ≤ T ≤ t_max; `None` when t_max < 14.
pub fn completeness_excess(zs: &ZeroSet) -> Option<(f64, f64)> {
    let mut worst: Option<(f64, f64)> = None;
    let mut heights: Vec<f64> = (14..=(zs.t_max.floor() as u64)).map(|t| t as f64).collect();
    if zs.t_max >= 14.0 {
        heights.push(zs.t_max);
    }
    for t in heights {
        let dev = (zs.count_le(t) as f64 - (n_formula(t).ok()? + 0.875)).abs() / t.ln();
        if worst.is_none_or(|(_, w)| dev > w) {
            worst = Some((t, dev));
        }
    }
    worst
}

/// Rows (T, N(T+1) − N(T), log T, ratio) for integers 14 ≤ T with T + 1 ≤ t_max;
/// a set complete only to t_max < 21 produces the single row T = ⌊t_max⌋ − 1.
pub fn density_report(zs: &ZeroSet) -> Result<ScanReport> {
    if zs.t_max < 20.0 {
        return Err(Error::domain(format!(
            "density report needs t_max >= 20, got {}",
            zs.t_max
        )));
    }
    let first = 14u64;
    let last = (zs.t_max.floor() as u64).saturating_sub(1).max(first);
    let start = if zs.t_max < 21.0 { last } else { first };
    let mut report = ScanReport::new(["T", "count", "log_T", "ratio", "t_max"]);
    let mut max_ratio = 0.0f64;
    let mut argmax = start as f64;
    for t in start..=last {
        let tf = t as f64;
        let count = zs.count_le(tf + 1.0) - zs.count_le(tf);
        let ratio = count as f64 / tf.ln();
        if ratio > max_ratio {
            max_ratio = ratio;
            argmax = tf;
        }
        report.push(vec![
            Cell::Float(tf),
            Cell::Int(count as i64),
            Cell::Float(tf.ln()),
            Cell::Float(ratio),
            Cell::Float(zs.t_max),
        ]);
    }
    report.set_meta("max_ratio", max_ratio);
    report.set_meta("argmax_T", argmax);
    report.set_meta("zeros", zs.provenance());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_set() -> ZeroSet {
        ZeroSet::new(
            vec![14.134725142, 21.022039639, 25.010857580],
            30.0,
            ZeroSource::Ingested,
            1e-9,
        )
        .unwrap()
    }

    #[test]
    fn n_formula_at_100() {
        assert!((n_formula(100.0).unwrap() - 28.12734358732535).abs() < 1e-12);
        assert!(n_formula(2.0).is_err());
    }

    #[test]
    fn counting_below_first_zero() {
        let zs = small_set();
        assert_eq!(n_of_t(&zs, 13.0).unwrap(), 0);
        assert_eq!(n_of_t(&zs, 21.022039639).unwrap(), 2);
        assert!(matches!(n_of_t(&zs, 31.0), Err(Error::HeightExceeded { .. })));
    }

    #[test]
    fn constructor_rejects_bad_sets() {
        assert!(ZeroSet::new(vec![2.0, 1.0], 3.0, ZeroSource::Computed, 1e-9).is_err());
        assert!(ZeroSet::new(vec![1.0, 1.0], 3.0, ZeroSource::Computed, 1e-9).is_err());
        assert!(ZeroSet::new(vec![1.0], 0.5, ZeroSource::Computed, 1e-9).is_err());
        assert!(ZeroSet::new(vec![1.0], 3.0, ZeroSource::Computed, 0.0).is_err());
    }

    #[test]
    fn density_report_single_row_at_twenty() {
        let zs = ZeroSet::new(vec![14.134725142], 20.0, ZeroSource::Computed, 1e-9).unwrap();
        let report = density_report(&zs).unwrap();
        assert_eq!(report.rows().len(), 1);
    }

    #[test]
    fn density_counts_are_nonnegative() {
        let zs = small_set();
        let report = density_report(&zs).unwrap();
        for row in report.rows() {
            match row[1] {
                Cell::Int(c) => assert!(c >= 0),
                _ => panic!("count column must be an integer"),
            }
        }
        assert!(density_report(&ZeroSet::new(vec![], 10.0, ZeroSource::Ingested, 1e-9).unwrap()).is_err());
    }
}
