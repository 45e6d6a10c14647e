use std::io::{BufRead, Read, Write};

use super::{ZeroSet, ZeroSource};
use crate::error::{Error, Result};

pub const CACHE_MAGIC: &[u8; 4] = b"ZPC1";
pub const DEFAULT_INGEST_PRECISION: f64 = 1e-9;

/// Ordinates below this cannot be zeta zeros (γ₁ ≈ 14.13).
const MIN_ORDINATE: f64 = 13.0;

/// Parses a zero table: one decimal ordinate per line in ascending order.
/// Blank lines and lines starting with `#` are skipped.
pub fn ingest_zeros<R: BufRead>(reader: R, precision: Option<f64>) -> Result<ZeroSet> {
    let mut gammas: Vec<f64> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let lineno = idx + 1;
        let value: f64 = text.parse().map_err(|_| Error::Parse {
            line: lineno,
            text: text.to_string(),
        })?;
        if !value.is_finite() || value <= MIN_ORDINATE {
            return Err(Error::Parse {
                line: lineno,
                text: text.to_string(),
            });
        }
        if let Some(&previous) = gammas.last() {
            if value <= previous {
                return Err(Error::Ordering {
                    line: lineno,
                    value,
                    previous,
                });
            }
        }
        gammas.push(value);
    }
    let t_max = gammas.last().copied().unwrap_or(0.0);
    ZeroSet::new(
        gammas,
        t_max,
        ZeroSource::Ingested,
        precision.unwrap_or(DEFAULT_INGEST_PRECISION),
    )
}

/// Writes the text table format read by [`ingest_zeros`].
pub fn write_text<W: Write>(zs: &ZeroSet, mut w: W) -> Result<()> {
    writeln!(w, "# t_max = {:e}", zs.t_max())?;
    writeln!(w, "# precision = {:e}", zs.precision())?;
    for g in zs.gammas() {
        writeln!(w, "{g:.17e}")?;
    }
    Ok(())
}

/// Binary cache: `ZPC1`, u64 count, `count` f64 ordinates, f64 t_max, f64
/// precision; all little-endian.
pub fn write_cache<W: Write>(zs: &ZeroSet, mut w: W) -> Result<()> {
    w.write_all(CACHE_MAGIC)?;
    w.write_all(&(zs.len() as u64).to_le_bytes())?;
    for g in zs.gammas() {
        w.write_all(&g.to_le_bytes())?;
    }
    w.write_all(&zs.t_max().to_le_bytes())?;
    w.write_all(&zs.precision().to_le_bytes())?;
    Ok(())
}

/// Reads a binary cache written by [`write_cache`]. The format does not
/// record provenance, so `source` is supplied by the caller.
pub fn read_cache<R: Read>(mut r: R, source: ZeroSource) -> Result<ZeroSet> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)
        .map_err(|_| Error::Format("truncated header".into()))?;
    if &magic != CACHE_MAGIC {
        return Err(Error::Format(format!("bad magic {magic:?}")));
    }
    let count = read_u64(&mut r)?;
    // Guard against absurd counts before allocating.
    if count > (1u64 << 32) {
        return Err(Error::Format(format!("implausible ordinate count {count}")));
    }
    let mut gammas = Vec::with_capacity(count as usize);
    for _ in 0..count {
        gammas.push(read_f64(&mut r)?);
    }
    let t_max = read_f64(&mut r)?;
    let precision = read_f64(&mut r)?;
    let mut rest = [0u8; 1];
    if r.read(&mut rest)? != 0 {
        return Err(Error::Format("trailing bytes after precision".into()));
    }
    ZeroSet::new(gammas, t_max, source, precision)
}

fn read_u64<R: Read>(r: &mut R) -> Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)
        .map_err(|_| Error::Format("truncated file".into()))?;
    Ok(u64::from_le_bytes(b))
}

fn read_f64<R: Read>(r: &mut R) -> Result<f64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)
        .map_err(|_| Error::Format("truncated file".into()))?;
    Ok(f64::from_le_bytes(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ingest_two_lines() {
        let zs = ingest_zeros("14.134725142\n21.022039639\n".as_bytes(), None).unwrap();
        assert_eq!(zs.len(), 2);
        assert!((zs.t_max() - 21.022039639).abs() < 1e-12);
        assert_eq!(zs.precision(), DEFAULT_INGEST_PRECISION);
        assert_eq!(zs.source(), ZeroSource::Ingested);
    }

    #[test]
    fn ingest_empty() {
        let zs = ingest_zeros("".as_bytes(), None).unwrap();
        assert!(zs.is_empty());
        assert_eq!(zs.t_max(), 0.0);
    }

    #[test]
    fn ingest_skips_comments_and_blanks() {
        let text = "# zeros 1-2\n\n14.134725142\n   \n# mid\n21.022039639\n";
        assert_eq!(ingest_zeros(text.as_bytes(), Some(1e-6)).unwrap().len(), 2);
    }

    #[test]
    fn ingest_ordering_violation() {
        let err = ingest_zeros("21.0\n14.1\n".as_bytes(), None).unwrap_err();
        assert!(matches!(err, Error::Ordering { line: 2, .. }), "{err}");
    }

    #[test]
    fn ingest_parse_error_carries_line() {
        let err = ingest_zeros("14.13\n# c\nabc\n".as_bytes(), None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        assert!(ingest_zeros("-14.1\n".as_bytes(), None).is_err());
        assert!(ingest_zeros("12.5\n".as_bytes(), None).is_err());
    }

    #[test]
    fn cache_rejects_garbage() {
        assert!(matches!(
            read_cache(&b"ZPC0"[..], ZeroSource::Computed),
            Err(Error::Format(_))
        ));
        assert!(read_cache(&b"ZPC1\x01\x00"[..], ZeroSource::Computed).is_err());
    }

    #[test]
    fn cache_layout() {
        let zs = ZeroSet::new(vec![14.5], 20.0, ZeroSource::Computed, 1e-10).unwrap();
        let mut buf = Vec::new();
        write_cache(&zs, &mut buf).unwrap();
        assert_eq!(buf.len(), 4 + 8 + 8 + 8 + 8);
        assert_eq!(&buf[..4], b"ZPC1");
        assert_eq!(u64::from_le_bytes(buf[4..12].try_into().unwrap()), 1);
        assert_eq!(f64::from_le_bytes(buf[12..20].try_into().unwrap()), 14.5);
        assert_eq!(f64::from_le_bytes(buf[20..28].try_into().unwrap()), 20.0);
    }

    proptest! {
        #[test]
        fn cache_round_trip_is_bit_exact(
            gaps in proptest::collection::vec(1e-6f64..10.0, 0..200),
            extra in 0.0f64..5.0,
            precision in 1e-12f64..1e-3,
        ) {
            let mut g = 14.0;
            let gammas: Vec<f64> = gaps.iter().map(|d| { g += d; g }).collect();
            let t_max = gammas.last().copied().unwrap_or(14.0) + extra;
            let zs = ZeroSet::new(gammas, t_max, ZeroSource::Computed, precision).unwrap();
            let mut buf = Vec::new();
            write_cache(&zs, &mut buf).unwrap();
            let back = read_cache(buf.as_slice(), ZeroSource::Computed).unwrap();
            prop_assert_eq!(back.gammas().iter().map(|x| x.to_bits()).collect::<Vec<_>>(),
                            zs.gammas().iter().map(|x| x.to_bits()).collect::<Vec<_>>());
            prop_assert_eq!(back.t_max().to_bits(), zs.t_max().to_bits());
            prop_assert_eq!(back.precision().to_bits(), zs.precision().to_bits());
        }

        #[test]
        fn text_round_trip_preserves_values(gaps in proptest::collection::vec(1e-3f64..10.0, 1..50)) {
            let mut g = 14.0;
            let gammas: Vec<f64> = gaps.iter().map(|d| { g += d; g }).collect();
            let zs = ZeroSet::new(gammas.clone(), g, ZeroSource::Ingested, 1e-9).unwrap();
            let mut buf = Vec::new();
            write_text(&zs, &mut buf).unwrap();
            let back = ingest_zeros(buf.as_slice(), None).unwrap();
            prop_assert_eq!(back.gammas(), &gammas[..]);
        }
    }
}
