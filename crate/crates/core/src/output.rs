//! File output: per-time field CSVs and the run summary JSON.
//!
//! Floats are written with the shortest decimal that round-trips, and no
//! file carries wall-clock information, so identical configurations produce
//! byte-identical outputs.

use crate::error::Result;
use crate::phys::WaveField;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

/// `t_<index>.csv` with columns
/// `x,re_psi1,im_psi1,abs2_psi1,re_psi2,im_psi2,abs2_psi2`.
pub fn write_field_csv(path: &Path, field: &WaveField) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "x,re_psi1,im_psi1,abs2_psi1,re_psi2,im_psi2,abs2_psi2")?;
    for (i, x) in field.grid.points().into_iter().enumerate() {
        let a = field.psi1[i];
        let b = field.psi2[i];
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            x,
            a.re,
            a.im,
            a.norm_sqr(),
            b.re,
            b.im,
            b.norm_sqr()
        )?;
    }
    w.flush()?;
    Ok(())
}

/// `stationary.csv` with columns `k,R,T1,T2`.
pub fn write_scan_csv(path: &Path, rows: &[(f64, f64, f64, f64)]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "k,R,T1,T2")?;
    for (k, r, t1, t2) in rows {
        writeln!(w, "{k},{r},{t1},{t2}")?;
    }
    w.flush()?;
    Ok(())
}

/// `series.csv` with columns `n,re_term,im_term,abs_term`.
pub fn write_series_csv(path: &Path, terms: &[crate::C64]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "n,re_term,im_term,abs_term")?;
    for (n, t) in terms.iter().enumerate() {
        writeln!(w, "{n},{},{},{}", t.re, t.im, t.norm())?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| crate::Error::Config(format!("serialization failed: {e}")))?;
    w.write_all(text.as_bytes())?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}
