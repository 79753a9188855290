use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::Result;
use crate::series::DiagnosticsSeries;

/// 17 significant digits, so every double round-trips through the text.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Write a series as CSV: header `t,<columns>`, one row per sample.
pub fn emit_csv(series: &DiagnosticsSeries, path: impl AsRef<Path>) -> Result<()> {
    let mut header = vec!["t".to_string()];
    header.extend(series.columns().iter().cloned());
    let rows = series.times().iter().zip(series.rows()).map(|(&t, row)| {
        std::iter::once(format_float(t))
            .chain(row.iter().map(|&v| format_float(v)))
            .collect::<Vec<_>>()
    });
    emit_table(path, &header, rows)
}

/// Write any header plus pre-formatted rows as CSV.
pub fn emit_table<I>(path: impl AsRef<Path>, header: &[String], rows: I) -> Result<()>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

/// Pretty JSON with object keys in sorted order, newline-terminated.
pub fn emit_json(value: &impl Serialize, path: impl AsRef<Path>) -> Result<()> {
    // Value's map type is ordered by key, which fixes the layout
    let value = serde_json::to_value(value)?;
    let mut out = serde_json::to_string_pretty(&value)?;
    let _ = writeln!(out);
    fs::write(path, out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_round_trips() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0] {
            assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(format_float(0.5), "5.0000000000000000e-1");
    }

    #[test]
    fn empty_series_gives_header_only() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("s.csv");
        emit_csv(&DiagnosticsSeries::new(vec!["L2".into(), "H1.5".into()]), &p).unwrap();
        assert_eq!(fs::read_to_string(&p).unwrap(), "t,L2,H1.5\n");
    }

    #[test]
    fn json_keys_are_sorted() {
        #[derive(Serialize)]
        struct S {
            zeta: u8,
            alpha: u8,
        }
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("s.json");
        emit_json(&S { zeta: 1, alpha: 2 }, &p).unwrap();
        assert_eq!(fs::read_to_string(&p).unwrap(), "{\n  \"alpha\": 2,\n  \"zeta\": 1\n}\n");
    }
}
