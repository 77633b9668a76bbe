//! Minimal CSV writing. Values print with Rust's shortest round-trip float
//! formatting, so files re-read to the exact same doubles.

use std::io::Write;
use std::path::Path;

/// Render named columns (all the same length) as CSV text.
pub fn csv_string(headers: &[&str], columns: &[&[f64]]) -> String {
    assert_eq!(headers.len(), columns.len(), "one header per column");
    let rows = columns.first().map_or(0, |c| c.len());
    for c in columns {
        assert_eq!(c.len(), rows, "ragged CSV columns");
    }
    let mut out = String::new();
    out.push_str(&headers.join(","));
    out.push('\n');
    for i in 0..rows {
        for (j, col) in columns.iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            out.push_str(&format_float(col[i]));
        }
        out.push('\n');
    }
    out
}

pub fn write_csv(path: &Path, headers: &[&str], columns: &[&[f64]]) -> std::io::Result<()> {
    let mut f = std::fs::File::create(path)?;
    f.write_all(csv_string(headers, columns).as_bytes())
}

fn format_float(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        // Keep integers readable but still unambiguous as floats.
        format!("{v:.1}")
    } else {
        format!("{v}")
    }
}
