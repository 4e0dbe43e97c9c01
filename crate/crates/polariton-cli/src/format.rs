//! Deterministic output formatting: scientific notation with 12 significant
//! digits for CSV and tables, LF line endings, stable JSON key order.

/// `x` in scientific notation with 12 significant digits; NaN and
/// infinities spell out as `nan`, `inf`, `-inf`.
pub fn sci(x: f64) -> String {
    if x.is_nan() {
        "nan".to_owned()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".to_owned()
        } else {
            "-inf".to_owned()
        }
    } else {
        format!("{x:.11e}")
    }
}

/// One CSV line (comma-separated, LF-terminated).
pub fn csv_line(fields: &[String]) -> String {
    let mut line = fields.join(",");
    line.push('\n');
    line
}
