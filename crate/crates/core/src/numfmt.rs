//! Stable float formatting for reports and golden files.

/// Rounds to 12 significant digits.
pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Formats with 12 significant digits, trimming trailing zeros.
pub fn fmt12(x: f64) -> String {
    let r = sig12(x);
    if r == 0.0 {
        return "0".into();
    }
    format!("{r}")
}
