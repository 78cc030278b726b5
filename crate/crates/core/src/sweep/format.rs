//! Locale-independent number formatting shared by the CSV and JSON writers.

/// Significant digits kept in serialized output.
pub const SIGNIFICANT_DIGITS: usize = 15;

/// Rounds `x` to 15 significant digits and folds `-0` into `0`.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let y: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses");
    if y == 0.0 {
        0.0
    } else {
        y
    }
}

/// Shortest decimal that round-trips the 15-digit rounding of `x`.
/// Non-finite values print as `nan`, `inf` and `-inf`.
pub fn number(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let y = round_sig(x);
    let a = y.abs();
    if y == 0.0 || (1e-5..1e15).contains(&a) {
        format!("{y}")
    } else {
        format!("{y:e}")
    }
}
