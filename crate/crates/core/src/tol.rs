//! Numerical tolerances shared by the checkers.

/// Relative tolerance for equality in bound certificates: `|slack| ≤ tol · max(1, |rhs|)`.
pub const EQUALITY: f64 = 1e-7;

/// Band around a threshold inside which a real part counts as on it.
pub const THRESHOLD: f64 = 1e-9;

/// Energy at or below this counts as zero.
pub const ZERO_ENERGY: f64 = 1e-7;

/// Per-vertex tolerance for the trace identities and the energy identity.
pub const TRACE_PER_VERTEX: f64 = 1e-8;

/// Multiset distance allowed between two computed spectra.
pub const SPECTRUM_MATCH: f64 = 1e-8;

/// Absolute tolerance used when comparing a computed spectral quantity with an
/// exact value derived from the graph.
pub const EXACT_MATCH: f64 = 1e-9;

/// `x > t` with values inside the band counted as equal to `t`.
pub fn strictly_above(x: f64, t: f64) -> bool {
    x > t + THRESHOLD
}

/// `x ≥ t` with values inside the band counted as equal to `t`.
pub fn at_least(x: f64, t: f64) -> bool {
    x >= t - THRESHOLD
}

/// `x ≤ t` with values inside the band counted as equal to `t`.
pub fn at_most(x: f64, t: f64) -> bool {
    x <= t + THRESHOLD
}

pub fn relative_equal(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_bands() {
        assert!(!strictly_above(0.5 + 1e-10, 0.5));
        assert!(strictly_above(0.5 + 1e-8, 0.5));
        assert!(at_least(0.5 - 1e-10, 0.5));
        assert!(!at_least(0.5 - 1e-8, 0.5));
        assert!(at_most(0.5 + 1e-10, 0.5));
        assert!(relative_equal(1e6 + 0.05, 1e6, EQUALITY));
        assert!(!relative_equal(1.0 + 1e-6, 1.0, EQUALITY));
    }
}
