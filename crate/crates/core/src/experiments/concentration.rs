use serde::{Deserialize, Serialize};

use super::bounds::concentration_delta;
use super::parallel::run_indexed;
use crate::error::{Error, Result};
use crate::group_words::{count_w3, sample_binomial};
use crate::seed::mix;

/// Monte Carlo check of `|R|` against the Chebyshev window
/// `(1 ± δ)·p|W_3|`, `δ = (p|W_3|)^{-1/3}`, which Chebyshev's inequality
/// leaves with probability at most `δ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationReport {
    pub n: u32,
    pub p: f64,
    pub trials: u64,
    /// `E|R| = p|W_3|`.
    pub expected: f64,
    pub delta: f64,
    pub window: (f64, f64),
    /// The same window around `8pn³`, for comparison.
    pub cubic_window: (f64, f64),
    pub deviations: u64,
    pub frequency: f64,
    /// `δ + 3·sqrt(δ(1 − δ)/trials)`.
    pub tolerance: f64,
    pub passed: bool,
}

pub fn concentration_check(
    n: u32,
    p: f64,
    trials: u64,
    seed: u64,
    jobs: usize,
) -> Result<ConcentrationReport> {
    let delta = concentration_delta(n, p)?;
    if !(delta < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "delta={delta} must be below 1 (need p|W_3| > 1)"
        )));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let expected = p * count_w3(n)? as f64;
    let cubic = 8.0 * p * f64::from(n).powi(3);
    let sizes = run_indexed(jobs, trials as usize, |t| {
        sample_binomial(n, p, mix(seed, t as u64)).map(|r| r.len())
    });
    let mut deviations = 0;
    for size in sizes {
        if (size? as f64 - expected).abs() >= delta * expected {
            deviations += 1;
        }
    }
    let frequency = deviations as f64 / trials as f64;
    let tolerance = delta + 3.0 * (delta * (1.0 - delta) / trials as f64).sqrt();
    Ok(ConcentrationReport {
        n,
        p,
        trials,
        expected,
        delta,
        window: ((1.0 - delta) * expected, (1.0 + delta) * expected),
        cubic_window: ((1.0 - delta) * cubic, (1.0 + delta) * cubic),
        deviations,
        frequency,
        tolerance,
        passed: frequency <= tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_fields() {
        let r = concentration_check(30, 0.5 / 900.0, 200, 3, 0).unwrap();
        assert_eq!(r.expected, 0.5 / 900.0 * count_w3(30).unwrap() as f64);
        assert!((r.delta - r.expected.powf(-1.0 / 3.0)).abs() < 1e-12);
        assert!(r.window.0 < r.expected && r.expected < r.window.1);
        assert!(r.passed);
    }

    #[test]
    fn rejects_tiny_expectation() {
        assert!(concentration_check(3, 0.005, 10, 0, 1).is_err());
        assert!(concentration_check(30, 0.01, 0, 0, 1).is_err());
    }
}
