//! Finite-n bound calculators.
//!
//! Every value here is an exact evaluation at the given `n`, with no
//! asymptotic slack; probabilities are clamped to `[0, 1]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group_words::count_w3;

/// `(1/8)·log_{4/3} 2`.
pub fn c_zero() -> f64 {
    std::f64::consts::LN_2 / (4.0f64 / 3.0).ln() / 8.0
}

/// Number of words `w ∈ W_3` whose `φ_w` is falsified by an assignment with
/// `t` of the `n` generator variables true.
///
/// Under any assignment exactly one of `s_i`, `s_i⁻¹` has a true literal.
/// `φ_w` fails iff the three letter literals agree, i.e. all three letters
/// come from the `n` true letters or all from the `n` false ones. Such a
/// triple never contains a letter next to its inverse, so it is always
/// cyclically reduced: `2n³` words, whatever `t` is.
pub fn failing_word_count(n: u32, t: u32) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroGenerators(n));
    }
    if t > n {
        return Err(Error::InvalidParameter(format!("t={t} outside [0, {n}]")));
    }
    let n = u64::from(n);
    Ok(2 * n * n * n)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Best single-relator satisfaction probability over assignments,
/// `q = 1 − 2n³/|W_3|`, as a reduced fraction.
pub fn q_exact(n: u32) -> Result<(u64, u64)> {
    let total = count_w3(n)?;
    let worst_failing = (0..=n)
        .map(|t| failing_word_count(n, t))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min()
        .unwrap_or(0);
    let num = total - worst_failing;
    let g = gcd(num, total).max(1);
    Ok((num / g, total / g))
}

pub fn q_value(n: u32) -> Result<f64> {
    let (num, den) = q_exact(n)?;
    Ok(num as f64 / den as f64)
}

fn clamp_exp(log_value: f64) -> f64 {
    if log_value >= 0.0 {
        1.0
    } else {
        log_value.exp()
    }
}

/// `min(1, 2ⁿ qᵐ)`: an upper bound on the probability that `m` independent
/// uniform relators give a satisfiable formula.
pub fn union_bound(n: u32, m: u64) -> Result<f64> {
    let q = q_value(n)?;
    if q == 0.0 {
        return Ok(if m == 0 { 1.0 } else { 0.0 });
    }
    Ok(clamp_exp(
        f64::from(n) * std::f64::consts::LN_2 + m as f64 * q.ln(),
    ))
}

/// Binomial-model counterpart of [`union_bound`]: a fixed assignment survives
/// iff none of its `2n³` failing words is drawn, so
/// `P(Φ_R satisfiable) ≤ min(1, 2ⁿ (1 − p)^{2n³})`.
pub fn union_bound_binomial(n: u32, p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    let failing = failing_word_count(n, 0)? as f64;
    if p == 1.0 {
        return Ok(0.0);
    }
    Ok(clamp_exp(
        f64::from(n) * std::f64::consts::LN_2 + failing * (-p).ln_1p(),
    ))
}

/// `max(0, 1 − m²/|W_3|)`, a lower bound on the probability that `m`
/// uniform draws are pairwise distinct.
pub fn distinctness_lower(n: u32, m: u64) -> Result<f64> {
    let total = count_w3(n)? as f64;
    let m = m as f64;
    Ok((1.0 - m * m / total).max(0.0))
}

/// Correction factor `1/P(D_m) − 1` implied by [`distinctness_lower`];
/// `None` when the lower bound is zero.
pub fn distinctness_correction(n: u32, m: u64) -> Result<Option<f64>> {
    let lower = distinctness_lower(n, m)?;
    Ok((lower > 0.0).then(|| 1.0 / lower - 1.0))
}

/// `(p|W_3|)^{-1/3}`, the relative half-width of the concentration window.
pub fn concentration_delta(n: u32, p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    Ok((p * count_w3(n)? as f64).powf(-1.0 / 3.0))
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "alpha={alpha} outside (0, 1)"
        )))
    }
}

/// Upper bounds for the quotient statements.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuotientBounds {
    /// `min(1, exp(exp(ln n − p α² n²)) − 1)`: some non-trivial quotient
    /// kills at least `αn` generators.
    pub kill_bound: f64,
    /// `min(1, exp(n ln 4 − p (1 − α)³ n³))`: some left-orderable quotient
    /// keeps at least `(1 − α)n` generators alive.
    pub survivor_bound: f64,
}

pub fn quotient_bound(n: u32, p: f64, alpha: f64) -> Result<QuotientBounds> {
    check_alpha(alpha)?;
    if n == 0 {
        return Err(Error::ZeroGenerators(n));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    let nf = f64::from(n);
    let inner = nf.ln() - p * alpha * alpha * nf * nf;
    let kill_bound = inner.exp().exp_m1().min(1.0);
    let survivor_bound = clamp_exp(nf * 4f64.ln() - p * (1.0 - alpha).powi(3) * nf * nf * nf);
    Ok(QuotientBounds {
        kill_bound,
        survivor_bound,
    })
}

/// Smallest `α` with `α²(1 + ε) > 1`, nudged up by `10⁻⁶`.
pub fn default_alpha(epsilon: f64) -> Result<f64> {
    if epsilon <= 0.0 || !epsilon.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "epsilon={epsilon} must be positive"
        )));
    }
    let alpha = (1.0 + epsilon).powf(-0.5) + 1e-6;
    check_alpha(alpha)?;
    Ok(alpha)
}

/// Everything the `bounds` command reports for one `(n, m)` or `(n, p)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: u32,
    pub m: Option<u64>,
    pub p: Option<f64>,
    pub words: u64,
    pub c_zero: f64,
    pub q_numerator: u64,
    pub q_denominator: u64,
    pub q: f64,
    pub union_bound: f64,
    pub delta: f64,
    pub distinctness_lower: f64,
    pub distinctness_correction: Option<f64>,
    pub alpha: Option<f64>,
    pub quotient: Option<QuotientBounds>,
}

/// The relator count is either fixed (`m`, uniform model) or random
/// (`p`, binomial model, evaluated at `m = ⌈p|W_3|⌉` where a count is
/// needed).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RelatorLaw {
    Count(u64),
    Probability(f64),
}

pub fn bound_report(n: u32, law: RelatorLaw, alpha: Option<f64>) -> Result<BoundReport> {
    let words = count_w3(n)?;
    let (q_numerator, q_denominator) = q_exact(n)?;
    let (m, p, union, delta, m_eff) = match law {
        RelatorLaw::Count(m) => {
            let delta = if m == 0 {
                f64::INFINITY
            } else {
                (m as f64).powf(-1.0 / 3.0)
            };
            (Some(m), None, union_bound(n, m)?, delta, m)
        }
        RelatorLaw::Probability(p) => {
            let union = union_bound_binomial(n, p)?;
            let m_eff = (p * words as f64).ceil() as u64;
            (None, Some(p), union, concentration_delta(n, p)?, m_eff)
        }
    };
    let quotient = match (alpha, p) {
        (Some(a), Some(p)) => Some(quotient_bound(n, p, a)?),
        (Some(a), None) => {
            check_alpha(a)?;
            None
        }
        _ => None,
    };
    Ok(BoundReport {
        n,
        m,
        p,
        words,
        c_zero: c_zero(),
        q_numerator,
        q_denominator,
        q: q_numerator as f64 / q_denominator as f64,
        union_bound: union,
        delta,
        distinctness_lower: distinctness_lower(n, m_eff)?,
        distinctness_correction: distinctness_correction(n, m_eff)?,
        alpha,
        quotient,
    })
}
