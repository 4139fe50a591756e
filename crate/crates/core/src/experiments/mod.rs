//! Monte Carlo harness and bound calculators.

pub mod bounds;
mod concentration;
mod parallel;
mod quotient;
mod records;
pub mod stats;
mod survivor;
mod sweep;
mod threshold;

pub use bounds::{
    bound_report, c_zero, default_alpha, distinctness_correction, distinctness_lower,
    failing_word_count, q_exact, quotient_bound, union_bound, union_bound_binomial, BoundReport,
    QuotientBounds, RelatorLaw,
};
pub use concentration::{concentration_check, ConcentrationReport};
pub use parallel::run_indexed;
pub use quotient::{
    pa_emptiness, quotient_certificate, run_quotient_trials, survivors_required, Certificate,
    CertificateOutcome, PaReport, QuotientConfig, QuotientRun, QuotientSummary, Strategy,
};
pub use records::{ExperimentRecord, PointRecord, TrialRecord};
pub use stats::{wilson_interval, Z_95};
pub use survivor::survivor_frequency;
pub use sweep::{
    run_sweep, sample_for_model, uniform_m_count, Model, PointParam, SweepConfig, SweepPoint,
    SweepRun, TrialOutcome,
};
pub use threshold::{estimate_threshold, ThresholdConfig, ThresholdEstimate};
