use super::parallel::run_indexed;
use crate::error::Result;
use crate::group_words::sample_binomial;
use crate::seed::mix;

/// Fraction of sampled presentations with a generator touched by no
/// relator; such a generator maps the group onto ℤ.
pub fn survivor_frequency(n: u32, p: f64, trials: u64, seed: u64, jobs: usize) -> Result<f64> {
    if trials == 0 {
        return Err(crate::error::Error::InvalidParameter(
            "trials must be at least 1".into(),
        ));
    }
    let hits = run_indexed(jobs, trials as usize, |t| {
        sample_binomial(n, p, mix(seed, t as u64)).map(|r| r.find_surviving_generator().is_some())
    });
    let mut count = 0u64;
    for hit in hits {
        count += u64::from(hit?);
    }
    Ok(count as f64 / trials as f64)
}
