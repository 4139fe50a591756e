use std::collections::HashSet;

use rand::Rng;
use rand_distr::{Binomial, Distribution};

use super::presentation::Presentation;
use super::word::{count_w3, enumerate_w3, is_cyclically_reduced, SignedGenerator, Word3};
use crate::error::{Error, Result};
use crate::seed::rng_from_seed;

/// Above this many words the binomial sampler stops enumerating `W_3`.
pub const ENUMERATION_LIMIT: u64 = 4096;

/// Result of `m` independent uniform draws from `W_3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleOutcome {
    pub relators: Vec<Word3>,
    /// No word was drawn twice.
    pub all_distinct: bool,
}

impl SampleOutcome {
    /// The distinct relators, first occurrence order, as a presentation.
    pub fn to_presentation(&self, n: u32) -> Result<Presentation> {
        let mut seen = HashSet::with_capacity(self.relators.len());
        let distinct = self
            .relators
            .iter()
            .copied()
            .filter(|w| seen.insert(*w))
            .collect();
        Presentation::new(n, distinct)
    }
}

fn random_letter<R: Rng + ?Sized>(n: u32, rng: &mut R) -> SignedGenerator {
    let code = rng.random_range(0..2 * n);
    if code % 2 == 0 {
        SignedGenerator::pos(code / 2 + 1)
    } else {
        SignedGenerator::neg(code / 2 + 1)
    }
}

/// One uniform element of `W_3`: uniform letter triples, rejected until
/// cyclically reduced.
pub fn draw_uniform_word<R: Rng + ?Sized>(n: u32, rng: &mut R) -> Word3 {
    loop {
        let a = random_letter(n, rng);
        let b = random_letter(n, rng);
        let c = random_letter(n, rng);
        if is_cyclically_reduced(a, b, c) {
            return Word3::from_letters_unchecked([a, b, c]);
        }
    }
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p))
    }
}

/// Triangular binomial model: every word of `W_3` is a relator independently
/// with probability `p`. Deterministic in `(n, p, seed)`.
pub fn sample_binomial(n: u32, p: f64, seed: u64) -> Result<Presentation> {
    sample_binomial_with(n, p, &mut rng_from_seed(seed))
}

/// As [`sample_binomial`], drawing from a caller-owned generator.
///
/// Small `W_3` is enumerated with one Bernoulli draw per word. Otherwise the
/// relator count is drawn from `Binomial(|W_3|, p)` and that many distinct
/// words are collected by uniform rejection; conditional on its size the
/// binomial model is a uniform subset, so both routes have the same law.
/// Relators come back sorted.
pub fn sample_binomial_with<R: Rng + ?Sized>(n: u32, p: f64, rng: &mut R) -> Result<Presentation> {
    check_probability(p)?;
    let total = count_w3(n)?;
    if p == 0.0 {
        return Presentation::empty(n);
    }
    let relators = if total <= ENUMERATION_LIMIT {
        enumerate_w3(n)?
            .into_iter()
            .filter(|_| rng.random_bool(p))
            .collect()
    } else {
        let size = Binomial::new(total, p)
            .map_err(|e| Error::InvalidParameter(e.to_string()))?
            .sample(rng) as usize;
        let mut seen = HashSet::with_capacity(size);
        let mut drawn = Vec::with_capacity(size);
        while drawn.len() < size {
            let w = draw_uniform_word(n, rng);
            if seen.insert(w) {
                drawn.push(w);
            }
        }
        drawn.sort_unstable();
        drawn
    };
    Presentation::new(n, relators)
}

/// The `R_m` model: `m` independent uniform words, repeats allowed.
pub fn sample_uniform_m(n: u32, m: usize, seed: u64) -> Result<SampleOutcome> {
    sample_uniform_m_with(n, m, &mut rng_from_seed(seed))
}

pub fn sample_uniform_m_with<R: Rng + ?Sized>(
    n: u32,
    m: usize,
    rng: &mut R,
) -> Result<SampleOutcome> {
    if n == 0 {
        return Err(Error::ZeroGenerators(n));
    }
    let relators: Vec<Word3> = (0..m).map(|_| draw_uniform_word(n, rng)).collect();
    let mut seen = HashSet::with_capacity(m);
    let all_distinct = relators.iter().all(|w| seen.insert(*w));
    Ok(SampleOutcome {
        relators,
        all_distinct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_degenerate_probabilities() {
        for seed in 0..5 {
            assert!(sample_binomial(7, 0.0, seed).unwrap().is_empty());
            assert!(sample_binomial(200, 0.0, seed).unwrap().is_empty());
        }
        let full = sample_binomial(1, 1.0, 3).unwrap();
        assert_eq!(full.relators(), enumerate_w3(1).unwrap().as_slice());
        let full3 = sample_binomial(3, 1.0, 3).unwrap();
        assert_eq!(full3.len() as u64, count_w3(3).unwrap());
    }

    #[test]
    fn binomial_rejects_bad_parameters() {
        assert!(matches!(
            sample_binomial(3, 1.5, 0),
            Err(Error::InvalidProbability(_))
        ));
        assert!(sample_binomial(3, -0.1, 0).is_err());
        assert!(sample_binomial(3, f64::NAN, 0).is_err());
        assert!(sample_binomial(0, 0.5, 0).is_err());
    }

    #[test]
    fn samplers_are_reproducible() {
        assert_eq!(
            sample_binomial(2, 0.5, 99).unwrap(),
            sample_binomial(2, 0.5, 99).unwrap()
        );
        assert_eq!(
            sample_binomial(60, 1e-3, 99).unwrap(),
            sample_binomial(60, 1e-3, 99).unwrap()
        );
        assert_eq!(
            sample_uniform_m(9, 40, 5).unwrap(),
            sample_uniform_m(9, 40, 5).unwrap()
        );
    }

    #[test]
    fn uniform_m_edge_cases() {
        let empty = sample_uniform_m(5, 0, 1).unwrap();
        assert!(empty.relators.is_empty());
        assert!(empty.all_distinct);
        for seed in 0..20 {
            assert!(!sample_uniform_m(1, 3, seed).unwrap().all_distinct);
        }
        assert!(sample_uniform_m(0, 3, 1).is_err());
    }

    #[test]
    fn sampled_words_are_reduced() {
        let check = |ws: &[Word3]| {
            for w in ws {
                let [a, b, c] = *w.letters();
                assert!(is_cyclically_reduced(a, b, c));
            }
        };
        for seed in 0..10 {
            check(sample_binomial(40, 2e-4, seed).unwrap().relators());
            check(sample_binomial(4, 0.3, seed).unwrap().relators());
            check(&sample_uniform_m(6, 100, seed).unwrap().relators);
        }
    }

    #[test]
    fn to_presentation_drops_repeats() {
        let out = sample_uniform_m(1, 5, 0).unwrap();
        let p = out.to_presentation(1).unwrap();
        assert!(p.len() <= 2);
    }
}
