//! Distributional checks of the samplers at fixed seeds.

use trilo::group_words::draw_uniform_word;
use trilo::seed::{mix, rng_from_seed};
use trilo::{count_w3, enumerate_w3, sample_binomial, sample_uniform_m, Word3};

fn inclusion_rate(n: u32, p: f64, word: Word3, trials: u64) -> f64 {
    let hits = (0..trials)
        .filter(|&t| {
            sample_binomial(n, p, mix(99, t))
                .unwrap()
                .relators()
                .binary_search(&word)
                .is_ok()
        })
        .count();
    hits as f64 / trials as f64
}

fn within_three_se(observed: f64, p: f64, trials: u64) -> bool {
    (observed - p).abs() <= 3.0 * (p * (1.0 - p) / trials as f64).sqrt()
}

#[test]
fn mean_relator_count_at_n2() {
    let trials = 4000u64;
    let total: usize = (0..trials)
        .map(|t| sample_binomial(2, 0.5, mix(3, t)).unwrap().len())
        .sum();
    let mean = total as f64 / trials as f64;
    let se = (28.0 * 0.25 / trials as f64).sqrt();
    assert!((mean - 14.0).abs() <= 3.0 * se, "mean {mean}");
}

#[test]
fn fixed_word_inclusion_enumeration_path() {
    let w = Word3::from_signed([1, -2, 1]).unwrap();
    for n in [2, 3] {
        let rate = inclusion_rate(n, 0.3, w, 10_000);
        assert!(within_three_se(rate, 0.3, 10_000), "n={n}: {rate}");
    }
}

#[test]
fn fixed_word_inclusion_rejection_path() {
    // |W_3| = 6860 > the enumeration limit, so this goes through the
    // binomial count and rejection sampling.
    assert!(count_w3(10).unwrap() > trilo::group_words::ENUMERATION_LIMIT);
    let w = Word3::from_signed([3, 7, -10]).unwrap();
    let rate = inclusion_rate(10, 0.3, w, 3000);
    assert!(within_three_se(rate, 0.3, 3000), "{rate}");
}

#[test]
fn uniform_word_is_uniform() {
    let words = enumerate_w3(2).unwrap();
    let draws = 28_000;
    let mut counts = vec![0u32; words.len()];
    let mut rng = rng_from_seed(17);
    for _ in 0..draws {
        let w = draw_uniform_word(2, &mut rng);
        counts[words.iter().position(|x| *x == w).unwrap()] += 1;
    }
    let expected = f64::from(draws) / words.len() as f64;
    let chi2: f64 = counts
        .iter()
        .map(|&c| (f64::from(c) - expected).powi(2) / expected)
        .sum();
    // 27 degrees of freedom; the 0.999 quantile is about 55.5.
    assert!(chi2 < 55.5, "chi2 = {chi2}");
}

#[test]
fn distinct_draws_at_moderate_density() {
    // 50 draws from 59320 words: P(collision) ≤ 50²/59320 ≈ 0.042.
    let trials = 2000u64;
    let distinct = (0..trials)
        .filter(|&t| sample_uniform_m(20, 50, mix(8, t)).unwrap().all_distinct)
        .count();
    let rate = distinct as f64 / trials as f64;
    assert!(rate >= 1.0 - 2500.0 / 59320.0 - 0.01, "{rate}");
}
