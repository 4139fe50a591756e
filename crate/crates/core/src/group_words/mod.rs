//! Letters, length-3 words, presentations and the two random models.

mod presentation;
mod sampling;
mod word;

pub use presentation::{GeneratorSet, Presentation};
pub use sampling::{
    draw_uniform_word, sample_binomial, sample_binomial_with, sample_uniform_m,
    sample_uniform_m_with, SampleOutcome, ENUMERATION_LIMIT,
};
pub use word::{count_w3, enumerate_w3, is_cyclically_reduced, Sign, SignedGenerator, Word3};
