//! Random triangular group presentations and their left-orderability
//! obstructions.
//!
//! Relators are cyclically reduced words of length three over `S ∪ S⁻¹`.
//! Every relator `r = a b c` is turned into the pair of clauses
//! `(ℓa ∨ ℓb ∨ ℓc) ∧ (¬ℓa ∨ ¬ℓb ∨ ¬ℓc)`; if the resulting formula is
//! unsatisfiable, no left-orderable quotient keeps all the involved
//! generators non-trivial. The crate samples presentations, builds these
//! formulas, decides them, and runs the Monte Carlo experiments and finite-n
//! bound calculators around them.
//!
//! All certificates are one-directional: an unsatisfiable formula is an
//! obstruction, a satisfiable one proves nothing about the group.

pub mod encoding;
pub mod error;
pub mod experiments;
pub mod group_words;
pub mod sat;
pub mod seed;

pub use encoding::{
    encode_nae, encode_presentation, encode_relator, encode_survivor_query, from_dimacs, to_dimacs,
    Clause, CnfFormula, Literal, NaeFormula, VarRole,
};
pub use error::{Error, Result};
pub use group_words::{
    count_w3, enumerate_w3, is_cyclically_reduced, sample_binomial, sample_uniform_m, GeneratorSet,
    Presentation, SampleOutcome, Sign, SignedGenerator, Word3,
};
pub use sat::{
    brute_force, evaluate, evaluate_nae, solve, solve_with, Assignment, Engine, SolveOptions,
    Status, Verdict,
};
