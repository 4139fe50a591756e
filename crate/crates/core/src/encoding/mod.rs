//! Propositional encodings of presentations and DIMACS interchange.

mod cnf;
mod dimacs;
mod encode;

pub use cnf::{Clause, CnfFormula, Literal, NaeFormula, RoleSpan, VarRole};
pub use dimacs::{from_dimacs, to_dimacs};
pub use encode::{
    activity_var, encode_nae, encode_presentation, encode_relator, encode_survivor_query,
    letter_literal,
};
