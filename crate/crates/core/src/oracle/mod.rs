//! Independent oracles for testing: evaluation in concrete models, equality
//! by bounded search through the axioms, and matching by brute force.
//!
//! None of this is used by the rewriting pipeline.

mod brute_match;
mod model;
mod raw;

pub use brute_match::{oracle_match, OracleMatches};
pub use model::{check_laws, eval, Interpretation, Matrix, MatrixModel, SeqModel, PRIME};
pub use raw::{
    ac_closure, axiom_neighbors, default_bound, enumerate, enumerate_up_to, oracle_eq, ClosureClasses,
    RawTerm,
};
