//! Equality, normalization, matching and one-step rewriting modulo
//! associativity, commutativity and unit laws.
//!
//! Terms are built over a [`Signature`] of free symbols, associative (A)
//! and associative-commutative (AC) binary operations, and units. Equality
//! is decided by comparing normal forms ([`norm`]). Matching ([`mtch`],
//! [`match_subterms`]) is a backtracking search whose every answer is
//! checked against the normal-form procedure, and [`rewrite_step`] builds
//! on it.
//!
//! ```
//! use acrw_core::{eq_ac, parse_term, Signature};
//!
//! let sig = Signature::parse("sym a 0\nsym b 0\nop + : AC\nop * : A\nunit 0 : +\n").unwrap();
//! let t = parse_term(&sig, "(b+0)+a").unwrap();
//! let u = parse_term(&sig, "a+b").unwrap();
//! assert!(eq_ac(&sig, &t, &u));
//! ```

pub mod batch;
pub mod error;
pub mod exec;
pub mod matcher;
pub mod mult;
pub mod normalize;
pub mod oracle;
pub mod rewrite;
pub mod signature;
pub mod stream;
pub mod syntax;
pub mod term;

pub use error::{Error, Result};
pub use exec::Exec;
pub use matcher::{
    count_occurrences, match_subterms, mtch, split_a, split_ac, Extension, MatchOutcome, MatchSolution, Occurrence,
};
pub use mult::Mult;
pub use normalize::{eq_ac, norm, validate_nf};
pub use rewrite::{
    chain, list_instances, rewrite_step, Chain, Direction, Equation, Listing, RewriteStep, StepOptions, StepRecord,
};
pub use signature::{OpId, OpKind, Signature, SymbolId, UnitId};
pub use stream::SolutionStream;
pub use syntax::{parse_context, parse_equation, parse_pattern, parse_term, print_term};
pub use term::{apply_subst, subterm_positions, Context, Position, Substitution, Term, Var};
