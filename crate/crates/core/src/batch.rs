//! Independent queries over one signature, run under an [`Exec`] strategy.

use crate::error::Result;
use crate::exec::Exec;
use crate::matcher::{match_subterms, MatchOutcome};
use crate::normalize::{eq_ac, norm};
use crate::rewrite::{rewrite_step, Equation, RewriteStep, StepOptions};
use crate::signature::Signature;
use crate::term::Term;

pub fn normalize_all(sig: &Signature, terms: &[Term], exec: Exec) -> Vec<Term> {
    exec.map(terms, |t| norm(sig, t))
}

pub fn eq_ac_all(sig: &Signature, pairs: &[(Term, Term)], exec: Exec) -> Vec<bool> {
    exec.map(pairs, |(t, u)| eq_ac(sig, t, u))
}

/// Subterm matching of one pattern against many subjects.
pub fn match_all(sig: &Signature, p: &Term, subjects: &[Term], exec: Exec) -> Vec<Result<MatchOutcome>> {
    exec.map(subjects, |t| match_subterms(sig, p, t))
}

pub fn rewrite_all(
    sig: &Signature,
    eq: &Equation,
    subjects: &[Term],
    opts: StepOptions,
    exec: Exec,
) -> Vec<Result<RewriteStep>> {
    exec.map(subjects, |t| rewrite_step(sig, eq, t, opts))
}
