//! One-step rewriting modulo A, AC and units with a checked transitivity
//! step.
//!
//! To rewrite `t` with `p = q`, a solution `(C, sigma)` of subterm matching
//! gives the intermediate term `C[p sigma]`. The step is only emitted once
//! the decision procedure confirms that `t` and `C[p sigma]` are equal; the
//! result is then `C[q sigma]`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcher::{count_occurrences, match_subterms, MatchSolution};
use crate::normalize::{eq_ac, norm};
use crate::signature::Signature;
use crate::syntax::{parse_equation, print_term};
use crate::term::{apply_subst, Context, Substitution, Term, Var};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Direction {
    #[default]
    LtoR,
    RtoL,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Equation {
        Equation { lhs, rhs }
    }

    /// Parses `p = q`.
    pub fn parse(sig: &Signature, text: &str) -> Result<Equation> {
        let (lhs, rhs) = parse_equation(sig, text)?;
        Ok(Equation { lhs, rhs })
    }

    /// Variables of both sides, left side first.
    pub fn vars(&self) -> Vec<Var> {
        let mut vs = self.lhs.vars();
        for v in self.rhs.vars() {
            if !vs.contains(&v) {
                vs.push(v);
            }
        }
        vs
    }

    pub fn flipped(&self) -> Equation {
        Equation { lhs: self.rhs.clone(), rhs: self.lhs.clone() }
    }

    /// The equation read in `direction`, checked for use as a rewrite rule:
    /// the side being matched is not a variable (even modulo units) and
    /// binds every variable of the other side.
    pub fn oriented(&self, sig: &Signature, direction: Direction) -> Result<Equation> {
        let eq = match direction {
            Direction::LtoR => self.clone(),
            Direction::RtoL => self.flipped(),
        };
        if let Term::Var(v) = norm(sig, &eq.lhs) {
            return Err(Error::IllFormedEquation(format!(
                "the side being matched is the variable ?{}",
                v.name()
            )));
        }
        let bound = eq.lhs.vars();
        if let Some(v) = eq.rhs.vars().into_iter().find(|v| !bound.contains(v)) {
            return Err(Error::IllFormedEquation(format!(
                "?{} is not bound by the side being matched",
                v.name()
            )));
        }
        Ok(eq)
    }
}

/// Which solution a step uses, and in which direction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StepOptions {
    pub occurrence: usize,
    pub substitution: usize,
    pub direction: Direction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteStep {
    pub original: Term,
    /// `C[p sigma]`, equal to `original` modulo the axioms.
    pub intermediate: Term,
    /// `C[q sigma]`, not normalized.
    pub result: Term,
    pub instance: Term,
    pub solution: MatchSolution,
    pub verified: bool,
}

impl RewriteStep {
    pub fn record(&self, sig: &Signature) -> StepRecord {
        StepRecord {
            original: print_term(sig, &self.original),
            context: print_term(sig, self.solution.context.term()),
            substitution: bindings(sig, &self.solution.subst),
            instance: print_term(sig, &self.instance),
            result: print_term(sig, &self.result),
            verified: self.verified,
        }
    }
}

/// A step in printed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub original: String,
    pub context: String,
    pub substitution: BTreeMap<String, String>,
    pub instance: String,
    pub result: String,
    pub verified: bool,
}

/// Printed bindings keyed by variable name.
pub fn bindings(sig: &Signature, s: &Substitution) -> BTreeMap<String, String> {
    s.iter()
        .map(|(v, t)| (v.name().to_owned(), print_term(sig, t)))
        .collect()
}

/// Rewrites `t` once with `eq`, using the solution selected by `opts`.
pub fn rewrite_step(sig: &Signature, eq: &Equation, t: &Term, opts: StepOptions) -> Result<RewriteStep> {
    let eq = eq.oriented(sig, opts.direction)?;
    let outcome = match_subterms(sig, &eq.lhs, t)?;
    if outcome.solutions.is_empty() {
        return Err(Error::NoMatch { warning: outcome.warning });
    }
    let out_of_range = Error::SelectionOutOfRange {
        occurrence: opts.occurrence,
        substitution: opts.substitution,
    };
    let groups = count_occurrences(sig, &outcome.solutions);
    let index = *groups
        .get(opts.occurrence)
        .and_then(|g| g.solutions.get(opts.substitution))
        .ok_or(out_of_range)?;
    let solution = outcome.solutions[index].clone();

    let instance = apply_subst(&solution.subst, &eq.lhs)?;
    let intermediate = solution.context.plug(&instance);
    if !eq_ac(sig, t, &intermediate) {
        return Err(Error::Unverified(format!(
            "{} is not equal to {}",
            print_term(sig, t),
            print_term(sig, &intermediate)
        )));
    }
    let result = solution.context.plug(&apply_subst(&solution.subst, &eq.rhs)?);
    Ok(RewriteStep {
        original: t.clone(),
        intermediate,
        result,
        instance,
        solution,
        verified: true,
    })
}

/// Every way `eq` can be applied to `t`, grouped by occurrence.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Listing {
    pub occurrences: Vec<ListedOccurrence>,
    pub warning: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListedOccurrence {
    pub context: Context,
    pub solutions: Vec<MatchSolution>,
}

pub const UNIT_WARNING: &str =
    "warning: some solutions were rejected because the instance of the pattern equals a unit; \
     instantiate the rule explicitly to use them";

impl Listing {
    pub fn len(&self) -> usize {
        self.occurrences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.occurrences.is_empty()
    }

    pub fn render(&self, sig: &Signature) -> String {
        let mut out = String::new();
        if self.occurrences.is_empty() {
            out.push_str("no instances\n");
        }
        for (i, occ) in self.occurrences.iter().enumerate() {
            let _ = writeln!(out, "occurrence {i}: {}", print_term(sig, occ.context.term()));
            for (j, sol) in occ.solutions.iter().enumerate() {
                let shown: Vec<String> = sol
                    .subst
                    .iter()
                    .map(|(v, t)| format!("?{} := {}", v.name(), print_term(sig, t)))
                    .collect();
                let _ = writeln!(out, "  substitution {j}: {}", shown.join(", "));
            }
        }
        if self.warning {
            out.push_str(UNIT_WARNING);
            out.push('\n');
        }
        out
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> impl fmt::Display + 'a {
        struct Shown<'a>(&'a Listing, &'a Signature);
        impl fmt::Display for Shown<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.render(self.1))
            }
        }
        Shown(self, sig)
    }
}

/// The instances `rewrite_step` can select from, by occurrence then
/// substitution.
pub fn list_instances(sig: &Signature, eq: &Equation, t: &Term, direction: Direction) -> Result<Listing> {
    let eq = eq.oriented(sig, direction)?;
    let outcome = match_subterms(sig, &eq.lhs, t)?;
    let occurrences = count_occurrences(sig, &outcome.solutions)
        .into_iter()
        .map(|g| ListedOccurrence {
            context: g.context,
            solutions: g.solutions.iter().map(|&i| outcome.solutions[i].clone()).collect(),
        })
        .collect();
    Ok(Listing { occurrences, warning: outcome.warning })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub result: Term,
    pub transcript: Vec<RewriteStep>,
}

/// Applies the steps in order. A failing step is reported with its index.
pub fn chain(sig: &Signature, steps: &[(Equation, StepOptions)], t: &Term) -> Result<Chain> {
    let mut current = t.clone();
    let mut transcript = Vec::with_capacity(steps.len());
    for (index, (eq, opts)) in steps.iter().enumerate() {
        let step = rewrite_step(sig, eq, &current, *opts)
            .map_err(|e| Error::Step { index, source: Box::new(e) })?;
        current = step.result.clone();
        transcript.push(step);
    }
    Ok(Chain { result: current, transcript })
}
