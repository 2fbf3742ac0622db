//! Matching modulo A, AC and units, at the root and under contexts.
//!
//! This is the untrusted half of the rewriting pipeline: it searches, and
//! [`crate::normalize`] checks. Matching recurses on the pattern. A pattern
//! node `p1 o rest` is matched by trying every way of splitting the subject
//! into `t1 o t2` and matching `p1` against `t1`, then `rest` against `t2`
//! under the substitution found so far. When `o` has a unit, the splits
//! include `(unit, t)` and `(t, unit)`.
//!
//! Subjects are expected in normal form. Every value bound to a variable is
//! then itself in normal form.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::mult::Mult;
use crate::normalize::{eq_ac, norm};
use crate::signature::{OpId, OpKind, Signature};
use crate::stream::SolutionStream;
use crate::syntax::print_term;
use crate::term::{apply_subst, subterm_positions, Context, Position, Substitution, Term, Var};

/// All `(t1, t2)` with `t = t1 o t2` modulo the axioms, for an AC `op`.
///
/// When `t` is headed by `op` these are the ordered partitions of its
/// multiset into two non-empty blocks. With a unit `u`, `(u, t)` comes
/// first and `(t, u)` last.
pub fn split_ac(sig: &Signature, op: OpId, t: &Term) -> SolutionStream<(Term, Term)> {
    let unit = sig.unit_of(op).map(Term::Unit);
    let mut out = Vec::new();
    if let Some(u) = &unit {
        out.push((u.clone(), t.clone()));
    }
    if let Term::AC(o, items) = t {
        if *o == op {
            let bounds: Vec<u64> = items
                .iter()
                .map(|(_, m)| m.to_u64().expect("multiplicity too large to enumerate splits"))
                .collect();
            let mut counts = vec![0u64; items.len()];
            'odometer: loop {
                let mut i = 0;
                loop {
                    if counts[i] < bounds[i] {
                        counts[i] += 1;
                        break;
                    }
                    counts[i] = 0;
                    i += 1;
                    if i == counts.len() {
                        break 'odometer;
                    }
                }
                if counts == bounds {
                    break;
                }
                let rest: Vec<u64> = bounds.iter().zip(&counts).map(|(b, c)| b - c).collect();
                out.push((block(op, items, &counts), block(op, items, &rest)));
            }
        }
    }
    if let Some(u) = unit {
        out.push((t.clone(), u));
    }
    SolutionStream::from_iter(out).dedup()
}

fn block(op: OpId, items: &[(Term, Mult)], counts: &[u64]) -> Term {
    let picked: Vec<(Term, Mult)> = items
        .iter()
        .zip(counts)
        .filter_map(|((t, _), &c)| Mult::new(c).map(|m| (t.clone(), m)))
        .collect();
    if picked.len() == 1 && picked[0].1.is_one() {
        picked.into_iter().next().unwrap().0
    } else {
        Term::AC(op, picked)
    }
}

/// All `(t1, t2)` with `t = t1 o t2` modulo the axioms, for an A `op`:
/// the cuts of its item sequence, plus the unit at either end.
pub fn split_a(sig: &Signature, op: OpId, t: &Term) -> SolutionStream<(Term, Term)> {
    let unit = sig.unit_of(op).map(Term::Unit);
    let mut out = Vec::new();
    if let Some(u) = &unit {
        out.push((u.clone(), t.clone()));
    }
    if let Term::A(o, items) = t {
        if *o == op {
            for k in 1..items.len() {
                out.push((seq(op, &items[..k]), seq(op, &items[k..])));
            }
        }
    }
    if let Some(u) = unit {
        out.push((t.clone(), u));
    }
    SolutionStream::from_iter(out).dedup()
}

fn seq(op: OpId, items: &[Term]) -> Term {
    match items {
        [one] => one.clone(),
        _ => Term::A(op, items.to_vec()),
    }
}

/// Root matching: every extension of `sigma` under which `p` equals `t`
/// modulo the axioms.
pub fn mtch(
    sig: &Signature,
    p: &Term,
    t: &Term,
    sigma: &Substitution,
) -> Result<SolutionStream<Substitution>> {
    if !t.is_ground() {
        return Err(Error::SubjectNotGround);
    }
    Ok(go(sig, p, t, sigma.clone()))
}

fn go(sig: &Signature, p: &Term, t: &Term, sigma: Substitution) -> SolutionStream<Substitution> {
    match p {
        Term::Var(x) => match sigma.get(x) {
            Some(v) if eq_ac(sig, v, t) => SolutionStream::single(sigma),
            Some(_) => SolutionStream::empty(),
            None => SolutionStream::single(sigma.with(x.clone(), t.clone())),
        },
        Term::Unit(_) => {
            if eq_ac(sig, t, p) {
                SolutionStream::single(sigma)
            } else {
                SolutionStream::empty()
            }
        }
        Term::App(f, ps) => match t {
            Term::App(g, ts) if f == g => ps
                .iter()
                .zip(ts)
                .fold(SolutionStream::single(sigma), |acc, (p, t)| {
                    acc.bind(|s| go(sig, p, t, s))
                }),
            _ => SolutionStream::empty(),
        },
        Term::A(o, ps) => {
            let first = &ps[0];
            let rest = seq(*o, &ps[1..]);
            split_a(sig, *o, t).bind(|(t1, t2)| {
                go(sig, first, &t1, sigma.clone()).bind(|s| go(sig, &rest, &t2, s))
            })
        }
        Term::AC(o, items) => {
            let i = peel_index(items);
            let first = &items[i].0;
            let rest = remove_one(*o, items, i);
            split_ac(sig, *o, t).bind(|(t1, t2)| {
                go(sig, first, &t1, sigma.clone()).bind(|s| go(sig, &rest, &t2, s))
            })
        }
    }
}

/// Structured items first, in term order; then user variables; the
/// extension variable last.
fn peel_index(items: &[(Term, Mult)]) -> usize {
    let rank = |t: &Term| match t {
        Term::Var(v) if v.is_reserved() => 2u8,
        Term::Var(_) => 1,
        _ => 0,
    };
    (0..items.len())
        .min_by_key(|&i| (rank(&items[i].0), i))
        .expect("AC node has items")
}

fn remove_one(op: OpId, items: &[(Term, Mult)], i: usize) -> Term {
    let mut rest: Vec<(Term, Mult)> = Vec::with_capacity(items.len());
    for (j, (t, m)) in items.iter().enumerate() {
        if j != i {
            rest.push((t.clone(), m.clone()));
        } else if let Some(left) = m.pred() {
            rest.push((t.clone(), left));
        }
    }
    if rest.len() == 1 && rest[0].1.is_one() {
        rest.pop().unwrap().0
    } else {
        Term::AC(op, rest)
    }
}

/// Sibling material absorbed by extension variables around a match inside a
/// larger A/AC node. `before` is the only side used for AC operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    pub op: OpId,
    pub before: Option<Term>,
    pub after: Option<Term>,
}

impl Extension {
    /// `before o [] o after`
    pub fn context(&self, sig: &Signature) -> Context {
        let term = match sig.op(self.op).kind {
            OpKind::AC => {
                let mut items = vec![(Term::hole(), Mult::ONE)];
                items.extend(self.before.iter().chain(&self.after).map(|t| (t.clone(), Mult::ONE)));
                Term::comm(self.op, items)
            }
            OpKind::A => {
                let mut items = Vec::new();
                items.extend(self.before.clone());
                items.push(Term::hole());
                items.extend(self.after.clone());
                Term::assoc(self.op, items)
            }
        };
        Context::from_term(term).expect("one hole")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchSolution {
    pub context: Context,
    pub subst: Substitution,
    /// Where the match was found in the normalized subject.
    pub position: Position,
    pub extension: Option<Extension>,
}

impl MatchSolution {
    pub fn used_extension(&self) -> bool {
        self.extension.is_some()
    }

    pub fn extension_value(&self) -> Option<&Term> {
        self.extension
            .as_ref()
            .and_then(|e| e.before.as_ref().or(e.after.as_ref()))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MatchOutcome {
    pub solutions: Vec<MatchSolution>,
    /// Set when some solution was rejected because the pattern instance was
    /// a unit. Such instances fit under infinitely many contexts.
    pub warning: bool,
}

/// Pattern `p o %ext` (and for A also `p o %ext_r` and
/// `%ext o p o %ext_r`) matched against `s`.
fn extended(
    sig: &Signature,
    p: &Term,
    s: &Term,
    op: OpId,
) -> Vec<(Substitution, Option<Extension>)> {
    let left = Term::Var(Var::extension());
    let right = Term::Var(Var::extension_right());
    let unit = sig.unit_of(op).map(Term::Unit);
    let variants = match sig.op(op).kind {
        OpKind::AC => vec![(
            Term::comm(op, vec![(p.clone(), Mult::ONE), (left, Mult::ONE)]),
            true,
            false,
        )],
        OpKind::A => vec![
            (Term::assoc(op, vec![left.clone(), p.clone()]), true, false),
            (Term::assoc(op, vec![p.clone(), right.clone()]), false, true),
            (Term::assoc(op, vec![left, p.clone(), right]), true, true),
        ],
    };
    let mut out = Vec::new();
    for (pattern, has_left, has_right) in variants {
        for mut sigma in go(sig, &pattern, s, Substitution::new()) {
            let mut take = |present: bool, v: Var| {
                if !present {
                    return None;
                }
                sigma.remove(&v).filter(|t| Some(t) != unit.as_ref())
            };
            let before = take(has_left, Var::extension());
            let after = take(has_right, Var::extension_right());
            let ext = (before.is_some() || after.is_some()).then_some(Extension { op, before, after });
            out.push((sigma, ext));
        }
    }
    out
}

/// Every `(C, sigma)` with `C[p sigma]` equal to `t` modulo the axioms, up
/// to the rejection of unit instances.
///
/// Each node of the normalized subject is tried in order, first with `p`
/// itself and then with `p` extended by fresh variables that soak up
/// siblings in an enclosing A/AC node. Solutions whose instance normalizes
/// to a unit are dropped and reported through `warning`. Every surviving
/// solution is checked with the decision procedure before it is returned,
/// and solutions equal modulo the axioms (same context, same bindings) are
/// reported once.
pub fn match_subterms(sig: &Signature, p: &Term, t: &Term) -> Result<MatchOutcome> {
    if !t.is_ground() {
        return Err(Error::SubjectNotGround);
    }
    let p = norm(sig, p);
    if matches!(p, Term::Var(_)) {
        return Err(Error::TrivialPattern);
    }
    if matches!(p, Term::Unit(_)) {
        return Ok(MatchOutcome { solutions: Vec::new(), warning: true });
    }
    let subject = norm(sig, t);
    let head = p.head_op();
    let collapsible = head.is_some_and(|o| sig.unit_of(o).is_some());

    let mut outcome = MatchOutcome::default();
    let mut seen = HashSet::new();
    for (position, s) in subterm_positions(&subject) {
        let base = Context::at(&subject, &position).expect("position comes from the subject");
        let mut found: Vec<(Substitution, Option<Extension>)> = go(sig, &p, &s, Substitution::new())
            .into_iter()
            .map(|sigma| (sigma, None))
            .collect();
        if let Some(o) = head {
            found.extend(extended(sig, &p, &s, o));
        }
        // A pattern whose head can collapse through its unit may also match
        // a run of several items of a node of another operation, or
        // collapse to the unit of another operation.
        let others = sig.ops().map(|(o, _)| o).filter(|&o| Some(o) != head && collapsible);
        for o in others {
            for (sigma, ext) in extended(sig, &p, &s, o) {
                let keep = apply_subst(&sigma, &p)
                    .map(|i| {
                        let i = norm(sig, &i);
                        i.head_op() == Some(o) || matches!(i, Term::Unit(_))
                    })
                    .unwrap_or(false);
                if keep {
                    found.push((sigma, ext));
                }
            }
        }

        for (subst, extension) in found {
            let instance = apply_subst(&subst, &p)?;
            if matches!(norm(sig, &instance), Term::Unit(_)) {
                outcome.warning = true;
                continue;
            }
            let context = match &extension {
                None => base.clone(),
                Some(e) => base.compose(&e.context(sig)),
            };
            if !eq_ac(sig, &context.plug(&instance), t) {
                return Err(Error::Unverified(format!(
                    "{} under {}",
                    print_term(sig, &instance),
                    print_term(sig, context.term())
                )));
            }
            let key = solution_key(sig, &context, &subst);
            if seen.insert(key) {
                outcome.solutions.push(MatchSolution {
                    context,
                    subst,
                    position: position.clone(),
                    extension,
                });
            }
        }
    }
    Ok(outcome)
}

/// Identity of a solution modulo the axioms.
pub fn solution_key(sig: &Signature, context: &Context, subst: &Substitution) -> (Term, Substitution) {
    (norm(sig, context.term()), subst.map_values(|v| norm(sig, v)))
}

/// Solutions that share a context (modulo the axioms).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Occurrence {
    pub context: Context,
    /// Indices into the solution list, in order.
    pub solutions: Vec<usize>,
}

/// Groups solutions by occurrence, in order of first appearance. The pair
/// (occurrence index, index within the occurrence) selects one solution.
pub fn count_occurrences(sig: &Signature, solutions: &[MatchSolution]) -> Vec<Occurrence> {
    let mut keys: Vec<Term> = Vec::new();
    let mut groups: Vec<Occurrence> = Vec::new();
    for (i, sol) in solutions.iter().enumerate() {
        let key = norm(sig, sol.context.term());
        match keys.iter().position(|k| *k == key) {
            Some(g) => groups[g].solutions.push(i),
            None => {
                keys.push(key);
                groups.push(Occurrence {
                    context: sol.context.clone(),
                    solutions: vec![i],
                });
            }
        }
    }
    groups
}
