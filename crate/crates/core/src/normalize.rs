//! Normal forms modulo A, C and U, and the decision procedure built on
//! them.
//!
//! `norm` flattens nested applications of the same operation, sorts the
//! items of AC nodes, and drops items equal to the unit of their parent
//! operation. Two terms are equal modulo the axioms iff their normal forms
//! are structurally equal. This is the only component whose answers the
//! rest of the crate trusts: every solution the matcher proposes is checked
//! against it.

use crate::error::{Error, Result};
use crate::mult::Mult;
use crate::signature::{OpId, Signature};
use crate::term::{merge_multisets, sort_multiset, Term};

pub fn norm(sig: &Signature, t: &Term) -> Term {
    match t {
        Term::Unit(_) | Term::Var(_) => t.clone(),
        Term::App(s, args) => Term::App(*s, args.iter().map(|x| norm(sig, x)).collect()),
        Term::A(o, items) => {
            let mut flat = Vec::with_capacity(items.len());
            for x in items {
                flat.extend(extract_a(*o, norm(sig, x)));
            }
            smart_bin_a(sig, *o, flat).expect("A node has items")
        }
        Term::AC(o, items) => {
            let mut acc: Vec<(Term, Mult)> = Vec::new();
            for (x, m) in items {
                let mut part = extract_ac(*o, norm(sig, x));
                if !m.is_one() {
                    for (_, n) in part.iter_mut() {
                        *n = &*n * m;
                    }
                }
                acc = merge_multisets(acc, part);
            }
            smart_bin_ac(sig, *o, acc).expect("AC node has items")
        }
    }
}

/// The items of `t` as seen by an AC node of `op`: its multiset when `t` is
/// headed by `op`, else `{t: 1}`.
pub fn extract_ac(op: OpId, t: Term) -> Vec<(Term, Mult)> {
    match t {
        Term::AC(o, items) if o == op => items,
        other => vec![(other, Mult::ONE)],
    }
}

/// The items of `t` as seen by an A node of `op`.
pub fn extract_a(op: OpId, t: Term) -> Vec<Term> {
    match t {
        Term::A(o, items) if o == op => items,
        other => vec![other],
    }
}

/// Builds an AC node from normalized items without same-op children,
/// dropping units and collapsing to the single item or the unit when fewer
/// than two items remain.
pub fn smart_bin_ac(sig: &Signature, op: OpId, items: Vec<(Term, Mult)>) -> Result<Term> {
    if items.is_empty() {
        return Err(Error::InternalSizeZero);
    }
    let unit = sig.unit_of(op).map(Term::Unit);
    let mut items: Vec<_> = items
        .into_iter()
        .filter(|(t, _)| Some(t) != unit.as_ref())
        .collect();
    if !items.windows(2).all(|w| w[0].0 < w[1].0) {
        items = sort_multiset(items);
    }
    Ok(match items.len() {
        0 => unit.expect("only units are eliminated"),
        1 if items[0].1.is_one() => items.pop().unwrap().0,
        _ => Term::AC(op, items),
    })
}

/// A-node counterpart of [`smart_bin_ac`].
pub fn smart_bin_a(sig: &Signature, op: OpId, items: Vec<Term>) -> Result<Term> {
    if items.is_empty() {
        return Err(Error::InternalSizeZero);
    }
    let unit = sig.unit_of(op).map(Term::Unit);
    let mut items: Vec<_> = items
        .into_iter()
        .filter(|t| Some(t) != unit.as_ref())
        .collect();
    Ok(match items.len() {
        0 => unit.expect("only units are eliminated"),
        1 => items.pop().unwrap(),
        _ => Term::A(op, items),
    })
}

pub fn eq_ac(sig: &Signature, t: &Term, u: &Term) -> bool {
    norm(sig, t) == norm(sig, u)
}

/// Whether `t` is already in normal form.
pub fn validate_nf(sig: &Signature, t: &Term) -> bool {
    if t.check(sig).is_err() {
        return false;
    }
    fn go(sig: &Signature, t: &Term) -> bool {
        match t {
            Term::Unit(_) | Term::Var(_) => true,
            Term::App(_, xs) => xs.iter().all(|x| go(sig, x)),
            Term::A(o, xs) => {
                let unit = sig.unit_of(*o).map(Term::Unit);
                xs.iter()
                    .all(|x| Some(x) != unit.as_ref() && x.head_op() != Some(*o) && go(sig, x))
            }
            Term::AC(o, xs) => {
                let unit = sig.unit_of(*o).map(Term::Unit);
                xs.iter()
                    .all(|(x, _)| Some(x) != unit.as_ref() && x.head_op() != Some(*o) && go(sig, x))
            }
        }
    }
    go(sig, t)
}
