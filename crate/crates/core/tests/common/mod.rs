#![allow(dead_code)]

pub mod props;

use std::collections::BTreeSet;

use acrw_core::{norm, Signature, Term};

/// Every term of exactly `size` raw binary nodes over `leaves`, the unary
/// and binary symbols, and the operations of `sig`.
pub fn terms_of_size(sig: &Signature, leaves: &[Term], size: usize, memo: &mut Vec<Vec<Term>>) -> Vec<Term> {
    while memo.len() <= size {
        let n = memo.len();
        let mut out = Vec::new();
        if n == 1 {
            out.extend(leaves.iter().cloned());
        }
        if n >= 2 {
            for (s, info) in sig.symbols() {
                match info.arity {
                    1 => {
                        for x in &memo[n - 1] {
                            out.push(Term::App(s, vec![x.clone()]));
                        }
                    }
                    2 if n >= 3 => {
                        for ls in 1..n - 1 {
                            for l in &memo[ls] {
                                for r in &memo[n - 1 - ls] {
                                    out.push(Term::App(s, vec![l.clone(), r.clone()]));
                                }
                            }
                        }
                    }
                    _ => {}
                }
            }
        }
        if n >= 3 {
            for (o, _) in sig.ops() {
                for ls in 1..n - 1 {
                    for l in &memo[ls] {
                        for r in &memo[n - 1 - ls] {
                            out.push(Term::bin(sig, o, l.clone(), r.clone()));
                        }
                    }
                }
            }
        }
        memo.push(out);
    }
    memo[size].clone()
}

/// Distinct normal forms of all terms of at most `size` nodes, in order of
/// first appearance by size.
pub fn normal_forms_up_to(sig: &Signature, leaves: &[Term], size: usize) -> Vec<Term> {
    let mut memo = vec![Vec::new()];
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for n in 1..=size {
        for t in terms_of_size(sig, leaves, n, &mut memo) {
            let nf = norm(sig, &t);
            if seen.insert(nf.clone()) {
                out.push(nf);
            }
        }
    }
    out
}

/// Ground constants and units of `sig` as terms.
pub fn ground_leaves(sig: &Signature) -> Vec<Term> {
    let mut out: Vec<Term> = sig
        .symbols()
        .filter(|(_, info)| info.arity == 0)
        .map(|(s, _)| Term::constant(s))
        .collect();
    out.extend(sig.units().map(|(u, _)| Term::Unit(u)));
    out
}
