//! Matching by exhaustive generate-and-test.

use std::collections::BTreeSet;

use crate::mult::Mult;
use crate::normalize::{eq_ac, norm};
use crate::signature::Signature;
use crate::term::{apply_subst, subterm_positions, Context, Substitution, Term};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleMatches {
    /// Solutions with a non-unit instance, each reported once modulo the
    /// axioms, ordered by their normalized `(context, substitution)`.
    pub solutions: Vec<(Context, Substitution)>,
    /// Whether some candidate matched with an instance equal to a unit.
    pub unit_instances: bool,
}

/// Every `(C, sigma)` with `C[p sigma]` equal to `t`, found by trying every
/// candidate context against every assignment of candidate values.
///
/// Candidate values are the subterms of `norm(t)`, the sub-multisets of its
/// AC nodes, the contiguous runs of its A nodes, and the units. Candidate
/// contexts put the hole at any node, or around any proper sub-multiset of
/// an AC node, or around any proper run of an A node, or next to any node
/// under an operation that has a unit.
pub fn oracle_match(sig: &Signature, p: &Term, t: &Term) -> OracleMatches {
    let nt = norm(sig, t);
    let vars = p.vars();
    let mut values: BTreeSet<Term> = sig.units().map(|(u, _)| Term::Unit(u)).collect();
    let mut contexts: BTreeSet<Context> = BTreeSet::new();
    for (pos, s) in subterm_positions(&nt) {
        let around = Context::at(&nt, &pos).expect("position of the subject");
        values.insert(s.clone());
        contexts.insert(around.clone());
        for (o, info) in sig.ops() {
            if info.unit.is_some() {
                for shell in [Term::bin(sig, o, s.clone(), Term::hole()), Term::bin(sig, o, Term::hole(), s.clone())] {
                    let inner = Context::from_term(shell).expect("one hole");
                    contexts.insert(around.compose(&inner));
                }
            }
        }
        match &s {
            Term::AC(o, items) => {
                for (picked, rest) in sub_multisets(items) {
                    let block = collapse_ac(*o, picked);
                    values.insert(block);
                    if let Some(mut rest) = rest {
                        rest.push((Term::hole(), Mult::ONE));
                        let inner = Context::from_term(Term::comm(*o, rest)).expect("one hole");
                        contexts.insert(around.compose(&inner));
                    }
                }
            }
            Term::A(o, items) => {
                let n = items.len();
                for i in 0..n {
                    for j in i + 1..=n {
                        let run = &items[i..j];
                        values.insert(if run.len() == 1 { run[0].clone() } else { Term::A(*o, run.to_vec()) });
                        if j - i < n {
                            let mut shell = items[..i].to_vec();
                            shell.push(Term::hole());
                            shell.extend_from_slice(&items[j..]);
                            let inner = Context::from_term(Term::assoc(*o, shell)).expect("one hole");
                            contexts.insert(around.compose(&inner));
                        }
                    }
                }
            }
            _ => {}
        }
    }
    let values: Vec<Term> = values.into_iter().collect();

    let mut found = BTreeSet::new();
    let mut unit_instances = false;
    let mut digits = vec![0usize; vars.len()];
    loop {
        let sigma: Substitution = vars
            .iter()
            .zip(&digits)
            .map(|(v, &i)| (v.clone(), values[i].clone()))
            .collect();
        let instance = apply_subst(&sigma, p).expect("total substitution");
        let is_unit = matches!(norm(sig, &instance), Term::Unit(_));
        for c in &contexts {
            if eq_ac(sig, &c.plug(&instance), &nt) {
                if is_unit {
                    unit_instances = true;
                } else {
                    let key_c = Context::from_term(norm(sig, c.term())).expect("one hole");
                    found.insert((key_c, sigma.map_values(|v| norm(sig, v))));
                }
            }
        }
        // next assignment
        let mut k = 0;
        loop {
            if k == digits.len() {
                return OracleMatches { solutions: found.into_iter().collect(), unit_instances };
            }
            digits[k] += 1;
            if digits[k] < values.len() {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

/// Every non-empty sub-multiset with its complement (`None` when empty).
type Items = Vec<(Term, Mult)>;

fn sub_multisets(items: &[(Term, Mult)]) -> Vec<(Items, Option<Items>)> {
    let bounds: Vec<u64> = items.iter().map(|(_, m)| m.to_u64().unwrap_or(u64::MAX)).collect();
    let mut counts = vec![0u64; items.len()];
    let mut out = Vec::new();
    loop {
        let mut i = 0;
        loop {
            if i == counts.len() {
                return out;
            }
            if counts[i] < bounds[i] {
                counts[i] += 1;
                break;
            }
            counts[i] = 0;
            i += 1;
        }
        let pick = |f: &dyn Fn(u64, u64) -> u64| -> Vec<(Term, Mult)> {
            items
                .iter()
                .zip(&counts)
                .zip(&bounds)
                .filter_map(|(((t, _), &c), &b)| Mult::new(f(c, b)).map(|m| (t.clone(), m)))
                .collect()
        };
        let picked = pick(&|c, _| c);
        let rest = pick(&|c, b| b - c);
        out.push((picked, (!rest.is_empty()).then_some(rest)));
    }
}

fn collapse_ac(op: crate::signature::OpId, mut items: Vec<(Term, Mult)>) -> Term {
    if items.len() == 1 && items[0].1.is_one() {
        items.pop().unwrap().0
    } else {
        Term::AC(op, items)
    }
}
