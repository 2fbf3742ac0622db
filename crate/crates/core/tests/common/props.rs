#![allow(dead_code)]

use std::cmp::Ordering;
use std::sync::Arc;

use proptest::prelude::*;
use proptest::sample::{select, Index};
use proptest::test_runner::TestCaseError;

use acrw_core::oracle::{eval, MatrixModel, SeqModel};
use acrw_core::rewrite::list_instances;
use acrw_core::{
    apply_subst, eq_ac, match_subterms, norm, parse_pattern, parse_term, print_term, rewrite_step, subterm_positions,
    validate_nf, Context, Direction, Equation, Signature, StepOptions, Substitution, SymbolId, Term, Var,
};

pub const SIG: &str = "\
sym a 0
sym b 0
sym c 0
sym f 1
sym g 2
op + : AC
op max : AC
op * : A
op . : A
unit 0 : + max
unit 1 : *
";

pub fn sig() -> Arc<Signature> {
    Arc::new(Signature::parse(SIG).unwrap())
}

fn leaves(sig: &Signature, vars: bool) -> Vec<Term> {
    let mut out = super::ground_leaves(sig);
    if vars {
        out.push(Term::var("x"));
        out.push(Term::var("y"));
    }
    out
}

fn build(sig: Arc<Signature>, leaves: Vec<Term>, depth: u32) -> BoxedStrategy<Term> {
    let by_arity = |n: usize| -> Vec<SymbolId> {
        sig.symbols().filter(|(_, i)| i.arity == n).map(|(s, _)| s).collect()
    };
    let unary = by_arity(1);
    let binary = by_arity(2);
    let ops: Vec<_> = sig.ops().map(|(o, _)| o).collect();
    select(leaves)
        .prop_recursive(depth, 24, 3, move |inner| {
            let sig = sig.clone();
            prop_oneof![
                1 => (select(unary.clone()), inner.clone()).prop_map(|(s, x)| Term::App(s, vec![x])),
                1 => (select(binary.clone()), inner.clone(), inner.clone())
                    .prop_map(|(s, x, y)| Term::App(s, vec![x, y])),
                4 => (select(ops.clone()), inner.clone(), inner)
                    .prop_map(move |(o, l, r)| Term::bin(&sig, o, l, r)),
            ]
        })
        .boxed()
}

pub fn ground(sig: &Arc<Signature>) -> BoxedStrategy<Term> {
    build(sig.clone(), leaves(sig, false), 4)
}

pub fn small_ground(sig: &Arc<Signature>) -> BoxedStrategy<Term> {
    build(sig.clone(), leaves(sig, false), 2)
}

pub fn pattern(sig: &Arc<Signature>) -> BoxedStrategy<Term> {
    build(sig.clone(), leaves(sig, true), 3)
}

/// A context over a ground term: the hole at some node, possibly next to
/// a sibling under an operation.
pub fn context(sig: &Arc<Signature>) -> BoxedStrategy<Context> {
    let sig2 = sig.clone();
    let ops: Vec<_> = sig.ops().map(|(o, _)| o).collect();
    (
        ground(sig),
        any::<Index>(),
        proptest::option::of((select(ops), small_ground(sig), any::<bool>())),
    )
        .prop_map(move |(t, at, side)| {
            let nt = norm(&sig2, &t);
            let positions = subterm_positions(&nt);
            let (pos, _) = &positions[at.index(positions.len())];
            let outer = Context::at(&nt, pos).unwrap();
            match side {
                None => outer,
                Some((o, s, left)) => {
                    let shell = if left {
                        Term::bin(&sig2, o, s, Term::hole())
                    } else {
                        Term::bin(&sig2, o, Term::hole(), s)
                    };
                    outer.compose(&Context::from_term(shell).unwrap())
                }
            }
        })
        .boxed()
}

fn fail(msg: String) -> TestCaseError {
    TestCaseError::fail(msg)
}

pub fn norm_idempotent(sig: &Signature, t: &Term) -> Result<(), TestCaseError> {
    let n = norm(sig, t);
    prop_assert_eq!(&norm(sig, &n), &n);
    prop_assert!(validate_nf(sig, &n));
    prop_assert!(eq_ac(sig, t, &n));
    Ok(())
}

pub fn eval_respects_norm(sig: &Signature, t: &Term, seed: u64) -> Result<(), TestCaseError> {
    let n = norm(sig, t);
    let seq = SeqModel::new(sig, seed);
    prop_assert_eq!(eval(sig, &seq, &n).unwrap(), eval(sig, &seq, t).unwrap());
    let mat = MatrixModel::new(sig, seed);
    prop_assert_eq!(eval(sig, &mat, &n).unwrap(), eval(sig, &mat, t).unwrap());
    Ok(())
}

pub fn compare_is_total(sig: &Signature, t: &Term, u: &Term, v: &Term) -> Result<(), TestCaseError> {
    let (t, u, v) = (norm(sig, t), norm(sig, u), norm(sig, v));
    let cmp = acrw_core::term::compare;
    prop_assert_eq!(cmp(&t, &u), cmp(&u, &t).reverse());
    prop_assert_eq!(cmp(&t, &u) == Ordering::Equal, t == u);
    prop_assert_eq!(cmp(&t, &t), Ordering::Equal);
    let mut xs = [&t, &u, &v];
    xs.sort_by(|x, y| cmp(x, y));
    prop_assert!(cmp(xs[0], xs[1]) != Ordering::Greater);
    prop_assert!(cmp(xs[1], xs[2]) != Ordering::Greater);
    prop_assert!(cmp(xs[0], xs[2]) != Ordering::Greater);
    Ok(())
}

pub fn print_parse_round_trip(sig: &Signature, t: &Term, p: &Term) -> Result<(), TestCaseError> {
    let nt = norm(sig, t);
    let text = print_term(sig, &nt);
    let back = parse_term(sig, &text).map_err(|e| fail(format!("{text}: {e}")))?;
    prop_assert_eq!(&back, &nt, "{}", text);
    let np = norm(sig, p);
    let text = print_term(sig, &np);
    let back = parse_pattern(sig, &text).map_err(|e| fail(format!("{text}: {e}")))?;
    prop_assert_eq!(&back, &np, "{}", text);
    // spacing is not significant
    let spaced = text.replace('+', " + ").replace(',', " , ");
    prop_assert_eq!(parse_pattern(sig, &spaced).unwrap(), np);
    Ok(())
}

fn subst(x: &Term, y: &Term) -> Substitution {
    Substitution::new().with(Var::new("x"), x.clone()).with(Var::new("y"), y.clone())
}

fn restrict(s: &Substitution, p: &Term) -> Substitution {
    p.vars().into_iter().map(|v| (v.clone(), s.get(&v).unwrap().clone())).collect()
}

/// A pattern instance planted under a context is found again, unless it is
/// a unit, in which case the warning is raised.
pub fn planted_instance_found(
    sig: &Signature,
    p: &Term,
    x: &Term,
    y: &Term,
    c: &Context,
) -> Result<(), TestCaseError> {
    let p = norm(sig, p);
    if matches!(p, Term::Var(_)) {
        return Ok(());
    }
    let sigma = restrict(&subst(&norm(sig, x), &norm(sig, y)), &p);
    let instance = apply_subst(&sigma, &p).unwrap();
    let t = c.plug(&instance);
    let out = match_subterms(sig, &p, &t).map_err(|e| fail(e.to_string()))?;
    for s in &out.solutions {
        prop_assert!(eq_ac(sig, &s.context.plug(&apply_subst(&s.subst, &p).unwrap()), &t));
    }
    if matches!(norm(sig, &instance), Term::Unit(_)) {
        prop_assert!(out.warning);
        return Ok(());
    }
    let want_c = norm(sig, c.term());
    let found = out.solutions.iter().any(|s| {
        norm(sig, s.context.term()) == want_c
            && s.subst.len() == sigma.len()
            && sigma.iter().all(|(v, val)| s.subst.get(v).is_some_and(|w| eq_ac(sig, w, val)))
    });
    prop_assert!(
        found,
        "pattern {} in {} under {}",
        print_term(sig, &p),
        print_term(sig, &t),
        print_term(sig, c.term())
    );
    Ok(())
}

/// Makes `rhs` mention exactly the variables of `lhs`.
pub fn same_vars(sig: &Signature, lhs: &Term, rhs: &Term) -> Term {
    let lv = lhs.vars();
    let fallback = lv.first().map(|v| Term::Var(v.clone()));
    let mut rhs = rhs
        .replace_vars(&mut |v| {
            Ok(if lv.contains(v) { None } else { Some(fallback.clone().unwrap_or_else(|| Term::constant(SymbolId(0)))) })
        })
        .unwrap();
    let g = sig.symbols().find(|(_, i)| i.arity == 2).map(|(s, _)| s).unwrap();
    for v in lv {
        if !rhs.vars().contains(&v) {
            rhs = Term::App(g, vec![rhs, Term::Var(v)]);
        }
    }
    rhs
}

/// Rewriting left to right and then right to left at the matching place
/// gives back the original term.
pub fn rewrite_round_trip(
    sig: &Signature,
    lhs: &Term,
    rhs: &Term,
    x: &Term,
    y: &Term,
    c: &Context,
) -> Result<(), TestCaseError> {
    let lhs = norm(sig, lhs);
    let rhs = norm(sig, &same_vars(sig, &lhs, rhs));
    if matches!(lhs, Term::Var(_)) || matches!(rhs, Term::Var(_)) {
        return Ok(());
    }
    let eq = Equation::new(lhs.clone(), rhs.clone());
    let sigma = restrict(&subst(&norm(sig, x), &norm(sig, y)), &lhs);
    let t = c.plug(&apply_subst(&sigma, &lhs).unwrap());
    let step = match rewrite_step(sig, &eq, &t, StepOptions::default()) {
        Ok(step) => step,
        Err(acrw_core::Error::NoMatch { warning: true }) => return Ok(()),
        Err(e) => return Err(fail(e.to_string())),
    };
    prop_assert!(step.verified);
    if matches!(norm(sig, &apply_subst(&step.solution.subst, &rhs).unwrap()), Term::Unit(_)) {
        return Ok(());
    }
    let back = list_instances(sig, &eq, &step.result, Direction::RtoL).map_err(|e| fail(e.to_string()))?;
    let mut restored = false;
    'search: for (i, occ) in back.occurrences.iter().enumerate() {
        for j in 0..occ.solutions.len() {
            let opts = StepOptions { occurrence: i, substitution: j, direction: Direction::RtoL };
            let undo = rewrite_step(sig, &eq, &step.result, opts).map_err(|e| fail(e.to_string()))?;
            if eq_ac(sig, &undo.result, &t) {
                restored = true;
                break 'search;
            }
        }
    }
    prop_assert!(
        restored,
        "{} = {} on {} gave {}",
        print_term(sig, &lhs),
        print_term(sig, &rhs),
        print_term(sig, &t),
        print_term(sig, &step.result)
    );
    Ok(())
}
