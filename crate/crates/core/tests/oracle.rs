mod common;

use acrw_core::oracle::{ac_closure, default_bound, enumerate_up_to, eval, oracle_eq, MatrixModel, RawTerm, SeqModel};
use acrw_core::{eq_ac, norm, parse_term, Signature};

fn sig() -> Signature {
    Signature::parse("sym a 0\nsym b 0\nop + : AC\nop * : A\nunit 0 : +\n").unwrap()
}

#[test]
fn default_bound_agrees_with_normal_forms() {
    let sig = sig();
    let terms = enumerate_up_to(&sig, 3);
    let closures: Vec<_> = terms
        .iter()
        .map(|r| ac_closure(&sig, r, default_bound(&r.to_term(&sig), &r.to_term(&sig))))
        .collect();
    for (i, r) in terms.iter().enumerate() {
        for u in &terms {
            let (t, v) = (r.to_term(&sig), u.to_term(&sig));
            assert_eq!(closures[i].contains(u), eq_ac(&sig, &t, &v), "{r:?} {u:?}");
            assert_eq!(oracle_eq(&sig, &t, &v, default_bound(&t, &v)), eq_ac(&sig, &t, &v));
        }
    }
}

#[test]
fn closure_is_symmetric() {
    let sig = sig();
    for r in enumerate_up_to(&sig, 3) {
        for u in ac_closure(&sig, &r, 5) {
            assert!(ac_closure(&sig, &u, 5).contains(&r));
        }
    }
}

#[test]
fn commutation_needs_commutativity() {
    let sig = sig();
    let t = parse_term(&sig, "a*b").unwrap();
    let u = parse_term(&sig, "b*a").unwrap();
    assert!(!oracle_eq(&sig, &t, &u, default_bound(&t, &u)));
    let t = parse_term(&sig, "(a*0)+b").unwrap();
    let u = parse_term(&sig, "b+(a*0)").unwrap();
    assert!(oracle_eq(&sig, &t, &u, default_bound(&t, &u)));
}

#[test]
fn equal_terms_evaluate_equally() {
    let sig = sig();
    let seq = SeqModel::new(&sig, 11);
    let mat = MatrixModel::new(&sig, 11);
    let terms: Vec<_> = enumerate_up_to(&sig, 5).iter().map(|r| r.to_term(&sig)).collect();
    for t in &terms {
        let n = norm(&sig, t);
        assert_eq!(eval(&sig, &seq, t), eval(&sig, &seq, &n));
        assert_eq!(eval(&sig, &mat, t), eval(&sig, &mat, &n));
        assert_eq!(RawTerm::from_term(&n).map(|r| r.to_term(&sig)).map(|x| norm(&sig, &x)), Some(n));
    }
}
