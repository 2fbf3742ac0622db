//! Strictly binary terms and their closure under the axioms.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::signature::{OpId, OpKind, Signature, SymbolId, UnitId};
use crate::term::Term;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RawTerm {
    Unit(UnitId),
    App(SymbolId, Vec<RawTerm>),
    Node(OpId, Box<RawTerm>, Box<RawTerm>),
}

impl RawTerm {
    pub fn node(op: OpId, l: RawTerm, r: RawTerm) -> RawTerm {
        RawTerm::Node(op, Box::new(l), Box::new(r))
    }

    pub fn size(&self) -> usize {
        match self {
            RawTerm::Unit(_) => 1,
            RawTerm::App(_, xs) => 1 + xs.iter().map(RawTerm::size).sum::<usize>(),
            RawTerm::Node(_, l, r) => 1 + l.size() + r.size(),
        }
    }

    pub fn to_term(&self, sig: &Signature) -> Term {
        match self {
            RawTerm::Unit(u) => Term::Unit(*u),
            RawTerm::App(s, xs) => Term::App(*s, xs.iter().map(|x| x.to_term(sig)).collect()),
            RawTerm::Node(o, l, r) => Term::bin(sig, *o, l.to_term(sig), r.to_term(sig)),
        }
    }

    /// A representation of a ground term: A items nest to the right, AC
    /// items are expanded in order and nest to the right. `None` for terms
    /// with variables or multiplicities beyond `usize`.
    pub fn from_term(t: &Term) -> Option<RawTerm> {
        match t {
            Term::Var(_) => None,
            Term::Unit(u) => Some(RawTerm::Unit(*u)),
            Term::App(s, xs) => Some(RawTerm::App(
                *s,
                xs.iter().map(RawTerm::from_term).collect::<Option<_>>()?,
            )),
            Term::A(o, xs) => {
                let items = xs.iter().map(RawTerm::from_term).collect::<Option<Vec<_>>>()?;
                Some(fold_right(*o, items))
            }
            Term::AC(o, xs) => {
                let mut items = Vec::new();
                for (x, m) in xs {
                    let r = RawTerm::from_term(x)?;
                    let m = usize::try_from(m.to_u64()?).ok()?;
                    items.extend(std::iter::repeat_n(r, m));
                }
                Some(fold_right(*o, items))
            }
        }
    }
}

fn fold_right(op: OpId, mut items: Vec<RawTerm>) -> RawTerm {
    let mut acc = items.pop().expect("nodes have items");
    while let Some(x) = items.pop() {
        acc = RawTerm::node(op, x, acc);
    }
    acc
}

/// Every raw term of exactly `size` nodes over the ground atoms of `sig`.
pub fn enumerate(sig: &Signature, size: usize) -> Vec<RawTerm> {
    let mut memo = HashMap::new();
    enumerate_memo(sig, size, &mut memo)
}

/// Every raw term of at most `size` nodes, smallest first.
pub fn enumerate_up_to(sig: &Signature, size: usize) -> Vec<RawTerm> {
    let mut memo = HashMap::new();
    (1..=size).flat_map(|n| enumerate_memo(sig, n, &mut memo)).collect()
}

fn enumerate_memo(
    sig: &Signature,
    size: usize,
    memo: &mut HashMap<usize, Vec<RawTerm>>,
) -> Vec<RawTerm> {
    if let Some(v) = memo.get(&size) {
        return v.clone();
    }
    let mut out = Vec::new();
    if size == 1 {
        out.extend(sig.units().map(|(u, _)| RawTerm::Unit(u)));
    }
    for (s, info) in sig.symbols() {
        if size >= 1 {
            for args in sequences(sig, info.arity, size - 1, memo) {
                out.push(RawTerm::App(s, args));
            }
        }
    }
    if size >= 3 {
        for ls in 1..size - 1 {
            let left = enumerate_memo(sig, ls, memo);
            let right = enumerate_memo(sig, size - 1 - ls, memo);
            for (o, _) in sig.ops() {
                for l in &left {
                    for r in &right {
                        out.push(RawTerm::node(o, l.clone(), r.clone()));
                    }
                }
            }
        }
    }
    memo.insert(size, out.clone());
    out
}

/// Sequences of `n` raw terms with sizes summing to `total`.
fn sequences(
    sig: &Signature,
    n: usize,
    total: usize,
    memo: &mut HashMap<usize, Vec<RawTerm>>,
) -> Vec<Vec<RawTerm>> {
    if n == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=total.saturating_sub(n - 1) {
        let heads = enumerate_memo(sig, first, memo);
        if heads.is_empty() {
            continue;
        }
        for tail in sequences(sig, n - 1, total - first, memo) {
            for h in &heads {
                let mut v = Vec::with_capacity(n);
                v.push(h.clone());
                v.extend(tail.iter().cloned());
                out.push(v);
            }
        }
    }
    out
}

/// Terms one axiom application away from `r`: associativity either way,
/// commutativity of AC operations, and units removed or introduced on
/// either side, at any position.
pub fn axiom_neighbors(sig: &Signature, r: &RawTerm) -> Vec<RawTerm> {
    let mut out = Vec::new();
    // introduction at this position
    for (o, info) in sig.ops() {
        if let Some(u) = info.unit {
            out.push(RawTerm::node(o, RawTerm::Unit(u), r.clone()));
            out.push(RawTerm::node(o, r.clone(), RawTerm::Unit(u)));
        }
    }
    match r {
        RawTerm::Unit(_) => {}
        RawTerm::App(s, xs) => {
            for i in 0..xs.len() {
                for x in axiom_neighbors(sig, &xs[i]) {
                    let mut ys = xs.clone();
                    ys[i] = x;
                    out.push(RawTerm::App(*s, ys));
                }
            }
        }
        RawTerm::Node(o, l, rt) => {
            let info = sig.op(*o);
            if let RawTerm::Node(o2, x, y) = &**l {
                if o2 == o {
                    out.push(RawTerm::node(*o, (**x).clone(), RawTerm::node(*o, (**y).clone(), (**rt).clone())));
                }
            }
            if let RawTerm::Node(o2, y, z) = &**rt {
                if o2 == o {
                    out.push(RawTerm::node(*o, RawTerm::node(*o, (**l).clone(), (**y).clone()), (**z).clone()));
                }
            }
            if info.kind == OpKind::AC {
                out.push(RawTerm::node(*o, (**rt).clone(), (**l).clone()));
            }
            if let Some(u) = info.unit {
                if **l == RawTerm::Unit(u) {
                    out.push((**rt).clone());
                }
                if **rt == RawTerm::Unit(u) {
                    out.push((**l).clone());
                }
            }
            for x in axiom_neighbors(sig, l) {
                out.push(RawTerm::Node(*o, Box::new(x), rt.clone()));
            }
            for x in axiom_neighbors(sig, rt) {
                out.push(RawTerm::Node(*o, l.clone(), Box::new(x)));
            }
        }
    }
    out
}

/// Every raw term reachable from `r` through axiom applications without
/// ever exceeding `size_bound` nodes.
pub fn ac_closure(sig: &Signature, r: &RawTerm, size_bound: usize) -> BTreeSet<RawTerm> {
    let mut seen = BTreeSet::new();
    if r.size() > size_bound {
        return seen;
    }
    let mut queue = VecDeque::from([r.clone()]);
    seen.insert(r.clone());
    while let Some(x) = queue.pop_front() {
        for y in axiom_neighbors(sig, &x) {
            if y.size() <= size_bound && !seen.contains(&y) {
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    seen
}

/// The default bound: room to introduce a unit next to both terms.
pub fn default_bound(t: &Term, u: &Term) -> usize {
    (t.size().saturating_add(u.size()).saturating_add(2)) as usize
}

/// Equality by bounded search through the axioms.
pub fn oracle_eq(sig: &Signature, t: &Term, u: &Term, size_bound: usize) -> bool {
    let (Some(rt), Some(ru)) = (RawTerm::from_term(t), RawTerm::from_term(u)) else {
        return false;
    };
    rt == ru || ac_closure(sig, &rt, size_bound).contains(&ru)
}

/// The partition of all raw terms up to a size into classes connected by
/// axiom steps that stay within that size.
pub struct ClosureClasses {
    terms: Vec<RawTerm>,
    index: HashMap<RawTerm, usize>,
    parent: Vec<usize>,
}

impl ClosureClasses {
    pub fn build(sig: &Signature, size_bound: usize) -> ClosureClasses {
        let terms = enumerate_up_to(sig, size_bound);
        let index: HashMap<RawTerm, usize> =
            terms.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let mut classes = ClosureClasses { parent: (0..terms.len()).collect(), terms, index };
        for i in 0..classes.terms.len() {
            for y in axiom_neighbors(sig, &classes.terms[i]) {
                if let Some(&j) = classes.index.get(&y) {
                    classes.union(i, j);
                }
            }
        }
        classes
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, i: usize, j: usize) {
        let (a, b) = (self.find(i), self.find(j));
        if a != b {
            self.parent[a.max(b)] = a.min(b);
        }
    }

    pub fn terms(&self) -> &[RawTerm] {
        &self.terms
    }

    /// Class label of every term, in the order of [`Self::terms`].
    pub fn labels(&mut self) -> Vec<usize> {
        (0..self.terms.len()).map(|i| self.find(i)).collect()
    }

    pub fn class_of(&mut self, r: &RawTerm) -> Option<usize> {
        let i = *self.index.get(r)?;
        Some(self.find(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalize::eq_ac;
    use crate::syntax::parse_term;

    fn raw(sig: &Signature, s: &str) -> RawTerm {
        RawTerm::from_term(&parse_term(sig, s).unwrap()).unwrap()
    }

    #[test]
    fn closure_examples() {
        let sig = Signature::parse("sym a 0\nsym b 0\nsym c 0\nop + : AC\nop * : A\nunit 1 : *\n").unwrap();
        let ab = raw(&sig, "a+b");
        assert!(ac_closure(&sig, &ab, 3).contains(&raw(&sig, "b+a")));
        let a1 = raw(&sig, "a*1");
        assert!(ac_closure(&sig, &a1, 3).contains(&raw(&sig, "a")));
        let t = raw(&sig, "(a+b)+c");
        assert_eq!(ac_closure(&sig, &t, 5).len(), 12);
        // closure is symmetric
        let c = ac_closure(&sig, &t, 5);
        for x in &c {
            assert!(ac_closure(&sig, x, 5).contains(&t));
        }
    }

    #[test]
    fn oracle_equality() {
        let sig = Signature::parse("sym a 0\nsym b 0\nop + : AC\nop * : A\nunit 0 : +\n").unwrap();
        let t = |s| parse_term(&sig, s).unwrap();
        assert!(oracle_eq(&sig, &t("a+b"), &t("b+a"), 3));
        for bound in [3, 5, 9, 11] {
            assert!(!oracle_eq(&sig, &t("a*b"), &t("b*a"), bound));
        }
        assert!(oracle_eq(&sig, &t("(a+0)*b"), &t("a*(0+b)"), 7));
        assert!(oracle_eq(&sig, &t("a*(0+b)"), &t("a*b"), 5));
    }

    #[test]
    fn enumeration_counts() {
        let sig = Signature::parse("sym a 0\nsym f 1\nop + : AC\n").unwrap();
        // a; f(a); f(f(a)), a+a; ...
        assert_eq!(enumerate(&sig, 1).len(), 1);
        assert_eq!(enumerate(&sig, 2).len(), 1);
        assert_eq!(enumerate(&sig, 3).len(), 2);
        for n in 1..6 {
            assert!(enumerate(&sig, n).iter().all(|r| r.size() == n));
        }
    }

    #[test]
    fn round_trip_through_terms() {
        let sig = Signature::parse("sym a 0\nsym b 0\nop + : AC\nop * : A\nunit 0 : +\n").unwrap();
        for r in enumerate_up_to(&sig, 5) {
            let t = r.to_term(&sig);
            let back = RawTerm::from_term(&t).unwrap();
            assert!(eq_ac(&sig, &back.to_term(&sig), &t));
            assert_eq!(back.size() as u64, t.size());
        }
    }

    #[test]
    fn classes_match_closures() {
        let sig = Signature::parse("sym a 0\nop + : AC\nop * : A\nunit 0 : +\n").unwrap();
        let mut classes = ClosureClasses::build(&sig, 5);
        let terms = classes.terms().to_vec();
        for x in &terms {
            let cx = classes.class_of(x).unwrap();
            let closure = ac_closure(&sig, x, 5);
            for y in &terms {
                assert_eq!(classes.class_of(y) == Some(cx), closure.contains(y));
            }
        }
    }
}
