//! Flattened terms, substitutions, contexts, and positions.
//!
//! Binary A nodes are stored as sequences and AC nodes as sorted multisets.
//! Every constructor in this module merges a child headed by the same
//! operation into its parent, so a `Term` never contains a same-op
//! parent/child pair, an A/AC node with fewer than two items, or an
//! unsorted multiset. Units are left in place; removing them is the job of
//! [`crate::normalize::norm`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::mult::Mult;
use crate::signature::{OpId, OpKind, Signature, SymbolId, UnitId};

/// A pattern variable name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Var {
        Var(Arc::from(name))
    }

    /// The hole of a [`Context`]. Not writable in the surface syntax.
    pub fn hole() -> Var {
        Var::new("%hole")
    }

    /// The fresh variable adjoined to a pattern when matching inside a
    /// larger A/AC node. Not writable in the surface syntax.
    pub fn extension() -> Var {
        Var::new("%ext")
    }

    /// Second extension variable, used on the right of A patterns.
    pub fn extension_right() -> Var {
        Var::new("%ext_r")
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    pub fn is_reserved(&self) -> bool {
        self.0.starts_with('%')
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "?{}", self.0)
    }
}

/// The derived order is the term order used everywhere: node kind first
/// (unit < variable < application < A node < AC node), then the id in
/// declaration order, then the children lexicographically. AC children
/// compare as sorted `(key, multiplicity)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Unit(UnitId),
    Var(Var),
    App(SymbolId, Vec<Term>),
    A(OpId, Vec<Term>),
    AC(OpId, Vec<(Term, Mult)>),
}

pub fn compare(t: &Term, u: &Term) -> Ordering {
    t.cmp(u)
}

/// Sorts a multiset and adds up the multiplicities of equal keys.
pub fn sort_multiset(mut items: Vec<(Term, Mult)>) -> Vec<(Term, Mult)> {
    items.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Vec<(Term, Mult)> = Vec::with_capacity(items.len());
    for (t, m) in items {
        match out.last_mut() {
            Some((last, n)) if *last == t => *n = &*n + &m,
            _ => out.push((t, m)),
        }
    }
    out
}

/// Linear merge of two sorted multisets.
pub fn merge_multisets(a: Vec<(Term, Mult)>, b: Vec<(Term, Mult)>) -> Vec<(Term, Mult)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut a = a.into_iter().peekable();
    let mut b = b.into_iter().peekable();
    loop {
        let ord = match (a.peek(), b.peek()) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => break,
        };
        match ord {
            Ordering::Less => out.push(a.next().unwrap()),
            Ordering::Greater => out.push(b.next().unwrap()),
            Ordering::Equal => {
                let (t, m) = a.next().unwrap();
                let (_, n) = b.next().unwrap();
                out.push((t, &m + &n));
            }
        }
    }
    out
}

impl Term {
    pub fn constant(s: SymbolId) -> Term {
        Term::App(s, Vec::new())
    }

    pub fn var(name: &str) -> Term {
        Term::Var(Var::new(name))
    }

    pub fn hole() -> Term {
        Term::Var(Var::hole())
    }

    /// Applies a free symbol, checking its arity.
    pub fn app(sig: &Signature, s: SymbolId, args: Vec<Term>) -> Result<Term> {
        let info = sig.symbol(s);
        if info.arity != args.len() {
            return Err(Error::ArityMismatch {
                symbol: info.name.clone(),
                expected: info.arity,
                found: args.len(),
            });
        }
        Ok(Term::App(s, args))
    }

    /// `l o r`, merged into any same-op children.
    pub fn bin(sig: &Signature, op: OpId, l: Term, r: Term) -> Term {
        match sig.op(op).kind {
            OpKind::A => Term::assoc(op, vec![l, r]),
            OpKind::AC => Term::comm(op, vec![(l, Mult::ONE), (r, Mult::ONE)]),
        }
    }

    /// An A node over `items`, splicing in items headed by `op`. The caller
    /// provides at least two items.
    pub fn assoc(op: OpId, items: Vec<Term>) -> Term {
        debug_assert!(items.len() >= 2);
        let mut flat = Vec::with_capacity(items.len());
        for item in items {
            match item {
                Term::A(o, inner) if o == op => flat.extend(inner),
                other => flat.push(other),
            }
        }
        Term::A(op, flat)
    }

    /// An AC node over `items`, splicing in items headed by `op` and
    /// sorting. The caller provides a total multiplicity of at least two.
    pub fn comm(op: OpId, items: Vec<(Term, Mult)>) -> Term {
        let mut flat = Vec::with_capacity(items.len());
        for (item, m) in items {
            match item {
                Term::AC(o, inner) if o == op => {
                    flat.extend(inner.into_iter().map(|(t, n)| (t, &n * &m)))
                }
                other => flat.push((other, m)),
            }
        }
        let node = Term::AC(op, sort_multiset(flat));
        debug_assert!(node.is_well_formed_node());
        node
    }

    fn is_well_formed_node(&self) -> bool {
        match self {
            Term::A(_, items) => items.len() >= 2,
            Term::AC(_, items) => {
                !items.is_empty()
                    && (items.len() >= 2 || !items[0].1.is_one())
                    && items.windows(2).all(|w| w[0].0 < w[1].0)
            }
            _ => true,
        }
    }

    /// The operation at the root, for A and AC nodes.
    pub fn head_op(&self) -> Option<OpId> {
        match self {
            Term::A(o, _) | Term::AC(o, _) => Some(*o),
            _ => None,
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Unit(_) => true,
            Term::Var(_) => false,
            Term::App(_, xs) | Term::A(_, xs) => xs.iter().all(Term::is_ground),
            Term::AC(_, xs) => xs.iter().all(|(t, _)| t.is_ground()),
        }
    }

    /// Variables in first-occurrence order.
    pub fn vars(&self) -> Vec<Var> {
        fn go(t: &Term, acc: &mut Vec<Var>) {
            match t {
                Term::Unit(_) => {}
                Term::Var(v) => {
                    if !acc.contains(v) {
                        acc.push(v.clone())
                    }
                }
                Term::App(_, xs) | Term::A(_, xs) => xs.iter().for_each(|x| go(x, acc)),
                Term::AC(_, xs) => xs.iter().for_each(|(x, _)| go(x, acc)),
            }
        }
        let mut acc = Vec::new();
        go(self, &mut acc);
        acc
    }

    /// Number of nodes of a strictly binary tree representing this term.
    /// Saturates at `u64::MAX`.
    pub fn size(&self) -> u64 {
        match self {
            Term::Unit(_) | Term::Var(_) => 1,
            Term::App(_, xs) => xs.iter().fold(1u64, |n, x| n.saturating_add(x.size())),
            Term::A(_, xs) => xs
                .iter()
                .fold(xs.len() as u64 - 1, |n, x| n.saturating_add(x.size())),
            Term::AC(_, xs) => {
                let mut n = 0u64;
                for (x, m) in xs {
                    let m = m.to_u64().unwrap_or(u64::MAX);
                    n = n.saturating_add(m.saturating_mul(x.size().saturating_add(1)));
                }
                n - 1
            }
        }
    }

    /// Checks arities, id ranges, and the structural invariants of A/AC
    /// nodes.
    pub fn check(&self, sig: &Signature) -> Result<()> {
        let bad = |msg: &str| Err(Error::InconsistentSignature(msg.to_owned()));
        match self {
            Term::Unit(u) => {
                if sig.units().nth(u.index()).is_none() {
                    return bad("unknown unit id");
                }
            }
            Term::Var(_) => {}
            Term::App(s, xs) => {
                let Some((_, info)) = sig.symbols().nth(s.index()) else {
                    return bad("unknown symbol id");
                };
                if info.arity != xs.len() {
                    return Err(Error::ArityMismatch {
                        symbol: info.name.clone(),
                        expected: info.arity,
                        found: xs.len(),
                    });
                }
                for x in xs {
                    x.check(sig)?;
                }
            }
            Term::A(o, xs) => {
                match sig.ops().nth(o.index()) {
                    Some((_, info)) if info.kind == OpKind::A => {}
                    _ => return bad("A node over a non-A operation"),
                }
                if !self.is_well_formed_node() {
                    return bad("A node with fewer than two items");
                }
                for x in xs {
                    if x.head_op() == Some(*o) {
                        return bad("nested A node of the same operation");
                    }
                    x.check(sig)?;
                }
            }
            Term::AC(o, xs) => {
                match sig.ops().nth(o.index()) {
                    Some((_, info)) if info.kind == OpKind::AC => {}
                    _ => return bad("AC node over a non-AC operation"),
                }
                if !self.is_well_formed_node() {
                    return bad("AC node unsorted or too small");
                }
                for (x, _) in xs {
                    if x.head_op() == Some(*o) {
                        return bad("nested AC node of the same operation");
                    }
                    x.check(sig)?;
                }
            }
        }
        Ok(())
    }

    /// Replaces variables by what `f` returns for them, re-merging nodes.
    /// Variables mapped to `None` are kept.
    pub fn replace_vars<F>(&self, f: &mut F) -> Result<Term>
    where
        F: FnMut(&Var) -> Result<Option<Term>>,
    {
        Ok(match self {
            Term::Unit(_) => self.clone(),
            Term::Var(v) => f(v)?.unwrap_or_else(|| self.clone()),
            Term::App(s, xs) => Term::App(
                *s,
                xs.iter().map(|x| x.replace_vars(f)).collect::<Result<_>>()?,
            ),
            Term::A(o, xs) => Term::assoc(
                *o,
                xs.iter().map(|x| x.replace_vars(f)).collect::<Result<_>>()?,
            ),
            Term::AC(o, xs) => Term::comm(
                *o,
                xs.iter()
                    .map(|(x, m)| Ok((x.replace_vars(f)?, m.clone())))
                    .collect::<Result<_>>()?,
            ),
        })
    }

    pub fn subterm(&self, pos: &Position) -> Option<&Term> {
        let mut t = self;
        for step in &pos.0 {
            t = match (t, *step) {
                (Term::App(_, xs), Step::Arg(i)) | (Term::A(_, xs), Step::Item(i)) => xs.get(i)?,
                (Term::AC(_, xs), Step::Key(i)) => &xs.get(i)?.0,
                _ => return None,
            };
        }
        Some(t)
    }
}

/// A finite map from variables to ground terms.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Substitution(BTreeMap<Var, Term>);

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, v: &Var) -> Option<&Term> {
        self.0.get(v)
    }

    /// Binds a fresh variable. Panics if `v` is already bound or `t` is not
    /// ground.
    pub fn bind(&mut self, v: Var, t: Term) {
        assert!(t.is_ground(), "substitution values are ground");
        let prev = self.0.insert(v, t);
        assert!(prev.is_none(), "variable bound twice");
    }

    pub fn with(mut self, v: Var, t: Term) -> Self {
        self.bind(v, t);
        self
    }

    pub fn remove(&mut self, v: &Var) -> Option<Term> {
        self.0.remove(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Term)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn map_values(&self, mut f: impl FnMut(&Term) -> Term) -> Substitution {
        Substitution(self.0.iter().map(|(v, t)| (v.clone(), f(t))).collect())
    }
}

impl FromIterator<(Var, Term)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (Var, Term)>>(iter: I) -> Self {
        let mut s = Substitution::new();
        for (v, t) in iter {
            s.bind(v, t);
        }
        s
    }
}

/// Instantiates a pattern. Every variable of `p` must be bound.
pub fn apply_subst(subst: &Substitution, p: &Term) -> Result<Term> {
    p.replace_vars(&mut |v| match subst.get(v) {
        Some(t) => Ok(Some(t.clone())),
        None => Err(Error::UnboundVariable(v.name().to_owned())),
    })
}

/// One step down a term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    /// Argument of a free symbol.
    Arg(usize),
    /// Item of an A node.
    Item(usize),
    /// Distinct key of an AC node, by index in the sorted multiset.
    Key(usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position(pub Vec<Step>);

impl Position {
    pub fn root() -> Position {
        Position(Vec::new())
    }

    pub fn child(&self, step: Step) -> Position {
        let mut path = self.0.clone();
        path.push(step);
        Position(path)
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        for (i, step) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            match step {
                Step::Arg(n) | Step::Item(n) | Step::Key(n) => write!(f, "{n}")?,
            }
        }
        Ok(())
    }
}

/// Every node of `t`, depth first, left to right, root first. AC nodes
/// contribute one entry per distinct key.
pub fn subterm_positions(t: &Term) -> Vec<(Position, Term)> {
    fn go(t: &Term, pos: Position, acc: &mut Vec<(Position, Term)>) {
        acc.push((pos.clone(), t.clone()));
        match t {
            Term::Unit(_) | Term::Var(_) => {}
            Term::App(_, xs) => {
                for (i, x) in xs.iter().enumerate() {
                    go(x, pos.child(Step::Arg(i)), acc)
                }
            }
            Term::A(_, xs) => {
                for (i, x) in xs.iter().enumerate() {
                    go(x, pos.child(Step::Item(i)), acc)
                }
            }
            Term::AC(_, xs) => {
                for (i, (x, _)) in xs.iter().enumerate() {
                    go(x, pos.child(Step::Key(i)), acc)
                }
            }
        }
    }
    let mut acc = Vec::new();
    go(t, Position::root(), &mut acc);
    acc
}

/// A term with exactly one hole.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Context(Term);

fn count_holes(t: &Term) -> usize {
    match t {
        Term::Unit(_) => 0,
        Term::Var(v) => usize::from(*v == Var::hole()),
        Term::App(_, xs) | Term::A(_, xs) => xs.iter().map(count_holes).sum(),
        Term::AC(_, xs) => xs
            .iter()
            .map(|(x, m)| count_holes(x) * m.to_u64().map_or(usize::MAX, |m| m as usize))
            .sum(),
    }
}

impl Context {
    /// The empty context `[]`.
    pub fn hole() -> Context {
        Context(Term::hole())
    }

    /// `None` unless `t` has exactly one hole.
    pub fn from_term(t: Term) -> Option<Context> {
        (count_holes(&t) == 1).then_some(Context(t))
    }

    pub fn term(&self) -> &Term {
        &self.0
    }

    pub fn into_term(self) -> Term {
        self.0
    }

    pub fn is_hole(&self) -> bool {
        self.0 == Term::hole()
    }

    /// `C[t]`, with same-op nodes merged across the hole boundary.
    pub fn plug(&self, t: &Term) -> Term {
        let hole = Var::hole();
        self.0
            .replace_vars(&mut |v| Ok((*v == hole).then(|| t.clone())))
            .expect("plugging cannot fail")
    }

    /// `C[D]`, itself a context.
    pub fn compose(&self, inner: &Context) -> Context {
        Context(self.plug(&inner.0))
    }

    /// The context around the node at `pos`. For an AC key of multiplicity
    /// `m`, the other `m - 1` copies stay in the context.
    pub fn at(t: &Term, pos: &Position) -> Option<Context> {
        fn go(t: &Term, path: &[Step]) -> Option<Term> {
            let Some((step, rest)) = path.split_first() else {
                return Some(Term::hole());
            };
            Some(match (t, *step) {
                (Term::App(s, xs), Step::Arg(i)) => {
                    let mut xs = xs.clone();
                    xs[i] = go(xs.get(i)?, rest)?;
                    Term::App(*s, xs)
                }
                (Term::A(o, xs), Step::Item(i)) => {
                    let mut xs = xs.clone();
                    xs[i] = go(xs.get(i)?, rest)?;
                    Term::A(*o, xs)
                }
                (Term::AC(o, xs), Step::Key(i)) => {
                    let (key, m) = xs.get(i)?;
                    let inner = go(key, rest)?;
                    let mut items: Vec<(Term, Mult)> = Vec::with_capacity(xs.len() + 1);
                    for (j, (x, n)) in xs.iter().enumerate() {
                        if j != i {
                            items.push((x.clone(), n.clone()));
                        } else if let Some(left) = m.pred() {
                            items.push((x.clone(), left));
                        }
                    }
                    items.push((inner, Mult::ONE));
                    Term::AC(*o, sort_multiset(items))
                }
                _ => return None,
            })
        }
        go(t, &pos.0).map(Context)
    }
}
