//! Concrete syntax for terms, patterns, contexts and equations.
//!
//! ```text
//! expr := atom (INFIX atom)*        one infix token per unparenthesized chain
//! atom := name | name '(' expr {',' expr} ')' | '?' ident | '(' expr ')'
//! ```
//!
//! Operations declared with an identifier instead of an infix token are
//! written in call form with at least two arguments, `max(a, b, c)`. The
//! hole of a context is written `[]`.

use std::fmt;

use crate::error::{Error, Result};
use crate::signature::{is_infix_token, Decl, OpId, Signature, INFIX_CHARS};
use crate::term::{Context, Term, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Name(String),
    Infix(String),
    Question,
    LParen,
    RParen,
    Comma,
    Hole,
    Equals,
    End,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l, col) = (line, column);
        let mut push = |tok, len: usize| {
            out.push(Spanned { tok, line: l, column: col });
            len
        };
        let len = if c == '\n' {
            line += 1;
            column = 0;
            1
        } else if c.is_whitespace() {
            1
        } else if c.is_ascii_alphanumeric() || c == '_' {
            let start = i;
            let mut j = i;
            if c.is_ascii_digit() {
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
            } else {
                while j < chars.len()
                    && (chars[j].is_ascii_alphanumeric() || chars[j] == '_' || chars[j] == '\'')
                {
                    j += 1;
                }
            }
            push(Tok::Name(chars[start..j].iter().collect()), j - start)
        } else if INFIX_CHARS.contains(&c) {
            let mut j = i;
            while j < chars.len() && INFIX_CHARS.contains(&chars[j]) {
                j += 1;
            }
            let token: String = chars[i..j].iter().collect();
            if !is_infix_token(&token) {
                return Err(Error::Parse {
                    line: l,
                    column: col,
                    message: format!("`{token}` is not an infix token"),
                });
            }
            push(Tok::Infix(token), j - i)
        } else if c == '[' && chars.get(i + 1) == Some(&']') {
            push(Tok::Hole, 2)
        } else {
            let tok = match c {
                '?' => Tok::Question,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                '=' => Tok::Equals,
                _ => {
                    return Err(Error::Parse {
                        line: l,
                        column: col,
                        message: format!("unexpected character `{c}`"),
                    })
                }
            };
            push(tok, 1)
        };
        i += len;
        column += len;
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

#[derive(Clone, Copy)]
struct Mode {
    vars: bool,
    hole: bool,
}

struct Parser<'a> {
    sig: &'a Signature,
    toks: Vec<Spanned>,
    pos: usize,
    mode: Mode,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, at: &Spanned, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: at.line,
            column: at.column,
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        let t = self.next();
        if t.tok == tok {
            Ok(())
        } else {
            self.error(&t, format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<Term> {
        let first = self.atom()?;
        let Tok::Infix(token) = self.peek().tok.clone() else {
            return Ok(first);
        };
        let op = match self.sig.lookup(&token) {
            Some(Decl::Op(op)) => op,
            _ => return Err(Error::UnknownIdentifier(token)),
        };
        let mut acc = first;
        while let Tok::Infix(next) = self.peek().tok.clone() {
            let at = self.next();
            if next != token {
                return Err(Error::MixedInfix {
                    line: at.line,
                    column: at.column,
                    first: token,
                    second: next,
                });
            }
            let rhs = self.atom()?;
            acc = Term::bin(self.sig, op, acc, rhs);
        }
        Ok(acc)
    }

    fn args(&mut self) -> Result<Vec<Term>> {
        self.expect(Tok::LParen, "`(`")?;
        let mut args = vec![self.expr()?];
        loop {
            let t = self.next();
            match t.tok {
                Tok::Comma => args.push(self.expr()?),
                Tok::RParen => return Ok(args),
                _ => return self.error(&t, "expected `,` or `)`"),
            }
        }
    }

    fn atom(&mut self) -> Result<Term> {
        let t = self.next();
        match t.tok {
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Question => {
                if !self.mode.vars {
                    return self.error(&t, "variables are only allowed in rules");
                }
                let name = self.next();
                match name.tok {
                    Tok::Name(n) if crate::signature::is_identifier(&n) => Ok(Term::var(&n)),
                    _ => self.error(&name, "expected a variable name after `?`"),
                }
            }
            Tok::Hole => {
                if !self.mode.hole {
                    return self.error(&t, "`[]` is only allowed in contexts");
                }
                Ok(Term::hole())
            }
            Tok::Name(ref name) => {
                let name = name.clone();
                let called = self.peek().tok == Tok::LParen;
                match self.sig.lookup(&name) {
                    None => Err(Error::UnknownIdentifier(name)),
                    Some(Decl::Unit(u)) => {
                        if called {
                            return self.error(self.peek(), format!("unit `{name}` takes no arguments"));
                        }
                        Ok(Term::Unit(u))
                    }
                    Some(Decl::Symbol(s)) => {
                        let args = if called { self.args()? } else { Vec::new() };
                        Term::app(self.sig, s, args)
                    }
                    Some(Decl::Op(op)) => {
                        if !called {
                            return self.error(&t, format!("`{name}` must be applied"));
                        }
                        let args = self.args()?;
                        self.fold_op(op, &name, args)
                    }
                }
            }
            _ => self.error(&t, "expected a term"),
        }
    }

    fn fold_op(&self, op: OpId, name: &str, args: Vec<Term>) -> Result<Term> {
        if args.len() < 2 {
            return Err(Error::ArityMismatch {
                symbol: name.to_owned(),
                expected: 2,
                found: args.len(),
            });
        }
        let mut it = args.into_iter();
        let first = it.next().unwrap();
        Ok(it.fold(first, |acc, x| Term::bin(self.sig, op, acc, x)))
    }

    fn finish(&mut self) -> Result<()> {
        let t = self.next();
        if t.tok == Tok::End {
            Ok(())
        } else {
            self.error(&t, "unexpected trailing input")
        }
    }
}

fn parser<'a>(sig: &'a Signature, text: &str, mode: Mode) -> Result<Parser<'a>> {
    Ok(Parser {
        sig,
        toks: lex(text)?,
        pos: 0,
        mode,
    })
}

/// Parses a ground term.
pub fn parse_term(sig: &Signature, text: &str) -> Result<Term> {
    let mut p = parser(sig, text, Mode { vars: false, hole: false })?;
    let t = p.expr()?;
    p.finish()?;
    Ok(t)
}

/// Parses a term that may contain `?x` variables.
pub fn parse_pattern(sig: &Signature, text: &str) -> Result<Term> {
    let mut p = parser(sig, text, Mode { vars: true, hole: false })?;
    let t = p.expr()?;
    p.finish()?;
    Ok(t)
}

/// Parses a ground term with exactly one `[]`.
pub fn parse_context(sig: &Signature, text: &str) -> Result<Context> {
    let mut p = parser(sig, text, Mode { vars: false, hole: true })?;
    let t = p.expr()?;
    p.finish()?;
    Context::from_term(t).ok_or_else(|| Error::Parse {
        line: 1,
        column: 1,
        message: "a context needs exactly one `[]`".into(),
    })
}

/// Parses `p = q`.
pub fn parse_equation(sig: &Signature, text: &str) -> Result<(Term, Term)> {
    let mut p = parser(sig, text, Mode { vars: true, hole: false })?;
    let lhs = p.expr()?;
    p.expect(Tok::Equals, "`=`")?;
    let rhs = p.expr()?;
    p.finish()?;
    Ok((lhs, rhs))
}

/// Canonical text of a term. AC items come out in term order with
/// multiplicities expanded, and parentheses appear only around an infix
/// node nested in another infix chain.
pub fn print_term(sig: &Signature, t: &Term) -> String {
    Printed(sig, t).to_string()
}

pub struct Printed<'a>(pub &'a Signature, pub &'a Term);

impl fmt::Display for Printed<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self.0, self.1, false)
    }
}

fn is_infix_node(sig: &Signature, t: &Term) -> bool {
    t.head_op().is_some_and(|o| sig.op(o).is_infix())
}

fn write_term(f: &mut fmt::Formatter<'_>, sig: &Signature, t: &Term, in_chain: bool) -> fmt::Result {
    match t {
        Term::Unit(u) => f.write_str(&sig.unit(*u).name),
        Term::Var(v) if *v == Var::hole() => f.write_str("[]"),
        Term::Var(v) => write!(f, "?{}", v.name()),
        Term::App(s, args) => {
            f.write_str(&sig.symbol(*s).name)?;
            if !args.is_empty() {
                write_args(f, sig, args.iter())?;
            }
            Ok(())
        }
        Term::A(o, _) | Term::AC(o, _) => {
            let items: Vec<&Term> = match t {
                Term::A(_, xs) => xs.iter().collect(),
                Term::AC(_, xs) => xs
                    .iter()
                    .flat_map(|(x, m)| {
                        let n = m.to_u64().expect("multiplicity too large to print");
                        std::iter::repeat_n(x, n as usize)
                    })
                    .collect(),
                _ => unreachable!(),
            };
            let info = sig.op(*o);
            if !info.is_infix() {
                f.write_str(&info.name)?;
                return write_args(f, sig, items.into_iter());
            }
            if in_chain {
                f.write_str("(")?;
            }
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    f.write_str(&info.name)?;
                }
                write_term(f, sig, x, is_infix_node(sig, x))?;
            }
            if in_chain {
                f.write_str(")")?;
            }
            Ok(())
        }
    }
}

fn write_args<'t>(
    f: &mut fmt::Formatter<'_>,
    sig: &Signature,
    args: impl Iterator<Item = &'t Term>,
) -> fmt::Result {
    f.write_str("(")?;
    for (i, x) in args.enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write_term(f, sig, x, false)?;
    }
    f.write_str(")")
}
