//! Symbol tables: free symbols, binary A/AC operations, and their units.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

macro_rules! id_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        pub struct $name(pub u32);

        impl $name {
            pub fn index(self) -> usize {
                self.0 as usize
            }
        }
    };
}

id_type!(
    /// Index of a free function symbol. Dense, in declaration order.
    SymbolId
);
id_type!(
    /// Index of a binary A or AC operation. Dense, in declaration order.
    OpId
);
id_type!(
    /// Index of a unit constant. Dense, in declaration order.
    UnitId
);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OpKind {
    /// Associative only.
    A,
    /// Associative and commutative.
    AC,
}

impl fmt::Display for OpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OpKind::A => "A",
            OpKind::AC => "AC",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolInfo {
    pub name: String,
    pub arity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpInfo {
    pub name: String,
    pub kind: OpKind,
    pub unit: Option<UnitId>,
}

impl OpInfo {
    /// Infix operations are written `a + b`; the others `max(a, b)`.
    pub fn is_infix(&self) -> bool {
        is_infix_token(&self.name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitInfo {
    pub name: String,
    /// Sorted, non-empty.
    pub ops: Vec<OpId>,
}

/// What a declared name refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decl {
    Symbol(SymbolId),
    Op(OpId),
    Unit(UnitId),
}

/// The registry every term is built against.
///
/// Ids are handed out densely per namespace, so comparing two ids of the
/// same kind compares their declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    symbols: Vec<SymbolInfo>,
    ops: Vec<OpInfo>,
    units: Vec<UnitInfo>,
    names: HashMap<String, Decl>,
    order: Vec<Decl>,
}

pub const INFIX_CHARS: &[char] = &['+', '-', '*', '/', '.', '&', '|', '^', '@'];

pub fn is_infix_token(s: &str) -> bool {
    let n = s.chars().count();
    (1..=2).contains(&n) && s.chars().all(|c| INFIX_CHARS.contains(&c))
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// Symbol and unit names: identifiers, or numerals such as `0` and `1`.
pub fn is_name(s: &str) -> bool {
    is_identifier(s) || (!s.is_empty() && s.chars().all(|c| c.is_ascii_digit()))
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    fn claim(&mut self, name: &str, decl: Decl) -> Result<()> {
        if self.names.contains_key(name) {
            return Err(Error::DuplicateName(name.to_owned()));
        }
        self.names.insert(name.to_owned(), decl);
        self.order.push(decl);
        Ok(())
    }

    pub fn declare_symbol(&mut self, name: &str, arity: usize) -> Result<SymbolId> {
        let id = SymbolId(self.symbols.len() as u32);
        self.claim(name, Decl::Symbol(id))?;
        self.symbols.push(SymbolInfo {
            name: name.to_owned(),
            arity,
        });
        Ok(id)
    }

    pub fn declare_op(&mut self, name: &str, kind: OpKind) -> Result<OpId> {
        let id = OpId(self.ops.len() as u32);
        self.claim(name, Decl::Op(id))?;
        self.ops.push(OpInfo {
            name: name.to_owned(),
            kind,
            unit: None,
        });
        Ok(id)
    }

    /// Declares `name` as a two-sided unit of every operation in `ops`.
    pub fn declare_unit(&mut self, name: &str, ops: &[OpId]) -> Result<UnitId> {
        if ops.is_empty() {
            return Err(Error::EmptyOpSet(name.to_owned()));
        }
        if self.names.contains_key(name) {
            return Err(Error::DuplicateName(name.to_owned()));
        }
        for &op in ops {
            let info = self
                .ops
                .get(op.index())
                .ok_or_else(|| Error::InconsistentSignature(format!("no operation {}", op.0)))?;
            if let Some(u) = info.unit {
                return Err(Error::OpAlreadyHasUnit {
                    op: info.name.clone(),
                    unit: self.units[u.index()].name.clone(),
                });
            }
        }
        let id = UnitId(self.units.len() as u32);
        self.claim(name, Decl::Unit(id))?;
        let mut ops = ops.to_vec();
        ops.sort();
        ops.dedup();
        for &op in &ops {
            self.ops[op.index()].unit = Some(id);
        }
        self.units.push(UnitInfo {
            name: name.to_owned(),
            ops,
        });
        Ok(id)
    }

    pub fn symbol(&self, id: SymbolId) -> &SymbolInfo {
        &self.symbols[id.index()]
    }

    pub fn op(&self, id: OpId) -> &OpInfo {
        &self.ops[id.index()]
    }

    pub fn unit(&self, id: UnitId) -> &UnitInfo {
        &self.units[id.index()]
    }

    pub fn unit_of(&self, op: OpId) -> Option<UnitId> {
        self.op(op).unit
    }

    pub fn lookup(&self, name: &str) -> Option<Decl> {
        self.names.get(name).copied()
    }

    pub fn symbols(&self) -> impl Iterator<Item = (SymbolId, &SymbolInfo)> {
        (0..).map(SymbolId).zip(&self.symbols)
    }

    pub fn ops(&self) -> impl Iterator<Item = (OpId, &OpInfo)> {
        (0..).map(OpId).zip(&self.ops)
    }

    pub fn units(&self) -> impl Iterator<Item = (UnitId, &UnitInfo)> {
        (0..).map(UnitId).zip(&self.units)
    }

    /// Declarations in the order they were made.
    pub fn declarations(&self) -> &[Decl] {
        &self.order
    }

    /// Checks that unit/op cross references agree in both directions.
    pub fn validate(&self) -> Result<()> {
        for (op, info) in self.ops() {
            if let Some(u) = info.unit {
                let unit = self.units.get(u.index()).ok_or_else(|| {
                    Error::InconsistentSignature(format!("`{}` points to a missing unit", info.name))
                })?;
                if !unit.ops.contains(&op) {
                    return Err(Error::InconsistentSignature(format!(
                        "`{}` names `{}` as unit but not conversely",
                        info.name, unit.name
                    )));
                }
            }
        }
        for (u, info) in self.units() {
            if info.ops.is_empty() {
                return Err(Error::EmptyOpSet(info.name.clone()));
            }
            for &op in &info.ops {
                if self.ops.get(op.index()).and_then(|o| o.unit) != Some(u) {
                    return Err(Error::InconsistentSignature(format!(
                        "unit `{}` lists an operation that does not point back",
                        info.name
                    )));
                }
            }
        }
        Ok(())
    }

    /// Reads the line-oriented signature format:
    ///
    /// ```text
    /// sym f 1
    /// op + : AC
    /// op max : AC
    /// unit 0 : + max
    /// ```
    pub fn parse(text: &str) -> Result<Signature> {
        let mut sig = Signature::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            let words: Vec<&str> = line.split_whitespace().collect();
            let err = |message: String| Error::Parse {
                line: lineno + 1,
                column: 1 + raw.len() - raw.trim_start().len(),
                message,
            };
            match words.as_slice() {
                [] => {}
                ["sym", name, arity] => {
                    if !is_name(name) {
                        return Err(err(format!("`{name}` is not a valid symbol name")));
                    }
                    let arity = arity
                        .parse()
                        .map_err(|_| err(format!("`{arity}` is not an arity")))?;
                    sig.declare_symbol(name, arity)?;
                }
                ["op", token, ":", kind] => {
                    if !is_infix_token(token) && !is_identifier(token) {
                        return Err(err(format!("`{token}` is not a valid operation token")));
                    }
                    let kind = match *kind {
                        "A" => OpKind::A,
                        "AC" => OpKind::AC,
                        other => return Err(err(format!("unknown kind `{other}`, expected A or AC"))),
                    };
                    sig.declare_op(token, kind)?;
                }
                ["unit", name, ":", ops @ ..] => {
                    if !is_name(name) {
                        return Err(err(format!("`{name}` is not a valid unit name")));
                    }
                    let ops = ops
                        .iter()
                        .map(|tok| match sig.lookup(tok) {
                            Some(Decl::Op(op)) => Ok(op),
                            _ => Err(err(format!("`{tok}` is not a declared operation"))),
                        })
                        .collect::<Result<Vec<_>>>()?;
                    sig.declare_unit(name, &ops)?;
                }
                _ => return Err(err(format!("cannot read declaration `{}`", line.trim()))),
            }
        }
        sig.validate()?;
        Ok(sig)
    }
}

impl FromStr for Signature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Signature::parse(s)
    }
}

/// Canonical text, in declaration order. Parsing it gives back an equal
/// signature.
impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for decl in &self.order {
            match *decl {
                Decl::Symbol(s) => {
                    let info = self.symbol(s);
                    writeln!(f, "sym {} {}", info.name, info.arity)?;
                }
                Decl::Op(o) => {
                    let info = self.op(o);
                    writeln!(f, "op {} : {}", info.name, info.kind)?;
                }
                Decl::Unit(u) => {
                    let info = self.unit(u);
                    write!(f, "unit {} :", info.name)?;
                    for &op in &info.ops {
                        write!(f, " {}", self.op(op).name)?;
                    }
                    writeln!(f)?;
                }
            }
        }
        Ok(())
    }
}
