//! Concrete models of a signature, and homomorphic evaluation into them.

use std::fmt::Debug;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::mult::Mult;
use crate::signature::{OpId, OpKind, Signature, SymbolId, UnitId};
use crate::term::Term;

/// A carrier with an interpretation for symbols, operations and units.
/// `None` means the id is not interpreted.
pub trait Interpretation {
    type Value: Clone + PartialEq + Debug;

    fn symbol(&self, s: SymbolId, args: &[Self::Value]) -> Option<Self::Value>;
    fn op(&self, o: OpId, l: &Self::Value, r: &Self::Value) -> Option<Self::Value>;
    fn unit(&self, u: UnitId) -> Option<Self::Value>;
}

/// Evaluates a ground term. An AC item of multiplicity `m` is combined with
/// itself `m` times by repeated doubling.
pub fn eval<I: Interpretation>(sig: &Signature, model: &I, t: &Term) -> Result<I::Value> {
    let missing = |name: &str| Error::MissingInterpretation(name.to_owned());
    match t {
        Term::Var(v) => Err(Error::UnboundVariable(v.name().to_owned())),
        Term::Unit(u) => model.unit(*u).ok_or_else(|| missing(&sig.unit(*u).name)),
        Term::App(s, xs) => {
            let args = xs.iter().map(|x| eval(sig, model, x)).collect::<Result<Vec<_>>>()?;
            model.symbol(*s, &args).ok_or_else(|| missing(&sig.symbol(*s).name))
        }
        Term::A(o, xs) => {
            let mut acc: Option<I::Value> = None;
            for x in xs {
                let v = eval(sig, model, x)?;
                acc = Some(match acc {
                    None => v,
                    Some(a) => model.op(*o, &a, &v).ok_or_else(|| missing(&sig.op(*o).name))?,
                });
            }
            acc.ok_or(Error::InternalSizeZero)
        }
        Term::AC(o, xs) => {
            let combine = |l: &I::Value, r: &I::Value| {
                model.op(*o, l, r).ok_or_else(|| missing(&sig.op(*o).name))
            };
            let mut acc: Option<I::Value> = None;
            for (x, m) in xs {
                let v = copy(&combine, &eval(sig, model, x)?, m)?;
                acc = Some(match acc {
                    None => v,
                    Some(a) => combine(&a, &v)?,
                });
            }
            acc.ok_or(Error::InternalSizeZero)
        }
    }
}

fn copy<V: Clone>(combine: &impl Fn(&V, &V) -> Result<V>, x: &V, m: &Mult) -> Result<V> {
    let mut bits = m.bits_msb_first().into_iter();
    bits.next();
    let mut acc = x.clone();
    for bit in bits {
        acc = combine(&acc, &acc)?;
        if bit {
            acc = combine(&acc, x)?;
        }
    }
    Ok(acc)
}

/// Checks associativity, commutativity of AC operations, and neutrality of
/// units on every combination of `samples`. Returns a description of the
/// first violated law.
pub fn check_laws<I: Interpretation>(
    sig: &Signature,
    model: &I,
    samples: &[I::Value],
) -> std::result::Result<(), String> {
    for (o, info) in sig.ops() {
        let op = |l: &I::Value, r: &I::Value| {
            model.op(o, l, r).ok_or_else(|| format!("{} is not interpreted", info.name))
        };
        for x in samples {
            for y in samples {
                if info.kind == OpKind::AC && op(x, y)? != op(y, x)? {
                    return Err(format!("{} is not commutative on {x:?}, {y:?}", info.name));
                }
                for z in samples {
                    if op(&op(x, y)?, z)? != op(x, &op(y, z)?)? {
                        return Err(format!("{} is not associative on {x:?}, {y:?}, {z:?}", info.name));
                    }
                }
            }
        }
        if let Some(u) = info.unit {
            let e = model
                .unit(u)
                .ok_or_else(|| format!("{} is not interpreted", sig.unit(u).name))?;
            for x in samples {
                if op(&e, x)? != *x || op(x, &e)? != *x {
                    return Err(format!("{} is not neutral for {} on {x:?}", sig.unit(u).name, info.name));
                }
            }
        }
    }
    Ok(())
}

/// Integer sequences. A operations concatenate. AC operation `k` acts
/// pointwise (shorter operands padded with zeros) as
/// `x + y + c_k x y` in wrapping arithmetic, for which `0` is neutral, so
/// the empty sequence is neutral for every operation and interprets every
/// unit. Symbols map to one-element sequences through random hashes.
#[derive(Clone, Debug)]
pub struct SeqModel {
    kinds: Vec<OpKind>,
    scale: Vec<i64>,
    symbols: Vec<(i64, Vec<i64>)>,
    radix: i64,
}

impl SeqModel {
    pub fn new(sig: &Signature, seed: u64) -> SeqModel {
        let mut rng = StdRng::seed_from_u64(seed);
        let kinds = sig.ops().map(|(_, info)| info.kind).collect();
        let scale = sig.ops().map(|_| rng.random::<i64>() | 1).collect();
        let symbols = sig
            .symbols()
            .map(|(_, info)| {
                (rng.random(), (0..info.arity).map(|_| rng.random::<i64>() | 1).collect())
            })
            .collect();
        SeqModel { kinds, scale, symbols, radix: rng.random::<i64>() | 1 }
    }

    fn digest(&self, v: &[i64]) -> i64 {
        v.iter()
            .fold(v.len() as i64, |h, x| h.wrapping_mul(self.radix).wrapping_add(*x))
    }
}

impl Interpretation for SeqModel {
    type Value = Vec<i64>;

    fn symbol(&self, s: SymbolId, args: &[Vec<i64>]) -> Option<Vec<i64>> {
        let (base, weights) = self.symbols.get(s.index())?;
        if weights.len() != args.len() {
            return None;
        }
        let h = weights
            .iter()
            .zip(args)
            .fold(*base, |h, (w, x)| h.wrapping_add(w.wrapping_mul(self.digest(x))));
        Some(vec![h])
    }

    fn op(&self, o: OpId, l: &Vec<i64>, r: &Vec<i64>) -> Option<Vec<i64>> {
        Some(match self.kinds.get(o.index())? {
            OpKind::A => l.iter().chain(r).copied().collect(),
            OpKind::AC => {
                let c = self.scale[o.index()];
                (0..l.len().max(r.len()))
                    .map(|i| {
                        let x = l.get(i).copied().unwrap_or(0);
                        let y = r.get(i).copied().unwrap_or(0);
                        x.wrapping_add(y).wrapping_add(c.wrapping_mul(x).wrapping_mul(y))
                    })
                    .collect()
            }
        })
    }

    fn unit(&self, _: UnitId) -> Option<Vec<i64>> {
        Some(Vec::new())
    }
}

pub const PRIME: u64 = 1_000_000_007;

/// A 2x2 matrix over the integers modulo [`PRIME`].
pub type Matrix = [[u64; 2]; 2];

const IDENTITY: Matrix = [[1, 0], [0, 1]];

fn mat_mul(x: &Matrix, y: &Matrix) -> Matrix {
    let mut out = [[0; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = (x[i][0] * y[0][j] + x[i][1] * y[1][j]) % PRIME;
        }
    }
    out
}

fn mat_add(x: &Matrix, y: &Matrix) -> Matrix {
    let mut out = *x;
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = (out[i][j] + y[i][j]) % PRIME;
        }
    }
    out
}

/// 2x2 matrices modulo a prime with random tables. A operations are matrix
/// products. AC operation `k` combines `X` and `Y` entrywise through
/// `D = X - I` as `D_X + D_Y + c_k D_X D_Y`, so the identity is neutral for
/// every operation and interprets every unit. A symbol of arity `n` maps
/// to `M + sum L_i X_i R_i` with random `M`, `L_i`, `R_i`.
#[derive(Clone, Debug)]
pub struct MatrixModel {
    kinds: Vec<OpKind>,
    scale: Vec<u64>,
    symbols: Vec<(Matrix, Vec<(Matrix, Matrix)>)>,
}

impl MatrixModel {
    pub fn new(sig: &Signature, seed: u64) -> MatrixModel {
        let mut rng = StdRng::seed_from_u64(seed);
        let matrix = |rng: &mut StdRng| -> Matrix {
            [[rng.random_range(0..PRIME), rng.random_range(0..PRIME)], [
                rng.random_range(0..PRIME),
                rng.random_range(0..PRIME),
            ]]
        };
        let kinds = sig.ops().map(|(_, info)| info.kind).collect();
        let scale = sig.ops().map(|_| rng.random_range(1..PRIME)).collect();
        let symbols = sig
            .symbols()
            .map(|(_, info)| {
                let m = matrix(&mut rng);
                let lr = (0..info.arity).map(|_| (matrix(&mut rng), matrix(&mut rng))).collect();
                (m, lr)
            })
            .collect();
        MatrixModel { kinds, scale, symbols }
    }
}

impl Interpretation for MatrixModel {
    type Value = Matrix;

    fn symbol(&self, s: SymbolId, args: &[Matrix]) -> Option<Matrix> {
        let (m, lr) = self.symbols.get(s.index())?;
        if lr.len() != args.len() {
            return None;
        }
        Some(
            lr.iter()
                .zip(args)
                .fold(*m, |acc, ((l, r), x)| mat_add(&acc, &mat_mul(&mat_mul(l, x), r))),
        )
    }

    fn op(&self, o: OpId, l: &Matrix, r: &Matrix) -> Option<Matrix> {
        Some(match self.kinds.get(o.index())? {
            OpKind::A => mat_mul(l, r),
            OpKind::AC => {
                let c = self.scale[o.index()];
                let mut out = [[0; 2]; 2];
                for i in 0..2 {
                    for j in 0..2 {
                        let d = |m: &Matrix| (m[i][j] + PRIME - IDENTITY[i][j]) % PRIME;
                        let (x, y) = (d(l), d(r));
                        out[i][j] = (x + y + c * (x * y % PRIME) % PRIME + IDENTITY[i][j]) % PRIME;
                    }
                }
                out
            }
        })
    }

    fn unit(&self, _: UnitId) -> Option<Matrix> {
        Some(IDENTITY)
    }
}
