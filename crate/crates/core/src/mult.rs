//! Positive multiplicities of AC multiset items.

use std::fmt;
use std::num::NonZeroU64;
use std::ops::{Add, Mul};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

/// A positive integer of unbounded size.
///
/// Values that fit in a `u64` are always stored inline, so the derived
/// orderings agree with numeric order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mult {
    Small(NonZeroU64),
    Big(Box<BigUint>),
}

impl Mult {
    pub const ONE: Mult = Mult::Small(NonZeroU64::MIN);

    /// `None` for zero.
    pub fn new(n: u64) -> Option<Mult> {
        NonZeroU64::new(n).map(Mult::Small)
    }

    pub fn from_big(n: BigUint) -> Option<Mult> {
        match n.to_u64() {
            Some(0) => None,
            Some(small) => Mult::new(small),
            None => Some(Mult::Big(Box::new(n))),
        }
    }

    pub fn to_big(&self) -> BigUint {
        match self {
            Mult::Small(n) => BigUint::from(n.get()),
            Mult::Big(n) => (**n).clone(),
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self {
            Mult::Small(n) => Some(n.get()),
            Mult::Big(_) => None,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Mult::ONE
    }

    /// `self - 1`, or `None` when that would be zero.
    pub fn pred(&self) -> Option<Mult> {
        match self {
            Mult::Small(n) => Mult::new(n.get() - 1),
            Mult::Big(n) => Mult::from_big(&**n - BigUint::one()),
        }
    }

    /// Binary digits, most significant first.
    pub fn bits_msb_first(&self) -> Vec<bool> {
        let big = self.to_big();
        let len = big.bits();
        (0..len).rev().map(|i| big.bit(i)).collect()
    }
}

impl Add for &Mult {
    type Output = Mult;

    fn add(self, rhs: &Mult) -> Mult {
        if let (Mult::Small(a), Mult::Small(b)) = (self, rhs) {
            if let Some(sum) = a.checked_add(b.get()) {
                return Mult::Small(sum);
            }
        }
        Mult::from_big(self.to_big() + rhs.to_big()).expect("sum of positives is positive")
    }
}

impl Mul for &Mult {
    type Output = Mult;

    fn mul(self, rhs: &Mult) -> Mult {
        if let (Mult::Small(a), Mult::Small(b)) = (self, rhs) {
            if let Some(prod) = a.checked_mul(*b) {
                return Mult::Small(prod);
            }
        }
        Mult::from_big(self.to_big() * rhs.to_big()).expect("product of positives is positive")
    }
}

impl From<NonZeroU64> for Mult {
    fn from(n: NonZeroU64) -> Self {
        Mult::Small(n)
    }
}

impl fmt::Debug for Mult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Mult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mult::Small(n) => write!(f, "{n}"),
            Mult::Big(n) => write!(f, "{n}"),
        }
    }
}
