use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::{Semiring, StarSemiring};
use crate::error::{Error, Result};

/// Exact natural number. Values that fit in a `u64` stay unboxed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Nat(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(u64),
    // Always strictly greater than `u64::MAX`.
    Big(Arc<BigUint>),
}

impl Nat {
    pub const ZERO: Nat = Nat(Repr::Small(0));
    pub const ONE: Nat = Nat(Repr::Small(1));

    pub const fn small(n: u64) -> Nat {
        Nat(Repr::Small(n))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1))
    }

    pub fn to_u64(&self) -> Option<u64> {
        match &self.0 {
            Repr::Small(n) => Some(*n),
            Repr::Big(_) => None,
        }
    }

    pub fn to_biguint(&self) -> BigUint {
        match &self.0 {
            Repr::Small(n) => BigUint::from(*n),
            Repr::Big(b) => (**b).clone(),
        }
    }

    fn from_big(b: BigUint) -> Nat {
        match b.to_u64() {
            Some(n) => Nat(Repr::Small(n)),
            None => Nat(Repr::Big(Arc::new(b))),
        }
    }

    pub fn add(&self, other: &Nat) -> Nat {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &other.0) {
            if let Some(s) = a.checked_add(*b) {
                return Nat(Repr::Small(s));
            }
        }
        Nat::from_big(self.to_biguint() + other.to_biguint())
    }

    pub fn mul(&self, other: &Nat) -> Nat {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &other.0) {
            if let Some(p) = a.checked_mul(*b) {
                return Nat(Repr::Small(p));
            }
        }
        if self.is_zero() || other.is_zero() {
            return Nat::ZERO;
        }
        Nat::from_big(self.to_biguint() * other.to_biguint())
    }

    /// `self - other`, or `None` when `other > self`.
    pub fn checked_sub(&self, other: &Nat) -> Option<Nat> {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &other.0) {
            return a.checked_sub(*b).map(Nat::small);
        }
        if self < other {
            None
        } else {
            Some(Nat::from_big(self.to_biguint() - other.to_biguint()))
        }
    }

    pub fn pow(&self, e: u32) -> Nat {
        (0..e).fold(Nat::ONE, |acc, _| acc.mul(self))
    }
}

impl Default for Nat {
    fn default() -> Self {
        Nat::ZERO
    }
}

impl From<u64> for Nat {
    fn from(n: u64) -> Self {
        Nat::small(n)
    }
}

impl From<BigUint> for Nat {
    fn from(b: BigUint) -> Self {
        Nat::from_big(b)
    }
}

impl Ord for Nat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            (Repr::Small(_), Repr::Big(_)) => Ordering::Less,
            (Repr::Big(_), Repr::Small(_)) => Ordering::Greater,
            (Repr::Big(a), Repr::Big(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Nat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n) => write!(f, "{n}"),
            Repr::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Nat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::InvalidValue(s.to_string()));
        }
        match s.parse::<u64>() {
            Ok(n) => Ok(Nat::small(n)),
            Err(_) => BigUint::from_str(s)
                .map(Nat::from_big)
                .map_err(|_| Error::InvalidValue(s.to_string())),
        }
    }
}

impl Zero for Nat {
    fn zero() -> Self {
        Nat::ZERO
    }

    fn is_zero(&self) -> bool {
        Nat::is_zero(self)
    }
}

impl std::ops::Add for Nat {
    type Output = Nat;

    fn add(self, rhs: Nat) -> Nat {
        Nat::add(&self, &rhs)
    }
}

/// The naturals with the partial star whose domain is `{0}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Naturals;

impl Semiring for Naturals {
    type Elem = Nat;

    fn zero(&self) -> Nat {
        Nat::ZERO
    }

    fn one(&self) -> Nat {
        Nat::ONE
    }

    fn add(&self, a: &Nat, b: &Nat) -> Nat {
        a.add(b)
    }

    fn mul(&self, a: &Nat, b: &Nat) -> Nat {
        a.mul(b)
    }

    fn is_zero(&self, a: &Nat) -> bool {
        a.is_zero()
    }

    fn from_nat(&self, n: &Nat) -> Nat {
        n.clone()
    }

    fn name(&self) -> String {
        "n".into()
    }
}

impl StarSemiring for Naturals {
    fn in_star_domain(&self, a: &Nat) -> bool {
        a.is_zero()
    }

    fn star(&self, a: &Nat) -> Result<Nat> {
        if a.is_zero() {
            Ok(Nat::ONE)
        } else {
            Err(Error::NotInStarDomain(format!("{a} in n")))
        }
    }
}

/// The two-element Boolean semiring, with `a* = 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Booleans;

impl Semiring for Booleans {
    type Elem = bool;

    fn zero(&self) -> bool {
        false
    }

    fn one(&self) -> bool {
        true
    }

    fn add(&self, a: &bool, b: &bool) -> bool {
        *a || *b
    }

    fn mul(&self, a: &bool, b: &bool) -> bool {
        *a && *b
    }

    fn from_nat(&self, n: &Nat) -> bool {
        !n.is_zero()
    }

    fn name(&self) -> String {
        "bool".into()
    }
}

impl StarSemiring for Booleans {
    fn star(&self, _a: &bool) -> Result<bool> {
        Ok(true)
    }
}

impl super::ValueText for Naturals {
    fn render(&self, a: &Nat) -> String {
        a.to_string()
    }

    fn parse_value(&self, text: &str) -> Result<Nat> {
        text.trim().parse()
    }
}

impl super::OrderedSemiring for Naturals {
    fn le(&self, a: &Nat, b: &Nat) -> bool {
        a <= b
    }
}

impl super::ValueText for Booleans {
    fn render(&self, a: &bool) -> String {
        if *a { "1" } else { "0" }.to_string()
    }

    fn parse_value(&self, text: &str) -> Result<bool> {
        match text.trim() {
            "0" | "false" => Ok(false),
            "1" | "true" => Ok(true),
            other => Err(Error::InvalidValue(other.to_string())),
        }
    }
}

impl super::OrderedSemiring for Booleans {
    fn le(&self, a: &bool, b: &bool) -> bool {
        !*a || *b
    }
}

impl super::FiniteCarrier for Booleans {
    fn carrier(&self) -> Vec<bool> {
        vec![false, true]
    }
}
