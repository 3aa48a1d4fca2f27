use std::fmt;

use super::{
    ExtendedNat, FiniteCarrier, Nat, OrderedSemiring, Semiring, StarSemiring, ValueText,
};
use crate::error::{Error, Result};

/// An element of the k-quotient: an integer in `[0, k]` where `k` absorbs
/// every larger value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuotientKValue {
    k: u64,
    value: u64,
}

impl QuotientKValue {
    /// Clamps `value` into `[0, k]`.
    pub fn new(k: u64, value: u64) -> QuotientKValue {
        assert!(k >= 1, "modulus must be at least 1");
        QuotientKValue { k, value: value.min(k) }
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn value(&self) -> u64 {
        self.value
    }
}

impl fmt::Display for QuotientKValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for QuotientKValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.value, self.k)
    }
}

/// ℕ∞ with `k` and `∞` (and everything in between) identified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuotientK {
    k: u64,
}

impl QuotientK {
    pub fn new(k: u64) -> Result<QuotientK> {
        if k == 0 {
            return Err(Error::InvalidValue("modulus 0".into()));
        }
        Ok(QuotientK { k })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn value(&self, v: u64) -> QuotientKValue {
        QuotientKValue::new(self.k, v)
    }
}

impl Semiring for QuotientK {
    type Elem = QuotientKValue;

    fn zero(&self) -> QuotientKValue {
        self.value(0)
    }

    fn one(&self) -> QuotientKValue {
        self.value(1)
    }

    fn add(&self, a: &QuotientKValue, b: &QuotientKValue) -> QuotientKValue {
        self.value(a.value.saturating_add(b.value))
    }

    fn mul(&self, a: &QuotientKValue, b: &QuotientKValue) -> QuotientKValue {
        self.value(a.value.saturating_mul(b.value))
    }

    fn from_nat(&self, n: &Nat) -> QuotientKValue {
        self.value(n.to_u64().unwrap_or(u64::MAX))
    }

    fn name(&self) -> String {
        format!("k:{}", self.k)
    }
}

impl StarSemiring for QuotientK {
    fn star(&self, a: &QuotientKValue) -> Result<QuotientKValue> {
        Ok(if a.value == 0 { self.one() } else { self.value(self.k) })
    }
}

impl ValueText for QuotientK {
    fn render(&self, a: &QuotientKValue) -> String {
        a.value.to_string()
    }

    fn parse_value(&self, text: &str) -> Result<QuotientKValue> {
        Ok(quotient_to_k(self.k, &text.parse()?))
    }
}

impl OrderedSemiring for QuotientK {
    fn le(&self, a: &QuotientKValue, b: &QuotientKValue) -> bool {
        a.value <= b.value
    }
}

impl FiniteCarrier for QuotientK {
    fn carrier(&self) -> Vec<QuotientKValue> {
        (0..=self.k).map(|v| self.value(v)).collect()
    }
}

/// `min(a, k)`, sending `∞` to `k`.
pub fn quotient_to_k(k: u64, a: &ExtendedNat) -> QuotientKValue {
    match a {
        ExtendedNat::Fin(n) => QuotientKValue::new(k, n.to_u64().unwrap_or(u64::MAX)),
        ExtendedNat::Inf => QuotientKValue::new(k, k),
    }
}
