use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::{Nat, OrderedSemiring, Semiring, StarSemiring, ValueText};
use crate::error::{Error, Result};

/// A natural number or infinity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ExtendedNat {
    Fin(Nat),
    Inf,
}

impl ExtendedNat {
    pub const ZERO: ExtendedNat = ExtendedNat::Fin(Nat::ZERO);
    pub const ONE: ExtendedNat = ExtendedNat::Fin(Nat::ONE);

    pub fn fin(n: u64) -> ExtendedNat {
        ExtendedNat::Fin(Nat::small(n))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtendedNat::Fin(n) if n.is_zero())
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, ExtendedNat::Inf)
    }

    pub fn finite(&self) -> Option<&Nat> {
        match self {
            ExtendedNat::Fin(n) => Some(n),
            ExtendedNat::Inf => None,
        }
    }

    pub fn add(&self, other: &ExtendedNat) -> ExtendedNat {
        match (self, other) {
            (ExtendedNat::Fin(a), ExtendedNat::Fin(b)) => ExtendedNat::Fin(a.add(b)),
            _ => ExtendedNat::Inf,
        }
    }

    pub fn mul(&self, other: &ExtendedNat) -> ExtendedNat {
        match (self, other) {
            (ExtendedNat::Fin(a), ExtendedNat::Fin(b)) => ExtendedNat::Fin(a.mul(b)),
            _ if self.is_zero() || other.is_zero() => ExtendedNat::ZERO,
            _ => ExtendedNat::Inf,
        }
    }

    pub fn star(&self) -> ExtendedNat {
        if self.is_zero() {
            ExtendedNat::ONE
        } else {
            ExtendedNat::Inf
        }
    }
}

impl From<Nat> for ExtendedNat {
    fn from(n: Nat) -> Self {
        ExtendedNat::Fin(n)
    }
}

impl From<u64> for ExtendedNat {
    fn from(n: u64) -> Self {
        ExtendedNat::fin(n)
    }
}

impl Ord for ExtendedNat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtendedNat::Fin(a), ExtendedNat::Fin(b)) => a.cmp(b),
            (ExtendedNat::Fin(_), ExtendedNat::Inf) => Ordering::Less,
            (ExtendedNat::Inf, ExtendedNat::Fin(_)) => Ordering::Greater,
            (ExtendedNat::Inf, ExtendedNat::Inf) => Ordering::Equal,
        }
    }
}

impl PartialOrd for ExtendedNat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtendedNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedNat::Fin(n) => write!(f, "{n}"),
            ExtendedNat::Inf => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for ExtendedNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExtendedNat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "∞" => Ok(ExtendedNat::Inf),
            t => t.parse().map(ExtendedNat::Fin),
        }
    }
}

/// ℕ∞ with the total star `0* = 1`, `n* = ∞` otherwise.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExtendedNaturals;

impl Semiring for ExtendedNaturals {
    type Elem = ExtendedNat;

    fn zero(&self) -> ExtendedNat {
        ExtendedNat::ZERO
    }

    fn one(&self) -> ExtendedNat {
        ExtendedNat::ONE
    }

    fn add(&self, a: &ExtendedNat, b: &ExtendedNat) -> ExtendedNat {
        a.add(b)
    }

    fn mul(&self, a: &ExtendedNat, b: &ExtendedNat) -> ExtendedNat {
        a.mul(b)
    }

    fn is_zero(&self, a: &ExtendedNat) -> bool {
        a.is_zero()
    }

    fn from_nat(&self, n: &Nat) -> ExtendedNat {
        ExtendedNat::Fin(n.clone())
    }

    fn name(&self) -> String {
        "ninf".into()
    }
}

impl StarSemiring for ExtendedNaturals {
    fn star(&self, a: &ExtendedNat) -> Result<ExtendedNat> {
        Ok(a.star())
    }
}

impl ValueText for ExtendedNaturals {
    fn render(&self, a: &ExtendedNat) -> String {
        a.to_string()
    }

    fn parse_value(&self, text: &str) -> Result<ExtendedNat> {
        text.parse()
    }
}

impl OrderedSemiring for ExtendedNaturals {
    fn le(&self, a: &ExtendedNat, b: &ExtendedNat) -> bool {
        a <= b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const INF: ExtendedNat = ExtendedNat::Inf;

    #[test]
    fn spec_examples() {
        let s = ExtendedNaturals;
        assert_eq!(s.add(&ExtendedNat::fin(2), &INF), INF);
        assert_eq!(s.mul(&ExtendedNat::ZERO, &INF), ExtendedNat::ZERO);
        assert_eq!(s.star(&ExtendedNat::ZERO).unwrap(), ExtendedNat::ONE);
        assert_eq!(s.star(&ExtendedNat::fin(3)).unwrap(), INF);
    }

    #[test]
    fn order_matches_sum_order() {
        let vals: Vec<ExtendedNat> = vec![0u64.into(), 1u64.into(), 3u64.into(), INF];
        for a in &vals {
            for b in &vals {
                let witnessed = vals.iter().any(|c| &a.add(c) == b)
                    || (b.is_inf() && !a.is_inf())
                    || matches!((a, b), (ExtendedNat::Fin(x), ExtendedNat::Fin(y)) if x <= y);
                assert_eq!(a <= b, witnessed, "{a} <= {b}");
            }
        }
    }

    #[test]
    fn parses_and_renders() {
        assert_eq!("inf".parse::<ExtendedNat>().unwrap(), INF);
        assert_eq!(ExtendedNat::fin(7).to_string(), "7");
        assert!("x".parse::<ExtendedNat>().is_err());
    }
}
