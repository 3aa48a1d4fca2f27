use std::cmp::Ordering;
use std::fmt;

use super::{ExtendedNat, Nat, OrderedSemiring, Semiring, StarSemiring, ValueText};
use crate::error::{Error, Result};

/// An element of the initial iteration semiring: a natural, a power
/// `(1*)^p` with `p ≥ 1`, or `1**`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum InitialValue {
    Nat(Nat),
    StarPow(Nat),
    StarStar,
}

impl InitialValue {
    pub fn nat(n: u64) -> InitialValue {
        InitialValue::Nat(Nat::small(n))
    }

    /// `(1*)^p`; panics for `p = 0`, which is the natural `1`.
    pub fn star_pow(p: u64) -> InitialValue {
        assert!(p >= 1, "(1*)^0 is the natural 1");
        InitialValue::StarPow(Nat::small(p))
    }

    fn is_zero(&self) -> bool {
        matches!(self, InitialValue::Nat(n) if n.is_zero())
    }

    fn rank(&self) -> u8 {
        match self {
            InitialValue::Nat(_) => 0,
            InitialValue::StarPow(_) => 1,
            InitialValue::StarStar => 2,
        }
    }

    /// Identifies every starred value with `∞`.
    pub fn collapse(&self) -> ExtendedNat {
        match self {
            InitialValue::Nat(n) => ExtendedNat::Fin(n.clone()),
            _ => ExtendedNat::Inf,
        }
    }
}

impl Ord for InitialValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (InitialValue::Nat(a), InitialValue::Nat(b)) => a.cmp(b),
            (InitialValue::StarPow(a), InitialValue::StarPow(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for InitialValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for InitialValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitialValue::Nat(n) => write!(f, "{n}"),
            InitialValue::StarPow(p) => write!(f, "1*^{p}"),
            InitialValue::StarStar => f.write_str("1**"),
        }
    }
}

impl fmt::Debug for InitialValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The initial iteration semiring, totally ordered as
/// `0 < 1 < 2 < ⋯ < 1* < (1*)² < ⋯ < 1**`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct InitialIteration;

impl Semiring for InitialIteration {
    type Elem = InitialValue;

    fn zero(&self) -> InitialValue {
        InitialValue::Nat(Nat::ZERO)
    }

    fn one(&self) -> InitialValue {
        InitialValue::Nat(Nat::ONE)
    }

    fn add(&self, a: &InitialValue, b: &InitialValue) -> InitialValue {
        match (a, b) {
            (InitialValue::Nat(x), InitialValue::Nat(y)) => InitialValue::Nat(x.add(y)),
            _ => a.max(b).clone(),
        }
    }

    fn mul(&self, a: &InitialValue, b: &InitialValue) -> InitialValue {
        use InitialValue::*;
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        match (a, b) {
            (Nat(x), Nat(y)) => Nat(x.mul(y)),
            (StarStar, _) | (_, StarStar) => StarStar,
            (StarPow(p), StarPow(q)) => StarPow(p.add(q)),
            (StarPow(p), Nat(_)) | (Nat(_), StarPow(p)) => StarPow(p.clone()),
        }
    }

    fn is_zero(&self, a: &InitialValue) -> bool {
        a.is_zero()
    }

    fn from_nat(&self, n: &Nat) -> InitialValue {
        InitialValue::Nat(n.clone())
    }

    fn name(&self) -> String {
        "initial".into()
    }
}

impl StarSemiring for InitialIteration {
    fn star(&self, a: &InitialValue) -> Result<InitialValue> {
        Ok(match a {
            InitialValue::Nat(n) if n.is_zero() => self.one(),
            InitialValue::Nat(n) if n.is_one() => InitialValue::star_pow(1),
            _ => InitialValue::StarStar,
        })
    }
}

impl ValueText for InitialIteration {
    fn render(&self, a: &InitialValue) -> String {
        a.to_string()
    }

    fn parse_value(&self, text: &str) -> Result<InitialValue> {
        let t = text.trim();
        if t == "1**" {
            return Ok(InitialValue::StarStar);
        }
        if t == "1*" {
            return Ok(InitialValue::star_pow(1));
        }
        if let Some(p) = t.strip_prefix("1*^") {
            let p: Nat = p.parse()?;
            if p.is_zero() {
                return Err(Error::InvalidValue(t.to_string()));
            }
            return Ok(InitialValue::StarPow(p));
        }
        t.parse().map(InitialValue::Nat)
    }
}

impl OrderedSemiring for InitialIteration {
    fn le(&self, a: &InitialValue, b: &InitialValue) -> bool {
        a <= b
    }
}
