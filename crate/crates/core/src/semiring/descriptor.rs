use std::fmt;
use std::str::FromStr;

use super::{
    Booleans, ExtendedNat, ExtendedNaturals, InitialIteration, InitialValue,
    Nat, Naturals, QuotientK, QuotientKValue, Semiring, StarSemiring, ValueText,
};
use crate::error::{Error, Result};

/// Names one of the supported semirings at run time.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SemiringDescriptor {
    N,
    Ninf,
    Bool,
    QuotientK(u64),
    InitialIteration,
    OneStarImage(Box<SemiringDescriptor>),
}

/// A value tagged with the kind of semiring it lives in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SemiringValue {
    Nat(Nat),
    ExtNat(ExtendedNat),
    Bool(bool),
    Quotient(QuotientKValue),
    Initial(InitialValue),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Mul,
}

impl SemiringDescriptor {
    /// `1*S`; only total-star semirings qualify.
    pub fn one_star(&self) -> Result<SemiringDescriptor> {
        match self {
            SemiringDescriptor::Ninf | SemiringDescriptor::Bool | SemiringDescriptor::QuotientK(_) => {
                Ok(SemiringDescriptor::OneStarImage(Box::new(self.clone())))
            }
            other => Err(Error::Unsupported(format!("1*{other} is not supported"))),
        }
    }

    pub fn zero(&self) -> SemiringValue {
        self.small_value(0)
    }

    pub fn one(&self) -> SemiringValue {
        match self {
            SemiringDescriptor::OneStarImage(inner) => {
                star(inner, &inner.one()).expect("inner star is total")
            }
            _ => self.small_value(1),
        }
    }

    fn small_value(&self, n: u64) -> SemiringValue {
        match self {
            SemiringDescriptor::N => SemiringValue::Nat(Nat::small(n)),
            SemiringDescriptor::Ninf => SemiringValue::ExtNat(ExtendedNat::fin(n)),
            SemiringDescriptor::Bool => SemiringValue::Bool(n != 0),
            SemiringDescriptor::QuotientK(k) => SemiringValue::Quotient(QuotientKValue::new(*k, n)),
            SemiringDescriptor::InitialIteration => SemiringValue::Initial(InitialValue::nat(n)),
            SemiringDescriptor::OneStarImage(inner) => inner.small_value(n),
        }
    }

    /// Whether `a` is an element of this semiring.
    pub fn contains(&self, a: &SemiringValue) -> bool {
        match (self, a) {
            (SemiringDescriptor::N, SemiringValue::Nat(_))
            | (SemiringDescriptor::Ninf, SemiringValue::ExtNat(_))
            | (SemiringDescriptor::Bool, SemiringValue::Bool(_))
            | (SemiringDescriptor::InitialIteration, SemiringValue::Initial(_)) => true,
            (SemiringDescriptor::QuotientK(k), SemiringValue::Quotient(v)) => v.k() == *k,
            (SemiringDescriptor::OneStarImage(inner), v) => {
                inner.contains(v)
                    && combine(inner, Op::Mul, &self.one(), v).as_ref() == Ok(v)
            }
            _ => false,
        }
    }

    /// The star domain: `{0}` for ℕ, everything otherwise.
    pub fn in_star_domain(&self, a: &SemiringValue) -> bool {
        match (self, a) {
            (SemiringDescriptor::N, SemiringValue::Nat(n)) => n.is_zero(),
            _ => self.contains(a),
        }
    }

    pub fn parse_value(&self, text: &str) -> Result<SemiringValue> {
        let v = match self {
            SemiringDescriptor::N => SemiringValue::Nat(Naturals.parse_value(text)?),
            SemiringDescriptor::Ninf => SemiringValue::ExtNat(ExtendedNaturals.parse_value(text)?),
            SemiringDescriptor::Bool => SemiringValue::Bool(Booleans.parse_value(text)?),
            SemiringDescriptor::QuotientK(k) => {
                SemiringValue::Quotient(QuotientK::new(*k)?.parse_value(text)?)
            }
            SemiringDescriptor::InitialIteration => {
                SemiringValue::Initial(InitialIteration.parse_value(text)?)
            }
            SemiringDescriptor::OneStarImage(inner) => inner.parse_value(text)?,
        };
        if self.contains(&v) {
            Ok(v)
        } else {
            Err(Error::InvalidValue(format!("{text} is not in {self}")))
        }
    }
}

impl fmt::Display for SemiringDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemiringDescriptor::N => f.write_str("n"),
            SemiringDescriptor::Ninf => f.write_str("ninf"),
            SemiringDescriptor::Bool => f.write_str("bool"),
            SemiringDescriptor::QuotientK(k) => write!(f, "k:{k}"),
            SemiringDescriptor::InitialIteration => f.write_str("initial"),
            SemiringDescriptor::OneStarImage(inner) => write!(f, "1*{inner}"),
        }
    }
}

impl FromStr for SemiringDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix("1*") {
            return inner.parse::<SemiringDescriptor>()?.one_star();
        }
        match s {
            "n" | "N" => Ok(SemiringDescriptor::N),
            "ninf" | "Ninf" => Ok(SemiringDescriptor::Ninf),
            "bool" | "b" | "Bool" => Ok(SemiringDescriptor::Bool),
            "initial" => Ok(SemiringDescriptor::InitialIteration),
            _ => {
                let k = s
                    .strip_prefix("k:")
                    .and_then(|k| k.parse::<u64>().ok())
                    .filter(|k| *k >= 1)
                    .ok_or_else(|| Error::InvalidValue(format!("unknown semiring '{s}'")))?;
                Ok(SemiringDescriptor::QuotientK(k))
            }
        }
    }
}

impl fmt::Display for SemiringValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemiringValue::Nat(n) => write!(f, "{n}"),
            SemiringValue::ExtNat(n) => write!(f, "{n}"),
            SemiringValue::Bool(b) => f.write_str(if *b { "1" } else { "0" }),
            SemiringValue::Quotient(q) => write!(f, "{q}"),
            SemiringValue::Initial(v) => write!(f, "{v}"),
        }
    }
}

fn mismatch(s: &SemiringDescriptor, v: &SemiringValue) -> Error {
    Error::SemiringMismatch { expected: s.to_string(), found: format!("{v:?}") }
}

fn apply<S: Semiring>(s: &S, op: Op, x: &S::Elem, y: &S::Elem) -> S::Elem {
    match op {
        Op::Add => s.add(x, y),
        Op::Mul => s.mul(x, y),
    }
}

/// Adds or multiplies two values of `s`.
pub fn combine(
    s: &SemiringDescriptor,
    op: Op,
    x: &SemiringValue,
    y: &SemiringValue,
) -> Result<SemiringValue> {
    for v in [x, y] {
        if !s.contains(v) {
            return Err(mismatch(s, v));
        }
    }
    let out = match (s, x, y) {
        (SemiringDescriptor::OneStarImage(inner), _, _) => return combine(inner, op, x, y),
        (SemiringDescriptor::N, SemiringValue::Nat(a), SemiringValue::Nat(b)) => {
            SemiringValue::Nat(apply(&Naturals, op, a, b))
        }
        (SemiringDescriptor::Ninf, SemiringValue::ExtNat(a), SemiringValue::ExtNat(b)) => {
            SemiringValue::ExtNat(apply(&ExtendedNaturals, op, a, b))
        }
        (SemiringDescriptor::Bool, SemiringValue::Bool(a), SemiringValue::Bool(b)) => {
            SemiringValue::Bool(apply(&Booleans, op, a, b))
        }
        (SemiringDescriptor::QuotientK(k), SemiringValue::Quotient(a), SemiringValue::Quotient(b)) => {
            SemiringValue::Quotient(apply(&QuotientK::new(*k)?, op, a, b))
        }
        (SemiringDescriptor::InitialIteration, SemiringValue::Initial(a), SemiringValue::Initial(b)) => {
            SemiringValue::Initial(apply(&InitialIteration, op, a, b))
        }
        _ => return Err(mismatch(s, x)),
    };
    Ok(out)
}

/// The (partial) star of `a` in `s`.
pub fn star(s: &SemiringDescriptor, a: &SemiringValue) -> Result<SemiringValue> {
    if !s.contains(a) {
        return Err(mismatch(s, a));
    }
    Ok(match (s, a) {
        (SemiringDescriptor::OneStarImage(inner), _) => {
            let inner_star = star(inner, a)?;
            return combine(inner, Op::Mul, &s.one(), &inner_star);
        }
        (SemiringDescriptor::N, SemiringValue::Nat(n)) => SemiringValue::Nat(Naturals.star(n)?),
        (SemiringDescriptor::Ninf, SemiringValue::ExtNat(n)) => {
            SemiringValue::ExtNat(ExtendedNaturals.star(n)?)
        }
        (SemiringDescriptor::Bool, SemiringValue::Bool(b)) => SemiringValue::Bool(Booleans.star(b)?),
        (SemiringDescriptor::QuotientK(k), SemiringValue::Quotient(v)) => {
            SemiringValue::Quotient(QuotientK::new(*k)?.star(v)?)
        }
        (SemiringDescriptor::InitialIteration, SemiringValue::Initial(v)) => {
            SemiringValue::Initial(InitialIteration.star(v)?)
        }
        _ => return Err(mismatch(s, a)),
    })
}

/// The carrier of `1*S` for the finite semirings, computed as the image of `a ↦ 1*a`.
pub fn one_star_carrier(s: &SemiringDescriptor, sample: &[SemiringValue]) -> Result<Vec<SemiringValue>> {
    let image = s.one_star()?;
    let unit = image.one();
    let mut out = Vec::new();
    for a in sample {
        let x = combine(s, Op::Mul, &unit, a)?;
        if !out.contains(&x) {
            out.push(x);
        }
    }
    Ok(out)
}
