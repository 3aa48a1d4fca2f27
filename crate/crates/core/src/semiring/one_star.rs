use super::{FiniteCarrier, OrderedSemiring, Semiring, StarSemiring, ValueText};
use crate::error::{Error, Result};

/// The semiring `1*A = {1*a : a ∈ A}` with unit `1*` and star
/// `x ↦ 1*·x*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneStarImage<S: StarSemiring> {
    inner: S,
    unit: S::Elem,
}

/// Builds `1*A`; fails when `1` lies outside the star domain of `A`.
pub fn one_star_semiring<S: StarSemiring>(inner: S) -> Result<OneStarImage<S>> {
    let unit = inner.star(&inner.one()).map_err(|_| {
        Error::Unsupported(format!("1* is undefined in {}", inner.name()))
    })?;
    Ok(OneStarImage { inner, unit })
}

impl<S: StarSemiring> OneStarImage<S> {
    pub fn inner(&self) -> &S {
        &self.inner
    }

    /// The morphism `a ↦ 1*a` onto this semiring.
    pub fn embed(&self, a: &S::Elem) -> S::Elem {
        self.inner.mul(&self.unit, a)
    }

    pub fn contains(&self, a: &S::Elem) -> bool {
        self.embed(a) == *a
    }
}

impl<S: StarSemiring> Semiring for OneStarImage<S> {
    type Elem = S::Elem;

    fn zero(&self) -> S::Elem {
        self.inner.zero()
    }

    fn one(&self) -> S::Elem {
        self.unit.clone()
    }

    fn add(&self, a: &S::Elem, b: &S::Elem) -> S::Elem {
        self.inner.add(a, b)
    }

    fn mul(&self, a: &S::Elem, b: &S::Elem) -> S::Elem {
        self.inner.mul(a, b)
    }

    fn is_zero(&self, a: &S::Elem) -> bool {
        self.inner.is_zero(a)
    }

    fn is_commutative(&self) -> bool {
        self.inner.is_commutative()
    }

    fn name(&self) -> String {
        format!("1*{}", self.inner.name())
    }
}

impl<S: StarSemiring> StarSemiring for OneStarImage<S> {
    fn in_star_domain(&self, a: &S::Elem) -> bool {
        self.inner.in_star_domain(a)
    }

    fn star(&self, a: &S::Elem) -> Result<S::Elem> {
        Ok(self.embed(&self.inner.star(a)?))
    }
}

impl<S: StarSemiring + ValueText> ValueText for OneStarImage<S> {
    fn render(&self, a: &S::Elem) -> String {
        self.inner.render(a)
    }

    fn parse_value(&self, text: &str) -> Result<S::Elem> {
        let v = self.inner.parse_value(text)?;
        if self.contains(&v) {
            Ok(v)
        } else {
            Err(Error::InvalidValue(format!("{text} is not of the form 1*a")))
        }
    }
}

impl<S: StarSemiring + OrderedSemiring> OrderedSemiring for OneStarImage<S> {
    fn le(&self, a: &S::Elem, b: &S::Elem) -> bool {
        self.inner.le(a, b)
    }
}

impl<S: StarSemiring + FiniteCarrier> FiniteCarrier for OneStarImage<S> {
    fn carrier(&self) -> Vec<S::Elem> {
        let mut out: Vec<S::Elem> = Vec::new();
        for a in self.inner.carrier() {
            let x = self.embed(&a);
            if !out.contains(&x) {
                out.push(x);
            }
        }
        out
    }
}
