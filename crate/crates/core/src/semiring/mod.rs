//! Concrete semirings, their (partial) star, and the morphisms between them.
//!
//! A semiring is modelled as a context value implementing [`Semiring`]; its
//! elements are the associated `Elem` type. The context carries whatever the
//! elements need to share (a modulus, a matrix size, an alphabet and a
//! truncation bound) so that every algorithm in the crate can stay generic.

mod descriptor;
mod extnat;
mod initial;
mod morphism;
mod nat;
mod one_star;
mod quotient;

pub use descriptor::{combine, one_star_carrier, star, Op, SemiringDescriptor, SemiringValue};
pub use extnat::{ExtendedNat, ExtendedNaturals};
pub use initial::{InitialIteration, InitialValue};
pub use morphism::{
    IdentityMorphism, InitialCollapse, Morphism, NatEmbedding, OneStarEmbedding, QuotientMorphism,
    SupportMap,
};
pub use nat::{Booleans, Nat, Naturals};
pub use one_star::{one_star_semiring, OneStarImage};
pub use quotient::{quotient_to_k, QuotientK, QuotientKValue};

use std::fmt::Debug;

use crate::error::Result;

pub trait Semiring: Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    /// Image of `n` under the unique morphism from the naturals.
    fn from_nat(&self, n: &Nat) -> Self::Elem {
        let Some(mut k) = n.to_u64() else {
            let digits = n.to_biguint().to_u64_digits();
            let base = self.from_nat(&Nat::small(1 << 32));
            let base = self.mul(&base, &base);
            return digits.iter().rev().fold(self.zero(), |acc, d| {
                self.add(&self.mul(&acc, &base), &self.from_nat(&Nat::small(*d)))
            });
        };
        let mut acc = self.zero();
        let mut pow = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &pow);
            }
            k >>= 1;
            if k > 0 {
                pow = self.add(&pow, &pow);
            }
        }
        acc
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    /// False when multiplication may fail to commute.
    fn is_commutative(&self) -> bool {
        true
    }

    /// Short name used in diagnostics.
    fn name(&self) -> String;
}

/// A semiring with a star defined on an ideal, its star domain.
pub trait StarSemiring: Semiring {
    fn in_star_domain(&self, _a: &Self::Elem) -> bool {
        true
    }

    fn star(&self, a: &Self::Elem) -> Result<Self::Elem>;
}

/// Semirings whose elements have a canonical textual form.
pub trait ValueText: Semiring {
    fn render(&self, a: &Self::Elem) -> String;
    fn parse_value(&self, text: &str) -> Result<Self::Elem>;
}

/// Semirings with a decidable partial order compatible with the operations.
pub trait OrderedSemiring: Semiring {
    fn le(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
}

/// The semirings with a finite carrier expose it for exhaustive checks.
pub trait FiniteCarrier: Semiring {
    fn carrier(&self) -> Vec<Self::Elem>;
}
