use super::{
    quotient_to_k, Booleans, ExtendedNat, ExtendedNaturals, InitialIteration, InitialValue, Nat,
    Naturals, OneStarImage, QuotientK, QuotientKValue, Semiring, StarSemiring,
};

/// A structure-preserving map between two semirings.
pub trait Morphism: Send + Sync {
    type Source: Semiring;
    type Target: Semiring;

    fn source(&self) -> &Self::Source;
    fn target(&self) -> &Self::Target;
    fn apply(
        &self,
        a: &<Self::Source as Semiring>::Elem,
    ) -> <Self::Target as Semiring>::Elem;
}

/// `ℕ∞ → k`, clamping at `k`.
#[derive(Clone, Copy, Debug)]
pub struct QuotientMorphism {
    target: QuotientK,
}

impl QuotientMorphism {
    pub fn new(target: QuotientK) -> QuotientMorphism {
        QuotientMorphism { target }
    }
}

impl Morphism for QuotientMorphism {
    type Source = ExtendedNaturals;
    type Target = QuotientK;

    fn source(&self) -> &ExtendedNaturals {
        &ExtendedNaturals
    }

    fn target(&self) -> &QuotientK {
        &self.target
    }

    fn apply(&self, a: &ExtendedNat) -> QuotientKValue {
        quotient_to_k(self.target.k(), a)
    }
}

/// Initial iteration semiring `→ ℕ∞`, identifying every starred value with `∞`.
#[derive(Clone, Copy, Debug, Default)]
pub struct InitialCollapse;

impl Morphism for InitialCollapse {
    type Source = InitialIteration;
    type Target = ExtendedNaturals;

    fn source(&self) -> &InitialIteration {
        &InitialIteration
    }

    fn target(&self) -> &ExtendedNaturals {
        &ExtendedNaturals
    }

    fn apply(&self, a: &InitialValue) -> ExtendedNat {
        a.collapse()
    }
}

/// The inclusion `ℕ ↪ ℕ∞`.
#[derive(Clone, Copy, Debug, Default)]
pub struct NatEmbedding;

impl Morphism for NatEmbedding {
    type Source = Naturals;
    type Target = ExtendedNaturals;

    fn source(&self) -> &Naturals {
        &Naturals
    }

    fn target(&self) -> &ExtendedNaturals {
        &ExtendedNaturals
    }

    fn apply(&self, a: &Nat) -> ExtendedNat {
        ExtendedNat::Fin(a.clone())
    }
}

/// The support map `ℕ∞ → 𝔹`.
#[derive(Clone, Copy, Debug, Default)]
pub struct SupportMap;

impl Morphism for SupportMap {
    type Source = ExtendedNaturals;
    type Target = Booleans;

    fn source(&self) -> &ExtendedNaturals {
        &ExtendedNaturals
    }

    fn target(&self) -> &Booleans {
        &Booleans
    }

    fn apply(&self, a: &ExtendedNat) -> bool {
        !a.is_zero()
    }
}

/// The identity on any semiring.
#[derive(Clone, Debug)]
pub struct IdentityMorphism<S>(pub S);

impl<S: Semiring> Morphism for IdentityMorphism<S> {
    type Source = S;
    type Target = S;

    fn source(&self) -> &S {
        &self.0
    }

    fn target(&self) -> &S {
        &self.0
    }

    fn apply(&self, a: &S::Elem) -> S::Elem {
        a.clone()
    }
}

/// `a ↦ 1*a` from `A` onto `1*A`.
pub struct OneStarEmbedding<S: StarSemiring> {
    image: OneStarImage<S>,
}

impl<S: StarSemiring> OneStarEmbedding<S> {
    pub fn new(image: OneStarImage<S>) -> Self {
        OneStarEmbedding { image }
    }
}

impl<S: StarSemiring> Morphism for OneStarEmbedding<S> {
    type Source = S;
    type Target = OneStarImage<S>;

    fn source(&self) -> &S {
        self.image.inner()
    }

    fn target(&self) -> &OneStarImage<S> {
        &self.image
    }

    fn apply(&self, a: &S::Elem) -> S::Elem {
        self.image.embed(a)
    }
}
