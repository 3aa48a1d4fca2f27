use super::WeightedAutomaton;
use crate::error::{Error, Result};
use crate::matrix::{mat_mul, mat_star, Matrix};
use crate::semiring::{
    Booleans, ExtendedNaturals, InitialIteration, Nat, Naturals, QuotientK, SemiringDescriptor,
    SemiringValue, StarSemiring,
};

/// `(αh)·(Ah)*·(βh)` in `target`, where `h` extends the letter images `h`
/// by the unique morphism from the naturals.
pub fn morphic_image<T: StarSemiring>(
    m: &WeightedAutomaton<Nat>,
    target: &T,
    h: &[T::Elem],
) -> Result<T::Elem> {
    let k = m.alphabet().len();
    if h.len() != k {
        return Err(Error::DimensionMismatch(format!("{} letter images for {k} letters", h.len())));
    }
    if let Some(x) = h.iter().find(|x| !target.in_star_domain(x)) {
        return Err(Error::NotInStarDomain(format!("letter image {x:?} in {}", target.name())));
    }
    let n = m.dim();
    let mut a = Matrix::filled(n, n, target.zero());
    for (letter, p, q, w) in m.all_edges() {
        let term = target.mul(&target.from_nat(w), &h[letter]);
        a.set(p, q, target.add(a.get(p, q), &term));
    }
    let alpha = Matrix::from_fn(1, n, |_, j| target.from_nat(&m.alpha()[j]));
    let beta = Matrix::from_fn(n, 1, |i, _| target.from_nat(&m.beta()[i]));
    let star = mat_star(target, &a)?;
    let out = mat_mul(target, &mat_mul(target, &alpha, &star)?, &beta)?;
    Ok(if n == 0 { target.zero() } else { out.get(0, 0).clone() })
}

/// [`morphic_image`] with the target chosen at run time.
pub fn morphic_image_dyn(
    m: &WeightedAutomaton<Nat>,
    target: &SemiringDescriptor,
    h: &[SemiringValue],
) -> Result<SemiringValue> {
    let mismatch = |v: &SemiringValue| Error::SemiringMismatch {
        expected: target.to_string(),
        found: v.to_string(),
    };
    macro_rules! run {
        ($ctx:expr, $variant:ident) => {{
            let images = h
                .iter()
                .map(|v| match v {
                    SemiringValue::$variant(x) => Ok(x.clone()),
                    other => Err(mismatch(other)),
                })
                .collect::<Result<Vec<_>>>()?;
            SemiringValue::$variant(morphic_image(m, &$ctx, &images)?)
        }};
    }
    Ok(match target {
        SemiringDescriptor::N => run!(Naturals, Nat),
        SemiringDescriptor::Ninf => run!(ExtendedNaturals, ExtNat),
        SemiringDescriptor::Bool => run!(Booleans, Bool),
        SemiringDescriptor::QuotientK(k) => run!(QuotientK::new(*k)?, Quotient),
        SemiringDescriptor::InitialIteration => run!(InitialIteration, Initial),
        other => return Err(Error::Unsupported(format!("morphic image into {other}"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::compile_term;
    use crate::semiring::ExtendedNat;
    use crate::series::Alphabet;
    use crate::term::parse_term_unchecked;

    fn compiled(text: &str) -> WeightedAutomaton<Nat> {
        let a = Alphabet::parse("a").unwrap();
        compile_term(&parse_term_unchecked(text).unwrap(), &Naturals, &a).unwrap()
    }

    #[test]
    fn spec_examples() {
        assert!(morphic_image(&compiled("2a"), &Booleans, &[true]).unwrap());
        assert!(morphic_image(&compiled("0"), &ExtendedNaturals, &[ExtendedNat::Inf]).unwrap().is_zero());
        assert_eq!(morphic_image(&compiled("a*"), &ExtendedNaturals, &[ExtendedNat::ONE]).unwrap(), ExtendedNat::Inf);
        let v = morphic_image_dyn(&compiled("a*"), &SemiringDescriptor::Ninf, &[SemiringValue::ExtNat(ExtendedNat::ONE)]);
        assert_eq!(v.unwrap().to_string(), "inf");
    }

    #[test]
    fn star_domain_enforced() {
        let e = morphic_image(&compiled("a*"), &Naturals, &[Nat::ONE]).unwrap_err();
        assert!(matches!(e, Error::NotInStarDomain(_)));
        assert_eq!(morphic_image(&compiled("3a*"), &Naturals, &[Nat::ZERO]).unwrap(), Nat::small(3));
    }
}
