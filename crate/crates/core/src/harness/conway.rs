use super::report::CheckReport;
use crate::error::Result;
use crate::semiring::StarSemiring;

type Sides<E> = Result<(E, E)>;
type Identity<'a, E> = (&'a str, &'a dyn Fn() -> Sides<E>);

/// Evaluates both sides of the sum-star and product-star identities and of
/// four consequences. An instance outside the star domain yields a skip.
pub fn check_conway<S: StarSemiring>(s: &S, a: &S::Elem, b: &S::Elem, instance: &str) -> Vec<CheckReport> {
    let (add, mul) = (|x: &S::Elem, y: &S::Elem| s.add(x, y), |x: &S::Elem, y: &S::Elem| s.mul(x, y));
    let identities: [Identity<S::Elem>; 6] = [
        ("sum-star (a+b)* = a*(ba*)*", &|| {
            let left = s.star(&add(a, b))?;
            let a_star = s.star(a)?;
            Ok((left, mul(&a_star, &s.star(&mul(b, &a_star))?)))
        }),
        ("product-star (ab)* = 1 + a(ba)*b", &|| {
            let left = s.star(&mul(a, b))?;
            Ok((left, add(&s.one(), &mul(&mul(a, &s.star(&mul(b, a))?), b))))
        }),
        ("aa* + 1 = a*", &|| {
            let a_star = s.star(a)?;
            Ok((add(&mul(a, &a_star), &s.one()), a_star))
        }),
        ("0* = 1", &|| Ok((s.star(&s.zero())?, s.one()))),
        ("(ab)*a = a(ba)*", &|| Ok((mul(&s.star(&mul(a, b))?, a), mul(a, &s.star(&mul(b, a))?)))),
        ("(a+b)* = (a*b)*a*", &|| {
            let a_star = s.star(a)?;
            Ok((s.star(&add(a, b))?, mul(&s.star(&mul(&a_star, b))?, &a_star)))
        }),
    ];
    identities
        .iter()
        .map(|(name, sides)| match sides() {
            Ok((l, r)) => CheckReport::compare(name, instance, &l, &r),
            Err(e) => CheckReport::skip(name, instance, e),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::Verdict;
    use crate::semiring::{ExtendedNat, ExtendedNaturals, Nat, Naturals};
    use crate::series::{Alphabet, SeriesSemiring};

    #[test]
    fn spec_examples() {
        let r = check_conway(&ExtendedNaturals, &ExtendedNat::ONE, &ExtendedNat::Inf, "1,inf");
        assert!(r.iter().all(CheckReport::passed));
        let ctx = SeriesSemiring::new(Naturals, Alphabet::parse("ab").unwrap(), 6);
        let (a, b) = (ctx.letter('a').unwrap(), ctx.letter('b').unwrap());
        assert!(check_conway(&ctx, &a, &b, "a,b").iter().all(CheckReport::passed));
        assert!(check_conway(&Naturals, &Nat::ZERO, &Nat::ZERO, "0,0").iter().all(CheckReport::passed));
    }

    #[test]
    fn partial_star_skips() {
        let r = check_conway(&Naturals, &Nat::ONE, &Nat::ZERO, "1,0");
        assert_eq!(r[0].verdict, Verdict::Skip);
        assert_eq!(r[3].verdict, Verdict::Pass);
    }
}
