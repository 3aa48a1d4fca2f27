use crate::error::{Error, Result};
use crate::semiring::{ExtendedNat, ExtendedNaturals, Semiring, StarSemiring};
use crate::series::{SeriesSemiring, TruncatedSeries, Word};

/// A solution of `x = s·x + r` over ℕ∞, selected by the parameter `t`.
///
/// With `k` the constant term of `s` and `s₀` its proper part:
/// `k = 0` gives the unique solution `s*r`; `k = 1` gives
/// `s*r + 1*·s₀⁺·t + t`; `k ≥ 2` gives `s*(r + t)`.
pub fn solve_linear(
    s: &TruncatedSeries<ExtendedNat>,
    r: &TruncatedSeries<ExtendedNat>,
    t: &TruncatedSeries<ExtendedNat>,
) -> Result<TruncatedSeries<ExtendedNat>> {
    if s.alphabet() != r.alphabet() || s.alphabet() != t.alphabet() {
        return Err(Error::AlphabetMismatch(s.alphabet().to_string(), r.alphabet().to_string()));
    }
    let bound = s.bound().min(r.bound()).min(t.bound());
    let ctx = SeriesSemiring::new(ExtendedNaturals, s.alphabet().clone(), bound);
    let (s, r, t) = (s.truncate(bound), r.truncate(bound), t.truncate(bound));
    let k = s.get(&Word::empty()).cloned().unwrap_or(ExtendedNat::ZERO);
    let s_star = ctx.star(&s)?;
    Ok(if k.is_zero() {
        ctx.mul(&s_star, &r)
    } else if k == ExtendedNat::ONE {
        let s0 = TruncatedSeries::from_pairs(
            &ExtendedNaturals,
            s.alphabet().clone(),
            bound,
            s.iter().filter(|(w, _)| !w.is_empty()).map(|(w, c)| (w.clone(), c.clone())),
        );
        let s0_plus = ctx.mul(&s0, &ctx.star(&s0)?);
        let inf = ctx.constant(ExtendedNat::Inf);
        let middle = ctx.mul(&inf, &ctx.mul(&s0_plus, &t));
        ctx.add(&ctx.add(&ctx.mul(&s_star, &r), &middle), &t)
    } else {
        ctx.mul(&s_star, &ctx.add(&r, &t))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::OrderedSemiring;
    use crate::series::{render_series, Alphabet};

    fn series(pairs: &[(&str, &str)]) -> TruncatedSeries<ExtendedNat> {
        let a = Alphabet::parse("a").unwrap();
        let pairs = pairs.iter().map(|(w, c)| (a.word(w).unwrap(), c.parse().unwrap()));
        TruncatedSeries::from_pairs(&ExtendedNaturals, a.clone(), 4, pairs)
    }

    fn holds(s: &TruncatedSeries<ExtendedNat>, r: &TruncatedSeries<ExtendedNat>, x: &TruncatedSeries<ExtendedNat>) {
        let ctx = SeriesSemiring::new(ExtendedNaturals, s.alphabet().clone(), 4);
        assert_eq!(ctx.add(&ctx.mul(s, x), r), *x);
        assert!(ctx.le(&ctx.mul(&ctx.star(s).unwrap(), r), x));
    }

    #[test]
    fn spec_examples() {
        let s = series(&[("a", "1")]);
        let r = series(&[("ε", "1")]);
        let x = solve_linear(&s, &r, &series(&[("aa", "5")])).unwrap();
        assert_eq!(render_series(&ExtendedNaturals, &x, true), "{ε:1, a:1, aa:1, aaa:1, aaaa:1}");
        holds(&s, &r, &x);

        let s = series(&[("ε", "1")]);
        let x = solve_linear(&s, &series(&[]), &series(&[("a", "1")])).unwrap();
        assert_eq!(render_series(&ExtendedNaturals, &x, true), "{a:1}");
        holds(&s, &series(&[]), &x);

        let s = series(&[("ε", "2")]);
        let x = solve_linear(&s, &series(&[]), &series(&[("a", "1")])).unwrap();
        assert_eq!(render_series(&ExtendedNaturals, &x, true), "{a:inf}");
        holds(&s, &series(&[]), &x);
    }
}
