use super::WeightedAutomaton;
use crate::error::{Error, Result};
use crate::semiring::StarSemiring;
use crate::series::Alphabet;
use crate::term::{Node, Term};

/// An automaton whose initial vector is the first unit vector and whose
/// initial state has no incoming edges.
struct Normalized<E> {
    beta: Vec<E>,
    /// `out[p]` lists `(letter, target, weight)`.
    out: Vec<Vec<(usize, usize, E)>>,
}

impl<E: Clone> Normalized<E> {
    fn dim(&self) -> usize {
        self.beta.len()
    }
}

struct Compiler<'a, S: StarSemiring> {
    s: &'a S,
    alphabet: &'a Alphabet,
    whole: &'a Term,
}

impl<S: StarSemiring> Compiler<'_, S> {
    fn constant(&self, c: S::Elem) -> Normalized<S::Elem> {
        Normalized { beta: vec![c], out: vec![Vec::new()] }
    }

    fn star_of(&self, c: &S::Elem) -> Result<S::Elem> {
        self.s.star(c).map_err(|_| {
            Error::NotInStarDomain(format!("{} in {}", self.whole.display_truncated(80), self.s.name()))
        })
    }

    fn sum(&self, x: Normalized<S::Elem>, y: Normalized<S::Elem>) -> Normalized<S::Elem> {
        let shift = x.dim() - 1;
        let mut beta = x.beta;
        beta[0] = self.s.add(&beta[0], &y.beta[0]);
        beta.extend(y.beta.into_iter().skip(1));
        let mut out = x.out;
        let mut yout = y.out.into_iter();
        let y0 = yout.next().expect("initial state");
        out[0].extend(y0.into_iter().map(|(a, q, w)| (a, q + shift, w)));
        out.extend(yout.map(|row| row.into_iter().map(|(a, q, w)| (a, q + shift, w)).collect()));
        Normalized { beta, out }
    }

    fn product(&self, x: Normalized<S::Elem>, y: Normalized<S::Elem>) -> Normalized<S::Elem> {
        let s = self.s;
        let shift = x.dim() - 1;
        let y0: Vec<_> = y.out[0].iter().map(|(a, q, w)| (*a, q + shift, w.clone())).collect();
        let mut out = x.out;
        let mut beta = Vec::with_capacity(x.beta.len() + y.beta.len() - 1);
        for (p, b) in x.beta.iter().enumerate() {
            if !s.is_zero(b) {
                out[p].extend(y0.iter().map(|(a, q, w)| (*a, *q, s.mul(b, w))));
            }
            beta.push(s.mul(b, &y.beta[0]));
        }
        beta.extend(y.beta.into_iter().skip(1));
        out.extend(y.out.into_iter().skip(1).map(|row| {
            row.into_iter().map(|(a, q, w)| (a, q + shift, w)).collect()
        }));
        Normalized { beta, out }
    }

    /// `x*` when `plus` is false, `x⁺` for proper `x` when it is true.
    fn star(&self, x: Normalized<S::Elem>, plus: bool) -> Result<Normalized<S::Elem>> {
        let s = self.s;
        let cs = self.star_of(&x.beta[0])?;
        let row0 = x.out[0].clone();
        let mut out = x.out;
        let mut beta = Vec::with_capacity(x.beta.len());
        beta.push(if plus { s.zero() } else { cs.clone() });
        for (p, b) in x.beta.iter().enumerate().skip(1) {
            if s.is_zero(b) {
                beta.push(s.zero());
                continue;
            }
            let back = s.mul(&cs, b);
            out[p].extend(row0.iter().map(|(a, q, w)| (*a, *q, s.mul(&back, w))));
            beta.push(s.mul(&back, &cs));
        }
        Ok(Normalized { beta, out })
    }

    fn compile(&self, t: &Term) -> Result<Normalized<S::Elem>> {
        let s = self.s;
        Ok(match t.node() {
            Node::Zero => self.constant(s.zero()),
            Node::One => self.constant(s.one()),
            Node::Nat(n) => self.constant(s.from_nat(n)),
            Node::Inf => self.constant(self.star_of(&s.one())?),
            Node::Letter(c) => {
                let a = self.alphabet.index_of(*c).ok_or(Error::UnknownLetter(*c))? as usize;
                Normalized { beta: vec![s.zero(), s.one()], out: vec![vec![(a, 1, s.one())], Vec::new()] }
            }
            Node::Sum(a, b) => {
                let x = self.compile(a)?;
                self.sum(x, self.compile(b)?)
            }
            Node::Prod(a, b) => {
                let x = self.compile(a)?;
                self.product(x, self.compile(b)?)
            }
            Node::Star(a) => self.star(self.compile(a)?, false)?,
            Node::Plus(a) => {
                let x = self.compile(a)?;
                if s.is_zero(&x.beta[0]) {
                    self.star(x, true)?
                } else {
                    let y = self.compile(a)?;
                    self.product(x, self.star(y, false)?)
                }
            }
        })
    }
}

/// Compiles `t` to an automaton with the same behavior over `s`.
///
/// Stars are taken on the constant term of their argument only, so over the
/// naturals this fails exactly when evaluating `t` would.
pub fn compile_term<S: StarSemiring>(
    t: &Term,
    s: &S,
    alphabet: &Alphabet,
) -> Result<WeightedAutomaton<S::Elem>> {
    let c = Compiler { s, alphabet, whole: t };
    let n = c.compile(t)?;
    let dim = n.dim();
    let mut alpha = vec![s.zero(); dim];
    alpha[0] = s.one();
    let edges = n
        .out
        .into_iter()
        .enumerate()
        .flat_map(|(p, row)| row.into_iter().map(move |(a, q, w)| (a, p, q, w)));
    Ok(WeightedAutomaton::from_edges(s, alphabet.clone(), alpha, n.beta, edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::behavior_coefficients;
    use crate::semiring::{ExtendedNaturals, Naturals};
    use crate::series::{render_series, SeriesSemiring};
    use crate::term::{eval_term, parse_term_unchecked};

    fn agree(text: &str, bound: usize) {
        let ab = Alphabet::parse("ab").unwrap();
        let t = parse_term_unchecked(text).unwrap();
        let m = compile_term(&t, &ExtendedNaturals, &ab).unwrap();
        let ctx = SeriesSemiring::new(ExtendedNaturals, ab.clone(), bound);
        assert_eq!(behavior_coefficients(&ExtendedNaturals, &m, bound), eval_term(&t, &ctx).unwrap(), "{text}");
        if let Ok(e) = eval_term(&t, &SeriesSemiring::new(Naturals, ab.clone(), bound)) {
            let m = compile_term(&t, &Naturals, &ab).unwrap();
            assert_eq!(behavior_coefficients(&Naturals, &m, bound), e, "{text}");
        }
    }

    #[test]
    fn spec_examples() {
        let ab = Alphabet::parse("ab").unwrap();
        let m = compile_term(&parse_term_unchecked("a").unwrap(), &Naturals, &ab).unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(render_series(&Naturals, &behavior_coefficients(&Naturals, &m, 3), true), "{a:1}");
        let m = compile_term(&parse_term_unchecked("(a+b)*").unwrap(), &Naturals, &ab).unwrap();
        let b = behavior_coefficients(&Naturals, &m, 2);
        assert_eq!(b.support_size(), 7);
        assert!(b.iter().all(|(_, c)| c.is_one()));
        let m = compile_term(&parse_term_unchecked("2").unwrap(), &Naturals, &ab).unwrap();
        assert_eq!(render_series(&Naturals, &behavior_coefficients(&Naturals, &m, 3), true), "{ε:2}");
    }

    #[test]
    fn matches_eval() {
        for t in [
            "a*b", "(a+b)*a", "(ab)*", "(a*b*)*", "2(a+1)*", "(a+2b)*a", "(ab+b)(a*+b)*", "1*a",
            "(1+a)*", "inf.b + a", "((a*)b)*", "a(ba)*b + (ab)*", "0*", "(0a)*", "(a+b)*(a+b)*",
        ] {
            agree(t, 5);
        }
    }

    #[test]
    fn nat_star_domain() {
        let ab = Alphabet::parse("ab").unwrap();
        let t = parse_term_unchecked("(1+a)*").unwrap();
        let e = compile_term(&t, &Naturals, &ab).unwrap_err();
        assert!(matches!(e, Error::NotInStarDomain(_)));
        let t = parse_term_unchecked("c").unwrap();
        assert_eq!(compile_term(&t, &Naturals, &ab).unwrap_err(), Error::UnknownLetter('c'));
    }
}
