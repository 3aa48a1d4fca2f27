use super::WeightedAutomaton;
use crate::semiring::{
    Booleans, ExtendedNat, ExtendedNaturals, Nat, Naturals, QuotientK, QuotientKValue, Semiring,
};
use crate::term::Term;

/// Semirings whose values can be written as term constants.
pub trait TermConstants: Semiring {
    fn constant_term(&self, c: &Self::Elem) -> Term;
}

impl TermConstants for Naturals {
    fn constant_term(&self, c: &Nat) -> Term {
        Term::nat(c.clone())
    }
}

impl TermConstants for ExtendedNaturals {
    fn constant_term(&self, c: &ExtendedNat) -> Term {
        match c {
            ExtendedNat::Fin(n) => Term::nat(n.clone()),
            ExtendedNat::Inf => Term::inf(),
        }
    }
}

impl TermConstants for Booleans {
    fn constant_term(&self, c: &bool) -> Term {
        if *c {
            Term::one()
        } else {
            Term::zero()
        }
    }
}

impl TermConstants for QuotientK {
    fn constant_term(&self, c: &QuotientKValue) -> Term {
        Term::nat(Nat::small(c.value()))
    }
}

type TermMatrix = Vec<Vec<Term>>;

fn sum_products<'a>(pairs: impl Iterator<Item = (&'a Term, &'a Term)>) -> Term {
    pairs.fold(Term::zero(), |acc, (x, y)| {
        if x.is_zero() || y.is_zero() {
            acc
        } else {
            Term::sum(&acc, &Term::prod(x, y))
        }
    })
}

/// Data recorded when eliminating the last state of a `k × k` matrix:
/// `B d`, `d C` and `D⁺`, where `d = D* = 1 + D⁺`.
struct Level {
    bd: Vec<Term>,
    cd: Vec<Term>,
    d_plus: Term,
}

/// `M⁺ = M M*` for a matrix of ideal terms, keeping every entry ideal.
fn matrix_plus(m: TermMatrix) -> TermMatrix {
    let mut levels = Vec::with_capacity(m.len());
    let mut cur = m;
    while let Some(mut c) = cur.pop() {
        let k = cur.len();
        let d_plus = Term::plus(&c.pop().expect("square"));
        let b: Vec<Term> = cur.iter_mut().map(|row| row.pop().expect("square")).collect();
        let bd: Vec<Term> = b.iter().map(|x| Term::sum(x, &Term::prod(x, &d_plus))).collect();
        let cd: Vec<Term> = c.iter().map(|x| Term::sum(x, &Term::prod(&d_plus, x))).collect();
        for i in 0..k {
            if bd[i].is_zero() {
                continue;
            }
            for j in 0..k {
                if !c[j].is_zero() {
                    cur[i][j] = Term::sum(&cur[i][j], &Term::prod(&bd[i], &c[j]));
                }
            }
        }
        levels.push(Level { bd, cd, d_plus });
    }
    let mut p: TermMatrix = Vec::new();
    for Level { bd, cd, d_plus } in levels.into_iter().rev() {
        let k = p.len();
        let beta: Vec<Term> =
            (0..k).map(|i| Term::sum(&bd[i], &sum_products(p[i].iter().zip(&bd)))).collect();
        let gamma: Vec<Term> = (0..k)
            .map(|j| Term::sum(&cd[j], &sum_products(cd.iter().zip(p.iter().map(|row| &row[j])))))
            .collect();
        let delta = Term::sum(&d_plus, &sum_products(gamma.iter().zip(&bd)));
        for (row, b) in p.iter_mut().zip(beta) {
            row.push(b);
        }
        let mut last = gamma;
        last.push(delta);
        p.push(last);
    }
    p
}

/// A term whose value is the behavior `α A* β` of `m`.
///
/// Every starred subterm is an ideal term, so over the naturals the result
/// is evaluable whenever the weights are.
pub fn automaton_to_term<S: TermConstants>(s: &S, m: &WeightedAutomaton<S::Elem>) -> Term {
    let m = m.trim(s);
    let n = m.dim();
    if n == 0 {
        return Term::zero();
    }
    let mut mat: TermMatrix = vec![vec![Term::zero(); n]; n];
    for (a, p, q, w) in m.all_edges() {
        let edge = Term::prod(&s.constant_term(w), &Term::letter(m.alphabet().letter(a as u8)));
        mat[p][q] = Term::sum(&mat[p][q], &edge);
    }
    let plus = matrix_plus(mat);
    let (alpha, beta) = (m.alpha(), m.beta());
    let constant = super::dot(s, alpha, beta);
    let mut out = s.constant_term(&constant);
    for (i, a) in alpha.iter().enumerate() {
        if s.is_zero(a) {
            continue;
        }
        let a = s.constant_term(a);
        for (j, b) in beta.iter().enumerate() {
            if !s.is_zero(b) && !plus[i][j].is_zero() {
                let path = Term::prod(&a, &Term::prod(&plus[i][j], &s.constant_term(b)));
                out = Term::sum(&out, &path);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{behavior_coefficients, compile_term};
    use crate::matrix::Matrix;
    use crate::series::{Alphabet, SeriesSemiring};
    use crate::term::{eval_term, parse_term_unchecked};

    #[test]
    fn one_state_loop() {
        let a = Alphabet::parse("a").unwrap();
        let t = Matrix::filled(1, 1, Nat::ONE);
        let m = WeightedAutomaton::new(&Naturals, a.clone(), vec![Nat::ONE], vec![Nat::ONE], vec![t]).unwrap();
        let term = automaton_to_term(&Naturals, &m);
        let ctx = SeriesSemiring::new(Naturals, a, 8);
        assert_eq!(eval_term(&term, &ctx).unwrap(), eval_term(&parse_term_unchecked("a*").unwrap(), &ctx).unwrap());
    }

    #[test]
    fn empty_automaton() {
        let a = Alphabet::parse("a").unwrap();
        let m = WeightedAutomaton::<Nat>::new(&Naturals, a, vec![], vec![], vec![Matrix::filled(0, 0, Nat::ZERO)]).unwrap();
        assert_eq!(automaton_to_term(&Naturals, &m).to_string(), "0");
    }

    #[test]
    fn roundtrips() {
        let ab = Alphabet::parse("ab").unwrap();
        let ctx = SeriesSemiring::new(Naturals, ab.clone(), 6);
        for text in ["ab", "(a+b)*a", "a*b*", "(ab+2b)*", "(a(ba)*b)*+3", "(a*b)*a*"] {
            let t = parse_term_unchecked(text).unwrap();
            let m = compile_term(&t, &Naturals, &ab).unwrap();
            let back = automaton_to_term(&Naturals, &m);
            assert_eq!(eval_term(&back, &ctx).unwrap(), behavior_coefficients(&Naturals, &m, 6), "{text}");
        }
    }
}
