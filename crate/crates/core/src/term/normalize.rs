use std::collections::HashMap;
use std::fmt;

use super::{Node, Term};
use crate::automata::{automaton_to_term, compile_term, restrict_to_dfa, support_dfa, RestrictMode};
use crate::error::Result;
use crate::semiring::{ExtendedNat, ExtendedNaturals, Nat, Naturals};
use crate::series::Alphabet;

/// A term split as `tc + t0 + 1*·tinf` with `t0` ideal, and `tinf` ideal
/// whenever `tc ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub tc: Nat,
    pub t0: Term,
    pub tinf: Term,
}

impl NormalForm {
    /// The term `tc + t0 + inf.tinf`.
    pub fn to_term(&self) -> Term {
        let head = Term::sum(&Term::nat(self.tc.clone()), &self.t0);
        Term::sum(&head, &Term::prod(&Term::inf(), &self.tinf))
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tc={}, t0={}, tinf={}", self.tc, self.t0, self.tinf)
    }
}

/// `c + t0 + 1*·tinf` with `c ∈ ℕ∞` and both terms ideal.
#[derive(Clone)]
struct Parts {
    c: ExtendedNat,
    t0: Term,
    tinf: Term,
}

impl Parts {
    fn constant(c: ExtendedNat) -> Parts {
        Parts { c, t0: Term::zero(), tinf: Term::zero() }
    }
}

fn nat_term(c: &ExtendedNat) -> Term {
    match c {
        ExtendedNat::Fin(n) => Term::nat(n.clone()),
        ExtendedNat::Inf => Term::inf(),
    }
}

/// Splits `c·t` (or `t·c` when `right`) into its finite and `1*` parts.
fn scale(c: &ExtendedNat, t: &Term, right: bool) -> (Term, Term) {
    match c {
        ExtendedNat::Inf => (Term::zero(), t.clone()),
        fin if right => (Term::prod(t, &nat_term(fin)), Term::zero()),
        fin => (Term::prod(&nat_term(fin), t), Term::zero()),
    }
}

/// `c·t` inside a `1*` factor, where `∞` is absorbed.
fn scale_inf(c: &ExtendedNat, t: &Term, right: bool) -> Term {
    match c {
        ExtendedNat::Inf => t.clone(),
        fin if right => Term::prod(t, &nat_term(fin)),
        fin => Term::prod(&nat_term(fin), t),
    }
}

fn product(p: &Parts, s: &Parts) -> Parts {
    let (f1, i1) = scale(&p.c, &s.t0, false);
    let (f2, i2) = scale(&s.c, &p.t0, true);
    let t0 = Term::sum_all([f1, f2, Term::prod(&p.t0, &s.t0)]);
    let tinf = Term::sum_all([
        i1,
        i2,
        scale_inf(&p.c, &s.tinf, false),
        Term::prod(&p.t0, &s.tinf),
        scale_inf(&s.c, &p.tinf, true),
        Term::prod(&p.tinf, &s.t0),
        Term::prod(&p.tinf, &s.tinf),
    ]);
    Parts { c: p.c.mul(&s.c), t0, tinf }
}

fn star(s: &Parts) -> Parts {
    let u = Term::sum(&s.t0, &s.tinf);
    if s.c.is_zero() {
        // 1 + s0⁺ + 1*·(s∞ + u⁺s∞)(1 + s0⁺), with u = s0 + s∞.
        let s0_plus = Term::plus(&s.t0);
        let x = Term::sum(&s.tinf, &Term::prod(&Term::plus(&u), &s.tinf));
        let tinf = Term::sum(&x, &Term::prod(&x, &s0_plus));
        Parts { c: ExtendedNat::ONE, t0: s0_plus, tinf }
    } else {
        Parts { c: ExtendedNat::Inf, t0: Term::zero(), tinf: Term::plus(&u) }
    }
}

fn parts(t: &Term, memo: &mut HashMap<*const Node, Parts>) -> Parts {
    if let Some(p) = memo.get(&t.id()) {
        return p.clone();
    }
    let p = match t.node() {
        Node::Zero => Parts::constant(ExtendedNat::ZERO),
        Node::One => Parts::constant(ExtendedNat::ONE),
        Node::Nat(n) => Parts::constant(ExtendedNat::Fin(n.clone())),
        Node::Inf => Parts::constant(ExtendedNat::Inf),
        Node::Letter(_) => Parts { c: ExtendedNat::ZERO, t0: t.clone(), tinf: Term::zero() },
        Node::Sum(a, b) => {
            let (a, b) = (parts(a, memo), parts(b, memo));
            Parts {
                c: a.c.add(&b.c),
                t0: Term::sum(&a.t0, &b.t0),
                tinf: Term::sum(&a.tinf, &b.tinf),
            }
        }
        Node::Prod(a, b) => {
            let a = parts(a, memo);
            product(&a, &parts(b, memo))
        }
        Node::Star(a) => star(&parts(a, memo)),
        Node::Plus(a) => {
            let a = parts(a, memo);
            product(&a, &star(&a))
        }
    };
    memo.insert(t.id(), p.clone());
    p
}

/// Rewrites `t` into the form `tc + t0 + 1*·tinf` by structural recursion.
pub fn normalize(t: &Term) -> NormalForm {
    let p = parts(t, &mut HashMap::new());
    match p.c {
        ExtendedNat::Fin(tc) => NormalForm { tc, t0: p.t0, tinf: p.tinf },
        ExtendedNat::Inf => NormalForm {
            tc: Nat::ZERO,
            t0: p.t0,
            tinf: Term::sum(&Term::one(), &p.tinf),
        },
    }
}

/// [`normalize`], then restrict `t0` to words outside the support of `tinf`
/// so that `|t0|` and `|1*·tinf|` have disjoint supports.
pub fn normalize_disjoint(t: &Term, alphabet: &Alphabet) -> Result<NormalForm> {
    let nf = normalize(t);
    if nf.tinf.is_zero() || nf.t0.is_zero() {
        return Ok(nf);
    }
    let alphabet = alphabet.union(&Alphabet::new(t.letters())?);
    let r = support_dfa(&ExtendedNaturals, &compile_term(&nf.tinf, &ExtendedNaturals, &alphabet)?);
    let m0 = compile_term(&nf.t0, &Naturals, &alphabet)?;
    let overlap = restrict_to_dfa(&Naturals, &m0, &r, RestrictMode::Keep).trim(&Naturals);
    if overlap.dim() == 0 {
        return Ok(nf);
    }
    let rest = restrict_to_dfa(&Naturals, &m0, &r, RestrictMode::Remove).trim(&Naturals);
    Ok(NormalForm { t0: automaton_to_term(&Naturals, &rest), ..nf })
}
