use std::collections::VecDeque;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::dfa::determinize;
use super::{compile_term, restrict_to_dfa, support_dfa, RestrictMode, SupportDfa, WeightedAutomaton};
use crate::error::{Error, Result};
use crate::semiring::{ExtendedNat, ExtendedNaturals, Nat, Naturals, Semiring};
use crate::series::{Alphabet, Word};
use crate::term::{normalize, Term};

/// The coefficient semirings for which equivalence is decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquivSemiring {
    N,
    Ninf,
}

fn check_alphabets<E>(m1: &WeightedAutomaton<E>, m2: &WeightedAutomaton<E>) -> Result<()> {
    if m1.alphabet() != m2.alphabet() {
        return Err(Error::AlphabetMismatch(m1.alphabet().to_string(), m2.alphabet().to_string()));
    }
    Ok(())
}

fn rational(n: &Nat) -> BigRational {
    BigRational::from_integer(BigInt::from(n.to_biguint()))
}

/// Row-echelon basis of a subspace of ℚⁿ.
struct Basis {
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl Basis {
    /// Adds `v` unless it lies in the span; true when added.
    fn insert(&mut self, mut v: Vec<BigRational>) -> bool {
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let f = v[*pivot].clone() / &row[*pivot];
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                self.rows.push((p, v));
                true
            }
            None => false,
        }
    }
}

/// The least word, in length-lex order, on which two ℕ-automata differ.
///
/// Works over the rationals: forward vectors of both automata are explored
/// breadth-first, and a word is expanded only when its joint vector is
/// independent of those seen before, so at most `m + n` words are expanded.
pub fn nat_difference(
    m1: &WeightedAutomaton<Nat>,
    m2: &WeightedAutomaton<Nat>,
) -> Result<Option<Word>> {
    check_alphabets(m1, m2)?;
    let (n1, n2) = (m1.dim(), m2.dim());
    let n = n1 + n2;
    let to_q = |v: &[Nat]| v.iter().map(rational).collect::<Vec<_>>();
    let functional: Vec<BigRational> = to_q(m1.beta())
        .into_iter()
        .chain(to_q(m2.beta()).into_iter().map(|x| -x))
        .collect();
    let eval = |v: &[BigRational]| -> BigRational {
        v.iter().zip(&functional).fold(BigRational::zero(), |acc, (x, f)| acc + x * f)
    };
    let step = |v: &[BigRational], a: usize| -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); n];
        for (p, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let (m, base) = if p < n1 { (m1, 0) } else { (m2, n1) };
            for (q, w) in m.edges(a, p - base) {
                out[base + q] += x * rational(w);
            }
        }
        out
    };
    let start: Vec<BigRational> = to_q(m1.alpha()).into_iter().chain(to_q(m2.alpha())).collect();
    if !eval(&start).is_zero() {
        return Ok(Some(Word::empty()));
    }
    let mut basis = Basis { rows: Vec::new() };
    let mut queue = VecDeque::new();
    if basis.insert(start.clone()) {
        queue.push_back((Word::empty(), start));
    }
    while let Some((w, v)) = queue.pop_front() {
        for a in 0..m1.alphabet().len() {
            let next = step(&v, a);
            let mut word = w.clone();
            word.push(a as u8);
            if !eval(&next).is_zero() {
                return Ok(Some(word));
            }
            if basis.insert(next.clone()) {
                queue.push_back((word, next));
            }
        }
    }
    Ok(None)
}

/// The least word of length at most `window` on which the behaviors differ,
/// by direct comparison of coefficients.
pub fn brute_force_difference<S: Semiring>(
    s: &S,
    m1: &WeightedAutomaton<S::Elem>,
    m2: &WeightedAutomaton<S::Elem>,
    window: usize,
) -> Result<Option<Word>> {
    check_alphabets(m1, m2)?;
    let dead = |v: &[S::Elem]| v.iter().all(|x| s.is_zero(x));
    let mut layer = vec![(Word::empty(), m1.alpha().to_vec(), m2.alpha().to_vec())];
    for len in 0..=window {
        for (w, v1, v2) in &layer {
            if super::dot(s, v1, m1.beta()) != super::dot(s, v2, m2.beta()) {
                return Ok(Some(w.clone()));
            }
        }
        if len == window {
            break;
        }
        let mut next = Vec::with_capacity(layer.len() * m1.alphabet().len());
        for (w, v1, v2) in &layer {
            for a in 0..m1.alphabet().len() {
                let (x1, x2) = (m1.step(s, v1, a), m2.step(s, v2, a));
                if dead(&x1) && dead(&x2) {
                    continue;
                }
                let mut w = w.clone();
                w.push(a as u8);
                next.push((w, x1, x2));
            }
        }
        layer = next;
    }
    Ok(None)
}

/// A DFA for the words whose coefficient is `∞`.
fn infinite_support(m: &WeightedAutomaton<ExtendedNat>) -> SupportDfa {
    // State `2p + f` is state `p` having read an infinite weight iff `f = 1`.
    let n = m.dim();
    let k = m.alphabet().len();
    let mut succ = vec![vec![Vec::new(); k]; 2 * n];
    for (a, p, q, w) in m.all_edges() {
        let f = usize::from(w.is_inf());
        succ[2 * p][a].push(2 * q + f);
        succ[2 * p + 1][a].push(2 * q + 1);
    }
    let initial = (0..n)
        .filter(|&p| !m.alpha()[p].is_zero())
        .map(|p| 2 * p + usize::from(m.alpha()[p].is_inf()))
        .collect();
    let accepting: Vec<bool> = (0..2 * n)
        .map(|x| {
            let b = &m.beta()[x / 2];
            !b.is_zero() && (x % 2 == 1 || b.is_inf())
        })
        .collect();
    determinize(m.alphabet(), initial, &accepting, &succ)
}

/// The finite-weight part as an ℕ-automaton; it agrees with `m` on every
/// word whose coefficient is finite.
fn finite_part(m: &WeightedAutomaton<ExtendedNat>) -> WeightedAutomaton<Nat> {
    m.map_weights(&Naturals, |w| w.finite().cloned().unwrap_or(Nat::ZERO))
}

fn least(a: Option<Word>, b: Option<Word>) -> Option<Word> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    }
}

/// The least word on which two ℕ∞-automata differ.
pub fn ninf_difference(
    m1: &WeightedAutomaton<ExtendedNat>,
    m2: &WeightedAutomaton<ExtendedNat>,
) -> Result<Option<Word>> {
    check_alphabets(m1, m2)?;
    let (r1, r2) = (infinite_support(m1), infinite_support(m2));
    let on_inf = r1.distinguishing_word(&r2)?;
    let f1 = restrict_to_dfa(&Naturals, &finite_part(m1), &r1, RestrictMode::Remove);
    let f2 = restrict_to_dfa(&Naturals, &finite_part(m2), &r2, RestrictMode::Remove);
    Ok(least(on_inf, nat_difference(&f1.trim(&Naturals), &f2.trim(&Naturals))?))
}

/// Decides `|m1| = |m2|` for automata over the given semiring; `None` when
/// equal, otherwise the least distinguishing word.
pub fn equivalent_automata(
    semiring: EquivSemiring,
    m1: &WeightedAutomaton<ExtendedNat>,
    m2: &WeightedAutomaton<ExtendedNat>,
) -> Result<Option<Word>> {
    match semiring {
        EquivSemiring::Ninf => ninf_difference(m1, m2),
        EquivSemiring::N => {
            if let Some(w) = m1.alpha().iter().chain(m1.beta()).chain(m2.alpha()).chain(m2.beta()).find(|w| w.is_inf()) {
                return Err(Error::InvalidValue(format!("weight {w} over n")));
            }
            if m1.all_edges().chain(m2.all_edges()).any(|(_, _, _, w)| w.is_inf()) {
                return Err(Error::InvalidValue("weight inf over n".into()));
            }
            nat_difference(&finite_part(m1), &finite_part(m2))
        }
    }
}

/// The three components of a term over ℕ∞, kept as automata: the support
/// DFA of `t∞`, the constant `tc`, and `t0` with that support removed.
struct Components {
    r: SupportDfa,
    tc: Nat,
    t0: WeightedAutomaton<Nat>,
}

fn components(t: &Term, alphabet: &Alphabet) -> Result<Components> {
    let nf = normalize(t);
    let r = support_dfa(&ExtendedNaturals, &compile_term(&nf.tinf, &ExtendedNaturals, alphabet)?);
    let t0 = compile_term(&nf.t0, &Naturals, alphabet)?;
    let t0 = restrict_to_dfa(&Naturals, &t0, &r, RestrictMode::Remove).trim(&Naturals);
    Ok(Components { r, tc: nf.tc, t0 })
}

/// Decides whether two terms denote the same series over `semiring`.
/// `None` when they do, otherwise the least word whose coefficients differ.
///
/// Over ℕ∞ each term is split as `tc + t0 + 1*·t∞` with the support of `t0`
/// disjoint from that of `t∞`; the supports of `t∞`, the constants and the
/// `t0` parts are then compared separately.
pub fn equivalent(
    t1: &Term,
    t2: &Term,
    semiring: EquivSemiring,
    alphabet: &Alphabet,
) -> Result<Option<Word>> {
    match semiring {
        EquivSemiring::N => {
            let m1 = compile_term(t1, &Naturals, alphabet)?;
            nat_difference(&m1, &compile_term(t2, &Naturals, alphabet)?)
        }
        EquivSemiring::Ninf => {
            let (c1, c2) = (components(t1, alphabet)?, components(t2, alphabet)?);
            let on_inf = c1.r.distinguishing_word(&c2.r)?;
            let eps = Word::empty();
            let on_const = (c1.tc != c2.tc && !c1.r.accepts(&eps) && !c2.r.accepts(&eps)).then_some(eps);
            let on_fin = nat_difference(&c1.t0, &c2.t0)?;
            Ok(least(least(on_inf, on_const), on_fin))
        }
    }
}
