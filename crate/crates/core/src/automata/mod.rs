//! Weighted automata `(α, A, β)` with letter-linear transition matrices.

mod compile;
mod dfa;
mod equiv;
mod fixpoint;
mod json;
mod morphic;
mod refine;
mod simulation;
mod to_term;

pub use compile::compile_term;
pub use dfa::{restrict_to_dfa, support_dfa, RestrictMode, SupportDfa};
pub use equiv::{
    brute_force_difference, equivalent, equivalent_automata, nat_difference, ninf_difference,
    EquivSemiring,
};
pub use fixpoint::solve_linear;
pub use json::{automaton_from_json, automaton_to_json};
pub use morphic::{morphic_image, morphic_image_dyn};
pub use refine::{letter_linear, refine, refine_dual, RefinementWitness};
pub use simulation::{check_simulation, search_simulation, Direction, SimulationWitness};
pub use to_term::{automaton_to_term, TermConstants};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::semiring::Semiring;
use crate::series::{Alphabet, TruncatedSeries, Word};

/// Outgoing edges of one state on one letter, sorted by target, no zeros.
type Row<E> = Vec<(usize, E)>;

/// An automaton of dimension `n`: initial vector `α`, final vector `β` and
/// one `n × n` transition matrix per letter, stored sparsely.
#[derive(Clone, PartialEq)]
pub struct WeightedAutomaton<E> {
    alphabet: Alphabet,
    alpha: Vec<E>,
    beta: Vec<E>,
    /// `trans[letter][state]`.
    trans: Vec<Vec<Row<E>>>,
}

impl<E> WeightedAutomaton<E> {
    pub fn dim(&self) -> usize {
        self.alpha.len()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn alpha(&self) -> &[E] {
        &self.alpha
    }

    pub fn beta(&self) -> &[E] {
        &self.beta
    }

    /// The nonzero edges leaving `state` on `letter`.
    pub fn edges(&self, letter: usize, state: usize) -> &[(usize, E)] {
        &self.trans[letter][state]
    }

    /// All nonzero edges as `(letter, from, to, weight)`.
    pub fn all_edges(&self) -> impl Iterator<Item = (usize, usize, usize, &E)> {
        self.trans.iter().enumerate().flat_map(|(a, rows)| {
            rows.iter()
                .enumerate()
                .flat_map(move |(p, row)| row.iter().map(move |(q, w)| (a, p, *q, w)))
        })
    }
}

impl<E: Clone + PartialEq + std::fmt::Debug> WeightedAutomaton<E> {
    /// Builds an automaton from dense data; `trans` has one matrix per letter.
    pub fn new<S: Semiring<Elem = E>>(
        s: &S,
        alphabet: Alphabet,
        alpha: Vec<E>,
        beta: Vec<E>,
        trans: Vec<Matrix<E>>,
    ) -> Result<Self> {
        let n = alpha.len();
        if beta.len() != n {
            return Err(Error::DimensionMismatch(format!("alpha has {n} entries, beta {}", beta.len())));
        }
        if trans.len() != alphabet.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} transition matrices for {} letters",
                trans.len(),
                alphabet.len()
            )));
        }
        let mut sparse = Vec::with_capacity(trans.len());
        for (i, m) in trans.iter().enumerate() {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "matrix for '{}' is {}x{}, expected {n}x{n}",
                    alphabet.letter(i as u8),
                    m.rows(),
                    m.cols()
                )));
            }
            sparse.push(
                (0..n)
                    .map(|p| {
                        m.row(p)
                            .iter()
                            .enumerate()
                            .filter(|(_, w)| !s.is_zero(w))
                            .map(|(q, w)| (q, w.clone()))
                            .collect()
                    })
                    .collect(),
            );
        }
        Ok(WeightedAutomaton { alphabet, alpha, beta, trans: sparse })
    }

    /// Builds from edge lists `(letter, from, to, weight)`, summing repeats.
    pub fn from_edges<S: Semiring<Elem = E>>(
        s: &S,
        alphabet: Alphabet,
        alpha: Vec<E>,
        beta: Vec<E>,
        edges: impl IntoIterator<Item = (usize, usize, usize, E)>,
    ) -> Self {
        let n = alpha.len();
        let mut trans: Vec<Vec<Row<E>>> = vec![vec![Vec::new(); n]; alphabet.len()];
        for (a, p, q, w) in edges {
            trans[a][p].push((q, w));
        }
        for row in trans.iter_mut().flatten() {
            row.sort_by_key(|(q, _)| *q);
            let mut merged: Row<E> = Vec::with_capacity(row.len());
            for (q, w) in row.drain(..) {
                match merged.last_mut() {
                    Some((last, acc)) if *last == q => *acc = s.add(acc, &w),
                    _ => merged.push((q, w)),
                }
            }
            merged.retain(|(_, w)| !s.is_zero(w));
            *row = merged;
        }
        WeightedAutomaton { alphabet, alpha, beta, trans }
    }

    /// The dense transition matrix of one letter.
    pub fn trans_matrix<S: Semiring<Elem = E>>(&self, s: &S, letter: usize) -> Matrix<E> {
        let n = self.dim();
        let mut m = Matrix::filled(n, n, s.zero());
        for (p, row) in self.trans[letter].iter().enumerate() {
            for (q, w) in row {
                m.set(p, *q, w.clone());
            }
        }
        m
    }

    /// `v · A_letter` for a row vector `v`.
    pub fn step<S: Semiring<Elem = E>>(&self, s: &S, v: &[E], letter: usize) -> Vec<E> {
        let mut out = vec![s.zero(); self.dim()];
        for (p, x) in v.iter().enumerate() {
            if s.is_zero(x) {
                continue;
            }
            for (q, w) in &self.trans[letter][p] {
                out[*q] = s.add(&out[*q], &s.mul(x, w));
            }
        }
        out
    }

    /// The forward vector `α · A_w`.
    pub fn forward<S: Semiring<Elem = E>>(&self, s: &S, w: &Word) -> Vec<E> {
        w.indices().iter().fold(self.alpha.clone(), |v, &a| self.step(s, &v, a as usize))
    }

    /// The coefficient of `w` in the behavior.
    pub fn weight<S: Semiring<Elem = E>>(&self, s: &S, w: &Word) -> E {
        dot(s, &self.forward(s, w), &self.beta)
    }

    /// Keeps only the states reachable from `α` that also reach `β`.
    pub fn trim<S: Semiring<Elem = E>>(&self, s: &S) -> Self {
        let n = self.dim();
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for (_, p, q, _) in self.all_edges() {
            succ[p].push(q);
            pred[q].push(p);
        }
        let reach = |seeds: Vec<usize>, adj: &[Vec<usize>]| {
            let mut seen = vec![false; n];
            let mut stack = seeds;
            while let Some(p) = stack.pop() {
                if !std::mem::replace(&mut seen[p], true) {
                    stack.extend(adj[p].iter().copied().filter(|&q| !seen[q]));
                }
            }
            seen
        };
        let fwd = reach((0..n).filter(|&p| !s.is_zero(&self.alpha[p])).collect(), &succ);
        let bwd = reach((0..n).filter(|&p| !s.is_zero(&self.beta[p])).collect(), &pred);
        let keep: Vec<usize> = (0..n).filter(|&p| fwd[p] && bwd[p]).collect();
        self.induced(&keep)
    }

    /// The sub-automaton on `states`, renumbered in the given order.
    fn induced(&self, states: &[usize]) -> Self {
        let mut index = vec![usize::MAX; self.dim()];
        for (i, &p) in states.iter().enumerate() {
            index[p] = i;
        }
        let trans = self
            .trans
            .iter()
            .map(|rows| {
                states
                    .iter()
                    .map(|&p| {
                        rows[p]
                            .iter()
                            .filter(|(q, _)| index[*q] != usize::MAX)
                            .map(|(q, w)| (index[*q], w.clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        WeightedAutomaton {
            alphabet: self.alphabet.clone(),
            alpha: states.iter().map(|&p| self.alpha[p].clone()).collect(),
            beta: states.iter().map(|&p| self.beta[p].clone()).collect(),
            trans,
        }
    }

    /// The automaton `(βᵀ, Aᵀ, αᵀ)`, whose behavior is the mirror image.
    pub fn transpose<S: Semiring<Elem = E>>(&self, s: &S) -> Self {
        let edges: Vec<_> = self.all_edges().map(|(a, p, q, w)| (a, q, p, w.clone())).collect();
        WeightedAutomaton::from_edges(s, self.alphabet.clone(), self.beta.clone(), self.alpha.clone(), edges)
    }

    /// Applies `f` to every weight, dropping edges whose image is zero.
    pub fn map_weights<T: Semiring>(&self, t: &T, f: impl Fn(&E) -> T::Elem) -> WeightedAutomaton<T::Elem> {
        let edges: Vec<_> = self.all_edges().map(|(a, p, q, w)| (a, p, q, f(w))).collect();
        WeightedAutomaton::from_edges(
            t,
            self.alphabet.clone(),
            self.alpha.iter().map(&f).collect(),
            self.beta.iter().map(&f).collect(),
            edges,
        )
    }

    /// Same automaton read over a larger alphabet.
    pub fn extend_alphabet(&self, alphabet: &Alphabet) -> Result<Self> {
        let mut trans = vec![vec![Vec::new(); self.dim()]; alphabet.len()];
        for (i, &c) in self.alphabet.letters().iter().enumerate() {
            let j = alphabet.index_of(c).ok_or(Error::UnknownLetter(c))?;
            trans[j as usize] = self.trans[i].clone();
        }
        Ok(WeightedAutomaton { alphabet: alphabet.clone(), alpha: self.alpha.clone(), beta: self.beta.clone(), trans })
    }
}

impl<E: std::fmt::Debug> std::fmt::Debug for WeightedAutomaton<E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "alpha {:?}", self.alpha)?;
        writeln!(f, "beta  {:?}", self.beta)?;
        for (a, rows) in self.trans.iter().enumerate() {
            writeln!(f, "{}: {:?}", self.alphabet.letter(a as u8), rows)?;
        }
        Ok(())
    }
}

pub(crate) fn dot<S: Semiring>(s: &S, v: &[S::Elem], w: &[S::Elem]) -> S::Elem {
    v.iter().zip(w).fold(s.zero(), |acc, (x, y)| s.add(&acc, &s.mul(x, y)))
}

/// The behavior `α A* β` on all words of length at most `bound`.
pub fn behavior_coefficients<S: Semiring>(
    s: &S,
    m: &WeightedAutomaton<S::Elem>,
    bound: usize,
) -> TruncatedSeries<S::Elem> {
    let mut pairs = Vec::new();
    let mut stack = vec![(Word::empty(), m.alpha.clone())];
    while let Some((w, v)) = stack.pop() {
        if v.iter().all(|x| s.is_zero(x)) {
            continue;
        }
        pairs.push((w.clone(), dot(s, &v, &m.beta)));
        if w.len() < bound {
            for a in 0..m.alphabet.len() {
                let mut next = w.clone();
                next.push(a as u8);
                stack.push((next, m.step(s, &v, a)));
            }
        }
    }
    TruncatedSeries::from_pairs(s, m.alphabet.clone(), bound, pairs)
}
