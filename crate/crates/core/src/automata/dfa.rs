use std::collections::{HashMap, VecDeque};

use super::WeightedAutomaton;
use crate::error::{Error, Result};
use crate::semiring::Semiring;
use crate::series::{Alphabet, Word};

/// A total deterministic automaton over an alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportDfa {
    alphabet: Alphabet,
    start: usize,
    accepting: Vec<bool>,
    /// `delta[state][letter]`.
    delta: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RestrictMode {
    Keep,
    Remove,
}

impl SupportDfa {
    pub fn new(
        alphabet: Alphabet,
        start: usize,
        accepting: Vec<bool>,
        delta: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = accepting.len();
        let total = delta.len() == n
            && delta.iter().all(|row| row.len() == alphabet.len() && row.iter().all(|&q| q < n));
        if !total || start >= n {
            return Err(Error::InvalidAutomaton("DFA must be total with a valid start state".into()));
        }
        Ok(SupportDfa { alphabet, start, accepting, delta })
    }

    /// The one-state DFA accepting everything, or nothing.
    pub fn trivial(alphabet: Alphabet, accept: bool) -> Self {
        let k = alphabet.len();
        SupportDfa { alphabet, start: 0, accepting: vec![accept], delta: vec![vec![0; k]] }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> usize {
        self.accepting.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn next(&self, q: usize, letter: usize) -> usize {
        self.delta[q][letter]
    }

    pub fn accepts(&self, w: &Word) -> bool {
        let q = w.indices().iter().fold(self.start, |q, &a| self.delta[q][a as usize]);
        self.accepting[q]
    }

    pub fn complement(&self) -> Self {
        SupportDfa { accepting: self.accepting.iter().map(|b| !b).collect(), ..self.clone() }
    }

    /// The least word, in length-lex order, accepted by exactly one of the
    /// two automata.
    pub fn distinguishing_word(&self, other: &SupportDfa) -> Result<Option<Word>> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(self.alphabet.to_string(), other.alphabet.to_string()));
        }
        let mut seen = HashMap::new();
        let mut queue = VecDeque::new();
        seen.insert((self.start, other.start), ());
        queue.push_back((self.start, other.start, Word::empty()));
        while let Some((p, q, w)) = queue.pop_front() {
            if self.accepting[p] != other.accepting[q] {
                return Ok(Some(w));
            }
            for a in 0..self.alphabet.len() {
                let next = (self.delta[p][a], other.delta[q][a]);
                if seen.insert(next, ()).is_none() {
                    let mut w = w.clone();
                    w.push(a as u8);
                    queue.push_back((next.0, next.1, w));
                }
            }
        }
        Ok(None)
    }

    /// The least accepted word in length-lex order.
    pub fn shortest_accepted(&self) -> Option<Word> {
        self.distinguishing_word(&SupportDfa::trivial(self.alphabet.clone(), false)).expect("same alphabet")
    }

    pub fn is_empty(&self) -> bool {
        self.shortest_accepted().is_none()
    }
}

/// Subset construction for a nondeterministic automaton on states `0..n`.
pub(crate) fn determinize(
    alphabet: &Alphabet,
    initial: Vec<usize>,
    accepting: &[bool],
    succ: &[Vec<Vec<usize>>],
) -> SupportDfa {
    let k = alphabet.len();
    let normal = |mut set: Vec<usize>| {
        set.sort_unstable();
        set.dedup();
        set
    };
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut sets = vec![normal(initial)];
    index.insert(sets[0].clone(), 0);
    let mut delta: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < sets.len() {
        let mut row = Vec::with_capacity(k);
        for a in 0..k {
            let next = normal(sets[i].iter().flat_map(|&p| succ[p][a].iter().copied()).collect());
            let id = *index.entry(next.clone()).or_insert_with(|| {
                sets.push(next);
                sets.len() - 1
            });
            row.push(id);
        }
        delta.push(row);
        i += 1;
    }
    let accepting = sets.iter().map(|set| set.iter().any(|&p| accepting[p])).collect();
    SupportDfa { alphabet: alphabet.clone(), start: 0, accepting, delta }
}

/// A DFA for the support of the behavior.
///
/// Reads nonzero weights as true, which is exact for semirings that are
/// zero-sum free and have no zero divisors, such as ℕ, ℕ∞ and 𝔹.
pub fn support_dfa<S: Semiring>(s: &S, m: &WeightedAutomaton<S::Elem>) -> SupportDfa {
    let n = m.dim();
    let k = m.alphabet().len();
    let mut succ = vec![vec![Vec::new(); k]; n];
    for (a, p, q, _) in m.all_edges() {
        succ[p][a].push(q);
    }
    let initial = (0..n).filter(|&p| !s.is_zero(&m.alpha()[p])).collect();
    let accepting: Vec<bool> = m.beta().iter().map(|b| !s.is_zero(b)).collect();
    determinize(m.alphabet(), initial, &accepting, &succ)
}

/// The product of `m` with `d`: words accepted by `d` keep their
/// coefficient under [`RestrictMode::Keep`] and lose it under
/// [`RestrictMode::Remove`].
pub fn restrict_to_dfa<S: Semiring>(
    s: &S,
    m: &WeightedAutomaton<S::Elem>,
    d: &SupportDfa,
    mode: RestrictMode,
) -> WeightedAutomaton<S::Elem> {
    let k = m.alphabet().len();
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut pairs = Vec::new();
    let mut alpha = Vec::new();
    for p in (0..m.dim()).filter(|&p| !s.is_zero(&m.alpha()[p])) {
        index.insert((p, d.start), pairs.len());
        pairs.push((p, d.start));
        alpha.push(m.alpha()[p].clone());
    }
    let mut edges = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let (p, q) = pairs[i];
        for a in 0..k {
            let q2 = d.delta[q][a];
            for (p2, w) in m.edges(a, p) {
                let j = *index.entry((*p2, q2)).or_insert_with(|| {
                    pairs.push((*p2, q2));
                    pairs.len() - 1
                });
                edges.push((a, i, j, w.clone()));
            }
        }
        i += 1;
    }
    alpha.resize(pairs.len(), s.zero());
    let beta = pairs
        .iter()
        .map(|&(p, q)| {
            if d.accepting[q] == (mode == RestrictMode::Keep) {
                m.beta()[p].clone()
            } else {
                s.zero()
            }
        })
        .collect();
    WeightedAutomaton::from_edges(s, m.alphabet().clone(), alpha, beta, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{behavior_coefficients, compile_term};
    use crate::semiring::Naturals;
    use crate::series::render_series;
    use crate::term::parse_term_unchecked;

    fn dfa_of(text: &str) -> SupportDfa {
        let ab = Alphabet::parse("ab").unwrap();
        support_dfa(&Naturals, &compile_term(&parse_term_unchecked(text).unwrap(), &Naturals, &ab).unwrap())
    }

    #[test]
    fn spec_examples() {
        let ab = Alphabet::parse("ab").unwrap();
        assert!(dfa_of("0").is_empty());
        let d = dfa_of("(a+b)*a");
        for w in ab.words_up_to(6) {
            assert_eq!(d.accepts(&w), w.indices().last() == Some(&0), "{}", ab.render(&w));
        }
        let d = dfa_of("1");
        for w in ab.words_up_to(4) {
            assert_eq!(d.accepts(&w), w.is_empty());
        }
    }

    #[test]
    fn restrict_examples() {
        let ab = Alphabet::parse("ab").unwrap();
        let m = compile_term(&parse_term_unchecked("a + b").unwrap(), &Naturals, &ab).unwrap();
        let all = SupportDfa::trivial(ab.clone(), true);
        let keep = restrict_to_dfa(&Naturals, &m, &all, RestrictMode::Keep);
        assert_eq!(behavior_coefficients(&Naturals, &keep, 4), behavior_coefficients(&Naturals, &m, 4));
        assert!(behavior_coefficients(&Naturals, &restrict_to_dfa(&Naturals, &m, &all, RestrictMode::Remove), 4).is_zero());
        // Accepts exactly {a}: states start, after-a, sink.
        let only_a = SupportDfa::new(ab, 0, vec![false, true, false], vec![vec![1, 2], vec![2, 2], vec![2, 2]]).unwrap();
        let r = restrict_to_dfa(&Naturals, &m, &only_a, RestrictMode::Keep);
        assert_eq!(render_series(&Naturals, &behavior_coefficients(&Naturals, &r, 4), true), "{a:1}");
    }

    #[test]
    fn distinguishing_words() {
        let x = dfa_of("(a+b)*a");
        let y = dfa_of("a(a+b)*");
        let w = x.distinguishing_word(&y).unwrap().unwrap();
        assert_eq!(x.alphabet().render(&w), "ab");
        assert_eq!(dfa_of("(a+b)*").distinguishing_word(&dfa_of("a*(ba*)*")).unwrap(), None);
    }
}
