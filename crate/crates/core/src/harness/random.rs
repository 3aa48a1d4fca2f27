//! Seeded generators for the harness, the acceptance suite and benches.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::automata::WeightedAutomaton;
use crate::error::Result;
use crate::matrix::{FunctionalMatrix, Matrix};
use crate::semiring::{ExtendedNat, Nat, Naturals};
use crate::series::{Alphabet, TruncatedSeries, Word};
use crate::term::Term;

/// Shape of random terms.
#[derive(Clone, Copy, Debug)]
pub struct TermShape {
    pub depth: usize,
    /// Allow the constant `inf`.
    pub inf: bool,
    /// Make every starred subterm proper, so the term evaluates over ℕ.
    pub proper_stars: bool,
}

impl Default for TermShape {
    fn default() -> Self {
        TermShape { depth: 5, inf: true, proper_stars: false }
    }
}

fn leaf<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, shape: TermShape) -> Term {
    let letters = alphabet.letters();
    match rng.random_range(0..10) {
        0 => Term::zero(),
        1 => Term::one(),
        2 => Term::nat(Nat::small(2)),
        3 if shape.inf => Term::inf(),
        _ => Term::letter(letters[rng.random_range(0..letters.len())]),
    }
}

/// A random term of depth at most `shape.depth` over `alphabet`.
pub fn random_term<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, shape: TermShape) -> Term {
    if shape.depth == 0 || rng.random_ratio(1, 4) {
        return leaf(rng, alphabet, shape);
    }
    let sub = TermShape { depth: shape.depth - 1, ..shape };
    match rng.random_range(0..8) {
        0..=2 => Term::sum(&random_term(rng, alphabet, sub), &random_term(rng, alphabet, sub)),
        3..=5 => Term::prod(&random_term(rng, alphabet, sub), &random_term(rng, alphabet, sub)),
        k => {
            let mut arg = random_term(rng, alphabet, sub);
            if shape.proper_stars {
                let letters = alphabet.letters();
                arg = Term::prod(&Term::letter(letters[rng.random_range(0..letters.len())]), &arg);
            }
            if k == 6 { Term::star(&arg) } else { Term::plus(&arg) }
        }
    }
}

fn ninf_coefficient<R: Rng + ?Sized>(rng: &mut R) -> ExtendedNat {
    match rng.random_range(0..8) {
        0..=3 => ExtendedNat::ZERO,
        4 | 5 => ExtendedNat::ONE,
        6 => ExtendedNat::from(rng.random_range(2..4u64)),
        _ => ExtendedNat::Inf,
    }
}

/// A random ℕ∞ series with support among words of length at most `support`.
pub fn random_ninf_series<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: &Alphabet,
    bound: usize,
    support: usize,
) -> TruncatedSeries<ExtendedNat> {
    let pairs: Vec<_> = alphabet.words_up_to(support).map(|w| (w, ninf_coefficient(rng))).collect();
    TruncatedSeries::from_pairs(&crate::semiring::ExtendedNaturals, alphabet.clone(), bound, pairs)
}

/// A random ℕ series, proper when `proper` is set.
pub fn random_nat_series<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: &Alphabet,
    bound: usize,
    support: usize,
    proper: bool,
) -> TruncatedSeries<Nat> {
    let pairs: Vec<_> = alphabet
        .words_up_to(support)
        .filter(|w| !(proper && w.is_empty()))
        .map(|w| (w, Nat::small(if rng.random_bool(0.5) { rng.random_range(1..4) } else { 0 })))
        .collect();
    TruncatedSeries::from_pairs(&Naturals, alphabet.clone(), bound, pairs)
}

/// A uniformly random surjection `m → n`; requires `m ≥ n ≥ 1`.
pub fn random_surjection<R: Rng + ?Sized>(rng: &mut R, m: usize, n: usize) -> Result<FunctionalMatrix> {
    let mut map: Vec<usize> = (0..m).map(|i| if i < n { i } else { rng.random_range(0..n) }).collect();
    map.shuffle(rng);
    FunctionalMatrix::new(map, n)
}

fn nat_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, max: u64, density: f64) -> Matrix<Nat> {
    Matrix::from_fn(rows, cols, |_, _| {
        Nat::small(if rng.random_bool(density) { rng.random_range(1..=max) } else { 0 })
    })
}

fn nat_vector<R: Rng + ?Sized>(rng: &mut R, n: usize, max: u64, density: f64) -> Vec<Nat> {
    nat_matrix(rng, 1, n, max, density).entries().to_vec()
}

/// Automata `A` (`m` states) and `B` (`n` states) related by the
/// forward simulation `ρ`: `αρ = γ`, `A_σρ = ρB_σ`, `ρδ = β`.
#[derive(Clone, Debug)]
pub struct SimulationInstance {
    pub a: WeightedAutomaton<Nat>,
    pub b: WeightedAutomaton<Nat>,
    pub a_letters: Vec<Matrix<Nat>>,
    pub b_letters: Vec<Matrix<Nat>>,
    pub rho: FunctionalMatrix,
}

/// Picks `B` at random, then splits each entry `B[ρ(i)][l]` of every row
/// of `A` into random units over the preimage `ρ⁻¹(l)`.
pub fn random_simulation<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: &Alphabet,
    m: usize,
    n: usize,
) -> Result<SimulationInstance> {
    let rho = random_surjection(rng, m, n)?;
    let mut preimage = vec![Vec::new(); n];
    for (i, &l) in rho.map().iter().enumerate() {
        preimage[l].push(i);
    }
    let b_letters: Vec<_> = (0..alphabet.len()).map(|_| nat_matrix(rng, n, n, 2, 0.4)).collect();
    let a_letters: Vec<_> = b_letters
        .iter()
        .map(|b| {
            let mut a = vec![vec![0u64; m]; m];
            for (i, row) in a.iter_mut().enumerate() {
                for (l, pre) in preimage.iter().enumerate() {
                    let units = b.get(rho.apply(i), l).to_u64().expect("small weight");
                    for _ in 0..units {
                        row[pre[rng.random_range(0..pre.len())]] += 1;
                    }
                }
            }
            Matrix::from_fn(m, m, |i, j| Nat::small(a[i][j]))
        })
        .collect();
    let alpha = nat_vector(rng, m, 2, 0.5);
    let mut gamma = vec![Nat::ZERO; n];
    for (i, x) in alpha.iter().enumerate() {
        gamma[rho.apply(i)] = gamma[rho.apply(i)].add(x);
    }
    let delta = nat_vector(rng, n, 2, 0.6);
    let beta = (0..m).map(|i| delta[rho.apply(i)].clone()).collect();
    let a = WeightedAutomaton::new(&Naturals, alphabet.clone(), alpha, beta, a_letters.clone())?;
    let b = WeightedAutomaton::new(&Naturals, alphabet.clone(), gamma, delta, b_letters.clone())?;
    Ok(SimulationInstance { a, b, a_letters, b_letters, rho })
}

/// A random ℕ-automaton with weights in `0..=max`.
pub fn random_automaton<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: &Alphabet,
    dim: usize,
    max: u64,
) -> Result<WeightedAutomaton<Nat>> {
    let trans = (0..alphabet.len()).map(|_| nat_matrix(rng, dim, dim, max, 0.35)).collect();
    let alpha = nat_vector(rng, dim, max, 0.5);
    let beta = nat_vector(rng, dim, max, 0.5);
    WeightedAutomaton::new(&Naturals, alphabet.clone(), alpha, beta, trans)
}

/// The automaton with states renamed by the permutation `perm`.
pub fn permute_states(m: &WeightedAutomaton<Nat>, perm: &[usize]) -> WeightedAutomaton<Nat> {
    let mut alpha = vec![Nat::ZERO; m.dim()];
    let mut beta = vec![Nat::ZERO; m.dim()];
    for (i, &p) in perm.iter().enumerate() {
        alpha[p] = m.alpha()[i].clone();
        beta[p] = m.beta()[i].clone();
    }
    let edges: Vec<_> = m.all_edges().map(|(a, p, q, w)| (a, perm[p], perm[q], w.clone())).collect();
    WeightedAutomaton::from_edges(&Naturals, m.alphabet().clone(), alpha, beta, edges)
}

/// A pair of ℕ-automata of dimension `1..=max_dim` each. Roughly a third of
/// the pairs are equivalent by a state permutation, a third by a
/// simulation collapse, and the rest are independent draws, some of which
/// differ only in a single weight.
pub fn random_automaton_pair<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: &Alphabet,
    max_dim: usize,
) -> Result<(WeightedAutomaton<Nat>, WeightedAutomaton<Nat>)> {
    let dim = rng.random_range(1..=max_dim);
    Ok(match rng.random_range(0..4) {
        0 => {
            let m = random_automaton(rng, alphabet, dim, 2)?;
            let mut perm: Vec<usize> = (0..dim).collect();
            perm.shuffle(rng);
            let p = permute_states(&m, &perm);
            (m, p)
        }
        1 => {
            let n = rng.random_range(1..=dim);
            let inst = random_simulation(rng, alphabet, dim, n)?;
            (inst.a, inst.b)
        }
        2 => {
            let m = random_automaton(rng, alphabet, dim, 2)?;
            let mut edges: Vec<_> = m.all_edges().map(|(a, p, q, w)| (a, p, q, w.clone())).collect();
            let (a, p, q) = (rng.random_range(0..alphabet.len()), rng.random_range(0..dim), rng.random_range(0..dim));
            edges.push((a, p, q, Nat::ONE));
            let tweaked = WeightedAutomaton::from_edges(
                &Naturals,
                alphabet.clone(),
                m.alpha().to_vec(),
                m.beta().to_vec(),
                edges,
            );
            (m, tweaked)
        }
        _ => {
            let other = rng.random_range(1..=max_dim);
            (random_automaton(rng, alphabet, dim, 2)?, random_automaton(rng, alphabet, other, 2)?)
        }
    })
}

/// Every word of length at most `bound`, in length-lex order.
pub fn all_words(alphabet: &Alphabet, bound: usize) -> Vec<Word> {
    alphabet.words_up_to(bound).collect()
}
