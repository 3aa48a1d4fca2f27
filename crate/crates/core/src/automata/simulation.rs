use super::WeightedAutomaton;
use crate::error::{Error, Result};
use crate::matrix::FunctionalMatrix;
use crate::par::Execution;
use crate::semiring::Semiring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Dual,
}

/// A functional matrix `ρ` relating an `m`-state automaton to an
/// `n`-state one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimulationWitness {
    pub rho: FunctionalMatrix,
    pub direction: Direction,
}

/// `αρ = γ`, `Aρ = ρB` and `ρδ = β`, letter by letter.
fn forward<S: Semiring>(
    s: &S,
    m: &WeightedAutomaton<S::Elem>,
    n: &WeightedAutomaton<S::Elem>,
    rho: &[usize],
) -> bool {
    let collapse = |row: &mut Vec<S::Elem>, j: usize, w: &S::Elem| row[j] = s.add(&row[j], w);
    let mut ap = vec![s.zero(); n.dim()];
    for (i, a) in m.alpha().iter().enumerate() {
        collapse(&mut ap, rho[i], a);
    }
    if ap != n.alpha() {
        return false;
    }
    if rho.iter().zip(m.beta()).any(|(&j, b)| n.beta()[j] != *b) {
        return false;
    }
    let mut row = vec![s.zero(); n.dim()];
    let mut target = vec![s.zero(); n.dim()];
    for a in 0..m.alphabet().len() {
        for (i, &j) in rho.iter().enumerate() {
            row.iter_mut().chain(target.iter_mut()).for_each(|x| *x = s.zero());
            for (q, w) in m.edges(a, i) {
                collapse(&mut row, rho[*q], w);
            }
            for (q, w) in n.edges(a, j) {
                target[*q] = w.clone();
            }
            if row != target {
                return false;
            }
        }
    }
    true
}

fn check_shapes<E>(
    m: &WeightedAutomaton<E>,
    n: &WeightedAutomaton<E>,
    rho: &FunctionalMatrix,
) -> Result<()> {
    if m.alphabet() != n.alphabet() {
        return Err(Error::AlphabetMismatch(m.alphabet().to_string(), n.alphabet().to_string()));
    }
    if rho.rows() != m.dim() || rho.cols() != n.dim() {
        return Err(Error::DimensionMismatch(format!(
            "rho is {}x{}, automata have dimensions {} and {}",
            rho.rows(),
            rho.cols(),
            m.dim(),
            n.dim()
        )));
    }
    Ok(())
}

/// Whether `rho` is a simulation from `m` to `n` in the given direction.
///
/// The dual case `γρᵀ = α`, `Bρᵀ = ρᵀA`, `ρᵀβ = δ` is a forward simulation
/// between the transposed automata.
pub fn check_simulation<S: Semiring>(
    s: &S,
    m: &WeightedAutomaton<S::Elem>,
    n: &WeightedAutomaton<S::Elem>,
    rho: &FunctionalMatrix,
    direction: Direction,
) -> Result<bool> {
    check_shapes(m, n, rho)?;
    Ok(match direction {
        Direction::Forward => forward(s, m, n, rho.map()),
        Direction::Dual => forward(s, &m.transpose(s), &n.transpose(s), rho.map()),
    })
}

/// The first `ρ : m → n` in lexicographic order that is a simulation in
/// either direction, trying forward before dual for each candidate.
pub fn search_simulation<S: Semiring>(
    s: &S,
    m: &WeightedAutomaton<S::Elem>,
    n: &WeightedAutomaton<S::Elem>,
    budget: u128,
    exec: Execution,
) -> Result<Option<SimulationWitness>> {
    if m.alphabet() != n.alphabet() {
        return Err(Error::AlphabetMismatch(m.alphabet().to_string(), n.alphabet().to_string()));
    }
    let needed = (n.dim() as u128).checked_pow(m.dim() as u32).unwrap_or(u128::MAX);
    if needed > budget || needed > u64::MAX as u128 {
        return Err(Error::SearchBudgetExceeded { needed, budget });
    }
    let (mt, nt) = (m.transpose(s), n.transpose(s));
    Ok(exec.find_first(needed as u64, |idx| {
        let rho = FunctionalMatrix::nth(m.dim(), n.dim(), idx as u128);
        let direction = if forward(s, m, n, rho.map()) {
            Direction::Forward
        } else if forward(s, &mt, &nt, rho.map()) {
            Direction::Dual
        } else {
            return None;
        };
        Some(SimulationWitness { rho, direction })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::compile_term;
    use crate::matrix::Matrix;
    use crate::semiring::{Nat, Naturals};
    use crate::series::Alphabet;
    use crate::term::parse_term_unchecked;

    fn nats(v: &[u64]) -> Vec<Nat> {
        v.iter().map(|&x| Nat::small(x)).collect()
    }

    fn pair(beta: &[u64]) -> (WeightedAutomaton<Nat>, WeightedAutomaton<Nat>) {
        let a = Alphabet::parse("a").unwrap();
        let diag = Matrix::from_rows(vec![nats(&[1, 0]), nats(&[0, 1])]).unwrap();
        let m = WeightedAutomaton::new(&Naturals, a.clone(), nats(&[1, 0]), nats(beta), vec![diag]).unwrap();
        let one = Matrix::filled(1, 1, Nat::ONE);
        let n = WeightedAutomaton::new(&Naturals, a, nats(&[1]), nats(&[1]), vec![one]).unwrap();
        (m, n)
    }

    #[test]
    fn spec_examples() {
        let collapse = FunctionalMatrix::new(vec![0, 0], 1).unwrap();
        let (m, n) = pair(&[1, 1]);
        assert!(check_simulation(&Naturals, &m, &n, &collapse, Direction::Forward).unwrap());
        assert!(check_simulation(&Naturals, &m, &m, &FunctionalMatrix::identity(2), Direction::Forward).unwrap());
        let (m2, n2) = pair(&[1, 0]);
        assert!(!check_simulation(&Naturals, &m2, &n2, &collapse, Direction::Forward).unwrap());

        for exec in [Execution::Sequential, Execution::Parallel] {
            let w = search_simulation(&Naturals, &m, &n, 1000, exec).unwrap().unwrap();
            assert_eq!((w.rho, w.direction), (collapse.clone(), Direction::Forward));
            let ab = Alphabet::parse("ab").unwrap();
            let ma = compile_term(&parse_term_unchecked("a").unwrap(), &Naturals, &ab).unwrap();
            let mb = compile_term(&parse_term_unchecked("b").unwrap(), &Naturals, &ab).unwrap();
            assert_eq!(search_simulation(&Naturals, &ma, &mb, 1000, exec).unwrap(), None);
            let w = search_simulation(&Naturals, &ma, &ma, 1000, exec).unwrap().unwrap();
            assert_eq!(w.rho, FunctionalMatrix::identity(2));
        }
    }

    #[test]
    fn dual_and_budget() {
        // The mirror image of the forward example is a dual simulation.
        let (m, n) = pair(&[1, 1]);
        let (mt, nt) = (m.transpose(&Naturals), n.transpose(&Naturals));
        let collapse = FunctionalMatrix::new(vec![0, 0], 1).unwrap();
        assert!(check_simulation(&Naturals, &mt, &nt, &collapse, Direction::Dual).unwrap());
        assert!(!check_simulation(&Naturals, &mt, &nt, &collapse, Direction::Forward).unwrap());
        let e = search_simulation(&Naturals, &m, &n, 0, Execution::Sequential).unwrap_err();
        assert!(matches!(e, Error::SearchBudgetExceeded { needed: 1, budget: 0 }));
        let bad = FunctionalMatrix::identity(1);
        assert!(check_simulation(&Naturals, &m, &n, &bad, Direction::Forward).is_err());
    }
}
