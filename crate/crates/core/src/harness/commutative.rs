use std::fmt::Debug;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::report::CheckReport;
use crate::automata::RefinementWitness;
use crate::error::{Error, Result};
use crate::matrix::{col_couple, mat_mul, mat_star, row_couple, FunctionalMatrix, Matrix};
use crate::semiring::{Nat, Naturals, StarSemiring};
use crate::series::{Alphabet, Polynomial, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Primal,
    Dual,
}

/// Data for one commutative identity: `C` is `n × k` over ℕ⟨Σ⟩,
/// `ρ : m → n`, and the `ρᵢ : k → m`, `τⱼ : k → n` are functional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutativeInstance {
    pub alphabet: Alphabet,
    pub c: Matrix<Polynomial<Nat>>,
    pub rho: FunctionalMatrix,
    pub rhos: Vec<FunctionalMatrix>,
    pub taus: Vec<FunctionalMatrix>,
    /// When set, `B` is built from this matrix instead of `c`; used to plant
    /// a defect.
    pub c_right: Option<Matrix<Polynomial<Nat>>>,
    pub label: String,
}

fn random_linear(rng: &mut ChaCha8Rng, alphabet: &Alphabet) -> Polynomial<Nat> {
    let pairs: Vec<_> = (0..alphabet.len())
        .map(|a| (Word::letter(a as u8), Nat::small(rng.random_range(0..3))))
        .collect();
    Polynomial::new(&Naturals, alphabet.clone(), pairs)
}

impl CommutativeInstance {
    /// Builds each `ρᵢ` by sending every `p` to a random preimage of
    /// `τ_{iρ}(p)` under `ρ`, so that `ρᵢρ = τ_{iρ}` holds by construction.
    pub fn lift(
        alphabet: Alphabet,
        c: Matrix<Polynomial<Nat>>,
        rho: FunctionalMatrix,
        taus: Vec<FunctionalMatrix>,
        rng: &mut impl Rng,
    ) -> Result<Self> {
        if !rho.is_surjective() {
            return Err(Error::PremiseViolated("rho must be surjective to lift the taus".into()));
        }
        let mut preimage = vec![Vec::new(); rho.cols()];
        for (i, &j) in rho.map().iter().enumerate() {
            preimage[j].push(i);
        }
        let rhos = (0..rho.rows())
            .map(|i| {
                let tau = &taus[rho.apply(i)];
                let map = tau.map().iter().map(|&l| preimage[l][rng.random_range(0..preimage[l].len())]).collect();
                FunctionalMatrix::new(map, rho.rows())
            })
            .collect::<Result<_>>()?;
        let label = format!("m={} n={} k={}", rho.rows(), rho.cols(), c.cols());
        let inst = CommutativeInstance { alphabet, c, rho, rhos, taus, c_right: None, label };
        inst.validate()?;
        Ok(inst)
    }

    /// The instance carried by a refinement of `A ρ = ρ B`.
    pub fn from_refinement(alphabet: Alphabet, w: RefinementWitness, rho: FunctionalMatrix) -> Result<Self> {
        let label = format!("refinement m={} n={} k={}", rho.rows(), rho.cols(), w.c.cols());
        let inst = CommutativeInstance { alphabet, c: w.c, rho, rhos: w.rhos, taus: w.taus, c_right: None, label };
        inst.validate()?;
        Ok(inst)
    }

    fn validate(&self) -> Result<()> {
        let (m, n, k) = (self.rho.rows(), self.rho.cols(), self.c.cols());
        let shapes_ok = self.c.rows() == n
            && self.rhos.len() == m
            && self.taus.len() == n
            && self.rhos.iter().all(|r| r.rows() == k && r.cols() == m)
            && self.taus.iter().all(|t| t.rows() == k && t.cols() == n);
        if !shapes_ok {
            return Err(Error::DimensionMismatch(format!("inconsistent shapes for m={m} n={n} k={k}")));
        }
        Ok(())
    }

    /// Checks `ρᵢρ = τ_{iρ}` for every `i`.
    pub fn side_condition(&self) -> Result<()> {
        for (i, r) in self.rhos.iter().enumerate() {
            let j = self.rho.apply(i);
            if r.compose(&self.rho)? != self.taus[j] {
                return Err(Error::PremiseViolated(format!("rho_{i} rho != tau_{j}")));
            }
        }
        Ok(())
    }

    /// A copy whose `B` side sees one entry of `C` changed by an extra letter.
    pub fn corrupt(&self, rng: &mut impl Rng) -> Result<Self> {
        if self.c.rows() == 0 || self.c.cols() == 0 || self.alphabet.is_empty() {
            return Err(Error::Unsupported("no entry of C to perturb".into()));
        }
        let (j, p) = (rng.random_range(0..self.c.rows()), rng.random_range(0..self.c.cols()));
        let a = rng.random_range(0..self.alphabet.len()) as u8;
        let old = self.c.get(j, p);
        let pairs = old.iter().map(|(w, c)| (w.clone(), c.clone())).chain([(Word::letter(a), Nat::ONE)]);
        let mut c2 = self.c.clone();
        c2.set(j, p, Polynomial::new(&Naturals, self.alphabet.clone(), pairs));
        Ok(CommutativeInstance {
            c_right: Some(c2),
            label: format!("{} corrupted at C[{j}][{p}]", self.label),
            ..self.clone()
        })
    }
}

/// A seeded random instance with a surjective `ρ : m → n` (requires
/// `m ≥ n`, or `m = n = 0`) and letter-linear entries of `C`.
pub fn generate_commutative_instance(
    seed: u64,
    m: usize,
    n: usize,
    k: usize,
    alphabet: &Alphabet,
) -> Result<CommutativeInstance> {
    if m < n || (n == 0 && m > 0) {
        return Err(Error::Unsupported(format!("no surjection from {m} onto {n} states")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut map: Vec<usize> = (0..m).map(|i| if i < n { i } else { rng.random_range(0..n) }).collect();
    for i in (1..m).rev() {
        map.swap(i, rng.random_range(0..=i));
    }
    let rho = FunctionalMatrix::new(map, n)?;
    let taus = (0..n)
        .map(|_| FunctionalMatrix::new((0..k).map(|_| rng.random_range(0..n)).collect(), n))
        .collect::<Result<Vec<_>>>()?;
    let c = Matrix::from_fn(n, k, |_, _| random_linear(&mut rng, alphabet));
    let mut inst = CommutativeInstance::lift(alphabet.clone(), c, rho, taus, &mut rng)?;
    inst.label = format!("seed={seed} {}", inst.label);
    Ok(inst)
}

fn first_difference<E: Clone + PartialEq + Debug>(l: &Matrix<E>, r: &Matrix<E>) -> Option<String> {
    for i in 0..l.rows() {
        for j in 0..l.cols() {
            if l.get(i, j) != r.get(i, j) {
                return Some(format!("entry ({i},{j}): left={:?} right={:?}", l.get(i, j), r.get(i, j)));
            }
        }
    }
    None
}

/// Checks `A*ρ = ρB*` (primal) or `ρᵀA* = B*ρᵀ` (dual) with entries of `C`
/// sent into `s` by `inject`.
///
/// Primal: `A = (ρC) ‖ (ρᵢ)`, `B = C ‖ (τⱼ)`. Dual, reading `C` as the
/// `k × n` matrix `Cᵀ`: `A = (ρᵢᵀ) ‖ (Cᵀρᵀ)`, `B = (τⱼᵀ) ‖ Cᵀ`.
pub fn check_commutative<S: StarSemiring>(
    s: &S,
    inst: &CommutativeInstance,
    inject: &dyn Fn(&Polynomial<Nat>) -> Result<S::Elem>,
    side: Side,
    context: &str,
) -> Result<CheckReport> {
    inst.side_condition()?;
    let c = inst.c.try_map(|p| inject(p))?;
    let c_right = match &inst.c_right {
        Some(c2) => c2.try_map(|p| inject(p))?,
        None => c.clone(),
    };
    let lift = |f: &FunctionalMatrix| f.to_matrix(s);
    let rho = lift(&inst.rho);
    let (left, right, name) = match side {
        Side::Primal => {
            let rho_c = mat_mul(s, &rho, &c)?;
            let a = row_couple(s, &rho_c, &inst.rhos.iter().map(lift).collect::<Vec<_>>())?;
            let b = row_couple(s, &c_right, &inst.taus.iter().map(lift).collect::<Vec<_>>())?;
            (mat_mul(s, &mat_star(s, &a)?, &rho)?, mat_mul(s, &rho, &mat_star(s, &b)?)?, "commutative")
        }
        Side::Dual => {
            let (ct, ct_right, rho_t) = (c.transpose(), c_right.transpose(), rho.transpose());
            let rhos_t: Vec<_> = inst.rhos.iter().map(|r| lift(r).transpose()).collect();
            let taus_t: Vec<_> = inst.taus.iter().map(|t| lift(t).transpose()).collect();
            let a = col_couple(s, &rhos_t, &mat_mul(s, &ct, &rho_t)?)?;
            let b = col_couple(s, &taus_t, &ct_right)?;
            (mat_mul(s, &rho_t, &mat_star(s, &a)?)?, mat_mul(s, &mat_star(s, &b)?, &rho_t)?, "dual commutative")
        }
    };
    let instance = format!("{} in {context}", inst.label);
    Ok(match first_difference(&left, &right) {
        None => CheckReport::pass(name, &instance),
        Some(detail) => CheckReport::fail(name, &instance, detail),
    })
}
