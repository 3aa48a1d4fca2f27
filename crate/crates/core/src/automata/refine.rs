use crate::error::{Error, Result};
use crate::matrix::{mat_mul, row_couple, FunctionalMatrix, Matrix};
use crate::semiring::{Nat, Naturals};
use crate::series::{Alphabet, Polynomial, SeriesSemiring, TruncatedSeries, Word};

/// A common refinement of `A` (`m × m`) and `B` (`n × n`) along `ρ : m → n`:
/// `A = (ρC) ‖ (ρ₁, …, ρ_m)` and `B = C ‖ (τ₁, …, τ_n)` with `ρᵢρ = τ_{iρ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinementWitness {
    /// `n × k`, every entry a single letter or zero.
    pub c: Matrix<Polynomial<Nat>>,
    /// `m` functional matrices of shape `k × m`.
    pub rhos: Vec<FunctionalMatrix>,
    /// `n` functional matrices of shape `k × n`.
    pub taus: Vec<FunctionalMatrix>,
}

fn check_letters(alphabet: &Alphabet, a: &[Matrix<Nat>], b: &[Matrix<Nat>]) -> Result<()> {
    if a.len() != alphabet.len() || b.len() != alphabet.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} and {} letter matrices for {} letters",
            a.len(),
            b.len(),
            alphabet.len()
        )));
    }
    Ok(())
}

/// Checks `Aρ = ρB` letter by letter.
fn premise(a: &[Matrix<Nat>], b: &[Matrix<Nat>], rho: &FunctionalMatrix) -> Result<()> {
    let r = rho.to_matrix(&Naturals);
    for (i, (x, y)) in a.iter().zip(b).enumerate() {
        if x.rows() != rho.rows() || y.rows() != rho.cols() {
            return Err(Error::DimensionMismatch("rho does not match the matrix sizes".into()));
        }
        if mat_mul(&Naturals, x, &r)? != mat_mul(&Naturals, &r, y)? {
            return Err(Error::PremiseViolated(format!("A rho != rho B on letter {i}")));
        }
    }
    Ok(())
}

/// Splits every coefficient into unit atoms and assigns them greedily from
/// left to right, one block of columns per letter.
pub fn refine(
    alphabet: &Alphabet,
    a: &[Matrix<Nat>],
    b: &[Matrix<Nat>],
    rho: &FunctionalMatrix,
) -> Result<RefinementWitness> {
    check_letters(alphabet, a, b)?;
    premise(a, b, rho)?;
    let (m, n) = (rho.rows(), rho.cols());
    let count = |x: &Nat| -> Result<usize> {
        x.to_u64()
            .and_then(|v| usize::try_from(v).ok())
            .filter(|&v| v <= 1 << 20)
            .ok_or_else(|| Error::Unsupported(format!("coefficient {x} too large to split into units")))
    };
    let mut preimage = vec![Vec::new(); n];
    for (i, &j) in rho.map().iter().enumerate() {
        preimage[j].push(i);
    }
    let mut c_rows: Vec<Vec<Polynomial<Nat>>> = vec![Vec::new(); n];
    let mut tau_maps: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut rho_maps: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (letter, (a_s, b_s)) in a.iter().zip(b).enumerate() {
        let sigma = Polynomial::new(&Naturals, alphabet.clone(), [(Word::letter(letter as u8), Nat::ONE)]);
        let zero = Polynomial::new(&Naturals, alphabet.clone(), []);
        // Column of the unit at each position of row j, in order.
        let units: Vec<Vec<usize>> = (0..n)
            .map(|j| {
                let mut cols = Vec::new();
                for l in 0..n {
                    cols.extend(std::iter::repeat_n(l, count(b_s.get(j, l))?));
                }
                Ok(cols)
            })
            .collect::<Result<_>>()?;
        let width = units.iter().map(Vec::len).max().unwrap_or(0);
        for j in 0..n {
            for p in 0..width {
                let unit = units[j].get(p);
                c_rows[j].push(if unit.is_some() { sigma.clone() } else { zero.clone() });
                tau_maps[j].push(unit.copied().unwrap_or(j));
            }
        }
        for (i, rho_i) in rho_maps.iter_mut().enumerate() {
            let j = rho.apply(i);
            // For each column block l, the states i' ∈ ρ⁻¹(l) repeated
            // A_σ[i][i'] times; the units of block l are dealt out in order.
            let mut pools: Vec<std::vec::IntoIter<usize>> = Vec::with_capacity(n);
            for pre in &preimage {
                let mut pool = Vec::new();
                for &i2 in pre {
                    pool.extend(std::iter::repeat_n(i2, count(a_s.get(i, i2))?));
                }
                pools.push(pool.into_iter());
            }
            for p in 0..width {
                let target = match units[j].get(p) {
                    Some(&l) => pools[l].next().expect("premise gives equal block sums"),
                    None => i,
                };
                rho_i.push(target);
            }
        }
    }
    let k = tau_maps.first().map_or(0, Vec::len);
    let c = Matrix::from_fn(n, k, |j, p| c_rows[j][p].clone());
    let taus = tau_maps.into_iter().map(|t| FunctionalMatrix::new(t, n)).collect::<Result<_>>()?;
    let rhos = rho_maps.into_iter().map(|r| FunctionalMatrix::new(r, m)).collect::<Result<_>>()?;
    Ok(RefinementWitness { c, rhos, taus })
}

/// [`refine`] for a dual simulation `ρᵀA = Bρᵀ`, applied to the transposes:
/// the witness satisfies `Aᵀ = (ρC) ‖ (ρᵢ)` and `Bᵀ = C ‖ (τⱼ)`.
pub fn refine_dual(
    alphabet: &Alphabet,
    a: &[Matrix<Nat>],
    b: &[Matrix<Nat>],
    rho: &FunctionalMatrix,
) -> Result<RefinementWitness> {
    let at: Vec<_> = a.iter().map(Matrix::transpose).collect();
    let bt: Vec<_> = b.iter().map(Matrix::transpose).collect();
    refine(alphabet, &at, &bt, rho)
}

/// The letter-linear matrix `Σ_σ A_σ σ` as series of degree one.
pub fn letter_linear(alphabet: &Alphabet, per_letter: &[Matrix<Nat>]) -> Matrix<TruncatedSeries<Nat>> {
    let (r, c) = per_letter.first().map_or((0, 0), |x| (x.rows(), x.cols()));
    Matrix::from_fn(r, c, |i, j| {
        TruncatedSeries::from_pairs(
            &Naturals,
            alphabet.clone(),
            1,
            per_letter.iter().enumerate().map(|(a, x)| (Word::letter(a as u8), x.get(i, j).clone())),
        )
    })
}

impl RefinementWitness {
    /// Re-derives `A` and `B` from the witness and checks them, along with
    /// the side conditions `ρᵢρ = τ_{iρ}`.
    pub fn verify(
        &self,
        alphabet: &Alphabet,
        a: &[Matrix<Nat>],
        b: &[Matrix<Nat>],
        rho: &FunctionalMatrix,
    ) -> Result<()> {
        for (i, r) in self.rhos.iter().enumerate() {
            if r.compose(rho)? != self.taus[rho.apply(i)] {
                return Err(Error::PremiseViolated(format!("rho_{i} rho != tau_{}", rho.apply(i))));
            }
        }
        let ctx = SeriesSemiring::new(Naturals, alphabet.clone(), 1);
        let c = self.c.map(|p| p.to_series(1));
        let lift = |f: &FunctionalMatrix| f.to_matrix(&ctx);
        let rho_c = mat_mul(&ctx, &lift(rho), &c)?;
        let a2 = row_couple(&ctx, &rho_c, &self.rhos.iter().map(lift).collect::<Vec<_>>())?;
        let b2 = row_couple(&ctx, &c, &self.taus.iter().map(lift).collect::<Vec<_>>())?;
        let (a1, b1) = (letter_linear(alphabet, a), letter_linear(alphabet, b));
        if a2 != a1 {
            return Err(Error::PremiseViolated("A is not (rho C) || (rho_i)".into()));
        }
        if b2 != b1 {
            return Err(Error::PremiseViolated("B is not C || (tau_j)".into()));
        }
        Ok(())
    }
}
