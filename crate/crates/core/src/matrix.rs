//! Dense matrices over a semiring, the block star, and functional matrices.

use std::fmt;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::semiring::{Semiring, StarSemiring, ValueText};

/// A dense `rows × cols` matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn new(rows: usize, cols: usize, data: Vec<E>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    /// Builds a matrix from its rows; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Matrix::new(n, cols, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: E) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<F, T: Clone>(&self, f: F) -> Matrix<T>
    where
        F: FnMut(&E) -> T,
    {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<F, T: Clone>(&self, f: F) -> Result<Matrix<T>>
    where
        F: FnMut(&E) -> Result<T>,
    {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    /// The submatrix with the given row and column ranges.
    pub fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows.start + i, cols.start + j).clone()
        })
    }

    /// Reassembles `[[a, b], [c, d]]`.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let k = a.rows;
        let l = a.cols;
        Matrix::from_fn(a.rows + c.rows, a.cols + b.cols, |i, j| match (i < k, j < l) {
            (true, true) => a.get(i, j).clone(),
            (true, false) => b.get(i, j - l).clone(),
            (false, true) => c.get(i - k, j).clone(),
            (false, false) => d.get(i - k, j - l).clone(),
        })
    }
}

impl<E: fmt::Debug> fmt::Debug for Matrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.debug_list().entries(&self.data[i * self.cols..(i + 1) * self.cols]).finish()?;
        }
        f.write_str("]")
    }
}

pub fn zeros<S: Semiring>(s: &S, rows: usize, cols: usize) -> Matrix<S::Elem> {
    Matrix::filled(rows, cols, s.zero())
}

pub fn identity<S: Semiring>(s: &S, n: usize) -> Matrix<S::Elem> {
    Matrix::from_fn(n, n, |i, j| if i == j { s.one() } else { s.zero() })
}

pub fn mat_add<S: Semiring>(
    s: &S,
    a: &Matrix<S::Elem>,
    b: &Matrix<S::Elem>,
) -> Result<Matrix<S::Elem>> {
    if a.rows != b.rows || a.cols != b.cols {
        return Err(Error::DimensionMismatch(format!(
            "cannot add {}x{} and {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    Ok(Matrix {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(x, y)| s.add(x, y)).collect(),
    })
}

pub fn mat_mul<S: Semiring>(
    s: &S,
    a: &Matrix<S::Elem>,
    b: &Matrix<S::Elem>,
) -> Result<Matrix<S::Elem>> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = zeros(s, a.rows, b.cols);
    for i in 0..a.rows {
        for l in 0..a.cols {
            let x = a.get(i, l);
            if s.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let y = b.get(l, j);
                if s.is_zero(y) {
                    continue;
                }
                let idx = i * b.cols + j;
                out.data[idx] = s.add(&out.data[idx], &s.mul(x, y));
            }
        }
    }
    Ok(out)
}

pub fn scalar_mul<S: Semiring>(s: &S, c: &S::Elem, a: &Matrix<S::Elem>) -> Matrix<S::Elem> {
    a.map(|x| s.mul(c, x))
}

fn check_star_domain<S: StarSemiring>(s: &S, a: &Matrix<S::Elem>) -> Result<()> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "star of a non-square {}x{} matrix",
            a.rows, a.cols
        )));
    }
    if let Some(x) = a.data.iter().find(|x| !s.in_star_domain(x)) {
        return Err(Error::NotInStarDomain(format!("matrix entry {x:?} in {}", s.name())));
    }
    Ok(())
}

/// The matrix star, splitting off the last row and column.
///
/// With `d = D*` the blocks are `α = (A + B d C)*`, `β = α B d`,
/// `γ = d C α` and `δ = d + γ B d`, which agree with the symmetric block
/// formula in every Conway semiring and need a single recursive call.
pub fn mat_star<S: StarSemiring>(s: &S, a: &Matrix<S::Elem>) -> Result<Matrix<S::Elem>> {
    check_star_domain(s, a)?;
    star_last_split(s, a)
}

fn star_last_split<S: StarSemiring>(s: &S, m: &Matrix<S::Elem>) -> Result<Matrix<S::Elem>> {
    let n = m.rows;
    match n {
        0 => return Ok(m.clone()),
        1 => return Ok(Matrix { rows: 1, cols: 1, data: vec![s.star(&m.data[0])?] }),
        _ => {}
    }
    let k = n - 1;
    let a = m.block(0..k, 0..k);
    let b = m.block(0..k, k..n);
    let c = m.block(k..n, 0..k);
    let d = s.star(m.get(k, k))?;
    let bd = scalar_mul_right(s, &b, &d);
    let alpha = star_last_split(s, &mat_add(s, &a, &mat_mul(s, &bd, &c)?)?)?;
    let beta = mat_mul(s, &alpha, &bd)?;
    let gamma = scalar_mul(s, &d, &mat_mul(s, &c, &alpha)?);
    let delta = s.add(&d, mat_mul(s, &gamma, &bd)?.get(0, 0));
    let delta = Matrix { rows: 1, cols: 1, data: vec![delta] };
    Ok(Matrix::from_blocks(&alpha, &beta, &gamma, &delta))
}

fn scalar_mul_right<S: Semiring>(s: &S, a: &Matrix<S::Elem>, c: &S::Elem) -> Matrix<S::Elem> {
    a.map(|x| s.mul(x, c))
}

/// The matrix star by the literal block definition with the last row and
/// column split off: `α = (A + BD*C)*`, `β = αBD*`, `γ = δCA*`,
/// `δ = (D + CA*B)*`. Exponential in the dimension; kept as a reference.
pub fn mat_star_definition<S: StarSemiring>(
    s: &S,
    a: &Matrix<S::Elem>,
) -> Result<Matrix<S::Elem>> {
    check_star_domain(s, a)?;
    let n = a.rows;
    if n <= 1 {
        return star_last_split(s, a);
    }
    block_star(s, a, n - 1, mat_star_definition)
}

/// The matrix star by the block formula with the upper-left block of size `k`.
pub fn mat_star_split<S: StarSemiring>(
    s: &S,
    a: &Matrix<S::Elem>,
    k: usize,
) -> Result<Matrix<S::Elem>> {
    check_star_domain(s, a)?;
    if k == 0 || k >= a.rows {
        return Err(Error::DimensionMismatch(format!(
            "split point {k} outside 1..{}",
            a.rows
        )));
    }
    block_star(s, a, k, mat_star)
}

type StarFn<S> = fn(&S, &Matrix<<S as Semiring>::Elem>) -> Result<Matrix<<S as Semiring>::Elem>>;

fn block_star<S: StarSemiring>(
    s: &S,
    m: &Matrix<S::Elem>,
    k: usize,
    rec: StarFn<S>,
) -> Result<Matrix<S::Elem>> {
    let n = m.rows;
    let a = m.block(0..k, 0..k);
    let b = m.block(0..k, k..n);
    let c = m.block(k..n, 0..k);
    let d = m.block(k..n, k..n);
    let a_star = rec(s, &a)?;
    let d_star = rec(s, &d)?;
    let alpha = rec(s, &mat_add(s, &a, &mat_mul(s, &mat_mul(s, &b, &d_star)?, &c)?)?)?;
    let delta = rec(s, &mat_add(s, &d, &mat_mul(s, &mat_mul(s, &c, &a_star)?, &b)?)?)?;
    let beta = mat_mul(s, &mat_mul(s, &alpha, &b)?, &d_star)?;
    let gamma = mat_mul(s, &mat_mul(s, &delta, &c)?, &a_star)?;
    Ok(Matrix::from_blocks(&alpha, &beta, &gamma, &delta))
}

/// `A ‖ (B₁, …, B_m)`: the matrix whose `i`-th row is `Aᵢ Bᵢ`.
pub fn row_couple<S: Semiring>(
    s: &S,
    a: &Matrix<S::Elem>,
    bs: &[Matrix<S::Elem>],
) -> Result<Matrix<S::Elem>> {
    if bs.len() != a.rows {
        return Err(Error::DimensionMismatch(format!(
            "{} coupling matrices for {} rows",
            bs.len(),
            a.rows
        )));
    }
    let p = bs.first().map_or(0, |b| b.cols);
    let mut data = Vec::with_capacity(a.rows * p);
    for (i, b) in bs.iter().enumerate() {
        if b.rows != a.cols || b.cols != p {
            return Err(Error::DimensionMismatch(format!(
                "coupling matrix {i} is {}x{}, expected {}x{p}",
                b.rows, b.cols, a.cols
            )));
        }
        let row = Matrix { rows: 1, cols: a.cols, data: a.row(i).to_vec() };
        data.extend(mat_mul(s, &row, b)?.data);
    }
    Ok(Matrix { rows: a.rows, cols: p, data })
}

/// `(B₁, …, B_n) ‖ A`: the matrix whose `j`-th column is `Bⱼ Aⱼ`.
pub fn col_couple<S: Semiring>(
    s: &S,
    bs: &[Matrix<S::Elem>],
    a: &Matrix<S::Elem>,
) -> Result<Matrix<S::Elem>> {
    let bts: Vec<_> = bs.iter().map(Matrix::transpose).collect();
    Ok(row_couple(s, &a.transpose(), &bts)?.transpose())
}

/// A 0-1 matrix with exactly one 1 per row, stored as the function it encodes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FunctionalMatrix {
    map: Vec<usize>,
    cols: usize,
}

impl FunctionalMatrix {
    pub fn new(map: Vec<usize>, cols: usize) -> Result<Self> {
        if let Some(j) = map.iter().find(|&&j| j >= cols) {
            return Err(Error::DimensionMismatch(format!("column {j} outside 0..{cols}")));
        }
        Ok(FunctionalMatrix { map, cols })
    }

    pub fn identity(n: usize) -> Self {
        FunctionalMatrix { map: (0..n).collect(), cols: n }
    }

    pub fn rows(&self) -> usize {
        self.map.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn is_permutation(&self) -> bool {
        if self.rows() != self.cols {
            return false;
        }
        let mut seen = vec![false; self.cols];
        self.map.iter().all(|&j| !std::mem::replace(&mut seen[j], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cols];
        for &j in &self.map {
            seen[j] = true;
        }
        seen.into_iter().all(|b| b)
    }

    /// The matrix product `self · other`, i.e. `i ↦ other(self(i))`.
    pub fn compose(&self, other: &FunctionalMatrix) -> Result<FunctionalMatrix> {
        if self.cols != other.rows() {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows(),
                self.cols,
                other.rows(),
                other.cols
            )));
        }
        Ok(FunctionalMatrix {
            map: self.map.iter().map(|&j| other.map[j]).collect(),
            cols: other.cols,
        })
    }

    pub fn to_matrix<S: Semiring>(&self, s: &S) -> Matrix<S::Elem> {
        Matrix::from_fn(self.rows(), self.cols, |i, j| {
            if self.map[i] == j {
                s.one()
            } else {
                s.zero()
            }
        })
    }

    /// Recognises a 0-1 matrix with one 1 per row.
    pub fn from_matrix<S: Semiring>(s: &S, m: &Matrix<S::Elem>) -> Option<Self> {
        let mut map = Vec::with_capacity(m.rows);
        for i in 0..m.rows {
            let mut hit = None;
            for j in 0..m.cols {
                let x = m.get(i, j);
                if *x == s.one() {
                    if hit.replace(j).is_some() {
                        return None;
                    }
                } else if !s.is_zero(x) {
                    return None;
                }
            }
            map.push(hit?);
        }
        Some(FunctionalMatrix { map, cols: m.cols })
    }

    /// All functions `rows → cols` in lexicographic order of their value lists.
    pub fn enumerate(rows: usize, cols: usize) -> impl Iterator<Item = FunctionalMatrix> {
        let total = if rows == 0 { Some(1) } else { (cols as u128).checked_pow(rows as u32) };
        let total = total.unwrap_or(u128::MAX);
        (0..total).map(move |idx| FunctionalMatrix::nth(rows, cols, idx))
    }

    /// The `idx`-th function in the order of [`FunctionalMatrix::enumerate`].
    pub fn nth(rows: usize, cols: usize, mut idx: u128) -> FunctionalMatrix {
        let mut map = vec![0; rows];
        for slot in map.iter_mut().rev() {
            *slot = (idx % cols as u128) as usize;
            idx /= cols as u128;
        }
        FunctionalMatrix { map, cols }
    }
}

/// The semiring of `n × n` matrices over `base`.
#[derive(Clone, Debug)]
pub struct MatrixSemiring<S> {
    base: S,
    n: usize,
}

impl<S: Semiring> MatrixSemiring<S> {
    pub fn new(base: S, n: usize) -> Self {
        MatrixSemiring { base, n }
    }

    pub fn base(&self) -> &S {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.n
    }
}

impl<S: Semiring> Semiring for MatrixSemiring<S> {
    type Elem = Matrix<S::Elem>;

    fn zero(&self) -> Self::Elem {
        zeros(&self.base, self.n, self.n)
    }

    fn one(&self) -> Self::Elem {
        identity(&self.base, self.n)
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        mat_add(&self.base, a, b).expect("operands are n x n")
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        mat_mul(&self.base, a, b).expect("operands are n x n")
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.data.iter().all(|x| self.base.is_zero(x))
    }

    fn is_commutative(&self) -> bool {
        self.n <= 1 && self.base.is_commutative()
    }

    fn name(&self) -> String {
        format!("{}^{}x{}", self.base.name(), self.n, self.n)
    }
}

impl<S: StarSemiring> StarSemiring for MatrixSemiring<S> {
    fn in_star_domain(&self, a: &Self::Elem) -> bool {
        a.data.iter().all(|x| self.base.in_star_domain(x))
    }

    fn star(&self, a: &Self::Elem) -> Result<Self::Elem> {
        mat_star(&self.base, a)
    }
}

/// Serialises as an array of rows of value strings.
pub fn matrix_to_json<S: ValueText>(s: &S, m: &Matrix<S::Elem>) -> Value {
    Value::Array(
        (0..m.rows)
            .map(|i| Value::Array(m.row(i).iter().map(|x| Value::String(s.render(x))).collect()))
            .collect(),
    )
}

pub fn matrix_from_json<S: ValueText>(s: &S, v: &Value) -> Result<Matrix<S::Elem>> {
    let rows = v.as_array().ok_or_else(|| Error::Json("matrix must be an array".into()))?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Json("matrix row must be an array".into()))?
                .iter()
                .map(|x| match x {
                    Value::String(t) => s.parse_value(t),
                    Value::Number(n) => s.parse_value(&n.to_string()),
                    other => Err(Error::Json(format!("bad matrix entry {other}"))),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}
