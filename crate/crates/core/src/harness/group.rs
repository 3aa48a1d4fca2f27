use serde_json::Value;

use super::report::CheckReport;
use crate::error::{Error, Result};
use crate::matrix::{mat_star, Matrix};
use crate::semiring::StarSemiring;

/// The multiplication table of a finite group whose unit is element `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    name: String,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl CayleyTable {
    /// Validates the group axioms.
    pub fn new(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        let bad = |msg: String| Err(Error::InvalidGroup(msg));
        if n == 0 {
            return bad("empty table".into());
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return bad("table must be square with entries below the order".into());
        }
        if (0..n).any(|i| table[0][i] != i || table[i][0] != i) {
            return bad("element 0 is not the unit".into());
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if table[table[i][j]][k] != table[i][table[j][k]] {
                        return bad(format!("not associative at ({i}, {j}, {k})"));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for (i, row) in table.iter().enumerate() {
            match (0..n).find(|&j| row[j] == 0 && table[j][i] == 0) {
                Some(j) => inverse.push(j),
                None => return bad(format!("element {i} has no inverse")),
            }
        }
        Ok(CayleyTable { name: name.into(), table, inverse })
    }

    /// The cyclic group of order `n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        CayleyTable::new(format!("z{n}"), (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect())
    }

    /// The symmetric group on three points, identity first.
    pub fn s3() -> Self {
        let perms: Vec<[usize; 3]> =
            vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed");
        let table = perms
            .iter()
            .map(|p| perms.iter().map(|q| index([q[p[0]], q[p[1]], q[p[2]]])).collect())
            .collect();
        CayleyTable::new("s3", table).expect("S3 is a group")
    }

    /// `z1`–`z4` and `s3`.
    pub fn builtin(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "s3" => Ok(CayleyTable::s3()),
            "z1" => CayleyTable::cyclic(1),
            "z2" => CayleyTable::cyclic(2),
            "z3" => CayleyTable::cyclic(3),
            "z4" => CayleyTable::cyclic(4),
            other => Err(Error::InvalidGroup(format!("unknown group {other:?}"))),
        }
    }

    pub fn builtins() -> Vec<CayleyTable> {
        ["z1", "z2", "z3", "z4", "s3"].iter().map(|n| CayleyTable::builtin(n).expect("builtin")).collect()
    }

    /// A JSON array of rows of element indices.
    pub fn from_json(name: impl Into<String>, v: &Value) -> Result<Self> {
        let table: Vec<Vec<usize>> = serde_json::from_value(v.clone())?;
        CayleyTable::new(name, table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }
}

/// The matrix whose `(i, j)` entry is `a` indexed by `i⁻¹j`.
pub fn group_matrix<E: Clone>(g: &CayleyTable, values: &[E]) -> Result<Matrix<E>> {
    let n = g.order();
    if values.len() != n {
        return Err(Error::DimensionMismatch(format!("{} values for a group of order {n}", values.len())));
    }
    Ok(Matrix::from_fn(n, n, |i, j| values[g.mul(g.inverse(i), j)].clone()))
}

/// Compares the sum of the first row of `M_G*` with `(a₁ + ⋯ + a_n)*`.
pub fn check_group_identity<S: StarSemiring>(
    s: &S,
    g: &CayleyTable,
    values: &[S::Elem],
    instance: &str,
) -> CheckReport {
    let identity = format!("group {}", g.name());
    let sides = || -> Result<_> {
        let star = mat_star(s, &group_matrix(g, values)?)?;
        let left = s.sum(star.row(0));
        Ok((left, s.star(&s.sum(values))?))
    };
    match sides() {
        Ok((l, r)) => CheckReport::compare(&identity, instance, &l, &r),
        Err(e @ Error::NotInStarDomain(_)) => CheckReport::skip(&identity, instance, e),
        Err(e) => CheckReport::fail(&identity, instance, e),
    }
}
