//! Exact sparse linear algebra: row reduction, null spaces, inverses and a
//! positive-definiteness test for Hermitian matrices.

use std::collections::BTreeMap;

use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::tensor::Tensor;

pub type SparseRow = BTreeMap<usize, Cyclo>;

/// Incremental row echelon form over the cyclotomic field.
///
/// Rows are inserted one at a time and reduced against the existing pivots;
/// each stored pivot row is normalized so its leading entry is 1.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

fn axpy(row: &mut SparseRow, s: &Cyclo, other: &SparseRow) {
    for (&c, v) in other {
        let d = s * v;
        let slot = row.entry(c).or_default();
        *slot -= &d;
        if slot.is_zero() {
            row.remove(&c);
        }
    }
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the pivots; returns true if it was independent.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        let mut cursor = 0;
        loop {
            let next = row
                .range(cursor..)
                .map(|(&c, _)| c)
                .find(|c| self.pivots.contains_key(c));
            let Some(c) = next else { break };
            let s = row[&c].clone();
            axpy(&mut row, &s, &self.pivots[&c]);
            cursor = c + 1;
        }
        let Some((&lead, lv)) = row.iter().next() else {
            return false;
        };
        let inv = lv.inv().expect("nonzero leading entry");
        for v in row.values_mut() {
            *v = &*v * &inv;
        }
        self.pivots.insert(lead, row);
        true
    }

    /// Clears every pivot column from the other rows (reduced form).
    pub fn reduce(&mut self) {
        let cols: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for &p in &cols {
            let prow = self.pivots[&p].clone();
            for (_, row) in self.pivots.range_mut(..p) {
                if let Some(s) = row.get(&p).cloned() {
                    axpy(row, &s, &prow);
                }
            }
        }
    }

    pub fn pivot_rows(&self) -> impl Iterator<Item = (&usize, &SparseRow)> {
        self.pivots.iter()
    }

    /// Basis of the null space in `ncols` unknowns, one vector per free
    /// column (free variable set to 1). Requires `reduce` to have run.
    pub fn nullspace(&self, ncols: usize) -> Vec<Vec<Cyclo>> {
        let mut out = Vec::new();
        for f in (0..ncols).filter(|c| !self.pivots.contains_key(c)) {
            let mut v = vec![Cyclo::zero(); ncols];
            v[f] = Cyclo::one();
            for (&p, row) in &self.pivots {
                if let Some(x) = row.get(&f) {
                    v[p] = -x;
                }
            }
            out.push(v);
        }
        out
    }
}

/// Null space of the system given by `rows` in `ncols` unknowns.
pub fn nullspace(rows: impl IntoIterator<Item = SparseRow>, ncols: usize) -> Vec<Vec<Cyclo>> {
    let mut e = Echelon::new();
    for r in rows {
        if e.rank() == ncols {
            break;
        }
        e.insert(r);
    }
    e.reduce();
    e.nullspace(ncols)
}

/// Inverse of the leading `n x n` block of a rank-2 tensor.
pub fn inverse(m: &Tensor, n: usize) -> Result<Tensor> {
    let mut rows: Vec<SparseRow> = vec![SparseRow::new(); n];
    for (k, v) in m.iter() {
        let (i, j) = (k[0] as usize, k[1] as usize);
        if i >= n || j >= n {
            return Err(Error::Shape(format!("entry ({i},{j}) outside {n}x{n}")));
        }
        rows[i].insert(j, v.clone());
    }
    for (i, r) in rows.iter_mut().enumerate() {
        r.insert(n + i, Cyclo::one());
    }
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    if (0..n).any(|c| !e.pivots.contains_key(&c)) {
        return Err(Error::Singular(format!("{n}x{n} matrix has rank below {n}")));
    }
    e.reduce();
    let mut out = Tensor::zeros(2, m.dim().max(n));
    for (&p, row) in e.pivots.range(..n) {
        for (&c, v) in row.range(n..) {
            out.set(&[p, c - n], v.clone());
        }
    }
    Ok(out)
}

/// Conjugate transpose of a rank-2 tensor.
pub fn adjoint(m: &Tensor) -> Tensor {
    let mut out = Tensor::zeros(2, m.dim());
    for (k, v) in m.iter() {
        out.set(&[k[1] as usize, k[0] as usize], v.conj());
    }
    out
}

/// Why a matrix failed the positive-definiteness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DefinitenessFailure {
    /// `m[i][j] != conj(m[j][i])`.
    NotHermitian { i: usize, j: usize, lhs: Cyclo, rhs: Cyclo },
    /// The `k`-th elimination pivot is not a positive real.
    Pivot { k: usize, value: Cyclo },
}

/// Positive-definiteness of a Hermitian matrix by elimination without
/// pivoting: all pivots are positive iff all leading principal minors are.
pub fn check_positive_definite(m: &Tensor, n: usize) -> std::result::Result<(), DefinitenessFailure> {
    let mut asym = Vec::new();
    for (k, _) in m.iter() {
        let (i, j) = (k[0] as usize, k[1] as usize);
        for (x, y) in [(i, j), (j, i)] {
            let lhs = m.get(&[x, y]);
            let rhs = m.get(&[y, x]).conj();
            if lhs != rhs {
                asym.push((x, y, lhs, rhs));
            }
        }
    }
    asym.sort_by_key(|e| (e.0, e.1));
    if let Some((i, j, lhs, rhs)) = asym.into_iter().next() {
        return Err(DefinitenessFailure::NotHermitian { i, j, lhs, rhs });
    }
    let mut rows: Vec<SparseRow> = vec![SparseRow::new(); n];
    for (k, v) in m.iter() {
        rows[k[0] as usize].insert(k[1] as usize, v.clone());
    }
    for k in 0..n {
        let pivot = rows[k].get(&k).cloned().unwrap_or_default();
        if !pivot.is_real_positive() {
            return Err(DefinitenessFailure::Pivot { k, value: pivot });
        }
        let inv = pivot.inv().expect("positive pivot");
        let prow = rows[k].clone();
        for row in rows.iter_mut().skip(k + 1) {
            if let Some(x) = row.get(&k).cloned() {
                axpy(row, &(&x * &inv), &prow);
            }
        }
    }
    Ok(())
}

pub fn is_positive_definite(m: &Tensor, n: usize) -> bool {
    check_positive_definite(m, n).is_ok()
}

/// Matrix of a linear map given as a function on basis vectors, as a
/// rank-2 tensor `M[i][j]` = coefficient of `e_j` in the image of `e_i`.
pub fn matrix_from_fn(dim: usize, f: impl Fn(usize) -> Vec<Cyclo>) -> Tensor {
    let mut t = Tensor::zeros(2, dim);
    for i in 0..dim {
        for (j, v) in f(i).into_iter().enumerate() {
            t.set(&[i, j], v);
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Tensor {
        let mut t = Tensor::zeros(2, rows.len());
        for (i, r) in rows.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                t.set(&[i, j], Cyclo::from_int(x));
            }
        }
        t
    }

    fn row(v: &[i64]) -> SparseRow {
        v.iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| (i, Cyclo::from_int(x)))
            .collect()
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1, 0], &[1, 1, 0], &[0, 3, 1]]);
        let ai = inverse(&a, 3).unwrap();
        let id = crate::tensor::contract("ij,jk->ik", &[&a, &ai]).unwrap();
        assert_eq!(id, Tensor::identity(3));
    }

    #[test]
    fn singular_is_reported() {
        let a = m(&[&[1, 2], &[2, 4]]);
        assert!(matches!(inverse(&a, 2), Err(Error::Singular(_))));
    }

    #[test]
    fn nullspace_basis() {
        let ns = nullspace([row(&[1, 1, 0]), row(&[0, 0, 1]), row(&[2, 2, 0])], 3);
        assert_eq!(ns, vec![vec![Cyclo::from_int(-1), Cyclo::one(), Cyclo::zero()]]);
    }

    #[test]
    fn definiteness() {
        assert!(is_positive_definite(&m(&[&[2, 1], &[1, 2]]), 2));
        assert!(!is_positive_definite(&m(&[&[1, 2], &[2, 1]]), 2));
        assert!(matches!(
            check_positive_definite(&m(&[&[1, 2], &[0, 1]]), 2),
            Err(DefinitenessFailure::NotHermitian { i: 0, j: 1, .. })
        ));
        assert!(matches!(
            check_positive_definite(&m(&[&[1, 2], &[2, 1]]), 2),
            Err(DefinitenessFailure::Pivot { k: 1, .. })
        ));
        let mut h = Tensor::zeros(2, 2);
        h.set(&[0, 0], Cyclo::from_int(2));
        h.set(&[1, 1], Cyclo::from_int(2));
        h.set(&[0, 1], Cyclo::i());
        h.set(&[1, 0], -Cyclo::i());
        assert!(is_positive_definite(&h, 2));
    }
}
