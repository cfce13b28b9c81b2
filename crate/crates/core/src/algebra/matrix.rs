//! Dense matrices and exact Gaussian elimination.
//!
//! Elimination is written once over the [`LinearField`] trait and used both
//! for tower fields ([`ExactField`]) and prime fields ([`PrimeField`]).

use std::sync::Arc;

use super::field::FieldElement;
use super::modp::{inv_mod, mul_mod};
use super::tower::Tower;
use super::AlgebraError;

/// Scalars that Gaussian elimination can work with.
pub trait LinearField: Sync {
    /// Element type.
    type Elem: Clone + Send + Sync + PartialEq;
    /// Additive identity.
    fn zero(&self) -> Self::Elem;
    /// Multiplicative identity.
    fn one(&self) -> Self::Elem;
    /// Zero test.
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// `a − b·c`.
    fn sub_mul(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem;
    /// `a·b`.
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `−a`.
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `1/a` for nonzero `a`.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
}

/// The tower field of a given [`Tower`].
#[derive(Clone, Debug)]
pub struct ExactField {
    /// Coefficient tower.
    pub tower: Arc<Tower>,
}

impl LinearField for ExactField {
    type Elem = FieldElement;
    fn zero(&self) -> FieldElement {
        FieldElement::zero(&self.tower)
    }
    fn one(&self) -> FieldElement {
        FieldElement::one(&self.tower)
    }
    fn is_zero(&self, a: &FieldElement) -> bool {
        a.is_zero()
    }
    fn sub_mul(&self, a: &FieldElement, b: &FieldElement, c: &FieldElement) -> FieldElement {
        a - &(b * c)
    }
    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a * b
    }
    fn neg(&self, a: &FieldElement) -> FieldElement {
        -a
    }
    fn inv(&self, a: &FieldElement) -> FieldElement {
        a.inv().expect("nonzero pivot")
    }
}

/// The prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    /// The prime.
    pub p: u64,
}

impl LinearField for PrimeField {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn sub_mul(&self, a: &u64, b: &u64, c: &u64) -> u64 {
        let prod = mul_mod(*b, *c, self.p);
        if *a >= prod {
            a - prod
        } else {
            a + self.p - prod
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        inv_mod(*a, self.p)
    }
}

/// Reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Echelon<E> {
    /// Nonzero rows of the reduced form, one per pivot.
    pub rows: Vec<Vec<E>>,
    /// Pivot column of each row, increasing.
    pub pivots: Vec<usize>,
    /// Number of columns.
    pub cols: usize,
}

/// Computes the reduced row echelon form.
///
/// Pivot columns are taken left to right; among the candidate rows for a
/// pivot the sparsest one is chosen (lowest index on ties).  The reduced
/// form itself does not depend on these choices.
pub fn rref<F: LinearField>(field: &F, mut rows: Vec<Vec<F::Elem>>, cols: usize) -> Echelon<F::Elem> {
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    let mut weight: Vec<usize> = rows
        .iter()
        .map(|r| r.iter().filter(|x| !field.is_zero(x)).count())
        .collect();
    for col in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(best) = (rank..rows.len())
            .filter(|&i| !field.is_zero(&rows[i][col]))
            .min_by_key(|&i| (weight[i], i))
        else {
            continue;
        };
        rows.swap(rank, best);
        weight.swap(rank, best);
        let inv = field.inv(&rows[rank][col]);
        for x in rows[rank][col..].iter_mut() {
            if !field.is_zero(x) {
                *x = field.mul(x, &inv);
            }
        }
        let pivot_row = std::mem::take(&mut rows[rank]);
        let nz: Vec<usize> = (col..cols).filter(|&j| !field.is_zero(&pivot_row[j])).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || field.is_zero(&row[col]) {
                continue;
            }
            let f = row[col].clone();
            for &j in &nz {
                row[j] = field.sub_mul(&row[j], &f, &pivot_row[j]);
            }
            weight[i] = row.iter().filter(|x| !field.is_zero(x)).count();
        }
        rows[rank] = pivot_row;
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    Echelon { rows, pivots, cols }
}

/// Rank of a list of row vectors (row echelon form only, no back
/// substitution).
pub fn rank<F: LinearField>(field: &F, mut rows: Vec<Vec<F::Elem>>, cols: usize) -> usize {
    let mut r = 0usize;
    for col in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(best) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(r, best);
        let inv = field.inv(&rows[r][col]);
        let pivot_row = std::mem::take(&mut rows[r]);
        let nz: Vec<usize> = (col + 1..cols).filter(|&j| !field.is_zero(&pivot_row[j])).collect();
        for row in rows[r + 1..].iter_mut() {
            if field.is_zero(&row[col]) {
                continue;
            }
            let f = field.mul(&row[col], &inv);
            for &j in &nz {
                row[j] = field.sub_mul(&row[j], &f, &pivot_row[j]);
            }
            row[col] = field.zero();
        }
        rows[r] = pivot_row;
        r += 1;
    }
    r
}

impl<E: Clone> Echelon<E> {
    /// Rank.
    #[must_use]
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Basis of the right null space, one vector per free column in increasing
/// column order, with a one in its free column.
pub fn kernel_from_echelon<F: LinearField>(field: &F, e: &Echelon<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut is_pivot = vec![false; e.cols];
    for &c in &e.pivots {
        is_pivot[c] = true;
    }
    (0..e.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![field.zero(); e.cols];
            v[free] = field.one();
            for (row, &pc) in e.rows.iter().zip(&e.pivots) {
                if !field.is_zero(&row[free]) {
                    v[pc] = field.neg(&row[free]);
                }
            }
            v
        })
        .collect()
}

/// Right null space of the matrix given by rows.
pub fn kernel<F: LinearField>(field: &F, rows: Vec<Vec<F::Elem>>, cols: usize) -> Vec<Vec<F::Elem>> {
    let e = rref(field, rows, cols);
    kernel_from_echelon(field, &e)
}

/// A rectangular matrix of tower-field elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl DenseMatrix {
    /// Builds a matrix from rows, embedding all entries into a common tower.
    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::DimensionMismatch);
        }
        let mut tower = rows
            .iter()
            .flatten()
            .next()
            .map(|x| x.tower().clone())
            .unwrap_or_else(Tower::rationals);
        for x in rows.iter().flatten() {
            tower = super::field::common_tower(&tower, x.tower())?;
        }
        let entries = rows
            .into_iter()
            .flatten()
            .map(|x| x.embed(&tower))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            rows: r,
            cols: c,
            entries,
        })
    }

    /// Identity matrix.
    #[must_use]
    pub fn identity(tower: &Arc<Tower>, n: usize) -> Self {
        let mut entries = vec![FieldElement::zero(tower); n * n];
        for i in 0..n {
            entries[i * n + i] = FieldElement::one(tower);
        }
        Self {
            rows: n,
            cols: n,
            entries,
        }
    }

    /// Row count.
    #[must_use]
    pub fn nrows(&self) -> usize {
        self.rows
    }

    /// Column count.
    #[must_use]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    /// Entry `(i, j)`.
    #[must_use]
    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.cols + j]
    }

    /// The rows as vectors.
    #[must_use]
    pub fn to_rows(&self) -> Vec<Vec<FieldElement>> {
        self.entries.chunks(self.cols.max(1)).map(<[FieldElement]>::to_vec).collect()
    }

    /// Common tower of the entries.
    #[must_use]
    pub fn tower(&self) -> Arc<Tower> {
        self.entries
            .first()
            .map_or_else(Tower::rationals, |x| x.tower().clone())
    }

    /// Matrix product.
    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::DimensionMismatch);
        }
        let mut rows = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(other.cols);
            for j in 0..other.cols {
                let mut acc = FieldElement::zero(&self.tower());
                for k in 0..self.cols {
                    acc = acc.checked_add(&self.get(i, k).checked_mul(other.get(k, j))?)?;
                }
                row.push(acc);
            }
            rows.push(row);
        }
        Self::from_rows(rows)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>, AlgebraError> {
        if v.len() != self.cols {
            return Err(AlgebraError::DimensionMismatch);
        }
        (0..self.rows)
            .map(|i| {
                let mut acc = FieldElement::zero(&self.tower());
                for (k, x) in v.iter().enumerate() {
                    acc = acc.checked_add(&self.get(i, k).checked_mul(x)?)?;
                }
                Ok(acc)
            })
            .collect()
    }

    /// Determinant by elimination.
    pub fn det(&self) -> Result<FieldElement, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::DimensionMismatch);
        }
        let tower = self.tower();
        let mut a = self.to_rows();
        let n = self.rows;
        let mut det = FieldElement::one(&tower);
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else {
                return Ok(FieldElement::zero(&tower));
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            det = &det * &a[col][col];
            let inv = a[col][col].inv()?;
            for i in col + 1..n {
                if a[i][col].is_zero() {
                    continue;
                }
                let f = &a[i][col] * &inv;
                for j in col..n {
                    a[i][j] = &a[i][j] - &(&f * &a[col][j]);
                }
            }
        }
        Ok(det)
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::DimensionMismatch);
        }
        let n = self.rows;
        let tower = self.tower();
        let field = ExactField { tower: tower.clone() };
        let aug: Vec<Vec<FieldElement>> = self
            .to_rows()
            .into_iter()
            .enumerate()
            .map(|(i, mut r)| {
                r.extend((0..n).map(|j| {
                    if i == j {
                        FieldElement::one(&tower)
                    } else {
                        FieldElement::zero(&tower)
                    }
                }));
                r
            })
            .collect();
        let e = rref(&field, aug, 2 * n);
        if e.rank() < n || e.pivots[n - 1] != n - 1 {
            return Err(AlgebraError::SingularMatrix);
        }
        Self::from_rows(e.rows.into_iter().map(|r| r[n..].to_vec()).collect())
    }

    /// Transpose.
    #[must_use]
    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Rank.
    #[must_use]
    pub fn rank(&self) -> usize {
        let field = ExactField { tower: self.tower() };
        rank(&field, self.to_rows(), self.cols)
    }

    /// Basis of the right null space in canonical echelon-derived form.
    #[must_use]
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElement>> {
        let field = ExactField { tower: self.tower() };
        kernel(&field, self.to_rows(), self.cols)
    }
}

/// Basis of the right null space of `m` (free function form).
#[must_use]
pub fn kernel_basis(m: &DenseMatrix) -> Vec<Vec<FieldElement>> {
    m.kernel_basis()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: &[&[i64]]) -> DenseMatrix {
        let t = Tower::rationals();
        DenseMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| FieldElement::from_int(&t, x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(qm(&[&[1, 0], &[0, 1]]).kernel_basis().is_empty());
    }

    #[test]
    fn single_row_has_two_dimensional_kernel() {
        let k = qm(&[&[1, 1, 1]]).kernel_basis();
        assert_eq!(k.len(), 2);
    }

    #[test]
    fn inverse_and_determinant() {
        let m = qm(&[&[2, 1], &[7, 4]]);
        assert_eq!(m.det().unwrap(), FieldElement::from_int(&m.tower(), 1));
        let inv = m.inverse().unwrap();
        assert_eq!(inv, qm(&[&[4, -1], &[-7, 2]]));
        assert_eq!(qm(&[&[1, 2], &[2, 4]]).inverse(), Err(AlgebraError::SingularMatrix));
    }

    #[test]
    fn modular_rank_matches_exact_rank() {
        let f = PrimeField { p: 101 };
        let rows = vec![vec![1u64, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(rank(&f, rows.clone(), 3), 2);
        let k = kernel(&f, rows, 3);
        assert_eq!(k.len(), 1);
    }
}
