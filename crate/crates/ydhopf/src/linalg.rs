//! Dense exact linear algebra over a cyclotomic field: reduced row echelon
//! form, rank, solving, kernels, and inverses. Everything is exact; there is
//! no pivoting heuristic beyond "first nonzero entry".

use crate::cyclo::{Cyc, CycField};
use std::sync::Arc;

/// A dense matrix with entries in a fixed cyclotomic field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Arc<CycField>,
    rows: usize,
    cols: usize,
    data: Vec<Cyc>,
}

impl Matrix {
    pub fn zero(field: &Arc<CycField>, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: Arc::clone(field),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Arc<CycField>, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = field.one();
        }
        m
    }

    pub fn from_rows(field: &Arc<CycField>, rows: Vec<Vec<Cyc>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            field: Arc::clone(field),
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn at(&self, i: usize, j: usize) -> &Cyc {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Cyc {
        &mut self.data[i * self.cols + j]
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zero(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a * b;
                    let cur = out.at(i, j).clone();
                    *out.at_mut(i, j) = &cur + &prod;
                }
            }
        }
        out
    }

    /// In-place reduction to reduced row echelon form; returns the pivot
    /// columns in order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..self.cols {
                    self.data.swap(row * self.cols + j, p * self.cols + j);
                }
            }
            let inv = self
                .at(row, col)
                .inv()
                .expect("pivot entry is nonzero and the field is exact");
            for j in col..self.cols {
                let v = self.at(row, j).clone();
                *self.at_mut(row, j) = &v * &inv;
            }
            for r in 0..self.rows {
                if r != row && !self.at(r, col).is_zero() {
                    let factor = self.at(r, col).clone();
                    for j in col..self.cols {
                        let sub = &factor * self.at(row, j);
                        let cur = self.at(r, j).clone();
                        *self.at_mut(r, j) = &cur - &sub;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// A basis of the right kernel { x : Ax = 0 }.
    pub fn kernel(&self) -> Vec<Vec<Cyc>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut x = vec![self.field.zero(); self.cols];
            x[free] = self.field.one();
            for (r, &c) in pivots.iter().enumerate() {
                x[c] = -m.at(r, free);
            }
            basis.push(x);
        }
        basis
    }

    /// One solution of Ax = b, if any (free variables set to zero).
    pub fn solve(&self, b: &[Cyc]) -> Option<Vec<Cyc>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zero(&self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, self.cols) = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.at(r, self.cols).clone();
        }
        Some(x)
    }

    /// The inverse of a square matrix, if it is invertible.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zero(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, n + i) = self.field.one();
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(r, &c)| r != c) {
            return None;
        }
        let mut out = Matrix::zero(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                *out.at_mut(i, j) = aug.at(i, n + j).clone();
            }
        }
        Some(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, x: &[Cyc]) -> Vec<Cyc> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for j in 0..self.cols {
                    if !self.at(i, j).is_zero() && !x[j].is_zero() {
                        acc = &acc + &(self.at(i, j) * &x[j]);
                    }
                }
                acc
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> Arc<CycField> {
        CycField::new(3)
    }

    fn c(field: &Arc<CycField>, n: i64) -> Cyc {
        field.from_i64(n)
    }

    #[test]
    fn rank_and_kernel_of_singular_matrix() {
        let field = f();
        let rows = vec![
            vec![c(&field, 1), c(&field, 2), c(&field, 3)],
            vec![c(&field, 2), c(&field, 4), c(&field, 6)],
            vec![c(&field, 1), c(&field, 0), c(&field, 1)],
        ];
        let m = Matrix::from_rows(&field, rows);
        assert_eq!(m.rank(), 2);
        let ker = m.kernel();
        assert_eq!(ker.len(), 1);
        let image = m.apply(&ker[0]);
        assert!(image.iter().all(|v| v.is_zero()));
    }

    #[test]
    fn solve_and_inverse_round_trip() {
        let field = f();
        let z = field.zeta();
        let rows = vec![
            vec![field.one(), z.clone()],
            vec![z.clone(), field.one()],
        ];
        let m = Matrix::from_rows(&field, rows);
        let inv = m.inverse().expect("invertible since z^2 != 1");
        let prod = m.mul(&inv);
        assert_eq!(prod, Matrix::identity(&field, 2));
        let b = vec![field.from_i64(5), -&field.zeta()];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.apply(&x), b);
    }

    #[test]
    fn inconsistent_system_has_no_solution() {
        let field = f();
        let rows = vec![
            vec![c(&field, 1), c(&field, 1)],
            vec![c(&field, 2), c(&field, 2)],
        ];
        let m = Matrix::from_rows(&field, rows);
        assert!(m.solve(&[c(&field, 1), c(&field, 3)]).is_none());
        assert!(m.inverse().is_none());
    }
}
