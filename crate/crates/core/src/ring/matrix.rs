//! Small dense matrices over exact coefficient domains and over polynomial
//! entries. Enough linear algebra for the Levi computations: products,
//! ranks over a field, and fraction-free (Bareiss) determinants.

use std::sync::Arc;

use super::coeff::Coeff;
use super::poly::Poly;
use super::vars::VarTable;
use crate::error::{CrError, CrResult};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<T>>,
}

impl<T: Clone> Mat<T> {
    pub fn from_rows(data: Vec<Vec<T>>) -> Self {
        let rows = data.len();
        let cols = data.first().map(|r| r.len()).unwrap_or(0);
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        Mat { rows, cols, data }
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i][j]
    }

    pub fn transpose(&self) -> Mat<T> {
        let data = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.data[i][j].clone()).collect())
            .collect();
        Mat::from_rows(data)
    }
}

impl<T: Coeff> Mat<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![vec![T::c_zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.data[i][i] = T::c_one();
        }
        m
    }

    pub fn mul(&self, o: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, o.rows);
        let mut out = Mat::zero(self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = T::c_zero();
                for k in 0..self.cols {
                    acc = acc.plus(&self.data[i][k].times(&o.data[k][j]));
                }
                out.data[i][j] = acc;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(|x| x.c_is_zero()))
    }

    /// Rank via Gaussian elimination; valid over any of the field domains.
    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..self.cols {
            let pivot = (row..self.rows).find(|&r| !m[r][col].c_is_zero());
            let Some(p) = pivot else { continue };
            m.swap(row, p);
            let inv = m[row][col].inv().expect("nonzero pivot in a field");
            for r in row + 1..self.rows {
                if m[r][col].c_is_zero() {
                    continue;
                }
                let factor = m[r][col].times(&inv);
                for c in col..self.cols {
                    let sub = factor.times(&m[row][c]);
                    m[r][c] = m[r][c].minus(&sub);
                }
            }
            row += 1;
            rank += 1;
            if row == self.rows {
                break;
            }
        }
        rank
    }
}

pub type PolyMat<C> = Mat<Poly<C>>;

impl<C: Coeff> PolyMat<C> {
    pub fn poly_zero(table: &Arc<VarTable>, rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![vec![Poly::zero(table); cols]; rows],
        }
    }

    pub fn poly_mul(&self, o: &PolyMat<C>) -> PolyMat<C> {
        assert_eq!(self.cols, o.rows);
        let table = self.data[0][0].table().clone();
        let mut out = PolyMat::poly_zero(&table, self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = Poly::zero(&table);
                for k in 0..self.cols {
                    acc = acc
                        .add(&self.data[i][k].mul(&o.data[k][j]).expect("same table"))
                        .expect("same table");
                }
                out.data[i][j] = acc;
            }
        }
        out
    }

    pub fn mat_vec(&self, v: &[Poly<C>]) -> CrResult<Vec<Poly<C>>> {
        if v.len() != self.cols {
            return Err(CrError::DimensionMismatch(format!(
                "matrix has {} columns, vector has {}",
                self.cols,
                v.len()
            )));
        }
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = Poly::zero(v[0].table());
            for j in 0..self.cols {
                acc = acc.add(&self.data[i][j].mul(&v[j])?)?;
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Fraction-free determinant (Bareiss). Exact for any integral domain of
    /// coefficients; intermediate divisions are guaranteed exact.
    pub fn det_bareiss(&self, table: &Arc<VarTable>) -> CrResult<Poly<C>> {
        assert_eq!(self.rows, self.cols, "determinant of a square matrix");
        let n = self.rows;
        if n == 0 {
            return Ok(Poly::one(table));
        }
        let mut m = self.data.clone();
        let mut sign = false;
        let mut prev = Poly::<C>::one(table);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let swap = (k + 1..n).find(|&r| !m[r][k].is_zero());
                match swap {
                    Some(r) => {
                        m.swap(k, r);
                        sign = !sign;
                    }
                    None => return Ok(Poly::zero(table)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let a = m[k][k].mul(&m[i][j])?;
                    let b = m[i][k].mul(&m[k][j])?;
                    m[i][j] = a.sub(&b)?.div_exact(&prev)?;
                }
            }
            for row in m.iter_mut().skip(k + 1) {
                row[k] = Poly::zero(table);
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        Ok(if sign { det.neg() } else { det })
    }

    /// Minor obtained by deleting row `i` and column `j`.
    pub fn minor(&self, i: usize, j: usize) -> PolyMat<C> {
        let data: Vec<Vec<Poly<C>>> = (0..self.rows)
            .filter(|&r| r != i)
            .map(|r| {
                (0..self.cols)
                    .filter(|&c| c != j)
                    .map(|c| self.data[r][c].clone())
                    .collect()
            })
            .collect();
        Mat::from_rows(data)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMat<C> {
        let data: Vec<Vec<Poly<C>>> = rows
            .iter()
            .map(|&r| cols.iter().map(|&c| self.data[r][c].clone()).collect())
            .collect();
        Mat::from_rows(data)
    }

    pub fn poly_is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(|p| p.is_zero()))
    }
}
