//! Dense linear algebra over a field: reduced row echelon form, rank, kernels.

use crate::scalar::{Field, Scalar};

/// Dense matrix over a field, stored by rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    cols: usize,
    rows: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            cols,
            rows: vec![vec![field.zero(); cols]; rows],
        }
    }

    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { field, cols, rows }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.rows[i][j] = v;
    }

    pub fn push_row(&mut self, row: Vec<Scalar>) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.cols);
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(x)
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.nrows());
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (0..other.cols)
                    .map(|j| {
                        r.iter()
                            .enumerate()
                            .fold(self.field.zero(), |acc, (k, a)| &acc + &(a * &other.rows[k][j]))
                    })
                    .collect()
            })
            .collect();
        Matrix {
            field: self.field,
            cols: other.cols,
            rows,
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows.len() {
                break;
            }
            let Some(p) = (r..self.rows.len()).find(|&i| !self.rows[i][c].is_zero()) else {
                continue;
            };
            self.rows.swap(r, p);
            let inv = self.rows[r][c].inverse().expect("nonzero pivot");
            for a in &mut self.rows[r] {
                *a = &*a * &inv;
            }
            let pivot_row = self.rows[r].clone();
            for (i, row) in self.rows.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (a, b) in row.iter_mut().zip(&pivot_row) {
                    *a = &*a - &(&f * b);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// A basis of `{x : A·x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![self.field.zero(); self.cols];
                x[f] = self.field.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    x[pc] = -&m.rows[i][f];
                }
                x
            })
            .collect()
    }
}

impl Matrix {
    /// One solution of `A·x = b`, if any.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows.len());
        let mut aug = Matrix {
            field: self.field,
            cols: self.cols + 1,
            rows: self
                .rows
                .iter()
                .zip(b)
                .map(|(r, x)| {
                    let mut r = r.clone();
                    r.push(x.clone());
                    r
                })
                .collect(),
        };
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.rows[i][self.cols].clone();
        }
        Some(x)
    }
}
