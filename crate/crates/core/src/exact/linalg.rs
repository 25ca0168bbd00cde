//! Dense exact linear algebra over a number field.

use std::sync::Arc;

use super::field::{FieldElement, NumberField};
use crate::error::Result;

/// Row-major matrix with field-element entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Arc<NumberField>,
    rows: Vec<Vec<FieldElement>>,
    cols: usize,
}

/// Reduced row echelon form plus its pivot columns.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivot_cols: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }
}

impl Matrix {
    pub fn zeros(field: &Arc<NumberField>, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows: vec![vec![FieldElement::zero(field); cols]; rows], cols }
    }

    pub fn from_rows(field: &Arc<NumberField>, rows: Vec<Vec<FieldElement>>) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { field: field.clone(), rows, cols }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.rows[i][j] = v;
    }

    pub fn into_rows(self) -> Vec<Vec<FieldElement>> {
        self.rows
    }

    pub fn rref(&self) -> Result<Rref> {
        let mut a = self.rows.clone();
        let m = a.len();
        let n = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            let Some(pr) = (r..m).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, pr);
            let inv = a[r][c].inv()?;
            for j in c..n {
                if !a[r][j].is_zero() {
                    a[r][j] = &a[r][j] * &inv;
                }
            }
            let pivot_row = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for j in c..n {
                    if !pivot_row[j].is_zero() {
                        row[j] = &row[j] - &(&f * &pivot_row[j]);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Ok(Rref { matrix: Matrix { field: self.field.clone(), rows: a, cols: n }, pivot_cols: pivots })
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rref()?.rank())
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn kernel(&self) -> Result<Vec<Vec<FieldElement>>> {
        let rref = self.rref()?;
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &c in &rref.pivot_cols {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = vec![FieldElement::zero(&self.field); n];
            v[free] = FieldElement::one(&self.field);
            for (k, &pc) in rref.pivot_cols.iter().enumerate() {
                v[pc] = rref.matrix.rows[k][free].neg();
            }
            basis.push(v);
        }
        Ok(basis)
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        self.rows
            .iter()
            .map(|row| {
                let mut acc = FieldElement::zero(&self.field);
                for (a, b) in row.iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }
}

/// Determinant of a 3×3 matrix given by rows.
pub fn det3(m: &[[FieldElement; 3]; 3]) -> FieldElement {
    let minor = |a: usize, b: usize| &(&m[1][a] * &m[2][b]) - &(&m[1][b] * &m[2][a]);
    let t0 = &m[0][0] * &minor(1, 2);
    let t1 = &m[0][1] * &minor(0, 2);
    let t2 = &m[0][2] * &minor(0, 1);
    &(&t0 - &t1) + &t2
}

/// Cross product of two coordinate triples.
pub fn cross(a: &[FieldElement; 3], b: &[FieldElement; 3]) -> [FieldElement; 3] {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}
