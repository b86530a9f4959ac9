//! Dense matrices over GF(p) and over the conjugation pair ring.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{ConjScalar, PrimeField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_fn(
        field: PrimeField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u64,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j) % field.modulus());
            }
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from signed integer rows, reducing mod p. An empty
    /// slice yields a 0×0 matrix.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(field, rows, cols)
    }

    pub fn from_rows_with_cols(field: PrimeField, rows: &[Vec<i64>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    context: "matrix row length",
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row.iter().map(|&x| field.reduce(x)));
        }
        Ok(Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<u64>]) -> Result<Self> {
        for c in columns {
            if c.len() != rows {
                return Err(Error::DimensionMismatch {
                    context: "column length",
                    expected: rows,
                    found: c.len(),
                });
            }
        }
        Ok(Matrix::from_fn(field, rows, columns.len(), |i, j| {
            columns[j][i]
        }))
    }

    pub fn random<R: Rng + ?Sized>(
        field: PrimeField,
        rows: usize,
        cols: usize,
        rng: &mut R,
    ) -> Self {
        Matrix::from_fn(field, rows, cols, |_, _| field.random(rng))
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.field.modulus();
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(|&x| x == 0)
    }

    pub fn zero_rows(&self) -> Vec<usize> {
        (0..self.rows).filter(|&i| self.is_zero_row(i)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix {
            field: self.field,
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    /// Horizontal concatenation `(A | B | …)`.
    pub fn hcat(field: PrimeField, rows: usize, blocks: &[&Matrix]) -> Result<Matrix> {
        for b in blocks {
            if b.rows != rows {
                return Err(Error::DimensionMismatch {
                    context: "horizontal concatenation",
                    expected: rows,
                    found: b.rows,
                });
            }
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for b in blocks {
                data.extend_from_slice(b.row(i));
            }
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn vcat(field: PrimeField, cols: usize, blocks: &[&Matrix]) -> Result<Matrix> {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.cols != cols {
                return Err(Error::DimensionMismatch {
                    context: "vertical concatenation",
                    expected: cols,
                    found: b.cols,
                });
            }
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                context: "matrix product",
                expected: self.cols,
                found: other.rows,
            });
        }
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    /// `M v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                context: "matrix-vector product",
                expected: self.cols,
                found: v.len(),
            });
        }
        let f = self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect())
    }

    /// `vᵀ M` for a row vector `v`.
    pub fn vec_mul(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch {
                context: "vector-matrix product",
                expected: self.rows,
                found: v.len(),
            });
        }
        let f = self.field;
        let mut out = vec![0; self.cols];
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.row(i)) {
                *o = f.add(*o, f.mul(c, a));
            }
        }
        Ok(out)
    }

    /// `Diag(d) M`.
    pub fn scale_rows(&self, d: &[u64]) -> Result<Matrix> {
        if d.len() != self.rows {
            return Err(Error::DimensionMismatch {
                context: "row scaling",
                expected: self.rows,
                found: d.len(),
            });
        }
        let f = self.field;
        Ok(Matrix::from_fn(f, self.rows, self.cols, |i, j| {
            f.mul(d[i], self.get(i, j))
        }))
    }

    pub fn rank(&self) -> usize {
        let mut a = self.data.clone();
        eliminate(&self.field, &mut a, self.rows, self.cols, false).len()
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut a = self.data.clone();
        let pivots = eliminate(&self.field, &mut a, self.rows, self.cols, true);
        (
            Matrix {
                field: self.field,
                rows: self.rows,
                cols: self.cols,
                data: a,
            },
            pivots,
        )
    }

    /// Basis of `{x : M x = 0}`; its size is `cols − rank`.
    pub fn right_kernel(&self) -> Vec<Vec<u64>> {
        let f = self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&j| !is_pivot[j])
            .map(|free| {
                let mut v = vec![0; self.cols];
                v[free] = 1;
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(r.get(row, free));
                }
                v
            })
            .collect()
    }

    /// Basis of `{v : vᵀ M = 0}`; its size is `rows − rank`.
    pub fn left_kernel(&self) -> Vec<Vec<u64>> {
        self.transpose().right_kernel()
    }

    /// The columns of `self` at the pivot positions of its echelon form.
    pub fn column_basis(&self) -> Matrix {
        let (_, pivots) = self.rref();
        self.select_cols(&pivots)
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .map(|&x| Entry::Int(self.field.centered(x)))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_json(field: PrimeField, json: &MatrixJson) -> Result<Matrix> {
        let rows = json.check_shape()?;
        let ints = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| match e {
                        Entry::Int(x) => Ok(*x),
                        Entry::Conj { re, im } if *im == 0 => Ok(*re),
                        Entry::Conj { .. } => Err(Error::Input(
                            "entries: complex entry in a matrix over GF(p)".into(),
                        )),
                    })
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows_with_cols(field, &ints, json.cols)
    }
}

/// Row reduction in place; returns pivot columns. With `reduce` the result is
/// the reduced row echelon form, otherwise only an echelon form.
fn eliminate(f: &PrimeField, a: &mut [u64], rows: usize, cols: usize, reduce: bool) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if piv != r {
            for j in 0..cols {
                a.swap(piv * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(a[r * cols + c]).expect("pivot is nonzero");
        if reduce {
            for j in c..cols {
                a[r * cols + j] = f.mul(a[r * cols + j], inv);
            }
        }
        let start = if reduce { 0 } else { r + 1 };
        for i in start..rows {
            if i == r {
                continue;
            }
            let x = a[i * cols + c];
            if x == 0 {
                continue;
            }
            let factor = if reduce { x } else { f.mul(x, inv) };
            for j in c..cols {
                let v = a[r * cols + j];
                if v != 0 {
                    a[i * cols + j] = f.sub(a[i * cols + j], f.mul(factor, v));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl fmt::Display for Matrix {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self
                .row(i)
                .iter()
                .map(|&x| self.field.centered(x).to_string())
                .collect();
            writeln!(out, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Matrix with [`ConjScalar`] entries, stored as real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjMatrix {
    re: Matrix,
    im: Matrix,
}

impl ConjMatrix {
    pub fn new(re: Matrix, im: Matrix) -> Result<Self> {
        if re.rows != im.rows || re.cols != im.cols {
            return Err(Error::DimensionMismatch {
                context: "real and imaginary parts",
                expected: re.rows * re.cols,
                found: im.rows * im.cols,
            });
        }
        Ok(ConjMatrix { re, im })
    }

    pub fn from_real(re: Matrix) -> Self {
        let im = Matrix::zeros(re.field, re.rows, re.cols);
        ConjMatrix { re, im }
    }

    pub fn random<R: Rng + ?Sized>(
        field: PrimeField,
        rows: usize,
        cols: usize,
        rng: &mut R,
    ) -> Self {
        ConjMatrix {
            re: Matrix::random(field, rows, cols, rng),
            im: Matrix::random(field, rows, cols, rng),
        }
    }

    pub fn field(&self) -> &PrimeField {
        &self.re.field
    }

    pub fn rows(&self) -> usize {
        self.re.rows
    }

    pub fn cols(&self) -> usize {
        self.re.cols
    }

    pub fn get(&self, i: usize, j: usize) -> ConjScalar {
        ConjScalar::new(self.re.get(i, j), self.im.get(i, j))
    }

    pub fn real_part(&self) -> &Matrix {
        &self.re
    }

    pub fn imag_part(&self) -> &Matrix {
        &self.im
    }

    /// Entrywise conjugate.
    pub fn conj(&self) -> ConjMatrix {
        let f = self.re.field;
        ConjMatrix {
            re: self.re.clone(),
            im: Matrix::from_fn(f, self.rows(), self.cols(), |i, j| f.neg(self.im.get(i, j))),
        }
    }

    /// Image under `re + i·im ↦ re + √−1·im`, a matrix over GF(p).
    pub fn eval(&self) -> Matrix {
        let f = self.re.field;
        Matrix::from_fn(f, self.rows(), self.cols(), |i, j| self.get(i, j).eval(&f))
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.re.is_zero_row(i) && self.im.is_zero_row(i)
    }

    pub fn mul_vec(&self, v: &[ConjScalar]) -> Result<Vec<ConjScalar>> {
        if v.len() != self.cols() {
            return Err(Error::DimensionMismatch {
                context: "matrix-vector product",
                expected: self.cols(),
                found: v.len(),
            });
        }
        let f = self.re.field;
        Ok((0..self.rows())
            .map(|i| {
                (0..self.cols()).fold(ConjScalar::default(), |acc, j| {
                    acc.add(self.get(i, j).mul(v[j], &f), &f)
                })
            })
            .collect())
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows(),
            cols: self.cols(),
            entries: (0..self.rows())
                .map(|i| {
                    (0..self.cols())
                        .map(|j| {
                            let z = self.get(i, j);
                            Entry::Conj {
                                re: z.re as i64,
                                im: z.im as i64,
                            }
                        })
                        .collect()
                })
                .collect(),
        }
    }

    /// Accepts plain integer entries (imaginary part zero) or `{"re","im"}` objects.
    pub fn from_json(field: PrimeField, json: &MatrixJson) -> Result<ConjMatrix> {
        let rows = json.check_shape()?;
        let (mut re, mut im) = (Vec::new(), Vec::new());
        for row in rows {
            let (r, i): (Vec<i64>, Vec<i64>) = row
                .iter()
                .map(|e| match *e {
                    Entry::Int(x) => (x, 0),
                    Entry::Conj { re, im } => (re, im),
                })
                .unzip();
            re.push(r);
            im.push(i);
        }
        ConjMatrix::new(
            Matrix::from_rows_with_cols(field, &re, json.cols)?,
            Matrix::from_rows_with_cols(field, &im, json.cols)?,
        )
    }
}

/// `{"rows": r, "cols": c, "entries": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Entry>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Conj { re: i64, im: i64 },
}

impl MatrixJson {
    fn check_shape(&self) -> Result<&[Vec<Entry>]> {
        if self.entries.len() != self.rows {
            return Err(Error::Input(format!(
                "entries: expected {} rows, found {}",
                self.rows,
                self.entries.len()
            )));
        }
        if let Some((i, row)) = self
            .entries
            .iter()
            .enumerate()
            .find(|(_, r)| r.len() != self.cols)
        {
            return Err(Error::Input(format!(
                "entries: row {} has {} entries, expected cols = {}",
                i,
                row.len(),
                self.cols
            )));
        }
        Ok(&self.entries)
    }
}
