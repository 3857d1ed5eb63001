use std::fmt;

use super::{LinalgError, Ring, Scalar};

/// A dense row-major matrix whose entries all live in one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl DenseMatrix {
    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Self {
        DenseMatrix {
            ring,
            rows,
            cols,
            data: vec![Scalar::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        Self::scalar(ring, n, &Scalar::one(ring))
    }

    /// `lambda * I`.
    pub fn scalar(ring: Ring, n: usize, lambda: &Scalar) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = lambda.clone();
        }
        m
    }

    pub fn from_rows(ring: Ring, rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(LinalgError::Ragged);
            }
            for entry in row {
                if entry.ring() != ring {
                    return Err(LinalgError::RingMismatch {
                        expected: ring,
                        found: entry.ring(),
                    });
                }
                data.push(entry);
            }
        }
        Ok(DenseMatrix {
            ring,
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    /// Builds a matrix from small integers, mapped into `ring`.
    pub fn from_i64_rows(ring: Ring, rows: &[&[i64]]) -> Result<Self, LinalgError> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| Scalar::from_i64(ring, v)).collect())
            .collect();
        Self::from_rows(ring, rows)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert_eq!(v.ring(), self.ring, "entry ring differs from matrix ring");
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    fn check_ring(&self, other: &DenseMatrix) -> Result<(), LinalgError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(LinalgError::RingMismatch {
                expected: self.ring,
                found: other.ring,
            })
        }
    }

    pub fn mul(&self, other: &DenseMatrix) -> Result<DenseMatrix, LinalgError> {
        self.check_ring(other)?;
        if self.cols != other.rows {
            return Err(LinalgError::Shape {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = DenseMatrix::zeros(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(
        &self,
        other: &DenseMatrix,
        f: impl Fn(&Scalar, &Scalar) -> Scalar,
    ) -> Result<DenseMatrix, LinalgError> {
        self.check_ring(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinalgError::Shape {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(DenseMatrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &DenseMatrix) -> Result<DenseMatrix, LinalgError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &DenseMatrix) -> Result<DenseMatrix, LinalgError> {
        self.zip_with(other, |a, b| a - b)
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &DenseMatrix) -> Result<DenseMatrix, LinalgError> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn scale(&self, s: &Scalar) -> Result<DenseMatrix, LinalgError> {
        if s.ring() != self.ring {
            return Err(LinalgError::RingMismatch {
                expected: self.ring,
                found: s.ring(),
            });
        }
        Ok(DenseMatrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        })
    }

    pub fn pow(&self, mut k: u64) -> Result<DenseMatrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::Shape {
                left: (self.rows, self.cols),
                right: (self.rows, self.cols),
            });
        }
        let mut acc = DenseMatrix::identity(self.ring, self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Kronecker product `self ⊗ other`; the left factor indexes the most
    /// significant block.
    pub fn kron(&self, other: &DenseMatrix) -> Result<DenseMatrix, LinalgError> {
        self.check_ring(other)?;
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = DenseMatrix::zeros(self.ring, rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.data[(i * other.rows + k) * cols + j * other.cols + l] = a * b;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// `Some(lambda)` when the matrix equals `lambda * I`.
    pub fn as_scalar(&self) -> Option<Scalar> {
        if self.rows != self.cols {
            return None;
        }
        if self.rows == 0 {
            return Some(Scalar::zero(self.ring));
        }
        let lambda = self.get(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                let ok = if i == j { *v == lambda } else { v.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(lambda)
    }

    pub fn rank(&self) -> Result<usize, LinalgError> {
        if !self.ring.is_field() {
            return Err(LinalgError::NotAField(self.ring));
        }
        let mut work = self.clone();
        Ok(work.row_reduce(self.cols).len())
    }

    /// In-place reduced row echelon form over the first `ncols` columns; the
    /// remaining columns are carried along. Returns the pivot columns.
    fn row_reduce(&mut self, ncols: usize) -> Vec<usize> {
        let width = self.cols;
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..ncols {
            if pivot_row == self.rows {
                break;
            }
            let Some(found) = (pivot_row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if found != pivot_row {
                for c in 0..width {
                    self.data.swap(found * width + c, pivot_row * width + c);
                }
            }
            let inv = self.get(pivot_row, col).inv().expect("nonzero pivot in a field");
            for c in col..width {
                let v = &self.data[pivot_row * width + c];
                if !v.is_zero() {
                    self.data[pivot_row * width + c] = v * &inv;
                }
            }
            let support: Vec<usize> = (col..width)
                .filter(|&c| !self.get(pivot_row, c).is_zero())
                .collect();
            for r in 0..self.rows {
                if r == pivot_row {
                    continue;
                }
                let factor = self.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for &c in &support {
                    let delta = &factor * &self.data[pivot_row * width + c];
                    self.data[r * width + c] -= &delta;
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        pivots
    }
}

impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Outcome of [`solve_linear`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    /// One solution (free variables set to zero), or `None` when inconsistent.
    pub solution: Option<Vec<Scalar>>,
    /// Dimension of the kernel of the coefficient matrix.
    pub kernel_dim: usize,
}

/// Solves `A x = b` exactly over ℚ or 𝔽_p.
pub fn solve_linear(a: &DenseMatrix, b: &[Scalar]) -> Result<LinearSolution, LinalgError> {
    let mut out = solve_linear_many(a, std::slice::from_ref(&b.to_vec()))?;
    Ok(out.pop().expect("one right-hand side"))
}

/// Solves `A x = b_k` for several right-hand sides with one elimination.
pub fn solve_linear_many(
    a: &DenseMatrix,
    rhs: &[Vec<Scalar>],
) -> Result<Vec<LinearSolution>, LinalgError> {
    if !a.ring.is_field() {
        return Err(LinalgError::NotAField(a.ring));
    }
    for b in rhs {
        if b.len() != a.rows {
            return Err(LinalgError::Shape {
                left: (a.rows, a.cols),
                right: (b.len(), 1),
            });
        }
        if let Some(bad) = b.iter().find(|s| s.ring() != a.ring) {
            return Err(LinalgError::RingMismatch {
                expected: a.ring,
                found: bad.ring(),
            });
        }
    }
    let width = a.cols + rhs.len();
    let mut aug = DenseMatrix::zeros(a.ring, a.rows, width);
    for r in 0..a.rows {
        for c in 0..a.cols {
            aug.data[r * width + c] = a.get(r, c).clone();
        }
        for (k, b) in rhs.iter().enumerate() {
            aug.data[r * width + a.cols + k] = b[r].clone();
        }
    }
    let pivots = aug.row_reduce(a.cols);
    let rank = pivots.len();
    let kernel_dim = a.cols - rank;
    Ok((0..rhs.len())
        .map(|k| {
            let col = a.cols + k;
            let consistent = (rank..a.rows).all(|r| aug.get(r, col).is_zero());
            let solution = consistent.then(|| {
                let mut x = vec![Scalar::zero(a.ring); a.cols];
                for (r, &pc) in pivots.iter().enumerate() {
                    x[pc] = aug.get(r, col).clone();
                }
                x
            });
            LinearSolution {
                solution,
                kernel_dim,
            }
        })
        .collect())
}
