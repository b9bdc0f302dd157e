//! Minimal dense linear algebra: row-major matrices, LU factorization with
//! partial pivoting, and Kronecker products for slab-system assembly.
//!
//! Slab systems at the scales this crate targets stay below a few thousand
//! unknowns, so everything is dense and direct.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LinalgError {
    /// A pivot fell below `1e-14 * ||A||_inf`; the matrix is treated as singular.
    #[error("singular matrix: pivot {pivot:.3e} below threshold {threshold:.3e} at step {step}")]
    SingularMatrix {
        pivot: f64,
        threshold: f64,
        step: usize,
    },
    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },
}

/// Dense matrix with entries stored in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from row slices; all rows must have equal length.
    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = if r > 0 { rows[0].len() } else { 0 };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            data.extend_from_slice(row);
        }
        Self {
            rows: r,
            cols: c,
            data,
        }
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

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] += v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// Matrix infinity norm (maximum absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols, "matvec dimension mismatch");
        let mut y = vec![0.0; self.rows];
        for i in 0..self.rows {
            let row = self.row(i);
            let mut acc = 0.0;
            for (a, b) in row.iter().zip(x.iter()) {
                acc += a * b;
            }
            y[i] = acc;
        }
        y
    }

    pub fn matmul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik == 0.0 {
                    continue;
                }
                let brow = other.row(k);
                let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, b) in orow.iter_mut().zip(brow.iter()) {
                    *o += aik * b;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// `self += alpha * other`, entrywise.
    pub fn add_scaled(&mut self, alpha: f64, other: &DenseMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(other.data.iter()) {
            *a += alpha * b;
        }
    }

    pub fn scale(&mut self, alpha: f64) {
        for a in self.data.iter_mut() {
            *a *= alpha;
        }
    }

    /// Maximum absolute entry; `0` for an empty matrix.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Kronecker product: `result[(i*B.rows + k), (j*B.cols + l)] = A[i,j] * B[k,l]`.
pub fn kron(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let mut out = DenseMatrix::zeros(a.rows * b.rows, a.cols * b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a.get(i, j);
            if aij == 0.0 {
                continue;
            }
            for k in 0..b.rows {
                let brow = b.row(k);
                let out_row = i * b.rows + k;
                let base = out_row * out.cols + j * b.cols;
                for (l, bkl) in brow.iter().enumerate() {
                    out.data[base + l] = aij * bkl;
                }
            }
        }
    }
    out
}

/// LU factorization P*A = L*U with partial pivoting, stored packed.
#[derive(Debug, Clone)]
pub struct LuFactors {
    lu: DenseMatrix,
    /// Row swap applied at each elimination step: step k swapped rows k and `pivots[k]`.
    pivots: Vec<usize>,
}

impl LuFactors {
    /// Factors a square matrix. A pivot whose magnitude falls below
    /// `1e-14 * ||A||_inf` flags the matrix as singular.
    pub fn factor(a: &DenseMatrix) -> Result<Self, LinalgError> {
        if !a.is_square() {
            return Err(LinalgError::DimensionMismatch {
                context: format!("cannot LU-factor a {}x{} matrix", a.rows, a.cols),
            });
        }
        let n = a.rows;
        let threshold = 1e-14 * a.norm_inf();
        let mut lu = a.clone();
        let mut pivots = vec![0usize; n];

        for k in 0..n {
            // Partial pivoting: pick the largest magnitude in column k at or below row k.
            let mut piv_row = k;
            let mut piv_val = lu.get(k, k).abs();
            for i in (k + 1)..n {
                let v = lu.get(i, k).abs();
                if v > piv_val {
                    piv_val = v;
                    piv_row = i;
                }
            }
            if piv_val <= threshold {
                return Err(LinalgError::SingularMatrix {
                    pivot: piv_val,
                    threshold,
                    step: k,
                });
            }
            pivots[k] = piv_row;
            if piv_row != k {
                for j in 0..n {
                    let tmp = lu.get(k, j);
                    lu.set(k, j, lu.get(piv_row, j));
                    lu.set(piv_row, j, tmp);
                }
            }
            let inv_pivot = 1.0 / lu.get(k, k);
            for i in (k + 1)..n {
                let factor = lu.get(i, k) * inv_pivot;
                lu.set(i, k, factor);
                if factor == 0.0 {
                    continue;
                }
                // Rank-1 update on the trailing part of row i; rows are contiguous.
                let (head, tail) = lu.data.split_at_mut(i * n);
                let row_k = &head[k * n..(k + 1) * n];
                let row_i = &mut tail[..n];
                for j in (k + 1)..n {
                    row_i[j] -= factor * row_k[j];
                }
            }
        }
        Ok(Self { lu, pivots })
    }

    pub fn size(&self) -> usize {
        self.lu.rows
    }

    /// Solves A x = b for the factored A.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>, LinalgError> {
        let n = self.lu.rows;
        if b.len() != n {
            return Err(LinalgError::DimensionMismatch {
                context: format!("rhs length {} does not match system size {}", b.len(), n),
            });
        }
        let mut x = b.to_vec();
        self.solve_in_place(&mut x);
        Ok(x)
    }

    pub fn solve_in_place(&self, x: &mut [f64]) {
        let n = self.lu.rows;
        for k in 0..n {
            x.swap(k, self.pivots[k]);
        }
        // Forward substitution with unit lower triangle.
        for i in 1..n {
            let row = self.lu.row(i);
            let mut acc = x[i];
            for j in 0..i {
                acc -= row[j] * x[j];
            }
            x[i] = acc;
        }
        // Back substitution.
        for i in (0..n).rev() {
            let row = self.lu.row(i);
            let mut acc = x[i];
            for j in (i + 1)..n {
                acc -= row[j] * x[j];
            }
            x[i] = acc / row[i];
        }
    }
}

/// One-shot solve of A x = b.
pub fn lu_solve(a: &DenseMatrix, b: &[f64]) -> Result<Vec<f64>, LinalgError> {
    LuFactors::factor(a)?.solve(b)
}
