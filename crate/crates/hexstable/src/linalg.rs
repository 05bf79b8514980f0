//! Dense linear algebra over any [`Scalar`] field.
//!
//! Gaussian elimination with magnitude pivoting serves both the exact and
//! the float tower: exact scalars report a positive magnitude exactly when
//! non-zero, so the same code does fraction-free-style exact elimination
//! and numerically pivoted float elimination.

use crate::scalars::Scalar;

/// Relative zero threshold for elimination; exact fields use 0.
fn rel_eps<S: Scalar>() -> f64 {
    if std::any::TypeId::of::<S>() == std::any::TypeId::of::<f64>()
        || std::any::TypeId::of::<S>() == std::any::TypeId::of::<num::complex::Complex64>()
    {
        1e-12
    } else {
        0.0
    }
}

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn matmul(&self, rhs: &Mat<S>) -> Mat<S> {
        assert_eq!(self.cols, rhs.rows);
        Mat::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = S::zero();
            for k in 0..self.cols {
                acc = acc.add(&self.get(i, k).mul(rhs.get(k, j)));
            }
            acc
        })
    }

    pub fn matvec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(&v[k]));
                }
                acc
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// In-place reduced row echelon form; returns pivot column indices.
    pub fn rref(&mut self) -> Vec<usize> {
        let scale = self
            .data
            .iter()
            .map(Scalar::magnitude)
            .fold(0.0f64, f64::max)
            .max(1.0);
        let tol = rel_eps::<S>() * scale;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let (best, weight) = (r..self.rows)
                .map(|i| (i, self.get(i, c).magnitude()))
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap();
            if weight <= tol {
                continue;
            }
            self.swap_rows(r, best);
            let inv = S::one().div(self.get(r, c));
            for j in c..self.cols {
                let v = self.get(r, j).mul(&inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let factor = self.get(i, c).clone();
                for j in c..self.cols {
                    let v = self.get(i, j).sub(&factor.mul(self.get(r, j)));
                    self.set(i, j, v);
                }
                self.set(i, c, S::zero());
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right null space `{x : A x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<S>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut x = vec![S::zero(); self.cols];
            x[free] = S::one();
            for (col, row) in pivot_set.iter().enumerate() {
                if let Some(row) = row {
                    x[col] = m.get(*row, free).neg();
                }
            }
            basis.push(x);
        }
        basis
    }

    /// One solution of `A x = b`, if the system is consistent.
    pub fn solve(&self, b: &[S]) -> Option<Vec<S>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Mat::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![S::zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = aug.get(row, self.cols).clone();
        }
        Some(x)
    }

    /// Exact inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Mat<S>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                S::one()
            } else {
                S::zero()
            }
        });
        let pivots = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        Some(Mat::from_fn(n, n, |i, j| aug.get(i, n + j).clone()))
    }

    pub fn determinant(&self) -> S {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let scale = self
            .data
            .iter()
            .map(Scalar::magnitude)
            .fold(0.0f64, f64::max)
            .max(1.0);
        let tol = rel_eps::<S>() * scale;
        let mut m = self.clone();
        let mut det = S::one();
        for c in 0..n {
            let (best, weight) = (c..n)
                .map(|i| (i, m.get(i, c).magnitude()))
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap();
            if weight <= tol {
                return S::zero();
            }
            if best != c {
                m.swap_rows(c, best);
                det = det.neg();
            }
            det = det.mul(m.get(c, c));
            let inv = S::one().div(m.get(c, c));
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).mul(&inv);
                for j in c..n {
                    let v = m.get(i, j).sub(&factor.mul(m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }
}

/// Basis (as rref rows) of the span of the given vectors.
pub fn span_basis<S: Scalar>(vectors: &[Vec<S>]) -> Vec<Vec<S>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut m = Mat::from_rows(vectors.to_vec());
    let pivots = m.rref();
    (0..pivots.len()).map(|i| m.row(i).to_vec()).collect()
}

/// Does `v` lie in the span of `basis`?
pub fn in_span<S: Scalar>(basis: &[Vec<S>], v: &[S]) -> bool {
    if v.iter().all(Scalar::is_zero) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let r0 = Mat::from_rows(basis.to_vec()).rank();
    let mut all = basis.to_vec();
    all.push(v.to_vec());
    Mat::from_rows(all).rank() == r0
}

/// Basis of the intersection of two spans.
pub fn intersect_spans<S: Scalar>(a: &[Vec<S>], b: &[Vec<S>]) -> Vec<Vec<S>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a[0].len();
    // Columns: coefficients on a, then on b; rows: ambient coordinates.
    let m = Mat::from_fn(n, a.len() + b.len(), |i, j| {
        if j < a.len() {
            a[j][i].clone()
        } else {
            b[j - a.len()][i].neg()
        }
    });
    let mut vectors = Vec::new();
    for k in m.kernel_basis() {
        let mut v = vec![S::zero(); n];
        for (idx, coeff) in k.iter().take(a.len()).enumerate() {
            for i in 0..n {
                v[i] = v[i].add(&coeff.mul(&a[idx][i]));
            }
        }
        if !v.iter().all(Scalar::is_zero) {
            vectors.push(v);
        }
    }
    span_basis(&vectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, QuadScalar};

    fn qs(n: i64) -> QuadScalar {
        QuadScalar::from_int(n)
    }

    #[test]
    fn rank_kernel_roundtrip() {
        // rows: (1,2,3), (2,4,6), (0,1,1)
        let m = Mat::from_rows(vec![
            vec![qs(1), qs(2), qs(3)],
            vec![qs(2), qs(4), qs(6)],
            vec![qs(0), qs(1), qs(1)],
        ]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        for v in &k {
            let image = m.matvec(v);
            assert!(image.iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn solve_and_inverse() {
        let m = Mat::from_rows(vec![
            vec![qs(2), qs(1)],
            vec![qs(1), qs(3)],
        ]);
        let x = m.solve(&[qs(5), qs(10)]).unwrap();
        assert_eq!(x, vec![QuadScalar::from_rat(rat(1, 1)), QuadScalar::from_rat(rat(3, 1))]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.matmul(&inv), Mat::identity(2));
        assert_eq!(m.determinant(), qs(5));
    }

    #[test]
    fn span_ops() {
        let a = vec![vec![qs(1), qs(0), qs(0)], vec![qs(0), qs(1), qs(0)]];
        let b = vec![vec![qs(1), qs(1), qs(0)], vec![qs(0), qs(0), qs(1)]];
        let inter = intersect_spans(&a, &b);
        assert_eq!(inter.len(), 1);
        assert!(in_span(&a, &inter[0]));
        assert!(in_span(&b, &inter[0]));
        assert!(!in_span(&a, &[qs(0), qs(0), qs(1)]));
    }

    #[test]
    fn float_pivoting() {
        let m = Mat::<f64>::from_rows(vec![vec![1e-16, 1.0], vec![1.0, 1.0]]);
        // effectively rank 2 with relative pivoting
        assert_eq!(m.rank(), 2);
        let s = Mat::<f64>::from_rows(vec![vec![1.0, 2.0], vec![2.0, 4.0 + 1e-16]]);
        assert_eq!(s.rank(), 1);
    }
}
