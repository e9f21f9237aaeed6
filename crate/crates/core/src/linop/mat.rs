//! Dense row-major matrices, BLAS-style products and float factorizations.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Copy> Mat<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Mat { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, v: T) -> Self {
        Mat {
            rows,
            cols,
            data: vec![v; rows * cols],
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn map<U: Copy>(&self, f: impl Fn(T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Mat<T> {
        Mat::from_fn(r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat<T>) {
        for i in 0..b.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + b.cols].copy_from_slice(b.row(i));
        }
    }

    /// `P M Pᵀ` where row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_sym(&self, perm: &[usize]) -> Mat<T> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(perm.len(), self.rows);
        Mat::from_fn(self.rows, self.cols, |i, j| self.get(perm[i], perm[j]))
    }
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat::filled(rows, cols, T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn matvec(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.cols {
            return Err(Error::Dimension(format!(
                "matrix has {} columns, vector has {} entries",
                self.cols,
                x.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (a, &b) in self.row(i).iter().zip(x) {
                    acc += *a * b;
                }
                acc
            })
            .collect())
    }

    /// Straightforward triple loop, valid for any scalar (including intervals).
    pub fn mul_naive(&self, b: &Mat<T>) -> Result<Mat<T>> {
        if self.cols != b.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, b.rows, b.cols
            )));
        }
        let mut c = Mat::zeros(self.rows, b.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == T::zero() {
                    continue;
                }
                let brow = b.row(k);
                let crow = c.row_mut(i);
                for (cv, &bv) in crow.iter_mut().zip(brow) {
                    *cv += a * bv;
                }
            }
        }
        Ok(c)
    }

    pub fn sub_mat(&self, b: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (b.rows, b.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&b.data).map(|(&x, &y)| x - y).collect(),
        }
    }

    /// Float 1-norm (max column sum of `|·|` upper bounds).
    pub fn norm1_float(&self) -> f64 {
        let mut sums = vec![0.0f64; self.cols];
        for i in 0..self.rows {
            for (s, v) in sums.iter_mut().zip(self.row(i)) {
                *s += v.abs_sup();
            }
        }
        sums.into_iter().fold(0.0, f64::max)
    }
}

/// Cache-blocked products for float element types.
pub trait Gemm: Scalar {
    /// `C = A B`.
    fn gemm(a: &Mat<Self>, b: &Mat<Self>) -> Mat<Self>;
}

impl Gemm for f64 {
    fn gemm(a: &Mat<f64>, b: &Mat<f64>) -> Mat<f64> {
        assert_eq!(a.cols, b.rows, "gemm inner dimension");
        let mut c = Mat::zeros(a.rows, b.cols);
        if a.rows == 0 || b.cols == 0 || a.cols == 0 {
            return c;
        }
        // SAFETY: pointers and strides describe the three dense row-major buffers.
        unsafe {
            matrixmultiply::dgemm(
                a.rows,
                a.cols,
                b.cols,
                1.0,
                a.data.as_ptr(),
                a.cols as isize,
                1,
                b.data.as_ptr(),
                b.cols as isize,
                1,
                0.0,
                c.data.as_mut_ptr(),
                c.cols as isize,
                1,
            );
        }
        c
    }
}

impl Gemm for Complex64 {
    fn gemm(a: &Mat<Complex64>, b: &Mat<Complex64>) -> Mat<Complex64> {
        assert_eq!(a.cols, b.rows, "gemm inner dimension");
        let mut c = Mat::zeros(a.rows, b.cols);
        if a.rows == 0 || b.cols == 0 || a.cols == 0 {
            return c;
        }
        // SAFETY: Complex64 is repr(C) {re, im}, layout-identical to [f64; 2].
        unsafe {
            matrixmultiply::zgemm(
                matrixmultiply::CGemmOption::Standard,
                matrixmultiply::CGemmOption::Standard,
                a.rows,
                a.cols,
                b.cols,
                [1.0, 0.0],
                a.data.as_ptr() as *const [f64; 2],
                a.cols as isize,
                1,
                b.data.as_ptr() as *const [f64; 2],
                b.cols as isize,
                1,
                [0.0, 0.0],
                c.data.as_mut_ptr() as *mut [f64; 2],
                c.cols as isize,
                1,
            );
        }
        c
    }
}

/// Partial-pivoting LU factorization `P M = L U`.
#[derive(Clone, Debug)]
pub struct Lu<T> {
    lu: Mat<T>,
    perm: Vec<usize>,
}

impl<T: Scalar> Lu<T> {
    pub fn factor(m: &Mat<T>) -> Result<Self> {
        if m.rows != m.cols {
            return Err(Error::Dimension(format!(
                "LU of a non-square {}x{} matrix",
                m.rows, m.cols
            )));
        }
        let n = m.rows;
        let mut lu = m.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let scale = lu.data.iter().fold(0.0f64, |s, v| s.max(v.abs_sup()));
        for k in 0..n {
            let (p, pv) = (k..n)
                .map(|i| (i, lu.get(i, k).abs_sup()))
                .fold((k, -1.0), |best, c| if c.1 > best.1 { c } else { best });
            if !(pv > scale * f64::EPSILON * 1e-3) || !pv.is_finite() {
                return Err(Error::Singular(format!("pivot {pv:e} at column {k}")));
            }
            if p != k {
                perm.swap(p, k);
                for j in 0..n {
                    let t = lu.get(p, j);
                    lu.set(p, j, lu.get(k, j));
                    lu.set(k, j, t);
                }
            }
            let piv = lu.get(k, k);
            for i in k + 1..n {
                let l = lu.get(i, k).try_div(piv)?;
                lu.set(i, k, l);
                if l == T::zero() {
                    continue;
                }
                for j in k + 1..n {
                    let v = lu.get(i, j) - l * lu.get(k, j);
                    lu.set(i, j, v);
                }
            }
        }
        Ok(Lu { lu, perm })
    }

    pub fn solve(&self, b: &[T]) -> Result<Vec<T>> {
        let n = self.lu.rows;
        if b.len() != n {
            return Err(Error::Dimension(format!("rhs length {} vs {n}", b.len())));
        }
        let mut x: Vec<T> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut acc = x[i];
            for (j, xj) in x.iter().enumerate().take(i) {
                acc = acc - self.lu.get(i, j) * *xj;
            }
            x[i] = acc;
        }
        for i in (0..n).rev() {
            let mut acc = x[i];
            for j in i + 1..n {
                acc = acc - self.lu.get(i, j) * x[j];
            }
            x[i] = acc.try_div(self.lu.get(i, i))?;
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Mat<T>> {
        let n = self.lu.rows;
        let mut inv = Mat::zeros(n, n);
        let mut e = vec![T::zero(); n];
        for j in 0..n {
            e.iter_mut().for_each(|v| *v = T::zero());
            e[j] = T::one();
            let col = self.solve(&e)?;
            for (i, v) in col.into_iter().enumerate() {
                inv.set(i, j, v);
            }
        }
        Ok(inv)
    }
}

/// Float inverse by partial-pivoting LU.
pub fn approx_inverse<T: Scalar>(m: &Mat<T>) -> Result<Mat<T>> {
    Lu::factor(m)?.inverse()
}

/// Inverse of a block lower-triangular matrix with square diagonal blocks of
/// size `bs`, by recursive splitting.
pub fn block_lower_inverse<T: Gemm>(m: &Mat<T>, bs: usize) -> Result<Mat<T>> {
    let n = m.rows;
    if m.cols != n || n % bs != 0 {
        return Err(Error::Dimension(format!(
            "{}x{} is not square in blocks of {bs}",
            m.rows, m.cols
        )));
    }
    if n <= 16 * bs {
        return approx_inverse(m);
    }
    let h = (n / bs / 2) * bs;
    let t11 = m.submatrix(0, h, 0, h);
    let t21 = m.submatrix(h, n, 0, h);
    let t22 = m.submatrix(h, n, h, n);
    let x11 = block_lower_inverse(&t11, bs)?;
    let x22 = block_lower_inverse(&t22, bs)?;
    let x21 = T::gemm(&T::gemm(&x22, &t21), &x11).map(|v| -v);
    let mut out = Mat::zeros(n, n);
    out.set_block(0, 0, &x11);
    out.set_block(h, 0, &x21);
    out.set_block(h, h, &x22);
    Ok(out)
}

/// Solve `M x = b` for block lower-triangular `M` by forward substitution.
pub fn block_lower_solve<T: Scalar>(m: &Mat<T>, bs: usize, b: &[T]) -> Result<Vec<T>> {
    let n = m.rows;
    if m.cols != n || n % bs != 0 || b.len() != n {
        return Err(Error::Dimension("block forward substitution shapes".into()));
    }
    let mut x = vec![T::zero(); n];
    for blk in 0..n / bs {
        let r0 = blk * bs;
        let mut rhs: Vec<T> = (0..bs)
            .map(|i| {
                let row = m.row(r0 + i);
                let mut acc = b[r0 + i];
                for (a, xv) in row[..r0].iter().zip(&x[..r0]) {
                    if *a != T::zero() {
                        acc = acc - *a * *xv;
                    }
                }
                acc
            })
            .collect();
        let d = m.submatrix(r0, r0 + bs, r0, r0 + bs);
        rhs = Lu::factor(&d)?.solve(&rhs)?;
        x[r0..r0 + bs].copy_from_slice(&rhs);
    }
    Ok(x)
}
