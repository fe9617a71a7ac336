//! Dense square matrices and the three determinant routes used in the crate.

use std::ops::{Index, IndexMut};

use crate::scalar::Scalar;

/// Row-major dense square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix<S> {
    dim: usize,
    entries: Vec<S>,
}

impl<S> SquareMatrix<S> {
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        SquareMatrix { dim, entries }
    }

    /// Builds from rows; panics when the rows do not form a square.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            assert_eq!(row.len(), dim, "matrix is not square");
            entries.extend(row);
        }
        SquareMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn map<T>(&self, f: impl FnMut(&S) -> T) -> SquareMatrix<T> {
        SquareMatrix { dim: self.dim, entries: self.entries.iter().map(f).collect() }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.dim {
                self.entries.swap(a * self.dim + j, b * self.dim + j);
            }
        }
    }
}

impl<S: Clone> SquareMatrix<S> {
    pub fn transpose(&self) -> Self {
        SquareMatrix::from_fn(self.dim, |i, j| self[(j, i)].clone())
    }
}

impl<S> Index<(usize, usize)> for SquareMatrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.entries[i * self.dim + j]
    }
}

impl<S> IndexMut<(usize, usize)> for SquareMatrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.entries[i * self.dim + j]
    }
}

/// Determinant through the scalar type's preferred route.
pub fn det<S: Scalar>(m: SquareMatrix<S>) -> S {
    S::determinant(m)
}

/// Fraction-free (Bareiss) elimination. Every division is exact in an
/// integral domain, so this works over `BigInt` and Laurent polynomials.
///
/// Panics if an intermediate division is not exact, which cannot happen for
/// an integral domain and signals a broken `checked_div`.
pub fn det_bareiss<S: Scalar>(mut m: SquareMatrix<S>) -> S {
    let n = m.dim;
    if n == 0 {
        return S::one();
    }
    let mut negate = false;
    let mut prev = S::one();
    for k in 0..n - 1 {
        let pivot = (k..n)
            .filter(|&i| !m[(i, k)].is_zero())
            .max_by(|&a, &b| m[(a, k)].magnitude().total_cmp(&m[(b, k)].magnitude()));
        let Some(p) = pivot else {
            return S::zero();
        };
        if p != k {
            m.swap_rows(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[(i, j)].clone() * m[(k, k)].clone() - m[(i, k)].clone() * m[(k, j)].clone();
                m[(i, j)] = num.checked_div(&prev).expect("Bareiss step must divide exactly");
            }
            m[(i, k)] = S::zero();
        }
        prev = m[(k, k)].clone();
    }
    let d = m[(n - 1, n - 1)].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Result of partial-pivoted LU elimination.
#[derive(Clone, Debug, PartialEq)]
pub struct LuDeterminant<S> {
    pub value: S,
    /// `max |pivot| / min |pivot|`; infinite when a pivot vanished.
    pub pivot_ratio: f64,
}

/// Pivot ratio above which a determinant is flagged as ill-conditioned.
pub const PIVOT_RATIO_WARNING: f64 = 1e10;

impl<S> LuDeterminant<S> {
    pub fn ill_conditioned(&self) -> bool {
        self.pivot_ratio > PIVOT_RATIO_WARNING
    }
}

/// Gaussian elimination with partial pivoting, for field-valued floats.
pub fn det_lu<S: Scalar>(mut m: SquareMatrix<S>) -> LuDeterminant<S> {
    let n = m.dim;
    let mut value = S::one();
    let (mut pmax, mut pmin) = (0.0_f64, f64::INFINITY);
    for k in 0..n {
        let p = (k..n)
            .max_by(|&a, &b| m[(a, k)].magnitude().total_cmp(&m[(b, k)].magnitude()))
            .expect("non-empty pivot range");
        let size = m[(p, k)].magnitude();
        pmax = pmax.max(size);
        pmin = pmin.min(size);
        if size == 0.0 {
            return LuDeterminant { value: S::zero(), pivot_ratio: f64::INFINITY };
        }
        if p != k {
            m.swap_rows(p, k);
            value = -value;
        }
        let pivot = m[(k, k)].clone();
        value = value * pivot.clone();
        for i in k + 1..n {
            let factor = m[(i, k)].checked_div(&pivot).expect("nonzero pivot");
            if factor.is_zero() {
                continue;
            }
            for j in k + 1..n {
                let update = factor.clone() * m[(k, j)].clone();
                m[(i, j)] = m[(i, j)].clone() - update;
            }
        }
    }
    let pivot_ratio = if n == 0 { 1.0 } else { pmax / pmin };
    LuDeterminant { value, pivot_ratio }
}

/// Laplace expansion along the first row. Exponential cost; kept as an
/// independent check for matrices of size at most about 6.
pub fn det_minors<S: Scalar>(m: &SquareMatrix<S>) -> S {
    let cols: Vec<usize> = (0..m.dim).collect();
    minors_rec(m, 0, &cols)
}

fn minors_rec<S: Scalar>(m: &SquareMatrix<S>, row: usize, cols: &[usize]) -> S {
    if cols.is_empty() {
        return S::one();
    }
    let mut acc = S::zero();
    for (pos, &c) in cols.iter().enumerate() {
        let entry = &m[(row, c)];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry.clone() * minors_rec(m, row + 1, &rest);
        acc = if pos % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}
