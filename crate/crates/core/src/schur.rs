//! Schur functions and restricted Cauchy-type sums of their products.
//!
//! Every routine is generic over [`Scalar`], so the same code evaluates at
//! complex points, at rationals, or exactly at powers of the formal `q`.

use rayon::prelude::*;
use thiserror::Error;

use crate::combinat::{self, conjugate, Partition};
use crate::linalg::SquareMatrix;
use crate::qexact::binomial;
use crate::scalar::{find_coincidence, geometric_sum, product, vandermonde, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchurError {
    #[error("points {0} and {1} coincide; use the Jacobi-Trudi or brute-force path")]
    Degenerate(usize, usize),
    #[error("enumeration needs {needed} terms, over the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("invalid parameters: {0}")]
    InvalidParameter(String),
}

/// Largest sum the brute-force Cauchy routines will enumerate.
pub const BRUTE_FORCE_BUDGET: u128 = 1_000_000;

/// All of `e_0, ..., e_N` of the points, from the coefficients of
/// `prod (1 + t x_i)`.
pub fn elementary_all<S: Scalar>(x: &[S]) -> Vec<S> {
    let mut e = vec![S::zero(); x.len() + 1];
    e[0] = S::one();
    for (i, xi) in x.iter().enumerate() {
        for r in (1..=i + 1).rev() {
            e[r] = e[r].clone() + e[r - 1].clone() * xi.clone();
        }
    }
    e
}

/// `e_r(x)`; zero for `r < 0` or `r > N`.
pub fn elementary_symmetric<S: Scalar>(r: i64, x: &[S]) -> S {
    if r < 0 || r as usize > x.len() {
        return S::zero();
    }
    elementary_all(x).swap_remove(r as usize)
}

fn bialternant_numerator<S: Scalar>(lambda: &Partition, x: &[S]) -> SquareMatrix<S> {
    let n = x.len();
    SquareMatrix::from_fn(n, |k, j| {
        let exp = lambda.part(k) + (n - 1 - k) as i64;
        Scalar::pow(&x[j], exp as u32)
    })
}

/// Ratio of alternants `det(x_j^{lambda_k + N - k}) / V(x)`.
pub fn schur_bialternant<S: Scalar>(lambda: &Partition, x: &[S]) -> Result<S, SchurError> {
    if lambda.length() > x.len() {
        return Ok(S::zero());
    }
    if let Some((i, j)) = find_coincidence(x) {
        return Err(SchurError::Degenerate(i, j));
    }
    let num = S::determinant(bialternant_numerator(lambda, x));
    num.checked_div(&vandermonde(x)).ok_or(SchurError::Degenerate(0, 0))
}

/// Dual Jacobi-Trudi: `det(e_{lambda'_i - i + j})` over the conjugate
/// partition. Valid at repeated points.
pub fn schur_jacobi_trudi<S: Scalar>(lambda: &Partition, x: &[S]) -> S {
    let e = elementary_all(x);
    jacobi_trudi_from_elementary(lambda, &e)
}

/// Dual Jacobi-Trudi with precomputed `e_0..e_N`.
pub fn jacobi_trudi_from_elementary<S: Scalar>(lambda: &Partition, e: &[S]) -> S {
    let conj = conjugate(lambda);
    let size = conj.length();
    let get = |r: i64| -> S {
        if r < 0 || r as usize >= e.len() {
            S::zero()
        } else {
            e[r as usize].clone()
        }
    };
    let m = SquareMatrix::from_fn(size, |i, j| get(conj.part(i) - i as i64 + j as i64));
    S::determinant(m)
}

/// Sum over semistandard tableaux of shape `lambda` with entries in `1..=N`
/// of `prod x_entry`.
pub fn schur_ssyt_oracle<S: Scalar>(lambda: &Partition, x: &[S]) -> Result<S, SchurError> {
    if lambda.weight() > 12 || x.len() > 6 {
        return Err(SchurError::BudgetExceeded { needed: u128::MAX, budget: 0 });
    }
    let shape: Vec<usize> = lambda.parts().iter().map(|&p| p as usize).collect();
    let mut tableau: Vec<Vec<usize>> = shape.iter().map(|&len| vec![0; len]).collect();
    let mut acc = S::zero();
    fill_tableau(&shape, 0, 0, x, &mut tableau, &mut acc);
    Ok(acc)
}

fn fill_tableau<S: Scalar>(shape: &[usize], row: usize, col: usize, x: &[S], t: &mut Vec<Vec<usize>>, acc: &mut S) {
    if row == shape.len() {
        let mut term = S::one();
        for r in t.iter() {
            for &v in r {
                term = term * x[v].clone();
            }
        }
        *acc = acc.clone() + term;
        return;
    }
    if col == shape[row] {
        fill_tableau(shape, row + 1, 0, x, t, acc);
        return;
    }
    let lo_row = if col > 0 { t[row][col - 1] } else { 0 };
    let lo_col = if row > 0 { t[row - 1][col] + 1 } else { 0 };
    for v in lo_row.max(lo_col)..x.len() {
        t[row][col] = v;
        fill_tableau(shape, row, col + 1, x, t, acc);
    }
}

fn check_same_len<S>(y: &[S], x: &[S]) -> Result<(), SchurError> {
    if y.len() != x.len() {
        return Err(SchurError::InvalidParameter(format!("point sets have lengths {} and {}", y.len(), x.len())));
    }
    Ok(())
}

/// Restricted Cauchy sum
/// `P_{L/n}(y, x) = sum_{n <= lambda_N <= ... <= lambda_1 <= L} S_lambda(y) S_lambda(x)`
/// in closed form:
/// `prod (x_l y_l)^n det(T) / (V(y) V(x))`, `T_kj = sum_{m < N+L-n} (x_k y_j)^m`.
///
/// The geometric sums are evaluated by Horner, so `x_k y_j = 1` gives the
/// limit value `N + L - n` with no special case.
pub fn binet_cauchy_kernel<S: Scalar>(l: i64, n: i64, y: &[S], x: &[S]) -> Result<S, SchurError> {
    check_same_len(y, x)?;
    if n < 0 || n > l {
        return Err(SchurError::InvalidParameter(format!("need 0 <= n <= L, got n={n}, L={l}")));
    }
    for pts in [y, x] {
        if let Some((i, j)) = find_coincidence(pts) {
            return Err(SchurError::Degenerate(i, j));
        }
    }
    let dim = x.len();
    let terms = dim + (l - n) as usize;
    let t = SquareMatrix::from_fn(dim, |k, j| geometric_sum(&(x[k].clone() * y[j].clone()), terms));
    let pref: S =
        x.iter().zip(y).map(|(a, b)| Scalar::pow(&(a.clone() * b.clone()), n as u32)).fold(S::one(), |acc, v| acc * v);
    let den = vandermonde(y) * vandermonde(x);
    (pref * S::determinant(t)).checked_div(&den).ok_or(SchurError::Degenerate(0, 0))
}

fn box_budget(max_part: i64, len: usize) -> Result<(), SchurError> {
    let needed = binomial(max_part.max(0) + len as i64, len as i64);
    let needed: u128 = needed.try_into().unwrap_or(u128::MAX);
    if needed > BRUTE_FORCE_BUDGET {
        return Err(SchurError::BudgetExceeded { needed, budget: BRUTE_FORCE_BUDGET });
    }
    Ok(())
}

/// Ordered sum of `f` over all partitions in a `max_part x len` box.
/// Terms are computed in parallel and added in enumeration order, so the
/// result does not depend on the thread count.
fn sum_over_box<S: Scalar>(max_part: i64, len: usize, f: impl Fn(&Partition) -> S + Sync) -> S {
    let parts: Vec<Partition> = combinat::enumerate_partitions_in_box(max_part, len).collect();
    let terms: Vec<S> = parts.par_iter().map(&f).collect();
    terms.into_iter().fold(S::zero(), |a, b| a + b)
}

/// The same sum as [`binet_cauchy_kernel`] by direct summation over
/// partitions, each Schur function from the Jacobi-Trudi determinant.
pub fn binet_cauchy_bruteforce<S: Scalar>(l: i64, n: i64, y: &[S], x: &[S]) -> Result<S, SchurError> {
    check_same_len(y, x)?;
    if n < 0 || n > l {
        return Err(SchurError::InvalidParameter(format!("need 0 <= n <= L, got n={n}, L={l}")));
    }
    let dim = x.len();
    box_budget(l - n, dim)?;
    let (ey, ex) = (elementary_all(y), elementary_all(x));
    Ok(sum_over_box(l - n, dim, |mu| {
        let shifted = Partition::new((0..dim).map(|i| mu.part(i) + n).collect()).expect("shift keeps order");
        jacobi_trudi_from_elementary(&shifted, &ey) * jacobi_trudi_from_elementary(&shifted, &ex)
    }))
}

fn prop2_check(k: i64, n: usize, long: usize, short: usize) -> Result<(), SchurError> {
    if k < 0 || n > long || short + n != long {
        return Err(SchurError::InvalidParameter(format!(
            "need K >= 0 and point sets of sizes N and N-n, got K={k}, n={n}, sizes {long} and {short}"
        )));
    }
    Ok(())
}

/// `sum_{lambda in K^{N-n}} S_{lambda-hat}(v) S_lambda(u)` by direct
/// summation, where `v` has `N` points, `u` has `N-n` points and
/// `lambda-hat` is `lambda` padded with `n` zero parts.
pub fn prop2_sum_bruteforce<S: Scalar>(k: i64, n: usize, v_inv_sq: &[S], u_sq: &[S]) -> Result<S, SchurError> {
    prop2_check(k, n, v_inv_sq.len(), u_sq.len())?;
    box_budget(k, u_sq.len())?;
    let (ev, eu) = (elementary_all(v_inv_sq), elementary_all(u_sq));
    Ok(sum_over_box(k, u_sq.len(), |lambda| {
        jacobi_trudi_from_elementary(lambda, &ev) * jacobi_trudi_from_elementary(lambda, &eu)
    }))
}

/// `det(T-bar) / (V(u) V(v))` for `u` of size `N-n`, `v` of size `N`: the
/// first `N-n` rows are `sum_{m=0}^{K+N-1} (u_k v_j)^m`, row `k > N-n`
/// (1-based) is `v_j^{N-k}`.
pub fn block_kernel<S: Scalar>(k: i64, n: usize, v_inv_sq: &[S], u_sq: &[S]) -> Result<S, SchurError> {
    prop2_check(k, n, v_inv_sq.len(), u_sq.len())?;
    for pts in [u_sq, v_inv_sq] {
        if let Some((i, j)) = find_coincidence(pts) {
            return Err(SchurError::Degenerate(i, j));
        }
    }
    let dim = v_inv_sq.len();
    let short = u_sq.len();
    let terms = k as usize + dim;
    let t = SquareMatrix::from_fn(dim, |row, j| {
        if row < short {
            geometric_sum(&(u_sq[row].clone() * v_inv_sq[j].clone()), terms)
        } else {
            Scalar::pow(&v_inv_sq[j], (dim - 1 - row) as u32)
        }
    });
    S::determinant(t).checked_div(&(vandermonde(u_sq) * vandermonde(v_inv_sq))).ok_or(SchurError::Degenerate(0, 0))
}

/// Closed form of [`prop2_sum_bruteforce`]:
/// `prod u_l^{-n} det(T-bar) / (V(u) V(v))`.
pub fn prop2_determinant<S: Scalar>(k: i64, n: usize, v_inv_sq: &[S], u_sq: &[S]) -> Result<S, SchurError> {
    let kernel = block_kernel(k, n, v_inv_sq, u_sq)?;
    let pref = Scalar::pow(&product(u_sq), n as u32);
    kernel.checked_div(&pref).ok_or(SchurError::Degenerate(0, 0))
}

/// Mirrored sum `sum_{lambda in K^{N-n}} S_lambda(v) S_{lambda-hat}(u)` with
/// `v` of size `N-n` and `u` of size `N`.
pub fn prop2_mirrored_bruteforce<S: Scalar>(k: i64, n: usize, u_sq: &[S], v_inv_sq: &[S]) -> Result<S, SchurError> {
    prop2_sum_bruteforce(k, n, u_sq, v_inv_sq)
}

/// Closed form of the mirrored sum: the first `N-n` columns are
/// `sum_m (u_k v_j)^m`, column `j > N-n` (1-based) is `u_k^{N-j}`, and the
/// prefactor is `prod v_l^{-n}` over the `N-n` points `v`.
pub fn prop2_mirrored_determinant<S: Scalar>(k: i64, n: usize, u_sq: &[S], v_inv_sq: &[S]) -> Result<S, SchurError> {
    prop2_check(k, n, u_sq.len(), v_inv_sq.len())?;
    for pts in [u_sq, v_inv_sq] {
        if let Some((i, j)) = find_coincidence(pts) {
            return Err(SchurError::Degenerate(i, j));
        }
    }
    let dim = u_sq.len();
    let short = v_inv_sq.len();
    let terms = k as usize + dim;
    let t = SquareMatrix::from_fn(dim, |row, col| {
        if col < short {
            geometric_sum(&(u_sq[row].clone() * v_inv_sq[col].clone()), terms)
        } else {
            Scalar::pow(&u_sq[row], (dim - 1 - col) as u32)
        }
    });
    let den = vandermonde(v_inv_sq) * vandermonde(u_sq) * Scalar::pow(&product(v_inv_sq), n as u32);
    S::determinant(t).checked_div(&den).ok_or(SchurError::Degenerate(0, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qexact::{es_special_l, LaurentPoly};
    use num_bigint::BigInt;
    use num_complex::Complex64;

    fn part(v: &[i64]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn elementary_values() {
        assert_eq!(elementary_symmetric(1, &[2.0, 5.0]), 7.0);
        assert_eq!(elementary_symmetric(2, &[1.0, 1.0, 1.0]), 3.0);
        assert_eq!(elementary_symmetric(0, &[4.0_f64]), 1.0);
        assert_eq!(elementary_symmetric(3, &[4.0_f64]), 0.0);
        for n in 0..6 {
            let qs: Vec<LaurentPoly> = (1..=n).map(LaurentPoly::q_pow).collect();
            for r in 0..=n + 1 {
                assert_eq!(elementary_symmetric(r, &qs), es_special_l(r, n).unwrap());
            }
        }
    }

    #[test]
    fn three_routes_small() {
        let x = [2.0_f64, 3.0];
        let l = part(&[2, 1]);
        // SSYT of shape (2,1) in {1,2}: 112, 122 -> x1^2 x2 + x1 x2^2 = 12 + 18
        assert_eq!(schur_ssyt_oracle(&l, &x).unwrap(), 30.0);
        assert!((schur_bialternant(&l, &x).unwrap() - 30.0).abs() < 1e-12);
        assert!((schur_jacobi_trudi(&l, &x) - 30.0).abs() < 1e-12);
        assert_eq!(schur_jacobi_trudi(&l, &[1.0, 1.0]), 2.0);
        assert_eq!(schur_ssyt_oracle(&part(&[2]), &[1.0, 1.0]).unwrap(), 3.0);
        assert_eq!(schur_ssyt_oracle(&part(&[1, 1]), &[2.0, 7.0]).unwrap(), 14.0);
        assert_eq!(schur_jacobi_trudi(&Partition::empty(), &x), 1.0);
        assert!((schur_bialternant(&Partition::empty(), &x).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bialternant_rejects_coincident_points() {
        let r = schur_bialternant(&part(&[1]), &[1.0, 1.0 + 1e-13]);
        assert_eq!(r, Err(SchurError::Degenerate(0, 1)));
    }

    #[test]
    fn exact_track_schur() {
        let qs: Vec<LaurentPoly> = (0..3).map(LaurentPoly::q_pow).collect();
        for l in [part(&[2, 1]), part(&[3]), part(&[1, 1, 1]), part(&[2, 2, 1])] {
            let a = schur_bialternant(&l, &qs).unwrap();
            let b = schur_jacobi_trudi(&l, &qs);
            let c = schur_ssyt_oracle(&l, &qs).unwrap();
            assert_eq!(a, b);
            assert_eq!(b, c);
        }
        let ints: Vec<BigInt> = [1, 1, 1].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(schur_jacobi_trudi(&part(&[2, 1]), &ints), BigInt::from(8));
    }

    #[test]
    fn kernel_edge_cases() {
        let x = [Complex64::new(0.3, 0.1), Complex64::new(-0.2, 0.7)];
        let y = [Complex64::new(1.1, -0.4), Complex64::new(0.5, 0.2)];
        let top = binet_cauchy_kernel(3, 3, &y, &x).unwrap();
        let expect = (x[0] * y[0] * x[1] * y[1]).powu(3);
        assert!((top - expect).norm() < 1e-12);
        let empty = binet_cauchy_bruteforce::<Complex64>(0, 0, &[], &[]).unwrap();
        assert_eq!(empty, Complex64::new(1.0, 0.0));
        let a = binet_cauchy_kernel(4, 1, &y, &x).unwrap();
        let b = binet_cauchy_bruteforce(4, 1, &y, &x).unwrap();
        assert!((a - b).norm() < 1e-10 * b.norm());
    }

    #[test]
    fn kernel_at_unit_points_counts() {
        // Cauchy sum at all-ones by Jacobi-Trudi equals the number of
        // column-strict arrays (2x2 box, entries <= 2): 6.
        let ones = [BigInt::from(1), BigInt::from(1)];
        assert_eq!(binet_cauchy_bruteforce(1, 0, &ones, &ones).unwrap(), BigInt::from(6));
    }

    #[test]
    fn prop2_small() {
        let v = [Complex64::new(0.4, 0.3), Complex64::new(-0.6, 0.2)];
        let u = [Complex64::new(0.9, -0.1)];
        let brute = prop2_sum_bruteforce(2, 1, &v, &u).unwrap();
        let det = prop2_determinant(2, 1, &v, &u).unwrap();
        assert!((brute - det).norm() < 1e-12 * brute.norm());
        let none = prop2_determinant::<Complex64>(3, 2, &v, &[]).unwrap();
        assert!((none - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        let mb = prop2_mirrored_bruteforce(2, 1, &v, &u).unwrap();
        let md = prop2_mirrored_determinant(2, 1, &v, &u).unwrap();
        assert!((mb - md).norm() < 1e-12 * mb.norm());
    }
}
