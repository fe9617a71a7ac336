//! Exact q-calculus: Laurent polynomials with big-integer coefficients,
//! Gaussian binomials, and (q-)binomial determinants.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::linalg::{self, SquareMatrix};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QError {
    #[error("negative argument {0} where a non-negative integer is required")]
    Negative(i64),
    #[error("index tuples must be strictly increasing, non-negative and of equal length")]
    InvalidTuples,
    #[error("exponent {numerator}/{denominator} is not an integer")]
    NonIntegerExponent { numerator: i64, denominator: i64 },
    #[error("polynomial division left a nonzero remainder")]
    InexactDivision,
}

/// Polynomial in `q` and `1/q` with arbitrary-precision integer coefficients.
///
/// Canonical form: no zero coefficient is ever stored, so structural equality
/// is mathematical equality.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        LaurentPoly { coeffs }
    }

    /// `q^exp`.
    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(1, exp)
    }

    /// The formal variable `q`.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn from_coeffs(pairs: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in pairs {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    /// Nonzero `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Highest exponent; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Multiplies by `q^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, c)| (e + shift, c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    /// Value at `q = 1` (sum of coefficients).
    pub fn at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    pub fn eval_rational(&self, q: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.coeffs {
            acc += BigRational::from_integer(c.clone()) * rational_pow(q, *e);
        }
        acc
    }

    /// Floating-point value at a point of any numeric scalar type.
    pub fn eval<S: Scalar>(&self, q: &S) -> S {
        let mut acc = S::zero();
        for (e, c) in &self.coeffs {
            let coef = S::from_int(c.to_i64().expect("coefficient fits in i64"));
            let qe = if *e >= 0 {
                Scalar::pow(q, *e as u32)
            } else {
                S::one().checked_div(&Scalar::pow(q, (-*e) as u32)).expect("q must be invertible")
            };
            acc = acc + coef * qe;
        }
        acc
    }

    /// Exact quotient `self / divisor`; fails unless the remainder is zero.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<LaurentPoly, QError> {
        let (dlo, dhi) = match (divisor.min_exponent(), divisor.degree()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(QError::InexactDivision),
        };
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let lead = &divisor.coeffs[&dhi];
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        let lo_bound = self.min_exponent().expect("nonzero") - dlo;
        while let Some(rhi) = rem.degree() {
            let qexp = rhi - dhi;
            if qexp < lo_bound {
                return Err(QError::InexactDivision);
            }
            let rc = &rem.coeffs[&rhi];
            let (c, r) = num_integer::Integer::div_rem(rc, lead);
            if !r.is_zero() {
                return Err(QError::InexactDivision);
            }
            for (e, dc) in &divisor.coeffs {
                rem.add_term(e + qexp, -(dc * &c));
            }
            quot.add_term(qexp, c);
        }
        Ok(quot)
    }
}

fn rational_pow(q: &BigRational, e: i64) -> BigRational {
    let base = if e < 0 { q.recip() } else { q.clone() };
    num_traits::pow::pow(base, e.unsigned_abs() as usize)
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly { coeffs: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::constant(1)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += rhs;
        self
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        for (e, c) in rhs.coeffs {
            self.add_term(e, c);
        }
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self + (-rhs)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &rhs.coeffs {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Scalar for LaurentPoly {
    const EXACT: bool = true;
    fn from_int(n: i64) -> Self {
        LaurentPoly::constant(n)
    }
    fn checked_div(&self, divisor: &Self) -> Option<Self> {
        self.exact_div(divisor).ok()
    }
    fn magnitude(&self) -> f64 {
        // Bareiss only needs "nonzero"; fewer terms make cheaper pivots.
        if self.is_zero() {
            0.0
        } else {
            1.0 / self.num_terms() as f64
        }
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            let sign = if c.is_negative() {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            let mag = c.abs();
            let show_coef = !mag.is_one() || *e == 0;
            write!(f, "{sign}")?;
            if show_coef {
                write!(f, "{mag}")?;
            }
            match *e {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{e}")?,
            }
        }
        Ok(())
    }
}

/// JSON form: `{"<exponent>": "<decimal coefficient>"}` in ascending
/// exponent order; the zero polynomial is `{}`.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.coeffs.len()))?;
        for (e, c) in &self.coeffs {
            map.serialize_entry(&e.to_string(), &c.to_string())?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct PolyVisitor;
        impl<'de> Visitor<'de> for PolyVisitor {
            type Value = LaurentPoly;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a map from exponent strings to decimal coefficient strings")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<LaurentPoly, A::Error> {
                let mut p = LaurentPoly::zero();
                while let Some((k, v)) = access.next_entry::<String, String>()? {
                    let e: i64 = k.parse().map_err(de::Error::custom)?;
                    let c: BigInt = v.parse().map_err(de::Error::custom)?;
                    if c.is_zero() {
                        return Err(de::Error::custom("zero coefficients are not canonical"));
                    }
                    p.add_term(e, c);
                }
                Ok(p)
            }
        }
        deserializer.deserialize_map(PolyVisitor)
    }
}

impl LaurentPoly {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("LaurentPoly serializes infallibly")
    }
}

fn non_negative(n: i64) -> Result<u32, QError> {
    u32::try_from(n).map_err(|_| QError::Negative(n))
}

/// `n*(n-1)/2`-style exponents appear throughout; this checks that a
/// product really is even before halving it.
pub fn half_exponent(twice: i64) -> Result<i64, QError> {
    if twice % 2 != 0 {
        return Err(QError::NonIntegerExponent { numerator: twice, denominator: 2 });
    }
    Ok(twice / 2)
}

/// `[n] = 1 + q + ... + q^{n-1}`.
pub fn q_number(n: i64) -> Result<LaurentPoly, QError> {
    let n = non_negative(n)?;
    Ok(LaurentPoly::from_coeffs((0..n as i64).map(|e| (e, BigInt::one()))))
}

/// `[n]! = [1][2]...[n]`, `[0]! = 1`.
pub fn q_factorial(n: i64) -> Result<LaurentPoly, QError> {
    let n = non_negative(n)?;
    let mut acc = LaurentPoly::one();
    for k in 1..=n as i64 {
        acc = &acc * &q_number(k)?;
    }
    Ok(acc)
}

thread_local! {
    static QBINOMIAL_ROWS: RefCell<Vec<Vec<LaurentPoly>>> = RefCell::new(vec![vec![LaurentPoly::one()]]);
}

/// Gaussian binomial `[n choose r]_q`, zero outside `0 <= r <= n`.
///
/// Built row by row from `[n,r] = [n-1,r-1] + q^r [n-1,r]` and memoized per
/// thread.
pub fn q_binomial(n: i64, r: i64) -> LaurentPoly {
    if n < 0 || r < 0 || r > n {
        return LaurentPoly::zero();
    }
    let (n, r) = (n as usize, r as usize);
    QBINOMIAL_ROWS.with(|rows| {
        let mut rows = rows.borrow_mut();
        while rows.len() <= n {
            let prev = rows.last().expect("row 0 present").clone();
            let m = prev.len();
            let mut next = Vec::with_capacity(m + 1);
            for k in 0..=m {
                let left = if k > 0 { prev[k - 1].clone() } else { LaurentPoly::zero() };
                let right = if k < m { prev[k].shift(k as i64) } else { LaurentPoly::zero() };
                next.push(left + right);
            }
            rows.push(next);
        }
        rows[n][r].clone()
    })
}

/// Right side of the q-Vandermonde convolution,
/// `sum_j q^{(N-j)(r-j)} [N choose j][N' choose r-j]`.
pub fn q_vandermonde(n: i64, n_prime: i64, r: i64) -> Result<LaurentPoly, QError> {
    non_negative(n)?;
    non_negative(n_prime)?;
    non_negative(r)?;
    let mut acc = LaurentPoly::zero();
    for j in 0..=r.min(n) {
        let term = &q_binomial(n, j) * &q_binomial(n_prime, r - j);
        acc += term.shift((n - j) * (r - j));
    }
    Ok(acc)
}

/// `R_r(N) = e_r(1, q, ..., q^{N-1}) = q^{r(r-1)/2} [N choose r]`.
pub fn es_special_r(r: i64, n: i64) -> Result<LaurentPoly, QError> {
    non_negative(r)?;
    Ok(q_binomial(n, r).shift(half_exponent(r * (r - 1))?))
}

/// `L_r(N) = e_r(q, q^2, ..., q^N) = q^{r(r+1)/2} [N choose r]`.
pub fn es_special_l(r: i64, n: i64) -> Result<LaurentPoly, QError> {
    non_negative(r)?;
    Ok(q_binomial(n, r).shift(half_exponent(r * (r + 1))?))
}

/// Pair of strictly increasing non-negative index tuples of equal length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexTuples {
    a: Vec<i64>,
    b: Vec<i64>,
}

impl IndexTuples {
    pub fn new(a: Vec<i64>, b: Vec<i64>) -> Result<Self, QError> {
        let increasing = |t: &[i64]| t.first().is_none_or(|&x| x >= 0) && t.windows(2).all(|w| w[0] < w[1]);
        if a.len() != b.len() || !increasing(&a) || !increasing(&b) {
            return Err(QError::InvalidTuples);
        }
        Ok(IndexTuples { a, b })
    }

    /// `a = (start_a, ..., start_a+len-1)`, `b = (start_b, ..., start_b+len-1)`.
    pub fn consecutive(start_a: i64, start_b: i64, len: usize) -> Result<Self, QError> {
        let a = (0..len as i64).map(|i| start_a + i).collect();
        let b = (0..len as i64).map(|i| start_b + i).collect();
        Self::new(a, b)
    }

    pub fn a(&self) -> &[i64] {
        &self.a
    }

    pub fn b(&self) -> &[i64] {
        &self.b
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }
}

/// Ordinary binomial coefficient as a big integer, zero outside `0..=n`.
pub fn binomial(n: i64, r: i64) -> BigInt {
    if n < 0 || r < 0 || r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `det( C(a_j, b_i) )_{i,j}`.
pub fn binomial_determinant(t: &IndexTuples) -> BigInt {
    let s = t.len();
    let m = SquareMatrix::from_fn(s, |i, j| binomial(t.a[j], t.b[i]));
    linalg::det_bareiss(m)
}

/// `det( [a_j choose b_i]_q )_{i,j}` over the exact Laurent ring.
pub fn q_binomial_determinant(t: &IndexTuples) -> LaurentPoly {
    let s = t.len();
    let m = SquareMatrix::from_fn(s, |i, j| q_binomial(t.a[j], t.b[i]));
    exact_det(m)
}

/// Largest dimension for which `exact_det` re-checks itself by minors.
pub const MINOR_SELF_CHECK_MAX_DIM: usize = 4;

/// Exact determinant over the Laurent ring by fraction-free elimination;
/// small matrices are cross-checked against Laplace expansion.
pub fn exact_det(m: SquareMatrix<LaurentPoly>) -> LaurentPoly {
    let check = (m.dim() <= MINOR_SELF_CHECK_MAX_DIM).then(|| linalg::det_minors(&m));
    let d = linalg::det_bareiss(m);
    if let Some(c) = check {
        assert_eq!(d, c, "Bareiss and minor expansion disagree");
    }
    d
}

/// Product over a list of exponents `e` of `(1 - q^e)`.
pub fn cyclotomic_like_product(exponents: impl IntoIterator<Item = i64>) -> LaurentPoly {
    exponents.into_iter().fold(LaurentPoly::one(), |acc, e| &acc * &(LaurentPoly::one() - LaurentPoly::q_pow(e)))
}

/// Cache of Gaussian binomials exposed for diagnostics.
pub fn cached_rows() -> usize {
    QBINOMIAL_ROWS.with(|rows| rows.borrow().len())
}

/// Counts distinct coefficient magnitudes; handy for table output.
pub fn coefficient_histogram(p: &LaurentPoly) -> HashMap<String, usize> {
    let mut h = HashMap::new();
    for (_, c) in p.terms() {
        *h.entry(c.to_string()).or_insert(0) += 1;
    }
    h
}
