//! Partitions, plane partitions and non-intersecting lattice paths, by
//! direct enumeration.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombinatError {
    #[error("parts must be weakly decreasing and non-negative: {0:?}")]
    NotAPartition(Vec<i64>),
    #[error("parts must be strictly decreasing and non-negative: {0:?}")]
    NotStrict(Vec<i64>),
    #[error("partition has {len} nonzero parts, more than {max}")]
    TooLong { len: usize, max: usize },
    #[error("enumeration would exceed the budget of {budget} items")]
    BudgetExceeded { budget: u64 },
    #[error("index tuples must be strictly increasing, non-negative and of equal length")]
    InvalidTuples,
}

/// Default cap on items produced by any brute-force enumeration.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Weakly decreasing tuple of non-negative integers. Trailing zeros are
/// dropped, so equal partitions compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<i64>,
}

impl Partition {
    pub fn new(mut parts: Vec<i64>) -> Result<Self, CombinatError> {
        if parts.iter().any(|&p| p < 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(CombinatError::NotAPartition(parts));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// Nonzero parts, largest first.
    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> i64 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn weight(&self) -> i64 {
        self.parts.iter().sum()
    }

    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn largest(&self) -> i64 {
        self.part(0)
    }

    /// Parts padded with zeros to exactly `len` entries.
    pub fn padded(&self, len: usize) -> Result<Vec<i64>, CombinatError> {
        if self.length() > len {
            return Err(CombinatError::TooLong { len: self.length(), max: len });
        }
        let mut v = self.parts.clone();
        v.resize(len, 0);
        Ok(v)
    }

    /// Whether the Young diagram fits inside `rows x cols`.
    pub fn fits(&self, rows: usize, cols: i64) -> bool {
        self.length() <= rows && self.largest() <= cols
    }
}

/// Conjugate partition: `lambda'_k = #{i : lambda_i >= k}`.
pub fn conjugate(p: &Partition) -> Partition {
    let parts = (1..=p.largest()).map(|k| p.parts.iter().filter(|&&x| x >= k).count() as i64).collect();
    Partition { parts }
}

/// Strictly decreasing tuple of non-negative integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrictPartition {
    parts: Vec<i64>,
}

impl StrictPartition {
    pub fn new(parts: Vec<i64>) -> Result<Self, CombinatError> {
        if parts.iter().any(|&p| p < 0) || parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(CombinatError::NotStrict(parts));
        }
        Ok(StrictPartition { parts })
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Inverse of [`strict_from`]: `lambda_j = mu_j - (N - j)`.
    pub fn to_partition(&self) -> Partition {
        let n = self.parts.len() as i64;
        let parts = self.parts.iter().enumerate().map(|(j, &m)| m - (n - 1 - j as i64)).collect();
        Partition::new(parts).expect("strict tuples shift to partitions")
    }
}

/// `mu_j = lambda_j + N - j` with `lambda` padded to length `n`.
pub fn strict_from(p: &Partition, n: usize) -> Result<StrictPartition, CombinatError> {
    let padded = p.padded(n)?;
    let parts = padded.iter().enumerate().map(|(j, &l)| l + (n - 1 - j) as i64).collect();
    Ok(StrictPartition { parts })
}

/// All partitions with at most `max_len` parts, each at most `max_part`.
///
/// Order is colexicographic ascending on the zero-padded tuple (the last
/// part is the most significant): for a 2x2 box this gives `()`, `(1)`,
/// `(2)`, `(1,1)`, `(2,1)`, `(2,2)`.
pub fn enumerate_partitions_in_box(max_part: i64, max_len: usize) -> PartitionsInBox {
    PartitionsInBox { max_part: max_part.max(0), current: Some(vec![0; max_len]) }
}

/// Iterator behind [`enumerate_partitions_in_box`].
#[derive(Clone, Debug)]
pub struct PartitionsInBox {
    max_part: i64,
    current: Option<Vec<i64>>,
}

impl Iterator for PartitionsInBox {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        let out = Partition::new(cur.clone()).expect("box tuples are partitions");
        // Colex successor: bump the first part below the cap and lower every
        // earlier part to the new value.
        let mut next = cur;
        if let Some(i) = next.iter().position(|&x| x < self.max_part) {
            let v = next[i] + 1;
            for x in next.iter_mut().take(i + 1) {
                *x = v;
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

/// Side lengths of the box `B(L, N, P)`: at most `l` rows, `n` columns and
/// entries at most `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoxDims {
    pub l: usize,
    pub n: usize,
    pub p: i64,
}

impl BoxDims {
    pub fn new(l: usize, n: usize, p: i64) -> Self {
        BoxDims { l, n, p: p.max(0) }
    }
}

/// Dense `L x N` array, weakly decreasing along rows and down columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlanePartition {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl PlanePartition {
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.cols + j]
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn volume(&self) -> i64 {
        self.entries.iter().sum()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// Weakly decreasing rows and columns, no negative entries.
    pub fn is_plane_partition(&self) -> bool {
        self.check(|above, below| above >= below)
    }

    /// Weakly decreasing rows, strictly decreasing columns.
    pub fn is_column_strict(&self) -> bool {
        self.check(|above, below| above > below)
    }

    fn check(&self, column_ok: impl Fn(i64, i64) -> bool) -> bool {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.entry(i, j);
                if x < 0 || (j + 1 < self.cols && x < self.entry(i, j + 1)) {
                    return false;
                }
                if i + 1 < self.rows && !column_ok(x, self.entry(i + 1, j)) {
                    return false;
                }
            }
        }
        true
    }

    /// Adds the staircase `N - 1 - i` to row `i`.
    pub fn add_staircase(&self) -> PlanePartition {
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[i * self.cols + j] += (self.rows - 1 - i) as i64;
            }
        }
        out
    }
}

/// Fills an `L x N` array cell by cell in row-major order, bounding each cell
/// by its right-upper neighbours.
fn fill_arrays(
    b: BoxDims,
    strict_columns: bool,
    budget: u64,
    visit: &mut dyn FnMut(&PlanePartition),
) -> Result<u64, CombinatError> {
    let mut pp = PlanePartition { rows: b.l, cols: b.n, entries: vec![0; b.l * b.n] };
    let mut count = 0u64;
    if b.l == 0 || b.n == 0 {
        visit(&pp);
        return Ok(1);
    }
    let mut walk = Walk { b, strict: strict_columns, budget, count: &mut count, visit };
    walk.rec(0, &mut pp)?;
    Ok(count)
}

struct Walk<'a> {
    b: BoxDims,
    strict: bool,
    budget: u64,
    count: &'a mut u64,
    visit: &'a mut dyn FnMut(&PlanePartition),
}

impl Walk<'_> {
    fn rec(&mut self, cell: usize, pp: &mut PlanePartition) -> Result<(), CombinatError> {
        let b = self.b;
        if cell == b.l * b.n {
            *self.count += 1;
            if *self.count > self.budget {
                return Err(CombinatError::BudgetExceeded { budget: self.budget });
            }
            (self.visit)(pp);
            return Ok(());
        }
        let (i, j) = (cell / b.n, cell % b.n);
        let mut hi = b.p;
        if j > 0 {
            hi = hi.min(pp.entry(i, j - 1));
        }
        if i > 0 {
            let above = pp.entry(i - 1, j);
            hi = hi.min(if self.strict { above - 1 } else { above });
        }
        // With strict columns, row i needs room for L-1-i smaller entries below.
        let floor = if self.strict { (b.l - 1 - i) as i64 } else { 0 };
        for v in floor..=hi {
            pp.entries[cell] = v;
            self.rec(cell + 1, pp)?;
        }
        pp.entries[cell] = 0;
        Ok(())
    }
}

/// Visits every plane partition in `B(L, N, P)` once; returns the count.
pub fn enumerate_plane_partitions(
    b: BoxDims,
    budget: u64,
    visit: &mut dyn FnMut(&PlanePartition),
) -> Result<u64, CombinatError> {
    fill_arrays(b, false, budget, visit)
}

/// Visits every column-strict array in `B(L, N, P)`: rows weakly
/// decreasing, every column strictly decreasing over all `L` rows.
pub fn enumerate_column_strict_pp(
    b: BoxDims,
    budget: u64,
    visit: &mut dyn FnMut(&PlanePartition),
) -> Result<u64, CombinatError> {
    fill_arrays(b, true, budget, visit)
}

pub fn count_plane_partitions(b: BoxDims) -> Result<u64, CombinatError> {
    enumerate_plane_partitions(b, DEFAULT_BUDGET, &mut |_| {})
}

pub fn count_column_strict_pp(b: BoxDims) -> Result<u64, CombinatError> {
    enumerate_column_strict_pp(b, DEFAULT_BUDGET, &mut |_| {})
}

/// Coefficients of `sum q^{volume}`, index = volume.
pub fn volume_histogram(b: BoxDims, column_strict: bool) -> Result<Vec<u64>, CombinatError> {
    let mut hist: Vec<u64> = Vec::new();
    let mut record = |pp: &PlanePartition| {
        let v = pp.volume() as usize;
        if hist.len() <= v {
            hist.resize(v + 1, 0);
        }
        hist[v] += 1;
    };
    if column_strict {
        enumerate_column_strict_pp(b, DEFAULT_BUDGET, &mut record)?;
    } else {
        enumerate_plane_partitions(b, DEFAULT_BUDGET, &mut record)?;
    }
    Ok(hist)
}

/// Number of families of pairwise vertex-disjoint lattice paths, path `i`
/// from `(0, a_i)` to `(b_i, b_i)` with unit steps `x+1` or `y-1`.
///
/// Exhaustive: walks every path of every member and backtracks on a shared
/// vertex. No determinant is involved.
pub fn count_lattice_path_families(a: &[i64], b: &[i64]) -> Result<BigInt, CombinatError> {
    let increasing = |t: &[i64]| t.first().is_none_or(|&x| x >= 0) && t.windows(2).all(|w| w[0] < w[1]);
    if a.len() != b.len() || !increasing(a) || !increasing(b) {
        return Err(CombinatError::InvalidTuples);
    }
    let mut used: HashSet<(i64, i64)> = HashSet::new();
    let mut total = BigInt::zero();
    place_path(0, a, b, &mut used, &mut total);
    Ok(total)
}

fn place_path(idx: usize, a: &[i64], b: &[i64], used: &mut HashSet<(i64, i64)>, total: &mut BigInt) {
    if idx == a.len() {
        *total += BigInt::one();
        return;
    }
    let start = (0, a[idx]);
    let end = (b[idx], b[idx]);
    if start.1 < end.1 || used.contains(&start) {
        return;
    }
    let mut trail = vec![start];
    used.insert(start);
    walk(start, end, idx, a, b, used, &mut trail, total);
    used.remove(&start);
}

#[allow(clippy::too_many_arguments)]
fn walk(
    at: (i64, i64),
    end: (i64, i64),
    idx: usize,
    a: &[i64],
    b: &[i64],
    used: &mut HashSet<(i64, i64)>,
    trail: &mut Vec<(i64, i64)>,
    total: &mut BigInt,
) {
    if at == end {
        place_path(idx + 1, a, b, used, total);
        return;
    }
    let steps = [(at.0 + 1, at.1), (at.0, at.1 - 1)];
    for next in steps {
        if next.0 > end.0 || next.1 < end.1 || used.contains(&next) {
            continue;
        }
        used.insert(next);
        trail.push(next);
        walk(next, end, idx, a, b, used, trail, total);
        trail.pop();
        used.remove(&next);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[i64]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn conjugates() {
        assert_eq!(conjugate(&part(&[3, 1])), part(&[2, 1, 1]));
        assert_eq!(conjugate(&Partition::empty()), Partition::empty());
        assert_eq!(conjugate(&part(&[5, 3, 2, 2])), part(&[4, 4, 2, 1, 1]));
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, -1]).is_err());
        assert_eq!(part(&[2, 0, 0]), part(&[2]));
        assert!(StrictPartition::new(vec![2, 2]).is_err());
    }

    #[test]
    fn strict_shift() {
        assert_eq!(strict_from(&part(&[5, 3, 2, 2]), 4).unwrap().parts(), &[8, 5, 3, 2]);
        assert_eq!(strict_from(&Partition::empty(), 3).unwrap().parts(), &[2, 1, 0]);
        assert_eq!(strict_from(&part(&[2]), 1).unwrap().parts(), &[2]);
        assert!(strict_from(&part(&[1, 1, 1]), 2).is_err());
        let mu = strict_from(&part(&[4, 1]), 3).unwrap();
        assert_eq!(mu.to_partition(), part(&[4, 1]));
    }

    #[test]
    fn partitions_in_box_listing() {
        let all: Vec<Partition> = enumerate_partitions_in_box(2, 2).collect();
        let expect = vec![part(&[]), part(&[1]), part(&[2]), part(&[1, 1]), part(&[2, 1]), part(&[2, 2])];
        assert_eq!(all, expect);
        assert_eq!(enumerate_partitions_in_box(0, 3).collect::<Vec<_>>(), vec![Partition::empty()]);
        assert_eq!(enumerate_partitions_in_box(1, 3).count(), 4);
        assert_eq!(enumerate_partitions_in_box(3, 0).count(), 1);
    }

    #[test]
    fn plane_partition_counts() {
        assert_eq!(count_plane_partitions(BoxDims::new(1, 1, 1)).unwrap(), 2);
        assert_eq!(count_plane_partitions(BoxDims::new(2, 2, 2)).unwrap(), 20);
        assert_eq!(count_plane_partitions(BoxDims::new(3, 2, 0)).unwrap(), 1);
        assert_eq!(count_plane_partitions(BoxDims::new(0, 4, 3)).unwrap(), 1);
    }

    #[test]
    fn column_strict_counts() {
        assert_eq!(count_column_strict_pp(BoxDims::new(2, 2, 2)).unwrap(), 6);
        for p in 0..6 {
            assert_eq!(count_column_strict_pp(BoxDims::new(1, 1, p)).unwrap(), p as u64 + 1);
        }
        // Not enough room for a strict column.
        assert_eq!(count_column_strict_pp(BoxDims::new(3, 1, 1)).unwrap(), 0);
    }

    #[test]
    fn budget_guard() {
        let err = enumerate_plane_partitions(BoxDims::new(3, 3, 3), 10, &mut |_| {});
        assert_eq!(err, Err(CombinatError::BudgetExceeded { budget: 10 }));
    }

    #[test]
    fn single_paths_are_binomials() {
        assert_eq!(count_lattice_path_families(&[2], &[1]).unwrap(), BigInt::from(2));
        assert_eq!(count_lattice_path_families(&[5], &[2]).unwrap(), BigInt::from(10));
        assert_eq!(count_lattice_path_families(&[1], &[2]).unwrap(), BigInt::zero());
        for p in 1..=4 {
            let a: Vec<i64> = (0..p).collect();
            assert_eq!(count_lattice_path_families(&a, &a).unwrap(), BigInt::one());
        }
        assert!(count_lattice_path_families(&[2, 1], &[0, 1]).is_err());
    }

    #[test]
    fn two_path_family() {
        // det [[C(2,1), C(3,1)], [C(2,2), C(3,2)]] = 2*3 - 3*1 = 3
        assert_eq!(count_lattice_path_families(&[2, 3], &[1, 2]).unwrap(), BigInt::from(3));
    }
}
