use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row-major, arbitrary precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix shapes");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(Zero::is_zero))
    }
}

/// `U · M · V = D` with `D` diagonal, `d_1 | d_2 | …`, and `U`, `V` invertible.
#[derive(Clone, Debug)]
pub struct Snf {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// The nonzero diagonal entries, all positive.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.data[i][i].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let mut a = m.data.clone();
    let mut u = IntMatrix::identity(m.rows).data;
    let mut v = IntMatrix::identity(m.cols).data;
    reduce(&mut a, m.rows, m.cols, Some((&mut u, &mut v))).expect("big integers do not overflow");
    Snf {
        d: IntMatrix {
            rows: m.rows,
            cols: m.cols,
            data: a,
        },
        u: IntMatrix {
            rows: m.rows,
            cols: m.rows,
            data: u,
        },
        v: IntMatrix {
            rows: m.cols,
            cols: m.cols,
            data: v,
        },
    }
}

/// Nonzero invariant factors of a small-entry matrix. Runs in machine
/// integers and redoes the reduction with big integers on overflow.
pub(crate) fn invariant_factors(rows: usize, cols: usize, data: Vec<Vec<i64>>) -> Vec<BigInt> {
    let mut fast = data.clone();
    if let Some(diag) = reduce(&mut fast, rows, cols, None) {
        return diag.into_iter().map(BigInt::from).collect();
    }
    let mut slow: Vec<Vec<BigInt>> = data
        .into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect();
    reduce(&mut slow, rows, cols, None).expect("big integers do not overflow")
}

trait Entry: Clone + PartialEq {
    fn is_nil(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    /// `self − q·b`
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn plus(&self, b: &Self) -> Option<Self>;
    fn negated(&self) -> Option<Self>;
    fn quot(&self, d: &Self) -> Option<Self>;
    fn divides(&self, other: &Self) -> bool;
}

impl Entry for i64 {
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn is_neg(&self) -> bool {
        *self < 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn plus(&self, b: &Self) -> Option<Self> {
        self.checked_add(*b)
    }
    fn negated(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn quot(&self, d: &Self) -> Option<Self> {
        self.checked_div(*d)
    }
    fn divides(&self, other: &Self) -> bool {
        other.checked_rem(*self) == Some(0)
    }
}

impl Entry for BigInt {
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn plus(&self, b: &Self) -> Option<Self> {
        Some(self + b)
    }
    fn negated(&self) -> Option<Self> {
        Some(-self)
    }
    fn quot(&self, d: &Self) -> Option<Self> {
        // truncating division keeps |remainder| < |d|
        Some(self / d)
    }
    fn divides(&self, other: &Self) -> bool {
        other.is_multiple_of(self)
    }
}

type Transforms<'a, T> = Option<(&'a mut Vec<Vec<T>>, &'a mut Vec<Vec<T>>)>;

/// Row `i` minus `q` times row `t`, on `a` and on `u`.
fn row_op<T: Entry>(a: &mut [Vec<T>], t: usize, i: usize, q: &T, from: usize) -> Option<()> {
    let (lo, hi) = a.split_at_mut(i.max(t));
    let (src, dst) = if t < i { (&lo[t], &mut hi[0]) } else { (&hi[0], &mut lo[i]) };
    for j in from..src.len() {
        if !src[j].is_nil() {
            dst[j] = dst[j].sub_mul(q, &src[j])?;
        }
    }
    Some(())
}

fn col_op<T: Entry>(a: &mut [Vec<T>], t: usize, j: usize, q: &T, from: usize) -> Option<()> {
    for row in a.iter_mut().skip(from) {
        if !row[t].is_nil() {
            row[j] = row[j].sub_mul(q, &row[t])?;
        }
    }
    Some(())
}

/// Reduces `a` in place to Smith normal form and returns the nonzero
/// diagonal. `None` means an entry overflowed.
fn reduce<T: Entry>(a: &mut [Vec<T>], rows: usize, cols: usize, mut tr: Transforms<'_, T>) -> Option<Vec<T>> {
    let mut diag = Vec::new();
    let n = rows.min(cols);
    for t in 0..n {
        let Some((pi, pj)) = pivot(a, t, rows, cols) else { break };
        swap_rows(a, &mut tr, t, pi);
        swap_cols(a, &mut tr, t, pj, rows);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_nil() {
                    continue;
                }
                let q = a[i][t].quot(&a[t][t])?;
                row_op(a, t, i, &q, t)?;
                if let Some((u, _)) = tr.as_mut() {
                    row_op(u, t, i, &q, 0)?;
                }
                if !a[i][t].is_nil() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_nil() {
                    continue;
                }
                let q = a[t][j].quot(&a[t][t])?;
                col_op(a, t, j, &q, t)?;
                if let Some((_, v)) = tr.as_mut() {
                    col_op(v, t, j, &q, 0)?;
                }
                if !a[t][j].is_nil() {
                    clean = false;
                }
            }
            if !clean {
                // a smaller remainder sits in row or column t: make it the pivot
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !a[i][t].is_nil() && a[i][t].abs_lt(&a[best.0][best.1]) {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !a[t][j].is_nil() && a[t][j].abs_lt(&a[best.0][best.1]) {
                        best = (t, j);
                    }
                }
                swap_rows(a, &mut tr, t, best.0);
                swap_cols(a, &mut tr, t, best.1, rows);
                continue;
            }
            if a[t][t].is_unit() {
                break;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[t][t].divides(&a[i][j])));
            match bad {
                Some(i) => {
                    // row t += row i brings the offending entry into row t
                    for j in t..cols {
                        a[t][j] = a[t][j].plus(&a[i][j])?;
                    }
                    if let Some((u, _)) = tr.as_mut() {
                        for j in 0..u[t].len() {
                            u[t][j] = u[t][j].plus(&u[i][j])?;
                        }
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_neg() {
            for j in t..cols {
                a[t][j] = a[t][j].negated()?;
            }
            if let Some((u, _)) = tr.as_mut() {
                for x in u[t].iter_mut() {
                    *x = x.negated()?;
                }
            }
        }
        diag.push(a[t][t].clone());
    }
    Some(diag)
}

/// Smallest nonzero entry of the trailing block, stopping at the first unit.
fn pivot<T: Entry>(a: &[Vec<T>], t: usize, rows: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..rows {
        for j in t..cols {
            let x = &a[i][j];
            if x.is_nil() {
                continue;
            }
            if x.is_unit() {
                return Some((i, j));
            }
            if best.is_none_or(|(bi, bj)| x.abs_lt(&a[bi][bj])) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn swap_rows<T: Entry>(a: &mut [Vec<T>], tr: &mut Transforms<'_, T>, i: usize, j: usize) {
    if i != j {
        a.swap(i, j);
        if let Some((u, _)) = tr.as_mut() {
            u.swap(i, j);
        }
    }
}

fn swap_cols<T: Entry>(a: &mut [Vec<T>], tr: &mut Transforms<'_, T>, i: usize, j: usize, rows: usize) {
    if i != j {
        for row in a.iter_mut().take(rows) {
            row.swap(i, j);
        }
        if let Some((_, v)) = tr.as_mut() {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(m: &IntMatrix) -> Snf {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]), "{diag:?}");
        }
        for i in 0..m.rows {
            for j in 0..m.cols {
                if i != j {
                    assert!(s.d.data[i][j].is_nil());
                }
            }
        }
        s
    }

    #[test]
    fn zero_and_identity() {
        assert!(check(&IntMatrix::zero(2, 3)).diagonal().is_empty());
        let s = check(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
    }

    #[test]
    fn two_and_three() {
        let s = check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn fast_path_matches() {
        let rows = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = check(&IntMatrix::from_rows(&rows));
        assert_eq!(invariant_factors(3, 3, rows), s.diagonal());
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }

    #[test]
    fn overflow_falls_back() {
        let big = i64::MAX / 2 + 1;
        let rows = vec![vec![big, 3], vec![3, big]];
        let fast = invariant_factors(2, 2, rows.clone());
        let s = check(&IntMatrix::from_rows(&rows));
        assert_eq!(fast, s.diagonal());
    }

    proptest! {
        #[test]
        fn transforms_reproduce_the_diagonal(
            rows in 1usize..5,
            cols in 1usize..5,
            seed in proptest::collection::vec(-6i64..7, 25),
        ) {
            let data: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 5 + j]).collect()).collect();
            let m = IntMatrix::from_rows(&data);
            let s = check(&m);
            prop_assert_eq!(invariant_factors(rows, cols, data), s.diagonal());
        }
    }
}
