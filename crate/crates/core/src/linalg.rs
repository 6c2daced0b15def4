//! Exact integer and rational linear algebra.
//!
//! Everything here works over `BigInt` / `BigRational`; no floating point.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense integer matrix, row major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data = rows.iter().flat_map(|row| row.iter().cloned().map(Into::into)).collect();
        Ok(IntMatrix { rows: r, cols: c, data })
    }

    /// Convenience constructor for literals; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Self::from_rows(&v).expect("rectangular literal")
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
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

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn neg(&self) -> Self {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn pow(&self, e: u32) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("{}x{} times vector of length {}", self.rows, self.cols, v.len())));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Block diagonal sum.
    pub fn block_diag(&self, other: &Self) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// Copies `block` into `self` with its top-left corner at (r, c).
    pub fn set_block(&mut self, r: usize, c: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r + i, c + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| BigRational::from_integer(x.clone())).collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * k;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * k;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self.data[r * self.cols + j];
            self.data[r * self.cols + j] = v;
        }
    }

    fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let v = -&self.data[i * self.cols + c];
            self.data[i * self.cols + c] = v;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = a * &rhs[(k, j)];
                    out[(i, j)] += v;
                }
            }
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>())).finish()
    }
}

/// Dense matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }

    /// Returns the integer matrix when every entry is integral.
    pub fn to_integer(&self) -> Option<IntMatrix> {
        if self.data.iter().any(|x| !x.is_integer()) {
            return None;
        }
        Some(IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.to_integer()).collect() })
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = a * &rhs[(k, j)];
                    out[(i, j)] += v;
                }
            }
        }
        out
    }
}

/// `u * m * w == d` with `u`, `w` unimodular and `d` diagonal with
/// nonnegative entries forming a divisibility chain.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IntMatrix,
    /// Inverse of `u`, tracked alongside it.
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub w: IntMatrix,
}

impl SnfResult {
    /// Diagonal entries d_1 | d_2 | ... (length min(rows, cols)).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Smith normal form with transforms.
///
/// Pivot: smallest nonzero absolute value in the active block, ties broken
/// by smallest column then smallest row.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut w = IntMatrix::identity(cols);

    // Row op "row[dst] += k row[src]" on a and u corresponds to
    // "col[src] -= k col[dst]" on u_inv.
    let row_op = |a: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, dst: usize, src: usize, k: &BigInt| {
        a.add_row_multiple(dst, src, k);
        u.add_row_multiple(dst, src, k);
        u_inv.add_col_multiple(src, dst, &-k);
    };

    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for j in t..cols {
                for i in t..rows {
                    let v = &a[(i, j)];
                    if v.is_zero() {
                        continue;
                    }
                    match best {
                        None => best = Some((i, j)),
                        Some((bi, bj)) if v.abs() < a[(bi, bj)].abs() => best = Some((i, j)),
                        _ => {}
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return SnfResult { u, u_inv, d: a, w };
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
            a.swap_cols(t, pj);
            w.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let k = -(&a[(i, t)] / &a[(t, t)]);
                row_op(&mut a, &mut u, &mut u_inv, i, t, &k);
                if !a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let k = -(&a[(t, j)] / &a[(t, t)]);
                a.add_col_multiple(j, t, &k);
                w.add_col_multiple(j, t, &k);
                if !a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }

            let pivot = a[(t, t)].clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => row_op(&mut a, &mut u, &mut u_inv, t, i, &BigInt::one()),
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
    }
    SnfResult { u, u_inv, d: a, w }
}

/// Exact determinant via fraction-free (Bareiss) elimination.
pub fn det(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!("det of {}x{} matrix", m.rows(), m.cols())));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
        }
        prev = a[(k, k)].clone();
    }
    Ok(sign * &a[(n - 1, n - 1)])
}

/// Determinant of a rational matrix by Gaussian elimination.
pub fn det_rational(m: &RatMatrix) -> Result<BigRational> {
    if m.rows() != m.cols() {
        return Err(Error::DimensionMismatch(format!("det of {}x{} matrix", m.rows(), m.cols())));
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut acc = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
            return Ok(BigRational::zero());
        };
        if p != k {
            for j in 0..n {
                a.data.swap(k * n + j, p * n + j);
            }
            acc = -acc;
        }
        let pivot = a[(k, k)].clone();
        acc *= &pivot;
        for i in k + 1..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let f = &a[(i, k)] / &pivot;
            for j in k..n {
                let v = &f * &a[(k, j)];
                a[(i, j)] -= v;
            }
        }
    }
    Ok(acc)
}

/// Gauss-Jordan inverse over the rationals.
pub fn rational_inverse(m: &IntMatrix) -> Result<RatMatrix> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!("inverse of {}x{} matrix", m.rows(), m.cols())));
    }
    let n = m.rows();
    let mut a = m.to_rational();
    let mut inv = RatMatrix::identity(n);
    for k in 0..n {
        let p = (k..n).find(|&i| !a[(i, k)].is_zero()).ok_or(Error::SingularMatrix)?;
        if p != k {
            for j in 0..n {
                a.data.swap(k * n + j, p * n + j);
                inv.data.swap(k * n + j, p * n + j);
            }
        }
        let pivot = a[(k, k)].clone();
        for j in 0..n {
            a[(k, j)] = &a[(k, j)] / &pivot;
            inv[(k, j)] = &inv[(k, j)] / &pivot;
        }
        for i in 0..n {
            if i == k || a[(i, k)].is_zero() {
                continue;
            }
            let f = a[(i, k)].clone();
            for j in 0..n {
                let va = &f * &a[(k, j)];
                a[(i, j)] -= va;
                let vi = &f * &inv[(k, j)];
                inv[(i, j)] -= vi;
            }
        }
    }
    Ok(inv)
}

/// Integer solution of `m x = b`, decided through the Smith form.
pub fn solve_integer(m: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!("{}x{} system with rhs of length {}", m.rows(), m.cols(), b.len())));
    }
    // m = u^-1 d w^-1, so m x = b  <=>  d y = u b  with x = w y.
    let snf = smith_normal_form(m);
    let c = snf.u.mul_vec(b)?;
    let mut y = vec![BigInt::zero(); m.cols()];
    for (i, ci) in c.iter().enumerate() {
        let di = if i < m.cols() { snf.d[(i, i)].clone() } else { BigInt::zero() };
        if di.is_zero() {
            if !ci.is_zero() {
                return Ok(None);
            }
        } else if ci.is_multiple_of(&di) {
            y[i] = ci / &di;
        } else {
            return Ok(None);
        }
    }
    Ok(Some(snf.w.mul_vec(&y)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(m: &IntMatrix) -> Vec<i64> {
        let s = smith_normal_form(m);
        s.diagonal().iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    fn check_snf(m: &IntMatrix) {
        let s = smith_normal_form(m);
        assert_eq!(&(&s.u * m) * &s.w, s.d);
        assert_eq!(&s.u * &s.u_inv, IntMatrix::identity(m.rows()));
        assert_eq!(det(&s.u).unwrap().abs(), BigInt::one());
        assert_eq!(det(&s.w).unwrap().abs(), BigInt::one());
        let dg = s.diagonal();
        for w in dg.windows(2) {
            if !w[1].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]), "{:?}", dg);
            } else {
                assert!(w[1].is_zero());
            }
        }
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
    }

    #[test]
    fn snf_examples() {
        assert_eq!(diag(&IntMatrix::from_i64(&[&[0, 3], &[3, 0]])), vec![3, 3]);
        assert_eq!(diag(&IntMatrix::from_i64(&[&[1, 0], &[0, 1]])), vec![1, 1]);
        assert_eq!(diag(&IntMatrix::from_i64(&[&[2, 0], &[0, 4]])), vec![2, 4]);
        assert_eq!(diag(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]])), vec![1, 6]);
        assert_eq!(diag(&IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])), vec![2, 6, 12]);
    }

    #[test]
    fn snf_transforms_and_rectangular() {
        for m in [
            IntMatrix::from_i64(&[&[0, 3], &[3, 0]]),
            IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]),
            IntMatrix::from_i64(&[&[1, 2, 3], &[4, 5, 6]]),
            IntMatrix::from_i64(&[&[0, 0], &[0, 0], &[6, 4]]),
            IntMatrix::zeros(0, 3),
        ] {
            check_snf(&m);
        }
    }

    #[test]
    fn snf_is_deterministic() {
        let m = IntMatrix::from_i64(&[&[4, 6, 2], &[6, 9, 3], &[2, 3, 7]]);
        let a = smith_normal_form(&m);
        let b = smith_normal_form(&m);
        assert_eq!(a.u, b.u);
        assert_eq!(a.w, b.w);
    }

    #[test]
    fn determinants() {
        assert_eq!(det(&IntMatrix::from_i64(&[&[0, 3], &[3, 0]])).unwrap(), BigInt::from(-9));
        assert_eq!(det(&IntMatrix::zeros(0, 0)).unwrap(), BigInt::one());
        let l3 = IntMatrix::from_i64(&[&[-2, 1, -1, 0], &[1, -2, 1, -1], &[-1, 1, -2, 1], &[0, -1, 1, -2]]);
        assert_eq!(det(&l3).unwrap(), BigInt::from(4));
        assert!(det(&IntMatrix::zeros(2, 3)).is_err());
        assert_eq!(det(&IntMatrix::from_i64(&[&[0, 1], &[0, 2]])).unwrap(), BigInt::zero());
    }

    #[test]
    fn inverses() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let inv = rational_inverse(&IntMatrix::from_i64(&[&[0, 3], &[3, 0]])).unwrap();
        assert_eq!(inv.to_rows(), vec![vec![r(0, 1), r(1, 3)], vec![r(1, 3), r(0, 1)]]);
        assert_eq!(rational_inverse(&IntMatrix::identity(3)).unwrap(), RatMatrix::identity(3));
        let inv = rational_inverse(&IntMatrix::from_i64(&[&[2, 1], &[1, 2]])).unwrap();
        assert_eq!(inv.to_rows(), vec![vec![r(2, 3), r(-1, 3)], vec![r(-1, 3), r(2, 3)]]);
        assert_eq!(rational_inverse(&IntMatrix::from_i64(&[&[1, 2], &[2, 4]])), Err(Error::SingularMatrix));
    }

    #[test]
    fn integer_solutions() {
        let v = |xs: &[i64]| xs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let d23 = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        assert_eq!(solve_integer(&d23, &v(&[4, 3])).unwrap(), Some(v(&[2, 1])));
        assert_eq!(solve_integer(&d23, &v(&[1, 0])).unwrap(), None);
        let m = IntMatrix::from_i64(&[&[1, 1], &[0, 2]]);
        assert_eq!(solve_integer(&m, &v(&[3, 4])).unwrap(), Some(v(&[1, 2])));
        assert!(solve_integer(&m, &v(&[1])).is_err());
        // rank-deficient but consistent
        let m = IntMatrix::from_i64(&[&[2, 4], &[1, 2]]);
        let x = solve_integer(&m, &v(&[6, 3])).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), v(&[6, 3]));
        assert_eq!(solve_integer(&m, &v(&[6, 4])).unwrap(), None);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix(max: usize) -> impl Strategy<Value = IntMatrix> {
            (1..=max, 1..=max).prop_flat_map(|(r, c)| {
                proptest::collection::vec(-6i64..=6, r * c).prop_map(move |xs| {
                    let rows: Vec<Vec<i64>> = xs.chunks(c).map(|ch| ch.to_vec()).collect();
                    IntMatrix::from_rows(&rows).unwrap()
                })
            })
        }

        proptest! {
            #[test]
            fn snf_remultiplies(m in small_matrix(5)) {
                check_snf(&m);
            }

            #[test]
            fn det_is_product_of_invariant_factors(m in small_matrix(4).prop_filter("square", |m| m.is_square())) {
                let s = smith_normal_form(&m);
                let prod: BigInt = s.diagonal().iter().product();
                prop_assert_eq!(det(&m).unwrap().abs(), prod);
            }

            #[test]
            fn inverse_is_exact(m in small_matrix(4).prop_filter("square", |m| m.is_square())) {
                if !det(&m).unwrap().is_zero() {
                    let inv = rational_inverse(&m).unwrap();
                    prop_assert_eq!(&inv * &m.to_rational(), RatMatrix::identity(m.rows()));
                    prop_assert_eq!(det_rational(&m.to_rational()).unwrap(), BigRational::from_integer(det(&m).unwrap()));
                }
            }
        }
    }
}
