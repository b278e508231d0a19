//! Exact rank over `Q` and `Z/2`, and Smith normal form over `Z`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense row-major matrix with explicit shape, so empty matrices keep
/// their column count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<T>>,
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![vec![T::zero(); cols]; rows] }
    }
}

impl<T> Matrix<T> {
    pub fn from_rows(cols: usize, data: Vec<Vec<T>>) -> Self {
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { rows: data.len(), cols, data }
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = T::one();
        }
        m
    }
}

impl Matrix<BigInt> {
    pub fn mul(&self, other: &Matrix<BigInt>) -> Matrix<BigInt> {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i][j] += a * &other.data[k][j];
                }
            }
        }
        out
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "square matrix expected");
        let n = self.rows;
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            return BigInt::one();
        }
        sign * &a[n - 1][n - 1]
    }
}

pub fn rank_rational(m: &Matrix<BigRational>) -> usize {
    let mut a = m.data.clone();
    let mut rank = 0;
    for col in 0..m.cols {
        let Some(p) = (rank..m.rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][col].clone();
        let support: Vec<(usize, BigRational)> =
            (col..m.cols).filter(|&j| !a[rank][j].is_zero()).map(|j| (j, a[rank][j].clone())).collect();
        for i in rank + 1..m.rows {
            if a[i][col].is_zero() {
                continue;
            }
            let f = &a[i][col] / &pivot;
            for (j, x) in &support {
                a[i][*j] -= &f * x;
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank_mod2(m: &Matrix<bool>) -> usize {
    let mut a = m.data.clone();
    let mut rank = 0;
    for col in 0..m.cols {
        let Some(p) = (rank..m.rows).find(|&i| a[i][col]) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank].clone();
        for row in a.iter_mut().skip(rank + 1) {
            if row[col] {
                for (x, y) in row.iter_mut().zip(&pivot).skip(col) {
                    *x ^= *y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `u · m · v = d`, with `d` diagonal, nonnegative, and each diagonal
/// entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub d: Matrix<BigInt>,
    pub u: Matrix<BigInt>,
    pub v: Matrix<BigInt>,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.data[i][i].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|x| !x.is_zero() && !x.is_one()).collect()
    }
}

struct Work {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in self.a.iter_mut().chain(self.v.iter_mut()) {
            r.swap(i, j);
        }
    }

    /// row_i += q · row_j
    fn add_row(&mut self, i: usize, j: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.u] {
            let src = m[j].clone();
            for (x, y) in m[i].iter_mut().zip(&src) {
                *x += q * y;
            }
        }
    }

    /// col_i += q · col_j
    fn add_col(&mut self, i: usize, j: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.v] {
            for r in m.iter_mut() {
                let y = r[j].clone();
                r[i] += q * y;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.u] {
            for x in m[i].iter_mut() {
                *x = -&*x;
            }
        }
    }
}

pub fn smith_normal_form(m: &Matrix<BigInt>) -> Snf {
    let (rows, cols) = (m.rows, m.cols);
    let mut w = Work {
        a: m.data.clone(),
        u: Matrix::<BigInt>::identity(rows).data,
        v: Matrix::<BigInt>::identity(cols).data,
    };
    for t in 0..rows.min(cols) {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !w.a[i][j].is_zero())
                .min_by_key(|&(i, j)| w.a[i][j].abs());
            let Some((pi, pj)) = pivot else {
                break;
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let mut clean = true;
            for i in t + 1..rows {
                let q = w.a[i][t].div_floor(&w.a[t][t]);
                if !q.is_zero() {
                    w.add_row(i, t, &-q);
                }
                clean &= w.a[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = w.a[t][j].div_floor(&w.a[t][t]);
                if !q.is_zero() {
                    w.add_col(j, t, &-q);
                }
                clean &= w.a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !w.a[i][j].is_multiple_of(&w.a[t][t])));
            match bad {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
    }
    Snf {
        d: Matrix { rows, cols, data: w.a },
        u: Matrix { rows, cols: rows, data: w.u },
        v: Matrix { rows: cols, cols, data: w.v },
    }
}
