//! Dense matrices over any of the exact rings.

use std::fmt;

use num_traits::{One, Zero};

use super::poly::SparsePoly;
use super::ratfunc::RatFunc;
use super::Q;
use crate::error::{Error, Result};

/// The ring operations matrices need. `zero_like`/`one_like` build constants
/// over the same variables as `self`.
pub trait RingElem: Clone + PartialEq + fmt::Display {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl RingElem for Q {
    fn zero_like(&self) -> Self {
        Q::zero()
    }
    fn one_like(&self) -> Self {
        Q::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl RingElem for SparsePoly {
    fn zero_like(&self) -> Self {
        SparsePoly::zero(self.vars())
    }
    fn one_like(&self) -> Self {
        SparsePoly::one(self.vars())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        SparsePoly::is_zero(self)
    }
}

impl RingElem for RatFunc {
    fn zero_like(&self) -> Self {
        RatFunc::zero(self.vars())
    }
    fn one_like(&self) -> Self {
        RatFunc::one(self.vars())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
}

/// Row-major dense matrix. Columns are images of basis vectors.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: RingElem> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize, like: &T) -> Self {
        let z = like.zero_like();
        Self::from_fn(rows, cols, |_, _| z.clone())
    }

    pub fn identity(n: usize, like: &T) -> Self {
        let z = like.zero_like();
        let o = like.one_like();
        Self::from_fn(n, n, |i, j| if i == j { o.clone() } else { z.clone() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn map<U: RingElem>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix shapes");
        let z = self.data[0].zero_like();
        let mut out = Self::from_fn(self.rows, o.cols, |_, _| z.clone());
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    /// Kronecker product `self ⊗ o`.
    pub fn kron(&self, o: &Self) -> Self {
        Self::from_fn(self.rows * o.rows, self.cols * o.cols, |i, j| {
            self.get(i / o.rows, j / o.cols).mul(o.get(i % o.rows, j % o.cols))
        })
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = v[0].zero_like();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.add(&a.mul(x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// First entry where the matrices differ.
    pub fn first_difference(&self, o: &Self) -> Option<(usize, usize)> {
        (0..self.rows).flat_map(|i| (0..self.cols).map(move |j| (i, j))).find(|&(i, j)| self.get(i, j) != o.get(i, j))
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }
}

impl Matrix<RatFunc> {
    /// Gauss-Jordan inverse over a field of rational functions.
    pub fn inverse(&self) -> Result<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let like = self.data[0].clone();
        let mut a = self.clone();
        let mut inv = Self::identity(n, &like);
        for c in 0..n {
            let piv = (c..n).find(|&r| !a.get(r, c).is_zero()).ok_or(Error::DivisionByZero)?;
            if piv != c {
                for j in 0..n {
                    a.data.swap(piv * n + j, c * n + j);
                    inv.data.swap(piv * n + j, c * n + j);
                }
            }
            let p = a.get(c, c).inv()?;
            for j in 0..n {
                a.data[c * n + j] = (&a.data[c * n + j] * &p).canonical();
                inv.data[c * n + j] = (&inv.data[c * n + j] * &p).canonical();
            }
            for r in 0..n {
                if r == c || a.get(r, c).is_zero() {
                    continue;
                }
                let f = a.get(r, c).clone();
                for j in 0..n {
                    let x = (&a.data[r * n + j] - &(&f * &a.data[c * n + j])).canonical();
                    a.data[r * n + j] = x;
                    let y = (&inv.data[r * n + j] - &(&f * &inv.data[c * n + j])).canonical();
                    inv.data[r * n + j] = y;
                }
            }
        }
        Ok(inv)
    }

    pub fn canonical(&self) -> Self {
        self.map(|x| x.canonical())
    }
}

impl Matrix<Q> {
    /// Rank by Gaussian elimination over the rationals.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let (m, n) = (a.rows, a.cols);
        let mut r = 0;
        for c in 0..n {
            let Some(piv) = (r..m).find(|&i| !Zero::is_zero(a.get(i, c))) else { continue };
            if piv != r {
                for j in 0..n {
                    a.data.swap(piv * n + j, r * n + j);
                }
            }
            let p = a.get(r, c).clone();
            for i in r + 1..m {
                let f = a.get(i, c) / &p;
                if Zero::is_zero(&f) {
                    continue;
                }
                for j in c..n {
                    let v = &a.data[i * n + j] - &(&f * &a.data[r * n + j]);
                    a.data[i * n + j] = v;
                }
            }
            r += 1;
            if r == m {
                break;
            }
        }
        r
    }
}

impl<T: RingElem> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<T: RingElem> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{}\n{self}", self.rows, self.cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::Vars;

    fn qi(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = Matrix::identity(2, &qi(0));
        assert_eq!(i2.kron(&i2), Matrix::identity(4, &qi(0)));
    }

    #[test]
    fn rank_of_singular_matrix() {
        let m = Matrix::from_fn(3, 3, |i, j| qi((i * 3 + j) as i64));
        assert_eq!(m.rank(), 2);
        assert_eq!(Matrix::identity(4, &qi(0)).rank(), 4);
    }

    #[test]
    fn rational_inverse() {
        let v = Vars::new(["x"]);
        let x = RatFunc::var(&v, "x").unwrap();
        let one = RatFunc::one(&v);
        let m = Matrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => x.clone(),
            (0, 1) => one.clone(),
            (1, 0) => one.clone(),
            _ => RatFunc::zero(&v),
        });
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2, &one));
    }
}
