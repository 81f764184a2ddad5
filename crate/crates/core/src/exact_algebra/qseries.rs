//! Truncated power series in q with Laurent-polynomial coefficients in z.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::SparsePoly;
use super::vars::Vars;
use super::Q;
use crate::error::{Error, Result};

/// `Σ_{k ≤ order} c_k(z) q^k`. Coefficients share one variable list, which is
/// either `["z"]` or empty for plain integer series.
#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    order: usize,
    coeffs: Vec<SparsePoly>,
}

/// Building blocks understood by [`qseries_expand`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QExpr {
    /// `1/(q;q)_∞`.
    InvPochhammer,
    /// `(q;q)_n`.
    Pochhammer(usize),
    /// `1/(q;q)_n`.
    InvPochhammerN(usize),
    /// `c · z^a q^b`.
    Monomial {
        coeff: i64,
        z: i32,
        q: usize,
    },
    Product(Vec<QExpr>),
}

pub fn qseries_expand(expr: &QExpr, order: usize) -> QSeries {
    let vars = Vars::new(["z"]);
    match expr {
        QExpr::InvPochhammer => QSeries::inv_pochhammer(&vars, order),
        QExpr::Pochhammer(n) => QSeries::pochhammer(&vars, *n, order),
        QExpr::InvPochhammerN(n) => QSeries::inv_pochhammer_n(&vars, *n, order),
        QExpr::Monomial { coeff, z, q } => QSeries::monomial(&vars, *coeff, *z, *q, order),
        QExpr::Product(fs) => fs.iter().fold(QSeries::one(&vars, order), |acc, f| acc.mul(&qseries_expand(f, order))),
    }
}

impl QSeries {
    pub fn zero(vars: &Vars, order: usize) -> Self {
        QSeries { order, coeffs: vec![SparsePoly::zero(vars); order + 1] }
    }

    pub fn one(vars: &Vars, order: usize) -> Self {
        let mut s = Self::zero(vars, order);
        s.coeffs[0] = SparsePoly::one(vars);
        s
    }

    /// `c · z^zexp · q^qexp` (dropped when beyond the order).
    pub fn monomial(vars: &Vars, c: i64, zexp: i32, qexp: usize, order: usize) -> Self {
        let mut s = Self::zero(vars, order);
        if qexp <= order {
            s.coeffs[qexp] = if vars.is_empty() {
                assert_eq!(zexp, 0, "z power in a plain series");
                SparsePoly::from_int(vars, c)
            } else {
                SparsePoly::monomial(vars, vec![zexp], Q::from_integer(c.into()))
            };
        }
        s
    }

    /// Builds from per-degree coefficients (extra entries are truncated).
    pub fn from_coeffs(vars: &Vars, coeffs: Vec<SparsePoly>, order: usize) -> Self {
        let mut s = Self::zero(vars, order);
        for (k, c) in coeffs.into_iter().enumerate().take(order + 1) {
            c.check_vars(&s.coeffs[k]).expect("coefficient variables");
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[SparsePoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &SparsePoly {
        &self.coeffs[k]
    }

    pub fn vars(&self) -> &Vars {
        self.coeffs[0].vars()
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let order = self.order.min(other.order);
        QSeries { order, coeffs: (0..=order).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect() }
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        let order = self.order.min(other.order);
        QSeries { order, coeffs: (0..=order).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect() }
    }

    pub fn mul(&self, other: &QSeries) -> QSeries {
        let order = self.order.min(other.order);
        let mut out = Self::zero(self.vars(), order);
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                out.coeffs[i + j] = &out.coeffs[i + j] + &(&self.coeffs[i] * &other.coeffs[j]);
            }
        }
        out
    }

    /// Multiplies by `q^k`, keeping the order.
    pub fn shift(&self, k: usize) -> QSeries {
        let mut out = Self::zero(self.vars(), self.order);
        for i in 0..=self.order {
            if i + k <= self.order {
                out.coeffs[i + k] = self.coeffs[i].clone();
            }
        }
        out
    }

    pub fn truncate(&self, order: usize) -> QSeries {
        assert!(order <= self.order, "cannot extend a truncated series");
        QSeries { order, coeffs: self.coeffs[..=order].to_vec() }
    }

    /// `(q;q)_n = ∏_{k=1}^n (1 − q^k)`.
    pub fn pochhammer(vars: &Vars, n: usize, order: usize) -> QSeries {
        let mut acc = Self::one(vars, order);
        for k in 1..=n {
            acc = acc.mul(&Self::one(vars, order).sub(&Self::monomial(vars, 1, 0, k, order)));
        }
        acc
    }

    /// `1/(q;q)_n` as a product of geometric series.
    pub fn inv_pochhammer_n(vars: &Vars, n: usize, order: usize) -> QSeries {
        let mut acc = Self::one(vars, order);
        for k in 1..=n {
            acc = acc.mul(&Self::geometric(vars, k, order));
        }
        acc
    }

    /// `1/(1 − q^k)`.
    pub fn geometric(vars: &Vars, k: usize, order: usize) -> QSeries {
        assert!(k >= 1);
        let mut s = Self::zero(vars, order);
        let mut i = 0;
        while i <= order {
            s.coeffs[i] = SparsePoly::one(vars);
            i += k;
        }
        s
    }

    /// `1/(q;q)_∞` truncated: only factors with `k ≤ order` contribute.
    pub fn inv_pochhammer(vars: &Vars, order: usize) -> QSeries {
        Self::inv_pochhammer_n(vars, order, order)
    }

    /// Substitutes `z = 1`, giving a plain series.
    pub fn at_z_one(&self) -> QSeries {
        let plain = Vars::new(Vec::<String>::new());
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let total: Q = c.terms().map(|(_, v)| v.clone()).sum();
                SparsePoly::constant(&plain, total)
            })
            .collect();
        QSeries { order: self.order, coeffs }
    }

    /// Integer coefficients of a plain series (or of `z = 1`).
    pub fn integer_coeffs(&self) -> Result<Vec<BigInt>> {
        self.at_z_one()
            .coeffs
            .iter()
            .map(|c| {
                let v = c.constant_value().unwrap_or_else(Q::zero);
                if v.is_integer() {
                    Ok(v.to_integer())
                } else {
                    Err(Error::Parse(format!("non-integer series coefficient {v}")))
                }
            })
            .collect()
    }

    /// First degree where the two series differ (up to the smaller order).
    pub fn first_mismatch(&self, other: &QSeries) -> Option<usize> {
        let order = self.order.min(other.order);
        (0..=order).find(|&k| self.coeffs[k] != other.coeffs[k])
    }

    pub fn is_one_at_zero(&self) -> bool {
        self.coeffs[0].is_one()
    }

    pub fn zero_coeff_is(&self, c: &SparsePoly) -> bool {
        &self.coeffs[0] == c
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*q")?,
                _ => write!(f, "({c})*q^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order + 1)
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &QSeries) -> Vec<i64> {
        s.integer_coeffs().unwrap().iter().map(|b| i64::try_from(b).unwrap()).collect()
    }

    // Partition counts by the pentagonal recurrence, independent of any product expansion.
    fn partition_counts(n: usize) -> Vec<i64> {
        let mut p = vec![0i64; n + 1];
        p[0] = 1;
        for m in 1..=n {
            let mut k: i64 = 1;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > m {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                p[m] += sign * p[m - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= m {
                    p[m] += sign * p[m - g2];
                }
                k += 1;
            }
        }
        p
    }

    #[test]
    fn inverse_pochhammer_counts_partitions() {
        assert_eq!(ints(&qseries_expand(&QExpr::InvPochhammer, 4)), vec![1, 1, 2, 3, 5]);
        assert_eq!(ints(&qseries_expand(&QExpr::InvPochhammer, 40)), partition_counts(40));
    }

    #[test]
    fn finite_pochhammers() {
        assert_eq!(ints(&qseries_expand(&QExpr::Pochhammer(2), 5)), vec![1, -1, -1, 1, 0, 0]);
        assert_eq!(ints(&qseries_expand(&QExpr::InvPochhammerN(1), 3)), vec![1, 1, 1, 1]);
        let id = qseries_expand(&QExpr::Product(vec![QExpr::Pochhammer(3), QExpr::InvPochhammerN(3)]), 8);
        assert_eq!(ints(&id), vec![1, 0, 0, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn orders_combine_by_minimum() {
        let v = Vars::new(["z"]);
        let a = QSeries::geometric(&v, 1, 5);
        let b = QSeries::geometric(&v, 2, 3);
        assert_eq!(a.mul(&b).order(), 3);
        assert_eq!(a.add(&b).order(), 3);
    }
}
