//! Rational functions `num/den` over sparse Laurent polynomials.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::Zero;
use serde::Serialize;

use super::gcd::poly_gcd;
use super::poly::SparsePoly;
use super::vars::Vars;
use super::Q;
use crate::error::{Error, Result};

/// Term count above which arithmetic runs a full multivariate gcd.
pub const GCD_THRESHOLD: usize = 64;

/// A quotient of Laurent polynomials.
///
/// Always kept with integer coefficients on both sides, coprime contents, a
/// denominator without monomial factor and with positive leading
/// coefficient. Common polynomial factors are removed cheaply (exact trial
/// division) on every operation and by a full gcd once the operands exceed
/// [`GCD_THRESHOLD`] terms or when [`RatFunc::canonical`] is called.
#[derive(Clone, Serialize)]
pub struct RatFunc {
    num: SparsePoly,
    den: SparsePoly,
}

/// Arithmetic selector for [`ratfunc_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Mul,
    Div,
}

pub fn ratfunc_arith(a: &RatFunc, b: &RatFunc, op: RatOp) -> Result<RatFunc> {
    a.num.check_vars(&b.num)?;
    match op {
        RatOp::Add => Ok(a + b),
        RatOp::Mul => Ok(a * b),
        RatOp::Div => a.checked_div(b),
    }
}

impl RatFunc {
    pub fn zero(vars: &Vars) -> Self {
        RatFunc { num: SparsePoly::zero(vars), den: SparsePoly::one(vars) }
    }

    pub fn one(vars: &Vars) -> Self {
        RatFunc { num: SparsePoly::one(vars), den: SparsePoly::one(vars) }
    }

    pub fn constant(vars: &Vars, c: Q) -> Self {
        Self::from_poly(SparsePoly::constant(vars, c))
    }

    pub fn from_int(vars: &Vars, c: i64) -> Self {
        Self::from_poly(SparsePoly::from_int(vars, c))
    }

    pub fn var(vars: &Vars, name: &str) -> Result<Self> {
        Ok(Self::from_poly(SparsePoly::var(vars, name)?))
    }

    pub fn from_poly(p: SparsePoly) -> Self {
        let den = SparsePoly::one(p.vars());
        RatFunc::new_unchecked(p, den)
    }

    /// `num/den`, reduced. Errors on a zero denominator.
    pub fn new(num: SparsePoly, den: SparsePoly) -> Result<Self> {
        num.check_vars(&den)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::new_unchecked(num, den))
    }

    fn new_unchecked(num: SparsePoly, den: SparsePoly) -> Self {
        let mut r = RatFunc { num, den };
        r.reduce(false);
        r
    }

    pub fn num(&self) -> &SparsePoly {
        &self.num
    }

    pub fn den(&self) -> &SparsePoly {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// `Some(p)` when the denominator is 1.
    pub fn as_poly(&self) -> Option<&SparsePoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn constant_value(&self) -> Option<Q> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        Some(n / d)
    }

    /// Number of terms of numerator plus denominator.
    pub fn size(&self) -> usize {
        self.num.len() + self.den.len()
    }

    fn reduce(&mut self, full: bool) {
        if self.num.is_zero() {
            self.den = SparsePoly::one(self.num.vars());
            return;
        }
        // Monomials are units: move the denominator's monomial part up.
        let (cd, md, pd) = self.den.normalize_parts();
        let neg: Vec<i32> = md.iter().map(|x| -x).collect();
        let num = self.num.mul_monomial(&neg, &cd.recip());
        let (cn, pn) = num.primitive_integer();
        let (mut num, mut den) = (pn, pd);
        let mut c = cn;
        if !den.is_constant() {
            if let Ok(q) = num.exact_div(&den) {
                let (cq, pq) = q.primitive_integer();
                num = pq;
                c *= cq;
                den = SparsePoly::one(num.vars());
            } else if full || num.len() + den.len() > GCD_THRESHOLD {
                let g = poly_gcd(&num, &den);
                if !g.is_one() {
                    let (c1, n1) = num.exact_div(&g).expect("gcd divides").primitive_integer();
                    let (c2, d1) = den.exact_div(&g).expect("gcd divides").primitive_integer();
                    num = n1;
                    den = d1;
                    c = c * c1 / c2;
                }
            }
        }
        self.num = num.scale(&Q::from_integer(c.numer().clone()));
        self.den = den.scale(&Q::from_integer(c.denom().clone()));
    }

    /// Fully gcd-reduced form.
    pub fn canonical(&self) -> RatFunc {
        let mut r = self.clone();
        r.reduce(true);
        r
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::new_unchecked(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, b: &RatFunc) -> Result<RatFunc> {
        Ok(self * &b.inv()?)
    }

    pub fn scale(&self, c: &Q) -> RatFunc {
        Self::new_unchecked(self.num.scale(c), self.den.clone())
    }

    pub fn pow(&self, k: i32) -> Result<RatFunc> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let k = k.unsigned_abs();
        Ok(RatFunc { num: base.num.pow(k), den: base.den.pow(k) })
    }

    /// Applies the same exponent map to numerator and denominator.
    pub fn map_exps<F: FnMut(&[i32]) -> Vec<i32>>(&self, mut f: F) -> RatFunc {
        Self::new_unchecked(self.num.map_exps(&mut f), self.den.map_exps(&mut f))
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> RatFunc {
        Self::new_unchecked(self.num.swap_vars(i, j), self.den.swap_vars(i, j))
    }

    /// `x_j ↦ x_j · x_by^k` on both sides.
    pub fn shift_var(&self, j: usize, by: usize, k: i32) -> RatFunc {
        Self::new_unchecked(self.num.shift_var(j, by, k), self.den.shift_var(j, by, k))
    }

    /// Substitutes a rational function for one variable.
    pub fn substitute(&self, var: usize, value: &RatFunc) -> Result<RatFunc> {
        let n = subst_side(&self.num, var, value)?;
        let d = subst_side(&self.den, var, value)?;
        n.checked_div(&d)
    }

    /// Rational evaluation at a full point.
    pub fn eval_all(&self, point: &[Q]) -> Result<Q> {
        let d = self.den.eval_all(point)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval_all(point)? / d)
    }

    pub fn embed(&self, target: &Vars) -> Result<RatFunc> {
        Ok(Self::new_unchecked(self.num.embed(target)?, self.den.embed(target)?))
    }

    pub fn restrict(&self, target: &Vars) -> Result<RatFunc> {
        Ok(Self::new_unchecked(self.num.restrict(target)?, self.den.restrict(target)?))
    }
}

fn subst_side(p: &SparsePoly, var: usize, value: &RatFunc) -> Result<RatFunc> {
    // Horner over the exponent classes of `var`.
    let parts = p.collect_in(var);
    let mut acc = RatFunc::zero(p.vars());
    for (k, c) in parts {
        acc = &acc + &(&RatFunc::from_poly(c) * &value.pow(k)?);
    }
    Ok(acc)
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RatFunc {}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.canonical();
        if r.den.is_one() {
            return write!(f, "{}", r.num);
        }
        let wrap = |p: &SparsePoly| if p.len() > 1 { format!("({p})") } else { p.to_string() };
        write!(f, "{}/{}", wrap(&r.num), wrap(&r.den))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({} / {})", self.num, self.den)
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::new_unchecked(&self.num + &rhs.num, self.den.clone());
        }
        if rhs.den.is_constant() || self.den.is_constant() {
            return RatFunc::new_unchecked(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den);
        }
        // Use the lcm of the denominators when one divides the other.
        if let Ok(k) = rhs.den.exact_div(&self.den) {
            return RatFunc::new_unchecked(&(&self.num * &k) + &rhs.num, rhs.den.clone());
        }
        if let Ok(k) = self.den.exact_div(&rhs.den) {
            return RatFunc::new_unchecked(&self.num + &(&rhs.num * &k), self.den.clone());
        }
        RatFunc::new_unchecked(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &-rhs
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(self.vars());
        }
        // Cross-cancel when a denominator divides the other numerator.
        let (mut n1, mut d1) = (self.num.clone(), self.den.clone());
        let (mut n2, mut d2) = (rhs.num.clone(), rhs.den.clone());
        if !d2.is_constant() {
            if let Ok(k) = n1.exact_div(&d2) {
                n1 = k;
                d2 = SparsePoly::one(self.vars());
            }
        }
        if !d1.is_constant() {
            if let Ok(k) = n2.exact_div(&d1) {
                n2 = k;
                d1 = SparsePoly::one(self.vars());
            }
        }
        RatFunc::new_unchecked(&n1 * &n2, &d1 * &d2)
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

owned_ops!(RatFunc);

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn vars() -> Vars {
        Vars::z_with(2, &["q"])
    }

    fn p(name: &str) -> SparsePoly {
        SparsePoly::var(&vars(), name).unwrap()
    }

    fn b(i: &str, j: &str) -> RatFunc {
        let v = vars();
        let q = p("q");
        let qi = SparsePoly::var_pow(&v, "q", -1, Q::one()).unwrap();
        let num = -(&(&q * &p(i)) - &(&qi * &p(j)));
        RatFunc::new(num, &p(i) - &p(j)).unwrap()
    }

    #[test]
    fn b_sum_is_constant() {
        let v = vars();
        let s = ratfunc_arith(&b("z1", "z2"), &b("z2", "z1"), RatOp::Add).unwrap();
        let q = SparsePoly::var(&v, "q").unwrap();
        let qi = SparsePoly::var_pow(&v, "q", -1, Q::one()).unwrap();
        assert_eq!(s, RatFunc::from_poly(-(&q + &qi)));
        assert!(s.as_poly().is_some());
    }

    #[test]
    fn inverse_and_common_denominator() {
        let v = vars();
        let d = RatFunc::from_poly(&p("z1") - &p("z2"));
        let inv = RatFunc::one(&v).checked_div(&d).unwrap();
        assert!(ratfunc_arith(&inv, &d, RatOp::Mul).unwrap().is_one());
        let s = &RatFunc::var(&v, "z1").unwrap().inv().unwrap() + &RatFunc::var(&v, "z2").unwrap().inv().unwrap();
        assert_eq!(s, RatFunc::new(&p("z1") + &p("z2"), &p("z1") * &p("z2")).unwrap());
        assert_eq!(s.den(), &SparsePoly::one(&v));
        assert!(ratfunc_arith(&s, &RatFunc::zero(&v), RatOp::Div).is_err());
    }

    #[test]
    fn canonical_removes_hidden_common_factor() {
        let v = vars();
        let f = &(&p("z1") + &p("q")) * &(&p("z2") - &SparsePoly::from_int(&v, 1));
        let g = &(&p("z1") + &p("q")) * &(&p("z2") + &p("z1"));
        let r = RatFunc::new(f, g).unwrap().canonical();
        assert_eq!(r.num(), &(&p("z2") - &SparsePoly::from_int(&v, 1)));
        assert_eq!(r.den(), &(&p("z2") + &p("z1")));
    }
}
