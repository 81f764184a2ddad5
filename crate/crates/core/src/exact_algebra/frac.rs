//! Fractions whose denominators are kept as products of known factors.
//!
//! Operator normal forms only ever divide by binomials such as
//! `p^a z_i − p^b z_j`. Tracking those factors explicitly makes common
//! denominators an lcm of exponent maps and reduces cancellation to trial
//! division, with no multivariate gcd on the hot path.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use super::poly::SparsePoly;
use super::ratfunc::RatFunc;
use super::vars::Vars;
use super::Q;
use crate::error::Result;

/// `num / ∏ f^e` with every `f` normalized (integer-primitive, positive
/// leading coefficient, no monomial factor, nonconstant).
#[derive(Clone)]
pub struct FactoredFrac {
    num: SparsePoly,
    den: BTreeMap<SparsePoly, u32>,
}

impl FactoredFrac {
    pub fn zero(vars: &Vars) -> Self {
        FactoredFrac { num: SparsePoly::zero(vars), den: BTreeMap::new() }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::from_poly(SparsePoly::one(vars))
    }

    pub fn from_poly(p: SparsePoly) -> Self {
        FactoredFrac { num: p, den: BTreeMap::new() }
    }

    /// `num / ∏ factors`; each factor is normalized and its scalar and
    /// monomial parts moved into the numerator.
    pub fn new(num: SparsePoly, factors: &[SparsePoly]) -> Self {
        let mut out = Self::from_poly(num);
        for f in factors {
            out.divide_by(f);
        }
        out.cancel();
        out
    }

    fn divide_by(&mut self, f: &SparsePoly) {
        assert!(!f.is_zero(), "division by zero factor");
        let (c, m, prim) = f.normalize_parts();
        let neg: Vec<i32> = m.iter().map(|x| -x).collect();
        self.num = self.num.mul_monomial(&neg, &c.recip());
        if !prim.is_constant() {
            *self.den.entry(prim).or_insert(0) += 1;
        }
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &SparsePoly {
        &self.num
    }

    pub fn factors(&self) -> &BTreeMap<SparsePoly, u32> {
        &self.den
    }

    pub fn denominator(&self) -> SparsePoly {
        let mut d = SparsePoly::one(self.vars());
        for (f, e) in &self.den {
            d = &d * &f.pow(*e);
        }
        d
    }

    fn cancel(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let keys: Vec<SparsePoly> = self.den.keys().cloned().collect();
        for f in keys {
            loop {
                let e = self.den[&f];
                if e == 0 {
                    self.den.remove(&f);
                    break;
                }
                match self.num.exact_div(&f) {
                    Ok(q) => {
                        self.num = q;
                        *self.den.get_mut(&f).unwrap() -= 1;
                    }
                    Err(_) => break,
                }
            }
        }
    }

    pub fn mul(&self, other: &FactoredFrac) -> FactoredFrac {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.vars());
        }
        let mut den = self.den.clone();
        for (f, e) in &other.den {
            *den.entry(f.clone()).or_insert(0) += e;
        }
        let mut out = FactoredFrac { num: &self.num * &other.num, den };
        out.cancel();
        out
    }

    pub fn mul_poly(&self, p: &SparsePoly) -> FactoredFrac {
        let mut out = FactoredFrac { num: &self.num * p, den: self.den.clone() };
        out.cancel();
        out
    }

    pub fn scale(&self, c: &Q) -> FactoredFrac {
        FactoredFrac {
            num: self.num.scale(c),
            den: if c == &Q::from_integer(0.into()) { BTreeMap::new() } else { self.den.clone() },
        }
    }

    pub fn neg(&self) -> FactoredFrac {
        FactoredFrac { num: -&self.num, den: self.den.clone() }
    }

    pub fn add(&self, other: &FactoredFrac) -> FactoredFrac {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let mut out = FactoredFrac { num: &self.num + &other.num, den: self.den.clone() };
            out.cancel();
            return out;
        }
        let mut lcm = self.den.clone();
        for (f, e) in &other.den {
            let slot = lcm.entry(f.clone()).or_insert(0);
            *slot = (*slot).max(*e);
        }
        let lift = |x: &FactoredFrac| {
            let mut n = x.num.clone();
            for (f, e) in &lcm {
                let have = x.den.get(f).copied().unwrap_or(0);
                if *e > have {
                    n = &n * &f.pow(e - have);
                }
            }
            n
        };
        let mut out = FactoredFrac { num: &lift(self) + &lift(other), den: lcm.clone() };
        out.cancel();
        out
    }

    pub fn sub(&self, other: &FactoredFrac) -> FactoredFrac {
        self.add(&other.neg())
    }

    /// Applies an exponent map to numerator and factors, renormalizing factors.
    pub fn map_exps<F: FnMut(&[i32]) -> Vec<i32>>(&self, mut f: F) -> FactoredFrac {
        let mut out = Self::from_poly(self.num.map_exps(&mut f));
        for (g, e) in &self.den {
            let g2 = g.map_exps(&mut f);
            for _ in 0..*e {
                out.divide_by(&g2);
            }
        }
        out.cancel();
        out
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> FactoredFrac {
        self.map_exps(|e| {
            let mut e2 = e.to_vec();
            e2.swap(i, j);
            e2
        })
    }

    /// `x_j ↦ x_j · x_by^k`.
    pub fn shift_var(&self, j: usize, by: usize, k: i32) -> FactoredFrac {
        self.map_exps(|e| {
            let mut e2 = e.to_vec();
            e2[by] += k * e[j];
            e2
        })
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        RatFunc::new(self.num.clone(), self.denominator()).expect("nonzero denominator")
    }

    /// Exact equality via cross multiplication.
    pub fn equals(&self, other: &FactoredFrac) -> bool {
        self.sub(other).is_zero()
    }

    pub fn eval_all(&self, point: &[Q]) -> Result<Q> {
        let mut d = Q::one();
        for (f, e) in &self.den {
            let v = f.eval_all(point)?;
            for _ in 0..*e {
                d *= &v;
            }
        }
        if d == Q::from_integer(0.into()) {
            return Err(crate::error::Error::DivisionByZero);
        }
        Ok(self.num.eval_all(point)? / d)
    }
}

impl fmt::Display for FactoredFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.num)?;
        for (g, e) in &self.den {
            if *e == 1 {
                write!(f, " / ({g})")?;
            } else {
                write!(f, " / ({g})^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FactoredFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FactoredFrac[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v() -> Vars {
        Vars::z_with(2, &["q"])
    }

    fn x(n: &str) -> SparsePoly {
        SparsePoly::var(&v(), n).unwrap()
    }

    #[test]
    fn sums_share_factors_and_cancel() {
        let d = &x("z1") - &x("z2");
        let a = FactoredFrac::new(x("z1"), std::slice::from_ref(&d));
        let b = FactoredFrac::new(-&x("z2"), std::slice::from_ref(&d));
        let s = a.add(&b);
        assert!(s.factors().is_empty());
        assert_eq!(s.numerator(), &SparsePoly::one(&v()));
    }

    #[test]
    fn agrees_with_ratfunc() {
        let d1 = &x("z1") - &x("z2");
        let d2 = &x("z1").scale_int(2) - &x("q");
        let a = FactoredFrac::new(x("q"), std::slice::from_ref(&d1));
        let b = FactoredFrac::new(x("z2"), &[d2.clone(), d1.clone()]);
        let s = a.add(&b).mul(&a);
        let ra = RatFunc::new(x("q"), d1.clone()).unwrap();
        let rb = RatFunc::new(x("z2"), &d2 * &d1).unwrap();
        assert_eq!(s.to_ratfunc(), &(&ra + &rb) * &ra);
        let swapped = s.swap_vars(0, 1);
        assert_eq!(swapped.to_ratfunc(), s.to_ratfunc().swap_vars(0, 1));
        let shifted = s.shift_var(0, 2, 1);
        assert_eq!(shifted.to_ratfunc(), s.to_ratfunc().shift_var(0, 2, 1));
    }
}
