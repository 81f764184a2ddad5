//! Laurent polynomials in `z1..zN` with coefficients in `ℤ[q^±1, p^±1]`,
//! and the operators acting on them.

use std::fmt;

use rand::Rng;

use super::ops::{apply_op, apply_word, big_y_word, hecke_vars, inverse_word, small_y_word, Op, OpSpace, Sign, YForm};
use crate::error::{Error, Result};
use crate::exact_algebra::{qi, RatFunc, SparsePoly, Vars};

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentVecPoly {
    n: usize,
    poly: SparsePoly,
}

impl LaurentVecPoly {
    /// Re-expresses `poly` over `z1..zN, q, p`; other variables are rejected.
    pub fn new(n: usize, poly: &SparsePoly) -> Result<Self> {
        let vars = hecke_vars(n);
        let poly = if poly.vars() == &vars { poly.clone() } else { poly.restrict(&vars)? };
        Ok(LaurentVecPoly { n, poly })
    }

    pub fn zero(n: usize) -> Self {
        LaurentVecPoly { n, poly: SparsePoly::zero(&hecke_vars(n)) }
    }

    pub fn one(n: usize) -> Self {
        LaurentVecPoly { n, poly: SparsePoly::one(&hecke_vars(n)) }
    }

    /// `c · z^e` with `e` of length `N`.
    pub fn monomial(n: usize, e: &[i32], c: i64) -> Self {
        assert_eq!(e.len(), n);
        let mut full = e.to_vec();
        full.extend([0, 0]);
        LaurentVecPoly { n, poly: SparsePoly::monomial(&hecke_vars(n), full, qi(c)) }
    }

    /// Random integer coefficients in `{−3..3}`, `z` exponents in `{−2..3}`.
    pub fn random<R: Rng>(n: usize, terms: usize, rng: &mut R) -> Self {
        let vars = hecke_vars(n);
        let mut poly = SparsePoly::zero(&vars);
        while poly.len() < terms {
            let mut e: Vec<i32> = (0..n).map(|_| rng.gen_range(-2..=3)).collect();
            e.extend([0, 0]);
            let c = loop {
                let c: i64 = rng.gen_range(-3..=3);
                if c != 0 {
                    break c;
                }
            };
            poly = &poly + &SparsePoly::monomial(&vars, e, qi(c));
        }
        LaurentVecPoly { n, poly }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn poly(&self) -> &SparsePoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn sub(&self, o: &Self) -> Self {
        LaurentVecPoly { n: self.n, poly: &self.poly - &o.poly }
    }

    pub fn mul_poly(&self, c: &SparsePoly) -> Self {
        LaurentVecPoly { n: self.n, poly: &self.poly * c }
    }

    /// True when no `z` variable occurs with a negative power.
    pub fn is_polynomial_in_z(&self) -> bool {
        self.poly.is_zero() || self.poly.min_exps()[..self.n].iter().all(|&e| e >= 0)
    }
}

impl OpSpace for LaurentVecPoly {
    fn nz(&self) -> usize {
        self.n
    }

    fn vars(&self) -> &Vars {
        self.poly.vars()
    }

    fn swap(&self, i: usize, j: usize) -> Self {
        LaurentVecPoly { n: self.n, poly: self.poly.swap_vars(i, j) }
    }

    fn shift(&self, j: usize, k: i32) -> Self {
        LaurentVecPoly { n: self.n, poly: self.poly.shift_var(j, self.n + 1, k) }
    }

    fn add(&self, o: &Self) -> Self {
        LaurentVecPoly { n: self.n, poly: &self.poly + &o.poly }
    }

    fn scale_poly(&self, c: &SparsePoly) -> Self {
        self.mul_poly(c)
    }

    fn mul_ratfunc(&self, c: &RatFunc) -> Result<Self> {
        let num = &self.poly * c.num();
        let poly = num
            .exact_div(c.den())
            .map_err(|_| Error::NonCancellingDenominator(format!("({}) / ({})", num, c.den())))?;
        Ok(LaurentVecPoly { n: self.n, poly })
    }

    fn divided(&self, i: usize, j: usize) -> Result<Self> {
        let vars = self.poly.vars().clone();
        let mut out = SparsePoly::zero(&vars);
        for (e, c) in self.poly.terms() {
            let (a, b) = (e[i], e[j]);
            if a == b {
                continue;
            }
            // (z_i^a z_j^b − z_i^b z_j^a)/(z_i − z_j) = ±(z_i z_j)^m Σ z_i^{d−1−k} z_j^k
            let (m, d, sign) = if a > b { (b, a - b, c.clone()) } else { (a, b - a, -c.clone()) };
            for k in 0..d {
                let mut e2 = e.clone();
                e2[i] = m + d - 1 - k;
                e2[j] = m + k;
                out = &out + &SparsePoly::monomial(&vars, e2, sign.clone());
            }
        }
        let diff = &self.poly - &self.poly.swap_vars(i, j);
        let mut lin = SparsePoly::var(&vars, &vars.names()[i])?;
        lin = &lin - &SparsePoly::var(&vars, &vars.names()[j])?;
        if &out * &lin != diff {
            return Err(Error::NonCancellingDenominator(format!("divided difference in z{} and z{}", i + 1, j + 1)));
        }
        Ok(LaurentVecPoly { n: self.n, poly: out })
    }
}

impl fmt::Display for LaurentVecPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

impl fmt::Debug for LaurentVecPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentVecPoly[N={}; {}]", self.n, self.poly)
    }
}

#[allow(non_snake_case)]
pub fn apply_K(j: usize, k: usize, f: &LaurentVecPoly) -> Result<LaurentVecPoly> {
    if j >= k {
        return Err(Error::IndexOutOfRange(format!("K_{{{j},{k}}} needs j < k")));
    }
    apply_op(&Op::K(j, k), f)
}

pub fn apply_shift(j: usize, f: &LaurentVecPoly) -> Result<LaurentVecPoly> {
    apply_op(&Op::Shift(j, 1), f)
}

/// `G_{j,j+1}^{±1} f`.
#[allow(non_snake_case)]
pub fn apply_G(j: usize, sign: Sign, f: &LaurentVecPoly) -> Result<LaurentVecPoly> {
    apply_op(&Op::G(j, j + 1, sign), f)
}

/// `g_{j,j+1}^{±1} f`.
pub fn apply_g(j: usize, sign: Sign, f: &LaurentVecPoly) -> Result<LaurentVecPoly> {
    apply_op(&Op::SmallG(j, j + 1, sign), f)
}

fn signed_word(word: Vec<Op>, sign: Sign) -> Result<Vec<Op>> {
    match sign {
        Sign::Plus => Ok(word),
        Sign::Minus => inverse_word(&word),
    }
}

/// `Y_j^{±1} f`; polynomials stay polynomials.
#[allow(non_snake_case)]
pub fn apply_Y(j: usize, sign: Sign, f: &LaurentVecPoly) -> Result<LaurentVecPoly> {
    let out = apply_word(&signed_word(big_y_word(j, f.n(), YForm::Adjacent)?, sign)?, f.clone())?;
    if f.is_polynomial_in_z() && !out.is_polynomial_in_z() {
        return Err(Error::NegativePowerFound(format!("Y_{j} on {f}")));
    }
    Ok(out)
}

/// `y_j^{±1} f`.
pub fn apply_y(j: usize, sign: Sign, f: &LaurentVecPoly) -> Result<LaurentVecPoly> {
    apply_word(&signed_word(small_y_word(j, f.n(), YForm::Adjacent)?, sign)?, f.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize, e: &[i32]) -> LaurentVecPoly {
        LaurentVecPoly::monomial(n, e, 1)
    }

    fn parse(n: usize, s: &str) -> LaurentVecPoly {
        let vars = hecke_vars(n);
        let mut acc = SparsePoly::zero(&vars);
        for (c, e, qe) in s.split(';').map(|t| {
            let v: Vec<i32> = t.split(',').map(|x| x.trim().parse().unwrap()).collect();
            (v[0], v[1..=n].to_vec(), v[n + 1])
        }) {
            let mut full = e;
            full.extend([qe, 0]);
            acc = &acc + &SparsePoly::monomial(&vars, full, qi(c as i64));
        }
        LaurentVecPoly::new(n, &acc).unwrap()
    }

    #[test]
    fn exchange_examples() {
        assert_eq!(apply_K(1, 2, &z(2, &[2, 1])).unwrap(), z(2, &[1, 2]));
        let s = z(2, &[1, 0]).add(&z(2, &[0, 1]));
        assert_eq!(apply_K(1, 2, &s).unwrap(), s);
        assert_eq!(apply_K(1, 3, &z(3, &[1, 1, 0])).unwrap(), z(3, &[0, 1, 1]));
        assert!(matches!(apply_K(2, 3, &z(2, &[1, 0])), Err(Error::IndexOutOfRange(_))));
    }

    #[test]
    fn shift_examples() {
        let vars = hecke_vars(1);
        let p3z3 = LaurentVecPoly::new(1, &SparsePoly::monomial(&vars, vec![3, 0, 3], qi(1))).unwrap();
        assert_eq!(apply_shift(1, &z(1, &[3])).unwrap(), p3z3);
        assert_eq!(apply_shift(2, &z(2, &[1, 0])).unwrap(), z(2, &[1, 0]));
        let inv = LaurentVecPoly::new(1, &SparsePoly::monomial(&vars, vec![-1, 0, -1], qi(1))).unwrap();
        assert_eq!(apply_shift(1, &z(1, &[-1])).unwrap(), inv);
    }

    #[test]
    fn g_examples() {
        // G12·1 = q
        assert_eq!(apply_G(1, Sign::Plus, &LaurentVecPoly::one(2)).unwrap(), parse(2, "1,0,0,1"));
        // G12 z1 = (q − q⁻¹) z1 + q z2, by hand from the defining formula
        assert_eq!(apply_G(1, Sign::Plus, &z(2, &[1, 0])).unwrap(), parse(2, "1,1,0,1;-1,1,0,-1;1,0,1,1"));
        let f = z(2, &[2, 1]);
        let d = apply_G(1, Sign::Plus, &f).unwrap().sub(&apply_G(1, Sign::Minus, &f).unwrap());
        assert_eq!(d, parse(2, "1,2,1,1;-1,2,1,-1"));
    }

    #[test]
    fn y_on_constants() {
        let one2 = LaurentVecPoly::one(2);
        assert_eq!(apply_Y(1, Sign::Plus, &one2).unwrap(), parse(2, "1,0,0,-1"));
        assert_eq!(apply_Y(2, Sign::Plus, &one2).unwrap(), parse(2, "1,0,0,1"));
        assert_eq!(apply_y(1, Sign::Plus, &one2).unwrap(), parse(2, "-1,0,0,1"));
        assert_eq!(apply_y(2, Sign::Plus, &one2).unwrap(), parse(2, "-1,0,0,-1"));
        let vars = hecke_vars(1);
        for m in [-2, 0, 3] {
            let want = LaurentVecPoly::new(1, &SparsePoly::monomial(&vars, vec![m, 0, m], qi(1))).unwrap();
            assert_eq!(apply_Y(1, Sign::Plus, &z(1, &[m])).unwrap(), want);
            assert_eq!(apply_y(1, Sign::Plus, &z(1, &[m])).unwrap(), want);
        }
    }

    #[test]
    fn inverses_undo() {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(7);
        let f = LaurentVecPoly::random(3, 4, &mut rng);
        for j in 1..=3 {
            let g = apply_Y(j, Sign::Plus, &f).unwrap();
            assert_eq!(apply_Y(j, Sign::Minus, &g).unwrap(), f);
            let h = apply_y(j, Sign::Minus, &f).unwrap();
            assert_eq!(apply_y(j, Sign::Plus, &h).unwrap(), f);
        }
    }

    #[test]
    fn divided_difference_is_exact_on_laurent_terms() {
        let f = parse(2, "2,-2,3,0;-1,1,-1,2");
        let d = f.divided(0, 1).unwrap();
        let lin = &SparsePoly::var(f.vars(), "z1").unwrap() - &SparsePoly::var(f.vars(), "z2").unwrap();
        assert_eq!(&d.poly * &lin, &f.poly - &f.poly.swap_vars(0, 1));
    }
}
