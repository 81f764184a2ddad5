//! Sparse multivariate Laurent polynomials over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::vars::Vars;
use super::Q;
use crate::error::{Error, Result};

/// Exponent vector; entries may be negative.
pub type Exp = Vec<i32>;

/// A Laurent polynomial `Σ c_e x^e` with nonzero rational coefficients.
///
/// Terms are kept in a `BTreeMap`, so iteration is ascending lexicographic in
/// the exponent vectors. The *leading* term is the lexicographically largest
/// one and serialized/displayed output lists terms leading-first.
#[derive(Clone, PartialEq, Eq)]
pub struct SparsePoly {
    vars: Vars,
    terms: BTreeMap<Exp, Q>,
}

/// Arithmetic selector for [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
    ExactDiv,
}

/// Checked binary arithmetic on two polynomials over the same variables.
pub fn poly_arith(a: &SparsePoly, b: &SparsePoly, op: PolyOp) -> Result<SparsePoly> {
    a.check_vars(b)?;
    match op {
        PolyOp::Add => Ok(a + b),
        PolyOp::Mul => Ok(a * b),
        PolyOp::ExactDiv => a.exact_div(b),
    }
}

impl SparsePoly {
    pub fn zero(vars: &Vars) -> Self {
        SparsePoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Q::one())
    }

    pub fn constant(vars: &Vars, c: Q) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn from_int(vars: &Vars, c: i64) -> Self {
        Self::constant(vars, Q::from_integer(c.into()))
    }

    /// The variable `name` to the first power.
    pub fn var(vars: &Vars, name: &str) -> Result<Self> {
        let i = vars.require(name)?;
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Ok(Self::monomial(vars, e, Q::one()))
    }

    /// `c · name^k`, `k` may be negative.
    pub fn var_pow(vars: &Vars, name: &str, k: i32, c: Q) -> Result<Self> {
        let i = vars.require(name)?;
        let mut e = vec![0; vars.len()];
        e[i] = k;
        Ok(Self::monomial(vars, e, c))
    }

    pub fn monomial(vars: &Vars, exp: Exp, c: Q) -> Self {
        assert_eq!(exp.len(), vars.len(), "exponent length must match variable count");
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I>(vars: &Vars, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exp, Q)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent length must match variable count");
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|(e, c)| e.iter().all(|&x| x == 0) && c.is_one())
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exp, &Q)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Exp, Q> {
        self.terms
    }

    pub fn coeff(&self, e: &[i32]) -> Q {
        self.terms.get(e).cloned().unwrap_or_else(Q::zero)
    }

    /// True when the polynomial is a constant (possibly zero).
    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&x| x == 0))
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.is_zero() {
            return Some(Q::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Lexicographically largest term.
    pub fn leading(&self) -> Option<(&Exp, &Q)> {
        self.terms.iter().next_back()
    }

    /// True when no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    pub fn check_vars(&self, other: &SparsePoly) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VariableMismatch { left: self.vars.names().to_vec(), right: other.vars.names().to_vec() })
        }
    }

    pub(crate) fn add_term(&mut self, e: Exp, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn add_term_ref(&mut self, e: &[i32], c: &Q) {
        if let Some(v) = self.terms.get_mut(e) {
            *v += c;
            if v.is_zero() {
                self.terms.remove(e);
            }
        } else if !c.is_zero() {
            self.terms.insert(e.to_vec(), c.clone());
        }
    }

    pub fn scale(&self, c: &Q) -> SparsePoly {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        SparsePoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn scale_int(&self, c: i64) -> SparsePoly {
        self.scale(&Q::from_integer(c.into()))
    }

    /// Multiplies by `c · x^shift`.
    pub fn mul_monomial(&self, shift: &[i32], c: &Q) -> SparsePoly {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        SparsePoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> SparsePoly {
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Entrywise minimum exponent over all terms (zero vector for the zero polynomial).
    pub fn min_exps(&self) -> Exp {
        let n = self.nvars();
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return vec![0; n] };
        let mut m = first.clone();
        for e in it {
            for (a, b) in m.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
        }
        m
    }

    pub fn max_exps(&self) -> Exp {
        let n = self.nvars();
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return vec![0; n] };
        let mut m = first.clone();
        for e in it {
            for (a, b) in m.iter_mut().zip(e) {
                *a = (*a).max(*b);
            }
        }
        m
    }

    pub fn degree_in(&self, var: usize) -> Option<i32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// Total degree of every term when homogeneous in the given variables.
    pub fn homogeneous_degree(&self, var_idx: &[usize]) -> Option<i32> {
        let mut deg = None;
        for e in self.terms.keys() {
            let d: i32 = var_idx.iter().map(|&i| e[i]).sum();
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// Applies `f` to every exponent vector (must be injective on the support
    /// or colliding terms are summed).
    pub fn map_exps<F: FnMut(&[i32]) -> Exp>(&self, mut f: F) -> SparsePoly {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            out.add_term(f(e), c.clone());
        }
        out
    }

    /// Substitutes `x_j ↦ x_j · x_by^k`, i.e. the scale operator when `x_by` is a
    /// formal parameter.
    pub fn shift_var(&self, j: usize, by: usize, k: i32) -> SparsePoly {
        self.map_exps(|e| {
            let mut e2 = e.to_vec();
            e2[by] += k * e[j];
            e2
        })
    }

    /// Exchanges the variables at positions `i` and `j`.
    pub fn swap_vars(&self, i: usize, j: usize) -> SparsePoly {
        self.map_exps(|e| {
            let mut e2 = e.to_vec();
            e2.swap(i, j);
            e2
        })
    }

    /// `f(x) ↦ f(x_{σ(0)}, …, x_{σ(n-1)})` restricted to the leading `σ.len()` variables.
    pub fn permute_vars(&self, sigma: &[usize]) -> SparsePoly {
        self.map_exps(|e| {
            let mut e2 = e.to_vec();
            // variable k is replaced by variable σ(k): its exponent moves to slot σ(k)
            for (k, &s) in sigma.iter().enumerate() {
                e2[s] = e[k];
            }
            e2
        })
    }

    /// Re-expresses the polynomial over a larger variable list (matched by name).
    pub fn embed(&self, target: &Vars) -> Result<SparsePoly> {
        if &self.vars == target {
            return Ok(self.clone());
        }
        let map: Vec<usize> = self.vars.names().iter().map(|n| target.require(n)).collect::<Result<_>>()?;
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; target.len()];
            for (k, &t) in map.iter().enumerate() {
                e2[t] = e[k];
            }
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }

    /// Drops variables that must not occur; errors if any of them does.
    pub fn restrict(&self, target: &Vars) -> Result<SparsePoly> {
        if &self.vars == target {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self.vars.names().iter().map(|n| target.index(n)).collect();
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; target.len()];
            for (k, t) in map.iter().enumerate() {
                match t {
                    Some(t) => e2[*t] = e[k],
                    None if e[k] != 0 => {
                        return Err(Error::UnknownVariable(self.vars.names()[k].clone()));
                    }
                    None => {}
                }
            }
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }

    /// Replaces variable `var` by `value` (over the same variables). Negative
    /// powers require `value` to be a monomial.
    pub fn substitute(&self, var: usize, value: &SparsePoly) -> Result<SparsePoly> {
        self.check_vars(value)?;
        let mut cache: BTreeMap<i32, SparsePoly> = BTreeMap::new();
        let inv = if value.is_monomial() {
            let (e, c) = value.leading().unwrap();
            Some(SparsePoly::monomial(&self.vars, e.iter().map(|x| -x).collect(), c.recip()))
        } else {
            None
        };
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let k = e[var];
            let pw = match cache.get(&k) {
                Some(p) => p.clone(),
                None => {
                    let p = if k >= 0 {
                        value.pow(k as u32)
                    } else {
                        let inv =
                            inv.as_ref().ok_or_else(|| Error::NonMonomialInverse(self.vars.names()[var].clone()))?;
                        inv.pow((-k) as u32)
                    };
                    cache.insert(k, p.clone());
                    p
                }
            };
            let mut rest = e.clone();
            rest[var] = 0;
            out = &out + &pw.mul_monomial(&rest, c);
        }
        Ok(out)
    }

    /// Evaluates variable `var` at a rational value (Laurent exponents require a nonzero value).
    pub fn eval_var(&self, var: usize, value: &Q) -> Result<SparsePoly> {
        if value.is_zero() && self.terms.keys().any(|e| e[var] < 0) {
            return Err(Error::DivisionByZero);
        }
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let k = e[var];
            let f = if k >= 0 { pow_q(value, k as u32) } else { pow_q(&value.recip(), (-k) as u32) };
            let mut e2 = e.clone();
            e2[var] = 0;
            out.add_term(e2, c * f);
        }
        Ok(out)
    }

    /// Coefficients with respect to one variable: exponent ↦ coefficient polynomial
    /// (the variable's exponent set to zero).
    pub fn collect_in(&self, var: usize) -> BTreeMap<i32, SparsePoly> {
        let mut out: BTreeMap<i32, SparsePoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[var] = 0;
            out.entry(e[var]).or_insert_with(|| SparsePoly::zero(&self.vars)).add_term(e2, c.clone());
        }
        out
    }

    /// Exact division in the Laurent polynomial ring.
    pub fn exact_div(&self, b: &SparsePoly) -> Result<SparsePoly> {
        self.check_vars(b)?;
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(&self.vars));
        }
        if b.is_monomial() {
            let (e, c) = b.leading().unwrap();
            let neg: Exp = e.iter().map(|x| -x).collect();
            return Ok(self.mul_monomial(&neg, &c.recip()));
        }
        // Normalize both sides to genuine polynomials with every variable's
        // minimum exponent at zero; the quotient of such is a polynomial.
        let sa = self.min_exps();
        let sb = b.min_exps();
        let neg = |v: &Exp| v.iter().map(|x| -x).collect::<Exp>();
        let a0 = self.mul_monomial(&neg(&sa), &Q::one());
        let b0 = b.mul_monomial(&neg(&sb), &Q::one());
        let (lb_e, lb_c) = b0.leading().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let lb_inv = lb_c.recip();
        let mut r = a0.terms;
        let mut quot = BTreeMap::new();
        let mut scratch = vec![0i32; self.nvars()];
        while let Some((e, c)) = r.iter().next_back() {
            let mut d = Vec::with_capacity(e.len());
            for (x, y) in e.iter().zip(&lb_e) {
                let v = x - y;
                if v < 0 {
                    return Err(Error::NonExactDivision(format!("{} / {}", self, b)));
                }
                d.push(v);
            }
            let qc = c * &lb_inv;
            for (be, bc) in &b0.terms {
                for (s, (x, y)) in scratch.iter_mut().zip(be.iter().zip(&d)) {
                    *s = x + y;
                }
                let delta = -(bc * &qc);
                if let Some(v) = r.get_mut(scratch.as_slice()) {
                    *v += &delta;
                    if v.is_zero() {
                        r.remove(scratch.as_slice());
                    }
                } else {
                    r.insert(scratch.clone(), delta);
                }
            }
            quot.insert(d, qc);
        }
        let shift: Exp = sa.iter().zip(&sb).map(|(a, b)| a - b).collect();
        Ok(SparsePoly { vars: self.vars.clone(), terms: quot }.mul_monomial(&shift, &Q::one()))
    }

    /// `(self, rest)` split where `self = c · x^m · prim` with `prim` an integer
    /// polynomial without monomial factor, coprime integer coefficients and
    /// positive leading coefficient. Returns `(c, m, prim)`.
    pub fn normalize_parts(&self) -> (Q, Exp, SparsePoly) {
        if self.is_zero() {
            return (Q::zero(), vec![0; self.nvars()], self.clone());
        }
        let m = self.min_exps();
        let neg: Exp = m.iter().map(|x| -x).collect();
        let shifted = self.mul_monomial(&neg, &Q::one());
        let (c, prim) = shifted.primitive_integer();
        (c, m, prim)
    }

    /// Splits off the rational content: `self = c · prim` with `prim` having
    /// coprime integer coefficients and positive leading coefficient.
    pub fn primitive_integer(&self) -> (Q, SparsePoly) {
        if self.is_zero() {
            return (Q::zero(), self.clone());
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let v = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&v);
        }
        let mut content = Q::new(num_gcd, den_lcm);
        if self.leading().unwrap().1.is_negative() {
            content = -content;
        }
        let inv = content.recip();
        (content, self.scale(&inv))
    }

    /// Rational evaluation at a full point (all variables).
    pub fn eval_all(&self, point: &[Q]) -> Result<Q> {
        let mut acc = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k < 0 && x.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                t *= if k >= 0 { pow_q(x, k as u32) } else { pow_q(&x.recip(), (-k) as u32) };
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Renders using the given variable names instead of the stored ones.
    fn render(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = self.vars.names();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| if x == 1 { names[i].clone() } else { format!("{}^{}", names[i], x) })
                .collect();
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if mono.is_empty() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

pub(crate) fn pow_q(x: &Q, k: u32) -> Q {
    let mut acc = Q::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

impl PartialOrd for SparsePoly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order used only to key maps: variable names, then terms leading-first.
impl Ord for SparsePoly {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.vars.names().cmp(other.vars.names()).then_with(|| self.terms.iter().rev().cmp(other.terms.iter().rev()))
    }
}

impl std::hash::Hash for SparsePoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.vars.names().hash(state);
        for (e, c) in &self.terms {
            e.hash(state);
            c.hash(state);
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Exp,
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: Vec<String>,
    terms: Vec<TermJson>,
}

impl Serialize for SparsePoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            vars: self.vars.names().to_vec(),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(e, c)| TermJson { exp: e.clone(), num: c.numer().to_string(), den: c.denom().to_string() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SparsePoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PolyJson::deserialize(d)?;
        let vars = Vars::new(raw.vars);
        let mut p = SparsePoly::zero(&vars);
        for t in raw.terms {
            if t.exp.len() != vars.len() {
                return Err(D::Error::custom("exponent length does not match variable count"));
            }
            let num: BigInt = t.num.parse().map_err(D::Error::custom)?;
            let den: BigInt = t.den.parse().map_err(D::Error::custom)?;
            if den.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            p.add_term(t.exp, Q::new(num, den));
        }
        Ok(p)
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(f)
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePoly[{:?}](", self.vars)?;
        self.render(f)?;
        write!(f, ")")
    }
}

impl<'a> Add<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        self.check_vars(rhs).expect("polynomial addition over different variables");
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (e, c) in &small.terms {
            out.add_term_ref(e, c);
        }
        out
    }
}

impl<'a> Sub<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        self.check_vars(rhs).expect("polynomial subtraction over different variables");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term_ref(e, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        self.check_vars(rhs).expect("polynomial multiplication over different variables");
        if self.is_zero() || rhs.is_zero() {
            return SparsePoly::zero(&self.vars);
        }
        let mut acc: std::collections::HashMap<Exp, Q> =
            std::collections::HashMap::with_capacity(self.len() * rhs.len());
        let mut scratch = vec![0i32; self.nvars()];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                for (s, (x, y)) in scratch.iter_mut().zip(ea.iter().zip(eb)) {
                    *s = x + y;
                }
                let prod = ca * cb;
                if let Some(v) = acc.get_mut(scratch.as_slice()) {
                    *v += prod;
                } else {
                    acc.insert(scratch.clone(), prod);
                }
            }
        }
        SparsePoly { vars: self.vars.clone(), terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Add for SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: SparsePoly) -> SparsePoly {
        &self + &rhs
    }
}

impl Sub for SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: SparsePoly) -> SparsePoly {
        &self - &rhs
    }
}

impl Mul for SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: SparsePoly) -> SparsePoly {
        &self * &rhs
    }
}

impl Neg for SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zz() -> Vars {
        Vars::new(["z1", "z2"])
    }

    fn z(i: usize) -> SparsePoly {
        SparsePoly::var(&zz(), &format!("z{i}")).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let prod = poly_arith(&(&z(1) - &z(2)), &(&z(1) + &z(2)), PolyOp::Mul).unwrap();
        assert_eq!(prod, &z(1).pow(2) - &z(2).pow(2));
        let q = poly_arith(&prod, &(&z(1) - &z(2)), PolyOp::ExactDiv).unwrap();
        assert_eq!(q, &z(1) + &z(2));
    }

    #[test]
    fn non_exact_division_is_reported() {
        let a = &z(1).pow(2) + &z(2).pow(2);
        let err = poly_arith(&a, &(&z(1) - &z(2)), PolyOp::ExactDiv).unwrap_err();
        assert!(matches!(err, Error::NonExactDivision(_)));
    }

    #[test]
    fn variable_mismatch() {
        let other = SparsePoly::var(&Vars::new(["q"]), "q").unwrap();
        let err = poly_arith(&z(1), &other, PolyOp::Add).unwrap_err();
        assert!(matches!(err, Error::VariableMismatch { .. }));
    }

    #[test]
    fn laurent_division() {
        let v = zz();
        let a = SparsePoly::from_terms(&v, [(vec![-2, 1], Q::one()), (vec![-1, 0], Q::from_integer((-1).into()))]);
        // z1^-2 z2 - z1^-1 = z1^-2 (z2 - z1)
        let b = &z(2) - &z(1);
        let q = a.exact_div(&b).unwrap();
        assert_eq!(q, SparsePoly::monomial(&v, vec![-2, 0], Q::one()));
    }

    #[test]
    fn substitution_and_permutation() {
        let v = zz();
        let f = &z(1).pow(2) * &z(2);
        assert_eq!(f.swap_vars(0, 1), &z(1) * &z(2).pow(2));
        let g = f.substitute(0, &z(2)).unwrap();
        assert_eq!(g, z(2).pow(3));
        let inv = SparsePoly::monomial(&v, vec![-1, 0], Q::one());
        assert_eq!(
            inv.substitute(0, &z(2).scale_int(2)).unwrap(),
            SparsePoly::monomial(&v, vec![0, -1], Q::new(1.into(), 2.into()))
        );
    }

    #[test]
    fn primitive_part_sign_and_content() {
        let v = zz();
        let f = SparsePoly::from_terms(
            &v,
            [(vec![1, 0], Q::new((-2).into(), 3.into())), (vec![0, 1], Q::new(4.into(), 9.into()))],
        );
        let (c, p) = f.primitive_integer();
        assert_eq!(&p.scale(&c), &f);
        assert!(p.leading().unwrap().1.is_positive());
        assert_eq!(p.coeff(&[1, 0]), Q::from_integer(3.into()));
    }

    #[test]
    fn json_round_trip_is_leading_first() {
        let f = &(&z(1).pow(2) - &z(2).scale(&Q::new(3.into(), 7.into()))) + &SparsePoly::one(&zz());
        let js = serde_json::to_string(&f).unwrap();
        assert!(js.starts_with(r#"{"vars":["z1","z2"],"terms":[{"exp":[2,0],"num":"1","den":"1"}"#), "{js}");
        let back: SparsePoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, f);
        assert_eq!(serde_json::to_string(&back).unwrap(), js);
    }
}
