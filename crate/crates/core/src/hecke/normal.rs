//! Difference operators `Σ f(z)·σ·p^{s·ϑ}` with everything moved to the
//! right, and the symmetrized normal form they take on symmetric inputs.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::ops::{apply_word, binomial, hecke_vars, q_pow, r_y_word, Op, OpSpace};
use crate::error::{Error, Result};
use crate::exact_algebra::{FactoredFrac, RatFunc, SparsePoly, Vars};
use crate::symfun::subsets;

/// A permutation in one-line notation (0-based): `σ f(z) = f(z_{σ(1)}, …, z_{σ(N)})`.
pub type Perm = Vec<usize>;

fn compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&k| a[k]).collect()
}

fn transposition(n: usize, i: usize, j: usize) -> Perm {
    let mut p: Perm = (0..n).collect();
    p.swap(i, j);
    p
}

#[derive(Clone, PartialEq)]
pub struct DiffOpExpr {
    n: usize,
    vars: Vars,
    terms: BTreeMap<(Perm, Vec<i32>), RatFunc>,
}

impl DiffOpExpr {
    pub fn identity(n: usize) -> Self {
        let vars = hecke_vars(n);
        let mut terms = BTreeMap::new();
        terms.insert(((0..n).collect(), vec![0; n]), RatFunc::one(&vars));
        DiffOpExpr { n, vars, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<(Perm, Vec<i32>), RatFunc> {
        &self.terms
    }

    fn from_terms(n: usize, vars: Vars, raw: impl IntoIterator<Item = ((Perm, Vec<i32>), RatFunc)>) -> Self {
        let mut terms: BTreeMap<(Perm, Vec<i32>), RatFunc> = BTreeMap::new();
        for (k, c) in raw {
            let slot = terms.entry(k).or_insert_with(|| RatFunc::zero(&vars));
            *slot = (&*slot + &c).canonical();
        }
        terms.retain(|_, c| !c.is_zero());
        DiffOpExpr { n, vars, terms }
    }

    /// `Σ f · σ(p^s F)`.
    pub fn apply_to(&self, f: &SparsePoly) -> Result<RatFunc> {
        let f = f.embed(&self.vars)?;
        let mut acc = RatFunc::zero(&self.vars);
        for ((perm, s), c) in &self.terms {
            let mut g = f.clone();
            for (j, &k) in s.iter().enumerate() {
                if k != 0 {
                    g = g.shift_var(j, self.n + 1, k);
                }
            }
            let mut sigma = perm.clone();
            sigma.extend([self.n, self.n + 1]);
            acc = &acc + &(c * &RatFunc::from_poly(g.permute_vars(&sigma)));
        }
        Ok(acc.canonical())
    }

    /// Drops the permutations, valid on symmetric inputs: `σ p^s P = p^{s'} P`
    /// with `s'_{σ(k)} = s_k`.
    pub fn symmetrize(&self) -> NormalForm {
        let mut coeffs: BTreeMap<Vec<i32>, RatFunc> = BTreeMap::new();
        for ((perm, s), c) in &self.terms {
            let mut key = vec![0; self.n];
            for (k, &v) in s.iter().enumerate() {
                key[perm[k]] = v;
            }
            let slot = coeffs.entry(key).or_insert_with(|| RatFunc::zero(&self.vars));
            *slot = (&*slot + c).canonical();
        }
        coeffs.retain(|_, c| !c.is_zero());
        NormalForm { n: self.n, coeffs }
    }
}

impl OpSpace for DiffOpExpr {
    fn nz(&self) -> usize {
        self.n
    }

    fn vars(&self) -> &Vars {
        &self.vars
    }

    fn swap(&self, i: usize, j: usize) -> Self {
        let t = transposition(self.n, i, j);
        let raw = self.terms.iter().map(|((p, s), c)| ((compose(&t, p), s.clone()), c.swap_vars(i, j)));
        Self::from_terms(self.n, self.vars.clone(), raw)
    }

    fn shift(&self, j: usize, k: i32) -> Self {
        let raw = self.terms.iter().map(|((p, s), c)| {
            // p^{kϑ_j} σ = σ p^{k ϑ_{σ⁻¹(j)}}
            let mut s2 = s.clone();
            let m = p.iter().position(|&x| x == j).unwrap();
            s2[m] += k;
            ((p.clone(), s2), c.shift_var(j, self.n + 1, k))
        });
        Self::from_terms(self.n, self.vars.clone(), raw)
    }

    fn add(&self, o: &Self) -> Self {
        let raw = self.terms.iter().chain(o.terms.iter()).map(|(k, c)| (k.clone(), c.clone()));
        Self::from_terms(self.n, self.vars.clone(), raw)
    }

    fn scale_poly(&self, c: &SparsePoly) -> Self {
        let c = RatFunc::from_poly(c.clone());
        let raw = self.terms.iter().map(|(k, x)| (k.clone(), x * &c));
        Self::from_terms(self.n, self.vars.clone(), raw)
    }

    fn mul_ratfunc(&self, c: &RatFunc) -> Result<Self> {
        let raw = self.terms.iter().map(|(k, x)| (k.clone(), x * c));
        Ok(Self::from_terms(self.n, self.vars.clone(), raw))
    }

    fn divided(&self, i: usize, j: usize) -> Result<Self> {
        let d = RatFunc::from_poly(binomial(&self.vars, i, 1, 0, j, -1, 0)).inv()?;
        let diff = self.add(&self.swap(i, j).scale_poly(&SparsePoly::from_int(&self.vars, -1)));
        diff.mul_ratfunc(&d)
    }
}

impl fmt::Display for DiffOpExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((p, s), c)| {
                let perm: Vec<String> = p.iter().map(|x| (x + 1).to_string()).collect();
                format!("({c})·σ[{}]·p^θ{s:?}", perm.join(""))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for DiffOpExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffOpExpr[{self}]")
    }
}

/// Right-moved form of a word; identity when the word is empty.
pub fn normal_form(word: &[Op], n: usize) -> Result<DiffOpExpr> {
    apply_word(word, DiffOpExpr::identity(n))
}

/// `Σ_s f_s(z) p^{s·ϑ}` as an operator on symmetric functions.
#[derive(Clone, PartialEq)]
pub struct NormalForm {
    n: usize,
    coeffs: BTreeMap<Vec<i32>, RatFunc>,
}

impl NormalForm {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Keyed by shift vector.
    pub fn coeffs(&self) -> &BTreeMap<Vec<i32>, RatFunc> {
        &self.coeffs
    }

    /// Keyed by `{j₁<…<j_n}` (1-based) when every shift is a 0/1 vector.
    pub fn by_subset(&self) -> Option<BTreeMap<Vec<usize>, RatFunc>> {
        self.coeffs
            .iter()
            .map(|(s, c)| {
                s.iter().all(|&x| x == 0 || x == 1).then(|| {
                    let set: Vec<usize> = s.iter().enumerate().filter(|(_, &x)| x == 1).map(|(k, _)| k + 1).collect();
                    (set, c.clone())
                })
            })
            .collect()
    }

    /// Action on a symmetric polynomial over `z1..zN, q, p`.
    pub fn apply_to(&self, f: &SparsePoly) -> Result<RatFunc> {
        let vars = hecke_vars(self.n);
        let f = f.embed(&vars)?;
        let mut acc = RatFunc::zero(&vars);
        for (s, c) in &self.coeffs {
            let mut g = f.clone();
            for (j, &k) in s.iter().enumerate() {
                if k != 0 {
                    g = g.shift_var(j, self.n + 1, k);
                }
            }
            acc = &acc + &(c * &RatFunc::from_poly(g));
        }
        Ok(acc.canonical())
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|(s, c)| format!("({c})·p^θ{s:?}")).collect();
        write!(f, "{}", if parts.is_empty() { "0".to_string() } else { parts.join(" + ") })
    }
}

impl fmt::Debug for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NormalForm[{self}]")
    }
}

impl Serialize for NormalForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let terms: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|(k, c)| {
                let subset: Option<Vec<usize>> = k
                    .iter()
                    .all(|&x| x == 0 || x == 1)
                    .then(|| k.iter().enumerate().filter(|(_, &x)| x == 1).map(|(i, _)| i + 1).collect());
                serde_json::json!({ "shift": k, "subset": subset, "coeff": c.to_string() })
            })
            .collect();
        let mut st = s.serialize_struct("NormalForm", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

/// The action of a word on an unspecified symmetric `P`, tracked as
/// `Σ_s c_s(z) P(p^s z)` with factored coefficients.
#[derive(Clone)]
pub(crate) struct SymState {
    n: usize,
    vars: Vars,
    map: BTreeMap<Vec<i32>, FactoredFrac>,
}

impl SymState {
    pub(crate) fn identity(n: usize) -> Self {
        let vars = hecke_vars(n);
        let mut map = BTreeMap::new();
        map.insert(vec![0; n], FactoredFrac::one(&vars));
        SymState { n, vars, map }
    }

    fn from_raw(n: usize, vars: Vars, raw: impl IntoIterator<Item = (Vec<i32>, FactoredFrac)>) -> Self {
        let mut map: BTreeMap<Vec<i32>, FactoredFrac> = BTreeMap::new();
        for (k, c) in raw {
            match map.get_mut(&k) {
                Some(slot) => *slot = slot.add(&c),
                None => {
                    map.insert(k, c);
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        SymState { n, vars, map }
    }

    pub(crate) fn into_map(self) -> BTreeMap<Vec<i32>, FactoredFrac> {
        self.map
    }
}

impl OpSpace for SymState {
    fn nz(&self) -> usize {
        self.n
    }

    fn vars(&self) -> &Vars {
        &self.vars
    }

    fn swap(&self, i: usize, j: usize) -> Self {
        let raw = self.map.iter().map(|(s, c)| {
            let mut s2 = s.clone();
            s2.swap(i, j);
            (s2, c.swap_vars(i, j))
        });
        Self::from_raw(self.n, self.vars.clone(), raw)
    }

    fn shift(&self, j: usize, k: i32) -> Self {
        let raw = self.map.iter().map(|(s, c)| {
            let mut s2 = s.clone();
            s2[j] += k;
            (s2, c.shift_var(j, self.n + 1, k))
        });
        Self::from_raw(self.n, self.vars.clone(), raw)
    }

    fn add(&self, o: &Self) -> Self {
        let raw = self.map.iter().chain(o.map.iter()).map(|(k, c)| (k.clone(), c.clone()));
        Self::from_raw(self.n, self.vars.clone(), raw)
    }

    fn scale_poly(&self, c: &SparsePoly) -> Self {
        let raw = self.map.iter().map(|(k, x)| (k.clone(), x.mul_poly(c)));
        Self::from_raw(self.n, self.vars.clone(), raw)
    }

    fn mul_ratfunc(&self, c: &RatFunc) -> Result<Self> {
        let f = FactoredFrac::new(c.num().clone(), &[c.den().clone()]);
        let raw = self.map.iter().map(|(k, x)| (k.clone(), x.mul(&f)));
        Ok(Self::from_raw(self.n, self.vars.clone(), raw))
    }

    fn divided(&self, i: usize, j: usize) -> Result<Self> {
        let d = FactoredFrac::new(SparsePoly::one(&self.vars), &[binomial(&self.vars, i, 1, 0, j, -1, 0)]);
        let swapped = self.swap(i, j);
        let raw = self
            .map
            .iter()
            .map(|(k, c)| (k.clone(), c.mul(&d)))
            .chain(swapped.map.iter().map(|(k, c)| (k.clone(), c.mul(&d).neg())));
        Ok(Self::from_raw(self.n, self.vars.clone(), raw))
    }
}

/// `b_{ij} = −(q z_i − q⁻¹ z_j)/(z_i − z_j)` (1-based).
pub fn b_coeff(i: usize, j: usize, n: usize) -> RatFunc {
    let vars = hecke_vars(n);
    RatFunc::new(binomial(&vars, i - 1, -1, 1, j - 1, 1, -1), binomial(&vars, i - 1, 1, 0, j - 1, -1, 0))
        .expect("nonzero")
}

fn b_factored(vars: &Vars, i: usize, j: usize) -> FactoredFrac {
    FactoredFrac::new(binomial(vars, i, -1, 1, j, 1, -1), &[binomial(vars, i, 1, 0, j, -1, 0)])
}

/// Coefficient of `p^{ϑ_I}` in `(−q)^{−n(N−1)} D_N^n(p, q²)`, computed from the
/// operator's defining product `t^{n(n−1)/2} ∏ (t z_i − z_j)/(z_i − z_j)`.
fn scaled_operator_coeff(vars: &Vars, set: &[usize], n: usize) -> FactoredFrac {
    let m = set.len() as i32;
    let sign = if (m * (n as i32 - 1)) % 2 == 0 { 1 } else { -1 };
    let mut c = FactoredFrac::from_poly(q_pow(vars, m * (m - 1) - m * (n as i32 - 1)).scale_int(sign));
    for &i in set {
        for j in (0..n).filter(|j| !set.contains(j)) {
            c = c.mul(&FactoredFrac::new(binomial(vars, i, 1, 2, j, -1, 0), &[binomial(vars, i, 1, 0, j, -1, 0)]));
        }
    }
    c
}

/// The word `y_{j₁}⋯y_{j_n}` in `r`-form.
pub fn elementary_y_word(set: &[usize], n: usize) -> Result<Vec<Op>> {
    let mut w = Vec::new();
    for &j in set {
        w.extend(r_y_word(j, n)?);
    }
    Ok(w)
}

/// Symmetrized normal form of `𝓛_m = Σ_{j₁<…<j_m} y_{j₁}⋯y_{j_m}`, checked
/// coefficientwise against `∏_{i∈I, j∉I} b_{ij}` and against
/// `(−q)^{−m(N−1)} D_N^m(p, q²)`.
pub fn elementary_y_normalform(m: usize, n: usize) -> Result<NormalForm> {
    if m == 0 || m > n {
        return Err(Error::IndexOutOfRange(format!("n={m} with N={n}")));
    }
    let vars = hecke_vars(n);
    let mut total: BTreeMap<Vec<i32>, FactoredFrac> = BTreeMap::new();
    for set in subsets(n, m) {
        let word = elementary_y_word(&set.iter().map(|j| j + 1).collect::<Vec<_>>(), n)?;
        for (k, c) in apply_word(&word, SymState::identity(n))?.into_map() {
            match total.get_mut(&k) {
                Some(slot) => *slot = slot.add(&c),
                None => {
                    total.insert(k, c);
                }
            }
        }
    }
    total.retain(|_, c| !c.is_zero());
    let fail =
        |witness: String| Error::IdentityViolation { identity: format!("normal form of L_{m} at N={n}"), witness };
    for k in total.keys() {
        if !(k.iter().all(|&x| x == 0 || x == 1) && k.iter().sum::<i32>() == m as i32) {
            return Err(fail(format!("unexpected shift {k:?}")));
        }
    }
    let mut coeffs = BTreeMap::new();
    for set in subsets(n, m) {
        let key: Vec<i32> = (0..n).map(|k| i32::from(set.contains(&k))).collect();
        let got = total.get(&key).cloned().unwrap_or_else(|| FactoredFrac::zero(&vars));
        let mut want = FactoredFrac::one(&vars);
        for &i in &set {
            for j in (0..n).filter(|j| !set.contains(j)) {
                want = want.mul(&b_factored(&vars, i, j));
            }
        }
        let label: Vec<usize> = set.iter().map(|j| j + 1).collect();
        if !got.equals(&want) {
            return Err(fail(format!("I={label:?}: {got} vs product of b_ij {want}")));
        }
        if !got.equals(&scaled_operator_coeff(&vars, &set, n)) {
            return Err(fail(format!("I={label:?}: {got} vs scaled D_N^{m} coefficient")));
        }
        coeffs.insert(key, got.to_ratfunc());
    }
    Ok(NormalForm { n, coeffs })
}
