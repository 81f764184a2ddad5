//! Drinfeld polynomials, the string decomposition of `Δ_{λ,N}`, the
//! scalar shadow of `L̄₀(x)` and the `I₁` eigenvalues.

use std::fmt;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::exact_algebra::{qi, qr, Matrix, RatFunc, SparsePoly, Vars, Q};

use super::modules::{cyclic_dimension, eval_module, q_power, tensor_coproduct};
use super::rmatrix::build_S;

/// `["q", "u"]`.
pub fn qu_vars() -> Vars {
    Vars::new(["q", "u"])
}

/// `P(u)` with `P(0) = 1` and coefficients in `ℤ[q, q⁻¹]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrinfeldPoly {
    poly: SparsePoly,
}

impl DrinfeldPoly {
    pub fn new(poly: SparsePoly) -> Result<Self> {
        let poly = poly.embed(&qu_vars())?;
        if poly.terms().any(|(e, _)| e[1] < 0) {
            return Err(Error::InvalidArgument(format!("{poly} is not a polynomial in u")));
        }
        let at_zero = poly.collect_in(1).remove(&0);
        if !at_zero.is_some_and(|c| c.is_one()) {
            return Err(Error::InvalidArgument(format!("{poly} does not satisfy P(0) = 1")));
        }
        Ok(DrinfeldPoly { poly })
    }

    pub fn one() -> Self {
        DrinfeldPoly { poly: SparsePoly::one(&qu_vars()) }
    }

    /// `∏ (1 − q^{e} u)` over the given exponents.
    pub fn from_roots(exps: &[i32]) -> Self {
        let vars = qu_vars();
        let mut poly = SparsePoly::one(&vars);
        for &e in exps {
            let f = &SparsePoly::one(&vars) - &SparsePoly::monomial(&vars, vec![e, 1], qi(1));
            poly = &poly * &f;
        }
        DrinfeldPoly { poly }
    }

    /// `Δ_n(u; a) = ∏_{i=1}^n (1 − q^{n−2(i−1)} a u)` for a Laurent polynomial `a`.
    pub fn string(n: usize, a: &RatFunc) -> Result<Self> {
        let a = a
            .canonical()
            .as_poly()
            .cloned()
            .ok_or_else(|| Error::InvalidArgument(format!("parameter {a} is not a Laurent polynomial in q")))?;
        let vars = qu_vars();
        let a = a.embed(&vars)?;
        let mut poly = SparsePoly::one(&vars);
        for i in 0..n {
            let e = n as i32 - 2 * i as i32;
            let f = &SparsePoly::one(&vars) - &a.mul_monomial(&[e, 1], &qi(1));
            poly = &poly * &f;
        }
        Ok(DrinfeldPoly { poly })
    }

    pub fn poly(&self) -> &SparsePoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree_in(1).unwrap_or(0) as usize
    }

    /// Coefficients of `u⁰, u¹, …` as Laurent polynomials in `q`.
    pub fn coefficients(&self) -> Vec<SparsePoly> {
        let by = self.poly.collect_in(1);
        let q = Vars::new(["q"]);
        (0..=self.degree() as i32)
            .map(|k| by.get(&k).map_or_else(|| SparsePoly::zero(&q), |c| c.restrict(&q).expect("u-free")))
            .collect()
    }

    pub fn mul(&self, other: &DrinfeldPoly) -> DrinfeldPoly {
        DrinfeldPoly { poly: &self.poly * &other.poly }
    }
}

impl fmt::Display for DrinfeldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

impl Serialize for DrinfeldPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<String> = self.coefficients().iter().map(|c| c.to_string()).collect();
        let mut st = s.serialize_struct("DrinfeldPoly", 3)?;
        st.serialize_field("poly", &self.poly.to_string())?;
        st.serialize_field("degree", &self.degree())?;
        st.serialize_field("coefficients", &coeffs)?;
        st.end()
    }
}

fn padded(lam: &[usize], n: usize) -> Result<Vec<usize>> {
    if lam.len() > n {
        return Err(Error::TooManyParts { partition: format!("{lam:?}"), n });
    }
    if lam.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidPartition(format!("{lam:?}")));
    }
    let mut out = lam.to_vec();
    out.resize(n, 0);
    Ok(out)
}

/// Exponents `−4d_j` with `d_j = λ_j + (N−j)/2`.
pub fn c_exponents(lam: &[usize], n: usize) -> Result<Vec<i32>> {
    let lam = padded(lam, n)?;
    Ok((1..=n).map(|j| -4 * lam[j - 1] as i32 - 2 * (n - j) as i32).collect())
}

/// `Δ_{λ,N}(u) = ∏_j (1 − q^{−4d_j+1} u)`.
pub fn delta_lambda_n(lam: &[usize], n: usize) -> Result<DrinfeldPoly> {
    let exps: Vec<i32> = c_exponents(lam, n)?.into_iter().map(|c| c + 1).collect();
    Ok(DrinfeldPoly::from_roots(&exps))
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct StringData {
    pub m: usize,
    /// `(k_j, n_j)`.
    pub blocks: Vec<(usize, usize)>,
    /// `a_j` as exponents of `q`.
    pub centers: Vec<i32>,
}

impl StringData {
    pub fn n_total(&self) -> usize {
        self.blocks.iter().map(|b| b.1).sum()
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.1 + 1).product()
    }

    pub fn factors(&self) -> Vec<DrinfeldPoly> {
        self.blocks
            .iter()
            .zip(&self.centers)
            .map(|(&(_, n), &a)| DrinfeldPoly::string(n, &q_power(a)).expect("monomial center"))
            .collect()
    }
}

/// Run-length blocks of `λ` padded to `N`, with
/// `a_j = q^{−4k_j − 2N + 2(n₁+…+n_{j−1}) + n_j + 1}`.
pub fn string_decomposition(lam: &[usize], n: usize) -> Result<StringData> {
    let lam = padded(lam, n)?;
    let blocks = string_blocks(&lam, n)?;
    let mut before = 0i32;
    let mut centers = Vec::with_capacity(blocks.len());
    for &(k, nj) in &blocks {
        centers.push(-4 * k as i32 - 2 * n as i32 + 2 * before + nj as i32 + 1);
        before += nj as i32;
    }
    let sd = StringData { m: blocks.len(), blocks, centers };
    let product = sd.factors().iter().fold(DrinfeldPoly::one(), |acc, p| acc.mul(p));
    let expected = delta_lambda_n(&lam, n)?;
    if product != expected {
        return Err(Error::FactorizationMismatch(format!("{product} vs {expected}")));
    }
    Ok(sd)
}

/// Run-length blocks `(k_j, n_j)` of `λ` padded to length `N`.
pub fn string_blocks(lam: &[usize], n: usize) -> Result<Vec<(usize, usize)>> {
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    for k in padded(lam, n)? {
        match blocks.last_mut() {
            Some((kk, cnt)) if *kk == k => *cnt += 1,
            _ => blocks.push((k, 1)),
        }
    }
    Ok(blocks)
}

/// `∏_j (n_j + 1)`.
pub fn dim_w(lam: &[usize], n: usize) -> Result<usize> {
    Ok(string_blocks(lam, n)?.iter().map(|b| b.1 + 1).product())
}

/// Largest tensor product the cyclic-closure oracle will build.
pub const ORACLE_DIM_LIMIT: usize = 64;

/// Pairwise q-segment test: `(n_j, a_j)` and `(n_k, a_k)` are in special
/// position iff `a_k/a_j = q^{±(n_j+n_k+2−2s)}` for some `1 ≤ s ≤ min(n_j, n_k)`.
pub fn segments_special(nj: usize, aj: i32, nk: usize, ak: i32) -> bool {
    let ratio = (ak - aj).abs();
    (1..=nj.min(nk)).any(|s| ratio == (nj + nk + 2 - 2 * s) as i32)
}

pub fn predicate_irreducible(blocks: &[(usize, i32)]) -> bool {
    blocks
        .iter()
        .enumerate()
        .all(|(j, &(nj, aj))| blocks[j + 1..].iter().all(|&(nk, ak)| !segments_special(nj, aj, nk, ak)))
}

/// Cyclic dimensions of `W_{n_1}(a_1)⊗…` in the given and the reversed order.
pub fn oracle_dimensions(blocks: &[(usize, i32)]) -> Result<(usize, usize)> {
    let full: usize = blocks.iter().map(|b| b.0 + 1).product();
    if full > ORACLE_DIM_LIMIT {
        return Err(Error::DimensionTooLarge(full, ORACLE_DIM_LIMIT));
    }
    let mods = blocks.iter().map(|&(n, a)| Ok(eval_module(n, &q_power(a))?.mats)).collect::<Result<Vec<_>>>()?;
    let forward = cyclic_dimension(&tensor_coproduct(&mods)?)?;
    let rev: Vec<_> = mods.into_iter().rev().collect();
    let backward = cyclic_dimension(&tensor_coproduct(&rev)?)?;
    Ok((forward, backward))
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct GeneralPosition {
    /// The q-segment predicate.
    pub pairwise_irreducible: bool,
    /// Cyclic dimension in the given order, when the oracle ran.
    pub brute_force_dim: Option<usize>,
    pub brute_force_dim_reversed: Option<usize>,
    pub full_dim: usize,
}

impl GeneralPosition {
    /// Irreducible by the oracle: full cyclic dimension in both orders.
    pub fn oracle_irreducible(&self) -> Option<bool> {
        Some(self.brute_force_dim? == self.full_dim && self.brute_force_dim_reversed? == self.full_dim)
    }

    pub fn agrees(&self) -> bool {
        self.oracle_irreducible().is_none_or(|o| o == self.pairwise_irreducible)
    }
}

/// Runs the predicate, and the oracle when `oracle` is set.
pub fn general_position(blocks: &[(usize, i32)], oracle: bool) -> Result<GeneralPosition> {
    let full_dim = blocks.iter().map(|b| b.0 + 1).product();
    let (fwd, bwd) = if oracle {
        let (f, b) = oracle_dimensions(blocks)?;
        (Some(f), Some(b))
    } else {
        (None, None)
    };
    Ok(GeneralPosition {
        pairwise_irreducible: predicate_irreducible(blocks),
        brute_force_dim: fwd,
        brute_force_dim_reversed: bwd,
        full_dim,
    })
}

pub fn general_position_check(sd: &StringData) -> Result<GeneralPosition> {
    let blocks: Vec<(usize, i32)> = sd.blocks.iter().map(|b| b.1).zip(sd.centers.iter().copied()).collect();
    general_position(&blocks, true)
}

#[derive(Clone, Debug, PartialEq)]
pub struct LbarShadow {
    /// Over `["q", "x"]`.
    pub a_x: RatFunc,
    pub triangular: bool,
}

fn qx_vars() -> Vars {
    Vars::new(["q", "x"])
}

/// `L̄₀ⱼ(x; a) = (x S₀ⱼ⁻¹ − q a S₀ⱼ)/(q a − x) · P₀ⱼ` on `V₀⊗V^{⊗N}`, site 0 auxiliary.
fn lbar_factor(j: usize, n: usize, a: &RatFunc) -> Result<Matrix<RatFunc>> {
    let vars = qx_vars();
    let lift = |m: &Matrix<RatFunc>| m.map(|x| x.embed(&vars).expect("q embeds"));
    let s = build_S();
    let (s, s_inv) = (lift(&s), lift(&s.inverse()?));
    let q = RatFunc::var(&vars, "q")?;
    let x = RatFunc::var(&vars, "x")?;
    let qa = &q * a;
    let denom = (&qa - &x).inv()?;
    let local = s_inv.scale(&x).sub(&s.scale(&qa)).scale(&denom);
    let flip = Matrix::from_fn(4, 4, |r, c| {
        let (r0, r1, c0, c1) = (r >> 1, r & 1, c >> 1, c & 1);
        if r0 == c1 && r1 == c0 {
            RatFunc::one(&vars)
        } else {
            RatFunc::zero(&vars)
        }
    });
    let two = local.mul(&flip).canonical();
    let sites = n + 1;
    let bit = |v: usize, s: usize| (v >> (sites - 1 - s)) & 1;
    let dim = 1 << sites;
    Ok(Matrix::from_fn(dim, dim, |r, c| {
        if (1..sites).any(|s| s != j && bit(r, s) != bit(c, s)) {
            return RatFunc::zero(&vars);
        }
        two.get(bit(r, 0) * 2 + bit(r, j), bit(c, 0) * 2 + bit(c, j)).clone()
    }))
}

/// `A(x) = q^N Δ(q⁻²x⁻¹)/Δ(x⁻¹)` with `Δ(u) = ∏(1 − q c_j u)`.
pub fn delhat_ratio(c_exps: &[i32]) -> Result<RatFunc> {
    let vars = qx_vars();
    let q = RatFunc::var(&vars, "q")?;
    let x_inv = RatFunc::var(&vars, "x")?.inv()?;
    let one = RatFunc::one(&vars);
    let delta =
        |u: &RatFunc| c_exps.iter().fold(one.clone(), |acc, &c| &acc * &(&one - &(&q.pow(c + 1).expect("q ≠ 0") * u)));
    let q_n = q.pow(c_exps.len() as i32)?;
    let num = &q_n * &delta(&(&q.pow(-2)? * &x_inv));
    Ok((&num / &delta(&x_inv)).canonical())
}

/// Scalar shadow of `L̄₀(x) = L̄₀₁(x; c₁)⋯L̄₀N(x; c_N)` on `v₊^{⊗N}`, with
/// `c_j = q^{e_j}` standing in for `q^{N−1}Ŷ_j⁻¹`.
pub fn lbar_shadow(c_exps: &[i32]) -> Result<LbarShadow> {
    let n = c_exps.len();
    let vars = qx_vars();
    let mut l = Matrix::identity(1 << (n + 1), &RatFunc::one(&vars));
    for (j, &c) in c_exps.iter().enumerate() {
        let a = RatFunc::var(&vars, "q")?.pow(c)?;
        l = l.mul(&lbar_factor(j + 1, n, &a)?).canonical();
    }
    // Row/column (a, w) is aux index a, sites w; v₊^{⊗N} is w = 0.
    let half = 1 << n;
    let zero = RatFunc::zero(&vars);
    let one = RatFunc::one(&vars);
    for w in 0..half {
        let lower_left = l.get(half + w, 0);
        if !lower_left.is_zero() {
            return Err(Error::TriangularityFailure(format!("⟨−|L|+⟩ has component {lower_left} at site vector {w}")));
        }
        let lower_right = l.get(half + w, half);
        if *lower_right != if w == 0 { one.clone() } else { zero.clone() } {
            return Err(Error::TriangularityFailure(format!("⟨−|L|−⟩ has component {lower_right} at site vector {w}")));
        }
        if w > 0 && !l.get(w, 0).is_zero() {
            return Err(Error::TriangularityFailure(format!("⟨+|L|+⟩ is not diagonal at site vector {w}")));
        }
    }
    let a_x = l.get(0, 0).canonical();
    let expected = delhat_ratio(c_exps)?;
    if a_x != expected {
        return Err(Error::EigenvalueMismatch(format!("A(x) = {a_x}, expected {expected}")));
    }
    Ok(LbarShadow { a_x, triangular: true })
}

pub fn lbar_shadow_for(lam: &[usize], n: usize) -> Result<LbarShadow> {
    lbar_shadow(&c_exponents(lam, n)?)
}

/// Power-series coefficients of `num/den` in `var` at `var = 0`, over `q`
/// alone. Both must be Laurent in `var` only through a common monomial.
fn series_at_zero(f: &RatFunc, var: usize, order: usize) -> Result<(i32, Vec<RatFunc>)> {
    let q = Vars::new(["q"]);
    let split = |p: &SparsePoly| -> Result<(i32, Vec<RatFunc>)> {
        let by = p.collect_in(var);
        let low = *by.keys().next().ok_or(Error::DivisionByZero)?;
        let high = *by.keys().last().expect("nonempty");
        let coeffs = (low..=high)
            .map(|k| {
                let c = by.get(&k).map_or_else(|| SparsePoly::zero(p.vars()), |c| c.clone());
                Ok(RatFunc::from_poly(c.restrict(&q)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((low, coeffs))
    };
    let (ln, nc) = split(f.num())?;
    let (ld, dc) = split(f.den())?;
    let zero = RatFunc::zero(&q);
    let at = |v: &[RatFunc], i: usize| v.get(i).cloned().unwrap_or_else(|| zero.clone());
    let d0_inv = dc[0].inv()?;
    let mut out: Vec<RatFunc> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = at(&nc, k);
        for i in 1..=k {
            acc = &acc - &(&at(&dc, i) * &out[k - i]);
        }
        out.push((&acc * &d0_inv).canonical());
    }
    Ok((ln - ld, out))
}

fn q_monomial_exponent(c: &RatFunc) -> Option<i32> {
    let p = c.canonical().as_poly()?.clone();
    let (e, coeff) = p.leading()?;
    (p.is_monomial() && *coeff == qi(1)).then_some(e[0])
}

/// Solves `P(q^{2σ} w) = q^{τ} S(w) P(w)` term by term from the series `S`.
fn recover(series: &[RatFunc], d: usize, sigma: i32, tau: i32) -> Result<Vec<RatFunc>> {
    let q = RatFunc::var(&Vars::new(["q"]), "q")?;
    let one = RatFunc::one(q.vars());
    let mut p = vec![one.clone()];
    for k in 1..=d {
        let mut acc = RatFunc::zero(q.vars());
        for i in 1..=k {
            acc = &acc + &(&series[i] * &p[k - i]);
        }
        let factor = &q.pow(2 * sigma * k as i32)? - &one;
        p.push((&(&acc * &q.pow(tau)?) / &factor).canonical());
    }
    Ok(p)
}

/// Recovers `P` from `A(u⁻¹)/D(u⁻¹) = q^{deg P} P(q⁻²u)/P(u)` by expanding
/// at `u → 0` and at `u → ∞` and requiring both to give the same `P`.
pub fn drinfeld_from_ratio(a: &RatFunc, d: &RatFunc) -> Result<DrinfeldPoly> {
    let vars = qx_vars();
    let ratio = a.embed(&vars)?.checked_div(&d.embed(&vars)?)?.canonical();
    let bad = |why: String| Error::InconsistentExpansions(why);
    // u → 0 is x → ∞: expand in u = x⁻¹.
    let in_u = ratio.map_exps(|e| vec![e[0], -e[1]]).canonical();
    let (lead0, probe) = series_at_zero(&in_u, 1, 0)?;
    let deg = match (lead0, q_monomial_exponent(&probe[0])) {
        (0, Some(e)) if e >= 0 => e as usize,
        _ => return Err(bad(format!("value at u = 0 is {}, not q^d", probe[0]))),
    };
    let (_, at_zero) = series_at_zero(&in_u, 1, deg)?;
    // u → ∞ is x → 0: expand in w = u⁻¹ = x.
    let (lead_inf, at_inf) = series_at_zero(&ratio, 1, deg)?;
    if lead_inf != 0 || q_monomial_exponent(&at_inf[0]) != Some(-(deg as i32)) {
        return Err(bad(format!("value at u = ∞ is {}, expected q^-{deg}", at_inf[0])));
    }
    // P(q⁻²u) = q^{−d} R(u) P(u), and with P*(w) = w^d P(1/w)/p_d,
    // P*(q²w) = q^{d} R(1/w) P*(w).
    let from_zero = recover(&at_zero, deg, -1, -(deg as i32))?;
    let star = recover(&at_inf, deg, 1, deg as i32)?;
    let top = star[deg].clone();
    if top.is_zero() {
        return Err(bad("expansion at u = ∞ gives degree below d".into()));
    }
    let top_inv = top.inv()?;
    let from_inf: Vec<RatFunc> = (0..=deg).map(|k| (&star[deg - k] * &top_inv).canonical()).collect();
    if from_zero != from_inf {
        return Err(bad(format!("coefficients {from_zero:?} vs {from_inf:?}")));
    }
    let uv = qu_vars();
    let mut poly = SparsePoly::zero(&uv);
    for (k, c) in from_zero.iter().enumerate() {
        let c = c
            .as_poly()
            .ok_or_else(|| bad(format!("coefficient {c} of u^{k} is not a Laurent polynomial")))?
            .embed(&uv)?;
        poly = &poly + &c.mul_monomial(&[0, k as i32], &qi(1));
    }
    // Exact check of q^d P(q⁻²x⁻¹)/P(x⁻¹) against the ratio.
    let in_x = |shift: i32| {
        RatFunc::from_poly(SparsePoly::from_terms(
            &vars,
            poly.terms().map(|(e, c)| (vec![e[0] + shift * e[1], -e[1]], c.clone())),
        ))
    };
    let q = RatFunc::var(&vars, "q")?;
    let lhs = (&(&q.pow(deg as i32)? * &in_x(-2)) / &in_x(0)).canonical();
    if lhs != ratio {
        return Err(bad(format!("q^d P(q⁻²u)/P(u) = {lhs} but the ratio is {ratio}")));
    }
    DrinfeldPoly::new(poly)
}

/// `Σ_j q^{−4d_j} − (N/2)(1 + q²)`.
pub fn i1_eigenvalue(lam: &[usize], n: usize) -> Result<SparsePoly> {
    let vars = Vars::new(["q"]);
    let mut acc = SparsePoly::zero(&vars);
    for c in c_exponents(lam, n)? {
        acc = &acc + &SparsePoly::monomial(&vars, vec![c], qi(1));
    }
    let half_n: Q = qr(n as i64, 2);
    let shift = &SparsePoly::one(&vars) + &SparsePoly::monomial(&vars, vec![2], qi(1));
    Ok(&acc - &shift.scale(&half_n))
}

/// Partitions of `k` with at most `n` parts, descending.
pub fn partitions_at_most(k: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, max: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        if parts == 0 {
            return;
        }
        for p in (1..=k.min(max)).rev() {
            cur.push(p);
            go(k - p, p, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k, n, &mut Vec::new(), &mut out);
    out
}

/// `(λ padded or not, N)`.
pub type Label = (Vec<usize>, usize);

/// All `(λ, N)` with `|λ| + N²/4 ≤ bound`.
pub fn i1_labels(bound: usize) -> Vec<Label> {
    let mut out = Vec::new();
    for n in (0..).take_while(|n| n * n <= 4 * bound) {
        for k in (0..).take_while(|k| 4 * k + n * n <= 4 * bound) {
            out.extend(partitions_at_most(k, n).into_iter().map(|lam| (lam, n)));
        }
    }
    out
}

/// Pairs of labels whose `I₁` eigenvalues coincide.
pub fn i1_collisions(bound: usize) -> Result<Vec<(Label, Label)>> {
    let labels = i1_labels(bound);
    let mut seen: std::collections::BTreeMap<SparsePoly, Label> = Default::default();
    let mut clashes = Vec::new();
    for (lam, n) in labels {
        let v = i1_eigenvalue(&lam, n)?;
        if let Some(prev) = seen.insert(v, (lam.clone(), n)) {
            clashes.push((prev, (lam, n)));
        }
    }
    Ok(clashes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &[(i32, i32, i64)]) -> SparsePoly {
        SparsePoly::from_terms(&qu_vars(), s.iter().map(|&(a, b, c)| (vec![a, b], qi(c))))
    }

    #[test]
    fn evaluation_drinfeld_polynomials() {
        let p1 = eval_module(1, &q_power(-3)).unwrap().drinfeld().unwrap();
        assert_eq!(p1, DrinfeldPoly::from_roots(&[-2]));
        let p2 = eval_module(2, &q_power(0)).unwrap().drinfeld().unwrap();
        assert_eq!(p2.poly(), &poly(&[(0, 0, 1), (2, 1, -1), (0, 1, -1), (2, 2, 1)]));
        assert_eq!(eval_module(0, &q_power(4)).unwrap().drinfeld().unwrap(), DrinfeldPoly::one());
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_lambda_n(&[], 1).unwrap(), DrinfeldPoly::from_roots(&[1]));
        assert_eq!(delta_lambda_n(&[1], 1).unwrap(), DrinfeldPoly::from_roots(&[-3]));
        assert_eq!(delta_lambda_n(&[], 2).unwrap(), DrinfeldPoly::from_roots(&[-1, 1]));
        assert_eq!(delta_lambda_n(&[3, 1], 3).unwrap().degree(), 3);
        assert!(DrinfeldPoly::new(poly(&[(0, 0, 2)])).is_err());
    }

    #[test]
    fn string_examples() {
        let sd = string_decomposition(&[0, 0], 2).unwrap();
        assert_eq!((sd.blocks.clone(), sd.centers.clone()), (vec![(0, 2)], vec![-1]));
        let sd = string_decomposition(&[1], 2).unwrap();
        assert_eq!((sd.blocks.clone(), sd.centers.clone()), (vec![(1, 1), (0, 1)], vec![-6, 0]));
        assert_eq!(sd.factors(), vec![DrinfeldPoly::from_roots(&[-5]), DrinfeldPoly::from_roots(&[1])]);
        assert_eq!(string_decomposition(&[2, 2, 1], 3).unwrap().blocks, vec![(2, 2), (1, 1)]);
        assert_eq!(dim_w(&[0, 0], 2).unwrap(), 3);
        assert_eq!(dim_w(&[1, 0], 2).unwrap(), 4);
        assert_eq!(dim_w(&[2, 2, 1], 3).unwrap(), 6);
        assert!(matches!(string_decomposition(&[1, 1, 1], 2), Err(Error::TooManyParts { .. })));
    }

    #[test]
    fn general_position_examples() {
        let gp = general_position_check(&string_decomposition(&[1, 0], 2).unwrap()).unwrap();
        assert!(gp.pairwise_irreducible && gp.agrees());
        assert_eq!(gp.brute_force_dim, Some(4));
        let gp = general_position(&[(1, 0), (1, 2)], true).unwrap();
        assert!(!gp.pairwise_irreducible && gp.agrees());
        assert_eq!(gp.oracle_irreducible(), Some(false));
        let single = general_position_check(&string_decomposition(&[], 3).unwrap()).unwrap();
        assert!(single.pairwise_irreducible && single.agrees());
        assert!(matches!(oracle_dimensions(&[(4, 0), (4, 20), (2, 40)]), Err(Error::DimensionTooLarge(75, 64))));
    }

    #[test]
    fn predicate_matches_oracle_on_pairs() {
        for n1 in 1..=2 {
            for n2 in 1..=2 {
                for ratio in -5..=5 {
                    let gp = general_position(&[(n1, 0), (n2, ratio)], true).unwrap();
                    assert!(gp.agrees(), "n = ({n1}, {n2}), ratio q^{ratio}: {gp:?}");
                }
            }
        }
    }

    #[test]
    fn lbar_shadow_examples() {
        let vars = qx_vars();
        let (q, x) = (RatFunc::var(&vars, "q").unwrap(), RatFunc::var(&vars, "x").unwrap());
        let one = RatFunc::one(&vars);
        let s = lbar_shadow_for(&[], 1).unwrap();
        // q(1 − q⁻¹x⁻¹)/(1 − q x⁻¹)
        let want = &(&q * &(&one - &(&q * &x).inv().unwrap())) / &(&one - &(&q / &x));
        assert_eq!(s.a_x, want.canonical());
        assert_eq!(c_exponents(&[], 2).unwrap(), vec![-2, 0]);
        lbar_shadow_for(&[], 2).unwrap();
        lbar_shadow(&[-7, 3]).unwrap();
    }

    #[test]
    fn drinfeld_from_ratio_examples() {
        let vars = qx_vars();
        let one = RatFunc::one(&vars);
        assert_eq!(drinfeld_from_ratio(&one, &one).unwrap(), DrinfeldPoly::one());
        for (lam, n) in [(vec![], 1), (vec![1], 1), (vec![2, 1], 2)] {
            let a = lbar_shadow_for(&lam, n).unwrap().a_x;
            assert_eq!(drinfeld_from_ratio(&a, &one).unwrap(), delta_lambda_n(&lam, n).unwrap());
        }
        let x = RatFunc::var(&vars, "x").unwrap();
        assert!(matches!(drinfeld_from_ratio(&x, &one), Err(Error::InconsistentExpansions(_))));
        let two = RatFunc::from_int(&vars, 2);
        assert!(matches!(drinfeld_from_ratio(&two, &one), Err(Error::InconsistentExpansions(_))));
    }

    #[test]
    fn i1_examples_and_distinctness() {
        let v = Vars::new(["q"]);
        let q2 = SparsePoly::monomial(&v, vec![2], qi(1));
        let one = SparsePoly::one(&v);
        assert_eq!(i1_eigenvalue(&[], 1).unwrap(), &one - &(&one + &q2).scale(&qr(1, 2)));
        let qm2 = SparsePoly::monomial(&v, vec![-2], qi(1));
        assert_eq!(i1_eigenvalue(&[], 2).unwrap(), &(&qm2 + &one) - &(&one + &q2));
        assert!(i1_labels(6).contains(&(vec![2], 4)));
        assert!(!i1_labels(6).iter().any(|(_, n)| *n > 4));
        assert!(i1_collisions(6).unwrap().is_empty());
    }
}
