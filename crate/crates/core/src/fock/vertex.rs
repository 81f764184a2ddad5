//! The vertex operator `Φ̃*₊(z)`, its normal-ordered products and the
//! generating series `Ω(z)`.

use std::collections::BTreeMap;

use serde_json::json;

use super::space::{lattice_degree, q_pow, q_vars, BasisState, FockVector};
use crate::error::{Error, Result};
use crate::exact_algebra::{qi, qr, RatFunc};
use crate::fault::{active, Fault};
use crate::report::CheckReport;
use crate::symfun::{partitions_up_to, Partition};

/// A `z`-series with Fock-vector coefficients on the half-integer grid:
/// key `e` stands for `z^{e/2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfPowerSeries {
    cutoff: i64,
    /// Largest doubled exponent whose coefficient is complete.
    complete_through: i64,
    terms: BTreeMap<i64, FockVector>,
}

impl HalfPowerSeries {
    pub fn terms(&self) -> &BTreeMap<i64, FockVector> {
        &self.terms
    }

    pub fn complete_through(&self) -> i64 {
        self.complete_through
    }

    /// Coefficient of `z^{e/2}`.
    pub fn coeff_doubled(&self, e: i64) -> Result<FockVector> {
        if e > self.complete_through {
            return Err(Error::CutoffExceeded(self.cutoff));
        }
        Ok(self.terms.get(&e).cloned().unwrap_or_else(|| FockVector::zero(self.cutoff)))
    }

    /// Coefficient of `z^m`.
    pub fn coeff(&self, m: i64) -> Result<FockVector> {
        self.coeff_doubled(2 * m)
    }

    pub fn on_integer_grid(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }
}

/// `1/z_ν = 1/∏_k k^{m_k} m_k!`.
fn inv_z(nu: &Partition) -> RatFunc {
    let mut z = qi(1);
    let mut run = 0;
    for (idx, &p) in nu.parts().iter().enumerate() {
        run = if idx > 0 && nu.parts()[idx - 1] == p { run + 1 } else { 1 };
        z *= qi(p as i64 * run);
    }
    RatFunc::one(&q_vars()).scale(&(qi(1) / z))
}

fn merge(a: &Partition, b: &Partition) -> Partition {
    let mut parts = [a.parts(), b.parts()].concat();
    parts.sort_unstable_by(|x, y| y.cmp(x));
    Partition::new(parts).expect("positive parts")
}

/// Terms `(ν, c_ν)` of `exp(Σ_{n≥1} b₋ₙ q^{2n} zⁿ/n)` with `|ν| ≤ budget`;
/// `c_ν = q^{2|ν|}/z_ν` multiplies `zˡᵛˡ b_{−ν}`.
fn creation_terms(budget: i64) -> Vec<(Partition, RatFunc)> {
    if budget < 0 {
        return Vec::new();
    }
    partitions_up_to(budget as u32, None)
        .into_iter()
        .map(|nu| {
            let c = &q_pow(2 * nu.weight() as i32, 1) * &inv_z(&nu);
            (nu, c)
        })
        .collect()
}

/// Terms `(removed, rest, c)` of `exp(−Σ_{n≥1} bₙ z⁻ⁿ/(n(1+q^{2n}))) b_{−μ}|·⟩`:
/// `c·z^{−|removed|} b_{−rest}`.
fn annihilation_terms(mu: &Partition) -> Vec<(u32, Partition, RatFunc)> {
    let mut runs: Vec<(u32, usize)> = Vec::new();
    for &p in mu.parts() {
        match runs.last_mut() {
            Some((v, m)) if *v == p => *m += 1,
            _ => runs.push((p, 1)),
        }
    }
    let mut out = vec![(0u32, Vec::<u32>::new(), RatFunc::one(&q_vars()))];
    for (n, m) in runs {
        // exp(c bₙ) on b₋ₙ^m gives Σ_k C(m,k) (c n)^k b₋ₙ^{m−k}, and c n = −1/(1+q^{2n}).
        let cn = (&RatFunc::one(&q_vars()) + &q_pow(2 * n as i32, 1)).inv().expect("nonzero").scale(&qi(-1));
        let mut next = Vec::new();
        for (removed, rest, c) in &out {
            let mut binom = qi(1);
            let mut pw = RatFunc::one(&q_vars());
            for k in 0..=m {
                let mut parts = rest.clone();
                parts.extend(std::iter::repeat_n(n, m - k));
                next.push((removed + n * k as u32, parts, &(c * &pw) * &RatFunc::one(&q_vars()).scale(&binom)));
                binom = binom * qi((m - k) as i64) / qi(k as i64 + 1);
                pw = &pw * &cn;
            }
        }
        out = next;
    }
    out.into_iter().map(|(r, parts, c)| (r, Partition::new(parts).expect("sorted runs"), c.canonical())).collect()
}

/// `(−q)^i (−q)^{(L+i)/2}` and the doubled `z`-exponent `L+i` of the lattice
/// factor `e^{α/2}(−qz)^{(∂+I)/2}(−q)^I` on `e^{Λ_i + nα}`, `L = 2n+i`.
///
/// The pairing is fixed by `Φ̃*₊,₀|0⟩ = |1⟩` and by homogeneity: the
/// coefficient of `z^m` raises the degree by exactly `m`.
fn lattice_factor(doubled: i32) -> (RatFunc, i64) {
    let i = doubled.rem_euclid(2);
    let e = doubled + i;
    debug_assert!(e % 2 == 0);
    let k = i + e / 2;
    (q_pow(k, if k % 2 == 0 { 1 } else { -1 }), e as i64)
}

/// `Φ̃*₊(z) v`, keeping every output state of degree at most `d`.
pub fn vertex_plus_apply(v: &FockVector, d: i64) -> Result<HalfPowerSeries> {
    let max_in = v.max_degree().unwrap_or(0);
    if max_in > d {
        return Err(Error::CutoffExceeded(d));
    }
    let mut terms: BTreeMap<i64, FockVector> = BTreeMap::new();
    for (s, c) in v.entries() {
        let (lat_c, lat_e) = lattice_factor(s.doubled());
        let target_lattice = s.doubled() + 1;
        for (removed, rest, ca) in annihilation_terms(s.boson()) {
            let base = rest.weight() as i64 + lattice_degree(target_lattice);
            for (nu, cc) in creation_terms(d - base) {
                let e = lat_e - 2 * removed as i64 + 2 * nu.weight() as i64;
                let coeff = &(&(c * &lat_c) * &ca) * &cc;
                let st = BasisState::from_doubled(merge(&rest, &nu), target_lattice);
                terms.entry(e).or_insert_with(|| FockVector::zero(d)).add_term(st, &coeff)?;
            }
        }
    }
    terms.retain(|_, v| !v.is_zero());
    Ok(HalfPowerSeries { cutoff: d, complete_through: 2 * (d - max_in), terms })
}

/// `Σ_{n≤order} aₙ wⁿ` over `ℚ(q)`.
pub(crate) type WSeries = Vec<RatFunc>;

fn series_exp(log: &[RatFunc]) -> WSeries {
    // f = exp(g), n fₙ = Σ_k k g_k f_{n−k}.
    let mut f = vec![RatFunc::one(&q_vars())];
    for n in 1..log.len() {
        let mut acc = RatFunc::zero(&q_vars());
        for k in 1..=n {
            acc = &acc + &(&log[k] * &f[n - k]).scale(&qi(k as i64));
        }
        f.push(acc.scale(&qr(1, n as i64)).canonical());
    }
    f
}

fn series_div(a: &[RatFunc], b: &[RatFunc]) -> WSeries {
    let b0 = b[0].inv().expect("unit constant term");
    let mut h: WSeries = Vec::with_capacity(a.len());
    for n in 0..a.len() {
        let mut acc = a[n].clone();
        for k in 1..=n {
            acc = &acc - &(&b[k] * &h[n - k]);
        }
        h.push((&acc * &b0).canonical());
    }
    h
}

/// The contraction `⟨E₋(z_j) E₊(z_k)⟩ = exp(−Σ q^{2n}wⁿ/(n(1+q^{2n})))`,
/// `w = z_k/z_j`, from `[b_m, b_n] = m δ_{m+n,0}`.
pub(crate) fn contraction(order: usize) -> WSeries {
    let mut log = vec![RatFunc::zero(&q_vars())];
    for n in 1..=order as i32 {
        let den = (&RatFunc::one(&q_vars()) + &q_pow(2 * n, 1)).scale(&qi(n as i64));
        log.push((&q_pow(2 * n, -1) * &den.inv().expect("nonzero")).canonical());
    }
    series_exp(&log)
}

/// `(a x; Q)_∞/(x; Q)_∞ = Σ (a;Q)ₙ/(Q;Q)ₙ xⁿ` with `x = q⁴w`, `Q = q⁴`.
fn q_binomial(a_exp: i32, order: usize) -> WSeries {
    let one = RatFunc::one(&q_vars());
    let mut out = vec![one.clone()];
    let mut c = one.clone();
    for n in 1..=order as i32 {
        let num = &one - &q_pow(a_exp + 4 * (n - 1), 1);
        let den = &one - &q_pow(4 * n, 1);
        c = (&(&c * &num) * &q_pow(4, 1)).checked_div(&den).expect("nonzero").canonical();
        out.push(c.clone());
    }
    out
}

/// `ξ(w) = (q²w;q⁴)_∞/(q⁴w;q⁴)_∞`.
pub fn xi_series(order: usize) -> WSeries {
    q_binomial(-2, order)
}

/// `η(w) = (q⁶w;q⁴)_∞/(q⁴w;q⁴)_∞`.
pub fn eta_series(order: usize) -> WSeries {
    q_binomial(2, order)
}

/// Which series divides each pairwise contraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Normalizer {
    Xi,
    Eta,
}

/// Whether the `z`-prefactor is the one of `Ω` or of `F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Prefactor {
    Omega,
    Fusion,
}

/// `p_j = 0` for `j ≡ N (mod 2)` and 1 otherwise, `j` 1-based.
fn parity(j: usize, n: usize) -> i64 {
    ((n - j) % 2) as i64
}

/// Terms of a multivariate `z`-series with Fock coefficients on one lattice
/// state, keyed by (doubled `z`-exponents, boson partition).
pub(crate) type ZTerms = BTreeMap<(Vec<i64>, Partition), RatFunc>;

fn add_into(t: &mut ZTerms, key: (Vec<i64>, Partition), c: RatFunc) {
    if c.is_zero() {
        return;
    }
    let v = match t.remove(&key) {
        Some(old) => (&old + &c).canonical(),
        None => c,
    };
    if !v.is_zero() {
        t.insert(key, v);
    }
}

/// `prefactor(z)/∏_{j<k} ν(z_k/z_j) · Φ̃*₊(z₁)⋯Φ̃*₊(z_N)|0⟩` on the lattice
/// state `e^{Λ_i + Nα/2}`, normal ordered, keeping boson degree
/// `≤ d − deg(e^{Λ_i+Nα/2})` and each pair series through `w^{order}`.
pub(crate) fn normal_ordered(n: usize, d: i64, norm: Normalizer, pre: Prefactor, order: usize) -> ZTerms {
    let budget = d - lattice_degree(n as i32);
    let mut t = ZTerms::new();
    if budget < 0 {
        return t;
    }
    // Lattice factors, Φ(z_N) acting first on e^{Λ₀}.
    let mut scalar = RatFunc::one(&q_vars());
    let mut zexp = vec![0i64; n];
    for s in 0..n {
        let (c, e) = lattice_factor(s as i32);
        scalar = &scalar * &c;
        zexp[n - 1 - s] += e;
    }
    for (j, e) in zexp.iter_mut().enumerate() {
        let j1 = j + 1;
        *e += match pre {
            Prefactor::Omega => j1 as i64 - n as i64 - parity(j1, n),
            Prefactor::Fusion => n as i64 - j1 as i64 - parity(j1, n),
        };
    }
    t.insert((zexp, Partition::empty()), scalar);
    // Creation exponentials E₊(z_j).
    for j in 0..n {
        let mut next = ZTerms::new();
        for ((e, mu), c) in &t {
            for (nu, cc) in creation_terms(budget - mu.weight() as i64) {
                let mut e2 = e.clone();
                e2[j] += 2 * nu.weight() as i64;
                add_into(&mut next, (e2, merge(mu, &nu)), c * &cc);
            }
        }
        t = next;
    }
    // Pair contractions divided by the normalizer.
    let denom = match norm {
        Normalizer::Xi => xi_series(order),
        Normalizer::Eta => eta_series(order),
    };
    let pair = series_div(&contraction(order), &denom);
    for j in 0..n {
        for k in j + 1..n {
            let mut next = ZTerms::new();
            for ((e, mu), c) in &t {
                for (m, s) in pair.iter().enumerate() {
                    let mut e2 = e.clone();
                    e2[k] += 2 * m as i64;
                    e2[j] -= 2 * m as i64;
                    add_into(&mut next, (e2, mu.clone()), c * s);
                }
            }
            t = next;
        }
    }
    t
}

/// Halves the doubled exponents, failing if any is odd.
fn to_integer_grid(t: ZTerms) -> Result<BTreeMap<(Vec<i64>, Partition), RatFunc>> {
    t.into_iter()
        .map(|((e, mu), c)| {
            if e.iter().any(|x| x % 2 != 0) {
                return Err(Error::InvalidArgument(format!("half-integer power z^{e:?}/2 survives")));
            }
            Ok(((e.iter().map(|x| x / 2).collect(), mu), c))
        })
        .collect()
}

/// `Ω(z₁,…,z_N)` as `{μ ↦ Σ_e c_{e,μ} z^e}` on the state `e^{Λ_i + Nα/2}`,
/// checked to be a symmetric polynomial.
pub fn omega_raw(n: usize, d: i64) -> Result<BTreeMap<Partition, BTreeMap<Vec<i64>, RatFunc>>> {
    if n == 0 {
        return Err(Error::InvalidArgument("Ω needs N ≥ 1".into()));
    }
    let t = to_integer_grid(normal_ordered(n, d, Normalizer::Xi, Prefactor::Omega, d.max(0) as usize + 1))?;
    let mut by_mu: BTreeMap<Partition, BTreeMap<Vec<i64>, RatFunc>> = BTreeMap::new();
    for ((e, mu), c) in t {
        if e.iter().any(|&x| x < 0) {
            return Err(Error::NegativePowerFound(format!("z^{e:?} at b_-{mu}")));
        }
        by_mu.entry(mu).or_default().insert(e, c);
    }
    for (mu, f) in &by_mu {
        for (e, c) in f {
            for a in 0..n.saturating_sub(1) {
                let mut s = e.clone();
                s.swap(a, a + 1);
                if f.get(&s) != Some(c) {
                    return Err(Error::SymmetryViolation(format!("z^{e:?} vs z^{s:?} at b_-{mu}")));
                }
            }
        }
    }
    Ok(by_mu)
}

/// `F₊₊(z₁, z₂)|_{z₂ = q⁻²z₁} = 0` through degree `d`. With
/// [`Fault::FusionEta`] the series is normalized by `ξ` in place of `η`.
pub fn fusion_vanishing_check(n: usize, d: i64, fault: Option<Fault>) -> Result<CheckReport> {
    if n != 2 {
        return Err(Error::InvalidArgument(format!("fusion check is for N = 2, got {n}")));
    }
    let norm = if active(fault, Fault::FusionEta) { Normalizer::Xi } else { Normalizer::Eta };
    let order = d.max(0) as usize + 1;
    let t = to_integer_grid(normal_ordered(n, d, norm, Prefactor::Fusion, order))?;
    let mut sub: BTreeMap<(i64, Partition), RatFunc> = BTreeMap::new();
    for ((e, mu), c) in &t {
        let key = (e[0] + e[1], mu.clone());
        let v = &sub.remove(&key).unwrap_or_else(|| RatFunc::zero(&q_vars())) + &(c * &q_pow(-2 * e[1] as i32, 1));
        sub.insert(key, v.canonical());
    }
    let mut report = CheckReport::new("fusion-vanishing", json!({"n": n, "cutoff": d, "series_order": order}));
    report.count(sub.len());
    if let Some(((m, mu), c)) = sub.iter().find(|(_, c)| !c.is_zero()) {
        return Err(Error::NonVanishing(format!("coefficient of z1^{m} b_-{mu} is {c}")));
    }
    report.note(format!("{} coefficients of F(z1, q^-2 z1) vanish", sub.len()));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::super::space::boson_apply;
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn one_state(parts: &[u32], n: i32, i: u8, d: i64) -> FockVector {
        FockVector::basis(BasisState::new(p(parts), n, i).unwrap(), d).unwrap()
    }

    #[test]
    fn vertex_on_vacuum() {
        let s = vertex_plus_apply(&FockVector::vacuum(0, 6).unwrap(), 6).unwrap();
        assert_eq!(s.coeff(0).unwrap(), FockVector::vacuum(1, 6).unwrap());
        assert_eq!(s.coeff(1).unwrap(), one_state(&[1], 0, 1, 6).scale(&q_pow(2, 1)));
        assert!(s.coeff(-1).unwrap().is_zero());
        assert!(s.on_integer_grid());
        assert!(matches!(s.coeff(7), Err(Error::CutoffExceeded(6))));
    }

    #[test]
    fn vertex_is_homogeneous() {
        let v = one_state(&[2, 1], 1, 0, 8);
        let s = vertex_plus_apply(&v, 8).unwrap();
        for (e, w) in s.terms() {
            assert_eq!(w.homogeneous_degree().unwrap(), Some(v.max_degree().unwrap() + e / 2));
        }
    }

    #[test]
    fn annihilation_part_matches_boson_modes() {
        // exp(c b₁) b₋₁²|0⟩ expanded mode by mode.
        let v = one_state(&[1, 1], 0, 0, 4);
        let c = (&RatFunc::one(&q_vars()) + &q_pow(2, 1)).inv().unwrap().scale(&qi(-1));
        let b1 = boson_apply(1, &v).unwrap();
        let b11 = boson_apply(1, &b1).unwrap();
        let terms = annihilation_terms(&p(&[1, 1]));
        let got = |r: u32| terms.iter().find(|t| t.0 == r).map(|t| t.2.clone()).unwrap();
        assert_eq!(got(0), RatFunc::one(&q_vars()));
        assert_eq!(b1.coeff(&BasisState::new(p(&[1]), 0, 0).unwrap()).scale(&qi(1)) * c.clone(), got(1));
        let half = qr(1, 2);
        assert_eq!((b11.coeff(&BasisState::vacuum(0)) * (&c * &c)).scale(&half), got(2));
    }

    #[test]
    fn contraction_equals_xi() {
        let c = contraction(6);
        let x = xi_series(6);
        assert_eq!(c, x);
        // ξ/η = 1 − q²w.
        let r = series_div(&x, &eta_series(6));
        assert_eq!(r[1], q_pow(2, -1));
        assert!(r[2..].iter().all(RatFunc::is_zero));
    }

    #[test]
    fn normal_order_matches_sequential_application() {
        // Coefficient of z₁^{m₁} z₂^{m₂} in Φ(z₁)Φ(z₂)|0⟩ computed both ways.
        let d = 4;
        let t = to_integer_grid(normal_ordered(2, d, Normalizer::Xi, Prefactor::Fusion, 8)).unwrap();
        // With Ξ-normalization and F's prefactor (trivial at N = 2) the pair
        // series is 1, so undo it by multiplying with the contraction.
        let c = contraction(8);
        let inner = vertex_plus_apply(&FockVector::vacuum(0, d).unwrap(), d).unwrap();
        for m2 in 0..=3i64 {
            let v2 = inner.coeff(m2).unwrap();
            let outer = vertex_plus_apply(&v2, d).unwrap();
            for m1 in -3..=(d - m2 - 1) {
                let direct = outer.coeff(m1).unwrap();
                let mut expect = FockVector::zero(d);
                for ((e, mu), coef) in &t {
                    for (k, ck) in c.iter().enumerate() {
                        if e[0] - k as i64 == m1 && e[1] + k as i64 == m2 {
                            let st = BasisState::from_doubled(mu.clone(), 2);
                            expect = expect.add(&FockVector::basis(st, d).unwrap().scale(&(coef * ck)));
                        }
                    }
                }
                assert_eq!(direct, expect, "m1={m1} m2={m2}");
            }
        }
    }

    #[test]
    fn omega_single_variable() {
        let om = omega_raw(1, 4).unwrap();
        let c = &om[&p(&[1])];
        assert_eq!(c.len(), 1);
        assert_eq!(c[&vec![1]], q_pow(2, 1));
        assert_eq!(om[&Partition::empty()][&vec![0]], RatFunc::one(&q_vars()));
    }

    #[test]
    fn omega_two_variables_is_symmetric_polynomial() {
        let om = omega_raw(2, 4).unwrap();
        assert_eq!(om[&Partition::empty()][&vec![0, 0]], q_pow(2, 1));
        assert!(omega_raw(2, 0).unwrap().is_empty());
    }

    #[test]
    fn fusion_vanishes() {
        fusion_vanishing_check(2, 4, None).unwrap();
        let r = fusion_vanishing_check(2, 0, None).unwrap();
        assert_eq!(r.comparisons, 0);
        assert!(matches!(fusion_vanishing_check(2, 4, Some(Fault::FusionEta)), Err(Error::NonVanishing(_))));
        assert!(fusion_vanishing_check(3, 4, None).is_err());
    }
}
