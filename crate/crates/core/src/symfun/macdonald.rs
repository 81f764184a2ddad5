//! Macdonald polynomials `P_λ(z;p,t)`, their power-sum forms and the
//! Cauchy-type duality.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use serde_json::json;

use super::operator::{apply_to_numerators, eigenvalue, operator_column, OperatorPath};
use super::partition::{dominance_leq, partitions_of, partitions_up_to, Partition};
use super::sympoly::{powersum_in_monomials, pt_vars, to_powersum, PowerSumPoly, SymPoly};
use crate::error::{Error, Result};
use crate::exact_algebra::{poly_lcm, RatFunc, SparsePoly, Q};
use crate::fault::{active, Fault};
use crate::report::CheckReport;

/// Order in which the triangular system for `P_λ` is solved. Any linear
/// extension of dominance gives the same answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LinearExtension {
    DescendingLex,
    /// Increasing `Σ(i−1)λ_i`, ties in ascending lexicographic order.
    NStatistic,
}

fn p_cache() -> &'static Mutex<HashMap<(Partition, usize), SymPoly>> {
    static C: OnceLock<Mutex<HashMap<(Partition, usize), SymPoly>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `P_λ(z₁..z_N; p,t)` in the monomial basis (memoized).
#[allow(non_snake_case)]
pub fn macdonald_P(lam: &Partition, big_n: usize) -> Result<SymPoly> {
    let key = (lam.clone(), big_n);
    if let Some(p) = p_cache().lock().expect("cache lock").get(&key) {
        return Ok(p.clone());
    }
    let p = macdonald_P_ordered(lam, big_n, LinearExtension::DescendingLex)?;
    p_cache().lock().expect("cache lock").insert(key, p.clone());
    Ok(p)
}

/// Solves `(D_N¹ − E_λ) P = 0` with `P = m_λ + lower terms`, visiting the
/// partitions below `λ` in the given order.
#[allow(non_snake_case)]
pub fn macdonald_P_ordered(lam: &Partition, big_n: usize, order: LinearExtension) -> Result<SymPoly> {
    lam.check_len(big_n)?;
    let field = pt_vars();
    let mut basis: Vec<Partition> = partitions_of(lam.weight(), Some(big_n))
        .into_iter()
        .filter(|mu| dominance_leq(mu, lam).expect("same weight"))
        .collect();
    if order == LinearExtension::NStatistic {
        basis.sort_by(|a, b| a.n_statistic().cmp(&b.n_statistic()).then(a.cmp(b)));
    }
    debug_assert_eq!(&basis[0], lam);
    if basis.len() == 1 {
        return SymPoly::monomial(big_n, lam, &field);
    }
    let e_lam = eigenvalue(1, big_n, lam)?;
    let cols: Vec<SymPoly> =
        basis.iter().map(|mu| operator_column(1, big_n, mu, OperatorPath::Expansion)).collect::<Result<_>>()?;
    let mut u: Vec<RatFunc> = vec![RatFunc::one(&field)];
    for (i, nu) in basis.iter().enumerate().skip(1) {
        let mut rhs = RatFunc::zero(&field);
        for (j, uj) in u.iter().enumerate() {
            let d = cols[j].coeff(nu);
            if !d.is_zero() {
                rhs = &rhs + &(&d * uj);
            }
        }
        let pivot = &e_lam - &cols[i].coeff(nu);
        if pivot.is_zero() {
            return Err(Error::EigenvalueCollision(format!("m{nu} in P{lam}")));
        }
        u.push(rhs.checked_div(&pivot)?.canonical());
    }
    SymPoly::from_coeffs(big_n, &field, basis.into_iter().zip(u))
}

/// `P̃_λ(s;p,t)`: the power-sum form of `P_λ`, computed in `|λ|` and
/// `|λ|+1` variables and required to agree.
pub fn macdonald_powersum(lam: &Partition) -> Result<PowerSumPoly> {
    let w = lam.weight() as usize;
    let a = to_powersum(&macdonald_P(lam, w.max(lam.len()))?)?;
    let b = to_powersum(&macdonald_P(lam, w + 1)?)?;
    if a != b {
        return Err(Error::StabilityFailure(lam.to_string()));
    }
    Ok(a)
}

/// The same form with the roles of `p` and `t` exchanged.
pub fn swap_pt(f: &RatFunc) -> RatFunc {
    f.swap_vars(0, 1)
}

/// Coefficients `c_λ` with `f = Σ c_λ P_λ`.
pub fn expand_in_macdonald(f: &SymPoly) -> Result<BTreeMap<Partition, RatFunc>> {
    let mut rest = f.clone();
    let mut out = BTreeMap::new();
    // The lexicographically largest remaining partition has its final
    // coefficient, since P_ν only adds terms below ν.
    while let Some((nu, c)) = rest.coeffs().iter().next_back().map(|(a, b)| (a.clone(), b.clone())) {
        let p = macdonald_P(&nu, f.n())?;
        let p = if p.field() == f.field() { p } else { p.map_coeffs(|x| x.embed(f.field()).expect("field embeds")) };
        rest = rest.sub(&p.scale(&c));
        out.insert(nu, c);
    }
    let mut back = SymPoly::zero(f.n(), f.field());
    for (lam, c) in &out {
        back = back.add(&macdonald_P(lam, f.n())?.scale(c));
    }
    if &back != f {
        return Err(Error::IdentityViolation { identity: "Macdonald expansion".into(), witness: f.to_string() });
    }
    Ok(out)
}

/// `D_N^n P_λ = e_n(t^{N−1}p^{λ₁}, …) P_λ` for all `λ` with `|λ| ≤ max_weight`,
/// `l(λ) ≤ N` and `0 ≤ n ≤ N`.
pub fn eigenvalue_check(big_n: usize, max_weight: u32) -> Result<CheckReport> {
    let mut rep = CheckReport::new("macdonald-eigenvalues", json!({ "n": big_n, "max_weight": max_weight }));
    for lam in partitions_up_to(max_weight, Some(big_n)) {
        let p = macdonald_P(&lam, big_n)?;
        // Compare numerators over the common denominator of P_λ.
        let (_, nums) = p.common_denominator();
        for n in 0..=big_n {
            let lhs = apply_to_numerators(n, big_n, &p, &nums, OperatorPath::Direct)?;
            let e = eigenvalue(n, big_n, &lam)?;
            let e = e.as_poly().expect("eigenvalues are polynomials");
            let mismatch = nums.keys().chain(lhs.keys()).find(|mu| {
                let l = lhs.get(*mu).cloned().unwrap_or_else(|| SparsePoly::zero(e.vars()));
                let r = nums.get(*mu).map(|c| c * e).unwrap_or_else(|| SparsePoly::zero(e.vars()));
                l != r
            });
            if let Some(mu) = mismatch {
                return Err(Error::IdentityViolation {
                    identity: format!("D_{big_n}^{n} P = e_{n} P"),
                    witness: format!("lambda = {lam}, coefficient of m{mu}"),
                });
            }
            rep.count(1);
        }
    }
    Ok(rep)
}

/// Expands both sides of
/// `exp(Σ (−1)^{k−1} (s_k/k) Σ_j w_j^k) = Σ_λ P_λ(w;p,t) P̃_{λ′}(s;t,p)`
/// in `N` variables `w` through degree `max_weight` and compares the
/// coefficients of `s^ρ m_ν(w)`.
pub fn duality_identity_check(
    big_n: usize,
    w_count: usize,
    max_weight: u32,
    fault: Option<Fault>,
) -> Result<CheckReport> {
    if w_count != big_n {
        return Err(Error::InvalidArgument(format!("w_count = {w_count} must equal N = {big_n}")));
    }
    let field = pt_vars();
    let mut rep = CheckReport::new("duality", json!({ "n": big_n, "max_weight": max_weight }));
    for d in 0..=max_weight {
        // (ρ, ν) ↦ coefficient of s^ρ m_ν(w)
        let mut lhs: BTreeMap<(Partition, Partition), Q> = BTreeMap::new();
        for rho in partitions_of(d, None) {
            let mut c = Q::from_integer(1.into());
            for (k, &m) in rho.multiplicities().iter().enumerate() {
                let k = k as i64 + 1;
                let base = Q::new(if k % 2 == 1 { 1.into() } else { (-1).into() }, k.into());
                for i in 1..=m {
                    c = c * &base / Q::from_integer((i as i64).into());
                }
            }
            for (nu, r) in powersum_in_monomials(&rho, big_n) {
                lhs.insert((rho.clone(), nu), &c * r);
            }
        }
        // Each λ contributes num_λ(ρ, ν) / den_λ; everything is compared
        // after multiplying by the lcm of the den_λ.
        type Scaled = (SparsePoly, BTreeMap<(Partition, Partition), SparsePoly>);
        let mut parts: Vec<Scaled> = Vec::new();
        for lam in partitions_of(d, Some(big_n)) {
            let pw = macdonald_P(&lam, big_n)?;
            let dual = macdonald_powersum(&lam.conjugate())?;
            let dual = if active(fault, Fault::DualityNoSwap) { dual } else { dual.map_coeffs(swap_pt) };
            let (la, na) = dual.common_denominator();
            let (lb, nb) = pw.common_denominator();
            let mut prod = BTreeMap::new();
            for (rho, a) in &na {
                for (nu, b) in &nb {
                    prod.insert((rho.clone(), nu.clone()), a * b);
                }
            }
            parts.push((&la * &lb, prod));
        }
        let mut big_l = SparsePoly::one(&field);
        for (l, _) in &parts {
            if big_l.exact_div(l).is_err() {
                big_l = poly_lcm(&big_l, l);
            }
        }
        let mut rhs: BTreeMap<(Partition, Partition), SparsePoly> = BTreeMap::new();
        for (l, prod) in parts {
            let f = big_l.exact_div(&l).expect("lcm is a multiple");
            for (key, v) in prod {
                let slot = rhs.entry(key).or_insert_with(|| SparsePoly::zero(&field));
                *slot = &*slot + &(&v * &f);
            }
        }
        let keys: std::collections::BTreeSet<_> = lhs.keys().chain(rhs.keys()).cloned().collect();
        for key in keys {
            let l = big_l.scale(&lhs.get(&key).cloned().unwrap_or_else(|| Q::from_integer(0.into())));
            let r = rhs.get(&key).cloned().unwrap_or_else(|| SparsePoly::zero(&field));
            if l != r {
                let r = RatFunc::new(r, big_l.clone())?;
                return Err(Error::IdentityViolation {
                    identity: "duality".into(),
                    witness: format!(
                        "s-monomial {} with m{}(w) at weight {d}: {} vs {r}",
                        key.0,
                        key.1,
                        lhs.get(&key).cloned().unwrap_or_else(|| Q::from_integer(0.into()))
                    ),
                });
            }
            rep.count(1);
        }
    }
    Ok(rep)
}
