//! Highest weight vectors `ω_{λ,N}`: extraction from `Ω(z)` and the
//! closed form in power sums.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::json;

use super::space::{lattice_degree, q_pow, q_vars, BasisState, FockVector};
use super::vertex::omega_raw;
use crate::error::{Error, Result};
use crate::exact_algebra::{RatFunc, SparsePoly};
use crate::fault::{active, Fault};
use crate::report::CheckReport;
use crate::symfun::{macdonald_P, macdonald_powersum, partitions_up_to, Partition};

/// `value · ε^k` with `ε² = −q` and `k ∈ {0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsScalar {
    pub value: RatFunc,
    pub eps: bool,
}

impl EpsScalar {
    pub fn new(value: RatFunc) -> Self {
        EpsScalar { value, eps: false }
    }

    /// `(−q)^{k/2}`.
    pub fn minus_q_half_power(k: i64) -> Self {
        let half = k.div_euclid(2) as i32;
        let value = q_pow(half, if half % 2 == 0 { 1 } else { -1 });
        EpsScalar { value, eps: k.rem_euclid(2) == 1 }
    }

    pub fn mul(&self, o: &EpsScalar) -> EpsScalar {
        let mut value = &self.value * &o.value;
        if self.eps && o.eps {
            value = &value * &q_pow(1, -1);
        }
        EpsScalar { value: value.canonical(), eps: self.eps ^ o.eps }
    }

    pub fn inv(&self) -> Result<EpsScalar> {
        let v = self.value.inv()?;
        // ε⁻¹ = ε/(−q).
        Ok(if self.eps {
            EpsScalar { value: (&v * &q_pow(-1, -1)).canonical(), eps: true }
        } else {
            EpsScalar { value: v, eps: false }
        })
    }
}

impl fmt::Display for EpsScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.eps {
            write!(f, "({})*eps", self.value)
        } else {
            write!(f, "{}", self.value)
        }
    }
}

impl Serialize for EpsScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        json!({"value": self.value.to_string(), "eps_power": self.eps as u8}).serialize(s)
    }
}

/// `ω = scalar · vector`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledVector {
    pub scalar: EpsScalar,
    pub vector: FockVector,
}

impl Serialize for ScaledVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        json!({"scalar": self.scalar, "vector": self.vector}).serialize(s)
    }
}

/// A `ℚ(p,t)` function at `p = q^{pe}`, `t = q^{te}`.
fn specialize_pt(f: &RatFunc, pe: i32, te: i32) -> Result<RatFunc> {
    let map = |x: &SparsePoly| {
        SparsePoly::from_terms(&q_vars(), x.terms().map(|(e, c)| (vec![pe * e[0] + te * e[1]], c.clone())))
    };
    RatFunc::new(map(f.num()), map(f.den()))
}

/// `(λ₁, …)` with `l(λ) ≤ N` and `|λ| + (N² − i)/4 ≤ d`.
fn check_label(lam: &Partition, n: usize, d: i64) -> Result<i64> {
    lam.check_len(n)?;
    let deg = lam.weight() as i64 + lattice_degree(n as i32);
    if deg > d {
        return Err(Error::CutoffExceeded(d));
    }
    Ok(deg)
}

/// `(−q)^M P̃_{λ′}(s; q², q⁴) ⊗ e^{Λ_i + Nα/2}` with
/// `s_n = (−1)^{n−1} q^{2n} b₋ₙ` and `M = N(N−1)/2 + (3/2)⌊N/2⌋`.
/// With [`Fault::HwvNoSwap`] the arguments become `(q⁴, q²)`.
pub fn hwv_closed_form(lam: &Partition, n: usize, d: i64, fault: Option<Fault>) -> Result<ScaledVector> {
    check_label(lam, n, d)?;
    let (pe, te) = if active(fault, Fault::HwvNoSwap) { (4, 2) } else { (2, 4) };
    let dual = lam.conjugate();
    let coeffs: BTreeMap<Partition, RatFunc> = if dual.is_empty() {
        [(Partition::empty(), RatFunc::one(&q_vars()))].into()
    } else {
        macdonald_powersum(&dual)?
            .coeffs()
            .iter()
            .map(|(rho, c)| Ok((rho.clone(), specialize_pt(c, pe, te)?)))
            .collect::<Result<_>>()?
    };
    let mut vector = FockVector::zero(d);
    for (rho, c) in coeffs {
        let w = rho.weight() as i32;
        let sign = if (w - rho.len() as i32) % 2 == 0 { 1 } else { -1 };
        vector.add_term(BasisState::from_doubled(rho, n as i32), &(&c * &q_pow(2 * w, sign)))?;
    }
    let nn = n as i64;
    let twice_m = nn * (nn - 1) + 3 * (nn / 2);
    Ok(ScaledVector { scalar: EpsScalar::minus_q_half_power(twice_m), vector })
}

/// Monomial coefficients of `P_ν(z₁..z_N; q⁴, q²)`.
fn specialized_p(
    nu: &Partition,
    n: usize,
    cache: &mut BTreeMap<Partition, BTreeMap<Partition, RatFunc>>,
) -> Result<BTreeMap<Partition, RatFunc>> {
    if let Some(v) = cache.get(nu) {
        return Ok(v.clone());
    }
    let p = macdonald_P(nu, n)?;
    let v: BTreeMap<Partition, RatFunc> =
        p.coeffs().iter().map(|(mu, c)| Ok((mu.clone(), specialize_pt(c, 4, 2)?))).collect::<Result<_>>()?;
    cache.insert(nu.clone(), v.clone());
    Ok(v)
}

/// `ω_{λ,N}` from `Ω(z) = Σ_λ P_λ(z; q⁴, q²) ω_{λ,N}` for every `λ` with
/// `|λ| + (N² − i)/4 ≤ d`.
pub fn omega_series(n: usize, d: i64) -> Result<BTreeMap<Partition, FockVector>> {
    let raw = omega_raw(n, d)?;
    let mut cache = BTreeMap::new();
    let mut out: BTreeMap<Partition, FockVector> = BTreeMap::new();
    for (mu, f) in raw {
        // Monomial coefficients of the symmetric polynomial at b_{−μ}.
        let mut rest: BTreeMap<Partition, RatFunc> = BTreeMap::new();
        for (e, c) in &f {
            if e.windows(2).all(|w| w[0] >= w[1]) {
                let lam = Partition::from_padded(&e.iter().map(|&x| x as u32).collect::<Vec<_>>())?;
                rest.insert(lam, c.clone());
            }
        }
        while let Some((nu, c)) = rest.iter().next_back().map(|(a, b)| (a.clone(), b.clone())) {
            for (m, pc) in specialized_p(&nu, n, &mut cache)? {
                let v = (&rest.get(&m).cloned().unwrap_or_else(|| RatFunc::zero(&q_vars())) - &(&c * &pc)).canonical();
                if v.is_zero() {
                    rest.remove(&m);
                } else {
                    rest.insert(m, v);
                }
            }
            if rest.contains_key(&nu) {
                return Err(Error::IdentityViolation {
                    identity: "Macdonald expansion of Ω".into(),
                    witness: nu.to_string(),
                });
            }
            out.entry(nu)
                .or_insert_with(|| FockVector::zero(d))
                .add_term(BasisState::from_doubled(mu.clone(), n as i32), &c)?;
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

fn labels(n: usize, max_weight: u32) -> Vec<Partition> {
    partitions_up_to(max_weight, Some(n))
}

/// `ω_{λ,N}` from `Ω` equals `κ · hwv_closed_form(λ, N)` for one `κ`
/// independent of `λ`, for all `|λ| ≤ max_weight`.
pub fn hwv_consistency_check(n: usize, max_weight: u32, d: i64, fault: Option<Fault>) -> Result<CheckReport> {
    let top = max_weight as i64 + lattice_degree(n as i32);
    if top > d {
        return Err(Error::CutoffExceeded(d));
    }
    let extracted = omega_series(n, d)?;
    let mut report = CheckReport::new("hwv-consistency", json!({"n": n, "max_weight": max_weight, "cutoff": d}));
    let mut kappa: Option<(Partition, EpsScalar)> = None;
    for lam in labels(n, max_weight) {
        let omega = extracted.get(&lam).cloned().unwrap_or_else(|| FockVector::zero(d));
        let closed = hwv_closed_form(&lam, n, d, fault)?;
        let ratio = omega.ratio_to(&closed.vector).ok_or_else(|| {
            Error::MismatchBeyondScalar(format!("λ={lam}, |λ|={}: {omega} vs {}", lam.weight(), closed.vector))
        })?;
        let k = EpsScalar::new(ratio).mul(&closed.scalar.inv()?);
        match &kappa {
            None => kappa = Some((lam.clone(), k)),
            Some((first, k0)) if *k0 != k => {
                return Err(Error::MismatchBeyondScalar(format!(
                    "λ={lam}, |λ|={}: scalar {k} differs from {k0} at λ={first}",
                    lam.weight()
                )))
            }
            Some(_) => {}
        }
        let deg = omega.homogeneous_degree()?;
        if deg != Some(lam.weight() as i64 + lattice_degree(n as i32)) {
            return Err(Error::InhomogeneousVector(format!("ω_{lam},{n} has degree {deg:?}")));
        }
        report.count(closed.vector.len() + 1);
    }
    if let Some((_, k)) = kappa {
        report.note(format!("scalar {k} (eps^2 = -q)"));
    }
    Ok(report)
}

/// `hwv_closed_form(λ, N)` is homogeneous of degree `|λ| + (N² − i)/4`.
pub fn degree_check(lam: &Partition, n: usize, d: i64) -> Result<CheckReport> {
    let want = check_label(lam, n, d)?;
    let v = hwv_closed_form(lam, n, d, None)?;
    let got = v.vector.homogeneous_degree()?;
    if got != Some(want) {
        return Err(Error::InhomogeneousVector(format!("degree {got:?}, expected {want}")));
    }
    let mut report = CheckReport::new("hwv-degree", json!({"lambda": lam.parts(), "n": n, "cutoff": d}));
    report.count(v.vector.len());
    report.note(format!("degree {want}"));
    Ok(report)
}

/// Rank over `ℚ(q)` by fraction-free elimination.
fn rank(mut a: Vec<Vec<RatFunc>>) -> usize {
    let (r, c) = (a.len(), a.first().map_or(0, Vec::len));
    let mut rank = 0;
    for col in 0..c {
        let Some(p) = (rank..r).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(rank, p);
        for i in rank + 1..r {
            if a[i][col].is_zero() {
                continue;
            }
            let (piv, f) = (a[rank][col].clone(), a[i][col].clone());
            let (top, rest) = a.split_at_mut(i);
            for (x, y) in rest[0][col..].iter_mut().zip(&top[rank][col..]) {
                *x = (&(&*x * &piv) - &(y * &f)).canonical();
            }
        }
        rank += 1;
    }
    rank
}

/// The extracted `ω_{λ,N}` of degree `d` in sector `i` are linearly
/// independent. `N = 0` contributes the vacuum.
pub fn independence_check(i: u8, d: i64) -> Result<CheckReport> {
    if i > 1 {
        return Err(Error::InvalidArgument(format!("sector must be 0 or 1, got {i}")));
    }
    let mut vectors: Vec<FockVector> = Vec::new();
    if i == 0 && d == 0 {
        vectors.push(FockVector::vacuum(0, d)?);
    }
    for n in (if i == 0 { 2 } else { 1 }..).step_by(2) {
        if lattice_degree(n as i32) > d {
            break;
        }
        for (lam, v) in omega_series(n, d)? {
            if lam.weight() as i64 + lattice_degree(n as i32) == d {
                vectors.push(v);
            }
        }
    }
    let states: Vec<BasisState> = {
        let mut s: Vec<BasisState> = vectors.iter().flat_map(|v| v.entries().keys().cloned()).collect();
        s.sort();
        s.dedup();
        s
    };
    let rows: Vec<Vec<RatFunc>> = vectors.iter().map(|v| states.iter().map(|s| v.coeff(s)).collect()).collect();
    let r = rank(rows);
    if r != vectors.len() {
        return Err(Error::IdentityViolation {
            identity: "linear independence".into(),
            witness: format!("rank {r} < {}", vectors.len()),
        });
    }
    let mut report = CheckReport::new("hwv-independence", json!({"sector": i, "degree": d}));
    report.count(vectors.len());
    report.note(format!("{} vectors of rank {r}", vectors.len()));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn state(parts: &[u32], doubled: i32, d: i64) -> FockVector {
        FockVector::basis(BasisState::from_doubled(p(parts), doubled), d).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        let v = hwv_closed_form(&p(&[]), 1, 6, None).unwrap();
        assert_eq!(v.vector, FockVector::vacuum(1, 6).unwrap());
        assert_eq!(v.scalar, EpsScalar::new(RatFunc::one(&q_vars())));
        let v = hwv_closed_form(&p(&[1]), 1, 6, None).unwrap();
        assert_eq!(v.vector, state(&[1], 1, 6).scale(&q_pow(2, 1)));
        let v = hwv_closed_form(&p(&[]), 2, 6, None).unwrap();
        assert_eq!(v.vector, state(&[], 2, 6));
        // M = 5/2: (−q)^{5/2} = q² ε.
        assert_eq!(v.scalar, EpsScalar { value: q_pow(2, 1), eps: true });
        assert!(hwv_closed_form(&p(&[1, 1]), 1, 6, None).is_err());
        assert!(matches!(hwv_closed_form(&p(&[3]), 2, 3, None), Err(Error::CutoffExceeded(3))));
    }

    #[test]
    fn eps_arithmetic() {
        let e = EpsScalar::minus_q_half_power(1);
        assert_eq!(e.mul(&e), EpsScalar::minus_q_half_power(2));
        assert_eq!(e.mul(&e.inv().unwrap()), EpsScalar::new(RatFunc::one(&q_vars())));
        assert_eq!(EpsScalar::minus_q_half_power(-1), e.inv().unwrap());
    }

    #[test]
    fn degrees() {
        for (lam, n, want) in [(vec![], 1, 0), (vec![1], 1, 1), (vec![], 2, 1), (vec![2, 1], 3, 5)] {
            let r = degree_check(&p(&lam), n, 6).unwrap();
            assert_eq!(r.notes, vec![format!("degree {want}")]);
        }
    }

    #[test]
    fn extracted_single_variable() {
        let om = omega_series(1, 4).unwrap();
        assert_eq!(om[&p(&[])], FockVector::vacuum(1, 4).unwrap());
        assert_eq!(om[&p(&[1])], state(&[1], 1, 4).scale(&q_pow(2, 1)));
        assert_eq!(om.len(), 5);
    }

    #[test]
    fn extracted_two_variables_vacuum_label() {
        let om = omega_series(2, 3).unwrap();
        assert_eq!(om[&p(&[])], state(&[], 2, 3).scale(&q_pow(2, 1)));
    }

    #[test]
    fn consistency_scalars() {
        let r = hwv_consistency_check(1, 4, 6, None).unwrap();
        assert_eq!(r.notes, vec!["scalar 1 (eps^2 = -q)".to_string()]);
        let r = hwv_consistency_check(2, 3, 6, None).unwrap();
        let k = EpsScalar { value: q_pow(-1, -1), eps: true };
        assert_eq!(r.notes, vec![format!("scalar {k} (eps^2 = -q)")]);
    }

    #[test]
    fn missing_swap_is_detected() {
        // P_{(1^m)} = e_m does not depend on (p,t), so N = 1 cannot see the swap.
        hwv_consistency_check(1, 4, 6, Some(Fault::HwvNoSwap)).unwrap();
        let err = hwv_consistency_check(2, 2, 6, Some(Fault::HwvNoSwap)).unwrap_err();
        assert!(matches!(&err, Error::MismatchBeyondScalar(w) if w.contains("|λ|=2")), "{err}");
    }

    #[test]
    fn independence() {
        for d in 0..=3 {
            independence_check(0, d).unwrap();
            independence_check(1, d).unwrap();
        }
    }
}
