//! The level-0 action `π^{(N)}` on `V^{⊗N}`-valued Laurent polynomials.
//!
//! Component `w` of a state is the coefficient of the site vector whose bit
//! `N−1−j` gives site `j` (`0 = v₊`, `1 = v₋`).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exact_algebra::{qi, SparsePoly};
use crate::fault::{active, Fault};
use crate::hecke::{apply_Y, hecke_vars, LaurentVecPoly, Sign};
use crate::report::CheckReport;

type State = Vec<SparsePoly>;

/// Sparse `2×2` matrices with entries `±q^k`, encoded as `(row, col, q exponent)`.
#[derive(Clone, Copy)]
enum Local {
    E,
    F,
    T,
    TInv,
}

impl Local {
    fn entries(self) -> &'static [(usize, usize, i32)] {
        match self {
            Local::E => &[(0, 1, 0)],
            Local::F => &[(1, 0, 0)],
            Local::T => &[(0, 0, 1), (1, 1, -1)],
            Local::TInv => &[(0, 0, -1), (1, 1, 1)],
        }
    }
}

struct Level0 {
    n: usize,
    drop_prefactor: bool,
}

impl Level0 {
    fn q(&self, k: i32) -> SparsePoly {
        let vars = hecke_vars(self.n);
        let mut e = vec![0; self.n + 2];
        e[self.n] = k;
        SparsePoly::monomial(&vars, e, qi(1))
    }

    fn zero(&self) -> State {
        vec![SparsePoly::zero(&hecke_vars(self.n)); 1 << self.n]
    }

    fn site(&self, j: usize, m: Local, v: &State) -> State {
        let shift = self.n - 1 - j;
        let mut out = self.zero();
        for (w, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let b = (w >> shift) & 1;
            for &(r, col, k) in m.entries() {
                if col == b {
                    let target = (w & !(1 << shift)) | (r << shift);
                    out[target] = &out[target] + &c.mul_monomial(&self.exp_q(k), &qi(1));
                }
            }
        }
        out
    }

    fn exp_q(&self, k: i32) -> Vec<i32> {
        let mut e = vec![0; self.n + 2];
        e[self.n] = k;
        e
    }

    fn sites(&self, ops: &[(usize, Local)], v: &State) -> State {
        ops.iter().rev().fold(v.clone(), |acc, &(j, m)| self.site(j, m, &acc))
    }

    fn y(&self, j: usize, sign: Sign, v: &State) -> Result<State> {
        v.iter().map(|c| Ok(apply_Y(j + 1, sign, &LaurentVecPoly::new(self.n, c)?)?.poly().clone())).collect()
    }

    fn scale(&self, k: i32, v: &State) -> State {
        v.iter().map(|c| c.mul_monomial(&self.exp_q(k), &qi(1))).collect()
    }

    /// `Σ_j q^{N−1} Y_j⁻¹ π_j(f₁) π_{j+1}(t₁⁻¹)⋯π_N(t₁⁻¹)`.
    fn e0(&self, v: &State) -> Result<State> {
        let mut out = self.zero();
        for j in 0..self.n {
            let mut ops = vec![(j, Local::F)];
            ops.extend((j + 1..self.n).map(|k| (k, Local::TInv)));
            let w = self.y(j, Sign::Minus, &self.sites(&ops, v))?;
            out = add(&out, &w);
        }
        Ok(if self.drop_prefactor { out } else { self.scale(self.n as i32 - 1, &out) })
    }

    /// `Σ_j q^{1−N} Y_j π₁(t₁)⋯π_{j−1}(t₁) π_j(e₁)`.
    fn f0(&self, v: &State) -> Result<State> {
        let mut out = self.zero();
        for j in 0..self.n {
            let mut ops: Vec<(usize, Local)> = (0..j).map(|k| (k, Local::T)).collect();
            ops.push((j, Local::E));
            out = add(&out, &self.y(j, Sign::Plus, &self.sites(&ops, v))?);
        }
        Ok(self.scale(1 - self.n as i32, &out))
    }

    fn all(&self, m: Local, v: &State) -> State {
        let ops: Vec<(usize, Local)> = (0..self.n).map(|j| (j, m)).collect();
        self.sites(&ops, v)
    }

    /// `Δ′(e₁) = e₁⊗t₁ + 1⊗e₁` iterated.
    fn e1(&self, v: &State) -> State {
        (0..self.n).fold(self.zero(), |acc, j| {
            let mut ops = vec![(j, Local::E)];
            ops.extend((j + 1..self.n).map(|k| (k, Local::T)));
            add(&acc, &self.sites(&ops, v))
        })
    }

    /// `Δ′(f₁) = f₁⊗1 + t₁⁻¹⊗f₁` iterated.
    fn f1(&self, v: &State) -> State {
        (0..self.n).fold(self.zero(), |acc, j| {
            let mut ops: Vec<(usize, Local)> = (0..j).map(|k| (k, Local::TInv)).collect();
            ops.push((j, Local::F));
            add(&acc, &self.sites(&ops, v))
        })
    }
}

fn add(a: &State, b: &State) -> State {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &State, b: &State) -> State {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn show(v: &State) -> String {
    let parts: Vec<String> =
        v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(w, c)| format!("[{w}] {c}")).collect();
    parts.join("; ")
}

const TERMS: usize = 2;

/// Chevalley relations of `π^{(N)}` on random states. With
/// [`Fault::Level0NoPrefactor`] `π(e₀)` loses its `q^{N−1}`.
pub fn level0_relations_check(n: usize, trials: usize, seed: u64, fault: Option<Fault>) -> Result<CheckReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("level-0 action needs N ≥ 1".into()));
    }
    let l = Level0 { n, drop_prefactor: active(fault, Fault::Level0NoPrefactor) };
    let mut report = CheckReport::new("level0-relations", json!({"n": n, "trials": trials, "seed": seed}));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let qq = &l.q(1) - &l.q(-1);
    for _ in 0..trials {
        let v: State = (0..1 << n).map(|_| LaurentVecPoly::random(n, TERMS, &mut rng).poly().clone()).collect();
        let fail = |rel: &str| Error::RelationViolation { relation: rel.into(), witness: show(&v) };
        let (t0, t0_inv) = (Local::TInv, Local::T);
        if l.all(t0, &l.all(Local::T, &v)) != v {
            return Err(fail("t₀t₁ = 1"));
        }
        let e0 = l.e0(&v)?;
        let f0 = l.f0(&v)?;
        if l.all(t0, &l.e0(&l.all(t0_inv, &v))?) != l.scale(2, &e0) {
            return Err(fail("t₀e₀t₀⁻¹ = q²e₀"));
        }
        if l.all(t0, &l.f0(&l.all(t0_inv, &v))?) != l.scale(-2, &f0) {
            return Err(fail("t₀f₀t₀⁻¹ = q⁻²f₀"));
        }
        let comm = sub(&l.e0(&f0)?, &l.f0(&e0)?);
        let comm: State = comm.iter().map(|c| c * &qq).collect();
        if comm != sub(&l.all(t0, &v), &l.all(t0_inv, &v)) {
            return Err(fail("[e₀, f₀] = (t₀ − t₀⁻¹)/(q − q⁻¹)"));
        }
        if l.e0(&l.f1(&v))? != l.f1(&e0) {
            return Err(fail("[e₀, f₁] = 0"));
        }
        if l.e1(&f0) != l.f0(&l.e1(&v))? {
            return Err(fail("[e₁, f₀] = 0"));
        }
        let comm: State = sub(&l.e1(&l.f1(&v)), &l.f1(&l.e1(&v))).iter().map(|c| c * &qq).collect();
        if comm != sub(&l.all(Local::T, &v), &l.all(Local::TInv, &v)) {
            return Err(fail("[e₁, f₁] = (t₁ − t₁⁻¹)/(q − q⁻¹)"));
        }
        if l.all(Local::T, &l.e1(&l.all(Local::TInv, &v))) != l.scale(2, &l.e1(&v)) {
            return Err(fail("t₁e₁t₁⁻¹ = q²e₁"));
        }
        report.count(8);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_hold_for_small_n() {
        for n in 1..=2 {
            level0_relations_check(n, 2, 7, None).unwrap();
        }
    }

    #[test]
    fn dropped_prefactor_breaks_commutator() {
        let err = level0_relations_check(2, 1, 7, Some(Fault::Level0NoPrefactor)).unwrap_err();
        assert!(matches!(err, Error::RelationViolation { ref relation, .. } if relation.contains("[e₀, f₀]")), "{err}");
    }

    #[test]
    fn single_site_e0_is_shifted_f1() {
        let l = Level0 { n: 1, drop_prefactor: false };
        let vars = hecke_vars(1);
        let z2 = LaurentVecPoly::monomial(1, &[2], 1).poly().clone();
        let out = l.e0(&vec![z2.clone(), SparsePoly::zero(&vars)]).unwrap();
        assert!(out[0].is_zero());
        // Y₁⁻¹ z₁² = p⁻² z₁² on a single site.
        assert_eq!(out[1], z2.mul_monomial(&[0, 0, -2], &qi(1)));
    }
}
