//! `S`, `R̃(z)`, `R̄(x)` on `V ⊗ V` and the Yang-Baxter equation.
//!
//! Basis order: `v₊⊗v₊, v₊⊗v₋, v₋⊗v₊, v₋⊗v₋`; columns are images.

use serde_json::json;

use crate::error::{Error, Result};
use crate::exact_algebra::{Matrix, RatFunc, Vars};
use crate::fault::{active, Fault};
use crate::report::CheckReport;

/// `["q"]`.
pub fn q_vars() -> Vars {
    Vars::new(["q"])
}

/// A `4×4` matrix whose entries depend on `q` and one spectral variable,
/// kept as a recipe so the variable can be specialized.
#[derive(Clone, Copy)]
pub struct SpectralMatrix {
    pub name: &'static str,
    pub var: &'static str,
    build: fn(&RatFunc, Option<Fault>) -> Matrix<RatFunc>,
    fault: Option<Fault>,
}

impl SpectralMatrix {
    /// Entries at a spectral value whose variables include `q`.
    pub fn at(&self, value: &RatFunc) -> Matrix<RatFunc> {
        (self.build)(value, self.fault)
    }

    /// Entries over `["q", var]`.
    pub fn matrix(&self) -> Matrix<RatFunc> {
        let vars = Vars::new(["q", self.var]);
        self.at(&RatFunc::var(&vars, self.var).expect("spectral variable"))
    }
}

impl std::fmt::Debug for SpectralMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}({})\n{}", self.name, self.var, self.matrix())
    }
}

fn q_of(v: &RatFunc) -> RatFunc {
    RatFunc::var(v.vars(), "q").expect("variables include q")
}

fn int(v: &RatFunc, k: i64) -> RatFunc {
    RatFunc::from_int(v.vars(), k)
}

fn from_rows(rows: [[RatFunc; 4]; 4]) -> Matrix<RatFunc> {
    Matrix::from_fn(4, 4, |i, j| rows[i][j].canonical())
}

/// The Hecke generator on `V ⊗ V`.
#[allow(non_snake_case)]
pub fn build_S() -> Matrix<RatFunc> {
    let one = RatFunc::one(&q_vars());
    let q = q_of(&one);
    let qi = q.inv().expect("q ≠ 0");
    let (z, m1) = (int(&one, 0), int(&one, -1));
    from_rows([
        [-&qi, z.clone(), z.clone(), z.clone()],
        [z.clone(), &q - &qi, m1.clone(), z.clone()],
        [z.clone(), m1, z.clone(), z.clone()],
        [z.clone(), z.clone(), z, -&qi],
    ])
}

fn rtilde_at(z: &RatFunc, _fault: Option<Fault>) -> Matrix<RatFunc> {
    let (q, one, zero) = (q_of(z), int(z, 1), int(z, 0));
    let q2 = &q * &q;
    let d = &one - &(&q2 * z);
    let diag = &(z - &q2) / &d;
    let a = &(&(&one - &q2) * z) / &d;
    let b = &(&q * &(z - &one)) / &d;
    let c = &(&one - &q2) / &d;
    from_rows([
        [diag.clone(), zero.clone(), zero.clone(), zero.clone()],
        [zero.clone(), a, b.clone(), zero.clone()],
        [zero.clone(), b, c, zero.clone()],
        [zero.clone(), zero.clone(), zero, diag],
    ])
}

fn rbar_at(x: &RatFunc, fault: Option<Fault>) -> Matrix<RatFunc> {
    let (q, one, zero) = (q_of(x), int(x, 1), int(x, 0));
    let q2 = &q * &q;
    let d = &one - &(&q2 * x);
    let diag = &(&(&one - x) * &q) / &d;
    let upper = &(&one - &q2) / &d;
    let lower = if active(fault, Fault::RbarEntry) { upper.clone() } else { &(&(&one - &q2) * x) / &d };
    from_rows([
        [one.clone(), zero.clone(), zero.clone(), zero.clone()],
        [zero.clone(), diag.clone(), upper, zero.clone()],
        [zero.clone(), lower, diag, zero.clone()],
        [zero.clone(), zero.clone(), zero, one],
    ])
}

#[allow(non_snake_case)]
pub fn build_Rtilde() -> SpectralMatrix {
    SpectralMatrix { name: "Rtilde", var: "z", build: rtilde_at, fault: None }
}

/// `R̄(x)`; with [`Fault::RbarEntry`] the `(1−q²)x` entry loses its `x`.
#[allow(non_snake_case)]
pub fn build_Rbar(fault: Option<Fault>) -> SpectralMatrix {
    SpectralMatrix { name: "Rbar", var: "x", build: rbar_at, fault }
}

/// `(qz − q⁻¹) R̃(z) = S z − S⁻¹`.
pub fn rs_identity_check() -> Result<CheckReport> {
    let r = build_Rtilde().matrix();
    let vars = r.get(0, 0).vars().clone();
    let lift = |m: &Matrix<RatFunc>| m.map(|x| x.embed(&vars).expect("q embeds"));
    let s = build_S();
    let (s, s_inv) = (lift(&s), lift(&s.inverse()?));
    let z = RatFunc::var(&vars, "z")?;
    let q = RatFunc::var(&vars, "q")?;
    let scal = (&(&q * &z) - &q.inv()?).canonical();
    let lhs = r.scale(&scal).canonical();
    let rhs = s.scale(&z).sub(&s_inv).canonical();
    if let Some((i, j)) = lhs.first_difference(&rhs) {
        return Err(Error::IdentityViolation {
            identity: "(qz − q⁻¹)R̃(z) = Sz − S⁻¹".into(),
            witness: format!("entry ({i},{j})"),
        });
    }
    let mut rep = CheckReport::new("rs-identity", json!({}));
    rep.count(16);
    Ok(rep)
}

/// How the three-site equation is arranged.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YbeForm {
    /// `R₁₂(x)R₁₃(xy)R₂₃(y) = R₂₃(y)R₁₃(xy)R₁₂(x)`.
    Standard,
    /// `Ř₁₂(x)Ř₂₃(xy)Ř₁₂(y) = Ř₂₃(y)Ř₁₂(xy)Ř₂₃(x)` for an operator that
    /// already includes the flip of its two factors.
    Braid,
}

/// `M` acting on sites `a, b` of `V^{⊗3}` (site 0 is the leftmost factor).
fn three_site(m: &Matrix<RatFunc>, a: usize, b: usize) -> Matrix<RatFunc> {
    let zero = RatFunc::zero(m.get(0, 0).vars());
    let other = 3 - a - b;
    let bit = |x: usize, s: usize| (x >> (2 - s)) & 1;
    Matrix::from_fn(8, 8, |r, c| {
        if bit(r, other) != bit(c, other) {
            return zero.clone();
        }
        m.get(bit(r, a) * 2 + bit(r, b), bit(c, a) * 2 + bit(c, b)).clone()
    })
}

/// Symbolic check in `(x, y, q)`.
pub fn ybe_check(r: &SpectralMatrix, form: YbeForm) -> Result<CheckReport> {
    let vars = Vars::new(["q", "x", "y"]);
    let x = RatFunc::var(&vars, "x")?;
    let y = RatFunc::var(&vars, "y")?;
    let xy = &x * &y;
    let (rx, rxy, ry) = (r.at(&x), r.at(&xy), r.at(&y));
    let (lhs, rhs) = match form {
        YbeForm::Standard => (
            three_site(&rx, 0, 1).mul(&three_site(&rxy, 0, 2)).mul(&three_site(&ry, 1, 2)),
            three_site(&ry, 1, 2).mul(&three_site(&rxy, 0, 2)).mul(&three_site(&rx, 0, 1)),
        ),
        YbeForm::Braid => (
            three_site(&rx, 0, 1).mul(&three_site(&rxy, 1, 2)).mul(&three_site(&ry, 0, 1)),
            three_site(&ry, 1, 2).mul(&three_site(&rxy, 0, 1)).mul(&three_site(&rx, 1, 2)),
        ),
    };
    let (lhs, rhs) = (lhs.canonical(), rhs.canonical());
    if let Some((i, j)) = lhs.first_difference(&rhs) {
        return Err(Error::YbeViolation(format!("{} ({form:?} form), row {i} column {j}", r.name)));
    }
    let mut rep = CheckReport::new("ybe", json!({"matrix": r.name, "form": format!("{form:?}").to_lowercase()}));
    rep.count(64);
    Ok(rep)
}
