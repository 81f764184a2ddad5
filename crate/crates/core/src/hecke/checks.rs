//! Relation checks for the finite and affine Hecke operators, the
//! conjugation by `γ`, and the operator identity for `∏(1 + y_j u)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::laurent::LaurentVecPoly;
use super::ops::{apply_word, big_y_word, hecke_vars, inverse_word, q_pow, small_y_word, Op, OpSpace, Sign, YForm};
use crate::error::{Error, Result};
use crate::exact_algebra::{Matrix, RatFunc, SparsePoly, Vars};
use crate::fault::{active, Fault};
use crate::quantum::build_S;
use crate::report::CheckReport;
use crate::symfun::{macdonald_operator_apply, subsets, SymPoly};

/// Which realization of the Hecke generators to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeckeGenerators {
    /// `S_{j,j+1}` on `V^{⊗N}`.
    S,
    /// `G_{j,j+1}` on Laurent polynomials.
    G,
    /// `g_{j,j+1}` on Laurent polynomials.
    SmallG,
}

impl HeckeGenerators {
    pub fn name(self) -> &'static str {
        match self {
            HeckeGenerators::S => "S",
            HeckeGenerators::G => "G",
            HeckeGenerators::SmallG => "g",
        }
    }
}

const RANDOM_TERMS: usize = 4;

fn violation(relation: impl Into<String>, witness: impl std::fmt::Display) -> Error {
    Error::RelationViolation { relation: relation.into(), witness: witness.to_string() }
}

fn run(word: &[Op], f: &LaurentVecPoly) -> Result<LaurentVecPoly> {
    apply_word(word, f.clone())
}

fn q_minus_qinv(vars: &Vars) -> SparsePoly {
    &q_pow(vars, 1) - &q_pow(vars, -1)
}

/// Quadratic, far-commutation and braid relations. With
/// [`Fault::HeckeInverseG23`] the generator at `j = 2` is replaced by its inverse.
pub fn hecke_relation_check(
    n: usize,
    generators: HeckeGenerators,
    trials: usize,
    seed: u64,
    fault: Option<Fault>,
) -> Result<CheckReport> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("Hecke relations need N ≥ 2, got {n}")));
    }
    let mut report = CheckReport::new(
        "hecke-relations",
        json!({"n": n, "generators": generators.name(), "trials": trials, "seed": seed}),
    );
    let swap23 = active(fault, Fault::HeckeInverseG23);
    if generators == HeckeGenerators::S {
        check_s_relations(n, swap23, &mut report)?;
        return Ok(report);
    }
    let gen = |j: usize, s: Sign| {
        let s = if swap23 && j == 2 { s.flip() } else { s };
        match generators {
            HeckeGenerators::G => Op::G(j, j + 1, s),
            _ => Op::SmallG(j, j + 1, s),
        }
    };
    let name = generators.name();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let f = LaurentVecPoly::random(n, RANDOM_TERMS, &mut rng);
        let qq = q_minus_qinv(f.vars());
        for j in 1..n {
            let lhs = run(&[gen(j, Sign::Plus)], &f)?.sub(&run(&[gen(j, Sign::Minus)], &f)?);
            if lhs != f.mul_poly(&qq) {
                return Err(violation(format!("{name}_{j} − {name}_{j}⁻¹ = q − q⁻¹"), &f));
            }
            if run(&[gen(j, Sign::Plus), gen(j, Sign::Minus)], &f)? != f {
                return Err(violation(format!("{name}_{j}·{name}_{j}⁻¹ = 1"), &f));
            }
            report.count(2);
            for k in j + 2..n {
                let a = run(&[gen(j, Sign::Plus), gen(k, Sign::Plus)], &f)?;
                let b = run(&[gen(k, Sign::Plus), gen(j, Sign::Plus)], &f)?;
                if a != b {
                    return Err(violation(format!("{name}_{j}{name}_{k} = {name}_{k}{name}_{j}"), &f));
                }
                report.count(1);
            }
            if j + 1 < n {
                let (a, b) = (gen(j, Sign::Plus), gen(j + 1, Sign::Plus));
                let l = run(&[a.clone(), b.clone(), a.clone()], &f)?;
                let r = run(&[b.clone(), a, b], &f)?;
                if l != r {
                    return Err(violation(format!("braid relation for {name}_{j}, {name}_{}", j + 1), &f));
                }
                report.count(1);
            }
        }
    }
    Ok(report)
}

/// `I ⊗ … ⊗ M ⊗ … ⊗ I` with `M` acting on factors `j, j+1` (1-based) of `V^{⊗n}`.
pub fn embed_two_site(m: &Matrix<RatFunc>, j: usize, n: usize) -> Matrix<RatFunc> {
    let like = m.get(0, 0).clone();
    let left = Matrix::identity(1 << (j - 1), &like);
    let right = Matrix::identity(1 << (n - j - 1), &like);
    left.kron(m).kron(&right).canonical()
}

fn check_s_relations(n: usize, swap23: bool, report: &mut CheckReport) -> Result<()> {
    let s = build_S();
    let s_inv = s.inverse()?;
    let one = RatFunc::one(s.get(0, 0).vars());
    let q = RatFunc::var(one.vars(), "q")?;
    let qq = (&q - &q.inv()?).canonical();
    let site = |j: usize, inv: bool| {
        let inv = inv ^ (swap23 && j == 2);
        embed_two_site(if inv { &s_inv } else { &s }, j, n)
    };
    let dim = 1 << n;
    let id = Matrix::identity(dim, &one);
    for j in 1..n {
        let diff = site(j, false).sub(&site(j, true)).canonical();
        if let Some((r, c)) = diff.first_difference(&id.scale(&qq).canonical()) {
            return Err(violation(format!("S_{j} − S_{j}⁻¹ = q − q⁻¹"), format!("entry ({r},{c})")));
        }
        if let Some((r, c)) = site(j, false).mul(&site(j, true)).canonical().first_difference(&id) {
            return Err(violation(format!("S_{j}·S_{j}⁻¹ = 1"), format!("entry ({r},{c})")));
        }
        report.count(2);
        for k in j + 2..n {
            let a = site(j, false).mul(&site(k, false)).canonical();
            let b = site(k, false).mul(&site(j, false)).canonical();
            if let Some((r, c)) = a.first_difference(&b) {
                return Err(violation(format!("S_{j}S_{k} = S_{k}S_{j}"), format!("entry ({r},{c})")));
            }
            report.count(1);
        }
        if j + 1 < n {
            let (a, b) = (site(j, false), site(j + 1, false));
            let l = a.mul(&b).mul(&a).canonical();
            let r = b.mul(&a).mul(&b).canonical();
            if let Some((x, y)) = l.first_difference(&r) {
                return Err(violation(format!("braid relation for S_{j}, S_{}", j + 1), format!("entry ({x},{y})")));
            }
            report.count(1);
        }
    }
    report.note(format!("symbolic on V^⊗{n}"));
    Ok(())
}

fn y_words(n: usize, swap_y2: bool) -> Result<Vec<Vec<Op>>> {
    (1..=n)
        .map(|j| {
            let mut w = big_y_word(j, n, YForm::Adjacent)?;
            if swap_y2 && j == 2 {
                w.reverse();
            }
            Ok(w)
        })
        .collect()
}

fn concat(a: &[Op], b: &[Op]) -> Vec<Op> {
    a.iter().chain(b).cloned().collect()
}

/// `Y_jY_k = Y_kY_j`, `G_{j,j+1}Y_jG_{j,j+1} = Y_{j+1}`, `[G_{j,j+1}, Y_k] = 0`
/// for `k ∉ {j, j+1}`, and `Y_j Y_j⁻¹ = 1`.
pub fn affine_hecke_check(n: usize, trials: usize, seed: u64, fault: Option<Fault>) -> Result<CheckReport> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("affine Hecke relations need N ≥ 2, got {n}")));
    }
    let mut report = CheckReport::new("affine-hecke", json!({"n": n, "trials": trials, "seed": seed}));
    let ys = y_words(n, active(fault, Fault::AffineY2Swapped))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let f = LaurentVecPoly::random(n, RANDOM_TERMS, &mut rng);
        let yf: Vec<LaurentVecPoly> = ys.iter().map(|w| run(w, &f)).collect::<Result<_>>()?;
        for j in 0..n {
            if run(&inverse_word(&ys[j])?, &yf[j])? != f {
                return Err(violation(format!("Y_{}⁻¹Y_{} = 1", j + 1, j + 1), &f));
            }
            report.count(1);
            for k in j + 1..n {
                if run(&ys[j], &yf[k])? != run(&ys[k], &yf[j])? {
                    return Err(violation(format!("Y_{}Y_{} = Y_{}Y_{}", j + 1, k + 1, k + 1, j + 1), &f));
                }
                report.count(1);
            }
        }
        for j in 1..n {
            let g = Op::G(j, j + 1, Sign::Plus);
            let lhs = run(&concat(std::slice::from_ref(&g), &concat(&ys[j - 1], std::slice::from_ref(&g))), &f)?;
            if lhs != yf[j] {
                return Err(violation(format!("G_{j}Y_{j}G_{j} = Y_{}", j + 1), &f));
            }
            report.count(1);
            for k in (1..=n).filter(|&k| k != j && k != j + 1) {
                let a = run(&concat(std::slice::from_ref(&g), &ys[k - 1]), &f)?;
                let b = run(&ys[k - 1], &run(std::slice::from_ref(&g), &f)?)?;
                if a != b {
                    return Err(violation(format!("G_{j}Y_{k} = Y_{k}G_{j}"), &f));
                }
                report.count(1);
            }
        }
    }
    Ok(report)
}

/// Both expressions for `Y_j` agree on random inputs.
pub fn y_forms_check(n: usize, trials: usize, seed: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("y-forms", json!({"n": n, "trials": trials, "seed": seed}));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let f = LaurentVecPoly::random(n, RANDOM_TERMS, &mut rng);
        for j in 1..=n {
            let a = run(&big_y_word(j, n, YForm::Adjacent)?, &f)?;
            let b = run(&big_y_word(j, n, YForm::Interleaved)?, &f)?;
            if a != b {
                return Err(Error::IdentityViolation {
                    identity: format!("interleaved and adjacent forms of Y_{j} (N={n})"),
                    witness: f.to_string(),
                });
            }
            report.count(1);
        }
    }
    Ok(report)
}

/// `e₁(Y) = Σ Y_j` commutes with every `G_{j,j+1}`.
pub fn symmetric_center_check(n: usize, trials: usize, seed: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("symmetric-center", json!({"n": n, "trials": trials, "seed": seed}));
    let ys = y_words(n, false)?;
    let e1 = |f: &LaurentVecPoly| -> Result<LaurentVecPoly> {
        ys.iter().try_fold(LaurentVecPoly::zero(n), |acc, w| Ok(acc.add(&run(w, f)?)))
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let f = LaurentVecPoly::random(n, RANDOM_TERMS, &mut rng);
        for j in 1..n {
            let g = [Op::G(j, j + 1, Sign::Plus)];
            if run(&g, &e1(&f)?)? != e1(&run(&g, &f)?)? {
                return Err(violation(format!("[G_{j}, Y_1 + … + Y_N] = 0"), &f));
            }
            report.count(1);
        }
    }
    Ok(report)
}

/// `γ = ∏_{j<k} (z_j − q² z_k)`.
pub fn gamma(n: usize) -> SparsePoly {
    let vars = hecke_vars(n);
    let mut g = SparsePoly::one(&vars);
    for j in 0..n {
        for k in j + 1..n {
            g = &g * &super::ops::binomial(&vars, j, 1, 0, k, -1, 2);
        }
    }
    g
}

fn at_p_q4(f: &LaurentVecPoly) -> Result<SparsePoly> {
    let n = f.n();
    f.poly().substitute(n + 1, &q_pow(f.vars(), 4))
}

/// `(−q²)^{−N+1} γ⁻¹ Y_j γ f = y_j f` at `p = q⁴` on random `f`.
pub fn conjugation_check(n: usize, trials: usize, seed: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("gamma-conjugation", json!({"n": n, "trials": trials, "seed": seed, "p": "q^4"}));
    let g = gamma(n);
    let vars = hecke_vars(n);
    let sign = if (n - 1).is_multiple_of(2) { 1 } else { -1 };
    let scalar = q_pow(&vars, -2 * (n as i32 - 1)).scale_int(sign);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let f = LaurentVecPoly::random(n, RANDOM_TERMS, &mut rng);
        for j in 1..=n {
            let big = run(&big_y_word(j, n, YForm::Adjacent)?, &f.mul_poly(&g))?;
            let lhs = &at_p_q4(&big)?.exact_div(&g).map_err(|_| violation(format!("γ divides Y_{j}γf"), &f))? * &scalar;
            let rhs = at_p_q4(&run(&small_y_word(j, n, YForm::Adjacent)?, &f)?)?;
            if lhs != rhs {
                return Err(Error::IdentityViolation {
                    identity: format!("γ-conjugate of Y_{j} equals y_{j}"),
                    witness: f.to_string(),
                });
            }
            report.count(1);
        }
    }
    Ok(report)
}

/// `∏_j (1 + y_j u) P = D((−q)^{−N+1}u; p, q²) P`, compared coefficientwise in `u`.
pub fn macdonald_identity_check(n: usize, p: &SymPoly) -> Result<CheckReport> {
    if p.n() != n {
        return Err(Error::InvalidArgument(format!("polynomial has {} variables, expected {n}", p.n())));
    }
    let mut report = CheckReport::new("macdonald-operator-identity", json!({"n": n, "P": p.to_string()}));
    let vars = hecke_vars(n);
    let pt = Vars::z_with(n, &["q", "p", "t"]);
    let t_idx = n + 2;
    let to_hecke = |f: &SymPoly| -> Result<SparsePoly> {
        let poly = f.to_poly(&pt)?;
        let q2 = SparsePoly::var_pow(&pt, "q", 2, crate::exact_algebra::qi(1))?;
        poly.substitute(t_idx, &q2)?.restrict(&vars)
    };
    let input = LaurentVecPoly::new(n, &to_hecke(p)?)?;
    let ys: Vec<Vec<Op>> = (1..=n).map(|j| small_y_word(j, n, YForm::Adjacent)).collect::<Result<_>>()?;
    for m in 0..=n {
        let mut lhs = LaurentVecPoly::zero(n);
        for set in subsets(n, m) {
            let mut acc = input.clone();
            for &j in set.iter().rev() {
                acc = run(&ys[j], &acc)?;
            }
            lhs = lhs.add(&acc);
        }
        let d = if m == 0 { p.clone() } else { macdonald_operator_apply(m, n, p)? };
        let sign = if (m * (n - 1)).is_multiple_of(2) { 1 } else { -1 };
        let scalar = q_pow(&vars, -((m * (n - 1)) as i32)).scale_int(sign);
        let rhs = &to_hecke(&d)? * &scalar;
        if lhs.poly() != &rhs {
            return Err(Error::IdentityViolation {
                identity: format!("∏(1 + y_j u)P = D((−q)^(1−N)u; p, q²)P for P = {p}"),
                witness: format!("u-degree {m}"),
            });
        }
        report.count(1);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfun::Partition;

    #[test]
    fn finite_hecke_relations() {
        for gens in [HeckeGenerators::G, HeckeGenerators::SmallG] {
            hecke_relation_check(3, gens, 2, 1, None).unwrap();
        }
        hecke_relation_check(2, HeckeGenerators::S, 0, 0, None).unwrap();
        hecke_relation_check(3, HeckeGenerators::S, 0, 0, None).unwrap();
    }

    #[test]
    fn inverted_g23_is_caught() {
        for gens in [HeckeGenerators::G, HeckeGenerators::SmallG, HeckeGenerators::S] {
            let e = hecke_relation_check(3, gens, 2, 1, Some(Fault::HeckeInverseG23)).unwrap_err();
            assert!(matches!(e, Error::RelationViolation { .. }), "{e}");
        }
    }

    #[test]
    fn affine_relations_and_fault() {
        affine_hecke_check(2, 2, 3, None).unwrap();
        affine_hecke_check(3, 1, 3, None).unwrap();
        let e = affine_hecke_check(3, 1, 3, Some(Fault::AffineY2Swapped)).unwrap_err();
        assert!(matches!(e, Error::RelationViolation { .. }));
    }

    #[test]
    fn both_forms_of_y_agree() {
        for n in 1..=3 {
            y_forms_check(n, 2, 5).unwrap();
        }
    }

    #[test]
    fn center_and_conjugation() {
        symmetric_center_check(3, 2, 9).unwrap();
        for n in 1..=3 {
            conjugation_check(n, 2, 4).unwrap();
        }
    }

    #[test]
    fn operator_identity_examples() {
        let pt = crate::symfun::pt_vars();
        for (n, mu) in [(1, "2"), (2, "1"), (3, "2,1")] {
            let p = SymPoly::monomial(n, &mu.parse::<Partition>().unwrap(), &pt).unwrap();
            macdonald_identity_check(n, &p).unwrap();
        }
    }
}
