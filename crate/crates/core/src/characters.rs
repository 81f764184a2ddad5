//! Fermionic, bosonic and `(q, z)`-refined characters of the level-1
//! modules `V(Λ_i)`.

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exact_algebra::{qi, QSeries, SparsePoly, Vars};
use crate::fault::{active, Fault};
use crate::quantum::{partitions_at_most, string_blocks};
use crate::report::CheckReport;

/// A truncated character of one sector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDimSeries {
    pub i: u8,
    pub order: usize,
    pub refined: bool,
    pub series: QSeries,
}

impl GradedDimSeries {
    /// Coefficients at `z = 1`.
    pub fn dims(&self) -> Vec<i64> {
        self.series
            .integer_coeffs()
            .expect("integer dimensions")
            .into_iter()
            .map(|c| i64::try_from(c).expect("dimension fits in i64"))
            .collect()
    }

    /// Every `z^a q^k` coefficient is a non-negative integer.
    pub fn is_nonnegative(&self) -> bool {
        self.series.coeffs().iter().all(|c| c.terms().all(|(_, v)| v.is_integer() && *v >= qi(0)))
    }

    /// First degree `k ≥ 2` with `dim_k < dim_{k−1}` at `z = 1`.
    pub fn first_decrease(&self) -> Option<usize> {
        let d = self.dims();
        (2..d.len()).find(|&k| d[k] < d[k - 1])
    }
}

impl Serialize for GradedDimSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<String> = self.series.coeffs().iter().map(|c| c.to_string()).collect();
        json!({"sector": self.i, "order": self.order, "refined": self.refined, "coefficients": coeffs}).serialize(s)
    }
}

fn check_sector(i: u8) -> Result<()> {
    if i > 1 {
        return Err(Error::InvalidArgument(format!("sector must be 0 or 1, got {i}")));
    }
    Ok(())
}

fn series_vars(refine_z: bool) -> Vars {
    if refine_z {
        Vars::new(["z"])
    } else {
        Vars::new(Vec::<String>::new())
    }
}

/// `(N² − i)/4`, the degree of the `λ = ∅` vector.
fn base_degree(n: usize, i: u8) -> usize {
    (n * n - i as usize) / 4
}

/// `χ_n(z) = z^n + z^{n−2} + … + z^{−n}`.
fn sl2_character(n: usize, vars: &Vars) -> SparsePoly {
    SparsePoly::from_terms(vars, (0..=n).map(|k| (vec![n as i32 - 2 * k as i32], qi(1))))
}

/// Highest weight vector labels `(λ padded to N, N, degree, dim)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HwvLabel {
    pub lambda: Vec<usize>,
    pub n: usize,
    pub degree: usize,
    pub dim: usize,
}

/// All `(λ, N)` with `N ≡ i (mod 2)`, `l(λ) ≤ N` and
/// `|λ| + (N² − i)/4 ≤ max_degree`; `N` ascending, then weight, then `λ`
/// descending.
pub fn enumerate_hwv(i: u8, max_degree: usize) -> Result<Vec<HwvLabel>> {
    check_sector(i)?;
    let mut out = Vec::new();
    for n in (i as usize..).step_by(2).take_while(|&n| base_degree(n, i) <= max_degree) {
        let base = base_degree(n, i);
        for k in 0..=max_degree - base {
            for lam in partitions_at_most(k, n) {
                let dim = crate::quantum::dim_w(&lam, n)?;
                let mut lambda = lam;
                lambda.resize(n, 0);
                out.push(HwvLabel { lambda, n, degree: base + k, dim });
            }
        }
    }
    Ok(out)
}

fn fermionic_with(i: u8, order: usize, refine_z: bool, no_dim: bool) -> Result<GradedDimSeries> {
    check_sector(i)?;
    let vars = series_vars(refine_z);
    let mut coeffs = vec![SparsePoly::zero(&vars); order + 1];
    for label in enumerate_hwv(i, order)? {
        let weight = if no_dim {
            SparsePoly::one(&vars)
        } else if refine_z {
            string_blocks(&label.lambda, label.n)?
                .iter()
                .fold(SparsePoly::one(&vars), |acc, b| &acc * &sl2_character(b.1, &vars))
        } else {
            SparsePoly::from_int(&vars, label.dim as i64)
        };
        coeffs[label.degree] = &coeffs[label.degree] + &weight;
    }
    Ok(GradedDimSeries { i, order, refined: refine_z, series: QSeries::from_coeffs(&vars, coeffs, order) })
}

/// `Σ_{N ≡ i, l(λ) ≤ N} q^{(N²−i)/4 + |λ|} ∏_j (n_j + 1)`; with `refine_z`
/// each `n_j + 1` becomes `χ_{n_j}(z)`.
pub fn fermionic_character(i: u8, order: usize, refine_z: bool) -> Result<GradedDimSeries> {
    fermionic_with(i, order, refine_z, false)
}

/// `(1/(q;q)_∞) Σ_{n∈ℤ} q^{n² + ni} z^{2n+i}`.
pub fn bosonic_character(i: u8, order: usize, refine_z: bool) -> Result<GradedDimSeries> {
    check_sector(i)?;
    let vars = series_vars(refine_z);
    let mut lattice = QSeries::zero(&vars, order);
    let ii = i as i64;
    // n² + ni ≤ order bounds |n| by order + 1.
    for n in -(order as i64) - 1..=order as i64 + 1 {
        let deg = n * n + n * ii;
        if deg <= order as i64 {
            let z = if refine_z { (2 * n + ii) as i32 } else { 0 };
            lattice = lattice.add(&QSeries::monomial(&vars, 1, z, deg as usize, order));
        }
    }
    let series = lattice.mul(&QSeries::inv_pochhammer(&vars, order));
    Ok(GradedDimSeries { i, order, refined: refine_z, series })
}

/// `Σ_{n⁺+n⁻ ≡ i} z^{n⁺−n⁻} q^{((n⁺+n⁻)² − i)/4} / ((q;q)_{n⁺} (q;q)_{n⁻})`.
pub fn refined_character(i: u8, order: usize) -> Result<GradedDimSeries> {
    check_sector(i)?;
    let vars = series_vars(true);
    let mut series = QSeries::zero(&vars, order);
    for total in (i as usize..).step_by(2).take_while(|&t| base_degree(t, i) <= order) {
        let deg = base_degree(total, i);
        for plus in 0..=total {
            let minus = total - plus;
            let term = QSeries::monomial(&vars, 1, plus as i32 - minus as i32, deg, order)
                .mul(&QSeries::inv_pochhammer_n(&vars, plus, order))
                .mul(&QSeries::inv_pochhammer_n(&vars, minus, order));
            series = series.add(&term);
        }
    }
    Ok(GradedDimSeries { i, order, refined: true, series })
}

fn compare(name: &str, a: &GradedDimSeries, b: &GradedDimSeries) -> Result<()> {
    match a.series.first_mismatch(&b.series) {
        None => Ok(()),
        Some(k) => Err(Error::IdentityViolation {
            identity: name.into(),
            witness: format!("q^{k}: {} vs {}", a.series.coeff(k), b.series.coeff(k)),
        }),
    }
}

/// Fermionic = bosonic = refined through `q^order`, at `z = 1` or with `z`
/// tracked. With [`Fault::FermionicNoDim`] every multiplicity is dropped.
pub fn verify_identity(i: u8, order: usize, refine_z: bool, fault: Option<Fault>) -> Result<CheckReport> {
    let ferm = fermionic_with(i, order, refine_z, active(fault, Fault::FermionicNoDim))?;
    let bos = bosonic_character(i, order, refine_z)?;
    let mut refined = refined_character(i, order)?;
    if !refine_z {
        refined.series = refined.series.at_z_one();
        refined.refined = false;
    }
    compare("fermionic = bosonic", &ferm, &bos)?;
    compare("bosonic = refined", &bos, &refined)?;
    for s in [&ferm, &bos, &refined] {
        if !s.is_nonnegative() {
            return Err(Error::IdentityViolation {
                identity: "non-negative coefficients".into(),
                witness: s.series.to_string(),
            });
        }
    }
    let lowest = if i == 0 {
        "1".to_string()
    } else if refine_z {
        "z + z^-1".into()
    } else {
        "2".into()
    };
    let expected_lowest = if i == 0 {
        SparsePoly::one(ferm.series.vars())
    } else if refine_z {
        sl2_character(1, ferm.series.vars())
    } else {
        SparsePoly::from_int(ferm.series.vars(), 2)
    };
    if !ferm.series.zero_coeff_is(&expected_lowest) {
        return Err(Error::IdentityViolation {
            identity: format!("q^0 coefficient is {lowest}"),
            witness: ferm.series.coeff(0).to_string(),
        });
    }
    let mut report = CheckReport::new("character-identity", json!({"sector": i, "order": order, "refine_z": refine_z}));
    report.count(3 * (order + 1));
    let dims = ferm.dims();
    report.note(format!("dims {:?}", &dims[..dims.len().min(8)]));
    match ferm.first_decrease() {
        None => report.note(format!("dimensions non-decreasing from q^2 through q^{order}")),
        Some(k) => report.note(format!("dimension decreases at q^{k}")),
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fermionic_examples() {
        assert_eq!(fermionic_character(0, 4, false).unwrap().dims(), vec![1, 3, 4, 7, 13]);
        assert_eq!(fermionic_character(1, 4, false).unwrap().dims(), vec![2, 2, 6, 8, 14]);
        assert_eq!(fermionic_character(0, 0, false).unwrap().dims(), vec![1]);
    }

    #[test]
    fn bosonic_examples() {
        assert_eq!(bosonic_character(0, 4, false).unwrap().dims(), vec![1, 3, 4, 7, 13]);
        assert_eq!(bosonic_character(1, 2, false).unwrap().dims(), vec![2, 2, 6]);
        let z = bosonic_character(0, 2, true).unwrap();
        let vars = Vars::new(["z"]);
        let want = SparsePoly::from_terms(&vars, [(vec![2], qi(1)), (vec![0], qi(2)), (vec![-2], qi(1))]);
        assert_eq!(z.series.coeff(2), &want);
        assert_eq!(z.dims()[2], 4);
    }

    #[test]
    fn refined_examples() {
        let vars = Vars::new(["z"]);
        assert_eq!(refined_character(0, 1).unwrap().series.coeff(1), &sl2_character(2, &vars));
        assert_eq!(refined_character(1, 0).unwrap().series.coeff(0), &sl2_character(1, &vars));
        assert_eq!(
            refined_character(0, 6).unwrap().series.at_z_one(),
            fermionic_character(0, 6, false).unwrap().series
        );
    }

    #[test]
    fn identity_and_negative_control() {
        for i in 0..=1 {
            verify_identity(i, 12, false, None).unwrap();
            verify_identity(i, 8, true, None).unwrap();
        }
        let err = verify_identity(0, 5, false, Some(Fault::FermionicNoDim)).unwrap_err();
        assert!(err.to_string().contains("q^1"), "{err}");
    }

    #[test]
    fn hwv_enumeration() {
        let l = |lambda: Vec<usize>, n, degree, dim| HwvLabel { lambda, n, degree, dim };
        assert_eq!(enumerate_hwv(0, 1).unwrap(), vec![l(vec![], 0, 0, 1), l(vec![0, 0], 2, 1, 3)]);
        assert_eq!(enumerate_hwv(1, 0).unwrap(), vec![l(vec![0], 1, 0, 2)]);
        assert_eq!(enumerate_hwv(0, 2).unwrap()[2], l(vec![1, 0], 2, 2, 4));
        assert!(enumerate_hwv(2, 3).is_err());
    }
}
