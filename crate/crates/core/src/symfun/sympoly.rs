//! Symmetric polynomials in the monomial basis and polynomials in power sums.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use super::partition::{distinct_permutations, partitions_of, Partition};
use crate::error::{Error, Result};
use crate::exact_algebra::{poly_lcm, Exp, RatFunc, SparsePoly, Vars, Q};

/// The coefficient field `ℚ(p,t)`.
pub fn pt_vars() -> Vars {
    static V: OnceLock<Vars> = OnceLock::new();
    V.get_or_init(|| Vars::new(["p", "t"])).clone()
}

/// `m_μ(z₁..z_N)` over `vars`, whose first `n` entries are the `z` variables.
pub fn monomial_symmetric(mu: &Partition, vars: &Vars, n: usize) -> Result<SparsePoly> {
    let padded = mu.padded(n)?;
    let extra = vars.len() - n;
    let one = Q::from_integer(1.into());
    Ok(SparsePoly::from_terms(
        vars,
        distinct_permutations(&padded).into_iter().map(|a| {
            let mut e: Exp = a.iter().map(|&x| x as i32).collect();
            e.extend(std::iter::repeat_n(0, extra));
            (e, one.clone())
        }),
    ))
}

/// `Σ_λ c_λ m_λ(z₁..z_N)` with coefficients in a rational-function field.
#[derive(Clone, PartialEq)]
pub struct SymPoly {
    n: usize,
    field: Vars,
    coeffs: BTreeMap<Partition, RatFunc>,
}

impl SymPoly {
    pub fn zero(n: usize, field: &Vars) -> Self {
        SymPoly { n, field: field.clone(), coeffs: BTreeMap::new() }
    }

    pub fn one(n: usize, field: &Vars) -> Self {
        Self::monomial(n, &Partition::empty(), field).expect("empty partition")
    }

    /// `m_λ`.
    pub fn monomial(n: usize, lam: &Partition, field: &Vars) -> Result<Self> {
        lam.check_len(n)?;
        let mut s = Self::zero(n, field);
        s.coeffs.insert(lam.clone(), RatFunc::one(field));
        Ok(s)
    }

    pub fn from_coeffs(n: usize, field: &Vars, coeffs: impl IntoIterator<Item = (Partition, RatFunc)>) -> Result<Self> {
        let mut s = Self::zero(n, field);
        for (lam, c) in coeffs {
            lam.check_len(n)?;
            s.add_term(lam, &c);
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Vars {
        &self.field
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, RatFunc> {
        &self.coeffs
    }

    pub fn coeff(&self, lam: &Partition) -> RatFunc {
        self.coeffs.get(lam).cloned().unwrap_or_else(|| RatFunc::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub(crate) fn add_term(&mut self, lam: Partition, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&lam) {
            Some(v) => {
                *v = (&*v + c).canonical();
                if v.is_zero() {
                    self.coeffs.remove(&lam);
                }
            }
            None => {
                self.coeffs.insert(lam, c.canonical());
            }
        }
    }

    fn check_shape(&self, o: &SymPoly) {
        assert_eq!(self.n, o.n, "symmetric polynomials in different numbers of variables");
        assert_eq!(self.field, o.field, "coefficient fields differ");
    }

    pub fn add(&self, o: &SymPoly) -> SymPoly {
        self.check_shape(o);
        let mut out = self.clone();
        for (lam, c) in &o.coeffs {
            out.add_term(lam.clone(), c);
        }
        out
    }

    pub fn sub(&self, o: &SymPoly) -> SymPoly {
        self.add(&o.scale(&RatFunc::from_int(&self.field, -1)))
    }

    pub fn scale(&self, c: &RatFunc) -> SymPoly {
        let mut out = Self::zero(self.n, &self.field);
        for (lam, v) in &self.coeffs {
            out.add_term(lam.clone(), &(v * c));
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&RatFunc) -> RatFunc) -> SymPoly {
        let mut out = Self::zero(self.n, &self.field);
        for (lam, v) in &self.coeffs {
            out.add_term(lam.clone(), &f(v));
        }
        out
    }

    /// `(L, {c_λ·L})` with `L` the normalized lcm of all denominators.
    pub fn common_denominator(&self) -> (SparsePoly, BTreeMap<Partition, SparsePoly>) {
        common_denominator(&self.field, &self.coeffs)
    }

    /// Maximal weight in the support (0 for the zero polynomial).
    pub fn max_weight(&self) -> u32 {
        self.coeffs.keys().map(Partition::weight).max().unwrap_or(0)
    }

    /// Expanded form: `z`-exponent vector ↦ coefficient.
    pub fn expand(&self) -> BTreeMap<Exp, RatFunc> {
        let mut out = BTreeMap::new();
        for (lam, c) in &self.coeffs {
            for a in distinct_permutations(&lam.padded(self.n).expect("length checked")) {
                out.insert(a.iter().map(|&x| x as i32).collect(), c.clone());
            }
        }
        out
    }

    /// As a polynomial over `vars` = `z₁..z_N` followed by (a superset of)
    /// the field variables; needs polynomial coefficients.
    pub fn to_poly(&self, vars: &Vars) -> Result<SparsePoly> {
        let mut out = SparsePoly::zero(vars);
        for (lam, c) in &self.coeffs {
            let c = c.canonical();
            let cp = c
                .as_poly()
                .ok_or_else(|| Error::InvalidArgument(format!("coefficient of m{lam} is not a polynomial: {c}")))?
                .embed(&shifted_field(vars, self.n)?)?;
            let cp = lift_field(&cp, vars, self.n);
            out = &out + &(&monomial_symmetric(lam, vars, self.n)? * &cp);
        }
        Ok(out)
    }

    /// Reads a polynomial over `z₁..z_N` followed by field variables back into
    /// the monomial basis; fails unless it is symmetric with no negative powers of `z`.
    pub fn from_poly(n: usize, poly: &SparsePoly, field: &Vars) -> Result<SymPoly> {
        let nf = poly.nvars() - n;
        let tail = Vars::new(poly.vars().names()[n..].to_vec());
        let mut parts: BTreeMap<Exp, SparsePoly> = BTreeMap::new();
        for (e, c) in poly.terms() {
            let (z, rest) = e.split_at(n);
            if z.iter().any(|&x| x < 0) {
                return Err(Error::NegativePowerFound(format!("z^{z:?}")));
            }
            parts.entry(z.to_vec()).or_insert_with(|| SparsePoly::zero(&tail)).add_term(rest.to_vec(), c.clone());
        }
        debug_assert_eq!(tail.len(), nf);
        let mut groups: BTreeMap<Vec<u32>, Vec<&SparsePoly>> = BTreeMap::new();
        for (z, c) in &parts {
            let mut sorted: Vec<u32> = z.iter().map(|&x| x as u32).collect();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            groups.entry(sorted).or_default().push(c);
        }
        let mut out = SymPoly::zero(n, field);
        for (sorted, cs) in groups {
            if cs.len() != distinct_permutations(&sorted).len() || cs.iter().any(|c| c != &cs[0]) {
                return Err(Error::SymmetryViolation(format!("orbit of z^{sorted:?}")));
            }
            out.add_term(Partition::from_padded(&sorted)?, &RatFunc::from_poly(cs[0].embed(field)?));
        }
        Ok(out)
    }
}

fn common_denominator(
    field: &Vars,
    coeffs: &BTreeMap<Partition, RatFunc>,
) -> (SparsePoly, BTreeMap<Partition, SparsePoly>) {
    let canon: Vec<(&Partition, RatFunc)> = coeffs.iter().map(|(k, c)| (k, c.canonical())).collect();
    let mut l = SparsePoly::one(field);
    for (_, c) in &canon {
        if l.exact_div(c.den()).is_err() {
            l = poly_lcm(&l, c.den());
        }
    }
    let nums = canon
        .into_iter()
        .map(|(k, c)| (k.clone(), c.num() * &l.exact_div(c.den()).expect("lcm is a multiple")))
        .collect();
    (l, nums)
}

fn shifted_field(vars: &Vars, n: usize) -> Result<Vars> {
    if vars.len() < n {
        return Err(Error::InvalidArgument("fewer variables than z's".into()));
    }
    Ok(Vars::new(vars.names()[n..].to_vec()))
}

fn lift_field(p: &SparsePoly, vars: &Vars, n: usize) -> SparsePoly {
    p.terms().fold(SparsePoly::zero(vars), |mut acc, (e, c)| {
        let mut e2 = vec![0; n];
        e2.extend_from_slice(e);
        acc.add_term(e2, c.clone());
        acc
    })
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.coeffs.iter().rev().map(|(lam, c)| format!("({c})*m{lam}")).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymPoly[N={}; {self}]", self.n)
    }
}

struct Terms<'a>(&'a BTreeMap<Partition, RatFunc>, &'static str);

impl Serialize for Terms<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for (lam, c) in self.0.iter().rev() {
            let c = c.canonical();
            seq.serialize_element(&serde_json::json!({ self.1: lam, "coeff": c, "text": c.to_string() }))?;
        }
        seq.end()
    }
}

impl Serialize for SymPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(4))?;
        m.serialize_entry("basis", "monomial")?;
        m.serialize_entry("n", &self.n)?;
        m.serialize_entry("field", self.field.names())?;
        m.serialize_entry("terms", &Terms(&self.coeffs, "partition"))?;
        m.end()
    }
}

/// `Σ_ρ c_ρ s_{ρ₁} s_{ρ₂} ⋯`, a polynomial in the power sums.
#[derive(Clone, PartialEq)]
pub struct PowerSumPoly {
    field: Vars,
    coeffs: BTreeMap<Partition, RatFunc>,
}

impl PowerSumPoly {
    pub fn zero(field: &Vars) -> Self {
        PowerSumPoly { field: field.clone(), coeffs: BTreeMap::new() }
    }

    pub fn from_coeffs(field: &Vars, coeffs: impl IntoIterator<Item = (Partition, RatFunc)>) -> Self {
        let mut s = Self::zero(field);
        for (rho, c) in coeffs {
            s.add_term(rho, &c);
        }
        s
    }

    fn add_term(&mut self, rho: Partition, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        let v = match self.coeffs.get(&rho) {
            Some(v) => (v + c).canonical(),
            None => c.canonical(),
        };
        if v.is_zero() {
            self.coeffs.remove(&rho);
        } else {
            self.coeffs.insert(rho, v);
        }
    }

    pub fn field(&self) -> &Vars {
        &self.field
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, RatFunc> {
        &self.coeffs
    }

    pub fn coeff(&self, rho: &Partition) -> RatFunc {
        self.coeffs.get(rho).cloned().unwrap_or_else(|| RatFunc::zero(&self.field))
    }

    /// `(L, {c_ρ·L})` with `L` the normalized lcm of all denominators.
    pub fn common_denominator(&self) -> (SparsePoly, BTreeMap<Partition, SparsePoly>) {
        common_denominator(&self.field, &self.coeffs)
    }

    pub fn map_coeffs(&self, f: impl Fn(&RatFunc) -> RatFunc) -> PowerSumPoly {
        Self::from_coeffs(&self.field, self.coeffs.iter().map(|(r, c)| (r.clone(), f(c))))
    }

    /// Evaluation at `s_k = z₁^k + … + z_N^k`.
    pub fn eval_in(&self, n: usize) -> SymPoly {
        let mut out = SymPoly::zero(n, &self.field);
        for (rho, c) in &self.coeffs {
            for (mu, r) in powersum_in_monomials(rho, n) {
                out.add_term(mu, &c.scale(&r));
            }
        }
        out
    }
}

impl fmt::Display for PowerSumPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .rev()
            .map(|(rho, c)| {
                let mono: Vec<String> = rho
                    .multiplicities()
                    .iter()
                    .enumerate()
                    .filter(|(_, &m)| m > 0)
                    .map(|(k, &m)| if m == 1 { format!("s{}", k + 1) } else { format!("s{}^{m}", k + 1) })
                    .collect();
                if mono.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for PowerSumPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PowerSumPoly[{self}]")
    }
}

impl Serialize for PowerSumPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("basis", "powersum")?;
        m.serialize_entry("field", self.field.names())?;
        m.serialize_entry("terms", &Terms(&self.coeffs, "powers"))?;
        m.end()
    }
}

/// Coefficients of `p_ρ(z₁..z_N)` in the monomial basis.
pub fn powersum_in_monomials(rho: &Partition, n: usize) -> BTreeMap<Partition, Q> {
    let vars = Vars::z_with(n, &[]);
    let one = Q::from_integer(1.into());
    let mut prod = SparsePoly::one(&vars);
    for &k in rho.parts() {
        let pk = SparsePoly::from_terms(
            &vars,
            (0..n).map(|j| {
                let mut e = vec![0; n];
                e[j] = k as i32;
                (e, one.clone())
            }),
        );
        prod = &prod * &pk;
    }
    let mut out = BTreeMap::new();
    for (e, c) in prod.terms() {
        if e.windows(2).all(|w| w[0] >= w[1]) {
            let mu = Partition::from_padded(&e.iter().map(|&x| x as u32).collect::<Vec<_>>()).expect("sorted");
            out.insert(mu, c.clone());
        }
    }
    out
}

/// Rewrites a symmetric polynomial in power sums. Needs `N` at least the
/// largest weight in the support, where the power-sum products of each
/// weight are a basis.
pub fn to_powersum(f: &SymPoly) -> Result<PowerSumPoly> {
    let n = f.n();
    let maxw = f.max_weight();
    if (maxw as usize) > n {
        return Err(Error::InvalidArgument(format!("power sums of weight {maxw} are dependent in {n} variables")));
    }
    let mut out = PowerSumPoly::zero(f.field());
    for w in 0..=maxw {
        // Ascending lexicographic order extends dominance upwards, and p_ρ only
        // involves m_μ with μ ≥ ρ, so the system is triangular in this order.
        let mut basis = partitions_of(w, None);
        basis.reverse();
        let rows: Vec<BTreeMap<Partition, Q>> = basis.iter().map(|rho| powersum_in_monomials(rho, n)).collect();
        let mut solved: Vec<RatFunc> = Vec::with_capacity(basis.len());
        for (i, mu) in basis.iter().enumerate() {
            let mut rhs = f.coeff(mu);
            for (j, c) in solved.iter().enumerate() {
                if let Some(r) = rows[j].get(mu) {
                    rhs = &rhs - &c.scale(r);
                }
            }
            let diag = rows[i].get(mu).cloned().expect("p_μ contains m_μ");
            solved.push(rhs.scale(&diag.recip()).canonical());
        }
        for (rho, c) in basis.into_iter().zip(solved) {
            out.add_term(rho, &c);
        }
    }
    if &out.eval_in(n) != f {
        return Err(Error::IdentityViolation { identity: "power-sum reconstruction".into(), witness: f.to_string() });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn expanded_round_trip() {
        let f = pt_vars();
        let s = SymPoly::from_coeffs(
            3,
            &f,
            [(p(&[2, 1]), RatFunc::var(&f, "t").unwrap()), (p(&[1, 1, 1]), RatFunc::from_int(&f, 3))],
        )
        .unwrap();
        let vars = Vars::z_with(3, &["p", "t"]);
        let poly = s.to_poly(&vars).unwrap();
        assert_eq!(poly.len(), 7);
        assert_eq!(SymPoly::from_poly(3, &poly, &f).unwrap(), s);
        assert_eq!(s.expand().len(), 7);
    }

    #[test]
    fn asymmetric_input_is_rejected() {
        let vars = Vars::z_with(2, &["p", "t"]);
        let z1 = SparsePoly::var(&vars, "z1").unwrap();
        assert!(matches!(SymPoly::from_poly(2, &z1, &pt_vars()), Err(Error::SymmetryViolation(_))));
    }

    #[test]
    fn elementary_in_power_sums() {
        let f = pt_vars();
        let e2 = SymPoly::monomial(2, &p(&[1, 1]), &f).unwrap();
        let ps = to_powersum(&e2).unwrap();
        let half = Q::new(1.into(), 2.into());
        assert_eq!(ps.coeff(&p(&[1, 1])), RatFunc::constant(&f, half.clone()));
        assert_eq!(ps.coeff(&p(&[2])), RatFunc::constant(&f, -half));
        assert_eq!(ps.eval_in(3), SymPoly::monomial(3, &p(&[1, 1]), &f).unwrap());
    }

    #[test]
    fn powersum_coefficients() {
        // p_1^2 = m_2 + 2 m_11
        let m = powersum_in_monomials(&p(&[1, 1]), 2);
        assert_eq!(m[&p(&[2])], Q::from_integer(1.into()));
        assert_eq!(m[&p(&[1, 1])], Q::from_integer(2.into()));
    }
}
