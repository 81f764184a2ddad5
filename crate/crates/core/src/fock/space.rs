//! Basis states and vectors of the truncated Fock space
//! `ℂ[b₋₁, b₋₂, …] ⊗ ℂ[e^{Λ_i + nα}]`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use serde_json::json;

use crate::error::{Error, Result};
use crate::exact_algebra::{qi, RatFunc, SparsePoly, Vars};
use crate::symfun::{partitions_up_to, Partition};

/// The scalar field `ℚ(q)`.
pub fn q_vars() -> Vars {
    static V: OnceLock<Vars> = OnceLock::new();
    V.get_or_init(|| Vars::new(["q"])).clone()
}

/// `c·q^k` in `ℚ(q)`.
pub fn q_pow(k: i32, c: i64) -> RatFunc {
    RatFunc::from_poly(SparsePoly::monomial(&q_vars(), vec![k], qi(c)))
}

/// `b_{−μ} ⊗ e^{Λ_i + nα}`, stored with the doubled lattice index `L = 2n + i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisState {
    boson: Partition,
    lattice: i32,
}

impl BasisState {
    pub fn new(boson: Partition, n: i32, i: u8) -> Result<Self> {
        if i > 1 {
            return Err(Error::InvalidArgument(format!("sector must be 0 or 1, got {i}")));
        }
        Ok(BasisState { boson, lattice: 2 * n + i as i32 })
    }

    pub fn from_doubled(boson: Partition, lattice: i32) -> Self {
        BasisState { boson, lattice }
    }

    pub fn vacuum(i: u8) -> Self {
        BasisState { boson: Partition::empty(), lattice: (i & 1) as i32 }
    }

    pub fn boson(&self) -> &Partition {
        &self.boson
    }

    pub fn doubled(&self) -> i32 {
        self.lattice
    }

    pub fn sector(&self) -> u8 {
        self.lattice.rem_euclid(2) as u8
    }

    pub fn n(&self) -> i32 {
        (self.lattice - self.sector() as i32) / 2
    }

    /// `|μ| + n² + ni`.
    pub fn degree(&self) -> i64 {
        self.boson.weight() as i64 + lattice_degree(self.lattice)
    }
}

/// `n² + ni` for `L = 2n + i`, i.e. `(L² − i)/4`.
pub fn lattice_degree(doubled: i32) -> i64 {
    let l = doubled as i64;
    (l * l - l.rem_euclid(2)) / 4
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, n={}, i={})", self.boson, self.n(), self.sector())
    }
}

/// A finite combination of basis states of degree at most `cutoff`.
#[derive(Clone, PartialEq, Eq)]
pub struct FockVector {
    cutoff: i64,
    entries: BTreeMap<BasisState, RatFunc>,
}

impl FockVector {
    pub fn zero(cutoff: i64) -> Self {
        FockVector { cutoff, entries: BTreeMap::new() }
    }

    pub fn basis(state: BasisState, cutoff: i64) -> Result<Self> {
        let mut v = Self::zero(cutoff);
        v.add_term(state, &RatFunc::one(&q_vars()))?;
        Ok(v)
    }

    /// `|i⟩ = 1 ⊗ e^{Λ_i}`.
    pub fn vacuum(i: u8, cutoff: i64) -> Result<Self> {
        Self::basis(BasisState::vacuum(i), cutoff)
    }

    pub fn cutoff(&self) -> i64 {
        self.cutoff
    }

    pub fn entries(&self) -> &BTreeMap<BasisState, RatFunc> {
        &self.entries
    }

    pub fn coeff(&self, s: &BasisState) -> RatFunc {
        self.entries.get(s).cloned().unwrap_or_else(|| RatFunc::zero(&q_vars()))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Adds `c·s`; a state above the cutoff is an error.
    pub fn add_term(&mut self, s: BasisState, c: &RatFunc) -> Result<()> {
        if s.degree() > self.cutoff {
            return Err(Error::CutoffExceeded(self.cutoff));
        }
        self.add_unchecked(s, c);
        Ok(())
    }

    /// Adds `c·s` if `s` lies within the cutoff and drops it otherwise.
    pub(crate) fn add_truncated(&mut self, s: BasisState, c: &RatFunc) {
        if s.degree() <= self.cutoff {
            self.add_unchecked(s, c);
        }
    }

    fn add_unchecked(&mut self, s: BasisState, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        let v = match self.entries.get(&s) {
            Some(old) => (old + c).canonical(),
            None => c.canonical(),
        };
        if v.is_zero() {
            self.entries.remove(&s);
        } else {
            self.entries.insert(s, v);
        }
    }

    pub fn add(&self, o: &FockVector) -> FockVector {
        let mut out = FockVector { cutoff: self.cutoff.min(o.cutoff), entries: BTreeMap::new() };
        for (s, c) in self.entries.iter().chain(&o.entries) {
            out.add_truncated(s.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &RatFunc) -> FockVector {
        let mut out = Self::zero(self.cutoff);
        for (s, v) in &self.entries {
            out.add_unchecked(s.clone(), &(v * c));
        }
        out
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.entries.keys().map(BasisState::degree).max()
    }

    /// The common degree of all states, `None` for the zero vector.
    pub fn homogeneous_degree(&self) -> Result<Option<i64>> {
        let mut degs = self.entries.keys().map(BasisState::degree);
        let Some(d) = degs.next() else { return Ok(None) };
        match degs.find(|&e| e != d) {
            None => Ok(Some(d)),
            Some(e) => Err(Error::InhomogeneousVector(format!("degrees {d} and {e} in {self}"))),
        }
    }

    /// `c` with `self = c·o`, if the two vectors are proportional.
    pub fn ratio_to(&self, o: &FockVector) -> Option<RatFunc> {
        if self.entries.len() != o.entries.len() {
            return None;
        }
        let (s0, c0) = o.entries.iter().next()?;
        let r = self.entries.get(s0)?.checked_div(c0).ok()?.canonical();
        o.entries.iter().all(|(s, c)| self.entries.get(s).is_some_and(|v| *v == c * &r)).then_some(r)
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.entries.iter().map(|(s, c)| format!("({c})*{s}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FockVector[{self}]")
    }
}

struct States<'a>(&'a BTreeMap<BasisState, RatFunc>);

impl Serialize for States<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for (st, c) in self.0 {
            seq.serialize_element(&json!({
                "boson": st.boson.parts(),
                "n": st.n(),
                "sector": st.sector(),
                "degree": st.degree(),
                "coefficient": c.to_string(),
            }))?;
        }
        seq.end()
    }
}

impl Serialize for FockVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        json!({"cutoff": self.cutoff, "states": States(&self.entries)}).serialize(s)
    }
}

/// `b_{−n}` for `mode = −n` and `b_n` for `mode = n`.
pub fn boson_apply(mode: i32, v: &FockVector) -> Result<FockVector> {
    if mode == 0 {
        return Err(Error::InvalidArgument("boson mode must be nonzero".into()));
    }
    let n = mode.unsigned_abs();
    let mut out = FockVector::zero(v.cutoff);
    for (s, c) in &v.entries {
        let mut parts = s.boson.parts().to_vec();
        if mode < 0 {
            parts.push(n);
            parts.sort_unstable_by(|a, b| b.cmp(a));
            out.add_truncated(BasisState::from_doubled(Partition::new(parts)?, s.lattice), c);
        } else if let Some(pos) = parts.iter().position(|&p| p == n) {
            let mult = parts.iter().filter(|&&p| p == n).count() as i64;
            parts.remove(pos);
            let st = BasisState::from_doubled(Partition::new(parts)?, s.lattice);
            out.add_unchecked(st, &c.scale(&qi(n as i64 * mult)));
        }
    }
    Ok(out)
}

/// All basis states of sector `i` with degree at most `d`, by degree.
pub fn fock_basis(i: u8, d: i64) -> Result<Vec<BasisState>> {
    if i > 1 {
        return Err(Error::InvalidArgument(format!("sector must be 0 or 1, got {i}")));
    }
    let mut out = Vec::new();
    for l in (-2 * d - 2..=2 * d + 2).filter(|l| l.rem_euclid(2) == i as i64) {
        let base = lattice_degree(l as i32);
        if base > d {
            continue;
        }
        for mu in partitions_up_to((d - base) as u32, None) {
            out.push(BasisState::from_doubled(mu, l as i32));
        }
    }
    out.sort_by_key(|s| (s.degree(), s.clone()));
    Ok(out)
}

/// Number of basis states of each degree `0..=d` in sector `i`.
pub fn graded_dimension(i: u8, d: i64) -> Result<Vec<i64>> {
    let mut dims = vec![0; d.max(-1) as usize + 1];
    for s in fock_basis(i, d)? {
        dims[s.degree() as usize] += 1;
    }
    Ok(dims)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn degrees_of_basis_states() {
        assert_eq!(BasisState::vacuum(0).degree(), 0);
        assert_eq!(BasisState::vacuum(1).degree(), 0);
        assert_eq!(BasisState::new(p(&[]), 1, 0).unwrap().degree(), 1);
        assert_eq!(BasisState::new(p(&[]), -1, 1).unwrap().degree(), 0);
        assert_eq!(BasisState::new(p(&[2, 1]), -1, 0).unwrap().degree(), 4);
        let s = BasisState::from_doubled(p(&[]), -3);
        assert_eq!((s.n(), s.sector(), s.degree()), (-2, 1, 2));
    }

    #[test]
    fn creation_and_annihilation() {
        let vac = FockVector::vacuum(0, 6).unwrap();
        let one = boson_apply(-1, &vac).unwrap();
        assert_eq!(one, FockVector::basis(BasisState::new(p(&[1]), 0, 0).unwrap(), 6).unwrap());
        assert_eq!(boson_apply(1, &one).unwrap(), vac);
        let two = boson_apply(-1, &one).unwrap();
        assert!(boson_apply(2, &two).unwrap().is_zero());
        // [b₁, b₋₁] = 1 applied to b₋₁²|0⟩ gives 2 b₋₁|0⟩.
        assert_eq!(boson_apply(1, &two).unwrap(), one.scale(&q_pow(0, 2)));
        assert!(boson_apply(0, &vac).is_err());
    }

    #[test]
    fn creation_respects_cutoff() {
        let v = FockVector::basis(BasisState::new(p(&[2]), 0, 0).unwrap(), 2).unwrap();
        assert!(boson_apply(-1, &v).unwrap().is_zero());
        assert!(FockVector::basis(BasisState::new(p(&[3]), 0, 0).unwrap(), 2).is_err());
    }

    #[test]
    fn commutator_on_random_states() {
        // [b_m, b_{−n}] = m δ_{mn}.
        let v = FockVector::basis(BasisState::new(p(&[3, 1, 1]), 1, 1).unwrap(), 20).unwrap();
        for m in 1..=3 {
            for n in 1..=3 {
                let ab = boson_apply(m, &boson_apply(-n, &v).unwrap()).unwrap();
                let ba = boson_apply(-n, &boson_apply(m, &v).unwrap()).unwrap();
                let comm = ab.add(&ba.scale(&q_pow(0, -1)));
                let want = if m == n { v.scale(&q_pow(0, m as i64)) } else { FockVector::zero(20) };
                assert_eq!(comm, want, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn basis_counts() {
        assert_eq!(graded_dimension(0, 4).unwrap(), vec![1, 3, 4, 7, 13]);
        assert_eq!(graded_dimension(1, 4).unwrap(), vec![2, 2, 6, 8, 14]);
    }

    #[test]
    fn graded_dimension_matches_bosonic_character() {
        for i in 0..=1 {
            let want = crate::characters::bosonic_character(i, 10, false).unwrap().dims();
            assert_eq!(graded_dimension(i, 10).unwrap(), want);
        }
    }

    #[test]
    fn proportionality() {
        let a = FockVector::basis(BasisState::vacuum(0), 3).unwrap();
        let b = a.add(&boson_apply(-1, &a).unwrap());
        assert_eq!(b.scale(&q_pow(2, -1)).ratio_to(&b), Some(q_pow(2, -1)));
        assert_eq!(a.ratio_to(&b), None);
    }
}
