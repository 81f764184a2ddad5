//! Integer partitions and the dominance order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// The derived `Ord` is lexicographic on parts, so descending order is a
/// linear extension of dominance within each weight.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// Accepts trailing zeros (`(1,0)` is the partition `(1)`).
    pub fn from_padded(parts: &[u32]) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts.iter().copied().filter(|&p| p > 0).collect()))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let m = self.part(0);
        Partition((1..=m).map(|k| self.0.iter().filter(|&&p| p >= k).count() as u32).collect())
    }

    /// Parts padded with zeros to length `n`.
    pub fn padded(&self, n: usize) -> Result<Vec<u32>> {
        self.check_len(n)?;
        let mut v = self.0.clone();
        v.resize(n, 0);
        Ok(v)
    }

    pub fn check_len(&self, n: usize) -> Result<()> {
        if self.len() > n {
            return Err(Error::TooManyParts { partition: self.to_string(), n });
        }
        Ok(())
    }

    /// `(multiplicity of k)` for `k = 1..=λ₁`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.part(0) as usize];
        for &p in &self.0 {
            m[p as usize - 1] += 1;
        }
        m
    }

    /// `Σ (i−1) λ_i`; strictly decreases along dominance.
    pub fn n_statistic(&self) -> u32 {
        self.0.iter().enumerate().map(|(i, &p)| i as u32 * p).sum()
    }

    /// Runs of equal parts of the zero-padded sequence: `(value, length)`.
    pub fn runs(&self, n: usize) -> Result<Vec<(u32, usize)>> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for p in self.padded(n)? {
            match out.last_mut() {
                Some((v, c)) if *v == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        Ok(out)
    }
}

/// `μ ≤ λ` in dominance order.
pub fn dominance_leq(mu: &Partition, lam: &Partition) -> Result<bool> {
    if mu.weight() != lam.weight() {
        return Err(Error::WeightMismatch(mu.to_string(), lam.to_string()));
    }
    let (mut a, mut b) = (0u32, 0u32);
    for i in 0..mu.len().max(lam.len()) {
        a += mu.part(i);
        b += lam.part(i);
        if a > b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Partitions of `w` with at most `max_len` parts, in descending
/// lexicographic order.
pub fn partitions_of(w: u32, max_len: Option<usize>) -> Vec<Partition> {
    fn rec(rest: u32, cap: u32, len_left: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if len_left == 0 {
            return;
        }
        for p in (1..=cap.min(rest)).rev() {
            cur.push(p);
            rec(rest - p, p, len_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(w, w, max_len.unwrap_or(usize::MAX), &mut Vec::new(), &mut out);
    out
}

/// Partitions of weight at most `w`, by weight and then descending lex.
pub fn partitions_up_to(w: u32, max_len: Option<usize>) -> Vec<Partition> {
    (0..=w).flat_map(|k| partitions_of(k, max_len)).collect()
}

/// Distinct permutations of a multiset, in lexicographic order.
pub fn distinct_permutations(v: &[u32]) -> Vec<Vec<u32>> {
    let mut cur = v.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    while let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) {
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Parses `"2,1"`, `"(2,1)"`, `"2,1,0"` or the empty string.
impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts: Vec<u32> = s
            .split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|e| Error::Parse(format!("partition part `{x}`: {e}"))))
            .collect::<Result<_>>()?;
        Partition::from_padded(&parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance_leq(&p(&[1, 1, 1]), &p(&[3])).unwrap());
        assert!(!dominance_leq(&p(&[3]), &p(&[1, 1, 1])).unwrap());
        assert!(dominance_leq(&p(&[2, 2]), &p(&[3, 1])).unwrap());
        assert!(matches!(dominance_leq(&p(&[2]), &p(&[3])), Err(Error::WeightMismatch(..))));
    }

    #[test]
    fn conjugation_is_an_involution() {
        for w in 0..=8 {
            for lam in partitions_of(w, None) {
                assert_eq!(lam.conjugate().conjugate(), lam);
                assert_eq!(lam.conjugate().weight(), w);
            }
        }
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=8).map(|w| partitions_of(w, None).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(partitions_of(4, Some(2)), vec![p(&[4]), p(&[3, 1]), p(&[2, 2])]);
    }

    #[test]
    fn descending_lex_extends_dominance() {
        let ps = partitions_of(7, None);
        for (i, a) in ps.iter().enumerate() {
            for b in &ps[i + 1..] {
                assert!(!dominance_leq(a, b).unwrap() || a == b);
            }
        }
    }

    #[test]
    fn parsing_and_validation() {
        assert_eq!("2,1,0".parse::<Partition>().unwrap(), p(&[2, 1]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(p(&[2, 2, 1]).runs(3).unwrap(), vec![(2, 2), (1, 1)]);
        assert_eq!(Partition::empty().runs(2).unwrap(), vec![(0, 2)]);
    }

    #[test]
    fn multiset_permutations() {
        assert_eq!(distinct_permutations(&[1, 0, 0]).len(), 3);
        assert_eq!(distinct_permutations(&[2, 1, 0]).len(), 6);
        assert_eq!(distinct_permutations(&[]).len(), 1);
    }
}
