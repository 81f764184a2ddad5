//! The Macdonald difference operators `D_N^n(p,t)` in the monomial basis.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use super::partition::{distinct_permutations, dominance_leq, partitions_of, Partition};
use super::sympoly::{monomial_symmetric, pt_vars, SymPoly};
use crate::error::{Error, Result};
use crate::exact_algebra::{RatFunc, SparsePoly, Vars, Q};

/// How the image `D_N^n m_μ` is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperatorPath {
    /// Sum over subsets with the Vandermonde as common denominator, then an
    /// exact division that must leave no remainder.
    Direct,
    /// Expands every factor `(t z_i − z_j)/(z_i − z_j)` as a series in the
    /// region `|z₁| ≫ … ≫ |z_N|` and reads off the coefficients of `z^ν`
    /// for partitions `ν`. Only finitely many terms reach each `ν`.
    Expansion,
}

type ColumnKey = (usize, usize, Partition, OperatorPath);

fn column_cache() -> &'static Mutex<HashMap<ColumnKey, SymPoly>> {
    static C: OnceLock<Mutex<HashMap<ColumnKey, SymPoly>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// All `n`-subsets of `0..big_n`, each ascending.
pub fn subsets(big_n: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, big_n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..=big_n - left {
            cur.push(i);
            rec(i + 1, big_n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n <= big_n {
        rec(0, big_n, n, &mut Vec::new(), &mut out);
    }
    out
}

fn check_args(n: usize, big_n: usize) -> Result<()> {
    if n > big_n {
        return Err(Error::IndexOutOfRange(format!("operator index {n} exceeds N = {big_n}")));
    }
    Ok(())
}

/// `D_N^n m_μ` with coefficients in `ℤ[p,t]`.
pub fn operator_column(n: usize, big_n: usize, mu: &Partition, path: OperatorPath) -> Result<SymPoly> {
    check_args(n, big_n)?;
    mu.check_len(big_n)?;
    let key = (n, big_n, mu.clone(), path);
    if let Some(c) = column_cache().lock().expect("cache lock").get(&key) {
        return Ok(c.clone());
    }
    let col = match path {
        OperatorPath::Direct => column_direct(n, big_n, mu)?,
        OperatorPath::Expansion => column_expansion(n, big_n, mu),
    };
    column_cache().lock().expect("cache lock").insert(key, col.clone());
    Ok(col)
}

fn column_direct(n: usize, big_n: usize, mu: &Partition) -> Result<SymPoly> {
    let vars = Vars::z_with(big_n, &["p", "t"]);
    let pi = big_n;
    let z = |i: usize| SparsePoly::var(&vars, &format!("z{}", i + 1)).expect("z var");
    let t = SparsePoly::var(&vars, "t")?;
    let m = monomial_symmetric(mu, &vars, big_n)?;
    let mut vand = SparsePoly::one(&vars);
    for a in 0..big_n {
        for b in a + 1..big_n {
            vand = &vand * &(&z(a) - &z(b));
        }
    }
    let mut acc = SparsePoly::zero(&vars);
    for set in subsets(big_n, n) {
        let mut num = SparsePoly::one(&vars);
        let mut den = SparsePoly::one(&vars);
        for &i in &set {
            for j in (0..big_n).filter(|j| !set.contains(j)) {
                num = &num * &(&(&t * &z(i)) - &z(j));
                den = &den * &(&z(i) - &z(j));
            }
        }
        let cof = vand.exact_div(&den).expect("cross factors divide the Vandermonde");
        let mut shifted = m.clone();
        for &k in &set {
            shifted = shifted.shift_var(k, pi, 1);
        }
        acc = &acc + &(&(&num * &cof) * &shifted);
    }
    let out = acc.exact_div(&vand).map_err(|_| {
        Error::NonCancellingDenominator(format!("D_{big_n}^{n} m{mu} is not divisible by the Vandermonde"))
    })?;
    let scalar = t.pow((n * n.saturating_sub(1) / 2) as u32);
    SymPoly::from_poly(big_n, &(&out * &scalar), &pt_vars())
}

// Tally of one transfer pattern: exponents of t, (t−1), (1−t) and p.
type Tally = BTreeMap<(u32, u32, u32, i32), i64>;

fn column_expansion(n: usize, big_n: usize, mu: &Partition) -> SymPoly {
    let w = mu.weight();
    let alphas = distinct_permutations(&mu.padded(big_n).expect("length checked"));
    let targets: Vec<Partition> =
        partitions_of(w, Some(big_n)).into_iter().filter(|nu| dominance_leq(nu, mu).expect("same weight")).collect();
    let prefix = |v: &[i64]| -> Vec<i64> {
        v.iter()
            .scan(0i64, |s, &x| {
                *s += x;
                Some(*s)
            })
            .collect()
    };
    let field = pt_vars();
    let mut out = SymPoly::zero(big_n, &field);
    for nu in &targets {
        let nu_v: Vec<i64> = nu.padded(big_n).unwrap().iter().map(|&x| x as i64).collect();
        let nu_s = prefix(&nu_v);
        let mut tally = Tally::new();
        for set in subsets(big_n, n) {
            // (lo, hi, i<j): the pair's expansion moves mass from lo to hi.
            let pairs: Vec<(usize, usize, bool)> = set
                .iter()
                .flat_map(|&i| (0..big_n).filter(|j| !set.contains(j)).map(move |j| (i.min(j), i.max(j), i < j)))
                .collect();
            for a in &alphas {
                let cur: Vec<i64> = a.iter().map(|&x| x as i64).collect();
                let s = prefix(&cur);
                if s.iter().zip(&nu_s).any(|(x, y)| x < y) {
                    continue;
                }
                let pexp: i32 = set.iter().map(|&k| a[k] as i32).sum();
                enumerate_transfers(&pairs, 0, cur, &nu_v, &nu_s, (0, 0, 0), pexp, &mut tally);
            }
        }
        let c = tally_to_poly(&tally, n, &field);
        if !c.is_zero() {
            out.add_term(nu.clone(), &RatFunc::from_poly(c));
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn enumerate_transfers(
    pairs: &[(usize, usize, bool)],
    idx: usize,
    cur: Vec<i64>,
    target: &[i64],
    target_s: &[i64],
    counts: (u32, u32, u32),
    pexp: i32,
    tally: &mut Tally,
) {
    if idx == pairs.len() {
        if cur == target {
            *tally.entry((counts.0, counts.1, counts.2, pexp)).or_insert(0) += 1;
        }
        return;
    }
    let (lo, hi, forward) = pairs[idx];
    let mut s = 0i64;
    let mut slack = i64::MAX;
    for (m, &x) in cur.iter().enumerate().take(hi) {
        s += x;
        if m >= lo {
            slack = slack.min(s - target_s[m]);
        }
    }
    for k in 0..=slack {
        let mut next = cur.clone();
        next[lo] -= k;
        next[hi] += k;
        let c = match (forward, k) {
            (true, 0) => (counts.0 + 1, counts.1, counts.2),
            (true, _) => (counts.0, counts.1 + 1, counts.2),
            (false, 0) => counts,
            (false, _) => (counts.0, counts.1, counts.2 + 1),
        };
        enumerate_transfers(pairs, idx + 1, next, target, target_s, c, pexp, tally);
    }
}

fn tally_to_poly(tally: &Tally, n: usize, field: &Vars) -> SparsePoly {
    let t = SparsePoly::var(field, "t").expect("t");
    let one = SparsePoly::one(field);
    let tm1 = &t - &one;
    let omt = &one - &t;
    let mut acc = SparsePoly::zero(field);
    for (&(a, b, c, pe), &cnt) in tally {
        let mono = SparsePoly::monomial(field, vec![pe, a as i32], Q::from_integer(cnt.into()));
        acc = &acc + &(&(&mono * &tm1.pow(b)) * &omt.pow(c));
    }
    acc.mul_monomial(&[0, (n * n.saturating_sub(1) / 2) as i32], &Q::from_integer(1.into()))
}

/// `D_N^n(p,t) f` through the given path.
pub fn macdonald_operator_apply_with(n: usize, big_n: usize, f: &SymPoly, path: OperatorPath) -> Result<SymPoly> {
    let (den, nums) = f.common_denominator();
    let out = apply_to_numerators(n, big_n, f, &nums, path)?;
    let mut res = SymPoly::zero(big_n, f.field());
    for (nu, c) in out {
        res.add_term(nu, &RatFunc::new(c, den.clone())?);
    }
    Ok(res)
}

/// Applies `D_N^n` to `Σ nums[μ] m_μ` with polynomial coefficients; no
/// rational arithmetic is involved.
pub fn apply_to_numerators(
    n: usize,
    big_n: usize,
    f: &SymPoly,
    nums: &BTreeMap<Partition, SparsePoly>,
    path: OperatorPath,
) -> Result<BTreeMap<Partition, SparsePoly>> {
    check_args(n, big_n)?;
    if f.n() != big_n {
        return Err(Error::InvalidArgument(format!("polynomial in {} variables, operator in {big_n}", f.n())));
    }
    let mut out: BTreeMap<Partition, SparsePoly> = BTreeMap::new();
    for (mu, c) in nums {
        let col = operator_column(n, big_n, mu, path)?;
        let col = if f.field() == &pt_vars() { col } else { embed_column(&col, f.field())? };
        for (nu, d) in col.coeffs() {
            let d = d.as_poly().expect("operator coefficients are polynomials");
            let term = d * c;
            let slot = out.entry(nu.clone()).or_insert_with(|| SparsePoly::zero(f.field()));
            *slot = &*slot + &term;
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

fn embed_column(col: &SymPoly, field: &Vars) -> Result<SymPoly> {
    let mut coeffs = Vec::new();
    for (lam, c) in col.coeffs() {
        coeffs.push((lam.clone(), c.embed(field)?));
    }
    SymPoly::from_coeffs(col.n(), field, coeffs)
}

/// `D_N^n(p,t) f`, expanding the operator with the Vandermonde as common
/// denominator and asserting that it cancels.
pub fn macdonald_operator_apply(n: usize, big_n: usize, f: &SymPoly) -> Result<SymPoly> {
    macdonald_operator_apply_with(n, big_n, f, OperatorPath::Direct)
}

/// `[D_N^0 f, …, D_N^k f]` with `k = min(u_degree, N)`: the coefficients of
/// `u^0..u^k` in `D(u;p,t) f = Σ_n D_N^n f u^n`.
pub fn macdonald_gen_apply(u_degree: usize, big_n: usize, f: &SymPoly) -> Result<Vec<SymPoly>> {
    (0..=u_degree.min(big_n)).map(|n| macdonald_operator_apply(n, big_n, f)).collect()
}

/// `e_n(t^{N−1}p^{λ₁}, …, t⁰p^{λ_N})`.
pub fn eigenvalue(n: usize, big_n: usize, lam: &Partition) -> Result<RatFunc> {
    let field = pt_vars();
    let xs: Vec<SparsePoly> = lam
        .padded(big_n)?
        .iter()
        .enumerate()
        .map(|(j, &l)| SparsePoly::monomial(&field, vec![l as i32, (big_n - 1 - j) as i32], Q::from_integer(1.into())))
        .collect();
    // coefficients of ∏(1 + x_j u)
    let mut e = vec![SparsePoly::one(&field)];
    for x in &xs {
        let mut next = e.clone();
        next.push(SparsePoly::zero(&field));
        for k in 0..e.len() {
            next[k + 1] = &next[k + 1] + &(&e[k] * x);
        }
        e = next;
    }
    Ok(RatFunc::from_poly(e.get(n).cloned().unwrap_or_else(|| SparsePoly::zero(&field))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn rf(s: &str) -> RatFunc {
        // tiny parser for sums of products of p, t and integers
        let f = pt_vars();
        let mut acc = RatFunc::zero(&f);
        for term in s.split('+') {
            let mut prod = RatFunc::one(&f);
            for fac in term.split('*') {
                let fac = fac.trim();
                prod = &prod
                    * &match fac {
                        "p" | "t" => RatFunc::var(&f, fac).unwrap(),
                        k => RatFunc::from_int(&f, k.parse().unwrap()),
                    };
            }
            acc = &acc + &prod;
        }
        acc
    }

    #[test]
    fn first_operator_examples() {
        let f = pt_vars();
        let one = SymPoly::one(2, &f);
        assert_eq!(macdonald_operator_apply(1, 2, &one).unwrap(), one.scale(&rf("t + 1")));
        let e1 = SymPoly::monomial(2, &p(&[1]), &f).unwrap();
        assert_eq!(macdonald_operator_apply(1, 2, &e1).unwrap(), e1.scale(&rf("t*p + 1")));
        assert_eq!(macdonald_operator_apply(2, 2, &e1).unwrap(), e1.scale(&rf("t*p")));
        assert_eq!(macdonald_operator_apply(0, 2, &e1).unwrap(), e1);
    }

    #[test]
    fn expansion_path_matches_direct() {
        for big_n in 1..=4 {
            for w in 0..=4 {
                for mu in partitions_of(w, Some(big_n)) {
                    for n in 0..=big_n {
                        let d = operator_column(n, big_n, &mu, OperatorPath::Direct).unwrap();
                        let e = operator_column(n, big_n, &mu, OperatorPath::Expansion).unwrap();
                        assert_eq!(d, e, "D_{big_n}^{n} m{mu}");
                    }
                }
            }
        }
    }

    #[test]
    fn columns_are_dominance_triangular() {
        for mu in partitions_of(5, Some(3)) {
            let col = operator_column(1, 3, &mu, OperatorPath::Expansion).unwrap();
            for nu in col.coeffs().keys() {
                assert!(dominance_leq(nu, &mu).unwrap());
            }
            assert_eq!(col.coeff(&mu), eigenvalue(1, 3, &mu).unwrap());
        }
    }

    #[test]
    fn subsets_enumeration() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(subsets(3, 3), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn out_of_range_index() {
        let one = SymPoly::one(2, &pt_vars());
        assert!(macdonald_operator_apply(3, 2, &one).is_err());
    }
}
