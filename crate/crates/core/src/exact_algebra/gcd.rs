//! Multivariate polynomial gcd.
//!
//! The heuristic evaluation gcd (evaluate one variable at a large integer,
//! recurse, reconstruct by balanced ξ-adic expansion, verify by exact
//! division) is tried first; recursive primitive pseudo-remainder sequences
//! are the fallback. Monomials are units in the Laurent ring, so inputs are
//! shifted to have no monomial factor first and the result never carries one.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::SparsePoly;
use super::Q;

/// Normalized gcd in the Laurent ring: primitive integer coefficients,
/// positive leading coefficient, no monomial factor. `gcd(0, b)` is `b`
/// normalized the same way.
pub fn poly_gcd(a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
    a.check_vars(b).expect("gcd over different variables");
    if a.is_zero() {
        return normalized(b);
    }
    if b.is_zero() {
        return normalized(a);
    }
    let (a, b) = (normalized(a), normalized(b));
    if let Some(g) = heu_gcd(&a, &b) {
        return normalized(&g);
    }
    gcd_rec(&a, &b)
}

fn int_content(a: &SparsePoly) -> BigInt {
    a.terms().fold(BigInt::zero(), |g, (_, c)| g.gcd(c.numer()))
}

fn max_norm(a: &SparsePoly) -> BigInt {
    a.terms().map(|(_, c)| c.numer().abs()).max().unwrap_or_else(BigInt::zero)
}

// Balanced residue in (−m/2, m/2].
fn smod(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Gcd of integer-coefficient polynomials with nonnegative exponents, content
/// included. `None` when the evaluation points were unlucky.
fn heu_gcd(a: &SparsePoly, b: &SparsePoly) -> Option<SparsePoly> {
    if a.is_zero() || b.is_zero() {
        return None;
    }
    let (ca, cb) = (int_content(a), int_content(b));
    let g0 = ca.gcd(&cb);
    if a.is_constant() || b.is_constant() {
        return Some(SparsePoly::constant(a.vars(), Q::from_integer(g0)));
    }
    let a1 = a.scale(&Q::from_integer(ca).recip());
    let b1 = b.scale(&Q::from_integer(cb).recip());
    let (da, db) = (a1.max_exps(), b1.max_exps());
    let v = (0..a.nvars()).find(|&i| da[i] > 0 || db[i] > 0)?;
    let bound = da[v].min(db[v]).max(0) as usize + 1;
    let mut xi: BigInt = max_norm(&a1).min(max_norm(&b1)) * 2 + 29;
    for _ in 0..6 {
        let xq = Q::from_integer(xi.clone());
        let ea = a1.eval_var(v, &xq).ok()?;
        let eb = b1.eval_var(v, &xq).ok()?;
        if !ea.is_zero() && !eb.is_zero() {
            if let Some(h) = heu_gcd(&ea, &eb) {
                if let Some(g) = reconstruct(&h, &xi, v, bound) {
                    if !g.is_constant() || g.is_one() {
                        let (_, g) = g.primitive_integer();
                        if a1.exact_div(&g).is_ok() && b1.exact_div(&g).is_ok() {
                            return Some(g.scale(&Q::from_integer(g0)));
                        }
                    }
                }
            }
        }
        xi = xi * 73794 / 27011;
    }
    None
}

fn reconstruct(h: &SparsePoly, xi: &BigInt, v: usize, max_terms: usize) -> Option<SparsePoly> {
    let mut h = h.clone();
    let mut g = SparsePoly::zero(h.vars());
    let mut shift = vec![0; h.nvars()];
    let inv = Q::from_integer(xi.clone()).recip();
    for i in 0..=max_terms {
        if h.is_zero() {
            return (!g.is_zero()).then_some(g);
        }
        let gi =
            SparsePoly::from_terms(h.vars(), h.terms().map(|(e, c)| (e.clone(), Q::from_integer(smod(c.numer(), xi)))));
        shift[v] = i as i32;
        g = &g + &gi.mul_monomial(&shift, &Q::one());
        h = (&h - &gi).scale(&inv);
    }
    None
}

/// Strips content and monomial factor; positive leading coefficient.
pub fn normalized(a: &SparsePoly) -> SparsePoly {
    if a.is_zero() {
        return a.clone();
    }
    a.normalize_parts().2
}

fn one_like(a: &SparsePoly) -> SparsePoly {
    SparsePoly::one(a.vars())
}

// Both arguments normalized and nonzero.
fn gcd_rec(a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
    if a.is_constant() || b.is_constant() {
        return one_like(a);
    }
    if a == b {
        return a.clone();
    }
    let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if big.exact_div(small).is_ok() {
        return small.clone();
    }
    let da = a.max_exps();
    let db = b.max_exps();
    // Prefer a variable occurring in both, of smallest combined degree.
    let shared = (0..a.nvars()).filter(|&i| da[i] > 0 && db[i] > 0).min_by_key(|&i| da[i] + db[i]);
    let Some(v) = shared else {
        // No common variable: the gcd lives in the coefficients.
        let va = (0..a.nvars()).find(|&i| da[i] > 0).unwrap();
        return gcd_rec(&content_in(a, va), b);
    };
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let gc = if ca.is_constant() || cb.is_constant() { one_like(a) } else { gcd_rec(&ca, &cb) };
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let gp = prs(&pa, &pb, v);
    normalized(&(&gc * &gp))
}

/// Gcd of the coefficients of `a` viewed as a polynomial in variable `v`.
pub(crate) fn content_in(a: &SparsePoly, v: usize) -> SparsePoly {
    let coeffs = a.collect_in(v);
    let mut it = coeffs.into_values().map(|c| normalized(&c));
    let mut g = it.next().expect("nonzero polynomial");
    for c in it {
        if g.is_constant() {
            break;
        }
        g = gcd_rec(&g, &c);
    }
    g
}

fn primitive_in(a: &SparsePoly, v: usize) -> SparsePoly {
    let c = content_in(a, v);
    normalized(&a.exact_div(&c).expect("content divides"))
}

fn lead_in(a: &BTreeMap<i32, SparsePoly>) -> (i32, &SparsePoly) {
    let (d, c) = a.iter().next_back().expect("nonzero");
    (*d, c)
}

/// Sparse pseudo-remainder of `f` by `g` in variable `v`.
fn prem(f: &SparsePoly, g: &SparsePoly, v: usize) -> SparsePoly {
    let gu = g.collect_in(v);
    let (dg, lg) = lead_in(&gu);
    let lg = lg.clone();
    let mut r = f.clone();
    let mut shift = vec![0; f.nvars()];
    loop {
        if r.is_zero() {
            return r;
        }
        let ru = r.collect_in(v);
        let (dr, lr) = lead_in(&ru);
        if dr < dg {
            return r;
        }
        shift[v] = dr - dg;
        let lr = lr.clone();
        r = &(&r * &lg) - &(&g.mul_monomial(&shift, &Q::from_integer(1.into())) * &lr);
    }
}

/// Primitive PRS on two polynomials primitive in `v`; returns their gcd.
fn prs(a: &SparsePoly, b: &SparsePoly, v: usize) -> SparsePoly {
    let (mut f, mut g) = if a.degree_in(v) >= b.degree_in(v) { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    loop {
        let r = prem(&f, &g, v);
        if r.is_zero() {
            return primitive_in(&g, v);
        }
        if r.degree_in(v).unwrap_or(0) == 0 && r.min_exps()[v] == 0 {
            return one_like(a);
        }
        f = g;
        g = primitive_in(&normalized(&r), v);
        if g.degree_in(v) == Some(0) {
            return one_like(a);
        }
    }
}

/// Least common multiple (normalized, no monomial factor).
pub fn poly_lcm(a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
    if a.is_zero() || b.is_zero() {
        return SparsePoly::zero(a.vars());
    }
    let g = poly_gcd(a, b);
    normalized(&(&normalized(a).exact_div(&g).expect("gcd divides") * &normalized(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::Vars;

    fn v() -> Vars {
        Vars::new(["x", "y", "z"])
    }

    fn x(n: &str) -> SparsePoly {
        SparsePoly::var(&v(), n).unwrap()
    }

    fn c(k: i64) -> SparsePoly {
        SparsePoly::from_int(&v(), k)
    }

    #[test]
    fn univariate_common_factor() {
        let f = &(&x("x") - &c(1)) * &(&x("x") + &c(2));
        let g = &(&x("x") - &c(1)) * &(&x("x") - &c(3));
        assert_eq!(poly_gcd(&f, &g), &x("x") - &c(1));
    }

    #[test]
    fn multivariate_common_factor() {
        let common = &(&x("x") * &x("y")) - &(&x("z").pow(2) * &c(2));
        let f = &common * &(&x("x") + &x("y"));
        let g = &(&common * &common) * &(&x("y") - &x("z").scale_int(5));
        let h = poly_gcd(&f, &g);
        assert_eq!(h, normalized(&common));
    }

    #[test]
    fn coprime_and_monomial_units() {
        let f = &(&x("x") + &x("y")) * &x("z").pow(3);
        let g = &(&x("x") - &x("y")) * &x("z");
        assert!(poly_gcd(&f, &g).is_one());
        let l = poly_lcm(&f, &g);
        assert_eq!(l, normalized(&(&(&x("x") + &x("y")) * &(&x("x") - &x("y")))));
    }

    #[test]
    fn content_in_variable() {
        let f = &(&x("y") + &c(1)) * &(&x("x").pow(2) + &x("z"));
        let g = &(&x("y") + &c(1)) * &(&x("x") - &x("z"));
        assert_eq!(poly_gcd(&f, &g), &x("y") + &c(1));
    }
}
