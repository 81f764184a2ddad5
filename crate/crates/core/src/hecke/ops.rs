//! Operator words and their action on anything that supports the elementary
//! moves (swap, scale, multiply, divided difference).
//!
//! Words are stored left to right as written and act right to left: the last
//! letter is applied first.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact_algebra::{qi, RatFunc, SparsePoly, Vars};

/// `z1..zN, q, p`.
pub fn hecke_vars(n: usize) -> Vars {
    Vars::z_with(n, &["q", "p"])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn exp(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn from_int(s: i32) -> Result<Sign> {
        match s {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(Error::InvalidArgument(format!("sign must be ±1, got {s}"))),
        }
    }
}

/// One letter of an operator word. Indices are 1-based.
#[derive(Clone, Debug, PartialEq)]
pub enum Op {
    /// Exchange of `z_i` and `z_j`.
    K(usize, usize),
    /// `p^{k ϑ_j}`: `z_j → p^k z_j`.
    Shift(usize, i32),
    /// `G_{jk}^{±1}`.
    G(usize, usize, Sign),
    /// `g_{jk}^{±1}`.
    SmallG(usize, usize, Sign),
    /// `r_{jk}^{±1} = (K_{jk} g_{jk})^{±1}`.
    R(usize, usize, Sign),
    /// Multiplication by a function of `z, q, p`.
    Mul(RatFunc),
}

impl Op {
    pub fn inverse(&self) -> Result<Op> {
        Ok(match self {
            Op::K(i, j) => Op::K(*i, *j),
            Op::Shift(j, k) => Op::Shift(*j, -k),
            Op::G(i, j, s) => Op::G(*i, *j, s.flip()),
            Op::SmallG(i, j, s) => Op::SmallG(*i, *j, s.flip()),
            Op::R(i, j, s) => Op::R(*i, *j, s.flip()),
            Op::Mul(f) => Op::Mul(f.inv()?),
        })
    }

    fn check(&self, n: usize) -> Result<()> {
        let bad = |what: String| Err(Error::IndexOutOfRange(what));
        match self {
            Op::K(i, j) if *i == 0 || *j == 0 || *i > n || *j > n || i == j => bad(format!("K_{{{i},{j}}} with N={n}")),
            Op::Shift(j, _) if *j == 0 || *j > n => bad(format!("p^ϑ_{j} with N={n}")),
            Op::G(i, j, _) | Op::SmallG(i, j, _) | Op::R(i, j, _) if *i == 0 || i >= j || *j > n => {
                bad(format!("{self} with N={n}"))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sup = |s: &Sign| if *s == Sign::Minus { "^-1" } else { "" };
        match self {
            Op::K(i, j) => write!(f, "K{i}{j}"),
            Op::Shift(j, 1) => write!(f, "p^θ{j}"),
            Op::Shift(j, k) => write!(f, "p^({k}θ{j})"),
            Op::G(i, j, s) => write!(f, "G{i}{j}{}", sup(s)),
            Op::SmallG(i, j, s) => write!(f, "g{i}{j}{}", sup(s)),
            Op::R(i, j, s) => write!(f, "r{i}{j}{}", sup(s)),
            Op::Mul(c) => write!(f, "[{c}]"),
        }
    }
}

pub fn word_to_string(word: &[Op]) -> String {
    word.iter().map(|o| o.to_string()).collect::<Vec<_>>().join("·")
}

/// A space the operator letters act on from the left. Indices are 0-based.
pub trait OpSpace: Sized {
    fn nz(&self) -> usize;
    fn vars(&self) -> &Vars;
    fn swap(&self, i: usize, j: usize) -> Self;
    fn shift(&self, j: usize, k: i32) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn scale_poly(&self, c: &SparsePoly) -> Self;
    fn mul_ratfunc(&self, c: &RatFunc) -> Result<Self>;
    /// `(X − K_{ij}X)/(z_i − z_j)`.
    fn divided(&self, i: usize, j: usize) -> Result<Self>;
}

/// `a·q^{qa}·z_i + b·q^{qb}·z_j` over `z, q, p`.
pub(crate) fn binomial(vars: &Vars, i: usize, a: i64, qa: i32, j: usize, b: i64, qb: i32) -> SparsePoly {
    let n = vars.len() - 2;
    let mono = |v: usize, c: i64, qe: i32| {
        let mut e = vec![0; vars.len()];
        e[v] = 1;
        e[n] = qe;
        SparsePoly::monomial(vars, e, qi(c))
    };
    &mono(i, a, qa) + &mono(j, b, qb)
}

pub(crate) fn q_pow(vars: &Vars, k: i32) -> SparsePoly {
    let n = vars.len() - 2;
    let mut e = vec![0; vars.len()];
    e[n] = k;
    SparsePoly::monomial(vars, e, qi(1))
}

pub fn apply_op<S: OpSpace>(op: &Op, x: &S) -> Result<S> {
    op.check(x.nz())?;
    let vars = x.vars().clone();
    Ok(match op {
        Op::K(i, j) => x.swap(i - 1, j - 1),
        Op::Shift(j, k) => x.shift(j - 1, *k),
        Op::G(j, k, s) => {
            // q^{±1} X − (q⁻¹z_j − q z_k)·(X − KX)/(z_j − z_k)
            let c = binomial(&vars, j - 1, -1, -1, k - 1, 1, 1);
            x.scale_poly(&q_pow(&vars, s.exp())).add(&x.divided(j - 1, k - 1)?.scale_poly(&c))
        }
        Op::SmallG(j, k, s) => small_g(x, *j, *k, *s)?,
        Op::R(j, k, Sign::Plus) => small_g(x, *j, *k, Sign::Plus)?.swap(j - 1, k - 1),
        Op::R(j, k, Sign::Minus) => small_g(&x.swap(j - 1, k - 1), *j, *k, Sign::Minus)?,
        Op::Mul(c) => x.mul_ratfunc(&c.embed(&vars)?)?,
    })
}

// (q z_j − q⁻¹z_k)·(X − KX)/(z_j − z_k) − q^{∓1} X
fn small_g<S: OpSpace>(x: &S, j: usize, k: usize, s: Sign) -> Result<S> {
    let vars = x.vars().clone();
    let c = binomial(&vars, j - 1, 1, 1, k - 1, -1, -1);
    Ok(x.divided(j - 1, k - 1)?.scale_poly(&c).add(&x.scale_poly(&q_pow(&vars, -s.exp()).scale_int(-1))))
}

/// Applies a word right to left.
pub fn apply_word<S: OpSpace>(word: &[Op], x: S) -> Result<S> {
    let mut acc = x;
    for op in word.iter().rev() {
        acc = apply_op(op, &acc)?;
    }
    Ok(acc)
}

pub fn inverse_word(word: &[Op]) -> Result<Vec<Op>> {
    word.iter().rev().map(Op::inverse).collect()
}

/// The two expressions for `Y_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YForm {
    /// `(G_{j,j+1}⁻¹K_{j,j+1})⋯(G_{j,N}⁻¹K_{j,N}) p^{ϑ_j} (K_{1,j}G_{1,j})⋯(K_{j−1,j}G_{j−1,j})`.
    Interleaved,
    /// `G_{j,j+1}⁻¹⋯G_{N−1,N}⁻¹ K_{12}⋯K_{1N} p^{ϑ_1} G_{12}⋯G_{j−1,j}`.
    Adjacent,
}

fn check_j(j: usize, n: usize) -> Result<()> {
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange(format!("j={j} with N={n}")));
    }
    Ok(())
}

fn y_word_with(j: usize, n: usize, form: YForm, gen: impl Fn(usize, usize, Sign) -> Op) -> Result<Vec<Op>> {
    check_j(j, n)?;
    let mut w = Vec::new();
    match form {
        YForm::Adjacent => {
            w.extend((j..n).map(|i| gen(i, i + 1, Sign::Minus)));
            w.extend((2..=n).map(|k| Op::K(1, k)));
            w.push(Op::Shift(1, 1));
            w.extend((1..j).map(|i| gen(i, i + 1, Sign::Plus)));
        }
        YForm::Interleaved => {
            for k in j + 1..=n {
                w.push(gen(j, k, Sign::Minus));
                w.push(Op::K(j, k));
            }
            w.push(Op::Shift(j, 1));
            for i in 1..j {
                w.push(Op::K(i, j));
                w.push(gen(i, j, Sign::Plus));
            }
        }
    }
    Ok(w)
}

/// Word for `Y_j` built from `G`.
pub fn big_y_word(j: usize, n: usize, form: YForm) -> Result<Vec<Op>> {
    y_word_with(j, n, form, Op::G)
}

/// Word for `y_j`: the `Y_j` word with `g` in place of `G`.
pub fn small_y_word(j: usize, n: usize, form: YForm) -> Result<Vec<Op>> {
    y_word_with(j, n, form, Op::SmallG)
}

/// `y_j = r_−(j,N) p^{ϑ_j} r_+(1,j)` with `r_−(j,N) = r_{j,j+1}⁻¹⋯r_{j,N}⁻¹`
/// and `r_+(1,j) = r_{1,j}⋯r_{j−1,j}`.
pub fn r_y_word(j: usize, n: usize) -> Result<Vec<Op>> {
    check_j(j, n)?;
    let mut w: Vec<Op> = (j + 1..=n).map(|k| Op::R(j, k, Sign::Minus)).collect();
    w.push(Op::Shift(j, 1));
    w.extend((1..j).map(|i| Op::R(i, j, Sign::Plus)));
    Ok(w)
}
