//! Evaluation modules `W_n(a)`, their tensor products under `Δ′`, and the
//! cyclic submodule generated by the top weight vector.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::exact_algebra::{qi, qr, Matrix, RatFunc, RingElem, Q};

use super::drinfeld::DrinfeldPoly;
use super::rmatrix::q_vars;

/// Chevalley generators `e_i, f_i, t_i, t_i⁻¹` (`i = 0, 1`) as matrices over `ℚ(q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMatrices {
    pub dim: usize,
    pub e: [Matrix<RatFunc>; 2],
    pub f: [Matrix<RatFunc>; 2],
    pub t: [Matrix<RatFunc>; 2],
    pub t_inv: [Matrix<RatFunc>; 2],
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvalModule {
    pub n: usize,
    pub a: RatFunc,
    pub mats: ModuleMatrices,
}

fn q() -> RatFunc {
    RatFunc::var(&q_vars(), "q").expect("q")
}

/// `[m]_q = (q^m − q^{−m})/(q − q⁻¹)` as a Laurent polynomial.
pub fn q_integer(m: i64) -> RatFunc {
    let vars = q_vars();
    let mut acc = RatFunc::zero(&vars);
    let q = q();
    for k in 0..m {
        acc = &acc + &q.pow((m - 1 - 2 * k) as i32).expect("q ≠ 0");
    }
    acc
}

/// `q^k` as an evaluation parameter.
pub fn q_power(k: i32) -> RatFunc {
    q().pow(k).expect("q ≠ 0")
}

/// `W_n(a)`: basis `v_0..v_n` with `t_1 v_k = q^{n−2k} v_k`,
/// `e_1 v_k = [n−k+1] v_{k−1}`, `f_1 v_k = [k+1] v_{k+1}`, and
/// `e_0 = a f_1`, `f_0 = a⁻¹ e_1`, `t_0 = t_1⁻¹`.
pub fn eval_module(n: usize, a: &RatFunc) -> Result<EvalModule> {
    if a.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let a = a.embed(&q_vars())?.canonical();
    let d = n + 1;
    let zero = RatFunc::zero(&q_vars());
    let ni = n as i64;
    let e1 = Matrix::from_fn(d, d, |i, j| if j == i + 1 { q_integer(ni - j as i64 + 1) } else { zero.clone() });
    let f1 = Matrix::from_fn(d, d, |i, j| if i == j + 1 { q_integer(j as i64 + 1) } else { zero.clone() });
    let t1 = Matrix::from_fn(d, d, |i, j| if i == j { q_power(n as i32 - 2 * i as i32) } else { zero.clone() });
    let t1_inv = Matrix::from_fn(d, d, |i, j| if i == j { q_power(2 * i as i32 - n as i32) } else { zero.clone() });
    let a_inv = a.inv()?;
    let mats = ModuleMatrices {
        dim: d,
        e: [f1.scale(&a).canonical(), e1.clone()],
        f: [e1.scale(&a_inv).canonical(), f1],
        t: [t1_inv.clone(), t1.clone()],
        t_inv: [t1, t1_inv],
    };
    Ok(EvalModule { n, a, mats })
}

impl EvalModule {
    /// `P_n(u; a) = ∏_{i=1}^n (1 − q^{n−2(i−1)} a u)`.
    pub fn drinfeld(&self) -> Result<DrinfeldPoly> {
        DrinfeldPoly::string(self.n, &self.a)
    }
}

/// `Δ′(e_i) = e_i⊗t_i + 1⊗e_i`, `Δ′(f_i) = f_i⊗1 + t_i⁻¹⊗f_i`,
/// `Δ′(t_i) = t_i⊗t_i`, folded left to right.
pub fn tensor_coproduct(ws: &[ModuleMatrices]) -> Result<ModuleMatrices> {
    let (first, rest) = ws.split_first().ok_or_else(|| Error::InvalidArgument("empty tensor product".into()))?;
    let mut acc = first.clone();
    for b in rest {
        let one = RatFunc::one(&q_vars());
        let ia = Matrix::identity(acc.dim, &one);
        let ib = Matrix::identity(b.dim, &one);
        let pair = |f: &dyn Fn(usize) -> Matrix<RatFunc>| [f(0), f(1)];
        let e = pair(&|i| acc.e[i].kron(&b.t[i]).add(&ia.kron(&b.e[i])).canonical());
        let f = pair(&|i| acc.f[i].kron(&ib).add(&acc.t_inv[i].kron(&b.f[i])).canonical());
        let t = pair(&|i| acc.t[i].kron(&b.t[i]).canonical());
        let t_inv = pair(&|i| acc.t_inv[i].kron(&b.t_inv[i]).canonical());
        acc = ModuleMatrices { dim: acc.dim * b.dim, e, f, t, t_inv };
    }
    Ok(acc)
}

/// Arithmetic needed for incremental row reduction.
trait FieldElem: RingElem {
    fn recip(&self) -> Self;
    fn tidy(&self) -> Self;
}

impl FieldElem for Q {
    fn recip(&self) -> Self {
        num_traits::Inv::inv(self.clone())
    }
    fn tidy(&self) -> Self {
        self.clone()
    }
}

impl FieldElem for RatFunc {
    fn recip(&self) -> Self {
        self.inv().expect("nonzero pivot")
    }
    fn tidy(&self) -> Self {
        self.canonical()
    }
}

/// Echelon basis of a growing subspace.
struct Span<T> {
    rows: Vec<(usize, Vec<T>)>,
}

impl<T: FieldElem> Span<T> {
    fn reduce(&self, v: &[T]) -> Vec<T> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x = x.sub(&c.mul(r)).tidy();
                    }
                }
            }
        }
        v
    }

    /// Adds `v` when independent; returns whether it was.
    fn insert(&mut self, v: &[T]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else { return false };
        let inv = r[p].recip();
        let r: Vec<T> = r.iter().map(|x| x.mul(&inv).tidy()).collect();
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    if !y.is_zero() {
                        *x = x.sub(&c.mul(y)).tidy();
                    }
                }
            }
        }
        self.rows.push((p, r));
        true
    }
}

fn closure<T: FieldElem>(gens: &[Matrix<T>], start: Vec<T>) -> usize {
    let mut span = Span { rows: Vec::new() };
    let mut queue = VecDeque::new();
    if span.insert(&start) {
        queue.push_back(start);
    }
    while let Some(v) = queue.pop_front() {
        for g in gens {
            let w: Vec<T> = g.apply(&v).iter().map(|x| x.tidy()).collect();
            if span.insert(&w) {
                queue.push_back(w);
            }
        }
    }
    span.rows.len()
}

/// Value of `q` for the fast specialized pass.
const Q_SPECIAL: (i64, i64) = (2, 1);

/// Dimension of the submodule generated by the top weight vector
/// `v_0⊗…⊗v_0`. A pass at a rational `q` gives a lower bound; only when it
/// falls short is the closure redone over `ℚ(q)`.
pub fn cyclic_dimension(m: &ModuleMatrices) -> Result<usize> {
    let gens: Vec<&Matrix<RatFunc>> = m.e.iter().chain(m.f.iter()).collect();
    let point = [qr(Q_SPECIAL.0, Q_SPECIAL.1)];
    let special: Vec<Matrix<Q>> = gens
        .iter()
        .map(|g| {
            let mut out = Matrix::zeros(m.dim, m.dim, &qi(0));
            for i in 0..m.dim {
                for j in 0..m.dim {
                    out.set(i, j, g.get(i, j).eval_all(&point)?);
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut start = vec![qi(0); m.dim];
    start[0] = qi(1);
    let d = closure(&special, start);
    if d == m.dim {
        return Ok(d);
    }
    let symbolic: Vec<Matrix<RatFunc>> = gens.into_iter().cloned().collect();
    let zero = RatFunc::zero(&q_vars());
    let mut start = vec![zero; m.dim];
    start[0] = RatFunc::one(&q_vars());
    Ok(closure(&symbolic, start))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn commutator_ok(m: &ModuleMatrices, i: usize) -> bool {
        let q = q();
        let lhs = m.e[i].mul(&m.f[i]).sub(&m.f[i].mul(&m.e[i]));
        let rhs = m.t[i].sub(&m.t_inv[i]).scale(&(&q - &q.inv().unwrap()).inv().unwrap());
        lhs.canonical() == rhs.canonical()
    }

    #[test]
    fn evaluation_module_relations() {
        for n in 0..=3 {
            let w = eval_module(n, &q_power(3)).unwrap();
            assert!(commutator_ok(&w.mats, 0) && commutator_ok(&w.mats, 1));
            assert_eq!(w.mats.t[0].mul(&w.mats.t[1]), Matrix::identity(n + 1, &RatFunc::one(&q_vars())));
        }
        assert!(matches!(eval_module(1, &RatFunc::zero(&q_vars())), Err(Error::ZeroParameter)));
    }

    #[test]
    fn tensor_weights_and_lowest_vector() {
        let a = eval_module(1, &q_power(0)).unwrap().mats;
        let b = eval_module(1, &q_power(5)).unwrap().mats;
        assert_eq!(tensor_coproduct(std::slice::from_ref(&a)).unwrap(), a);
        let t = tensor_coproduct(&[a, b]).unwrap();
        let diag: Vec<RatFunc> = (0..4).map(|i| t.t[1].get(i, i).clone()).collect();
        assert_eq!(diag, vec![q_power(2), q_power(0), q_power(0), q_power(-2)]);
        // e_1 (v₋⊗v₋) = q⁻¹ v₊⊗v₋ + v₋⊗v₊
        let col: Vec<RatFunc> = (0..4).map(|i| t.e[1].get(i, 3).clone()).collect();
        let zero = RatFunc::zero(&q_vars());
        assert_eq!(col, vec![zero.clone(), q_power(-1), q_power(0), zero]);
        assert!(commutator_ok(&t, 0) && commutator_ok(&t, 1));
    }

    #[test]
    fn cyclic_dimension_detects_reducible_pair() {
        let w = |n, k| eval_module(n, &q_power(k)).unwrap().mats;
        let generic = tensor_coproduct(&[w(1, 0), w(1, -6)]).unwrap();
        assert_eq!(cyclic_dimension(&generic).unwrap(), 4);
        let dims: Vec<usize> = [[0, 2], [2, 0]]
            .iter()
            .map(|[a, b]| cyclic_dimension(&tensor_coproduct(&[w(1, *a), w(1, *b)]).unwrap()).unwrap())
            .collect();
        assert!(dims.contains(&3), "{dims:?}");
    }
}
