use proptest::prelude::*;
use qaffine_core::characters::{bosonic_character, fermionic_character};
use qaffine_core::exact_algebra::{qi, QSeries};
use qaffine_core::fock::{boson_apply, q_vars, BasisState, FockVector};
use qaffine_core::hecke::{
    apply_G, apply_word, conjugation_check, hecke_vars, normal_form, r_y_word, symmetric_center_check, LaurentVecPoly,
    Sign,
};
use qaffine_core::quantum::{delta_lambda_n, string_decomposition, DrinfeldPoly};
use qaffine_core::symfun::{
    macdonald_P, macdonald_powersum, monomial_symmetric, partitions_of, pt_vars, Partition, SymPoly,
};
use qaffine_core::{RatFunc, SparsePoly, Vars};

fn xyz() -> Vars {
    Vars::new(["x", "y", "z"])
}

fn poly(vars: Vars, exps: std::ops::RangeInclusive<i32>, max_terms: usize) -> impl Strategy<Value = SparsePoly> {
    let n = vars.len();
    prop::collection::vec((prop::collection::vec(exps, n), -5i64..=5), 0..=max_terms)
        .prop_map(move |ts| SparsePoly::from_terms(&vars, ts.into_iter().map(|(e, c)| (e, qi(c)))))
}

fn nonzero(s: impl Strategy<Value = SparsePoly>) -> impl Strategy<Value = SparsePoly> {
    s.prop_filter("nonzero", |p| !p.is_zero())
}

fn partition(max_part: u32, max_len: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max_part, 0..=max_len).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

/// `(λ, N)` with `l(λ) ≤ N`, zeros kept as padding.
fn label(max_part: usize, max_n: usize) -> impl Strategy<Value = (Vec<usize>, usize)> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(0..=max_part, n).prop_map(move |mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            (v, n)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(xyz(), -2..=3, 4), b in poly(xyz(), -2..=3, 4), c in poly(xyz(), -2..=3, 4)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_division_undoes_multiplication(a in poly(xyz(), -2..=3, 4), b in nonzero(poly(xyz(), -2..=3, 3))) {
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn stored_terms_are_nonzero(a in poly(xyz(), -2..=3, 6), b in poly(xyz(), -2..=3, 6)) {
        for p in [&a + &b, &a * &b, &a - &b] {
            prop_assert!(p.terms().all(|(e, c)| e.len() == 3 && *c != qi(0)));
            let exps: Vec<_> = p.terms().map(|(e, _)| e.clone()).collect();
            prop_assert!(exps.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn ratfunc_field_operations(a in nonzero(poly(xyz(), 0..=2, 3)), b in nonzero(poly(xyz(), 0..=2, 3)), c in poly(xyz(), 0..=2, 3)) {
        let f = RatFunc::new(a.clone(), b.clone()).unwrap();
        let g = RatFunc::from_poly(c);
        prop_assert!((&f * &f.inv().unwrap()).is_one());
        prop_assert_eq!(&(&f + &g) - &g, f.clone());
        let (lead, coeff) = f.den().terms().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        prop_assert!(coeff > qi(0), "denominator leading term {:?} has coefficient {}", lead, coeff);
        prop_assert_eq!(RatFunc::new(&a * &a, &a * &b).unwrap(), f);
    }

    #[test]
    fn qseries_product_is_truncated_polynomial_product(
        a in prop::collection::vec(poly(Vars::new(["z"]), -2..=2, 2), 1..=6),
        b in prop::collection::vec(poly(Vars::new(["z"]), -2..=2, 2), 1..=6),
    ) {
        let z = Vars::new(["z"]);
        let (oa, ob) = (a.len() - 1, b.len() - 1);
        let prod = QSeries::from_coeffs(&z, a.clone(), oa).mul(&QSeries::from_coeffs(&z, b.clone(), ob));
        let zq = Vars::new(["z", "q"]);
        let lift = |cs: &[SparsePoly]| {
            SparsePoly::from_terms(&zq, cs.iter().enumerate().flat_map(|(k, c)| c.terms().map(move |(e, x)| (vec![e[0], k as i32], x.clone())).collect::<Vec<_>>()))
        };
        let full = &lift(&a) * &lift(&b);
        let order = oa.min(ob);
        prop_assert_eq!(prod.order(), order);
        for k in 0..=order {
            let want = SparsePoly::from_terms(&z, full.terms().filter(|(e, _)| e[1] == k as i32).map(|(e, x)| (vec![e[0]], x.clone())));
            prop_assert_eq!(prod.coeff(k), &want);
        }
    }

    #[test]
    fn conjugation_is_an_involution(lam in partition(6, 6)) {
        prop_assert_eq!(lam.conjugate().conjugate(), lam.clone());
        prop_assert_eq!(lam.conjugate().weight(), lam.weight());
        prop_assert_eq!(lam.conjugate().len() as u32, lam.parts().first().copied().unwrap_or(0));
    }

    #[test]
    fn sympoly_round_trip(n in 1usize..=3, cs in prop::collection::vec(-4i64..=4, 1..=6)) {
        let field = pt_vars();
        let mus: Vec<Partition> = (0..=3).flat_map(|w| partitions_of(w, Some(n))).collect();
        let f = SymPoly::from_coeffs(n, &field, mus.iter().cloned().zip(cs.iter().map(|&c| RatFunc::from_int(&field, c)))).unwrap();
        let vars = Vars::z_with(n, &["p", "t"]);
        let expanded = f.to_poly(&vars).unwrap();
        for i in 0..n {
            for j in i + 1..n {
                prop_assert_eq!(expanded.swap_vars(i, j), expanded.clone());
            }
        }
        prop_assert_eq!(SymPoly::from_poly(n, &expanded, &field).unwrap(), f);
    }

    #[test]
    fn divided_differences_stay_laurent(n in 2usize..=3, seed in any::<u64>(), j in 1usize..=2) {
        use rand::SeedableRng;
        let j = j.min(n - 1);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let f = LaurentVecPoly::random(n, 4, &mut rng);
        for s in [Sign::Plus, Sign::Minus] {
            let g = apply_G(j, s, &f).unwrap();
            prop_assert!(g.poly().vars() == &hecke_vars(n));
            let back = apply_G(j, s.flip(), &g).unwrap();
            prop_assert_eq!(back.poly(), f.poly());
        }
    }

    #[test]
    fn drinfeld_factorization_and_strings((lam, n) in label(4, 5)) {
        let sd = string_decomposition(&lam, n).unwrap();
        prop_assert!(sd.blocks.windows(2).all(|w| w[0].0 > w[1].0));
        prop_assert!(sd.blocks.iter().all(|b| b.1 >= 1));
        prop_assert_eq!(sd.n_total(), n);
        let mut before = 0i32;
        for (&(k, nj), &a) in sd.blocks.iter().zip(&sd.centers) {
            prop_assert_eq!(a, -4 * k as i32 - 2 * n as i32 + 2 * before + nj as i32 + 1);
            before += nj as i32;
        }
        let delta = delta_lambda_n(&lam, n).unwrap();
        prop_assert_eq!(delta.degree(), n);
        prop_assert!(delta.coefficients()[0].is_one());
        let product = sd.factors().iter().fold(DrinfeldPoly::one(), |acc, f| acc.mul(f));
        prop_assert_eq!(product, delta);
    }

    #[test]
    fn boson_commutator(mu in partition(3, 3), m in 1i32..=3, n in -2i32..=2, i in 0u8..=1) {
        let v = FockVector::basis(BasisState::new(mu, n, i).unwrap(), 40).unwrap();
        let ab = boson_apply(m, &boson_apply(-m, &v).unwrap()).unwrap();
        let ba = boson_apply(-m, &boson_apply(m, &v).unwrap()).unwrap();
        let comm = ab.add(&ba.scale(&RatFunc::from_int(&q_vars(), -1)));
        prop_assert_eq!(comm, v.scale(&RatFunc::from_int(&q_vars(), m as i64)));
    }

    #[test]
    fn fock_degrees(mu in partition(4, 3), n in -3i32..=3, i in 0u8..=1) {
        let s = BasisState::new(mu.clone(), n, i).unwrap();
        let n = n as i64;
        prop_assert_eq!(s.degree(), mu.weight() as i64 + n * n + n * i as i64);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn hecke_conjugation_and_center(n in 2usize..=3, seed in any::<u64>()) {
        prop_assert!(conjugation_check(n, 2, seed).is_ok());
        prop_assert!(symmetric_center_check(n, 2, seed).is_ok());
    }

    /// The symmetrized normal form and the full expression act alike on
    /// symmetric polynomials, and both agree with applying the word directly.
    #[test]
    fn normal_form_uniqueness(n in 2usize..=3, js in prop::collection::btree_set(1usize..=3, 1..=2), cs in prop::collection::vec(-3i64..=3, 10)) {
        let js: Vec<usize> = js.into_iter().filter(|&j| j <= n).collect();
        prop_assume!(!js.is_empty());
        let word: Vec<_> = js.iter().flat_map(|&j| r_y_word(j, n).unwrap()).collect();
        let expr = normal_form(&word, n).unwrap();
        let nf = expr.symmetrize();
        let vars = hecke_vars(n);
        let mus: Vec<Partition> = (0..=2).flat_map(|w| partitions_of(w, Some(n))).collect();
        for (mu, &c) in mus.iter().cycle().zip(&cs).take(10) {
            let f = monomial_symmetric(mu, &vars, n).unwrap().scale_int(c.max(1));
            let direct = apply_word(&word, LaurentVecPoly::new(n, &f).unwrap()).unwrap();
            let direct = RatFunc::from_poly(direct.poly().clone());
            prop_assert_eq!(expr.apply_to(&f).unwrap(), direct.clone());
            prop_assert_eq!(nf.apply_to(&f).unwrap(), direct);
        }
    }

    #[test]
    fn powersum_form_is_stable(lam in partition(3, 3).prop_filter("weight <= 5", |l| l.weight() <= 5)) {
        let ps = macdonald_powersum(&lam).unwrap();
        let w = lam.weight() as usize;
        for n in [w.max(1), w + 1] {
            prop_assert_eq!(ps.eval_in(n), macdonald_P(&lam, n).unwrap());
        }
        let small = macdonald_P(&lam, w.max(1)).unwrap();
        let big = macdonald_P(&lam, w + 1).unwrap();
        for (mu, c) in small.coeffs() {
            prop_assert_eq!(&big.coeff(mu), c);
        }
    }

    #[test]
    fn fermionic_equals_bosonic(i in 0u8..=1, order in 0usize..=12) {
        let f = fermionic_character(i, order, false).unwrap();
        let b = bosonic_character(i, order, false).unwrap();
        prop_assert_eq!(f.dims(), b.dims());
        prop_assert!(f.is_nonnegative());
    }
}
