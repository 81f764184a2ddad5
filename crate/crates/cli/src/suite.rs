//! `verify-all`: every module check at parameters scaled by `--order` and `--n-max`.

use std::time::Instant;

use qaffine_core::characters::{bosonic_character, fermionic_character, verify_identity};
use qaffine_core::fock::{
    degree_check, fusion_vanishing_check, graded_dimension, hwv_consistency_check, independence_check, omega_series,
};
use qaffine_core::hecke::{
    affine_hecke_check, elementary_y_normalform, hecke_relation_check, macdonald_identity_check, HeckeGenerators,
};
use qaffine_core::quantum::{
    build_Rbar, build_Rtilde, delta_lambda_n, drinfeld_from_ratio, general_position_check, i1_collisions, i1_labels,
    lbar_shadow_for, level0_relations_check, partitions_at_most, rs_identity_check, string_decomposition, ybe_check,
    YbeForm,
};
use qaffine_core::symfun::{duality_identity_check, eigenvalue_check, partitions_up_to, pt_vars, SymPoly};
use qaffine_core::{Error, Fault, RatFunc, Result, Vars};
use rayon::prelude::*;
use serde_json::json;

use crate::commands::Usage;
use crate::output::{kind, Failure, Outcome};
use crate::Cli;

struct Ctx {
    order: usize,
    n_max: usize,
    seed: u64,
    fault: Option<Fault>,
}

impl Ctx {
    /// Weight bound for the symmetric-function and module checks.
    fn weight(&self) -> usize {
        (self.n_max + 2).min(6)
    }

    fn fock_cutoff(&self) -> i64 {
        self.order.clamp(4, 6) as i64
    }
}

struct Check {
    name: &'static str,
    run: fn(&Ctx) -> Result<String>,
}

fn labels(max_weight: usize, max_n: usize) -> Vec<(Vec<usize>, usize)> {
    (1..=max_n)
        .flat_map(|n| (0..=max_weight).flat_map(move |k| partitions_at_most(k, n).into_iter().map(move |l| (l, n))))
        .collect()
}

fn macdonald_eigenvalues(c: &Ctx) -> Result<String> {
    let mut total = 0;
    for n in 1..=c.n_max.min(4) {
        total += eigenvalue_check(n, c.weight() as u32)?.comparisons;
    }
    Ok(format!("{total} identities"))
}

fn duality(c: &Ctx) -> Result<String> {
    let mut total = 0;
    for n in 2..=c.n_max.min(3) {
        total += duality_identity_check(n, n, c.weight() as u32, c.fault)?.comparisons;
    }
    Ok(format!("{total} coefficients"))
}

/// Always at `N = 3`, the smallest size with two adjacent generators.
fn hecke_relations(c: &Ctx) -> Result<String> {
    let n = 3;
    let mut total = hecke_relation_check(n, HeckeGenerators::S, 0, c.seed, c.fault)?.comparisons;
    for gens in [HeckeGenerators::G, HeckeGenerators::SmallG] {
        total += hecke_relation_check(n, gens, 5, c.seed, c.fault)?.comparisons;
    }
    Ok(format!("{total} relation instances at N={n}"))
}

fn affine_hecke(c: &Ctx) -> Result<String> {
    let mut total = 0;
    for n in 2..=c.n_max.min(3) {
        total += affine_hecke_check(n, 5, c.seed, c.fault)?.comparisons;
    }
    Ok(format!("{total} relation instances"))
}

fn rs_ybe(c: &Ctx) -> Result<String> {
    let mut total = rs_identity_check()?.comparisons;
    total += ybe_check(&build_Rbar(c.fault), YbeForm::Standard)?.comparisons;
    total += ybe_check(&build_Rtilde(), YbeForm::Braid)?.comparisons;
    Ok(format!("{total} matrix entries"))
}

fn normal_form(c: &Ctx) -> Result<String> {
    let mut count = 0;
    for n in 1..=c.n_max.min(4) {
        for m in 1..=n {
            count += elementary_y_normalform(m, n)?.coeffs().len();
        }
    }
    Ok(format!("{count} normal-form coefficients"))
}

fn mac0(c: &Ctx) -> Result<String> {
    let mut total = 0;
    for n in 2..=c.n_max.min(3) {
        for mu in partitions_up_to(c.weight().min(4) as u32, Some(n)) {
            total += macdonald_identity_check(n, &SymPoly::monomial(n, &mu, &pt_vars())?)?.comparisons;
        }
    }
    Ok(format!("{total} u-coefficients"))
}

fn drinfeld_factorization(c: &Ctx) -> Result<String> {
    let cases = labels(c.weight(), (c.n_max + 1).min(5));
    for (lam, n) in &cases {
        string_decomposition(lam, *n)?;
    }
    Ok(format!("{} factorizations", cases.len()))
}

fn irreducibility(c: &Ctx) -> Result<String> {
    let mut checked = 0;
    for (lam, n) in labels(c.weight().min(4), c.n_max.min(4)) {
        let sd = string_decomposition(&lam, n)?;
        if sd.dim() > 36 {
            continue;
        }
        let gp = general_position_check(&sd)?;
        let full = Some(sd.dim());
        if gp.brute_force_dim != full || gp.brute_force_dim_reversed != full || !gp.agrees() {
            return Err(Error::IdentityViolation {
                identity: "cyclic dimension = prod(n_j + 1), predicate agrees".into(),
                witness: format!("lambda = {lam:?}, N = {n}: {gp:?}"),
            });
        }
        checked += 1;
    }
    Ok(format!("{checked} tensor products"))
}

fn lbar_shadow(c: &Ctx) -> Result<String> {
    let one = RatFunc::one(&Vars::new(["q", "x"]));
    let cases = labels(c.weight().min(3), c.n_max.min(3));
    for (lam, n) in &cases {
        let shadow = lbar_shadow_for(lam, *n)?;
        let p = drinfeld_from_ratio(&shadow.a_x, &one)?;
        if p != delta_lambda_n(lam, *n)? {
            return Err(Error::EigenvalueMismatch(format!("lambda = {lam:?}, N = {n}: recovered {p}")));
        }
    }
    Ok(format!("{} shadows", cases.len()))
}

fn level0(c: &Ctx) -> Result<String> {
    let mut total = 0;
    for n in 1..=c.n_max.min(2) {
        total += level0_relations_check(n, 5, c.seed, c.fault)?.comparisons;
    }
    Ok(format!("{total} relation instances"))
}

fn characters(c: &Ctx) -> Result<String> {
    let expected: [[i64; 5]; 2] = [[1, 3, 4, 7, 13], [2, 2, 6, 8, 14]];
    for i in 0..=1u8 {
        let k = c.order.min(4);
        let head = fermionic_character(i, k, false)?.dims();
        if head[..] != expected[i as usize][..=k] {
            return Err(Error::IdentityViolation {
                identity: format!("leading dimensions of sector {i}"),
                witness: format!("{head:?}"),
            });
        }
        verify_identity(i, c.order, false, c.fault)?;
        verify_identity(i, c.order.min(20), true, c.fault)?;
    }
    Ok(format!("fermionic = bosonic = refined through q^{} (z-refined through q^{})", c.order, c.order.min(20)))
}

fn i1_distinct(c: &Ctx) -> Result<String> {
    let bound = c.order.min(6);
    if let Some((a, b)) = i1_collisions(bound)?.first() {
        return Err(Error::IdentityViolation {
            identity: "distinct I1 eigenvalues".into(),
            witness: format!("{a:?} and {b:?}"),
        });
    }
    Ok(format!("{} labels pairwise distinct", i1_labels(bound).len()))
}

fn hwv_consistency(c: &Ctx) -> Result<String> {
    let d = c.fock_cutoff();
    let mut notes = Vec::new();
    for (n, w) in [(1usize, 4u32), (2, 3)].into_iter().filter(|&(n, _)| n <= c.n_max) {
        let w = w.min((d - (n * n / 4) as i64) as u32);
        let r = hwv_consistency_check(n, w, d, c.fault)?;
        for lam in omega_series(n, d)?.keys().filter(|l| l.weight() <= w) {
            degree_check(lam, n, d)?;
        }
        notes.push(format!("N={n}: {}", r.notes.join("; ")));
    }
    Ok(notes.join(", "))
}

fn fusion(c: &Ctx) -> Result<String> {
    let r = fusion_vanishing_check(2, 4, c.fault)?;
    Ok(format!("{} coefficients vanish", r.comparisons))
}

fn fock_graded_dimension(c: &Ctx) -> Result<String> {
    let d = c.order.min(10);
    for i in 0..=1u8 {
        let fock = graded_dimension(i, d as i64)?;
        let bos = bosonic_character(i, d, false)?.dims();
        if fock != bos {
            return Err(Error::IdentityViolation {
                identity: format!("Fock graded dimension = bosonic character, sector {i}"),
                witness: format!("{fock:?} vs {bos:?}"),
            });
        }
        independence_check(i, d.min(3) as i64)?;
    }
    Ok(format!("graded dimensions through q^{d}; closed-form vectors independent through degree {}", d.min(3)))
}

/// Sorted by name; each fault is observable by exactly one check.
const CHECKS: [(Check, Option<Fault>); 16] = [
    (Check { name: "affine-hecke", run: affine_hecke }, Some(Fault::AffineY2Swapped)),
    (Check { name: "characters", run: characters }, Some(Fault::FermionicNoDim)),
    (Check { name: "drinfeld-factorization", run: drinfeld_factorization }, None),
    (Check { name: "duality", run: duality }, Some(Fault::DualityNoSwap)),
    (Check { name: "fock-graded-dimension", run: fock_graded_dimension }, None),
    (Check { name: "fusion", run: fusion }, Some(Fault::FusionEta)),
    (Check { name: "hecke-relations", run: hecke_relations }, Some(Fault::HeckeInverseG23)),
    (Check { name: "hwv-consistency", run: hwv_consistency }, Some(Fault::HwvNoSwap)),
    (Check { name: "i1-distinct", run: i1_distinct }, None),
    (Check { name: "irreducibility", run: irreducibility }, None),
    (Check { name: "lbar-shadow", run: lbar_shadow }, None),
    (Check { name: "level0", run: level0 }, Some(Fault::Level0NoPrefactor)),
    (Check { name: "mac0", run: mac0 }, None),
    (Check { name: "macdonald-eigenvalues", run: macdonald_eigenvalues }, None),
    (Check { name: "normal-form", run: normal_form }, None),
    (Check { name: "rs-ybe", run: rs_ybe }, Some(Fault::RbarEntry)),
];

/// `QAFFINE_THREADS`, when set, caps the worker pool.
fn thread_cap() -> std::result::Result<Option<usize>, Usage> {
    match std::env::var("QAFFINE_THREADS") {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(format!("invalid QAFFINE_THREADS `{s}`: expected a positive integer")),
        },
    }
}

struct Row {
    name: &'static str,
    result: Result<String>,
    seconds: f64,
}

pub fn verify_all(cli: &Cli, order: usize, n_max: usize, timing: bool) -> std::result::Result<Outcome, Usage> {
    if n_max < 2 {
        return Err(format!("invalid --n-max {n_max}: must be at least 2"));
    }
    let ctx = Ctx { order, n_max, seed: cli.seed, fault: cli.inject };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_cap()? {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| format!("cannot start worker pool: {e}"))?;
    let mut rows: Vec<Row> = pool.install(|| {
        CHECKS
            .par_iter()
            .map(|(check, observes)| {
                let local = Ctx { fault: ctx.fault.filter(|f| Some(*f) == *observes), ..ctx };
                let t = Instant::now();
                let result = (check.run)(&local);
                Row { name: check.name, result, seconds: t.elapsed().as_secs_f64() }
            })
            .collect()
    });
    rows.sort_by_key(|r| r.name);

    let mut checks = Vec::new();
    let mut plain = Vec::new();
    let mut header = vec!["check".to_string(), "status".into(), "detail".into()];
    if timing {
        header.push("seconds".into());
    }
    let mut table = vec![header];
    let mut failed = Vec::new();
    for r in &rows {
        let (status, detail) = match &r.result {
            Ok(d) => ("pass", d.clone()),
            Err(e) => {
                failed.push(r.name);
                ("fail", format!("{}: {e}", kind(e)))
            }
        };
        let mut entry = json!({"name": r.name, "status": status});
        match &r.result {
            Ok(d) => entry["detail"] = json!(d),
            Err(e) => entry["error"] = json!({"kind": kind(e), "message": e.to_string()}),
        }
        let mut row = vec![r.name.to_string(), status.to_string(), detail.clone()];
        let mut line = format!("{} {}: {detail}", status.to_uppercase(), r.name);
        if timing {
            entry["seconds"] = json!((r.seconds * 1000.0).round() / 1000.0);
            row.push(format!("{:.3}", r.seconds));
            line.push_str(&format!(" ({:.3}s)", r.seconds));
        }
        checks.push(entry);
        table.push(row);
        plain.push(line);
    }
    let params = json!({"order": order, "n_max": n_max, "seed": cli.seed, "inject": cli.inject});
    let result =
        json!({"total": rows.len(), "passed": rows.len() - failed.len(), "failed": failed.len(), "checks": checks});
    let mut outcome = Outcome::pass("verify-all", params, result, plain, table);
    if !failed.is_empty() {
        outcome.error = Some(Failure {
            kind: "ChecksFailed",
            message: format!("{} of {} checks failed: {}", failed.len(), rows.len(), failed.join(", ")),
        });
    }
    Ok(outcome)
}
