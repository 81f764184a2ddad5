use qaffine_core::characters::{
    bosonic_character, enumerate_hwv, fermionic_character, refined_character, verify_identity,
};
use qaffine_core::fock::{
    degree_check, fusion_vanishing_check, hwv_closed_form, hwv_consistency_check, independence_check, omega_series,
};
use qaffine_core::hecke::{
    affine_hecke_check, elementary_y_normalform, hecke_relation_check, macdonald_identity_check, HeckeGenerators,
};
use qaffine_core::quantum::{
    build_Rbar, build_Rtilde, delta_lambda_n, drinfeld_from_ratio, general_position_check, lbar_shadow_for,
    level0_relations_check, q_power, rs_identity_check, string_decomposition, ybe_check, DrinfeldPoly, YbeForm,
};
use qaffine_core::symfun::{
    duality_identity_check, eigenvalue_check, macdonald_P, macdonald_powersum, partitions_up_to, pt_vars, Partition,
    SymPoly,
};
use qaffine_core::{CheckReport, Error, Fault, RatFunc, Result as CoreResult, Vars};
use serde_json::{json, Value};

use crate::output::{is_usage, Outcome};
use crate::{
    CharAction, CharKind, Cli, Command, DrinfeldArgs, Generators, HeckeAction, HwvAction, HwvArgs, MacdonaldArgs,
    YbeWhich,
};

/// A usage error, already phrased for the user.
pub type Usage = String;

/// What a command computed: JSON result, plain lines, CSV rows.
struct Rendered {
    result: Value,
    plain: Vec<String>,
    table: Vec<Vec<String>>,
}

impl Rendered {
    fn report(r: &CheckReport) -> Self {
        let mut plain = vec![format!("{}: {} comparisons", r.check, r.comparisons)];
        plain.extend(r.notes.iter().cloned());
        let result = json!({"check": r.check, "comparisons": r.comparisons, "notes": r.notes});
        let mut table = vec![vec!["check".into(), "comparisons".into(), "notes".into()]];
        table.push(vec![r.check.clone(), r.comparisons.to_string(), r.notes.join("; ")]);
        Rendered { result, plain, table }
    }

    fn reports(rs: &[CheckReport]) -> Self {
        let mut plain = Vec::new();
        let mut table = vec![vec!["check".into(), "params".into(), "comparisons".into(), "notes".into()]];
        for r in rs {
            plain.push(format!("{} {}: {} comparisons", r.check, r.params, r.comparisons));
            plain.extend(r.notes.iter().map(|n| format!("  {n}")));
            table.push(vec![r.check.clone(), r.params.to_string(), r.comparisons.to_string(), r.notes.join("; ")]);
        }
        let total: usize = rs.iter().map(|r| r.comparisons).sum();
        let result = json!({
            "comparisons": total,
            "checks": rs.iter().map(|r| json!({"check": r.check, "params": r.params, "comparisons": r.comparisons, "notes": r.notes})).collect::<Vec<_>>(),
        });
        Rendered { result, plain, table }
    }
}

/// Turns a computation into an [`Outcome`], routing parameter errors to a usage error.
fn finish(command: &str, params: Value, flags: &str, r: CoreResult<Rendered>) -> Result<Outcome, Usage> {
    match r {
        Ok(x) => Ok(Outcome::pass(command, params, x.result, x.plain, x.table)),
        Err(e) if is_usage(&e) => Err(format!("invalid {flags}: {e}")),
        Err(e) => Ok(Outcome::fail(command, params, &e)),
    }
}

/// Comma-separated parts, optionally parenthesized; zeros are kept.
pub fn parse_parts(flag: &str, s: &str) -> Result<Vec<u32>, Usage> {
    let body = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
    if body.is_empty() {
        return Ok(Vec::new());
    }
    let parts: Vec<u32> = body
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<u32>()
                .map_err(|_| format!("invalid {flag} `{s}`: expected comma-separated non-negative integers"))
        })
        .collect::<Result<_, _>>()?;
    if parts.windows(2).any(|w| w[0] < w[1]) {
        return Err(format!("invalid {flag} `{s}`: parts must be non-increasing"));
    }
    Ok(parts)
}

fn parse_partition(flag: &str, s: &str) -> Result<Partition, Usage> {
    let parts = parse_parts(flag, s)?;
    Partition::from_padded(&parts).map_err(|e| format!("invalid {flag} `{s}`: {e}"))
}

fn check_len(lam: &Partition, n: usize) -> Result<(), Usage> {
    if lam.len() > n {
        return Err(format!("invalid --lambda {lam}: more than --n {n} nonzero parts"));
    }
    Ok(())
}

fn need_n(n: usize, min: usize) -> Result<(), Usage> {
    if n < min {
        return Err(format!("invalid --n {n}: must be at least {min}"));
    }
    Ok(())
}

fn need_sector(sector: u8) -> Result<(), Usage> {
    if sector > 1 {
        return Err(format!("invalid --sector {sector}: must be 0 or 1"));
    }
    Ok(())
}

/// Rejects a fault that no check of `command` can observe.
fn allow_inject(inject: Option<Fault>, command: &str, applicable: &[Fault]) -> Result<Option<Fault>, Usage> {
    match inject {
        Some(f) if !applicable.contains(&f) => {
            let names: Vec<&str> = applicable.iter().map(|f| f.name()).collect();
            let hint =
                if names.is_empty() { "none apply".to_string() } else { format!("applicable: {}", names.join(", ")) };
            Err(format!("invalid --inject {f}: not observable by `{command}` ({hint})"))
        }
        other => Ok(other),
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, Usage> {
    match &cli.command {
        Command::Macdonald(a) => macdonald(cli, a),
        Command::Hecke { action } => hecke(cli, action),
        Command::Drinfeld(a) => drinfeld(cli, a),
        Command::Relations { n, trials } => {
            let fault = allow_inject(cli.inject, "relations", &[Fault::Level0NoPrefactor])?;
            need_n(*n, 1)?;
            let params = json!({"n": n, "trials": trials, "seed": cli.seed, "inject": fault});
            let r = level0_relations_check(*n, *trials, cli.seed, fault).map(|r| Rendered::report(&r));
            finish("relations", params, "--n/--trials", r)
        }
        Command::Ybe { matrix } => ybe(cli, *matrix),
        Command::Char { action } => characters(cli, action),
        Command::Hwv(a) => hwv(cli, a),
        Command::VerifyAll { order, n_max, timing } => crate::suite::verify_all(cli, *order, *n_max, *timing),
    }
}

fn macdonald(cli: &Cli, a: &MacdonaldArgs) -> Result<Outcome, Usage> {
    let fault = allow_inject(cli.inject, "macdonald", &[Fault::DualityNoSwap])?;
    if a.verify {
        let n = a.n.ok_or("missing --n: required with --verify")?;
        need_n(n, 1)?;
        let w = a.max_weight;
        let params = json!({"n": n, "max_weight": w, "inject": fault});
        let r = (|| {
            let mut rs = vec![eigenvalue_check(n, w)?];
            if n >= 2 {
                rs.push(duality_identity_check(n, n, w, fault)?);
            }
            Ok(Rendered::reports(&rs))
        })();
        return finish("macdonald", params, "--n/--max-weight", r);
    }
    if fault.is_some() {
        return Err("invalid --inject: macdonald only observes faults with --verify".into());
    }
    let spec = a.lambda.as_deref().ok_or("missing --lambda")?;
    let lam = parse_partition("--lambda", spec)?;
    if a.powersum {
        let params = json!({"lambda": lam.to_string(), "powersum": true});
        let r = macdonald_powersum(&lam).map(|p| {
            let result = json!({"text": p.to_string(), "polynomial": p});
            let mut table = vec![vec!["rho".into(), "coefficient".into()]];
            table.extend(p.coeffs().iter().rev().map(|(rho, c)| vec![rho.to_string(), c.to_string()]));
            Rendered { result, plain: vec![p.to_string()], table }
        });
        return finish("macdonald", params, "--lambda", r);
    }
    let n = a.n.unwrap_or(lam.len().max(1));
    check_len(&lam, n)?;
    let params = json!({"lambda": lam.to_string(), "n": n, "powersum": false});
    let r = macdonald_P(&lam, n).map(|p| {
        let result = json!({"text": p.to_string(), "polynomial": p});
        Rendered { plain: vec![p.to_string()], table: sym_table(&p), result }
    });
    finish("macdonald", params, "--lambda/--n", r)
}

fn sym_table(p: &SymPoly) -> Vec<Vec<String>> {
    let mut table = vec![vec!["partition".into(), "coefficient".into()]];
    table.extend(p.coeffs().iter().rev().map(|(mu, c)| vec![mu.to_string(), c.to_string()]));
    table
}

fn hecke(cli: &Cli, action: &HeckeAction) -> Result<Outcome, Usage> {
    match action {
        HeckeAction::Check { n, generators, trials } => {
            let applicable: &[Fault] =
                if *generators == Generators::Affine { &[Fault::AffineY2Swapped] } else { &[Fault::HeckeInverseG23] };
            let fault = allow_inject(cli.inject, "hecke check", applicable)?;
            need_n(*n, 2)?;
            let params = json!({"n": n, "generators": format!("{generators:?}"), "trials": trials, "seed": cli.seed, "inject": fault});
            let r = match generators {
                Generators::Affine => affine_hecke_check(*n, *trials, cli.seed, fault),
                g => {
                    let which = match g {
                        Generators::S => HeckeGenerators::S,
                        Generators::G => HeckeGenerators::G,
                        _ => HeckeGenerators::SmallG,
                    };
                    hecke_relation_check(*n, which, *trials, cli.seed, fault)
                }
            };
            finish("hecke check", params, "--n/--generators", r.map(|r| Rendered::report(&r)))
        }
        HeckeAction::Normalform { m, n } => {
            allow_inject(cli.inject, "hecke normalform", &[])?;
            need_n(*n, 1)?;
            if *m == 0 || m > n {
                return Err(format!("invalid --m {m}: need 1 <= m <= --n {n}"));
            }
            let params = json!({"m": m, "n": n});
            let r = elementary_y_normalform(*m, *n).map(|nf| {
                let mut table = vec![vec!["shift".into(), "coefficient".into()]];
                table.extend(nf.coeffs().iter().map(|(k, c)| vec![format!("{k:?}"), c.to_string()]));
                let result =
                    json!({"normal_form": nf, "text": nf.to_string(), "matches_scaled_macdonald_operator": true});
                Rendered { result, plain: vec![nf.to_string(), format!("= (-q)^-{}(N-1) D_N^{m}(p, q^2)", m)], table }
            });
            finish("hecke normalform", params, "--m/--n", r)
        }
        HeckeAction::Identity { n, max_weight } => {
            allow_inject(cli.inject, "hecke identity", &[])?;
            need_n(*n, 1)?;
            let params = json!({"n": n, "max_weight": max_weight});
            let r = (|| {
                let mut rs = Vec::new();
                for mu in partitions_up_to(*max_weight, Some(*n)) {
                    let mut r = macdonald_identity_check(*n, &SymPoly::monomial(*n, &mu, &pt_vars())?)?;
                    r.params = json!({"n": n, "mu": mu.to_string()});
                    rs.push(r);
                }
                Ok(Rendered::reports(&rs))
            })();
            finish("hecke identity", params, "--n/--max-weight", r)
        }
    }
}

fn drinfeld(cli: &Cli, a: &DrinfeldArgs) -> Result<Outcome, Usage> {
    allow_inject(cli.inject, "drinfeld", &[])?;
    need_n(a.n, 1)?;
    let parts = parse_parts("--lambda", &a.lambda)?;
    if parts.len() > a.n {
        return Err(format!("invalid --lambda {}: more than --n {} parts", a.lambda, a.n));
    }
    let lam: Vec<usize> = parts.iter().map(|&x| x as usize).collect();
    let mut padded = lam.clone();
    padded.resize(a.n, 0);
    let params = json!({"lambda": padded, "n": a.n, "strings": a.strings, "shadow": a.shadow, "irreducibility": a.irreducibility});
    let r = (|| {
        let delta = delta_lambda_n(&lam, a.n)?;
        let mut result = serde_json::Map::new();
        let mut plain = vec![format!("Delta(u) = {delta}")];
        result.insert("drinfeld_polynomial".into(), json!(delta));
        let sd = string_decomposition(&lam, a.n)?;
        if a.strings {
            let factors = sd.factors();
            let product = factors.iter().fold(DrinfeldPoly::one(), |acc, f| acc.mul(f));
            if product != delta {
                return Err(Error::FactorizationMismatch(format!("product of string factors {product} vs {delta}")));
            }
            let centers: Vec<String> = sd.centers.iter().map(|&c| q_power(c).to_string()).collect();
            let factor_text: Vec<String> = factors.iter().map(|f| format!("({f})")).collect();
            result.insert(
                "strings".into(),
                json!({
                    "blocks": sd.blocks,
                    "center_exponents": sd.centers,
                    "centers": centers,
                    "factors": factors,
                    "factorization": factor_text.join(""),
                    "dimension": sd.dim(),
                }),
            );
            plain.push(format!("blocks (k, n) = {:?}", sd.blocks));
            plain.push(format!("centers = {}", centers.join(", ")));
            plain.push(format!("Delta(u) = {}", factor_text.join("")));
            plain.push(format!("dim W = {}", sd.dim()));
        }
        if a.shadow {
            let shadow = lbar_shadow_for(&lam, a.n)?;
            let recovered = drinfeld_from_ratio(&shadow.a_x, &RatFunc::one(&Vars::new(["q", "x"])))?;
            if recovered != delta {
                return Err(Error::EigenvalueMismatch(format!("recovered {recovered} vs {delta}")));
            }
            result.insert(
                "shadow".into(),
                json!({"a_x": shadow.a_x.to_string(), "triangular": shadow.triangular, "recovered": recovered}),
            );
            plain.push(format!("A(x) = {}", shadow.a_x));
            plain.push(format!("recovered Delta(u) = {recovered}"));
        }
        if a.irreducibility {
            let gp = general_position_check(&sd)?;
            if !gp.agrees() {
                return Err(Error::IdentityViolation {
                    identity: "q-segment predicate agrees with the cyclic-closure oracle".into(),
                    witness: format!("{gp:?}"),
                });
            }
            plain.push(format!(
                "irreducible = {}, cyclic dimension = {:?} / {:?}, prod(n_j + 1) = {}",
                gp.pairwise_irreducible, gp.brute_force_dim, gp.brute_force_dim_reversed, gp.full_dim
            ));
            result.insert("irreducibility".into(), json!(gp));
        }
        let result = Value::Object(result);
        let mut table = vec![vec!["block".into(), "k".into(), "n".into(), "center".into(), "factor".into()]];
        for (j, ((&(k, nj), &c), f)) in sd.blocks.iter().zip(&sd.centers).zip(sd.factors()).enumerate() {
            table.push(vec![(j + 1).to_string(), k.to_string(), nj.to_string(), q_power(c).to_string(), f.to_string()]);
        }
        Ok(Rendered { result, plain, table })
    })();
    finish("drinfeld", params, "--lambda/--n", r)
}

fn ybe(cli: &Cli, which: YbeWhich) -> Result<Outcome, Usage> {
    let applicable: &[Fault] = if which == YbeWhich::Rtilde { &[] } else { &[Fault::RbarEntry] };
    let fault = allow_inject(cli.inject, "ybe", applicable)?;
    let params = json!({"matrix": format!("{which:?}").to_lowercase(), "inject": fault});
    let r = (|| {
        let mut rs = Vec::new();
        if which != YbeWhich::Rbar {
            rs.push(rs_identity_check()?);
            rs.push(ybe_check(&build_Rtilde(), YbeForm::Braid)?);
        }
        if which != YbeWhich::Rtilde {
            rs.push(ybe_check(&build_Rbar(fault), YbeForm::Standard)?);
        }
        Ok(Rendered::reports(&rs))
    })();
    finish("ybe", params, "--matrix", r)
}

fn characters(cli: &Cli, action: &CharAction) -> Result<Outcome, Usage> {
    match action {
        CharAction::Verify { sector, order, refine_z } => {
            let fault = allow_inject(cli.inject, "char verify", &[Fault::FermionicNoDim])?;
            need_sector(*sector)?;
            let params = json!({"sector": sector, "order": order, "refine_z": refine_z, "inject": fault});
            let r = verify_identity(*sector, *order, *refine_z, fault).map(|r| {
                let summary = format!(
                    "fermionic = bosonic = refined through q^{order}{}",
                    if *refine_z { " with z tracked" } else { "" }
                );
                let mut x = Rendered::report(&r);
                x.plain.insert(0, summary.clone());
                x.result["summary"] = json!(summary);
                x
            });
            finish("char verify", params, "--sector/--order", r)
        }
        CharAction::List { sector, order, kind, refine_z } => {
            allow_inject(cli.inject, "char list", &[])?;
            need_sector(*sector)?;
            let params = json!({"sector": sector, "order": order, "kind": format!("{kind:?}").to_lowercase(), "refine_z": refine_z});
            let r = match kind {
                CharKind::Fermionic => fermionic_character(*sector, *order, *refine_z),
                CharKind::Bosonic => bosonic_character(*sector, *order, *refine_z),
                CharKind::Refined => refined_character(*sector, *order).map(|mut s| {
                    if !refine_z {
                        s.series = s.series.at_z_one();
                        s.refined = false;
                    }
                    s
                }),
            };
            let r = r.map(|s| {
                let coeffs: Vec<String> = s.series.coeffs().iter().map(|c| c.to_string()).collect();
                let plain = coeffs.iter().enumerate().map(|(k, c)| format!("q^{k}: {c}")).collect();
                let mut table = vec![vec!["degree".into(), "coefficient".into()]];
                table.extend(coeffs.iter().enumerate().map(|(k, c)| vec![k.to_string(), c.clone()]));
                Rendered { result: json!(s), plain, table }
            });
            finish("char list", params, "--sector/--order", r)
        }
        CharAction::Labels { sector, max_degree } => {
            allow_inject(cli.inject, "char labels", &[])?;
            need_sector(*sector)?;
            let params = json!({"sector": sector, "max_degree": max_degree});
            let r = enumerate_hwv(*sector, *max_degree).map(|labels| {
                let plain = labels
                    .iter()
                    .map(|l| format!("lambda = {:?}, N = {}, degree = {}, dim = {}", l.lambda, l.n, l.degree, l.dim))
                    .collect();
                let mut table = vec![vec!["lambda".into(), "n".into(), "degree".into(), "dim".into()]];
                table.extend(labels.iter().map(|l| {
                    let lam: Vec<String> = l.lambda.iter().map(|x| x.to_string()).collect();
                    vec![lam.join(" "), l.n.to_string(), l.degree.to_string(), l.dim.to_string()]
                }));
                Rendered { result: json!({"labels": labels}), plain, table }
            });
            finish("char labels", params, "--sector/--max-degree", r)
        }
    }
}

fn hwv(cli: &Cli, a: &HwvArgs) -> Result<Outcome, Usage> {
    match &a.action {
        None => {
            let fault = allow_inject(cli.inject, "hwv", &[Fault::HwvNoSwap])?;
            let lam =
                parse_partition("--lambda", a.lambda.as_deref().ok_or("missing --lambda (or use a subcommand)")?)?;
            let n = a.n.ok_or("missing --n")?;
            need_n(n, 1)?;
            check_len(&lam, n)?;
            let params = json!({"lambda": lam.to_string(), "n": n, "cutoff": a.cutoff, "inject": fault});
            let r = hwv_closed_form(&lam, n, a.cutoff, fault).map(|sv| {
                let plain = vec![format!("scalar = {}", sv.scalar), format!("vector = {}", sv.vector)];
                let mut table =
                    vec![vec!["boson".into(), "n".into(), "sector".into(), "degree".into(), "coefficient".into()]];
                table.extend(sv.vector.entries().iter().map(|(s, c)| {
                    vec![
                        s.boson().to_string(),
                        s.n().to_string(),
                        s.sector().to_string(),
                        s.degree().to_string(),
                        c.to_string(),
                    ]
                }));
                Rendered { result: json!(sv), plain, table }
            });
            finish("hwv", params, "--lambda/--n/--cutoff", r)
        }
        Some(HwvAction::Verify { n, max_weight, cutoff }) => {
            let fault = allow_inject(cli.inject, "hwv verify", &[Fault::HwvNoSwap])?;
            need_n(*n, 1)?;
            let params = json!({"n": n, "max_weight": max_weight, "cutoff": cutoff, "inject": fault});
            let r = (|| {
                let mut rs = vec![hwv_consistency_check(*n, *max_weight, *cutoff, fault)?];
                for lam in omega_series(*n, *cutoff)?.keys().filter(|l| l.weight() <= *max_weight) {
                    let mut r = degree_check(lam, *n, *cutoff)?;
                    r.params = json!({"lambda": lam.to_string(), "n": n});
                    rs.push(r);
                }
                Ok(Rendered::reports(&rs))
            })();
            finish("hwv verify", params, "--n/--max-weight/--cutoff", r)
        }
        Some(HwvAction::Omega { n, cutoff }) => {
            allow_inject(cli.inject, "hwv omega", &[])?;
            need_n(*n, 1)?;
            let params = json!({"n": n, "cutoff": cutoff});
            let r = omega_series(*n, *cutoff).map(|vs| {
                let plain = vs.iter().map(|(l, v)| format!("omega_{l} = {v}")).collect();
                let mut table = vec![vec!["lambda".into(), "vector".into()]];
                table.extend(vs.iter().map(|(l, v)| vec![l.to_string(), v.to_string()]));
                let result = json!({"vectors": vs.iter().map(|(l, v)| json!({"lambda": l.to_string(), "vector": v})).collect::<Vec<_>>()});
                Rendered { result, plain, table }
            });
            finish("hwv omega", params, "--n/--cutoff", r)
        }
        Some(HwvAction::Fusion { cutoff }) => {
            let fault = allow_inject(cli.inject, "hwv fusion", &[Fault::FusionEta])?;
            let params = json!({"n": 2, "cutoff": cutoff, "inject": fault});
            let r = fusion_vanishing_check(2, *cutoff, fault).map(|r| Rendered::report(&r));
            finish("hwv fusion", params, "--cutoff", r)
        }
        Some(HwvAction::Independence { sector, cutoff }) => {
            allow_inject(cli.inject, "hwv independence", &[])?;
            need_sector(*sector)?;
            let params = json!({"sector": sector, "cutoff": cutoff});
            let r = independence_check(*sector, *cutoff).map(|r| Rendered::report(&r));
            finish("hwv independence", params, "--sector/--cutoff", r)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parts_parsing() {
        assert_eq!(parse_parts("--lambda", "2,1,0").unwrap(), vec![2, 1, 0]);
        assert_eq!(parse_parts("--lambda", "(3, 1)").unwrap(), vec![3, 1]);
        assert_eq!(parse_parts("--lambda", "").unwrap(), Vec::<u32>::new());
        assert!(parse_parts("--lambda", "1,2").unwrap_err().contains("--lambda"));
        assert!(parse_parts("--lambda", "a").is_err());
        assert_eq!(parse_partition("--lambda", "2,1,0").unwrap().parts(), &[2, 1]);
    }

    #[test]
    fn inject_gate() {
        assert_eq!(allow_inject(None, "ybe", &[]).unwrap(), None);
        assert_eq!(allow_inject(Some(Fault::RbarEntry), "ybe", &[Fault::RbarEntry]).unwrap(), Some(Fault::RbarEntry));
        let e = allow_inject(Some(Fault::FusionEta), "ybe", &[Fault::RbarEntry]).unwrap_err();
        assert!(e.contains("--inject fusion-eta") && e.contains("rbar-entry"));
    }
}
