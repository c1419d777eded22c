//! The `expand`, `wdvv`, `bracket` and `verify` commands.
//!
//! Every command returns an [`Emission`]: the text to print and the process exit code.

use crate::cache::Cache;
use crate::config::{Config, Format};
use crate::suites::{self, SuiteOptions};
use hilbk3::coeff::json as series_json;
use hilbk3::coeff::{Gq, QSeries, SRat};
use hilbk3::fock::checks::class_deg;
use hilbk3::fock::nakajima::parse_monomial;
use hilbk3::fock::{ehilb_bracket, Engine, Evaluator, FockVector, SurfaceModel};
use hilbk3::jacobi::{generator, qjac_fit_with, series, GeneratorName};
use hilbk3::{wdvv, Error, Result};
use num_rational::BigRational;
use serde_json::{json, Value};
use std::fmt::Write as _;

/// Exit code for success.
pub const EXIT_OK: i32 = 0;
/// Exit code for a failed verification or computation.
pub const EXIT_FAILURE: i32 = 1;
/// Exit code for invalid input.
pub const EXIT_USAGE: i32 = 2;

/// Output of a command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Emission {
    /// Text for standard output.
    pub text: String,
    /// Process exit code.
    pub exit: i32,
}

impl Emission {
    fn ok(text: String) -> Self {
        Emission { text, exit: EXIT_OK }
    }
}

/// The exit code an error maps to: invalid input is a usage error, anything else a failure.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::InvalidArgument(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

/// `c · y^{p}` with `p` a half-integer, as text.
fn y_term(c: &Gq, twice_p: i64) -> String {
    let exp = if twice_p % 2 == 0 { format!("{}", twice_p / 2) } else { format!("{twice_p}/2") };
    match twice_p {
        0 => format!("{c}"),
        _ => format!("({c})*y^{exp}"),
    }
}

/// A row in the variable `y` when it is a Laurent polynomial (`s^e = i^e y^{e/2}`), otherwise
/// in `s` with its denominator.
pub fn row_text(r: &SRat) -> String {
    match r.as_laurent() {
        Some(l) => {
            let terms: Vec<String> = l.terms().map(|(e, c)| y_term(&c.mul_i_pow(e), e)).collect();
            if terms.is_empty() {
                "0".into()
            } else {
                terms.join(" + ")
            }
        }
        None => format!("{r}  (in s = (-y)^(1/2))"),
    }
}

/// A series as one `q^n: row` line per nonzero row.
pub fn series_pretty(x: &QSeries, prefactor: Option<&BigRational>) -> String {
    let mut out = String::new();
    if let Some(p) = prefactor.filter(|p| **p != BigRational::from_integer(0.into())) {
        let _ = writeln!(out, "prefactor q^({p})");
    }
    for (n, r) in x.rows() {
        if !r.is_zero() {
            let _ = writeln!(out, "q^{n}: {}", row_text(r));
        }
    }
    if !x.is_exact() {
        let _ = writeln!(out, "+ O(q^{})", x.q_max() + 1);
    }
    out
}

/// A series as CSV with header `q,s,re,im,den_a,den_b`: the numerator terms in `s` over
/// `(1 − s²)^den_a (1 + s²)^den_b`.
pub fn series_csv(x: &QSeries) -> String {
    let mut out = String::from("q,s,re,im,den_a,den_b\n");
    for (n, r) in x.rows() {
        let (a, b) = r.denominator_exponents();
        for (e, c) in r.numerator().terms() {
            let _ = writeln!(out, "{n},{e},{},{},{a},{b}", Gq::fmt_rational(&c.re), Gq::fmt_rational(&c.im));
        }
    }
    out
}

fn emit_series(cfg: &Config, payload: &Value, x: &QSeries, prefactor: Option<&BigRational>) -> String {
    match cfg.output {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(payload).expect("JSON values serialize")),
        Format::Csv => series_csv(x),
        Format::Pretty => series_pretty(x, prefactor),
    }
}

/// Prints a generator through `q^{q_max}`.
pub fn cmd_expand(cfg: &Config, cache: &Cache, name: &str) -> Result<Emission> {
    let g: GeneratorName = name.parse()?;
    let payload = cache.get_or_compute("expand", &[g.to_string(), cfg.q_max.to_string()], || {
        let f = generator(g, cfg.q_max)?;
        Ok(json!({
            "name": g.to_string(),
            "q_offset": f.q_offset.to_string(),
            "q_step": f.q_step,
            "weight2": f.weight2,
            "index2": f.index2,
            "series": series_json::to_json(&f.series),
        }))
    })?;
    let x = series_json::from_json(&payload["series"])?;
    let offset: Option<BigRational> = payload["q_offset"].as_str().and_then(|s| s.parse().ok());
    Ok(Emission::ok(emit_series(cfg, &payload, &x, offset.as_ref())))
}

/// `solve` emits the coefficient table; `verify` checks it and exits nonzero on failure.
pub fn cmd_wdvv(cfg: &Config, action: &str, k_window: i64) -> Result<Emission> {
    let table = wdvv::solve(cfg.q_max, k_window)?;
    match action {
        "solve" => Ok(Emission::ok(match cfg.output {
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&table.to_json()).expect("serializable")),
            Format::Csv | Format::Pretty => table.to_csv(),
        })),
        "verify" => {
            let rep = wdvv::verify_all(&table);
            match rep.first_failure() {
                None => Ok(Emission::ok(format!("OK ({} checks through q^{})\n", rep.checks.len(), cfg.q_max))),
                Some(c) => Ok(Emission { text: format!("FAILED: {}: {}\n{rep}", c.name, c.detail), exit: EXIT_FAILURE }),
            }
        }
        other => Err(Error::InvalidArgument(format!("unknown wdvv action {other:?}; expected solve or verify"))),
    }
}

/// `2 + Σ deg` over all insertions of both sides, when each side is homogeneous for `deg`.
fn predicted_weight(model: &SurfaceModel, vs: &[&FockVector]) -> Option<i64> {
    let mut total = 2;
    for v in vs {
        let mut side = None;
        for (m, _) in v.terms() {
            let mut w = 0;
            for (_, idx) in m.parts() {
                w += class_deg(model, &model.basis_class(idx))?;
            }
            if *side.get_or_insert(w) != w {
                return None;
            }
        }
        total += side?;
    }
    Some(total)
}

/// `⟨μ, ν⟩_q` and, with `fit`, its quasi-Jacobi form `Φ = Δ · ⟨μ, ν⟩_q`.
pub fn cmd_bracket(cfg: &Config, cache: &Cache, mu: &str, nu: &str, fit: bool) -> Result<Emission> {
    let model = SurfaceModel::by_name(&cfg.surface_model)?;
    let mu_v = parse_monomial(&model, mu)?;
    let nu_v = parse_monomial(&model, nu)?;
    let (dm, dn) = (mu_v.energy(), nu_v.energy());
    if dm != dn {
        return Err(Error::InvalidArgument(format!(
            "energy mismatch: {mu:?} has energy {dm:?}, {nu:?} has energy {dn:?}"
        )));
    }
    let args = [model.name().to_string(), mu_v.display(&model), nu_v.display(&model), cfg.q_max.to_string()];
    let payload = cache.get_or_compute("bracket", &args, || {
        let engine = Engine::new(model.clone());
        let eval = Evaluator::new(cfg.q_max)?;
        Ok(series_json::to_json(&ehilb_bracket(&engine, &eval, &mu_v, &nu_v)?))
    })?;
    let x = series_json::from_json(&payload)?;
    let mut text = emit_series(cfg, &payload, &x, None);
    if fit {
        let d = dm.unwrap_or(0);
        let delta = series(GeneratorName::Delta, cfg.q_max + 1);
        let phi = x.mul(&delta).truncate(cfg.q_max);
        let predicted = predicted_weight(&model, &[&mu_v, &nu_v]);
        let bound = predicted.unwrap_or(2 + 2 * d);
        let index2 = 2 * (d - 1);
        let line = if phi.is_zero() {
            "fit: bracket vanishes".to_string()
        } else {
            match qjac_fit_with(&phi, bound, index2, cfg.w_order) {
                Ok(f) => {
                    let pred = predicted.map_or("none (classes not homogeneous)".into(), |w| w.to_string());
                    format!("fit: Delta * bracket = {f}\npredicted weight: {pred}")
                }
                Err(e) => format!("fit failed at weight <= {bound}, index {}/2: {e}", index2),
            }
        };
        text.push_str(&line);
        text.push('\n');
    }
    Ok(Emission::ok(text))
}

/// Runs the named suites and reports one line per criterion.
pub fn cmd_verify(cfg: &Config, names: &[String], long: bool, h_max: i64) -> Result<Emission> {
    let selected = suites::select(names)?;
    let opts = SuiteOptions { long, h_max, conj_a_mode: cfg.conj_a_mode, model: cfg.surface_model.clone() };
    let outcomes: Vec<suites::Outcome> = selected.into_iter().map(|c| suites::run(c, &opts)).collect();
    let failed = outcomes.iter().any(|o| o.skipped.is_none() && !o.passed());
    let text = match cfg.output {
        Format::Json => {
            let v: Vec<Value> = outcomes
                .iter()
                .map(|o| {
                    json!({
                        "criterion": o.criterion.id,
                        "suite": o.criterion.key,
                        "status": if o.skipped.is_some() { "skip" } else if o.passed() { "pass" } else { "fail" },
                        "error": o.error,
                        "checks": o.report.checks.iter().map(|c| json!({"name": c.name, "ok": c.ok, "detail": c.detail})).collect::<Vec<_>>(),
                    })
                })
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
        }
        Format::Csv => {
            let mut s = String::from("criterion,suite,status,failed_checks\n");
            for o in &outcomes {
                let status = if o.skipped.is_some() { "skip" } else if o.passed() { "pass" } else { "fail" };
                let _ = writeln!(s, "{},{},{status},\"{}\"", o.criterion.id, o.criterion.key, o.failed_checks().join("; "));
            }
            s
        }
        Format::Pretty => outcomes
            .iter()
            .map(|o| if o.passed() { format!("{}\n", o.summary()) } else { o.to_string() })
            .collect(),
    };
    Ok(Emission { text, exit: if failed { EXIT_FAILURE } else { EXIT_OK } })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(q: i64, output: Format) -> Config {
        Config { q_max: q, output, ..Config::default() }
    }

    #[test]
    fn expand_delta_json() {
        let e = cmd_expand(&cfg(3, Format::Json), &Cache::new(None), "Delta").unwrap();
        let v: Value = serde_json::from_str(&e.text).unwrap();
        let x = series_json::from_json(&v["series"]).unwrap();
        let c: Vec<Gq> = (1..=3).map(|n| x.coeff(n).as_constant().unwrap()).collect();
        assert_eq!(c, vec![Gq::from_int(1), Gq::from_int(-24), Gq::from_int(252)]);
    }

    #[test]
    fn expand_f_in_y() {
        let e = cmd_expand(&cfg(0, Format::Pretty), &Cache::new(None), "F").unwrap();
        assert_eq!(e.text.lines().next().unwrap(), "q^0: (1)*y^-1/2 + (1)*y^1/2");
    }

    #[test]
    fn expand_g_rows() {
        let e = cmd_expand(&cfg(1, Format::Pretty), &Cache::new(None), "G").unwrap();
        let mut lines = e.text.lines();
        assert_eq!(lines.next().unwrap(), "q^0: 1");
        assert_eq!(lines.next().unwrap(), "q^1: (1)*y^-2 + (4)*y^-1 + 6 + (4)*y^1 + (1)*y^2");
    }

    #[test]
    fn expand_unknown_name() {
        let e = cmd_expand(&cfg(1, Format::Pretty), &Cache::new(None), "Phi").unwrap_err();
        assert_eq!(exit_code(&e), EXIT_USAGE);
        assert!(e.to_string().contains("Delta"));
    }

    #[test]
    fn wdvv_commands() {
        let e = cmd_wdvv(&cfg(2, Format::Csv), "solve", 6).unwrap();
        assert!(e.text.lines().any(|l| l.starts_with("0,1,") && l.ends_with(",8")));
        assert!(e.text.lines().any(|l| l.starts_with("0,0,") && l.split(',').nth(3) == Some("2")));
        let err = cmd_wdvv(&cfg(0, Format::Csv), "solve", 6).unwrap_err();
        assert_eq!(exit_code(&err), EXIT_USAGE);
        let e = cmd_wdvv(&cfg(2, Format::Pretty), "verify", 6).unwrap();
        assert_eq!(e.exit, EXIT_OK);
        assert!(e.text.starts_with("OK"));
    }

    #[test]
    fn bracket_commands() {
        let c = cfg(2, Format::Pretty);
        let e = cmd_bracket(&c, &Cache::new(None), "p(-1,F) p(-1,F) 1", "p(-1,F) p(-1,F) 1", false).unwrap();
        assert!(e.text.starts_with("q^-1: (1)*y^-1 + 2 + (1)*y^1"), "{}", e.text);
        let err = cmd_bracket(&c, &Cache::new(None), "p(-2,w) 1", "p(-1,F) 1", false).unwrap_err();
        assert_eq!(exit_code(&err), EXIT_USAGE);
        let err = cmd_bracket(&c, &Cache::new(None), "p(-2,w 1", "p(-1,F) 1", false).unwrap_err();
        assert!(err.to_string().contains('^'));
        let e = cmd_bracket(&cfg(12, Format::Pretty), &Cache::new(None), "p(-2,w) 1", "p(-1,F) p(-1,e) 1", true).unwrap();
        assert!(e.text.contains("predicted weight: 1"), "{}", e.text);
        assert!(e.text.contains("weight 1, index 2/2"), "{}", e.text);
    }

    #[test]
    fn verify_usage_error() {
        let err = cmd_verify(&Config::default(), &["none-existent".into()], false, 10).unwrap_err();
        assert_eq!(exit_code(&err), EXIT_USAGE);
    }
}
