//! The acceptance criteria as runnable verification suites.

use hilbk3::fock::checks::{
    a1_restriction_check, genus1_check, hilb2_theorems, quasi_jacobi_certification, representative_pairs,
    worked_examples, wdvv_operator_check, CheckMode,
};
use hilbk3::fock::phi::{verify_invariants, verify_printed};
use hilbk3::fock::{Engine, Evaluator, PhiTable, SurfaceModel};
use hilbk3::gw::{hyperelliptic_tables, verify_hyperelliptic, verify_yau_zaslow};
use hilbk3::jacobi::{verify_differential_identities, verify_theta_identities};
use hilbk3::report::Report;
use hilbk3::{wdvv, Error, Result};
use std::fmt;
use std::time::{Duration, Instant};

/// One acceptance criterion.
#[derive(Debug)]
pub struct Criterion {
    /// Position in the acceptance list.
    pub id: u32,
    /// Suite name accepted by `verify`.
    pub key: &'static str,
    /// Short description.
    pub title: &'static str,
    /// Runtime budget.
    pub budget: Duration,
}

const fn crit(id: u32, key: &'static str, title: &'static str, secs: u64) -> Criterion {
    Criterion { id, key, title, budget: Duration::from_secs(secs) }
}

/// All criteria, in order.
pub static CRITERIA: [Criterion; 12] = [
    crit(1, "yz", "Yau-Zaslow numbers against product and divisor-sum expansions", 1),
    crit(2, "theta", "D4 theta identities through q^12", 10),
    crit(3, "diff", "differentiation closure, heat equation, Weierstrass cubic through q^8", 10),
    crit(4, "wdvv", "WDVV solver at q_max = 6, k_window = 14", 60),
    crit(5, "phi", "structure series: printed expansions, symmetries, index and weight", 30),
    crit(6, "conj-a", "operator WDVV identities on the rank-24 model", 600),
    crit(7, "hilb2", "Hilb^2 evaluations through q^5", 120),
    crit(8, "worked", "worked examples for d <= 4 through q^4", 300),
    crit(9, "genus1", "genus-one contraction through q^2", 900),
    crit(10, "table1", "hyperelliptic BPS counts", 60),
    crit(11, "a1", "A1 restriction on F_d, d <= 3, through s^12", 120),
    crit(12, "qjac", "quasi-Jacobi certification of 20 Hilb^2 pairs", 300),
];

/// Knobs that change what a suite covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Include the long-running parts (operator WDVV at `d = 3`, genus one, the full hyperelliptic table).
    pub long: bool,
    /// Largest `h` of the hyperelliptic table without `long`.
    pub h_max: i64,
    /// Pair selection of the operator WDVV check at `d = 3`.
    pub conj_a_mode: CheckMode,
    /// Surface model of the operator WDVV and A1 suites.
    pub model: String,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            long: false,
            h_max: 10,
            conj_a_mode: CheckMode::Sampled { pairs: 200, seed: 0 },
            model: "k3-rank24".into(),
        }
    }
}

impl SuiteOptions {
    /// The settings of the acceptance run: everything included, rank-24 model.
    pub fn acceptance() -> Self {
        SuiteOptions { long: true, ..SuiteOptions::default() }
    }
}

/// What happened when a suite ran.
#[derive(Debug)]
pub struct Outcome {
    /// The criterion.
    pub criterion: &'static Criterion,
    /// Individual checks.
    pub report: Report,
    /// Set when the suite stopped with an error.
    pub error: Option<String>,
    /// Set when the suite was not run under the current options.
    pub skipped: Option<String>,
    /// Wall-clock time.
    pub elapsed: Duration,
}

impl Outcome {
    /// True if the suite ran, raised no error and every check held.
    pub fn passed(&self) -> bool {
        self.skipped.is_none() && self.error.is_none() && self.report.all_ok()
    }

    /// True if the suite finished inside its budget.
    pub fn within_budget(&self) -> bool {
        self.elapsed <= self.criterion.budget
    }

    /// Names of the failing checks.
    pub fn failed_checks(&self) -> Vec<&str> {
        self.report.checks.iter().filter(|c| !c.ok).map(|c| c.name.as_str()).collect()
    }

    /// The one-line summary.
    pub fn summary(&self) -> String {
        let c = self.criterion;
        let status = if self.skipped.is_some() {
            "SKIP"
        } else if self.passed() {
            "PASS"
        } else {
            "FAIL"
        };
        format!(
            "criterion {:>2} [{status}] {}: {} ({:.2} s, budget {} s)",
            c.id,
            c.key,
            c.title,
            self.elapsed.as_secs_f64(),
            c.budget.as_secs()
        )
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.summary())?;
        if let Some(s) = &self.skipped {
            writeln!(f, "    {s}")?;
        }
        if let Some(e) = &self.error {
            writeln!(f, "    error: {e}")?;
        }
        for c in &self.report.checks {
            writeln!(f, "    [{}] {}: {}", if c.ok { "ok" } else { "FAIL" }, c.name, c.detail)?;
        }
        Ok(())
    }
}

/// Looks up suites by key or number; `all` selects every criterion.
pub fn select(names: &[String]) -> Result<Vec<&'static Criterion>> {
    if names.is_empty() || names.iter().any(|n| n == "all") {
        return Ok(CRITERIA.iter().collect());
    }
    names
        .iter()
        .map(|n| {
            CRITERIA.iter().find(|c| c.key == n || c.id.to_string() == *n).ok_or_else(|| {
                let keys: Vec<&str> = CRITERIA.iter().map(|c| c.key).collect();
                Error::Parse(format!("unknown suite {n:?}; valid suites: all, {}", keys.join(", ")))
            })
        })
        .collect()
}

/// Runs one suite.
pub fn run(c: &'static Criterion, opts: &SuiteOptions) -> Outcome {
    let start = Instant::now();
    let mut skipped = None;
    let result = match c.key {
        "yz" => Ok(verify_yau_zaslow(11)),
        "theta" => Ok(verify_theta_identities(12)),
        "diff" => Ok(verify_differential_identities(8)),
        "wdvv" => wdvv::solve(6, 14).map(|t| wdvv::verify_all(&t)),
        "phi" => phi_suite(),
        "conj-a" => conj_a_suite(opts),
        "hilb2" => with_engine("k3-rank24", 5, hilb2_theorems),
        "worked" => with_engine("k3-rank24", 4, |e, ev| {
            let mut rep = Report::new();
            for d in 1..=4 {
                rep.extend(worked_examples(e, ev, d)?);
            }
            Ok(rep)
        }),
        "genus1" if !opts.long => {
            skipped = Some("runs with --long".to_string());
            Ok(Report::new())
        }
        "genus1" => with_engine("k3-rank24", 2, genus1_check),
        "table1" => {
            let h_max = if opts.long { 15 } else { opts.h_max };
            hyperelliptic_tables(h_max, 6).map(|t| verify_hyperelliptic(&t))
        }
        "a1" => with_engine(&opts.model, 0, |e, ev| a1_restriction_check(e, ev, 3, 12)),
        "qjac" => with_engine("k3-rank24", 12, |e, ev| {
            let pairs = representative_pairs(e.model())?;
            quasi_jacobi_certification(e, ev, &pairs)
        }),
        other => Err(Error::InvalidArgument(format!("no suite named {other}"))),
    };
    let (report, error) = match result {
        Ok(r) => (r, None),
        Err(e) => (Report::new(), Some(e.to_string())),
    };
    Outcome { criterion: c, report, error, skipped, elapsed: start.elapsed() }
}

fn with_engine(model: &str, q_max: i64, f: impl FnOnce(&Engine, &Evaluator) -> Result<Report>) -> Result<Report> {
    let engine = Engine::new(SurfaceModel::by_name(model)?);
    let eval = Evaluator::new(q_max)?;
    f(&engine, &eval)
}

fn phi_suite() -> Result<Report> {
    let mut rep = verify_printed(&PhiTable::new(2)?);
    rep.extend(verify_invariants(&PhiTable::new(8)?));
    Ok(rep)
}

/// Full basis for `d ≤ 2` through `q³`; with `long`, also `d = 3` in the configured mode.
fn conj_a_suite(opts: &SuiteOptions) -> Result<Report> {
    let model = SurfaceModel::by_name(&opts.model)?;
    let engine = Engine::new(model.clone());
    let eval = Evaluator::new(3)?;
    let classes = |names: &[(&str, &str)]| -> Result<Vec<_>> {
        names.iter().map(|(a, b)| Ok((model.parse_class(a)?, model.parse_class(b)?))).collect()
    };
    let mut rep = Report::new();
    let low = classes(&[("B", "F"), ("F", "g1"), ("B", "g1"), ("g1", "g2")])?;
    for d in 1..=2 {
        for (g, h) in &low {
            rep.extend(wdvv_operator_check(&engine, &eval, g, h, d, CheckMode::Full)?);
        }
    }
    if opts.long {
        for (g, h) in &classes(&[("B", "F"), ("B", "g1")])? {
            rep.extend(wdvv_operator_check(&engine, &eval, g, h, 3, opts.conj_a_mode)?);
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selection() {
        assert_eq!(select(&["all".into()]).unwrap().len(), 12);
        assert_eq!(select(&["table1".into(), "4".into()]).unwrap().iter().map(|c| c.id).collect::<Vec<_>>(), [10, 4]);
        assert!(select(&["none-existent".into()]).is_err());
    }

    #[test]
    fn quick_suites_pass() {
        for key in ["yz", "theta", "diff"] {
            let c = CRITERIA.iter().find(|c| c.key == key).unwrap();
            let o = run(c, &SuiteOptions::default());
            assert!(o.passed(), "{o}");
        }
    }

    #[test]
    fn genus1_waits_for_long() {
        let c = CRITERIA.iter().find(|c| c.key == "genus1").unwrap();
        let o = run(c, &SuiteOptions::default());
        assert!(o.skipped.is_some() && !o.passed());
    }
}
