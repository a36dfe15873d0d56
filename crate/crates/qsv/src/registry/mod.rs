//! Identity catalogue and verification driver.
//!
//! A check is an equality `N·lhs = N·rhs` between two expression trees,
//! where `N = q^a z^b` is an optional monomial normalizer that clears
//! fractional offsets. [`run_check`] evaluates both sides below the order,
//! compares them exactly and audits every string-function leaf for
//! integrality. [`run_suite`] runs a glob-selected slice in parallel; the
//! report order is the catalogue order whatever the thread count.

mod catalogue;
pub mod expr;
pub mod report;

pub use catalogue::register_builtin_catalogue;

use crate::error::{QsvError, Result};
use crate::hecke::{string_coeff, StringFnId};
use crate::series::{Exponent, GaussianRational};
use expr::{Evaluator, Expr};
use serde::Serialize;
use std::collections::BTreeSet;
use std::sync::OnceLock;
use std::time::Instant;

/// A parameter-closed identity with its verification defaults.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub id: String,
    pub anchor: String,
    pub lhs: Expr,
    pub rhs: Expr,
    /// `(a, b)` for the shared multiplier `q^a z^b`.
    pub normalizer: Option<(Exponent, Exponent)>,
    pub default_order: Exponent,
    pub params: Vec<(String, i64)>,
    pub tags: Vec<String>,
    /// How an ambiguous or corrected display was read.
    pub note: Option<String>,
}

impl IdentityCheck {
    pub fn new(id: impl Into<String>, anchor: impl Into<String>, lhs: Expr, rhs: Expr, order: i64) -> Self {
        IdentityCheck {
            id: id.into(),
            anchor: anchor.into(),
            lhs,
            rhs,
            normalizer: None,
            default_order: Exponent::int(order),
            params: Vec::new(),
            tags: Vec::new(),
            note: None,
        }
    }

    pub fn normalized_by(mut self, q: Exponent, z: Exponent) -> Self {
        self.normalizer = Some((q, z));
        self
    }

    pub fn param(mut self, name: &str, value: i64) -> Self {
        self.params.push((name.to_string(), value));
        self
    }

    pub fn tag(mut self, t: &str) -> Self {
        self.tags.push(t.to_string());
        self
    }

    pub fn note(mut self, n: &str) -> Self {
        self.note = Some(n.to_string());
        self
    }

    pub fn has_tag(&self, t: &str) -> bool {
        self.tags.iter().any(|x| x == t)
    }

    /// Both sides after normalization.
    pub fn sides(&self) -> (Expr, Expr) {
        match &self.normalizer {
            None => (self.lhs.clone(), self.rhs.clone()),
            Some((a, b)) => {
                let n = Expr::qz(a.clone(), b.clone());
                (n.clone() * self.lhs.clone(), n * self.rhs.clone())
            }
        }
    }

    /// The same check with `c·q^eq z^ez` added to the normalized right side.
    pub fn perturbed(&self, eq: Exponent, ez: Exponent, c: GaussianRational) -> IdentityCheck {
        let (na, nb) = self.normalizer.clone().unwrap_or((Exponent::zero(), Exponent::zero()));
        let mut out = self.clone();
        out.rhs = self.rhs.clone() + Expr::mono(c, eq - na, ez - nb);
        out.id = format!("{}:mutated", self.id);
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl CheckStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skipped => "skipped",
        }
    }
}

/// Exact strings for the first disagreeing coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferenceReport {
    pub e_q: String,
    pub e_z: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub anchor: String,
    pub status: CheckStatus,
    /// Both sides agree strictly below this q-order.
    #[serde(serialize_with = "as_display")]
    pub verified_order: Exponent,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_difference: Option<DifferenceReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub wall_time_ms: u64,
}

fn as_display<S: serde::Serializer, T: std::fmt::Display>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    /// Smallest verified order over the non-skipped checks.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_display")]
    pub max_common_verified_order: Option<Exponent>,
}

fn opt_display<S: serde::Serializer>(v: &Option<Exponent>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(e) => s.collect_str(e),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<CheckReport>,
    pub summary: Summary,
}

/// The builtin catalogue, built once.
pub fn builtin() -> &'static [IdentityCheck] {
    static C: OnceLock<Vec<IdentityCheck>> = OnceLock::new();
    C.get_or_init(register_builtin_catalogue)
}

/// Looks up a builtin check by id.
pub fn lookup(id: &str) -> Option<&'static IdentityCheck> {
    builtin().iter().find(|c| c.id == id)
}

/// Runs the builtin check `id`; `None` if no such check exists.
pub fn run_check_id(id: &str, order: Option<&Exponent>) -> Option<CheckReport> {
    lookup(id).map(|c| run_check(c, order))
}

enum Outcome {
    Agree,
    Differ(crate::series::FirstDifference),
    NotIntegral(StringFnId),
}

fn evaluate(check: &IdentityCheck, order: &Exponent) -> Result<Outcome> {
    let (l, r) = check.sides();
    let mut ev = Evaluator::default();
    let ls = ev.eval(&l, order)?;
    let rs = ev.eval(&r, order)?;
    let cmp = ls.equal_up_to(&rs, order)?;
    if let Some(d) = cmp.first_difference {
        return Ok(Outcome::Differ(d));
    }
    let mut leaves = Vec::new();
    check.lhs.string_fn_leaves(&mut leaves);
    check.rhs.string_fn_leaves(&mut leaves);
    let leaves: BTreeSet<_> = leaves.into_iter().map(|id| (id.p, id.pprime, id.m, id.ell)).collect();
    for (p, pp, m, ell) in leaves {
        let id = StringFnId::new(p, pp, m, ell)?;
        if !string_coeff(&id, true, order)?.has_integer_coefficients() {
            return Ok(Outcome::NotIntegral(id));
        }
    }
    Ok(Outcome::Agree)
}

/// Evaluates and compares one check at `order`, or at its default order.
pub fn run_check(check: &IdentityCheck, order: Option<&Exponent>) -> CheckReport {
    let order = order.cloned().unwrap_or_else(|| check.default_order.clone());
    let start = Instant::now();
    let outcome = evaluate(check, &order);
    let wall_time_ms = start.elapsed().as_millis() as u64;
    let mut rep = CheckReport {
        id: check.id.clone(),
        anchor: check.anchor.clone(),
        status: CheckStatus::Pass,
        verified_order: order,
        first_difference: None,
        reason: None,
        wall_time_ms,
    };
    match outcome {
        Ok(Outcome::Agree) => {}
        Ok(Outcome::Differ(d)) => {
            rep.status = CheckStatus::Fail;
            rep.verified_order = d.q.clone();
            rep.first_difference = Some(DifferenceReport {
                e_q: d.q.to_string(),
                e_z: d.z.to_string(),
                lhs: d.lhs.to_string(),
                rhs: d.rhs.to_string(),
            });
        }
        Ok(Outcome::NotIntegral(id)) => {
            rep.status = CheckStatus::Fail;
            rep.reason = Some(format!(
                "integrality audit: C_{{{},{}}} at ({},{}) has a non-integral coefficient",
                id.m, id.ell, id.p, id.pprime
            ));
        }
        Err(e) => {
            rep.status = CheckStatus::Skipped;
            rep.verified_order = Exponent::zero();
            rep.reason = Some(e.to_string());
        }
    }
    rep
}

/// Shell-style glob over check ids; an empty pattern selects everything.
pub fn select<'a>(checks: &'a [IdentityCheck], filter: &str) -> Result<Vec<&'a IdentityCheck>> {
    if filter.is_empty() {
        return Ok(checks.iter().collect());
    }
    let pat = glob::Pattern::new(filter).map_err(|e| QsvError::InvalidParameters(format!("filter: {e}")))?;
    Ok(checks.iter().filter(|c| pat.matches(&c.id)).collect())
}

/// Tally of a list of reports.
pub fn summarize(reports: &[CheckReport]) -> Summary {
    let mut s = Summary::default();
    for r in reports {
        match r.status {
            CheckStatus::Pass => s.pass += 1,
            CheckStatus::Fail => s.fail += 1,
            CheckStatus::Skipped => {
                s.skipped += 1;
                continue;
            }
        }
        s.max_common_verified_order = Some(match s.max_common_verified_order.take() {
            Some(m) if m <= r.verified_order => m,
            _ => r.verified_order.clone(),
        });
    }
    s
}

/// Runs every check of `checks` whose id matches `filter` on `threads`
/// worker threads. Reports come back in catalogue order.
pub fn run_suite(
    checks: &[IdentityCheck],
    filter: &str,
    order: Option<&Exponent>,
    threads: usize,
) -> Result<SuiteReport> {
    use rayon::prelude::*;
    let selected = select(checks, filter)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| QsvError::InvalidParameters(format!("thread pool: {e}")))?;
    let reports: Vec<CheckReport> = pool.install(|| selected.par_iter().map(|c| run_check(c, order)).collect());
    let summary = summarize(&reports);
    Ok(SuiteReport { checks: reports, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mutation_is_reported_at_its_exponent() {
        let c = IdentityCheck::new("t:jflip", "equation:j-flip", Expr::jq(1, 3), Expr::jq(2, 3), 30);
        assert_eq!(run_check(&c, None).status, CheckStatus::Pass);
        let bad = c.perturbed(Exponent::int(5), Exponent::zero(), GaussianRational::one());
        let rep = run_check(&bad, None);
        assert_eq!(rep.status, CheckStatus::Fail);
        assert_eq!(rep.first_difference.unwrap().e_q, "5");
        assert_eq!(rep.verified_order, Exponent::int(5));
    }

    #[test]
    fn evaluation_errors_become_skips() {
        let c = IdentityCheck::new("t:pole", "", Expr::jq(0, 1).inv(), Expr::int(0), 10);
        let rep = run_check(&c, None);
        assert_eq!(rep.status, CheckStatus::Skipped);
        assert!(rep.reason.is_some());
    }
}
