//! Acceptance harness: one PASS/FAIL line per criterion, nonzero exit if
//! any criterion fails. Orders and limits are pinned below.

use qsv::appell::{mock_theta, MockForm, MockName};
use qsv::hecke::{string_coeff, StringFnId};
use qsv::registry::report::canonical_json;
use qsv::registry::{builtin, run_check, run_suite, select, CheckStatus, IdentityCheck, SuiteReport};
use qsv::{Exponent, GaussianRational, QZSeries};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

const FULL_SUITE_BUDGET: Duration = Duration::from_secs(600);
const FULL_SUITE_THREADS: usize = 8;
const ONE_VARIABLE_MIN: i64 = 200;
const TWO_VARIABLE_MIN: i64 = 60;
const LEVEL_FIFTHS_MIN: i64 = 40;
const KAC_PETERSON_ORDER: i64 = 100;
const MOCK_ORDER: i64 = 200;
const QUASI_ORDER: i64 = 80;
const LIMIT_LEMMA_ORDER: i64 = 150;
/// q-exponents at which each gated check is perturbed; the last slot is
/// replaced by `default_order − 1`.
const MUTATION_EXPONENTS: [i64; 4] = [0, 3, 17, -1];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(problems: Vec<String>, ok: String) -> Outcome {
    if problems.is_empty() {
        Outcome { pass: true, detail: ok }
    } else {
        let shown: Vec<_> = problems.iter().take(5).cloned().collect();
        Outcome { pass: false, detail: format!("{} problem(s): {}", problems.len(), shown.join("; ")) }
    }
}

fn not_passing(rep: &SuiteReport) -> Vec<String> {
    rep.checks
        .iter()
        .filter(|r| r.status != CheckStatus::Pass)
        .map(|r| {
            let why = match (&r.first_difference, &r.reason) {
                (Some(d), _) => format!("differs at q^{} z^{}", d.e_q, d.e_z),
                (None, Some(reason)) => reason.clone(),
                (None, None) => String::new(),
            };
            format!("{} {} {}", r.id, r.status.as_str(), why)
        })
        .collect()
}

fn param(c: &IdentityCheck, name: &str) -> Option<i64> {
    c.params.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
}

fn is_level_fifths(c: &IdentityCheck) -> bool {
    c.id.contains("pP51") || param(c, "p") == Some(5)
}

/// Smallest default order the check's family may carry.
fn required_order(c: &IdentityCheck) -> i64 {
    if is_level_fifths(c) {
        LEVEL_FIFTHS_MIN
    } else if c.lhs.mentions_z() || c.rhs.mentions_z() {
        TWO_VARIABLE_MIN
    } else {
        ONE_VARIABLE_MIN
    }
}

/// The multi-threaded full run, shared by the suite and determinism criteria.
static PARALLEL_REPORT: OnceLock<SuiteReport> = OnceLock::new();

fn full_suite() -> Outcome {
    let start = Instant::now();
    let rep = run_suite(builtin(), "", None, FULL_SUITE_THREADS).expect("empty filter is valid");
    let elapsed = start.elapsed();
    let rep = PARALLEL_REPORT.get_or_init(|| rep);
    let mut problems = not_passing(&rep);
    for (c, r) in builtin().iter().zip(&rep.checks) {
        let need = Exponent::int(required_order(c));
        if r.status == CheckStatus::Pass && r.verified_order < need {
            problems.push(format!("{} verified only to {} (< {})", c.id, r.verified_order, need));
        }
    }
    if elapsed > FULL_SUITE_BUDGET {
        problems.push(format!("wall time {:.1?} over budget", elapsed));
    }
    let s = &rep.summary;
    outcome(problems, format!("{} checks, {} pass, wall {:.1?} on {} threads", rep.checks.len(), s.pass, elapsed, FULL_SUITE_THREADS))
}

fn kac_peterson() -> Outcome {
    let order = Exponent::int(KAC_PETERSON_ORDER);
    let rep = run_suite(builtin(), "prior:KacPeterson:*", Some(&order), 4).unwrap();
    let mut problems = not_passing(&rep);
    let ids: BTreeSet<_> = rep.checks.iter().map(|r| r.id.as_str()).collect();
    for want in ["C1_00", "C2_11", "C3_11", "C4_20"] {
        if !ids.contains(format!("prior:KacPeterson:{want}").as_str()) {
            problems.push(format!("no check for {want}"));
        }
    }
    // the level-one value is the partition generating function
    let c100 = string_coeff(&StringFnId::new(1, 3, 0, 0).unwrap(), true, &order).unwrap();
    if c100.int_coeffs(5) != [1, 1, 2, 3, 5].map(GaussianRational::from_int) {
        problems.push("C^1_{0,0} does not open with 1, 1, 2, 3, 5".into());
    }
    outcome(problems, format!("{} closed forms equal to order {KAC_PETERSON_ORDER}", rep.checks.len()))
}

fn mock_dual_forms() -> Outcome {
    let t = Exponent::int(MOCK_ORDER);
    let names = [MockName::A2, MockName::Mu2, MockName::F3, MockName::Omega3, MockName::Psi3, MockName::Chi3, MockName::F0, MockName::F1];
    let mut problems = Vec::new();
    let mut pairs = 0;
    for name in names {
        let base = match mock_theta(name, MockForm::Eulerian, &t) {
            Ok(s) => s,
            Err(e) => {
                problems.push(format!("{} eulerian: {e}", name.as_str()));
                continue;
            }
        };
        let others: Vec<_> = name.forms().iter().filter(|f| **f != MockForm::Eulerian).collect();
        if others.is_empty() {
            problems.push(format!("{} has a single form", name.as_str()));
        }
        for form in others {
            pairs += 1;
            match mock_theta(name, *form, &t).and_then(|s| base.equal_up_to(&s, &t)) {
                Ok(c) if c.is_equal() => {}
                Ok(c) => problems.push(format!("{} {:?} differs at {:?}", name.as_str(), form, c.first_difference.map(|d| d.q.to_string()))),
                Err(e) => problems.push(format!("{} {:?}: {e}", name.as_str(), form)),
            }
        }
        let rep = run_suite(builtin(), &format!("def:mock:{}:*", name.as_str()), Some(&t), 2).unwrap();
        if rep.checks.is_empty() {
            problems.push(format!("catalogue lacks def:mock:{}", name.as_str()));
        }
        problems.extend(not_passing(&rep));
    }
    let f3 = mock_theta(MockName::F3, MockForm::Eulerian, &Exponent::int(4)).unwrap();
    if f3 != QZSeries::from_int_coeffs(&[1, 1, -2, 3], 4) {
        problems.push("f3 does not open 1 + q - 2q^2 + 3q^3".into());
    }
    outcome(problems, format!("{pairs} form pairs agree to order {MOCK_ORDER}; f3 = 1 + q - 2q^2 + 3q^3 + ..."))
}

fn quasi_periodicity() -> Outcome {
    let order = Exponent::int(QUASI_ORDER);
    let filter = "thm:generalQuasiPeriodicityOddSpin:*";
    let rep = run_suite(builtin(), filter, Some(&order), FULL_SUITE_THREADS).unwrap();
    let mut problems = not_passing(&rep);
    let mut seen: BTreeMap<(i64, i64), BTreeSet<i64>> = BTreeMap::new();
    for c in select(builtin(), filter).unwrap() {
        let key = (param(c, "p").unwrap(), param(c, "j").unwrap());
        seen.entry(key).or_default().insert(param(c, "t").unwrap());
    }
    let all_t: BTreeSet<i64> = [-3, -2, -1, 1, 2, 3].into();
    for pj in [(2, 1), (3, 2), (5, 2)] {
        if seen.get(&pj) != Some(&all_t) {
            problems.push(format!("(p,j)={pj:?} lacks some |t| <= 3"));
        }
    }
    outcome(problems, format!("{} shifts over {} (p,j) agree to order {QUASI_ORDER}", rep.checks.len(), seen.len()))
}

const GATED: [&str; 5] = [
    "thm:generalPolarFiniteOddSpin:*",
    "thm:pP38m1ell2rPlus1*",
    "cor:pP38m3ell2rPlus1*",
    "thm:pP512m1ell2rPlus1*",
    "cor:pP512m3ell2rPlus1*",
];

fn new_results_gate() -> Outcome {
    let mut problems = Vec::new();
    let mut checks: Vec<&IdentityCheck> = Vec::new();
    for f in GATED {
        let sel = select(builtin(), f).unwrap();
        if sel.is_empty() {
            problems.push(format!("{f} selects nothing"));
        }
        checks.extend(sel);
    }
    let pj: BTreeSet<_> = checks
        .iter()
        .filter(|c| c.id.starts_with("thm:generalPolarFiniteOddSpin"))
        .map(|c| (param(c, "p"), param(c, "j")))
        .collect();
    if pj.len() != 5 {
        problems.push(format!("{} (p,j) instances of the polar-finite theorem, want 5", pj.len()));
    }
    for f in GATED {
        problems.extend(not_passing(&run_suite(builtin(), f, None, FULL_SUITE_THREADS).unwrap()));
    }
    let mut mutants = 0;
    for c in &checks {
        let top = c.default_order.ceil_i64() - 1;
        for (k, e) in MUTATION_EXPONENTS.iter().enumerate() {
            let e = if *e < 0 { top } else { (*e).min(top) };
            let ez = Exponent::int((k % 2) as i64);
            let m = c.perturbed(Exponent::int(e), ez.clone(), GaussianRational::from_int(1));
            let rep = run_check(&m, Some(&Exponent::int(e + 1)));
            mutants += 1;
            let caught = rep.status == CheckStatus::Fail
                && rep.first_difference.as_ref().is_some_and(|d| d.e_q == e.to_string() && d.e_z == ez.to_string());
            if !caught {
                problems.push(format!("{} survived a perturbation at q^{e} z^{ez}", c.id));
            }
        }
    }
    outcome(problems, format!("{} gated checks pass; {mutants} single-coefficient mutants all detected", checks.len()))
}

fn limit_lemmas() -> Outcome {
    let order = Exponent::int(LIMIT_LEMMA_ORDER);
    let mut problems = Vec::new();
    let mut n = 0;
    for f in ["lemma:polarFinite23m1AppellVanish:*", "lemma:polarFinite23m3AppellVanish:*"] {
        let rep = run_suite(builtin(), f, Some(&order), 2).unwrap();
        if rep.checks.len() != 2 {
            problems.push(format!("{f} has {} displays, want 2", rep.checks.len()));
        }
        n += rep.checks.len();
        problems.extend(not_passing(&rep));
    }
    outcome(problems, format!("{n} displays agree to order {LIMIT_LEMMA_ORDER}"))
}

fn integrality() -> Outcome {
    // every string-function leaf at the largest order any check needs it
    let mut need: BTreeMap<StringFnId, Exponent> = BTreeMap::new();
    for c in builtin() {
        let mut leaves = Vec::new();
        c.lhs.string_fn_leaves(&mut leaves);
        c.rhs.string_fn_leaves(&mut leaves);
        for id in leaves {
            let e = need.entry(id).or_insert_with(|| c.default_order.clone());
            if *e < c.default_order {
                *e = c.default_order.clone();
            }
        }
    }
    let mut problems = Vec::new();
    for (id, order) in &need {
        match string_coeff(id, true, order) {
            Ok(s) if s.has_integer_coefficients() => {}
            Ok(_) => problems.push(format!("C_{{{},{}}} at ({},{}) is not integral", id.m, id.ell, id.p, id.pprime)),
            Err(e) => problems.push(format!("C_{{{},{}}} at ({},{}): {e}", id.m, id.ell, id.p, id.pprime)),
        }
    }
    outcome(problems, format!("{} distinct string functions integral to full truncation", need.len()))
}

fn determinism() -> Outcome {
    let one = canonical_json(&run_suite(builtin(), "", None, 1).unwrap(), "builtin", "default");
    let parallel = PARALLEL_REPORT.get_or_init(|| run_suite(builtin(), "", None, FULL_SUITE_THREADS).unwrap());
    let eight = canonical_json(parallel, "builtin", "default");
    if one == eight {
        Outcome { pass: true, detail: format!("{} identical bytes at 1 and {FULL_SUITE_THREADS} threads", one.len()) }
    } else {
        let at = one.bytes().zip(eight.bytes()).position(|(a, b)| a != b).unwrap_or(one.len().min(eight.len()));
        Outcome { pass: false, detail: format!("reports diverge at byte {at}") }
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("full builtin suite at default orders", full_suite),
        ("Kac-Peterson closed forms", kac_peterson),
        ("mock theta dual forms", mock_dual_forms),
        ("quasi-periodicity path independence", quasi_periodicity),
        ("new-results gate with mutation testing", new_results_gate),
        ("limit lemmas", limit_lemmas),
        ("integrality audit", integrality),
        ("determinism across thread counts", determinism),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        failed += usize::from(!o.pass);
        println!(
            "criterion {} {} {name}: {} ({:.1?})",
            n + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed()
        );
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
