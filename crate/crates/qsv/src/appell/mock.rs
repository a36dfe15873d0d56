//! Named mock theta functions in Eulerian and Appell forms.

use crate::error::{QsvError, Result};
use crate::registry::expr::Expr;
use crate::series::{Coef, Exponent, QZSeries, Term};
use crate::theta::{check_pair, r64_of, IdentityOutcome, SuiteOutcome, ThetaArg};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

/// The mock theta functions the engine knows by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MockName {
    A2,
    Mu2,
    F3,
    Omega3,
    Psi3,
    Chi3,
    Phi10,
    Psi10,
    BigX10,
    Chi10,
    F0,
    F1,
}

/// Which representation to evaluate.
///
/// `EulerianAlt` and `AppellAlt` select a second displayed form where one
/// exists. For `f₀, f₁` the Appell slot holds the `g₃` form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MockForm {
    Eulerian,
    EulerianAlt,
    Appell,
    AppellAlt,
}

impl MockName {
    pub const ALL: [MockName; 12] = [
        MockName::A2,
        MockName::Mu2,
        MockName::F3,
        MockName::Omega3,
        MockName::Psi3,
        MockName::Chi3,
        MockName::Phi10,
        MockName::Psi10,
        MockName::BigX10,
        MockName::Chi10,
        MockName::F0,
        MockName::F1,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            MockName::A2 => "A2",
            MockName::Mu2 => "mu2",
            MockName::F3 => "f3",
            MockName::Omega3 => "omega3",
            MockName::Psi3 => "psi3",
            MockName::Chi3 => "chi3",
            MockName::Phi10 => "phi10",
            MockName::Psi10 => "psi10",
            MockName::BigX10 => "X10",
            MockName::Chi10 => "chi10",
            MockName::F0 => "f0",
            MockName::F1 => "f1",
        }
    }

    /// Forms available for this name.
    pub fn forms(&self) -> &'static [MockForm] {
        use MockForm::*;
        match self {
            MockName::A2 => &[Eulerian, EulerianAlt, Appell],
            MockName::F3 | MockName::Omega3 => &[Eulerian, Appell, AppellAlt],
            MockName::Mu2 | MockName::Psi3 | MockName::Chi3 | MockName::F0 | MockName::F1 => &[Eulerian, Appell],
            MockName::Phi10 | MockName::Psi10 | MockName::BigX10 | MockName::Chi10 => &[Eulerian],
        }
    }
}

impl fmt::Display for MockName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MockName {
    type Err = QsvError;
    fn from_str(s: &str) -> Result<Self> {
        MockName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| QsvError::UnknownName(s.to_string()))
    }
}

impl MockForm {
    pub fn as_str(&self) -> &'static str {
        match self {
            MockForm::Eulerian => "eulerian",
            MockForm::EulerianAlt => "eulerian-alt",
            MockForm::Appell => "appell",
            MockForm::AppellAlt => "appell-alt",
        }
    }
}

impl FromStr for MockForm {
    type Err = QsvError;
    fn from_str(s: &str) -> Result<Self> {
        [MockForm::Eulerian, MockForm::EulerianAlt, MockForm::Appell, MockForm::AppellAlt]
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| QsvError::UnknownName(s.to_string()))
    }
}

/// Dense integer-exponent series `Σ_{k<len} c_k q^k`.
struct Dense(Vec<Coef>);

impl Dense {
    fn one(len: usize) -> Dense {
        let mut v = vec![Coef::ZERO; len];
        if len > 0 {
            v[0] = Coef::ONE;
        }
        Dense(v)
    }

    /// Multiply by `1 + s·q^k`.
    fn mul_binom(&mut self, k: usize, s: i64) {
        let sc = Coef::int(s);
        for i in (k..self.0.len()).rev() {
            let d = self.0[i - k].mul(&sc);
            self.0[i] = self.0[i].add(&d);
        }
    }

    /// Divide by `1 + s·q^k`.
    fn div_binom(&mut self, k: usize, s: i64) {
        let sc = Coef::int(-s);
        for i in k..self.0.len() {
            let d = self.0[i - k].mul(&sc);
            self.0[i] = self.0[i].add(&d);
        }
    }

    /// Add `sign·q^shift·self` into `acc`.
    fn add_into(&self, acc: &mut [Coef], shift: usize, sign: i64) {
        let sc = Coef::int(sign);
        for (i, c) in self.0.iter().enumerate() {
            if i + shift >= acc.len() {
                break;
            }
            acc[i + shift].add_mul(c, &sc);
        }
    }
}

fn dense_to_series(v: Vec<Coef>, shift: i64) -> QZSeries {
    let len = v.len() as i64;
    let terms = v.into_iter().enumerate().map(|(k, c)| Term { q: k as i64 + shift, z: 0, c }).collect();
    QZSeries::from_raw(1, 1, len + shift, terms)
}

/// `Σ_{n≥n0} sign(n) q^{e(n)} R_n` where `R_{n0}` comes from `init` and
/// `R_n` from `step(R_{n−1}, n)`; exponents must increase with `n`.
fn eulerian(
    len: usize,
    n0: i64,
    e: impl Fn(i64) -> i64,
    sign: impl Fn(i64) -> i64,
    init: impl Fn(&mut Dense),
    step: impl Fn(&mut Dense, usize),
) -> Vec<Coef> {
    let mut acc = vec![Coef::ZERO; len];
    let mut r = Dense::one(len);
    init(&mut r);
    let mut n = n0;
    while (e(n) as usize) < len {
        if n > n0 {
            step(&mut r, n as usize);
        }
        r.add_into(&mut acc, e(n) as usize, sign(n));
        n += 1;
    }
    acc
}

fn alt(n: i64) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

fn eulerian_form(name: MockName, alt_form: bool, len: usize) -> Vec<Coef> {
    let plus = |_: i64| 1;
    match (name, alt_form) {
        (MockName::A2, false) => eulerian(
            len,
            0,
            |n| n + 1,
            plus,
            |r| r.div_binom(1, -1),
            |r, n| {
                r.mul_binom(2 * n, 1);
                r.div_binom(2 * n + 1, -1);
            },
        ),
        (MockName::A2, true) => eulerian(
            len,
            0,
            |n| (n + 1) * (n + 1),
            plus,
            |r| {
                r.div_binom(1, -1);
                r.div_binom(1, -1);
            },
            |r, n| {
                r.mul_binom(2 * n - 1, 1);
                r.div_binom(2 * n + 1, -1);
                r.div_binom(2 * n + 1, -1);
            },
        ),
        (MockName::Mu2, _) => eulerian(len, 0, |n| n * n, alt, |_| {}, |r, n| {
            r.mul_binom(2 * n - 1, -1);
            r.div_binom(2 * n, 1);
            r.div_binom(2 * n, 1);
        }),
        (MockName::F3, _) => eulerian(len, 0, |n| n * n, plus, |_| {}, |r, n| {
            r.div_binom(n, 1);
            r.div_binom(n, 1);
        }),
        (MockName::Omega3, _) => eulerian(
            len,
            0,
            |n| 2 * n * (n + 1),
            plus,
            |r| {
                r.div_binom(1, -1);
                r.div_binom(1, -1);
            },
            |r, n| {
                r.div_binom(2 * n + 1, -1);
                r.div_binom(2 * n + 1, -1);
            },
        ),
        (MockName::Psi3, _) => eulerian(len, 1, |n| n * n, plus, |r| r.div_binom(1, -1), |r, n| r.div_binom(2 * n - 1, -1)),
        (MockName::Chi3, _) => eulerian(len, 0, |n| n * n, plus, |_| {}, |r, n| {
            r.mul_binom(n, 1);
            r.div_binom(3 * n, 1);
        }),
        (MockName::Phi10, _) => {
            eulerian(len, 0, |n| n * (n + 1) / 2, plus, |r| r.div_binom(1, -1), |r, n| r.div_binom(2 * n + 1, -1))
        }
        (MockName::Psi10, _) => eulerian(
            len,
            0,
            |n| (n + 1) * (n + 2) / 2,
            plus,
            |r| r.div_binom(1, -1),
            |r, n| r.div_binom(2 * n + 1, -1),
        ),
        (MockName::BigX10, _) => eulerian(len, 0, |n| n * n, alt, |_| {}, |r, n| {
            r.div_binom(2 * n - 1, 1);
            r.div_binom(2 * n, 1);
        }),
        (MockName::Chi10, _) => eulerian(len, 0, |n| (n + 1) * (n + 1), alt, |r| r.div_binom(1, 1), |r, n| {
            r.div_binom(2 * n, 1);
            r.div_binom(2 * n + 1, 1);
        }),
        (MockName::F0, _) => eulerian(len, 0, |n| n * n, plus, |_| {}, |r, n| r.div_binom(n, 1)),
        (MockName::F1, _) => eulerian(len, 0, |n| n * (n + 1), plus, |_| {}, |r, n| r.div_binom(n, 1)),
    }
}

/// The Appell-function (or `g₃`) form of a named mock theta function.
pub fn appell_form(name: MockName, form: MockForm) -> Result<Expr> {
    let unavailable = || QsvError::FormUnavailable { name: name.as_str().into(), form: form.as_str().into() };
    let m = |x: ThetaArg, z: ThetaArg, b: i64| Expr::appell(x, z, b);
    let alt_form = match form {
        MockForm::Appell => false,
        MockForm::AppellAlt => true,
        _ => return Err(unavailable()),
    };
    let j36_sq_over_j1 = Expr::jab(3, 6).pow(2) / Expr::jn(1);
    Ok(match (name, alt_form) {
        (MockName::A2, false) => -m(ThetaArg::q(1), ThetaArg::q(2), 4),
        (MockName::Mu2, false) => {
            Expr::int(2) * m(ThetaArg::neg_q(1), ThetaArg::neg_q(0), 4)
                + Expr::int(2) * m(ThetaArg::neg_q(1), ThetaArg::q(1), 4)
        }
        (MockName::F3, false) => Expr::int(4) * m(ThetaArg::neg_q(1), ThetaArg::q(1), 3) + j36_sq_over_j1,
        (MockName::F3, true) => {
            Expr::int(2) * m(ThetaArg::neg_q(1), ThetaArg::q(1), 3) + Expr::int(2) * m(ThetaArg::neg_q(1), ThetaArg::q(2), 3)
        }
        (MockName::Omega3, false) => {
            Expr::int(-2) * Expr::q(-1) * m(ThetaArg::q(1), ThetaArg::q(2), 6)
                + Expr::jn(6).pow(3) / (Expr::jn(2) * Expr::jab(3, 6))
        }
        (MockName::Omega3, true) => {
            -(Expr::q(-1) * m(ThetaArg::q(1), ThetaArg::q(2), 6)) - Expr::q(-1) * m(ThetaArg::q(1), ThetaArg::q(4), 6)
        }
        (MockName::Psi3, false) => {
            // m(q,−q;−q³) is m(−q,q;q³) under q ↦ −q
            -m(ThetaArg::neg_q(1), ThetaArg::q(1), 3).at_neg_q_pow(1)
                + Expr::q(1) * Expr::jn(12).pow(3) / (Expr::jn(4) * Expr::jab(3, 12))
        }
        (MockName::Chi3, false) => m(ThetaArg::neg_q(1), ThetaArg::q(1), 3) + j36_sq_over_j1,
        (MockName::F0, false) => {
            Expr::jab(5, 10) * Expr::jab(2, 5) / Expr::jn(1) - Expr::int(2) * Expr::q(2) * Expr::g3(ThetaArg::q(2), 10)
        }
        (MockName::F1, false) => {
            Expr::jab(5, 10) * Expr::jab(1, 5) / Expr::jn(1) - Expr::int(2) * Expr::q(3) * Expr::g3(ThetaArg::q(4), 10)
        }
        _ => return Err(unavailable()),
    })
}

type Cache = RwLock<HashMap<(MockName, MockForm), QZSeries>>;

fn cache() -> &'static Cache {
    static C: OnceLock<Cache> = OnceLock::new();
    C.get_or_init(|| RwLock::new(HashMap::new()))
}

/// A named mock theta function below `trunc`.
pub fn mock_theta(name: MockName, form: MockForm, trunc: &Exponent) -> Result<QZSeries> {
    let key = (name, form);
    if let Some(s) = cache().read().expect("cache poisoned").get(&key) {
        if s.trunc() >= *trunc {
            return Ok(s.truncate(trunc));
        }
    }
    if !name.forms().contains(&form) {
        return Err(QsvError::FormUnavailable { name: name.as_str().into(), form: form.as_str().into() });
    }
    let s = match form {
        MockForm::Eulerian | MockForm::EulerianAlt => {
            let len = trunc.ceil_i64().max(0) as usize;
            dense_to_series(eulerian_form(name, form == MockForm::EulerianAlt, len), 0).truncate(trunc)
        }
        MockForm::Appell | MockForm::AppellAlt => appell_form(name, form)?.eval(trunc)?.truncate(trunc),
    };
    let mut w = cache().write().expect("cache poisoned");
    if !w.get(&key).is_some_and(|old| old.trunc() >= s.trunc()) {
        w.insert(key, s.clone());
    }
    Ok(s)
}

/// `g₃(q^a; q^b) = q^{−a}(−1 + Σ q^{bn²}/((q^a;q^b)_{n+1}(q^{b−a};q^b)_n))`
/// for integers `0 < a < b`.
pub fn g3(x: &ThetaArg, base: &Exponent, trunc: &Exponent) -> Result<QZSeries> {
    let a = r64_of(&x.qpow)?;
    let b = r64_of(base)?;
    if !x.is_z_free() || x.coeff != crate::series::Unit::One || !a.is_integer() || !b.is_integer() {
        return Err(QsvError::InvalidParameters("g3 needs x = q^a with integer a and base".into()));
    }
    let (a, b) = (*a.numer(), *b.numer());
    if !(0 < a && a < b) {
        return Err(QsvError::InvalidParameters(format!("g3 needs 0 < a < b, got a={a}, b={b}")));
    }
    let len = (trunc.ceil_i64() + a).max(0) as usize;
    let (ua, ub) = (a as usize, b as usize);
    let mut acc = eulerian(
        len,
        0,
        |n| b * n * n,
        |_| 1,
        |r| r.div_binom(ua, -1),
        |r, n| {
            r.div_binom(ua + ub * n, -1);
            r.div_binom(ub * n - ua, -1);
        },
    );
    if let Some(c) = acc.first_mut() {
        *c = c.sub(&Coef::ONE);
    }
    Ok(dense_to_series(acc, -a).truncate(trunc))
}

/// The classical third-order relations and the level-2/3 Appell forms as
/// named expression pairs.
pub fn third_order_pairs() -> Vec<(&'static str, Expr, Expr)> {
    use MockForm::Eulerian;
    let f3 = Expr::mock(MockName::F3, Eulerian);
    let psi3_neg = Expr::mock(MockName::Psi3, Eulerian).at_neg_q_pow(1);
    let chi3 = Expr::mock(MockName::Chi3, Eulerian);
    let (j1, j2, j3, j4, j6, j12) = (Expr::jn(1), Expr::jn(2), Expr::jn(3), Expr::jn(4), Expr::jn(6), Expr::jn(12));
    let m12 = |x: ThetaArg| Expr::appell(x, ThetaArg::q(6), 12);
    let pair = m12(ThetaArg::neg_q(5)) - Expr::q(-1) * m12(ThetaArg::neg_q(1));
    let pair2 = m12(ThetaArg::neg_q(7)) - Expr::q(-2) * m12(ThetaArg::neg_q(-1));
    let theta_chi = j3.clone() * j4.clone().pow(3) / (j2.clone().pow(2) * j12.clone());
    let f3_over_4 = Expr::frac(1, 4) * f3.clone();
    vec![
        ("mockIdentity-f(q)psi(q)", f3.clone() + Expr::int(4) * psi3_neg.clone(), j1.clone().pow(3) / j2.clone().pow(2)),
        (
            "mockIdentity-chi(q)f(q)",
            Expr::int(4) * chi3.clone() - f3.clone(),
            Expr::int(3) * j3.clone().pow(4) / (j1.clone() * j6.clone().pow(2)),
        ),
        ("mockIdentity-chi(q)psi(q)", chi3.clone() + psi3_neg.clone(), theta_chi.clone()),
        ("altAppellForm3rd-chi", pair.clone(), chi3.clone() - theta_chi.clone()),
        ("altAppellForm3rd-psi", pair.clone(), -psi3_neg.clone()),
        ("FirstTwoPairs:first", pair.clone(), -psi3_neg),
        ("FirstTwoPairs:second", pair2.clone(), Expr::int(1) - (chi3 - theta_chi)),
        (
            "FirstTwoPairsAlt:first",
            pair,
            f3_over_4.clone() - Expr::frac(1, 4) * j1.clone().pow(3) / j2.clone().pow(2),
        ),
        (
            "FirstTwoPairsAlt:second",
            pair2,
            Expr::int(1) - f3_over_4 + Expr::frac(1, 4) * j1.pow(3) / j2.pow(2),
        ),
    ]
}

/// Verifies the classical third-order relations and the level-2/3 Appell
/// forms below `trunc`.
pub fn classical_third_order_suite(trunc: &Exponent) -> SuiteOutcome {
    let outcomes: Vec<IdentityOutcome> = third_order_pairs()
        .into_iter()
        .map(|(name, lhs, rhs)| check_pair(name, "", &lhs, &rhs, trunc))
        .collect();
    SuiteOutcome { outcomes }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: i64) -> Exponent {
        Exponent::int(n)
    }

    fn first(name: MockName, n: usize) -> Vec<i64> {
        let s = mock_theta(name, MockForm::Eulerian, &t(n as i64)).unwrap();
        s.int_coeffs(n).iter().map(|c| c.re.to_integer().try_into().unwrap()).collect()
    }

    #[test]
    fn f3_opens_with_known_coefficients() {
        assert_eq!(first(MockName::F3, 6), vec![1, 1, -2, 3, -3, 3]);
    }

    #[test]
    fn f0_and_psi3_open_with_known_coefficients() {
        // f₀ = 1 + q − q² + q³ + ...; ψ₃ = q + q² + q³ + 2q⁴ + ...
        assert_eq!(first(MockName::F0, 4), vec![1, 1, -1, 1]);
        assert_eq!(first(MockName::Psi3, 5), vec![0, 1, 1, 1, 2]);
    }

    #[test]
    fn tenth_order_has_no_appell_form() {
        let r = mock_theta(MockName::Phi10, MockForm::Appell, &t(5));
        assert!(matches!(r, Err(QsvError::FormUnavailable { .. })));
        assert!(matches!("nope".parse::<MockName>(), Err(QsvError::UnknownName(_))));
    }
}
