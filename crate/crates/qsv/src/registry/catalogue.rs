//! The builtin catalogue.
//!
//! Ids follow `kind:label:instance`. Statement-level checks carry the tag
//! `statement`; intermediate displays from proofs carry `proof-chain`.
//! Checks of identities first established here also carry `new`.

use super::expr::Expr;
use super::IdentityCheck;
use crate::appell::{changing_z_psi_expr, msplit_m2_rhs, third_order_pairs, MockForm, MockName};
use crate::hecke::{
    cross_spin_residual_expr, quasi_periodic_shift_expr, theta_pair, weyl_kac_numerator_expr, weyl_kac_scaled_expr,
    HeckeParams,
};
use crate::series::{Exponent, GaussianRational, Unit};
use crate::theta::{product_rearrangements, theta_identity_cases, ThetaArg};
use num_rational::Rational64;

const ONE_VAR: i64 = 200;
const TWO_VAR: i64 = 60;
const LEVEL5: i64 = 40;

/// The `(p,j)` grid of the polar-finite and cross-spin families.
const PJ_GRID: [(i64, i64); 5] = [(2, 1), (3, 1), (3, 2), (5, 1), (5, 2)];

fn q(e: i64) -> Expr {
    Expr::q(e)
}

fn qr(r: Rational64) -> Expr {
    Expr::q(Exponent::from_r64(r))
}

fn ri(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

fn int(n: i64) -> Expr {
    Expr::int(n)
}

fn half() -> Expr {
    Expr::frac(1, 2)
}

fn quarter() -> Expr {
    Expr::frac(1, 4)
}

/// `j(q^a; q^b)`.
fn j(a: i64, b: i64) -> Expr {
    Expr::jq(a, b)
}

/// `j(−q^a; q^b)`.
fn jm(a: i64, b: i64) -> Expr {
    Expr::jqneg(a, b)
}

fn jj(a: i64) -> Expr {
    Expr::jn(a)
}

fn cube() -> Expr {
    jj(1).pow(3)
}

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn c2(n: i64) -> i64 {
    n * (n - 1) / 2
}

fn mock(n: MockName) -> Expr {
    Expr::mock(n, MockForm::Eulerian)
}

/// `(q)³_∞ 𝒞_{m,ℓ}`.
fn c3(p: i64, pp: i64, m: i64, ell: i64) -> Expr {
    cube() * Expr::cal_c(p, pp, m, ell)
}

fn ex(r: Rational64) -> Exponent {
    Exponent::from_r64(r)
}

fn mono_z(u: Unit, a: i64, w: i64) -> ThetaArg {
    ThetaArg::mono(u, a, w)
}

/// `i^k q^{e}` as a coefficient-carrying monomial.
fn iq(k: i64, e: Rational64) -> Expr {
    Expr::mono(GaussianRational::i_pow(k), ex(e), 0)
}

struct Cat(Vec<IdentityCheck>);

impl Cat {
    fn push(&mut self, c: IdentityCheck) {
        self.0.push(c);
    }
}

/// Every builtin check, in a fixed order.
pub fn register_builtin_catalogue() -> Vec<IdentityCheck> {
    let mut c = Cat(Vec::new());
    theta_family(&mut c);
    appell_family(&mut c);
    mock_family(&mut c);
    integer_level(&mut c);
    weyl_kac(&mut c);
    relations(&mut c);
    polar_finite(&mut c);
    prior_even_spin(&mut c);
    level_half_and_third(&mut c);
    level_two_thirds(&mut c);
    level_fifths(&mut c);
    c.0
}

fn compact(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

fn theta_family(c: &mut Cat) {
    for case in theta_identity_cases() {
        let anchor = match case.identity {
            "Weierstrass" => "equation:Weierstrauss".to_string(),
            other => format!("equation:{other}"),
        };
        c.push(
            IdentityCheck::new(
                format!("eq:{}:{}", case.identity, compact(&case.instance)),
                anchor,
                case.lhs,
                case.rhs,
                ONE_VAR,
            )
            .tag("statement")
            .tag("theta"),
        );
    }
    for case in product_rearrangements() {
        c.push(
            IdentityCheck::new(
                format!("eq:rearrangement:{}", compact(&case.instance)),
                "section:technicalPrelim",
                case.lhs,
                case.rhs,
                ONE_VAR,
            )
            .tag("statement")
            .tag("theta"),
        );
    }
    let grid = [ThetaArg::q_frac(1, 2), ThetaArg::neg_q(Exponent::new(1, 3)), ThetaArg::mono(Unit::I, Exponent::new(1, 4), 0)];
    for x in &grid {
        let lhs = Expr::j(x.clone(), 1);
        let rhs = Expr::poch(x.clone(), 1, None) * Expr::poch(x.inv().shift_q(1), 1, None) * Expr::poch(ThetaArg::q(1), 1, None);
        c.push(
            IdentityCheck::new(format!("eq:JTPid:x={}", compact(&x.to_string())), "equation:JTPid", lhs, rhs, ONE_VAR)
                .tag("statement"),
        );
        // J₁³/j(x) is the bilateral Appell numerator at z = q
        let lhs = cube() / Expr::j(x.clone(), 1);
        let rhs = Expr::appell_j(x.clone(), ThetaArg::q(1), 1);
        c.push(
            IdentityCheck::new(
                format!("eq:jacobiThetaReciprocal:x={}", compact(&x.to_string())),
                "equation:jacobiThetaReciprocal",
                lhs,
                rhs,
                ONE_VAR,
            )
            .tag("statement"),
        );
    }
    for (n, m) in [(1, 2), (-1, 2), (2, 3), (3, 5)] {
        let lhs = Expr::big_theta(n, m, 1);
        let rhs = Expr::qz(ex(Rational64::new(n * n, 4 * m)), Exponent::new(-n, 2))
            * Expr::j(mono_z(Unit::MinusOne, m + n, -m), 2 * m);
        c.push(
            IdentityCheck::new(format!("eq:SW-thetaDef:n={n},m={m}"), "equation:SW-thetaDef", lhs, rhs, TWO_VAR)
                .normalized_by(ex(Rational64::new(-n * n, 4 * m)), Exponent::new(n, 2))
                .param("n", n)
                .param("m", m)
                .tag("statement")
                .tag("two-variable"),
        );
    }
}

fn appell_family(c: &mut Cat) {
    let pts = [
        (ThetaArg::q_frac(1, 3), ThetaArg::q_frac(1, 2), ThetaArg::q_frac(1, 5)),
        (ThetaArg::neg_q(Exponent::new(1, 4)), ThetaArg::neg_q(Exponent::new(2, 3)), ThetaArg::q_frac(1, 2)),
        (ThetaArg::mono(Unit::I, Exponent::new(1, 2), 0), ThetaArg::q_frac(1, 5), ThetaArg::neg_q(Exponent::new(1, 3))),
    ];
    for (k, (x, z, z0)) in pts.iter().enumerate() {
        let m = |a: ThetaArg, b: ThetaArg| Expr::appell(a, b, 1);
        let mono_x = Expr::mono(GaussianRational::i_pow(unit_k(x.coeff)), x.qpow.clone(), 0);
        let add = |c: &mut Cat, label: &str, anchor: &str, lhs: Expr, rhs: Expr| {
            c.push(IdentityCheck::new(format!("eq:{label}:point={k}"), anchor, lhs, rhs, ONE_VAR).tag("statement").tag("appell"));
        };
        add(c, "mxqz-fnq-z", "equation:mxqz-fnq-z", m(x.clone(), z.clone()), m(x.clone(), z.shift_q(1)));
        add(
            c,
            "mxqz-flip",
            "equation:mxqz-flip",
            m(x.clone(), z.clone()),
            mono_x.clone().inv() * m(x.inv(), z.inv()),
        );
        add(
            c,
            "mxqz-fnq-x",
            "equation:mxqz-fnq-x",
            m(x.shift_q(1), z.clone()),
            int(1) - mono_x.clone() * m(x.clone(), z.clone()),
        );
        c.push(
            IdentityCheck::new(
                format!("cor:mxqz-flip-xz:point={k}"),
                "corollary:mxqz-flip-xz",
                m(x.clone(), z.clone()),
                m(x.clone(), x.inv().mul(&z.inv())),
                ONE_VAR,
            )
            .tag("statement")
            .tag("appell")
            .note("displayed as m(x,q,z); read as m(x,z;q) = m(x,x^-1 z^-1;q)"),
        );
        c.push(
            IdentityCheck::new(
                format!("thm:changing-z:point={k}"),
                "theorem:changing-z-theorem",
                m(x.clone(), z.clone()) - m(x.clone(), z0.clone()),
                changing_z_psi_expr(x, z, z0, 1),
                ONE_VAR,
            )
            .tag("statement")
            .tag("appell"),
        );
        c.push(
            IdentityCheck::new(
                format!("cor:msplit-m2:point={k}"),
                "corollary:msplit-m2",
                m(x.clone(), z.clone()),
                msplit_m2_rhs(x, z, z0, 1),
                ONE_VAR,
            )
            .tag("statement")
            .tag("appell"),
        );
    }
    // the splitting step in the proof of the alternate level-2/3 forms
    let m12 = |x: i64, z: i64| Expr::appell(ThetaArg::neg_q(x), ThetaArg::q(z), 12);
    c.push(
        IdentityCheck::new(
            "prop:alternat3rdAppellFormsLvl23:msplit-step",
            "proposition:alternat3rdAppellFormsLvl23",
            Expr::appell(ThetaArg::neg_q(1), ThetaArg::q(1), 3),
            m12(5, 6) - q(-1) * m12(1, 6) - q(1) * jj(3) * jj(12).pow(3) / (jj(4) * jj(6).pow(2)),
            ONE_VAR,
        )
        .tag("proof-chain")
        .tag("appell"),
    );
}

fn unit_k(u: Unit) -> i64 {
    match u {
        Unit::One => 0,
        Unit::I => 1,
        Unit::MinusOne => 2,
        Unit::MinusI => 3,
    }
}

fn mock_family(c: &mut Cat) {
    for name in MockName::ALL {
        let anchor = match name {
            MockName::A2 => "equation:2nd-A(q)",
            MockName::Mu2 => "equation:2nd-mu(q)",
            MockName::F3 => "equation:3rd-f(q)",
            MockName::Omega3 => "equation:3rd-omega(q)",
            MockName::Psi3 => "equation:3rd-psi(q)",
            MockName::Chi3 => "equation:3rd-chi(q)",
            MockName::F0 | MockName::F1 => "display:g3-forms",
            _ => continue,
        };
        for &form in name.forms().iter().filter(|f| **f != MockForm::Eulerian) {
            c.push(
                IdentityCheck::new(
                    format!("def:mock:{}:{}", name.as_str(), form.as_str()),
                    anchor,
                    mock(name),
                    Expr::mock(name, form),
                    ONE_VAR,
                )
                .tag("statement")
                .tag("mock"),
            );
        }
    }
    for (name, lhs, rhs) in third_order_pairs() {
        let anchor = match name.split(':').next().unwrap_or(name) {
            "FirstTwoPairs" => "proposition:alternateAppellFormsLvl23FirstTwoPairs".to_string(),
            "FirstTwoPairsAlt" => "proposition:alternateAppellFormsLvl23FirstTwoPairsAlt".to_string(),
            other => format!("equation:{other}"),
        };
        c.push(IdentityCheck::new(format!("eq:{name}"), anchor, lhs, rhs, ONE_VAR).tag("statement").tag("mock"));
    }
}

fn integer_level(c: &mut Cat) {
    let eta = |k: i64| Expr::eta(k);
    let kp = [
        ("C1_00", (1, 3, 0, 0), eta(1).inv()),
        ("C2_11", (1, 4, 1, 1), eta(1).pow(-2) * eta(2)),
        ("C3_11", (1, 5, 1, 1), eta(1).pow(-2) * Expr::q_frac(3, 40) * Expr::jab(6, 15)),
        ("C4_20", (1, 6, 2, 0), eta(1).pow(-2) * eta(6).inv() * eta(12).pow(2)),
    ];
    for (label, (p, pp, m, l), rhs) in kp {
        c.push(
            IdentityCheck::new(
                format!("prior:KacPeterson:{label}"),
                "section:intro:KacPeterson",
                Expr::string_c(p, pp, m, l),
                rhs,
                ONE_VAR,
            )
            .tag("statement")
            .tag("integer-level"),
        );
    }
    for n in 1..=3i64 {
        let pp = n + 2;
        for l in 0..=n {
            for m in (-2 * n..=2 * n).filter(|m| (m - l).rem_euclid(2) == 0) {
                // f_{1,1+N,1}(q^{1+(m+ℓ)/2}, q^{1−(m−ℓ)/2}; q) / (q)³
                let h = HeckeParams::new(1, 1 + n, 1, ThetaArg::q(1 + (m + l) / 2), ThetaArg::q(1 - (m - l) / 2));
                c.push(
                    IdentityCheck::new(
                        format!("prior:compactIntegerLevel:N={n},m={m},l={l}"),
                        "equation:modStringFnHeckeForm",
                        Expr::cal_c(1, pp, m, l),
                        Expr::hecke(h) / cube(),
                        ONE_VAR,
                    )
                    .tag("statement")
                    .tag("integer-level"),
                );
                if m >= 0 {
                    c.push(
                        IdentityCheck::new(
                            format!("prior:inglevelperiod:N={n},m={m},l={l}"),
                            "eq:inglevelperiod",
                            Expr::string_c(1, pp, m, l),
                            Expr::string_c(1, pp, m + 2 * n, l),
                            ONE_VAR,
                        )
                        .tag("statement")
                        .tag("integer-level"),
                    );
                    c.push(
                        IdentityCheck::new(
                            format!("prior:intLevelSymmetry:N={n},m={m},l={l}"),
                            "section:intro:integerLevelSymmetries",
                            Expr::string_c(1, pp, m, l),
                            Expr::string_c(1, pp, -m, l) * half() + Expr::string_c(1, pp, n - m, n - l) * half(),
                            ONE_VAR,
                        )
                        .tag("statement")
                        .tag("integer-level"),
                    );
                }
            }
            let rhs = Expr::sum(
                (0..2 * n)
                    .filter(|m| (m - l).rem_euclid(2) == 0)
                    .map(|m| Expr::string_c(1, pp, m, l) * Expr::big_theta(m, n, 1)),
            );
            let c0 = Rational64::new(-1, 8) + Rational64::new((l + 1) * (l + 1), 4 * pp);
            c.push(
                IdentityCheck::new(
                    format!("prior:intlevelthetadecomp:N={n},l={l}"),
                    "eq:intlevelthetadecomp",
                    Expr::character(1, pp, l),
                    rhs,
                    TWO_VAR,
                )
                .normalized_by(ex(-c0), Exponent::new(l, 2))
                .tag("statement")
                .tag("two-variable")
                .tag("integer-level"),
            );
        }
    }
}

fn weyl_kac(c: &mut Cat) {
    for (p, pp, l) in [(1, 3, 0), (1, 4, 1), (2, 5, 0), (2, 5, 1), (3, 8, 1), (3, 7, 2)] {
        let c0 = Rational64::new(-1, 8) + Rational64::new(p * (l + 1) * (l + 1), 4 * pp);
        let chi = Expr::character(p, pp, l);
        let den = Expr::big_theta(1, 2, 1) - Expr::big_theta(-1, 2, 1);
        let num = Expr::big_theta(l + 1, pp, p) - Expr::big_theta(-(l + 1), pp, p);
        c.push(
            IdentityCheck::new(format!("eq:WK-formula:p={p},pp={pp},l={l}"), "equation:WK-formula", chi.clone() * den, num, TWO_VAR)
                .normalized_by(ex(-c0 - Rational64::new(1, 8)), Exponent::new(l + 1, 2))
                .tag("statement")
                .tag("two-variable"),
        );
        let cleared = chi * Expr::qz(Exponent::new(1, 8), Exponent::new(-1, 2)) * Expr::j(ThetaArg::z(), 1);
        c.push(
            IdentityCheck::new(
                format!("prop:WeylKac:p={p},pp={pp},l={l}"),
                "proposition:WeylKac",
                cleared,
                weyl_kac_numerator_expr(p, pp, l),
                TWO_VAR,
            )
            .normalized_by(ex(-c0 - Rational64::new(1, 8)), Exponent::new(l + 1, 2))
            .tag("statement")
            .tag("two-variable"),
        );
    }
    for (label, p, pp, anchor) in [("WeylKac25", 2, 5, "equation:WeylKac25"), ("weylKac23genz", 3, 8, "equation:weylKac23genz")] {
        for r in 0..=(pp - 3) / 2 {
            let l = 2 * r + 1;
            let c0 = Rational64::new(-1, 8) + Rational64::new(p * (l + 1) * (l + 1), 4 * pp);
            c.push(
                IdentityCheck::new(
                    format!("eq:{label}:r={r}"),
                    anchor,
                    Expr::character(p, pp, l) * Expr::j(ThetaArg::z(), 1),
                    Expr::qz(Exponent::new(-1, 8), Exponent::new(1, 2)) * weyl_kac_numerator_expr(p, pp, l),
                    TWO_VAR,
                )
                .normalized_by(ex(-c0), Exponent::new(1, 2))
                .note("both sides multiplied by j(z;q), which is not a unit in z")
                .param("r", r)
                .tag("proof-chain")
                .tag("two-variable"),
            );
        }
    }
}

fn relations(c: &mut Cat) {
    for (p, j) in PJ_GRID {
        let order = if p == 5 { LEVEL5 } else { ONE_VAR };
        for i in 1..=2 {
            for r in 1..=p {
                let Ok((lhs, rhs)) = cross_spin_residual_expr(p, j, i, r) else { continue };
                c.push(
                    IdentityCheck::new(
                        format!("thm:crossSpin-j-Odd:p={p},j={j},i={i},r={r}"),
                        "theorem:crossSpin-j-Odd",
                        lhs,
                        rhs,
                        order,
                    )
                    .param("p", p)
                    .param("j", j)
                    .param("i", i)
                    .param("r", r)
                    .tag("statement"),
                );
            }
        }
    }
    for (p, j) in [(2, 1), (3, 2), (5, 2)] {
        let pp = 2 * p + j;
        for r in 0..=(pp - 3) / 2 {
            for t in [-3, -2, -1, 1, 2, 3] {
                let s = 0;
                let Ok((lhs, rhs)) = quasi_periodic_shift_expr(p, j, s, r, t) else { continue };
                c.push(
                    IdentityCheck::new(
                        format!("thm:generalQuasiPeriodicityOddSpin:p={p},j={j},s={s},r={r},t={t}"),
                        "theorem:generalQuasiPeriodicityOddSpin",
                        lhs,
                        rhs,
                        if p == 5 { LEVEL5 } else { ONE_VAR },
                    )
                    .param("p", p)
                    .param("j", j)
                    .param("s", s)
                    .param("r", r)
                    .param("t", t)
                    .tag("statement")
                    .tag("quasi-periodicity"),
                );
            }
        }
    }
}

fn two_var_order(p: i64) -> i64 {
    if p == 5 {
        LEVEL5
    } else {
        TWO_VAR
    }
}

/// `Σ_m (−1)^m q^{C(m+1,2)+m(r−p)} · pair_m · kernel(m)`.
fn polar_m_sum(p: i64, pp: i64, r: i64, w: i64, kernel: impl Fn(i64) -> Expr) -> Expr {
    Expr::sum((1..p).map(|m| int(sign(m)) * q(c2(m + 1) + m * (r - p)) * theta_pair(p, pp, m, w) * kernel(m)))
}

fn polar_finite_odd(p: i64, j: i64, r: i64) -> (Expr, Expr, Rational64) {
    let pp = 2 * p + j;
    let base = 2 * p * j;
    let lead = Rational64::new(-1, 8) + Rational64::new(p * (2 * r + 2) * (2 * r + 2), 4 * pp);
    let mut finite = Vec::new();
    let mut polar = Vec::new();
    for s in 0..j {
        let a = p * (2 * s + 1);
        let zs = Exponent::new(-(2 * s + 1), 2);
        finite.push(
            Expr::qz(ex(Rational64::new(p * (2 * s + 1) * (2 * s + 1), 4 * j)), zs.clone())
                * Expr::string_c(p, pp, 2 * s + 1, 2 * r + 1)
                * Expr::j(mono_z(Unit::MinusOne, p * (j - 2 * s - 1), j), base),
        );
        let z1 = mono_z(Unit::MinusOne, p * (j - 2 * s - 1), j);
        let z1f = mono_z(Unit::MinusOne, p * (j + 2 * s + 1), -j);
        let kernel = |m: i64| {
            q(m * (s + 1) - a) * Expr::appell_j(ThetaArg::neg_q(j * m - a), z1f.clone(), base)
                + q(-m * s) * Expr::appell_j(ThetaArg::neg_q(j * m + a), z1.clone(), base)
        };
        polar.push(
            Expr::qz(ex(lead + ri(c2(p) - p * (r - s))), zs) * polar_m_sum(p, pp, r, 2 * r + 2, kernel),
        );
    }
    let rhs = Expr::sum(finite) + int(sign(p)) * Expr::sum(polar) / cube();
    (Expr::character(p, pp, 2 * r + 1), rhs, lead)
}

fn polar_finite(c: &mut Cat) {
    for (p, j) in PJ_GRID {
        let pp = 2 * p + j;
        for r in 0..=(pp - 3) / 2 {
            let (lhs, rhs, lead) = polar_finite_odd(p, j, r);
            c.push(
                IdentityCheck::new(
                    format!("thm:generalPolarFiniteOddSpin:p={p},j={j},r={r}"),
                    "theorem:generalPolarFiniteOddSpin",
                    lhs,
                    rhs,
                    two_var_order(p),
                )
                .normalized_by(ex(-lead), Exponent::new(1, 2))
                .param("p", p)
                .param("j", j)
                .param("r", r)
                .tag("statement")
                .tag("new")
                .tag("two-variable"),
            );
        }
    }
    for p in [2, 3, 5] {
        let pp = 2 * p + 1;
        let base = 2 * p;
        for r in 0..p {
            let lead = Rational64::new(-1, 8) + Rational64::new(p * (2 * r + 2) * (2 * r + 2), 4 * pp);
            let finite = Expr::qz(Exponent::new(p, 4), Exponent::new(-1, 2))
                * Expr::string_c(p, pp, 1, 2 * r + 1)
                * Expr::j(mono_z(Unit::MinusOne, 0, 1), base);
            let kernel = |m: i64| {
                q(m - p) * Expr::appell_j(ThetaArg::neg_q(m - p), mono_z(Unit::MinusOne, base, -1), base)
                    + Expr::appell_j(ThetaArg::neg_q(m + p), mono_z(Unit::MinusOne, 0, 1), base)
            };
            let polar = Expr::qz(ex(lead + ri(c2(p) - p * r)), Exponent::new(-1, 2)) * polar_m_sum(p, pp, r, 2 * r + 2, kernel);
            c.push(
                IdentityCheck::new(
                    format!("cor:generalPolarFiniteOddSpin1p:p={p},r={r}"),
                    "corollary:generalPolarFiniteOddSpin1p",
                    Expr::character(p, pp, 2 * r + 1),
                    finite + int(sign(p)) * polar / cube(),
                    two_var_order(p),
                )
                .normalized_by(ex(-lead), Exponent::new(1, 2))
                .param("p", p)
                .param("r", r)
                .tag("statement")
                .tag("new")
                .tag("two-variable"),
            );
        }
    }
    for (p, j, r) in [(2, 1, 0), (2, 1, 1), (3, 2, 0), (3, 1, 2), (5, 2, 1)] {
        let pp = 2 * p + j;
        let base = 2 * p * j;
        let lead = Rational64::new(-1, 8) + Rational64::new(p * (2 * r + 2) * (2 * r + 2), 4 * pp);
        let mut finite = Vec::new();
        let mut polar = Vec::new();
        for s in 0..j {
            let zs = Exponent::new(-(2 * s + 1), 2);
            finite.push(
                Expr::qz(ex(Rational64::new(p * (2 * s + 1) * (2 * s + 1), 4 * j)), zs.clone())
                    * Expr::string_c(p, pp, 2 * s + 1, 2 * r + 1)
                    * Expr::j(mono_z(Unit::MinusOne, p * (2 * s + 1 + j), -j), base),
            );
            polar.push(
                Expr::qz(ex(lead + ri(c2(p + 1) - p * (r + 1 - s))), zs)
                    * polar_m_sum(p, pp, r, 2 * r + 2, |m| Expr::polar_kernel(p, j, s, m)),
            );
        }
        c.push(
            IdentityCheck::new(
                format!("prop:polarFinitePreAppell:p={p},j={j},r={r}"),
                "proposition:polarFinitePreAppell",
                cube() * Expr::character(p, pp, 2 * r + 1),
                cube() * Expr::sum(finite) + int(sign(p)) * Expr::sum(polar),
                two_var_order(p),
            )
            .normalized_by(ex(-lead), Exponent::new(1, 2))
            .param("p", p)
            .param("j", j)
            .param("r", r)
            .tag("proof-chain")
            .tag("new")
            .tag("two-variable"),
        );
    }
    for (p, j) in PJ_GRID {
        let base = 2 * p * j;
        for s in 0..j {
            for m in 1..p {
                let z1 = mono_z(Unit::MinusOne, p * (j - 2 * s - 1), j);
                let a = p * (2 * s + 1);
                let rhs = -(q(-m * (j - s - 1)) * Expr::appell_j(ThetaArg::neg_q(-j * m + a), z1.clone(), base))
                    + q(-m * s) * Expr::appell_j(ThetaArg::neg_q(j * m + a), z1, base);
                c.push(
                    IdentityCheck::new(
                        format!("prop:initSumOver_i_tPreAppellFinal:p={p},j={j},s={s},m={m}"),
                        "proposition:initSumOver_i_tPreAppellFinal",
                        Expr::polar_kernel(p, j, s, m),
                        rhs,
                        two_var_order(p),
                    )
                    .param("p", p)
                    .param("j", j)
                    .param("s", s)
                    .param("m", m)
                    .tag("proof-chain")
                    .tag("new")
                    .tag("two-variable"),
                );
            }
        }
    }
}

fn prior_even_spin(c: &mut Cat) {
    for (p, j) in PJ_GRID {
        let pp = 2 * p + j;
        let base = 2 * p * j;
        for r in 0..=(pp - 2) / 2 {
            let lead = Rational64::new(-1, 8) + Rational64::new(p * (2 * r + 1) * (2 * r + 1), 4 * pp);
            let mut finite = Vec::new();
            let mut polar = Vec::new();
            for s in 0..j {
                finite.push(
                    Expr::qz(ex(Rational64::new(p * s * s, j)), -s)
                        * Expr::string_c(p, pp, 2 * s, 2 * r)
                        * Expr::j(mono_z(Unit::MinusOne, p * (j - 2 * s), j), base),
                );
                let z1 = mono_z(Unit::MinusOne, p * (j - 2 * s), j);
                let z1f = mono_z(Unit::MinusOne, p * (j + 2 * s), -j);
                let kernel = |m: i64| {
                    q(m * s - 2 * p * s) * Expr::appell_j(ThetaArg::neg_q(j * m - 2 * p * s), z1f.clone(), base)
                        + q(-m * s) * Expr::appell_j(ThetaArg::neg_q(j * m + 2 * p * s), z1.clone(), base)
                };
                polar.push(Expr::qz(ex(lead + ri(c2(p) - p * (r - s))), -s) * polar_m_sum(p, pp, r, 2 * r + 1, kernel));
            }
            c.push(
                IdentityCheck::new(
                    format!("prior:generalPolarFiniteEvenSpin:p={p},j={j},r={r}"),
                    "theorem:generalPolarFiniteEvenSpin",
                    Expr::character(p, pp, 2 * r),
                    Expr::sum(finite) + int(sign(p)) * Expr::sum(polar) / cube(),
                    two_var_order(p),
                )
                .normalized_by(ex(-lead), Exponent::zero())
                .param("p", p)
                .param("j", j)
                .param("r", r)
                .tag("statement")
                .tag("two-variable"),
            );
        }
    }
}

fn level_half_and_third(c: &mut Cat) {
    let a2 = mock(MockName::A2).at_neg_q_pow(1);
    let mu2 = mock(MockName::Mu2);
    for r in 0..=1 {
        c.push(
            IdentityCheck::new(
                format!("prior:pP25m0:r={r}:A-form"),
                "equation:mockThetaConj2502r-2ndA",
                c3(2, 5, 0, 2 * r),
                int(sign(r)) * jj(1).pow(4) * jj(4) / jj(2).pow(4) * j(4 * r + 12, 20)
                    - int(2) * q(-r) * j(1 + 2 * r, 5) * a2.clone(),
                ONE_VAR,
            )
            .param("r", r)
            .tag("statement"),
        );
        c.push(
            IdentityCheck::new(
                format!("prior:pP25m0:r={r}:mu-form"),
                "equation:mockThetaConj2502r-2ndmu",
                c3(2, 5, 0, 2 * r),
                int(sign(r)) * q(-r) * half() * cube() / (jj(2) * jj(4))
                    * Expr::j_signed(ThetaArg::neg_q(2 * r + 1), Unit::MinusOne, 5)
                    + q(-r) * half() * j(1 + 2 * r, 5) * mu2.clone(),
                ONE_VAR,
            )
            .param("r", r)
            .tag("statement"),
        );
        c.push(
            IdentityCheck::new(
                format!("cor:pP25m1:r={r}:A-form"),
                "equation:mockThetaConj2512rPlus1-2ndA",
                c3(2, 5, 1, 2 * r + 1),
                int(sign(r)) * q(1 - 2 * r) * jj(1).pow(4) * jj(4) / jj(2).pow(4) * j(4 * r + 4, 20)
                    + q(-r) * j(2 + 2 * r, 5) * (int(1) + int(2) * a2.clone()),
                ONE_VAR,
            )
            .param("r", r)
            .tag("statement")
            .tag("new"),
        );
        c.push(
            IdentityCheck::new(
                format!("cor:pP25m1:r={r}:mu-form"),
                "equation:mockThetaConj2512rPlus1-2ndmu",
                c3(2, 5, 1, 2 * r + 1),
                int(sign(r)) * q(-r) * half() * cube() / (jj(2) * jj(4))
                    * Expr::j_signed(ThetaArg::q(2 * r + 2), Unit::MinusOne, 5)
                    + q(-r) * j(2 + 2 * r, 5) * (int(1) - half() * mu2.clone()),
                ONE_VAR,
            )
            .param("r", r)
            .tag("statement")
            .tag("new"),
        );
        c.push(
            IdentityCheck::new(
                format!("eq:master25crossSpin:r={r}"),
                "equation:master25crossSpin",
                c3(2, 5, 1, 2 * r + 1),
                -(q(1 - 2 * r) * c3(2, 5, 0, 2 * (1 - r))) + q(-r) * j(2 * r + 2, 5),
                ONE_VAR,
            )
            .param("r", r)
            .tag("proof-chain"),
        );
        // newFourier25, with j(−z;q⁴)·m(x,−q⁴z⁻¹;q⁴) = AJ(x,−q⁴z⁻¹) by j-flip
        let lead = Rational64::new(-1, 8) + Rational64::new(2 * (r + 1) * (r + 1), 5);
        let rhs = Expr::qz(ex(lead), Exponent::new(-1, 2)) * Expr::cal_c(2, 5, 1, 2 * r + 1) * Expr::j(mono_z(Unit::MinusOne, 0, 1), 4)
            - Expr::qz(ex(lead - ri(r)), Exponent::new(-1, 2)) / cube()
                * j(2 + 2 * r, 5)
                * (q(-1) * Expr::appell_j(ThetaArg::neg_q(-1), mono_z(Unit::MinusOne, 4, -1), 4)
                    + Expr::appell_j(ThetaArg::neg_q(3), mono_z(Unit::MinusOne, 0, 1), 4));
        c.push(
            IdentityCheck::new(format!("eq:newFourier25:r={r}"), "equation:newFourier25", Expr::character(2, 5, 2 * r + 1), rhs, TWO_VAR)
                .normalized_by(ex(-lead), Exponent::new(1, 2))
                .param("r", r)
                .tag("proof-chain")
                .tag("two-variable"),
        );
        for (zk, zval) in [(1, ThetaArg::neg_q(1)), (2, ThetaArg::neg_q(2))] {
            let z = ThetaArg::z();
            let zr = |e: i64| Expr::qz(0, e);
            let num = zr(-r)
                * (Expr::j(mono_z(Unit::MinusOne, 4 * r + 14, -5), 20)
                    - zr(2 * r + 2) * Expr::j(mono_z(Unit::MinusOne, 6 - 4 * r, -5), 20));
            let den = Expr::j(z.clone(), 1) * Expr::j(z.negated(), 4);
            let mocks = q(-1) * Expr::appell(ThetaArg::neg_q(-1), mono_z(Unit::MinusOne, 4, -1), 4)
                + Expr::appell(ThetaArg::neg_q(3), z.negated(), 4);
            let general = num / den + q(-r) * j(2 + 2 * r, 5) * mocks / cube();
            let check = match general.specialize_z(&zval) {
                Ok(rhs) => IdentityCheck::new(
                    format!("eq:generalMockThetaConjLevel12:r={r}:z=-q^{zk}"),
                    "equation:generalMockThetaConjLevel12",
                    Expr::cal_c(2, 5, 1, 2 * r + 1),
                    rhs,
                    ONE_VAR,
                ),
                Err(e) => panic!("specialization of a fixed display failed: {e}"),
            };
            c.push(check.param("r", r).tag("statement"));
        }
    }

    let f3 = mock(MockName::F3);
    let w3 = mock(MockName::Omega3).at_neg_q_pow(1);
    for r in 0..=2 {
        c.push(
            IdentityCheck::new(
                format!("prior:pP37m0ell2r:r={r}"),
                "theorem:newMockThetaIdentitiespP37m0ell2r",
                c3(3, 7, 0, 2 * r),
                int(sign(r)) * q(-r) * cube() / jj(2) * jm(1 + 2 * r, 14) * j(16 + 4 * r, 28) / (jm(0, 1) * jj(28))
                    - q(2 - 2 * r) * j(6 - 2 * r, 14) * j(26 - 4 * r, 28) / jj(28) * w3.clone()
                    + half() * q(-r) * j(1 + 2 * r, 14) * j(16 + 4 * r, 28) / jj(28) * f3.at_q_pow(2),
                ONE_VAR,
            )
            .param("r", r)
            .tag("statement"),
        );
        let tail = -(q(1 - 2 * r) * j(9 + 2 * r, 14) * j(4 + 4 * r, 28) / jj(28) * (int(1) - half() * f3.at_q_pow(2)))
            + q(-r) * j(2 + 2 * r, 14) * j(18 + 4 * r, 28) / jj(28) * (int(1) - q(1) * w3.clone());
        c.push(
            IdentityCheck::new(
                format!("cor:pP37m1:r={r}"),
                "corollary:newMockThetaIdentitiespP37m1ell2rPlus1",
                c3(3, 7, 1, 2 * r + 1),
                int(sign(r)) * q(1 - 2 * r) * cube() / jj(2) * jm(5 - 2 * r, 14) * j(24 - 4 * r, 28) / (jm(0, 1) * jj(28))
                    + tail,
                ONE_VAR,
            )
            .param("r", r)
            .tag("statement")
            .tag("new"),
        );
        // z^{1/2}χ at z = −q²
        let s_r = weyl_kac_scaled_expr(3, 7, 2 * r + 1, Exponent::new(1, 2))
            .specialize_z(&ThetaArg::neg_q(2))
            .expect("z = −q² is not a pole of the character");
        let lead = Rational64::new(1, 8) - Rational64::new(3 * (r + 1) * (r + 1), 7);
        c.push(
            IdentityCheck::new(
                format!("eq:weylKacFinal37:r={r}"),
                "equation:weylKacFinal37",
                s_r.clone(),
                int(sign(r)) * q(-2 * r) * qr(ri(1) - lead) * jm(5 - 2 * r, 14) * j(24 - 4 * r, 28) / (jm(0, 1) * jj(28)),
                ONE_VAR,
            )
            .param("r", r)
            .tag("proof-chain"),
        );
        let tail = -(q(1 - 2 * r) * j(5 - 2 * r, 14) * j(24 - 4 * r, 28) / jj(28) * (int(1) - half() * f3.at_q_pow(2)))
            + q(-r) * j(2 + 2 * r, 14) * j(18 + 4 * r, 28) / jj(28) * (int(1) - q(1) * w3.clone());
        c.push(
            IdentityCheck::new(
                format!("eq:fourierFinal37:r={r}"),
                "equation:fourierFinal37",
                c3(3, 7, 1, 2 * r + 1),
                cube() / jj(2) * qr(lead) * s_r + tail,
                ONE_VAR,
            )
            .param("r", r)
            .tag("proof-chain")
            .note("semicolon-separated multi-modulus thetas read as products"),
        );
    }
}

fn theta_38(r: i64) -> Expr {
    let (j2, j3, j4, j6, j12) = (jj(2), jj(3), jj(4), jj(6), jj(12));
    match r {
        0 => j3 * j4.pow(2) / (j2 * j12) * jm(6, 16),
        1 => int(3) * j3 * j12.pow(3) / j6.pow(2),
        _ => q(-2) * j3 * j4.pow(2) / (j2 * j12) * jm(2, 16),
    }
}

fn psi_38(r: i64) -> Expr {
    let (j1, j2, j4) = (jj(1), jj(2), jj(4));
    match r {
        0 => quarter() * j1.pow(2) * j2 / j4,
        1 => -(half() * q(-1) * j1.pow(3) * j4 / j2.pow(2)),
        _ => quarter() * q(-3) * j1.pow(2) * j2 / j4,
    }
}

fn a_38(r: i64) -> Expr {
    j(6 - 2 * r, 16) * j(28 - 4 * r, 32) / jj(32)
}

fn b_38(r: i64) -> Expr {
    j(2 + 2 * r, 16) * j(20 + 4 * r, 32) / jj(32)
}

/// `(−1)^{⌊(r+1)/2⌋}`.
fn floor_sign(r: i64) -> i64 {
    sign((r + 1).div_euclid(2))
}

fn level_two_thirds(c: &mut Cat) {
    let f3 = mock(MockName::F3);
    let w3n2 = mock(MockName::Omega3).at_neg_q_pow(2);
    let psi3 = mock(MockName::Psi3).at_neg_q_pow(1);
    let chi3 = mock(MockName::Chi3);
    for r in 0..=3 {
        let s = int(floor_sign(r));
        c.push(
            IdentityCheck::new(
                format!("prior:pP38m0ell2r:r={r}"),
                "theorem:newMockThetaIdentitiespP38m0ell2r",
                c3(3, 8, 0, 2 * r),
                s.clone() * half() * q(-r) * jj(1).pow(2) * jj(2) / (jj(4).pow(2) * jj(8)) * jm(7 - 2 * r, 16) * j(1 + 2 * r, 8)
                    - q(3 - 2 * r) * j(7 - 2 * r, 16) * j(30 - 4 * r, 32) / jj(32) * w3n2.clone()
                    + q(-r) * j(1 + 2 * r, 16) * j(18 + 4 * r, 32) / jj(32) * half() * f3.at_q_pow(4),
                ONE_VAR,
            )
            .param("r", r)
            .tag("statement"),
        );
        c.push(
            IdentityCheck::new(
                format!("prior:pP38m2ell2r:r={r}"),
                "theorem:newMockThetaIdentitiespP38m2ell2r",
                c3(3, 8, 2, 2 * r),
                s * half() * q(3 - 2 * r) * jj(1).pow(2) * jj(2) / (jj(4).pow(2) * jj(32)) * j(2 + 4 * r, 32) * j(7 - 2 * r, 16)
                    - q(3 - 2 * r) * j(7 - 2 * r, 16) * j(30 - 4 * r, 32) / jj(32) * (int(1) - half() * f3.at_q_pow(4))
                    + q(1 - r) * j(1 + 2 * r, 16) * j(18 + 4 * r, 32) / jj(32) * (int(1) - q(2) * w3n2.clone()),
                ONE_VAR,
            )
            .param("r", r)
            .tag("statement"),
        );
    }
    for r in 0..=2 {
        let push = |c: &mut Cat, id: String, anchor: &str, lhs: Expr, rhs: Expr, tags: &[&str]| {
            let mut chk = IdentityCheck::new(id, anchor, lhs, rhs, ONE_VAR).param("r", r);
            for t in tags {
                chk = chk.tag(t);
            }
            c.push(chk);
        };
        push(
            c,
            format!("thm:pP38m1ell2rPlus1:r={r}"),
            "theorem:newMockThetaIdentitiespP38m1ell2rPlus1",
            c3(3, 8, 1, 2 * r + 1),
            theta_38(r) - q(1 - 2 * r) * a_38(r) * -psi3.clone() + q(-r) * b_38(r) * (int(1) - chi3.clone()),
            &["statement", "new"],
        );
        push(
            c,
            format!("cor:pP38m3ell2rPlus1:r={r}"),
            "corollary:newMockThetaIdentitiespP38m3ell2rPlus1",
            c3(3, 8, 3, 2 * r + 1),
            q(6 - 3 * r) * theta_38(2 - r)
                - q(4 - 2 * r) * a_38(r) * q(-1) * (int(1) - q(1) * (int(1) - chi3.clone()))
                + q(3 - r) * b_38(r) * (q(-2) + psi3.clone()),
            &["statement", "new"],
        );
        push(
            c,
            format!("thm:pP38m1ell2rPlus1Alt:r={r}"),
            "theorem:newMockThetaIdentitiespP38m1ell2rPlus1Alt",
            c3(3, 8, 1, 2 * r + 1),
            psi_38(r) - q(1 - 2 * r) * a_38(r) * quarter() * f3.clone() + q(-r) * b_38(r) * (int(1) - quarter() * f3.clone()),
            &["statement", "new"],
        );
        push(
            c,
            format!("cor:pP38m3ell2rPlus1Alt:r={r}"),
            "corollary:newMockThetaIdentitiespP38m3ell2rPlus1Alt",
            c3(3, 8, 3, 2 * r + 1),
            q(6 - 3 * r) * psi_38(2 - r) + q(1 - r) * b_38(r) * (int(1) - q(2) * quarter() * f3.clone())
                - q(3 - 2 * r) * a_38(r) * (int(1) - q(1) * (int(1) - quarter() * f3.clone())),
            &["statement", "new"],
        );
        push(
            c,
            format!("eq:crossSpin23master:r={r}"),
            "equation:crossSpin23master",
            c3(3, 8, 3, 2 * r + 1) - q(6 - 3 * r) * c3(3, 8, 1, 2 * (2 - r) + 1),
            -(q(3 - 2 * r) * j(10 + 2 * r, 16) * j(4 + 4 * r, 32) / jj(32)) + q(1 - r) * b_38(r),
            &["proof-chain"],
        );

        // master theta identities
        let (j1, j2, j3, j4, j8, j12) = (jj(1), jj(2), jj(3), jj(4), jj(8), jj(12));
        let lead = -(iq(1 - r, Rational64::new(1 - 3 * r, 2)))
            * j1.clone().pow(3)
            * Expr::j(ThetaArg::mono(if r % 2 == 0 { Unit::MinusOne } else { Unit::One }, 3 * (r + 1), 0), 12)
            / (Expr::jab(2, 4) * Expr::jab(6, 12));
        let g_minus = -(q(-r) * j(2 + 2 * r, 8) / j8.clone() * j(1 - r, 4));
        let g_plus = q(-r) * j(2 + 2 * r, 8) / j8.clone() * jm(1 - r, 4);
        let f = lead.clone() + q(-r) * b_38(r) * j3.clone() * j4.clone().pow(3) / (j2.clone().pow(2) * j12.clone())
            - iq(1, Rational64::new(-5, 2)) * j1.clone().pow(2) * j4.clone() * j12.clone() / (j2.clone().pow(2) * j3.clone())
                * (q(3) * g_minus.clone());
        push(
            c,
            format!("prop:masterThetaIdentitypP38m1ell2rPlus1:r={r}"),
            "proposition:masterThetaIdentitypP38m1ell2rPlus1",
            f,
            theta_38(r),
            &["statement", "new"],
        );
        let f_alt = lead
            + quarter() * j1.clone().pow(3) / j2.clone().pow(2) * g_plus
            + iq(-1, Rational64::new(-3, 2)) * q(2) * j1.pow(2) * j4 * j12 / (j2.pow(2) * j3) * g_minus;
        push(
            c,
            format!("prop:masterThetaIdentitypP38m1ell2rPlus1Alt:r={r}"),
            "proposition:masterThetaIdentitypP38m1ell2rPlus1Alt",
            f_alt,
            psi_38(r),
            &["statement", "new"],
        );
        push(
            c,
            format!("lemma:unusualThetaIdentity2:r={r}:minus"),
            "lemma:unusualThetaIdentity2",
            q(1 - 2 * r) * a_38(r) - q(-r) * b_38(r),
            -(q(-r) * j(2 + 2 * r, 8) / jj(8) * j(1 - r, 4)),
            &["statement", "new"],
        );
        push(
            c,
            format!("lemma:unusualThetaIdentity2:r={r}:plus"),
            "lemma:unusualThetaIdentity2",
            q(1 - 2 * r) * a_38(r) + q(-r) * b_38(r),
            q(-r) * j(2 + 2 * r, 8) / jj(8) * jm(1 - r, 4),
            &["statement", "new"],
        );

        // evaluations of the character at z = i q^{±3/2}
        let l = 2 * r + 1;
        let lead = Rational64::new(-1, 8) + Rational64::new(3 * (r + 1) * (r + 1), 8);
        let theta_r = Expr::j(ThetaArg::mono(if r % 2 == 0 { Unit::MinusOne } else { Unit::One }, 3 * (r + 1), 0), 12)
            / Expr::jab(2, 4);
        for (tag, zval, rhs) in [
            (
                "iq^(3/2)",
                ThetaArg::mono(Unit::I, Exponent::new(3, 2), 0),
                -(iq(1, lead + Rational64::new(1, 2))) * theta_r.clone(),
            ),
            (
                "iq^(-3/2)",
                ThetaArg::mono(Unit::I, Exponent::new(-3, 2), 0),
                int(-sign(r)) * qr(lead - ri(3 * r + 1)) * theta_r.clone(),
            ),
        ] {
            let lhs = weyl_kac_scaled_expr(3, 8, l, Exponent::new(2 * r + 1, 2))
                .specialize_z(&zval)
                .expect("i q^{±3/2} is not a pole of the character");
            push(
                c,
                format!("prop:weylKac23ell2rzVal:r={r}:z={tag}"),
                "proposition:weylKac23ell2rzVal",
                lhs,
                rhs,
                &["statement", "new"],
            );
        }

        // polar-finite specialization at (p,j) = (3,2)
        let m12 = |x: i64, z: ThetaArg| Expr::appell(ThetaArg::neg_q(x), z, 12);
        let zp = mono_z(Unit::MinusOne, 3, 2);
        let zm = mono_z(Unit::MinusOne, 9, 2);
        let first = Expr::j(zp.clone(), 12)
            * (-(q(1 - 2 * r) * a_38(r) * (-(q(-1) * m12(1, zp.clone())) + m12(5, zp.clone())))
                + q(-r) * b_38(r) * (-(q(-2) * m12(-1, zp.clone())) + m12(7, zp.clone())));
        let second = Expr::j(mono_z(Unit::MinusOne, -3, 2), 12)
            * (-(q(4 - 2 * r) * a_38(r) * (-m12(7, zm.clone()) + q(-1) * m12(11, zm.clone())))
                + q(3 - r) * b_38(r) * (-m12(5, zm.clone()) + q(-2) * m12(13, zm.clone())));
        let zh = |n: i64| Expr::qz(0, Exponent::new(n, 2));
        let rhs = zh(-1) * Expr::cal_c(3, 8, 1, l) * Expr::j(zp.clone(), 12)
            + zh(-3) * Expr::cal_c(3, 8, 3, l) * Expr::j(mono_z(Unit::MinusOne, -3, 2), 12)
            - zh(-1) * first / cube()
            - zh(-3) * second / cube();
        let chk = IdentityCheck::new(
            format!("prop:polarFinite23OddSpin:r={r}"),
            "proposition:polarFinite23OddSpin",
            qr(-lead) * Expr::character(3, 8, l),
            rhs,
            TWO_VAR,
        )
        .normalized_by(Exponent::zero(), Exponent::new(1, 2))
        .param("r", r)
        .tag("statement")
        .tag("new")
        .tag("two-variable");
        c.push(chk);
    }

    let (j1, j2, j3, j4, j6, j12) = (jj(1), jj(2), jj(3), jj(4), jj(6), jj(12));
    let base = j1.clone().pow(2) * j4.clone() * j6.clone().pow(2) / (j2.clone().pow(2) * j3.clone());
    let aj = |x: i64, zval: ThetaArg| -> Expr {
        Expr::appell_j(ThetaArg::neg_q(x), mono_z(Unit::MinusOne, -3, 2), 12)
            .specialize_z(&zval)
            .expect("limit point is a regular value")
    };
    let aj3 = |x: i64, zval: ThetaArg| -> Expr {
        Expr::appell_j(ThetaArg::neg_q(x), mono_z(Unit::MinusOne, 3, 2), 12)
            .specialize_z(&zval)
            .expect("limit point is a regular value")
    };
    let zp = ThetaArg::mono(Unit::I, Exponent::new(3, 2), 0);
    let zn = ThetaArg::mono(Unit::I, Exponent::new(-3, 2), 0);
    for (k, lhs) in [
        (1, -aj(7, zp.clone()) + q(-1) * aj(11, zp.clone())),
        (2, -aj(5, zp.clone()) + q(-2) * aj(13, zp.clone())),
    ] {
        c.push(
            IdentityCheck::new(
                format!("lemma:polarFinite23m1AppellVanish:display={k}"),
                "lemma:polarFinite23m1AppellVanish",
                lhs,
                -(q(-1) * base.clone()),
                ONE_VAR,
            )
            .note("j(−q^{−3}z²)·m(x,−q⁹z²) is read as j·m at the same argument via m(x,qz)=m(x,z)")
            .tag("statement")
            .tag("new"),
        );
    }
    for (k, lhs) in [
        (1, -(q(-1) * aj3(1, zn.clone())) + aj3(5, zn.clone())),
        (2, -(q(-2) * aj3(-1, zn.clone())) + aj3(7, zn.clone())),
    ] {
        c.push(
            IdentityCheck::new(
                format!("lemma:polarFinite23m3AppellVanish:display={k}"),
                "lemma:polarFinite23m3AppellVanish",
                lhs,
                q(-1) * base.clone(),
                ONE_VAR,
            )
            .tag("statement")
            .tag("new"),
        );
    }
    let t1 = j3.clone() * j4.clone().pow(4) / (j2.clone().pow(2) * j12.clone());
    let t2 = j3.clone() * j12.clone().pow(3) / j6.clone().pow(2);
    let prod = j1.clone() * j4.clone().pow(2) * j6.clone().pow(7) / (j2.clone().pow(3) * j3.clone().pow(2) * j12.clone().pow(3));
    c.push(
        IdentityCheck::new(
            "lemma:unusualThetaIdentity1",
            "lemma:unusualThetaIdentity1",
            t1.clone() - j1.clone().pow(3) / Expr::jab(2, 4),
            int(3) * q(1) * t2.clone(),
            ONE_VAR,
        )
        .tag("statement")
        .tag("new"),
    );
    c.push(
        IdentityCheck::new("lemma:unusualThetaIdentity1:idLHS", "equation:idLHS", t1 - q(1) * t2.clone(), prod.clone(), ONE_VAR)
            .tag("proof-chain"),
    );
    c.push(
        IdentityCheck::new(
            "lemma:unusualThetaIdentity1:idRHS",
            "equation:idRHS",
            int(2) * q(1) * t2 + j1.pow(3) * j4 / j2.pow(2),
            prod,
            ONE_VAR,
        )
        .tag("proof-chain"),
    );
}

/// `j(−q^{a+10r}; q^M) − q^{c} j(−q^{b−10r}; q^M)`.
fn pair10(a: i64, c: i64, b: i64, r: i64, modulus: i64) -> Expr {
    jm(a + 10 * r, modulus) - q(c) * jm(b - 10 * r, modulus)
}

fn level_fifths(c: &mut Cat) {
    let phi = mock(MockName::Phi10);
    let psi = mock(MockName::Psi10);
    let bx = mock(MockName::BigX10);
    let chi = mock(MockName::Chi10);
    let mut push = |id: String, anchor: &str, lhs: Expr, rhs: Expr, r: i64, tags: &[&str]| {
        let mut chk = IdentityCheck::new(id, anchor, lhs, rhs, LEVEL5).param("r", r);
        for t in tags {
            chk = chk.tag(t);
        }
        c.push(chk);
    };
    for r in 0..=4 {
        push(
            format!("prior:pP511m0ell2r:r={r}"),
            "theorem:newMockThetaIdentitiespP511m0ell2r",
            c3(5, 11, 0, 2 * r),
            -(q(r * r - 3 * r + 1) * Expr::jab(1, 2) * j(4 + 8 * r, 22))
                - q(6 - 4 * r) * pair10(16, 4 + 8 * r, 6, r, 110) * q(1) * phi.at_neg_q_pow(1)
                + q(3 - 3 * r) * pair10(27, 3 + 6 * r, 17, r, 110) * chi.at_q_pow(2)
                - q(1 - 2 * r) * pair10(38, 2 + 4 * r, 28, r, 110) * -psi.at_neg_q_pow(1)
                + q(-r) * pair10(49, 1 + 2 * r, 39, r, 110) * bx.at_q_pow(2),
            r,
            &["statement"],
        );
        push(
            format!("cor:pP511m1:r={r}"),
            "corollary:newMockThetaIdentitiespP511m1ell2rPlus1",
            c3(5, 11, 1, 2 * r + 1),
            q((r - 1) * (r - 1)) * Expr::jab(1, 2) * j(8 * (r + 1), 22)
                - q(6 - 4 * r) * pair10(21, 8 + 8 * r, 1, r, 110) * (int(1) - bx.at_q_pow(2))
                + q(3 - 3 * r) * pair10(32, 6 + 6 * r, 12, r, 110) * (int(1) + psi.at_neg_q_pow(1))
                - q(1 - 2 * r) * pair10(43, 4 + 4 * r, 23, r, 110) * (int(1) - chi.at_q_pow(2))
                + q(-r) * pair10(54, 2 + 2 * r, 34, r, 110) * (int(1) - q(1) * phi.at_neg_q_pow(1)),
            r,
            &["statement", "new"],
        );
        let theta5 = |k: i64| match k {
            1 => -(half() * q(-1) * Expr::jab(1, 2) * jj(1)),
            3 => -(half() * q(-6) * Expr::jab(1, 2) * jj(1)),
            _ => int(0),
        };
        let p1 = pair10(22, 8 + 8 * r, 2, r, 120);
        let p2 = pair10(34, 6 + 6 * r, 14, r, 120);
        let p3 = pair10(46, 4 + 4 * r, 26, r, 120);
        let p4 = pair10(58, 2 + 2 * r, 38, r, 120);
        let chi1 = chi.clone();
        let bx1 = bx.clone();
        push(
            format!("thm:pP512m1ell2rPlus1:r={r}"),
            "theorem:newMockThetaIdentitiespP512m1ell2rPlus1",
            c3(5, 12, 1, 2 * r + 1),
            theta5(r) - q(6 - 4 * r) * p1.clone() * half() * chi1.clone() + q(3 - 3 * r) * p2.clone() * half() * bx1.clone()
                - q(1 - 2 * r) * p3.clone() * (int(1) - half() * bx1.clone())
                + q(-r) * p4.clone() * (int(1) - half() * chi1.clone()),
            r,
            &["statement", "new"],
        );
        push(
            format!("cor:pP512m3ell2rPlus1:r={r}"),
            "corollary:newMockThetaIdentitiespP512m3ell2rPlus1",
            c3(5, 12, 3, 2 * r + 1),
            q(15 - 5 * r) * theta5(4 - r) - q(11 - 4 * r) * p1 * (int(-1) + q(-1) + half() * chi1.clone())
                + q(8 - 3 * r) * p2 * (int(-1) + q(-2) + half() * bx1.clone())
                - q(6 - 2 * r) * p3 * (q(-3) - half() * bx1)
                + q(5 - r) * p4 * (q(-4) - half() * chi1),
            r,
            &["statement", "new"],
        );
    }
    for r in 0..=5 {
        push(
            format!("prior:pP512m0ell2r:r={r}"),
            "theorem:newMockThetaIdentitiespP512m0ell2r",
            c3(5, 12, 0, 2 * r),
            -(q(r * (r - 5) / 2 + 1) * j(2 + 4 * r, 12) * jm(1 + 2 * r, 8) * jj(1) / jj(4))
                - q(6 - 4 * r) * pair10(17, 4 + 8 * r, 7, r, 120) * q(2) * phi.at_neg_q_pow(2)
                + q(3 - 3 * r) * pair10(29, 3 + 6 * r, 19, r, 120) * chi.at_q_pow(4)
                - q(1 - 2 * r) * pair10(41, 2 + 4 * r, 31, r, 120) * -psi.at_neg_q_pow(2)
                + q(-r) * pair10(53, 1 + 2 * r, 43, r, 120) * bx.at_q_pow(4),
            r,
            &["statement"],
        );
        push(
            format!("prior:pP512m2ell2r:r={r}"),
            "theorem:newMockThetaIdentitiespP512m2ell2r",
            c3(5, 12, 2, 2 * r),
            q(r * (r - 3) / 2 + 3) * j(2 + 4 * r, 12) * jm(5 + 2 * r, 8) * jj(1) / jj(4)
                - q(10 - 4 * r) * pair10(17, 4 + 8 * r, 7, r, 120) * (int(1) - bx.at_q_pow(4))
                + q(6 - 3 * r) * pair10(29, 3 + 6 * r, 19, r, 120) * (int(1) + psi.at_neg_q_pow(2))
                - q(3 - 2 * r) * pair10(41, 2 + 4 * r, 31, r, 120) * (int(1) - chi.at_q_pow(4))
                + q(1 - r) * pair10(53, 1 + 2 * r, 43, r, 120) * (int(1) - q(2) * phi.at_neg_q_pow(2)),
            r,
            &["statement"],
        );
    }
    for chk in c.0.iter_mut().filter(|k| k.id.starts_with("cor:pP512m3ell2rPlus1")) {
        chk.note = Some("the first Appell term carries q^{11-4r}; the displayed q^{11-5r} agrees only at r=0".into());
    }
}
