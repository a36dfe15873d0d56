//! Appell functions and mock theta functions.
//!
//! ```text
//! m(x,z;q) = (1/j(z;q)) Σ_r (−1)^r q^{C(r,2)} z^r / (1 − q^{r−1} x z)
//! ```
//!
//! The bilateral numerator `j(z;q)·m(x,z;q)` is computed directly by
//! [`appell_j_product`]; it stays meaningful where `j(z;q)` vanishes. Each
//! denominator `1 − D` with `D = σ q^e z^w` is expanded as `Σ_{k≥0} D^k`
//! for `e > 0` and as `−Σ_{k≥1} D^{−k}` for `e < 0`.

mod mock;

pub use mock::{appell_form, classical_third_order_suite, g3, mock_theta, third_order_pairs, MockForm, MockName};

use crate::error::{QsvError, Result};
use crate::registry::expr::{theta_min_order, Expr};
use crate::series::{Coef, Exponent, GaussianRational, QZSeries, Term, Unit};
use crate::theta::{
    check_pair, jacobi_theta, r64_of, sc, unit_coef, unit_gauss, unit_inv, unit_mul, unit_pow, IdentityOutcome,
    ThetaArg,
};
use num_integer::Integer;

/// Arguments of `m(x, z; q^base)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AppellArgs {
    pub x: ThetaArg,
    pub z: ThetaArg,
    pub base: Exponent,
}

impl AppellArgs {
    pub fn new(x: ThetaArg, z: ThetaArg, base: impl Into<Exponent>) -> Self {
        AppellArgs { x, z, base: base.into() }
    }
}

/// Scaled description of the bilateral rows.
struct Rows {
    qd: i64,
    zd: i64,
    b: i128,
    c: i128,
    /// `e_r = b(r−1) + ed`
    ed: i128,
    wz: i64,
    wd: i64,
    tau: Unit,
    st: Unit,
}

impl Rows {
    fn new(a: &AppellArgs, trunc: &Exponent) -> Result<Rows> {
        let (ax, wx) = a.x.r64()?;
        let (cz, wz) = a.z.r64()?;
        let b = r64_of(&a.base)?;
        if *b.numer() <= 0 {
            return Err(QsvError::InvalidParameters("Appell base must be positive".into()));
        }
        let t = r64_of(trunc)?;
        let qd = ax.denom().lcm(cz.denom()).lcm(b.denom()).lcm(t.denom());
        let zd = wx.denom().lcm(wz.denom());
        Ok(Rows {
            qd,
            zd,
            b: sc(b, qd) as i128,
            c: sc(cz, qd) as i128,
            ed: (sc(ax, qd) + sc(cz, qd)) as i128,
            wz: sc(wz, zd),
            wd: sc(wx, zd) + sc(wz, zd),
            tau: a.z.coeff,
            st: unit_mul(a.x.coeff, a.z.coeff),
        })
    }

    fn n(&self, r: i128) -> i128 {
        self.b * r * (r - 1) / 2 + self.c * r
    }

    fn e(&self, r: i128) -> i128 {
        self.b * (r - 1) + self.ed
    }

    /// Lowest order reached by row `r`; convex in `r`.
    fn row_min(&self, r: i128) -> i128 {
        self.n(r) + (-self.e(r)).max(0)
    }

    /// The row index minimising [`Rows::row_min`].
    fn argmin(&self) -> i128 {
        let v = (self.b - 2 * self.c) as f64 / (2 * self.b) as f64;
        let mut r = v.round() as i128;
        while self.row_min(r - 1) < self.row_min(r) {
            r -= 1;
        }
        while self.row_min(r + 1) < self.row_min(r) {
            r += 1;
        }
        r
    }

    /// Rows with some term below `limit`, in increasing order.
    fn window(&self, limit: i128) -> Vec<i128> {
        let c = self.argmin();
        if self.row_min(c) >= limit {
            return vec![];
        }
        let (mut lo, mut hi) = (c, c);
        while self.row_min(lo - 1) < limit {
            lo -= 1;
        }
        while self.row_min(hi + 1) < limit {
            hi += 1;
        }
        (lo..=hi).collect()
    }
}

/// Sound lower bound on the `q`-order of `j(z;q^b)·m(x,z;q^b)`.
pub fn appell_j_lower_bound(a: &AppellArgs) -> Result<Exponent> {
    let rows = Rows::new(a, &Exponent::zero())?;
    Ok(Exponent::new(rows.row_min(rows.argmin()) as i64, rows.qd))
}

/// `j(z;q^b)·m(x,z;q^b)` below `trunc`, from the bilateral sum.
pub fn appell_j_product(a: &AppellArgs, trunc: &Exponent) -> Result<QZSeries> {
    let rows = Rows::new(a, trunc)?;
    let limit = sc(r64_of(trunc)?, rows.qd) as i128;
    let mut terms = Vec::new();
    for r in rows.window(limit) {
        let (n, e) = (rows.n(r), rows.e(r));
        let sign = if r.rem_euclid(2) == 0 { Coef::ONE } else { Coef::int(-1) };
        let num = sign.mul(&unit_coef(unit_pow(rows.tau, r as i64)));
        let zr = rows.wz * r as i64;
        if e == 0 {
            if rows.wd != 0 {
                return Err(QsvError::DegenerateSpecialization(format!(
                    "denominator at r={r} has no q-graded expansion"
                )));
            }
            if rows.st == Unit::One {
                return Err(QsvError::PoleAtSpecialization(format!("denominator at r={r} vanishes")));
            }
            // 1/(1 − σ) for a root-of-unity σ ≠ 1
            let inv = (&GaussianRational::one() - &unit_gauss(rows.st)).inv().expect("σ ≠ 1");
            terms.push(Term { q: n as i64, z: zr, c: num.mul(&Coef::from_gauss(inv)) });
            continue;
        }
        if e > 0 {
            let mut k = 0i64;
            while n + k as i128 * e < limit {
                let c = num.mul(&unit_coef(unit_pow(rows.st, k)));
                terms.push(Term { q: (n + k as i128 * e) as i64, z: zr + rows.wd * k, c });
                k += 1;
            }
        } else {
            let inv = unit_inv(rows.st);
            let mut k = 1i64;
            while n - (k as i128) * e < limit {
                let c = num.mul(&unit_coef(unit_pow(inv, k))).neg();
                terms.push(Term { q: (n - k as i128 * e) as i64, z: zr - rows.wd * k, c });
                k += 1;
            }
        }
    }
    Ok(QZSeries::from_raw(rows.qd, rows.zd, limit as i64, terms))
}

/// `m(x,z;q^b)` below `trunc`; needs `j(z;q^b)` to be a unit.
pub fn appell(a: &AppellArgs, trunc: &Exponent) -> Result<QZSeries> {
    let lb_j = theta_min_order(&a.z, &a.base)?;
    // the two lowest bilateral terms cannot cancel unless j(z) ≡ 0
    let probe = jacobi_theta(&a.z, &a.base, &(lb_j + Exponent::new(1, 1)))?;
    let Some(v) = probe.valuation() else {
        return Err(QsvError::NonUnitPrefactor(format!("j({};q^{}) vanishes", a.z, a.base)));
    };
    let lb_a = appell_j_lower_bound(a)?;
    let num = appell_j_product(a, &(trunc.clone() + v.clone()))?;
    let theta_order = (trunc.clone() + v.clone() + v.clone() - lb_a.min(trunc.clone())).max(v.clone() + Exponent::int(1));
    let jinv = jacobi_theta(&a.z, &a.base, &theta_order)?
        .invert_unit()
        .map_err(|e| QsvError::NonUnitPrefactor(e.to_string()))?;
    Ok(num.mul(&jinv).truncate(trunc))
}

/// `Σ_t q^{pjt²+p(2s+1)t} z^{−jt} Σ_{i=1}^{t} q^{−pji(i−1)−p(2s+1)i}
/// (q^{m(ji+s−j+1)} − q^{−m(ji+s)})`, with `Σ_{i=1}^{t} = −Σ_{i=t+1}^{0}`
/// for `t ≤ 0`. Every term has `q`-exponent at least `−3pj`.
pub fn polar_kernel(p: i64, j: i64, s: i64, m: i64, trunc: &Exponent) -> Result<QZSeries> {
    if p < 1 || j < 1 || !(0..j).contains(&s) || !(1..p).contains(&m) {
        return Err(QsvError::InvalidParameters(format!("polar kernel needs 0 ≤ s < j, 0 < m < p; got (p,j,s,m)=({p},{j},{s},{m})")));
    }
    let lim = r64_of(trunc)?.ceil().to_integer();
    let lead = |t: i64, i: i64| p * j * t * t + p * (2 * s + 1) * t - p * j * i * (i - 1) - p * (2 * s + 1) * i;
    let mut terms = Vec::new();
    let mut push = |t: i64, i: i64, sign: i64| {
        let base = lead(t, i);
        for (e, c) in [(base + m * (j * i + s - j + 1), sign), (base - m * (j * i + s), -sign)] {
            if e < lim {
                terms.push(Term { q: e, z: -j * t, c: Coef::int(c) });
            }
        }
    };
    // both tails grow at least like j·|t| − 3pj
    let reach = (lim + 3 * p * j) / j + 2;
    for t in 1..=reach {
        for i in 1..=t {
            push(t, i, 1);
        }
    }
    for t in -reach..=0 {
        for i in t + 1..=0 {
            push(t, i, -1);
        }
    }
    let rt = r64_of(trunc)?;
    let qd = *rt.denom();
    for term in &mut terms {
        term.q *= qd;
    }
    Ok(QZSeries::from_raw(qd, 1, sc(rt, qd), terms))
}

/// `Ψ(x,z₁,z₀;q^b)`, the changing-`z` correction, as an expression.
pub fn changing_z_psi_expr(x: &ThetaArg, z1: &ThetaArg, z0: &ThetaArg, base: i64) -> Expr {
    let j = |t: ThetaArg| Expr::j(t, base);
    let j1 = Expr::j(ThetaArg::q(base), 3 * base);
    let num = Expr::prod([
        Expr::mono(unit_gauss(z0.coeff), z0.qpow.clone(), z0.zpow.clone()),
        j1.pow(3),
        j(z1.mul(&z0.inv())),
        j(x.mul(z0).mul(z1)),
    ]);
    let den = Expr::prod([j(z0.clone()), j(z1.clone()), j(x.mul(z0)), j(x.mul(z1))]);
    num / den
}

/// `Ψ(x,z₁,z₀;q^b)` below `trunc`.
pub fn changing_z_psi(x: &ThetaArg, z1: &ThetaArg, z0: &ThetaArg, base: i64, trunc: &Exponent) -> Result<QZSeries> {
    changing_z_psi_expr(x, z1, z0, base).eval(trunc).map_err(degenerate)
}

fn degenerate(e: QsvError) -> QsvError {
    match e {
        QsvError::NotAUnit(s) | QsvError::NonUnitPrefactor(s) => QsvError::DegenerateSpecialization(s),
        other => other,
    }
}

/// The right-hand side of the two-term splitting of `m(x,z;Q)`, `Q = q^b`,
/// into base-`Q⁴` Appell functions plus a theta quotient.
pub fn msplit_m2_rhs(x: &ThetaArg, z: &ThetaArg, z1: &ThetaArg, base: i64) -> Expr {
    let b = base;
    let xx = x.pow(2);
    let mono = |t: &ThetaArg| Expr::mono(unit_gauss(t.coeff), t.qpow.clone(), t.zpow.clone());
    let split = Expr::appell(xx.shift_q(b).negated(), z1.clone(), 4 * b)
        - Expr::q(-b)
            * mono(x)
            * Expr::appell(xx.shift_q(-b).negated(), z1.clone(), 4 * b);
    let jq2 = |t: ThetaArg| Expr::j(t, 2 * b);
    let jq4 = |t: ThetaArg| Expr::j(t, 4 * b);
    let den_common = jq2(xx.mul(z1).shift_q(b).negated());
    let zz = z.pow(2).mul(&z1.inv());
    let first = jq2(xx.mul(z).mul(z1).shift_q(b).negated()) * jq4(zz.clone())
        / (den_common.clone() * jq2(z.clone()));
    let second = mono(&x.mul(z))
        * jq2(xx.mul(z).mul(z1).shift_q(2 * b).negated())
        * jq4(zz.shift_q(2 * b))
        / (den_common * jq2(z.shift_q(b)));
    let j2 = Expr::j(ThetaArg::q(2 * b), 6 * b);
    let corr = mono(z1) * j2.pow(3) / (Expr::j(x.mul(z), b) * jq4(z1.clone())) * (first - second);
    split + corr
}

/// Checks `m(x,z;q^b)` against its two-term splitting below `trunc`.
pub fn msplit_m2(x: &ThetaArg, z: &ThetaArg, z1: &ThetaArg, base: i64, trunc: &Exponent) -> IdentityOutcome {
    let lhs = Expr::appell(x.clone(), z.clone(), base);
    check_pair("msplit-m2", &format!("x={x}, z={z}, z1={z1}, base={base}"), &lhs, &msplit_m2_rhs(x, z, z1, base), trunc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: i64) -> Exponent {
        Exponent::int(n)
    }

    /// Direct double loop over r and k: the oracle for `appell_j_product`.
    fn brute_aj(sx: i64, ax: i64, sz: i64, cz: i64, b: i64, order: i64) -> Vec<i64> {
        let mut out = vec![0i64; order as usize];
        for r in -60i64..=60 {
            let n = b * r * (r - 1) / 2 + cz * r;
            let e = b * (r - 1) + ax + cz;
            let st = sx * sz;
            let num = (if r.rem_euclid(2) == 0 { 1 } else { -1 }) * sz.pow(r.rem_euclid(2) as u32);
            for k in 0..200i64 {
                let (q, c) = if e > 0 {
                    (n + k * e, num * st.pow((k % 2) as u32))
                } else {
                    let k = k + 1;
                    (n - k * e, -num * st.pow((k % 2) as u32))
                };
                if (0..order).contains(&q) {
                    out[q as usize] += c;
                }
            }
        }
        out
    }

    #[test]
    fn bilateral_product_matches_double_loop() {
        for (sx, ax, sz, cz, b) in [(-1, 1, 1, 1, 3), (1, 1, 1, 2, 4), (-1, 7, 1, 0, 12), (1, -2, -1, 1, 5)] {
            let a = AppellArgs::new(
                if sx < 0 { ThetaArg::neg_q(ax) } else { ThetaArg::q(ax) },
                if sz < 0 { ThetaArg::neg_q(cz) } else { ThetaArg::q(cz) },
                b,
            );
            let got = appell_j_product(&a, &t(40)).unwrap();
            let want = QZSeries::from_int_coeffs(&brute_aj(sx, ax, sz, cz, b, 40), 40);
            assert!(got.equal_up_to(&want, &t(40)).unwrap().is_equal(), "{a:?}");
        }
    }

    #[test]
    fn product_equals_theta_times_appell() {
        let a = AppellArgs::new(ThetaArg::neg_q(1), ThetaArg::q(1), 3);
        let m = appell(&a, &t(50)).unwrap();
        let j = jacobi_theta(&a.z, &a.base, &t(60)).unwrap();
        let aj = appell_j_product(&a, &t(50)).unwrap();
        assert!(j.mul(&m).equal_up_to(&aj, &t(50)).unwrap().is_equal());
    }

    #[test]
    fn vanishing_prefactor_is_reported() {
        let a = AppellArgs::new(ThetaArg::neg_q(1), ThetaArg::q(3), 3);
        assert!(matches!(appell(&a, &t(10)), Err(QsvError::NonUnitPrefactor(_))));
    }

    #[test]
    fn identical_denominator_is_a_pole() {
        // x·z = q^{b}: the r = 0 row has e = 0 and σ = 1
        let a = AppellArgs::new(ThetaArg::q(2), ThetaArg::q(1), 3);
        assert!(matches!(appell_j_product(&a, &t(10)), Err(QsvError::PoleAtSpecialization(_))));
    }

    #[test]
    fn shifting_z_by_the_base_is_invisible() {
        let x = ThetaArg::neg_q(1);
        let a = appell(&AppellArgs::new(x.clone(), ThetaArg::q(1), 3), &t(60)).unwrap();
        let b = appell(&AppellArgs::new(x, ThetaArg::q(4), 3), &t(60)).unwrap();
        assert!(a.equal_up_to(&b, &t(60)).unwrap().is_equal());
    }
}
