//! Theta-function generators.
//!
//! # Mathematical background
//!
//! The Jacobi theta function used throughout is
//!
//! ```text
//! j(x;q) = (x)_∞ (q/x)_∞ (q)_∞ = Σ_{n∈ℤ} (-1)^n q^{n(n-1)/2} x^n
//! ```
//!
//! with the shorthands `J_{a,b} = j(q^a;q^b)`, `J̄_{a,b} = j(-q^a;q^b)` and
//! `J_a = J_{a,3a} = (q^a;q^a)_∞`. Arguments are restricted to signed
//! monomials `x = u·q^a·z^w` with `u ∈ {±1, ±i}`; the bilateral sum is
//! evaluated exactly over the finitely many `n` whose `q`-order lies below
//! the truncation.

mod identities;

pub use identities::{
    check_pair, monomial_grid, product_rearrangements, theta_identity_cases, theta_identity_suite, IdentityCase,
    IdentityOutcome, Status, SuiteOutcome,
};

use crate::error::{QsvError, Result};
use crate::series::{Coef, Exponent, GaussianRational, QZSeries, Term, Unit};
use num_integer::Integer;
use num_rational::Rational64;
use std::fmt;

/// A signed monomial `coeff · q^qpow · z^zpow`, the argument of `j(x;q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThetaArg {
    pub coeff: Unit,
    pub qpow: Exponent,
    pub zpow: Exponent,
}

impl ThetaArg {
    pub fn new(coeff: Unit, qpow: Exponent, zpow: Exponent) -> Self {
        ThetaArg { coeff, qpow, zpow }
    }

    /// `q^a`.
    pub fn q(a: impl Into<Exponent>) -> Self {
        Self::new(Unit::One, a.into(), Exponent::zero())
    }

    /// `-q^a`.
    pub fn neg_q(a: impl Into<Exponent>) -> Self {
        Self::new(Unit::MinusOne, a.into(), Exponent::zero())
    }

    /// `q^(num/den)`.
    pub fn q_frac(num: i64, den: i64) -> Self {
        Self::q(Exponent::new(num, den))
    }

    /// The formal variable `z`.
    pub fn z() -> Self {
        Self::new(Unit::One, Exponent::zero(), Exponent::int(1))
    }

    /// `u·q^a·z^w`.
    pub fn mono(u: Unit, a: impl Into<Exponent>, w: impl Into<Exponent>) -> Self {
        Self::new(u, a.into(), w.into())
    }

    /// Product of two monomials.
    pub fn mul(&self, o: &ThetaArg) -> ThetaArg {
        ThetaArg::new(
            unit_mul(self.coeff, o.coeff),
            self.qpow.clone() + o.qpow.clone(),
            self.zpow.clone() + o.zpow.clone(),
        )
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> ThetaArg {
        ThetaArg::new(unit_inv(self.coeff), -self.qpow.clone(), -self.zpow.clone())
    }

    /// Integer power.
    pub fn pow(&self, n: i64) -> ThetaArg {
        ThetaArg::new(
            unit_pow(self.coeff, n),
            self.qpow.clone() * Exponent::int(n),
            self.zpow.clone() * Exponent::int(n),
        )
    }

    /// Multiply by `q^e`.
    pub fn shift_q(&self, e: impl Into<Exponent>) -> ThetaArg {
        ThetaArg::new(self.coeff, self.qpow.clone() + e.into(), self.zpow.clone())
    }

    /// Negate.
    pub fn negated(&self) -> ThetaArg {
        ThetaArg::new(unit_mul(self.coeff, Unit::MinusOne), self.qpow.clone(), self.zpow.clone())
    }

    pub fn is_z_free(&self) -> bool {
        self.zpow.is_zero()
    }

    /// Replace `z` by the monomial `zval`; requires an integer `z`-power
    /// unless `zval` has unit coefficient one.
    pub fn specialize_z(&self, zval: &ThetaArg) -> Result<ThetaArg> {
        if self.zpow.is_zero() {
            return Ok(self.clone());
        }
        let w = &self.zpow;
        let coeff = if zval.coeff == Unit::One {
            self.coeff
        } else if w.is_integer() {
            let n = w.to_r64().map(|r| *r.numer()).ok_or_else(|| QsvError::ExponentOverflow(w.to_string()))?;
            unit_mul(self.coeff, unit_pow(zval.coeff, n))
        } else {
            return Err(QsvError::IllDefinedRootOfUnityPower(format!("z^{w} at a signed z")));
        };
        Ok(ThetaArg::new(
            coeff,
            self.qpow.clone() + zval.qpow.clone() * w.clone(),
            zval.zpow.clone() * w.clone(),
        ))
    }

    /// The monomial as a one-term series.
    pub fn to_series(&self, trunc: &Exponent) -> QZSeries {
        QZSeries::monomial(unit_gauss(self.coeff), &self.qpow, &self.zpow, trunc)
    }

    pub(crate) fn r64(&self) -> Result<(Rational64, Rational64)> {
        let a = self.qpow.to_r64().ok_or_else(|| QsvError::ExponentOverflow(self.qpow.to_string()))?;
        let w = self.zpow.to_r64().ok_or_else(|| QsvError::ExponentOverflow(self.zpow.to_string()))?;
        Ok((a, w))
    }
}

impl fmt::Display for ThetaArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let u = match self.coeff {
            Unit::One => "",
            Unit::MinusOne => "-",
            Unit::I => "i",
            Unit::MinusI => "-i",
        };
        write!(f, "{u}q^{}", self.qpow)?;
        if !self.zpow.is_zero() {
            write!(f, "z^{}", self.zpow)?;
        }
        Ok(())
    }
}

fn unit_index(u: Unit) -> i64 {
    match u {
        Unit::One => 0,
        Unit::I => 1,
        Unit::MinusOne => 2,
        Unit::MinusI => 3,
    }
}

fn unit_from_index(k: i64) -> Unit {
    match k.rem_euclid(4) {
        0 => Unit::One,
        1 => Unit::I,
        2 => Unit::MinusOne,
        _ => Unit::MinusI,
    }
}

pub(crate) fn unit_mul(a: Unit, b: Unit) -> Unit {
    unit_from_index(unit_index(a) + unit_index(b))
}

pub(crate) fn unit_inv(a: Unit) -> Unit {
    unit_from_index(-unit_index(a))
}

pub(crate) fn unit_pow(a: Unit, n: i64) -> Unit {
    unit_from_index(unit_index(a) * n.rem_euclid(4))
}

pub(crate) fn unit_coef(a: Unit) -> Coef {
    match a {
        Unit::One => Coef::Int(1, 0),
        Unit::I => Coef::Int(0, 1),
        Unit::MinusOne => Coef::Int(-1, 0),
        Unit::MinusI => Coef::Int(0, -1),
    }
}

pub(crate) fn unit_gauss(a: Unit) -> GaussianRational {
    unit_coef(a).to_gauss()
}

pub(crate) fn r64_of(e: &Exponent) -> Result<Rational64> {
    e.to_r64().ok_or_else(|| QsvError::ExponentOverflow(e.to_string()))
}

/// Scaled integer `r·den`; `den` must clear the denominator of `r`.
pub(crate) fn sc(r: Rational64, den: i64) -> i64 {
    debug_assert_eq!(den % r.denom(), 0);
    r.numer() * (den / r.denom())
}

/// Indices `n` for which the convex quadratic `A·n(n-1)/2 + B·n` (scaled
/// integers, `A > 0`) lies strictly below `limit`, in increasing order.
pub(crate) fn quadratic_window(a: i128, b: i128, limit: i128) -> Vec<i64> {
    let e = |n: i128| a * n * (n - 1) / 2 + b * n;
    // vertex of a·n²/2 + (b - a/2)·n
    let v = (a - 2 * b) as f64 / (2 * a) as f64;
    let c = v.round() as i128;
    let mut best = c;
    for d in [c - 1, c + 1] {
        if e(d) < e(best) {
            best = d;
        }
    }
    if e(best) >= limit {
        return vec![];
    }
    let mut lo = best;
    while e(lo - 1) < limit {
        lo -= 1;
    }
    let mut hi = best;
    while e(hi + 1) < limit {
        hi += 1;
    }
    (lo as i64..=hi as i64).collect()
}

/// `j(x; q^base)` truncated below `trunc`.
pub fn jacobi_theta(x: &ThetaArg, base: &Exponent, trunc: &Exponent) -> Result<QZSeries> {
    jacobi_theta_signed(x, Unit::One, base, trunc)
}

/// `j(x; u·q^base)` for a unit `u`, e.g. `j(x;−q)`.
pub fn jacobi_theta_signed(x: &ThetaArg, u: Unit, base: &Exponent, trunc: &Exponent) -> Result<QZSeries> {
    let (a, w) = x.r64()?;
    let b = r64_of(base)?;
    let t = r64_of(trunc)?;
    if *b.numer() <= 0 {
        return Err(QsvError::InvalidParameters("theta base must be positive".into()));
    }
    let qd = a.denom().lcm(b.denom()).lcm(t.denom());
    let zd = *w.denom();
    let (sa, sb, st) = (sc(a, qd) as i128, sc(b, qd) as i128, sc(t, qd) as i128);
    let mut terms = Vec::new();
    for n in quadratic_window(sb, sa, st) {
        let n128 = n as i128;
        let q = sb * n128 * (n128 - 1) / 2 + sa * n128;
        let sign = if n.rem_euclid(2) == 0 { Coef::ONE } else { Coef::int(-1) };
        let c = sign
            .mul(&unit_coef(unit_pow(x.coeff, n)))
            .mul(&unit_coef(unit_pow(u, n * (n - 1) / 2)));
        terms.push(Term { q: q as i64, z: w.numer() * n, c });
    }
    Ok(QZSeries::from_raw(qd, zd, st as i64, terms))
}

/// `J_{a,b} = j(q^a;q^b)`, or `J̄_{a,b} = j(-q^a;q^b)` when `overline`.
pub fn theta_j(a: impl Into<Exponent>, b: impl Into<Exponent>, overline: bool, trunc: &Exponent) -> Result<QZSeries> {
    let a = a.into();
    let x = if overline { ThetaArg::neg_q(a) } else { ThetaArg::q(a) };
    jacobi_theta(&x, &b.into(), trunc)
}

/// `J_a = (q^a;q^a)_∞`.
pub fn theta_jn(a: i64, trunc: &Exponent) -> Result<QZSeries> {
    theta_j(a, 3 * a, false, trunc)
}

/// Dedekind eta `η(q^scale) = q^{scale/24} (q^scale;q^scale)_∞`.
pub fn eta_scaled(scale: i64, trunc: &Exponent) -> Result<QZSeries> {
    let off = Exponent::new(scale, 24);
    let inner = theta_jn(scale, &(trunc.clone() - off.clone()))?;
    Ok(inner.shift(&off, &Exponent::zero()))
}

/// Dedekind eta `η(q) = q^{1/24} (q)_∞`.
pub fn eta(trunc: &Exponent) -> Result<QZSeries> {
    eta_scaled(1, trunc)
}

/// `Θ_{n,m}(z;q^scale) = Σ_{j∈ℤ+n/2m} q^{scale·m·j²} z^{-m·j}`.
pub fn big_theta(n: i64, m: i64, scale: &Exponent, trunc: &Exponent) -> Result<QZSeries> {
    if m <= 0 {
        return Err(QsvError::InvalidParameters("Θ_{n,m} needs m > 0".into()));
    }
    let s = r64_of(scale)?;
    let t = r64_of(trunc)?;
    // j = k + n/(2m); scale·m·j² = scale·(2mk + n)²/(4m)
    let qd = (s.denom() * 4 * m).lcm(t.denom());
    let st = sc(t, qd) as i128;
    let coef = |k: i64| -> i128 {
        let v = (2 * m * k + n) as i128;
        (*s.numer() as i128) * v * v * ((qd / (s.denom() * 4 * m)) as i128)
    };
    // the nearest integer to the vertex -n/(2m) minimises the exponent
    let centre = (-(n as f64) / (2.0 * m as f64)).round() as i64;
    let mut terms = Vec::new();
    if coef(centre) < st {
        let mut lo = centre;
        while coef(lo - 1) < st {
            lo -= 1;
        }
        let mut k = lo;
        while coef(k) < st {
            // z-power -m·j = -(2mk + n)/2
            terms.push(Term { q: coef(k) as i64, z: -(2 * m * k + n), c: Coef::ONE });
            k += 1;
        }
    }
    Ok(QZSeries::from_raw(qd, 2, st as i64, terms))
}

/// Finite or infinite Pochhammer symbol `(x; q^base)_n`, `n = None` for `∞`.
///
/// The infinite product needs the factors' `q`-orders to become positive.
pub fn pochhammer(x: &ThetaArg, base: &Exponent, n: Option<usize>, trunc: &Exponent) -> Result<QZSeries> {
    let (a, _) = x.r64()?;
    let b = r64_of(base)?;
    let mut acc = QZSeries::one(trunc);
    let mut i = 0usize;
    loop {
        if let Some(n) = n {
            if i >= n {
                break;
            }
        }
        let e = a + b * Rational64::from_integer(i as i64);
        if n.is_none() && e > Rational64::from_integer(0) && Exponent::from_r64(e) >= *trunc {
            break;
        }
        if n.is_none() && i > 1_000_000 {
            return Err(QsvError::NonTerminatingEnumeration(i as i64));
        }
        let factor = QZSeries::one(trunc).sub(&x.shift_q(Exponent::from_r64(b * Rational64::from_integer(i as i64))).to_series(trunc));
        acc = acc.mul(&factor);
        i += 1;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: i64) -> Exponent {
        Exponent::int(n)
    }

    #[test]
    fn pentagonal_numbers() {
        let s = theta_jn(1, &t(16)).unwrap();
        let expect = [1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1];
        assert_eq!(s, QZSeries::from_int_coeffs(&expect, 16));
    }

    #[test]
    fn theta_at_one_vanishes() {
        let s = jacobi_theta(&ThetaArg::q(0), &t(1), &t(30)).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn euler_product_matches_bilateral_sum() {
        let prod = pochhammer(&ThetaArg::q(1), &t(1), None, &t(40)).unwrap();
        assert_eq!(prod, theta_jn(1, &t(40)).unwrap());
    }

    #[test]
    fn big_theta_lowest_term() {
        let s = big_theta(1, 2, &t(1), &t(3)).unwrap();
        assert_eq!(s.valuation(), Some(Exponent::new(1, 8)));
        assert_eq!(
            s.coeff(&Exponent::new(1, 8), &Exponent::new(-1, 2)),
            GaussianRational::one()
        );
        let s0 = big_theta(0, 1, &t(1), &t(3)).unwrap();
        assert_eq!(s0.coeff(&t(0), &t(0)), GaussianRational::one());
    }

    #[test]
    fn eta_has_offset() {
        let e = eta(&t(5)).unwrap();
        assert_eq!(e.valuation(), Some(Exponent::new(1, 24)));
    }
}
