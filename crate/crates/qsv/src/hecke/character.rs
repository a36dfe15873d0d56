//! Character assembly from string functions and the cleared Weyl–Kac form.

use super::{normalized, StringFnId};
use crate::error::{QsvError, Result};
use crate::registry::expr::Expr;
use crate::series::{Exponent, QZSeries};
use crate::theta::ThetaArg;
use num_rational::Rational64;

/// Largest number of Fourier modes assembled before giving up.
const MAX_MODES: i64 = 1 << 16;

/// `c₀ = −1/8 + p(ℓ+1)²/(4p')`, the common offset of every mode:
/// `C_{m,ℓ} q^{m²/4N} = q^{c₀} 𝒞_{m,ℓ}`.
pub fn character_offset(p: i64, pprime: i64, ell: i64) -> Exponent {
    Exponent::from_r64(Rational64::new(-1, 8) + Rational64::new(p * (ell + 1) * (ell + 1), 4 * pprime))
}

/// `val 𝒞_{m,ℓ} ≥ max(0, (|m|−ℓ)/2)`: a weight at grade `n` of the
/// highest-weight module satisfies `|m| ≤ ℓ + 2n`.
pub fn string_valuation_bound(id: &StringFnId) -> Exponent {
    Exponent::int(((id.m.abs() - id.ell) / 2).max(0))
}

/// The inclusive range of `m ≡ ℓ (mod 2)` whose modes reach below `trunc`.
pub fn character_m_range(p: i64, pprime: i64, ell: i64, trunc: &Exponent) -> Result<(i64, i64)> {
    let room = trunc.clone() - character_offset(p, pprime, ell);
    if room <= Exponent::zero() {
        return Ok((ell, ell - 2));
    }
    // max(0, (|m|−ℓ)/2) < room  ⟺  |m| < ℓ + 2·room
    let k = room.ceil_i64() - 1;
    let hi = ell + 2 * k;
    if hi > MAX_MODES {
        return Err(QsvError::MRangeBoundFailure(format!("{} modes needed", hi)));
    }
    Ok((-hi, hi))
}

/// `χ_ℓ(z;q) = Σ_m q^{c₀} 𝒞_{m,ℓ} z^{−m/2}` below `trunc`.
pub fn character(p: i64, pprime: i64, ell: i64, trunc: &Exponent) -> Result<QZSeries> {
    StringFnId::new(p, pprime, ell, ell)?;
    let c0 = character_offset(p, pprime, ell);
    let (lo, hi) = character_m_range(p, pprime, ell, trunc)?;
    let inner = trunc.clone() - c0.clone();
    let mut acc = QZSeries::zero(trunc);
    let mut m = lo;
    while m <= hi {
        let id = StringFnId::new(p, pprime, m, ell)?;
        let s = normalized(&id, &inner)?;
        acc = acc.add(&s.shift(&c0, &Exponent::new(-m, 2)));
        m += 2;
    }
    Ok(acc.truncate(trunc))
}

/// `z^{−(ℓ+1)/2} q^{p(ℓ+1)²/(4p')} [j(−q^{p(ℓ+1)+pp'} z^{−p'}; q^{2pp'})
/// − z^{ℓ+1} j(−q^{−p(ℓ+1)+pp'} z^{−p'}; q^{2pp'})]`, which equals
/// `χ_ℓ · z^{−1/2} q^{1/8} j(z;q)`.
pub fn weyl_kac_numerator_expr(p: i64, pprime: i64, ell: i64) -> Expr {
    let l1 = ell + 1;
    let base = 2 * p * pprime;
    let a = ThetaArg::mono(crate::series::Unit::MinusOne, p * l1 + p * pprime, -pprime);
    let b = ThetaArg::mono(crate::series::Unit::MinusOne, -p * l1 + p * pprime, -pprime);
    Expr::qz(Exponent::from_r64(Rational64::new(p * l1 * l1, 4 * pprime)), Exponent::new(-l1, 2))
        * (Expr::j(a, base) - Expr::qz(0, l1) * Expr::j(b, base))
}

/// The Weyl–Kac numerator below `trunc`.
pub fn weyl_kac_numerator(p: i64, pprime: i64, ell: i64, trunc: &Exponent) -> Result<QZSeries> {
    weyl_kac_numerator_expr(p, pprime, ell).eval(trunc)
}

/// `z^k · χ_ℓ(z;q)` in the quotient form, with the half-integer `z`-powers
/// of numerator and denominator combined so that `z` can be specialized
/// whenever `k − ℓ/2` is an integer.
pub fn weyl_kac_scaled_expr(p: i64, pprime: i64, ell: i64, k: Exponent) -> Expr {
    let l1 = ell + 1;
    let base = 2 * p * pprime;
    let a = ThetaArg::mono(crate::series::Unit::MinusOne, p * l1 + p * pprime, -pprime);
    let b = ThetaArg::mono(crate::series::Unit::MinusOne, -p * l1 + p * pprime, -pprime);
    let qoff = Exponent::from_r64(Rational64::new(p * l1 * l1, 4 * pprime) - Rational64::new(1, 8));
    Expr::qz(qoff, k - Exponent::new(ell, 2)) * (Expr::j(a, base) - Expr::qz(0, l1) * Expr::j(b, base))
        / Expr::j(ThetaArg::z(), 1)
}
