//! Hecke-type double sums and admissible-level string functions.
//!
//! # Mathematical background
//!
//! ```text
//! f_{a,b,c}(x,y;q) = (Σ_{r,s≥0} − Σ_{r,s<0}) (−1)^{r+s} x^r y^s q^{a·C(r,2)+b·rs+c·C(s,2)}
//! ```
//!
//! For coprime `p ≥ 1`, `p' ≥ 2`, `0 ≤ ℓ ≤ p'−2` and `m ≡ ℓ (mod 2)` the
//! normalized string function is
//!
//! ```text
//! 𝒞_{m,ℓ}(q) = (q)_∞^{-3} [ f_{1,p',2pp'}(q^{1+(m+ℓ)/2}, −q^{p(p'+ℓ+1)}; q)
//!                        − f_{1,p',2pp'}(q^{(m−ℓ)/2},  −q^{p(p'−ℓ−1)}; q) ]
//! ```
//!
//! and `C_{m,ℓ} = q^{s_λ} 𝒞_{m,ℓ}` with
//! `s_λ = −1/8 + (ℓ+1)²/(4(N+2)) − m²/(4N)`, `N = p'/p − 2`.

mod character;
mod lattice;
mod relations;

pub use character::{
    character, character_m_range, character_offset, string_valuation_bound, weyl_kac_numerator,
    weyl_kac_numerator_expr, weyl_kac_scaled_expr,
};
pub use lattice::{hecke_sum, hecke_lower_bound, HeckeParams};
pub use relations::{
    cross_spin_residual, cross_spin_residual_expr, integer_level_symmetries, quasi_periodic_shift,
    quasi_periodic_shift_expr, SymmetryOutcome,
};
pub(crate) use relations::theta_pair;

use crate::error::{QsvError, Result};
use crate::series::{Exponent, QZSeries};
use crate::theta::{theta_jn, ThetaArg};
use num_integer::Integer;
use num_rational::Rational64;
use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

/// Selects `𝒞_{m,ℓ}` (or `C_{m,ℓ}`) at admissible level `N = p'/p − 2`.
///
/// Both the level-`N` and the `(p,p')` superscript conventions resolve to
/// this key; see [`StringFnId::from_level`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StringFnId {
    pub p: i64,
    pub pprime: i64,
    pub m: i64,
    pub ell: i64,
}

impl StringFnId {
    /// Validates coprimality, parity, the spin range and a nonzero level.
    pub fn new(p: i64, pprime: i64, m: i64, ell: i64) -> Result<Self> {
        if p < 1 || pprime < 2 {
            return Err(QsvError::InvalidParameters(format!("need p ≥ 1 and p' ≥ 2, got ({p},{pprime})")));
        }
        if p.gcd(&pprime) != 1 {
            return Err(QsvError::InvalidParameters(format!("gcd(p,p') must be 1, got ({p},{pprime})")));
        }
        if (m - ell).rem_euclid(2) != 0 {
            return Err(QsvError::InvalidParameters(format!("m ≡ ℓ (mod 2) violated by (m,ℓ)=({m},{ell})")));
        }
        if ell < 0 || ell > pprime - 2 {
            return Err(QsvError::InvalidParameters(format!("0 ≤ ℓ ≤ p'−2 violated by ℓ={ell}")));
        }
        if pprime == 2 * p {
            return Err(QsvError::InvalidParameters("level N = 0 is excluded".into()));
        }
        Ok(StringFnId { p, pprime, m, ell })
    }

    /// The key for level `N = num/den`, i.e. `p = den`, `p' = num + 2·den`
    /// in lowest terms.
    pub fn from_level(num: i64, den: i64, m: i64, ell: i64) -> Result<Self> {
        let r = Rational64::new(num, den);
        Self::new(*r.denom(), r.numer() + 2 * r.denom(), m, ell)
    }

    /// `N = p'/p − 2`.
    pub fn level(&self) -> Rational64 {
        Rational64::new(self.pprime, self.p) - Rational64::from_integer(2)
    }

    /// `s_λ = −1/8 + (ℓ+1)²/(4(N+2)) − m²/(4N)`.
    pub fn s_lambda(&self) -> Rational64 {
        let n = self.level();
        let l1 = Rational64::from_integer((self.ell + 1) * (self.ell + 1));
        Rational64::new(-1, 8) + l1 / (Rational64::from_integer(4) * (n + 2))
            - Rational64::from_integer(self.m * self.m) / (Rational64::from_integer(4) * n)
    }

    /// The two Hecke sums whose difference is `(q)_∞³ 𝒞_{m,ℓ}`.
    pub fn hecke_pair(&self) -> (HeckeParams, HeckeParams) {
        let (p, pp, m, l) = (self.p, self.pprime, self.m, self.ell);
        let first = HeckeParams::new(
            1,
            pp,
            2 * p * pp,
            ThetaArg::q(Exponent::new(2 + m + l, 2)),
            ThetaArg::neg_q(p * (pp + l + 1)),
        );
        let second = HeckeParams::new(
            1,
            pp,
            2 * p * pp,
            ThetaArg::q(Exponent::new(m - l, 2)),
            ThetaArg::neg_q(p * (pp - l - 1)),
        );
        (first, second)
    }
}

type Cache = RwLock<HashMap<StringFnId, QZSeries>>;

fn cache() -> &'static Cache {
    static C: OnceLock<Cache> = OnceLock::new();
    C.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `(q)_∞^{-3}` below `trunc`.
pub(crate) fn qinf_inv_cubed(trunc: &Exponent) -> Result<QZSeries> {
    theta_jn(1, trunc)?.pow(-3)
}

/// `(q)_∞³ 𝒞_{m,ℓ}` as the Hecke difference, below `trunc`.
pub fn string_numerator(id: &StringFnId, trunc: &Exponent) -> Result<QZSeries> {
    let (f1, f2) = id.hecke_pair();
    Ok(hecke_sum(&f1, trunc)?.sub(&hecke_sum(&f2, trunc)?))
}

pub(crate) fn normalized(id: &StringFnId, trunc: &Exponent) -> Result<QZSeries> {
    if let Some(s) = cache().read().expect("cache poisoned").get(id) {
        if s.trunc() >= *trunc {
            return Ok(s.truncate(trunc));
        }
    }
    let num = string_numerator(id, trunc)?;
    let v = num.valuation().unwrap_or_else(|| trunc.clone()).min(Exponent::zero());
    if *trunc <= v {
        // every product term sits at or above val(num) ≥ trunc
        return Ok(QZSeries::zero(trunc));
    }
    let s = num.mul(&qinf_inv_cubed(&(trunc.clone() - v))?).truncate(trunc);
    let mut w = cache().write().expect("cache poisoned");
    let keep = w.get(id).is_some_and(|old| old.trunc() >= s.trunc());
    if !keep {
        w.insert(*id, s.clone());
    }
    Ok(s)
}

/// `𝒞_{m,ℓ}` (`normalized`) or `C_{m,ℓ} = q^{s_λ} 𝒞_{m,ℓ}`, below `trunc`.
pub fn string_coeff(id: &StringFnId, normalized_form: bool, trunc: &Exponent) -> Result<QZSeries> {
    if normalized_form {
        return normalized(id, trunc);
    }
    let s = Exponent::from_r64(id.s_lambda());
    let inner = normalized(id, &(trunc.clone() - s.clone()))?;
    Ok(inner.shift(&s, &Exponent::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::GaussianRational;

    fn t(n: i64) -> Exponent {
        Exponent::int(n)
    }

    #[test]
    fn level_one_vacuum_is_partition_series() {
        let id = StringFnId::new(1, 3, 0, 0).unwrap();
        let s = string_coeff(&id, true, &t(10)).unwrap();
        let p = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30];
        assert_eq!(s, QZSeries::from_int_coeffs(&p, 10));
    }

    #[test]
    fn s_lambda_for_level_one() {
        let id = StringFnId::new(1, 3, 0, 0).unwrap();
        assert_eq!(id.s_lambda(), Rational64::new(-1, 24));
    }

    #[test]
    fn invalid_ids_are_rejected() {
        assert!(StringFnId::new(2, 4, 0, 0).is_err());
        assert!(StringFnId::new(2, 5, 1, 0).is_err());
        assert!(StringFnId::new(2, 5, 0, 4).is_err());
        assert_eq!(StringFnId::from_level(1, 2, 0, 0).unwrap(), StringFnId::new(2, 5, 0, 0).unwrap());
    }

    #[test]
    fn unnormalized_form_carries_offset() {
        let id = StringFnId::new(1, 3, 0, 0).unwrap();
        let c = string_coeff(&id, false, &t(3)).unwrap();
        assert_eq!(c.valuation(), Some(Exponent::new(-1, 24)));
        assert_eq!(c.coeff(&Exponent::new(23, 24), &t(0)), GaussianRational::one());
    }
}
