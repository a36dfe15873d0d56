//! Relations between string functions at one admissible level: the
//! quasi-periodic shift in `m`, the cross-spin relation, and the classical
//! symmetries at integer level.

use super::{string_coeff, StringFnId};
use crate::error::{QsvError, Result};
use crate::registry::expr::Expr;
use crate::series::{Exponent, QZSeries};
use num_rational::Rational64;
use serde::Serialize;

fn c2(n: i64) -> i64 {
    n * (n - 1) / 2
}

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn q(r: Rational64) -> Expr {
    Expr::q(Exponent::from_r64(r))
}

fn ri(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

/// `j(−q^{mp'+a}; q^{2pp'}) − q^{mp'−m·a/p} j(−q^{−mp'+a}; q^{2pp'})`
/// with `a = p·w`; shared by both relations.
pub(crate) fn theta_pair(p: i64, pp: i64, m: i64, w: i64) -> Expr {
    let b = 2 * p * pp;
    Expr::jqneg(m * pp + p * w, b) - Expr::q(m * pp - m * w) * Expr::jqneg(-m * pp + p * w, b)
}

fn check_odd_level(p: i64, j: i64) -> Result<i64> {
    if p < 1 || j < 1 {
        return Err(QsvError::InvalidParameters(format!("need p, j ≥ 1, got ({p},{j})")));
    }
    let pp = 2 * p + j;
    StringFnId::new(p, pp, 0, 0)?;
    Ok(pp)
}

/// `(q)³C_{2jt+2s+1,2r+1} − (q)³C_{2s+1,2r+1}` and its finite theta sum at
/// `p' = 2p+j`. For `t ≤ 0` the outer sum `Σ_{i=1}^{t}` means `−Σ_{i=t+1}^{0}`.
pub fn quasi_periodic_shift_expr(p: i64, j: i64, s: i64, r: i64, t: i64) -> Result<(Expr, Expr)> {
    let pp = check_odd_level(p, j)?;
    let ell = 2 * r + 1;
    let a = StringFnId::new(p, pp, 2 * j * t + 2 * s + 1, ell)?;
    let b = StringFnId::new(p, pp, 2 * s + 1, ell)?;
    let cube = Expr::jn(1).pow(3);
    let lhs = cube.clone() * Expr::string_fn(a, false) - cube * Expr::string_fn(b, false);

    let e0 = Rational64::new(-1, 8) + Rational64::new(p * (2 * r + 2) * (2 * r + 2), 4 * pp) + ri(c2(p + 1))
        - ri(p * (r + 1 - s))
        - Rational64::new(p * (2 * s + 1) * (2 * s + 1), 4 * j);
    let (range, outer): (Vec<i64>, i64) = if t >= 1 { ((1..=t).collect(), 1) } else { ((t + 1..=0).collect(), -1) };
    let mut terms = Vec::new();
    for i in range {
        let qi = ri(-2 * p * j * c2(i) - p * (2 * s + 1) * i);
        for m in 1..p {
            let inner = Expr::q(m * (j * i + s - j + 1)) - Expr::q(-m * (j * i + s));
            terms.push(
                Expr::int(outer * sign(m)) * q(qi + ri(c2(m + 1) + m * (r - p))) * inner * theta_pair(p, pp, m, 2 * r + 2),
            );
        }
    }
    let rhs = Expr::int(sign(p)) * q(e0) * Expr::sum(terms);
    Ok((lhs, rhs))
}

/// `lhs − rhs` of the quasi-periodic shift, below `trunc`; zero when the
/// relation holds.
pub fn quasi_periodic_shift(p: i64, j: i64, s: i64, r: i64, t: i64, trunc: &Exponent) -> Result<QZSeries> {
    let (l, r) = quasi_periodic_shift_expr(p, j, s, r, t)?;
    (l - r).eval(trunc)
}

/// `(q)³𝒞_{2i−1,2r−1} − (−1)^{p+1} q^{p(i−r)+C(p,2)} (q)³𝒞_{2i−1−j,2p−2r+j−1}`
/// and the finite theta sum it equals at `p' = 2p+j`.
pub fn cross_spin_residual_expr(p: i64, j: i64, i: i64, r: i64) -> Result<(Expr, Expr)> {
    let pp = check_odd_level(p, j)?;
    let a = StringFnId::new(p, pp, 2 * i - 1, 2 * r - 1)?;
    let b = StringFnId::new(p, pp, 2 * i - 1 - j, 2 * p - 2 * r + j - 1)?;
    let cube = Expr::jn(1).pow(3);
    let lhs = cube.clone() * Expr::string_fn(a, true)
        - Expr::int(sign(p + 1)) * Expr::q(p * (i - r) + c2(p)) * cube * Expr::string_fn(b, true);
    let bb = 2 * p * pp;
    let terms = (1..p).map(|m| {
        Expr::int(sign(m))
            * Expr::q(c2(m + 1) - m * (i + p + r))
            * (Expr::jqneg(m * pp - 2 * p * r, bb) - Expr::q(2 * r * (m - p)) * Expr::jqneg(m * pp + 2 * p * r, bb))
    });
    let rhs = Expr::int(sign(p)) * Expr::q(c2(p) + p * (i + r)) * Expr::sum(terms);
    Ok((lhs, rhs))
}

/// `lhs − rhs` of the cross-spin relation, below `trunc`.
pub fn cross_spin_residual(p: i64, j: i64, i: i64, r: i64, trunc: &Exponent) -> Result<QZSeries> {
    let (l, r) = cross_spin_residual_expr(p, j, i, r)?;
    (l - r).eval(trunc)
}

/// Tally of the integer-level symmetry checks.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SymmetryOutcome {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SymmetryOutcome {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// At `p = 1`, `p' = N+2` checks `C_{m,ℓ} = C_{−m,ℓ} = C_{N−m,N−ℓ} = C_{m+2N,ℓ}`
/// for every spin and every `m ∈ [−2N, 2N]` of matching parity.
pub fn integer_level_symmetries(n: i64, trunc: &Exponent) -> Result<SymmetryOutcome> {
    if n < 1 {
        return Err(QsvError::InvalidParameters(format!("integer level must be ≥ 1, got {n}")));
    }
    let pp = n + 2;
    let c = |m: i64, l: i64| string_coeff(&StringFnId::new(1, pp, m, l)?, false, trunc);
    let mut out = SymmetryOutcome::default();
    for l in 0..=n {
        for m in (-2 * n..=2 * n).filter(|m| (m - l).rem_euclid(2) == 0) {
            let base = c(m, l)?;
            for (label, other) in [
                ("reflection", c(-m, l)?),
                ("spin flip", c(n - m, n - l)?),
                ("period", c(m + 2 * n, l)?),
            ] {
                out.checked += 1;
                let cmp = base.equal_up_to(&other, trunc)?;
                if !cmp.is_equal() {
                    out.failures.push(format!("{label} at (m,ℓ)=({m},{l})"));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: i64) -> Exponent {
        Exponent::int(n)
    }

    #[test]
    fn integer_levels_are_symmetric() {
        for n in 1..=3 {
            let o = integer_level_symmetries(n, &t(15)).unwrap();
            assert!(o.ok(), "N={n}: {:?}", o.failures);
        }
    }

    #[test]
    fn quasi_periodicity_at_level_one_half() {
        for (s, r, tt) in [(0, 0, 1), (0, 1, 1), (1, 0, 2), (0, 0, -1)] {
            let d = quasi_periodic_shift(2, 1, s, r, tt, &t(25)).unwrap();
            assert!(d.is_zero(), "(s,r,t)=({s},{r},{tt}): {d}");
        }
    }

    #[test]
    fn cross_spin_at_level_one_half() {
        for (i, r) in [(1, 1), (2, 1), (1, 2), (0, 2)] {
            let d = cross_spin_residual(2, 1, i, r, &t(25)).unwrap();
            assert!(d.is_zero(), "(i,r)=({i},{r}): {d}");
        }
    }
}
