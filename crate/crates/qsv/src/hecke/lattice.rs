//! Lattice enumeration for Hecke-type double sums.

use crate::error::{QsvError, Result};
use crate::series::{Coef, Exponent, QZSeries, Term};
use crate::theta::{r64_of, sc, unit_coef, unit_inv, unit_pow, ThetaArg};
use num_integer::Integer;

/// Parameters of `f_{a,b,c}(x,y;q)` with `z`-free signed monomials `x, y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HeckeParams {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub x: ThetaArg,
    pub y: ThetaArg,
}

impl HeckeParams {
    pub fn new(a: i64, b: i64, c: i64, x: ThetaArg, y: ThetaArg) -> Self {
        HeckeParams { a, b, c, x, y }
    }
}

/// Lattice radius beyond which enumeration is declared non-terminating.
const MAX_RADIUS: i64 = 1 << 22;

/// The form `E(r,s) = A·C(r,2) + B·rs + C·C(s,2) + α·r + β·s + κ` on
/// `r, s ≥ 0`, all in scaled integers, with `A, B, C > 0`.
struct Quadrant {
    a: i128,
    b: i128,
    c: i128,
    alpha: i128,
    beta: i128,
    kappa: i128,
}

impl Quadrant {
    fn e(&self, r: i128, s: i128) -> i128 {
        self.a * r * (r - 1) / 2 + self.b * r * s + self.c * s * (s - 1) / 2 + self.alpha * r + self.beta * s + self.kappa
    }

    /// `min_{s≥0} C·C(s,2) + β·s`.
    fn min_s(&self) -> i128 {
        let f = |s: i128| self.c * s * (s - 1) / 2 + self.beta * s;
        let v = ((self.c - 2 * self.beta) as f64 / (2 * self.c) as f64).round().max(0.0) as i128;
        [v.saturating_sub(1).max(0), v, v + 1].into_iter().map(f).min().expect("nonempty")
    }

    /// Sound lower bound for every exponent in the quadrant.
    fn lower_bound(&self) -> i128 {
        let g = |r: i128| self.a * r * (r - 1) / 2 + self.alpha * r;
        let v = ((self.a - 2 * self.alpha) as f64 / (2 * self.a) as f64).round().max(0.0) as i128;
        let mr = [v.saturating_sub(1).max(0), v, v + 1].into_iter().map(g).min().expect("nonempty");
        mr + self.min_s() + self.kappa
    }

    /// Every `(r, s, E)` with `E < limit`, `r` outer and `s` inner.
    fn visit(&self, limit: i128, mut f: impl FnMut(i64, i64, i128)) -> Result<()> {
        let ms = self.min_s();
        let mut r: i128 = 0;
        loop {
            // b·r·s ≥ 0 on the quadrant, so this bounds the whole column
            let col_lb = self.a * r * (r - 1) / 2 + self.alpha * r + ms + self.kappa;
            let rising = self.a * r + self.alpha >= 0;
            if col_lb >= limit && rising {
                return Ok(());
            }
            if r > MAX_RADIUS as i128 {
                return Err(QsvError::NonTerminatingEnumeration(MAX_RADIUS));
            }
            let mut s: i128 = 0;
            loop {
                let e = self.e(r, s);
                if e < limit {
                    f(r as i64, s as i64, e);
                } else if self.c * s + self.b * r + self.beta >= 0 {
                    break;
                }
                if s > MAX_RADIUS as i128 {
                    return Err(QsvError::NonTerminatingEnumeration(MAX_RADIUS));
                }
                s += 1;
            }
            r += 1;
        }
    }
}

struct Prepared {
    qd: i64,
    limit: i128,
    pos: Quadrant,
    neg: Quadrant,
}

fn prepare(h: &HeckeParams, trunc: &Exponent) -> Result<Prepared> {
    if h.a <= 0 || h.b <= 0 || h.c <= 0 {
        return Err(QsvError::InvalidParameters("Hecke sums need a, b, c > 0".into()));
    }
    if !h.x.is_z_free() || !h.y.is_z_free() {
        return Err(QsvError::InvalidParameters("Hecke arguments must be z-free".into()));
    }
    let (al, _) = h.x.r64()?;
    let (be, _) = h.y.r64()?;
    let t = r64_of(trunc)?;
    let qd = al.denom().lcm(be.denom()).lcm(t.denom());
    let (a, b, c) = ((h.a * qd) as i128, (h.b * qd) as i128, (h.c * qd) as i128);
    let (alpha, beta) = (sc(al, qd) as i128, sc(be, qd) as i128);
    let pos = Quadrant { a, b, c, alpha, beta, kappa: 0 };
    // r = −1−r', s = −1−s' maps the negative quadrant onto r', s' ≥ 0
    let neg = Quadrant {
        a,
        b,
        c,
        alpha: 2 * a + b - alpha,
        beta: 2 * c + b - beta,
        kappa: a + b + c - alpha - beta,
    };
    Ok(Prepared { qd, limit: sc(t, qd) as i128, pos, neg })
}

/// `f_{a,b,c}(x,y;q)` below `trunc`, enumerating exactly the lattice points
/// whose term lies below the truncation.
pub fn hecke_sum(h: &HeckeParams, trunc: &Exponent) -> Result<QZSeries> {
    let pr = prepare(h, trunc)?;
    let ux = h.x.coeff;
    let uy = h.y.coeff;
    let mut terms = Vec::new();
    pr.pos.visit(pr.limit, |r, s, e| {
        let sign = if (r + s) % 2 == 0 { 1 } else { -1 };
        let c = Coef::int(sign).mul(&unit_coef(unit_pow(ux, r))).mul(&unit_coef(unit_pow(uy, s)));
        terms.push(Term { q: e as i64, z: 0, c });
    })?;
    pr.neg.visit(pr.limit, |r1, s1, e| {
        let (r, s) = (-1 - r1, -1 - s1);
        let sign = if (r + s).rem_euclid(2) == 0 { -1 } else { 1 };
        let c = Coef::int(sign)
            .mul(&unit_coef(unit_pow(unit_inv(ux), -r)))
            .mul(&unit_coef(unit_pow(unit_inv(uy), -s)));
        terms.push(Term { q: e as i64, z: 0, c });
    })?;
    Ok(QZSeries::from_raw(pr.qd, 1, pr.limit as i64, terms))
}

/// A sound lower bound for the `q`-order of `f_{a,b,c}(x,y;q)`.
pub fn hecke_lower_bound(h: &HeckeParams) -> Result<Exponent> {
    let pr = prepare(h, &Exponent::zero())?;
    let lb = pr.pos.lower_bound().min(pr.neg.lower_bound());
    Ok(Exponent::new(lb as i64, pr.qd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::theta_jn;

    /// Direct double loop over a generous box: the oracle for `hecke_sum`.
    fn brute(a: i64, b: i64, c: i64, ax: i64, sx: i64, ay: i64, sy: i64, t: i64) -> Vec<i64> {
        let mut out = vec![0i64; t as usize];
        let rad = 4 * t + 20;
        for r in -rad..=rad {
            for s in -rad..=rad {
                let quad = if r >= 0 && s >= 0 {
                    1
                } else if r < 0 && s < 0 {
                    -1
                } else {
                    continue;
                };
                let e = a * r * (r - 1) / 2 + b * r * s + c * s * (s - 1) / 2 + ax * r + ay * s;
                if e < 0 || e >= t {
                    assert!(e >= 0, "negative exponent outside oracle range");
                    continue;
                }
                let sg = if (r + s).rem_euclid(2) == 0 { 1 } else { -1 };
                let ux = if sx < 0 && r.rem_euclid(2) == 1 { -1 } else { 1 };
                let uy = if sy < 0 && s.rem_euclid(2) == 1 { -1 } else { 1 };
                out[e as usize] += quad * sg * ux * uy;
            }
        }
        out
    }

    #[test]
    fn f121_is_q_infinity_squared() {
        let h = HeckeParams::new(1, 2, 1, ThetaArg::q(1), ThetaArg::q(1));
        let s = hecke_sum(&h, &Exponent::int(40)).unwrap();
        let j1 = theta_jn(1, &Exponent::int(40)).unwrap();
        assert_eq!(s, j1.mul(&j1));
    }

    #[test]
    fn matches_brute_force_on_admissible_instances() {
        for (x, y, sy) in [(1, 14, -1), (0, 6, -1), (2, 3, 1), (3, 1, -1)] {
            let h = HeckeParams::new(
                1,
                5,
                20,
                ThetaArg::q(x),
                if sy < 0 { ThetaArg::neg_q(y) } else { ThetaArg::q(y) },
            );
            let got = hecke_sum(&h, &Exponent::int(30)).unwrap();
            let want = QZSeries::from_int_coeffs(&brute(1, 5, 20, x, 1, y, sy, 30), 30);
            assert_eq!(got, want, "x=q^{x}, y={sy}q^{y}");
        }
    }

    #[test]
    fn empty_window_is_zero() {
        let h = HeckeParams::new(1, 2, 1, ThetaArg::q(1), ThetaArg::q(1));
        assert!(hecke_sum(&h, &Exponent::int(0)).unwrap().is_zero());
    }
}
