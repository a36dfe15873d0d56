//! Internal coefficient storage: Gaussian integers in `i128` when they fit,
//! arbitrary Gaussian rationals otherwise.
//!
//! Invariant: `Big` never holds a value representable as `Int`, so derived
//! equality is value equality.

use super::gaussian::GaussianRational;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Coef {
    Int(i128, i128),
    Big(Box<GaussianRational>),
}

impl Default for Coef {
    fn default() -> Self {
        Coef::Int(0, 0)
    }
}

fn big_to_i128(r: &BigRational) -> Option<i128> {
    if r.is_integer() {
        r.numer().to_i128()
    } else {
        None
    }
}

impl Coef {
    pub const ZERO: Coef = Coef::Int(0, 0);
    pub const ONE: Coef = Coef::Int(1, 0);

    pub fn int(n: i64) -> Coef {
        Coef::Int(n as i128, 0)
    }

    pub fn from_gauss(g: GaussianRational) -> Coef {
        match (big_to_i128(&g.re), big_to_i128(&g.im)) {
            (Some(a), Some(b)) => Coef::Int(a, b),
            _ => Coef::Big(Box::new(g)),
        }
    }

    pub fn to_gauss(&self) -> GaussianRational {
        match self {
            Coef::Int(a, b) => GaussianRational::new(
                BigRational::from_integer(BigInt::from(*a)),
                BigRational::from_integer(BigInt::from(*b)),
            ),
            Coef::Big(g) => (**g).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coef::Int(a, b) => *a == 0 && *b == 0,
            Coef::Big(g) => g.is_zero(),
        }
    }

    pub fn is_integer(&self) -> bool {
        matches!(self, Coef::Int(_, 0))
    }

    pub fn add(&self, o: &Coef) -> Coef {
        if let (Coef::Int(a, b), Coef::Int(c, d)) = (self, o) {
            if let (Some(x), Some(y)) = (a.checked_add(*c), b.checked_add(*d)) {
                return Coef::Int(x, y);
            }
        }
        Coef::from_gauss(&self.to_gauss() + &o.to_gauss())
    }

    pub fn neg(&self) -> Coef {
        match self {
            Coef::Int(a, b) if *a != i128::MIN && *b != i128::MIN => Coef::Int(-a, -b),
            _ => Coef::from_gauss(-self.to_gauss()),
        }
    }

    pub fn sub(&self, o: &Coef) -> Coef {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Coef) -> Coef {
        if let (Coef::Int(a, b), Coef::Int(c, d)) = (self, o) {
            if *b == 0 && *d == 0 {
                if let Some(x) = a.checked_mul(*c) {
                    return Coef::Int(x, 0);
                }
            } else if let Some(v) = gauss_int_mul(*a, *b, *c, *d) {
                return v;
            }
        }
        Coef::from_gauss(&self.to_gauss() * &o.to_gauss())
    }

    /// `self += a·b`.
    pub fn add_mul(&mut self, a: &Coef, b: &Coef) {
        if let (Coef::Int(x, y), Coef::Int(p, r), Coef::Int(u, v)) = (&mut *self, a, b) {
            if *r == 0 && *v == 0 && *y == 0 {
                if let Some(s) = p.checked_mul(*u).and_then(|m| x.checked_add(m)) {
                    *x = s;
                    return;
                }
            } else if let Some(Coef::Int(m, n)) = gauss_int_mul(*p, *r, *u, *v) {
                if let (Some(s), Some(t)) = (x.checked_add(m), y.checked_add(n)) {
                    *x = s;
                    *y = t;
                    return;
                }
            }
        }
        let prod = a.mul(b);
        *self = self.add(&prod);
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Coef> {
        match self {
            Coef::Int(1, 0) => Some(Coef::Int(1, 0)),
            Coef::Int(-1, 0) => Some(Coef::Int(-1, 0)),
            Coef::Int(0, 1) => Some(Coef::Int(0, -1)),
            Coef::Int(0, -1) => Some(Coef::Int(0, 1)),
            _ => self.to_gauss().inv().map(Coef::from_gauss),
        }
    }
}

fn gauss_int_mul(a: i128, b: i128, c: i128, d: i128) -> Option<Coef> {
    let re = a.checked_mul(c)?.checked_sub(b.checked_mul(d)?)?;
    let im = a.checked_mul(d)?.checked_add(b.checked_mul(c)?)?;
    Some(Coef::Int(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes_to_big_and_back() {
        let big = Coef::Int(i128::MAX, 0);
        let s = big.add(&Coef::ONE);
        assert!(matches!(s, Coef::Big(_)));
        let back = s.sub(&Coef::ONE);
        assert_eq!(back, Coef::Int(i128::MAX, 0));
    }

    #[test]
    fn fractional_values_stay_exact() {
        let half = Coef::from_gauss(GaussianRational::from_ratio(1, 2));
        assert_eq!(half.add(&half), Coef::ONE);
        assert_eq!(half.inv().unwrap(), Coef::int(2));
    }

    #[test]
    fn gaussian_product() {
        let a = Coef::Int(1, 1);
        assert_eq!(a.mul(&a), Coef::Int(0, 2));
        let mut acc = Coef::int(3);
        acc.add_mul(&a, &Coef::Int(1, -1));
        assert_eq!(acc, Coef::int(5));
    }
}
