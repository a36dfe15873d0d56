//! Exact truncated bivariate Laurent series in `q` and `z`.
//!
//! A [`QZSeries`] stores finitely many nonzero terms `c·q^a·z^b` with
//! rational `a, b` and Gaussian-rational `c`, plus a truncation order `T`:
//! every term with `a < T` is present, nothing at or above `T` is known.
//!
//! Exponents are held internally as integers over per-series common
//! denominators (`qden`, `zden`), kept in lowest terms so that structural
//! equality is value equality.

mod coef;
mod exponent;
mod gaussian;

pub(crate) use coef::Coef;
pub use exponent::Exponent;
pub use gaussian::GaussianRational;

use crate::error::{QsvError, Result};
use exponent::lcm;
use num_integer::Integer;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// One stored term: `c · q^(q/qden) · z^(z/zden)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Term {
    pub q: i64,
    pub z: i64,
    pub c: Coef,
}

/// A unit of ℚ(i) used as the sign in `q ↦ sign·q^power`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Unit {
    One,
    MinusOne,
    I,
    MinusI,
}

impl Unit {
    /// `self^e` for integer `e`.
    fn pow_coef(self, e: i64) -> Coef {
        let k = match self {
            Unit::One => 0,
            Unit::MinusOne => 2 * e,
            Unit::I => e,
            Unit::MinusI => 3 * e,
        };
        match k.rem_euclid(4) {
            0 => Coef::Int(1, 0),
            1 => Coef::Int(0, 1),
            2 => Coef::Int(-1, 0),
            _ => Coef::Int(0, -1),
        }
    }
}

/// The first coefficient at which two series disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstDifference {
    pub q: Exponent,
    pub z: Exponent,
    pub lhs: GaussianRational,
    pub rhs: GaussianRational,
}

/// Outcome of [`QZSeries::equal_up_to`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub first_difference: Option<FirstDifference>,
}

impl Comparison {
    pub fn is_equal(&self) -> bool {
        self.first_difference.is_none()
    }
}

/// Sparse truncated Laurent series in `q` (rational exponents, bounded below)
/// and `z` (finitely many exponents per `q`-slice).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QZSeries {
    qden: i64,
    zden: i64,
    trunc: i64,
    terms: Vec<Term>,
}

/// Dense accumulators above this many cells fall back to hashing.
const DENSE_LIMIT: usize = 1 << 20;

fn gcd_all<I: IntoIterator<Item = i64>>(start: i64, it: I) -> i64 {
    it.into_iter().fold(start, |g, v| g.gcd(&v))
}

impl QZSeries {
    // ---- construction -------------------------------------------------

    /// Build from scaled terms; sorts, merges, drops zeros and terms at or
    /// above the truncation, and canonicalizes denominators.
    pub(crate) fn from_raw(qden: i64, zden: i64, trunc: i64, mut terms: Vec<Term>) -> Self {
        assert!(qden > 0 && zden > 0, "denominators must be positive");
        terms.retain(|t| t.q < trunc && !t.c.is_zero());
        terms.sort_by(|a, b| (a.q, a.z).cmp(&(b.q, b.z)));
        let mut merged: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.last_mut() {
                Some(last) if last.q == t.q && last.z == t.z => {
                    last.c = last.c.add(&t.c);
                }
                _ => merged.push(t),
            }
        }
        merged.retain(|t| !t.c.is_zero());
        let mut s = QZSeries { qden, zden, trunc, terms: merged };
        s.canonicalize();
        s
    }

    fn canonicalize(&mut self) {
        let gq = gcd_all(self.qden.gcd(&self.trunc), self.terms.iter().map(|t| t.q));
        let gz = gcd_all(self.zden, self.terms.iter().map(|t| t.z));
        if gq > 1 {
            self.qden /= gq;
            self.trunc /= gq;
            for t in &mut self.terms {
                t.q /= gq;
            }
        }
        if gz > 1 {
            self.zden /= gz;
            for t in &mut self.terms {
                t.z /= gz;
            }
        }
    }

    fn rescaled(&self, qden: i64, zden: i64) -> QZSeries {
        debug_assert!(qden % self.qden == 0 && zden % self.zden == 0);
        let fq = qden / self.qden;
        let fz = zden / self.zden;
        if fq == 1 && fz == 1 {
            return self.clone();
        }
        QZSeries {
            qden,
            zden,
            trunc: self.trunc * fq,
            terms: self
                .terms
                .iter()
                .map(|t| Term { q: t.q * fq, z: t.z * fz, c: t.c.clone() })
                .collect(),
        }
    }

    fn aligned(a: &QZSeries, b: &QZSeries) -> (QZSeries, QZSeries) {
        let qd = lcm(a.qden, b.qden);
        let zd = lcm(a.zden, b.zden);
        (a.rescaled(qd, zd), b.rescaled(qd, zd))
    }

    /// Scale a rational exponent to this series' grid, widening the grid
    /// when needed. Returns the (possibly rescaled) series and the value.
    fn with_q_on_grid(&self, e: &Exponent) -> Result<(QZSeries, i64)> {
        let r = e
            .to_r64()
            .ok_or_else(|| QsvError::ExponentOverflow(e.to_string()))?;
        let qd = lcm(self.qden, *r.denom());
        let s = self.rescaled(qd, self.zden);
        Ok((s, r.numer() * (qd / r.denom())))
    }

    /// The zero series known up to `trunc`.
    pub fn zero(trunc: &Exponent) -> Self {
        let r = trunc.to_r64().expect("truncation out of range");
        QZSeries { qden: *r.denom(), zden: 1, trunc: *r.numer(), terms: vec![] }
    }

    /// The monomial `c·q^eq·z^ez` known up to `trunc`.
    pub fn monomial(c: GaussianRational, eq: &Exponent, ez: &Exponent, trunc: &Exponent) -> Self {
        let rq = eq.to_r64().expect("exponent out of range");
        let rz = ez.to_r64().expect("exponent out of range");
        let rt = trunc.to_r64().expect("truncation out of range");
        let qd = lcm(*rq.denom(), *rt.denom());
        let zd = *rz.denom();
        QZSeries::from_raw(
            qd,
            zd,
            rt.numer() * (qd / rt.denom()),
            vec![Term { q: rq.numer() * (qd / rq.denom()), z: *rz.numer(), c: Coef::from_gauss(c) }],
        )
    }

    /// The constant `c` known up to `trunc`.
    pub fn constant(c: GaussianRational, trunc: &Exponent) -> Self {
        Self::monomial(c, &Exponent::zero(), &Exponent::zero(), trunc)
    }

    /// The constant one known up to `trunc`.
    pub fn one(trunc: &Exponent) -> Self {
        Self::constant(GaussianRational::one(), trunc)
    }

    /// Build from `(e_q, e_z, coefficient)` triples; duplicates are summed.
    pub fn from_terms<I>(terms: I, trunc: &Exponent) -> Self
    where
        I: IntoIterator<Item = (Exponent, Exponent, GaussianRational)>,
    {
        let items: Vec<_> = terms.into_iter().collect();
        let rt = trunc.to_r64().expect("truncation out of range");
        let mut qd = *rt.denom();
        let mut zd = 1i64;
        let mut raw = Vec::with_capacity(items.len());
        for (eq, ez, c) in &items {
            let rq = eq.to_r64().expect("exponent out of range");
            let rz = ez.to_r64().expect("exponent out of range");
            qd = lcm(qd, *rq.denom());
            zd = lcm(zd, *rz.denom());
            raw.push((rq, rz, c.clone()));
        }
        let terms = raw
            .into_iter()
            .map(|(rq, rz, c)| Term {
                q: rq.numer() * (qd / rq.denom()),
                z: rz.numer() * (zd / rz.denom()),
                c: Coef::from_gauss(c),
            })
            .collect();
        QZSeries::from_raw(qd, zd, rt.numer() * (qd / rt.denom()), terms)
    }

    /// Series in `q` alone with integer exponents `0..coeffs.len()` from
    /// a dense integer coefficient list.
    pub fn from_int_coeffs(coeffs: &[i64], trunc: i64) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| Term { q: k as i64, z: 0, c: Coef::int(c) })
            .collect();
        QZSeries::from_raw(1, 1, trunc, terms)
    }

    // ---- inspection ---------------------------------------------------

    pub fn trunc(&self) -> Exponent {
        Exponent::new(self.trunc, self.qden)
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True when no term below the truncation is nonzero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when every stored term has `z`-exponent zero.
    pub fn is_z_free(&self) -> bool {
        self.terms.iter().all(|t| t.z == 0)
    }

    /// Iterate the stored terms as `(e_q, e_z, coefficient)` in increasing
    /// `(e_q, e_z)` order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, Exponent, GaussianRational)> + '_ {
        self.terms.iter().map(move |t| {
            (Exponent::new(t.q, self.qden), Exponent::new(t.z, self.zden), t.c.to_gauss())
        })
    }

    /// Coefficient of `q^eq z^ez`; zero when absent.
    ///
    /// Panics if `eq` is at or above the truncation, where the coefficient
    /// is unknown.
    pub fn coeff(&self, eq: &Exponent, ez: &Exponent) -> GaussianRational {
        assert!(*eq < self.trunc(), "coefficient above truncation requested");
        let (Some(q), Some(z)) = (eq.scaled(self.qden), ez.scaled(self.zden)) else {
            return GaussianRational::zero();
        };
        match self.terms.binary_search_by(|t| (t.q, t.z).cmp(&(q, z))) {
            Ok(i) => self.terms[i].c.to_gauss(),
            Err(_) => GaussianRational::zero(),
        }
    }

    /// Smallest `q`-exponent present, `None` for the zero series.
    pub fn valuation(&self) -> Option<Exponent> {
        self.terms.first().map(|t| Exponent::new(t.q, self.qden))
    }

    /// Coefficients of integer powers `q^0..q^{n-1}` of the `z^0` slice;
    /// panics if `n` exceeds the truncation.
    pub fn int_coeffs(&self, n: usize) -> Vec<GaussianRational> {
        (0..n as i64).map(|k| self.coeff(&Exponent::int(k), &Exponent::zero())).collect()
    }

    /// True when every coefficient is a rational integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.iter().all(|t| t.c.is_integer())
    }

    /// The `q`-series multiplying `z^ez`.
    pub fn z_coefficient(&self, ez: &Exponent) -> QZSeries {
        let Some(z) = ez.scaled(self.zden) else {
            return QZSeries { qden: self.qden, zden: 1, trunc: self.trunc, terms: vec![] };
        };
        let terms = self
            .terms
            .iter()
            .filter(|t| t.z == z)
            .map(|t| Term { q: t.q, z: 0, c: t.c.clone() })
            .collect();
        QZSeries::from_raw(self.qden, 1, self.trunc, terms)
    }

    // ---- ring operations ----------------------------------------------

    /// Coefficient-wise sum; truncation is the smaller of the two.
    pub fn add(&self, other: &QZSeries) -> QZSeries {
        let (a, b) = Self::aligned(self, other);
        let trunc = a.trunc.min(b.trunc);
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() || j < b.terms.len() {
            let ka = a.terms.get(i).map(|t| (t.q, t.z));
            let kb = b.terms.get(j).map(|t| (t.q, t.z));
            match (ka, kb) {
                (Some(x), Some(y)) if x == y => {
                    out.push(Term { q: x.0, z: x.1, c: a.terms[i].c.add(&b.terms[j].c) });
                    i += 1;
                    j += 1;
                }
                (Some(x), Some(y)) if x < y => {
                    out.push(a.terms[i].clone());
                    i += 1;
                }
                (Some(_), None) => {
                    out.push(a.terms[i].clone());
                    i += 1;
                }
                _ => {
                    out.push(b.terms[j].clone());
                    j += 1;
                }
            }
        }
        QZSeries::from_raw(a.qden, a.zden, trunc, out)
    }

    pub fn neg(&self) -> QZSeries {
        QZSeries {
            qden: self.qden,
            zden: self.zden,
            trunc: self.trunc,
            terms: self.terms.iter().map(|t| Term { q: t.q, z: t.z, c: t.c.neg() }).collect(),
        }
    }

    pub fn sub(&self, other: &QZSeries) -> QZSeries {
        self.add(&other.neg())
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, c: &GaussianRational) -> QZSeries {
        let k = Coef::from_gauss(c.clone());
        self.scale_coef(&k)
    }

    pub(crate) fn scale_coef(&self, k: &Coef) -> QZSeries {
        let terms = self.terms.iter().map(|t| Term { q: t.q, z: t.z, c: t.c.mul(k) }).collect();
        QZSeries::from_raw(self.qden, self.zden, self.trunc, terms)
    }

    /// Multiply by the monomial `q^eq z^ez`; the truncation moves by `eq`.
    pub fn shift(&self, eq: &Exponent, ez: &Exponent) -> QZSeries {
        let rq = eq.to_r64().expect("exponent out of range");
        let rz = ez.to_r64().expect("exponent out of range");
        let qd = lcm(self.qden, *rq.denom());
        let zd = lcm(self.zden, *rz.denom());
        let s = self.rescaled(qd, zd);
        let dq = rq.numer() * (qd / rq.denom());
        let dz = rz.numer() * (zd / rz.denom());
        let terms = s.terms.into_iter().map(|t| Term { q: t.q + dq, z: t.z + dz, c: t.c }).collect();
        QZSeries::from_raw(qd, zd, s.trunc + dq, terms)
    }

    /// Lower the truncation to `order` (no-op if already lower).
    pub fn truncate(&self, order: &Exponent) -> QZSeries {
        let (s, t) = self.with_q_on_grid(order).expect("order out of range");
        let trunc = t.min(s.trunc);
        QZSeries::from_raw(s.qden, s.zden, trunc, s.terms)
    }

    /// Truncated Cauchy product.
    ///
    /// The result is complete below `min(T_a + v_b, T_b + v_a)` where `v` is
    /// the minimal `q`-order of the partner (its truncation if it is zero).
    pub fn mul(&self, other: &QZSeries) -> QZSeries {
        let (a, b) = Self::aligned(self, other);
        let va = a.terms.first().map_or(a.trunc, |t| t.q);
        let vb = b.terms.first().map_or(b.trunc, |t| t.q);
        let trunc = (a.trunc + vb).min(b.trunc + va);
        if a.terms.is_empty() || b.terms.is_empty() || va + vb >= trunc {
            return QZSeries::from_raw(a.qden, a.zden, trunc, vec![]);
        }
        let gq = gcd_all(
            gcd_all(0, a.terms.iter().map(|t| t.q - va)),
            b.terms.iter().map(|t| t.q - vb),
        )
        .max(1);
        let (za_lo, za_hi) = z_range(&a.terms);
        let (zb_lo, zb_hi) = z_range(&b.terms);
        let gz = gcd_all(
            gcd_all(0, a.terms.iter().map(|t| t.z - za_lo)),
            b.terms.iter().map(|t| t.z - zb_lo),
        )
        .max(1);
        let q0 = va + vb;
        let z0 = za_lo + zb_lo;
        let nq = ((trunc - q0 + gq - 1) / gq) as usize;
        let nz = ((za_hi + zb_hi - z0) / gz + 1) as usize;
        let mut out: Vec<Term>;
        if nq.saturating_mul(nz) <= DENSE_LIMIT {
            let mut acc = vec![Coef::ZERO; nq * nz];
            for ta in &a.terms {
                if ta.q + vb >= trunc {
                    break;
                }
                for tb in &b.terms {
                    let q = ta.q + tb.q;
                    if q >= trunc {
                        break;
                    }
                    let idx = ((q - q0) / gq) as usize * nz + ((ta.z + tb.z - z0) / gz) as usize;
                    acc[idx].add_mul(&ta.c, &tb.c);
                }
            }
            out = Vec::new();
            for (idx, c) in acc.into_iter().enumerate() {
                if !c.is_zero() {
                    out.push(Term {
                        q: q0 + (idx / nz) as i64 * gq,
                        z: z0 + (idx % nz) as i64 * gz,
                        c,
                    });
                }
            }
        } else {
            let mut acc: HashMap<(i64, i64), Coef> = HashMap::new();
            for ta in &a.terms {
                if ta.q + vb >= trunc {
                    break;
                }
                for tb in &b.terms {
                    let q = ta.q + tb.q;
                    if q >= trunc {
                        break;
                    }
                    acc.entry((q, ta.z + tb.z)).or_default().add_mul(&ta.c, &tb.c);
                }
            }
            out = acc.into_iter().map(|((q, z), c)| Term { q, z, c }).collect();
        }
        QZSeries::from_raw(a.qden, a.zden, trunc, out)
    }

    /// Inverse of a series whose lowest `q`-slice is a single monomial.
    ///
    /// For `a = c·q^α·z^β·(1 + U)` known below `T`, the inverse is known
    /// below `T − 2α`.
    pub fn invert_unit(&self) -> Result<QZSeries> {
        let Some(lead) = self.terms.first() else {
            return Err(QsvError::NotAUnit("zero series".into()));
        };
        if self.terms.get(1).is_some_and(|t| t.q == lead.q) {
            return Err(QsvError::NotAUnit(format!(
                "lowest q-slice q^{} has several z-terms",
                Exponent::new(lead.q, self.qden)
            )));
        }
        let (alpha, beta) = (lead.q, lead.z);
        let cinv = lead.c.inv().expect("stored coefficients are nonzero");
        let rel = self.trunc - alpha;
        let mut slices: BTreeMap<i64, Vec<(i64, Coef)>> = BTreeMap::new();
        for t in &self.terms[1..] {
            slices.entry(t.q - alpha).or_default().push((t.z - beta, t.c.mul(&cinv)));
        }
        let g = gcd_all(0, slices.keys().copied()).max(1);
        let nslices = ((rel + g - 1) / g).max(0) as usize;
        let u: Vec<(usize, &Vec<(i64, Coef)>)> =
            slices.iter().map(|(d, v)| ((*d / g) as usize, v)).collect();
        let mut r: Vec<BTreeMap<i64, Coef>> = Vec::with_capacity(nslices);
        for k in 0..nslices {
            let mut acc: BTreeMap<i64, Coef> = BTreeMap::new();
            if k == 0 {
                acc.insert(0, Coef::ONE);
            } else {
                for (d, ud) in &u {
                    if *d > k {
                        break;
                    }
                    for (zr, cr) in &r[k - d] {
                        for (zu, cu) in ud.iter() {
                            acc.entry(zr + zu).or_default().add_mul(cr, cu);
                        }
                    }
                }
                acc = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(z, c)| (z, c.neg())).collect();
            }
            r.push(acc);
        }
        let mut out = Vec::new();
        for (k, slice) in r.into_iter().enumerate() {
            for (z, c) in slice {
                out.push(Term { q: k as i64 * g - alpha, z: z - beta, c: c.mul(&cinv) });
            }
        }
        Ok(QZSeries::from_raw(self.qden, self.zden, self.trunc - 2 * alpha, out))
    }

    /// `self^n` for any integer `n` (negative powers require a unit).
    pub fn pow(&self, n: i64) -> Result<QZSeries> {
        let base = if n < 0 { self.invert_unit()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc: Option<QZSeries> = None;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => b.clone(),
                    Some(x) => x.mul(&b),
                });
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc.unwrap_or_else(|| QZSeries::one(&self.trunc().max(Exponent::zero()))))
    }

    /// Apply `q ↦ sign·q^power` term-wise; the truncation scales by `power`.
    ///
    /// A non-trivial `sign` needs every `q`-exponent to be an integer.
    pub fn substitute_q(&self, sign: Unit, power: &Exponent) -> Result<QZSeries> {
        let p = power
            .to_r64()
            .ok_or_else(|| QsvError::ExponentOverflow(power.to_string()))?;
        if *p.numer() <= 0 {
            return Err(QsvError::InvalidParameters("substitution power must be positive".into()));
        }
        let (pn, pd) = (*p.numer(), *p.denom());
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let c = if sign == Unit::One {
                t.c.clone()
            } else {
                if t.q % self.qden != 0 {
                    return Err(QsvError::IllDefinedRootOfUnityPower(
                        Exponent::new(t.q, self.qden).to_string(),
                    ));
                }
                t.c.mul(&sign.pow_coef(t.q / self.qden))
            };
            terms.push(Term { q: t.q * pn, z: t.z, c });
        }
        Ok(QZSeries::from_raw(self.qden * pd, self.zden, self.trunc * pn, terms))
    }

    /// Apply `z ↦ z^k` for a nonzero integer `k` (negative flips the
    /// Laurent direction, which is safe because each `q`-slice is finite).
    pub fn substitute_z_power(&self, k: i64) -> QZSeries {
        assert!(k != 0, "z ↦ z^0 collapses slices");
        let terms = self.terms.iter().map(|t| Term { q: t.q, z: t.z * k, c: t.c.clone() }).collect();
        QZSeries::from_raw(self.qden, self.zden, self.trunc, terms)
    }

    /// Compare all coefficients with `q`-exponent below `order`.
    pub fn equal_up_to(&self, other: &QZSeries, order: &Exponent) -> Result<Comparison> {
        for s in [self, other] {
            if *order > s.trunc() {
                return Err(QsvError::InsufficientTruncation {
                    order: order.to_string(),
                    available: s.trunc().to_string(),
                });
            }
        }
        let (a, b) = Self::aligned(self, other);
        let (a, lim) = a.with_q_on_grid(order)?;
        let b = b.rescaled(a.qden, a.zden);
        let (mut i, mut j) = (0, 0);
        let zero = Coef::ZERO;
        loop {
            let ka = a.terms.get(i).filter(|t| t.q < lim).map(|t| (t.q, t.z));
            let kb = b.terms.get(j).filter(|t| t.q < lim).map(|t| (t.q, t.z));
            let (key, ca, cb) = match (ka, kb) {
                (None, None) => return Ok(Comparison { first_difference: None }),
                (Some(x), Some(y)) if x == y => {
                    let r = (x, &a.terms[i].c, &b.terms[j].c);
                    i += 1;
                    j += 1;
                    r
                }
                (Some(x), Some(y)) if x < y => {
                    i += 1;
                    (x, &a.terms[i - 1].c, &zero)
                }
                (Some(x), None) => {
                    i += 1;
                    (x, &a.terms[i - 1].c, &zero)
                }
                (_, Some(y)) => {
                    j += 1;
                    (y, &zero, &b.terms[j - 1].c)
                }
            };
            if ca != cb {
                return Ok(Comparison {
                    first_difference: Some(FirstDifference {
                        q: Exponent::new(key.0, a.qden),
                        z: Exponent::new(key.1, a.zden),
                        lhs: ca.to_gauss(),
                        rhs: cb.to_gauss(),
                    }),
                });
            }
        }
    }
}

fn z_range(terms: &[Term]) -> (i64, i64) {
    let lo = terms.iter().map(|t| t.z).min().unwrap_or(0);
    let hi = terms.iter().map(|t| t.z).max().unwrap_or(0);
    (lo, hi)
}

fn fmt_exp(num: i64, den: i64) -> String {
    let g = num.gcd(&den);
    let (n, d) = (num / g, den / g);
    if d == 1 {
        format!("{n}")
    } else {
        format!("({n}/{d})")
    }
}

impl fmt::Display for QZSeries {
    /// Human-readable form, e.g. `1 - q + 2*q^(1/2)*z^(-1) + O(q^5)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for t in &self.terms {
            let c = t.c.to_gauss();
            let s = c.to_string();
            let (sign, body) = if first {
                ("", s.clone())
            } else if let Some(rest) = s.strip_prefix('-').filter(|_| c.is_real()) {
                (" - ", rest.to_string())
            } else {
                (" + ", s.clone())
            };
            let mut mono = Vec::new();
            if t.q != 0 {
                mono.push(format!("q^{}", fmt_exp(t.q, self.qden)));
            }
            if t.z != 0 {
                mono.push(format!("z^{}", fmt_exp(t.z, self.zden)));
            }
            let coef = if !c.is_real() { format!("({body})") } else { body };
            let text = match (coef.as_str(), mono.is_empty()) {
                (_, true) => coef,
                ("1", false) => mono.join("*"),
                _ => format!("{coef}*{}", mono.join("*")),
            };
            write!(f, "{sign}{text}")?;
            first = false;
        }
        let o = format!("O(q^{})", fmt_exp(self.trunc, self.qden));
        if first {
            write!(f, "{o}")
        } else {
            write!(f, " + {o}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: i64) -> Exponent {
        Exponent::int(n)
    }

    fn ints(c: &[i64], t: i64) -> QZSeries {
        QZSeries::from_int_coeffs(c, t)
    }

    #[test]
    fn cancellation_in_addition() {
        let a = ints(&[1, -1], 10);
        let b = ints(&[0, 1], 10);
        assert_eq!(a.add(&b), QZSeries::one(&e(10)));
    }

    #[test]
    fn addition_keeps_disjoint_fractional_support() {
        let t = e(3);
        let a = QZSeries::monomial(GaussianRational::one(), &Exponent::new(1, 2), &e(0), &t);
        let b = QZSeries::monomial(GaussianRational::one(), &Exponent::new(1, 3), &e(0), &t);
        let s = a.add(&b);
        assert_eq!(s.len(), 2);
        assert_eq!(s.coeff(&Exponent::new(1, 3), &e(0)), GaussianRational::one());
    }

    #[test]
    fn geometric_inverse() {
        let a = ints(&[1, -1], 12);
        let inv = a.invert_unit().unwrap();
        assert_eq!(inv, ints(&[1; 12], 12));
        assert_eq!(a.mul(&inv), QZSeries::one(&e(12)));
    }

    #[test]
    fn monomial_inverse_moves_truncation() {
        let a = QZSeries::monomial(GaussianRational::from_int(2), &e(3), &e(0), &e(10));
        let inv = a.invert_unit().unwrap();
        assert_eq!(inv.trunc(), e(4));
        assert_eq!(inv.coeff(&e(-3), &e(0)), GaussianRational::from_ratio(1, 2));
    }

    #[test]
    fn half_powers_of_z_combine() {
        let t = e(5);
        let h = QZSeries::monomial(GaussianRational::one(), &e(0), &Exponent::new(1, 2), &t);
        let z = QZSeries::monomial(GaussianRational::one(), &e(0), &e(1), &t);
        assert_eq!(h.mul(&h), z);
    }

    #[test]
    fn non_unit_is_rejected() {
        let t = e(5);
        let a = QZSeries::one(&t).add(&QZSeries::monomial(GaussianRational::one(), &e(0), &e(1), &t));
        assert!(matches!(a.invert_unit(), Err(QsvError::NotAUnit(_))));
    }

    #[test]
    fn sign_substitution() {
        let a = ints(&[1, 1, 0, 1], 6);
        let b = a.substitute_q(Unit::MinusOne, &e(1)).unwrap();
        assert_eq!(b, ints(&[1, -1, 0, -1], 6));
        let h = QZSeries::monomial(GaussianRational::one(), &Exponent::new(1, 2), &e(0), &t6());
        assert!(matches!(
            h.substitute_q(Unit::MinusOne, &e(1)),
            Err(QsvError::IllDefinedRootOfUnityPower(_))
        ));
    }

    fn t6() -> Exponent {
        e(6)
    }

    #[test]
    fn comparison_reports_first_difference() {
        let a = ints(&[1, 1], 10);
        let b = ints(&[1, 2], 10);
        let c = a.equal_up_to(&b, &e(2)).unwrap();
        let d = c.first_difference.unwrap();
        assert_eq!((d.q, d.z), (e(1), e(0)));
        assert_eq!((d.lhs, d.rhs), (GaussianRational::one(), GaussianRational::from_int(2)));
        assert!(a.equal_up_to(&a, &e(10)).unwrap().is_equal());
        assert!(matches!(a.equal_up_to(&b, &e(11)), Err(QsvError::InsufficientTruncation { .. })));
    }

    #[test]
    fn display_is_readable() {
        let a = ints(&[1, -1, 2], 3);
        assert_eq!(a.to_string(), "1 - q^1 + 2*q^2 + O(q^3)");
    }
}
