//! Ring and truncation invariants of the series engine on random inputs.

use proptest::prelude::*;
use qsv::series::Unit;
use qsv::theta::{jacobi_theta, pochhammer, ThetaArg};
use qsv::{Exponent, GaussianRational, QZSeries};

fn e(n: i64, d: i64) -> Exponent {
    Exponent::new(n, d)
}

/// Small sparse series with exponents in `(1/den)ℤ ∩ [0, 4)` and integer
/// `z` powers in `[-2, 2]`, known up to `trunc`.
fn series(den: i64, trunc: i64) -> impl Strategy<Value = QZSeries> {
    prop::collection::vec((0..4 * den, -2i64..=2, -3i64..=3, -2i64..=2), 0..8).prop_map(move |ts| {
        let terms =
            ts.into_iter().map(|(q, z, re, im)| (e(q, den), Exponent::int(z), GaussianRational::from_parts((re, 1), (im, 1))));
        QZSeries::from_terms(terms, &Exponent::int(trunc))
    })
}

/// `c·(1 + higher)` with `c` a nonzero Gaussian integer.
fn unit_series(den: i64, trunc: i64) -> impl Strategy<Value = QZSeries> {
    (series(den, trunc), 1i64..=3, -2i64..=2).prop_map(move |(s, re, im)| {
        let lead = QZSeries::constant(GaussianRational::from_parts((re, 1), (im, 1)), &Exponent::int(trunc));
        // push `s` strictly above q^0 so the constant term stays the lead
        lead.add(&s.shift(&e(1, den), &Exponent::zero()).truncate(&Exponent::int(trunc)))
    })
}

fn agree(a: &QZSeries, b: &QZSeries) -> bool {
    let order = a.trunc().min(b.trunc());
    a.equal_up_to(b, &order).unwrap().is_equal()
}

fn theta_arg() -> impl Strategy<Value = ThetaArg> {
    // q-power in (0, base) keeps both Pochhammer factors free of poles
    (prop_oneof![Just(Unit::One), Just(Unit::MinusOne), Just(Unit::I)], 1i64..8, -2i64..=2)
        .prop_map(|(u, a, w)| ThetaArg::new(u, e(a, 4), Exponent::int(w)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(250))]

    #[test]
    fn addition_and_multiplication_commute(a in series(2, 6), b in series(2, 6)) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert!(agree(&a.mul(&b), &b.mul(&a)));
    }

    #[test]
    fn multiplication_associates(a in series(3, 6), b in series(2, 6), c in series(1, 6)) {
        prop_assert!(agree(&a.mul(&b).mul(&c), &a.mul(&b.mul(&c))));
    }

    #[test]
    fn multiplication_distributes(a in series(2, 6), b in series(2, 6), c in series(3, 6)) {
        prop_assert!(agree(&a.mul(&b.add(&c)), &a.mul(&b).add(&a.mul(&c))));
    }

    #[test]
    fn subtraction_inverts_addition(a in series(2, 6), b in series(3, 6)) {
        prop_assert!(a.add(&b).sub(&b).equal_up_to(&a, &Exponent::int(6)).unwrap().is_equal());
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn unit_times_inverse_is_one(u in unit_series(2, 8)) {
        let inv = u.invert_unit().unwrap();
        prop_assert!(agree(&u.mul(&inv), &QZSeries::one(&Exponent::int(8))));
    }

    #[test]
    fn substitute_q_composes(s in series(1, 6), a in 1i64..4, b in 1i64..4, neg in any::<bool>()) {
        let outer = if neg { Unit::MinusOne } else { Unit::One };
        let two_step = s
            .substitute_q(Unit::One, &Exponent::int(a)).unwrap()
            .substitute_q(outer, &Exponent::int(b)).unwrap();
        // q ↦ q^a ↦ (±q^b)^a
        let sign = if neg && a % 2 == 1 { Unit::MinusOne } else { Unit::One };
        let one_step = s.substitute_q(sign, &Exponent::int(a * b)).unwrap();
        prop_assert_eq!(two_step, one_step);
    }

    #[test]
    fn products_are_truncation_monotone(a in series(2, 9), b in series(3, 9), lo in 2i64..9) {
        let lo = Exponent::int(lo);
        let high = a.mul(&b).truncate(&lo);
        let low = a.truncate(&lo).mul(&b.truncate(&lo));
        prop_assert!(high.equal_up_to(&low, &lo).unwrap().is_equal());
    }

    #[test]
    fn theta_is_truncation_monotone(x in theta_arg(), lo in 3i64..12) {
        let base = Exponent::int(2);
        let hi = jacobi_theta(&x, &base, &Exponent::int(lo + 7)).unwrap().truncate(&Exponent::int(lo));
        prop_assert_eq!(hi, jacobi_theta(&x, &base, &Exponent::int(lo)).unwrap());
    }

    #[test]
    fn triple_product_matches_bilateral_sum(x in theta_arg()) {
        let base = Exponent::int(2);
        let t = Exponent::int(12);
        let sum = jacobi_theta(&x, &base, &t).unwrap();
        let qx = x.inv().shift_q(base.clone());
        let prod = pochhammer(&x, &base, None, &t).unwrap()
            .mul(&pochhammer(&qx, &base, None, &t).unwrap())
            .mul(&pochhammer(&ThetaArg::q(base.clone()), &base, None, &t).unwrap());
        prop_assert!(sum.equal_up_to(&prod, &t).unwrap().is_equal());
    }

    #[test]
    fn theta_flip_holds(x in theta_arg()) {
        let base = Exponent::int(2);
        let t = Exponent::int(15);
        let flipped = x.inv().shift_q(base.clone());
        prop_assert_eq!(jacobi_theta(&x, &base, &t).unwrap(), jacobi_theta(&flipped, &base, &t).unwrap());
    }
}
