//! String functions against an independent Weyl–Kac oracle.
//!
//! The oracle never touches the engine: it expands the Weyl–Kac numerator
//! as a bilateral sum, divides by `j(z;q)` with dense integer geometric
//! series, and reads `𝒞_{m,ℓ}` off the `z^{−m/2}` coefficient. It uses
//! `w = z^{1/2}` so that every exponent is an integer.

use proptest::prelude::*;
use qsv::hecke::{character, string_coeff, string_valuation_bound, StringFnId};
use qsv::{Exponent, GaussianRational};
use std::collections::BTreeMap;

/// One map of `w`-exponent → coefficient per integer q-grade.
type Dense = Vec<BTreeMap<i64, i128>>;

fn bump(d: &mut Dense, q: i64, w: i64, c: i128) {
    if c != 0 && q >= 0 && (q as usize) < d.len() {
        *d[q as usize].entry(w).or_insert(0) += c;
    }
}

/// `Σ_n q^{pp'n(n−1) + a·n} w^{shift − 2p'n}`: the theta `j(−q^a z^{−p'}; q^{2pp'})`
/// (signs cancel) times `w^shift`.
fn theta_sum(d: &mut Dense, p: i64, pp: i64, a: i64, shift: i64, sign: i128) {
    let t = d.len() as i64;
    for n in -200i64..=200 {
        let q = p * pp * n * (n - 1) + a * n;
        if q < t {
            bump(d, q, shift - 2 * pp * n, sign);
        }
    }
}

/// Multiplies in place by `1/(1 − w^dw q^dq)`, `dq ≥ 1`.
fn geometric(d: &mut Dense, dq: usize, dw: i64) {
    for q in dq..d.len() {
        let prev: Vec<(i64, i128)> = d[q - dq].iter().map(|(w, c)| (*w, *c)).collect();
        for (w, c) in prev {
            *d[q].entry(w + dw).or_insert(0) += c;
        }
    }
}

/// `𝒞_{m,ℓ}` coefficients for every `m`, below the integer order `t`.
fn oracle(p: i64, pp: i64, ell: i64, t: usize) -> BTreeMap<i64, Vec<i128>> {
    let mut d: Dense = vec![BTreeMap::new(); t];
    let l1 = ell + 1;
    // w^{−ℓ}·[j(−q^{p(ℓ+1)+pp'} z^{−p'}) − z^{ℓ+1} j(−q^{−p(ℓ+1)+pp'} z^{−p'})]
    theta_sum(&mut d, p, pp, p * l1 + p * pp, -ell, 1);
    theta_sum(&mut d, p, pp, -p * l1 + p * pp, -ell + 2 * l1, -1);
    // ÷ Π_{n≥1}(1 − zq^n)(1 − z^{−1}q^n)(1 − q^n)
    for n in 1..t {
        geometric(&mut d, n, 2);
        geometric(&mut d, n, -2);
        geometric(&mut d, n, 0);
    }
    // ÷ (1 − z): Q_k = P_k + Q_{k−2}; the numerator is divisible, so each
    // parity class of every grade must sum to zero.
    let mut out: BTreeMap<i64, Vec<i128>> = BTreeMap::new();
    for (q, grade) in d.iter().enumerate() {
        let (Some(&lo), Some(&hi)) = (grade.keys().next(), grade.keys().next_back()) else { continue };
        let mut acc = [0i128; 2];
        for w in lo..=hi {
            let k = w.rem_euclid(2) as usize;
            acc[k] += grade.get(&w).copied().unwrap_or(0);
            if acc[k] != 0 {
                out.entry(-w).or_insert_with(|| vec![0; t])[q] = acc[k];
            }
        }
        assert_eq!(acc, [0, 0], "numerator not divisible by 1 − z at grade {q}");
    }
    out
}

fn engine(p: i64, pp: i64, m: i64, ell: i64, t: usize) -> Vec<i128> {
    let id = StringFnId::new(p, pp, m, ell).unwrap();
    let s = string_coeff(&id, true, &Exponent::int(t as i64)).unwrap();
    assert!(s.has_integer_coefficients());
    s.int_coeffs(t).iter().map(|c| c.to_string().parse::<i128>().unwrap()).collect()
}

/// `𝒞_{1,1}` at `(p,p') = (3,8)`, frozen from the oracle below order 20.
const C_3_8_1_1: [i128; 20] =
    [1, 2, 5, 11, 23, 45, 86, 157, 281, 489, 835, 1397, 2303, 3734, 5978, 9447, 14764, 22823, 34946, 53008];

#[test]
fn frozen_level_one_third_values() {
    let o = oracle(3, 8, 1, 20);
    assert_eq!(o[&1][..], C_3_8_1_1[..]);
    assert_eq!(engine(3, 8, 1, 1, 20)[..], C_3_8_1_1[..]);
}

#[test]
fn engine_matches_oracle_on_admissible_instances() {
    let cases = [(1, 3, 0), (1, 4, 2), (2, 3, 0), (2, 3, 1), (2, 5, 0), (2, 5, 1), (2, 5, 3), (3, 5, 2), (3, 8, 0), (3, 8, 5), (5, 12, 1)];
    let t = 25;
    for (p, pp, ell) in cases {
        let o = oracle(p, pp, ell, t);
        for m in (-ell - 6..=ell + 6).filter(|m| (m - ell) % 2 == 0) {
            let want = o.get(&m).cloned().unwrap_or_else(|| vec![0; t]);
            assert_eq!(engine(p, pp, m, ell, t), want, "C_{{{m},{ell}}} at ({p},{pp})");
        }
    }
}

#[test]
fn kac_peterson_level_one_is_inverse_eta() {
    // 𝒞^{(1,3)}_{0,0} = 1/(q)_∞ : partition numbers
    let parts = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135];
    assert_eq!(engine(1, 3, 0, 0, 15), parts.to_vec());
}

#[test]
fn unnormalized_offset_is_s_lambda() {
    let id = StringFnId::new(1, 3, 0, 0).unwrap();
    let s = string_coeff(&id, false, &Exponent::int(3)).unwrap();
    let lead = s.terms().next().unwrap();
    assert_eq!(lead.0, Exponent::new(-1, 24));
    assert_eq!(lead.2, GaussianRational::one());
}

#[test]
fn invalid_parameters_name_the_invariant() {
    let msg = |r: qsv::Result<StringFnId>| r.unwrap_err().to_string();
    assert!(msg(StringFnId::new(2, 4, 0, 0)).contains("gcd"));
    assert!(StringFnId::new(3, 8, 0, 7).is_err());
    assert!(StringFnId::new(3, 8, 1, 0).is_err());
    assert!(StringFnId::new(0, 3, 0, 0).is_err());
}

#[test]
fn character_agrees_with_oracle_modes() {
    let (p, pp, ell, t) = (2, 5, 1, 8);
    let chi = character(p, pp, ell, &Exponent::int(t)).unwrap();
    let o = oracle(p, pp, ell, t as usize);
    let c0 = qsv::hecke::character_offset(p, pp, ell);
    for (m, coeffs) in o {
        for (n, c) in coeffs.iter().enumerate() {
            let eq = c0.clone() + Exponent::int(n as i64);
            if eq < Exponent::int(t) {
                assert_eq!(chi.coeff(&eq, &Exponent::new(-m, 2)), GaussianRational::from_int(*c as i64), "m={m} n={n}");
            }
        }
    }
}

fn admissible() -> impl Strategy<Value = (i64, i64, i64, i64)> {
    let pairs = [(1, 3), (1, 4), (2, 3), (2, 5), (3, 4), (3, 5), (3, 8), (5, 12), (4, 7)];
    (prop::sample::select(pairs.to_vec()), 0i64..8, -30i64..=30).prop_filter_map("ℓ out of range", |((p, pp), l, m)| {
        let ell = l % (pp - 1);
        let m = if (m - ell) % 2 == 0 { m } else { m + 1 };
        (m.abs() <= 30).then_some((p, pp, m, ell))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    /// A grade-`n` weight of the highest-weight module has `|m| ≤ ℓ + 2n`.
    #[test]
    fn valuation_respects_weight_bound((p, pp, m, ell) in admissible()) {
        let id = StringFnId::new(p, pp, m, ell).unwrap();
        let bound = string_valuation_bound(&id);
        let t = bound.clone() + Exponent::int(3);
        let s = string_coeff(&id, true, &t).unwrap();
        if let Some(v) = s.valuation() {
            prop_assert!(v >= bound, "valuation {} below bound {}", v, bound);
        }
    }

    #[test]
    fn string_functions_are_even_in_m((p, pp, m, ell) in admissible()) {
        let t = Exponent::int(12);
        let a = string_coeff(&StringFnId::new(p, pp, m, ell).unwrap(), true, &t).unwrap();
        let b = string_coeff(&StringFnId::new(p, pp, -m, ell).unwrap(), true, &t).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn normalized_string_functions_are_integral((p, pp, m, ell) in admissible()) {
        let s = string_coeff(&StringFnId::new(p, pp, m, ell).unwrap(), true, &Exponent::int(30)).unwrap();
        prop_assert!(s.has_integer_coefficients());
    }

    #[test]
    fn string_coeff_is_truncation_monotone((p, pp, m, ell) in admissible(), lo in 4i64..15) {
        let id = StringFnId::new(p, pp, m, ell).unwrap();
        let hi = string_coeff(&id, false, &Exponent::int(lo + 10)).unwrap().truncate(&Exponent::int(lo));
        prop_assert_eq!(hi, string_coeff(&id, false, &Exponent::int(lo)).unwrap());
    }
}
