mod common;

use common::{assert_decimal_in_interval, ln_interval, rat};
use num_bigint::BigUint;
use std::cmp::Ordering;
use tmahler::measures::FunctionSource;
use tmahler::{
    m_t, mahler_measure, Error, Measure, MeasureFunction, MtMethod, PrimePowerRational, TParam,
};

fn alpha(p: u64, q: u64, a: u64, b: u64) -> PrimePowerRational {
    PrimePowerRational::new(p, q, a, b).unwrap()
}

fn t(s: &str) -> TParam {
    TParam::parse(s).unwrap()
}

fn vector_entries(f: &MeasureFunction) -> Vec<u64> {
    match f.source() {
        FunctionSource::Vector { entries } => entries.clone(),
        other => panic!("expected a vector-sourced class, got {other:?}"),
    }
}

#[test]
fn height_of_a_rational_is_the_log_of_the_larger_side() {
    let cases = [(32u64, 27u64, 32u64), (8, 25, 25), (1, 1, 1), (3, 1024, 1024)];
    for (r, s, bigger) in cases {
        let m = mahler_measure(&BigUint::from(r), &BigUint::from(s)).unwrap();
        assert_eq!(m.base(), &BigUint::from(bigger));
        if bigger > 1 {
            let oracle = ln_interval(&rat(bigger), 200);
            assert_decimal_in_interval(&m.eval(256).unwrap().decimal(40), &oracle);
        } else {
            assert!(m.is_zero());
        }
    }
    assert!(mahler_measure(&BigUint::from(0u32), &BigUint::from(5u32)).is_err());
    assert!(mahler_measure(&BigUint::from(4u32), &BigUint::from(6u32)).is_err());
}

#[test]
fn at_or_below_one_the_trivial_factorization_is_returned_directly() {
    let a = alpha(2, 3, 5, 3);
    for ts in ["0.3", "0.9999", "1"] {
        let out = m_t(&a, &t(ts), MtMethod::CfInfimumSet).unwrap();
        assert_eq!(out.candidates, 1);
        assert_eq!(out.argmin.len(), 1);
        // (Σ m^t)^(1/t) of a single measure is the measure itself: log 32.
        assert_eq!(out.value.decimal(30), "3.46573590279972654708616060729");
    }
}

#[test]
fn the_32_27_curve_values_at_2_and_4_are_certified() {
    let a = alpha(2, 3, 5, 3);

    let out2 = m_t(&a, &t("2"), MtMethod::CfInfimumSet).unwrap();
    assert_eq!(out2.value.decimal(30), "2.14050295731497385447581371764");
    assert_eq!(out2.candidates, 6);
    assert_eq!(out2.argmin.len(), 1);
    assert_eq!(vector_entries(&out2.argmin[0]), [2, 3, 0, 0, 0]);

    let out4 = m_t(&a, &t("4"), MtMethod::CfInfimumSet).unwrap();
    assert_eq!(out4.value.decimal(30), "1.48261471603831812153451742845");
    assert_eq!(vector_entries(&out4.argmin[0]), [2, 3, 0, 0, 0]);

    // Between the second and third crossing a different class is optimal.
    let out14 = m_t(&a, &t("1.4"), MtMethod::CfInfimumSet).unwrap();
    assert_eq!(vector_entries(&out14.argmin[0]), [0, 1, 2, 0, 0]);
}

#[test]
fn the_fast_route_and_the_enumeration_agree_on_32_27() {
    let a = alpha(2, 3, 5, 3);
    for ts in ["1.1", "1.4", "2", "4"] {
        let fast = m_t(&a, &t(ts), MtMethod::CfInfimumSet).unwrap();
        let slow = m_t(&a, &t(ts), MtMethod::Oracle).unwrap();
        assert_eq!(fast.value.decimal(25), slow.value.decimal(25), "t = {ts}");
        assert_eq!(fast.argmin.len(), slow.argmin.len(), "t = {ts}");
        for (f, g) in fast.argmin.iter().zip(&slow.argmin) {
            assert!(f.same_multiset(g), "argmin class mismatch at t = {ts}");
        }
    }
}

#[test]
fn non_record_pairs_are_rejected_by_the_fast_route_but_not_the_oracle() {
    // 3/2 is not a record fraction for log 5/log 2, so 8/25 has no
    // factorization-vector route; enumeration still answers.
    let a = alpha(2, 5, 3, 2);
    let err = m_t(&a, &t("2"), MtMethod::CfInfimumSet).unwrap_err();
    assert!(matches!(err, Error::HypothesisNotMet(_)), "{err}");

    let out = m_t(&a, &t("2"), MtMethod::Oracle).unwrap();
    // sqrt(2) log 5, attained by 2/5 * 4/5.
    assert_eq!(out.value.decimal(30), "2.27608892356174649751256288736");
    assert_eq!(out.argmin.len(), 1);
    let parts: Vec<(u64, Measure)> = out.argmin[0].terms().to_vec();
    assert_eq!(parts.len(), 1, "both parts have the same measure");
    assert_eq!(parts[0].0, 2);
    assert_eq!(parts[0].1.base(), &BigUint::from(5u32));
}

#[test]
fn the_exact_tie_at_t_1_reports_both_classes() {
    let a = alpha(2, 5, 3, 2);
    let out = m_t(&a, &TParam::one(), MtMethod::Oracle).unwrap();
    assert_eq!(out.value.decimal(30), "3.21887582486820074920151866645");
    assert_eq!(out.argmin.len(), 1, "t = 1 shortcut returns the trivial class");

    // The enumeration itself, asked directly, sees the genuine tie.
    let oracle = tmahler::oracle_m_t(&a, &TParam::one(), 40).unwrap();
    assert_eq!(oracle.argmin_classes.len(), 2);
}

#[test]
fn t_parameter_parsing_and_ordering() {
    assert!(TParam::parse("1").unwrap().is_one());
    assert_eq!(TParam::parse("0.5").unwrap().cmp_one(), Ordering::Less);
    assert_eq!(TParam::parse("1.0000001").unwrap().cmp_one(), Ordering::Greater);
    assert_eq!(TParam::parse("10").unwrap().cmp_one(), Ordering::Greater);
    for bad in ["0", "-1", "abc", "", "1..5"] {
        assert!(TParam::parse(bad).is_err(), "{bad:?} should not parse");
    }
}

#[test]
fn measure_function_normal_form_and_limit_order() {
    let log2 = Measure::power_log(2, 1);
    let log3 = Measure::power_log(3, 1);

    let doubled = MeasureFunction::from_measures(
        vec![log2.clone(), log2.clone()],
        FunctionSource::Direct,
    )
    .unwrap();
    let weighted =
        MeasureFunction::from_weighted(vec![(2, log2.clone())], FunctionSource::Direct).unwrap();
    assert!(doubled.same_multiset(&weighted));
    assert_eq!(doubled.part_count(), 2);

    let single3 = MeasureFunction::from_measures(vec![log3], FunctionSource::Direct).unwrap();
    let single2 = MeasureFunction::from_measures(vec![log2], FunctionSource::Direct).unwrap();
    // As t grows, the largest measure dominates; ties defer to the rest.
    assert_eq!(single3.cmp_at_infinity(&doubled), Ordering::Greater);
    assert_eq!(single2.cmp_at_infinity(&doubled), Ordering::Less);
    assert_eq!(doubled.cmp_at_infinity(&weighted), Ordering::Equal);
}

#[test]
fn rationals_reduce_before_measuring() {
    // 2^4/3^2 and 2^8/3^4 have different heights but the same reduced form
    // only when already coprime in exponents; both are valid inputs.
    let out_small = m_t(&alpha(2, 3, 4, 2), &t("2"), MtMethod::Oracle).unwrap();
    let out_large = m_t(&alpha(2, 3, 8, 4), &t("2"), MtMethod::Oracle).unwrap();
    assert!(
        out_small.value.decimal(20) < out_large.value.decimal(20),
        "doubling the exponents grows the measure"
    );
}
