mod common;

use common::cf_interval_oracle;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use std::cmp::Ordering;
use std::collections::BTreeSet;
use tmahler::{
    best_approximations, cf_expand, classify, is_first_kind_best, is_irreducible, Classification,
    ExponentPair, LogRatio,
};

fn pair(a: u64, b: u64) -> ExponentPair {
    ExponentPair::new(a, b).unwrap()
}

fn quotients_u64(xi: &LogRatio, count: usize) -> Vec<u64> {
    cf_expand(xi, count)
        .unwrap()
        .quotients
        .iter()
        .map(|x| x.to_u64().unwrap())
        .collect()
}

fn power_table(base: u64, len: usize) -> Vec<BigUint> {
    let mut t = Vec::with_capacity(len);
    t.push(BigUint::from(1u32));
    for _ in 1..len {
        t.push(t.last().unwrap() * base);
    }
    t
}

fn mem_upper(pp: &[BigUint], qp: &[BigUint], m: u64, n: u64) -> bool {
    (m, n) != (0, 0) && pp[m as usize] > qp[n as usize]
}

fn mem_lower(pp: &[BigUint], qp: &[BigUint], m: u64, n: u64) -> bool {
    (m, n) != (0, 0) && pp[m as usize] < qp[n as usize]
}

fn fcmp(a: u64, b: u64, c: u64, d: u64) -> Ordering {
    (a as u128 * d as u128).cmp(&(c as u128 * b as u128))
}

fn smallest_exponent_exceeding(table: &[BigUint], target: &BigUint) -> u64 {
    table
        .iter()
        .position(|v| v > target)
        .expect("power table long enough for the sweep") as u64
}

fn fold_min(slot: &mut Option<(u64, u64)>, m: u64, n: u64) {
    if slot.map_or(true, |(sm, sn)| fcmp(m, n, sm, sn) == Ordering::Less) {
        *slot = Some((m, n));
    }
}

fn fold_max(slot: &mut Option<(u64, u64)>, m: u64, n: u64) {
    if slot.map_or(true, |(sm, sn)| fcmp(m, n, sm, sn) == Ordering::Greater) {
        *slot = Some((m, n));
    }
}

/// Classification by brute enumeration of the record sets.
///
/// Every candidate window below is finite for a provable reason: members of
/// the upper set with first coordinate at most `a` have second coordinate
/// below the least n with q^n > p^a, and the extreme fractions at bounded
/// second coordinate are attained with first coordinate below the least m
/// with p^m > q^b. Memberships compare directly powered integers, so nothing
/// here shares code with the floor-table route under test.
fn def_classification(a: u64, b: u64, pp: &[BigUint], qp: &[BigUint]) -> Classification {
    let in_upper = mem_upper(pp, qp, a, b);
    let in_lower = !in_upper;
    let n_cap = smallest_exponent_exceeding(qp, &pp[a as usize]);
    let m_cap = smallest_exponent_exceeding(pp, &qp[b as usize]);

    let mut min_first: Option<(u64, u64)> = None;
    let mut max_first: Option<(u64, u64)> = None;
    for m in 0..=a {
        for n in 0..=n_cap {
            if mem_upper(pp, qp, m, n) {
                fold_min(&mut min_first, m, n);
            }
            if mem_lower(pp, qp, m, n) {
                fold_max(&mut max_first, m, n);
            }
        }
    }
    let mut min_second: Option<(u64, u64)> = None;
    let mut max_second: Option<(u64, u64)> = None;
    for n in 0..=b {
        for m in 0..=m_cap {
            if mem_upper(pp, qp, m, n) {
                fold_min(&mut min_second, m, n);
            }
            if mem_lower(pp, qp, m, n) {
                fold_max(&mut max_second, m, n);
            }
        }
    }

    let attains =
        |slot: &Option<(u64, u64)>| slot.map_or(false, |(m, n)| fcmp(a, b, m, n) == Ordering::Equal);
    let in_u1 = in_upper && attains(&min_first);
    let in_u2 = in_upper && attains(&min_second);
    let in_l1 = in_lower && attains(&max_first);
    let in_l2 = in_lower && attains(&max_second);
    let coprime = a.gcd(&b) == 1;
    Classification {
        in_upper,
        in_lower,
        in_u1,
        in_u2,
        in_l1,
        in_l2,
        coprime,
        upper_best: in_upper && coprime && in_u1,
        lower_best: in_lower && coprime && in_l2,
        upper_boundary: in_upper && mem_lower(pp, qp, a, b + 1),
        lower_boundary: in_lower && mem_upper(pp, qp, a + 1, b),
        irreducible: coprime && if in_upper { in_u2 } else { in_l1 },
    }
}

#[test]
fn continued_fraction_prefix_is_certified_and_matches_the_interval_oracle() {
    let xi = LogRatio::new(2, 3).unwrap();
    let got = quotients_u64(&xi, 12);
    assert_eq!(got, [1, 1, 1, 2, 2, 3, 1, 5, 2, 23, 2, 2]);
    assert_eq!(cf_expand(&xi, 12).unwrap().certified_count, 12);
    assert_eq!(cf_interval_oracle(2, 3, 12, 900), got);

    for (p, q, terms) in [(2u64, 5u64, 10usize), (3, 5, 10), (7, 23, 12), (31, 257, 10)] {
        let xi = LogRatio::new(p, q).unwrap();
        assert_eq!(
            quotients_u64(&xi, terms),
            cf_interval_oracle(p, q, terms, 1200),
            "log {q}/log {p}"
        );
    }
}

#[test]
fn best_approximations_up_to_19_12_form_the_frozen_chain() {
    let xi = LogRatio::new(2, 3).unwrap();
    let got = best_approximations(&xi, 19, 12).unwrap();
    let want = [(1, 0), (1, 1), (2, 1), (3, 2), (5, 3), (8, 5), (11, 7), (19, 12)];
    assert_eq!(got, want.map(|(a, b)| pair(a, b)));
}

#[test]
fn best_approximation_lists_match_pointwise_classification() {
    for (p, q) in [(2u64, 3u64), (2, 5), (3, 5)] {
        let xi = LogRatio::new(p, q).unwrap();
        let listed: BTreeSet<ExponentPair> =
            best_approximations(&xi, 40, 25).unwrap().into_iter().collect();
        for a in 0..=40u64 {
            for b in 0..=25u64 {
                if (a, b) == (0, 0) {
                    continue;
                }
                let c = classify(pair(a, b), &xi);
                assert_eq!(
                    listed.contains(&pair(a, b)),
                    c.upper_best || c.lower_best,
                    "({a}, {b}) for {xi}"
                );
            }
        }
    }
}

#[test]
fn the_pair_27_17_is_a_best_approximation_but_not_of_the_first_kind() {
    let xi = LogRatio::new(2, 3).unwrap();
    let c = classify(pair(27, 17), &xi);
    assert!(c.in_upper && c.coprime && c.in_u1);
    assert!(c.upper_best);
    assert!(!is_first_kind_best(pair(27, 17), &xi));

    // The convergents stay best in both senses.
    for (a, b) in [(2, 1), (3, 2), (8, 5), (19, 12)] {
        let c = classify(pair(a, b), &xi);
        assert!(c.upper_best || c.lower_best, "({a}, {b})");
        assert!(is_first_kind_best(pair(a, b), &xi), "({a}, {b})");
    }
}

#[test]
fn classification_matches_definitional_set_enumeration() {
    for (p, q) in [(2u64, 3u64), (2, 5), (3, 5)] {
        let xi = LogRatio::new(p, q).unwrap();
        let pp = power_table(p, 160);
        let qp = power_table(q, 160);
        for a in 0..=40u64 {
            for b in 0..=40u64 {
                if (a, b) == (0, 0) {
                    continue;
                }
                let got = classify(pair(a, b), &xi);
                let want = def_classification(a, b, &pp, &qp);
                assert_eq!(got, want, "({a}, {b}) for {xi}");
            }
        }
    }
}

#[test]
fn classification_matches_definitional_enumeration_below_one() {
    for (p, q) in [(3u64, 2u64), (5, 3)] {
        let xi = LogRatio::new(p, q).unwrap();
        let pp = power_table(p, 160);
        let qp = power_table(q, 160);
        for a in 0..=28u64 {
            for b in 0..=28u64 {
                if (a, b) == (0, 0) {
                    continue;
                }
                let got = classify(pair(a, b), &xi);
                let want = def_classification(a, b, &pp, &qp);
                assert_eq!(got, want, "({a}, {b}) for {xi}");
            }
        }
    }
}

#[test]
fn coordinate_swap_exchanges_the_upper_and_lower_theories() {
    for (p, q) in [(2u64, 3u64), (2, 5)] {
        let xi = LogRatio::new(p, q).unwrap();
        let inv = xi.inverse();
        for a in 0..=30u64 {
            for b in 0..=30u64 {
                if (a, b) == (0, 0) {
                    continue;
                }
                let c = classify(pair(a, b), &xi);
                let d = classify(pair(b, a), &inv);
                assert_eq!(c.in_upper, d.in_lower, "({a}, {b}) for {xi}");
                assert_eq!(c.in_u1, d.in_l2, "({a}, {b}) for {xi}");
                assert_eq!(c.in_u2, d.in_l1, "({a}, {b}) for {xi}");
                assert_eq!(c.upper_best, d.lower_best, "({a}, {b}) for {xi}");
                assert_eq!(c.lower_best, d.upper_best, "({a}, {b}) for {xi}");
                assert_eq!(c.upper_boundary, d.lower_boundary, "({a}, {b}) for {xi}");
                assert_eq!(c.irreducible, d.irreducible, "({a}, {b}) for {xi}");
            }
        }
    }
}

#[test]
fn record_set_inclusions_and_coincidences_hold() {
    for (p, q) in [(2u64, 3u64), (2, 5), (3, 5)] {
        let xi = LogRatio::new(p, q).unwrap();
        let inv = xi.inverse();
        for a in 0..=30u64 {
            for b in 0..=30u64 {
                if (a, b) == (0, 0) {
                    continue;
                }
                let c = classify(pair(a, b), &xi);
                assert!(!c.in_u1 || c.in_u2, "({a}, {b}): first record refines second");
                assert!(!c.in_l2 || c.in_l1, "({a}, {b}): second record refines first");
                if c.coprime {
                    assert_eq!(
                        c.in_u1, c.in_u2,
                        "({a}, {b}): above 1 the upper records coincide on coprime pairs"
                    );
                }
                let d = classify(pair(a, b), &inv);
                assert!(!d.in_u1 || d.in_u2, "({a}, {b}) below 1");
                assert!(!d.in_l2 || d.in_l1, "({a}, {b}) below 1");
                if d.coprime {
                    assert_eq!(
                        d.in_l1, d.in_l2,
                        "({a}, {b}): below 1 the lower records coincide on coprime pairs"
                    );
                }
            }
        }
    }
}

/// First-kind check by direct distance comparison against every candidate in
/// the provably sufficient window: for each denominator s the two nearest
/// fractions bracket the ratio, and farther candidates on either side lose to
/// them. Same-side distances compare by cross multiplication, opposite-side
/// ones by one direct power comparison of p^(as + rb) with q^(2bs).
fn def_first_kind(a: u64, b: u64, p: u64, q: u64, pp: &[BigUint], qp: &[BigUint]) -> bool {
    let pair_upper = mem_upper(pp, qp, a, b);
    for s in 1..=b {
        let r_cap = smallest_exponent_exceeding(pp, &qp[s as usize]);
        for r in 0..=r_cap {
            if (r, s) == (a, b) {
                continue;
            }
            let cand_upper = mem_upper(pp, qp, r, s);
            let closer = if pair_upper == cand_upper {
                if pair_upper {
                    fcmp(r, s, a, b) == Ordering::Less
                } else {
                    fcmp(r, s, a, b) == Ordering::Greater
                }
            } else {
                let lhs = BigUint::from(p).pow((a * s + r * b) as u32);
                let rhs = BigUint::from(q).pow((2 * b * s) as u32);
                if pair_upper {
                    lhs > rhs
                } else {
                    rhs > lhs
                }
            };
            if closer {
                return false;
            }
        }
    }
    true
}

#[test]
fn first_kind_test_matches_the_definitional_distance_search() {
    for (p, q) in [(2u64, 3u64), (3, 5)] {
        let xi = LogRatio::new(p, q).unwrap();
        let pp = power_table(p, 80);
        let qp = power_table(q, 80);
        for b in 1..=16u64 {
            for a in 0..=(24 - b) {
                if a.gcd(&b) != 1 {
                    continue;
                }
                assert_eq!(
                    is_first_kind_best(pair(a, b), &xi),
                    def_first_kind(a, b, p, q, &pp, &qp),
                    "({a}, {b}) for {xi}"
                );
            }
        }
    }
}

#[test]
fn irreducibility_agrees_with_the_splitting_search() {
    for (p, q) in [(2u64, 3u64), (3, 5)] {
        let xi = LogRatio::new(p, q).unwrap();
        let pp = power_table(p, 40);
        let qp = power_table(q, 40);
        for a in 0..=14u64 {
            for b in 0..=(14 - a) {
                if (a, b) == (0, 0) {
                    continue;
                }
                let side_upper = mem_upper(&pp, &qp, a, b);
                let member = |m: u64, n: u64| {
                    if side_upper {
                        mem_upper(&pp, &qp, m, n)
                    } else {
                        mem_lower(&pp, &qp, m, n)
                    }
                };
                let mut splits = false;
                for c in 0..=a {
                    for d in 0..=b {
                        if (c, d) == (0, 0) || (c, d) == (a, b) {
                            continue;
                        }
                        if member(c, d) && member(a - c, b - d) {
                            splits = true;
                        }
                    }
                }
                assert_eq!(is_irreducible(pair(a, b), &xi), !splits, "({a}, {b}) for {xi}");
            }
        }
    }
}
