//! Brute-force ground truth for m_t and for the approximation sets.
//!
//! Everything here is computed straight from definitions: factorizations are
//! enumerated exhaustively, minimization runs over all of them, and set
//! membership is decided by scanning exponent grids with exact power
//! comparisons. The fast routes elsewhere in the crate are validated against
//! these results, so this module deliberately avoids sharing their shortcuts.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use crate::approx::{Classification, ExponentPair, LogRatio};
use crate::error::Error;
use crate::infimum::Factorization;
use crate::measures::{
    part_measure, Measure, MeasureFunction, PrimePowerRational, RankedEvaluator, TParam,
};
use num_bigint::BigUint;
use num_traits::One;
use crate::real::{precision_cap, CertifiedReal};
use crate::Result;

/// Largest a + b the exhaustive route accepts by default. Worst cases under
/// this bound enumerate a few hundred thousand factorizations.
pub const DEFAULT_BOUND: u64 = 40;

/// Every factorization of α = p^a/q^b into parts p^c/q^d, as multisets of
/// exponent pairs in nondecreasing order.
///
/// Parts are nonzero pairs (no part is a unit) and, p and q being distinct
/// primes, the numerator and denominator of every part are automatically
/// coprime. The trivial factorization {(a, b)} is always present.
pub fn enumerate_factorizations(
    alpha: &PrimePowerRational,
    bound: u64,
) -> Result<Vec<Factorization>> {
    let total = alpha.a() + alpha.b();
    if total > bound {
        return Err(Error::OracleBoundExceeded { requested: total, bound });
    }

    fn descend(
        alpha: &PrimePowerRational,
        ra: u64,
        rb: u64,
        min_part: (u64, u64),
        stack: &mut Vec<ExponentPair>,
        out: &mut Vec<Factorization>,
    ) {
        if ra == 0 && rb == 0 {
            out.push(Factorization::new(alpha.clone(), stack.clone()));
            return;
        }
        for c in min_part.0..=ra {
            let d_start = if c == min_part.0 { min_part.1 } else { 0 };
            for d in d_start..=rb {
                if c == 0 && d == 0 {
                    continue;
                }
                stack.push(ExponentPair::new(c, d).expect("nonzero part"));
                descend(alpha, ra - c, rb - d, (c, d), stack, out);
                stack.pop();
            }
        }
    }

    let mut out = Vec::new();
    let mut stack = Vec::new();
    descend(alpha, alpha.a(), alpha.b(), (0, 0), &mut stack, &mut out);
    debug_assert!(out
        .iter()
        .any(|f| f.parts() == [alpha.pair()]), "the trivial factorization is always found");
    Ok(out)
}

/// Number of factorizations of p^a/q^b, counted independently of the
/// enumeration by an unbounded-knapsack recurrence over all possible parts.
pub fn count_factorizations(a: u64, b: u64) -> u128 {
    let (a, b) = (a as usize, b as usize);
    let mut ways = vec![vec![0u128; b + 1]; a + 1];
    ways[0][0] = 1;
    for c in 0..=a {
        for d in 0..=b {
            if c == 0 && d == 0 {
                continue;
            }
            for ra in c..=a {
                for rb in d..=b {
                    ways[ra][rb] += ways[ra - c][rb - d];
                }
            }
        }
    }
    ways[a][b]
}

/// What the exhaustive minimization found.
#[derive(Debug, Clone)]
pub struct OracleOutcome {
    pub value: CertifiedReal,
    /// One measure function per minimizing class.
    pub argmin_classes: Vec<MeasureFunction>,
    /// Every individual factorization attaining the minimum.
    pub argmin_factorizations: Vec<Factorization>,
    pub class_count: usize,
    pub factorization_count: usize,
}

/// m_t(α) by exhaustive enumeration: minimizes over every factorization.
///
/// Exact ties (provable at t = 1) keep all attaining classes; elsewhere the
/// minimum is isolated by escalating interval precision. The default `bound`
/// is [`DEFAULT_BOUND`].
pub fn oracle_m_t(
    alpha: &PrimePowerRational,
    t: &TParam,
    bound: u64,
) -> Result<OracleOutcome> {
    let alpha = alpha.normalized();
    let factorizations = enumerate_factorizations(&alpha, bound)?;

    // Rank the measures of all distinct parts once; a class is the multiset
    // of measure ranks with multiplicities.
    let mut part_rank: HashMap<(u64, u64), usize> = HashMap::new();
    let mut rank_measures: Vec<Measure> = Vec::new();
    for f in &factorizations {
        for part in f.parts() {
            if !part_rank.contains_key(&(part.a, part.b)) {
                let m = part_measure(alpha.p(), alpha.q(), part.a, part.b)?;
                let rank = rank_measures
                    .iter()
                    .position(|r| r.value_cmp(&m) == Ordering::Equal)
                    .unwrap_or_else(|| {
                        rank_measures.push(m);
                        rank_measures.len() - 1
                    });
                part_rank.insert((part.a, part.b), rank);
            }
        }
    }

    let mut classes: Vec<MeasureFunction> = Vec::new();
    let mut class_of: HashMap<Vec<(usize, u64)>, usize> = HashMap::new();
    let mut ids = Vec::with_capacity(factorizations.len());
    for f in &factorizations {
        let mut key_map: BTreeMap<usize, u64> = BTreeMap::new();
        for part in f.parts() {
            *key_map.entry(part_rank[&(part.a, part.b)]).or_insert(0) += 1;
        }
        let key: Vec<(usize, u64)> = key_map.into_iter().collect();
        let id = *class_of.entry(key).or_insert_with(|| {
            classes.push(f.measure_function().expect("parts are nonzero"));
            classes.len() - 1
        });
        ids.push(id);
    }

    let min = RankedEvaluator::new(&classes).argmin(t, precision_cap())?;
    let winners: Vec<bool> = {
        let mut w = vec![false; classes.len()];
        for &i in &min.argmin {
            w[i] = true;
        }
        w
    };
    let argmin_factorizations: Vec<Factorization> = factorizations
        .iter()
        .zip(&ids)
        .filter(|(_, id)| winners[**id])
        .map(|(f, _)| f.clone())
        .collect();
    let argmin_classes: Vec<MeasureFunction> =
        min.argmin.iter().map(|&i| classes[i].clone()).collect();
    Ok(OracleOutcome {
        value: min.value,
        argmin_classes,
        argmin_factorizations,
        class_count: classes.len(),
        factorization_count: factorizations.len(),
    })
}

/// Classifies an exponent pair by scanning the definition of each set over an
/// exponent grid, using nothing but exact power comparisons.
///
/// The scan covers 0..=search_bound in both coordinates; the caller must pick
/// `search_bound` at least max(a, b)·ξ + 1 so that every competing record pair
/// is inside the grid. Requires ξ > 1.
pub fn definitional_classify(
    pair: ExponentPair,
    xi: &LogRatio,
    search_bound: u64,
) -> Classification {
    assert!(xi.greater_than_one(), "orient the ratio so that ξ > 1");
    assert!(
        pair.a <= search_bound && pair.b <= search_bound,
        "the pair itself must lie inside the search grid"
    );
    // Exact power ladders, one multiplication per rung; membership of (m, n)
    // is then a direct integer comparison of p^m with q^n. One extra rung
    // covers the boundary probes at a + 1 and b + 1.
    let ladder = |base: u64| {
        let mut rungs = Vec::with_capacity(search_bound as usize + 2);
        rungs.push(BigUint::one());
        for _ in 0..=search_bound {
            rungs.push(rungs.last().expect("nonempty") * base);
        }
        rungs
    };
    let p_pow = ladder(xi.p());
    let q_pow = ladder(xi.q());
    let in_u = |m: u64, n: u64| (m, n) != (0, 0) && p_pow[m as usize] > q_pow[n as usize];
    let in_l = |m: u64, n: u64| (m, n) != (0, 0) && p_pow[m as usize] < q_pow[n as usize];
    let frac_less = |a: u64, b: u64, c: u64, d: u64| {
        (a as u128) * (d as u128) < (c as u128) * (b as u128)
    };
    let frac_eq = |a: u64, b: u64, c: u64, d: u64| {
        (a as u128) * (d as u128) == (c as u128) * (b as u128)
    };

    let (a, b) = (pair.a, pair.b);
    let in_upper = in_u(a, b);
    let in_lower = in_l(a, b);

    // Minimum of m/n over members of U with m <= a, and with n <= b.
    let mut u1_min: Option<(u64, u64)> = None;
    let mut u2_min: Option<(u64, u64)> = None;
    // Maximum of m/n over members of L with m <= a, and with n <= b.
    let mut l1_max: Option<(u64, u64)> = None;
    let mut l2_max: Option<(u64, u64)> = None;
    for m in 0..=search_bound {
        for n in 0..=search_bound {
            if in_u(m, n) {
                if m <= a && u1_min.map_or(true, |(c, d)| frac_less(m, n, c, d)) {
                    u1_min = Some((m, n));
                }
                if n <= b && u2_min.map_or(true, |(c, d)| frac_less(m, n, c, d)) {
                    u2_min = Some((m, n));
                }
            } else if in_l(m, n) {
                if m <= a && l1_max.map_or(true, |(c, d)| frac_less(c, d, m, n)) {
                    l1_max = Some((m, n));
                }
                if n <= b && l2_max.map_or(true, |(c, d)| frac_less(c, d, m, n)) {
                    l2_max = Some((m, n));
                }
            }
        }
    }

    let in_u1 = in_upper && u1_min.map_or(false, |(c, d)| frac_eq(a, b, c, d));
    let in_u2 = in_upper && u2_min.map_or(false, |(c, d)| frac_eq(a, b, c, d));
    let in_l1 = in_lower && l1_max.map_or(false, |(c, d)| frac_eq(a, b, c, d));
    let in_l2 = in_lower && l2_max.map_or(false, |(c, d)| frac_eq(a, b, c, d));
    let coprime = pair.is_coprime();
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
        upper_boundary: in_upper && in_l(a, b + 1),
        lower_boundary: in_lower && in_u(a + 1, b),
        irreducible: coprime && if in_upper { in_u2 } else { in_l1 },
    }
}
