//! Certified continued fractions and the classification of exponent pairs.
//!
//! For distinct primes p, q the ratio ξ = log q/log p is irrational, and every
//! structural question about pairs (a, b) — is p^a above or below q^b, is a/b a
//! record approximation to ξ from one side or both — reduces to exact integer
//! comparisons of prime powers. The continued-fraction quotients themselves are
//! certified the same way: a candidate quotient x at depth n is accepted only
//! with proofs of both bracketing power inequalities (the semiconvergent with x
//! lies on the correct side of ξ, the one with x + 1 does not), so no floating
//! floor operation is ever trusted.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::Error;
use crate::numbers::{is_prime_u64, try_compare_power};
use crate::Result;

/// The ratio ξ = log q / log p for distinct primes p and q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LogRatio {
    p: u64,
    q: u64,
}

impl LogRatio {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        if !is_prime_u64(q) {
            return Err(Error::domain(format!("{q} is not prime")));
        }
        if p == q {
            return Err(Error::domain("log q/log p needs distinct primes"));
        }
        Ok(LogRatio { p, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// ξ > 1 exactly when q > p.
    pub fn greater_than_one(&self) -> bool {
        self.q > self.p
    }

    /// The ratio 1/ξ = log p / log q.
    pub fn inverse(&self) -> LogRatio {
        LogRatio { p: self.q, q: self.p }
    }
}

impl fmt::Display for LogRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "log {}/log {}", self.q, self.p)
    }
}

/// A pair (a, b) of natural numbers, not both zero, standing for p^a/q^b.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentPair {
    pub a: u64,
    pub b: u64,
}

impl ExponentPair {
    pub fn new(a: u64, b: u64) -> Result<Self> {
        if a == 0 && b == 0 {
            return Err(Error::domain("exponent pair (0, 0) is excluded"));
        }
        Ok(ExponentPair { a, b })
    }

    pub fn is_coprime(&self) -> bool {
        self.a.gcd(&self.b) == 1
    }
}

impl fmt::Display for ExponentPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// Continued-fraction expansion of a [`LogRatio`]; every quotient in
/// `quotients` is certified by bracketing power inequalities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CFExpansion {
    pub quotients: Vec<BigUint>,
    pub certified_count: usize,
}

/// Where a pair sits relative to ξ and within the record-approximation sets.
///
/// `in_upper` means p^a > q^b (equivalently a > bξ); `in_lower` is the strict
/// complement. `in_u1`/`in_l1` are the pairs minimizing/maximizing a/b among
/// pairs sharing the first coordinate bound, `in_u2`/`in_l2` the analogues for
/// the second coordinate; `upper_best`/`lower_best` additionally require
/// coprimality. Boundary pairs switch sides under a unit step in b (upper) or
/// a (lower), and `irreducible` records indecomposability as a sum within the
/// pair's own side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub in_upper: bool,
    pub in_lower: bool,
    pub in_u1: bool,
    pub in_u2: bool,
    pub in_l1: bool,
    pub in_l2: bool,
    pub coprime: bool,
    pub upper_best: bool,
    pub lower_best: bool,
    pub upper_boundary: bool,
    pub lower_boundary: bool,
    pub irreducible: bool,
}

/// Incremental continued-fraction state for ξ = log q/log p.
///
/// `num_*`/`den_*` hold the last two convergent numerators (a-side) and
/// denominators (b-side). At depth n the semiconvergent with quotient k is
/// (k·num_prev + num_prev2) / (k·den_prev + den_prev2), and the Möbius map
/// k ↦ that fraction is increasing for even n, decreasing for odd n.
struct CfState {
    p: BigUint,
    q: BigUint,
    num_prev: BigUint,
    num_prev2: BigUint,
    den_prev: BigUint,
    den_prev2: BigUint,
    depth: usize,
}

/// Outcome of a capped quotient search.
enum QuotientSearch {
    Found(BigUint),
    /// The true quotient exceeds the requested cap.
    ExceedsCap,
}

/// Result bit budget for the exact fallback inside quotient certification.
const CF_EXACT_BITS: u64 = 1 << 22;

impl CfState {
    fn new(xi: &LogRatio) -> Self {
        CfState {
            p: BigUint::from(xi.p),
            q: BigUint::from(xi.q),
            num_prev: BigUint::one(),
            num_prev2: BigUint::from(0u32),
            den_prev: BigUint::from(0u32),
            den_prev2: BigUint::one(),
            depth: 0,
        }
    }

    fn semiconvergent(&self, k: &BigUint) -> (BigUint, BigUint) {
        (
            k * &self.num_prev + &self.num_prev2,
            k * &self.den_prev + &self.den_prev2,
        )
    }

    /// Decides "k < ξ_depth" (ξ_depth is the current complete quotient) by one
    /// exact power comparison on the semiconvergent with quotient k.
    fn below_complete_quotient(&self, k: &BigUint) -> Result<bool> {
        let (a, b) = self.semiconvergent(k);
        let cmp = try_compare_power(&self.p, &a, &self.q, &b, CF_EXACT_BITS).ok_or_else(|| {
            Error::UncertainOrdering {
                precision_bits: crate::real::precision_cap(),
                context: format!("{}^{} vs {}^{}", self.p, a, self.q, b),
            }
        })?;
        if cmp == Ordering::Equal {
            unreachable!("log {}/log {} cannot be rational", self.q, self.p);
        }
        // Semiconvergent fraction < ξ means p^a < q^b; the Möbius map direction
        // alternates with depth.
        let frac_below_xi = cmp == Ordering::Less;
        Ok(if self.depth % 2 == 0 { frac_below_xi } else { !frac_below_xi })
    }

    /// Finds the quotient at the current depth, certified by the bracketing
    /// probes P(x) and not-P(x + 1). With a cap, reports only whether the
    /// quotient exceeds it once the probe at cap + 1 succeeds.
    fn search_quotient(&self, k_cap: Option<&BigUint>) -> Result<QuotientSearch> {
        let one = BigUint::one();
        if !self.below_complete_quotient(&one)? {
            // Only possible at depth 0 with ξ < 1.
            return Ok(QuotientSearch::Found(BigUint::from(0u32)));
        }
        let mut lo = one.clone();
        let mut hi;
        match k_cap {
            Some(cap) => {
                if self.below_complete_quotient(&(cap + &one))? {
                    return Ok(QuotientSearch::ExceedsCap);
                }
                hi = cap + &one;
            }
            None => {
                hi = BigUint::from(2u32);
                while self.below_complete_quotient(&hi)? {
                    lo = hi.clone();
                    hi *= 2u32;
                }
            }
        }
        while &hi - &lo > one {
            let mid = (&lo + &hi) >> 1;
            if self.below_complete_quotient(&mid)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(QuotientSearch::Found(lo))
    }

    fn advance(&mut self, quotient: &BigUint) {
        let num = quotient * &self.num_prev + &self.num_prev2;
        let den = quotient * &self.den_prev + &self.den_prev2;
        self.num_prev2 = std::mem::replace(&mut self.num_prev, num);
        self.den_prev2 = std::mem::replace(&mut self.den_prev, den);
        self.depth += 1;
    }

    fn next_quotient(&mut self) -> Result<BigUint> {
        match self.search_quotient(None)? {
            QuotientSearch::Found(x) => {
                self.advance(&x);
                Ok(x)
            }
            QuotientSearch::ExceedsCap => unreachable!("uncapped search"),
        }
    }
}

/// First `count` continued-fraction quotients of ξ, each certified.
///
/// If certification fails at some depth (the power comparison stayed
/// unresolved at the precision cap and the exact fallback was infeasible),
/// the error carries the certified prefix.
pub fn cf_expand(xi: &LogRatio, count: usize) -> Result<CFExpansion> {
    let mut state = CfState::new(xi);
    let mut quotients = Vec::with_capacity(count);
    for depth in 0..count {
        match state.next_quotient() {
            Ok(x) => quotients.push(x),
            Err(Error::UncertainOrdering { .. }) => {
                return Err(Error::CfUncertain { quotients, depth });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(CFExpansion {
        certified_count: quotients.len(),
        quotients,
    })
}

/// Table of floor(n·ξ) for n = 0..=n_max, via exact power marching:
/// floor(n·ξ) is the largest m with p^m < q^n (and 0 for n = 0).
fn floor_mul_table(xi: &LogRatio, n_max: u64) -> Vec<u64> {
    let p = BigUint::from(xi.p);
    let q = BigUint::from(xi.q);
    let mut out = Vec::with_capacity(n_max as usize + 1);
    out.push(0);
    let mut m = 0u64;
    let mut p_next = p.clone();
    let mut q_pow = BigUint::one();
    for _ in 1..=n_max {
        q_pow *= &q;
        while p_next < q_pow {
            m += 1;
            p_next *= &p;
        }
        out.push(m);
    }
    out
}

/// Table of floor(m/ξ) for m = 0..=m_max: the largest n with q^n < p^m.
fn floor_div_table(xi: &LogRatio, m_max: u64) -> Vec<u64> {
    floor_mul_table(&xi.inverse(), m_max)
}

/// Compares a/b with c/d projectively, where x/0 counts as +infinity.
fn frac_cmp(a: u64, b: u64, c: u64, d: u64) -> Ordering {
    (a as u128 * d as u128).cmp(&(c as u128 * b as u128))
}

/// Full classification of one exponent pair relative to ξ.
pub fn classify(pair: ExponentPair, xi: &LogRatio) -> Classification {
    let (a, b) = (pair.a, pair.b);
    let flo_mul = floor_mul_table(xi, b + 1);
    let flo_div = floor_div_table(xi, a + 1);

    let in_upper = a > flo_mul[b as usize];
    let in_lower = !in_upper;

    // Candidate record pairs per coordinate; membership holds by construction.
    let mut in_u1 = false;
    let mut in_u2 = false;
    let mut in_l1 = false;
    let mut in_l2 = false;
    if in_upper {
        // Min of m/floor(m/ξ) over m = 1..=a, and of (floor(nξ)+1)/n over n = 0..=b.
        let mut min1: Option<(u64, u64)> = None;
        for m in 1..=a {
            let n = flo_div[m as usize];
            if min1.map_or(true, |(mm, mn)| frac_cmp(m, n, mm, mn) == Ordering::Less) {
                min1 = Some((m, n));
            }
        }
        let mut min2: Option<(u64, u64)> = None;
        for n in 0..=b {
            let m = flo_mul[n as usize] + 1;
            if min2.map_or(true, |(mm, mn)| frac_cmp(m, n, mm, mn) == Ordering::Less) {
                min2 = Some((m, n));
            }
        }
        in_u1 = min1.map_or(false, |(m, n)| frac_cmp(a, b, m, n) == Ordering::Equal);
        in_u2 = min2.map_or(false, |(m, n)| frac_cmp(a, b, m, n) == Ordering::Equal);
    } else {
        // Max of m/(floor(m/ξ)+1) over m = 0..=a, and of floor(nξ)/n over n = 1..=b.
        let mut max1: Option<(u64, u64)> = None;
        for m in 0..=a {
            let n = flo_div[m as usize] + 1;
            if max1.map_or(true, |(mm, mn)| frac_cmp(m, n, mm, mn) == Ordering::Greater) {
                max1 = Some((m, n));
            }
        }
        let mut max2: Option<(u64, u64)> = None;
        for n in 1..=b {
            let m = flo_mul[n as usize];
            if max2.map_or(true, |(mm, mn)| frac_cmp(m, n, mm, mn) == Ordering::Greater) {
                max2 = Some((m, n));
            }
        }
        in_l1 = max1.map_or(false, |(m, n)| frac_cmp(a, b, m, n) == Ordering::Equal);
        in_l2 = max2.map_or(false, |(m, n)| frac_cmp(a, b, m, n) == Ordering::Equal);
    }
    debug_assert!(!in_u1 || in_u2, "U1 must refine U2");
    debug_assert!(!in_l2 || in_l1, "L2 must refine L1");

    let coprime = pair.is_coprime();
    let upper_boundary = in_upper && a <= flo_mul[b as usize + 1];
    let lower_boundary = in_lower && a + 1 > flo_mul[b as usize];
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
        upper_boundary,
        lower_boundary,
        irreducible: coprime && if in_upper { in_u2 } else { in_l1 },
    }
}

/// All upper and lower best approximations (a, b) to ξ with a <= max_a and
/// b <= max_b, in increasing (b, a) order.
///
/// Requires ξ > 1 (pass the inverse ratio and swap coordinates otherwise).
/// The list is built from certified semiconvergents, so each returned pair is
/// proved, not sampled; an uncertain quotient aborts with the certified part.
pub fn best_approximations(xi: &LogRatio, max_a: u64, max_b: u64) -> Result<Vec<ExponentPair>> {
    if !xi.greater_than_one() {
        return Err(Error::hypothesis(format!(
            "{xi} < 1: best approximations are enumerated for ratios above 1"
        )));
    }
    let mut out: Vec<ExponentPair> = Vec::new();
    if max_a >= 1 {
        out.push(ExponentPair { a: 1, b: 0 });
    }
    let mut state = CfState::new(xi);
    let partial = |out: &mut Vec<ExponentPair>, depth: usize| {
        out.sort_by_key(|pr| (pr.b, pr.a));
        Error::PartialBestApproximations {
            partial: std::mem::take(out),
            detail: format!("quotient at depth {depth} not certified"),
        }
    };
    let x0 = match state.next_quotient() {
        Ok(x) => x,
        Err(Error::UncertainOrdering { .. }) => return Err(partial(&mut out, 0)),
        Err(e) => return Err(e),
    };
    if max_b >= 1 {
        if let Some(x0) = x0.to_u64() {
            if x0 <= max_a {
                out.push(ExponentPair { a: x0, b: 1 });
            }
        }
    }
    let max_a_big = BigUint::from(max_a);
    let max_b_big = BigUint::from(max_b);
    loop {
        // Largest k whose semiconvergent stays inside both bounds.
        let cap_of = |prev: &BigUint, prev2: &BigUint, bound: &BigUint| -> BigUint {
            if prev2 > bound {
                BigUint::from(0u32)
            } else {
                (bound - prev2) / prev
            }
        };
        let k_cap = cap_of(&state.num_prev, &state.num_prev2, &max_a_big)
            .min(cap_of(&state.den_prev, &state.den_prev2, &max_b_big));
        if k_cap == BigUint::from(0u32) {
            break;
        }
        let (last_k, done) = match state.search_quotient(Some(&k_cap)) {
            Ok(QuotientSearch::Found(x)) => (x, false),
            Ok(QuotientSearch::ExceedsCap) => (k_cap, true),
            Err(Error::UncertainOrdering { .. }) => return Err(partial(&mut out, state.depth)),
            Err(e) => return Err(e),
        };
        let mut k = BigUint::one();
        while k <= last_k {
            let (a, b) = state.semiconvergent(&k);
            out.push(ExponentPair {
                a: a.to_u64().expect("capped within max_a"),
                b: b.to_u64().expect("capped within max_b"),
            });
            k += 1u32;
        }
        if done {
            break;
        }
        state.advance(&last_k);
    }
    out.sort_by_key(|pr| (pr.b, pr.a));
    out.dedup();
    Ok(out)
}

/// Whether a/b is a strict closest approximation to ξ among all fractions
/// with denominator at most b (a best approximation of the first kind).
///
/// Panics unless gcd(a, b) = 1 and b >= 1. Exact throughout: same-side
/// distance comparisons reduce to integer products, opposite-side ones to a
/// single power comparison.
pub fn is_first_kind_best(pair: ExponentPair, xi: &LogRatio) -> bool {
    let (a, b) = (pair.a, pair.b);
    assert!(b >= 1, "first-kind test needs b >= 1, got {pair}");
    assert!(pair.is_coprime(), "first-kind test needs gcd(a, b) = 1, got {pair}");
    let flo = floor_mul_table(xi, b);
    let pair_upper = a > flo[b as usize];
    let p = BigUint::from(xi.p);
    let q = BigUint::from(xi.q);
    // X vs Y with X = s|bξ - a| and Y = b|sξ - r|; candidate strictly closer
    // (or tied) exactly when X > Y (X = Y), ruling the pair out.
    let beaten = |r: u64, s: u64, cand_upper: bool| -> bool {
        if r == a && s == b {
            return false;
        }
        let sa = s as u128 * a as u128;
        let rb = r as u128 * b as u128;
        let cmp = match (pair_upper, cand_upper) {
            (true, true) => sa.cmp(&rb),
            (false, false) => rb.cmp(&sa),
            (true, false) | (false, true) => {
                let e1 = BigUint::from(sa + rb);
                let e2 = BigUint::from(2u128 * s as u128 * b as u128);
                let power = try_compare_power(&p, &e1, &q, &e2, u64::MAX)
                    .expect("feasible exponents");
                if pair_upper {
                    power
                } else {
                    power.reverse()
                }
            }
        };
        cmp != Ordering::Less
    };
    for s in 1..=b {
        let below = flo[s as usize];
        if beaten(below, s, false) || beaten(below + 1, s, true) {
            return false;
        }
    }
    true
}

/// Whether the pair cannot be split as a sum of two pairs on its own side
/// of ξ. In debug builds the definitional decomposition search double-checks
/// the classification route for small pairs.
pub fn is_irreducible(pair: ExponentPair, xi: &LogRatio) -> bool {
    let fast = classify(pair, xi).irreducible;
    #[cfg(debug_assertions)]
    if pair.a + pair.b <= 60 {
        let (a, b) = (pair.a, pair.b);
        let flo = floor_mul_table(xi, b);
        let upper = |c: u64, d: u64| c > flo[d as usize];
        let side = upper(a, b);
        let mut reducible = false;
        'outer: for c in 0..=a {
            for d in 0..=b {
                if (c == 0 && d == 0) || (c == a && d == b) {
                    continue;
                }
                if upper(c, d) == side && upper(a - c, b - d) == side {
                    reducible = true;
                    break 'outer;
                }
            }
        }
        debug_assert_eq!(
            fast, !reducible,
            "classification and decomposition disagree at {pair}"
        );
    }
    fast
}
