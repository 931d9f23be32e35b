//! Prime pairs whose log ratio is pinched between consecutive Fibonacci
//! ratios, the search that produces them, and the experiment that checks the
//! conjectured structure of their infimum sets at desk scale.

use num_bigint::BigUint;
use std::cmp::Ordering;
use std::fmt;

use crate::approx::ExponentPair;
use crate::error::Error;
use crate::infimum::{
    characteristic_transformation, empirical_minimal_set, enumerate_vectors, CharTransform,
    FactorizationVector,
};
use crate::measures::PrimePowerRational;
use crate::numbers::{compare_power, is_prime_u64};
use crate::Result;

/// Largest prime p the pair search will try before giving up.
pub const PRIME_SEARCH_CAP: u64 = 1_000_000;

/// Largest even index accepted by the golden-pair machinery. Keeps every
/// Fibonacci number involved (up to index n + 1) well inside u64 and the
/// power comparisons cheap.
const MAX_EVEN_INDEX: u64 = 86;

/// The prefix h_0 = 0, h_1 = 1, h_2 = 1, ... of the Fibonacci sequence.
#[derive(Debug, Clone)]
pub struct FibSequence {
    values: Vec<u64>,
}

impl FibSequence {
    /// Builds h_0 through h_n. Indices past 93 overflow u64 and are refused.
    pub fn up_to(n: u64) -> Result<FibSequence> {
        if n > 93 {
            return Err(Error::domain(format!(
                "Fibonacci index {n} exceeds 93, the largest whose value fits in 64 bits"
            )));
        }
        let mut values = Vec::with_capacity(n as usize + 1);
        values.push(0);
        if n >= 1 {
            values.push(1);
        }
        while values.len() <= n as usize {
            let k = values.len();
            values.push(values[k - 1] + values[k - 2]);
        }
        Ok(FibSequence { values })
    }

    pub fn h(&self, i: u64) -> u64 {
        self.values[i as usize]
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }
}

/// Distinct primes p, q with h_n/h_{n-1} < log q/log p < h_{n+1}/h_n for an
/// even index n. Both inequalities are certified by exact power comparisons
/// at construction; no float reasoning is involved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GoldenPair {
    n: u64,
    p: u64,
    q: u64,
}

impl GoldenPair {
    /// Validates the index and primality, then certifies the two defining
    /// inequalities q^h(n-1) > p^h(n) and q^h(n) < p^h(n+1) exactly.
    pub fn certify(n: u64, p: u64, q: u64) -> Result<GoldenPair> {
        let fibs = checked_index(n)?;
        for v in [p, q] {
            if !is_prime_u64(v) {
                return Err(Error::domain(format!("{v} is not prime")));
            }
        }
        if p == q {
            return Err(Error::domain("the two primes must be distinct"));
        }
        let (h_prev, h_n, h_next) = (fibs.h(n - 1), fibs.h(n), fibs.h(n + 1));
        if power_cmp(q, h_prev, p, h_n) != Ordering::Greater {
            return Err(Error::hypothesis(format!(
                "({p}, {q}) is not a golden pair at n = {n}: \
                 {q}^{h_prev} does not exceed {p}^{h_n}"
            )));
        }
        if power_cmp(q, h_n, p, h_next) != Ordering::Less {
            return Err(Error::hypothesis(format!(
                "({p}, {q}) is not a golden pair at n = {n}: \
                 {q}^{h_n} is not below {p}^{h_next}"
            )));
        }
        Ok(GoldenPair { n, p, q })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// The rational p^h(n+1)/q^h(n) this pair was built to study.
    pub fn alpha(&self) -> Result<PrimePowerRational> {
        let fibs = FibSequence::up_to(self.n + 1)?;
        PrimePowerRational::new(self.p, self.q, fibs.h(self.n + 1), fibs.h(self.n))
    }
}

impl fmt::Display for GoldenPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p, q) = ({}, {}) at n = {}", self.p, self.q, self.n)
    }
}

fn checked_index(n: u64) -> Result<FibSequence> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::domain(format!(
            "the index must be a positive even integer, got {n}"
        )));
    }
    if n > MAX_EVEN_INDEX {
        return Err(Error::domain(format!(
            "index {n} exceeds the supported maximum {MAX_EVEN_INDEX}"
        )));
    }
    FibSequence::up_to(n + 1)
}

fn power_cmp(x: u64, e: u64, y: u64, f: u64) -> Ordering {
    compare_power(
        &BigUint::from(x),
        &BigUint::from(e),
        &BigUint::from(y),
        &BigUint::from(f),
    )
}

/// Smallest prime at or above `m`.
fn next_prime_at_least(m: u64) -> u64 {
    let mut c = m.max(2);
    while !is_prime_u64(c) {
        c += 1;
    }
    c
}

/// Smallest q in [lo, hi] with `pred(q)` true, given that `pred` is monotone
/// (false then true) on the range and `pred(hi)` holds.
fn monotone_threshold(mut lo: u64, mut hi: u64, pred: impl Fn(u64) -> bool) -> u64 {
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// Smallest prime q paired with p at index n, if the window for p contains
/// a prime at all. The window endpoints are located by bisection on exact
/// power comparisons, never on floating-point roots.
fn partner(p: u64, h_prev: u64, h_n: u64, h_next: u64) -> Option<u64> {
    let past_lower = |q: u64| power_cmp(q, h_prev, p, h_n) == Ordering::Greater;
    let past_upper = |q: u64| power_cmp(q, h_n, p, h_next) != Ordering::Less;
    let mut probe = 2u64;
    while !past_lower(probe) {
        probe = probe.checked_mul(2).expect("window endpoints fit in u64");
    }
    let q_lo = monotone_threshold(2, probe, past_lower);
    if past_upper(q_lo) {
        return None;
    }
    let mut probe = q_lo;
    while !past_upper(probe) {
        probe = probe.checked_mul(2).expect("window endpoints fit in u64");
    }
    let q_hi = monotone_threshold(q_lo, probe, past_upper) - 1;
    (q_lo..=q_hi).find(|&q| is_prime_u64(q))
}

/// Searches for the golden pair with the smallest prime p at or above
/// `p_start`, taking the smallest admissible prime q for that p.
pub fn find_golden_pair(n: u64, p_start: u64) -> Result<GoldenPair> {
    let fibs = checked_index(n)?;
    let (h_prev, h_n, h_next) = (fibs.h(n - 1), fibs.h(n), fibs.h(n + 1));
    let mut p = next_prime_at_least(p_start);
    while p <= PRIME_SEARCH_CAP {
        if let Some(q) = partner(p, h_prev, h_n, h_next) {
            return GoldenPair::certify(n, p, q);
        }
        p = next_prime_at_least(p + 1);
    }
    Err(Error::SearchCapExceeded {
        cap: PRIME_SEARCH_CAP,
        what: format!("a prime p >= {p_start} with a golden partner at n = {n}"),
    })
}

/// Characteristic transformation of p^h(n+1)/q^h(n), computed independently
/// through the best-approximation machinery and then compared column by
/// column against the consecutive-Fibonacci prediction ((h_1, h_0), ...,
/// (h_{n+1}, h_n)). A mismatch is reported as a cross-check failure: the
/// prediction is a theorem, so disagreement means a defect, not bad input.
pub fn golden_char_transform(pair: &GoldenPair) -> Result<CharTransform> {
    let fibs = FibSequence::up_to(pair.n() + 1)?;
    let alpha = pair.alpha()?;
    let transform = characteristic_transformation(&alpha)?;
    let predicted: Vec<ExponentPair> = (0..=pair.n())
        .map(|j| ExponentPair::new(fibs.h(j + 1), fibs.h(j)).expect("nonzero Fibonacci pair"))
        .collect();
    if transform.columns() != predicted {
        return Err(Error::CrossCheck(format!(
            "characteristic transformation of {alpha} has columns {:?}, \
             the consecutive-Fibonacci prediction gives {:?}",
            transform.columns(),
            predicted
        )));
    }
    Ok(transform)
}

/// The conjectured minimal family for index n: the j-th member (j = 0..n-1)
/// places h_{j+1} on the next-to-last-minus-j column and h_j just before it,
/// pairing consecutive Fibonacci numbers on consecutive columns. Member 0 is
/// the trivial vector.
pub fn conjectured_family(n: u64) -> Result<Vec<FactorizationVector>> {
    checked_index(n)?;
    let fibs = FibSequence::up_to(n)?;
    let width = (n + 1) as usize;
    Ok((0..n as usize)
        .map(|j| {
            let mut entries = vec![0u64; width];
            entries[width - 1 - j] = fibs.h(j as u64 + 1);
            entries[width - 2 - j] = fibs.h(j as u64);
            FactorizationVector::new(entries)
        })
        .collect())
}

/// Natural-log ceiling on the vector count of a golden pair's rational,
/// (2 log2 h + 1) * ln(h + 1) for h = h_{n+1}.
pub fn vector_count_log_bound(h_next: u64) -> f64 {
    let h = h_next as f64;
    (2.0 * h.log2() + 1.0) * (h + 1.0).ln()
}

/// Everything one index of the experiment produces: the conjectured family
/// and crossing count next to what the profile machinery actually observed.
#[derive(Debug, Clone)]
pub struct GoldenCaseReport {
    pub pair: GoldenPair,
    pub alpha: PrimePowerRational,
    pub vector_count: usize,
    /// Proved ceiling on ln(vector_count).
    pub log_count_bound: f64,
    pub count_bound_ok: bool,
    /// Conjectured members, ascending lexicographic.
    pub conjectured: Vec<FactorizationVector>,
    /// Observed empirical minimal set, ascending lexicographic.
    pub observed: Vec<FactorizationVector>,
    pub members_match: bool,
    pub conjectured_exceptional: usize,
    pub observed_exceptional: usize,
    pub observed_uncertain: usize,
    /// Whether the observations match the conjecture at this scale: members
    /// and crossing count agree, with no uncertain brackets and a stabilized
    /// tail. Never an assertion that the conjecture is true.
    pub supported: bool,
}

/// Runs the full pipeline for one golden pair: cross-checked transformation,
/// vector enumeration with the size-bound check, empirical minimal set over
/// (1, t_max], and the comparison against the conjectured family.
pub fn golden_case(pair: &GoldenPair, t_max: f64) -> Result<GoldenCaseReport> {
    let transform = golden_char_transform(pair)?;
    let alpha = transform.alpha().clone();
    let vectors = enumerate_vectors(&transform);
    let fibs = FibSequence::up_to(pair.n() + 1)?;
    let log_count_bound = vector_count_log_bound(fibs.h(pair.n() + 1));
    let count_bound_ok = (vectors.len() as f64).ln() <= log_count_bound;

    let mut conjectured = conjectured_family(pair.n())?;
    for member in &conjectured {
        let (mut sa, mut sb) = (0u64, 0u64);
        for (x, col) in member.entries().iter().zip(transform.columns()) {
            sa += x * col.a;
            sb += x * col.b;
        }
        if (sa, sb) != (alpha.a(), alpha.b()) {
            return Err(Error::CrossCheck(format!(
                "conjectured member {member} of the family for n = {} does not \
                 multiply out to {alpha}",
                pair.n()
            )));
        }
    }
    conjectured.sort();

    let set = empirical_minimal_set(&alpha, t_max)?;
    let observed = set.members.clone();
    let members_match = observed == conjectured;
    let conjectured_exceptional = pair.n() as usize - 1;
    let observed_exceptional = set.profile.exceptional_count;
    let observed_uncertain = set.profile.uncertain_count;
    let supported = members_match
        && observed_exceptional == conjectured_exceptional
        && observed_uncertain == 0
        && set.profile.stabilized;
    Ok(GoldenCaseReport {
        pair: *pair,
        alpha,
        vector_count: vectors.len(),
        log_count_bound,
        count_bound_ok,
        conjectured,
        observed,
        members_match,
        conjectured_exceptional,
        observed_exceptional,
        observed_uncertain,
        supported,
    })
}

/// One index of the experiment; failures stay recorded instead of aborting
/// the sweep.
#[derive(Debug, Clone)]
pub struct GrCase {
    pub n: u64,
    pub outcome: Result<GoldenCaseReport>,
}

#[derive(Debug, Clone)]
pub struct GrExperiment {
    pub n_max: u64,
    pub p_start: u64,
    pub cases: Vec<GrCase>,
    /// True when every index produced a report and every report supports the
    /// conjectured structure at this scale.
    pub all_supported: bool,
}

/// Runs the conjecture experiment for every even n up to n_max: find the
/// smallest golden pair from p_start, run the pipeline, and record whether
/// the observations support the conjectured family and count. Per-index
/// failures are captured in the report and the sweep continues.
pub fn gr_conjecture_experiment(n_max: u64, p_start: u64, t_max: f64) -> Result<GrExperiment> {
    if n_max < 4 || n_max % 2 != 0 {
        return Err(Error::domain(format!(
            "the experiment needs an even n_max of at least 4, got {n_max}"
        )));
    }
    let mut cases = Vec::new();
    let mut all_supported = true;
    let mut n = 2;
    while n <= n_max {
        let outcome = find_golden_pair(n, p_start).and_then(|pair| golden_case(&pair, t_max));
        all_supported &= matches!(&outcome, Ok(report) if report.supported);
        cases.push(GrCase { n, outcome });
        n += 2;
    }
    Ok(GrExperiment {
        n_max,
        p_start,
        cases,
        all_supported,
    })
}
