//! Mahler measures of rationals and t-norm measure functions of factorizations.
//!
//! The measure of a reduced rational r/s is log max(|r|, |s|); for the numbers
//! this crate cares about the maximum is always a prime power, so measures are
//! kept symbolically as `exp * log(base)` and compared exactly through integer
//! power comparisons. A factorization α = Π αᵢ induces the measure function
//! f(t) = (Σ m(αᵢ)^t)^(1/t); m_t(α) is the infimum of these over all
//! factorizations, and every minimization here returns certified enclosures
//! with the set of minimizing factorization classes.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::approx::{classify, ExponentPair, LogRatio};
use crate::error::Error;
use crate::numbers::{big_pow, compare_power, log_enclosure};
use crate::real::{precision_cap, CertifiedReal, DEFAULT_PRECISION_BITS, PRECISION_CAP_BITS};
use crate::{infimum, oracle, Result};

/// A rational of the form p^a / q^b for distinct primes p, q with (a, b) ≠ (0, 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimePowerRational {
    p: u64,
    q: u64,
    a: u64,
    b: u64,
}

impl PrimePowerRational {
    pub fn new(p: u64, q: u64, a: u64, b: u64) -> Result<Self> {
        LogRatio::new(p, q)?;
        ExponentPair::new(a, b)?;
        Ok(PrimePowerRational { p, q, a, b })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn pair(&self) -> ExponentPair {
        ExponentPair { a: self.a, b: self.b }
    }

    pub fn log_ratio(&self) -> LogRatio {
        LogRatio::new(self.p, self.q).expect("validated at construction")
    }

    /// The same number presented as q^b' / p^a' when p > q, so that the
    /// approximation theory always sees a ratio above 1. Measures and
    /// factorizations are invariant under this flip.
    pub fn normalized(&self) -> PrimePowerRational {
        if self.p < self.q {
            *self
        } else {
            PrimePowerRational { p: self.q, q: self.p, a: self.b, b: self.a }
        }
    }
}

impl fmt::Display for PrimePowerRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}/{}^{}", self.p, self.a, self.q, self.b)
    }
}

/// A logarithm of a natural number, stored symbolically as exp * log(base)
/// so that order and equality stay exact.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Measure {
    base: BigUint,
    exp: u64,
}

impl Measure {
    pub fn log_of(n: BigUint) -> Measure {
        Measure { base: n, exp: 1 }
    }

    pub fn power_log(base: u64, exp: u64) -> Measure {
        Measure { base: BigUint::from(base), exp }
    }

    pub fn base(&self) -> &BigUint {
        &self.base
    }

    pub fn exp(&self) -> u64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.exp == 0 || self.base.is_one()
    }

    /// Exact order by value: exp·log(base) vs other, decided on base^exp.
    pub fn value_cmp(&self, other: &Measure) -> Ordering {
        compare_power(
            &self.base,
            &BigUint::from(self.exp),
            &other.base,
            &BigUint::from(other.exp),
        )
    }

    pub fn eval(&self, bits: u32) -> Result<CertifiedReal> {
        if self.is_zero() {
            return Ok(CertifiedReal::from_u64(0, bits));
        }
        Ok(log_enclosure(&self.base, bits)?.scale_u64(self.exp))
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 1 {
            write!(f, "log({})", self.base)
        } else {
            write!(f, "{}*log({})", self.exp, self.base)
        }
    }
}

/// Mahler measure of the rational r/s: log max(r, s).
///
/// Requires r/s in lowest terms; zero numerator or denominator is rejected.
pub fn mahler_measure(r: &BigUint, s: &BigUint) -> Result<Measure> {
    if r.is_zero() || s.is_zero() {
        return Err(Error::domain("measure of 0 or of x/0 is undefined"));
    }
    if r.gcd(s) != BigUint::one() {
        return Err(Error::domain(format!("{r}/{s} is not in lowest terms")));
    }
    Ok(Measure::log_of(r.max(s).clone()))
}

/// Records how a measure function arose.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionSource {
    /// Built directly from a list of measures.
    Direct,
    /// Coefficients over the columns of a characteristic transformation.
    Vector { entries: Vec<u64> },
    /// Explicit factorization parts (aᵢ, bᵢ).
    Parts { parts: Vec<(u64, u64)> },
}

/// f(t) = (Σ w·m^t)^(1/t) for a weighted multiset of positive measures,
/// kept in canonical form: strictly decreasing measures, positive weights.
#[derive(Debug, Clone)]
pub struct MeasureFunction {
    terms: Vec<(u64, Measure)>,
    source: FunctionSource,
}

impl MeasureFunction {
    pub fn from_weighted(pairs: Vec<(u64, Measure)>, source: FunctionSource) -> Result<Self> {
        let mut pairs: Vec<(u64, Measure)> = pairs.into_iter().filter(|(w, _)| *w > 0).collect();
        if pairs.iter().any(|(_, m)| m.is_zero()) {
            return Err(Error::domain("measure function with a zero measure"));
        }
        if pairs.is_empty() {
            return Err(Error::domain("empty measure function"));
        }
        pairs.sort_by(|(_, m1), (_, m2)| m2.value_cmp(m1));
        let mut terms: Vec<(u64, Measure)> = Vec::with_capacity(pairs.len());
        for (w, m) in pairs {
            match terms.last_mut() {
                Some((wl, ml)) if ml.value_cmp(&m) == Ordering::Equal => *wl += w,
                _ => terms.push((w, m)),
            }
        }
        Ok(MeasureFunction { terms, source })
    }

    pub fn from_measures(measures: Vec<Measure>, source: FunctionSource) -> Result<Self> {
        Self::from_weighted(measures.into_iter().map(|m| (1, m)).collect(), source)
    }

    /// Measure function of an explicit factorization of powers of p and q:
    /// each part (c, d) contributes max(c·log p, d·log q).
    pub fn from_parts(p: u64, q: u64, parts: &[(u64, u64)]) -> Result<Self> {
        let measures = parts
            .iter()
            .map(|&(c, d)| part_measure(p, q, c, d))
            .collect::<Result<Vec<_>>>()?;
        Self::from_measures(measures, FunctionSource::Parts { parts: parts.to_vec() })
    }

    pub fn terms(&self) -> &[(u64, Measure)] {
        &self.terms
    }

    pub fn source(&self) -> &FunctionSource {
        &self.source
    }

    pub fn part_count(&self) -> u64 {
        self.terms.iter().map(|(w, _)| *w).sum()
    }

    /// Equality of the underlying weighted multisets (hence of the functions).
    pub fn same_multiset(&self, other: &MeasureFunction) -> bool {
        self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .zip(&other.terms)
                .all(|((w1, m1), (w2, m2))| w1 == w2 && m1.value_cmp(m2) == Ordering::Equal)
    }

    /// Order of the functions as t → ∞: lexicographic on the decreasing
    /// measure sequences, a shared prefix losing to the longer function.
    pub fn cmp_at_infinity(&self, other: &MeasureFunction) -> Ordering {
        let (mut i, mut j) = (0usize, 0usize);
        let (mut wi, mut wj) = (0u64, 0u64);
        loop {
            match (self.terms.get(i), other.terms.get(j)) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((w1, m1)), Some((w2, m2))) => {
                    match m1.value_cmp(m2) {
                        Ordering::Equal => {
                            let r1 = w1 - wi;
                            let r2 = w2 - wj;
                            let used = r1.min(r2);
                            wi += used;
                            wj += used;
                            if wi == *w1 {
                                i += 1;
                                wi = 0;
                            }
                            if wj == *w2 {
                                j += 1;
                                wj = 0;
                            }
                        }
                        ord => return ord,
                    }
                }
            }
        }
    }

    /// Exact value key at t = 1: the sum Σ w·m equals log of this product.
    pub fn exact_sum_product(&self) -> BigUint {
        let mut acc = BigUint::one();
        for (w, m) in &self.terms {
            let e = (*w as u128) * (m.exp as u128);
            acc *= big_pow(&m.base, u64::try_from(e).expect("weighted exponent fits u64"));
        }
        acc
    }

    /// Σ w·m^t: same minimizers as the full function at fixed t > 0.
    pub fn eval_sum_pow(&self, t: &CertifiedReal, bits: u32) -> Result<CertifiedReal> {
        let mut acc = CertifiedReal::from_u64(0, bits);
        for (w, m) in &self.terms {
            acc = acc.add(&m.eval(bits)?.pow(t)?.scale_u64(*w));
        }
        Ok(acc)
    }

    /// The measure function itself, (Σ w·m^t)^(1/t).
    pub fn eval(&self, t: &CertifiedReal, bits: u32) -> Result<CertifiedReal> {
        self.eval_sum_pow(t, bits)?.pow(&t.recip()?)
    }
}

pub(crate) fn part_measure(p: u64, q: u64, c: u64, d: u64) -> Result<Measure> {
    if c == 0 && d == 0 {
        return Err(Error::domain("factorization part (0, 0)"));
    }
    let cmp = compare_power(
        &BigUint::from(p),
        &BigUint::from(c),
        &BigUint::from(q),
        &BigUint::from(d),
    );
    Ok(if cmp == Ordering::Less {
        Measure::power_log(q, d)
    } else {
        Measure::power_log(p, c)
    })
}

/// The exponent t of the t-metric, kept as exact text so precision can be
/// chosen per use instead of freezing one floating approximation.
#[derive(Debug, Clone, PartialEq)]
pub struct TParam {
    repr: TRepr,
}

#[derive(Debug, Clone, PartialEq)]
enum TRepr {
    Decimal(String),
    Dyadic(f64),
}

impl TParam {
    /// Parses a positive decimal literal.
    pub fn parse(s: &str) -> Result<TParam> {
        let probe = CertifiedReal::parse_decimal(s, DEFAULT_PRECISION_BITS)?;
        if probe.sign_certain() != Some(Ordering::Greater) {
            return Err(Error::domain(format!("t must be positive, got {s}")));
        }
        Ok(TParam { repr: TRepr::Decimal(s.trim().to_string()) })
    }

    /// Wraps an exactly representable value, e.g. a bisection midpoint.
    pub fn from_f64(v: f64) -> Result<TParam> {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::domain(format!("t must be positive, got {v}")));
        }
        Ok(TParam { repr: TRepr::Dyadic(v) })
    }

    pub fn one() -> TParam {
        TParam { repr: TRepr::Dyadic(1.0) }
    }

    pub fn enclosure(&self, bits: u32) -> CertifiedReal {
        match &self.repr {
            TRepr::Decimal(s) => {
                CertifiedReal::parse_decimal(s, bits).expect("validated at construction")
            }
            TRepr::Dyadic(v) => CertifiedReal::from_f64(*v, bits),
        }
    }

    /// Exact position relative to 1; decimal literals always resolve.
    pub fn cmp_one(&self) -> Ordering {
        let mut bits = DEFAULT_PRECISION_BITS;
        loop {
            let one = CertifiedReal::from_u64(1, bits);
            if let Some(ord) = self.enclosure(bits).cmp_certain(&one) {
                return ord;
            }
            assert!(
                bits < PRECISION_CAP_BITS,
                "decimal literal with over a thousand digits straddling 1"
            );
            bits *= 2;
        }
    }

    pub fn is_one(&self) -> bool {
        self.cmp_one() == Ordering::Equal
    }
}

impl fmt::Display for TParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            TRepr::Decimal(s) => f.write_str(s),
            TRepr::Dyadic(v) => write!(f, "{v}"),
        }
    }
}

/// How m_t should be computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MtMethod {
    /// Through the characteristic transformation and its factorization
    /// vectors; requires (a, b) to be a best approximation pair.
    CfInfimumSet,
    /// Brute-force enumeration of all factorizations; exponential, bounded.
    Oracle,
}

/// Output of [`m_t`]: a certified value and every minimizing class found.
#[derive(Debug, Clone)]
pub struct MtOutcome {
    pub value: CertifiedReal,
    pub argmin: Vec<MeasureFunction>,
    pub method: MtMethod,
    /// Factorization classes compared (1 for the t <= 1 shortcut).
    pub candidates: usize,
}

/// The t-metric Mahler measure of α = p^a/q^b.
///
/// For t <= 1 the infimum is attained by α itself and m(α) is returned
/// directly. For t > 1 the chosen method enumerates candidate factorizations
/// and minimizes with certified interval arithmetic.
pub fn m_t(alpha: &PrimePowerRational, t: &TParam, method: MtMethod) -> Result<MtOutcome> {
    if t.cmp_one() != Ordering::Greater {
        let norm = alpha.normalized();
        let m = part_measure(norm.p(), norm.q(), norm.a(), norm.b())?;
        let f = MeasureFunction::from_measures(
            vec![m],
            FunctionSource::Parts { parts: vec![(norm.a(), norm.b())] },
        )?;
        let t_enc = t.enclosure(DEFAULT_PRECISION_BITS);
        let value = f.eval(&t_enc, DEFAULT_PRECISION_BITS)?;
        return Ok(MtOutcome { value, argmin: vec![f], method, candidates: 1 });
    }
    match method {
        MtMethod::CfInfimumSet => {
            let norm = alpha.normalized();
            let class = classify(norm.pair(), &norm.log_ratio());
            if !(class.upper_best || class.lower_best) {
                return Err(Error::hypothesis(format!(
                    "({}, {}) is not a best approximation pair for {}; \
                     the vector route needs one (try the oracle method)",
                    norm.a(),
                    norm.b(),
                    norm.log_ratio(),
                )));
            }
            let transform = infimum::characteristic_transformation(&norm)?;
            let vectors = infimum::enumerate_vectors(&transform);
            let classes = infimum::vector_classes(&transform, &vectors);
            let min = certified_min(&classes, t, precision_cap())?;
            Ok(MtOutcome {
                value: min.value,
                argmin: min.argmin.iter().map(|&i| classes[i].clone()).collect(),
                method,
                candidates: classes.len(),
            })
        }
        MtMethod::Oracle => {
            let outcome = oracle::oracle_m_t(alpha, t, oracle::DEFAULT_BOUND)?;
            Ok(MtOutcome {
                value: outcome.value,
                argmin: outcome.argmin_classes,
                method,
                candidates: outcome.class_count,
            })
        }
    }
}

/// Result of a certified minimization over measure-function classes.
#[derive(Debug, Clone)]
pub struct MinOutcome {
    pub value: CertifiedReal,
    /// Indices of all classes attaining the minimum. More than one only for
    /// exact ties, which are provable at t = 1 and error out elsewhere.
    pub argmin: Vec<usize>,
    pub bits_used: u32,
}

/// Minimizes f_i(t) over classes with escalating precision. Distinct classes
/// whose enclosures still overlap at `cap_bits` are reported as uncertain,
/// except at t = 1 where ties and order are decided exactly via products.
pub fn certified_min(
    classes: &[MeasureFunction],
    t: &TParam,
    cap_bits: u32,
) -> Result<MinOutcome> {
    RankedEvaluator::new(classes).argmin(t, cap_bits)
}

/// Batch minimizer over many classes that share few distinct measure values.
///
/// Classes drawn from one factorization problem use measures from a small pool
/// (every part measure is a power of p or of q bounded by the exponents), so
/// each distinct value is evaluated and raised to the t-th power once per
/// precision rung and classes reduce to short weighted sums of those powers.
/// Comparisons happen on Σ w·m^t directly: for fixed t the outer 1/t root is
/// monotone and cannot change the argmin.
pub(crate) struct RankedEvaluator<'a> {
    classes: &'a [MeasureFunction],
    rank_measures: Vec<Measure>,
    /// Per class: (rank, weight) terms, weights positive.
    terms: Vec<Vec<(usize, u64)>>,
}

impl<'a> RankedEvaluator<'a> {
    pub(crate) fn new(classes: &'a [MeasureFunction]) -> Self {
        assert!(!classes.is_empty(), "minimization over no classes");
        let mut rank_measures: Vec<Measure> = Vec::new();
        let mut terms = Vec::with_capacity(classes.len());
        for f in classes {
            let mut row = Vec::with_capacity(f.terms().len());
            for (w, m) in f.terms() {
                let rank = rank_measures
                    .iter()
                    .position(|r| r.value_cmp(m) == Ordering::Equal)
                    .unwrap_or_else(|| {
                        rank_measures.push(m.clone());
                        rank_measures.len() - 1
                    });
                row.push((rank, *w));
            }
            terms.push(row);
        }
        RankedEvaluator { classes, rank_measures, terms }
    }

    /// Enclosures of Σ w·m^t for every class, with the distinct powers m^t
    /// computed once.
    fn sums_at(&self, t_enc: &CertifiedReal, bits: u32) -> Result<Vec<CertifiedReal>> {
        let mut pows = Vec::with_capacity(self.rank_measures.len());
        for m in &self.rank_measures {
            pows.push(m.eval(bits)?.pow(t_enc)?);
        }
        let sums = self
            .terms
            .iter()
            .map(|row| {
                let mut acc: Option<CertifiedReal> = None;
                for &(rank, w) in row {
                    let term = pows[rank].scale_u64(w);
                    acc = Some(match acc {
                        Some(prev) => prev.add(&term),
                        None => term,
                    });
                }
                acc.expect("measure functions have at least one term")
            })
            .collect();
        Ok(sums)
    }

    /// All minimizing class indices, plus an enclosure of the minimum of the
    /// full f(t) = (Σ w·m^t)^(1/t).
    pub(crate) fn argmin(&self, t: &TParam, cap_bits: u32) -> Result<MinOutcome> {
        if t.is_one() {
            let keys: Vec<BigUint> =
                self.classes.iter().map(|f| f.exact_sum_product()).collect();
            let min_key = keys.iter().min().expect("nonempty").clone();
            let argmin: Vec<usize> =
                (0..self.classes.len()).filter(|&i| keys[i] == min_key).collect();
            let value = log_enclosure(&min_key, DEFAULT_PRECISION_BITS)?;
            return Ok(MinOutcome { value, argmin, bits_used: DEFAULT_PRECISION_BITS });
        }
        let mut bits = DEFAULT_PRECISION_BITS;
        loop {
            let t_enc = t.enclosure(bits);
            let sums = self.sums_at(&t_enc, bits)?;
            let min_hi = sums
                .iter()
                .map(|e| e.hi().clone())
                .reduce(|a, b| a.min(&b))
                .expect("nonempty");
            let survivors: Vec<usize> = (0..self.classes.len())
                .filter(|&i| sums[i].lo().cmp(&min_hi).map(|c| c <= 0).unwrap_or(true))
                .collect();
            if survivors.len() == 1 {
                let winner = survivors[0];
                let value = self.classes[winner].eval(&t_enc, bits)?;
                return Ok(MinOutcome { value, argmin: survivors, bits_used: bits });
            }
            if bits >= cap_bits {
                return Err(Error::UncertainOrdering {
                    precision_bits: bits,
                    context: format!(
                        "{} candidate classes remain within one enclosure at t = {t}",
                        survivors.len()
                    ),
                });
            }
            bits = (bits * 2).min(cap_bits);
        }
    }

    /// The unique minimizing class at a dyadic t > 1, or None if the ordering
    /// stays uncertain at the precision cap.
    pub(crate) fn active_unique(&self, t: f64, cap_bits: u32) -> Option<usize> {
        debug_assert!(t > 1.0);
        let tp = TParam::from_f64(t).expect("sample points are finite and positive");
        match self.argmin(&tp, cap_bits) {
            Ok(out) => {
                debug_assert_eq!(out.argmin.len(), 1);
                out.argmin.first().copied()
            }
            Err(Error::UncertainOrdering { .. }) => None,
            Err(e) => panic!("minimization failed for a reason other than precision: {e}"),
        }
    }
}

/// Certified enclosure of f(t) = (Σ w·m^t)^(1/t) for one measure function.
pub fn eval_measure_function(
    f: &MeasureFunction,
    t: &TParam,
    bits: u32,
) -> Result<CertifiedReal> {
    let t_enc = t.enclosure(bits);
    f.eval(&t_enc, bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_construction() {
        assert!(PrimePowerRational::new(2, 3, 5, 3).is_ok());
        assert!(PrimePowerRational::new(2, 3, 0, 0).is_err());
        assert!(PrimePowerRational::new(4, 3, 1, 1).is_err());
        assert!(PrimePowerRational::new(2, 2, 1, 1).is_err());
        let flipped = PrimePowerRational::new(3, 2, 4, 7).unwrap().normalized();
        assert_eq!(
            (flipped.p(), flipped.q(), flipped.a(), flipped.b()),
            (2, 3, 7, 4)
        );
    }

    #[test]
    fn mahler_measure_basics() {
        let m = mahler_measure(&BigUint::from(32u32), &BigUint::from(27u32)).unwrap();
        assert_eq!(m.value_cmp(&Measure::power_log(2, 5)), Ordering::Equal);
        let unit = mahler_measure(&BigUint::one(), &BigUint::one()).unwrap();
        assert!(unit.is_zero());
        assert!(mahler_measure(&BigUint::zero(), &BigUint::one()).is_err());
        assert!(mahler_measure(&BigUint::from(6u32), &BigUint::from(4u32)).is_err());
    }

    #[test]
    fn measure_ordering_is_by_value() {
        let l27 = Measure::power_log(3, 3);
        let l32 = Measure::power_log(2, 5);
        assert_eq!(l27.value_cmp(&l32), Ordering::Less);
        assert_eq!(
            Measure::log_of(BigUint::from(32u32)).value_cmp(&l32),
            Ordering::Equal
        );
    }

    #[test]
    fn part_measures_take_the_larger_side() {
        assert_eq!(
            part_measure(2, 3, 2, 1).unwrap().value_cmp(&Measure::power_log(2, 2)),
            Ordering::Equal
        );
        assert_eq!(
            part_measure(2, 3, 1, 1).unwrap().value_cmp(&Measure::power_log(3, 1)),
            Ordering::Equal
        );
        assert!(part_measure(2, 3, 0, 0).is_err());
    }

    #[test]
    fn functions_canonicalize() {
        let f = MeasureFunction::from_measures(
            vec![
                Measure::power_log(3, 1),
                Measure::power_log(2, 1),
                Measure::log_of(BigUint::from(3u32)),
            ],
            FunctionSource::Direct,
        )
        .unwrap();
        assert_eq!(f.terms().len(), 2);
        assert_eq!(f.terms()[0].0, 2);
        assert_eq!(f.part_count(), 3);
        // 4 = 2^2 merges with the squared representation.
        let g = MeasureFunction::from_measures(
            vec![Measure::log_of(BigUint::from(4u32)), Measure::power_log(2, 2)],
            FunctionSource::Direct,
        )
        .unwrap();
        assert_eq!(g.terms().len(), 1);
        assert_eq!(g.terms()[0].0, 2);
        assert!(MeasureFunction::from_measures(vec![], FunctionSource::Direct).is_err());
        assert!(MeasureFunction::from_measures(
            vec![Measure::power_log(2, 0)],
            FunctionSource::Direct
        )
        .is_err());
    }

    #[test]
    fn evaluation_matches_frozen_values() {
        // sqrt(log(3)^2 + 2 log(4)^2)
        let f = MeasureFunction::from_weighted(
            vec![(1, Measure::power_log(3, 1)), (2, Measure::power_log(2, 2))],
            FunctionSource::Direct,
        )
        .unwrap();
        let t = TParam::parse("2").unwrap().enclosure(160);
        let v = f.eval(&t, 160).unwrap();
        assert_eq!(v.decimal(15), "2.24734800868895");
        // (2 log(2)^4 + 3 log(3)^4)^(1/4)
        let g = MeasureFunction::from_weighted(
            vec![(2, Measure::power_log(2, 1)), (3, Measure::power_log(3, 1))],
            FunctionSource::Direct,
        )
        .unwrap();
        let t4 = TParam::parse("4").unwrap().enclosure(160);
        assert_eq!(g.eval(&t4, 160).unwrap().decimal(15), "1.48261471603832");
    }

    #[test]
    fn exact_sum_products() {
        let f = MeasureFunction::from_weighted(
            vec![(2, Measure::power_log(2, 1)), (3, Measure::power_log(3, 1))],
            FunctionSource::Direct,
        )
        .unwrap();
        // 2 log 2 + 3 log 3 = log(4 * 27)
        assert_eq!(f.exact_sum_product(), BigUint::from(108u32));
    }

    #[test]
    fn infinity_comparison_is_lexicographic() {
        let mk = |pairs: Vec<(u64, Measure)>| {
            MeasureFunction::from_weighted(pairs, FunctionSource::Direct).unwrap()
        };
        let l5 = || Measure::power_log(5, 1);
        let l3 = || Measure::power_log(3, 1);
        let l2 = || Measure::power_log(2, 1);
        let a = mk(vec![(1, l5())]);
        let b = mk(vec![(2, l5())]);
        assert_eq!(a.cmp_at_infinity(&b), Ordering::Less);
        assert_eq!(b.cmp_at_infinity(&a), Ordering::Greater);
        let c = mk(vec![(1, l5()), (1, l2())]);
        let d = mk(vec![(1, l5()), (1, l3())]);
        assert_eq!(c.cmp_at_infinity(&d), Ordering::Less);
        assert_eq!(a.cmp_at_infinity(&mk(vec![(1, l5())])), Ordering::Equal);
        // Splitting one weight across equal-value terms changes nothing.
        let e = mk(vec![(1, Measure::power_log(2, 2)), (1, Measure::log_of(BigUint::from(4u32)))]);
        let f = mk(vec![(2, Measure::power_log(2, 2))]);
        assert_eq!(e.cmp_at_infinity(&f), Ordering::Equal);
    }

    #[test]
    fn t_parameter_parsing() {
        assert!(TParam::parse("0").is_err());
        assert!(TParam::parse("-1.5").is_err());
        assert!(TParam::parse("x").is_err());
        assert_eq!(TParam::parse("1.0").unwrap().cmp_one(), Ordering::Equal);
        assert_eq!(TParam::parse("1.1").unwrap().cmp_one(), Ordering::Greater);
        assert_eq!(TParam::parse("0.999999999999999999999").unwrap().cmp_one(), Ordering::Less);
        assert!(TParam::from_f64(1.5).unwrap().cmp_one() == Ordering::Greater);
        assert!(TParam::from_f64(f64::NAN).is_err());
        assert!(TParam::from_f64(-2.0).is_err());
    }

    #[test]
    fn certified_min_resolves_distinct_classes() {
        let f = MeasureFunction::from_weighted(
            vec![(1, Measure::power_log(2, 5))],
            FunctionSource::Direct,
        )
        .unwrap();
        let g = MeasureFunction::from_weighted(
            vec![(2, Measure::power_log(2, 1)), (3, Measure::power_log(3, 1))],
            FunctionSource::Direct,
        )
        .unwrap();
        let classes = vec![g.clone(), f.clone()];
        // At t = 4 the single-part class loses.
        let min4 = certified_min(&classes, &TParam::parse("4").unwrap(), 4096).unwrap();
        assert_eq!(min4.argmin, vec![0]);
        // At t slightly above 1 the single part wins.
        let min1 = certified_min(&classes, &TParam::parse("1.01").unwrap(), 4096).unwrap();
        assert_eq!(min1.argmin, vec![1]);
    }

    #[test]
    fn certified_min_handles_exact_ties_at_one() {
        // log 32 against 2 log 2 + 3 log 3 = log 108: distinct at t = 1.
        let f = MeasureFunction::from_weighted(
            vec![(1, Measure::power_log(2, 5))],
            FunctionSource::Direct,
        )
        .unwrap();
        let g = MeasureFunction::from_weighted(
            vec![(2, Measure::power_log(2, 1)), (3, Measure::power_log(3, 1))],
            FunctionSource::Direct,
        )
        .unwrap();
        // And a genuine tie: log 32 split as 5 log 2.
        let h = MeasureFunction::from_weighted(
            vec![(5, Measure::power_log(2, 1))],
            FunctionSource::Direct,
        )
        .unwrap();
        let min = certified_min(&[f, g, h], &TParam::one(), 4096).unwrap();
        assert_eq!(min.argmin, vec![0, 2]);
        assert_eq!(min.value.decimal(15), "3.46573590279973");
    }
}
