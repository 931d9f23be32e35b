//! Infimum sets of t-metric Mahler measures.
//!
//! For α = p^a/q^b whose exponent pair is a best approximation to
//! ξ = log q/log p, every minimizing factorization is built from the best
//! approximation pairs below (a, b). Those pairs form the columns of the
//! characteristic transformation; the factorizations that matter are exactly
//! the nonnegative integer vectors x with T·x = (a, b). This module enumerates
//! those vectors, groups them into measure-function classes, prunes by convex
//! position, traces the piecewise structure of t ↦ m_t(α) with certified
//! breakpoints, and audits the structural claims against the brute-force
//! oracle.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::approx::{best_approximations, classify, Classification, ExponentPair};
use crate::error::Error;
use crate::measures::{
    part_measure, FunctionSource, Measure, MeasureFunction, PrimePowerRational, RankedEvaluator,
    TParam,
};
use crate::real::{precision_cap, CertifiedReal};
use crate::simplex::in_convex_hull;
use crate::{oracle, Result};

/// Certified bracket width below which a crossing is reported as found.
pub const BREAKPOINT_WIDTH: f64 = 1e-9;

/// Grid resolution used when callers do not choose one.
pub const PROFILE_GRID_DEFAULT: usize = 256;

/// First sample above t = 1 (2^-20). Structure closer to 1 than this is
/// found only through refinement of the first grid cell.
const ABOVE_ONE_OFFSET: f64 = 9.5367431640625e-7;

/// How often the sampling range may be doubled while waiting for the
/// asymptotic minimizer to take over.
const MAX_T_DOUBLINGS: usize = 4;

/// The matrix T whose columns are the best approximation pairs up to (a, b).
///
/// Invariants: columns are sorted by (b, a), the last column is (a, b) itself,
/// and each column's measure is max(log p^a_i, log q^b_i).
#[derive(Debug, Clone)]
pub struct CharTransform {
    alpha: PrimePowerRational,
    columns: Vec<ExponentPair>,
    measures: Vec<Measure>,
}

impl CharTransform {
    pub fn alpha(&self) -> &PrimePowerRational {
        &self.alpha
    }

    pub fn columns(&self) -> &[ExponentPair] {
        &self.columns
    }

    /// Column measures, aligned with [`columns`](Self::columns).
    pub fn measures(&self) -> &[Measure] {
        &self.measures
    }

    pub fn column_count(&self) -> usize {
        self.columns.len()
    }
}

/// Builds the characteristic transformation of α = p^a/q^b.
///
/// α is normalized so that p < q first; (a, b) must be a best approximation
/// pair of ξ = log q/log p or the construction is refused.
pub fn characteristic_transformation(alpha: &PrimePowerRational) -> Result<CharTransform> {
    let alpha = alpha.normalized();
    let ratio = alpha.log_ratio();
    let class = classify(alpha.pair(), &ratio);
    if !(class.upper_best || class.lower_best) {
        return Err(Error::hypothesis(format!(
            "({}, {}) is not a best approximation pair for {}; the characteristic \
             transformation is only defined at best approximations",
            alpha.a(),
            alpha.b(),
            ratio,
        )));
    }
    let columns = best_approximations(&ratio, alpha.a(), alpha.b())?;
    assert_eq!(
        columns.last(),
        Some(&alpha.pair()),
        "a best approximation pair closes its own column list"
    );
    let measures = columns
        .iter()
        .map(|c| {
            part_measure(alpha.p(), alpha.q(), c.a, c.b).expect("columns are nonzero pairs")
        })
        .collect();
    if columns.len() >= 2 {
        debug_assert!(
            columns.iter().enumerate().any(|(i, x)| {
                columns[i + 1..]
                    .iter()
                    .any(|y| u128::from(x.a) * u128::from(y.b) != u128::from(y.a) * u128::from(x.b))
            }),
            "two or more columns always span both exponent rows"
        );
    }
    Ok(CharTransform { alpha, columns, measures })
}

/// A nonnegative integer solution x of T·x = (a, b): entry i counts how many
/// times column i appears as a factorization part.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorizationVector {
    entries: Vec<u64>,
}

impl FactorizationVector {
    pub fn new(entries: Vec<u64>) -> Self {
        FactorizationVector { entries }
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    /// Total number of parts Σ x_i.
    pub fn part_count(&self) -> u64 {
        self.entries.iter().sum()
    }
}

impl fmt::Display for FactorizationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// All factorization vectors of the transformation, in ascending
/// lexicographic order.
///
/// Depth-first from the last (largest) column; a column's coefficient is
/// capped by the remaining exponent budget in each row, where the b-row only
/// constrains columns with b_i > 0 (the a-row always does, since every best
/// approximation pair has a_i >= 1). The set is finite and always contains the
/// trivial vector (0, ..., 0, 1).
pub fn enumerate_vectors(transform: &CharTransform) -> Vec<FactorizationVector> {
    let cols = transform.columns();
    let n = cols.len();
    let mut out = Vec::new();
    let mut current = vec![0u64; n];

    fn descend(
        cols: &[ExponentPair],
        i: usize,
        ra: u64,
        rb: u64,
        current: &mut Vec<u64>,
        out: &mut Vec<FactorizationVector>,
    ) {
        if i == 0 {
            // The leading coefficient is forced: x_0·(a_0, b_0) must equal
            // the whole remaining budget.
            let c = cols[0];
            if ra % c.a == 0 {
                let x = ra / c.a;
                if x * c.b == rb {
                    current[0] = x;
                    out.push(FactorizationVector::new(current.clone()));
                    current[0] = 0;
                }
            }
            return;
        }
        let c = cols[i];
        let mut cap = ra / c.a;
        if c.b > 0 {
            cap = cap.min(rb / c.b);
        }
        for x in 0..=cap {
            current[i] = x;
            descend(cols, i - 1, ra - x * c.a, rb - x * c.b, current, out);
        }
        current[i] = 0;
    }

    descend(
        cols,
        n - 1,
        transform.alpha().a(),
        transform.alpha().b(),
        &mut current,
        &mut out,
    );
    out.sort();
    debug_assert!(out.iter().all(|v| {
        let (mut sa, mut sb) = (0u64, 0u64);
        for (x, c) in v.entries().iter().zip(cols) {
            sa += x * c.a;
            sb += x * c.b;
        }
        sa == transform.alpha().a() && sb == transform.alpha().b()
    }));
    debug_assert!(!out.is_empty(), "the trivial vector always solves T·x = (a, b)");
    out
}

/// A factorization of α into parts p^c/q^d, kept as a sorted multiset of
/// exponent pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    alpha: PrimePowerRational,
    parts: Vec<ExponentPair>,
}

impl Factorization {
    pub fn new(alpha: PrimePowerRational, mut parts: Vec<ExponentPair>) -> Self {
        parts.sort();
        debug_assert_eq!(
            parts.iter().fold((0u64, 0u64), |(sa, sb), p| (sa + p.a, sb + p.b)),
            (alpha.a(), alpha.b()),
            "parts must multiply back to alpha"
        );
        Factorization { alpha, parts }
    }

    pub fn alpha(&self) -> &PrimePowerRational {
        &self.alpha
    }

    pub fn parts(&self) -> &[ExponentPair] {
        &self.parts
    }

    /// The measure function t ↦ (Σ m(part)^t)^(1/t) of this factorization.
    pub fn measure_function(&self) -> Result<MeasureFunction> {
        let pairs: Vec<(u64, u64)> = self.parts.iter().map(|p| (p.a, p.b)).collect();
        MeasureFunction::from_parts(self.alpha.p(), self.alpha.q(), &pairs)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, part) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " · ")?;
            }
            write!(f, "{}^{}/{}^{}", self.alpha.p(), part.a, self.alpha.q(), part.b)?;
        }
        Ok(())
    }
}

/// Expands a factorization vector into the factorization it encodes.
pub fn vector_to_factorization(
    transform: &CharTransform,
    vector: &FactorizationVector,
) -> Factorization {
    assert_eq!(vector.entries().len(), transform.column_count());
    let mut parts = Vec::new();
    for (x, col) in vector.entries().iter().zip(transform.columns()) {
        for _ in 0..*x {
            parts.push(*col);
        }
    }
    Factorization::new(transform.alpha().clone(), parts)
}

/// Inverse of [`vector_to_factorization`]: counts column multiplicities.
/// Fails if some part is not a column of the transformation.
pub fn factorization_to_vector(
    transform: &CharTransform,
    factorization: &Factorization,
) -> Result<FactorizationVector> {
    let mut entries = vec![0u64; transform.column_count()];
    for part in factorization.parts() {
        match transform.columns().iter().position(|c| c == part) {
            Some(i) => entries[i] += 1,
            None => {
                return Err(Error::domain(format!(
                    "part ({}, {}) is not a column of the transformation",
                    part.a, part.b
                )))
            }
        }
    }
    Ok(FactorizationVector::new(entries))
}

/// Builds the measure-function classes of the vectors along with each
/// vector's class id. Vectors whose part measures form the same multiset are
/// one class; the first vector encountered provides the representative.
fn class_table(
    transform: &CharTransform,
    vectors: &[FactorizationVector],
) -> (Vec<MeasureFunction>, Vec<usize>) {
    // Rank the column measures by value once, so a class key is an exact
    // multiset of (value rank, multiplicity) pairs.
    let measures = transform.measures();
    let mut rank_of = vec![0usize; measures.len()];
    let mut distinct: Vec<&Measure> = Vec::new();
    for (i, m) in measures.iter().enumerate() {
        rank_of[i] = distinct
            .iter()
            .position(|r| r.value_cmp(m) == Ordering::Equal)
            .unwrap_or_else(|| {
                distinct.push(m);
                distinct.len() - 1
            });
    }

    let mut classes: Vec<MeasureFunction> = Vec::new();
    let mut ids = Vec::with_capacity(vectors.len());
    let mut seen: HashMap<Vec<(usize, u64)>, usize> = HashMap::new();
    for v in vectors {
        let mut key_map: BTreeMap<usize, u64> = BTreeMap::new();
        for (x, rank) in v.entries().iter().zip(&rank_of) {
            if *x > 0 {
                *key_map.entry(*rank).or_insert(0) += *x;
            }
        }
        let key: Vec<(usize, u64)> = key_map.into_iter().collect();
        let id = *seen.entry(key).or_insert_with(|| {
            let terms: Vec<(u64, Measure)> = v
                .entries()
                .iter()
                .zip(measures)
                .filter(|(x, _)| **x > 0)
                .map(|(x, m)| (*x, m.clone()))
                .collect();
            let f = MeasureFunction::from_weighted(
                terms,
                FunctionSource::Vector { entries: v.entries().to_vec() },
            )
            .expect("vectors have at least one positive entry");
            classes.push(f);
            classes.len() - 1
        });
        ids.push(id);
    }
    (classes, ids)
}

/// Deduplicates vectors into measure-function classes, first appearance
/// first. Two vectors land in one class exactly when their part measures
/// agree as multisets, which makes their measure functions identical.
pub fn vector_classes(
    transform: &CharTransform,
    vectors: &[FactorizationVector],
) -> Vec<MeasureFunction> {
    class_table(transform, vectors).0
}

/// The vectors in convex position: x is kept unless it is a convex
/// combination of the others. Dropped vectors can never be the unique
/// minimizer of the linearized objective at any t.
pub fn hull_vertices(vectors: &[FactorizationVector]) -> Vec<FactorizationVector> {
    let mut kept = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        let others: Vec<&[u64]> = vectors
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, w)| w.entries())
            .collect();
        if !in_convex_hull(v.entries(), &others) {
            kept.push(v.clone());
        }
    }
    kept
}

/// What a recorded breakpoint of the profile is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BreakpointKind {
    /// The active minimizing class provably changes inside the bracket.
    Exceptional,
    /// The t = 1 record when the trivial class stays active just above 1:
    /// no transition happens at the metric's degeneration point.
    StandardTransitionRuledOut,
    /// The ordering could not be certified at the precision cap; the bracket
    /// is reported instead of being silently dropped.
    Uncertain,
}

impl fmt::Display for BreakpointKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BreakpointKind::Exceptional => "exceptional",
            BreakpointKind::StandardTransitionRuledOut => "standard-transition-ruled-out",
            BreakpointKind::Uncertain => "uncertain",
        })
    }
}

/// A certified bracket around a point of interest of t ↦ m_t(α).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Breakpoint {
    pub t_lo: f64,
    pub t_hi: f64,
    pub kind: BreakpointKind,
    /// Active class on the left of the bracket.
    pub left_class: usize,
    /// Active class on the right of the bracket.
    pub right_class: usize,
}

/// A maximal open t-interval with one active minimizing class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub t_lo: f64,
    /// `f64::INFINITY` when the class is certified to be the asymptotic
    /// minimizer and was still active at the largest sampled t.
    pub t_hi: f64,
    pub class: usize,
}

/// The piecewise structure of t ↦ m_t(α) on (1, ∞).
#[derive(Debug, Clone)]
pub struct MtProfile {
    pub alpha: PrimePowerRational,
    /// Measure-function classes; segment and breakpoint ids index into this.
    pub classes: Vec<MeasureFunction>,
    /// Class of the trivial vector (0, ..., 0, 1), the minimizer for t <= 1.
    pub trivial_class: usize,
    pub segments: Vec<Segment>,
    /// The t = 1 record first, then every located crossing in order.
    pub breakpoints: Vec<Breakpoint>,
    pub exceptional_count: usize,
    pub uncertain_count: usize,
    /// Upper end of the sampled range after any doublings.
    pub t_max_used: f64,
    /// Whether the class active at `t_max_used` is the asymptotic minimizer
    /// under the descending-measure lexicographic order.
    pub stabilized: bool,
}

struct PassResult {
    breakpoints: Vec<Breakpoint>,
    segments: Vec<Segment>,
    stabilized: bool,
}

/// One certified class lookup; None when the cap cannot separate survivors.
fn resolve_active(engine: &RankedEvaluator<'_>, t: f64) -> Option<usize> {
    engine.active_unique(t, precision_cap())
}

/// Locates every active-class change in (lo, hi) down to certified brackets
/// of width [`BREAKPOINT_WIDTH`]. Midpoints that differ from both endpoint
/// classes split the search in two, so segments narrower than the sampling
/// grid are still found as long as some refinement midpoint lands in them.
fn refine(
    engine: &RankedEvaluator<'_>,
    lo: f64,
    class_lo: usize,
    hi: f64,
    class_hi: usize,
    out: &mut Vec<Breakpoint>,
) {
    debug_assert!(class_lo != class_hi);
    debug_assert!(lo < hi);
    if hi - lo <= BREAKPOINT_WIDTH {
        out.push(Breakpoint {
            t_lo: lo,
            t_hi: hi,
            kind: BreakpointKind::Exceptional,
            left_class: class_lo,
            right_class: class_hi,
        });
        return;
    }
    let mid = lo + 0.5 * (hi - lo);
    // An exact tie at the midpoint is dodged by an off-center second probe.
    let resolved = resolve_active(engine, mid)
        .map(|c| (mid, c))
        .or_else(|| {
            let shifted = lo + 0.4375 * (hi - lo);
            resolve_active(engine, shifted).map(|c| (shifted, c))
        });
    match resolved {
        Some((tm, c)) if c == class_lo => refine(engine, tm, c, hi, class_hi, out),
        Some((tm, c)) if c == class_hi => refine(engine, lo, class_lo, tm, c, out),
        Some((tm, c)) => {
            refine(engine, lo, class_lo, tm, c, out);
            refine(engine, tm, c, hi, class_hi, out);
        }
        None => out.push(Breakpoint {
            t_lo: lo,
            t_hi: hi,
            kind: BreakpointKind::Uncertain,
            left_class: class_lo,
            right_class: class_hi,
        }),
    }
}

fn profile_pass(
    engine: &RankedEvaluator<'_>,
    trivial_class: usize,
    asymptotic_class: usize,
    t_max: f64,
    grid: usize,
) -> Result<PassResult> {
    let seed_t = 1.0 + ABOVE_ONE_OFFSET;
    let first_class = resolve_active(engine, seed_t)
        .or_else(|| resolve_active(engine, 1.0 + 2.0 * ABOVE_ONE_OFFSET))
        .ok_or_else(|| Error::UncertainOrdering {
            precision_bits: precision_cap(),
            context: "active class just above t = 1".to_string(),
        })?;

    let mut breakpoints = Vec::new();
    let mut prev = (seed_t, first_class);
    let mut pending_unresolved = false;
    let mut last_sample_class = None;
    for j in 1..=grid {
        let t = t_max.powf(j as f64 / grid as f64);
        if t <= prev.0 {
            continue;
        }
        match resolve_active(engine, t) {
            Some(c) => {
                if c != prev.1 {
                    refine(engine, prev.0, prev.1, t, c, &mut breakpoints);
                } else if pending_unresolved {
                    breakpoints.push(Breakpoint {
                        t_lo: prev.0,
                        t_hi: t,
                        kind: BreakpointKind::Uncertain,
                        left_class: prev.1,
                        right_class: c,
                    });
                }
                pending_unresolved = false;
                prev = (t, c);
                if j == grid {
                    last_sample_class = Some(c);
                }
            }
            None => pending_unresolved = true,
        }
    }
    if pending_unresolved {
        breakpoints.push(Breakpoint {
            t_lo: prev.0,
            t_hi: t_max,
            kind: BreakpointKind::Uncertain,
            left_class: prev.1,
            right_class: prev.1,
        });
    }
    debug_assert!(breakpoints.windows(2).all(|w| w[0].t_lo <= w[1].t_lo));

    let t_one_kind = if first_class == trivial_class {
        BreakpointKind::StandardTransitionRuledOut
    } else {
        BreakpointKind::Exceptional
    };
    let mut all = vec![Breakpoint {
        t_lo: 1.0,
        t_hi: 1.0,
        kind: t_one_kind,
        left_class: trivial_class,
        right_class: first_class,
    }];
    all.extend(breakpoints.iter().copied());

    let stabilized = last_sample_class == Some(asymptotic_class);
    let mut segments = Vec::new();
    let mut cursor = (1.0f64, first_class);
    for bp in &breakpoints {
        if bp.left_class == bp.right_class {
            continue;
        }
        debug_assert_eq!(cursor.1, bp.left_class, "segments and crossings must chain");
        segments.push(Segment { t_lo: cursor.0, t_hi: bp.t_lo, class: cursor.1 });
        cursor = (bp.t_hi, bp.right_class);
    }
    segments.push(Segment {
        t_lo: cursor.0,
        t_hi: if stabilized { f64::INFINITY } else { t_max },
        class: cursor.1,
    });

    Ok(PassResult { breakpoints: all, segments, stabilized })
}

/// Traces t ↦ m_t(α) over (1, t_max] on a log-spaced grid of `grid` samples,
/// refining every change of active class to a certified bracket.
///
/// The t = 1 endpoint is always recorded as a breakpoint whose kind states
/// whether the trivial factorization stays minimal just above 1. If the class
/// active at t_max is not yet the asymptotic minimizer, the range is doubled
/// (at most four times) before the profile is returned as unstabilized.
/// Requires the best approximation hypothesis, t_max > 1 and grid >= 64.
pub fn mt_profile(alpha: &PrimePowerRational, t_max: f64, grid: usize) -> Result<MtProfile> {
    if !t_max.is_finite() || t_max <= 1.0 {
        return Err(Error::domain("t_max must be a finite value above 1"));
    }
    if grid < 64 {
        return Err(Error::domain("grid must have at least 64 samples"));
    }
    let transform = characteristic_transformation(alpha)?;
    let vectors = enumerate_vectors(&transform);
    let (classes, ids) = class_table(&transform, &vectors);

    let n = transform.column_count();
    let trivial_entries: Vec<u64> =
        (0..n).map(|i| if i + 1 == n { 1 } else { 0 }).collect();
    let trivial_pos = vectors
        .iter()
        .position(|v| v.entries() == trivial_entries.as_slice())
        .expect("the trivial vector is always enumerated");
    let trivial_class = ids[trivial_pos];

    let asymptotic_class = (0..classes.len())
        .min_by(|&i, &j| classes[i].cmp_at_infinity(&classes[j]))
        .expect("at least one class");

    let engine = RankedEvaluator::new(&classes);
    let mut t_cur = t_max;
    let mut pass = profile_pass(&engine, trivial_class, asymptotic_class, t_cur, grid)?;
    for _ in 0..MAX_T_DOUBLINGS {
        if pass.stabilized {
            break;
        }
        t_cur *= 2.0;
        pass = profile_pass(&engine, trivial_class, asymptotic_class, t_cur, grid)?;
    }

    let exceptional_count = pass
        .breakpoints
        .iter()
        .filter(|b| b.kind == BreakpointKind::Exceptional)
        .count();
    let uncertain_count = pass
        .breakpoints
        .iter()
        .filter(|b| b.kind == BreakpointKind::Uncertain)
        .count();
    Ok(MtProfile {
        alpha: transform.alpha().clone(),
        classes,
        trivial_class,
        segments: pass.segments,
        breakpoints: pass.breakpoints,
        exceptional_count,
        uncertain_count,
        t_max_used: t_cur,
        stabilized: pass.stabilized,
    })
}

/// The minimal set observed by sampling: every class that was uniquely active
/// on some open subinterval of (1, t_max], plus the asymptotic minimizer.
/// Membership is empirical — a class active only between two grid samples and
/// missed by every refinement midpoint would be absent.
#[derive(Debug, Clone)]
pub struct EmpiricalMinimalSet {
    pub alpha: PrimePowerRational,
    /// Representative vectors, ascending lexicographic.
    pub members: Vec<FactorizationVector>,
    /// Class ids aligned with `members`, indexing into `profile.classes`.
    pub class_ids: Vec<usize>,
    pub profile: MtProfile,
}

/// Collects the empirical minimal set from a profile over (1, t_max].
pub fn empirical_minimal_set(
    alpha: &PrimePowerRational,
    t_max: f64,
) -> Result<EmpiricalMinimalSet> {
    let profile = mt_profile(alpha, t_max, PROFILE_GRID_DEFAULT)?;
    let asymptotic = (0..profile.classes.len())
        .min_by(|&i, &j| profile.classes[i].cmp_at_infinity(&profile.classes[j]))
        .expect("at least one class");
    let mut ids: BTreeSet<usize> = profile.segments.iter().map(|s| s.class).collect();
    ids.insert(asymptotic);
    let mut pairs: Vec<(FactorizationVector, usize)> = ids
        .into_iter()
        .map(|id| {
            let v = match profile.classes[id].source() {
                FunctionSource::Vector { entries } => FactorizationVector::new(entries.clone()),
                _ => unreachable!("profile classes come from vectors"),
            };
            (v, id)
        })
        .collect();
    pairs.sort();
    let (members, class_ids) = pairs.into_iter().unzip();
    Ok(EmpiricalMinimalSet { alpha: profile.alpha.clone(), members, class_ids, profile })
}

/// One audited part of a minimizing factorization.
#[derive(Debug, Clone)]
pub struct AuditedPart {
    pub pair: ExponentPair,
    pub class: Classification,
}

/// A minimizing factorization with the classification of each part.
#[derive(Debug, Clone)]
pub struct AuditedFactorization {
    pub factorization: Factorization,
    pub parts: Vec<AuditedPart>,
}

/// Outcome of auditing the minimizing factorizations at one t.
#[derive(Debug, Clone)]
pub struct AuditReport {
    pub alpha: PrimePowerRational,
    pub t: TParam,
    pub value: CertifiedReal,
    pub alpha_class: Classification,
    pub factorizations: Vec<AuditedFactorization>,
    /// Human-readable descriptions of every failed structural claim.
    pub violations: Vec<String>,
    pub passed: bool,
}

/// Audits the structure of every minimizing factorization found by the
/// brute-force oracle at one t > 1.
///
/// Checks, for every part of every minimizer: the part is irreducible; if α
/// lies on a boundary of the upper or lower set, so does the part; if α is a
/// best approximation pair, so is the part. Failures are reported in the
/// result, not raised as errors, so a falsifying example would be visible.
pub fn theorem_main_audit(alpha: &PrimePowerRational, t: &TParam) -> Result<AuditReport> {
    if t.cmp_one() != Ordering::Greater {
        return Err(Error::domain(
            "the structural audit of minimizing factorizations applies only to t > 1",
        ));
    }
    let alpha = alpha.normalized();
    let ratio = alpha.log_ratio();
    let outcome = oracle::oracle_m_t(&alpha, t, oracle::DEFAULT_BOUND)?;
    let alpha_class = classify(alpha.pair(), &ratio);
    let alpha_boundary = alpha_class.upper_boundary || alpha_class.lower_boundary;
    let alpha_best = alpha_class.upper_best || alpha_class.lower_best;

    let mut factorizations = Vec::new();
    let mut violations = Vec::new();
    for f in &outcome.argmin_factorizations {
        let mut parts = Vec::new();
        for part in f.parts() {
            let class = classify(*part, &ratio);
            if !class.irreducible {
                violations.push(format!(
                    "part ({}, {}) of minimizer {} is reducible",
                    part.a, part.b, f
                ));
            }
            if alpha_boundary && !(class.upper_boundary || class.lower_boundary) {
                violations.push(format!(
                    "α is a boundary point but part ({}, {}) of minimizer {} is not",
                    part.a, part.b, f
                ));
            }
            if alpha_best && !(class.upper_best || class.lower_best) {
                violations.push(format!(
                    "α is a best approximation pair but part ({}, {}) of minimizer {} is not",
                    part.a, part.b, f
                ));
            }
            parts.push(AuditedPart { pair: *part, class });
        }
        factorizations.push(AuditedFactorization { factorization: f.clone(), parts });
    }
    let passed = violations.is_empty();
    Ok(AuditReport {
        alpha,
        t: t.clone(),
        value: outcome.value,
        alpha_class,
        factorizations,
        violations,
        passed,
    })
}
