//! Independent oracles shared by the integration tests.
//!
//! Everything here is deliberately built from different primitives than the
//! library under test: exact rational arithmetic and series with explicit
//! remainder bounds instead of directed-rounding binary floats, subset
//! elimination instead of simplex pivoting, trial division instead of
//! Miller-Rabin. Agreement between the two routes is the point of the tests.

#![allow(dead_code)]

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational enclosure lo <= x <= hi.
#[derive(Debug, Clone)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RatInterval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        self.lo <= *x && *x <= self.hi
    }
}

pub fn rat(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn rat_usize(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// ln of a rational x >= 1 as an exact rational enclosure with width below
/// 2^-bits, via the atanh series with an explicit geometric remainder bound.
///
/// The argument is halved down into [1, 2) first, so the series variable
/// z = (r - 1)/(r + 1) never exceeds 1/3 and each term contributes at least
/// three bits. ln 2 itself is the same series at z = 1/3.
pub fn ln_interval(x: &BigRational, bits: u32) -> RatInterval {
    assert!(*x >= BigRational::one(), "ln oracle wants x >= 1");
    let two = rat(2);
    let mut r = x.clone();
    let mut halvings = 0u32;
    while r >= two {
        r /= &two;
        halvings += 1;
    }
    let core = atanh_series(&r, bits + 2);
    if halvings == 0 {
        return core;
    }
    let ln2 = atanh_series(&two, bits + 2 + 64 - halvings.leading_zeros());
    let m = BigRational::from_integer(BigInt::from(halvings));
    RatInterval {
        lo: core.lo + &m * ln2.lo,
        hi: core.hi + &m * ln2.hi,
    }
}

/// Enclosure of ln r = 2 atanh((r - 1)/(r + 1)) for 1 <= r <= 2.
fn atanh_series(r: &BigRational, bits: u32) -> RatInterval {
    let one = BigRational::one();
    let z = (r - &one) / (r + &one);
    if z.is_zero() {
        return RatInterval {
            lo: BigRational::zero(),
            hi: BigRational::zero(),
        };
    }
    let zz = &z * &z;
    let terms = (bits as usize) / 3 + 4;
    let mut sum = BigRational::zero();
    let mut power = z.clone();
    for k in 0..terms {
        sum += &power / rat_usize(2 * k + 1);
        power *= &zz;
    }
    // Remaining terms are bounded by the geometric tail of z^(2K+1).
    let tail = &power / (rat_usize(2 * terms + 1) * (&one - &zz));
    RatInterval {
        lo: rat(2) * &sum,
        hi: rat(2) * (&sum + &tail),
    }
}

/// Continued fraction of (ln q / ln p) computed purely from rational
/// enclosures of the two logarithms. Returns as many quotients as the
/// precision certifies (both interval endpoints agree on each floor);
/// the caller decides whether that prefix is long enough.
pub fn cf_interval_oracle(p: u64, q: u64, want: usize, bits: u32) -> Vec<u64> {
    let lp = ln_interval(&rat(p), bits);
    let lq = ln_interval(&rat(q), bits);
    let mut lo = lq.lo / lp.hi;
    let mut hi = lq.hi / lp.lo;
    let mut out = Vec::new();
    while out.len() < want {
        let flo = lo.floor().to_integer();
        let fhi = hi.floor().to_integer();
        if flo != fhi {
            break;
        }
        out.push(flo.to_u64().expect("quotients fit u64"));
        let f = BigRational::from_integer(flo);
        let (rl, rh) = (lo - &f, hi - &f);
        if rl.is_zero() || rh.is_zero() {
            break;
        }
        lo = rh.recip();
        hi = rl.recip();
    }
    out
}

/// Parses a plain decimal string (optional sign, optional fraction) into an
/// exact rational. Used to turn frozen constants into comparable values.
pub fn rational_from_decimal(s: &str) -> BigRational {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    let digits: String = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().expect("decimal digits");
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    let v = BigRational::new(numer, denom);
    if neg {
        -v
    } else {
        v
    }
}

/// Asserts that a frozen decimal constant lies inside the oracle enclosure
/// once the enclosure is certified narrower than the constant's last digit.
pub fn assert_decimal_in_interval(decimal: &str, oracle: &RatInterval) {
    let places = decimal.split_once('.').map_or(0, |(_, f)| f.len());
    // The printed constant is a rounding of the true value, so it may sit up
    // to half an ulp away from it on either side.
    let half_ulp = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(places as u32) * 2);
    let v = rational_from_decimal(decimal);
    assert!(
        oracle.width() < half_ulp,
        "oracle interval too wide to check {decimal}"
    );
    assert!(
        &oracle.lo - &half_ulp <= v && v <= &oracle.hi + &half_ulp,
        "frozen constant {decimal} falls outside the oracle enclosure"
    );
}

/// Primality by trial division.
pub fn is_prime_naive(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Membership of `point` in the convex hull of `generators`, decided by
/// exhausting subsets of at most dim + 1 generators and solving each exactly
/// by Gauss-Jordan elimination. Subsets whose columns are affinely dependent
/// are skipped: if the point lies in the hull at all, it lies in the hull of
/// some affinely independent subset.
pub fn hull_member_subsets(point: &[u64], generators: &[&[u64]]) -> bool {
    let dim = point.len();
    let m = generators.len();
    assert!(m <= 20, "subset oracle is for small inputs");
    let max_size = (dim + 1).min(m);
    for mask in 1u32..(1 << m) {
        if (mask.count_ones() as usize) > max_size {
            continue;
        }
        let cols: Vec<&[u64]> = (0..m)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| generators[i])
            .collect();
        if let Some(weights) = unique_affine_weights(&cols, point) {
            if weights.iter().all(|w| !w.is_negative()) {
                return true;
            }
        }
    }
    false
}

/// Solves sum w_i c_i = target, sum w_i = 1 exactly. Returns the weights only
/// when the columns are linearly independent (unique solution) and the system
/// is consistent.
fn unique_affine_weights(cols: &[&[u64]], target: &[u64]) -> Option<Vec<BigRational>> {
    let dim = target.len();
    let rows = dim + 1;
    let n = cols.len();
    // Augmented matrix: coordinate rows then the convexity row.
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<BigRational> = (0..n)
                .map(|c| {
                    if r < dim {
                        rat(cols[c][r])
                    } else {
                        BigRational::one()
                    }
                })
                .collect();
            row.push(if r < dim {
                rat(target[r])
            } else {
                BigRational::one()
            });
            row
        })
        .collect();
    let mut pivot_row = 0usize;
    let mut pivots = Vec::new();
    for col in 0..n {
        let Some(r) = (pivot_row..rows).find(|&r| !m[r][col].is_zero()) else {
            return None; // dependent columns: skip this subset
        };
        m.swap(pivot_row, r);
        let inv = m[pivot_row][col].recip();
        for x in m[pivot_row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..=n {
                    let sub = &f * &m[pivot_row][c];
                    m[r][c] -= sub;
                }
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    // Any leftover row with a nonzero right-hand side is an inconsistency.
    for r in pivot_row..rows {
        if !m[r][n].is_zero() {
            return None;
        }
    }
    Some((0..n).map(|c| m[c][n].clone()).collect())
}

/// Exact comparison of p^a and q^b by direct big-integer powering. Slow and
/// only for modest exponents; the library's tiered version is the fast path.
pub fn compare_power_direct(p: u64, a: u64, q: u64, b: u64) -> std::cmp::Ordering {
    BigUint::from(p).pow(a as u32).cmp(&BigUint::from(q).pow(b as u32))
}
