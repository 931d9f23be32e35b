//! Exact comparisons of prime powers, certified logarithms, and primality.
//!
//! `compare_power` decides `p^a` vs `q^b` without ever trusting a rounded
//! value: a machine-word fast path handles small magnitudes, interval
//! evaluation of `a ln p - b ln q` with escalating precision handles the bulk,
//! and exact big-integer powering settles anything the intervals cannot
//! (including genuine equality, which no finite precision can certify).

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::Error;
use crate::real::{precision_cap, CertifiedReal, DEFAULT_PRECISION_BITS};
use crate::Result;

/// Compares `p^a` with `q^b` exactly.
///
/// Arbitrary naturals are accepted (`0^0 = 1`). The final fallback computes
/// the powers outright, so exponents whose results would not fit in memory
/// (beyond roughly 2^31 bits) panic rather than pretend.
pub fn compare_power(p: &BigUint, a: &BigUint, q: &BigUint, b: &BigUint) -> Ordering {
    try_compare_power(p, a, q, b, u64::MAX)
        .expect("exact power comparison infeasible: result would exceed addressable memory")
}

/// `compare_power` for machine-word inputs.
pub fn compare_power_u64(p: u64, a: u64, q: u64, b: u64) -> Ordering {
    compare_power(
        &BigUint::from(p),
        &BigUint::from(a),
        &BigUint::from(q),
        &BigUint::from(b),
    )
}

/// Magnitude class used to dispatch the trivial cases of `compare_power`.
enum PowClass {
    Zero,
    One,
    /// Base at least 2 and exponent at least 1.
    General,
}

fn pow_class(base: &BigUint, exp: &BigUint) -> PowClass {
    if exp.is_zero() || base.is_one() {
        PowClass::One
    } else if base.is_zero() {
        PowClass::Zero
    } else {
        PowClass::General
    }
}

/// Bit budget below which the exact fallback is considered affordable.
const EXACT_FEASIBLE_BITS: u64 = 1 << 26;

/// Like [`compare_power`] but gives up (`None`) instead of computing an exact
/// power larger than `max_exact_bits` bits. Used where an uncertain answer
/// must surface as an error carrying partial results.
pub(crate) fn try_compare_power(
    p: &BigUint,
    a: &BigUint,
    q: &BigUint,
    b: &BigUint,
    max_exact_bits: u64,
) -> Option<Ordering> {
    use PowClass::*;
    match (pow_class(p, a), pow_class(q, b)) {
        (Zero, Zero) | (One, One) => return Some(Ordering::Equal),
        (Zero, _) => return Some(Ordering::Less),
        (_, Zero) => return Some(Ordering::Greater),
        (One, General) => return Some(Ordering::Less),
        (General, One) => return Some(Ordering::Greater),
        (General, General) => {}
    }
    if p == q {
        return Some(a.cmp(b));
    }

    if let (Some(pw), Some(qw), Some(aw), Some(bw)) =
        (p.to_u128(), q.to_u128(), a.to_u32(), b.to_u32())
    {
        let pa = (p.bits() as u64).checked_mul(aw as u64);
        let qb = (q.bits() as u64).checked_mul(bw as u64);
        if let (Some(pa), Some(qb)) = (pa, qb) {
            if pa <= 126 && qb <= 126 {
                return Some(pw.pow(aw).cmp(&qw.pow(bw)));
            }
        }
    }

    let mut bits = DEFAULT_PRECISION_BITS;
    loop {
        let lp = CertifiedReal::from_biguint(p, bits).ln().expect("base >= 2");
        let lq = CertifiedReal::from_biguint(q, bits).ln().expect("base >= 2");
        let d = lp
            .mul(&CertifiedReal::from_biguint(a, bits))
            .sub(&lq.mul(&CertifiedReal::from_biguint(b, bits)));
        if let Some(sign) = d.sign_certain() {
            return Some(sign);
        }
        if bits >= precision_cap() {
            break;
        }
        bits *= 2;
    }

    let size = |base: &BigUint, exp: &BigUint| exp.to_u64().and_then(|e| base.bits().checked_mul(e));
    let (pa_bits, qb_bits) = (size(p, a)?, size(q, b)?);
    if pa_bits > max_exact_bits.min(EXACT_FEASIBLE_BITS)
        || qb_bits > max_exact_bits.min(EXACT_FEASIBLE_BITS)
    {
        return None;
    }
    let pa = big_pow(p, a.to_u64().expect("checked above"));
    let qb = big_pow(q, b.to_u64().expect("checked above"));
    Some(pa.cmp(&qb))
}

/// `base^exp` by binary powering.
pub(crate) fn big_pow(base: &BigUint, exp: u64) -> BigUint {
    let mut acc = BigUint::one();
    let mut sq = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &sq;
        }
        e >>= 1;
        if e > 0 {
            sq = &sq * &sq;
        }
    }
    acc
}

/// Certified enclosure of `ln n` whose width is at most `2^(1-precision_bits) * ln n`.
pub fn log_enclosure(n: &BigUint, precision_bits: u32) -> Result<CertifiedReal> {
    if n < &BigUint::from(2u32) {
        return Err(Error::domain(format!(
            "log_enclosure requires n >= 2, got {n}"
        )));
    }
    // A few guard bits keep the relative width comfortably inside the contract.
    let work = precision_bits.saturating_add(8);
    CertifiedReal::from_biguint(n, work).ln()
}

/// Floor of the k-th root.
pub(crate) fn nth_root_floor(n: &BigUint, k: u32) -> BigUint {
    n.nth_root(k)
}

/// Writes `n` as `base^exp` with `exp` maximal, so `base` is not itself a
/// proper power. Returns `None` for n < 2. The base is not tested for
/// primality; callers that need a prime power check separately.
pub fn perfect_power(n: &BigUint) -> Option<(BigUint, u64)> {
    let two = BigUint::from(2u32);
    if n < &two {
        return None;
    }
    // base >= 2 forces exp <= bit length, and the maximal exponent is found
    // by trying candidates downward.
    for k in (1..=n.bits()).rev() {
        let exp = u32::try_from(k).expect("bit length of a representable integer");
        let root = nth_root_floor(n, exp);
        if root >= two && big_pow(&root, k) == *n {
            return Some((root, k));
        }
    }
    unreachable!("exp = 1 always reproduces n")
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Primality test: deterministic for `n < 2^64` via Miller-Rabin with the
/// twelve smallest prime bases (a verified witness set for that range).
/// Above 2^64 the same bases are reused and the verdict is probabilistic.
pub fn is_prime(n: &BigUint) -> bool {
    match n.to_u64() {
        Some(v) => is_prime_u64(v),
        None => is_prime_big(n),
    }
}

/// Deterministic Miller-Rabin for machine words.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let r = (n - 1).trailing_zeros();
    let d = (n - 1) >> r;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u64 = 1;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

fn is_prime_big(n: &BigUint) -> bool {
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if n.is_even() {
        return false;
    }
    let n_minus_1 = n - &one;
    let r = n_minus_1.trailing_zeros().expect("n odd and > 1");
    let d = &n_minus_1 >> r;
    'witness: for &a in &MR_BASES {
        let a = BigUint::from(a);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..r {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
