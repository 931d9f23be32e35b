//! Interval arithmetic with directed rounding.
//!
//! A [`CertifiedReal`] is a pair of arbitrary-precision floats `lo <= hi` that
//! provably encloses the real number being represented. Every operation rounds
//! the lower endpoint toward minus infinity and the upper endpoint toward plus
//! infinity, so enclosures stay valid through arbitrary compositions. Ordering
//! queries answer only when the enclosures separate; callers escalate precision
//! (doubling from [`DEFAULT_PRECISION_BITS`] up to [`PRECISION_CAP_BITS`]) and
//! treat a comparison that survives the cap as uncertain rather than guessing.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigUint;

use crate::error::Error;
use crate::Result;

/// Starting precision for interval evaluations.
pub const DEFAULT_PRECISION_BITS: u32 = 128;

/// Default ceiling for precision escalation; past the active cap, comparisons
/// report themselves uncertain instead of consuming unbounded time.
pub const PRECISION_CAP_BITS: u32 = 4096;

static PRECISION_CAP: AtomicU32 = AtomicU32::new(PRECISION_CAP_BITS);

/// The escalation ceiling currently in force.
pub fn precision_cap() -> u32 {
    PRECISION_CAP.load(AtomicOrdering::Relaxed)
}

/// Raises or lowers the escalation ceiling process-wide. Values below the
/// starting precision are clamped up to it. Lowering the cap makes borderline
/// comparisons fail as uncertain sooner; it never changes a certified answer.
pub fn set_precision_cap(bits: u32) {
    PRECISION_CAP.store(bits.max(DEFAULT_PRECISION_BITS), AtomicOrdering::Relaxed);
}

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(
        Consts::new().expect("constants cache allocation"),
    );
}

pub(crate) fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

const DOWN: RoundingMode = RoundingMode::Down;
const UP: RoundingMode = RoundingMode::Up;

/// An interval `[lo, hi]` certified to contain the represented real number.
#[derive(Debug, Clone)]
pub struct CertifiedReal {
    lo: BigFloat,
    hi: BigFloat,
    bits: u32,
}

impl CertifiedReal {
    fn make(lo: BigFloat, hi: BigFloat, bits: u32) -> Self {
        debug_assert!(
            !lo.is_nan() && !hi.is_nan(),
            "NaN endpoint in certified interval"
        );
        debug_assert!(
            lo.cmp(&hi).map(|c| c <= 0).unwrap_or(false),
            "inverted certified interval"
        );
        CertifiedReal { lo, hi, bits }
    }

    pub fn from_u64(v: u64, bits: u32) -> Self {
        let x = BigFloat::from_u64(v, bits as usize);
        Self::make(x.clone(), x, bits)
    }

    /// Exact import of an arbitrary-size natural number. The enclosure is a
    /// point regardless of `bits`; `bits` only sets the working precision of
    /// subsequent operations.
    pub fn from_biguint(n: &BigUint, bits: u32) -> Self {
        let words = n.to_u64_digits();
        if words.is_empty() {
            return Self::from_u64(0, bits);
        }
        let exp = (words.len() * 64) as i32;
        let x = BigFloat::from_words(&words, Sign::Pos, exp);
        Self::make(x.clone(), x, bits)
    }

    pub fn from_f64(v: f64, bits: u32) -> Self {
        let x = BigFloat::from_f64(v, bits as usize);
        Self::make(x.clone(), x, bits)
    }

    /// Parses a decimal literal into the tightest `bits`-bit enclosure.
    pub fn parse_decimal(s: &str, bits: u32) -> Result<Self> {
        let t = s.trim();
        let valid = !t.is_empty()
            && t.strip_prefix('-').unwrap_or(t).chars().all(|c| c.is_ascii_digit() || c == '.')
            && t.chars().filter(|&c| c == '.').count() <= 1
            && t.chars().any(|c| c.is_ascii_digit());
        if !valid {
            return Err(Error::Parse(format!("not a decimal literal: {s:?}")));
        }
        let p = bits as usize;
        let (lo, hi) = with_consts(|cc| {
            (
                BigFloat::parse(t, Radix::Dec, p, DOWN, cc),
                BigFloat::parse(t, Radix::Dec, p, UP, cc),
            )
        });
        if lo.is_nan() || hi.is_nan() {
            return Err(Error::Parse(format!("not a decimal literal: {s:?}")));
        }
        Ok(Self::make(lo, hi, bits))
    }

    pub fn precision_bits(&self) -> u32 {
        self.bits
    }

    pub fn lo(&self) -> &BigFloat {
        &self.lo
    }

    pub fn hi(&self) -> &BigFloat {
        &self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.lo.cmp(&self.hi) == Some(0)
    }

    fn p(&self, other: &Self) -> usize {
        self.bits.max(other.bits) as usize
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.p(other);
        Self::make(
            self.lo.add(&other.lo, p, DOWN),
            self.hi.add(&other.hi, p, UP),
            p as u32,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.p(other);
        Self::make(
            self.lo.sub(&other.hi, p, DOWN),
            self.hi.sub(&other.lo, p, UP),
            p as u32,
        )
    }

    pub fn neg(&self) -> Self {
        Self::make(self.hi.neg(), self.lo.neg(), self.bits)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.p(other);
        let pairs = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let mut lo: Option<BigFloat> = None;
        let mut hi: Option<BigFloat> = None;
        for (x, y) in pairs {
            let d = x.mul(y, p, DOWN);
            let u = x.mul(y, p, UP);
            lo = Some(match lo {
                None => d,
                Some(cur) => cur.min(&d),
            });
            hi = Some(match hi {
                None => u,
                Some(cur) => cur.max(&u),
            });
        }
        Self::make(lo.unwrap(), hi.unwrap(), p as u32)
    }

    /// Multiplies by an exact nonnegative integer weight.
    pub fn scale_u64(&self, w: u64) -> Self {
        let p = self.bits as usize;
        let wf = BigFloat::from_u64(w, p);
        Self::make(self.lo.mul(&wf, p, DOWN), self.hi.mul(&wf, p, UP), self.bits)
    }

    /// Natural logarithm; the enclosure must be strictly positive.
    pub fn ln(&self) -> Result<Self> {
        if self.lo.is_negative() || self.lo.is_zero() {
            return Err(Error::domain("logarithm of a non-positive enclosure"));
        }
        let p = self.bits as usize;
        let (lo, hi) = with_consts(|cc| {
            (self.lo.ln(p, DOWN, cc), self.hi.ln(p, UP, cc))
        });
        Ok(Self::make(lo, hi, self.bits))
    }

    pub fn exp(&self) -> Self {
        let p = self.bits as usize;
        let (lo, hi) = with_consts(|cc| {
            (self.lo.exp(p, DOWN, cc), self.hi.exp(p, UP, cc))
        });
        Self::make(lo, hi, self.bits)
    }

    /// `self ^ e` for a strictly positive base, via `exp(e * ln(self))`.
    pub fn pow(&self, e: &Self) -> Result<Self> {
        Ok(self.ln()?.mul(e).exp())
    }

    /// Reciprocal of a strictly positive enclosure.
    pub fn recip(&self) -> Result<Self> {
        if self.lo.is_negative() || self.lo.is_zero() {
            return Err(Error::domain("reciprocal of a non-positive enclosure"));
        }
        let p = self.bits as usize;
        let one = BigFloat::from_u64(1, p);
        Ok(Self::make(
            one.div(&self.hi, p, DOWN),
            one.div(&self.lo, p, UP),
            self.bits,
        ))
    }

    /// Hull of two enclosures of candidate minima: encloses `min(x, y)`.
    pub fn min_with(&self, other: &Self) -> Self {
        Self::make(
            self.lo.min(&other.lo),
            self.hi.min(&other.hi),
            self.bits.max(other.bits),
        )
    }

    /// Decides the order of the represented numbers, if the enclosures allow.
    pub fn cmp_certain(&self, other: &Self) -> Option<Ordering> {
        if self.hi.cmp(&other.lo)? < 0 {
            return Some(Ordering::Less);
        }
        if self.lo.cmp(&other.hi)? > 0 {
            return Some(Ordering::Greater);
        }
        if self.is_exact() && other.is_exact() && self.lo.cmp(&other.lo)? == 0 {
            return Some(Ordering::Equal);
        }
        None
    }

    /// Sign of the represented number, if certain.
    pub fn sign_certain(&self) -> Option<Ordering> {
        if self.hi.is_negative() {
            return Some(Ordering::Less);
        }
        if !self.lo.is_negative() && !self.lo.is_zero() {
            return Some(Ordering::Greater);
        }
        if self.lo.is_zero() && self.hi.is_zero() {
            return Some(Ordering::Equal);
        }
        None
    }

    /// Upper bound on `hi - lo`.
    pub fn width(&self) -> BigFloat {
        self.hi.sub(&self.lo, self.bits as usize, UP)
    }

    /// Midpoint rounded to `sig` significant decimal digits.
    pub fn decimal(&self, sig: usize) -> String {
        let p = self.bits as usize;
        let two = BigFloat::from_u64(2, p);
        let mid = self.lo.add(&self.hi, p, RoundingMode::ToEven).div(
            &two,
            p,
            RoundingMode::ToEven,
        );
        round_decimal_string(&format!("{mid}"), sig)
    }

    /// Enclosure width as a short decimal, `"0"` when the interval is a point.
    pub fn width_decimal(&self) -> String {
        if self.is_exact() {
            return "0".to_string();
        }
        round_decimal_string(&format!("{}", self.width()), 2)
    }
}

/// Rounds a decimal-scientific string (as produced by the float display) to
/// `sig` significant digits, half away from zero.
pub fn round_decimal_string(s: &str, sig: usize) -> String {
    assert!(sig > 0);
    let (neg, s) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (mantissa, exp10) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().expect("exponent in float display")),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let mut digits: Vec<u8> = int_part
        .bytes()
        .chain(frac_part.bytes())
        .map(|b| b - b'0')
        .collect();
    // Exponent of the leading digit's place value, i.e. value = 0.digits * 10^point_exp.
    let mut point_exp = int_part.len() as i64 + exp10;
    let leading_zeros = digits.iter().take_while(|&&d| d == 0).count();
    digits.drain(..leading_zeros);
    point_exp -= leading_zeros as i64;
    if digits.is_empty() {
        return "0".to_string();
    }
    if digits.len() > sig {
        let round_up = digits[sig] >= 5;
        digits.truncate(sig);
        if round_up {
            let mut i = sig;
            loop {
                if i == 0 {
                    digits.insert(0, 1);
                    point_exp += 1;
                    digits.truncate(sig);
                    break;
                }
                i -= 1;
                if digits[i] == 9 {
                    digits[i] = 0;
                } else {
                    digits[i] += 1;
                    break;
                }
            }
        }
    }
    while digits.len() > 1 && *digits.last().unwrap() == 0 {
        digits.pop();
    }
    let body: String = digits.iter().map(|d| (d + b'0') as char).collect();
    let sign = if neg { "-" } else { "" };
    // Keep plain notation for moderate magnitudes, or whenever every digit
    // up to the decimal point is already present; scientific otherwise.
    let covered = point_exp > 18 && point_exp as usize <= body.len();
    let out = if (-3..=18).contains(&point_exp) || covered {
        let pe = point_exp;
        if pe <= 0 {
            format!("0.{}{}", "0".repeat(-pe as usize), body)
        } else if (pe as usize) >= body.len() {
            format!("{}{}", body, "0".repeat(pe as usize - body.len()))
        } else {
            format!("{}.{}", &body[..pe as usize], &body[pe as usize..])
        }
    } else {
        let mut m = String::new();
        m.push_str(&body[..1]);
        if body.len() > 1 {
            m.push('.');
            m.push_str(&body[1..]);
        }
        format!("{}e{}", m, point_exp - 1)
    };
    format!("{sign}{out}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_integer_imports_are_points() {
        let n: BigUint = BigUint::from(10u32).pow(30) + BigUint::from(7u32);
        let x = CertifiedReal::from_biguint(&n, 128);
        assert!(x.is_exact());
        assert_eq!(x.decimal(31), "1000000000000000000000000000007");
    }

    #[test]
    fn directed_rounding_orders_endpoints() {
        let two = CertifiedReal::from_u64(2, 128);
        let l = two.ln().unwrap();
        assert!(!l.is_exact());
        assert!(l.lo.cmp(l.hi()).unwrap() < 0);
        let back = l.exp();
        let two_pt = CertifiedReal::from_u64(2, 256);
        assert_eq!(back.cmp_certain(&two_pt), None);
        assert!(back.lo.cmp(two_pt.lo()).unwrap() <= 0);
        assert!(back.hi.cmp(two_pt.hi()).unwrap() >= 0);
    }

    #[test]
    fn subtraction_flips_endpoints() {
        let a = CertifiedReal::from_u64(3, 128).ln().unwrap();
        let d = a.sub(&a);
        assert_eq!(d.sign_certain(), None);
        assert!(d.lo.is_negative());
        assert!(!d.hi.is_negative());
    }

    #[test]
    fn multiplication_handles_signs() {
        let m = CertifiedReal::from_f64(-3.0, 64);
        let n = CertifiedReal::from_f64(5.0, 64);
        let p = m.mul(&n);
        assert_eq!(p.decimal(5), "-15");
        let q = m.mul(&m);
        assert_eq!(q.decimal(5), "9");
    }

    #[test]
    fn comparison_separates_only_disjoint_enclosures() {
        let a = CertifiedReal::from_u64(2, 128).ln().unwrap();
        let b = CertifiedReal::from_u64(3, 128).ln().unwrap();
        assert_eq!(a.cmp_certain(&b), Some(Ordering::Less));
        assert_eq!(b.cmp_certain(&a), Some(Ordering::Greater));
        assert_eq!(a.cmp_certain(&a), None);
        let x = CertifiedReal::from_u64(5, 128);
        assert_eq!(x.cmp_certain(&x), Some(Ordering::Equal));
    }

    #[test]
    fn parse_decimal_brackets_non_dyadic_literals() {
        let t = CertifiedReal::parse_decimal("1.1", 128).unwrap();
        assert!(!t.is_exact());
        assert_eq!(t.decimal(15), "1.1");
        let half = CertifiedReal::parse_decimal("0.5", 128).unwrap();
        assert!(half.is_exact());
        assert!(CertifiedReal::parse_decimal("abc", 128).is_err());
        assert!(CertifiedReal::parse_decimal("1.2.3", 128).is_err());
        assert!(CertifiedReal::parse_decimal("", 128).is_err());
    }

    #[test]
    fn rounding_strings() {
        assert_eq!(round_decimal_string("1.23456789e0", 5), "1.2346");
        assert_eq!(round_decimal_string("9.9999e0", 3), "10");
        assert_eq!(round_decimal_string("-2.5e-1", 1), "-0.3");
        assert_eq!(round_decimal_string("6.93147180559945309e-1", 15), "0.693147180559945");
        assert_eq!(round_decimal_string("1.7e-40", 2), "1.7e-40");
        assert_eq!(round_decimal_string("0.000e0", 4), "0");
        assert_eq!(round_decimal_string("123400", 3), "123000");
    }
}
