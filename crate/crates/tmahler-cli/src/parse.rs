//! The α argument: `P^a/Q^b` with explicit carets, or a plain rational like
//! `32/27` that is factored and rejected unless each side is a prime power.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use tmahler::numbers::perfect_power;
use tmahler::{Error, PrimePowerRational};

pub fn parse_alpha(s: &str) -> Result<PrimePowerRational, Error> {
    let s = s.trim();
    let (num, den) = s.split_once('/').ok_or_else(|| {
        Error::Parse(format!(
            "alpha must be a quotient of two prime powers, like 2^5/3^3 or 32/27; got {s:?}"
        ))
    })?;
    let (p, a) = parse_side(num)?;
    let (q, b) = parse_side(den)?;
    // Primality and distinctness of p, q are validated by the constructor.
    PrimePowerRational::new(p, q, a, b)
}

/// One side of the quotient: either `base^exp` verbatim or an integer whose
/// maximal perfect-power form is extracted.
fn parse_side(side: &str) -> Result<(u64, u64), Error> {
    let side = side.trim();
    if let Some((base, exp)) = side.split_once('^') {
        return Ok((parse_u64(base)?, parse_u64(exp)?));
    }
    let n: BigUint = side
        .parse()
        .map_err(|_| Error::Parse(format!("{side:?} is not a nonnegative integer")))?;
    if n.is_one() {
        return Err(Error::Parse(
            "a side equal to 1 leaves its prime undetermined; write it with an \
             explicit exponent, like 3^0"
                .to_string(),
        ));
    }
    let (base, exp) = perfect_power(&n)
        .ok_or_else(|| Error::Parse(format!("{side} has no prime-power form")))?;
    let base = base.to_u64().ok_or_else(|| {
        Error::Parse(format!("the base of {side} does not fit in 64 bits"))
    })?;
    Ok((base, exp))
}

fn parse_u64(text: &str) -> Result<u64, Error> {
    text.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{text:?} is not a 64-bit natural number")))
}
