//! Exact rational scalars.
//!
//! All coefficient arithmetic in this crate runs over the rationals. The
//! representation is `num_rational::BigRational`, which keeps numerator and
//! denominator coprime with a positive denominator, so equality is structural.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{MahlerError, Result};

/// Exact rational scalar: arbitrary-precision numerator over a positive
/// arbitrary-precision denominator, always in lowest terms.
pub type Rat = BigRational;

/// Shorthand for an integer scalar.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for the fraction `n/d`.
///
/// Panics if `d == 0`; use [`parse_rat`] for fallible construction from text.
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"n"` or `"n/d"` with optional sign into an exact rational.
pub fn parse_rat(text: &str) -> Result<Rat> {
    let s = text.trim();
    let bad = || MahlerError::Parse(format!("invalid rational literal `{text}`"));
    let (num_text, den_text) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: BigInt = num_text.parse().map_err(|_| bad())?;
    let den: BigInt = match den_text {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(MahlerError::DivisionByZero);
    }
    Ok(Rat::new(num, den))
}

/// Canonical text form: `"n"` for integers, `"n/d"` otherwise.
pub fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

/// Residue of a rational modulo a prime that does not divide its denominator.
///
/// Returns `None` when the denominator vanishes modulo `p`, in which case the
/// caller must pick a different prime.
pub fn rat_mod(r: &Rat, p: u64) -> Option<u64> {
    let num = r.numer().mod_floor_u64(p);
    let den = r.denom().mod_floor_u64(p);
    if den == 0 {
        return None;
    }
    Some(mul_mod(num, inv_mod(den, p), p))
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        use num_integer::Integer;
        let m = self.mod_floor(&BigInt::from(p));
        let (_, digits) = m.to_u64_digits();
        match digits.len() {
            0 => 0,
            1 => digits[0],
            _ => unreachable!("reduced residue exceeds one limb"),
        }
    }
}

/// `a * b mod p` without overflow (p < 2^63).
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Modular inverse by Fermat for prime `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Primes used for modular rank certificates; all below 2^62 so products fit u128.
pub const MOD_PRIMES: [u64; 4] = [
    2_305_843_009_213_693_951, // 2^61 - 1
    4_611_686_018_427_387_847,
    4_611_686_018_427_387_817,
    2_305_843_009_213_693_669,
];
