//! Exact rational scalar and the integer combinatorics shared by every module.
//!
//! `Rational` is an arbitrary-precision rational kept in canonical lowest
//! terms (the underlying type reduces on construction). Factorials are
//! memoized process-wide because they are reused heavily across tableau
//! construction, determinant checks and coefficient formulas.

use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// Rational from an integer numerator and denominator. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Rational from a plain integer.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

static FACTORIALS: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();

/// n! as a big integer, memoized for the life of the process.
///
/// The table only grows; concurrent readers never observe a partially
/// written entry and repeated writes are idempotent.
pub fn factorial(n: usize) -> BigInt {
    let table = FACTORIALS.get_or_init(|| RwLock::new(vec![BigInt::one()]));
    {
        let read = table.read().expect("factorial table poisoned");
        if n < read.len() {
            return read[n].clone();
        }
    }
    let mut write = table.write().expect("factorial table poisoned");
    while write.len() <= n {
        let next = write.last().expect("table never empty") * BigInt::from(write.len());
        write.push(next);
    }
    write[n].clone()
}

/// n! as a rational.
pub fn factorial_rat(n: usize) -> Rational {
    Rational::from_integer(factorial(n))
}

/// Binomial coefficient C(n, k); zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    // Exact by construction: k! (n-k)! divides n!.
    factorial(n) / (factorial(k) * factorial(n - k))
}

pub fn binomial_rat(n: usize, k: usize) -> Rational {
    Rational::from_integer(binomial(n, k))
}

/// The product (l+1)(l+2)…(l+count); the empty product (count = 0) is 1.
pub fn rising_from(l: usize, count: usize) -> BigInt {
    let mut acc = BigInt::one();
    for j in 1..=count {
        acc *= BigInt::from(l + j);
    }
    acc
}

/// Error raised when a string is not a valid rational literal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError {
    pub input: String,
    pub reason: String,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot parse {:?} as a rational: {}", self.input, self.reason)
    }
}

impl std::error::Error for ParseRationalError {}

/// Parses `p/q`, a plain integer, or a terminating decimal such as `-0.25`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = |reason: &str| ParseRationalError {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    let t = s.trim();
    if t.is_empty() {
        return Err(err("empty string"));
    }
    if let Some((num, den)) = t.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| err("bad numerator"))?;
        let d: BigInt = den.trim().parse().map_err(|_| err("bad denominator"))?;
        if d.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
            return Err(err("bad fractional part"));
        }
        let negative = ip.starts_with('-');
        let ip_mag = ip.trim_start_matches(['-', '+']);
        let digits = format!("{}{}", if ip_mag.is_empty() { "0" } else { ip_mag }, fp);
        let n: BigInt = digits.parse().map_err(|_| err("bad digits"))?;
        let d = BigInt::from(10u32).pow(fp.len() as u32);
        let v = Rational::new(n, d);
        return Ok(if negative { -v } else { v });
    }
    let n: BigInt = t.parse().map_err(|_| err("bad integer"))?;
    Ok(Rational::from_integer(n))
}

/// `true` when `r` is a (possibly negative) integer.
pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Sign of the rational as -1, 0, or 1.
pub fn signum(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_negative() {
        -1
    } else {
        1
    }
}
