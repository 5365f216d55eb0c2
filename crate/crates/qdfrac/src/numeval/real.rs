//! Arbitrary-precision binary floating point with explicit precision.
//!
//! `BigReal` pairs a value with its precision in bits. Binary operations
//! work at the larger of the two operand precisions; the precision is
//! always an explicit parameter of construction, never ambient state.
//! Transcendental functions share a process-wide constants cache behind a
//! mutex, which is the only synchronization in this module.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};

use crate::rational::Rational;

/// Minimum precision in bits; requests below this are rounded up.
pub const MIN_PREC_BITS: usize = 64;

const RM: RoundingMode = RoundingMode::ToEven;

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    static CACHE: OnceLock<Mutex<Consts>> = OnceLock::new();
    let mutex = CACHE.get_or_init(|| Mutex::new(Consts::new().expect("constants cache")));
    let mut cc = mutex.lock().expect("constants cache poisoned");
    f(&mut cc)
}

#[derive(Debug, Clone)]
pub struct BigReal {
    value: BigFloat,
    prec_bits: usize,
}

impl BigReal {
    fn wrap(value: BigFloat, prec_bits: usize) -> Self {
        debug_assert!(!value.is_nan(), "BigReal must hold a finite value");
        BigReal { value, prec_bits }
    }

    pub fn zero(prec_bits: usize) -> Self {
        let p = prec_bits.max(MIN_PREC_BITS);
        BigReal::wrap(BigFloat::new(p), p)
    }

    pub fn from_u64(v: u64, prec_bits: usize) -> Self {
        let p = prec_bits.max(MIN_PREC_BITS);
        BigReal::wrap(BigFloat::from_u64(v, p), p)
    }

    pub fn from_i64(v: i64, prec_bits: usize) -> Self {
        let p = prec_bits.max(MIN_PREC_BITS);
        BigReal::wrap(BigFloat::from_i64(v, p), p)
    }

    pub fn from_f64(v: f64, prec_bits: usize) -> Self {
        assert!(v.is_finite(), "BigReal requires a finite seed value");
        let p = prec_bits.max(MIN_PREC_BITS);
        BigReal::wrap(BigFloat::from_f64(v, p), p)
    }

    /// Exact conversion of a rational, rounded once to the target precision.
    pub fn from_rational(r: &Rational, prec_bits: usize) -> Self {
        let p = prec_bits.max(MIN_PREC_BITS);
        // Parse numerator and denominator with enough headroom that the
        // only rounding happens in the final division.
        let digits_bits = |s: &str| s.len() * 4 + 64;
        let ns = r.numer().to_string();
        let ds = r.denom().to_string();
        let wp = p.max(digits_bits(&ns)).max(digits_bits(&ds));
        let (n, d) = with_consts(|cc| {
            (
                BigFloat::parse(&ns, Radix::Dec, wp, RM, cc),
                BigFloat::parse(&ds, Radix::Dec, wp, RM, cc),
            )
        });
        BigReal::wrap(n.div(&d, p, RM), p)
    }

    /// Parses a decimal or rational literal at the given precision.
    pub fn parse(s: &str, prec_bits: usize) -> Result<Self, crate::rational::ParseRationalError> {
        let r = crate::rational::parse_rational(s)?;
        Ok(BigReal::from_rational(&r, prec_bits))
    }

    pub fn prec_bits(&self) -> usize {
        self.prec_bits
    }

    /// Re-rounds to a (usually lower) precision.
    pub fn with_prec(&self, prec_bits: usize) -> Self {
        let p = prec_bits.max(MIN_PREC_BITS);
        let mut v = self.value.clone();
        v.set_precision(p, RM).expect("finite value");
        BigReal::wrap(v, p)
    }

    fn join(&self, rhs: &Self) -> usize {
        self.prec_bits.max(rhs.prec_bits)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let p = self.join(rhs);
        BigReal::wrap(self.value.add(&rhs.value, p, RM), p)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let p = self.join(rhs);
        BigReal::wrap(self.value.sub(&rhs.value, p, RM), p)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let p = self.join(rhs);
        BigReal::wrap(self.value.mul(&rhs.value, p, RM), p)
    }

    pub fn div(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero");
        let p = self.join(rhs);
        BigReal::wrap(self.value.div(&rhs.value, p, RM), p)
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        BigReal::wrap(self.value.reciprocal(self.prec_bits, RM), self.prec_bits)
    }

    pub fn neg(&self) -> Self {
        BigReal::wrap(self.value.neg(), self.prec_bits)
    }

    pub fn abs(&self) -> Self {
        BigReal::wrap(self.value.abs(), self.prec_bits)
    }

    pub fn mul_u64(&self, v: u64) -> Self {
        self.mul(&BigReal::from_u64(v, self.prec_bits))
    }

    /// Exact scaling by 2^e.
    pub fn mul_pow2(&self, e: i32) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = self.value.clone();
        let exp = v.exponent().expect("finite");
        v.set_exponent(exp + e);
        BigReal::wrap(v, self.prec_bits)
    }

    pub fn div_u64(&self, v: u64) -> Self {
        self.div(&BigReal::from_u64(v, self.prec_bits))
    }

    pub fn exp(&self) -> Self {
        let p = self.prec_bits;
        BigReal::wrap(with_consts(|cc| self.value.exp(p, RM, cc)), p)
    }

    pub fn ln(&self) -> Self {
        assert!(self.is_positive(), "ln of a non-positive value");
        let p = self.prec_bits;
        BigReal::wrap(with_consts(|cc| self.value.ln(p, RM, cc)), p)
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "sqrt of a negative value");
        BigReal::wrap(self.value.sqrt(self.prec_bits, RM), self.prec_bits)
    }

    pub fn pi(prec_bits: usize) -> Self {
        let p = prec_bits.max(MIN_PREC_BITS);
        BigReal::wrap(with_consts(|cc| cc.pi(p, RM)), p)
    }

    pub fn ln2(prec_bits: usize) -> Self {
        let p = prec_bits.max(MIN_PREC_BITS);
        BigReal::wrap(with_consts(|cc| cc.ln_2(p, RM)), p)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        !self.value.is_zero() && self.value.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.value.is_negative()
    }

    /// Binary exponent e with |x| in [2^(e-1), 2^e); None for zero.
    pub fn exponent(&self) -> Option<i32> {
        if self.is_zero() {
            None
        } else {
            self.value.exponent()
        }
    }

    fn order(&self, rhs: &Self) -> Ordering {
        match self.value.cmp(&rhs.value) {
            Some(v) if v < 0 => Ordering::Less,
            Some(v) if v > 0 => Ordering::Greater,
            Some(_) => Ordering::Equal,
            None => unreachable!("BigReal values are never NaN"),
        }
    }

    /// |self| < 2^e (strict; zero always passes).
    pub fn abs_below_pow2(&self, e: i64) -> bool {
        match self.exponent() {
            None => true,
            Some(exp) => (exp as i64) <= e,
        }
    }

    /// |self - rhs| < 2^e.
    pub fn agrees_abs(&self, rhs: &Self, e: i64) -> bool {
        self.sub(rhs).abs_below_pow2(e)
    }

    /// |self - rhs| < 2^e * |self| (relative agreement; exact equality when
    /// both are zero).
    pub fn agrees_rel(&self, rhs: &Self, e: i64) -> bool {
        if self.is_zero() {
            return rhs.is_zero();
        }
        let scale = self.exponent().expect("nonzero") as i64;
        self.sub(rhs).abs_below_pow2(e + scale)
    }

    /// Closest f64 (for sizing heuristics, not for results).
    pub fn to_f64_lossy(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let (words, _, sign, exp, _) = self.value.as_raw_parts().expect("finite");
        let top = words.last().copied().unwrap_or(0);
        let mantissa = top as f64 / (u64::MAX as f64 + 1.0);
        let mag = mantissa * 2f64.powi(exp);
        if sign == Sign::Neg {
            -mag
        } else {
            mag
        }
    }

    /// Decimal string with the given number of significant digits.
    pub fn to_decimal(&self, sig_digits: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let (sign, digits, exp10) = with_consts(|cc| {
            self.value
                .convert_to_radix(Radix::Dec, RoundingMode::None, cc)
                .expect("finite value converts")
        });
        let mut ds: Vec<u8> = digits;
        // Round at sig_digits decimal places.
        if ds.len() > sig_digits {
            let round_up = ds[sig_digits] >= 5;
            ds.truncate(sig_digits);
            if round_up {
                let mut i = ds.len();
                loop {
                    if i == 0 {
                        ds.insert(0, 1);
                        return format_decimal(sign, &ds, exp10 + 1);
                    }
                    i -= 1;
                    if ds[i] == 9 {
                        ds[i] = 0;
                    } else {
                        ds[i] += 1;
                        break;
                    }
                }
            }
        }
        format_decimal(sign, &ds, exp10)
    }
}

/// Renders digits d1 d2 … with value 0.d1d2… * 10^exp10 as `d.ddd…e±k`.
fn format_decimal(sign: Sign, digits: &[u8], exp10: i32) -> String {
    let mut out = String::new();
    if sign == Sign::Neg {
        out.push('-');
    }
    let trimmed: Vec<u8> = {
        let mut v = digits.to_vec();
        while v.len() > 1 && v.last() == Some(&0) {
            v.pop();
        }
        v
    };
    out.push((b'0' + trimmed[0]) as char);
    if trimmed.len() > 1 {
        out.push('.');
        for &d in &trimmed[1..] {
            out.push((b'0' + d) as char);
        }
    }
    // first digit carries one power of ten
    let e = exp10 - 1;
    if e != 0 {
        out.push('e');
        out.push_str(&e.to_string());
    }
    out
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // prec-determined digit count: bits * log10(2)
        let digits = (self.prec_bits as f64 * std::f64::consts::LOG10_2).floor() as usize;
        write!(f, "{}", self.to_decimal(digits.max(1)))
    }
}

/// Convenience: rational approximation of a decimal string's worth of the
/// value, used by tests comparing against fixed digit strings.
pub fn parse_decimal_to_rational(s: &str) -> Rational {
    crate::rational::parse_rational(s).expect("valid literal")
}

impl BigReal {
    /// Compares against a decimal literal within 2^e.
    pub fn agrees_with_literal(&self, lit: &str, e: i64) -> bool {
        let r = parse_decimal_to_rational(lit);
        let other = BigReal::from_rational(&r, self.prec_bits.max(128));
        self.agrees_abs(&other, e)
    }
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.order(other) == Ordering::Equal
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.order(other))
    }
}
