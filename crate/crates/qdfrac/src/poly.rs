//! Dense polynomials and Laurent polynomials over exact rationals.
//!
//! `RatPoly` stores coefficients ascending by degree with no trailing zero,
//! so the zero polynomial is the empty list and equality is structural.
//! `LaurentPoly` extends this with a (possibly negative) lowest exponent and
//! canonical trimming at both ends; its `polynomial_part` is the component
//! with non-negative exponents.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RatPoly::constant(Rational::from_integer(1.into()))
    }

    pub fn constant(c: Rational) -> Self {
        RatPoly::from_coeffs(vec![c])
    }

    /// The monomial x.
    pub fn x() -> Self {
        RatPoly::monomial(Rational::from_integer(1.into()), 1)
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        RatPoly::from_coeffs(coeffs)
    }

    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of x^d (zero beyond the stored range).
    pub fn coeff(&self, d: usize) -> Rational {
        self.coeffs.get(d).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return RatPoly::zero();
        }
        RatPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by x^k.
    pub fn mul_xpow(&self, k: usize) -> Self {
        if self.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        RatPoly { coeffs }
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        RatPoly::from_coeffs(coeffs)
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        RatPoly::from_coeffs(coeffs)
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        RatPoly::from_coeffs(coeffs)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for RatPoly {
    /// One `coeff*x^deg` token per nonzero term, ascending degree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{}*x^{}", c, d)?;
            first = false;
        }
        Ok(())
    }
}

/// A Laurent polynomial: finitely many terms with exponents in ℤ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    lo: i64,
    coeffs: Vec<Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            lo: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn from_poly(p: &RatPoly) -> Self {
        LaurentPoly::new(0, p.coeffs().to_vec())
    }

    /// Single term c*x^e.
    pub fn term(c: Rational, e: i64) -> Self {
        LaurentPoly::new(e, vec![c])
    }

    /// Builds from the lowest exponent and ascending coefficients; trims both ends.
    pub fn new(lo: i64, coeffs: Vec<Rational>) -> Self {
        let mut lp = LaurentPoly { lo, coeffs };
        lp.normalize();
        lp
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.lo += lead_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.lo = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with nonzero coefficient; `None` when zero.
    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.lo)
    }

    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.lo + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, e: i64) -> Rational {
        if e < self.lo {
            return Rational::zero();
        }
        self.coeffs
            .get((e - self.lo) as usize)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by x^k (k may be negative).
    pub fn mul_xpow(&self, k: i64) -> Self {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            lo: self.lo + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// The component with exponents >= 0, as an ordinary polynomial.
    pub fn polynomial_part(&self) -> RatPoly {
        if self.is_zero() {
            return RatPoly::zero();
        }
        let hi = self.lo + self.coeffs.len() as i64 - 1;
        if hi < 0 {
            return RatPoly::zero();
        }
        let coeffs = (0..=hi).map(|e| self.coeff(e)).collect();
        RatPoly::from_coeffs(coeffs)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(rhs.lo);
        let hi = (self.lo + self.coeffs.len() as i64).max(rhs.lo + rhs.coeffs.len() as i64);
        let coeffs = (lo..hi).map(|e| self.coeff(e) + rhs.coeff(e)).collect();
        LaurentPoly::new(lo, coeffs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        &self.clone() + &rhs.scale(&Rational::from_integer((-1).into()))
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::new(self.lo + rhs.lo, coeffs)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{}*x^{}", c, self.lo + i as i64)?;
            first = false;
        }
        Ok(())
    }
}

/// Expands `num/den` as a series in 1/x: returns coefficients a_0..a_order
/// with num/den = Σ a_j x^{-j} + O(x^{-(order+1)}).
///
/// Requires deg num <= deg den (the quotient must be bounded at infinity).
pub fn inv_x_expansion(num: &RatPoly, den: &RatPoly, order: usize) -> Vec<Rational> {
    assert!(!den.is_zero(), "expansion denominator is zero");
    if num.is_zero() {
        return vec![Rational::zero(); order + 1];
    }
    let dp = num.degree().expect("nonzero");
    let dq = den.degree().expect("nonzero");
    assert!(dp <= dq, "quotient unbounded at infinity: deg num > deg den");
    let shift = dq - dp;
    // Reverse both polynomials: A(y) = y^dp * num(1/y), B(y) = y^dq * den(1/y).
    // Then num/den = y^shift * A(y)/B(y) with y = 1/x and B(0) != 0.
    let a = |j: usize| {
        if j <= dp {
            num.coeff(dp - j)
        } else {
            Rational::zero()
        }
    };
    let b = |j: usize| {
        if j <= dq {
            den.coeff(dq - j)
        } else {
            Rational::zero()
        }
    };
    let b0 = b(0);
    let mut u: Vec<Rational> = Vec::with_capacity(order + 1);
    for m in 0..=order {
        let mut acc = a(m);
        for i in 1..=m {
            acc -= b(i) * &u[m - i];
        }
        u.push(acc / &b0);
    }
    let mut out = vec![Rational::zero(); order + 1];
    out[shift..].clone_from_slice(&u[..=order - shift]);
    out
}
