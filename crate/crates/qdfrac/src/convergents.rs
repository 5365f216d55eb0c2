//! Convergents P_n/Q_n of the unit-numerator continued fraction for
//! x F(x) = x e^x E1(x), the companion polynomial pairs (r_k, s_k), their
//! coefficient closed forms, and the exact congruence identities that drive
//! the main-term analysis of the F_m iteration.
//!
//! The partial denominators are m_n = x for odd n and m_n = 2/n for even n,
//! and the convergents satisfy
//!
//!   P_n = m_n P_{n-1} + P_{n-2},  Q_n = m_n Q_{n-1} + Q_{n-2}
//!
//! with (P_-1, Q_-1) = (1, 0), (P_0, Q_0) = (0, 1). The (r_k, s_k) pair is
//! the bottom row of the product of the 2x2 step matrices of the iteration;
//! both satisfy
//!
//!   f_k = ((2k-1+x)/k) f_{k-1} - ((k-1)/k) f_{k-2}
//!
//! with (r_0, r_1) = (0, -1) and (s_0, s_1) = (1, 1+x). All identities in
//! this module are checked in exact rational arithmetic; "polynomial part"
//! always means the component with non-negative exponents, i.e. the residue
//! modulo (1/x)Q[1/x].

use std::fmt;

use num_traits::Zero;

use crate::poly::{LaurentPoly, RatPoly};
use crate::rational::{binomial_rat, factorial_rat, int, rat, Rational, rising_from};

/// A partial denominator of the unit-numerator continued fraction: the
/// formal variable x at odd positions, the constant 2/n at even positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartialDenominator {
    X,
    Const(Rational),
}

impl PartialDenominator {
    pub fn as_poly(&self) -> RatPoly {
        match self {
            PartialDenominator::X => RatPoly::x(),
            PartialDenominator::Const(c) => RatPoly::constant(c.clone()),
        }
    }
}

/// m_n for n >= 1: x when n is odd, 2/n when n is even.
pub fn partial_denominator(n: usize) -> PartialDenominator {
    assert!(n >= 1, "partial denominators start at n = 1");
    if n % 2 == 1 {
        PartialDenominator::X
    } else {
        PartialDenominator::Const(rat(2, n as i64))
    }
}

/// Exact value of the depth-n truncation of the unit-numerator continued
/// fraction at a rational point, by backward recurrence. Equals
/// P_n(x)/Q_n(x); n = 0 gives 0.
pub fn cf_value_at(x: &Rational, depth: usize) -> Rational {
    let mut tail = Rational::zero();
    for j in (1..=depth).rev() {
        let m = match partial_denominator(j) {
            PartialDenominator::X => x.clone(),
            PartialDenominator::Const(c) => c,
        };
        tail = (m + tail).recip();
    }
    tail
}

/// (P_n, Q_n) by the three-term recurrence. n = 0 gives (0, 1).
pub fn convergent_pair(n: usize) -> (RatPoly, RatPoly) {
    let mut p_prev = RatPoly::one(); // P_{-1}
    let mut q_prev = RatPoly::zero(); // Q_{-1}
    let mut p = RatPoly::zero(); // P_0
    let mut q = RatPoly::one(); // Q_0
    for j in 1..=n {
        let m = partial_denominator(j).as_poly();
        let p_next = &(&m * &p) + &p_prev;
        let q_next = &(&m * &q) + &q_prev;
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
    }
    (p, q)
}

/// Selects between the odd- and even-index member of a closed-form family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

/// Closed form for P_{2n-1} (odd) or P_{2n} (even), n >= 1:
///
///   P_{2n-1} = Σ_{k=0}^{n-1} Σ_{l=0}^{n-k-1} C(n, l+k+1)/((l+k)…(l+1)) (-1)^l x^k,
///   P_{2n}   = Σ_{k=0}^{n-1} Σ_{l=0}^{n-k-1} C(n, l+k+1)/((l+k+1)…(l+1)) (-1)^l x^k,
///
/// with the empty falling product equal to 1.
pub fn closed_form_p(n: usize, parity: Parity) -> RatPoly {
    assert!(n >= 1);
    let mut coeffs = vec![Rational::zero(); n];
    for (k, c) in coeffs.iter_mut().enumerate() {
        for l in 0..=(n - k - 1) {
            let prod_len = match parity {
                Parity::Odd => k,
                Parity::Even => k + 1,
            };
            let term = binomial_rat(n, l + k + 1)
                / Rational::from_integer(rising_from(l, prod_len));
            if l % 2 == 0 {
                *c += term;
            } else {
                *c -= term;
            }
        }
    }
    RatPoly::from_coeffs(coeffs)
}

/// Closed form for Q_{2n-1} = Σ_{k=0}^{n-1} C(n, k+1)/k! x^{k+1} (odd) or
/// Q_{2n} = Σ_{k=0}^{n} C(n, k)/k! x^k (even), n >= 1.
pub fn closed_form_q(n: usize, parity: Parity) -> RatPoly {
    assert!(n >= 1);
    match parity {
        Parity::Odd => {
            let mut coeffs = vec![Rational::zero(); n + 1];
            for k in 0..n {
                coeffs[k + 1] = binomial_rat(n, k + 1) / factorial_rat(k);
            }
            RatPoly::from_coeffs(coeffs)
        }
        Parity::Even => {
            let coeffs = (0..=n)
                .map(|k| binomial_rat(n, k) / factorial_rat(k))
                .collect();
            RatPoly::from_coeffs(coeffs)
        }
    }
}

/// (r_k, s_k) from the shared recurrence.
pub fn rs_polys(k: usize) -> (RatPoly, RatPoly) {
    let mut r_prev = RatPoly::zero(); // r_0
    let mut s_prev = RatPoly::one(); // s_0
    if k == 0 {
        return (r_prev, s_prev);
    }
    let mut r = RatPoly::constant(int(-1)); // r_1
    let mut s = RatPoly::from_coeffs(vec![int(1), int(1)]); // s_1
    for j in 2..=k {
        // coefficient polynomial (2j-1+x)/j
        let lead = RatPoly::from_coeffs(vec![rat(2 * j as i64 - 1, j as i64), rat(1, j as i64)]);
        let tail = rat(j as i64 - 1, j as i64);
        let r_next = &(&lead * &r) - &r_prev.scale(&tail);
        let s_next = &(&lead * &s) - &s_prev.scale(&tail);
        r_prev = r;
        s_prev = s;
        r = r_next;
        s = s_next;
    }
    (r, s)
}

/// Index error for the coefficient accessors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffIndexError {
    pub what: &'static str,
    pub index: usize,
    pub max: usize,
}

impl fmt::Display for CoeffIndexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} index {} out of range (max {})",
            self.what, self.index, self.max
        )
    }
}

impl std::error::Error for CoeffIndexError {}

/// S_l^(k) = C(k, l)/l!, the coefficient of x^l in s_k.
///
/// Panics if the closed form ever disagrees with the recurrence, which
/// would indicate a defect in one of the two routes.
pub fn s_coeff(k: usize, l: usize) -> Result<Rational, CoeffIndexError> {
    if l > k {
        return Err(CoeffIndexError {
            what: "s-coefficient",
            index: l,
            max: k,
        });
    }
    let v = binomial_rat(k, l) / factorial_rat(l);
    let (_, s) = rs_polys(k);
    assert_eq!(v, s.coeff(l), "S_{l}^({k}) closed form vs recurrence");
    Ok(v)
}

/// R_k^(n) = -Σ_{l=1}^{n-k} C(n, l+k)/(l+k)! (-1)^{l-1} (l-1)!, the
/// coefficient of x^k in r_n. Requires n >= 1 and k <= n-1.
pub fn r_coeff(n: usize, k: usize) -> Result<Rational, CoeffIndexError> {
    if n == 0 || k > n - 1 {
        return Err(CoeffIndexError {
            what: "r-coefficient",
            index: k,
            max: n.saturating_sub(1),
        });
    }
    let mut acc = Rational::zero();
    for l in 1..=(n - k) {
        let term = binomial_rat(n, l + k) / factorial_rat(l + k) * factorial_rat(l - 1);
        if (l - 1) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc = -acc;
    let (r, _) = rs_polys(n);
    assert_eq!(acc, r.coeff(k), "R_{k}^({n}) closed form vs recurrence");
    Ok(acc)
}

/// The truncated asymptotic factor Σ_{l=1}^{terms} (-1)^{l-1} (l-1)! x^{-l}.
pub fn asymptotic_tail(terms: usize) -> LaurentPoly {
    let mut parts = Vec::with_capacity(terms);
    for l in 1..=terms {
        let c = factorial_rat(l - 1);
        parts.push(if (l - 1) % 2 == 0 { c } else { -c });
    }
    parts.reverse(); // ascending exponents from -terms up to -1
    LaurentPoly::new(-(terms as i64), parts)
}

/// The exact Laurent value of x^{k+1} r_k + x^{k+1} s_k Σ_{l=1}^{2k+1} …,
/// whose polynomial part equals k!. This is the denominator normalization
/// of the odd iteration step F_{2k+1}/x.
pub fn fm_denominator_congruence(k: usize) -> LaurentPoly {
    assert!(k >= 1);
    let (r, s) = rs_polys(k);
    let xr = LaurentPoly::from_poly(&r).mul_xpow(k as i64 + 1);
    let xs = LaurentPoly::from_poly(&s).mul_xpow(k as i64 + 1);
    &xr + &(&xs * &asymptotic_tail(2 * k + 1))
}

/// The exact Laurent value of -k x^k (r_k - r_{k-1}) - k x^k (s_k - s_{k-1}) Σ_{l=1}^{2k} …,
/// whose polynomial part equals k!. This is the numerator normalization of
/// the odd iteration step.
pub fn fm_numerator_congruence(k: usize) -> LaurentPoly {
    assert!(k >= 1);
    let (r, s) = rs_polys(k);
    let (r_prev, s_prev) = rs_polys(k - 1);
    let dr = &r - &r_prev;
    let ds = &s - &s_prev;
    let scale = int(-(k as i64));
    let xr = LaurentPoly::from_poly(&dr).mul_xpow(k as i64).scale(&scale);
    let xs = LaurentPoly::from_poly(&ds).mul_xpow(k as i64).scale(&scale);
    &xr + &(&xs * &asymptotic_tail(2 * k))
}

/// A failed scalar identity, with both sides.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityFailure {
    pub identity: &'static str,
    pub k: usize,
    pub n: Option<usize>,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl fmt::Display for IdentityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} failed at k={}", self.identity, self.k)?;
        if let Some(n) = self.n {
            write!(f, ", n={n}")?;
        }
        write!(f, ": {} != {}", self.lhs, self.rhs)
    }
}

/// Exact checks on the s-coefficients S_l^(k) = C(k,l)/l! for k >= 2:
///
/// * Σ_{l=0}^{k} S_l^(k) (-1)^{l+k-n} (l+k-n)! = 0 for n = 1..k,
/// * Σ_{l=0}^{k} S_l^(k) (-1)^{l+k} (l+k)!   = k!,
///
/// together with the three alternating binomial sums used to establish them:
///
/// * Σ_{l=0}^{k-1} C(k-1,l) (-1)^{l+k}   (l+k)…(l+1)   = -k k!,
/// * Σ_{l=0}^{k-1} C(k-1,l) (-1)^{l+k+1} (l+k+1)…(l+1) = (k+1)k(k+1)!/2,
/// * Σ_{l=0}^{k-2} C(k-2,l) (-1)^{l+k}   (l+k)…(l+1)   = k(k-1)k!/2.
///
/// Returns the failing instances; an empty list means everything holds.
pub fn s_coefficient_identities(k: usize) -> Vec<IdentityFailure> {
    assert!(k >= 2);
    let mut failures = Vec::new();
    let s: Vec<Rational> = (0..=k)
        .map(|l| binomial_rat(k, l) / factorial_rat(l))
        .collect();

    // alternating factorial sums against the s-coefficients
    for n in (0..=k).rev() {
        let mut acc = Rational::zero();
        for (l, sl) in s.iter().enumerate() {
            let term = sl * factorial_rat(l + k - n);
            if (l + k - n) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let want = if n == 0 { factorial_rat(k) } else { Rational::zero() };
        if acc != want {
            failures.push(IdentityFailure {
                identity: if n == 0 {
                    "s-coefficient factorial sum"
                } else {
                    "s-coefficient vanishing sum"
                },
                k,
                n: Some(n),
                lhs: acc,
                rhs: want,
            });
        }
    }

    // the three binomial-sum lemmas
    // Σ_{l=0}^{top} C(top, l) (-1)^{l+k} (l+shift)…(l+1)
    let sum_binom = |top: usize, shift: usize| -> Rational {
        let mut acc = Rational::zero();
        for l in 0..=top {
            let term = binomial_rat(top, l) * Rational::from_integer(rising_from(l, shift));
            acc += if (l + k) % 2 == 0 { term } else { -term };
        }
        acc
    };
    let lemmas: [(&'static str, Rational, Rational); 3] = [
        (
            "alternating binomial sum (k terms)",
            sum_binom(k - 1, k),
            -int(k as i64) * factorial_rat(k),
        ),
        (
            "alternating binomial sum (k+1 terms)",
            -sum_binom(k - 1, k + 1),
            int((k as i64 + 1) * k as i64) * factorial_rat(k + 1) / int(2),
        ),
        (
            "alternating binomial sum (reduced order)",
            sum_binom(k - 2, k),
            int(k as i64 * (k as i64 - 1)) * factorial_rat(k) / int(2),
        ),
    ];
    for (name, lhs, rhs) in lemmas {
        if lhs != rhs {
            failures.push(IdentityFailure {
                identity: name,
                k,
                n: None,
                lhs,
                rhs,
            });
        }
    }
    failures
}

/// A failed polynomial identity, with both sides.
#[derive(Debug, Clone, PartialEq)]
pub struct BridgeFailure {
    pub relation: &'static str,
    pub n: usize,
    pub lhs: RatPoly,
    pub rhs: RatPoly,
}

impl fmt::Display for BridgeFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} failed at n={}: {} != {}",
            self.relation, self.n, self.lhs, self.rhs
        )
    }
}

/// Exact bridges between the convergents and the (r, s) pairs, n >= 1:
///
///   Q_{2n} = s_n,
///   Q_{2n+1} = (x+n) s_n - n s_{n-1},
///   P_{2n} = -r_n,
///   P_{2n+1} = (n+1)(r_n - r_{n+1}).
pub fn bridge_q_s(n: usize) -> Vec<BridgeFailure> {
    assert!(n >= 1);
    let mut failures = Vec::new();
    let (p2n, q2n) = convergent_pair(2 * n);
    let (p2n1, q2n1) = convergent_pair(2 * n + 1);
    let (rn, sn) = rs_polys(n);
    let (_, sn_prev) = rs_polys(n - 1);
    let (rn_next, _) = rs_polys(n + 1);

    let x_plus_n = RatPoly::from_coeffs(vec![int(n as i64), int(1)]);
    let checks = [
        ("Q_{2n} = s_n", q2n, sn.clone()),
        (
            "Q_{2n+1} = (x+n) s_n - n s_{n-1}",
            q2n1,
            &(&x_plus_n * &sn) - &sn_prev.scale(&int(n as i64)),
        ),
        ("P_{2n} = -r_n", p2n, -&rn),
        (
            "P_{2n+1} = (n+1)(r_n - r_{n+1})",
            p2n1,
            (&rn - &rn_next).scale(&int(n as i64 + 1)),
        ),
    ];
    for (relation, lhs, rhs) in checks {
        if lhs != rhs {
            failures.push(BridgeFailure {
                relation,
                n,
                lhs,
                rhs,
            });
        }
    }
    failures
}
