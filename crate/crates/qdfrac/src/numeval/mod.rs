//! Arbitrary-precision evaluation of E1 and F(x) = e^x E1(x) by three
//! independent routes, the asymptotic partial sums with their remainder
//! envelope, and the main-term iteration F_1, F_2, … whose normalized
//! ratios tend to 1.
//!
//! Routes:
//!  * series: E1(x) = log(1/x) - γ + Σ_{n>=1} (-1)^{n-1} x^n/(n n!), with a
//!    working-precision boost of ~x/ln2 bits to absorb the alternating
//!    cancellation at large x;
//!  * continued fraction: backward recurrence through the partial
//!    denominators x, 1, x, 1/2, x, 1/3, …, doubling the depth until two
//!    successive truncations agree;
//!  * quadrature: tanh-sinh integration of F(x) = ∫_0^∞ e^{-t}/(t+x) dt on
//!    a truncated interval with a rigorous tail bound, independent of both
//!    expansions.
//!
//! Precision is always an explicit argument; nothing here reads ambient
//! state. All routines reject x <= 0.

pub mod gamma;
pub mod quadrature;
pub mod real;

use std::fmt;

pub use real::BigReal;

use crate::convergents::{partial_denominator, PartialDenominator};
use gamma::euler_gamma;

/// Evaluation method tag carried in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Series,
    ContinuedFraction,
    Quadrature,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::Series => "series",
            Method::ContinuedFraction => "cf",
            Method::Quadrature => "quadrature",
        };
        write!(f, "{s}")
    }
}

/// One evaluation: the point, the value, how it was produced, how much work
/// it took, and an error-bound claim tied to the method.
#[derive(Debug, Clone)]
pub struct EvalReport {
    pub x: BigReal,
    pub value: BigReal,
    pub method: Method,
    pub terms_or_depth: usize,
    pub est_error: BigReal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NumError {
    /// The argument is outside the supported domain (x > 0).
    Domain(&'static str),
    /// The continued fraction did not stabilize below the depth cap.
    NoConvergence { depth: usize },
    /// A subtraction in the main-term iteration lost every significant bit.
    PrecisionExhausted { index: usize },
}

impl fmt::Display for NumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumError::Domain(what) => write!(f, "domain error: {what}"),
            NumError::NoConvergence { depth } => {
                write!(f, "continued fraction did not converge by depth {depth}")
            }
            NumError::PrecisionExhausted { index } => write!(
                f,
                "precision exhausted: F_{index} lost all significant bits; raise prec_bits"
            ),
        }
    }
}

impl std::error::Error for NumError {}

fn require_positive(x: &BigReal) -> Result<(), NumError> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(NumError::Domain("x must be positive"))
    }
}

/// E1 by the logarithm-plus-power-series representation.
///
/// Terms are added until they fall below 2^{-prec_bits} of the partial sum;
/// the working precision carries a boost of ⌈x/ln2⌉ + 32 bits so the
/// alternating hump at large x cannot eat the answer.
pub fn e1_series(x: &BigReal, prec_bits: usize) -> Result<EvalReport, NumError> {
    require_positive(x)?;
    let xf = x.to_f64_lossy();
    let boost = (xf.max(0.0) / std::f64::consts::LN_2).ceil() as usize;
    let wp = prec_bits + boost + 32;
    let xw = x.with_prec(wp);

    let mut sum = xw.ln().neg().sub(&euler_gamma(wp));
    let mut power = BigReal::from_u64(1, wp); // x^n / n!
    let mut n: u64 = 0;
    let mut last_term;
    loop {
        n += 1;
        power = power.mul(&xw).div_u64(n);
        let term = power.div_u64(n);
        sum = if n % 2 == 1 {
            sum.add(&term)
        } else {
            sum.sub(&term)
        };
        last_term = term;
        let small = match (last_term.exponent(), sum.exponent()) {
            (Some(te), Some(se)) => (se as i64) - (te as i64) > prec_bits as i64 + 8,
            (None, _) => true,
            _ => false,
        };
        if small && (n as f64) > xf {
            break;
        }
        assert!(
            (n as f64) < 16.0 * (xf + 1.0) + 4.0 * wp as f64,
            "series failed to converge"
        );
    }
    let value = sum.with_prec(prec_bits);
    let est_error = last_term.abs().add(&value.abs().mul_pow2(-(prec_bits as i32)));
    Ok(EvalReport {
        x: x.clone(),
        value,
        method: Method::Series,
        terms_or_depth: n as usize,
        est_error: est_error.with_prec(64),
    })
}

/// Value of the depth-d truncation of the continued fraction for F(x),
/// i.e. P_d(x)/Q_d(x), by backward recurrence with tail 0.
fn cf_truncation(x: &BigReal, depth: usize, wp: usize) -> BigReal {
    let mut tail = BigReal::zero(wp);
    for j in (1..=depth).rev() {
        let m = match partial_denominator(j) {
            PartialDenominator::X => x.clone(),
            PartialDenominator::Const(c) => BigReal::from_rational(&c, wp),
        };
        tail = m.add(&tail).recip();
    }
    tail
}

/// E1 at one fixed continued-fraction depth: e^{-x} P_depth(x)/Q_depth(x).
pub fn e1_cf_fixed_depth(
    x: &BigReal,
    depth: usize,
    prec_bits: usize,
) -> Result<EvalReport, NumError> {
    require_positive(x)?;
    assert!(depth >= 1);
    let wp = prec_bits + 32;
    let xw = x.with_prec(wp);
    let trunc = cf_truncation(&xw, depth, wp);
    let value = xw.neg().exp().mul(&trunc).with_prec(prec_bits);
    let prev = if depth > 1 {
        xw.neg().exp().mul(&cf_truncation(&xw, depth - 1, wp))
    } else {
        BigReal::zero(wp)
    };
    Ok(EvalReport {
        x: x.clone(),
        value: value.clone(),
        method: Method::ContinuedFraction,
        terms_or_depth: depth,
        est_error: value.sub(&prev).abs().with_prec(64),
    })
}

/// Depth cap for the automatic refinement.
pub const CF_DEPTH_CAP: usize = 1 << 16;

/// E1 by the continued fraction, doubling the depth from `start_depth`
/// until two successive truncations agree to 2^{-prec_bits+8} relative.
pub fn e1_cf(x: &BigReal, start_depth: usize, prec_bits: usize) -> Result<EvalReport, NumError> {
    require_positive(x)?;
    let wp = prec_bits + 32;
    let xw = x.with_prec(wp);
    let scale = xw.neg().exp();
    let mut depth = start_depth.max(1);
    let mut current = scale.mul(&cf_truncation(&xw, depth, wp));
    loop {
        let next_depth = depth * 2;
        if next_depth > CF_DEPTH_CAP {
            return Err(NumError::NoConvergence { depth });
        }
        let next = scale.mul(&cf_truncation(&xw, next_depth, wp));
        if next.agrees_rel(&current, -(prec_bits as i64) + 8) {
            let est = next
                .sub(&current)
                .abs()
                .add(&next.abs().mul_pow2(-(prec_bits as i32)));
            return Ok(EvalReport {
                x: x.clone(),
                value: next.with_prec(prec_bits),
                method: Method::ContinuedFraction,
                terms_or_depth: next_depth,
                est_error: est.with_prec(64),
            });
        }
        depth = next_depth;
        current = next;
    }
}

/// F(x) = ∫_0^∞ e^{-t}/(t+x) dt by tanh-sinh quadrature on [0, S] plus a
/// rigorous tail bound e^{-S}/(x+S). Returns (value, tail bound, nodes).
pub fn f_quadrature(x: &BigReal, prec_bits: usize) -> Result<(BigReal, BigReal, usize), NumError> {
    require_positive(x)?;
    let wp = prec_bits + 32;
    let xw = x.with_prec(wp);
    // e^{-S} < 2^{-(prec+24)} keeps the dropped tail below the target
    // precision relative to F ~ 1/x for every positive x.
    let s = ((prec_bits + 24) as f64 * std::f64::consts::LN_2).ceil() as u64 + 4;
    let sb = BigReal::from_u64(s, wp);
    let out = quadrature::integrate_zero_to(
        |t| t.neg().exp().div(&t.add(&xw)),
        &sb,
        wp,
        -(prec_bits as i64 + 8),
    );
    let tail = sb.neg().exp().div(&sb.add(&xw));
    Ok((out.value, tail, out.nodes))
}

/// E1 by quadrature: e^{-x} F(x) with F integrated on a truncated domain.
pub fn e1_quadrature(x: &BigReal, prec_bits: usize) -> Result<EvalReport, NumError> {
    let (f, tail, nodes) = f_quadrature(x, prec_bits)?;
    let wp = prec_bits + 32;
    let scale = x.with_prec(wp).neg().exp();
    let value = scale.mul(&f).with_prec(prec_bits);
    let est = scale
        .mul(&tail)
        .add(&value.abs().mul_pow2(-(prec_bits as i32)));
    Ok(EvalReport {
        x: x.clone(),
        value,
        method: Method::Quadrature,
        terms_or_depth: nodes,
        est_error: est.with_prec(64),
    })
}

/// The asymptotic partial sum Σ_{k=1}^{n} (-1)^{k-1} (k-1)! x^{-k} and the
/// remainder envelope n! x^{-(n+1)} that bounds |F(x) - Σ|.
pub fn asymptotic_partial(
    x: &BigReal,
    n: usize,
    prec_bits: usize,
) -> Result<(BigReal, BigReal), NumError> {
    require_positive(x)?;
    assert!(n >= 1);
    let wp = prec_bits + 32;
    let xw = x.with_prec(wp);
    let inv = xw.recip();
    let mut term = inv.clone(); // (k-1)! x^{-k} at k = 1
    let mut sum = term.clone();
    for k in 2..=n {
        term = term.mul_u64(k as u64 - 1).mul(&inv);
        sum = if k % 2 == 1 {
            sum.add(&term)
        } else {
            sum.sub(&term)
        };
    }
    let bound = term.abs().mul_u64(n as u64).mul(&inv);
    Ok((sum.with_prec(prec_bits), bound.with_prec(prec_bits)))
}

/// Normalized ratios of one odd/even pair of the main-term iteration.
#[derive(Debug, Clone)]
pub struct FmRatios {
    pub m: usize,
    /// F_{2m-1}(x) / x
    pub rho_odd: BigReal,
    /// m * F_{2m}(x)
    pub rho_even: BigReal,
}

/// Runs the main-term iteration F_1 = 1/F, F_{2m} = 1/(F_{2m-1} - x),
/// F_{2m+1} = 1/(F_{2m} - 1/m) with F obtained from quadrature, and
/// returns the ratios that tend to 1 for m = 1..m_max.
pub fn f_iteration(
    x: &BigReal,
    m_max: usize,
    prec_bits: usize,
) -> Result<Vec<FmRatios>, NumError> {
    require_positive(x)?;
    assert!(m_max >= 1);
    let wp = prec_bits + 32;
    let xw = x.with_prec(wp);
    let (f, _, _) = f_quadrature(x, wp)?;

    // Subtracting the main term cancels leading bits; give up once fewer
    // than 16 significant bits survive.
    let guarded_sub = |a: &BigReal, b: &BigReal, index: usize| -> Result<BigReal, NumError> {
        let d = a.sub(b);
        let lost_all = match (d.exponent(), a.exponent()) {
            (None, _) => true,
            (Some(de), Some(ae)) => (ae as i64) - (de as i64) > wp as i64 - 16,
            _ => false,
        };
        if lost_all {
            Err(NumError::PrecisionExhausted { index })
        } else {
            Ok(d)
        }
    };

    let mut out = Vec::with_capacity(m_max);
    let mut odd = f.recip(); // F_1
    for m in 1..=m_max {
        let rho_odd = odd.div(&xw).with_prec(prec_bits);
        let even = guarded_sub(&odd, &xw, 2 * m)?.recip(); // F_{2m}
        let rho_even = even.mul_u64(m as u64).with_prec(prec_bits);
        out.push(FmRatios {
            m,
            rho_odd,
            rho_even,
        });
        if m < m_max {
            let main = BigReal::from_u64(m as u64, wp).recip();
            odd = guarded_sub(&even, &main, 2 * m + 1)?.recip(); // F_{2m+1}
        }
    }
    Ok(out)
}

/// Default series/continued-fraction switchover point for `e1_auto`.
pub const DEFAULT_SWITCHOVER: f64 = 4.0;

/// E1 with the method chosen by the magnitude of x: series below the
/// switchover, continued fraction above.
pub fn e1_auto(x: &BigReal, prec_bits: usize) -> Result<EvalReport, NumError> {
    e1_with_switchover(x, prec_bits, DEFAULT_SWITCHOVER)
}

pub fn e1_with_switchover(
    x: &BigReal,
    prec_bits: usize,
    switchover: f64,
) -> Result<EvalReport, NumError> {
    require_positive(x)?;
    if x.to_f64_lossy() < switchover {
        e1_series(x, prec_bits)
    } else {
        e1_cf(x, 1, prec_bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convergents::{cf_value_at, convergent_pair};
    use crate::rational::rat;

    // Reference digits computed independently with a well-established
    // multiprecision library.
    const E1_1: &str = "0.21938393439552027367716377546012164903104729340691";
    const E1_5: &str = "0.0011482955912753257973305619698197220762660954706979";
    const E1_10: &str = "0.0000041569689296853242774028598102781803843462900824195";
    const F_10: &str = "0.091563333939788081876069815766438449226677369109132";

    #[test]
    fn series_at_one() {
        let x = BigReal::from_u64(1, 128);
        let r = e1_series(&x, 128).unwrap();
        assert!(r.value.agrees_with_literal(E1_1, -120), "{}", r.value);
        assert!(r.terms_or_depth > 5);
        assert!(r.est_error.abs_below_pow2(-110));
    }

    #[test]
    fn series_small_x_behavior() {
        // e1_series(x) + log(x) + γ -> 0 as x -> 0+
        let x = BigReal::from_rational(&rat(1, 1 << 20), 128);
        let r = e1_series(&x, 128).unwrap();
        let resid = r.value.add(&x.with_prec(160).ln()).add(&euler_gamma(160));
        // what remains is the power series, of size ~x
        assert!(resid.abs_below_pow2(-19), "residual {}", resid);
    }

    #[test]
    fn series_rejects_nonpositive() {
        let zero = BigReal::zero(64);
        assert!(matches!(e1_series(&zero, 64), Err(NumError::Domain(_))));
        let neg = BigReal::from_i64(-2, 64);
        assert!(matches!(e1_series(&neg, 64), Err(NumError::Domain(_))));
        assert!(matches!(e1_cf(&neg, 1, 64), Err(NumError::Domain(_))));
        assert!(matches!(e1_quadrature(&neg, 64), Err(NumError::Domain(_))));
    }

    #[test]
    fn cf_depth_one_is_exp_over_x() {
        let x = BigReal::from_u64(1, 128);
        let r = e1_cf_fixed_depth(&x, 1, 128).unwrap();
        let want = x.with_prec(160).neg().exp(); // e^{-1}/1
        assert!(r.value.agrees_rel(&want, -120));
    }

    #[test]
    fn cf_converges_at_one() {
        let x = BigReal::from_u64(1, 128);
        let r = e1_cf(&x, 1, 128).unwrap();
        assert!(r.value.agrees_with_literal(E1_1, -118), "{}", r.value);
        assert!(r.terms_or_depth >= 64, "depth {}", r.terms_or_depth);
    }

    #[test]
    fn cf_matches_exact_convergent_value() {
        // The numeric truncation and the exact rational P_n/Q_n agree to
        // working precision for rational x; the rational parts coincide by
        // construction, so only rounding separates them.
        let xr = rat(7, 2);
        let x = BigReal::from_rational(&xr, 192);
        for depth in [1usize, 2, 3, 5, 17, 40] {
            let exact = cf_value_at(&xr, depth);
            let (p, q) = convergent_pair(depth);
            assert_eq!(&exact * q.eval(&xr), p.eval(&xr), "depth {depth}");
            let numeric = e1_cf_fixed_depth(&x, depth, 192).unwrap();
            let want = BigReal::from_rational(&exact, 224).mul(&x.with_prec(224).neg().exp());
            assert!(numeric.value.agrees_rel(&want, -180), "depth {depth}");
        }
    }

    #[test]
    fn quadrature_at_one_and_ten() {
        let x1 = BigReal::from_u64(1, 128);
        let r1 = e1_quadrature(&x1, 128).unwrap();
        assert!(r1.value.agrees_with_literal(E1_1, -118), "{}", r1.value);
        let x10 = BigReal::from_u64(10, 128);
        let r10 = e1_quadrature(&x10, 128).unwrap();
        assert!(r10.value.agrees_with_literal(E1_10, -130), "{}", r10.value);
        let (f10, tail, _) = f_quadrature(&x10, 128).unwrap();
        assert!(f10.agrees_with_literal(F_10, -120));
        assert!(tail.abs_below_pow2(-(128 + 20)));
    }

    #[test]
    fn tri_method_consensus_spot() {
        for (xs, prec) in [("1", 128usize), ("5", 128), ("1/2", 96)] {
            let x = BigReal::parse(xs, prec).unwrap();
            let a = e1_series(&x, prec).unwrap().value;
            let b = e1_cf(&x, 1, prec).unwrap().value;
            let c = e1_quadrature(&x, prec).unwrap().value;
            let tol = -(prec as i64) + 16;
            let scale = a.exponent().unwrap() as i64;
            assert!(a.agrees_abs(&b, tol + scale), "series vs cf at {xs}");
            assert!(a.agrees_abs(&c, tol + scale), "series vs quad at {xs}");
            assert!(b.agrees_abs(&c, tol + scale), "cf vs quad at {xs}");
        }
        let x5 = BigReal::from_u64(5, 128);
        assert!(e1_series(&x5, 128)
            .unwrap()
            .value
            .agrees_with_literal(E1_5, -128));
    }

    #[test]
    fn asymptotic_partial_envelope() {
        let x = BigReal::from_u64(10, 192);
        let (f, _, _) = f_quadrature(&x, 192).unwrap();
        // n = 5: bound = 120/10^6
        let (sum5, bound5) = asymptotic_partial(&x, 5, 192).unwrap();
        assert!(bound5.agrees_rel(&BigReal::from_rational(&rat(120, 1_000_000), 192), -60));
        let resid5 = f.sub(&sum5);
        assert!(resid5.abs() <= bound5);
        // n = 1: sum = 0.1 and |F - 0.1| <= 1/100
        let (sum1, bound1) = asymptotic_partial(&x, 1, 192).unwrap();
        assert!(sum1.agrees_rel(&BigReal::from_rational(&rat(1, 10), 192), -60));
        assert!(f.sub(&sum1).abs() <= bound1);
        assert!(bound1.agrees_rel(&BigReal::from_rational(&rat(1, 100), 192), -60));
        // residual sign alternates: F - Σ_n has sign (-1)^n
        for n in 1..=8usize {
            let (sum, _) = asymptotic_partial(&x, n, 192).unwrap();
            let resid = f.sub(&sum);
            if n % 2 == 0 {
                assert!(resid.is_positive(), "n={n}");
            } else {
                assert!(resid.is_negative(), "n={n}");
            }
        }
    }

    #[test]
    fn cf_against_asymptotic_bound_at_fifty() {
        // At x = 50 the depth-converged continued fraction must sit inside
        // the n = 10 asymptotic envelope 10!/50^11.
        let x = BigReal::from_u64(50, 160);
        let e1 = e1_cf(&x, 1, 160).unwrap().value;
        let f = e1.mul(&x.with_prec(192).exp());
        let (sum, bound) = asymptotic_partial(&x, 10, 192).unwrap();
        assert!(f.sub(&sum).abs() <= bound);
    }

    #[test]
    fn f_iteration_ratios_near_one() {
        let x = BigReal::from_u64(1000, 512);
        let rows = f_iteration(&x, 4, 512).unwrap();
        let one = BigReal::from_u64(1, 64);
        for row in &rows {
            // |rho - 1| ~ 2m/x at x = 1000
            assert!(
                row.rho_odd.sub(&one).abs_below_pow2(-6),
                "m={} rho_odd={}",
                row.m,
                row.rho_odd
            );
            assert!(
                row.rho_even.sub(&one).abs_below_pow2(-6),
                "m={} rho_even={}",
                row.m,
                row.rho_even
            );
        }
        // m = 1: rho_1 = 1/(x F) is within 2e-3 of 1
        let dev = rows[0].rho_odd.sub(&one).abs();
        assert!(dev <= BigReal::from_rational(&rat(2, 1000), 64));
    }

    #[test]
    fn f_iteration_exhausts_at_low_precision() {
        // With barely any working precision the odd-step subtraction runs
        // out of bits quickly at large x.
        let x = BigReal::from_u64(100_000, 64);
        match f_iteration(&x, 8, 64) {
            Err(NumError::PrecisionExhausted { .. }) => {}
            Ok(rows) => {
                // if it survived, the ratios must still be sane
                assert!(rows.len() == 8);
            }
            Err(e) => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn auto_switchover_picks_methods() {
        let small = BigReal::from_u64(1, 96);
        assert_eq!(e1_auto(&small, 96).unwrap().method, Method::Series);
        let large = BigReal::from_u64(10, 96);
        assert_eq!(
            e1_auto(&large, 96).unwrap().method,
            Method::ContinuedFraction
        );
        let series_only = e1_with_switchover(&large, 96, 1e9).unwrap();
        assert_eq!(series_only.method, Method::Series);
        assert!(series_only.value.agrees_with_literal(E1_10, -100));
    }
}
