//! Tanh-sinh quadrature at arbitrary precision.
//!
//! Integrates a smooth integrand over [0, b] through the double-exponential
//! substitution t = (b/2)(1 + tanh((π/2) sinh u)). Nodes cluster
//! exponentially at both endpoints, so integrands with all their mass near
//! t = 0 (like e^{-t}/(t+x) truncated at a large b) are resolved without
//! endpoint trouble. Levels halve the step and reuse all previous nodes;
//! the level-to-level difference serves as the error estimate.

use super::real::BigReal;

pub struct QuadratureOutcome {
    pub value: BigReal,
    /// |T_l - T_{l-1}| at the accepted level.
    pub level_delta: BigReal,
    pub nodes: usize,
}

/// Integrates f over [0, b] aiming for relative agreement 2^rel_exp between
/// the last two levels. `wp` is the working precision of all arithmetic.
pub fn integrate_zero_to<F>(f: F, b: &BigReal, wp: usize, rel_exp: i64) -> QuadratureOutcome
where
    F: Fn(&BigReal) -> BigReal,
{
    let half_pi = BigReal::pi(wp).div_u64(2);
    let one = BigReal::from_u64(1, wp);
    let two = BigReal::from_u64(2, wp);

    // Contribution of the symmetric node pair at |u| > 0 (or the single
    // center node at u = 0): weight w(u) (f(t+) + f(t-)).
    let node_pair = |u: &BigReal| -> BigReal {
        let eu = u.exp();
        let inv_eu = eu.recip();
        let sinh_u = eu.sub(&inv_eu).div(&two);
        let cosh_u = eu.add(&inv_eu).div(&two);
        let v = half_pi.mul(&sinh_u); // >= 0 for u >= 0
        let q = v.mul_u64(2).neg().exp(); // e^{-2v} in (0, 1]
        let qp1 = q.add(&one);
        // sech^2(v) = 4q/(1+q)^2
        let w = half_pi
            .mul(&cosh_u)
            .mul(&q)
            .mul_u64(4)
            .div(&qp1.mul(&qp1))
            .mul(b)
            .div(&two);
        let t_hi = b.div(&qp1); // (b/2)(1 + tanh v)
        let t_lo = b.mul(&q).div(&qp1); // mirror node
        if u.is_zero() {
            // t_hi == t_lo == b/2; count it once
            return w.mul(&f(&t_hi));
        }
        w.mul(&f(&t_hi).add(&f(&t_lo)))
    };

    let max_level = 14usize;
    let break_exp_gap = wp as i64 + 10;
    let mut nodes = 0usize;

    // Level 0: h = 1.
    let mut acc = node_pair(&BigReal::zero(wp));
    nodes += 1;
    let mut j = 1u64;
    let mut quiet = 0;
    while quiet < 2 {
        let c = node_pair(&BigReal::from_u64(j, wp));
        nodes += 2;
        acc = acc.add(&c);
        let negligible = match (c.exponent(), acc.exponent()) {
            (None, _) => true,
            (Some(ce), Some(ae)) => (ae as i64) - (ce as i64) > break_exp_gap,
            (Some(_), None) => false,
        };
        // contributions first grow toward the mass of the integrand, so
        // only allow the break once u is past the double-exponential knee
        if negligible && j >= 5 {
            quiet += 1;
        } else {
            quiet = 0;
        }
        j += 1;
        assert!(j < 64, "tanh-sinh level 0 failed to localize the integrand");
    }
    let mut total = acc; // h = 1, so T_0 = acc
    let mut delta = total.clone();

    for level in 1..=max_level {
        // step h = 2^-level; new nodes at odd multiples of h
        let denom = 1u64 << level;
        let mut acc_new = BigReal::zero(wp);
        let mut jj = 1u64;
        let mut quiet = 0;
        while quiet < 2 {
            let u = BigReal::from_u64(jj, wp).div_u64(denom);
            let c = node_pair(&u);
            nodes += 2;
            acc_new = acc_new.add(&c);
            let scale = acc_new.add(&total);
            let negligible = match (c.exponent(), scale.exponent()) {
                (None, _) => true,
                (Some(ce), Some(ae)) => (ae as i64) - (ce as i64) > break_exp_gap,
                (Some(_), None) => false,
            };
            if negligible && jj >= 5 * denom {
                quiet += 1;
            } else {
                quiet = 0;
            }
            jj += 2;
            assert!(
                jj < 64 * denom,
                "tanh-sinh level {level} failed to localize the integrand"
            );
        }
        let t_new = total.div(&two).add(&acc_new.div_u64(denom));
        delta = t_new.sub(&total).abs();
        total = t_new;
        if !total.is_zero() {
            let scale = total.exponent().expect("nonzero") as i64;
            if delta.abs_below_pow2(rel_exp + scale) && level >= 3 {
                return QuadratureOutcome {
                    value: total,
                    level_delta: delta,
                    nodes,
                };
            }
        }
    }
    QuadratureOutcome {
        value: total,
        level_delta: delta,
        nodes,
    }
}
