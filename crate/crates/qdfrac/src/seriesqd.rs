//! Formal coefficient sequences, Hankel determinants, and the
//! quotient-difference algorithm.
//!
//! A sequence c_0, c_1, c_2, … (extended by c_n = 0 for n < 0) determines
//! the two triangular arrays e_k^(n), q_k^(n) through
//!
//!   e_0^(n) = 0,   q_0^(n) = c_{n+1}/c_n,
//!   e_{k+1}^(n) = q_k^(n+1) - q_k^(n) + e_k^(n+1),
//!   q_{k+1}^(n) = (e_{k+1}^(n+1) / e_{k+1}^(n)) * q_k^(n+1),
//!
//! and from the n = 0 edge of the tableau one reads off the coefficients
//! d_0, d_1, …, d_2K of the continued fraction
//!
//!   d_0/(1 + d_1/(x + d_2/(1 + d_3/(x + …))))
//!
//! whose truncations are Padé approximants of Σ c_n x^{-n}. Every entry is
//! an exact rational; a division by a vanishing entry (equivalently, a
//! vanishing Hankel determinant) surfaces as `QdError::Breakdown`.

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use num_traits::Zero;

use crate::linalg::det_exact;
use crate::poly::RatPoly;
use crate::rational::{factorial_rat, int, Rational};

/// A deterministic coefficient sequence with memoized values.
pub struct CoeffSeq {
    gen: Box<dyn Fn(usize) -> Rational + Send + Sync>,
    memo: RwLock<HashMap<usize, Rational>>,
}

impl CoeffSeq {
    pub fn new(gen: impl Fn(usize) -> Rational + Send + Sync + 'static) -> Self {
        CoeffSeq {
            gen: Box::new(gen),
            memo: RwLock::new(HashMap::new()),
        }
    }

    /// c_n = (-1)^n n!, the coefficient sequence behind the expansion of
    /// e^x E1(x) after the leading 1/x is factored out.
    pub fn factorial() -> Self {
        CoeffSeq::new(|n| {
            let f = factorial_rat(n);
            if n % 2 == 0 {
                f
            } else {
                -f
            }
        })
    }

    /// c_n = (n+1)!.
    pub fn shifted_factorial() -> Self {
        CoeffSeq::new(|n| factorial_rat(n + 1))
    }

    /// c_n = 1 (geometric series; its tableau terminates).
    pub fn ones() -> Self {
        CoeffSeq::new(|_| int(1))
    }

    /// c_n for any integer n; zero when n < 0.
    pub fn coeff(&self, n: i64) -> Rational {
        if n < 0 {
            return Rational::zero();
        }
        let n = n as usize;
        {
            let memo = self.memo.read().expect("memo poisoned");
            if let Some(v) = memo.get(&n) {
                return v.clone();
            }
        }
        let v = (self.gen)(n);
        self.memo
            .write()
            .expect("memo poisoned")
            .entry(n)
            .or_insert_with(|| v.clone());
        v
    }
}

/// Errors from the quotient-difference recurrences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QdError {
    /// Division by a vanishing entry while forming q_k^(n); signals a
    /// vanishing Hankel determinant of the input sequence.
    Breakdown { k: usize, n: usize },
}

impl fmt::Display for QdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QdError::Breakdown { k, n } => write!(
                f,
                "quotient-difference breakdown at (k={k}, n={n}): division by a vanishing entry"
            ),
        }
    }
}

impl std::error::Error for QdError {}

/// Hankel determinant H_k^(n): determinant of the k x k matrix with
/// (i, j) entry c_{n+i+j-2}. H_0^(n) = 1 and H_1^(n) = c_n.
///
/// Negative n is allowed; entries with negative index are zero.
pub fn hankel_det(c: &CoeffSeq, n: i64, k: usize) -> Rational {
    let m: Vec<Vec<Rational>> = (0..k)
        .map(|i| (0..k).map(|j| c.coeff(n + i as i64 + j as i64)).collect())
        .collect();
    det_exact(m)
}

/// The rectangular window of the two quotient-difference arrays.
///
/// Stores q_k^(n) for 0 <= k <= depth-1 and e_k^(n) for 0 <= k <= depth,
/// each over 0 <= n <= width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QdTableau {
    depth: usize,
    width: usize,
    q: Vec<Vec<Rational>>,
    e: Vec<Vec<Rational>>,
}

impl QdTableau {
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// q_k^(n); requires k <= depth-1, n <= width.
    pub fn q(&self, k: usize, n: usize) -> &Rational {
        &self.q[k][n]
    }

    /// e_k^(n); requires k <= depth, n <= width.
    pub fn e(&self, k: usize, n: usize) -> &Rational {
        &self.e[k][n]
    }
}

/// Runs the quotient-difference recurrences on c_0 … c_{2K+N} and returns
/// the (K, N) window. K >= 1.
pub fn qd_table(c: &CoeffSeq, depth: usize, width: usize) -> Result<QdTableau, QdError> {
    assert!(depth >= 1, "tableau depth must be >= 1");
    let (k_max, n_max) = (depth, width);
    // Scratch rows shrink by one in n per recurrence application:
    // e_k is needed out to 2(K-k)+N, q_k out to 2(K-k)+N-1.
    let we = |k: usize| 2 * (k_max - k) + n_max;
    let wq = |k: usize| 2 * (k_max - k) + n_max - 1;

    let mut q: Vec<Vec<Rational>> = Vec::with_capacity(k_max);
    let mut e: Vec<Vec<Rational>> = Vec::with_capacity(k_max + 1);

    e.push(vec![Rational::zero(); we(0) + 1]);
    let mut q0 = Vec::with_capacity(wq(0) + 1);
    for n in 0..=wq(0) {
        let cn = c.coeff(n as i64);
        if cn.is_zero() {
            return Err(QdError::Breakdown { k: 0, n });
        }
        q0.push(c.coeff(n as i64 + 1) / cn);
    }
    q.push(q0);

    for k in 0..k_max {
        let mut ek1 = Vec::with_capacity(we(k + 1) + 1);
        for n in 0..=we(k + 1) {
            let v = &q[k][n + 1] - &q[k][n] + &e[k][n + 1];
            ek1.push(v);
        }
        e.push(ek1);
        if k + 1 < k_max {
            let mut qk1 = Vec::with_capacity(wq(k + 1) + 1);
            for n in 0..=wq(k + 1) {
                if e[k + 1][n].is_zero() {
                    return Err(QdError::Breakdown { k: k + 1, n });
                }
                let v = &e[k + 1][n + 1] / &e[k + 1][n] * &q[k][n + 1];
                qk1.push(v);
            }
            q.push(qk1);
        }
    }

    // Trim scratch down to the requested rectangle.
    let q = q
        .into_iter()
        .map(|row| row.into_iter().take(n_max + 1).collect())
        .collect();
    let e = e
        .into_iter()
        .map(|row| row.into_iter().take(n_max + 1).collect())
        .collect();
    Ok(QdTableau {
        depth: k_max,
        width: n_max,
        q,
        e,
    })
}

/// Which of the two tableau/Hankel identities failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatioKind {
    /// e_k^(n) = H_{k+1}^(n) H_{k-1}^(n+1) / (H_k^(n+1) H_k^(n))
    E,
    /// q_{k-1}^(n) = H_k^(n+1) H_{k-1}^(n) / (H_k^(n) H_{k-1}^(n+1))
    Q,
}

/// A failed identity instance with both sides in cross-multiplied form:
/// `tableau * hankel_den` should equal `hankel_num`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioFailure {
    pub kind: RatioKind,
    pub k: usize,
    pub n: usize,
    pub tableau: Rational,
    pub hankel_num: Rational,
    pub hankel_den: Rational,
}

impl fmt::Display for RatioFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            RatioKind::E => "e",
            RatioKind::Q => "q",
        };
        write!(
            f,
            "{}-identity failed at (k={}, n={}): tableau {} vs Hankel ratio {}/{}",
            name, self.k, self.n, self.tableau, self.hankel_num, self.hankel_den
        )
    }
}

/// Checks every tableau entry in the (K, N) window against the Hankel
/// determinant ratios, with the determinants computed independently by
/// exact elimination. Returns the list of failures (empty = all hold).
pub fn verify_hankel_ratios(
    c: &CoeffSeq,
    depth: usize,
    width: usize,
) -> Result<Vec<RatioFailure>, QdError> {
    let t = qd_table(c, depth, width)?;
    let h = |n: i64, k: usize| hankel_det(c, n, k);
    let mut failures = Vec::new();
    for k in 1..=depth {
        for n in 0..=width {
            let ni = n as i64;
            let e_num = h(ni, k + 1) * h(ni + 1, k - 1);
            let e_den = h(ni + 1, k) * h(ni, k);
            if t.e(k, n) * &e_den != e_num {
                failures.push(RatioFailure {
                    kind: RatioKind::E,
                    k,
                    n,
                    tableau: t.e(k, n).clone(),
                    hankel_num: e_num,
                    hankel_den: e_den,
                });
            }
            let q_num = h(ni + 1, k) * h(ni, k - 1);
            let q_den = h(ni, k) * h(ni + 1, k - 1);
            if t.q(k - 1, n) * &q_den != q_num {
                failures.push(RatioFailure {
                    kind: RatioKind::Q,
                    k,
                    n,
                    tableau: t.q(k - 1, n).clone(),
                    hankel_num: q_num,
                    hankel_den: q_den,
                });
            }
        }
    }
    Ok(failures)
}

/// Continued-fraction coefficients d_0 … d_2K extracted from a tableau,
/// plus a flag recording whether the represented function carries a leading
/// 1/x factor in front of the series Σ c_n x^{-n}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfCoeffs {
    d: Vec<Rational>,
    leading_inv_x: bool,
}

impl CfCoeffs {
    pub fn d(&self) -> &[Rational] {
        &self.d
    }

    /// Number of (q, e) column pairs folded in; `d` has length 2K+1.
    pub fn order(&self) -> usize {
        (self.d.len() - 1) / 2
    }

    pub fn leading_inv_x(&self) -> bool {
        self.leading_inv_x
    }

    /// Marks the coefficients as belonging to (1/x) Σ c_n x^{-n}.
    pub fn with_leading_inv_x(mut self) -> Self {
        self.leading_inv_x = true;
        self
    }

    /// Collapses the truncated continued fraction into a rational function
    /// (numerator, denominator). The innermost level is d_2K over a bare 1.
    pub fn to_rational_function(&self) -> (RatPoly, RatPoly) {
        let x = RatPoly::x();
        let one = RatPoly::one();
        // T_j = d_j / (b_j + T_{j+1}), b_j = x for odd j, 1 for even j.
        let mut tn = RatPoly::zero();
        let mut td = RatPoly::one();
        for j in (1..self.d.len()).rev() {
            let base = if j % 2 == 1 { &x } else { &one };
            let new_tn = td.scale(&self.d[j]);
            let new_td = &(base * &td) + &tn;
            tn = new_tn;
            td = new_td;
        }
        // value = d_0 / (1 + T_1)
        let num = td.scale(&self.d[0]);
        let mut den = &td + &tn;
        if self.leading_inv_x {
            den = &den * &x;
        }
        (num, den)
    }
}

/// Reads d_0 = c_0, d_{2k-1} = -q_{k-1}^(0), d_{2k} = -e_k^(0) for
/// k = 1..K off the left edge of the tableau.
pub fn cf_coeffs(c: &CoeffSeq, depth: usize) -> Result<CfCoeffs, QdError> {
    let t = qd_table(c, depth, 0)?;
    let mut d = Vec::with_capacity(2 * depth + 1);
    d.push(c.coeff(0));
    for k in 1..=depth {
        d.push(-t.q(k - 1, 0));
        d.push(-t.e(k, 0));
    }
    Ok(CfCoeffs {
        d,
        leading_inv_x: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::inv_x_expansion;
    use crate::rational::rat;
    use proptest::prelude::*;

    /// Independent oracle: determinant by cofactor expansion along the
    /// first row. Exponential, but only used for tiny matrices.
    fn det_cofactor(m: &[Vec<Rational>]) -> Rational {
        let n = m.len();
        if n == 0 {
            return int(1);
        }
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = Rational::zero();
        for j in 0..n {
            if m[0][j].is_zero() {
                continue;
            }
            let sub: Vec<Vec<Rational>> = (1..n)
                .map(|i| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| m[i][c].clone())
                        .collect()
                })
                .collect();
            let term = &m[0][j] * det_cofactor(&sub);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    fn hankel_matrix(c: &CoeffSeq, n: i64, k: usize) -> Vec<Vec<Rational>> {
        (0..k)
            .map(|i| (0..k).map(|j| c.coeff(n + i as i64 + j as i64)).collect())
            .collect()
    }

    #[test]
    fn factorial_seq_values() {
        let c = CoeffSeq::factorial();
        assert_eq!(c.coeff(0), int(1));
        assert_eq!(c.coeff(1), int(-1));
        assert_eq!(c.coeff(4), int(24));
        assert_eq!(c.coeff(-3), int(0));
        // determinism across repeated queries
        assert_eq!(c.coeff(4), int(24));
    }

    #[test]
    fn hankel_det_base_cases() {
        let c = CoeffSeq::factorial();
        assert_eq!(hankel_det(&c, 0, 0), int(1));
        assert_eq!(hankel_det(&c, 0, 1), int(1)); // H_1^(0) = c_0
        assert_eq!(hankel_det(&c, 3, 1), int(-6)); // H_1^(3) = c_3
        assert_eq!(hankel_det(&c, 0, 2), int(1));
        for n in -3..5i64 {
            assert_eq!(hankel_det(&c, n, 0), int(1));
            assert_eq!(hankel_det(&c, n, 1), c.coeff(n));
        }
    }

    #[test]
    fn hankel_det_matches_cofactor_oracle() {
        let c = CoeffSeq::factorial();
        for n in -2..3i64 {
            for k in 0..=5usize {
                let m = hankel_matrix(&c, n, k);
                assert_eq!(hankel_det(&c, n, k), det_cofactor(&m), "n={n} k={k}");
            }
        }
        // H_4^(0) for the factorial sequence: brute force gives 144, which
        // is also (3! 2! 1!)^2.
        let m = hankel_matrix(&c, 0, 4);
        assert_eq!(det_cofactor(&m), int(144));
        assert_eq!(hankel_det(&c, 0, 4), int(144));
    }

    #[test]
    fn qd_table_factorial_closed_form() {
        let c = CoeffSeq::factorial();
        let t = qd_table(&c, 3, 3).unwrap();
        for n in 0..=3usize {
            // q_0^(n) = -(n+1)
            assert_eq!(t.q(0, n), &int(-(n as i64 + 1)));
            assert_eq!(t.e(0, n), &int(0));
        }
        for k in 1..=3usize {
            for n in 0..=3usize {
                assert_eq!(t.e(k, n), &int(-(k as i64)), "e k={k} n={n}");
                if k <= 2 {
                    // q_k^(n) = -(n+k+1)
                    assert_eq!(t.q(k, n), &int(-(n as i64 + k as i64 + 1)), "q k={k} n={n}");
                }
            }
        }
    }

    #[test]
    fn qd_entries_satisfy_recurrences() {
        let c = CoeffSeq::shifted_factorial();
        let t = qd_table(&c, 4, 3).unwrap();
        // e_{k+1}^(n) = q_k^(n+1) - q_k^(n) + e_k^(n+1) inside the window
        for k in 0..3usize {
            for n in 0..3usize {
                let lhs = t.e(k + 1, n).clone();
                let rhs = t.q(k, n + 1) - t.q(k, n) + t.e(k, n + 1);
                assert_eq!(lhs, rhs);
            }
        }
        for k in 0..3usize {
            for n in 0..3usize {
                let lhs = t.q(k + 1, n).clone();
                let rhs = t.e(k + 1, n + 1) / t.e(k + 1, n) * t.q(k, n + 1);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn ones_sequence_terminates() {
        let c = CoeffSeq::ones();
        let t = qd_table(&c, 1, 2).unwrap();
        for n in 0..=2usize {
            assert_eq!(t.q(0, n), &int(1));
            assert_eq!(t.e(1, n), &int(0));
        }
        // Asking for the next q column divides by e_1 = 0.
        match qd_table(&c, 2, 0) {
            Err(QdError::Breakdown { k: 1, .. }) => {}
            other => panic!("expected breakdown at k=1, got {other:?}"),
        }
    }

    #[test]
    fn breakdown_on_zero_coefficient() {
        let c = CoeffSeq::new(|n| if n == 2 { int(0) } else { int(1) });
        match qd_table(&c, 1, 1) {
            Err(QdError::Breakdown { k: 0, n: 2 }) => {}
            other => panic!("expected breakdown at c_2, got {other:?}"),
        }
    }

    #[test]
    fn hankel_ratios_hold_exactly() {
        let c = CoeffSeq::factorial();
        assert!(verify_hankel_ratios(&c, 6, 4).unwrap().is_empty());
        assert!(verify_hankel_ratios(&c, 1, 0).unwrap().is_empty());
        let s = CoeffSeq::shifted_factorial();
        assert!(verify_hankel_ratios(&s, 4, 2).unwrap().is_empty());
    }

    #[test]
    fn q0_is_coefficient_ratio() {
        // q_0^(0) = c_1/c_0 = -1 for the factorial sequence, which is the
        // k = 1, n = 0 instance of the q-identity.
        let c = CoeffSeq::factorial();
        let t = qd_table(&c, 1, 0).unwrap();
        assert_eq!(t.q(0, 0), &int(-1));
        let ratio = hankel_det(&c, 1, 1) * hankel_det(&c, 0, 0)
            / (hankel_det(&c, 0, 1) * hankel_det(&c, 1, 0));
        assert_eq!(&ratio, t.q(0, 0));
    }

    #[test]
    fn cf_coeffs_factorial() {
        let c = CoeffSeq::factorial();
        let d3 = cf_coeffs(&c, 3).unwrap();
        let want: Vec<Rational> = [1, 1, 1, 2, 2, 3, 3].iter().map(|&v| int(v)).collect();
        assert_eq!(d3.d(), &want[..]);
        assert_eq!(d3.order(), 3);
        let d1 = cf_coeffs(&c, 1).unwrap();
        assert_eq!(d1.d(), &[int(1), int(1), int(1)]);
        assert!(!d1.leading_inv_x());
        assert!(d1.clone().with_leading_inv_x().leading_inv_x());
    }

    #[test]
    fn truncated_cf_rational_function() {
        // K = 1 factorial coefficients: 1/(1 + 1/(x + 1)) = (x+1)/(x+2).
        let c = CoeffSeq::factorial();
        let cf = cf_coeffs(&c, 1).unwrap();
        let (num, den) = cf.to_rational_function();
        assert_eq!(num, RatPoly::from_coeffs(vec![int(1), int(1)]));
        assert_eq!(den, RatPoly::from_coeffs(vec![int(2), int(1)]));
    }

    #[test]
    fn reexpansion_recovers_series_coefficients() {
        // Padé property of the truncation: the first 2K+1 coefficients of
        // the 1/x-expansion agree with the input sequence.
        for (name, c) in [
            ("factorial", CoeffSeq::factorial()),
            ("shifted", CoeffSeq::shifted_factorial()),
        ] {
            for depth in 1..=6usize {
                let cf = cf_coeffs(&c, depth).unwrap();
                let (num, den) = cf.to_rational_function();
                let got = inv_x_expansion(&num, &den, 2 * depth);
                for (j, g) in got.iter().enumerate() {
                    assert_eq!(g, &c.coeff(j as i64), "{name} depth={depth} j={j}");
                }
            }
        }
    }

    #[test]
    fn leading_inv_x_shifts_expansion() {
        let c = CoeffSeq::factorial();
        let cf = cf_coeffs(&c, 2).unwrap().with_leading_inv_x();
        let (num, den) = cf.to_rational_function();
        let got = inv_x_expansion(&num, &den, 5);
        assert_eq!(got[0], int(0));
        for j in 0..=4usize {
            assert_eq!(got[j + 1], c.coeff(j as i64), "j={j}");
        }
    }

    proptest! {
        /// The tableau/Hankel ratio identities hold for any sequence the
        /// recurrences accept, not just the factorial family.
        #[test]
        fn ratio_identities_hold_generically(vals in proptest::collection::vec(1i64..40, 8)) {
            let c = CoeffSeq::new(move |n| {
                // mildly irregular but nonzero sequence
                int(vals[n % vals.len()] + n as i64)
            });
            if let Ok(failures) = verify_hankel_ratios(&c, 2, 1) {
                prop_assert!(failures.is_empty());
            }
        }

        #[test]
        fn hankel_det_matches_oracle_generically(
            vals in proptest::collection::vec(-6i64..7, 10),
            n in -2i64..3,
            k in 0usize..5,
        ) {
            let seq = vals.clone();
            let c = CoeffSeq::new(move |i| int(seq[i % seq.len()]));
            let m = hankel_matrix(&c, n, k);
            prop_assert_eq!(hankel_det(&c, n, k), det_cofactor(&m));
        }
    }

    #[test]
    fn ratio_check_reports_failures() {
        // A tampered tableau is hard to build through the public API, so
        // instead check the reporting path via a sequence whose window is
        // fine but whose formatted failure output is exercised directly.
        let f = RatioFailure {
            kind: RatioKind::Q,
            k: 2,
            n: 1,
            tableau: rat(1, 2),
            hankel_num: int(3),
            hankel_den: int(4),
        };
        let msg = f.to_string();
        assert!(msg.contains("q-identity"));
        assert!(msg.contains("(k=2, n=1)"));
    }
}
