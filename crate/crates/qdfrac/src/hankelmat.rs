//! The symmetric factorial matrix A^(k-1) with entries
//! a_ij = (-1)^{i+j} (i+j-2)!, its minors, and the closed forms they obey.
//!
//! A^(k-1) is the k x k Hankel matrix of the sequence c_n = (-1)^n n! at
//! offset 0, so everything here doubles as an independent route to the
//! Hankel determinants of that sequence:
//!
//!   det A^(k-1) = ((k-1)! (k-2)! … 1!)^2,
//!   det A^(k-1)_{k,m} = (-1)^{k+m} det A^(k-1) / (((m-1)!)^2 (k-m)!),
//!
//! together with the orthogonality row_m(A^(k-1)) · b_k = δ_{m,k} for the
//! vector b_k with entries 1/((i-1)!)^2 · 1/(k-i)!.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::linalg::det_exact;
use crate::rational::{binomial_rat, factorial, factorial_rat, int, Rational};

/// The k x k matrix with entries (-1)^{i+j} (i+j-2)!, 1 <= i, j <= k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorialMatrix {
    k: usize,
}

/// Errors from minor selection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HankelMatError {
    IndexOutOfRange { k: usize, row: usize, col: usize },
}

impl fmt::Display for HankelMatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HankelMatError::IndexOutOfRange { k, row, col } => write!(
                f,
                "minor index (row={row}, col={col}) out of range for a {k}x{k} matrix"
            ),
        }
    }
}

impl std::error::Error for HankelMatError {}

impl FactorialMatrix {
    pub fn new(k: usize) -> Self {
        assert!(k >= 1, "matrix size must be >= 1");
        FactorialMatrix { k }
    }

    pub fn size(&self) -> usize {
        self.k
    }

    /// Entry a_ij for 1-based indices.
    pub fn entry(&self, i: usize, j: usize) -> Rational {
        debug_assert!((1..=self.k).contains(&i) && (1..=self.k).contains(&j));
        let f = factorial_rat(i + j - 2);
        if (i + j) % 2 == 0 {
            f
        } else {
            -f
        }
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        (1..=self.k)
            .map(|i| (1..=self.k).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    /// Rows with row `row` and column `col` deleted (1-based).
    fn minor_rows(&self, row: usize, col: usize) -> Vec<Vec<Rational>> {
        (1..=self.k)
            .filter(|&i| i != row)
            .map(|i| {
                (1..=self.k)
                    .filter(|&j| j != col)
                    .map(|j| self.entry(i, j))
                    .collect()
            })
            .collect()
    }
}

/// ((k-1)! (k-2)! … 1!)^2; the empty product at k = 1 is 1.
pub fn superfactorial_squared(k: usize) -> Rational {
    let mut acc = BigInt::one();
    for i in 1..k {
        acc *= factorial(i);
    }
    Rational::from_integer(&acc * &acc)
}

/// det A^(k-1) by exact elimination. Panics if the result ever disagrees
/// with the closed form ((k-1)! … 1!)^2, which would indicate a defect in
/// the elimination itself.
pub fn det_a(k: usize) -> Rational {
    let d = det_exact(FactorialMatrix::new(k).rows());
    let closed = superfactorial_squared(k);
    assert_eq!(
        d, closed,
        "det A^({}) disagrees with its closed form",
        k - 1
    );
    d
}

/// det A^(k-1)_{row,col}, the minor with `row` and `col` deleted.
///
/// For row = k the minor is checked against the closed form
/// (-1)^{k+m} det A^(k-1) / (((m-1)!)^2 (k-m)!).
pub fn minor_a(k: usize, row: usize, col: usize) -> Result<Rational, HankelMatError> {
    if !(1..=k).contains(&row) || !(1..=k).contains(&col) {
        return Err(HankelMatError::IndexOutOfRange { k, row, col });
    }
    let m = FactorialMatrix::new(k);
    let d = det_exact(m.minor_rows(row, col));
    if row == k {
        let sign = if (k + col) % 2 == 0 { int(1) } else { int(-1) };
        let denom = factorial_rat(col - 1) * factorial_rat(col - 1) * factorial_rat(k - col);
        let closed = sign * det_a(k) / denom;
        assert_eq!(
            d,
            closed,
            "minor A^({})_{{{},{}}} disagrees with its closed form",
            k - 1,
            row,
            col
        );
    }
    Ok(d)
}

/// H_{k-1}^(1) = det A^(k-1)_{k,1} for k >= 2, checked against the closed
/// form (-1)^{k+1} (k-1)! ((k-2)! … 1!)^2.
pub fn h1_offset_det(k: usize) -> Rational {
    assert!(k >= 2);
    let d = minor_a(k, k, 1).expect("indices in range");
    let sign = if (k + 1) % 2 == 0 { int(1) } else { int(-1) };
    let closed = sign * factorial_rat(k - 1) * superfactorial_squared(k - 1);
    assert_eq!(
        d,
        closed,
        "H_{}^(1) disagrees with its closed form",
        k - 1
    );
    d
}

/// The alternating binomial sum 1 + Σ_{i=1}^{k-1} (-1)^i C(k-1, i) C(m+i-1, i)
/// for k >= 2 and 1 <= m <= k.
///
/// Evaluates to 0 for 1 <= m <= k-1 and to (-1)^{k-1} for m = k; it is the
/// normalized inner product of row m of A^(k-1) with the vector b_k.
pub fn alternating_binomial_sum(k: usize, m: usize) -> Rational {
    assert!(k >= 2 && (1..=k).contains(&m));
    let mut acc = int(1);
    for i in 1..k {
        let term = binomial_rat(k - 1, i) * binomial_rat(m + i - 1, i);
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// The column vector b_k with entries 1/((i-1)!)^2 * 1/(k-i)!, i = 1..k.
pub fn b_vector(k: usize) -> Vec<Rational> {
    (1..=k)
        .map(|i| {
            let f = factorial_rat(i - 1);
            int(1) / (&f * &f * factorial_rat(k - i))
        })
        .collect()
}

/// row_m(A^(k-1)) · b_k; equals the Kronecker delta δ_{m,k}.
pub fn row_dot_b(k: usize, m: usize) -> Rational {
    assert!((1..=k).contains(&m));
    let a = FactorialMatrix::new(k);
    let b = b_vector(k);
    (1..=k).map(|i| a.entry(m, i) * &b[i - 1]).sum()
}
