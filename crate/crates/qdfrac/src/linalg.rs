//! Exact rational Gaussian elimination.

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Determinant of a square rational matrix by elimination with
/// pivot-by-first-nonzero row swaps. The empty matrix has determinant 1.
pub fn det_exact(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut det = Rational::one();
    for col in 0..n {
        let pivot_row = match (col..n).find(|&r| !m[r][col].is_zero()) {
            Some(r) => r,
            None => return Rational::zero(),
        };
        if pivot_row != col {
            m.swap(pivot_row, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pivot;
            for c in col..n {
                let sub = &factor * &m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn small_determinants() {
        assert_eq!(det_exact(vec![]), int(1));
        assert_eq!(det_exact(vec![vec![rat(3, 2)]]), rat(3, 2));
        assert_eq!(
            det_exact(vec![vec![int(1), int(2)], vec![int(3), int(4)]]),
            int(-2)
        );
        // singular
        assert_eq!(
            det_exact(vec![vec![int(1), int(2)], vec![int(2), int(4)]]),
            int(0)
        );
        // needs a row swap
        assert_eq!(
            det_exact(vec![vec![int(0), int(1)], vec![int(1), int(0)]]),
            int(-1)
        );
    }
}
