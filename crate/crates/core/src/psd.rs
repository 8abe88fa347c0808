//! Exact positive-semidefiniteness certification.

use crate::matrix::SymmetricMatrix;
use crate::rational::Rational;

/// Decides `S ⪰ 0` exactly by symmetric fraction-free elimination with
/// diagonal pivoting. A zero pivot is only admissible when its entire
/// remaining row and column are zero; otherwise the matrix is indefinite.
pub fn psd_check_exact(s: &SymmetricMatrix) -> bool {
    let n = s.dim();
    let mut a = s.to_dense();
    let mut active: Vec<usize> = (0..n).collect();
    loop {
        if active.iter().any(|&i| a[(i, i)].is_negative()) {
            return false;
        }
        let Some(pos) = active.iter().position(|&i| a[(i, i)].is_positive()) else {
            // all remaining diagonal entries are zero
            return active
                .iter()
                .all(|&i| active.iter().all(|&j| a[(i, j)].is_zero()));
        };
        let p = active.remove(pos);
        if active.is_empty() {
            return true;
        }
        let d = a[(p, p)].clone();
        for &i in &active {
            if a[(i, p)].is_zero() {
                continue;
            }
            let f = &a[(i, p)] / &d;
            for &j in &active {
                let v = &a[(i, j)] - &(&f * &a[(p, j)]);
                a[(i, j)] = v;
            }
        }
    }
}

/// `S ⪰ 0` and additionally every pivot positive with no zero row/column:
/// exact positive definiteness.
pub fn pd_check_exact(s: &SymmetricMatrix) -> bool {
    let n = s.dim();
    let mut a = s.to_dense();
    for p in 0..n {
        if !a[(p, p)].is_positive() {
            return false;
        }
        let d = a[(p, p)].clone();
        for i in (p + 1)..n {
            if a[(i, p)].is_zero() {
                continue;
            }
            let f = &a[(i, p)] / &d;
            for j in (p + 1)..n {
                let v = &a[(i, j)] - &(&f * &a[(p, j)]);
                a[(i, j)] = v;
            }
        }
    }
    true
}

/// Exact characteristic polynomial coefficients of a symmetric matrix,
/// `det(tI - S) = t^n + c[n-1] t^(n-1) + ... + c[0]`, via Faddeev–LeVerrier.
/// Used as an independent route to psd certification in tests: a symmetric
/// matrix is psd iff the coefficients alternate, `(-1)^k c[n-k] >= 0`.
pub fn charpoly(s: &SymmetricMatrix) -> Vec<Rational> {
    let n = s.dim();
    let a = s.to_dense();
    let mut m = crate::matrix::RationalMatrix::zeros(n, n);
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut c = Rational::one();
    for k in 1..=n {
        // M_k = A * M_{k-1} + c_{k-1} I
        let mut am = a.mul(&m).expect("square");
        for i in 0..n {
            let v = &am[(i, i)] + &c;
            am[(i, i)] = v;
        }
        m = am;
        let prod = a.mul(&m).expect("square");
        let mut tr = Rational::zero();
        for i in 0..n {
            tr += &prod[(i, i)];
        }
        c = -&tr / &Rational::from(k as i64);
        coeffs[n - k] = c.clone();
    }
    coeffs
}

/// Psd test via the characteristic polynomial sign pattern. Exposed for
/// cross-checking; `psd_check_exact` is the production route.
pub fn psd_by_charpoly(s: &SymmetricMatrix) -> bool {
    let n = s.dim();
    let coeffs = charpoly(s);
    (0..=n).all(|k| {
        let c = &coeffs[n - k];
        if k % 2 == 0 {
            !c.is_negative()
        } else {
            !c.is_positive()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::RationalMatrix;

    #[test]
    fn psd_rank_one_blocks() {
        // A_i = [[i^2, -i], [-i, 1]] is the rank-one outer product of (i, -1)
        for i in 1..=5i64 {
            let s = SymmetricMatrix::from_i64(&[&[i * i, -i], &[-i, 1]]);
            assert!(psd_check_exact(&s), "A_{i} should be psd");
        }
    }

    #[test]
    fn indefinite_diag() {
        let s = SymmetricMatrix::from_i64(&[&[1, 0], &[0, -1]]);
        assert!(!psd_check_exact(&s));
    }

    #[test]
    fn zero_pivot_with_nonzero_row_is_not_psd() {
        let s = SymmetricMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert!(!psd_check_exact(&s));
        let z = SymmetricMatrix::from_i64(&[&[0, 0], &[0, 3]]);
        assert!(psd_check_exact(&z));
    }

    #[test]
    fn gram_matrix_is_psd() {
        let g = RationalMatrix::from_i64(&[
            &[1, 2, 0, -1],
            &[3, -1, 1, 0],
            &[0, 0, 2, 5],
            &[1, 1, 1, 1],
        ]);
        let gram = g.transpose().mul(&g).unwrap();
        assert!(psd_check_exact(&SymmetricMatrix::from_dense(&gram).unwrap()));
    }

    #[test]
    fn charpoly_agrees_on_small_cases() {
        let s = SymmetricMatrix::from_i64(&[&[2, 1], &[1, 2]]);
        // det(tI - S) = t^2 - 4t + 3
        let c = charpoly(&s);
        assert_eq!(
            c,
            vec![
                Rational::from(3),
                Rational::from(-4),
                Rational::from(1)
            ]
        );
        assert!(psd_by_charpoly(&s));
        let ind = SymmetricMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert!(!psd_by_charpoly(&ind));
    }
}
