//! Exact linear algebra: fraction-free rank, reduced echelon forms,
//! nullspaces, linear solves and affine elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{dot, RationalMatrix};
use crate::rational::Rational;

/// Exact rank by fraction-free (Bareiss) elimination on the
/// denominator-cleared integer matrix. Pivots are chosen first-nonzero in
/// row-major order, so runs are reproducible.
pub fn rat_rank(m: &RationalMatrix) -> usize {
    let rows = m.rows();
    let cols = m.cols();
    if rows == 0 || cols == 0 {
        return 0;
    }
    // clear denominators row by row; row scaling preserves rank
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let row = m.row(i);
            let mut l = BigInt::one();
            for x in row {
                l = l.lcm(x.denom());
            }
            row.iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect()
        })
        .collect();

    let mut rank = 0;
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in (r + 1)..rows {
            for j in (c + 1)..cols {
                let num = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                a[i][j] = q;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        rank += 1;
        r += 1;
        if r == rows {
            break;
        }
    }
    rank
}

/// Reduced row echelon form together with the pivot column indices.
pub fn rref(m: &RationalMatrix) -> (RationalMatrix, Vec<usize>) {
    let mut a = m.clone();
    let rows = a.rows();
    let cols = a.cols();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let tmp = a[(r, j)].clone();
                a[(r, j)] = a[(p, j)].clone();
                a[(p, j)] = tmp;
            }
        }
        let inv = a[(r, c)].recip();
        for j in c..cols {
            let v = &a[(r, j)] * &inv;
            a[(r, j)] = v;
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..cols {
                let v = &a[(i, j)] - &(&f * &a[(r, j)]);
                a[(i, j)] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Columns form an exact basis of `{x : Mx = 0}`. The result has zero
/// columns when the kernel is trivial.
pub fn nullspace(m: &RationalMatrix) -> RationalMatrix {
    let cols = m.cols();
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = RationalMatrix::zeros(cols, free.len());
    for (k, &f) in free.iter().enumerate() {
        basis[(f, k)] = Rational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            basis[(pc, k)] = -&r[(row, f)];
        }
    }
    basis
}

/// Basis of the left nullspace `{u : uᵀM = 0}`, as columns.
pub fn left_nullspace(m: &RationalMatrix) -> RationalMatrix {
    nullspace(&m.transpose())
}

/// One exact solution of `Ax = b` (free variables set to zero), or `None`
/// when the system is inconsistent.
pub fn solve(a: &RationalMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    solve_affine(a, b).map(|(p, _)| p)
}

/// Full solution set of `Ax = b`: a particular solution plus a kernel basis
/// (columns). `None` when inconsistent.
pub fn solve_affine(
    a: &RationalMatrix,
    b: &[Rational],
) -> Option<(Vec<Rational>, RationalMatrix)> {
    assert_eq!(a.rows(), b.len(), "solve shape mismatch");
    let rhs = RationalMatrix::new(b.len(), 1, b.to_vec());
    let aug = a.hstack(&rhs).expect("aug");
    let (r, pivots) = rref(&aug);
    if pivots.contains(&a.cols()) {
        return None; // pivot in the rhs column
    }
    let mut x = vec![Rational::zero(); a.cols()];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r[(row, a.cols())].clone();
    }
    Some((x, nullspace(a)))
}

/// Inverse of a square matrix, or `None` if singular.
pub fn invert(a: &RationalMatrix) -> Option<RationalMatrix> {
    if a.rows() != a.cols() {
        return None;
    }
    let n = a.rows();
    let aug = a.hstack(&RationalMatrix::identity(n)).expect("aug");
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(r.select_cols(&(n..2 * n).collect::<Vec<_>>()))
}

/// Exact projection of the affine solution set of `E z = e` onto the kept
/// coordinates: returns equalities `(E', e')` over the kept variables whose
/// solution set equals `{ z_keep : ∃ z_elim, E z = e }`.
pub fn affine_eliminate(
    e_mat: &RationalMatrix,
    e_rhs: &[Rational],
    keep: &[usize],
) -> Result<(RationalMatrix, Vec<Rational>)> {
    assert_eq!(e_mat.rows(), e_rhs.len(), "eliminate shape mismatch");
    let n = e_mat.cols();
    let rhs = RationalMatrix::new(e_rhs.len(), 1, e_rhs.to_vec());
    let aug = e_mat.hstack(&rhs)?;
    if rat_rank(e_mat) != rat_rank(&aug) {
        return Err(Error::InconsistentSystem);
    }
    let mut keep: Vec<usize> = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    let elim: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();

    let e_elim = e_mat.select_cols(&elim);
    let e_keep = e_mat.select_cols(&keep);
    // y is in the projection iff e - E_keep y lies in range(E_elim), i.e.
    // iff every left-null vector of E_elim annihilates it.
    let u = left_nullspace(&e_elim); // columns
    let ut = u.transpose();
    let out_mat = ut.mul(&e_keep)?;
    let out_rhs = ut.mul_vec(e_rhs)?;
    // canonicalize via RREF of the augmented system, dropping zero rows
    let aug_out = out_mat.hstack(&RationalMatrix::new(out_rhs.len(), 1, out_rhs))?;
    let (r, pivots) = rref(&aug_out);
    if pivots.contains(&keep.len()) {
        return Err(Error::InconsistentSystem);
    }
    let kept_rows: Vec<usize> = (0..pivots.len()).collect();
    let reduced = r.select_rows(&kept_rows);
    let mat = reduced.select_cols(&(0..keep.len()).collect::<Vec<_>>());
    let rhs = reduced.col_vec(keep.len());
    Ok((mat, rhs))
}

/// Row-space equality of two augmented systems `[A|a]`, `[B|b]`.
pub fn row_space_eq(
    a: &RationalMatrix,
    a_rhs: &[Rational],
    b: &RationalMatrix,
    b_rhs: &[Rational],
) -> bool {
    if a.cols() != b.cols() {
        return false;
    }
    let a_aug = a
        .hstack(&RationalMatrix::new(a_rhs.len(), 1, a_rhs.to_vec()))
        .expect("aug");
    let b_aug = b
        .hstack(&RationalMatrix::new(b_rhs.len(), 1, b_rhs.to_vec()))
        .expect("aug");
    let ra = rat_rank(&a_aug);
    let rb = rat_rank(&b_aug);
    if ra != rb {
        return false;
    }
    let stacked = a_aug.vstack(&b_aug).expect("stack");
    rat_rank(&stacked) == ra
}

/// Exact rank factorization `M = C · F` with `C` of shape m×r (pivot
/// columns of `M`) and `F` of shape r×n (nonzero RREF rows).
pub fn rank_factorization(m: &RationalMatrix) -> (RationalMatrix, RationalMatrix) {
    let (r, pivots) = rref(m);
    let c = m.select_cols(&pivots);
    let f = r.select_rows(&(0..pivots.len()).collect::<Vec<_>>());
    (c, f)
}

/// Scale a rational vector to a primitive integer vector with the same
/// direction: multiply by the lcm of denominators, divide by the gcd of
/// numerators. Zero vectors are returned unchanged.
pub fn primitive_integer_direction(v: &[Rational]) -> Vec<Rational> {
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let nums: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let mut g = BigInt::zero();
    for n in &nums {
        g = g.gcd(n);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    nums.into_iter()
        .map(|n| Rational::from_int(n / &g))
        .collect()
}

/// Kernel of the homogeneous system `{x : dot(row, x) = 0 for all rows}`,
/// convenience form of [`nullspace`] for row lists.
pub fn nullspace_of_rows(rows: &[Vec<Rational>], cols: usize) -> RationalMatrix {
    if rows.is_empty() {
        return RationalMatrix::identity(cols);
    }
    nullspace(&RationalMatrix::from_rows(rows.to_vec()))
}

/// Checks `a` lies in the row space of `m`.
pub fn in_row_space(m: &RationalMatrix, a: &[Rational]) -> bool {
    let extra = RationalMatrix::new(1, a.len(), a.to_vec());
    if m.rows() == 0 {
        return a.iter().all(|x| x.is_zero());
    }
    rat_rank(m) == rat_rank(&m.vstack(&extra).expect("stack"))
}

/// Evaluates `dot` for each row of `m` against `x`.
pub fn residual(m: &RationalMatrix, x: &[Rational], rhs: &[Rational]) -> Vec<Rational> {
    (0..m.rows()).map(|i| &dot(m.row(i), x) - &rhs[i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn rank_identity_and_deficient() {
        assert_eq!(rat_rank(&RationalMatrix::identity(5)), 5);
        let m = RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(rat_rank(&m), 1);
        assert_eq!(rat_rank(&RationalMatrix::zeros(3, 4)), 0);
    }

    #[test]
    fn rank_squared_difference_matrix_is_three() {
        // (i-j)^2 for a 4x4 grid
        let m = RationalMatrix::from_rows(
            (1..=4)
                .map(|i| {
                    (1..=4)
                        .map(|j| Rational::from((i - j) * (i - j)))
                        .collect()
                })
                .collect(),
        );
        assert_eq!(rat_rank(&m), 3);
    }

    #[test]
    fn rank_of_transpose_matches() {
        let m = RationalMatrix::from_rows(vec![
            vec![rat(1, 2), int(0), int(3)],
            vec![int(2), int(0), int(12)],
            vec![int(1), int(1), int(1)],
        ]);
        assert_eq!(rat_rank(&m), rat_rank(&m.transpose()));
    }

    #[test]
    fn nullspace_symmetry_case() {
        let m = RationalMatrix::from_i64(&[&[1, -1]]);
        let b = nullspace(&m);
        assert_eq!(b.cols(), 1);
        assert_eq!(b[(0, 0)], b[(1, 0)]);
        assert!(!b[(0, 0)].is_zero());
    }

    #[test]
    fn nullspace_invertible_is_empty() {
        let m = RationalMatrix::from_i64(&[&[2, 0, 0], &[1, 1, 0], &[0, 5, 3]]);
        assert_eq!(nullspace(&m).cols(), 0);
    }

    #[test]
    fn solve_and_inconsistency() {
        let a = RationalMatrix::from_i64(&[&[1, 1], &[1, -1]]);
        let x = solve(&a, &[int(3), int(1)]).unwrap();
        assert_eq!(x, vec![int(2), int(1)]);
        let bad = RationalMatrix::from_i64(&[&[1, 1], &[2, 2]]);
        assert!(solve(&bad, &[int(1), int(3)]).is_none());
    }

    #[test]
    fn invert_roundtrip() {
        let a = RationalMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = invert(&a).unwrap();
        assert_eq!(a.mul(&inv).unwrap(), RationalMatrix::identity(2));
        assert!(invert(&RationalMatrix::from_i64(&[&[1, 1], &[2, 2]])).is_none());
    }

    #[test]
    fn eliminate_nothing_preserves_row_space() {
        let e = RationalMatrix::from_i64(&[&[1, 2, 3], &[0, 1, 1]]);
        let rhs = vec![int(1), int(2)];
        let (m, r) = affine_eliminate(&e, &rhs, &[0, 1, 2]).unwrap();
        assert!(row_space_eq(&m, &r, &e, &rhs));
    }

    #[test]
    fn eliminate_to_empty() {
        let e = RationalMatrix::from_i64(&[&[1, 0], &[0, 1]]);
        let rhs = vec![int(5), int(7)];
        let (m, r) = affine_eliminate(&e, &rhs, &[]).unwrap();
        assert_eq!(m.rows(), 0);
        assert!(r.is_empty());
    }

    #[test]
    fn eliminate_detects_inconsistency() {
        let e = RationalMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        let rhs = vec![int(0), int(1)];
        assert_eq!(
            affine_eliminate(&e, &rhs, &[1]),
            Err(Error::InconsistentSystem)
        );
    }

    #[test]
    fn rank_factorization_reconstructs() {
        let m = RationalMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let (c, f) = rank_factorization(&m);
        assert_eq!(c.cols(), 2);
        assert_eq!(c.mul(&f).unwrap(), m);
    }

    #[test]
    fn primitive_direction() {
        let v = vec![rat(1, 2), rat(-3, 4), int(0)];
        assert_eq!(
            primitive_integer_direction(&v),
            vec![int(2), int(-3), int(0)]
        );
    }
}
