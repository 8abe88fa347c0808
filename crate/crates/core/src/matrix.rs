//! Dense exact matrices and symmetric matrices.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        RationalMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix::new(rows, cols, vec![Rational::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RationalMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Integer test/gallery constructor.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        RationalMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<Rational> {
        self.row(i).to_vec()
    }

    pub fn col_vec(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[Rational]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn transpose(&self) -> Self {
        let mut t = RationalMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = RationalMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let term = a * &rhs[(k, j)];
                    out[(i, j)] += term;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if self.cols != v.len() {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * vec{}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn map<F: Fn(&Rational) -> Rational>(&self, f: F) -> Self {
        RationalMatrix::new(self.rows, self.cols, self.entries.iter().map(f).collect())
    }

    /// Entrywise square, as in the psd squaring construction.
    pub fn entrywise_square(&self) -> Self {
        self.map(|x| x * x)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|x| !x.is_negative())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn first_negative(&self) -> Option<(usize, usize)> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self[(i, j)].is_negative() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// 0/1 support pattern.
    pub fn support(&self) -> Vec<Vec<bool>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| !x.is_zero()).collect())
            .collect()
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        RationalMatrix::from_rows(idx.iter().map(|&i| self.row_vec(i)).collect())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut out = RationalMatrix::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                out[(i, jj)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn hstack(&self, rhs: &RationalMatrix) -> Result<RationalMatrix> {
        if self.rows != rhs.rows {
            return Err(Error::ShapeMismatch("hstack row mismatch".into()));
        }
        let mut rows = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut r = self.row_vec(i);
            r.extend(rhs.row_vec(i));
            rows.push(r);
        }
        Ok(RationalMatrix::from_rows(rows))
    }

    pub fn vstack(&self, below: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != below.cols {
            return Err(Error::ShapeMismatch("vstack col mismatch".into()));
        }
        let mut entries = self.entries.clone();
        entries.extend(below.entries.iter().cloned());
        Ok(RationalMatrix::new(self.rows + below.rows, self.cols, entries))
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Exact symmetric matrix stored as its upper triangle, row by row.
#[derive(Clone, PartialEq, Eq)]
pub struct SymmetricMatrix {
    dim: usize,
    upper: Vec<Rational>,
}

impl SymmetricMatrix {
    pub fn zeros(dim: usize) -> Self {
        SymmetricMatrix {
            dim,
            upper: vec![Rational::zero(); dim * (dim + 1) / 2],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn offset(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        // row i of the upper triangle starts after i full rows minus the triangle
        i * self.dim - i * (i + 1) / 2 + j
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.upper[self.offset(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        let k = self.offset(i, j);
        self.upper[k] = v;
    }

    pub fn from_dense(m: &RationalMatrix) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::ShapeMismatch("symmetric matrix must be square".into()));
        }
        let n = m.rows();
        for i in 0..n {
            for j in (i + 1)..n {
                if m[(i, j)] != m[(j, i)] {
                    return Err(Error::InvalidInput(format!(
                        "matrix not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        let mut s = SymmetricMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                s.set(i, j, m[(i, j)].clone());
            }
        }
        Ok(s)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        SymmetricMatrix::from_dense(&RationalMatrix::from_i64(rows)).expect("symmetric input")
    }

    pub fn to_dense(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(i, j)] = self.get(i, j).clone();
            }
        }
        m
    }

    /// Rank-one matrix `v vᵀ`.
    pub fn outer(v: &[Rational]) -> Self {
        let mut s = SymmetricMatrix::zeros(v.len());
        for i in 0..v.len() {
            for j in i..v.len() {
                s.set(i, j, &v[i] * &v[j]);
            }
        }
        s
    }

    /// Trace inner product `<A,B> = Σ_ij A_ij B_ij`.
    pub fn trace_inner(&self, other: &SymmetricMatrix) -> Rational {
        assert_eq!(self.dim, other.dim, "trace inner product dim mismatch");
        let mut acc = Rational::zero();
        for i in 0..self.dim {
            for j in i..self.dim {
                let term = self.get(i, j) * other.get(i, j);
                if i == j {
                    acc += term;
                } else {
                    acc += &term + &term;
                }
            }
        }
        acc
    }

    /// `xᵀ M x`.
    pub fn quadratic_form(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.dim);
        let mut acc = Rational::zero();
        for i in 0..self.dim {
            for j in 0..self.dim {
                if x[i].is_zero() || x[j].is_zero() {
                    continue;
                }
                acc += &(&x[i] * &x[j]) * self.get(i, j);
            }
        }
        acc
    }

    /// Principal submatrix on the index set `idx`.
    pub fn principal_submatrix(&self, idx: &[usize]) -> SymmetricMatrix {
        let mut s = SymmetricMatrix::zeros(idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate().skip(a) {
                s.set(a, b, self.get(i, j).clone());
            }
        }
        s
    }

    /// Flattened coordinates of a cone *point*: diagonal entries followed by
    /// the off-diagonal upper triangle, each stored once.
    pub fn flatten_point(&self) -> Vec<Rational> {
        let mut v = Vec::with_capacity(self.dim * (self.dim + 1) / 2);
        for i in 0..self.dim {
            v.push(self.get(i, i).clone());
        }
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                v.push(self.get(i, j).clone());
            }
        }
        v
    }

    /// Flattened coordinates of a linear *functional*: off-diagonals doubled
    /// so that the flat dot product against `flatten_point` equals the trace
    /// inner product.
    pub fn flatten_functional(&self) -> Vec<Rational> {
        let mut v = Vec::with_capacity(self.dim * (self.dim + 1) / 2);
        for i in 0..self.dim {
            v.push(self.get(i, i).clone());
        }
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let x = self.get(i, j);
                v.push(x + x);
            }
        }
        v
    }

    /// Inverse of `flatten_point`.
    pub fn from_flat_point(dim: usize, v: &[Rational]) -> Result<Self> {
        if v.len() != dim * (dim + 1) / 2 {
            return Err(Error::ShapeMismatch("flattened symmetric length".into()));
        }
        let mut s = SymmetricMatrix::zeros(dim);
        for i in 0..dim {
            s.set(i, i, v[i].clone());
        }
        let mut k = dim;
        for i in 0..dim {
            for j in (i + 1)..dim {
                s.set(i, j, v[k].clone());
                k += 1;
            }
        }
        Ok(s)
    }
}

impl fmt::Debug for SymmetricMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Symmetric{:?}", self.to_dense())
    }
}

// --- small exact vector helpers -------------------------------------------

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    assert_eq!(a.len(), b.len(), "dot length mismatch");
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

pub fn vec_add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Rational], s: &Rational) -> Vec<Rational> {
    a.iter().map(|x| x * s).collect()
}

pub fn vec_is_nonnegative(a: &[Rational]) -> bool {
    a.iter().all(|x| !x.is_negative())
}

pub fn vec_is_zero(a: &[Rational]) -> bool {
    a.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn index_and_transpose() {
        let m = RationalMatrix::from_i64(&[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(m[(1, 2)], int(6));
        let t = m.transpose();
        assert_eq!(t.rows(), 3);
        assert_eq!(t[(2, 1)], int(6));
        assert_eq!(t.transpose(), m);
    }

    #[test]
    fn multiply() {
        let a = RationalMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        let b = RationalMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, RationalMatrix::from_i64(&[&[2, 1], &[4, 3]]));
        assert!(a.mul(&RationalMatrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn symmetric_storage_roundtrip() {
        let s = SymmetricMatrix::from_i64(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(*s.get(2, 1), int(-1));
        assert_eq!(*s.get(1, 2), int(-1));
        let d = s.to_dense();
        assert_eq!(SymmetricMatrix::from_dense(&d).unwrap(), s);
    }

    #[test]
    fn trace_inner_counts_off_diagonals_twice() {
        let a = SymmetricMatrix::from_i64(&[&[1, 2], &[2, 3]]);
        let b = SymmetricMatrix::from_i64(&[&[5, 7], &[7, 11]]);
        // 1*5 + 3*11 + 2*(2*7) = 5 + 33 + 28
        assert_eq!(a.trace_inner(&b), int(66));
        // flat-point vs flat-functional dot reproduces the trace product
        let flat = dot(&a.flatten_functional(), &b.flatten_point());
        assert_eq!(flat, int(66));
    }

    #[test]
    fn quadratic_form_matches_outer() {
        let v = vec![rat(1, 2), int(3), int(-1)];
        let s = SymmetricMatrix::outer(&v);
        let x = vec![int(1), int(1), int(2)];
        let vx = dot(&v, &x);
        assert_eq!(s.quadratic_form(&x), &vx * &vx);
    }
}
