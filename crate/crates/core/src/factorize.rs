//! Cone factorizations of nonnegative matrices: exact verification, the
//! trivial and squaring constructions, and the combinators induced by
//! products, polars, convex unions and projective maps.

use crate::copositive::copositive_check_exact;
use crate::dd::polyhedron_generators;
use crate::error::{Error, Result};
use crate::linalg::rank_factorization;
use crate::matrix::{dot, vec_scale, RationalMatrix, SymmetricMatrix};
use crate::polytope::Polytope;
use crate::psd::psd_check_exact;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeKind {
    Orthant,
    Psd,
    CompletelyPositive,
}

/// A cone from one of the three families, by dimension parameter. Orthant
/// and psd cones are self-dual; the dual of the completely positive cone is
/// the copositive cone, which is what the B-side of a CP factorization is
/// tested against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConeDescriptor {
    pub kind: ConeKind,
    pub size: usize,
}

impl ConeDescriptor {
    pub fn orthant(size: usize) -> Self {
        ConeDescriptor {
            kind: ConeKind::Orthant,
            size,
        }
    }

    pub fn psd(size: usize) -> Self {
        ConeDescriptor {
            kind: ConeKind::Psd,
            size,
        }
    }

    pub fn completely_positive(size: usize) -> Self {
        ConeDescriptor {
            kind: ConeKind::CompletelyPositive,
            size,
        }
    }
}

/// An element of a cone or of its dual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeElement {
    /// Orthant element.
    Vector(Vec<Rational>),
    /// Psd element, or a copositive element on the dual side of a CP
    /// factorization.
    Matrix(SymmetricMatrix),
    /// Completely positive element with its certificate: `matrix = NᵀN`
    /// for the stored nonnegative `factor` N.
    CertifiedCp {
        matrix: SymmetricMatrix,
        factor: RationalMatrix,
    },
}

impl ConeElement {
    pub fn outer(v: &[Rational]) -> ConeElement {
        ConeElement::Matrix(SymmetricMatrix::outer(v))
    }

    /// Rank-one CP element `vvᵀ` for nonnegative `v`, which certifies
    /// itself with the 1×k factor.
    pub fn cp_outer(v: &[Rational]) -> ConeElement {
        ConeElement::CertifiedCp {
            matrix: SymmetricMatrix::outer(v),
            factor: RationalMatrix::new(1, v.len(), v.to_vec()),
        }
    }

    pub fn as_matrix(&self) -> Option<&SymmetricMatrix> {
        match self {
            ConeElement::Matrix(m) => Some(m),
            ConeElement::CertifiedCp { matrix, .. } => Some(matrix),
            ConeElement::Vector(_) => None,
        }
    }

    pub fn as_vector(&self) -> Option<&[Rational]> {
        match self {
            ConeElement::Vector(v) => Some(v),
            _ => None,
        }
    }

    fn size(&self) -> usize {
        match self {
            ConeElement::Vector(v) => v.len(),
            ConeElement::Matrix(m) => m.dim(),
            ConeElement::CertifiedCp { matrix, .. } => matrix.dim(),
        }
    }

    /// Inner product in the ambient space of the cone pair.
    pub fn inner(&self, other: &ConeElement) -> Result<Rational> {
        match (self, other) {
            (ConeElement::Vector(a), ConeElement::Vector(b)) => {
                if a.len() != b.len() {
                    return Err(Error::ShapeMismatch("inner product length".into()));
                }
                Ok(dot(a, b))
            }
            (x, y) => {
                let (Some(a), Some(b)) = (x.as_matrix(), y.as_matrix()) else {
                    return Err(Error::ConeMismatch("vector paired with matrix".into()));
                };
                if a.dim() != b.dim() {
                    return Err(Error::ShapeMismatch("trace inner dimension".into()));
                }
                Ok(a.trace_inner(b))
            }
        }
    }

    pub fn scale(&self, s: &Rational) -> Result<ConeElement> {
        if s.is_negative() {
            return Err(Error::InvalidInput("cone elements scale by s ≥ 0".into()));
        }
        Ok(match self {
            ConeElement::Vector(v) => ConeElement::Vector(vec_scale(v, s)),
            ConeElement::Matrix(m) => {
                let d = m.to_dense().map(|x| x * s);
                ConeElement::Matrix(SymmetricMatrix::from_dense(&d).expect("scaled symmetric"))
            }
            ConeElement::CertifiedCp { .. } => {
                return Err(Error::ConeMismatch(
                    "certified CP elements do not support scaling".into(),
                ))
            }
        })
    }

    /// Sum of two elements of the same shape.
    pub fn add(&self, other: &ConeElement) -> Result<ConeElement> {
        match (self, other) {
            (ConeElement::Vector(a), ConeElement::Vector(b)) if a.len() == b.len() => Ok(
                ConeElement::Vector(a.iter().zip(b).map(|(x, y)| x + y).collect()),
            ),
            (ConeElement::Matrix(a), ConeElement::Matrix(b)) if a.dim() == b.dim() => {
                let mut s = SymmetricMatrix::zeros(a.dim());
                for i in 0..a.dim() {
                    for j in i..a.dim() {
                        s.set(i, j, a.get(i, j) + b.get(i, j));
                    }
                }
                Ok(ConeElement::Matrix(s))
            }
            _ => Err(Error::ConeMismatch("element sum shape".into())),
        }
    }

    /// Concatenation into the product cone: vectors concatenate, symmetric
    /// matrices become a block diagonal.
    pub fn block_concat(&self, other: &ConeElement) -> Result<ConeElement> {
        match (self, other) {
            (ConeElement::Vector(a), ConeElement::Vector(b)) => {
                let mut v = a.clone();
                v.extend(b.iter().cloned());
                Ok(ConeElement::Vector(v))
            }
            (ConeElement::Matrix(a), ConeElement::Matrix(b)) => {
                let mut s = SymmetricMatrix::zeros(a.dim() + b.dim());
                for i in 0..a.dim() {
                    for j in i..a.dim() {
                        s.set(i, j, a.get(i, j).clone());
                    }
                }
                for i in 0..b.dim() {
                    for j in i..b.dim() {
                        s.set(a.dim() + i, a.dim() + j, b.get(i, j).clone());
                    }
                }
                Ok(ConeElement::Matrix(s))
            }
            _ => Err(Error::ConeMismatch("block concat kinds".into())),
        }
    }

    fn zero_of(kind: ConeKind, size: usize) -> ConeElement {
        match kind {
            ConeKind::Orthant => ConeElement::Vector(vec![Rational::zero(); size]),
            ConeKind::Psd | ConeKind::CompletelyPositive => {
                ConeElement::Matrix(SymmetricMatrix::zeros(size))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Primal,
    Dual,
}

/// Exact cone membership. The primal side of a CP factorization needs a
/// certificate; a plain symmetric element is accepted there only if it is a
/// nonnegative rank-one outer product, which certifies itself.
fn member(elem: &ConeElement, cone: &ConeDescriptor, side: Side) -> Result<bool> {
    if elem.size() != cone.size {
        return Err(Error::ShapeMismatch(format!(
            "element size {} vs cone size {}",
            elem.size(),
            cone.size
        )));
    }
    Ok(match (cone.kind, side) {
        (ConeKind::Orthant, _) => match elem {
            ConeElement::Vector(v) => v.iter().all(|x| !x.is_negative()),
            _ => return Err(Error::ConeMismatch("orthant element must be a vector".into())),
        },
        (ConeKind::Psd, _) => match elem.as_matrix() {
            Some(m) => psd_check_exact(m),
            None => return Err(Error::ConeMismatch("psd element must be a matrix".into())),
        },
        (ConeKind::CompletelyPositive, Side::Primal) => match elem {
            ConeElement::CertifiedCp { matrix, factor } => {
                factor.is_nonnegative()
                    && factor.cols() == matrix.dim()
                    && factor.transpose().mul(factor).expect("NᵀN") == matrix.to_dense()
            }
            ConeElement::Matrix(m) => rank_one_nonnegative_root(m).is_some(),
            ConeElement::Vector(_) => {
                return Err(Error::ConeMismatch("CP element must be a matrix".into()))
            }
        },
        (ConeKind::CompletelyPositive, Side::Dual) => match elem.as_matrix() {
            // dual of CP is the copositive cone; psd is a fast sufficient check
            Some(m) => psd_check_exact(m) || copositive_check_exact(m)?.is_copositive(),
            None => {
                return Err(Error::ConeMismatch(
                    "copositive element must be a matrix".into(),
                ))
            }
        },
    })
}

/// If `m = vvᵀ` for some nonnegative rational `v`, returns `v`.
pub fn rank_one_nonnegative_root(m: &SymmetricMatrix) -> Option<Vec<Rational>> {
    let d = m.to_dense();
    if !d.is_nonnegative() {
        return None;
    }
    let n = m.dim();
    let mut v = Vec::with_capacity(n);
    for i in 0..n {
        v.push(m.get(i, i).sqrt_exact()?);
    }
    for i in 0..n {
        for j in i..n {
            if &(&v[i] * &v[j]) != m.get(i, j) {
                return None;
            }
        }
    }
    Some(v)
}

/// A candidate cone factorization: one element of K per matrix row, one
/// element of K* per column. Whether the inner products reproduce a given
/// matrix is the job of [`verify_factorization`].
#[derive(Debug, Clone)]
pub struct ConeFactorization {
    pub cone: ConeDescriptor,
    pub a_list: Vec<ConeElement>,
    pub b_list: Vec<ConeElement>,
}

impl ConeFactorization {
    /// The matrix `⟨a_i, b_j⟩` the factorization realizes.
    pub fn realized_matrix(&self) -> Result<RationalMatrix> {
        let mut m = RationalMatrix::zeros(self.a_list.len(), self.b_list.len());
        for (i, a) in self.a_list.iter().enumerate() {
            for (j, b) in self.b_list.iter().enumerate() {
                m[(i, j)] = a.inner(b)?;
            }
        }
        Ok(m)
    }
}

/// Exact check: every inner product equals the matrix entry and every
/// element passes its cone membership test.
pub fn verify_factorization(m: &RationalMatrix, f: &ConeFactorization) -> Result<bool> {
    if f.a_list.len() != m.rows() || f.b_list.len() != m.cols() {
        return Err(Error::ShapeMismatch(format!(
            "factorization lists {}x{} vs matrix {}x{}",
            f.a_list.len(),
            f.b_list.len(),
            m.rows(),
            m.cols()
        )));
    }
    for a in &f.a_list {
        if !member(a, &f.cone, Side::Primal)? {
            return Ok(false);
        }
    }
    for b in &f.b_list {
        if !member(b, &f.cone, Side::Dual)? {
            return Ok(false);
        }
    }
    for (i, a) in f.a_list.iter().enumerate() {
        for (j, b) in f.b_list.iter().enumerate() {
            if a.inner(b)? != m[(i, j)] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The size-`min{p,q}` orthant factorization `M = I·M` or `M = M·I`; the
/// zero matrix gets the empty size-0 factorization.
pub fn trivial_orthant_factorization(m: &RationalMatrix) -> Result<ConeFactorization> {
    if let Some((i, j)) = m.first_negative() {
        return Err(Error::NegativeEntry(i, j));
    }
    let (p, q) = (m.rows(), m.cols());
    if m.is_zero() {
        return Ok(ConeFactorization {
            cone: ConeDescriptor::orthant(0),
            a_list: vec![ConeElement::Vector(Vec::new()); p],
            b_list: vec![ConeElement::Vector(Vec::new()); q],
        });
    }
    let k = p.min(q);
    let (a_list, b_list) = if p <= q {
        let id = RationalMatrix::identity(p);
        (
            (0..p).map(|i| ConeElement::Vector(id.row_vec(i))).collect(),
            (0..q).map(|j| ConeElement::Vector(m.col_vec(j))).collect(),
        )
    } else {
        let id = RationalMatrix::identity(q);
        (
            (0..p).map(|i| ConeElement::Vector(m.row_vec(i))).collect(),
            (0..q).map(|j| ConeElement::Vector(id.col_vec(j))).collect(),
        )
    };
    Ok(ConeFactorization {
        cone: ConeDescriptor::orthant(k),
        a_list,
        b_list,
    })
}

/// Psd factorization of the entrywise square of `M`, of size `rank(M)`,
/// from an exact rank factorization `M = C·F`: squaring each inner product
/// is taking the trace product of the rank-one outer squares.
pub fn squared_factorization(m: &RationalMatrix) -> ConeFactorization {
    let (c, f) = rank_factorization(m);
    let r = c.cols();
    let a_list = (0..m.rows())
        .map(|i| ConeElement::outer(&c.row_vec(i)))
        .collect();
    let b_list = (0..m.cols())
        .map(|j| ConeElement::outer(&f.col_vec(j)))
        .collect();
    ConeFactorization {
        cone: ConeDescriptor::psd(r),
        a_list,
        b_list,
    }
}

fn concat_cones(c1: &ConeDescriptor, c2: &ConeDescriptor) -> Result<ConeDescriptor> {
    if c1.kind != c2.kind || c1.kind == ConeKind::CompletelyPositive {
        return Err(Error::ConeMismatch(
            "product combinators need matching orthant or psd cones".into(),
        ));
    }
    Ok(ConeDescriptor {
        kind: c1.kind,
        size: c1.size + c2.size,
    })
}

/// Factorization of the slack matrix of `P1 × P2` (vertex order: all of
/// P2's vertices for each vertex of P1; facets of P1 first).
pub fn combine_product(
    f1: &ConeFactorization,
    f2: &ConeFactorization,
) -> Result<ConeFactorization> {
    let cone = concat_cones(&f1.cone, &f2.cone)?;
    let zero1 = ConeElement::zero_of(f1.cone.kind, f1.cone.size);
    let zero2 = ConeElement::zero_of(f2.cone.kind, f2.cone.size);
    let mut a_list = Vec::with_capacity(f1.a_list.len() * f2.a_list.len());
    for a1 in &f1.a_list {
        for a2 in &f2.a_list {
            a_list.push(a1.block_concat(a2)?);
        }
    }
    let mut b_list = Vec::with_capacity(f1.b_list.len() + f2.b_list.len());
    for b1 in &f1.b_list {
        b_list.push(b1.block_concat(&zero2)?);
    }
    for b2 in &f2.b_list {
        b_list.push(zero1.block_concat(b2)?);
    }
    Ok(ConeFactorization { cone, a_list, b_list })
}

/// Swaps the factor lists: a factorization of `S` over a self-dual cone
/// becomes one of `Sᵀ`, matching the polar's slack matrix under the induced
/// index correspondence.
pub fn transpose_polar(f: &ConeFactorization) -> Result<ConeFactorization> {
    if f.cone.kind == ConeKind::CompletelyPositive {
        return Err(Error::ConeMismatch(
            "the CP cone is not self-dual; polar transpose undefined".into(),
        ));
    }
    Ok(ConeFactorization {
        cone: f.cone,
        a_list: f.b_list.clone(),
        b_list: f.a_list.clone(),
    })
}

/// Exact convex coefficients expressing `y` over the canonical facet
/// normals of `p` (the vertices of its polar): `y = Σ λ_j a_j/b_j` with
/// `λ ≥ 0, Σλ = 1`. Errors when `y` is outside the polar.
pub fn convex_combination_over_polar(p: &Polytope, y: &[Rational]) -> Result<Vec<Rational>> {
    if !p.origin_interior() {
        return Err(Error::OriginNotInterior);
    }
    let k = p.facets().len();
    let normals: Vec<Vec<Rational>> = p
        .facets()
        .iter()
        .map(|f| {
            let inv = f.b.recip();
            f.a.iter().map(|ai| ai * &inv).collect()
        })
        .collect();
    // λ-polytope: λ ≥ 0, Σλ = 1, Σ λ_j y_j = y
    let nonneg: Vec<crate::dd::Inequality> = (0..k)
        .map(|j| {
            let mut a = vec![Rational::zero(); k];
            a[j] = Rational::from(-1);
            crate::dd::Inequality::new(a, Rational::zero())
        })
        .collect();
    let mut eqs: Vec<(Vec<Rational>, Rational)> =
        vec![(vec![Rational::one(); k], Rational::one())];
    for coord in 0..p.dim() {
        eqs.push((
            normals.iter().map(|n| n[coord].clone()).collect(),
            y[coord].clone(),
        ));
    }
    let gens = polyhedron_generators(&nonneg, &eqs, k);
    gens.vertices
        .into_iter()
        .next()
        .ok_or_else(|| Error::HullDataInconsistent("normal not in the polar".into()))
}

/// For each extreme point of `conv(C1 ∪ C2)`, which input it came from;
/// for each hull facet, the convex coefficients of its canonical normal
/// over each input's polar.
#[derive(Debug, Clone)]
pub struct HullData {
    pub vertex_origin: Vec<(usize, usize)>,
    pub facet_coeffs: Vec<[Vec<Rational>; 2]>,
}

/// Computes hull data by exact feasibility solves.
pub fn compute_hull_data(p1: &Polytope, p2: &Polytope, hull: &Polytope) -> Result<HullData> {
    let mut vertex_origin = Vec::with_capacity(hull.vertices().len());
    for v in hull.vertices() {
        if let Some(i) = p1.vertices().iter().position(|w| w == v) {
            vertex_origin.push((0, i));
        } else if let Some(i) = p2.vertices().iter().position(|w| w == v) {
            vertex_origin.push((1, i));
        } else {
            return Err(Error::HullDataInconsistent(
                "hull vertex not a vertex of either input".into(),
            ));
        }
    }
    let mut facet_coeffs = Vec::with_capacity(hull.facets().len());
    for f in hull.facets() {
        if !f.b.is_positive() {
            return Err(Error::OriginNotInterior);
        }
        let inv = f.b.recip();
        let y: Vec<Rational> = f.a.iter().map(|ai| ai * &inv).collect();
        facet_coeffs.push([
            convex_combination_over_polar(p1, &y)?,
            convex_combination_over_polar(p2, &y)?,
        ]);
    }
    Ok(HullData {
        vertex_origin,
        facet_coeffs,
    })
}

/// Factorization of the canonical slack matrix of `conv(C1 ∪ C2)` over the
/// product cone: hull vertices keep their originating factor (zero on the
/// other block), hull facets take the convex combinations of both B-sides.
pub fn combine_conv_union(
    f1: &ConeFactorization,
    p1: &Polytope,
    f2: &ConeFactorization,
    p2: &Polytope,
    hull: &Polytope,
    data: &HullData,
) -> Result<ConeFactorization> {
    let cone = concat_cones(&f1.cone, &f2.cone)?;
    if data.vertex_origin.len() != hull.vertices().len()
        || data.facet_coeffs.len() != hull.facets().len()
    {
        return Err(Error::HullDataInconsistent("hull data shape".into()));
    }
    let s1 = p1.slack_matrix(true)?.matrix;
    let s2 = p2.slack_matrix(true)?.matrix;
    if !verify_factorization(&s1, f1)? || !verify_factorization(&s2, f2)? {
        return Err(Error::FactorizationInvalid);
    }
    let zero1 = ConeElement::zero_of(f1.cone.kind, f1.cone.size);
    let zero2 = ConeElement::zero_of(f2.cone.kind, f2.cone.size);
    let mut a_list = Vec::with_capacity(hull.vertices().len());
    for (v, &(side, idx)) in hull.vertices().iter().zip(&data.vertex_origin) {
        let (src, poly) = if side == 0 { (f1, p1) } else { (f2, p2) };
        if poly.vertices().get(idx) != Some(v) {
            return Err(Error::HullDataInconsistent("vertex origin index".into()));
        }
        let a = &src.a_list[idx];
        a_list.push(if side == 0 {
            a.block_concat(&zero2)?
        } else {
            zero1.block_concat(a)?
        });
    }
    let mut b_list = Vec::with_capacity(hull.facets().len());
    for (f, coeffs) in hull.facets().iter().zip(&data.facet_coeffs) {
        let inv = f.b.recip();
        let y: Vec<Rational> = f.a.iter().map(|ai| ai * &inv).collect();
        let mut blocks: Vec<ConeElement> = Vec::with_capacity(2);
        for (side, (src, poly)) in [(f1, p1), (f2, p2)].into_iter().enumerate() {
            let lambda = &coeffs[side];
            if lambda.len() != poly.facets().len()
                || lambda.iter().any(|l| l.is_negative())
                || lambda.iter().sum::<Rational>() != Rational::one()
            {
                return Err(Error::HullDataInconsistent("coefficients not convex".into()));
            }
            // the combination must reproduce the hull normal exactly
            let mut combo = vec![Rational::zero(); poly.dim()];
            for (j, facet) in poly.facets().iter().enumerate() {
                let scale = &lambda[j] / &facet.b;
                for (c, ai) in combo.iter_mut().zip(&facet.a) {
                    *c += &(ai * &scale);
                }
            }
            if combo != y {
                return Err(Error::HullDataInconsistent(
                    "coefficients do not reproduce the facet normal".into(),
                ));
            }
            let mut acc = ConeElement::zero_of(src.cone.kind, src.cone.size);
            for (j, b) in src.b_list.iter().enumerate() {
                if lambda[j].is_zero() {
                    continue;
                }
                acc = acc.add(&b.scale(&lambda[j])?)?;
            }
            blocks.push(acc);
        }
        b_list.push(blocks[0].block_concat(&blocks[1])?);
    }
    Ok(ConeFactorization { cone, a_list, b_list })
}

/// Transports a factorization of the canonical slack matrix of `p` along
/// the projective map `x ↦ Pmat·x / (1 + ⟨c, x⟩)`: the A-side is rescaled
/// by the denominators, the B-side pulls each image facet normal back into
/// the polar of `p` and takes the induced convex combination.
pub fn transform_projective(
    f: &ConeFactorization,
    p: &Polytope,
    pmat: &RationalMatrix,
    c: &[Rational],
) -> Result<(Polytope, ConeFactorization)> {
    if f.cone.kind == ConeKind::CompletelyPositive {
        return Err(Error::ConeMismatch(
            "projective transport of CP certificates is unsupported".into(),
        ));
    }
    if crate::linalg::invert(pmat).is_none() {
        return Err(Error::DegenerateImage);
    }
    let s = p.slack_matrix(true)?.matrix;
    if !verify_factorization(&s, f)? {
        return Err(Error::FactorizationInvalid);
    }
    let image = p.projective_image(pmat, c).map_err(|e| match e {
        Error::ProjectiveDenominatorVanishes => Error::DenominatorVanishes,
        other => other,
    })?;
    // an invertible projective map sends vertices to vertices in order
    debug_assert_eq!(image.vertices().len(), p.vertices().len());
    let mut a_list = Vec::with_capacity(p.vertices().len());
    for (v, a) in p.vertices().iter().zip(&f.a_list) {
        let den = Rational::one() + dot(c, v);
        a_list.push(a.scale(&den.recip())?);
    }
    let pt = pmat.transpose();
    let mut b_list = Vec::with_capacity(image.facets().len());
    for g in image.facets() {
        if !g.b.is_positive() {
            return Err(Error::DegenerateImage);
        }
        let inv = g.b.recip();
        let y: Vec<Rational> = g.a.iter().map(|ai| ai * &inv).collect();
        // z = Pᵀ y − c lies in the polar of p
        let z: Vec<Rational> = pt
            .mul_vec(&y)?
            .into_iter()
            .zip(c)
            .map(|(x, ci)| &x - ci)
            .collect();
        let lambda = convex_combination_over_polar(p, &z)?;
        let mut acc = ConeElement::zero_of(f.cone.kind, f.cone.size);
        for (j, b) in f.b_list.iter().enumerate() {
            if lambda[j].is_zero() {
                continue;
            }
            acc = acc.add(&b.scale(&lambda[j])?)?;
        }
        b_list.push(acc);
    }
    let fact = ConeFactorization {
        cone: f.cone,
        a_list,
        b_list,
    };
    Ok((image, fact))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn trivial_factorization_verifies() {
        let m = RationalMatrix::from_i64(&[&[1, 0, 2, 3, 1], &[0, 1, 1, 0, 4], &[2, 2, 0, 1, 0]]);
        let f = trivial_orthant_factorization(&m).unwrap();
        assert_eq!(f.cone.size, 3);
        assert!(verify_factorization(&m, &f).unwrap());
    }

    #[test]
    fn trivial_factorization_rejects_negative() {
        let m = RationalMatrix::from_i64(&[&[1, -1]]);
        assert_eq!(
            trivial_orthant_factorization(&m).unwrap_err(),
            Error::NegativeEntry(0, 1)
        );
    }

    #[test]
    fn zero_matrix_gets_size_zero() {
        let m = RationalMatrix::zeros(2, 3);
        let f = trivial_orthant_factorization(&m).unwrap();
        assert_eq!(f.cone.size, 0);
        assert!(verify_factorization(&m, &f).unwrap());
    }

    #[test]
    fn squared_factorization_of_difference_matrix() {
        // E_5 with entries i-j has rank 2; its square is M_5
        let n = 5i64;
        let e = RationalMatrix::from_rows(
            (1..=n)
                .map(|i| (1..=n).map(|j| Rational::from(i - j)).collect())
                .collect(),
        );
        let f = squared_factorization(&e);
        assert_eq!(f.cone, ConeDescriptor::psd(2));
        assert!(verify_factorization(&e.entrywise_square(), &f).unwrap());
    }

    #[test]
    fn squared_factorization_of_zero() {
        let z = RationalMatrix::zeros(2, 2);
        let f = squared_factorization(&z);
        assert_eq!(f.cone.size, 0);
        assert!(verify_factorization(&z, &f).unwrap());
    }

    #[test]
    fn psd_factorization_of_squared_differences() {
        // the explicit 2×2 psd factorization of M_n
        let n = 5usize;
        let m = RationalMatrix::from_rows(
            (1..=n as i64)
                .map(|i| {
                    (1..=n as i64)
                        .map(|j| Rational::from((i - j) * (i - j)))
                        .collect()
                })
                .collect(),
        );
        let a_list: Vec<ConeElement> = (1..=n as i64)
            .map(|i| ConeElement::Matrix(SymmetricMatrix::from_i64(&[&[i * i, -i], &[-i, 1]])))
            .collect();
        let b_list: Vec<ConeElement> = (1..=n as i64)
            .map(|j| ConeElement::Matrix(SymmetricMatrix::from_i64(&[&[1, j], &[j, j * j]])))
            .collect();
        let f = ConeFactorization {
            cone: ConeDescriptor::psd(2),
            a_list,
            b_list,
        };
        assert!(verify_factorization(&m, &f).unwrap());
    }

    #[test]
    fn perturbed_factorization_fails() {
        let m = RationalMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        let f = trivial_orthant_factorization(&m).unwrap();
        let mut bad = f.clone();
        if let ConeElement::Vector(v) = &mut bad.a_list[0] {
            v[0] = &v[0] + &int(1);
        }
        assert!(verify_factorization(&m, &f).unwrap());
        assert!(!verify_factorization(&m, &bad).unwrap());
    }

    #[test]
    fn rank_one_cp_detection() {
        let v = vec![int(1), int(0), int(2)];
        let m = SymmetricMatrix::outer(&v);
        assert_eq!(rank_one_nonnegative_root(&m), Some(v));
        let not_r1 = SymmetricMatrix::from_i64(&[&[1, 0], &[0, 1]]);
        assert_eq!(rank_one_nonnegative_root(&not_r1), None);
    }

    #[test]
    fn product_of_segment_factorizations() {
        let seg = Polytope::from_vertices(vec![vec![int(-1)], vec![int(1)]]).unwrap();
        let s = seg.slack_matrix(true).unwrap().matrix;
        let f = trivial_orthant_factorization(&s).unwrap();
        let sq = seg.product(&seg).unwrap();
        let s_sq = sq.slack_matrix(true).unwrap().matrix;
        let combined = combine_product(&f, &f).unwrap();
        assert_eq!(combined.cone.size, 4);
        assert!(verify_factorization(&s_sq, &combined).unwrap());
    }

    #[test]
    fn transpose_polar_matches_polar_slack() {
        let sq = Polytope::from_vertices(vec![
            vec![int(1), int(0)],
            vec![int(0), int(1)],
            vec![int(-1), int(0)],
            vec![int(0), int(-1)],
        ])
        .unwrap();
        let s = sq.slack_matrix(true).unwrap().matrix;
        let f = trivial_orthant_factorization(&s).unwrap();
        let polar_slack = sq.polar().unwrap().slack_matrix(true).unwrap().matrix;
        let ft = transpose_polar(&f).unwrap();
        assert!(verify_factorization(&polar_slack, &ft).unwrap());
    }
}
