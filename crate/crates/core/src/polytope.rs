//! Exact polytopes with consistent dual (vertex / facet) representations,
//! slack matrices, polars and the geometric combinators.

use std::collections::BTreeSet;

use crate::dd::{dual_description, polyhedron_generators, Inequality};
use crate::error::{Error, Result};
use crate::facelattice::FaceLattice;
use crate::linalg::{primitive_integer_direction, rat_rank, solve};
use crate::matrix::{dot, vec_sub, RationalMatrix};
use crate::rational::Rational;

/// Affine embedding `u ↦ basis·u + offset` recording where a polytope that
/// was rebuilt inside its affine hull sits in the original ambient space.
#[derive(Debug, Clone)]
pub struct AffineChart {
    pub basis: RationalMatrix, // ambient × dim
    pub offset: Vec<Rational>, // ambient
}

impl AffineChart {
    pub fn to_ambient(&self, u: &[Rational]) -> Vec<Rational> {
        let mut x = self.basis.mul_vec(u).expect("chart shape");
        for (xi, oi) in x.iter_mut().zip(&self.offset) {
            *xi += oi;
        }
        x
    }
}

/// Full-dimensional polytope in its own coordinates. When the construction
/// input was lower-dimensional, `chart` maps back to the input ambient
/// space; all other operations ignore it.
#[derive(Debug, Clone)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vec<Rational>>,
    facets: Vec<Inequality>,
    chart: Option<AffineChart>,
}

/// Nonnegative matrix of facet slacks at vertices: entry (i,j) is
/// `h_j(p_i) = b_j − ⟨a_j, p_i⟩`, divided by `b_j` in canonical form.
#[derive(Debug, Clone)]
pub struct SlackMatrix {
    pub matrix: RationalMatrix,
    pub vertex_labels: Vec<String>,
    pub facet_labels: Vec<String>,
}

fn affine_rank(points: &[Vec<Rational>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let rows: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| vec_sub(p, &points[0]))
        .collect();
    rat_rank(&RationalMatrix::from_rows(rows))
}

impl Polytope {
    /// Exact V→H conversion. Redundant input points are dropped;
    /// lower-dimensional input is rebuilt inside its affine hull with the
    /// embedding recorded in `chart`.
    pub fn from_vertices(points: Vec<Vec<Rational>>) -> Result<Polytope> {
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        let n = points[0].len();
        if points.iter().any(|p| p.len() != n) {
            return Err(Error::ShapeMismatch("ragged vertex list".into()));
        }
        let hull_rank = affine_rank(&points);
        if hull_rank == n {
            return Self::from_vertices_full_dim(points, n);
        }
        // embed in the affine hull: greedy independent difference basis
        let p0 = points[0].clone();
        let mut basis_rows: Vec<Vec<Rational>> = Vec::new();
        for p in &points[1..] {
            let d = vec_sub(p, &p0);
            let mut candidate = basis_rows.clone();
            candidate.push(d.clone());
            if rat_rank(&RationalMatrix::from_rows(candidate.clone())) > basis_rows.len() {
                basis_rows = candidate;
            }
            if basis_rows.len() == hull_rank {
                break;
            }
        }
        let basis = RationalMatrix::from_rows(basis_rows).transpose(); // ambient × dim
        let reduced: Vec<Vec<Rational>> = points
            .iter()
            .map(|p| {
                solve(&basis, &vec_sub(p, &p0)).expect("point lies in its affine hull")
            })
            .collect();
        let mut poly = Self::from_vertices_full_dim(reduced, hull_rank)?;
        poly.chart = Some(AffineChart { basis, offset: p0 });
        Ok(poly)
    }

    fn from_vertices_full_dim(points: Vec<Vec<Rational>>, n: usize) -> Result<Polytope> {
        if n == 0 {
            return Ok(Polytope {
                dim: 0,
                vertices: vec![Vec::new()],
                facets: Vec::new(),
                chart: None,
            });
        }
        // extreme rays of the cone of valid inequalities c0 + ⟨c,x⟩ ≥ 0
        let rows: Vec<Vec<Rational>> = points
            .iter()
            .map(|p| {
                let mut r = Vec::with_capacity(n + 1);
                r.push(Rational::one());
                r.extend(p.iter().cloned());
                r
            })
            .collect();
        let cone = dual_description(&rows, n + 1);
        debug_assert!(cone.lineality.is_empty(), "input spans full dimension");
        let mut facets: Vec<Inequality> = cone
            .rays
            .iter()
            .map(|r| Inequality::new(r[1..].iter().map(|c| -c).collect(), r[0].clone()))
            .collect();
        facets.sort_by(|f, g| (&f.a, &f.b).cmp(&(&g.a, &g.b)));

        // keep exactly the extreme input points, first occurrence order
        let mut vertices: Vec<Vec<Rational>> = Vec::new();
        for p in &points {
            if vertices.contains(p) {
                continue;
            }
            let active: Vec<Vec<Rational>> = facets
                .iter()
                .filter(|f| f.slack(p).is_zero())
                .map(|f| f.a.clone())
                .collect();
            if !active.is_empty() && rat_rank(&RationalMatrix::from_rows(active)) == n {
                vertices.push(p.clone());
            }
        }
        Ok(Polytope {
            dim: n,
            vertices,
            facets,
            chart: None,
        })
    }

    /// Exact H→V conversion. Input inequalities that support facets are
    /// kept verbatim (scaling preserved); redundant ones are dropped.
    pub fn from_inequalities(ineqs: Vec<Inequality>) -> Result<Polytope> {
        if ineqs.is_empty() {
            return Err(Error::EmptyInput);
        }
        let n = ineqs[0].a.len();
        if ineqs.iter().any(|f| f.a.len() != n) {
            return Err(Error::ShapeMismatch("ragged inequality list".into()));
        }
        let gens = polyhedron_generators(&ineqs, &[], n);
        if !gens.lineality.is_empty() || !gens.rays.is_empty() {
            return Err(Error::Unbounded);
        }
        if gens.vertices.is_empty() {
            return Err(Error::Infeasible);
        }
        let vertices = gens.vertices;
        if affine_rank(&vertices) < n {
            // implicit equalities: rebuild in the affine hull
            return Self::from_vertices(vertices);
        }
        let mut facets: Vec<Inequality> = Vec::new();
        let mut seen: Vec<Vec<Rational>> = Vec::new();
        for f in &ineqs {
            let active: Vec<&Vec<Rational>> = vertices
                .iter()
                .filter(|v| f.slack(v).is_zero())
                .collect();
            if active.is_empty() {
                continue;
            }
            let owned: Vec<Vec<Rational>> = active.into_iter().cloned().collect();
            if affine_rank(&owned) != n - 1 {
                continue;
            }
            let mut key = f.a.clone();
            key.push(f.b.clone());
            let key = primitive_integer_direction(&key);
            if seen.contains(&key) {
                continue;
            }
            seen.push(key);
            facets.push(f.clone());
        }
        Ok(Polytope {
            dim: n,
            vertices,
            facets,
            chart: None,
        })
    }

    /// Builds a polytope from a matched pair of representations, checking
    /// mutual consistency exactly. Vertex and facet order are preserved.
    pub fn from_v_and_h(vertices: Vec<Vec<Rational>>, facets: Vec<Inequality>) -> Result<Polytope> {
        if vertices.is_empty() || facets.is_empty() {
            return Err(Error::EmptyInput);
        }
        let n = vertices[0].len();
        if vertices.iter().any(|v| v.len() != n) || facets.iter().any(|f| f.a.len() != n) {
            return Err(Error::ShapeMismatch("dimension mismatch".into()));
        }
        if affine_rank(&vertices) != n {
            return Err(Error::InvalidInput("vertex set is not full-dimensional".into()));
        }
        for (i, v) in vertices.iter().enumerate() {
            for (j, f) in facets.iter().enumerate() {
                if f.slack(v).is_negative() {
                    return Err(Error::InvalidInput(format!(
                        "vertex {i} violates facet {j}"
                    )));
                }
            }
        }
        for (i, v) in vertices.iter().enumerate() {
            let active: Vec<Vec<Rational>> = facets
                .iter()
                .filter(|f| f.slack(v).is_zero())
                .map(|f| f.a.clone())
                .collect();
            if active.is_empty() || rat_rank(&RationalMatrix::from_rows(active)) != n {
                return Err(Error::InvalidInput(format!("point {i} is not a vertex")));
            }
        }
        for (j, f) in facets.iter().enumerate() {
            let active: Vec<Vec<Rational>> = vertices
                .iter()
                .filter(|v| f.slack(v).is_zero())
                .cloned()
                .collect();
            if affine_rank(&active) != n - 1 {
                return Err(Error::InvalidInput(format!(
                    "inequality {j} does not support a facet"
                )));
            }
        }
        Ok(Polytope {
            dim: n,
            vertices,
            facets,
            chart: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Inequality] {
        &self.facets
    }

    pub fn chart(&self) -> Option<&AffineChart> {
        self.chart.as_ref()
    }

    /// Vertices mapped back to the construction ambient space.
    pub fn ambient_vertices(&self) -> Vec<Vec<Rational>> {
        match &self.chart {
            Some(c) => self.vertices.iter().map(|v| c.to_ambient(v)).collect(),
            None => self.vertices.clone(),
        }
    }

    /// True when all facet right-hand sides are positive, i.e. the origin
    /// satisfies every inequality strictly.
    pub fn origin_interior(&self) -> bool {
        !self.facets.is_empty() && self.facets.iter().all(|f| f.b.is_positive())
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.facets.iter().all(|f| f.satisfied_by(x))
    }

    /// Barycenter of the vertex set, an interior point.
    pub fn interior_point(&self) -> Vec<Rational> {
        let k = Rational::from(self.vertices.len() as i64);
        let mut c = vec![Rational::zero(); self.dim];
        for v in &self.vertices {
            for (ci, vi) in c.iter_mut().zip(v) {
                *ci += vi;
            }
        }
        c.into_iter().map(|x| &x / &k).collect()
    }

    pub fn slack_matrix(&self, canonical: bool) -> Result<SlackMatrix> {
        if canonical && !self.origin_interior() {
            return Err(Error::OriginNotInterior);
        }
        let mut m = RationalMatrix::zeros(self.vertices.len(), self.facets.len());
        for (i, v) in self.vertices.iter().enumerate() {
            for (j, f) in self.facets.iter().enumerate() {
                let s = f.slack(v);
                m[(i, j)] = if canonical { &s / &f.b } else { s };
            }
        }
        Ok(SlackMatrix {
            matrix: m,
            vertex_labels: (0..self.vertices.len()).map(|i| format!("v{i}")).collect(),
            facet_labels: (0..self.facets.len()).map(|j| format!("f{j}")).collect(),
        })
    }

    /// Polar polytope: vertices become facet normals and vice versa, with
    /// the index correspondence preserved.
    pub fn polar(&self) -> Result<Polytope> {
        if !self.origin_interior() {
            return Err(Error::OriginNotInterior);
        }
        let vertices: Vec<Vec<Rational>> = self
            .facets
            .iter()
            .map(|f| {
                let inv = f.b.recip();
                f.a.iter().map(|ai| ai * &inv).collect()
            })
            .collect();
        let facets: Vec<Inequality> = self
            .vertices
            .iter()
            .map(|v| Inequality::new(v.clone(), Rational::one()))
            .collect();
        Polytope::from_v_and_h(vertices, facets)
    }

    /// Incidence set of each facet: the indices of its vertices.
    pub fn facet_incidence(&self) -> Vec<BTreeSet<usize>> {
        self.facets
            .iter()
            .map(|f| {
                self.vertices
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| f.slack(v).is_zero())
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect()
    }

    pub fn face_lattice(&self) -> FaceLattice {
        FaceLattice::from_incidence(&self.facet_incidence(), self.vertices.len())
    }

    /// Cartesian product; coordinates concatenate, vertex count multiplies,
    /// facet count adds.
    pub fn product(&self, other: &Polytope) -> Result<Polytope> {
        let mut vertices = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for v1 in &self.vertices {
            for v2 in &other.vertices {
                let mut v = v1.clone();
                v.extend(v2.iter().cloned());
                vertices.push(v);
            }
        }
        let mut facets = Vec::with_capacity(self.facets.len() + other.facets.len());
        for f in &self.facets {
            let mut a = f.a.clone();
            a.extend(std::iter::repeat(Rational::zero()).take(other.dim));
            facets.push(Inequality::new(a, f.b.clone()));
        }
        for f in &other.facets {
            let mut a = vec![Rational::zero(); self.dim];
            a.extend(f.a.iter().cloned());
            facets.push(Inequality::new(a, f.b.clone()));
        }
        Polytope::from_v_and_h(vertices, facets)
    }

    pub fn conv_union(&self, other: &Polytope) -> Result<Polytope> {
        if self.dim != other.dim {
            return Err(Error::ShapeMismatch("conv_union ambient mismatch".into()));
        }
        let mut pts = self.vertices.clone();
        pts.extend(other.vertices.iter().cloned());
        Polytope::from_vertices(pts)
    }

    pub fn minkowski(&self, other: &Polytope) -> Result<Polytope> {
        if self.dim != other.dim {
            return Err(Error::ShapeMismatch("minkowski ambient mismatch".into()));
        }
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for v1 in &self.vertices {
            for v2 in &other.vertices {
                pts.push(v1.iter().zip(v2).map(|(a, b)| a + b).collect());
            }
        }
        Polytope::from_vertices(pts)
    }

    /// Image under the linear map given by `t` (rows are output coords).
    pub fn linear_image(&self, t: &RationalMatrix) -> Result<Polytope> {
        if t.cols() != self.dim {
            return Err(Error::ShapeMismatch("linear image shape".into()));
        }
        let pts: Vec<Vec<Rational>> = self
            .vertices
            .iter()
            .map(|v| t.mul_vec(v).expect("shape checked"))
            .collect();
        Polytope::from_vertices(pts)
    }

    /// Projective image `x ↦ P x / (1 + ⟨c, x⟩)`. The denominator must be
    /// strictly positive on every vertex, which by convexity makes it
    /// positive on the whole polytope.
    pub fn projective_image(&self, p: &RationalMatrix, c: &[Rational]) -> Result<Polytope> {
        if p.cols() != self.dim || c.len() != self.dim {
            return Err(Error::ShapeMismatch("projective image shape".into()));
        }
        let mut pts = Vec::with_capacity(self.vertices.len());
        for v in &self.vertices {
            let den = Rational::one() + dot(c, v);
            if !den.is_positive() {
                return Err(Error::ProjectiveDenominatorVanishes);
            }
            let inv = den.recip();
            pts.push(
                p.mul_vec(v)
                    .expect("shape checked")
                    .into_iter()
                    .map(|x| &x * &inv)
                    .collect(),
            );
        }
        Polytope::from_vertices(pts)
    }

    /// True when `expected` and the stored facets agree as sets up to
    /// positive scaling.
    pub fn facet_set_matches(&self, expected: &[Inequality]) -> bool {
        let key = |f: &Inequality| {
            let mut v = f.a.clone();
            v.push(f.b.clone());
            primitive_integer_direction(&v)
        };
        let mut ours: Vec<_> = self.facets.iter().map(key).collect();
        let mut theirs: Vec<_> = expected.iter().map(key).collect();
        ours.sort();
        theirs.sort();
        ours == theirs
    }

    /// True when `expected` equals the vertex set (exact, unordered).
    pub fn vertex_set_matches(&self, expected: &[Vec<Rational>]) -> bool {
        let mut ours = self.vertices.clone();
        let mut theirs = expected.to_vec();
        ours.sort();
        theirs.sort();
        ours == theirs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn pt(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&v| Rational::from(v)).collect()
    }

    #[test]
    fn triangle_from_vertices() {
        let p = Polytope::from_vertices(vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1])]).unwrap();
        assert_eq!(p.facets().len(), 3);
        assert_eq!(p.vertices().len(), 3);
        assert!(p.contains(&vec![rat(1, 4), rat(1, 4)]));
        assert!(!p.contains(&pt(&[1, 1])));
    }

    #[test]
    fn cross_polytope_has_eight_facets() {
        let mut pts = Vec::new();
        for i in 0..3 {
            for s in [1i64, -1] {
                let mut v = pt(&[0, 0, 0]);
                v[i] = Rational::from(s);
                pts.push(v);
            }
        }
        let p = Polytope::from_vertices(pts).unwrap();
        assert_eq!(p.vertices().len(), 6);
        assert_eq!(p.facets().len(), 8);
        assert!(p.origin_interior());
        // each facet is ±x1 ±x2 ±x3 ≤ 1
        for f in p.facets() {
            assert_eq!(f.b, int(1));
            assert!(f.a.iter().all(|c| c.abs() == int(1)));
        }
    }

    #[test]
    fn redundant_point_is_dropped() {
        let p = Polytope::from_vertices(vec![
            pt(&[0, 0]),
            pt(&[2, 0]),
            pt(&[0, 2]),
            pt(&[1, 0]), // on the boundary, not extreme
        ])
        .unwrap();
        assert_eq!(p.vertices().len(), 3);
    }

    #[test]
    fn unit_square_from_inequalities() {
        let ineqs = vec![
            Inequality::new(pt(&[1, 0]), int(1)),
            Inequality::new(pt(&[-1, 0]), int(1)),
            Inequality::new(pt(&[0, 1]), int(1)),
            Inequality::new(pt(&[0, -1]), int(1)),
        ];
        let p = Polytope::from_inequalities(ineqs).unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.facets().len(), 4);
    }

    #[test]
    fn infeasible_and_unbounded_errors() {
        let e = Polytope::from_inequalities(vec![
            Inequality::new(pt(&[1]), int(0)),
            Inequality::new(pt(&[-1]), int(-1)),
        ]);
        assert_eq!(e.unwrap_err(), Error::Infeasible);
        let u = Polytope::from_inequalities(vec![Inequality::new(pt(&[1]), int(1))]);
        assert_eq!(u.unwrap_err(), Error::Unbounded);
    }

    #[test]
    fn polar_of_cross_polytope_is_cube() {
        let mut pts = Vec::new();
        for i in 0..3 {
            for s in [1i64, -1] {
                let mut v = pt(&[0, 0, 0]);
                v[i] = Rational::from(s);
                pts.push(v);
            }
        }
        let p = Polytope::from_vertices(pts).unwrap();
        let q = p.polar().unwrap();
        assert_eq!(q.vertices().len(), 8);
        assert_eq!(q.facets().len(), 6);
        for v in q.vertices() {
            assert!(v.iter().all(|c| c.abs() == int(1)));
        }
    }

    #[test]
    fn polar_slack_is_transpose() {
        let p = Polytope::from_vertices(vec![
            pt(&[1, 0]),
            pt(&[0, 1]),
            pt(&[-1, 0]),
            pt(&[0, -1]),
        ])
        .unwrap();
        let q = p.polar().unwrap();
        let s_p = p.slack_matrix(true).unwrap().matrix;
        let s_q = q.slack_matrix(true).unwrap().matrix;
        assert_eq!(s_q, s_p.transpose());
    }

    #[test]
    fn lower_dimensional_input_gets_chart() {
        // segment embedded in the plane
        let p = Polytope::from_vertices(vec![pt(&[1, 1]), pt(&[3, 3])]).unwrap();
        assert_eq!(p.dim(), 1);
        assert_eq!(p.vertices().len(), 2);
        let amb = p.ambient_vertices();
        assert!(amb.contains(&pt(&[1, 1])));
        assert!(amb.contains(&pt(&[3, 3])));
        assert_eq!(p.face_lattice().len(), 4);
    }

    #[test]
    fn product_counts() {
        let seg = Polytope::from_vertices(vec![pt(&[-1]), pt(&[1])]).unwrap();
        let sq = seg.product(&seg).unwrap();
        assert_eq!(sq.vertices().len(), 4);
        assert_eq!(sq.facets().len(), 4);
        let cube = sq.product(&seg).unwrap();
        assert_eq!(cube.vertices().len(), 8);
        assert_eq!(cube.facets().len(), 6);
        assert_eq!(cube.face_lattice().len(), 28);
        assert_eq!(cube.face_lattice().max_antichain(), 12);
    }

    #[test]
    fn conv_union_of_rotated_squares_is_octagon() {
        let sq1 = Polytope::from_vertices(vec![
            pt(&[2, 2]),
            pt(&[2, -2]),
            pt(&[-2, 2]),
            pt(&[-2, -2]),
        ])
        .unwrap();
        let sq2 = Polytope::from_vertices(vec![
            pt(&[3, 0]),
            pt(&[0, 3]),
            pt(&[-3, 0]),
            pt(&[0, -3]),
        ])
        .unwrap();
        let oct = sq1.conv_union(&sq2).unwrap();
        assert_eq!(oct.vertices().len(), 8);
        assert_eq!(oct.facets().len(), 8);
    }

    #[test]
    fn projective_identity_is_identity() {
        let p = Polytope::from_vertices(vec![pt(&[1, 0]), pt(&[0, 1]), pt(&[-1, -1])]).unwrap();
        let q = p
            .projective_image(&RationalMatrix::identity(2), &[int(0), int(0)])
            .unwrap();
        assert!(q.vertex_set_matches(p.vertices()));
    }

    #[test]
    fn projective_denominator_guard() {
        let p = Polytope::from_vertices(vec![pt(&[1, 0]), pt(&[0, 1]), pt(&[-1, -1])]).unwrap();
        let r = p.projective_image(&RationalMatrix::identity(2), &[int(1), int(1)]);
        assert_eq!(r.unwrap_err(), Error::ProjectiveDenominatorVanishes);
    }

    #[test]
    fn minkowski_of_segments_is_square() {
        let seg_x = Polytope::from_vertices(vec![pt(&[-1, 0]), pt(&[1, 0])]).unwrap();
        let seg_y = Polytope::from_vertices(vec![pt(&[0, -1]), pt(&[0, 1])]).unwrap();
        // segments are lower-dimensional; lift them back to ambient points
        let sum = Polytope::from_vertices(
            seg_x
                .ambient_vertices()
                .iter()
                .flat_map(|a| {
                    seg_y
                        .ambient_vertices()
                        .iter()
                        .map(|b| a.iter().zip(b).map(|(x, y)| x + y).collect())
                        .collect::<Vec<Vec<Rational>>>()
                })
                .collect(),
        )
        .unwrap();
        assert_eq!(sum.vertices().len(), 4);
    }
}
