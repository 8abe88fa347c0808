//! Double description method: exact conversion between inequality and
//! generator representations of polyhedral cones, plus the homogenization
//! wrappers for vertex enumeration of polyhedra.
//!
//! Constraints are inserted in input order. Rays are kept as primitive
//! integer vectors, adjacency is decided by the rank of the common active
//! constraint set, and a final extremality sweep removes anything
//! redundant, so output is deterministic for a given input order.

use crate::matrix::{dot, vec_is_zero, RationalMatrix};
use crate::linalg::{primitive_integer_direction, rat_rank};
use crate::rational::Rational;

/// Generators of a polyhedral cone `{x : rows·x ≥ 0}`: a basis of the
/// lineality space plus the extreme rays modulo lineality.
#[derive(Debug, Clone)]
pub struct ConeDescription {
    pub lineality: Vec<Vec<Rational>>,
    pub rays: Vec<Vec<Rational>>,
}

/// Runs the double description method on `{x ∈ R^dim : a·x ≥ 0 ∀ a ∈ rows}`.
pub fn dual_description(rows: &[Vec<Rational>], dim: usize) -> ConeDescription {
    let mut lineality: Vec<Vec<Rational>> = (0..dim)
        .map(|i| {
            let mut e = vec![Rational::zero(); dim];
            e[i] = Rational::one();
            e
        })
        .collect();
    let mut rays: Vec<Vec<Rational>> = Vec::new();
    let mut processed: Vec<Vec<Rational>> = Vec::new();

    for a in rows {
        assert_eq!(a.len(), dim, "constraint dimension mismatch");
        let lin_vals: Vec<Rational> = lineality.iter().map(|l| dot(a, l)).collect();
        if let Some(p) = lin_vals.iter().position(|v| !v.is_zero()) {
            // the constraint cuts the lineality space: pivot it out
            let l0 = lineality.remove(p);
            let v0 = lin_vals[p].clone();
            for l in lineality.iter_mut() {
                let f = &dot(a, l) / &v0;
                if !f.is_zero() {
                    for (li, l0i) in l.iter_mut().zip(&l0) {
                        *li -= &(&f * l0i);
                    }
                }
                *l = primitive_integer_direction(l);
            }
            for r in rays.iter_mut() {
                let f = &dot(a, r) / &v0;
                if !f.is_zero() {
                    for (ri, l0i) in r.iter_mut().zip(&l0) {
                        *ri -= &(&f * l0i);
                    }
                }
                *r = primitive_integer_direction(r);
            }
            let new_ray = if v0.is_positive() {
                l0
            } else {
                l0.iter().map(|x| -x).collect()
            };
            rays.push(primitive_integer_direction(&new_ray));
        } else {
            let vals: Vec<Rational> = rays.iter().map(|r| dot(a, r)).collect();
            let has_neg = vals.iter().any(|v| v.is_negative());
            if has_neg {
                let lin_dim = lineality.len();
                let mut next: Vec<Vec<Rational>> = Vec::new();
                for (r, v) in rays.iter().zip(&vals) {
                    if !v.is_negative() {
                        next.push(r.clone());
                    }
                }
                for (i, ri) in rays.iter().enumerate() {
                    if !vals[i].is_positive() {
                        continue;
                    }
                    for (j, rj) in rays.iter().enumerate() {
                        if !vals[j].is_negative() {
                            continue;
                        }
                        if !adjacent(&processed, ri, rj, dim, lin_dim) {
                            continue;
                        }
                        // positive combination landing on the hyperplane a·x = 0
                        let mut combo = Vec::with_capacity(dim);
                        for k in 0..dim {
                            combo.push(&(&vals[i] * &rj[k]) - &(&vals[j] * &ri[k]));
                        }
                        let combo = primitive_integer_direction(&combo);
                        if !vec_is_zero(&combo) {
                            next.push(combo);
                        }
                    }
                }
                rays = dedupe(next);
            }
        }
        processed.push(a.clone());
    }

    // final extremality sweep against the full constraint set
    let lin_dim = lineality.len();
    let rays = dedupe(
        rays.into_iter()
            .filter(|r| !vec_is_zero(r) && is_extreme(&processed, r, dim, lin_dim))
            .collect(),
    );
    ConeDescription { lineality, rays }
}

fn dedupe(rays: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let mut seen: Vec<Vec<Rational>> = Vec::new();
    for r in rays {
        if !seen.contains(&r) {
            seen.push(r);
        }
    }
    seen
}

fn active_rows(processed: &[Vec<Rational>], r: &[Rational]) -> Vec<Vec<Rational>> {
    processed
        .iter()
        .filter(|a| dot(a, r).is_zero())
        .cloned()
        .collect()
}

fn adjacent(
    processed: &[Vec<Rational>],
    r1: &[Rational],
    r2: &[Rational],
    dim: usize,
    lin_dim: usize,
) -> bool {
    let common: Vec<Vec<Rational>> = processed
        .iter()
        .filter(|a| dot(a, r1).is_zero() && dot(a, r2).is_zero())
        .cloned()
        .collect();
    if dim < lin_dim + 2 {
        return false;
    }
    rank_of_rows(&common, dim) == dim - lin_dim - 2
}

fn is_extreme(processed: &[Vec<Rational>], r: &[Rational], dim: usize, lin_dim: usize) -> bool {
    if dim < lin_dim + 1 {
        return false;
    }
    rank_of_rows(&active_rows(processed, r), dim) == dim - lin_dim - 1
}

fn rank_of_rows(rows: &[Vec<Rational>], dim: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let _ = dim;
    rat_rank(&RationalMatrix::from_rows(rows.to_vec()))
}

/// One linear inequality `⟨a, x⟩ ≤ b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inequality {
    pub a: Vec<Rational>,
    pub b: Rational,
}

impl Inequality {
    pub fn new(a: Vec<Rational>, b: Rational) -> Self {
        Inequality { a, b }
    }

    /// Slack `b - ⟨a, x⟩` of a point.
    pub fn slack(&self, x: &[Rational]) -> Rational {
        &self.b - &dot(&self.a, x)
    }

    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        !self.slack(x).is_negative()
    }
}

/// V-description of `{x : ineqs, eqs}` computed through the homogenization
/// cone in one extra dimension.
#[derive(Debug, Clone)]
pub struct PolyhedronGenerators {
    pub vertices: Vec<Vec<Rational>>,
    pub rays: Vec<Vec<Rational>>,
    pub lineality: Vec<Vec<Rational>>,
}

impl PolyhedronGenerators {
    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Enumerates the generators of `{x : a·x ≤ b, c·x = d}`. Equalities are
/// split into opposite inequality pairs before homogenization.
pub fn polyhedron_generators(
    ineqs: &[Inequality],
    eqs: &[(Vec<Rational>, Rational)],
    dim: usize,
) -> PolyhedronGenerators {
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    // homogenized coordinate order: (t, x); constraint b·t - a·x ≥ 0
    for ineq in ineqs {
        let mut row = Vec::with_capacity(dim + 1);
        row.push(ineq.b.clone());
        row.extend(ineq.a.iter().map(|v| -v));
        rows.push(row);
    }
    for (c, d) in eqs {
        let mut row = Vec::with_capacity(dim + 1);
        row.push(d.clone());
        row.extend(c.iter().map(|v| -v));
        rows.push(row.clone());
        rows.push(row.into_iter().map(|v| -v).collect());
    }
    let mut t_row = vec![Rational::zero(); dim + 1];
    t_row[0] = Rational::one();
    rows.push(t_row);

    let cone = dual_description(&rows, dim + 1);
    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    for r in cone.rays {
        let t = &r[0];
        if t.is_positive() {
            let inv = t.recip();
            vertices.push(r[1..].iter().map(|x| x * &inv).collect());
        } else if !vec_is_zero(&r[1..]) {
            rays.push(r[1..].to_vec());
        }
    }
    // homogenized lineality vectors have t = 0 (the t ≥ 0 row kills the rest)
    let lineality: Vec<Vec<Rational>> = cone
        .lineality
        .into_iter()
        .map(|l| {
            debug_assert!(l[0].is_zero());
            l[1..].to_vec()
        })
        .filter(|l| !vec_is_zero(l))
        .collect();
    vertices.sort();
    rays.sort();
    PolyhedronGenerators {
        vertices,
        rays,
        lineality,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn ineq(a: &[i64], b: i64) -> Inequality {
        Inequality::new(a.iter().map(|&v| Rational::from(v)).collect(), int(b))
    }

    #[test]
    fn unit_square_vertices() {
        let ineqs = vec![
            ineq(&[1, 0], 1),
            ineq(&[-1, 0], 1),
            ineq(&[0, 1], 1),
            ineq(&[0, -1], 1),
        ];
        let g = polyhedron_generators(&ineqs, &[], 2);
        assert!(g.is_bounded());
        assert_eq!(g.vertices.len(), 4);
        assert!(g.vertices.contains(&vec![int(1), int(1)]));
        assert!(g.vertices.contains(&vec![int(-1), int(-1)]));
    }

    #[test]
    fn octant_cone_rays() {
        let rows = vec![
            vec![int(1), int(0), int(0)],
            vec![int(0), int(1), int(0)],
            vec![int(0), int(0), int(1)],
        ];
        let c = dual_description(&rows, 3);
        assert!(c.lineality.is_empty());
        assert_eq!(c.rays.len(), 3);
    }

    #[test]
    fn halfspace_keeps_lineality() {
        let rows = vec![vec![int(1), int(0)]];
        let c = dual_description(&rows, 2);
        assert_eq!(c.lineality.len(), 1);
        assert!(c.lineality[0][0].is_zero());
        assert_eq!(c.rays.len(), 1);
        assert!(c.rays[0][0].is_positive());
    }

    #[test]
    fn infeasible_system_has_no_vertices() {
        let ineqs = vec![ineq(&[1], 0), ineq(&[-1], -1)]; // x ≤ 0, x ≥ 1
        let g = polyhedron_generators(&ineqs, &[], 1);
        assert!(g.is_empty());
    }

    #[test]
    fn unbounded_region_reports_ray() {
        let ineqs = vec![ineq(&[-1, 0], 0), ineq(&[0, -1], 0)]; // x, y ≥ 0
        let g = polyhedron_generators(&ineqs, &[], 2);
        assert_eq!(g.vertices, vec![vec![int(0), int(0)]]);
        assert_eq!(g.rays.len(), 2);
    }

    #[test]
    fn equality_slice_of_simplex() {
        // x,y,z ≥ 0, x+y+z = 1: a 2-simplex
        let ineqs = vec![
            ineq(&[-1, 0, 0], 0),
            ineq(&[0, -1, 0], 0),
            ineq(&[0, 0, -1], 0),
        ];
        let eqs = vec![(
            vec![int(1), int(1), int(1)],
            int(1),
        )];
        let g = polyhedron_generators(&ineqs, &eqs, 3);
        assert!(g.is_bounded());
        assert_eq!(g.vertices.len(), 3);
    }

    #[test]
    fn redundant_inequality_changes_nothing() {
        let mut ineqs = vec![
            ineq(&[1, 0], 1),
            ineq(&[-1, 0], 1),
            ineq(&[0, 1], 1),
            ineq(&[0, -1], 1),
        ];
        let base = polyhedron_generators(&ineqs, &[], 2);
        ineqs.push(ineq(&[1, 1], 5));
        let with_extra = polyhedron_generators(&ineqs, &[], 2);
        assert_eq!(base.vertices, with_extra.vertices);
    }

    #[test]
    fn fractional_data_stays_exact() {
        let ineqs = vec![
            Inequality::new(vec![rat(1, 3), int(0)], rat(1, 7)),
            Inequality::new(vec![rat(-1, 3), int(0)], rat(1, 7)),
            Inequality::new(vec![int(0), rat(2, 5)], int(1)),
            Inequality::new(vec![int(0), rat(-2, 5)], int(1)),
        ];
        let g = polyhedron_generators(&ineqs, &[], 2);
        assert_eq!(g.vertices.len(), 4);
        assert!(g.vertices.contains(&vec![rat(3, 7), rat(5, 2)]));
    }
}
