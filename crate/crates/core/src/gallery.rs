//! Canonical worked examples used by tests and the `examples` CLI command:
//! hexagons, cross-polytopes, the squared-difference matrices, the C5
//! copositivity data and rational circle points.

use crate::dd::Inequality;
use crate::factorize::{ConeDescriptor, ConeElement, ConeFactorization};
use crate::matrix::{RationalMatrix, SymmetricMatrix};
use crate::polytope::Polytope;
use crate::rational::{rat, Rational};

fn pt(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&v| Rational::from(v)).collect()
}

fn ineq(a: &[i64], b: i64) -> Inequality {
    Inequality::new(pt(a), Rational::from(b))
}

/// Rational hexagon affinely equivalent to the regular one: its canonical
/// slack matrix is exactly the classical 6×6 circulant with first row
/// (0,0,1,2,2,1). Vertices are in cyclic order and facet j is the edge
/// through vertices j-1 and j.
pub fn regular_hexagon() -> Polytope {
    let vertices = vec![
        pt(&[1, 0]),
        pt(&[1, 1]),
        pt(&[0, 1]),
        pt(&[-1, 0]),
        pt(&[-1, -1]),
        pt(&[0, -1]),
    ];
    let facets = vec![
        ineq(&[1, -1], 1),
        ineq(&[1, 0], 1),
        ineq(&[0, 1], 1),
        ineq(&[-1, 1], 1),
        ineq(&[-1, 0], 1),
        ineq(&[0, -1], 1),
    ];
    Polytope::from_v_and_h(vertices, facets).expect("hexagon data is consistent")
}

/// The canonical slack matrix of the regular hexagon.
pub fn hexagon_slack() -> RationalMatrix {
    RationalMatrix::from_i64(&[
        &[0, 0, 1, 2, 2, 1],
        &[1, 0, 0, 1, 2, 2],
        &[2, 1, 0, 0, 1, 2],
        &[2, 2, 1, 0, 0, 1],
        &[1, 2, 2, 1, 0, 0],
        &[0, 1, 2, 2, 1, 0],
    ])
}

/// The explicit size-5 nonnegative factorization of the hexagon slack
/// matrix: rows of A pair with vertices, columns of B with facets.
pub fn hexagon_factorization() -> ConeFactorization {
    let a = RationalMatrix::from_i64(&[
        &[1, 0, 1, 0, 0],
        &[1, 0, 0, 0, 1],
        &[0, 0, 0, 1, 2],
        &[0, 1, 0, 0, 1],
        &[0, 1, 1, 0, 0],
        &[0, 0, 2, 1, 0],
    ]);
    let b = RationalMatrix::from_i64(&[
        &[0, 0, 0, 1, 2, 1],
        &[1, 2, 1, 0, 0, 0],
        &[0, 0, 1, 1, 0, 0],
        &[0, 1, 0, 0, 1, 0],
        &[1, 0, 0, 0, 0, 1],
    ]);
    ConeFactorization {
        cone: ConeDescriptor::orthant(5),
        a_list: (0..6).map(|i| ConeElement::Vector(a.row_vec(i))).collect(),
        b_list: (0..6).map(|j| ConeElement::Vector(b.col_vec(j))).collect(),
    }
}

/// The irregular hexagon with vertices (0,-1),(1,-1),(2,0),(1,3),(0,2),
/// (-1,0); facet j is the edge through vertices j and j+1, scaled to
/// primitive integer data, so the vertex×facet slack is the transpose of
/// [`irregular_hexagon_slack`].
pub fn irregular_hexagon() -> Polytope {
    let vertices = irregular_hexagon_vertices();
    let facets = vec![
        ineq(&[0, -1], 1),  // edge v1-v2
        ineq(&[1, -1], 2),  // edge v2-v3
        ineq(&[3, 1], 6),   // edge v3-v4
        ineq(&[-1, 1], 2),  // edge v4-v5
        ineq(&[-2, 1], 2),  // edge v5-v6
        ineq(&[-1, -1], 1), // edge v6-v1
    ];
    Polytope::from_v_and_h(vertices, facets).expect("irregular hexagon data is consistent")
}

pub fn irregular_hexagon_vertices() -> Vec<Vec<Rational>> {
    vec![
        pt(&[0, -1]),
        pt(&[1, -1]),
        pt(&[2, 0]),
        pt(&[1, 3]),
        pt(&[0, 2]),
        pt(&[-1, 0]),
    ]
}

/// The 6×6 slack matrix of the irregular hexagon with first row
/// (0,0,1,4,3,1): rows run over the six edge inequalities in cyclic order,
/// columns over the six vertices. Cone ranks are invariant under
/// transposition, so this orientation serves all rank computations.
pub fn irregular_hexagon_slack() -> RationalMatrix {
    RationalMatrix::from_i64(&[
        &[0, 0, 1, 4, 3, 1],
        &[1, 0, 0, 4, 4, 3],
        &[7, 4, 0, 0, 4, 9],
        &[3, 4, 4, 0, 0, 1],
        &[3, 5, 6, 1, 0, 0],
        &[0, 1, 3, 5, 3, 0],
    ])
}

/// Cross-polytope: convex hull of `±e_i`, cut out by the 2^n inequalities
/// with ±1 coefficients.
pub fn cross_polytope(n: usize) -> Polytope {
    assert!(n >= 1 && n <= 16);
    let mut vertices = Vec::with_capacity(2 * n);
    for i in 0..n {
        for s in [1i64, -1] {
            let mut v = vec![Rational::zero(); n];
            v[i] = Rational::from(s);
            vertices.push(v);
        }
    }
    let mut facets = Vec::with_capacity(1 << n);
    for mask in 0u32..(1 << n) {
        let a: Vec<Rational> = (0..n)
            .map(|i| Rational::from(if mask >> i & 1 == 1 { -1i64 } else { 1 }))
            .collect();
        facets.push(Inequality::new(a, Rational::one()));
    }
    Polytope::from_v_and_h(vertices, facets).expect("cross-polytope data is consistent")
}

/// `(i-j)^2` over a 1-based n×n grid; rank 3 for every n ≥ 3.
pub fn m_matrix(n: usize) -> RationalMatrix {
    RationalMatrix::from_rows(
        (1..=n as i64)
            .map(|i| {
                (1..=n as i64)
                    .map(|j| Rational::from((i - j) * (i - j)))
                    .collect()
            })
            .collect(),
    )
}

/// `i-j` over a 1-based n×n grid; rank 2 for every n ≥ 2, and its entrywise
/// square is `m_matrix(n)`.
pub fn e_matrix(n: usize) -> RationalMatrix {
    RationalMatrix::from_rows(
        (1..=n as i64)
            .map(|i| (1..=n as i64).map(|j| Rational::from(i - j)).collect())
            .collect(),
    )
}

/// The classical 5×5 Horn form: copositive but neither psd nor entrywise
/// nonnegative.
pub fn horn_form() -> SymmetricMatrix {
    SymmetricMatrix::from_i64(&[
        &[1, 1, -1, -1, 1],
        &[1, 1, 1, -1, -1],
        &[-1, 1, 1, 1, -1],
        &[-1, -1, 1, 1, 1],
        &[1, -1, -1, 1, 1],
    ])
}

/// The 6×6 copositive certificate matrix for the odd-cycle facet of the
/// C5 stable set polytope.
pub fn c5_odd_cycle_matrix() -> SymmetricMatrix {
    SymmetricMatrix::from_i64(&[
        &[2, -1, -1, -1, -1, -1],
        &[-1, 1, 1, 0, 0, 1],
        &[-1, 1, 1, 1, 0, 0],
        &[-1, 0, 1, 1, 1, 0],
        &[-1, 0, 0, 1, 1, 1],
        &[-1, 1, 0, 0, 1, 1],
    ])
}

/// The 5×5 circulant block of the odd-cycle matrix; twice this block minus
/// the all-ones matrix is the Horn form.
pub fn c5_circulant_block() -> SymmetricMatrix {
    SymmetricMatrix::from_i64(&[
        &[1, 1, 0, 0, 1],
        &[1, 1, 1, 0, 0],
        &[0, 1, 1, 1, 0],
        &[0, 0, 1, 1, 1],
        &[1, 0, 0, 1, 1],
    ])
}

/// Rational point on the unit circle at tangent-half-angle parameter `t`:
/// `((1-t²)/(1+t²), 2t/(1+t²))`.
pub fn circle_point(t: &Rational) -> (Rational, Rational) {
    let t2 = t * t;
    let den = Rational::one() + t2.clone();
    let x = &(Rational::one() - t2) / &den;
    let y = &(&Rational::from(2) * t) / &den;
    (x, y)
}

/// Convex polygon with `n` vertices on the rational unit circle,
/// containing the origin in its interior for n ≥ 3. Not metrically regular
/// (that needs irrational coordinates); all quantities asserted about
/// regular n-gons here (slack rank, face counts, log bounds) depend only
/// on the combinatorics shared by every convex n-gon.
pub fn convex_ngon(n: usize) -> Polytope {
    assert!(n >= 3);
    let mut params: Vec<Rational> = vec![Rational::zero()];
    let mut k = 1i64;
    while params.len() < n - 1 {
        params.push(Rational::from(k));
        if params.len() < n - 1 {
            params.push(Rational::from(-k));
        }
        k += 1;
    }
    let mut points: Vec<Vec<Rational>> = params
        .iter()
        .map(|t| {
            let (x, y) = circle_point(t);
            vec![x, y]
        })
        .collect();
    points.push(pt(&[-1, 0]));
    Polytope::from_vertices(points).expect("circle points are in convex position")
}

pub fn square() -> Polytope {
    Polytope::from_v_and_h(
        vec![pt(&[1, 1]), pt(&[-1, 1]), pt(&[-1, -1]), pt(&[1, -1])],
        vec![
            ineq(&[1, 0], 1),
            ineq(&[0, 1], 1),
            ineq(&[-1, 0], 1),
            ineq(&[0, -1], 1),
        ],
    )
    .expect("square data is consistent")
}

pub fn cube() -> Polytope {
    let seg = Polytope::from_vertices(vec![pt(&[-1]), pt(&[1])]).expect("segment");
    square().product(&seg).expect("cube")
}

/// The psd factor maps of the unit disk identity
/// `⟨A(x1,y1), B(x2,y2)⟩ = 1 - x1 x2 - y1 y2` for circle points.
pub fn disk_factor_a(x: &Rational, y: &Rational) -> SymmetricMatrix {
    let mut s = SymmetricMatrix::zeros(2);
    s.set(0, 0, Rational::one() + x.clone());
    s.set(0, 1, y.clone());
    s.set(1, 1, Rational::one() - x.clone());
    s
}

pub fn disk_factor_b(x: &Rational, y: &Rational) -> SymmetricMatrix {
    let h = rat(1, 2);
    let mut s = SymmetricMatrix::zeros(2);
    s.set(0, 0, &(Rational::one() - x.clone()) * &h);
    s.set(0, 1, &(-y) * &h);
    s.set(1, 1, &(Rational::one() + x.clone()) * &h);
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorize::verify_factorization;
    use crate::linalg::rat_rank;

    #[test]
    fn hexagon_canonical_slack_is_the_classic_matrix() {
        let h = regular_hexagon();
        let s = h.slack_matrix(true).unwrap();
        assert_eq!(s.matrix, hexagon_slack());
    }

    #[test]
    fn hexagon_factorization_verifies() {
        assert!(verify_factorization(&hexagon_slack(), &hexagon_factorization()).unwrap());
    }

    #[test]
    fn irregular_hexagon_slack_orientation() {
        let h = irregular_hexagon();
        let s = h.slack_matrix(false).unwrap();
        assert_eq!(s.matrix.transpose(), irregular_hexagon_slack());
    }

    #[test]
    fn hexagons_roundtrip_through_dd() {
        for h in [regular_hexagon(), irregular_hexagon()] {
            let from_v = Polytope::from_vertices(h.vertices().to_vec()).unwrap();
            assert!(from_v.vertex_set_matches(h.vertices()));
            assert!(from_v.facet_set_matches(h.facets()));
            let from_h = Polytope::from_inequalities(h.facets().to_vec()).unwrap();
            assert!(from_h.vertex_set_matches(h.vertices()));
        }
    }

    #[test]
    fn m_matrix_rank_three() {
        for n in 4..=10 {
            assert_eq!(rat_rank(&m_matrix(n)), 3, "rank(M_{n})");
        }
        assert_eq!(rat_rank(&e_matrix(7)), 2);
    }

    #[test]
    fn ngon_slack_rank_three() {
        for n in [4usize, 5, 6, 7, 9, 12] {
            let g = convex_ngon(n);
            assert_eq!(g.vertices().len(), n);
            assert_eq!(g.facets().len(), n);
            let s = g.slack_matrix(false).unwrap();
            assert_eq!(rat_rank(&s.matrix), 3, "slack rank of {n}-gon");
        }
    }

    #[test]
    fn ngon_contains_origin_for_polar_use() {
        for n in [4usize, 6, 8] {
            assert!(convex_ngon(n).origin_interior());
        }
    }

    #[test]
    fn disk_identity_on_circle_points() {
        let p1 = circle_point(&rat(1, 2));
        let p2 = circle_point(&rat(-3, 5));
        let a = disk_factor_a(&p1.0, &p1.1);
        let b = disk_factor_b(&p2.0, &p2.1);
        let expected = Rational::one() - &(&p1.0 * &p2.0) - &(&p1.1 * &p2.1);
        assert_eq!(a.trace_inner(&b), expected);
    }
}
