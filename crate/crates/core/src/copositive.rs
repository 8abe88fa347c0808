//! Exact copositivity testing by enumeration of KKT support sets.
//!
//! Decides `min { xᵀMx : x ≥ 0, Σx = 1 } ≥ 0`. The minimum is attained at a
//! KKT point of some face of the simplex, so it suffices to inspect, for
//! every support set S, the exact solutions of `M_S u = λ·1, Σu = 1`
//! together with all simplex vertices. Every witness returned is re-checked
//! exactly before being surfaced.

use crate::error::{Error, Result};
use crate::linalg::solve_affine;
use crate::matrix::{RationalMatrix, SymmetricMatrix};
use crate::rational::Rational;

/// Hard cap on the KKT enumeration (2^dim support sets).
pub const DEFAULT_COPOSITIVITY_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CopositivityVerdict {
    Copositive,
    NotCopositive { witness: Vec<Rational> },
    /// Reserved for faces whose non-isolated minimum cannot be certified
    /// either way; the exact feasibility search below decides every face
    /// arising at dim ≤ 8, so current callers never observe this.
    Degenerate,
}

impl CopositivityVerdict {
    pub fn is_copositive(&self) -> bool {
        matches!(self, CopositivityVerdict::Copositive)
    }

    pub fn witness(&self) -> Option<&[Rational]> {
        match self {
            CopositivityVerdict::NotCopositive { witness } => Some(witness),
            _ => None,
        }
    }
}

pub fn copositive_check_exact(m: &SymmetricMatrix) -> Result<CopositivityVerdict> {
    copositive_check_with_limit(m, DEFAULT_COPOSITIVITY_LIMIT)
}

pub fn copositive_check_with_limit(
    m: &SymmetricMatrix,
    limit: usize,
) -> Result<CopositivityVerdict> {
    let n = m.dim();
    if n > limit {
        return Err(Error::DimensionTooLarge(n, limit));
    }
    if n == 0 {
        return Ok(CopositivityVerdict::Copositive);
    }

    // simplex vertices e_i: value M_ii
    for i in 0..n {
        if m.get(i, i).is_negative() {
            let mut w = vec![Rational::zero(); n];
            w[i] = Rational::one();
            return Ok(certified(m, w));
        }
    }

    // supports of size >= 2, by increasing size then lexicographic order
    let mut supports: Vec<Vec<usize>> = Vec::new();
    for mask in 1u64..(1 << n) {
        if mask.count_ones() >= 2 {
            supports.push((0..n).filter(|i| mask >> i & 1 == 1).collect());
        }
    }
    supports.sort_by_key(|s| (s.len(), s.clone()));

    for s in supports {
        let k = s.len();
        // KKT system on the face: M_S u = λ·1, Σ u = 1, unknowns (u, λ)
        let mut rows = Vec::with_capacity(k + 1);
        for &i in &s {
            let mut row: Vec<Rational> = s.iter().map(|&j| m.get(i, j).clone()).collect();
            row.push(Rational::from(-1));
            rows.push(row);
        }
        let mut last = vec![Rational::one(); k];
        last.push(Rational::zero());
        rows.push(last);
        let sys = RationalMatrix::from_rows(rows);
        let mut rhs = vec![Rational::zero(); k];
        rhs.push(Rational::one());

        let Some((particular, kernel)) = solve_affine(&sys, &rhs) else {
            continue; // no KKT point in the relative interior of this face
        };
        // λ is the face candidate value; kernel directions cannot change it
        let lambda = particular[k].clone();
        debug_assert!((0..kernel.cols()).all(|c| kernel[(k, c)].is_zero()));
        if !lambda.is_negative() {
            continue;
        }
        let u_part: Vec<Rational> = particular[..k].to_vec();
        let u = if kernel.cols() == 0 {
            if u_part.iter().all(|x| !x.is_negative()) {
                Some(u_part)
            } else {
                None
            }
        } else {
            // non-isolated face minimum: look for a nonnegative point of the
            // affine solution set {u_part + W t} exactly
            nonnegative_point_in_affine_set(&u_part, &kernel)
        };
        if let Some(u) = u {
            let mut w = vec![Rational::zero(); n];
            for (a, &i) in s.iter().enumerate() {
                w[i] = u[a].clone();
            }
            return Ok(certified(m, w));
        }
    }

    Ok(CopositivityVerdict::Copositive)
}

/// Exact witness check; a candidate that fails it would indicate a kernel
/// bug, so fail loudly rather than report a bogus certificate.
fn certified(m: &SymmetricMatrix, witness: Vec<Rational>) -> CopositivityVerdict {
    assert!(witness.iter().all(|x| !x.is_negative()));
    assert!(m.quadratic_form(&witness).is_negative());
    CopositivityVerdict::NotCopositive { witness }
}

/// Finds `t` with `u0 + W t ≥ 0` by Fourier–Motzkin elimination, then
/// back-substitutes a point. Dimensions here are at most `limit - 1`.
fn nonnegative_point_in_affine_set(
    u0: &[Rational],
    kernel: &RationalMatrix,
) -> Option<Vec<Rational>> {
    let d = kernel.cols();
    // constraints: Σ_j W_ij t_j + u0_i ≥ 0  (only rows over the support,
    // kernel has a trailing λ row which is identically zero there)
    let cons: Vec<(Vec<Rational>, Rational)> = (0..u0.len())
        .map(|i| {
            (
                (0..d).map(|j| kernel[(i, j)].clone()).collect(),
                u0[i].clone(),
            )
        })
        .collect();
    let t = fm_feasible_point(cons, d)?;
    let mut u = u0.to_vec();
    for i in 0..u.len() {
        for j in 0..d {
            let add = &kernel[(i, j)] * &t[j];
            u[i] += add;
        }
    }
    debug_assert!(u.iter().all(|x| !x.is_negative()));
    Some(u)
}

/// Fourier–Motzkin feasibility for `coefᵀ t + c ≥ 0`; returns one exact
/// feasible point when the system is solvable.
fn fm_feasible_point(
    cons: Vec<(Vec<Rational>, Rational)>,
    dims: usize,
) -> Option<Vec<Rational>> {
    if dims == 0 {
        return if cons.iter().all(|(_, c)| !c.is_negative()) {
            Some(Vec::new())
        } else {
            None
        };
    }
    let var = dims - 1;
    let mut pos = Vec::new(); // t_var >= bound
    let mut neg = Vec::new(); // t_var <= bound
    let mut rest = Vec::new();
    for (coef, c) in &cons {
        let a = &coef[var];
        if a.is_zero() {
            rest.push((coef[..var].to_vec(), c.clone()));
        } else if a.is_positive() {
            pos.push((coef.clone(), c.clone()));
        } else {
            neg.push((coef.clone(), c.clone()));
        }
    }
    let mut reduced = rest.clone();
    for (pc, pk) in &pos {
        for (nc, nk) in &neg {
            // scale so the var coefficients cancel: p/(p_var) + n/(-n_var)
            let pa = &pc[var];
            let na = &nc[var];
            let mut coef = Vec::with_capacity(var);
            for j in 0..var {
                coef.push(&(&pc[j] / pa) - &(&nc[j] / na));
            }
            let c = &(pk / pa) - &(nk / na);
            reduced.push((coef, c));
        }
    }
    let t_rest = fm_feasible_point(reduced, var)?;
    // bounds on t_var given t_rest
    let eval = |coef: &[Rational], c: &Rational| -> Rational {
        let mut v = c.clone();
        for j in 0..var {
            v += &(&coef[j] * &t_rest[j]);
        }
        v
    };
    let mut lower: Option<Rational> = None;
    for (coef, c) in &pos {
        let b = -&eval(coef, c) / &coef[var];
        lower = Some(match lower {
            Some(l) => l.max(b),
            None => b,
        });
    }
    let mut upper: Option<Rational> = None;
    for (coef, c) in &neg {
        let b = -&eval(coef, c) / &coef[var];
        upper = Some(match upper {
            Some(u) => u.min(b),
            None => b,
        });
    }
    let t_var = match (lower, upper) {
        (Some(l), Some(u)) => {
            if l > u {
                return None;
            }
            (&l + &u) / Rational::from(2)
        }
        (Some(l), None) => l,
        (None, Some(u)) => u,
        (None, None) => Rational::zero(),
    };
    let mut t = t_rest;
    t.push(t_var);
    Some(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psd::psd_check_exact;

    fn horn_form() -> SymmetricMatrix {
        SymmetricMatrix::from_i64(&[
            &[1, 1, -1, -1, 1],
            &[1, 1, 1, -1, -1],
            &[-1, 1, 1, 1, -1],
            &[-1, -1, 1, 1, 1],
            &[1, -1, -1, 1, 1],
        ])
    }

    #[test]
    fn horn_form_is_copositive() {
        let v = copositive_check_exact(&horn_form()).unwrap();
        assert!(v.is_copositive());
    }

    #[test]
    fn horn_form_is_not_psd() {
        assert!(!psd_check_exact(&horn_form()));
    }

    #[test]
    fn negated_identity_has_vertex_witness() {
        let m = SymmetricMatrix::from_i64(&[&[-1, 0], &[0, -1]]);
        let v = copositive_check_exact(&m).unwrap();
        let w = v.witness().expect("witness");
        assert_eq!(w[0], Rational::one());
        assert!(w[1].is_zero());
    }

    #[test]
    fn psd_implies_copositive() {
        let g = RationalMatrix::from_i64(&[&[1, -2, 0, 3], &[2, 1, 1, 0], &[0, 1, -1, 1]]);
        let gram = g.transpose().mul(&g).unwrap();
        let s = SymmetricMatrix::from_dense(&gram).unwrap();
        assert!(psd_check_exact(&s));
        assert!(copositive_check_exact(&s).unwrap().is_copositive());
    }

    #[test]
    fn indefinite_off_diagonal_witness_is_exact() {
        // copositive despite negative entries
        let m = SymmetricMatrix::from_i64(&[&[1, -1], &[-1, 1]]);
        assert!(copositive_check_exact(&m).unwrap().is_copositive());
        // but scaling one diagonal down breaks it
        let bad = SymmetricMatrix::from_i64(&[&[1, -3], &[-3, 1]]);
        let v = copositive_check_exact(&bad).unwrap();
        let w = v.witness().expect("witness");
        assert!(bad.quadratic_form(w).is_negative());
    }

    #[test]
    fn dimension_guard() {
        let m = SymmetricMatrix::zeros(9);
        assert_eq!(
            copositive_check_exact(&m),
            Err(Error::DimensionTooLarge(9, 8))
        );
        assert!(copositive_check_with_limit(&m, 9).unwrap().is_copositive());
    }
}
