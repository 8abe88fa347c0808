//! Floating-point factorization heuristics: upper-bound evidence for
//! nonnegative and psd rank. Deterministic for a fixed (seed, restarts,
//! tol) on one platform profile; results can be promoted to exact
//! certificates by dyadic rationalization plus exact verification.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::factorize::{verify_factorization, ConeDescriptor, ConeElement, ConeFactorization};
use crate::matrix::{RationalMatrix, SymmetricMatrix};
use crate::rational::Rational;

/// Numeric factorization candidate. For the orthant cone `a_list[i]` and
/// `b_list[j]` are length-k vectors; for the psd cone they are k×k psd
/// matrices stored row-major. `residual` is the max-abs entry error of the
/// realized matrix at output precision.
#[derive(Debug, Clone)]
pub struct NumericFactorization {
    pub cone: ConeDescriptor,
    pub a_list: Vec<Vec<f64>>,
    pub b_list: Vec<Vec<f64>>,
    pub residual: f64,
    pub seed: u64,
}

fn to_f64(m: &RationalMatrix) -> Vec<Vec<f64>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| x.to_f64()).collect())
        .collect()
}

fn restart_rng(seed: u64, restart: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ restart.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Multiplicative-update nonnegative matrix factorization. Returns the
/// first restart reaching `max |WH - M| < tol`.
pub fn nmf_heuristic(
    m: &RationalMatrix,
    k: usize,
    seed: u64,
    restarts: u64,
    tol: f64,
) -> Option<NumericFactorization> {
    assert!(tol > 0.0, "tolerance must be positive");
    let (p, q) = (m.rows(), m.cols());
    let mf = to_f64(m);
    if k == 0 {
        let residual = mf
            .iter()
            .flatten()
            .fold(0.0f64, |acc, &x| acc.max(x.abs()));
        if residual < tol {
            return Some(NumericFactorization {
                cone: ConeDescriptor::orthant(0),
                a_list: vec![Vec::new(); p],
                b_list: vec![Vec::new(); q],
                residual,
                seed,
            });
        }
        return None;
    }
    const ITERS: usize = 2500;
    const EPS: f64 = 1e-12;
    for restart in 0..restarts {
        let mut rng = restart_rng(seed, restart);
        let mut w: Vec<Vec<f64>> = (0..p)
            .map(|_| (0..k).map(|_| rng.gen_range(0.05..1.0)).collect())
            .collect();
        let mut h: Vec<Vec<f64>> = (0..k)
            .map(|_| (0..q).map(|_| rng.gen_range(0.05..1.0)).collect())
            .collect();
        for it in 0..ITERS {
            // H <- H .* (WᵀM) ./ (WᵀWH)
            for t in 0..k {
                for j in 0..q {
                    let num: f64 = (0..p).map(|i| w[i][t] * mf[i][j]).sum();
                    let den: f64 = (0..p)
                        .map(|i| w[i][t] * (0..k).map(|s| w[i][s] * h[s][j]).sum::<f64>())
                        .sum::<f64>()
                        + EPS;
                    h[t][j] *= num / den;
                }
            }
            // W <- W .* (MHᵀ) ./ (WHHᵀ)
            for i in 0..p {
                for t in 0..k {
                    let num: f64 = (0..q).map(|j| mf[i][j] * h[t][j]).sum();
                    let den: f64 = (0..q)
                        .map(|j| h[t][j] * (0..k).map(|s| w[i][s] * h[s][j]).sum::<f64>())
                        .sum::<f64>()
                        + EPS;
                    w[i][t] *= num / den;
                }
            }
            if it % 25 == 24 {
                let res = nmf_residual(&w, &h, &mf);
                if res < tol {
                    return Some(NumericFactorization {
                        cone: ConeDescriptor::orthant(k),
                        a_list: w,
                        b_list: (0..q).map(|j| (0..k).map(|t| h[t][j]).collect()).collect(),
                        residual: res,
                        seed,
                    });
                }
            }
        }
    }
    None
}

fn nmf_residual(w: &[Vec<f64>], h: &[Vec<f64>], mf: &[Vec<f64>]) -> f64 {
    let k = w.first().map_or(0, |r| r.len());
    let mut res = 0.0f64;
    for (i, row) in mf.iter().enumerate() {
        for (j, &target) in row.iter().enumerate() {
            let v: f64 = (0..k).map(|t| w[i][t] * h[t][j]).sum();
            res = res.max((v - target).abs());
        }
    }
    res
}

/// Factored local search for a size-k psd factorization: parametrize
/// `A_i = U_i U_iᵀ`, `B_j = V_j V_jᵀ` and minimize the squared residual by
/// gradient descent with backtracking line search.
pub fn psd_heuristic(
    m: &RationalMatrix,
    k: usize,
    seed: u64,
    restarts: u64,
    tol: f64,
) -> Option<NumericFactorization> {
    assert!(tol > 0.0, "tolerance must be positive");
    let (p, q) = (m.rows(), m.cols());
    let mf = to_f64(m);
    if k == 0 {
        let residual = mf
            .iter()
            .flatten()
            .fold(0.0f64, |acc, &x| acc.max(x.abs()));
        if residual < tol {
            return Some(NumericFactorization {
                cone: ConeDescriptor::psd(0),
                a_list: vec![Vec::new(); p],
                b_list: vec![Vec::new(); q],
                residual,
                seed,
            });
        }
        return None;
    }
    const ITERS: usize = 1200;
    for restart in 0..restarts {
        let mut rng = restart_rng(seed, restart.wrapping_add(0x5bd1_e995));
        let mut us: Vec<Vec<f64>> = (0..p)
            .map(|_| (0..k * k).map(|_| rng.gen_range(-1.0..1.0)).collect())
            .collect();
        let mut vs: Vec<Vec<f64>> = (0..q)
            .map(|_| (0..k * k).map(|_| rng.gen_range(-1.0..1.0)).collect())
            .collect();
        let mut step = 1e-2;
        let mut obj = psd_objective(&us, &vs, &mf, k);
        for _ in 0..ITERS {
            let (gu, gv) = psd_gradient(&us, &vs, &mf, k);
            let gnorm: f64 = gu.iter().flatten().map(|g| g * g).sum::<f64>()
                + gv.iter().flatten().map(|g| g * g).sum::<f64>();
            if gnorm < 1e-24 {
                break;
            }
            // backtracking line search on the full gradient step
            step *= 2.0;
            let mut accepted = false;
            for _ in 0..40 {
                let nus: Vec<Vec<f64>> = us
                    .iter()
                    .zip(&gu)
                    .map(|(u, g)| u.iter().zip(g).map(|(x, gx)| x - step * gx).collect())
                    .collect();
                let nvs: Vec<Vec<f64>> = vs
                    .iter()
                    .zip(&gv)
                    .map(|(v, g)| v.iter().zip(g).map(|(x, gx)| x - step * gx).collect())
                    .collect();
                let nobj = psd_objective(&nus, &nvs, &mf, k);
                if nobj < obj - 1e-4 * step * gnorm {
                    us = nus;
                    vs = nvs;
                    obj = nobj;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if !accepted {
                break;
            }
            if obj < tol * tol {
                let res = psd_residual(&us, &vs, &mf, k);
                if res < tol {
                    let a_list = us.iter().map(|u| gram(u, k)).collect();
                    let b_list = vs.iter().map(|v| gram(v, k)).collect();
                    return Some(NumericFactorization {
                        cone: ConeDescriptor::psd(k),
                        a_list,
                        b_list,
                        residual: res,
                        seed,
                    });
                }
            }
        }
    }
    None
}

fn gram(u: &[f64], k: usize) -> Vec<f64> {
    let mut g = vec![0.0; k * k];
    for i in 0..k {
        for j in 0..k {
            g[i * k + j] = (0..k).map(|t| u[i * k + t] * u[j * k + t]).sum();
        }
    }
    g
}

fn psd_entry(u: &[f64], v: &[f64], k: usize) -> f64 {
    // <UUᵀ, VVᵀ> = ||UᵀV||_F²
    let mut acc = 0.0;
    for a in 0..k {
        for b in 0..k {
            let dot: f64 = (0..k).map(|t| u[t * k + a] * v[t * k + b]).sum();
            acc += dot * dot;
        }
    }
    acc
}

fn psd_objective(us: &[Vec<f64>], vs: &[Vec<f64>], mf: &[Vec<f64>], k: usize) -> f64 {
    let mut acc = 0.0;
    for (i, u) in us.iter().enumerate() {
        for (j, v) in vs.iter().enumerate() {
            let r = psd_entry(u, v, k) - mf[i][j];
            acc += r * r;
        }
    }
    acc
}

fn psd_residual(us: &[Vec<f64>], vs: &[Vec<f64>], mf: &[Vec<f64>], k: usize) -> f64 {
    let mut res = 0.0f64;
    for (i, u) in us.iter().enumerate() {
        for (j, v) in vs.iter().enumerate() {
            res = res.max((psd_entry(u, v, k) - mf[i][j]).abs());
        }
    }
    res
}

fn psd_gradient(
    us: &[Vec<f64>],
    vs: &[Vec<f64>],
    mf: &[Vec<f64>],
    k: usize,
) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let grams_v: Vec<Vec<f64>> = vs.iter().map(|v| gram(v, k)).collect();
    let grams_u: Vec<Vec<f64>> = us.iter().map(|u| gram(u, k)).collect();
    let mut gu = vec![vec![0.0; k * k]; us.len()];
    let mut gv = vec![vec![0.0; k * k]; vs.len()];
    for (i, u) in us.iter().enumerate() {
        for (j, v) in vs.iter().enumerate() {
            let r = psd_entry(u, v, k) - mf[i][j];
            if r == 0.0 {
                continue;
            }
            // d/dU of r² is 4 r (VVᵀ) U
            for a in 0..k {
                for b in 0..k {
                    let mut du = 0.0;
                    let mut dv = 0.0;
                    for t in 0..k {
                        du += grams_v[j][a * k + t] * u[t * k + b];
                        dv += grams_u[i][a * k + t] * v[t * k + b];
                    }
                    gu[i][a * k + b] += 4.0 * r * du;
                    gv[j][a * k + b] += 4.0 * r * dv;
                }
            }
        }
    }
    (gu, gv)
}

/// Attempts to promote a numeric factorization to an exact one by rounding
/// every entry to the nearest dyadic rational with the given precision and
/// verifying exactly.
pub fn promote_to_exact(
    num: &NumericFactorization,
    m: &RationalMatrix,
    bits: u32,
) -> Option<ConeFactorization> {
    let rationalize_vec = |v: &[f64]| -> Option<Vec<Rational>> {
        v.iter().map(|&x| Rational::from_f64_dyadic(x, bits)).collect()
    };
    let k = num.cone.size;
    let element = |flat: &[f64]| -> Option<ConeElement> {
        match num.cone.kind {
            crate::factorize::ConeKind::Orthant => {
                Some(ConeElement::Vector(rationalize_vec(flat)?))
            }
            _ => {
                let vals = rationalize_vec(flat)?;
                let mut s = SymmetricMatrix::zeros(k);
                for i in 0..k {
                    for j in i..k {
                        // symmetrize the rounded entries
                        let v = (&vals[i * k + j] + &vals[j * k + i]) / Rational::from(2);
                        s.set(i, j, v);
                    }
                }
                Some(ConeElement::Matrix(s))
            }
        }
    };
    let a_list: Option<Vec<ConeElement>> = num.a_list.iter().map(|v| element(v)).collect();
    let b_list: Option<Vec<ConeElement>> = num.b_list.iter().map(|v| element(v)).collect();
    let f = ConeFactorization {
        cone: num.cone,
        a_list: a_list?,
        b_list: b_list?,
    };
    match verify_factorization(m, &f) {
        Ok(true) => Some(f),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;

    #[test]
    fn nmf_finds_rank_one() {
        let m = RationalMatrix::from_i64(&[&[2, 4], &[1, 2], &[3, 6]]);
        let f = nmf_heuristic(&m, 1, 0, 10, 1e-8).expect("rank-one NMF");
        assert!(f.residual < 1e-8);
    }

    #[test]
    fn nmf_hexagon_at_five_succeeds_and_three_fails() {
        let s = gallery::hexagon_slack();
        assert!(nmf_heuristic(&s, 5, 0, 50, 1e-8).is_some());
        assert!(nmf_heuristic(&s, 3, 0, 10, 1e-8).is_none());
    }

    #[test]
    fn nmf_is_deterministic() {
        let s = gallery::hexagon_slack();
        let a = nmf_heuristic(&s, 5, 7, 50, 1e-8).unwrap();
        let b = nmf_heuristic(&s, 5, 7, 50, 1e-8).unwrap();
        assert_eq!(a.a_list, b.a_list);
        assert_eq!(a.residual, b.residual);
    }

    #[test]
    fn psd_heuristic_squared_differences() {
        let m = gallery::m_matrix(5);
        let f = psd_heuristic(&m, 2, 0, 30, 1e-7).expect("psd rank two reachable");
        assert!(f.residual < 1e-7);
    }

    #[test]
    fn psd_heuristic_rejects_impossible_size() {
        // [[0,1],[1,0]] has psd rank 2; size 1 must fail
        let m = RationalMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert!(psd_heuristic(&m, 1, 0, 10, 1e-7).is_none());
    }

    #[test]
    fn scalar_cases() {
        let m = RationalMatrix::from_i64(&[&[5]]);
        assert!(psd_heuristic(&m, 1, 0, 5, 1e-9).is_some());
        let z = RationalMatrix::zeros(2, 2);
        assert!(nmf_heuristic(&z, 0, 0, 1, 1e-9).is_some());
    }
}
