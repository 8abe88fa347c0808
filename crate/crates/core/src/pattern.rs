//! Exact decision search for `rank_+(M) ≤ k` by branch and bound over zero
//! patterns.
//!
//! Any size-k nonnegative factorization induces k zero-free rectangles of
//! `supp(M)` that jointly cover it, and enlarging each to a maximal
//! rectangle only relaxes the support constraint. The search therefore
//! enumerates multisets of k maximal rectangles covering the support and
//! decides each induced bilinear system exactly: forced values are
//! propagated from cells with a single unknown term (with per-rectangle
//! scaling normalized away), complemented by a complete case split on which
//! entry of an undetermined rectangle column is the first positive one.
//! Patterns that escape both propagation and an alternating exact solve
//! surface as `BudgetExceeded`, never as a guess.

use std::collections::BTreeSet;

use crate::factorize::{verify_factorization, ConeDescriptor, ConeElement, ConeFactorization};
use crate::matrix::RationalMatrix;
use crate::rational::Rational;

/// Tri-state outcome: `None` is an exact non-existence proof (every pattern
/// refuted), `BudgetExceeded` means some pattern could not be decided
/// within the node budget.
#[derive(Debug, Clone)]
pub enum PatternSearchOutcome {
    Found(Box<ConeFactorization>),
    None,
    BudgetExceeded,
}

impl PatternSearchOutcome {
    pub fn found(&self) -> Option<&ConeFactorization> {
        match self {
            PatternSearchOutcome::Found(f) => Some(f),
            _ => None,
        }
    }

    pub fn is_none(&self) -> bool {
        matches!(self, PatternSearchOutcome::None)
    }
}

/// All maximal all-ones submatrices (row set, column set) of a 0/1 matrix,
/// in canonical order. Enumerates closures of row subsets, so the smaller
/// side must stay below ~20.
pub fn maximal_rectangles(supp: &[Vec<bool>]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let p = supp.len();
    let q = if p == 0 { 0 } else { supp[0].len() };
    if p == 0 || q == 0 {
        return Vec::new();
    }
    if q < p {
        let t: Vec<Vec<bool>> = (0..q)
            .map(|j| (0..p).map(|i| supp[i][j]).collect())
            .collect();
        let mut rects: Vec<(Vec<usize>, Vec<usize>)> = maximal_rectangles(&t)
            .into_iter()
            .map(|(r, c)| (c, r))
            .collect();
        rects.sort();
        rects.dedup();
        return rects;
    }
    assert!(p <= 20, "rectangle enumeration limited to 2^20 row subsets");
    let mut out: BTreeSet<(Vec<usize>, Vec<usize>)> = BTreeSet::new();
    for mask in 1u32..(1u32 << p) {
        let rows: Vec<usize> = (0..p).filter(|i| mask >> i & 1 == 1).collect();
        let cols: Vec<usize> = (0..q)
            .filter(|&j| rows.iter().all(|&i| supp[i][j]))
            .collect();
        if cols.is_empty() {
            continue;
        }
        // closure: all rows with ones throughout cols
        let closed_rows: Vec<usize> = (0..p)
            .filter(|&i| cols.iter().all(|&j| supp[i][j]))
            .collect();
        out.insert((closed_rows, cols));
    }
    out.into_iter().collect()
}

/// Exact decision for `rank_+(M) ≤ k`.
pub fn orthant_pattern_search(m: &RationalMatrix, k: usize, budget: u64) -> PatternSearchOutcome {
    if !m.is_nonnegative() {
        return PatternSearchOutcome::None;
    }
    let (p, q) = (m.rows(), m.cols());
    if m.is_zero() {
        let f = ConeFactorization {
            cone: ConeDescriptor::orthant(k),
            a_list: vec![ConeElement::Vector(vec![Rational::zero(); k]); p],
            b_list: vec![ConeElement::Vector(vec![Rational::zero(); k]); q],
        };
        return PatternSearchOutcome::Found(Box::new(f));
    }
    if k == 0 {
        return PatternSearchOutcome::None;
    }
    if k >= p.min(q) {
        // the trivial factorization settles this size constructively,
        // padded with zero columns up to k
        let f = crate::factorize::trivial_orthant_factorization(m).expect("nonnegative");
        let pad = |e: &ConeElement| match e {
            ConeElement::Vector(v) => {
                let mut w = v.clone();
                w.resize(k, Rational::zero());
                ConeElement::Vector(w)
            }
            other => other.clone(),
        };
        let f = ConeFactorization {
            cone: ConeDescriptor::orthant(k),
            a_list: f.a_list.iter().map(&pad).collect(),
            b_list: f.b_list.iter().map(&pad).collect(),
        };
        debug_assert!(verify_factorization(m, &f).unwrap_or(false));
        return PatternSearchOutcome::Found(Box::new(f));
    }

    let supp = m.support();
    let cells: Vec<(usize, usize)> = (0..p)
        .flat_map(|i| (0..q).map(move |j| (i, j)))
        .filter(|&(i, j)| supp[i][j])
        .collect();
    let rects = maximal_rectangles(&supp);

    let mut budget = budget;
    let mut exceeded = false;
    let mut patterns: BTreeSet<Vec<usize>> = BTreeSet::new();
    enumerate_covers(
        &rects,
        &cells,
        k,
        &mut Vec::new(),
        &mut patterns,
        &mut budget,
        &mut exceeded,
    );

    let mut any_unknown = false;
    for pattern in &patterns {
        let chosen: Vec<(Vec<usize>, Vec<usize>)> =
            pattern.iter().map(|&r| rects[r].clone()).collect();
        match decide_pattern(m, &chosen, &mut budget) {
            Decision::Solved(a, b) => {
                let f = ConeFactorization {
                    cone: ConeDescriptor::orthant(k),
                    a_list: (0..p).map(|i| ConeElement::Vector(a.row_vec(i))).collect(),
                    b_list: (0..q).map(|j| ConeElement::Vector(b.col_vec(j))).collect(),
                };
                debug_assert!(verify_factorization(m, &f).unwrap_or(false));
                return PatternSearchOutcome::Found(Box::new(f));
            }
            Decision::Refuted => {}
            Decision::Unknown => any_unknown = true,
        }
        if budget == 0 {
            exceeded = true;
            break;
        }
    }
    if exceeded || any_unknown {
        PatternSearchOutcome::BudgetExceeded
    } else {
        PatternSearchOutcome::None
    }
}

/// Collects every multiset of `k` maximal rectangles whose union covers all
/// support cells: set covers found by first-uncovered-cell branching, padded
/// with arbitrary extra rectangles up to size k.
fn enumerate_covers(
    rects: &[(Vec<usize>, Vec<usize>)],
    cells: &[(usize, usize)],
    k: usize,
    chosen: &mut Vec<usize>,
    patterns: &mut BTreeSet<Vec<usize>>,
    budget: &mut u64,
    exceeded: &mut bool,
) {
    if *budget == 0 {
        *exceeded = true;
        return;
    }
    *budget -= 1;
    let uncovered = cells.iter().find(|&&(i, j)| {
        !chosen
            .iter()
            .any(|&r| rects[r].0.contains(&i) && rects[r].1.contains(&j))
    });
    match uncovered {
        None => {
            let free = k - chosen.len();
            let mut base = chosen.clone();
            base.sort_unstable();
            pad_pattern(rects.len(), free, 0, &mut base, patterns);
        }
        Some(&(i, j)) => {
            if chosen.len() == k {
                return;
            }
            for (r, rect) in rects.iter().enumerate() {
                if chosen.contains(&r) {
                    continue;
                }
                if rect.0.contains(&i) && rect.1.contains(&j) {
                    chosen.push(r);
                    enumerate_covers(rects, cells, k, chosen, patterns, budget, exceeded);
                    chosen.pop();
                }
            }
        }
    }
}

fn pad_pattern(
    n_rects: usize,
    free: usize,
    start: usize,
    base: &mut Vec<usize>,
    patterns: &mut BTreeSet<Vec<usize>>,
) {
    if free == 0 {
        let mut p = base.clone();
        p.sort_unstable();
        patterns.insert(p);
        return;
    }
    for r in start..n_rects {
        base.push(r);
        pad_pattern(n_rects, free - 1, r, base, patterns);
        base.pop();
    }
}

enum Decision {
    Solved(RationalMatrix, RationalMatrix),
    Refuted,
    Unknown,
}

struct PatternState<'a> {
    m: &'a RationalMatrix,
    k: usize,
    rects: &'a [(Vec<usize>, Vec<usize>)],
    /// cell list with the rectangles allowed to serve it
    cells: Vec<(usize, usize, Vec<usize>)>,
    a_val: Vec<Option<Rational>>, // p×k, column t = factor column of rect t
    b_val: Vec<Option<Rational>>, // k×q
    a_pos: Vec<bool>,
    b_pos: Vec<bool>,
}

impl<'a> PatternState<'a> {
    fn new(m: &'a RationalMatrix, rects: &'a [(Vec<usize>, Vec<usize>)]) -> Self {
        let (p, q) = (m.rows(), m.cols());
        let k = rects.len();
        let mut a_val = vec![None; p * k];
        let mut b_val = vec![None; k * q];
        // entries outside the pattern are identically zero
        for (t, rect) in rects.iter().enumerate() {
            for i in 0..p {
                if !rect.0.contains(&i) {
                    a_val[i * k + t] = Some(Rational::zero());
                }
            }
            for j in 0..q {
                if !rect.1.contains(&j) {
                    b_val[t * q + j] = Some(Rational::zero());
                }
            }
        }
        let mut cells = Vec::new();
        for i in 0..p {
            for j in 0..q {
                if m[(i, j)].is_zero() {
                    continue;
                }
                let ts: Vec<usize> = (0..k)
                    .filter(|&t| rects[t].0.contains(&i) && rects[t].1.contains(&j))
                    .collect();
                cells.push((i, j, ts));
            }
        }
        PatternState {
            m,
            k,
            rects,
            cells,
            a_val,
            b_val,
            a_pos: vec![false; p * k],
            b_pos: vec![false; q * k],
        }
    }

    fn a(&self, i: usize, t: usize) -> &Option<Rational> {
        &self.a_val[i * self.k + t]
    }

    fn b(&self, t: usize, j: usize) -> &Option<Rational> {
        &self.b_val[t * self.m.cols() + j]
    }

    /// Sets a value; `false` signals a negativity contradiction.
    fn set_a(&mut self, i: usize, t: usize, v: Rational) -> bool {
        if v.is_negative() {
            return false;
        }
        debug_assert!(self.a(i, t).is_none());
        self.a_val[i * self.k + t] = Some(v);
        true
    }

    fn set_b(&mut self, t: usize, j: usize, v: Rational) -> bool {
        if v.is_negative() {
            return false;
        }
        debug_assert!(self.b(t, j).is_none());
        self.b_val[t * self.m.cols() + j] = Some(v);
        true
    }

    /// A rectangle's scale is free while no entry of its A-column or B-row
    /// has been pinned to a nonzero value.
    fn scale_free(&self, t: usize) -> bool {
        let p = self.m.rows();
        let q = self.m.cols();
        (0..p).all(|i| !matches!(self.a(i, t), Some(v) if !v.is_zero()))
            && (0..q).all(|j| !matches!(self.b(t, j), Some(v) if !v.is_zero()))
    }
}

enum Step {
    Progress,
    Fixpoint,
    Contradiction,
}

fn propagate_once(st: &mut PatternState) -> Step {
    let mut progress = false;
    for idx in 0..st.cells.len() {
        let (i, j, ts) = st.cells[idx].clone();
        let target = st.m[(i, j)].clone();
        let mut known_sum = Rational::zero();
        let mut unknown: Vec<usize> = Vec::new();
        for &t in &ts {
            match (st.a(i, t), st.b(t, j)) {
                (Some(a), Some(b)) => known_sum += &(a * b),
                (Some(a), None) if a.is_zero() => {}
                (None, Some(b)) if b.is_zero() => {}
                _ => unknown.push(t),
            }
        }
        if known_sum > target {
            return Step::Contradiction; // all remaining terms are ≥ 0
        }
        let rem = &target - &known_sum;
        if unknown.is_empty() {
            if !rem.is_zero() {
                return Step::Contradiction;
            }
            continue;
        }
        if unknown.len() == 1 {
            let t = unknown[0];
            match (st.a(i, t).clone(), st.b(t, j).clone()) {
                (Some(a), None) => {
                    if a.is_zero() {
                        if !rem.is_zero() {
                            return Step::Contradiction;
                        }
                    } else {
                        if !st.set_b(t, j, &rem / &a) {
                            return Step::Contradiction;
                        }
                        progress = true;
                    }
                }
                (None, Some(b)) => {
                    if b.is_zero() {
                        if !rem.is_zero() {
                            return Step::Contradiction;
                        }
                    } else {
                        if !st.set_a(i, t, &rem / &b) {
                            return Step::Contradiction;
                        }
                        progress = true;
                    }
                }
                (None, None) => {
                    if rem.is_positive()
                        && (!st.a_pos[i * st.k + t] || !st.b_pos[t * st.m.cols() + j])
                    {
                        // the single unknown product must be positive
                        st.a_pos[i * st.k + t] = true;
                        st.b_pos[t * st.m.cols() + j] = true;
                        progress = true;
                    }
                }
                (Some(_), Some(_)) => unreachable!("term would be known"),
            }
        } else if rem.is_zero() {
            // every unknown term must vanish; those with one factor pinned
            // positive force the other factor to zero
            for &t in &unknown {
                match (st.a(i, t).clone(), st.b(t, j).clone()) {
                    (Some(a), None) if !a.is_zero() => {
                        if !st.set_b(t, j, Rational::zero()) {
                            return Step::Contradiction;
                        }
                        progress = true;
                    }
                    (None, Some(b)) if !b.is_zero() => {
                        if !st.set_a(i, t, Rational::zero()) {
                            return Step::Contradiction;
                        }
                        progress = true;
                    }
                    _ => {}
                }
            }
        }
    }

    // scaling normalization: pin the first positivity-forced entry of a
    // scale-free rectangle column to 1
    if !progress {
        for t in 0..st.k {
            if !st.scale_free(t) {
                continue;
            }
            let forced = st.rects[t]
                .0
                .iter()
                .find(|&&i| st.a(i, t).is_none() && st.a_pos[i * st.k + t]);
            if let Some(&i) = forced {
                let ok = st.set_a(i, t, Rational::one());
                debug_assert!(ok);
                progress = true;
                break;
            }
        }
    }

    if progress {
        Step::Progress
    } else {
        Step::Fixpoint
    }
}

fn decide_pattern(
    m: &RationalMatrix,
    rects: &[(Vec<usize>, Vec<usize>)],
    budget: &mut u64,
) -> Decision {
    let st = PatternState::new(m, rects);
    let d = decide_state(st, budget);
    if matches!(d, Decision::Unknown) {
        // last attempt before giving up: alternating exact solves from the
        // all-ones seed on the allowed support
        if let Some((a, b)) = alternating_solve(m, rects, 8) {
            return Decision::Solved(a, b);
        }
    }
    d
}

fn decide_state(mut st: PatternState, budget: &mut u64) -> Decision {
    loop {
        if *budget == 0 {
            return Decision::Unknown;
        }
        *budget -= 1;
        match propagate_once(&mut st) {
            Step::Progress => continue,
            Step::Contradiction => return Decision::Refuted,
            Step::Fixpoint => break,
        }
    }

    let all_set = st.a_val.iter().all(|v| v.is_some()) && st.b_val.iter().all(|v| v.is_some());
    if all_set {
        return finish(&st);
    }

    // complete case split on a scale-free rectangle: either its A-column is
    // all zeros, or some first entry is positive and can be scaled to 1
    let free_t = (0..st.k)
        .find(|&t| st.scale_free(t) && st.rects[t].0.iter().any(|&i| st.a(i, t).is_none()));
    if let Some(t) = free_t {
        let open_rows: Vec<usize> = st.rects[t]
            .0
            .iter()
            .cloned()
            .filter(|&i| st.a(i, t).is_none())
            .collect();
        let mut any_unknown = false;
        // branch: column unused
        {
            let mut sub = clone_state(&st);
            let mut ok = true;
            for &i in &open_rows {
                if !sub.set_a(i, t, Rational::zero()) {
                    ok = false;
                    break;
                }
            }
            if ok {
                match decide_state(sub, budget) {
                    Decision::Solved(a, b) => return Decision::Solved(a, b),
                    Decision::Refuted => {}
                    Decision::Unknown => any_unknown = true,
                }
            }
        }
        // branch: row i is the first with a positive entry, scaled to 1
        for (pos, &i) in open_rows.iter().enumerate() {
            let mut sub = clone_state(&st);
            let mut ok = true;
            for &i_prev in &open_rows[..pos] {
                if !sub.set_a(i_prev, t, Rational::zero()) {
                    ok = false;
                    break;
                }
            }
            if ok && sub.set_a(i, t, Rational::one()) {
                match decide_state(sub, budget) {
                    Decision::Solved(a, b) => return Decision::Solved(a, b),
                    Decision::Refuted => {}
                    Decision::Unknown => any_unknown = true,
                }
            }
        }
        return if any_unknown {
            Decision::Unknown
        } else {
            Decision::Refuted
        };
    }

    Decision::Unknown
}

fn clone_state<'a>(st: &PatternState<'a>) -> PatternState<'a> {
    PatternState {
        m: st.m,
        k: st.k,
        rects: st.rects,
        cells: st.cells.clone(),
        a_val: st.a_val.clone(),
        b_val: st.b_val.clone(),
        a_pos: st.a_pos.clone(),
        b_pos: st.b_pos.clone(),
    }
}

fn finish(st: &PatternState) -> Decision {
    let (p, q) = (st.m.rows(), st.m.cols());
    let mut a = RationalMatrix::zeros(p, st.k);
    let mut b = RationalMatrix::zeros(st.k, q);
    for i in 0..p {
        for t in 0..st.k {
            let v = st.a(i, t).clone().expect("all values set");
            if v.is_negative() {
                return Decision::Refuted;
            }
            a[(i, t)] = v;
        }
    }
    for t in 0..st.k {
        for j in 0..q {
            let v = st.b(t, j).clone().expect("all values set");
            if v.is_negative() {
                return Decision::Refuted;
            }
            b[(t, j)] = v;
        }
    }
    if a.mul(&b).expect("shapes agree") == *st.m {
        Decision::Solved(a, b)
    } else {
        Decision::Refuted
    }
}

/// Alternating exact row/column solves inside the allowed pattern, seeded
/// with all-ones; returns a factorization only on exact verification.
fn alternating_solve(
    m: &RationalMatrix,
    rects: &[(Vec<usize>, Vec<usize>)],
    rounds: usize,
) -> Option<(RationalMatrix, RationalMatrix)> {
    let (p, q) = (m.rows(), m.cols());
    let k = rects.len();
    let mut b = RationalMatrix::zeros(k, q);
    for (t, rect) in rects.iter().enumerate() {
        for &j in &rect.1 {
            b[(t, j)] = Rational::one();
        }
    }
    let mut a = RationalMatrix::zeros(p, k);
    for _ in 0..rounds {
        // A-step: rows independently, unknowns restricted to the pattern
        for i in 0..p {
            let ts: Vec<usize> = (0..k).filter(|&t| rects[t].0.contains(&i)).collect();
            let sys = RationalMatrix::from_rows(
                (0..q)
                    .map(|j| ts.iter().map(|&t| b[(t, j)].clone()).collect())
                    .collect(),
            );
            let rhs: Vec<Rational> = (0..q).map(|j| m[(i, j)].clone()).collect();
            let sol = crate::linalg::solve(&sys, &rhs)?;
            for t in 0..k {
                a[(i, t)] = Rational::zero();
            }
            for (idx, &t) in ts.iter().enumerate() {
                a[(i, t)] = sol[idx].clone();
            }
        }
        // B-step
        for j in 0..q {
            let ts: Vec<usize> = (0..k).filter(|&t| rects[t].1.contains(&j)).collect();
            let sys = RationalMatrix::from_rows(
                (0..p)
                    .map(|i| ts.iter().map(|&t| a[(i, t)].clone()).collect())
                    .collect(),
            );
            let rhs: Vec<Rational> = (0..p).map(|i| m[(i, j)].clone()).collect();
            let sol = crate::linalg::solve(&sys, &rhs)?;
            for t in 0..k {
                b[(t, j)] = Rational::zero();
            }
            for (idx, &t) in ts.iter().enumerate() {
                b[(t, j)] = sol[idx].clone();
            }
        }
        if a.is_nonnegative() && b.is_nonnegative() && a.mul(&b).ok()? == *m {
            return Some((a, b));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rectangles_of_identity_are_singletons() {
        let supp = vec![
            vec![true, false, false],
            vec![false, true, false],
            vec![false, false, true],
        ];
        let rects = maximal_rectangles(&supp);
        assert_eq!(rects.len(), 3);
        assert!(rects.iter().all(|(r, c)| r.len() == 1 && c.len() == 1));
    }

    #[test]
    fn identity_needs_full_rank() {
        let m = RationalMatrix::identity(3);
        assert!(orthant_pattern_search(&m, 2, 100_000).is_none());
        assert!(orthant_pattern_search(&m, 3, 100_000).found().is_some());
    }

    #[test]
    fn positive_rank_one_found_at_one() {
        let m = RationalMatrix::from_i64(&[&[2, 4], &[1, 2]]);
        let out = orthant_pattern_search(&m, 1, 100_000);
        let f = out.found().expect("rank-one factorization");
        assert!(verify_factorization(&m, f).unwrap());
    }

    #[test]
    fn zero_matrix_is_found_at_any_size() {
        let m = RationalMatrix::zeros(2, 2);
        assert!(orthant_pattern_search(&m, 0, 1000).found().is_some());
        assert!(orthant_pattern_search(&m, 3, 1000).found().is_some());
    }

    #[test]
    fn full_positive_rank_two() {
        let m = RationalMatrix::from_i64(&[&[1, 2], &[2, 1]]);
        assert!(orthant_pattern_search(&m, 1, 100_000).is_none());
        let out = orthant_pattern_search(&m, 2, 100_000);
        let f = out.found().expect("size-2 factorization");
        assert!(verify_factorization(&m, f).unwrap());
    }
}
