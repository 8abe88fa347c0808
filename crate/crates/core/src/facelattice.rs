//! Face lattices of polytopes, stored as closed vertex sets, and the
//! Dilworth antichain computation used by the rank bounds.

use std::collections::BTreeSet;

/// All faces of a polytope as vertex-index sets, including the empty face
/// and the polytope itself, ordered by (cardinality, lexicographic) so the
/// lattice is reproducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceLattice {
    faces: Vec<BTreeSet<usize>>,
    n_vertices: usize,
}

impl FaceLattice {
    /// Builds the lattice from facet incidence sets by closing under
    /// pairwise intersection and adding the empty face and the full set.
    pub fn from_incidence(facet_sets: &[BTreeSet<usize>], n_vertices: usize) -> FaceLattice {
        let full: BTreeSet<usize> = (0..n_vertices).collect();
        let mut faces: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        faces.insert(full);
        faces.insert(BTreeSet::new());
        for f in facet_sets {
            faces.insert(f.clone());
        }
        loop {
            let snapshot: Vec<BTreeSet<usize>> = faces.iter().cloned().collect();
            let before = faces.len();
            for (i, f) in snapshot.iter().enumerate() {
                for g in snapshot.iter().skip(i + 1) {
                    faces.insert(f.intersection(g).cloned().collect());
                }
            }
            if faces.len() == before {
                break;
            }
        }
        let mut faces: Vec<BTreeSet<usize>> = faces.into_iter().collect();
        faces.sort_by_key(|f| (f.len(), f.iter().cloned().collect::<Vec<_>>()));
        FaceLattice { faces, n_vertices }
    }

    pub fn faces(&self) -> &[BTreeSet<usize>] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Strict containment of faces by index.
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.faces[i] != self.faces[j] && self.faces[i].is_subset(&self.faces[j])
    }

    /// Exact maximum antichain size, via Dilworth: the minimum chain cover
    /// equals faces − (maximum matching of the strict comparability
    /// relation), and the largest antichain has the same size.
    pub fn max_antichain(&self) -> usize {
        let n = self.faces.len();
        let adj: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).filter(|&j| self.lt(i, j)).collect())
            .collect();
        let mut matched_right: Vec<Option<usize>> = vec![None; n];
        let mut matching = 0;
        for u in 0..n {
            let mut visited = vec![false; n];
            if augment(u, &adj, &mut matched_right, &mut visited) {
                matching += 1;
            }
        }
        n - matching
    }

    /// Brute-force antichain maximum; exponential, only for small lattices.
    pub fn max_antichain_bruteforce(&self) -> usize {
        let n = self.faces.len();
        assert!(n <= 24, "brute force limited to small lattices");
        let mut best = 0;
        for mask in 0u64..(1 << n) {
            let members: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if members.len() <= best {
                continue;
            }
            let ok = members.iter().enumerate().all(|(a, &i)| {
                members[a + 1..]
                    .iter()
                    .all(|&j| !self.lt(i, j) && !self.lt(j, i))
            });
            if ok {
                best = members.len();
            }
        }
        best
    }
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    matched_right: &mut Vec<Option<usize>>,
    visited: &mut Vec<bool>,
) -> bool {
    for &v in &adj[u] {
        if visited[v] {
            continue;
        }
        visited[v] = true;
        if matched_right[v].is_none()
            || augment(matched_right[v].unwrap(), adj, matched_right, visited)
        {
            matched_right[v] = Some(u);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().cloned().collect()
    }

    #[test]
    fn segment_has_four_faces() {
        let l = FaceLattice::from_incidence(&[set(&[0]), set(&[1])], 2);
        assert_eq!(l.len(), 4);
    }

    #[test]
    fn square_lattice() {
        // vertices 0..4 in cyclic order, facets are the edges
        let facets = vec![set(&[0, 1]), set(&[1, 2]), set(&[2, 3]), set(&[3, 0])];
        let l = FaceLattice::from_incidence(&facets, 4);
        assert_eq!(l.len(), 10);
        assert_eq!(l.max_antichain(), 4);
        assert_eq!(l.max_antichain_bruteforce(), 4);
    }

    #[test]
    fn chain_lattice_antichain_is_one() {
        let l = FaceLattice::from_incidence(&[set(&[0])], 1);
        // faces: {}, {0}
        assert_eq!(l.len(), 2);
        assert_eq!(l.max_antichain(), 1);
    }
}
