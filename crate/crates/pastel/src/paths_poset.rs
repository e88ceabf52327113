//! Enumeration of st-paths and the partial order on them that underlies the
//! nerve: p ≤ q when a glob rewrites a subpath of p into the matching
//! subpath of q.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::plane_graph::{glob_between, DiPath, Glob, Globular};

/// The set of st-paths of a globular graph with the glob order, minimal
/// witnesses cached per strictly related pair.
#[derive(Clone)]
pub struct PathPoset {
    pub paths: Vec<DiPath>,
    leq: Vec<Vec<bool>>,
    witness: BTreeMap<(usize, usize), Glob>,
}

/// All st-paths, lexicographic by edge-id sequence. This order fixes every
/// downstream simplex enumeration.
pub fn enumerate_paths(g: &Globular) -> Vec<DiPath> {
    g.paths_between(&g.source, &g.target)
}

/// Decide the order pairwise through `glob_between`, then verify that the
/// result really is a poset whose relation is its own transitive closure.
pub fn build_poset(g: &Globular) -> Result<PathPoset> {
    let paths = enumerate_paths(g);
    let n = paths.len();
    let mut leq = vec![vec![false; n]; n];
    let mut witness = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                leq[i][j] = true;
                continue;
            }
            if let Ok(glob) = glob_between(g, &paths[i], &paths[j]) {
                leq[i][j] = true;
                witness.insert((i, j), glob);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && leq[i][j] && leq[j][i] {
                return Err(Error::NotAPartialOrder(format!(
                    "antisymmetry fails between {} and {}",
                    paths[i], paths[j]
                )));
            }
            for k in 0..n {
                if leq[i][j] && leq[j][k] && !leq[i][k] {
                    return Err(Error::NotAPartialOrder(format!(
                        "transitivity fails through {}",
                        paths[j]
                    )));
                }
            }
        }
    }
    Ok(PathPoset { paths, leq, witness })
}

impl PathPoset {
    pub fn len(&self) -> usize {
        self.paths.len()
    }
    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn index_of(&self, p: &DiPath) -> Option<usize> {
        self.paths.iter().position(|q| q == p)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn minimal_witness(&self, i: usize, j: usize) -> Option<&Glob> {
        self.witness.get(&(i, j))
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.leq[i][j]))
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.leq[j][i]))
    }

    /// Covering pairs of the order, for Hasse diagrams and maximal chains.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.leq[i][j] {
                    continue;
                }
                let through = (0..n).any(|k| k != i && k != j && self.leq[i][k] && self.leq[k][j]);
                if !through {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// All maximal chains from bottom to top, as index sequences.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let (bot, top) = match (self.bottom(), self.top()) {
            (Some(b), Some(t)) => (b, t),
            _ => return vec![],
        };
        let covers = self.covers();
        let mut out = Vec::new();
        let mut stack = vec![vec![bot]];
        while let Some(chain) = stack.pop() {
            let last = *chain.last().unwrap();
            if last == top {
                out.push(chain);
                continue;
            }
            for (a, b) in covers.iter().rev() {
                if *a == last {
                    let mut next = chain.clone();
                    next.push(*b);
                    stack.push(next);
                }
            }
        }
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{bn, graph_f, graph_j};

    #[test]
    fn bn_paths_form_a_chain() {
        for n in 1..=3usize {
            let g = bn(n);
            let poset = build_poset(&g).unwrap();
            assert_eq!(poset.len(), n + 1);
            for i in 0..=n {
                for j in 0..=n {
                    assert_eq!(poset.leq(i, j), i <= j, "B{n}: {i} vs {j}");
                }
            }
        }
    }

    #[test]
    fn j_poset_is_a_square() {
        let poset = build_poset(&graph_j()).unwrap();
        assert_eq!(poset.len(), 4);
        // paths sorted lexicographically: e0d0, e0d1, e1d0, e1d1
        let grid = |i: usize| (i / 2, i % 2);
        for i in 0..4 {
            for j in 0..4 {
                let (a, b) = grid(i);
                let (c, d) = grid(j);
                assert_eq!(poset.leq(i, j), a <= c && b <= d);
            }
        }
    }

    #[test]
    fn f_poset_shape() {
        let f = graph_f();
        let poset = build_poset(&f).unwrap();
        assert_eq!(poset.len(), 5);
        let bot = poset.bottom().unwrap();
        let top = poset.top().unwrap();
        assert_eq!(poset.paths[bot], f.dom());
        assert_eq!(poset.paths[top], f.cod());
    }

    #[test]
    fn covers_have_single_face_witnesses_on_catalog() {
        for entry in crate::catalog::catalog() {
            let poset = build_poset(&entry.graph).unwrap();
            for (i, j) in poset.covers() {
                let w = poset.minimal_witness(i, j).unwrap();
                let sub = entry.graph.sub(&w.edges).unwrap();
                assert_eq!(sub.interior_face_count(), 1, "{}: cover witness", entry.name);
            }
        }
    }
}
