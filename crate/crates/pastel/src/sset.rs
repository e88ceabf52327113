//! Finite simplicial sets: nondegenerate cells with face incidences, simplex
//! references in Eilenberg–Zilber normal form, operator actions, binary
//! products and isomorphism search.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// A monotone map [dom] -> [cod], stored by its values.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub cod: usize,
    pub vals: Vec<usize>,
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}->{}]", self.vals, self.cod)
    }
}

impl Mono {
    pub fn new(cod: usize, vals: Vec<usize>) -> Mono {
        assert!(!vals.is_empty());
        assert!(vals.windows(2).all(|w| w[0] <= w[1]), "not monotone: {vals:?}");
        assert!(*vals.last().unwrap() <= cod);
        Mono { cod, vals }
    }

    pub fn identity(n: usize) -> Mono {
        Mono { cod: n, vals: (0..=n).collect() }
    }

    pub fn dom(&self) -> usize {
        self.vals.len() - 1
    }

    /// The coface [n-1] -> [n] skipping i.
    pub fn face(n: usize, i: usize) -> Mono {
        assert!(n >= 1 && i <= n);
        Mono { cod: n, vals: (0..n).map(|k| if k < i { k } else { k + 1 }).collect() }
    }

    /// The codegeneracy [n+1] -> [n] repeating i.
    pub fn degeneracy(n: usize, i: usize) -> Mono {
        assert!(i <= n);
        Mono { cod: n, vals: (0..=n + 1).map(|k| if k <= i { k } else { k - 1 }).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.cod == self.dom() && self.vals.iter().enumerate().all(|(i, v)| i == *v)
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod + 1];
        for &v in &self.vals {
            seen[v] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_injective(&self) -> bool {
        self.vals.windows(2).all(|w| w[0] < w[1])
    }

    pub fn apply(&self, i: usize) -> usize {
        self.vals[i]
    }

    /// self ∘ other (other first).
    pub fn compose(&self, other: &Mono) -> Mono {
        assert_eq!(other.cod, self.dom(), "maps do not compose");
        Mono { cod: self.cod, vals: other.vals.iter().map(|&i| self.vals[i]).collect() }
    }

    /// Factor as injection ∘ surjection.
    pub fn epi_mono(&self) -> (Mono, Mono) {
        let mut image: Vec<usize> = self.vals.clone();
        image.dedup();
        let inj = Mono { cod: self.cod, vals: image.clone() };
        let surj = Mono {
            cod: image.len() - 1,
            vals: self
                .vals
                .iter()
                .map(|v| image.iter().position(|w| w == v).unwrap())
                .collect(),
        };
        (surj, inj)
    }

    /// Positions i with f(i) = f(i+1); determines a surjection.
    pub fn flats(&self) -> Vec<usize> {
        (0..self.dom()).filter(|&i| self.vals[i] == self.vals[i + 1]).collect()
    }

    /// All monotone maps [m] -> [n].
    pub fn all(m: usize, n: usize) -> Vec<Mono> {
        let mut out = Vec::new();
        let mut stack: Vec<Vec<usize>> = (0..=n).map(|v| vec![v]).collect();
        stack.reverse();
        while let Some(v) = stack.pop() {
            if v.len() == m + 1 {
                out.push(Mono { cod: n, vals: v });
                continue;
            }
            let last = *v.last().unwrap();
            for next in (last..=n).rev() {
                let mut w = v.clone();
                w.push(next);
                stack.push(w);
            }
        }
        out
    }

    /// All surjections [m] ->> [n].
    pub fn surjections(m: usize, n: usize) -> Vec<Mono> {
        Mono::all(m, n).into_iter().filter(|f| f.is_surjective()).collect()
    }
}

/// A cell id: dimension and index within that dimension.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct CellId {
    pub dim: usize,
    pub idx: usize,
}

/// A simplex in EZ normal form: a nondegenerate cell and a surjective
/// reindexing. Identity surjection = the cell itself.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SRef {
    pub cell: CellId,
    pub surj: Mono,
}

impl fmt::Debug for SRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.surj.is_identity() {
            write!(f, "{}#{}", self.cell.dim, self.cell.idx)
        } else {
            write!(f, "{}#{}{:?}", self.cell.dim, self.cell.idx, self.surj)
        }
    }
}

impl SRef {
    pub fn nondeg(dim: usize, idx: usize) -> SRef {
        SRef { cell: CellId { dim, idx }, surj: Mono::identity(dim) }
    }

    pub fn dim(&self) -> usize {
        self.surj.dom()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.surj.is_identity()
    }
}

/// A finite simplicial set, possibly truncated at `dim_bound`.
#[derive(Clone)]
pub struct FiniteSSet {
    /// cell names per dimension, fixing the index order
    pub names: Vec<Vec<String>>,
    /// faces[n][idx][i] = d_i of cell (n, idx), for n >= 1
    pub faces: Vec<Vec<Vec<SRef>>>,
    /// dimensions above this are not stored (truncation)
    pub dim_bound: usize,
}

impl FiniteSSet {
    pub fn empty() -> FiniteSSet {
        FiniteSSet { names: vec![], faces: vec![], dim_bound: 0 }
    }

    pub fn point(name: &str) -> FiniteSSet {
        FiniteSSet { names: vec![vec![name.to_string()]], faces: vec![vec![]], dim_bound: 0 }
    }

    pub fn is_empty(&self) -> bool {
        self.names.iter().all(|d| d.is_empty())
    }

    /// Largest dimension with nondegenerate cells.
    pub fn top_dim(&self) -> usize {
        (0..self.names.len()).rev().find(|&d| !self.names[d].is_empty()).unwrap_or(0)
    }

    pub fn cells(&self, dim: usize) -> usize {
        self.names.get(dim).map_or(0, |v| v.len())
    }

    pub fn total_cells(&self) -> usize {
        self.names.iter().map(|v| v.len()).sum()
    }

    pub fn name(&self, c: CellId) -> &str {
        &self.names[c.dim][c.idx]
    }

    pub fn face(&self, c: CellId, i: usize) -> &SRef {
        &self.faces[c.dim][c.idx][i]
    }

    /// Act by an arbitrary monotone operator on the right.
    pub fn act(&self, r: &SRef, op: &Mono) -> SRef {
        assert_eq!(op.cod, r.dim(), "operator does not match simplex dimension");
        let total = r.surj.compose(op);
        let (surj, inj) = total.epi_mono();
        let mut cur = SRef { cell: r.cell, surj: Mono::identity(r.cell.dim) };
        // peel cofaces off the injection, largest skipped value first
        let mut inj_vals = inj.vals.clone();
        let mut cod = inj.cod;
        while inj_vals.len() != cod + 1 {
            let skipped = (0..=cod)
                .rev()
                .find(|v| !inj_vals.contains(v))
                .expect("non-identity injection skips something");
            // apply d_skipped to cur (cur has dimension cod)
            let d = Mono::face(cod, skipped);
            let stepped = if cur.surj.is_identity() {
                assert!(
                    self.faces.len() > cur.cell.dim
                        && self.faces[cur.cell.dim].len() > cur.cell.idx
                        && self.faces[cur.cell.dim][cur.cell.idx].len() > skipped,
                    "face {skipped} of cell {:?} missing (sset has {} levels, level row lens {:?}); acting on {r:?} by {op:?}",
                    cur.cell,
                    self.faces.len(),
                    self.faces.get(cur.cell.dim).map(|l| l.len()),
                );
                self.faces[cur.cell.dim][cur.cell.idx][skipped].clone()
            } else {
                let t = cur.surj.compose(&d);
                let (s2, i2) = t.epi_mono();
                if i2.is_identity() {
                    SRef { cell: cur.cell, surj: s2 }
                } else {
                    // recurse through the nondegenerate carrier
                    let inner = self.act(&SRef::nondeg(cur.cell.dim, cur.cell.idx), &i2);
                    SRef { cell: inner.cell, surj: inner.surj.compose(&s2) }
                }
            };
            cur = stepped;
            cod -= 1;
            inj_vals = inj_vals.iter().map(|&v| if v > skipped { v - 1 } else { v }).collect();
        }
        SRef { cell: cur.cell, surj: cur.surj.compose(&surj) }
    }

    /// Check the simplicial identities d_i d_j = d_{j-1} d_i (i < j) on all
    /// stored cells.
    pub fn validate(&self) -> Result<()> {
        for n in 2..self.names.len() {
            for idx in 0..self.names[n].len() {
                let c = SRef::nondeg(n, idx);
                for j in 1..=n {
                    for i in 0..j {
                        let a = self.act(&self.act(&c, &Mono::face(n, j)), &Mono::face(n - 1, i));
                        let b =
                            self.act(&self.act(&c, &Mono::face(n, i)), &Mono::face(n - 1, j - 1));
                        if a != b {
                            return Err(Error::Invalid(format!(
                                "simplicial identity fails on {} with (i,j)=({i},{j})",
                                self.names[n][idx]
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// All simplices of a given dimension in EZ form (nondegenerate cells of
    /// dimension <= n with surjections onto them).
    pub fn all_simplices(&self, n: usize) -> Vec<SRef> {
        if self.is_empty() {
            return vec![];
        }
        let mut out = Vec::new();
        for d in 0..=n.min(self.names.len().saturating_sub(1)) {
            for idx in 0..self.names[d].len() {
                for surj in Mono::surjections(n, d) {
                    out.push(SRef { cell: CellId { dim: d, idx }, surj });
                }
            }
        }
        out
    }

    /// The standard n-simplex.
    pub fn delta(n: usize) -> FiniteSSet {
        // cells of dim k: strictly increasing (k+1)-subsets of 0..=n
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            let mut out = Vec::new();
            let mut cur = Vec::new();
            fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
                if cur.len() == k {
                    out.push(cur.clone());
                    return;
                }
                for v in start..=n {
                    cur.push(v);
                    rec(v + 1, n, k, cur, out);
                    cur.pop();
                }
            }
            rec(0, n, k, &mut cur, &mut out);
            out
        }
        let mut names = Vec::new();
        let mut faces = Vec::new();
        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut by_dim: Vec<Vec<Vec<usize>>> = Vec::new();
        for k in 0..=n {
            let cells = subsets(n, k + 1);
            names.push(
                cells
                    .iter()
                    .map(|c| c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("."))
                    .collect::<Vec<String>>(),
            );
            for (i, c) in cells.iter().enumerate() {
                index.insert(c.clone(), i);
            }
            by_dim.push(cells);
        }
        for k in 0..=n {
            let mut dim_faces = Vec::new();
            for cell in &by_dim[k] {
                let mut fs = Vec::new();
                if k > 0 {
                    for i in 0..=k {
                        let mut sub = cell.clone();
                        sub.remove(i);
                        fs.push(SRef::nondeg(k - 1, index[&sub]));
                    }
                }
                dim_faces.push(fs);
            }
            faces.push(dim_faces);
        }
        FiniteSSet { names, faces, dim_bound: n }
    }

    /// Binary product via the shuffle description of nondegenerate cells.
    pub fn product(a: &FiniteSSet, b: &FiniteSSet) -> FiniteSSet {
        let bound = a.dim_bound + b.dim_bound;
        // enumerate jointly nondegenerate pairs per dimension
        let mut cells: Vec<Vec<(SRef, SRef)>> = vec![Vec::new(); bound + 1];
        for p in 0..a.names.len() {
            for q in 0..b.names.len() {
                for n in p.max(q)..=(p + q).min(bound) {
                    for s1 in Mono::surjections(n, p) {
                        for s2 in Mono::surjections(n, q) {
                            let f1 = s1.flats();
                            let joint = s2.flats().iter().any(|x| f1.contains(x));
                            if joint {
                                continue;
                            }
                            for ia in 0..a.names[p].len() {
                                for ib in 0..b.names[q].len() {
                                    cells[n].push((
                                        SRef { cell: CellId { dim: p, idx: ia }, surj: s1.clone() },
                                        SRef { cell: CellId { dim: q, idx: ib }, surj: s2.clone() },
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        for lvl in cells.iter_mut() {
            lvl.sort();
        }
        let index: BTreeMap<(SRef, SRef), CellId> = cells
            .iter()
            .enumerate()
            .flat_map(|(n, lvl)| {
                lvl.iter()
                    .enumerate()
                    .map(move |(i, pair)| (pair.clone(), CellId { dim: n, idx: i }))
            })
            .collect();
        let names: Vec<Vec<String>> = cells
            .iter()
            .map(|lvl| {
                lvl.iter()
                    .map(|(r1, r2)| {
                        format!(
                            "({}{:?}|{}{:?})",
                            a.name(r1.cell),
                            r1.surj.vals,
                            b.name(r2.cell),
                            r2.surj.vals
                        )
                    })
                    .collect()
            })
            .collect();
        let mut faces: Vec<Vec<Vec<SRef>>> = Vec::new();
        for (n, lvl) in cells.iter().enumerate() {
            let mut dim_faces = Vec::new();
            for (r1, r2) in lvl {
                let mut fs = Vec::new();
                if n > 0 {
                    for i in 0..=n {
                        let d = Mono::face(n, i);
                        let f1 = a.act(r1, &d);
                        let f2 = b.act(r2, &d);
                        fs.push(pair_normalize(&index, &f1, &f2));
                    }
                }
                dim_faces.push(fs);
            }
            faces.push(dim_faces);
        }
        FiniteSSet { names, faces, dim_bound: bound }
    }
}

/// Strip the common degeneracy of a pair of equal-dimension references:
/// returns the jointly nondegenerate pair and the surjection recovering the
/// input.
pub fn joint_normal_form(r1: &SRef, r2: &SRef) -> (SRef, SRef, Mono) {
    let n = r1.dim();
    assert_eq!(n, r2.dim());
    let common: Vec<usize> = r1
        .surj
        .flats()
        .into_iter()
        .filter(|x| r2.surj.flats().contains(x))
        .collect();
    // rho: [n] ->> [n - common] collapsing the shared flats
    let mut vals = Vec::with_capacity(n + 1);
    let mut v = 0usize;
    vals.push(0);
    for i in 0..n {
        if !common.contains(&i) {
            v += 1;
        }
        vals.push(v);
    }
    let rho = Mono { cod: v, vals };
    // strictly monotone section of rho: picks one preimage per value
    let mut section = Vec::with_capacity(v + 1);
    for target in 0..=v {
        let i = rho.vals.iter().position(|&x| x == target).unwrap();
        section.push(i);
    }
    let sec = Mono { cod: n, vals: section };
    let n1 = SRef { cell: r1.cell, surj: r1.surj.compose(&sec) };
    let n2 = SRef { cell: r2.cell, surj: r2.surj.compose(&sec) };
    (n1, n2, rho)
}

/// EZ-normalize a pair of simplex references into a product cell reference.
fn pair_normalize(index: &BTreeMap<(SRef, SRef), CellId>, r1: &SRef, r2: &SRef) -> SRef {
    let (n1, n2, rho) = joint_normal_form(r1, r2);
    let cell = *index
        .get(&(n1, n2))
        .expect("normalized pair must be a product cell");
    SRef { cell, surj: rho }
}

/// Search for an isomorphism of finite simplicial sets. Returns per-dimension
/// index maps a -> b when one exists.
pub fn sset_iso(a: &FiniteSSet, b: &FiniteSSet) -> Option<Vec<Vec<usize>>> {
    let dims = a.names.len().max(b.names.len());
    for d in 0..dims {
        if a.cells(d) != b.cells(d) {
            return None;
        }
    }
    // iterated signature refinement
    let colors = |s: &FiniteSSet| -> Vec<Vec<u64>> {
        let mut col: Vec<Vec<u64>> = s.names.iter().map(|lvl| vec![0; lvl.len()]).collect();
        for _ in 0..4 {
            let mut sig: Vec<Vec<String>> = Vec::new();
            for (n, lvl) in s.faces.iter().enumerate() {
                let mut level_sigs = Vec::new();
                for (idx, fs) in lvl.iter().enumerate() {
                    let parts: Vec<String> = fs
                        .iter()
                        .map(|f| format!("{}:{:?}", col[f.cell.dim][f.cell.idx], f.surj.vals))
                        .collect();
                    level_sigs.push(format!("{n}|{}|{}", col[n][idx], parts.join(",")));
                }
                sig.push(level_sigs);
            }
            let mut palette: BTreeMap<String, u64> = BTreeMap::new();
            for lvl in &sig {
                for s in lvl {
                    let next = palette.len() as u64;
                    palette.entry(s.clone()).or_insert(next);
                }
            }
            for (n, lvl) in sig.iter().enumerate() {
                for (i, s) in lvl.iter().enumerate() {
                    col[n][i] = palette[s];
                }
            }
        }
        col
    };
    let ca = colors(a);
    let cb = colors(b);
    // per-dimension candidate lists by color
    let mut mapping: Vec<Vec<Option<usize>>> = a.names.iter().map(|l| vec![None; l.len()]).collect();
    let mut used: Vec<Vec<bool>> = b.names.iter().map(|l| vec![false; l.len()]).collect();
    // order cells bottom-up so faces are assigned before cofaces
    let order: Vec<CellId> = (0..a.names.len())
        .flat_map(|d| (0..a.names[d].len()).map(move |i| CellId { dim: d, idx: i }))
        .collect();

    fn consistent(
        a: &FiniteSSet,
        b: &FiniteSSet,
        mapping: &[Vec<Option<usize>>],
        c: CellId,
        target: usize,
    ) -> bool {
        if c.dim == 0 {
            return true;
        }
        for i in 0..=c.dim {
            let fa = a.face(c, i);
            let fb = b.face(CellId { dim: c.dim, idx: target }, i);
            if fa.surj != fb.surj {
                return false;
            }
            match mapping[fa.cell.dim][fa.cell.idx] {
                Some(m) if m == fb.cell.idx => {}
                Some(_) => return false,
                None => return false, // faces are lower-dimensional, already assigned
            }
        }
        true
    }

    fn backtrack(
        a: &FiniteSSet,
        b: &FiniteSSet,
        ca: &[Vec<u64>],
        cb: &[Vec<u64>],
        order: &[CellId],
        pos: usize,
        mapping: &mut Vec<Vec<Option<usize>>>,
        used: &mut Vec<Vec<bool>>,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let c = order[pos];
        for target in 0..b.names[c.dim].len() {
            if used[c.dim][target] || ca[c.dim][c.idx] != cb[c.dim][target] {
                continue;
            }
            if !consistent(a, b, mapping, c, target) {
                continue;
            }
            mapping[c.dim][c.idx] = Some(target);
            used[c.dim][target] = true;
            if backtrack(a, b, ca, cb, order, pos + 1, mapping, used) {
                return true;
            }
            mapping[c.dim][c.idx] = None;
            used[c.dim][target] = false;
        }
        false
    }

    if backtrack(a, b, &ca, &cb, &order, 0, &mut mapping, &mut used) {
        Some(
            mapping
                .into_iter()
                .map(|lvl| lvl.into_iter().map(Option::unwrap).collect())
                .collect(),
        )
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monotone_factorization() {
        let f = Mono::new(3, vec![0, 0, 2, 2, 3]);
        let (s, i) = f.epi_mono();
        assert!(s.is_surjective());
        assert!(i.is_injective());
        assert_eq!(i.compose(&s), f);
    }

    #[test]
    fn delta_cells_are_binomials() {
        let d3 = FiniteSSet::delta(3);
        assert_eq!(d3.cells(0), 4);
        assert_eq!(d3.cells(1), 6);
        assert_eq!(d3.cells(2), 4);
        assert_eq!(d3.cells(3), 1);
        d3.validate().unwrap();
    }

    #[test]
    fn square_has_two_triangles() {
        let d1 = FiniteSSet::delta(1);
        let sq = FiniteSSet::product(&d1, &d1);
        assert_eq!(sq.cells(0), 4);
        assert_eq!(sq.cells(1), 5);
        assert_eq!(sq.cells(2), 2);
        sq.validate().unwrap();
    }

    #[test]
    fn iso_rejects_different_shapes() {
        let d1 = FiniteSSet::delta(1);
        let d2 = FiniteSSet::delta(2);
        assert!(sset_iso(&d1, &d2).is_none());
        assert!(sset_iso(&d2, &FiniteSSet::delta(2)).is_some());
    }

    #[test]
    fn act_through_degeneracies() {
        let d2 = FiniteSSet::delta(2);
        let top = SRef::nondeg(2, 0);
        let s0 = Mono::degeneracy(2, 0);
        let degen = d2.act(&top, &s0);
        assert_eq!(degen.dim(), 3);
        assert_eq!(degen.cell.dim, 2);
        // d_0 of the degenerate 3-simplex (s_0 top) is top again
        let back = d2.act(&degen, &Mono::face(3, 0));
        assert_eq!(back, top);
        // and d_3 picks out s_0 d_2 top
        let d3v = d2.act(&degen, &Mono::face(3, 3));
        assert_eq!(d3v.cell.dim, 1);
        assert_eq!(d3v.dim(), 2);
    }

    #[test]
    fn product_is_symmetric_in_counts() {
        let d2 = FiniteSSet::delta(2);
        let d1 = FiniteSSet::delta(1);
        let p = FiniteSSet::product(&d2, &d1);
        let q = FiniteSSet::product(&d1, &d2);
        for d in 0..=3 {
            assert_eq!(p.cells(d), q.cells(d));
        }
        assert!(sset_iso(&p, &q).is_some());
    }
}
