//! Nerves of globular graphs and the marked-subgraph calculus: simplices as
//! chains of st-paths, their pictorial form as wide subgraphs with labeled
//! interior faces, and the operator action on that pictorial form.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::paths_poset::{build_poset, PathPoset};
use crate::plane_graph::{DiPath, EdgeSet, FaceKey, GlobFace, Globular};
use crate::sset::{CellId, FiniteSSet, Mono, SRef};

/// A simplex of the nerve: indices into the path poset, weakly increasing
/// along the order. Strictly increasing chains are the nondegenerate cells.
pub type Chain = Vec<usize>;

/// The nerve of a globular graph, with its nondegenerate chains enumerated
/// per dimension in lexicographic order.
#[derive(Clone)]
pub struct Nerve {
    pub poset: PathPoset,
    pub cells: Vec<Vec<Chain>>,
}

pub fn nerve(g: &Globular) -> Result<Nerve> {
    let poset = build_poset(g)?;
    let n = poset.len();
    let mut cells: Vec<Vec<Chain>> = vec![(0..n).map(|i| vec![i]).collect()];
    loop {
        let last = cells.last().unwrap();
        let mut next = Vec::new();
        for chain in last {
            let tail = *chain.last().unwrap();
            for j in 0..n {
                if j != tail && poset.leq(tail, j) {
                    let mut c = chain.clone();
                    c.push(j);
                    next.push(c);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort();
        cells.push(next);
    }
    Ok(Nerve { poset, cells })
}

impl Nerve {
    /// Largest dimension carrying a nondegenerate simplex.
    pub fn dim(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cell_index(&self, chain: &Chain) -> Option<usize> {
        let d = chain.len() - 1;
        self.cells.get(d)?.binary_search(chain).ok()
    }

    pub fn is_nondegenerate(chain: &Chain) -> bool {
        chain.windows(2).all(|w| w[0] != w[1])
    }

    /// A chain is valid when consecutive entries are related in the poset.
    pub fn is_chain(&self, chain: &Chain) -> bool {
        !chain.is_empty() && chain.windows(2).all(|w| self.poset.leq(w[0], w[1]))
    }

    /// Act by a simplicial operator on the chain level: reindex.
    pub fn act(&self, chain: &Chain, op: &Mono) -> Chain {
        assert_eq!(op.cod + 1, chain.len());
        op.vals.iter().map(|&i| chain[i]).collect()
    }

    /// EZ normal form of an arbitrary chain as a reference to a
    /// nondegenerate cell.
    pub fn to_sref(&self, chain: &Chain) -> SRef {
        let mut nd: Chain = chain.clone();
        nd.dedup();
        let vals = chain
            .iter()
            .map(|p| nd.iter().position(|q| q == p).unwrap())
            .collect();
        let idx = self.cell_index(&nd).expect("chain not in nerve");
        SRef {
            cell: CellId { dim: nd.len() - 1, idx },
            surj: Mono::new(nd.len() - 1, vals),
        }
    }

    pub fn from_sref(&self, r: &SRef) -> Chain {
        let nd = &self.cells[r.cell.dim][r.cell.idx];
        r.surj.vals.iter().map(|&i| nd[i]).collect()
    }

    /// Convert to an abstract finite simplicial set (cells named by their
    /// chains of paths).
    pub fn to_sset(&self) -> FiniteSSet {
        let names: Vec<Vec<String>> = self
            .cells
            .iter()
            .map(|lvl| lvl.iter().map(|c| self.chain_name(c)).collect())
            .collect();
        let mut faces = Vec::new();
        for (d, lvl) in self.cells.iter().enumerate() {
            let mut dim_faces = Vec::new();
            for chain in lvl {
                let mut fs = Vec::new();
                if d > 0 {
                    for i in 0..=d {
                        let mut sub = chain.clone();
                        sub.remove(i);
                        let idx = self.cell_index(&sub).unwrap();
                        fs.push(SRef::nondeg(d - 1, idx));
                    }
                }
                dim_faces.push(fs);
            }
            faces.push(dim_faces);
        }
        FiniteSSet { names, faces, dim_bound: self.dim() }
    }

    pub fn chain_name(&self, chain: &Chain) -> String {
        chain
            .iter()
            .map(|&i| self.poset.paths[i].to_string())
            .join(" <= ")
    }
}

/// An n-marked subgraph: a wide globular subgraph with interior faces
/// labeled in 1..=n. The pictorial form of an n-simplex.
#[derive(Clone, PartialEq, Eq)]
pub struct MarkedSubgraph {
    pub n: usize,
    pub edges: EdgeSet,
    pub labels: BTreeMap<FaceKey, usize>,
}

impl std::fmt::Debug for MarkedSubgraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Marked(n={}, P={{{}}}", self.n, self.edges.iter().join(","))?;
        for (key, l) in &self.labels {
            write!(f, ", {}|{} -> {l}", key.0.iter().join("."), key.1.iter().join("."))?;
        }
        write!(f, ")")
    }
}

impl MarkedSubgraph {
    pub fn key(&self) -> String {
        format!("{self:?}")
    }

    /// Wide in the ambient graph: the subgraph's source and target are the
    /// ambient ones.
    pub fn is_wide(&self, g: &Globular) -> bool {
        g.sub(&self.edges)
            .map(|sub| sub.source == g.source && sub.target == g.target)
            .unwrap_or(false)
    }

    /// Labels respect edge sharing: a face pushing into another must carry a
    /// smaller label.
    pub fn is_admissible(&self, g: &Globular) -> Result<()> {
        let sub = g.sub(&self.edges)?;
        for phi in sub.interior_faces() {
            for psi in sub.interior_faces() {
                let shares = phi.cod.iter().any(|e| psi.dom.contains(e));
                if shares {
                    let (lp, lq) = (self.labels[&phi.key()], self.labels[&psi.key()]);
                    if lp >= lq {
                        return Err(Error::NotAdmissible(format!(
                            "label {lp} of {:?} must be below label {lq} of {:?}",
                            phi.key(),
                            psi.key()
                        )));
                    }
                }
            }
        }
        for (_, l) in &self.labels {
            if *l == 0 || *l > self.n {
                return Err(Error::NotAdmissible(format!(
                    "label {l} out of range 1..={}",
                    self.n
                )));
            }
        }
        Ok(())
    }
}

/// From a chain to its marked subgraph: the union of the paths with each
/// interior face labeled by the first level whose path has it on the left.
pub fn chain_to_marked(g: &Globular, nerve: &Nerve, chain: &Chain) -> MarkedSubgraph {
    let n = chain.len() - 1;
    let mut edges = EdgeSet::new();
    for &i in chain {
        edges.extend(nerve.poset.paths[i].edge_set());
    }
    let sub = g.sub(&edges).expect("union of st-paths is globular");
    let mut labels = BTreeMap::new();
    for face in sub.interior_faces() {
        let lam = (1..=n)
            .find(|&i| {
                let p = &nerve.poset.paths[chain[i]];
                face.cod.iter().all(|e| p.edges.contains(e))
            })
            .expect("every interior face has a witness level");
        // at the minimal such level the face's dom lies on the previous path
        debug_assert!(face
            .dom
            .iter()
            .all(|e| nerve.poset.paths[chain[lam - 1]].edges.contains(e)));
        labels.insert(face.key(), lam);
    }
    MarkedSubgraph { n, edges, labels }
}

/// Rebuild the chain from an admissible marking by repeatedly rewriting the
/// bottom path: at step k every face labeled k replaces its dom by its cod.
pub fn marked_to_chain(g: &Globular, nerve: &Nerve, m: &MarkedSubgraph) -> Result<Chain> {
    m.is_admissible(g)?;
    let sub = g.sub(&m.edges)?;
    if sub.source != g.source || sub.target != g.target {
        return Err(Error::NotGlobularSubgraph(format!(
            "marked subgraph must be wide, found {} to {}",
            sub.source, sub.target
        )));
    }
    let faces: Vec<&GlobFace> = sub.interior_faces().collect();
    if faces.len() != m.labels.len() {
        return Err(Error::NotAdmissible(
            "labeling does not cover the interior faces".into(),
        ));
    }
    let mut current = sub.dom();
    let mut chain = vec![path_index(nerve, &current)?];
    for k in 1..=m.n {
        let step: Vec<&&GlobFace> = faces
            .iter()
            .filter(|f| m.labels.get(&f.key()) == Some(&k))
            .collect();
        // rightmost first so earlier positions stay valid
        let mut spots: Vec<(usize, &GlobFace)> = step
            .iter()
            .map(|f| {
                let at = current.find_subpath(&f.dom).ok_or_else(|| {
                    Error::NotAdmissible(format!("dom of {:?} not on the level-{k} path", f.key()))
                })?;
                Ok((at, **f))
            })
            .collect::<Result<_>>()?;
        spots.sort_by_key(|(at, _)| std::cmp::Reverse(*at));
        for (at, f) in spots {
            let mut edges = current.edges[..at].to_vec();
            edges.extend(f.cod.iter().cloned());
            edges.extend(current.edges[at + f.dom.len()..].iter().cloned());
            current = DiPath::from_edges(&g.graph, &edges)?;
        }
        chain.push(path_index(nerve, &current)?);
    }
    Ok(chain)
}

fn path_index(nerve: &Nerve, p: &DiPath) -> Result<usize> {
    nerve
        .poset
        .index_of(p)
        .ok_or_else(|| Error::Invalid(format!("{p} is not an st-path of the graph")))
}

/// The operator action on marked subgraphs: delete the doms below the
/// operator's reach and the cods above it, relabel, and collapse the blocks
/// of constant label to their boundary globs.
pub fn act_operator(g: &Globular, m: &MarkedSubgraph, op: &Mono) -> Result<MarkedSubgraph> {
    assert_eq!(op.cod, m.n, "operator codomain must match the marking");
    let mm = op.dom();
    let sub = g.sub(&m.edges)?;
    let lo = op.apply(0);
    let hi = op.apply(mm);

    // steps 1 and 2: drop edges of low doms and high cods
    let mut removed = EdgeSet::new();
    for face in sub.interior_faces() {
        let lam = m.labels[&face.key()];
        if lam <= lo {
            removed.extend(face.dom.iter().cloned());
        }
        if lam > hi {
            removed.extend(face.cod.iter().cloned());
        }
    }
    let kept: EdgeSet = m.edges.difference(&removed).cloned().collect();
    let trimmed = g.sub(&kept)?;

    // step 3: relabel the surviving faces
    let mut relabeled: BTreeMap<FaceKey, usize> = BTreeMap::new();
    for face in trimmed.interior_faces() {
        let lam = *m.labels.get(&face.key()).ok_or_else(|| {
            Error::Invalid(format!("face {:?} changed shape during trimming", face.key()))
        })?;
        debug_assert!(lo < lam && lam <= hi);
        let hat = (1..=mm).find(|&k| op.apply(k) >= lam).unwrap();
        relabeled.insert(face.key(), hat);
    }

    // step 4: inside each edge-connected block of constant label, drop what
    // does not touch the block's own exterior face
    let mut final_edges = kept.clone();
    let labels_of: Vec<(FaceKey, usize)> = relabeled.iter().map(|(k, v)| (k.clone(), *v)).collect();
    let mut assigned: BTreeMap<FaceKey, bool> = labels_of.iter().map(|(k, _)| (k.clone(), false)).collect();
    let mut blocks: Vec<(usize, Vec<FaceKey>)> = Vec::new();
    for (key, c) in &labels_of {
        if assigned[key] {
            continue;
        }
        let mut block = vec![key.clone()];
        *assigned.get_mut(key).unwrap() = true;
        let mut frontier = vec![key.clone()];
        while let Some(cur) = frontier.pop() {
            let cur_edges: EdgeSet = cur.0.iter().chain(cur.1.iter()).cloned().collect();
            for (other, c2) in &labels_of {
                if assigned[other] || c2 != c {
                    continue;
                }
                let touches = other.0.iter().chain(other.1.iter()).any(|e| cur_edges.contains(e));
                if touches {
                    *assigned.get_mut(other).unwrap() = true;
                    block.push(other.clone());
                    frontier.push(other.clone());
                }
            }
        }
        blocks.push((*c, block));
    }
    let mut final_labels: BTreeMap<FaceKey, usize> = BTreeMap::new();
    for (c, block) in &blocks {
        let mut block_edges = EdgeSet::new();
        for key in block {
            block_edges.extend(key.0.iter().cloned());
            block_edges.extend(key.1.iter().cloned());
        }
        let bsub = trimmed.sub(&block_edges)?;
        let boundary = bsub.boundary_edges();
        for e in &block_edges {
            if !boundary.contains(e) {
                final_edges.remove(e);
            }
        }
        let collapsed = trimmed.sub(&boundary)?;
        for face in collapsed.interior_faces() {
            final_labels.insert(face.key(), *c);
        }
    }
    // faces in no block (none labeled): the result must have no faces at all
    let result_sub = g.sub(&final_edges)?;
    for face in result_sub.interior_faces() {
        if !final_labels.contains_key(&face.key()) {
            return Err(Error::Invalid(format!(
                "face {:?} survived without a label",
                face.key()
            )));
        }
    }
    final_labels.retain(|k, _| result_sub.face_by_key(k).is_some());
    Ok(MarkedSubgraph { n: mm, edges: final_edges, labels: final_labels })
}

/// Join of marked subgraphs along the cut vertex of an ambient join: union
/// the carriers and the labelings.
pub fn join_marked(m1: &MarkedSubgraph, m2: &MarkedSubgraph) -> MarkedSubgraph {
    assert_eq!(m1.n, m2.n, "only equal-dimension simplices join");
    let mut edges = m1.edges.clone();
    edges.extend(m2.edges.iter().cloned());
    let mut labels = m1.labels.clone();
    labels.extend(m2.labels.clone());
    MarkedSubgraph { n: m1.n, edges, labels }
}

/// Chain-level join: concatenate the paths levelwise. `g1`, `g2` sit inside
/// `joined` sharing the glue vertex.
pub fn join_chain(
    n1: &Nerve,
    n2: &Nerve,
    joined: &Nerve,
    g: &Globular,
    c1: &Chain,
    c2: &Chain,
) -> Chain {
    assert_eq!(c1.len(), c2.len());
    c1.iter()
        .zip(c2.iter())
        .map(|(&i, &j)| {
            let p = n1.poset.paths[i].concat(&n2.poset.paths[j]);
            joined
                .poset
                .index_of(&DiPath::from_edges(&g.graph, &p.edges).unwrap())
                .expect("concatenated path exists in the join")
        })
        .collect()
}

/// Split a chain of the join at the glue vertex into its two legs.
pub fn split_chain(
    joined: &Nerve,
    n1: &Nerve,
    n2: &Nerve,
    glue: &crate::plane_graph::VertexId,
    chain: &Chain,
) -> (Chain, Chain) {
    let mut left = Vec::new();
    let mut right = Vec::new();
    for &i in chain {
        let p = &joined.poset.paths[i];
        let cut = p.verts.iter().position(|v| v == glue).expect("path passes the glue vertex");
        let l = DiPath {
            verts: p.verts[..=cut].to_vec(),
            edges: p.edges[..cut].to_vec(),
        };
        let r = DiPath {
            verts: p.verts[cut..].to_vec(),
            edges: p.edges[cut..].to_vec(),
        };
        left.push(n1.poset.index_of(&l).expect("left leg is a path"));
        right.push(n2.poset.index_of(&r).expect("right leg is a path"));
    }
    (left, right)
}
