//! Simplicial categories of complete pasting diagrams: objects are vertices,
//! mapping spaces are nerves of the restricted diagrams, composition is path
//! concatenation. Also: atomic decompositions, the cube representation over
//! minimal complete diagrams, labelings and their correspondence with
//! simplicial functors, and the lozenge / over-category constructions.

use std::collections::{BTreeMap, BTreeSet};
use std::rc::Rc;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::nerve::{act_operator, chain_to_marked, nerve, Chain, MarkedSubgraph, Nerve};
use crate::pasting::PastingDiagram;
use crate::plane_graph::{DiPath, EdgeId, FaceKey, Globular, VertexId};
use crate::sset::{joint_normal_form, CellId, FiniteSSet, Mono, SRef};

pub type HomKey = (String, String);

/// A simplicial category with finitely many objects and finite (possibly
/// truncated) mapping spaces. Composition is tabulated on the jointly
/// nondegenerate pairs and extended simplicially.
#[derive(Clone)]
pub struct SCat {
    pub objects: Vec<String>,
    pub homs: BTreeMap<HomKey, FiniteSSet>,
    pub comp: BTreeMap<(String, String, String), BTreeMap<(SRef, SRef), SRef>>,
    pub ids: BTreeMap<String, SRef>,
    /// mapping spaces are stored up to this simplicial dimension
    pub dim: usize,
}

impl SCat {
    pub fn hom(&self, x: &str, y: &str) -> &FiniteSSet {
        &self.homs[&(x.to_string(), y.to_string())]
    }

    pub fn identity(&self, x: &str) -> &SRef {
        &self.ids[x]
    }

    /// Compose two simplices of equal dimension across a middle object.
    pub fn compose(&self, x: &str, y: &str, z: &str, r1: &SRef, r2: &SRef) -> SRef {
        let (n1, n2, rho) = joint_normal_form(r1, r2);
        let table = &self.comp[&(x.to_string(), y.to_string(), z.to_string())];
        let v = table
            .get(&(n1.clone(), n2.clone()))
            .unwrap_or_else(|| panic!("no composite for {n1:?} * {n2:?} at ({x},{y},{z})"));
        self.hom(x, z).act(v, &rho)
    }

    /// Fold a left-to-right sequence of simplices along a chain of objects.
    pub fn compose_all(&self, objects: &[String], refs: &[SRef]) -> SRef {
        assert_eq!(objects.len(), refs.len() + 1);
        assert!(!refs.is_empty());
        let mut acc = refs[0].clone();
        for i in 1..refs.len() {
            acc = self.compose(&objects[0], &objects[i], &objects[i + 1], &acc, &refs[i]);
        }
        acc
    }

    /// The terminal simplicial category.
    pub fn terminal() -> SCat {
        let pt = FiniteSSet::point("id");
        SCat {
            objects: vec!["*".into()],
            homs: BTreeMap::from([(("*".to_string(), "*".to_string()), pt)]),
            comp: BTreeMap::from([(
                ("*".to_string(), "*".to_string(), "*".to_string()),
                BTreeMap::from([(
                    (SRef::nondeg(0, 0), SRef::nondeg(0, 0)),
                    SRef::nondeg(0, 0),
                )]),
            )]),
            ids: BTreeMap::from([("*".to_string(), SRef::nondeg(0, 0))]),
            dim: 8,
        }
    }

    /// Unit and simpliciality checks for the composition tables, plus
    /// associativity on all composable nondegenerate triples up to `depth`.
    pub fn validate(&self, depth: usize) -> Result<()> {
        for x in &self.objects {
            for y in &self.objects {
                let hom = self.hom(x, y);
                for d in 0..hom.names.len().min(depth + 1) {
                    for idx in 0..hom.cells(d) {
                        let r = SRef::nondeg(d, idx);
                        let padded_id = |obj: &str| {
                            let id = self.identity(obj).clone();
                            SRef { cell: id.cell, surj: Mono::new(0, vec![0; d + 1]) }
                        };
                        let lhs = self.compose(x, x, y, &padded_id(x), &r);
                        let rhs = self.compose(x, y, y, &r, &padded_id(y));
                        if lhs != r || rhs != r {
                            return Err(Error::Invalid(format!("unit law fails at ({x},{y})")));
                        }
                    }
                }
            }
        }
        for ((x, y, z), table) in &self.comp {
            for ((r1, r2), v) in table {
                let n = r1.dim();
                if n == 0 || n > depth {
                    continue;
                }
                for i in 0..=n {
                    let d = Mono::face(n, i);
                    let lhs = self.compose(x, y, z, &self.hom(x, y).act(r1, &d), &self.hom(y, z).act(r2, &d));
                    let rhs = self.hom(x, z).act(v, &d);
                    if lhs != rhs {
                        return Err(Error::Invalid(format!(
                            "composition is not simplicial at ({x},{y},{z})"
                        )));
                    }
                }
            }
        }
        for x in &self.objects {
            for y in &self.objects {
                for z in &self.objects {
                    for w in &self.objects {
                        for n in 0..=depth {
                            for r1 in self.hom(x, y).all_simplices(n) {
                                for r2 in self.hom(y, z).all_simplices(n) {
                                    for r3 in self.hom(z, w).all_simplices(n) {
                                        let a = self.compose(
                                            x, z, w,
                                            &self.compose(x, y, z, &r1, &r2),
                                            &r3,
                                        );
                                        let b = self.compose(
                                            x, y, w,
                                            &r1,
                                            &self.compose(y, z, w, &r2, &r3),
                                        );
                                        if a != b {
                                            return Err(Error::Invalid(format!(
                                                "associativity fails at ({x},{y},{z},{w})"
                                            )));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Per-hom chain data of a pasting-diagram category: the hom graph, its
/// nerve, and the subset chains indexing the hom cells.
#[derive(Clone)]
pub struct HomData {
    pub graph: Rc<Globular>,
    pub nerve: Nerve,
    /// chains[dim][idx] is the chain of the hom cell (dim, idx)
    pub chains: Vec<Vec<Chain>>,
}

/// The simplicial category of a complete pasting diagram, with the chain
/// semantics of every mapping space retained.
#[derive(Clone)]
pub struct PdCat {
    pub scat: SCat,
    pub diagram: PastingDiagram,
    pub hom_data: BTreeMap<HomKey, HomData>,
}

fn hom_key(x: &VertexId, y: &VertexId) -> HomKey {
    (x.0.clone(), y.0.clone())
}

impl PdCat {
    pub fn hom_data(&self, x: &str, y: &str) -> Option<&HomData> {
        self.hom_data.get(&(x.to_string(), y.to_string()))
    }

    pub fn ref_of_chain(&self, x: &str, y: &str, chain: &Chain) -> SRef {
        let data = self.hom_data(x, y).expect("hom has chain data");
        let mut nd = chain.clone();
        nd.dedup();
        let vals = chain.iter().map(|p| nd.iter().position(|q| q == p).unwrap()).collect();
        let d = nd.len() - 1;
        let idx = data.chains[d]
            .iter()
            .position(|c| c == &nd)
            .expect("chain is a cell of the hom");
        SRef { cell: CellId { dim: d, idx }, surj: Mono::new(d, vals) }
    }

    pub fn chain_of_ref(&self, x: &str, y: &str, r: &SRef) -> Chain {
        let data = self.hom_data(x, y).expect("hom has chain data");
        let nd = &data.chains[r.cell.dim][r.cell.idx];
        r.surj.vals.iter().map(|&i| nd[i]).collect()
    }

    /// Concatenate two hom chains across the middle vertex.
    fn concat_chains(&self, x: &str, y: &str, z: &str, c1: &Chain, c2: &Chain) -> Chain {
        let d1 = self.hom_data(x, y).unwrap();
        let d2 = self.hom_data(y, z).unwrap();
        let dxz = self.hom_data(x, z).unwrap();
        c1.iter()
            .zip(c2.iter())
            .map(|(&i, &j)| {
                let p = d1.nerve.poset.paths[i].concat(&d2.nerve.poset.paths[j]);
                dxz.nerve
                    .poset
                    .index_of(&p)
                    .expect("concatenated path lies in the target hom graph")
            })
            .collect()
    }
}

/// Build the simplicial category of a complete pasting diagram.
pub fn build_scat(diagram: &PastingDiagram) -> Result<PdCat> {
    if !diagram.is_complete() {
        return Err(Error::NotComplete("mapping spaces need a complete diagram".into()));
    }
    let g = &diagram.graph;
    let objects: Vec<String> = g.graph.vertices().iter().map(|v| v.0.clone()).collect();
    let mut homs = BTreeMap::new();
    let mut hom_data = BTreeMap::new();
    let mut ids = BTreeMap::new();
    let mut dim = 0usize;
    for x in g.graph.vertices() {
        for y in g.graph.vertices() {
            let key = hom_key(x, y);
            if x == y {
                homs.insert(key.clone(), FiniteSSet::point("id"));
                ids.insert(x.0.clone(), SRef::nondeg(0, 0));
                continue;
            }
            let sub_edges = match g.xy_edge_set(x, y) {
                Some(s) if !s.is_empty() => s,
                _ => {
                    homs.insert(key.clone(), FiniteSSet::empty());
                    continue;
                }
            };
            let restricted = diagram.restrict(&sub_edges)?;
            let hgraph = restricted.graph.clone();
            let nv = nerve(&hgraph)?;
            let subset = restricted.nerve_subset_complete(&nv);
            let chains: Vec<Vec<Chain>> = subset
                .dims
                .iter()
                .map(|lvl| lvl.iter().cloned().collect::<Vec<_>>())
                .collect();
            // drop trailing empty dimensions
            let mut chains = chains;
            while chains.len() > 1 && chains.last().unwrap().is_empty() {
                chains.pop();
            }
            dim = dim.max(chains.len() - 1);
            let names = chains
                .iter()
                .map(|lvl| lvl.iter().map(|c| nv.chain_name(c)).collect::<Vec<_>>())
                .collect::<Vec<_>>();
            let mut faces: Vec<Vec<Vec<SRef>>> = Vec::new();
            for (d, lvl) in chains.iter().enumerate() {
                let mut per_cell = Vec::new();
                for chain in lvl {
                    let mut fs = Vec::new();
                    if d > 0 {
                        for i in 0..=d {
                            let mut f = chain.clone();
                            f.remove(i);
                            let idx = chains[d - 1]
                                .iter()
                                .position(|c| c == &f)
                                .expect("face of a member chain is a member");
                            fs.push(SRef::nondeg(d - 1, idx));
                        }
                    }
                    per_cell.push(fs);
                }
                faces.push(per_cell);
            }
            let sset = FiniteSSet { names, faces, dim_bound: chains.len() - 1 };
            homs.insert(key.clone(), sset);
            hom_data.insert(key, HomData { graph: hgraph, nerve: nv, chains });
        }
    }
    let mut cat = PdCat {
        scat: SCat { objects, homs, comp: BTreeMap::new(), ids, dim },
        diagram: diagram.clone(),
        hom_data,
    };
    // composition tables on jointly nondegenerate pairs
    let mut comp = BTreeMap::new();
    let objs = cat.scat.objects.clone();
    for x in &objs {
        for y in &objs {
            for z in &objs {
                let h1 = cat.scat.hom(x, y);
                let h2 = cat.scat.hom(y, z);
                if h1.is_empty() || h2.is_empty() {
                    continue;
                }
                let mut table = BTreeMap::new();
                for p in 0..h1.names.len() {
                    for q in 0..h2.names.len() {
                        for n in p.max(q)..=p + q {
                            for s1 in Mono::surjections(n, p) {
                                for s2 in Mono::surjections(n, q) {
                                    let f1 = s1.flats();
                                    if s2.flats().iter().any(|a| f1.contains(a)) {
                                        continue;
                                    }
                                    for i1 in 0..h1.cells(p) {
                                        for i2 in 0..h2.cells(q) {
                                            let r1 = SRef {
                                                cell: CellId { dim: p, idx: i1 },
                                                surj: s1.clone(),
                                            };
                                            let r2 = SRef {
                                                cell: CellId { dim: q, idx: i2 },
                                                surj: s2.clone(),
                                            };
                                            let v = compose_via_chains(&cat, x, y, z, &r1, &r2);
                                            table.insert((r1, r2), v);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                comp.insert((x.clone(), y.clone(), z.clone()), table);
            }
        }
    }
    cat.scat.comp = comp;
    Ok(cat)
}

fn compose_via_chains(cat: &PdCat, x: &str, y: &str, z: &str, r1: &SRef, r2: &SRef) -> SRef {
    // identity homs absorb
    if x == y {
        return r2.clone();
    }
    if y == z {
        return r1.clone();
    }
    let c1 = cat.chain_of_ref(x, y, r1);
    let c2 = cat.chain_of_ref(y, z, r2);
    let c = cat.concat_chains(x, y, z, &c1, &c2);
    cat.ref_of_chain(x, z, &c)
}

/// The unique factorization of a hom simplex into atomic pieces: split the
/// carrier at its cut vertices; each piece is 2-connected or a single edge.
pub fn atomic_decomposition(
    cat: &PdCat,
    x: &str,
    y: &str,
    r: &SRef,
) -> Vec<(MarkedSubgraph, SRef)> {
    let data = cat.hom_data(x, y).expect("atomic decomposition needs a nontrivial hom");
    let chain = cat.chain_of_ref(x, y, r);
    let m = chain_to_marked(&data.graph, &data.nerve, &chain);
    let carrier = data.graph.sub(&m.edges).unwrap();
    let factors = carrier.join_factors();
    let mut out = Vec::new();
    for fac in factors {
        let labels: BTreeMap<FaceKey, usize> = m
            .labels
            .iter()
            .filter(|(k, _)| k.0.iter().all(|e| fac.contains(e)))
            .map(|(k, v)| (k.clone(), *v))
            .collect();
        let piece = MarkedSubgraph { n: m.n, edges: fac, labels };
        let sub = data.graph.sub(&piece.edges).unwrap();
        debug_assert!(sub.is_two_connected() || sub.graph.edge_count() == 1);
        // the piece as a simplex of its own hom, in EZ normal form
        let (px, py) = (sub.source.0.clone(), sub.target.0.clone());
        let pd = cat.hom_data(&px, &py).expect("factor hom exists");
        let pchain = crate::nerve::marked_to_chain(&pd.graph, &pd.nerve, &piece)
            .expect("atomic pieces are admissible");
        out.push((piece, cat.ref_of_chain(&px, &py, &pchain)));
    }
    out
}

/// One tensor factor of a cube: a single edge or a single labeled face.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CubeFactor {
    Edge(EdgeId),
    Face { key: FaceKey, label: usize },
}

impl CubeFactor {
    pub fn epsilon(&self) -> usize {
        match self {
            CubeFactor::Edge(_) => 0,
            CubeFactor::Face { .. } => 1,
        }
    }
}

/// The cube representation of a simplex over a minimal complete diagram:
/// its factor list and the classifying tuple of monotone maps into the cube.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CubeRep {
    pub factors: Vec<CubeFactor>,
    /// beta[i]: [n] -> [epsilon_i]; for faces beta_i(j) = [j >= label]
    pub beta: Vec<Mono>,
}

/// One coordinate of a map between cubes: project a source coordinate or hit
/// a constant vertex of the interval.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CubeComponent {
    Proj(usize),
    Const(usize),
}

/// A map between products of intervals, one component per target factor.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CubeMap {
    pub components: Vec<CubeComponent>,
    pub src_factors: usize,
}

impl CubeMap {
    /// self ∘ other.
    pub fn compose(&self, other: &CubeMap) -> CubeMap {
        CubeMap {
            components: self
                .components
                .iter()
                .map(|c| match c {
                    CubeComponent::Const(v) => CubeComponent::Const(*v),
                    CubeComponent::Proj(j) => other.components[*j],
                })
                .collect(),
            src_factors: other.src_factors,
        }
    }

    /// Postcompose with a point of the source cube: a tuple of monotone maps.
    pub fn apply(&self, point: &[Mono]) -> Vec<Mono> {
        let n = point
            .first()
            .map(|m| m.dom())
            .expect("cube maps apply to nonempty tuples");
        self.components
            .iter()
            .map(|c| match c {
                CubeComponent::Proj(j) => point[*j].clone(),
                CubeComponent::Const(v) => Mono::new(1, vec![*v; n + 1]),
            })
            .collect()
    }
}

/// Split a marked subgraph over a minimal complete diagram into its edge and
/// face factors, left to right.
pub fn cube_factors(g: &Globular, m: &MarkedSubgraph) -> Result<Vec<CubeFactor>> {
    let sub = g.sub(&m.edges)?;
    let mut out = Vec::new();
    for fac in sub.join_factors() {
        let fsub = g.sub(&fac)?;
        if fsub.interior_face_count() == 0 {
            if fsub.graph.edge_count() != 1 {
                return Err(Error::NotMinimalComplete);
            }
            out.push(CubeFactor::Edge(fac.iter().next().unwrap().clone()));
        } else if fsub.interior_face_count() == 1 && fsub.boundary_edges() == fac {
            let face = fsub.interior_faces().next().unwrap();
            let label = *m.labels.get(&face.key()).ok_or(Error::NotMinimalComplete)?;
            out.push(CubeFactor::Face { key: face.key(), label });
        } else {
            return Err(Error::NotMinimalComplete);
        }
    }
    Ok(out)
}

/// The classifying map of a simplex into its cube.
pub fn cube_rep(g: &Globular, m: &MarkedSubgraph) -> Result<CubeRep> {
    let factors = cube_factors(g, m)?;
    let n = m.n;
    let beta = factors
        .iter()
        .map(|f| match f {
            CubeFactor::Edge(_) => Mono::new(0, vec![0; n + 1]),
            CubeFactor::Face { label, .. } => {
                Mono::new(1, (0..=n).map(|j| usize::from(j >= *label)).collect())
            }
        })
        .collect();
    Ok(CubeRep { factors, beta })
}

/// The comparison map of cubes induced by a simplicial operator: identities
/// on surviving factors and end inclusions on the collapsed ones.
pub fn epsilon_map(g: &Globular, m: &MarkedSubgraph, op: &Mono) -> Result<CubeMap> {
    let target = cube_factors(g, m)?;
    let acted = act_operator(g, m, op)?;
    let source = cube_factors(g, &acted)?;
    let (lo, hi) = (op.apply(0), op.apply(op.dom()));
    let mut components = Vec::new();
    let mut cursor = 0usize;
    let eat_path = |edges: &[EdgeId], cursor: &mut usize| -> Result<()> {
        for e in edges {
            match source.get(*cursor) {
                Some(CubeFactor::Edge(d)) if d == e => *cursor += 1,
                _ => return Err(Error::Invalid("factor decompositions misaligned".into())),
            }
        }
        Ok(())
    };
    for fac in &target {
        match fac {
            CubeFactor::Edge(e) => {
                match source.get(cursor) {
                    Some(CubeFactor::Edge(d)) if d == e => {
                        components.push(CubeComponent::Proj(cursor));
                        cursor += 1;
                    }
                    _ => return Err(Error::Invalid("edge factor lost under the operator".into())),
                }
            }
            CubeFactor::Face { key, label } => {
                if *label <= lo {
                    // the face collapsed onto its codomain
                    eat_path(&key.1, &mut cursor)?;
                    components.push(CubeComponent::Const(1));
                } else if *label > hi {
                    eat_path(&key.0, &mut cursor)?;
                    components.push(CubeComponent::Const(0));
                } else {
                    match source.get(cursor) {
                        Some(CubeFactor::Face { key: k2, .. }) if k2 == key => {
                            components.push(CubeComponent::Proj(cursor));
                            cursor += 1;
                        }
                        _ => {
                            return Err(Error::Invalid(
                                "face factor lost under the operator".into(),
                            ))
                        }
                    }
                }
            }
        }
    }
    if cursor != source.len() {
        return Err(Error::Invalid("factor decompositions misaligned".into()));
    }
    Ok(CubeMap { components, src_factors: source.len() })
}

/// A simplicial functor, stored extensionally: images of the nondegenerate
/// hom cells.
#[derive(Clone, PartialEq, Eq)]
pub struct SFunctor {
    pub obj: BTreeMap<String, String>,
    pub images: BTreeMap<HomKey, Vec<Vec<SRef>>>,
}

impl std::fmt::Debug for SFunctor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SFunctor{:?}", self.obj)
    }
}

impl SFunctor {
    pub fn apply(&self, target: &SCat, x: &str, y: &str, r: &SRef) -> SRef {
        let img = &self.images[&(x.to_string(), y.to_string())][r.cell.dim][r.cell.idx];
        let tx = &self.obj[x];
        let ty = &self.obj[y];
        target.hom(tx, ty).act(img, &r.surj)
    }

    /// Faces, identities and all tabulated compositions must be preserved.
    pub fn validate(&self, dom: &SCat, cod: &SCat) -> Result<()> {
        for ((x, y), per_dim) in &self.images {
            let dhom = dom.hom(x, y);
            let (tx, ty) = (&self.obj[x], &self.obj[y]);
            let chom = cod.hom(tx, ty);
            for (d, lvl) in per_dim.iter().enumerate() {
                if lvl.len() != dhom.cells(d) {
                    return Err(Error::Invalid(format!("missing images at ({x},{y}) dim {d}")));
                }
                for (idx, img) in lvl.iter().enumerate() {
                    if img.dim() != d {
                        return Err(Error::Invalid("image dimension mismatch".into()));
                    }
                    if d == 0 {
                        continue;
                    }
                    let r = SRef::nondeg(d, idx);
                    for i in 0..=d {
                        let lhs = self.apply(cod, x, y, &dhom.act(&r, &Mono::face(d, i)));
                        let rhs = chom.act(img, &Mono::face(d, i));
                        if lhs != rhs {
                            return Err(Error::Invalid(format!(
                                "functor is not simplicial at ({x},{y})"
                            )));
                        }
                    }
                }
            }
        }
        for (x, id) in &dom.ids {
            let img = self.apply(cod, x, x, id);
            if &img != cod.identity(&self.obj[x]) {
                return Err(Error::Invalid(format!("identity at {x} not preserved")));
            }
        }
        for ((x, y, z), table) in &dom.comp {
            let (tx, ty, tz) = (&self.obj[x], &self.obj[y], &self.obj[z]);
            for ((r1, r2), v) in table {
                let lhs = self.apply(cod, x, z, v);
                let rhs = cod.compose(
                    tx,
                    ty,
                    tz,
                    &self.apply(cod, x, y, r1),
                    &self.apply(cod, y, z, r2),
                );
                if lhs != rhs {
                    return Err(Error::Invalid(format!(
                        "composition not preserved at ({x},{y},{z})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The identity-on-objects functor induced by an inclusion of complete
    /// diagrams on the same graph.
    pub fn inclusion(sub: &PdCat, full: &PdCat) -> SFunctor {
        let mut images = BTreeMap::new();
        for (key, hom) in &sub.scat.homs {
            let mut per_dim = Vec::new();
            for d in 0..hom.names.len() {
                let mut lvl = Vec::new();
                for idx in 0..hom.cells(d) {
                    if sub.hom_data.contains_key(key) {
                        let chain = sub.chain_of_ref(&key.0, &key.1, &SRef::nondeg(d, idx));
                        lvl.push(full.ref_of_chain(&key.0, &key.1, &chain));
                    } else {
                        lvl.push(SRef::nondeg(d, idx)); // identity homs
                    }
                }
                per_dim.push(lvl);
            }
            images.insert(key.clone(), per_dim);
        }
        SFunctor {
            obj: sub.scat.objects.iter().map(|o| (o.clone(), o.clone())).collect(),
            images,
        }
    }

    /// other ∘ self, where self lands in other's domain.
    pub fn then(&self, other: &SFunctor, cod: &SCat) -> SFunctor {
        let obj: BTreeMap<String, String> = self
            .obj
            .iter()
            .map(|(k, v)| (k.clone(), other.obj[v].clone()))
            .collect();
        let mut images = BTreeMap::new();
        for ((x, y), per_dim) in &self.images {
            let (mx, my) = (&self.obj[x], &self.obj[y]);
            let mapped: Vec<Vec<SRef>> = per_dim
                .iter()
                .map(|lvl| lvl.iter().map(|r| other.apply(cod, mx, my, r)).collect())
                .collect();
            images.insert((x.clone(), y.clone()), mapped);
        }
        SFunctor { obj, images }
    }
}

/// A labeling of a globular graph in a simplicial category: objects for
/// vertices, 0-simplices for edges, 1-simplices for interior faces, with the
/// face boundaries matching the edge composites.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Labeling {
    pub obj: BTreeMap<VertexId, String>,
    pub edge: BTreeMap<EdgeId, SRef>,
    pub face: BTreeMap<FaceKey, SRef>,
}

impl Labeling {
    /// The composite 0-simplex of a directed path under the labeling.
    pub fn path_composite(&self, g: &Globular, target: &SCat, p: &[EdgeId]) -> SRef {
        assert!(!p.is_empty());
        let mut objects = vec![self.obj[g.graph.src(&p[0])].clone()];
        let mut refs = Vec::new();
        for e in p {
            objects.push(self.obj[g.graph.dst(e)].clone());
            refs.push(self.edge[e].clone());
        }
        target.compose_all(&objects, &refs)
    }

    pub fn validate(&self, g: &Globular, target: &SCat) -> Result<()> {
        for v in g.graph.vertices() {
            if !self.obj.contains_key(v) {
                return Err(Error::InvalidLabeling(format!("vertex {v} unlabeled")));
            }
        }
        for e in g.graph.edge_ids() {
            let r = self
                .edge
                .get(e)
                .ok_or_else(|| Error::InvalidLabeling(format!("edge {e} unlabeled")))?;
            if r.dim() != 0 {
                return Err(Error::InvalidLabeling(format!("edge {e} needs a 0-simplex")));
            }
        }
        for face in g.interior_faces() {
            let r = self
                .face
                .get(&face.key())
                .ok_or_else(|| Error::InvalidLabeling(format!("face {:?} unlabeled", face.key())))?;
            if r.dim() != 1 {
                return Err(Error::InvalidLabeling("faces need 1-simplices".into()));
            }
            let hom = target.hom(&self.obj[&face.src], &self.obj[&face.tgt]);
            let d1 = hom.act(r, &Mono::face(1, 1));
            let d0 = hom.act(r, &Mono::face(1, 0));
            if d1 != self.path_composite(g, target, &face.dom) {
                return Err(Error::InvalidLabeling(format!(
                    "face {:?}: source end does not match the dom composite",
                    face.key()
                )));
            }
            if d0 != self.path_composite(g, target, &face.cod) {
                return Err(Error::InvalidLabeling(format!(
                    "face {:?}: target end does not match the cod composite",
                    face.key()
                )));
            }
        }
        Ok(())
    }
}

/// Turn a labeling into the simplicial functor out of the minimal complete
/// diagram's category: each simplex is evaluated through its cube.
pub fn labeling_to_functor(
    lam: &Labeling,
    dom: &PdCat,
    target: &SCat,
) -> Result<SFunctor> {
    let g = &dom.diagram.graph;
    lam.validate(g, target)?;
    let obj: BTreeMap<String, String> =
        lam.obj.iter().map(|(v, o)| (v.0.clone(), o.clone())).collect();
    let mut images = BTreeMap::new();
    for (key, hom) in &dom.scat.homs {
        let mut per_dim = Vec::new();
        for d in 0..hom.names.len() {
            let mut lvl = Vec::new();
            for idx in 0..hom.cells(d) {
                if key.0 == key.1 {
                    lvl.push(target.identity(&obj[&key.0]).clone());
                    continue;
                }
                let data = dom.hom_data(&key.0, &key.1).unwrap();
                let chain = dom.chain_of_ref(&key.0, &key.1, &SRef::nondeg(d, idx));
                let m = chain_to_marked(&data.graph, &data.nerve, &chain);
                let rep = cube_rep(&data.graph, &m)?;
                // pad each factor label to dimension d through its beta map
                let mut objects = vec![obj[&key.0].clone()];
                let mut refs = Vec::new();
                for (fac, beta) in rep.factors.iter().zip(rep.beta.iter()) {
                    let (val, to) = match fac {
                        CubeFactor::Edge(e) => (lam.edge[e].clone(), lam.obj[g.graph.dst(e)].clone()),
                        CubeFactor::Face { key: fk, .. } => {
                            let face = data.graph.face_by_key(fk).unwrap();
                            (lam.face[fk].clone(), lam.obj[&face.tgt].clone())
                        }
                    };
                    let from = objects.last().unwrap().clone();
                    refs.push(target.hom(&from, &to).act(&val, beta));
                    objects.push(to);
                }
                lvl.push(target.compose_all(&objects, &refs));
            }
            per_dim.push(lvl);
        }
        images.insert(key.clone(), per_dim);
    }
    let u = SFunctor { obj, images };
    u.validate(&dom.scat, target)?;
    Ok(u)
}

/// Read the labeling off a functor: edges and interior faces are particular
/// low-dimensional hom cells.
pub fn functor_to_labeling(u: &SFunctor, dom: &PdCat, target: &SCat) -> Labeling {
    let g = &dom.diagram.graph;
    let obj: BTreeMap<VertexId, String> = g
        .graph
        .vertices()
        .iter()
        .map(|v| (v.clone(), u.obj[&v.0].clone()))
        .collect();
    let mut edge = BTreeMap::new();
    for e in g.graph.edge_ids() {
        let (x, y) = g.graph.ends(e);
        let data = dom.hom_data(&x.0, &y.0).unwrap();
        let p = DiPath::from_edges(&g.graph, std::slice::from_ref(e)).unwrap();
        let idx = data.nerve.poset.index_of(&p).unwrap();
        let r = dom.ref_of_chain(&x.0, &y.0, &vec![idx]);
        edge.insert(e.clone(), u.apply(target, &x.0, &y.0, &r));
    }
    let mut face = BTreeMap::new();
    for f in g.interior_faces() {
        let (x, y) = (&f.src, &f.tgt);
        let data = dom.hom_data(&x.0, &y.0).unwrap();
        let pd = DiPath::from_edges(&g.graph, &f.dom).unwrap();
        let pc = DiPath::from_edges(&g.graph, &f.cod).unwrap();
        let chain = vec![
            data.nerve.poset.index_of(&pd).unwrap(),
            data.nerve.poset.index_of(&pc).unwrap(),
        ];
        let r = dom.ref_of_chain(&x.0, &y.0, &chain);
        face.insert(f.key(), u.apply(target, &x.0, &y.0, &r));
    }
    Labeling { obj, edge, face }
}

/// Freely adjoin an initial and a terminal object. The new objects sit at
/// the ends of the object list, named `s`/`t` with primes until fresh.
pub fn lozenge(a: &SCat) -> SCat {
    let fresh = |base: &str| {
        let mut name = base.to_string();
        while a.objects.contains(&name) {
            name.push('\'');
        }
        name
    };
    let (init, term) = (fresh("s"), fresh("t"));
    let mut objects = vec![init.clone()];
    objects.extend(a.objects.iter().cloned());
    objects.push(term.clone());
    let pt = FiniteSSet::point("id");
    let mut homs = BTreeMap::new();
    let mut ids = a.ids.clone();
    for x in &objects {
        for y in &objects {
            let key = (x.clone(), y.clone());
            let hom = if a.objects.contains(x) && a.objects.contains(y) {
                a.hom(x, y).clone()
            } else if x == &init || y == &term {
                pt.clone()
            } else {
                FiniteSSet::empty()
            };
            homs.insert(key, hom);
        }
    }
    ids.insert(init, SRef::nondeg(0, 0));
    ids.insert(term, SRef::nondeg(0, 0));
    let mut comp = a.comp.clone();
    let pt_ref = SRef::nondeg(0, 0);
    for x in &objects {
        for y in &objects {
            for z in &objects {
                let key = (x.clone(), y.clone(), z.clone());
                if comp.contains_key(&key) {
                    continue;
                }
                if homs[&(x.clone(), y.clone())].is_empty()
                    || homs[&(y.clone(), z.clone())].is_empty()
                {
                    comp.insert(key, BTreeMap::new());
                    continue;
                }
                // the target is a point; every pair composes to it
                let mut table = BTreeMap::new();
                let h1 = &homs[&(x.clone(), y.clone())];
                let h2 = &homs[&(y.clone(), z.clone())];
                for p in 0..h1.names.len() {
                    for q in 0..h2.names.len() {
                        for n in p.max(q)..=p + q {
                            for s1 in Mono::surjections(n, p) {
                                for s2 in Mono::surjections(n, q) {
                                    let f1 = s1.flats();
                                    if s2.flats().iter().any(|v| f1.contains(v)) {
                                        continue;
                                    }
                                    for i1 in 0..h1.cells(p) {
                                        for i2 in 0..h2.cells(q) {
                                            let r1 = SRef {
                                                cell: CellId { dim: p, idx: i1 },
                                                surj: s1.clone(),
                                            };
                                            let r2 = SRef {
                                                cell: CellId { dim: q, idx: i2 },
                                                surj: s2.clone(),
                                            };
                                            let v = SRef {
                                                cell: pt_ref.cell,
                                                surj: Mono::new(0, vec![0; n + 1]),
                                            };
                                            table.insert((r1, r2), v);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                comp.insert(key, table);
            }
        }
    }
    SCat { objects, homs, comp, ids, dim: a.dim }
}

/// Replace the (s,t) mapping space of a pasting-diagram category by an
/// arbitrary simplicial set along a map u from the old one.
pub struct HomMap {
    /// images[dim][idx] of the nondegenerate hom cells
    pub images: Vec<Vec<SRef>>,
}

impl HomMap {
    pub fn apply(&self, target: &FiniteSSet, r: &SRef) -> SRef {
        target.act(&self.images[r.cell.dim][r.cell.idx], &r.surj)
    }

    pub fn identity_on(hom: &FiniteSSet) -> HomMap {
        HomMap {
            images: hom
                .names
                .iter()
                .enumerate()
                .map(|(d, lvl)| (0..lvl.len()).map(|i| SRef::nondeg(d, i)).collect())
                .collect(),
        }
    }
}

pub fn over_u(cat: &PdCat, x_sset: &FiniteSSet, u: &HomMap) -> SCat {
    let g = &cat.diagram.graph;
    let (s, t) = (g.source.0.clone(), g.target.0.clone());
    let mut homs = cat.scat.homs.clone();
    homs.insert((s.clone(), t.clone()), x_sset.clone());
    let mut comp = cat.scat.comp.clone();
    for ((x, y, z), table) in &cat.scat.comp {
        if !(x == &s && z == &t) {
            continue;
        }
        let mapped: BTreeMap<(SRef, SRef), SRef> = if y == &s || y == &t {
            // unit composition over the replaced mapping space
            let mut unit = BTreeMap::new();
            for (d, lvl) in x_sset.names.iter().enumerate() {
                for idx in 0..lvl.len() {
                    let cell = SRef::nondeg(d, idx);
                    let pad = SRef {
                        cell: CellId { dim: 0, idx: 0 },
                        surj: Mono::new(0, vec![0; d + 1]),
                    };
                    if y == &s {
                        unit.insert((pad, cell.clone()), cell);
                    } else {
                        unit.insert((cell.clone(), pad), cell);
                    }
                }
            }
            unit
        } else {
            table
                .iter()
                .map(|(k, v)| (k.clone(), u.apply(x_sset, v)))
                .collect()
        };
        comp.insert((x.clone(), y.clone(), z.clone()), mapped);
    }
    SCat {
        objects: cat.scat.objects.clone(),
        homs,
        comp,
        ids: cat.scat.ids.clone(),
        dim: cat.scat.dim.max(x_sset.dim_bound),
    }
}

/// Partition the vertices around a pair (x,y): the vertices of G_{x,y}, the
/// ones that can still reach them, and the rest. No directed path runs from
/// a later part to an earlier one.
pub fn vertex_partition(
    g: &Globular,
    x: &VertexId,
    y: &VertexId,
) -> (BTreeSet<VertexId>, BTreeSet<VertexId>, BTreeSet<VertexId>) {
    let v1: BTreeSet<VertexId> = match g.xy_edge_set(x, y) {
        Some(set) if !set.is_empty() => {
            let sub = g.sub(&set).unwrap();
            sub.graph.vertices().iter().cloned().collect()
        }
        Some(_) => BTreeSet::from([x.clone()]),
        None => BTreeSet::new(),
    };
    let mut v0 = BTreeSet::new();
    let mut v2 = BTreeSet::new();
    for v in g.graph.vertices() {
        if v1.contains(v) {
            continue;
        }
        if v1.iter().any(|w| g.reaches(v, w)) {
            v0.insert(v.clone());
        } else {
            v2.insert(v.clone());
        }
    }
    // no backward paths between the parts
    debug_assert!(!v1.iter().any(|a| v0.iter().any(|b| g.reaches(a, b))));
    debug_assert!(!v2.iter().any(|a| v0.iter().chain(v1.iter()).any(|b| g.reaches(a, b))));
    (v0, v1, v2)
}

/// Enumerate all simplicial functors between small categories, backtracking
/// over images of nondegenerate hom cells.
pub fn enumerate_functors(dom: &SCat, cod: &SCat) -> Vec<SFunctor> {
    let mut out = Vec::new();
    for pick in dom
        .objects
        .iter()
        .map(|_| 0..cod.objects.len())
        .multi_cartesian_product()
    {
        let obj: BTreeMap<String, String> = dom
            .objects
            .iter()
            .zip(pick.iter())
            .map(|(o, &i)| (o.clone(), cod.objects[i].clone()))
            .collect();
        collect_functors_for_objects(dom, cod, &obj, &mut out);
    }
    out
}

fn collect_functors_for_objects(
    dom: &SCat,
    cod: &SCat,
    obj: &BTreeMap<String, String>,
    out: &mut Vec<SFunctor>,
) {
    // flatten the cells that need images
    let mut slots: Vec<(HomKey, usize, usize)> = Vec::new();
    for ((x, y), hom) in &dom.homs {
        let thom = cod.hom(&obj[x], &obj[y]);
        if !hom.is_empty() && thom.is_empty() {
            return;
        }
        for d in 0..hom.names.len() {
            for idx in 0..hom.cells(d) {
                slots.push(((x.clone(), y.clone()), d, idx));
            }
        }
    }
    slots.sort_by_key(|(_, d, _)| *d);
    let mut images: BTreeMap<HomKey, Vec<Vec<SRef>>> = dom
        .homs
        .iter()
        .map(|(k, hom)| {
            (k.clone(), hom.names.iter().map(|lvl| vec![SRef::nondeg(0, 0); lvl.len()]).collect())
        })
        .collect();
    let mut chosen: BTreeMap<HomKey, Vec<Vec<bool>>> = dom
        .homs
        .iter()
        .map(|(k, hom)| (k.clone(), hom.names.iter().map(|lvl| vec![false; lvl.len()]).collect()))
        .collect();
    rec(dom, cod, obj, &slots, 0, &mut images, &mut chosen, out);

    #[allow(clippy::too_many_arguments)]
    fn rec(
        dom: &SCat,
        cod: &SCat,
        obj: &BTreeMap<String, String>,
        slots: &[(HomKey, usize, usize)],
        pos: usize,
        images: &mut BTreeMap<HomKey, Vec<Vec<SRef>>>,
        chosen: &mut BTreeMap<HomKey, Vec<Vec<bool>>>,
        out: &mut Vec<SFunctor>,
    ) {
        if pos == slots.len() {
            let cand = SFunctor { obj: obj.clone(), images: images.clone() };
            if cand.validate(dom, cod).is_ok() {
                out.push(cand);
            }
            return;
        }
        let (key, d, idx) = &slots[pos];
        let thom = cod.hom(&obj[&key.0], &obj[&key.1]);
        let dhom = dom.hom(&key.0, &key.1);
        'cands: for cand in thom.all_simplices(*d) {
            // face compatibility with the already-assigned lower cells
            if *d > 0 {
                for i in 0..=*d {
                    let fd = dhom.act(&SRef::nondeg(*d, *idx), &Mono::face(*d, i));
                    if !chosen[key][fd.cell.dim][fd.cell.idx] {
                        continue;
                    }
                    let fimg = thom.act(&images[key][fd.cell.dim][fd.cell.idx], &fd.surj);
                    if thom.act(&cand, &Mono::face(*d, i)) != fimg {
                        continue 'cands;
                    }
                }
            }
            images.get_mut(key).unwrap()[*d][*idx] = cand.clone();
            chosen.get_mut(key).unwrap()[*d][*idx] = true;
            rec(dom, cod, obj, slots, pos + 1, images, chosen, out);
            chosen.get_mut(key).unwrap()[*d][*idx] = false;
        }
    }
}

/// Enumerate all labelings of a globular graph in a finite target.
pub fn enumerate_labelings(g: &Globular, target: &SCat) -> Vec<Labeling> {
    let verts: Vec<VertexId> = g.graph.vertices().to_vec();
    let mut out = Vec::new();
    for pick in verts
        .iter()
        .map(|_| 0..target.objects.len())
        .multi_cartesian_product()
    {
        let obj: BTreeMap<VertexId, String> = verts
            .iter()
            .zip(pick.iter())
            .map(|(v, &i)| (v.clone(), target.objects[i].clone()))
            .collect();
        collect_labelings(g, target, &obj, &mut out);
    }
    out
}

fn collect_labelings(
    g: &Globular,
    target: &SCat,
    obj: &BTreeMap<VertexId, String>,
    out: &mut Vec<Labeling>,
) {
    let edges: Vec<EdgeId> = g.graph.edge_ids().cloned().collect();
    let mut edge_cands: Vec<Vec<SRef>> = Vec::new();
    for e in &edges {
        let hom = target.hom(&obj[g.graph.src(e)], &obj[g.graph.dst(e)]);
        let cands: Vec<SRef> = (0..hom.cells(0)).map(|i| SRef::nondeg(0, i)).collect();
        if cands.is_empty() {
            return;
        }
        edge_cands.push(cands);
    }
    let faces: Vec<&crate::plane_graph::GlobFace> = g.interior_faces().collect();
    for pick in edge_cands.iter().map(|c| 0..c.len()).multi_cartesian_product() {
        let edge_map: BTreeMap<EdgeId, SRef> = edges
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), edge_cands[i][pick[i]].clone()))
            .collect();
        let partial = Labeling { obj: obj.clone(), edge: edge_map, face: BTreeMap::new() };
        // 1-simplices whose ends match the boundary composites, per face
        let mut face_cands: Vec<Vec<SRef>> = Vec::new();
        let mut ok = true;
        for f in &faces {
            let hom = target.hom(&obj[&f.src], &obj[&f.tgt]);
            let want_d1 = partial.path_composite(g, target, &f.dom);
            let want_d0 = partial.path_composite(g, target, &f.cod);
            let cands: Vec<SRef> = hom
                .all_simplices(1)
                .into_iter()
                .filter(|r| {
                    hom.act(r, &Mono::face(1, 1)) == want_d1
                        && hom.act(r, &Mono::face(1, 0)) == want_d0
                })
                .collect();
            if cands.is_empty() {
                ok = false;
                break;
            }
            face_cands.push(cands);
        }
        if !ok {
            continue;
        }
        if faces.is_empty() {
            out.push(partial);
            continue;
        }
        for fpick in face_cands.iter().map(|c| 0..c.len()).multi_cartesian_product() {
            let face_map: BTreeMap<FaceKey, SRef> = faces
                .iter()
                .enumerate()
                .map(|(i, f)| (f.key(), face_cands[i][fpick[i]].clone()))
                .collect();
            out.push(Labeling { obj: obj.clone(), edge: partial.edge.clone(), face: face_map });
        }
    }
}

#[cfg(test)]
mod tests;
