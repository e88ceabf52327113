//! Combinatorial plane graphs given by rotation systems, their faces, and the
//! globular structure: domains and codomains of faces, globs, path subgraphs
//! and joins.
//!
//! Embeddings are purely combinatorial. Every vertex carries the clockwise
//! cyclic sequence of its incident darts and the exterior face is designated
//! explicitly. Faces are traced so that each boundary walk keeps its face on
//! the right, which is the clockwise orientation of the boundary.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub String);

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub String);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
impl fmt::Debug for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn vid(s: &str) -> VertexId {
    VertexId(s.to_string())
}
pub fn eid(s: &str) -> EdgeId {
    EdgeId(s.to_string())
}

/// Which end of an edge a dart sits at. `Tail` darts leave their vertex,
/// `Head` darts arrive at it.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum End {
    Tail,
    Head,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Dart {
    pub edge: EdgeId,
    pub end: End,
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = match self.end {
            End::Tail => '+',
            End::Head => '-',
        };
        write!(f, "{}{}", self.edge, m)
    }
}

/// A directed traversal of an edge, forward or against its orientation.
/// Each side lies on exactly one face boundary walk.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Dir {
    Fwd,
    Bwd,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Side {
    pub edge: EdgeId,
    pub dir: Dir,
}

impl Side {
    pub fn fwd(e: &EdgeId) -> Side {
        Side { edge: e.clone(), dir: Dir::Fwd }
    }
    pub fn bwd(e: &EdgeId) -> Side {
        Side { edge: e.clone(), dir: Dir::Bwd }
    }
    pub fn rev(&self) -> Side {
        Side {
            edge: self.edge.clone(),
            dir: match self.dir {
                Dir::Fwd => Dir::Bwd,
                Dir::Bwd => Dir::Fwd,
            },
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = match self.dir {
            Dir::Fwd => '+',
            Dir::Bwd => '-',
        };
        write!(f, "{}{}", self.edge, m)
    }
}

pub type EdgeSet = BTreeSet<EdgeId>;

/// A face, stored as its clockwise boundary walk (each side has the face on
/// its right). The walk is rotated to start at the minimal side so tracing
/// order does not leak into equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Face {
    pub walk: Vec<Side>,
}

impl Face {
    fn canonical(mut walk: Vec<Side>) -> Face {
        if !walk.is_empty() {
            let k = (0..walk.len())
                .min_by_key(|&i| walk[i].clone())
                .unwrap();
            walk.rotate_left(k);
        }
        Face { walk }
    }

    pub fn edges(&self) -> EdgeSet {
        self.walk.iter().map(|s| s.edge.clone()).collect()
    }
}

/// A directed path, kept as parallel vertex and edge sequences. A trivial
/// path is a single vertex with no edges.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiPath {
    pub verts: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl DiPath {
    pub fn trivial(v: VertexId) -> DiPath {
        DiPath { verts: vec![v], edges: vec![] }
    }

    pub fn from_edges(g: &PlaneGraph, edges: &[EdgeId]) -> Result<DiPath> {
        if edges.is_empty() {
            return Err(Error::Invalid("empty edge list for a path".into()));
        }
        let mut verts = vec![g.src(&edges[0]).clone()];
        for e in edges {
            let (s, t) = g.ends(e);
            if s != verts.last().unwrap() {
                return Err(Error::Invalid(format!("edges do not compose at {e}")));
            }
            verts.push(t.clone());
        }
        Ok(DiPath { verts, edges: edges.to_vec() })
    }

    pub fn source(&self) -> &VertexId {
        self.verts.first().unwrap()
    }
    pub fn target(&self) -> &VertexId {
        self.verts.last().unwrap()
    }
    pub fn is_trivial(&self) -> bool {
        self.edges.is_empty()
    }
    pub fn len(&self) -> usize {
        self.edges.len()
    }
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges.iter().cloned().collect()
    }

    pub fn concat(&self, other: &DiPath) -> DiPath {
        assert_eq!(self.target(), other.source(), "paths do not compose");
        let mut verts = self.verts.clone();
        verts.extend(other.verts[1..].iter().cloned());
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().cloned());
        DiPath { verts, edges }
    }

    /// Position of `sub` as a contiguous edge subsequence, if any.
    pub fn find_subpath(&self, sub: &[EdgeId]) -> Option<usize> {
        if sub.is_empty() {
            return None;
        }
        (0..self.edges.len().saturating_sub(sub.len() - 1))
            .find(|&i| self.edges[i..i + sub.len()] == *sub)
    }
}

impl fmt::Display for DiPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.edges.is_empty() {
            write!(f, "({})", self.verts[0])
        } else {
            let parts: Vec<String> = self.edges.iter().map(|e| e.to_string()).collect();
            write!(f, "{}", parts.join("-"))
        }
    }
}

impl fmt::Debug for DiPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A plane graph: directed edges plus a clockwise rotation system and a
/// designated exterior face. Faces are traced at construction time.
#[derive(Clone)]
pub struct PlaneGraph {
    verts: Vec<VertexId>,
    edges: BTreeMap<EdgeId, (VertexId, VertexId)>,
    rotation: BTreeMap<VertexId, Vec<Dart>>,
    pub faces: Vec<Face>,
    side_face: BTreeMap<Side, usize>,
    pub exterior: usize,
}

impl PlaneGraph {
    /// A single vertex with no edges. Serves as the unit for joins.
    pub fn trivial(v: VertexId) -> PlaneGraph {
        PlaneGraph {
            verts: vec![v.clone()],
            edges: BTreeMap::new(),
            rotation: BTreeMap::from([(v, vec![])]),
            faces: vec![Face { walk: vec![] }],
            side_face: BTreeMap::new(),
            exterior: 0,
        }
    }

    /// Build a plane graph from edges, clockwise rotations and one side known
    /// to lie on the exterior boundary walk.
    pub fn new(
        edges: BTreeMap<EdgeId, (VertexId, VertexId)>,
        rotation: BTreeMap<VertexId, Vec<Dart>>,
        exterior_side: Side,
    ) -> Result<PlaneGraph> {
        if edges.is_empty() {
            return Err(Error::Invalid("a plane graph needs at least one edge".into()));
        }
        let mut verts: BTreeSet<VertexId> = BTreeSet::new();
        for (s, t) in edges.values() {
            verts.insert(s.clone());
            verts.insert(t.clone());
        }
        if verts != rotation.keys().cloned().collect() {
            return Err(Error::Invalid("rotation vertices differ from edge endpoints".into()));
        }
        // every dart exactly once, at its own endpoint
        let mut expected: BTreeSet<(VertexId, Dart)> = BTreeSet::new();
        for (e, (s, t)) in &edges {
            expected.insert((s.clone(), Dart { edge: e.clone(), end: End::Tail }));
            expected.insert((t.clone(), Dart { edge: e.clone(), end: End::Head }));
        }
        let mut seen: BTreeSet<(VertexId, Dart)> = BTreeSet::new();
        for (v, darts) in &rotation {
            for d in darts {
                if !seen.insert((v.clone(), d.clone())) {
                    return Err(Error::Invalid(format!("dart {d} listed twice at {v}")));
                }
            }
        }
        if seen != expected {
            return Err(Error::Invalid("rotation darts do not match the edge list".into()));
        }

        let mut g = PlaneGraph {
            verts: verts.into_iter().collect(),
            edges,
            rotation,
            faces: vec![],
            side_face: BTreeMap::new(),
            exterior: 0,
        };
        if !g.is_connected() {
            return Err(Error::Invalid("graph is not connected".into()));
        }
        g.trace_faces()?;
        g.exterior = *g
            .side_face
            .get(&exterior_side)
            .ok_or_else(|| Error::Invalid(format!("unknown exterior side {exterior_side}")))?;
        Ok(g)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.verts
    }
    pub fn edge_ids(&self) -> impl Iterator<Item = &EdgeId> {
        self.edges.keys()
    }
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
    pub fn vertex_count(&self) -> usize {
        self.verts.len()
    }
    pub fn has_edge(&self, e: &EdgeId) -> bool {
        self.edges.contains_key(e)
    }
    pub fn ends(&self, e: &EdgeId) -> (&VertexId, &VertexId) {
        let (s, t) = &self.edges[e];
        (s, t)
    }
    pub fn src(&self, e: &EdgeId) -> &VertexId {
        &self.edges[e].0
    }
    pub fn dst(&self, e: &EdgeId) -> &VertexId {
        &self.edges[e].1
    }
    pub fn rotation_at(&self, v: &VertexId) -> &[Dart] {
        &self.rotation[v]
    }
    pub fn edge_set(&self) -> EdgeSet {
        self.edges.keys().cloned().collect()
    }
    pub fn face_of_side(&self, s: &Side) -> usize {
        self.side_face[s]
    }
    pub fn is_trivial(&self) -> bool {
        self.edges.is_empty()
    }
    pub fn trivial_vertex(&self) -> Option<&VertexId> {
        if self.is_trivial() {
            self.verts.first()
        } else {
            None
        }
    }

    pub fn out_edges(&self, v: &VertexId) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = self
            .edges
            .iter()
            .filter(|(_, (s, _))| s == v)
            .map(|(e, _)| e.clone())
            .collect();
        out.sort();
        out
    }
    pub fn in_edges(&self, v: &VertexId) -> Vec<EdgeId> {
        let mut inn: Vec<EdgeId> = self
            .edges
            .iter()
            .filter(|(_, (_, t))| t == v)
            .map(|(e, _)| e.clone())
            .collect();
        inn.sort();
        inn
    }

    fn is_connected(&self) -> bool {
        if self.verts.len() <= 1 {
            return true;
        }
        let mut adj: BTreeMap<&VertexId, Vec<&VertexId>> = BTreeMap::new();
        for (s, t) in self.edges.values() {
            adj.entry(s).or_default().push(t);
            adj.entry(t).or_default().push(s);
        }
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([&self.verts[0]]);
        seen.insert(&self.verts[0]);
        while let Some(v) = queue.pop_front() {
            for w in adj.get(v).into_iter().flatten() {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen.len() == self.verts.len()
    }

    fn head_of(&self, s: &Side) -> &VertexId {
        match s.dir {
            Dir::Fwd => self.dst(&s.edge),
            Dir::Bwd => self.src(&s.edge),
        }
    }

    fn side_to_arriving_dart(&self, s: &Side) -> Dart {
        match s.dir {
            Dir::Fwd => Dart { edge: s.edge.clone(), end: End::Head },
            Dir::Bwd => Dart { edge: s.edge.clone(), end: End::Tail },
        }
    }

    fn dart_to_leaving_side(d: &Dart) -> Side {
        match d.end {
            End::Tail => Side::fwd(&d.edge),
            End::Head => Side::bwd(&d.edge),
        }
    }

    /// The side following `s` on its face walk: arrive, step to the clockwise
    /// predecessor dart, and leave along it.
    pub fn next_side(&self, s: &Side) -> Side {
        let v = self.head_of(s).clone();
        let arriving = self.side_to_arriving_dart(s);
        let rot = &self.rotation[&v];
        let i = rot
            .iter()
            .position(|d| *d == arriving)
            .expect("dart missing from rotation");
        let prev = &rot[(i + rot.len() - 1) % rot.len()];
        Self::dart_to_leaving_side(prev)
    }

    fn trace_faces(&mut self) -> Result<()> {
        let mut sides: Vec<Side> = Vec::new();
        for e in self.edges.keys() {
            sides.push(Side::fwd(e));
            sides.push(Side::bwd(e));
        }
        sides.sort();
        let mut assigned: BTreeMap<Side, usize> = BTreeMap::new();
        let mut faces = Vec::new();
        for start in &sides {
            if assigned.contains_key(start) {
                continue;
            }
            let mut walk = vec![start.clone()];
            let mut cur = self.next_side(start);
            while cur != *start {
                walk.push(cur.clone());
                cur = self.next_side(&cur);
            }
            let idx = faces.len();
            for s in &walk {
                assigned.insert(s.clone(), idx);
            }
            faces.push(Face::canonical(walk));
        }
        let (v, e, f) = (self.verts.len(), self.edges.len(), faces.len());
        if v + f != e + 2 {
            return Err(Error::EulerMismatch { v, e, f });
        }
        self.faces = faces;
        self.side_face = assigned;
        Ok(())
    }

    /// Restrict to an edge subset, inheriting rotations and the embedding.
    /// The exterior of the result is the face containing the ambient exterior
    /// region. Vertices are induced; the subset must be nonempty & connected.
    pub fn sub_plane(&self, keep: &EdgeSet) -> Result<PlaneGraph> {
        if keep.is_empty() {
            return Err(Error::Invalid("empty subgraph".into()));
        }
        let mut edges = BTreeMap::new();
        for e in keep {
            let (s, t) = self
                .edges
                .get(e)
                .ok_or_else(|| Error::Invalid(format!("edge {e} not in ambient graph")))?;
            edges.insert(e.clone(), (s.clone(), t.clone()));
        }
        let mut rotation = BTreeMap::new();
        for (v, darts) in &self.rotation {
            let darts: Vec<Dart> = darts.iter().filter(|d| keep.contains(&d.edge)).cloned().collect();
            if !darts.is_empty() {
                rotation.insert(v.clone(), darts);
            }
        }
        let ext_group = self.merge_group_of_exterior(keep);
        // exterior side: a kept side bordering the merged exterior region
        let ext_side = keep
            .iter()
            .flat_map(|e| [Side::fwd(e), Side::bwd(e)])
            .find(|s| ext_group.contains(&self.side_face[s]))
            .ok_or_else(|| Error::Invalid("could not locate subgraph exterior".into()))?;
        PlaneGraph::new(edges, rotation, ext_side)
    }

    /// Ambient faces that merge with the exterior when all edges outside
    /// `keep` are deleted.
    fn merge_group_of_exterior(&self, keep: &EdgeSet) -> BTreeSet<usize> {
        let mut group = BTreeSet::from([self.exterior]);
        let mut queue = VecDeque::from([self.exterior]);
        while let Some(f) = queue.pop_front() {
            for (e, _) in &self.edges {
                if keep.contains(e) {
                    continue;
                }
                let (a, b) = (self.side_face[&Side::fwd(e)], self.side_face[&Side::bwd(e)]);
                if a == f && group.insert(b) {
                    queue.push_back(b);
                }
                if b == f && group.insert(a) {
                    queue.push_back(a);
                }
            }
        }
        group
    }

    /// The closed plane region spanned by a connected subgraph: the ambient
    /// faces strictly inside it, together with all edges and vertices of or
    /// inside its boundary.
    pub fn region(&self, keep: &EdgeSet) -> Region {
        let ext_group = self.merge_group_of_exterior(keep);
        let interior_faces: BTreeSet<usize> =
            (0..self.faces.len()).filter(|i| !ext_group.contains(i)).collect();
        let mut edges: EdgeSet = keep.clone();
        for e in self.edges.keys() {
            if interior_faces.contains(&self.side_face[&Side::fwd(e)])
                || interior_faces.contains(&self.side_face[&Side::bwd(e)])
            {
                edges.insert(e.clone());
            }
        }
        let mut vertices = BTreeSet::new();
        for e in &edges {
            let (s, t) = self.ends(e);
            vertices.insert(s.clone());
            vertices.insert(t.clone());
        }
        Region { interior_faces, edges, vertices }
    }
}

/// The closed region of the plane covered by a subgraph, in terms of the
/// ambient graph's faces, edges and vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub interior_faces: BTreeSet<usize>,
    pub edges: EdgeSet,
    pub vertices: BTreeSet<VertexId>,
}

/// A face of a globular graph decomposed as dom against cod.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobFace {
    pub dom: Vec<EdgeId>,
    pub cod: Vec<EdgeId>,
    pub src: VertexId,
    pub tgt: VertexId,
    pub exterior: bool,
}

impl GlobFace {
    pub fn key(&self) -> FaceKey {
        (self.dom.clone(), self.cod.clone())
    }
}

/// Stable identifier of a face inside a fixed subgraph: its (dom, cod) pair.
pub type FaceKey = (Vec<EdgeId>, Vec<EdgeId>);

/// A validated globular graph: a plane st-graph all of whose faces decompose
/// as a domain path against a codomain path.
#[derive(Clone)]
pub struct Globular {
    pub graph: PlaneGraph,
    pub source: VertexId,
    pub target: VertexId,
    /// aligned with `graph.faces`
    pub faces: Vec<GlobFace>,
}

/// Decompose a face walk into its forward block `p` and backward block `q`
/// (so the walk is p·qᵒᵖ up to rotation). Fails unless there are exactly two
/// maximal direction blocks.
fn split_walk(g: &PlaneGraph, face: &Face) -> Result<(Vec<EdgeId>, Vec<EdgeId>)> {
    let walk = &face.walk;
    let n = walk.len();
    if n == 0 {
        return Err(Error::FaceNotGlobular("empty face walk".into()));
    }
    let changes: Vec<usize> = (0..n)
        .filter(|&i| walk[i].dir != walk[(i + n - 1) % n].dir)
        .collect();
    if changes.len() != 2 {
        return Err(Error::FaceNotGlobular(format!(
            "boundary {} has {} direction blocks",
            walk.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("."),
            changes.len().max(1)
        )));
    }
    let (a, b) = (changes[0], changes[1]);
    let block = |from: usize, to: usize| -> Vec<Side> {
        let mut out = Vec::new();
        let mut i = from;
        while i != to {
            out.push(walk[i].clone());
            i = (i + 1) % n;
        }
        out
    };
    let (first, second) = (block(a, b), block(b, a));
    let (fwd, bwd) = if first[0].dir == Dir::Fwd { (first, second) } else { (second, first) };
    let p: Vec<EdgeId> = fwd.into_iter().map(|s| s.edge).collect();
    let mut q: Vec<EdgeId> = bwd.into_iter().map(|s| s.edge).collect();
    q.reverse();
    // both blocks traverse a common pair of endpoints
    let p_path = DiPath::from_edges(g, &p)?;
    let q_path = DiPath::from_edges(g, &q)?;
    if p_path.source() != q_path.source() || p_path.target() != q_path.target() {
        return Err(Error::FaceNotGlobular("boundary blocks do not share endpoints".into()));
    }
    Ok((p, q))
}

/// Validate globularity of a plane graph: unique source and target on the
/// exterior face, acyclicity, globular face boundaries, and the clockwise
/// contiguity of out-darts before in-darts at every vertex.
pub fn check_globular(graph: PlaneGraph) -> Result<Globular> {
    if graph.is_trivial() {
        let v = graph.trivial_vertex().unwrap().clone();
        return Ok(Globular {
            faces: vec![GlobFace {
                dom: vec![],
                cod: vec![],
                src: v.clone(),
                tgt: v.clone(),
                exterior: true,
            }],
            source: v.clone(),
            target: v,
            graph,
        });
    }

    // acyclicity via Kahn's algorithm
    let mut indeg: BTreeMap<&VertexId, usize> = graph.verts.iter().map(|v| (v, 0)).collect();
    for (_, t) in graph.edges.values() {
        *indeg.get_mut(t).unwrap() += 1;
    }
    let mut queue: VecDeque<&VertexId> =
        indeg.iter().filter(|(_, d)| **d == 0).map(|(v, _)| *v).collect();
    let mut visited = 0usize;
    while let Some(v) = queue.pop_front() {
        visited += 1;
        for (_, (s, t)) in &graph.edges {
            if s == v {
                let d = indeg.get_mut(t).unwrap();
                *d -= 1;
                if *d == 0 {
                    queue.push_back(t);
                }
            }
        }
    }
    if visited != graph.verts.len() {
        let on_cycle = indeg.iter().find(|(_, d)| **d > 0).map(|(v, _)| v.to_string()).unwrap();
        return Err(Error::HasDirectedCycle(on_cycle));
    }

    let sources: Vec<&VertexId> =
        graph.verts.iter().filter(|v| graph.in_edges(v).is_empty()).collect();
    let targets: Vec<&VertexId> =
        graph.verts.iter().filter(|v| graph.out_edges(v).is_empty()).collect();
    if sources.len() != 1 {
        return Err(Error::NotStGraph(format!(
            "expected a unique source, found {:?}",
            sources
        )));
    }
    if targets.len() != 1 {
        return Err(Error::NotStGraph(format!(
            "expected a unique target, found {:?}",
            targets
        )));
    }
    let (source, target) = (sources[0].clone(), targets[0].clone());

    // clockwise contiguity: out-darts form one arc followed by the in-darts
    for v in &graph.verts {
        let rot = graph.rotation_at(v);
        let changes = (0..rot.len())
            .filter(|&i| rot[i].end != rot[(i + rot.len() - 1) % rot.len()].end)
            .count();
        if changes > 2 {
            return Err(Error::FaceNotGlobular(format!(
                "out- and in-darts are not contiguous around vertex {v}"
            )));
        }
    }

    let mut faces = Vec::with_capacity(graph.faces.len());
    for (i, face) in graph.faces.iter().enumerate() {
        let (p, q) = split_walk(&graph, face)?;
        let exterior = i == graph.exterior;
        // interior faces read dom = forward block; the exterior is reversed
        let (dom, cod) = if exterior { (q, p) } else { (p, q) };
        let dp = DiPath::from_edges(&graph, &dom)?;
        faces.push(GlobFace {
            src: dp.source().clone(),
            tgt: dp.target().clone(),
            dom,
            cod,
            exterior,
        });
    }

    let ext = &faces[graph.exterior];
    if ext.src != source || ext.tgt != target {
        return Err(Error::NotStGraph(format!(
            "source {source} and target {target} must bound the exterior face (found {} to {})",
            ext.src, ext.tgt
        )));
    }

    Ok(Globular { graph, source, target, faces })
}

impl Globular {
    pub fn exterior_face(&self) -> &GlobFace {
        &self.faces[self.graph.exterior]
    }

    pub fn dom(&self) -> DiPath {
        if self.graph.is_trivial() {
            return DiPath::trivial(self.source.clone());
        }
        DiPath::from_edges(&self.graph, &self.exterior_face().dom).unwrap()
    }

    pub fn cod(&self) -> DiPath {
        if self.graph.is_trivial() {
            return DiPath::trivial(self.source.clone());
        }
        DiPath::from_edges(&self.graph, &self.exterior_face().cod).unwrap()
    }

    pub fn interior_faces(&self) -> impl Iterator<Item = &GlobFace> {
        self.faces.iter().filter(|f| !f.exterior)
    }

    pub fn interior_face_count(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.graph.edge_set()
    }

    /// Interior face containing the given interior region face index of the
    /// plane graph, keyed by (dom, cod).
    pub fn face_by_key(&self, key: &FaceKey) -> Option<&GlobFace> {
        self.faces.iter().find(|f| !f.exterior && f.dom == key.0 && f.cod == key.1)
    }

    /// Restrict to an edge subset and re-validate. Trivial subsets are not
    /// representable; use `DiPath::trivial` for those.
    pub fn sub(&self, keep: &EdgeSet) -> Result<Globular> {
        check_globular(self.graph.sub_plane(keep)?)
    }

    /// Is the edge subset a globular subgraph? Connectivity, unique source
    /// and target on the exterior of the inherited embedding, and globular
    /// faces are all required.
    pub fn is_globular_subgraph(&self, keep: &EdgeSet) -> bool {
        !keep.is_empty() && self.sub(keep).is_ok()
    }

    /// All nonempty globular subgraphs of this graph, in canonical order.
    pub fn all_globular_subgraphs(&self) -> Vec<EdgeSet> {
        let edges: Vec<EdgeId> = self.graph.edge_ids().cloned().collect();
        let mut out = Vec::new();
        for mask in 1u64..(1 << edges.len()) {
            let set: EdgeSet = edges
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, e)| e.clone())
                .collect();
            if self.is_globular_subgraph(&set) {
                out.push(set);
            }
        }
        out.sort();
        out
    }

    /// Vertices reachable from `x` along directed edges (including `x`).
    pub fn reachable_from(&self, x: &VertexId) -> BTreeSet<VertexId> {
        let mut seen = BTreeSet::from([x.clone()]);
        let mut queue = VecDeque::from([x.clone()]);
        while let Some(v) = queue.pop_front() {
            for e in self.graph.out_edges(&v) {
                let t = self.graph.dst(&e).clone();
                if seen.insert(t.clone()) {
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    pub fn reaches(&self, x: &VertexId, y: &VertexId) -> bool {
        self.reachable_from(x).contains(y)
    }

    /// Union of all directed x→y paths as an edge set; `None` if there is no
    /// such path (or only the trivial one when x = y).
    pub fn xy_edge_set(&self, x: &VertexId, y: &VertexId) -> Option<EdgeSet> {
        if x == y {
            return Some(EdgeSet::new());
        }
        let fwd = self.reachable_from(x);
        if !fwd.contains(y) {
            return None;
        }
        let mut back = BTreeSet::from([y.clone()]);
        let mut queue = VecDeque::from([y.clone()]);
        while let Some(v) = queue.pop_front() {
            for e in self.graph.in_edges(&v) {
                let s = self.graph.src(&e).clone();
                if back.insert(s.clone()) {
                    queue.push_back(s);
                }
            }
        }
        Some(
            self.graph
                .edge_ids()
                .filter(|e| fwd.contains(self.graph.src(e)) && back.contains(self.graph.dst(e)))
                .cloned()
                .collect(),
        )
    }

    /// The path subgraph G_{x,y}, validated globular with source x and
    /// target y. Returns `None` when no directed x→y path exists; the trivial
    /// graph when x = y.
    pub fn subgraph_xy(&self, x: &VertexId, y: &VertexId) -> Option<Globular> {
        let set = self.xy_edge_set(x, y)?;
        if set.is_empty() {
            return Some(check_globular(PlaneGraph::trivial(x.clone())).unwrap());
        }
        let sub = self.sub(&set).expect("path subgraph must be globular");
        debug_assert_eq!(&sub.source, x);
        debug_assert_eq!(&sub.target, y);
        Some(sub)
    }

    /// All directed paths from x to y, lexicographic by edge ids. Acyclicity
    /// makes every such path simple and end the moment it reaches y.
    pub fn paths_between(&self, x: &VertexId, y: &VertexId) -> Vec<DiPath> {
        if x == y {
            return vec![DiPath::trivial(x.clone())];
        }
        let mut out = Vec::new();
        let mut stack = vec![DiPath::trivial(x.clone())];
        while let Some(p) = stack.pop() {
            if p.target() == y {
                out.push(p);
                continue;
            }
            for e in self.graph.out_edges(p.target()).into_iter().rev() {
                let t = self.graph.dst(&e).clone();
                let mut q = p.clone();
                q.edges.push(e);
                q.verts.push(t);
                stack.push(q);
            }
        }
        out.sort_by(|a, b| a.edges.cmp(&b.edges));
        out
    }

    /// Vertices v separating source from target: every st-path passes v.
    /// Ordered as they appear along st-paths.
    pub fn cut_vertices(&self) -> Vec<VertexId> {
        let paths = self.paths_between(&self.source, &self.target);
        let witness = paths.first().expect("globular graph has an st-path");
        let mut cuts: Vec<VertexId> = self
            .graph
            .vertices()
            .iter()
            .filter(|v| {
                **v != self.source
                    && **v != self.target
                    && paths.iter().all(|p| p.verts.contains(v))
            })
            .cloned()
            .collect();
        cuts.sort_by_key(|v| witness.verts.iter().position(|w| w == v).unwrap());
        cuts
    }

    /// Split into join factors at the cut vertices. A graph with no cut
    /// vertex yields a single factor.
    pub fn join_factors(&self) -> Vec<EdgeSet> {
        let cuts = self.cut_vertices();
        let mut bounds = vec![self.source.clone()];
        bounds.extend(cuts);
        bounds.push(self.target.clone());
        let mut out = Vec::new();
        for w in bounds.windows(2) {
            if w[0] == w[1] {
                continue;
            }
            out.push(self.xy_edge_set(&w[0], &w[1]).expect("factor exists"));
        }
        out
    }

    /// 2-connected in the sense used for atomicity: connected, no cut vertex
    /// and not a single edge.
    pub fn is_two_connected(&self) -> bool {
        self.graph.edge_count() >= 2 && self.cut_vertices().is_empty()
    }

    pub fn region(&self, keep: &EdgeSet) -> Region {
        self.graph.region(keep)
    }

    /// The edges of the exterior boundary: dom(G) ∪ cod(G).
    pub fn boundary_edges(&self) -> EdgeSet {
        let ext = self.exterior_face();
        ext.dom.iter().chain(ext.cod.iter()).cloned().collect()
    }

    pub fn boundary_vertices(&self) -> BTreeSet<VertexId> {
        let mut out = BTreeSet::from([self.source.clone(), self.target.clone()]);
        for e in self.boundary_edges() {
            let (s, t) = self.graph.ends(&e);
            out.insert(s.clone());
            out.insert(t.clone());
        }
        out
    }
}

/// A glob: a globular subgraph whose every edge touches its own exterior
/// face. Witnesses the order relation between st-paths.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Glob {
    pub edges: EdgeSet,
    pub dom: DiPath,
    pub cod: DiPath,
    pub degenerate: bool,
    pub proper: bool,
}

impl fmt::Debug for Glob {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Glob({} => {})", self.dom, self.cod)
    }
}

impl Glob {
    pub fn degenerate_on(path: &DiPath) -> Glob {
        Glob {
            edges: path.edge_set(),
            dom: path.clone(),
            cod: path.clone(),
            degenerate: true,
            proper: false,
        }
    }
}

/// Interpret an edge subset of `g` as a glob, if it is one.
pub fn as_glob(g: &Globular, edges: &EdgeSet) -> Option<Glob> {
    if edges.is_empty() {
        return None;
    }
    let sub = g.sub(edges).ok()?;
    let ext_edges: EdgeSet = sub.boundary_edges();
    if &ext_edges != edges {
        return None; // some edge is not incident with the exterior face
    }
    let degenerate = sub.interior_face_count() == 0;
    Some(Glob {
        edges: edges.clone(),
        dom: sub.dom(),
        cod: sub.cod(),
        proper: sub.is_two_connected(),
        degenerate,
    })
}

/// The minimal glob witnessing p ≤ q, with dom on p and cod on q. The
/// endpoints of p and q must agree.
pub fn glob_between(g: &Globular, p: &DiPath, q: &DiPath) -> Result<Glob> {
    if p.source() != q.source() || p.target() != q.target() {
        return Err(Error::Invalid(format!("paths {p} and {q} do not share endpoints")));
    }
    if p == q {
        return Ok(Glob::degenerate_on(p));
    }
    let common_prefix = p
        .edges
        .iter()
        .zip(q.edges.iter())
        .take_while(|(a, b)| a == b)
        .count();
    let mut common_suffix = p
        .edges
        .iter()
        .rev()
        .zip(q.edges.iter().rev())
        .take_while(|(a, b)| a == b)
        .count();
    // prefix and suffix may not overlap on the shorter path
    let room = p.edges.len().min(q.edges.len()) - common_prefix;
    common_suffix = common_suffix.min(room);
    let p_mid = &p.edges[common_prefix..p.edges.len() - common_suffix];
    let q_mid = &q.edges[common_prefix..q.edges.len() - common_suffix];
    if p_mid.is_empty() || q_mid.is_empty() {
        return Err(Error::NotComparable(p.to_string(), q.to_string()));
    }
    let carrier: EdgeSet = p_mid.iter().chain(q_mid.iter()).cloned().collect();
    let sub = match g.sub(&carrier) {
        Ok(sub) => sub,
        Err(_) => return Err(Error::NotComparable(p.to_string(), q.to_string())),
    };
    let ext = sub.exterior_face();
    if ext.dom != p_mid || ext.cod != q_mid || sub.boundary_edges() != carrier {
        return Err(Error::NotComparable(p.to_string(), q.to_string()));
    }
    Ok(Glob {
        edges: carrier,
        dom: DiPath::from_edges(&g.graph, p_mid)?,
        cod: DiPath::from_edges(&g.graph, q_mid)?,
        degenerate: false,
        proper: sub.is_two_connected(),
    })
}

/// Join of two globular graphs: glue the target of `g1` to the source of
/// `g2`. Edge ids must be disjoint, vertex ids disjoint except the glued
/// pair. The glued vertex keeps the id of `t(g1)`.
pub fn join(g1: &Globular, g2: &Globular) -> Result<Globular> {
    if g1.graph.is_trivial() {
        return Ok(g2.clone());
    }
    if g2.graph.is_trivial() {
        return Ok(g1.clone());
    }
    let glue = g1.target.clone();
    for e in g2.graph.edge_ids() {
        if g1.graph.has_edge(e) {
            return Err(Error::Invalid(format!("edge id {e} used on both sides of a join")));
        }
    }
    for v in g2.graph.vertices() {
        if v != &g2.source && g1.graph.vertices().contains(v) {
            return Err(Error::Invalid(format!("vertex id {v} used on both sides of a join")));
        }
    }
    let rename = |v: &VertexId| -> VertexId {
        if v == &g2.source {
            glue.clone()
        } else {
            v.clone()
        }
    };
    let mut edges = BTreeMap::new();
    for (e, (s, t)) in &g1.graph.edges {
        edges.insert(e.clone(), (s.clone(), t.clone()));
    }
    for (e, (s, t)) in &g2.graph.edges {
        edges.insert(e.clone(), (rename(s), rename(t)));
    }
    let mut rotation: BTreeMap<VertexId, Vec<Dart>> = BTreeMap::new();
    for (v, darts) in &g1.graph.rotation {
        if v != &glue {
            rotation.insert(v.clone(), darts.clone());
        }
    }
    for (v, darts) in &g2.graph.rotation {
        if v != &g2.source {
            rotation.insert(v.clone(), darts.clone());
        }
    }
    // clockwise at the glued vertex: g2's out-arc before g1's in-arc
    let mut glued = g2.graph.rotation[&g2.source].clone();
    glued.extend(g1.graph.rotation[&glue].iter().cloned());
    rotation.insert(glue.clone(), glued);
    let ext_side = Side::fwd(&g1.exterior_face().cod[0]);
    let joined = check_globular(PlaneGraph::new(edges, rotation, ext_side)?)?;
    debug_assert_eq!(joined.dom().edges, {
        let mut d = g1.dom().edges.clone();
        d.extend(g2.dom().edges.clone());
        d
    });
    Ok(joined)
}

/// (G_{s,x} ⋈ G_{x,t}) ∩ (G_{s,y} ⋈ G_{y,t}) as an edge set. When a directed
/// x→y path exists this equals the triple join G_{s,x} ⋈ G_{x,y} ⋈ G_{y,t}.
pub fn intersect_xy_joins(g: &Globular, x: &VertexId, y: &VertexId) -> EdgeSet {
    let hourglass = |v: &VertexId| -> EdgeSet {
        let mut out = g.xy_edge_set(&g.source, v).unwrap_or_default();
        out.extend(g.xy_edge_set(v, &g.target).unwrap_or_default());
        out
    };
    let hx = hourglass(x);
    let hy = hourglass(y);
    let meet: EdgeSet = hx.intersection(&hy).cloned().collect();
    if g.reaches(x, y) {
        let mut triple = g.xy_edge_set(&g.source, x).unwrap_or_default();
        triple.extend(g.xy_edge_set(x, y).unwrap_or_default());
        triple.extend(g.xy_edge_set(y, &g.target).unwrap_or_default());
        debug_assert_eq!(meet, triple, "join-intersection identity");
    }
    meet
}
