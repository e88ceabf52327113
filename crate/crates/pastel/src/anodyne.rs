//! Inner-anodyne filtration certificates: an ordered list of inner-horn
//! pushout steps exhibiting the nerve inclusion of a pasting-diagram pair as
//! inner anodyne. The builder follows the recursive split of the underlying
//! graph where that yields explicit fillers and falls back to exhaustive
//! search for the cut-vertex assembly stages; the validator replays steps
//! independently.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashSet;
use std::hash::{Hash, Hasher};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::nerve::{nerve, Chain, Nerve};
use crate::pasting::{PastingDiagram, SimplicialSubset};
use crate::plane_graph::{DiPath, EdgeSet, FaceKey, Globular};

/// One inner-horn pushout: the filler simplex of `dim` whose horn at `horn`
/// was present, adding the filler and its missing face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub dim: usize,
    pub horn: usize,
    pub filler: Chain,
}

#[derive(Clone, Debug)]
pub struct AnodyneCertificate {
    pub steps: Vec<Step>,
}

/// The inductive split of a 2-connected graph with at least two interior
/// faces: a face with dom on the graph's dom, the paths through it, the
/// paths avoiding its dom, and their intersection.
#[derive(Clone, Debug)]
pub struct Split {
    pub phi: FaceKey,
    pub g0: EdgeSet,
    pub g1: EdgeSet,
    pub g2: EdgeSet,
}

pub fn split_graph(g: &Globular) -> Result<Split> {
    if g.interior_face_count() < 2 {
        return Err(Error::TooFewFaces);
    }
    let dom = g.dom();
    // first interior face, in face-tracing order, whose dom lies on dom(G)
    let phi = g
        .faces
        .iter()
        .find(|f| !f.exterior && dom.find_subpath(&f.dom).is_some())
        .expect("some interior face has its dom on the graph dom")
        .clone();
    let st_paths = g.paths_between(&g.source, &g.target);
    let mut g1 = EdgeSet::new();
    let mut g2 = EdgeSet::new();
    let mut g0_direct = EdgeSet::new();
    for p in &st_paths {
        let has_dom = p.find_subpath(&phi.dom).is_some();
        let has_cod = p.find_subpath(&phi.cod).is_some();
        let avoids_dom = !p.edges.iter().any(|e| phi.dom.contains(e));
        if has_dom || has_cod {
            g1.extend(p.edges.iter().cloned());
        }
        if avoids_dom {
            g2.extend(p.edges.iter().cloned());
        }
        if has_cod && avoids_dom {
            g0_direct.extend(p.edges.iter().cloned());
        }
    }
    let g0: EdgeSet = g1.intersection(&g2).cloned().collect();
    debug_assert_eq!(g0, g0_direct, "two descriptions of the middle piece");
    for (name, part) in [("g0", &g0), ("g1", &g1), ("g2", &g2)] {
        if part.len() >= g.graph.edge_count() {
            let cut = g.cut_vertices().into_iter().next();
            return Err(Error::NotTwoConnected(
                cut.map(|v| v.to_string()).unwrap_or_else(|| name.to_string()),
            ));
        }
        if !g.is_globular_subgraph(part) {
            return Err(Error::Invalid(format!("split piece {name} is not globular")));
        }
    }
    Ok(Split { phi: (phi.dom.clone(), phi.cod.clone()), g0, g1, g2 })
}

/// Witness data of a simplex relative to a split: the first witness leaving
/// the through-paths piece and whether it meets that piece only in its
/// boundary.
#[derive(Clone, Debug)]
pub struct FillableInfo {
    pub witnesses: Vec<EdgeSet>,
    pub c: usize,
    pub fillable: bool,
}

/// Does the region of `inner` meet the region of `outer` only in the
/// boundary of `outer`?
fn region_meets_only_boundary(g: &Globular, inner: &EdgeSet, outer: &EdgeSet) -> bool {
    let ri = g.region(inner);
    let ro = g.region(outer);
    if ri.interior_faces.intersection(&ro.interior_faces).next().is_some() {
        return false;
    }
    let osub = g.sub(outer).expect("split piece is globular");
    let boundary_edges = osub.boundary_edges();
    let boundary_vertices = osub.boundary_vertices();
    ri.edges.intersection(&ro.edges).all(|e| boundary_edges.contains(e))
        && ri
            .vertices
            .intersection(&ro.vertices)
            .all(|v| boundary_vertices.contains(v))
}

pub fn classify_fillable(g: &Globular, nv: &Nerve, split: &Split, chain: &Chain) -> FillableInfo {
    assert!(Nerve::is_nondegenerate(chain));
    let witnesses: Vec<EdgeSet> = chain
        .windows(2)
        .map(|w| nv.poset.minimal_witness(w[0], w[1]).unwrap().edges.clone())
        .collect();
    let c = witnesses
        .iter()
        .position(|gamma| !gamma.is_subset(&split.g1))
        .map(|i| i + 1)
        .unwrap_or(chain.len());
    let fillable =
        c == chain.len() || region_meets_only_boundary(g, &witnesses[c - 1], &split.g1);
    FillableInfo { witnesses, c, fillable }
}

/// Cut a glob along the boundary of the through-paths piece: the path
/// between its two halves, found by pushing the faces inside that piece to
/// the left.
pub fn cut_glob(g: &Globular, split: &Split, gamma: &EdgeSet) -> Result<DiPath> {
    let region = g.region(gamma);
    let k = g.sub(&region.edges)?;
    let g1_faces = g.region(&split.g1).interior_faces;
    // push every region face of the g1 side above the cut path
    let mut labels = std::collections::BTreeMap::new();
    for face in k.interior_faces() {
        // identify this face of K with a face of the ambient graph
        let probe = crate::plane_graph::Side::fwd(&face.dom[0]);
        let ambient_face = g.graph.face_of_side(&probe);
        let inside = g1_faces.contains(&ambient_face);
        labels.insert(face.key(), if inside { 1 } else { 2 });
    }
    let marked = crate::nerve::MarkedSubgraph { n: 2, edges: k.edge_set(), labels };
    let knv = nerve(&k)?;
    let chain = crate::nerve::marked_to_chain(&k, &knv, &marked)?;
    Ok(knv.poset.paths[chain[1]].clone())
}

fn check_hypotheses(sigma: &PastingDiagram, pi: &PastingDiagram) -> Result<()> {
    if !sigma.is_inclusion_into(pi) {
        return Err(Error::HypothesisViolated("not an inclusion of diagrams".into()));
    }
    for (name, d) in [("domain", sigma), ("codomain", pi)] {
        if !d.is_complete() {
            return Err(Error::HypothesisViolated(format!("{name} diagram is not complete")));
        }
        if !d.is_subdivision_closed() {
            return Err(Error::HypothesisViolated(format!(
                "{name} diagram is not closed under subdivisions"
            )));
        }
        if !d.contains_all_interior_faces() {
            return Err(Error::HypothesisViolated(format!(
                "{name} diagram misses an interior face"
            )));
        }
    }
    Ok(())
}

pub fn build_certificate(
    sigma: &PastingDiagram,
    pi: &PastingDiagram,
) -> Result<AnodyneCertificate> {
    check_hypotheses(sigma, pi)?;
    let nv = nerve(&sigma.graph)?;
    let base = sigma.nerve_subset(&nv);
    let target = pi.nerve_subset(&nv);
    let steps = build_steps(sigma, pi, &nv, &base, &target)?;
    Ok(AnodyneCertificate { steps })
}

fn build_steps(
    sigma: &PastingDiagram,
    pi: &PastingDiagram,
    nv: &Nerve,
    base: &SimplicialSubset,
    target: &SimplicialSubset,
) -> Result<Vec<Step>> {
    if sigma.members == pi.members {
        return Ok(vec![]);
    }
    let g = &sigma.graph;
    let factors = g.join_factors();
    let nontrivial: Vec<&EdgeSet> = factors.iter().filter(|f| f.len() > 1).collect();
    if factors.len() > 1 && nontrivial.len() == 1 {
        // all other factors are single edges: the nerve is the factor's
        // nerve with every path wrapped by the same prefix and suffix
        return lift_through_single_factor(sigma, pi, nv, nontrivial[0]);
    }
    if factors.len() == 1 && g.interior_face_count() >= 2 {
        return split_steps(sigma, pi, nv, base, target);
    }
    // several nontrivial factors: assemble by search, cheapest-first
    search_steps(nv, base.clone(), target)
}

/// Certificate for a graph of the form path ⋈ core ⋈ path, lifted from the
/// core factor by reindexing every path.
fn lift_through_single_factor(
    sigma: &PastingDiagram,
    pi: &PastingDiagram,
    nv: &Nerve,
    core: &EdgeSet,
) -> Result<Vec<Step>> {
    let g = &sigma.graph;
    let sub_sigma = sigma.restrict(core)?;
    let sub_pi = pi.restrict(core)?;
    let sub_nv = nerve(&sub_sigma.graph)?;
    let base = sub_sigma.nerve_subset(&sub_nv);
    let target = sub_pi.nerve_subset(&sub_nv);
    let inner_steps = build_steps(&sub_sigma, &sub_pi, &sub_nv, &base, &target)?;
    // prefix and suffix paths are unique
    let core_graph = &sub_sigma.graph;
    let prefix = g
        .paths_between(&g.source, &core_graph.source)
        .into_iter()
        .exactly_one()
        .map_err(|_| Error::Invalid("ambiguous prefix path".into()))?;
    let suffix = g
        .paths_between(&core_graph.target, &g.target)
        .into_iter()
        .exactly_one()
        .map_err(|_| Error::Invalid("ambiguous suffix path".into()))?;
    let reindex: Vec<usize> = sub_nv
        .poset
        .paths
        .iter()
        .map(|p| {
            let full = prefix.concat(p).concat(&suffix);
            nv.poset.index_of(&full).expect("wrapped path is an st-path")
        })
        .collect();
    Ok(inner_steps
        .into_iter()
        .map(|s| Step {
            dim: s.dim,
            horn: s.horn,
            filler: s.filler.into_iter().map(|i| reindex[i]).collect(),
        })
        .collect())
}

/// The 2-connected case: recurse into the three split pieces, reach the
/// union of their nerves, then run the fillable filtration by dimension
/// ascending and witness index descending.
fn split_steps(
    sigma: &PastingDiagram,
    pi: &PastingDiagram,
    nv: &Nerve,
    base: &SimplicialSubset,
    target: &SimplicialSubset,
) -> Result<Vec<Step>> {
    let g = &sigma.graph;
    let split = split_graph(g)?;
    let mut sub = base.clone();
    let mut steps = Vec::new();
    // phase A: bring in the nerves of the two restricted codomain diagrams
    let mut x0 = base.clone();
    for part in [&split.g1, &split.g2] {
        let sub_sigma = sigma.restrict(part)?;
        let sub_pi = pi.restrict(part)?;
        let part_nv = nerve(&sub_sigma.graph)?;
        let part_base = sub_sigma.nerve_subset(&part_nv);
        let part_target = sub_pi.nerve_subset(&part_nv);
        let part_steps = build_steps(&sub_sigma, &sub_pi, &part_nv, &part_base, &part_target)?;
        let embedded_target = part_target.embed(&part_nv, nv);
        x0 = x0.union(&embedded_target);
        // replay, skipping whatever is already present
        let reindex: Vec<usize> = part_nv
            .poset
            .paths
            .iter()
            .map(|p| nv.poset.index_of(p).expect("wide piece paths are ambient"))
            .collect();
        for s in part_steps {
            let filler: Chain = s.filler.iter().map(|&i| reindex[i]).collect();
            if sub.contains(&filler) {
                continue;
            }
            let missing = face_of(&filler, s.horn);
            if sub.contains(&missing) {
                // replay conflict: defer to the search below
                continue;
            }
            if (0..=s.dim).all(|j| j == s.horn || sub.contains(&face_of(&filler, j))) {
                sub.insert(filler.clone());
                sub.insert(missing);
                steps.push(Step { dim: s.dim, horn: s.horn, filler });
            }
        }
    }
    if !x0.is_subset(&sub) {
        // the replays did not assemble the pushout; search the remainder
        let fill = search_steps(nv, sub.clone(), &x0)?;
        for s in &fill {
            sub.insert(s.filler.clone());
            sub.insert(face_of(&s.filler, s.horn));
        }
        steps.extend(fill);
    }
    // phase B: the fillable filtration
    let max_dim = nv.dim();
    for n in 2..=max_dim {
        for c in (2..=n).rev() {
            let level: Vec<Chain> = target.dims[n]
                .iter()
                .filter(|chain| !sub.contains(chain))
                .filter(|chain| {
                    let info = classify_fillable(g, nv, &split, chain);
                    info.fillable && info.c == c
                })
                .cloned()
                .collect();
            for filler in level {
                let horn = c - 1;
                let missing = face_of(&filler, horn);
                for j in 0..=n {
                    if j != horn && !sub.contains(&face_of(&filler, j)) {
                        return Err(Error::SearchExhausted {
                            missing: 1,
                            first: format!("horn of {filler:?} incomplete at {j}"),
                        });
                    }
                }
                if sub.contains(&missing) {
                    return Err(Error::SearchExhausted {
                        missing: 1,
                        first: format!("face {missing:?} arrived early"),
                    });
                }
                sub.insert(filler.clone());
                sub.insert(missing);
                steps.push(Step { dim: n, horn, filler });
            }
        }
    }
    if !target.is_subset(&sub) || !sub.is_subset(target) {
        let missing: Vec<String> = target
            .dims
            .iter()
            .flatten()
            .filter(|c| !sub.contains(c))
            .map(|c| format!("{c:?}"))
            .collect();
        return Err(Error::SearchExhausted {
            missing: missing.len(),
            first: missing.first().cloned().unwrap_or_default(),
        });
    }
    Ok(steps)
}

fn face_of(chain: &Chain, i: usize) -> Chain {
    let mut f = chain.clone();
    f.remove(i);
    f
}

fn state_key(sub: &SimplicialSubset) -> u64 {
    let mut h = DefaultHasher::new();
    for lvl in &sub.dims {
        for c in lvl {
            c.hash(&mut h);
        }
        0xfeedu16.hash(&mut h);
    }
    h.finish()
}

/// Exhaustive certificate search from a subcomplex to a target, trying inner
/// horn pushouts in deterministic order with backtracking.
pub fn search_steps(
    nv: &Nerve,
    start: SimplicialSubset,
    target: &SimplicialSubset,
) -> Result<Vec<Step>> {
    let goal: usize = target.len();
    let mut failed: HashSet<u64> = HashSet::new();
    let mut steps: Vec<Step> = Vec::new();
    let mut sub = start;

    fn dfs(
        nv: &Nerve,
        sub: &mut SimplicialSubset,
        target: &SimplicialSubset,
        goal: usize,
        steps: &mut Vec<Step>,
        failed: &mut HashSet<u64>,
    ) -> bool {
        if sub.len() == goal {
            return true;
        }
        let key = state_key(sub);
        if failed.contains(&key) {
            return false;
        }
        let mut candidates = Vec::new();
        for (d, lvl) in target.dims.iter().enumerate() {
            if d < 2 {
                continue;
            }
            for chain in lvl {
                if sub.contains(chain) {
                    continue;
                }
                for i in 1..d {
                    if sub.contains(&face_of(chain, i)) {
                        continue;
                    }
                    if (0..=d).all(|j| j == i || sub.contains(&face_of(chain, j))) {
                        candidates.push(Step { dim: d, horn: i, filler: chain.clone() });
                    }
                }
            }
            if !candidates.is_empty() {
                break; // fill lowest dimensions first
            }
        }
        for step in candidates {
            let missing = face_of(&step.filler, step.horn);
            sub.insert(step.filler.clone());
            sub.insert(missing.clone());
            steps.push(step.clone());
            if dfs(nv, sub, target, goal, steps, failed) {
                return true;
            }
            steps.pop();
            sub.dims[step.dim].remove(&step.filler);
            sub.dims[step.dim - 1].remove(&missing);
        }
        failed.insert(key);
        false
    }

    if dfs(nv, &mut sub, target, goal, &mut steps, &mut failed) {
        Ok(steps)
    } else {
        let missing: Vec<String> = target
            .dims
            .iter()
            .flatten()
            .filter(|c| !sub.contains(c))
            .map(|c| format!("{c:?}"))
            .collect();
        Err(Error::SearchExhausted {
            missing: missing.len(),
            first: missing.first().cloned().unwrap_or_default(),
        })
    }
}

/// Outcome of replaying a certificate against its claimed endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationReport {
    Valid,
    InnerIndexViolation { step: usize },
    HornIncomplete { step: usize, face: usize },
    NoveltyViolation { step: usize },
    FillerOutsideCodomain { step: usize },
    IncompleteCoverage { missing: usize },
}

/// Replay the steps independently of the builder: horn containment, novelty
/// of the filler and its missing face, inner horn index, final coverage.
pub fn validate_certificate(
    sigma: &PastingDiagram,
    pi: &PastingDiagram,
    cert: &AnodyneCertificate,
) -> Result<ValidationReport> {
    let nv = nerve(&sigma.graph)?;
    let mut sub = sigma.nerve_subset(&nv);
    let target = pi.nerve_subset(&nv);
    for (k, step) in cert.steps.iter().enumerate() {
        let n = step.dim;
        if step.filler.len() != n + 1 || !Nerve::is_nondegenerate(&step.filler) {
            return Ok(ValidationReport::FillerOutsideCodomain { step: k });
        }
        if !target.contains(&step.filler) {
            return Ok(ValidationReport::FillerOutsideCodomain { step: k });
        }
        if step.horn == 0 || step.horn >= n {
            return Ok(ValidationReport::InnerIndexViolation { step: k });
        }
        if sub.contains(&step.filler) || sub.contains(&face_of(&step.filler, step.horn)) {
            return Ok(ValidationReport::NoveltyViolation { step: k });
        }
        for j in 0..=n {
            if j != step.horn && !sub.contains(&face_of(&step.filler, j)) {
                return Ok(ValidationReport::HornIncomplete { step: k, face: j });
            }
        }
        sub.insert(step.filler.clone());
        sub.insert(face_of(&step.filler, step.horn));
    }
    let missing = target.len().saturating_sub(sub.len());
    if missing > 0 || !target.is_subset(&sub) {
        return Ok(ValidationReport::IncompleteCoverage {
            missing: missing.max(1),
        });
    }
    Ok(ValidationReport::Valid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{b2_join_b1, bn, graph_f};
    use crate::plane_graph::eid;
    use std::rc::Rc;

    fn edge_set(ids: &[&str]) -> EdgeSet {
        ids.iter().map(|e| eid(e)).collect()
    }

    #[test]
    fn split_of_b2() {
        let b2 = bn(2);
        let split = split_graph(&b2).unwrap();
        assert_eq!(split.phi.0, vec![eid("e0")]);
        assert_eq!(split.phi.1, vec![eid("e1")]);
        assert_eq!(split.g1, edge_set(&["e0", "e1"]));
        assert_eq!(split.g2, edge_set(&["e1", "e2"]));
        assert_eq!(split.g0, edge_set(&["e1"]));
    }

    #[test]
    fn split_rejects_single_face() {
        assert!(matches!(split_graph(&bn(1)), Err(Error::TooFewFaces)));
    }

    #[test]
    fn split_on_the_core_of_f() {
        let f = graph_f();
        let core = f.sub(&edge_set(&["e2", "e3", "e4", "e5", "e6", "e7", "e8"])).unwrap();
        let split = split_graph(&core).unwrap();
        assert_eq!(split.phi.0, vec![eid("e3")]);
        assert_eq!(split.g1, edge_set(&["e2", "e3", "e4", "e5", "e6"]));
    }

    #[test]
    fn fillable_classification_on_b3() {
        let b3 = bn(3);
        let nv = nerve(&b3).unwrap();
        let split = split_graph(&b3).unwrap();
        // indices: paths sorted e0 < e1 < e2 < e3
        let info = classify_fillable(&b3, &nv, &split, &vec![0, 1, 2]);
        assert_eq!(info.c, 2);
        assert!(info.fillable);
        // the witness from e0 to e2 encloses an interior face of g1
        let info = classify_fillable(&b3, &nv, &split, &vec![0, 2, 3]);
        assert_eq!(info.c, 1);
        assert!(!info.fillable);
        // all witnesses inside g1
        let info = classify_fillable(&b3, &nv, &split, &vec![0, 1]);
        assert_eq!(info.c, 2);
        assert!(info.fillable);
    }

    #[test]
    fn certificate_for_b2_is_one_step() {
        let b2 = Rc::new(bn(2));
        let sigma = PastingDiagram::min_complete(b2.clone());
        let pi = PastingDiagram::maximal(b2);
        let cert = build_certificate(&sigma, &pi).unwrap();
        assert_eq!(cert.steps.len(), 1);
        assert_eq!(cert.steps[0].dim, 2);
        assert_eq!(cert.steps[0].horn, 1);
        assert_eq!(cert.steps[0].filler, vec![0, 1, 2]);
        assert_eq!(validate_certificate(&sigma, &pi, &cert).unwrap(), ValidationReport::Valid);
    }

    #[test]
    fn equal_diagrams_have_empty_certificates() {
        let b2 = Rc::new(bn(2));
        let pi = PastingDiagram::maximal(b2);
        let cert = build_certificate(&pi, &pi).unwrap();
        assert!(cert.steps.is_empty());
    }

    #[test]
    fn certificate_for_f_lifts_through_the_bridge() {
        let f = Rc::new(graph_f());
        let sigma = PastingDiagram::min_complete(f.clone());
        let pi = PastingDiagram::maximal(f);
        let cert = build_certificate(&sigma, &pi).unwrap();
        assert!(!cert.steps.is_empty());
        assert_eq!(validate_certificate(&sigma, &pi, &cert).unwrap(), ValidationReport::Valid);
    }

    #[test]
    fn certificate_via_search_on_a_cut_vertex_graph() {
        let g = Rc::new(b2_join_b1());
        let sigma = PastingDiagram::min_complete(g.clone());
        let pi = PastingDiagram::maximal(g);
        assert_ne!(sigma.members, pi.members);
        let cert = build_certificate(&sigma, &pi).unwrap();
        assert_eq!(validate_certificate(&sigma, &pi, &cert).unwrap(), ValidationReport::Valid);
    }

    #[test]
    fn validator_rejects_tampering() {
        let b2 = Rc::new(bn(2));
        let sigma = PastingDiagram::min_complete(b2.clone());
        let pi = PastingDiagram::maximal(b2);
        let good = build_certificate(&sigma, &pi).unwrap();
        // outer horn index
        let mut outer = good.clone();
        outer.steps[0].horn = 0;
        assert_eq!(
            validate_certificate(&sigma, &pi, &outer).unwrap(),
            ValidationReport::InnerIndexViolation { step: 0 }
        );
        // repeated filler
        let mut repeated = good.clone();
        repeated.steps.push(repeated.steps[0].clone());
        assert_eq!(
            validate_certificate(&sigma, &pi, &repeated).unwrap(),
            ValidationReport::NoveltyViolation { step: 1 }
        );
        // dropped step leaves the coverage incomplete
        let empty = AnodyneCertificate { steps: vec![] };
        assert!(matches!(
            validate_certificate(&sigma, &pi, &empty).unwrap(),
            ValidationReport::IncompleteCoverage { .. }
        ));
    }

    #[test]
    fn fillable_boundary_lemma_parts() {
        // (a), (b) and (c) on the catalog graphs that split
        for entry in crate::catalog::catalog() {
            let g = entry.graph.clone();
            if g.interior_face_count() < 2 || !g.cut_vertices().is_empty() {
                continue;
            }
            let nv = nerve(&g).unwrap();
            let split = split_graph(&g).unwrap();
            for d in 2..=nv.dim() {
                for chain in &nv.cells[d] {
                    let info = classify_fillable(&g, &nv, &split, chain);
                    if !info.fillable || info.c > d || info.c < 2 {
                        continue;
                    }
                    let c = info.c;
                    // (a) the faces away from the witness stay fillable
                    for i in 0..=d {
                        if i == c - 1 || i == c {
                            continue;
                        }
                        let f = face_of(chain, i);
                        let fi = classify_fillable(&g, &nv, &split, &f);
                        assert!(fi.fillable, "{}: face {i} of {chain:?}", entry.name);
                    }
                    // (b) the missing face is not fillable and determines its filler
                    let missing = face_of(chain, c - 1);
                    let mi = classify_fillable(&g, &nv, &split, &missing);
                    assert!(!mi.fillable, "{}: {chain:?}", entry.name);
                    for other in &nv.cells[d] {
                        if other == chain {
                            continue;
                        }
                        let oi = classify_fillable(&g, &nv, &split, other);
                        if oi.fillable && oi.c >= c {
                            let boundary: Vec<Chain> =
                                (0..=d).map(|j| face_of(other, j)).collect();
                            assert!(
                                !boundary.contains(&missing),
                                "{}: duplicate filler for {missing:?}",
                                entry.name
                            );
                        }
                    }
                    // (c) a non-fillable other face is covered by a later filler
                    let dc = face_of(chain, c);
                    let dci = classify_fillable(&g, &nv, &split, &dc);
                    if !dci.fillable {
                        let found = nv.cells[d].iter().any(|tau| {
                            let ti = classify_fillable(&g, &nv, &split, tau);
                            ti.fillable
                                && ti.c > c
                                && (0..=d).any(|j| face_of(tau, j) == dc)
                        });
                        assert!(found, "{}: no later filler covers {dc:?}", entry.name);
                    }
                }
            }
        }
    }

    #[test]
    fn cut_glob_splits_a_two_face_witness() {
        let b3 = bn(3);
        let nv = nerve(&b3).unwrap();
        let split = split_graph(&b3).unwrap();
        // witness of e0 <= e2 spans two faces; cutting yields e1
        let w = nv.poset.minimal_witness(0, 2).unwrap();
        let mid = cut_glob(&b3, &split, &w.edges).unwrap();
        assert_eq!(mid.edges, vec![eid("e1")]);
    }
}
