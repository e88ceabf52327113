use std::collections::BTreeMap;
use std::rc::Rc;

use super::*;
use crate::catalog::{bn, graph_f, graph_j};
use crate::nerve::marked_to_chain;
use crate::pasting::PastingDiagram;
use crate::plane_graph::{eid, vid};
use crate::sset::sset_iso;

fn pd_max(g: crate::plane_graph::Globular) -> PdCat {
    build_scat(&PastingDiagram::maximal(Rc::new(g))).unwrap()
}

fn pd_minc(g: crate::plane_graph::Globular) -> PdCat {
    build_scat(&PastingDiagram::min_complete(Rc::new(g))).unwrap()
}

#[test]
fn incomplete_diagram_is_rejected() {
    // the minimal diagram on a join is not complete (its completion is
    // maximal), so the category construction must refuse it
    let j = Rc::new(graph_j());
    let min = PastingDiagram::minimal(j);
    assert!(matches!(build_scat(&min), Err(Error::NotComplete(_))));
}

#[test]
fn hom_spaces_of_maximal_b2() {
    let cat = pd_max(bn(2));
    assert!(sset_iso(cat.scat.hom("s", "t"), &FiniteSSet::delta(2)).is_some());
    assert_eq!(cat.scat.hom("s", "s").cells(0), 1);
    assert!(cat.scat.hom("t", "s").is_empty());
    cat.scat.validate(2).unwrap();
}

#[test]
fn hom_space_of_min_complete_j_is_a_square() {
    let cat = pd_minc(graph_j());
    let square = FiniteSSet::product(&FiniteSSet::delta(1), &FiniteSSet::delta(1));
    assert!(sset_iso(cat.scat.hom("s", "t"), &square).is_some());
    assert!(sset_iso(cat.scat.hom("s", "m"), &FiniteSSet::delta(1)).is_some());
    cat.scat.validate(2).unwrap();
}

#[test]
fn maximal_homs_are_nerves_of_path_subgraphs() {
    // for the maximal diagram the hom from x to y is the nerve of G_{x,y}
    let f = graph_f();
    let cat = pd_max(f.clone());
    for x in f.graph.vertices() {
        for y in f.graph.vertices() {
            if x == y {
                continue;
            }
            let hom = cat.scat.hom(&x.0, &y.0);
            match f.subgraph_xy(x, y) {
                Some(sub) if !sub.graph.is_trivial() => {
                    let nv = crate::nerve::nerve(&sub).unwrap();
                    assert!(sset_iso(hom, &nv.to_sset()).is_some(), "hom({x},{y})");
                }
                _ => assert!(hom.is_empty(), "hom({x},{y})"),
            }
        }
    }
}

#[test]
fn min_complete_b2_hom_is_the_spine() {
    let cat = pd_minc(bn(2));
    let hom = cat.scat.hom("s", "t");
    assert_eq!(hom.cells(0), 3);
    assert_eq!(hom.cells(1), 2);
    assert_eq!(hom.names.len(), 2); // nothing above dimension 1
}

#[test]
fn atomic_decomposition_on_f() {
    let f = graph_f();
    let cat = pd_max(f.clone());
    // the 1-simplex on e1 + the first face: two atomic factors
    let data = cat.hom_data("s", "3").unwrap();
    let dom = crate::plane_graph::DiPath::from_edges(&f.graph, &[eid("e1"), eid("e2"), eid("e5")]).unwrap();
    let cod = crate::plane_graph::DiPath::from_edges(&f.graph, &[eid("e1"), eid("e7")]).unwrap();
    let chain = vec![
        data.nerve.poset.index_of(&dom).unwrap(),
        data.nerve.poset.index_of(&cod).unwrap(),
    ];
    let r = cat.ref_of_chain("s", "3", &chain);
    let factors = atomic_decomposition(&cat, "s", "3", &r);
    assert_eq!(factors.len(), 2);
    assert_eq!(factors[0].0.edges, std::iter::once(eid("e1")).collect());
    assert!(factors[0].1.dim() == 1 && !factors[0].1.is_nondegenerate());
    assert_eq!(
        factors[1].0.edges,
        [eid("e2"), eid("e5"), eid("e7")].into_iter().collect()
    );
    assert!(factors[1].1.is_nondegenerate());
    // an atomic simplex decomposes as itself
    let face_ref = factors[1].1.clone();
    let single = atomic_decomposition(&cat, "2", "3", &face_ref);
    assert_eq!(single.len(), 1);
    // a degenerate simplex on a length-3 path: three edge factors
    let data_st = cat.hom_data("s", "t").unwrap();
    let p = crate::plane_graph::DiPath::from_edges(&f.graph, &[eid("e1"), eid("e7"), eid("e8")]).unwrap();
    let pi = data_st.nerve.poset.index_of(&p).unwrap();
    let degen = cat.ref_of_chain("s", "t", &vec![pi, pi, pi]);
    let parts = atomic_decomposition(&cat, "s", "t", &degen);
    assert_eq!(parts.len(), 3);
    assert!(parts.iter().all(|(m, r)| m.labels.is_empty() && r.dim() == 2));
}

#[test]
fn cube_rep_of_the_square_diagonal() {
    let j = graph_j();
    let cat = pd_minc(j.clone());
    let data = cat.hom_data("s", "t").unwrap();
    // the 2-simplex flipping the left lens first
    let chain: Chain = {
        let p = |edges: &[&str]| {
            let path = crate::plane_graph::DiPath::from_edges(
                &j.graph,
                &edges.iter().map(|e| eid(e)).collect::<Vec<_>>(),
            )
            .unwrap();
            data.nerve.poset.index_of(&path).unwrap()
        };
        vec![p(&["e0", "d0"]), p(&["e1", "d0"]), p(&["e1", "d1"])]
    };
    let m = chain_to_marked(&data.graph, &data.nerve, &chain);
    let rep = cube_rep(&data.graph, &m).unwrap();
    assert_eq!(rep.factors.len(), 2);
    assert_eq!(rep.beta[0].vals, vec![0, 1, 1]);
    assert_eq!(rep.beta[1].vals, vec![0, 0, 1]);
    // a 0-simplex has constant classifying maps
    let m0 = chain_to_marked(&data.graph, &data.nerve, &vec![chain[0]]);
    let rep0 = cube_rep(&data.graph, &m0).unwrap();
    assert!(rep0.beta.iter().all(|b| b.vals.iter().all(|&v| v == 0)));
}

#[test]
fn godement_square_commutes() {
    // operator first then classify = classify then project, over the
    // minimal complete diagrams of the catalog
    for entry in crate::catalog::catalog() {
        let cat = pd_minc(entry.graph.clone());
        for (key, data) in &cat.hom_data {
            for d in 1..data.chains.len().min(4) {
                for chain in &data.chains[d] {
                    let m = chain_to_marked(&data.graph, &data.nerve, chain);
                    for mm in 0..=2usize.min(d) {
                        for op in Mono::all(mm, d) {
                            let eps = epsilon_map(&data.graph, &m, &op).unwrap();
                            let hat = cube_rep(&data.graph, &m).unwrap();
                            let acted = act_operator(&data.graph, &m, &op).unwrap();
                            let hat_acted = cube_rep(&data.graph, &acted).unwrap();
                            // both composites as tuples of maps [mm] -> [eps_i]
                            let lhs: Vec<Mono> =
                                hat.beta.iter().map(|b| b.compose(&op)).collect();
                            let rhs = eps.apply(&hat_acted.beta);
                            assert_eq!(lhs, rhs, "{} {key:?} {op:?}", entry.name);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn epsilon_is_functorial() {
    let f = graph_f();
    let cat = pd_minc(f);
    let data = cat.hom_data("s", "t").unwrap();
    for d in 2..data.chains.len().min(4) {
        for chain in &data.chains[d] {
            let m = chain_to_marked(&data.graph, &data.nerve, chain);
            for alpha in Mono::all(d - 1, d) {
                let m_alpha = act_operator(&data.graph, &m, &alpha).unwrap();
                for beta in Mono::all(1, d - 1) {
                    let eps_composite =
                        epsilon_map(&data.graph, &m, &alpha.compose(&beta)).unwrap();
                    let eps_alpha = epsilon_map(&data.graph, &m, &alpha).unwrap();
                    let eps_beta = epsilon_map(&data.graph, &m_alpha, &beta).unwrap();
                    assert_eq!(eps_composite, eps_alpha.compose(&eps_beta));
                }
            }
        }
    }
}

#[test]
fn cube_of_a_composite_concatenates() {
    let j = graph_j();
    let cat = pd_minc(j.clone());
    let dl = cat.hom_data("s", "m").unwrap();
    let dr = cat.hom_data("m", "t").unwrap();
    let dj = cat.hom_data("s", "t").unwrap();
    for c1 in &dl.chains[1] {
        for c2 in &dr.chains[1] {
            let r1 = cat.ref_of_chain("s", "m", c1);
            let r2 = cat.ref_of_chain("m", "t", c2);
            let v = cat.scat.compose("s", "m", "t", &r1, &r2);
            let chain = cat.chain_of_ref("s", "t", &v);
            let mv = chain_to_marked(&dj.graph, &dj.nerve, &chain);
            let rep = cube_rep(&dj.graph, &mv).unwrap();
            let rep1 = cube_rep(&dl.graph, &chain_to_marked(&dl.graph, &dl.nerve, c1)).unwrap();
            let rep2 = cube_rep(&dr.graph, &chain_to_marked(&dr.graph, &dr.nerve, c2)).unwrap();
            let mut want = rep1.beta.clone();
            want.extend(rep2.beta.clone());
            assert_eq!(rep.beta, want);
        }
    }
}

#[test]
fn identity_labeling_gives_the_inclusion_functor() {
    let b2 = bn(2);
    let dom = pd_minc(b2.clone());
    let target = pd_max(b2.clone());
    // label everything by itself
    let lam = functor_to_labeling(&SFunctor::inclusion(&dom, &target), &dom, &target.scat);
    lam.validate(&b2, &target.scat).unwrap();
    let u = labeling_to_functor(&lam, &dom, &target.scat).unwrap();
    assert_eq!(u, SFunctor::inclusion(&dom, &target));
}

#[test]
fn labeling_functor_round_trips() {
    for g in [bn(2), graph_j()] {
        let dom = pd_minc(g.clone());
        let target = pd_max(graph_j());
        for lam in enumerate_labelings(&g, &target.scat) {
            let u = labeling_to_functor(&lam, &dom, &target.scat).unwrap();
            let back = functor_to_labeling(&u, &dom, &target.scat);
            assert_eq!(lam, back);
            let again = labeling_to_functor(&back, &dom, &target.scat).unwrap();
            assert_eq!(u, again);
        }
    }
}

#[test]
fn theorem_counts_match() {
    // labelings correspond to functors out of the minimal complete category
    let target = pd_max(graph_j());
    for g in [bn(2), graph_j()] {
        let dom = pd_minc(g.clone());
        let labelings = enumerate_labelings(&g, &target.scat);
        let functors = enumerate_functors(&dom.scat, &target.scat);
        assert_eq!(labelings.len(), functors.len(), "counts for the two routes");
        // and the map labeling -> functor is injective into that set
        let mut images = Vec::new();
        for lam in &labelings {
            let u = labeling_to_functor(lam, &dom, &target.scat).unwrap();
            assert!(functors.contains(&u));
            assert!(!images.contains(&u), "two labelings gave one functor");
            images.push(u);
        }
    }
}

#[test]
fn diagonal_goes_to_the_interchange_composite() {
    // labeling J identically into its own maximal category sends the
    // diagonal 1-simplex to the composite of the two lens cells
    let j = graph_j();
    let dom = pd_minc(j.clone());
    let target = pd_max(j.clone());
    let lam = functor_to_labeling(&SFunctor::inclusion(&dom, &target), &dom, &target.scat);
    let u = labeling_to_functor(&lam, &dom, &target.scat).unwrap();
    let data = dom.hom_data("s", "t").unwrap();
    let p = |edges: &[&str]| {
        let path = crate::plane_graph::DiPath::from_edges(
            &j.graph,
            &edges.iter().map(|e| eid(e)).collect::<Vec<_>>(),
        )
        .unwrap();
        data.nerve.poset.index_of(&path).unwrap()
    };
    let diag = vec![p(&["e0", "d0"]), p(&["e1", "d1"])];
    let r = dom.ref_of_chain("s", "t", &diag);
    let img = u.apply(&target.scat, "s", "t", &r);
    // the image is the diagonal of the target square as well
    let tchain = target.chain_of_ref("s", "t", &img);
    assert_eq!(tchain, diag);
}

#[test]
fn collapsed_cube_ends_match_labeling_composites() {
    // when an operator collapses a face factor, the end inclusion composes
    // the labels of the replacing edge factors to the face's matching end
    let j = graph_j();
    let dom = pd_minc(j.clone());
    let target = pd_max(j.clone());
    let lam = functor_to_labeling(&SFunctor::inclusion(&dom, &target), &dom, &target.scat);
    let data = dom.hom_data("s", "t").unwrap();
    let chain = data.chains[2][0].clone();
    let m = chain_to_marked(&data.graph, &data.nerve, &chain);
    for op in [Mono::face(2, 0), Mono::face(2, 2)] {
        let eps = epsilon_map(&data.graph, &m, &op).unwrap();
        let factors = cube_factors(&data.graph, &m).unwrap();
        for (i, comp) in eps.components.iter().enumerate() {
            if let (CubeComponent::Const(end), CubeFactor::Face { key, .. }) =
                (comp, &factors[i])
            {
                let face = data.graph.face_by_key(key).unwrap();
                let side = if *end == 1 { &face.cod } else { &face.dom };
                let composite = lam.path_composite(&j, &target.scat, side);
                let face_label = &lam.face[key];
                let hom = target
                    .scat
                    .hom(&lam.obj[&face.src], &lam.obj[&face.tgt]);
                let want = hom.act(face_label, &Mono::face(1, 1 - *end));
                assert_eq!(composite, want);
            }
        }
    }
}

#[test]
fn lozenge_shapes() {
    // adjoining s and t to the empty category gives the walking arrow
    let empty = SCat {
        objects: vec![],
        homs: BTreeMap::new(),
        comp: BTreeMap::new(),
        ids: BTreeMap::new(),
        dim: 0,
    };
    let arrow = lozenge(&empty);
    assert_eq!(arrow.objects, vec!["s".to_string(), "t".to_string()]);
    assert_eq!(arrow.hom("s", "t").cells(0), 1);
    assert!(arrow.hom("t", "s").is_empty());
    // over a nontrivial category the old homs survive and the new extremes
    // pick primed names
    let base = pd_max(bn(2)).scat;
    let lz = lozenge(&base);
    assert_eq!(lz.objects.first().unwrap(), "s'");
    assert_eq!(lz.objects.last().unwrap(), "t'");
    assert_eq!(lz.hom("s", "t").names, base.hom("s", "t").names);
    assert_eq!(lz.hom("s'", "s").cells(0), 1);
    assert!(lz.hom("t", "s'").is_empty());
    assert_eq!(lz.hom("s'", "t'").cells(0), 1);
    lz.validate(1).unwrap();
}

#[test]
fn vertex_partition_on_f() {
    let f = graph_f();
    let (v0, v1, v2) = vertex_partition(&f, &vid("2"), &vid("3"));
    let names = |s: &std::collections::BTreeSet<crate::plane_graph::VertexId>| {
        s.iter().map(|v| v.0.clone()).collect::<Vec<_>>()
    };
    assert_eq!(names(&v1), vec!["2", "3", "5"]);
    assert_eq!(names(&v0), vec!["s"]);
    assert_eq!(names(&v2), vec!["6", "t"]);
}

#[test]
fn over_u_with_identity_changes_nothing() {
    let cat = pd_minc(bn(2));
    let hom_st = cat.scat.hom("s", "t").clone();
    let u = HomMap::identity_on(&hom_st);
    let over = over_u(&cat, &hom_st, &u);
    assert_eq!(over.hom("s", "t").names, cat.scat.hom("s", "t").names);
    for (k, table) in &cat.scat.comp {
        assert_eq!(&over.comp[k], table);
    }
    over.validate(2).unwrap();
}
