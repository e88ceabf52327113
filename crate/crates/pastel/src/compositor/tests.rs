use std::rc::Rc;

use super::*;
use crate::catalog::{bn, graph_f, graph_j, graph_overview};
use crate::plane_graph::eid;
use crate::scat::build_scat;

fn tautological_labeling(g: &Globular) -> TwoLabeling {
    TwoLabeling {
        obj: g.graph.vertices().iter().map(|v| (v.clone(), v.0.clone())).collect(),
        edge: g.graph.edge_ids().map(|e| (e.clone(), e.0.clone())).collect(),
        face: g
            .interior_faces()
            .map(|f| (f.key(), FreeTwoCat::face_gen_name(f)))
            .collect(),
    }
}

#[test]
fn overview_composite_word() {
    let g = graph_overview();
    let target = TwoTarget::Free(FreeTwoCat::on_graph(&g));
    let lam = tautological_labeling(&g);
    let value = paste_2cat(&g, &lam, &target).unwrap();
    let TwoCellValue::Free(word) = value else { panic!("free value expected") };
    assert_eq!(word.dom, vec!["a", "b", "c"]);
    assert_eq!(word.cod, vec!["u", "v", "w"]);
    // the unique composite: first the arc, then the middle cell, then the
    // left one, each whiskered by what is left around it
    let expect = vec![
        Layer { left: vec!["a".into(), "b".into()], gen: "c=>g.w".into(), right: vec![] },
        Layer { left: vec!["a".into()], gen: "b.g=>f.v".into(), right: vec!["w".into()] },
        Layer { left: vec![], gen: "a.f=>u".into(), right: vec!["v".into(), "w".into()] },
    ];
    assert_eq!(word.layers, expect);
    // and the oracle agrees: there is only one maximal chain here
    let values = exhaustive_composite_oracle(&g, &lam, &target).unwrap();
    assert_eq!(values.len(), 1);
    assert!(values.contains(&TwoCellValue::Free(word)));
}

#[test]
fn interchange_yields_equal_composites() {
    // the two evaluation orders on the two-glob diagram coincide
    let j = graph_j();
    let target = TwoTarget::Free(FreeTwoCat::on_graph(&j));
    let lam = tautological_labeling(&j);
    let nv = nerve(&j).unwrap();
    let chains = nv.poset.maximal_chains();
    assert_eq!(chains.len(), 2);
    let v1 = evaluate_chain(&j, &nv, &lam, &target, &chains[0]).unwrap();
    let v2 = evaluate_chain(&j, &nv, &lam, &target, &chains[1]).unwrap();
    assert_eq!(v1, v2);
    let TwoCellValue::Free(word) = v1 else { panic!() };
    assert_eq!(word.layers.len(), 2);
}

#[test]
fn oracle_is_singleton_for_tautological_labelings() {
    for entry in crate::catalog::catalog() {
        let g = &entry.graph;
        let target = TwoTarget::Free(FreeTwoCat::on_graph(g));
        let lam = tautological_labeling(g);
        let values = exhaustive_composite_oracle(g, &lam, &target).unwrap();
        assert_eq!(values.len(), 1, "{}", entry.name);
        let direct = paste_2cat(g, &lam, &target).unwrap();
        assert!(values.contains(&direct), "{}", entry.name);
    }
}

#[test]
fn tabulated_composite_sums_residues() {
    let cat = sample_tab_twocat(5, 4);
    let f = graph_f();
    // edges to the generator, faces to residues 1, 2, 3 with the right shape
    let lam = TwoLabeling {
        obj: f.graph.vertices().iter().map(|v| (v.clone(), "*".to_string())).collect(),
        edge: f.graph.edge_ids().map(|e| (e.clone(), "f1".to_string())).collect(),
        face: f
            .interior_faces()
            .zip(1usize..)
            .map(|(face, m)| {
                (face.key(), format!("({}->{};{m})", face.dom.len(), face.cod.len()))
            })
            .collect(),
    };
    let target = TwoTarget::Tab(cat);
    let values = exhaustive_composite_oracle(&f, &lam, &target).unwrap();
    assert_eq!(values.len(), 1);
    let TwoCellValue::Tab { idx, .. } = values.first().unwrap() else { panic!() };
    let direct = paste_2cat(&f, &lam, &target).unwrap();
    let TwoCellValue::Tab { idx: direct_idx, .. } = direct else { panic!() };
    assert_eq!(*idx, direct_idx);
    // dom length 4, cod length 3, residues 1+2+3 = 6 = 2 mod 4
    let TwoTarget::Tab(cat) = &target else { panic!() };
    let (name, d, c) = cat.two("*", "*", *idx);
    assert_eq!((d, c), (&4, &3), "{name}");
    assert!(name.ends_with(";2)"));
}

#[test]
fn identity_labeling_pastes_to_identity() {
    let cat = sample_tab_twocat(2, 4);
    let b2 = bn(2);
    let lam = TwoLabeling {
        obj: b2.graph.vertices().iter().map(|v| (v.clone(), "*".to_string())).collect(),
        edge: b2.graph.edge_ids().map(|e| (e.clone(), "f0".to_string())).collect(),
        face: b2.interior_faces().map(|f| (f.key(), "(0->0;0)".to_string())).collect(),
    };
    let target = TwoTarget::Tab(cat);
    let value = paste_2cat(&b2, &lam, &target).unwrap();
    let TwoCellValue::Tab { idx, .. } = value else { panic!() };
    let TwoTarget::Tab(cat) = &target else { panic!() };
    assert_eq!(idx, cat.id2[&("*".to_string(), "*".to_string())][0]);
}

#[test]
fn two_labeling_enumeration_on_j_free() {
    let j = graph_j();
    let target = TwoTarget::Free(FreeTwoCat::on_graph(&j));
    let labelings = enumerate_two_labelings(&j, &target);
    // endpoints force the identity vertex map and the boundary words force
    // the tautological labels
    assert_eq!(labelings.len(), 1);
    assert_eq!(labelings[0], tautological_labeling(&j));
}

#[test]
fn recursive_lift_on_catalog_against_itself() {
    for entry in crate::catalog::catalog() {
        let g = Rc::new(entry.graph.clone());
        let sigma = PastingDiagram::min_complete(g.clone());
        let pi = PastingDiagram::maximal(g);
        let sigma_cat = build_scat(&sigma).unwrap();
        let pi_cat = build_scat(&pi).unwrap();
        let b = &pi_cat.scat;
        let u = SFunctor::inclusion(&sigma_cat, &pi_cat);
        let terminal = SCat::terminal();
        let p = bang(b, &terminal);
        let v = bang(b, &terminal);
        let oracle = ExhaustiveOracle {
            target: b,
            fibration: None,
            expect_unique: true,
            reversed: false,
        };
        let ell =
            recursive_lift(&sigma_cat, &pi_cat, &u, b, &p, &terminal, &v, &oracle).unwrap();
        // with unique fillers the lift is the identity functor
        let id = SFunctor::inclusion(&pi_cat, &pi_cat);
        assert_eq!(ell, id, "{}", entry.name);
        // permuted tie-breaking changes nothing
        let oracle_rev = ExhaustiveOracle {
            target: b,
            fibration: None,
            expect_unique: true,
            reversed: true,
        };
        let ell2 =
            recursive_lift(&sigma_cat, &pi_cat, &u, b, &p, &terminal, &v, &oracle_rev).unwrap();
        assert_eq!(ell, ell2, "{}", entry.name);
    }
}

#[test]
fn extension_of_a_tabulated_labeling_matches_paste() {
    let b2 = bn(2);
    let cat = sample_tab_twocat(2, 2);
    let nerve_cat = tab_nerve_scat(&cat, 2);
    nerve_cat.validate(1).unwrap();
    let lam2 = TwoLabeling {
        obj: b2.graph.vertices().iter().map(|v| (v.clone(), "*".to_string())).collect(),
        edge: b2.graph.edge_ids().map(|e| (e.clone(), "f1".to_string())).collect(),
        face: {
            let mut m = BTreeMap::new();
            let faces: Vec<_> = b2.interior_faces().collect();
            m.insert(faces[0].key(), "(1->1;1)".to_string());
            m.insert(faces[1].key(), "(1->1;1)".to_string());
            m
        },
    };
    let lam = two_labeling_to_scat_labeling(&b2, &lam2, &cat, &nerve_cat).unwrap();
    let oracle = ExhaustiveOracle {
        target: &nerve_cat,
        fibration: None,
        expect_unique: true,
        reversed: false,
    };
    let ext = find_extension(&b2, &lam, &nerve_cat, &oracle).unwrap();
    // the image of the outer 1-simplex e0 <= e2 is the pasted composite
    let pi_cat = build_scat(&PastingDiagram::maximal(Rc::new(b2.clone()))).unwrap();
    let data = pi_cat.hom_data("s", "t").unwrap();
    let outer = vec![
        data.nerve.poset.index_of(&crate::plane_graph::DiPath::from_edges(&b2.graph, &[eid("e0")]).unwrap()).unwrap(),
        data.nerve.poset.index_of(&crate::plane_graph::DiPath::from_edges(&b2.graph, &[eid("e2")]).unwrap()).unwrap(),
    ];
    let r = pi_cat.ref_of_chain("s", "t", &outer);
    let img = ext.functor.apply(&nerve_cat, "s", "t", &r);
    // paste the labeling: 1 + 1 = 0 mod 2: an identity 2-cell, so the image
    // is the degenerate 1-simplex on f1
    let value = paste_2cat(&b2, &lam2, &TwoTarget::Tab(cat.clone())).unwrap();
    let TwoCellValue::Tab { idx, .. } = value else { panic!() };
    assert_eq!(idx, cat.id2[&("*".to_string(), "*".to_string())][1]);
    assert!(!img.is_nondegenerate());
    assert_eq!(img.cell.dim, 0);
    assert_eq!(img.cell.idx, 1); // the 0-cell f1
    // restriction of the extension is the original functor
    let sigma_cat = build_scat(&PastingDiagram::min_complete(Rc::new(b2.clone()))).unwrap();
    let u = crate::scat::labeling_to_functor(&lam, &sigma_cat, &nerve_cat).unwrap();
    let back = SFunctor::inclusion(&sigma_cat, &pi_cat).then(&ext.functor, &nerve_cat);
    assert_eq!(back, u);
}

#[test]
fn transported_square_solution_solves_the_original() {
    // the lifting problem of simplicial sets on the three-edge graph,
    // carried through the over-category transform and back
    let b2 = Rc::new(bn(2));
    let sigma = PastingDiagram::min_complete(b2.clone());
    let pi = PastingDiagram::maximal(b2.clone());
    let hc = sigma.hc(&pi).unwrap();
    let pi_cat = build_scat(&pi).unwrap();
    let hc_cat = build_scat(&hc).unwrap();
    // X = the full (s,t) mapping space, Y = a point, u = inclusion, p = !
    let x_sset = pi_cat.scat.hom("s", "t").clone();
    let y_sset = FiniteSSet::point("y");
    let u_map = HomMap {
        images: hc_cat
            .hom_data("s", "t")
            .unwrap()
            .chains
            .iter()
            .map(|lvl| {
                lvl.iter().map(|c| pi_cat.ref_of_chain("s", "t", c)).collect::<Vec<_>>()
            })
            .collect(),
    };
    let to_point = |sset: &FiniteSSet| HomMap {
        images: sset
            .names
            .iter()
            .enumerate()
            .map(|(d, lvl)| {
                lvl.iter()
                    .map(|_| SRef { cell: CellId { dim: 0, idx: 0 }, surj: Mono::new(0, vec![0; d + 1]) })
                    .collect()
            })
            .collect(),
    };
    let v_map = to_point(pi_cat.scat.hom("s", "t"));
    let p_map = to_point(&x_sset);
    let (ell_st, _) =
        solve_by_transport(&sigma, &pi, &x_sset, &y_sset, &u_map, &v_map, &p_map, true).unwrap();
    // the solution restricts to u on the partial-composite nerve
    let hc_data = hc_cat.hom_data("s", "t").unwrap();
    for (d, lvl) in hc_data.chains.iter().enumerate() {
        for (idx, chain) in lvl.iter().enumerate() {
            let pi_ref = pi_cat.ref_of_chain("s", "t", chain);
            let got = x_sset.act(&ell_st.images[pi_ref.cell.dim][pi_ref.cell.idx], &pi_ref.surj);
            assert_eq!(got, u_map.images[d][idx]);
        }
    }
    // and with unique fillers it is the identity on the whole mapping space
    for (d, lvl) in ell_st.images.iter().enumerate() {
        for (idx, r) in lvl.iter().enumerate() {
            assert_eq!(r, &SRef::nondeg(d, idx));
        }
    }
}

#[test]
fn free_two_cat_normal_form_is_order_invariant() {
    // a three-layer word with two independent layers gets the same normal
    // form regardless of the listed order
    let g = crate::catalog::bn_named(1, "x0", "x1", "a");
    let h = crate::catalog::bn_named(1, "x1", "x2", "b");
    let k = crate::catalog::bn_named(1, "x2", "x3", "c");
    let joined = crate::plane_graph::join(&crate::plane_graph::join(&g, &h).unwrap(), &k).unwrap();
    let target = TwoTarget::Free(FreeTwoCat::on_graph(&joined));
    let lam = tautological_labeling(&joined);
    let values = exhaustive_composite_oracle(&joined, &lam, &target).unwrap();
    assert_eq!(values.len(), 1, "all six orders collapse");
}
