//! Pasting evaluation in strict 2-categories and the recursive lift against
//! local fibrations: composite 2-cells of labeled diagrams, an exhaustive
//! order-independence oracle, filler oracles for quasi-category-enriched
//! targets, and extension finding for partially composed diagrams.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use crate::anodyne::{build_certificate, validate_certificate, ValidationReport};
use crate::error::{Error, Result};
use crate::nerve::{nerve, Chain, Nerve};
use crate::pasting::PastingDiagram;
use crate::plane_graph::{DiPath, EdgeId, FaceKey, Globular, VertexId};
use crate::scat::{HomKey, HomMap, PdCat, SFunctor, SCat};
use crate::sset::{CellId, FiniteSSet, Mono, SRef};

// ---------------------------------------------------------------------------
// strict 2-categories: free on a computad, or fully tabulated
// ---------------------------------------------------------------------------

/// A free strict 2-category on generating 1-cells and 2-cells whose
/// boundaries are words of 1-generators.
#[derive(Clone, Debug)]
pub struct FreeTwoCat {
    pub objects: Vec<String>,
    /// generator name -> (source object, target object)
    pub one_gens: BTreeMap<String, (String, String)>,
    /// generator name -> (dom word, cod word)
    pub two_gens: BTreeMap<String, (Vec<String>, Vec<String>)>,
}

impl FreeTwoCat {
    /// The tautological computad of a globular graph: its edges and faces.
    pub fn on_graph(g: &Globular) -> FreeTwoCat {
        let objects = g.graph.vertices().iter().map(|v| v.0.clone()).collect();
        let one_gens = g
            .graph
            .edge_ids()
            .map(|e| {
                let (s, t) = g.graph.ends(e);
                (e.0.clone(), (s.0.clone(), t.0.clone()))
            })
            .collect();
        let two_gens = g
            .interior_faces()
            .map(|f| {
                let name = format!(
                    "{}=>{}",
                    f.dom.iter().map(|e| e.to_string()).join("."),
                    f.cod.iter().map(|e| e.to_string()).join(".")
                );
                (
                    name,
                    (
                        f.dom.iter().map(|e| e.0.clone()).collect(),
                        f.cod.iter().map(|e| e.0.clone()).collect(),
                    ),
                )
            })
            .collect();
        FreeTwoCat { objects, one_gens, two_gens }
    }

    pub fn face_gen_name(f: &crate::plane_graph::GlobFace) -> String {
        format!(
            "{}=>{}",
            f.dom.iter().map(|e| e.to_string()).join("."),
            f.cod.iter().map(|e| e.to_string()).join(".")
        )
    }
}

/// A fully tabulated strict 2-category with one kind of table per axiom;
/// interchange is checked at load time.
#[derive(Clone, Debug)]
pub struct TabTwoCat {
    pub objects: Vec<String>,
    /// 1-cells per (source, target); index 0 at (a,a) is the identity
    pub ones: BTreeMap<(String, String), Vec<String>>,
    /// 1-cell composition (a,b,c): ones(a,b) x ones(b,c) -> ones(a,c)
    pub comp1: BTreeMap<(String, String, String), Vec<Vec<usize>>>,
    /// 2-cells per (source, target): (name, dom 1-cell, cod 1-cell)
    pub twos: BTreeMap<(String, String), Vec<(String, usize, usize)>>,
    /// vertical composition per (a,b), partial: defined when cod = dom
    pub vcomp: BTreeMap<(String, String), BTreeMap<(usize, usize), usize>>,
    /// horizontal composition per (a,b,c), total
    pub hcomp: BTreeMap<(String, String, String), Vec<Vec<usize>>>,
    /// identity 2-cell per 1-cell
    pub id2: BTreeMap<(String, String), Vec<usize>>,
    pub id1: BTreeMap<String, usize>,
}

impl TabTwoCat {
    pub fn one_compose(&self, a: &str, b: &str, c: &str, i: usize, j: usize) -> usize {
        self.comp1[&(a.to_string(), b.to_string(), c.to_string())][i][j]
    }

    pub fn two(&self, a: &str, b: &str, idx: usize) -> &(String, usize, usize) {
        &self.twos[&(a.to_string(), b.to_string())][idx]
    }

    /// Check the interchange law and the identity laws on the tables,
    /// exhaustively over composable quadruples.
    pub fn validate(&self) -> Result<()> {
        let vpairs = |key: &(String, String)| -> Vec<(usize, usize, usize)> {
            self.vcomp[key].iter().map(|(&(i, j), &v)| (i, j, v)).collect()
        };
        for a in &self.objects {
            for b in &self.objects {
                for c in &self.objects {
                    let vab = vpairs(&(a.clone(), b.clone()));
                    let vbc = vpairs(&(b.clone(), c.clone()));
                    let vac = &self.vcomp[&(a.clone(), c.clone())];
                    let h = &self.hcomp[&(a.clone(), b.clone(), c.clone())];
                    for &(i1, i2, v12) in &vab {
                        for &(j1, j2, w12) in &vbc {
                            if h[v12][w12] != vac[&(h[i1][j1], h[i2][j2])] {
                                return Err(Error::Invalid(format!(
                                    "interchange fails at ({a},{b},{c})"
                                )));
                            }
                        }
                    }
                }
            }
        }
        for ((a, b), twos) in &self.twos {
            let v = &self.vcomp[&(a.clone(), b.clone())];
            for (i, cell) in twos.iter().enumerate() {
                let idl = self.id2[&(a.clone(), b.clone())][cell.1];
                let idr = self.id2[&(a.clone(), b.clone())][cell.2];
                if v[&(idl, i)] != i || v[&(i, idr)] != i {
                    return Err(Error::Invalid(format!("vertical unit fails at ({a},{b})")));
                }
            }
        }
        Ok(())
    }
}

/// A single-object tabulated 2-category: 1-cells are powers of a generator
/// capped at `k`, 2-cells carry a residue that adds under both compositions.
pub fn sample_tab_twocat(k: usize, modulus: usize) -> TabTwoCat {
    let obj = "*".to_string();
    let sat = move |x: usize, y: usize| (x + y).min(k);
    let ones: Vec<String> = (0..=k).map(|i| format!("f{i}")).collect();
    let mut twos = Vec::new();
    let mut two_index = BTreeMap::new();
    for a in 0..=k {
        for b in 0..=k {
            for m in 0..modulus {
                two_index.insert((a, b, m), twos.len());
                twos.push((format!("({a}->{b};{m})"), a, b));
            }
        }
    }
    let comp1 = vec![(0..=k).map(|_| 0).collect::<Vec<_>>(); k + 1]
        .iter()
        .enumerate()
        .map(|(i, _)| (0..=k).map(|j| sat(i, j)).collect())
        .collect();
    let mut vcomp = BTreeMap::new();
    let mut hcomp = vec![vec![0; twos.len()]; twos.len()];
    for (&(a, b, m), &i) in &two_index {
        for (&(c, d, m2), &j) in &two_index {
            if b == c {
                vcomp.insert((i, j), two_index[&(a, d, (m + m2) % modulus)]);
            }
            hcomp[i][j] = two_index[&(sat(a, c), sat(b, d), (m + m2) % modulus)];
        }
    }
    let id2 = (0..=k).map(|a| two_index[&(a, a, 0)]).collect();
    let t = TabTwoCat {
        objects: vec![obj.clone()],
        ones: BTreeMap::from([((obj.clone(), obj.clone()), ones)]),
        comp1: BTreeMap::from([((obj.clone(), obj.clone(), obj.clone()), comp1)]),
        twos: BTreeMap::from([((obj.clone(), obj.clone()), twos)]),
        vcomp: BTreeMap::from([((obj.clone(), obj.clone()), vcomp)]),
        hcomp: BTreeMap::from([((obj.clone(), obj.clone(), obj.clone()), hcomp)]),
        id2: BTreeMap::from([((obj.clone(), obj.clone()), id2)]),
        id1: BTreeMap::from([(obj, 0)]),
    };
    t.validate().expect("sample tables satisfy the axioms");
    t
}

/// Either flavor of 2-category target for pasting evaluation.
#[derive(Clone, Debug)]
pub enum TwoTarget {
    Free(FreeTwoCat),
    Tab(TabTwoCat),
}

/// A labeling of a globular graph in a strict 2-category: objects, 1-cells
/// (generators or table entries), 2-cells for the interior faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoLabeling {
    pub obj: BTreeMap<VertexId, String>,
    /// free targets: generator name; tabulated: index into ones
    pub edge: BTreeMap<EdgeId, String>,
    /// free targets: generator name; tabulated: index into twos
    pub face: BTreeMap<FaceKey, String>,
}

// ---------------------------------------------------------------------------
// pasting words and their normal forms
// ---------------------------------------------------------------------------

/// One layer of a pasting word: a generator whiskered by 1-cell words.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Layer {
    pub left: Vec<String>,
    pub gen: String,
    pub right: Vec<String>,
}

/// A vertical composite of whiskered generators in a free 2-category, in
/// application order from the dom word.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PastingWord {
    pub dom: Vec<String>,
    pub cod: Vec<String>,
    pub layers: Vec<Layer>,
}

impl PastingWord {
    /// Commutation-aware normal form: repeatedly bubble the least movable
    /// layer to the front. Two adjacent layers commute when the later one
    /// acts entirely inside the whiskering of the earlier one.
    pub fn normal_form(&self, cat: &FreeTwoCat) -> PastingWord {
        let mut remaining = self.layers.clone();
        let mut out = Vec::new();
        let mut word = self.dom.clone();
        while !remaining.is_empty() {
            // layers movable to the front of the remainder, with their form
            // once moved
            let mut movable: Vec<(Layer, usize)> = Vec::new();
            'cand: for k in 0..remaining.len() {
                let mut layers = remaining.clone();
                let mut pos = k;
                while pos > 0 {
                    let w0 = word_after(cat, &word, &layers[..pos - 1]);
                    match swap_adjacent(cat, &w0, &layers[pos - 1], &layers[pos]) {
                        Some((first, second)) => {
                            layers[pos - 1] = first;
                            layers[pos] = second;
                            pos -= 1;
                        }
                        None => continue 'cand,
                    }
                }
                movable.push((layers[0].clone(), k));
            }
            let (front, k) = movable
                .into_iter()
                .min_by_key(|(l, _)| (l.gen.clone(), l.left.len()))
                .expect("the first layer is always movable");
            // rebuild the remainder with layer k bubbled out
            let mut layers = remaining.clone();
            let mut pos = k;
            while pos > 0 {
                let w0 = word_after(cat, &word, &layers[..pos - 1]);
                let (first, second) =
                    swap_adjacent(cat, &w0, &layers[pos - 1], &layers[pos]).unwrap();
                layers[pos - 1] = first;
                layers[pos] = second;
                pos -= 1;
            }
            debug_assert_eq!(layers[0], front);
            word = apply_layer(cat, &word, &layers[0]);
            out.push(layers.remove(0));
            remaining = layers;
        }
        PastingWord { dom: self.dom.clone(), cod: self.cod.clone(), layers: out }
    }
}

fn apply_layer(cat: &FreeTwoCat, word: &[String], layer: &Layer) -> Vec<String> {
    let (dom, cod) = &cat.two_gens[&layer.gen];
    let at = layer.left.len();
    assert_eq!(&word[..at], layer.left.as_slice(), "whisker mismatch");
    assert_eq!(&word[at..at + dom.len()], dom.as_slice(), "dom mismatch");
    let mut out = word[..at].to_vec();
    out.extend(cod.iter().cloned());
    out.extend(word[at + dom.len()..].iter().cloned());
    out
}

fn word_after(cat: &FreeTwoCat, dom: &[String], layers: &[Layer]) -> Vec<String> {
    let mut w = dom.to_vec();
    for l in layers {
        w = apply_layer(cat, &w, l);
    }
    w
}

/// Swap two consecutive layers when their supports are disjoint; returns the
/// pair in the new order (second first).
fn swap_adjacent(cat: &FreeTwoCat, w0: &[String], l1: &Layer, l2: &Layer) -> Option<(Layer, Layer)> {
    let (dom1, cod1) = &cat.two_gens[&l1.gen];
    let (dom2, _) = &cat.two_gens[&l2.gen];
    let a1 = l1.left.len();
    let a2 = l2.left.len();
    if a2 + dom2.len() <= a1 {
        // l2 acts to the left of l1
        let l2_new = Layer {
            left: w0[..a2].to_vec(),
            gen: l2.gen.clone(),
            right: w0[a2 + dom2.len()..].to_vec(),
        };
        let w1 = apply_layer(cat, w0, &l2_new);
        let shift = cat.two_gens[&l2.gen].1.len() as isize - dom2.len() as isize;
        let a1_new = (a1 as isize + shift) as usize;
        let l1_new = Layer {
            left: w1[..a1_new].to_vec(),
            gen: l1.gen.clone(),
            right: w1[a1_new + dom1.len()..].to_vec(),
        };
        Some((l2_new, l1_new))
    } else if a2 >= a1 + cod1.len() {
        // l2 acts to the right of l1's codomain
        let a2_new = a2 - cod1.len() + dom1.len();
        let l2_new = Layer {
            left: w0[..a2_new].to_vec(),
            gen: l2.gen.clone(),
            right: w0[a2_new + dom2.len()..].to_vec(),
        };
        let w1 = apply_layer(cat, w0, &l2_new);
        let l1_new = Layer {
            left: w1[..a1].to_vec(),
            gen: l1.gen.clone(),
            right: w1[a1 + dom1.len()..].to_vec(),
        };
        Some((l2_new, l1_new))
    } else {
        None
    }
}

/// A composite 2-cell: a pasting word in the free case or a table entry.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TwoCellValue {
    Free(PastingWord),
    Tab { src: String, dst: String, idx: usize },
}

// ---------------------------------------------------------------------------
// pasting evaluation
// ---------------------------------------------------------------------------

impl TwoLabeling {
    fn word_of_path(&self, p: &[EdgeId]) -> Vec<String> {
        p.iter().map(|e| self.edge[e].clone()).collect()
    }

    pub fn validate(&self, g: &Globular, target: &TwoTarget) -> Result<()> {
        match target {
            TwoTarget::Free(cat) => {
                for e in g.graph.edge_ids() {
                    let gen = self
                        .edge
                        .get(e)
                        .ok_or_else(|| Error::InvalidLabeling(format!("edge {e} unlabeled")))?;
                    let (a, b) = cat
                        .one_gens
                        .get(gen)
                        .ok_or_else(|| Error::InvalidLabeling(format!("unknown 1-cell {gen}")))?;
                    if a != &self.obj[g.graph.src(e)] || b != &self.obj[g.graph.dst(e)] {
                        return Err(Error::InvalidLabeling(format!("edge {e} endpoints")));
                    }
                }
                for f in g.interior_faces() {
                    let gen = self.face.get(&f.key()).ok_or_else(|| {
                        Error::InvalidLabeling(format!("face {:?} unlabeled", f.key()))
                    })?;
                    let (dom, cod) = cat
                        .two_gens
                        .get(gen)
                        .ok_or_else(|| Error::InvalidLabeling(format!("unknown 2-cell {gen}")))?;
                    if dom != &self.word_of_path(&f.dom) || cod != &self.word_of_path(&f.cod) {
                        return Err(Error::InvalidLabeling(format!(
                            "face {:?} boundary words",
                            f.key()
                        )));
                    }
                }
            }
            TwoTarget::Tab(cat) => {
                for e in g.graph.edge_ids() {
                    let (a, b) = (&self.obj[g.graph.src(e)], &self.obj[g.graph.dst(e)]);
                    let ones = &cat.ones[&(a.clone(), b.clone())];
                    if !ones.contains(&self.edge[e]) {
                        return Err(Error::InvalidLabeling(format!("edge {e} label")));
                    }
                }
                for f in g.interior_faces() {
                    let (a, b) = (&self.obj[&f.src], &self.obj[&f.tgt]);
                    let idx = self.tab_face_index(cat, &f.key(), a, b)?;
                    let (_, d, c) = cat.two(a, b, idx);
                    let want_d = self.tab_path_composite(cat, g, &f.dom);
                    let want_c = self.tab_path_composite(cat, g, &f.cod);
                    if *d != want_d || *c != want_c {
                        return Err(Error::InvalidLabeling(format!(
                            "face {:?} boundary cells",
                            f.key()
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn tab_face_index(&self, cat: &TabTwoCat, key: &FaceKey, a: &str, b: &str) -> Result<usize> {
        let name = &self.face[key];
        cat.twos[&(a.to_string(), b.to_string())]
            .iter()
            .position(|(n, _, _)| n == name)
            .ok_or_else(|| Error::InvalidLabeling(format!("unknown 2-cell {name}")))
    }

    fn tab_one_index(&self, cat: &TabTwoCat, e: &EdgeId, a: &str, b: &str) -> usize {
        cat.ones[&(a.to_string(), b.to_string())]
            .iter()
            .position(|n| n == &self.edge[e])
            .expect("validated edge label")
    }

    /// The composite 1-cell index of a path in a tabulated target.
    fn tab_path_composite(&self, cat: &TabTwoCat, g: &Globular, p: &[EdgeId]) -> usize {
        assert!(!p.is_empty());
        let mut acc = None;
        let mut from = self.obj[g.graph.src(&p[0])].clone();
        let start = from.clone();
        for e in p {
            let to = self.obj[g.graph.dst(e)].clone();
            let idx = self.tab_one_index(cat, e, &from, &to);
            acc = Some(match acc {
                None => idx,
                Some(prev) => cat.one_compose(&start, &from, &to, prev, idx),
            });
            from = to;
        }
        acc.unwrap()
    }
}

/// Evaluate the composite along a fixed maximal chain of the path order.
fn evaluate_chain(
    g: &Globular,
    nv: &Nerve,
    lam: &TwoLabeling,
    target: &TwoTarget,
    chain: &[usize],
) -> Result<TwoCellValue> {
    // decompose each cover step into its single witnessing face
    let mut layers: Vec<(Vec<EdgeId>, FaceKey, Vec<EdgeId>)> = Vec::new();
    for w in chain.windows(2) {
        let glob = nv.poset.minimal_witness(w[0], w[1]).unwrap();
        let sub = g.sub(&glob.edges)?;
        if sub.interior_face_count() != 1 {
            return Err(Error::Invalid(
                "maximal chains must step by single faces".into(),
            ));
        }
        let p = &nv.poset.paths[w[0]];
        let at = p.find_subpath(&glob.dom.edges).expect("witness dom on the path");
        layers.push((
            p.edges[..at].to_vec(),
            (glob.dom.edges.clone(), glob.cod.edges.clone()),
            p.edges[at + glob.dom.edges.len()..].to_vec(),
        ));
    }
    match target {
        TwoTarget::Free(cat) => {
            let word_layers: Vec<Layer> = layers
                .iter()
                .map(|(l, key, r)| Layer {
                    left: lam.word_of_path(l),
                    gen: lam.face[key].clone(),
                    right: lam.word_of_path(r),
                })
                .collect();
            let dom_word = lam.word_of_path(&nv.poset.paths[chain[0]].edges);
            let cod_word = lam.word_of_path(&nv.poset.paths[*chain.last().unwrap()].edges);
            let word = PastingWord { dom: dom_word, cod: cod_word, layers: word_layers };
            Ok(TwoCellValue::Free(word.normal_form(cat)))
        }
        TwoTarget::Tab(cat) => {
            let (src, dst) = (&lam.obj[&g.source], &lam.obj[&g.target]);
            let mut acc: Option<usize> = None;
            for (left, key, right) in &layers {
                let face = g
                    .interior_faces()
                    .find(|f| &f.key() == key)
                    .expect("witness is an interior face of the graph");
                let (a, b) = (&lam.obj[&face.src], &lam.obj[&face.tgt]);
                let mut cell = lam.tab_face_index(cat, key, a, b)?;
                let mut cs = a.clone();
                let ct = b.clone();
                if !left.is_empty() {
                    let from = &lam.obj[g.graph.src(&left[0])];
                    let lcell = lam.tab_path_composite(cat, g, left);
                    let lid = cat.id2[&(from.clone(), cs.clone())][lcell];
                    // whisker on the left
                    let h = &cat.hcomp[&(from.clone(), cs.clone(), ct.clone())];
                    cell = h[lid][cell];
                    cs = from.clone();
                }
                if !right.is_empty() {
                    let to = &lam.obj[g.graph.dst(right.last().unwrap())];
                    let rcell = lam.tab_path_composite(cat, g, right);
                    let rid = cat.id2[&(ct.clone(), to.clone())][rcell];
                    let h = &cat.hcomp[&(cs.clone(), ct.clone(), to.clone())];
                    cell = h[cell][rid];
                }
                acc = Some(match acc {
                    None => cell,
                    Some(prev) => cat.vcomp[&(src.clone(), dst.clone())][&(prev, cell)],
                });
            }
            let idx = match acc {
                Some(idx) => idx,
                None => {
                    // no faces: the identity on the composite 1-cell
                    let one = lam.tab_path_composite(cat, g, &g.dom().edges);
                    cat.id2[&(src.clone(), dst.clone())][one]
                }
            };
            Ok(TwoCellValue::Tab { src: src.clone(), dst: dst.clone(), idx })
        }
    }
}

/// The composite 2-cell of a labeled diagram, evaluated along the first
/// maximal chain of the path order.
pub fn paste_2cat(g: &Globular, lam: &TwoLabeling, target: &TwoTarget) -> Result<TwoCellValue> {
    lam.validate(g, target)?;
    let nv = nerve(g)?;
    let chains = nv.poset.maximal_chains();
    let chain = chains.first().ok_or_else(|| Error::Invalid("no st-paths".into()))?;
    evaluate_chain(g, &nv, lam, target, chain)
}

/// Evaluate the composite along every maximal chain and collect the distinct
/// results. Order-independence of pasting means the set is a singleton.
pub fn exhaustive_composite_oracle(
    g: &Globular,
    lam: &TwoLabeling,
    target: &TwoTarget,
) -> Result<BTreeSet<TwoCellValue>> {
    lam.validate(g, target)?;
    let nv = nerve(g)?;
    let mut out = BTreeSet::new();
    for chain in nv.poset.maximal_chains() {
        out.insert(evaluate_chain(g, &nv, lam, target, &chain)?);
    }
    Ok(out)
}

/// All labelings of a graph in a 2-category target.
pub fn enumerate_two_labelings(g: &Globular, target: &TwoTarget) -> Vec<TwoLabeling> {
    let verts: Vec<VertexId> = g.graph.vertices().to_vec();
    let objects: Vec<String> = match target {
        TwoTarget::Free(c) => c.objects.clone(),
        TwoTarget::Tab(c) => c.objects.clone(),
    };
    let mut out = Vec::new();
    for pick in verts.iter().map(|_| 0..objects.len()).multi_cartesian_product() {
        let obj: BTreeMap<VertexId, String> = verts
            .iter()
            .zip(pick.iter())
            .map(|(v, &i)| (v.clone(), objects[i].clone()))
            .collect();
        // candidate labels per edge
        let edges: Vec<EdgeId> = g.graph.edge_ids().cloned().collect();
        let edge_cands: Option<Vec<Vec<String>>> = edges
            .iter()
            .map(|e| {
                let (a, b) = (&obj[g.graph.src(e)], &obj[g.graph.dst(e)]);
                let cands: Vec<String> = match target {
                    TwoTarget::Free(c) => c
                        .one_gens
                        .iter()
                        .filter(|(_, (s, t))| s == a && t == b)
                        .map(|(n, _)| n.clone())
                        .collect(),
                    TwoTarget::Tab(c) => c
                        .ones
                        .get(&(a.clone(), b.clone()))
                        .map(|v| v.clone())
                        .unwrap_or_default(),
                };
                if cands.is_empty() {
                    None
                } else {
                    Some(cands)
                }
            })
            .collect();
        let Some(edge_cands) = edge_cands else { continue };
        for epick in edge_cands.iter().map(|c| 0..c.len()).multi_cartesian_product() {
            let edge: BTreeMap<EdgeId, String> = edges
                .iter()
                .enumerate()
                .map(|(i, e)| (e.clone(), edge_cands[i][epick[i]].clone()))
                .collect();
            let partial = TwoLabeling { obj: obj.clone(), edge, face: BTreeMap::new() };
            let faces: Vec<&crate::plane_graph::GlobFace> = g.interior_faces().collect();
            let face_cands: Option<Vec<Vec<String>>> = faces
                .iter()
                .map(|f| {
                    let cands: Vec<String> = match target {
                        TwoTarget::Free(c) => {
                            let dom = partial.word_of_path(&f.dom);
                            let cod = partial.word_of_path(&f.cod);
                            c.two_gens
                                .iter()
                                .filter(|(_, (d, cc))| d == &dom && cc == &cod)
                                .map(|(n, _)| n.clone())
                                .collect()
                        }
                        TwoTarget::Tab(c) => {
                            let (a, b) = (&obj[&f.src], &obj[&f.tgt]);
                            let want_d = partial.tab_path_composite(c, g, &f.dom);
                            let want_c = partial.tab_path_composite(c, g, &f.cod);
                            c.twos[&(a.clone(), b.clone())]
                                .iter()
                                .filter(|(_, d, cc)| *d == want_d && *cc == want_c)
                                .map(|(n, _, _)| n.clone())
                                .collect()
                        }
                    };
                    if cands.is_empty() {
                        None
                    } else {
                        Some(cands)
                    }
                })
                .collect();
            let Some(face_cands) = face_cands else { continue };
            if faces.is_empty() {
                out.push(partial.clone());
                continue;
            }
            for fpick in face_cands.iter().map(|c| 0..c.len()).multi_cartesian_product() {
                let face: BTreeMap<FaceKey, String> = faces
                    .iter()
                    .enumerate()
                    .map(|(i, f)| (f.key(), face_cands[i][fpick[i]].clone()))
                    .collect();
                out.push(TwoLabeling { obj: obj.clone(), edge: partial.edge.clone(), face });
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// filler oracles and the recursive lift
// ---------------------------------------------------------------------------

/// Answers lifting problems in the mapping spaces of a target category:
/// given an inner horn and the required image downstairs, produce a filler.
pub trait FillerOracle {
    fn fill(
        &self,
        hom: &HomKey,
        dim: usize,
        horn: usize,
        faces: &[Option<SRef>],
        below: Option<&SRef>,
    ) -> Result<SRef>;
    fn unique(&self) -> bool;
}

/// Brute-force oracle over a finite target: scans all simplices of the hom,
/// optionally checking a fibration constraint and uniqueness.
pub struct ExhaustiveOracle<'a> {
    pub target: &'a SCat,
    /// the fibration and its codomain, when the constraint is nontrivial
    pub fibration: Option<(&'a SFunctor, &'a SCat)>,
    pub expect_unique: bool,
    /// reverse the candidate scan, for tie-breaking permutation tests
    pub reversed: bool,
}

impl<'a> FillerOracle for ExhaustiveOracle<'a> {
    fn fill(
        &self,
        hom: &HomKey,
        dim: usize,
        horn: usize,
        faces: &[Option<SRef>],
        below: Option<&SRef>,
    ) -> Result<SRef> {
        let hs = self.target.hom(&hom.0, &hom.1);
        let mut candidates = hs.all_simplices(dim);
        if self.reversed {
            candidates.reverse();
        }
        let mut found = Vec::new();
        'cand: for cand in candidates {
            for (j, want) in faces.iter().enumerate() {
                if j == horn {
                    continue;
                }
                let Some(want) = want else { continue };
                if &hs.act(&cand, &Mono::face(dim, j)) != want {
                    continue 'cand;
                }
            }
            if let (Some((p, a)), Some(below)) = (&self.fibration, below) {
                if &p.apply(a, &hom.0, &hom.1, &cand) != below {
                    continue 'cand;
                }
            }
            found.push(cand);
            if !self.expect_unique {
                break;
            }
        }
        if self.expect_unique && found.len() > 1 {
            return Err(Error::OracleFailure(format!(
                "{} fillers for a horn in hom({},{})",
                found.len(),
                hom.0,
                hom.1
            )));
        }
        found.into_iter().next().ok_or_else(|| {
            Error::OracleFailure(format!("no filler in hom({},{}) at dim {dim}", hom.0, hom.1))
        })
    }

    fn unique(&self) -> bool {
        self.expect_unique
    }
}

/// Solve the lifting problem of an inclusion of complete pasting diagrams
/// against a local fibration, by recursion over the hom subgraphs: lifts are
/// glued from already-built smaller lifts and extended along an inner-horn
/// certificate with oracle fillers.
#[allow(clippy::too_many_arguments)]
pub fn recursive_lift(
    sigma_cat: &PdCat,
    pi_cat: &PdCat,
    u: &SFunctor,
    b: &SCat,
    p: &SFunctor,
    a: &SCat,
    v: &SFunctor,
    oracle: &dyn FillerOracle,
) -> Result<SFunctor> {
    // the square must commute on the given data
    let incl = SFunctor::inclusion(sigma_cat, pi_cat);
    let pu = u.then(p, a);
    let v_restricted = incl.then(v, a);
    if pu != v_restricted {
        return Err(Error::Incompatible("p∘u differs from v on the inclusion".into()));
    }
    let g = &pi_cat.diagram.graph;
    let obj = u.obj.clone();
    let mut images: BTreeMap<HomKey, Vec<Vec<SRef>>> = BTreeMap::new();
    // identity and empty homs first
    for (key, hom) in &pi_cat.scat.homs {
        if key.0 == key.1 {
            images.insert(key.clone(), vec![vec![b.identity(&obj[&key.0]).clone()]]);
        } else if hom.is_empty() {
            images.insert(key.clone(), vec![]);
        }
    }
    // pairs ordered by the containment of their path subgraphs
    let mut pairs: Vec<(HomKey, usize)> = Vec::new();
    for x in g.graph.vertices() {
        for z in g.graph.vertices() {
            if x == z {
                continue;
            }
            if let Some(set) = g.xy_edge_set(x, z) {
                if !set.is_empty() {
                    pairs.push(((x.0.clone(), z.0.clone()), set.len()));
                }
            }
        }
    }
    pairs.sort_by(|(k1, n1), (k2, n2)| n1.cmp(n2).then(k1.cmp(k2)));

    for (key, _) in &pairs {
        let data = pi_cat.hom_data(&key.0, &key.1).expect("nonempty hom");
        let hom = pi_cat.scat.hom(&key.0, &key.1);
        let (bx, bz) = (obj[&key.0].clone(), obj[&key.1].clone());
        let mut local: Vec<Vec<Option<SRef>>> =
            hom.names.iter().map(|lvl| vec![None; lvl.len()]).collect();
        // seed with u on the included part
        if let Some(sigma_data) = sigma_cat.hom_data(&key.0, &key.1) {
            for (d, lvl) in sigma_data.chains.iter().enumerate() {
                for (idx, chain) in lvl.iter().enumerate() {
                    let pi_ref = pi_cat.ref_of_chain(&key.0, &key.1, chain);
                    let val = u.apply(b, &key.0, &key.1, &SRef::nondeg(d, idx));
                    debug_assert!(pi_ref.is_nondegenerate());
                    local[pi_ref.cell.dim][pi_ref.cell.idx] = Some(val);
                }
            }
        }
        // glue the部分 composites through every interior vertex of the hom
        let hom_graph = &data.graph;
        for y in hom_graph.graph.vertices() {
            if y == &hom_graph.source || y == &hom_graph.target {
                continue;
            }
            let left = match hom_graph.xy_edge_set(&hom_graph.source, y) {
                Some(s) if !s.is_empty() => s,
                _ => continue,
            };
            let right = match hom_graph.xy_edge_set(y, &hom_graph.target) {
                Some(s) if !s.is_empty() => s,
                _ => continue,
            };
            let left_pd = pi_cat.diagram.restrict(&left)?;
            let right_pd = pi_cat.diagram.restrict(&right)?;
            let mut joined_edges = left.clone();
            joined_edges.extend(right.iter().cloned());
            let joined =
                PastingDiagram::join_pd(&left_pd, &right_pd, std::rc::Rc::new(hom_graph.sub(&joined_edges)?))?;
            let (ky, by) = (y.0.clone(), obj[&y.0].clone());
            for (d, lvl) in data.chains.iter().enumerate() {
                for (idx, chain) in lvl.iter().enumerate() {
                    // the chain belongs to the glued piece when its carrier does
                    let mut carrier = crate::plane_graph::EdgeSet::new();
                    for &i in chain {
                        carrier.extend(data.nerve.poset.paths[i].edge_set());
                    }
                    if !joined.contains(&carrier) {
                        continue;
                    }
                    // split the chain at y and compose the smaller lifts
                    let (c1, c2) = split_at(data, chain, y);
                    let r1 = lookup(pi_cat, &images, &key.0, &ky, &c1);
                    let r2 = lookup(pi_cat, &images, &ky, &key.1, &c2);
                    let val = b.compose(&bx, &by, &bz, &r1, &r2);
                    match &local[d][idx] {
                        Some(existing) if existing != &val => {
                            return Err(Error::Incompatible(format!(
                                "glued composites disagree at hom({},{}) via {ky}",
                                key.0, key.1
                            )));
                        }
                        _ => local[d][idx] = Some(val),
                    }
                }
            }
        }
        // the seeded part is the nerve of the formal partial composite
        let sigma_xy = sigma_cat.diagram.restrict(&hom_graph.edge_set())?;
        let pi_xy = pi_cat.diagram.restrict(&hom_graph.edge_set())?;
        let hc = sigma_xy.hc(&pi_xy)?;
        let hc_subset = hc.nerve_subset(&data.nerve);
        for (d, lvl) in data.chains.iter().enumerate() {
            for (idx, chain) in lvl.iter().enumerate() {
                assert_eq!(
                    hc_subset.contains(chain),
                    local[d][idx].is_some(),
                    "seeded domain must match the formal partial composite at hom({},{})",
                    key.0,
                    key.1
                );
            }
        }
        // extend along the certificate
        let cert = build_certificate(&hc, &pi_xy)?;
        for step in &cert.steps {
            let filler_ref = pi_cat.ref_of_chain(&key.0, &key.1, &step.filler);
            let n = step.dim;
            let mut faces: Vec<Option<SRef>> = vec![None; n + 1];
            for (j, face) in faces.iter_mut().enumerate() {
                if j == step.horn {
                    continue;
                }
                let mut f = step.filler.clone();
                f.remove(j);
                let fr = pi_cat.ref_of_chain(&key.0, &key.1, &f);
                *face = Some(
                    local[fr.cell.dim][fr.cell.idx]
                        .clone()
                        .ok_or_else(|| Error::OracleFailure("horn face not yet lifted".into()))?,
                );
            }
            let below = v.apply(a, &key.0, &key.1, &filler_ref);
            let fill = oracle.fill(&(bx.clone(), bz.clone()), n, step.horn, &faces, Some(&below))?;
            local[filler_ref.cell.dim][filler_ref.cell.idx] = Some(fill.clone());
            let mut missing = step.filler.clone();
            missing.remove(step.horn);
            let mr = pi_cat.ref_of_chain(&key.0, &key.1, &missing);
            let mval = b.hom(&bx, &bz).act(&fill, &Mono::face(n, step.horn));
            local[mr.cell.dim][mr.cell.idx] = Some(mval);
        }
        let complete: Option<Vec<Vec<SRef>>> = local
            .into_iter()
            .map(|lvl| lvl.into_iter().collect::<Option<Vec<_>>>())
            .collect();
        images.insert(
            key.clone(),
            complete.ok_or_else(|| Error::OracleFailure("hom not fully lifted".into()))?,
        );
    }
    let ell = SFunctor { obj, images };
    ell.validate(&pi_cat.scat, b)?;
    // the lift restricts to u and lies over v
    let back = incl.then(&ell, b);
    if &back != u {
        return Err(Error::Incompatible("lift does not restrict to the given functor".into()));
    }
    let over = ell.then(p, a);
    if over != *v {
        return Err(Error::Incompatible("lift does not lie over the base functor".into()));
    }
    Ok(ell)
}

fn split_at(
    data: &crate::scat::HomData,
    chain: &Chain,
    y: &VertexId,
) -> (Vec<DiPath>, Vec<DiPath>) {
    let mut left = Vec::new();
    let mut right = Vec::new();
    for &i in chain {
        let p = &data.nerve.poset.paths[i];
        let cut = p.verts.iter().position(|v| v == y).expect("path passes the glue vertex");
        left.push(DiPath { verts: p.verts[..=cut].to_vec(), edges: p.edges[..cut].to_vec() });
        right.push(DiPath { verts: p.verts[cut..].to_vec(), edges: p.edges[cut..].to_vec() });
    }
    (left, right)
}

/// Look up the image of a chain given by explicit paths in an already-lifted
/// hom.
fn lookup(
    pi_cat: &PdCat,
    images: &BTreeMap<HomKey, Vec<Vec<SRef>>>,
    x: &str,
    y: &str,
    paths: &[DiPath],
) -> SRef {
    let data = pi_cat.hom_data(x, y).expect("hom exists");
    let chain: Chain = paths
        .iter()
        .map(|p| data.nerve.poset.index_of(p).expect("split path is a hom path"))
        .collect();
    let r = pi_cat.ref_of_chain(x, y, &chain);
    let img = images[&(x.to_string(), y.to_string())][r.cell.dim][r.cell.idx].clone();
    // re-degenerate
    SRef { cell: img.cell, surj: img.surj.compose(&r.surj) }
}

/// An extension of a labeling-induced functor to the category of the maximal
/// diagram.
pub struct Extension {
    pub functor: SFunctor,
}

/// Find an extension of a labeling to the fully composed category by lifting
/// against the terminal category.
pub fn find_extension(
    g: &Globular,
    lam: &crate::scat::Labeling,
    target: &SCat,
    oracle: &dyn FillerOracle,
) -> Result<Extension> {
    let sigma = PastingDiagram::min_complete(std::rc::Rc::new(g.clone()));
    let pi = PastingDiagram::maximal(sigma.graph.clone());
    let sigma_cat = crate::scat::build_scat(&sigma)?;
    let pi_cat = crate::scat::build_scat(&pi)?;
    let u = crate::scat::labeling_to_functor(lam, &sigma_cat, target)?;
    let terminal = SCat::terminal();
    let bang_b = bang(target, &terminal);
    let bang_pi = bang(&pi_cat.scat, &terminal);
    let ell = recursive_lift(
        &sigma_cat,
        &pi_cat,
        &u,
        target,
        &bang_b,
        &terminal,
        &bang_pi,
        oracle,
    )?;
    Ok(Extension { functor: ell })
}

/// The unique functor to the terminal category.
pub fn bang(dom: &SCat, terminal: &SCat) -> SFunctor {
    let obj = dom.objects.iter().map(|o| (o.clone(), "*".to_string())).collect();
    let id = terminal.identity("*").clone();
    let images = dom
        .homs
        .iter()
        .map(|(k, hom)| {
            let per_dim: Vec<Vec<SRef>> = hom
                .names
                .iter()
                .enumerate()
                .map(|(d, lvl)| {
                    lvl.iter()
                        .map(|_| SRef { cell: id.cell, surj: Mono::new(0, vec![0; d + 1]) })
                        .collect()
                })
                .collect();
            (k.clone(), per_dim)
        })
        .collect();
    SFunctor { obj, images }
}

/// Transport a lifting problem of simplicial sets into one of simplicial
/// categories through the over-category construction, solve it there, and
/// extract the simplicial-set solution from the (s,t) component.
pub struct TransportedSquare {
    pub hc_cat: PdCat,
    pub pi_cat: PdCat,
    pub over_x: SCat,
    pub over_y: SCat,
}

pub fn solve_by_transport(
    sigma: &PastingDiagram,
    pi: &PastingDiagram,
    x_sset: &FiniteSSet,
    y_sset: &FiniteSSet,
    u_map: &HomMap,
    v_map: &HomMap,
    p_map: &HomMap,
    oracle_unique: bool,
) -> Result<(HomMap, TransportedSquare)> {
    let hc = sigma.hc(pi)?;
    let hc_cat = crate::scat::build_scat(&hc)?;
    let pi_cat = crate::scat::build_scat(pi)?;
    let over_x = crate::scat::over_u(&hc_cat, x_sset, u_map);
    // p u: the composite map into Y
    let pu = HomMap {
        images: u_map
            .images
            .iter()
            .map(|lvl| lvl.iter().map(|r| p_map.apply(y_sset, r)).collect())
            .collect(),
    };
    let over_y = crate::scat::over_u(&hc_cat, y_sset, &pu);
    let g = &pi.graph;
    let (s, t) = (g.source.0.clone(), g.target.0.clone());
    // the square of categories: C[Σ hc Π] -> over_x -> over_y equals
    // C[Σ hc Π] -> C[Π] -> over_y on every hom
    let u_functor = over_functor(&hc_cat, &over_x, u_map, &s, &t);
    let p_functor = over_p_functor(&hc_cat, x_sset, y_sset, p_map, &s, &t);
    let v_functor = v_over_w(&hc_cat, &pi_cat, &over_y, v_map, &s, &t)?;
    let incl = SFunctor::inclusion(&hc_cat, &pi_cat);
    let lhs = u_functor.then(&p_functor, &over_y);
    let rhs = incl.then(&v_functor, &over_y);
    if lhs != rhs {
        return Err(Error::Incompatible("transported square does not commute".into()));
    }
    // lift in categories
    let oracle = ExhaustiveOracle {
        target: &over_x,
        fibration: Some((&p_functor, &over_y)),
        expect_unique: oracle_unique,
        reversed: false,
    };
    let ell = recursive_lift(
        &hc_cat, &pi_cat, &u_functor, &over_x, &p_functor, &over_y, &v_functor, &oracle,
    )?;
    // extract the (s,t) component as a map of simplicial sets
    let data = pi_cat.hom_data(&s, &t).expect("nontrivial graph");
    let images: Vec<Vec<SRef>> = data
        .chains
        .iter()
        .enumerate()
        .map(|(d, lvl)| {
            (0..lvl.len())
                .map(|idx| ell.apply(&over_x, &s, &t, &SRef::nondeg(d, idx)))
                .collect()
        })
        .collect();
    Ok((HomMap { images }, TransportedSquare { hc_cat, pi_cat, over_x, over_y }))
}

/// The canonical functor C[Σ] -> C[Σ]_{/u}: identity except on the (s,t)
/// component, where it is u.
fn over_functor(cat: &PdCat, over: &SCat, u: &HomMap, s: &str, t: &str) -> SFunctor {
    let mut images = BTreeMap::new();
    for (key, hom) in &cat.scat.homs {
        let per_dim: Vec<Vec<SRef>> = hom
            .names
            .iter()
            .enumerate()
            .map(|(d, lvl)| {
                (0..lvl.len())
                    .map(|idx| {
                        if key.0 == s && key.1 == t {
                            u.images[d][idx].clone()
                        } else {
                            SRef::nondeg(d, idx)
                        }
                    })
                    .collect()
            })
            .collect();
        images.insert(key.clone(), per_dim);
    }
    let _ = over;
    SFunctor {
        obj: cat.scat.objects.iter().map(|o| (o.clone(), o.clone())).collect(),
        images,
    }
}

/// The functor C[Σ]_{/u} -> C[Σ]_{/pu}: identity except on (s,t), where it
/// is the fibration.
fn over_p_functor(
    cat: &PdCat,
    x_sset: &FiniteSSet,
    y_sset: &FiniteSSet,
    p: &HomMap,
    s: &str,
    t: &str,
) -> SFunctor {
    let _ = y_sset;
    let mut images = BTreeMap::new();
    for (key, hom) in &cat.scat.homs {
        let shape = if key.0 == s && key.1 == t { x_sset } else { hom };
        let per_dim: Vec<Vec<SRef>> = shape
            .names
            .iter()
            .enumerate()
            .map(|(d, lvl)| {
                (0..lvl.len())
                    .map(|idx| {
                        if key.0 == s && key.1 == t {
                            p.images[d][idx].clone()
                        } else {
                            SRef::nondeg(d, idx)
                        }
                    })
                    .collect()
            })
            .collect();
        images.insert(key.clone(), per_dim);
    }
    SFunctor {
        obj: cat.scat.objects.iter().map(|o| (o.clone(), o.clone())).collect(),
        images,
    }
}

/// The comparison functor C[Π] -> C[Σ hc Π]_{/w}: the identity on proper
/// restrictions (they agree as diagrams) and the given map on (s,t).
pub fn v_over_w(
    hc_cat: &PdCat,
    pi_cat: &PdCat,
    over: &SCat,
    v: &HomMap,
    s: &str,
    t: &str,
) -> Result<SFunctor> {
    let mut images = BTreeMap::new();
    for (key, hom) in &pi_cat.scat.homs {
        if !(key.0 == s && key.1 == t) {
            // the homs agree cell-for-cell away from (s,t)
            let other = hc_cat.scat.hom(&key.0, &key.1);
            if other.names != hom.names {
                return Err(Error::BadInclusion(format!(
                    "restricted homs differ at ({},{})",
                    key.0, key.1
                )));
            }
        }
        let per_dim: Vec<Vec<SRef>> = hom
            .names
            .iter()
            .enumerate()
            .map(|(d, lvl)| {
                (0..lvl.len())
                    .map(|idx| {
                        if key.0 == s && key.1 == t {
                            v.images[d][idx].clone()
                        } else {
                            SRef::nondeg(d, idx)
                        }
                    })
                    .collect()
            })
            .collect();
        images.insert(key.clone(), per_dim);
    }
    let _ = over;
    Ok(SFunctor {
        obj: pi_cat.scat.objects.iter().map(|o| (o.clone(), o.clone())).collect(),
        images,
    })
}

/// Build extensions and check them against certificates end to end: used by
/// the acceptance suite for the composite catalog checks.
pub fn certificate_roundtrip(sigma: &PastingDiagram, pi: &PastingDiagram) -> Result<usize> {
    let cert = build_certificate(sigma, pi)?;
    match validate_certificate(sigma, pi, &cert)? {
        ValidationReport::Valid => Ok(cert.steps.len()),
        bad => Err(Error::Invalid(format!("certificate failed validation: {bad:?}"))),
    }
}

// ---------------------------------------------------------------------------
// nerve enrichment of a tabulated 2-category
// ---------------------------------------------------------------------------

/// A hom chain in the nerve of a hom category: a start 1-cell and the
/// composable non-identity 2-cells out of it.
type TabChain = (usize, Vec<usize>);

/// Apply the nerve to every hom category of a tabulated 2-category, stored
/// up to the given simplicial dimension. Horizontal composition becomes the
/// levelwise table composition.
pub fn tab_nerve_scat(cat: &TabTwoCat, dim: usize) -> SCat {
    let objects = cat.objects.clone();
    let mut homs = BTreeMap::new();
    let mut chain_data: BTreeMap<HomKey, Vec<Vec<TabChain>>> = BTreeMap::new();
    for a in &objects {
        for b in &objects {
            let key = (a.clone(), b.clone());
            let ones = &cat.ones[&key];
            let twos = &cat.twos[&key];
            let ids = &cat.id2[&key];
            let mut levels: Vec<Vec<TabChain>> =
                vec![(0..ones.len()).map(|i| (i, vec![])).collect()];
            for d in 1..=dim {
                let mut lvl = Vec::new();
                for (start, arrows) in &levels[d - 1] {
                    let from = arrows.last().map(|&i| twos[i].2).unwrap_or(*start);
                    for (i, (_, dom2, _)) in twos.iter().enumerate() {
                        if *dom2 == from && ids[*dom2] != i {
                            let mut ext = arrows.clone();
                            ext.push(i);
                            lvl.push((*start, ext));
                        }
                    }
                }
                lvl.sort();
                levels.push(lvl);
            }
            let names: Vec<Vec<String>> = levels
                .iter()
                .map(|lvl| {
                    lvl.iter()
                        .map(|(s, arrows)| {
                            if arrows.is_empty() {
                                ones[*s].clone()
                            } else {
                                arrows.iter().map(|&i| twos[i].0.clone()).join(" . ")
                            }
                        })
                        .collect()
                })
                .collect();
            let face_ref = |lvl: &Vec<Vec<TabChain>>, chain: &TabChain| -> SRef {
                // EZ form: the chain with identity arrows removed
                let (start, arrows) = chain;
                let kept: Vec<usize> = arrows
                    .iter()
                    .copied()
                    .filter(|&i| cat.id2[&key][twos[i].1] != i)
                    .collect();
                let mut vals = vec![0usize];
                let mut level = 0usize;
                for &i in arrows.iter() {
                    if cat.id2[&key][twos[i].1] != i {
                        level += 1;
                    }
                    vals.push(level);
                }
                let nd = (*start, kept);
                let d = nd.1.len();
                let idx = lvl[d].binary_search(&nd).expect("normalized chain exists");
                SRef { cell: CellId { dim: d, idx }, surj: Mono::new(d, vals) }
            };
            let mut faces: Vec<Vec<Vec<SRef>>> = Vec::new();
            for (d, lvl) in levels.iter().enumerate() {
                let mut per_cell = Vec::new();
                for (start, arrows) in lvl {
                    let mut fs = Vec::new();
                    if d > 0 {
                        for i in 0..=d {
                            let chain: TabChain = if i == 0 {
                                (twos[arrows[0]].2, arrows[1..].to_vec())
                            } else if i == d {
                                (*start, arrows[..d - 1].to_vec())
                            } else {
                                let merged =
                                    cat.vcomp[&key][&(arrows[i - 1], arrows[i])];
                                let mut rest = arrows[..i - 1].to_vec();
                                rest.push(merged);
                                rest.extend(arrows[i + 1..].iter().copied());
                                (*start, rest)
                            };
                            fs.push(face_ref(&levels, &chain));
                        }
                    }
                    per_cell.push(fs);
                }
                faces.push(per_cell);
            }
            homs.insert(key.clone(), FiniteSSet { names, faces, dim_bound: dim });
            chain_data.insert(key, levels);
        }
    }
    let ids = objects
        .iter()
        .map(|o| {
            let key = (o.clone(), o.clone());
            let idx = chain_data[&key][0]
                .iter()
                .position(|(s, _)| *s == cat.id1[o])
                .unwrap();
            (o.clone(), SRef::nondeg(0, idx))
        })
        .collect();
    let mut scat = SCat { objects: objects.clone(), homs, comp: BTreeMap::new(), ids, dim };
    // horizontal composition, tabulated on jointly nondegenerate pairs
    let mut comp = BTreeMap::new();
    for a in &objects {
        for b in &objects {
            for c in &objects {
                let (kab, kbc, kac) =
                    ((a.clone(), b.clone()), (b.clone(), c.clone()), (a.clone(), c.clone()));
                let h = &cat.hcomp[&(a.clone(), b.clone(), c.clone())];
                let mut table = BTreeMap::new();
                let lv1 = &chain_data[&kab];
                let lv2 = &chain_data[&kbc];
                for p in 0..lv1.len() {
                    for q in 0..lv2.len() {
                        for n in p.max(q)..=(p + q).min(dim) {
                            for s1 in Mono::surjections(n, p) {
                                for s2 in Mono::surjections(n, q) {
                                    let f1 = s1.flats();
                                    if s2.flats().iter().any(|x| f1.contains(x)) {
                                        continue;
                                    }
                                    for (i1, ch1) in lv1[p].iter().enumerate() {
                                        for (i2, ch2) in lv2[q].iter().enumerate() {
                                            // expand to n arrows with identities
                                            let e1 = expand(cat, &kab, ch1, &s1);
                                            let e2 = expand(cat, &kbc, ch2, &s2);
                                            let start =
                                                cat.one_compose(a, b, c, ch1.0, ch2.0);
                                            let arrows: Vec<usize> = e1
                                                .iter()
                                                .zip(e2.iter())
                                                .map(|(&x, &y)| h[x][y])
                                                .collect();
                                            let v = normalize_tab_chain(
                                                cat,
                                                &kac,
                                                &chain_data[&kac],
                                                start,
                                                &arrows,
                                            );
                                            let r1 = SRef {
                                                cell: CellId { dim: p, idx: i1 },
                                                surj: s1.clone(),
                                            };
                                            let r2 = SRef {
                                                cell: CellId { dim: q, idx: i2 },
                                                surj: s2.clone(),
                                            };
                                            table.insert((r1, r2), v);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                comp.insert((a.clone(), b.clone(), c.clone()), table);
            }
        }
    }
    scat.comp = comp;
    scat
}

/// The morphism list of a possibly-degenerate chain reference: identities at
/// the flat positions.
fn expand(cat: &TabTwoCat, key: &HomKey, chain: &TabChain, surj: &Mono) -> Vec<usize> {
    let (start, arrows) = chain;
    let mut out = Vec::new();
    let mut level = 0usize;
    for i in 0..surj.dom() {
        if surj.vals[i] == surj.vals[i + 1] {
            let at = if level == 0 { *start } else { cat.twos[key][arrows[level - 1]].2 };
            out.push(cat.id2[key][at]);
        } else {
            out.push(arrows[level]);
            level += 1;
        }
    }
    out
}

fn normalize_tab_chain(
    cat: &TabTwoCat,
    key: &HomKey,
    levels: &[Vec<TabChain>],
    start: usize,
    arrows: &[usize],
) -> SRef {
    let kept: Vec<usize> = arrows
        .iter()
        .copied()
        .filter(|&i| cat.id2[key][cat.twos[key][i].1] != i)
        .collect();
    let mut vals = vec![0usize];
    let mut level = 0usize;
    for &i in arrows {
        if cat.id2[key][cat.twos[key][i].1] != i {
            level += 1;
        }
        vals.push(level);
    }
    let d = kept.len();
    let idx = levels[d]
        .binary_search(&(start, kept))
        .expect("composed chain stays within the truncation");
    SRef { cell: CellId { dim: d, idx }, surj: Mono::new(d, vals) }
}

/// Bridge a 2-category labeling to a simplicial labeling into the nerve
/// enrichment.
pub fn two_labeling_to_scat_labeling(
    g: &Globular,
    lam: &TwoLabeling,
    cat: &TabTwoCat,
    nerve_cat: &SCat,
) -> Result<crate::scat::Labeling> {
    let _ = nerve_cat;
    let mut edge = BTreeMap::new();
    for e in g.graph.edge_ids() {
        let (a, b) = (&lam.obj[g.graph.src(e)], &lam.obj[g.graph.dst(e)]);
        let key = (a.clone(), b.clone());
        let one = cat.ones[&key]
            .iter()
            .position(|n| n == &lam.edge[e])
            .ok_or_else(|| Error::InvalidLabeling(format!("edge {e}")))?;
        edge.insert(e.clone(), SRef::nondeg(0, one));
    }
    let mut face = BTreeMap::new();
    for f in g.interior_faces() {
        let (a, b) = (&lam.obj[&f.src], &lam.obj[&f.tgt]);
        let key = (a.clone(), b.clone());
        let idx = lam.tab_face_index(cat, &f.key(), a, b)?;
        let (_, dom2, _) = cat.twos[&key][idx];
        // a length-one chain, degenerate when the cell is an identity
        let r = if cat.id2[&key][dom2] == idx {
            SRef { cell: CellId { dim: 0, idx: dom2_position(cat, &key, dom2) }, surj: Mono::degeneracy(0, 0) }
        } else {
            // nondegenerate 1-chains are sorted; find (dom2, [idx])
            let mut lvl: Vec<TabChain> = Vec::new();
            for (i, (_, d2, _)) in cat.twos[&key].iter().enumerate() {
                if cat.id2[&key][*d2] != i {
                    lvl.push((*d2, vec![i]));
                }
            }
            lvl.sort();
            let pos = lvl.binary_search(&(dom2, vec![idx])).expect("face cell exists");
            SRef::nondeg(1, pos)
        };
        face.insert(f.key(), r);
    }
    Ok(crate::scat::Labeling {
        obj: lam.obj.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
        edge,
        face,
    })
}

fn dom2_position(cat: &TabTwoCat, key: &HomKey, one: usize) -> usize {
    // 0-cells of the hom nerve are the 1-cells in order
    let _ = (cat, key);
    one
}

#[cfg(test)]
mod tests;
