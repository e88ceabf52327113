//! The shipped example graphs. Every entry passes `check_globular`; rotations
//! are clockwise as drawn with sources on the left.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::plane_graph::{check_globular, eid, join, vid, Dart, End, Globular, PlaneGraph, Side};

pub struct CatalogEntry {
    pub name: &'static str,
    pub note: &'static str,
    pub graph: Globular,
}

fn dart(e: &str, end: End) -> Dart {
    Dart { edge: eid(e), end }
}
fn out(e: &str) -> Dart {
    dart(e, End::Tail)
}
fn inn(e: &str) -> Dart {
    dart(e, End::Head)
}

fn build(
    edges: &[(&str, &str, &str)],
    rotation: &[(&str, &[Dart])],
    exterior: Side,
) -> Result<Globular> {
    let edges: BTreeMap<_, _> = edges
        .iter()
        .map(|(e, s, t)| (eid(e), (vid(s), vid(t))))
        .collect();
    let rotation: BTreeMap<_, _> = rotation
        .iter()
        .map(|(v, ds)| (vid(v), ds.to_vec()))
        .collect();
    check_globular(PlaneGraph::new(edges, rotation, exterior)?)
}

/// Two vertices with n+1 parallel edges, numbered from the top down.
pub fn bn(n: usize) -> Globular {
    bn_named(n, "s", "t", "e")
}

/// A parallel-edge graph with chosen vertex names and edge prefix, so joins
/// of several copies have disjoint ids.
pub fn bn_named(n: usize, vs: &str, vt: &str, prefix: &str) -> Globular {
    assert!(n >= 1);
    let names: Vec<String> = (0..=n).map(|i| format!("{prefix}{i}")).collect();
    let edges: BTreeMap<_, _> = names
        .iter()
        .map(|e| (eid(e), (vid(vs), vid(vt))))
        .collect();
    let mut rot_s = Vec::new();
    let mut rot_t = Vec::new();
    for e in &names {
        rot_s.push(out(e));
    }
    for e in names.iter().rev() {
        rot_t.push(inn(e));
    }
    let rotation = BTreeMap::from([(vid(vs), rot_s), (vid(vt), rot_t)]);
    let ext = Side::bwd(&eid(&names[0]));
    check_globular(PlaneGraph::new(edges, rotation, ext).unwrap()).unwrap()
}

/// The six-vertex example graph with three interior faces. Source `s`,
/// target `t`; the top boundary is e1-e2-e3-e4 and the bottom e1-e7-e8.
pub fn graph_f() -> Globular {
    build(
        &[
            ("e1", "s", "2"),
            ("e2", "2", "5"),
            ("e3", "5", "6"),
            ("e4", "6", "t"),
            ("e5", "5", "3"),
            ("e6", "3", "6"),
            ("e7", "2", "3"),
            ("e8", "3", "t"),
        ],
        &[
            ("s", &[out("e1")]),
            ("2", &[out("e2"), out("e7"), inn("e1")]),
            ("5", &[out("e3"), out("e5"), inn("e2")]),
            ("3", &[out("e6"), out("e8"), inn("e7"), inn("e5")]),
            ("6", &[out("e4"), inn("e6"), inn("e3")]),
            ("t", &[inn("e8"), inn("e4")]),
        ],
        Side::bwd(&eid("e1")),
    )
    .unwrap()
}

/// Three vertices 0, 1, 2: an edge a from 0 to 1, three parallel edges
/// b0, b1, b2 from 1 to 2, and an arc c from 0 to 2 above everything.
pub fn graph_h() -> Globular {
    build(
        &[
            ("a", "0", "1"),
            ("b0", "1", "2"),
            ("b1", "1", "2"),
            ("b2", "1", "2"),
            ("c", "0", "2"),
        ],
        &[
            ("0", &[out("c"), out("a")]),
            ("1", &[out("b0"), out("b1"), out("b2"), inn("a")]),
            ("2", &[inn("b2"), inn("b1"), inn("b0"), inn("c")]),
        ],
        Side::bwd(&eid("c")),
    )
    .unwrap()
}

/// Three vertices s, m, t: two parallel edges p0, p1 from s to m, two
/// parallel edges q0, q1 from m to t, and an arc r from s to t on top.
pub fn graph_w() -> Globular {
    build(
        &[
            ("p0", "s", "m"),
            ("p1", "s", "m"),
            ("q0", "m", "t"),
            ("q1", "m", "t"),
            ("r", "s", "t"),
        ],
        &[
            ("s", &[out("r"), out("p0"), out("p1")]),
            ("m", &[out("q0"), out("q1"), inn("p1"), inn("p0")]),
            ("t", &[inn("q1"), inn("q0"), inn("r")]),
        ],
        Side::bwd(&eid("r")),
    )
    .unwrap()
}

/// B1 joined with B1: edges e0, e1 from s to m and d0, d1 from m to t.
pub fn graph_j() -> Globular {
    build(
        &[
            ("e0", "s", "m"),
            ("e1", "s", "m"),
            ("d0", "m", "t"),
            ("d1", "m", "t"),
        ],
        &[
            ("s", &[out("e0"), out("e1")]),
            ("m", &[out("d0"), out("d1"), inn("e1"), inn("e0")]),
            ("t", &[inn("d1"), inn("d0")]),
        ],
        Side::bwd(&eid("e0")),
    )
    .unwrap()
}

/// The eight-edge pasting shape with three 2-cells: a square of objects
/// A, B, C on top and X, Y, Z below, composite from the path a-b-c down to
/// u-v-w.
pub fn graph_overview() -> Globular {
    build(
        &[
            ("a", "A", "B"),
            ("b", "B", "C"),
            ("c", "C", "Z"),
            ("f", "B", "X"),
            ("g", "C", "Y"),
            ("u", "A", "X"),
            ("v", "X", "Y"),
            ("w", "Y", "Z"),
        ],
        &[
            ("A", &[out("a"), out("u")]),
            ("B", &[out("b"), out("f"), inn("a")]),
            ("C", &[out("c"), out("g"), inn("b")]),
            ("X", &[out("v"), inn("u"), inn("f")]),
            ("Y", &[out("w"), inn("v"), inn("g")]),
            ("Z", &[inn("w"), inn("c")]),
        ],
        Side::bwd(&eid("a")),
    )
    .unwrap()
}

/// B2 with top and bottom edges subdivided: midpoints x and y.
pub fn subdivided_b2() -> Globular {
    build(
        &[
            ("a0", "s", "x"),
            ("a1", "x", "t"),
            ("b", "s", "t"),
            ("c0", "s", "y"),
            ("c1", "y", "t"),
        ],
        &[
            ("s", &[out("a0"), out("b"), out("c0")]),
            ("x", &[out("a1"), inn("a0")]),
            ("y", &[out("c1"), inn("c0")]),
            ("t", &[inn("c1"), inn("b"), inn("a1")]),
        ],
        Side::bwd(&eid("a0")),
    )
    .unwrap()
}

/// B2 joined with a B1 copy on edges d0, d1; has a cut vertex.
pub fn b2_join_b1() -> Globular {
    join(&bn(2), &bn_named(1, "t", "u", "d")).unwrap()
}

pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "B1",
            note: "two vertices, two parallel edges, one 2-cell shape",
            graph: bn(1),
        },
        CatalogEntry {
            name: "B2",
            note: "two vertices, three parallel edges; its nerve is a 2-simplex",
            graph: bn(2),
        },
        CatalogEntry {
            name: "B3",
            note: "two vertices, four parallel edges; its nerve is a 3-simplex",
            graph: bn(3),
        },
        CatalogEntry {
            name: "J",
            note: "join of two 2-cell shapes; its nerve is a square",
            graph: graph_j(),
        },
        CatalogEntry {
            name: "F",
            note: "six vertices, eight edges, three interior faces",
            graph: graph_f(),
        },
        CatalogEntry {
            name: "H",
            note: "an arc over an edge followed by three parallel edges",
            graph: graph_h(),
        },
        CatalogEntry {
            name: "W",
            note: "an arc over two composable 2-cell shapes",
            graph: graph_w(),
        },
    ]
}

pub fn by_name(name: &str) -> Option<Globular> {
    catalog()
        .into_iter()
        .find(|c| c.name.eq_ignore_ascii_case(name))
        .map(|c| c.graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane_graph::{eid, glob_between, intersect_xy_joins, vid, DiPath, EdgeSet};

    fn edge_vec(ids: &[&str]) -> Vec<crate::plane_graph::EdgeId> {
        ids.iter().map(|e| eid(e)).collect()
    }
    fn edge_set(ids: &[&str]) -> EdgeSet {
        ids.iter().map(|e| eid(e)).collect()
    }

    #[test]
    fn all_catalog_graphs_are_globular() {
        for entry in catalog() {
            let g = &entry.graph;
            assert!(g.graph.vertex_count() >= 2, "{}", entry.name);
            // out-darts clockwise-contiguous before in-darts, exactly
            for v in g.graph.vertices() {
                let rot = g.graph.rotation_at(v);
                let changes = (0..rot.len())
                    .filter(|&i| rot[i].end != rot[(i + rot.len() - 1) % rot.len()].end)
                    .count();
                assert!(changes <= 2, "{} at {}", entry.name, v);
            }
        }
    }

    #[test]
    fn face_counts_match_euler() {
        assert_eq!(bn(2).graph.faces.len(), 3); // 2 interior + exterior
        assert_eq!(graph_f().graph.faces.len(), 4);
        let single = bn(1).sub(&edge_set(&["e0"])).unwrap();
        assert_eq!(single.graph.faces.len(), 1);
    }

    #[test]
    fn f_has_expected_boundary() {
        let f = graph_f();
        assert_eq!(f.dom().edges, edge_vec(&["e1", "e2", "e3", "e4"]));
        assert_eq!(f.cod().edges, edge_vec(&["e1", "e7", "e8"]));
        let keys: Vec<_> = f.interior_faces().map(|x| x.key()).collect();
        assert!(keys.contains(&(edge_vec(&["e2", "e5"]), edge_vec(&["e7"]))));
        assert!(keys.contains(&(edge_vec(&["e3"]), edge_vec(&["e5", "e6"]))));
        assert!(keys.contains(&(edge_vec(&["e6", "e4"]), edge_vec(&["e8"]))));
    }

    #[test]
    fn bn_boundaries() {
        let b3 = bn(3);
        assert_eq!(b3.dom().edges, edge_vec(&["e0"]));
        assert_eq!(b3.cod().edges, edge_vec(&["e3"]));
        for i in 1..=3usize {
            let key = (
                edge_vec(&[&format!("e{}", i - 1)]),
                edge_vec(&[&format!("e{i}")]),
            );
            assert!(b3.face_by_key(&key).is_some(), "face e{} | e{}", i - 1, i);
        }
    }

    #[test]
    fn two_cycle_is_rejected() {
        use crate::plane_graph::{check_globular, PlaneGraph};
        use std::collections::BTreeMap;
        let edges = BTreeMap::from([
            (eid("a"), (vid("u"), vid("v"))),
            (eid("b"), (vid("v"), vid("u"))),
        ]);
        let rotation = BTreeMap::from([
            (vid("u"), vec![out("a"), inn("b")]),
            (vid("v"), vec![out("b"), inn("a")]),
        ]);
        let g = PlaneGraph::new(edges, rotation, Side::fwd(&eid("a"))).unwrap();
        assert!(matches!(check_globular(g), Err(crate::error::Error::HasDirectedCycle(_))));
    }

    #[test]
    fn subgraph_xy_on_f() {
        let f = graph_f();
        let sub = f.subgraph_xy(&vid("2"), &vid("3")).unwrap();
        assert_eq!(sub.edge_set(), edge_set(&["e2", "e5", "e7"]));
        assert_eq!(sub.source, vid("2"));
        assert_eq!(sub.target, vid("3"));
        // whole graph
        let whole = f.subgraph_xy(&vid("s"), &vid("t")).unwrap();
        assert_eq!(whole.edge_set(), f.edge_set());
        // no backward path
        assert!(f.subgraph_xy(&vid("5"), &vid("2")).is_none());
    }

    #[test]
    fn join_of_b1s_matches_j() {
        let j = join(&bn(1), &bn_named(1, "t", "u", "d")).unwrap();
        assert_eq!(j.dom().edges, edge_vec(&["e0", "d0"]));
        assert_eq!(j.cod().edges, edge_vec(&["e1", "d1"]));
        assert_eq!(j.graph.vertex_count(), 3);
        assert_eq!(j.graph.edge_count(), 4);
        // same shape as the catalog J (j uses d* names too)
        let jj = graph_j();
        assert_eq!(jj.graph.vertex_count(), 3);
        assert_eq!(jj.interior_face_count(), 2);
    }

    #[test]
    fn join_is_associative_on_edge_sets() {
        let a = bn_named(1, "x0", "x1", "a");
        let b = bn_named(1, "x1", "x2", "b");
        let c = bn_named(1, "x2", "x3", "c");
        let left = join(&join(&a, &b).unwrap(), &c).unwrap();
        let right = join(&a, &join(&b, &c).unwrap()).unwrap();
        assert_eq!(left.edge_set(), right.edge_set());
        assert_eq!(left.dom().edges, right.dom().edges);
        assert_eq!(left.cod().edges, right.cod().edges);
    }

    #[test]
    fn join_of_path_subgraphs_of_f() {
        let f = graph_f();
        let left = f.xy_edge_set(&vid("s"), &vid("3")).unwrap();
        let right = f.xy_edge_set(&vid("3"), &vid("t")).unwrap();
        let mut union = left.clone();
        union.extend(right.clone());
        let wide = f.sub(&union).unwrap();
        assert_eq!(wide.source, vid("s"));
        assert_eq!(wide.target, vid("t"));
        // the wide subgraph misses no vertex of F
        assert_eq!(wide.graph.vertex_count(), f.graph.vertex_count());
    }

    #[test]
    fn glob_between_on_b2() {
        let b2 = bn(2);
        let p = DiPath::from_edges(&b2.graph, &edge_vec(&["e0"])).unwrap();
        let q = DiPath::from_edges(&b2.graph, &edge_vec(&["e2"])).unwrap();
        let g = glob_between(&b2, &p, &q).unwrap();
        assert!(!g.degenerate);
        assert!(g.proper);
        assert_eq!(g.edges, edge_set(&["e0", "e2"]));
        // wrong direction
        assert!(glob_between(&b2, &q, &p).is_err());
        // degenerate witness
        let d = glob_between(&b2, &p, &p).unwrap();
        assert!(d.degenerate);
    }

    #[test]
    fn glob_between_on_f_boundary_paths() {
        let f = graph_f();
        let p = DiPath::from_edges(&f.graph, &edge_vec(&["e1", "e2", "e3", "e4"])).unwrap();
        let q = DiPath::from_edges(&f.graph, &edge_vec(&["e1", "e7", "e8"])).unwrap();
        let g = glob_between(&f, &p, &q).unwrap();
        assert_eq!(g.dom.edges, edge_vec(&["e2", "e3", "e4"]));
        assert_eq!(g.cod.edges, edge_vec(&["e7", "e8"]));
        assert_eq!(
            g.edges,
            edge_set(&["e2", "e3", "e4", "e7", "e8"])
        );
    }

    #[test]
    fn minimal_witness_is_contained_in_all_witnesses() {
        // exhaustive comparison over all globs of F for a sample relation
        let f = graph_f();
        let p = DiPath::from_edges(&f.graph, &edge_vec(&["e1", "e2", "e3", "e4"])).unwrap();
        let q = DiPath::from_edges(&f.graph, &edge_vec(&["e1", "e2", "e5", "e6", "e4"])).unwrap();
        let min = glob_between(&f, &p, &q).unwrap();
        let mut witnesses = Vec::new();
        for sub in f.all_globular_subgraphs() {
            if let Some(glob) = crate::plane_graph::as_glob(&f, &sub) {
                if glob.degenerate {
                    continue;
                }
                // does it witness p <= q at some position?
                if let (Some(i), Some(j)) =
                    (p.find_subpath(&glob.dom.edges), q.find_subpath(&glob.cod.edges))
                {
                    let prefix_match = p.edges[..i] == q.edges[..j];
                    let suffix_match =
                        p.edges[i + glob.dom.edges.len()..] == q.edges[j + glob.cod.edges.len()..];
                    if prefix_match && suffix_match && i == j {
                        witnesses.push(glob);
                    }
                }
            }
        }
        assert!(!witnesses.is_empty());
        for w in &witnesses {
            assert!(
                min.edges.is_subset(&w.edges),
                "minimal witness not inside {w:?}"
            );
        }
        assert!(witnesses.iter().any(|w| w.edges == min.edges));
    }

    #[test]
    fn intersect_xy_joins_on_f() {
        let f = graph_f();
        let meet = intersect_xy_joins(&f, &vid("2"), &vid("3"));
        let mut triple = f.xy_edge_set(&vid("s"), &vid("2")).unwrap();
        triple.extend(f.xy_edge_set(&vid("2"), &vid("3")).unwrap());
        triple.extend(f.xy_edge_set(&vid("3"), &vid("t")).unwrap());
        assert_eq!(meet, triple);
        // x = y degenerates to the hourglass at x
        let same = intersect_xy_joins(&f, &vid("3"), &vid("3"));
        let mut hour = f.xy_edge_set(&vid("s"), &vid("3")).unwrap();
        hour.extend(f.xy_edge_set(&vid("3"), &vid("t")).unwrap());
        assert_eq!(same, hour);
    }

    #[test]
    fn intersect_xy_joins_without_path() {
        let g = subdivided_b2();
        let meet = intersect_xy_joins(&g, &vid("x"), &vid("y"));
        // no directed path between the midpoints: no st-path in the meet
        let st_paths = g.paths_between(&vid("s"), &vid("t"));
        assert!(st_paths
            .iter()
            .all(|p| !p.edges.iter().all(|e| meet.contains(e))));
    }

    #[test]
    fn glob_examples_on_w() {
        use crate::plane_graph::as_glob;
        let w = graph_w();
        let gamma1 = edge_set(&["p0", "q1", "r"]);
        let g1 = as_glob(&w, &gamma1).unwrap();
        assert!(g1.proper && !g1.degenerate);
        let gamma2 = edge_set(&["p0", "p1", "q0", "q1"]);
        let g2 = as_glob(&w, &gamma2).unwrap();
        assert!(!g2.proper && !g2.degenerate);
        // q0 fails to touch the exterior of this subgraph
        let h = edge_set(&["p0", "q0", "q1", "r"]);
        assert!(as_glob(&w, &h).is_none());
        assert!(w.is_globular_subgraph(&h));
    }

    #[test]
    fn face_exists_with_dom_inside_graph_dom() {
        for entry in catalog() {
            let g = &entry.graph;
            if g.interior_face_count() == 0 {
                continue;
            }
            let dom = g.dom();
            let found = g.interior_faces().any(|f| dom.find_subpath(&f.dom).is_some());
            assert!(found, "{}", entry.name);
        }
    }
}
