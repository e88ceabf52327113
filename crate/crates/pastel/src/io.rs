//! The text formats: graphs, diagrams, labelings, 2-categories and
//! certificates. One format family with a versioned header line; parsers and
//! printers round-trip and all output key orders are fixed.

use std::collections::BTreeMap;

use itertools::Itertools;
use sha2::{Digest, Sha256};

use crate::anodyne::{AnodyneCertificate, Step};
use crate::error::{Error, Result};
use crate::nerve::{chain_to_marked, Nerve};
use crate::pasting::PastingDiagram;
use crate::plane_graph::{
    check_globular, eid, vid, Dart, DiPath, EdgeSet, End, Globular, PlaneGraph, Side,
};
use crate::sset::FiniteSSet;

pub const FORMAT_HEADER: &str = "pastel-format 1";

fn parse_dart(tok: &str, line: usize) -> Result<Dart> {
    let (name, end) = split_marker(tok, line)?;
    Ok(Dart {
        edge: eid(name),
        end: match end {
            '+' => End::Tail,
            _ => End::Head,
        },
    })
}

fn parse_side(tok: &str, line: usize) -> Result<Side> {
    let (name, end) = split_marker(tok, line)?;
    Ok(match end {
        '+' => Side::fwd(&eid(name)),
        _ => Side::bwd(&eid(name)),
    })
}

fn split_marker(tok: &str, line: usize) -> Result<(&str, char)> {
    let tok = tok.trim();
    if tok.len() < 2 || !(tok.ends_with('+') || tok.ends_with('-')) {
        return Err(Error::parse(line, format!("expected <edge>+ or <edge>-, found {tok}")));
    }
    Ok((&tok[..tok.len() - 1], tok.chars().last().unwrap()))
}

/// Parse the graph statements of a file. Lines: `vertex <id>: d1,d2,...`
/// (clockwise), `edge <id>: <src> -> <dst>`, `exterior: <dart>`.
pub fn parse_graph(text: &str) -> Result<Globular> {
    let mut edges = BTreeMap::new();
    let mut rotation = BTreeMap::new();
    let mut exterior: Option<Side> = None;
    let mut saw_header = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let stmt = raw.split('#').next().unwrap().trim();
        if stmt.is_empty() {
            continue;
        }
        if stmt == FORMAT_HEADER {
            saw_header = true;
            continue;
        }
        let (kind, rest) = stmt
            .split_once(|c| c == ' ' || c == ':')
            .ok_or_else(|| Error::parse(line, "expected a statement"))?;
        match kind {
            "vertex" => {
                let (id, darts) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::parse(line, "vertex <id>: <darts>"))?;
                let id = vid(id.trim());
                if rotation.contains_key(&id) {
                    return Err(Error::parse(line, format!("duplicate vertex {id}")));
                }
                let darts: Result<Vec<Dart>> = darts
                    .split(',')
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| parse_dart(t, line))
                    .collect();
                rotation.insert(id, darts?);
            }
            "edge" => {
                let (id, ends) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::parse(line, "edge <id>: <src> -> <dst>"))?;
                let id = eid(id.trim());
                if edges.contains_key(&id) {
                    return Err(Error::parse(line, format!("duplicate edge {id}")));
                }
                let (src, dst) = ends
                    .split_once("->")
                    .ok_or_else(|| Error::parse(line, "edge <id>: <src> -> <dst>"))?;
                edges.insert(id, (vid(src.trim()), vid(dst.trim())));
            }
            "exterior" => {
                exterior = Some(parse_side(rest.trim_start_matches(':').trim(), line)?);
            }
            "diagram" => {} // handled by parse_diagrams
            other => {
                return Err(Error::parse(line, format!("unknown statement `{other}`")));
            }
        }
    }
    if !saw_header {
        return Err(Error::parse(1, format!("missing `{FORMAT_HEADER}` header")));
    }
    let exterior = exterior.ok_or_else(|| Error::parse(1, "missing exterior statement"))?;
    check_globular(PlaneGraph::new(edges, rotation, exterior)?)
}

pub fn print_graph(g: &Globular) -> String {
    let mut out = String::new();
    out.push_str(FORMAT_HEADER);
    out.push('\n');
    for e in g.graph.edge_ids() {
        let (s, t) = g.graph.ends(e);
        out.push_str(&format!("edge {e}: {s} -> {t}\n"));
    }
    for v in g.graph.vertices() {
        let darts = g.graph.rotation_at(v).iter().map(|d| d.to_string()).join(",");
        out.push_str(&format!("vertex {v}: {darts}\n"));
    }
    let ext = &g.graph.faces[g.graph.exterior];
    out.push_str(&format!("exterior: {}\n", ext.walk[0]));
    out
}

/// Diagram statements on top of a graph file:
/// `diagram <name>: generators = {e1,e2; e3} [complete] [subdivision-closed]`.
/// The built-in names `min`, `min-complete` and `max` need no statement.
pub fn parse_diagrams(
    text: &str,
    g: &std::rc::Rc<Globular>,
) -> Result<BTreeMap<String, PastingDiagram>> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let stmt = raw.split('#').next().unwrap().trim();
        let Some(rest) = stmt.strip_prefix("diagram ") else { continue };
        let (name, spec) = rest
            .split_once(':')
            .ok_or_else(|| Error::parse(line, "diagram <name>: generators = {...}"))?;
        let spec = spec.trim();
        let open = spec
            .find('{')
            .ok_or_else(|| Error::parse(line, "missing generator list"))?;
        let close = spec
            .rfind('}')
            .ok_or_else(|| Error::parse(line, "missing closing brace"))?;
        let gens: Vec<EdgeSet> = spec[open + 1..close]
            .split(';')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.split(',').map(|e| eid(e.trim())).collect())
            .collect();
        let mut d = PastingDiagram::generate(g.clone(), &gens)?;
        let flags = &spec[close + 1..];
        if flags.contains("complete") {
            d = d.complete();
        }
        if flags.contains("subdivision-closed") && !d.is_subdivision_closed() {
            return Err(Error::parse(line, "diagram is not closed under subdivisions"));
        }
        out.insert(name.trim().to_string(), d);
    }
    Ok(out)
}

/// Resolve a diagram by name: a statement from the file or one of the
/// built-ins `min`, `min-complete`, `max`.
pub fn resolve_diagram(
    named: &BTreeMap<String, PastingDiagram>,
    g: &std::rc::Rc<Globular>,
    name: &str,
) -> Result<PastingDiagram> {
    if let Some(d) = named.get(name) {
        return Ok(d.clone());
    }
    match name {
        "min" => Ok(PastingDiagram::minimal(g.clone())),
        "min-complete" => Ok(PastingDiagram::min_complete(g.clone())),
        "max" => Ok(PastingDiagram::maximal(g.clone())),
        other => Err(Error::Invalid(format!("unknown diagram `{other}`"))),
    }
}

pub fn print_diagram(name: &str, d: &PastingDiagram) -> String {
    let gens = d
        .members
        .iter()
        .map(|m| m.iter().join(","))
        .join("; ");
    format!("diagram {name}: generators = {{{gens}}}\n")
}

/// Stable hash of a graph's canonical text, for certificate headers.
pub fn graph_hash(g: &Globular) -> String {
    let mut h = Sha256::new();
    h.update(print_graph(g).as_bytes());
    hex(&h.finalize()[..8])
}

pub fn diagram_hash(d: &PastingDiagram) -> String {
    let mut h = Sha256::new();
    h.update(print_diagram("d", d).as_bytes());
    hex(&h.finalize()[..8])
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Certificate dump: hash header then one line per step carrying the filler
/// as a marked-subgraph key.
pub fn print_certificate(
    g: &Globular,
    nv: &Nerve,
    sigma: &PastingDiagram,
    pi: &PastingDiagram,
    cert: &AnodyneCertificate,
) -> String {
    let mut out = String::new();
    out.push_str(FORMAT_HEADER);
    out.push('\n');
    out.push_str(&format!(
        "certificate: graph={} from={} to={}\n",
        graph_hash(g),
        diagram_hash(sigma),
        diagram_hash(pi)
    ));
    for (k, step) in cert.steps.iter().enumerate() {
        let marked = chain_to_marked(g, nv, &step.filler);
        out.push_str(&format!(
            "step {k}: dim={} horn={} filler={}\n",
            step.dim,
            step.horn,
            marked.key().replace(' ', "")
        ));
    }
    out
}

/// Parse a certificate against its graph: fillers are matched back to
/// chains through the marked-subgraph keys.
pub fn parse_certificate(text: &str, g: &Globular, nv: &Nerve) -> Result<AnodyneCertificate> {
    // index all nondegenerate chains by their marked-subgraph key
    let mut by_key: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    let mut all_chains: Vec<Vec<usize>> = Vec::new();
    for lvl in &nv.cells {
        for chain in lvl {
            let key = chain_to_marked(g, nv, chain).key().replace(' ', "");
            by_key.insert(key, chain.clone());
            all_chains.push(chain.clone());
        }
    }
    let mut steps = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let stmt = raw.trim();
        let Some(rest) = stmt.strip_prefix("step ") else { continue };
        let (_, body) = rest
            .split_once(':')
            .ok_or_else(|| Error::parse(line, "step <k>: dim=<n> horn=<i> filler=<key>"))?;
        let mut dim = None;
        let mut horn = None;
        let mut filler = None;
        for field in body.split_whitespace() {
            if let Some(v) = field.strip_prefix("dim=") {
                dim = Some(v.parse::<usize>().map_err(|_| Error::parse(line, "bad dim"))?);
            } else if let Some(v) = field.strip_prefix("horn=") {
                horn = Some(v.parse::<usize>().map_err(|_| Error::parse(line, "bad horn"))?);
            } else if let Some(v) = field.strip_prefix("filler=") {
                filler = Some(
                    by_key
                        .get(v)
                        .cloned()
                        .ok_or_else(|| Error::parse(line, format!("unknown filler {v}")))?,
                );
            }
        }
        match (dim, horn, filler) {
            (Some(dim), Some(horn), Some(filler)) => steps.push(Step { dim, horn, filler }),
            _ => return Err(Error::parse(line, "incomplete step statement")),
        }
    }
    Ok(AnodyneCertificate { steps })
}

/// Structured dump of a finite simplicial set with stable key order.
pub fn print_sset(s: &FiniteSSet) -> String {
    let mut out = String::from("{\n");
    out.push_str(&format!("  \"dim_bound\": {},\n", s.dim_bound));
    out.push_str("  \"cells\": {\n");
    for (d, lvl) in s.names.iter().enumerate() {
        out.push_str(&format!(
            "    \"{d}\": [{}]{}\n",
            lvl.iter().map(|n| format!("\"{n}\"")).join(", "),
            if d + 1 == s.names.len() { "" } else { "," }
        ));
    }
    out.push_str("  },\n  \"faces\": {\n");
    let mut lines = Vec::new();
    for (d, lvl) in s.faces.iter().enumerate() {
        if d == 0 {
            continue;
        }
        for (idx, fs) in lvl.iter().enumerate() {
            let parts = fs.iter().map(|r| format!("\"{r:?}\"")).join(", ");
            lines.push(format!("    \"{d}#{idx}\": [{parts}]"));
        }
    }
    out.push_str(&lines.join(",\n"));
    out.push_str("\n  }\n}\n");
    out
}

/// A labeling file for simplicial targets: `obj v = a`, `edge e = <id>`,
/// `face dom|cod = <id>`, where simplices are written `<dim>#<index>`.
pub fn parse_labeling(
    text: &str,
    g: &Globular,
) -> Result<(BTreeMap<String, String>, BTreeMap<String, String>, BTreeMap<String, String>)> {
    let mut obj = BTreeMap::new();
    let mut edge = BTreeMap::new();
    let mut face = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let stmt = raw.split('#').next().unwrap().trim();
        if stmt.is_empty() || stmt == FORMAT_HEADER {
            continue;
        }
        let (kind, rest) = stmt
            .split_once(' ')
            .ok_or_else(|| Error::parse(line, "expected obj/edge/face statement"))?;
        let (lhs, rhs) = rest
            .split_once('=')
            .ok_or_else(|| Error::parse(line, "expected `lhs = rhs`"))?;
        let (lhs, rhs) = (lhs.trim().to_string(), rhs.trim().to_string());
        match kind {
            "obj" => {
                obj.insert(lhs, rhs);
            }
            "edge" => {
                edge.insert(lhs, rhs);
            }
            "face" => {
                face.insert(lhs, rhs);
            }
            other => return Err(Error::parse(line, format!("unknown statement `{other}`"))),
        }
    }
    for v in g.graph.vertices() {
        if !obj.contains_key(&v.0) {
            return Err(Error::Invalid(format!("vertex {v} unlabeled")));
        }
    }
    Ok((obj, edge, face))
}

/// Face names used by labeling files: `dom|cod` with edges dot-joined.
pub fn face_name(f: &crate::plane_graph::GlobFace) -> String {
    format!("{}|{}", f.dom.iter().join("."), f.cod.iter().join("."))
}

pub fn parse_path(g: &Globular, text: &str) -> Result<DiPath> {
    let edges: Vec<_> = text.split('-').map(|e| eid(e.trim())).collect();
    DiPath::from_edges(&g.graph, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog, graph_f};
    use std::rc::Rc;

    #[test]
    fn graph_round_trip() {
        for entry in catalog() {
            let text = print_graph(&entry.graph);
            let parsed = parse_graph(&text).unwrap();
            assert_eq!(print_graph(&parsed), text, "{}", entry.name);
        }
    }

    #[test]
    fn parser_rejects_duplicates_and_junk() {
        let mut text = print_graph(&graph_f());
        text.push_str("edge e1: s -> 2\n");
        assert!(parse_graph(&text).is_err());
        assert!(parse_graph("vertex v: e+\n").is_err()); // no header
    }

    #[test]
    fn diagram_statement_round_trip() {
        let f = Rc::new(graph_f());
        let d = PastingDiagram::min_complete(f.clone());
        let printed = print_diagram("sigma", &d);
        let parsed = parse_diagrams(&printed, &f).unwrap();
        assert_eq!(parsed["sigma"].members, d.members);
    }

    #[test]
    fn certificate_round_trip() {
        use crate::anodyne::build_certificate;
        use crate::nerve::nerve;
        let f = Rc::new(graph_f());
        let sigma = PastingDiagram::min_complete(f.clone());
        let pi = PastingDiagram::maximal(f.clone());
        let cert = build_certificate(&sigma, &pi).unwrap();
        let nv = nerve(&f).unwrap();
        let text = print_certificate(&f, &nv, &sigma, &pi, &cert);
        let parsed = parse_certificate(&text, &f, &nv).unwrap();
        assert_eq!(parsed.steps, cert.steps);
    }

    #[test]
    fn sset_dump_is_stable() {
        let d = FiniteSSet::delta(2);
        assert_eq!(print_sset(&d), print_sset(&d));
        assert!(print_sset(&d).contains("\"dim_bound\": 2"));
    }
}
