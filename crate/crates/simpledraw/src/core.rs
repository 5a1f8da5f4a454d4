//! Drawing model, file format, validation, planarization, induced subdrawings.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

// ---------------------------------------------------------------------------
// file format

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawEdge {
    pub id: String,
    pub u: String,
    pub v: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPort {
    pub edge: String,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCrossing {
    pub id: String,
    pub edges: [String; 2],
    pub ports: Vec<RawPort>,
}

/// The `.sdraw` document as written on disk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDrawing {
    #[serde(default)]
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<Vec<String>>>,
    pub vertices: Vec<String>,
    pub edges: Vec<RawEdge>,
    #[serde(default)]
    pub rotations: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub crossings: Vec<RawCrossing>,
    #[serde(default)]
    pub order: BTreeMap<String, Vec<String>>,
}

impl RawDrawing {
    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("raw drawings always serialize")
    }
}

// ---------------------------------------------------------------------------
// in-memory model

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    /// Source endpoint (lexicographically smaller label for real drawings).
    pub s: usize,
    pub t: usize,
}

impl Edge {
    pub fn other(&self, v: usize) -> usize {
        if v == self.s {
            self.t
        } else {
            self.s
        }
    }

    pub fn has(&self, v: usize) -> bool {
        self.s == v || self.t == v
    }
}

/// A branch of a crossing: the part of `edge` that leads to vertex `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Port {
    pub edge: usize,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub id: String,
    pub edges: [usize; 2],
    /// Clockwise.
    pub ports: [Port; 4],
}

impl Crossing {
    pub fn other(&self, e: usize) -> usize {
        if self.edges[0] == e {
            self.edges[1]
        } else {
            self.edges[0]
        }
    }

    pub fn involves(&self, e: usize) -> bool {
        self.edges[0] == e || self.edges[1] == e
    }
}

/// Index based drawing. Rotations and ports are clockwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Drawing {
    pub name: String,
    pub partition: Option<Vec<Vec<String>>>,
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
    pub rotations: Vec<Vec<usize>>,
    pub crossings: Vec<Crossing>,
    /// Per edge, crossing indices from source to target.
    pub order: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<String>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Drawing {
    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn edge(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn edge_or_err(&self, id: &str) -> Result<usize> {
        self.edge(id)
            .ok_or_else(|| Error::UnknownEdge(id.to_string()))
    }

    pub fn crossing(&self, id: &str) -> Option<usize> {
        self.crossings.iter().position(|c| c.id == id)
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.edges
            .iter()
            .position(|e| (e.s == a && e.t == b) || (e.s == b && e.t == a))
    }

    pub fn adjacent(&self, e: usize, f: usize) -> bool {
        let (a, b) = (&self.edges[e], &self.edges[f]);
        a.has(b.s) || a.has(b.t)
    }

    /// Map from sorted edge pair to crossing index.
    pub fn crossing_map(&self) -> HashMap<(usize, usize), usize> {
        self.crossings
            .iter()
            .enumerate()
            .map(|(i, c)| ((c.edges[0].min(c.edges[1]), c.edges[0].max(c.edges[1])), i))
            .collect()
    }

    /// Position of crossing `c` in the order list of edge `e`.
    pub fn position(&self, c: usize, e: usize) -> Option<usize> {
        self.order[e].iter().position(|&x| x == c)
    }

    /// Plain graph data: vertex labels and (id, u, v) with u < v.
    pub fn graph_signature(&self) -> (Vec<String>, Vec<(String, String, String)>) {
        let mut vs = self.vertices.clone();
        vs.sort();
        let mut es: Vec<_> = self
            .edges
            .iter()
            .map(|e| {
                let (a, b) = (&self.vertices[e.s], &self.vertices[e.t]);
                let (a, b) = if a <= b { (a, b) } else { (b, a) };
                (e.id.clone(), a.clone(), b.clone())
            })
            .collect();
        es.sort();
        (vs, es)
    }

    pub fn same_graph(&self, other: &Drawing) -> Result<()> {
        if self.graph_signature() == other.graph_signature() {
            Ok(())
        } else {
            Err(Error::GraphMismatch(format!(
                "`{}` vs `{}`",
                self.name, other.name
            )))
        }
    }

    /// Build from the file format; fails with the list of structural problems.
    pub fn from_raw(raw: &RawDrawing) -> std::result::Result<Drawing, Vec<String>> {
        let mut bad = Vec::new();
        let mut vindex = HashMap::new();
        for (i, v) in raw.vertices.iter().enumerate() {
            if vindex.insert(v.clone(), i).is_some() {
                bad.push(format!("duplicate vertex `{v}`"));
            }
        }
        let mut eindex = HashMap::new();
        let mut edges = Vec::new();
        let mut pairs = HashSet::new();
        for e in &raw.edges {
            let (Some(&a), Some(&b)) = (vindex.get(&e.u), vindex.get(&e.v)) else {
                bad.push(format!("edge `{}` has an unknown endpoint", e.id));
                continue;
            };
            if a == b {
                bad.push(format!("edge `{}` is a self-loop", e.id));
                continue;
            }
            if !pairs.insert((a.min(b), a.max(b))) {
                bad.push(format!("edge `{}` is parallel to another edge", e.id));
            }
            if eindex.insert(e.id.clone(), edges.len()).is_some() {
                bad.push(format!("duplicate edge id `{}`", e.id));
                continue;
            }
            let (s, t) = if raw.vertices[a] <= raw.vertices[b] {
                (a, b)
            } else {
                (b, a)
            };
            edges.push(Edge {
                id: e.id.clone(),
                s,
                t,
            });
        }

        let mut rotations = vec![Vec::new(); raw.vertices.len()];
        for (v, list) in &raw.rotations {
            let Some(&vi) = vindex.get(v) else {
                bad.push(format!("rotation given for unknown vertex `{v}`"));
                continue;
            };
            for id in list {
                match eindex.get(id) {
                    None => bad.push(format!("rotation at `{v}` names unknown edge `{id}`")),
                    Some(&ei) if !edges[ei].has(vi) => {
                        bad.push(format!("rotation at `{v}` names non-incident edge `{id}`"))
                    }
                    Some(&ei) if rotations[vi].contains(&ei) => {
                        bad.push(format!("rotation at `{v}` repeats edge `{id}`"))
                    }
                    Some(&ei) => rotations[vi].push(ei),
                }
            }
        }
        for (ei, e) in edges.iter().enumerate() {
            for v in [e.s, e.t] {
                if !rotations[v].contains(&ei) {
                    bad.push(format!(
                        "edge `{}` missing from rotation at `{}`",
                        e.id, raw.vertices[v]
                    ));
                }
            }
        }

        let mut crossings = Vec::new();
        let mut cindex = HashMap::new();
        for c in &raw.crossings {
            let ids = [eindex.get(&c.edges[0]), eindex.get(&c.edges[1])];
            let (Some(&e), Some(&f)) = (ids[0], ids[1]) else {
                bad.push(format!("crossing `{}` names an unknown edge", c.id));
                continue;
            };
            if e == f {
                bad.push(format!(
                    "crossing `{}` is a self-crossing of `{}`",
                    c.id, c.edges[0]
                ));
                continue;
            }
            if c.ports.len() != 4 {
                bad.push(format!("crossing `{}` must have exactly 4 ports", c.id));
                continue;
            }
            let mut ports = Vec::new();
            for p in &c.ports {
                let (Some(&pe), Some(&pv)) = (eindex.get(&p.edge), vindex.get(&p.to)) else {
                    bad.push(format!(
                        "crossing `{}` has a port with unknown edge or vertex",
                        c.id
                    ));
                    break;
                };
                if pe != e && pe != f {
                    bad.push(format!(
                        "crossing `{}` port names foreign edge `{}`",
                        c.id, p.edge
                    ));
                    break;
                }
                if !edges[pe].has(pv) {
                    bad.push(format!(
                        "crossing `{}` port leads `{}` to non-endpoint `{}`",
                        c.id, p.edge, p.to
                    ));
                    break;
                }
                ports.push(Port { edge: pe, to: pv });
            }
            if ports.len() != 4 {
                continue;
            }
            let distinct: HashSet<_> = ports.iter().collect();
            if distinct.len() != 4 {
                bad.push(format!("crossing `{}` repeats a port", c.id));
                continue;
            }
            if !(0..4).all(|i| ports[i].edge != ports[(i + 1) % 4].edge) {
                bad.push(format!("crossing `{}` ports do not alternate", c.id));
                continue;
            }
            if cindex.insert(c.id.clone(), crossings.len()).is_some() {
                bad.push(format!("duplicate crossing id `{}`", c.id));
                continue;
            }
            crossings.push(Crossing {
                id: c.id.clone(),
                edges: [e, f],
                ports: [ports[0], ports[1], ports[2], ports[3]],
            });
        }

        let mut order = vec![Vec::new(); edges.len()];
        for (eid, list) in &raw.order {
            let Some(&ei) = eindex.get(eid) else {
                bad.push(format!("order given for unknown edge `{eid}`"));
                continue;
            };
            for cid in list {
                match cindex.get(cid) {
                    None => bad.push(format!("order of `{eid}` names unknown crossing `{cid}`")),
                    Some(&ci) if !crossings[ci].involves(ei) => bad.push(format!(
                        "order of `{eid}` names crossing `{cid}` of other edges"
                    )),
                    Some(&ci) if order[ei].contains(&ci) => {
                        bad.push(format!("order of `{eid}` repeats crossing `{cid}`"))
                    }
                    Some(&ci) => order[ei].push(ci),
                }
            }
        }
        for (ci, c) in crossings.iter().enumerate() {
            for e in c.edges {
                if !order[e].contains(&ci) {
                    bad.push(format!(
                        "crossing `{}` missing from order of `{}`",
                        c.id, edges[e].id
                    ));
                }
            }
        }

        if !bad.is_empty() {
            return Err(bad);
        }
        Ok(Drawing {
            name: raw.name.clone(),
            partition: raw.partition.clone(),
            vertices: raw.vertices.clone(),
            edges,
            rotations,
            crossings,
            order,
        })
    }

    pub fn to_raw(&self) -> RawDrawing {
        let v = |i: usize| self.vertices[i].clone();
        RawDrawing {
            name: self.name.clone(),
            partition: self.partition.clone(),
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| RawEdge {
                    id: e.id.clone(),
                    u: v(e.s),
                    v: v(e.t),
                })
                .collect(),
            rotations: self
                .rotations
                .iter()
                .enumerate()
                .filter(|(_, r)| !r.is_empty())
                .map(|(i, r)| (v(i), r.iter().map(|&e| self.edges[e].id.clone()).collect()))
                .collect(),
            crossings: self
                .crossings
                .iter()
                .map(|c| RawCrossing {
                    id: c.id.clone(),
                    edges: [
                        self.edges[c.edges[0]].id.clone(),
                        self.edges[c.edges[1]].id.clone(),
                    ],
                    ports: c
                        .ports
                        .iter()
                        .map(|p| RawPort {
                            edge: self.edges[p.edge].id.clone(),
                            to: v(p.to),
                        })
                        .collect(),
                })
                .collect(),
            order: self
                .order
                .iter()
                .enumerate()
                .map(|(e, l)| {
                    (
                        self.edges[e].id.clone(),
                        l.iter().map(|&c| self.crossings[c].id.clone()).collect(),
                    )
                })
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Drawing> {
        let raw = RawDrawing::from_json(text).map_err(|e| Error::InvalidDrawing(e.to_string()))?;
        Drawing::from_raw(&raw).map_err(|v| Error::InvalidDrawing(v.join("; ")))
    }

    pub fn to_json(&self) -> String {
        self.to_raw().to_json()
    }

    /// Semantic validation of an already well-formed drawing.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let mut seen = HashSet::new();
        for c in &self.crossings {
            let [e, f] = c.edges;
            if self.adjacent(e, f) {
                rep.violations.push(format!(
                    "adjacent edges `{}` and `{}` cross at `{}`",
                    self.edges[e].id, self.edges[f].id, c.id
                ));
            }
            if !seen.insert((e.min(f), e.max(f))) {
                rep.violations.push(format!(
                    "edges `{}` and `{}` cross more than once",
                    self.edges[e].id, self.edges[f].id
                ));
            }
            let ends: HashSet<usize> = c.ports.iter().map(|p| p.to).collect();
            if ends.len() != 4 {
                rep.violations.push(format!(
                    "crossing `{}` does not lead to four distinct endpoints",
                    c.id
                ));
            }
        }
        if let Some(p) = &self.partition {
            let mut all: Vec<&String> = p.iter().flatten().collect();
            let n = all.len();
            all.sort();
            all.dedup();
            let mut vs: Vec<&String> = self.vertices.iter().collect();
            vs.sort();
            if all.len() != n || all != vs || p.iter().any(|c| c.is_empty()) {
                rep.violations
                    .push("partition does not split the vertex set".into());
            }
        }
        let m = PlanarMap::build(self);
        for comp in 0..m.n_comp {
            let nodes = m.node_comp.iter().filter(|&&c| c == comp).count();
            let frags = (0..m.frag_edge.len())
                .filter(|&f| m.node_comp[m.frag_nodes[f][0]] == comp)
                .count();
            let faces = m.face_comp.iter().filter(|&&c| c == comp).count().max(1);
            let chi = nodes as i64 - frags as i64 + faces as i64;
            if chi != 2 {
                rep.violations.push(format!(
                    "Euler check fails on a component: V - E + F = {nodes} - {frags} + {faces} = {chi}"
                ));
            }
        }
        if m.n_comp > 1 {
            rep.warnings
                .push(format!("planarization has {} components", m.n_comp));
        }
        rep
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let rep = self.validate();
        if rep.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidDrawing(rep.violations.join("; ")))
        }
    }

    pub fn is_connected(&self) -> bool {
        PlanarMap::build(self).n_comp <= 1
    }

    /// Turn every edge so it runs from its lexicographically smaller endpoint.
    pub fn normalize_orientation(&mut self) {
        for (i, e) in self.edges.iter_mut().enumerate() {
            if self.vertices[e.s] > self.vertices[e.t] {
                std::mem::swap(&mut e.s, &mut e.t);
                self.order[i].reverse();
            }
        }
    }

    /// Reflected copy: every rotation and crossing rotation reversed.
    pub fn mirror(&self) -> Drawing {
        let mut d = self.clone();
        for r in &mut d.rotations {
            r.reverse();
        }
        for c in &mut d.crossings {
            c.ports.reverse();
        }
        d
    }

    pub fn edge_ids(&self) -> Vec<String> {
        self.edges.iter().map(|e| e.id.clone()).collect()
    }
}

/// Full validation of the file format document.
pub fn validate_raw(raw: &RawDrawing) -> ValidationReport {
    match Drawing::from_raw(raw) {
        Ok(d) => d.validate(),
        Err(v) => ValidationReport {
            violations: v,
            warnings: Vec::new(),
        },
    }
}

pub fn validate(d: &Drawing) -> ValidationReport {
    d.validate()
}

// ---------------------------------------------------------------------------
// planarization

/// Lexicographically minimal rotation of a cyclic sequence.
pub fn min_rotation<T: Ord + Clone>(xs: &[T]) -> Vec<T> {
    if xs.is_empty() {
        return Vec::new();
    }
    (0..xs.len())
        .map(|i| xs[i..].iter().chain(&xs[..i]).cloned().collect::<Vec<T>>())
        .min()
        .expect("non-empty")
}

/// Planarization of a drawing. Dart `2f` runs along fragment `f` from source
/// side to target side, dart `2f+1` backwards. Each face lies to the left of
/// its darts.
#[derive(Debug, Clone)]
pub struct PlanarMap {
    pub nv: usize,
    pub n_nodes: usize,
    pub frag_base: Vec<usize>,
    pub frag_edge: Vec<usize>,
    pub frag_idx: Vec<usize>,
    /// Path nodes at the source and target side of each fragment.
    pub frag_nodes: Vec<[usize; 2]>,
    /// Outgoing darts per node in clockwise order.
    pub out: Vec<Vec<usize>>,
    pub pos: Vec<usize>,
    pub face_of: Vec<usize>,
    pub faces: Vec<Vec<usize>>,
    pub keys: Vec<String>,
    pub node_comp: Vec<usize>,
    pub n_comp: usize,
    pub face_comp: Vec<usize>,
    /// Components that carry at least one dart.
    pub n_dart_comp: usize,
}

impl PlanarMap {
    /// Build without validating (the drawing must be well-formed).
    pub fn build(d: &Drawing) -> PlanarMap {
        Self::build_with(d, true)
    }

    /// Build without face keys (faces are then in traversal order).
    pub fn build_light(d: &Drawing) -> PlanarMap {
        Self::build_with(d, false)
    }

    pub fn build_with(d: &Drawing, with_keys: bool) -> PlanarMap {
        let nv = d.vertices.len();
        let n_nodes = nv + d.crossings.len();
        let mut frag_base = Vec::with_capacity(d.edges.len());
        let mut frag_edge = Vec::new();
        let mut frag_idx = Vec::new();
        let mut frag_nodes = Vec::new();
        for (e, edge) in d.edges.iter().enumerate() {
            frag_base.push(frag_edge.len());
            let mut path = vec![edge.s];
            path.extend(d.order[e].iter().map(|&c| nv + c));
            path.push(edge.t);
            for j in 0..path.len() - 1 {
                frag_edge.push(e);
                frag_idx.push(j);
                frag_nodes.push([path[j], path[j + 1]]);
            }
        }
        let nd = 2 * frag_edge.len();
        let mut out = vec![Vec::new(); n_nodes];
        for (v, rot) in d.rotations.iter().enumerate() {
            for &e in rot {
                let edge = &d.edges[e];
                let dart = if edge.s == v {
                    2 * frag_base[e]
                } else {
                    2 * (frag_base[e] + d.order[e].len()) + 1
                };
                out[v].push(dart);
            }
        }
        // position of each crossing on its edges
        let mut cpos: Vec<HashMap<usize, usize>> = vec![HashMap::new(); d.crossings.len()];
        for (e, l) in d.order.iter().enumerate() {
            for (i, &c) in l.iter().enumerate() {
                cpos[c].insert(e, i);
            }
        }
        for (c, x) in d.crossings.iter().enumerate() {
            for p in &x.ports {
                let i = cpos[c][&p.edge];
                let dart = if p.to == d.edges[p.edge].t {
                    2 * (frag_base[p.edge] + i + 1)
                } else {
                    2 * (frag_base[p.edge] + i) + 1
                };
                out[nv + c].push(dart);
            }
        }
        let mut pos = vec![0; nd];
        for o in &out {
            for (i, &dd) in o.iter().enumerate() {
                pos[dd] = i;
            }
        }
        let mut m = PlanarMap {
            nv,
            n_nodes,
            frag_base,
            frag_edge,
            frag_idx,
            frag_nodes,
            out,
            pos,
            face_of: vec![usize::MAX; nd],
            faces: Vec::new(),
            keys: Vec::new(),
            node_comp: Vec::new(),
            n_comp: 0,
            face_comp: Vec::new(),
            n_dart_comp: 0,
        };
        for start in 0..nd {
            if m.face_of[start] != usize::MAX {
                continue;
            }
            let fid = m.faces.len();
            let mut cyc = Vec::new();
            let mut dd = start;
            while m.face_of[dd] == usize::MAX {
                m.face_of[dd] = fid;
                cyc.push(dd);
                dd = m.next(dd);
            }
            m.faces.push(cyc);
        }
        // canonical rotation of each face and its key
        for f in 0..if with_keys { m.faces.len() } else { 0 } {
            let labels: Vec<String> = m.faces[f].iter().map(|&x| m.dart_label(d, x)).collect();
            let k = labels.len();
            let best = (0..k)
                .min_by(|&i, &j| {
                    let a = labels[i..].iter().chain(&labels[..i]);
                    let b = labels[j..].iter().chain(&labels[..j]);
                    a.cmp(b)
                })
                .unwrap_or(0);
            m.faces[f].rotate_left(best);
            m.keys
                .push(labels[best..].iter().chain(&labels[..best]).join(","));
        }
        // components
        let mut parent: Vec<usize> = (0..n_nodes).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let n = p[y];
                p[y] = r;
                y = n;
            }
            r
        }
        for fr in &m.frag_nodes {
            let (a, b) = (find(&mut parent, fr[0]), find(&mut parent, fr[1]));
            parent[a] = b;
        }
        let mut comp_id = HashMap::new();
        m.node_comp = (0..n_nodes)
            .map(|x| {
                let r = find(&mut parent, x);
                let next = comp_id.len();
                *comp_id.entry(r).or_insert(next)
            })
            .collect();
        m.n_comp = comp_id.len();
        m.face_comp = m.faces.iter().map(|c| m.node_comp[m.tail(c[0])]).collect();
        m.n_dart_comp = m.face_comp.iter().collect::<HashSet<_>>().len();
        m
    }

    pub fn n_frags(&self) -> usize {
        self.frag_edge.len()
    }

    pub fn n_darts(&self) -> usize {
        2 * self.frag_edge.len()
    }

    pub fn edge_of(&self, dart: usize) -> usize {
        self.frag_edge[dart / 2]
    }

    pub fn forward(dart: usize) -> bool {
        dart.is_multiple_of(2)
    }

    pub fn rev(dart: usize) -> usize {
        dart ^ 1
    }

    pub fn tail(&self, dart: usize) -> usize {
        self.frag_nodes[dart / 2][dart % 2]
    }

    pub fn head(&self, dart: usize) -> usize {
        self.frag_nodes[dart / 2][1 - dart % 2]
    }

    pub fn next(&self, dart: usize) -> usize {
        let r = dart ^ 1;
        let h = self.tail(r);
        let o = &self.out[h];
        o[(self.pos[r] + 1) % o.len()]
    }

    pub fn dart_label(&self, d: &Drawing, dart: usize) -> String {
        let f = dart / 2;
        format!(
            "{}#{}{}",
            d.edges[self.frag_edge[f]].id,
            self.frag_idx[f],
            if dart.is_multiple_of(2) { '+' } else { '-' }
        )
    }

    pub fn dart(&self, e: usize, frag: usize, forward: bool) -> usize {
        2 * (self.frag_base[e] + frag) + usize::from(!forward)
    }

    pub fn face_by_key(&self, key: &str) -> Option<usize> {
        self.keys.iter().position(|k| k == key)
    }

    pub fn is_vertex(&self, node: usize) -> bool {
        node < self.nv
    }

    /// Faces incident to a node.
    pub fn faces_at(&self, node: usize) -> Vec<usize> {
        self.out[node].iter().map(|&x| self.face_of[x]).collect()
    }

    /// Fragments per edge.
    pub fn frags_of(&self, e: usize) -> std::ops::Range<usize> {
        let start = self.frag_base[e];
        let end = self
            .frag_base
            .get(e + 1)
            .copied()
            .unwrap_or(self.frag_edge.len());
        start..end
    }
}

pub fn planarize(d: &Drawing) -> Result<PlanarMap> {
    d.ensure_valid()?;
    Ok(PlanarMap::build(d))
}

// ---------------------------------------------------------------------------
// subdrawings

/// Subdrawing on the kept edges (given as a mask); vertices are all kept.
pub fn induce_mask(d: &Drawing, keep: &[bool]) -> Drawing {
    let mut emap = vec![usize::MAX; d.edges.len()];
    let mut edges = Vec::new();
    for (i, e) in d.edges.iter().enumerate() {
        if keep[i] {
            emap[i] = edges.len();
            edges.push(e.clone());
        }
    }
    let mut cmap = vec![usize::MAX; d.crossings.len()];
    let mut crossings = Vec::new();
    for (i, c) in d.crossings.iter().enumerate() {
        if keep[c.edges[0]] && keep[c.edges[1]] {
            cmap[i] = crossings.len();
            let mut c2 = c.clone();
            c2.edges = [emap[c.edges[0]], emap[c.edges[1]]];
            for p in &mut c2.ports {
                p.edge = emap[p.edge];
            }
            crossings.push(c2);
        }
    }
    let order = (0..d.edges.len())
        .filter(|&e| keep[e])
        .map(|e| {
            d.order[e]
                .iter()
                .filter(|&&c| cmap[c] != usize::MAX)
                .map(|&c| cmap[c])
                .collect()
        })
        .collect();
    let rotations = d
        .rotations
        .iter()
        .map(|r| r.iter().filter(|&&e| keep[e]).map(|&e| emap[e]).collect())
        .collect();
    Drawing {
        name: d.name.clone(),
        partition: d.partition.clone(),
        vertices: d.vertices.clone(),
        edges,
        rotations,
        crossings,
        order,
    }
}

pub fn induce<S: AsRef<str>>(d: &Drawing, keep: &[S]) -> Result<Drawing> {
    Ok(induce_mask(d, &keep_mask(d, keep)?))
}

pub fn keep_mask<S: AsRef<str>>(d: &Drawing, keep: &[S]) -> Result<Vec<bool>> {
    let mut mask = vec![false; d.edges.len()];
    for id in keep {
        mask[d.edge_or_err(id.as_ref())?] = true;
    }
    Ok(mask)
}

/// Correspondence between the faces of a drawing and the cells of one of its
/// subdrawings.
#[derive(Debug, Clone)]
pub struct FaceClasses {
    pub sub: Drawing,
    pub sub_map: PlanarMap,
    /// Index of the kept edge in `sub`, or `usize::MAX`.
    pub emap: Vec<usize>,
    pub class_of_face: Vec<usize>,
    /// Cell key of each class in the subdrawing.
    pub class_key: Vec<String>,
}

impl FaceClasses {
    /// Compute classes for the planarization `m` of `d`.
    pub fn new(d: &Drawing, m: &PlanarMap, keep: &[bool]) -> FaceClasses {
        let sub = induce_mask(d, keep);
        let sub_map = PlanarMap::build(&sub);
        let mut emap = vec![usize::MAX; d.edges.len()];
        let mut k = 0;
        for e in 0..d.edges.len() {
            if keep[e] {
                emap[e] = k;
                k += 1;
            }
        }
        let nf = m.faces.len();
        let mut class_of_face = vec![usize::MAX; nf];
        let mut class_key = Vec::new();
        for f0 in 0..nf {
            if class_of_face[f0] != usize::MAX {
                continue;
            }
            let cid = class_key.len();
            let mut stack = vec![f0];
            class_of_face[f0] = cid;
            let mut sub_faces = BTreeSet::new();
            while let Some(f) = stack.pop() {
                for &dart in &m.faces[f] {
                    let e = m.edge_of(dart);
                    if keep[e] {
                        let sd = map_dart(d, m, &sub_map, &emap, dart);
                        sub_faces.insert(sub_map.face_of[sd]);
                    } else {
                        let g = m.face_of[dart ^ 1];
                        if class_of_face[g] == usize::MAX {
                            class_of_face[g] = cid;
                            stack.push(g);
                        }
                    }
                }
            }
            let key = if sub_faces.is_empty() {
                "*".to_string()
            } else {
                sub_faces
                    .iter()
                    .map(|&f| sub_map.keys[f].clone())
                    .sorted()
                    .join(" | ")
            };
            class_key.push(key);
        }
        FaceClasses {
            sub,
            sub_map,
            emap,
            class_of_face,
            class_key,
        }
    }

    pub fn key_of_face(&self, f: usize) -> &str {
        &self.class_key[self.class_of_face[f]]
    }
}

/// Map a dart of `d` on a kept edge to the containing dart of the subdrawing.
pub fn map_dart(d: &Drawing, m: &PlanarMap, sm: &PlanarMap, emap: &[usize], dart: usize) -> usize {
    let f = dart / 2;
    let e = m.frag_edge[f];
    let j = m.frag_idx[f];
    let kept_before = d.order[e][..j]
        .iter()
        .filter(|&&c| emap[d.crossings[c].other(e)] != usize::MAX)
        .count();
    2 * (sm.frag_base[emap[e]] + kept_before) + dart % 2
}

/// The cell of `induce(d, keep)` that contains face `f` of `d`.
pub fn locate<S: AsRef<str>>(d: &Drawing, keep: &[S], f: &str) -> Result<String> {
    let mask = keep_mask(d, keep)?;
    let m = PlanarMap::build(d);
    let fi = m
        .face_by_key(f)
        .ok_or_else(|| Error::UnknownFace(f.to_string()))?;
    let fc = FaceClasses::new(d, &m, &mask);
    Ok(fc.key_of_face(fi).to_string())
}

// ---------------------------------------------------------------------------
// canonical key

/// Crossing ids renamed by first appearance along the id-sorted edges.
fn canonical_crossing_names(d: &Drawing) -> Vec<usize> {
    let mut name = vec![usize::MAX; d.crossings.len()];
    let mut next = 0;
    for e in (0..d.edges.len()).sorted_by(|&a, &b| d.edges[a].id.cmp(&d.edges[b].id)) {
        for &c in &d.order[e] {
            if name[c] == usize::MAX {
                name[c] = next;
                next += 1;
            }
        }
    }
    name
}

/// Serialization that is equal exactly for strongly isomorphic labeled drawings.
pub fn canonical_key(d: &Drawing) -> String {
    let name = canonical_crossing_names(d);
    let lab = |v: usize| d.vertices[v].as_str();
    let mut s = String::new();
    s.push_str("V:");
    s.push_str(&d.vertices.iter().sorted().join(","));
    s.push_str(";E:");
    s.push_str(
        &d.edges
            .iter()
            .sorted_by(|a, b| a.id.cmp(&b.id))
            .map(|e| format!("{}={}>{}", e.id, lab(e.s), lab(e.t)))
            .join(","),
    );
    s.push_str(";R:");
    for v in (0..d.vertices.len()).sorted_by_key(|&v| lab(v)) {
        let ids: Vec<&str> = d.rotations[v]
            .iter()
            .map(|&e| d.edges[e].id.as_str())
            .collect();
        s.push_str(&format!("{}[{}]", lab(v), min_rotation(&ids).join(",")));
    }
    s.push_str(";O:");
    let mut xs: Vec<(usize, String)> = Vec::new();
    for e in (0..d.edges.len()).sorted_by(|&a, &b| d.edges[a].id.cmp(&d.edges[b].id)) {
        s.push_str(&format!(
            "{}[{}]",
            d.edges[e].id,
            d.order[e].iter().map(|&c| name[c].to_string()).join(",")
        ));
    }
    for (c, x) in d.crossings.iter().enumerate() {
        let ports: Vec<String> = x
            .ports
            .iter()
            .map(|p| format!("{}>{}", d.edges[p.edge].id, lab(p.to)))
            .collect();
        xs.push((name[c], min_rotation(&ports).join(",")));
    }
    xs.sort();
    s.push_str(";X:");
    s.push_str(&xs.iter().map(|(n, p)| format!("{n}[{p}]")).join(","));
    s
}

/// Compact state signature for drawings that share graph and crossing set:
/// per id-sorted edge, the ranks of the crossed edges in order.
pub fn order_signature(d: &Drawing) -> Vec<u16> {
    let sorted: Vec<usize> = (0..d.edges.len())
        .sorted_by(|&a, &b| d.edges[a].id.cmp(&d.edges[b].id))
        .collect();
    let mut rank = vec![0u16; d.edges.len()];
    for (r, &e) in sorted.iter().enumerate() {
        rank[e] = r as u16;
    }
    let mut sig = Vec::with_capacity(2 * d.crossings.len() + d.edges.len());
    for &e in &sorted {
        for &c in &d.order[e] {
            sig.push(rank[d.crossings[c].other(e)]);
        }
        sig.push(u16::MAX);
    }
    sig
}
