//! Flip sequences between two same-ERS drawings of a complete multipartite
//! graph, built edge by edge with lens removal.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::core::{
    canonical_key, induce, induce_mask, Drawing, Edge, FaceClasses, PlanarMap, Port,
};
use crate::error::{Error, Result};
use crate::ers::ers_of;
use crate::flips::{flip_in_place, raw_tricells, FlipRecord, FlipSequence};
use crate::graphs::{edge_order, is_complete_multipartite, Graph, Multipartite};

const TIP: &str = "~tip";
const SWEEP_CAP: usize = 1_000_000;

fn invariant(msg: impl Into<String>) -> Error {
    Error::Invariant(msg.into())
}

/// Host drawing `D[X]` together with `e`'s curve `e1` and the routed curve
/// `e2` (a virtual edge).
#[derive(Debug, Clone)]
pub struct Overlay {
    pub drawing: Drawing,
    pub e1: usize,
    pub e2: usize,
    /// Endpoint where `e2` starts and the one where it ends.
    pub start: usize,
    pub end: usize,
}

impl Overlay {
    pub fn is_host(&self, e: usize) -> bool {
        e != self.e1 && e != self.e2
    }

    /// Number of crossings between `e1` and `e2`.
    pub fn intersections(&self) -> usize {
        self.drawing.order[self.e1]
            .iter()
            .filter(|&&c| self.drawing.crossings[c].involves(self.e2))
            .count()
    }

    fn gamma_mask(&self) -> Vec<bool> {
        (0..self.drawing.edges.len())
            .map(|e| !self.is_host(e))
            .collect()
    }

    /// `H ∪ e2` with `e2` renamed to the real edge, oriented canonically.
    pub fn target_view(&self) -> Drawing {
        let keep: Vec<bool> = (0..self.drawing.edges.len())
            .map(|e| e != self.e1)
            .collect();
        let mut v = induce_mask(&self.drawing, &keep);
        let k = v
            .edges
            .iter()
            .position(|e| e.id.starts_with('~'))
            .expect("virtual edge");
        v.edges[k].id = self.drawing.edges[self.e1].id.clone();
        v.normalize_orientation();
        v
    }
}

/// Count of host crossings on `edge` before fragment `frag`.
fn host_index(ov: &Overlay, edge: usize, frag: usize) -> usize {
    let d = &ov.drawing;
    d.order[edge][..frag]
        .iter()
        .filter(|&&c| ov.is_host(d.crossings[c].other(edge)))
        .count()
}

/// Let the tip of `e2` cross the fragment under `dart` from its left side.
fn extend(ov: &mut Overlay, dart: usize, m: &PlanarMap) {
    let d = &mut ov.drawing;
    let h = m.edge_of(dart);
    let j = m.frag_idx[dart / 2];
    let tip = d.edges[ov.e2].t;
    let (toward_head, toward_tail) = if PlanarMap::forward(dart) {
        (d.edges[h].t, d.edges[h].s)
    } else {
        (d.edges[h].s, d.edges[h].t)
    };
    let id = format!("~x{}", d.crossings.len());
    let c = d.crossings.len();
    d.crossings.push(crate::core::Crossing {
        id,
        edges: [ov.e2, h],
        ports: [
            Port {
                edge: ov.e2,
                to: tip,
            },
            Port {
                edge: h,
                to: toward_tail,
            },
            Port {
                edge: ov.e2,
                to: ov.start,
            },
            Port {
                edge: h,
                to: toward_head,
            },
        ],
    });
    d.order[h].insert(j, c);
    d.order[ov.e2].push(c);
}

/// Breadth-first search in the dual from `from` to any face in `goal`,
/// crossing only fragments of `e1`. Returns the first dart to cross, or
/// `None` when `from` is already a goal.
fn first_step(ov: &Overlay, m: &PlanarMap, from: usize, goal: &[bool]) -> Result<Option<usize>> {
    if goal[from] {
        return Ok(None);
    }
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; m.faces.len()];
    let mut seen = vec![false; m.faces.len()];
    seen[from] = true;
    let mut q = VecDeque::from([from]);
    while let Some(f) = q.pop_front() {
        for &x in &m.faces[f] {
            if m.edge_of(x) != ov.e1 {
                continue;
            }
            let g = m.face_of[x ^ 1];
            if seen[g] {
                continue;
            }
            seen[g] = true;
            parent[g] = Some((f, x));
            if goal[g] {
                let mut cur = g;
                loop {
                    let (p, dart) = parent[cur].expect("path");
                    if p == from {
                        return Ok(Some(dart));
                    }
                    cur = p;
                }
            }
            q.push_back(g);
        }
    }
    Err(invariant(
        "routing blocked: no face sequence reaches the target",
    ))
}

fn tip_face(ov: &Overlay, m: &PlanarMap) -> usize {
    let tip = ov.drawing.edges[ov.e2].t;
    m.face_of[m.out[tip][0]]
}

/// Route a copy of `e` through `D[X]` that crosses the host exactly as `e`
/// does in `D2`, then returns the overlay `D[X ∪ e] ∪ e2`.
pub fn route_target(d: &Drawing, x: &[String], e: &str, d2: &Drawing) -> Result<Overlay> {
    let ei = d.edge(e).ok_or_else(|| Error::EdgeMissing(e.to_string()))?;
    d2.edge(e)
        .ok_or_else(|| Error::EdgeMissing(e.to_string()))?;
    if canonical_key(&induce(d, x)?) != canonical_key(&induce(d2, x)?) {
        return Err(Error::NotIsomorphicPrefix(format!("before adding {e}")));
    }
    let mut keep = x.to_vec();
    keep.push(e.to_string());
    let mut hd = induce(d, &keep)?;
    let target = induce(d2, &keep)?;
    let e1 = hd.edge(e).expect("kept");
    let te = target.edge(e).expect("kept");
    let _ = ei;
    let deg_h =
        |dd: &Drawing, v: usize, ee: usize| dd.rotations[v].iter().filter(|&&f| f != ee).count();
    let (a, b) = (hd.edges[e1].s, hd.edges[e1].t);
    let (start, end) = if deg_h(&hd, a, e1) == 0 || deg_h(&hd, b, e1) != 0 {
        (a, b)
    } else {
        (b, a)
    };
    let start_t = target.vertex(&hd.vertices[start]).expect("same vertices");
    let end_t = target.vertex(&hd.vertices[end]).expect("same vertices");

    // crossing plan along e in the target, walking from `start`
    let mut path = target.order[te].clone();
    if target.edges[te].s != start_t {
        path.reverse();
    }
    let mut plan = Vec::new();
    for &c in &path {
        let x = &target.crossings[c];
        let h = x.other(te);
        let k = target.position(c, h).expect("on h");
        let j = x
            .ports
            .iter()
            .position(|p| p.edge == h && p.to == target.edges[h].t)
            .expect("port");
        let left = x.ports[(j + 3) % 4];
        plan.push((
            target.edges[h].id.clone(),
            k,
            left == Port {
                edge: te,
                to: start_t,
            },
        ));
    }

    // virtual edge with a tip vertex next to e1 at the start
    let tip = hd.vertices.len();
    hd.vertices.push(TIP.to_string());
    let e2 = hd.edges.len();
    hd.edges.push(Edge {
        id: format!("~{e}"),
        s: start,
        t: tip,
    });
    hd.order.push(Vec::new());
    hd.rotations.push(vec![e2]);
    let p = hd.rotations[start]
        .iter()
        .position(|&f| f == e1)
        .expect("e1 at start");
    hd.rotations[start].insert(p + 1, e2);
    let mut ov = Overlay {
        drawing: hd,
        e1,
        e2,
        start,
        end,
    };

    for (hid, k, tip_left) in plan {
        let h = ov.drawing.edge(&hid).expect("host edge");
        loop {
            let m = PlanarMap::build_light(&ov.drawing);
            let mut goal = vec![false; m.faces.len()];
            let mut goal_dart = vec![usize::MAX; m.faces.len()];
            for fr in m.frags_of(h) {
                if host_index(&ov, h, m.frag_idx[fr]) != k {
                    continue;
                }
                let dart = 2 * fr + usize::from(!tip_left);
                let f = m.face_of[dart];
                if !goal[f] {
                    goal[f] = true;
                    goal_dart[f] = dart;
                }
            }
            let tf = tip_face(&ov, &m);
            match first_step(&ov, &m, tf, &goal)? {
                None => {
                    extend(&mut ov, goal_dart[tf], &m);
                    break;
                }
                Some(dart) => extend(&mut ov, dart, &m),
            }
        }
    }

    // close at the end vertex inside the wedge e occupies in the target
    let trot = &target.rotations[end_t];
    let tp = trot.iter().position(|&f| f == te).expect("e at end");
    let pred = target.edges[trot[(tp + trot.len() - 1) % trot.len()]]
        .id
        .clone();
    let succ = target.edges[trot[(tp + 1) % trot.len()]].id.clone();
    loop {
        let m = PlanarMap::build_light(&ov.drawing);
        let rot = &ov.drawing.rotations[end];
        let n = rot.len();
        let mut goal = vec![false; m.faces.len()];
        let mut corner = vec![usize::MAX; m.faces.len()];
        for i in 0..n {
            let (o1, o2) = (rot[i], rot[(i + 1) % n]);
            let id1 = &ov.drawing.edges[o1].id;
            let id2 = &ov.drawing.edges[o2].id;
            let ok = n == 1 || (*id1 == pred && o2 == e1) || (o1 == e1 && *id2 == succ);
            if ok {
                let f = m.face_of[m.out[end][(i + 1) % n]];
                if !goal[f] {
                    goal[f] = true;
                    corner[f] = i;
                }
            }
        }
        let tf = tip_face(&ov, &m);
        match first_step(&ov, &m, tf, &goal)? {
            Some(dart) => extend(&mut ov, dart, &m),
            None => {
                let i = corner[tf];
                let dd = &mut ov.drawing;
                dd.rotations[end].insert(i + 1, e2);
                dd.edges[e2].t = end;
                for c in &mut dd.crossings {
                    for p in &mut c.ports {
                        if p.to == tip {
                            p.to = end;
                        }
                    }
                }
                dd.vertices.pop();
                dd.rotations.pop();
                break;
            }
        }
    }
    if canonical_key(&ov.target_view()) != canonical_key(&target) {
        return Err(invariant(format!(
            "routed copy of {e} does not reproduce the target"
        )));
    }
    Ok(ov)
}

/// A two-sided cell of `e1 ∪ e2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lens {
    /// Face key in the two-edge subdrawing.
    pub key: String,
    /// Fragment index of its `e1` side.
    pub e1_frag: usize,
    pub free: bool,
}

pub fn lenses(ov: &Overlay) -> Vec<Lens> {
    let d = &ov.drawing;
    let m = PlanarMap::build_light(d);
    let fc = FaceClasses::new(d, &m, &ov.gamma_mask());
    let (sub, sm) = (&fc.sub, &fc.sub_map);
    let se1 = fc.emap[ov.e1];
    // cells holding a vertex of the host (other than the endpoints of e)
    let mut stabbed = std::collections::HashSet::new();
    for v in 0..d.vertices.len() {
        if v == ov.start || v == ov.end || m.out[v].is_empty() {
            continue;
        }
        stabbed.insert(fc.key_of_face(m.face_of[m.out[v][0]]).to_string());
    }
    let mut out = Vec::new();
    for (f, cyc) in sm.faces.iter().enumerate() {
        if cyc.len() != 2 || sm.edge_of(cyc[0]) == sm.edge_of(cyc[1]) {
            continue;
        }
        let x = if sm.edge_of(cyc[0]) == se1 {
            cyc[0]
        } else {
            cyc[1]
        };
        let _ = sub;
        out.push(Lens {
            key: sm.keys[f].clone(),
            e1_frag: sm.frag_idx[x / 2],
            free: !stabbed.contains(&sm.keys[f]),
        });
    }
    out.sort_by(|a, b| (a.e1_frag, &a.key).cmp(&(b.e1_frag, &b.key)));
    out
}

pub fn find_free_lens(ov: &Overlay) -> Result<Lens> {
    lenses(ov)
        .into_iter()
        .find(|l| l.free)
        .ok_or_else(|| Error::NoFreeLens(format!("edge {}", ov.drawing.edges[ov.e1].id)))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SweepStats {
    /// Edges crossing the triangle initially.
    pub xi: usize,
    pub flips: usize,
}

/// The crossing triangle of a triple: the class of faces of `d` forming it.
fn triangle_class(d: &Drawing, m: &PlanarMap, mask: &[bool]) -> Result<(FaceClasses, String)> {
    let fc = FaceClasses::new(d, m, mask);
    let ts = raw_tricells(&fc.sub, &fc.sub_map);
    if ts.len() != 1 {
        return Err(Error::NotACrossingTriangle(format!(
            "{} triangular cells",
            ts.len()
        )));
    }
    let key = fc.sub_map.keys[ts[0].face].clone();
    Ok((fc, key))
}

fn mask_of(d: &Drawing, edges: &[usize]) -> Vec<bool> {
    let mut m = vec![false; d.edges.len()];
    for &e in edges {
        m[e] = true;
    }
    m
}

fn flip_face(d: &mut Drawing, m: &PlanarMap, face: usize, out: &mut FlipSequence) -> Result<()> {
    let t = raw_tricells(d, m)
        .into_iter()
        .find(|t| t.face == face)
        .ok_or_else(|| invariant("face is not a tricell"))?;
    out.flips.push(FlipRecord::of(d, &t));
    flip_in_place(d, t.edges, t.crossings)
}

/// Sweep every edge out of the crossing triangle of `triple` so that it
/// becomes a cell.
pub fn empty_triangle(d: &Drawing, triple: &[String; 3]) -> Result<(Drawing, FlipSequence)> {
    empty_triangle_with_stats(d, triple).map(|(d, s, _)| (d, s))
}

pub fn empty_triangle_with_stats(
    d: &Drawing,
    triple: &[String; 3],
) -> Result<(Drawing, FlipSequence, SweepStats)> {
    let mut d = d.clone();
    let t: Vec<usize> = triple
        .iter()
        .map(|s| d.edge_or_err(s))
        .collect::<Result<_>>()?;
    let cm = d.crossing_map();
    let cross = |a: usize, b: usize| cm.get(&(a.min(b), a.max(b))).copied();
    for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
        if cross(a, b).is_none() {
            return Err(Error::NotACrossingTriangle(format!(
                "{} and {} do not cross",
                d.edges[a].id, d.edges[b].id
            )));
        }
    }
    let mask = mask_of(&d, &t);
    let mut seq = FlipSequence::default();
    let mut stats = SweepStats::default();
    let mut first = true;
    loop {
        let m = PlanarMap::build_light(&d);
        let (fc, key) = triangle_class(&d, &m, &mask)?;
        let inside: Vec<bool> = (0..m.faces.len())
            .map(|f| fc.key_of_face(f) == key)
            .collect();
        if first {
            for v in 0..m.nv {
                if m.out[v].iter().any(|&x| inside[m.face_of[x]]) {
                    return Err(Error::VertexInsideTriangle(d.vertices[v].clone()));
                }
            }
        }
        // edges through the triangle with the two sides they cross
        let mut xi: Vec<(usize, usize, usize)> = Vec::new();
        for e in 0..d.edges.len() {
            if mask[e] {
                continue;
            }
            let frs: Vec<usize> = m
                .frags_of(e)
                .filter(|&fr| inside[m.face_of[2 * fr]])
                .collect();
            if frs.is_empty() {
                continue;
            }
            if frs.windows(2).any(|w| w[1] != w[0] + 1) {
                return Err(Error::NotACrossingTriangle(format!(
                    "{} enters twice",
                    d.edges[e].id
                )));
            }
            let (n0, n1) = (
                m.frag_nodes[frs[0]][0],
                m.frag_nodes[*frs.last().expect("non-empty")][1],
            );
            if n0 < m.nv || n1 < m.nv {
                return Err(Error::VertexInsideTriangle(d.edges[e].id.clone()));
            }
            let s0 = d.crossings[n0 - m.nv].other(e);
            let s1 = d.crossings[n1 - m.nv].other(e);
            if !mask[s0] || !mask[s1] || s0 == s1 {
                return Err(Error::NotACrossingTriangle(format!(
                    "{} does not cut two sides",
                    d.edges[e].id
                )));
            }
            xi.push((e, s0, s1));
        }
        if first {
            stats.xi = xi.len();
            first = false;
        }
        if xi.is_empty() {
            let n_in = inside.iter().filter(|&&b| b).count();
            if n_in != 1 {
                return Err(invariant("emptied triangle is not a single cell"));
            }
            break;
        }
        let pairs = [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])];
        let (a, b) = pairs
            .into_iter()
            .find(|&(a, b)| {
                xi.iter()
                    .any(|&(_, s0, s1)| (s0 == a && s1 == b) || (s0 == b && s1 == a))
            })
            .expect("some side pair is used");
        let xab = cross(a, b).expect("sides cross");
        let pa = d.position(xab, a).expect("on a") as i64;
        let eta = xi
            .iter()
            .filter(|&&(_, s0, s1)| (s0 == a && s1 == b) || (s0 == b && s1 == a))
            .map(|&(e, _, _)| e)
            .min_by_key(|&e| {
                let c = d.crossing_map()[&(e.min(a), e.max(a))];
                ((d.position(c, a).expect("on a") as i64 - pa).abs(), e)
            })
            .expect("non-empty");
        stats.flips += sweep(&mut d, eta, a, b, &mut seq)?;
    }
    Ok((d, seq, stats))
}

/// Move `eta` over the corner of `a` and `b`, flipping every cell inside the
/// corner triangle adjacent to `eta` first.
fn sweep(d: &mut Drawing, eta: usize, a: usize, b: usize, seq: &mut FlipSequence) -> Result<usize> {
    let mask = mask_of(d, &[eta, a, b]);
    for flips in 0..SWEEP_CAP {
        let m = PlanarMap::build_light(d);
        let (fc, key) = triangle_class(d, &m, &mask)?;
        let inside: Vec<usize> = (0..m.faces.len())
            .filter(|&f| fc.key_of_face(f) == key)
            .collect();
        let ts = raw_tricells(d, &m);
        if inside.len() == 1 {
            flip_face(d, &m, inside[0], seq)?;
            return Ok(flips + 1);
        }
        let cm = d.crossing_map();
        let ea = cm[&(eta.min(a), eta.max(a))];
        let pa = d.position(ea, eta).expect("on eta") as i64;
        let best = ts
            .iter()
            .filter(|t| inside.contains(&t.face) && t.edges.contains(&eta))
            .min_by_key(|t| {
                let x = m.faces[t.face]
                    .iter()
                    .find(|&&x| m.edge_of(x) == eta)
                    .expect("eta side");
                let j = m.frag_idx[x / 2] as i64;
                ((j - pa).abs().min((j - 1 - pa).abs()), t.face)
            })
            .ok_or_else(|| invariant("no cell next to the sweeping edge"))?;
        let face = best.face;
        flip_face(d, &m, face, seq)?;
    }
    Err(invariant("sweep did not terminate"))
}

fn remove_crossings(d: &mut Drawing, gone: &[usize]) {
    let mut map = vec![usize::MAX; d.crossings.len()];
    let mut kept = Vec::new();
    for (i, c) in std::mem::take(&mut d.crossings).into_iter().enumerate() {
        if !gone.contains(&i) {
            map[i] = kept.len();
            kept.push(c);
        }
    }
    d.crossings = kept;
    for l in &mut d.order {
        *l = l
            .iter()
            .filter(|&&c| map[c] != usize::MAX)
            .map(|&c| map[c])
            .collect();
    }
}

/// Flip host crossings out of a free lens until it holds none; flips are
/// applied to `d` and mirrored in the overlay.
pub fn clear_lens(
    d: &mut Drawing,
    ov: &mut Overlay,
    lens: &Lens,
    sweeps: &mut Vec<SweepStats>,
) -> Result<FlipSequence> {
    let mut seq = FlipSequence::default();
    let e_id = ov.drawing.edges[ov.e1].id.clone();
    loop {
        let od = &ov.drawing;
        let m = PlanarMap::build_light(od);
        let fc = FaceClasses::new(od, &m, &ov.gamma_mask());
        let mut best: Option<(usize, usize, usize)> = None;
        for (f, cyc) in m.faces.iter().enumerate() {
            if cyc.len() != 3 || fc.key_of_face(f) != lens.key {
                continue;
            }
            if cyc.iter().any(|&x| m.is_vertex(m.tail(x))) {
                continue;
            }
            let es: Vec<usize> = cyc.iter().map(|&x| m.edge_of(x)).collect();
            let Some(k) = es.iter().position(|&e| e == ov.e1) else {
                continue;
            };
            let (p, q) = (es[(k + 1) % 3], es[(k + 2) % 3]);
            if !(ov.is_host(p) && ov.is_host(q)) || p == q {
                continue;
            }
            let j = m.frag_idx[cyc[k] / 2];
            if best.is_none_or(|b| j < b.0) {
                best = Some((j, p, q));
            }
        }
        let Some((_, p, q)) = best else { break };
        let triple = [od.edges[p].id.clone(), od.edges[q].id.clone(), e_id.clone()];
        let (nd, s, st) = empty_triangle_with_stats(d, &triple)?;
        *d = nd;
        seq.flips.extend(s.flips);
        sweeps.push(st);
        // flip the emptied triangle in both drawings
        let dm = PlanarMap::build_light(d);
        let mut want: Vec<usize> = triple.iter().map(|s| d.edge(s).expect("edge")).collect();
        want.sort();
        let t = raw_tricells(d, &dm)
            .into_iter()
            .find(|t| {
                let mut es = t.edges.to_vec();
                es.sort();
                es == want
            })
            .ok_or_else(|| invariant("emptied triangle is not a tricell"))?;
        let rec = FlipRecord::of(d, &t);
        flip_in_place(d, t.edges, t.crossings)?;
        let oe = rec
            .edges
            .clone()
            .map(|s| ov.drawing.edge(&s).expect("overlay edge"));
        let ox = rec
            .crossings
            .clone()
            .map(|s| ov.drawing.crossing(&s).expect("overlay crossing"));
        flip_in_place(&mut ov.drawing, oe, ox)?;
        seq.flips.push(rec);
    }
    // no host crossing may remain inside
    let od = &ov.drawing;
    let m = PlanarMap::build_light(od);
    let fc = FaceClasses::new(od, &m, &ov.gamma_mask());
    for n in m.nv..m.n_nodes {
        let c = &od.crossings[n - m.nv];
        if ov.is_host(c.edges[0])
            && ov.is_host(c.edges[1])
            && m.out[n]
                .iter()
                .any(|&x| fc.key_of_face(m.face_of[x]) == lens.key)
        {
            return Err(invariant("host crossing left inside a cleared lens"));
        }
    }
    Ok(seq)
}

/// Replace the `e2` side of an empty lens by a copy of its `e1` side.
pub fn reroute(ov: &mut Overlay, lens: &Lens) -> Result<()> {
    let od = &ov.drawing;
    let m = PlanarMap::build_light(od);
    let fc = FaceClasses::new(od, &m, &ov.gamma_mask());
    let sm = &fc.sub_map;
    let f = sm
        .face_by_key(&lens.key)
        .ok_or_else(|| invariant("lens vanished"))?;
    let se1 = fc.emap[ov.e1];
    let x = *sm.faces[f]
        .iter()
        .find(|&&x| sm.edge_of(x) == se1)
        .ok_or_else(|| invariant("lens without e1"))?;
    let corner = |node: usize| -> std::result::Result<usize, usize> {
        if node < sm.nv {
            Err(node)
        } else {
            Ok(od
                .crossing(&fc.sub.crossings[node - sm.nv].id)
                .expect("overlay crossing"))
        }
    };
    let ends = [
        corner(sm.frag_nodes[x / 2][0]),
        corner(sm.frag_nodes[x / 2][1]),
    ];
    let ord = &od.order[ov.e1];
    let lo = match ends[0] {
        Ok(c) => od.position(c, ov.e1).expect("on e1") as i64,
        Err(_) => -1,
    };
    let hi = match ends[1] {
        Ok(c) => od.position(c, ov.e1).expect("on e1") as i64,
        Err(_) => ord.len() as i64,
    };
    let strands: Vec<usize> = ord[(lo + 1) as usize..hi as usize].to_vec();
    let mut swaps = Vec::new();
    for c in strands {
        let h = od.crossings[c].other(ov.e1);
        if !ov.is_host(h) {
            return Err(invariant("lens side crosses e2"));
        }
        let y = od.order[h]
            .iter()
            .copied()
            .find(|&y| od.crossings[y].involves(ov.e2))
            .ok_or_else(|| invariant("strand leaves lens without meeting e2"))?;
        let (i, j) = (
            od.position(c, h).expect("on h"),
            od.position(y, h).expect("on h"),
        );
        if i.abs_diff(j) != 1 {
            return Err(invariant("strand not parallel across lens"));
        }
        swaps.push((h, i, j));
    }
    let mut gone = Vec::new();
    let mut rot_swaps = Vec::new();
    for end in ends {
        match end {
            Ok(c) => gone.push(c),
            Err(w) => rot_swaps.push(w),
        }
    }
    if gone.is_empty() {
        return Err(invariant("reroute needs a crossing corner"));
    }
    let od = &mut ov.drawing;
    for (h, i, j) in swaps {
        od.order[h].swap(i, j);
    }
    for w in rot_swaps {
        let r = &mut od.rotations[w];
        let (i, j) = (
            r.iter().position(|&e| e == ov.e1).expect("e1"),
            r.iter().position(|&e| e == ov.e2).expect("e2"),
        );
        let n = r.len();
        if (i + 1) % n != j && (j + 1) % n != i {
            return Err(invariant("lens corner wedge is not empty"));
        }
        r.swap(i, j);
    }
    remove_crossings(od, &gone);
    Ok(())
}

/// Clear a free lens and, unless `e1` and `e2` were disjoint, reroute `e2`
/// across it.
pub fn resolve_lens(
    d: &Drawing,
    o: &Overlay,
    l: &Lens,
) -> Result<(Drawing, Overlay, FlipSequence)> {
    let (mut d, mut o) = (d.clone(), o.clone());
    let seq = clear_lens(&mut d, &mut o, l, &mut Vec::new())?;
    if o.intersections() > 0 {
        reroute(&mut o, l)?;
    }
    Ok((d, o, seq))
}

/// Per routed edge measurements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeStats {
    pub edge: String,
    /// Vertices of the host drawing `D[X]` before adding the edge.
    pub host_vertices: usize,
    /// `|e1 ∩ e2|` after routing, then after each lens removal.
    pub intersections: Vec<usize>,
    pub flips: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TransformStats {
    pub edges: Vec<EdgeStats>,
    pub sweeps: Vec<SweepStats>,
    pub total_flips: usize,
}

#[derive(Debug, Clone)]
pub struct TransformOutcome {
    pub sequence: FlipSequence,
    pub stats: TransformStats,
    pub result: Drawing,
}

fn vertex_count(d: &Drawing, x: &[String]) -> usize {
    let mut vs = std::collections::BTreeSet::new();
    for id in x {
        let e = &d.edges[d.edge(id).expect("edge")];
        vs.insert(e.s);
        vs.insert(e.t);
    }
    vs.len()
}

/// The cell of `D[X]` holding vertex `v` must be the same in both drawings.
fn check_vertex_cell(d: &Drawing, d2: &Drawing, x: &[String], v: &str) -> Result<()> {
    let cell = |dd: &Drawing| -> Result<String> {
        let m = PlanarMap::build_light(dd);
        let vi = dd.vertex(v).expect("vertex");
        let mask = crate::core::keep_mask(dd, x)?;
        let fc = FaceClasses::new(dd, &m, &mask);
        Ok(fc.key_of_face(m.face_of[m.out[vi][0]]).to_string())
    };
    if cell(d)? != cell(d2)? {
        return Err(invariant(format!(
            "vertex {v} sits in different cells of the prefix"
        )));
    }
    Ok(())
}

pub fn transform(d1: &Drawing, d2: &Drawing) -> Result<FlipSequence> {
    Ok(transform_with_stats(d1, d2)?.sequence)
}

pub fn transform_with_stats(d1: &Drawing, d2: &Drawing) -> Result<TransformOutcome> {
    d1.same_graph(d2)?;
    d1.ensure_valid()?;
    d2.ensure_valid()?;
    if !d1.is_connected() || !d2.is_connected() {
        return Err(Error::Disconnected);
    }
    let g = Graph::of(d1);
    let p = match is_complete_multipartite(&g) {
        Multipartite::Partition(p) => p,
        Multipartite::Witness { edge, vertex } => {
            return Err(Error::NotCompleteMultipartite(format!(
                "{vertex} misses both ends of {edge}"
            )))
        }
    };
    let ers = ers_of(d1);
    if ers != ers_of(d2) {
        return Err(Error::ErsMismatch);
    }
    let eo = edge_order(&g, &p)?;
    let mut d = d1.clone();
    let mut seq = FlipSequence::default();
    let mut stats = TransformStats::default();
    let star = &eo.order[..eo.star_len];
    if canonical_key(&induce(&d, star)?) != canonical_key(&induce(d2, star)?) {
        return Err(invariant("initial stars differ"));
    }
    let mut touched: std::collections::HashSet<String> = std::collections::HashSet::new();
    for id in star {
        let e = &d.edges[d.edge(id).expect("edge")];
        touched.insert(d.vertices[e.s].clone());
        touched.insert(d.vertices[e.t].clone());
    }
    for i in eo.star_len..eo.order.len() {
        let x = &eo.order[..i];
        let e = &eo.order[i];
        let edge = &d.edges[d.edge(e).expect("edge")];
        for v in [d.vertices[edge.s].clone(), d.vertices[edge.t].clone()] {
            if !touched.contains(&v) {
                check_vertex_cell(&d, d2, x, &v)?;
                touched.insert(v);
            }
        }
        let keep = &eo.order[..=i];
        if canonical_key(&induce(&d, keep)?) == canonical_key(&induce(d2, keep)?) {
            continue;
        }
        let mut ov = route_target(&d, x, e, d2)?;
        let mut es = EdgeStats {
            edge: e.clone(),
            host_vertices: vertex_count(&d, x),
            intersections: vec![ov.intersections()],
            flips: 0,
        };
        loop {
            let n = ov.intersections();
            let lens = find_free_lens(&ov)?;
            let s = clear_lens(&mut d, &mut ov, &lens, &mut stats.sweeps)?;
            es.flips += s.len();
            seq.flips.extend(s.flips);
            if n == 0 {
                break;
            }
            reroute(&mut ov, &lens)?;
            let after = ov.intersections();
            if after >= n {
                return Err(invariant("lens removal did not reduce intersections"));
            }
            es.intersections.push(after);
            let target = induce(d2, keep)?;
            if canonical_key(&ov.target_view()) != canonical_key(&target) {
                return Err(invariant("rerouted copy drifted from the target"));
            }
        }
        if canonical_key(&induce(&d, keep)?) != canonical_key(&induce(d2, keep)?) {
            return Err(invariant(format!("prefix through {e} still differs")));
        }
        stats.edges.push(es);
    }
    if canonical_key(&d) != canonical_key(d2) {
        return Err(invariant("final drawing differs from the target"));
    }
    if ers_of(&d) != ers {
        return Err(invariant("extended rotation system changed"));
    }
    stats.total_flips = seq.len();
    Ok(TransformOutcome {
        sequence: seq,
        stats,
        result: d,
    })
}

/// Group sweep statistics by triangle load.
pub fn sweep_table(sweeps: &[SweepStats]) -> HashMap<usize, usize> {
    let mut t = HashMap::new();
    for s in sweeps {
        let e = t.entry(s.xi).or_insert(0);
        *e = (*e).max(s.flips);
    }
    t
}
