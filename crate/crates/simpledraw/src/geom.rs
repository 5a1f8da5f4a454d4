//! Exact integer geometry: polyline drawings to combinatorial drawings.

use std::collections::{HashMap, HashSet};

use num_rational::Ratio;

use crate::core::{Crossing, Drawing, Edge, Port};
use crate::error::{Error, Result};

pub type Pt = (i64, i64);
type Q = Ratio<i128>;

pub fn orient(a: Pt, b: Pt, c: Pt) -> i128 {
    let (ax, ay, bx, by, cx, cy) = (
        a.0 as i128,
        a.1 as i128,
        b.0 as i128,
        b.1 as i128,
        c.0 as i128,
        c.1 as i128,
    );
    (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
}

fn cross(u: Pt, v: Pt) -> i128 {
    u.0 as i128 * v.1 as i128 - u.1 as i128 * v.0 as i128
}

fn dot(u: Pt, v: Pt) -> i128 {
    u.0 as i128 * v.0 as i128 + u.1 as i128 * v.1 as i128
}

fn sub(a: Pt, b: Pt) -> Pt {
    (a.0 - b.0, a.1 - b.1)
}

fn on_segment(a: Pt, b: Pt, p: Pt) -> bool {
    orient(a, b, p) == 0
        && p.0 >= a.0.min(b.0)
        && p.0 <= a.0.max(b.0)
        && p.1 >= a.1.min(b.1)
        && p.1 <= a.1.max(b.1)
}

/// Counterclockwise angular comparison of direction vectors.
fn ccw_cmp(a: Pt, b: Pt) -> std::cmp::Ordering {
    let half = |d: Pt| {
        if d.1 > 0 || (d.1 == 0 && d.0 > 0) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&cross(a, b)))
}

/// Sort directions clockwise; returns the permutation.
pub fn clockwise(dirs: &[Pt]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..dirs.len()).collect();
    idx.sort_by(|&i, &j| ccw_cmp(dirs[i], dirs[j]));
    idx.reverse();
    idx
}

enum Meet {
    None,
    Proper { t: Q, u: Q },
    Touch,
}

fn meet(p1: Pt, p2: Pt, q1: Pt, q2: Pt) -> Meet {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)) {
        return Meet::Proper {
            t: Q::new(d1, d1 - d2),
            u: Q::new(d3, d3 - d4),
        };
    }
    if on_segment(q1, q2, p1)
        || on_segment(q1, q2, p2)
        || on_segment(p1, p2, q1)
        || on_segment(p1, p2, q2)
    {
        return Meet::Touch;
    }
    Meet::None
}

/// A drawing given by vertex positions and polyline edges.
#[derive(Debug, Clone, Default)]
pub struct PolyDrawing {
    pub name: String,
    pub partition: Option<Vec<Vec<String>>>,
    pub vertices: Vec<(String, Pt)>,
    /// (id, u, v, interior bend points from u to v)
    pub edges: Vec<(String, String, String, Vec<Pt>)>,
}

impl PolyDrawing {
    pub fn new(name: &str) -> Self {
        PolyDrawing {
            name: name.to_string(),
            ..Default::default()
        }
    }

    pub fn vertex(&mut self, label: &str, p: Pt) -> &mut Self {
        self.vertices.push((label.to_string(), p));
        self
    }

    pub fn edge(&mut self, id: &str, u: &str, v: &str, bends: &[Pt]) -> &mut Self {
        self.edges
            .push((id.to_string(), u.to_string(), v.to_string(), bends.to_vec()));
        self
    }

    pub fn build(&self) -> Result<Drawing> {
        build(self)
    }
}

fn degenerate(msg: String) -> Error {
    Error::DegeneratePlacement(msg)
}

/// Convert a polyline drawing into a combinatorial drawing, checking that it
/// is simple and in general position.
pub fn build(pd: &PolyDrawing) -> Result<Drawing> {
    let vertices: Vec<String> = pd.vertices.iter().map(|v| v.0.clone()).collect();
    let pos: Vec<Pt> = pd.vertices.iter().map(|v| v.1).collect();
    let vidx: HashMap<&str, usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i))
        .collect();
    if vidx.len() != vertices.len() {
        return Err(Error::BadParams("duplicate vertex label".into()));
    }
    if pos.iter().collect::<HashSet<_>>().len() != pos.len() {
        return Err(degenerate("two vertices share a position".into()));
    }
    let mut edges = Vec::new();
    let mut pts: Vec<Vec<Pt>> = Vec::new();
    for (id, u, v, bends) in &pd.edges {
        let (Some(&a), Some(&b)) = (vidx.get(u.as_str()), vidx.get(v.as_str())) else {
            return Err(Error::BadParams(format!("edge {id} has unknown endpoint")));
        };
        let mut p = vec![pos[a]];
        p.extend(bends);
        p.push(pos[b]);
        let (s, t) = if vertices[a] <= vertices[b] {
            (a, b)
        } else {
            p.reverse();
            (b, a)
        };
        for w in p.windows(2) {
            if w[0] == w[1] {
                return Err(degenerate(format!("edge {id} has a zero-length segment")));
            }
        }
        for (k, &q) in p.iter().enumerate().skip(1).take(p.len() - 2) {
            if pos.contains(&q) {
                return Err(degenerate(format!(
                    "bend {k} of edge {id} sits on a vertex"
                )));
            }
        }
        edges.push(Edge {
            id: id.clone(),
            s,
            t,
        });
        pts.push(p);
    }
    // vertices on edge interiors
    for (e, p) in pts.iter().enumerate() {
        for (v, &q) in pos.iter().enumerate() {
            if edges[e].has(v) {
                continue;
            }
            if p.windows(2).any(|w| on_segment(w[0], w[1], q)) {
                return Err(degenerate(format!(
                    "vertex {} lies on edge {}",
                    vertices[v], edges[e].id
                )));
            }
        }
    }
    // self intersections
    for (e, p) in pts.iter().enumerate() {
        let n = p.len() - 1;
        for i in 0..n {
            for j in i + 1..n {
                if j == i + 1 {
                    let (a, b) = (sub(p[i], p[i + 1]), sub(p[j + 1], p[j]));
                    if cross(a, b) == 0 && dot(a, b) > 0 {
                        return Err(degenerate(format!("edge {} folds back", edges[e].id)));
                    }
                    continue;
                }
                if !matches!(meet(p[i], p[i + 1], p[j], p[j + 1]), Meet::None) {
                    return Err(degenerate(format!(
                        "edge {} intersects itself",
                        edges[e].id
                    )));
                }
            }
        }
    }
    // pairwise
    struct Hit {
        e: usize,
        f: usize,
        ke: usize,
        te: Q,
        kf: usize,
        tf: Q,
    }
    let mut hits: Vec<Hit> = Vec::new();
    for e in 0..edges.len() {
        for f in e + 1..edges.len() {
            let shared: Vec<usize> = [edges[e].s, edges[e].t]
                .into_iter()
                .filter(|&v| edges[f].has(v))
                .collect();
            let mut count = 0;
            let (pe, pf) = (&pts[e], &pts[f]);
            for i in 0..pe.len() - 1 {
                for j in 0..pf.len() - 1 {
                    match meet(pe[i], pe[i + 1], pf[j], pf[j + 1]) {
                        Meet::None => {}
                        Meet::Proper { t, u } => {
                            count += 1;
                            hits.push(Hit {
                                e,
                                f,
                                ke: i,
                                te: t,
                                kf: j,
                                tf: u,
                            });
                        }
                        Meet::Touch => {
                            // allowed: the shared endpoint, from terminal segments, not overlapping
                            let ok = shared.iter().any(|&v| {
                                let vp = pos[v];
                                let ei = if i == 0 && pe[0] == vp {
                                    Some(pe[1])
                                } else if i == pe.len() - 2 && pe[i + 1] == vp {
                                    Some(pe[i])
                                } else {
                                    None
                                };
                                let fj = if j == 0 && pf[0] == vp {
                                    Some(pf[1])
                                } else if j == pf.len() - 2 && pf[j + 1] == vp {
                                    Some(pf[j])
                                } else {
                                    None
                                };
                                match (ei, fj) {
                                    (Some(a), Some(b)) => {
                                        let (da, db) = (sub(a, vp), sub(b, vp));
                                        !(cross(da, db) == 0 && dot(da, db) > 0)
                                    }
                                    _ => false,
                                }
                            });
                            if !ok {
                                return Err(degenerate(format!(
                                    "edges {} and {} touch",
                                    edges[e].id, edges[f].id
                                )));
                            }
                        }
                    }
                }
            }
            if count > 0 && !shared.is_empty() {
                return Err(degenerate(format!(
                    "adjacent edges {} and {} cross",
                    edges[e].id, edges[f].id
                )));
            }
            if count > 1 {
                return Err(degenerate(format!(
                    "edges {} and {} cross {count} times",
                    edges[e].id, edges[f].id
                )));
            }
        }
    }
    // concurrency
    let mut points = HashSet::new();
    for h in &hits {
        let p = &pts[h.e];
        let (a, b) = (p[h.ke], p[h.ke + 1]);
        let x = Q::from(a.0 as i128) + h.te * Q::from((b.0 - a.0) as i128);
        let y = Q::from(a.1 as i128) + h.te * Q::from((b.1 - a.1) as i128);
        if !points.insert((x, y)) {
            return Err(degenerate("three edges through one point".into()));
        }
    }
    // crossings
    let mut crossings = Vec::new();
    let mut along: Vec<Vec<(usize, Q, usize)>> = vec![Vec::new(); edges.len()];
    for (ci, h) in hits.iter().enumerate() {
        let de = sub(pts[h.e][h.ke + 1], pts[h.e][h.ke]);
        let df = sub(pts[h.f][h.kf + 1], pts[h.f][h.kf]);
        let (e, f) = (h.e, h.f);
        let et = Port {
            edge: e,
            to: edges[e].t,
        };
        let es = Port {
            edge: e,
            to: edges[e].s,
        };
        let ft = Port {
            edge: f,
            to: edges[f].t,
        };
        let fs = Port {
            edge: f,
            to: edges[f].s,
        };
        let ports = if cross(de, df) < 0 {
            [et, ft, es, fs]
        } else {
            [et, fs, es, ft]
        };
        crossings.push(Crossing {
            id: format!("x{ci}"),
            edges: [e, f],
            ports,
        });
        along[e].push((h.ke, h.te, ci));
        along[f].push((h.kf, h.tf, ci));
    }
    let order = along
        .into_iter()
        .map(|mut l| {
            l.sort_by_key(|a| (a.0, a.1));
            l.into_iter().map(|x| x.2).collect()
        })
        .collect();
    // rotations
    let mut rotations = Vec::new();
    for (v, &vp) in pos.iter().enumerate() {
        let inc: Vec<usize> = (0..edges.len()).filter(|&e| edges[e].has(v)).collect();
        let dirs: Vec<Pt> = inc
            .iter()
            .map(|&e| {
                let p = &pts[e];
                if edges[e].s == v {
                    sub(p[1], vp)
                } else {
                    sub(p[p.len() - 2], vp)
                }
            })
            .collect();
        rotations.push(clockwise(&dirs).into_iter().map(|i| inc[i]).collect());
    }
    let d = Drawing {
        name: pd.name.clone(),
        partition: pd.partition.clone(),
        vertices,
        edges,
        rotations,
        crossings,
        order,
    };
    let rep = d.validate();
    if !rep.is_valid() {
        return Err(Error::Invariant(format!(
            "geometric drawing failed validation: {:?}",
            rep.violations
        )));
    }
    Ok(d)
}

/// Straight segment drawing.
pub fn straight(
    name: &str,
    vertices: &[(String, Pt)],
    edges: &[(String, String, String)],
) -> Result<Drawing> {
    let pd = PolyDrawing {
        name: name.to_string(),
        partition: None,
        vertices: vertices.to_vec(),
        edges: edges
            .iter()
            .map(|(i, u, v)| (i.clone(), u.clone(), v.clone(), Vec::new()))
            .collect(),
    };
    build(&pd)
}
