//! Combinatorial curve surgery: threading a new edge through faces, and
//! cloning a vertex by parallel copies of its edges.

use std::collections::HashSet;

use crate::core::{canonical_key, Crossing, Drawing, Edge, PlanarMap, Port};
use crate::error::{Error, Result};

pub(crate) const TIP: &str = "~tip";

/// Let the loose end of edge `e` (currently at vertex `tip`, started at
/// `start`) cross the fragment under `dart` from the face on its left.
pub(crate) fn cross_dart(
    d: &mut Drawing,
    e: usize,
    tip: usize,
    start: usize,
    dart: usize,
    m: &PlanarMap,
) {
    let h = m.edge_of(dart);
    let j = m.frag_idx[dart / 2];
    let (toward_head, toward_tail) = if PlanarMap::forward(dart) {
        (d.edges[h].t, d.edges[h].s)
    } else {
        (d.edges[h].s, d.edges[h].t)
    };
    let c = d.crossings.len();
    d.crossings.push(Crossing {
        id: format!("~x{c}"),
        edges: [e, h],
        ports: [
            Port { edge: e, to: tip },
            Port {
                edge: h,
                to: toward_tail,
            },
            Port { edge: e, to: start },
            Port {
                edge: h,
                to: toward_head,
            },
        ],
    });
    d.order[h].insert(j, c);
    d.order[e].push(c);
}

/// Attach the loose end of `e` to `end`, inserted at rotation index `pos`,
/// and drop the tip vertex (which must be the last vertex).
pub(crate) fn close_at(d: &mut Drawing, e: usize, tip: usize, end: usize, pos: usize) {
    d.rotations[end].insert(pos, e);
    d.edges[e].t = end;
    for c in &mut d.crossings {
        for p in &mut c.ports {
            if p.to == tip {
                p.to = end;
            }
        }
    }
    debug_assert_eq!(tip, d.vertices.len() - 1);
    d.vertices.pop();
    d.rotations.pop();
}

/// Rename crossings `x0, x1, ...` in order of first appearance.
pub(crate) fn rename_crossings(d: &mut Drawing) {
    let mut name = vec![usize::MAX; d.crossings.len()];
    let mut next = 0;
    for l in &d.order {
        for &c in l {
            if name[c] == usize::MAX {
                name[c] = next;
                next += 1;
            }
        }
    }
    for (c, x) in d.crossings.iter_mut().enumerate() {
        x.id = format!("x{}", name[c]);
    }
}

struct Insert<'a> {
    e: usize,
    tip: usize,
    u: usize,
    v: usize,
    max_cross: usize,
    out: &'a mut Vec<Drawing>,
    seen: HashSet<String>,
}

impl Insert<'_> {
    fn finish(&mut self, mut d: Drawing, pos: usize) {
        close_at(&mut d, self.e, self.tip, self.v, pos);
        d.normalize_orientation();
        rename_crossings(&mut d);
        if self.seen.insert(canonical_key(&d)) {
            debug_assert!(d.is_valid(), "{:?}", d.validate());
            self.out.push(d);
        }
    }

    fn dfs(&mut self, d: Drawing, start_face_dart: Option<usize>, depth: usize) {
        let m = PlanarMap::build_light(&d);
        let f = match start_face_dart {
            Some(x) => m.face_of[x],
            None => m.face_of[m.out[self.tip][0]],
        };
        if d.rotations[self.v].is_empty() {
            self.finish(d.clone(), 0);
        } else {
            for k in 0..d.rotations[self.v].len() {
                if m.face_of[m.out[self.v][k]] == f {
                    self.finish(d.clone(), k);
                }
            }
        }
        if depth == self.max_cross {
            return;
        }
        let mut tried = HashSet::new();
        for &x in &m.faces[f] {
            let h = m.edge_of(x);
            let he = &d.edges[h];
            if h == self.e || he.has(self.u) || he.has(self.v) || !tried.insert(x / 2) {
                continue;
            }
            if d.crossings
                .iter()
                .any(|c| c.involves(h) && c.involves(self.e))
            {
                continue;
            }
            let mut n = d.clone();
            cross_dart(&mut n, self.e, self.tip, self.u, x, &m);
            self.dfs(n, None, depth + 1);
        }
    }
}

/// Every way to add edge `id` between `u` and `v` as a simple curve with at
/// most `max_cross` crossings, up to strong isomorphism. An isolated `u` may
/// start in any face; if both ends are isolated the drawing must be empty.
pub fn insertions(
    d: &Drawing,
    id: &str,
    u: &str,
    v: &str,
    max_cross: usize,
) -> Result<Vec<Drawing>> {
    let ui = d
        .vertex(u)
        .ok_or_else(|| Error::BadParams(format!("unknown vertex {u}")))?;
    let vi = d
        .vertex(v)
        .ok_or_else(|| Error::BadParams(format!("unknown vertex {v}")))?;
    if ui == vi || d.edge(id).is_some() || d.edge_between(ui, vi).is_some() {
        return Err(Error::BadParams(format!("cannot add {id}")));
    }
    // start from the endpoint that already has edges
    let (ui, vi) = if d.rotations[ui].is_empty() {
        (vi, ui)
    } else {
        (ui, vi)
    };
    let mut base = d.clone();
    let tip = base.vertices.len();
    base.vertices.push(TIP.to_string());
    let e = base.edges.len();
    base.edges.push(Edge {
        id: id.to_string(),
        s: ui,
        t: tip,
    });
    base.order.push(Vec::new());
    base.rotations.push(vec![e]);
    let mut out = Vec::new();
    let mut ins = Insert {
        e,
        tip,
        u: ui,
        v: vi,
        max_cross,
        out: &mut out,
        seen: HashSet::new(),
    };
    if d.rotations[ui].is_empty() {
        if !d.edges.is_empty() {
            return Err(Error::BadParams(format!("{u} and {v} are both isolated")));
        }
        let mut b = base;
        b.rotations[ui].push(e);
        ins.finish(b, 0);
        return Ok(out);
    }
    for i in 0..d.rotations[ui].len() {
        let mut b = base.clone();
        b.rotations[ui].insert(i + 1, e);
        ins.dfs(b, None, 0);
    }
    Ok(out)
}

/// Add `new` as a twin of `v` placed in the rotation corner before index
/// `corner`: for each edge `v–w` in `copy` (edge indices at `v`) a parallel
/// edge `new–w` runs along its counterclockwise side. With `link`, `new` is
/// also joined to `v`. Edge ids come from `name(new, w)`.
pub fn clone_vertex(
    d: &Drawing,
    v: &str,
    new: &str,
    corner: usize,
    copy: &[usize],
    link: Option<&str>,
    name: &dyn Fn(&str, &str) -> String,
) -> Result<Drawing> {
    let vi = d
        .vertex(v)
        .ok_or_else(|| Error::BadParams(format!("unknown vertex {v}")))?;
    if d.vertex(new).is_some() {
        return Err(Error::BadParams(format!("vertex {new} exists")));
    }
    let rot = d.rotations[vi].clone();
    let deg = rot.len();
    if deg == 0 || corner >= deg {
        return Err(Error::BadParams(format!("corner {corner} at {v}")));
    }
    let p = |i: usize| (i + deg - corner) % deg;
    let mut out = d.clone();
    out.partition = None;
    let nv = out.vertices.len();
    out.vertices.push(new.to_string());
    out.rotations.push(Vec::new());
    // new edges, in rotation order at v
    let mut copies: Vec<(usize, usize)> = Vec::new(); // (rotation index at v, new edge)
    let mut idx: Vec<usize> = (0..deg).filter(|&i| copy.contains(&rot[i])).collect();
    idx.sort_by_key(|&i| p(i));
    for &i in &idx {
        let f = rot[i];
        let w = d.edges[f].other(vi);
        let ne = out.edges.len();
        out.edges.push(Edge {
            id: name(new, &d.vertices[w]),
            s: nv,
            t: w,
        });
        out.order.push(Vec::new());
        copies.push((i, ne));
        // rotation at w: right after f
        let r = &mut out.rotations[w];
        let k = r.iter().position(|&x| x == f).expect("f at w");
        r.insert(k + 1, ne);
    }
    out.rotations[nv] = copies.iter().map(|&(_, ne)| ne).collect();
    // crossings near v: copy of f_i crosses f_k for p(k) < p(i)
    let mut near: Vec<Vec<usize>> = vec![Vec::new(); deg]; // per k, crossings from v outward
    for &(i, ne) in copies.iter().rev() {
        for k in 0..deg {
            if p(k) >= p(i) {
                continue;
            }
            let fk = rot[k];
            let xk = d.edges[fk].other(vi);
            let c = out.crossings.len();
            out.crossings.push(Crossing {
                id: format!("~c{c}"),
                edges: [ne, fk],
                ports: [
                    Port { edge: fk, to: xk },
                    Port {
                        edge: ne,
                        to: out.edges[ne].t,
                    },
                    Port { edge: fk, to: vi },
                    Port { edge: ne, to: nv },
                ],
            });
            near[k].push(c);
        }
    }
    // order along each copy: near crossings clockwise from the corner, then
    // parallel crossings
    for &(i, ne) in &copies {
        let mut l: Vec<usize> = Vec::new();
        let mut ks: Vec<usize> = (0..deg).filter(|&k| p(k) < p(i)).collect();
        ks.sort_by_key(|&k| p(k));
        for k in ks {
            let c = *near[k]
                .iter()
                .find(|&&c| out.crossings[c].involves(ne))
                .expect("near crossing");
            l.push(c);
        }
        let f = rot[i];
        let w = d.edges[f].other(vi);
        let mut along: Vec<usize> = d.order[f].clone();
        if d.edges[f].s != vi {
            along.reverse();
        }
        for chi in along {
            let x = &d.crossings[chi];
            let h = x.other(f);
            let jo = x
                .ports
                .iter()
                .position(|q| q.edge == f && q.to == w)
                .expect("port");
            let left = x.ports[(jo + 3) % 4];
            let c = out.crossings.len();
            let ports = x.ports.map(|q| {
                if q.edge != f {
                    q
                } else if q.to == w {
                    Port { edge: ne, to: w }
                } else {
                    Port { edge: ne, to: nv }
                }
            });
            out.crossings.push(Crossing {
                id: format!("~c{c}"),
                edges: [ne, h],
                ports,
            });
            let pos = out.order[h].iter().position(|&y| y == chi).expect("on h");
            let at = if left.to == out.edges[h].t {
                pos + 1
            } else {
                pos
            };
            out.order[h].insert(at, c);
            l.push(c);
        }
        out.order[ne] = l;
    }
    // near crossings along f_k, from v outward: deepest copy first
    for k in 0..deg {
        let fk = rot[k];
        let mut cs = near[k].clone();
        let depth = |c: usize| {
            p(copies
                .iter()
                .find(|&&(_, ne)| out.crossings[c].involves(ne))
                .expect("copy")
                .0)
        };
        cs.sort_by_key(|&c| std::cmp::Reverse(depth(c)));
        if out.edges[fk].s == vi {
            let mut l = cs;
            l.extend(out.order[fk].iter().copied());
            out.order[fk] = l;
        } else {
            cs.reverse();
            out.order[fk].extend(cs);
        }
    }
    if let Some(id) = link {
        let ne = out.edges.len();
        out.edges.push(Edge {
            id: id.to_string(),
            s: nv,
            t: vi,
        });
        out.order.push(Vec::new());
        out.rotations[nv].push(ne);
        out.rotations[vi].insert(corner, ne);
    }
    out.normalize_orientation();
    rename_crossings(&mut out);
    let rep = out.validate();
    if !rep.is_valid() {
        return Err(Error::Invariant(format!(
            "clone of {v} is not simple: {:?}",
            rep.violations
        )));
    }
    Ok(out)
}
