//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use simpledraw::core::{canonical_key, Drawing, PlanarMap};
use simpledraw::explore::flip_neighbors;
use simpledraw::flips::{flip_in_place, raw_tricells};
use simpledraw::geom::Pt;

/// `k` random flips, never undoing the previous one when another cell exists.
pub fn scramble(d: &Drawing, k: usize, rng: &mut ChaCha8Rng) -> Drawing {
    let mut d = d.clone();
    let mut last: Option<[usize; 3]> = None;
    for _ in 0..k {
        let m = PlanarMap::build_light(&d);
        let mut ts = raw_tricells(&d, &m);
        if ts.len() > 1 {
            ts.retain(|t| Some(t.edges) != last);
        }
        if ts.is_empty() {
            break;
        }
        let t = ts[rng.gen_range(0..ts.len())];
        flip_in_place(&mut d, t.edges, t.crossings).unwrap();
        last = Some(t.edges);
    }
    d
}

pub fn scrambled_pair(sizes: &[usize], seed: u64, k: usize) -> (Drawing, Drawing) {
    let d1 = simpledraw::catalog::sample_geometric(sizes, seed).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let d2 = scramble(&d1, k, &mut rng);
    (d1, d2)
}

/// Plain single-source BFS over canonical keys.
pub fn naive_distance(d1: &Drawing, d2: &Drawing, cap: usize) -> Option<Option<usize>> {
    let goal = canonical_key(d2);
    let mut seen = HashSet::from([canonical_key(d1)]);
    if seen.contains(&goal) {
        return Some(Some(0));
    }
    let mut q = VecDeque::from([(d1.clone(), 0usize)]);
    while let Some((d, k)) = q.pop_front() {
        for n in flip_neighbors(&d).unwrap() {
            let key = canonical_key(&n);
            if key == goal {
                return Some(Some(k + 1));
            }
            if seen.insert(key) {
                if seen.len() > cap {
                    return None;
                }
                q.push_back((n, k + 1));
            }
        }
    }
    Some(None)
}

/// Complete multipartite iff non-adjacency (plus equality) is transitive.
pub fn multipartite_by_complement(vertices: &[String], edges: &BTreeSet<(String, String)>) -> bool {
    let adj = |a: &String, b: &String| {
        edges.contains(&(a.clone(), b.clone())) || edges.contains(&(b.clone(), a.clone()))
    };
    for a in vertices {
        for b in vertices {
            for c in vertices {
                if a != b && b != c && a != c && !adj(a, b) && !adj(b, c) && adj(a, c) {
                    return false;
                }
            }
        }
    }
    true
}

type Q = BigRational;

fn orient(a: Pt, b: Pt, c: Pt) -> i128 {
    (b.0 - a.0) as i128 * (c.1 - a.1) as i128 - (b.1 - a.1) as i128 * (c.0 - a.0) as i128
}

/// Parameter along `a->b` where it properly crosses `c-d`.
fn cross_param(a: Pt, b: Pt, c: Pt, d: Pt) -> Option<Q> {
    let (o1, o2, o3, o4) = (
        orient(c, d, a),
        orient(c, d, b),
        orient(a, b, c),
        orient(a, b, d),
    );
    if (o1 > 0) != (o2 > 0) && (o3 > 0) != (o4 > 0) && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 {
        Some(BigRational::new(BigInt::from(o1), BigInt::from(o1 - o2)))
    } else {
        None
    }
}

fn half(p: Pt) -> u8 {
    // upper half plane first, measured counterclockwise from +x
    if p.1 > 0 || (p.1 == 0 && p.0 > 0) {
        0
    } else {
        1
    }
}

/// Directions sorted clockwise starting anywhere.
fn clockwise(dirs: &mut [(Pt, String)]) {
    dirs.sort_by(|(a, _), (b, _)| {
        half(*a)
            .cmp(&half(*b))
            .then_with(|| 0.cmp(&orient((0, 0), *a, *b)))
    });
    dirs.reverse();
}

pub fn min_rot(xs: &[String]) -> Vec<String> {
    (0..xs.len().max(1))
        .map(|i| xs[i..].iter().chain(&xs[..i]).cloned().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

/// ERS, crossing pairs and crossing orders of a straight-line drawing,
/// computed from coordinates alone.
pub struct GeoErs {
    pub vertex_rotations: BTreeMap<String, Vec<String>>,
    pub crossing_rotations: BTreeMap<String, Vec<String>>,
    /// Edge id -> crossed edge ids from the source.
    pub orders: BTreeMap<String, Vec<String>>,
}

pub fn geometric_ers(labels: &[String], pos: &[Pt], edges: &[(String, usize, usize)]) -> GeoErs {
    let mut vertex_rotations = BTreeMap::new();
    for (v, l) in labels.iter().enumerate() {
        let mut dirs: Vec<(Pt, String)> = edges
            .iter()
            .filter_map(|(_, s, t)| {
                let o = if *s == v {
                    *t
                } else if *t == v {
                    *s
                } else {
                    return None;
                };
                Some((
                    (pos[o].0 - pos[v].0, pos[o].1 - pos[v].1),
                    labels[o].clone(),
                ))
            })
            .collect();
        clockwise(&mut dirs);
        let names: Vec<String> = dirs.into_iter().map(|x| x.1).collect();
        vertex_rotations.insert(l.clone(), min_rot(&names));
    }
    let mut crossing_rotations = BTreeMap::new();
    let mut orders = BTreeMap::new();
    for (id, s, t) in edges {
        let mut hits: Vec<(Q, String)> = Vec::new();
        for (jd, u, w) in edges {
            if jd == id {
                continue;
            }
            if let Some(p) = cross_param(pos[*s], pos[*t], pos[*u], pos[*w]) {
                hits.push((p, jd.clone()));
                if id < jd {
                    // west/east along s->t, the other edge's left end comes first clockwise
                    let ring = if orient(pos[*s], pos[*t], pos[*u]) > 0 {
                        [s, u, t, w]
                    } else {
                        [s, w, t, u]
                    };
                    let names: Vec<String> = ring.iter().map(|&&v| labels[v].clone()).collect();
                    crossing_rotations.insert(format!("{id}|{jd}"), min_rot(&names));
                }
            }
        }
        hits.sort_by(|a, b| a.0.cmp(&b.0));
        orders.insert(id.clone(), hits.into_iter().map(|h| h.1).collect());
    }
    GeoErs {
        vertex_rotations,
        crossing_rotations,
        orders,
    }
}

/// Same as [`geometric_ers`] with the edges taken from a drawing.
pub fn geometric_ers_of(d: &Drawing, pos: &[Pt]) -> GeoErs {
    let edges: Vec<(String, usize, usize)> =
        d.edges.iter().map(|e| (e.id.clone(), e.s, e.t)).collect();
    geometric_ers(&d.vertices, pos, &edges)
}

pub fn counts<T: std::hash::Hash + Eq + Clone>(xs: &[T]) -> HashMap<T, usize> {
    let mut m = HashMap::new();
    for x in xs {
        *m.entry(x.clone()).or_insert(0) += 1;
    }
    m
}

/// Node coordinates of a straight-line drawing: vertices, then crossings.
pub fn node_coords(d: &Drawing, pos: &[Pt]) -> Vec<(f64, f64)> {
    let f = |p: Pt| (p.0 as f64, p.1 as f64);
    let mut out: Vec<(f64, f64)> = pos.iter().map(|&p| f(p)).collect();
    for c in &d.crossings {
        let (e, g) = (&d.edges[c.edges[0]], &d.edges[c.edges[1]]);
        let (a, b, p, q) = (pos[e.s], pos[e.t], pos[g.s], pos[g.t]);
        let (o1, o2) = (orient(p, q, a) as f64, orient(p, q, b) as f64);
        let t = o1 / (o1 - o2);
        out.push((
            a.0 as f64 + t * (b.0 - a.0) as f64,
            a.1 as f64 + t * (b.1 - a.1) as f64,
        ));
    }
    out
}

/// A point just inside face `f`: off the middle of its longest side,
/// toward the side the face lies on.
pub fn face_point(m: &PlanarMap, xy: &[(f64, f64)], f: usize) -> (f64, f64) {
    let (a, b) = m.faces[f]
        .iter()
        .map(|&x| (xy[m.tail(x)], xy[m.head(x)]))
        .max_by(|(a, b), (c, e)| {
            let l1 = (b.0 - a.0).hypot(b.1 - a.1);
            let l2 = (e.0 - c.0).hypot(e.1 - c.1);
            l1.partial_cmp(&l2).unwrap()
        })
        .expect("face has a side");
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len = dx.hypot(dy);
    let eps = (len * 1e-4).min(1e-3);
    // faces lie left of their darts in y-up coordinates
    (
        (a.0 + b.0) / 2.0 - dy / len * eps,
        (a.1 + b.1) / 2.0 + dx / len * eps,
    )
}

/// Winding number of the closed polygon around `p`.
pub fn winding(poly: &[(f64, f64)], p: (f64, f64)) -> i32 {
    let mut w = 0;
    for i in 0..poly.len() {
        let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
        let side = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
        if a.1 <= p.1 && b.1 > p.1 && side > 0.0 {
            w += 1;
        } else if a.1 > p.1 && b.1 <= p.1 && side < 0.0 {
            w -= 1;
        }
    }
    w
}

/// All 3- and 4-cycles of the drawing's graph as vertex index lists.
pub fn short_cycles(d: &Drawing) -> Vec<Vec<usize>> {
    let n = d.vertices.len();
    let adj = |a: usize, b: usize| d.edge_between(a, b).is_some();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if adj(a, b) && adj(b, c) && adj(a, c) {
                    out.push(vec![a, b, c]);
                }
                // 4-cycles with smallest vertex a: a-b-x-c or a-c-x-b
                for x in a + 1..n {
                    if x != b && x != c && adj(a, b) && adj(b, x) && adj(x, c) && adj(c, a) {
                        out.push(vec![a, b, x, c]);
                    }
                }
            }
        }
    }
    out
}
