//! Short cycles enclosing a face.

use itertools::Itertools;
use serde::Serialize;

use crate::core::{Drawing, FaceClasses, PlanarMap};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Enclosure {
    /// Cycle vertices in cyclic order.
    pub cycle: Vec<String>,
    pub edges: Vec<String>,
    /// Cell of the cycle's subdrawing that holds `p`.
    pub cell: String,
}

/// Cycles of length three, then four, in a fixed order.
fn short_cycles(d: &Drawing) -> Vec<Vec<usize>> {
    let n = d.vertices.len();
    let by_label: Vec<usize> = (0..n).sorted_by_key(|&v| &d.vertices[v]).collect();
    let adj = |a: usize, b: usize| d.edge_between(a, b).is_some();
    let mut out = Vec::new();
    for (a, b, c) in by_label.iter().copied().tuple_combinations() {
        if adj(a, b) && adj(b, c) && adj(c, a) {
            out.push(vec![a, b, c]);
        }
    }
    // a is the smallest vertex; b before d so each 4-cycle is listed once
    for (i, &a) in by_label.iter().enumerate() {
        let rest = &by_label[i + 1..];
        for &b in rest {
            for &c in rest {
                for &e in rest {
                    if b == c || c == e || b == e {
                        continue;
                    }
                    let rb = rest.iter().position(|&x| x == b);
                    let re = rest.iter().position(|&x| x == e);
                    if rb > re {
                        continue;
                    }
                    if adj(a, b) && adj(b, c) && adj(c, e) && adj(e, a) {
                        out.push(vec![a, b, c, e]);
                    }
                }
            }
        }
    }
    out
}

/// First 3- or 4-cycle whose subdrawing separates `p` from `outer`. Returns
/// `None` when no such cycle exists, which cannot happen for complete
/// multipartite graphs.
pub fn enclosing_cycle(d: &Drawing, outer: &str, p: &str) -> Result<Option<Enclosure>> {
    d.ensure_valid()?;
    if outer == p {
        return Err(Error::OuterEqualsP);
    }
    let m = PlanarMap::build(d);
    let fo = m
        .face_by_key(outer)
        .ok_or_else(|| Error::UnknownFace(outer.to_string()))?;
    let fp = m
        .face_by_key(p)
        .ok_or_else(|| Error::UnknownFace(p.to_string()))?;
    for cyc in short_cycles(d) {
        let k = cyc.len();
        let es: Vec<usize> = (0..k)
            .map(|i| {
                d.edge_between(cyc[i], cyc[(i + 1) % k])
                    .expect("cycle edge")
            })
            .collect();
        let mut mask = vec![false; d.edges.len()];
        for &e in &es {
            mask[e] = true;
        }
        let fc = FaceClasses::new(d, &m, &mask);
        if fc.class_of_face[fo] != fc.class_of_face[fp] {
            return Ok(Some(Enclosure {
                cycle: cyc.iter().map(|&v| d.vertices[v].clone()).collect(),
                edges: es.iter().map(|&e| d.edges[e].id.clone()).collect(),
                cell: fc.key_of_face(fp).to_string(),
            }));
        }
    }
    Ok(None)
}
