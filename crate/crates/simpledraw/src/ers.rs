//! Rotation systems, extended rotation systems and drawing comparisons.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::core::{canonical_key, min_rotation, Drawing};
use crate::error::{Error, Result};

/// Vertex rotations by neighbor label plus crossing rotations by endpoint
/// label, both cyclically normalized.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ers {
    pub vertex_rotations: BTreeMap<String, Vec<String>>,
    /// Keyed by `"e|f"` with `e < f`.
    pub crossing_rotations: BTreeMap<String, Vec<String>>,
}

pub fn pair_key(a: &str, b: &str) -> String {
    if a <= b {
        format!("{a}|{b}")
    } else {
        format!("{b}|{a}")
    }
}

/// ERS without validating first.
pub fn ers_of(d: &Drawing) -> Ers {
    let vertex_rotations = d
        .rotations
        .iter()
        .enumerate()
        .map(|(v, r)| {
            let nb: Vec<String> = r
                .iter()
                .map(|&e| d.vertices[d.edges[e].other(v)].clone())
                .collect();
            (d.vertices[v].clone(), min_rotation(&nb))
        })
        .collect();
    let crossing_rotations = d
        .crossings
        .iter()
        .map(|c| {
            let ends: Vec<String> = c.ports.iter().map(|p| d.vertices[p.to].clone()).collect();
            (
                pair_key(&d.edges[c.edges[0]].id, &d.edges[c.edges[1]].id),
                min_rotation(&ends),
            )
        })
        .collect();
    Ers {
        vertex_rotations,
        crossing_rotations,
    }
}

pub fn extended_rotation_system(d: &Drawing) -> Result<Ers> {
    d.ensure_valid()?;
    Ok(ers_of(d))
}

pub fn crossing_pairs(d: &Drawing) -> BTreeSet<String> {
    d.crossings
        .iter()
        .map(|c| pair_key(&d.edges[c.edges[0]].id, &d.edges[c.edges[1]].id))
        .collect()
}

pub fn ers_equal(d1: &Drawing, d2: &Drawing) -> Result<bool> {
    d1.same_graph(d2)?;
    Ok(ers_of(d1) == ers_of(d2))
}

/// Same crossing edge pairs.
pub fn weakly_isomorphic(d1: &Drawing, d2: &Drawing) -> Result<bool> {
    d1.same_graph(d2)?;
    Ok(crossing_pairs(d1) == crossing_pairs(d2))
}

pub fn strongly_isomorphic(d1: &Drawing, d2: &Drawing) -> Result<bool> {
    d1.same_graph(d2)?;
    if !d1.is_connected() || !d2.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(canonical_key(d1) == canonical_key(d2))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderViolation {
    pub edge: String,
    pub pair: (String, String),
    /// Crossed edges of the pair in the order met along `edge` (source first).
    pub first: (String, String),
    pub second: (String, String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct OrderReport {
    pub checked_pairs: usize,
    pub violations: Vec<OrderViolation>,
}

/// Ids of the edges crossed by `e`, in order from its source.
pub fn crossed_sequence(d: &Drawing, e: usize) -> Vec<String> {
    d.order[e]
        .iter()
        .map(|&c| d.edges[d.crossings[c].other(e)].id.clone())
        .collect()
}

/// For every edge and every pair of mutually non-crossing edges it crosses,
/// compare the order along the edge in both drawings.
pub fn check_order_lemma(d1: &Drawing, d2: &Drawing) -> Result<OrderReport> {
    d1.same_graph(d2)?;
    if ers_of(d1) != ers_of(d2) {
        return Err(Error::NotSameErs);
    }
    let pairs = crossing_pairs(d1);
    let mut rep = OrderReport::default();
    let mut ids: Vec<&str> = d1.edges.iter().map(|e| e.id.as_str()).collect();
    ids.sort();
    for id in ids {
        let s1 = crossed_sequence(d1, d1.edge(id).expect("own edge"));
        let s2 = crossed_sequence(d2, d2.edge(id).expect("same graph"));
        let at2 = |x: &String| s2.iter().position(|y| y == x).expect("same crossing pairs");
        for i in 0..s1.len() {
            for j in i + 1..s1.len() {
                let (a, b) = (&s1[i], &s1[j]);
                if pairs.contains(&pair_key(a, b)) {
                    continue;
                }
                rep.checked_pairs += 1;
                if at2(a) > at2(b) {
                    rep.violations.push(OrderViolation {
                        edge: id.to_string(),
                        pair: (a.clone().min(b.clone()), a.clone().max(b.clone())),
                        first: (a.clone(), b.clone()),
                        second: (b.clone(), a.clone()),
                    });
                }
            }
        }
    }
    Ok(rep)
}
