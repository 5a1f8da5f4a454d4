//! Flip graph exploration and non-transformability certificates.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::core::{canonical_key, order_signature, Drawing, PlanarMap};
use crate::error::{Error, Result};
use crate::ers::{crossed_sequence, crossing_pairs, ers_of, pair_key};
use crate::flips::{flip_in_place, raw_tricells};

fn neighbors_raw(d: &Drawing) -> Vec<Drawing> {
    let m = PlanarMap::build_light(d);
    raw_tricells(d, &m)
        .into_iter()
        .map(|t| {
            let mut n = d.clone();
            flip_in_place(&mut n, t.edges, t.crossings).expect("tricells are flippable");
            n
        })
        .collect()
}

/// All drawings one flip away, deduplicated by canonical key.
pub fn flip_neighbors(d: &Drawing) -> Result<Vec<Drawing>> {
    d.ensure_valid()?;
    let mut seen = HashSet::new();
    Ok(neighbors_raw(d)
        .into_iter()
        .filter(|n| seen.insert(canonical_key(n)))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Distance {
    Steps(usize),
    Unreachable,
    BudgetExceeded,
}

/// Bidirectional breadth-first search over flip neighbors; `budget` caps the
/// number of stored states.
pub fn flip_distance(d1: &Drawing, d2: &Drawing, budget: usize) -> Result<Distance> {
    d1.same_graph(d2)?;
    d1.ensure_valid()?;
    d2.ensure_valid()?;
    if ers_of(d1) != ers_of(d2) {
        return Ok(Distance::Unreachable);
    }
    // d2 renamed into d1's index space is unnecessary: signatures use edge ids
    let s1 = order_signature(d1);
    let s2 = order_signature(d2);
    if s1 == s2 {
        return Ok(Distance::Steps(0));
    }
    let mut dist = [HashMap::new(), HashMap::new()];
    dist[0].insert(s1, 0usize);
    dist[1].insert(s2, 0usize);
    let mut frontier = [vec![d1.clone()], vec![d2.clone()]];
    let mut level = [0usize, 0usize];
    loop {
        if frontier[0].is_empty() || frontier[1].is_empty() {
            return Ok(Distance::Unreachable);
        }
        let side = if frontier[0].len() <= frontier[1].len() {
            0
        } else {
            1
        };
        let other = 1 - side;
        let mut next = Vec::new();
        let mut best: Option<usize> = None;
        for d in std::mem::take(&mut frontier[side]) {
            for n in neighbors_raw(&d) {
                let sig = order_signature(&n);
                if dist[side].contains_key(&sig) {
                    continue;
                }
                if let Some(&k) = dist[other].get(&sig) {
                    let total = level[side] + 1 + k;
                    best = Some(best.map_or(total, |b: usize| b.min(total)));
                }
                dist[side].insert(sig, level[side] + 1);
                next.push(n);
                if dist[0].len() + dist[1].len() > budget {
                    return Ok(Distance::BudgetExceeded);
                }
            }
        }
        if let Some(b) = best {
            return Ok(Distance::Steps(b));
        }
        level[side] += 1;
        frontier[side] = next;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    /// Canonical keys of all reached drawings, sorted.
    pub keys: Vec<String>,
    /// False if the budget stopped the search early.
    pub complete: bool,
}

/// The flip graph component of `d`, up to `budget` states.
pub fn component(d: &Drawing, budget: usize) -> Result<Component> {
    d.ensure_valid()?;
    if !d.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut seen = HashSet::new();
    seen.insert(order_signature(d));
    let mut keys = vec![canonical_key(d)];
    let mut frontier = vec![d.clone()];
    let mut complete = true;
    'outer: while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in frontier {
            for n in neighbors_raw(&x) {
                if seen.insert(order_signature(&n)) {
                    if seen.len() > budget {
                        complete = false;
                        break 'outer;
                    }
                    keys.push(canonical_key(&n));
                    next.push(n);
                }
            }
        }
        frontier = next;
    }
    keys.sort();
    Ok(Component { keys, complete })
}

/// Proof that no sequence of flips changes the crossing order along `edge`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub edge: String,
    /// Edges crossing `edge`, sorted.
    pub crossed: Vec<String>,
    pub order1: Vec<String>,
    pub order2: Vec<String>,
}

impl Certificate {
    /// Re-check all three proof obligations against the drawings.
    pub fn verify(&self, d1: &Drawing, d2: &Drawing) -> bool {
        let (Some(e1), Some(e2)) = (d1.edge(&self.edge), d2.edge(&self.edge)) else {
            return false;
        };
        let (o1, o2) = (crossed_sequence(d1, e1), crossed_sequence(d2, e2));
        let set1: BTreeSet<&String> = o1.iter().collect();
        let set2: BTreeSet<&String> = o2.iter().collect();
        let pairs = crossing_pairs(d1);
        let independent = o1
            .iter()
            .enumerate()
            .all(|(i, a)| o1[i + 1..].iter().all(|b| !pairs.contains(&pair_key(a, b))));
        o1 == self.order1
            && o2 == self.order2
            && set1 == set2
            && set1.iter().map(|s| s.to_string()).collect::<Vec<_>>() == self.crossed
            && independent
            && o1 != o2
    }
}

pub fn order_obstruction(d1: &Drawing, d2: &Drawing) -> Result<Option<Certificate>> {
    d1.same_graph(d2)?;
    if ers_of(d1) != ers_of(d2) {
        return Err(Error::ErsMismatch);
    }
    let mut ids: Vec<&String> = d1.edges.iter().map(|e| &e.id).collect();
    ids.sort();
    for id in ids {
        let o1 = crossed_sequence(d1, d1.edge(id).expect("own"));
        let o2 = crossed_sequence(d2, d2.edge(id).expect("same graph"));
        if o1 == o2 {
            continue;
        }
        let mut crossed = o1.clone();
        crossed.sort();
        let cert = Certificate {
            edge: id.clone(),
            crossed,
            order1: o1,
            order2: o2,
        };
        if cert.verify(d1, d2) {
            return Ok(Some(cert));
        }
    }
    Ok(None)
}
