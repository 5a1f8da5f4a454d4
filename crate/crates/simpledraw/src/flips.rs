//! Crossing triangles, tricells, parities and triangle flips.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::core::{induce_mask, Drawing, PlanarMap};
use crate::error::{Error, Result};

/// A flippable triangular cell. `edges` are sorted by id; `crossings` are
/// `[x01, x12, x20]` for those edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tricell {
    pub face: String,
    pub edges: [String; 3],
    pub crossings: [String; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Index-level tricell: face index, edges sorted by id, crossings as in `Tricell`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RawTricell {
    pub face: usize,
    pub edges: [usize; 3],
    pub crossings: [usize; 3],
    /// How many of the three edges have the cell on their left.
    pub left_count: usize,
}

/// Faces bounded by three fragments of three pairwise crossing edges.
pub fn raw_tricells(d: &Drawing, m: &PlanarMap) -> Vec<RawTricell> {
    let mut out = Vec::new();
    for (f, cyc) in m.faces.iter().enumerate() {
        if cyc.len() != 3 {
            continue;
        }
        if cyc.iter().any(|&x| m.is_vertex(m.tail(x))) {
            continue;
        }
        let es: Vec<usize> = cyc.iter().map(|&x| m.edge_of(x)).collect();
        if es[0] == es[1] || es[1] == es[2] || es[0] == es[2] {
            continue;
        }
        let mut edges = [es[0], es[1], es[2]];
        edges.sort_by(|&a, &b| d.edges[a].id.cmp(&d.edges[b].id));
        let node_of = |a: usize, b: usize| -> Option<usize> {
            cyc.iter()
                .map(|&x| m.tail(x) - m.nv)
                .find(|&c| d.crossings[c].involves(a) && d.crossings[c].involves(b))
        };
        let (Some(x01), Some(x12), Some(x20)) = (
            node_of(edges[0], edges[1]),
            node_of(edges[1], edges[2]),
            node_of(edges[2], edges[0]),
        ) else {
            continue;
        };
        let left_count = cyc.iter().filter(|&&x| PlanarMap::forward(x)).count();
        out.push(RawTricell {
            face: f,
            edges,
            crossings: [x01, x12, x20],
            left_count,
        });
    }
    out
}

fn to_tricell(d: &Drawing, m: &PlanarMap, t: &RawTricell) -> Tricell {
    Tricell {
        face: m.keys[t.face].clone(),
        edges: t.edges.map(|e| d.edges[e].id.clone()),
        crossings: t.crossings.map(|c| d.crossings[c].id.clone()),
    }
}

pub fn tricells(d: &Drawing) -> Result<Vec<Tricell>> {
    d.ensure_valid()?;
    let m = PlanarMap::build(d);
    Ok(raw_tricells(d, &m)
        .iter()
        .map(|t| to_tricell(d, &m, t))
        .collect())
}

fn find_raw(d: &Drawing, t: &Tricell) -> Result<(PlanarMap, RawTricell)> {
    let m = PlanarMap::build(d);
    let found = raw_tricells(d, &m).into_iter().find(|r| {
        r.edges.map(|e| d.edges[e].id.as_str()) == t.edges.each_ref().map(|s| s.as_str())
            && r.crossings.map(|c| d.crossings[c].id.as_str())
                == t.crossings.each_ref().map(|s| s.as_str())
    });
    match found {
        Some(r) => Ok((m, r)),
        None => Err(Error::NotATricell(t.edges.join(",").to_string())),
    }
}

fn parity_of(left: usize) -> Parity {
    if left.is_multiple_of(2) {
        Parity::Even
    } else {
        Parity::Odd
    }
}

pub fn parity(d: &Drawing, t: &Tricell) -> Result<Parity> {
    let (_, r) = find_raw(d, t)?;
    Ok(parity_of(r.left_count))
}

pub fn raw_parity(t: &RawTricell) -> Parity {
    parity_of(t.left_count)
}

/// Swap the two triangle crossings on each of the three edges.
pub fn flip_in_place(d: &mut Drawing, edges: [usize; 3], crossings: [usize; 3]) -> Result<()> {
    for e in edges {
        let on: Vec<usize> = crossings
            .iter()
            .copied()
            .filter(|&c| d.crossings[c].involves(e))
            .collect();
        if on.len() != 2 {
            return Err(Error::NotATricell(
                "crossings do not match the edges".into(),
            ));
        }
        let (Some(i), Some(j)) = (d.position(on[0], e), d.position(on[1], e)) else {
            return Err(Error::NotATricell("crossing missing from order".into()));
        };
        if i.abs_diff(j) != 1 {
            return Err(Error::NotATricell(format!(
                "crossings not adjacent along {}",
                d.edges[e].id
            )));
        }
        d.order[e].swap(i, j);
    }
    Ok(())
}

pub fn apply_flip(d: &Drawing, t: &Tricell) -> Result<Drawing> {
    let (_, r) = find_raw(d, t)?;
    let mut out = d.clone();
    flip_in_place(&mut out, r.edges, r.crossings)?;
    Ok(out)
}

/// Edge triples (sorted ids) that span a crossing triangle.
pub fn crossing_triangles(d: &Drawing) -> Result<BTreeSet<[String; 3]>> {
    d.ensure_valid()?;
    Ok(crossing_triangles_unchecked(d))
}

pub fn crossing_triangles_unchecked(d: &Drawing) -> BTreeSet<[String; 3]> {
    let n = d.edges.len();
    let mut crosses = vec![vec![false; n]; n];
    for c in &d.crossings {
        crosses[c.edges[0]][c.edges[1]] = true;
        crosses[c.edges[1]][c.edges[0]] = true;
    }
    let mut out = BTreeSet::new();
    for (a, b, c) in (0..n).tuple_combinations() {
        if !(crosses[a][b] && crosses[b][c] && crosses[a][c]) {
            continue;
        }
        let mut keep = vec![false; n];
        keep[a] = true;
        keep[b] = true;
        keep[c] = true;
        let sub = induce_mask(d, &keep);
        let m = PlanarMap::build(&sub);
        if !raw_tricells(&sub, &m).is_empty() {
            let mut ids = [
                d.edges[a].id.clone(),
                d.edges[b].id.clone(),
                d.edges[c].id.clone(),
            ];
            ids.sort();
            out.insert(ids);
        }
    }
    out
}

/// One recorded flip: the edge triple and the crossings bounding the cell
/// before the flip.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipRecord {
    pub edges: [String; 3],
    pub crossings: [String; 3],
}

impl FlipRecord {
    pub fn of(d: &Drawing, t: &RawTricell) -> FlipRecord {
        FlipRecord {
            edges: t.edges.map(|e| d.edges[e].id.clone()),
            crossings: t.crossings.map(|c| d.crossings[c].id.clone()),
        }
    }
}

impl fmt::Display for FlipRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {}", self.edges.join(","), self.crossings.join(","))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipSequence {
    pub flips: Vec<FlipRecord>,
}

impl FlipSequence {
    pub fn len(&self) -> usize {
        self.flips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flips.is_empty()
    }

    pub fn to_text(&self) -> String {
        self.flips.iter().map(|r| format!("{r}\n")).collect()
    }

    pub fn parse(text: &str) -> Result<FlipSequence> {
        let mut flips = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad =
                || Error::BadParams(format!("line {}: expected `e1,e2,e3 | x1,x2,x3`", n + 1));
            let (l, r) = line.split_once('|').ok_or_else(bad)?;
            let es: Vec<String> = l.split(',').map(|s| s.trim().to_string()).collect();
            let xs: Vec<String> = r.split(',').map(|s| s.trim().to_string()).collect();
            let (Ok(edges), Ok(crossings)) =
                (<[String; 3]>::try_from(es), <[String; 3]>::try_from(xs))
            else {
                return Err(bad());
            };
            flips.push(FlipRecord { edges, crossings });
        }
        Ok(FlipSequence { flips })
    }
}

/// Apply one recorded flip; the cell is looked up by its edge triple.
pub fn apply_record(d: &mut Drawing, rec: &FlipRecord) -> Result<()> {
    let m = PlanarMap::build(d);
    let mut want: Vec<&str> = rec.edges.iter().map(|s| s.as_str()).collect();
    want.sort();
    let t = raw_tricells(d, &m)
        .into_iter()
        .find(|t| {
            t.edges
                .iter()
                .map(|&e| d.edges[e].id.as_str())
                .collect::<Vec<_>>()
                == want
        })
        .ok_or_else(|| Error::NotATricell(rec.edges.join(",")))?;
    let mut have: Vec<&str> = t
        .crossings
        .iter()
        .map(|&c| d.crossings[c].id.as_str())
        .collect();
    let mut given: Vec<&str> = rec.crossings.iter().map(|s| s.as_str()).collect();
    have.sort();
    given.sort();
    if have != given {
        return Err(Error::NotATricell(format!(
            "stale crossings for {}",
            rec.edges.join(",")
        )));
    }
    flip_in_place(d, t.edges, t.crossings)
}

pub fn replay(d: &Drawing, seq: &FlipSequence) -> Result<Drawing> {
    let mut cur = d.clone();
    for r in &seq.flips {
        apply_record(&mut cur, r)?;
    }
    Ok(cur)
}
