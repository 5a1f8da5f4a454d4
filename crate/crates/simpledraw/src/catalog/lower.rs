//! A K_{n/2,n/2} pair in which every green edge has to pass every crossing
//! between black edges.
//!
//! Classes are A∪D and B∪C, each part of size n/4. Black edges join A to C
//! and cross each other in a horizontal band; green edges run from D (above)
//! to B (below) through the band, right of all black crossings, and cross
//! each other below it. Gray edges A–B and D–C stay out of the way.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::core::{Drawing, PlanarMap};
use crate::error::{Error, Result};
use crate::flips::{flip_in_place, raw_tricells};
use crate::geom::{PolyDrawing, Pt};

pub struct LowerBound {
    pub d1: Drawing,
    pub d2: Drawing,
    /// "black", "green", "gray".
    pub groups: BTreeMap<String, Vec<String>>,
    /// #green × #(black, black) crossings.
    pub bound: usize,
}

fn spread(k: usize, lo: i64, hi: i64) -> Vec<i64> {
    if k == 1 {
        return vec![(lo + hi) / 2];
    }
    (0..k)
        .map(|i| lo + (hi - lo) * i as i64 / (k as i64 - 1))
        .collect()
}

fn place(k: usize, rng: &mut ChaCha8Rng) -> Vec<(String, Pt)> {
    let mut j = |p: Pt| (p.0 + rng.gen_range(-40..=40), p.1 + rng.gen_range(-40..=40));
    let mut out = Vec::new();
    let ys = spread(k, -1000, 1000);
    for (i, &y) in ys.iter().enumerate() {
        out.push((format!("a{}", i + 1), j((0, y))));
    }
    for (i, &x) in spread(k, 8700, 8900).iter().enumerate() {
        out.push((format!("b{}", i + 1), j((x, -10_000))));
    }
    for (i, &y) in ys.iter().enumerate() {
        out.push((format!("c{}", i + 1), j((10_000, y))));
    }
    for (i, &x) in spread(k, 7000, 9500).iter().enumerate() {
        out.push((format!("d{}", i + 1), j((x, 10_000))));
    }
    out
}

fn attempt(k: usize, seed: u64) -> Result<LowerBound> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let verts = place(k, &mut rng);
    let label = |p: char, i: usize| format!("{p}{i}");
    let mut pd = PolyDrawing::new("lower_bound_d1");
    for (v, p) in &verts {
        pd.vertex(v, *p);
    }
    let mut groups: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (x, y, color) in [
        ('a', 'b', "gray"),
        ('a', 'c', "black"),
        ('d', 'b', "green"),
        ('d', 'c', "gray"),
    ] {
        for i in 1..=k {
            for j in 1..=k {
                let (u, v) = (label(x, i), label(y, j));
                let id = format!("{u}{v}");
                pd.edge(&id, &u, &v, &[]);
                groups.entry(color.to_string()).or_default().push(id);
            }
        }
    }
    let side = |p: char| -> Vec<String> { (1..=k).map(|i| label(p, i)).collect() };
    pd.partition = Some(vec![
        [side('a'), side('d')].concat(),
        [side('b'), side('c')].concat(),
    ]);
    let d1 = pd.build()?;
    let color = |id: &str| -> &str {
        groups
            .iter()
            .find(|(_, ids)| ids.iter().any(|x| x == id))
            .map(|(c, _)| c.as_str())
            .unwrap_or("")
    };
    let black_pairs = d1
        .crossings
        .iter()
        .filter(|c| c.edges.iter().all(|&e| color(&d1.edges[e].id) == "black"))
        .count();
    let bound = groups["green"].len() * black_pairs;
    // every green must cross every black
    for g in &groups["green"] {
        let gi = d1.edge(g).expect("green");
        if d1.order[gi].len() < groups["black"].len() {
            return Err(Error::DegeneratePlacement("a green misses a black".into()));
        }
    }
    let mut d2 = d1.clone();
    let mut done: BTreeSet<Vec<String>> = BTreeSet::new();
    loop {
        let m = PlanarMap::build_light(&d2);
        let next = raw_tricells(&d2, &m).into_iter().find(|t| {
            let ids: Vec<String> = t.edges.iter().map(|&e| d2.edges[e].id.clone()).collect();
            let cs: Vec<&str> = ids.iter().map(|s| color(s)).collect();
            cs.iter().filter(|&&c| c == "green").count() == 1
                && cs.iter().filter(|&&c| c == "black").count() == 2
                && !done.contains(&ids)
        });
        let Some(t) = next else { break };
        done.insert(t.edges.iter().map(|&e| d2.edges[e].id.clone()).collect());
        flip_in_place(&mut d2, t.edges, t.crossings)?;
    }
    if done.len() != bound {
        return Err(Error::DegeneratePlacement(format!(
            "moved {} of {bound} green-crossing pairs",
            done.len()
        )));
    }
    d2.name = "lower_bound_d2".into();
    Ok(LowerBound {
        d1,
        d2,
        groups,
        bound,
    })
}

/// The pair for `n` vertices, `n` a positive multiple of four.
pub fn lower_bound_pair(n: usize) -> Result<LowerBound> {
    if n == 0 || !n.is_multiple_of(4) {
        return Err(Error::BadParams(format!(
            "lower_bound needs a positive multiple of 4, got {n}"
        )));
    }
    let mut last = None;
    for seed in 0..50 {
        match attempt(n / 4, seed) {
            Ok(lb) => return Ok(lb),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("tried"))
}
