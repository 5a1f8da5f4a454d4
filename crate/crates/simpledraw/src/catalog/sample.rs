//! Random straight-line drawings in general position.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::core::Drawing;
use crate::error::{Error, Result};
use crate::geom::{orient, straight, Pt};

pub const MAX_VERTICES: usize = 16;
const TRIES: usize = 200;
const PREFIX: [&str; 8] = ["r", "b", "g", "y", "p", "o", "c", "m"];

/// `(id, source, target)` triples.
pub type EdgeList = Vec<(String, String, String)>;

/// Vertex labels per class and the complete multipartite edge list (ids are
/// the concatenated labels, lower class first).
pub fn multipartite_labels(sizes: &[usize]) -> (Vec<Vec<String>>, EdgeList) {
    let classes: Vec<Vec<String>> = sizes
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            (1..=n)
                .map(|k| format!("{}{k}", PREFIX[i % PREFIX.len()]))
                .collect()
        })
        .collect();
    let mut edges = Vec::new();
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            for u in &classes[i] {
                for v in &classes[j] {
                    edges.push((format!("{u}{v}"), u.clone(), v.clone()));
                }
            }
        }
    }
    (classes, edges)
}

fn general_position(p: &[Pt]) -> bool {
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] == p[j] {
                return false;
            }
            for k in j + 1..p.len() {
                if orient(p[i], p[j], p[k]) == 0 {
                    return false;
                }
            }
        }
    }
    true
}

fn check_sizes(sizes: &[usize]) -> Result<usize> {
    let n: usize = sizes.iter().sum();
    if n > MAX_VERTICES || sizes.len() > PREFIX.len() || sizes.contains(&0) {
        return Err(Error::BadParams(format!(
            "class sizes {sizes:?} out of range"
        )));
    }
    Ok(n)
}

fn assemble(sizes: &[usize], pts: &[Pt], name: &str) -> Result<Drawing> {
    let (classes, edges) = multipartite_labels(sizes);
    let labels: Vec<String> = classes.iter().flatten().cloned().collect();
    let verts: Vec<(String, Pt)> = labels.into_iter().zip(pts.iter().copied()).collect();
    let mut d = straight(name, &verts, &edges)?;
    d.partition = Some(classes);
    Ok(d)
}

/// Straight-line complete multipartite drawing with vertices at random
/// integer points in general position.
pub fn sample_geometric(sizes: &[usize], seed: u64) -> Result<Drawing> {
    Ok(sample_geometric_with_points(sizes, seed)?.0)
}

/// Same as `sample_geometric`, also returning the vertex positions.
pub fn sample_geometric_with_points(sizes: &[usize], seed: u64) -> Result<(Drawing, Vec<Pt>)> {
    let n = check_sizes(sizes)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..TRIES {
        let pts: Vec<Pt> = (0..n)
            .map(|_| (rng.gen_range(0..1000), rng.gen_range(0..1000)))
            .collect();
        if !general_position(&pts) {
            continue;
        }
        match assemble(sizes, &pts, &format!("sample{sizes:?}#{seed}")) {
            Ok(d) => return Ok((d, pts)),
            Err(Error::DegeneratePlacement(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::DegeneratePlacement(format!(
        "no general position placement after {TRIES} tries"
    )))
}

/// Integer points in strictly convex position, counterclockwise.
pub fn convex_points(n: usize, radius: f64) -> Vec<Pt> {
    (0..n)
        .map(|k| {
            let a = std::f64::consts::TAU * (k as f64 + 0.3 * (k as f64).sqrt() / n as f64)
                / n as f64
                + 0.1;
            (
                (radius * a.cos()).round() as i64,
                (radius * a.sin()).round() as i64,
            )
        })
        .collect()
}

/// Vertices in convex position; the vertex sequence around the hull is a
/// seeded shuffle (seed 0 keeps class order round robin).
pub fn sample_convex(sizes: &[usize], seed: u64) -> Result<Drawing> {
    let n = check_sizes(sizes)?;
    let pts = convex_points(n, 10_000.0);
    let mut slots: Vec<usize> = Vec::new();
    // round robin over classes
    let mut left = sizes.to_vec();
    let mut starts: Vec<usize> = Vec::new();
    let mut acc = 0;
    for &s in sizes {
        starts.push(acc);
        acc += s;
    }
    let mut taken = vec![0; sizes.len()];
    while slots.len() < n {
        for c in 0..sizes.len() {
            if left[c] > 0 {
                slots.push(starts[c] + taken[c]);
                taken[c] += 1;
                left[c] -= 1;
            }
        }
    }
    if seed != 0 {
        slots.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let mut placed = vec![(0, 0); n];
    for (k, &v) in slots.iter().enumerate() {
        placed[v] = pts[k];
    }
    assemble(sizes, &placed, &format!("convex{sizes:?}#{seed}"))
}

/// Three long segments `t1,t2,t3` bounding a triangle plus `m` segments
/// `s1..sm`, each cutting two sides of it. All endpoints lie outside.
pub fn sample_triangle(m: usize, seed: u64) -> Result<Drawing> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let corners: [Pt; 3] = [(-1000, -600), (1000, -600), (0, 1100)];
    let lerp = |p: Pt, q: Pt, t: f64| -> Pt {
        (
            (p.0 as f64 + t * (q.0 - p.0) as f64).round() as i64,
            (p.1 as f64 + t * (q.1 - p.1) as f64).round() as i64,
        )
    };
    for _ in 0..TRIES {
        let mut verts = Vec::new();
        let mut edges = Vec::new();
        for i in 0..3 {
            let (p, q) = (corners[i], corners[(i + 1) % 3]);
            verts.push((format!("t{}a", i + 1), lerp(p, q, -0.5)));
            verts.push((format!("t{}b", i + 1), lerp(p, q, 1.5)));
            edges.push((
                format!("t{}", i + 1),
                format!("t{}a", i + 1),
                format!("t{}b", i + 1),
            ));
        }
        for k in 1..=m {
            let i = rng.gen_range(0..3);
            let j = (i + rng.gen_range(1..3)) % 3;
            let p = lerp(corners[i], corners[(i + 1) % 3], rng.gen_range(0.03..0.97));
            let q = lerp(corners[j], corners[(j + 1) % 3], rng.gen_range(0.03..0.97));
            verts.push((format!("s{k}a"), lerp(p, q, -6.0)));
            verts.push((format!("s{k}b"), lerp(p, q, 7.0)));
            edges.push((format!("s{k}"), format!("s{k}a"), format!("s{k}b")));
        }
        match straight(&format!("triangle{m}#{seed}"), &verts, &edges) {
            Ok(d) => return Ok(d),
            Err(Error::DegeneratePlacement(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::DegeneratePlacement(format!(
        "no general position placement after {TRIES} tries"
    )))
}
