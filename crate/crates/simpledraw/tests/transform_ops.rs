mod common;

use common::scrambled_pair;
use simpledraw::catalog::{build, sample_geometric, sample_triangle};
use simpledraw::core::{canonical_key, induce, FaceClasses, PlanarMap};
use simpledraw::ers::ers_of;
use simpledraw::flips::{raw_tricells, replay, tricells};
use simpledraw::graphs::{edge_order, is_complete_multipartite, Graph};
use simpledraw::transform::{
    clear_lens, empty_triangle, empty_triangle_with_stats, find_free_lens, lenses, resolve_lens,
    route_target, transform, Lens, Overlay,
};
use simpledraw::{Drawing, Error};

fn tri() -> [String; 3] {
    ["t1".to_string(), "t2".into(), "t3".into()]
}

/// Host-host crossings lying in the lens cell of `e1 ∪ e2`.
fn host_crossings_in(ov: &Overlay, lens: &Lens) -> usize {
    let d = &ov.drawing;
    let m = PlanarMap::build(d);
    let mask: Vec<bool> = (0..d.edges.len()).map(|e| !ov.is_host(e)).collect();
    let fc = FaceClasses::new(d, &m, &mask);
    d.crossings
        .iter()
        .enumerate()
        .filter(|(_, c)| ov.is_host(c.edges[0]) && ov.is_host(c.edges[1]))
        .filter(|(c, _)| fc.key_of_face(m.faces_at(m.nv + c)[0]) == lens.key)
        .count()
}

#[test]
fn routing_the_flipped_triple() {
    let e = build("fig_iso_k33", &[]).unwrap();
    let (a, b) = (&e.drawings[0], &e.drawings[1]);
    for id in ["ux", "vy", "wz"] {
        let x: Vec<String> = a.edge_ids().into_iter().filter(|s| s != id).collect();
        let ov = route_target(a, &x, id, b).unwrap();
        // e1 and its copy meet only at the shared endpoints
        assert_eq!(ov.intersections(), 0);
        let ls = lenses(&ov);
        assert_eq!(ls.len(), 2);
        assert_eq!(ls.iter().filter(|l| l.free).count(), 1);
        let free = find_free_lens(&ov).unwrap();
        // the free lens holds the tricell
        let m = PlanarMap::build(&ov.drawing);
        let cell = raw_tricells(&ov.drawing, &m)
            .into_iter()
            .find(|t| {
                let mut ids: Vec<&str> = t
                    .edges
                    .iter()
                    .map(|&e| ov.drawing.edges[e].id.as_str())
                    .collect();
                ids.sort();
                ids == ["ux", "vy", "wz"]
            })
            .expect("tricell survives the overlay");
        let mask: Vec<bool> = (0..ov.drawing.edges.len())
            .map(|e| !ov.is_host(e))
            .collect();
        let fc = FaceClasses::new(&ov.drawing, &m, &mask);
        assert_eq!(fc.key_of_face(cell.face), free.key);
        assert_eq!(host_crossings_in(&ov, &free), 1);
        let (d2, o2, seq) = resolve_lens(a, &ov, &free).unwrap();
        assert_eq!(seq.len(), 1);
        assert_eq!(o2.intersections(), 0);
        assert_eq!(ers_of(&d2), ers_of(a));
        assert_eq!(canonical_key(&d2), canonical_key(b));
    }
}

#[test]
fn routing_an_unchanged_edge_gives_a_flat_curve() {
    let d = sample_geometric(&[3, 3], 1).unwrap();
    let x: Vec<String> = d.edge_ids().into_iter().filter(|s| s != "r3b3").collect();
    let ov = route_target(&d, &x, "r3b3", &d).unwrap();
    assert_eq!(ov.intersections(), 0);
    // the two copies bound an empty lens on one side
    let ls = lenses(&ov);
    assert!(ls.iter().any(|l| l.free));
    let l = find_free_lens(&ov).unwrap();
    assert_eq!(host_crossings_in(&ov, &l), 0);
    let (d2, _, seq) = resolve_lens(&d, &ov, &l).unwrap();
    assert!(seq.is_empty());
    assert_eq!(canonical_key(&d2), canonical_key(&d));
}

#[test]
fn empty_triangle_trivial_cases() {
    for seed in 0..10 {
        let d = sample_triangle(0, seed).unwrap();
        let (r, seq) = empty_triangle(&d, &tri()).unwrap();
        assert!(seq.is_empty());
        assert!(tricells(&r).unwrap().iter().any(|t| t.edges == tri()));
        let d = sample_triangle(1, seed).unwrap();
        let (r, seq, st) = empty_triangle_with_stats(&d, &tri()).unwrap();
        assert_eq!((st.xi, seq.len()), (1, 1), "seed {seed}");
        assert!(tricells(&r).unwrap().iter().any(|t| t.edges == tri()));
        assert_eq!(canonical_key(&replay(&d, &seq).unwrap()), canonical_key(&r));
    }
}

#[test]
fn empty_triangle_rejects_non_triangles() {
    let d = sample_triangle(2, 0).unwrap();
    let bad = ["t1".to_string(), "t2".into(), "t2a".into()];
    assert!(empty_triangle(&d, &bad).is_err());
    let e = build("fig_iso_k33", &[]).unwrap();
    // ux and uy share u
    let adj = ["ux".to_string(), "uy".into(), "vz".into()];
    assert!(matches!(
        empty_triangle(&e.drawings[0], &adj),
        Err(Error::NotACrossingTriangle(_))
    ));
}

/// Resolve every lens of the first differing edge, checking each step.
fn drive_first_edge(d1: &Drawing, d2: &Drawing) -> Option<(usize, Vec<usize>)> {
    let g = Graph::of(d1);
    let p = is_complete_multipartite(&g).partition()?;
    let eo = edge_order(&g, &p).unwrap();
    let i = (eo.star_len..eo.order.len()).find(|&i| {
        canonical_key(&induce(d1, &eo.order[..=i]).unwrap())
            != canonical_key(&induce(d2, &eo.order[..=i]).unwrap())
    })?;
    let x = &eo.order[..i];
    let mut d = d1.clone();
    let mut ov = route_target(&d, x, &eo.order[i], d2).unwrap();
    let mut counts = vec![ov.intersections()];
    let mut steps = 0;
    loop {
        let n = ov.intersections();
        let l = find_free_lens(&ov).unwrap();
        let inside = host_crossings_in(&ov, &l);
        let mut dd = d.clone();
        let mut oo = ov.clone();
        let mut sweeps = Vec::new();
        let seq = clear_lens(&mut dd, &mut oo, &l, &mut sweeps).unwrap();
        match inside {
            0 => assert!(seq.is_empty()),
            1 => assert_eq!(seq.len(), sweeps.iter().map(|s| s.flips).sum::<usize>() + 1),
            _ => assert!(seq.len() >= inside),
        }
        let (nd, no, seq2) = resolve_lens(&d, &ov, &l).unwrap();
        assert_eq!(seq2, seq);
        assert_eq!(ers_of(&nd), ers_of(&d));
        steps += 1;
        if n == 0 {
            break;
        }
        assert!(no.intersections() < n);
        counts.push(no.intersections());
        d = nd;
        ov = no;
    }
    Some((steps, counts))
}

#[test]
fn lens_steps_on_scrambled_pairs() {
    let (mut driven, mut differing) = (0, 0);
    for seed in 0..120u64 {
        let sizes: &[usize] = [&[3, 3][..], &[2, 2, 2], &[3, 2, 2], &[4, 4]][seed as usize % 4];
        let (a, b) = scrambled_pair(sizes, seed, 5 + seed as usize % 25);
        if canonical_key(&a) != canonical_key(&b) {
            differing += 1;
        }
        if let Some((steps, counts)) = drive_first_edge(&a, &b) {
            assert!(steps >= 1);
            assert!(counts.windows(2).all(|w| w[1] < w[0]), "{counts:?}");
            driven += 1;
        }
    }
    assert_eq!(driven, differing);
    assert!(driven >= 30, "{driven}");
}

#[test]
fn strongly_isomorphic_inputs_need_no_flips() {
    let d = sample_geometric(&[3, 2, 2], 4).unwrap();
    assert!(transform(&d, &d).unwrap().is_empty());
    let mut renamed = d.clone();
    for (i, c) in renamed.crossings.iter_mut().enumerate() {
        c.id = format!("k{i}");
    }
    assert!(transform(&d, &renamed).unwrap().is_empty());
}

#[test]
fn transform_preconditions() {
    let f = build("fig2_k33", &[]).unwrap();
    assert!(matches!(
        transform(&f.drawings[0], &f.drawings[1]),
        Err(Error::ErsMismatch)
    ));
    let t = build("tight_adjacent", &[3, 3]).unwrap();
    assert!(matches!(
        transform(&t.drawings[0], &t.drawings[1]),
        Err(Error::NotCompleteMultipartite(_))
    ));
    let a = sample_geometric(&[3, 3], 0).unwrap();
    let b = sample_geometric(&[2, 2, 2], 0).unwrap();
    assert!(matches!(transform(&a, &b), Err(Error::GraphMismatch(..))));
}
