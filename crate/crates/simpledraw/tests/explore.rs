mod common;

use std::collections::HashSet;

use common::{naive_distance, scrambled_pair};
use simpledraw::catalog::{build, sample_geometric};
use simpledraw::core::canonical_key;
use simpledraw::explore::{component, flip_distance, flip_neighbors, order_obstruction, Distance};
use simpledraw::flips::{apply_flip, tricells};
use simpledraw::Error;

#[test]
fn neighbors_of_figures() {
    let e = build("fig_no_tri_path", &[]).unwrap();
    assert!(flip_neighbors(&e.drawings[0]).unwrap().is_empty());
    let e = build("fig_iso_k33", &[]).unwrap();
    let keys: Vec<String> = flip_neighbors(&e.drawings[0])
        .unwrap()
        .iter()
        .map(canonical_key)
        .collect();
    assert!(keys.contains(&canonical_key(&e.drawings[1])));
}

#[test]
fn neighbor_count_is_tricells_minus_collisions() {
    for seed in 0..30u64 {
        let d = sample_geometric(&[3, 2, 2], seed).unwrap();
        let by_flip: HashSet<String> = tricells(&d)
            .unwrap()
            .iter()
            .map(|t| canonical_key(&apply_flip(&d, t).unwrap()))
            .collect();
        assert_eq!(flip_neighbors(&d).unwrap().len(), by_flip.len());
    }
}

#[test]
fn distances_of_figures() {
    let e = build("fig_iso_k33", &[]).unwrap();
    let (a, b) = (&e.drawings[0], &e.drawings[1]);
    assert_eq!(flip_distance(a, a, 10).unwrap(), Distance::Steps(0));
    assert_eq!(flip_distance(a, b, 1000).unwrap(), Distance::Steps(1));
    let t = build("tight_adjacent", &[3, 3]).unwrap();
    assert_eq!(
        flip_distance(&t.drawings[0], &t.drawings[1], 1_000_000).unwrap(),
        Distance::Unreachable
    );
    // different ERS are trivially unreachable
    let f = build("fig2_k33", &[]).unwrap();
    assert_eq!(
        flip_distance(&f.drawings[0], &f.drawings[1], 10).unwrap(),
        Distance::Unreachable
    );
}

#[test]
fn bidirectional_search_matches_plain_bfs() {
    let mut checked = 0;
    for seed in 0..40u64 {
        let sizes: &[usize] = if seed % 2 == 0 { &[3, 3] } else { &[2, 2, 2] };
        let (a, b) = scrambled_pair(sizes, seed, 1 + seed as usize % 8);
        let Some(naive) = naive_distance(&a, &b, 20_000) else {
            continue;
        };
        let fast = flip_distance(&a, &b, 1_000_000).unwrap();
        assert_eq!(
            fast,
            Distance::Steps(naive.expect("scrambles are connected")),
            "seed {seed}"
        );
        checked += 1;
    }
    assert!(checked >= 20, "only {checked} instances small enough");
}

#[test]
fn budgets_are_reported() {
    let lb = build("lower_bound", &[8]).unwrap();
    let (a, b) = (&lb.drawings[0], &lb.drawings[1]);
    assert_eq!(flip_distance(a, b, 3).unwrap(), Distance::BudgetExceeded);
    let c = component(a, 5).unwrap();
    assert!(!c.complete);
}

#[test]
fn components_are_closed_under_flips() {
    let e = build("fig_iso_k33", &[]).unwrap();
    let c = component(&e.drawings[0], 100_000).unwrap();
    assert!(c.complete);
    assert!(c.keys.contains(&canonical_key(&e.drawings[1])));
    let mut sorted = c.keys.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted, c.keys);
    let stuck = build("fig_no_tri_path", &[]).unwrap();
    assert_eq!(component(&stuck.drawings[0], 10).unwrap().keys.len(), 1);
}

#[test]
fn obstructions() {
    let t = build("tight_adjacent", &[3, 3]).unwrap();
    let c = order_obstruction(&t.drawings[0], &t.drawings[1])
        .unwrap()
        .expect("certificate");
    assert_eq!(c.edge, "r1b1");
    assert!(c.verify(&t.drawings[0], &t.drawings[1]));
    let p = build("fig_no_tri_path", &[]).unwrap();
    assert_eq!(
        order_obstruction(&p.drawings[0], &p.drawings[1])
            .unwrap()
            .unwrap()
            .edge,
        "cd"
    );
    for seed in 0..20u64 {
        let (a, b) = scrambled_pair(&[3, 3], seed, 10);
        assert_eq!(order_obstruction(&a, &b).unwrap(), None, "seed {seed}");
    }
    let f = build("fig2_k33", &[]).unwrap();
    assert!(matches!(
        order_obstruction(&f.drawings[0], &f.drawings[1]),
        Err(Error::ErsMismatch)
    ));
}

#[test]
fn tampered_certificates_fail_verification() {
    let t = build("tight_adjacent", &[3, 3]).unwrap();
    let c = t.certificate.clone().unwrap();
    let mut bad = c.clone();
    bad.order2 = bad.order1.clone();
    assert!(!bad.verify(&t.drawings[0], &t.drawings[1]));
    let mut bad = c.clone();
    bad.edge = "r3b3".into();
    assert!(!bad.verify(&t.drawings[0], &t.drawings[1]));
    assert!(!c.verify(&t.drawings[0], &t.drawings[0]));
}
