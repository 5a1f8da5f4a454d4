mod common;

use std::collections::BTreeSet;

use common::{geometric_ers_of, multipartite_by_complement, scrambled_pair};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use simpledraw::catalog::{sample_geometric, sample_geometric_with_points};
use simpledraw::core::{canonical_key, Drawing, PlanarMap};
use simpledraw::ers::{check_order_lemma, crossing_pairs, ers_of};
use simpledraw::explore::{flip_distance, Distance};
use simpledraw::flips::{crossing_triangles_unchecked, flip_in_place, raw_tricells, replay};
use simpledraw::graphs::{is_complete_multipartite, Graph};
use simpledraw::transform::transform;

fn shapes() -> impl Strategy<Value = Vec<usize>> {
    prop_oneof![
        Just(vec![3, 3]),
        Just(vec![2, 2, 2]),
        Just(vec![3, 2, 2]),
        Just(vec![4, 3]),
        Just(vec![2, 2, 2, 1]),
        Just(vec![1, 1, 1, 1, 1, 1]),
    ]
}

/// Relabel crossings and permute their storage order.
fn shuffle_crossings(d: &Drawing, seed: u64) -> Drawing {
    let mut perm: Vec<usize> = (0..d.crossings.len()).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut out = d.clone();
    for (old, &new) in perm.iter().enumerate() {
        out.crossings[new] = d.crossings[old].clone();
        out.crossings[new].id = format!("z{seed}_{old}");
    }
    for l in &mut out.order {
        for c in l.iter_mut() {
            *c = perm[*c];
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn flips_keep_ers_pairs_and_triangles(sizes in shapes(), seed in 0u64..10_000, picks in prop::collection::vec(0usize..1000, 1..25)) {
        let mut d = sample_geometric(&sizes, seed).unwrap();
        let (ers, pairs, tris) = (ers_of(&d), crossing_pairs(&d), crossing_triangles_unchecked(&d));
        for p in picks {
            let m = PlanarMap::build_light(&d);
            let ts = raw_tricells(&d, &m);
            if ts.is_empty() {
                break;
            }
            let t = ts[p % ts.len()];
            let before = canonical_key(&d);
            flip_in_place(&mut d, t.edges, t.crossings).unwrap();
            prop_assert!(d.is_valid());
            // the same cell flips straight back
            let mut back = d.clone();
            flip_in_place(&mut back, t.edges, t.crossings).unwrap();
            prop_assert_eq!(canonical_key(&back), before);
        }
        prop_assert_eq!(ers_of(&d), ers);
        prop_assert_eq!(crossing_pairs(&d), pairs);
        prop_assert_eq!(crossing_triangles_unchecked(&d), tris);
    }

    #[test]
    fn canonical_key_ignores_crossing_names_and_storage(sizes in shapes(), seed in 0u64..10_000, relabel in 0u64..1000) {
        let d = sample_geometric(&sizes, seed).unwrap();
        let r = shuffle_crossings(&d, relabel);
        prop_assert!(r.is_valid());
        prop_assert_eq!(canonical_key(&r), canonical_key(&d));
        let back = Drawing::from_json(&r.to_json()).unwrap();
        prop_assert_eq!(canonical_key(&back), canonical_key(&d));
        prop_assert_eq!(ers_of(&back), ers_of(&d));
    }

    #[test]
    fn ers_agrees_with_coordinates(sizes in shapes(), seed in 0u64..100_000) {
        let (d, pos) = sample_geometric_with_points(&sizes, seed).unwrap();
        let geo = geometric_ers_of(&d, &pos);
        let ers = ers_of(&d);
        prop_assert_eq!(ers.vertex_rotations, geo.vertex_rotations);
        prop_assert_eq!(ers.crossing_rotations, geo.crossing_rotations);
    }

    #[test]
    fn multipartite_recognition(n in 1usize..=8, bits in any::<u32>()) {
        let vs: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let mut edges = BTreeSet::new();
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                // bias toward dense graphs so positives are common
                if (bits >> (k % 32)) & 1 == 1 || (bits >> ((k + 7) % 32)) & 1 == 1 {
                    edges.insert((vs[i].clone(), vs[j].clone()));
                }
                k += 1;
            }
        }
        let g = Graph {
            vertices: vs.clone(),
            edges: edges.iter().map(|(a, b)| (format!("{a}{b}"), a.clone(), b.clone())).collect(),
        };
        prop_assert_eq!(is_complete_multipartite(&g).partition().is_some(), multipartite_by_complement(&vs, &edges));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn transform_replays_and_keeps_the_order_lemma(sizes in shapes(), seed in 0u64..10_000, k in 1usize..30) {
        let (a, b) = scrambled_pair(&sizes, seed, k);
        prop_assert!(check_order_lemma(&a, &b).unwrap().violations.is_empty());
        let seq = transform(&a, &b).unwrap();
        prop_assert_eq!(canonical_key(&replay(&a, &seq).unwrap()), canonical_key(&b));
    }

    #[test]
    fn distance_is_symmetric_and_below_transform(seed in 0u64..10_000, k in 1usize..8) {
        let (a, b) = scrambled_pair(&[3, 3], seed, k);
        let ab = flip_distance(&a, &b, 200_000).unwrap();
        let ba = flip_distance(&b, &a, 200_000).unwrap();
        prop_assert_eq!(ab, ba);
        if let Distance::Steps(s) = ab {
            prop_assert!(s <= k);
            prop_assert!(s <= transform(&a, &b).unwrap().len());
        }
    }
}
