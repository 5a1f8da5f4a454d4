use simpledraw::caratheodory::enclosing_cycle;
use simpledraw::catalog::{build, list};
use simpledraw::core::canonical_key;
use simpledraw::ers::{crossing_pairs, ers_of};
use simpledraw::explore::{flip_distance, Distance};
use simpledraw::graphs::{is_complete_multipartite, Graph};
use simpledraw::transform::transform;
use simpledraw::Error;

fn entry(name: &str, params: &[usize]) -> simpledraw::catalog::CatalogEntry {
    build(name, params).unwrap_or_else(|e| panic!("{name}{params:?}: {e}"))
}

#[test]
fn every_listed_entry_builds_at_its_smallest_size() {
    for info in list() {
        let params: Vec<usize> = match info.name {
            "tight_adjacent" | "tight_disjoint" | "caratheodory_minus_one" => vec![3, 3],
            "tight_kn_minus_c4" => vec![5],
            "tight_kmn_plus_edge" => vec![4, 1],
            "lower_bound" => vec![8],
            _ => vec![],
        };
        let e = entry(info.name, &params);
        for d in &e.drawings {
            assert!(d.is_valid(), "{}: {:?}", info.name, d.validate());
        }
    }
}

#[test]
fn unknown_names_and_bad_parameters_are_rejected() {
    assert!(matches!(build("fig99", &[]), Err(Error::UnknownEntry(_))));
    assert!(matches!(
        build("tight_adjacent", &[2, 3]),
        Err(Error::BadParams(_))
    ));
    assert!(matches!(
        build("tight_adjacent", &[3]),
        Err(Error::BadParams(_))
    ));
    assert!(matches!(
        build("lower_bound", &[6]),
        Err(Error::BadParams(_))
    ));
    assert!(matches!(
        build("tight_kn_minus_c4", &[4]),
        Err(Error::BadParams(_))
    ));
}

#[test]
fn fig2_separates_weak_isomorphism_from_ers() {
    let e = entry("fig2_k33", &[]);
    let (a, b) = (&e.drawings[0], &e.drawings[1]);
    assert_eq!(crossing_pairs(a), crossing_pairs(b));
    assert_eq!(ers_of(a).vertex_rotations, ers_of(b).vertex_rotations);
    let (ea, eb) = (ers_of(a), ers_of(b));
    let on: Vec<&String> = ea
        .crossing_rotations
        .keys()
        .filter(|k| k.contains("r3b1"))
        .collect();
    assert!(on.len() >= 2);
    for k in on {
        assert_ne!(ea.crossing_rotations[k], eb.crossing_rotations[k], "{k}");
    }
}

#[test]
fn fig_iso_is_one_flip_and_transform_finds_it() {
    let e = entry("fig_iso_k33", &[]);
    let (a, b) = (&e.drawings[0], &e.drawings[1]);
    assert_eq!(flip_distance(a, b, 10_000).unwrap(), Distance::Steps(1));
    assert_eq!(transform(a, b).unwrap().len(), 1);
}

#[test]
fn no_tri_path_is_stuck() {
    let e = entry("fig_no_tri_path", &[]);
    assert_eq!(e.certificate.as_ref().map(|c| c.edge.as_str()), Some("cd"));
    assert_eq!(
        flip_distance(&e.drawings[0], &e.drawings[1], 10_000).unwrap(),
        Distance::Unreachable
    );
}

#[test]
fn tightness_pairs_grow_and_stay_certified() {
    let cases: &[(&str, &[usize])] = &[
        ("tight_adjacent", &[3, 3]),
        ("tight_adjacent", &[4, 3]),
        ("tight_adjacent", &[4, 5]),
        ("tight_disjoint", &[3, 3]),
        ("tight_disjoint", &[5, 4]),
        ("tight_kn_minus_c4", &[5]),
        ("tight_kn_minus_c4", &[7]),
        ("tight_kmn_plus_edge", &[4, 1]),
        ("tight_kmn_plus_edge", &[5, 3]),
    ];
    for &(name, params) in cases {
        let e = entry(name, params);
        let (a, b) = (&e.drawings[0], &e.drawings[1]);
        assert_eq!(ers_of(a), ers_of(b), "{name}{params:?}");
        assert_ne!(canonical_key(a), canonical_key(b));
        let cert = e.certificate.clone().expect("certificate");
        assert!(cert.verify(a, b));
        assert!(
            is_complete_multipartite(&Graph::of(a))
                .partition()
                .is_none(),
            "{name}{params:?}"
        );
        assert_eq!(
            a.vertices.len(),
            expected_vertices(name, params),
            "{name}{params:?}"
        );
    }
}

fn expected_vertices(name: &str, params: &[usize]) -> usize {
    match name {
        "tight_kn_minus_c4" => params[0],
        _ => params[0] + params[1],
    }
}

#[test]
fn small_tightness_pairs_are_unreachable_by_search() {
    for (name, params) in [
        ("tight_adjacent", [3, 3]),
        ("tight_disjoint", [3, 3]),
        ("tight_kmn_plus_edge", [4, 1]),
    ] {
        let e = entry(name, &params);
        assert_eq!(
            flip_distance(&e.drawings[0], &e.drawings[1], 1_000_000).unwrap(),
            Distance::Unreachable,
            "{name}"
        );
    }
    let e = entry("tight_kn_minus_c4", &[5]);
    assert_eq!(
        flip_distance(&e.drawings[0], &e.drawings[1], 1_000_000).unwrap(),
        Distance::Unreachable
    );
}

#[test]
fn caratheodory_example_leaves_p_unenclosed() {
    for params in [[3, 3], [4, 3], [4, 4]] {
        let e = entry("caratheodory_minus_one", &params);
        let d = &e.drawings[0];
        let (o, p) = (e.outer.as_deref().unwrap(), e.p.as_deref().unwrap());
        assert_eq!(enclosing_cycle(d, o, p).unwrap(), None, "{params:?}");
        assert_eq!(d.edges.len(), params[0] * params[1] - 1);
    }
}

#[test]
fn lower_bound_counts() {
    let e = entry("lower_bound", &[8]);
    assert_eq!(e.groups["black"].len(), 4);
    assert_eq!(e.groups["green"].len(), 4);
    assert_eq!(e.flip_lower_bound, Some(4));
    for n in [4, 12] {
        let e = entry("lower_bound", &[n]);
        let k = n / 4;
        let bb = (k * (k.max(1) - 1) / 2).pow(2);
        assert_eq!(e.flip_lower_bound, Some(k * k * bb), "n={n}");
    }
}
