use simpledraw::catalog::sample_geometric;
use simpledraw::core::{canonical_key, induce, Drawing};
use simpledraw::ers::ers_of;
use simpledraw::route::{clone_vertex, insertions};

fn empty(vs: &[&str]) -> Drawing {
    let raw = format!(
        r#"{{"vertices": [{}], "edges": []}}"#,
        vs.iter()
            .map(|v| format!("\"{v}\""))
            .collect::<Vec<_>>()
            .join(",")
    );
    Drawing::from_json(&raw).unwrap()
}

#[test]
fn k4_has_two_drawings_up_to_labels_and_reflection() {
    let mut ds = vec![empty(&["a", "b", "c", "d"])];
    for (u, v) in [
        ("a", "b"),
        ("b", "c"),
        ("c", "a"),
        ("a", "d"),
        ("b", "d"),
        ("c", "d"),
    ] {
        let mut next = Vec::new();
        for d in &ds {
            next.extend(insertions(d, &format!("{u}{v}"), u, v, 6).unwrap());
        }
        ds = next;
    }
    for d in &ds {
        assert!(d.is_valid());
    }
    let crossings: std::collections::BTreeSet<usize> =
        ds.iter().map(|d| d.crossings.len()).collect();
    assert_eq!(crossings.into_iter().collect::<Vec<_>>(), vec![0, 1]);
}

#[test]
fn clones_keep_the_original_and_validate() {
    for seed in 0..30 {
        let d = sample_geometric(&[3, 3], seed).unwrap();
        let v = d.vertex("r1").unwrap();
        let deg = d.rotations[v].len();
        for corner in 0..deg {
            let copy = d.rotations[v].clone();
            let c = clone_vertex(&d, "r1", "r4", corner, &copy, None, &|a, b| {
                format!("{a}{b}")
            })
            .unwrap();
            let orig: Vec<String> = d.edges.iter().map(|e| e.id.clone()).collect();
            let mut back = induce(&c, &orig).unwrap();
            let keep = back.vertex("r4").unwrap();
            back.vertices.remove(keep);
            back.rotations.remove(keep);
            assert_eq!(canonical_key(&back), canonical_key(&d));
            // the twin crosses what r1's edges cross, plus the near crossings
            assert!(c.crossings.len() >= 2 * d.crossings.len());
            let _ = ers_of(&c);
        }
    }
}
