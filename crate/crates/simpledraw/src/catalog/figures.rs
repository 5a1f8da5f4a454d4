//! Small base drawings. Coordinates came out of randomized polyline searches
//! (see tests/catalog_search.rs); the tight_disjoint pair out of an
//! exhaustive enumeration of edge insertions.

use crate::core::Drawing;
use crate::error::Result;
use crate::geom::{PolyDrawing, Pt};

type V = (&'static str, Pt);
type E = (&'static str, &'static str, &'static str);

fn poly(name: &str, verts: &[V], straight: &[E], special: E, bends: &[Pt]) -> PolyDrawing {
    let mut pd = PolyDrawing::new(name);
    for &(v, p) in verts {
        pd.vertex(v, p);
    }
    for &(id, u, v) in straight {
        pd.edge(id, u, v, &[]);
    }
    pd.edge(special.0, special.1, special.2, bends);
    pd
}

fn pair(
    name: &str,
    verts: &[V],
    straight: &[E],
    special: E,
    b1: &[Pt],
    b2: &[Pt],
) -> Result<(Drawing, Drawing)> {
    let d1 = poly(&format!("{name}_d1"), verts, straight, special, b1).build()?;
    let d2 = poly(&format!("{name}_d2"), verts, straight, special, b2).build()?;
    Ok((d1, d2))
}

const K33_RED: [&str; 3] = ["r1", "r2", "r3"];
const K33_BLUE: [&str; 3] = ["b1", "b2", "b3"];

pub(super) fn bipartition() -> Vec<Vec<String>> {
    vec![
        K33_RED.map(String::from).to_vec(),
        K33_BLUE.map(String::from).to_vec(),
    ]
}

/// K3,3; only r3b1 differs, and it crosses with other rotations.
pub(super) fn fig2() -> Result<(Drawing, Drawing)> {
    let verts = [
        ("r1", (74, 44)),
        ("r2", (70, 68)),
        ("r3", (42, 21)),
        ("b1", (47, 21)),
        ("b2", (95, 17)),
        ("b3", (30, 89)),
    ];
    let straight = [
        ("r1b1", "r1", "b1"),
        ("r1b2", "r1", "b2"),
        ("r1b3", "r1", "b3"),
        ("r2b1", "r2", "b1"),
        ("r2b2", "r2", "b2"),
        ("r2b3", "r2", "b3"),
        ("r3b2", "r3", "b2"),
        ("r3b3", "r3", "b3"),
    ];
    pair(
        "fig2_k33",
        &verts,
        &straight,
        ("r3b1", "r3", "b1"),
        &[(128, 19), (68, 120), (51, 34)],
        &[(82, 102), (114, 71), (95, 60)],
    )
}

/// Straight-line K3,3 whose only tricell is {ux, vy, wz}, even.
pub(super) fn fig_iso() -> Result<Drawing> {
    let mut pd = PolyDrawing::new("fig_iso_k33_d1");
    for (v, p) in [
        ("u", (8, 44)),
        ("v", (61, 83)),
        ("w", (95, 52)),
        ("x", (86, 96)),
        ("y", (83, 8)),
        ("z", (48, 74)),
    ] {
        pd.vertex(v, p);
    }
    for a in ["u", "v", "w"] {
        for b in ["x", "y", "z"] {
            pd.edge(&format!("{a}{b}"), a, b, &[]);
        }
    }
    pd.partition = Some(vec![
        vec!["u".into(), "v".into(), "w".into()],
        vec!["x".into(), "y".into(), "z".into()],
    ]);
    pd.build()
}

/// Path a-b-c-d-e-f; cd wraps differently, neither drawing has a tricell.
pub(super) fn no_tri_path() -> Result<(Drawing, Drawing)> {
    let verts = [
        ("a", (13, 37)),
        ("b", (43, 82)),
        ("c", (50, 48)),
        ("d", (74, 95)),
        ("e", (71, 72)),
        ("f", (44, 6)),
    ];
    let straight = [
        ("ab", "a", "b"),
        ("bc", "b", "c"),
        ("de", "d", "e"),
        ("ef", "e", "f"),
    ];
    pair(
        "fig_no_tri_path",
        &verts,
        &straight,
        ("cd", "c", "d"),
        &[(126, 55), (59, -27), (-21, 120)],
        &[(35, 110), (84, 54)],
    )
}

/// K3,3 minus r2b1 and r3b1.
pub(super) fn tight_adjacent() -> Result<(Drawing, Drawing)> {
    let verts = [
        ("r1", (45, 46)),
        ("r2", (18, 96)),
        ("r3", (22, 39)),
        ("b1", (77, 34)),
        ("b2", (85, 38)),
        ("b3", (69, 44)),
    ];
    let straight = [
        ("r1b2", "r1", "b2"),
        ("r1b3", "r1", "b3"),
        ("r2b2", "r2", "b2"),
        ("r2b3", "r2", "b3"),
        ("r3b2", "r3", "b2"),
        ("r3b3", "r3", "b3"),
    ];
    pair(
        "tight_adjacent",
        &verts,
        &straight,
        ("r1b1", "r1", "b1"),
        &[(2, -29), (29, 130), (133, -36)],
        &[(131, 102), (93, -2), (-31, 45)],
    )
}

/// K3,3 minus r1b2 and r2b1.
pub(super) fn tight_disjoint() -> Result<(Drawing, Drawing)> {
    Ok((
        Drawing::from_json(include_str!("data/tight_disjoint_1.sdraw"))?,
        Drawing::from_json(include_str!("data/tight_disjoint_2.sdraw"))?,
    ))
}

/// K5 minus the 4-cycle r1 r2 b1 r3.
pub(super) fn kn_minus_c4() -> Result<(Drawing, Drawing)> {
    let verts = [
        ("r1", (98, 63)),
        ("r2", (72, 86)),
        ("r3", (1, 98)),
        ("b1", (64, 70)),
        ("b2", (59, 33)),
    ];
    let straight = [
        ("r2r3", "r2", "r3"),
        ("r1b2", "r1", "b2"),
        ("r2b2", "r2", "b2"),
        ("r3b2", "r3", "b2"),
        ("b1b2", "b1", "b2"),
    ];
    pair(
        "tight_kn_minus_c4",
        &verts,
        &straight,
        ("r1b1", "r1", "b1"),
        &[(-35, 113)],
        &[(75, -12), (13, 77), (138, 124)],
    )
}

/// K3,3 minus r2b1, with a face `p` that no 3- or 4-cycle separates from
/// the designated outer face.
pub(super) fn caratheodory() -> Result<(Drawing, &'static str, &'static str)> {
    let mut pd = PolyDrawing::new("caratheodory_minus_one");
    for (v, p) in [
        ("r1", (49, 41)),
        ("r2", (78, 24)),
        ("r3", (4, 72)),
        ("b1", (42, 8)),
        ("b2", (28, 45)),
        ("b3", (23, 10)),
    ] {
        pd.vertex(v, p);
    }
    for (id, u, v) in [
        ("r1b1", "r1", "b1"),
        ("r1b2", "r1", "b2"),
        ("r1b3", "r1", "b3"),
        ("r2b2", "r2", "b2"),
        ("r2b3", "r2", "b3"),
        ("r3b1", "r3", "b1"),
        ("r3b2", "r3", "b2"),
        ("r3b3", "r3", "b3"),
    ] {
        let bends: &[Pt] = if id == "r1b2" { &[(84, 132)] } else { &[] };
        pd.edge(id, u, v, bends);
    }
    pd.partition = Some(bipartition());
    Ok((
        pd.build()?,
        "r1b1#0+,r2b3#1-,r3b1#0-",
        "r1b1#2+,r1b3#2-,r2b2#1+",
    ))
}
