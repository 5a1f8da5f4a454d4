//! Named constructions and random generators.

mod figures;
mod lower;
pub mod sample;

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::caratheodory::enclosing_cycle;
use crate::core::{canonical_key, Drawing, FaceClasses, PlanarMap};
use crate::error::{Error, Result};
use crate::ers::{crossing_pairs, ers_of};
use crate::explore::{flip_neighbors, order_obstruction, Certificate};
use crate::flips::{flip_in_place, raw_tricells};
use crate::graphs::{is_complete_multipartite, Graph};
use crate::route::{clone_vertex, insertions};

pub use lower::lower_bound_pair;
pub use sample::{sample_convex, sample_geometric, sample_geometric_with_points, sample_triangle};

/// Declared relations between the two drawings of an entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Relations {
    pub ers_equal: bool,
    pub strongly_isomorphic: bool,
    pub transformable: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub params: Vec<usize>,
    #[serde(skip)]
    pub drawings: Vec<Drawing>,
    pub relations: Option<Relations>,
    /// Designated faces, for the Carathéodory example.
    pub outer: Option<String>,
    pub p: Option<String>,
    pub certificate: Option<Certificate>,
    /// Named edge sets (the lower-bound colors).
    pub groups: BTreeMap<String, Vec<String>>,
    /// Flips needed at least, when known by a counting argument.
    pub flip_lower_bound: Option<usize>,
    pub note: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct EntryInfo {
    pub name: &'static str,
    pub params: &'static str,
    pub summary: &'static str,
}

const ENTRIES: [EntryInfo; 9] = [
    EntryInfo {
        name: "fig2_k33",
        params: "",
        summary: "K3,3 pair: same crossing pairs and vertex rotations, different ERS",
    },
    EntryInfo {
        name: "fig_iso_k33",
        params: "",
        summary: "K3,3 pair one triangle flip apart",
    },
    EntryInfo {
        name: "fig_no_tri_path",
        params: "",
        summary: "path pair with equal ERS and no tricell in either drawing",
    },
    EntryInfo {
        name: "tight_adjacent",
        params: "m n (>= 3, m + n <= 16)",
        summary: "K_{m,n} minus r2b1, r3b1: equal ERS, not flip-connected",
    },
    EntryInfo {
        name: "tight_disjoint",
        params: "m n (>= 3, m + n <= 16)",
        summary: "K_{m,n} minus r1b2, r2b1: equal ERS, not flip-connected",
    },
    EntryInfo {
        name: "tight_kn_minus_c4",
        params: "n (5..12)",
        summary: "K_n minus a 4-cycle: equal ERS, not flip-connected",
    },
    EntryInfo {
        name: "tight_kmn_plus_edge",
        params: "m (>= 4) n (>= 1), m + n <= 16",
        summary: "K_{m,n} plus one edge inside the m-class: equal ERS, not flip-connected",
    },
    EntryInfo {
        name: "caratheodory_minus_one",
        params: "m n (>= 3, m + n <= 16)",
        summary: "K_{m,n} minus r2b1 with a face enclosed by no 3- or 4-cycle",
    },
    EntryInfo {
        name: "lower_bound",
        params: "n (multiple of 4, 4..16)",
        summary: "K_{n/2,n/2} pair needing many flips",
    },
];

pub fn list() -> Vec<EntryInfo> {
    ENTRIES.to_vec()
}

fn want(name: &str, params: &[usize], n: usize) -> Result<()> {
    if params.len() != n {
        return Err(Error::BadParams(format!(
            "{name} takes {n} parameter(s), got {}",
            params.len()
        )));
    }
    Ok(())
}

fn range(ok: bool, name: &str, params: &[usize]) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::BadParams(format!("{name}{params:?} out of range")))
    }
}

/// Build an entry and re-check everything it claims.
pub fn build(name: &str, params: &[usize]) -> Result<CatalogEntry> {
    let info = ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownEntry(name.to_string()))?;
    let mut entry = match info.name {
        "fig2_k33" => {
            want(name, params, 0)?;
            let (mut d1, mut d2) = figures::fig2()?;
            d1.partition = Some(figures::bipartition());
            d2.partition = Some(figures::bipartition());
            if crossing_pairs(&d1) != crossing_pairs(&d2)
                || ers_of(&d1).vertex_rotations != ers_of(&d2).vertex_rotations
            {
                return Err(Error::Invariant(
                    "fig2_k33 drawings differ beyond crossing rotations".into(),
                ));
            }
            pair_entry(
                name,
                params,
                d1,
                d2,
                Relations {
                    ers_equal: false,
                    strongly_isomorphic: false,
                    transformable: false,
                },
            )
        }
        "fig_iso_k33" => {
            want(name, params, 0)?;
            let d1 = figures::fig_iso()?;
            let mut d2 = d1.clone();
            flip_edges(&mut d2, ["ux", "vy", "wz"])?;
            let k2 = canonical_key(&d2);
            if !flip_neighbors(&d1)?.iter().any(|n| canonical_key(n) == k2) {
                return Err(Error::Invariant("fig_iso_k33 is not one flip".into()));
            }
            pair_entry(
                name,
                params,
                d1,
                d2,
                Relations {
                    ers_equal: true,
                    strongly_isomorphic: false,
                    transformable: true,
                },
            )
        }
        "fig_no_tri_path" => {
            want(name, params, 0)?;
            let (d1, d2) = figures::no_tri_path()?;
            for d in [&d1, &d2] {
                if !raw_tricells(d, &PlanarMap::build_light(d)).is_empty() {
                    return Err(Error::Invariant("fig_no_tri_path has a tricell".into()));
                }
            }
            pair_entry(
                name,
                params,
                d1,
                d2,
                Relations {
                    ers_equal: true,
                    strongly_isomorphic: false,
                    transformable: false,
                },
            )
        }
        "tight_adjacent" | "tight_disjoint" => {
            want(name, params, 2)?;
            range(
                params[0] >= 3 && params[1] >= 3 && params[0] + params[1] <= sample::MAX_VERTICES,
                name,
                params,
            )?;
            let (mut d1, mut d2) = if name == "tight_adjacent" {
                figures::tight_adjacent()?
            } else {
                figures::tight_disjoint()?
            };
            d1.partition = Some(figures::bipartition());
            d2.partition = Some(figures::bipartition());
            // new reds copy a red seeing every blue, new blues a blue seeing every red
            let (reds, blues) = if name == "tight_adjacent" {
                (&["r1"][..], &["b2", "b3"][..])
            } else {
                (&["r3"][..], &["b3"][..])
            };
            let (d1, d2) = grow_bipartite(d1, d2, params[0], params[1], reds, blues, &certified)?;
            pair_entry(
                name,
                params,
                d1,
                d2,
                Relations {
                    ers_equal: true,
                    strongly_isomorphic: false,
                    transformable: false,
                },
            )
        }
        "tight_kn_minus_c4" => {
            want(name, params, 1)?;
            // the matched-insertion search behind larger n grows exponentially
            range((5..=12).contains(&params[0]), name, params)?;
            let (mut d1, mut d2) = figures::kn_minus_c4()?;
            for k in 3..=params[0] - 3 {
                let new = format!("b{k}");
                let sources: Vec<String> = (2..k).map(|i| format!("b{i}")).collect();
                (d1, d2) = grow(&d1, &d2, &new, &sources, true, &certified)?;
            }
            pair_entry(
                name,
                params,
                d1,
                d2,
                Relations {
                    ers_equal: true,
                    strongly_isomorphic: false,
                    transformable: false,
                },
            )
        }
        "tight_kmn_plus_edge" => {
            want(name, params, 2)?;
            range(
                params[0] >= 4 && params[1] >= 1 && params[0] + params[1] <= sample::MAX_VERTICES,
                name,
                params,
            )?;
            let (d1, d2) = figures::kn_minus_c4()?;
            let keep: Vec<&str> = ["r1b1", "r1b2", "r2b2", "r3b2", "b1b2"].to_vec();
            let mut d1 = crate::core::induce(&d1, &keep)?;
            let mut d2 = crate::core::induce(&d2, &keep)?;
            let classes = vec![
                vec!["r1".to_string(), "r2".into(), "r3".into(), "b1".into()],
                vec!["b2".to_string()],
            ];
            d1.partition = Some(classes.clone());
            d2.partition = Some(classes);
            // n-class first: red twins of r2 would drag r1b1 across their stars
            for k in 3..params[1] + 2 {
                let sources: Vec<String> = (2..k).map(|i| format!("b{i}")).collect();
                (d1, d2) = grow(&d1, &d2, &format!("b{k}"), &sources, false, &certified)?;
            }
            for k in 4..params[0] {
                let sources: Vec<String> = (2..k).map(|i| format!("r{i}")).collect();
                (d1, d2) = grow(&d1, &d2, &format!("r{k}"), &sources, false, &certified)?;
            }
            let mut e = pair_entry(
                name,
                params,
                d1,
                d2,
                Relations {
                    ers_equal: true,
                    strongly_isomorphic: false,
                    transformable: false,
                },
            )?;
            e.note = "m-class r1.., b1; n-class b2..; extra edge r1b1".into();
            Ok(e)
        }
        "caratheodory_minus_one" => {
            want(name, params, 2)?;
            range(
                params[0] >= 3 && params[1] >= 3 && params[0] + params[1] <= sample::MAX_VERTICES,
                name,
                params,
            )?;
            caratheodory_entry(params)
        }
        "lower_bound" => {
            want(name, params, 1)?;
            let n = params[0];
            range(
                n.is_multiple_of(4) && (4..=sample::MAX_VERTICES).contains(&n),
                name,
                params,
            )?;
            let lb = lower_bound_pair(n)?;
            // with one vertex per part there are no black crossings to pass
            let rel = Relations {
                ers_equal: true,
                strongly_isomorphic: lb.bound == 0,
                transformable: true,
            };
            let mut e = pair_entry(name, params, lb.d1, lb.d2, rel)?;
            e.flip_lower_bound = Some(lb.bound);
            e.groups = lb.groups;
            e.note = "black a-c, green d-b, gray a-b and d-c; D2 moves every green over every black crossing".into();
            Ok(e)
        }
        _ => unreachable!("listed entry"),
    }?;
    if matches!(
        name,
        "tight_adjacent" | "tight_disjoint" | "caratheodory_minus_one"
    ) && params == [3, 3]
    {
        entry.note = "base case of the stated theorem".into();
    }
    Ok(entry)
}

/// Flip the tricell bounded by the three named edges.
fn flip_edges(d: &mut Drawing, ids: [&str; 3]) -> Result<()> {
    let m = PlanarMap::build_light(d);
    let t = raw_tricells(d, &m)
        .into_iter()
        .find(|t| {
            t.edges
                .iter()
                .all(|&e| ids.contains(&d.edges[e].id.as_str()))
        })
        .ok_or_else(|| Error::NotATricell(ids.join(",")))?;
    flip_in_place(d, t.edges, t.crossings)
}

fn certified(d1: &Drawing, d2: &Drawing) -> bool {
    matches!(order_obstruction(d1, d2), Ok(Some(_)))
}

fn pair_entry(
    name: &str,
    params: &[usize],
    mut d1: Drawing,
    mut d2: Drawing,
    rel: Relations,
) -> Result<CatalogEntry> {
    d1.name = format!("{name}_d1");
    d2.name = format!("{name}_d2");
    d1.ensure_valid()?;
    d2.ensure_valid()?;
    let ers_equal = ers_of(&d1) == ers_of(&d2);
    let strongly = canonical_key(&d1) == canonical_key(&d2);
    let certificate = if ers_equal {
        order_obstruction(&d1, &d2)?
    } else {
        None
    };
    let transformable = if !ers_equal || certificate.is_some() {
        false
    } else {
        // equal ERS suffices for complete multipartite graphs
        is_complete_multipartite(&Graph::of(&d1))
            .partition()
            .is_some()
    };
    let found = Relations {
        ers_equal,
        strongly_isomorphic: strongly,
        transformable,
    };
    if found != rel {
        return Err(Error::Invariant(format!(
            "{name}: declared {rel:?}, found {found:?}"
        )));
    }
    Ok(CatalogEntry {
        name: name.to_string(),
        params: params.to_vec(),
        drawings: vec![d1, d2],
        relations: Some(rel),
        outer: None,
        p: None,
        certificate,
        groups: BTreeMap::new(),
        flip_lower_bound: None,
        note: String::new(),
    })
}

/// Edge ids list reds before blues, otherwise by label.
fn edge_id(a: &str, b: &str) -> String {
    let rank = |s: &str| (!s.starts_with('r'), s.len(), s.to_string());
    if rank(a) <= rank(b) {
        format!("{a}{b}")
    } else {
        format!("{b}{a}")
    }
}

/// Twin `v` in both drawings, copying every edge at `v` except `skip`.
fn clone_both(
    d1: &Drawing,
    d2: &Drawing,
    v: &str,
    new: &str,
    corner_edge: &str,
    link: bool,
    skip: &[String],
) -> Result<(Drawing, Drawing)> {
    let link_id = edge_id(new, v);
    let one = |d: &Drawing| -> Result<Drawing> {
        let vi = d
            .vertex(v)
            .ok_or_else(|| Error::BadParams(format!("unknown vertex {v}")))?;
        let e = d.edge_or_err(corner_edge)?;
        let corner = d.rotations[vi]
            .iter()
            .position(|&x| x == e)
            .ok_or_else(|| Error::Invariant("corner".into()))?;
        let copy: Vec<usize> = d.rotations[vi]
            .iter()
            .copied()
            .filter(|&f| !skip.contains(&d.edges[f].id))
            .collect();
        let mut out = clone_vertex(
            d,
            v,
            new,
            corner,
            &copy,
            link.then_some(link_id.as_str()),
            &edge_id,
        )?;
        out.partition = d.partition.clone().map(|mut p| {
            if let Some(c) = p.iter_mut().find(|c| c.iter().any(|x| x == v)) {
                if !link {
                    c.push(new.to_string());
                    return p;
                }
            }
            p.push(vec![new.to_string()]);
            p
        });
        Ok(out)
    };
    Ok((one(d1)?, one(d2)?))
}

/// Add `new` as a twin of one of `sources`, trying every source and corner
/// until both drawings stay valid, keep equal ERS and pass `accept`. Falls
/// back to inserting the new star edge by edge.
fn grow(
    d1: &Drawing,
    d2: &Drawing,
    new: &str,
    sources: &[String],
    link: bool,
    accept: &dyn Fn(&Drawing, &Drawing) -> bool,
) -> Result<(Drawing, Drawing)> {
    for v in sources {
        let vi = d1
            .vertex(v)
            .ok_or_else(|| Error::BadParams(format!("unknown vertex {v}")))?;
        for &e in &d1.rotations[vi] {
            let Ok((a, b)) = clone_both(d1, d2, v, new, &d1.edges[e].id, link, &[]) else {
                continue;
            };
            if ers_of(&a) == ers_of(&b) && accept(&a, &b) {
                return Ok((a, b));
            }
        }
    }
    // twin without the edges the obstruction edge crosses, then route those
    if let Ok(Some(cert)) = order_obstruction(d1, d2) {
        for v in sources {
            let vi = d1.vertex(v).expect("checked above");
            let skip: Vec<String> = d1.rotations[vi]
                .iter()
                .map(|&f| d1.edges[f].id.clone())
                .filter(|id| cert.crossed.contains(id))
                .collect();
            if skip.is_empty() {
                continue;
            }
            let far: Vec<String> = skip
                .iter()
                .map(|id| {
                    let f = d1.edge(id).expect("own edge");
                    d1.vertices[d1.edges[f].other(vi)].clone()
                })
                .collect();
            for &e in &d1.rotations[vi] {
                let Ok((a, b)) = clone_both(d1, d2, v, new, &d1.edges[e].id, link, &skip) else {
                    continue;
                };
                if ers_of(&a) != ers_of(&b) {
                    continue;
                }
                let mut budget = INSERT_BUDGET / 10;
                for max_cross in 1..=MAX_CROSS {
                    if let Some(r) = insert_star(&a, &b, new, &far, max_cross, &mut budget, accept)?
                    {
                        return Ok(r);
                    }
                }
            }
        }
    }
    let v = d1
        .vertex(&sources[0])
        .ok_or_else(|| Error::BadParams(format!("unknown vertex {}", sources[0])))?;
    let mut nbrs: Vec<String> = d1.rotations[v]
        .iter()
        .map(|&e| d1.vertices[d1.edges[e].other(v)].clone())
        .collect();
    if link {
        nbrs.push(sources[0].clone());
    }
    let class_of = sources[0].clone();
    let add = |d: &Drawing| {
        let mut d = d.clone();
        d.vertices.push(new.to_string());
        d.rotations.push(Vec::new());
        if let Some(p) = &mut d.partition {
            match p.iter_mut().find(|c| c.contains(&class_of)) {
                Some(c) if !link => c.push(new.to_string()),
                _ => p.push(vec![new.to_string()]),
            }
        }
        d
    };
    let mut budget = INSERT_BUDGET;
    for max_cross in 1..=MAX_CROSS {
        if let Some(r) = insert_star(
            &add(d1),
            &add(d2),
            new,
            &nbrs,
            max_cross,
            &mut budget,
            accept,
        )? {
            return Ok(r);
        }
    }
    Err(Error::Invariant(format!(
        "no placement of {new} keeps the pair's relations"
    )))
}

const INSERT_BUDGET: usize = 20_000;
const MAX_CROSS: usize = 7;

/// Depth-first search over matching insertions of the edges `new–w`, `w` in
/// `nbrs`; candidates with fewer crossings first. Extra edges only add
/// crossings, so a prefix failing `accept` is dropped.
fn insert_star(
    d1: &Drawing,
    d2: &Drawing,
    new: &str,
    nbrs: &[String],
    max_cross: usize,
    budget: &mut usize,
    accept: &dyn Fn(&Drawing, &Drawing) -> bool,
) -> Result<Option<(Drawing, Drawing)>> {
    let Some((w, rest)) = nbrs.split_first() else {
        return Ok(accept(d1, d2).then(|| (d1.clone(), d2.clone())));
    };
    let id = edge_id(new, w);
    let c1 = insertions(d1, &id, w, new, max_cross)?;
    let c2 = insertions(d2, &id, w, new, max_cross)?;
    let key = |d: &Drawing| serde_json::to_string(&ers_of(d)).expect("ers serializes");
    let mut by_ers: HashMap<String, Vec<usize>> = HashMap::new();
    for (j, y) in c2.iter().enumerate() {
        by_ers.entry(key(y)).or_default().push(j);
    }
    let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
    for (i, x) in c1.iter().enumerate() {
        for &j in by_ers.get(&key(x)).into_iter().flatten() {
            pairs.push((x.crossings.len() + c2[j].crossings.len(), i, j));
        }
    }
    pairs.sort();
    for (_, i, j) in pairs {
        if *budget == 0 {
            return Ok(None);
        }
        *budget -= 1;
        if !accept(&c1[i], &c2[j]) {
            continue;
        }
        if let Some(r) = insert_star(&c1[i], &c2[j], new, rest, max_cross, budget, accept)? {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

fn grow_bipartite(
    mut d1: Drawing,
    mut d2: Drawing,
    m: usize,
    n: usize,
    reds: &[&str],
    blues: &[&str],
    accept: &dyn Fn(&Drawing, &Drawing) -> bool,
) -> Result<(Drawing, Drawing)> {
    // blues first; red twins copy the special edge and crowd later stars
    let mut bs: Vec<String> = blues.iter().map(|s| s.to_string()).collect();
    for k in 4..=n {
        let new = format!("b{k}");
        (d1, d2) = grow(&d1, &d2, &new, &bs, false, accept)?;
        bs.push(new);
    }
    let mut rs: Vec<String> = reds.iter().map(|s| s.to_string()).collect();
    for k in 4..=m {
        let new = format!("r{k}");
        (d1, d2) = grow(&d1, &d2, &new, &rs, false, accept)?;
        rs.push(new);
    }
    Ok((d1, d2))
}

/// Faces of `d` lying in the face of its subdrawing on `old_edges` with key `key`.
fn faces_in(d: &Drawing, old_edges: &[String], key: &str) -> Result<Vec<String>> {
    let m = PlanarMap::build(d);
    let mask = crate::core::keep_mask(d, old_edges)?;
    let fc = FaceClasses::new(d, &m, &mask);
    Ok((0..m.faces.len())
        .filter(|&f| fc.key_of_face(f) == key)
        .map(|f| m.keys[f].clone())
        .collect())
}

/// First (outer, p) with outer in `outers` and p in `ps` enclosed by no short cycle.
fn bad_pair(d: &Drawing, outers: &[String], ps: &[String]) -> Result<Option<(String, String)>> {
    for o in outers {
        for p in ps {
            if o != p && enclosing_cycle(d, o, p)?.is_none() {
                return Ok(Some((o.clone(), p.clone())));
            }
        }
    }
    Ok(None)
}

fn caratheodory_entry(params: &[usize]) -> Result<CatalogEntry> {
    let (mut d, mut outer, mut p) =
        figures::caratheodory().map(|(d, o, p)| (d, o.to_string(), p.to_string()))?;
    if enclosing_cycle(&d, &outer, &p)?.is_some() {
        return Err(Error::Invariant("designated face is enclosed".into()));
    }
    // reds and blues seeing the whole other class
    let mut steps: Vec<(String, Vec<String>)> = Vec::new();
    let mut rs = vec!["r1".to_string(), "r3".to_string()];
    for k in 4..=params[0] {
        steps.push((format!("r{k}"), rs.clone()));
        rs.push(format!("r{k}"));
    }
    let mut bs = vec!["b2".to_string(), "b3".to_string()];
    for k in 4..=params[1] {
        steps.push((format!("b{k}"), bs.clone()));
        bs.push(format!("b{k}"));
    }
    for (new, sources) in steps {
        let old: Vec<String> = d.edges.iter().map(|e| e.id.clone()).collect();
        let mut next = None;
        'search: for v in &sources {
            let vi = d.vertex(v).expect("source");
            for &e in &d.rotations[vi] {
                let Ok((c, _)) = clone_both(&d, &d, v, &new, &d.edges[e].id, false, &[]) else {
                    continue;
                };
                let outers = faces_in(&c, &old, &outer)?;
                let ps = faces_in(&c, &old, &p)?;
                if let Some(found) = bad_pair(&c, &outers, &ps)? {
                    next = Some((c, found));
                    break 'search;
                }
            }
        }
        let (c, (o, q)) = next.ok_or_else(|| {
            Error::Invariant(format!("no twin for {new} keeps an unenclosed face"))
        })?;
        (d, outer, p) = (c, o, q);
    }
    d.name = "caratheodory_minus_one".into();
    d.ensure_valid()?;
    Ok(CatalogEntry {
        name: "caratheodory_minus_one".into(),
        params: params.to_vec(),
        drawings: vec![d],
        relations: None,
        outer: Some(outer),
        p: Some(p),
        certificate: None,
        groups: BTreeMap::new(),
        flip_lower_bound: None,
        note: "K_{m,n} minus r2b1; no 3- or 4-cycle separates p from outer".into(),
    })
}
