//! Barycentric SVG rendering of a planarization.
//!
//! The outer face is pinned to a regular polygon, every other node sits at
//! the mean of its neighbors. Layout uses y-up coordinates (the engine's
//! clockwise convention); the SVG writer flips y.

use std::fmt::Write as _;

use simpledraw::flips::raw_tricells;
use simpledraw::{Drawing, Error, PlanarMap, Result};

#[derive(Debug, Clone)]
pub struct RenderSpec {
    /// Key of the face drawn outermost; the largest face when unset.
    pub outer: Option<String>,
    pub size: f64,
    pub stroke_width: f64,
    pub edge_color: String,
    pub vertex_color: String,
    pub labels: bool,
    pub shade_tricells: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            outer: None,
            size: 600.0,
            stroke_width: 1.5,
            edge_color: "#333333".into(),
            vertex_color: "#1f5fa8".into(),
            labels: true,
            shade_tricells: false,
        }
    }
}

const TOL: f64 = 1e-10;
const MAX_SWEEPS: usize = 200_000;

fn outer_face(m: &PlanarMap, key: Option<&str>) -> Result<usize> {
    match key {
        Some(k) => m
            .face_by_key(k)
            .ok_or_else(|| Error::UnknownFace(k.to_string())),
        None => Ok((0..m.faces.len())
            .max_by(|&a, &b| {
                m.faces[a]
                    .len()
                    .cmp(&m.faces[b].len())
                    .then_with(|| m.keys[b].cmp(&m.keys[a]))
            })
            .expect("connected drawings with edges have faces")),
    }
}

/// Node positions in the unit disk.
pub fn layout(m: &PlanarMap, outer: usize) -> Vec<(f64, f64)> {
    let n = m.n_nodes;
    let mut adj = vec![Vec::new(); n];
    for &[a, b] in &m.frag_nodes {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut ring: Vec<usize> = Vec::new();
    for &dart in &m.faces[outer] {
        let v = m.tail(dart);
        if !ring.contains(&v) {
            ring.push(v);
        }
    }
    let mut pos = vec![(0.0, 0.0); n];
    let mut fixed = vec![false; n];
    let k = ring.len() as f64;
    for (i, &v) in ring.iter().enumerate() {
        // the outer face is on the left, so its boundary runs clockwise
        let a = std::f64::consts::FRAC_PI_2 - std::f64::consts::TAU * i as f64 / k;
        pos[v] = (a.cos(), a.sin());
        fixed[v] = true;
    }
    for _ in 0..MAX_SWEEPS {
        let mut delta: f64 = 0.0;
        for v in 0..n {
            if fixed[v] || adj[v].is_empty() {
                continue;
            }
            let (sx, sy) = adj[v]
                .iter()
                .fold((0.0, 0.0), |(x, y), &u| (x + pos[u].0, y + pos[u].1));
            let c = adj[v].len() as f64;
            let p = (sx / c, sy / c);
            delta = delta.max((p.0 - pos[v].0).abs() + (p.1 - pos[v].1).abs());
            pos[v] = p;
        }
        if delta < TOL {
            break;
        }
    }
    pos
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

pub fn render(d: &Drawing, spec: &RenderSpec) -> Result<String> {
    d.ensure_valid()?;
    let m = PlanarMap::build(d);
    let size = spec.size;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let pos: Vec<(f64, f64)> = if d.edges.is_empty() {
        if d.vertices.len() > 1 {
            return Err(Error::Disconnected);
        }
        vec![(0.0, 0.0); d.vertices.len()]
    } else {
        if !d.is_connected() {
            return Err(Error::Disconnected);
        }
        let outer = outer_face(&m, spec.outer.as_deref())?;
        layout(&m, outer)
    };
    let margin = 0.08 * size;
    let scale = (size - 2.0 * margin) / 2.0;
    let xy = |v: usize| -> (f64, f64) {
        (
            margin + scale * (pos[v].0 + 1.0),
            margin + scale * (1.0 - pos[v].1),
        )
    };
    let pts = |nodes: &[usize]| -> String {
        nodes
            .iter()
            .map(|&v| {
                let (x, y) = xy(v);
                format!("{x:.2},{y:.2}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    };
    if spec.shade_tricells && !d.edges.is_empty() {
        let _ = writeln!(svg, r#"<g class="tricells">"#);
        for t in raw_tricells(d, &m) {
            let nodes: Vec<usize> = m.faces[t.face].iter().map(|&x| m.tail(x)).collect();
            let _ = writeln!(
                svg,
                r##"<polygon class="tricell" points="{}" fill="#f2b630" fill-opacity="0.45" stroke="none"/>"##,
                pts(&nodes)
            );
        }
        let _ = writeln!(svg, "</g>");
    }
    let _ = writeln!(
        svg,
        r#"<g class="edges" fill="none" stroke="{}" stroke-width="{}">"#,
        esc(&spec.edge_color),
        spec.stroke_width
    );
    for (e, edge) in d.edges.iter().enumerate() {
        let mut path = vec![edge.s];
        path.extend(d.order[e].iter().map(|&c| d.vertices.len() + c));
        path.push(edge.t);
        let _ = writeln!(
            svg,
            r#"<polyline class="edge" points="{}"><title>{}</title></polyline>"#,
            pts(&path),
            esc(&edge.id)
        );
    }
    let _ = writeln!(svg, "</g>");
    if !d.crossings.is_empty() {
        let _ = writeln!(svg, r#"<g class="crossings">"#);
        for (c, x) in d.crossings.iter().enumerate() {
            let (cx, cy) = xy(d.vertices.len() + c);
            let _ = writeln!(
                svg,
                r#"<circle class="crossing" cx="{cx:.2}" cy="{cy:.2}" r="2.5" fill="white" stroke="{}"><title>{}</title></circle>"#,
                esc(&spec.edge_color),
                esc(&x.id)
            );
        }
        let _ = writeln!(svg, "</g>");
    }
    let _ = writeln!(
        svg,
        r#"<g class="vertices" fill="{}">"#,
        esc(&spec.vertex_color)
    );
    for (v, label) in d.vertices.iter().enumerate() {
        let (cx, cy) = xy(v);
        let _ = writeln!(
            svg,
            r#"<circle class="vertex" cx="{cx:.2}" cy="{cy:.2}" r="5"/>"#
        );
        if spec.labels {
            let _ = writeln!(
                svg,
                r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="13">{}</text>"#,
                cx + 7.0,
                cy - 7.0,
                esc(label)
            );
        }
    }
    let _ = writeln!(svg, "</g>");
    svg.push_str("</svg>\n");
    Ok(svg)
}
