//! Abstract graphs: complete multipartite recognition and the edge order
//! used by the transformation.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::core::Drawing;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    pub vertices: Vec<String>,
    /// (id, u, v) with u < v.
    pub edges: Vec<(String, String, String)>,
}

impl Graph {
    pub fn new(vertices: &[&str], edges: &[(&str, &str)]) -> Graph {
        Graph {
            vertices: vertices.iter().map(|v| v.to_string()).collect(),
            edges: edges
                .iter()
                .map(|(u, v)| {
                    let (a, b) = if u <= v { (u, v) } else { (v, u) };
                    (format!("{u}{v}"), a.to_string(), b.to_string())
                })
                .collect(),
        }
    }

    pub fn of(d: &Drawing) -> Graph {
        let (vertices, edges) = d.graph_signature();
        Graph { vertices, edges }
    }

    fn adjacency(&self) -> BTreeMap<(&str, &str), &str> {
        let mut m = BTreeMap::new();
        for (id, u, v) in &self.edges {
            m.insert((u.as_str(), v.as_str()), id.as_str());
            m.insert((v.as_str(), u.as_str()), id.as_str());
        }
        m
    }

    pub fn edge_id(&self, a: &str, b: &str) -> Option<String> {
        self.edges
            .iter()
            .find(|(_, u, v)| (u == a && v == b) || (u == b && v == a))
            .map(|e| e.0.clone())
    }

    pub fn adjacent(&self, a: &str, b: &str) -> bool {
        self.edge_id(a, b).is_some()
    }
}

/// Ordered vertex classes.
pub type Partition = Vec<Vec<String>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Multipartite {
    Partition(Partition),
    /// An edge `uv` and a vertex adjacent to neither endpoint.
    Witness {
        edge: String,
        vertex: String,
    },
}

impl Multipartite {
    pub fn partition(self) -> Option<Partition> {
        match self {
            Multipartite::Partition(p) => Some(p),
            Multipartite::Witness { .. } => None,
        }
    }
}

/// A graph is complete multipartite iff every vertex outside an edge is
/// adjacent to at least one of its endpoints.
pub fn is_complete_multipartite(g: &Graph) -> Multipartite {
    let adj = g.adjacency();
    let mut vs: Vec<&str> = g.vertices.iter().map(|s| s.as_str()).collect();
    vs.sort();
    let mut es: Vec<&(String, String, String)> = g.edges.iter().collect();
    es.sort_by(|a, b| (&a.1, &a.2).cmp(&(&b.1, &b.2)));
    for (id, u, v) in es {
        for &w in &vs {
            if w == u || w == v {
                continue;
            }
            if !adj.contains_key(&(u.as_str(), w)) && !adj.contains_key(&(v.as_str(), w)) {
                return Multipartite::Witness {
                    edge: id.clone(),
                    vertex: w.to_string(),
                };
            }
        }
    }
    // non-adjacency is now an equivalence relation
    let mut classes: Vec<Vec<String>> = Vec::new();
    for &v in &vs {
        match classes
            .iter_mut()
            .find(|c| !adj.contains_key(&(c[0].as_str(), v)))
        {
            Some(c) => c.push(v.to_string()),
            None => classes.push(vec![v.to_string()]),
        }
    }
    Multipartite::Partition(classes)
}

pub fn check_partition(g: &Graph, p: &Partition) -> Result<()> {
    let adj = g.adjacency();
    let all: BTreeSet<&String> = p.iter().flatten().collect();
    let vs: BTreeSet<&String> = g.vertices.iter().collect();
    if all != vs
        || all.len() != p.iter().map(|c| c.len()).sum::<usize>()
        || p.iter().any(|c| c.is_empty())
    {
        return Err(Error::InvalidPartition(
            "classes must split the vertex set".into(),
        ));
    }
    for (i, c) in p.iter().enumerate() {
        for (j, d) in p.iter().enumerate() {
            for a in c {
                for b in d {
                    if a == b {
                        continue;
                    }
                    let e = adj.contains_key(&(a.as_str(), b.as_str()));
                    if i == j && e {
                        return Err(Error::InvalidPartition(format!("{a}{b} inside a class")));
                    }
                    if i != j && !e {
                        return Err(Error::InvalidPartition(format!("{a} and {b} not joined")));
                    }
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeOrder {
    pub order: Vec<String>,
    pub r: Vec<String>,
    pub b: Vec<String>,
    /// Length of the initial star at `r[0]`.
    pub star_len: usize,
}

/// R = a largest class (first in label order on ties), B = the rest; edges
/// `r_i b_j` by (i, j), then the B-B edges.
pub fn edge_order(g: &Graph, p: &Partition) -> Result<EdgeOrder> {
    check_partition(g, p)?;
    let mut classes: Vec<Vec<String>> = p
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.sort();
            c
        })
        .collect();
    classes.sort();
    let big = classes.iter().map(|c| c.len()).max().unwrap_or(0);
    let r = classes
        .iter()
        .find(|c| c.len() == big)
        .cloned()
        .unwrap_or_default();
    let mut b: Vec<String> = g
        .vertices
        .iter()
        .filter(|v| !r.contains(v))
        .cloned()
        .collect();
    b.sort();
    let mut order = Vec::new();
    for ri in &r {
        for bj in &b {
            order.push(g.edge_id(ri, bj).expect("complete between classes"));
        }
    }
    let star_len = b.len();
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            if let Some(id) = g.edge_id(&b[i], &b[j]) {
                order.push(id);
            }
        }
    }
    Ok(EdgeOrder {
        order,
        r,
        b,
        star_len,
    })
}
