//! Weighted multigraphs with loops: genus, stability, canonical form,
//! and text/DOT output.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

mod canon;

pub use canon::{CanonicalForm, DEFAULT_SEARCH_BUDGET};

/// A loop adds two to the degree of its vertex ("loops count by two").
pub const LOOP_DEGREE: u32 = 2;
/// A loop adds one to the edge count ("a loop counts as one edge").
pub const LOOP_EDGES: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(usize),
    #[error("edge ({0}, {1}) references a missing vertex")]
    MissingVertex(usize, usize),
    #[error("canonical labeling search exceeded its budget of {0} nodes")]
    BudgetExceeded(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    pub id: usize,
    pub weight: u32,
}

/// Connected weighted multigraph; loops and parallel edges allowed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct StableGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    position: BTreeMap<usize, usize>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<RawGraph> for StableGraph {
    type Error = GraphError;
    fn try_from(r: RawGraph) -> Result<Self, GraphError> {
        StableGraph::new(r.vertices, r.edges)
    }
}

impl From<StableGraph> for RawGraph {
    fn from(g: StableGraph) -> RawGraph {
        RawGraph {
            vertices: g.vertices,
            edges: g.edges,
        }
    }
}

impl StableGraph {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let mut position = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if position.insert(v.id, i).is_some() {
                return Err(GraphError::DuplicateVertex(v.id));
            }
        }
        let edges = edges
            .into_iter()
            .map(|(a, b)| {
                if position.contains_key(&a) && position.contains_key(&b) {
                    Ok((a.min(b), a.max(b)))
                } else {
                    Err(GraphError::MissingVertex(a, b))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(StableGraph {
            vertices,
            edges,
            position,
        })
    }

    /// Vertices numbered `0..weights.len()`.
    pub fn from_weights(weights: &[u32], edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let vertices = weights
            .iter()
            .enumerate()
            .map(|(id, &weight)| Vertex { id, weight })
            .collect();
        Self::new(vertices, edges.to_vec())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn weight(&self, id: usize) -> Option<u32> {
        self.position.get(&id).map(|&i| self.vertices[i].weight)
    }

    pub fn degree(&self, id: usize) -> u32 {
        self.edges
            .iter()
            .map(|&(a, b)| match (a == id, b == id) {
                (true, true) => LOOP_DEGREE,
                (true, false) | (false, true) => 1,
                _ => 0,
            })
            .sum()
    }

    pub fn loop_count(&self, id: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == id && b == id).count()
    }

    pub fn total_weight(&self) -> u64 {
        self.vertices.iter().map(|v| v.weight as u64).sum()
    }

    /// `sum of weights + edges - vertices + 1`.
    pub fn genus(&self) -> i64 {
        self.total_weight() as i64 + (LOOP_EDGES as i64) * self.edges.len() as i64 - self.vertices.len() as i64 + 1
    }

    pub fn is_connected(&self) -> bool {
        let Some(first) = self.vertices.first() else {
            return false;
        };
        let mut seen = BTreeSet::from([first.id]);
        let mut stack = vec![first.id];
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                let other = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if seen.insert(other) {
                    stack.push(other);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    /// Connected, and every weight-0 vertex has degree at least three.
    pub fn is_stable(&self) -> bool {
        self.is_connected() && self.vertices.iter().all(|v| v.weight > 0 || self.degree(v.id) >= 3)
    }

    /// Relabels vertex `vertices()[i]` to id `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> StableGraph {
        let map: BTreeMap<usize, usize> = self.vertices.iter().zip(perm).map(|(v, &p)| (v.id, p)).collect();
        let vertices = self
            .vertices
            .iter()
            .map(|v| Vertex {
                id: map[&v.id],
                weight: v.weight,
            })
            .collect();
        let edges = self.edges.iter().map(|&(a, b)| (map[&a], map[&b])).collect();
        StableGraph::new(vertices, edges).expect("relabeling is a bijection")
    }

    pub fn canonical_form(&self) -> Result<CanonicalForm, GraphError> {
        self.canonical_form_with_budget(DEFAULT_SEARCH_BUDGET)
    }

    pub fn canonical_form_with_budget(&self, budget: usize) -> Result<CanonicalForm, GraphError> {
        canon::canonical(self, budget).map(|(form, _)| form)
    }

    pub fn is_isomorphic(&self, other: &StableGraph) -> Result<bool, GraphError> {
        if self.vertex_count() != other.vertex_count() || self.edge_count() != other.edge_count() {
            return Ok(false);
        }
        Ok(self.canonical_form()? == other.canonical_form()?)
    }

    /// Vertex ids in canonical order; falls back to id order if the search budget runs out.
    pub fn canonical_order(&self) -> Vec<usize> {
        match canon::canonical(self, DEFAULT_SEARCH_BUDGET) {
            Ok((_, order)) => order.into_iter().map(|i| self.vertices[i].id).collect(),
            Err(_) => self.position.keys().copied().collect(),
        }
    }

    /// The same graph with vertices renumbered `1..=v` in canonical order and sorted edges.
    pub fn canonically_labeled(&self) -> StableGraph {
        let order = self.canonical_order();
        let new_id: BTreeMap<usize, usize> = order.iter().enumerate().map(|(i, &id)| (id, i + 1)).collect();
        let vertices = order
            .iter()
            .map(|&id| Vertex {
                id: new_id[&id],
                weight: self.weight(id).unwrap(),
            })
            .collect();
        let mut edges: Vec<(usize, usize)> = self.edges.iter().map(|&(a, b)| (new_id[&a], new_id[&b])).collect();
        edges.iter_mut().for_each(|e| *e = (e.0.min(e.1), e.0.max(e.1)));
        edges.sort_unstable();
        StableGraph::new(vertices, edges).expect("relabeling is a bijection")
    }

    /// One line per vertex (`V <id> w=<weight>`) then per edge (`E <id1> <id2>`).
    pub fn to_text(&self) -> String {
        let g = self.canonically_labeled();
        let mut out = String::new();
        for v in &g.vertices {
            writeln!(out, "V {} w={}", v.id, v.weight).unwrap();
        }
        for (a, b) in &g.edges {
            writeln!(out, "E {a} {b}").unwrap();
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let g = self.canonically_labeled();
        let mut out = String::from("graph G {\n");
        for v in &g.vertices {
            writeln!(out, "  v{} [label=\"w={}\"];", v.id, v.weight).unwrap();
        }
        for (a, b) in &g.edges {
            writeln!(out, "  v{a} -- v{b};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}
