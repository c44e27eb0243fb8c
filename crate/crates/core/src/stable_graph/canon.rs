//! Canonical labeling by partition refinement and individualization.
//!
//! The search tree is the usual one: refine an ordered partition to an
//! equitable one, split the first non-singleton cell by individualizing
//! each of its vertices in turn, and compare the adjacency certificates of
//! the leaves. Leaves with equal certificates give automorphisms, which
//! prune sibling subtrees (orbit pruning) and let the search jump back to
//! the node where the two paths diverged.

use std::cmp::Ordering;

use serde::Serialize;

use super::{GraphError, StableGraph};

/// Maximum number of search-tree nodes visited per canonical form.
pub const DEFAULT_SEARCH_BUDGET: usize = 200_000;

/// Total-order key; equal keys exactly when the graphs are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalForm {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub weights: Vec<u32>,
    /// Weights in canonical order, then the upper triangle (with diagonal loop counts) of the multiplicity matrix.
    pub matrix: Vec<u32>,
}

struct Dense {
    n: usize,
    weight: Vec<u32>,
    adj: Vec<u32>,
}

impl Dense {
    fn new(g: &StableGraph) -> Dense {
        let n = g.vertex_count();
        let mut adj = vec![0; n * n];
        for &(a, b) in g.edges() {
            let (i, j) = (g.position[&a], g.position[&b]);
            adj[i * n + j] += 1;
            if i != j {
                adj[j * n + i] += 1;
            }
        }
        Dense {
            n,
            weight: g.vertices().iter().map(|v| v.weight).collect(),
            adj,
        }
    }

    fn certificate(&self, order: &[usize]) -> Vec<u32> {
        let n = self.n;
        let mut cert: Vec<u32> = order.iter().map(|&v| self.weight[v]).collect();
        cert.reserve(n * (n + 1) / 2);
        for i in 0..n {
            for j in i..n {
                cert.push(self.adj[order[i] * n + order[j]]);
            }
        }
        cert
    }

    fn initial_partition(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let key = |v: usize| {
            let degree: u32 = (0..n).map(|u| self.adj[v * n + u]).sum::<u32>() + self.adj[v * n + v];
            (self.weight[v], self.adj[v * n + v], degree)
        };
        let mut vs: Vec<usize> = (0..n).collect();
        vs.sort_by_key(|&v| (key(v), v));
        let mut cells: Vec<Vec<usize>> = Vec::new();
        for v in vs {
            match cells.last_mut() {
                Some(c) if key(c[0]) == key(v) => c.push(v),
                _ => cells.push(vec![v]),
            }
        }
        cells
    }

    /// Splits cells by neighbour counts into every cell until nothing changes.
    fn refine(&self, cells: &mut Vec<Vec<usize>>) {
        let n = self.n;
        let mut cell_of = vec![0; n];
        loop {
            for (c, cell) in cells.iter().enumerate() {
                for &v in cell {
                    cell_of[v] = c;
                }
            }
            let k = cells.len();
            let mut next = Vec::with_capacity(k);
            let mut changed = false;
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<u32>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let mut counts = vec![0u32; k];
                        for u in 0..n {
                            counts[cell_of[u]] += self.adj[v * n + u];
                        }
                        (counts, v)
                    })
                    .collect();
                keyed.sort();
                let start = next.len();
                for (i, (counts, v)) in keyed.iter().enumerate() {
                    if i > 0 && keyed[i - 1].0 == *counts {
                        next.last_mut().unwrap().push(*v);
                    } else {
                        next.push(vec![*v]);
                    }
                }
                changed |= next.len() - start > 1;
            }
            *cells = next;
            if !changed {
                return;
            }
        }
    }
}

struct Leaf {
    order: Vec<usize>,
    cert: Vec<u32>,
    path: Vec<usize>,
}

struct Search<'a> {
    g: &'a Dense,
    budget: usize,
    nodes: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Returns the depth to jump back to, if an automorphism allows it.
    fn visit(&mut self, mut cells: Vec<Vec<usize>>, path: &mut Vec<usize>) -> Result<Option<usize>, GraphError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(GraphError::BudgetExceeded(self.budget));
        }
        self.g.refine(&mut cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            return Ok(self.leaf(cells.into_iter().flatten().collect(), path));
        };
        let level = path.len();
        let mut candidates = cells[target].clone();
        candidates.sort_unstable();
        let mut explored: Vec<usize> = Vec::new();
        for v in candidates {
            if !explored.is_empty() {
                let orbit = self.orbits_fixing(path);
                let root = find(&orbit, v);
                if explored.iter().any(|&u| find(&orbit, u) == root) {
                    continue;
                }
            }
            explored.push(v);
            let mut child = cells.clone();
            let rest: Vec<usize> = child[target].iter().copied().filter(|&u| u != v).collect();
            child[target] = vec![v];
            child.insert(target + 1, rest);
            path.push(v);
            let jump = self.visit(child, path)?;
            path.pop();
            if let Some(depth) = jump {
                if depth < level {
                    return Ok(Some(depth));
                }
            }
        }
        Ok(None)
    }

    fn leaf(&mut self, order: Vec<usize>, path: &[usize]) -> Option<usize> {
        let cert = self.g.certificate(&order);
        let leaf = Leaf {
            order,
            cert,
            path: path.to_vec(),
        };
        let Some(first) = &self.first else {
            self.first = Some(Leaf {
                order: leaf.order.clone(),
                cert: leaf.cert.clone(),
                path: leaf.path.clone(),
            });
            self.best = Some(leaf);
            return None;
        };
        if first.cert == leaf.cert {
            let depth = common_prefix(&first.path, &leaf.path);
            self.record_automorphism(&first.order.clone(), &leaf.order);
            return Some(depth);
        }
        let best = self.best.as_ref().unwrap();
        match leaf.cert.cmp(&best.cert) {
            Ordering::Equal => {
                let depth = common_prefix(&best.path, &leaf.path);
                self.record_automorphism(&best.order.clone(), &leaf.order);
                Some(depth)
            }
            Ordering::Less => {
                self.best = Some(leaf);
                None
            }
            Ordering::Greater => None,
        }
    }

    fn record_automorphism(&mut self, from: &[usize], to: &[usize]) {
        let mut perm = vec![0; from.len()];
        for (&a, &b) in from.iter().zip(to) {
            perm[a] = b;
        }
        debug_assert!(self.is_automorphism(&perm));
        self.autos.push(perm);
    }

    fn is_automorphism(&self, p: &[usize]) -> bool {
        let n = self.g.n;
        (0..n).all(|i| {
            self.g.weight[i] == self.g.weight[p[i]]
                && (0..n).all(|j| self.g.adj[i * n + j] == self.g.adj[p[i] * n + p[j]])
        })
    }

    /// Union-find parents for the orbits of the known automorphisms fixing `path` pointwise.
    fn orbits_fixing(&self, path: &[usize]) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.g.n).collect();
        for p in self.autos.iter().filter(|p| path.iter().all(|&v| p[v] == v)) {
            for (i, &j) in p.iter().enumerate() {
                let (a, b) = (find(&parent, i), find(&parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        parent
    }
}

fn find(parent: &[usize], mut x: usize) -> usize {
    while parent[x] != x {
        x = parent[x];
    }
    x
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Canonical form plus the vertex positions in canonical order.
pub(super) fn canonical(g: &StableGraph, budget: usize) -> Result<(CanonicalForm, Vec<usize>), GraphError> {
    let dense = Dense::new(g);
    if dense.n == 0 {
        return Ok((form_for_order(g, &[]), vec![]));
    }
    let mut search = Search {
        g: &dense,
        budget,
        nodes: 0,
        first: None,
        best: None,
        autos: Vec::new(),
    };
    let cells = dense.initial_partition();
    search.visit(cells, &mut Vec::new())?;
    let best = search.best.expect("search reaches a leaf");
    Ok((form_for_order(g, &best.order), best.order))
}

pub(super) fn form_for_order(g: &StableGraph, order: &[usize]) -> CanonicalForm {
    let mut weights: Vec<u32> = g.vertices().iter().map(|v| v.weight).collect();
    weights.sort_unstable();
    CanonicalForm {
        vertex_count: g.vertex_count(),
        edge_count: g.edge_count(),
        weights,
        matrix: Dense::new(g).certificate(order),
    }
}
