//! Brute-force cross-checks that avoid the coset and degree formulas used
//! by the graph builder.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Serialize;

use crate::group::{GroupElement, GroupError, GroupTable};
use crate::limit_graph::LabeledStratumGraph;
use crate::multicurve::MulticurveSpec;
use crate::orbifold::{rational, Rational, SurfaceKernelAction};

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut y = x;
        while self.parent[y] != root {
            let next = self.parent[y];
            self.parent[y] = root;
            y = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Orbits of right multiplication by the generators, counted by union-find
/// over all group elements.
pub fn components_by_bfs(group: &GroupTable, gens: &[GroupElement]) -> Result<usize, GroupError> {
    let mut idx = Vec::with_capacity(gens.len());
    for &s in gens {
        group.name(s)?;
        idx.push(s.index());
    }
    Ok(orbit_count(group, &idx))
}

fn orbit_count(group: &GroupTable, gens: &[usize]) -> usize {
    let mut uf = UnionFind::new(group.order());
    for x in 0..group.order() {
        for &s in gens {
            uf.union(x, group.mul_index(x, s));
        }
    }
    (0..group.order()).filter(|&x| uf.find(x) == x).count()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Identity {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub identities: Vec<Identity>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.identities.iter().all(|i| i.pass)
    }

    fn check(&mut self, name: impl Into<String>, expected: impl ToString, actual: impl ToString) {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let pass = expected == actual;
        self.identities.push(Identity {
            name: name.into(),
            expected,
            actual,
            pass,
        });
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for i in &self.identities {
            let mark = if i.pass { "pass" } else { "FAIL" };
            writeln!(out, "{mark}  {}: expected {}, actual {}", i.name, i.expected, i.actual).unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Re-derives vertex and edge counts by orbit counting and re-checks the
/// handshake identity, degree coherence, genus, Euler characteristic and stability.
pub fn audit_graph(action: &SurfaceKernelAction, mc: &MulticurveSpec, graph: &LabeledStratumGraph) -> AuditReport {
    let group = action.group();
    let under = graph.underlying();
    let mut report = AuditReport { identities: Vec::new() };
    let eval = |w| action.evaluate_index(w).ok();

    let mut vertices = 0;
    for p in &mc.pieces {
        let gens: Option<Vec<usize>> = p.generators.iter().map(eval).collect();
        let built = graph.vertices().iter().filter(|v| v.piece == p.id).count();
        match gens {
            Some(g) => {
                let count = orbit_count(group, &g);
                vertices += count;
                report.check(format!("vertices of piece {}", p.id), count, built);
            }
            None => report.check(
                format!("vertices of piece {}", p.id),
                "valid generator words",
                "invalid word",
            ),
        }
    }
    report.check("vertex count", vertices, under.vertex_count());

    let mut edges = 0;
    for c in &mc.curves {
        let gens: Option<Vec<usize>> = c.words().into_iter().map(eval).collect();
        let built = graph.edges().iter().filter(|e| e.curve == c.id).count();
        match gens {
            Some(g) => {
                let count = orbit_count(group, &g);
                edges += count;
                report.check(format!("edges of curve {}", c.id), count, built);
            }
            None => report.check(format!("edges of curve {}", c.id), "valid curve words", "invalid word"),
        }
    }
    report.check("edge count", edges, under.edge_count());

    let incident: u64 = under.vertices().iter().map(|v| under.degree(v.id) as u64).sum();
    report.check("handshake", 2 * under.edge_count() as u64, incident);

    let mismatched: Vec<String> = graph
        .vertices()
        .iter()
        .filter(|v| under.degree(v.id) != v.degree)
        .map(|v| {
            format!(
                "piece {} at {} records {} but has {}",
                v.piece,
                v.representative_name,
                v.degree,
                under.degree(v.id)
            )
        })
        .collect();
    report.check(
        "degree coherence",
        "all recorded degrees match",
        if mismatched.is_empty() {
            "all recorded degrees match".to_string()
        } else {
            mismatched.join(", ")
        },
    );

    match action.riemann_hurwitz_genus() {
        Ok(g) => report.check("genus conservation", g, under.genus()),
        Err(e) => report.check("genus conservation", "integral Riemann-Hurwitz genus", e),
    }

    let chi = action.signature().euler_characteristic() * rational(group.order() as i64, 1);
    let parts: Rational = graph
        .vertices()
        .iter()
        .map(|v| Rational::from_integer(BigInt::from(2 - 2 * v.weight as i64 - v.degree as i64)))
        .sum();
    report.check("euler characteristic", chi, parts);

    report.check("stability", true, under.is_stable());
    report
}
