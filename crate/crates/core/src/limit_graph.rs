//! Construction of the labeled stable graph of a multicurve: one vertex per
//! (piece, left coset of the piece's image), one edge per (curve, left coset
//! of the curve's image).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::Subgroup;
use crate::multicurve::{
    curve_image_subgroup, piece_image_subgroup, reciprocal, validate_multicurve, MulticurveSpec, MulticurveViolation,
    PieceId, PieceSpec,
};
use crate::orbifold::{index_of, rational, ActionError, ActionViolation, Rational, SurfaceKernelAction};
use crate::stable_graph::{StableGraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("invalid action: {}", join(.0))]
    InvalidAction(Vec<ActionViolation>),
    #[error("invalid multicurve: {}", join(.0))]
    InvalidMulticurve(Vec<MulticurveViolation>),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error("piece {piece}: {reason}")]
    Piece { piece: PieceId, reason: String },
    #[error("piece {piece}, coset of {representative}: formula degree {formula} but {attached} edge ends attached")]
    DegreeMismatch {
        piece: PieceId,
        representative: String,
        formula: u32,
        attached: u32,
    },
    #[error("handshake fails: degree sum {degree_sum}, twice the edge count {twice_edges}")]
    Handshake { degree_sum: u64, twice_edges: u64 },
    #[error("graph genus {graph} differs from the Riemann-Hurwitz genus {expected}")]
    GenusMismatch { graph: i64, expected: u64 },
    #[error("built graph is not stable")]
    Unstable,
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

/// Vertex `V_{j,g}`: piece `j` and the smallest element of the coset `g Im(Phi_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledVertex {
    pub piece: PieceId,
    pub representative: usize,
    pub representative_name: String,
    pub id: usize,
    pub degree: u32,
    pub weight: u32,
}

/// Edge `E_{gamma,g}` and the ids of its two end vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledEdge {
    pub curve: String,
    pub representative: usize,
    pub representative_name: String,
    pub ends: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledStratumGraph {
    vertices: Vec<LabeledVertex>,
    edges: Vec<LabeledEdge>,
    underlying: StableGraph,
}

impl LabeledStratumGraph {
    pub fn vertices(&self) -> &[LabeledVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[LabeledEdge] {
        &self.edges
    }

    pub fn underlying(&self) -> &StableGraph {
        &self.underlying
    }

    pub fn vertex(&self, piece: PieceId, representative: usize) -> Option<&LabeledVertex> {
        self.vertices
            .iter()
            .find(|v| v.piece == piece && v.representative == representative)
    }
}

/// `|G| / |H|`.
pub fn component_count(action: &SurfaceKernelAction, h: &Subgroup) -> usize {
    index_of(action.group().order(), h.order())
}

/// `|Im Phi_j|` times the sum over the piece's curve sides of `1 / |Im Phi_gamma|`;
/// one-sided curves contribute both of their sides.
pub(crate) fn degree_rational(action: &SurfaceKernelAction, mc: &MulticurveSpec, piece: &PieceSpec) -> Rational {
    let h = piece_image_subgroup(action, piece).order();
    let mut sum = Rational::from_integer(BigInt::from(0));
    for c in &mc.curves {
        let sides = c.sides.iter().filter(|s| s.piece == piece.id).count();
        if sides > 0 {
            sum += reciprocal(curve_image_subgroup(action, c).order()) * rational(sides as i64, 1);
        }
    }
    sum * rational(h as i64, 1)
}

/// `1 - (|Im Phi_j| chi(O_j) + D_j) / 2`.
pub(crate) fn weight_rational(action: &SurfaceKernelAction, piece: &PieceSpec, degree: &Rational) -> Rational {
    let h = piece_image_subgroup(action, piece).order();
    let chi = piece.signature.euler_characteristic();
    Rational::one() - (chi * rational(h as i64, 1) + degree) / rational(2, 1)
}

fn to_u32(x: &Rational) -> Option<u32> {
    if x.is_integer() {
        x.to_integer().to_u32()
    } else {
        None
    }
}

pub fn vertex_degree(action: &SurfaceKernelAction, mc: &MulticurveSpec, piece: &PieceSpec) -> Result<u32, BuildError> {
    let d = degree_rational(action, mc, piece);
    to_u32(&d).ok_or_else(|| BuildError::Piece {
        piece: piece.id,
        reason: format!("degree {d} is not an integer"),
    })
}

pub fn vertex_weight(action: &SurfaceKernelAction, mc: &MulticurveSpec, piece: &PieceSpec) -> Result<u32, BuildError> {
    let d = degree_rational(action, mc, piece);
    let w = weight_rational(action, piece, &d);
    to_u32(&w).ok_or_else(|| BuildError::Piece {
        piece: piece.id,
        reason: format!("weight {w} is not a non-negative integer"),
    })
}

/// Builds the labeled graph, then checks degree coherence, the handshake
/// identity, genus conservation and stability. Any failure is an error.
pub fn build_stratum_graph(
    action: &SurfaceKernelAction,
    mc: &MulticurveSpec,
) -> Result<LabeledStratumGraph, BuildError> {
    let violations = action.validate();
    if !violations.is_empty() {
        return Err(BuildError::InvalidAction(violations));
    }
    let violations = validate_multicurve(action, mc);
    if !violations.is_empty() {
        return Err(BuildError::InvalidMulticurve(violations));
    }
    let graph = assemble(action, mc)?;
    check_degrees(action, mc, &graph)?;
    let degree_sum: u64 = graph.vertices.iter().map(|v| v.degree as u64).sum();
    let twice_edges = 2 * graph.edges.len() as u64;
    if degree_sum != twice_edges {
        return Err(BuildError::Handshake {
            degree_sum,
            twice_edges,
        });
    }
    genus_audit(action, &graph)?;
    if !graph.underlying.is_stable() {
        return Err(BuildError::Unstable);
    }
    Ok(graph)
}

fn assemble(action: &SurfaceKernelAction, mc: &MulticurveSpec) -> Result<LabeledStratumGraph, BuildError> {
    let g = action.group();
    let names = g.names();
    let mut vertices = Vec::new();
    let mut vertex_id = BTreeMap::new();
    let mut piece_cosets = BTreeMap::new();
    for p in &mc.pieces {
        let h = piece_image_subgroup(action, p);
        let cosets = g.left_cosets(&h).expect("same group");
        let degree = vertex_degree(action, mc, p)?;
        let weight = vertex_weight(action, mc, p)?;
        for &rep in cosets.representatives() {
            let id = vertices.len();
            vertex_id.insert((p.id, rep), id);
            vertices.push(LabeledVertex {
                piece: p.id,
                representative: rep,
                representative_name: names[rep].clone(),
                id,
                degree,
                weight,
            });
        }
        piece_cosets.insert(p.id, cosets);
    }

    let mut edges = Vec::new();
    for c in &mc.curves {
        let k = curve_image_subgroup(action, c);
        let shifts: Vec<(PieceId, usize)> = c
            .sides
            .iter()
            .map(|s| Ok((s.piece, action.evaluate_index(&s.attach)?)))
            .collect::<Result<_, ActionError>>()?;
        for &rep in g.left_cosets(&k).expect("same group").representatives() {
            let ends = shifts.iter().map(|&(piece, d)| {
                let cosets = &piece_cosets[&piece];
                let target = cosets.representative_index(cosets.coset_of_index(g.mul_index(rep, d)));
                vertex_id[&(piece, target)]
            });
            let ends: Vec<usize> = ends.collect();
            edges.push(LabeledEdge {
                curve: c.id.clone(),
                representative: rep,
                representative_name: names[rep].clone(),
                ends: [ends[0], ends[1]],
            });
        }
    }

    let underlying = StableGraph::new(
        vertices
            .iter()
            .map(|v| Vertex {
                id: v.id,
                weight: v.weight,
            })
            .collect(),
        edges.iter().map(|e| (e.ends[0], e.ends[1])).collect(),
    )
    .expect("edge ends are vertex ids");
    Ok(LabeledStratumGraph {
        vertices,
        edges,
        underlying,
    })
}

fn check_degrees(
    action: &SurfaceKernelAction,
    mc: &MulticurveSpec,
    graph: &LabeledStratumGraph,
) -> Result<(), BuildError> {
    let expected_vertices: usize = mc
        .pieces
        .iter()
        .map(|p| component_count(action, &piece_image_subgroup(action, p)))
        .sum();
    let expected_edges: usize = mc
        .curves
        .iter()
        .map(|c| component_count(action, &curve_image_subgroup(action, c)))
        .sum();
    assert_eq!(graph.vertices.len(), expected_vertices);
    assert_eq!(graph.edges.len(), expected_edges);
    for v in &graph.vertices {
        let attached = graph.underlying.degree(v.id);
        if attached != v.degree {
            return Err(BuildError::DegreeMismatch {
                piece: v.piece,
                representative: v.representative_name.clone(),
                formula: v.degree,
                attached,
            });
        }
    }
    Ok(())
}

/// Genus of the underlying graph against the Riemann-Hurwitz genus of the cover.
pub fn genus_audit(action: &SurfaceKernelAction, graph: &LabeledStratumGraph) -> Result<u64, BuildError> {
    let expected = action.riemann_hurwitz_genus()?;
    let genus = graph.underlying.genus();
    if genus == expected as i64 {
        Ok(expected)
    } else {
        Err(BuildError::GenusMismatch { graph: genus, expected })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupTable;
    use crate::orbifold::OrbifoldSignature;
    use proptest::prelude::*;

    fn pyramidal(n: usize) -> SurfaceKernelAction {
        let sig = OrbifoldSignature::closed(0, vec![2, 2, 2, 2, n as u32]).unwrap();
        SurfaceKernelAction::from_names(GroupTable::dihedral(n).unwrap(), sig, &["s", "r s", "r s", "r s", "r"])
            .unwrap()
    }

    fn example_one(n: usize) -> MulticurveSpec {
        let json = format!(
            r#"{{"pieces":[{{"id":1,"signature":{{"genus":0,"boundary":1,"cone_orders":[2,2,{n}]}},"cone_points":[1,2,5],"generators":["x1","x2","x5"]}}],
               "curves":[{{"id":"g","kind":"arc","endpoints":[3,4],"gamma_a":"x3","gamma_b":"x4","sides":[{{"piece":1,"attach":""}},{{"piece":1,"attach":"x4"}}]}}]}}"#
        );
        serde_json::from_str(&json).unwrap()
    }

    /// Two arcs, joining P1 to P2 and P3 to P4; the piece is an annulus around P5.
    fn two_arcs(n: usize) -> MulticurveSpec {
        let json = format!(
            r#"{{"pieces":[{{"id":1,"signature":{{"genus":0,"boundary":2,"cone_orders":[{n}]}},"cone_points":[5],"generators":["x5","x1 x2"]}}],
               "curves":[{{"id":"g1","kind":"arc","endpoints":[1,2],"gamma_a":"x1","gamma_b":"x2","sides":[{{"piece":1}},{{"piece":1,"attach":"x2"}}]}},
                         {{"id":"g2","kind":"arc","endpoints":[3,4],"gamma_a":"x3","gamma_b":"x4","sides":[{{"piece":1}},{{"piece":1,"attach":"x4"}}]}}]}}"#
        );
        serde_json::from_str(&json).unwrap()
    }

    #[test]
    fn example_one_graph() {
        for n in 3..=12 {
            let a = pyramidal(n);
            let mc = example_one(n);
            let p = &mc.pieces[0];
            assert_eq!(vertex_degree(&a, &mc, p).unwrap(), 2 * n as u32);
            assert_eq!(vertex_weight(&a, &mc, p).unwrap(), 0);
            let g = build_stratum_graph(&a, &mc).unwrap();
            let u = g.underlying();
            assert_eq!((u.vertex_count(), u.edge_count(), u.loop_count(0)), (1, n, n));
            assert_eq!(genus_audit(&a, &g).unwrap(), n as u64);
        }
    }

    #[test]
    fn component_counts() {
        let a = pyramidal(6);
        let g = a.group();
        assert_eq!(component_count(&a, &g.closure_of_indices(&[1, 6])), 1);
        assert_eq!(component_count(&a, &g.closure_of_indices(&[7])), 6);
        assert_eq!(component_count(&a, &g.closure_of_indices(&[7, 2])), 2);
    }

    #[test]
    fn two_arc_graph_has_two_vertices() {
        // x1 x2 maps to s r s = r^-1, so the piece image is the rotation subgroup.
        for n in 3..=12 {
            let a = pyramidal(n);
            let g = build_stratum_graph(&a, &two_arcs(n)).unwrap();
            let u = g.underlying();
            assert_eq!(u.vertex_count(), 2);
            // arc images <s, r s> = D_n and <r s> = D_1 give 1 + n edges
            assert_eq!(u.edge_count(), 1 + n);
            assert_eq!(u.vertices()[0].weight, u.vertices()[1].weight);
        }
    }

    #[test]
    fn empty_multicurve_gives_smooth_surface() {
        for n in 3..=8 {
            let a = pyramidal(n);
            let g = build_stratum_graph(&a, &MulticurveSpec::empty(a.signature())).unwrap();
            assert_eq!(g.underlying().to_text(), format!("V 1 w={n}\n"));
        }
    }

    #[test]
    fn invalid_input_is_rejected_before_building() {
        let a = pyramidal(5);
        let mut mc = two_arcs(5);
        mc.curves[0].sides[1].attach = "x5".parse().unwrap();
        match build_stratum_graph(&a, &mc) {
            Err(BuildError::InvalidMulticurve(v)) => assert!(v
                .iter()
                .any(|x| matches!(x, MulticurveViolation::AttachmentNotWellDefined { .. }))),
            other => panic!("unexpected {other:?}"),
        }
    }

    proptest! {
        #[test]
        fn left_translation_is_an_automorphism(n in 3usize..14, h in 0usize..28) {
            let a = pyramidal(n);
            let grp = a.group();
            let h = h % grp.order();
            for mc in [example_one(n), two_arcs(n)] {
                let g = build_stratum_graph(&a, &mc).unwrap();
                let moved = |piece: PieceId, rep: usize| {
                    let hg = grp.mul_index(h, rep);
                    g.vertices()
                        .iter()
                        .filter(|v| v.piece == piece)
                        .find(|v| {
                            let sub = piece_image_subgroup(&a, mc.piece(piece).unwrap());
                            sub.contains_index(grp.mul_index(grp.inverse_index(v.representative), hg))
                        })
                        .unwrap()
                        .id
                };
                let perm: Vec<usize> = g.vertices().iter().map(|v| moved(v.piece, v.representative)).collect();
                let translated = g.underlying().relabeled(&perm);
                let mut e1: Vec<_> = g.underlying().edges().to_vec();
                let mut e2: Vec<_> = translated.edges().to_vec();
                e1.sort_unstable();
                e2.sort_unstable();
                prop_assert_eq!(e1, e2);
                prop_assert!(g.underlying().is_isomorphic(&translated).unwrap());
            }
        }
    }
}
