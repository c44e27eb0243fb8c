//! Combinatorial description of a multicurve on the quotient orbifold:
//! the pieces it cuts out, its curves, and the words tying them to the
//! basepoint.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::group::Subgroup;
use crate::limit_graph;
use crate::orbifold::{Generator, OrbifoldSignature, Rational, SurfaceKernelAction, Word};

pub type PieceId = u32;

/// A component of the orbifold cut along the multicurve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceSpec {
    pub id: PieceId,
    pub signature: OrbifoldSignature,
    /// Indices (1-based) of the cone points of the whole orbifold lying in this piece.
    pub cone_points: Vec<usize>,
    /// Generators of the piece's fundamental group, pushed to the basepoint.
    pub generators: Vec<Word>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CurveKind {
    Closed {
        gamma: Word,
    },
    Arc {
        endpoints: [usize; 2],
        gamma_a: Word,
        gamma_b: Word,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Side {
    pub piece: PieceId,
    #[serde(default)]
    pub attach: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub id: String,
    #[serde(flatten)]
    pub kind: CurveKind,
    pub sides: Vec<Side>,
}

impl CurveSpec {
    pub fn is_arc(&self) -> bool {
        matches!(self.kind, CurveKind::Arc { .. })
    }

    /// Both sides on one piece: arcs and non-separating closed curves.
    pub fn is_one_sided(&self) -> bool {
        self.sides.len() == 2 && self.sides[0].piece == self.sides[1].piece
    }

    pub fn words(&self) -> Vec<&Word> {
        match &self.kind {
            CurveKind::Closed { gamma } => vec![gamma],
            CurveKind::Arc { gamma_a, gamma_b, .. } => vec![gamma_a, gamma_b],
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MulticurveSpec {
    pub pieces: Vec<PieceSpec>,
    #[serde(default)]
    pub curves: Vec<CurveSpec>,
}

impl MulticurveSpec {
    /// The empty multicurve: one piece, the whole orbifold.
    pub fn empty(sig: &OrbifoldSignature) -> Self {
        let k = sig.cone_count();
        let mut generators: Vec<Word> = (1..=k).map(Word::cone).collect();
        for i in 1..=sig.genus as usize {
            generators.push(Word::generator(Generator::HandleA(i)));
            generators.push(Word::generator(Generator::HandleB(i)));
        }
        MulticurveSpec {
            pieces: vec![PieceSpec {
                id: 1,
                signature: sig.clone(),
                cone_points: (1..=k).collect(),
                generators,
            }],
            curves: vec![],
        }
    }

    pub fn piece(&self, id: PieceId) -> Option<&PieceSpec> {
        self.pieces.iter().find(|p| p.id == id)
    }

    pub fn curve(&self, id: &str) -> Option<&CurveSpec> {
        self.curves.iter().find(|c| c.id == id)
    }

    /// Boundary circles of a piece: one per arc on it (both arc sides lie on
    /// the same circle) and one per side of a closed curve.
    pub fn boundary_components(&self, id: PieceId) -> u32 {
        self.curves
            .iter()
            .map(|c| {
                let sides = c.sides.iter().filter(|s| s.piece == id).count() as u32;
                if c.is_arc() {
                    sides.min(1)
                } else {
                    sides
                }
            })
            .sum()
    }
}

/// One failed condition of a multicurve spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MulticurveViolation {
    NoPieces,
    DuplicatePiece(PieceId),
    DuplicateCurve(String),
    BadSignature {
        piece: PieceId,
        reason: String,
    },
    NotHyperbolic {
        piece: PieceId,
        chi: Rational,
    },
    UnknownConePoint {
        owner: String,
        point: usize,
    },
    ConeOrderMismatch {
        piece: PieceId,
        declared: Vec<u32>,
        referenced: Vec<u32>,
    },
    ConePointCount {
        point: usize,
        count: usize,
    },
    EulerCharacteristicSum {
        sum: Rational,
        expected: Rational,
    },
    BoundaryCount {
        piece: PieceId,
        declared: u32,
        incident: u32,
    },
    Disconnected,
    SideCount {
        curve: String,
        count: usize,
    },
    UnknownPiece {
        curve: String,
        piece: PieceId,
    },
    ArcSidesDiffer {
        curve: String,
    },
    ArcEndpointsEqual {
        curve: String,
    },
    ArcEndpointOrder {
        curve: String,
        point: usize,
        order: u32,
    },
    UnknownGenerator {
        owner: String,
        generator: Generator,
    },
    ArcImageNotInvolution {
        curve: String,
        word: String,
        image: String,
    },
    ArcImageNotConjugate {
        curve: String,
        word: String,
        point: usize,
    },
    NoTrivialSide {
        curve: String,
    },
    AttachmentNotWellDefined {
        curve: String,
        element: String,
    },
    NonIntegralDegree {
        piece: PieceId,
        degree: Rational,
    },
    BadWeight {
        piece: PieceId,
        weight: Rational,
    },
}

impl fmt::Display for MulticurveViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use MulticurveViolation::*;
        match self {
            NoPieces => write!(f, "multicurve has no pieces"),
            DuplicatePiece(p) => write!(f, "piece {p}: duplicate id"),
            DuplicateCurve(c) => write!(f, "curve {c}: duplicate id"),
            BadSignature { piece, reason } => write!(f, "piece {piece}: {reason}"),
            NotHyperbolic { piece, chi } => {
                write!(f, "piece {piece}: Euler characteristic {chi} is not negative")
            }
            UnknownConePoint { owner, point } => write!(f, "{owner}: cone point {point} does not exist"),
            ConeOrderMismatch {
                piece,
                declared,
                referenced,
            } => write!(
                f,
                "piece {piece}: signature cone orders {declared:?} differ from referenced cone points {referenced:?}"
            ),
            ConePointCount { point, count } => {
                write!(f, "cone point {point}: used {count} times, expected exactly once")
            }
            EulerCharacteristicSum { sum, expected } => {
                write!(
                    f,
                    "pieces have total Euler characteristic {sum}, orbifold has {expected}"
                )
            }
            BoundaryCount {
                piece,
                declared,
                incident,
            } => write!(
                f,
                "piece {piece}: declares {declared} boundary components but the curves give it {incident}"
            ),
            Disconnected => write!(f, "pieces and curves do not form a connected orbifold"),
            SideCount { curve, count } => write!(f, "curve {curve}: has {count} sides, expected 2"),
            UnknownPiece { curve, piece } => write!(f, "curve {curve}: side references unknown piece {piece}"),
            ArcSidesDiffer { curve } => write!(f, "curve {curve}: arc sides must lie on the same piece"),
            ArcEndpointsEqual { curve } => write!(f, "curve {curve}: arc endpoints coincide"),
            ArcEndpointOrder { curve, point, order } => {
                write!(f, "curve {curve}: arc endpoint {point} has order {order}, expected 2")
            }
            UnknownGenerator { owner, generator } => write!(f, "{owner}: unknown generator {generator}"),
            ArcImageNotInvolution { curve, word, image } => {
                write!(
                    f,
                    "curve {curve}: word {word:?} maps to {image}, not an element of order 2"
                )
            }
            ArcImageNotConjugate { curve, word, point } => write!(
                f,
                "curve {curve}: image of {word:?} is not conjugate to the image of x{point}"
            ),
            NoTrivialSide { curve } => write!(f, "curve {curve}: no side has an empty attachment word"),
            AttachmentNotWellDefined { curve, element } => write!(
                f,
                "curve {curve}: attachment depends on the coset representative (fails for {element})"
            ),
            NonIntegralDegree { piece, degree } => write!(f, "piece {piece}: vertex degree {degree} is not an integer"),
            BadWeight { piece, weight } => {
                write!(f, "piece {piece}: vertex weight {weight} is not a non-negative integer")
            }
        }
    }
}

/// Image under the action of the curve's fundamental group.
pub fn curve_image_subgroup(action: &SurfaceKernelAction, curve: &CurveSpec) -> Subgroup {
    let gens: Vec<usize> = curve
        .words()
        .into_iter()
        .map(|w| action.evaluate_index(w).expect("validated word"))
        .collect();
    action.group().closure_of_indices(&gens)
}

/// Image under the action of the piece's fundamental group.
pub fn piece_image_subgroup(action: &SurfaceKernelAction, piece: &PieceSpec) -> Subgroup {
    let gens: Vec<usize> = piece
        .generators
        .iter()
        .map(|w| action.evaluate_index(w).expect("validated word"))
        .collect();
    action.group().closure_of_indices(&gens)
}

/// Checks admissibility and internal consistency. An empty result means
/// the stratum graph can be built.
pub fn validate_multicurve(action: &SurfaceKernelAction, mc: &MulticurveSpec) -> Vec<MulticurveViolation> {
    let mut out = structural_violations(action, mc);
    if out.is_empty() {
        out.extend(algebraic_violations(action, mc));
    }
    out
}

fn structural_violations(action: &SurfaceKernelAction, mc: &MulticurveSpec) -> Vec<MulticurveViolation> {
    use MulticurveViolation::*;
    let sig = action.signature();
    let k = sig.cone_count();
    let mut out = Vec::new();
    if mc.pieces.is_empty() {
        out.push(NoPieces);
        return out;
    }

    let mut piece_ids = BTreeSet::new();
    for p in &mc.pieces {
        if !piece_ids.insert(p.id) {
            out.push(DuplicatePiece(p.id));
        }
    }
    let mut curve_ids = BTreeSet::new();
    for c in &mc.curves {
        if !curve_ids.insert(c.id.as_str()) {
            out.push(DuplicateCurve(c.id.clone()));
        }
    }

    let mut uses = vec![0usize; k + 1];
    let mut note_point = |owner: String, point: usize, out: &mut Vec<MulticurveViolation>| {
        if (1..=k).contains(&point) {
            uses[point] += 1;
            true
        } else {
            out.push(UnknownConePoint { owner, point });
            false
        }
    };

    let mut chi_sum = Rational::zero();
    for p in &mc.pieces {
        if let Err(e) = p.signature.check() {
            out.push(BadSignature {
                piece: p.id,
                reason: e.to_string(),
            });
            continue;
        }
        let chi = p.signature.euler_characteristic();
        if !chi.is_negative() {
            out.push(NotHyperbolic {
                piece: p.id,
                chi: chi.clone(),
            });
        }
        chi_sum += chi;
        let mut referenced = Vec::new();
        for &pt in &p.cone_points {
            if note_point(format!("piece {}", p.id), pt, &mut out) {
                referenced.push(sig.cone_orders[pt - 1]);
            }
        }
        let mut declared = p.signature.cone_orders.clone();
        declared.sort_unstable();
        referenced.sort_unstable();
        if declared != referenced {
            out.push(ConeOrderMismatch {
                piece: p.id,
                declared,
                referenced,
            });
        }
        for w in &p.generators {
            check_word(action, &format!("piece {}", p.id), w, &mut out);
        }
        let incident = mc.boundary_components(p.id);
        if incident != p.signature.boundary {
            out.push(BoundaryCount {
                piece: p.id,
                declared: p.signature.boundary,
                incident,
            });
        }
    }

    for c in &mc.curves {
        let owner = format!("curve {}", c.id);
        if c.sides.len() != 2 {
            out.push(SideCount {
                curve: c.id.clone(),
                count: c.sides.len(),
            });
        }
        for s in &c.sides {
            if !piece_ids.contains(&s.piece) {
                out.push(UnknownPiece {
                    curve: c.id.clone(),
                    piece: s.piece,
                });
            }
            check_word(action, &owner, &s.attach, &mut out);
        }
        for w in c.words() {
            check_word(action, &owner, w, &mut out);
        }
        if let CurveKind::Arc { endpoints, .. } = &c.kind {
            if c.sides.len() == 2 && c.sides[0].piece != c.sides[1].piece {
                out.push(ArcSidesDiffer { curve: c.id.clone() });
            }
            if endpoints[0] == endpoints[1] {
                out.push(ArcEndpointsEqual { curve: c.id.clone() });
            }
            for &pt in endpoints {
                if note_point(owner.clone(), pt, &mut out) && sig.cone_orders[pt - 1] != 2 {
                    out.push(ArcEndpointOrder {
                        curve: c.id.clone(),
                        point: pt,
                        order: sig.cone_orders[pt - 1],
                    });
                }
            }
        }
        if c.sides.len() == 2 {
            let trivial_ok = if c.is_one_sided() {
                c.sides[0].attach.is_empty()
            } else {
                c.sides.iter().any(|s| s.attach.is_empty())
            };
            if !trivial_ok {
                out.push(NoTrivialSide { curve: c.id.clone() });
            }
        }
    }

    for (point, &count) in uses.iter().enumerate().skip(1) {
        if count != 1 {
            out.push(ConePointCount { point, count });
        }
    }
    let expected = sig.euler_characteristic();
    if chi_sum != expected {
        out.push(EulerCharacteristicSum { sum: chi_sum, expected });
    }
    if !pieces_connected(mc) {
        out.push(Disconnected);
    }
    out
}

fn check_word(action: &SurfaceKernelAction, owner: &str, w: &Word, out: &mut Vec<MulticurveViolation>) {
    for g in w.generators() {
        if g.slot(action.signature()).is_none() {
            out.push(MulticurveViolation::UnknownGenerator {
                owner: owner.to_string(),
                generator: g,
            });
        }
    }
}

fn pieces_connected(mc: &MulticurveSpec) -> bool {
    let ids: Vec<PieceId> = mc.pieces.iter().map(|p| p.id).collect();
    let mut seen = BTreeSet::from([ids[0]]);
    let mut stack = vec![ids[0]];
    while let Some(p) = stack.pop() {
        for c in mc.curves.iter().filter(|c| c.sides.iter().any(|s| s.piece == p)) {
            for s in &c.sides {
                if seen.insert(s.piece) {
                    stack.push(s.piece);
                }
            }
        }
    }
    ids.iter().all(|p| seen.contains(p))
}

fn algebraic_violations(action: &SurfaceKernelAction, mc: &MulticurveSpec) -> Vec<MulticurveViolation> {
    use MulticurveViolation::*;
    let g = action.group();
    let mut out = Vec::new();
    let piece_groups: BTreeMap<PieceId, Subgroup> = mc
        .pieces
        .iter()
        .map(|p| (p.id, piece_image_subgroup(action, p)))
        .collect();

    for c in &mc.curves {
        if let CurveKind::Arc {
            endpoints,
            gamma_a,
            gamma_b,
        } = &c.kind
        {
            for (w, &pt) in [gamma_a, gamma_b].into_iter().zip(endpoints) {
                let x = action.evaluate_index(w).expect("checked");
                if g.order_index(x) != 2 {
                    out.push(ArcImageNotInvolution {
                        curve: c.id.clone(),
                        word: w.to_string(),
                        image: g.names()[x].clone(),
                    });
                }
                let y = action.images()[pt - 1].index();
                let conjugate = (0..g.order()).any(|h| g.mul_index(g.mul_index(h, y), g.inverse_index(h)) == x);
                if !conjugate {
                    out.push(ArcImageNotConjugate {
                        curve: c.id.clone(),
                        word: w.to_string(),
                        point: pt,
                    });
                }
            }
        }
        let k = curve_image_subgroup(action, c);
        let ends: Vec<(PieceId, usize)> = c
            .sides
            .iter()
            .map(|s| (s.piece, action.evaluate_index(&s.attach).expect("checked")))
            .collect();
        // gK -> {(j1, g d1 H1), (j2, g d2 H2)} must not depend on the representative.
        let label = |t: usize, (piece, d): (PieceId, usize)| {
            let h = &piece_groups[&piece];
            let x = g.mul_index(t, d);
            let rep = h.elements().iter().map(|&y| g.mul_index(x, y)).min().unwrap();
            (piece, rep)
        };
        let base = sorted_pair(label(g.identity_index(), ends[0]), label(g.identity_index(), ends[1]));
        if let Some(&bad) = k
            .elements()
            .iter()
            .find(|&&t| sorted_pair(label(t, ends[0]), label(t, ends[1])) != base)
        {
            out.push(AttachmentNotWellDefined {
                curve: c.id.clone(),
                element: g.names()[bad].clone(),
            });
        }
    }

    if !out.is_empty() {
        return out;
    }
    for p in &mc.pieces {
        let degree = limit_graph::degree_rational(action, mc, p);
        if !degree.is_integer() {
            out.push(NonIntegralDegree { piece: p.id, degree });
            continue;
        }
        let weight = limit_graph::weight_rational(action, p, &degree);
        if !weight.is_integer() || weight.is_negative() {
            out.push(BadWeight { piece: p.id, weight });
        }
    }
    out
}

fn sorted_pair<T: Ord>(a: T, b: T) -> (T, T) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// `1 / |H|` as an exact rational.
pub(crate) fn reciprocal(order: usize) -> Rational {
    Rational::one() / Rational::from_integer(order.into())
}
