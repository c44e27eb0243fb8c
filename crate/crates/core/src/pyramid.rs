//! The dihedral action of `D_n` on a genus-`n` surface with quotient
//! signature `(0; 2, 2, 2, 2, n)`, its one- and two-curve multicurves, and
//! the classification of the resulting stable graphs.
//!
//! Multicurves are produced from a braid program acting on the standard
//! basis `x1, ..., x5`: half twists of adjacent generators, full twists and
//! a global conjugation. The program moves the curve into a standard
//! position, where one of four templates (one arc, two arcs, one closed
//! curve, arc plus closed curve) reads the piece and curve words off the
//! transformed basis. Every move keeps the product of the five words equal
//! to a conjugate of `x1 x2 x3 x4 x5`, so each template is a valid cut of
//! the orbifold.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::group::GroupTable;
use crate::limit_graph::{build_stratum_graph, BuildError, LabeledStratumGraph};
use crate::multicurve::{
    curve_image_subgroup, piece_image_subgroup, CurveKind, CurveSpec, MulticurveSpec, PieceSpec, Side,
};
use crate::orbifold::{OrbifoldSignature, SurfaceKernelAction, Word};
use crate::stable_graph::{CanonicalForm, GraphError, StableGraph};

#[derive(Debug, Error)]
pub enum PyramidError {
    #[error("n must be at least 3, got {0}")]
    NTooSmall(u32),
    #[error("family {family} has no variant {variant}")]
    NoSuchVariant { family: Family, variant: Variant },
    #[error("{family} {variant}: parameter {param} outside {range}")]
    ParamOutOfRange {
        family: Family,
        variant: Variant,
        param: u32,
        range: String,
    },
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("unknown variant {0:?}")]
    UnknownVariant(String),
    #[error("inconsistent parameters: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The pyramidal action for one value of `n`.
#[derive(Debug, Clone)]
pub struct PyramidFamily {
    n: u32,
    action: SurfaceKernelAction,
}

pub fn pyramid_action(n: u32) -> Result<PyramidFamily, PyramidError> {
    if n < 3 {
        return Err(PyramidError::NTooSmall(n));
    }
    let group = GroupTable::dihedral(n as usize).expect("n >= 3");
    let sig = OrbifoldSignature::closed(0, vec![2, 2, 2, 2, n]).expect("valid signature");
    let action = SurfaceKernelAction::from_names(group, sig, &["s", "r s", "r s", "r s", "r"]).expect("names exist");
    Ok(PyramidFamily { n, action })
}

impl PyramidFamily {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn action(&self) -> &SurfaceKernelAction {
        &self.action
    }

    /// Index of `r^e`.
    pub fn rotation(&self, e: i64) -> usize {
        e.rem_euclid(self.n as i64) as usize
    }

    /// Index of `r^e s`.
    pub fn reflection(&self, e: i64) -> usize {
        self.n as usize + self.rotation(e)
    }

    fn cone_order(&self, id: usize) -> u32 {
        if id == 5 {
            self.n
        } else {
            2
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    OneArc,
    TwoArcs,
    OneClosed,
    ArcPlusClosed,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::OneArc,
        Family::TwoArcs,
        Family::OneClosed,
        Family::ArcPlusClosed,
    ];

    pub fn variants(self) -> &'static [Variant] {
        use Variant::*;
        match self {
            Family::OneArc => &[TopRight, BottomLeft, BottomRight],
            Family::TwoArcs => &[Wrap],
            Family::OneClosed => &[Left, Right],
            Family::ArcPlusClosed => &[Top, MiddleLeft, MiddleRight, BottomLeft, BottomRight, Paired],
        }
    }

    fn name(self) -> &'static str {
        match self {
            Family::OneArc => "one-arc",
            Family::TwoArcs => "two-arcs",
            Family::OneClosed => "one-closed",
            Family::ArcPlusClosed => "arc-plus-closed",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = PyramidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| PyramidError::UnknownFamily(s.to_string()))
    }
}

/// Named case within a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    TopRight,
    BottomLeft,
    BottomRight,
    Wrap,
    Left,
    Right,
    Top,
    MiddleLeft,
    MiddleRight,
    Paired,
}

impl Variant {
    const ALL: [Variant; 10] = [
        Variant::TopRight,
        Variant::BottomLeft,
        Variant::BottomRight,
        Variant::Wrap,
        Variant::Left,
        Variant::Right,
        Variant::Top,
        Variant::MiddleLeft,
        Variant::MiddleRight,
        Variant::Paired,
    ];

    fn name(self) -> &'static str {
        match self {
            Variant::TopRight => "top-right",
            Variant::BottomLeft => "bottom-left",
            Variant::BottomRight => "bottom-right",
            Variant::Wrap => "wrap",
            Variant::Left => "left",
            Variant::Right => "right",
            Variant::Top => "top",
            Variant::MiddleLeft => "middle-left",
            Variant::MiddleRight => "middle-right",
            Variant::Paired => "paired",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = PyramidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| PyramidError::UnknownVariant(s.to_string()))
    }
}

/// A multicurve in one of the families. `param` is the winding
/// number `k` or `t` of the family (for `paired` it is `v`, see
/// [`make_multicurve`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PyramidMulticurveParams {
    pub family: Family,
    pub variant: Variant,
    pub param: u32,
}

impl PyramidMulticurveParams {
    pub fn new(family: Family, variant: Variant, param: u32) -> Self {
        PyramidMulticurveParams { family, variant, param }
    }

    /// Accepted parameter values for a given `n`.
    pub fn range(family: Family, variant: Variant, n: u32) -> std::ops::RangeInclusive<u32> {
        match (family, variant) {
            (Family::OneArc, Variant::TopRight) => 0..=0,
            (Family::TwoArcs, _) | (_, Variant::Paired) => 1..=n,
            _ => 0..=n - 1,
        }
    }

    pub fn check(&self, n: u32) -> Result<(), PyramidError> {
        if !self.family.variants().contains(&self.variant) {
            return Err(PyramidError::NoSuchVariant {
                family: self.family,
                variant: self.variant,
            });
        }
        let range = Self::range(self.family, self.variant, n);
        if !range.contains(&self.param) {
            return Err(PyramidError::ParamOutOfRange {
                family: self.family,
                variant: self.variant,
                param: self.param,
                range: format!("{}..={}", range.start(), range.end()),
            });
        }
        Ok(())
    }
}

impl fmt::Display for PyramidMulticurveParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.family, self.variant, self.param)
    }
}

/// Every parameter set accepted for `n`.
pub fn all_params(n: u32) -> Vec<PyramidMulticurveParams> {
    let mut out = Vec::new();
    for family in Family::ALL {
        for &variant in family.variants() {
            for param in PyramidMulticurveParams::range(family, variant, n) {
                out.push(PyramidMulticurveParams::new(family, variant, param));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy)]
enum Move {
    /// `(a, b) -> (a b a^-1, a)` at positions `i, i+1`.
    Half(usize),
    /// `(a, b) -> (b, b^-1 a b)`.
    HalfInv(usize),
    /// Both words at `i, i+1` conjugated by `(a b)^k`.
    Twist(usize, i64),
    /// Every word conjugated by `x5^k`.
    Conjugate(i64),
}

/// Five loop words with product `x1 x2 x3 x4 x5`, and the cone point each one surrounds.
#[derive(Debug, Clone)]
struct Basis {
    words: Vec<Word>,
    ids: Vec<usize>,
}

impl Basis {
    fn standard() -> Basis {
        Basis {
            words: (1..=5).map(Word::cone).collect(),
            ids: (1..=5).collect(),
        }
    }

    fn apply(&mut self, m: Move) {
        match m {
            Move::Half(i) => {
                let (a, b) = (self.words[i].clone(), self.words[i + 1].clone());
                self.words[i] = b.conjugate_by(&a);
                self.words[i + 1] = a;
                self.ids.swap(i, i + 1);
            }
            Move::HalfInv(i) => {
                let (a, b) = (self.words[i].clone(), self.words[i + 1].clone());
                self.words[i] = b.clone();
                self.words[i + 1] = a.conjugate_by(&b.inverse());
                self.ids.swap(i, i + 1);
            }
            Move::Twist(i, k) => {
                let c = self.words[i].mul(&self.words[i + 1]).pow(k);
                self.words[i] = self.words[i].conjugate_by(&c);
                self.words[i + 1] = self.words[i + 1].conjugate_by(&c);
            }
            Move::Conjugate(k) => {
                let c = Word::cone(5).pow(k);
                for w in &mut self.words {
                    *w = w.conjugate_by(&c);
                }
            }
        }
    }

    fn product(&self, positions: &[usize]) -> Word {
        positions.iter().fold(Word::empty(), |acc, &p| acc.mul(&self.words[p]))
    }
}

#[derive(Debug, Clone, Copy)]
enum Template {
    /// Arc between positions `p` and `p + 1`.
    OneArc(usize),
    TwoArcs,
    OneClosed,
    ArcClosed,
}

fn program(p: PyramidMulticurveParams) -> (Vec<Move>, Template) {
    use Move::*;
    let k = p.param as i64;
    match (p.family, p.variant) {
        (Family::OneArc, Variant::TopRight) => (vec![], Template::OneArc(2)),
        (Family::OneArc, Variant::BottomLeft) => (vec![Half(0), Twist(1, k + 1)], Template::OneArc(2)),
        (Family::OneArc, _) => (vec![Half(0), Twist(0, k), Conjugate(k)], Template::OneArc(1)),
        (Family::TwoArcs, _) => {
            let t = if k % 2 == 1 { (k + 1) / 2 } else { -k / 2 };
            (vec![Half(0), Twist(1, t)], Template::TwoArcs)
        }
        (Family::OneClosed, Variant::Left) => (
            vec![Half(0), Half(1), Half(2), Twist(2, -k), Conjugate(1)],
            Template::OneClosed,
        ),
        (Family::OneClosed, _) => (vec![Half(0), Half(1), Twist(2, -k), Conjugate(1)], Template::OneClosed),
        (Family::ArcPlusClosed, Variant::Top) => {
            if k % 2 == 0 {
                (vec![Half(0), Half(1), Twist(1, k / 2)], Template::ArcClosed)
            } else {
                (vec![Half(0), Twist(1, (k + 1) / 2)], Template::ArcClosed)
            }
        }
        (Family::ArcPlusClosed, Variant::MiddleLeft) => (
            vec![HalfInv(0), Twist(1, k), HalfInv(1), HalfInv(2)],
            Template::ArcClosed,
        ),
        (Family::ArcPlusClosed, Variant::MiddleRight) => {
            (vec![HalfInv(0), Twist(1, k), HalfInv(2)], Template::ArcClosed)
        }
        (Family::ArcPlusClosed, Variant::BottomLeft) => (
            vec![Half(0), Twist(1, -k), Half(1), HalfInv(2), Conjugate(1)],
            Template::ArcClosed,
        ),
        (Family::ArcPlusClosed, Variant::BottomRight) => (
            vec![Half(0), Twist(1, -k), HalfInv(2), Conjugate(1)],
            Template::ArcClosed,
        ),
        (Family::ArcPlusClosed, _) => {
            if k % 2 == 1 {
                (
                    vec![Half(0), Half(1), Twist(2, (k + 1) / 2), Twist(1, -1)],
                    Template::ArcClosed,
                )
            } else {
                (
                    vec![Half(0), Half(1), Half(2), Twist(2, k / 2), Twist(1, -1)],
                    Template::ArcClosed,
                )
            }
        }
    }
}

impl PyramidFamily {
    fn piece(&self, id: u32, genus: u32, boundary: u32, cone_points: Vec<usize>, generators: Vec<Word>) -> PieceSpec {
        let mut cone_points = cone_points;
        cone_points.sort_unstable();
        let orders = cone_points.iter().map(|&c| self.cone_order(c)).collect();
        let signature = OrbifoldSignature::new(genus, boundary, orders).expect("orders at least 2");
        PieceSpec {
            id,
            signature,
            cone_points,
            generators,
        }
    }

    fn arc(&self, id: &str, b: &Basis, p: usize, piece: u32) -> CurveSpec {
        let (gamma_a, gamma_b) = (b.words[p].clone(), b.words[p + 1].clone());
        CurveSpec {
            id: id.to_string(),
            sides: vec![
                Side {
                    piece,
                    attach: Word::empty(),
                },
                Side {
                    piece,
                    attach: gamma_b.clone(),
                },
            ],
            kind: CurveKind::Arc {
                endpoints: [b.ids[p], b.ids[p + 1]],
                gamma_a,
                gamma_b,
            },
        }
    }

    fn closed(&self, id: &str, gamma: Word, pieces: [u32; 2]) -> CurveSpec {
        CurveSpec {
            id: id.to_string(),
            kind: CurveKind::Closed { gamma },
            sides: pieces
                .iter()
                .map(|&piece| Side {
                    piece,
                    attach: Word::empty(),
                })
                .collect(),
        }
    }

    fn read_template(&self, b: &Basis, t: Template) -> MulticurveSpec {
        let w = |i: usize| b.words[i].clone();
        match t {
            Template::OneArc(p) => {
                let rest: Vec<usize> = (0..5).filter(|&i| i != p && i != p + 1).collect();
                let piece = self.piece(
                    1,
                    0,
                    1,
                    rest.iter().map(|&i| b.ids[i]).collect(),
                    rest.iter().map(|&i| w(i)).collect(),
                );
                MulticurveSpec {
                    pieces: vec![piece],
                    curves: vec![self.arc("g", b, p, 1)],
                }
            }
            Template::TwoArcs => {
                let piece = self.piece(1, 0, 2, vec![b.ids[4]], vec![w(4), b.product(&[0, 1])]);
                MulticurveSpec {
                    pieces: vec![piece],
                    curves: vec![self.arc("g1", b, 0, 1), self.arc("g2", b, 2, 1)],
                }
            }
            Template::OneClosed => {
                let hub = self.piece(1, 0, 1, vec![b.ids[3], b.ids[4]], vec![w(3), w(4)]);
                let leaf = self.piece(2, 0, 1, vec![b.ids[0], b.ids[1], b.ids[2]], vec![w(0), w(1), w(2)]);
                MulticurveSpec {
                    pieces: vec![hub, leaf],
                    curves: vec![self.closed("g", b.product(&[0, 1, 2]), [1, 2])],
                }
            }
            Template::ArcClosed => {
                let annulus = self.piece(1, 0, 2, vec![b.ids[2]], vec![b.product(&[0, 1]), w(2)]);
                let disc = self.piece(2, 0, 1, vec![b.ids[3], b.ids[4]], vec![w(3), w(4)]);
                MulticurveSpec {
                    pieces: vec![annulus, disc],
                    curves: vec![self.arc("g1", b, 0, 1), self.closed("g2", b.product(&[3, 4]), [1, 2])],
                }
            }
        }
    }
}

/// Builds the multicurve spec of a family member.
///
/// Variants and the images they produce, with `k`/`t` the parameter:
///
/// * one-arc: `top-right` gives `<r s>`; `bottom-left` gives
///   `<r s, r^(2(k+1))>`; `bottom-right` gives `<s, r^(2k+1)>`.
/// * two-arcs `wrap`, `k >= 1`: the two arc images have rotation
///   subgroups of index `(n,k)` and `(n,k+1)`.
/// * one-closed: the three-point disc has image `<r s, r^(2t)>` (`left`)
///   or `<r s, r^(2t+1)>` (`right`).
/// * arc-plus-closed: `top` (arc image of index `(n,k)`, `d = n/m`),
///   `middle-left`/`middle-right` (`d = 1`), `bottom-left`/`bottom-right`
///   (`R = r^-2`), and `paired` with parameter `v`, whose arc image has
///   rotations `<r^(2v)>` and `R = r^v`, so `d = 2` when `v = (n/m)/2`.
pub fn make_multicurve(fam: &PyramidFamily, p: PyramidMulticurveParams) -> Result<MulticurveSpec, PyramidError> {
    p.check(fam.n)?;
    let (moves, template) = program(p);
    let mut basis = Basis::standard();
    for m in moves {
        basis.apply(m);
    }
    Ok(fam.read_template(&basis, template))
}

/// The arc joining `P3` and `P4` with the untouched basis.
pub fn example_one(fam: &PyramidFamily) -> MulticurveSpec {
    make_multicurve(fam, PyramidMulticurveParams::new(Family::OneArc, Variant::TopRight, 0)).expect("valid params")
}

/// The arc joining `P3` and `P4` that passes around `P1`, with piece
/// generators `x1`, `x3^-1 x2 x3`, `x4 x5 x4^-1` and arc loops `x3`,
/// `x1^-1 x4 x1`.
pub fn example_two(fam: &PyramidFamily) -> MulticurveSpec {
    let w = |s: &str| s.parse::<Word>().expect("literal word");
    let gamma_b = w("x1^-1 x4 x1");
    MulticurveSpec {
        pieces: vec![fam.piece(
            1,
            0,
            1,
            vec![1, 2, 5],
            vec![w("x1"), w("x3^-1 x2 x3"), w("x4 x5 x4^-1")],
        )],
        curves: vec![CurveSpec {
            id: "g".into(),
            kind: CurveKind::Arc {
                endpoints: [3, 4],
                gamma_a: w("x3"),
                gamma_b: gamma_b.clone(),
            },
            sides: vec![
                Side {
                    piece: 1,
                    attach: Word::empty(),
                },
                Side {
                    piece: 1,
                    attach: gamma_b,
                },
            ],
        }],
    }
}

/// A graph type of the classification, with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum TheoremCase {
    /// One arc whose image is `D_m`.
    OneArc { m: u32 },
    /// Two arcs, `E = (n,k) + (n,k+1)` edges.
    TwoArcs { k: u32 },
    /// One closed curve cutting off a disc whose image is `D_m`.
    OneClosed { m: u32 },
    /// Arc with image `D_m` plus a closed curve, satellites in cycles of length `d`.
    ArcPlusClosed { m: u32, d: u32 },
}

impl fmt::Display for TheoremCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoremCase::OneArc { m } => write!(f, "one-arc m={m}"),
            TheoremCase::TwoArcs { k } => write!(f, "two-arcs k={k}"),
            TheoremCase::OneClosed { m } => write!(f, "one-closed m={m}"),
            TheoremCase::ArcPlusClosed { m, d } => write!(f, "arc-plus-closed m={m} d={d}"),
        }
    }
}

fn gcd(a: i64, b: i64) -> u32 {
    a.gcd(&b) as u32
}

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Cycle lengths realized by some arc-plus-closed variant when `n/m = g`:
/// `1` and `g` always, and `2`, `g/2` when `g` is even.
pub fn realized_cycle_lengths(g: u32) -> BTreeSet<u32> {
    let mut out = BTreeSet::from([1, g]);
    if g.is_multiple_of(2) {
        out.insert(2);
        out.insert(g / 2);
    }
    out
}

/// The case each parameter set falls in, from the closed-form image
/// formulas of the variant (without building anything).
pub fn predicted_case(n: u32, p: PyramidMulticurveParams) -> Result<TheoremCase, PyramidError> {
    p.check(n)?;
    let (nn, k) = (n as i64, p.param as i64);
    let m_of = |e: i64| n / gcd(nn, e);
    Ok(match (p.family, p.variant) {
        (Family::OneArc, Variant::TopRight) => TheoremCase::OneArc { m: 1 },
        (Family::OneArc, Variant::BottomLeft) => TheoremCase::OneArc { m: m_of(2 * (k + 1)) },
        (Family::OneArc, _) => TheoremCase::OneArc { m: m_of(2 * k + 1) },
        (Family::TwoArcs, _) => TheoremCase::TwoArcs { k: p.param },
        (Family::OneClosed, Variant::Left) => TheoremCase::OneClosed { m: m_of(2 * k) },
        (Family::OneClosed, _) => TheoremCase::OneClosed { m: m_of(2 * k + 1) },
        (Family::ArcPlusClosed, v) => {
            let g = match v {
                Variant::Top => gcd(nn, k),
                Variant::MiddleLeft | Variant::BottomLeft => gcd(nn, 2 * k),
                Variant::Paired => gcd(nn, 2 * k),
                _ => gcd(nn, 2 * k + 1),
            };
            let d = match v {
                Variant::Top => g,
                Variant::MiddleLeft | Variant::MiddleRight => 1,
                Variant::BottomLeft | Variant::BottomRight => g / gcd(g as i64, 2),
                _ => g / gcd(nn, k),
            };
            TheoremCase::ArcPlusClosed { m: n / g, d }
        }
    })
}

/// The cases of the classification for `n`, with the
/// arc-plus-closed cycle lengths from [`realized_cycle_lengths`].
pub fn theorem_cases(n: u32) -> Vec<TheoremCase> {
    let mut out = Vec::new();
    for m in divisors(n) {
        out.push(TheoremCase::OneArc { m });
    }
    for k in 1..=n {
        out.push(TheoremCase::TwoArcs { k });
    }
    for m in divisors(n) {
        out.push(TheoremCase::OneClosed { m });
    }
    for m in divisors(n) {
        for d in realized_cycle_lengths(n / m) {
            out.push(TheoremCase::ArcPlusClosed { m, d });
        }
    }
    out
}

/// Arc-plus-closed cases with a cycle length `d | n/m` that no variant realizes.
pub fn unproven_cases(n: u32) -> Vec<TheoremCase> {
    let mut out = Vec::new();
    for m in divisors(n) {
        let realized = realized_cycle_lengths(n / m);
        for d in divisors(n / m) {
            if !realized.contains(&d) {
                out.push(TheoremCase::ArcPlusClosed { m, d });
            }
        }
    }
    out
}

/// The graph of a case, built directly from its description (no cutting
/// or coset counting involved).
pub fn expected_graph(n: u32, case: TheoremCase) -> Result<StableGraph, PyramidError> {
    if n < 3 {
        return Err(PyramidError::NTooSmall(n));
    }
    let need_divisor = |m: u32, of: u32, what: &str| {
        if m == 0 || !of.is_multiple_of(m) {
            Err(PyramidError::Inconsistent(format!("{what} = {m} does not divide {of}")))
        } else {
            Ok(())
        }
    };
    match case {
        TheoremCase::OneArc { m } => {
            need_divisor(m, n, "m")?;
            let loops = (n / m) as usize;
            Ok(StableGraph::from_weights(&[n - n / m], &vec![(0, 0); loops])?)
        }
        TheoremCase::TwoArcs { k } => {
            if k == 0 {
                return Err(PyramidError::Inconsistent("k must be at least 1".into()));
            }
            let e = gcd(n as i64, k as i64) + gcd(n as i64, k as i64 + 1);
            if e > n + 1 || !(n + 1 - e).is_multiple_of(2) {
                return Err(PyramidError::Inconsistent(format!(
                    "n + 1 - E = {} - {e} is not even",
                    n + 1
                )));
            }
            let w = (n + 1 - e) / 2;
            Ok(StableGraph::from_weights(&[w, w], &vec![(0, 1); e as usize])?)
        }
        TheoremCase::OneClosed { m } => {
            need_divisor(m, n, "m")?;
            let leaves = (n / m) as usize;
            let mut weights = vec![0];
            weights.extend(std::iter::repeat_n(1, leaves));
            let edges: Vec<(usize, usize)> = (1..=leaves)
                .flat_map(|v| std::iter::repeat_n((0, v), m as usize))
                .collect();
            Ok(StableGraph::from_weights(&weights, &edges)?)
        }
        TheoremCase::ArcPlusClosed { m, d } => {
            need_divisor(m, n, "m")?;
            let g = n / m;
            need_divisor(d, g, "d")?;
            let (g, d) = (g as usize, d as usize);
            let mut edges: Vec<(usize, usize)> =
                (1..=g).flat_map(|v| std::iter::repeat_n((0, v), m as usize)).collect();
            for block in 0..g / d {
                for i in 0..d {
                    edges.push((1 + block * d + i, 1 + block * d + (i + 1) % d));
                }
            }
            Ok(StableGraph::from_weights(&vec![0; g + 1], &edges)?)
        }
    }
}

/// A curve or piece image, with the generators the family formulas display.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImageLine {
    /// Curve id, or `piece N`.
    pub of: String,
    pub generators: String,
    pub order: usize,
    /// Whether the displayed generators span the image computed from the spec words.
    pub matches: bool,
}

fn describe(group: &GroupTable, gens: &[usize]) -> String {
    let names: Vec<&str> = gens
        .iter()
        .filter(|&&g| g != group.identity_index())
        .map(|&g| group.names()[g].as_str())
        .collect();
    if names.is_empty() {
        "<e>".to_string()
    } else {
        format!("<{}>", names.join(", "))
    }
}

/// Exponents `(a, b, c)` with arc images `r^a s`, `r^b s` and `s = r^c s`
/// for the arc-plus-closed variants.
fn arc_closed_exponents(p: PyramidMulticurveParams) -> (i64, i64, i64) {
    let k = p.param as i64;
    match p.variant {
        Variant::Top => (-1, -1 - k, -k),
        Variant::MiddleLeft => (1, 2 * k + 1, 1),
        Variant::MiddleRight => (1, 2 * k + 2, 1),
        Variant::BottomLeft => (1, 2 * k + 1, 3),
        Variant::BottomRight => (1, 2 * k + 2, 3),
        _ if k % 2 == 1 => {
            let u = (k + 1) / 2;
            (-1, 1 - 4 * u, 2 - 6 * u)
        }
        _ => {
            let u = k / 2;
            (-1, -1 - 4 * u, -1 - 6 * u)
        }
    }
}

/// Images of the curves and pieces with the generators given by the family
/// formulas, each checked against the subgroup the spec's words generate.
pub fn image_report(fam: &PyramidFamily, p: PyramidMulticurveParams) -> Result<Vec<ImageLine>, PyramidError> {
    let mc = make_multicurve(fam, p)?;
    let action = fam.action();
    let group = action.group();
    let k = p.param as i64;
    let (rot, refl) = (|e: i64| fam.rotation(e), |e: i64| fam.reflection(e));
    let displayed: Vec<(String, Vec<usize>)> = match (p.family, p.variant) {
        (Family::OneArc, Variant::TopRight) => vec![("g".into(), vec![refl(1)])],
        (Family::OneArc, Variant::BottomLeft) => vec![("g".into(), vec![refl(1), rot(2 * (k + 1))])],
        (Family::OneArc, _) => vec![("g".into(), vec![refl(0), rot(2 * k + 1)])],
        (Family::TwoArcs, _) => {
            let t = if k % 2 == 1 { (k + 1) / 2 } else { -k / 2 };
            vec![
                ("piece 1".into(), vec![rot(1)]),
                ("g1".into(), vec![refl(-1), rot(2 * t - 1)]),
                ("g2".into(), vec![refl(1), rot(2 * t)]),
            ]
        }
        (Family::OneClosed, Variant::Left) => {
            vec![
                ("piece 2".into(), vec![refl(1), rot(2 * k)]),
                ("g".into(), vec![refl(2 * k + 1)]),
            ]
        }
        (Family::OneClosed, _) => {
            vec![
                ("piece 2".into(), vec![refl(1), rot(2 * k + 1)]),
                ("g".into(), vec![refl(2 * k + 2)]),
            ]
        }
        (Family::ArcPlusClosed, _) => {
            let (a, b, c) = arc_closed_exponents(p);
            vec![
                ("g1".into(), vec![refl(a), refl(b)]),
                ("piece 1".into(), vec![refl(c), rot(a - b)]),
            ]
        }
    };
    let mut out = Vec::new();
    for (of, gens) in displayed {
        let computed = match of.strip_prefix("piece ") {
            Some(id) => piece_image_subgroup(action, mc.piece(id.parse().expect("numeric id")).expect("piece exists")),
            None => curve_image_subgroup(action, mc.curve(&of).expect("curve exists")),
        };
        let shown = group.closure_of_indices(&gens);
        out.push(ImageLine {
            generators: describe(group, &gens),
            order: computed.order(),
            matches: shown.elements() == computed.elements(),
            of,
        });
    }
    Ok(out)
}

/// For an arc-plus-closed spec: `m` with `Im Phi_1 = D_m`, `R = S s` where
/// `S` is the image of the arc's attaching loop and `s` the image of the
/// annulus cone loop, and `d`, the least `d >= 1` with `R^d` in `Im Phi_1`.
pub fn cycle_data(fam: &PyramidFamily, mc: &MulticurveSpec) -> Option<(u32, String, u32)> {
    let action = fam.action();
    let group = action.group();
    let arc = mc.curves.iter().find(|c| c.is_arc())?;
    let annulus = mc.piece(arc.sides[0].piece)?;
    if annulus.generators.len() != 2 {
        return None;
    }
    let big_s = action.evaluate_index(&arc.sides[1].attach).ok()?;
    let s = action.evaluate_index(&annulus.generators[1]).ok()?;
    let r = group.mul_index(big_s, s);
    let image = piece_image_subgroup(action, annulus);
    let mut power = r;
    let mut d = 1;
    while !image.contains_index(power) {
        power = group.mul_index(power, r);
        d += 1;
    }
    Some(((image.order() / 2) as u32, group.names()[r].clone(), d))
}

/// Builds the stratum graph of one parameter set.
pub fn build(
    fam: &PyramidFamily,
    p: PyramidMulticurveParams,
) -> Result<(MulticurveSpec, LabeledStratumGraph), PyramidError> {
    let mc = make_multicurve(fam, p)?;
    let graph = build_stratum_graph(fam.action(), &mc)?;
    Ok((mc, graph))
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassEntry {
    pub form: CanonicalForm,
    /// Canonically labeled representative.
    pub graph: StableGraph,
    pub cases: BTreeSet<TheoremCase>,
    pub witnesses: Vec<PyramidMulticurveParams>,
}

#[derive(Debug, Clone, Serialize)]
pub struct UnprovenCandidate {
    pub case: TheoremCase,
    pub graph: StableGraph,
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub n: u32,
    /// Distinct graphs, sorted by canonical form.
    pub entries: Vec<ClassEntry>,
    /// Graphs of [`unproven_cases`] not isomorphic to any entry; filled only on request.
    pub unproven: Vec<UnprovenCandidate>,
}

/// Builds every parameter set of [`all_params`] and groups the graphs by
/// canonical form.
pub fn classify(n: u32, include_unproven: bool) -> Result<Classification, PyramidError> {
    let fam = pyramid_action(n)?;
    let built: Vec<(PyramidMulticurveParams, TheoremCase, StableGraph, CanonicalForm)> = all_params(n)
        .into_par_iter()
        .map(|p| {
            let (_, graph) = build(&fam, p)?;
            let g = graph.underlying().clone();
            let form = g.canonical_form()?;
            Ok((p, predicted_case(n, p)?, g, form))
        })
        .collect::<Result<_, PyramidError>>()?;
    let mut classes: BTreeMap<CanonicalForm, ClassEntry> = BTreeMap::new();
    for (p, case, g, form) in built {
        let entry = classes.entry(form.clone()).or_insert_with(|| ClassEntry {
            form,
            graph: g.canonically_labeled(),
            cases: BTreeSet::new(),
            witnesses: Vec::new(),
        });
        entry.cases.insert(case);
        entry.witnesses.push(p);
    }
    let mut unproven = Vec::new();
    if include_unproven {
        for case in unproven_cases(n) {
            let g = expected_graph(n, case)?;
            if !classes.contains_key(&g.canonical_form()?) {
                unproven.push(UnprovenCandidate {
                    case,
                    graph: g.canonically_labeled(),
                });
            }
        }
    }
    Ok(Classification {
        n,
        entries: classes.into_values().collect(),
        unproven,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multicurve::validate_multicurve;
    use crate::oracle::audit_graph;

    #[test]
    fn action_for_small_n() {
        for n in 3..=12 {
            let fam = pyramid_action(n).unwrap();
            assert!(fam.action().validate().is_empty());
            assert_eq!(fam.action().riemann_hurwitz_genus().unwrap(), n as u64);
        }
        assert!(matches!(pyramid_action(2), Err(PyramidError::NTooSmall(2))));
    }

    #[test]
    fn moves_preserve_the_long_relation() {
        let fam = pyramid_action(7).unwrap();
        for p in all_params(7) {
            let (moves, _) = program(p);
            let mut b = Basis::standard();
            let mut shift = 0;
            for m in moves {
                if let Move::Conjugate(k) = m {
                    shift += k;
                }
                b.apply(m);
            }
            let relator: Word = "x1 x2 x3 x4 x5".parse().unwrap();
            assert_eq!(
                b.product(&[0, 1, 2, 3, 4]),
                relator.conjugate_by(&Word::cone(5).pow(shift)),
                "{p}"
            );
            let mut ids = b.ids.clone();
            ids.sort_unstable();
            assert_eq!(ids, vec![1, 2, 3, 4, 5]);
            for (w, &id) in b.words.iter().zip(&b.ids) {
                let img = fam.action().evaluate_index(w).unwrap();
                let cone = fam.action().evaluate_index(&Word::cone(id)).unwrap();
                let conj = (0..14).any(|g| {
                    let grp = fam.action().group();
                    grp.mul_index(grp.mul_index(g, cone), grp.inverse_index(g)) == img
                });
                assert!(conj, "{p}: word {w} is not a loop around P{id}");
            }
        }
    }

    #[test]
    fn example_one_is_top_right() {
        let fam = pyramid_action(5).unwrap();
        let mc = example_one(&fam);
        assert_eq!(mc.pieces[0].cone_points, vec![1, 2, 5]);
        assert_eq!(
            mc.pieces[0].generators,
            vec![Word::cone(1), Word::cone(2), Word::cone(5)]
        );
        let g = build_stratum_graph(fam.action(), &mc).unwrap();
        let under = g.underlying();
        assert_eq!(
            (under.vertex_count(), under.edge_count(), under.total_weight()),
            (1, 5, 0)
        );
    }

    #[test]
    fn example_two_images() {
        for n in 4..=9 {
            let fam = pyramid_action(n).unwrap();
            let mc = example_two(&fam);
            assert_eq!(validate_multicurve(fam.action(), &mc), vec![]);
            let k = curve_image_subgroup(fam.action(), &mc.curves[0]);
            let expected = fam
                .action()
                .group()
                .closure_of_indices(&[fam.reflection(1), fam.rotation(2)]);
            assert_eq!(k.elements(), expected.elements());
            let g = build_stratum_graph(fam.action(), &mc).unwrap();
            let under = g.underlying();
            assert_eq!(under.vertex_count(), 1);
            let (loops, w) = if n % 2 == 1 { (1, n - 1) } else { (2, n - 2) };
            assert_eq!(under.edge_count(), loops);
            assert_eq!(under.vertices()[0].weight, w);
        }
    }

    #[test]
    fn displayed_images_match_spec_words() {
        for n in 3..=16 {
            let fam = pyramid_action(n).unwrap();
            for p in all_params(n) {
                for line in image_report(&fam, p).unwrap() {
                    assert!(line.matches, "n={n} {p}: {} displayed {}", line.of, line.generators);
                }
            }
        }
    }

    #[test]
    fn bottom_left_image_label() {
        let fam = pyramid_action(5).unwrap();
        let lines = image_report(
            &fam,
            PyramidMulticurveParams::new(Family::OneArc, Variant::BottomLeft, 0),
        )
        .unwrap();
        assert_eq!(lines[0].generators, "<r s, r^2>");
        assert_eq!(lines[0].order, 10);
    }

    #[test]
    fn cycle_data_matches_prediction() {
        for n in 3..=24 {
            let fam = pyramid_action(n).unwrap();
            for p in all_params(n).into_iter().filter(|p| p.family == Family::ArcPlusClosed) {
                let mc = make_multicurve(&fam, p).unwrap();
                let (m, r, d) = cycle_data(&fam, &mc).unwrap();
                assert_eq!(
                    predicted_case(n, p).unwrap(),
                    TheoremCase::ArcPlusClosed { m, d },
                    "n={n} {p}"
                );
                let (_, b, c) = arc_closed_exponents(p);
                assert_eq!(r, fam.action().group().names()[fam.rotation(b - c)], "n={n} {p}");
                assert_eq!((n / m) % d, 0);
            }
        }
    }

    #[test]
    fn bottom_variants_have_r_inverse_square() {
        // Up to the rotations of the annulus image, R = (r s)(r^3 s) = r^-2.
        let fam = pyramid_action(12).unwrap();
        let group = fam.action().group();
        for v in [Variant::BottomLeft, Variant::BottomRight] {
            for t in 0..12 {
                let mc = make_multicurve(&fam, PyramidMulticurveParams::new(Family::ArcPlusClosed, v, t)).unwrap();
                let r = group
                    .element_by_name(&cycle_data(&fam, &mc).unwrap().1)
                    .unwrap()
                    .index();
                let image = piece_image_subgroup(fam.action(), &mc.pieces[0]);
                assert!(image.contains_index(group.mul_index(r, fam.rotation(2))), "{v} {t}");
            }
        }
    }

    #[test]
    fn builds_match_expected_graphs() {
        for n in 3..=20 {
            let fam = pyramid_action(n).unwrap();
            for p in all_params(n) {
                let (mc, g) = build(&fam, p).unwrap();
                let expected = expected_graph(n, predicted_case(n, p).unwrap()).unwrap();
                assert!(g.underlying().is_isomorphic(&expected).unwrap(), "n={n} {p}");
                assert!(audit_graph(fam.action(), &mc, &g).passed(), "n={n} {p}");
            }
        }
    }

    #[test]
    fn expected_graph_shapes() {
        let g = expected_graph(6, TheoremCase::TwoArcs { k: 3 }).unwrap();
        assert_eq!(g.edge_count(), 5);
        assert_eq!(g.vertices()[0].weight, 1);
        let g = expected_graph(7, TheoremCase::OneClosed { m: 7 }).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 7));
        assert_eq!((g.degree(0), g.degree(1)), (7, 7));
        for n in 3..=30 {
            for m in divisors(n) {
                for d in divisors(n / m) {
                    let g = expected_graph(n, TheoremCase::ArcPlusClosed { m, d }).unwrap();
                    assert_eq!(g.vertex_count() as u32, n / m + 1);
                    assert_eq!(g.degree(0), n);
                    assert!((1..=(n / m) as usize).all(|v| g.degree(v) == m + 2));
                    assert_eq!(g.genus(), n as i64);
                }
            }
        }
        assert!(expected_graph(6, TheoremCase::OneArc { m: 4 }).is_err());
        assert!(expected_graph(6, TheoremCase::ArcPlusClosed { m: 1, d: 4 }).is_err());
        assert!(expected_graph(6, TheoremCase::TwoArcs { k: 0 }).is_err());
    }

    #[test]
    fn param_errors() {
        let fam = pyramid_action(5).unwrap();
        let bad = [
            PyramidMulticurveParams::new(Family::OneArc, Variant::Left, 0),
            PyramidMulticurveParams::new(Family::OneArc, Variant::TopRight, 1),
            PyramidMulticurveParams::new(Family::TwoArcs, Variant::Wrap, 0),
            PyramidMulticurveParams::new(Family::OneClosed, Variant::Left, 5),
        ];
        for p in bad {
            assert!(make_multicurve(&fam, p).is_err(), "{p}");
        }
        assert!("two-arcs".parse::<Family>().is_ok());
        assert!("middle-left".parse::<Variant>().is_ok());
        assert!("sideways".parse::<Variant>().is_err());
    }

    #[test]
    fn classification_counts() {
        assert_eq!(classify(3, false).unwrap().entries.len(), 9);
        assert_eq!(classify(4, false).unwrap().entries.len(), 14);
    }

    #[test]
    fn prime_one_arc_graphs() {
        for p in [3u32, 5, 7, 11, 13] {
            let c = classify(p, false).unwrap();
            let one_arc = c
                .entries
                .iter()
                .filter(|e| e.cases.iter().any(|c| matches!(c, TheoremCase::OneArc { .. })))
                .count();
            assert_eq!(one_arc, 2);
        }
    }

    #[test]
    fn one_arc_edge_counts_are_the_divisor_quotients() {
        for n in 3..=30 {
            let fam = pyramid_action(n).unwrap();
            let edges: BTreeSet<usize> = all_params(n)
                .into_iter()
                .filter(|p| p.family == Family::OneArc)
                .map(|p| build(&fam, p).unwrap().1.underlying().edge_count())
                .collect();
            let expected: BTreeSet<usize> = divisors(n).into_iter().map(|m| (n / m) as usize).collect();
            assert_eq!(edges, expected);
        }
    }

    #[test]
    fn unproven_candidates() {
        // n = 8, m = 1: cycle lengths 1, 2, 4, 8 are all realized; n = 9, m = 1: 3 is not.
        assert!(unproven_cases(8).is_empty());
        assert_eq!(unproven_cases(9), vec![TheoremCase::ArcPlusClosed { m: 1, d: 3 }]);
        let c = classify(9, true).unwrap();
        assert_eq!(c.unproven.len(), 1);
        assert!(classify(9, false).unwrap().unproven.is_empty());
    }
}
