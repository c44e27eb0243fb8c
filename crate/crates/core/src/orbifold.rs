//! Orbifold signatures, words in the orbifold fundamental group and
//! surface-kernel epimorphisms onto a finite group.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{GroupElement, GroupError, GroupTable, Subgroup};

/// Exact rational numbers.
pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Signature `(genus, boundary; m_1, ..., m_k)` of a compact 2-orbifold.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbifoldSignature {
    pub genus: u32,
    #[serde(default)]
    pub boundary: u32,
    pub cone_orders: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("cone order {0} is below 2")]
    ConeOrderTooSmall(u32),
    #[error("signature has {0} boundary components, expected a closed orbifold")]
    NotClosed(u32),
    #[error("no such stratum: dimension {0} is negative")]
    NoSuchStratum(i64),
    #[error("cannot parse signature {0:?}")]
    Parse(String),
}

impl OrbifoldSignature {
    pub fn new(genus: u32, boundary: u32, cone_orders: Vec<u32>) -> Result<Self, SignatureError> {
        let sig = OrbifoldSignature {
            genus,
            boundary,
            cone_orders,
        };
        sig.check()?;
        Ok(sig)
    }

    pub fn closed(genus: u32, cone_orders: Vec<u32>) -> Result<Self, SignatureError> {
        Self::new(genus, 0, cone_orders)
    }

    pub fn check(&self) -> Result<(), SignatureError> {
        match self.cone_orders.iter().find(|&&m| m < 2) {
            Some(&m) => Err(SignatureError::ConeOrderTooSmall(m)),
            None => Ok(()),
        }
    }

    pub fn cone_count(&self) -> usize {
        self.cone_orders.len()
    }

    /// `2 - 2 genus - boundary - sum(1 - 1/m_i)`.
    pub fn euler_characteristic(&self) -> Rational {
        let mut chi = Rational::from_integer(BigInt::from(2 - 2 * self.genus as i64 - self.boundary as i64));
        for &m in &self.cone_orders {
            chi -= Rational::one() - rational(1, m as i64);
        }
        chi
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.euler_characteristic().is_negative()
    }

    /// Number of generators in the standard presentation: cone generators then handle pairs.
    pub fn generator_count(&self) -> usize {
        self.cone_orders.len() + 2 * self.genus as usize
    }
}

impl fmt::Display for OrbifoldSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let orders: Vec<String> = self.cone_orders.iter().map(|m| m.to_string()).collect();
        if self.boundary == 0 {
            write!(f, "({};{})", self.genus, orders.join(","))
        } else {
            write!(f, "({},{};{})", self.genus, self.boundary, orders.join(","))
        }
    }
}

/// Parses `(g;m1,...,mk)` or `(g,c;m1,...)`, parentheses optional.
impl FromStr for OrbifoldSignature {
    type Err = SignatureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || SignatureError::Parse(s.to_string());
        let t = s.trim();
        let body = match (t.strip_prefix('('), t.ends_with(')')) {
            (Some(inner), true) => &inner[..inner.len() - 1],
            (None, false) => t,
            _ => return Err(err()),
        };
        let (head, tail) = body.split_once(';').unwrap_or((body, ""));
        let head: Vec<&str> = head.split(',').map(str::trim).collect();
        let (genus, boundary) = match head.as_slice() {
            [g] => (g.parse().map_err(|_| err())?, 0),
            [g, c] => (g.parse().map_err(|_| err())?, c.parse().map_err(|_| err())?),
            _ => return Err(err()),
        };
        let cone_orders = tail
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty() && *t != "-")
            .map(|t| t.parse().map_err(|_| err()))
            .collect::<Result<Vec<u32>, _>>()?;
        Self::new(genus, boundary, cone_orders)
    }
}

/// `3 genus - 3 + r - k` for a closed signature with `r` cone points and `k` pinched curves.
pub fn stratum_dimension(sig: &OrbifoldSignature, pinched: u32) -> Result<u32, SignatureError> {
    if sig.boundary != 0 {
        return Err(SignatureError::NotClosed(sig.boundary));
    }
    let dim = 3 * sig.genus as i64 - 3 + sig.cone_count() as i64 - pinched as i64;
    u32::try_from(dim).map_err(|_| SignatureError::NoSuchStratum(dim))
}

/// A generator of the orbifold fundamental group. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Cone(usize),
    HandleA(usize),
    HandleB(usize),
}

impl Generator {
    /// Position of this generator's image in [`SurfaceKernelAction::images`].
    pub fn slot(&self, sig: &OrbifoldSignature) -> Option<usize> {
        let k = sig.cone_count();
        let tau = sig.genus as usize;
        match *self {
            Generator::Cone(i) if (1..=k).contains(&i) => Some(i - 1),
            Generator::HandleA(i) if (1..=tau).contains(&i) => Some(k + 2 * (i - 1)),
            Generator::HandleB(i) if (1..=tau).contains(&i) => Some(k + 2 * (i - 1) + 1),
            _ => None,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Cone(i) => write!(f, "x{i}"),
            Generator::HandleA(i) => write!(f, "a{i}"),
            Generator::HandleB(i) => write!(f, "b{i}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

impl Letter {
    fn inv(self) -> Self {
        Letter {
            inverse: !self.inverse,
            ..self
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad word token {0:?}")]
pub struct WordParseError(pub String);

/// A word in the generators, kept freely reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn generator(g: Generator) -> Self {
        Word {
            letters: vec![Letter {
                generator: g,
                inverse: false,
            }],
        }
    }

    pub fn cone(i: usize) -> Self {
        Self::generator(Generator::Cone(i))
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = Word::empty();
        for l in letters {
            w.push(l);
        }
        w
    }

    fn push(&mut self, l: Letter) {
        if self.letters.last() == Some(&l.inv()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// `c w c^-1`.
    pub fn conjugate_by(&self, c: &Word) -> Word {
        c.mul(self).mul(&c.inverse())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Word::empty(), |acc, _| acc.mul(&base))
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.letters.iter().map(|l| l.generator)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", l.generator)?;
            if l.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WordParseError;

    /// Whitespace-separated tokens such as `x3`, `x3^-1`, `a1`, `b2^-1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut w = Word::empty();
        for tok in s.split_whitespace() {
            let err = || WordParseError(tok.to_string());
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b, e.parse::<i64>().map_err(|_| err())?),
                None => (tok, 1),
            };
            let mut chars = base.chars();
            let kind = chars.next().ok_or_else(err)?;
            let idx: usize = chars.as_str().parse().map_err(|_| err())?;
            if idx == 0 || !chars.as_str().bytes().all(|b| b.is_ascii_digit()) {
                return Err(err());
            }
            let g = match kind {
                'x' => Generator::Cone(idx),
                'a' => Generator::HandleA(idx),
                'b' => Generator::HandleB(idx),
                _ => return Err(err()),
            };
            w = w.mul(&Word::generator(g).pow(exp));
        }
        Ok(w)
    }
}

impl TryFrom<String> for Word {
    type Error = WordParseError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error("expected {expected} generator images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("generator {0} does not exist in this presentation")]
    UnknownGenerator(Generator),
    #[error("Riemann-Hurwitz genus {0} is not a non-negative integer")]
    NonIntegralGenus(Rational),
}

/// A single failed condition of a surface-kernel epimorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionViolation {
    OrderMismatch {
        generator: Generator,
        image: String,
        expected: u32,
        actual: usize,
    },
    LongRelation {
        product: String,
    },
    NotSurjective {
        generated: usize,
        order: usize,
    },
}

impl fmt::Display for ActionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionViolation::OrderMismatch {
                generator,
                image,
                expected,
                actual,
            } => write!(
                f,
                "generator {generator}: image {image} has order {actual}, expected {expected}"
            ),
            ActionViolation::LongRelation { product } => {
                write!(f, "long relation: product of images is {product}, expected identity")
            }
            ActionViolation::NotSurjective { generated, order } => {
                write!(
                    f,
                    "images generate a subgroup of order {generated}, group has order {order}"
                )
            }
        }
    }
}

/// Homomorphism from the orbifold fundamental group onto a finite group,
/// given by the images of the standard generators.
#[derive(Debug, Clone)]
pub struct SurfaceKernelAction {
    group: GroupTable,
    signature: OrbifoldSignature,
    images: Vec<GroupElement>,
}

impl SurfaceKernelAction {
    /// Images are listed as `x1..xk` followed by `a1, b1, a2, b2, ...`.
    pub fn new(
        group: GroupTable,
        signature: OrbifoldSignature,
        images: Vec<GroupElement>,
    ) -> Result<Self, ActionError> {
        signature.check()?;
        if signature.boundary != 0 {
            return Err(SignatureError::NotClosed(signature.boundary).into());
        }
        let expected = signature.generator_count();
        if images.len() != expected {
            return Err(ActionError::ImageCount {
                expected,
                got: images.len(),
            });
        }
        for &x in &images {
            group.name(x)?;
        }
        Ok(SurfaceKernelAction {
            group,
            signature,
            images,
        })
    }

    pub fn from_names(group: GroupTable, signature: OrbifoldSignature, names: &[&str]) -> Result<Self, ActionError> {
        let images = names
            .iter()
            .map(|n| group.element_by_name(n))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(group, signature, images)
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn signature(&self) -> &OrbifoldSignature {
        &self.signature
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn image(&self, g: Generator) -> Result<GroupElement, ActionError> {
        g.slot(&self.signature)
            .map(|i| self.images[i])
            .ok_or(ActionError::UnknownGenerator(g))
    }

    /// Checks exact cone orders, the long relation and surjectivity.
    pub fn validate(&self) -> Vec<ActionViolation> {
        let g = &self.group;
        let mut out = Vec::new();
        for (i, &m) in self.signature.cone_orders.iter().enumerate() {
            let x = self.images[i];
            let actual = g.order_index(x.index());
            if actual != m as usize {
                out.push(ActionViolation::OrderMismatch {
                    generator: Generator::Cone(i + 1),
                    image: g.names()[x.index()].clone(),
                    expected: m,
                    actual,
                });
            }
        }
        let k = self.signature.cone_count();
        let mut prod = g.identity_index();
        for x in &self.images[..k] {
            prod = g.mul_index(prod, x.index());
        }
        for pair in self.images[k..].chunks(2) {
            let (a, b) = (pair[0].index(), pair[1].index());
            let comm = g.mul_index(g.mul_index(a, b), g.mul_index(g.inverse_index(a), g.inverse_index(b)));
            prod = g.mul_index(prod, comm);
        }
        if prod != g.identity_index() {
            out.push(ActionViolation::LongRelation {
                product: g.names()[prod].clone(),
            });
        }
        let generated = self.generated_subgroup().order();
        if generated != g.order() {
            out.push(ActionViolation::NotSurjective {
                generated,
                order: g.order(),
            });
        }
        out
    }

    fn generated_subgroup(&self) -> Subgroup {
        let idx: Vec<usize> = self.images.iter().map(|x| x.index()).collect();
        self.group.closure_of_indices(&idx)
    }

    /// Left-to-right product of generator images.
    pub fn evaluate(&self, w: &Word) -> Result<GroupElement, ActionError> {
        self.evaluate_index(w).map(|i| self.group.element(i).unwrap())
    }

    pub(crate) fn evaluate_index(&self, w: &Word) -> Result<usize, ActionError> {
        let g = &self.group;
        let mut acc = g.identity_index();
        for l in w.letters() {
            let slot = l
                .generator
                .slot(&self.signature)
                .ok_or(ActionError::UnknownGenerator(l.generator))?;
            let x = self.images[slot].index();
            acc = g.mul_index(acc, if l.inverse { g.inverse_index(x) } else { x });
        }
        Ok(acc)
    }

    /// Genus of the covering surface, `1 - |G| chi / 2`.
    pub fn riemann_hurwitz_genus(&self) -> Result<u64, ActionError> {
        let chi = self.signature.euler_characteristic();
        let genus = Rational::one() - chi * Rational::from_integer(BigInt::from(self.group.order())) / rational(2, 1);
        if genus.is_integer() && !genus.is_negative() {
            Ok(genus.to_integer().to_u64().expect("genus fits in u64"))
        } else {
            Err(ActionError::NonIntegralGenus(genus))
        }
    }
}

/// `|G| / |H|`, asserting divisibility.
pub(crate) fn index_of(group_order: usize, sub_order: usize) -> usize {
    let (q, r) = group_order.div_rem(&sub_order);
    assert!(r.is_zero(), "subgroup order {sub_order} does not divide {group_order}");
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pyramidal(n: usize) -> SurfaceKernelAction {
        let sig = OrbifoldSignature::closed(0, vec![2, 2, 2, 2, n as u32]).unwrap();
        SurfaceKernelAction::from_names(GroupTable::dihedral(n).unwrap(), sig, &["s", "r s", "r s", "r s", "r"])
            .unwrap()
    }

    #[test]
    fn euler_characteristics() {
        for n in 2..20i64 {
            let piece = OrbifoldSignature::new(0, 1, vec![2, 2, n as u32]).unwrap();
            assert_eq!(piece.euler_characteristic(), rational(-1, 1) + rational(1, n));
            let closed = OrbifoldSignature::closed(0, vec![2, 2, 2, 2, n as u32]).unwrap();
            assert_eq!(closed.euler_characteristic(), piece.euler_characteristic());
        }
        let torus = OrbifoldSignature::closed(1, vec![]).unwrap();
        assert_eq!(torus.euler_characteristic(), rational(0, 1));
        assert!(!torus.is_hyperbolic());
        assert!(!OrbifoldSignature::closed(0, vec![2, 2, 2]).unwrap().is_hyperbolic());
        assert!(OrbifoldSignature::closed(0, vec![2, 2, 2, 2, 3])
            .unwrap()
            .is_hyperbolic());
        assert_eq!(
            OrbifoldSignature::closed(0, vec![2, 1]).unwrap_err(),
            SignatureError::ConeOrderTooSmall(1)
        );
    }

    #[test]
    fn signature_parsing() {
        let s: OrbifoldSignature = "(0;2,2,2,2,5)".parse().unwrap();
        assert_eq!(s.cone_orders, vec![2, 2, 2, 2, 5]);
        let t: OrbifoldSignature = "1,2;3".parse().unwrap();
        assert_eq!((t.genus, t.boundary, t.cone_orders.clone()), (1, 2, vec![3]));
        let u: OrbifoldSignature = "(2;)".parse().unwrap();
        assert_eq!(u.cone_count(), 0);
        assert!("(0;2,x)".parse::<OrbifoldSignature>().is_err());
        assert!("(0;2,2".parse::<OrbifoldSignature>().is_err());
        assert!("0;2,2)".parse::<OrbifoldSignature>().is_err());
        assert_eq!("0;3,3,3".parse::<OrbifoldSignature>().unwrap().cone_count(), 3);
        assert_eq!(s.to_string(), "(0;2,2,2,2,5)");
    }

    #[test]
    fn dimensions() {
        let s: OrbifoldSignature = "(0;2,2,2,2,5)".parse().unwrap();
        assert_eq!(stratum_dimension(&s, 0), Ok(2));
        assert_eq!(stratum_dimension(&s, 1), Ok(1));
        assert_eq!(stratum_dimension(&s, 2), Ok(0));
        assert_eq!(stratum_dimension(&s, 6), Err(SignatureError::NoSuchStratum(-4)));
    }

    #[test]
    fn word_syntax() {
        let w: Word = "x1 x4 x1^-1".parse().unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.to_string(), "x1 x4 x1^-1");
        assert_eq!("x2 x2^-1".parse::<Word>().unwrap(), Word::empty());
        assert_eq!("x3^2".parse::<Word>().unwrap().to_string(), "x3 x3");
        assert_eq!("a1 b2^-1".parse::<Word>().unwrap().to_string(), "a1 b2^-1");
        assert_eq!("".parse::<Word>().unwrap(), Word::empty());
        for bad in ["y1", "x", "x0", "x1^", "x1^a", "x-1"] {
            assert!(bad.parse::<Word>().is_err(), "{bad}");
        }
    }

    #[test]
    fn pyramidal_action_is_valid() {
        for n in 3..=100 {
            let a = pyramidal(n);
            assert!(a.validate().is_empty(), "n = {n}");
            assert_eq!(a.riemann_hurwitz_genus().unwrap(), n as u64);
        }
    }

    #[test]
    fn order_violation_is_named() {
        let n = 5;
        let sig = OrbifoldSignature::closed(0, vec![2, 2, 2, 2, 5]).unwrap();
        let a =
            SurfaceKernelAction::from_names(GroupTable::dihedral(n).unwrap(), sig, &["s", "r s", "r s", "r s", "s"])
                .unwrap();
        let v = a.validate();
        assert!(v.contains(&ActionViolation::OrderMismatch {
            generator: Generator::Cone(5),
            image: "s".into(),
            expected: 5,
            actual: 2
        }));
    }

    #[test]
    fn single_perturbations_are_rejected() {
        for n in 3..=12usize {
            let base = pyramidal(n);
            for slot in 0..5 {
                for x in 0..2 * n {
                    if x == base.images()[slot].index() {
                        continue;
                    }
                    let mut images = base.images().to_vec();
                    images[slot] = base.group().element(x).unwrap();
                    let a = SurfaceKernelAction::new(base.group().clone(), base.signature().clone(), images).unwrap();
                    assert!(!a.validate().is_empty(), "n={n} slot={slot} x={x}");
                }
            }
        }
    }

    #[test]
    fn word_evaluation() {
        let a = pyramidal(4);
        let g = a.group();
        assert_eq!(a.evaluate(&Word::empty()).unwrap(), g.identity());
        assert_eq!(g.name(a.evaluate(&Word::cone(5)).unwrap()).unwrap(), "r");
        // s (r s) s = s r, which is r^3 s in normal form
        let w: Word = "x1 x4 x1^-1".parse().unwrap();
        let s = g.element_by_name("s").unwrap();
        let r = g.element_by_name("r").unwrap();
        assert_eq!(a.evaluate(&w).unwrap(), g.multiply(s, r).unwrap());
        assert!(a.evaluate(&"x6".parse().unwrap()).is_err());
        assert!(a.evaluate(&"a1".parse().unwrap()).is_err());
    }

    #[test]
    fn trivial_group_genus() {
        let trivial = GroupTable::from_table(vec![vec![0]], vec!["e".into()]).unwrap();
        for tau in 0..4u32 {
            let sig = OrbifoldSignature::closed(tau, vec![]).unwrap();
            let images = vec![trivial.identity(); 2 * tau as usize];
            let a = SurfaceKernelAction::new(trivial.clone(), sig, images).unwrap();
            assert!(a.validate().is_empty());
            assert_eq!(a.riemann_hurwitz_genus().unwrap(), tau as u64);
        }
    }

    #[test]
    fn handle_generators_enter_the_relation() {
        // Z2 x Z2 on a torus with one order-2 cone point would need x1 = [a,b]^-1 = e: rejected.
        let v4 = GroupTable::from_table(
            vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]],
            vec!["e".into(), "a".into(), "b".into(), "c".into()],
        )
        .unwrap();
        let sig = OrbifoldSignature::closed(1, vec![2]).unwrap();
        let a = SurfaceKernelAction::from_names(v4.clone(), sig.clone(), &["a", "a", "b"]).unwrap();
        assert!(matches!(
            a.validate().as_slice(),
            [ActionViolation::LongRelation { .. }]
        ));
        assert_eq!(
            a.image(Generator::HandleB(1)).unwrap(),
            v4.element_by_name("b").unwrap()
        );
    }

    fn arb_word(k: usize) -> impl Strategy<Value = Word> {
        proptest::collection::vec((1..=k, any::<bool>()), 0..12).prop_map(|v| {
            Word::from_letters(v.into_iter().map(|(i, inverse)| Letter {
                generator: Generator::Cone(i),
                inverse,
            }))
        })
    }

    proptest! {
        #[test]
        fn evaluation_is_a_homomorphism(n in 3usize..15, u in arb_word(5), v in arb_word(5)) {
            let a = pyramidal(n);
            let g = a.group();
            let eu = a.evaluate(&u).unwrap();
            let ev = a.evaluate(&v).unwrap();
            prop_assert_eq!(a.evaluate(&u.mul(&v)).unwrap(), g.multiply(eu, ev).unwrap());
            prop_assert_eq!(a.evaluate(&u.inverse()).unwrap(), g.inverse(eu).unwrap());
        }

        #[test]
        fn word_text_round_trip(w in arb_word(9)) {
            prop_assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
        }
    }
}
