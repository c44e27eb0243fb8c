//! Finite groups stored as dense multiplication tables.
//!
//! Elements are plain indices into the table, tagged with the id of the
//! table that produced them so that elements of different groups cannot be
//! mixed by accident.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(1);

/// Groups up to this order get an exhaustive associativity check.
pub const FULL_ASSOCIATIVITY_CHECK_MAX_ORDER: usize = 64;
/// Number of random triples checked for larger groups.
pub const ASSOCIATIVITY_SAMPLES: usize = 10_000;
const ASSOCIATIVITY_SEED: u64 = 0x5eed_a550c;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("dihedral group needs n >= 1")]
    ZeroDihedral,
    #[error("group order must be positive")]
    EmptyGroup,
    #[error("table has a row of length {len}, expected {order}")]
    RaggedTable { len: usize, order: usize },
    #[error("table entry {value} at ({row}, {col}) is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("row {0} is not a permutation of the elements")]
    RowNotPermutation(usize),
    #[error("column {0} is not a permutation of the elements")]
    ColumnNotPermutation(usize),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("associativity fails for ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("expected {expected} element names, got {got}")]
    NameCount { expected: usize, got: usize },
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),
    #[error("unknown element name {0:?}")]
    UnknownName(String),
    #[error("element index {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("element belongs to a different group table")]
    ForeignElement,
    #[error("subgroup generated by an empty list")]
    NoGenerators,
}

/// An element of a particular [`GroupTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    group: u64,
    index: usize,
}

impl GroupElement {
    pub fn index(&self) -> usize {
        self.index
    }
}

/// A finite group as an exact multiplication table with named elements.
#[derive(Debug, Clone)]
pub struct GroupTable {
    id: u64,
    order: usize,
    table: Vec<usize>,
    names: Vec<String>,
    by_name: HashMap<String, usize>,
    inverse: Vec<usize>,
    identity: usize,
}

impl PartialEq for GroupTable {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && self.names == other.names
    }
}

impl GroupTable {
    /// Dihedral group of order 2n. Index `i < n` is `r^i`, index `n + i` is `r^i s`.
    pub fn dihedral(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::ZeroDihedral);
        }
        let order = 2 * n;
        let mut rows = vec![vec![0; order]; order];
        for (x, row) in rows.iter_mut().enumerate() {
            let (a, b) = (x % n, x / n);
            for (y, cell) in row.iter_mut().enumerate() {
                let (c, d) = (y % n, y / n);
                // (r^a s^b)(r^c s^d) = r^(a + (-1)^b c) s^(b + d)
                let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
                *cell = rot + n * ((b + d) % 2);
            }
        }
        let names = (0..order)
            .map(|x| {
                let (k, refl) = (x % n, x >= n);
                let rot = match k {
                    0 => String::new(),
                    1 => "r".to_string(),
                    _ => format!("r^{k}"),
                };
                match (rot.is_empty(), refl) {
                    (true, false) => "e".to_string(),
                    (true, true) => "s".to_string(),
                    (false, false) => rot,
                    (false, true) => format!("{rot} s"),
                }
            })
            .collect();
        Self::from_table(rows, names)
    }

    /// Builds a group from a row-major table, checking the group axioms.
    pub fn from_table(rows: Vec<Vec<usize>>, names: Vec<String>) -> Result<Self, GroupError> {
        let order = rows.len();
        if order == 0 {
            return Err(GroupError::EmptyGroup);
        }
        if names.len() != order {
            return Err(GroupError::NameCount {
                expected: order,
                got: names.len(),
            });
        }
        let mut table = Vec::with_capacity(order * order);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::RaggedTable { len: row.len(), order });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(GroupError::EntryOutOfRange {
                        row: r,
                        col: c,
                        value: v,
                    });
                }
            }
            table.extend_from_slice(row);
        }
        let mut seen = vec![usize::MAX; order];
        for r in 0..order {
            for c in 0..order {
                let v = table[r * order + c];
                if seen[v] == r {
                    return Err(GroupError::RowNotPermutation(r));
                }
                seen[v] = r;
            }
        }
        seen.fill(usize::MAX);
        for c in 0..order {
            for r in 0..order {
                let v = table[r * order + c];
                if seen[v] == c {
                    return Err(GroupError::ColumnNotPermutation(c));
                }
                seen[v] = c;
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] == x && table[x * order + e] == x))
            .ok_or(GroupError::NoIdentity)?;
        // Latin rows give a unique right inverse; associativity makes it two-sided.
        let inverse: Vec<usize> = (0..order)
            .map(|x| (0..order).find(|&y| table[x * order + y] == identity).unwrap())
            .collect();
        let mut by_name = HashMap::with_capacity(order);
        for (i, name) in names.iter().enumerate() {
            if by_name.insert(name.clone(), i).is_some() {
                return Err(GroupError::DuplicateName(name.clone()));
            }
        }
        let group = GroupTable {
            id: NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed),
            order,
            table,
            names,
            by_name,
            inverse,
            identity,
        };
        group.check_associativity()?;
        Ok(group)
    }

    fn check_associativity(&self) -> Result<(), GroupError> {
        let assoc = |a: usize, b: usize, c: usize| {
            self.mul_index(self.mul_index(a, b), c) == self.mul_index(a, self.mul_index(b, c))
        };
        let n = self.order;
        if n <= FULL_ASSOCIATIVITY_CHECK_MAX_ORDER {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(GroupError::NotAssociative(a, b, c));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(ASSOCIATIVITY_SEED);
            for _ in 0..ASSOCIATIVITY_SAMPLES {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return Err(GroupError::NotAssociative(a, b, c));
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> GroupElement {
        self.wrap(self.identity)
    }

    pub fn element(&self, index: usize) -> Result<GroupElement, GroupError> {
        if index < self.order {
            Ok(self.wrap(index))
        } else {
            Err(GroupError::IndexOutOfRange {
                index,
                order: self.order,
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(|i| self.wrap(i))
    }

    pub fn element_by_name(&self, name: &str) -> Result<GroupElement, GroupError> {
        let key = name.split_whitespace().collect::<Vec<_>>().join(" ");
        self.by_name
            .get(&key)
            .map(|&i| self.wrap(i))
            .ok_or_else(|| GroupError::UnknownName(name.to_string()))
    }

    pub fn name(&self, a: GroupElement) -> Result<&str, GroupError> {
        self.check(a)?;
        Ok(&self.names[a.index])
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn multiply(&self, a: GroupElement, b: GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.wrap(self.mul_index(a.index, b.index)))
    }

    pub fn inverse(&self, a: GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        Ok(self.wrap(self.inverse[a.index]))
    }

    /// Smallest `t >= 1` with `a^t = e`.
    pub fn element_order(&self, a: GroupElement) -> Result<usize, GroupError> {
        self.check(a)?;
        Ok(self.order_index(a.index))
    }

    /// Raw product of element indices. Panics on out-of-range indices.
    pub fn mul_index(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inverse_index(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn order_index(&self, a: usize) -> usize {
        let mut x = a;
        let mut t = 1;
        while x != self.identity {
            x = self.mul_index(x, a);
            t += 1;
        }
        t
    }

    /// Smallest subgroup containing `gens`.
    pub fn closure(&self, gens: &[GroupElement]) -> Result<Subgroup, GroupError> {
        if gens.is_empty() {
            return Err(GroupError::NoGenerators);
        }
        for &g in gens {
            self.check(g)?;
        }
        let idx: Vec<usize> = gens.iter().map(|g| g.index).collect();
        Ok(self.closure_of_indices(&idx))
    }

    /// Closure of raw indices; an empty list gives the trivial subgroup.
    pub fn closure_of_indices(&self, gens: &[usize]) -> Subgroup {
        let mut member = vec![false; self.order];
        member[self.identity] = true;
        let mut queue = vec![self.identity];
        while let Some(x) = queue.pop() {
            for &s in gens {
                let y = self.mul_index(x, s);
                if !member[y] {
                    member[y] = true;
                    queue.push(y);
                }
            }
        }
        let elements: Vec<usize> = (0..self.order).filter(|&i| member[i]).collect();
        assert_eq!(self.order % elements.len(), 0, "Lagrange violated by closure");
        Subgroup {
            group: self.id,
            elements,
        }
    }

    /// Partition of the group into left cosets `gH`.
    pub fn left_cosets(&self, h: &Subgroup) -> Result<CosetPartition, GroupError> {
        if h.group != self.id {
            return Err(GroupError::ForeignElement);
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut representatives = Vec::new();
        for x in 0..self.order {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let c = representatives.len();
            representatives.push(x);
            for &y in &h.elements {
                coset_of[self.mul_index(x, y)] = c;
            }
        }
        Ok(CosetPartition {
            group: self.id,
            coset_of,
            representatives,
        })
    }

    pub fn subgroup_contains(&self, h: &Subgroup, a: GroupElement) -> Result<bool, GroupError> {
        self.check(a)?;
        if h.group != self.id {
            return Err(GroupError::ForeignElement);
        }
        Ok(h.contains_index(a.index))
    }

    fn wrap(&self, index: usize) -> GroupElement {
        GroupElement { group: self.id, index }
    }

    fn check(&self, a: GroupElement) -> Result<(), GroupError> {
        if a.group != self.id {
            Err(GroupError::ForeignElement)
        } else {
            Ok(())
        }
    }
}

/// A subgroup as a sorted list of element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    group: u64,
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains_index(&self, a: usize) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.group == other.group && self.elements.iter().all(|&x| other.contains_index(x))
    }
}

/// Left cosets of a subgroup; each coset's representative is its smallest index.
#[derive(Debug, Clone)]
pub struct CosetPartition {
    group: u64,
    coset_of: Vec<usize>,
    representatives: Vec<usize>,
}

impl CosetPartition {
    pub fn count(&self) -> usize {
        self.representatives.len()
    }

    /// Index of the coset containing `a`, numbered by increasing representative.
    pub fn coset_index(&self, a: GroupElement) -> Result<usize, GroupError> {
        if a.group != self.group {
            return Err(GroupError::ForeignElement);
        }
        Ok(self.coset_of[a.index])
    }

    pub fn coset_of_index(&self, a: usize) -> usize {
        self.coset_of[a]
    }

    pub fn representative_index(&self, coset: usize) -> usize {
        self.representatives[coset]
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rot(n: usize, k: usize) -> usize {
        k % n
    }
    fn refl(n: usize, k: usize) -> usize {
        n + k % n
    }

    #[test]
    fn dihedral_orders_and_names() {
        let d3 = GroupTable::dihedral(3).unwrap();
        assert_eq!(d3.order(), 6);
        assert_eq!(d3.names(), &["e", "r", "r^2", "s", "r s", "r^2 s"]);
        let d1 = GroupTable::dihedral(1).unwrap();
        assert_eq!(d1.order(), 2);
        assert_eq!(d1.names(), &["e", "s"]);
        assert_eq!(d1.element_order(d1.element(1).unwrap()).unwrap(), 2);
        assert_eq!(GroupTable::dihedral(0).unwrap_err(), GroupError::ZeroDihedral);
    }

    #[test]
    fn dihedral_relations() {
        let g = GroupTable::dihedral(4).unwrap();
        let s = g.element_by_name("s").unwrap();
        let r = g.element_by_name("r").unwrap();
        let sr = g.multiply(s, r).unwrap();
        assert_eq!(g.multiply(sr, sr).unwrap(), g.identity());
        // s r = r^{-1} s
        assert_eq!(g.name(sr).unwrap(), "r^3 s");
        assert_eq!(g.element_by_name("r  s").unwrap().index(), refl(4, 1));
    }

    #[test]
    fn element_orders() {
        let g = GroupTable::dihedral(6).unwrap();
        assert_eq!(g.element_order(g.identity()).unwrap(), 1);
        assert_eq!(g.element_order(g.element(rot(6, 2)).unwrap()).unwrap(), 3);
        let g5 = GroupTable::dihedral(5).unwrap();
        let rs = g5.element(refl(5, 1)).unwrap();
        let mut x = rs;
        let mut t = 1;
        while x != g5.identity() {
            x = g5.multiply(x, rs).unwrap();
            t += 1;
        }
        assert_eq!(t, 2);
        assert_eq!(g5.element_order(rs).unwrap(), 2);
    }

    #[test]
    fn closures() {
        for n in 3..9 {
            let g = GroupTable::dihedral(n).unwrap();
            let rs = g.element(refl(n, 1)).unwrap();
            let h = g.closure(&[rs]).unwrap();
            assert_eq!(h.elements(), &[0, refl(n, 1)]);
            let all = g
                .closure(&[g.element(refl(n, 0)).unwrap(), g.element(1).unwrap()])
                .unwrap();
            assert_eq!(all.order(), 2 * n);
        }
        let g = GroupTable::dihedral(4).unwrap();
        let h = g
            .closure(&[g.element(refl(4, 1)).unwrap(), g.element(2).unwrap()])
            .unwrap();
        assert_eq!(h.elements(), &[0, 2, 5, 7]);
        assert_eq!(g.closure(&[]).unwrap_err(), GroupError::NoGenerators);
    }

    #[test]
    fn coset_examples() {
        let g = GroupTable::dihedral(5).unwrap();
        let whole = g.closure(&[g.element(1).unwrap(), g.element(5).unwrap()]).unwrap();
        assert_eq!(g.left_cosets(&whole).unwrap().count(), 1);
        let rho = g.closure(&[g.element(1).unwrap()]).unwrap();
        let cosets = g.left_cosets(&rho).unwrap();
        assert_eq!(cosets.representatives(), &[0, 5]);
        let g4 = GroupTable::dihedral(4).unwrap();
        let h = g4.closure(&[g4.element(refl(4, 1)).unwrap()]).unwrap();
        assert_eq!(g4.left_cosets(&h).unwrap().count(), 4);
    }

    #[test]
    fn foreign_elements_rejected() {
        let a = GroupTable::dihedral(3).unwrap();
        let b = GroupTable::dihedral(3).unwrap();
        let x = b.element(1).unwrap();
        assert_eq!(a.multiply(a.identity(), x).unwrap_err(), GroupError::ForeignElement);
        assert_eq!(a.inverse(x).unwrap_err(), GroupError::ForeignElement);
    }

    #[test]
    fn bad_tables_rejected() {
        let names = |k: usize| (0..k).map(|i| format!("g{i}")).collect::<Vec<_>>();
        let not_latin = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(
            GroupTable::from_table(not_latin, names(2)),
            Err(GroupError::RowNotPermutation(1))
        ));
        // A loop of order 5 with an involution cannot be a group.
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            GroupTable::from_table(loop5, names(5)),
            Err(GroupError::NotAssociative(..))
        ));
        let z2 = vec![vec![0, 1], vec![1, 0]];
        assert!(matches!(
            GroupTable::from_table(z2, vec!["a".into(), "a".into()]),
            Err(GroupError::DuplicateName(_))
        ));
    }

    #[test]
    fn large_group_is_spot_checked() {
        let g = GroupTable::dihedral(60).unwrap();
        assert_eq!(g.order(), 120);
    }

    proptest! {
        #[test]
        fn axioms_hold(n in 1usize..20) {
            let g = GroupTable::dihedral(n).unwrap();
            for x in 0..g.order() {
                prop_assert_eq!(g.mul_index(g.identity_index(), x), x);
                prop_assert_eq!(g.mul_index(x, g.identity_index()), x);
                prop_assert_eq!(g.mul_index(g.inverse_index(x), x), g.identity_index());
            }
        }

        #[test]
        fn lagrange_and_idempotent_closure(n in 1usize..30, gens in proptest::collection::vec(0usize..60, 0..4)) {
            let g = GroupTable::dihedral(n).unwrap();
            let gens: Vec<usize> = gens.into_iter().map(|x| x % g.order()).collect();
            let h = g.closure_of_indices(&gens);
            let cosets = g.left_cosets(&h).unwrap();
            prop_assert_eq!(h.order() * cosets.count(), g.order());
            let again = g.closure_of_indices(h.elements());
            prop_assert_eq!(again, h);
        }

        #[test]
        fn reflection_products_are_rotations(n in 1usize..25) {
            let g = GroupTable::dihedral(n).unwrap();
            for a in n..2 * n {
                for b in n..2 * n {
                    prop_assert!(g.mul_index(a, b) < n);
                }
            }
        }
    }
}
