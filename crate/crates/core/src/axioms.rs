//! Checks for the defining properties of an involutive two-valued group.
//!
//! Every check scans its tuples in lexicographic order and reports the first
//! violation, so witnesses are deterministic.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::multiset::Multiset;
use crate::table::{Element, Pair, Table};

/// Outcome of a universally quantified check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }

    pub fn from_first(first: Option<W>) -> Self {
        match first {
            None => Verdict::Holds,
            Some(w) => Verdict::Fails(w),
        }
    }
}

impl<W: Serialize> Serialize for Verdict<W> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Verdict", 2)?;
        s.serialize_field("holds", &self.holds())?;
        s.serialize_field("witness", &self.witness())?;
        s.end()
    }
}

/// A triple with `(x*y)*z != x*(y*z)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssociativityWitness {
    pub x: Element,
    pub y: Element,
    pub z: Element,
    pub lhs: Multiset,
    pub rhs: Multiset,
}

impl AssociativityWitness {
    /// Recomputes both sides from `t` and confirms they differ.
    pub fn reverify(&self, t: &Table) -> bool {
        let (lhs, rhs) = triple_sides(t, self.x, self.y, self.z);
        lhs == self.lhs && rhs == self.rhs && lhs != rhs
    }
}

/// An ordered pair `(x, y)` witnessing a failed binary property.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairWitness {
    pub x: Element,
    pub y: Element,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub associative: Verdict<AssociativityWitness>,
    pub strong_identity: Verdict<Element>,
    pub involutive: Verdict<PairWitness>,
    pub commutative: Verdict<PairWitness>,
    /// Associativity, strong identity and involutivity together.
    pub is_involutive_2vg: bool,
}

impl AxiomReport {
    /// Re-evaluates every witness in the report against `t`.
    pub fn witnesses_reverify(&self, t: &Table) -> bool {
        let assoc = self.associative.witness().is_none_or(|w| w.reverify(t));
        let ident = self
            .strong_identity
            .witness()
            .is_none_or(|&x| violates_strong_identity(t, x));
        let invol = self
            .involutive
            .witness()
            .is_none_or(|w| violates_involutivity(t, w.x, w.y));
        let comm = self
            .commutative
            .witness()
            .is_none_or(|w| t.cell(w.x, w.y) != t.cell(w.y, w.x));
        assoc && ident && invol && comm
    }
}

/// `((x*y)*z, x*(y*z))` as 4-element multisets.
pub fn triple_sides(t: &Table, x: Element, y: Element, z: Element) -> (Multiset, Multiset) {
    let mut lhs = Multiset::new();
    for a in t.cell(x, y).elements() {
        let p = t.cell(a, z);
        lhs.insert(p.lo());
        lhs.insert(p.hi());
    }
    let mut rhs = Multiset::new();
    for b in t.cell(y, z).elements() {
        let p = t.cell(x, b);
        rhs.insert(p.lo());
        rhs.insert(p.hi());
    }
    (lhs, rhs)
}

fn sides_equal(t: &Table, x: Element, y: Element, z: Element) -> bool {
    let mut lhs = [Element::IDENTITY; 4];
    let mut rhs = [Element::IDENTITY; 4];
    for (i, a) in t.cell(x, y).elements().into_iter().enumerate() {
        let p = t.cell(a, z);
        lhs[2 * i] = p.lo();
        lhs[2 * i + 1] = p.hi();
    }
    for (i, b) in t.cell(y, z).elements().into_iter().enumerate() {
        let p = t.cell(x, b);
        rhs[2 * i] = p.lo();
        rhs[2 * i + 1] = p.hi();
    }
    lhs.sort_unstable();
    rhs.sort_unstable();
    lhs == rhs
}

pub fn check_associativity(t: &Table) -> Verdict<AssociativityWitness> {
    for x in t.elements() {
        for y in t.elements() {
            for z in t.elements() {
                if !sides_equal(t, x, y, z) {
                    let (lhs, rhs) = triple_sides(t, x, y, z);
                    return Verdict::Fails(AssociativityWitness { x, y, z, lhs, rhs });
                }
            }
        }
    }
    Verdict::Holds
}

fn violates_strong_identity(t: &Table, x: Element) -> bool {
    let want = Pair::doubled(x);
    t.cell(x, Element::IDENTITY) != want || t.cell(Element::IDENTITY, x) != want
}

pub fn check_strong_identity(t: &Table) -> Verdict<Element> {
    Verdict::from_first(t.elements().find(|&x| violates_strong_identity(t, x)))
}

fn violates_involutivity(t: &Table, x: Element, y: Element) -> bool {
    t.cell(x, y).contains(Element::IDENTITY) != (x == y)
}

pub fn check_involutivity(t: &Table) -> Verdict<PairWitness> {
    Verdict::from_first(first_pair(t, |x, y| violates_involutivity(t, x, y)))
}

pub fn check_commutativity(t: &Table) -> Verdict<PairWitness> {
    Verdict::from_first(first_pair(t, |x, y| t.cell(x, y) != t.cell(y, x)))
}

fn first_pair(t: &Table, mut bad: impl FnMut(Element, Element) -> bool) -> Option<PairWitness> {
    t.elements()
        .flat_map(|x| t.elements().map(move |y| (x, y)))
        .find(|&(x, y)| bad(x, y))
        .map(|(x, y)| PairWitness { x, y })
}

pub fn verify_all(t: &Table) -> AxiomReport {
    let associative = check_associativity(t);
    let strong_identity = check_strong_identity(t);
    let involutive = check_involutivity(t);
    let commutative = check_commutativity(t);
    let is_involutive_2vg = associative.holds() && strong_identity.holds() && involutive.holds();
    AxiomReport {
        associative,
        strong_identity,
        involutive,
        commutative,
        is_involutive_2vg,
    }
}

/// Cheap boolean form of [`verify_all`]'s `is_involutive_2vg`.
pub fn is_involutive_2vg(t: &Table) -> bool {
    check_strong_identity(t).holds()
        && check_involutivity(t).holds()
        && t.elements().all(|x| {
            t.elements()
                .all(|y| t.elements().all(|z| sides_equal(t, x, y, z)))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: u32) -> Element {
        Element(i)
    }

    /// n = 2 with `1*1` given and the identity row/column forced.
    fn two(p11: Pair) -> Table {
        Table::from_fn(2, |x, y| match (x.0, y.0) {
            (0, _) => Pair::doubled(y),
            (_, 0) => Pair::doubled(x),
            _ => p11,
        })
        .unwrap()
    }

    #[test]
    fn trivial_table_passes_everything() {
        let r = verify_all(&Table::trivial());
        assert!(r.is_involutive_2vg);
        assert!(r.commutative.holds());
        assert!(is_involutive_2vg(&Table::trivial()));
    }

    #[test]
    fn strong_identity_witness() {
        let mut cells = two(Pair::doubled(e(0))).cells().to_vec();
        cells[2] = Pair::new(e(0), e(1));
        let t = Table::new(2, cells, None).unwrap();
        assert_eq!(check_strong_identity(&t), Verdict::Fails(e(1)));
    }

    #[test]
    fn involutivity_on_the_diagonal() {
        assert_eq!(
            check_involutivity(&two(Pair::doubled(e(1)))),
            Verdict::Fails(PairWitness { x: e(1), y: e(1) })
        );
        assert!(check_involutivity(&two(Pair::doubled(e(0)))).holds());
        assert!(check_involutivity(&two(Pair::new(e(0), e(1)))).holds());
    }

    #[test]
    fn both_order_two_structures_are_valid() {
        for p in [Pair::doubled(e(0)), Pair::new(e(0), e(1))] {
            let t = two(p);
            assert!(verify_all(&t).is_involutive_2vg, "{p}");
        }
        // With 1*1 = [1,1] every triple still associates; only involutivity fails.
        let r = verify_all(&two(Pair::doubled(e(1))));
        assert!(r.associative.holds());
        assert!(!r.involutive.holds());
        assert!(!r.is_involutive_2vg);
    }

    #[test]
    fn witness_reverification() {
        let t = Table::from_fn(3, |x, y| match (x.0, y.0) {
            (0, _) => Pair::doubled(y),
            (_, 0) => Pair::doubled(x),
            (1, 2) => Pair::doubled(e(1)),
            (2, 1) => Pair::doubled(e(2)),
            _ => Pair::doubled(e(0)),
        })
        .unwrap();
        let r = verify_all(&t);
        assert!(!r.commutative.holds());
        assert_eq!(
            r.commutative.witness(),
            Some(&PairWitness { x: e(1), y: e(2) })
        );
        assert!(r.witnesses_reverify(&t));
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["commutative"]["witness"]["x"], 1);
        assert_eq!(json["strong_identity"]["holds"], true);
    }
}
