//! Finite multisets of elements.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::table::{Element, Pair};

/// A finite multiset of [`Element`]s, stored as a multiplicity map.
///
/// Iteration is in ascending element order, so two equal multisets always
/// print and serialize identically.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiset {
    counts: BTreeMap<Element, usize>,
    len: usize,
}

impl Multiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(x: Element) -> Self {
        let mut m = Self::new();
        m.insert(x);
        m
    }

    /// Total number of elements, counted with multiplicity.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn count(&self, x: Element) -> usize {
        self.counts.get(&x).copied().unwrap_or(0)
    }

    pub fn contains(&self, x: Element) -> bool {
        self.counts.contains_key(&x)
    }

    pub fn insert(&mut self, x: Element) {
        self.insert_n(x, 1);
    }

    pub fn insert_n(&mut self, x: Element, copies: usize) {
        if copies == 0 {
            return;
        }
        *self.counts.entry(x).or_insert(0) += copies;
        self.len += copies;
    }

    /// Removes a single copy of `x`. Returns `false` if `x` was absent.
    pub fn remove_one(&mut self, x: Element) -> bool {
        match self.counts.get_mut(&x) {
            Some(c) if *c > 1 => *c -= 1,
            Some(_) => {
                self.counts.remove(&x);
            }
            None => return false,
        }
        self.len -= 1;
        true
    }

    /// Multiset union (multiplicities add).
    pub fn union_with(&mut self, other: &Multiset) {
        for (&x, &c) in &other.counts {
            self.insert_n(x, c);
        }
    }

    pub fn union(mut self, other: &Multiset) -> Multiset {
        self.union_with(other);
        self
    }

    pub fn is_submultiset_of(&self, other: &Multiset) -> bool {
        self.counts.iter().all(|(&x, &c)| other.count(x) >= c)
    }

    /// Distinct elements with their multiplicities, ascending.
    pub fn distinct(&self) -> impl Iterator<Item = (Element, usize)> + '_ {
        self.counts.iter().map(|(&x, &c)| (x, c))
    }

    /// All elements with repetition, ascending.
    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        self.distinct().flat_map(|(x, c)| std::iter::repeat_n(x, c))
    }

    pub fn to_vec(&self) -> Vec<Element> {
        self.iter().collect()
    }
}

impl From<Pair> for Multiset {
    fn from(p: Pair) -> Self {
        let mut m = Multiset::new();
        m.insert(p.lo());
        m.insert(p.hi());
        m
    }
}

impl FromIterator<Element> for Multiset {
    fn from_iter<I: IntoIterator<Item = Element>>(iter: I) -> Self {
        let mut m = Multiset::new();
        m.extend(iter);
        m
    }
}

impl Extend<Element> for Multiset {
    fn extend<I: IntoIterator<Item = Element>>(&mut self, iter: I) {
        for x in iter {
            self.insert(x);
        }
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

impl Serialize for Multiset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}
