//! Elements, unordered pairs and two-valued multiplication tables.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::multiset::Multiset;

/// An index into a finite carrier. Index 0 is always the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct Element(pub u32);

impl Element {
    pub const IDENTITY: Element = Element(0);

    /// # Panics
    /// If `index` does not fit in a `u32`.
    pub fn new(index: usize) -> Self {
        Element(u32::try_from(index).expect("element index exceeds u32"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An unordered pair of elements, the value of a single product `x * y`.
///
/// Always stored normalized with `lo <= hi`, so `Pair::new(a, b) == Pair::new(b, a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair {
    lo: Element,
    hi: Element,
}

impl Pair {
    pub fn new(a: Element, b: Element) -> Self {
        if a <= b {
            Pair { lo: a, hi: b }
        } else {
            Pair { lo: b, hi: a }
        }
    }

    /// `[x, x]`
    pub fn doubled(x: Element) -> Self {
        Pair { lo: x, hi: x }
    }

    pub fn lo(self) -> Element {
        self.lo
    }

    pub fn hi(self) -> Element {
        self.hi
    }

    pub fn elements(self) -> [Element; 2] {
        [self.lo, self.hi]
    }

    pub fn contains(self, x: Element) -> bool {
        self.lo == x || self.hi == x
    }

    pub fn is_doubled(self) -> bool {
        self.lo == self.hi
    }

    /// What is left after removing one copy of `x`, if `x` is present.
    pub fn remove_one(self, x: Element) -> Option<Element> {
        if self.lo == x {
            Some(self.hi)
        } else if self.hi == x {
            Some(self.lo)
        } else {
            None
        }
    }

    pub fn map(self, mut f: impl FnMut(Element) -> Element) -> Pair {
        Pair::new(f(self.lo), f(self.hi))
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Serialize for Pair {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [self.lo, self.hi].serialize(serializer)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("order must be at least 1")]
    EmptyCarrier,
    #[error("element {element} is out of range for order {order}")]
    OutOfRange { element: Element, order: usize },
    #[error("expected {expected} cells, got {got}")]
    CellCount { expected: usize, got: usize },
    #[error("expected {expected} names, got {got}")]
    NameCount { expected: usize, got: usize },
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("invalid name {0:?}: names must be non-empty printable ASCII without `#` or `:`")]
    InvalidName(String),
}

pub(crate) fn validate_names(names: &[String], order: usize) -> Result<(), TableError> {
    if names.len() != order {
        return Err(TableError::NameCount {
            expected: order,
            got: names.len(),
        });
    }
    let mut seen = std::collections::HashSet::new();
    for name in names {
        if !is_valid_name(name) {
            return Err(TableError::InvalidName(name.clone()));
        }
        if !seen.insert(name.as_str()) {
            return Err(TableError::DuplicateName(name.clone()));
        }
    }
    Ok(())
}

/// Printable ASCII only, so serialized files are always ASCII.
pub(crate) fn is_valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_graphic() && c != '#' && c != ':')
}

/// A candidate two-valued multiplication on `{0, .., n-1}`.
///
/// Construction only checks that every cell refers to elements of the
/// carrier. Whether the table actually defines an involutive two-valued group
/// is decided by [`crate::axioms`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Table {
    n: usize,
    cells: Vec<Pair>,
    names: Option<Vec<String>>,
}

impl Table {
    /// `cells` is row-major: `cells[x * n + y] = x * y`.
    pub fn new(n: usize, cells: Vec<Pair>, names: Option<Vec<String>>) -> Result<Self, TableError> {
        if n == 0 {
            return Err(TableError::EmptyCarrier);
        }
        if cells.len() != n * n {
            return Err(TableError::CellCount {
                expected: n * n,
                got: cells.len(),
            });
        }
        for p in &cells {
            for e in p.elements() {
                if e.index() >= n {
                    return Err(TableError::OutOfRange {
                        element: e,
                        order: n,
                    });
                }
            }
        }
        if let Some(names) = &names {
            validate_names(names, n)?;
        }
        Ok(Table { n, cells, names })
    }

    pub fn from_fn(
        n: usize,
        mut f: impl FnMut(Element, Element) -> Pair,
    ) -> Result<Self, TableError> {
        let mut cells = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                cells.push(f(Element::new(x), Element::new(y)));
            }
        }
        Table::new(n, cells, None)
    }

    /// The one-element structure `e * e = [e, e]`.
    pub fn trivial() -> Self {
        Table {
            n: 1,
            cells: vec![Pair::doubled(Element::IDENTITY)],
            names: None,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.n).map(Element::new)
    }

    pub fn cells(&self) -> &[Pair] {
        &self.cells
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn with_names(mut self, names: Option<Vec<String>>) -> Result<Self, TableError> {
        if let Some(names) = &names {
            validate_names(names, self.n)?;
        }
        self.names = names;
        Ok(self)
    }

    /// Display name of `x`: its declared name, or its index.
    pub fn name_of(&self, x: Element) -> String {
        match &self.names {
            Some(names) => names[x.index()].clone(),
            None => x.to_string(),
        }
    }

    /// Resolves a declared name or a decimal index.
    pub fn lookup(&self, token: &str) -> Option<Element> {
        if let Some(names) = &self.names {
            if let Some(i) = names.iter().position(|s| s == token) {
                return Some(Element::new(i));
            }
        }
        token
            .parse::<usize>()
            .ok()
            .filter(|&i| i < self.n)
            .map(Element::new)
    }

    pub fn contains(&self, x: Element) -> bool {
        x.index() < self.n
    }

    fn check(&self, x: Element) -> Result<(), TableError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(TableError::OutOfRange {
                element: x,
                order: self.n,
            })
        }
    }

    /// `x * y`
    pub fn mul(&self, x: Element, y: Element) -> Result<Pair, TableError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.cell(x, y))
    }

    /// Unchecked variant of [`Table::mul`].
    ///
    /// # Panics
    /// If `x` or `y` is outside the carrier.
    pub fn cell(&self, x: Element, y: Element) -> Pair {
        assert!(self.contains(x) && self.contains(y), "element out of range");
        self.cells[x.index() * self.n + y.index()]
    }

    /// Product of multisets: the union of `a * b` over all factor pairs,
    /// so the result has `2 * |a| * |b|` elements.
    pub fn product(&self, a: &Multiset, b: &Multiset) -> Result<Multiset, TableError> {
        for x in a.distinct().chain(b.distinct()).map(|(x, _)| x) {
            self.check(x)?;
        }
        let mut out = Multiset::new();
        for (x, cx) in a.distinct() {
            for (y, cy) in b.distinct() {
                let p = self.cell(x, y);
                out.insert_n(p.lo(), cx * cy);
                out.insert_n(p.hi(), cx * cy);
            }
        }
        Ok(out)
    }

    /// Relabels the carrier: element `i` becomes `perm[i]`.
    ///
    /// # Panics
    /// If `perm` is not a permutation of `0..n`.
    pub fn relabel(&self, perm: &[Element]) -> Table {
        let n = self.n;
        assert_eq!(perm.len(), n, "permutation length mismatch");
        let mut seen = vec![false; n];
        for p in perm {
            assert!(p.index() < n && !seen[p.index()], "not a permutation");
            seen[p.index()] = true;
        }
        let mut cells = vec![Pair::doubled(Element::IDENTITY); n * n];
        for x in 0..n {
            for y in 0..n {
                let p = self.cells[x * n + y].map(|e| perm[e.index()]);
                cells[perm[x].index() * n + perm[y].index()] = p;
            }
        }
        let names = self.names.as_ref().map(|names| {
            let mut out = vec![String::new(); n];
            for (i, name) in names.iter().enumerate() {
                out[perm[i].index()] = name.clone();
            }
            out
        });
        Table { n, cells, names }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: u32) -> Element {
        Element(i)
    }

    fn z2() -> Table {
        Table::new(
            2,
            vec![
                Pair::doubled(e(0)),
                Pair::doubled(e(1)),
                Pair::doubled(e(1)),
                Pair::doubled(e(0)),
            ],
            None,
        )
        .unwrap()
    }

    #[test]
    fn pair_normalizes() {
        let p = Pair::new(e(2), e(1));
        assert_eq!((p.lo(), p.hi()), (e(1), e(2)));
        assert_eq!(Pair::new(e(0), e(0)), Pair::doubled(e(0)));
        assert_eq!(Pair::new(e(3), e(3)), Pair::doubled(e(3)));
        assert_eq!(Pair::new(e(1), e(2)), Pair::new(e(2), e(1)));
    }

    #[test]
    fn pair_remove_one() {
        assert_eq!(Pair::new(e(0), e(2)).remove_one(e(0)), Some(e(2)));
        assert_eq!(Pair::doubled(e(1)).remove_one(e(1)), Some(e(1)));
        assert_eq!(Pair::new(e(0), e(2)).remove_one(e(1)), None);
    }

    #[test]
    fn mul_checks_range() {
        let t = z2();
        assert_eq!(t.mul(e(1), e(1)).unwrap(), Pair::doubled(e(0)));
        assert_eq!(t.mul(e(1), e(0)).unwrap(), Pair::doubled(e(1)));
        assert_eq!(
            t.mul(e(2), e(0)),
            Err(TableError::OutOfRange {
                element: e(2),
                order: 2
            })
        );
    }

    #[test]
    fn product_of_identity_pair() {
        let t = z2();
        let x = Multiset::singleton(e(1));
        let ee: Multiset = [e(0), e(0)].into_iter().collect();
        assert_eq!(t.product(&x, &ee).unwrap(), [e(1); 4].into_iter().collect());
        let one = Multiset::singleton(e(0));
        assert_eq!(t.product(&one, &one).unwrap(), ee);
        assert!(t.product(&Multiset::singleton(e(5)), &one).is_err());
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert_eq!(Table::new(0, vec![], None), Err(TableError::EmptyCarrier));
        assert!(matches!(
            Table::new(1, vec![Pair::doubled(e(1))], None),
            Err(TableError::OutOfRange { .. })
        ));
        assert!(matches!(
            Table::new(1, vec![], None),
            Err(TableError::CellCount {
                expected: 1,
                got: 0
            })
        ));
        let names = Some(vec!["a".to_string(), "a".to_string()]);
        assert!(matches!(
            z2().with_names(names),
            Err(TableError::DuplicateName(_))
        ));
        let names = Some(vec!["a b".to_string(), "c".to_string()]);
        assert!(matches!(
            z2().with_names(names),
            Err(TableError::InvalidName(_))
        ));
    }

    #[test]
    fn lookup_by_name_or_index() {
        let t = z2().with_names(Some(vec!["e".into(), "x".into()])).unwrap();
        assert_eq!(t.lookup("x"), Some(e(1)));
        assert_eq!(t.lookup("1"), Some(e(1)));
        assert_eq!(t.lookup("2"), None);
        assert_eq!(t.name_of(e(0)), "e");
    }

    #[test]
    fn relabel_is_an_action() {
        let t = Table::from_fn(3, |x, y| match (x.0, y.0) {
            (0, _) => Pair::doubled(y),
            (_, 0) => Pair::doubled(x),
            (1, 1) => Pair::new(e(0), e(2)),
            (1, 2) => Pair::new(e(1), e(1)),
            _ => Pair::new(e(0), e(0)),
        })
        .unwrap();
        let swap = [e(0), e(2), e(1)];
        let r = t.relabel(&swap);
        assert_eq!(r.cell(e(2), e(2)), Pair::new(e(0), e(1)));
        assert_eq!(r.cell(e(2), e(1)), Pair::doubled(e(2)));
        assert_eq!(r.cell(e(1), e(0)), Pair::doubled(e(1)));
        assert_eq!(r.relabel(&swap), t);
    }
}
