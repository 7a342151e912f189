//! Ordinary (single-valued) finite groups given by Cayley tables.

use std::fmt;

use thiserror::Error;

use crate::table::{validate_names, Element, TableError};

/// Why a Cayley table is not a group with identity at index 0.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("index 0 is not a two-sided identity: 0*{x} or {x}*0 differs from {x}")]
    Identity { x: Element },
    #[error("not associative: ({a}*{b})*{c} = {lhs} but {a}*({b}*{c}) = {rhs}")]
    NotAssociative {
        a: Element,
        b: Element,
        c: Element,
        lhs: Element,
        rhs: Element,
    },
    #[error("element {a} has no inverse")]
    NotInvertible { a: Element },
}

/// A validated finite group; index 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupTable {
    n: usize,
    cells: Vec<Element>,
    names: Option<Vec<String>>,
    inverses: Vec<Element>,
}

impl GroupTable {
    /// Checks, in order: index ranges, identity at 0, associativity, inverses.
    pub fn new(
        n: usize,
        cells: Vec<Element>,
        names: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(TableError::EmptyCarrier.into());
        }
        if cells.len() != n * n {
            return Err(TableError::CellCount {
                expected: n * n,
                got: cells.len(),
            }
            .into());
        }
        if let Some(&element) = cells.iter().find(|e| e.index() >= n) {
            return Err(TableError::OutOfRange { element, order: n }.into());
        }
        if let Some(names) = &names {
            validate_names(names, n)?;
        }
        let at = |a: usize, b: usize| cells[a * n + b];
        for x in 0..n {
            if at(0, x).index() != x || at(x, 0).index() != x {
                return Err(GroupError::Identity { x: Element::new(x) });
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b).index();
                for c in 0..n {
                    let lhs = at(ab, c);
                    let rhs = at(a, at(b, c).index());
                    if lhs != rhs {
                        return Err(GroupError::NotAssociative {
                            a: Element::new(a),
                            b: Element::new(b),
                            c: Element::new(c),
                            lhs,
                            rhs,
                        });
                    }
                }
            }
        }
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n).find(|&b| at(a, b).index() == 0 && at(b, a).index() == 0);
            match inv {
                Some(b) => inverses.push(Element::new(b)),
                None => return Err(GroupError::NotInvertible { a: Element::new(a) }),
            }
        }
        Ok(GroupTable {
            n,
            cells,
            names,
            inverses,
        })
    }

    pub fn from_fn(
        n: usize,
        mut f: impl FnMut(Element, Element) -> Element,
    ) -> Result<Self, GroupError> {
        let mut cells = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                cells.push(f(Element::new(a), Element::new(b)));
            }
        }
        GroupTable::new(n, cells, None)
    }

    /// Z/n with element `k` at index `k`.
    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        GroupTable::from_fn(n, |a, b| Element::new((a.index() + b.index()) % n.max(1)))
    }

    pub fn with_names(mut self, names: Option<Vec<String>>) -> Result<Self, GroupError> {
        if let Some(names) = &names {
            validate_names(names, self.n)?;
        }
        self.names = names;
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.n).map(Element::new)
    }

    /// # Panics
    /// If either argument is outside the group.
    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.cells[a.index() * self.n + b.index()]
    }

    pub fn inverse(&self, a: Element) -> Element {
        self.inverses[a.index()]
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

impl fmt::Display for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::io::serialize_group(self))
    }
}
