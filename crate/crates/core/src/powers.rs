//! Power sequences `x^0 = e, x^1 = x, x^2, ...` and element orders.
//!
//! The sequence is driven by the `m = 1` case of `x^k * x^m = [x^|k-m|, x^(k+m)]`:
//! `x^(k+1)` is what remains of `x^k * x` after removing one copy of
//! `x^(k-1)`. On a table that is not a valid structure that copy may be
//! missing, which is reported as [`PowerError::IllFormed`].

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::axioms::Verdict;
use crate::table::{Element, Pair, Table, TableError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PowerError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(
        "power sequence of {base} is ill-formed at step {step}: x^{prev_step} = {missing} is not in x^{step} * x = {product}",
        prev_step = step - 1
    )]
    IllFormed {
        base: Element,
        step: usize,
        product: Pair,
        missing: Element,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerSeq {
    pub base: Element,
    /// `terms[k] = x^k`
    pub terms: Vec<Element>,
}

impl PowerSeq {
    pub fn horizon(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn power(&self, k: usize) -> Element {
        self.terms[k]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(usize),
    /// No `k <= n^2` with `x^k = e`.
    ///
    /// Never produced in practice: the step `(x^(k-1), x^k) -> (x^k, x^(k+1))`
    /// can be run backwards (`x^(k-1)` is `x^k * x` minus `x^(k+1)`), so a
    /// sequence that stays well-defined cycles back to `(e, x)` within `n^2`
    /// steps. The variant is kept so a scan that misses `e` is reported
    /// rather than assumed away.
    Unbounded,
}

impl Order {
    pub fn value(self) -> Option<usize> {
        match self {
            Order::Finite(k) => Some(k),
            Order::Unbounded => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::Unbounded => f.write_str("unbounded"),
        }
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Order::Finite(k) => serializer.serialize_u64(*k as u64),
            Order::Unbounded => serializer.serialize_str("unbounded"),
        }
    }
}

/// `x^(k+1)` from `x^(k-1)` and `x^k`.
fn step(
    t: &Table,
    x: Element,
    k: usize,
    prev: Element,
    cur: Element,
) -> Result<Element, PowerError> {
    let product = t.cell(cur, x);
    product.remove_one(prev).ok_or(PowerError::IllFormed {
        base: x,
        step: k,
        product,
        missing: prev,
    })
}

pub fn power_sequence(t: &Table, x: Element, horizon: usize) -> Result<PowerSeq, PowerError> {
    t.mul(x, x)?;
    let mut terms = Vec::with_capacity(horizon + 1);
    terms.push(Element::IDENTITY);
    if horizon >= 1 {
        terms.push(x);
    }
    for k in 1..horizon {
        let next = step(t, x, k, terms[k - 1], terms[k])?;
        terms.push(next);
    }
    Ok(PowerSeq { base: x, terms })
}

/// Smallest `k >= 1` with `x^k = e`, searching up to `k = n^2`.
///
/// Stops at the first hit; later powers are not computed.
pub fn order(t: &Table, x: Element) -> Result<Order, PowerError> {
    t.mul(x, x)?;
    let horizon = t.order() * t.order();
    let (mut prev, mut cur) = (Element::IDENTITY, x);
    for k in 1..=horizon {
        if cur.is_identity() {
            return Ok(Order::Finite(k));
        }
        let next = step(t, x, k, prev, cur)?;
        (prev, cur) = (cur, next);
    }
    Ok(Order::Unbounded)
}

/// Failure of `x^k * x^m = [x^|k-m|, x^(k+m)]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerRelationWitness {
    pub k: usize,
    pub m: usize,
    pub actual: Pair,
    pub expected: Pair,
}

/// Checks the power relation for all `k, m >= 0` with `k + m <= max_sum`.
pub fn verify_power_relation(
    t: &Table,
    x: Element,
    max_sum: usize,
) -> Result<Verdict<PowerRelationWitness>, PowerError> {
    let seq = power_sequence(t, x, max_sum)?;
    for k in 0..=max_sum {
        for m in 0..=(max_sum - k) {
            let actual = t.cell(seq.terms[k], seq.terms[m]);
            let expected = Pair::new(seq.terms[k.abs_diff(m)], seq.terms[k + m]);
            if actual != expected {
                return Ok(Verdict::Fails(PowerRelationWitness {
                    k,
                    m,
                    actual,
                    expected,
                }));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Orders of all elements, ascending by element.
pub fn order_spectrum(t: &Table) -> Result<Vec<Order>, PowerError> {
    t.elements().map(|x| order(t, x)).collect()
}
