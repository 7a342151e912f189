//! Instance checks of the facts used to prove that involutive two-valued
//! groups are commutative, and a census of the proof's case split.
//!
//! For a pair `(x, y)` write `x*y = [z1, z2]` and `y*x = [w1, w2]`. The
//! argument multiplies these two products out, compares against
//! `[e, e, x^2, x^2] + x*y^2*x`, and distinguishes three situations:
//!
//! 1. `x*y = y*x`;
//! 2. one product is doubled, `[a, a]`, and the other is `[a, b]` with `b != a`;
//! 3. the products differ but share an element of order 2.
//!
//! On a valid structure only the first can occur.

use serde::Serialize;

use crate::axioms::{PairWitness, Verdict};
use crate::multiset::Multiset;
use crate::powers::{order, power_sequence, Order, PowerError};
use crate::table::{Element, Pair, Table};

/// A triple where `z in x*y` and `y in z*x` disagree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Lemma1Witness {
    pub x: Element,
    pub y: Element,
    pub z: Element,
    pub z_in_xy: bool,
    pub y_in_zx: bool,
}

/// `z in x*y  <=>  y in z*x` for all `x, y, z`.
pub fn lemma1_holds(t: &Table) -> Verdict<Lemma1Witness> {
    for x in t.elements() {
        for y in t.elements() {
            for z in t.elements() {
                let z_in_xy = t.cell(x, y).contains(z);
                let y_in_zx = t.cell(z, x).contains(y);
                if z_in_xy != y_in_zx {
                    return Verdict::Fails(Lemma1Witness {
                        x,
                        y,
                        z,
                        z_in_xy,
                        y_in_zx,
                    });
                }
            }
        }
    }
    Verdict::Holds
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Lemma2Witness {
    /// The element of order 2.
    pub x: Element,
    pub y: Element,
    pub xy: Pair,
    pub yx: Pair,
}

/// For every `x` of order 2 and every `y`: `x*y = y*x = [z, z]` for some `z`.
pub fn lemma2_holds(t: &Table) -> Result<Verdict<Lemma2Witness>, PowerError> {
    for x in t.elements() {
        if order(t, x)? != Order::Finite(2) {
            continue;
        }
        for y in t.elements() {
            let (xy, yx) = (t.cell(x, y), t.cell(y, x));
            if xy != yx || !xy.is_doubled() {
                return Ok(Verdict::Fails(Lemma2Witness { x, y, xy, yx }));
            }
        }
    }
    Ok(Verdict::Holds)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MainIdentityWitness {
    pub x: Element,
    pub y: Element,
    pub lhs: Multiset,
    pub rhs: Multiset,
}

/// Both sides of `(x*y)*(y*x) = [e, e, x^2, x^2] + (x*y^2)*x`.
pub fn main_identity_sides(
    t: &Table,
    x: Element,
    y: Element,
) -> Result<(Multiset, Multiset), PowerError> {
    let x2 = power_sequence(t, x, 2)?.power(2);
    let y2 = power_sequence(t, y, 2)?.power(2);
    let lhs = t.product(&t.cell(x, y).into(), &t.cell(y, x).into())?;
    let xy2 = t.product(&Multiset::singleton(x), &Multiset::singleton(y2))?;
    let xy2x = t.product(&xy2, &Multiset::singleton(x))?;
    let mut rhs: Multiset = [Element::IDENTITY, Element::IDENTITY, x2, x2]
        .into_iter()
        .collect();
    rhs.union_with(&xy2x);
    Ok((lhs, rhs))
}

pub fn main_identity_check(t: &Table) -> Result<Verdict<MainIdentityWitness>, PowerError> {
    for x in t.elements() {
        for y in t.elements() {
            let (lhs, rhs) = main_identity_sides(t, x, y)?;
            if lhs != rhs {
                return Ok(Verdict::Fails(MainIdentityWitness { x, y, lhs, rhs }));
            }
        }
    }
    Ok(Verdict::Holds)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProofCase {
    Case1,
    Case2,
    Case3,
    Other,
}

/// Classifies `(x, y)`; earlier cases take priority where they overlap.
pub fn classify_pair(t: &Table, x: Element, y: Element) -> Result<ProofCase, PowerError> {
    let (xy, yx) = (t.cell(x, y), t.cell(y, x));
    if xy == yx {
        return Ok(ProofCase::Case1);
    }
    let three_agree = |doubled: Pair, other: Pair| {
        doubled.is_doubled() && other.contains(doubled.lo()) && !other.is_doubled()
    };
    if three_agree(xy, yx) || three_agree(yx, xy) {
        return Ok(ProofCase::Case2);
    }
    for z in xy.elements() {
        if yx.contains(z) && order(t, z)? == Order::Finite(2) {
            return Ok(ProofCase::Case3);
        }
    }
    Ok(ProofCase::Other)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CaseCensus {
    pub case1: usize,
    pub case2: usize,
    pub case3: usize,
    pub other: usize,
    /// First pair in scan order landing in each class.
    pub examples: CaseExamples,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CaseExamples {
    pub case1: Option<PairWitness>,
    pub case2: Option<PairWitness>,
    pub case3: Option<PairWitness>,
    pub other: Option<PairWitness>,
}

impl CaseCensus {
    pub fn counts(&self) -> (usize, usize, usize, usize) {
        (self.case1, self.case2, self.case3, self.other)
    }

    pub fn total(&self) -> usize {
        self.case1 + self.case2 + self.case3 + self.other
    }

    /// Only case 1 occurred.
    pub fn is_clean(&self) -> bool {
        self.case2 == 0 && self.case3 == 0 && self.other == 0
    }
}

pub fn case_census(t: &Table) -> Result<CaseCensus, PowerError> {
    let mut census = CaseCensus::default();
    for x in t.elements() {
        for y in t.elements() {
            let (count, example) = match classify_pair(t, x, y)? {
                ProofCase::Case1 => (&mut census.case1, &mut census.examples.case1),
                ProofCase::Case2 => (&mut census.case2, &mut census.examples.case2),
                ProofCase::Case3 => (&mut census.case3, &mut census.examples.case3),
                ProofCase::Other => (&mut census.other, &mut census.examples.other),
            };
            *count += 1;
            example.get_or_insert(PairWitness { x, y });
        }
    }
    Ok(census)
}

/// Everything in this module, evaluated on one table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemma1: Verdict<Lemma1Witness>,
    pub lemma2: Verdict<Lemma2Witness>,
    pub main_identity: Verdict<MainIdentityWitness>,
    pub census: CaseCensus,
}

impl LemmaReport {
    pub fn all_hold(&self) -> bool {
        self.lemma1.holds()
            && self.lemma2.holds()
            && self.main_identity.holds()
            && self.census.is_clean()
    }
}

pub fn lemma_report(t: &Table) -> Result<LemmaReport, PowerError> {
    Ok(LemmaReport {
        lemma1: lemma1_holds(t),
        lemma2: lemma2_holds(t)?,
        main_identity: main_identity_check(t)?,
        census: case_census(t)?,
    })
}
