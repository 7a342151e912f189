//! Two-valued tables built from ordinary groups by identifying `a` with `a^-1`.
//!
//! On the orbits `[a] = {a, a^-1}` the product is `[a] * [b] = [[ab], [ab^-1]]`,
//! evaluated on the smallest representative of each orbit. For an abelian group
//! this is independent of the representatives and always yields an involutive
//! two-valued group. For a nonabelian group the result is just a candidate.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::group::GroupTable;
use crate::table::{Element, Pair, Table};

/// Largest group order accepted by [`AbelianSpec`].
pub const MAX_GROUP_ORDER: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("at least one cyclic factor is required")]
    NoFactors,
    #[error("cyclic factor moduli must be at least 1")]
    ZeroFactor,
    #[error("group order exceeds {MAX_GROUP_ORDER}")]
    TooLarge,
    #[error("invalid factor `{0}`")]
    BadFactor(String),
}

/// `Z/f1 + Z/f2 + ...`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianSpec {
    factors: Vec<usize>,
}

impl AbelianSpec {
    pub fn new(factors: Vec<usize>) -> Result<Self, ConstructError> {
        if factors.is_empty() {
            return Err(ConstructError::NoFactors);
        }
        if factors.contains(&0) {
            return Err(ConstructError::ZeroFactor);
        }
        let mut order: usize = 1;
        for &f in &factors {
            order = order
                .checked_mul(f)
                .filter(|&o| o <= MAX_GROUP_ORDER)
                .ok_or(ConstructError::TooLarge)?;
        }
        Ok(AbelianSpec { factors })
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn group_order(&self) -> usize {
        self.factors.iter().product()
    }

    /// Mixed-radix digits of `code`, first factor most significant.
    fn decode(&self, mut code: usize) -> Vec<usize> {
        let mut digits = vec![0; self.factors.len()];
        for (d, &f) in digits.iter_mut().zip(&self.factors).rev() {
            *d = code % f;
            code /= f;
        }
        digits
    }

    fn encode(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&d, &f)| acc * f + d)
    }

    fn combine(&self, a: usize, b: usize, subtract: bool) -> usize {
        let (da, db) = (self.decode(a), self.decode(b));
        let digits: Vec<usize> = da
            .iter()
            .zip(&db)
            .zip(&self.factors)
            .map(|((&x, &y), &f)| {
                if subtract {
                    (x + f - y) % f
                } else {
                    (x + y) % f
                }
            })
            .collect();
        self.encode(&digits)
    }

    fn negate(&self, a: usize) -> usize {
        self.combine(0, a, true)
    }
}

impl FromStr for AbelianSpec {
    type Err = ConstructError;

    /// Comma-separated moduli, e.g. `2,2,3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let factors = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<usize>()
                    .map_err(|_| ConstructError::BadFactor(tok.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        AbelianSpec::new(factors)
    }
}

impl fmt::Display for AbelianSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(usize::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Orbits of an involution on `0..order` that fixes 0.
///
/// Returns the orbit index of every point and the smallest member of every
/// orbit. Orbits are numbered by their smallest member, so 0 gets index 0.
fn orbits(order: usize, inverse: impl Fn(usize) -> usize) -> (Vec<usize>, Vec<usize>) {
    let mut class = vec![usize::MAX; order];
    let mut reps = Vec::new();
    for a in 0..order {
        if class[a] == usize::MAX {
            class[a] = reps.len();
            class[inverse(a)] = reps.len();
            reps.push(a);
        }
    }
    (class, reps)
}

fn coset_table(
    order: usize,
    inverse: impl Fn(usize) -> usize,
    mul: impl Fn(usize, usize) -> usize,
) -> (Table, Vec<usize>) {
    let (class, reps) = orbits(order, &inverse);
    let n = reps.len();
    let mut cells = Vec::with_capacity(n * n);
    for &a in &reps {
        for &b in &reps {
            let sum = class[mul(a, b)];
            let diff = class[mul(a, inverse(b))];
            cells.push(Pair::new(Element::new(sum), Element::new(diff)));
        }
    }
    let table = Table::new(n, cells, None).expect("orbit indices are in range");
    (table, reps)
}

/// The coset two-valued group of an abelian group.
pub fn abelian_coset(spec: &AbelianSpec) -> Table {
    coset_table(
        spec.group_order(),
        |a| spec.negate(a),
        |a, b| spec.combine(a, b, false),
    )
    .0
}

/// The same construction applied to an arbitrary group, with no guarantee
/// that the result satisfies the axioms.
///
/// Names, if the group has them, carry over from each orbit's smallest
/// representative.
pub fn group_coset_attempt(g: &GroupTable) -> Table {
    let (table, reps) = coset_table(
        g.order(),
        |a| g.inverse(Element::new(a)).index(),
        |a, b| g.mul(Element::new(a), Element::new(b)).index(),
    );
    match g.names() {
        Some(names) => {
            let names = reps.iter().map(|&r| names[r].clone()).collect();
            table
                .with_names(Some(names))
                .expect("group names are valid and distinct")
        }
        None => table,
    }
}
