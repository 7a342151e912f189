//! Exhaustive enumeration of involutive two-valued groups of a fixed order,
//! up to isomorphism.
//!
//! Isomorphisms are bijections of the carrier that fix the identity and
//! commute with the product. The canonical form of a table is its
//! lexicographically smallest relabeling, comparing cells in row-major order.
//!
//! The search fills the cells not fixed by the identity law one at a time:
//! first `(x, y)` with `x <= y`, then the mirrored cells `(y, x)`. Mirrored
//! cells are independent unknowns, so commutativity is never assumed. After
//! every assignment two filters run:
//!
//! * associativity: every triple whose products are known far enough is
//!   checked for feasibility of `(x*y)*z = x*(y*z)`;
//! * orderly generation: if some relabeling is already smaller on the
//!   determined prefix, no completion can be canonical.
//!
//! Involutivity and the identity law are built into the cell domains.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::axioms::verify_all;
use crate::io::serialize_table;
use crate::powers::{order_spectrum, Order};
use crate::table::{Element, Pair, Table};
use crate::theoremlab::lemma_report;

pub const DEFAULT_MAX_ORDER: usize = 6;
/// Hard ceiling on [`EnumOptions::max_order`].
pub const MAX_ORDER: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumOptions {
    /// Skip symmetry breaking and isomorphism dedup; emit every labeled table.
    pub raw: bool,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    pub max_order: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            raw: false,
            jobs: None,
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("order {n} is outside 1..={max}")]
    OrderOutOfRange { n: usize, max: usize },
    #[error("max order {0} exceeds the supported ceiling {MAX_ORDER}")]
    MaxOrderTooLarge(usize),
    #[error("invalid worker count {0}")]
    Jobs(usize),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

/// One enumerated structure together with everything checked about it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    #[serde(skip)]
    pub table: Table,
    pub order: usize,
    pub file: String,
    pub associative: bool,
    pub strong_identity: bool,
    pub involutive: bool,
    pub commutative: bool,
    pub lemma1: bool,
    pub lemma2: bool,
    pub main_identity: bool,
    pub cases_clean: bool,
    /// `None` when the power sequence of some element is ill-formed.
    pub order_spectrum: Option<Vec<Order>>,
}

impl CensusEntry {
    /// Runs every checker on `table`. Nothing is copied from the search.
    pub fn evaluate(table: Table) -> CensusEntry {
        let axioms = verify_all(&table);
        let lemmas = lemma_report(&table).ok();
        let mut spectrum = order_spectrum(&table).ok();
        if let Some(s) = spectrum.as_mut() {
            s.sort();
        }
        CensusEntry {
            order: table.order(),
            file: file_name(&table),
            associative: axioms.associative.holds(),
            strong_identity: axioms.strong_identity.holds(),
            involutive: axioms.involutive.holds(),
            commutative: axioms.commutative.holds(),
            lemma1: lemmas.as_ref().is_some_and(|l| l.lemma1.holds()),
            lemma2: lemmas.as_ref().is_some_and(|l| l.lemma2.holds()),
            main_identity: lemmas.as_ref().is_some_and(|l| l.main_identity.holds()),
            cases_clean: lemmas.as_ref().is_some_and(|l| l.census.is_clean()),
            order_spectrum: spectrum,
            table,
        }
    }

    pub fn is_involutive_2vg(&self) -> bool {
        self.associative && self.strong_identity && self.involutive
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("census entries always serialize")
    }
}

/// `o<n>-<first 16 hex digits of sha256(serialization)>.2vg`
pub fn file_name(t: &Table) -> String {
    let digest = Sha256::digest(serialize_table(t).as_bytes());
    format!("o{}-{}.2vg", t.order(), &hex::encode(digest)[..16])
}

/// Runs the search and evaluates every result.
///
/// Sorted by serialization. Without `raw`, exactly one canonical
/// representative per isomorphism class.
pub fn enumerate(n: usize, opts: &EnumOptions) -> Result<Vec<CensusEntry>, EnumError> {
    let tables = enumerate_tables(n, opts)?;
    with_pool(opts.jobs, || {
        tables.into_par_iter().map(CensusEntry::evaluate).collect()
    })
}

/// The search alone, without the per-table evaluation of [`enumerate`].
pub fn enumerate_tables(n: usize, opts: &EnumOptions) -> Result<Vec<Table>, EnumError> {
    if opts.max_order > MAX_ORDER {
        return Err(EnumError::MaxOrderTooLarge(opts.max_order));
    }
    if n == 0 || n > opts.max_order {
        return Err(EnumError::OrderOutOfRange {
            n,
            max: opts.max_order,
        });
    }
    let plan = Plan::new(n, !opts.raw);
    let found = with_pool(opts.jobs, || plan.run())?;
    let mut tables: Vec<(String, Table)> = found
        .into_iter()
        .map(|cells| {
            let t = plan.to_table(&cells);
            let t = if opts.raw { t } else { canonical_form(&t) };
            (serialize_table(&t), t)
        })
        .collect();
    tables.sort_by(|a, b| a.0.cmp(&b.0));
    if !opts.raw {
        tables.dedup_by(|a, b| a.0 == b.0);
    }
    Ok(tables.into_iter().map(|(_, t)| t).collect())
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, EnumError> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(EnumError::Jobs(0)),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| EnumError::ThreadPool(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

/// Identity-fixing permutations of `0..n` in lexicographic order, the identity first.
pub fn identity_fixing_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = vec![perm.clone()];
    if n <= 2 {
        return out;
    }
    // next_permutation on perm[1..]
    loop {
        let tail = &mut perm[1..];
        let Some(i) = (0..tail.len() - 1).rev().find(|&i| tail[i] < tail[i + 1]) else {
            return out;
        };
        let j = (i + 1..tail.len())
            .rev()
            .find(|&j| tail[j] > tail[i])
            .unwrap();
        tail.swap(i, j);
        tail[i + 1..].reverse();
        out.push(perm.clone());
    }
}

/// Smallest relabeling of `t` under permutations fixing 0. Names are dropped.
///
/// Cost is `(n-1)! * n^2`; intended for the small orders that enumeration covers.
pub fn canonical_form(t: &Table) -> Table {
    let n = t.order();
    let mut best: Option<Vec<Pair>> = None;
    let mut cand = vec![Pair::doubled(Element::IDENTITY); n * n];
    for perm in identity_fixing_permutations(n) {
        for x in 0..n {
            for y in 0..n {
                let p = t.cells()[x * n + y].map(|e| Element::new(perm[e.index()]));
                cand[perm[x] * n + perm[y]] = p;
            }
        }
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand.clone());
        }
    }
    Table::new(n, best.expect("at least the identity permutation"), None)
        .expect("relabeling preserves ranges")
}

pub fn are_isomorphic(a: &Table, b: &Table) -> bool {
    a.order() == b.order() && canonical_form(a) == canonical_form(b)
}

const UNSET: [u8; 2] = [u8::MAX, u8::MAX];

type Cells = Vec<[u8; 2]>;

/// Everything about a search that does not change while it runs.
struct Plan {
    n: usize,
    /// Cell positions in decision order.
    vars: Vec<usize>,
    domains: Vec<Vec<[u8; 2]>>,
    /// Non-identity relabelings and their inverses, empty when not pruning by symmetry.
    perms: Vec<(Vec<u8>, Vec<u8>)>,
    triples: Vec<(usize, usize, usize)>,
}

impl Plan {
    fn new(n: usize, orderly: bool) -> Plan {
        let mut vars = Vec::new();
        for x in 1..n {
            for y in x..n {
                vars.push(x * n + y);
            }
        }
        for x in 1..n {
            for y in x + 1..n {
                vars.push(y * n + x);
            }
        }
        let domains = vars
            .iter()
            .map(|&pos| {
                let (x, y) = (pos / n, pos % n);
                if x == y {
                    (0..n as u8).map(|k| [0, k]).collect()
                } else {
                    let mut d = Vec::new();
                    for a in 1..n as u8 {
                        for b in a..n as u8 {
                            d.push([a, b]);
                        }
                    }
                    d
                }
            })
            .collect();
        let perms = if orderly {
            identity_fixing_permutations(n)
                .into_iter()
                .skip(1)
                .map(|p| {
                    let mut inv = vec![0u8; n];
                    for (i, &pi) in p.iter().enumerate() {
                        inv[pi] = i as u8;
                    }
                    (p.into_iter().map(|v| v as u8).collect(), inv)
                })
                .collect()
        } else {
            Vec::new()
        };
        let mut triples = Vec::new();
        for x in 1..n {
            for y in 1..n {
                for z in 1..n {
                    triples.push((x, y, z));
                }
            }
        }
        Plan {
            n,
            vars,
            domains,
            perms,
            triples,
        }
    }

    fn initial(&self) -> Cells {
        let n = self.n;
        let mut cells = vec![UNSET; n * n];
        for x in 0..n {
            cells[x] = [x as u8, x as u8];
            cells[x * n] = [x as u8, x as u8];
        }
        cells
    }

    fn to_table(&self, cells: &[[u8; 2]]) -> Table {
        let pairs = cells
            .iter()
            .map(|&[a, b]| Pair::new(Element(a as u32), Element(b as u32)))
            .collect();
        Table::new(self.n, pairs, None).expect("search only assigns in-range values")
    }

    /// Splits the tree after the first two decisions and searches the
    /// subtrees in parallel. Results come back in a fixed order.
    fn run(&self) -> Vec<Cells> {
        let split = self.vars.len().min(2);
        let mut prefixes = vec![self.initial()];
        for depth in 0..split {
            let mut next = Vec::new();
            for cells in &prefixes {
                for &value in &self.domains[depth] {
                    let mut c = cells.clone();
                    c[self.vars[depth]] = value;
                    if self.admissible(&c) {
                        next.push(c);
                    }
                }
            }
            prefixes = next;
        }
        prefixes
            .into_par_iter()
            .flat_map_iter(|mut cells| {
                let mut out = Vec::new();
                self.dfs(&mut cells, split, &mut out);
                out
            })
            .collect()
    }

    fn dfs(&self, cells: &mut Cells, depth: usize, out: &mut Vec<Cells>) {
        if depth == self.vars.len() {
            out.push(cells.clone());
            return;
        }
        let pos = self.vars[depth];
        for &value in &self.domains[depth] {
            cells[pos] = value;
            if self.admissible(cells) {
                self.dfs(cells, depth + 1, out);
            }
        }
        cells[pos] = UNSET;
    }

    fn admissible(&self, cells: &[[u8; 2]]) -> bool {
        self.associative_so_far(cells) && !self.smaller_relabeling_exists(cells)
    }

    fn associative_so_far(&self, cells: &[[u8; 2]]) -> bool {
        let n = self.n;
        self.triples.iter().all(|&(x, y, z)| {
            let xy = cells[x * n + y];
            let yz = cells[y * n + z];
            if xy == UNSET || yz == UNSET {
                return true;
            }
            let lhs = [(xy[0] as usize, z), (xy[1] as usize, z)];
            let rhs = [(x, yz[0] as usize), (x, yz[1] as usize)];
            sides_feasible(cells, n, lhs, rhs)
        })
    }

    /// Orderly-generation test: some relabeling is already smaller than
    /// `cells` on the row-major prefix where both are determined.
    fn smaller_relabeling_exists(&self, cells: &[[u8; 2]]) -> bool {
        let n = self.n;
        'perms: for (perm, inv) in &self.perms {
            for i in 1..n {
                for j in 1..n {
                    let here = cells[i * n + j];
                    let src = cells[inv[i] as usize * n + inv[j] as usize];
                    if here == UNSET || src == UNSET {
                        continue 'perms;
                    }
                    let (a, b) = (perm[src[0] as usize], perm[src[1] as usize]);
                    let mapped = if a <= b { [a, b] } else { [b, a] };
                    if mapped < here {
                        return true;
                    }
                    if mapped > here {
                        continue 'perms;
                    }
                }
            }
        }
        false
    }
}

/// Whether `lhs` and `rhs`, each the union of two cells, can still become
/// equal as multisets once the unknown cells are filled.
fn sides_feasible(
    cells: &[[u8; 2]],
    n: usize,
    lhs: [(usize, usize); 2],
    rhs: [(usize, usize); 2],
) -> bool {
    let l = Side::gather(cells, n, lhs);
    let r = Side::gather(cells, n, rhs);
    // copies of e: a cell (u, v) holds e iff u == v, once or twice
    if l.e_min > r.e_max || r.e_min > l.e_max {
        return false;
    }
    match (l.unknown.len(), r.unknown.len()) {
        (0, _) => r.fits_into(&l),
        (_, 0) => l.fits_into(&r),
        _ => true,
    }
}

struct Side {
    known: Vec<u8>,
    unknown: Vec<(usize, usize)>,
    e_min: usize,
    e_max: usize,
}

impl Side {
    fn gather(cells: &[[u8; 2]], n: usize, slots: [(usize, usize); 2]) -> Side {
        let mut side = Side {
            known: Vec::with_capacity(4),
            unknown: Vec::new(),
            e_min: 0,
            e_max: 0,
        };
        for (u, v) in slots {
            let c = cells[u * n + v];
            if c == UNSET {
                side.unknown.push((u, v));
                if u == v {
                    side.e_min += 1;
                    side.e_max += 2;
                }
            } else {
                let zeros = c.iter().filter(|&&k| k == 0).count();
                side.e_min += zeros;
                side.e_max += zeros;
                side.known.extend_from_slice(&c);
            }
        }
        side.known.sort_unstable();
        side
    }

    /// `self` has unknown cells, `full` has none. Checks that what is known
    /// here is contained in `full`, and that when exactly one cell is
    /// missing, the forced leftover is a legal value for it.
    fn fits_into(&self, full: &Side) -> bool {
        let mut rest: BTreeMap<u8, usize> = BTreeMap::new();
        for &k in &full.known {
            *rest.entry(k).or_insert(0) += 1;
        }
        for &k in &self.known {
            match rest.get_mut(&k) {
                Some(c) if *c > 0 => *c -= 1,
                _ => return false,
            }
        }
        if let [(u, v)] = self.unknown[..] {
            let zeros = rest.get(&0).copied().unwrap_or(0);
            if u == v {
                zeros >= 1
            } else {
                zeros == 0
            }
        } else {
            true
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{abelian_coset, AbelianSpec};

    fn e(i: u32) -> Element {
        Element(i)
    }

    fn coset(f: &[usize]) -> Table {
        abelian_coset(&AbelianSpec::new(f.to_vec()).unwrap())
    }

    #[test]
    fn permutations_fix_identity() {
        let perms = identity_fixing_permutations(4);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms[0], [0, 1, 2, 3]);
        assert_eq!(perms[5], [0, 3, 2, 1]);
        assert!(perms.iter().all(|p| p[0] == 0));
        assert_eq!(identity_fixing_permutations(1), [vec![0]]);
        assert_eq!(identity_fixing_permutations(2), [vec![0, 1]]);
    }

    #[test]
    fn canonical_form_basics() {
        assert_eq!(canonical_form(&Table::trivial()), Table::trivial());
        let t = coset(&[5]);
        let c = canonical_form(&t);
        assert_eq!(canonical_form(&c), c);
        // a -> 2a is an automorphism of Z/5, so swapping 1 and 2 is one here
        let swapped = t.relabel(&[e(0), e(2), e(1)]);
        assert_eq!(swapped, t);
        assert_eq!(canonical_form(&swapped), c);

        let t = coset(&[2, 3]);
        let moved = t.relabel(&[e(0), e(3), e(1), e(2)]);
        assert_ne!(moved, t);
        assert_eq!(canonical_form(&moved), canonical_form(&t));
        assert!(are_isomorphic(&t, &moved));
        assert!(!are_isomorphic(&t, &coset(&[7])));
    }

    #[test]
    fn small_orders() {
        let opts = EnumOptions::default();
        assert_eq!(enumerate_tables(1, &opts).unwrap(), [Table::trivial()]);
        let two = enumerate_tables(2, &opts).unwrap();
        assert_eq!(two.len(), 2);
        assert_eq!(two[0].cell(e(1), e(1)), Pair::doubled(e(0)));
        assert_eq!(two[1].cell(e(1), e(1)), Pair::new(e(0), e(1)));
        assert!(!are_isomorphic(&two[0], &two[1]));
    }

    #[test]
    fn order_bounds() {
        let opts = EnumOptions::default();
        assert_eq!(
            enumerate_tables(0, &opts),
            Err(EnumError::OrderOutOfRange {
                n: 0,
                max: DEFAULT_MAX_ORDER
            })
        );
        assert!(enumerate_tables(7, &opts).is_err());
        let big = EnumOptions {
            max_order: 9,
            ..EnumOptions::default()
        };
        assert_eq!(
            enumerate_tables(3, &big),
            Err(EnumError::MaxOrderTooLarge(9))
        );
        let zero_jobs = EnumOptions {
            jobs: Some(0),
            ..EnumOptions::default()
        };
        assert_eq!(enumerate_tables(2, &zero_jobs), Err(EnumError::Jobs(0)));
    }

    #[test]
    fn entries_carry_flags_and_spectrum() {
        let entries = enumerate(2, &EnumOptions::default()).unwrap();
        let spectra: Vec<_> = entries
            .iter()
            .map(|e| e.order_spectrum.clone().unwrap())
            .collect();
        assert_eq!(spectra[0], [Order::Finite(1), Order::Finite(2)]);
        assert_eq!(spectra[1], [Order::Finite(1), Order::Finite(3)]);
        for entry in &entries {
            assert!(entry.is_involutive_2vg() && entry.commutative && entry.cases_clean);
            let json: serde_json::Value = serde_json::from_str(&entry.to_json_line()).unwrap();
            assert_eq!(json["order"], 2);
            assert_eq!(json["file"], entry.file.as_str());
        }
    }

    #[test]
    fn file_names_are_stable() {
        let name = file_name(&Table::trivial());
        assert!(name.starts_with("o1-") && name.ends_with(".2vg"));
        assert_eq!(name.len(), "o1-".len() + 16 + ".2vg".len());
        assert_eq!(name, file_name(&Table::trivial()));
    }
}
