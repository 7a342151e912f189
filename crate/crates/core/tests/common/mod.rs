#![allow(dead_code)]

use twovalued::group::GroupTable;
use twovalued::table::{Element, Pair};
use twovalued::Table;

/// S3 as permutations of {0,1,2}, identity first. `(p*q)(i) = p(q(i))`.
pub fn s3() -> GroupTable {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [1, 0, 2],
        [0, 2, 1],
        [2, 1, 0],
        [1, 2, 0],
        [2, 0, 1],
    ];
    let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
    let g = GroupTable::from_fn(6, |a, b| {
        let (p, q) = (perms[a.index()], perms[b.index()]);
        Element::new(index([p[q[0]], p[q[1]], p[q[2]]]))
    })
    .unwrap();
    let names = ["e", "s01", "s12", "s02", "r", "r2"];
    g.with_names(Some(names.iter().map(|s| s.to_string()).collect()))
        .unwrap()
}

/// Q8 as signed units `+-1, +-i, +-j, +-k`, in that order.
pub fn q8() -> GroupTable {
    // unit products: 0=1, 1=i, 2=j, 3=k; (sign, unit)
    const UNIT: [[(i8, usize); 4]; 4] = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ];
    let decode = |x: usize| (if x.is_multiple_of(2) { 1i8 } else { -1 }, x / 2);
    let encode = |s: i8, u: usize| 2 * u + usize::from(s < 0);
    let g = GroupTable::from_fn(8, |a, b| {
        let ((sa, ua), (sb, ub)) = (decode(a.index()), decode(b.index()));
        let (s, u) = UNIT[ua][ub];
        Element::new(encode(sa * sb * s, u))
    })
    .unwrap();
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"];
    g.with_names(Some(names.iter().map(|s| s.to_string()).collect()))
        .unwrap()
}

/// Nondecreasing factor lists (factors >= 2) with product at most `bound`, plus `[1]`.
pub fn factor_multisets(bound: usize) -> Vec<Vec<usize>> {
    fn go(min: usize, rem: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for f in min..=rem {
            cur.push(f);
            out.push(cur.clone());
            go(f, rem / f, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![vec![1]];
    go(2, bound, &mut Vec::new(), &mut out);
    out
}

/// A brute-force reference that shares no code with the library search:
/// tables are plain `(u8, u8)` vectors and every check is written out naively.
pub mod oracle {
    use std::collections::BTreeSet;

    pub type Cells = Vec<(u8, u8)>;

    fn norm(a: u8, b: u8) -> (u8, u8) {
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    fn at(n: usize, c: &[(u8, u8)], x: usize, y: usize) -> (u8, u8) {
        c[x * n + y]
    }

    pub fn associative(n: usize, c: &[(u8, u8)]) -> bool {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if !triple_ok(n, c, x, y, z) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn triple_ok(n: usize, c: &[(u8, u8)], x: usize, y: usize, z: usize) -> bool {
        let (a1, a2) = at(n, c, x, y);
        let (b1, b2) = at(n, c, y, z);
        let l = [at(n, c, a1 as usize, z), at(n, c, a2 as usize, z)];
        let r = [at(n, c, x, b1 as usize), at(n, c, x, b2 as usize)];
        let mut lhs = [l[0].0, l[0].1, l[1].0, l[1].1];
        let mut rhs = [r[0].0, r[0].1, r[1].0, r[1].1];
        lhs.sort_unstable();
        rhs.sort_unstable();
        lhs == rhs
    }

    pub fn involutive(n: usize, c: &[(u8, u8)]) -> bool {
        (0..n).all(|x| {
            (0..n).all(|y| {
                let (a, b) = at(n, c, x, y);
                (a == 0 || b == 0) == (x == y)
            })
        })
    }

    pub fn strong_identity(n: usize, c: &[(u8, u8)]) -> bool {
        (0..n).all(|x| {
            let d = (x as u8, x as u8);
            at(n, c, x, 0) == d && at(n, c, 0, x) == d
        })
    }

    pub fn commutative(n: usize, c: &[(u8, u8)]) -> bool {
        (0..n).all(|x| (0..n).all(|y| at(n, c, x, y) == at(n, c, y, x)))
    }

    /// All orderings of `1..n` with 0 kept in place.
    pub fn perms(n: usize) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        let mut cur = vec![0u8];
        let mut used = vec![false; n];
        fn go(n: usize, cur: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<Vec<u8>>) {
            if cur.len() == n {
                out.push(cur.clone());
                return;
            }
            for v in 1..n {
                if !used[v] {
                    used[v] = true;
                    cur.push(v as u8);
                    go(n, cur, used, out);
                    cur.pop();
                    used[v] = false;
                }
            }
        }
        go(n, &mut cur, &mut used, &mut out);
        out
    }

    /// `p[old] = new`
    pub fn relabel(n: usize, c: &[(u8, u8)], p: &[u8]) -> Cells {
        let mut out = vec![(0, 0); n * n];
        for x in 0..n {
            for y in 0..n {
                let (a, b) = at(n, c, x, y);
                out[p[x] as usize * n + p[y] as usize] = norm(p[a as usize], p[b as usize]);
            }
        }
        out
    }

    pub fn canonical(n: usize, c: &[(u8, u8)], perms: &[Vec<u8>]) -> Cells {
        perms.iter().map(|p| relabel(n, c, p)).min().unwrap()
    }

    pub fn automorphisms(n: usize, c: &[(u8, u8)], perms: &[Vec<u8>]) -> usize {
        perms.iter().filter(|p| relabel(n, c, p) == c).count()
    }

    pub struct Found {
        /// Every labeled table passing all three axioms.
        pub labeled: Vec<Cells>,
        pub classes: BTreeSet<Cells>,
        pub noncommutative: usize,
    }

    fn collect(n: usize, labeled: Vec<Cells>) -> Found {
        let perms = perms(n);
        let classes = labeled.iter().map(|c| canonical(n, c, &perms)).collect();
        let noncommutative = labeled.iter().filter(|c| !commutative(n, c)).count();
        Found {
            labeled,
            classes,
            noncommutative,
        }
    }

    fn skeleton(n: usize) -> Cells {
        let mut c = vec![(0, 0); n * n];
        for x in 0..n {
            c[x] = (x as u8, x as u8);
            c[x * n] = (x as u8, x as u8);
        }
        c
    }

    fn all_pairs(lo: u8, n: usize) -> Vec<(u8, u8)> {
        let mut v = Vec::new();
        for a in lo..n as u8 {
            for b in a..n as u8 {
                v.push((a, b));
            }
        }
        v
    }

    /// Every table with the identity row and column fixed, each remaining
    /// cell ranging over `domain(x, y)`, filtered by the axioms.
    fn cartesian(n: usize, domain: impl Fn(usize, usize) -> Vec<(u8, u8)>) -> Found {
        let free: Vec<(usize, usize)> = (1..n).flat_map(|x| (1..n).map(move |y| (x, y))).collect();
        let doms: Vec<Vec<(u8, u8)>> = free.iter().map(|&(x, y)| domain(x, y)).collect();
        let mut digits = vec![0usize; free.len()];
        let mut c = skeleton(n);
        let mut labeled = Vec::new();
        loop {
            for (k, &(x, y)) in free.iter().enumerate() {
                c[x * n + y] = doms[k][digits[k]];
            }
            if strong_identity(n, &c) && involutive(n, &c) && associative(n, &c) {
                labeled.push(c.clone());
            }
            let mut k = 0;
            loop {
                if k == digits.len() {
                    return collect(n, labeled);
                }
                digits[k] += 1;
                if digits[k] < doms[k].len() {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
        }
    }

    /// Every non-identity cell ranges over all of Sym^2. Feasible for `n <= 3`.
    pub fn cartesian_full(n: usize) -> Found {
        cartesian(n, |_, _| all_pairs(0, n))
    }

    /// Cells range over the pairs allowed by involutivity alone: diagonal
    /// cells contain `e`, off-diagonal cells avoid it. No associativity pruning.
    pub fn cartesian_involutive(n: usize) -> Found {
        cartesian(n, |x, y| {
            if x == y {
                (0..n as u8).map(|a| (0, a)).collect()
            } else {
                all_pairs(1, n)
            }
        })
    }

    /// Row-major backtracking over the same domains as
    /// [`cartesian_involutive`], rejecting a partial table only when some
    /// triple whose products are all assigned fails associativity.
    pub fn backtrack(n: usize) -> Found {
        let free: Vec<(usize, usize)> = (1..n).flat_map(|x| (1..n).map(move |y| (x, y))).collect();
        let mut c = skeleton(n);
        let mut known = vec![false; n * n];
        for x in 0..n {
            known[x] = true;
            known[x * n] = true;
        }
        let mut labeled = Vec::new();
        go(n, &free, 0, &mut c, &mut known, &mut labeled);
        collect(n, labeled)
    }

    fn decided(n: usize, c: &[(u8, u8)], known: &[bool], x: usize, y: usize, z: usize) -> bool {
        if !known[x * n + y] || !known[y * n + z] {
            return false;
        }
        let (a1, a2) = c[x * n + y];
        let (b1, b2) = c[y * n + z];
        known[a1 as usize * n + z]
            && known[a2 as usize * n + z]
            && known[x * n + b1 as usize]
            && known[x * n + b2 as usize]
    }

    fn go(
        n: usize,
        free: &[(usize, usize)],
        k: usize,
        c: &mut Cells,
        known: &mut Vec<bool>,
        out: &mut Vec<Cells>,
    ) {
        if k == free.len() {
            out.push(c.clone());
            return;
        }
        let (x, y) = free[k];
        let dom: Vec<(u8, u8)> = if x == y {
            (0..n as u8).map(|a| (0, a)).collect()
        } else {
            all_pairs(1, n)
        };
        known[x * n + y] = true;
        for v in dom {
            c[x * n + y] = v;
            let ok = (1..n).all(|p| {
                (1..n).all(|q| {
                    (1..n).all(|r| !decided(n, c, known, p, q, r) || triple_ok(n, c, p, q, r))
                })
            });
            if ok {
                go(n, free, k + 1, c, known, out);
            }
        }
        known[x * n + y] = false;
        c[x * n + y] = (0, 0);
    }
}

pub fn to_cells(t: &Table) -> oracle::Cells {
    t.cells()
        .iter()
        .map(|p| (p.lo().0 as u8, p.hi().0 as u8))
        .collect()
}

pub fn from_cells(n: usize, c: &[(u8, u8)]) -> Table {
    let cells = c
        .iter()
        .map(|&(a, b)| Pair::new(Element(a.into()), Element(b.into())))
        .collect();
    Table::new(n, cells, None).unwrap()
}
