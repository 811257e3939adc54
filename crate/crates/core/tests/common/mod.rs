//! Test-side oracles. They work from the Cayley table alone and share no code with the
//! library's coset, elimination or operator routines.
#![allow(dead_code)]

use std::collections::BTreeSet;

use coset_radon::{FiniteGroup, Rational, Subgroup};
use num_traits::{One, Zero};

pub fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Rank by textbook Gauss-Jordan elimination on rationals, with no pivoting heuristics.
pub fn gauss_jordan_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let n_rows = rows.len();
    let n_cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..n_cols {
        let Some(p) = (rank..n_rows).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for v in rows[rank].iter_mut() {
            *v = &*v / &pivot;
        }
        for i in 0..n_rows {
            if i != rank && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                for j in 0..n_cols {
                    let delta = &factor * &rows[rank][j];
                    rows[i][j] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Closure of a generating set under multiplication.
pub fn closure(g: &FiniteGroup, gens: &[usize]) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = BTreeSet::from([g.identity()]);
    set.extend(gens.iter().copied());
    loop {
        let products: Vec<usize> =
            set.iter().flat_map(|&a| set.iter().map(move |&b| (a, b))).map(|(a, b)| g.mul(a, b)).collect();
        let before = set.len();
        set.extend(products);
        if set.len() == before {
            return set;
        }
    }
}

/// Every subset closed under multiplication that contains the identity. Only for small orders.
pub fn subgroups_by_subsets(g: &FiniteGroup) -> Vec<BTreeSet<usize>> {
    let n = g.order();
    assert!(n <= 12, "subset enumeration is exponential");
    (0u32..(1 << n))
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect::<BTreeSet<usize>>())
        .filter(|s| s.contains(&g.identity()) && s.iter().all(|&a| s.iter().all(|&b| s.contains(&g.mul(a, b)))))
        .collect()
}

/// Subgroups as the closures of all pairs of elements, then joins until nothing new appears.
pub fn subgroups_by_closure(g: &FiniteGroup) -> BTreeSet<BTreeSet<usize>> {
    let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for a in g.elements() {
        for b in g.elements() {
            found.insert(closure(g, &[a, b]));
        }
    }
    loop {
        let list: Vec<_> = found.iter().cloned().collect();
        let before = found.len();
        for x in &list {
            for y in &list {
                let gens: Vec<usize> = x.union(y).copied().collect();
                found.insert(closure(g, &gens));
            }
        }
        if found.len() == before {
            return found;
        }
    }
}

/// Left cosets `xS` as sets, ordered by their smallest element.
pub fn cosets(g: &FiniteGroup, s: &[usize]) -> Vec<BTreeSet<usize>> {
    let mut out: Vec<BTreeSet<usize>> = Vec::new();
    for x in g.elements() {
        let c: BTreeSet<usize> = s.iter().map(|&h| g.mul(x, h)).collect();
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out.sort_by_key(|c| *c.iter().next().unwrap());
    out
}

pub fn coset_of(cosets: &[BTreeSet<usize>], x: usize) -> usize {
    cosets.iter().position(|c| c.contains(&x)).unwrap()
}

/// `R_{L,H}` with normalized fiber measure: entry `(xH, yL)` is the fraction of `h ∈ H` with `xh ∈ yL`.
pub fn nested_radon_matrix(g: &FiniteGroup, l: &Subgroup, h: &Subgroup) -> Vec<Vec<Rational>> {
    let fine = cosets(g, l.elements());
    let coarse = cosets(g, h.elements());
    coarse
        .iter()
        .map(|c| {
            let x = *c.iter().next().unwrap();
            let mut row = vec![Rational::zero(); fine.len()];
            for &hh in h.elements() {
                row[coset_of(&fine, g.mul(x, hh))] += frac(1, h.len() as i64);
            }
            row
        })
        .collect()
}

/// `R*_{L,H}`: entry `(yL, xH)` is 1 iff `yL ⊆ xH`.
pub fn nested_dual_matrix(g: &FiniteGroup, l: &Subgroup, h: &Subgroup) -> Vec<Vec<Rational>> {
    let fine = cosets(g, l.elements());
    let coarse = cosets(g, h.elements());
    fine.iter()
        .map(|f| coarse.iter().map(|c| if f.is_subset(c) { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Rational::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn is_identity(m: &[Vec<Rational>]) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.len() == m.len() && row.iter().enumerate().all(|(j, v)| if i == j { v.is_one() } else { v.is_zero() })
    })
}

pub fn rows_of(m: &coset_radon::Matrix) -> Vec<Vec<Rational>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// Number of orbits of `S` acting on the right of the cosets `G/L`, by direct orbit search.
pub fn orbit_count(g: &FiniteGroup, l: &[usize], s: &[usize]) -> usize {
    let fine = cosets(g, l);
    let mut seen = vec![false; fine.len()];
    let mut count = 0;
    for start in 0..fine.len() {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(c) = stack.pop() {
            for &x in &fine[c] {
                for &h in s {
                    let d = coset_of(&fine, g.mul(x, h));
                    if !seen[d] {
                        seen[d] = true;
                        stack.push(d);
                    }
                }
            }
        }
    }
    count
}

pub fn conjugate(g: &FiniteGroup, s: &BTreeSet<usize>, g0: usize) -> BTreeSet<usize> {
    let inv = (0..g.order()).find(|&y| g.mul(g0, y) == g.identity()).unwrap();
    s.iter().map(|&k| g.mul(g.mul(inv, k), g0)).collect()
}

pub fn corpus() -> Vec<FiniteGroup> {
    ["Z4", "Z6", "Z2xZ2", "S3", "D4", "Q8", "S4"]
        .iter()
        .map(|n| coset_radon::GroupSpec::from_name(n).unwrap().build().unwrap())
        .collect()
}
