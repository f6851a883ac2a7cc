//! Finite commutative monoids given by explicit multiplication tables.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A finite commutative monoid: named elements, a unit index and a full
/// operation table. Commutativity, associativity and the unit law are checked
/// exhaustively at construction.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteMonoid {
    pub elements: Vec<String>,
    pub unit: usize,
    pub table: Vec<Vec<usize>>,
}

impl fmt::Debug for FiniteMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteMonoid{{{}}}", self.elements.join(","))
    }
}

impl FiniteMonoid {
    pub fn new(elements: Vec<String>, unit: usize, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::invalid("a monoid needs at least a unit element"));
        }
        if unit >= n || table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("operation table has wrong shape"));
        }
        for row in &table {
            for &x in row {
                if x >= n {
                    return Err(Error::invalid("operation table entry out of range"));
                }
            }
        }
        for i in 0..n {
            if table[unit][i] != i || table[i][unit] != i {
                return Err(Error::invalid("unit law fails"));
            }
            for j in 0..n {
                if table[i][j] != table[j][i] {
                    return Err(Error::invalid("operation is not commutative"));
                }
                for k in 0..n {
                    if table[table[i][j]][k] != table[i][table[j][k]] {
                        return Err(Error::invalid("operation is not associative"));
                    }
                }
            }
        }
        Ok(FiniteMonoid { elements, unit, table })
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn pow(&self, a: usize, n: u64) -> usize {
        let mut acc = self.unit;
        for _ in 0..n {
            acc = self.op(acc, a);
        }
        acc
    }

    /// The trivial monoid `{1}`.
    pub fn trivial() -> Self {
        FiniteMonoid::new(vec!["1".into()], 0, vec![vec![0]]).unwrap()
    }

    /// The cyclic group of order `n` written additively.
    pub fn cyclic_group(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("cyclic group order must be positive"));
        }
        let elements = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        FiniteMonoid::new(elements, 0, table)
    }

    /// The two-element monoid `{1, 0}` with absorbing `0` (multiplication).
    pub fn with_absorbing_zero() -> Self {
        FiniteMonoid::new(vec!["1".into(), "0".into()], 0, vec![vec![0, 1], vec![1, 1]]).unwrap()
    }

    pub fn direct_product(a: &FiniteMonoid, b: &FiniteMonoid) -> Self {
        let mut elements = Vec::new();
        for x in &a.elements {
            for y in &b.elements {
                elements.push(format!("({x},{y})"));
            }
        }
        let nb = b.size();
        let idx = |i: usize, j: usize| i * nb + j;
        let n = a.size() * nb;
        let mut table = vec![vec![0usize; n]; n];
        for i1 in 0..a.size() {
            for j1 in 0..nb {
                for i2 in 0..a.size() {
                    for j2 in 0..nb {
                        table[idx(i1, j1)][idx(i2, j2)] = idx(a.op(i1, i2), b.op(j1, j2));
                    }
                }
            }
        }
        FiniteMonoid::new(elements, idx(a.unit, b.unit), table).unwrap()
    }

    /// Indices of invertible elements.
    pub fn unit_indices(&self) -> Vec<usize> {
        (0..self.size())
            .filter(|&a| (0..self.size()).any(|b| self.op(a, b) == self.unit))
            .collect()
    }

    /// Inverse of `a`, when it exists (unique in a commutative monoid).
    pub fn inverse(&self, a: usize) -> Option<usize> {
        (0..self.size()).find(|&b| self.op(a, b) == self.unit)
    }

    pub fn is_group(&self) -> bool {
        self.unit_indices().len() == self.size()
    }

    /// First power of `a` that is idempotent. Exists in any finite monoid.
    pub fn idempotent_power(&self, a: usize) -> usize {
        let mut x = a;
        for _ in 0..2 * self.size() + 2 {
            if self.op(x, x) == x {
                return x;
            }
            x = self.op(x, a);
        }
        unreachable!("no idempotent power found in a finite monoid");
    }

    /// Is `subset` (by indices) a submonoid closed under saturation:
    /// `x*y in F` implies `x in F` and `y in F`?
    pub fn is_saturated_submonoid(&self, subset: &[usize]) -> bool {
        let member = |i: usize| subset.contains(&i);
        if !member(self.unit) {
            return false;
        }
        for &a in subset {
            for &b in subset {
                if !member(self.op(a, b)) {
                    return false;
                }
            }
        }
        for a in 0..self.size() {
            for b in 0..self.size() {
                if member(self.op(a, b)) && (!member(a) || !member(b)) {
                    return false;
                }
            }
        }
        true
    }

    /// Monoid isomorphism search by permutation backtracking.
    pub fn find_isomorphism(&self, other: &FiniteMonoid) -> Option<Vec<usize>> {
        if self.size() != other.size() {
            return None;
        }
        let n = self.size();
        let mut perm: Vec<Option<usize>> = vec![None; n];
        let mut used = vec![false; n];
        perm[self.unit] = Some(other.unit);
        used[other.unit] = true;
        fn go(
            a: &FiniteMonoid,
            b: &FiniteMonoid,
            perm: &mut Vec<Option<usize>>,
            used: &mut Vec<bool>,
            pos: usize,
        ) -> bool {
            let n = a.size();
            if pos == n {
                for i in 0..n {
                    for j in 0..n {
                        if perm[a.op(i, j)] != Some(b.op(perm[i].unwrap(), perm[j].unwrap())) {
                            return false;
                        }
                    }
                }
                return true;
            }
            if perm[pos].is_some() {
                return go(a, b, perm, used, pos + 1);
            }
            for cand in 0..n {
                if used[cand] {
                    continue;
                }
                perm[pos] = Some(cand);
                used[cand] = true;
                // Partial consistency: products among assigned elements.
                let ok = (0..n).all(|i| {
                    (0..n).all(|j| match (perm[i], perm[j], perm[a.op(i, j)]) {
                        (Some(pi), Some(pj), Some(pk)) => b.op(pi, pj) == pk,
                        _ => true,
                    })
                });
                if ok && go(a, b, perm, used, pos + 1) {
                    return true;
                }
                perm[pos] = None;
                used[cand] = false;
            }
            false
        }
        if go(self, other, &mut perm, &mut used, 0) {
            Some(perm.into_iter().map(|x| x.unwrap()).collect())
        } else {
            None
        }
    }
}

/// Enumerate all commutative monoid tables on `{0..size-1}` with unit `0`,
/// optionally deduplicated up to isomorphism. Order is deterministic.
pub fn enumerate_commutative_monoids(size: usize, up_to_iso: bool) -> Vec<FiniteMonoid> {
    if size == 0 {
        return Vec::new();
    }
    let mut out: Vec<FiniteMonoid> = Vec::new();
    let n = size;
    let mut table = vec![vec![usize::MAX; n]; n];
    for i in 0..n {
        table[0][i] = i;
        table[i][0] = i;
    }
    // Free cells: (i, j) with 1 <= i <= j.
    let cells: Vec<(usize, usize)> = (1..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();

    fn assoc_ok(table: &[Vec<usize>], n: usize) -> bool {
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                if ab == usize::MAX {
                    continue;
                }
                for c in 0..n {
                    let bc = table[b][c];
                    if bc == usize::MAX {
                        continue;
                    }
                    let left = table[ab][c];
                    let right = table[a][bc];
                    if left != usize::MAX && right != usize::MAX && left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn fill(
        table: &mut Vec<Vec<usize>>,
        cells: &[(usize, usize)],
        pos: usize,
        n: usize,
        out: &mut Vec<FiniteMonoid>,
    ) {
        if pos == cells.len() {
            let elements = (0..n).map(|i| format!("e{i}")).collect();
            if let Ok(m) = FiniteMonoid::new(elements, 0, table.clone()) {
                out.push(m);
            }
            return;
        }
        let (i, j) = cells[pos];
        for v in 0..n {
            table[i][j] = v;
            table[j][i] = v;
            if assoc_ok(table, n) {
                fill(table, cells, pos + 1, n, out);
            }
        }
        table[i][j] = usize::MAX;
        table[j][i] = usize::MAX;
    }

    fill(&mut table, &cells, 0, n, &mut out);

    if up_to_iso {
        let mut reps: Vec<FiniteMonoid> = Vec::new();
        for m in out {
            if !reps.iter().any(|r| r.find_isomorphism(&m).is_some()) {
                reps.push(m);
            }
        }
        reps
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_associative_table() {
        // Force (1*1)*2 != 1*(1*2) by hand-building a bad table on 3 elements.
        let bad = FiniteMonoid::new(
            vec!["1".into(), "a".into(), "b".into()],
            0,
            vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 1]],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn cyclic_group_units() {
        let g = FiniteMonoid::cyclic_group(4).unwrap();
        assert!(g.is_group());
        assert_eq!(g.inverse(1), Some(3));
    }

    #[test]
    fn absorbing_zero_units() {
        let m = FiniteMonoid::with_absorbing_zero();
        assert_eq!(m.unit_indices(), vec![0]);
        assert_eq!(m.idempotent_power(1), 1);
    }

    #[test]
    fn monoid_counts_small_sizes() {
        // Classical counts up to isomorphism: 1 of order 1, 2 of order 2,
        // 5 commutative of order 3.
        assert_eq!(enumerate_commutative_monoids(1, true).len(), 1);
        assert_eq!(enumerate_commutative_monoids(2, true).len(), 2);
        assert_eq!(enumerate_commutative_monoids(3, true).len(), 5);
    }

    #[test]
    fn isomorphism_detects_relabeling() {
        let a = FiniteMonoid::cyclic_group(3).unwrap();
        // Relabel elements 1 <-> 2.
        let b = FiniteMonoid::new(
            vec!["0".into(), "x".into(), "y".into()],
            0,
            vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
        )
        .unwrap();
        assert!(a.find_isomorphism(&b).is_some());
        let c = FiniteMonoid::with_absorbing_zero();
        assert!(a.find_isomorphism(&c).is_none());
    }

    #[test]
    fn saturated_submonoids_of_absorbing() {
        let m = FiniteMonoid::with_absorbing_zero();
        assert!(m.is_saturated_submonoid(&[0]));
        assert!(m.is_saturated_submonoid(&[0, 1]));
        // {0 (the absorbing element alone, no unit)} is not a submonoid.
        assert!(!m.is_saturated_submonoid(&[1]));
    }
}
