//! Exact linear algebra over the rationals and the integers.
//!
//! Everything here is small and dense: the engine works at desk scale
//! (dimensions below ten), so we favour straightforward exact algorithms
//! over asymptotics. Rational elimination uses `BigRational`; the Smith
//! normal form works over `BigInt` and tracks the unimodular transforms on
//! both sides together with their inverses.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_row(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat(x)).collect()
}

/// Solve `A x = b` over the rationals. Returns one solution (free variables
/// set to zero), or `None` when the system is inconsistent.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let rows = a.len();
    if rows == 0 {
        return Some(Vec::new());
    }
    let cols = a[0].len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b.iter())
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..=cols {
                    let sub = &m[r][j] * &f;
                    m[i][j] = &m[i][j] - &sub;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    // Inconsistent when a zero row has nonzero rhs.
    for i in r..rows {
        if !m[i][cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); cols];
    for (row, &c) in pivot_cols.iter().enumerate() {
        x[c] = m[row][cols].clone();
    }
    Some(x)
}

/// Rank of a rational matrix.
pub fn rank(a: &[Vec<Rat>]) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut m = a.to_vec();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let sub = &m[r][j] * &f;
                    m[i][j] = &m[i][j] - &sub;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Basis of the right kernel `{x : A x = 0}` over the rationals.
pub fn kernel(a: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    if rows == 0 {
        return (0..cols)
            .map(|i| {
                let mut e = vec![Rat::zero(); cols];
                e[i] = Rat::one();
                e
            })
            .collect();
    }
    let mut m = a.to_vec();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let sub = &m[r][j] * &f;
                    m[i][j] = &m[i][j] - &sub;
                }
            }
        }
        pivot_of_col[c] = Some(r);
        r += 1;
        if r == rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for c in 0..cols {
            if let Some(pr) = pivot_of_col[c] {
                v[c] = -m[pr][free].clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// Clear denominators and divide by the content, giving a primitive integer
/// vector with the same direction. Zero maps to zero.
pub fn primitive_integer(v: &[Rat]) -> Vec<i64> {
    if v.iter().all(|x| x.is_zero()) {
        return vec![0; v.len()];
    }
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    ints.iter()
        .map(|x| {
            let q = x / &g;
            i64::try_from(q).expect("primitive vector exceeds i64 range")
        })
        .collect()
}

/// Smith normal form `D = U A V` of an integer matrix, with all four
/// transforms. `U`, `V` are unimodular; `diag` satisfies the divisibility
/// chain d1 | d2 | ... and is nonnegative.
#[derive(Debug, Clone)]
pub struct Smith {
    pub diag: Vec<BigInt>,
    pub u: Vec<Vec<BigInt>>,
    pub u_inv: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
    pub v_inv: Vec<Vec<BigInt>>,
    pub rank: usize,
}

struct SmithWork {
    d: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    u_inv: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    v_inv: Vec<Vec<BigInt>>,
}

impl SmithWork {
    // Row i += c * row j, mirrored: U row op, U^-1 inverse column op.
    fn row_add(&mut self, i: usize, j: usize, c: &BigInt) {
        let cols = self.d[0].len();
        for k in 0..cols {
            let add = &self.d[j][k] * c;
            self.d[i][k] += add;
        }
        let n = self.u[0].len();
        for k in 0..n {
            let add = &self.u[j][k] * c;
            self.u[i][k] += add;
        }
        for row in self.u_inv.iter_mut() {
            let sub = &row[i] * c;
            row[j] -= sub;
        }
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        self.d.swap(i, j);
        self.u.swap(i, j);
        for row in self.u_inv.iter_mut() {
            row.swap(i, j);
        }
    }

    fn row_neg(&mut self, i: usize) {
        for x in self.d[i].iter_mut() {
            *x = -x.clone();
        }
        for x in self.u[i].iter_mut() {
            *x = -x.clone();
        }
        for row in self.u_inv.iter_mut() {
            row[i] = -row[i].clone();
        }
    }

    // Col i += c * col j, mirrored on V and V^-1.
    fn col_add(&mut self, i: usize, j: usize, c: &BigInt) {
        for row in self.d.iter_mut() {
            let add = &row[j] * c;
            row[i] += add;
        }
        for row in self.v.iter_mut() {
            let add = &row[j] * c;
            row[i] += add;
        }
        let m = self.v_inv[0].len();
        for k in 0..m {
            let sub = &self.v_inv[i][k] * c;
            self.v_inv[j][k] -= sub;
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        for row in self.d.iter_mut() {
            row.swap(i, j);
        }
        for row in self.v.iter_mut() {
            row.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    fn col_neg(&mut self, i: usize) {
        for row in self.d.iter_mut() {
            row[i] = -row[i].clone();
        }
        for row in self.v.iter_mut() {
            row[i] = -row[i].clone();
        }
        for x in self.v_inv[i].iter_mut() {
            *x = -x.clone();
        }
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// Smith normal form of an integer matrix given as rows.
pub fn smith_normal_form(a: &[Vec<i64>]) -> Smith {
    let n = a.len();
    let m = if n == 0 { 0 } else { a[0].len() };
    let mut w = SmithWork {
        d: a.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect(),
        u: identity(n),
        u_inv: identity(n),
        v: identity(m),
        v_inv: identity(m),
    };

    let mut t = 0;
    while t < n.min(m) {
        // Find a pivot: smallest nonzero entry in the remaining block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..n {
            for j in t..m {
                if !w.d[i][j].is_zero()
                    && pivot
                        .map(|(pi, pj)| w.d[i][j].abs() < w.d[pi][pj].abs())
                        .unwrap_or(true)
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        if w.d[t][t].is_negative() {
            w.row_neg(t);
        }

        // Reduce row and column t; repeat until clean.
        let mut dirty = true;
        while dirty {
            dirty = false;
            for i in t + 1..n {
                if !w.d[i][t].is_zero() {
                    let q = w.d[i][t].div_floor(&w.d[t][t]);
                    let negq = -q;
                    w.row_add(i, t, &negq);
                    if !w.d[i][t].is_zero() {
                        // Remainder became the smaller pivot.
                        w.row_swap(t, i);
                        if w.d[t][t].is_negative() {
                            w.row_neg(t);
                        }
                        dirty = true;
                    }
                }
            }
            for j in t + 1..m {
                if !w.d[t][j].is_zero() {
                    let q = w.d[t][j].div_floor(&w.d[t][t]);
                    let negq = -q;
                    w.col_add(j, t, &negq);
                    if !w.d[t][j].is_zero() {
                        w.col_swap(t, j);
                        if w.d[t][t].is_negative() {
                            w.col_neg(t);
                        }
                        dirty = true;
                    }
                }
            }
        }
        t += 1;
    }

    // Divisibility chain fix-up.
    let r = (0..n.min(m)).take_while(|&i| !w.d[i][i].is_zero()).count();
    let mut i = 0;
    while i + 1 < r {
        let a_i = w.d[i][i].clone();
        let a_j = w.d[i + 1][i + 1].clone();
        if (&a_j % &a_i).is_zero() {
            i += 1;
            continue;
        }
        // Fold d[i+1] into column i and re-run the 2x2 reduction.
        w.col_add(i, i + 1, &BigInt::one());
        let mut done = false;
        while !done {
            done = true;
            if !w.d[i + 1][i].is_zero() {
                let q = w.d[i + 1][i].div_floor(&w.d[i][i]);
                let negq = -q;
                w.row_add(i + 1, i, &negq);
                if !w.d[i + 1][i].is_zero() {
                    w.row_swap(i, i + 1);
                    if w.d[i][i].is_negative() {
                        w.row_neg(i);
                    }
                    done = false;
                    continue;
                }
            }
            if !w.d[i][i + 1].is_zero() {
                let q = w.d[i][i + 1].div_floor(&w.d[i][i]);
                let negq = -q;
                w.col_add(i + 1, i, &negq);
                if !w.d[i][i + 1].is_zero() {
                    w.col_swap(i, i + 1);
                    if w.d[i][i].is_negative() {
                        w.col_neg(i);
                    }
                    done = false;
                }
            }
        }
        if w.d[i][i].is_negative() {
            w.row_neg(i);
        }
        if w.d[i + 1][i + 1].is_negative() {
            w.row_neg(i + 1);
        }
        // Restart the chain check from the beginning; entries changed.
        i = 0;
    }

    let diag: Vec<BigInt> = (0..n.min(m)).map(|i| w.d[i][i].clone()).collect();
    let rank = diag.iter().take_while(|d| !d.is_zero()).count();
    Smith {
        diag,
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
        v_inv: w.v_inv,
        rank,
    }
}

fn bigint_dot(row: &[BigInt], v: &[BigInt]) -> BigInt {
    row.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// Does `v` lie in the lattice spanned (over Z) by `basis` rows?
pub fn in_lattice(basis: &[Vec<i64>], v: &[i64]) -> bool {
    if basis.is_empty() {
        return v.iter().all(|&x| x == 0);
    }
    // Solve x * B = v over Z, i.e. B^T x^T = v^T.
    let bt: Vec<Vec<i64>> = transpose(basis);
    let s = smith_normal_form(&bt);
    let vb: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
    let uv: Vec<BigInt> = s.u.iter().map(|row| bigint_dot(row, &vb)).collect();
    for (i, val) in uv.iter().enumerate() {
        if i < s.rank {
            if !(val % &s.diag[i]).is_zero() {
                return false;
            }
        } else if !val.is_zero() {
            return false;
        }
    }
    true
}

/// Solve `x * B = v` over the integers (`B` given as rows). Returns the
/// coefficient vector when `v` lies in the row lattice.
pub fn lattice_solve(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<i64>> {
    if basis.is_empty() {
        return if v.iter().all(|&x| x == 0) { Some(Vec::new()) } else { None };
    }
    let bt = transpose(basis);
    let s = smith_normal_form(&bt);
    let vb: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
    let uv: Vec<BigInt> = s.u.iter().map(|row| bigint_dot(row, &vb)).collect();
    let n = basis.len();
    let mut y = vec![BigInt::zero(); n];
    for (i, val) in uv.iter().enumerate() {
        if i < s.rank {
            if !(val % &s.diag[i]).is_zero() {
                return None;
            }
            y[i] = val / &s.diag[i];
        } else if !val.is_zero() {
            return None;
        }
    }
    // x^T = V y.
    let x: Vec<i64> = (0..n)
        .map(|i| {
            let c: BigInt = (0..n).map(|j| &s.v[i][j] * &y[j]).sum();
            i64::try_from(c).expect("lattice coefficient exceeds i64")
        })
        .collect();
    Some(x)
}

/// A basis of the lattice spanned over Z by the given rows (not saturated).
pub fn row_lattice_basis(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let d = rows[0].len();
    let s = smith_normal_form(rows);
    // rows(B) = rows(U^-1 D V^-1); basis: d_i * (row i of V^-1), i < rank.
    (0..s.rank)
        .map(|i| {
            (0..d)
                .map(|k| {
                    let c = &s.diag[i] * &s.v_inv[i][k];
                    i64::try_from(c).expect("lattice basis entry exceeds i64")
                })
                .collect()
        })
        .collect()
}

pub fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if a.is_empty() {
        return Vec::new();
    }
    let m = a[0].len();
    (0..m).map(|j| a.iter().map(|row| row[j]).collect()).collect()
}

/// Basis of the integer kernel `{x in Z^m : A x = 0}` (column vectors,
/// returned as rows). The result is a saturated sublattice.
pub fn integer_kernel(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = if n == 0 { 0 } else { a[0].len() };
    if n == 0 {
        return (0..m)
            .map(|i| {
                let mut e = vec![0i64; m];
                e[i] = 1;
                e
            })
            .collect();
    }
    let s = smith_normal_form(a);
    // A x = 0  <=>  D y = 0 with x = V y; basis = columns of V past the rank.
    let mut out = Vec::new();
    for j in s.rank..m {
        let col: Vec<i64> = (0..m)
            .map(|i| i64::try_from(s.v[i][j].clone()).expect("kernel entry exceeds i64"))
            .collect();
        out.push(col);
    }
    out
}

/// Basis of the saturation `span_Q(rows) ∩ Z^d` of the row space.
pub fn saturation(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let d = rows[0].len();
    // Orthogonal complement over Q, cleared to integer rows.
    let rat_rows: Vec<Vec<Rat>> = rows.iter().map(|r| rat_row(r)).collect();
    let comp = kernel(&rat_rows);
    if comp.is_empty() {
        // Full rank: saturation is all of Z^d.
        return (0..d)
            .map(|i| {
                let mut e = vec![0i64; d];
                e[i] = 1;
                e
            })
            .collect();
    }
    let normals: Vec<Vec<i64>> = comp.iter().map(|v| primitive_integer(v)).collect();
    integer_kernel(&normals)
}

/// Coordinates on the quotient Z^d / L for a saturated lattice L.
///
/// `project` maps an ambient vector to its class, `lift` is a section.
#[derive(Debug, Clone)]
pub struct QuotientLattice {
    pub ambient_dim: usize,
    pub sub_rank: usize,
    v: Vec<Vec<BigInt>>,
    v_inv: Vec<Vec<BigInt>>,
}

impl QuotientLattice {
    /// `basis` must be a basis of a saturated sublattice of Z^d.
    pub fn new(basis: &[Vec<i64>], ambient_dim: usize) -> QuotientLattice {
        if basis.is_empty() {
            // Trivial sublattice: quotient is the ambient lattice itself.
            let id: Vec<Vec<BigInt>> = identity(ambient_dim);
            return QuotientLattice {
                ambient_dim,
                sub_rank: 0,
                v: id.clone(),
                v_inv: id,
            };
        }
        let s = smith_normal_form(basis);
        debug_assert!(
            s.diag.iter().take(s.rank).all(|d| d == &BigInt::one()),
            "sublattice must be saturated"
        );
        QuotientLattice {
            ambient_dim,
            sub_rank: s.rank,
            v: s.v,
            v_inv: s.v_inv,
        }
    }

    pub fn quotient_dim(&self) -> usize {
        self.ambient_dim - self.sub_rank
    }

    /// Image of `x` in Z^d / L, in the chosen coordinates.
    pub fn project(&self, x: &[i64]) -> Vec<i64> {
        // x written in the row basis V^-1 has coordinates x * V.
        let xb: Vec<BigInt> = x.iter().map(|&a| BigInt::from(a)).collect();
        (self.sub_rank..self.ambient_dim)
            .map(|j| {
                let c: BigInt = (0..self.ambient_dim).map(|i| &xb[i] * &self.v[i][j]).sum();
                i64::try_from(c).expect("quotient coordinate exceeds i64")
            })
            .collect()
    }

    /// A preferred preimage of a quotient class.
    pub fn lift(&self, q: &[i64]) -> Vec<i64> {
        (0..self.ambient_dim)
            .map(|k| {
                let c: BigInt = (0..self.quotient_dim())
                    .map(|j| BigInt::from(q[j]) * &self.v_inv[self.sub_rank + j][k])
                    .sum();
                i64::try_from(c).expect("lift coordinate exceeds i64")
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_simple() {
        let a = vec![rat_row(&[1, 1]), rat_row(&[1, -1])];
        let b = vec![rat(3), rat(1)];
        let x = solve(&a, &b).unwrap();
        assert_eq!(x, vec![rat(2), rat(1)]);
    }

    #[test]
    fn solve_inconsistent() {
        let a = vec![rat_row(&[1, 1]), rat_row(&[2, 2])];
        let b = vec![rat(1), rat(3)];
        assert!(solve(&a, &b).is_none());
    }

    #[test]
    fn kernel_of_projection() {
        let a = vec![rat_row(&[1, 0, 0])];
        let k = kernel(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(v[0].is_zero());
        }
    }

    #[test]
    fn smith_identity_transforms() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]];
        let s = smith_normal_form(&a);
        // Check D = U A V entrywise.
        let n = 3;
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigInt::zero();
                for p in 0..n {
                    for q in 0..n {
                        acc += &s.u[i][p] * BigInt::from(a[p][q]) * &s.v[q][j];
                    }
                }
                let expect = if i == j { s.diag[i].clone() } else { BigInt::zero() };
                assert_eq!(acc, expect, "entry ({i},{j})");
            }
        }
        // Divisibility chain.
        for i in 0..s.rank - 1 {
            assert!((&s.diag[i + 1] % &s.diag[i]).is_zero());
        }
        // U * U^-1 = I.
        for i in 0..n {
            for j in 0..n {
                let acc: BigInt = (0..n).map(|k| &s.u[i][k] * &s.u_inv[k][j]).sum();
                assert_eq!(acc, if i == j { BigInt::one() } else { BigInt::zero() });
            }
        }
    }

    #[test]
    fn lattice_membership() {
        let basis = vec![vec![2, 0], vec![0, 3]];
        assert!(in_lattice(&basis, &[4, -3]));
        assert!(!in_lattice(&basis, &[1, 0]));
        assert!(in_lattice(&[], &[0, 0]));
        assert!(!in_lattice(&[], &[1, 0]));
    }

    #[test]
    fn integer_kernel_saturated() {
        // Kernel of (1, 1, 2): rank 2, contains (1, -1, 0) and (0, 2, -1).
        let k = integer_kernel(&[vec![1, 1, 2]]);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(v[0] + v[1] + 2 * v[2], 0);
        }
        assert!(in_lattice(&k, &[1, -1, 0]));
        assert!(in_lattice(&k, &[0, 2, -1]));
    }

    #[test]
    fn saturation_of_index_two_lattice() {
        let sat = saturation(&[vec![2, 0], vec![0, 1]]);
        assert!(in_lattice(&sat, &[1, 0]));
        assert!(in_lattice(&sat, &[0, 1]));
    }

    #[test]
    fn quotient_projection_and_lift() {
        // L = span{(1,0,1)}; quotient is Z^2.
        let basis = vec![vec![1, 0, 1]];
        let q = QuotientLattice::new(&basis, 3);
        assert_eq!(q.quotient_dim(), 2);
        assert_eq!(q.project(&[1, 0, 1]), vec![0, 0]);
        let x = [3, -2, 5];
        let p = q.project(&x);
        let l = q.lift(&p);
        // x - lift(project(x)) must lie in L.
        let diff: Vec<i64> = (0..3).map(|i| x[i] - l[i]).collect();
        assert!(in_lattice(&basis, &diff));
    }
}
