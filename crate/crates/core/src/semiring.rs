//! Finite commutative semirings with explicit addition and multiplication
//! tables: finite fields GF(p^k), the Boolean semiring, and Z/n. These are
//! the targets for point counting and matrix group enumeration.

use crate::error::{Error, Result};
use crate::monoid::FiniteMonoid;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteSemiring {
    pub name: String,
    pub elements: Vec<String>,
    pub zero: usize,
    pub one: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
}

impl fmt::Debug for FiniteSemiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

impl FiniteSemiring {
    pub fn new(
        name: String,
        elements: Vec<String>,
        zero: usize,
        one: usize,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = elements.len();
        let shape_ok = |t: &Vec<Vec<usize>>| {
            t.len() == n && t.iter().all(|r| r.len() == n && r.iter().all(|&x| x < n))
        };
        if n == 0 || zero >= n || one >= n || !shape_ok(&add) || !shape_ok(&mul) {
            return Err(Error::invalid("semiring table shape"));
        }
        for i in 0..n {
            if add[zero][i] != i || mul[one][i] != i {
                return Err(Error::invalid("identity laws fail"));
            }
            if mul[zero][i] != zero {
                return Err(Error::invalid("zero must be absorbing"));
            }
            for j in 0..n {
                if add[i][j] != add[j][i] || mul[i][j] != mul[j][i] {
                    return Err(Error::invalid("operations must be commutative"));
                }
                for k in 0..n {
                    if add[add[i][j]][k] != add[i][add[j][k]]
                        || mul[mul[i][j]][k] != mul[i][mul[j][k]]
                    {
                        return Err(Error::invalid("operations must be associative"));
                    }
                    if mul[i][add[j][k]] != add[mul[i][j]][mul[i][k]] {
                        return Err(Error::invalid("distributivity fails"));
                    }
                }
            }
        }
        Ok(FiniteSemiring { name, elements, zero, one, add, mul })
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn add_op(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    pub fn mul_op(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    /// The Boolean semiring {0, 1} with 1 + 1 = 1.
    pub fn boolean() -> Self {
        FiniteSemiring::new(
            "B".into(),
            vec!["0".into(), "1".into()],
            0,
            1,
            vec![vec![0, 1], vec![1, 1]],
            vec![vec![0, 0], vec![0, 1]],
        )
        .unwrap()
    }

    /// The ring Z/n.
    pub fn z_mod(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("modulus must be positive"));
        }
        let elements = (0..n).map(|i| i.to_string()).collect();
        let add = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let mul = (0..n).map(|i| (0..n).map(|j| (i * j) % n).collect()).collect();
        FiniteSemiring::new(format!("Z/{n}"), elements, 0, 1 % n, add, mul)
    }

    /// The field with `q = p^k` elements, built from polynomial arithmetic
    /// over Z/p modulo a monic irreducible of degree k (found by search).
    pub fn galois_field(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q)
            .ok_or_else(|| Error::unsupported(format!("{q} is not a prime power")))?;
        if q > 64 {
            return Err(Error::unsupported("field table limited to q <= 64"));
        }
        let p = p as usize;
        let k = k as usize;
        if k == 1 {
            let mut f = FiniteSemiring::z_mod(p)?;
            f.name = format!("F{p}");
            return Ok(f);
        }
        let modulus = irreducible_poly(p, k);
        // Elements: polynomials of degree < k, base-p digit encoding.
        let n = q as usize;
        let decode = |x: usize| -> Vec<usize> {
            let mut digits = vec![0usize; k];
            let mut v = x;
            for d in digits.iter_mut() {
                *d = v % p;
                v /= p;
            }
            digits
        };
        let encode = |poly: &[usize]| -> usize {
            poly.iter().rev().fold(0usize, |acc, &c| acc * p + c)
        };
        let add = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let a = decode(i);
                        let b = decode(j);
                        let sum: Vec<usize> =
                            a.iter().zip(&b).map(|(x, y)| (x + y) % p).collect();
                        encode(&sum)
                    })
                    .collect()
            })
            .collect();
        let mul = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let a = decode(i);
                        let b = decode(j);
                        let mut prod = vec![0usize; 2 * k - 1];
                        for (x, &ca) in a.iter().enumerate() {
                            for (y, &cb) in b.iter().enumerate() {
                                prod[x + y] = (prod[x + y] + ca * cb) % p;
                            }
                        }
                        // Reduce modulo the monic irreducible.
                        for d in (k..prod.len()).rev() {
                            let c = prod[d];
                            if c != 0 {
                                prod[d] = 0;
                                for (e, &mc) in modulus.iter().enumerate().take(k) {
                                    let idx = d - k + e;
                                    prod[idx] = (prod[idx] + c * (p - mc % p)) % p;
                                }
                            }
                        }
                        encode(&prod[..k])
                    })
                    .collect()
            })
            .collect();
        let elements = (0..n)
            .map(|i| {
                let digits = decode(i);
                let terms: Vec<String> = digits
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(d, &c)| match d {
                        0 => c.to_string(),
                        1 if c == 1 => "t".into(),
                        1 => format!("{c}t"),
                        _ if c == 1 => format!("t^{d}"),
                        _ => format!("{c}t^{d}"),
                    })
                    .collect();
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join("+")
                }
            })
            .collect();
        FiniteSemiring::new(format!("F{q}"), elements, 0, 1, add, mul)
    }

    /// Indices of multiplicatively invertible elements.
    pub fn units(&self) -> Vec<usize> {
        (0..self.size())
            .filter(|&a| (0..self.size()).any(|b| self.mul_op(a, b) == self.one))
            .collect()
    }

    pub fn mul_inverse(&self, a: usize) -> Option<usize> {
        (0..self.size()).find(|&b| self.mul_op(a, b) == self.one)
    }

    /// Local in the operative sense: the non-units form an ideal
    /// (closed under addition and absorbing under multiplication).
    pub fn is_local(&self) -> bool {
        let units = self.units();
        let non_unit = |x: usize| !units.contains(&x);
        if units.contains(&self.zero) {
            return false;
        }
        for x in 0..self.size() {
            for y in 0..self.size() {
                if non_unit(x) && non_unit(y) && !non_unit(self.add_op(x, y)) {
                    return false;
                }
                if non_unit(x) && !non_unit(self.mul_op(x, y)) {
                    return false;
                }
            }
        }
        true
    }

    /// The underlying multiplicative monoid.
    pub fn multiplicative_monoid(&self) -> FiniteMonoid {
        FiniteMonoid::new(self.elements.clone(), self.one, self.mul.clone())
            .expect("semiring laws imply a valid monoid")
    }

    /// The underlying additive monoid.
    pub fn additive_monoid(&self) -> FiniteMonoid {
        FiniteMonoid::new(self.elements.clone(), self.zero, self.add.clone())
            .expect("semiring laws imply a valid monoid")
    }

    /// Is this semiring a ring (every element has an additive inverse)?
    pub fn is_ring(&self) -> bool {
        self.additive_monoid().is_group()
    }
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut v = q;
            let mut k = 0;
            while v % p == 0 {
                v /= p;
                k += 1;
            }
            return if v == 1 { Some((p, k)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

/// Smallest monic irreducible polynomial of degree `k` over Z/p, by direct
/// search: no roots and no monic factor of degree up to k/2.
fn irreducible_poly(p: usize, k: usize) -> Vec<usize> {
    // Candidate encoding: coefficients of 1, t, ..., t^{k-1}; leading coeff 1.
    let total = (p as u64).pow(k as u32);
    for enc in 0..total {
        let mut cand = vec![0usize; k + 1];
        let mut v = enc;
        for c in cand.iter_mut().take(k) {
            *c = (v % p as u64) as usize;
            v /= p as u64;
        }
        cand[k] = 1;
        if is_irreducible(&cand, p) {
            return cand;
        }
    }
    unreachable!("irreducible polynomials exist in every degree");
}

fn poly_mod(a: &[usize], m: &[usize], p: usize) -> Vec<usize> {
    let mut r: Vec<usize> = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &mc) in m.iter().enumerate() {
                let idx = i + shift;
                r[idx] = (r[idx] + lead * (p - mc % p)) % p;
            }
        }
        r.pop();
    }
    while r.len() > 1 && *r.last().unwrap() == 0 {
        r.pop();
    }
    r
}

fn poly_mul_mod(a: &[usize], b: &[usize], m: &[usize], p: usize) -> Vec<usize> {
    let mut prod = vec![0usize; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_mod(&prod, m, p)
}

fn is_irreducible(f: &[usize], p: usize) -> bool {
    let k = f.len() - 1;
    // x^{p^k} == x mod f, and gcd condition via x^{p^d} != x for proper d | k.
    // Direct smallness: just run trial division by all monic polys of degree
    // <= k/2 (p and k are tiny here).
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for enc in 0..count {
            let mut g = vec![0usize; d + 1];
            let mut v = enc;
            for c in g.iter_mut().take(d) {
                *c = (v % p as u64) as usize;
                v /= p as u64;
            }
            g[d] = 1;
            if poly_divides(&g, f, p) {
                return false;
            }
        }
    }
    true
}

fn poly_divides(g: &[usize], f: &[usize], p: usize) -> bool {
    // Remainder of f by monic g is zero?
    let mut r: Vec<usize> = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (i, &gc) in g.iter().enumerate() {
                let idx = i + shift;
                r[idx] = (r[idx] + lead * (p - gc % p)) % p;
            }
        }
        r.pop();
    }
    r.iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_is_local_semiring_not_ring() {
        let b = FiniteSemiring::boolean();
        assert!(b.is_local());
        assert!(!b.is_ring());
        assert_eq!(b.units(), vec![1]);
    }

    #[test]
    fn gf4_has_multiplicative_group_of_order_three() {
        let f4 = FiniteSemiring::galois_field(4).unwrap();
        assert_eq!(f4.size(), 4);
        assert!(f4.is_ring());
        assert!(f4.is_local());
        assert_eq!(f4.units().len(), 3);
        // Every nonzero cube is one.
        for a in f4.units() {
            let cube = f4.mul_op(f4.mul_op(a, a), a);
            assert_eq!(cube, f4.one);
        }
    }

    #[test]
    fn gf8_and_gf9_sizes() {
        assert_eq!(FiniteSemiring::galois_field(8).unwrap().units().len(), 7);
        assert_eq!(FiniteSemiring::galois_field(9).unwrap().units().len(), 8);
        assert!(FiniteSemiring::galois_field(6).is_err());
    }

    #[test]
    fn z4_is_local_z6_is_not() {
        assert!(FiniteSemiring::z_mod(4).unwrap().is_local());
        assert!(!FiniteSemiring::z_mod(6).unwrap().is_local());
    }

    #[test]
    fn poly_arith_sanity() {
        assert_eq!(super::prime_power(49), Some((7, 2)));
        assert_eq!(super::prime_power(12), None);
        let m = irreducible_poly(2, 2);
        assert_eq!(m, vec![1, 1, 1]); // t^2 + t + 1
        let t = vec![0, 1];
        let sq = poly_mul_mod(&t, &t, &m, 2);
        assert_eq!(sq, vec![1, 1]); // t^2 = t + 1
    }
}
