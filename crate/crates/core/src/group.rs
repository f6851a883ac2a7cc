//! Group objects across the bases: diagonalizable groups, the multiplicative
//! group, and the general linear group in its two incarnations — the
//! F1 model (permutations against invertible scalings) and the matrix
//! functor over a finite semiring or ring.

use crate::algebra::FGAbelianGroup;
use crate::error::{Budget, Error, Result};
use crate::linalg::{self, Rat};
use crate::monoid::{hom_enumerate, FiniteMonoid, Monoid, MonoidElement};
use crate::scheme::{BaseTag, Chart, SchemeAtlas};
use crate::semiring::FiniteSemiring;
use num::{One, Signed, Zero};
use serde::Serialize;

/// A finite group of points with verified axioms.
#[derive(Clone, Debug, Serialize)]
pub struct GroupPoints {
    pub labels: Vec<String>,
    pub unit: usize,
    pub table: Vec<Vec<usize>>,
    pub inverses: Vec<usize>,
}

impl GroupPoints {
    /// Build from labels and a composition table; checks the group axioms
    /// exhaustively.
    pub fn new(labels: Vec<String>, unit: usize, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("composition table has wrong shape"));
        }
        for i in 0..n {
            if table[unit][i] != i || table[i][unit] != i {
                return Err(Error::invalid("unit law fails"));
            }
            for j in 0..n {
                for k in 0..n {
                    if table[table[i][j]][k] != table[i][table[j][k]] {
                        return Err(Error::invalid("composition is not associative"));
                    }
                }
            }
        }
        let mut inverses = vec![usize::MAX; n];
        for i in 0..n {
            match (0..n).find(|&j| table[i][j] == unit && table[j][i] == unit) {
                Some(j) => inverses[i] = j,
                None => return Err(Error::invalid("an element has no inverse")),
            }
        }
        Ok(GroupPoints { labels, unit, table, inverses })
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }
}

/// The diagonalizable group of a finitely generated abelian group `M`:
/// `Spec M` with points `Hom(M, B)` under pointwise multiplication.
#[derive(Clone, Debug)]
pub struct Diagonalizable {
    pub group: FGAbelianGroup,
    pub monoid: Monoid,
}

pub fn diagonalizable(group: FGAbelianGroup) -> Result<Diagonalizable> {
    let monoid = group.to_monoid()?;
    Ok(Diagonalizable { group, monoid })
}

/// The multiplicative group: the diagonalizable group of Z.
pub fn multiplicative_group() -> Diagonalizable {
    diagonalizable(FGAbelianGroup::new(1, vec![]).unwrap()).expect("Z is a valid group")
}

impl Diagonalizable {
    /// The underlying scheme: a single affine chart.
    pub fn as_atlas(&self) -> SchemeAtlas {
        SchemeAtlas::affine(BaseTag::F1, "D", self.monoid.clone(), None)
    }

    /// Points over a finite monoid target, with the pointwise group law.
    pub fn points(&self, target: &FiniteMonoid, budget: &Budget) -> Result<GroupPoints> {
        let homs = hom_enumerate(&self.monoid, target, budget)?;
        let n = homs.len();
        let target_m = Monoid::Finite(target.clone());
        let find = |images: &Vec<MonoidElement>| -> Result<usize> {
            homs.iter()
                .position(|h| &h.images == images)
                .ok_or_else(|| Error::invalid("pointwise product left the hom set"))
        };
        let mut table = vec![vec![0usize; n]; n];
        for (i, f) in homs.iter().enumerate() {
            for (j, g) in homs.iter().enumerate() {
                let prod: Vec<MonoidElement> = f
                    .images
                    .iter()
                    .zip(&g.images)
                    .map(|(a, b)| target_m.op(a, b))
                    .collect::<Result<_>>()?;
                table[i][j] = find(&prod)?;
            }
        }
        let unit_images: Vec<MonoidElement> =
            homs[0].images.iter().map(|_| target_m.unit_element()).collect();
        let unit = find(&unit_images)?;
        let labels = homs
            .iter()
            .map(|h| format!("{:?}", h.images))
            .collect();
        GroupPoints::new(labels, unit, table)
    }
}

/// The F1 model of the general linear group: automorphisms of a free
/// module over a monoid are a permutation together with unit scalings.
#[derive(Clone, Debug)]
pub struct GlnF1 {
    pub n: usize,
}

pub fn gln_f1(n: usize) -> Result<GlnF1> {
    if n == 0 {
        return Err(Error::invalid("rank must be positive"));
    }
    Ok(GlnF1 { n })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        out.push(perm.clone());
        // Next lexicographic permutation.
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    out
}

impl GlnF1 {
    /// The scheme: a disjoint union of `n!` copies of the rank-`n` torus.
    pub fn as_atlas(&self) -> SchemeAtlas {
        let perms = permutations(self.n);
        let charts = perms
            .iter()
            .map(|p| Chart {
                label: format!("perm{:?}", p),
                monoid: Monoid::Affine(crate::monoid::AffineMonoid::lattice(self.n)),
                presentation: None,
            })
            .collect();
        SchemeAtlas::disjoint_union(BaseTag::F1, charts)
    }

    /// Points over a monoid target: pairs of a permutation and a tuple of
    /// units, composing like automorphisms of the free module.
    pub fn points(&self, target: &FiniteMonoid, _budget: &Budget) -> Result<GroupPoints> {
        let units = target.unit_indices();
        let perms = permutations(self.n);
        // Element list: (perm index, unit tuple), lexicographic.
        let tuple_count = units.len().pow(self.n as u32);
        let mut elements: Vec<(usize, Vec<usize>)> = Vec::new();
        for (pi, _) in perms.iter().enumerate() {
            let mut tuple = vec![0usize; self.n];
            for _ in 0..tuple_count {
                elements.push((pi, tuple.iter().map(|&t| units[t]).collect()));
                let mut slot = self.n;
                loop {
                    if slot == 0 {
                        break;
                    }
                    slot -= 1;
                    tuple[slot] += 1;
                    if tuple[slot] < units.len() {
                        break;
                    }
                    tuple[slot] = 0;
                }
            }
        }
        let index_of = |pi: usize, scal: &[usize]| -> usize {
            elements
                .iter()
                .position(|(p, s)| *p == pi && s == scal)
                .expect("closed under composition")
        };
        let n_el = elements.len();
        let mut table = vec![vec![0usize; n_el]; n_el];
        for (gi, (pg, ug)) in elements.iter().enumerate() {
            for (fi, (pf, uf)) in elements.iter().enumerate() {
                // (g after f): basis vector i goes to uf_i * ug_{pf(i)} in
                // coordinate pg(pf(i)).
                let pf_perm = &perms[*pf];
                let pg_perm = &perms[*pg];
                let comp_perm: Vec<usize> = (0..self.n).map(|i| pg_perm[pf_perm[i]]).collect();
                let comp_scal: Vec<usize> =
                    (0..self.n).map(|i| target.op(uf[i], ug[pf_perm[i]])).collect();
                let cp = perms.iter().position(|p| p == &comp_perm).unwrap();
                table[gi][fi] = index_of(cp, &comp_scal);
            }
        }
        let id_perm = perms.iter().position(|p| (0..self.n).all(|i| p[i] == i)).unwrap();
        let unit_scal = vec![target.unit; self.n];
        let unit = index_of(id_perm, &unit_scal);
        let labels = elements
            .iter()
            .map(|(p, s)| format!("(perm{:?},{:?})", perms[*p], s))
            .collect();
        GroupPoints::new(labels, unit, table)
    }
}

/// All invertible `n x n` matrices over a finite semiring, by exhaustive
/// two-sided partner search; the group law is the matrix product.
pub fn gln_points_matrix(n: usize, b: &FiniteSemiring, budget: &Budget) -> Result<GroupPoints> {
    let cells = n * n;
    let total = (b.size() as u64)
        .checked_pow(cells as u32)
        .ok_or_else(|| Error::budget("matrix enumeration", u64::MAX, budget.max_steps))?;
    budget.check("matrix enumeration", total.saturating_mul(2))?;

    let decode = |code: u64| -> Vec<Vec<usize>> {
        let mut m = vec![vec![0usize; n]; n];
        let mut v = code;
        for row in m.iter_mut() {
            for x in row.iter_mut() {
                *x = (v % b.size() as u64) as usize;
                v /= b.size() as u64;
            }
        }
        m
    };
    let encode = |m: &[Vec<usize>]| -> u64 {
        let mut code = 0u64;
        for row in m.iter().rev() {
            for &x in row.iter().rev() {
                code = code * b.size() as u64 + x as u64;
            }
        }
        code
    };
    let mat_mul = |x: &[Vec<usize>], y: &[Vec<usize>]| -> Vec<Vec<usize>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(b.zero, |acc, k| b.add_op(acc, b.mul_op(x[i][k], y[k][j])))
                    })
                    .collect()
            })
            .collect()
    };
    let identity: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { b.one } else { b.zero }).collect())
        .collect();

    // Invertible iff some partner V has UV = VU = 1.
    let mut invertible: Vec<u64> = Vec::new();
    let mut partner: std::collections::BTreeMap<u64, u64> = std::collections::BTreeMap::new();
    for code in 0..total {
        let u = decode(code);
        // Early pruning: a row or column of zeros kills invertibility.
        let zero_row = (0..n).any(|i| (0..n).all(|j| u[i][j] == b.zero));
        let zero_col = (0..n).any(|j| (0..n).all(|i| u[i][j] == b.zero));
        if zero_row || zero_col {
            continue;
        }
        let found = (0..total).find(|&vc| {
            let v = decode(vc);
            mat_mul(&u, &v) == identity && mat_mul(&v, &u) == identity
        });
        if let Some(vc) = found {
            invertible.push(code);
            partner.insert(code, vc);
        }
    }

    let index_of = |code: u64| -> usize {
        invertible.binary_search(&code).expect("product of invertibles is invertible")
    };
    let k = invertible.len();
    let mut table = vec![vec![0usize; k]; k];
    for (i, &ci) in invertible.iter().enumerate() {
        for (j, &cj) in invertible.iter().enumerate() {
            let prod = mat_mul(&decode(ci), &decode(cj));
            table[i][j] = index_of(encode(&prod));
        }
    }
    let unit = index_of(encode(&identity));
    let labels = invertible
        .iter()
        .map(|&c| {
            let m = decode(c);
            let rows: Vec<String> = m
                .iter()
                .map(|r| r.iter().map(|&x| b.elements[x].clone()).collect::<Vec<_>>().join(","))
                .collect();
            format!("[{}]", rows.join(";"))
        })
        .collect();
    GroupPoints::new(labels, unit, table)
}

/// Count invertible matrices over a finite ring through the determinant:
/// invertible iff the determinant is a unit. This route needs subtraction,
/// so it is the ring-side road, independent of the partner search.
pub fn gln_count_via_determinant(n: usize, b: &FiniteSemiring, budget: &Budget) -> Result<u64> {
    if !b.is_ring() {
        return Err(Error::unsupported("determinant route needs a ring"));
    }
    let add_inv: Vec<usize> = (0..b.size())
        .map(|x| {
            (0..b.size())
                .find(|&y| b.add_op(x, y) == b.zero)
                .expect("ring has additive inverses")
        })
        .collect();
    let units = b.units();
    let total = (b.size() as u64)
        .checked_pow((n * n) as u32)
        .ok_or_else(|| Error::budget("matrix enumeration", u64::MAX, budget.max_steps))?;
    budget.check("matrix enumeration", total)?;
    let perms = permutations(n);
    let sign = |p: &[usize]| -> bool {
        let mut inv = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    inv += 1;
                }
            }
        }
        inv % 2 == 0
    };
    let mut count = 0u64;
    for code in 0..total {
        let mut m = vec![vec![0usize; n]; n];
        let mut v = code;
        for row in m.iter_mut() {
            for x in row.iter_mut() {
                *x = (v % b.size() as u64) as usize;
                v /= b.size() as u64;
            }
        }
        let mut det = b.zero;
        for p in &perms {
            let mut prod = b.one;
            for (i, &pi) in p.iter().enumerate() {
                prod = b.mul_op(prod, m[i][pi]);
            }
            if !sign(p) {
                prod = add_inv[prod];
            }
            det = b.add_op(det, prod);
        }
        if units.contains(&det) {
            count += 1;
        }
    }
    Ok(count)
}

/// Is an integer matrix with nonnegative entries invertible over N, i.e.
/// invertible over Q with a nonnegative integer inverse?
pub fn invertible_over_n(matrix: &[Vec<i64>]) -> Result<bool> {
    let n = matrix.len();
    if matrix.iter().any(|r| r.len() != n) {
        return Err(Error::invalid("matrix must be square"));
    }
    if matrix.iter().flatten().any(|&x| x < 0) {
        return Err(Error::invalid("entries must be nonnegative"));
    }
    // Solve M X = I column by column over Q.
    let a: Vec<Vec<Rat>> = matrix.iter().map(|r| linalg::rat_row(r)).collect();
    if linalg::rank(&a) < n {
        return Ok(false);
    }
    for col in 0..n {
        let e: Vec<Rat> = (0..n)
            .map(|i| if i == col { Rat::one() } else { Rat::zero() })
            .collect();
        let x = linalg::solve(&a, &e).expect("full rank implies solvable");
        for entry in &x {
            if entry.is_negative() || !entry.denom().is_one() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Exhaustive search: which nonnegative integer matrices with entries up to
/// `max_entry` are invertible over N? Returns the matrices found.
pub fn n_invertible_matrices(n: usize, max_entry: i64, budget: &Budget) -> Result<Vec<Vec<Vec<i64>>>> {
    let base = (max_entry + 1) as u64;
    let total = base
        .checked_pow((n * n) as u32)
        .ok_or_else(|| Error::budget("matrix enumeration", u64::MAX, budget.max_steps))?;
    budget.check("matrix enumeration", total)?;
    let mut out = Vec::new();
    for code in 0..total {
        let mut m = vec![vec![0i64; n]; n];
        let mut v = code;
        for row in m.iter_mut() {
            for x in row.iter_mut() {
                *x = (v % base) as i64;
                v /= base;
            }
        }
        if invertible_over_n(&m)? {
            out.push(m);
        }
    }
    Ok(out)
}

pub fn is_permutation_matrix(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    (0..n).all(|i| m[i].iter().filter(|&&x| x == 1).count() == 1 && m[i].iter().all(|&x| x == 0 || x == 1))
        && (0..n).all(|j| (0..n).filter(|&i| m[i][j] == 1).count() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::named_monoid;

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn mu_two_over_f3() {
        // The diagonalizable group of Z/2 has two points over (F_3, *).
        let d = diagonalizable(FGAbelianGroup::new(0, vec![2]).unwrap()).unwrap();
        let f3 = named_monoid("Fq*:3").unwrap();
        let g = d.points(f3.as_finite().unwrap(), &budget()).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn multiplicative_group_points_are_units() {
        let gm = multiplicative_group();
        let f5 = named_monoid("Fq*:5").unwrap();
        let g = gm.points(f5.as_finite().unwrap(), &budget()).unwrap();
        assert_eq!(g.order(), 4);
        // Cyclic of order 4: some element has order 4.
        let has_order_4 = (0..g.order()).any(|i| {
            let sq = g.table[i][i];
            sq != g.unit && g.table[sq][sq] == g.unit && g.table[i][sq] != g.unit
        });
        assert!(has_order_4);
    }

    #[test]
    fn diagonalizable_over_trivial_monoid_is_trivial() {
        let d = diagonalizable(FGAbelianGroup::new(0, vec![4]).unwrap()).unwrap();
        let g = d.points(&FiniteMonoid::trivial(), &budget()).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn gln_f1_over_the_initial_base_is_the_symmetric_group() {
        for n in 1..=4 {
            let g = gln_f1(n).unwrap().points(&FiniteMonoid::trivial(), &budget()).unwrap();
            let fact: usize = (1..=n).product();
            assert_eq!(g.order(), fact);
        }
    }

    #[test]
    fn gl1_f1_points_are_units() {
        let f5 = named_monoid("Fq*:5").unwrap();
        let g = gln_f1(1).unwrap().points(f5.as_finite().unwrap(), &budget()).unwrap();
        assert_eq!(g.order(), 4);
    }

    #[test]
    fn gl2_f1_over_f3_has_order_eight() {
        let f3 = named_monoid("Fq*:3").unwrap();
        let g = gln_f1(2).unwrap().points(f3.as_finite().unwrap(), &budget()).unwrap();
        assert_eq!(g.order(), 8);
    }

    #[test]
    fn gl2_matrix_counts_over_small_fields() {
        let f2 = FiniteSemiring::galois_field(2).unwrap();
        let g = gln_points_matrix(2, &f2, &budget()).unwrap();
        assert_eq!(g.order(), 6);
        let f3 = FiniteSemiring::galois_field(3).unwrap();
        let g = gln_points_matrix(2, &f3, &budget()).unwrap();
        assert_eq!(g.order(), 48);
    }

    #[test]
    fn gl2_boolean_is_permutations_only() {
        let bool_sr = FiniteSemiring::boolean();
        let g = gln_points_matrix(2, &bool_sr, &budget()).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn determinant_route_agrees_with_partner_search() {
        for q in [2u64, 3] {
            let f = FiniteSemiring::galois_field(q).unwrap();
            let by_partner = gln_points_matrix(2, &f, &budget()).unwrap().order() as u64;
            let by_det = gln_count_via_determinant(2, &f, &budget()).unwrap();
            assert_eq!(by_partner, by_det);
        }
    }

    #[test]
    fn n_invertibility_examples() {
        assert!(invertible_over_n(&[vec![1, 0], vec![0, 1]]).unwrap());
        assert!(!invertible_over_n(&[vec![1, 1], vec![0, 1]]).unwrap());
        assert!(invertible_over_n(&[vec![0, 1], vec![1, 0]]).unwrap());
        assert!(invertible_over_n(&[vec![2]]).unwrap() == false);
    }

    #[test]
    fn n_matrix_search_finds_exactly_permutations() {
        for n in 1..=2 {
            let found = n_invertible_matrices(n, 2, &budget()).unwrap();
            let fact: usize = (1..=n).product();
            assert_eq!(found.len(), fact);
            assert!(found.iter().all(|m| is_permutation_matrix(m)));
        }
    }

    #[test]
    fn gln_f1_atlas_is_a_disjoint_union_of_tori() {
        let atlas = gln_f1(3).unwrap().as_atlas();
        assert_eq!(atlas.charts.len(), 6);
        let verdict = crate::scheme::validate_atlas(&atlas, &budget()).unwrap();
        assert!(verdict.valid());
    }
}
