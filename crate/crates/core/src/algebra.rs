//! The base-change ladder F1 -> N -> Z on the algebra side.
//!
//! `N[M]` is the free semimodule on a monoid `M` with convolution product;
//! `Z[M]` is its group-coefficient variant. Group completion sends a monoid
//! to its universal abelian group. Both functors are exposed together with
//! executable forms of their universal properties: algebra maps out of
//! `N[M]` into a finite semiring are exactly monoid maps out of `M` into its
//! multiplicative monoid.

use crate::error::{Budget, Error, Result};
use crate::exponent::ExponentVector;
use crate::linalg;
use crate::monoid::{
    hom_enumerate, FiniteMonoid, FpMonoid, Monoid, MonoidElement, MonoidHom,
};
use crate::semiring::FiniteSemiring;
use num::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BaseRing {
    N,
    Z,
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRing::N => write!(f, "N"),
            BaseRing::Z => write!(f, "Z"),
        }
    }
}

/// A formal coefficient-weighted sum over monoid elements. No zero
/// coefficients are stored and terms are kept in canonical order.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidAlgebraElement {
    pub terms: BTreeMap<MonoidElement, i64>,
}

impl fmt::Debug for MonoidAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{:?}", m)?;
        }
        Ok(())
    }
}

impl MonoidAlgebraElement {
    pub fn zero() -> Self {
        MonoidAlgebraElement { terms: BTreeMap::new() }
    }

    pub fn monomial(m: MonoidElement, c: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(m, c);
        }
        MonoidAlgebraElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// The monoid algebra `base[M]` for a finite or affine monoid `M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidAlgebra {
    pub base: BaseRing,
    pub monoid: Monoid,
}

/// Build `base[M]`. Only finite and affine monoids carry canonical element
/// normal forms, so these are the supported classes.
pub fn monoid_algebra(m: &Monoid, base: BaseRing) -> Result<MonoidAlgebra> {
    match m {
        Monoid::Affine(_) | Monoid::Finite(_) => {
            Ok(MonoidAlgebra { base, monoid: m.clone() })
        }
        Monoid::Fp(_) => Err(Error::unsupported(
            "monoid algebras take finite or affine monoids",
        )),
    }
}

impl MonoidAlgebra {
    pub fn zero(&self) -> MonoidAlgebraElement {
        MonoidAlgebraElement::zero()
    }

    pub fn one(&self) -> MonoidAlgebraElement {
        MonoidAlgebraElement::monomial(self.monoid.unit_element(), 1)
    }

    fn check_coeff(&self, c: i64) -> Result<()> {
        if self.base == BaseRing::N && c < 0 {
            return Err(Error::invalid("negative coefficient over base N"));
        }
        Ok(())
    }

    pub fn from_terms(&self, terms: Vec<(MonoidElement, i64)>) -> Result<MonoidAlgebraElement> {
        let mut out: BTreeMap<MonoidElement, i64> = BTreeMap::new();
        for (m, c) in terms {
            if !self.monoid.contains(&m)? {
                return Err(Error::invalid("term monomial outside the monoid"));
            }
            *out.entry(m).or_insert(0) += c;
        }
        out.retain(|_, c| *c != 0);
        for c in out.values() {
            self.check_coeff(*c)?;
        }
        Ok(MonoidAlgebraElement { terms: out })
    }

    pub fn add(
        &self,
        a: &MonoidAlgebraElement,
        b: &MonoidAlgebraElement,
    ) -> Result<MonoidAlgebraElement> {
        let mut terms = a.terms.clone();
        for (m, c) in &b.terms {
            *terms.entry(m.clone()).or_insert(0) += c;
        }
        terms.retain(|_, c| *c != 0);
        for c in terms.values() {
            self.check_coeff(*c)?;
        }
        Ok(MonoidAlgebraElement { terms })
    }

    /// Convolution product: monomials multiply through the monoid operation.
    pub fn mul(
        &self,
        a: &MonoidAlgebraElement,
        b: &MonoidAlgebraElement,
    ) -> Result<MonoidAlgebraElement> {
        let mut terms: BTreeMap<MonoidElement, i64> = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m = self.monoid.op(ma, mb)?;
                *terms.entry(m).or_insert(0) += ca * cb;
            }
        }
        terms.retain(|_, c| *c != 0);
        for c in terms.values() {
            self.check_coeff(*c)?;
        }
        Ok(MonoidAlgebraElement { terms })
    }

    /// Base-algebra maps `base[M] -> B` correspond to monoid maps
    /// `M -> (B, *)`; this enumerates them through that correspondence.
    pub fn algebra_homs_into(
        &self,
        b: &FiniteSemiring,
        budget: &Budget,
    ) -> Result<Vec<MonoidHom>> {
        if self.base == BaseRing::Z && !b.is_ring() {
            return Err(Error::unsupported(
                "a Z-algebra has no maps into a semiring without subtraction",
            ));
        }
        hom_enumerate(&self.monoid, &b.multiplicative_monoid(), budget)
    }

    /// Canonical pretty form, e.g. `1 + 2*t + t^2`.
    pub fn pretty(&self, x: &MonoidAlgebraElement, names: &dyn Fn(&MonoidElement) -> String) -> String {
        if x.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in &x.terms {
            let mon = names(m);
            let part = if mon == "1" {
                format!("{c}")
            } else if *c == 1 {
                mon
            } else if *c == -1 {
                format!("-{mon}")
            } else {
                format!("{c}*{mon}")
            };
            parts.push(part);
        }
        parts.join(" + ")
    }
}

/// A finitely generated abelian group in invariant factor form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FGAbelianGroup {
    pub free_rank: usize,
    /// Invariant factors, each > 1 and dividing the next.
    pub torsion: Vec<u64>,
}

impl FGAbelianGroup {
    pub fn new(free_rank: usize, torsion: Vec<u64>) -> Result<Self> {
        for w in torsion.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(Error::invalid("invariant factors must divide in order"));
            }
        }
        if torsion.iter().any(|&n| n <= 1) {
            return Err(Error::invalid("invariant factors must exceed 1"));
        }
        Ok(FGAbelianGroup { free_rank, torsion })
    }

    pub fn order(&self) -> Option<u64> {
        if self.free_rank > 0 {
            None
        } else {
            Some(self.torsion.iter().product())
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// The group as a monoid object: a lattice when free, a finite group
    /// table when torsion, a presented monoid when mixed.
    pub fn to_monoid(&self) -> Result<Monoid> {
        if self.free_rank == 0 {
            let mut g = FiniteMonoid::trivial();
            for &n in &self.torsion {
                g = FiniteMonoid::direct_product(&g, &FiniteMonoid::cyclic_group(n as usize)?);
            }
            return Ok(Monoid::Finite(g));
        }
        if self.torsion.is_empty() {
            return Ok(Monoid::Affine(crate::monoid::AffineMonoid::lattice(self.free_rank)));
        }
        // Mixed: generators a_i, b_i with a_i b_i = 1 for the free part, and
        // c_j with c_j^{n_j} = 1 for torsion.
        let n_gens = 2 * self.free_rank + self.torsion.len();
        let mut relations = Vec::new();
        for i in 0..self.free_rank {
            let mut l = vec![0u32; n_gens];
            l[2 * i] = 1;
            l[2 * i + 1] = 1;
            relations.push((l, vec![0u32; n_gens]));
        }
        for (j, &n) in self.torsion.iter().enumerate() {
            let mut l = vec![0u32; n_gens];
            l[2 * self.free_rank + j] = n as u32;
            relations.push((l, vec![0u32; n_gens]));
        }
        let mut fp = FpMonoid::new(n_gens, relations)?;
        fp.certify_confluence();
        Ok(Monoid::Fp(fp))
    }
}

/// The group completion `K(M)` with its canonical map `M -> K(M)`.
///
/// Affine monoids complete to the lattice spanned by their generators
/// (computed through the Smith normal form of the generator matrix); finite
/// monoids complete to the quotient of the free group on their elements by
/// the multiplication relations.
pub fn group_completion(m: &Monoid, budget: &Budget) -> Result<(FGAbelianGroup, MonoidHom)> {
    match m {
        Monoid::Affine(am) => {
            let ext_rows: Vec<Vec<i64>> = am.gens_ext().iter().map(|g| g.0.clone()).collect();
            let basis = linalg::row_lattice_basis(&ext_rows);
            let rank = basis.len();
            let group = FGAbelianGroup::new(rank, vec![])?;
            let n = basis.len();
            let k_monoid = Monoid::Affine(crate::monoid::AffineMonoid::new(
                am.dim(),
                basis.into_iter().map(ExponentVector::new).collect(),
                (0..n).collect(),
            )?);
            let images: Vec<MonoidElement> =
                am.gens().iter().cloned().map(MonoidElement::Vector).collect();
            let hom = MonoidHom::new(m.clone(), k_monoid, images, budget)?;
            Ok((group, hom))
        }
        Monoid::Finite(fm) => {
            let n = fm.size();
            // Relations: e_i + e_j - e_{i*j}, and e_unit.
            let mut rows: Vec<Vec<i64>> = Vec::new();
            let mut unit_row = vec![0i64; n];
            unit_row[fm.unit] = 1;
            rows.push(unit_row);
            for i in 0..n {
                for j in i..n {
                    let mut r = vec![0i64; n];
                    r[i] += 1;
                    r[j] += 1;
                    r[fm.op(i, j)] -= 1;
                    if r.iter().any(|&x| x != 0) {
                        rows.push(r);
                    }
                }
            }
            let s = linalg::smith_normal_form(&rows);
            let free_rank = n - s.rank;
            if free_rank != 0 {
                return Err(Error::invalid(
                    "completion of a finite monoid must be finite",
                ));
            }
            let factors: Vec<u64> = s
                .diag
                .iter()
                .take(s.rank)
                .filter(|d| **d > BigInt::from(1))
                .map(|d| u64::try_from(d.clone()).expect("invariant factor range"))
                .collect();
            let group = FGAbelianGroup::new(0, factors.clone())?;
            let k_monoid = group.to_monoid()?;
            let k_table = k_monoid.as_finite().expect("torsion group is finite");

            // Class of e_i in Z^n / rows: coordinates x * V, torsion parts
            // mod the invariant factors > 1.
            let kept: Vec<(usize, u64)> = s
                .diag
                .iter()
                .take(s.rank)
                .enumerate()
                .filter(|(_, d)| **d > BigInt::from(1))
                .map(|(idx, d)| (idx, u64::try_from(d.clone()).unwrap()))
                .collect();
            let class_of = |elt: usize| -> usize {
                // Coordinates of e_elt in the basis rows of V^-1 are row elt of V.
                let mut index = 0usize;
                // Product group indexing: trivial x Z/n1 x Z/n2 ... built by
                // direct_product folds left, so mixed radix with later factors
                // fastest.
                for &(col, modulus) in &kept {
                    let c = &s.v[elt][col];
                    let m_big = BigInt::from(modulus);
                    let r = ((c % &m_big) + &m_big) % &m_big;
                    let r: u64 = u64::try_from(r).unwrap();
                    index = index * modulus as usize + r as usize;
                }
                index
            };
            let images: Vec<MonoidElement> =
                (0..n).map(|i| MonoidElement::Index(class_of(i))).collect();
            debug_assert_eq!(
                k_table.size() as u64,
                factors.iter().product::<u64>().max(1)
            );
            let hom = MonoidHom::new(m.clone(), k_monoid.clone(), images, budget)?;
            Ok((group, hom))
        }
        Monoid::Fp(_) => Err(Error::unsupported(
            "group completion takes finite or affine monoids",
        )),
    }
}

/// Base change `N[M] -> Z[M]`: same monoid, coefficients gain subtraction.
pub fn base_change_n_to_z(a: &MonoidAlgebra) -> Result<MonoidAlgebra> {
    match a.base {
        BaseRing::N => Ok(MonoidAlgebra { base: BaseRing::Z, monoid: a.monoid.clone() }),
        BaseRing::Z => Err(Error::unsupported("algebra is already over Z")),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct UniversalPropertyReport {
    pub monoid_hom_count: usize,
    pub completion_hom_count: usize,
    pub restriction_bijective: bool,
}

impl UniversalPropertyReport {
    pub fn holds(&self) -> bool {
        self.monoid_hom_count == self.completion_hom_count && self.restriction_bijective
    }
}

/// Check by enumeration that restriction along `M -> K(M)` is a bijection
/// `Hom_Grp(K(M), G) -> Hom_Mon(M, G)` for a finite abelian group `G`.
pub fn universal_property_check(
    m: &Monoid,
    g: &FiniteMonoid,
    budget: &Budget,
) -> Result<UniversalPropertyReport> {
    if !g.is_group() {
        return Err(Error::invalid("universal property target must be a group"));
    }
    let (_, canonical) = group_completion(m, budget)?;
    let homs_m = hom_enumerate(m, g, budget)?;
    let homs_k = hom_enumerate(&canonical.target, g, budget)?;

    // Restrict each hom K -> G along the canonical map and compare image
    // tuples on the generators of M.
    let mut restricted: Vec<Vec<MonoidElement>> = Vec::new();
    for h in &homs_k {
        let mut images = Vec::new();
        for x in &canonical.images {
            images.push(h.apply(x, budget)?);
        }
        restricted.push(images);
    }
    let mut targets: Vec<Vec<MonoidElement>> = homs_m.iter().map(|h| h.images.clone()).collect();
    let mut rest_sorted = restricted.clone();
    rest_sorted.sort();
    rest_sorted.dedup();
    targets.sort();
    let injective = rest_sorted.len() == restricted.len();
    let surjective = rest_sorted == targets;
    Ok(UniversalPropertyReport {
        monoid_hom_count: homs_m.len(),
        completion_hom_count: homs_k.len(),
        restriction_bijective: injective && surjective,
    })
}

/// A chart ring presented by binomial relations among named variables:
/// `base[x_1..x_k] / (x^a = x^b)` with invertible variables tracked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraPresentation {
    pub base: BaseRing,
    pub vars: Vec<String>,
    pub inverted_vars: Vec<usize>,
    pub binomials: Vec<(Vec<u32>, Vec<u32>)>,
}

impl AlgebraPresentation {
    /// Present `base[M]` for an affine monoid: one variable per generator,
    /// binomials from the kernel congruence of the generators.
    pub fn of_affine(
        am: &crate::monoid::AffineMonoid,
        base: BaseRing,
        budget: &Budget,
    ) -> Result<AlgebraPresentation> {
        let k = am.gens().len();
        let letters = ["x", "y", "z", "u", "v", "w"];
        let name = |i: usize| -> String {
            if k == 1 {
                "t".to_string()
            } else if i < letters.len() {
                letters[i].to_string()
            } else {
                format!("x{i}")
            }
        };
        let mut vars: Vec<String> = (0..k).map(name).collect();
        let inverted_vars: Vec<usize> = am.inverted_indices().iter().copied().collect();
        for &i in &inverted_vars {
            let inv_name = format!("{}^-1", vars[i]);
            vars.push(inv_name);
        }
        // Congruence pairs run over the extended generators, matching `vars`.
        let binomials = am.congruence_pairs(budget)?;
        Ok(AlgebraPresentation { base, vars, inverted_vars, binomials })
    }

    fn monomial_string(&self, exps: &[u32]) -> String {
        let parts: Vec<String> = exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.vars[i].clone()
                } else {
                    format!("{}^{}", self.vars[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Human-readable ring, e.g. `Z[x,y,z]/(x*z = y^2)`.
    pub fn display(&self) -> String {
        // Inverted pairs display as t, t^-1 without the unit binomial.
        let named: Vec<String> = self.vars.clone();
        let shown_binomials: Vec<String> = self
            .binomials
            .iter()
            .filter(|(a, b)| !self.is_unit_pair_relation(a, b))
            .map(|(a, b)| format!("{} = {}", self.monomial_string(a), self.monomial_string(b)))
            .collect();
        let head = format!("{}[{}]", self.base, named.join(","));
        if shown_binomials.is_empty() {
            head
        } else {
            format!("{}/({})", head, shown_binomials.join(", "))
        }
    }

    /// Is this binomial just `x * x^-1 = 1` for an inverted pair?
    fn is_unit_pair_relation(&self, a: &[u32], b: &[u32]) -> bool {
        if b.iter().any(|&e| e != 0) {
            return false;
        }
        let support: Vec<usize> = a
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect();
        if support.len() != 2 || a.iter().sum::<u32>() != 2 {
            return false;
        }
        let k = self.vars.len() - self.inverted_vars.len();
        // Pair (i, k + pos) where inverted_vars[pos] = i.
        support[1] >= k && self.inverted_vars[support[1] - k] == support[0]
    }
}

/// Verify on samples that the semiring laws hold in `base[M]`:
/// associativity and distributivity on deterministic pseudo-random elements.
pub fn check_semiring_laws(alg: &MonoidAlgebra, samples: &[MonoidAlgebraElement]) -> Result<bool> {
    for a in samples {
        for b in samples {
            for c in samples {
                let ab_c = alg.mul(&alg.mul(a, b)?, c)?;
                let a_bc = alg.mul(a, &alg.mul(b, c)?)?;
                if ab_c != a_bc {
                    return Ok(false);
                }
                let left = alg.mul(a, &alg.add(b, c)?)?;
                let right = alg.add(&alg.mul(a, b)?, &alg.mul(a, c)?)?;
                if left != right {
                    return Ok(false);
                }
                let comm = alg.mul(b, a)?;
                if comm != alg.mul(a, b)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{named_monoid, AffineMonoid};

    fn budget() -> Budget {
        Budget::default()
    }

    fn vector(v: &[i64]) -> MonoidElement {
        MonoidElement::Vector(ExponentVector::new(v.to_vec()))
    }

    #[test]
    fn polynomial_square_in_n_of_n() {
        // (1 + t)^2 = 1 + 2t + t^2 in N[N].
        let alg = monoid_algebra(&Monoid::n(), BaseRing::N).unwrap();
        let one_plus_t = alg
            .from_terms(vec![(vector(&[0]), 1), (vector(&[1]), 1)])
            .unwrap();
        let sq = alg.mul(&one_plus_t, &one_plus_t).unwrap();
        let expect = alg
            .from_terms(vec![(vector(&[0]), 1), (vector(&[1]), 2), (vector(&[2]), 1)])
            .unwrap();
        assert_eq!(sq, expect);
    }

    #[test]
    fn negative_coefficients_rejected_over_n() {
        let alg = monoid_algebra(&Monoid::n(), BaseRing::N).unwrap();
        assert!(alg.from_terms(vec![(vector(&[0]), -1)]).is_err());
        let z_alg = base_change_n_to_z(&alg).unwrap();
        assert!(z_alg.from_terms(vec![(vector(&[0]), -1)]).is_ok());
    }

    #[test]
    fn z_of_z2_is_x_squared_minus_one_quotient() {
        // In Z[Z/2] the generator squares to 1.
        let z2 = named_monoid("Z/2").unwrap();
        let alg = monoid_algebra(&z2, BaseRing::Z).unwrap();
        let g = MonoidAlgebraElement::monomial(MonoidElement::Index(1), 1);
        let sq = alg.mul(&g, &g).unwrap();
        assert_eq!(sq, alg.one());
    }

    #[test]
    fn ring_homs_of_z_z2_into_f3_count_two() {
        // By the adjunction: monoid maps Z/2 -> (F_3, *).
        let z2 = named_monoid("Z/2").unwrap();
        let alg = monoid_algebra(&z2, BaseRing::Z).unwrap();
        let f3 = FiniteSemiring::galois_field(3).unwrap();
        let homs = alg.algebra_homs_into(&f3, &budget()).unwrap();
        assert_eq!(homs.len(), 2);
    }

    #[test]
    fn completion_of_n_is_z() {
        let (g, hom) = group_completion(&Monoid::n(), &budget()).unwrap();
        assert_eq!(g.free_rank, 1);
        assert!(g.torsion.is_empty());
        // The canonical map is the inclusion into the lattice.
        let k = hom.target.as_affine().unwrap();
        assert!(k.contains(&ExponentVector::new(vec![-1])).unwrap());
    }

    #[test]
    fn completion_of_absorbing_monoid_is_trivial() {
        let m = Monoid::Finite(FiniteMonoid::with_absorbing_zero());
        let (g, _) = group_completion(&m, &budget()).unwrap();
        assert!(g.is_trivial());
    }

    #[test]
    fn completion_of_quadric_chart_is_rank_two() {
        let m = Monoid::Affine(
            AffineMonoid::new(
                2,
                vec![
                    ExponentVector::new(vec![1, 0]),
                    ExponentVector::new(vec![1, 1]),
                    ExponentVector::new(vec![1, 2]),
                ],
                vec![],
            )
            .unwrap(),
        );
        let (g, _) = group_completion(&m, &budget()).unwrap();
        assert_eq!(g.free_rank, 2);
        assert!(g.torsion.is_empty());
    }

    #[test]
    fn completion_of_group_is_identity() {
        let z3 = named_monoid("Z/3").unwrap();
        let (g, hom) = group_completion(&z3, &budget()).unwrap();
        assert_eq!(g.torsion, vec![3]);
        // The canonical map is injective here.
        let mut images = hom.images.clone();
        images.sort();
        images.dedup();
        assert_eq!(images.len(), 3);
    }

    #[test]
    fn universal_property_examples() {
        let b = budget();
        let z3 = named_monoid("Z/3").unwrap();
        let g3 = z3.as_finite().unwrap();
        let rep = universal_property_check(&Monoid::n(), g3, &b).unwrap();
        assert_eq!(rep.monoid_hom_count, 3);
        assert!(rep.holds());

        let z2 = named_monoid("Z/2").unwrap();
        let rep = universal_property_check(&z2, z2.as_finite().unwrap(), &b).unwrap();
        assert_eq!(rep.monoid_hom_count, 2);
        assert!(rep.holds());

        let abs = Monoid::Finite(FiniteMonoid::with_absorbing_zero());
        let z5 = named_monoid("Z/5").unwrap();
        let rep = universal_property_check(&abs, z5.as_finite().unwrap(), &b).unwrap();
        assert_eq!(rep.monoid_hom_count, 1);
        assert!(rep.holds());
    }

    #[test]
    fn presentation_of_quadric_chart() {
        let am = AffineMonoid::new(
            2,
            vec![
                ExponentVector::new(vec![1, 0]),
                ExponentVector::new(vec![1, 1]),
                ExponentVector::new(vec![1, 2]),
            ],
            vec![],
        )
        .unwrap();
        let p = AlgebraPresentation::of_affine(&am, BaseRing::Z, &budget()).unwrap();
        assert_eq!(p.display(), "Z[x,y,z]/(x*z = y^2)");
    }

    #[test]
    fn presentation_of_laurent_ring() {
        let am = AffineMonoid::lattice(1);
        let p = AlgebraPresentation::of_affine(&am, BaseRing::Z, &budget()).unwrap();
        assert_eq!(p.display(), "Z[t,t^-1]");
    }

    #[test]
    fn semiring_laws_on_samples() {
        let alg = monoid_algebra(&Monoid::n(), BaseRing::N).unwrap();
        let samples = vec![
            alg.zero(),
            alg.one(),
            alg.from_terms(vec![(vector(&[1]), 2), (vector(&[3]), 1)]).unwrap(),
            alg.from_terms(vec![(vector(&[0]), 1), (vector(&[2]), 5)]).unwrap(),
        ];
        assert!(check_semiring_laws(&alg, &samples).unwrap());
    }

    #[test]
    fn mixed_group_to_monoid() {
        let g = FGAbelianGroup::new(1, vec![2]).unwrap();
        let m = g.to_monoid().unwrap();
        assert!(matches!(m, Monoid::Fp(_)));
        assert!(FGAbelianGroup::new(0, vec![4, 2]).is_err());
    }
}
