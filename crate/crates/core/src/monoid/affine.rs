//! Affine monoids: finitely generated submonoids of `Z^d`.
//!
//! Generators may be marked invertible, in which case their negatives are
//! available too. Internally most computations run over the extended
//! generator list (generators plus negatives of the inverted ones), where
//! every element is a plain `N`-combination.
//!
//! Membership is decided exactly: a positive grading from the dual cone
//! splits the extended generators into a lineality part, whose span is a
//! lattice, and a graded part, whose coefficients are bounded by the degree
//! of the target vector. The remaining search is a finite knapsack.

use crate::cone::RationalCone;
use crate::error::{Budget, Error, Result};
use crate::exponent::ExponentVector;
use crate::linalg;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineMonoid {
    dim: usize,
    gens: Vec<ExponentVector>,
    inverted: BTreeSet<usize>,
}

impl fmt::Debug for AffineMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffineMonoid[")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}", g, if self.inverted.contains(&i) { "±" } else { "" })?;
        }
        write!(f, "]")
    }
}

impl AffineMonoid {
    /// Canonical constructor: sorts generators lexicographically, merges
    /// duplicates (a duplicate marked invertible stays invertible) and drops
    /// zero generators.
    pub fn new(dim: usize, gens: Vec<ExponentVector>, inverted: Vec<usize>) -> Result<Self> {
        let inv_in: BTreeSet<usize> = inverted.into_iter().collect();
        if let Some(&bad) = inv_in.iter().find(|&&i| i >= gens.len()) {
            return Err(Error::invalid(format!("inverted index {bad} out of range")));
        }
        let mut tagged: Vec<(ExponentVector, bool)> = Vec::new();
        for (i, g) in gens.into_iter().enumerate() {
            if g.dim() != dim {
                return Err(Error::invalid(format!(
                    "generator {} has dimension {}, expected {}",
                    g,
                    g.dim(),
                    dim
                )));
            }
            if g.is_zero() {
                continue;
            }
            let inv = inv_in.contains(&i);
            if let Some(existing) = tagged.iter_mut().find(|(h, _)| *h == g) {
                existing.1 |= inv;
            } else {
                tagged.push((g, inv));
            }
        }
        tagged.sort_by(|a, b| a.0.cmp(&b.0));
        let inverted = tagged
            .iter()
            .enumerate()
            .filter(|(_, (_, inv))| *inv)
            .map(|(i, _)| i)
            .collect();
        Ok(AffineMonoid {
            dim,
            gens: tagged.into_iter().map(|(g, _)| g).collect(),
            inverted,
        })
    }

    /// The free monoid `N^n` on the standard basis.
    pub fn free(n: usize) -> Self {
        AffineMonoid::new(n, (0..n).map(|i| ExponentVector::unit(n, i)).collect(), vec![]).unwrap()
    }

    /// The lattice `Z^n`: standard basis, all invertible.
    pub fn lattice(n: usize) -> Self {
        AffineMonoid::new(
            n,
            (0..n).map(|i| ExponentVector::unit(n, i)).collect(),
            (0..n).collect(),
        )
        .unwrap()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[ExponentVector] {
        &self.gens
    }

    pub fn inverted_indices(&self) -> &BTreeSet<usize> {
        &self.inverted
    }

    pub fn is_inverted(&self, i: usize) -> bool {
        self.inverted.contains(&i)
    }

    /// Extended generators: the generators followed by the negatives of the
    /// inverted ones (in generator order). Every element of the monoid is an
    /// `N`-combination of these.
    pub fn gens_ext(&self) -> Vec<ExponentVector> {
        let mut out = self.gens.clone();
        for &i in &self.inverted {
            out.push(self.gens[i].neg());
        }
        out
    }

    /// For an extended index, the inverse's extended index if invertible.
    pub fn ext_inverse_index(&self, ext_idx: usize) -> Option<usize> {
        let k = self.gens.len();
        let inv: Vec<usize> = self.inverted.iter().copied().collect();
        if ext_idx < k {
            inv.iter().position(|&i| i == ext_idx).map(|p| k + p)
        } else {
            Some(inv[ext_idx - k])
        }
    }

    /// The recession cone spanned by the extended generators.
    pub fn recession_cone(&self) -> RationalCone {
        RationalCone::new(self.dim, self.gens_ext()).expect("generators validated at construction")
    }

    fn grading(&self) -> Grading {
        let ext = self.gens_ext();
        let cone = self.recession_cone();
        let dual = cone.dual();
        let mut w = ExponentVector::zero(self.dim);
        for u in &dual.rays {
            w = w.add(u);
        }
        let mut lineality = Vec::new();
        let mut graded = Vec::new();
        for (i, g) in ext.iter().enumerate() {
            let d = w.dot(g);
            debug_assert!(d >= 0, "grading must be nonnegative on generators");
            if d == 0 {
                lineality.push(i);
            } else {
                graded.push((i, d));
            }
        }
        let lin_rows: Vec<Vec<i64>> = lineality.iter().map(|&i| ext[i].0.clone()).collect();
        Grading { w, ext, lineality, graded, lin_lattice: linalg::row_lattice_basis(&lin_rows) }
    }

    /// Exact membership test.
    pub fn contains(&self, v: &ExponentVector) -> Result<bool> {
        Ok(self.express(v, &Budget::default())?.is_some())
    }

    pub fn contains_with(&self, v: &ExponentVector, budget: &Budget) -> Result<bool> {
        Ok(self.express(v, budget)?.is_some())
    }

    /// Express `v` as an `N`-combination of the extended generators.
    /// Returns `None` when `v` is not an element of the monoid.
    pub fn express(&self, v: &ExponentVector, budget: &Budget) -> Result<Option<Vec<u32>>> {
        if v.dim() != self.dim {
            return Err(Error::invalid("element dimension mismatch"));
        }
        let g = self.grading();
        let target = g.w.dot(v);
        if target < 0 {
            return Ok(None);
        }
        // Enumerate coefficient tuples on the graded part with exact degree.
        let mut coeffs = vec![0u32; g.ext.len()];
        let found = self.knapsack(&g, v, target, 0, &mut coeffs, &mut 0, budget)?;
        Ok(found)
    }

    #[allow(clippy::too_many_arguments)]
    fn knapsack(
        &self,
        g: &Grading,
        v: &ExponentVector,
        remaining: i64,
        pos: usize,
        coeffs: &mut Vec<u32>,
        steps: &mut u64,
        budget: &Budget,
    ) -> Result<Option<Vec<u32>>> {
        *steps += 1;
        if *steps > budget.max_steps {
            return Err(Error::budget("membership search", *steps, budget.max_steps));
        }
        if pos == g.graded.len() {
            if remaining != 0 {
                return Ok(None);
            }
            // Residual must lie in the lineality lattice.
            let mut residual = v.clone();
            for (i, &c) in coeffs.iter().enumerate() {
                if c > 0 {
                    residual = residual.sub(&g.ext[i].scale(c as i64));
                }
            }
            let lin_rows: Vec<Vec<i64>> = g.lineality.iter().map(|&i| g.ext[i].0.clone()).collect();
            match self.express_in_lineality(g, &lin_rows, &residual)? {
                Some(lin_coeffs) => {
                    let mut full = coeffs.clone();
                    for (slot, &i) in g.lineality.iter().enumerate() {
                        full[i] = lin_coeffs[slot];
                    }
                    Ok(Some(full))
                }
                None => Ok(None),
            }
        } else {
            let (idx, deg) = g.graded[pos];
            let maxc = remaining / deg;
            for c in 0..=maxc {
                coeffs[idx] = c as u32;
                if let Some(ans) =
                    self.knapsack(g, v, remaining - c * deg, pos + 1, coeffs, steps, budget)?
                {
                    coeffs[idx] = 0;
                    return Ok(Some(ans));
                }
            }
            coeffs[idx] = 0;
            Ok(None)
        }
    }

    /// Express a vector of the lineality lattice as an `N`-combination of the
    /// lineality generators. The lineality generators positively span their
    /// space, so an integer solution can always be repaired to a nonnegative
    /// one by adding relations that sum to zero.
    fn express_in_lineality(
        &self,
        g: &Grading,
        lin_rows: &[Vec<i64>],
        residual: &ExponentVector,
    ) -> Result<Option<Vec<u32>>> {
        if lin_rows.is_empty() {
            return Ok(if residual.is_zero() { Some(Vec::new()) } else { None });
        }
        let Some(z_sol) = linalg::lattice_solve(lin_rows, &residual.0) else {
            return Ok(None);
        };
        let m = lin_rows.len();
        let mut sol: Vec<i64> = z_sol;
        // For each lineality generator l_j, find a nonnegative combination of
        // all lineality generators equal to -N_j * l_j; adding it together
        // with N_j * e_j leaves the value unchanged and raises coefficient j.
        for j in 0..m {
            while sol[j] < 0 {
                let lift = self.positive_zero_relation(g, lin_rows, j)?;
                let deficit = -sol[j];
                let times = deficit / lift[j] as i64 + 1;
                for (i, &c) in lift.iter().enumerate() {
                    sol[i] += times * c as i64;
                }
            }
        }
        Ok(Some(sol.into_iter().map(|x| x as u32).collect()))
    }

    /// A nonnegative relation vector `n` with `sum n_i * l_i = 0` and
    /// `n[j] > 0`, obtained from `-l_j` in the rational cone of the
    /// lineality generators.
    fn positive_zero_relation(&self, _g: &Grading, lin_rows: &[Vec<i64>], j: usize) -> Result<Vec<u32>> {
        let neg = ExponentVector::new(lin_rows[j].clone()).neg();
        // -l_j = sum q_i l_i with rational q_i >= 0; clear denominators.
        let m = lin_rows.len();
        for size in 1..=m.min(self.dim.max(1)) {
            let mut subset = Vec::new();
            if let Some(q) = search_nonneg_combination(lin_rows, &neg, size, 0, &mut subset) {
                let mut rel = vec![0u32; m];
                let mut denom_lcm: i64 = 1;
                for (_, den) in &q {
                    denom_lcm = denom_lcm / crate::exponent::gcd(denom_lcm, *den) * *den;
                }
                for ((num, den), &i) in q.iter().zip(subset.iter()) {
                    rel[i] = (*num * (denom_lcm / *den)) as u32;
                }
                rel[j] += denom_lcm as u32;
                debug_assert!(rel[j] > 0);
                // Verify it really sums to zero.
                let mut total = ExponentVector::zero(self.dim);
                for (i, &c) in rel.iter().enumerate() {
                    total = total.add(&ExponentVector::new(lin_rows[i].clone()).scale(c as i64));
                }
                if total.is_zero() {
                    return Ok(rel);
                }
            }
        }
        // The lineality generators positively span their space, so this
        // search cannot fail on legitimate input.
        Err(Error::invalid("failed to build positive zero relation"))
    }

    /// The group of invertible elements: the lattice spanned by the
    /// lineality generators, returned with every generator marked invertible.
    pub fn units(&self) -> AffineMonoid {
        let g = self.grading();
        let basis = g.lin_lattice.clone();
        let n = basis.len();
        AffineMonoid::new(
            self.dim,
            basis.into_iter().map(ExponentVector::new).collect(),
            (0..n).collect(),
        )
        .expect("unit lattice basis is valid")
    }

    /// Faces of the monoid: for each face of the recession cone, the subset
    /// of extended generators lying on it. The face submonoid is generated by
    /// exactly that subset.
    pub fn face_generator_sets(&self) -> Result<Vec<Vec<ExponentVector>>> {
        let ext = self.gens_ext();
        let dual = self.recession_cone().dual();
        let m = dual.rays.len();
        if m > 20 {
            return Err(Error::budget("face enumeration (dual rays)", 1 << m.min(63), 1 << 20));
        }
        let mut seen: BTreeSet<Vec<ExponentVector>> = BTreeSet::new();
        for mask in 0..(1u64 << m) {
            let active: Vec<&ExponentVector> =
                (0..m).filter(|&i| mask & (1 << i) != 0).map(|i| &dual.rays[i]).collect();
            let mut face: Vec<ExponentVector> = ext
                .iter()
                .filter(|g| active.iter().all(|u| u.dot(g) == 0))
                .cloned()
                .collect();
            face.sort();
            face.dedup();
            seen.insert(face);
        }
        Ok(seen.into_iter().collect())
    }

    /// Equality as submonoids of the same ambient lattice.
    pub fn is_same_submonoid(&self, other: &AffineMonoid) -> Result<bool> {
        if self.dim != other.dim {
            return Ok(false);
        }
        for g in self.gens_ext() {
            if !other.contains(&g)? {
                return Ok(false);
            }
        }
        for g in other.gens_ext() {
            if !self.contains(&g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Generators of the kernel congruence over the extended generators:
    /// pairs `(a, b)` of multidegrees with equal value, whose congruence
    /// closure contains every such pair. Computed as the Hilbert basis of the
    /// cone `{(a, b) >= 0 : sum a_i g_i = sum b_i g_i}`.
    pub fn congruence_pairs(&self, budget: &Budget) -> Result<Vec<(Vec<u32>, Vec<u32>)>> {
        let ext = self.gens_ext();
        let k = ext.len();
        if k == 0 {
            return Ok(Vec::new());
        }
        // Kernel of (g | -g) as a sublattice of Z^{2k}.
        let mat: Vec<Vec<i64>> = (0..self.dim)
            .map(|row| {
                let mut r: Vec<i64> = ext.iter().map(|g| g.0[row]).collect();
                r.extend(ext.iter().map(|g| -g.0[row]));
                r
            })
            .collect();
        let kernel = linalg::integer_kernel(&mat);
        if kernel.is_empty() {
            return Ok(Vec::new());
        }
        let s = kernel.len();
        // The congruence cone in kernel coordinates: { t : sum_j t_j K_j >= 0 }.
        let normals: Vec<ExponentVector> = (0..2 * k)
            .map(|i| ExponentVector::new(kernel.iter().map(|kr| kr[i]).collect()))
            .collect();
        let t_cone = RationalCone::new(s, normals)?.dual();
        // Rays of the congruence cone back in Z^{2k}.
        let mut rays: Vec<ExponentVector> = Vec::new();
        for t in &t_cone.rays {
            let mut x = vec![0i64; 2 * k];
            for (j, kr) in kernel.iter().enumerate() {
                for (i, xe) in x.iter_mut().enumerate() {
                    *xe += t.0[j] * kr[i];
                }
            }
            let v = ExponentVector::new(x);
            debug_assert!(v.0.iter().all(|&c| c >= 0));
            if !v.is_zero() {
                rays.push(v.primitive());
            }
        }
        rays.sort();
        rays.dedup();

        // Gordan bound: irreducibles have total degree at most the sum of the
        // ray degrees. Enumerate N^{2k} points with bounded degree satisfying
        // the kernel equations by DFS over compositions.
        let total: i64 = rays.iter().map(|r| r.0.iter().sum::<i64>()).sum();
        let mut points: Vec<ExponentVector> = Vec::new();
        let mut cursor: Vec<i64> = Vec::new();
        let mut steps: u64 = 0;
        enumerate_compositions(2 * k, total, &mut cursor, &mut steps, budget, &mut |coords| {
            let a = &coords[..k];
            let b = &coords[k..];
            let mut ok = true;
            for row in 0..self.dim {
                let mut acc = 0i64;
                for i in 0..k {
                    acc += ext[i].0[row] * (a[i] - b[i]);
                }
                if acc != 0 {
                    ok = false;
                    break;
                }
            }
            if ok {
                let v = ExponentVector::new(coords.to_vec());
                if !v.is_zero() {
                    points.push(v);
                }
            }
        })?;
        budget.check("congruence enumeration", steps)?;

        points.sort_by_key(|p| (p.0.iter().sum::<i64>(), p.clone()));
        let set: BTreeSet<ExponentVector> = points.iter().cloned().collect();
        let mut pairs = Vec::new();
        for p in &points {
            let deg: i64 = p.0.iter().sum();
            let reducible = points
                .iter()
                .take_while(|q| q.0.iter().sum::<i64>() < deg)
                .any(|q| fits_le(q, p) && set.contains(&p.sub(q)));
            if reducible {
                continue;
            }
            let a: Vec<u32> = p.0[..k].iter().map(|&x| x as u32).collect();
            let b: Vec<u32> = p.0[k..].iter().map(|&x| x as u32).collect();
            if a == b {
                continue;
            }
            let (hi, lo) = if a > b { (a, b) } else { (b, a) };
            if !pairs.contains(&(hi.clone(), lo.clone())) {
                pairs.push((hi, lo));
            }
        }
        pairs.sort();
        Ok(pairs)
    }
}

fn fits_le(a: &ExponentVector, b: &ExponentVector) -> bool {
    a.0.iter().zip(&b.0).all(|(x, y)| x <= y)
}

fn enumerate_compositions(
    len: usize,
    max_total: i64,
    cursor: &mut Vec<i64>,
    steps: &mut u64,
    budget: &Budget,
    f: &mut impl FnMut(&[i64]),
) -> Result<()> {
    *steps += 1;
    if *steps > budget.max_steps {
        return Err(Error::budget("composition enumeration", *steps, budget.max_steps));
    }
    if cursor.len() == len {
        f(cursor);
        return Ok(());
    }
    for c in 0..=max_total {
        cursor.push(c);
        enumerate_compositions(len, max_total - c, cursor, steps, budget, f)?;
        cursor.pop();
    }
    Ok(())
}

/// Search for a nonnegative rational combination of at most `size`
/// independent rows equal to `target`; returns numerator/denominator pairs.
fn search_nonneg_combination(
    rows: &[Vec<i64>],
    target: &ExponentVector,
    size: usize,
    start: usize,
    subset: &mut Vec<usize>,
) -> Option<Vec<(i64, i64)>> {
    if subset.len() == size {
        let dim = target.dim();
        let a: Vec<Vec<linalg::Rat>> = (0..dim)
            .map(|r| subset.iter().map(|&i| linalg::rat(rows[i][r])).collect())
            .collect();
        let rat_rows: Vec<Vec<linalg::Rat>> =
            subset.iter().map(|&i| linalg::rat_row(&rows[i])).collect();
        if linalg::rank(&rat_rows) < size {
            return None;
        }
        let b: Vec<linalg::Rat> = target.0.iter().map(|&x| linalg::rat(x)).collect();
        let sol = linalg::solve(&a, &b)?;
        if sol.iter().all(|x| !num::Signed::is_negative(x)) {
            return Some(
                sol.iter()
                    .map(|x| {
                        (
                            i64::try_from(x.numer().clone()).expect("numerator range"),
                            i64::try_from(x.denom().clone()).expect("denominator range"),
                        )
                    })
                    .collect(),
            );
        }
        return None;
    }
    for i in start..rows.len() {
        subset.push(i);
        if let Some(ans) = search_nonneg_combination(rows, target, size, i + 1, subset) {
            return Some(ans);
        }
        subset.pop();
    }
    None
}

struct Grading {
    w: ExponentVector,
    ext: Vec<ExponentVector>,
    lineality: Vec<usize>,
    graded: Vec<(usize, i64)>,
    lin_lattice: Vec<Vec<i64>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(v: &[i64]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    #[test]
    fn membership_in_free_monoid() {
        let m = AffineMonoid::free(2);
        assert!(m.contains(&ev(&[2, 3])).unwrap());
        assert!(!m.contains(&ev(&[-1, 0])).unwrap());
    }

    #[test]
    fn membership_with_inverted_generator() {
        // Z x N: e1 invertible, e2 not.
        let m = AffineMonoid::new(2, vec![ev(&[1, 0]), ev(&[0, 1])], vec![0]).unwrap();
        assert!(m.contains(&ev(&[-1, 0])).unwrap());
        assert!(!m.contains(&ev(&[0, -1])).unwrap());
    }

    #[test]
    fn membership_in_numerical_monoid() {
        // <2, 3>: every integer >= 2, and not 1.
        let m = AffineMonoid::new(1, vec![ev(&[2]), ev(&[3])], vec![]).unwrap();
        assert!(m.contains(&ev(&[7])).unwrap());
        assert!(!m.contains(&ev(&[1])).unwrap());
    }

    #[test]
    fn membership_with_hidden_lineality() {
        // Generators 2, -2, 3 on a line generate all of Z.
        let m = AffineMonoid::new(1, vec![ev(&[2]), ev(&[-2]), ev(&[3])], vec![]).unwrap();
        for v in [-5i64, -1, 0, 1, 4] {
            assert!(m.contains(&ev(&[v])).unwrap(), "missing {v}");
        }
        // And 2, -2 alone only generate 2Z.
        let even = AffineMonoid::new(1, vec![ev(&[2]), ev(&[-2])], vec![]).unwrap();
        assert!(even.contains(&ev(&[-4])).unwrap());
        assert!(!even.contains(&ev(&[3])).unwrap());
    }

    #[test]
    fn express_returns_valid_coefficients() {
        let m = AffineMonoid::new(2, vec![ev(&[1, 0]), ev(&[1, 1]), ev(&[1, 2])], vec![]).unwrap();
        let v = ev(&[3, 3]);
        let coeffs = m.express(&v, &Budget::default()).unwrap().unwrap();
        let ext = m.gens_ext();
        let mut acc = ExponentVector::zero(2);
        for (i, &c) in coeffs.iter().enumerate() {
            acc = acc.add(&ext[i].scale(c as i64));
        }
        assert_eq!(acc, v);
    }

    #[test]
    fn units_of_z_cross_n() {
        let m = AffineMonoid::new(2, vec![ev(&[1, 0]), ev(&[0, 1])], vec![0]).unwrap();
        let u = m.units();
        assert!(u.contains(&ev(&[5, 0])).unwrap());
        assert!(!u.contains(&ev(&[0, 1])).unwrap());
        assert_eq!(u.gens().len(), 1);
    }

    #[test]
    fn units_of_free_monoid_trivial() {
        let u = AffineMonoid::free(2).units();
        assert!(u.gens().is_empty());
    }

    #[test]
    fn units_of_even_lattice_not_saturated() {
        let m = AffineMonoid::new(1, vec![ev(&[2]), ev(&[-2])], vec![]).unwrap();
        let u = m.units();
        assert!(u.contains(&ev(&[2])).unwrap());
        assert!(!u.contains(&ev(&[1])).unwrap());
    }

    #[test]
    fn face_sets_of_quadrant() {
        let m = AffineMonoid::free(2);
        let faces = m.face_generator_sets().unwrap();
        // {0}, two rays, the whole quadrant.
        assert_eq!(faces.len(), 4);
    }

    #[test]
    fn congruence_pairs_of_quadric_cone_monoid() {
        // x z = y^2 is the single nontrivial relation.
        let m = AffineMonoid::new(2, vec![ev(&[1, 0]), ev(&[1, 1]), ev(&[1, 2])], vec![]).unwrap();
        let pairs = m.congruence_pairs(&Budget::default()).unwrap();
        assert!(
            pairs.contains(&(vec![1, 0, 1], vec![0, 2, 0]))
                || pairs.contains(&(vec![0, 2, 0], vec![1, 0, 1])),
            "pairs were {:?}",
            pairs
        );
    }

    #[test]
    fn congruence_pairs_of_free_monoid_empty() {
        let pairs = AffineMonoid::free(2).congruence_pairs(&Budget::default()).unwrap();
        assert!(pairs.is_empty());
    }

    #[test]
    fn congruence_pairs_of_lattice() {
        // Z as <g, g^-1>: the pair g * g^-1 = unit.
        let m = AffineMonoid::lattice(1);
        let pairs = m.congruence_pairs(&Budget::default()).unwrap();
        assert_eq!(pairs, vec![(vec![1, 1], vec![0, 0])]);
    }

    #[test]
    fn same_submonoid_detection() {
        let a = AffineMonoid::new(1, vec![ev(&[1])], vec![0]).unwrap();
        let b = AffineMonoid::new(1, vec![ev(&[1]), ev(&[-1])], vec![]).unwrap();
        assert!(a.is_same_submonoid(&b).unwrap());
        let c = AffineMonoid::free(1);
        assert!(!a.is_same_submonoid(&c).unwrap());
    }
}
