//! Monoid homomorphisms: construction with exhaustive relation checking,
//! application, composition and enumeration into finite targets.

use super::{FiniteMonoid, Monoid, MonoidElement};
use crate::error::{Budget, Error, Result};
use serde::{Deserialize, Serialize};

/// Certificate classes for maps known to be flat epimorphisms of finite
/// presentation by construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StructuralClass {
    Identity,
    Localization { inverted: Vec<MonoidElement> },
}

/// A homomorphism, stored as the images of the source generators (for a
/// finite source: of every element).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidHom {
    pub source: Monoid,
    pub target: Monoid,
    pub images: Vec<MonoidElement>,
    pub structural: Option<StructuralClass>,
}

fn eval_power_product(
    target: &Monoid,
    images: &[MonoidElement],
    exps: &[u32],
) -> Result<MonoidElement> {
    let mut acc = target.unit_element();
    for (img, &e) in images.iter().zip(exps) {
        for _ in 0..e {
            acc = target.op(&acc, img)?;
        }
    }
    Ok(acc)
}

impl MonoidHom {
    /// Build and validate a homomorphism. For an affine source the images of
    /// inverted generators must be units of the target and the congruence
    /// generators must be satisfied; for a finite source the images form a
    /// full multiplication-respecting element map; for a finitely presented
    /// source every relation must evaluate equal.
    pub fn new(
        source: Monoid,
        target: Monoid,
        images: Vec<MonoidElement>,
        budget: &Budget,
    ) -> Result<Self> {
        let hom = MonoidHom { source, target, images, structural: None };
        hom.validate(budget)?;
        Ok(hom)
    }

    pub(crate) fn new_unchecked(
        source: Monoid,
        target: Monoid,
        images: Vec<MonoidElement>,
    ) -> Self {
        MonoidHom { source, target, images, structural: None }
    }

    pub fn with_structural(mut self, s: StructuralClass) -> Self {
        self.structural = Some(s);
        self
    }

    fn validate(&self, budget: &Budget) -> Result<()> {
        for img in &self.images {
            if !self.target.contains(img)? {
                return Err(Error::invalid(format!(
                    "image {:?} is not an element of the target",
                    img
                )));
            }
        }
        match &self.source {
            Monoid::Finite(m) => {
                if self.images.len() != m.size() {
                    return Err(Error::invalid("finite source needs a full element map"));
                }
                if !self
                    .target
                    .eq_elements(&self.images[m.unit], &self.target.unit_element(), budget)?
                {
                    return Err(Error::invalid("unit is not sent to the unit"));
                }
                for i in 0..m.size() {
                    for j in i..m.size() {
                        let lhs = self.target.op(&self.images[i], &self.images[j])?;
                        let rhs = &self.images[m.op(i, j)];
                        if !self.target.eq_elements(&lhs, rhs, budget)? {
                            return Err(Error::invalid(format!(
                                "map does not respect the product of elements {i} and {j}"
                            )));
                        }
                    }
                }
                Ok(())
            }
            Monoid::Affine(m) => {
                if self.images.len() != m.gens().len() {
                    return Err(Error::invalid("affine source needs one image per generator"));
                }
                let ext_images = self.ext_images(budget)?;
                let pairs = m.congruence_pairs(budget)?;
                for (a, b) in &pairs {
                    let lhs = eval_power_product(&self.target, &ext_images, a)?;
                    let rhs = eval_power_product(&self.target, &ext_images, b)?;
                    if !self.target.eq_elements(&lhs, &rhs, budget)? {
                        return Err(Error::invalid(
                            "generator images violate a defining relation",
                        ));
                    }
                }
                Ok(())
            }
            Monoid::Fp(m) => {
                if self.images.len() != m.n_gens {
                    return Err(Error::invalid("fp source needs one image per generator"));
                }
                for (l, r) in &m.relations {
                    let lhs = eval_power_product(&self.target, &self.images, l)?;
                    let rhs = eval_power_product(&self.target, &self.images, r)?;
                    if !self.target.eq_elements(&lhs, &rhs, budget)? {
                        return Err(Error::invalid(
                            "generator images violate a defining relation",
                        ));
                    }
                }
                Ok(())
            }
        }
    }

    /// Images of the extended generators of an affine source (generators
    /// followed by inverses of the inverted ones).
    pub fn ext_images(&self, budget: &Budget) -> Result<Vec<MonoidElement>> {
        let m = self
            .source
            .as_affine()
            .ok_or_else(|| Error::invalid("ext_images needs an affine source"))?;
        let mut out = self.images.clone();
        for &i in m.inverted_indices() {
            match self.target.inverse(&self.images[i], budget)? {
                Some(inv) => out.push(inv),
                None => {
                    return Err(Error::invalid(format!(
                        "image of inverted generator {:?} is not a unit of the target",
                        self.images[i]
                    )))
                }
            }
        }
        Ok(out)
    }

    /// Apply the homomorphism to an element of the source.
    pub fn apply(&self, x: &MonoidElement, budget: &Budget) -> Result<MonoidElement> {
        match (&self.source, x) {
            (Monoid::Finite(_), MonoidElement::Index(i)) => self
                .images
                .get(*i)
                .cloned()
                .ok_or_else(|| Error::invalid("element index out of range")),
            (Monoid::Affine(m), MonoidElement::Vector(v)) => {
                let coeffs = m
                    .express(v, budget)?
                    .ok_or_else(|| Error::invalid(format!("{v} is not an element of the source")))?;
                let ext_images = self.ext_images(budget)?;
                eval_power_product(&self.target, &ext_images, &coeffs)
            }
            (Monoid::Fp(_), MonoidElement::Word(w)) => {
                eval_power_product(&self.target, &self.images, w)
            }
            _ => Err(Error::invalid("element does not belong to the source")),
        }
    }

    /// Homs agree iff they agree on generators.
    pub fn same_as(&self, other: &MonoidHom, budget: &Budget) -> Result<bool> {
        if self.images.len() != other.images.len() {
            return Ok(false);
        }
        for (a, b) in self.images.iter().zip(&other.images) {
            if !self.target.eq_elements(a, b, budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn identity_hom(m: &Monoid) -> MonoidHom {
    MonoidHom {
        source: m.clone(),
        target: m.clone(),
        images: m.generator_elements(),
        structural: Some(StructuralClass::Identity),
    }
}

/// `g` after `f`.
pub fn compose(g: &MonoidHom, f: &MonoidHom, budget: &Budget) -> Result<MonoidHom> {
    let images: Vec<MonoidElement> = f
        .images
        .iter()
        .map(|x| g.apply(x, budget))
        .collect::<Result<_>>()?;
    let structural = match (&f.structural, &g.structural) {
        (Some(StructuralClass::Identity), s) => s.clone(),
        (s, Some(StructuralClass::Identity)) => s.clone(),
        _ => None,
    };
    Ok(MonoidHom {
        source: f.source.clone(),
        target: g.target.clone(),
        images,
        structural,
    })
}

/// Enumerate all homomorphisms `M -> B` into a finite monoid, in
/// lexicographic order of generator image indices.
pub fn hom_enumerate(m: &Monoid, b: &FiniteMonoid, budget: &Budget) -> Result<Vec<MonoidHom>> {
    let target = Monoid::Finite(b.clone());
    match m {
        Monoid::Affine(am) => {
            let k = am.gens().len();
            let cost = (b.size() as u64)
                .checked_pow(k as u32)
                .ok_or_else(|| Error::budget("hom enumeration", u64::MAX, budget.max_steps))?;
            budget.check("hom enumeration", cost)?;
            let pairs = am.congruence_pairs(budget)?;
            let units: Vec<Option<usize>> = (0..b.size()).map(|x| b.inverse(x)).collect();
            let inverted: Vec<bool> = (0..k).map(|i| am.is_inverted(i)).collect();
            let mut out = Vec::new();
            let mut assignment = vec![0usize; k];
            loop {
                let ok_units = (0..k).all(|i| !inverted[i] || units[assignment[i]].is_some());
                if ok_units {
                    // Extended images: assignment then inverses of inverted.
                    let mut ext: Vec<usize> = assignment.clone();
                    for (i, inv) in inverted.iter().enumerate() {
                        if *inv {
                            ext.push(units[assignment[i]].unwrap());
                        }
                    }
                    let holds = pairs.iter().all(|(x, y)| {
                        let lhs = x
                            .iter()
                            .enumerate()
                            .fold(b.unit, |acc, (i, &e)| (0..e).fold(acc, |a, _| b.op(a, ext[i])));
                        let rhs = y
                            .iter()
                            .enumerate()
                            .fold(b.unit, |acc, (i, &e)| (0..e).fold(acc, |a, _| b.op(a, ext[i])));
                        lhs == rhs
                    });
                    if holds {
                        out.push(MonoidHom::new_unchecked(
                            m.clone(),
                            target.clone(),
                            assignment.iter().map(|&i| MonoidElement::Index(i)).collect(),
                        ));
                    }
                }
                if !advance(&mut assignment, b.size()) {
                    break;
                }
            }
            Ok(out)
        }
        Monoid::Finite(fm) => {
            let n = fm.size();
            let mut images: Vec<Option<usize>> = vec![None; n];
            images[fm.unit] = Some(b.unit);
            let mut out = Vec::new();
            let mut steps: u64 = 0;
            backtrack_finite(fm, b, &mut images, 0, &mut steps, budget, &mut out)?;
            Ok(out
                .into_iter()
                .map(|img| {
                    MonoidHom::new_unchecked(
                        m.clone(),
                        target.clone(),
                        img.into_iter().map(MonoidElement::Index).collect(),
                    )
                })
                .collect())
        }
        Monoid::Fp(fpm) => {
            let k = fpm.n_gens;
            let cost = (b.size() as u64)
                .checked_pow(k as u32)
                .ok_or_else(|| Error::budget("hom enumeration", u64::MAX, budget.max_steps))?;
            budget.check("hom enumeration", cost)?;
            let mut out = Vec::new();
            let mut assignment = vec![0usize; k];
            loop {
                let holds = fpm.relations.iter().all(|(l, r)| {
                    let ev = |w: &[u32]| {
                        w.iter()
                            .enumerate()
                            .fold(b.unit, |acc, (i, &e)| {
                                (0..e).fold(acc, |a, _| b.op(a, assignment[i]))
                            })
                    };
                    ev(l) == ev(r)
                });
                if holds {
                    out.push(MonoidHom::new_unchecked(
                        m.clone(),
                        target.clone(),
                        assignment.iter().map(|&i| MonoidElement::Index(i)).collect(),
                    ));
                }
                if !advance(&mut assignment, b.size()) {
                    break;
                }
            }
            Ok(out)
        }
    }
}

/// Lexicographic odometer; returns false after the last assignment.
fn advance(assignment: &mut [usize], base: usize) -> bool {
    for slot in (0..assignment.len()).rev() {
        assignment[slot] += 1;
        if assignment[slot] < base {
            return true;
        }
        assignment[slot] = 0;
    }
    false
}

fn backtrack_finite(
    src: &FiniteMonoid,
    b: &FiniteMonoid,
    images: &mut Vec<Option<usize>>,
    pos: usize,
    steps: &mut u64,
    budget: &Budget,
    out: &mut Vec<Vec<usize>>,
) -> Result<()> {
    *steps += 1;
    if *steps > budget.max_steps {
        return Err(Error::budget("hom enumeration", *steps, budget.max_steps));
    }
    let n = src.size();
    if pos == n {
        out.push(images.iter().map(|x| x.unwrap()).collect());
        return Ok(());
    }
    if images[pos].is_some() {
        return backtrack_finite(src, b, images, pos + 1, steps, budget, out);
    }
    for cand in 0..b.size() {
        images[pos] = Some(cand);
        let consistent = (0..=pos).all(|i| {
            (0..=pos).all(|j| {
                let k = src.op(i, j);
                match (images[i], images[j], images.get(k).copied().flatten()) {
                    (Some(x), Some(y), Some(z)) => b.op(x, y) == z,
                    _ => true,
                }
            })
        });
        if consistent {
            backtrack_finite(src, b, images, pos + 1, steps, budget, out)?;
        }
        images[pos] = None;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{named_monoid, AffineMonoid, FpMonoid};

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn homs_from_free_monoid_count_target() {
        // Free on one generator: one hom per target element.
        let b = named_monoid("Z/4").unwrap();
        let homs = hom_enumerate(&Monoid::n(), b.as_finite().unwrap(), &budget()).unwrap();
        assert_eq!(homs.len(), 4);
    }

    #[test]
    fn homs_from_z_hit_units_only() {
        // Z into the multiplicative monoid of F_3: images 1 and 2.
        let f3 = named_monoid("Fq*:3").unwrap();
        let homs = hom_enumerate(&Monoid::z(), f3.as_finite().unwrap(), &budget()).unwrap();
        assert_eq!(homs.len(), 2);
    }

    #[test]
    fn homs_to_trivial_monoid() {
        let z2 = named_monoid("Z/2").unwrap();
        let homs = hom_enumerate(&z2, &FiniteMonoid::trivial(), &budget()).unwrap();
        assert_eq!(homs.len(), 1);
    }

    #[test]
    fn finite_source_enumeration_respects_structure() {
        // Z/2 -> Z/4 : the generator can land on 0 or 2.
        let z2 = named_monoid("Z/2").unwrap();
        let z4 = named_monoid("Z/4").unwrap();
        let homs = hom_enumerate(&z2, z4.as_finite().unwrap(), &budget()).unwrap();
        assert_eq!(homs.len(), 2);
    }

    #[test]
    fn fp_source_enumeration() {
        // <a | a^2 = 1> into Z/4 (written additively): 2a = 0 gives a in {0, 2}.
        let m = Monoid::Fp(FpMonoid::cyclic(2).unwrap());
        let z4 = named_monoid("Z/4").unwrap();
        let homs = hom_enumerate(&m, z4.as_finite().unwrap(), &budget()).unwrap();
        assert_eq!(homs.len(), 2);
    }

    #[test]
    fn composition_is_associative_and_unital_on_enumerated_homs() {
        let z2 = named_monoid("Z/2").unwrap();
        let z4 = named_monoid("Z/4").unwrap();
        let z8 = named_monoid("Z/8").unwrap();
        let b = budget();
        let fs = hom_enumerate(&z2, z4.as_finite().unwrap(), &b).unwrap();
        let gs = hom_enumerate(&z4, z8.as_finite().unwrap(), &b).unwrap();
        let hs = hom_enumerate(&z8, z8.as_finite().unwrap(), &b).unwrap();
        for f in &fs {
            let idl = compose(f, &identity_hom(&z2), &b).unwrap();
            let idr = compose(&identity_hom(&z4), f, &b).unwrap();
            assert!(idl.same_as(f, &b).unwrap());
            assert!(idr.same_as(f, &b).unwrap());
            for g in &gs {
                for h in &hs {
                    let left = compose(h, &compose(g, f, &b).unwrap(), &b).unwrap();
                    let right = compose(&compose(h, g, &b).unwrap(), f, &b).unwrap();
                    assert!(left.same_as(&right, &b).unwrap());
                }
            }
        }
    }

    #[test]
    fn invalid_images_rejected() {
        // N^2 / diagonal relation: build the monoid <(1,0),(0,1)> and try to
        // send an inverted generator to a non-unit.
        let m = Monoid::Affine(
            AffineMonoid::new(
                1,
                vec![crate::exponent::ExponentVector::new(vec![1])],
                vec![0],
            )
            .unwrap(),
        );
        let b = named_monoid("Fq*:3").unwrap();
        let bad = MonoidHom::new(
            m.clone(),
            b.clone(),
            vec![MonoidElement::Index(0)], // 0 is not a unit of (F_3, *)
            &budget(),
        );
        assert!(bad.is_err());
    }

    #[test]
    fn affine_budget_error_names_bound() {
        let m = Monoid::Affine(AffineMonoid::free(8));
        let b = named_monoid("Z/6").unwrap();
        let tight = Budget::with_steps(100);
        let err = hom_enumerate(&m, b.as_finite().unwrap(), &tight).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("budget"), "message was {msg}");
        assert!(msg.contains("100"), "message was {msg}");
    }
}
