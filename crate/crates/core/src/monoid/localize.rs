//! Localization of monoids: inverting a finite set of elements.
//!
//! The canonical map carries a structural certificate; localizations are the
//! structural examples of Zariski open immersions on the affine level.

use super::{AffineMonoid, FiniteMonoid, Monoid, MonoidElement, MonoidHom, StructuralClass};
use crate::error::{Budget, Error, Result};
use crate::exponent::ExponentVector;

/// Invert the elements `s` in `m`. Returns the localized monoid together
/// with the canonical map, flagged as a structural localization.
///
/// Affine monoids keep their generators with `s` adjoined and marked
/// invertible; finite monoids localize onto the slice at the idempotent
/// power of the product of `s`.
pub fn localize(m: &Monoid, s: &[MonoidElement], budget: &Budget) -> Result<(Monoid, MonoidHom)> {
    for x in s {
        if !m.contains(x)? {
            return Err(Error::invalid(format!("{:?} is not an element of the monoid", x)));
        }
    }
    match m {
        Monoid::Affine(am) => {
            let mut vectors: Vec<ExponentVector> = Vec::new();
            for x in s {
                match x {
                    MonoidElement::Vector(v) => vectors.push(v.clone()),
                    _ => return Err(Error::invalid("affine localization takes vectors")),
                }
            }
            let mut gens: Vec<ExponentVector> = am.gens().to_vec();
            let mut inverted: Vec<usize> = am.inverted_indices().iter().copied().collect();
            for v in &vectors {
                match gens.iter().position(|g| g == v) {
                    Some(i) => inverted.push(i),
                    None => {
                        gens.push(v.clone());
                        inverted.push(gens.len() - 1);
                    }
                }
            }
            let localized = AffineMonoid::new(am.dim(), gens, inverted)?;
            let target = Monoid::Affine(localized);
            let images: Vec<MonoidElement> =
                am.gens().iter().cloned().map(MonoidElement::Vector).collect();
            let hom = MonoidHom::new(m.clone(), target.clone(), images, budget)?
                .with_structural(StructuralClass::Localization { inverted: s.to_vec() });
            Ok((target, hom))
        }
        Monoid::Finite(fm) => {
            let mut product = fm.unit;
            for x in s {
                match x {
                    MonoidElement::Index(i) => product = fm.op(product, *i),
                    _ => return Err(Error::invalid("finite localization takes element indices")),
                }
            }
            let e = fm.idempotent_power(product);
            // Carrier: e * M with unit e. The product of s becomes invertible
            // and the map has the right universal property.
            let mut carrier: Vec<usize> = (0..fm.size()).map(|x| fm.op(e, x)).collect();
            carrier.sort_unstable();
            carrier.dedup();
            let names: Vec<String> = carrier.iter().map(|&i| fm.elements[i].clone()).collect();
            let unit_pos = carrier.binary_search(&e).expect("idempotent is in its own slice");
            let table: Vec<Vec<usize>> = carrier
                .iter()
                .map(|&a| {
                    carrier
                        .iter()
                        .map(|&b| carrier.binary_search(&fm.op(a, b)).expect("slice is closed"))
                        .collect()
                })
                .collect();
            let localized = FiniteMonoid::new(names, unit_pos, table)?;
            let target = Monoid::Finite(localized);
            let images: Vec<MonoidElement> = (0..fm.size())
                .map(|x| {
                    MonoidElement::Index(
                        carrier.binary_search(&fm.op(e, x)).expect("slice is closed"),
                    )
                })
                .collect();
            let hom = MonoidHom::new(m.clone(), target.clone(), images, budget)?
                .with_structural(StructuralClass::Localization { inverted: s.to_vec() });
            Ok((target, hom))
        }
        Monoid::Fp(_) => Err(Error::unsupported(
            "localization of finitely presented monoids is not implemented",
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::named_monoid;

    fn ev(v: &[i64]) -> MonoidElement {
        MonoidElement::Vector(ExponentVector::new(v.to_vec()))
    }

    #[test]
    fn localize_n_at_one_gives_z() {
        let b = Budget::default();
        let (loc, hom) = localize(&Monoid::n(), &[ev(&[1])], &b).unwrap();
        let am = loc.as_affine().unwrap();
        assert!(am.contains(&ExponentVector::new(vec![-1])).unwrap());
        assert!(matches!(hom.structural, Some(StructuralClass::Localization { .. })));
        assert!(am.is_same_submonoid(&AffineMonoid::lattice(1)).unwrap());
    }

    #[test]
    fn localize_plane_at_first_axis() {
        let b = Budget::default();
        let m = Monoid::Affine(AffineMonoid::free(2));
        let (loc, _) = localize(&m, &[ev(&[1, 0])], &b).unwrap();
        let am = loc.as_affine().unwrap();
        assert!(am.contains(&ExponentVector::new(vec![-1, 0])).unwrap());
        assert!(!am.contains(&ExponentVector::new(vec![0, -1])).unwrap());
    }

    #[test]
    fn localize_at_existing_unit_is_isomorphism() {
        let b = Budget::default();
        let (loc, _) = localize(&Monoid::z(), &[ev(&[5])], &b).unwrap();
        let am = loc.as_affine().unwrap();
        assert!(am.is_same_submonoid(&AffineMonoid::lattice(1)).unwrap());
    }

    #[test]
    fn localize_idempotent_up_to_isomorphism() {
        let b = Budget::default();
        let m = Monoid::Affine(AffineMonoid::free(2));
        let s = [ev(&[1, 0])];
        let (once, _) = localize(&m, &s, &b).unwrap();
        let (twice, _) = localize(&once, &s, &b).unwrap();
        assert!(once
            .as_affine()
            .unwrap()
            .is_same_submonoid(twice.as_affine().unwrap())
            .unwrap());
    }

    #[test]
    fn localize_finite_absorbing_at_zero_collapses() {
        let b = Budget::default();
        let m = named_monoid("triv").unwrap();
        let abs = Monoid::Finite(FiniteMonoid::with_absorbing_zero());
        // Inverting the absorbing element collapses everything.
        let (loc, hom) = localize(&abs, &[MonoidElement::Index(1)], &b).unwrap();
        assert_eq!(loc.as_finite().unwrap().size(), 1);
        assert!(loc.as_finite().unwrap().find_isomorphism(m.as_finite().unwrap()).is_some());
        assert!(hom.structural.is_some());
    }

    #[test]
    fn localize_truncated_cycle_gives_cyclic_group() {
        // N truncated at 3 with period 2: {0,1,2,3}, 4 = 2. Inverting the
        // generator yields the cyclic group of order 2 (the slice at the
        // idempotent).
        let b = Budget::default();
        let table: Vec<Vec<usize>> = (0..4)
            .map(|i| (0..4).map(|j| if i + j <= 3 { i + j } else { 2 + (i + j) % 2 }).collect())
            .collect();
        let names = (0..4).map(|i| i.to_string()).collect();
        let m = Monoid::Finite(FiniteMonoid::new(names, 0, table).unwrap());
        let (loc, _) = localize(&m, &[MonoidElement::Index(1)], &b).unwrap();
        let c2 = FiniteMonoid::cyclic_group(2).unwrap();
        assert!(loc.as_finite().unwrap().find_isomorphism(&c2).is_some());
    }
}
