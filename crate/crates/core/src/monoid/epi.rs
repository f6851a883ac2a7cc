//! Bounded epimorphism testing.
//!
//! A map `f : A -> B` is an epimorphism when restriction
//! `Hom(B, T) -> Hom(A, T)` is injective for every commutative monoid `T`.
//! Structural localizations are epimorphisms outright; everything else is
//! tested against all finite monoids up to a size bound, which can only
//! produce a bounded verdict or an explicit counterexample.

use super::{enumerate_commutative_monoids, hom_enumerate, MonoidHom};
use crate::error::{Budget, Result};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub enum EpiVerdict {
    /// The map carries a structural certificate (identity or localization).
    ProvenStructurally,
    /// No counterexample among finite targets of size up to the bound.
    VerifiedUpTo(usize),
    /// Two distinct homs out of the target agreeing on the source.
    CounterexampleFound(Box<(MonoidHom, MonoidHom)>),
}

impl EpiVerdict {
    pub fn is_epi_so_far(&self) -> bool {
        !matches!(self, EpiVerdict::CounterexampleFound(_))
    }
}

pub fn is_epimorphism_bounded(f: &MonoidHom, bound: usize, budget: &Budget) -> Result<EpiVerdict> {
    if f.structural.is_some() {
        return Ok(EpiVerdict::ProvenStructurally);
    }
    for size in 1..=bound {
        for t in enumerate_commutative_monoids(size, true) {
            let homs = hom_enumerate(&f.target, &t, budget)?;
            // Compare restrictions along f on the source generators.
            let mut restricted: Vec<Vec<super::MonoidElement>> = Vec::new();
            for g in &homs {
                let mut images = Vec::new();
                for x in &f.images {
                    images.push(g.apply(x, budget)?);
                }
                restricted.push(images);
            }
            for i in 0..homs.len() {
                for j in i + 1..homs.len() {
                    if restricted[i] == restricted[j] {
                        return Ok(EpiVerdict::CounterexampleFound(Box::new((
                            homs[i].clone(),
                            homs[j].clone(),
                        ))));
                    }
                }
            }
        }
    }
    Ok(EpiVerdict::VerifiedUpTo(bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::ExponentVector;
    use crate::monoid::{identity_hom, localize, AffineMonoid, Monoid, MonoidElement};

    #[test]
    fn localization_is_structurally_epi() {
        let b = Budget::default();
        let (_, hom) = localize(
            &Monoid::n(),
            &[MonoidElement::Vector(ExponentVector::new(vec![1]))],
            &b,
        )
        .unwrap();
        assert!(matches!(
            is_epimorphism_bounded(&hom, 2, &b).unwrap(),
            EpiVerdict::ProvenStructurally
        ));
    }

    #[test]
    fn identity_is_structurally_epi() {
        let b = Budget::default();
        let id = identity_hom(&Monoid::n());
        assert!(matches!(
            is_epimorphism_bounded(&id, 2, &b).unwrap(),
            EpiVerdict::ProvenStructurally
        ));
    }

    #[test]
    fn diagonal_into_plane_is_not_epi() {
        // N -> N^2, 1 |-> (1,1). Two distinct maps N^2 -> {1, 0} agree on it.
        let b = Budget::default();
        let source = Monoid::n();
        let target = Monoid::Affine(AffineMonoid::free(2));
        let f = MonoidHom::new(
            source,
            target,
            vec![MonoidElement::Vector(ExponentVector::new(vec![1, 1]))],
            &b,
        )
        .unwrap();
        match is_epimorphism_bounded(&f, 2, &b).unwrap() {
            EpiVerdict::CounterexampleFound(pair) => {
                let (g1, g2) = *pair;
                assert_ne!(g1.images, g2.images);
            }
            other => panic!("expected counterexample, got {:?}", other),
        }
    }
}
