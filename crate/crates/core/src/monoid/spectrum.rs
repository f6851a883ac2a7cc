//! Prime spectrum of a commutative monoid.
//!
//! A prime is the complement of a saturated submonoid (a face). Affine
//! monoids take faces of the recession cone; finite monoids enumerate
//! saturated subsets directly. Every commutative monoid is local: the
//! non-units always form the unique maximal ideal.

use super::{AffineMonoid, FiniteMonoid, Monoid};
use crate::error::{Error, Result};
use serde::Serialize;

/// Description of the complement face of a prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FaceDescription {
    /// Generators (from the extended generator list) spanning the face.
    AffineFace { gens: Vec<crate::exponent::ExponentVector> },
    /// Explicit element indices of the face.
    FiniteSubset { elements: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeIdeal {
    pub complement: FaceDescription,
}

impl PrimeIdeal {
    /// Containment of primes (for the partial order by inclusion).
    /// Larger complement face means smaller prime.
    pub fn contains(&self, other: &PrimeIdeal) -> bool {
        match (&self.complement, &other.complement) {
            (FaceDescription::AffineFace { gens: a }, FaceDescription::AffineFace { gens: b }) => {
                a.iter().all(|g| b.contains(g))
            }
            (
                FaceDescription::FiniteSubset { elements: a },
                FaceDescription::FiniteSubset { elements: b },
            ) => a.iter().all(|x| b.contains(x)),
            _ => false,
        }
    }
}

/// All primes of the monoid, in a deterministic order (complement faces
/// sorted; the generic prime, with full complement, comes last).
pub fn prime_spectrum(m: &Monoid) -> Result<Vec<PrimeIdeal>> {
    match m {
        Monoid::Affine(am) => spectrum_affine(am),
        Monoid::Finite(fm) => spectrum_finite(fm),
        Monoid::Fp(_) => Err(Error::unsupported(
            "prime spectrum needs a finite or affine monoid",
        )),
    }
}

fn spectrum_affine(m: &AffineMonoid) -> Result<Vec<PrimeIdeal>> {
    let mut faces = m.face_generator_sets()?;
    faces.sort_by(|a, b| (a.len(), a.clone()).cmp(&(b.len(), b.clone())));
    Ok(faces
        .into_iter()
        .map(|gens| PrimeIdeal { complement: FaceDescription::AffineFace { gens } })
        .collect())
}

fn spectrum_finite(m: &FiniteMonoid) -> Result<Vec<PrimeIdeal>> {
    let n = m.size();
    if n > 20 {
        return Err(Error::budget("finite spectrum subsets", 1 << n.min(63), 1 << 20));
    }
    let mut out = Vec::new();
    for mask in 0..(1u64 << n) {
        let subset: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if m.is_saturated_submonoid(&subset) {
            out.push(PrimeIdeal {
                complement: FaceDescription::FiniteSubset { elements: subset },
            });
        }
    }
    out.sort_by(|a, b| match (&a.complement, &b.complement) {
        (
            FaceDescription::FiniteSubset { elements: x },
            FaceDescription::FiniteSubset { elements: y },
        ) => (x.len(), x.clone()).cmp(&(y.len(), y.clone())),
        _ => std::cmp::Ordering::Equal,
    });
    Ok(out)
}

/// The complement of the units: the maximal ideal. Checks that it really is
/// an ideal (closure under addition of arbitrary elements), which holds in
/// every commutative monoid.
pub fn maximal_ideal_of_finite(m: &FiniteMonoid) -> Vec<usize> {
    let units = m.unit_indices();
    let non_units: Vec<usize> = (0..m.size()).filter(|i| !units.contains(i)).collect();
    for &x in &non_units {
        for y in 0..m.size() {
            let z = m.op(x, y);
            assert!(
                non_units.contains(&z),
                "non-units must absorb under the operation"
            );
        }
    }
    non_units
}

impl Monoid {
    /// The monoid is local: units form a saturated face and its complement is
    /// the unique maximal ideal. Returns the complement description.
    pub fn maximal_ideal(&self) -> Result<FaceDescription> {
        match self {
            Monoid::Finite(m) => Ok(FaceDescription::FiniteSubset {
                elements: maximal_ideal_of_finite(m),
            }),
            Monoid::Affine(m) => {
                let units = m.units();
                let gens = m
                    .gens_ext()
                    .into_iter()
                    .filter(|g| units.contains(g).unwrap_or(false))
                    .collect();
                Ok(FaceDescription::AffineFace { gens })
            }
            Monoid::Fp(_) => Err(Error::unsupported("maximal ideal needs finite or affine")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::named_monoid;

    #[test]
    fn spectrum_of_n_has_two_primes() {
        // Faces of the half-line: {0} and the ray.
        let spec = prime_spectrum(&Monoid::n()).unwrap();
        assert_eq!(spec.len(), 2);
    }

    #[test]
    fn spectrum_of_z_is_a_point() {
        let spec = prime_spectrum(&Monoid::z()).unwrap();
        assert_eq!(spec.len(), 1);
    }

    #[test]
    fn spectrum_of_plane_has_four_primes() {
        let m = Monoid::Affine(AffineMonoid::free(2));
        let spec = prime_spectrum(&m).unwrap();
        assert_eq!(spec.len(), 4);
        // Inclusion order: the maximal ideal (complement {0}) contains all.
        let max = &spec[0];
        assert!(spec.iter().all(|p| max.contains(p)));
    }

    #[test]
    fn spectrum_of_finite_monoids() {
        let abs = Monoid::Finite(FiniteMonoid::with_absorbing_zero());
        // Saturated submonoids of {1, 0}: {1} and {1, 0}.
        assert_eq!(prime_spectrum(&abs).unwrap().len(), 2);
        let group = named_monoid("Z/4").unwrap();
        // A group has only the empty prime.
        assert_eq!(prime_spectrum(&group).unwrap().len(), 1);
    }

    #[test]
    fn complements_pass_the_saturation_check() {
        let m = named_monoid("Fq*:4").unwrap();
        let fm = m.as_finite().unwrap();
        for p in prime_spectrum(&m).unwrap() {
            if let FaceDescription::FiniteSubset { elements } = p.complement {
                assert!(fm.is_saturated_submonoid(&elements));
            }
        }
    }

    #[test]
    fn every_monoid_is_local() {
        let abs = Monoid::Finite(FiniteMonoid::with_absorbing_zero());
        match abs.maximal_ideal().unwrap() {
            FaceDescription::FiniteSubset { elements } => assert_eq!(elements, vec![1]),
            _ => unreachable!(),
        }
        let m = Monoid::Affine(AffineMonoid::new(
            2,
            vec![
                crate::exponent::ExponentVector::new(vec![1, 0]),
                crate::exponent::ExponentVector::new(vec![0, 1]),
            ],
            vec![0],
        )
        .unwrap());
        match m.maximal_ideal().unwrap() {
            FaceDescription::AffineFace { gens } => {
                assert_eq!(gens.len(), 2); // e1 and -e1
            }
            _ => unreachable!(),
        }
    }
}
