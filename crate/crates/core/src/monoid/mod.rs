//! Commutative monoids and their homomorphisms.
//!
//! Three computable classes are supported: affine submonoids of `Z^d`,
//! finite monoids with explicit tables, and finitely presented commutative
//! monoids. The [`Monoid`] enum is the common currency; every element is a
//! [`MonoidElement`] of the matching variant.

mod affine;
mod epi;
mod finite;
mod fp;
mod hom;
mod localize;
mod spectrum;

pub use affine::AffineMonoid;
pub use epi::{is_epimorphism_bounded, EpiVerdict};
pub use finite::{enumerate_commutative_monoids, FiniteMonoid};
pub use fp::{FpMonoid, Word};
pub use hom::{hom_enumerate, identity_hom, MonoidHom, StructuralClass};
pub use localize::localize;
pub use spectrum::{prime_spectrum, FaceDescription, PrimeIdeal};

use crate::error::{Budget, Error, Result};
use crate::exponent::ExponentVector;
use crate::semiring::FiniteSemiring;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Monoid {
    Affine(AffineMonoid),
    Finite(FiniteMonoid),
    Fp(FpMonoid),
}

/// An element of a monoid, in the representation of its class.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MonoidElement {
    /// Lattice vector of an affine monoid.
    Vector(ExponentVector),
    /// Element index of a finite monoid.
    Index(usize),
    /// Commutative word (multidegree) of a finitely presented monoid.
    Word(Vec<u32>),
}

impl fmt::Debug for MonoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidElement::Vector(v) => write!(f, "{}", v),
            MonoidElement::Index(i) => write!(f, "#{}", i),
            MonoidElement::Word(w) => write!(f, "w{:?}", w),
        }
    }
}

impl Monoid {
    pub fn n() -> Monoid {
        Monoid::Affine(AffineMonoid::free(1))
    }

    pub fn z() -> Monoid {
        Monoid::Affine(AffineMonoid::lattice(1))
    }

    pub fn trivial() -> Monoid {
        Monoid::Finite(FiniteMonoid::trivial())
    }

    pub fn unit_element(&self) -> MonoidElement {
        match self {
            Monoid::Affine(m) => MonoidElement::Vector(ExponentVector::zero(m.dim())),
            Monoid::Finite(m) => MonoidElement::Index(m.unit),
            Monoid::Fp(m) => MonoidElement::Word(m.unit_word()),
        }
    }

    /// Generators as elements: affine and fp monoids use their generator
    /// lists; a finite monoid is generated by all of its elements.
    pub fn generator_elements(&self) -> Vec<MonoidElement> {
        match self {
            Monoid::Affine(m) => m.gens().iter().cloned().map(MonoidElement::Vector).collect(),
            Monoid::Finite(m) => (0..m.size()).map(MonoidElement::Index).collect(),
            Monoid::Fp(m) => (0..m.n_gens)
                .map(|i| {
                    let mut w = m.unit_word();
                    w[i] = 1;
                    MonoidElement::Word(w)
                })
                .collect(),
        }
    }

    pub fn op(&self, a: &MonoidElement, b: &MonoidElement) -> Result<MonoidElement> {
        match (self, a, b) {
            (Monoid::Affine(_), MonoidElement::Vector(x), MonoidElement::Vector(y)) => {
                Ok(MonoidElement::Vector(x.add(y)))
            }
            (Monoid::Finite(m), MonoidElement::Index(i), MonoidElement::Index(j)) => {
                Ok(MonoidElement::Index(m.op(*i, *j)))
            }
            (Monoid::Fp(_), MonoidElement::Word(u), MonoidElement::Word(v)) => Ok(
                MonoidElement::Word(u.iter().zip(v).map(|(x, y)| x + y).collect()),
            ),
            _ => Err(Error::invalid("element does not belong to this monoid class")),
        }
    }

    pub fn eq_elements(&self, a: &MonoidElement, b: &MonoidElement, budget: &Budget) -> Result<bool> {
        match (self, a, b) {
            (Monoid::Affine(_), MonoidElement::Vector(x), MonoidElement::Vector(y)) => Ok(x == y),
            (Monoid::Finite(_), MonoidElement::Index(i), MonoidElement::Index(j)) => Ok(i == j),
            (Monoid::Fp(m), MonoidElement::Word(u), MonoidElement::Word(v)) => {
                m.words_equal(u, v, budget)
            }
            _ => Err(Error::invalid("element does not belong to this monoid class")),
        }
    }

    /// Does this element belong to the monoid (and match its class)?
    pub fn contains(&self, a: &MonoidElement) -> Result<bool> {
        match (self, a) {
            (Monoid::Affine(m), MonoidElement::Vector(v)) => m.contains(v),
            (Monoid::Finite(m), MonoidElement::Index(i)) => Ok(*i < m.size()),
            (Monoid::Fp(m), MonoidElement::Word(w)) => Ok(w.len() == m.n_gens),
            _ => Ok(false),
        }
    }

    /// The inverse of an element, when it exists.
    pub fn inverse(&self, a: &MonoidElement, budget: &Budget) -> Result<Option<MonoidElement>> {
        match (self, a) {
            (Monoid::Affine(m), MonoidElement::Vector(v)) => {
                let neg = v.neg();
                if m.contains(&neg)? && m.contains(v)? {
                    Ok(Some(MonoidElement::Vector(neg)))
                } else {
                    Ok(None)
                }
            }
            (Monoid::Finite(m), MonoidElement::Index(i)) => Ok(m.inverse(*i).map(MonoidElement::Index)),
            (Monoid::Fp(m), MonoidElement::Word(w)) => {
                // Bounded search over words of small degree.
                let unit = m.unit_word();
                let mut frontier: Vec<Vec<u32>> = vec![unit.clone()];
                for _ in 0..budget.word_bound {
                    for cand in &frontier {
                        let prod: Vec<u32> = cand.iter().zip(w).map(|(x, y)| x + y).collect();
                        if m.words_equal(&prod, &unit, budget)? {
                            return Ok(Some(MonoidElement::Word(cand.clone())));
                        }
                    }
                    let mut next = Vec::new();
                    for cand in &frontier {
                        for i in 0..m.n_gens {
                            let mut c = cand.clone();
                            c[i] += 1;
                            next.push(c);
                        }
                    }
                    next.sort();
                    next.dedup();
                    frontier = next;
                }
                Ok(None)
            }
            _ => Err(Error::invalid("element does not belong to this monoid class")),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Monoid::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&FiniteMonoid> {
        match self {
            Monoid::Finite(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_affine(&self) -> Option<&AffineMonoid> {
        match self {
            Monoid::Affine(m) => Some(m),
            _ => None,
        }
    }

    /// Short display name for reports.
    pub fn describe(&self) -> String {
        match self {
            Monoid::Affine(m) => format!(
                "affine(dim {}, {} gens, {} inverted)",
                m.dim(),
                m.gens().len(),
                m.inverted_indices().len()
            ),
            Monoid::Finite(m) => format!("finite({} elements)", m.size()),
            Monoid::Fp(m) => format!("fp({} gens, {} relations)", m.n_gens, m.relations.len()),
        }
    }
}

/// Built-in monoids addressable by name: `N`, `Z`, `Z/n`, `triv`, `Fq*:q`
/// (the multiplicative monoid of the field with q elements).
pub fn named_monoid(name: &str) -> Result<Monoid> {
    if name == "N" {
        return Ok(Monoid::n());
    }
    if name == "Z" {
        return Ok(Monoid::z());
    }
    if name == "triv" {
        return Ok(Monoid::trivial());
    }
    if let Some(n) = name.strip_prefix("Z/") {
        let n: usize = n
            .parse()
            .map_err(|_| Error::invalid(format!("bad cyclic order in '{name}'")))?;
        return Ok(Monoid::Finite(FiniteMonoid::cyclic_group(n)?));
    }
    if let Some(q) = name.strip_prefix("Fq*:") {
        let q: u64 = q
            .parse()
            .map_err(|_| Error::invalid(format!("bad field size in '{name}'")))?;
        let field = FiniteSemiring::galois_field(q)?;
        return Ok(Monoid::Finite(field.multiplicative_monoid()));
    }
    Err(Error::unsupported(format!("unknown named monoid '{name}'")))
}

/// On-disk monoid specification.
#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum MonoidFile {
    Affine {
        dim: usize,
        gens: Vec<Vec<i64>>,
        #[serde(default)]
        inverted: Vec<usize>,
    },
    Finite {
        elements: Vec<String>,
        unit: usize,
        table: Vec<Vec<usize>>,
    },
    Fp {
        ngens: usize,
        relations: Vec<(Vec<u32>, Vec<u32>)>,
    },
}

pub fn monoid_from_json(text: &str) -> Result<Monoid> {
    let file: MonoidFile = serde_json::from_str(text).map_err(|e| Error::from_json(&e))?;
    match file {
        MonoidFile::Affine { dim, gens, inverted } => Ok(Monoid::Affine(AffineMonoid::new(
            dim,
            gens.into_iter().map(ExponentVector::new).collect(),
            inverted,
        )?)),
        MonoidFile::Finite { elements, unit, table } => {
            Ok(Monoid::Finite(FiniteMonoid::new(elements, unit, table)?))
        }
        MonoidFile::Fp { ngens, relations } => Ok(Monoid::Fp(FpMonoid::new(ngens, relations)?)),
    }
}

/// Parse either a built-in name or an inline JSON monoid spec.
pub fn monoid_from_spec(spec: &str) -> Result<Monoid> {
    if spec.trim_start().starts_with('{') {
        monoid_from_json(spec)
    } else {
        named_monoid(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_monoids_resolve() {
        assert!(matches!(named_monoid("N").unwrap(), Monoid::Affine(_)));
        assert!(matches!(named_monoid("Z").unwrap(), Monoid::Affine(_)));
        assert!(matches!(named_monoid("Z/6").unwrap(), Monoid::Finite(_)));
        assert!(matches!(named_monoid("triv").unwrap(), Monoid::Finite(_)));
        let f4 = named_monoid("Fq*:4").unwrap();
        assert_eq!(f4.as_finite().unwrap().size(), 4);
        assert!(named_monoid("nope").is_err());
    }

    #[test]
    fn json_specs_parse() {
        let m = monoid_from_json(r#"{"kind":"affine","dim":2,"gens":[[1,0],[0,1]],"inverted":[0]}"#)
            .unwrap();
        let a = m.as_affine().unwrap();
        assert_eq!(a.gens().len(), 2);
        assert_eq!(a.inverted_indices().len(), 1);

        let m = monoid_from_json(
            r#"{"kind":"finite","elements":["1","x"],"unit":0,"table":[[0,1],[1,0]]}"#,
        )
        .unwrap();
        assert_eq!(m.as_finite().unwrap().size(), 2);

        let m = monoid_from_json(r#"{"kind":"fp","ngens":1,"relations":[[[2],[0]]]}"#).unwrap();
        assert!(matches!(m, Monoid::Fp(_)));

        let err = monoid_from_json(r#"{"kind":"affine","dim":1,"gens":[[1]],"bogus":3}"#);
        assert!(err.is_err());
    }

    #[test]
    fn inverses_in_each_class() {
        let b = Budget::default();
        let z = Monoid::z();
        let v = MonoidElement::Vector(ExponentVector::new(vec![3]));
        assert_eq!(
            z.inverse(&v, &b).unwrap(),
            Some(MonoidElement::Vector(ExponentVector::new(vec![-3])))
        );
        let n = Monoid::n();
        assert_eq!(n.inverse(&v, &b).unwrap(), None);
        let c3 = named_monoid("Z/3").unwrap();
        assert_eq!(
            c3.inverse(&MonoidElement::Index(1), &b).unwrap(),
            Some(MonoidElement::Index(2))
        );
    }
}
