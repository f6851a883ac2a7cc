//! Toric schemes from fans: each maximal cone contributes an affine chart
//! `Spec M_sigma` with `M_sigma` the lattice points of the dual cone, and
//! adjacent charts glue along the localization inverting the chart
//! generators that vanish on the common face.

use crate::cone::{dual_cone, hilbert_basis, Fan, RationalCone};
use crate::error::{Budget, Error, Result};
use crate::exponent::ExponentVector;
use crate::monoid::{localize, AffineMonoid, Monoid, MonoidElement, MonoidHom, StructuralClass};
use crate::scheme::{
    identity_overlap, BaseTag, Chart, Overlap, SchemeAtlas, ZariskiCertificate,
};
use crate::algebra::AlgebraPresentation;
use serde::Serialize;

/// A toric chart: the cone, its chart monoid and a display label.
#[derive(Clone, Debug, Serialize)]
pub struct ToricChart {
    pub cone: RationalCone,
    pub monoid: AffineMonoid,
    pub label: String,
}

pub fn toric_chart(cone: &RationalCone, label: String, budget: &Budget) -> Result<ToricChart> {
    let monoid = hilbert_basis(&dual_cone(cone), budget)?;
    Ok(ToricChart { cone: cone.clone(), monoid, label })
}

/// Build the glued scheme over F1 from a validated fan.
///
/// Charts come from maximal cones only; the overlap of charts `i` and `j` is
/// the chart monoid of the common face, reached from either side by
/// inverting the finitely many Hilbert generators vanishing on the face.
pub fn build_toric_atlas(fan: &Fan, budget: &Budget) -> Result<SchemeAtlas> {
    let verdict = fan.validate()?;
    if !verdict.valid {
        return Err(Error::invalid(format!(
            "fan is invalid: {:?}",
            verdict.violation
        )));
    }
    let maximal: Vec<RationalCone> = fan.maximal_cones().into_iter().cloned().collect();
    let mut charts = Vec::new();
    for (i, cone) in maximal.iter().enumerate() {
        let tc = toric_chart(cone, format!("U{i}"), budget)?;
        charts.push((tc.cone, tc.monoid, tc.label));
    }

    let mut overlaps = std::collections::BTreeMap::new();
    for i in 0..charts.len() {
        overlaps.insert((i, i), identity_overlap(&Monoid::Affine(charts[i].1.clone())));
        for j in i + 1..charts.len() {
            let overlap = build_overlap(&charts[i], &charts[j], budget)?;
            overlaps.insert((i, j), overlap);
        }
    }

    Ok(SchemeAtlas {
        base: BaseTag::F1,
        charts: charts
            .into_iter()
            .map(|(_, monoid, label)| Chart {
                label,
                monoid: Monoid::Affine(monoid),
                presentation: None,
            })
            .collect(),
        overlaps,
        cocycle_coherent: true,
    })
}

/// Overlap of two toric charts: the monoid of the common face's dual, with
/// both localization maps checked against the face monoid.
fn build_overlap(
    a: &(RationalCone, AffineMonoid, String),
    b: &(RationalCone, AffineMonoid, String),
    budget: &Budget,
) -> Result<Overlap> {
    let tau = a.0.intersection(&b.0)?;
    let m_tau = hilbert_basis(&dual_cone(&tau), budget)?;

    let left = localization_onto(&a.1, &tau, &m_tau, budget)?;
    let right = localization_onto(&b.1, &tau, &m_tau, budget)?;
    Ok(Overlap {
        object: Some(Monoid::Affine(m_tau)),
        to_left: Some(left.0),
        to_right: Some(right.0),
        cert_left: ZariskiCertificate::Structural(left.1),
        cert_right: ZariskiCertificate::Structural(right.1),
    })
}

/// The canonical map `M_sigma -> M_tau` for a face `tau` of `sigma`,
/// verified to be the localization at the generators vanishing on `tau`.
fn localization_onto(
    chart_monoid: &AffineMonoid,
    tau: &RationalCone,
    m_tau: &AffineMonoid,
    budget: &Budget,
) -> Result<(MonoidHom, StructuralClass)> {
    // Generators of the chart monoid pairing to zero with every ray of tau.
    let vanishing: Vec<ExponentVector> = chart_monoid
        .gens()
        .iter()
        .filter(|g| tau.rays.iter().all(|r| g.dot(r) == 0))
        .cloned()
        .collect();
    let s: Vec<MonoidElement> = vanishing.iter().cloned().map(MonoidElement::Vector).collect();
    let (localized, _) = localize(&Monoid::Affine(chart_monoid.clone()), &s, budget)?;
    // The executable certificate: inverting exactly those generators gives
    // the face monoid.
    let loc = localized.as_affine().expect("affine localization");
    if !loc.is_same_submonoid(m_tau)? {
        return Err(Error::invalid(
            "face localization does not match the overlap monoid",
        ));
    }
    let images: Vec<MonoidElement> = chart_monoid
        .gens()
        .iter()
        .cloned()
        .map(MonoidElement::Vector)
        .collect();
    let hom = MonoidHom::new(
        Monoid::Affine(chart_monoid.clone()),
        Monoid::Affine(m_tau.clone()),
        images,
        budget,
    )?
    .with_structural(StructuralClass::Localization { inverted: s.clone() });
    Ok((hom, StructuralClass::Localization { inverted: s }))
}

/// Base change of a toric atlas to N or Z, with every chart ring presented
/// by its toric binomial relations.
pub fn toric_base_change(fan: &Fan, to: BaseTag, budget: &Budget) -> Result<SchemeAtlas> {
    let f1_atlas = build_toric_atlas(fan, budget)?;
    crate::scheme::base_change_scheme(&f1_atlas, to, budget)
}

/// Chart ring presentations of a base-changed toric atlas.
pub fn chart_presentations(atlas: &SchemeAtlas) -> Vec<(String, AlgebraPresentation)> {
    atlas
        .charts
        .iter()
        .filter_map(|c| c.presentation.clone().map(|p| (c.label.clone(), p)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::{fan_a1, fan_p1, fan_p2};
    use crate::scheme::validate_atlas;

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn p1_atlas_structure() {
        let atlas = build_toric_atlas(&fan_p1(), &budget()).unwrap();
        assert_eq!(atlas.charts.len(), 2);
        // Both charts are half-lines with opposite characters.
        let m0 = atlas.charts[0].monoid.as_affine().unwrap();
        let m1 = atlas.charts[1].monoid.as_affine().unwrap();
        assert_eq!(m0.gens().len(), 1);
        assert_eq!(m1.gens().len(), 1);
        assert_eq!(m0.gens()[0], m1.gens()[0].neg());
        // The overlap is the full character lattice, reached by inverting
        // the single degree-one generator on each side.
        let ov = atlas.overlap(0, 1).unwrap();
        let obj = ov.object.as_ref().unwrap().as_affine().unwrap();
        assert!(obj.is_same_submonoid(&AffineMonoid::lattice(1)).unwrap());
        match &ov.cert_left {
            ZariskiCertificate::Structural(StructuralClass::Localization { inverted }) => {
                assert_eq!(inverted.len(), 1);
            }
            other => panic!("expected structural localization, got {:?}", other),
        }
        assert!(validate_atlas(&atlas, &budget()).unwrap().valid());
    }

    #[test]
    fn affine_line_atlas_is_single_chart() {
        let atlas = build_toric_atlas(&fan_a1(), &budget()).unwrap();
        assert_eq!(atlas.charts.len(), 1);
        let m = atlas.charts[0].monoid.as_affine().unwrap();
        assert!(m.is_same_submonoid(&AffineMonoid::free(1)).unwrap());
    }

    #[test]
    fn p2_atlas_charts_and_overlaps() {
        let atlas = build_toric_atlas(&fan_p2(), &budget()).unwrap();
        assert_eq!(atlas.charts.len(), 3);
        for chart in &atlas.charts {
            let m = chart.monoid.as_affine().unwrap();
            // Each chart is a smooth corner: two free generators.
            assert_eq!(m.gens().len(), 2);
            assert!(m.inverted_indices().is_empty());
        }
        for i in 0..3 {
            for j in i + 1..3 {
                let ov = atlas.overlap(i, j).unwrap();
                let obj = ov.object.as_ref().unwrap().as_affine().unwrap();
                // Overlaps are Z x N in suitable coordinates: one unit
                // direction, one free direction.
                assert_eq!(obj.units().gens().len(), 1);
                assert!(matches!(
                    ov.cert_left,
                    ZariskiCertificate::Structural(StructuralClass::Localization { .. })
                ));
            }
        }
        assert!(validate_atlas(&atlas, &budget()).unwrap().valid());
    }

    #[test]
    fn p1_base_change_to_z() {
        let atlas = toric_base_change(&fan_p1(), BaseTag::Z, &budget()).unwrap();
        let pres = chart_presentations(&atlas);
        assert_eq!(pres.len(), 2);
        assert_eq!(pres[0].1.display(), "Z[t]");
        assert_eq!(pres[1].1.display(), "Z[t]");
        // Overlap monoid is the Laurent direction.
        let ov = atlas.overlap(0, 1).unwrap();
        let obj = ov.object.as_ref().unwrap().as_affine().unwrap();
        let p = AlgebraPresentation::of_affine(obj, crate::algebra::BaseRing::Z, &budget()).unwrap();
        assert_eq!(p.display(), "Z[t,t^-1]");
    }

    #[test]
    fn quadric_chart_base_change_presentation() {
        // Single cone whose dual has Hilbert basis (1,0),(1,1),(1,2).
        let cone = RationalCone::from_rows(2, &[vec![2, -1], vec![0, 1]]).unwrap();
        let fan = Fan::from_cones(2, vec![cone]).unwrap();
        let atlas = toric_base_change(&fan, BaseTag::Z, &budget()).unwrap();
        let pres = chart_presentations(&atlas);
        assert_eq!(pres.len(), 1);
        assert_eq!(pres[0].1.display(), "Z[x,y,z]/(x*z = y^2)");
    }

    #[test]
    fn a1_base_change_to_n() {
        let atlas = toric_base_change(&fan_a1(), BaseTag::N, &budget()).unwrap();
        let pres = chart_presentations(&atlas);
        assert_eq!(pres[0].1.display(), "N[t]");
    }

    #[test]
    fn overlap_monoids_match_from_both_sides() {
        // For each pair of adjacent charts the two localizations land in the
        // same submonoid of the character lattice.
        let atlas = build_toric_atlas(&fan_p2(), &budget()).unwrap();
        for i in 0..3 {
            for j in i + 1..3 {
                let ov = atlas.overlap(i, j).unwrap();
                let to_left = ov.to_left.as_ref().unwrap();
                let to_right = ov.to_right.as_ref().unwrap();
                assert_eq!(to_left.target.as_affine().unwrap().gens(), to_right.target.as_affine().unwrap().gens());
            }
        }
    }
}
