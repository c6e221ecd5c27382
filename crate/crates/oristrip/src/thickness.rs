//! Offset-hinge link lengths for thick-panel realizations.
//!
//! Thickening a developable, flat-foldable degree-4 vertex with offset
//! hinges turns it into an overconstrained but mobile spatial 4R loop; the
//! hinge offsets `d_i` are then fixed up to one free length by the sector
//! angles. Along a strip the offset of the shared crease carries over to the
//! next vertex, which makes the per-vertex scale a running product of sine
//! ratios.
//!
//! The profile tracks only this sine-ratio factor. Relative hinge heights in
//! the developed state drift as well and can force additional thickness
//! growth in a physical build, but that contribution has no closed form here
//! and is not modeled.

use crate::error::Error;
use crate::strip::StripDesign;
use crate::vertex::SectorAngles;
use crate::Result;

use alloc::format;
use alloc::vec::Vec;

/// Tolerance for the mirror-symmetry test on opposite-crease vertices.
pub const MIRROR_TOL: f64 = 1e-9;

/// Tolerance below which a per-cell thickness ratio counts as 1.
pub const RATIO_TOL: f64 = 1e-9;

/// Offset-hinge link lengths of one vertex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BennettOffsets {
    pub d: [f64; 4],
}

/// Link lengths for a given input-crease offset `d0`:
/// `d1 = d3 = d0 sin(theta1) / sin(theta0)`, `d2 = d0`.
pub fn bennett_offsets(angles: &SectorAngles, d0: f64) -> Result<BennettOffsets> {
    if d0 <= 0.0 || !d0.is_finite() {
        return Err(Error::Domain(format!("d0 = {d0} must be positive")));
    }
    let d1 = d0 * libm::sin(angles.theta1()) / libm::sin(angles.theta0());
    Ok(BennettOffsets {
        d: [d0, d1, d0, d1],
    })
}

/// Panel-thickness scale along a strip.
#[derive(Debug, Clone, PartialEq)]
pub struct ThicknessProfile {
    /// Input-crease offset of each vertex, starting from the given seed.
    pub d0: Vec<f64>,
    /// Ratio `d0(n + N) / d0(n)` for each whole cell covered by the design.
    pub cell_ratios: Vec<f64>,
    /// True when any cell ratio differs from 1, i.e. the panel thickness
    /// runs away geometrically along the strip.
    pub exponential: bool,
}

/// Propagates the representative offset across shared creases: adjacent
/// output creases scale it by `sin(theta1) / sin(theta0)`, opposite output
/// creases carry it unchanged.
pub fn thickness_profile(design: &StripDesign, d0_initial: f64) -> Result<ThicknessProfile> {
    if d0_initial <= 0.0 || !d0_initial.is_finite() {
        return Err(Error::Domain(format!("d0 = {d0_initial} must be positive")));
    }
    let mut d0 = Vec::with_capacity(design.vertex_count());
    let mut current = d0_initial;
    for spec in design.vertices() {
        d0.push(current);
        let offsets = bennett_offsets(&spec.angles, current)?;
        current = offsets.d[spec.i_out as usize];
    }
    d0.push(current);

    let stride = design.period();
    let cells = design.vertex_count() / stride;
    let cell_ratios: Vec<f64> = (0..cells)
        .map(|t| d0[(t + 1) * stride] / d0[t * stride])
        .collect();
    let exponential = cell_ratios.iter().any(|r| libm::fabs(r - 1.0) > RATIO_TOL);
    d0.pop();
    Ok(ThicknessProfile {
        d0,
        cell_ratios,
        exponential,
    })
}

/// Result of the rectangular-panel insertion check.
#[derive(Debug, Clone, PartialEq)]
pub struct PanelCheck {
    pub feasible: bool,
    /// Opposite-crease vertices whose sector angles break mirror symmetry.
    pub offending: Vec<usize>,
}

/// Rectangular panels can replace the opposite-crease vertices exactly when
/// their sector angles are mirror symmetric (`theta0 = theta1`).
///
/// The check expects the alternating connectivity that puts opposite-crease
/// vertices at positions 1 and 3 of each 4-vertex cell and fails with
/// [`Error::WrongConnectivity`] otherwise.
pub fn can_insert_rectangular_panels(design: &StripDesign) -> Result<PanelCheck> {
    for (n, spec) in design.vertices().iter().enumerate() {
        if (n % 4 == 1 || n % 4 == 3) && spec.i_out != 2 {
            return Err(Error::WrongConnectivity { vertex: n });
        }
    }
    let mut offending = Vec::new();
    for (n, spec) in design.vertices().iter().enumerate() {
        if spec.i_out == 2 && libm::fabs(spec.angles.theta0() - spec.angles.theta1()) > MIRROR_TOL {
            offending.push(n);
        }
    }
    Ok(PanelCheck {
        feasible: offending.is_empty(),
        offending,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::strip::VertexSpec;
    use crate::vertex::FoldMode;
    use alloc::vec;

    #[test]
    fn offsets_equal_sines() {
        let s = SectorAngles::from_degrees(70.0, 70.0).unwrap();
        let d = bennett_offsets(&s, 1.0).unwrap().d;
        for v in d {
            assert!((v - 1.0).abs() < 1e-12);
        }

        // sin 120 = sin 60.
        let s = SectorAngles::from_degrees(120.0, 60.0).unwrap();
        let d = bennett_offsets(&s, 1.0).unwrap().d;
        for v in d {
            assert!((v - 1.0).abs() < 1e-12);
        }

        let s = SectorAngles::from_degrees(90.0, 30.0).unwrap();
        let d = bennett_offsets(&s, 2.0).unwrap().d;
        assert!((d[0] - 2.0).abs() < 1e-12);
        assert!((d[1] - 1.0).abs() < 1e-12);
        assert!((d[2] - 2.0).abs() < 1e-12);
        assert!((d[3] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn offsets_reject_nonpositive_seed() {
        let s = SectorAngles::from_degrees(90.0, 30.0).unwrap();
        assert!(bennett_offsets(&s, 0.0).is_err());
        assert!(bennett_offsets(&s, -1.0).is_err());
    }

    #[test]
    fn opposite_crease_chain_keeps_thickness() {
        let profile = thickness_profile(&catalog::opposite_identity_pair(), 1.0).unwrap();
        assert_eq!(profile.cell_ratios.len(), 1);
        assert!((profile.cell_ratios[0] - 1.0).abs() < 1e-15);
        assert!(!profile.exponential);
    }

    #[test]
    fn halving_chain_is_geometric() {
        let v = VertexSpec::new(
            SectorAngles::from_degrees(90.0, 30.0).unwrap(),
            FoldMode::Minus,
            1,
        )
        .unwrap();
        let design = StripDesign::new(vec![v; 6], true, 1, None).unwrap();
        let profile = thickness_profile(&design, 8.0).unwrap();
        for (t, r) in profile.cell_ratios.iter().enumerate() {
            assert!((r - 0.5).abs() < 1e-15, "cell {t}: ratio {r}");
        }
        assert!(profile.exponential);
        assert!((profile.d0[3] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rectangular_panels_for_mirror_designs() {
        let check = can_insert_rectangular_panels(&catalog::mirror_sector_insertion()).unwrap();
        assert!(check.feasible);
        let check = can_insert_rectangular_panels(&catalog::circular_deploy_strip()).unwrap();
        assert!(check.feasible);
    }

    #[test]
    fn broken_mirror_symmetry_is_reported() {
        let mut vertices = catalog::mirror_sector_insertion().vertices().to_vec();
        vertices[1] = VertexSpec::new(
            SectorAngles::from_degrees(60.0, 61.0).unwrap(),
            FoldMode::Plus,
            2,
        )
        .unwrap();
        let design = StripDesign::new(vertices, true, 4, None).unwrap();
        let check = can_insert_rectangular_panels(&design).unwrap();
        assert!(!check.feasible);
        assert_eq!(check.offending, vec![1]);
    }

    #[test]
    fn wrong_connectivity_is_an_error() {
        let design = catalog::skewed_adjacent_pair().tiled(2).unwrap();
        assert!(matches!(
            can_insert_rectangular_panels(&design),
            Err(Error::WrongConnectivity { vertex: 1 })
        ));
    }
}
