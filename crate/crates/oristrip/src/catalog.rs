//! Reference strip designs.
//!
//! These small periodic strips exercise every propagation class and are
//! mirrored one-to-one by the JSON design files shipped under `designs/`.
//! All of them use unit crease lengths.

use crate::geom::Vec2;
use crate::strip::{StripDesign, VertexSpec};
use crate::vertex::{FoldMode, SectorAngles};

use alloc::vec;
use alloc::vec::Vec;

fn spec(theta0_deg: f64, theta1_deg: f64, sigma: i8, i_out: u8) -> VertexSpec {
    VertexSpec::new(
        SectorAngles::from_degrees(theta0_deg, theta1_deg).unwrap(),
        FoldMode::from_sigma(sigma).unwrap(),
        i_out,
    )
    .unwrap()
}

fn periodic(vertices: Vec<VertexSpec>) -> StripDesign {
    let period = vertices.len();
    StripDesign::new(vertices, true, period, None).unwrap()
}

/// N = 1 strip of one strongly asymmetric vertex chained through an adjacent
/// crease; multiplier ~ 0.347, a clean domino front.
pub fn single_vertex_domino() -> StripDesign {
    periodic(vec![spec(148.75, 60.0, 1, 1)])
}

/// N = 2 strip chained only through opposite creases: the cell map is the
/// identity and the strip folds as one rigid mechanism.
pub fn opposite_identity_pair() -> StripDesign {
    periodic(vec![spec(60.0, 60.0, 1, 2), spec(120.0, 120.0, 1, 2)])
}

/// N = 2 strip whose two adjacent-crease multipliers cancel exactly
/// (0.5 x 2), leaving a uniform unit-multiplier map.
pub fn balanced_adjacent_pair() -> StripDesign {
    periodic(vec![spec(120.0, 120.0, 1, 1), spec(120.0, 60.0, -1, 3)])
}

/// N = 2 strip with the same connectivity as [`balanced_adjacent_pair`] but
/// skewed sector angles, so the asymmetry no longer cancels.
pub fn skewed_adjacent_pair() -> StripDesign {
    periodic(vec![spec(150.0, 90.0, -1, 1), spec(90.0, 30.0, -1, 3)])
}

/// N = 4 strip with identical sector angles everywhere and output creases
/// (1, 2, 3, 2): adjacent-crease vertices inserted into an opposite-crease
/// backbone.
pub fn uniform_sector_insertion() -> StripDesign {
    periodic(vec![
        spec(120.0, 60.0, -1, 1),
        spec(120.0, 60.0, -1, 2),
        spec(120.0, 60.0, -1, 3),
        spec(120.0, 60.0, -1, 2),
    ])
}

/// N = 4 strip like [`uniform_sector_insertion`] but with mirror-symmetric
/// sector angles at the opposite-crease vertices, which admits rectangular
/// thick panels and packs tightly when flat.
pub fn mirror_sector_insertion() -> StripDesign {
    periodic(vec![
        spec(120.0, 60.0, -1, 1),
        spec(60.0, 60.0, 1, 2),
        spec(120.0, 60.0, -1, 3),
        spec(120.0, 120.0, 1, 2),
    ])
}

/// N = 4 strip that deploys from a straight flat-folded state into a
/// circular developed arc (turning 20 degrees per cell when developed, zero
/// when flat).
///
/// The central creases alternate between two lengths; with equal lengths the
/// flat state would fold back onto a single point instead of a line.
pub fn circular_deploy_strip() -> StripDesign {
    let vertices = vec![
        spec(110.0, 70.0, -1, 1),
        spec(60.0, 60.0, 1, 2),
        spec(110.0, 70.0, -1, 3),
        spec(130.0, 130.0, 1, 2),
    ];
    let lengths = vec![
        [0.6, 1.0, 1.0, 1.0],
        [1.0, 1.0, 0.6, 1.0],
        [0.6, 1.0, 1.0, 1.0],
        [1.0, 1.0, 0.6, 1.0],
    ];
    StripDesign::new(vertices, true, 4, Some(lengths)).unwrap()
}

/// Every bundled periodic design, with the names used for the golden files.
pub fn all() -> Vec<(&'static str, StripDesign)> {
    vec![
        ("single_vertex_domino", single_vertex_domino()),
        ("opposite_identity_pair", opposite_identity_pair()),
        ("balanced_adjacent_pair", balanced_adjacent_pair()),
        ("skewed_adjacent_pair", skewed_adjacent_pair()),
        ("uniform_sector_insertion", uniform_sector_insertion()),
        ("mirror_sector_insertion", mirror_sector_insertion()),
        ("circular_deploy_strip", circular_deploy_strip()),
    ]
}

/// A gentle S-shaped target polyline with unit segments, used by the inverse
/// design tests and shipped as `designs/s_polyline.csv`.
///
/// Headings follow one full sine period, +-24 degrees of swing, which keeps
/// every cell of the mapped strip comfortably inside the feasible region.
pub fn s_polyline_points() -> Vec<Vec2> {
    let segments = 8usize;
    let swing = crate::geom::deg_to_rad(24.0);
    let mut points = vec![Vec2::new(0.0, 0.0)];
    let mut cursor = Vec2::new(0.0, 0.0);
    for k in 0..segments {
        let heading = swing * libm::sin(2.0 * crate::geom::PI * (k as f64 + 0.5) / segments as f64);
        cursor = cursor + Vec2::new(libm::cos(heading), libm::sin(heading));
        points.push(cursor);
    }
    points
}
